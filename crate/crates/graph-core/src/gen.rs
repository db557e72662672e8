use crate::{Digraph, GraphError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// Random and structured digraph families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GenModel {
    /// Each ordered pair independently with probability `p`.
    Erdos(f64),
    Cycle,
    Path,
    /// Forward pairs `u < v` independently with probability `p`.
    Dag(f64),
    /// Ordered pairs with `|u - v| <= w`, each with probability `p`.
    Banded { w: usize, p: f64 },
}

pub const BANDED_DEFAULT_P: f64 = 0.5;

impl GenModel {
    pub fn banded(w: usize) -> Self {
        GenModel::Banded { w, p: BANDED_DEFAULT_P }
    }

    fn check(&self) -> Result<(), GraphError> {
        let p = match *self {
            GenModel::Erdos(p) | GenModel::Dag(p) | GenModel::Banded { p, .. } => p,
            _ => return Ok(()),
        };
        if !(0.0..=1.0).contains(&p) {
            return Err(GraphError::Param(format!("probability {p} outside [0,1]")));
        }
        Ok(())
    }
}

impl FromStr for GenModel {
    type Err = GraphError;

    /// Accepts `erdos:P`, `cycle`, `path`, `dag:P`, `banded:W` and `banded:W:P`.
    fn from_str(s: &str) -> Result<Self, GraphError> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || GraphError::Param(format!("unrecognised generator `{s}`"));
        let prob = |x: &str| x.parse::<f64>().map_err(|_| bad());
        let m = match parts.as_slice() {
            ["cycle"] => GenModel::Cycle,
            ["path"] => GenModel::Path,
            ["erdos", p] => GenModel::Erdos(prob(p)?),
            ["dag", p] => GenModel::Dag(prob(p)?),
            ["banded", w] => GenModel::banded(w.parse().map_err(|_| bad())?),
            ["banded", w, p] => GenModel::Banded { w: w.parse().map_err(|_| bad())?, p: prob(p)? },
            _ => return Err(bad()),
        };
        m.check()?;
        Ok(m)
    }
}

impl fmt::Display for GenModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenModel::Erdos(p) => write!(f, "erdos:{p}"),
            GenModel::Cycle => write!(f, "cycle"),
            GenModel::Path => write!(f, "path"),
            GenModel::Dag(p) => write!(f, "dag:{p}"),
            GenModel::Banded { w, p } => write!(f, "banded:{w}:{p}"),
        }
    }
}

/// Deterministic in `(model, n, seed)`.
pub fn gen_digraph(model: GenModel, n: usize, seed: u64) -> Result<Digraph, GraphError> {
    model.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    match model {
        GenModel::Cycle => {
            if n >= 2 {
                edges.extend((0..n).map(|i| (i, (i + 1) % n)));
            }
            if n == 2 {
                edges.pop();
                edges.push((1, 0));
            }
        }
        GenModel::Path => edges.extend((1..n).map(|i| (i - 1, i))),
        GenModel::Erdos(p) => {
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
        }
        GenModel::Dag(p) => {
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
        }
        GenModel::Banded { w, p } => {
            for u in 0..n {
                for v in u.saturating_sub(w)..(u + w + 1).min(n) {
                    if u != v && rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    Digraph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let c3 = gen_digraph(GenModel::Cycle, 3, 0).unwrap();
        assert_eq!(c3.edges(), &[(0, 1), (1, 2), (2, 0)]);
        let p2 = gen_digraph(GenModel::Path, 2, 9).unwrap();
        assert_eq!(p2.edges(), &[(0, 1)]);
        assert_eq!(gen_digraph(GenModel::Erdos(0.0), 5, 3).unwrap().edge_count(), 0);
    }

    #[test]
    fn reproducible_and_banded() {
        let m: GenModel = "banded:2".parse().unwrap();
        let a = gen_digraph(m, 30, 7).unwrap();
        assert_eq!(a, gen_digraph(m, 30, 7).unwrap());
        assert!(a.edges().iter().all(|&(u, v)| u.abs_diff(v) <= 2));
        assert!("erdos:1.5".parse::<GenModel>().is_err());
        assert!("blob".parse::<GenModel>().is_err());
    }
}
