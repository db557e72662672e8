//! The orders `⊑` on priorities, `⊴` on outcomes and on result sets.

use std::fmt;

/// Sort key realizing `⊑`: odd priorities below even ones, small odd
/// priorities worst for Even, small even priorities best for Even.
pub fn priority_rank(p: u32) -> (bool, i64) {
    if p % 2 == 1 {
        (false, p as i64)
    } else {
        (true, -(p as i64))
    }
}

/// `i ⊑ j`: `j` is at least as favourable to Even as `i`.
pub fn priority_leq(i: u32, j: u32) -> bool {
    priority_rank(i) <= priority_rank(j)
}

/// How a (partial) play ends from Even's point of view.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Outcome {
    WinOdd,
    /// The play leaves the region at this vertex; the priority is the least
    /// one seen up to and including it.
    Exit(usize, u32),
    WinEven,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::WinOdd => write!(f, "winOdd"),
            Outcome::WinEven => write!(f, "winEven"),
            Outcome::Exit(v, p) => write!(f, "({v},{p})"),
        }
    }
}

/// `o1 ⊴ o2`: `WinOdd` least, `WinEven` greatest, exits comparable only at
/// the same vertex, by `⊑` on their priorities.
pub fn outcome_leq(o1: &Outcome, o2: &Outcome) -> bool {
    match (o1, o2) {
        (Outcome::WinOdd, _) | (_, Outcome::WinEven) => true,
        (Outcome::Exit(v, p), Outcome::Exit(w, q)) => v == w && priority_leq(*p, *q),
        _ => false,
    }
}

/// The outcomes Odd can force against a fixed Even strategy, reduced to the
/// `⊴`-minimal ones: `{WinOdd}`, `{WinEven}`, or a nonempty set of exits
/// with at most one exit per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct ResultSet(Vec<Outcome>);

impl ResultSet {
    pub fn win_even() -> Self {
        ResultSet(vec![Outcome::WinEven])
    }

    pub fn win_odd() -> Self {
        ResultSet(vec![Outcome::WinOdd])
    }

    /// The `⊴`-minimal elements of a nonempty set of achievable outcomes.
    pub fn minimal(outcomes: impl IntoIterator<Item = Outcome>) -> Self {
        let mut exits: Vec<(usize, u32)> = Vec::new();
        let mut even = false;
        for o in outcomes {
            match o {
                Outcome::WinOdd => return Self::win_odd(),
                Outcome::WinEven => even = true,
                Outcome::Exit(v, p) => match exits.iter_mut().find(|(w, _)| *w == v) {
                    Some(e) if priority_leq(p, e.1) => e.1 = p,
                    Some(_) => {}
                    None => exits.push((v, p)),
                },
            }
        }
        if exits.is_empty() {
            assert!(even, "a result needs at least one outcome");
            return Self::win_even();
        }
        exits.sort_unstable();
        ResultSet(exits.into_iter().map(|(v, p)| Outcome::Exit(v, p)).collect())
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.0
    }

    pub fn is_win_even(&self) -> bool {
        self.0 == [Outcome::WinEven]
    }

    pub fn is_win_odd(&self) -> bool {
        self.0 == [Outcome::WinOdd]
    }

    /// Exit vertices mentioned by the result.
    pub fn exit_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().filter_map(|o| match o {
            Outcome::Exit(v, _) => Some(*v),
            _ => None,
        })
    }

    /// Antichain, one exit per vertex, and the `WinOdd`/`WinEven` collapse.
    pub fn is_well_formed(&self) -> bool {
        if self.0.is_empty() {
            return false;
        }
        if self.0.len() > 1 && self.0.iter().any(|o| !matches!(o, Outcome::Exit(..))) {
            return false;
        }
        let mut vs: Vec<usize> = self.exit_vertices().collect();
        let n = vs.len();
        vs.dedup();
        vs.len() == n && self.0.windows(2).all(|w| w[0] < w[1])
    }
}

impl fmt::Display for ResultSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|o| o.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Which order on result sets drives dominance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ResultOrder {
    /// `r1 ⊴ r2` iff every `o2 ∈ r2` lies above some `o1 ∈ r1`: whatever
    /// Odd can force against `r2`, Odd can match or undercut against `r1`.
    /// Removing results that are strictly below another one in this order
    /// never removes an Even strategy that is needed.
    #[default]
    Smyth,
    /// `r1 ⊴ r2` iff every `o1 ∈ r1` lies below some `o2 ∈ r2`. Under this
    /// order an extra exit can make a result larger, so filtering by it can
    /// discard the only strategy that keeps Odd from a bad exit.
    Literal,
}

/// `r1 ⊴ r2` in the literal sense: every `o1 ∈ r1` has some `o2 ∈ r2` with
/// `o1 ⊴ o2`.
pub fn result_leq(r1: &ResultSet, r2: &ResultSet) -> bool {
    result_leq_with(ResultOrder::Literal, r1, r2)
}

pub fn result_leq_with(order: ResultOrder, r1: &ResultSet, r2: &ResultSet) -> bool {
    match order {
        ResultOrder::Literal => r1.0.iter().all(|a| r2.0.iter().any(|b| outcome_leq(a, b))),
        ResultOrder::Smyth => r2.0.iter().all(|b| r1.0.iter().any(|a| outcome_leq(a, b))),
    }
}
