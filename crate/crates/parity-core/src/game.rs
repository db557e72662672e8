use crate::pgsolver::Layout;
use crate::ParityError;
use graph_core::{gen_digraph, Digraph, GenModel, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Player {
    Even,
    Odd,
}

/// A parity game `(V, V₀, E, Ω)` on a loop-free digraph where every vertex
/// has a successor.
#[derive(Clone, Debug)]
pub struct ParityGame {
    digraph: Digraph,
    even: VertexSet,
    priority: Vec<u32>,
    names: Vec<Option<String>>,
    pub(crate) layout: Option<Layout>,
}

impl PartialEq for ParityGame {
    /// Games are equal when arena, owners, priorities and names agree; the
    /// textual layout kept from parsing is ignored.
    fn eq(&self, o: &Self) -> bool {
        self.digraph == o.digraph && self.even == o.even && self.priority == o.priority && self.names == o.names
    }
}

impl Eq for ParityGame {}

impl ParityGame {
    pub fn new(digraph: Digraph, even: VertexSet, priority: Vec<u32>) -> Result<Self, ParityError> {
        let n = digraph.vertex_count();
        if priority.len() != n {
            return Err(ParityError::Invalid(format!("{} priorities for {n} vertices", priority.len())));
        }
        if even.last().is_some_and(|v| v >= n) {
            return Err(ParityError::Invalid(format!("even vertex set {even} exceeds {n} vertices")));
        }
        if let Some(v) = (0..n).find(|&v| digraph.out_degree(v) == 0) {
            return Err(ParityError::DeadEnd(v));
        }
        Ok(ParityGame { digraph, even, priority, names: vec![None; n], layout: None })
    }

    /// An arena fragment that may contain vertices without successors. Such
    /// a game is only meaningful for frontier computations whose regions
    /// avoid the dead ends; whole-game solvers require [`ParityGame::new`].
    pub fn new_partial(digraph: Digraph, even: VertexSet, priority: Vec<u32>) -> Result<Self, ParityError> {
        let n = digraph.vertex_count();
        if priority.len() != n {
            return Err(ParityError::Invalid(format!("{} priorities for {n} vertices", priority.len())));
        }
        Ok(ParityGame { digraph, even, priority, names: vec![None; n], layout: None })
    }

    /// Attaches vertex names (one per vertex).
    pub fn with_names(mut self, names: Vec<Option<String>>) -> Result<Self, ParityError> {
        if names.len() != self.vertex_count() {
            return Err(ParityError::Invalid(format!("{} names for {} vertices", names.len(), self.vertex_count())));
        }
        self.names = names;
        Ok(self)
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn vertex_count(&self) -> usize {
        self.digraph.vertex_count()
    }

    /// `V₀`, the vertices where Even moves.
    pub fn even_vertices(&self) -> &VertexSet {
        &self.even
    }

    pub fn owner(&self, v: usize) -> Player {
        if self.even.contains(v) {
            Player::Even
        } else {
            Player::Odd
        }
    }

    pub fn priority(&self, v: usize) -> u32 {
        self.priority[v]
    }

    pub fn priorities(&self) -> &[u32] {
        &self.priority
    }

    pub fn max_priority(&self) -> u32 {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    pub fn name(&self, v: usize) -> Option<&str> {
        self.names[v].as_deref()
    }

    pub fn names(&self) -> &[Option<String>] {
        &self.names
    }

    pub fn successors(&self, v: usize) -> &VertexSet {
        self.digraph.successors(v)
    }
}

/// A random game on a generated arena. Vertices left without successors get
/// an edge to a neighbour in id order (`v+1`, or `v-1` for the last vertex),
/// which keeps banded arenas banded. Priorities are uniform in
/// `0..=max_priority` and owners are fair coin flips. Deterministic in the
/// arguments.
pub fn random_game(model: GenModel, n: usize, max_priority: u32, seed: u64) -> Result<ParityGame, ParityError> {
    if n < 2 {
        return Err(ParityError::Invalid("a loop-free game needs at least two vertices".into()));
    }
    let base = gen_digraph(model, n, seed)?;
    let mut edges = base.edges().to_vec();
    for v in 0..n {
        if base.out_degree(v) == 0 {
            edges.push((v, if v + 1 < n { v + 1 } else { v - 1 }));
        }
    }
    let digraph = Digraph::new(n, edges)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let priority = (0..n).map(|_| rng.gen_range(0..=max_priority)).collect();
    let even = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    ParityGame::new(digraph, even, priority)
}
