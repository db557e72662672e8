use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

type Words = SmallVec<[u64; 2]>;

/// Bit-indexed set of vertex ids.
///
/// Trailing zero words are always trimmed, so two sets with the same members
/// compare equal and hash identically regardless of how they were built.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Words,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut words: Words = SmallVec::from_elem(!0u64, n / 64);
        if n % 64 != 0 {
            words.push((1u64 << (n % 64)) - 1);
        }
        let mut s = VertexSet { words };
        s.trim();
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        vs.iter().copied().collect()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !had
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        if w >= self.words.len() {
            return false;
        }
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        self.trim();
        had
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w >> (v % 64) & 1 == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<usize> {
        let w = self.words.len().checked_sub(1)?;
        Some(w * 64 + 63 - self.words[w].leading_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, o: &Self) -> Self {
        let (long, short) = if self.words.len() >= o.words.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut words = long.words.clone();
        for (a, b) in words.iter_mut().zip(short.words.iter()) {
            *a |= b;
        }
        VertexSet { words }
    }

    pub fn intersection(&self, o: &Self) -> Self {
        let mut s = VertexSet {
            words: self
                .words
                .iter()
                .zip(o.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        };
        s.trim();
        s
    }

    pub fn difference(&self, o: &Self) -> Self {
        let mut s = self.clone();
        s.difference_with(o);
        s
    }

    pub fn symmetric_difference(&self, o: &Self) -> Self {
        self.difference(o).union(&o.difference(self))
    }

    pub fn union_with(&mut self, o: &Self) {
        if self.words.len() < o.words.len() {
            self.words.resize(o.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(o.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, o: &Self) {
        self.words.truncate(o.words.len());
        for (a, b) in self.words.iter_mut().zip(o.words.iter()) {
            *a &= b;
        }
        self.trim();
    }

    pub fn difference_with(&mut self, o: &Self) {
        for (a, b) in self.words.iter_mut().zip(o.words.iter()) {
            *a &= !b;
        }
        self.trim();
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.words.len() <= o.words.len()
            && self.words.iter().zip(o.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, o: &Self) -> bool {
        o.is_subset(self)
    }

    pub fn is_disjoint(&self, o: &Self) -> bool {
        self.words.iter().zip(o.words.iter()).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, o: &Self) -> bool {
        !self.is_disjoint(o)
    }

    /// All subsets of `self` with at most `k` members, smallest first, each
    /// size class in lexicographic order.
    pub fn subsets_up_to(&self, k: usize) -> Vec<VertexSet> {
        let elems = self.to_vec();
        let mut out = Vec::new();
        for size in 0..=k.min(elems.len()) {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                out.push(idx.iter().map(|&i| elems[i]).collect());
                // advance combination
                let mut i = size;
                while i > 0 && idx[i - 1] == elems.len() - size + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for j in i..size {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        out
    }
}

impl Ord for VertexSet {
    /// Lexicographic order on the ascending member sequences.
    fn cmp(&self, o: &Self) -> Ordering {
        let diff = self.symmetric_difference(o);
        let Some(d) = diff.first() else {
            return Ordering::Equal;
        };
        let (without, ord) = if self.contains(d) {
            (o, Ordering::Less)
        } else {
            (self, Ordering::Greater)
        };
        // the set lacking d is smaller only if it is a prefix of the other
        if without.last().is_some_and(|m| m > d) {
            ord
        } else {
            ord.reverse()
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = VertexSet::new();
        for v in it {
            s.insert(v);
        }
        s
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, it: I) {
        for v in it {
            self.insert(v);
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> serde::Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Vec::<usize>::deserialize(d)?.into_iter().collect())
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
