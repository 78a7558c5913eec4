//! Noncommutative monomials.
//!
//! A [`Word`] is an ordered sequence of generator identifiers scoped to one
//! algebra. Generator ids double as PBW positions: a word is in normal form
//! exactly when its letters are weakly increasing.

/// Generator identifier. The numeric value is the generator's PBW position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub u8);

/// Product of generators; the empty word is the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<GenId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: GenId) -> Self {
        Word(vec![g])
    }

    pub fn from_ids(ids: &[u8]) -> Self {
        Word(ids.iter().map(|&i| GenId(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn append(&self, g: GenId) -> Word {
        let mut v = self.0.clone();
        v.push(g);
        Word(v)
    }

    /// Position of the leftmost descent `w[i] > w[i+1]`, if any.
    pub fn first_descent(&self) -> Option<usize> {
        self.0.windows(2).position(|p| p[0] > p[1])
    }

    /// Position of the rightmost descent, if any.
    pub fn last_descent(&self) -> Option<usize> {
        (0..self.0.len().saturating_sub(1)).rev().find(|&i| self.0[i] > self.0[i + 1])
    }

    /// Weakly increasing letters, i.e. PBW normal form.
    pub fn is_normal(&self) -> bool {
        self.first_descent().is_none()
    }

    /// Letters sorted (used for commutative monomials).
    pub fn sorted(&self) -> Word {
        let mut v = self.0.clone();
        v.sort();
        Word(v)
    }
}
