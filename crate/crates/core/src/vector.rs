use std::collections::BTreeMap;

use crate::int::Int;
use crate::label::{ClassLabel, OmegaLabel};

/// Sparse exact-integer combination of basis labels.
///
/// `level` is the truncation `N` for vectors in `A_{<=N}` and the level `l`
/// for vectors in a single center `Z(k[G_l])`. Zero coefficients are never
/// stored, so structural equality is equality of vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraVector<K: Ord> {
    level: usize,
    terms: BTreeMap<K, Int>,
}

/// An element of the truncated algebra `A_{<=N}`.
pub type IkVector = AlgebraVector<OmegaLabel>;

/// An element of the center `Z(k[G_l])`, basis `e_{c(l)}`.
pub type CenterVector = AlgebraVector<ClassLabel>;

impl<K: Ord + Clone> AlgebraVector<K> {
    pub fn zero(level: usize) -> Self {
        AlgebraVector { level, terms: BTreeMap::new() }
    }

    pub fn basis(level: usize, k: K) -> Self {
        let mut v = Self::zero(level);
        v.add_term(k, &Int::ONE);
        v
    }

    pub fn from_terms(level: usize, terms: impl IntoIterator<Item = (K, Int)>) -> Self {
        let mut v = Self::zero(level);
        for (k, x) in terms {
            v.add_term(k, &x);
        }
        v
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn add_term(&mut self, k: K, x: &Int) {
        if x.is_zero() {
            return;
        }
        let slot = self.terms.entry(k.clone()).or_insert(Int::ZERO);
        *slot += x;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn get(&self, k: &K) -> Int {
        self.terms.get(k).cloned().unwrap_or(Int::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Int)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, x: &Int) -> Self {
        Self::from_terms(self.level, self.terms.iter().map(|(k, y)| (k.clone(), x * y)))
    }

    /// `self + x * other`, keeping `self`'s level.
    pub fn add_scaled(&mut self, other: &Self, x: &Int) {
        for (k, y) in &other.terms {
            self.add_term(k.clone(), &(x * y));
        }
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filtered(&self, level: usize, keep: impl Fn(&K) -> bool) -> Self {
        AlgebraVector {
            level,
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, x)| (k.clone(), x.clone())).collect(),
        }
    }

    /// `{rendered label: coefficient}` with labels in canonical order.
    pub fn to_json(&self, render: impl Fn(&K) -> String) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (k, x) in &self.terms {
            m.insert(render(k), serde_json::to_value(x).expect("integers serialize"));
        }
        serde_json::Value::Object(m)
    }

    /// `c1*e_{k1} + c2*e_{k2} + ...`, or `0`.
    pub fn render(&self, render: impl Fn(&K) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, x)| format!("{x}*e{}", render(k))).collect();
        parts.join(" + ")
    }
}
