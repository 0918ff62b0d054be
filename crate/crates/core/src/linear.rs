//! Sparse linear combinations with exact rational coefficients.
//!
//! Every element type in the engine is a finite formal sum over some ordered
//! key type (a PBW monomial, a wedge monomial, a current basis key, ...).
//! `LinExpr` is that sum: a BTreeMap from key to nonzero coefficient, so term
//! iteration order is canonical and equality is structural.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinExpr<K: Ord + Clone> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> Default for LinExpr<K> {
    fn default() -> Self {
        LinExpr { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinExpr<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(key: K, coeff: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(key, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Accumulates a term, dropping the key if the total cancels to zero.
    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinExpr { terms: self.terms.iter().map(|(k, v)| (k.clone(), c * v)).collect() }
    }

    pub fn neg(&self) -> Self {
        LinExpr { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }

    /// Coefficient of a key; zero when absent.
    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, Scalar)> {
        self.terms.into_iter()
    }
}
