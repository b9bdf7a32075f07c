//! Sparse integer polynomials over binary variables. Monomials are sorted
//! sets of variable ids (x^2 = x), the empty monomial is the constant term.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Poly {
    terms: BTreeMap<Vec<u32>, i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(id: u32) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![id], 1);
        p
    }

    /// Add `coeff * prod(vars)`; the monomial is normalized (sorted,
    /// idempotent powers collapsed) and zero coefficients are dropped.
    pub fn add_term(&mut self, mut monomial: Vec<u32>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        monomial.sort_unstable();
        monomial.dedup();
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&mut self, other: &Poly) {
        for (m, &c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn scaled(&self, factor: i64) -> Poly {
        let mut out = Poly::zero();
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn squared(&self) -> Poly {
        self.mul(self)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn eval(&self, assignment: &[bool]) -> i64 {
        self.terms
            .iter()
            .filter(|(m, _)| m.iter().all(|&v| assignment[v as usize]))
            .map(|(_, &c)| c)
            .sum()
    }

    /// Smallest value over binary assignments; exact for linear polynomials.
    pub fn min_value_linear(&self) -> i64 {
        debug_assert!(self.degree() <= 1);
        self.terms
            .iter()
            .map(|(m, &c)| if m.is_empty() { c } else { c.min(0) })
            .sum()
    }

    pub fn max_value_linear(&self) -> i64 {
        debug_assert!(self.degree() <= 1);
        self.terms
            .iter()
            .map(|(m, &c)| if m.is_empty() { c } else { c.max(0) })
            .sum()
    }

    /// Largest variable id referenced, if any.
    pub fn max_var(&self) -> Option<u32> {
        self.terms.keys().flat_map(|m| m.iter().copied()).max()
    }
}
