use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// Exponent vector over a fixed ambient variable list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if divisible.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Graded reverse-lexicographic (default).
    Grevlex,
    Lex,
}

/// Ambient context: an ordered variable list plus the monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ctx {
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl Ctx {
    pub fn new(vars: Vec<String>, order: MonomialOrder) -> Arc<Ctx> {
        Arc::new(Ctx { vars, order })
    }

    pub fn grevlex<S: Into<String>>(vars: Vec<S>) -> Arc<Ctx> {
        Ctx::new(vars.into_iter().map(Into::into).collect(), MonomialOrder::Grevlex)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), self.vars.len());
        debug_assert_eq!(b.0.len(), self.vars.len());
        match self.order {
            MonomialOrder::Grevlex => {
                let da = a.total_degree();
                let db = b.total_degree();
                if da != db {
                    return da.cmp(&db);
                }
                // equal degree: the last differing exponent decides, smaller wins
                for i in (0..a.0.len()).rev() {
                    if a.0[i] != b.0[i] {
                        return b.0[i].cmp(&a.0[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => {
                for i in 0..a.0.len() {
                    if a.0[i] != b.0[i] {
                        return a.0[i].cmp(&b.0[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }
}
