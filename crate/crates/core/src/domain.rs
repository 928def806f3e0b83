//! Coefficient domains as explicit context objects. Polynomials, matrices
//! and subresultant chains are generic over a [`Domain`]; the context style
//! lets a domain carry data (an ambient variable list, a base locus for
//! radical-membership zero tests) that static methods could not.

use num_traits::{One, Zero};

use crate::rat::Rat;

pub trait Domain: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Exact quotient `a / b`, `None` when `b` does not divide `a`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Multiplicative inverse; `None` when `a` is not a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    /// Short human-readable form, used in diagnostics and tests.
    fn fmt_elem(&self, a: &Self::Elem) -> String;
}

/// The field of rationals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RatDom;

impl Domain for RatDom {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn from_int(&self, n: i64) -> Rat {
        crate::rat::rat(n)
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn exact_div(&self, a: &Rat, b: &Rat) -> Option<Rat> {
        if b.is_zero() {
            None
        } else {
            Some(a / b)
        }
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.is_zero() {
            None
        } else {
            Some(Rat::one() / a)
        }
    }
    fn fmt_elem(&self, a: &Rat) -> String {
        crate::rat::fmt_rat(a)
    }
}
