//! Dense univariate polynomials over a pluggable coefficient domain,
//! lowest degree first.

use crate::domain::{Domain, RatDom};
use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Debug, Clone)]
pub struct UPoly<D: Domain> {
    /// `coeffs[i]` is the coefficient of `x^i`; empty list is the zero polynomial.
    pub coeffs: Vec<D::Elem>,
}

pub type QPoly = UPoly<RatDom>;

impl<D: Domain> PartialEq for UPoly<D> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<D: Domain> UPoly<D> {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<D::Elem>, dom: &D) -> Self {
        while let Some(c) = coeffs.last() {
            if dom.is_zero(c) {
                coeffs.pop();
            } else {
                break;
            }
        }
        UPoly { coeffs }
    }

    pub fn constant(c: D::Elem, dom: &D) -> Self {
        Self::from_coeffs(vec![c], dom)
    }

    pub fn monomial(c: D::Elem, deg: usize, dom: &D) -> Self {
        if dom.is_zero(&c) {
            return Self::zero();
        }
        let mut coeffs = vec![dom.zero(); deg + 1];
        coeffs[deg] = c;
        UPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> isize {
        self.degree().map(|d| d as isize).unwrap_or(-1)
    }

    pub fn lc(&self, dom: &D) -> D::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| dom.zero())
    }

    pub fn coeff(&self, i: usize, dom: &D) -> D::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| dom.zero())
    }

    pub fn add(&self, other: &Self, dom: &D) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => dom.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out, dom)
    }

    pub fn neg(&self, dom: &D) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| dom.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self, dom: &D) -> Self {
        self.add(&other.neg(dom), dom)
    }

    pub fn mul(&self, other: &Self, dom: &D) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![dom.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if dom.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = dom.add(&out[i + j], &dom.mul(a, b));
            }
        }
        Self::from_coeffs(out, dom)
    }

    pub fn scale(&self, c: &D::Elem, dom: &D) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| dom.mul(a, c)).collect(), dom)
    }

    /// Exact coefficientwise division; None if some coefficient fails.
    pub fn exact_div_scalar(&self, c: &D::Elem, dom: &D) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(dom.exact_div(a, c)?);
        }
        Some(Self::from_coeffs(out, dom))
    }

    pub fn derivative(&self, dom: &D) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| dom.mul(c, &dom.from_int(i as i64)))
            .collect();
        Self::from_coeffs(out, dom)
    }

    pub fn eval(&self, x: &D::Elem, dom: &D) -> D::Elem {
        let mut acc = dom.zero();
        for c in self.coeffs.iter().rev() {
            acc = dom.add(&dom.mul(&acc, x), c);
        }
        acc
    }

    pub fn pow(&self, mut e: u32, dom: &D) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(dom.one(), dom);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, dom);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, dom);
            }
        }
        acc
    }

    /// Division with remainder; requires the divisor's leading coefficient to
    /// be a unit in the domain.
    pub fn div_rem(&self, b: &Self, dom: &D) -> Result<(Self, Self)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = b.degree().unwrap();
        let lc_inv = dom
            .inv(&b.coeffs[db])
            .ok_or_else(|| Error::Precondition("leading coefficient is not a unit".into()))?;
        let mut r = self.clone();
        let mut q = vec![dom.zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = dom.mul(&r.coeffs[dr], &lc_inv);
            q[dr - db] = c.clone();
            let t = Self::monomial(c, dr - db, dom).mul(b, dom);
            r = r.sub(&t, dom);
        }
        Ok((Self::from_coeffs(q, dom), r))
    }

    /// Pseudo-remainder: remainder of `lc(b)^(deg a - deg b + 1) * a` by `b`.
    pub fn pseudo_rem(&self, b: &Self, dom: &D) -> Self {
        let da = match self.degree() {
            Some(d) => d,
            None => return Self::zero(),
        };
        let db = b.degree().expect("pseudo_rem by zero");
        if da < db {
            let factor = dom.one();
            return self.scale(&factor, dom);
        }
        let lcb = b.lc(dom);
        let mut r = self.clone();
        let mut shifts = (da - db + 1) as i64;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc(dom);
            let t = Self::monomial(lr, dr - db, dom).mul(b, dom);
            r = r.scale(&lcb, dom).sub(&t, dom);
            shifts -= 1;
        }
        // pad remaining powers of lc(b) so the result is exactly prem
        for _ in 0..shifts.max(0) {
            r = r.scale(&lcb, dom);
        }
        r
    }

    /// Map coefficients into another domain.
    pub fn map<E: Domain>(&self, f: impl Fn(&D::Elem) -> E::Elem, edom: &E) -> UPoly<E> {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| f(c)).collect(), edom)
    }
}

impl QPoly {
    pub fn from_i64(coeffs: &[i64]) -> QPoly {
        QPoly::from_coeffs(coeffs.iter().map(|&c| crate::rat::rat(c)).collect(), &RatDom)
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc(&RatDom);
        self.exact_div_scalar(&lc, &RatDom).unwrap()
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.eval(x, &RatDom)
    }

    /// Euclidean gcd over the rationals, monic normalization.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b, &RatDom).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic square-free part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> QPoly {
        assert!(!self.is_zero());
        let g = self.gcd(&self.derivative(&RatDom));
        let (q, r) = self.div_rem(&g, &RatDom).unwrap();
        debug_assert!(r.is_zero());
        q.monic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let f = QPoly::from_i64(&[2, -3, 0, 1]);
        let fp = f.derivative(&RatDom);
        assert_eq!(fp, QPoly::from_i64(&[-3, 0, 3]));
        let g = f.gcd(&fp);
        assert_eq!(g, QPoly::from_i64(&[-1, 1])); // x - 1
        assert_eq!(f.squarefree_part(), QPoly::from_i64(&[-2, 1, 1])); // x^2 + x - 2
    }

    #[test]
    fn squarefree_examples() {
        // lambda^2 -> lambda
        let f = QPoly::from_i64(&[0, 0, 1]);
        assert_eq!(f.squarefree_part(), QPoly::from_i64(&[0, 1]));
        // (lambda^2-1)^2 -> lambda^2 - 1
        let g = QPoly::from_i64(&[1, 0, -2, 0, 1]);
        assert_eq!(g.squarefree_part(), QPoly::from_i64(&[-1, 0, 1]));
        // lambda^4 - 10 lambda^2 + 1 is already square-free
        let h = QPoly::from_i64(&[1, 0, -10, 0, 1]);
        assert_eq!(h.squarefree_part(), h);
    }

    #[test]
    fn pseudo_rem_matches_scaled_rem() {
        let a = QPoly::from_i64(&[1, 2, 0, 3, 5]);
        let b = QPoly::from_i64(&[4, 0, 7]);
        let prem = a.pseudo_rem(&b, &RatDom);
        let lcb = b.lc(&RatDom);
        let factor = &lcb * &lcb * &lcb; // deg a - deg b + 1 = 3
        let (_, r) = a.scale(&factor, &RatDom).div_rem(&b, &RatDom).unwrap();
        assert_eq!(prem, r);
    }
}
