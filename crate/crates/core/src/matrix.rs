//! Dense matrices over a coefficient domain, with the exact
//! Faddeev-LeVerrier characteristic polynomial and fraction-free
//! (Bareiss) determinants.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::upoly::UPoly;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<D: Domain> {
    pub rows: usize,
    pub cols: usize,
    /// Row-major.
    pub entries: Vec<D::Elem>,
}

impl<D: Domain> Matrix<D> {
    pub fn new(rows: usize, cols: usize, entries: Vec<D::Elem>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize, dom: &D) -> Self {
        Matrix::new(rows, cols, vec![dom.zero(); rows * cols])
    }

    pub fn identity(n: usize, dom: &D) -> Self {
        let mut m = Self::zero(n, n, dom);
        for i in 0..n {
            *m.at_mut(i, i) = dom.one();
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &D::Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut D::Elem {
        &mut self.entries[r * self.cols + c]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, o: &Self, dom: &D) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| dom.add(a, b))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self, dom: &D) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zero(self.rows, o.cols, dom);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if dom.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let t = dom.mul(a, o.at(k, j));
                    *out.at_mut(i, j) = dom.add(out.at(i, j), &t);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &D::Elem, dom: &D) -> Self {
        Matrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|a| dom.mul(a, c)).collect(),
        )
    }

    pub fn trace(&self, dom: &D) -> D::Elem {
        assert!(self.is_square());
        let mut t = dom.zero();
        for i in 0..self.rows {
            t = dom.add(&t, self.at(i, i));
        }
        t
    }

    /// Monic characteristic polynomial `det(lambda*I - M)` by
    /// Faddeev-LeVerrier; only divides by the integers `1..=n`, so it is
    /// exact over any Q-algebra domain.
    pub fn char_poly(&self, dom: &D) -> Result<UPoly<D>> {
        if !self.is_square() {
            return Err(Error::Precondition("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut coeffs = vec![dom.zero(); n + 1];
        coeffs[n] = dom.one();
        if n == 0 {
            return Ok(UPoly::from_coeffs(coeffs, dom));
        }
        let mut m = self.clone(); // M_1 = A
        for k in 1..=n {
            let c = dom
                .exact_div(&dom.neg(&m.trace(dom)), &dom.from_int(k as i64))
                .expect("integer division is exact over a Q-algebra");
            coeffs[n - k] = c.clone();
            if k < n {
                // M_{k+1} = A (M_k + c_{n-k} I)
                let mut shifted = m.clone();
                for i in 0..n {
                    *shifted.at_mut(i, i) = dom.add(shifted.at(i, i), &c);
                }
                m = self.mul(&shifted, dom);
            }
        }
        Ok(UPoly::from_coeffs(coeffs, dom))
    }

    /// Determinant via the characteristic polynomial: `(-1)^n chi(0)`.
    pub fn det(&self, dom: &D) -> Result<D::Elem> {
        let chi = self.char_poly(dom)?;
        let c0 = chi.coeff(0, dom);
        Ok(if self.rows % 2 == 1 { dom.neg(&c0) } else { c0 })
    }

    /// Fraction-free Bareiss determinant. Needs exact division in the domain;
    /// used for the determinantal subresultant minors.
    pub fn det_bareiss(&self, dom: &D) -> Result<D::Elem> {
        if !self.is_square() {
            return Err(Error::Precondition("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(dom.one());
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = dom.one();
        for k in 0..n - 1 {
            if dom.is_zero(a.at(k, k)) {
                // pivot search
                let swap = ((k + 1)..n).find(|&r| !dom.is_zero(a.at(r, k)));
                match swap {
                    Some(r) => {
                        for c in 0..n {
                            let tmp = a.at(k, c).clone();
                            *a.at_mut(k, c) = a.at(r, c).clone();
                            *a.at_mut(r, c) = tmp;
                        }
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(dom.zero()),
                }
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let t = dom.sub(
                        &dom.mul(a.at(k, k), a.at(i, j)),
                        &dom.mul(a.at(i, k), a.at(k, j)),
                    );
                    *a.at_mut(i, j) = dom
                        .exact_div(&t, &prev)
                        .expect("Bareiss division is exact");
                }
                *a.at_mut(i, k) = dom.zero();
            }
            prev = a.at(k, k).clone();
        }
        let d = a.at(n - 1, n - 1).clone();
        Ok(if sign_flip { dom.neg(&d) } else { d })
    }

    /// Evaluate a polynomial at this matrix.
    pub fn eval_poly(&self, p: &UPoly<D>, dom: &D) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Self::zero(n, n, dom);
        for c in p.coeffs.iter().rev() {
            acc = acc.mul(self, dom);
            for i in 0..n {
                *acc.at_mut(i, i) = dom.add(acc.at(i, i), c);
            }
        }
        acc
    }
}
