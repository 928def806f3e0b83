//! Rational functions over the polynomial ring, kept reduced with a
//! primitive, positive-leading-coefficient denominator. Equality is decided
//! by cross-multiplication.

use std::sync::Arc;

use crate::domain::{Domain, RatDom};
use crate::gcd::mv_gcd;
use crate::monomial::Ctx;
use crate::poly::MPoly;

#[derive(Debug, Clone)]
pub struct RatFun {
    pub num: MPoly,
    pub den: MPoly,
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        // cross-multiplication, independent of representation
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl RatFun {
    pub fn new(num: MPoly, den: MPoly) -> RatFun {
        assert!(!den.is_zero_poly(), "zero denominator");
        RatFun { num, den }.reduced()
    }

    pub fn from_poly(num: MPoly) -> RatFun {
        let one = MPoly::from_int(&num.ctx, 1);
        RatFun { num, den: one }
    }

    pub fn zero(ctx: &Arc<Ctx>) -> RatFun {
        RatFun::from_poly(MPoly::zero(ctx))
    }

    pub fn one(ctx: &Arc<Ctx>) -> RatFun {
        RatFun::from_poly(MPoly::from_int(ctx, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero_poly()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }

    /// Cancel the gcd; normalize the denominator to primitive positive form
    /// (rational scaling is pushed into the numerator).
    pub fn reduced(&self) -> RatFun {
        if self.num.is_zero_poly() {
            return RatFun::zero(&self.num.ctx);
        }
        if let Some(c) = self.den.constant_value(&RatDom) {
            return RatFun {
                num: self.num.scale(&(crate::rat::Rat::from_integer(1.into()) / c)),
                den: MPoly::from_int(&self.den.ctx, 1),
            };
        }
        let g = mv_gcd(&self.num, &self.den);
        let num = self.num.exact_divide(&g).expect("gcd divides num");
        let den = self.den.exact_divide(&g).expect("gcd divides den");
        if let Some(c) = den.constant_value(&RatDom) {
            return RatFun {
                num: num.scale(&(crate::rat::Rat::from_integer(1.into()) / c)),
                den: MPoly::from_int(&den.ctx, 1),
            };
        }
        let dprim = den.normalized_primitive();
        // den = scale * dprim; fold the scale into the numerator
        let scale = den.lc() / dprim.lc();
        let num = num.scale(&(crate::rat::Rat::from_integer(1.into()) / scale));
        RatFun { num, den: dprim }
    }

    pub fn add(&self, o: &RatFun) -> RatFun {
        RatFun::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &RatFun) -> RatFun {
        RatFun::new(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn mul(&self, o: &RatFun) -> RatFun {
        RatFun::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Option<RatFun> {
        if self.is_zero() {
            None
        } else {
            Some(RatFun::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn fmt(&self) -> String {
        if self.is_poly() {
            crate::io::print_poly(&self.num)
        } else {
            format!(
                "({}) / ({})",
                crate::io::print_poly(&self.num),
                crate::io::print_poly(&self.den)
            )
        }
    }
}

/// The rational function field with the structural zero test.
#[derive(Debug, Clone)]
pub struct RatFunDom {
    pub ctx: Arc<Ctx>,
}

impl RatFunDom {
    pub fn new(ctx: &Arc<Ctx>) -> Self {
        RatFunDom { ctx: ctx.clone() }
    }
}

impl Domain for RatFunDom {
    type Elem = RatFun;

    fn zero(&self) -> RatFun {
        RatFun::zero(&self.ctx)
    }
    fn one(&self) -> RatFun {
        RatFun::one(&self.ctx)
    }
    fn from_int(&self, n: i64) -> RatFun {
        RatFun::from_poly(MPoly::from_int(&self.ctx, n))
    }
    fn is_zero(&self, a: &RatFun) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a.add(b)
    }
    fn sub(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a.sub(b)
    }
    fn mul(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a.mul(b)
    }
    fn neg(&self, a: &RatFun) -> RatFun {
        a.neg()
    }
    fn exact_div(&self, a: &RatFun, b: &RatFun) -> Option<RatFun> {
        Some(a.mul(&b.inv()?))
    }
    fn inv(&self, a: &RatFun) -> Option<RatFun> {
        a.inv()
    }
    fn fmt_elem(&self, a: &RatFun) -> String {
        a.fmt()
    }
}
