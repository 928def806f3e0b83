//! Multivariate polynomials over a pluggable coefficient domain.
//!
//! Terms are kept sorted in descending monomial order with no zero
//! coefficients; the zero polynomial has an empty term list. `MPoly`
//! (rational coefficients) is the workhorse alias.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::domain::{Domain, RatDom};
use crate::error::{Error, Result};
use crate::monomial::{Ctx, Monomial};
use crate::rat::Rat;

#[derive(Debug, Clone)]
pub struct KPoly<D: Domain> {
    pub ctx: Arc<Ctx>,
    /// Descending in the ambient monomial order.
    pub terms: Vec<(Monomial, D::Elem)>,
}

pub type MPoly = KPoly<RatDom>;

impl<D: Domain> PartialEq for KPoly<D> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.vars == other.ctx.vars && self.terms == other.terms
    }
}

impl<D: Domain> KPoly<D> {
    pub fn zero_in(ctx: &Arc<Ctx>) -> Self {
        KPoly {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn from_terms_in(ctx: &Arc<Ctx>, terms: Vec<(Monomial, D::Elem)>, dom: &D) -> Self {
        let mut map: Vec<(Monomial, D::Elem)> = Vec::new();
        // collect, merging duplicates
        let mut grouped: HashMap<Monomial, D::Elem> = HashMap::new();
        for (m, c) in terms {
            match grouped.get_mut(&m) {
                Some(acc) => *acc = dom.add(acc, &c),
                None => {
                    grouped.insert(m, c);
                }
            }
        }
        for (m, c) in grouped {
            if !dom.is_zero(&c) {
                map.push((m, c));
            }
        }
        map.sort_by(|a, b| ctx.cmp_mono(&b.0, &a.0));
        KPoly {
            ctx: ctx.clone(),
            terms: map,
        }
    }

    pub fn constant_in(ctx: &Arc<Ctx>, c: D::Elem, dom: &D) -> Self {
        if dom.is_zero(&c) {
            Self::zero_in(ctx)
        } else {
            KPoly {
                ctx: ctx.clone(),
                terms: vec![(Monomial::one(ctx.nvars()), c)],
            }
        }
    }

    pub fn var_in(ctx: &Arc<Ctx>, idx: usize, dom: &D) -> Self {
        KPoly {
            ctx: ctx.clone(),
            terms: vec![(Monomial::var(ctx.nvars(), idx), dom.one())],
        }
    }

    pub fn is_zero_poly(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self, dom: &D) -> Option<D::Elem> {
        if self.terms.is_empty() {
            Some(dom.zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn leading(&self) -> Option<(&Monomial, &D::Elem)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx.vars != other.ctx.vars || self.ctx.order != other.ctx.order {
            return Err(Error::VarMismatch(format!(
                "{:?} vs {:?}",
                self.ctx.vars, other.ctx.vars
            )));
        }
        Ok(())
    }

    pub fn add_in(&self, other: &Self, dom: &D) -> Self {
        self.check_ctx(other).expect("ambient mismatch");
        let mut out: Vec<(Monomial, D::Elem)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            if i == self.terms.len() {
                out.push(other.terms[j].clone());
                j += 1;
            } else if j == other.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
            } else {
                match self.ctx.cmp_mono(&self.terms[i].0, &other.terms[j].0) {
                    Ordering::Greater => {
                        out.push(self.terms[i].clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(other.terms[j].clone());
                        j += 1;
                    }
                    Ordering::Equal => {
                        let c = dom.add(&self.terms[i].1, &other.terms[j].1);
                        if !dom.is_zero(&c) {
                            out.push((self.terms[i].0.clone(), c));
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        KPoly {
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    pub fn neg_in(&self, dom: &D) -> Self {
        KPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), dom.neg(c)))
                .collect(),
        }
    }

    pub fn sub_in(&self, other: &Self, dom: &D) -> Self {
        self.add_in(&other.neg_in(dom), dom)
    }

    pub fn mul_term_in(&self, m: &Monomial, c: &D::Elem, dom: &D) -> Self {
        if dom.is_zero(c) {
            return Self::zero_in(&self.ctx);
        }
        KPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), dom.mul(tc, c)))
                .filter(|(_, tc)| !dom.is_zero(tc))
                .collect(),
        }
    }

    pub fn scale_in(&self, c: &D::Elem, dom: &D) -> Self {
        self.mul_term_in(&Monomial::one(self.ctx.nvars()), c, dom)
    }

    pub fn mul_in(&self, other: &Self, dom: &D) -> Self {
        self.check_ctx(other).expect("ambient mismatch");
        let mut acc: HashMap<Monomial, D::Elem> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = dom.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = dom.add(x, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut out: Vec<(Monomial, D::Elem)> = acc
            .into_iter()
            .filter(|(_, c)| !dom.is_zero(c))
            .collect();
        out.sort_by(|a, b| self.ctx.cmp_mono(&b.0, &a.0));
        KPoly {
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    pub fn pow_in(&self, mut e: u32, dom: &D) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant_in(&self.ctx, dom.one(), dom);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_in(&base, dom);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_in(&base, dom);
            }
        }
        acc
    }

    /// Drop terms whose coefficient the domain considers zero. Identity for
    /// structural domains; with a radical-membership zero test this restricts
    /// the polynomial to the base locus.
    pub fn renormalize_in(&self, dom: &D) -> Self {
        KPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !dom.is_zero(c))
                .cloned()
                .collect(),
        }
    }

    /// Division with remainder by a single divisor: `self = q*b + r` where no
    /// monomial of `r` is divisible by the leading monomial of `b`.
    pub fn divrem_in(&self, b: &Self, dom: &D) -> Result<(Self, Self)> {
        self.check_ctx(b)?;
        let (lm, lc) = match b.leading() {
            Some(t) => (t.0.clone(), t.1.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let lc_inv = dom
            .inv(&lc)
            .ok_or_else(|| Error::Precondition("divisor leading coefficient is not a unit".into()))?;
        let mut p = self.clone();
        let mut q = Self::zero_in(&self.ctx);
        let mut r = Self::zero_in(&self.ctx);
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if let Some(shift) = lm.div_into(&m) {
                let coef = dom.mul(&c, &lc_inv);
                let t = Self::from_terms_in(&self.ctx, vec![(shift.clone(), coef.clone())], dom);
                q = q.add_in(&t, dom);
                p = p.sub_in(&b.mul_term_in(&shift, &coef, dom), dom);
            } else {
                let t = KPoly {
                    ctx: self.ctx.clone(),
                    terms: vec![(m, c)],
                };
                r = r.add_in(&t, dom);
                p.terms.remove(0);
            }
        }
        Ok((q, r))
    }
}

impl MPoly {
    pub fn zero(ctx: &Arc<Ctx>) -> MPoly {
        MPoly::zero_in(ctx)
    }

    pub fn constant(ctx: &Arc<Ctx>, c: Rat) -> MPoly {
        MPoly::constant_in(ctx, c, &RatDom)
    }

    pub fn from_int(ctx: &Arc<Ctx>, n: i64) -> MPoly {
        MPoly::constant(ctx, crate::rat::rat(n))
    }

    pub fn var(ctx: &Arc<Ctx>, name: &str) -> Result<MPoly> {
        let idx = ctx
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(MPoly::var_in(ctx, idx, &RatDom))
    }

    pub fn from_terms(ctx: &Arc<Ctx>, terms: Vec<(Monomial, Rat)>) -> MPoly {
        MPoly::from_terms_in(ctx, terms, &RatDom)
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        self.add_in(o, &RatDom)
    }
    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.sub_in(o, &RatDom)
    }
    pub fn mul(&self, o: &MPoly) -> MPoly {
        self.mul_in(o, &RatDom)
    }
    pub fn neg(&self) -> MPoly {
        self.neg_in(&RatDom)
    }
    pub fn pow(&self, e: u32) -> MPoly {
        self.pow_in(e, &RatDom)
    }
    pub fn scale(&self, c: &Rat) -> MPoly {
        self.scale_in(c, &RatDom)
    }

    /// Exact division; `Err(NotDivisible)` when the remainder is nonzero.
    pub fn exact_divide(&self, b: &MPoly) -> Result<MPoly> {
        if b.is_zero_poly() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.div_rem(b)?;
        if r.is_zero_poly() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Multivariate division with remainder by a single divisor. The divisor's
    /// leading coefficient is a nonzero rational, so this needs no unit check.
    pub fn div_rem(&self, b: &MPoly) -> Result<(MPoly, MPoly)> {
        self.divrem_in(b, &RatDom)
    }

    /// Evaluate at a full rational point, one value per ambient variable.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.ctx.nvars());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute rationals for a subset of variables; the result lives in the
    /// ambient with exactly the remaining variables (order preserved).
    pub fn specialize(&self, assignment: &[(String, Rat)]) -> Result<MPoly> {
        for (name, _) in assignment {
            if self.ctx.var_index(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        let mut values: Vec<Option<Rat>> = vec![None; self.ctx.nvars()];
        for (name, v) in assignment {
            values[self.ctx.var_index(name).unwrap()] = Some(v.clone());
        }
        let kept: Vec<usize> = (0..self.ctx.nvars())
            .filter(|i| values[*i].is_none())
            .collect();
        let new_ctx = Ctx::new(
            kept.iter().map(|&i| self.ctx.vars[i].clone()).collect(),
            self.ctx.order,
        );
        let mut terms: Vec<(Monomial, Rat)> = Vec::new();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if let Some(v) = &values[i] {
                    for _ in 0..e {
                        coef *= v;
                    }
                }
            }
            let exps: Vec<u32> = kept.iter().map(|&i| m.0[i]).collect();
            terms.push((Monomial(exps), coef));
        }
        Ok(MPoly::from_terms(&new_ctx, terms))
    }

    /// Map this polynomial into a larger ambient containing all its variables.
    pub fn embed(&self, target: &Arc<Ctx>) -> Result<MPoly> {
        let mut map = Vec::with_capacity(self.ctx.nvars());
        for v in &self.ctx.vars {
            let idx = target
                .var_index(v)
                .ok_or_else(|| Error::UnknownVariable(v.clone()))?;
            map.push(idx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.nvars()];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(MPoly::from_terms(target, terms))
    }

    /// Leading coefficient under the canonical order.
    pub fn lc(&self) -> Rat {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Scale to integer content 1 and positive leading coefficient.
    pub fn normalized_primitive(&self) -> MPoly {
        if self.is_zero_poly() {
            return self.clone();
        }
        use num_bigint::BigInt;
        use num_integer::Integer;
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let factor = Rat::new(den_lcm, num_gcd);
        let out = self.scale(&factor);
        if out.lc().is_negative() {
            out.neg()
        } else {
            out
        }
    }
}

/// The polynomial ring `Q[vars]` as a coefficient domain (an integral
/// domain, not a field: only nonzero constants are units).
#[derive(Debug, Clone)]
pub struct MPolyDom {
    pub ctx: Arc<Ctx>,
}

impl MPolyDom {
    pub fn new(ctx: &Arc<Ctx>) -> Self {
        MPolyDom { ctx: ctx.clone() }
    }
}

impl Domain for MPolyDom {
    type Elem = MPoly;

    fn zero(&self) -> MPoly {
        MPoly::zero(&self.ctx)
    }
    fn one(&self) -> MPoly {
        MPoly::from_int(&self.ctx, 1)
    }
    fn from_int(&self, n: i64) -> MPoly {
        MPoly::from_int(&self.ctx, n)
    }
    fn is_zero(&self, a: &MPoly) -> bool {
        a.is_zero_poly()
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.add(b)
    }
    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.sub(b)
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul(b)
    }
    fn neg(&self, a: &MPoly) -> MPoly {
        a.neg()
    }
    fn exact_div(&self, a: &MPoly, b: &MPoly) -> Option<MPoly> {
        a.exact_divide(b).ok()
    }
    fn inv(&self, a: &MPoly) -> Option<MPoly> {
        let c = a.constant_value(&RatDom)?;
        if c.is_zero() {
            None
        } else {
            Some(MPoly::constant(&self.ctx, Rat::one() / c))
        }
    }
    fn fmt_elem(&self, a: &MPoly) -> String {
        crate::io::print_poly(a)
    }
}

use crate::upoly::UPoly;

impl MPoly {
    /// View as a univariate polynomial in variable `idx`, coefficients in the
    /// same ambient (not involving that variable).
    pub fn as_upoly_in(&self, idx: usize) -> UPoly<MPolyDom> {
        let dom = MPolyDom::new(&self.ctx);
        let deg = self
            .terms
            .iter()
            .map(|(m, _)| m.0[idx])
            .max()
            .unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rat)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut rest = m.clone();
            rest.0[idx] = 0;
            buckets[e].push((rest, c.clone()));
        }
        UPoly::from_coeffs(
            buckets
                .into_iter()
                .map(|ts| MPoly::from_terms(&self.ctx, ts))
                .collect(),
            &dom,
        )
    }

    /// Inverse of [`MPoly::as_upoly_in`].
    pub fn from_upoly_in(u: &UPoly<MPolyDom>, ctx: &Arc<Ctx>, idx: usize) -> MPoly {
        let mut terms = Vec::new();
        for (e, c) in u.coeffs.iter().enumerate() {
            for (m, coef) in &c.terms {
                let mut m = m.clone();
                m.0[idx] += e as u32;
                terms.push((m, coef.clone()));
            }
        }
        MPoly::from_terms(ctx, terms)
    }

    /// Degree in one variable.
    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.0[idx]).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn pq_ctx() -> Arc<Ctx> {
        Ctx::grevlex(vec!["x", "y"])
    }

    fn parse(ctx: &Arc<Ctx>, s: &str) -> MPoly {
        crate::io::parse_poly(s, ctx).unwrap()
    }

    #[test]
    fn ring_ops_examples() {
        let ctx = pq_ctx();
        let xpy = parse(&ctx, "x + y");
        let xmy = parse(&ctx, "x - y");
        assert_eq!(xpy.add(&xmy), parse(&ctx, "2*x"));
        assert_eq!(xmy.mul(&xpy), parse(&ctx, "x^2 - y^2"));
        let z = MPoly::zero(&ctx);
        assert!(parse(&ctx, "x^2 - 2").mul(&z).is_zero_poly());
    }

    #[test]
    fn exact_divide_examples() {
        let ctx = pq_ctx();
        let a = parse(&ctx, "x^2 - y^2");
        let b = parse(&ctx, "x - y");
        assert_eq!(a.exact_divide(&b).unwrap(), parse(&ctx, "x + y"));
        let one = MPoly::from_int(&ctx, 1);
        assert_eq!(a.exact_divide(&one).unwrap(), a);
        let c = parse(&ctx, "x^2 + 1");
        let d = parse(&ctx, "x + 1");
        assert_eq!(c.exact_divide(&d), Err(Error::NotDivisible));
    }

    #[test]
    fn specialize_discriminant_point() {
        let ctx = Ctx::grevlex(vec!["p", "q"]);
        let disc = parse(&ctx, "4*p^3 + 27*q^2");
        let r = disc
            .specialize(&[("p".into(), rat(-3)), ("q".into(), rat(2))])
            .unwrap();
        assert!(r.is_zero_poly());
    }

    #[test]
    fn normalized_primitive_signs() {
        let ctx = pq_ctx();
        let f = parse(&ctx, "-6*x^2 + 4*y");
        let g = f.normalized_primitive();
        assert_eq!(g, parse(&ctx, "3*x^2 - 2*y"));
    }
}
