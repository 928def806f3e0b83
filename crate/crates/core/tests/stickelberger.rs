//! Eigenvalue-theorem checks on split ideals with known point sets and
//! multiplicities: trace and determinant of multiplication operators,
//! characteristic polynomials, and Cayley-Hamilton.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fiberstrat_core::domain::RatDom;
use fiberstrat_core::matrix::Matrix;
use fiberstrat_core::rat::{rat, Rat};
use fiberstrat_core::zerodim::{
    buchberger, char_poly_of, fiber_summary, mult_matrix, quotient_basis, trace_det,
    GroebnerBasis, DEFAULT_SPAIR_CAP,
};
use fiberstrat_core::{Ctx, MPoly, UPoly};

fn upoly_with_roots(roots: &[(i64, usize)]) -> UPoly<RatDom> {
    let dom = RatDom;
    let mut p = UPoly::from_coeffs(vec![rat(1)], &dom);
    for (r, m) in roots {
        for _ in 0..*m {
            p = p.mul(&UPoly::from_coeffs(vec![rat(-r), rat(1)], &dom), &dom);
        }
    }
    p
}

fn univariate_ideal(roots: &[(i64, usize)]) -> GroebnerBasis<RatDom> {
    let ctx = Ctx::grevlex(vec!["x"]);
    let p = upoly_with_roots(roots);
    let f = MPoly::from_upoly_in(
        &UPoly::from_coeffs(
            p.coeffs.iter().map(|c| MPoly::constant(&ctx, c.clone())).collect(),
            &fiberstrat_core::MPolyDom { ctx: ctx.clone() },
        ),
        &ctx,
        0,
    );
    buchberger(&[f], &RatDom, DEFAULT_SPAIR_CAP).unwrap()
}

fn random_multiset(rng: &mut ChaCha8Rng, dmax: usize) -> Vec<(i64, usize)> {
    let mut pool: Vec<i64> = (-6..=6).collect();
    for i in (1..pool.len()).rev() {
        pool.swap(i, rng.gen_range(0..=i));
    }
    let mut out = Vec::new();
    let mut d = 0usize;
    for r in pool {
        if d >= dmax {
            break;
        }
        let m = rng.gen_range(1..=(dmax - d).min(3));
        out.push((r, m));
        d += m;
        if rng.gen_bool(0.4) {
            break;
        }
    }
    out
}

#[test]
fn trace_det_univariate_with_multiplicities() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let roots = random_multiset(&mut rng, 8);
        let gb = univariate_ideal(&roots);
        let qb = quotient_basis(&gb).unwrap();
        let sigma = MPoly::var(&gb.ctx, "x").unwrap();
        let (tr, det) = trace_det(&sigma, &gb, &qb, &RatDom).unwrap();
        let want_tr: Rat = roots.iter().map(|(r, m)| rat(r * *m as i64)).sum();
        let mut want_det = rat(1);
        for (r, m) in &roots {
            for _ in 0..*m {
                want_det *= rat(*r);
            }
        }
        assert_eq!(tr, want_tr, "roots {:?}", roots);
        assert_eq!(det, want_det, "roots {:?}", roots);
        // geometric count is the number of distinct roots
        let s = fiber_summary(&gb, &sigma).unwrap();
        assert_eq!(s.geo_count, roots.len());
        // chi_sigma is exactly the defining polynomial
        let chi = char_poly_of(&sigma, &gb, &qb, &RatDom).unwrap();
        assert_eq!(chi, upoly_with_roots(&roots));
    }
}

fn grid_ideal(xs: &[i64], ys: &[i64]) -> GroebnerBasis<RatDom> {
    let ctx = Ctx::grevlex(vec!["x", "y"]);
    let lin = |name: &str, roots: &[i64]| -> MPoly {
        let v = MPoly::var(&ctx, name).unwrap();
        let mut p = MPoly::from_int(&ctx, 1);
        for r in roots {
            p = p.mul(&v.sub(&MPoly::constant(&ctx, rat(*r))));
        }
        p
    };
    buchberger(&[lin("x", xs), lin("y", ys)], &RatDom, DEFAULT_SPAIR_CAP).unwrap()
}

#[test]
fn trace_det_on_grids() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..20 {
        let nx = rng.gen_range(1..=3);
        let ny = rng.gen_range(1..=2);
        let mut pool: Vec<i64> = (-5..=5).collect();
        for i in (1..pool.len()).rev() {
            pool.swap(i, rng.gen_range(0..=i));
        }
        let xs: Vec<i64> = pool[..nx].to_vec();
        let ys: Vec<i64> = pool[nx..nx + ny].to_vec();
        let gb = grid_ideal(&xs, &ys);
        let qb = quotient_basis(&gb).unwrap();
        assert_eq!(qb.dim, nx * ny);
        let w = rng.gen_range(2..=9);
        let sigma = MPoly::var(&gb.ctx, "x")
            .unwrap()
            .add(&MPoly::var(&gb.ctx, "y").unwrap().scale(&rat(w)));
        let (tr, det) = trace_det(&sigma, &gb, &qb, &RatDom).unwrap();
        let mut want_tr = rat(0);
        let mut want_det = rat(1);
        for &a in &xs {
            for &b in &ys {
                let v = rat(a + w * b);
                want_tr += v.clone();
                want_det *= v;
            }
        }
        assert_eq!(tr, want_tr);
        assert_eq!(det, want_det);
    }
}

#[test]
fn cayley_hamilton_up_to_dim_8() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let dom = RatDom;
    for _ in 0..20 {
        let roots = random_multiset(&mut rng, 8);
        let gb = univariate_ideal(&roots);
        let qb = quotient_basis(&gb).unwrap();
        // sigma = x^2 + c x exercises a non-generator element
        let x = MPoly::var(&gb.ctx, "x").unwrap();
        let sigma = x.mul(&x).add(&x.scale(&rat(rng.gen_range(-3..=3))));
        let m = mult_matrix(&sigma, &gb, &qb, &dom);
        let chi = m.char_poly(&dom).unwrap();
        let z = m.eval_poly(&chi, &dom);
        assert_eq!(z, Matrix::zero(qb.dim, qb.dim, &dom));
    }
}
