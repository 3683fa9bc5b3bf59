//! Random small instances for property tests and benchmarks.
//!
//! Points are triangular with residue degree at most 2, relations have total
//! degree at most 3 and lie in the point's ideal by construction. A share of
//! the relations is built from products of generators so that singular
//! points turn up regularly.

use num_bigint::BigInt;
use rand::Rng;

use crate::criteria::PresentedVariety;
use crate::field::{Field, Fp, PrimeField, Rational, RationalField, Ring};
use crate::poly::{triangular_divide, Monomial, MultiPoly, TriangularPoint};
use crate::tower::ResidueTower;

pub const MAX_RELATION_DEGREE: u32 = 3;

/// `x, y, z, w` for up to four variables, `t1, t2, …` beyond.
pub fn variable_names(n: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if n <= NAMES.len() {
        NAMES[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("t{i}")).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Instance<R> {
    pub variety: PresentedVariety<R>,
    pub point: TriangularPoint<R>,
}

/// An instance at a rational point `t_i = a_i`.
#[derive(Clone, Debug)]
pub struct RationalInstance<F> {
    pub variety: PresentedVariety<F>,
    pub point: TriangularPoint<F>,
    pub values: Vec<F>,
}

/// Random polynomial in the first `nvars_used` of `nvars` variables.
pub fn random_poly<R: Ring, G: Rng + ?Sized>(
    rng: &mut G,
    nvars: usize,
    nvars_used: usize,
    max_degree: u32,
    max_terms: usize,
    mut coeff: impl FnMut(&mut G) -> R,
) -> MultiPoly<R> {
    let nterms = rng.random_range(0..=max_terms);
    let mut terms = Vec::with_capacity(nterms);
    for _ in 0..nterms {
        let mut exps = vec![0u32; nvars];
        let deg = rng.random_range(0..=max_degree);
        for _ in 0..deg {
            if nvars_used > 0 {
                exps[rng.random_range(0..nvars_used)] += 1;
            }
        }
        terms.push((Monomial::new(exps), coeff(rng)));
    }
    MultiPoly::from_terms(nvars, terms)
}

fn fp_coeff<G: Rng + ?Sized>(fp: PrimeField) -> impl FnMut(&mut G) -> Fp {
    move |rng: &mut G| fp.elem(rng.random_range(0..fp.modulus() as i64))
}

fn small_int<G: Rng + ?Sized>(rng: &mut G) -> BigInt {
    BigInt::from(rng.random_range(-3i64..=3))
}

/// A random closed point of `𝔽_p^n` with residue degree 1 or 2.
pub fn random_fp_point<G: Rng + ?Sized>(
    rng: &mut G,
    fp: PrimeField,
    n: usize,
) -> TriangularPoint<Fp> {
    let names = variable_names(n);
    loop {
        let quadratic = if rng.random_bool(0.5) {
            Some(rng.random_range(0..n))
        } else {
            None
        };
        let one = fp.elem(1);
        let gens: Vec<MultiPoly<Fp>> = (0..n)
            .map(|i| {
                let d = if quadratic == Some(i) { 2 } else { 1 };
                let mut g = MultiPoly::term(Monomial::var(n, i, d), one);
                for e in 0..d {
                    let tail = random_poly(rng, n, i, 1, 2, fp_coeff(fp));
                    g = g.add(&tail.mul_term(&Monomial::var(n, i, e), &one));
                }
                g
            })
            .collect();
        let Ok(point) = TriangularPoint::new(gens) else {
            continue;
        };
        let Ok(tower) = ResidueTower::from_point(fp, names.clone(), &point) else {
            continue;
        };
        if tower.probe_maximality().is_ok() {
            return point;
        }
    }
}

/// A relation in the ideal of `point`, of total degree at most 3.
fn random_member<R: Ring, G: Rng + ?Sized>(
    rng: &mut G,
    point: &TriangularPoint<R>,
    extra: Option<&MultiPoly<R>>,
    mut coeff: impl FnMut(&mut G) -> R,
) -> MultiPoly<R> {
    let n = point.nvars();
    let gens = point.generators();
    loop {
        let f = match rng.random_range(0..3) {
            // generic: u minus its normal form
            0 => {
                let u = random_poly(rng, n, n, MAX_RELATION_DEGREE, 4, &mut coeff);
                u.sub(&triangular_divide(&u, point).remainder)
            }
            // linear combination of generators, often singular
            1 => {
                let mut f = MultiPoly::zero(n);
                for g in gens {
                    if rng.random_bool(0.5) {
                        let h = random_poly(rng, n, n, 1, 2, &mut coeff);
                        f = f.add(&h.mul(g));
                    }
                }
                f
            }
            // products of generators
            _ => {
                let i = rng.random_range(0..n);
                let j = rng.random_range(0..n);
                let h = random_poly(rng, n, n, 1, 2, &mut coeff);
                gens[i]
                    .mul(&gens[j])
                    .add(&h.mul(&gens[rng.random_range(0..n)]))
            }
        };
        let f = match extra {
            Some(e) if rng.random_bool(0.5) => {
                let s = random_poly(rng, n, n, 1, 2, &mut coeff);
                f.add(&s.mul(e))
            }
            _ => f,
        };
        if !f.is_zero() && f.total_degree().is_some_and(|d| d <= MAX_RELATION_DEGREE) {
            return f;
        }
    }
}

/// Variety over `𝔽_p` with `n` variables and `r` relations through a random point.
pub fn random_fp_instance<G: Rng + ?Sized>(
    rng: &mut G,
    p: u64,
    n: usize,
    r: usize,
) -> Instance<Fp> {
    let fp = PrimeField::new(p).expect("prime");
    let point = random_fp_point(rng, fp, n);
    let relations = (0..r)
        .map(|_| random_member(rng, &point, None, fp_coeff(fp)))
        .collect();
    Instance {
        variety: PresentedVariety::new(variable_names(n), relations).expect("well-formed"),
        point,
    }
}

/// Arithmetic variety over `ℤ_(p)` through a random point `(g_1, …, g_n, p)`.
pub fn random_arithmetic_instance<G: Rng + ?Sized>(
    rng: &mut G,
    p: u64,
    n: usize,
    r: usize,
) -> Instance<BigInt> {
    let fp = PrimeField::new(p).expect("prime");
    let reduced = random_fp_point(rng, fp, n);
    let gens = reduced
        .generators()
        .iter()
        .map(|g| g.map_coeffs(|c| BigInt::from(c.value())))
        .collect();
    let point = TriangularPoint::with_prime(gens, p).expect("lift of a triangular point");
    let pz = MultiPoly::constant(n, BigInt::from(p));
    let relations = (0..r)
        .map(|_| random_member(rng, &point, Some(&pz), small_int))
        .collect();
    Instance {
        variety: PresentedVariety::new(variable_names(n), relations).expect("well-formed"),
        point,
    }
}

fn random_rational_instance<F: Field, G: Rng + ?Sized>(
    rng: &mut G,
    desc: &F::Desc,
    n: usize,
    r: usize,
    mut coeff: impl FnMut(&mut G) -> F,
) -> RationalInstance<F> {
    let values: Vec<F> = (0..n).map(|_| coeff(rng)).collect();
    let one = F::one(desc);
    let gens = (0..n)
        .map(|i| MultiPoly::var(n, i, one.clone()).sub(&MultiPoly::constant(n, values[i].clone())))
        .collect();
    let point = TriangularPoint::new(gens).expect("linear generators are triangular");
    let relations = (0..r)
        .map(|_| loop {
            let u = random_poly(rng, n, n, MAX_RELATION_DEGREE, 4, &mut coeff);
            let at = u.eval(&values, F::zero(desc), F::clone);
            let f = u.sub(&MultiPoly::constant(n, at));
            if !f.is_zero() {
                break f;
            }
        })
        .collect();
    RationalInstance {
        variety: PresentedVariety::new(variable_names(n), relations).expect("well-formed"),
        point,
        values,
    }
}

/// Variety over `𝔽_p` through a random rational point.
pub fn random_fp_rational_instance<G: Rng + ?Sized>(
    rng: &mut G,
    p: u64,
    n: usize,
    r: usize,
) -> RationalInstance<Fp> {
    let fp = PrimeField::new(p).expect("prime");
    random_rational_instance(rng, &fp, n, r, fp_coeff(fp))
}

/// Variety over `ℚ` through a random rational point with small coordinates.
pub fn random_q_rational_instance<G: Rng + ?Sized>(
    rng: &mut G,
    n: usize,
    r: usize,
) -> RationalInstance<Rational> {
    random_rational_instance(rng, &RationalField, n, r, |rng: &mut G| {
        Rational::new(
            BigInt::from(rng.random_range(-4i64..=4)),
            BigInt::from(rng.random_range(1i64..=3)),
        )
    })
}
