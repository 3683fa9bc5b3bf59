#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regulus::poly::{parse_poly_over, Monomial, MultiPoly};
use regulus::sample::{random_poly, variable_names};
use regulus::{Field, Fp, PrimeField, Rational, RationalField, ResidueTower, TowerElem};

pub fn vars(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Level degrees tried for random finite towers; total degree at most 8.
const SHAPES: &[&[u32]] = &[
    &[1],
    &[2],
    &[3],
    &[1, 2],
    &[2, 1],
    &[2, 2],
    &[2, 3],
    &[3, 2],
    &[2, 2, 2],
    &[1, 2, 2],
];

/// Every lower field must be small enough for the root probe to be a
/// complete irreducibility test of the (degree ≤ 3) level above it.
fn fully_probed(p: u64, shape: &[u32]) -> bool {
    let mut lower = 1u64;
    for &d in shape {
        if d >= 2 && p.pow(lower as u32) > 4096 {
            return false;
        }
        lower *= u64::from(d);
    }
    true
}

fn random_finite_tower(
    rng: &mut ChaCha8Rng,
    fp: PrimeField,
    shape: &[u32],
) -> Arc<ResidueTower<Fp>> {
    let n = shape.len();
    let names = variable_names(n);
    loop {
        let gens: Vec<MultiPoly<Fp>> = shape
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let one = fp.elem(1);
                let mut g = MultiPoly::term(Monomial::var(n, i, d), one);
                for e in 0..d {
                    let tail = random_poly(rng, n, i, 2, 3, |r: &mut ChaCha8Rng| {
                        fp.elem(r.random_range(0..fp.modulus() as i64))
                    });
                    g = g.add(&tail.mul_term(&Monomial::var(n, i, e), &one));
                }
                g
            })
            .collect();
        let tower = ResidueTower::new(fp, names.clone(), &gens).unwrap();
        if tower.probe_maximality().is_ok() {
            return tower;
        }
    }
}

/// Verified finite fields over 𝔽_p, p ≤ 13, of degree ≤ 8.
pub fn fp_towers() -> &'static [Arc<ResidueTower<Fp>>] {
    static TOWERS: OnceLock<Vec<Arc<ResidueTower<Fp>>>> = OnceLock::new();
    TOWERS.get_or_init(|| {
        let mut rng = rng(2024);
        let mut out = Vec::new();
        for p in [2, 3, 5, 7, 11, 13] {
            let fp = PrimeField::new(p).unwrap();
            for shape in SHAPES {
                if fully_probed(p, shape) {
                    out.push(random_finite_tower(&mut rng, fp, shape));
                }
            }
        }
        out
    })
}

/// Number fields with known irreducible towers.
pub fn q_towers() -> &'static [Arc<ResidueTower<Rational>>] {
    static TOWERS: OnceLock<Vec<Arc<ResidueTower<Rational>>>> = OnceLock::new();
    TOWERS.get_or_init(|| {
        let specs: &[&[&str]] = &[
            &["x"],
            &["x^2 - 2"],
            &["x^3 - 2"],
            &["x^2 - 2", "y^2 - x"],
            &["x^2 - 2", "y^2 - 3"],
            &["x^2 + 1", "y^3 - 2"],
            &["x^2 - 2", "y^2 - 3", "z^2 - 5"],
            &["x + 3", "y^2 + x*y + 1"],
        ];
        specs
            .iter()
            .map(|gens| {
                let names = variable_names(gens.len());
                let gens: Vec<_> = gens
                    .iter()
                    .map(|g| parse_poly_over(g, &names, &RationalField).unwrap())
                    .collect();
                ResidueTower::new(RationalField, names, &gens).unwrap()
            })
            .collect()
    })
}

pub fn fp_elem(t: &Arc<ResidueTower<Fp>>, coeffs: &[i64]) -> TowerElem<Fp> {
    let fp = *t.base();
    let v = (0..t.degree())
        .map(|i| fp.elem(coeffs.get(i).copied().unwrap_or(0)))
        .collect();
    t.from_coeffs(v).unwrap()
}

pub fn q_elem(t: &Arc<ResidueTower<Rational>>, coeffs: &[(i64, i64)]) -> TowerElem<Rational> {
    let v = (0..t.degree())
        .map(|i| coeffs.get(i).map_or(q(0, 1), |&(n, d)| q(n, d)))
        .collect();
    t.from_coeffs(v).unwrap()
}

pub fn fp_of(p: u64, v: i64) -> Fp {
    PrimeField::new(p).unwrap().elem(v)
}

pub fn zero_of<F: Field>(desc: &F::Desc) -> F {
    F::zero(desc)
}
