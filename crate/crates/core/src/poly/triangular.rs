//! Closed points given by triangular generator systems, and division by them.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Ring};

/// A closed point `m = (g_1, …, g_n)` (or `(g_1, …, g_n, p)` when a prime is
/// present) where `g_i` is monic in `t_i` and involves only `t_1, …, t_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularPoint<R> {
    generators: Vec<MultiPoly<R>>,
    prime: Option<u64>,
    degrees: Vec<u32>,
}

impl<R: Ring> TriangularPoint<R> {
    /// A point of a variety over a field.
    pub fn new(generators: Vec<MultiPoly<R>>) -> Result<Self> {
        let degrees = check_triangular(&generators)?;
        Ok(TriangularPoint {
            generators,
            prime: None,
            degrees,
        })
    }

    /// A point of an arithmetic variety, lying over the prime `p`.
    pub fn with_prime(generators: Vec<MultiPoly<R>>, p: u64) -> Result<Self> {
        PrimeField::new(p)?;
        let degrees = check_triangular(&generators)?;
        Ok(TriangularPoint {
            generators,
            prime: Some(p),
            degrees,
        })
    }

    pub fn generators(&self) -> &[MultiPoly<R>] {
        &self.generators
    }

    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    /// `deg_{t_i}(g_i)` for every level.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Degree of the residue field over the prime field (or over `K`).
    pub fn residue_degree(&self) -> u64 {
        self.degrees.iter().map(|&d| u64::from(d)).product()
    }

    /// The same point with coefficients mapped into another ring.
    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Result<TriangularPoint<S>> {
        let generators = self.generators.iter().map(|g| g.map_coeffs(&f)).collect();
        match self.prime {
            Some(p) => TriangularPoint::with_prime(generators, p),
            None => TriangularPoint::new(generators),
        }
    }
}

fn check_triangular<R: Ring>(generators: &[MultiPoly<R>]) -> Result<Vec<u32>> {
    let n = generators.len();
    let mut degrees = Vec::with_capacity(n);
    for (i, g) in generators.iter().enumerate() {
        if g.nvars() != n {
            return Err(Error::InvalidPoint(format!(
                "generator {} has {} variables, expected {n}",
                i + 1,
                g.nvars()
            )));
        }
        if let Some(j) = (i + 1..n).find(|&j| g.involves(j)) {
            return Err(Error::InvalidPoint(format!(
                "generator {} involves variable {} of a later level",
                i + 1,
                j + 1
            )));
        }
        let d = g.degree_in(i);
        if d == 0 {
            return Err(Error::InvalidPoint(format!(
                "generator {} does not involve its main variable {}",
                i + 1,
                i + 1
            )));
        }
        let lead = &g.coefficients_in(i)[d as usize];
        let monic = lead.is_constant() && lead.constant_term().is_some_and(Ring::is_one);
        if !monic {
            return Err(Error::InvalidPoint(format!(
                "generator {} is not monic in its main variable {}",
                i + 1,
                i + 1
            )));
        }
        degrees.push(d);
    }
    Ok(degrees)
}

/// Result of [`triangular_divide`]: `f = Σ quotients[j]·g_j + remainder`.
#[derive(Clone, Debug, PartialEq)]
pub struct Division<R> {
    pub quotients: Vec<MultiPoly<R>>,
    pub remainder: MultiPoly<R>,
}

/// Divides `f` by the generators of a triangular point, eliminating the main
/// variables in the fixed order `t_n, t_{n-1}, …, t_1`.
///
/// The remainder has degree `< deg_{t_i}(g_i)` in every `t_i`.
pub fn triangular_divide<R: Ring>(f: &MultiPoly<R>, point: &TriangularPoint<R>) -> Division<R> {
    let n = point.nvars();
    assert_eq!(f.nvars(), n, "polynomial and point live in different rings");
    let mut quotients = vec![MultiPoly::zero(n); n];
    let mut rem = f.clone();
    for i in (0..n).rev() {
        let d = point.degrees[i];
        let g = &point.generators[i];
        loop {
            let e = rem.degree_in(i);
            if e < d || rem.is_zero() {
                break;
            }
            // leading coefficient in t_i, shifted down by t_i^d
            let q = MultiPoly::from_terms(
                n,
                rem.terms().filter(|(m, _)| m.exps()[i] == e).map(|(m, c)| {
                    let mut exps = m.exps().to_vec();
                    exps[i] = e - d;
                    (Monomial::new(exps), c.clone())
                }),
            );
            rem = rem.sub(&q.mul(g));
            quotients[i] = quotients[i].add(&q);
        }
    }
    Division {
        quotients,
        remainder: rem,
    }
}

/// Whether `f` lies in the maximal ideal of a point over a field.
pub fn membership_certificate<F: Field>(f: &MultiPoly<F>, point: &TriangularPoint<F>) -> bool {
    triangular_divide(f, point).remainder.is_zero()
}

/// Whether `f ∈ (g_1, …, g_n, p)` for an integer polynomial `f`.
pub fn arithmetic_membership_certificate(
    f: &MultiPoly<BigInt>,
    point: &TriangularPoint<BigInt>,
) -> bool {
    let Some(p) = point.prime() else {
        return false;
    };
    let p = BigInt::from(p);
    triangular_divide(f, point)
        .remainder
        .terms()
        .all(|(_, c)| c.is_multiple_of(&p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, RationalField};
    use crate::poly::{parse_poly, parse_poly_over};

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn zz(text: &str, v: &[&str]) -> MultiPoly<BigInt> {
        parse_poly(text, &vars(v)).unwrap()
    }

    fn qq(text: &str, v: &[&str]) -> MultiPoly<Rational> {
        parse_poly_over(text, &vars(v), &RationalField).unwrap()
    }

    #[test]
    fn divide_cubic_by_x2_plus_1() {
        let pt = TriangularPoint::with_prime(vec![zz("x^2 + 1", &["x"])], 3).unwrap();
        let d = triangular_divide(&zz("x^3 + x + 3", &["x"]), &pt);
        assert_eq!(d.quotients, vec![zz("x", &["x"])]);
        assert_eq!(d.remainder, zz("3", &["x"]));
        assert!(arithmetic_membership_certificate(
            &zz("x^3 + x + 3", &["x"]),
            &pt
        ));
    }

    #[test]
    fn divide_generator_by_itself() {
        let v = ["x", "y"];
        let pt = TriangularPoint::new(vec![qq("x^2 - 2", &v), qq("y^2 - x", &v)]).unwrap();
        let d = triangular_divide(&qq("x^2 - 2", &v), &pt);
        assert_eq!(d.quotients, vec![qq("1", &v), qq("0", &v)]);
        assert!(d.remainder.is_zero());
    }

    #[test]
    fn divide_curve_by_quartic_point() {
        let v = ["x", "y"];
        let pt = TriangularPoint::new(vec![qq("x^2 - 2", &v), qq("y^2 - x", &v)]).unwrap();
        let f = qq("y^2 - x^3 + x", &v);
        let d = triangular_divide(&f, &pt);
        assert_eq!(d.quotients, vec![qq("-x", &v), qq("1", &v)]);
        assert!(d.remainder.is_zero());
        assert!(membership_certificate(&f, &pt));
    }

    #[test]
    fn divide_follows_fixed_order() {
        // y is eliminated before x, so x*y lands in the y-quotient
        let v = ["x", "y"];
        let pt = TriangularPoint::with_prime(vec![zz("x", &v), zz("y", &v)], 2).unwrap();
        let d = triangular_divide(&zz("x*y - 2", &v), &pt);
        assert_eq!(d.quotients, vec![zz("0", &v), zz("x", &v)]);
        assert_eq!(d.remainder, zz("-2", &v));
    }

    #[test]
    fn units_are_never_members() {
        let v = ["x", "y"];
        let pt = TriangularPoint::new(vec![qq("x^2 - 2", &v), qq("y^2 - x", &v)]).unwrap();
        assert!(!membership_certificate(&qq("1", &v), &pt));
        let ptz = TriangularPoint::with_prime(vec![zz("x^2 + 1", &["x"])], 3).unwrap();
        assert!(!arithmetic_membership_certificate(&zz("1", &["x"]), &ptz));
        assert!(!arithmetic_membership_certificate(
            &zz("x^3 + x + 1", &["x"]),
            &ptz
        ));
    }

    #[test]
    fn rejects_malformed_points() {
        let v = ["x", "y"];
        let bad = |gens: Vec<MultiPoly<BigInt>>| TriangularPoint::new(gens).unwrap_err().kind();
        assert_eq!(bad(vec![zz("x*y", &v), zz("y", &v)]), "invalid-point");
        assert_eq!(bad(vec![zz("2*x", &v), zz("y", &v)]), "invalid-point");
        assert_eq!(bad(vec![zz("x", &v), zz("x*y + 1", &v)]), "invalid-point");
        assert_eq!(bad(vec![zz("x", &v), zz("x", &v)]), "invalid-point");
        assert_eq!(bad(vec![zz("x", &v)]), "invalid-point");
        assert_eq!(
            TriangularPoint::with_prime(vec![zz("x", &["x"])], 4)
                .unwrap_err()
                .kind(),
            "not-prime"
        );
    }
}
