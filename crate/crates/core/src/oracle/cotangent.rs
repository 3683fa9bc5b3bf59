use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::groebner::{buchberger_with_limits, GroebnerLimits};
use crate::error::{Error, Result};
use crate::field::{Field, Ring};
use crate::poly::{triangular_divide, Monomial, MonomialOrder, MultiPoly, TriangularPoint};

/// Products `g_i·g_j` for `i ≤ j`.
fn square_generators<R: Ring>(gens: &[MultiPoly<R>]) -> Vec<MultiPoly<R>> {
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            out.push(gens[i].mul(&gens[j]));
        }
    }
    out
}

/// `dim_κ m/m²` at a point of `Spec K[t]/(relations)`, computed from the
/// length of `K[t]/(I + m²)`.
pub fn cotangent_dim_geometric<F: Field>(
    relations: &[MultiPoly<F>],
    point: &TriangularPoint<F>,
) -> Result<usize> {
    cotangent_dim_geometric_with_limits(relations, point, &GroebnerLimits::default())
}

pub fn cotangent_dim_geometric_with_limits<F: Field>(
    relations: &[MultiPoly<F>],
    point: &TriangularPoint<F>,
    limits: &GroebnerLimits,
) -> Result<usize> {
    let n = point.nvars();
    let mut gens = relations.to_vec();
    gens.extend(square_generators(point.generators()));
    let gb = buchberger_with_limits(n, &gens, MonomialOrder::GrevLex, limits)?;
    if gb.is_unit_ideal() {
        return Err(Error::EmptyVariety);
    }
    let total = gb.quotient_dimension().ok_or_else(|| {
        Error::InternalConsistency(
            "I + m^2 is not zero-dimensional; the point ideal is not maximal".into(),
        )
    })?;
    let k = point.residue_degree() as usize;
    if total % k != 0 || total < k {
        return Err(Error::InternalConsistency(format!(
            "length {total} of O/m^2 over the base is not a positive multiple of the residue degree {k}"
        )));
    }
    Ok(total / k - 1)
}

/// Arithmetic modulo `p²`.
#[derive(Clone, Copy)]
struct ModSquare {
    p: u128,
    q: u128,
}

impl ModSquare {
    fn new(p: u64) -> Self {
        let p = u128::from(p);
        ModSquare { p, q: p * p }
    }

    fn reduce(&self, n: &BigInt) -> u128 {
        n.mod_floor(&BigInt::from(self.q))
            .to_u128()
            .expect("residue fits")
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        // a, b < p² < 2^64
        a * b % self.q
    }

    fn sub(&self, a: u128, b: u128) -> u128 {
        (a + self.q - b) % self.q
    }

    fn valuation(&self, a: u128) -> u32 {
        if a == 0 {
            2
        } else if a % self.p == 0 {
            1
        } else {
            0
        }
    }

    /// Inverse of a unit, via `a^{φ(p²) − 1}`.
    fn inv(&self, a: u128) -> u128 {
        let mut e = self.p * (self.p - 1) - 1;
        let (mut base, mut acc) = (a % self.q, 1 % self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// `log_p` of the order of `(ℤ/p²)^cols / rowspan(rows)`.
///
/// Elimination pivots on an entry of least valuation; every other entry of
/// its column is then a multiple of the pivot, so row operations clear the
/// column and the pivot row can be set aside.
fn quotient_length(mut rows: Vec<Vec<u128>>, cols: usize, m: ModSquare) -> u32 {
    let mut length = 2 * cols as u32;
    let mut live_cols: Vec<usize> = (0..cols).collect();
    while !rows.is_empty() {
        let best = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| live_cols.iter().map(move |&c| (m.valuation(row[c]), r, c)))
            .filter(|&(v, _, _)| v < 2)
            .min();
        let Some((v, r, c)) = best else {
            break;
        };
        let pivot = rows.swap_remove(r);
        let unit = m.inv(pivot[c] / if v == 1 { m.p } else { 1 });
        let pivot: Vec<u128> = pivot.iter().map(|&x| m.mul(x, unit)).collect();
        // pivot[c] is now p^v
        for row in rows.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let factor = if v == 1 { row[c] / m.p } else { row[c] };
            for &j in &live_cols {
                row[j] = m.sub(row[j], m.mul(factor, pivot[j]));
            }
            debug_assert_eq!(row[c], 0);
        }
        live_cols.retain(|&j| j != c);
        length -= 2 - v;
    }
    length
}

/// `dim_κ m/m²` for `m = (g_1, …, g_n, p)` on `Spec ℤ[t]/(relations)`.
///
/// The quotient `ℤ[t]/(I + m²)` is a quotient of `(ℤ/p²)[t]/(g_1², …, g_n²)`,
/// which is free over `ℤ/p²` on the monomials with `e_i < 2·deg g_i`. The
/// image of `I + m²` is spanned by the reduced products of `f_i`, `g_i g_j`
/// and `p·g_i` with those monomials; its cokernel has order `|κ|^{1 + d}`.
pub fn cotangent_dim_arithmetic(
    relations: &[MultiPoly<BigInt>],
    point: &TriangularPoint<BigInt>,
) -> Result<usize> {
    let p = point
        .prime()
        .ok_or_else(|| Error::InvalidPoint("arithmetic point has no prime".into()))?;
    let n = point.nvars();
    let m = ModSquare::new(p);
    let pz = BigInt::from(p);

    let squares: Vec<MultiPoly<BigInt>> = point.generators().iter().map(|g| g.mul(g)).collect();
    let sq_point = TriangularPoint::new(squares)?;
    let radix: Vec<u32> = point.degrees().iter().map(|d| 2 * d).collect();
    let cols: usize = radix.iter().map(|&r| r as usize).product();

    let index = |mono: &Monomial| -> usize {
        mono.exps()
            .iter()
            .zip(&radix)
            .rev()
            .fold(0usize, |acc, (&e, &r)| acc * r as usize + e as usize)
    };
    let basis: Vec<Monomial> = (0..cols)
        .map(|mut k| {
            let exps = radix
                .iter()
                .map(|&r| {
                    let e = (k % r as usize) as u32;
                    k /= r as usize;
                    e
                })
                .collect();
            Monomial::new(exps)
        })
        .collect();

    let mut spanning: Vec<MultiPoly<BigInt>> = relations.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            spanning.push(point.generators()[i].mul(&point.generators()[j]));
        }
        spanning.push(point.generators()[i].scale(&pz));
    }

    let one = BigInt::from(1);
    let mut rows = Vec::with_capacity(spanning.len() * cols);
    for u in &spanning {
        for mono in &basis {
            let rem = triangular_divide(&u.mul_term(mono, &one), &sq_point).remainder;
            let mut row = vec![0u128; cols];
            for (t, c) in rem.terms() {
                row[index(t)] = m.reduce(c);
            }
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
    }

    let s = quotient_length(rows, cols, m) as u64;
    let c = point.residue_degree();
    if s % c != 0 || s < c {
        return Err(Error::InternalConsistency(format!(
            "length {s} of O/m^2 is not a positive multiple of the residue degree {c}"
        )));
    }
    Ok((s / c - 1) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, RationalField};
    use crate::poly::{parse_poly, parse_poly_over};

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn qq(v: &[&str], polys: &[&str]) -> Vec<MultiPoly<Rational>> {
        polys
            .iter()
            .map(|s| parse_poly_over(s, &vars(v), &RationalField).unwrap())
            .collect()
    }

    fn zz(v: &[&str], polys: &[&str]) -> Vec<MultiPoly<BigInt>> {
        polys
            .iter()
            .map(|s| parse_poly(s, &vars(v)).unwrap())
            .collect()
    }

    #[test]
    fn geometric_examples() {
        let v = ["x", "y"];
        let origin = TriangularPoint::new(qq(&v, &["x", "y"])).unwrap();
        let node = qq(&v, &["y^2 - x^3 - x^2"]);
        assert_eq!(cotangent_dim_geometric(&node, &origin).unwrap(), 2);
        let parabola = qq(&v, &["y - x^2"]);
        assert_eq!(cotangent_dim_geometric(&parabola, &origin).unwrap(), 1);
        let line = TriangularPoint::new(qq(&["x"], &["x"])).unwrap();
        assert_eq!(cotangent_dim_geometric(&[], &line).unwrap(), 1);
    }

    #[test]
    fn geometric_at_a_quartic_point() {
        let v = ["x", "y"];
        let pt = TriangularPoint::new(qq(&v, &["x^2 - 2", "y^2 - x"])).unwrap();
        assert_eq!(
            cotangent_dim_geometric(&qq(&v, &["y^2 - x^3 + x"]), &pt).unwrap(),
            1
        );
        assert_eq!(cotangent_dim_geometric(&[], &pt).unwrap(), 2);
    }

    #[test]
    fn arithmetic_examples() {
        let pt = TriangularPoint::with_prime(zz(&["x"], &["x^2 + 1"]), 3).unwrap();
        assert_eq!(
            cotangent_dim_arithmetic(&zz(&["x"], &["x^3 + x + 3"]), &pt).unwrap(),
            1
        );

        let v = ["x", "y"];
        let origin = TriangularPoint::with_prime(zz(&v, &["x", "y"]), 2).unwrap();
        assert_eq!(
            cotangent_dim_arithmetic(&zz(&v, &["x*y - 2"]), &origin).unwrap(),
            2
        );

        let line = TriangularPoint::with_prime(zz(&["x"], &["x"]), 2).unwrap();
        assert_eq!(cotangent_dim_arithmetic(&[], &line).unwrap(), 2);
    }

    #[test]
    fn arithmetic_singular_point() {
        // x^2 + 1 = (x-1)^2 + 2(x-1) + 2 is 2 modulo m^2, so only x - 1 survives
        let pt = TriangularPoint::with_prime(zz(&["x"], &["x - 1"]), 2).unwrap();
        assert_eq!(
            cotangent_dim_arithmetic(&zz(&["x"], &["x^2 + 1"]), &pt).unwrap(),
            1
        );
        // x^2 at (x, 2) is a double line: m/m^2 keeps both x and 2
        let pt = TriangularPoint::with_prime(zz(&["x"], &["x"]), 2).unwrap();
        assert_eq!(
            cotangent_dim_arithmetic(&zz(&["x"], &["x^2"]), &pt).unwrap(),
            2
        );
    }

    #[test]
    fn smith_length_counts_cokernel() {
        let m = ModSquare::new(3);
        assert_eq!(quotient_length(vec![], 2, m), 4);
        assert_eq!(quotient_length(vec![vec![3, 0], vec![0, 1]], 2, m), 1);
        assert_eq!(quotient_length(vec![vec![3, 3], vec![6, 6]], 2, m), 3);
        assert_eq!(m.mul(m.inv(4), 4), 1);
    }
}
