//! Sparse multivariate polynomials over an exact coefficient ring.

mod parse;
mod triangular;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::field::Ring;

pub use parse::{parse_poly, parse_poly_over};
pub use triangular::{
    arithmetic_membership_certificate, membership_certificate, triangular_divide, Division,
    TriangularPoint,
};

/// An exponent vector.
///
/// The derived-by-hand `Ord` is graded lexicographic (total degree first,
/// then lexicographic with the first variable most significant); this is
/// the order used for storage, iteration and printing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grlex_cmp(other)
    }
}

/// Monomial orders available to the Gröbner engine.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrLex => a.grlex_cmp(b),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// A polynomial in a fixed number of variables, stored as a map from
/// exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<R> {
    nvars: usize,
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    /// The variable `t_i`; `one` supplies the ring's unit.
    pub fn var(nvars: usize, i: usize, one: R) -> Self {
        assert!(
            i < nvars,
            "variable index {i} out of range for {nvars} variables"
        );
        Self::from_terms(nvars, [(Monomial::var(nvars, i, 1), one)])
    }

    pub fn term(m: Monomial, c: R) -> Self {
        let nvars = m.nvars();
        Self::from_terms(nvars, [(m, c)])
    }

    /// Builds a polynomial, summing repeated monomials and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, R)>) -> Self {
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "exponent vector length mismatch");
            out.add_term(m, &c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: &R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&R> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> Option<&R> {
        self.terms.get(&Monomial::one(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Whether the polynomial mentions variable `var`.
    pub fn involves(&self, var: usize) -> bool {
        self.degree_in(var) > 0
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &R)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))),
        )
    }

    pub fn mul_term(&self, m: &Monomial, c: &R) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(n, a)| (n.mul(m), a.mul(c))),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), &a.mul(b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32, one: &R) -> Self {
        let mut acc = MultiPoly::constant(self.nvars, one.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to `t_j`.
    pub fn partial_derivative(&self, j: usize) -> Self {
        assert!(j < self.nvars, "variable index {j} out of range");
        Self::from_terms(
            self.nvars,
            self.terms.iter().filter(|(m, _)| m.0[j] > 0).map(|(m, c)| {
                let mut exps = m.0.clone();
                let e = exps[j];
                exps[j] -= 1;
                (Monomial(exps), c.mul_u64(u64::from(e)))
            }),
        )
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Coefficients as a polynomial in `t_var`: entry `e` is the coefficient
    /// of `t_var^e`, itself a polynomial in the remaining variables.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly<R>> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let e = exps[var] as usize;
            exps[var] = 0;
            out[e].add_term(Monomial(exps), c);
        }
        out
    }

    /// Evaluates at `values` in a ring `S`, embedding coefficients by `embed`.
    pub fn eval<S: Ring>(&self, values: &[S], zero: S, embed: impl Fn(&R) -> S) -> S {
        assert_eq!(values.len(), self.nvars);
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (v, &e) in values.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.mul(v);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Same polynomial with its variables renamed: variable `i` becomes
    /// variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| {
                let mut exps = vec![0; self.nvars];
                for (i, &e) in m.0.iter().enumerate() {
                    exps[perm[i]] = e;
                }
                (Monomial(exps), c.clone())
            }),
        )
    }

    /// Display against variable names, e.g. `x^2*y - 3*x + 1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a, R> {
        PolyDisplay {
            poly: self,
            names,
            compact: false,
        }
    }

    /// Display without spaces around `+`/`-`, e.g. `a^2+1`.
    pub fn display_compact<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a, R> {
        PolyDisplay {
            poly: self,
            names,
            compact: true,
        }
    }
}

pub struct PolyDisplay<'a, R> {
    poly: &'a MultiPoly<R>,
    names: &'a [String],
    compact: bool,
}

impl<R: Ring> fmt::Display for PolyDisplay<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let (plus, minus) = if self.compact {
            ("+", "-")
        } else {
            (" + ", " - ")
        };
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(minus)?,
                (_, false) => f.write_str(plus)?,
            }
            let mut factors = Vec::new();
            if m.is_one() || !abs.is_one() {
                if abs.is_compound() {
                    factors.push(format!("({abs})"));
                } else {
                    factors.push(abs.to_string());
                }
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Default variable names `a`, `b`, `c`, … used for residue-field levels.
pub fn level_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("a{i}")
            }
        })
        .collect()
}
