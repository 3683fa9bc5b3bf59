//! Residue fields as towers of monogenic extensions.
//!
//! A triangular point `(g_1, …, g_n)` over a field `K` gives the residue
//! field `κ = K[t_1]/(ḡ_1)[t_2]/(ḡ_2)…`, where `ḡ_i` is `g_i` with its
//! lower-level coefficients already reduced. An element is stored as a dense
//! coefficient vector over `K` indexed in mixed radix: the monomial
//! `t_1^{e_1}⋯t_n^{e_n}` with `e_i < deg ḡ_i` sits at `Σ e_i·stride_i`, where
//! `stride_i = Π_{j<i} deg ḡ_j`. The first `stride_k` entries of a vector are
//! therefore an element of the sub-tower of height `k`.
//!
//! Whether the ideal is maximal is not certified up front. Inversion runs the
//! extended Euclidean algorithm level by level; a nontrivial gcd with a level
//! polynomial proves the quotient is not a field and is reported with the
//! factor as witness.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Ring};
use crate::poly::{level_names, Monomial, MultiPoly, TriangularPoint};

/// Finite lower fields up to this size are searched exhaustively for roots
/// of the next level polynomial.
const PROBE_FIELD_LIMIT: u128 = 4096;

#[derive(Clone, Debug, PartialEq)]
struct Level<F> {
    degree: usize,
    /// Coefficients of `t^0 … t^{d-1}` in the monic level polynomial, each
    /// an element of the tower below.
    tail: Vec<Vec<F>>,
}

/// The residue field `κ_x` of a triangular point.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueTower<F: Field> {
    base: F::Desc,
    var_names: Vec<String>,
    levels: Vec<Level<F>>,
    strides: Vec<usize>,
}

/// An element of a [`ResidueTower`], in canonical (fully reduced) form.
#[derive(Clone)]
pub struct TowerElem<F: Field> {
    tower: Arc<ResidueTower<F>>,
    coeffs: Vec<F>,
}

type UPoly<F> = Vec<Vec<F>>;

impl<F: Field> ResidueTower<F> {
    /// Builds the tower of a triangular-monic generator system.
    ///
    /// `var_names` name the polynomial variables and are used only when
    /// reporting a witness factor.
    pub fn new(
        base: F::Desc,
        var_names: Vec<String>,
        generators: &[MultiPoly<F>],
    ) -> Result<Arc<Self>> {
        let point = TriangularPoint::new(generators.to_vec())?;
        Self::from_point(base, var_names, &point)
    }

    pub fn from_point(
        base: F::Desc,
        var_names: Vec<String>,
        point: &TriangularPoint<F>,
    ) -> Result<Arc<Self>> {
        let n = point.nvars();
        if var_names.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} variable names for {n} generators",
                var_names.len()
            )));
        }
        let mut tower = ResidueTower {
            base,
            var_names,
            levels: Vec::with_capacity(n),
            strides: vec![1],
        };
        for (k, g) in point.generators().iter().enumerate() {
            let coeffs = g.coefficients_in(k);
            let d = coeffs.len() - 1;
            let tail = coeffs[..d].iter().map(|c| tower.reduce_vec(k, c)).collect();
            tower.levels.push(Level { degree: d, tail });
            tower.strides.push(tower.strides[k] * d);
        }
        Ok(Arc::new(tower))
    }

    pub fn base(&self) -> &F::Desc {
        &self.base
    }

    pub fn nlevels(&self) -> usize {
        self.levels.len()
    }

    pub fn level_degrees(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.degree).collect()
    }

    /// `[κ : K]`.
    pub fn degree(&self) -> usize {
        self.strides[self.levels.len()]
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    fn zero_vec(&self, h: usize) -> Vec<F> {
        vec![F::zero(&self.base); self.strides[h]]
    }

    fn one_vec(&self, h: usize) -> Vec<F> {
        let mut v = self.zero_vec(h);
        v[0] = F::one(&self.base);
        v
    }

    fn embed(&self, v: &[F], h: usize) -> Vec<F> {
        let mut out = self.zero_vec(h);
        out[..v.len()].clone_from_slice(v);
        out
    }

    /// Image of the variable `t_j` in the tower of height `h > j`.
    fn var_image(&self, j: usize, h: usize) -> Vec<F> {
        let lvl = &self.levels[j];
        if lvl.degree >= 2 {
            let mut v = self.zero_vec(h);
            v[self.strides[j]] = F::one(&self.base);
            v
        } else {
            let neg: Vec<F> = lvl.tail[0].iter().map(Ring::neg).collect();
            self.embed(&neg, h)
        }
    }

    fn mul_at(&self, h: usize, a: &[F], b: &[F]) -> Vec<F> {
        if h == 0 {
            return vec![a[0].mul(&b[0])];
        }
        let lvl = &self.levels[h - 1];
        let d = lvl.degree;
        let c = self.strides[h - 1];
        let mut prod: UPoly<F> = vec![self.zero_vec(h - 1); 2 * d - 1];
        for i in 0..d {
            let ai = &a[i * c..(i + 1) * c];
            if is_zero(ai) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * c..(j + 1) * c];
                if is_zero(bj) {
                    continue;
                }
                let t = self.mul_at(h - 1, ai, bj);
                add_assign(&mut prod[i + j], &t);
            }
        }
        for m in (d..2 * d - 1).rev() {
            let q = std::mem::replace(&mut prod[m], self.zero_vec(h - 1));
            if is_zero(&q) {
                continue;
            }
            for (e, tail) in lvl.tail.iter().enumerate() {
                let t = self.mul_at(h - 1, &q, tail);
                sub_assign(&mut prod[m - d + e], &t);
            }
        }
        prod.truncate(d);
        prod.concat()
    }

    fn pow_at(&self, h: usize, a: &[F], mut e: u64) -> Vec<F> {
        let mut acc = self.one_vec(h);
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_at(h, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_at(h, &base, &base);
            }
        }
        acc
    }

    fn inv_at(&self, h: usize, a: &[F]) -> Result<Vec<F>> {
        if is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        if h == 0 {
            return a[0].inv().map(|x| vec![x]).ok_or(Error::DivisionByZero);
        }
        let lvl = &self.levels[h - 1];
        let c = self.strides[h - 1];
        let a_poly = trim(a.chunks(c).map(<[F]>::to_vec).collect());
        if a_poly.len() == 1 {
            let inv = self.inv_at(h - 1, &a_poly[0])?;
            return Ok(self.embed(&inv, h));
        }
        let mut modulus: UPoly<F> = lvl.tail.clone();
        modulus.push(self.one_vec(h - 1));

        // invariant: s_i · a ≡ r_i (mod level polynomial)
        let (mut r0, mut r1) = (modulus.clone(), a_poly);
        let (mut s0, mut s1): (UPoly<F>, UPoly<F>) = (Vec::new(), vec![self.one_vec(h - 1)]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divmod(h - 1, &r0, &r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s2 = self.poly_sub(h - 1, &s0, &self.poly_mul(h - 1, &q, &s1));
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() == 1 {
            let inv_c = self.inv_at(h - 1, &r0[0])?;
            let scaled: UPoly<F> = s0.iter().map(|x| self.mul_at(h - 1, x, &inv_c)).collect();
            let (_, mut rem) = self.poly_divmod(h - 1, &scaled, &modulus)?;
            rem.resize(lvl.degree, self.zero_vec(h - 1));
            return Ok(rem.concat());
        }
        let lead_inv = self.inv_at(h - 1, r0.last().expect("nonzero gcd"))?;
        let monic: UPoly<F> = r0
            .iter()
            .map(|x| self.mul_at(h - 1, x, &lead_inv))
            .collect();
        Err(self.not_maximal(h - 1, &monic))
    }

    fn not_maximal(&self, level: usize, factor: &UPoly<F>) -> Error {
        let n = self.var_names.len();
        let mut poly = MultiPoly::zero(n);
        for (e, coeff) in factor.iter().enumerate() {
            let c = self.vec_to_poly(coeff);
            poly = poly.add(&c.mul_term(&Monomial::var(n, level, e as u32), &F::one(&self.base)));
        }
        Error::NotMaximal {
            level: level + 1,
            variable: self.var_names[level].clone(),
            factor: poly.display(&self.var_names).to_string(),
        }
    }

    fn vec_to_poly(&self, v: &[F]) -> MultiPoly<F> {
        let n = self.var_names.len();
        MultiPoly::from_terms(
            n,
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(idx, c)| {
                    let mut exps = vec![0u32; n];
                    for (j, lvl) in self.levels.iter().enumerate() {
                        exps[j] = ((idx / self.strides[j]) % lvl.degree) as u32;
                    }
                    (Monomial::new(exps), c.clone())
                }),
        )
    }

    fn poly_mul(&self, h: usize, a: &UPoly<F>, b: &UPoly<F>) -> UPoly<F> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero_vec(h); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let t = self.mul_at(h, x, y);
                add_assign(&mut out[i + j], &t);
            }
        }
        trim(out)
    }

    fn poly_sub(&self, h: usize, a: &UPoly<F>, b: &UPoly<F>) -> UPoly<F> {
        let len = a.len().max(b.len());
        let mut out = vec![self.zero_vec(h); len];
        for (i, x) in a.iter().enumerate() {
            add_assign(&mut out[i], x);
        }
        for (i, y) in b.iter().enumerate() {
            sub_assign(&mut out[i], y);
        }
        trim(out)
    }

    /// Division with remainder of univariate polynomials over the tower of
    /// height `h`; `b` must be trimmed and nonzero.
    fn poly_divmod(&self, h: usize, a: &UPoly<F>, b: &UPoly<F>) -> Result<(UPoly<F>, UPoly<F>)> {
        let lead_inv = self.inv_at(h, b.last().expect("nonzero divisor"))?;
        let mut rem = a.clone();
        if rem.len() < b.len() {
            return Ok((Vec::new(), trim(rem)));
        }
        let mut q = vec![self.zero_vec(h); rem.len() - b.len() + 1];
        for shift in (0..q.len()).rev() {
            let top = &rem[shift + b.len() - 1];
            if is_zero(top) {
                continue;
            }
            let factor = self.mul_at(h, top, &lead_inv);
            for (i, bi) in b.iter().enumerate() {
                let t = self.mul_at(h, &factor, bi);
                sub_assign(&mut rem[shift + i], &t);
            }
            q[shift] = factor;
        }
        Ok((trim(q), trim(rem)))
    }

    /// Canonical vector of a polynomial in the variables below height `h`.
    fn reduce_vec(&self, h: usize, expr: &MultiPoly<F>) -> Vec<F> {
        let images: Vec<Vec<F>> = (0..h).map(|j| self.var_image(j, h)).collect();
        let mut powers: Vec<Vec<Vec<F>>> = images.iter().map(|_| vec![self.one_vec(h)]).collect();
        let mut acc = self.zero_vec(h);
        for (m, c) in expr.terms() {
            let mut t = self.zero_vec(h);
            t[0] = c.clone();
            for (j, &e) in m.exps().iter().enumerate().take(h) {
                let e = e as usize;
                while powers[j].len() <= e {
                    let next = self.mul_at(h, powers[j].last().unwrap(), &images[j]);
                    powers[j].push(next);
                }
                t = self.mul_at(h, &t, &powers[j][e]);
            }
            add_assign(&mut acc, &t);
        }
        acc
    }

    /// Minimal polynomial of level `k` (0-based) as a polynomial in all
    /// tower variables.
    pub fn minimal_polynomial(&self, k: usize) -> MultiPoly<F> {
        let n = self.var_names.len();
        let lvl = &self.levels[k];
        let one = F::one(&self.base);
        let mut poly = MultiPoly::term(Monomial::var(n, k, lvl.degree as u32), one.clone());
        for (e, c) in lvl.tail.iter().enumerate() {
            poly = poly.add(
                &self
                    .vec_to_poly(c)
                    .mul_term(&Monomial::var(n, k, e as u32), &one),
            );
        }
        poly
    }

    /// Printable description such as `GF(3)[a]/(a^2+1)`. Levels of degree 1
    /// add nothing to the field and are omitted.
    pub fn describe(&self) -> String {
        let letters = level_names(self.var_names.len());
        let nontrivial: Vec<usize> = (0..self.levels.len())
            .filter(|&k| self.levels[k].degree >= 2)
            .collect();
        if nontrivial.is_empty() {
            return self.base.to_string();
        }
        let vars: Vec<&str> = nontrivial.iter().map(|&k| letters[k].as_str()).collect();
        let polys: Vec<String> = nontrivial
            .iter()
            .map(|&k| {
                self.minimal_polynomial(k)
                    .display_compact(&letters)
                    .to_string()
            })
            .collect();
        format!("{}[{}]/({})", self.base, vars.join(","), polys.join(","))
    }

    /// Looks for roots of each level polynomial among cheap candidates in
    /// the field below it (every element of a small finite field; rational
    /// roots over `ℚ`). A root `c` turns into the standard inversion failure
    /// on `t_k − c`, carrying that linear factor as witness.
    pub fn probe_maximality(&self) -> Result<()> {
        for (k, lvl) in self.levels.iter().enumerate() {
            if lvl.degree < 2 {
                continue;
            }
            for c in self.root_candidates(k) {
                if !is_zero(&self.eval_level_poly(k, &c)) {
                    continue;
                }
                let mut x = self.zero_vec(k + 1);
                for (slot, v) in x.iter_mut().zip(c.iter().map(Ring::neg)) {
                    *slot = v;
                }
                x[self.strides[k]] = F::one(&self.base);
                self.inv_at(k + 1, &x)?;
                return Err(Error::InternalConsistency(format!(
                    "level {} polynomial vanishes at a candidate but the linear factor inverted",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    fn root_candidates(&self, k: usize) -> Vec<Vec<F>> {
        let width = self.strides[k];
        if let Some(elems) = F::elements(&self.base) {
            let size = (elems.len() as u128).checked_pow(width as u32);
            if size.is_some_and(|s| s <= PROBE_FIELD_LIMIT) {
                return all_vectors(&elems, width);
            }
            return Vec::new();
        }
        if width == 1 {
            let mut coeffs: Vec<F> = self.levels[k].tail.iter().map(|v| v[0].clone()).collect();
            coeffs.push(F::one(&self.base));
            return F::rational_root_candidates(&coeffs)
                .into_iter()
                .map(|c| vec![c])
                .collect();
        }
        Vec::new()
    }

    fn eval_level_poly(&self, k: usize, c: &[F]) -> Vec<F> {
        let lvl = &self.levels[k];
        let mut acc = self.one_vec(k);
        for tail in lvl.tail.iter().rev() {
            acc = self.mul_at(k, &acc, c);
            add_assign(&mut acc, tail);
        }
        acc
    }
}

impl<F: Field> ResidueTower<F> {
    fn elem(self: &Arc<Self>, coeffs: Vec<F>) -> TowerElem<F> {
        TowerElem {
            tower: Arc::clone(self),
            coeffs,
        }
    }

    pub fn zero(self: &Arc<Self>) -> TowerElem<F> {
        self.elem(self.zero_vec(self.nlevels()))
    }

    pub fn one(self: &Arc<Self>) -> TowerElem<F> {
        self.elem(self.one_vec(self.nlevels()))
    }

    pub fn from_base(self: &Arc<Self>, c: F) -> TowerElem<F> {
        let mut v = self.zero_vec(self.nlevels());
        v[0] = c;
        self.elem(v)
    }

    /// Image of `t_k` in the residue field.
    pub fn generator(self: &Arc<Self>, k: usize) -> TowerElem<F> {
        self.elem(self.var_image(k, self.nlevels()))
    }

    /// Element from a canonical coefficient vector.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<F>) -> Result<TowerElem<F>> {
        if coeffs.len() != self.degree() {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        Ok(self.elem(coeffs))
    }

    /// Canonical form of `expr` modulo the level polynomials.
    pub fn reduce(self: &Arc<Self>, expr: &MultiPoly<F>) -> Result<TowerElem<F>> {
        if expr.nvars() != self.nlevels() {
            return Err(Error::InvalidInput(format!(
                "expression has {} variables but the tower has {} levels",
                expr.nvars(),
                self.nlevels()
            )));
        }
        Ok(self.elem(self.reduce_vec(self.nlevels(), expr)))
    }

    /// Every element of the field, if the base is finite and the field has
    /// at most `limit` elements.
    pub fn elements(self: &Arc<Self>, limit: usize) -> Option<Vec<TowerElem<F>>> {
        let base = F::elements(&self.base)?;
        let size = (base.len() as u128).checked_pow(self.degree() as u32)?;
        if size > limit as u128 {
            return None;
        }
        Some(
            all_vectors(&base, self.degree())
                .into_iter()
                .map(|v| self.elem(v))
                .collect(),
        )
    }
}

/// Reduces a polynomial in the tower variables to canonical form.
pub fn tower_reduce<F: Field>(
    expr: &MultiPoly<F>,
    tower: &Arc<ResidueTower<F>>,
) -> Result<TowerElem<F>> {
    tower.reduce(expr)
}

/// Multiplicative inverse in the tower.
pub fn tower_invert<F: Field>(a: &TowerElem<F>) -> Result<TowerElem<F>> {
    a.inv()
}

impl<F: Field> TowerElem<F> {
    pub fn tower(&self) -> &Arc<ResidueTower<F>> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn inv(&self) -> Result<TowerElem<F>> {
        let v = self.tower.inv_at(self.tower.nlevels(), &self.coeffs)?;
        Ok(self.tower.elem(v))
    }

    pub fn pow(&self, e: u64) -> TowerElem<F> {
        let v = self.tower.pow_at(self.tower.nlevels(), &self.coeffs, e);
        self.tower.elem(v)
    }

    /// The canonical representative as a polynomial in the tower variables.
    pub fn to_poly(&self) -> MultiPoly<F> {
        self.tower.vec_to_poly(&self.coeffs)
    }

    fn same_tower(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tower, &other.tower) || *self.tower == *other.tower
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> TowerElem<F> {
        debug_assert!(self.same_tower(other), "elements of different towers");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f(a, b))
            .collect();
        self.tower.elem(coeffs)
    }
}

impl<F: Field> PartialEq for TowerElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.same_tower(other)
    }
}

impl<F: Field> fmt::Display for TowerElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = level_names(self.tower.var_names.len());
        write!(f, "{}", self.to_poly().display_compact(&letters))
    }
}

impl<F: Field> fmt::Debug for TowerElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TowerElem({self})")
    }
}

impl<F: Field> Ring for TowerElem<F> {
    fn is_zero(&self) -> bool {
        is_zero(&self.coeffs)
    }
    fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && is_zero(&self.coeffs[1..])
    }
    fn zero_like(&self) -> Self {
        self.tower.zero()
    }
    fn one_like(&self) -> Self {
        self.tower.one()
    }
    fn add(&self, other: &Self) -> Self {
        self.zip_with(other, F::add)
    }
    fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, F::sub)
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.same_tower(other), "elements of different towers");
        let v = self
            .tower
            .mul_at(self.tower.nlevels(), &self.coeffs, &other.coeffs);
        self.tower.elem(v)
    }
    fn neg(&self) -> Self {
        self.tower.elem(self.coeffs.iter().map(Ring::neg).collect())
    }
    fn mul_u64(&self, k: u64) -> Self {
        self.tower
            .elem(self.coeffs.iter().map(|c| c.mul_u64(k)).collect())
    }
    fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

fn is_zero<F: Ring>(v: &[F]) -> bool {
    v.iter().all(Ring::is_zero)
}

fn add_assign<F: Ring>(acc: &mut [F], v: &[F]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = a.add(b);
    }
}

fn sub_assign<F: Ring>(acc: &mut [F], v: &[F]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = a.sub(b);
    }
}

fn trim<F: Ring>(mut p: UPoly<F>) -> UPoly<F> {
    while p.last().is_some_and(|c| is_zero(c)) {
        p.pop();
    }
    p
}

fn all_vectors<F: Clone>(elems: &[F], width: usize) -> Vec<Vec<F>> {
    let mut out: Vec<Vec<F>> = vec![Vec::with_capacity(width)];
    for _ in 0..width {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                elems.iter().map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e.clone());
                    v
                })
            })
            .collect();
    }
    out
}
