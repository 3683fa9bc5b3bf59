use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, MultiPoly};

/// Guards that keep the oracle at desk scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerLimits {
    pub max_vars: usize,
    /// Bound on the total degree of the input generators.
    pub max_degree: u32,
    /// Bound on the number of S-pairs processed.
    pub max_pairs: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits {
            max_vars: 4,
            max_degree: 6,
            max_pairs: 100_000,
        }
    }
}

/// A reduced Gröbner basis: monic, no leading monomial divides another, and
/// no term of any element is divisible by another element's leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F> {
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<MultiPoly<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Basis elements sorted by descending leading monomial.
    pub fn generators(&self) -> &[MultiPoly<F>] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| lm(g, self.order).clone())
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(MultiPoly::is_constant)
    }

    pub fn normal_form(&self, f: &MultiPoly<F>) -> MultiPoly<F> {
        normal_form(f, &self.generators, self.order)
    }

    pub fn contains(&self, f: &MultiPoly<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// `dim_K K[t]/I` when the quotient is finite-dimensional, by counting
    /// standard monomials. `None` for positive-dimensional ideals.
    pub fn quotient_dimension(&self) -> Option<usize> {
        let lms = self.leading_monomials();
        let mut bounds = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let pure = lms
                .iter()
                .filter(|m| m.exps().iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|m| m.exps()[i])
                .min()?;
            bounds.push(pure);
        }
        let mut count = 0;
        let mut exps = vec![0u32; self.nvars];
        loop {
            let m = Monomial::new(exps.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                count += 1;
            }
            // odometer over the box below the pure-power bounds
            let mut i = 0;
            loop {
                if i == self.nvars {
                    return Some(count);
                }
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// Checks the defining properties: every S-pair reduces to zero and the
    /// basis is reduced.
    pub fn is_reduced_basis(&self) -> bool {
        let o = self.order;
        let gens = &self.generators;
        for (i, g) in gens.iter().enumerate() {
            let Some((_, c)) = g.leading_term(o) else {
                return false;
            };
            if !c.is_one() {
                return false;
            }
            for (j, h) in gens.iter().enumerate() {
                if i != j && g.terms().any(|(m, _)| lm(h, o).divides(m)) {
                    return false;
                }
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if !normal_form(&s_polynomial(&gens[i], &gens[j], o), gens, o).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn lm<F: Field>(f: &MultiPoly<F>, order: MonomialOrder) -> &Monomial {
    f.leading_term(order).expect("nonzero polynomial").0
}

fn make_monic<F: Field>(f: &MultiPoly<F>, order: MonomialOrder) -> MultiPoly<F> {
    let (_, c) = f.leading_term(order).expect("nonzero polynomial");
    f.scale(&c.inv().expect("leading coefficient is nonzero"))
}

fn s_polynomial<F: Field>(
    f: &MultiPoly<F>,
    g: &MultiPoly<F>,
    order: MonomialOrder,
) -> MultiPoly<F> {
    let (mf, cf) = f.leading_term(order).expect("nonzero polynomial");
    let (mg, cg) = g.leading_term(order).expect("nonzero polynomial");
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l).expect("lcm"), &cg.clone());
    let b = g.mul_term(&mg.quotient_of(&l).expect("lcm"), &cf.clone());
    a.sub(&b)
}

/// Full reduction of `f` by a list of polynomials.
pub fn normal_form<F: Field>(
    f: &MultiPoly<F>,
    by: &[MultiPoly<F>],
    order: MonomialOrder,
) -> MultiPoly<F> {
    let heads: Vec<(Monomial, F)> = by
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let (m, c) = g.leading_term(order).unwrap();
            (m.clone(), c.inv().expect("leading coefficient is nonzero"))
        })
        .collect();
    let divisors: Vec<&MultiPoly<F>> = by.iter().filter(|g| !g.is_zero()).collect();
    let mut p = f.clone();
    let mut rem = MultiPoly::zero(f.nvars());
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match heads.iter().position(|(h, _)| h.divides(&m)) {
            Some(k) => {
                let q = heads[k].0.quotient_of(&m).unwrap();
                p = p.sub(&divisors[k].mul_term(&q, &c.mul(&heads[k].1)));
            }
            None => {
                let t = MultiPoly::term(m, c);
                p = p.sub(&t);
                rem = rem.add(&t);
            }
        }
    }
    rem
}

pub fn buchberger<F: Field>(
    nvars: usize,
    gens: &[MultiPoly<F>],
    order: MonomialOrder,
) -> Result<GroebnerBasis<F>> {
    buchberger_with_limits(nvars, gens, order, &GroebnerLimits::default())
}

pub fn buchberger_with_limits<F: Field>(
    nvars: usize,
    gens: &[MultiPoly<F>],
    order: MonomialOrder,
    limits: &GroebnerLimits,
) -> Result<GroebnerBasis<F>> {
    if nvars > limits.max_vars {
        return Err(Error::ResourceExhausted(format!(
            "{nvars} variables exceed the oracle limit of {}",
            limits.max_vars
        )));
    }
    if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::InvalidInput(format!(
            "generator in {} variables, expected {nvars}",
            g.nvars()
        )));
    }
    if let Some(d) = gens
        .iter()
        .filter_map(MultiPoly::total_degree)
        .find(|&d| d > limits.max_degree)
    {
        return Err(Error::ResourceExhausted(format!(
            "generator of degree {d} exceeds the oracle limit of {}",
            limits.max_degree
        )));
    }

    let mut basis: Vec<MultiPoly<F>> = Vec::new();
    for g in gens {
        let r = normal_form(g, &basis, order);
        if !r.is_zero() {
            basis.push(make_monic(&r, order));
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let mut processed = 0usize;
    while let Some((i, j)) = pairs.pop() {
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::ResourceExhausted(format!(
                "more than {} S-pairs",
                limits.max_pairs
            )));
        }
        let (li, lj) = (lm(&basis[i], order), lm(&basis[j], order));
        if li.is_coprime(lj) || chain_criterion(&basis, &pairs, i, j, order) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = normal_form(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        let k = basis.len();
        basis.push(make_monic(&r, order));
        if basis[k].is_constant() {
            break;
        }
        pairs.extend((0..k).map(|i| (i, k)));
    }

    let reduced = interreduce(basis, order);
    let gb = GroebnerBasis {
        nvars,
        order,
        generators: reduced,
    };
    if let Some(g) = gens.iter().find(|g| !gb.contains(g)) {
        return Err(Error::InternalConsistency(format!(
            "input generator {} does not reduce to zero modulo the computed basis",
            g.display(&crate::poly::level_names(nvars))
        )));
    }
    Ok(gb)
}

/// Skips the pair (i, j) when some third element's leading monomial divides
/// lcm(lm_i, lm_j) and both pairs with it have already been handled.
fn chain_criterion<F: Field>(
    basis: &[MultiPoly<F>],
    pending: &[(usize, usize)],
    i: usize,
    j: usize,
    order: MonomialOrder,
) -> bool {
    let l = lm(&basis[i], order).lcm(lm(&basis[j], order));
    let waiting = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        pending.contains(&key)
    };
    (0..basis.len()).any(|k| {
        k != i && k != j && lm(&basis[k], order).divides(&l) && !waiting(i, k) && !waiting(j, k)
    })
}

fn interreduce<F: Field>(mut basis: Vec<MultiPoly<F>>, order: MonomialOrder) -> Vec<MultiPoly<F>> {
    if let Some(one) = basis.iter().find(|g| g.is_constant()) {
        return vec![make_monic(one, order)];
    }
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<MultiPoly<F>> = Vec::new();
    basis.sort_by(|a, b| order.cmp(lm(a, order), lm(b, order)));
    for g in basis {
        if !keep.iter().any(|h| lm(h, order).divides(lm(&g, order))) {
            keep.push(g);
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<MultiPoly<F>> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, g)| g.clone())
            .collect();
        let (m, c) = keep[k].leading_term(order).unwrap();
        let head = MultiPoly::term(m.clone(), c.clone());
        let tail = normal_form(&keep[k].sub(&head), &others, order);
        out.push(make_monic(&head.add(&tail), order));
    }
    out.sort_by(|a, b| order.cmp(lm(b, order), lm(a, order)));
    out
}

/// Krull dimension of `K[t]/I`: the largest set of variables `U` such that
/// no leading monomial of the basis is a monomial in `U` alone.
pub fn ideal_dimension<F: Field>(gb: &GroebnerBasis<F>) -> Result<usize> {
    if gb.is_unit_ideal() {
        return Err(Error::EmptyVariety);
    }
    let n = gb.nvars;
    let supports: Vec<u32> = gb
        .leading_monomials()
        .iter()
        .map(|m| {
            m.exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u32, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    let best = (0u32..1 << n)
        .filter(|&u| supports.iter().all(|&s| s & !u != 0))
        .map(u32::count_ones)
        .max()
        .unwrap_or(0);
    Ok(best as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeField, Rational, RationalField};
    use crate::poly::parse_poly_over;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn qq(v: &[&str], polys: &[&str]) -> Vec<MultiPoly<Rational>> {
        polys
            .iter()
            .map(|s| parse_poly_over(s, &vars(v), &RationalField).unwrap())
            .collect()
    }

    #[test]
    fn two_variables_are_already_a_basis() {
        let gens = qq(&["x", "y"], &["x", "y"]);
        let gb = buchberger(2, &gens, MonomialOrder::GrevLex).unwrap();
        assert_eq!(gb.generators(), &gens[..]);
        assert!(gb.is_reduced_basis());
    }

    #[test]
    fn single_generator_over_f5() {
        let f5 = PrimeField::new(5).unwrap();
        let g = parse_poly_over::<Fp>("x*y - 2", &vars(&["x", "y"]), &f5).unwrap();
        let gb = buchberger(2, std::slice::from_ref(&g), MonomialOrder::GrevLex).unwrap();
        assert_eq!(gb.generators(), &[g]);
    }

    #[test]
    fn parabola_and_cube() {
        // lex with y > x keeps the input; grevlex picks x^2 as the head of y - x^2
        let gens = qq(&["y", "x"], &["y - x^2", "x^3"]);
        let lex = buchberger(2, &gens, MonomialOrder::Lex).unwrap();
        assert_eq!(lex.generators(), &gens[..]);

        let gens = qq(&["x", "y"], &["y - x^2", "x^3"]);
        let grevlex = buchberger(2, &gens, MonomialOrder::GrevLex).unwrap();
        let expected = qq(&["x", "y"], &["x^2 - y", "x*y", "y^2"]);
        assert_eq!(grevlex.generators().len(), 3);
        for e in &expected {
            assert!(grevlex.generators().contains(e), "missing {e:?}");
        }
        assert!(grevlex.is_reduced_basis());
        assert_eq!(grevlex.quotient_dimension(), Some(3));
    }

    #[test]
    fn dimensions() {
        let v = ["x", "y"];
        let hyp = buchberger(2, &qq(&v, &["x*y - 2"]), MonomialOrder::GrevLex).unwrap();
        assert_eq!(ideal_dimension(&hyp).unwrap(), 1);
        let zero = buchberger::<Rational>(3, &[], MonomialOrder::GrevLex).unwrap();
        assert_eq!(ideal_dimension(&zero).unwrap(), 3);
        let pt = buchberger(2, &qq(&v, &["x", "y"]), MonomialOrder::GrevLex).unwrap();
        assert_eq!(ideal_dimension(&pt).unwrap(), 0);
        let unit = buchberger(2, &qq(&v, &["x", "x + 1"]), MonomialOrder::GrevLex).unwrap();
        assert_eq!(ideal_dimension(&unit).unwrap_err().kind(), "empty-variety");
    }

    #[test]
    fn limits_fail_loudly() {
        let v = ["a", "b", "c", "d", "e"];
        let gens = qq(&v, &["a"]);
        let err = buchberger(5, &gens, MonomialOrder::GrevLex).unwrap_err();
        assert_eq!(err.kind(), "oracle-resource-exhausted");
        let err = buchberger(1, &qq(&["x"], &["x^7"]), MonomialOrder::GrevLex).unwrap_err();
        assert_eq!(err.kind(), "oracle-resource-exhausted");
        let tight = GroebnerLimits {
            max_pairs: 0,
            ..GroebnerLimits::default()
        };
        let err = buchberger_with_limits(
            2,
            &qq(&["x", "y"], &["x^2 - y", "x*y - 1"]),
            MonomialOrder::GrevLex,
            &tight,
        )
        .unwrap_err();
        assert_eq!(err.kind(), "oracle-resource-exhausted");
    }

    #[test]
    fn twisted_cubic_is_one_dimensional() {
        let v = ["x", "y", "z"];
        let gens = qq(&v, &["y - x^2", "z - x^3"]);
        for order in [
            MonomialOrder::Lex,
            MonomialOrder::GrLex,
            MonomialOrder::GrevLex,
        ] {
            let gb = buchberger(3, &gens, order).unwrap();
            assert!(gb.is_reduced_basis());
            assert_eq!(ideal_dimension(&gb).unwrap(), 1);
            assert!(gb.contains(&qq(&v, &["x*z - y^2"])[0]));
        }
    }
}
