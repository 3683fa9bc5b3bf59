mod common;

use std::sync::Arc;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use regulus::linalg::{rank, solvable};
use regulus::poly::{parse_poly_over, Monomial, MultiPoly};
use regulus::sample::{
    random_arithmetic_instance, random_fp_instance, random_fp_rational_instance,
    random_q_rational_instance, RationalInstance,
};
use regulus::{
    arithmetic_jacobian, check_geometric, generalized_jacobian, reduce_point, theorem_f_check,
    validate_point, Field, FieldMatrix, Fp, PresentedVariety, PrimeField, Rational, RationalField,
    ResidueTower, Ring, TowerElem, TriangularPoint,
};

/// `(∂f_i/∂t_j)` with every entry reduced into `tower`.
fn derivative_matrix<F: Field>(
    fs: &[MultiPoly<F>],
    tower: &Arc<ResidueTower<F>>,
) -> FieldMatrix<F> {
    let n = tower.nlevels();
    let rows = fs
        .iter()
        .map(|f| {
            (0..n)
                .map(|j| tower.reduce(&f.partial_derivative(j)).unwrap())
                .collect()
        })
        .collect();
    FieldMatrix::from_rows(tower, n, rows).unwrap()
}

/// Classical Jacobian evaluated at explicit coordinates in `tower`.
fn jacobian_at<F: Field>(
    fs: &[MultiPoly<F>],
    at: &[TowerElem<F>],
    tower: &Arc<ResidueTower<F>>,
) -> FieldMatrix<F> {
    let n = at.len();
    let rows = fs
        .iter()
        .map(|f| {
            (0..n)
                .map(|j| {
                    f.partial_derivative(j)
                        .eval(at, tower.zero(), |c| tower.from_base(c.clone()))
                })
                .collect()
        })
        .collect();
    FieldMatrix::from_rows(tower, n, rows).unwrap()
}

fn to_fp(f: &MultiPoly<BigInt>, fp: PrimeField) -> MultiPoly<Fp> {
    f.map_coeffs(|c| Fp::from_int(&fp, c))
}

fn permute_vars<R: Ring>(f: &MultiPoly<R>, perm: &[usize]) -> MultiPoly<R> {
    let n = f.nvars();
    MultiPoly::from_terms(
        n,
        f.terms().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &k) in perm.iter().enumerate() {
                e[k] = m.exps()[i];
            }
            (Monomial::new(e), c.clone())
        }),
    )
}

fn permute_cols<F: Field>(m: &FieldMatrix<F>, perm: &[usize]) -> FieldMatrix<F> {
    let rows = m
        .to_rows()
        .into_iter()
        .map(|row| {
            let mut out = row.clone();
            for (i, &k) in perm.iter().enumerate() {
                out[k] = row[i].clone();
            }
            out
        })
        .collect();
    FieldMatrix::from_rows(m.tower(), m.cols(), rows).unwrap()
}

fn coeff_rows<F: Field>(m: &FieldMatrix<F>) -> Vec<Vec<Vec<F>>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|e| e.coeffs().to_vec()).collect())
        .collect()
}

fn classical_agrees<F: Field>(inst: &RationalInstance<F>) {
    let tower = validate_point(&inst.variety, &inst.point).unwrap();
    let at: Vec<_> = inst
        .values
        .iter()
        .map(|a| tower.from_base(a.clone()))
        .collect();
    let j = generalized_jacobian(&inst.variety, &inst.point).unwrap();
    assert_eq!(j, jacobian_at(inst.variety.relations(), &at, &tower));
}

#[test]
fn quartic_curve_fiber_points_share_the_rank() {
    let v = vars(&["x", "y"]);
    let qq = |s: &str| parse_poly_over::<Rational>(s, &v, &RationalField).unwrap();
    let x = PresentedVariety::new(v.clone(), vec![qq("y^2 - x^3 + x")]).unwrap();
    let pt = TriangularPoint::new(vec![qq("x^2 - 2"), qq("y^2 - x")]).unwrap();
    let report = check_geometric(&x, &pt, None).unwrap();
    assert_eq!(report.rank, 1);
    assert!(report.regular);

    // over Q(2^(1/4)) the point splits off (b², b) and (b², −b), b = 2^(1/4)
    let t = &report.residue_field;
    let b = t.generator(1);
    let a = b.mul(&b);
    assert_eq!(a, t.generator(0));
    for at in [vec![a.clone(), b.clone()], vec![a.clone(), b.neg()]] {
        let j = jacobian_at(x.relations(), &at, t);
        let minus_five = t.from_base(q(-5, 1));
        assert_eq!(j.to_rows(), vec![vec![minus_five, at[1].mul_u64(2)]]);
        assert_eq!(rank(&j).unwrap(), 1);
        assert_eq!(
            x.nvars() - rank(&j).unwrap() == report.local_dimension,
            report.regular
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jacobian_factors_through_generator_derivatives(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = [2u64, 3, 5][r.random_range(0..3)];
        let n = r.random_range(1..=3);
        let inst = { let k = r.random_range(0..=2); random_fp_instance(&mut r, p, n, k) };
        let j = generalized_jacobian(&inst.variety, &inst.point).unwrap();
        let t = j.tower().clone();
        let df = derivative_matrix(inst.variety.relations(), &t);
        let dg = derivative_matrix(inst.point.generators(), &t);
        prop_assert_eq!(j.mul(&dg).unwrap(), df);

        let inst = { let k = r.random_range(0..=2); random_arithmetic_instance(&mut r, p, n, k) };
        let fp = PrimeField::new(p).unwrap();
        let (j, _) = arithmetic_jacobian(&inst.variety, &inst.point).unwrap();
        let t = j.tower().clone();
        let fs: Vec<_> = inst.variety.relations().iter().map(|f| to_fp(f, fp)).collect();
        let gs: Vec<_> = inst.point.generators().iter().map(|g| to_fp(g, fp)).collect();
        prop_assert_eq!(j.mul(&derivative_matrix(&gs, &t)).unwrap(), derivative_matrix(&fs, &t));
    }

    #[test]
    fn presentation_choices_do_not_matter(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = [2u64, 3, 5][r.random_range(0..3)];
        let n = r.random_range(1..=3);
        let inst = { let k = r.random_range(1..=2); random_fp_instance(&mut r, p, n, k) };
        let j = generalized_jacobian(&inst.variety, &inst.point).unwrap();

        // reorder relations: rows follow
        let mut order: Vec<usize> = (0..j.rows()).collect();
        order.shuffle(&mut r);
        let rels: Vec<_> = order.iter().map(|&i| inst.variety.relations()[i].clone()).collect();
        let shuffled = PresentedVariety::new(inst.variety.vars().to_vec(), rels).unwrap();
        let js = generalized_jacobian(&shuffled, &inst.point).unwrap();
        for (k, &i) in order.iter().enumerate() {
            prop_assert_eq!(js.row(k), j.row(i));
        }

        // rename variables: same coordinates
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let renamed = PresentedVariety::new(names, inst.variety.relations().to_vec()).unwrap();
        let jr = generalized_jacobian(&renamed, &inst.point).unwrap();
        prop_assert_eq!(coeff_rows(&jr), coeff_rows(&j));
        prop_assert_eq!(rank(&jr).unwrap(), rank(&j).unwrap());
    }

    #[test]
    fn rational_points_permute_columns(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.random_range(1..=3);
        let inst = {
            let (p, k) = ([2u64, 3, 5, 7][r.random_range(0..4)], r.random_range(1..=2));
            random_fp_rational_instance(&mut r, p, n, k)
        };
        let j = generalized_jacobian(&inst.variety, &inst.point).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut r);
        let rels = inst.variety.relations().iter().map(|f| permute_vars(f, &perm)).collect();
        let gens = inst.point.generators().iter().map(|g| permute_vars(g, &perm));
        let mut gens: Vec<_> = gens.collect();
        // generators stay sorted by their variable
        gens.sort_by_key(|g| (0..n).find(|&k| g.involves(k)).unwrap());
        let xp = PresentedVariety::new(inst.variety.vars().to_vec(), rels).unwrap();
        let pp = TriangularPoint::new(gens).unwrap();
        let jp = generalized_jacobian(&xp, &pp).unwrap();
        prop_assert_eq!(coeff_rows(&jp), coeff_rows(&permute_cols(&j, &perm)));
    }

    #[test]
    fn frobenius_conjugates_share_the_rank(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = [2u64, 3, 5][r.random_range(0..3)];
        let n = r.random_range(1..=3);
        let inst = { let k = r.random_range(1..=2); random_fp_instance(&mut r, p, n, k) };
        let j = generalized_jacobian(&inst.variety, &inst.point).unwrap();
        let t = j.tower().clone();
        let rk = rank(&j).unwrap();
        let mut at: Vec<_> = (0..n).map(|k| t.generator(k)).collect();
        // each Frobenius conjugate of the point is a κ-rational point of the same variety
        for _ in 0..t.degree() {
            let classical = jacobian_at(inst.variety.relations(), &at, &t);
            prop_assert_eq!(rank(&classical).unwrap(), rk);
            at = at.iter().map(|a| a.pow(p)).collect();
        }
        prop_assert_eq!(at, (0..n).map(|k| t.generator(k)).collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rational_points_give_the_classical_jacobian(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.random_range(1..=3);
        let k = r.random_range(1..=2);
        classical_agrees(&random_q_rational_instance(&mut r, n, k));
        let p = [2u64, 3, 5, 7][r.random_range(0..4)];
        classical_agrees(&random_fp_rational_instance(&mut r, p, n, k));
    }

    #[test]
    fn regularity_descends_to_the_special_fiber(seed in any::<u64>(), ramified in any::<bool>()) {
        let mut r = rng(seed);
        let p = [2u64, 3, 5][r.random_range(0..3)];
        let n = r.random_range(1..=3);
        let inst = { let k = r.random_range(0..=2); random_arithmetic_instance(&mut r, p, n, k) };
        let (j, extra) = arithmetic_jacobian(&inst.variety, &inst.point).unwrap();
        let rk_tilde = rank(&j.augment(&extra).unwrap()).unwrap();
        // make the point regular upstairs by taking its cotangent dimension as the dimension
        let dim = n + 1 - rk_tilde;
        let fiber_point = reduce_point(&inst.point).unwrap();
        if dim == 0 {
            // the local ring is a field; there is no fiber dimension to compare against
            let out = theorem_f_check(&inst.variety, p, &[fiber_point], true, Some(0));
            prop_assert_eq!(out.unwrap_err().kind(), "invalid-input");
            return Ok(());
        }
        let report = theorem_f_check(&inst.variety, p, &[fiber_point.clone()], ramified, Some(dim)).unwrap();
        let v = &report.points[0];
        prop_assert!(v.upstairs.regular);

        // the fiber's own Jacobian is the arithmetic J
        let fiber = inst.variety.special_fiber(p).unwrap();
        let jk = generalized_jacobian(&fiber, &fiber_point).unwrap();
        prop_assert_eq!(&jk, &j);
        let fiber_regular = rank(&jk).unwrap() == n - (dim - 1);
        if ramified {
            prop_assert_eq!(v.regular_after_base_change, fiber_regular);
            prop_assert_eq!(v.special_fiber.as_ref().unwrap().regular, fiber_regular);
            prop_assert_eq!(solvable(&j, &extra).unwrap(), fiber_regular);
        } else {
            prop_assert!(v.regular_after_base_change);
        }
    }
}
