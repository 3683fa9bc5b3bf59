//! Jacobian criteria for regularity at a closed point.
//!
//! Dividing each relation by the triangular generators gives
//! `f_i = Σ_j h_ij g_j + r_i`. Over a field `r_i = 0` and the residues
//! `h̄_ij ∈ κ_x` form the generalized Jacobian `J_x`, the unique matrix with
//! `(∂f/∂t)(x) = J_x · (∂g/∂t)(x)`. The point is regular exactly when
//! `rank J_x = n − dim O_{X,x}`.
//!
//! Over `ℤ_(p)` the remainders are divisible by `p` and the column
//! `(r_i/p)(x)` is appended to `J_x`; the point is regular exactly when the
//! augmented matrix has rank `n + 1 − dim O_{X,x}`. Whether regularity
//! survives a ramified base change depends only on whether that extra column
//! lies in the column space of `J_x`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, PrimeField, Ring};
use crate::linalg::{self, FieldMatrix};
use crate::oracle;
use crate::poly::{
    arithmetic_membership_certificate, triangular_divide, MonomialOrder, MultiPoly, TriangularPoint,
};
use crate::tower::{ResidueTower, TowerElem};

const GLOBAL_DIMENSION_CAVEAT: &str =
    "dimension is the global dimension of the variety; it equals the local \
     dimension only if the point lies on a component of maximal dimension (set `dim` to override)";

/// `Spec R[t_1,…,t_n]/(f_1,…,f_r)`. With `R = BigInt` this is an arithmetic
/// variety over `ℤ_(p)`; with a field it is a variety over that field.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentedVariety<R> {
    vars: Vec<String>,
    relations: Vec<MultiPoly<R>>,
}

impl<R: Ring> PresentedVariety<R> {
    pub fn new(vars: Vec<String>, relations: Vec<MultiPoly<R>>) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidInput(
                "a variety needs at least one variable".into(),
            ));
        }
        if let Some(i) = relations.iter().position(|f| f.nvars() != vars.len()) {
            return Err(Error::InvalidInput(format!(
                "relation {} has {} variables, expected {}",
                i + 1,
                relations[i].nvars(),
                vars.len()
            )));
        }
        Ok(PresentedVariety { vars, relations })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn relations(&self) -> &[MultiPoly<R>] {
        &self.relations
    }
}

impl PresentedVariety<BigInt> {
    /// The special fiber `X_k = X ×_ℤ 𝔽_p`.
    pub fn special_fiber(&self, p: u64) -> Result<PresentedVariety<Fp>> {
        let fp = PrimeField::new(p)?;
        let relations = self
            .relations
            .iter()
            .map(|f| f.map_coeffs(|c| fp.from_bigint(c)))
            .collect();
        PresentedVariety::new(self.vars.clone(), relations)
    }
}

/// Where the dimension compared against the cotangent dimension came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimensionProvenance {
    UserSupplied,
    OracleGlobalDimension,
    /// Special fiber: one less than the dimension upstairs.
    FiberOfBase,
}

impl DimensionProvenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            DimensionProvenance::UserSupplied => "user-supplied",
            DimensionProvenance::OracleGlobalDimension => "oracle-global-dimension",
            DimensionProvenance::FiberOfBase => "base-dimension-minus-one",
        }
    }
}

impl fmt::Display for DimensionProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct RegularityReport<F: Field> {
    pub residue_field: Arc<ResidueTower<F>>,
    /// `J_x`, one row per relation.
    pub jacobian: FieldMatrix<F>,
    /// `(f_i/p)(x)` in the arithmetic case.
    pub extra_column: Option<Vec<TowerElem<F>>>,
    /// Rank of `J_x`, or of `(J_x | extra)` in the arithmetic case.
    pub rank: usize,
    /// `dim_κ m/m²`, i.e. `n − rank` or `n + 1 − rank`.
    pub cotangent_dimension: usize,
    pub local_dimension: usize,
    pub dimension_provenance: DimensionProvenance,
    pub regular: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct BaseChangeVerdict<F: Field> {
    pub ramified: bool,
    pub point_regular_upstairs: bool,
    /// Whether `J_x v = (f_i/p)(x)` is solvable; only asked when ramified.
    pub system_solvable: Option<bool>,
    pub fiber_regular: bool,
    pub witness: Option<Vec<TowerElem<F>>>,
}

/// Verdict at one supplied point of the special fiber.
#[derive(Clone, Debug)]
pub struct FiberPointVerdict {
    pub point: TriangularPoint<Fp>,
    /// Regularity of `X` at the lifted point `(g_1, …, g_n, p)`.
    pub upstairs: RegularityReport<Fp>,
    pub base_change: BaseChangeVerdict<Fp>,
    /// `X_k` at the point; computed only in the ramified case.
    pub special_fiber: Option<RegularityReport<Fp>>,
    pub regular_after_base_change: bool,
}

#[derive(Clone, Debug)]
pub struct TheoremFReport {
    pub prime: u64,
    pub ramified: bool,
    pub points: Vec<FiberPointVerdict>,
    /// Whether the base change is regular over every supplied point.
    pub regular_over_locus: bool,
}

fn point_desc<F: Field>(point: &TriangularPoint<F>) -> Result<F::Desc> {
    point
        .generators()
        .first()
        .and_then(|g| g.terms().next())
        .map(|(_, c)| c.desc())
        .ok_or_else(|| Error::InvalidPoint("a point needs at least one generator".into()))
}

/// `(∂p_i/∂t_j)(x)` reduced into the residue field.
fn jacobian_at<R: Ring, F: Field>(
    polys: &[MultiPoly<R>],
    tower: &Arc<ResidueTower<F>>,
    embed: &impl Fn(&R) -> F,
) -> Result<FieldMatrix<F>> {
    let n = tower.nlevels();
    let rows = polys
        .iter()
        .map(|f| {
            (0..n)
                .map(|j| tower.reduce(&f.partial_derivative(j).map_coeffs(embed)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FieldMatrix::from_rows(tower, n, rows)
}

/// Builds `κ_x` and checks the point is usable: the ideal is (probably)
/// maximal, and the generator Jacobian is invertible. Relation membership
/// is checked by the callers, which know the base ring.
fn build_residue_field<R: Ring, F: Field>(
    vars: &[String],
    point: &TriangularPoint<R>,
    reduced: &TriangularPoint<F>,
    desc: F::Desc,
    embed: &impl Fn(&R) -> F,
) -> Result<(Arc<ResidueTower<F>>, FieldMatrix<F>)> {
    let tower = ResidueTower::from_point(desc, vars.to_vec(), reduced)?;
    tower.probe_maximality()?;
    let gens = jacobian_at(point.generators(), &tower, embed)?;
    let rank = gens.rank()?;
    if rank < point.nvars() {
        return Err(Error::GeneratorsNotIndependent {
            rank,
            expected: point.nvars(),
        });
    }
    Ok((tower, gens))
}

fn check_counts<R: Ring, S: Ring>(
    x: &PresentedVariety<R>,
    point: &TriangularPoint<S>,
) -> Result<()> {
    if point.nvars() != x.nvars() {
        return Err(Error::InvalidPoint(format!(
            "{} generators for {} variables",
            point.nvars(),
            x.nvars()
        )));
    }
    Ok(())
}

struct Validated<F: Field> {
    tower: Arc<ResidueTower<F>>,
    generator_jacobian: FieldMatrix<F>,
}

fn validate_field<F: Field>(
    x: &PresentedVariety<F>,
    point: &TriangularPoint<F>,
) -> Result<Validated<F>> {
    check_counts(x, point)?;
    if point.prime().is_some() {
        return Err(Error::InvalidPoint(
            "a point of a variety over a field carries no prime".into(),
        ));
    }
    let desc = point_desc(point)?;
    let (tower, generator_jacobian) = build_residue_field(&x.vars, point, point, desc, &F::clone)?;
    for (i, f) in x.relations.iter().enumerate() {
        let rem = triangular_divide(f, point).remainder;
        if !rem.is_zero() {
            return Err(Error::PointNotOnVariety {
                relation: i + 1,
                remainder: rem.display(&x.vars).to_string(),
            });
        }
    }
    Ok(Validated {
        tower,
        generator_jacobian,
    })
}

/// Reduces the generators of an arithmetic point modulo its prime.
pub fn reduce_point(point: &TriangularPoint<BigInt>) -> Result<TriangularPoint<Fp>> {
    let p = point
        .prime()
        .ok_or_else(|| Error::InvalidPoint("an arithmetic point needs a prime".into()))?;
    let fp = PrimeField::new(p)?;
    TriangularPoint::new(
        point
            .generators()
            .iter()
            .map(|g| g.map_coeffs(|c| fp.from_bigint(c)))
            .collect(),
    )
}

/// Lifts a point of the special fiber to `(g_1, …, g_n, p)` using
/// representatives in `[0, p)`.
pub fn lift_point(point: &TriangularPoint<Fp>) -> Result<TriangularPoint<BigInt>> {
    let p = point_desc(point)?.modulus();
    TriangularPoint::with_prime(
        point
            .generators()
            .iter()
            .map(|g| g.map_coeffs(|c| BigInt::from(c.value())))
            .collect(),
        p,
    )
}

fn validate_arith(
    x: &PresentedVariety<BigInt>,
    point: &TriangularPoint<BigInt>,
) -> Result<Validated<Fp>> {
    check_counts(x, point)?;
    let reduced = reduce_point(point)?;
    let fp = point_desc(&reduced)?;
    let embed = move |c: &BigInt| fp.from_bigint(c);
    let (tower, generator_jacobian) = build_residue_field(&x.vars, point, &reduced, fp, &embed)?;
    for (i, f) in x.relations.iter().enumerate() {
        if !arithmetic_membership_certificate(f, point) {
            let rem = triangular_divide(f, point).remainder;
            return Err(Error::PointNotOnVariety {
                relation: i + 1,
                remainder: rem.display(&x.vars).to_string(),
            });
        }
    }
    Ok(Validated {
        tower,
        generator_jacobian,
    })
}

/// Checks that `point` is a usable closed point of `x` and returns `κ_x`.
pub fn validate_point<F: Field>(
    x: &PresentedVariety<F>,
    point: &TriangularPoint<F>,
) -> Result<Arc<ResidueTower<F>>> {
    Ok(validate_field(x, point)?.tower)
}

/// Arithmetic counterpart of [`validate_point`]; `κ_x` is an extension of `𝔽_p`.
pub fn validate_arithmetic_point(
    x: &PresentedVariety<BigInt>,
    point: &TriangularPoint<BigInt>,
) -> Result<Arc<ResidueTower<Fp>>> {
    Ok(validate_arith(x, point)?.tower)
}

/// `J_x` from the quotients of triangular division, with the defining
/// identity `(∂f/∂t)(x) = J_x·(∂g/∂t)(x)` re-verified. Also returns the
/// remainders.
fn decompose<R: Ring, F: Field>(
    x: &PresentedVariety<R>,
    point: &TriangularPoint<R>,
    v: &Validated<F>,
    embed: &impl Fn(&R) -> F,
) -> Result<(FieldMatrix<F>, Vec<MultiPoly<R>>)> {
    let n = x.nvars();
    let mut rows = Vec::with_capacity(x.relations.len());
    let mut remainders = Vec::with_capacity(x.relations.len());
    for f in &x.relations {
        let div = triangular_divide(f, point);
        let row = div
            .quotients
            .iter()
            .map(|h| v.tower.reduce(&h.map_coeffs(embed)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        remainders.push(div.remainder);
    }
    let jac = FieldMatrix::from_rows(&v.tower, n, rows)?;
    let classical = jacobian_at(&x.relations, &v.tower, embed)?;
    if jac.mul(&v.generator_jacobian)? != classical {
        return Err(Error::InternalConsistency(
            "generalized Jacobian does not satisfy (df/dt)(x) = J·(dg/dt)(x)".into(),
        ));
    }
    Ok((jac, remainders))
}

/// The generalized Jacobian `J_x = (h̄_ij)` over `κ_x`.
pub fn generalized_jacobian<F: Field>(
    x: &PresentedVariety<F>,
    point: &TriangularPoint<F>,
) -> Result<FieldMatrix<F>> {
    let v = validate_field(x, point)?;
    Ok(decompose(x, point, &v, &F::clone)?.0)
}

/// `J_x` and the extra column `(r_i/p)(x)` of an arithmetic point.
pub fn arithmetic_jacobian(
    x: &PresentedVariety<BigInt>,
    point: &TriangularPoint<BigInt>,
) -> Result<(FieldMatrix<Fp>, Vec<TowerElem<Fp>>)> {
    let v = validate_arith(x, point)?;
    arith_parts(x, point, &v)
}

fn arith_parts(
    x: &PresentedVariety<BigInt>,
    point: &TriangularPoint<BigInt>,
    v: &Validated<Fp>,
) -> Result<(FieldMatrix<Fp>, Vec<TowerElem<Fp>>)> {
    let fp = *v.tower.base();
    let p = BigInt::from(fp.modulus());
    let embed = move |c: &BigInt| fp.from_bigint(c);
    let (jac, remainders) = decompose(x, point, v, &embed)?;
    let extra = remainders
        .iter()
        .map(|r| v.tower.reduce(&r.map_coeffs(|c| fp.from_bigint(&(c / &p)))))
        .collect::<Result<Vec<_>>>()?;
    Ok((jac, extra))
}

fn global_dimension<F: Field>(nvars: usize, relations: &[MultiPoly<F>]) -> Result<usize> {
    let gb = oracle::buchberger(nvars, relations, MonomialOrder::GrevLex)?;
    oracle::ideal_dimension(&gb)
}

fn settle_dimension(
    cotangent: usize,
    dim_override: Option<usize>,
    default: impl FnOnce() -> Result<usize>,
    warnings: &mut Vec<String>,
) -> Result<(usize, DimensionProvenance)> {
    let (dim, provenance) = match dim_override {
        Some(d) => (d, DimensionProvenance::UserSupplied),
        None => {
            warnings.push(GLOBAL_DIMENSION_CAVEAT.to_string());
            (default()?, DimensionProvenance::OracleGlobalDimension)
        }
    };
    if cotangent < dim {
        return Err(Error::DimensionMismatch {
            cotangent,
            dimension: dim,
            provenance: provenance.as_str().to_string(),
        });
    }
    Ok((dim, provenance))
}

/// Regularity of a variety over a field at a closed point:
/// regular iff `rank J_x = n − dim`.
pub fn check_geometric<F: Field>(
    x: &PresentedVariety<F>,
    point: &TriangularPoint<F>,
    dim_override: Option<usize>,
) -> Result<RegularityReport<F>> {
    let v = validate_field(x, point)?;
    let (jacobian, _) = decompose(x, point, &v, &F::clone)?;
    let rank = jacobian.rank()?;
    let cotangent = x.nvars() - rank;
    let mut warnings = Vec::new();
    let (dim, provenance) = settle_dimension(
        cotangent,
        dim_override,
        || global_dimension(x.nvars(), &x.relations),
        &mut warnings,
    )?;
    Ok(RegularityReport {
        residue_field: v.tower,
        jacobian,
        extra_column: None,
        rank,
        cotangent_dimension: cotangent,
        local_dimension: dim,
        dimension_provenance: provenance,
        regular: cotangent == dim,
        warnings,
    })
}

/// Regularity of an arithmetic variety at `(g_1, …, g_n, p)`:
/// regular iff `rank (J_x | extra) = n + 1 − dim`.
///
/// The default dimension is one more than the dimension of the special
/// fiber, which assumes the variety is flat over `ℤ_(p)`.
pub fn check_arithmetic(
    x: &PresentedVariety<BigInt>,
    point: &TriangularPoint<BigInt>,
    dim_override: Option<usize>,
) -> Result<RegularityReport<Fp>> {
    let v = validate_arith(x, point)?;
    let (jacobian, extra) = arith_parts(x, point, &v)?;
    let rank = jacobian.augment(&extra)?.rank()?;
    let cotangent = x.nvars() + 1 - rank;
    let mut warnings = Vec::new();
    let p = v.tower.base().modulus();
    let (dim, provenance) = settle_dimension(
        cotangent,
        dim_override,
        || {
            let fiber = x.special_fiber(p)?;
            Ok(1 + global_dimension(x.nvars(), &fiber.relations)?)
        },
        &mut warnings,
    )?;
    Ok(RegularityReport {
        residue_field: v.tower,
        jacobian,
        extra_column: Some(extra),
        rank,
        cotangent_dimension: cotangent,
        local_dimension: dim,
        dimension_provenance: provenance,
        regular: cotangent == dim,
        warnings,
    })
}

/// Base-change verdict from an arithmetic report. The point must be regular.
pub fn base_change_from_report(
    report: &RegularityReport<Fp>,
    ramified: bool,
) -> Result<BaseChangeVerdict<Fp>> {
    if !report.regular {
        return Err(Error::NotRegularUpstairs);
    }
    if !ramified {
        return Ok(BaseChangeVerdict {
            ramified,
            point_regular_upstairs: true,
            system_solvable: None,
            fiber_regular: true,
            witness: None,
        });
    }
    let extra = report
        .extra_column
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("base change needs an arithmetic report".into()))?;
    let witness = linalg::solve(&report.jacobian, extra)?;
    Ok(BaseChangeVerdict {
        ramified,
        point_regular_upstairs: true,
        system_solvable: Some(witness.is_some()),
        fiber_regular: witness.is_some(),
        witness,
    })
}

/// Whether a regular point stays regular after base change to an
/// unramified or ramified extension of `ℤ_(p)`. The answer does not depend
/// on which extension.
pub fn base_change_verdict(
    x: &PresentedVariety<BigInt>,
    point: &TriangularPoint<BigInt>,
    ramified: bool,
    dim_override: Option<usize>,
) -> Result<BaseChangeVerdict<Fp>> {
    base_change_from_report(&check_arithmetic(x, point, dim_override)?, ramified)
}

/// Audits a ramified base change over `p` at the supplied points of the
/// special fiber: the base change is regular over `x̄` iff `X_k` is regular
/// at `x̄`. Each fiber verdict is cross-checked against
/// [`base_change_verdict`] at the lifted point.
///
/// `dim_override` is the dimension of `X` at the lifted points; the fiber
/// is taken to have one dimension less.
pub fn theorem_f_check(
    x: &PresentedVariety<BigInt>,
    p: u64,
    fiber_points: &[TriangularPoint<Fp>],
    ramified: bool,
    dim_override: Option<usize>,
) -> Result<TheoremFReport> {
    let fiber = x.special_fiber(p)?;
    let mut points = Vec::with_capacity(fiber_points.len());
    for fp in fiber_points {
        if point_desc(fp)?.modulus() != p {
            return Err(Error::InvalidPoint(format!(
                "fiber point is not defined over GF({p})"
            )));
        }
        let lifted = lift_point(fp)?;
        let upstairs = check_arithmetic(x, &lifted, dim_override)?;
        let base_change = base_change_from_report(&upstairs, ramified)?;
        let special_fiber = if ramified {
            let fiber_dim = upstairs.local_dimension.checked_sub(1).ok_or_else(|| {
                Error::InvalidInput(
                    "a variety over Z_(p) with a point over p has dimension at least 1".into(),
                )
            })?;
            let mut report = check_geometric(&fiber, fp, Some(fiber_dim))?;
            report.dimension_provenance = DimensionProvenance::FiberOfBase;
            if report.regular != base_change.fiber_regular {
                return Err(Error::InternalConsistency(format!(
                    "special fiber is {} but the base-change system says {}",
                    if report.regular {
                        "regular"
                    } else {
                        "singular"
                    },
                    if base_change.fiber_regular {
                        "regular"
                    } else {
                        "singular"
                    },
                )));
            }
            Some(report)
        } else {
            None
        };
        points.push(FiberPointVerdict {
            point: fp.clone(),
            regular_after_base_change: base_change.fiber_regular,
            upstairs,
            base_change,
            special_fiber,
        });
    }
    Ok(TheoremFReport {
        prime: p,
        ramified,
        regular_over_locus: points.iter().all(|v| v.regular_after_base_change),
        points,
    })
}
