//! Checkers for numerical-radius and operator-norm inequalities.
//!
//! Every checker evaluates both sides of its inequality as [`Interval`]s
//! and compares them with a three-state [`Verdict`]: a radius is only ever
//! known as a bracket, so "the brackets overlap" must stay distinguishable
//! from "the inequality fails". Three-term chains `L <= M <= R` produce two
//! reports, `.left` and `.right`, that share the middle interval.
//!
//! Class hypotheses are enforced with [`classify`] at the default class
//! tolerance; an operand outside its class is an error, never a verdict.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matcore::{
    abs_value, classify, default_class_tol, eigen_pad, op_norm, psd_sqrt, vec_norm, ClassSet, PAD_HALF_WIDTH,
    ComplexMatrix, Interval, OperatorClass, C64,
};
use crate::numrange::numerical_radius;

/// Relative verdict tolerance: `tau = 1e-8 * max(1, |lhs.hi|, |rhs.hi|)`.
pub const DEFAULT_VERDICT_REL_TOL: f64 = 1e-8;
/// Relative radius tolerance: brackets are refined to `1e-8 * max(1, ||M||_F)`.
pub const DEFAULT_RADIUS_REL_TOL: f64 = 1e-8;
/// How far a pointwise check lets `||x||` drift from 1.
pub const UNIT_VECTOR_TOL: f64 = 1e-12;
/// Relative bound for the `T*T + TT* = 2(A^2 + B^2)` identity check.
pub const IDENTITY_REL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InequalityId {
    /// `||A||/2 <= w(A) <= ||A||`
    NormRadiusSandwich,
    /// `|a + b| <= sqrt(2) |a + ib|` for real `a`, `b`
    ScalarRotation,
    /// `||A*A + AA*||/4 <= w(A)^2 <= ||A*A + AA*||/2`
    Kittaneh,
    /// `|<Ax,x>| <= sqrt(<|A|x,x> <|A*|x,x>)`
    MixedSchwarz,
    /// `<Ax,x>^2 <= <A^2 x,x>` for self-adjoint `A`
    SaJensen,
    /// `||A + iB|| <= ||A + B||` for positive `A`, `B`
    NormRotationPositive,
    /// `||A^2 + B^2||/2 <= w(A + iB)^2 <= ||A^2 + B^2||` for self-adjoint `A`, `B`
    CartesianSandwich,
    /// `w(A + B) <= w((|A| + |B|) + i(|A*| + |B*|)) / sqrt(2)`
    SumRotationV1,
    /// `w(A)^2 <= w(|A| + i|A*|)^2 / 2 <= ||A*A + AA*||/2`
    RadiusKittanehRefine,
    /// `w(A + B) <= w((|A| + |A*|) + i(|B| + |B*|)) / sqrt(2)`
    SumRotationV2,
    /// `w(A + B) <= sqrt(2) w(|A| + i|B|)` for normal `A`, `B`
    NormalSumRotation,
    /// `||Re T + Im T|| / sqrt(2) <= w(T)` and `||T|| / sqrt(2) <= w(T)`
    AdNormLower,
    /// `w(ST) <= c w(S) w(T)` with `c` chosen from the operand classes
    Submult,
    /// `||T*T + TT*||/4 <= w(A^2 + iB^2)/sqrt(2) <= w(T)^2`
    ReverseKittanehRefine,
    /// `||A + B|| <= sqrt(w(A + iB)^2 + 2||A|| ||B||) <= ||A|| + ||B||`
    TriangleRefine,
}

/// What a checker consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    Scalars,
    Single,
    Pair,
    /// One matrix plus a batch of unit vectors.
    Pointwise,
}

impl InequalityId {
    pub const ALL: [InequalityId; 15] = [
        InequalityId::NormRadiusSandwich,
        InequalityId::ScalarRotation,
        InequalityId::Kittaneh,
        InequalityId::MixedSchwarz,
        InequalityId::SaJensen,
        InequalityId::NormRotationPositive,
        InequalityId::CartesianSandwich,
        InequalityId::SumRotationV1,
        InequalityId::RadiusKittanehRefine,
        InequalityId::SumRotationV2,
        InequalityId::NormalSumRotation,
        InequalityId::AdNormLower,
        InequalityId::Submult,
        InequalityId::ReverseKittanehRefine,
        InequalityId::TriangleRefine,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::NormRadiusSandwich => "NORM_RADIUS_SANDWICH",
            InequalityId::ScalarRotation => "SCALAR_ROTATION",
            InequalityId::Kittaneh => "KITTANEH",
            InequalityId::MixedSchwarz => "MIXED_SCHWARZ",
            InequalityId::SaJensen => "SA_JENSEN",
            InequalityId::NormRotationPositive => "NORM_ROTATION_POSITIVE",
            InequalityId::CartesianSandwich => "CARTESIAN_SANDWICH",
            InequalityId::SumRotationV1 => "SUM_ROTATION_V1",
            InequalityId::RadiusKittanehRefine => "RADIUS_KITTANEH_REFINE",
            InequalityId::SumRotationV2 => "SUM_ROTATION_V2",
            InequalityId::NormalSumRotation => "NORMAL_SUM_ROTATION",
            InequalityId::AdNormLower => "AD_NORM_LOWER",
            InequalityId::Submult => "SUBMULT",
            InequalityId::ReverseKittanehRefine => "REVERSE_KITTANEH_REFINE",
            InequalityId::TriangleRefine => "TRIANGLE_REFINE",
        }
    }

    pub fn arity(self) -> Arity {
        use InequalityId::*;
        match self {
            ScalarRotation => Arity::Scalars,
            MixedSchwarz | SaJensen => Arity::Pointwise,
            NormRotationPositive | CartesianSandwich | SumRotationV1 | SumRotationV2
            | NormalSumRotation | Submult | TriangleRefine => Arity::Pair,
            NormRadiusSandwich | Kittaneh | RadiusKittanehRefine | AdNormLower
            | ReverseKittanehRefine => Arity::Single,
        }
    }

    /// Generator classes whose samples satisfy the checker's hypotheses.
    pub fn admissible_classes(self) -> &'static [OperatorClass] {
        use InequalityId::*;
        use OperatorClass as C;
        match self {
            ScalarRotation => &[C::General],
            SaJensen | CartesianSandwich | TriangleRefine => &[C::SelfAdjoint, C::Positive],
            NormRotationPositive => &[C::Positive],
            NormalSumRotation => &[C::Normal, C::SelfAdjoint, C::Positive, C::Unitary],
            AdNormLower => &[C::AccretiveDissipative],
            _ => &OperatorClass::ALL,
        }
    }

    /// Classes a campaign samples when the configuration names none.
    pub fn default_classes(self) -> &'static [OperatorClass] {
        use InequalityId::*;
        use OperatorClass as C;
        match self {
            SaJensen | CartesianSandwich | TriangleRefine => &[C::SelfAdjoint],
            NormRotationPositive => &[C::Positive],
            NormalSumRotation => &[C::Normal, C::SelfAdjoint],
            AdNormLower => &[C::AccretiveDissipative],
            Submult => &[C::AccretiveDissipative, C::Normal, C::General],
            _ => &[C::General],
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        InequalityId::ALL
            .into_iter()
            .find(|id| id.as_str() == norm)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown inequality id `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Confirmed,
    Violated,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::Violated => "VIOLATED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `rel * max(1, |lhs.hi|, |rhs.hi|)`.
pub fn verdict_tolerance(lhs: Interval, rhs: Interval, rel: f64) -> f64 {
    rel * 1f64.max(lhs.hi().abs()).max(rhs.hi().abs())
}

/// Verdict for the claim `lhs <= rhs`.
pub fn judge(lhs: Interval, rhs: Interval, tolerance: f64) -> Verdict {
    if lhs.hi() <= rhs.lo() + tolerance {
        Verdict::Confirmed
    } else if lhs.lo() > rhs.hi() + tolerance {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    }
}

/// Outcome of one `lhs <= rhs` comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityReport {
    pub id: InequalityId,
    /// Chain or sub-check suffix (`left`, `right`, `remark.left`, `sum`, ...).
    pub link: Option<&'static str>,
    pub operand_classes: Vec<OperatorClass>,
    pub n: usize,
    pub seed: Option<u64>,
    pub lhs: Interval,
    pub rhs: Interval,
    /// `rhs.lo - lhs.hi`; negative when the brackets overlap or the claim fails.
    pub slack: f64,
    pub verdict: Verdict,
    pub tolerance: f64,
    /// Free-form explanation, e.g. which constant a class dispatch picked.
    pub note: Option<String>,
}

impl InequalityReport {
    /// `ID` or `ID.link`.
    pub fn label(&self) -> String {
        match self.link {
            Some(link) => format!("{}.{link}", self.id),
            None => self.id.to_string(),
        }
    }
}

impl Serialize for InequalityReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("InequalityReport", 10)?;
        st.serialize_field("id", &self.label())?;
        st.serialize_field("operand_classes", &self.operand_classes)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("lhs", &self.lhs)?;
        st.serialize_field("rhs", &self.rhs)?;
        st.serialize_field("slack", &self.slack)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("tolerance", &self.tolerance)?;
        st.serialize_field("note", &self.note)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckOptions {
    /// Radius brackets are refined to `radius_rel_tol * max(1, ||M||_F)`.
    pub radius_rel_tol: f64,
    pub verdict_rel_tol: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            radius_rel_tol: DEFAULT_RADIUS_REL_TOL,
            verdict_rel_tol: DEFAULT_VERDICT_REL_TOL,
        }
    }
}

impl CheckOptions {
    /// Same options with the radius tolerance divided by `factor`.
    pub fn tightened(self, factor: f64) -> Self {
        Self {
            radius_rel_tol: self.radius_rel_tol / factor,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("radius_rel_tol", self.radius_rel_tol),
            ("verdict_rel_tol", self.verdict_rel_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Radius bracket of `m`. A bracket that stopped short of the tolerance
    /// is still a valid enclosure, just a wide one.
    pub fn radius(&self, m: &ComplexMatrix) -> Result<Interval> {
        let tol = self.radius_rel_tol * m.frobenius_norm().max(1.0);
        Ok(numerical_radius(m, tol)?.enclosure)
    }
}

/// Shared report fields for one checker invocation.
struct Ctx {
    id: InequalityId,
    classes: Vec<OperatorClass>,
    n: usize,
    opts: CheckOptions,
}

impl Ctx {
    fn new(id: InequalityId, classes: &[OperatorClass], n: usize, opts: &CheckOptions) -> Result<Self> {
        opts.validate()?;
        Ok(Self {
            id,
            classes: classes.to_vec(),
            n,
            opts: *opts,
        })
    }

    fn report(&self, link: Option<&'static str>, lhs: Interval, rhs: Interval) -> InequalityReport {
        let tolerance = verdict_tolerance(lhs, rhs, self.opts.verdict_rel_tol);
        InequalityReport {
            id: self.id,
            link,
            operand_classes: self.classes.clone(),
            n: self.n,
            seed: None,
            lhs,
            rhs,
            slack: rhs.lo() - lhs.hi(),
            verdict: judge(lhs, rhs, tolerance),
            tolerance,
            note: None,
        }
    }

    /// `.left` / `.right` reports for `l <= m <= r`.
    fn chain(&self, l: Interval, m: Interval, r: Interval) -> Vec<InequalityReport> {
        vec![self.report(Some("left"), l, m), self.report(Some("right"), m, r)]
    }
}

fn class_tags(m: &ComplexMatrix) -> Result<ClassSet> {
    classify(m, default_class_tol(m))
}

fn require_class(m: &ComplexMatrix, class: OperatorClass, operand: &'static str) -> Result<()> {
    if class_tags(m)?.contains(class) {
        Ok(())
    } else {
        Err(Error::ClassViolation {
            operand,
            expected: class,
        })
    }
}

fn square_dim(a: &ComplexMatrix) -> Result<usize> {
    a.check_finite()?;
    a.dim()
}

fn pair_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<usize> {
    let n = square_dim(a)?;
    let m = square_dim(b)?;
    if n != m {
        return Err(Error::DimensionMismatch {
            left: format!("{n}x{n}"),
            right: format!("{m}x{m}"),
        });
    }
    Ok(n)
}

fn inv_sqrt2() -> Interval {
    Interval::enclose(FRAC_1_SQRT_2)
}

fn sqrt2() -> Interval {
    Interval::enclose(SQRT_2)
}

/// `||A||/2 <= w(A) <= ||A||`.
pub fn check_norm_radius_sandwich(a: &ComplexMatrix, opts: &CheckOptions) -> Result<Vec<InequalityReport>> {
    let n = square_dim(a)?;
    let ctx = Ctx::new(InequalityId::NormRadiusSandwich, &[OperatorClass::General], n, opts)?;
    let norm = op_norm(a)?;
    let w = ctx.opts.radius(a)?;
    Ok(ctx.chain(norm.scale(0.5), w, norm))
}

/// `|a + b| <= sqrt(2) |a + ib|` for real scalars.
pub fn check_scalar_rotation(a: f64, b: f64, opts: &CheckOptions) -> Result<InequalityReport> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("scalars must be finite, got {a}, {b}")));
    }
    let ctx = Ctx::new(InequalityId::ScalarRotation, &[], 1, opts)?;
    let (ia, ib) = (Interval::point(a), Interval::point(b));
    let lhs = (ia + ib).abs();
    // sqrt(2) |a + ib| = sqrt(2 (a^2 + b^2))
    let rhs = (ia.abs().square() + ib.abs().square()).scale(2.0).sqrt();
    Ok(ctx.report(None, lhs, rhs))
}

/// `||A*A + AA*||/4 <= w(A)^2 <= ||A*A + AA*||/2`.
pub fn check_kittaneh(a: &ComplexMatrix, opts: &CheckOptions) -> Result<Vec<InequalityReport>> {
    let n = square_dim(a)?;
    let ctx = Ctx::new(InequalityId::Kittaneh, &[OperatorClass::General], n, opts)?;
    let k = op_norm(&(&a.gram() + &a.cogram()))?;
    let w2 = ctx.opts.radius(a)?.square();
    Ok(ctx.chain(k.scale(0.25), w2, k.scale(0.5)))
}

fn check_unit(x: &[C64], n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            left: format!("{n}x{n}"),
            right: format!("vector of length {}", x.len()),
        });
    }
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidArgument("vector has non-finite entries".into()));
    }
    let norm = vec_norm(x);
    if (norm - 1.0).abs() > UNIT_VECTOR_TOL {
        return Err(Error::NotUnit { norm });
    }
    Ok(())
}

/// `<M x, x>` as an enclosure of its real part, padded for `M`.
fn real_form(m: &ComplexMatrix, x: &[C64]) -> Interval {
    Interval::around(m.quadratic_form(x).re, PAD_HALF_WIDTH * eigen_pad(m))
}

/// `|<Ax,x>| <= sqrt(<|A|x,x> <|A*|x,x>)` for each unit vector in `xs`.
pub fn check_mixed_schwarz_batch(
    a: &ComplexMatrix,
    xs: &[Vec<C64>],
    opts: &CheckOptions,
) -> Result<Vec<InequalityReport>> {
    let n = square_dim(a)?;
    let ctx = Ctx::new(InequalityId::MixedSchwarz, &[OperatorClass::General], n, opts)?;
    for x in xs {
        check_unit(x, n)?;
    }
    let abs_a = abs_value(a)?;
    let abs_a_star = psd_sqrt(&a.cogram())?;
    let pad = PAD_HALF_WIDTH * eigen_pad(a);
    Ok(xs
        .iter()
        .map(|x| {
            let lhs = Interval::around(a.quadratic_form(x).norm(), pad).clamp_nonneg();
            let rhs = (real_form(&abs_a, x) * real_form(&abs_a_star, x)).sqrt();
            ctx.report(None, lhs, rhs)
        })
        .collect())
}

pub fn check_mixed_schwarz(a: &ComplexMatrix, x: &[C64], opts: &CheckOptions) -> Result<InequalityReport> {
    let mut reports = check_mixed_schwarz_batch(a, &[x.to_vec()], opts)?;
    Ok(reports.remove(0))
}

/// `<Ax,x>^2 <= <A^2 x,x>` for self-adjoint `A` and each unit vector in `xs`.
pub fn check_sa_jensen_batch(
    a: &ComplexMatrix,
    xs: &[Vec<C64>],
    opts: &CheckOptions,
) -> Result<Vec<InequalityReport>> {
    let n = square_dim(a)?;
    require_class(a, OperatorClass::SelfAdjoint, "A")?;
    let ctx = Ctx::new(InequalityId::SaJensen, &[OperatorClass::SelfAdjoint], n, opts)?;
    for x in xs {
        check_unit(x, n)?;
    }
    let a = a.hermitian_part()?;
    let a2 = a.gram();
    Ok(xs
        .iter()
        .map(|x| {
            let lhs = real_form(&a, x).abs().square();
            ctx.report(None, lhs, real_form(&a2, x))
        })
        .collect())
}

pub fn check_sa_jensen(a: &ComplexMatrix, x: &[C64], opts: &CheckOptions) -> Result<InequalityReport> {
    let mut reports = check_sa_jensen_batch(a, &[x.to_vec()], opts)?;
    Ok(reports.remove(0))
}

/// `||A + iB|| <= ||A + B||` for positive `A`, `B`.
pub fn check_norm_rotation_positive(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let n = pair_dim(a, b)?;
    require_class(a, OperatorClass::Positive, "A")?;
    require_class(b, OperatorClass::Positive, "B")?;
    let ctx = Ctx::new(
        InequalityId::NormRotationPositive,
        &[OperatorClass::Positive, OperatorClass::Positive],
        n,
        opts,
    )?;
    let lhs = op_norm(&a.plus_i_times(b)?)?;
    let rhs = op_norm(&a.try_add(b)?)?;
    Ok(ctx.report(None, lhs, rhs))
}

/// `||A^2 + B^2||/2 <= w(A + iB)^2 <= ||A^2 + B^2||` for self-adjoint `A`, `B`.
pub fn check_cartesian_sandwich(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<Vec<InequalityReport>> {
    let n = pair_dim(a, b)?;
    require_class(a, OperatorClass::SelfAdjoint, "A")?;
    require_class(b, OperatorClass::SelfAdjoint, "B")?;
    let ctx = Ctx::new(
        InequalityId::CartesianSandwich,
        &[OperatorClass::SelfAdjoint, OperatorClass::SelfAdjoint],
        n,
        opts,
    )?;
    let (a, b) = (a.hermitian_part()?, b.hermitian_part()?);
    let s = op_norm(&(&a.gram() + &b.gram()))?;
    let w2 = ctx.opts.radius(&a.plus_i_times(&b)?)?.square();
    Ok(ctx.chain(s.scale(0.5), w2, s))
}

fn sum_rotation(
    id: InequalityId,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let n = pair_dim(a, b)?;
    let ctx = Ctx::new(id, &[OperatorClass::General, OperatorClass::General], n, opts)?;
    let (abs_a, abs_b) = (abs_value(a)?, abs_value(b)?);
    let (abs_a_star, abs_b_star) = (psd_sqrt(&a.cogram())?, psd_sqrt(&b.cogram())?);
    let m = if id == InequalityId::SumRotationV1 {
        (&abs_a + &abs_b).plus_i_times(&(&abs_a_star + &abs_b_star))?
    } else {
        (&abs_a + &abs_a_star).plus_i_times(&(&abs_b + &abs_b_star))?
    };
    let lhs = ctx.opts.radius(&a.try_add(b)?)?;
    let rhs = inv_sqrt2() * ctx.opts.radius(&m)?;
    Ok(ctx.report(None, lhs, rhs))
}

/// `w(A + B) <= w((|A| + |B|) + i(|A*| + |B*|)) / sqrt(2)`.
pub fn check_sum_rotation_v1(a: &ComplexMatrix, b: &ComplexMatrix, opts: &CheckOptions) -> Result<InequalityReport> {
    sum_rotation(InequalityId::SumRotationV1, a, b, opts)
}

/// `w(A + B) <= w((|A| + |A*|) + i(|B| + |B*|)) / sqrt(2)`.
pub fn check_sum_rotation_v2(a: &ComplexMatrix, b: &ComplexMatrix, opts: &CheckOptions) -> Result<InequalityReport> {
    sum_rotation(InequalityId::SumRotationV2, a, b, opts)
}

/// `w(A)^2 <= w(|A| + i|A*|)^2 / 2 <= ||A*A + AA*||/2`.
pub fn check_radius_kittaneh_refine(a: &ComplexMatrix, opts: &CheckOptions) -> Result<Vec<InequalityReport>> {
    let n = square_dim(a)?;
    let ctx = Ctx::new(InequalityId::RadiusKittanehRefine, &[OperatorClass::General], n, opts)?;
    let m = abs_value(a)?.plus_i_times(&psd_sqrt(&a.cogram())?)?;
    let w2 = ctx.opts.radius(a)?.square();
    let mid = ctx.opts.radius(&m)?.square().scale(0.5);
    let k = op_norm(&(&a.gram() + &a.cogram()))?.scale(0.5);
    Ok(ctx.chain(w2, mid, k))
}

/// `w(A + B) <= sqrt(2) w(|A| + i|B|)` for normal `A`, `B`. When both are
/// also self-adjoint, adds the chain `||A + B|| <= sqrt(2) w(A + iB) <= sqrt(2) ||A + iB||`
/// as `.remark.left` / `.remark.right`.
pub fn check_normal_sum_rotation(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<Vec<InequalityReport>> {
    let n = pair_dim(a, b)?;
    require_class(a, OperatorClass::Normal, "A")?;
    require_class(b, OperatorClass::Normal, "B")?;
    let both_sa = class_tags(a)?.contains(OperatorClass::SelfAdjoint)
        && class_tags(b)?.contains(OperatorClass::SelfAdjoint);
    let class = if both_sa {
        OperatorClass::SelfAdjoint
    } else {
        OperatorClass::Normal
    };
    let ctx = Ctx::new(InequalityId::NormalSumRotation, &[class, class], n, opts)?;
    let lhs = ctx.opts.radius(&a.try_add(b)?)?;
    let rhs = sqrt2() * ctx.opts.radius(&abs_value(a)?.plus_i_times(&abs_value(b)?)?)?;
    let mut reports = vec![ctx.report(None, lhs, rhs)];
    if both_sa {
        let (a, b) = (a.hermitian_part()?, b.hermitian_part()?);
        let t = a.plus_i_times(&b)?;
        let l = op_norm(&(&a + &b))?;
        let m = sqrt2() * ctx.opts.radius(&t)?;
        let r = sqrt2() * op_norm(&t)?;
        reports.push(ctx.report(Some("remark.left"), l, m));
        reports.push(ctx.report(Some("remark.right"), m, r));
    }
    Ok(reports)
}

/// For accretive-dissipative `T = A + iB`: `.sum` checks
/// `||A + B|| / sqrt(2) <= w(T)` and `.norm` checks `||T|| / sqrt(2) <= w(T)`.
pub fn check_ad_norm_lower(t: &ComplexMatrix, opts: &CheckOptions) -> Result<Vec<InequalityReport>> {
    let n = square_dim(t)?;
    require_class(t, OperatorClass::AccretiveDissipative, "T")?;
    let ctx = Ctx::new(
        InequalityId::AdNormLower,
        &[OperatorClass::AccretiveDissipative],
        n,
        opts,
    )?;
    let w = ctx.opts.radius(t)?;
    let sum = op_norm(&(&t.real_part()? + &t.imag_part()?))?;
    let norm = op_norm(t)?;
    Ok(vec![
        ctx.report(Some("sum"), inv_sqrt2() * sum, w),
        ctx.report(Some("norm"), inv_sqrt2() * norm, w),
    ])
}

/// Constant for `w(ST) <= c w(S) w(T)`: the smallest one the operand classes justify.
pub fn submult_constant(s: ClassSet, t: ClassSet) -> (f64, &'static str) {
    let ad = |c: ClassSet| c.contains(OperatorClass::AccretiveDissipative);
    let normal = |c: ClassSet| c.contains(OperatorClass::Normal);
    if normal(s) && normal(t) {
        (1.0, "c=1: both operands normal")
    } else if ad(s) && ad(t) {
        (2.0, "c=2: both operands accretive-dissipative")
    } else if normal(s) || normal(t) {
        (2.0, "c=2: one operand normal")
    } else if ad(s) || ad(t) {
        (2.0 * SQRT_2, "c=2*sqrt(2): one operand accretive-dissipative")
    } else {
        (4.0, "c=4: general operands")
    }
}

/// `w(ST) <= c w(S) w(T)` with `c` from [`submult_constant`].
pub fn check_submult(s: &ComplexMatrix, t: &ComplexMatrix, opts: &CheckOptions) -> Result<InequalityReport> {
    let n = pair_dim(s, t)?;
    let (cs, ct) = (class_tags(s)?, class_tags(t)?);
    let (c, why) = submult_constant(cs, ct);
    let pick = |set: ClassSet| {
        if set.contains(OperatorClass::Normal) {
            OperatorClass::Normal
        } else if set.contains(OperatorClass::AccretiveDissipative) {
            OperatorClass::AccretiveDissipative
        } else {
            OperatorClass::General
        }
    };
    let ctx = Ctx::new(InequalityId::Submult, &[pick(cs), pick(ct)], n, opts)?;
    let constant = if c == 2.0 * SQRT_2 {
        Interval::enclose(c)
    } else {
        Interval::point(c)
    };
    let lhs = ctx.opts.radius(&s.try_mul(t)?)?;
    let rhs = constant * (ctx.opts.radius(s)? * ctx.opts.radius(t)?);
    let mut report = ctx.report(None, lhs, rhs);
    report.note = Some(why.to_string());
    Ok(report)
}

/// `||T*T + TT*||/4 <= w(A^2 + iB^2)/sqrt(2) <= w(T)^2` with `A = Re T`, `B = Im T`,
/// after confirming `T*T + TT* = 2(A^2 + B^2)` numerically.
pub fn check_reverse_kittaneh_refine(t: &ComplexMatrix, opts: &CheckOptions) -> Result<Vec<InequalityReport>> {
    let n = square_dim(t)?;
    let ctx = Ctx::new(InequalityId::ReverseKittanehRefine, &[OperatorClass::General], n, opts)?;
    let (a, b) = (t.real_part()?, t.imag_part()?);
    let (a2, b2) = (a.gram(), b.gram());
    let s = &t.gram() + &t.cogram();
    let residual = (&s - &(&a2 + &b2).scale_real(2.0)).frobenius_norm();
    let bound = IDENTITY_REL_TOL * t.frobenius_norm().powi(2).max(1.0);
    if residual > bound {
        return Err(Error::IdentityCheck { residual, bound });
    }
    let l = op_norm(&s)?.scale(0.25);
    let m = inv_sqrt2() * ctx.opts.radius(&a2.plus_i_times(&b2)?)?;
    let r = ctx.opts.radius(t)?.square();
    Ok(ctx.chain(l, m, r))
}

/// `||A + B|| <= sqrt(w(A + iB)^2 + 2||A|| ||B||) <= ||A|| + ||B||` for self-adjoint `A`, `B`.
pub fn check_triangle_refine(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<Vec<InequalityReport>> {
    let n = pair_dim(a, b)?;
    require_class(a, OperatorClass::SelfAdjoint, "A")?;
    require_class(b, OperatorClass::SelfAdjoint, "B")?;
    let ctx = Ctx::new(
        InequalityId::TriangleRefine,
        &[OperatorClass::SelfAdjoint, OperatorClass::SelfAdjoint],
        n,
        opts,
    )?;
    let (a, b) = (a.hermitian_part()?, b.hermitian_part()?);
    let (na, nb) = (op_norm(&a)?, op_norm(&b)?);
    let w2 = ctx.opts.radius(&a.plus_i_times(&b)?)?.square();
    let m = (w2 + (na * nb).scale(2.0)).sqrt();
    Ok(ctx.chain(op_norm(&(&a + &b))?, m, na + nb))
}

/// Inputs for [`run_check`].
#[derive(Clone, Debug)]
pub enum Operands {
    Scalars(f64, f64),
    Single(ComplexMatrix),
    Pair(ComplexMatrix, ComplexMatrix),
    Pointwise(ComplexMatrix, Vec<Vec<C64>>),
}

impl Operands {
    pub fn arity(&self) -> Arity {
        match self {
            Operands::Scalars(..) => Arity::Scalars,
            Operands::Single(_) => Arity::Single,
            Operands::Pair(..) => Arity::Pair,
            Operands::Pointwise(..) => Arity::Pointwise,
        }
    }
}

/// Runs the checker for `id` on matching operands.
pub fn run_check(id: InequalityId, operands: &Operands, opts: &CheckOptions) -> Result<Vec<InequalityReport>> {
    use InequalityId as I;
    if operands.arity() != id.arity() {
        return Err(Error::InvalidArgument(format!(
            "{id} expects {:?} operands, got {:?}",
            id.arity(),
            operands.arity()
        )));
    }
    let one = |r: Result<InequalityReport>| r.map(|r| vec![r]);
    match (id, operands) {
        (I::ScalarRotation, Operands::Scalars(a, b)) => one(check_scalar_rotation(*a, *b, opts)),
        (I::MixedSchwarz, Operands::Pointwise(a, xs)) => check_mixed_schwarz_batch(a, xs, opts),
        (I::SaJensen, Operands::Pointwise(a, xs)) => check_sa_jensen_batch(a, xs, opts),
        (I::NormRadiusSandwich, Operands::Single(a)) => check_norm_radius_sandwich(a, opts),
        (I::Kittaneh, Operands::Single(a)) => check_kittaneh(a, opts),
        (I::RadiusKittanehRefine, Operands::Single(a)) => check_radius_kittaneh_refine(a, opts),
        (I::AdNormLower, Operands::Single(t)) => check_ad_norm_lower(t, opts),
        (I::ReverseKittanehRefine, Operands::Single(t)) => check_reverse_kittaneh_refine(t, opts),
        (I::NormRotationPositive, Operands::Pair(a, b)) => one(check_norm_rotation_positive(a, b, opts)),
        (I::CartesianSandwich, Operands::Pair(a, b)) => check_cartesian_sandwich(a, b, opts),
        (I::SumRotationV1, Operands::Pair(a, b)) => one(check_sum_rotation_v1(a, b, opts)),
        (I::SumRotationV2, Operands::Pair(a, b)) => one(check_sum_rotation_v2(a, b, opts)),
        (I::NormalSumRotation, Operands::Pair(a, b)) => check_normal_sum_rotation(a, b, opts),
        (I::Submult, Operands::Pair(s, t)) => one(check_submult(s, t, opts)),
        (I::TriangleRefine, Operands::Pair(a, b)) => check_triangle_refine(a, b, opts),
        _ => unreachable!("arity checked above"),
    }
}
