//! Horizon equations, the ℋ₃ families, lateral classes `G_{X₀±}·ι(ℋ₃)`
//! and generation of ℋ₄ points.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ads::{iota_point, project, representative, AdSPoint, Constraint};
use crate::ambient::{mat_exp, stream_seed, AlgebraElement, AmbientVector, Dim, GroupElement};
use crate::lie::{root_vector, root_vector_at, RootLabel};
use crate::{tol, Error};

/// `u² − x² − Σ zᵢ²`. Only l = 3, 4 are theorems; the l = 5 value is the
/// natural extension and carries `conjectural = true`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorizonResidual {
    pub dim: Dim,
    pub value: f64,
    pub conjectural: bool,
}

pub fn horizon_residual(p: &AdSPoint) -> HorizonResidual {
    let v = p.vector();
    let dim = p.dim();
    let mut value = v.u() * v.u() - v.x() * v.x();
    for k in 0..dim.extra() {
        value -= v.z(k) * v.z(k);
    }
    HorizonResidual {
        dim,
        value,
        conjectural: dim.l() > 4,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `X₀₊`, driven by `u − x`.
    Plus,
    /// `X₀₋`, driven by `u + x`.
    Minus,
}

impl Branch {
    pub fn label(self) -> RootLabel {
        match self {
            Branch::Plus => RootLabel::new(0, 1),
            Branch::Minus => RootLabel::new(0, -1),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LateralParams {
    pub branch: Branch,
    pub alpha: f64,
    pub base: AdSPoint,
}

impl LateralParams {
    /// Checks that `base` is an AdS₃ point on ℋ₃.
    pub fn new(branch: Branch, alpha: f64, base: AdSPoint) -> Result<Self, Error> {
        Dim::ADS3.check(base.dim())?;
        let r = horizon_residual(&base).value;
        if libm::fabs(r) > tol::QUADRIC {
            return Err(Error::InvalidElement {
                kind: "horizon base",
                residual: r,
            });
        }
        Ok(LateralParams {
            branch,
            alpha,
            base,
        })
    }
}

/// `overall·(α, cosh a, x_sign·α, sinh a)`.
pub fn h3_parametrize(x_sign: f64, overall: f64, a: f64, alpha: f64) -> AdSPoint {
    let (xs, s) = (libm::copysign(1.0, x_sign), libm::copysign(1.0, overall));
    let c = [
        s * alpha,
        s * libm::cosh(a),
        s * xs * alpha,
        s * libm::sinh(a),
    ];
    AdSPoint::from_components(Dim::ADS3, &c).expect("ℋ₃ family lies on the quadric")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrbitMode {
    /// `exp(aX)·exp(bY)`.
    #[default]
    Product,
    /// `exp(aX + bY)`.
    SingleExp,
}

/// `[exp(aX)·exp(bY)·rep(base)]`, or `[exp(aX + bY)·rep(base)]`.
pub fn orbit_two_param(
    x: &AlgebraElement,
    y: &AlgebraElement,
    a: f64,
    b: f64,
    base: &AdSPoint,
    mode: OrbitMode,
) -> Result<AdSPoint, Error> {
    base.dim().check(x.dim())?;
    base.dim().check(y.dim())?;
    let g = match mode {
        OrbitMode::Product => mat_exp(&x.scale(a)).compose(&mat_exp(&y.scale(b))),
        OrbitMode::SingleExp => mat_exp(&(x.scale(a) + y.scale(b))),
    };
    let rep = representative(base, Constraint::None, None)?;
    Ok(project(&g.compose(rep.group())))
}

/// `exp(α X₀±)` in AdS₄.
pub fn lateral_element(branch: Branch, alpha: f64) -> GroupElement {
    let x = root_vector(branch.label(), Dim::ADS4).expect("zero-entry label in AdS₄");
    mat_exp(&x.scale(alpha))
}

/// Closed form of `exp(α X₀±)·ι(base)`: with `d = u ∓ x`, `u` gains
/// `α²d/2`, `x` gains `±α²d/2`, `z = αd`, and `t, y` are untouched.
/// `base` may be any AdS₃ point.
pub fn lateral_action(branch: Branch, alpha: f64, base: &AdSPoint) -> Result<AdSPoint, Error> {
    Dim::ADS3.check(base.dim())?;
    let v = base.vector();
    let (sign, d) = match branch {
        Branch::Plus => (1.0, v.u() - v.x()),
        Branch::Minus => (-1.0, v.u() + v.x()),
    };
    let shift = 0.5 * alpha * alpha * d;
    let c = [v.u() + shift, v.t(), v.x() + sign * shift, v.y(), alpha * d];
    AdSPoint::from_components(Dim::ADS4, &c)
}

pub fn lateral(params: &LateralParams) -> AdSPoint {
    lateral_action(params.branch, params.alpha, &params.base).expect("AdS₃ base")
}

/// Inverse of [`lateral_action`]: for the plus branch
/// `α = z′/(u′−x′)`, `u = u′ − z′²/(2(u′−x′))`, `x = x′ − z′²/(2(u′−x′))`;
/// the minus branch uses `u′ + x′` and adds the shift to `x`.
pub fn lateral_inverse(p: &AdSPoint, branch: Branch) -> Result<(f64, AdSPoint), Error> {
    Dim::ADS4.check(p.dim())?;
    let v = p.vector();
    let (sign, d) = match branch {
        Branch::Plus => (1.0, v.u() - v.x()),
        Branch::Minus => (-1.0, v.u() + v.x()),
    };
    if libm::fabs(d) < tol::INVERSION {
        return Err(Error::UseOtherBranch(d));
    }
    let z = v.z(0);
    let shift = z * z / (2.0 * d);
    let c = [v.u() - shift, v.t(), v.x() - sign * shift, v.y()];
    // the quadric defect of `p` carries over, so re-check with the same band
    Ok((z / d, AdSPoint::from_components(Dim::ADS3, &c)?))
}

/// One generated horizon point with the parameters that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorizonSample {
    pub index: usize,
    pub x_sign: f64,
    pub overall: f64,
    pub a: f64,
    pub alpha_base: f64,
    pub branch: Branch,
    pub alpha_lateral: f64,
    pub point: AdSPoint,
}

/// Parameter range for generated samples.
pub const SAMPLE_RANGE: f64 = 2.0;

/// Sample `index` of the stream: signs, `a`, `α_base`, branch and `α_lat`
/// drawn from `stream_seed(seed, index)`, parameters uniform in `[−2, 2]`.
/// Every eighth sample has `α_lat = 0` and lies on `ι(ℋ₃)`.
pub fn h4_sample(seed: u64, index: usize) -> HorizonSample {
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, index as u64));
    let sign = |r: &mut ChaCha8Rng| if r.random::<bool>() { 1.0 } else { -1.0 };
    let x_sign = sign(&mut rng);
    let overall = sign(&mut rng);
    let a = rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE);
    let alpha_base = rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE);
    let branch = if rng.random::<bool>() {
        Branch::Plus
    } else {
        Branch::Minus
    };
    let alpha_lateral = if index.is_multiple_of(8) {
        0.0
    } else {
        rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE)
    };
    let base = h3_parametrize(x_sign, overall, a, alpha_base);
    let point = lateral_action(branch, alpha_lateral, &base).expect("AdS₃ base");
    HorizonSample {
        index,
        x_sign,
        overall,
        a,
        alpha_base,
        branch,
        alpha_lateral,
        point,
    }
}

/// `count` points of `G_{X₀₊}·ι(ℋ₃) ∪ G_{X₀₋}·ι(ℋ₃)`.
pub fn h4_generate(count: usize, seed: u64) -> Vec<HorizonSample> {
    (0..count).map(|i| h4_sample(seed, i)).collect()
}

/// Candidate AdS₅ horizon point: a generated ℋ₄ point lifted by a zero
/// `z₂` and pushed along the `z₂` copy of `X₀₊`. Its extended residual is
/// exactly that of the ℋ₄ point.
pub fn h5_candidate(seed: u64, index: usize) -> AdSPoint {
    let s = h4_sample(seed, index);
    let mut c = [0.0; 6];
    c[..5].copy_from_slice(s.point.vector().as_slice());
    let v = AmbientVector::new(Dim::ADS5, &c).expect("six components");
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(!seed, index as u64));
    let alpha = rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE);
    let x = root_vector_at(RootLabel::new(0, 1), Dim::ADS5, 1).expect("second z copy");
    let w = mat_exp(&x.scale(alpha)).apply(&v);
    AdSPoint::new(w).expect("group action preserves the quadric")
}

/// `ι` composed with the lateral action, as a group computation; used to
/// cross-check the closed form.
pub fn lateral_action_by_group(
    branch: Branch,
    alpha: f64,
    base: &AdSPoint,
) -> Result<AdSPoint, Error> {
    let ip = iota_point(base)?;
    Ok(
        AdSPoint::new(lateral_element(branch, alpha).apply(ip.vector()))
            .expect("group action preserves the quadric"),
    )
}
