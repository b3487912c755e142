//! Causal classification of points of BTZ = AdS ∖ singularity.
//!
//! Along the ray `g·(1, −s, s w̄)` the combinations `T ± Y` are affine in
//! `s`, with slopes `A±(w̄)` affine in `w̄`. A branch has a future hit iff
//! `σ± A±(w̄) < 0` (σ± the sign of `t ± y`), so the set of escaping
//! directions is the intersection of two closed spherical caps on
//! `S^{l−2}` and its emptiness, tangency or interior is decided exactly.
//!
//! Representatives are orthochronous, so "future" is one global time
//! orientation. The sets `u² − x² − Σzᵢ² = 0` split into a future horizon
//! (boundary of the black hole) and a past horizon (boundary of the white
//! hole, its image under `(t, y) ↦ (−t, −y)`); [`classify`] reports the
//! union, [`classify_oriented`] a single orientation.

use alloc::vec::Vec;

use crate::ads::{
    geodesic_tangent, is_singular, representative, AdSPoint, Constraint, Direction, Representative,
};
use crate::ambient::{Dim, T, X, Y};
use crate::{tol, Error};

const MAX_DIRS: usize = 4;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

/// Angle between two unit vectors, `2·atan2(|a − b|, |a + b|)`.
fn angle_between(a: &[f64], b: &[f64]) -> f64 {
    let mut d = 0.0;
    let mut s = 0.0;
    for (p, q) in a.iter().zip(b) {
        d += (p - q) * (p - q);
        s += (p + q) * (p + q);
    }
    2.0 * libm::atan2(libm::sqrt(d), libm::sqrt(s))
}

/// `A(w) = n·w − d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineForm {
    len: usize,
    normal: [f64; MAX_DIRS],
    constant: f64,
}

impl AffineForm {
    pub fn new(normal: &[f64], constant: f64) -> Self {
        let mut n = [0.0; MAX_DIRS];
        n[..normal.len()].copy_from_slice(normal);
        AffineForm {
            len: normal.len(),
            normal: n,
            constant,
        }
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal[..self.len]
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn eval(&self, w: &Direction) -> f64 {
        dot(self.normal(), w.as_slice()) - self.constant
    }
}

/// Per-point data of the two singular branches `T + Y = 0` (plus) and
/// `T − Y = 0` (minus).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchData {
    pub sigma_plus: f64,
    pub sigma_minus: f64,
    /// `t + y`.
    pub offset_plus: f64,
    /// `t − y`.
    pub offset_minus: f64,
    pub aff_plus: AffineForm,
    pub aff_minus: AffineForm,
}

/// Reads `t ± y` and `A±` off the t-row `(t, a, b, c, …)` and y-row
/// `(y, a′, b′, c′, …)` of the representative: `A±(w) = (b ± b′, c ± c′, …)·w − (a ± a′)`.
pub fn branch_data(rep: &Representative) -> Result<BranchData, Error> {
    if is_singular(rep.point()) {
        return Err(Error::Singular);
    }
    let dim = rep.point().dim();
    let (tr, yr) = (rep.row(T), rep.row(Y));
    let k = dim.directions();
    let mut np = [0.0; MAX_DIRS];
    let mut nm = [0.0; MAX_DIRS];
    for i in 0..k {
        np[i] = tr[X + i] + yr[X + i];
        nm[i] = tr[X + i] - yr[X + i];
    }
    let (t, y) = (tr[0], yr[0]);
    let sign = |v: f64| if v > 0.0 { 1.0 } else { -1.0 };
    Ok(BranchData {
        sigma_plus: sign(t + y),
        sigma_minus: sign(t - y),
        offset_plus: t + y,
        offset_minus: t - y,
        aff_plus: AffineForm::new(&np[..k], tr[T] + yr[T]),
        aff_minus: AffineForm::new(&nm[..k], tr[T] - yr[T]),
    })
}

/// Singularity hits `s± = −(t ± y)/A±(w̄)`; `None` when `|A±| ≤ τ_den`.
pub fn branch_roots(bd: &BranchData, w: &Direction) -> [Option<f64>; 2] {
    let root = |offset: f64, a: &AffineForm| {
        let den = a.eval(w);
        if libm::fabs(den) <= tol::DENOMINATOR {
            None
        } else {
            Some(-offset / den)
        }
    };
    [
        root(bd.offset_plus, &bd.aff_plus),
        root(bd.offset_minus, &bd.aff_minus),
    ]
}

/// `{w ∈ S^{l−2} : n·w ≥ c}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalCap {
    len: usize,
    normal: [f64; MAX_DIRS],
    offset: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CapShape {
    Empty,
    Point {
        center: [f64; MAX_DIRS],
    },
    Proper {
        center: [f64; MAX_DIRS],
        radius: f64,
    },
    Full,
}

impl SphericalCap {
    pub fn new(normal: &[f64], offset: f64) -> Self {
        let mut n = [0.0; MAX_DIRS];
        n[..normal.len()].copy_from_slice(normal);
        SphericalCap {
            len: normal.len(),
            normal: n,
            offset,
        }
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal[..self.len]
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn contains(&self, w: &[f64]) -> bool {
        dot(self.normal(), w) >= self.offset
    }

    pub fn shape(&self) -> CapShape {
        let r = norm(self.normal());
        let c = self.offset;
        if r == 0.0 {
            return if c > 0.0 {
                CapShape::Empty
            } else {
                CapShape::Full
            };
        }
        if c > r {
            return CapShape::Empty;
        }
        if c < -r {
            return CapShape::Full;
        }
        let mut center = [0.0; MAX_DIRS];
        for (o, v) in center.iter_mut().zip(self.normal()) {
            *o = v / r;
        }
        let radius = libm::atan2(libm::sqrt((r - c) * (r + c)), c);
        if radius <= tol::ANGLE {
            CapShape::Point { center }
        } else if radius >= core::f64::consts::PI - tol::ANGLE {
            CapShape::Full
        } else {
            CapShape::Proper { center, radius }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntersectionClass {
    Empty,
    MeasureZero,
    HasInterior,
}

/// Escaping directions `cap₊ ∩ cap₋` with the cap geometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeSet {
    pub cap_plus: SphericalCap,
    pub cap_minus: SphericalCap,
    pub class: IntersectionClass,
    /// Angular radii, when the caps are proper.
    pub theta_plus: Option<f64>,
    pub theta_minus: Option<f64>,
    /// Angle between the cap centers.
    pub separation: Option<f64>,
    /// `Δ − (θ₊ + θ₋)`, when both caps are proper.
    pub gap: Option<f64>,
}

impl EscapeSet {
    /// A direction of a measure-zero escape set: the tangency point of two
    /// proper caps, or the center of a point cap.
    pub fn tangency_direction(&self, dim: Dim) -> Option<Direction> {
        if self.class != IntersectionClass::MeasureZero {
            return None;
        }
        let k = dim.directions();
        match (self.cap_plus.shape(), self.cap_minus.shape()) {
            (CapShape::Point { center }, _) | (_, CapShape::Point { center }) => {
                Direction::normalized(dim, &center[..k])
            }
            (
                CapShape::Proper {
                    center: a,
                    radius: ra,
                },
                CapShape::Proper { center: b, .. },
            ) => {
                let (a, b) = (&a[..k], &b[..k]);
                let ab = dot(a, b);
                let mut e = [0.0; MAX_DIRS];
                for i in 0..k {
                    e[i] = b[i] - ab * a[i];
                }
                if norm(&e[..k]) < 1e-8 {
                    // antipodal centers: any direction orthogonal to a
                    let j = (0..k)
                        .min_by(|&i, &j| libm::fabs(a[i]).total_cmp(&libm::fabs(a[j])))
                        .unwrap();
                    e = [0.0; MAX_DIRS];
                    for i in 0..k {
                        e[i] = -a[j] * a[i];
                    }
                    e[j] += 1.0;
                }
                let ne = norm(&e[..k]);
                let mut w = [0.0; MAX_DIRS];
                for i in 0..k {
                    w[i] = libm::cos(ra) * a[i] + libm::sin(ra) * e[i] / ne;
                }
                Direction::normalized(dim, &w[..k])
            }
            _ => None,
        }
    }
}

fn intersect(a: &SphericalCap, b: &SphericalCap) -> (IntersectionClass, Option<f64>) {
    use CapShape::*;
    use IntersectionClass as C;
    let k = a.len;
    match (a.shape(), b.shape()) {
        (Empty, _) | (_, Empty) => (C::Empty, None),
        (Full, Full) | (Full, Proper { .. }) | (Proper { .. }, Full) => (C::HasInterior, None),
        (Full, Point { .. }) | (Point { .. }, Full) => (C::MeasureZero, None),
        (Point { center: p }, Point { center: q }) => {
            let d = angle_between(&p[..k], &q[..k]);
            let class = if d <= tol::ANGLE {
                C::MeasureZero
            } else {
                C::Empty
            };
            (class, Some(d))
        }
        (Point { center: p }, Proper { center, radius })
        | (Proper { center, radius }, Point { center: p }) => {
            let d = angle_between(&p[..k], &center[..k]);
            let class = if d <= radius + tol::ANGLE {
                C::MeasureZero
            } else {
                C::Empty
            };
            (class, Some(d))
        }
        (
            Proper {
                center: p,
                radius: rp,
            },
            Proper {
                center: q,
                radius: rq,
            },
        ) => {
            let d = angle_between(&p[..k], &q[..k]);
            let gap = d - (rp + rq);
            let class = if gap > tol::ANGLE {
                C::Empty
            } else if gap >= -tol::ANGLE {
                C::MeasureZero
            } else {
                C::HasInterior
            };
            (class, Some(d))
        }
    }
}

/// Time orientation of the rays `s > 0` (future) or `s < 0` (past).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Future,
    Past,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Future => 1.0,
            Orientation::Past => -1.0,
        }
    }
}

/// Future escape caps `{w : σ±(n±·w − d±) ≥ 0}` and their intersection class.
pub fn escape_caps(bd: &BranchData) -> EscapeSet {
    escape_caps_oriented(bd, Orientation::Future)
}

/// Escape caps for either orientation; the past caps are
/// `{w : σ±(n±·w − d±) ≤ 0}`.
pub fn escape_caps_oriented(bd: &BranchData, orientation: Orientation) -> EscapeSet {
    let cap = |sigma: f64, a: &AffineForm| {
        let sigma = sigma * orientation.sign();
        let mut n = [0.0; MAX_DIRS];
        for (o, v) in n.iter_mut().zip(a.normal()) {
            *o = sigma * v;
        }
        SphericalCap::new(&n[..a.len], sigma * a.constant())
    };
    let cap_plus = cap(bd.sigma_plus, &bd.aff_plus);
    let cap_minus = cap(bd.sigma_minus, &bd.aff_minus);
    let radius = |c: &SphericalCap| match c.shape() {
        CapShape::Proper { radius, .. } => Some(radius),
        _ => None,
    };
    let (class, separation) = intersect(&cap_plus, &cap_minus);
    let (theta_plus, theta_minus) = (radius(&cap_plus), radius(&cap_minus));
    let gap = match (theta_plus, theta_minus, separation) {
        (Some(a), Some(b), Some(d)) => Some(d - (a + b)),
        _ => None,
    };
    EscapeSet {
        cap_plus,
        cap_minus,
        class,
        theta_plus,
        theta_minus,
        separation,
        gap,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Singular,
    BlackHole,
    Horizon,
    FreeInterior,
}

impl Tag {
    pub const ALL: [Tag; 4] = [
        Tag::Singular,
        Tag::BlackHole,
        Tag::Horizon,
        Tag::FreeInterior,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Tag::Singular => "Singular",
            Tag::BlackHole => "BlackHole",
            Tag::Horizon => "Horizon",
            Tag::FreeInterior => "FreeInterior",
        }
    }

    fn of_class(class: IntersectionClass) -> Tag {
        match class {
            IntersectionClass::Empty => Tag::BlackHole,
            IntersectionClass::MeasureZero => Tag::Horizon,
            IntersectionClass::HasInterior => Tag::FreeInterior,
        }
    }

    /// Two-sided tag from the future and past tags: Horizon if either is,
    /// else BlackHole if either is, else FreeInterior.
    pub fn combine(future: Tag, past: Tag) -> Tag {
        use Tag::*;
        match (future, past) {
            (Singular, _) | (_, Singular) => Singular,
            (Horizon, _) | (_, Horizon) => Horizon,
            (BlackHole, _) | (_, BlackHole) => BlackHole,
            _ => FreeInterior,
        }
    }
}

impl core::fmt::Display for Tag {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Tag {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        Tag::ALL.into_iter().find(|t| t.as_str() == s).ok_or(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CausalClass {
    /// Two-sided tag, see [`Tag::combine`]. `BlackHole` covers the black
    /// hole and the white hole, `Horizon` both horizons.
    pub tag: Tag,
    /// `t² − y²`.
    pub singular_residual: f64,
    /// Cap geometry per orientation; absent for singular points.
    pub future: Option<EscapeSet>,
    pub past: Option<EscapeSet>,
}

impl CausalClass {
    fn singular(singular_residual: f64) -> Self {
        CausalClass {
            tag: Tag::Singular,
            singular_residual,
            future: None,
            past: None,
        }
    }

    pub fn oriented_tag(&self, orientation: Orientation) -> Tag {
        let e = match orientation {
            Orientation::Future => self.future,
            Orientation::Past => self.past,
        };
        e.map_or(Tag::Singular, |e| Tag::of_class(e.class))
    }

    /// Orientation that decides [`Self::tag`]; the future one when both agree.
    pub fn deciding(&self) -> Option<Orientation> {
        self.future?;
        let f = self.oriented_tag(Orientation::Future);
        Some(if f == self.tag {
            Orientation::Future
        } else {
            Orientation::Past
        })
    }

    pub fn escape(&self) -> Option<EscapeSet> {
        match self.deciding()? {
            Orientation::Future => self.future,
            Orientation::Past => self.past,
        }
    }

    /// Cap gap `Δ − (θ₊ + θ₋)` of the deciding orientation.
    pub fn gap(&self) -> Option<f64> {
        self.escape().and_then(|e| e.gap)
    }

    /// Smallest `|gap|` over both orientations.
    pub fn min_abs_gap(&self) -> Option<f64> {
        let f = self.future.and_then(|e| e.gap).map(libm::fabs);
        let p = self.past.and_then(|e| e.gap).map(libm::fabs);
        match (f, p) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Classification from a given representative.
pub fn classify_rep(rep: &Representative) -> CausalClass {
    let singular_residual = rep.point().singular_residual();
    let Ok(bd) = branch_data(rep) else {
        return CausalClass::singular(singular_residual);
    };
    let future = escape_caps_oriented(&bd, Orientation::Future);
    let past = escape_caps_oriented(&bd, Orientation::Past);
    CausalClass {
        tag: Tag::combine(Tag::of_class(future.class), Tag::of_class(past.class)),
        singular_residual,
        future: Some(future),
        past: Some(past),
    }
}

/// Exact causal class of `p`, using the representative drawn from `seed`.
pub fn classify(p: &AdSPoint, seed: u64) -> CausalClass {
    if is_singular(p) {
        return CausalClass::singular(p.singular_residual());
    }
    let rep = representative(p, Constraint::None, Some(seed)).expect("valid point");
    classify_rep(&rep)
}

/// Tag for one time orientation only: with [`Orientation::Future`] this is
/// the black hole / its horizon / the free interior proper.
pub fn classify_oriented(p: &AdSPoint, seed: u64, orientation: Orientation) -> Tag {
    classify(p, seed).oriented_tag(orientation)
}

/// Quasi-uniform directions on `S^{l−2}`: an equally spaced circle for
/// l = 3, a Fibonacci sphere for l = 4 and a Kronecker sequence pushed
/// through the uniform Hopf parametrization of S³ for l = 5.
pub fn sphere_directions(dim: Dim, count: usize) -> Vec<Direction> {
    use core::f64::consts::TAU;
    let mut out = Vec::with_capacity(count);
    let n = count as f64;
    for k in 0..count {
        let kf = k as f64;
        let c: [f64; 4] = match dim.directions() {
            2 => {
                let a = TAU * kf / n;
                [libm::cos(a), libm::sin(a), 0.0, 0.0]
            }
            3 => {
                let golden = core::f64::consts::PI * (3.0 - libm::sqrt(5.0));
                let z = 1.0 - (2.0 * kf + 1.0) / n;
                let r = libm::sqrt(1.0 - z * z);
                let a = golden * kf;
                [r * libm::cos(a), r * libm::sin(a), z, 0.0]
            }
            _ => {
                // plastic-number Kronecker sequence
                const G: f64 = 1.220_744_084_605_759_5;
                let frac = |v: f64| v - libm::floor(v);
                let u1 = (kf + 0.5) / n;
                let u2 = frac(0.5 + kf / G);
                let u3 = frac(0.5 + kf / (G * G));
                let (a, b) = (libm::sqrt(1.0 - u1), libm::sqrt(u1));
                [
                    a * libm::sin(TAU * u2),
                    a * libm::cos(TAU * u2),
                    b * libm::sin(TAU * u3),
                    b * libm::cos(TAU * u3),
                ]
            }
        };
        out.push(Direction::normalized(dim, &c[..dim.directions()]).expect("nonzero"));
    }
    out
}

/// Outcome of the sampling oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampledClass {
    /// Two-sided tag. Per orientation `Horizon` means "horizon suspect":
    /// some but fewer than `f_min · n_dirs` sampled directions escape.
    pub tag: Tag,
    pub future_escaping: usize,
    pub past_escaping: usize,
    pub total: usize,
}

impl SampledClass {
    fn oriented(&self, escaping: usize) -> Tag {
        if self.tag == Tag::Singular {
            Tag::Singular
        } else if escaping == 0 {
            Tag::BlackHole
        } else if escaping as f64 / self.total as f64 >= tol::ORACLE_FREE_FRACTION {
            Tag::FreeInterior
        } else {
            Tag::Horizon
        }
    }

    pub fn oriented_tag(&self, orientation: Orientation) -> Tag {
        match orientation {
            Orientation::Future => self.oriented(self.future_escaping),
            Orientation::Past => self.oriented(self.past_escaping),
        }
    }

    pub fn fraction(&self, orientation: Orientation) -> f64 {
        let e = match orientation {
            Orientation::Future => self.future_escaping,
            Orientation::Past => self.past_escaping,
        };
        e as f64 / self.total as f64
    }
}

/// Brute-force oracle: follows `n_dirs` sampled rays and solves
/// `T(s) ± Y(s) = 0` from the ray tangent directly.
pub fn classify_sampled(p: &AdSPoint, n_dirs: usize, seed: u64) -> SampledClass {
    let n_dirs = n_dirs.max(16);
    let mut out = SampledClass {
        tag: Tag::Singular,
        future_escaping: 0,
        past_escaping: 0,
        total: n_dirs,
    };
    if is_singular(p) {
        return out;
    }
    let rep = representative(p, Constraint::None, Some(seed)).expect("valid point");
    let (t, y) = (p.vector().t(), p.vector().y());
    let root =
        |offset: f64, slope: f64| (libm::fabs(slope) > tol::DENOMINATOR).then(|| -offset / slope);
    for w in sphere_directions(p.dim(), n_dirs) {
        let v = geodesic_tangent(&rep, &w);
        let roots = [root(t + y, v.t() + v.y()), root(t - y, v.t() - v.y())];
        if !roots.iter().flatten().any(|s| *s > 0.0) {
            out.future_escaping += 1;
        }
        if !roots.iter().flatten().any(|s| *s < 0.0) {
            out.past_escaping += 1;
        }
    }
    // any non-singular placeholder so the per-orientation tags are computed
    out.tag = Tag::FreeInterior;
    out.tag = Tag::combine(
        out.oriented_tag(Orientation::Future),
        out.oriented_tag(Orientation::Past),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{GroupElement, SquareMatrix};
    use approx::assert_abs_diff_eq;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn pt(dim: Dim, c: &[f64]) -> AdSPoint {
        AdSPoint::from_components(dim, c).unwrap()
    }

    fn plain_rep(p: &AdSPoint) -> Representative {
        representative(p, Constraint::None, None).unwrap()
    }

    fn lemma_rep(t: f64, z: f64) -> Representative {
        let d = Dim::ADS4;
        let g = SquareMatrix::from_rows(
            d,
            &[
                &[0.0, 1.0, 0.0, 0.0, 0.0],
                &[t, 0.0, 0.0, 0.0, -z],
                &[0.0, 0.0, 1.0, 0.0, 0.0],
                &[0.0, 0.0, 0.0, 1.0, 0.0],
                &[z, 0.0, 0.0, 0.0, -t],
            ],
        )
        .unwrap();
        Representative::new(
            GroupElement::try_new(g).unwrap(),
            pt(d, &[0.0, t, 0.0, 0.0, z]),
        )
        .unwrap()
    }

    #[test]
    fn branch_data_of_lemma_representative() {
        let (t, z) = (2f64.sqrt(), 1.0);
        let bd = branch_data(&lemma_rep(t, z)).unwrap();
        assert_eq!(bd.aff_plus.normal(), &[0.0, 1.0, -z]);
        assert_eq!(bd.aff_minus.normal(), &[0.0, -1.0, -z]);
        assert_eq!(
            (bd.aff_plus.constant(), bd.aff_minus.constant()),
            (0.0, 0.0)
        );
        let w = Direction::new(Dim::ADS4, &[0.0, 0.6, 0.8]).unwrap();
        let [a, b] = branch_roots(&bd, &w);
        let mut got = [a.unwrap(), b.unwrap()];
        got.sort_by(f64::total_cmp);
        let mut want = [t / (0.8 * z + 0.6), t / (0.8 * z - 0.6)];
        want.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(got[0], want[0], epsilon = 1e-14);
        assert_abs_diff_eq!(got[1], want[1], epsilon = 1e-14);
    }

    #[test]
    fn branch_data_of_b() {
        let b = pt(Dim::ADS3, &[0.0, 1.0, 0.0, 0.0]);
        let bd = branch_data(&plain_rep(&b)).unwrap();
        assert_eq!((bd.offset_plus, bd.offset_minus), (1.0, 1.0));
        assert_eq!(bd.aff_plus.normal(), &[0.0, 1.0]);
        assert_eq!(bd.aff_minus.normal(), &[0.0, -1.0]);
        let w = Direction::new(Dim::ADS3, &[1.0, 0.0]).unwrap();
        assert_eq!(branch_roots(&bd, &w), [None, None]);
        let w = Direction::new(Dim::ADS3, &[0.6, 0.8]).unwrap();
        let [p, m] = branch_roots(&bd, &w);
        let [pn, mn] = branch_roots(&bd, &w.negate());
        assert_eq!((pn.unwrap(), mn.unwrap()), (-p.unwrap(), -m.unwrap()));
    }

    #[test]
    fn singular_point_has_no_branch_data() {
        let r = plain_rep(&AdSPoint::base(Dim::ADS3));
        assert_eq!(branch_data(&r), Err(Error::Singular));
    }

    #[test]
    fn escape_caps_examples() {
        let d = Dim::ADS3;
        let b = escape_caps(&branch_data(&plain_rep(&pt(d, &[0.0, 1.0, 0.0, 0.0]))).unwrap());
        assert_eq!(b.class, IntersectionClass::MeasureZero);
        assert_eq!(b.cap_plus.normal(), &[0.0, 1.0]);
        assert_eq!(b.cap_minus.normal(), &[0.0, -1.0]);
        assert!(b.gap.unwrap().abs() <= 1e-15);

        let c = FRAC_1_SQRT_2;
        let bh = escape_caps(&branch_data(&plain_rep(&pt(d, &[c, c, 0.0, 0.0]))).unwrap());
        assert_eq!(bh.class, IntersectionClass::Empty);

        let f =
            escape_caps(&branch_data(&plain_rep(&pt(d, &[0.0, 2f64.sqrt(), 1.0, 0.0]))).unwrap());
        assert_eq!(f.class, IntersectionClass::HasInterior);
    }

    #[test]
    fn cap_shapes() {
        assert_eq!(SphericalCap::new(&[0.0, 0.0], 0.5).shape(), CapShape::Empty);
        assert_eq!(SphericalCap::new(&[0.0, 0.0], 0.0).shape(), CapShape::Full);
        assert_eq!(SphericalCap::new(&[1.0, 0.0], 2.0).shape(), CapShape::Empty);
        assert_eq!(SphericalCap::new(&[1.0, 0.0], -2.0).shape(), CapShape::Full);
        assert!(matches!(
            SphericalCap::new(&[0.0, 2.0], 2.0).shape(),
            CapShape::Point { .. }
        ));
        match SphericalCap::new(&[0.0, 2.0], 1.0).shape() {
            CapShape::Proper { radius, .. } => {
                assert_abs_diff_eq!(radius, core::f64::consts::FRAC_PI_3, epsilon = 1e-15)
            }
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn degenerate_intersections() {
        use IntersectionClass as C;
        let full = SphericalCap::new(&[0.0, 0.0, 0.0], -1.0);
        let empty = SphericalCap::new(&[0.0, 0.0, 0.0], 1.0);
        let point = SphericalCap::new(&[0.0, 0.0, 1.0], 1.0);
        let upper = SphericalCap::new(&[0.0, 0.0, 1.0], 0.0);
        let lower = SphericalCap::new(&[0.0, 0.0, -1.0], 0.5);
        assert_eq!(intersect(&full, &empty).0, C::Empty);
        assert_eq!(intersect(&full, &upper).0, C::HasInterior);
        assert_eq!(intersect(&full, &point).0, C::MeasureZero);
        assert_eq!(intersect(&point, &upper).0, C::MeasureZero);
        assert_eq!(intersect(&point, &lower).0, C::Empty);
        assert_eq!(intersect(&point, &point).0, C::MeasureZero);
        assert_eq!(intersect(&upper, &lower).0, C::Empty);
        assert_eq!(
            intersect(&upper, &SphericalCap::new(&[0.0, 0.0, -1.0], 0.0)).0,
            C::MeasureZero
        );
        assert_eq!(
            intersect(&upper, &SphericalCap::new(&[1.0, 0.0, 0.0], 0.0)).0,
            C::HasInterior
        );
    }

    #[test]
    fn classify_examples() {
        let d = Dim::ADS3;
        let c = FRAC_1_SQRT_2;
        for seed in 0..5 {
            assert_eq!(
                classify(&pt(d, &[0.0, 1.0, 0.0, 0.0]), seed).tag,
                Tag::Horizon
            );
            assert_eq!(
                classify(&pt(d, &[c, c, 0.0, 0.0]), seed).tag,
                Tag::BlackHole
            );
            assert_eq!(
                classify(&pt(d, &[0.0, 2f64.sqrt(), 1.0, 0.0]), seed).tag,
                Tag::FreeInterior
            );
            assert_eq!(classify(&AdSPoint::base(d), seed).tag, Tag::Singular);
        }
    }

    #[test]
    fn orientations_split_the_horizon() {
        let d = Dim::ADS3;
        let c = FRAC_1_SQRT_2;
        let future = |p: &AdSPoint| classify_oriented(p, 0, Orientation::Future);
        let past = |p: &AdSPoint| classify_oriented(p, 0, Orientation::Past);
        let bh = pt(d, &[c, c, 0.0, 0.0]);
        assert_eq!(
            (future(&bh), past(&bh)),
            (Tag::BlackHole, Tag::FreeInterior)
        );
        let wh = pt(d, &[c, -c, 0.0, 0.0]);
        assert_eq!(
            (future(&wh), past(&wh)),
            (Tag::FreeInterior, Tag::BlackHole)
        );
        assert_eq!(classify(&wh, 0).tag, Tag::BlackHole);
        let h = pt(d, &[1.0, 1.0, 1.0, 0.0]);
        assert_eq!((future(&h), past(&h)), (Tag::Horizon, Tag::FreeInterior));
        let h = pt(d, &[-1.0, 1.0, 1.0, 0.0]);
        assert_eq!((future(&h), past(&h)), (Tag::FreeInterior, Tag::Horizon));
        let b = pt(d, &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!((future(&b), past(&b)), (Tag::Horizon, Tag::Horizon));
        assert_eq!(classify(&b, 0).deciding(), Some(Orientation::Future));
    }

    #[test]
    fn sampled_examples() {
        let d = Dim::ADS3;
        // a measure-zero escape set is seen by at most a few samples
        let b = classify_sampled(&pt(d, &[0.0, 1.0, 0.0, 0.0]), 4096, 0);
        assert!(b.future_escaping <= 2, "{b:?}");
        assert_ne!(b.oriented_tag(Orientation::Future), Tag::FreeInterior);
        let c = FRAC_1_SQRT_2;
        let bh = classify_sampled(&pt(d, &[c, c, 0.0, 0.0]), 4096, 0);
        assert_eq!((bh.tag, bh.future_escaping), (Tag::BlackHole, 0));
        assert_eq!(bh.oriented_tag(Orientation::Past), Tag::FreeInterior);
        let f = classify_sampled(&pt(d, &[0.0, 2f64.sqrt(), 1.0, 0.0]), 4096, 0);
        assert_eq!(f.tag, Tag::FreeInterior);
    }

    #[test]
    fn tangency_direction_escapes() {
        let d = Dim::ADS3;
        let rep = plain_rep(&pt(d, &[0.0, 1.0, 0.0, 0.0]));
        let bd = branch_data(&rep).unwrap();
        let w = escape_caps(&bd).tangency_direction(d).unwrap();
        assert!(w.as_slice()[1].abs() < 1e-12);
    }

    #[test]
    fn directions_are_unit_and_spread() {
        for d in [Dim::ADS3, Dim::ADS4, Dim::ADS5] {
            let dirs = sphere_directions(d, 512);
            assert_eq!(dirs.len(), 512);
            let mut mean = [0.0; 4];
            for w in &dirs {
                for (m, c) in mean.iter_mut().zip(w.as_slice()) {
                    *m += c / 512.0;
                }
            }
            assert!(mean.iter().all(|m| m.abs() < 0.05), "{d} {mean:?}");
        }
    }
}
