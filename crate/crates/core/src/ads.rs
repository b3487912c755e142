//! Points of AdS_l, their representatives, the inclusion ι, the SL(2,ℝ)
//! chart ψ, the singularity and light-like geodesics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ambient::{
    complete_frame, eta_complete, mat_exp, AlgebraElement, AmbientVector, Dim, GroupElement,
    SquareMatrix, T, U, X, Y,
};
use crate::lie::stabilizer_basis;
use crate::{tol, Error};

/// A point of the quadric `Q(p, p) = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdSPoint(AmbientVector);

impl AdSPoint {
    pub fn new(v: AmbientVector) -> Result<Self, Error> {
        let q = v.q(&v);
        if libm::fabs(q - 1.0) > tol::QUADRIC {
            return Err(Error::NotOnQuadric(q));
        }
        Ok(AdSPoint(v))
    }

    pub fn from_components(dim: Dim, c: &[f64]) -> Result<Self, Error> {
        Self::new(AmbientVector::new(dim, c)?)
    }

    pub fn base(dim: Dim) -> Self {
        AdSPoint(AmbientVector::e_u(dim))
    }

    pub fn vector(&self) -> &AmbientVector {
        &self.0
    }

    pub fn dim(&self) -> Dim {
        self.0.dim()
    }

    /// `t² − y²`.
    pub fn singular_residual(&self) -> f64 {
        self.0.t() * self.0.t() - self.0.y() * self.0.y()
    }
}

/// A group element `g` together with the point `g·e_u` it represents.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Representative {
    g: GroupElement,
    point: AdSPoint,
}

impl Representative {
    /// Checks `g·e_u = p` componentwise.
    pub fn new(g: GroupElement, point: AdSPoint) -> Result<Self, Error> {
        point.dim().check(g.dim())?;
        let r = g.matrix().column(U).max_abs_diff(point.vector());
        if r > tol::QUADRIC {
            return Err(Error::InvalidElement {
                kind: "representative",
                residual: r,
            });
        }
        Ok(Representative { g, point })
    }

    pub fn group(&self) -> &GroupElement {
        &self.g
    }

    pub fn point(&self) -> &AdSPoint {
        &self.point
    }

    /// Row `i` of `g`.
    pub fn row(&self, i: usize) -> AmbientVector {
        self.g.matrix().row(i)
    }
}

/// `[g] = g·e_u`.
pub fn project(g: &GroupElement) -> AdSPoint {
    let v = g.matrix().column(U);
    debug_assert!(libm::fabs(v.q(&v) - 1.0) <= 1e-6);
    AdSPoint(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    None,
    /// t-row and y-row entries of column 2 satisfy `b ≠ ±b′`.
    BNeqPmBprime,
}

const MAX_RETRIES: u32 = 64;

/// Random orthochronous element of the stabilizer, `exp` of a random
/// combination of the stabilizer plane generators with coefficients in
/// `[−1, 1]`.
pub fn random_stabilizer<R: Rng + ?Sized>(dim: Dim, rng: &mut R) -> GroupElement {
    let mut x = AlgebraElement::zero(dim);
    for b in stabilizer_basis(dim) {
        let c = rng.random::<f64>() * 2.0 - 1.0;
        x = x + b.scale(c);
    }
    mat_exp(&x)
}

fn satisfies(g: &GroupElement, constraint: Constraint) -> bool {
    match constraint {
        Constraint::None => true,
        Constraint::BNeqPmBprime => {
            let (b, bp) = (g.matrix().get(T, X), g.matrix().get(Y, X));
            libm::fabs(b - bp) >= tol::B_SEPARATION && libm::fabs(b + bp) >= tol::B_SEPARATION
        }
    }
}

/// A representative of `p`.
///
/// Without a seed this is [`eta_complete`]. With a seed the frame is
/// post-composed with a seeded random orthochronous stabilizer element, so
/// the future cone is preserved. If the constraint fails, further random
/// stabilizer elements are drawn from the same stream.
pub fn representative(
    p: &AdSPoint,
    constraint: Constraint,
    seed: Option<u64>,
) -> Result<Representative, Error> {
    let base = eta_complete(p.vector())?;
    let dim = p.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
    let mut g = match seed {
        Some(_) => base.compose(&random_stabilizer(dim, &mut rng)),
        None => base,
    };
    let mut attempts = 0;
    while !satisfies(&g, constraint) {
        if attempts == MAX_RETRIES {
            return Err(Error::RepresentativeExhausted(MAX_RETRIES));
        }
        g = base.compose(&random_stabilizer(dim, &mut rng));
        attempts += 1;
    }
    Ok(Representative { g, point: *p })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialMode {
    /// t-row and y-row vanish in column 1; needs `|u| < |x|`.
    AZero,
    /// t-row and y-row vanish in column 2; needs `|u| > |x|`.
    CZero,
}

/// Representatives of an AdS₃ point with a column `(α, 0, β, 0)` where
/// `α² − β² = ±1` and `uα − xβ = 0`.
pub fn special_representative(p: &AdSPoint, mode: SpecialMode) -> Result<Representative, Error> {
    Dim::ADS3.check(p.dim())?;
    let v = p.vector();
    let (u, x) = (v.u(), v.x());
    let gap = u * u - x * x;
    if libm::fabs(gap) <= 1e-12 {
        return Err(Error::HorizonCase);
    }
    let dim = p.dim();
    // (α, β) ∝ (x, u) solves uα − xβ = 0
    let mut col = AmbientVector::zero(dim);
    let fixed = match mode {
        SpecialMode::AZero => {
            if gap > 0.0 {
                return Err(Error::WrongRegime("|u| < |x|"));
            }
            let r = libm::sqrt(-gap);
            // orient the time column with the time field: Q(T(p), col) = −tα > 0
            let s = if v.t() > 0.0 { -1.0 } else { 1.0 };
            col.set(U, s * x / r);
            col.set(X, s * u / r);
            (T, col)
        }
        SpecialMode::CZero => {
            if gap < 0.0 {
                return Err(Error::WrongRegime("|u| > |x|"));
            }
            let r = libm::sqrt(gap);
            col.set(U, x / r);
            col.set(X, u / r);
            (X, col)
        }
    };
    let g = complete_frame(v, &[fixed]);
    Representative::new(g, *p)
}

/// ι on points: append a zero coordinate.
pub fn iota_point(p: &AdSPoint) -> Result<AdSPoint, Error> {
    Dim::ADS3.check(p.dim())?;
    let mut c = [0.0; 5];
    c[..4].copy_from_slice(p.vector().as_slice());
    AdSPoint::from_components(Dim::ADS4, &c)
}

/// ι on matrices: add a last row and column of zeros with 1 on the diagonal.
pub fn iota_group(g: &GroupElement) -> Result<GroupElement, Error> {
    Dim::ADS3.check(g.dim())?;
    let mut m = SquareMatrix::identity(Dim::ADS4);
    for i in 0..4 {
        for j in 0..4 {
            m.set(i, j, g.matrix().get(i, j));
        }
    }
    Ok(GroupElement::from_matrix_unchecked(m))
}

/// ι on representatives.
pub fn iota_representative(r: &Representative) -> Result<Representative, Error> {
    Ok(Representative {
        g: iota_group(&r.g)?,
        point: iota_point(&r.point)?,
    })
}

/// A unimodular 2×2 matrix `[[m11, m12], [m21, m22]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SL2Matrix {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl SL2Matrix {
    pub fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Result<Self, Error> {
        let m = SL2Matrix { m11, m12, m21, m22 };
        let det = m.det();
        if libm::fabs(det - 1.0) > 1e-12 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(m)
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn max_abs_diff(&self, o: &SL2Matrix) -> f64 {
        [
            self.m11 - o.m11,
            self.m12 - o.m12,
            self.m21 - o.m21,
            self.m22 - o.m22,
        ]
        .iter()
        .fold(0.0, |m, d| f64::max(m, libm::fabs(*d)))
    }
}

/// ψ: `[[u+x, y+t], [y−t, u−x]] ↦ (u, t, x, y)`.
pub fn psi(m: &SL2Matrix) -> AdSPoint {
    let u = 0.5 * (m.m11 + m.m22);
    let x = 0.5 * (m.m11 - m.m22);
    let y = 0.5 * (m.m12 + m.m21);
    let t = 0.5 * (m.m12 - m.m21);
    AdSPoint(AmbientVector::new(Dim::ADS3, &[u, t, x, y]).expect("four components"))
}

pub fn psi_inv(p: &AmbientVector) -> Result<SL2Matrix, Error> {
    Dim::ADS3.check(p.dim())?;
    let q = p.q(p);
    if libm::fabs(q - 1.0) > tol::QUADRIC {
        return Err(Error::NotOnQuadric(q));
    }
    Ok(SL2Matrix {
        m11: p.u() + p.x(),
        m12: p.y() + p.t(),
        m21: p.y() - p.t(),
        m22: p.u() - p.x(),
    })
}

/// `|t² − y²| ≤ τ_sing`.
pub fn is_singular(p: &AdSPoint) -> bool {
    libm::fabs(p.singular_residual()) <= tol::SINGULAR
}

/// A unit direction `w̄ ∈ S^{l−2}` of light-like rays.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    dim: Dim,
    c: [f64; 4],
}

impl Direction {
    pub fn new(dim: Dim, c: &[f64]) -> Result<Self, Error> {
        if c.len() != dim.directions() {
            return Err(Error::ComponentCount {
                expected: dim.directions(),
                got: c.len(),
            });
        }
        let norm = libm::sqrt(c.iter().map(|v| v * v).sum());
        if libm::fabs(norm - 1.0) > tol::UNIT {
            return Err(Error::NonUnitDirection(norm));
        }
        let mut d = [0.0; 4];
        d[..c.len()].copy_from_slice(c);
        Ok(Direction { dim, c: d })
    }

    /// Normalizes `c`; `None` for the zero vector.
    pub fn normalized(dim: Dim, c: &[f64]) -> Option<Self> {
        assert_eq!(c.len(), dim.directions());
        let norm = libm::sqrt(c.iter().map(|v| v * v).sum());
        if norm == 0.0 || !norm.is_finite() {
            return None;
        }
        let mut d = [0.0; 4];
        for (o, v) in d.iter_mut().zip(c) {
            *o = v / norm;
        }
        Some(Direction { dim, c: d })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c[..self.dim.directions()]
    }

    pub fn negate(&self) -> Self {
        let mut d = *self;
        for v in d.c.iter_mut() {
            *v = -*v;
        }
        d
    }

    /// The null vector `(0, −1, w̄)` at the base point.
    pub fn null_vector(&self) -> AmbientVector {
        let mut v = AmbientVector::zero(self.dim);
        v.set(T, -1.0);
        for (i, c) in self.as_slice().iter().enumerate() {
            v.set(X + i, *c);
        }
        v
    }
}

/// `g·(1, −s, s w̄)`; `s > 0` is the future.
pub fn geodesic_point(rep: &Representative, w: &Direction, s: f64) -> AdSPoint {
    let v = AmbientVector::e_u(w.dim).axpy(s, &w.null_vector());
    AdSPoint(rep.g.apply(&v))
}

/// Tangent `g·(0, −1, w̄)` of the ray at `s = 0`.
pub fn geodesic_tangent(rep: &Representative, w: &Direction) -> AmbientVector {
    rep.g.apply(&w.null_vector())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangentClass {
    Time,
    Space,
    Light,
}

pub fn tangent_class(p: &AdSPoint, v: &AmbientVector) -> Result<TangentClass, Error> {
    p.dim().check(v.dim())?;
    let tangency = p.vector().q(v);
    if libm::fabs(tangency) > tol::TANGENT {
        return Err(Error::NotTangent(tangency));
    }
    let n = v.q(v);
    Ok(if n > tol::LIGHT {
        TangentClass::Time
    } else if n < -tol::LIGHT {
        TangentClass::Space
    } else {
        TangentClass::Light
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{validate_element, ElementKind, Z};
    use crate::lie::{generator, k_theta, Generator};
    use approx::assert_abs_diff_eq;

    fn pt(dim: Dim, c: &[f64]) -> AdSPoint {
        AdSPoint::from_components(dim, c).unwrap()
    }

    #[test]
    fn project_examples() {
        let d = Dim::ADS4;
        assert_eq!(project(&GroupElement::identity(d)), AdSPoint::base(d));
        let e = mat_exp(&generator(Generator::J2, d).scale(0.8));
        let p = project(&e);
        assert_eq!(
            p.vector().as_slice(),
            &[0.8f64.cosh(), 0.0, 0.8f64.sinh(), 0.0, 0.0]
        );
        assert_eq!(
            project(&k_theta(d)).vector().as_slice(),
            &[-1.0, 0.0, 0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn representative_of_base_point() {
        let r = representative(&AdSPoint::base(Dim::ADS3), Constraint::None, None).unwrap();
        assert_eq!(*r.group(), GroupElement::identity(Dim::ADS3));
    }

    #[test]
    fn constrained_representative() {
        let b = pt(Dim::ADS3, &[0.0, 1.0, 0.0, 0.0]);
        let r = representative(&b, Constraint::BNeqPmBprime, None).unwrap();
        let (bb, bp) = (r.group().matrix().get(T, X), r.group().matrix().get(Y, X));
        assert!((bb - bp).abs() >= 1e-6 && (bb + bp).abs() >= 1e-6);
        assert!(r.group().matrix().column(U).max_abs_diff(b.vector()) <= 1e-12);
        assert!(validate_element(r.group().matrix(), ElementKind::Group).valid);
    }

    #[test]
    fn seeded_representatives_keep_orientation() {
        let t = (1.0f64 - 0.25 + 1.0 + 0.0625 + 0.49).sqrt();
        let p = pt(Dim::ADS4, &[0.5, t, 1.0, 0.25, 0.7]);
        for seed in 0..20 {
            let r = representative(&p, Constraint::None, Some(seed)).unwrap();
            assert!(r.group().matrix().column(U).max_abs_diff(p.vector()) <= 1e-12);
            assert!(validate_element(r.group().matrix(), ElementKind::Group).residual <= 1e-11);
            assert!(p.vector().time_field().q(&r.group().matrix().column(T)) > 0.0);
        }
    }

    #[test]
    fn special_representatives() {
        let p = pt(Dim::ADS3, &[0.0, 2f64.sqrt(), 1.0, 0.0]);
        let r = special_representative(&p, SpecialMode::AZero).unwrap();
        let m = r.group().matrix();
        assert_eq!((m.get(T, T), m.get(Y, T)), (0.0, 0.0));
        assert!(validate_element(m, ElementKind::Group).residual <= 1e-12);
        assert!(p.vector().time_field().q(&m.column(T)) > 0.0);

        // |u| > |x|
        let (u, x, y): (f64, f64, f64) = (1.5, 0.5, -0.3);
        let t = (1.0 - u * u + x * x + y * y).sqrt();
        let p = pt(Dim::ADS3, &[u, t, x, y]);
        let r = special_representative(&p, SpecialMode::CZero).unwrap();
        let m = r.group().matrix();
        assert_eq!((m.get(T, X), m.get(Y, X)), (0.0, 0.0));
        assert!(validate_element(m, ElementKind::Group).residual <= 1e-12);
        assert_eq!(
            special_representative(&p, SpecialMode::AZero),
            Err(Error::WrongRegime("|u| < |x|"))
        );

        let h = pt(Dim::ADS3, &[1.0, 1.0, 1.0, 0.0]);
        assert_eq!(
            special_representative(&h, SpecialMode::CZero),
            Err(Error::HorizonCase)
        );
    }

    #[test]
    fn iota_examples() {
        let p = pt(Dim::ADS3, &[0.0, 2f64.sqrt(), 1.0, 0.0]);
        let ip = iota_point(&p).unwrap();
        assert_eq!(ip.vector().as_slice(), &[0.0, 2f64.sqrt(), 1.0, 0.0, 0.0]);
        assert_eq!(ip.vector().q(ip.vector()), p.vector().q(p.vector()));
        let r = representative(&p, Constraint::None, Some(3)).unwrap();
        let ig = iota_group(r.group()).unwrap();
        assert_eq!(project(&ig), ip);
        assert_eq!(ig.matrix().get(Z, Z), 1.0);
        assert!(iota_point(&ip).is_err());
    }

    #[test]
    fn psi_examples() {
        let id = SL2Matrix::new(1.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(psi(&id), AdSPoint::base(Dim::ADS3));
        let l = 0.6f64;
        let p = psi(&SL2Matrix::new(l.exp(), 0.0, 0.0, (-l).exp()).unwrap());
        assert_abs_diff_eq!(p.vector().u(), l.cosh(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.vector().x(), l.sinh(), epsilon = 1e-15);
        assert_eq!((p.vector().t(), p.vector().y()), (0.0, 0.0));
        let bad = AmbientVector::new(Dim::ADS3, &[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(psi_inv(&bad), Err(Error::NotOnQuadric(2.0)));
        assert!(SL2Matrix::new(2.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn singularity_examples() {
        assert!(is_singular(&AdSPoint::base(Dim::ADS3)));
        assert!(!is_singular(&pt(Dim::ADS3, &[0.0, 1.0, 0.0, 0.0])));
        assert!(is_singular(&pt(Dim::ADS3, &[-1.0, 0.0, 0.0, 0.0])));
        assert!(is_singular(&project(&k_theta(Dim::ADS4))));
    }

    #[test]
    fn geodesic_examples() {
        let d = Dim::ADS4;
        let rep = representative(&AdSPoint::base(d), Constraint::None, None).unwrap();
        let w = Direction::new(d, &[0.0, 0.6, 0.8]).unwrap();
        let q = geodesic_point(&rep, &w, 2.0);
        assert_eq!(q.vector().as_slice(), &[1.0, -2.0, 0.0, 1.2, 1.6]);
        assert_eq!(geodesic_point(&rep, &w, 0.0), *rep.point());

        // the representative of (0, t, 0, 0, z) used for the exclusion lemma
        let (t, z) = (1.25f64, 0.75f64);
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
        let g = GroupElement::try_new(g).unwrap();
        let rep = Representative::new(g, pt(d, &[0.0, t, 0.0, 0.0, z])).unwrap();
        let s = 0.4;
        let q = geodesic_point(&rep, &w, s);
        assert_abs_diff_eq!(q.vector().t(), t - s * z * 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(q.vector().y(), s * 0.6, epsilon = 1e-15);
    }

    #[test]
    fn tangent_classes() {
        let d = Dim::ADS3;
        let e = AdSPoint::base(d);
        let b = |i| AmbientVector::basis(d, i);
        assert_eq!(tangent_class(&e, &b(T)), Ok(TangentClass::Time));
        assert_eq!(tangent_class(&e, &b(X)), Ok(TangentClass::Space));
        let w = Direction::new(d, &[0.6, -0.8]).unwrap();
        assert_eq!(tangent_class(&e, &w.null_vector()), Ok(TangentClass::Light));
        assert_eq!(tangent_class(&e, &b(U)), Err(Error::NotTangent(1.0)));
    }
}
