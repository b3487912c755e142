//! Pseudo-Euclidean linear algebra on ℝ^{2,l−1}.
//!
//! Coordinates are ordered `(u, t, x, y, z₁, …, z_{l−3})` and the bilinear
//! form is `Q = diag(+1, +1, −1, …, −1)`, so AdS_l is the quadric
//! `u² + t² − x² − y² − Σ zᵢ² = 1`. All vectors and matrices are stored in
//! fixed-size arrays sized for the largest supported dimension (l = 5), so
//! nothing in this module allocates.

use core::fmt;
use core::ops::{Add, Index, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::{tol, Error};

/// Largest ambient size `l + 1`.
pub const MAX_N: usize = 6;

pub const U: usize = 0;
pub const T: usize = 1;
pub const X: usize = 2;
pub const Y: usize = 3;
/// Index of `z₁`; `z_k` sits at `Z + k`.
pub const Z: usize = 4;

/// Dimension `l` of AdS_l, one of 3, 4, 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dim(u8);

impl Dim {
    pub const ADS3: Dim = Dim(3);
    pub const ADS4: Dim = Dim(4);
    pub const ADS5: Dim = Dim(5);

    pub fn new(l: usize) -> Result<Self, Error> {
        match l {
            3..=5 => Ok(Dim(l as u8)),
            _ => Err(Error::UnsupportedDimension(l)),
        }
    }

    /// `l`.
    pub fn l(self) -> usize {
        self.0 as usize
    }

    /// Ambient size `l + 1`.
    pub fn n(self) -> usize {
        self.0 as usize + 1
    }

    /// Number of direction components `l − 1` (directions live on S^{l−2}).
    pub fn directions(self) -> usize {
        self.0 as usize - 1
    }

    /// Number of `z` coordinates, `l − 3`.
    pub fn extra(self) -> usize {
        self.0 as usize - 3
    }

    pub(crate) fn check(self, other: Dim) -> Result<(), Error> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.l(), other.l()))
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdS{}", self.0)
    }
}

/// The diagonal form `η` of signature (2, l−1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Form {
    dim: Dim,
}

impl Form {
    pub fn new(dim: Dim) -> Self {
        Form { dim }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Sign of the `i`-th diagonal entry.
    #[inline]
    pub fn sign(i: usize) -> f64 {
        if i < 2 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn signs(&self) -> [f64; MAX_N] {
        let mut s = [0.0; MAX_N];
        for (i, v) in s.iter_mut().enumerate().take(self.dim.n()) {
            *v = Form::sign(i);
        }
        s
    }

    /// `η` as a matrix.
    pub fn matrix(&self) -> SquareMatrix {
        let mut m = SquareMatrix::zeros(self.dim);
        for i in 0..self.dim.n() {
            m.set(i, i, Form::sign(i));
        }
        m
    }
}

/// A vector of ℝ^{2,l−1}.
#[derive(Clone, Copy, PartialEq)]
pub struct AmbientVector {
    dim: Dim,
    c: [f64; MAX_N],
}

impl fmt::Debug for AmbientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl AmbientVector {
    pub fn new(dim: Dim, components: &[f64]) -> Result<Self, Error> {
        if components.len() != dim.n() {
            return Err(Error::ComponentCount {
                expected: dim.n(),
                got: components.len(),
            });
        }
        let mut c = [0.0; MAX_N];
        c[..dim.n()].copy_from_slice(components);
        Ok(AmbientVector { dim, c })
    }

    pub fn zero(dim: Dim) -> Self {
        AmbientVector {
            dim,
            c: [0.0; MAX_N],
        }
    }

    /// The `i`-th standard basis vector.
    pub fn basis(dim: Dim, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.c[i] = 1.0;
        v
    }

    /// The base point `e_u`.
    pub fn e_u(dim: Dim) -> Self {
        Self::basis(dim, U)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c[..self.dim.n()]
    }

    pub fn set(&mut self, i: usize, value: f64) {
        assert!(i < self.dim.n());
        self.c[i] = value;
    }

    pub fn u(&self) -> f64 {
        self.c[U]
    }
    pub fn t(&self) -> f64 {
        self.c[T]
    }
    pub fn x(&self) -> f64 {
        self.c[X]
    }
    pub fn y(&self) -> f64 {
        self.c[Y]
    }
    /// `z_{k+1}` (zero-based `k`).
    pub fn z(&self, k: usize) -> f64 {
        assert!(k < self.dim.extra());
        self.c[Z + k]
    }

    /// `Q(self, other)` without a dimension check (debug-asserted).
    #[inline]
    pub fn q(&self, other: &AmbientVector) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim.n();
        let mut s = self.c[0] * other.c[0] + self.c[1] * other.c[1];
        for i in 2..n {
            s -= self.c[i] * other.c[i];
        }
        s
    }

    /// `η v`.
    pub fn eta(&self) -> Self {
        let mut v = *self;
        for i in 2..self.dim.n() {
            v.c[i] = -v.c[i];
        }
        v
    }

    /// Euclidean dot product.
    pub fn dot(&self, other: &AmbientVector) -> f64 {
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut v = *self;
        for c in v.c.iter_mut() {
            *c *= s;
        }
        v
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: f64, other: &AmbientVector) -> Self {
        let mut v = *self;
        for i in 0..MAX_N {
            v.c[i] += s * other.c[i];
        }
        v
    }

    pub fn max_abs(&self) -> f64 {
        self.as_slice()
            .iter()
            .fold(0.0, |m, &c| f64::max(m, libm::fabs(c)))
    }

    pub fn max_abs_diff(&self, other: &AmbientVector) -> f64 {
        (*self - *other).max_abs()
    }

    /// The (u,t)-rotation field `(−t, u, 0, …)`: tangent at every point of
    /// the quadric and everywhere time like. It fixes the time orientation.
    pub fn time_field(&self) -> Self {
        let mut v = Self::zero(self.dim);
        v.c[U] = -self.c[T];
        v.c[T] = self.c[U];
        v
    }
}

impl Index<usize> for AmbientVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

impl Add for AmbientVector {
    type Output = AmbientVector;
    fn add(self, rhs: AmbientVector) -> AmbientVector {
        self.axpy(1.0, &rhs)
    }
}

impl Sub for AmbientVector {
    type Output = AmbientVector;
    fn sub(self, rhs: AmbientVector) -> AmbientVector {
        self.axpy(-1.0, &rhs)
    }
}

impl Neg for AmbientVector {
    type Output = AmbientVector;
    fn neg(self) -> AmbientVector {
        self.scale(-1.0)
    }
}

/// `Q(v, w) = Σ sᵢ vᵢ wᵢ`.
pub fn q_form(v: &AmbientVector, w: &AmbientVector) -> Result<f64, Error> {
    v.dim.check(w.dim)?;
    Ok(v.q(w))
}

/// A square `(l+1)×(l+1)` real matrix, row major.
#[derive(Clone, Copy, PartialEq)]
pub struct SquareMatrix {
    dim: Dim,
    m: [[f64; MAX_N]; MAX_N],
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim.n();
        let mut l = f.debug_list();
        for row in &self.m[..n] {
            l.entry(&&row[..n]);
        }
        l.finish()
    }
}

impl SquareMatrix {
    pub fn zeros(dim: Dim) -> Self {
        SquareMatrix {
            dim,
            m: [[0.0; MAX_N]; MAX_N],
        }
    }

    pub fn identity(dim: Dim) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim.n() {
            m.m[i][i] = 1.0;
        }
        m
    }

    /// Builds a matrix from `n` rows of `n` entries.
    pub fn from_rows(dim: Dim, rows: &[&[f64]]) -> Result<Self, Error> {
        let n = dim.n();
        if rows.len() != n {
            return Err(Error::ComponentCount {
                expected: n,
                got: rows.len(),
            });
        }
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ComponentCount {
                    expected: n,
                    got: row.len(),
                });
            }
            m.m[i][..n].copy_from_slice(row);
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[AmbientVector]) -> Self {
        let dim = cols[0].dim;
        assert_eq!(cols.len(), dim.n());
        let mut m = Self::zeros(dim);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..dim.n() {
                m.m[i][j] = c.c[i];
            }
        }
        m
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[i][j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(i < self.dim.n() && j < self.dim.n());
        self.m[i][j] = v;
    }

    pub fn row(&self, i: usize) -> AmbientVector {
        AmbientVector {
            dim: self.dim,
            c: self.m[i],
        }
    }

    pub fn column(&self, j: usize) -> AmbientVector {
        let mut v = AmbientVector::zero(self.dim);
        for i in 0..self.dim.n() {
            v.c[i] = self.m[i][j];
        }
        v
    }

    pub fn set_column(&mut self, j: usize, v: &AmbientVector) {
        for i in 0..self.dim.n() {
            self.m[i][j] = v.c[i];
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim.n() {
            for j in 0..self.dim.n() {
                t.m[j][i] = self.m[i][j];
            }
        }
        t
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut r = *self;
        for row in r.m.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &AmbientVector) -> AmbientVector {
        debug_assert_eq!(self.dim, v.dim);
        let n = self.dim.n();
        let mut out = AmbientVector::zero(self.dim);
        for i in 0..n {
            let mut s = 0.0;
            for j in 0..n {
                s += self.m[i][j] * v.c[j];
            }
            out.c[i] = s;
        }
        out
    }

    /// Commutator `[self, other]`.
    pub fn bracket(&self, other: &SquareMatrix) -> SquareMatrix {
        *self * *other - *other * *self
    }

    pub fn max_abs(&self) -> f64 {
        let n = self.dim.n();
        let mut m: f64 = 0.0;
        for row in &self.m[..n] {
            for v in &row[..n] {
                m = m.max(libm::fabs(*v));
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &SquareMatrix) -> f64 {
        (*self - *other).max_abs()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        let n = self.dim.n();
        self.m[..n]
            .iter()
            .map(|row| row[..n].iter().map(|v| libm::fabs(*v)).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Flattened entries, row major.
    pub fn entries(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.dim.n();
        self.m[..n]
            .iter()
            .flat_map(move |row| row[..n].iter().copied())
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.dim.n();
        let mut a = self.m;
        let mut det = 1.0;
        for k in 0..n {
            let mut p = k;
            for i in k + 1..n {
                if libm::fabs(a[i][k]) > libm::fabs(a[p][k]) {
                    p = i;
                }
            }
            if a[p][k] == 0.0 {
                return 0.0;
            }
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            det *= a[k][k];
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        det
    }
}

impl Add for SquareMatrix {
    type Output = SquareMatrix;
    fn add(self, rhs: SquareMatrix) -> SquareMatrix {
        let mut r = self;
        for i in 0..MAX_N {
            for j in 0..MAX_N {
                r.m[i][j] += rhs.m[i][j];
            }
        }
        r
    }
}

impl Sub for SquareMatrix {
    type Output = SquareMatrix;
    fn sub(self, rhs: SquareMatrix) -> SquareMatrix {
        self + rhs.scale(-1.0)
    }
}

impl Mul for SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: SquareMatrix) -> SquareMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let n = self.dim.n();
        let mut r = SquareMatrix::zeros(self.dim);
        for i in 0..n {
            for k in 0..n {
                let a = self.m[i][k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    r.m[i][j] += a * rhs.m[k][j];
                }
            }
        }
        r
    }
}

/// Which invariant [`validate_element`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    Group,
    Algebra,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValidationReport {
    pub valid: bool,
    /// Largest entrywise violation (for groups, also `|det − 1|`).
    pub residual: f64,
}

/// Checks `gᵀηg = η, det g = 1` (group) or `Xᵀη + ηX = 0` (algebra).
pub fn validate_element(m: &SquareMatrix, kind: ElementKind) -> ValidationReport {
    let eta = Form::new(m.dim).matrix();
    match kind {
        ElementKind::Group => {
            let r = (m.transpose() * eta * *m).max_abs_diff(&eta);
            let r = r.max(libm::fabs(m.det() - 1.0));
            ValidationReport {
                valid: r <= tol::GROUP,
                residual: r,
            }
        }
        ElementKind::Algebra => {
            let r = (m.transpose() * eta + eta * *m).max_abs();
            ValidationReport {
                valid: r <= tol::ALGEBRA,
                residual: r,
            }
        }
    }
}

/// An element of SO(2, l−1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement(SquareMatrix);

impl GroupElement {
    pub fn try_new(m: SquareMatrix) -> Result<Self, Error> {
        let r = validate_element(&m, ElementKind::Group);
        if r.valid {
            Ok(GroupElement(m))
        } else {
            Err(Error::InvalidElement {
                kind: "group",
                residual: r.residual,
            })
        }
    }

    /// Wraps a matrix known to be in the group by construction.
    pub(crate) fn from_matrix_unchecked(m: SquareMatrix) -> Self {
        GroupElement(m)
    }

    pub fn identity(dim: Dim) -> Self {
        GroupElement(SquareMatrix::identity(dim))
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.0
    }

    pub fn dim(&self) -> Dim {
        self.0.dim
    }

    pub fn apply(&self, v: &AmbientVector) -> AmbientVector {
        self.0.mul_vec(v)
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement(self.0 * other.0)
    }

    /// `g⁻¹ = η gᵀ η`.
    pub fn inverse(&self) -> GroupElement {
        let eta = Form::new(self.dim()).matrix();
        GroupElement(eta * self.0.transpose() * eta)
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: GroupElement) -> GroupElement {
        self.compose(&rhs)
    }
}

/// An element of so(2, l−1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraElement(SquareMatrix);

impl AlgebraElement {
    pub fn try_new(m: SquareMatrix) -> Result<Self, Error> {
        let r = validate_element(&m, ElementKind::Algebra);
        if r.valid {
            Ok(AlgebraElement(m))
        } else {
            Err(Error::InvalidElement {
                kind: "algebra",
                residual: r.residual,
            })
        }
    }

    pub(crate) fn from_matrix_unchecked(m: SquareMatrix) -> Self {
        AlgebraElement(m)
    }

    pub fn zero(dim: Dim) -> Self {
        AlgebraElement(SquareMatrix::zeros(dim))
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.0
    }

    pub fn dim(&self) -> Dim {
        self.0.dim
    }

    pub fn scale(&self, s: f64) -> Self {
        AlgebraElement(self.0.scale(s))
    }

    pub fn bracket(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.0.bracket(&other.0))
    }

    pub fn apply(&self, v: &AmbientVector) -> AmbientVector {
        self.0.mul_vec(v)
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.0 + rhs.0)
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.0 - rhs.0)
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(-1.0)
    }
}

/// Seeded point of AdS_l: spatial components `(x, y, z⃗)` are i.i.d.
/// `N(0, σ²)`, the `(u, t)` pair is placed on the circle of radius
/// `√(1 + x² + y² + Σzᵢ²)` at a uniform angle.
pub fn random_point(dim: Dim, seed: u64, sigma: f64) -> AmbientVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_point_with(dim, &mut rng, sigma)
}

/// Seed of the `index`-th item of a seeded stream (one splitmix64 step on
/// `seed ⊕ index`), so items can be generated independently and in parallel.
pub fn stream_seed(seed: u64, index: u64) -> u64 {
    let mut z =
        (seed ^ index.wrapping_mul(0xD6E8_FEB8_6659_FD93)).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn random_point_with<R: Rng + ?Sized>(
    dim: Dim,
    rng: &mut R,
    sigma: f64,
) -> AmbientVector {
    let normal = Normal::new(0.0, sigma.max(0.0)).expect("finite non-negative sigma");
    let mut v = AmbientVector::zero(dim);
    let mut r2 = 1.0;
    for i in X..dim.n() {
        let s: f64 = normal.sample(rng);
        v.c[i] = s;
        r2 += s * s;
    }
    let r = libm::sqrt(r2);
    let phi = rng.random::<f64>() * core::f64::consts::TAU;
    v.c[U] = r * libm::cos(phi);
    v.c[T] = r * libm::sin(phi);
    v
}

fn orthogonalize(v: &AmbientVector, frame: &[AmbientVector]) -> AmbientVector {
    // Two passes of η-Gram–Schmidt against an η-orthonormal frame.
    let mut c = *v;
    for _ in 0..2 {
        for f in frame {
            c = c.axpy(-c.q(f) / f.q(f), f);
        }
    }
    c
}

/// Completes `p` (column 0) to an η-orthonormal frame.
///
/// `fixed` pins chosen slots to given η-unit vectors (assumed orthogonal to
/// `p` and to each other). The time slot 1, when free, is the normalized
/// projection of [`AmbientVector::time_field`], so the resulting rays
/// `g·(1, −s, s w̄)` are future directed for `s > 0`. Remaining spatial slots
/// are filled in increasing order by projecting every unused standard basis
/// vector and keeping the one with largest `−Q(c, c)`; ties go to the lower
/// index. A final sign flip of the last free spatial column fixes `det = +1`.
pub(crate) fn complete_frame(p: &AmbientVector, fixed: &[(usize, AmbientVector)]) -> GroupElement {
    let dim = p.dim;
    let n = dim.n();
    let mut slots: [Option<AmbientVector>; MAX_N] = [None; MAX_N];
    slots[0] = Some(*p);
    for (slot, v) in fixed {
        slots[*slot] = Some(*v);
    }
    let mut frame: [AmbientVector; MAX_N] = [AmbientVector::zero(dim); MAX_N];
    let mut len = 0;
    for v in slots.iter().flatten() {
        frame[len] = *v;
        len += 1;
    }
    if slots[T].is_none() {
        let tau = orthogonalize(&p.time_field(), &frame[..len]);
        let tau = tau.scale(1.0 / libm::sqrt(tau.q(&tau)));
        slots[T] = Some(tau);
        frame[len] = tau;
        len += 1;
    }
    let mut used = [false; MAX_N];
    let mut last_free = None;
    for slot in 2..n {
        if slots[slot].is_some() {
            continue;
        }
        last_free = Some(slot);
        let mut best: Option<(usize, AmbientVector, f64)> = None;
        for (j, taken) in used.iter().enumerate().take(n) {
            if *taken {
                continue;
            }
            let c = orthogonalize(&AmbientVector::basis(dim, j), &frame[..len]);
            let score = -c.q(&c);
            if best.as_ref().is_none_or(|b| score > b.2) {
                best = Some((j, c, score));
            }
        }
        let (j, c, score) = best.expect("a spatial candidate always remains");
        used[j] = true;
        let c = c.scale(1.0 / libm::sqrt(score));
        slots[slot] = Some(c);
        frame[len] = c;
        len += 1;
    }
    let cols: alloc::vec::Vec<AmbientVector> = slots[..n].iter().map(|s| s.unwrap()).collect();
    let mut m = SquareMatrix::from_columns(&cols);
    if m.det() < 0.0 {
        if let Some(j) = last_free {
            let c = m.column(j);
            m.set_column(j, &-c);
        }
    }
    GroupElement(m)
}

/// A group element whose first column is `v`.
pub fn eta_complete(v: &AmbientVector) -> Result<GroupElement, Error> {
    let q = v.q(v);
    if libm::fabs(q - 1.0) > tol::QUADRIC {
        return Err(Error::NotOnQuadric(q));
    }
    Ok(complete_frame(v, &[]))
}

/// Matrix exponential of an algebra element.
///
/// Single boosts and rotations use their cosh/sinh (cos/sin) closed form,
/// nilpotent elements the finite series, and everything else scaling and
/// squaring of a truncated Taylor series.
pub fn mat_exp(x: &AlgebraElement) -> GroupElement {
    let m = x.matrix();
    if let Some(e) = exp_plane(m) {
        return GroupElement(e);
    }
    if let Some(e) = exp_nilpotent(m) {
        return GroupElement(e);
    }
    GroupElement(exp_series(m))
}

fn exp_plane(m: &SquareMatrix) -> Option<SquareMatrix> {
    let n = m.dim.n();
    let mut nz = [(0usize, 0usize); 3];
    let mut count = 0;
    for i in 0..n {
        for j in 0..n {
            if m.m[i][j] != 0.0 {
                if count == 2 {
                    return None;
                }
                nz[count] = (i, j);
                count += 1;
            }
        }
    }
    if count != 2 {
        return None;
    }
    let (i, j) = nz[0];
    if nz[1] != (j, i) || i == j {
        return None;
    }
    let a = m.m[i][j];
    let b = m.m[j][i];
    let mut e = SquareMatrix::identity(m.dim);
    if a == b {
        let (c, s) = (libm::cosh(a), libm::sinh(a));
        e.m[i][i] = c;
        e.m[j][j] = c;
        e.m[i][j] = s;
        e.m[j][i] = s;
    } else if a == -b {
        let (c, s) = (libm::cos(a), libm::sin(a));
        e.m[i][i] = c;
        e.m[j][j] = c;
        e.m[i][j] = s;
        e.m[j][i] = -s;
    } else {
        return None;
    }
    Some(e)
}

fn exp_nilpotent(m: &SquareMatrix) -> Option<SquareMatrix> {
    let n = m.dim.n();
    let scale = m.max_abs().max(1.0);
    let mut sum = SquareMatrix::identity(m.dim);
    let mut power = SquareMatrix::identity(m.dim);
    let mut factorial = 1.0;
    let mut bound = 1.0;
    for k in 1..=n {
        power = power * *m;
        bound *= scale;
        if power.max_abs() <= 1e-14 * bound {
            return Some(sum);
        }
        factorial *= k as f64;
        sum = sum + power.scale(1.0 / factorial);
    }
    None
}

fn exp_series(m: &SquareMatrix) -> SquareMatrix {
    let norm = m.norm_inf();
    let mut squarings = 0;
    let mut s = 1.0;
    while norm * s > 0.5 {
        s *= 0.5;
        squarings += 1;
    }
    let a = m.scale(s);
    let mut sum = SquareMatrix::identity(m.dim);
    let mut term = SquareMatrix::identity(m.dim);
    for k in 1..40 {
        term = (term * a).scale(1.0 / k as f64);
        sum = sum + term;
        if term.max_abs() <= 1e-17 * sum.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}
