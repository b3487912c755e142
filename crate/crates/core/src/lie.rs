//! Generators of so(2, l−1): the Cartan algebra `A = span{J₁, J₂}`, the
//! restricted root vectors `X_{αβ}`, the light-cone generators `E(w)`, the
//! involutions σ and θ, and the Iwasawa pieces `N` and `N̄`.

use alloc::vec::Vec;

use crate::ambient::{
    AlgebraElement, AmbientVector, Dim, Form, GroupElement, SquareMatrix, MAX_N, T, U, X, Y, Z,
};
use crate::{tol, Error};

/// Generators of the Cartan subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Boost in the (t, y) plane; in the stabilizer of `e_u`.
    J1,
    /// Boost in the (u, x) plane.
    J2,
}

/// Restricted root `(α, β)`: `[J₁, X] = αX`, `[J₂, X] = βX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootLabel {
    pub alpha: i8,
    pub beta: i8,
}

impl RootLabel {
    pub const fn new(alpha: i8, beta: i8) -> Self {
        RootLabel { alpha, beta }
    }

    pub fn negate(self) -> Self {
        RootLabel::new(-self.alpha, -self.beta)
    }

    pub fn validate(self, dim: Dim) -> Result<Self, Error> {
        let ok_entry = |v: i8| (-1..=1).contains(&v);
        let zero_entry = self.alpha == 0 || self.beta == 0;
        let ok = ok_entry(self.alpha)
            && ok_entry(self.beta)
            && !(self.alpha == 0 && self.beta == 0)
            && (!zero_entry || dim.l() >= 4);
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidRootLabel {
                alpha: self.alpha,
                beta: self.beta,
                l: dim.l(),
            })
        }
    }

    /// Number of independent root vectors with this label (`l − 3` for
    /// labels with a zero entry, one otherwise).
    pub fn multiplicity(self, dim: Dim) -> usize {
        if self.alpha == 0 || self.beta == 0 {
            dim.extra()
        } else {
            1
        }
    }

    /// Positivity, lexicographic in `(α, β)`.
    pub fn is_positive(self) -> bool {
        self.alpha > 0 || (self.alpha == 0 && self.beta > 0)
    }

    /// All labels valid in dimension `dim`.
    pub fn all(dim: Dim) -> Vec<RootLabel> {
        let mut out = Vec::new();
        for alpha in -1..=1 {
            for beta in -1..=1 {
                let r = RootLabel::new(alpha, beta);
                if r.validate(dim).is_ok() {
                    out.push(r);
                }
            }
        }
        out
    }
}

/// Elementary generator on the `(i, j)` plane: a boost when the two
/// coordinates have different signature signs, a rotation otherwise.
pub fn plane_generator(dim: Dim, i: usize, j: usize) -> AlgebraElement {
    assert!(i != j && i < dim.n() && j < dim.n());
    let mut m = SquareMatrix::zeros(dim);
    m.set(i, j, 1.0);
    if Form::sign(i) == Form::sign(j) {
        m.set(j, i, -1.0);
    } else {
        m.set(j, i, 1.0);
    }
    AlgebraElement::from_matrix_unchecked(m)
}

pub fn generator(which: Generator, dim: Dim) -> AlgebraElement {
    match which {
        Generator::J1 => plane_generator(dim, T, Y),
        Generator::J2 => plane_generator(dim, U, X),
    }
}

// v(ηw)ᵀ − w(ηv)ᵀ. Lies in the algebra for any v, w, and ad(J) acts on it
// as a derivation of v ∧ w.
fn wedge(v: &AmbientVector, w: &AmbientVector) -> SquareMatrix {
    let dim = v.dim();
    let (ev, ew) = (v.eta(), w.eta());
    let mut m = SquareMatrix::zeros(dim);
    for i in 0..dim.n() {
        for j in 0..dim.n() {
            m.set(i, j, v[i] * ew[j] - w[i] * ev[j]);
        }
    }
    m
}

/// `X_{αβ}` using `z₁` for labels with a zero entry.
pub fn root_vector(label: RootLabel, dim: Dim) -> Result<AlgebraElement, Error> {
    root_vector_at(label, dim, 0)
}

/// `X_{αβ}`; `copy` selects `z_{copy+1}` for labels with a zero entry.
///
/// Built from the null vectors `v_β = e_u + β e_x` and `w_α = e_t + α e_y`
/// (a `z` axis replaces the one with zero weight) as `v ∧ w`. The factors are
/// swapped when `α = 0`; with these signs `exp(a X₀₊)` shifts `z` by
/// `a(u − x)` and `exp(a X₊₊)` sends `e_t` to `(a, 1, a, 0)`.
pub fn root_vector_at(label: RootLabel, dim: Dim, copy: usize) -> Result<AlgebraElement, Error> {
    label.validate(dim)?;
    let zero = label.alpha == 0 || label.beta == 0;
    if zero && copy >= dim.extra() || !zero && copy > 0 {
        return Err(Error::InvalidRootLabel {
            alpha: label.alpha,
            beta: label.beta,
            l: dim.l(),
        });
    }
    let z = AmbientVector::basis(dim, Z + copy);
    let v = if label.beta == 0 {
        z
    } else {
        AmbientVector::basis(dim, U).axpy(label.beta as f64, &AmbientVector::basis(dim, X))
    };
    let w = if label.alpha == 0 {
        z
    } else {
        AmbientVector::basis(dim, T).axpy(label.alpha as f64, &AmbientVector::basis(dim, Y))
    };
    let m = if label.alpha == 0 {
        wedge(&w, &v)
    } else {
        wedge(&v, &w)
    };
    Ok(AlgebraElement::from_matrix_unchecked(m))
}

/// `E(w)`: first row `(0, 1, w)`, first column `(0, −1, w)ᵀ`.
pub fn cone_generator(dim: Dim, w: &[f64]) -> Result<AlgebraElement, Error> {
    if w.len() != dim.directions() {
        return Err(Error::ComponentCount {
            expected: dim.directions(),
            got: w.len(),
        });
    }
    let norm = libm::sqrt(w.iter().map(|c| c * c).sum());
    if libm::fabs(norm - 1.0) > tol::UNIT {
        return Err(Error::NonUnitDirection(norm));
    }
    let mut m = SquareMatrix::zeros(dim);
    m.set(U, T, 1.0);
    m.set(T, U, -1.0);
    for (i, &c) in w.iter().enumerate() {
        m.set(U, X + i, c);
        m.set(X + i, U, c);
    }
    Ok(AlgebraElement::from_matrix_unchecked(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    /// Conjugation by `diag(−1, 1, …, 1)`; fixes the stabilizer algebra.
    Sigma,
    /// Conjugation by `k_θ`; the Cartan involution.
    Theta,
}

pub fn k_theta(dim: Dim) -> GroupElement {
    let mut m = SquareMatrix::identity(dim);
    m.set(U, U, -1.0);
    m.set(T, T, -1.0);
    GroupElement::from_matrix_unchecked(m)
}

pub fn involution(kind: Involution, x: &AlgebraElement) -> AlgebraElement {
    let dim = x.dim();
    let mut s = [1.0; MAX_N];
    s[U] = -1.0;
    if kind == Involution::Theta {
        s[T] = -1.0;
    }
    // conjugation by a diagonal ±1 matrix
    let mut m = *x.matrix();
    for i in 0..dim.n() {
        for j in 0..dim.n() {
            m.set(i, j, s[i] * s[j] * m.get(i, j));
        }
    }
    AlgebraElement::from_matrix_unchecked(m)
}

/// `Ad(g) X = g X g⁻¹`.
pub fn adjoint(g: &GroupElement, x: &AlgebraElement) -> AlgebraElement {
    let m = *g.matrix() * *x.matrix() * *g.inverse().matrix();
    AlgebraElement::from_matrix_unchecked(m)
}

/// Plane generators of so(2, l−1).
pub fn algebra_basis(dim: Dim) -> Vec<AlgebraElement> {
    let mut out = Vec::new();
    for i in 0..dim.n() {
        for j in i + 1..dim.n() {
            out.push(plane_generator(dim, i, j));
        }
    }
    out
}

/// Plane generators of the stabilizer so(1, l−1) of `e_u`.
pub fn stabilizer_basis(dim: Dim) -> Vec<AlgebraElement> {
    let mut out = Vec::new();
    for i in 1..dim.n() {
        for j in i + 1..dim.n() {
            out.push(plane_generator(dim, i, j));
        }
    }
    out
}

/// Iwasawa data `A`, `N`, `N̄ = θN`.
#[derive(Clone, Debug)]
pub struct IwasawaBasis {
    pub dim: Dim,
    pub a: [AlgebraElement; 2],
    pub n: Vec<(RootLabel, AlgebraElement)>,
    pub nbar: Vec<(RootLabel, AlgebraElement)>,
}

impl IwasawaBasis {
    pub fn n_elements(&self) -> impl Iterator<Item = &AlgebraElement> {
        self.n.iter().map(|(_, x)| x)
    }

    pub fn nbar_elements(&self) -> impl Iterator<Item = &AlgebraElement> {
        self.nbar.iter().map(|(_, x)| x)
    }

    pub fn contains_n(&self, label: RootLabel) -> bool {
        self.n.iter().any(|(l, _)| *l == label)
    }

    pub fn contains_nbar(&self, label: RootLabel) -> bool {
        self.nbar.iter().any(|(l, _)| *l == label)
    }
}

/// `N` collects the root vectors of positive roots (lexicographic in
/// `(α, β)`), `N̄` those of negative roots. With this order `AN` preserves
/// the sheet `t = y` of the singularity and `AN̄` the sheet `t = −y`.
pub fn iwasawa_basis(dim: Dim) -> IwasawaBasis {
    let mut n = Vec::new();
    let mut nbar = Vec::new();
    for label in RootLabel::all(dim) {
        for copy in 0..label.multiplicity(dim) {
            let x = root_vector_at(label, dim, copy).expect("valid label");
            if label.is_positive() {
                n.push((label, x));
            } else {
                nbar.push((label, x));
            }
        }
    }
    IwasawaBasis {
        dim,
        a: [generator(Generator::J1, dim), generator(Generator::J2, dim)],
        n,
        nbar,
    }
}

/// Distance (max entry) from `x` to the linear span of `basis`.
pub fn span_residual(x: &AlgebraElement, basis: &[AlgebraElement]) -> f64 {
    const LEN: usize = MAX_N * MAX_N;
    let flat = |a: &AlgebraElement| {
        let mut v = [0.0; LEN];
        for (k, e) in a.matrix().entries().enumerate() {
            v[k] = e;
        }
        v
    };
    let dot = |a: &[f64; LEN], b: &[f64; LEN]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();
    let mut ortho: Vec<[f64; LEN]> = Vec::new();
    for b in basis {
        let mut v = flat(b);
        for _ in 0..2 {
            for o in &ortho {
                let c = dot(&v, o);
                for k in 0..LEN {
                    v[k] -= c * o[k];
                }
            }
        }
        let norm = libm::sqrt(dot(&v, &v));
        if norm > 1e-12 {
            for c in v.iter_mut() {
                *c /= norm;
            }
            ortho.push(v);
        }
    }
    let mut r = flat(x);
    for _ in 0..2 {
        for o in &ortho {
            let c = dot(&r, o);
            for k in 0..LEN {
                r[k] -= c * o[k];
            }
        }
    }
    r.iter().fold(0.0, |m, c| f64::max(m, libm::fabs(*c)))
}
