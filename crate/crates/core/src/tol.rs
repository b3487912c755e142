//! Numerical tolerances shared by every module.

/// `gᵀηg = η` and `det g = 1`, entrywise.
pub const GROUP: f64 = 1e-9;
/// `Xᵀη + ηX = 0`, entrywise.
pub const ALGEBRA: f64 = 1e-12;
/// `|Q(p,p) − 1|` for points of AdS.
pub const QUADRIC: f64 = 1e-9;
/// `|t² − y²|` band reported as singular.
pub const SINGULAR: f64 = 1e-9;
/// Denominators `|A±(w)|` below this mean the branch has no root.
pub const DENOMINATOR: f64 = 1e-12;
/// Cap tangency band on `Δ − (θ₊ + θ₋)`, radians.
pub const ANGLE: f64 = 1e-9;
/// Unit-norm check for directions and cone generators.
pub const UNIT: f64 = 1e-12;
/// Tangency `|Q(p,X)|` for tangent vectors.
pub const TANGENT: f64 = 1e-9;
/// Causal type of a tangent vector: `|Q(X,X)|` below this is light like.
pub const LIGHT: f64 = 1e-9;
/// Minimum `|u′ ∓ x′|` for the lateral inversion.
pub const INVERSION: f64 = 1e-9;
/// Minimum `|b ∓ b′|` for a constrained representative.
pub const B_SEPARATION: f64 = 1e-6;
/// Escaping fraction at which the sampling oracle reports a free interior point.
pub const ORACLE_FREE_FRACTION: f64 = 1e-3;
