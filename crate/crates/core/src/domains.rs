//! Spectraballs `B_E = {X : ||Lambda_E(X)|| <= 1}` and free spectrahedra
//! `D_A = {X : L_A(X) ⪰ 0}`, queried level by level.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, identity, lambda_eval, operator_norm};
use crate::sampling;
use crate::tuple::{ComplexMatrix, MatrixTuple};
use crate::C64;

/// Default tolerance on margins for the boundary band.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-8;

/// Pencils whose reciprocal condition number falls below this are treated as singular.
pub const MIN_RCOND: f64 = 1e-12;

/// `lambda_min(H) >= -SCALE_FLAT_TOL * ||H||` counts as a direction of recession.
const SCALE_FLAT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

impl Location {
    pub fn is_member(self) -> bool {
        self != Location::Exterior
    }
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Location::Interior => "interior",
            Location::Boundary => "boundary",
            Location::Exterior => "exterior",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MembershipVerdict {
    pub location: Location,
    pub margin: f64,
}

impl MembershipVerdict {
    pub fn from_margin(margin: f64, tol: f64) -> Self {
        let location = if margin > tol {
            Location::Interior
        } else if margin < -tol {
            Location::Exterior
        } else {
            Location::Boundary
        };
        Self { location, margin }
    }
}

/// Common interface of the two domain kinds.
pub trait FreeDomain {
    /// Number of variables.
    fn g(&self) -> usize;

    /// Signed margin: positive inside, zero on the boundary, negative outside.
    fn margin(&self, x: &MatrixTuple) -> Result<f64>;

    /// Largest `t >= 0` with `t X` in the domain; `f64::INFINITY` along recession directions.
    fn boundary_scale(&self, x: &MatrixTuple) -> Result<f64>;

    fn membership(&self, x: &MatrixTuple, tol: f64) -> Result<MembershipVerdict> {
        Ok(MembershipVerdict::from_margin(self.margin(x)?, tol))
    }
}

fn check_point(g: usize, x: &MatrixTuple) -> Result<()> {
    if x.g() != g {
        return Err(Error::TupleLengthMismatch { expected: g, found: x.g() });
    }
    x.ensure_square()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectraball {
    e: MatrixTuple,
}

impl Spectraball {
    pub fn new(e: MatrixTuple) -> Self {
        Self { e }
    }

    pub fn tuple(&self) -> &MatrixTuple {
        &self.e
    }

    pub fn pencil_norm(&self, x: &MatrixTuple) -> Result<f64> {
        check_point(self.e.g(), x)?;
        Ok(operator_norm(&lambda_eval(&self.e, x)?))
    }
}

impl FreeDomain for Spectraball {
    fn g(&self) -> usize {
        self.e.g()
    }

    fn margin(&self, x: &MatrixTuple) -> Result<f64> {
        Ok(1.0 - self.pencil_norm(x)?)
    }

    fn boundary_scale(&self, x: &MatrixTuple) -> Result<f64> {
        if x.norm() == 0.0 {
            return Err(Error::ZeroDirection);
        }
        let n = self.pencil_norm(x)?;
        Ok(if n == 0.0 { f64::INFINITY } else { 1.0 / n })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrahedron {
    a: MatrixTuple,
}

impl Spectrahedron {
    pub fn new(a: MatrixTuple) -> Result<Self> {
        a.ensure_square()?;
        Ok(Self { a })
    }

    pub fn tuple(&self) -> &MatrixTuple {
        &self.a
    }

    pub fn pencil(&self, x: &MatrixTuple) -> Result<ComplexMatrix> {
        check_point(self.a.g(), x)?;
        linalg::hermitian_pencil(&self.a, x)
    }
}

impl FreeDomain for Spectrahedron {
    fn g(&self) -> usize {
        self.a.g()
    }

    fn margin(&self, x: &MatrixTuple) -> Result<f64> {
        linalg::min_eig_hermitian(&self.pencil(x)?)
    }

    /// `L_A(tX) = I + tH` with `H = Lambda_A(X) + Lambda_A(X)^*`, so the ray leaves the
    /// domain at `-1 / lambda_min(H)` when `lambda_min(H) < 0` and never otherwise.
    fn boundary_scale(&self, x: &MatrixTuple) -> Result<f64> {
        check_point(self.a.g(), x)?;
        if x.norm() == 0.0 {
            return Err(Error::ZeroDirection);
        }
        let lam = lambda_eval(&self.a, x)?;
        let h = linalg::hermitian_part(&(&lam + lam.adjoint()));
        let lmin = linalg::min_eig_hermitian(&h)?;
        let scale = operator_norm(&h);
        Ok(if lmin >= -SCALE_FLAT_TOL * scale { f64::INFINITY } else { -1.0 / lmin })
    }
}

pub fn ball_membership(ball: &Spectraball, x: &MatrixTuple, tol: f64) -> Result<MembershipVerdict> {
    ball.membership(x, tol)
}

pub fn spec_membership(spec: &Spectrahedron, x: &MatrixTuple, tol: f64) -> Result<MembershipVerdict> {
    spec.membership(x, tol)
}

/// `B_E = D_A` with `A_j = [[0, E_j], [0, 0]]` of size `(d + e) x (d + e)`.
pub fn ball_to_spectrahedron(ball: &Spectraball) -> Spectrahedron {
    let e = ball.tuple();
    let (d, c) = e.shape();
    let mats = e
        .iter()
        .map(|ej| {
            let mut a = ComplexMatrix::zeros(d + c, d + c);
            a.view_mut((0, d), (d, c)).copy_from(ej);
            a
        })
        .collect();
    Spectrahedron::new(MatrixTuple::new(mats).expect("embedding preserves shape")).expect("square")
}

/// Membership via `||(I + Lambda_F(X))^{-1} Lambda_F(X)|| <= 1`, equivalent to `L_F(X) ⪰ 0`
/// whenever `I + Lambda_F(X)` is invertible.
pub fn contraction_membership(spec: &Spectrahedron, x: &MatrixTuple, tol: f64) -> Result<MembershipVerdict> {
    check_point(spec.g(), x)?;
    let t = lambda_eval(spec.tuple(), x)?;
    let m = identity(t.nrows()) + &t;
    let (y, _) = linalg::guarded_solve(&m, &t, MIN_RCOND).map_err(|rcond| Error::SingularPencil { rcond })?;
    Ok(MembershipVerdict::from_margin(1.0 - operator_norm(&y), tol))
}

pub fn boundary_scale<D: FreeDomain + ?Sized>(domain: &D, x: &MatrixTuple) -> Result<f64> {
    domain.boundary_scale(x)
}

/// Outcome of [`boundedness_probe`]. A finite report is evidence of boundedness, not proof.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundednessReport {
    /// First sampled direction whose ray never leaves the domain.
    pub unbounded_witness: Option<MatrixTuple>,
    /// Largest finite boundary scale observed over unit-norm directions.
    pub max_scale: f64,
    pub directions_sampled: usize,
}

impl BoundednessReport {
    pub fn is_unbounded(&self) -> bool {
        self.unbounded_witness.is_some()
    }
}

/// Coordinate directions tried before random ones: at each level and for each
/// variable, the rotation generator (skew, level 2 and up), `±i I` and `±I`.
fn structured_directions(g: usize, n: usize) -> Vec<MatrixTuple> {
    let mut blocks: Vec<ComplexMatrix> = Vec::new();
    if n >= 2 {
        let mut rot = ComplexMatrix::zeros(n, n);
        for k in 0..n / 2 {
            rot[(2 * k, 2 * k + 1)] = C64::new(-1.0, 0.0);
            rot[(2 * k + 1, 2 * k)] = C64::new(1.0, 0.0);
        }
        if n % 2 == 1 {
            rot[(n - 1, n - 1)] = C64::new(0.0, 1.0);
        }
        blocks.push(rot);
    }
    for z in [C64::new(0., 1.), C64::new(0., -1.), C64::new(1., 0.), C64::new(-1., 0.)] {
        blocks.push(identity(n) * z);
    }
    let mut out = Vec::new();
    for j in 0..g {
        for b in &blocks {
            let mut mats = vec![ComplexMatrix::zeros(n, n); g];
            mats[j] = b.clone();
            let t = MatrixTuple::new(mats).expect("well formed");
            let norm = t.norm();
            out.push(t.scale_real(1.0 / norm));
        }
    }
    out
}

/// Heuristic boundedness evidence for `D_A`: structured coordinate directions, then
/// `trials` Gaussian directions per level, looking for rays with infinite boundary scale.
pub fn boundedness_probe(spec: &Spectrahedron, levels: &[usize], trials: usize, seed: u64) -> Result<BoundednessReport> {
    let g = spec.g();
    let mut rng = sampling::rng(seed);
    let mut report = BoundednessReport { unbounded_witness: None, max_scale: 0.0, directions_sampled: 0 };
    let visit = |x: MatrixTuple, report: &mut BoundednessReport| -> Result<bool> {
        report.directions_sampled += 1;
        let t = spec.boundary_scale(&x)?;
        if t.is_infinite() {
            report.unbounded_witness = Some(x);
            return Ok(true);
        }
        report.max_scale = report.max_scale.max(t);
        Ok(false)
    };
    for &n in levels {
        for x in structured_directions(g, n) {
            if visit(x, &mut report)? {
                return Ok(report);
            }
        }
    }
    for &n in levels {
        for _ in 0..trials {
            let x = sampling::unit_direction(&mut rng, g, n);
            if visit(x, &mut report)? {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const TOL: f64 = DEFAULT_BOUNDARY_TOL;

    fn pt(xs: &[f64]) -> MatrixTuple {
        MatrixTuple::real_scalar(xs).unwrap()
    }

    #[test]
    fn ball_examples() {
        let ball = Spectraball::new(catalog::tuple_e());
        let v = ball_membership(&ball, &pt(&[0.0, 0.0]), TOL).unwrap();
        assert_eq!(v, MembershipVerdict { location: Location::Interior, margin: 1.0 });

        let v = ball_membership(&ball, &pt(&[1.0 / 2f64.sqrt(), 0.5]), TOL).unwrap();
        assert_eq!(v.location, Location::Boundary);
        assert!(v.margin.abs() < 1e-12);

        let v = ball_membership(&ball, &pt(&[2.0, 0.0]), TOL).unwrap();
        assert_eq!(v.location, Location::Exterior);
        assert!((v.margin + 1.0).abs() < 1e-14);
    }

    #[test]
    fn ball_rejects_wrong_length() {
        let ball = Spectraball::new(catalog::tuple_e());
        assert!(matches!(ball_membership(&ball, &pt(&[0.0]), TOL), Err(Error::TupleLengthMismatch { .. })));
    }

    #[test]
    fn spectrahedron_f_examples() {
        let spec = Spectrahedron::new(catalog::tuple_f()).unwrap();
        let v = spec_membership(&spec, &pt(&[1.0, 1.0]), TOL).unwrap();
        assert_eq!(v.location, Location::Boundary);
        assert!(v.margin.abs() < 1e-10);

        let v = spec_membership(&spec, &pt(&[-1.0, -1.0]), TOL).unwrap();
        assert_eq!(v.location, Location::Exterior);
        assert!((v.margin + 1.0).abs() < 1e-10);

        let v = spec_membership(&spec, &pt(&[0.0, 0.0]), TOL).unwrap();
        assert_eq!(v.location, Location::Interior);
        assert!((v.margin - 1.0).abs() < 1e-14);
    }

    #[test]
    fn spectrahedron_rejects_rectangular() {
        let a = MatrixTuple::from_real(1, 2, &[&[1.0, 0.0]]).unwrap();
        assert!(matches!(Spectrahedron::new(a), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn ball_embedding_shapes() {
        let spec = ball_to_spectrahedron(&Spectraball::new(catalog::tuple_e()));
        assert_eq!(spec.tuple().shape(), (4, 4));
        assert_eq!(spec.tuple()[1][(0, 3)], C64::new(1.0, 0.0));
        assert_eq!(spec.tuple()[0][(0, 2)], C64::new(1.0, 0.0));
        assert_eq!(spec.tuple()[0][(2, 0)], C64::new(0.0, 0.0));

        let disk = ball_to_spectrahedron(&Spectraball::new(pt(&[1.0])));
        assert_eq!(disk.tuple()[0], ComplexMatrix::from_row_slice(2, 2, &[C64::new(0., 0.), C64::new(1., 0.), C64::new(0., 0.), C64::new(0., 0.)]));
        // Unit disk: 0.99 inside, 1.01 outside, on the circle the boundary.
        for (r, loc) in [(0.99, Location::Interior), (1.0, Location::Boundary), (1.01, Location::Exterior)] {
            let z = MatrixTuple::scalar(&[C64::from_polar(r, 0.7)]).unwrap();
            assert_eq!(disk.membership(&z, 1e-8).unwrap().location, loc);
        }
    }

    #[test]
    fn contraction_examples() {
        let spec = Spectrahedron::new(catalog::tuple_f()).unwrap();
        let v = contraction_membership(&spec, &pt(&[0.0, 0.0]), TOL).unwrap();
        assert_eq!(v, MembershipVerdict { location: Location::Interior, margin: 1.0 });
        let v = contraction_membership(&spec, &pt(&[1.0 / 2f64.sqrt(), 0.0]), TOL).unwrap();
        assert_eq!(v.location, Location::Boundary);
    }

    #[test]
    fn contraction_reports_singular_pencil() {
        // I + x (1) singular at x = -1.
        let spec = Spectrahedron::new(pt(&[1.0])).unwrap();
        assert!(matches!(contraction_membership(&spec, &pt(&[-1.0]), TOL), Err(Error::SingularPencil { .. })));
    }

    #[test]
    fn boundary_scale_examples() {
        let spec = Spectrahedron::new(catalog::tuple_f()).unwrap();
        let t = spec.boundary_scale(&pt(&[1.0, 0.0])).unwrap();
        assert!((t - 1.0 / 2f64.sqrt()).abs() < 1e-12);

        let ball = Spectraball::new(catalog::tuple_e());
        assert!((ball.boundary_scale(&pt(&[1.0, 0.0])).unwrap() - 1.0).abs() < 1e-14);

        let r = Spectrahedron::new(catalog::type_ii()).unwrap();
        let skew = MatrixTuple::new(vec![catalog::rotation_generator(), ComplexMatrix::zeros(2, 2)]).unwrap();
        assert_eq!(r.boundary_scale(&skew).unwrap(), f64::INFINITY);

        assert_eq!(spec.boundary_scale(&pt(&[0.0, 0.0])), Err(Error::ZeroDirection));
    }

    #[test]
    fn probe_type_ii_unbounded() {
        let r = Spectrahedron::new(catalog::type_ii()).unwrap();
        let report = boundedness_probe(&r, &[2], 10, 42).unwrap();
        let w = report.unbounded_witness.expect("unbounded");
        let expected = MatrixTuple::new(vec![catalog::rotation_generator(), ComplexMatrix::zeros(2, 2)])
            .unwrap()
            .scale_real(1.0 / 2f64.sqrt());
        assert!(w.max_distance(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn probe_bounded_examples() {
        let ball = ball_to_spectrahedron(&Spectraball::new(catalog::tuple_e()));
        let report = boundedness_probe(&ball, &[1, 2, 3], 50, 42).unwrap();
        assert!(!report.is_unbounded());
        assert!(report.max_scale.is_finite() && report.max_scale > 0.0);

        let shift = Spectrahedron::new(MatrixTuple::from_real(2, 2, &[&[0., 1., 0., 0.]]).unwrap()).unwrap();
        let report = boundedness_probe(&shift, &[1, 2], 50, 7).unwrap();
        assert!(!report.is_unbounded());
        // lambda_min(x e12 + conj(x) e21) = -|x|, so unit scalar directions leave at t = 1.
        assert!(report.max_scale >= 1.0 - 1e-12);
    }
}
