//! Sectoriality certificates.
//!
//! An invertible sectorial operator satisfies `(1+s)||(A+s)^-1|| <= K` on
//! `[0, inf)`; a (merely) sectorial operator satisfies `s||(B+s)^-1|| <= L`
//! on `(0, inf)`. The constants are certified by scanning a logarithmic grid
//! and refining around the grid maximizer with golden-section search. The
//! certificate carries the scan evidence; it is sampling-based, not a proof.
//!
//! From `K` (resp. `L`) the region `Omega_K` (sector of half-angle
//! `arcsin(1/2K)` united with the disc of radius `1/2K`) resp. `S_L` (pure
//! sector) lies in the resolvent set of `-A`, with the perturbed bound
//! `(1+|lambda|)||(A+lambda)^-1|| <= 2K+1` (resp. `|lambda| ||.|| <= 2L-1`)
//! on it. `verify_region_bound` witnesses that estimate on boundary samples.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};

/// Lower end of the default logarithmic scan grid.
pub const SCAN_S_MIN: f64 = 1e-8;
/// Upper end of the default logarithmic scan grid.
pub const SCAN_S_MAX: f64 = 1e8;
/// Default number of scan grid points.
pub const SCAN_GRID: usize = 512;

const GOLDEN_ITERS: usize = 90;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertKind {
    InvertibleSectorial,
    Sectorial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    OmegaK,
    SL,
}

/// Certified sectoriality constant with its scan evidence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectorialCertificate {
    pub kind: CertKind,
    /// `K` (invertible case) or `L`, floored at 1.
    pub constant: f64,
    /// Region half-angle `arcsin(1/(2 constant))`, radians.
    pub angle: f64,
    /// Disc radius `1/(2K)` for the invertible case, 0 otherwise.
    pub radius: f64,
    /// `(s, witnessed norm product)` pairs from the scan grid.
    pub scan: Vec<(f64, f64)>,
    pub refined: bool,
}

impl SectorialCertificate {
    /// The region resolvent bound: `2K+1` on `Omega_K`, `2L-1` on `S_L`.
    pub fn region_bound(&self) -> f64 {
        match self.kind {
            CertKind::InvertibleSectorial => 2.0 * self.constant + 1.0,
            CertKind::Sectorial => 2.0 * self.constant - 1.0,
        }
    }
}

/// Truncated integration contour for the region boundary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContourSpec {
    pub region: RegionKind,
    pub angle: f64,
    pub radius: f64,
    /// Truncation radius of the rays.
    pub truncation_radius: f64,
    pub nodes_per_segment: usize,
}

fn witnessed_invertible(a: &CMatrix, s: f64) -> Result<f64> {
    let shifted = a.shifted(Complex64::new(s, 0.0))?;
    let inv = shifted
        .inverse()
        .map_err(|_| Error::ResolventSingular { s })?;
    Ok((1.0 + s) * inv.spectral_norm())
}

fn witnessed_sectorial(b: &CMatrix, s: f64) -> Result<f64> {
    let shifted = b.shifted(Complex64::new(s, 0.0))?;
    let inv = shifted
        .inverse()
        .map_err(|_| Error::ResolventSingular { s })?;
    Ok(s * inv.spectral_norm())
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Golden-section maximization of `f` over `[lo, hi]`. Evaluation failures
/// shrink toward the surviving side by treating the value as -inf.
fn golden_max(mut f: impl FnMut(f64) -> Result<f64>, lo: f64, hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1).unwrap_or(f64::NEG_INFINITY);
    let mut f2 = f(x2).unwrap_or(f64::NEG_INFINITY);
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..GOLDEN_ITERS {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2).unwrap_or(f64::NEG_INFINITY);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1).unwrap_or(f64::NEG_INFINITY);
        }
        let cand = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
        if cand.1 > best.1 {
            best = cand;
        }
        if (b - a).abs() <= 1e-13 * (a.abs() + b.abs()).max(1e-30) {
            break;
        }
    }
    best
}

fn certify(
    a: &CMatrix,
    kind: CertKind,
    s_min: f64,
    s_max: f64,
    n_grid: usize,
) -> Result<SectorialCertificate> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !(s_max > s_min && s_min > 0.0) || n_grid < 2 {
        return Err(Error::InvalidParameter(
            "scan grid requires 0 < s_min < s_max and n_grid >= 2".into(),
        ));
    }
    let witness = |s: f64| match kind {
        CertKind::InvertibleSectorial => witnessed_invertible(a, s),
        CertKind::Sectorial => witnessed_sectorial(a, s),
    };

    let mut grid = Vec::with_capacity(n_grid + 1);
    if kind == CertKind::InvertibleSectorial {
        grid.push(0.0);
    }
    grid.extend(log_grid(s_min, s_max, n_grid));

    let mut scan = Vec::with_capacity(grid.len());
    let mut best_idx = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for (idx, &s) in grid.iter().enumerate() {
        let value = witness(s)?;
        if value > best_val {
            best_val = value;
            best_idx = idx;
        }
        scan.push((s, value));
    }

    // Refine inside the bracket around the grid maximizer. The first cell may
    // touch s = 0, where golden section runs on the linear scale.
    let (lo, hi) = (
        if best_idx == 0 {
            grid[0]
        } else {
            grid[best_idx - 1]
        },
        if best_idx + 1 < grid.len() {
            grid[best_idx + 1]
        } else {
            grid[best_idx]
        },
    );
    let refined_value = if hi > lo {
        if lo > 0.0 {
            let (_, v) = golden_max(|y: f64| witness(y.exp()), lo.ln(), hi.ln());
            v
        } else {
            let (_, v) = golden_max(&witness, lo, hi);
            v
        }
    } else {
        scan[best_idx].1
    };

    let constant = scan[best_idx].1.max(refined_value).max(1.0);
    let angle = (1.0 / (2.0 * constant)).asin();
    let radius = match kind {
        CertKind::InvertibleSectorial => 1.0 / (2.0 * constant),
        CertKind::Sectorial => 0.0,
    };
    Ok(SectorialCertificate {
        kind,
        constant,
        angle,
        radius,
        scan,
        refined: true,
    })
}

/// Certifies `K` with `(1+s)||(A+s)^-1||` scanned over `{0}` and a log grid
/// on `(0, s_max]`.
pub fn certify_invertible_sectorial(
    a: &CMatrix,
    s_max: f64,
    n_grid: usize,
) -> Result<SectorialCertificate> {
    certify(a, CertKind::InvertibleSectorial, SCAN_S_MIN, s_max, n_grid)
}

/// Certifies `L` with `s||(B+s)^-1||` scanned over a log grid on
/// `[s_min, s_max]`. Requires `B` numerically nonsingular (injective).
pub fn certify_sectorial(
    b: &CMatrix,
    s_min: f64,
    s_max: f64,
    n_grid: usize,
) -> Result<SectorialCertificate> {
    b.inverse().map_err(|_| Error::ResolventSingular { s: 0.0 })?;
    certify(b, CertKind::Sectorial, s_min, s_max, n_grid)
}

/// Builds the truncated boundary contour for a certificate.
///
/// The truncation radius solves the analytic ray-tail bound
/// `bound_const * R^{re_z} / (pi |re_z|) <= tol_tail`, where `bound_const`
/// is `2K+1` or `2L-1`. `re_z` must be negative: it is the decay exponent of
/// the integrand along the rays (for regularized integrands, the caller
/// folds the regularizer constant into `tol_tail` and passes the effective
/// exponent).
pub fn build_contour(
    cert: &SectorialCertificate,
    re_z: f64,
    tol_tail: f64,
) -> Result<ContourSpec> {
    if re_z >= 0.0 {
        return Err(Error::InvalidExponent { re: re_z });
    }
    if !(tol_tail > 0.0) {
        return Err(Error::InvalidParameter("tail tolerance must be positive".into()));
    }
    let bound_const = cert.region_bound();
    let r_trunc = (bound_const / (std::f64::consts::PI * re_z.abs() * tol_tail))
        .powf(1.0 / re_z.abs());
    if !r_trunc.is_finite() {
        return Err(Error::InvalidExponent { re: re_z });
    }
    let r_trunc = r_trunc.max(4.0 * cert.radius).max(4.0);
    Ok(ContourSpec {
        region: match cert.kind {
            CertKind::InvertibleSectorial => RegionKind::OmegaK,
            CertKind::Sectorial => RegionKind::SL,
        },
        angle: cert.angle,
        radius: cert.radius,
        truncation_radius: r_trunc,
        nodes_per_segment: 400,
    })
}

/// Samples the region boundary and reports `(lambda, margin)` with
/// `margin = bound_const - witnessed value`. Violations show up as negative
/// margins; nothing is thrown.
pub fn verify_region_bound(
    a: &CMatrix,
    cert: &SectorialCertificate,
    n_samples: usize,
) -> Vec<(Complex64, f64)> {
    let bound_const = cert.region_bound();
    let points = boundary_points(a, cert, n_samples);
    points
        .into_iter()
        .map(|lambda| {
            let witnessed = a
                .shifted(lambda)
                .and_then(|m| m.inverse())
                .map(|inv| {
                    let weight = match cert.kind {
                        CertKind::InvertibleSectorial => 1.0 + lambda.norm(),
                        CertKind::Sectorial => lambda.norm(),
                    };
                    weight * inv.spectral_norm()
                })
                .unwrap_or(f64::INFINITY);
            (lambda, bound_const - witnessed)
        })
        .collect()
}

fn boundary_points(a: &CMatrix, cert: &SectorialCertificate, n: usize) -> Vec<Complex64> {
    let theta = cert.angle;
    let r = cert.radius;
    let r_max = (10.0 * (1.0 + a.spectral_norm())).max(10.0 * r.max(1.0));
    match cert.kind {
        CertKind::InvertibleSectorial => {
            if n <= 1 {
                // Arc apex.
                return vec![Complex64::new(-r, 0.0)];
            }
            let n_arc = (n / 2).max(1);
            let n_ray = ((n - n_arc) / 2).max(1);
            let n_arc = n - 2 * n_ray;
            let mut pts = Vec::with_capacity(n);
            let taus = log_grid(r, r_max, n_ray.max(2));
            for &tau in taus.iter().take(n_ray).rev() {
                pts.push(Complex64::from_polar(tau, -theta));
            }
            for i in 0..n_arc {
                let phi = if n_arc == 1 {
                    std::f64::consts::PI
                } else {
                    theta + (2.0 * std::f64::consts::PI - 2.0 * theta) * i as f64
                        / (n_arc - 1) as f64
                };
                pts.push(Complex64::from_polar(r, phi));
            }
            for &tau in taus.iter().take(n_ray) {
                pts.push(Complex64::from_polar(tau, theta));
            }
            pts
        }
        CertKind::Sectorial => {
            let per_side = (n / 2).max(1);
            let taus = log_grid(1e-6, r_max, per_side.max(2));
            let mut pts = Vec::with_capacity(2 * per_side);
            for &tau in taus.iter().take(per_side).rev() {
                pts.push(Complex64::from_polar(tau, -theta));
            }
            for &tau in taus.iter().take(per_side) {
                pts.push(Complex64::from_polar(tau, theta));
            }
            pts
        }
    }
}
