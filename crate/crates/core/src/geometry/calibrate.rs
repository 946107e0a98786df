use super::{
    airfoil_area, evaluate_airfoil, parse_selig, FixedParsec, GeometryError, ParsecParams,
    StationGrid,
};
use nalgebra::{DMatrix, DVector};

/// Table-3 baseline cross-section area the calibration must land near.
pub const CALIBRATION_AREA_TARGET: f64 = 0.1574;

const NACA0012: &str = include_str!("../../assets/naca0012.dat");

/// The shipped NACA 0012 coordinate table (Selig ordering, closed TE).
pub fn naca0012_reference() -> Vec<(f64, f64)> {
    parse_selig(NACA0012).expect("shipped table is well-formed").1
}

/// Calibrate the five fixed PARSEC variables against a reference airfoil.
///
/// The reference is scaled in z so its maximum thickness matches the crest
/// thickness of the given baseline free variables, each surface is fit with
/// the half-integer-power basis under a sharp-TE constraint, and
/// {zxx_up, zxx_lo, dz_te, alpha_te, beta_te} are read off the fitted
/// surfaces. The resulting baseline airfoil must reproduce the reference
/// cross-section area within 5%.
pub fn fit_fixed_parsec_defaults(
    reference: &[(f64, f64)],
    baseline_free: [f64; 6],
    grid: &StationGrid,
) -> Result<FixedParsec, GeometryError> {
    let (upper, lower) = split_surfaces(reference)?;
    let t_ref = max_thickness(&upper, &lower);
    if t_ref <= 0.0 {
        return Err(GeometryError::CalibrationFailure(
            "reference has non-positive thickness".into(),
        ));
    }
    let t_base = baseline_free[2] - baseline_free[4]; // z_up - z_lo at the crests
    let scale = t_base / t_ref;

    let fit_up = fit_surface(&upper, scale)?;
    let fit_lo = fit_surface(&lower, scale)?;

    let (_, zxx_up) = crest(&fit_up).ok_or_else(|| {
        GeometryError::CalibrationFailure("no upper crest found in fit".into())
    })?;
    let (_, zxx_lo) = crest(&fit_lo).ok_or_else(|| {
        GeometryError::CalibrationFailure("no lower crest found in fit".into())
    })?;

    let slope_up = deriv_at_one(&fit_up);
    let slope_lo = deriv_at_one(&fit_lo);
    let alpha_te = 0.5 * (slope_up.atan() + slope_lo.atan());
    let beta_te = slope_lo.atan() - slope_up.atan();

    let fixed = FixedParsec {
        zxx_up,
        zxx_lo,
        dz_te: 0.0, // sharp TE enforced by the constrained fit
        alpha_te,
        beta_te,
    };

    let baseline = ParsecParams::from_free(baseline_free, fixed);
    let shape = evaluate_airfoil(&baseline, grid).map_err(|e| {
        GeometryError::CalibrationFailure(format!("baseline rebuild failed: {e}"))
    })?;
    let area = airfoil_area(&shape);
    let rel = (area - CALIBRATION_AREA_TARGET).abs() / CALIBRATION_AREA_TARGET;
    if rel > 0.05 {
        return Err(GeometryError::CalibrationFailure(format!(
            "baseline area {area:.4} misses target {CALIBRATION_AREA_TARGET} by {:.1}%",
            rel * 100.0
        )));
    }
    Ok(fixed)
}

/// Least-squares fit of z(x) = sum a_n x^(n-1/2) with z(1) = 0 imposed by
/// eliminating a_6 = -(a_1 + .. + a_5).
fn fit_surface(points: &[(f64, f64)], scale: f64) -> Result<[f64; 6], GeometryError> {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, z)| (x, z * scale)).collect();
    let m = pts.len();
    if m < 8 {
        return Err(GeometryError::CalibrationFailure(format!(
            "too few reference points per surface ({m})"
        )));
    }
    let powers = [0.5, 1.5, 2.5, 3.5, 4.5, 5.5];
    let mut a = DMatrix::<f64>::zeros(m, 5);
    let mut b = DVector::<f64>::zeros(m);
    for (r, &(x, z)) in pts.iter().enumerate() {
        let last = x.powf(powers[5]);
        for c in 0..5 {
            a[(r, c)] = x.powf(powers[c]) - last;
        }
        b[r] = z;
    }
    let svd = a.svd(true, true);
    let sol = svd.solve(&b, 1e-12).map_err(|e| {
        GeometryError::CalibrationFailure(format!("least squares failed: {e}"))
    })?;
    let mut coeffs = [0.0; 6];
    coeffs[..5].copy_from_slice(sol.as_slice());
    coeffs[5] = -sol.iter().sum::<f64>();
    // residual gate
    let rms = (pts
        .iter()
        .map(|&(x, z)| {
            let fit: f64 = coeffs
                .iter()
                .zip(powers)
                .map(|(c, p)| c * x.powf(p))
                .sum();
            (fit - z).powi(2)
        })
        .sum::<f64>()
        / m as f64)
        .sqrt();
    if rms > 2e-3 * scale.abs().max(1.0) {
        return Err(GeometryError::CalibrationFailure(format!(
            "fit residual {rms:.2e} above threshold"
        )));
    }
    Ok(coeffs)
}

fn eval_deriv(coeffs: &[f64; 6], x: f64) -> f64 {
    let powers = [0.5, 1.5, 2.5, 3.5, 4.5, 5.5];
    coeffs
        .iter()
        .zip(powers)
        .map(|(c, p)| c * p * x.powf(p - 1.0))
        .sum()
}

fn deriv_at_one(coeffs: &[f64; 6]) -> f64 {
    eval_deriv(coeffs, 1.0)
}

/// Locate the crest (z' = 0) by bracketed bisection and return (x, z'').
fn crest(coeffs: &[f64; 6]) -> Option<(f64, f64)> {
    let samples = 128;
    let mut prev_x = 0.02;
    let mut prev_d = eval_deriv(coeffs, prev_x);
    for i in 1..=samples {
        let x = 0.02 + (0.95 - 0.02) * i as f64 / samples as f64;
        let d = eval_deriv(coeffs, x);
        if prev_d == 0.0 {
            return Some((prev_x, second_deriv(coeffs, prev_x)));
        }
        if prev_d * d < 0.0 {
            let (mut lo, mut hi) = (prev_x, x);
            let (mut flo, _) = (prev_d, d);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                let fm = eval_deriv(coeffs, mid);
                if flo * fm <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            let xc = 0.5 * (lo + hi);
            return Some((xc, second_deriv(coeffs, xc)));
        }
        prev_x = x;
        prev_d = d;
    }
    None
}

fn second_deriv(coeffs: &[f64; 6], x: f64) -> f64 {
    let powers = [0.5, 1.5, 2.5, 3.5, 4.5, 5.5];
    coeffs
        .iter()
        .zip(powers)
        .map(|(c, p)| c * p * (p - 1.0) * x.powf(p - 2.0))
        .sum()
}

/// Split Selig-ordered coordinates at the leading edge (minimum x).
fn split_surfaces(
    points: &[(f64, f64)],
) -> Result<(Vec<(f64, f64)>, Vec<(f64, f64)>), GeometryError> {
    if points.len() < 16 {
        return Err(GeometryError::CalibrationFailure(
            "reference table too small".into(),
        ));
    }
    let le = points
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
        .map(|(i, _)| i)
        .unwrap();
    let mut upper: Vec<(f64, f64)> = points[..=le].to_vec();
    upper.reverse(); // ascending x
    let lower: Vec<(f64, f64)> = points[le..].to_vec();
    Ok((upper, lower))
}

fn max_thickness(upper: &[(f64, f64)], lower: &[(f64, f64)]) -> f64 {
    // reference tables share abscissae between surfaces; pair by index where
    // possible, otherwise interpolate the lower surface
    upper
        .iter()
        .map(|&(x, zu)| zu - interp(lower, x))
        .fold(0.0, f64::max)
}

fn interp(pts: &[(f64, f64)], x: f64) -> f64 {
    if x <= pts[0].0 {
        return pts[0].1;
    }
    for w in pts.windows(2) {
        if x <= w[1].0 {
            let t = (x - w[0].0) / (w[1].0 - w[0].0);
            return w[0].1 + t * (w[1].1 - w[0].1);
        }
    }
    pts[pts.len() - 1].1
}
