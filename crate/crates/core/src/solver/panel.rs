use super::SolverError;
use crate::geometry::AirfoilShape;
use nalgebra::{DMatrix, DVector};

/// Inviscid surface solution at the panel midpoints.
#[derive(Debug, Clone)]
pub struct InviscidSolution {
    /// Incompressible pressure coefficient per panel midpoint.
    pub cp: Vec<f64>,
    /// Tangential velocity (traversal direction) per panel midpoint.
    pub vt: Vec<f64>,
    /// Lift coefficient from Cp integration (incompressible).
    pub cl: f64,
    /// Quarter-chord pitching moment, nose-up positive (incompressible).
    pub cm: f64,
    /// Lift coefficient from the circulation (Kutta-Joukowski), as a
    /// cross-check on the Cp integration.
    pub cl_circulation: f64,
    /// Panel midpoints and lengths, in traversal order.
    pub mid: Vec<(f64, f64)>,
    pub lens: Vec<f64>,
}

/// Hess-Smith panel method: constant-strength sources per panel plus a
/// single uniform vortex strength, Kutta condition at the trailing edge.
///
/// `points` traverse the contour upper-TE -> LE -> lower-TE (Selig order,
/// counterclockwise); consecutive points form panels. The contour may be
/// open at the TE.
pub fn panel_solve_points(
    points: &[(f64, f64)],
    alpha: f64,
) -> Result<InviscidSolution, SolverError> {
    let np = points.len();
    if np < 4 {
        return Err(SolverError::SingularMatrix { panel: 0 });
    }
    let n = np - 1; // panels

    let mut tx = vec![0.0; n];
    let mut ty = vec![0.0; n];
    let mut nx = vec![0.0; n];
    let mut ny = vec![0.0; n];
    let mut lens = vec![0.0; n];
    let mut mid = vec![(0.0, 0.0); n];
    for i in 0..n {
        let (x0, y0) = points[i];
        let (x1, y1) = points[i + 1];
        let dx = x1 - x0;
        let dy = y1 - y0;
        let l = dx.hypot(dy);
        if l < 1e-12 {
            return Err(SolverError::SingularMatrix { panel: i });
        }
        lens[i] = l;
        tx[i] = dx / l;
        ty[i] = dy / l;
        // outward normal for a counterclockwise contour
        nx[i] = ty[i];
        ny[i] = -tx[i];
        mid[i] = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
    }

    // Velocity influence of unit source / unit vortex on panel j at point p,
    // in global coordinates. Panel frame: x* along t_j, y* along n_j, so the
    // exterior-side limit at the panel's own midpoint is beta = +pi.
    let inv_2pi = 0.5 * std::f64::consts::FRAC_1_PI;
    let influence = |j: usize, p: (f64, f64), self_panel: bool| -> ((f64, f64), (f64, f64)) {
        let (sx, sy) = points[j];
        let rx = p.0 - sx;
        let ry = p.1 - sy;
        let xl = rx * tx[j] + ry * ty[j];
        let yl = rx * nx[j] + ry * ny[j];
        let (lr, beta) = if self_panel {
            (0.0, std::f64::consts::PI)
        } else {
            let r1sq = xl * xl + yl * yl;
            let xl2 = xl - lens[j];
            let r2sq = xl2 * xl2 + yl * yl;
            let lr = 0.5 * (r1sq / r2sq).ln();
            let beta = yl.atan2(xl2) - yl.atan2(xl);
            (lr, beta)
        };
        let us = inv_2pi * lr;
        let vs = inv_2pi * beta;
        // vortex velocity is the source velocity rotated by 90 degrees
        let (uv, vv) = (vs, -us);
        let src = (us * tx[j] + vs * nx[j], us * ty[j] + vs * ny[j]);
        let vor = (uv * tx[j] + vv * nx[j], uv * ty[j] + vv * ny[j]);
        (src, vor)
    };

    let vinf = (alpha.cos(), alpha.sin());

    let mut a = DMatrix::<f64>::zeros(n + 1, n + 1);
    let mut rhs = DVector::<f64>::zeros(n + 1);
    // cache global influences for the velocity reconstruction afterwards
    let mut src_g = vec![(0.0, 0.0); n * n];
    let mut vor_g = vec![(0.0, 0.0); n * n];
    for i in 0..n {
        let mut vor_n = 0.0;
        for j in 0..n {
            let (s, v) = influence(j, mid[i], i == j);
            src_g[i * n + j] = s;
            vor_g[i * n + j] = v;
            a[(i, j)] = s.0 * nx[i] + s.1 * ny[i];
            vor_n += v.0 * nx[i] + v.1 * ny[i];
        }
        a[(i, n)] = vor_n;
        rhs[i] = -(vinf.0 * nx[i] + vinf.1 * ny[i]);
    }
    // Kutta: tangential velocities at the two TE panels cancel in the
    // traversal direction (smooth outflow)
    for &i in &[0, n - 1] {
        for j in 0..n {
            let s = src_g[i * n + j];
            let v = vor_g[i * n + j];
            a[(n, j)] += s.0 * tx[i] + s.1 * ty[i];
            a[(n, n)] += v.0 * tx[i] + v.1 * ty[i];
        }
        rhs[n] -= vinf.0 * tx[i] + vinf.1 * ty[i];
    }

    let lu = a.lu();
    let sol = lu
        .solve(&rhs)
        .ok_or(SolverError::SingularMatrix { panel: 0 })?;
    let q = sol.as_slice();
    let gamma = q[n];

    let mut vt = vec![0.0; n];
    let mut cp = vec![0.0; n];
    for i in 0..n {
        let mut vx = vinf.0;
        let mut vy = vinf.1;
        for j in 0..n {
            let s = src_g[i * n + j];
            let v = vor_g[i * n + j];
            vx += q[j] * s.0 + gamma * v.0;
            vy += q[j] * s.1 + gamma * v.1;
        }
        vt[i] = vx * tx[i] + vy * ty[i];
        cp[i] = 1.0 - vt[i] * vt[i];
    }

    // force and quarter-chord moment from Cp
    let (mut fx, mut fy, mut m) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let dfx = -cp[i] * nx[i] * lens[i];
        let dfy = -cp[i] * ny[i] * lens[i];
        fx += dfx;
        fy += dfy;
        m += mid[i].1 * dfx - (mid[i].0 - 0.25) * dfy;
    }
    let cl = fy * alpha.cos() - fx * alpha.sin();
    let perimeter: f64 = lens.iter().sum();
    let cl_circulation = -2.0 * gamma * perimeter;

    if !(cl.is_finite() && m.is_finite()) {
        return Err(SolverError::SingularMatrix { panel: 0 });
    }

    Ok(InviscidSolution {
        cp,
        vt,
        cl,
        cm: m,
        cl_circulation,
        mid,
        lens,
    })
}

/// Inviscid solve on a gridded shape with the Prandtl-Glauert correction;
/// Cp is reported at the 199 grid stations.
pub fn panel_solve_inviscid(
    shape: &AirfoilShape,
    alpha: f64,
    mach: f64,
) -> Result<(Vec<f64>, f64, f64, InviscidSolution), SolverError> {
    let pts = shape.points();
    let sol = panel_solve_points(&pts, alpha)?;
    let pg = 1.0 / (1.0 - mach * mach).sqrt();
    let cp_station = midpoints_to_stations(&sol);
    let cp_corr: Vec<f64> = cp_station.iter().map(|c| c * pg).collect();
    Ok((cp_corr, sol.cl * pg, sol.cm * pg, sol))
}

/// Interpolate midpoint Cp onto the panel nodes (stations) by arc length;
/// the two TE endpoints copy their nearest midpoint.
fn midpoints_to_stations(sol: &InviscidSolution) -> Vec<f64> {
    let n = sol.cp.len();
    let mut out = vec![0.0; n + 1];
    out[0] = sol.cp[0];
    out[n] = sol.cp[n - 1];
    for i in 1..n {
        // node i sits between midpoints i-1 and i; arc offsets are half the
        // panel lengths on each side
        let w0 = 0.5 * sol.lens[i - 1];
        let w1 = 0.5 * sol.lens[i];
        out[i] = (sol.cp[i - 1] * w1 + sol.cp[i] * w0) / (w0 + w1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::StationGrid;
    use approx::assert_relative_eq;

    /// NACA 4-digit symmetric thickness profile (closed TE) on the grid.
    pub(crate) fn naca_sym_points(thickness: f64, grid: &StationGrid) -> Vec<(f64, f64)> {
        let z = |x: f64| {
            (thickness / 0.2)
                * (0.2969 * x.sqrt() - 0.1260 * x - 0.3516 * x * x + 0.2843 * x.powi(3)
                    - 0.1036 * x.powi(4))
        };
        let xs = grid.surface_x();
        let n = xs.len();
        let mut pts = Vec::with_capacity(2 * n - 1);
        for i in (0..n).rev() {
            pts.push((xs[i], z(xs[i])));
        }
        for &x in &xs[1..] {
            pts.push((x, -z(x)));
        }
        pts
    }

    #[test]
    fn symmetric_airfoil_at_zero_alpha_has_no_lift() {
        let grid = StationGrid::standard();
        let pts = naca_sym_points(0.12, &grid);
        let sol = panel_solve_points(&pts, 0.0).unwrap();
        assert!(sol.cl.abs() < 1e-3, "cl = {}", sol.cl);
        assert!(sol.cm.abs() < 1e-3, "cm = {}", sol.cm);
    }

    #[test]
    fn thin_airfoil_lift_slope_matches_theory() {
        let grid = StationGrid::standard();
        let pts = naca_sym_points(0.04, &grid);
        let alpha = 5.0_f64.to_radians();
        let sol = panel_solve_points(&pts, alpha).unwrap();
        let thin = 2.0 * std::f64::consts::PI * alpha;
        assert!(
            (sol.cl - thin).abs() / thin < 0.10,
            "cl = {}, thin-airfoil = {thin}",
            sol.cl
        );
    }

    #[test]
    fn cp_integration_and_circulation_lift_agree() {
        let grid = StationGrid::standard();
        let pts = naca_sym_points(0.12, &grid);
        let sol = panel_solve_points(&pts, 5.0_f64.to_radians()).unwrap();
        assert!(
            (sol.cl - sol.cl_circulation).abs() / sol.cl.abs() < 0.02,
            "cp-integrated {} vs circulation {}",
            sol.cl,
            sol.cl_circulation
        );
    }

    #[test]
    fn alpha_reversal_negates_lift_and_moment() {
        let grid = StationGrid::standard();
        let pts = naca_sym_points(0.12, &grid);
        let a = 6.0_f64.to_radians();
        let plus = panel_solve_points(&pts, a).unwrap();
        let minus = panel_solve_points(&pts, -a).unwrap();
        assert!((plus.cl + minus.cl).abs() < 1e-3);
        assert!((plus.cm + minus.cm).abs() < 1e-3);
    }

    #[test]
    fn degenerate_panel_is_reported_with_its_index() {
        let pts = vec![(1.0, 0.0), (0.5, 0.1), (0.5, 0.1), (0.0, 0.0), (1.0, -0.01)];
        match panel_solve_points(&pts, 0.0) {
            Err(SolverError::SingularMatrix { panel }) => assert_eq!(panel, 1),
            other => panic!("expected singular-matrix error, got {other:?}"),
        }
    }

    #[test]
    fn station_cp_has_grid_arity_and_stagnation_bound() {
        let grid = StationGrid::standard();
        let shape = crate::geometry::evaluate_airfoil(
            &crate::geometry::ParsecParams::from_free(
                [0.0275, 0.375, 0.12, 0.375, -0.12, 0.0],
                crate::geometry::FixedParsec::default(),
            ),
            &grid,
        )
        .unwrap();
        let (cp, cl, _cm, _) = panel_solve_inviscid(&shape, 7.0_f64.to_radians(), 0.25).unwrap();
        assert_eq!(cp.len(), 199);
        assert!(cl > 0.0);
        let max_cp = cp.iter().cloned().fold(f64::MIN, f64::max);
        assert!(max_cp <= 1.3, "stagnation cp = {max_cp}");
        assert!(cp.iter().all(|c| c.is_finite()));
    }

    #[test]
    fn identical_inputs_give_bit_identical_solutions() {
        let grid = StationGrid::standard();
        let pts = naca_sym_points(0.12, &grid);
        let a = panel_solve_points(&pts, 0.1).unwrap();
        let b = panel_solve_points(&pts, 0.1).unwrap();
        assert_eq!(a.cp, b.cp);
        assert_eq!(a.cl.to_bits(), b.cl.to_bits());
    }

    #[test]
    fn joukowski_cp_matches_conformal_map_oracle() {
        // exact conformal solution for the cusped Joukowski airfoil;
        // comparison excludes the immediate TE neighborhood where flat-panel
        // Kutta conditions are ill-posed at a cusp
        let (pts, oracle_cp, oracle_cl, xs_mid) = joukowski_case(0.08, 4.0_f64.to_radians());
        let sol = panel_solve_points(&pts, 4.0_f64.to_radians()).unwrap();
        let mut maxdev: f64 = 0.0;
        for i in 0..sol.cp.len() {
            if xs_mid[i] < 0.95 {
                maxdev = maxdev.max((sol.cp[i] - oracle_cp[i]).abs());
            }
        }
        assert!(maxdev < 0.05, "max |dCp| = {maxdev}");
        assert!(
            (sol.cl - oracle_cl).abs() / oracle_cl < 0.05,
            "cl = {} vs exact {}",
            sol.cl,
            oracle_cl
        );
    }

    /// Build a Joukowski airfoil by mapping a circle (no node at the cusp)
    /// and evaluate the exact surface Cp at the panel parameter midpoints.
    pub(crate) fn joukowski_case(
        eps: f64,
        alpha: f64,
    ) -> (Vec<(f64, f64)>, Vec<f64>, f64, Vec<f64>) {
        use std::f64::consts::PI;
        let n = 199usize;
        let c = 1.0;
        let mu = (-eps, 0.0);
        let a = ((c - mu.0).powi(2) + mu.1 * mu.1).sqrt();
        let beta = -(-mu.1).atan2(c - mu.0);

        let map = |t: f64| -> (f64, f64) {
            let zx = mu.0 + a * t.cos();
            let zy = mu.1 + a * t.sin();
            let r2 = zx * zx + zy * zy;
            (zx + c * c * zx / r2, zy - c * c * zy / r2)
        };
        let thetas: Vec<f64> = (0..n)
            .map(|j| -beta + (j as f64 + 0.5) * 2.0 * PI / n as f64)
            .collect();
        let raw: Vec<(f64, f64)> = thetas.iter().map(|&t| map(t)).collect();
        let xmin = raw.iter().map(|p| p.0).fold(f64::MAX, f64::min);
        let xmax = raw.iter().map(|p| p.0).fold(f64::MIN, f64::max);
        let chord = xmax - xmin;
        let mut pts: Vec<(f64, f64)> = raw
            .iter()
            .map(|p| ((p.0 - xmin) / chord, p.1 / chord))
            .collect();
        pts.push(pts[0]);

        // exact Cp at the parameter midpoints: |W(z)| / |dw/dz|
        let gam = 4.0 * PI * a * (alpha + beta).sin();
        let exact_cp = |t: f64| -> f64 {
            let zpx = a * t.cos();
            let zpy = a * t.sin();
            let zx = mu.0 + zpx;
            let zy = mu.1 + zpy;
            // W = e^{-i alpha} - a^2 e^{i alpha} / zp^2 + i gam / (2 pi zp)
            let zp2 = complex_mul((zpx, zpy), (zpx, zpy));
            let term2 = complex_div(
                complex_scale((alpha.cos(), alpha.sin()), a * a),
                zp2,
            );
            let term3 = complex_div((0.0, gam / (2.0 * PI)), (zpx, zpy));
            let w = (
                alpha.cos() - term2.0 + term3.0,
                -alpha.sin() - term2.1 + term3.1,
            );
            // dw/dz = 1 - c^2 / z^2
            let z2 = complex_mul((zx, zy), (zx, zy));
            let d = complex_div((c * c, 0.0), z2);
            let dwdz = (1.0 - d.0, -d.1);
            let v = (w.0.hypot(w.1)) / (dwdz.0.hypot(dwdz.1));
            1.0 - v * v
        };
        let mut oracle = Vec::with_capacity(n);
        let mut xs_mid = Vec::with_capacity(n);
        for j in 0..n {
            let tm = thetas[j] + PI / n as f64;
            oracle.push(exact_cp(tm));
            let (x, _) = map(tm);
            xs_mid.push((x - xmin) / chord);
        }
        let cl_exact = 8.0 * PI * a * (alpha + beta).sin() / chord;
        (pts, oracle, cl_exact, xs_mid)
    }

    fn complex_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
    }
    fn complex_scale(a: (f64, f64), s: f64) -> (f64, f64) {
        (a.0 * s, a.1 * s)
    }
    fn complex_div(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    }

    #[test]
    fn joukowski_oracle_is_self_consistent() {
        // the oracle's own Kutta behavior: Cp finite near the TE and the
        // stagnation value bounded by 1
        let (_, oracle, cl, _) = joukowski_case(0.08, 4.0_f64.to_radians());
        assert!(oracle.iter().all(|c| c.is_finite() && *c <= 1.0 + 1e-9));
        assert_relative_eq!(cl, 0.4708, epsilon = 5e-4);
    }
}
