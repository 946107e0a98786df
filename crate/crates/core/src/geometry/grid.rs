use super::GeometryError;
use serde::{Deserialize, Serialize};

/// Which side of the airfoil a station lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Surface {
    Upper,
    Lower,
}

/// One-dimensional two-sided tanh (Vinokur) stretching on [0, 1].
///
/// Returns `n_points` monotone abscissae with endpoints exactly 0 and 1 and
/// end intervals approximating `d0` and `d1`. The stretching parameter is
/// found by bisection to 1e-12.
pub fn vinokur_grid(n_points: usize, d0: f64, d1: f64) -> Result<Vec<f64>, GeometryError> {
    let infeasible = |reason: &str| GeometryError::InfeasibleSpacing {
        n: n_points,
        d0,
        d1,
        reason: reason.to_string(),
    };
    if n_points < 3 {
        return Err(infeasible("need at least 3 points"));
    }
    let n_int = (n_points - 1) as f64;
    if !(d0 > 0.0 && d1 > 0.0) || d0 >= 10.0 / n_int || d1 >= 10.0 / n_int {
        return Err(infeasible("spacings must lie in (0, 10/(n-1))"));
    }

    // Continuum end slopes relative to the uniform spacing.
    let s0 = d0 * n_int;
    let s1 = d1 * n_int;
    let b = (s0 * s1).sqrt();
    let a = (s1 / s0).sqrt();

    let u: Vec<f64> = if (b - 1.0).abs() < 1e-12 {
        (0..n_points).map(|i| i as f64 / n_int).collect()
    } else if b < 1.0 {
        // sinh(delta)/delta = 1/b, delta > 0
        let target = 1.0 / b;
        let f = |d: f64| d.sinh() / d - target;
        let mut hi = 1.0;
        while f(hi) < 0.0 {
            hi *= 2.0;
            if hi > 1e4 {
                return Err(infeasible("stretching parameter bracket not found"));
            }
        }
        let delta = bisect(f, 1e-12, hi);
        let th = (0.5 * delta).tanh();
        (0..n_points)
            .map(|i| {
                let xi = i as f64 / n_int;
                0.5 * (1.0 + (delta * (xi - 0.5)).tanh() / th)
            })
            .collect()
    } else {
        // sin(delta)/delta = 1/b, delta in (0, pi)
        let target = 1.0 / b;
        let f = |d: f64| target - d.sin() / d;
        let delta = bisect(f, 1e-12, std::f64::consts::PI - 1e-9);
        let tn = (0.5 * delta).tan();
        (0..n_points)
            .map(|i| {
                let xi = i as f64 / n_int;
                0.5 * (1.0 + (delta * (xi - 0.5)).tan() / tn)
            })
            .collect()
    };

    let mut t: Vec<f64> = u.iter().map(|&u| u / (a + (1.0 - a) * u)).collect();
    t[0] = 0.0;
    *t.last_mut().unwrap() = 1.0;
    if t.windows(2).any(|w| w[1] <= w[0]) {
        return Err(infeasible("no monotone stretching exists"));
    }
    Ok(t)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    // f(lo) < 0 < f(hi) by construction of the callers
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// The shared 199-station surface grid: 100 chordwise abscissae per surface
/// with a common leading-edge point, flattened upper-TE -> LE -> lower-TE.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationGrid {
    surface_x: Vec<f64>,
    d0: f64,
    d1: f64,
}

impl StationGrid {
    /// Spec grid: 100 points per surface, LE spacing 0.001c, TE spacing 0.005c.
    pub fn standard() -> Self {
        Self::build(100, 0.001, 0.005).expect("standard grid parameters are feasible")
    }

    pub fn build(n_per_surface: usize, d0: f64, d1: f64) -> Result<Self, GeometryError> {
        let surface_x = vinokur_grid(n_per_surface, d0, d1)?;
        Ok(Self { surface_x, d0, d1 })
    }

    /// Per-surface abscissae, ascending from the LE (0.0) to the TE (1.0).
    pub fn surface_x(&self) -> &[f64] {
        &self.surface_x
    }

    pub fn n_per_surface(&self) -> usize {
        self.surface_x.len()
    }

    /// Total station count: upper + lower sharing the LE point.
    pub fn len(&self) -> usize {
        2 * self.surface_x.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn le_spacing(&self) -> f64 {
        self.d0
    }

    pub fn te_spacing(&self) -> f64 {
        self.d1
    }

    /// Station `i` in flattened order: indices `0..n` run down the upper
    /// surface from the TE to the LE, `n..2n-1` continue along the lower
    /// surface back to the TE. The LE station is index `n-1`.
    pub fn station(&self, i: usize) -> (Surface, f64) {
        let n = self.surface_x.len();
        assert!(i < self.len(), "station index {i} out of range");
        if i < n {
            (Surface::Upper, self.surface_x[n - 1 - i])
        } else {
            (Surface::Lower, self.surface_x[i - n + 1])
        }
    }

    pub fn stations(&self) -> impl Iterator<Item = (Surface, f64)> + '_ {
        (0..self.len()).map(|i| self.station(i))
    }
}
