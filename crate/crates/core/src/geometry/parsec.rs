use super::{GeometryError, StationGrid, Surface};
use nalgebra::{Matrix5, Vector5};
use serde::{Deserialize, Serialize};

/// The five PARSEC variables held fixed throughout a study, calibrated once
/// against a reference airfoil (see `fit_fixed_parsec_defaults`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedParsec {
    /// Upper-crest curvature z''(x_up).
    pub zxx_up: f64,
    /// Lower-crest curvature z''(x_lo).
    pub zxx_lo: f64,
    /// Trailing-edge thickness.
    pub dz_te: f64,
    /// Trailing-edge direction angle, radians.
    pub alpha_te: f64,
    /// Trailing-edge wedge angle, radians.
    pub beta_te: f64,
}

impl Default for FixedParsec {
    /// Values produced by `fit_fixed_parsec_defaults` on the shipped
    /// NACA 0012 table (thickness-matched to the baseline section); frozen
    /// here and regression-tested against a fresh calibration run.
    fn default() -> Self {
        Self {
            zxx_up: -0.8843639335419923,
            zxx_lo: 0.8843639335419923,
            dz_te: 0.0,
            alpha_te: 0.0,
            beta_te: 0.5728357423097721,
        }
    }
}

/// The PARSEC shape variables: six free (sampled by the design of
/// experiments) plus the five fixed ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParsecParams {
    /// Leading-edge radius, chord units.
    pub r_le: f64,
    /// Upper crest position and height.
    pub x_up: f64,
    pub z_up: f64,
    /// Lower crest position and depth.
    pub x_lo: f64,
    pub z_lo: f64,
    /// Trailing-edge z-coordinate.
    pub z_te: f64,
    pub fixed: FixedParsec,
}

impl ParsecParams {
    pub fn from_free(free: [f64; 6], fixed: FixedParsec) -> Self {
        Self {
            r_le: free[0],
            x_up: free[1],
            z_up: free[2],
            x_lo: free[3],
            z_lo: free[4],
            z_te: free[5],
            fixed,
        }
    }

    /// The six free variables in the canonical order
    /// `[r_le, x_up, z_up, x_lo, z_lo, z_te]`.
    pub fn free(&self) -> [f64; 6] {
        [self.r_le, self.x_up, self.z_up, self.x_lo, self.z_lo, self.z_te]
    }
}

/// Coefficients of one surface, z(x) = sum a_n x^(n - 1/2) for n = 1..6.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCoeffs {
    pub a: [f64; 6],
}

impl SurfaceCoeffs {
    pub fn eval(&self, x: f64) -> f64 {
        let sx = x.sqrt();
        // x^(n-1/2) = sx * x^(n-1)
        let mut xn = sx;
        let mut z = 0.0;
        for a in self.a {
            z += a * xn;
            xn *= x;
        }
        z
    }

    pub fn deriv(&self, x: f64) -> f64 {
        let mut d = 0.0;
        for (i, a) in self.a.iter().enumerate() {
            let p = i as f64 + 0.5;
            d += a * p * x.powf(p - 1.0);
        }
        d
    }

    pub fn second_deriv(&self, x: f64) -> f64 {
        let mut d = 0.0;
        for (i, a) in self.a.iter().enumerate() {
            let p = i as f64 + 0.5;
            d += a * p * (p - 1.0) * x.powf(p - 2.0);
        }
        d
    }
}

/// Solve one surface's coefficients from its six imposed conditions.
///
/// a_1 comes from the LE radius; the remaining five conditions (crest height,
/// zero crest slope, crest curvature, TE height, TE slope) form a 5x5 linear
/// system solved by partial-pivot elimination.
pub fn solve_parsec_surface(
    params: &ParsecParams,
    surface: Surface,
) -> Result<SurfaceCoeffs, GeometryError> {
    if params.r_le <= 0.0 {
        return Err(GeometryError::SingularSurface {
            parameter: "r_le",
            value: params.r_le,
        });
    }
    let (x_c, z_c, zxx_c, sign) = match surface {
        Surface::Upper => (params.x_up, params.z_up, params.fixed.zxx_up, 1.0),
        Surface::Lower => (params.x_lo, params.z_lo, params.fixed.zxx_lo, -1.0),
    };
    if !(x_c > 1e-3 && x_c < 1.0 - 1e-3) {
        return Err(GeometryError::SingularSurface {
            parameter: if matches!(surface, Surface::Upper) {
                "x_up"
            } else {
                "x_lo"
            },
            value: x_c,
        });
    }
    let f = &params.fixed;
    let z_te_s = params.z_te + sign * 0.5 * f.dz_te;
    let slope_te = (f.alpha_te - sign * 0.5 * f.beta_te).tan();

    let a1 = sign * (2.0 * params.r_le).sqrt();
    // powers p_n = n - 1/2 for n = 2..6
    let p = [1.5, 2.5, 3.5, 4.5, 5.5];
    let mut m = Matrix5::<f64>::zeros();
    for (j, &pj) in p.iter().enumerate() {
        m[(0, j)] = x_c.powf(pj);
        m[(1, j)] = pj * x_c.powf(pj - 1.0);
        m[(2, j)] = pj * (pj - 1.0) * x_c.powf(pj - 2.0);
        m[(3, j)] = 1.0;
        m[(4, j)] = pj;
    }
    let rhs = Vector5::new(
        z_c - a1 * x_c.sqrt(),
        -a1 * 0.5 * x_c.powf(-0.5),
        zxx_c + a1 * 0.25 * x_c.powf(-1.5),
        z_te_s - a1,
        slope_te - 0.5 * a1,
    );
    let lu = m.lu();
    let sol = lu.solve(&rhs).ok_or(GeometryError::SingularSurface {
        parameter: "x_crest",
        value: x_c,
    })?;
    let mut a = [a1, 0.0, 0.0, 0.0, 0.0, 0.0];
    a[1..].copy_from_slice(sol.as_slice());
    if a.iter().any(|v| !v.is_finite()) {
        return Err(GeometryError::SingularSurface {
            parameter: "x_crest",
            value: x_c,
        });
    }
    Ok(SurfaceCoeffs { a })
}

/// An airfoil sampled on a station grid; z values follow the grid's
/// flattened ordering (upper TE -> LE -> lower TE).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AirfoilShape {
    pub grid: StationGrid,
    pub z: Vec<f64>,
}

impl AirfoilShape {
    /// Station coordinates in Selig order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.grid
            .stations()
            .zip(&self.z)
            .map(|((_, x), &z)| (x, z))
            .collect()
    }

    pub fn upper_z(&self) -> &[f64] {
        &self.z[..self.grid.n_per_surface()]
    }

    pub fn lower_z(&self) -> &[f64] {
        &self.z[self.grid.n_per_surface() - 1..]
    }
}

/// Evaluate both PARSEC surfaces on the grid stations.
///
/// Surfaces that cross anywhere inside the chord are rejected.
pub fn evaluate_airfoil(
    params: &ParsecParams,
    grid: &StationGrid,
) -> Result<AirfoilShape, GeometryError> {
    let up = solve_parsec_surface(params, Surface::Upper)?;
    let lo = solve_parsec_surface(params, Surface::Lower)?;
    let n = grid.n_per_surface();
    let xs = grid.surface_x();
    let mut z = vec![0.0; 2 * n - 1];
    for (i, &x) in xs.iter().enumerate() {
        let zu = up.eval(x);
        let zl = lo.eval(x);
        let gap = zu - zl;
        if i > 0 && gap < -1e-9 {
            return Err(GeometryError::CrossingSurfaces { x, gap });
        }
        z[n - 1 - i] = zu;
        if i == 0 {
            // shared LE point, z = 0 on both surfaces by construction
            z[n - 1] = zu;
        } else {
            z[n - 1 + i] = zl;
        }
    }
    Ok(AirfoilShape {
        grid: grid.clone(),
        z,
    })
}

/// Cross-section area by the trapezoid rule over the shared abscissae.
pub fn airfoil_area(shape: &AirfoilShape) -> f64 {
    let n = shape.grid.n_per_surface();
    let xs = shape.grid.surface_x();
    let upper = shape.upper_z();
    let lower = shape.lower_z();
    // upper_z is stored TE->LE: upper z at xs[i] is upper[n-1-i]
    let gap: Vec<f64> = (0..n).map(|i| upper[n - 1 - i] - lower[i]).collect();
    trapezoid(xs, &gap)
}

fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xw, yw)| 0.5 * (yw[0] + yw[1]) * (xw[1] - xw[0]))
        .sum()
}
