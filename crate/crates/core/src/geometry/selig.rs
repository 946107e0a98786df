use super::{AirfoilShape, GeometryError};
use std::fmt::Write as _;
use std::path::Path;

/// Parse a Selig-format coordinate file: one name line, then "x z" pairs
/// from the upper TE over the LE to the lower TE.
pub fn parse_selig(text: &str) -> Result<(String, Vec<(f64, f64)>), GeometryError> {
    let mut lines = text.lines();
    let name = lines
        .next()
        .ok_or_else(|| GeometryError::BadCoordinateFile("empty file".into()))?
        .trim()
        .to_string();
    let mut pts = Vec::new();
    for (ln, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let x: f64 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GeometryError::BadCoordinateFile(format!("line {}: bad x", ln + 2)))?;
        let z: f64 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GeometryError::BadCoordinateFile(format!("line {}: bad z", ln + 2)))?;
        pts.push((x, z));
    }
    if pts.len() < 3 {
        return Err(GeometryError::BadCoordinateFile(format!(
            "only {} coordinate rows",
            pts.len()
        )));
    }
    Ok((name, pts))
}

pub fn read_selig(path: &Path) -> Result<(String, Vec<(f64, f64)>), GeometryError> {
    parse_selig(&std::fs::read_to_string(path)?)
}

/// Render a shape as Selig-format text: name line, then 6-decimal "x z"
/// pairs in station order (upper TE -> LE -> lower TE).
pub fn selig_text(name: &str, shape: &AirfoilShape) -> String {
    let mut out = String::with_capacity(16 * shape.z.len());
    out.push_str(name);
    out.push('\n');
    for (x, z) in shape.points() {
        let _ = writeln!(out, "{:.6} {:.6}", x, z + 0.0);
    }
    out
}

pub fn write_selig(path: &Path, name: &str, shape: &AirfoilShape) -> Result<(), GeometryError> {
    std::fs::write(path, selig_text(name, shape))?;
    Ok(())
}
