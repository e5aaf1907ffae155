//! Radial stress profiles and their text encodings.

use std::io::{self, Write};

use serde::Serialize;

use crate::error::{domain, Result};
use crate::medium::{refractive_index, MediumParams};
use crate::stress::{casimir_stress, force_density};

pub const CSV_HEADER: &str = "r_over_a,n,sigma_eigenvalue,force_density";

/// One row of a radial profile. Stress and force are in physical units with
/// ħc = 1 (lengths in the unit of `a`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialProfileSample {
    pub r_over_a: f64,
    pub n: f64,
    pub sigma_eigenvalue: f64,
    pub force_density: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileFormat {
    Csv,
    JsonLines,
}

/// Uniform grid of `points` radii from `r_min` to `r_max` (physical units).
pub fn radial_profile(
    params: &MediumParams,
    r_min: f64,
    r_max: f64,
    points: usize,
) -> Result<Vec<RadialProfileSample>> {
    let a = params.a();
    if !(r_min >= 0.0 && r_min < r_max && r_max < a) {
        return Err(domain(format!(
            "profile range must satisfy 0 <= rmin < rmax < a, got rmin = {r_min}, rmax = {r_max}, a = {a}"
        )));
    }
    if points < 2 {
        return Err(domain(format!("profile needs at least 2 points, got {points}")));
    }
    let step = (r_max - r_min) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            let r = if i + 1 == points {
                r_max
            } else {
                r_min + step * i as f64
            };
            Ok(RadialProfileSample {
                r_over_a: r / a,
                n: refractive_index(r, params)?,
                sigma_eigenvalue: casimir_stress(r, params)?.eigenvalue(),
                force_density: force_density(r, params)?,
            })
        })
        .collect()
}

/// Fixed 15-significant-digit rendering used by every text output.
pub fn fmt_value(x: f64) -> String {
    // adding +0.0 turns -0.0 into 0.0
    format!("{:.14e}", x + 0.0)
}

pub fn write_profile<W: Write>(out: &mut W, samples: &[RadialProfileSample], format: ProfileFormat) -> io::Result<()> {
    match format {
        ProfileFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for s in samples {
                writeln!(
                    out,
                    "{},{},{},{}",
                    fmt_value(s.r_over_a),
                    fmt_value(s.n),
                    fmt_value(s.sigma_eigenvalue),
                    fmt_value(s.force_density)
                )?;
            }
        }
        ProfileFormat::JsonLines => {
            for s in samples {
                serde_json::to_writer(&mut *out, s)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
