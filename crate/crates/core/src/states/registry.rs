//! Named state addresses used by the command line:
//! `werner:<p>`, `E1`..`E6`, `iso:E`, `iso:S`, `pure:<a11,a10,a01,a00>`.
//!
//! Amplitudes are either four complex literals (`0.5+0.5i`, `-0.7071`, `1i`)
//! or eight plain numbers read as `re,im` pairs.

use num_complex::Complex64;

use super::pure::{pure_density, PureStateAmplitudes};
use super::{example_state, isospectral_pair, werner, ExampleId};
use crate::error::{Error, Result};
use crate::linalg::DensityMatrix;

pub fn parse_amplitudes(text: &str) -> Result<PureStateAmplitudes> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let values: Vec<Complex64> = match parts.len() {
        4 => parts
            .iter()
            .map(|p| p.parse::<Complex64>().map_err(|e| Error::Parse(format!("amplitude '{p}': {e}"))))
            .collect::<Result<_>>()?,
        8 => {
            let reals: Vec<f64> = parts
                .iter()
                .map(|p| p.parse::<f64>().map_err(|e| Error::Parse(format!("number '{p}': {e}"))))
                .collect::<Result<_>>()?;
            reals.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
        }
        n => return Err(Error::Parse(format!("expected 4 complex or 8 real values, got {n}"))),
    };
    PureStateAmplitudes::from_vector(&values)
}

/// Resolve a registry name to a state.
pub fn lookup(spec: &str) -> Result<DensityMatrix> {
    let spec = spec.trim();
    if let Some(p) = spec.strip_prefix("werner:") {
        let p: f64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad Werner parameter '{p}'")))?;
        return werner(p);
    }
    if let Some(rest) = spec.strip_prefix("pure:") {
        return pure_density(&parse_amplitudes(rest)?);
    }
    match spec {
        "iso:E" => return Ok(isospectral_pair().0),
        "iso:S" => return Ok(isospectral_pair().1),
        _ => {}
    }
    spec.parse::<ExampleId>().map(example_state).map_err(|_| {
        Error::Parse(format!(
            "unknown state '{spec}' (expected werner:<p>, E1..E6, iso:E, iso:S or pure:<amplitudes>)"
        ))
    })
}
