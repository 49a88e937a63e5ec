//! Matrix sources for the CLI: JSON literal files plus built-in names so
//! the common Pauli/identity/Bloch cases need no files.

use qfim::bloch::{state_from_bloch, BlochVector};
use qfim::matrix::MatrixLiteral;
use qfim::state::{DensityMatrix, HermitianMatrix};

/// Trace tolerance accepted for state input; inputs inside it are
/// renormalized to unit trace before construction (the library itself
/// demands 1e-12).
pub const INPUT_TRACE_TOLERANCE: f64 = 1e-9;

pub fn load_observable(source: &str) -> Result<HermitianMatrix<f64>, String> {
    match source {
        "sigma1" | "sigma_1" | "sx" => return Ok(HermitianMatrix::pauli_x()),
        "sigma2" | "sigma_2" | "sy" => return Ok(HermitianMatrix::pauli_y()),
        "sigma3" | "sigma_3" | "sz" => return Ok(HermitianMatrix::pauli_z()),
        "identity" | "id" => return Ok(HermitianMatrix::identity(2)),
        _ => {}
    }
    if let Some(n) = source
        .strip_prefix("identity:")
        .or(source.strip_prefix("id:"))
    {
        let n: usize = n
            .parse()
            .map_err(|_| format!("bad identity dimension '{n}'"))?;
        return Ok(HermitianMatrix::identity(n));
    }
    let lit = read_literal(source)?;
    HermitianMatrix::new(lit.to_matrix()).map_err(|e| format!("{source}: {e}"))
}

pub fn load_state(source: &str) -> Result<DensityMatrix<f64>, String> {
    if let Some(n) = source.strip_prefix("mixed:") {
        let n: usize = n.parse().map_err(|_| format!("bad dimension '{n}'"))?;
        if n < 2 {
            return Err("mixed:<n> needs n >= 2".into());
        }
        return Ok(DensityMatrix::maximally_mixed(n));
    }
    if let Some(coords) = source.strip_prefix("bloch:") {
        let parts: Vec<&str> = coords.split(',').collect();
        if parts.len() != 3 {
            return Err("bloch:<x>,<y>,<z> needs three coordinates".into());
        }
        let mut xyz = [0.0f64; 3];
        for (slot, part) in xyz.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|_| format!("bad Bloch coordinate '{part}'"))?;
        }
        return state_from_bloch(&BlochVector::new(xyz[0], xyz[1], xyz[2]))
            .map_err(|e| e.to_string());
    }
    let lit = read_literal(source)?;
    let base: HermitianMatrix<f64> =
        HermitianMatrix::new(lit.to_matrix()).map_err(|e| format!("{source}: {e}"))?;
    let trace = base.trace();
    if (trace - 1.0).abs() > INPUT_TRACE_TOLERANCE {
        return Err(format!(
            "{source}: trace is {trace}, expected 1 within {INPUT_TRACE_TOLERANCE:e}"
        ));
    }
    let normalized = base.scale(1.0 / trace);
    DensityMatrix::new(normalized).map_err(|e| format!("{source}: {e}"))
}

fn read_literal(path: &str) -> Result<MatrixLiteral, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    MatrixLiteral::parse(&text).map_err(|e| format!("{path}: {e}"))
}
