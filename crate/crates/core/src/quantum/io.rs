//! JSON formats for density matrices and state vectors.
//!
//! Density matrices come in two shapes:
//! `{"n": 900, "diag": [p_0, ..., p_{n-1}]}` for diagonal matrices, or
//! `{"n": 6, "re": [[...]], "im": [[...]]}` row-major for dense ones.
//! State vectors use `{"n": 6, "re": [...], "im": [...]}` with length-n
//! arrays. Loading enforces the type invariants and names the one that
//! failed.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DensityMatrix, Error, StateVector};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityFile {
    n: usize,
    #[serde(default)]
    diag: Option<Vec<f64>>,
    #[serde(default)]
    re: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

pub fn density_from_json(text: &str) -> Result<DensityMatrix, Error> {
    let file: DensityFile =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    match (file.diag, file.re, file.im) {
        (Some(diag), None, None) => {
            if diag.len() != file.n {
                return Err(Error::Format(format!(
                    "diag has {} entries but n = {}",
                    diag.len(),
                    file.n
                )));
            }
            DensityMatrix::from_diagonal(diag)
        }
        (None, Some(re), im) => {
            let im = im.unwrap_or_else(|| vec![vec![0.0; file.n]; file.n]);
            let matrix = complex_matrix(file.n, &re, &im)?;
            DensityMatrix::from_dense(matrix)
        }
        (Some(_), Some(_), _) => {
            Err(Error::Format("given both diag and re; use exactly one form".into()))
        }
        _ => Err(Error::Format("expected either a diag array or re/im matrices".into())),
    }
}

pub fn density_to_json(rho: &DensityMatrix) -> String {
    #[derive(Serialize)]
    struct Diag<'a> {
        n: usize,
        diag: &'a [f64],
    }
    #[derive(Serialize)]
    struct Dense {
        n: usize,
        re: Vec<Vec<f64>>,
        im: Vec<Vec<f64>>,
    }
    if rho.is_diagonal() {
        let diag = rho.diagonal();
        serde_json::to_string(&Diag { n: rho.dim(), diag: &diag }).expect("serializable")
    } else {
        let n = rho.dim();
        let dense = rho.dense();
        let re = (0..n).map(|i| (0..n).map(|j| dense[(i, j)].re).collect()).collect();
        let im = (0..n).map(|i| (0..n).map(|j| dense[(i, j)].im).collect()).collect();
        serde_json::to_string(&Dense { n, re, im }).expect("serializable")
    }
}

pub fn state_from_json(text: &str) -> Result<StateVector, Error> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    if file.re.len() != file.n || file.im.len() != file.n {
        return Err(Error::Format(format!(
            "re/im must have length n = {}, got {} and {}",
            file.n,
            file.re.len(),
            file.im.len()
        )));
    }
    let amplitudes =
        file.re.iter().zip(&file.im).map(|(&re, &im)| Complex64::new(re, im)).collect();
    StateVector::new(amplitudes)
}

pub fn state_to_json(state: &StateVector) -> String {
    #[derive(Serialize)]
    struct File {
        n: usize,
        re: Vec<f64>,
        im: Vec<f64>,
    }
    let file = File {
        n: state.dim(),
        re: state.amplitudes().iter().map(|a| a.re).collect(),
        im: state.amplitudes().iter().map(|a| a.im).collect(),
    };
    serde_json::to_string(&file).expect("serializable")
}

fn complex_matrix(
    n: usize,
    re: &[Vec<f64>],
    im: &[Vec<f64>],
) -> Result<DMatrix<Complex64>, Error> {
    if re.len() != n || im.len() != n {
        return Err(Error::Format(format!(
            "expected {n} rows, got {} (re) and {} (im)",
            re.len(),
            im.len()
        )));
    }
    for (i, (row_re, row_im)) in re.iter().zip(im).enumerate() {
        if row_re.len() != n || row_im.len() != n {
            return Err(Error::Format(format!(
                "row {i} must have {n} columns, got {} (re) and {} (im)",
                row_re.len(),
                row_im.len()
            )));
        }
    }
    Ok(DMatrix::from_fn(n, n, |i, j| Complex64::new(re[i][j], im[i][j])))
}
