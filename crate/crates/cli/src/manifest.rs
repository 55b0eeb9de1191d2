//! Manifest files: JSON with every rational written as a `"num/den"`
//! string. Four kinds: Lie data, curvature data, jet suite parameters, and
//! graph lists.

use graphweights::linalg::RatMat;
use graphweights::weights::{LieData, RwData, RwMatTensor, RwTensor};
use graphweights::{parse_rat, Rat};
use serde::Deserialize;

#[derive(Debug)]
pub enum ManifestError {
    Io(std::io::Error),
    Json(serde_json::Error),
    BadRational(String),
    Invalid(String),
}

impl std::fmt::Display for ManifestError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ManifestError::Io(e) => write!(f, "io: {e}"),
            ManifestError::Json(e) => write!(f, "json: {e}"),
            ManifestError::BadRational(s) => write!(f, "bad rational `{s}`"),
            ManifestError::Invalid(s) => write!(f, "invalid manifest: {s}"),
        }
    }
}

impl std::error::Error for ManifestError {}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Manifest {
    Lie(LieManifest),
    Rw(RwManifest),
    Jets(JetsManifest),
    Graphs(GraphsManifest),
}

#[derive(Debug, Deserialize)]
pub struct LieManifest {
    /// `structure_constants[c][a][b]` multiplies the `c`-th generator in
    /// the bracket of generators `a` and `b`.
    pub structure_constants: Vec<Vec<Vec<String>>>,
    /// One matrix per generator, row-major.
    pub representation: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
pub struct RwManifest {
    pub dimension: usize,
    pub omega: Vec<Vec<String>>,
    /// Tensors of increasing order starting at 3: `theta_jets[k][ibar][l...]`
    /// flattened over the trailing indices.
    #[serde(default)]
    pub theta_jets: Vec<Vec<String>>,
    /// Matrix tensors of increasing order starting at 1:
    /// `k_jets[k][ibar][l...][a][b]` flattened likewise.
    #[serde(default)]
    pub k_jets: Vec<Vec<Vec<Vec<String>>>>,
    #[serde(default)]
    pub bundle_rank: usize,
    pub truncation: usize,
}

#[derive(Debug, Deserialize)]
pub struct JetsManifest {
    pub dimension: usize,
    #[serde(default = "default_order_xi")]
    pub order_xi: u32,
    #[serde(default = "default_order_y")]
    pub order_y: u32,
    #[serde(default)]
    pub bundle_rank: usize,
    /// Holomorphic dimension for the curvature suite; the body doubles it.
    #[serde(default)]
    pub moments: usize,
}

fn default_order_xi() -> u32 {
    3
}

fn default_order_y() -> u32 {
    2
}

#[derive(Debug, Deserialize)]
pub struct GraphsManifest {
    pub graphs: Vec<String>,
}

pub fn load(path: &str) -> Result<Manifest, ManifestError> {
    let text = std::fs::read_to_string(path).map_err(ManifestError::Io)?;
    serde_json::from_str(&text).map_err(ManifestError::Json)
}

fn rational(s: &str) -> Result<Rat, ManifestError> {
    parse_rat(s).ok_or_else(|| ManifestError::BadRational(s.to_string()))
}

pub fn matrix(rows: &[Vec<String>]) -> Result<RatMat, ManifestError> {
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let mut row = Vec::with_capacity(r.len());
        for s in r {
            row.push(rational(s)?);
        }
        out.push(row);
    }
    Ok(RatMat::from_rows(out))
}

impl LieManifest {
    pub fn to_data(&self) -> Result<LieData, ManifestError> {
        let f = self
            .structure_constants
            .iter()
            .map(|m| matrix(m))
            .collect::<Result<Vec<_>, _>>()?;
        let t = self
            .representation
            .iter()
            .map(|m| matrix(m))
            .collect::<Result<Vec<_>, _>>()?;
        LieData::new(f, t).map_err(|e| ManifestError::Invalid(e.to_string()))
    }
}

impl RwManifest {
    pub fn to_data(&self) -> Result<RwData, ManifestError> {
        let d = self.dimension;
        let omega = matrix(&self.omega)?;
        let mut theta = Vec::new();
        for (k, flat) in self.theta_jets.iter().enumerate() {
            let order = k + 3;
            let want = d * d.pow(order as u32);
            if flat.len() != want {
                return Err(ManifestError::Invalid(format!(
                    "theta jet {k} needs {want} entries, found {}",
                    flat.len()
                )));
            }
            let mut t = RwTensor::zero(d, order);
            for (i, s) in flat.iter().enumerate() {
                t.data[i] = rational(s)?;
            }
            theta.push(t);
        }
        let mut kj = Vec::new();
        for (k, flat) in self.k_jets.iter().enumerate() {
            let order = k + 1;
            let want = d * d.pow(order as u32);
            if flat.len() != want {
                return Err(ManifestError::Invalid(format!(
                    "bundle jet {k} needs {want} matrices, found {}",
                    flat.len()
                )));
            }
            let mut t = RwMatTensor::zero(d, order, self.bundle_rank);
            for (i, m) in flat.iter().enumerate() {
                t.data[i] = matrix(m)?;
            }
            kj.push(t);
        }
        RwData::new(d, omega, theta, kj, self.truncation)
            .map_err(|e| ManifestError::Invalid(e.to_string()))
    }
}
