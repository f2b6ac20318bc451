use std::fs;
use std::path::Path;

use qcx_core::embed::EmbeddingMap;
use qcx_core::explattice::ExpLatticeMap;
use qcx_core::{IntBijection, MapExpr, MonotoneSeq, Point};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Reads `path` and returns its bytes alongside the parsed value. Parse
/// errors keep serde's line and column.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<(Vec<u8>, T), CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let value = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((bytes, value))
}

pub fn load_sequence(path: &Path) -> Result<(Vec<u8>, IntBijection), CliError> {
    let (bytes, seq): (_, IntBijection) = load(path)?;
    seq.well_formed().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((bytes, seq))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingInput {
    pub image: MonotoneSeq,
    pub assignment: IntBijection,
}

pub fn load_embedding(path: &Path) -> Result<(Vec<u8>, EmbeddingInput), CliError> {
    let (bytes, e): (_, EmbeddingInput) = load(path)?;
    let bad = |m: String| CliError::Input(format!("{}: {m}", path.display()));
    e.image.validate().map_err(|x| bad(x.to_string()))?;
    e.assignment.well_formed().map_err(|x| bad(x.to_string()))?;
    Ok((bytes, e))
}

/// A map written by one command and evaluated by another.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Handle {
    Expr { delta: f64, expr: MapExpr },
    Embedding { map: EmbeddingMap },
    ExpLattice { map: ExpLatticeMap },
}

impl Handle {
    pub fn eval(&self, z: Point) -> Result<Point, String> {
        match self {
            Handle::Expr { expr, .. } => Ok(expr.eval(z)),
            Handle::Embedding { map } => Ok(map.eval(z)),
            Handle::ExpLattice { map } => map.eval(z).map_err(|e| e.to_string()),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let r = match self {
            Handle::Expr { expr, .. } => expr.validate(),
            Handle::Embedding { map } => map.auto.validate().and(map.ba.h.validate()),
            Handle::ExpLattice { map } => map.g.validate(),
        };
        r.map_err(|e| e.to_string())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Handle::Expr { .. } => "expr",
            Handle::Embedding { .. } => "embedding",
            Handle::ExpLattice { .. } => "exp_lattice",
        }
    }
}

pub fn load_handle(path: &Path) -> Result<(Vec<u8>, Handle), CliError> {
    let (bytes, h): (_, Handle) = load(path)?;
    h.validate().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((bytes, h))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    write_text(path, &s)
}

pub fn write_text(path: &Path, s: &str) -> Result<(), CliError> {
    fs::write(path, s).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
