//! JSON file formats. Indices are 0-based; scalars are rational literals
//! (`"-3/4"`, `"7"`); plain JSON integers are accepted on input.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use lieops::family::QuadraticRhoFamily;
use lieops::scalar::{format_scalar, parse_scalar};
use lieops::{BilinearMap, LieAlgebra, Matrix, Scalar, Vector};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Literal {
    Text(String),
    Int(i64),
}

impl Literal {
    fn from_scalar(s: &Scalar) -> Self {
        Literal::Text(format_scalar(s))
    }

    fn scalar(&self, at: impl Fn() -> String) -> Result<Scalar> {
        match self {
            Literal::Int(n) => Ok(Scalar::from_integer((*n).into())),
            Literal::Text(t) => parse_scalar(t).with_context(at),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StructureRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Literal,
}

/// `[e_i, e_j] = sum_k c e_k` for `i < j`; missing records are zero.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub structure: Vec<StructureRecord>,
}

/// `rows[r][c]`; column `l` holds the image of `e_l`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub name: String,
    pub dim: usize,
    pub rows: Vec<Vec<Literal>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PolarRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub p: Literal,
}

/// `rho(e_i, e_j) e_k = sum_l p e_l` for `i <= j`; `(j, i)` is implied.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub name: String,
    pub dim: usize,
    pub entries: Vec<PolarRecord>,
}

/// A file that was read, with its SHA-256.
#[derive(Debug, Clone)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Tracks every input read during one invocation.
#[derive(Debug, Default)]
pub struct Inputs {
    pub digests: Vec<InputDigest>,
}

impl Inputs {
    fn read<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> Result<T> {
        let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        self.digests.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        serde_json::from_slice(&bytes)
            .with_context(|| format!("{}: malformed file", path.display()))
    }

    pub fn algebra(&mut self, path: &Path) -> Result<Arc<LieAlgebra>> {
        let file: AlgebraFile = self.read(path)?;
        let algebra = file
            .to_algebra()
            .with_context(|| format!("{}: invalid algebra", path.display()))?;
        Ok(Arc::new(algebra))
    }

    pub fn operator(&mut self, path: &Path, dim: usize) -> Result<Matrix> {
        let file: OperatorFile = self.read(path)?;
        let m = file
            .to_matrix()
            .with_context(|| format!("{}: invalid operator", path.display()))?;
        if m.dim() != dim {
            bail!(
                "{}: operator has dimension {}, the algebra has dimension {dim}",
                path.display(),
                m.dim()
            );
        }
        Ok(m)
    }

    /// A plain square matrix, e.g. the `q` of a factory.
    pub fn matrix(&mut self, path: &Path) -> Result<Matrix> {
        let file: OperatorFile = self.read(path)?;
        file.to_matrix()
            .with_context(|| format!("{}: invalid matrix", path.display()))
    }

    pub fn family(&mut self, path: &Path, algebra: Arc<LieAlgebra>) -> Result<QuadraticRhoFamily> {
        let file: FamilyFile = self.read(path)?;
        file.to_family(algebra)
            .with_context(|| format!("{}: invalid family", path.display()))
    }
}

impl AlgebraFile {
    pub fn from_algebra(l: &LieAlgebra) -> Self {
        let n = l.dim();
        let mut structure = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = l.structure().coeff(i, j, k);
                    if !c.is_zero() {
                        structure.push(StructureRecord {
                            i,
                            j,
                            k,
                            c: Literal::from_scalar(c),
                        });
                    }
                }
            }
        }
        AlgebraFile {
            name: l.name().to_string(),
            dim: n,
            basis: l.labels().to_vec(),
            structure,
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let n = self.dim;
        if n == 0 {
            bail!("dim must be positive");
        }
        if self.basis.len() != n {
            bail!("basis has {} labels, dim is {n}", self.basis.len());
        }
        let mut seen = BTreeSet::new();
        let mut records = Vec::new();
        for (idx, r) in self.structure.iter().enumerate() {
            if r.i >= n || r.j >= n || r.k >= n {
                bail!("structure[{idx}]: index out of range for dim {n}");
            }
            if r.i >= r.j {
                bail!(
                    "structure[{idx}]: records must have i < j, got i = {}, j = {}",
                    r.i,
                    r.j
                );
            }
            if !seen.insert((r.i, r.j, r.k)) {
                bail!(
                    "structure[{idx}]: duplicate record ({}, {}, {})",
                    r.i,
                    r.j,
                    r.k
                );
            }
            let c = r.c.scalar(|| format!("structure[{idx}].c"))?;
            records.push((r.i, r.j, r.k, c));
        }
        let bracket = BilinearMap::from_records(n, records)?;
        Ok(LieAlgebra::new(
            self.name.clone(),
            self.basis.clone(),
            bracket,
        )?)
    }
}

impl OperatorFile {
    pub fn from_matrix(name: impl Into<String>, m: &Matrix) -> Self {
        OperatorFile {
            name: name.into(),
            dim: m.dim(),
            rows: m
                .rows()
                .map(|row| row.iter().map(Literal::from_scalar).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        let n = self.dim;
        if n == 0 {
            bail!("dim must be positive");
        }
        if self.rows.len() != n {
            bail!("expected {n} rows, found {}", self.rows.len());
        }
        let mut rows = Vec::with_capacity(n);
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != n {
                bail!("rows[{r}]: expected {n} entries, found {}", row.len());
            }
            rows.push(
                row.iter()
                    .enumerate()
                    .map(|(c, x)| x.scalar(|| format!("rows[{r}][{c}]")))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(Matrix::from_rows(rows)?)
    }
}

impl FamilyFile {
    pub fn from_family(f: &QuadraticRhoFamily) -> Self {
        let n = f.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    for l in 0..n {
                        let p = f.entry(i, j, k, l);
                        if !p.is_zero() {
                            entries.push(PolarRecord {
                                i,
                                j,
                                k,
                                l,
                                p: Literal::from_scalar(p),
                            });
                        }
                    }
                }
            }
        }
        FamilyFile {
            name: f.name().to_string(),
            dim: n,
            entries,
        }
    }

    pub fn to_family(&self, algebra: Arc<LieAlgebra>) -> Result<QuadraticRhoFamily> {
        let n = self.dim;
        if n != algebra.dim() {
            bail!(
                "family has dimension {n}, the algebra has dimension {}",
                algebra.dim()
            );
        }
        let mut polar = vec![Scalar::zero(); n.pow(4)];
        let mut seen = BTreeSet::new();
        for (idx, e) in self.entries.iter().enumerate() {
            if e.i >= n || e.j >= n || e.k >= n || e.l >= n {
                bail!("entries[{idx}]: index out of range for dim {n}");
            }
            if e.i > e.j {
                bail!(
                    "entries[{idx}]: records must have i <= j, got i = {}, j = {}",
                    e.i,
                    e.j
                );
            }
            if !seen.insert((e.i, e.j, e.k, e.l)) {
                bail!("entries[{idx}]: duplicate record");
            }
            let p = e.p.scalar(|| format!("entries[{idx}].p"))?;
            polar[((e.i * n + e.j) * n + e.k) * n + e.l] = p.clone();
            polar[((e.j * n + e.i) * n + e.k) * n + e.l] = p;
        }
        Ok(QuadraticRhoFamily::new(algebra, self.name.clone(), polar)?)
    }
}

/// Parses `"1,0,-1/2"` into a vector.
pub fn parse_vector(text: &str, dim: usize) -> Result<Vector> {
    let coords = text
        .split(',')
        .map(|t| parse_scalar(t.trim()).with_context(|| format!("in vector {text:?}")))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != dim {
        bail!(
            "vector {text:?} has {} coordinates, expected {dim}",
            coords.len()
        );
    }
    Ok(Vector::new(coords))
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}
