//! JSON interchange format. Every document carries a `kind` tag; complex
//! numbers are `[re, im]` pairs and matrices are arrays of rows.

use serde::{Deserialize, Serialize};

use crate::axioms::Check;
use crate::characters::{ControlledHadamard, Hadamard};
use crate::construct::PartitionedUeb;
use crate::cplx::{CMatrix, C64};
use crate::error::{Error, Result};
use crate::gf::FiniteField;
use crate::mub::{label, MubFamily};

pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: usize,
    pub n: usize,
    /// Modulus coefficients, constant term first.
    pub poly: Vec<usize>,
}

impl FieldSpec {
    pub fn of(f: &FiniteField) -> Self {
        FieldSpec { p: f.characteristic(), n: f.degree(), poly: f.modulus().to_vec() }
    }

    pub fn build(&self) -> Result<FiniteField> {
        FiniteField::new(self.p, self.n, Some(&self.poly))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HadamardDoc {
    pub dimension: usize,
    pub matrix: JsonMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlledHadamardDoc {
    pub dimension: usize,
    pub control_dim: usize,
    pub members: Vec<JsonMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDoc {
    pub x: usize,
    pub a: usize,
    pub matrix: JsonMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UebDoc {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub operators: Vec<OperatorDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub label: String,
    pub matrix: JsonMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MubDoc {
    pub dimension: usize,
    pub bases: Vec<BasisDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub passed: bool,
    pub entries: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Manifest {
    Field(FieldSpec),
    Hadamard(HadamardDoc),
    ControlledHadamard(ControlledHadamardDoc),
    Ueb(UebDoc),
    Mub(MubDoc),
    Report(ReportDoc),
}

impl Manifest {
    pub fn kind(&self) -> &'static str {
        match self {
            Manifest::Field(_) => "field",
            Manifest::Hadamard(_) => "hadamard",
            Manifest::ControlledHadamard(_) => "controlled_hadamard",
            Manifest::Ueb(_) => "ueb",
            Manifest::Mub(_) => "mub",
            Manifest::Report(_) => "report",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    /// Compact JSON with a trailing newline. Key order follows the struct
    /// definitions and floats use the shortest round-trip form, so output is
    /// byte-stable.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("manifests always serialize");
        s.push('\n');
        s
    }

    pub fn from_hadamard(h: &Hadamard) -> Self {
        Manifest::Hadamard(HadamardDoc { dimension: h.dimension(), matrix: matrix_to_json(h.matrix()) })
    }

    pub fn from_controlled_hadamard(h: &ControlledHadamard) -> Self {
        Manifest::ControlledHadamard(ControlledHadamardDoc {
            dimension: h.dimension(),
            control_dim: h.control_dim(),
            members: h.members().iter().map(matrix_to_json).collect(),
        })
    }

    pub fn from_ueb(u: &PartitionedUeb, field: Option<&FiniteField>) -> Self {
        let d = u.dimension();
        let operators = (0..d * d)
            .map(|k| OperatorDoc { x: k / d, a: k % d, matrix: matrix_to_json(u.op(k / d, k % d)) })
            .collect();
        Manifest::Ueb(UebDoc { dimension: d, field: field.map(FieldSpec::of), operators })
    }

    pub fn from_mub(m: &MubFamily) -> Self {
        let bases = m
            .bases()
            .iter()
            .enumerate()
            .map(|(k, b)| BasisDoc { label: label(k), matrix: matrix_to_json(b) })
            .collect();
        Manifest::Mub(MubDoc { dimension: m.dimension(), bases })
    }
}

impl HadamardDoc {
    pub fn to_hadamard(&self) -> Result<Hadamard> {
        Hadamard::new(matrix_from_json(&self.matrix, self.dimension, "matrix")?)
    }
}

impl ControlledHadamardDoc {
    pub fn to_controlled_hadamard(&self) -> Result<ControlledHadamard> {
        if self.members.len() != self.control_dim || self.control_dim == 0 {
            return Err(Error::Malformed(format!(
                "control_dim is {} but {} members are given",
                self.control_dim,
                self.members.len()
            )));
        }
        let members = self
            .members
            .iter()
            .enumerate()
            .map(|(x, m)| matrix_from_json(m, self.dimension, &format!("member {x}")))
            .collect::<Result<Vec<_>>>()?;
        ControlledHadamard::new(members)
    }
}

impl UebDoc {
    pub fn to_ueb(&self) -> Result<PartitionedUeb> {
        let d = self.dimension;
        if self.operators.len() != d * d {
            return Err(Error::Malformed(format!("{} operators for dimension {d}", self.operators.len())));
        }
        let mut ops = Vec::with_capacity(d * d);
        for (k, op) in self.operators.iter().enumerate() {
            if (op.x, op.a) != (k / d, k % d) {
                return Err(Error::Malformed(format!(
                    "operator {k} is labelled ({}, {}); expected ({}, {})",
                    op.x,
                    op.a,
                    k / d,
                    k % d
                )));
            }
            ops.push(matrix_from_json(&op.matrix, d, &format!("operator ({}, {})", op.x, op.a))?);
        }
        PartitionedUeb::new(d, ops)
    }
}

impl MubDoc {
    pub fn to_mub(&self) -> Result<MubFamily> {
        let d = self.dimension;
        if self.bases.len() != d + 1 {
            return Err(Error::Malformed(format!("{} bases for dimension {d}", self.bases.len())));
        }
        let mut bases = Vec::with_capacity(d + 1);
        for (k, b) in self.bases.iter().enumerate() {
            if b.label != label(k) {
                return Err(Error::Malformed(format!("basis {k} is labelled {:?}; expected {:?}", b.label, label(k))));
            }
            bases.push(matrix_from_json(&b.matrix, d, &format!("basis {}", b.label))?);
        }
        MubFamily::new(bases)
    }
}

fn clean(x: f64) -> f64 {
    // maps −0.0 to 0.0
    x + 0.0
}

pub fn matrix_to_json(m: &CMatrix) -> JsonMatrix {
    m.to_rows().iter().map(|row| row.iter().map(|z| [clean(z.re), clean(z.im)]).collect()).collect()
}

/// Reads a d×d matrix, rejecting ragged rows and non-finite entries.
pub fn matrix_from_json(rows: &JsonMatrix, d: usize, what: &str) -> Result<CMatrix> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(Error::Malformed(format!("{what} is not {d}x{d}")));
    }
    let data: Vec<C64> = rows.iter().flatten().map(|&[re, im]| C64::new(re, im)).collect();
    CMatrix::from_vec(d, d, data).map_err(|e| Error::Malformed(format!("{what}: {e}")))
}
