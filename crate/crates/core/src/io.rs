//! JSON wire formats. Scalars are little-endian coefficient lists over
//! `F_p`; a bare integer is read as its image in the prime field.
//! Matrices are `{rows, cols, entries}` with entries in row-major order.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::excursion::{ParamTarget, SourceGroup};
use crate::field::{Fe, Field};
use crate::group::{FiniteGroup, GroupRep, SigmaGroup};
use crate::linalg::Mat;
use crate::sigma_mod::SigmaModule;
use crate::smith::SigmaComplex;
use crate::tate_complex::SigmaChainComplex;
use crate::torus::TorusParityObj;

/// A JSON syntax or shape error, located by byte offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonError {
    pub offset: usize,
    pub message: String,
}

impl std::fmt::Display for JsonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at byte {}", self.message, self.offset)
    }
}

/// Byte offset of a 1-based line and column.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

pub fn parse<T: DeserializeOwned>(text: &str) -> std::result::Result<T, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError {
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })
}

fn default_m() -> u32 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Coeffs(Vec<u32>),
}

impl ScalarJson {
    pub fn to_fe(&self, field: &Field) -> Result<Fe> {
        match self {
            ScalarJson::Int(n) => Ok(field.from_int(*n)),
            ScalarJson::Coeffs(c) => field.from_coeffs(c),
        }
    }

    pub fn from_fe(field: &Field, a: Fe) -> ScalarJson {
        if field.degree() == 1 {
            ScalarJson::Int(a.index() as i64)
        } else {
            ScalarJson::Coeffs(field.coeffs(a))
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<ScalarJson>,
}

impl MatJson {
    pub fn to_mat(&self, field: &Field) -> Result<Mat> {
        let data = self.entries.iter().map(|e| e.to_fe(field)).collect::<Result<Vec<_>>>()?;
        Mat::from_vec(field, self.rows, self.cols, data)
    }

    pub fn from_mat(m: &Mat) -> MatJson {
        MatJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.data().iter().map(|&a| ScalarJson::from_fe(m.field(), a)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SigmaModuleJson {
    pub p: u32,
    #[serde(default = "default_m")]
    pub m: u32,
    pub dim: usize,
    pub sigma: MatJson,
}

impl SigmaModuleJson {
    pub fn field(&self) -> Result<Field> {
        Field::new(self.p, self.m)
    }

    pub fn to_module(&self) -> Result<SigmaModule> {
        let f = self.field()?;
        let m = self.sigma.to_mat(&f)?;
        if m.rows() != self.dim {
            return Err(Error::DimensionMismatch(format!("dim {} but sigma has {} rows", self.dim, m.rows())));
        }
        SigmaModule::new(m)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub degrees: [i64; 2],
    pub modules: Vec<SigmaModuleJson>,
    /// `differentials[k]: C^{a+k} -> C^{a+k+1}`; one fewer than modules.
    #[serde(default)]
    pub differentials: Vec<MatJson>,
}

impl ComplexJson {
    pub fn to_complex(&self) -> Result<SigmaChainComplex> {
        let [a, b] = self.degrees;
        if b < a || (b - a + 1) as usize != self.modules.len() {
            return Err(Error::InvalidComplex("degrees do not match the module list".into()));
        }
        let modules = self.modules.iter().map(|m| m.to_module()).collect::<Result<Vec<_>>>()?;
        let field = modules[0].field().clone();
        if modules.iter().any(|m| m.field() != &field) {
            return Err(Error::InvalidComplex("modules over different fields".into()));
        }
        let diffs = self.differentials.iter().map(|d| d.to_mat(&field)).collect::<Result<Vec<_>>>()?;
        SigmaChainComplex::new(a, modules, diffs)
    }
}

/// Input of `tate`: a single module or a complex.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum TateInput {
    Complex(ComplexJson),
    Module(SigmaModuleJson),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplicialJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
    #[serde(default)]
    pub perm: BTreeMap<String, String>,
    #[serde(default)]
    pub p: Option<u32>,
}

impl SimplicialJson {
    pub fn to_complex(&self, p: u32) -> Result<SigmaComplex> {
        SigmaComplex::from_labels(&self.vertices, &self.facets, &self.perm, p)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Table { order: usize, mul: Vec<Vec<usize>> },
    Perms { perm_gens: Vec<Vec<usize>> },
    Named { named: String },
}

impl GroupJson {
    pub fn to_group(&self) -> Result<FiniteGroup> {
        match self {
            GroupJson::Table { order, mul } => {
                if mul.len() != *order || mul.iter().any(|r| r.len() != *order) {
                    return Err(Error::InvalidGroup("multiplication table is not order x order".into()));
                }
                FiniteGroup::from_table(*order, mul.concat())
            }
            GroupJson::Perms { perm_gens } => FiniteGroup::from_permutations(perm_gens),
            GroupJson::Named { named } => named_group(named),
        }
    }
}

/// `C<n>`, `S<n>` and `<name>^<k>` for direct powers.
pub fn named_group(name: &str) -> Result<FiniteGroup> {
    if let Some((base, k)) = name.split_once('^') {
        let k: usize = k.parse().map_err(|_| Error::InvalidGroup(format!("bad exponent in {name}")))?;
        return Ok(FiniteGroup::power(&named_group(base)?, k));
    }
    let n = |s: &str| s.parse::<usize>().map_err(|_| Error::InvalidGroup(format!("unknown group {name}")));
    match name.split_at(1) {
        ("C", rest) => Ok(FiniteGroup::cyclic(n(rest)?)),
        ("S", rest) => Ok(FiniteGroup::symmetric(n(rest)?)),
        _ => Err(Error::InvalidGroup(format!("unknown group {name}"))),
    }
}

/// A group with an automorphism of order `p`: either an explicit element
/// map or, when absent, the cyclic shift of a direct power.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SigmaGroupJson {
    #[serde(flatten)]
    pub group: GroupJson,
    #[serde(default)]
    pub sigma: Option<Vec<usize>>,
    #[serde(default)]
    pub p: Option<u32>,
    /// With `shift_of`, the group is `(shift_of)^p` with the cyclic shift.
    #[serde(default)]
    pub shift_of: Option<bool>,
}

impl SigmaGroupJson {
    pub fn to_sigma_group(&self, p: u32) -> Result<SigmaGroup> {
        let g = self.group.to_group()?;
        let p = self.p.unwrap_or(p);
        match (&self.sigma, self.shift_of.unwrap_or(false)) {
            (_, true) => Ok(SigmaGroup::shift(&g, p)),
            (Some(s), false) => SigmaGroup::new(&g, s.clone(), p),
            (None, false) => Err(Error::InvalidSigmaData("sigma missing; give a map or shift_of".into())),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepJson {
    pub dim: usize,
    /// Images of the group generators, in order.
    pub matrices: Vec<MatJson>,
}

impl RepJson {
    pub fn to_rep(&self, group: &FiniteGroup, field: &Field) -> Result<GroupRep> {
        let mats = self.matrices.iter().map(|m| m.to_mat(field)).collect::<Result<Vec<_>>>()?;
        GroupRep::new(group, field, self.dim, &mats)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SigmaJson {
    pub map: Vec<usize>,
    pub p: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TargetJson {
    #[serde(rename = "Ghat")]
    pub ghat: GroupJson,
    #[serde(rename = "Q")]
    pub q: GroupJson,
    /// `action[q]` is the automorphism of `Ghat` attached to `q`; identity when absent.
    #[serde(default)]
    pub action: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub sigma: Option<SigmaJson>,
}

impl TargetJson {
    pub fn to_target(&self) -> Result<ParamTarget> {
        let ghat = self.ghat.to_group()?;
        let q = self.q.to_group()?;
        let action = match &self.action {
            Some(a) => a.clone(),
            None => vec![ghat.elements().collect(); q.order()],
        };
        let t = ParamTarget::new(&ghat, &q, action)?;
        match &self.sigma {
            Some(s) => t.with_sigma(s.map.clone(), s.p),
            None => Ok(t),
        }
    }
}

/// `Gamma` with its map to `Q`; unramified (trivial `Q`) when `to_q` is absent.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SourceJson {
    #[serde(flatten)]
    pub group: GroupJson,
    #[serde(default)]
    pub to_q: Option<Vec<usize>>,
}

impl SourceJson {
    pub fn to_source(&self, t: &ParamTarget) -> Result<SourceGroup> {
        let gamma = self.group.to_group()?;
        match &self.to_q {
            Some(m) => SourceGroup::new(&gamma, t.quotient(), m.clone()),
            None => SourceGroup::new(&gamma, t.quotient(), vec![t.quotient().identity(); gamma.order()]),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TorusEntryJson {
    pub label: Vec<i64>,
    pub mult: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TorusJson {
    pub p: usize,
    pub support: Vec<TorusEntryJson>,
}

impl TorusJson {
    pub fn to_obj(&self) -> Result<TorusParityObj> {
        TorusParityObj::new(self.p, self.support.iter().map(|e| (e.label.clone(), e.mult)))
    }

    pub fn from_obj(obj: &TorusParityObj) -> TorusJson {
        TorusJson {
            p: obj.rank(),
            support: obj
                .support()
                .iter()
                .map(|(l, &m)| TorusEntryJson { label: l.clone(), mult: m })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_point_into_the_text() {
        let text = "{\n  \"p\": 3,\n  \"support\": [}\n";
        let err = parse::<TorusJson>(text).unwrap_err();
        assert_eq!(&text[err.offset..err.offset + 1], "}");
    }

    #[test]
    fn scalars_round_trip() {
        let f = Field::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(ScalarJson::from_fe(&f, a).to_fe(&f).unwrap(), a);
        }
        assert_eq!(ScalarJson::Int(-1).to_fe(&Field::prime(5)).unwrap(), Field::prime(5).from_int(4));
    }

    #[test]
    fn jordan_block_from_json() {
        let text = r#"{"p": 3, "dim": 2, "sigma": {"rows": 2, "cols": 2, "entries": [1, 1, 0, 1]}}"#;
        let m: SigmaModuleJson = parse(text).unwrap();
        assert_eq!(m.to_module().unwrap().tate_dims(), (1, 1));
    }

    #[test]
    fn named_groups() {
        assert_eq!(named_group("S3").unwrap().order(), 6);
        assert_eq!(named_group("C2^3").unwrap().order(), 8);
        assert!(named_group("X9").is_err());
    }
}
