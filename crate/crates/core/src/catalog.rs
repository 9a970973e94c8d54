//! Named algebras and the `.lie.json` algebra-spec format.
//!
//! ```json
//! {"name":"K2","field":"gfp:3","dim":2,"brackets":[[1,2,["1","0"]]],"expected":{"solvable":true}}
//! ```
//!
//! Brackets are 1-based `[i, j, coefficients]` with `i < j`; omitted pairs
//! bracket to zero. Coefficients are scalar literals (`"3"`, `"-1/2"`);
//! bare JSON integers are also accepted on input.

use serde::{Deserialize, Serialize};

use crate::enumerate::{is_supersolvable, random_solvable, EnumerationBudget, Lattice};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::liealg::LieAlgebra;
use crate::linalg::{Subspace, Vector};

/// Builtin names, in catalog order. Direct sums of these are formed with `+`.
pub const BUILTINS: &[&str] = &["abelian(n)", "K2", "H3", "E3", "E4", "R3", "N4", "sl2", "gl2"];

/// The fixed test population, all of dimension at most four.
pub const CATALOG: &[&str] = &[
    "abelian(1)",
    "abelian(2)",
    "abelian(3)",
    "abelian(4)",
    "K2",
    "H3",
    "E3",
    "E4",
    "R3",
    "N4",
    "K2+abelian(1)",
    "K2+K2",
    "sl2",
    "gl2",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub solvable: bool,
    pub nilpotent: bool,
    pub supersolvable: bool,
    pub metanilpotent: bool,
}

/// `-1` is a square in the field (so `t² + 1` splits).
fn minus_one_is_square(d: FieldDescriptor) -> bool {
    match d.order() {
        None => false,
        Some(p) => p == 2 || p % 4 == 1,
    }
}

fn split_sum(name: &str) -> Vec<&str> {
    name.split(['+', '⊕']).map(str::trim).collect()
}

fn atom(name: &str, d: FieldDescriptor) -> Result<(LieAlgebra, Metadata)> {
    let all = Metadata {
        solvable: true,
        nilpotent: true,
        supersolvable: true,
        metanilpotent: true,
    };
    let solvable_only = Metadata { nilpotent: false, ..all };
    let b = |dim, brackets: &[(usize, usize, &[i64])]| LieAlgebra::from_int_brackets(name, d, dim, brackets);
    let (algebra, meta) = match name {
        "K2" => (b(2, &[(0, 1, &[1, 0])])?, solvable_only),
        "H3" => (b(3, &[(0, 1, &[0, 0, 1])])?, all),
        "E3" => (
            b(3, &[(0, 2, &[0, 1, 0]), (1, 2, &[-1, 0, 0])])?,
            Metadata {
                supersolvable: minus_one_is_square(d),
                ..solvable_only
            },
        ),
        "E4" => (
            b(
                4,
                &[(0, 2, &[1, 0, 0, 0]), (1, 2, &[0, 1, 0, 0]), (0, 3, &[0, -1, 0, 0]), (1, 3, &[1, 0, 0, 0])],
            )?,
            Metadata {
                supersolvable: minus_one_is_square(d),
                ..solvable_only
            },
        ),
        "R3" => (b(3, &[(0, 2, &[1, 0, 0]), (1, 2, &[0, 1, 0])])?, solvable_only),
        "N4" => (b(4, &[(0, 1, &[0, 0, 1, 0]), (0, 2, &[0, 0, 0, 1])])?, all),
        "sl2" | "gl2" => {
            if d.characteristic() == 2 {
                return Err(Error::InvalidFieldForAlgebra {
                    name: name.into(),
                    field: d,
                });
            }
            // basis e, h, f
            let sl2 = LieAlgebra::from_int_brackets("sl2", d, 3, &[(0, 1, &[-2, 0, 0]), (0, 2, &[0, 1, 0]), (1, 2, &[0, 0, -2])])?;
            let algebra = if name == "gl2" {
                sl2.direct_sum(&LieAlgebra::abelian(d, 1))?.with_name("gl2")
            } else {
                sl2
            };
            (
                algebra,
                Metadata {
                    solvable: false,
                    nilpotent: false,
                    supersolvable: false,
                    metanilpotent: false,
                },
            )
        }
        _ if name.starts_with("rand(") => {
            let algebra = random_named(name, d)?;
            let meta = computed_metadata(&algebra, &EnumerationBudget::default())?;
            (algebra, meta)
        }
        _ => {
            let n = name
                .strip_prefix("abelian(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::UnknownAlgebra(name.into()))?;
            (LieAlgebra::abelian(d, n), all)
        }
    };
    Ok((algebra, meta))
}

/// `rand(n=4,p=3,seed=7)`: the seeded random solvable algebra with those parameters.
fn random_named(name: &str, d: FieldDescriptor) -> Result<LieAlgebra> {
    let unknown = || Error::UnknownAlgebra(name.into());
    let body = name.strip_prefix("rand(").and_then(|r| r.strip_suffix(')')).ok_or_else(unknown)?;
    let mut params = [None; 3];
    for part in body.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(unknown)?;
        let slot = ["n", "p", "seed"].iter().position(|k| *k == key.trim()).ok_or_else(unknown)?;
        params[slot] = Some(value.trim().parse::<u64>().map_err(|_| unknown())?);
    }
    let [Some(n), Some(p), Some(seed)] = params else {
        return Err(unknown());
    };
    if d.order() != Some(p as u32) {
        return Err(Error::InvalidFieldForAlgebra { name: name.into(), field: d });
    }
    random_solvable(n as usize, p, seed)
}

/// A builtin algebra, or a `+`-separated direct sum of builtins.
pub fn builtin(name: &str, d: FieldDescriptor) -> Result<LieAlgebra> {
    Ok(builtin_with_metadata(name, d)?.0)
}

/// A builtin together with its declared metadata over `d`.
pub fn builtin_with_metadata(name: &str, d: FieldDescriptor) -> Result<(LieAlgebra, Metadata)> {
    let mut parts = split_sum(name).into_iter();
    let first = parts.next().filter(|p| !p.is_empty()).ok_or_else(|| Error::UnknownAlgebra(name.into()))?;
    let (mut algebra, mut meta) = atom(first, d)?;
    for part in parts {
        let (next, m) = atom(part, d)?;
        algebra = algebra.direct_sum(&next)?;
        meta = Metadata {
            solvable: meta.solvable && m.solvable,
            nilpotent: meta.nilpotent && m.nilpotent,
            supersolvable: meta.supersolvable && m.supersolvable,
            metanilpotent: meta.metanilpotent && m.metanilpotent,
        };
    }
    Ok((algebra.with_name(name), meta))
}

/// Catalog entries available over `d`.
pub fn catalog(d: FieldDescriptor) -> Vec<LieAlgebra> {
    CATALOG.iter().filter_map(|n| builtin(n, d).ok()).collect()
}

/// Metadata computed from the structure.
pub fn computed_metadata(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<Metadata> {
    Ok(Metadata {
        solvable: algebra.is_solvable(),
        nilpotent: algebra.is_nilpotent(),
        supersolvable: is_supersolvable(algebra, budget)?,
        metanilpotent: algebra.is_metanilpotent(),
    })
}

/// A coefficient as written in a spec file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Text(String),
    Int(i64),
}

impl Scalar {
    fn literal(&self) -> String {
        match self {
            Scalar::Text(s) => s.clone(),
            Scalar::Int(n) => n.to_string(),
        }
    }
}

/// Declared properties checked on load.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solvable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supersolvable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metanilpotent: Option<bool>,
    /// Generators of the radical. Prime fields only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<Vec<Vec<Scalar>>>,
    /// Generators of each minimal ideal. Prime fields only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_ideals: Option<Vec<Vec<Vec<Scalar>>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub name: String,
    pub field: String,
    pub dim: usize,
    pub brackets: Vec<(usize, usize, Vec<Scalar>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

pub fn parse_spec(text: &str) -> Result<AlgebraSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn parse_vector(d: FieldDescriptor, dim: usize, v: &[Scalar]) -> Result<Vector> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    v.iter().map(|s| d.parse_scalar(&s.literal())).collect()
}

fn write_vector(v: &[crate::field::FieldElement]) -> Vec<Scalar> {
    v.iter().map(|x| Scalar::Text(x.to_string())).collect()
}

impl AlgebraSpec {
    pub fn descriptor(&self) -> Result<FieldDescriptor> {
        self.field.parse()
    }

    /// Normal form: reduced coefficients, zero brackets dropped, brackets
    /// sorted by `(i, j)`.
    pub fn canonical(&self) -> Result<AlgebraSpec> {
        let d = self.descriptor()?;
        let mut brackets = Vec::new();
        for (i, j, v) in &self.brackets {
            if *i == 0 || *j == 0 || i >= j || *j > self.dim {
                return Err(Error::BracketIndex(*i, *j, self.dim));
            }
            let v = parse_vector(d, self.dim, v)?;
            if !crate::linalg::is_zero_vector(&v) {
                brackets.push((*i, *j, write_vector(&v)));
            }
        }
        brackets.sort_by_key(|(i, j, _)| (*i, *j));
        if let Some(w) = brackets.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::BracketIndex(w[0].0, w[0].1, self.dim));
        }
        let canon_vectors = |vs: &Vec<Vec<Scalar>>| -> Result<Vec<Vec<Scalar>>> {
            vs.iter().map(|v| Ok(write_vector(&parse_vector(d, self.dim, v)?))).collect()
        };
        let expected = match &self.expected {
            None => None,
            Some(e) => Some(Expected {
                radical: e.radical.as_ref().map(canon_vectors).transpose()?,
                minimal_ideals: e
                    .minimal_ideals
                    .as_ref()
                    .map(|ms| ms.iter().map(canon_vectors).collect::<Result<Vec<_>>>())
                    .transpose()?,
                ..e.clone()
            }),
        };
        Ok(AlgebraSpec {
            name: self.name.clone(),
            field: d.to_string(),
            dim: self.dim,
            brackets,
            expected,
        })
    }

    /// Describes an existing algebra.
    pub fn from_algebra(algebra: &LieAlgebra) -> AlgebraSpec {
        AlgebraSpec {
            name: algebra.name().to_string(),
            field: algebra.descriptor().to_string(),
            dim: algebra.dim(),
            brackets: algebra
                .structure_constants()
                .filter(|(_, _, v)| !crate::linalg::is_zero_vector(v))
                .map(|(i, j, v)| (i + 1, j + 1, write_vector(v)))
                .collect(),
            expected: None,
        }
    }
}

/// Canonical compact JSON.
pub fn serialize(spec: &AlgebraSpec) -> Result<String> {
    Ok(serde_json::to_string(&spec.canonical()?).expect("spec serialises"))
}

/// Builds the algebra and checks any declared metadata against it.
pub fn load(spec: &AlgebraSpec, budget: &EnumerationBudget) -> Result<LieAlgebra> {
    let spec = spec.canonical()?;
    let d = spec.descriptor()?;
    let brackets = spec
        .brackets
        .iter()
        .map(|(i, j, v)| Ok((i - 1, j - 1, parse_vector(d, spec.dim, v)?)))
        .collect::<Result<Vec<_>>>()?;
    let algebra = LieAlgebra::new(spec.name.clone(), d, spec.dim, brackets)?;
    if let Some(e) = &spec.expected {
        check_expected(&algebra, e, budget)?;
    }
    Ok(algebra)
}

fn mismatch(flag: &str, declared: impl ToString, computed: impl ToString) -> Error {
    Error::MetadataMismatch {
        flag: flag.into(),
        declared: declared.to_string(),
        computed: computed.to_string(),
    }
}

fn check_expected(algebra: &LieAlgebra, e: &Expected, budget: &EnumerationBudget) -> Result<()> {
    let flags: [(&str, Option<bool>, &dyn Fn() -> Result<bool>); 4] = [
        ("solvable", e.solvable, &|| Ok(algebra.is_solvable())),
        ("nilpotent", e.nilpotent, &|| Ok(algebra.is_nilpotent())),
        ("supersolvable", e.supersolvable, &|| is_supersolvable(algebra, budget)),
        ("metanilpotent", e.metanilpotent, &|| Ok(algebra.is_metanilpotent())),
    ];
    for (flag, declared, compute) in flags {
        if let Some(declared) = declared {
            let computed = compute()?;
            if computed != declared {
                return Err(mismatch(flag, declared, computed));
            }
        }
    }
    if e.radical.is_none() && e.minimal_ideals.is_none() {
        return Ok(());
    }
    if !algebra.descriptor().is_finite() {
        return Err(Error::RequiresPrimeField(algebra.descriptor()));
    }
    let d = algebra.descriptor();
    let span = |vs: &Vec<Vec<Scalar>>| -> Result<Subspace> {
        algebra.span(vs.iter().map(|v| parse_vector(d, algebra.dim(), v)).collect::<Result<_>>()?)
    };
    let lattice = Lattice::new(algebra, budget)?;
    if let Some(r) = &e.radical {
        let declared = span(r)?;
        let computed = lattice.radical()?;
        if declared != computed {
            return Err(mismatch("radical", declared, computed));
        }
    }
    if let Some(ms) = &e.minimal_ideals {
        let mut declared = ms.iter().map(span).collect::<Result<Vec<_>>>()?;
        declared.sort();
        let computed = crate::chief::minimal_ideals(algebra, budget)?;
        if declared != computed {
            let show = |v: &[Subspace]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            return Err(mismatch("minimal_ideals", show(&declared), show(&computed)));
        }
    }
    Ok(())
}

/// Parses `"1,0,0;0,1,0"`: comma-separated scalars, semicolon-separated
/// vectors, whitespace ignored. An empty string is the empty list.
pub fn parse_vectors(d: FieldDescriptor, dim: usize, text: &str) -> Result<Vec<Vector>> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Ok(Vec::new());
    }
    cleaned
        .split(';')
        .map(|part| {
            let v: Vector = part
                .split(',')
                .map(|s| d.parse_scalar(s).map_err(|_| Error::ParseVector(part.to_string())))
                .collect::<Result<_>>()?;
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            Ok(v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldDescriptor {
        FieldDescriptor::gf(p).unwrap()
    }

    #[test]
    fn builtins_match_declared_metadata() {
        let budget = EnumerationBudget::default();
        for d in [gf(2), gf(3), gf(5)] {
            for name in CATALOG.iter().filter(|n| !n.contains("abelian(4)")) {
                let Ok((l, declared)) = builtin_with_metadata(name, d) else {
                    assert!(name.contains("sl2") || name.contains("gl2"));
                    continue;
                };
                assert_eq!(computed_metadata(&l, &budget).unwrap(), declared, "{name} over {d}");
            }
        }
    }

    #[test]
    fn unknown_and_invalid_names() {
        assert_eq!(builtin("E9", gf(3)), Err(Error::UnknownAlgebra("E9".into())));
        assert!(matches!(builtin("sl2", gf(2)), Err(Error::InvalidFieldForAlgebra { .. })));
        assert_eq!(builtin("E4⊕K2", gf(3)).unwrap().dim(), 6);
        let r = builtin("rand(n=3,p=2,seed=5)", gf(2)).unwrap();
        assert_eq!(r, random_solvable(3, 2, 5).unwrap());
        assert!(matches!(builtin("rand(n=3,p=2,seed=5)", gf(3)), Err(Error::InvalidFieldForAlgebra { .. })));
    }

    #[test]
    fn spec_round_trip() {
        let text = r#"{ "name": "K2", "field": "gfp:3", "dim": 2,
            "brackets": [[1, 2, ["4", 0]]], "expected": {"solvable": true} }"#;
        let spec = parse_spec(text).unwrap();
        let canon = serialize(&spec).unwrap();
        assert_eq!(
            canon,
            r#"{"name":"K2","field":"gfp:3","dim":2,"brackets":[[1,2,["1","0"]]],"expected":{"solvable":true}}"#
        );
        assert_eq!(serialize(&parse_spec(&canon).unwrap()).unwrap(), canon);
        let l = load(&spec, &EnumerationBudget::default()).unwrap();
        assert_eq!(l, builtin("K2", gf(3)).unwrap());
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_spec("{\n  \"name\": \"x\",\n  oops }").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn metadata_mismatch_names_the_flag() {
        let text = r#"{"name":"K2","field":"Q","dim":2,"brackets":[[1,2,["1","0"]]],"expected":{"nilpotent":true}}"#;
        let err = load(&parse_spec(text).unwrap(), &EnumerationBudget::default()).unwrap_err();
        assert!(matches!(err, Error::MetadataMismatch { ref flag, .. } if flag == "nilpotent"));
    }

    #[test]
    fn vector_lists() {
        let d = FieldDescriptor::Rationals;
        assert_eq!(parse_vectors(d, 2, " 1, 0 ; 0,-1/2").unwrap().len(), 2);
        assert!(matches!(parse_vectors(d, 2, "1,0,0"), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(parse_vectors(d, 2, "1,x"), Err(Error::ParseVector(_))));
    }
}
