//! JSON wire formats for the CLI and the C API.
//!
//! Scalar literals are integers or `"a/b"` strings, never floats. Polynomials
//! travel as mappings from exponent-tuple keys like `"[2,1]"` to scalar
//! literals, with keys emitted in monomial-basis order.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::action::{check_equivariant, GAction};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::{Character, MatrixGroup, RepVerdict};
use crate::harness::{sample_functional_for_character, VerdictReport};
use crate::invsys::{Functional, GradedIdeal};
use crate::linalg::MatrixK;
use crate::poly::{monomial_basis, Monomial};

/// Scalar -> JSON literal: an integer when it fits, otherwise an exact
/// string.
pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rat(r) => {
            use num_traits::One;
            if r.denom().is_one() {
                if let Ok(i) = i64::try_from(r.numer().clone()) {
                    return Value::from(i);
                }
            }
            Value::from(s.to_string())
        }
        Scalar::Mod { value, .. } => Value::from(*value),
    }
}

/// JSON literal -> Scalar in the given field. Floats are rejected.
pub fn scalar_from_json(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(field.from_i64(i))
            } else if let Some(u) = n.as_u64() {
                field.parse_literal(&u.to_string())
            } else {
                Err(Error::InvalidInput(format!(
                    "scalar literal {n} is not an exact integer; use a string"
                )))
            }
        }
        Value::String(s) => field.parse_literal(s),
        other => Err(Error::InvalidInput(format!(
            "expected an integer or \"a/b\" string, got {other}"
        ))),
    }
}

/// Exponent tuple -> key string, e.g. `[2,1]` -> `"[2,1]"`.
pub fn exponent_key(mono: &Monomial) -> String {
    serde_json::to_string(mono.exps()).expect("exponent arrays always serialize")
}

pub fn parse_exponent_key(key: &str, n: usize) -> Result<Vec<u32>> {
    let exps: Vec<u32> = serde_json::from_str(key)
        .map_err(|_| Error::InvalidInput(format!("bad exponent key '{key}'")))?;
    if exps.len() != n {
        return Err(Error::InvalidInput(format!(
            "exponent key '{key}' has {} entries, ring has {n} variables",
            exps.len()
        )));
    }
    Ok(exps)
}

/// Dense degree-d coordinates -> sparse polynomial mapping in basis order.
pub fn poly_to_map(n: usize, d: usize, coords: &[Scalar]) -> Result<Map<String, Value>> {
    let basis = monomial_basis(n, d)?;
    let mut map = Map::new();
    for (mono, c) in basis.iter().zip(coords) {
        if !c.is_zero() {
            map.insert(exponent_key(mono), scalar_to_json(c));
        }
    }
    Ok(map)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    /// Matrices as row arrays of scalar literals.
    pub generators: Vec<Vec<Vec<Value>>>,
}

impl GroupJson {
    pub fn field(&self, default: Option<FieldSpec>) -> Result<FieldSpec> {
        match (self.field, default) {
            (Some(f), Some(d)) if f != d => Err(Error::InvalidInput(
                "group field disagrees with the instance field".into(),
            )),
            (Some(f), _) => Ok(f),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(Error::InvalidInput("group spec needs a field".into())),
        }
    }

    pub fn build(&self, default_field: Option<FieldSpec>, cap: usize) -> Result<MatrixGroup> {
        let field = self.field(default_field)?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            if g.len() != self.n || g.iter().any(|row| row.len() != self.n) {
                return Err(Error::InvalidInput(format!(
                    "generator is not an {0}x{0} matrix",
                    self.n
                )));
            }
            let rows = g
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| scalar_from_json(field, v))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            gens.push(MatrixK::from_rows(field, rows)?);
        }
        MatrixGroup::close(gens, cap)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterJson {
    /// One scalar literal per generator, extended over the closure.
    pub generator_values: Vec<Value>,
}

impl CharacterJson {
    pub fn build(&self, group: &MatrixGroup) -> Result<Character> {
        let values = self
            .generator_values
            .iter()
            .map(|v| scalar_from_json(group.field(), v))
            .collect::<Result<Vec<_>>>()?;
        Character::from_generator_values(group, &values)
    }
}

/// The functional wire format used by `construct`: degree, sparse values,
/// optional character twist.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionalJson {
    pub degree: usize,
    pub values: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<CharacterJson>,
}

pub fn functional_from_values(
    field: FieldSpec,
    n: usize,
    degree: usize,
    values: &Map<String, Value>,
    character: Option<Character>,
) -> Result<Functional> {
    let basis = monomial_basis(n, degree)?;
    let mut coords = vec![field.zero(); basis.len()];
    let index: std::collections::HashMap<Vec<u32>, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.exps().to_vec(), i))
        .collect();
    for (key, literal) in values {
        let exps = parse_exponent_key(key, n)?;
        let degree_of_key: u32 = exps.iter().sum();
        if degree_of_key as usize != degree {
            return Err(Error::InvalidInput(format!(
                "monomial key '{key}' has degree {degree_of_key}, functional has degree {degree}"
            )));
        }
        coords[index[&exps]] = scalar_from_json(field, literal)?;
    }
    Functional::new(n, degree, coords, character)
}

#[derive(Debug, Clone, Deserialize)]
pub struct ConstructInput {
    pub field: FieldSpec,
    pub n: usize,
    pub functional: FunctionalJson,
    /// Optional group context; when present the functional must be
    /// equivariant for its (default trivial) character.
    #[serde(default)]
    pub group: Option<GroupJson>,
}

impl ConstructInput {
    pub fn build(&self, cap: usize) -> Result<(Functional, Option<GAction>)> {
        match &self.group {
            None => {
                if self.functional.character.is_some() {
                    return Err(Error::InvalidInput(
                        "a character needs a group context".into(),
                    ));
                }
                let phi = functional_from_values(
                    self.field,
                    self.n,
                    self.functional.degree,
                    &self.functional.values,
                    None,
                )?;
                Ok((phi, None))
            }
            Some(group_json) => {
                let group = group_json.build(Some(self.field), cap)?;
                if group.n() != self.n {
                    return Err(Error::InvalidInput(
                        "group dimension disagrees with the ring dimension".into(),
                    ));
                }
                let act = GAction::new(group);
                let chi = match &self.functional.character {
                    Some(cj) => Some(cj.build(act.group())?),
                    None => None,
                };
                let phi = functional_from_values(
                    self.field,
                    self.n,
                    self.functional.degree,
                    &self.functional.values,
                    chi.clone(),
                )?;
                let effective = chi.unwrap_or_else(|| Character::trivial(act.group()));
                if !check_equivariant(&act, &phi, &effective)? {
                    return Err(Error::NotEquivariant);
                }
                Ok((phi, Some(act)))
            }
        }
    }
}

/// `construct` output: the ideal with per-degree echelon bases as polynomial
/// mappings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    pub field: FieldSpec,
    pub top: usize,
    pub pieces: Vec<Vec<Map<String, Value>>>,
}

pub fn ideal_to_json(ideal: &GradedIdeal) -> Result<IdealJson> {
    let mut pieces = Vec::with_capacity(ideal.top() + 1);
    for d in 0..=ideal.top() {
        let rows = ideal
            .piece(d)
            .basis_rows()
            .into_iter()
            .map(|row| poly_to_map(ideal.ring_dim(), d, &row))
            .collect::<Result<Vec<_>>>()?;
        pieces.push(rows);
    }
    Ok(IdealJson {
        n: ideal.ring_dim(),
        field: ideal.field(),
        top: ideal.top(),
        pieces,
    })
}

#[derive(Debug, Clone, Deserialize)]
pub struct InvariantsInput {
    pub group: GroupJson,
    #[serde(default)]
    pub max_degree: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvariantsOutput {
    pub group_order: usize,
    pub max_degree: usize,
    pub dims: Vec<usize>,
    pub bases: Vec<Vec<Map<String, Value>>>,
}

/// Lemma-checker verdict as emitted by `check-group`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RepVerdictJson {
    pub exists: bool,
    pub witness_prime: Option<u64>,
    pub r: usize,
}

impl From<RepVerdict> for RepVerdictJson {
    fn from(v: RepVerdict) -> Self {
        RepVerdictJson {
            exists: v.exists,
            witness_prime: v.witness_prime,
            r: v.r,
        }
    }
}

/// How a `verify` instance provides its functional.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FunctionalSourceJson {
    Random { random_seed: u64 },
    Explicit { values: Map<String, Value> },
}

#[derive(Debug, Clone, Deserialize)]
pub struct InstanceSpecJson {
    pub field: FieldSpec,
    pub group: GroupJson,
    pub degree: usize,
    pub functional: FunctionalSourceJson,
    #[serde(default)]
    pub character: Option<CharacterJson>,
}

impl InstanceSpecJson {
    /// Decodes into an action plus a ready-to-verify functional. Random
    /// functionals are reproducible from their seed.
    pub fn build(&self, cap: usize) -> Result<(GAction, Functional)> {
        let group = self.group.build(Some(self.field), cap)?;
        let act = GAction::new(group);
        let chi = match &self.character {
            Some(cj) => Some(cj.build(act.group())?),
            None => None,
        };
        let phi = match &self.functional {
            FunctionalSourceJson::Explicit { values } => functional_from_values(
                self.field,
                act.n(),
                self.degree,
                values,
                chi,
            )?,
            FunctionalSourceJson::Random { random_seed } => {
                let mut rng = ChaCha20Rng::seed_from_u64(*random_seed);
                let effective = chi.unwrap_or_else(|| Character::trivial(act.group()));
                sample_functional_for_character(&act, self.degree, &effective, &mut rng)?
                    .ok_or(Error::InvariantsVanish(self.degree))?
            }
        };
        Ok((act, phi))
    }
}

/// Single-line machine-readable error, printed on stderr by the CLI.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorJson {
    pub kind: String,
    pub message: String,
}

impl From<&Error> for ErrorJson {
    fn from(e: &Error) -> Self {
        ErrorJson {
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

/// Envelope for `verify` output so instances can be post-processed uniformly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub report: VerdictReport,
}
