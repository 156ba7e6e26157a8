//! End-to-end pipelines: verify single instances, replicate the bundled
//! reference instances bit for bit, and run seed-deterministic sweeps.
//!
//! A sweep cell is one (group, field, degree) triple; each instance inside a
//! cell draws its functional from a ChaCha stream addressed by the global
//! instance index, so reports are byte-identical for identical configs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::action::{check_equivariant, lift_functional, GAction};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::{
    enumerate_characters, has_nontrivial_onedim_rep, Character, MatrixGroup,
};
use crate::invsys::{build_inverse_system, check_g_invariance, Functional};
use crate::linalg::{kernel, MatrixK};
use crate::poly::HPoly;
use crate::quotient::{
    gorenstein_verdict, gorenstein_verdict_invariant, invariant_quotient, quotient,
    ArtinQuotient,
};

/// Names of the built-in groups; each realizes over Q and over any F_p not
/// dividing its order.
pub const ZOO_NAMES: [&str; 5] = ["pm1", "cyclic3", "cyclic5", "s3", "s3_derived"];

/// Builds a built-in group over the requested field.
pub fn zoo_group(name: &str, field: FieldSpec, cap: usize) -> Result<MatrixGroup> {
    let mat = |rows: Vec<Vec<i64>>| -> Result<MatrixK> {
        MatrixK::from_rows(
            field,
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| field.from_i64(v)).collect())
                .collect(),
        )
    };
    match name {
        // The sign pair {I, -I} in GL_2.
        "pm1" => MatrixGroup::close(vec![mat(vec![vec![-1, 0], vec![0, -1]])?], cap),
        // Companion matrix of x^2 + x + 1; cyclic of order 3.
        "cyclic3" => MatrixGroup::close(vec![mat(vec![vec![0, -1], vec![1, -1]])?], cap),
        // Companion matrix of x^4 + x^3 + x^2 + x + 1; cyclic of order 5.
        "cyclic5" => MatrixGroup::close(
            vec![mat(vec![
                vec![0, 0, 0, -1],
                vec![1, 0, 0, -1],
                vec![0, 1, 0, -1],
                vec![0, 0, 1, -1],
            ])?],
            cap,
        ),
        // Permutation representation of the symmetric group on three letters.
        "s3" => MatrixGroup::close(
            vec![
                mat(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]])?,
                mat(vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]])?,
            ],
            cap,
        ),
        // The derived subgroup of the above: the alternating rotations.
        "s3_derived" => zoo_group("s3", field, cap)?.commutator_subgroup(),
        other => Err(Error::UnknownZooGroup(other.to_string())),
    }
}

/// Socle summary of A/Q in report form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub hilbert: Vec<usize>,
    pub gorenstein: bool,
    pub socle_degree: Option<usize>,
    pub a_invariant: usize,
}

/// Socle summary of the invariant quotient B = A^G/Q^G.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub dims: Vec<usize>,
    pub gorenstein: bool,
    pub socle_dims: Vec<usize>,
    pub socle_degree: Option<usize>,
    pub a_invariant: usize,
}

/// Full verdict for one instance: the group hypothesis, both quotient
/// verdicts, and whether the descent statement held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    /// True when the group has no nontrivial one-dimensional representation.
    pub hypothesis_holds: bool,
    pub witness_prime: Option<u64>,
    pub ideal_g_invariant: bool,
    pub quotient: QuotientReport,
    pub invariant_quotient: InvariantReport,
    /// The implication (hypothesis and premises) => conclusion.
    pub theorem_satisfied: bool,
    /// Hypothesis and premises hold but the conclusion fails; must never occur.
    pub counterexample: bool,
}

/// Runs the full pipeline for one equivariant functional.
pub fn verify_instance(act: &GAction, phi: &Functional) -> Result<VerdictReport> {
    if phi.ring_dim() != act.n() {
        return Err(Error::RingMismatch);
    }
    if phi.field() != act.group().field() {
        return Err(Error::FieldMismatch(
            format!("{:?}", phi.field()),
            format!("{:?}", act.group().field()),
        ));
    }
    let chi = match phi.character() {
        Some(c) => c.clone(),
        None => Character::trivial(act.group()),
    };
    if !check_equivariant(act, phi, &chi)? {
        return Err(Error::NotEquivariant);
    }

    let rep = has_nontrivial_onedim_rep(act.group())?;
    let hypothesis_holds = !rep.exists;

    let ideal = build_inverse_system(phi)?;
    let ideal_g_invariant = check_g_invariance(&ideal, act)?;
    let rq = quotient(ideal)?;
    let qv = gorenstein_verdict(&rq)?;
    let bq = invariant_quotient(&rq, act)?;
    let bv = gorenstein_verdict_invariant(&rq, &bq)?;

    let premises = ideal_g_invariant && qv.is_gorenstein;
    let conclusion = bv.is_gorenstein && bv.a_invariant == qv.a_invariant;
    let theorem_satisfied = !(hypothesis_holds && premises) || conclusion;
    let counterexample = hypothesis_holds && premises && !conclusion;

    Ok(VerdictReport {
        hypothesis_holds,
        witness_prime: rep.witness_prime,
        ideal_g_invariant,
        quotient: QuotientReport {
            hilbert: rq.hilbert().to_vec(),
            gorenstein: qv.is_gorenstein,
            socle_degree: qv.socle_degree,
            a_invariant: qv.a_invariant,
        },
        invariant_quotient: InvariantReport {
            dims: bq.dims().to_vec(),
            gorenstein: bv.is_gorenstein,
            socle_dims: bv.socle_dims.clone(),
            socle_degree: bv.socle_degree,
            a_invariant: bv.a_invariant,
        },
        theorem_satisfied,
        counterexample,
    })
}

/// How sweep instances choose their functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CharacterMode {
    /// eta . reynolds with the trivial character.
    #[default]
    Trivial,
    /// A character drawn uniformly from all characters of the group, with an
    /// equivariant functional sampled for it.
    Random,
}

fn sample_scalar<R: Rng>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field {
        // Small window keeps rational echelon entries readable.
        FieldSpec::Rationals => field.from_i64(rng.random_range(-2..=2)),
        FieldSpec::PrimeField(p) => field.from_i64(rng.random_range(0..p) as i64),
    }
}

/// Draws an equivariant functional of degree m, or None when no nonzero
/// equivariant functional exists for the drawn character.
pub fn sample_functional<R: Rng>(
    act: &GAction,
    m: usize,
    mode: CharacterMode,
    rng: &mut R,
) -> Result<Option<Functional>> {
    let chi = match mode {
        CharacterMode::Trivial => Character::trivial(act.group()),
        CharacterMode::Random => {
            let all = enumerate_characters(act.group())?;
            all[rng.random_range(0..all.len())].clone()
        }
    };
    sample_functional_for_character(act, m, &chi, rng)
}

/// Draws an equivariant functional for one fixed character.
pub fn sample_functional_for_character<R: Rng>(
    act: &GAction,
    m: usize,
    chi: &Character,
    rng: &mut R,
) -> Result<Option<Functional>> {
    if chi.is_trivial() {
        let fixed = act.fixed_subspace(m)?;
        if fixed.dim() == 0 {
            return Ok(None);
        }
        let field = act.group().field();
        let eta = loop {
            let draw: Vec<Scalar> = (0..fixed.dim()).map(|_| sample_scalar(field, rng)).collect();
            if draw.iter().any(|v| !v.is_zero()) {
                break draw;
            }
        };
        return Ok(Some(lift_functional(act, m, &eta)?));
    }

    // Equivariant functionals for chi: row vectors with phi . M_g = chi(g) phi
    // for every generator, i.e. the joint kernel of (M_g^T - chi(g) I).
    let field = act.group().field();
    let size = crate::poly::basis_size(act.n(), m);
    let mut stacked: Option<MatrixK> = None;
    for &g in act.group().generator_indices() {
        let mt = act.action_matrix(g, m)?.transpose();
        let mut scaled_id = MatrixK::zero(field, size, size);
        for i in 0..size {
            *scaled_id.at_mut(i, i) = chi.value(g).clone();
        }
        let diff = mt.sub(&scaled_id)?;
        stacked = Some(match stacked {
            None => diff,
            Some(s) => s.stack(&diff)?,
        });
    }
    let space = kernel(&stacked.expect("groups have generators"));
    if space.dim() == 0 {
        return Ok(None);
    }
    let coords = loop {
        let draw: Vec<Scalar> = (0..space.dim()).map(|_| sample_scalar(field, rng)).collect();
        if draw.iter().any(|v| !v.is_zero()) {
            break draw;
        }
    };
    let mut coeffs = vec![field.zero(); size];
    for (c, row) in coords.iter().zip(space.basis_rows()) {
        for (acc, v) in coeffs.iter_mut().zip(row) {
            *acc = acc.add(&c.mul(&v)?)?;
        }
    }
    Ok(Some(Functional::new(act.n(), m, coeffs, Some(chi.clone()))?))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    pub groups: Vec<String>,
    pub fields: Vec<FieldSpec>,
    pub degrees: Vec<usize>,
    pub count: usize,
    pub seed: u64,
    #[serde(default)]
    pub character_mode: CharacterMode,
    #[serde(default = "default_cap")]
    pub closure_cap: usize,
}

fn default_cap() -> usize {
    crate::group::DEFAULT_CLOSURE_CAP
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipEntry {
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub instances_run: usize,
    pub instances_skipped: usize,
    pub counterexamples: usize,
    pub invariant_quotient_not_gorenstein: usize,
    pub a_invariant_distribution: BTreeMap<usize, usize>,
    pub instances: Vec<VerdictReport>,
    pub skipped: Vec<SkipEntry>,
}

/// Runs `count` seeded instances for every (group, field, degree) cell and
/// folds the verdicts in instance-index order.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    let mut report = SweepReport {
        config: config.clone(),
        instances_run: 0,
        instances_skipped: 0,
        counterexamples: 0,
        invariant_quotient_not_gorenstein: 0,
        a_invariant_distribution: BTreeMap::new(),
        instances: Vec::new(),
        skipped: Vec::new(),
    };
    let mut index = 0usize;
    for group_name in &config.groups {
        for &field in &config.fields {
            let cell_action = zoo_group(group_name, field, config.closure_cap).map(GAction::new);
            for &m in &config.degrees {
                for _ in 0..config.count {
                    let this_index = index;
                    index += 1;
                    let act = match &cell_action {
                        Ok(act) => act,
                        Err(e) => {
                            report.instances_skipped += 1;
                            report.skipped.push(SkipEntry {
                                index: this_index,
                                reason: e.kind().to_string(),
                            });
                            continue;
                        }
                    };
                    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
                    rng.set_stream(this_index as u64);
                    let phi = match sample_functional(act, m, config.character_mode, &mut rng)? {
                        Some(phi) => phi,
                        None => {
                            report.instances_skipped += 1;
                            report.skipped.push(SkipEntry {
                                index: this_index,
                                reason: "invariants_vanish_in_degree_m".to_string(),
                            });
                            continue;
                        }
                    };
                    let verdict = verify_instance(act, &phi)?;
                    report.instances_run += 1;
                    if verdict.counterexample {
                        report.counterexamples += 1;
                    }
                    if !verdict.invariant_quotient.gorenstein {
                        report.invariant_quotient_not_gorenstein += 1;
                    }
                    *report
                        .a_invariant_distribution
                        .entry(verdict.quotient.a_invariant)
                        .or_insert(0) += 1;
                    report.instances.push(verdict);
                }
            }
        }
    }
    Ok(report)
}

/// One compared quantity in a replication run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReplicationCheck {
    pub quantity: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReplicationReport {
    pub example: String,
    pub report: VerdictReport,
    pub checks: Vec<ReplicationCheck>,
    pub all_match: bool,
    pub notes: Vec<String>,
}

fn piece_strings(rq: &ArtinQuotient, d: usize) -> Result<Vec<String>> {
    rq.ideal()
        .piece(d)
        .basis_rows()
        .into_iter()
        .map(|row| Ok(HPoly::from_coords(rq.ring_dim(), d, row)?.to_string()))
        .collect()
}

/// Reruns a bundled reference instance and diffs every computed quantity
/// against its recorded expected values.
pub fn replicate_example(id: &str) -> Result<ReplicationReport> {
    let field = FieldSpec::Rationals;
    let group = zoo_group("pm1", field, 100)?;
    let act = GAction::new(group);
    let sign = Character::from_generator_values(act.group(), &[field.from_i64(-1)])?;

    let (coeff_ints, expected, notes): (Vec<i64>, Vec<(&str, String)>, Vec<String>) = match id {
        "ex34" => (
            vec![1, 1, 0, 0],
            vec![
                ("ideal_degree_1", "[]".to_string()),
                ("ideal_degree_2", "[Y^2]".to_string()),
                ("ideal_degree_3", "[X^3 - X^2*Y, X*Y^2, Y^3]".to_string()),
                ("hilbert", "[1, 2, 2, 1]".to_string()),
                ("quotient_gorenstein", "true".to_string()),
                ("quotient_socle_degree", "3".to_string()),
                ("quotient_a_invariant", "3".to_string()),
                ("invariant_dims", "[1, 0, 2, 0]".to_string()),
                ("invariant_gorenstein", "false".to_string()),
                ("invariant_socle_dims", "[0, 0, 2, 0]".to_string()),
                ("hypothesis_holds", "false".to_string()),
            ],
            vec![
                "the recorded source prints the degree-3 generator as 'X_3 - X^2Y'; \
                 its stated values force X^3 - X^2*Y, which the expected basis uses"
                    .to_string(),
            ],
        ),
        "ex35" => (
            vec![1, 0, 0, 0],
            vec![
                ("ideal_degree_1", "[Y]".to_string()),
                ("ideal_degree_2", "[X*Y, Y^2]".to_string()),
                ("ideal_degree_3", "[X^2*Y, X*Y^2, Y^3]".to_string()),
                ("hilbert", "[1, 1, 1, 1]".to_string()),
                ("quotient_gorenstein", "true".to_string()),
                ("quotient_a_invariant", "3".to_string()),
                ("invariant_dims", "[1, 0, 1, 0]".to_string()),
                ("invariant_gorenstein", "true".to_string()),
                ("invariant_a_invariant", "2".to_string()),
                ("a_invariant_gap", "2 < 3".to_string()),
            ],
            Vec::new(),
        ),
        other => return Err(Error::UnknownExample(other.to_string())),
    };

    let phi = Functional::new(
        2,
        3,
        coeff_ints.into_iter().map(|v| field.from_i64(v)).collect(),
        Some(sign),
    )?;
    let report = verify_instance(&act, &phi)?;

    // Recompute the printable quantities.
    let ideal = build_inverse_system(&phi)?;
    let rq = quotient(ideal)?;
    let computed: BTreeMap<&str, String> = BTreeMap::from([
        ("ideal_degree_1", format!("[{}]", piece_strings(&rq, 1)?.join(", "))),
        ("ideal_degree_2", format!("[{}]", piece_strings(&rq, 2)?.join(", "))),
        ("ideal_degree_3", format!("[{}]", piece_strings(&rq, 3)?.join(", "))),
        ("hilbert", format!("{:?}", report.quotient.hilbert)),
        ("quotient_gorenstein", report.quotient.gorenstein.to_string()),
        (
            "quotient_socle_degree",
            report
                .quotient
                .socle_degree
                .map_or("none".to_string(), |d| d.to_string()),
        ),
        ("quotient_a_invariant", report.quotient.a_invariant.to_string()),
        ("invariant_dims", format!("{:?}", report.invariant_quotient.dims)),
        (
            "invariant_gorenstein",
            report.invariant_quotient.gorenstein.to_string(),
        ),
        (
            "invariant_socle_dims",
            format!("{:?}", report.invariant_quotient.socle_dims),
        ),
        (
            "invariant_a_invariant",
            report.invariant_quotient.a_invariant.to_string(),
        ),
        ("hypothesis_holds", report.hypothesis_holds.to_string()),
        (
            "a_invariant_gap",
            format!(
                "{} < {}",
                report.invariant_quotient.a_invariant, report.quotient.a_invariant
            ),
        ),
    ]);

    let checks: Vec<ReplicationCheck> = expected
        .into_iter()
        .map(|(quantity, expected)| {
            let computed = computed[quantity].clone();
            let matches = computed == expected;
            ReplicationCheck {
                quantity: quantity.to_string(),
                expected,
                computed,
                matches,
            }
        })
        .collect();
    let all_match = checks.iter().all(|c| c.matches);
    Ok(ReplicationReport {
        example: id.to_string(),
        report,
        checks,
        all_match,
        notes,
    })
}
