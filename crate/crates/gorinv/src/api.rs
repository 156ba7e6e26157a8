//! String-in / string-out entry points behind the CLI subcommands and the C
//! API. Every function takes a JSON document and returns a JSON document, so
//! bindings stay thin.

use crate::action::GAction;
use crate::error::{Error, Result};
use crate::group::has_nontrivial_onedim_rep;
use crate::harness::{replicate_example, sweep, verify_instance, SweepConfig};
use crate::invsys::build_inverse_system;
use crate::schema::{
    ideal_to_json, poly_to_map, ConstructInput, GroupJson, InstanceSpecJson, InvariantsInput,
    InvariantsOutput, RepVerdictJson, VerifyOutput,
};

fn parse<T: serde::de::DeserializeOwned>(input: &str) -> Result<T> {
    serde_json::from_str(input).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))
}

fn emit<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports always serialize")
}

/// `check-group`: group spec -> one-dimensional-representation verdict.
pub fn run_check_group(input: &str, cap: usize) -> Result<String> {
    let spec: GroupJson = parse(input)?;
    let group = spec.build(None, cap)?;
    let verdict: RepVerdictJson = has_nontrivial_onedim_rep(&group)?.into();
    Ok(emit(&verdict))
}

/// `construct`: ring + functional (optional group context) -> graded ideal.
pub fn run_construct(input: &str, cap: usize) -> Result<String> {
    let spec: ConstructInput = parse(input)?;
    let (phi, _act) = spec.build(cap)?;
    let ideal = build_inverse_system(&phi)?;
    Ok(emit(&ideal_to_json(&ideal)?))
}

/// `invariants`: group + degree range -> dimensions and echelon bases of the
/// invariant subspaces.
pub fn run_invariants(input: &str, max_degree_flag: Option<usize>, cap: usize) -> Result<String> {
    let spec: InvariantsInput = parse(input)?;
    let max_degree = max_degree_flag.or(spec.max_degree).unwrap_or(6);
    let group = spec.group.build(None, cap)?;
    let act = GAction::new(group);
    let n = act.n();
    let mut dims = Vec::with_capacity(max_degree + 1);
    let mut bases = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let fixed = act.fixed_subspace(d)?;
        dims.push(fixed.dim());
        let rows = fixed
            .basis_rows()
            .into_iter()
            .map(|row| poly_to_map(n, d, &row))
            .collect::<Result<Vec<_>>>()?;
        bases.push(rows);
    }
    Ok(emit(&InvariantsOutput {
        group_order: act.group().order(),
        max_degree,
        dims,
        bases,
    }))
}

/// `replicate`: rerun a bundled reference instance; the bool reports whether
/// every recorded value matched.
pub fn run_replicate(id: &str) -> Result<(String, bool)> {
    let report = replicate_example(id)?;
    let matched = report.all_match;
    Ok((emit(&report), matched))
}

/// `verify`: instance spec -> verdict report.
pub fn run_verify(input: &str, cap: usize) -> Result<String> {
    let spec: InstanceSpecJson = parse(input)?;
    let (act, phi) = spec.build(cap)?;
    let report = verify_instance(&act, &phi)?;
    Ok(emit(&VerifyOutput { report }))
}

/// `sweep`: config -> aggregate report. Flag overrides replace the config's
/// seed/count/cap before the run so the echoed config reflects what ran.
pub fn run_sweep(
    input: &str,
    seed_override: Option<u64>,
    count_override: Option<usize>,
    cap_override: Option<usize>,
) -> Result<String> {
    let mut config: SweepConfig = parse(input)?;
    if let Some(seed) = seed_override {
        config.seed = seed;
    }
    if let Some(count) = count_override {
        config.count = count;
    }
    if let Some(cap) = cap_override {
        config.closure_cap = cap;
    }
    let report = sweep(&config)?;
    Ok(emit(&report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_group_end_to_end() {
        let out = run_check_group(
            r#"{"n": 2, "field": {"Fp": 7}, "generators": [[["0","-1"],["1","-1"]]]}"#,
            100,
        )
        .unwrap();
        assert_eq!(out, r#"{"exists":true,"witness_prime":3,"r":3}"#);
    }

    #[test]
    fn verify_rejects_trivial_group() {
        let err = run_verify(
            r#"{"field": "Q",
                "group": {"n": 2, "generators": [[["1","0"],["0","1"]]]},
                "degree": 2,
                "functional": {"random_seed": 1}}"#,
            100,
        )
        .unwrap_err();
        assert_eq!(err, Error::TrivialGroup);
        assert_eq!(err.to_string(), "group must be non-trivial");
    }

    #[test]
    fn construct_and_reparse() {
        let out = run_construct(
            r#"{"field": "Q", "n": 2,
                "functional": {"degree": 3, "values": {"[3,0]": 1, "[2,1]": 1}}}"#,
            100,
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["top"], 3);
        assert_eq!(v["pieces"][2][0]["[0,2]"], 1);
    }

    #[test]
    fn invariants_output() {
        let out = run_invariants(
            r#"{"group": {"n": 2, "field": "Q", "generators": [[["-1","0"],["0","-1"]]]}}"#,
            Some(3),
            100,
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["dims"], serde_json::json!([1, 0, 3, 0]));
    }

    #[test]
    fn malformed_json_is_invalid_input() {
        assert!(matches!(
            run_check_group("{not json", 100),
            Err(Error::InvalidInput(_))
        ));
    }
}
