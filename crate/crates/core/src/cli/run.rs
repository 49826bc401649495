use std::fmt;

use crate::diagram::{DynkinDiagram, VertexMap};
use crate::galois::DiagramAutomorphism;
use crate::nilmat::run_key_lemma_trials;
use crate::polymer::{
    enumerate_deligne_polymers, is_pel_shaped, validate_deligne_polymer, validate_polymer,
    EnumerationLimits, HermitianData, Part, Polymer, ValidationReport,
};
use crate::repdim::polymer_dims;
use crate::twist::{
    cyclic_criterion, exists_good_sigma, inner_type_a_orbits, min_unipotent_index_bound,
    mumford_criterion, padic_drop_condition2, perfectly_tens_twisted, AnisotropyFlags,
    OrbitStatus,
};
use crate::Error;

use super::report::*;
use super::scenario::{GeneratorSpec, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Twist,
    Enumerate,
    Dims,
    KeyLemma,
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Twist => "twist",
            Command::Enumerate => "enumerate",
            Command::Dims => "dims",
            Command::KeyLemma => "keylemma",
            Command::Report => "report",
        }
    }

    pub fn needs_scenario(self) -> bool {
        self != Command::KeyLemma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub trials: u64,
    pub seed: u64,
    pub limits: EnumerationLimits,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            trials: 100,
            seed: 0,
            limits: EnumerationLimits::default(),
        }
    }
}

/// Errors that map to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunError {
    MissingScenario(&'static str),
    MissingPolymer(&'static str),
    Library(Error),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::MissingScenario(cmd) => write!(f, "`{cmd}` requires --scenario"),
            RunError::MissingPolymer(cmd) => write!(f, "`{cmd}` requires a polymer in the scenario"),
            RunError::Library(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Library(e)
    }
}

pub const INVALID_INPUT: i32 = 2;

fn part_labels(part: &Part, diagram: &DynkinDiagram) -> Vec<String> {
    part.iter().map(|&v| diagram.vertex_label(v)).collect()
}

fn ids(components: &[usize], diagram: &DynkinDiagram) -> Vec<String> {
    components.iter().map(|&c| diagram.component(c).id.clone()).collect()
}

fn check_result(report: &ValidationReport, diagram: &DynkinDiagram) -> CheckResult {
    CheckResult {
        valid: report.is_valid(),
        failures: report
            .failures
            .iter()
            .map(|f| FailureEntry {
                condition: f.condition.id().to_string(),
                part: f.part.as_ref().map(|p| part_labels(p, diagram)),
                component: f.component.map(|c| diagram.component(c).id.clone()),
                detail: f.detail.clone(),
            })
            .collect(),
    }
}

/// Group element as a generator entry listing moved components and
/// non-identity vertex maps.
pub fn element_spec(g: &DiagramAutomorphism, diagram: &DynkinDiagram) -> GeneratorSpec {
    let mut spec = GeneratorSpec::default();
    for c in 0..diagram.len() {
        let image = g.component_image(c);
        if image != c {
            spec.permutation
                .insert(diagram.component(c).id.clone(), diagram.component(image).id.clone());
        }
        if g.vertex_map(c) != VertexMap::Identity {
            spec.vertex_maps
                .insert(diagram.component(c).id.clone(), g.vertex_map(c).name().to_string());
        }
    }
    spec
}

fn echo(s: &Scenario) -> ScenarioEcho {
    let d = s.diagram();
    ScenarioEcho {
        name: s.name().to_string(),
        input: s.file.clone(),
        group_order: s.action.order(),
        orbits: s.action.component_orbits().iter().map(|o| ids(o, d)).collect(),
    }
}

fn validation(s: &Scenario, polymer: &Polymer) -> Result<ValidationSection, RunError> {
    let d = s.diagram();
    let base = validate_polymer(polymer, &s.action)?;
    let deligne = match &s.hermitian {
        Some(h) => Some(check_result(&validate_deligne_polymer(polymer, &s.action, h)?, d)),
        None => None,
    };
    Ok(ValidationSection {
        polymer: check_result(&base, d),
        deligne,
    })
}

/// Criterion: a valid polymer that is perfectly tens-twisted for the given
/// flags, or admits a good σ.
fn assess(
    s: &Scenario,
    polymer: &Polymer,
    flags: &AnisotropyFlags,
) -> Result<(CriteriaMatrix, Option<TwistSection>), RunError> {
    let d = s.diagram();
    let action = &s.action;
    let valid = validate_polymer(polymer, action)?.is_valid();
    let deligne_valid = match &s.hermitian {
        Some(h) => Some(validate_deligne_polymer(polymer, action, h)?.is_valid()),
        None => None,
    };
    let transitive = action.is_transitive();
    let sigma_side = valid && transitive;
    let sigma = if sigma_side { exists_good_sigma(polymer, action)? } else { None };
    let cyclic = if sigma_side { Some(cyclic_criterion(polymer, action)?) } else { None };
    let mumford = if sigma_side { Some(mumford_criterion(polymer, action)?) } else { None };
    let bound = min_unipotent_index_bound(polymer, action, flags)?;

    let twist = if valid {
        let verdict = perfectly_tens_twisted(polymer, action, flags)?;
        let padic_verdict = match padic_drop_condition2(polymer, action) {
            Ok(v) => Some(v.satisfied),
            Err(Error::InnerTypeA(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let orbits = verdict
            .per_orbit
            .iter()
            .map(|o| {
                let (status, witness, cardinality) = match &o.status {
                    OrbitStatus::Witness { part, cardinality } => {
                        ("witness", Some(part_labels(part, d)), Some(*cardinality))
                    }
                    OrbitStatus::Anisotropic => ("anisotropic", None, None),
                    OrbitStatus::Failed => ("failed", None, None),
                };
                OrbitEntry {
                    orbit: ids(&o.orbit, d),
                    status: status.to_string(),
                    witness,
                    cardinality,
                }
            })
            .collect();
        Some(TwistSection {
            satisfied: verdict.satisfied,
            orbits,
            sigma: sigma.as_ref().map(|g| SigmaEntry {
                cycles: g.cycle_notation(d),
                element: element_spec(g, d),
                note: SIGMA_NOTE.to_string(),
            }),
            inner_type_a_orbits: inner_type_a_orbits(action).iter().map(|o| ids(o, d)).collect(),
            padic_verdict,
        })
    } else {
        None
    };

    let ptt = twist.as_ref().map(|t| t.satisfied);
    let sigma_exists = sigma_side.then_some(sigma.is_some());
    let criteria = CriteriaMatrix {
        polymer_valid: valid,
        deligne_valid,
        pel_shaped: is_pel_shaped(polymer),
        transitive,
        cyclic,
        mumford,
        sigma_exists,
        perfectly_tens_twisted: ptt,
        index_bound: bound.to_string(),
        criterion_satisfied: valid && (ptt == Some(true) || sigma_exists == Some(true)),
    };
    Ok((criteria, twist))
}

fn dimensions(s: &Scenario, polymer: &Polymer) -> Result<DimensionSection, RunError> {
    let d = s.diagram();
    let r = polymer_dims(polymer, &s.action, &s.multiplicities)?;
    Ok(DimensionSection {
        per_orbit: r
            .per_orbit
            .iter()
            .map(|o| OrbitDimensionEntry {
                representative: part_labels(&o.representative, d),
                dimension: o.dimension,
                orbit_size: o.orbit_size,
                multiplicity: o.multiplicity,
            })
            .collect(),
        total: r.total,
    })
}

fn enumeration(s: &Scenario, opts: &RunOptions) -> Result<EnumerationSection, RunError> {
    let d = s.diagram();
    let hermitian = s.hermitian.clone().unwrap_or_else(HermitianData::default);
    let e = enumerate_deligne_polymers(&s.action, &hermitian, opts.limits)?;
    let mut polymers = Vec::with_capacity(e.polymers.len());
    for p in &e.polymers {
        let (c, _) = assess(s, p, &s.flags)?;
        polymers.push(EnumeratedPolymer {
            parts: p.labels(d),
            pel_shaped: c.pel_shaped,
            perfectly_tens_twisted: c.perfectly_tens_twisted == Some(true),
            sigma_exists: c.sigma_exists,
            index_bound: c.index_bound,
            criterion_satisfied: c.criterion_satisfied,
        });
    }
    Ok(EnumerationSection {
        max_orbits: opts.limits.max_orbits,
        max_output: opts.limits.max_output,
        orbit_count: e.orbits.len(),
        truncated: e.truncated,
        satisfying: polymers.iter().filter(|p| p.criterion_satisfied).count(),
        polymers,
    })
}

fn key_lemma(opts: &RunOptions) -> Result<KeyLemmaSection, RunError> {
    let k = run_key_lemma_trials(opts.trials, opts.seed)?;
    Ok(KeyLemmaSection {
        trials: k.trials,
        seed: k.seed,
        passed: k.passed,
        failures: k
            .failures
            .iter()
            .map(|f| KeyLemmaFailureEntry {
                trial: f.trial,
                n1: f.n1,
                n2: f.n2,
                observed: f.observed.to_string(),
            })
            .collect(),
    })
}

fn empty(command: Command) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        command: command.name().to_string(),
        scenario: None,
        validation: None,
        twist: None,
        criteria: None,
        dimensions: None,
        enumeration: None,
        key_lemma: None,
        conclusion: String::new(),
        exit_code: 0,
    }
}

fn finish(mut r: Report, ok: bool, yes: impl Into<String>, no: impl Into<String>) -> Report {
    r.exit_code = if ok { 0 } else { 1 };
    r.conclusion = if ok { yes.into() } else { no.into() };
    r
}

fn criterion(r: Report) -> Report {
    let ok = r.criteria.as_ref().is_some_and(|c| c.criterion_satisfied);
    finish(r, ok, SATISFIED, NOT_SATISFIED)
}

fn enumeration_conclusion(r: Report) -> Report {
    let e = r.enumeration.as_ref().expect("enumeration computed");
    let msg = format!(
        "{} of {} enumerated polymers satisfy the criterion",
        e.satisfying,
        e.polymers.len()
    );
    let ok = e.satisfying > 0;
    finish(r, ok, msg.clone(), msg)
}

/// Runs a command. `Err` means invalid input (exit code 2); otherwise the
/// report carries exit code 0 or 1.
pub fn run(command: Command, scenario: Option<&Scenario>, opts: &RunOptions) -> Result<Report, RunError> {
    let mut r = empty(command);
    if command == Command::KeyLemma {
        let k = key_lemma(opts)?;
        let ok = k.failures.is_empty();
        let msg = format!("key lemma holds on {}/{} trials", k.passed, k.trials);
        r.key_lemma = Some(k);
        return Ok(finish(r, ok, msg.clone(), msg));
    }
    let s = scenario.ok_or(RunError::MissingScenario(command.name()))?;
    r.scenario = Some(echo(s));
    let polymer = s.polymer.as_ref();
    let need = |name| polymer.ok_or(RunError::MissingPolymer(name));

    match command {
        Command::Validate => {
            let v = validation(s, need("validate")?)?;
            let ok = v.polymer.valid && v.deligne.as_ref().map_or(true, |d| d.valid);
            r.validation = Some(v);
            Ok(finish(r, ok, "all validation checks pass", "validation failed"))
        }
        Command::Twist => {
            let p = need("twist")?;
            r.validation = Some(validation(s, p)?);
            let (c, t) = assess(s, p, &s.flags)?;
            r.criteria = Some(c);
            r.twist = t;
            Ok(criterion(r))
        }
        Command::Enumerate => {
            r.enumeration = Some(enumeration(s, opts)?);
            Ok(enumeration_conclusion(r))
        }
        Command::Dims => {
            let p = need("dims")?;
            let v = validation(s, p)?;
            let valid = v.polymer.valid;
            r.validation = Some(v);
            if !valid {
                return Ok(finish(r, false, "", "polymer is not valid"));
            }
            let dims = dimensions(s, p)?;
            let msg = format!("total dimension {}", dims.total);
            r.dimensions = Some(dims);
            Ok(finish(r, true, msg, ""))
        }
        Command::Report => {
            r.enumeration = Some(enumeration(s, opts)?);
            r.key_lemma = Some(key_lemma(opts)?);
            match polymer {
                Some(p) => {
                    r.validation = Some(validation(s, p)?);
                    let (c, t) = assess(s, p, &s.flags)?;
                    if c.polymer_valid {
                        r.dimensions = Some(dimensions(s, p)?);
                    }
                    r.criteria = Some(c);
                    r.twist = t;
                    Ok(criterion(r))
                }
                None => Ok(enumeration_conclusion(r)),
            }
        }
        Command::KeyLemma => unreachable!("handled above"),
    }
}
