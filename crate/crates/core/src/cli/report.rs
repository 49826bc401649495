//! Versioned report schema. The text form is rendered from the same struct,
//! so both forms carry identical data.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::scenario::{GeneratorSpec, ScenarioFile};

pub const SCHEMA_VERSION: u32 = 1;

pub const SATISFIED: &str = "potential good reduction criterion satisfied";
pub const NOT_SATISFIED: &str = "potential good reduction criterion not satisfied";

/// Reported alongside a σ witness: the prime is not computed.
pub const SIGMA_NOTE: &str = "a prime whose Frobenius class contains sigma exists by Chebotarev density; it is not computed";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<ScenarioEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criteria: Option<CriteriaMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimensions: Option<DimensionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<EnumerationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key_lemma: Option<KeyLemmaSection>,
    pub conclusion: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioEcho {
    pub name: String,
    pub input: ScenarioFile,
    pub group_order: usize,
    /// Component orbits as id lists; the first id is the representative.
    pub orbits: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailureEntry {
    pub condition: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub valid: bool,
    pub failures: Vec<FailureEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationSection {
    pub polymer: CheckResult,
    /// Absent when the scenario carries no hermitian data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deligne: Option<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitEntry {
    pub orbit: Vec<String>,
    /// `witness`, `anisotropic` or `failed`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cardinality: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaEntry {
    pub cycles: String,
    pub element: GeneratorSpec,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistSection {
    pub satisfied: bool,
    pub orbits: Vec<OrbitEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SigmaEntry>,
    pub inner_type_a_orbits: Vec<Vec<String>>,
    /// Verdict with the anisotropy alternative dropped; null when some orbit
    /// is of inner type A.
    pub padic_verdict: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriteriaMatrix {
    pub polymer_valid: bool,
    pub deligne_valid: Option<bool>,
    pub pel_shaped: bool,
    pub transitive: bool,
    /// The three σ-side criteria are null on non-transitive actions.
    pub cyclic: Option<bool>,
    pub mumford: Option<bool>,
    pub sigma_exists: Option<bool>,
    /// Null when the polymer is invalid.
    pub perfectly_tens_twisted: Option<bool>,
    /// A positive integer or `unbounded`.
    pub index_bound: String,
    pub criterion_satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitDimensionEntry {
    pub representative: Vec<String>,
    pub dimension: u64,
    pub orbit_size: usize,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionSection {
    pub per_orbit: Vec<OrbitDimensionEntry>,
    pub total: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumeratedPolymer {
    pub parts: Vec<Vec<String>>,
    pub pel_shaped: bool,
    pub perfectly_tens_twisted: bool,
    pub sigma_exists: Option<bool>,
    pub index_bound: String,
    pub criterion_satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumerationSection {
    pub max_orbits: usize,
    pub max_output: usize,
    pub orbit_count: usize,
    pub truncated: bool,
    pub satisfying: usize,
    pub polymers: Vec<EnumeratedPolymer>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyLemmaFailureEntry {
    pub trial: u64,
    pub n1: usize,
    pub n2: usize,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyLemmaSection {
    pub trials: u64,
    pub seed: u64,
    pub passed: u64,
    pub failures: Vec<KeyLemmaFailureEntry>,
}

impl Report {
    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_machine(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render_text(self, &mut out).expect("writing to a String");
        out
    }
}

fn join(xs: &[String]) -> String {
    xs.join(" ")
}

fn part_text(p: &[String]) -> String {
    format!("{{{}}}", p.join(", "))
}

fn opt(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

fn yes(b: bool) -> &'static str {
    opt(Some(b))
}

fn render_check(out: &mut String, label: &str, c: &CheckResult) -> std::fmt::Result {
    writeln!(out, "  {label}: {}", if c.valid { "valid" } else { "invalid" })?;
    for f in &c.failures {
        write!(out, "    - [{}]", f.condition)?;
        if let Some(p) = &f.part {
            write!(out, " part {}", part_text(p))?;
        }
        if let Some(c) = &f.component {
            write!(out, " component {c}")?;
        }
        writeln!(out, ": {}", f.detail)?;
    }
    Ok(())
}

fn render_text(r: &Report, out: &mut String) -> std::fmt::Result {
    writeln!(out, "tenstwist report (schema {}) — {}", r.schema_version, r.command)?;
    if let Some(s) = &r.scenario {
        writeln!(out)?;
        writeln!(out, "scenario: {}", s.name)?;
        let comps: Vec<String> = s
            .input
            .components
            .iter()
            .map(|c| format!("{}={}{}", c.id, c.family, c.rank))
            .collect();
        writeln!(out, "  components: {}", join(&comps))?;
        writeln!(out, "  galois generators: {}", s.input.galois.len())?;
        for (i, g) in s.input.galois.iter().enumerate() {
            let perm: Vec<String> = g.permutation.iter().map(|(a, b)| format!("{a}->{b}")).collect();
            let maps: Vec<String> = g.vertex_maps.iter().map(|(a, m)| format!("{a}:{m}")).collect();
            writeln!(out, "    g{i}: perm [{}] maps [{}]", join(&perm), join(&maps))?;
        }
        writeln!(out, "  group order: {}", s.group_order)?;
        let orbits: Vec<String> = s.orbits.iter().map(|o| part_text(o)).collect();
        writeln!(out, "  orbits: {}", join(&orbits))?;
        if let Some(h) = &s.input.hermitian {
            let special: Vec<String> = h.special.iter().map(|(c, v)| format!("{c}:{v}")).collect();
            writeln!(
                out,
                "  hermitian: noncompact [{}] special [{}]",
                join(&h.noncompact),
                join(&special)
            )?;
            for u in &h.underlined {
                let allowed: Vec<String> = u.allowed.iter().map(|v| v.to_string()).collect();
                writeln!(
                    out,
                    "    underlined {}{} special {} -> [{}]",
                    u.family,
                    u.rank,
                    u.special,
                    join(&allowed)
                )?;
            }
        }
        let flags: Vec<String> = s.input.anisotropy.iter().map(|(c, v)| format!("{c}={v}")).collect();
        writeln!(out, "  anisotropy: [{}]", join(&flags))?;
        if let Some(p) = &s.input.polymer {
            let parts: Vec<String> = p.iter().map(|t| part_text(t)).collect();
            writeln!(out, "  polymer: {}", join(&parts))?;
        }
        for m in &s.input.multiplicities {
            writeln!(out, "  multiplicity {} = {}", part_text(&m.part), m.multiplicity)?;
        }
    }
    if let Some(v) = &r.validation {
        writeln!(out)?;
        writeln!(out, "validation:")?;
        render_check(out, "polymer", &v.polymer)?;
        if let Some(d) = &v.deligne {
            render_check(out, "deligne", d)?;
        }
    }
    if let Some(t) = &r.twist {
        writeln!(out)?;
        writeln!(out, "twist: {}", if t.satisfied { "satisfied" } else { "not satisfied" })?;
        for o in &t.orbits {
            write!(out, "  orbit {}: {}", part_text(&o.orbit), o.status)?;
            if let (Some(w), Some(k)) = (&o.witness, o.cardinality) {
                write!(out, " via {} (meets {k})", part_text(w))?;
            }
            writeln!(out)?;
        }
        match &t.sigma {
            Some(s) => {
                let perm: Vec<String> =
                    s.element.permutation.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                let maps: Vec<String> =
                    s.element.vertex_maps.iter().map(|(a, m)| format!("{a}:{m}")).collect();
                writeln!(out, "  sigma: {} perm [{}] maps [{}]", s.cycles, join(&perm), join(&maps))?;
                writeln!(out, "  note: {}", s.note)?;
            }
            None => writeln!(out, "  sigma: none")?,
        }
        let inner: Vec<String> = t.inner_type_a_orbits.iter().map(|o| part_text(o)).collect();
        writeln!(out, "  inner type A orbits: [{}]", join(&inner))?;
        writeln!(out, "  p-adic verdict: {}", opt(t.padic_verdict))?;
    }
    if let Some(c) = &r.criteria {
        writeln!(out)?;
        writeln!(out, "criteria:")?;
        writeln!(out, "  polymer-valid            {}", yes(c.polymer_valid))?;
        writeln!(out, "  deligne-valid            {}", opt(c.deligne_valid))?;
        writeln!(out, "  pel-shaped               {}", yes(c.pel_shaped))?;
        writeln!(out, "  transitive               {}", yes(c.transitive))?;
        writeln!(out, "  cyclic                   {}", opt(c.cyclic))?;
        writeln!(out, "  mumford                  {}", opt(c.mumford))?;
        writeln!(out, "  sigma-exists             {}", opt(c.sigma_exists))?;
        writeln!(out, "  perfectly-tens-twisted   {}", opt(c.perfectly_tens_twisted))?;
        writeln!(out, "  index-bound              {}", c.index_bound)?;
        writeln!(out, "  criterion-satisfied      {}", yes(c.criterion_satisfied))?;
    }
    if let Some(d) = &r.dimensions {
        writeln!(out)?;
        writeln!(out, "dimensions: total {}", d.total)?;
        for o in &d.per_orbit {
            writeln!(
                out,
                "  {}: dim {} x orbit {} x mult {}",
                part_text(&o.representative),
                o.dimension,
                o.orbit_size,
                o.multiplicity
            )?;
        }
    }
    if let Some(e) = &r.enumeration {
        writeln!(out)?;
        writeln!(
            out,
            "enumeration: {} polymers from {} orbits (limits {}/{}){}; {} satisfy the criterion",
            e.polymers.len(),
            e.orbit_count,
            e.max_orbits,
            e.max_output,
            if e.truncated { ", truncated" } else { "" },
            e.satisfying
        )?;
        for (i, p) in e.polymers.iter().enumerate() {
            let parts: Vec<String> = p.parts.iter().map(|t| part_text(t)).collect();
            writeln!(
                out,
                "  #{i}: {} | pel {} ptt {} sigma {} bound {} criterion {}",
                join(&parts),
                yes(p.pel_shaped),
                yes(p.perfectly_tens_twisted),
                opt(p.sigma_exists),
                p.index_bound,
                yes(p.criterion_satisfied)
            )?;
        }
    }
    if let Some(k) = &r.key_lemma {
        writeln!(out)?;
        writeln!(out, "key lemma: {}/{} trials pass (seed {})", k.passed, k.trials, k.seed)?;
        for f in &k.failures {
            writeln!(
                out,
                "  trial {}: indices {} and {}, observed {}",
                f.trial, f.n1, f.n2, f.observed
            )?;
        }
    }
    writeln!(out)?;
    writeln!(out, "conclusion: {}", r.conclusion)?;
    writeln!(out, "exit code: {}", r.exit_code)?;
    Ok(())
}
