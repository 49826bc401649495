//! Scenario files: JSON documents describing a diagram, its Galois action,
//! hermitian data, anisotropy flags and a polymer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{Component, DynkinDiagram, Family, VertexMap, VertexRef};
use crate::galois::{DiagramAutomorphism, GaloisAction};
use crate::polymer::{HermitianData, Part, Polymer};
use crate::twist::AnisotropyFlags;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub id: String,
    pub family: String,
    pub rank: usize,
}

/// One generator: explicit component mapping (omitted ids are fixed) and
/// named vertex maps (omitted ids use `identity`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    #[serde(default)]
    pub permutation: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vertex_maps: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnderlinedSpec {
    pub family: String,
    pub rank: usize,
    pub special: usize,
    pub allowed: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HermitianSpec {
    #[serde(default)]
    pub noncompact: Vec<String>,
    #[serde(default)]
    pub special: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub underlined: Vec<UnderlinedSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplicitySpec {
    pub part: Vec<String>,
    pub multiplicity: u64,
}

/// The document as written, echoed back in reports.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub components: Vec<ComponentSpec>,
    #[serde(default)]
    pub galois: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hermitian: Option<HermitianSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub anisotropy: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polymer: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub multiplicities: Vec<MultiplicitySpec>,
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub action: GaloisAction,
    pub hermitian: Option<HermitianData>,
    pub flags: AnisotropyFlags,
    pub polymer: Option<Polymer>,
    pub multiplicities: BTreeMap<Part, u64>,
}

impl Scenario {
    pub fn diagram(&self) -> &DynkinDiagram {
        self.action.diagram()
    }

    pub fn name(&self) -> &str {
        self.file.name.as_deref().unwrap_or("unnamed")
    }
}

/// A parse or reference error with its location (`line L, column C` for
/// syntax errors, a field path otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioErrors(pub Vec<ScenarioError>);

impl fmt::Display for ScenarioErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ScenarioErrors {}

#[derive(Default)]
struct Errors(Vec<ScenarioError>);

impl Errors {
    fn push(&mut self, location: impl Into<String>, message: impl fmt::Display) {
        self.0.push(ScenarioError {
            location: location.into(),
            message: message.to_string(),
        });
    }

    fn into_result<T>(self, value: T) -> Result<T, ScenarioErrors> {
        if self.0.is_empty() {
            Ok(value)
        } else {
            Err(ScenarioErrors(self.0))
        }
    }
}

/// Parses a `"componentId:vertexIndex"` label.
pub fn parse_vertex(label: &str, diagram: &DynkinDiagram) -> Result<VertexRef, String> {
    let (id, index) = label
        .rsplit_once(':')
        .ok_or_else(|| format!("`{label}` is not of the form componentId:vertexIndex"))?;
    let component = diagram
        .position(id)
        .ok_or_else(|| format!("unknown component `{id}`"))?;
    let index: usize = index
        .parse()
        .map_err(|_| format!("`{index}` is not a vertex index"))?;
    let v = VertexRef::new(component, index);
    if !diagram.contains(v) {
        return Err(format!(
            "vertex {index} is out of range for component `{id}` of rank {}",
            diagram.component(component).rank
        ));
    }
    Ok(v)
}

fn parse_part(labels: &[String], diagram: &DynkinDiagram, at: &str, errs: &mut Errors) -> Option<Part> {
    let mut part = Part::new();
    let mut ok = true;
    for (k, label) in labels.iter().enumerate() {
        match parse_vertex(label, diagram) {
            Ok(v) => {
                part.insert(v);
            }
            Err(e) => {
                errs.push(format!("{at}[{k}]"), e);
                ok = false;
            }
        }
    }
    if !ok {
        return None;
    }
    if let Err(e) = crate::polymer::check_part(&part) {
        errs.push(at, e);
        return None;
    }
    Some(part)
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioErrors> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| {
        ScenarioErrors(vec![ScenarioError {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        }])
    })?;
    build_scenario(file)
}

pub fn build_scenario(file: ScenarioFile) -> Result<Scenario, ScenarioErrors> {
    let mut errs = Errors::default();

    let mut components = Vec::new();
    for (i, c) in file.components.iter().enumerate() {
        let at = format!("components[{i}]");
        let family = match c.family.parse::<Family>() {
            Ok(f) => f,
            Err(e) => {
                errs.push(format!("{at}.family"), e);
                continue;
            }
        };
        match Component::new(c.id.clone(), family, c.rank) {
            Ok(comp) => components.push(comp),
            Err(e) => errs.push(format!("{at}.rank"), e),
        }
    }
    if !errs.0.is_empty() {
        return Err(ScenarioErrors(errs.0));
    }
    let diagram = match DynkinDiagram::new(components) {
        Ok(d) => d,
        Err(e) => {
            errs.push("components", e);
            return Err(ScenarioErrors(errs.0));
        }
    };
    let n = diagram.len();
    let lookup = |id: &str, at: String, errs: &mut Errors| -> Option<usize> {
        let p = diagram.position(id);
        if p.is_none() {
            errs.push(at, format!("unknown component `{id}`"));
        }
        p
    };

    let mut gens = Vec::new();
    for (g, spec) in file.galois.iter().enumerate() {
        let at = format!("galois[{g}]");
        let mut perm: Vec<usize> = (0..n).collect();
        let mut maps = vec![VertexMap::Identity; n];
        let mut ok = true;
        for (src, dst) in &spec.permutation {
            let s = lookup(src, format!("{at}.permutation"), &mut errs);
            let d = lookup(dst, format!("{at}.permutation.{src}"), &mut errs);
            match (s, d) {
                (Some(s), Some(d)) => perm[s] = d,
                _ => ok = false,
            }
        }
        for (id, name) in &spec.vertex_maps {
            let Some(c) = lookup(id, format!("{at}.vertex_maps"), &mut errs) else {
                ok = false;
                continue;
            };
            match VertexMap::from_name(name) {
                Some(m) => maps[c] = m,
                None => {
                    errs.push(format!("{at}.vertex_maps.{id}"), format!("unknown vertex map `{name}`"));
                    ok = false;
                }
            }
        }
        if ok {
            match DiagramAutomorphism::new(&diagram, perm, maps) {
                Ok(a) => gens.push(a),
                Err(e) => errs.push(at, e),
            }
        }
    }
    if !errs.0.is_empty() {
        return Err(ScenarioErrors(errs.0));
    }
    let action = match GaloisAction::generate(gens, diagram.clone()) {
        Ok(a) => a,
        Err(e) => {
            errs.push("galois", e);
            return Err(ScenarioErrors(errs.0));
        }
    };

    let hermitian = file.hermitian.as_ref().map(|h| {
        let mut data = HermitianData::default();
        for (k, id) in h.noncompact.iter().enumerate() {
            if let Some(c) = lookup(id, format!("hermitian.noncompact[{k}]"), &mut errs) {
                data.noncompact.insert(c);
            }
        }
        for (id, &s) in &h.special {
            if let Some(c) = lookup(id, "hermitian.special".to_string(), &mut errs) {
                data.special.insert(c, s);
            }
        }
        for (k, u) in h.underlined.iter().enumerate() {
            let at = format!("hermitian.underlined[{k}]");
            match u.family.parse::<Family>() {
                Ok(f) => {
                    data.underlined
                        .insert((f, u.rank, u.special), u.allowed.iter().copied().collect());
                }
                Err(e) => errs.push(format!("{at}.family"), e),
            }
        }
        if let Err(e) = data.validate(&diagram) {
            errs.push("hermitian", e);
        }
        data
    });

    let orbits = action.component_orbits();
    let reps: BTreeSet<usize> = orbits.iter().map(|o| o[0]).collect();
    let mut flag_map: BTreeMap<usize, bool> = reps.iter().map(|&r| (r, false)).collect();
    for (id, &value) in &file.anisotropy {
        if let Some(c) = lookup(id, "anisotropy".to_string(), &mut errs) {
            if reps.contains(&c) {
                flag_map.insert(c, value);
            } else {
                let orbit = orbits.iter().find(|o| o.contains(&c)).expect("orbits partition");
                errs.push(
                    format!("anisotropy.{id}"),
                    format!(
                        "`{id}` is not an orbit representative; use `{}`",
                        diagram.component(orbit[0]).id
                    ),
                );
            }
        }
    }
    let flags = AnisotropyFlags::from_map(&action, flag_map).expect("keys are the representatives");

    let polymer = file.polymer.as_ref().and_then(|parts| {
        let parsed: Vec<Option<Part>> = parts
            .iter()
            .enumerate()
            .map(|(k, p)| parse_part(p, &diagram, &format!("polymer[{k}]"), &mut errs))
            .collect();
        let parsed: Option<Vec<Part>> = parsed.into_iter().collect();
        parsed.and_then(|ps| match Polymer::new(ps) {
            Ok(p) => Some(p),
            Err(e) => {
                errs.push("polymer", e);
                None
            }
        })
    });

    let mut multiplicities = BTreeMap::new();
    for (k, m) in file.multiplicities.iter().enumerate() {
        let at = format!("multiplicities[{k}].part");
        if let Some(part) = parse_part(&m.part, &diagram, &at, &mut errs) {
            if multiplicities.insert(part, m.multiplicity).is_some() {
                errs.push(at, "duplicate multiplicity entry");
            }
        }
    }

    errs.into_result(Scenario {
        file,
        action,
        hermitian,
        flags,
        polymer,
        multiplicities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "components": [{"id": "a", "family": "A", "rank": 1},
                       {"id": "b", "family": "A", "rank": 1}],
        "galois": [{"permutation": {"a": "b", "b": "a"}}],
        "polymer": [["a:1", "b:1"]]
    }"#;

    #[test]
    fn parses_minimal() {
        let s = parse_scenario(MINIMAL).unwrap();
        assert_eq!(s.action.order(), 2);
        assert_eq!(s.polymer.unwrap().len(), 1);
        assert!(s.hermitian.is_none());
    }

    #[test]
    fn syntax_error_has_line() {
        let e = parse_scenario("{\n  \"components\": [,\n}").unwrap_err();
        assert!(e.0[0].location.starts_with("line 2"), "{e}");
    }

    #[test]
    fn exceptional_family_rejected() {
        let e = parse_scenario(r#"{"components": [{"id": "x", "family": "E", "rank": 6}]}"#).unwrap_err();
        assert_eq!(e.0[0].location, "components[0].family");
    }

    #[test]
    fn rank_violation_reported() {
        let e = parse_scenario(r#"{"components": [{"id": "x", "family": "D", "rank": 3}]}"#).unwrap_err();
        assert_eq!(e.0[0].location, "components[0].rank");
    }

    #[test]
    fn dangling_ids_reported() {
        let text = r#"{
            "components": [{"id": "a", "family": "A", "rank": 1}],
            "polymer": [["z:1"], ["a:2"]]
        }"#;
        let e = parse_scenario(text).unwrap_err();
        let locations: Vec<&str> = e.0.iter().map(|x| x.location.as_str()).collect();
        assert_eq!(locations, vec!["polymer[0][0]", "polymer[1][0]"]);
    }

    #[test]
    fn unknown_fields_rejected() {
        let e = parse_scenario(r#"{"components": [], "extra": 1}"#).unwrap_err();
        assert!(e.0[0].message.contains("unknown field"));
    }

    #[test]
    fn anisotropy_must_use_representatives() {
        let text = r#"{
            "components": [{"id": "a", "family": "A", "rank": 1},
                           {"id": "b", "family": "A", "rank": 1}],
            "galois": [{"permutation": {"a": "b", "b": "a"}}],
            "anisotropy": {"b": true}
        }"#;
        let e = parse_scenario(text).unwrap_err();
        assert_eq!(e.0[0].location, "anisotropy.b");
    }

    #[test]
    fn bad_vertex_map_rejected() {
        let text = r#"{
            "components": [{"id": "a", "family": "A", "rank": 1}],
            "galois": [{"vertex_maps": {"a": "reversal"}}]
        }"#;
        let e = parse_scenario(text).unwrap_err();
        assert_eq!(e.0[0].location, "galois[0]");
    }
}
