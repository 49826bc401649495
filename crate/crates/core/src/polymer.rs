//! Polymers, Deligne polymers, orbit construction and enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::diagram::{admissible_vertices, Component, DynkinDiagram, Family, VertexRef};
use crate::error::{Error, Result};
use crate::galois::{DiagramAutomorphism, GaloisAction};

/// A subset `T ⊆ D`.
pub type Part = BTreeSet<VertexRef>;

/// Components met by a part, i.e. `π(T)`.
pub fn project(part: &Part) -> BTreeSet<usize> {
    part.iter().map(|v| v.component).collect()
}

/// Image `g(T)`.
pub fn apply_part(g: &DiagramAutomorphism, part: &Part, diagram: &DynkinDiagram) -> Part {
    part.iter().map(|&v| g.apply(diagram, v)).collect()
}

/// Checks the structural invariant: nonempty and at most one vertex per component.
pub fn check_part(part: &Part) -> Result<()> {
    if part.is_empty() {
        return Err(Error::InvalidPart("empty part".into()));
    }
    let mut seen = BTreeSet::new();
    for v in part {
        if !seen.insert(v.component) {
            return Err(Error::InvalidPart(format!(
                "part meets component {} in more than one vertex",
                v.component
            )));
        }
    }
    Ok(())
}

/// A set of parts. Parts and the part set are kept sorted, which is the
/// canonical form used for comparison and output.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polymer {
    parts: BTreeSet<Part>,
}

impl Polymer {
    pub fn new(parts: impl IntoIterator<Item = Part>) -> Result<Self> {
        let parts: BTreeSet<Part> = parts.into_iter().collect();
        for p in &parts {
            check_part(p)?;
        }
        Ok(Polymer { parts })
    }

    pub fn parts(&self) -> &BTreeSet<Part> {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, part: &Part) -> bool {
        self.parts.contains(part)
    }

    pub fn union(&self, other: &Polymer) -> Polymer {
        Polymer {
            parts: self.parts.union(&other.parts).cloned().collect(),
        }
    }

    pub fn check_vertices(&self, diagram: &DynkinDiagram) -> Result<()> {
        self.parts
            .iter()
            .flatten()
            .try_for_each(|&v| diagram.check_vertex(v))
    }

    /// Labels such as `["1:1", "2:1"]` for each part.
    pub fn labels(&self, diagram: &DynkinDiagram) -> Vec<Vec<String>> {
        self.parts
            .iter()
            .map(|p| p.iter().map(|&v| diagram.vertex_label(v)).collect())
            .collect()
    }
}

/// Vertex-level conditions a polymer can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    GaloisStable,
    Covering,
    MinusculeSingleton,
    DeligneNc,
}

impl Condition {
    pub fn id(self) -> &'static str {
        match self {
            Condition::GaloisStable => "galois-stable",
            Condition::Covering => "covering",
            Condition::MinusculeSingleton => "minuscule-singleton",
            Condition::DeligneNc => "deligne-nc",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub condition: Condition,
    pub part: Option<Part>,
    pub component: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fails(&self, condition: Condition) -> bool {
        self.failures.iter().any(|f| f.condition == condition)
    }

    pub fn summary(&self) -> String {
        self.failures
            .iter()
            .map(|f| format!("{}: {}", f.condition, f.detail))
            .join("; ")
    }
}

fn part_label(part: &Part, diagram: &DynkinDiagram) -> String {
    let labels: Vec<String> = part.iter().map(|&v| diagram.vertex_label(v)).collect();
    format!("{{{}}}", labels.join(","))
}

/// Checks Galois stability, covering, and that every part meets each
/// component in an admissible minuscule vertex.
pub fn validate_polymer(polymer: &Polymer, action: &GaloisAction) -> Result<ValidationReport> {
    let diagram = action.diagram();
    polymer.check_vertices(diagram)?;
    let mut failures = Vec::new();

    for part in polymer.parts() {
        if let Some(image) = action
            .elements()
            .iter()
            .map(|g| apply_part(g, part, diagram))
            .find(|img| !polymer.contains(img))
        {
            failures.push(Failure {
                condition: Condition::GaloisStable,
                part: Some(part.clone()),
                component: None,
                detail: format!(
                    "image {} of {} is not a part",
                    part_label(&image, diagram),
                    part_label(part, diagram)
                ),
            });
        }
    }

    let covered: BTreeSet<usize> = polymer.parts().iter().flat_map(project).collect();
    for c in (0..diagram.len()).filter(|c| !covered.contains(c)) {
        failures.push(Failure {
            condition: Condition::Covering,
            part: None,
            component: Some(c),
            detail: format!("component {} is not covered", diagram.component(c).id),
        });
    }

    for part in polymer.parts() {
        for &v in part {
            let comp = diagram.component(v.component);
            let admissible = admissible_vertices(comp.family, comp.rank)?;
            if !admissible.contains(&v.index) {
                failures.push(Failure {
                    condition: Condition::MinusculeSingleton,
                    part: Some(part.clone()),
                    component: Some(v.component),
                    detail: format!(
                        "vertex {} is not admissible for {}{}",
                        diagram.vertex_label(v),
                        comp.family,
                        comp.rank
                    ),
                });
            }
        }
    }

    Ok(ValidationReport { failures })
}

/// Noncompact components, their special vertices, and the allowed
/// ("underlined") vertices per `(family, rank, special vertex)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HermitianData {
    pub noncompact: BTreeSet<usize>,
    pub special: BTreeMap<usize, usize>,
    pub underlined: BTreeMap<(Family, usize, usize), BTreeSet<usize>>,
}

impl HermitianData {
    /// Noncompact components with special vertex 1 and the default table.
    pub fn with_noncompact(noncompact: impl IntoIterator<Item = usize>) -> Self {
        let noncompact: BTreeSet<usize> = noncompact.into_iter().collect();
        let special = noncompact.iter().map(|&c| (c, 1)).collect();
        HermitianData {
            noncompact,
            special,
            underlined: BTreeMap::new(),
        }
    }

    pub fn validate(&self, diagram: &DynkinDiagram) -> Result<()> {
        for &c in &self.noncompact {
            if c >= diagram.len() {
                return Err(Error::InvalidHermitian(format!("no component {c}")));
            }
            let Some(&s) = self.special.get(&c) else {
                return Err(Error::InvalidHermitian(format!(
                    "noncompact component {} has no special vertex",
                    diagram.component(c).id
                )));
            };
            if !diagram.contains(VertexRef::new(c, s)) {
                return Err(Error::InvalidHermitian(format!(
                    "special vertex {s} does not lie in component {}",
                    diagram.component(c).id
                )));
            }
        }
        if let Some(c) = self.special.keys().find(|c| !self.noncompact.contains(c)) {
            return Err(Error::InvalidHermitian(format!(
                "special vertex given for compact component {c}"
            )));
        }
        for (&(family, rank, special), allowed) in &self.underlined {
            let admissible = admissible_vertices(family, rank)?;
            if special == 0 || special > rank {
                return Err(Error::InvalidHermitian(format!(
                    "special vertex {special} out of range for {family}{rank}"
                )));
            }
            if !allowed.is_subset(&admissible) {
                return Err(Error::InvalidHermitian(format!(
                    "underlined vertices {allowed:?} for {family}{rank} are not all admissible"
                )));
            }
        }
        Ok(())
    }

    /// Underlined vertices for a component with the given special vertex.
    pub fn underlined_for(&self, comp: &Component, special: usize) -> Result<BTreeSet<usize>> {
        match self.underlined.get(&(comp.family, comp.rank, special)) {
            Some(set) => Ok(set.clone()),
            None => admissible_vertices(comp.family, comp.rank),
        }
    }

    /// Vertices a part may use on component `c`.
    pub fn allowed_on(&self, diagram: &DynkinDiagram, c: usize) -> Result<BTreeSet<usize>> {
        let comp = diagram.component(c);
        match self.special.get(&c) {
            Some(&s) if self.noncompact.contains(&c) => self.underlined_for(comp, s),
            _ => admissible_vertices(comp.family, comp.rank),
        }
    }
}

/// The Deligne condition for one part, as a failure if it does not hold.
fn deligne_failure(
    part: &Part,
    diagram: &DynkinDiagram,
    hermitian: &HermitianData,
) -> Result<Option<Failure>> {
    let nc: Vec<VertexRef> = part
        .iter()
        .copied()
        .filter(|v| hermitian.noncompact.contains(&v.component))
        .collect();
    match nc.as_slice() {
        [] => Ok(None),
        [v] => {
            let allowed = hermitian.allowed_on(diagram, v.component)?;
            if allowed.contains(&v.index) {
                Ok(None)
            } else {
                Ok(Some(Failure {
                    condition: Condition::DeligneNc,
                    part: Some(part.clone()),
                    component: Some(v.component),
                    detail: format!(
                        "vertex {} of {} is not underlined",
                        diagram.vertex_label(*v),
                        part_label(part, diagram)
                    ),
                }))
            }
        }
        _ => Ok(Some(Failure {
            condition: Condition::DeligneNc,
            part: Some(part.clone()),
            component: None,
            detail: format!(
                "{} meets the noncompact components in {} vertices",
                part_label(part, diagram),
                nc.len()
            ),
        })),
    }
}

/// [`validate_polymer`] plus the noncompact condition on every part.
pub fn validate_deligne_polymer(
    polymer: &Polymer,
    action: &GaloisAction,
    hermitian: &HermitianData,
) -> Result<ValidationReport> {
    let diagram = action.diagram();
    hermitian.validate(diagram)?;
    let mut report = validate_polymer(polymer, action)?;
    for part in polymer.parts() {
        if let Some(f) = deligne_failure(part, diagram, hermitian)? {
            report.failures.push(f);
        }
    }
    Ok(report)
}

/// Every part is a single vertex.
pub fn is_pel_shaped(polymer: &Polymer) -> bool {
    polymer.parts().iter().all(|p| p.len() == 1)
}

/// `{g(T) : g ∈ G}`.
pub fn orbit_polymer(part: &Part, action: &GaloisAction) -> Result<Polymer> {
    check_part(part)?;
    for &v in part {
        action.diagram().check_vertex(v)?;
    }
    let parts = action
        .elements()
        .iter()
        .map(|g| apply_part(g, part, action.diagram()));
    Ok(Polymer {
        parts: parts.collect(),
    })
}

/// Parts of a Galois-stable polymer grouped into orbits, ordered by their
/// smallest part (the orbit representative).
pub fn part_orbits(polymer: &Polymer, action: &GaloisAction) -> Vec<Vec<Part>> {
    let mut seen: BTreeSet<&Part> = BTreeSet::new();
    let mut orbits = Vec::new();
    for part in polymer.parts() {
        if seen.contains(part) {
            continue;
        }
        let orbit: BTreeSet<Part> = action
            .elements()
            .iter()
            .map(|g| apply_part(g, part, action.diagram()))
            .collect();
        for p in &orbit {
            if let Some(q) = polymer.parts().get(p) {
                seen.insert(q);
            }
        }
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_orbits: usize,
    pub max_output: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_orbits: 10_000,
            max_output: 1_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Admissible part orbits, each a Galois-stable polymer candidate.
    pub orbits: Vec<Polymer>,
    pub polymers: Vec<Polymer>,
    pub truncated: bool,
}

/// All covering unions of admissible part orbits.
///
/// Candidate parts pick one allowed vertex in each component of a nonempty
/// component subset with at most one noncompact component. An orbit is kept
/// when every member satisfies the noncompact condition. Output is ordered by
/// number of orbits in the union, then lexicographically by orbit index.
pub fn enumerate_deligne_polymers(
    action: &GaloisAction,
    hermitian: &HermitianData,
    limits: EnumerationLimits,
) -> Result<Enumeration> {
    let diagram = action.diagram();
    hermitian.validate(diagram)?;
    let n = diagram.len();
    let allowed: Vec<Vec<usize>> = (0..n)
        .map(|c| hermitian.allowed_on(diagram, c).map(|s| s.into_iter().collect()))
        .collect::<Result<_>>()?;

    let mut truncated = false;
    let mut seen: BTreeSet<Part> = BTreeSet::new();
    let mut orbits: Vec<Polymer> = Vec::new();
    'subsets: for size in 1..=n {
        for subset in (0..n).combinations(size) {
            let nc = subset
                .iter()
                .filter(|c| hermitian.noncompact.contains(c))
                .count();
            if nc > 1 {
                continue;
            }
            let choices = subset.iter().map(|&c| allowed[c].iter().copied());
            for vertices in choices.multi_cartesian_product() {
                let part: Part = subset
                    .iter()
                    .zip(vertices)
                    .map(|(&c, i)| VertexRef::new(c, i))
                    .collect();
                if seen.contains(&part) {
                    continue;
                }
                let orbit = orbit_polymer(&part, action)?;
                seen.extend(orbit.parts().iter().cloned());
                let mut admissible = true;
                for p in orbit.parts() {
                    if deligne_failure(p, diagram, hermitian)?.is_some() {
                        admissible = false;
                        break;
                    }
                }
                if admissible {
                    if orbits.len() >= limits.max_orbits {
                        truncated = true;
                        break 'subsets;
                    }
                    orbits.push(orbit);
                }
            }
        }
    }

    let coverage: Vec<Vec<bool>> = orbits
        .iter()
        .map(|o| {
            let mut cov = vec![false; n];
            for p in o.parts() {
                for v in p {
                    cov[v.component] = true;
                }
            }
            cov
        })
        .collect();

    let mut polymers = Vec::new();
    'unions: for k in 1..=orbits.len() {
        for combo in (0..orbits.len()).combinations(k) {
            let covering = (0..n).all(|c| combo.iter().any(|&o| coverage[o][c]));
            if !covering {
                continue;
            }
            if polymers.len() >= limits.max_output {
                truncated = true;
                break 'unions;
            }
            let parts = combo.iter().flat_map(|&o| orbits[o].parts().iter().cloned());
            polymers.push(Polymer {
                parts: parts.collect(),
            });
        }
    }

    Ok(Enumeration {
        orbits,
        polymers,
        truncated,
    })
}
