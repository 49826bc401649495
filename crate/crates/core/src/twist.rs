//! Decision procedures for tensor-twisted polymers.
//!
//! For a component orbit `O`, condition (1) asks for a part `T` whose
//! projection meets `O` in at least two components; condition (2) is an
//! anisotropy flag supplied by the caller. [`min_unipotent_index_bound`] is
//! an independent restatement through the smallest unipotent index a rational
//! root unipotent can reach.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::diagram::{Family, VertexMap};
use crate::error::{Error, Result};
use crate::galois::{DiagramAutomorphism, GaloisAction};
use crate::polymer::{project, validate_polymer, Part, Polymer};

/// Per component orbit (keyed by its smallest component): `true` when the
/// corresponding factor has no nontrivial unipotent over the base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnisotropyFlags {
    flags: BTreeMap<usize, bool>,
}

impl AnisotropyFlags {
    pub fn all(action: &GaloisAction, value: bool) -> Self {
        AnisotropyFlags {
            flags: action
                .component_orbits()
                .iter()
                .map(|o| (o[0], value))
                .collect(),
        }
    }

    pub fn from_map(action: &GaloisAction, flags: BTreeMap<usize, bool>) -> Result<Self> {
        let flags = AnisotropyFlags { flags };
        flags.check(action)?;
        Ok(flags)
    }

    pub fn check(&self, action: &GaloisAction) -> Result<()> {
        let reps: Vec<usize> = action.component_orbits().iter().map(|o| o[0]).collect();
        let keys: Vec<usize> = self.flags.keys().copied().collect();
        if reps != keys {
            return Err(Error::FlagsMismatch(format!(
                "expected representatives {reps:?}, got {keys:?}"
            )));
        }
        Ok(())
    }

    pub fn get(&self, representative: usize) -> bool {
        self.flags.get(&representative).copied().unwrap_or(false)
    }

    pub fn as_map(&self) -> &BTreeMap<usize, bool> {
        &self.flags
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitStatus {
    /// Condition (1) with the first part of maximal `|O ∩ π(T)|`.
    Witness { part: Part, cardinality: usize },
    /// Condition (2).
    Anisotropic,
    Failed,
}

impl OrbitStatus {
    pub fn passes(&self) -> bool {
        !matches!(self, OrbitStatus::Failed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitVerdict {
    pub orbit: Vec<usize>,
    pub status: OrbitStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistVerdict {
    pub satisfied: bool,
    pub per_orbit: Vec<OrbitVerdict>,
    pub sigma: Option<DiagramAutomorphism>,
}

fn require_valid(polymer: &Polymer, action: &GaloisAction) -> Result<()> {
    let report = validate_polymer(polymer, action)?;
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidPolymer(report.summary()))
    }
}

fn require_transitive(polymer: &Polymer, action: &GaloisAction) -> Result<()> {
    polymer.check_vertices(action.diagram())?;
    if action.is_transitive() {
        Ok(())
    } else {
        Err(Error::NotTransitive)
    }
}

fn meet(orbit: &[usize], part: &Part) -> usize {
    let proj = project(part);
    orbit.iter().filter(|c| proj.contains(c)).count()
}

fn best_witness(polymer: &Polymer, orbit: &[usize]) -> Option<(Part, usize)> {
    let mut best: Option<(&Part, usize)> = None;
    for part in polymer.parts() {
        let k = meet(orbit, part);
        if k > best.map_or(1, |(_, b)| b) {
            best = Some((part, k));
        }
    }
    best.map(|(p, k)| (p.clone(), k))
}

fn evaluate(polymer: &Polymer, orbits: Vec<Vec<usize>>, flags: &AnisotropyFlags) -> TwistVerdict {
    let per_orbit: Vec<OrbitVerdict> = orbits
        .into_iter()
        .map(|orbit| {
            let status = match best_witness(polymer, &orbit) {
                Some((part, cardinality)) => OrbitStatus::Witness { part, cardinality },
                None if flags.get(orbit[0]) => OrbitStatus::Anisotropic,
                None => OrbitStatus::Failed,
            };
            OrbitVerdict { orbit, status }
        })
        .collect();
    TwistVerdict {
        satisfied: per_orbit.iter().all(|o| o.status.passes()),
        per_orbit,
        sigma: None,
    }
}

/// Whether every component orbit satisfies condition (1) or (2).
pub fn perfectly_tens_twisted(
    polymer: &Polymer,
    action: &GaloisAction,
    flags: &AnisotropyFlags,
) -> Result<TwistVerdict> {
    require_valid(polymer, action)?;
    flags.check(action)?;
    Ok(evaluate(polymer, action.component_orbits(), flags))
}

/// Orbits of type `A` on which every stabilizing element acts by the
/// identity vertex map.
pub fn inner_type_a_orbits(action: &GaloisAction) -> Vec<Vec<usize>> {
    let diagram = action.diagram();
    action
        .component_orbits()
        .into_iter()
        .filter(|orbit| {
            let c = orbit[0];
            diagram.component(c).family == Family::A
                && action
                    .stabilizer(c)
                    .all(|g| g.vertex_map(c) == VertexMap::Identity)
        })
        .collect()
}

/// The criterion with condition (2) dropped, valid when no orbit is of
/// inner type `A`.
pub fn padic_drop_condition2(polymer: &Polymer, action: &GaloisAction) -> Result<TwistVerdict> {
    let inner = inner_type_a_orbits(action);
    if !inner.is_empty() {
        return Err(Error::InnerTypeA(inner));
    }
    require_valid(polymer, action)?;
    Ok(evaluate(
        polymer,
        action.component_orbits(),
        &AnisotropyFlags::all(action, false),
    ))
}

/// Whether every cycle of `sigma` on the components meets some `π(T)` twice.
pub fn sigma_is_good(polymer: &Polymer, sigma: &DiagramAutomorphism) -> bool {
    sigma
        .component_cycles()
        .iter()
        .all(|cycle| polymer.parts().iter().any(|t| meet(cycle, t) > 1))
}

/// First group element `σ` such that every `⟨σ⟩`-orbit of components meets
/// some `π(T)` in more than one component.
pub fn exists_good_sigma(
    polymer: &Polymer,
    action: &GaloisAction,
) -> Result<Option<DiagramAutomorphism>> {
    require_transitive(polymer, action)?;
    Ok(action
        .elements()
        .iter()
        .find(|g| sigma_is_good(polymer, g))
        .cloned())
}

/// Cyclic action on the components and a part meeting two components.
pub fn cyclic_criterion(polymer: &Polymer, action: &GaloisAction) -> Result<bool> {
    require_transitive(polymer, action)?;
    Ok(action.is_cyclic_on_components() && polymer.parts().iter().any(|t| project(t).len() > 1))
}

/// More than one component and a part projecting onto all of them.
pub fn mumford_criterion(polymer: &Polymer, action: &GaloisAction) -> Result<bool> {
    require_transitive(polymer, action)?;
    let n = action.diagram().len();
    Ok(n > 1 && polymer.parts().iter().any(|t| project(t).len() == n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndexBound {
    Finite(usize),
    Unbounded,
}

impl fmt::Display for IndexBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexBound::Finite(k) => write!(f, "{k}"),
            IndexBound::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Above this many non-anisotropic orbits only single orbits are tried;
/// `max_T |π(T) ∩ J|` is monotone in `J`, so the minimum is unchanged.
const EXHAUSTIVE_ORBIT_LIMIT: usize = 16;

/// Smallest `1 + max_T |π(T) ∩ J|` over nonempty unions `J` of orbits whose
/// anisotropy flag is false.
///
/// A rational root unipotent supported on `J` acts with index 2 on each
/// minuscule factor it touches, so by the tensor index rule its image has
/// index `1 + |π(T) ∩ J|` on the block of `T`.
pub fn min_unipotent_index_bound(
    polymer: &Polymer,
    action: &GaloisAction,
    flags: &AnisotropyFlags,
) -> Result<IndexBound> {
    polymer.check_vertices(action.diagram())?;
    flags.check(action)?;
    let eligible: Vec<Vec<usize>> = action
        .component_orbits()
        .into_iter()
        .filter(|o| !flags.get(o[0]))
        .collect();
    if eligible.is_empty() {
        return Ok(IndexBound::Unbounded);
    }
    let projections: Vec<_> = polymer.parts().iter().map(project).collect();
    let n = action.diagram().len();
    let max_k = if eligible.len() > EXHAUSTIVE_ORBIT_LIMIT {
        1
    } else {
        eligible.len()
    };
    let mut best = usize::MAX;
    let mut in_support = vec![false; n];
    for k in 1..=max_k {
        for combo in (0..eligible.len()).combinations(k) {
            in_support.iter_mut().for_each(|b| *b = false);
            for &o in &combo {
                for &c in &eligible[o] {
                    in_support[c] = true;
                }
            }
            let max_meet = projections
                .iter()
                .map(|p| p.iter().filter(|&&c| in_support[c]).count())
                .max()
                .unwrap_or(0);
            best = best.min(1 + max_meet);
        }
    }
    Ok(IndexBound::Finite(best))
}
