//! Dimensions of Hodge-type representations built from a polymer.

use std::collections::BTreeMap;

use crate::diagram::{admissible_vertices, Family};
use crate::error::{Error, Result};
use crate::galois::GaloisAction;
use crate::polymer::{part_orbits, validate_polymer, Part, Polymer};

/// Dimension of the minuscule module with highest weight `ω_vertex`.
pub fn minuscule_dim(family: Family, rank: usize, vertex: usize) -> Result<u64> {
    if !admissible_vertices(family, rank)?.contains(&vertex) {
        return Err(Error::NotAdmissible {
            family,
            rank,
            index: vertex,
        });
    }
    let r = rank as u64;
    let pow2 = |e: usize| {
        u32::try_from(e)
            .ok()
            .and_then(|e| 2u64.checked_pow(e))
            .ok_or(Error::Overflow("spin dimension"))
    };
    match family {
        Family::A => Ok(r + 1),
        Family::B => pow2(rank),
        Family::C => Ok(2 * r),
        Family::D if vertex == 1 => Ok(2 * r),
        Family::D => pow2(rank - 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDimension {
    /// Smallest part of the orbit.
    pub representative: Part,
    /// `dim ⊗_{s∈T} W_s`.
    pub dimension: u64,
    pub orbit_size: usize,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub per_orbit: Vec<OrbitDimension>,
    /// Dimension of `V` over the algebraic closure.
    pub total: u64,
}

/// Dimension of a part's tensor product of minuscule modules.
pub fn part_dim(part: &Part, action: &GaloisAction) -> Result<u64> {
    let diagram = action.diagram();
    part.iter().try_fold(1u64, |acc, v| {
        let c = diagram.component(v.component);
        let d = minuscule_dim(c.family, c.rank, v.index)?;
        acc.checked_mul(d).ok_or(Error::Overflow("part dimension"))
    })
}

/// Groups the parts into orbits and totals `dim × orbit size × multiplicity`.
///
/// `multiplicities` may be keyed on any part of an orbit; missing orbits
/// default to 1.
pub fn polymer_dims(
    polymer: &Polymer,
    action: &GaloisAction,
    multiplicities: &BTreeMap<Part, u64>,
) -> Result<DimensionReport> {
    let report = validate_polymer(polymer, action)?;
    if !report.is_valid() {
        return Err(Error::InvalidPolymer(report.summary()));
    }
    let orbits = part_orbits(polymer, action);
    let mut resolved: BTreeMap<usize, u64> = BTreeMap::new();
    for (key, &m) in multiplicities {
        let Some(o) = orbits.iter().position(|orbit| orbit.contains(key)) else {
            return Err(Error::UnknownOrbit(format!("{key:?}")));
        };
        if resolved.insert(o, m).is_some() {
            return Err(Error::UnknownOrbit(format!(
                "orbit of {key:?} given more than one multiplicity"
            )));
        }
        if m == 0 {
            return Err(Error::UnknownOrbit(format!("zero multiplicity for {key:?}")));
        }
    }

    let mut per_orbit = Vec::with_capacity(orbits.len());
    let mut total = 0u64;
    for (o, orbit) in orbits.iter().enumerate() {
        let representative = orbit[0].clone();
        let dimension = part_dim(&representative, action)?;
        let multiplicity = resolved.get(&o).copied().unwrap_or(1);
        let contribution = dimension
            .checked_mul(orbit.len() as u64)
            .and_then(|x| x.checked_mul(multiplicity))
            .ok_or(Error::Overflow("total dimension"))?;
        total = total
            .checked_add(contribution)
            .ok_or(Error::Overflow("total dimension"))?;
        per_orbit.push(OrbitDimension {
            representative,
            dimension,
            orbit_size: orbit.len(),
            multiplicity,
        });
    }
    Ok(DimensionReport { per_orbit, total })
}
