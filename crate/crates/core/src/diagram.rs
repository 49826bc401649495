//! Classical Dynkin diagrams, admissible minuscule vertices and diagram
//! automorphisms.
//!
//! Vertices use Bourbaki numbering: vertex `i` of a component corresponds to
//! the fundamental weight `ω_i`. For `B_n` the last simple root is short, for
//! `C_n` it is long, and for `D_n` the vertices `n-1` and `n` are the two
//! spin nodes attached to vertex `n-2`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A classical Lie type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

    /// Smallest admissible rank for the family.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
        }
    }

    pub fn check_rank(self, rank: usize) -> Result<()> {
        if rank < self.min_rank() {
            return Err(Error::InvalidRank { family: self, rank });
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }
}

/// A connected component of the diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    pub id: String,
    pub family: Family,
    pub rank: usize,
}

impl Component {
    pub fn new(id: impl Into<String>, family: Family, rank: usize) -> Result<Self> {
        family.check_rank(rank)?;
        Ok(Component {
            id: id.into(),
            family,
            rank,
        })
    }

    /// Same family and rank, so a diagram isomorphism between the two exists.
    pub fn same_shape(&self, other: &Component) -> bool {
        self.family == other.family && self.rank == other.rank
    }
}

/// A vertex of the diagram: component position plus Bourbaki index (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexRef {
    pub component: usize,
    pub index: usize,
}

impl VertexRef {
    pub fn new(component: usize, index: usize) -> Self {
        VertexRef { component, index }
    }
}

/// Disjoint union of classical components. Components are addressed by their
/// position in `components`; ids are labels used for input and output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinDiagram {
    components: Vec<Component>,
}

impl DynkinDiagram {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        let mut seen = HashSet::new();
        for c in &components {
            c.family.check_rank(c.rank)?;
            if !seen.insert(c.id.as_str()) {
                return Err(Error::DuplicateComponent(c.id.clone()));
            }
        }
        Ok(DynkinDiagram { components })
    }

    /// `n` components of type `A1` labelled `"1"..="n"`.
    pub fn all_a1(n: usize) -> Self {
        Self::uniform(Family::A, 1, n).expect("A1 is always valid")
    }

    /// `n` copies of the same component, labelled `"1"..="n"`.
    pub fn uniform(family: Family, rank: usize, n: usize) -> Result<Self> {
        let components = (1..=n)
            .map(|i| Component::new(i.to_string(), family, rank))
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Component {
        &self.components[i]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        self.components
            .get(v.component)
            .is_some_and(|c| (1..=c.rank).contains(&v.index))
    }

    pub fn check_vertex(&self, v: VertexRef) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::DanglingVertex {
                component: v.component,
                index: v.index,
            })
        }
    }

    /// All vertices in component order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(c, comp)| (1..=comp.rank).map(move |i| VertexRef::new(c, i)))
    }

    /// `"id:index"` label of a vertex.
    pub fn vertex_label(&self, v: VertexRef) -> String {
        format!("{}:{}", self.components[v.component].id, v.index)
    }
}

/// Admissible minuscule vertices of a classical component.
pub fn admissible_vertices(family: Family, rank: usize) -> Result<BTreeSet<usize>> {
    family.check_rank(rank)?;
    let set = match family {
        Family::A => [1, rank].into_iter().collect(),
        Family::B => [rank].into_iter().collect(),
        Family::C => [1].into_iter().collect(),
        Family::D => [1, rank - 1, rank].into_iter().collect(),
    };
    Ok(set)
}

/// Cartan matrix `a[i][j] = 2(α_i, α_j) / (α_i, α_i)`, zero-indexed.
///
/// A permutation of the vertices is a diagram automorphism iff it preserves
/// this matrix.
pub fn cartan_matrix(family: Family, rank: usize) -> Result<Vec<Vec<i32>>> {
    family.check_rank(rank)?;
    let n = rank;
    let mut a = vec![vec![0i32; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain_end = if family == Family::D { n - 1 } else { n };
    for i in 0..chain_end.saturating_sub(1) {
        a[i][i + 1] = -1;
        a[i + 1][i] = -1;
    }
    match family {
        Family::A => {}
        Family::B if n >= 2 => {
            // α_n short
            a[n - 2][n - 1] = -1;
            a[n - 1][n - 2] = -2;
        }
        Family::C if n >= 2 => {
            // α_n long
            a[n - 2][n - 1] = -2;
            a[n - 1][n - 2] = -1;
        }
        Family::D => {
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        _ => {}
    }
    Ok(a)
}

/// A named isomorphism between two components of the same family and rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexMap {
    Identity,
    /// `i ↦ rank + 1 − i` on `A_n`, `n ≥ 2`.
    Reversal,
    /// Swaps the spin nodes `n−1` and `n` of `D_n`.
    SpinSwap,
    /// `D4` arm transposition `1 ↔ 3`.
    SwapOneThree,
    /// `D4` arm transposition `1 ↔ 4`.
    SwapOneFour,
    /// `D4` 3-cycle `1 → 3 → 4 → 1`.
    Triality,
    /// `D4` 3-cycle `1 → 4 → 3 → 1`.
    TrialityInverse,
}

impl VertexMap {
    pub const ALL: [VertexMap; 7] = [
        VertexMap::Identity,
        VertexMap::Reversal,
        VertexMap::SpinSwap,
        VertexMap::SwapOneThree,
        VertexMap::SwapOneFour,
        VertexMap::Triality,
        VertexMap::TrialityInverse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VertexMap::Identity => "identity",
            VertexMap::Reversal => "reversal",
            VertexMap::SpinSwap => "spin-swap",
            VertexMap::SwapOneThree => "swap-1-3",
            VertexMap::SwapOneFour => "swap-1-4",
            VertexMap::Triality => "triality",
            VertexMap::TrialityInverse => "triality-inverse",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }

    /// Whether this named map is defined on a component of the given shape.
    pub fn is_defined_on(self, family: Family, rank: usize) -> bool {
        match self {
            VertexMap::Identity => true,
            VertexMap::Reversal => family == Family::A && rank >= 2,
            VertexMap::SpinSwap => family == Family::D,
            _ => family == Family::D && rank == 4,
        }
    }

    pub fn check(self, family: Family, rank: usize) -> Result<()> {
        if self.is_defined_on(family, rank) {
            Ok(())
        } else {
            Err(Error::InvalidVertexMap {
                map: self.name().to_string(),
                family,
                rank,
            })
        }
    }

    /// Image of vertex `index` (1-based). The map must be defined on `rank`.
    pub fn apply(self, rank: usize, index: usize) -> usize {
        match self {
            VertexMap::Identity => index,
            VertexMap::Reversal => rank + 1 - index,
            VertexMap::SpinSwap => match index {
                i if i == rank => rank - 1,
                i if i == rank - 1 => rank,
                i => i,
            },
            VertexMap::SwapOneThree => match index {
                1 => 3,
                3 => 1,
                i => i,
            },
            VertexMap::SwapOneFour => match index {
                1 => 4,
                4 => 1,
                i => i,
            },
            VertexMap::Triality => match index {
                1 => 3,
                3 => 4,
                4 => 1,
                i => i,
            },
            VertexMap::TrialityInverse => match index {
                1 => 4,
                4 => 3,
                3 => 1,
                i => i,
            },
        }
    }

    /// `perm[i - 1]` is the image of vertex `i`.
    pub fn permutation(self, rank: usize) -> Vec<usize> {
        (1..=rank).map(|i| self.apply(rank, i)).collect()
    }

    /// `self ∘ other`.
    pub fn compose(self, other: VertexMap, family: Family, rank: usize) -> VertexMap {
        let perm: Vec<usize> = (1..=rank)
            .map(|i| self.apply(rank, other.apply(rank, i)))
            .collect();
        Self::from_permutation(family, rank, &perm)
            .expect("automorphisms of a component are closed under composition")
    }

    pub fn inverse(self) -> VertexMap {
        match self {
            VertexMap::Triality => VertexMap::TrialityInverse,
            VertexMap::TrialityInverse => VertexMap::Triality,
            m => m,
        }
    }

    /// Name a vertex permutation of a component, if it is one of ours.
    pub fn from_permutation(family: Family, rank: usize, perm: &[usize]) -> Option<VertexMap> {
        Self::ALL
            .into_iter()
            .filter(|m| m.is_defined_on(family, rank))
            .find(|m| m.permutation(rank) == perm)
    }

    /// Brute-force check that the map preserves the Cartan matrix.
    pub fn preserves_diagram(self, family: Family, rank: usize) -> bool {
        if !self.is_defined_on(family, rank) {
            return false;
        }
        let Ok(a) = cartan_matrix(family, rank) else {
            return false;
        };
        let p = self.permutation(rank);
        (0..rank).all(|i| (0..rank).all(|j| a[p[i] - 1][p[j] - 1] == a[i][j]))
    }
}

impl fmt::Display for VertexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Full automorphism group of a component's diagram.
pub fn component_automorphisms(component: &Component) -> Vec<VertexMap> {
    automorphisms_of(component.family, component.rank)
}

pub fn automorphisms_of(family: Family, rank: usize) -> Vec<VertexMap> {
    VertexMap::ALL
        .into_iter()
        .filter(|m| m.is_defined_on(family, rank))
        .collect()
}

/// The diagram automorphism induced by `−w₀`.
pub fn opposition_involution(family: Family, rank: usize) -> Result<VertexMap> {
    family.check_rank(rank)?;
    Ok(match family {
        Family::A if rank >= 2 => VertexMap::Reversal,
        Family::D if rank % 2 == 1 => VertexMap::SpinSwap,
        _ => VertexMap::Identity,
    })
}
