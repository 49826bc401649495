//! Finite groups of diagram automorphisms acting on `D` compatibly with the
//! projection onto the set of components.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{DynkinDiagram, VertexMap, VertexRef};
use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_BOUND: usize = 1_000_000;

/// One diagram automorphism: component `c` goes to `perm[c]`, and its
/// vertices are carried over by `maps[c]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
    maps: Vec<VertexMap>,
}

impl DiagramAutomorphism {
    pub fn identity(diagram: &DynkinDiagram) -> Self {
        DiagramAutomorphism {
            perm: (0..diagram.len()).collect(),
            maps: vec![VertexMap::Identity; diagram.len()],
        }
    }

    pub fn new(diagram: &DynkinDiagram, perm: Vec<usize>, maps: Vec<VertexMap>) -> Result<Self> {
        let n = diagram.len();
        if perm.len() != n || maps.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "expected {n} entries, got {} images and {} vertex maps",
                perm.len(),
                maps.len()
            )));
        }
        let mut hit = vec![false; n];
        for (c, &image) in perm.iter().enumerate() {
            if image >= n || std::mem::replace(&mut hit[image], true) {
                return Err(Error::InvalidPermutation(format!(
                    "component {} has an invalid or repeated image",
                    diagram.component(c).id
                )));
            }
            let (src, dst) = (diagram.component(c), diagram.component(image));
            if !src.same_shape(dst) {
                return Err(Error::InvalidPermutation(format!(
                    "{} ({}{}) cannot map to {} ({}{})",
                    src.id, src.family, src.rank, dst.id, dst.family, dst.rank
                )));
            }
            maps[c].check(src.family, src.rank)?;
        }
        Ok(DiagramAutomorphism { perm, maps })
    }

    /// Permutes components along `cycle` with identity vertex maps.
    pub fn cycle(diagram: &DynkinDiagram, cycle: &[usize]) -> Result<Self> {
        let mut perm: Vec<usize> = (0..diagram.len()).collect();
        for (k, &c) in cycle.iter().enumerate() {
            let next = cycle[(k + 1) % cycle.len()];
            if c >= perm.len() {
                return Err(Error::InvalidPermutation(format!("no component {c}")));
            }
            perm[c] = next;
        }
        Self::new(diagram, perm, vec![VertexMap::Identity; diagram.len()])
    }

    /// Fixes every component and applies `map` on component `c`.
    pub fn on_component(diagram: &DynkinDiagram, c: usize, map: VertexMap) -> Result<Self> {
        let mut maps = vec![VertexMap::Identity; diagram.len()];
        maps[c] = map;
        Self::new(diagram, (0..diagram.len()).collect(), maps)
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn vertex_maps(&self) -> &[VertexMap] {
        &self.maps
    }

    pub fn component_image(&self, c: usize) -> usize {
        self.perm[c]
    }

    pub fn vertex_map(&self, c: usize) -> VertexMap {
        self.maps[c]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
            && self.maps.iter().all(|&m| m == VertexMap::Identity)
    }

    pub fn apply(&self, diagram: &DynkinDiagram, v: VertexRef) -> VertexRef {
        let rank = diagram.component(v.component).rank;
        VertexRef::new(self.perm[v.component], self.maps[v.component].apply(rank, v.index))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiagramAutomorphism, diagram: &DynkinDiagram) -> Self {
        let n = self.perm.len();
        let mut perm = Vec::with_capacity(n);
        let mut maps = Vec::with_capacity(n);
        for c in 0..n {
            let mid = other.perm[c];
            let comp = diagram.component(c);
            perm.push(self.perm[mid]);
            maps.push(self.maps[mid].compose(other.maps[c], comp.family, comp.rank));
        }
        DiagramAutomorphism { perm, maps }
    }

    pub fn fixed_components(&self) -> usize {
        self.perm.iter().enumerate().filter(|&(i, &p)| i == p).count()
    }

    /// Cycles of the component permutation, each starting at its smallest
    /// element, ordered by that element.
    pub fn component_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                cycle.push(c);
                c = self.perm[c];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Cycle notation on component ids, e.g. `(1 2 3)(4)`.
    pub fn cycle_notation(&self, diagram: &DynkinDiagram) -> String {
        let mut out = String::new();
        for cycle in self.component_cycles() {
            out.push('(');
            let ids: Vec<&str> = cycle
                .iter()
                .map(|&c| diagram.component(c).id.as_str())
                .collect();
            out.push_str(&ids.join(" "));
            out.push(')');
        }
        out
    }
}

/// A finite group of diagram automorphisms, stored extensionally.
///
/// `elements()[0]` is the identity; the rest follow breadth-first order
/// from the generators, which fixes every "first match" search.
#[derive(Debug, Clone)]
pub struct GaloisAction {
    diagram: DynkinDiagram,
    generators: Vec<DiagramAutomorphism>,
    elements: Vec<DiagramAutomorphism>,
}

impl GaloisAction {
    pub fn generate(gens: Vec<DiagramAutomorphism>, diagram: DynkinDiagram) -> Result<Self> {
        Self::generate_with_bound(gens, diagram, DEFAULT_CLOSURE_BOUND)
    }

    pub fn trivial(diagram: DynkinDiagram) -> Self {
        Self::generate(Vec::new(), diagram).expect("trivial group")
    }

    pub fn generate_with_bound(
        gens: Vec<DiagramAutomorphism>,
        diagram: DynkinDiagram,
        bound: usize,
    ) -> Result<Self> {
        for g in &gens {
            DiagramAutomorphism::new(&diagram, g.perm.clone(), g.maps.clone())?;
        }
        let identity = DiagramAutomorphism::identity(&diagram);
        let mut index: HashMap<DiagramAutomorphism, usize> = HashMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let next = g.compose(&elements[i], &diagram);
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() >= bound {
                    return Err(Error::ClosureBound(bound));
                }
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
        Ok(GaloisAction {
            diagram,
            generators: gens,
            elements,
        })
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn generators(&self) -> &[DiagramAutomorphism] {
        &self.generators
    }

    pub fn elements(&self) -> &[DiagramAutomorphism] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn apply(&self, g: &DiagramAutomorphism, v: VertexRef) -> VertexRef {
        g.apply(&self.diagram, v)
    }

    /// Orbits of components, each sorted, ordered by smallest member.
    pub fn component_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.diagram.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for c in 0..n {
            if orbit_of[c] != usize::MAX {
                continue;
            }
            let mut orbit: Vec<usize> = self.elements.iter().map(|g| g.perm[c]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &m in &orbit {
                orbit_of[m] = orbits.len();
            }
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.component_orbits().len() == 1
    }

    /// Distinct component permutations, in element order.
    pub fn component_image(&self) -> Vec<Vec<usize>> {
        let mut seen = std::collections::HashSet::new();
        self.elements
            .iter()
            .filter(|g| seen.insert(g.perm.clone()))
            .map(|g| g.perm.clone())
            .collect()
    }

    /// Whether the image of the group in the permutations of the components
    /// is generated by one element.
    pub fn is_cyclic_on_components(&self) -> bool {
        let image = self.component_image();
        let target = image.len();
        image.iter().any(|p| permutation_order(p) == target)
    }

    /// First element (in element order) fixing no component.
    pub fn fixed_point_free_element(&self) -> Result<Option<&DiagramAutomorphism>> {
        if self.diagram.len() <= 1 {
            return Err(Error::TooFewComponents);
        }
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        Ok(self.elements.iter().find(|g| g.fixed_components() == 0))
    }

    /// `F(g)` for every element, in element order.
    pub fn fixed_point_counts(&self) -> Vec<usize> {
        self.elements.iter().map(|g| g.fixed_components()).collect()
    }

    pub fn stabilizer(&self, c: usize) -> impl Iterator<Item = &DiagramAutomorphism> {
        self.elements.iter().filter(move |g| g.perm[c] == c)
    }
}

fn permutation_order(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut order = 1usize;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            c = p[c];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

impl fmt::Display for GaloisAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {} on {} components", self.order(), self.diagram.len())
    }
}

/// Seeded random transitive permutation group on the components of an
/// all-`A1` diagram with `points` components.
pub fn random_transitive_action(points: usize, seed: u64) -> GaloisAction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_transitive_action_with(points, &mut rng)
}

pub fn random_transitive_action_with<R: Rng>(points: usize, rng: &mut R) -> GaloisAction {
    let diagram = DynkinDiagram::all_a1(points);
    loop {
        let count = rng.gen_range(1..=3);
        let gens: Vec<DiagramAutomorphism> = (0..count)
            .map(|_| {
                let mut support: Vec<usize> = (0..points).collect();
                support.shuffle(rng);
                if rng.gen_bool(0.5) {
                    let len = rng.gen_range(2.min(points)..=points);
                    support.truncate(len);
                    DiagramAutomorphism::cycle(&diagram, &support)
                } else {
                    DiagramAutomorphism::new(
                        &diagram,
                        support,
                        vec![VertexMap::Identity; points],
                    )
                }
                .expect("A1 permutations are valid")
            })
            .collect();
        let action = GaloisAction::generate(gens, diagram.clone()).expect("bounded by points!");
        if action.is_transitive() {
            return action;
        }
    }
}
