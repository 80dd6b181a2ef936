//! Homotopy relations of presentations and fundamental groups.
//!
//! A homotopy relation is represented by the set of parallel path pairs it
//! identifies. Starting from seed pairs, the closure is the smallest
//! equivalence on paths that is stable under concatenation with an arrow on
//! either side and under cancellation of a common first or last arrow.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::Scalar;
use crate::automorphism::ArrowSubstitution;
use crate::bypass::Bypass;
use crate::group::{GroupPresentation, Letter, Word};
use crate::ideal::AdmissibleIdeal;
use crate::path::Path;
use crate::quiver::{Arrow, Quiver, Vertex};
use crate::{Error, Result};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (a, b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        true
    }
}

/// A homotopy relation: seed pairs and the canonical classes of their closure.
#[derive(Clone, Debug)]
pub struct HomotopyRelation {
    seeds: Vec<(Path, Path)>,
    classes: Vec<Vec<Path>>,
}

impl PartialEq for HomotopyRelation {
    fn eq(&self, other: &Self) -> bool {
        self.classes == other.classes
    }
}

impl Eq for HomotopyRelation {}

impl PartialOrd for HomotopyRelation {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HomotopyRelation {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.classes.cmp(&other.classes)
    }
}

impl HomotopyRelation {
    /// The closure of `seeds`.
    pub fn closure(q: &Quiver, seeds: Vec<(Path, Path)>) -> Result<Self> {
        q.require_acyclic()?;
        let n = q.path_count()?;
        let mut uf = UnionFind::new(n);
        for (u, v) in &seeds {
            if !u.is_parallel_to(v) {
                return Err(Error::NotParallel);
            }
            uf.union(q.path_id(u)?, q.path_id(v)?);
        }
        loop {
            let mut changed = false;
            // Concatenation: p ~ p' implies p·a ~ p'·a and a·p ~ a·p'.
            // Cancellation: p·a ~ p'·a implies p ~ p', and likewise on the left.
            for pass in 0..4 {
                let mut seen: BTreeMap<(usize, Arrow), usize> = BTreeMap::new();
                for p in 0..n {
                    let edges = if pass % 2 == 0 {
                        q.appended(p)?
                    } else {
                        q.prepended(p)?
                    };
                    for &(a, longer) in edges {
                        let (key_of, value) = if pass < 2 { (p, longer) } else { (longer, p) };
                        let key = (uf.find(key_of), a);
                        match seen.get(&key) {
                            Some(&other) => changed |= uf.union(other, value),
                            None => {
                                seen.insert(key, value);
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut groups: BTreeMap<usize, Vec<Path>> = BTreeMap::new();
        for id in 0..n {
            let root = uf.find(id);
            groups
                .entry(root)
                .or_default()
                .push(q.path_by_id(id)?.clone());
        }
        let mut classes: Vec<Vec<Path>> = groups.into_values().filter(|c| c.len() > 1).collect();
        for c in &mut classes {
            c.sort();
        }
        classes.sort();
        Ok(HomotopyRelation { seeds, classes })
    }

    /// `∼_I`, seeded by the supports of the minimal relations of `I`.
    pub fn of_ideal(q: &Quiver, ideal: &AdmissibleIdeal) -> Result<Self> {
        if !q.is_connected() {
            return Err(Error::Disconnected);
        }
        Self::closure(q, ideal.relation_pairs())
    }

    /// The relation generated by `self` and `u ~ v`.
    pub fn with_pair(&self, q: &Quiver, u: &Path, v: &Path) -> Result<Self> {
        let mut seeds = self.seeds.clone();
        seeds.push((u.clone(), v.clone()));
        Self::closure(q, seeds)
    }

    pub fn seeds(&self) -> &[(Path, Path)] {
        &self.seeds
    }

    /// Classes with at least two paths, each sorted, in sorted order.
    pub fn classes(&self) -> &[Vec<Path>] {
        &self.classes
    }

    /// Every identified unordered pair `(smaller, larger)`.
    pub fn pairs(&self) -> Vec<(Path, Path)> {
        let mut out = Vec::new();
        for c in &self.classes {
            for (i, u) in c.iter().enumerate() {
                for v in &c[i + 1..] {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn related(&self, u: &Path, v: &Path) -> bool {
        u == v || self.classes.iter().any(|c| c.contains(u) && c.contains(v))
    }

    /// Whether every pair identified by `self` is identified by `other`.
    pub fn is_weaker_than(&self, other: &HomotopyRelation) -> bool {
        self.classes.iter().all(|c| {
            other
                .classes
                .iter()
                .any(|d| c.iter().all(|p| d.contains(p)))
        })
    }

    pub fn display(&self, q: &Quiver) -> String {
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                let names: Vec<String> = c.iter().map(|p| q.written(p)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        if parts.is_empty() {
            "{}".into()
        } else {
            parts.join(" ")
        }
    }

    /// π₁ at `basepoint`: generators are the arrows outside a breadth-first
    /// spanning tree, relators come from the seed pairs.
    pub fn fundamental_group(&self, q: &Quiver, basepoint: Vertex) -> Result<GroupPresentation> {
        let tree = SpanningTree::new(q, basepoint)?;
        let relators = self
            .seeds
            .iter()
            .map(|(u, v)| tree.word(u).concat(&tree.word(v).inverse()))
            .collect();
        Ok(GroupPresentation::new(tree.generator_names(q), relators))
    }
}

/// Breadth-first spanning tree over arrows in arrow order, ignoring orientation.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    tree: Vec<Arrow>,
    generators: Vec<Arrow>,
}

impl SpanningTree {
    pub fn new(q: &Quiver, basepoint: Vertex) -> Result<Self> {
        if !q.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut visited = vec![false; q.vertex_count()];
        let mut in_tree = vec![false; q.arrow_count()];
        let mut queue = VecDeque::from([basepoint]);
        visited[basepoint.index()] = true;
        while let Some(x) = queue.pop_front() {
            for a in q.arrows() {
                let other = if q.source(a) == x {
                    q.target(a)
                } else if q.target(a) == x {
                    q.source(a)
                } else {
                    continue;
                };
                if !visited[other.index()] {
                    visited[other.index()] = true;
                    in_tree[a.index()] = true;
                    queue.push_back(other);
                }
            }
        }
        Ok(SpanningTree {
            tree: q.arrows().filter(|a| in_tree[a.index()]).collect(),
            generators: q.arrows().filter(|a| !in_tree[a.index()]).collect(),
        })
    }

    pub fn tree_arrows(&self) -> &[Arrow] {
        &self.tree
    }

    pub fn generator_arrows(&self) -> &[Arrow] {
        &self.generators
    }

    pub fn generator_names(&self, q: &Quiver) -> Vec<String> {
        self.generators.iter().map(|&a| q.label(a).into()).collect()
    }

    /// The non-tree letters of a path.
    pub fn word(&self, p: &Path) -> Word {
        Word(
            p.arrows()
                .iter()
                .filter_map(|a| self.generators.iter().position(|g| g == a))
                .map(|g| Letter::new(g, false))
                .collect(),
        )
    }
}

/// How `∼_J` compares with `∼_I` for `J = φ_{α,u,τ}(I)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuccessorCase {
    /// `J = I`.
    Fixed,
    /// `∼_I` and `∼_J` coincide.
    Coincide,
    /// `∼_J` is a direct successor of `∼_I`.
    Successor,
    /// `∼_I` is a direct successor of `∼_J` (through the inverse transvection).
    Predecessor,
}

/// A classified transvection step.
#[derive(Clone, Debug)]
pub struct SuccessorStep {
    pub case: SuccessorCase,
    pub image: AdmissibleIdeal,
    pub relation: HomotopyRelation,
}

/// Classifies `J = φ_{α,u,τ}(I)` against `I`, with `h = ∼_I` precomputed.
///
/// Successor and predecessor steps are cross-checked against the generation
/// identity `∼_J = ⟨∼_I, α ~ u⟩` (respectively with `I` and `J` swapped).
pub fn classify_step(
    q: &Quiver,
    ideal: &AdmissibleIdeal,
    h: &HomotopyRelation,
    bypass: &Bypass,
    tau: &Scalar,
) -> Result<SuccessorStep> {
    let alpha = q.arrow_path(bypass.arrow());
    let u = bypass.path();
    let image = ideal.image(q, &ArrowSubstitution::transvection(q, bypass, tau))?;
    if tau.is_zero() || image == *ideal {
        return Ok(SuccessorStep {
            case: SuccessorCase::Fixed,
            image,
            relation: h.clone(),
        });
    }
    let relation = HomotopyRelation::of_ideal(q, &image)?;
    let (before, after) = (h.related(&alpha, u), relation.related(&alpha, u));
    let label = || format!("({},{})", q.label(bypass.arrow()), q.written(u));
    let case = match (before, after) {
        (true, true) => {
            if relation != *h {
                return Err(Error::Internal(format!(
                    "relations differ although both identify {}",
                    label()
                )));
            }
            SuccessorCase::Coincide
        }
        (false, true) => {
            if h.with_pair(q, &alpha, u)? != relation {
                return Err(Error::Internal(format!(
                    "successor through {} is not generated by the previous relation",
                    label()
                )));
            }
            SuccessorCase::Successor
        }
        (true, false) => {
            if relation.with_pair(q, &alpha, u)? != *h {
                return Err(Error::Internal(format!(
                    "predecessor through {} is not generated by the image relation",
                    label()
                )));
            }
            SuccessorCase::Predecessor
        }
        (false, false) => {
            return Err(Error::Internal(format!(
                "{} changes the ideal without identifying its paths",
                label()
            )))
        }
    };
    Ok(SuccessorStep {
        case,
        image,
        relation,
    })
}

/// [`classify_step`] with `∼_I` computed from `I`.
pub fn direct_successor_case(
    q: &Quiver,
    ideal: &AdmissibleIdeal,
    bypass: &Bypass,
    tau: &Scalar,
) -> Result<SuccessorStep> {
    let h = HomotopyRelation::of_ideal(q, ideal)?;
    classify_step(q, ideal, &h, bypass, tau)
}

/// The identity-on-generators map `π₁(Q, from) ↠ π₁(Q, to)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectionWitness {
    pub basepoint: Vertex,
    pub source: GroupPresentation,
    pub target: GroupPresentation,
    /// Image of each source generator (same index in the target).
    pub generator_images: Vec<(String, String)>,
}

/// Checks that `from` is weaker than `to`; every source relator then comes
/// from a pair identified by `to`, so the identity on generators is well
/// defined, and it is onto because both groups share their generators.
pub fn surjection_witness(
    q: &Quiver,
    from: &HomotopyRelation,
    to: &HomotopyRelation,
    basepoint: Vertex,
) -> Result<SurjectionWitness> {
    if let Some((u, v)) = from.seeds().iter().find(|(u, v)| !to.related(u, v)) {
        return Err(Error::NotComparable(format!(
            "`{}` and `{}` are not identified by the target relation",
            q.written(u),
            q.written(v)
        )));
    }
    if !from.is_weaker_than(to) {
        return Err(Error::NotComparable(
            "closure is not contained in the target relation".into(),
        ));
    }
    let source = from.fundamental_group(q, basepoint)?;
    let target = to.fundamental_group(q, basepoint)?;
    let generator_images = source
        .generators()
        .iter()
        .map(|g| (g.clone(), g.clone()))
        .collect();
    Ok(SurjectionWitness {
        basepoint,
        source,
        target,
        generator_images,
    })
}
