//! The quiver Γ of homotopy relations reachable from a monomial presentation,
//! realization of canonical automorphisms as paths in Γ, and universal-cover
//! certificates.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_traits::One;

use crate::algebra::Scalar;
use crate::automorphism::{ArrowSubstitution, DecreasingProduct};
use crate::bypass::Bypass;
use crate::group::{AbelianInvariants, GroupPresentation, Word};
use crate::homotopy::{
    classify_step, surjection_witness, HomotopyRelation, SuccessorCase, SurjectionWitness,
};
use crate::ideal::AdmissibleIdeal;
use crate::quiver::{Quiver, Vertex};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct GammaOptions {
    /// Scalars `τ` tried for every bypass.
    pub probes: Vec<Scalar>,
    /// Ideals kept per node.
    pub representative_cap: usize,
    pub node_cap: usize,
    /// Further presentations explored besides the monomial one.
    pub extra_roots: Vec<AdmissibleIdeal>,
    /// Basepoint for fundamental groups; defaults to the first vertex.
    pub basepoint: Option<Vertex>,
}

impl Default for GammaOptions {
    fn default() -> Self {
        GammaOptions {
            probes: vec![Scalar::one()],
            representative_cap: 4,
            node_cap: 512,
            extra_roots: Vec::new(),
            basepoint: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GammaNode {
    pub relation: HomotopyRelation,
    pub representatives: Vec<AdmissibleIdeal>,
    /// Longest-path distance from the node of the monomial presentation.
    pub depth: Option<usize>,
    pub fundamental_group: GroupPresentation,
    pub invariants: AbelianInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaEdge {
    pub from: usize,
    pub to: usize,
    /// A transvection `φ_{α,u,τ}` realizing the edge, applied to a
    /// representative of `from` (or inverted, applied to one of `to`).
    pub bypass: Bypass,
    pub scalar: Scalar,
}

/// The explored part of Γ. Node 0 is the monomial presentation.
#[derive(Clone, Debug)]
pub struct GammaGraph {
    pub nodes: Vec<GammaNode>,
    pub edges: Vec<GammaEdge>,
    pub basepoint: Vertex,
    /// Every relation of a presentation conjugate to the root is present.
    /// False with multiple arrows or extra roots, where only the reachable
    /// subgraph is known.
    pub complete: bool,
}

struct Explorer<'a> {
    q: &'a Quiver,
    options: &'a GammaOptions,
    index: BTreeMap<HomotopyRelation, usize>,
    relations: Vec<HomotopyRelation>,
    reps: Vec<Vec<AdmissibleIdeal>>,
    edges: Vec<GammaEdge>,
    queue: VecDeque<(usize, usize)>,
}

impl Explorer<'_> {
    fn node(&mut self, relation: HomotopyRelation) -> Result<usize> {
        if let Some(&i) = self.index.get(&relation) {
            return Ok(i);
        }
        if self.relations.len() == self.options.node_cap {
            return Err(Error::Capacity {
                what: "nodes of the quiver of homotopy relations",
                limit: self.options.node_cap,
            });
        }
        let i = self.relations.len();
        self.index.insert(relation.clone(), i);
        self.relations.push(relation);
        self.reps.push(Vec::new());
        Ok(i)
    }

    fn add_representative(&mut self, node: usize, ideal: AdmissibleIdeal) {
        let reps = &mut self.reps[node];
        if reps.len() < self.options.representative_cap.max(1) && !reps.contains(&ideal) {
            reps.push(ideal);
            self.queue.push_back((node, reps.len() - 1));
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, bypass: &Bypass, scalar: &Scalar) {
        if !self.edges.iter().any(|e| e.from == from && e.to == to) {
            self.edges.push(GammaEdge {
                from,
                to,
                bypass: bypass.clone(),
                scalar: scalar.clone(),
            });
        }
    }

    fn root(&mut self, ideal: &AdmissibleIdeal) -> Result<()> {
        let h = HomotopyRelation::of_ideal(self.q, ideal)?;
        let node = self.node(h)?;
        self.add_representative(node, ideal.clone());
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        let bypasses = self.q.bypasses()?;
        while let Some((node, rep)) = self.queue.pop_front() {
            let ideal = self.reps[node][rep].clone();
            let h = self.relations[node].clone();
            for b in &bypasses {
                for tau in &self.options.probes {
                    let step = classify_step(self.q, &ideal, &h, b, tau)?;
                    match step.case {
                        SuccessorCase::Fixed => {}
                        SuccessorCase::Coincide => self.add_representative(node, step.image),
                        SuccessorCase::Successor => {
                            let next = self.node(step.relation)?;
                            self.add_edge(node, next, b, tau);
                            self.add_representative(next, step.image);
                        }
                        SuccessorCase::Predecessor => {
                            let prev = self.node(step.relation)?;
                            self.add_edge(prev, node, b, &-tau.clone());
                            self.add_representative(prev, step.image);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl GammaGraph {
    /// Breadth-first exploration from `∼_{I₀}` (and any extra roots) through
    /// transvection steps.
    pub fn build(q: &Quiver, i0: &AdmissibleIdeal, options: &GammaOptions) -> Result<GammaGraph> {
        q.require_acyclic()?;
        if !q.is_connected() {
            return Err(Error::Disconnected);
        }
        i0.require_monomial()?;
        let basepoint = match options.basepoint {
            Some(v) => v,
            None => q.vertices().next().ok_or(Error::Disconnected)?,
        };
        let mut explorer = Explorer {
            q,
            options,
            index: BTreeMap::new(),
            relations: Vec::new(),
            reps: Vec::new(),
            edges: Vec::new(),
            queue: VecDeque::new(),
        };
        explorer.root(i0)?;
        for extra in &options.extra_roots {
            explorer.root(extra)?;
        }
        explorer.run()?;
        let Explorer {
            relations,
            reps,
            mut edges,
            ..
        } = explorer;
        edges.sort_by_key(|e| (e.from, e.to));

        let order = topological_order(relations.len(), &edges).ok_or_else(|| {
            Error::Internal("the explored quiver of homotopy relations has a cycle".into())
        })?;
        let mut depth: Vec<Option<usize>> = vec![None; relations.len()];
        depth[0] = Some(0);
        for &n in &order {
            let Some(d) = depth[n] else { continue };
            for e in edges.iter().filter(|e| e.from == n) {
                if depth[e.to].is_none_or(|x| x < d + 1) {
                    depth[e.to] = Some(d + 1);
                }
            }
        }
        let mut nodes = Vec::with_capacity(relations.len());
        for ((relation, representatives), depth) in relations.into_iter().zip(reps).zip(depth) {
            let fundamental_group = relation.fundamental_group(q, basepoint)?;
            let invariants = fundamental_group.abelian_invariants();
            nodes.push(GammaNode {
                relation,
                representatives,
                depth,
                fundamental_group,
                invariants,
            });
        }
        Ok(GammaGraph {
            nodes,
            edges,
            basepoint,
            complete: !q.has_multiple_arrows() && options.extra_roots.is_empty(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn in_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.to == node).count()
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.from == node).count()
    }

    /// Nodes without incoming edges.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&n| self.in_degree(n) == 0)
            .collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&n| self.out_degree(n) == 0)
            .collect()
    }

    /// Whether `∼_{I₀}` is the only source.
    pub fn has_unique_source(&self) -> bool {
        self.sources() == [0]
    }

    pub fn is_acyclic(&self) -> bool {
        topological_order(self.nodes.len(), &self.edges).is_some()
    }

    pub fn find(&self, relation: &HomotopyRelation) -> Option<usize> {
        self.nodes.iter().position(|n| n.relation == *relation)
    }

    /// Node counts by depth, when every node has a depth.
    pub fn layers(&self) -> Option<Vec<usize>> {
        let mut layers = Vec::new();
        for n in &self.nodes {
            let d = n.depth?;
            if layers.len() <= d {
                layers.resize(d + 1, 0);
            }
            layers[d] += 1;
        }
        Some(layers)
    }

    pub fn export_dot(&self, q: &Quiver) -> String {
        let mut out = String::from("digraph gamma {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let torsion: Vec<String> = n
                .invariants
                .torsion
                .iter()
                .map(|t| format!("{t}"))
                .collect();
            let rep = n
                .representatives
                .first()
                .map(|r| r.display(q))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "  n{i} [label=\"rank {} torsion [{}]\\n{}\"];",
                n.invariants.free_rank,
                torsion.join(","),
                rep
            );
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"({},{})\"];",
                e.from,
                e.to,
                q.label(e.bypass.arrow()),
                q.written(e.bypass.path())
            );
        }
        out.push_str("}\n");
        out
    }
}

fn topological_order(n: usize, edges: &[GammaEdge]) -> Option<Vec<usize>> {
    let mut indegree = vec![0usize; n];
    for e in edges {
        indegree[e.to] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for e in edges.iter().filter(|e| e.from == x) {
            indegree[e.to] -= 1;
            if indegree[e.to] == 0 {
                queue.push_back(e.to);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// The intermediate presentations `Iᵢ = φᵢ(Iᵢ₋₁)` of a canonical automorphism.
#[derive(Clone, Debug)]
pub struct RealizedPath {
    pub ideals: Vec<AdmissibleIdeal>,
    pub relations: Vec<HomotopyRelation>,
    /// How each factor moves in Γ: `Coincide` or `Successor`.
    pub steps: Vec<SuccessorCase>,
}

impl RealizedPath {
    /// Number of actual edges along the path.
    pub fn length(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| **s == SuccessorCase::Successor)
            .count()
    }
}

/// Follows the factors of `psi` (the canonical automorphism of its image)
/// from `I₀`, asserting `uᵢ ∼_{Iᵢ} αᵢ` at every step.
pub fn realize_path(
    q: &Quiver,
    i0: &AdmissibleIdeal,
    psi: &DecreasingProduct,
) -> Result<RealizedPath> {
    q.require_triangular_simple()?;
    for t in psi.factors() {
        if i0.preserved_by(q, &t.bypass)? {
            return Err(Error::Precondition(format!(
                "factor {} fixes the monomial ideal",
                t.display(q)
            )));
        }
    }
    let mut ideals = vec![i0.clone()];
    let mut relations = vec![HomotopyRelation::of_ideal(q, i0)?];
    let mut steps = Vec::new();
    for (i, t) in psi.factors().iter().enumerate() {
        let prev = ideals.last().expect("nonempty");
        let h = relations.last().expect("nonempty");
        let step = classify_step(q, prev, h, &t.bypass, &t.scalar)?;
        let alpha = q.arrow_path(t.bypass.arrow());
        if !step.relation.related(&alpha, t.bypass.path()) {
            return Err(Error::Internal(format!(
                "step {} of {}: {} is not identified with its arrow in {}",
                i + 1,
                psi.display(q),
                t.display(q),
                step.image.display(q)
            )));
        }
        if !matches!(
            step.case,
            SuccessorCase::Coincide | SuccessorCase::Successor
        ) {
            return Err(Error::Internal(format!(
                "step {} of {} is classified as {:?}",
                i + 1,
                psi.display(q),
                step.case
            )));
        }
        steps.push(step.case);
        ideals.push(step.image);
        relations.push(step.relation);
    }
    Ok(RealizedPath {
        ideals,
        relations,
        steps,
    })
}

#[derive(Clone, Debug)]
pub struct UniversalCoverCertificate {
    pub target: AdmissibleIdeal,
    pub psi: DecreasingProduct,
    pub path: RealizedPath,
    pub surjection: SurjectionWitness,
    /// Relators of the target presentation; they normally generate the kernel
    /// of `π₁(Q) ↠ π₁(Q, I)`.
    pub kernel_generators: Vec<Word>,
}

/// Canonical automorphism, its path in Γ and the surjection of fundamental groups,
/// each re-verified.
pub fn certify_universal(
    q: &Quiver,
    i0: &AdmissibleIdeal,
    target: &AdmissibleIdeal,
    seed: &ArrowSubstitution,
) -> Result<UniversalCoverCertificate> {
    let psi = i0
        .canonical_automorphism(q, target, seed)
        .map_err(|e| e.at("canonical automorphism"))?;
    let path =
        realize_path(q, i0, &psi).map_err(|e| e.at("path in the quiver of homotopy relations"))?;
    if path.ideals.last() != Some(target) {
        return Err(
            Error::Internal("realized path does not end at the target".into())
                .at("path in the quiver of homotopy relations"),
        );
    }
    let basepoint = q.vertices().next().ok_or(Error::Disconnected)?;
    let start = path.relations.first().expect("nonempty");
    let end = path.relations.last().expect("nonempty");
    let surjection =
        surjection_witness(q, start, end, basepoint).map_err(|e| e.at("surjection"))?;
    if !surjection.source.is_certified_free() {
        return Err(Error::Internal("monomial presentation has relators".into()).at("surjection"));
    }
    let kernel_generators = surjection.target.relators().to_vec();
    Ok(UniversalCoverCertificate {
        target: target.clone(),
        psi,
        path,
        surjection,
        kernel_generators,
    })
}
