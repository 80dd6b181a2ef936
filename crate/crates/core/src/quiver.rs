//! Finite quivers and their path tables.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bypass::Bypass;
use crate::path::{Direction, Path, Walk};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub(crate) u32);

impl Vertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An arrow, numbered by its rank in the arrow order of its quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow(pub(crate) u32);

impl Arrow {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of a path in the path table of an acyclic quiver.
pub type PathId = usize;

#[derive(Clone, Debug)]
struct ArrowInfo {
    label: String,
    source: Vertex,
    target: Vertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub acyclic: bool,
    pub no_multiple_arrows: bool,
}

#[derive(Clone, Debug, Default)]
pub struct QuiverBuilder {
    vertices: Vec<String>,
    arrows: Vec<(String, String, String)>,
    order: Option<Vec<String>>,
}

impl QuiverBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.add_vertex(id);
        self
    }

    pub fn arrow(
        mut self,
        label: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        self.add_arrow(label, source, target);
        self
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) {
        self.vertices.push(id.into());
    }

    pub fn add_arrow(
        &mut self,
        label: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) {
        self.arrows
            .push((label.into(), source.into(), target.into()));
    }

    /// Declares the arrow order; defaults to listing order.
    pub fn arrow_order<I, S>(&mut self, labels: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.order = Some(labels.into_iter().map(Into::into).collect());
    }

    pub fn build(self) -> Result<Quiver> {
        Quiver::from_builder(self)
    }
}

#[derive(Clone, Debug)]
struct PathTable {
    paths: Vec<Path>,
    index: BTreeMap<Path, PathId>,
    hom: BTreeMap<(Vertex, Vertex), Vec<PathId>>,
    starting: Vec<Vec<PathId>>,
    ending: Vec<Vec<PathId>>,
    /// `p` followed by one more arrow.
    append: Vec<Vec<(Arrow, PathId)>>,
    /// One arrow followed by `p`.
    prepend: Vec<Vec<(Arrow, PathId)>>,
}

/// A finite quiver with a total order on its arrows.
///
/// For acyclic quivers every path, every bypass and the arrow weights are
/// computed once at construction.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertex_names: Vec<String>,
    vertex_index: BTreeMap<String, Vertex>,
    arrows: Vec<ArrowInfo>,
    arrow_index: BTreeMap<String, Arrow>,
    listing: Vec<Arrow>,
    declared_order: bool,
    acyclic: bool,
    multiple_arrows: bool,
    weights: Vec<u32>,
    table: Option<PathTable>,
    bypasses: Vec<Vec<Bypass>>,
}

impl Quiver {
    pub fn builder() -> QuiverBuilder {
        QuiverBuilder::new()
    }

    fn from_builder(b: QuiverBuilder) -> Result<Quiver> {
        let mut vertex_index = BTreeMap::new();
        for (i, v) in b.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), Vertex(i as u32)).is_some() {
                return Err(Error::Structural(format!("duplicate vertex `{v}`")));
            }
        }
        let mut seen = BTreeSet::new();
        for (label, s, t) in &b.arrows {
            if !seen.insert(label.clone()) {
                return Err(Error::Structural(format!(
                    "duplicate arrow label `{label}`"
                )));
            }
            for end in [s, t] {
                if !vertex_index.contains_key(end) {
                    return Err(Error::Structural(format!(
                        "arrow `{label}` has undeclared endpoint `{end}`"
                    )));
                }
            }
        }
        let declared_order = b.order.is_some();
        let order: Vec<String> = match b.order {
            Some(order) => {
                let set: BTreeSet<&String> = order.iter().collect();
                if set.len() != order.len() || set != seen.iter().collect::<BTreeSet<_>>() {
                    return Err(Error::Structural(
                        "arrow order must list every arrow label exactly once".to_string(),
                    ));
                }
                order
            }
            None => b.arrows.iter().map(|(l, _, _)| l.clone()).collect(),
        };
        let by_label: BTreeMap<&String, (&String, &String)> =
            b.arrows.iter().map(|(l, s, t)| (l, (s, t))).collect();
        let mut arrows = Vec::with_capacity(order.len());
        let mut arrow_index = BTreeMap::new();
        for (rank, label) in order.iter().enumerate() {
            let (s, t) = by_label[label];
            arrows.push(ArrowInfo {
                label: label.clone(),
                source: vertex_index[s],
                target: vertex_index[t],
            });
            arrow_index.insert(label.clone(), Arrow(rank as u32));
        }
        let listing = b.arrows.iter().map(|(l, _, _)| arrow_index[l]).collect();

        let mut quiver = Quiver {
            vertex_names: b.vertices,
            vertex_index,
            arrows,
            arrow_index,
            listing,
            declared_order,
            acyclic: false,
            multiple_arrows: false,
            weights: Vec::new(),
            table: None,
            bypasses: Vec::new(),
        };
        quiver.weights = vec![0; quiver.arrows.len()];
        quiver.bypasses = vec![Vec::new(); quiver.arrows.len()];
        let mut ends = BTreeSet::new();
        quiver.multiple_arrows = !quiver
            .arrows
            .iter()
            .all(|a| ends.insert((a.source, a.target)));
        quiver.acyclic = quiver.topological_order().is_some();
        if quiver.acyclic {
            quiver.build_tables();
        }
        Ok(quiver)
    }

    /// Kahn's algorithm; `None` when there is an oriented cycle.
    fn topological_order(&self) -> Option<Vec<Vertex>> {
        let n = self.vertex_names.len();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.target.index()] += 1;
        }
        let mut queue: VecDeque<Vertex> = (0..n)
            .filter(|&v| indegree[v] == 0)
            .map(|v| Vertex(v as u32))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in &self.arrows {
                if a.source == v {
                    indegree[a.target.index()] -= 1;
                    if indegree[a.target.index()] == 0 {
                        queue.push_back(a.target);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    fn build_tables(&mut self) {
        let n = self.vertex_names.len();
        // Raw arrow sequences, grown one arrow at a time.
        let mut raw: Vec<(Vertex, Vertex, Vec<Arrow>)> = (0..n)
            .map(|v| (Vertex(v as u32), Vertex(v as u32), Vec::new()))
            .collect();
        let mut frontier: Vec<usize> = (0..n).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for i in frontier {
                let (s, t, seq) = raw[i].clone();
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == t {
                        let mut seq = seq.clone();
                        seq.push(Arrow(ai as u32));
                        raw.push((s, a.target, seq));
                        next.push(raw.len() - 1);
                    }
                }
            }
            frontier = next;
        }
        raw.sort_by(|x, y| {
            x.2.len()
                .cmp(&y.2.len())
                .then_with(|| x.2.cmp(&y.2))
                .then_with(|| (x.0, x.1).cmp(&(y.0, y.1)))
        });

        for (ai, a) in self.arrows.iter().enumerate() {
            self.weights[ai] = raw
                .iter()
                .filter(|(s, t, seq)| {
                    *s == a.source && *t == a.target && seq.as_slice() != [Arrow(ai as u32)]
                })
                .count() as u32;
        }

        let paths: Vec<Path> = raw
            .into_iter()
            .map(|(s, t, seq)| {
                let w = seq.iter().map(|a| self.weights[a.index()]).sum();
                Path::from_parts(s, t, w, seq)
            })
            .collect();
        let index: BTreeMap<Path, PathId> = paths
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut hom: BTreeMap<(Vertex, Vertex), Vec<PathId>> = BTreeMap::new();
        let mut starting = vec![Vec::new(); n];
        let mut ending = vec![Vec::new(); n];
        for (i, p) in paths.iter().enumerate() {
            hom.entry((p.source(), p.target())).or_default().push(i);
            starting[p.source().index()].push(i);
            ending[p.target().index()].push(i);
        }
        let mut append = vec![Vec::new(); paths.len()];
        let mut prepend = vec![Vec::new(); paths.len()];
        for (i, p) in paths.iter().enumerate() {
            if let Some((&first, rest)) = p.arrows().split_first() {
                let tail_id = self.lookup(&index, self.arrows[first.index()].target, rest);
                prepend[tail_id].push((first, i));
            }
            if let Some((&last, rest)) = p.arrows().split_last() {
                let init_id = self.lookup(&index, p.source(), rest);
                append[init_id].push((last, i));
            }
        }
        self.table = Some(PathTable {
            paths,
            index,
            hom,
            starting,
            ending,
            append,
            prepend,
        });
        for (ai, a) in self.arrows.iter().enumerate() {
            let table = self.table.as_ref().unwrap();
            let mut list: Vec<Bypass> = table.hom[&(a.source, a.target)]
                .iter()
                .map(|&pid| &table.paths[pid])
                .filter(|p| p.arrows() != [Arrow(ai as u32)])
                .map(|p| Bypass::from_parts(Arrow(ai as u32), self.weights[ai], p.clone()))
                .collect();
            list.sort();
            self.bypasses[ai] = list;
        }
    }

    fn raw_path(&self, source: Vertex, arrows: &[Arrow]) -> Path {
        let target = arrows
            .last()
            .map_or(source, |a| self.arrows[a.index()].target);
        let w = arrows.iter().map(|a| self.weights[a.index()]).sum();
        Path::from_parts(source, target, w, arrows.to_vec())
    }

    fn lookup(&self, index: &BTreeMap<Path, PathId>, source: Vertex, arrows: &[Arrow]) -> PathId {
        index[&self.raw_path(source, arrows)]
    }

    // ---- basic accessors -------------------------------------------------

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_names.len()).map(|i| Vertex(i as u32))
    }

    /// Arrows in arrow order.
    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.arrows.len()).map(|i| Arrow(i as u32))
    }

    /// Arrows in the order they were listed at construction.
    pub fn listing_order(&self) -> &[Arrow] {
        &self.listing
    }

    pub fn has_declared_order(&self) -> bool {
        self.declared_order
    }

    pub fn vertex(&self, id: &str) -> Result<Vertex> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow(&self, label: &str) -> Result<Arrow> {
        self.arrow_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(label.to_string()))
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn label(&self, a: Arrow) -> &str {
        &self.arrows[a.index()].label
    }

    pub fn source(&self, a: Arrow) -> Vertex {
        self.arrows[a.index()].source
    }

    pub fn target(&self, a: Arrow) -> Vertex {
        self.arrows[a.index()].target
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            acyclic: self.acyclic,
            no_multiple_arrows: !self.multiple_arrows,
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    pub fn has_multiple_arrows(&self) -> bool {
        self.multiple_arrows
    }

    pub(crate) fn require_acyclic(&self) -> Result<()> {
        if self.acyclic {
            Ok(())
        } else {
            Err(Error::NotAcyclic)
        }
    }

    /// Standing hypothesis of the normal-form machinery.
    pub(crate) fn require_triangular_simple(&self) -> Result<()> {
        self.require_acyclic()?;
        if self.multiple_arrows {
            Err(Error::MultipleArrows)
        } else {
            Ok(())
        }
    }

    /// Number of bypasses of `a`, or 0 on a quiver with an oriented cycle.
    pub fn arrow_weight(&self, a: Arrow) -> u32 {
        self.weights[a.index()]
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        self.undirected_components().len() == 1
    }

    pub(crate) fn undirected_components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = Vec::new();
            let mut stack = vec![start];
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(Vertex(v as u32));
                for a in &self.arrows {
                    for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                        if x.index() == v && comp[y.index()] == usize::MAX {
                            comp[y.index()] = id;
                            stack.push(y.index());
                        }
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    // ---- path construction ----------------------------------------------

    /// The length-one path of an arrow.
    pub fn arrow_path(&self, a: Arrow) -> Path {
        let info = &self.arrows[a.index()];
        Path::from_parts(info.source, info.target, self.weights[a.index()], vec![a])
    }

    /// Builds a nontrivial path from arrows in traversal order.
    pub fn path(&self, arrows: &[Arrow]) -> Result<Path> {
        let (&first, _) = arrows.split_first().ok_or(Error::StationaryPath)?;
        let source = self.source(first);
        self.path_from(source, arrows)
    }

    /// Builds a path starting at `source`; an empty arrow list gives `e_source`.
    pub fn path_from(&self, source: Vertex, arrows: &[Arrow]) -> Result<Path> {
        let mut at = source;
        for &a in arrows {
            if a.index() >= self.arrows.len() {
                return Err(Error::UnknownArrow(format!("#{}", a.index())));
            }
            if self.source(a) != at {
                return Err(Error::NotComposable(format!(
                    "arrow `{}` does not start at `{}`",
                    self.label(a),
                    self.vertex_name(at)
                )));
            }
            at = self.target(a);
        }
        Ok(self.raw_path(source, arrows))
    }

    /// Builds a path from arrow labels in traversal order.
    pub fn path_by_labels(&self, labels: &[&str]) -> Result<Path> {
        let arrows = labels
            .iter()
            .map(|l| self.arrow(l))
            .collect::<Result<Vec<_>>>()?;
        self.path(&arrows)
    }

    /// Subpath of `p` made of the arrows at positions `range` (traversal order).
    pub fn subpath(&self, p: &Path, range: core::ops::Range<usize>) -> Path {
        let start = if range.start == 0 {
            p.source()
        } else {
            self.target(p.arrows()[range.start - 1])
        };
        self.raw_path(start, &p.arrows()[range])
    }

    pub fn walk(&self, source: Vertex, letters: &[(Arrow, Direction)]) -> Result<Walk> {
        let mut at = source;
        for &(a, d) in letters {
            let (from, to) = match d {
                Direction::Forward => (self.source(a), self.target(a)),
                Direction::Inverse => (self.target(a), self.source(a)),
            };
            if from != at {
                return Err(Error::NotComposable(format!(
                    "letter `{}` does not start at `{}`",
                    self.label(a),
                    self.vertex_name(at)
                )));
            }
            at = to;
        }
        Ok(Walk::from_parts(source, at, letters.to_vec()))
    }

    // ---- enumeration ----------------------------------------------------

    fn table(&self) -> Result<&PathTable> {
        self.table.as_ref().ok_or(Error::NotAcyclic)
    }

    /// Every path (stationary ones included), ordered by length then by arrow order.
    pub fn enumerate_paths(&self) -> Result<BTreeMap<(Vertex, Vertex), Vec<Path>>> {
        let t = self.table()?;
        Ok(t.hom
            .iter()
            .map(|(k, ids)| (*k, ids.iter().map(|&i| t.paths[i].clone()).collect()))
            .collect())
    }

    /// Paths from `x` to `y`, stationary included when `x == y`.
    pub fn hom(&self, x: Vertex, y: Vertex) -> Result<Vec<Path>> {
        let t = self.table()?;
        Ok(t.hom
            .get(&(x, y))
            .map(|ids| ids.iter().map(|&i| t.paths[i].clone()).collect())
            .unwrap_or_default())
    }

    /// Nontrivial paths from `x` to `y`.
    pub fn nontrivial_hom(&self, x: Vertex, y: Vertex) -> Result<Vec<Path>> {
        Ok(self
            .hom(x, y)?
            .into_iter()
            .filter(|p| !p.is_stationary())
            .collect())
    }

    /// Pairs `(x, y)` with at least one path, in vertex order.
    pub fn hom_keys(&self) -> Result<Vec<(Vertex, Vertex)>> {
        Ok(self.table()?.hom.keys().copied().collect())
    }

    pub fn path_count(&self) -> Result<usize> {
        Ok(self.table()?.paths.len())
    }

    pub fn path_by_id(&self, id: PathId) -> Result<&Path> {
        self.table()?
            .paths
            .get(id)
            .ok_or_else(|| Error::Internal(format!("no path #{id}")))
    }

    pub fn path_id(&self, p: &Path) -> Result<PathId> {
        self.table()?
            .index
            .get(p)
            .copied()
            .ok_or_else(|| Error::Internal("path does not belong to this quiver".into()))
    }

    /// Paths starting at `v` (including `e_v`).
    pub fn paths_from(&self, v: Vertex) -> Result<Vec<Path>> {
        let t = self.table()?;
        Ok(t.starting[v.index()]
            .iter()
            .map(|&i| t.paths[i].clone())
            .collect())
    }

    /// Paths ending at `v` (including `e_v`).
    pub fn paths_to(&self, v: Vertex) -> Result<Vec<Path>> {
        let t = self.table()?;
        Ok(t.ending[v.index()]
            .iter()
            .map(|&i| t.paths[i].clone())
            .collect())
    }

    pub(crate) fn appended(&self, id: PathId) -> Result<&[(Arrow, PathId)]> {
        Ok(&self.table()?.append[id])
    }

    pub(crate) fn prepended(&self, id: PathId) -> Result<&[(Arrow, PathId)]> {
        Ok(&self.table()?.prepend[id])
    }

    // ---- bypasses -------------------------------------------------------

    /// All bypasses `(α, u)` with `α = arrow`, in increasing order.
    pub fn bypasses_of(&self, arrow: Arrow) -> Result<&[Bypass]> {
        self.require_acyclic()?;
        Ok(&self.bypasses[arrow.index()])
    }

    /// All bypasses of the quiver, in increasing order.
    pub fn bypasses(&self) -> Result<Vec<Bypass>> {
        self.require_acyclic()?;
        let mut all: Vec<Bypass> = self.bypasses.iter().flatten().cloned().collect();
        all.sort();
        Ok(all)
    }

    pub fn bypass(&self, arrow: Arrow, path: Path) -> Result<Bypass> {
        if !path.is_parallel_to(&self.arrow_path(arrow)) || path.arrows() == [arrow] {
            return Err(Error::NotABypass(format!(
                "({}, {})",
                self.label(arrow),
                self.written(&path)
            )));
        }
        Ok(Bypass::from_parts(arrow, self.weights[arrow.index()], path))
    }

    // ---- rendering ------------------------------------------------------

    /// Written notation: arrow labels right to left (`gfec`), `e_x` for stationary paths.
    /// Multi-character labels are separated by dots.
    pub fn written(&self, p: &Path) -> String {
        if p.is_stationary() {
            return format!("e_{}", self.vertex_name(p.source()));
        }
        let sep = if self.arrows.iter().all(|a| a.label.chars().count() == 1) {
            ""
        } else {
            "."
        };
        let labels: Vec<&str> = p.arrows().iter().rev().map(|&a| self.label(a)).collect();
        labels.join(sep)
    }

    /// File notation: labels in traversal order separated by spaces.
    pub fn traversal(&self, p: &Path) -> String {
        let labels: Vec<&str> = p.arrows().iter().map(|&a| self.label(a)).collect();
        labels.join(" ")
    }
}
