//! Admissible ideals stored as per-hom-space subspaces with reduced bases.
//!
//! Each hom-space component of an ideal keeps its unique reduced echelon
//! basis for the path order: every element has leading coefficient 1 at its
//! largest support path, and no leading path occurs in another element.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{PathVector, Scalar, DEFAULT_SUBEXPRESSION_CAP};
use crate::automorphism::{
    decreasing_normal_form, ArrowSubstitution, DecreasingProduct, Transvection,
};
use crate::bypass::Bypass;
use crate::path::Path;
use crate::quiver::{Quiver, Vertex};
use crate::{Error, Result};

/// Reduced echelon basis of a space of parallel combinations, keyed by leading path.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Subspace {
    basis: BTreeMap<Path, PathVector>,
}

impl Subspace {
    fn reduce(&self, v: &PathVector) -> PathVector {
        let mut out = v.clone();
        for (lead, element) in &self.basis {
            let c = v.coefficient(lead);
            if !c.is_zero() {
                out.add_scaled(&-c, element).expect("parallel");
            }
        }
        out
    }

    fn insert(&mut self, v: &PathVector) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.leading() else {
            return false;
        };
        let lead = lead.clone();
        let r = r.scale(&c.recip());
        for element in self.basis.values_mut() {
            let d = element.coefficient(&lead);
            if !d.is_zero() {
                element.add_scaled(&-d, &r).expect("parallel");
            }
        }
        self.basis.insert(lead, r);
        true
    }
}

/// A two-sided ideal of the path algebra inside the span of paths of length at least two.
#[derive(Clone, Debug)]
pub struct AdmissibleIdeal {
    generators: Vec<PathVector>,
    spaces: BTreeMap<(Vertex, Vertex), Subspace>,
}

impl PartialEq for AdmissibleIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.spaces == other.spaces
    }
}

impl Eq for AdmissibleIdeal {}

/// A nonzero element of an ideal none of whose proper nonzero subexpressions lies in the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalRelation {
    relation: PathVector,
}

impl MinimalRelation {
    pub fn relation(&self) -> &PathVector {
        &self.relation
    }

    pub fn is_monomial(&self) -> bool {
        self.relation.is_monomial()
    }
}

/// Outcome of [`AdmissibleIdeal::find_seed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedSearch {
    Found(ArrowSubstitution),
    NotConjugate(String),
    Inconclusive(String),
}

fn check_admissible(q: &Quiver, r: &PathVector) -> Result<()> {
    if let Some((p, _)) = r.terms().find(|(p, _)| p.len() < 2) {
        return Err(Error::NotAdmissible(format!(
            "`{}` has a term of length at most one",
            q.written(p)
        )));
    }
    Ok(())
}

impl AdmissibleIdeal {
    pub fn zero() -> Self {
        AdmissibleIdeal {
            generators: Vec::new(),
            spaces: BTreeMap::new(),
        }
    }

    /// The ideal generated by `gens`: the span of all `w · g · w'`.
    pub fn from_generators(q: &Quiver, gens: Vec<PathVector>) -> Result<Self> {
        q.require_acyclic()?;
        for g in &gens {
            check_admissible(q, g)?;
        }
        let mut ideal = AdmissibleIdeal {
            generators: Vec::new(),
            spaces: BTreeMap::new(),
        };
        for g in &gens {
            for before in q.paths_to(g.source())? {
                for after in q.paths_from(g.target())? {
                    ideal.insert(&g.extend(&before, &after)?);
                }
            }
        }
        ideal.generators = gens;
        Ok(ideal)
    }

    /// The span of `elements`, which must already be closed under concatenation.
    fn from_closed_span(
        q: &Quiver,
        generators: Vec<PathVector>,
        elements: &[PathVector],
    ) -> Result<Self> {
        let mut ideal = AdmissibleIdeal {
            generators,
            spaces: BTreeMap::new(),
        };
        for r in elements {
            check_admissible(q, r)?;
            ideal.insert(r);
        }
        Ok(ideal)
    }

    fn insert(&mut self, r: &PathVector) {
        if r.is_zero() {
            return;
        }
        self.spaces
            .entry((r.source(), r.target()))
            .or_default()
            .insert(r);
    }

    pub fn generators(&self) -> &[PathVector] {
        &self.generators
    }

    /// `ψ(I)`, spanned by the images of the basis elements.
    pub fn image(&self, q: &Quiver, psi: &ArrowSubstitution) -> Result<AdmissibleIdeal> {
        let gens = self.generators.iter().map(|g| psi.apply(g)).collect();
        let images: Vec<PathVector> = self.groebner_basis().map(|r| psi.apply(r)).collect();
        Self::from_closed_span(q, gens, &images)
    }

    /// Reduced basis elements, by hom-space then increasing leading path.
    pub fn groebner_basis(&self) -> impl Iterator<Item = &PathVector> + '_ {
        self.spaces.values().flat_map(|s| s.basis.values())
    }

    /// Reduced basis of the component from `x` to `y`.
    pub fn component(&self, x: Vertex, y: Vertex) -> Vec<&PathVector> {
        self.spaces
            .get(&(x, y))
            .map(|s| s.basis.values().collect())
            .unwrap_or_default()
    }

    /// Hom-space endpoints with a nonzero component.
    pub fn support_keys(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.spaces
            .iter()
            .filter(|(_, s)| !s.basis.is_empty())
            .map(|(k, _)| *k)
    }

    pub fn dimension(&self, x: Vertex, y: Vertex) -> usize {
        self.spaces.get(&(x, y)).map_or(0, |s| s.basis.len())
    }

    pub fn dimensions(&self) -> BTreeMap<(Vertex, Vertex), usize> {
        self.spaces
            .iter()
            .filter(|(_, s)| !s.basis.is_empty())
            .map(|(k, s)| (*k, s.basis.len()))
            .collect()
    }

    pub fn total_dimension(&self) -> usize {
        self.spaces.values().map(|s| s.basis.len()).sum()
    }

    /// `r` minus its projection on the ideal along the leading paths.
    pub fn reduce(&self, r: &PathVector) -> PathVector {
        match self.spaces.get(&(r.source(), r.target())) {
            Some(s) => s.reduce(r),
            None => r.clone(),
        }
    }

    pub fn contains(&self, r: &PathVector) -> bool {
        self.reduce(r).is_zero()
    }

    /// Coordinates of `r` on the reduced basis, indexed by leading path, when `r ∈ I`.
    pub fn coordinates(&self, r: &PathVector) -> Option<Vec<(Path, Scalar)>> {
        if !self.contains(r) {
            return None;
        }
        let Some(space) = self.spaces.get(&(r.source(), r.target())) else {
            return Some(Vec::new());
        };
        Some(
            space
                .basis
                .keys()
                .filter_map(|lead| {
                    let c = r.coefficient(lead);
                    (!c.is_zero()).then(|| (lead.clone(), c))
                })
                .collect(),
        )
    }

    pub fn contains_path(&self, u: &Path) -> bool {
        self.spaces
            .get(&(u.source(), u.target()))
            .and_then(|s| s.basis.get(u))
            .is_some_and(|r| r.is_monomial())
    }

    pub fn is_monomial(&self) -> bool {
        self.groebner_basis().all(PathVector::is_monomial)
    }

    pub(crate) fn require_monomial(&self) -> Result<()> {
        if self.is_monomial() {
            Ok(())
        } else {
            Err(Error::NotMonomial)
        }
    }

    /// Paths lying in the ideal.
    pub fn monomial_paths(&self) -> Vec<Path> {
        self.groebner_basis()
            .filter(|r| r.is_monomial())
            .filter_map(|r| r.leading_path().cloned())
            .collect()
    }

    /// Whether `r` is a minimal relation.
    pub fn is_minimal(&self, r: &PathVector, cap: usize) -> Result<bool> {
        if r.is_zero() || !self.contains(r) {
            return Ok(false);
        }
        let full = (1u64 << r.len()) - 1;
        Ok(r.subexpressions(cap)?
            .iter()
            .enumerate()
            .all(|(m, s)| m == 0 || m as u64 == full || !self.contains(s)))
    }

    /// A decomposition of `r ∈ I` into minimal relations with disjoint supports.
    ///
    /// Repeatedly splits off a nonzero subexpression in the ideal with the
    /// smallest support.
    pub fn minimal_relations(&self, r: &PathVector) -> Result<Vec<MinimalRelation>> {
        self.minimal_relations_with_cap(r, DEFAULT_SUBEXPRESSION_CAP)
    }

    pub fn minimal_relations_with_cap(
        &self,
        r: &PathVector,
        cap: usize,
    ) -> Result<Vec<MinimalRelation>> {
        if !self.contains(r) {
            return Err(Error::NotInIdeal);
        }
        let mut rest = r.clone();
        let mut out = Vec::new();
        while !rest.is_zero() {
            let subs = rest.subexpressions(cap)?;
            let mut masks: Vec<u64> = (1..subs.len() as u64).collect();
            masks.sort_by_key(|m| (m.count_ones(), *m));
            let found = masks
                .into_iter()
                .map(|m| &subs[m as usize])
                .find(|s| self.contains(s))
                .ok_or_else(|| {
                    Error::Internal("no subexpression of an ideal element lies in the ideal".into())
                })?
                .clone();
            rest = rest.sub(&found)?;
            out.push(MinimalRelation { relation: found });
        }
        Ok(out)
    }

    /// Classes of paths linked by minimal relations, per hom-space.
    ///
    /// Two paths lie in the support of a common minimal relation exactly when
    /// they are connected through supports of reduced basis elements, which
    /// are the fundamental circuits of the reduced basis.
    pub fn relation_classes(&self) -> Vec<Vec<Path>> {
        let mut out = Vec::new();
        for space in self.spaces.values() {
            let mut parent: BTreeMap<&Path, &Path> = BTreeMap::new();
            fn find<'a>(parent: &mut BTreeMap<&'a Path, &'a Path>, x: &'a Path) -> &'a Path {
                let mut root = x;
                while let Some(&p) = parent.get(root) {
                    if p == root {
                        break;
                    }
                    root = p;
                }
                parent.insert(x, root);
                root
            }
            for element in space.basis.values() {
                let lead = element.leading_path().expect("nonzero");
                parent.entry(lead).or_insert(lead);
                for (p, _) in element.terms() {
                    parent.entry(p).or_insert(p);
                    let (a, b) = (find(&mut parent, lead), find(&mut parent, p));
                    if a != b {
                        parent.insert(b, a);
                    }
                }
            }
            let keys: Vec<&Path> = parent.keys().copied().collect();
            let mut classes: BTreeMap<&Path, Vec<Path>> = BTreeMap::new();
            for k in keys {
                let root = find(&mut parent, k);
                classes.entry(root).or_default().push(k.clone());
            }
            out.extend(classes.into_values().filter(|c| c.len() > 1));
        }
        for class in &mut out {
            class.sort();
        }
        out.sort();
        out
    }

    /// Pairs `(max(supp r), v)` over the reduced basis; they generate the
    /// equivalence of [`relation_classes`](Self::relation_classes).
    pub fn relation_pairs(&self) -> Vec<(Path, Path)> {
        let mut out = Vec::new();
        for r in self.groebner_basis() {
            let lead = r.leading_path().expect("nonzero");
            for (p, _) in r.terms() {
                if p != lead {
                    out.push((lead.clone(), p.clone()));
                }
            }
        }
        out
    }

    /// Whether `φ_{α,u,τ}` fixes this monomial ideal (for every, equivalently some, `τ ≠ 0`).
    pub fn preserved_by(&self, q: &Quiver, bypass: &Bypass) -> Result<bool> {
        self.require_monomial()?;
        let alpha = bypass.arrow();
        for v in self.monomial_paths() {
            if v.contains(alpha)
                && !self.contains_path(&q.replace_arrow(&v, alpha, bypass.path())?)
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For a monomial `self = I₀` and `other = I`, the element `r_u` of the
    /// reduced basis of `I` with leading path `u`, for every path `u ∈ I₀`.
    ///
    /// Fails with [`Error::NotConjugate`] when the leading paths of `I` are
    /// not exactly the paths of `I₀` or a lower term is not derived of its
    /// leading path.
    pub fn groebner_structure(
        &self,
        q: &Quiver,
        other: &AdmissibleIdeal,
    ) -> Result<BTreeMap<Path, PathVector>> {
        q.require_triangular_simple()?;
        self.require_monomial()?;
        let mut keys: Vec<(Vertex, Vertex)> =
            self.support_keys().chain(other.support_keys()).collect();
        keys.sort();
        keys.dedup();
        let mut table = BTreeMap::new();
        for (x, y) in keys {
            if self.dimension(x, y) != other.dimension(x, y) {
                return Err(Error::NotConjugate(format!(
                    "dimensions differ from `{}` to `{}`",
                    q.vertex_name(x),
                    q.vertex_name(y)
                )));
            }
            for r in other.component(x, y) {
                let lead = r.leading_path().expect("nonzero");
                if !self.contains_path(lead) {
                    return Err(Error::NotConjugate(format!(
                        "leading path `{}` of `{}` is not in the monomial ideal",
                        q.written(lead),
                        q.written_vector(r)
                    )));
                }
                for (v, _) in r.terms() {
                    if v != lead && !matches!(q.derivation_order(lead, v)?, Some(t) if t > 0) {
                        return Err(Error::NotConjugate(format!(
                            "`{}` is not derived of `{}`",
                            q.written(v),
                            q.written(lead)
                        )));
                    }
                }
                table.insert(lead.clone(), r.clone());
            }
        }
        Ok(table)
    }

    /// The canonical `ψ_I` carrying the monomial ideal `self = I₀` onto `target`,
    /// starting from any automorphism `seed` with `seed(I₀) = target`.
    ///
    /// A dilatation part of the seed is discarded first since it fixes `I₀`.
    pub fn canonical_automorphism(
        &self,
        q: &Quiver,
        target: &AdmissibleIdeal,
        seed: &ArrowSubstitution,
    ) -> Result<DecreasingProduct> {
        q.require_triangular_simple()?;
        self.require_monomial()?;
        let mut images = Vec::with_capacity(q.arrow_count());
        for a in q.arrows() {
            let c = seed.image(a).coefficient(&q.arrow_path(a));
            if c.is_zero() {
                return Err(Error::NotInvertible(format!(
                    "`{}` has no linear term",
                    q.label(a)
                )));
            }
            images.push((a, seed.image(a).scale(&c.recip())));
        }
        let mut psi = ArrowSubstitution::from_images(q, images)?;
        if self.image(q, &psi)? != *target {
            return Err(Error::Precondition(
                "seed does not map the monomial ideal onto the target".into(),
            ));
        }
        let limit = 1 + q.bypasses()?.len() * q.bypasses()?.len();
        for _ in 0..limit {
            let mut best: Option<(Bypass, Scalar)> = None;
            for a in q.arrows() {
                for (u, c) in psi.image(a).terms() {
                    if u.len() < 2 {
                        continue;
                    }
                    let b = q.bypass(a, u.clone())?;
                    if self.preserved_by(q, &b)? && best.as_ref().is_none_or(|(x, _)| b > *x) {
                        best = Some((b, c.clone()));
                    }
                }
            }
            let Some((b, tau)) = best else {
                let product = decreasing_normal_form(q, &psi)?;
                if self.image(q, &product.evaluate(q))? != *target {
                    return Err(Error::Internal(
                        "canonical automorphism does not reach the target".into(),
                    ));
                }
                return Ok(product);
            };
            psi = psi.then_transvection(&Transvection::new(b, -tau));
        }
        Err(Error::Internal(
            "reduction to the canonical automorphism did not terminate".into(),
        ))
    }

    /// Searches for `ψ` in the transvection subgroup with `ψ(self) = target`, `self` monomial.
    ///
    /// Coefficients are solved one bypass at a time in decreasing bypass order:
    /// for a non-preserving bypass `(α,θ)` with witness `u = u₂αu₁ ∈ I₀` and
    /// `v = u₂θu₁ ∉ I₀`, the coefficient of `v` in the reduction of `ψ(u)`
    /// modulo the target only involves already-known coefficients.
    pub fn find_seed(&self, q: &Quiver, target: &AdmissibleIdeal) -> Result<SeedSearch> {
        q.require_triangular_simple()?;
        self.require_monomial()?;
        if let Err(e) = self.groebner_structure(q, target) {
            return match e {
                Error::NotConjugate(reason) => Ok(SeedSearch::NotConjugate(reason)),
                other => Err(other),
            };
        }
        let monomials = self.monomial_paths();
        let mut bypasses = q.bypasses()?;
        bypasses.reverse();
        let mut psi = ArrowSubstitution::identity(q);
        for b in bypasses {
            let alpha = b.arrow();
            let mut witness = None;
            for u in monomials.iter().filter(|u| u.contains(alpha)) {
                let v = q.replace_arrow(u, alpha, b.path())?;
                if !self.contains_path(&v) {
                    witness = Some((u, v));
                    break;
                }
            }
            let Some((u, v)) = witness else {
                continue;
            };
            let tau = -target.reduce(&psi.apply_path(u)).coefficient(&v);
            if !tau.is_zero() {
                psi.add_to_image(alpha, tau, b.path().clone())?;
            }
        }
        if self.image(q, &psi)? == *target {
            Ok(SeedSearch::Found(psi))
        } else {
            Ok(SeedSearch::Inconclusive(
                "the solved candidate does not map the monomial ideal onto the target".into(),
            ))
        }
    }

    /// Generators in written notation: `<ha+hgfec,gb+gfec,dc>`.
    pub fn display(&self, q: &Quiver) -> String {
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| q.written_vector(g))
            .collect();
        format!("<{}>", parts.join(","))
    }
}

impl AdmissibleIdeal {
    /// Whether every factor of `psi` fixes this monomial ideal.
    pub fn preserved_by_all(&self, q: &Quiver, psi: &DecreasingProduct) -> Result<bool> {
        for t in psi.factors() {
            if !self.preserved_by(q, &t.bypass)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar;
    use crate::automorphism::TransvectionWord;
    use crate::quiver::fixtures::*;
    use alloc::vec;

    fn i0(q: &Quiver) -> AdmissibleIdeal {
        ideal(q, &[&[(1, "ha")], &[(1, "gb")], &[(1, "dc")]])
    }

    fn intro_i(q: &Quiver) -> AdmissibleIdeal {
        ideal(
            q,
            &[
                &[(1, "ha"), (1, "hgfec")],
                &[(1, "gb"), (1, "gfec")],
                &[(1, "dc")],
            ],
        )
    }

    fn written_basis(q: &Quiver, i: &AdmissibleIdeal) -> Vec<String> {
        let mut out: Vec<String> = i.groebner_basis().map(|r| q.written_vector(r)).collect();
        out.sort();
        out
    }

    #[test]
    fn closure_of_monomial_generators() {
        let q = six_vertex();
        assert_eq!(
            written_basis(&q, &i0(&q)),
            ["dc", "gb", "gdc", "ha", "hgb", "hgdc"]
        );
        assert!(i0(&q).is_monomial());
        assert_eq!(
            AdmissibleIdeal::from_generators(&q, vec![])
                .unwrap()
                .total_dimension(),
            0
        );
        assert!(AdmissibleIdeal::zero().is_monomial());
    }

    #[test]
    fn closure_of_binomial_generator() {
        let q = four_vertex();
        let i = ideal(&q, &[&[(1, "da"), (-1, "dcb")]]);
        assert_eq!(written_basis(&q, &i), ["da-dcb"]);
        assert!(!i.is_monomial());
    }

    #[test]
    fn rejects_short_generators() {
        let q = six_vertex();
        let r = AdmissibleIdeal::from_generators(&q, vec![v(&q, &[(1, "a"), (1, "gb")])]);
        assert!(matches!(r, Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn membership() {
        let q = six_vertex();
        let i = intro_i(&q);
        assert!(!i.contains(&v(&q, &[(1, "ha"), (1, "hgb")])));
        let coords = i.coordinates(&v(&q, &[(1, "ha"), (-1, "hgb")])).unwrap();
        let coords: Vec<(String, Scalar)> = coords
            .into_iter()
            .map(|(p, c)| (q.written(&p), c))
            .collect();
        assert_eq!(
            coords,
            vec![("hgb".into(), scalar(-1)), ("ha".into(), scalar(1))]
        );
        let zero = PathVector::zero(q.vertex("1").unwrap(), q.vertex("6").unwrap());
        assert!(i.contains(&zero));
        assert!(!i0(&q).contains(&v(&q, &[(1, "fec")])));
        assert!(!i0(&q).contains_path(&p(&q, "gfec")));
    }

    #[test]
    fn minimal_relation_examples() {
        let q = four_vertex();
        let i = ideal(&q, &[&[(1, "da"), (-1, "dcb")]]);
        let r = v(&q, &[(1, "da"), (-1, "dcb")]);
        assert_eq!(
            i.minimal_relations(&r).unwrap(),
            vec![MinimalRelation {
                relation: r.clone()
            }]
        );
        assert!(i.is_minimal(&r, 20).unwrap());

        let q = six_vertex();
        let i = intro_i(&q);
        let r = v(&q, &[(1, "ha"), (1, "hgfec")]);
        assert!(i.is_minimal(&r, 20).unwrap());
        let outside = v(&q, &[(1, "ha"), (1, "hgb")]);
        assert_eq!(
            i.minimal_relations(&outside).unwrap_err(),
            Error::NotInIdeal
        );
        let both = v(&q, &[(1, "hgdc"), (1, "ha"), (-1, "hgb")]);
        let parts = i.minimal_relations(&both).unwrap();
        let mut written: Vec<String> = parts
            .iter()
            .map(|m| q.written_vector(m.relation()))
            .collect();
        written.sort();
        assert_eq!(written, ["ha-hgb", "hgdc"]);
        assert!(parts.iter().any(MinimalRelation::is_monomial));
        let m = i0(&q);
        for u in m.monomial_paths() {
            assert!(m.is_minimal(&PathVector::from_path(u), 20).unwrap());
        }
    }

    #[test]
    fn relation_classes_of_intro_ideal() {
        let q = six_vertex();
        let classes: Vec<Vec<String>> = intro_i(&q)
            .relation_classes()
            .iter()
            .map(|c| c.iter().map(|p| q.written(p)).collect())
            .collect();
        assert_eq!(
            classes,
            vec![vec!["gfec", "gb"], vec!["hgfec", "hgb", "ha"]]
        );
        assert!(i0(&q).relation_classes().is_empty());
    }

    #[test]
    fn groebner_structure_table() {
        let q = six_vertex();
        let table = i0(&q).groebner_structure(&q, &intro_i(&q)).unwrap();
        let got: Vec<(String, String)> = table
            .iter()
            .map(|(u, r)| (q.written(u), q.written_vector(r)))
            .collect();
        let mut got = got;
        got.sort();
        assert_eq!(
            got,
            [
                ("dc", "dc"),
                ("gb", "gb+gfec"),
                ("gdc", "gdc"),
                ("ha", "ha+hgfec"),
                ("hgb", "hgb+hgfec"),
                ("hgdc", "hgdc"),
            ]
            .map(|(a, b)| (String::from(a), String::from(b)))
        );
        let same = i0(&q).groebner_structure(&q, &i0(&q)).unwrap();
        assert!(same
            .iter()
            .all(|(u, r)| *r == PathVector::from_path(u.clone())));
        let other = ideal(&q, &[&[(1, "gfec")]]);
        assert!(matches!(
            i0(&q).groebner_structure(&q, &other),
            Err(Error::NotConjugate(_))
        ));
    }

    #[test]
    fn preservation() {
        let q = six_vertex();
        let m = i0(&q);
        let by = |a: &str, u: &str| q.bypass(q.arrow(a).unwrap(), p(&q, u)).unwrap();
        assert!(m.preserved_by(&q, &by("a", "gb")).unwrap());
        assert!(!m.preserved_by(&q, &by("b", "fec")).unwrap());
        let only_dc = ideal(&q, &[&[(1, "dc")]]);
        assert!(only_dc.preserved_by(&q, &by("a", "gfec")).unwrap());
        assert_eq!(
            intro_i(&q).preserved_by(&q, &by("a", "gb")).unwrap_err(),
            Error::NotMonomial
        );
    }

    #[test]
    fn canonical_automorphism_examples() {
        let q = six_vertex();
        let m = i0(&q);
        let seed = TransvectionWord::new(vec![
            t(&q, "a", "gfec", scalar(1)),
            t(&q, "b", "fec", scalar(1)),
        ])
        .evaluate(&q);
        let target = m.image(&q, &seed).unwrap();
        assert_eq!(target, intro_i(&q));
        let psi = m.canonical_automorphism(&q, &target, &seed).unwrap();
        assert_eq!(psi.display(&q), "[(b,fec,1), (a,gfec,1)]");

        let id = m
            .canonical_automorphism(&q, &m, &ArrowSubstitution::identity(&q))
            .unwrap();
        assert!(id.is_empty());

        let seed = TransvectionWord::new(vec![
            t(&q, "a", "gb", scalar(1)),
            t(&q, "b", "fec", scalar(1)),
        ])
        .evaluate(&q);
        let target = m.image(&q, &seed).unwrap();
        let expected = ideal(
            &q,
            &[
                &[(1, "dc")],
                &[(1, "gb"), (1, "gfec")],
                &[(1, "ha"), (1, "hgb")],
            ],
        );
        assert_eq!(target, expected);
        let psi = m.canonical_automorphism(&q, &target, &seed).unwrap();
        assert_eq!(psi.display(&q), "[(b,fec,1), (a,gfec,-1)]");

        assert!(matches!(
            m.canonical_automorphism(&q, &intro_i(&q), &ArrowSubstitution::identity(&q)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn canonical_automorphism_strips_dilatations() {
        let q = six_vertex();
        let m = i0(&q);
        let seed = TransvectionWord::new(vec![
            t(&q, "a", "gfec", scalar(1)),
            t(&q, "b", "fec", scalar(1)),
        ])
        .evaluate(&q);
        let d = ArrowSubstitution::dilatation(
            &q,
            &[
                (q.arrow("a").unwrap(), scalar(5)),
                (q.arrow("f").unwrap(), scalar(-2)),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let seed = seed.compose(&d);
        let target = m.image(&q, &seed).unwrap();
        assert_eq!(target, intro_i(&q));
        let psi = m.canonical_automorphism(&q, &target, &seed).unwrap();
        assert_eq!(psi.display(&q), "[(b,fec,1), (a,gfec,1)]");
    }

    #[test]
    fn seed_search() {
        let q = six_vertex();
        let m = i0(&q);
        assert_eq!(
            m.find_seed(&q, &m).unwrap(),
            SeedSearch::Found(ArrowSubstitution::identity(&q))
        );
        let target = intro_i(&q);
        let SeedSearch::Found(seed) = m.find_seed(&q, &target).unwrap() else {
            panic!("no seed found");
        };
        assert_eq!(m.image(&q, &seed).unwrap(), target);
        assert_eq!(
            m.canonical_automorphism(&q, &target, &seed)
                .unwrap()
                .display(&q),
            "[(b,fec,1), (a,gfec,1)]"
        );
        let smaller = ideal(&q, &[&[(1, "gb")]]);
        assert!(matches!(
            m.find_seed(&q, &smaller).unwrap(),
            SeedSearch::NotConjugate(_)
        ));
    }
}
