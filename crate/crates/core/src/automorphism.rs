//! Vertex-fixing automorphisms of the path algebra.
//!
//! An [`ArrowSubstitution`] is given by the images of the arrows. Composition
//! follows function notation: `(ψ ∘ χ)(α) = ψ(χ(α))`, and a word
//! `φₙ … φ₁` applies `φ₁` first.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{PathVector, Scalar};
use crate::bypass::Bypass;
use crate::path::Path;
use crate::quiver::{Arrow, Quiver};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArrowSubstitution {
    images: Vec<PathVector>,
}

impl ArrowSubstitution {
    pub fn identity(q: &Quiver) -> Self {
        ArrowSubstitution {
            images: q
                .arrows()
                .map(|a| PathVector::from_path(q.arrow_path(a)))
                .collect(),
        }
    }

    /// Builds a substitution from explicit images; arrows not listed are fixed.
    pub fn from_images<I>(q: &Quiver, images: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Arrow, PathVector)>,
    {
        let mut out = Self::identity(q);
        for (a, image) in images {
            if image.source() != q.source(a) || image.target() != q.target(a) {
                return Err(Error::NotParallel);
            }
            out.images[a.index()] = image;
        }
        Ok(out)
    }

    /// `φ_{α,u,τ}`: `α ↦ α + τu`, other arrows fixed.
    pub fn transvection(q: &Quiver, bypass: &Bypass, tau: &Scalar) -> Self {
        let mut out = Self::identity(q);
        out.images[bypass.arrow().index()]
            .add_term(tau.clone(), bypass.path().clone())
            .expect("bypass path is parallel to its arrow");
        out
    }

    /// Diagonal automorphism; arrows without a listed scale are fixed.
    pub fn dilatation(q: &Quiver, scales: &BTreeMap<Arrow, Scalar>) -> Result<Self> {
        let mut out = Self::identity(q);
        for (&a, c) in scales {
            if c.is_zero() {
                return Err(Error::ZeroScale(q.label(a).into()));
            }
            out.images[a.index()] = PathVector::term(c.clone(), q.arrow_path(a));
        }
        Ok(out)
    }

    /// `α ↦ ψ(α) + c·u`.
    pub fn add_to_image(&mut self, a: Arrow, c: Scalar, u: Path) -> Result<()> {
        self.images[a.index()].add_term(c, u)
    }

    pub fn image(&self, a: Arrow) -> &PathVector {
        &self.images[a.index()]
    }

    pub fn images(&self) -> &[PathVector] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, r)| {
            r.len() == 1
                && r.leading()
                    .is_some_and(|(p, c)| p.arrows() == [Arrow(i as u32)] && c.is_one())
        })
    }

    /// Image of a single path.
    pub fn apply_path(&self, u: &Path) -> PathVector {
        let mut acc = PathVector::from_path(Path::stationary(u.source()));
        for a in u.arrows() {
            acc = acc
                .concatenate(&self.images[a.index()])
                .expect("images are parallel to arrows");
        }
        acc
    }

    pub fn apply(&self, r: &PathVector) -> PathVector {
        let mut out = PathVector::zero(r.source(), r.target());
        for (p, c) in r.terms() {
            out.add_scaled(c, &self.apply_path(p)).expect("parallel");
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ArrowSubstitution) -> ArrowSubstitution {
        ArrowSubstitution {
            images: other.images.iter().map(|r| self.apply(r)).collect(),
        }
    }

    /// `self ∘ φ_{α,u,τ}`, changing only the image of `α`.
    pub fn then_transvection(&self, t: &Transvection) -> ArrowSubstitution {
        let mut out = self.clone();
        let a = t.bypass.arrow().index();
        let extra = self.apply_path(t.bypass.path());
        out.images[a]
            .add_scaled(&t.scalar, &extra)
            .expect("parallel");
        out
    }

    /// Inverse by back-substitution, arrows taken by increasing span.
    ///
    /// Requires the coefficient of `α` in `ψ(α)` to be nonzero and every other
    /// support path of `ψ(α)` to have length at least two.
    pub fn invert(&self, q: &Quiver) -> Result<ArrowSubstitution> {
        q.require_acyclic()?;
        let span = longest_spans(q);
        let mut order: Vec<Arrow> = q.arrows().collect();
        order.sort_by_key(|a| (span[a.index()], *a));
        let mut inverse = Self::identity(q);
        for a in order {
            let image = &self.images[a.index()];
            let own = q.arrow_path(a);
            let c = image.coefficient(&own);
            if c.is_zero() {
                return Err(Error::NotInvertible(format!(
                    "`{}` has no linear term",
                    q.label(a)
                )));
            }
            if image.terms().any(|(p, _)| p.len() < 2 && *p != own) {
                return Err(Error::NotInvertible(format!(
                    "image of `{}` has another term of length at most one",
                    q.label(a)
                )));
            }
            let mut rest = image.clone();
            rest.add_term(-c.clone(), own.clone())?;
            // Arrows in `rest` have strictly smaller span, so their inverse images are known.
            let mut value = PathVector::from_path(own);
            value.add_scaled(&-Scalar::one(), &inverse.apply(&rest))?;
            inverse.images[a.index()] = value.scale(&c.recip());
        }
        Ok(inverse)
    }

    pub fn display(&self, q: &Quiver) -> String {
        let mut parts = Vec::new();
        for a in q.arrows() {
            let r = &self.images[a.index()];
            if r != &PathVector::from_path(q.arrow_path(a)) {
                parts.push(format!("{} -> {}", q.label(a), q.written_vector(r)));
            }
        }
        if parts.is_empty() {
            "identity".into()
        } else {
            parts.join(", ")
        }
    }
}

/// Length of the longest path from `s(α)` to `t(α)`, per arrow.
fn longest_spans(q: &Quiver) -> Vec<usize> {
    q.arrows()
        .map(|a| {
            q.hom(q.source(a), q.target(a))
                .map(|ps| ps.iter().map(Path::len).max().unwrap_or(1))
                .unwrap_or(1)
        })
        .collect()
}

/// One factor `φ_{α,u,τ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transvection {
    pub bypass: Bypass,
    pub scalar: Scalar,
}

impl Transvection {
    pub fn new(bypass: Bypass, scalar: Scalar) -> Self {
        Transvection { bypass, scalar }
    }

    pub fn to_substitution(&self, q: &Quiver) -> ArrowSubstitution {
        ArrowSubstitution::transvection(q, &self.bypass, &self.scalar)
    }

    pub fn inverse(&self) -> Transvection {
        Transvection::new(self.bypass.clone(), -self.scalar.clone())
    }

    /// `(α,u,τ)` in written notation.
    pub fn display(&self, q: &Quiver) -> String {
        format!(
            "({},{},{})",
            q.label(self.bypass.arrow()),
            q.written(self.bypass.path()),
            self.scalar
        )
    }
}

/// A product of transvections in written order: the last factor is applied first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TransvectionWord {
    pub factors: Vec<Transvection>,
}

impl TransvectionWord {
    pub fn new(factors: Vec<Transvection>) -> Self {
        TransvectionWord { factors }
    }

    pub fn evaluate(&self, q: &Quiver) -> ArrowSubstitution {
        self.factors
            .iter()
            .fold(ArrowSubstitution::identity(q), |acc, t| {
                acc.then_transvection(t)
            })
    }

    pub fn inverse(&self) -> TransvectionWord {
        TransvectionWord::new(
            self.factors
                .iter()
                .rev()
                .map(Transvection::inverse)
                .collect(),
        )
    }
}

/// `φ_{αₙ,uₙ,τₙ} ∘ … ∘ φ_{α₁,u₁,τ₁}` with `(α₁,u₁) < … < (αₙ,uₙ)`.
///
/// `factors` lists the transvections in application order, i.e. increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DecreasingProduct {
    factors: Vec<Transvection>,
}

impl DecreasingProduct {
    /// Checks strict increase and nonzero scalars.
    pub fn new(factors: Vec<Transvection>) -> Result<Self> {
        if factors.iter().any(|t| t.scalar.is_zero()) {
            return Err(Error::Precondition(
                "zero scalar in decreasing product".into(),
            ));
        }
        if factors.windows(2).any(|w| w[0].bypass >= w[1].bypass) {
            return Err(Error::Precondition(
                "bypasses are not strictly increasing".into(),
            ));
        }
        Ok(DecreasingProduct { factors })
    }

    pub fn identity() -> Self {
        DecreasingProduct::default()
    }

    pub fn factors(&self) -> &[Transvection] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn to_word(&self) -> TransvectionWord {
        TransvectionWord::new(self.factors.iter().rev().cloned().collect())
    }

    pub fn evaluate(&self, q: &Quiver) -> ArrowSubstitution {
        self.to_word().evaluate(q)
    }

    /// `[(α₁,u₁,τ₁), …]` in increasing order.
    pub fn display(&self, q: &Quiver) -> String {
        let parts: Vec<String> = self.factors.iter().map(|t| t.display(q)).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// The unique decreasing product equal to `psi`, read off the arrow images.
pub fn decreasing_normal_form(q: &Quiver, psi: &ArrowSubstitution) -> Result<DecreasingProduct> {
    q.require_triangular_simple()?;
    let mut harvested = Vec::new();
    for a in q.arrows() {
        let own = q.arrow_path(a);
        let image = psi.image(a);
        if !image.coefficient(&own).is_one() {
            return Err(Error::NotTransvectionProduct(format!(
                "coefficient of `{}` in its image is not 1",
                q.label(a)
            )));
        }
        for (p, c) in image.terms() {
            if *p == own {
                continue;
            }
            if p.len() < 2 {
                return Err(Error::NotTransvectionProduct(format!(
                    "image of `{}` has a term of length at most one",
                    q.label(a)
                )));
            }
            harvested.push(Transvection::new(q.bypass(a, p.clone())?, c.clone()));
        }
    }
    harvested.sort_by(|x, y| x.bypass.cmp(&y.bypass));
    let product = DecreasingProduct::new(harvested)?;
    if product.evaluate(q) != *psi {
        return Err(Error::NotTransvectionProduct(
            "rebuilt decreasing product differs from the input".into(),
        ));
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ratio, scalar};
    use crate::quiver::fixtures::*;
    use alloc::vec;

    fn t(q: &Quiver, arrow: &str, path: &str, tau: Scalar) -> Transvection {
        let a = q.arrow(arrow).unwrap();
        Transvection::new(q.bypass(a, p(q, path)).unwrap(), tau)
    }

    fn vec_of(q: &Quiver, terms: &[(i64, &str)]) -> PathVector {
        PathVector::normal_form(terms.iter().map(|&(c, w)| (scalar(c), p(q, w)))).unwrap()
    }

    #[test]
    fn transvection_changes_relation() {
        let q = four_vertex();
        let phi = t(&q, "a", "cb", scalar(1)).to_substitution(&q);
        let r = vec_of(&q, &[(1, "da"), (-1, "dcb")]);
        assert_eq!(q.written_vector(&phi.apply(&r)), "da");
        assert!(t(&q, "a", "cb", scalar(0))
            .to_substitution(&q)
            .is_identity());
    }

    #[test]
    fn transvections_add_scalars() {
        let q = four_vertex();
        let x = t(&q, "a", "cb", ratio(2, 3)).to_substitution(&q);
        let y = t(&q, "a", "cb", scalar(-5)).to_substitution(&q);
        let z = t(&q, "a", "cb", ratio(-13, 3)).to_substitution(&q);
        assert_eq!(x.compose(&y), z);
    }

    #[test]
    fn dilatations() {
        let q = four_vertex();
        let a = q.arrow("a").unwrap();
        assert!(ArrowSubstitution::dilatation(&q, &BTreeMap::new())
            .unwrap()
            .is_identity());
        let d3 =
            ArrowSubstitution::dilatation(&q, &[(a, scalar(3))].into_iter().collect()).unwrap();
        let d5 =
            ArrowSubstitution::dilatation(&q, &[(a, scalar(5))].into_iter().collect()).unwrap();
        let d15 =
            ArrowSubstitution::dilatation(&q, &[(a, scalar(15))].into_iter().collect()).unwrap();
        assert_eq!(
            q.written_vector(&d3.apply(&vec_of(&q, &[(1, "da")]))),
            "3*da"
        );
        assert_eq!(d3.compose(&d5), d15);
        assert_eq!(
            ArrowSubstitution::dilatation(&q, &[(a, scalar(0))].into_iter().collect()).unwrap_err(),
            Error::ZeroScale("a".into())
        );
    }

    #[test]
    fn apply_examples() {
        let q = six_vertex();
        let phi = t(&q, "b", "fec", scalar(1)).to_substitution(&q);
        assert_eq!(
            q.written_vector(&phi.apply(&vec_of(&q, &[(1, "gb")]))),
            "gb+gfec"
        );
        let psi = TransvectionWord::new(vec![
            t(&q, "a", "gb", scalar(1)),
            t(&q, "b", "fec", scalar(1)),
        ])
        .evaluate(&q);
        assert_eq!(q.written_vector(psi.image(q.arrow("a").unwrap())), "a+gb");
        assert_eq!(q.written_vector(psi.image(q.arrow("b").unwrap())), "b+fec");
        assert_eq!(
            q.written_vector(&psi.apply(&vec_of(&q, &[(1, "ha")]))),
            "ha+hgb"
        );
        let r = vec_of(&q, &[(1, "ha"), (2, "hgdc")]);
        assert_eq!(ArrowSubstitution::identity(&q).apply(&r), r);
    }

    #[test]
    fn compose_examples() {
        let q = six_vertex();
        let psi = TransvectionWord::new(vec![
            t(&q, "a", "gfec", scalar(1)),
            t(&q, "b", "fec", scalar(1)),
        ])
        .evaluate(&q);
        assert_eq!(psi.display(&q), "b -> b+fec, a -> a+gfec");
        assert!(psi.compose(&psi.invert(&q).unwrap()).is_identity());
        assert!(psi.invert(&q).unwrap().compose(&psi).is_identity());

        let (tau, nu) = (ratio(3, 2), scalar(-4));
        let lhs = TransvectionWord::new(vec![
            t(&q, "d", "fe", nu.clone()),
            t(&q, "a", "gdc", tau.clone()),
        ])
        .evaluate(&q);
        let rhs = TransvectionWord::new(vec![
            t(&q, "a", "gdc", tau.clone()),
            t(&q, "a", "gfec", &tau * &nu),
            t(&q, "d", "fe", nu.clone()),
        ])
        .evaluate(&q);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn invert_examples() {
        let q = four_vertex();
        let x = t(&q, "a", "cb", scalar(1));
        assert_eq!(
            x.to_substitution(&q).invert(&q).unwrap(),
            x.inverse().to_substitution(&q)
        );
        assert!(ArrowSubstitution::identity(&q)
            .invert(&q)
            .unwrap()
            .is_identity());

        let q = six_vertex();
        let psi = TransvectionWord::new(vec![
            t(&q, "a", "gfec", scalar(1)),
            t(&q, "b", "fec", scalar(1)),
        ])
        .evaluate(&q);
        let inv = psi.invert(&q).unwrap();
        assert_eq!(q.written_vector(inv.image(q.arrow("a").unwrap())), "a-gfec");

        let a = q.arrow("a").unwrap();
        let degenerate =
            ArrowSubstitution::from_images(&q, [(a, vec_of(&q, &[(1, "gb")]))]).unwrap();
        assert!(matches!(
            degenerate.invert(&q),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn normal_form_examples() {
        let q = six_vertex();
        let (tau, nu) = (scalar(2), ratio(1, 3));
        let psi = TransvectionWord::new(vec![
            t(&q, "d", "fe", nu.clone()),
            t(&q, "a", "gdc", tau.clone()),
        ])
        .evaluate(&q);
        let nf = decreasing_normal_form(&q, &psi).unwrap();
        assert_eq!(nf.display(&q), "[(d,fe,1/3), (a,gfec,2/3), (a,gdc,2)]");

        assert!(decreasing_normal_form(&q, &ArrowSubstitution::identity(&q))
            .unwrap()
            .is_empty());

        let psi_i = TransvectionWord::new(vec![
            t(&q, "a", "gfec", scalar(1)),
            t(&q, "b", "fec", scalar(1)),
        ])
        .evaluate(&q);
        assert_eq!(
            decreasing_normal_form(&q, &psi_i).unwrap().display(&q),
            "[(b,fec,1), (a,gfec,1)]"
        );

        let a = q.arrow("a").unwrap();
        let d = ArrowSubstitution::dilatation(&q, &[(a, scalar(2))].into_iter().collect()).unwrap();
        assert!(matches!(
            decreasing_normal_form(&q, &d),
            Err(Error::NotTransvectionProduct(_))
        ));
        assert_eq!(
            decreasing_normal_form(
                &double_arrow(),
                &ArrowSubstitution::identity(&double_arrow())
            )
            .unwrap_err(),
            Error::MultipleArrows
        );
    }

    #[test]
    fn decreasing_product_checks_order() {
        let q = six_vertex();
        let bad = DecreasingProduct::new(vec![
            t(&q, "a", "gb", scalar(1)),
            t(&q, "b", "fec", scalar(1)),
        ]);
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }
}
