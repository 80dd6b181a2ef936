//! Exact linear combinations of parallel paths.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::path::Path;
use crate::quiver::{Quiver, Vertex};
use crate::{Error, Result};

/// Coefficients are exact rationals.
pub type Scalar = BigRational;

/// Default bound on the support size for subexpression enumeration.
pub const DEFAULT_SUBEXPRESSION_CAP: usize = 20;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(n.into())
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(p.into(), q.into())
}

/// A finite combination of paths from `source` to `target` with nonzero coefficients.
///
/// Terms are keyed by [`Path`], so iteration is increasing in the path order
/// and the largest support path is the last key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathVector {
    source: Vertex,
    target: Vertex,
    terms: BTreeMap<Path, Scalar>,
}

impl PathVector {
    pub fn zero(source: Vertex, target: Vertex) -> Self {
        PathVector {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(path: Path) -> Self {
        Self::term(Scalar::one(), path)
    }

    pub fn term(coefficient: Scalar, path: Path) -> Self {
        let mut v = Self::zero(path.source(), path.target());
        if !coefficient.is_zero() {
            v.terms.insert(path, coefficient);
        }
        v
    }

    /// Merges equal paths and drops zero coefficients.
    pub fn normal_form<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Scalar, Path)>,
    {
        let mut iter = terms.into_iter();
        let (c, p) = iter.next().ok_or(Error::EmptyTerms)?;
        let mut v = Self::zero(p.source(), p.target());
        v.add_term(c, p)?;
        for (c, p) in iter {
            v.add_term(c, p)?;
        }
        Ok(v)
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Terms in decreasing path order.
    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> + '_ {
        self.terms.iter().rev()
    }

    /// Support in decreasing path order.
    pub fn support(&self) -> Vec<Path> {
        self.terms.keys().rev().cloned().collect()
    }

    pub fn contains(&self, path: &Path) -> bool {
        self.terms.contains_key(path)
    }

    pub fn coefficient(&self, path: &Path) -> Scalar {
        self.terms.get(path).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `max(supp(r))`.
    pub fn leading(&self) -> Option<(&Path, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_path(&self) -> Option<&Path> {
        self.terms.keys().next_back()
    }

    pub fn is_parallel_to(&self, other: &PathVector) -> bool {
        self.source == other.source && self.target == other.target
    }

    fn check_parallel(&self, p: &Path) -> Result<()> {
        if p.source() == self.source && p.target() == self.target {
            Ok(())
        } else {
            Err(Error::NotParallel)
        }
    }

    pub fn add_term(&mut self, c: Scalar, p: Path) -> Result<()> {
        self.check_parallel(&p)?;
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(p) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
        Ok(())
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &PathVector) -> Result<()> {
        if !self.is_parallel_to(other) {
            return Err(Error::NotParallel);
        }
        if c.is_zero() {
            return Ok(());
        }
        for (p, d) in &other.terms {
            self.add_term(c * d, p.clone())?;
        }
        Ok(())
    }

    pub fn add(&self, other: &PathVector) -> Result<PathVector> {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &PathVector) -> Result<PathVector> {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), other)?;
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> PathVector {
        if c.is_zero() {
            return Self::zero(self.source, self.target);
        }
        PathVector {
            source: self.source,
            target: self.target,
            terms: self.terms.iter().map(|(p, d)| (p.clone(), c * d)).collect(),
        }
    }

    /// Path-concatenation extended bilinearly: `self` then `next`.
    pub fn concatenate(&self, next: &PathVector) -> Result<PathVector> {
        if self.target != next.source {
            return Err(Error::NotComposable("vector endpoints differ".into()));
        }
        let mut out = Self::zero(self.source, next.target);
        for (p, c) in &self.terms {
            for (q, d) in &next.terms {
                out.add_term(c * d, p.then(q)?)?;
            }
        }
        Ok(out)
    }

    /// `before`, then every term, then `after`; coefficients unchanged.
    pub fn extend(&self, before: &Path, after: &Path) -> Result<PathVector> {
        if before.target() != self.source || self.target != after.source() {
            return Err(Error::NotComposable("vector endpoints differ".into()));
        }
        let mut terms = BTreeMap::new();
        for (p, c) in &self.terms {
            terms.insert(before.then(p)?.then(after)?, c.clone());
        }
        Ok(PathVector {
            source: before.source(),
            target: after.target(),
            terms,
        })
    }

    /// The subexpression on the support positions selected by `mask`,
    /// positions counted in increasing path order.
    pub fn sub_expression(&self, mask: u64) -> PathVector {
        PathVector {
            source: self.source,
            target: self.target,
            terms: self
                .terms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, (p, c))| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Restriction of `self` to the given paths.
    pub fn restrict<'a, I: IntoIterator<Item = &'a Path>>(&self, paths: I) -> PathVector {
        let mut out = Self::zero(self.source, self.target);
        for p in paths {
            if let Some(c) = self.terms.get(p) {
                out.terms.insert(p.clone(), c.clone());
            }
        }
        out
    }

    /// All `2^|supp|` subexpressions, by bitmask over the support in increasing order.
    pub fn subexpressions(&self, cap: usize) -> Result<Vec<PathVector>> {
        let n = self.terms.len();
        if n > cap || n >= 63 {
            return Err(Error::Capacity {
                what: "subexpression support",
                limit: cap.min(62),
            });
        }
        Ok((0..1u64 << n).map(|m| self.sub_expression(m)).collect())
    }
}

fn write_coefficient(out: &mut String, c: &Scalar, first: bool, compact: bool) -> bool {
    let negative = c.is_negative();
    let abs = c.abs();
    if compact {
        match (first, negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push('-'),
            (false, false) => out.push('+'),
        }
        if !abs.is_one() {
            let _ = write!(out, "{abs}*");
        }
    } else {
        match (first, negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        let _ = write!(out, "{abs}*");
    }
    negative
}

impl Quiver {
    /// Written notation, largest path first: `ha+hgfec`, `a-gfec`, `0`.
    pub fn written_vector(&self, r: &PathVector) -> String {
        if r.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in r.terms().enumerate() {
            write_coefficient(&mut out, c, i == 0, true);
            out.push_str(&self.written(p));
        }
        out
    }

    /// File notation: `1*(a h) + 1*(c e f g h)`.
    pub fn format_vector(&self, r: &PathVector) -> String {
        if r.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in r.terms().enumerate() {
            write_coefficient(&mut out, c, i == 0, false);
            if p.is_stationary() {
                let _ = write!(out, "(@{})", self.vertex_name(p.source()));
            } else {
                let _ = write!(out, "({})", self.traversal(p));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::fixtures::*;
    use alloc::vec;

    fn v(q: &Quiver, terms: &[(i64, &str)]) -> PathVector {
        PathVector::normal_form(terms.iter().map(|&(c, w)| (scalar(c), p(q, w)))).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let q = six_vertex();
        let r = v(&q, &[(1, "ha"), (1, "hgfec")]);
        assert_eq!(q.written_vector(&r), "ha+hgfec");
        assert_eq!(q.format_vector(&r), "1*(a h) + 1*(c e f g h)");
        assert!(v(&q, &[(1, "gb"), (-1, "gb")]).is_zero());
        let half =
            PathVector::normal_form([(ratio(1, 2), p(&q, "gb")), (ratio(1, 2), p(&q, "gb"))])
                .unwrap();
        assert_eq!(half, PathVector::from_path(p(&q, "gb")));
        assert_eq!(
            PathVector::normal_form([(scalar(1), p(&q, "gb")), (scalar(1), p(&q, "dc"))])
                .unwrap_err(),
            Error::NotParallel
        );
        assert_eq!(
            PathVector::normal_form(vec![]).unwrap_err(),
            Error::EmptyTerms
        );
    }

    #[test]
    fn coefficients() {
        let q = six_vertex();
        let r = v(&q, &[(1, "ha"), (1, "hgfec")]);
        assert_eq!(r.coefficient(&p(&q, "hgfec")), scalar(1));
        assert_eq!(r.coefficient(&p(&q, "hgb")), scalar(0));
        let s = v(&q, &[(1, "a"), (-1, "gfec")]);
        assert_eq!(s.coefficient(&p(&q, "gfec")), scalar(-1));
        assert_eq!(s.leading_path(), Some(&p(&q, "a")));
    }

    #[test]
    fn subexpressions_of_binomial() {
        let q = four_vertex();
        let r = v(&q, &[(1, "da"), (-1, "dcb")]);
        let subs: Vec<String> = r
            .subexpressions(20)
            .unwrap()
            .iter()
            .map(|s| q.written_vector(s))
            .collect();
        assert_eq!(subs, ["0", "-dcb", "da", "da-dcb"]);
        let zero = PathVector::zero(q.vertex("1").unwrap(), q.vertex("4").unwrap());
        assert_eq!(zero.subexpressions(20).unwrap(), vec![zero.clone()]);
        assert!(matches!(r.subexpressions(1), Err(Error::Capacity { .. })));
    }

    #[test]
    fn concatenation_examples() {
        let q = six_vertex();
        let r = v(&q, &[(1, "b"), (1, "fec")]);
        let g = v(&q, &[(1, "g")]);
        assert_eq!(q.written_vector(&r.concatenate(&g).unwrap()), "gb+gfec");
        let e = PathVector::from_path(Path::stationary(q.vertex("1").unwrap()));
        assert_eq!(e.concatenate(&r).unwrap(), r);
        let hg = v(&q, &[(1, "hg")]);
        assert_eq!(
            q.written_vector(&v(&q, &[(1, "dc")]).concatenate(&hg).unwrap()),
            "hgdc"
        );
        assert!(g.concatenate(&r).is_err());
    }
}
