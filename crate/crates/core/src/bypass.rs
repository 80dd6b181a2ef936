//! Bypasses, double bypasses, arrow replacement and derived paths.

use alloc::vec::Vec;

use crate::path::Path;
use crate::quiver::{Arrow, Quiver};
use crate::{Error, Result};

/// A pair `(α, u)` of an arrow and a different path parallel to it.
///
/// The derived order is the bypass order: first the arrow as a length-one path
/// (weight, then arrow rank), then the path.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bypass {
    arrow_weight: u32,
    arrow: Arrow,
    path: Path,
}

impl Bypass {
    pub(crate) fn from_parts(arrow: Arrow, arrow_weight: u32, path: Path) -> Self {
        Bypass {
            arrow_weight,
            arrow,
            path,
        }
    }

    pub fn arrow(&self) -> Arrow {
        self.arrow
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

/// A double bypass `(α, u, β, v)` with the factorization `u = u₂ β u₁`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoubleBypass {
    pub outer: Bypass,
    pub inner: Bypass,
    /// `u₁`: the part of `u` traversed before `β`.
    pub before: Path,
    /// `u₂`: the part of `u` traversed after `β`.
    pub after: Path,
}

impl DoubleBypass {
    /// `u₂ v u₁`.
    pub fn replaced(&self) -> Path {
        self.before
            .then(self.inner.path())
            .and_then(|p| p.then(&self.after))
            .expect("factorization composes")
    }
}

impl Quiver {
    /// All double bypasses, sorted by outer then inner bypass.
    pub fn double_bypasses(&self) -> Result<Vec<DoubleBypass>> {
        self.require_triangular_simple()?;
        let all = self.bypasses()?;
        let mut out = Vec::new();
        for outer in &all {
            for inner in &all {
                if let Some(pos) = outer.path().position(inner.arrow()) {
                    let u = outer.path();
                    out.push(DoubleBypass {
                        outer: outer.clone(),
                        inner: inner.clone(),
                        before: self.subpath(u, 0..pos),
                        after: self.subpath(u, pos + 1..u.len()),
                    });
                }
            }
        }
        Ok(out)
    }

    /// `u₂ v u₁` where `u = u₂ β u₁`.
    pub fn replace_arrow(&self, u: &Path, beta: Arrow, v: &Path) -> Result<Path> {
        let pos = u
            .position(beta)
            .ok_or_else(|| Error::ArrowNotInPath(self.label(beta).into()))?;
        if !v.is_parallel_to(&self.arrow_path(beta)) {
            return Err(Error::NotParallel);
        }
        self.subpath(u, 0..pos)
            .then(v)?
            .then(&self.subpath(u, pos + 1..u.len()))
    }

    /// The order `t` such that `v` is derived of `u` of order `t`, if any.
    ///
    /// `v` passes through every vertex of `u` in the same order; the segments
    /// of `v` between consecutive vertices of `u` that differ from the
    /// corresponding arrow are the replaced arrows.
    pub fn derivation_order(&self, u: &Path, v: &Path) -> Result<Option<usize>> {
        self.require_triangular_simple()?;
        if !u.is_parallel_to(v) {
            return Err(Error::NotParallel);
        }
        let mut v_vertices = Vec::with_capacity(v.len() + 1);
        v_vertices.push(v.source());
        v_vertices.extend(v.arrows().iter().map(|&a| self.target(a)));
        let mut pos = 0usize;
        let mut order = 0usize;
        for &alpha in u.arrows() {
            let next = self.target(alpha);
            let Some(offset) = v_vertices[pos + 1..].iter().position(|&x| x == next) else {
                return Ok(None);
            };
            let end = pos + 1 + offset;
            if !(end == pos + 1 && v.arrows()[pos] == alpha) {
                order += 1;
            }
            pos = end;
        }
        Ok((pos == v.len()).then_some(order))
    }
}
