//! The weight order on nontrivial paths and on bypasses.
//!
//! `W(α)` is the number of bypasses of `α`, `W(u)` the sum over the arrows
//! of `u`. Paths compare by weight, then lexicographically on their written
//! (right-to-left) arrow sequence with the arrow order, a proper prefix being
//! smaller. Bypasses compare by arrow (as a length-one path), then by path.

use core::cmp::Ordering;

use crate::bypass::Bypass;
use crate::path::Path;
use crate::quiver::{Arrow, Quiver};
use crate::{Error, Result};

/// The order attached to an acyclic quiver without multiple arrows.
#[derive(Clone, Copy, Debug)]
pub struct PathOrder<'q> {
    quiver: &'q Quiver,
}

impl<'q> PathOrder<'q> {
    pub fn new(quiver: &'q Quiver) -> Result<Self> {
        quiver.require_triangular_simple()?;
        Ok(PathOrder { quiver })
    }

    pub fn quiver(&self) -> &'q Quiver {
        self.quiver
    }

    pub fn arrow_weight(&self, a: Arrow) -> u32 {
        self.quiver.arrow_weight(a)
    }

    pub fn weight(&self, u: &Path) -> Result<u32> {
        if u.is_stationary() {
            return Err(Error::StationaryPath);
        }
        Ok(u.weight())
    }

    pub fn compare_paths(&self, u: &Path, v: &Path) -> Result<Ordering> {
        if u.is_stationary() || v.is_stationary() {
            return Err(Error::StationaryPath);
        }
        Ok(u.cmp(v))
    }

    pub fn compare_bypasses(&self, p: &Bypass, q: &Bypass) -> Ordering {
        p.cmp(q)
    }
}
