//! Paths and walks.
//!
//! A [`Path`] stores its arrows in traversal order (source to target). The
//! written notation used for display (`gfec` for `c`, then `e`, `f`, `g`) is
//! the reverse of the stored order.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::quiver::{Arrow, Vertex};
use crate::{Error, Result};

/// A path in a quiver.
///
/// Paths carry their weight (the sum of the bypass counts of their arrows) so
/// that the derived [`Ord`] is the weight order on nontrivial paths: first by
/// weight, then lexicographically on the written (right-to-left) arrow
/// sequence, a proper prefix being smaller. Stationary paths sort first.
///
/// Paths are built by a [`Quiver`](crate::Quiver); combining paths of
/// different quivers is meaningless.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: Vertex,
    target: Vertex,
    weight: u32,
    arrows: Vec<Arrow>,
}

impl Path {
    pub(crate) fn from_parts(
        source: Vertex,
        target: Vertex,
        weight: u32,
        arrows: Vec<Arrow>,
    ) -> Self {
        Path {
            source,
            target,
            weight,
            arrows,
        }
    }

    /// The stationary path `e_x`.
    pub fn stationary(vertex: Vertex) -> Self {
        Path::from_parts(vertex, vertex, 0, Vec::new())
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    /// Arrows in traversal order.
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Sum of the arrow weights.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_parallel_to(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }

    pub fn contains(&self, arrow: Arrow) -> bool {
        self.arrows.contains(&arrow)
    }

    /// Index of `arrow` in traversal order.
    pub fn position(&self, arrow: Arrow) -> Option<usize> {
        self.arrows.iter().position(|&a| a == arrow)
    }

    /// `self` followed by `next`; in written notation this is `next · self`.
    pub fn then(&self, next: &Path) -> Result<Path> {
        if self.target != next.source {
            return Err(Error::NotComposable(alloc::format!(
                "path ends at vertex #{} but next starts at #{}",
                self.target.index(),
                next.source.index()
            )));
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() + next.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&next.arrows);
        Ok(Path::from_parts(
            self.source,
            next.target,
            self.weight + next.weight,
            arrows,
        ))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| self.arrows.iter().rev().cmp(other.arrows.iter().rev()))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

/// A walk: a path in the doubled quiver where every arrow also has a formal inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    source: Vertex,
    target: Vertex,
    letters: Vec<(Arrow, Direction)>,
}

impl Walk {
    pub(crate) fn from_parts(
        source: Vertex,
        target: Vertex,
        letters: Vec<(Arrow, Direction)>,
    ) -> Self {
        Walk {
            source,
            target,
            letters,
        }
    }

    pub fn from_path(path: &Path) -> Self {
        Walk {
            source: path.source,
            target: path.target,
            letters: path
                .arrows
                .iter()
                .map(|&a| (a, Direction::Forward))
                .collect(),
        }
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    pub fn letters(&self) -> &[(Arrow, Direction)] {
        &self.letters
    }

    pub fn inverse(&self) -> Walk {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|&(a, d)| {
                let d = match d {
                    Direction::Forward => Direction::Inverse,
                    Direction::Inverse => Direction::Forward,
                };
                (a, d)
            })
            .collect();
        Walk {
            source: self.target,
            target: self.source,
            letters,
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Walk) -> Result<Walk> {
        if self.target != next.source {
            return Err(Error::NotComposable("walk endpoints differ".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&next.letters);
        Ok(Walk {
            source: self.source,
            target: next.target,
            letters,
        })
    }
}
