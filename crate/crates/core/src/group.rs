//! Finitely presented groups: reduced words, abelian invariants and bounded
//! Tietze simplification.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::mem;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inverted(self) -> Letter {
        Letter::new(self.generator, !self.inverse)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters).reduced()
    }

    /// Free reduction.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free and cyclic reduction.
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.reduced().0;
        while w.len() >= 2 && w[0] == w[w.len() - 1].inverted() {
            w.pop();
            w.remove(0);
        }
        Word(w)
    }

    /// The smallest rotation of the word or of its inverse, after cyclic reduction.
    pub fn canonical_relator(&self) -> Word {
        let w = self.cyclically_reduced();
        let inv = w.inverse();
        let mut best = w.clone();
        for cand in [&w, &inv] {
            for k in 0..cand.len() {
                let mut rot = cand.0[k..].to_vec();
                rot.extend_from_slice(&cand.0[..k]);
                let rot = Word(rot);
                if rot < best {
                    best = rot;
                }
            }
        }
        best
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    pub fn occurrences(&self, generator: usize) -> usize {
        self.0.iter().filter(|l| l.generator == generator).count()
    }

    /// Replaces every occurrence of `generator` by `image` and drops `generator`
    /// from the numbering (higher indices shift down by one).
    fn substitute(&self, generator: usize, image: &Word) -> Word {
        let mut out = Vec::new();
        for &l in &self.0 {
            if l.generator == generator {
                let piece = if l.inverse {
                    image.inverse()
                } else {
                    image.clone()
                };
                out.extend(piece.0);
            } else {
                out.push(l);
            }
        }
        for l in &mut out {
            if l.generator > generator {
                l.generator -= 1;
            }
        }
        Word(out).reduced()
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", names[l.generator])
                } else {
                    names[l.generator].clone()
                }
            })
            .collect();
        parts.join(" ")
    }
}

/// Generators and relators. Relators are stored cyclically reduced,
/// canonicalized up to rotation and inversion, deduplicated and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

/// Invariants of the abelianization: `ℤ^free_rank ⊕ ⊕ ℤ/dᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Result of [`GroupPresentation::simplify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    /// The step budget ran out before no elimination was possible.
    pub exhausted: bool,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        let set: BTreeSet<Word> = relators
            .iter()
            .map(Word::canonical_relator)
            .filter(|w| !w.is_empty())
            .collect();
        GroupPresentation {
            generators,
            relators: set.into_iter().collect(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Free on its generators, certified by the absence of relators.
    pub fn is_certified_free(&self) -> bool {
        self.relators.is_empty()
    }

    pub fn is_certified_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn abelian_invariants(&self) -> AbelianInvariants {
        let n = self.generators.len();
        let matrix: Vec<Vec<BigInt>> = self
            .relators
            .iter()
            .map(|w| (0..n).map(|g| BigInt::from(w.exponent_sum(g))).collect())
            .collect();
        let diagonal = smith_diagonal(matrix, n);
        let rank = diagonal.len();
        AbelianInvariants {
            free_rank: n - rank,
            torsion: diagonal.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// Bounded Tietze eliminations: a relator in which some generator occurs
    /// exactly once expresses that generator through the others.
    pub fn simplify(&self, budget: usize) -> Simplified {
        let mut generators = self.generators.clone();
        let mut relators = self.relators.clone();
        let mut steps = 0;
        loop {
            let mut candidates: Vec<(usize, usize)> = Vec::new();
            for (ri, r) in relators.iter().enumerate() {
                if let Some(g) = (0..generators.len()).find(|&g| r.occurrences(g) == 1) {
                    candidates.push((ri, g));
                }
            }
            candidates.sort_by_key(|&(ri, g)| (relators[ri].len(), ri, g));
            let Some(&(ri, g)) = candidates.first() else {
                break;
            };
            if steps == budget {
                return Simplified {
                    presentation: GroupPresentation::new(generators, relators),
                    exhausted: true,
                };
            }
            steps += 1;
            let r = relators.remove(ri);
            let pos =
                r.0.iter()
                    .position(|l| l.generator == g)
                    .expect("occurs once");
            // Rotate to `g^ε · rest`, so g^ε = rest⁻¹.
            let mut rest = r.0[pos + 1..].to_vec();
            rest.extend_from_slice(&r.0[..pos]);
            let rest = Word(rest);
            let image = if r.0[pos].inverse {
                rest
            } else {
                rest.inverse()
            };
            relators = mem::take(&mut relators)
                .iter()
                .map(|w| w.substitute(g, &image))
                .collect();
            generators.remove(g);
            relators = GroupPresentation::new(Vec::new(), relators).relators;
        }
        Simplified {
            presentation: GroupPresentation::new(generators, relators),
            exhausted: false,
        }
    }

    pub fn display(&self) -> String {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| w.display(&self.generators))
            .collect();
        format!("< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// Nonzero diagonal of the Smith normal form of an integer matrix with `cols` columns.
fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // Smallest nonzero entry in the remaining block becomes the pivot.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        m.swap(t, pi);
        for row in &mut m {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let f = m[i][t].div_floor(&m[t][t]);
            if !f.is_zero() {
                for j in t..cols {
                    let v = &m[t][j] * &f;
                    m[i][j] -= v;
                }
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..cols {
            let f = m[t][j].div_floor(&m[t][t]);
            if !f.is_zero() {
                for i in t..rows {
                    let v = &m[i][t] * &f;
                    m[i][j] -= v;
                }
            }
            clean &= m[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // The pivot must divide the rest of the block.
        let mut spoiler = None;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    spoiler = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = spoiler {
            for j in t..cols {
                let v = m[i][j].clone();
                m[t][j] += v;
            }
            continue;
        }
        diagonal.push(m[t][t].abs());
        t += 1;
    }
    diagonal
}
