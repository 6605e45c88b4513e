use std::cmp::Ordering;

use super::{join, meet, ConceptFlavor, CutConcept};
use crate::fuzzy::{ContextError, CrispSet, Degree, FuzzyContext};

/// Concepts of one flavor and threshold with their order and operation
/// tables.
///
/// Concepts are sorted by extent size, then lexicographically by the
/// extent's member indices, so index 0 is always the bottom element.
#[derive(Debug, Clone)]
pub struct ConceptLattice {
    flavor: ConceptFlavor,
    threshold: Degree,
    concepts: Vec<CutConcept>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

fn extent_order(a: &CrispSet, b: &CrispSet) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

impl ConceptLattice {
    pub(super) fn build(
        ctx: &FuzzyContext,
        flavor: ConceptFlavor,
        threshold: Degree,
        mut concepts: Vec<CutConcept>,
    ) -> Result<Self, ContextError> {
        concepts.sort_by(|a, b| extent_order(&a.extent, &b.extent));
        let n = concepts.len();
        let leq = (0..n)
            .map(|i| (0..n).map(|j| concepts[i].extent.is_subset(&concepts[j].extent)).collect())
            .collect();
        let position = |c: &CutConcept| {
            concepts
                .iter()
                .position(|x| x.extent == c.extent && x.intent == c.intent)
                .expect("concept set is closed under meet and join")
        };
        let mut meet_t = vec![vec![0; n]; n];
        let mut join_t = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                meet_t[i][j] = position(&meet(ctx, &concepts[i], &concepts[j])?);
                join_t[i][j] = position(&join(ctx, &concepts[i], &concepts[j])?);
            }
        }
        Ok(ConceptLattice { flavor, threshold, concepts, leq, meet: meet_t, join: join_t })
    }

    pub fn flavor(&self) -> ConceptFlavor {
        self.flavor
    }

    pub fn threshold(&self) -> Degree {
        self.threshold
    }

    pub fn concepts(&self) -> &[CutConcept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// Extent inclusion.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn position(&self, extent: &CrispSet, intent: &CrispSet) -> Option<usize> {
        self.concepts.iter().position(|c| &c.extent == extent && &c.intent == intent)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.concepts.len() - 1
    }

    /// Covering pairs `(lower, upper)` of the order: the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let between = (0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if !between {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Greatest lower bound of `i` and `j` read off the order relation alone.
    pub fn order_glb(&self, i: usize, j: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&k| self.leq[k][i] && self.leq[k][j]).collect();
        lower.iter().copied().find(|&k| lower.iter().all(|&l| self.leq[l][k]))
    }

    /// Least upper bound of `i` and `j` read off the order relation alone.
    pub fn order_lub(&self, i: usize, j: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&k| self.leq[i][k] && self.leq[j][k]).collect();
        upper.iter().copied().find(|&k| upper.iter().all(|&l| self.leq[k][l]))
    }

    /// A finite non-empty poset is a complete lattice iff every pair has a
    /// glb and a lub; additionally the operation tables must agree with them.
    pub fn is_complete_lattice(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        (0..self.len()).all(|i| {
            (0..self.len()).all(|j| {
                self.order_glb(i, j) == Some(self.meet[i][j]) && self.order_lub(i, j) == Some(self.join[i][j])
            })
        })
    }
}
