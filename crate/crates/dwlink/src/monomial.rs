//! Generalized permutation matrices: one root-of-unity entry per row and
//! column, stored as a target-index array plus phase exponents mod `N`.
//! Every operator in the engine (irrep images, braiding, braid words) has
//! this form, so composition, inversion and traces stay exact and `O(dim)`.

use crate::cyclo::{Cyclo, CycloRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOperator {
    order: u32,
    target: Vec<u32>,
    phase: Vec<u32>,
}

impl MonomialOperator {
    /// Builds from a target bijection and phase exponents (mod `order`).
    pub fn new(order: u32, target: Vec<u32>, phase: Vec<u32>) -> Self {
        debug_assert_eq!(target.len(), phase.len());
        debug_assert!(phase.iter().all(|&p| p < order));
        debug_assert!({
            let mut seen = vec![false; target.len()];
            target.iter().all(|&t| {
                let fresh = !seen[t as usize];
                seen[t as usize] = true;
                fresh
            })
        });
        MonomialOperator {
            order,
            target,
            phase,
        }
    }

    pub fn identity(dim: usize, order: u32) -> Self {
        MonomialOperator {
            order,
            target: (0..dim as u32).collect(),
            phase: vec![0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Image index of basis vector `src`.
    pub fn target(&self, src: usize) -> usize {
        self.target[src] as usize
    }

    /// Phase exponent on basis vector `src`.
    pub fn phase(&self, src: usize) -> u32 {
        self.phase[src]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Self) -> Self {
        debug_assert_eq!(self.order, first.order);
        debug_assert_eq!(self.dim(), first.dim());
        let dim = self.dim();
        let mut target = vec![0u32; dim];
        let mut phase = vec![0u32; dim];
        for s in 0..dim {
            let mid = first.target[s] as usize;
            target[s] = self.target[mid];
            phase[s] = (first.phase[s] + self.phase[mid]) % self.order;
        }
        MonomialOperator {
            order: self.order,
            target,
            phase,
        }
    }

    pub fn inverse(&self) -> Self {
        let dim = self.dim();
        let mut target = vec![0u32; dim];
        let mut phase = vec![0u32; dim];
        for s in 0..dim {
            let t = self.target[s] as usize;
            target[t] = s as u32;
            phase[t] = (self.order - self.phase[s]) % self.order;
        }
        MonomialOperator {
            order: self.order,
            target,
            phase,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.target.iter().enumerate().all(|(s, &t)| t as usize == s)
            && self.phase.iter().all(|&p| p == 0)
    }

    /// Exact matrix trace: the sum of `ζ^phase` over fixed basis lines.
    pub fn trace(&self, ring: &CycloRing) -> Cyclo {
        debug_assert_eq!(ring.order(), self.order as usize);
        let mut tr = ring.zero();
        for s in 0..self.dim() {
            if self.target[s] as usize == s {
                let mut one = ring.root(self.phase[s] as i64);
                std::mem::swap(&mut one, &mut tr);
                ring.add_assign(&mut tr, &one);
            }
        }
        tr
    }

    /// Scalar multiplication by `ζ^e`.
    pub fn phase_shifted(&self, e: u32) -> Self {
        MonomialOperator {
            order: self.order,
            target: self.target.clone(),
            phase: self.phase.iter().map(|&p| (p + e) % self.order).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let a = MonomialOperator::new(12, vec![1, 2, 0], vec![3, 4, 5]);
        let b = MonomialOperator::new(12, vec![2, 0, 1], vec![1, 0, 11]);
        let ab = a.compose(&b);
        // b sends 0 -> 2 with phase 1, then a sends 2 -> 0 with phase 5
        assert_eq!(ab.target(0), 0);
        assert_eq!(ab.phase(0), 6);
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(a.inverse().compose(&a).is_identity());
    }

    #[test]
    fn trace_counts_fixed_lines() {
        let ring = CycloRing::new(275);
        let op = MonomialOperator::new(275, vec![0, 2, 1, 3], vec![10, 0, 0, 265]);
        let tr = ring.canonicalize(&op.trace(&ring));
        let mut want = ring.zero();
        let r10 = ring.root(10);
        ring.add_assign(&mut want, &r10);
        let r265 = ring.root(265);
        ring.add_assign(&mut want, &r265);
        assert_eq!(tr, ring.canonicalize(&want));
    }
}
