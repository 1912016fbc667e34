//! Colored braid-group representations and link invariants by trace closure.
//!
//! A braid on `n` strands, with an anyon label per strand, acts on the tensor
//! product of the underlying spaces. Labels travel with the strands, so the
//! space is reshaped after every letter; the composite is accumulated as a
//! single monomial operator on the initial space. The closure invariant is
//! its plain matrix trace (blackboard framing, no writhe correction).

use crate::anyon::Category;
use crate::braid::BraidWord;
use crate::cyclo::{CanonicalCyclo, Cyclo};
use crate::monomial::MonomialOperator;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("labeling is not constant on closure components")]
    NotClosed,
    #[error("expected {expected} strand labels, got {got}")]
    WrongLabelCount { expected: usize, got: usize },
    #[error("expected {expected} component labels, got {got}")]
    WrongComponentCount { expected: usize, got: usize },
    #[error("links with {0} components exceed the supported tensor order of 3")]
    TooManyComponents(usize),
}

/// Assignment of one anyon index per closure component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub per_component: Vec<usize>,
}

impl ComponentLabeling {
    /// Expands to per-strand labels via the braid's component partition.
    pub fn strand_labels(&self, braid: &BraidWord) -> Result<Vec<usize>, RepError> {
        let comps = braid.components();
        if comps.len() != self.per_component.len() {
            return Err(RepError::WrongComponentCount {
                expected: comps.len(),
                got: self.per_component.len(),
            });
        }
        let mut labels = vec![0usize; braid.strands()];
        for (ci, cycle) in comps.iter().enumerate() {
            for &s in cycle {
                labels[s] = self.per_component[ci];
            }
        }
        Ok(labels)
    }
}

/// The braid-word representation on the labeled tensor product: returns the
/// accumulated operator (initial space → final space, same total dimension)
/// and the label sequence at the top of the braid.
pub fn represent(
    cat: &Category,
    braid: &BraidWord,
    strand_labels: &[usize],
) -> Result<(MonomialOperator, Vec<usize>), RepError> {
    if strand_labels.len() != braid.strands() {
        return Err(RepError::WrongLabelCount {
            expected: braid.strands(),
            got: strand_labels.len(),
        });
    }
    let order = cat.ring().order() as u32;
    let mut dims: Vec<usize> = strand_labels.iter().map(|&l| cat.anyon(l).dim).collect();
    let total: usize = dims.iter().product();
    let mut labels = strand_labels.to_vec();
    let mut tgt: Vec<u32> = (0..total as u32).collect();
    let mut ph: Vec<u32> = vec![0; total];
    for letter in braid.letters() {
        let s = letter.index - 1;
        let (x, y) = (labels[s], labels[s + 1]);
        let pair = cat.braiding(x, y, letter.positive);
        let dpair = dims[s] * dims[s + 1];
        let dpost: usize = dims[s + 2..].iter().product();
        let block = dpair * dpost;
        for i in 0..total {
            let cur = tgt[i] as usize;
            let pre = cur / block;
            let rem = cur % block;
            let pr = rem / dpost;
            let post = rem % dpost;
            tgt[i] = ((pre * dpair + pair.target(pr)) * dpost + post) as u32;
            ph[i] = (ph[i] + pair.phase(pr)) % order;
        }
        labels.swap(s, s + 1);
        dims.swap(s, s + 1);
    }
    Ok((MonomialOperator::new(order, tgt, ph), labels))
}

/// Trace of the closed-up braid with the given per-strand labels. Errors
/// unless the labeling is constant on closure components (equivalently, the
/// top label sequence returns to the bottom one).
pub fn closure_invariant(
    cat: &Category,
    braid: &BraidWord,
    strand_labels: &[usize],
) -> Result<Cyclo, RepError> {
    let (op, top) = represent(cat, braid, strand_labels)?;
    if top != strand_labels {
        return Err(RepError::NotClosed);
    }
    Ok(op.trace(cat.ring()))
}

/// A link invariant: one cyclotomic integer per anyon labeling of the
/// closure components, in the fixed 49-label basis order. Entries are
/// interned: `entries` holds indices into `values`.
#[derive(Debug, Clone)]
pub struct InvariantTensor {
    pub link_id: String,
    pub u: u32,
    /// number of link components (tensor order, 1..=3)
    pub order: usize,
    pub values: Vec<CanonicalCyclo>,
    pub entries: Vec<u32>,
}

impl InvariantTensor {
    pub fn rank(&self) -> usize {
        49
    }

    /// Entry at a component-label tuple.
    pub fn entry(&self, labels: &[usize]) -> &CanonicalCyclo {
        &self.values[self.entries[flat_index(labels, self.rank())] as usize]
    }
}

pub(crate) fn flat_index(labels: &[usize], rank: usize) -> usize {
    labels.iter().fold(0, |acc, &l| acc * rank + l)
}

pub(crate) fn unflatten(mut idx: usize, order: usize, rank: usize) -> Vec<usize> {
    let mut out = vec![0usize; order];
    for slot in (0..order).rev() {
        out[slot] = idx % rank;
        idx /= rank;
    }
    out
}

/// Computes the full invariant tensor of a link at one cocycle parameter.
/// The labeling sweep is data-parallel with a deterministic merge.
pub fn invariant_tensor(
    cat: &Category,
    link_id: &str,
    braid: &BraidWord,
) -> Result<InvariantTensor, RepError> {
    let comps = braid.components();
    let order = comps.len();
    if order > 3 {
        return Err(RepError::TooManyComponents(order));
    }
    let rank = cat.rank();
    let total = rank.pow(order as u32);
    let canon: Vec<CanonicalCyclo> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let per_component = unflatten(flat, order, rank);
            let mut strands = vec![0usize; braid.strands()];
            for (ci, cycle) in comps.iter().enumerate() {
                for &s in cycle {
                    strands[s] = per_component[ci];
                }
            }
            let tr = closure_invariant(cat, braid, &strands)
                .expect("component-constant labelings close up");
            cat.ring().canonicalize(&tr)
        })
        .collect();
    let mut values = Vec::new();
    let mut ids = std::collections::HashMap::new();
    let mut entries = Vec::with_capacity(total);
    for c in canon {
        let next = values.len() as u32;
        let id = *ids.entry(c.clone()).or_insert_with(|| {
            values.push(c);
            next
        });
        entries.push(id);
    }
    Ok(InvariantTensor {
        link_id: link_id.to_string(),
        u: cat.u(),
        order,
        values,
        entries,
    })
}

/// Braid-relation check `ρ(σ₁σ₂σ₁) = ρ(σ₂σ₁σ₂)` on three-strand colorings.
/// `colorings = None` exhausts all `rank³` triples; otherwise that many
/// deterministically sampled triples are checked.
pub fn verify_braid_relation(cat: &Category, colorings: Option<usize>, seed: u64) -> bool {
    let lhs_word = BraidWord::parse_gittings("aba", 3).expect("static word");
    let rhs_word = BraidWord::parse_gittings("bab", 3).expect("static word");
    let rank = cat.rank();
    let check = |labels: &[usize; 3]| -> bool {
        let lhs = represent(cat, &lhs_word, labels).expect("label count matches");
        let rhs = represent(cat, &rhs_word, labels).expect("label count matches");
        lhs == rhs
    };
    match colorings {
        None => (0..rank * rank * rank).into_par_iter().all(|flat| {
            check(&[flat / (rank * rank), flat / rank % rank, flat % rank])
        }),
        Some(count) => {
            let mut state = seed | 1;
            let mut next = move || {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (state >> 33) as usize
            };
            let triples: Vec<[usize; 3]> = (0..count)
                .map(|_| [next() % rank, next() % rank, next() % rank])
                .collect();
            triples.par_iter().all(check)
        }
    }
}

/// Markov-I spot check: the closure invariant is unchanged when the word is
/// replaced by a conjugate `c⁻¹·w·c`. Strand `s` of `w` sits at position
/// `π_c(s)` of the conjugate, so labels are transported along `π_c`.
/// Conjugators and labelings are drawn from a deterministic generator.
pub fn verify_markov_conjugation(
    cat: &Category,
    braid: &BraidWord,
    samples: usize,
    seed: u64,
) -> Result<bool, RepError> {
    let mut state = seed | 1;
    let mut next = move |m: usize| {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 33) as usize) % m
    };
    let comps = braid.components();
    let n = braid.strands();
    for _ in 0..samples {
        let letters = "abAB".as_bytes();
        let cword: String = (0..next(5) + 1)
            .map(|_| letters[next(if n >= 3 { 4 } else { 2 })] as char)
            .collect();
        let c = BraidWord::parse_gittings(&cword, n).expect("generated word is valid");
        let conj = braid.conjugated_by(&c);
        let labeling = ComponentLabeling {
            per_component: (0..comps.len()).map(|_| next(cat.rank())).collect(),
        };
        let strands = labeling.strand_labels(braid)?;
        let pc = c.permutation();
        let mut strands_conj = vec![0usize; n];
        for (s, &l) in strands.iter().enumerate() {
            strands_conj[pc[s]] = l;
        }
        let t1 = closure_invariant(cat, braid, &strands)?;
        let t2 = closure_invariant(cat, &conj, &strands_conj)?;
        if cat.ring().canonicalize(&t1) != cat.ring().canonicalize(&t2) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Invariant tensors of one link across all cocycle parameters, interned in
/// a single shared dictionary so cross-parameter comparisons are index
/// comparisons.
#[derive(Debug, Clone)]
pub struct LinkInvariantSet {
    pub link_id: String,
    pub order: usize,
    pub writhe: i64,
    pub dict: Vec<CanonicalCyclo>,
    /// `per_u[u]` is the tensor of entry ids for parameter `u`
    pub per_u: Vec<Vec<u32>>,
}

impl LinkInvariantSet {
    pub fn compute(
        cats: &[Category],
        link_id: &str,
        braid: &BraidWord,
    ) -> Result<Self, RepError> {
        let mut dict: Vec<CanonicalCyclo> = Vec::new();
        let mut ids: std::collections::HashMap<CanonicalCyclo, u32> =
            std::collections::HashMap::new();
        let mut per_u = Vec::with_capacity(cats.len());
        let mut order = 1;
        for cat in cats {
            let tensor = invariant_tensor(cat, link_id, braid)?;
            order = tensor.order;
            let remap: Vec<u32> = tensor
                .values
                .iter()
                .map(|v| {
                    let next = dict.len() as u32;
                    *ids.entry(v.clone()).or_insert_with(|| {
                        dict.push(v.clone());
                        next
                    })
                })
                .collect();
            per_u.push(tensor.entries.iter().map(|&e| remap[e as usize]).collect());
        }
        Ok(LinkInvariantSet {
            link_id: link_id.to_string(),
            order,
            writhe: braid.writhe(),
            dict,
            per_u,
        })
    }

    pub fn rank(&self) -> usize {
        49
    }

    pub fn entry(&self, u: usize, labels: &[usize]) -> &CanonicalCyclo {
        &self.dict[self.per_u[u][flat_index(labels, self.rank())] as usize]
    }

    /// Materializes the single-parameter tensor view.
    pub fn tensor(&self, u: usize) -> InvariantTensor {
        InvariantTensor {
            link_id: self.link_id.clone(),
            u: u as u32,
            order: self.order,
            values: self.dict.clone(),
            entries: self.per_u[u].clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon::{AnyonLabel, Category};
    use crate::group::GroupSpec;

    fn cat(u: u32) -> Category {
        Category::build(GroupSpec::default(), u).unwrap()
    }

    fn idx(cat: &Category, s: &str) -> usize {
        cat.index_of(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn identity_braid_gives_identity() {
        let cat = cat(0);
        let braid = BraidWord::empty(2).unwrap();
        let labels = [idx(&cat, "B_1_0"), idx(&cat, "A_1_3")];
        let (op, top) = represent(&cat, &braid, &labels).unwrap();
        assert!(op.is_identity());
        assert_eq!(top, labels);
    }

    #[test]
    fn unknot_trace_is_quantum_dimension() {
        let cat = cat(2);
        let braid = BraidWord::empty(1).unwrap();
        for name in ["I_0", "I_5", "A_2_4", "B_1_0"] {
            let l = idx(&cat, name);
            let tr = closure_invariant(&cat, &braid, &[l]).unwrap();
            let d = cat.anyon(l).qdim as i64;
            assert_eq!(cat.ring().canonicalize(&tr).as_integer(), Some(d));
        }
    }

    #[test]
    fn hopf_with_unit_strand_is_transparent() {
        let cat = cat(1);
        let braid = BraidWord::parse_gittings("aa", 2).unwrap();
        let unit = idx(&cat, "I_0");
        for y in 0..cat.rank() {
            let tr = closure_invariant(&cat, &braid, &[unit, y]).unwrap();
            let d = cat.anyon(y).qdim as i64;
            assert_eq!(cat.ring().canonicalize(&tr).as_integer(), Some(d));
        }
    }

    #[test]
    fn braid_relation_on_sampled_colorings() {
        // full 49^3 exhaustion at u=1 runs in the acceptance suite
        let cat = cat(1);
        let s1s2s1 = BraidWord::parse_gittings("aba", 3).unwrap();
        let s2s1s2 = BraidWord::parse_gittings("bab", 3).unwrap();
        let picks = [0usize, 5, 7, 18, 29, 34, 41, 48];
        for &x in &picks {
            for &y in &picks {
                for &z in &picks {
                    let lhs = represent(&cat, &s1s2s1, &[x, y, z]).unwrap();
                    let rhs = represent(&cat, &s2s1s2, &[x, y, z]).unwrap();
                    assert_eq!(lhs.0, rhs.0);
                    assert_eq!(lhs.1, rhs.1);
                }
            }
        }
    }

    #[test]
    fn figure_eight_all_b_traces() {
        // zero writhe: the all-B_{k,s} trace is the coloring count,
        // 11 for k=1,4 and 121 for k=2,3, at every u and s
        let fig8 = BraidWord::parse_gittings("AbAb", 3).unwrap();
        for u in [0, 1, 3] {
            let cat = cat(u);
            for (k, want) in [(1u32, 11i64), (2, 121), (3, 121), (4, 11)] {
                for s in 0..5 {
                    let l = cat.index_of(AnyonLabel::B { k, s }).unwrap();
                    let tr = closure_invariant(&cat, &fig8, &[l, l, l]).unwrap();
                    assert_eq!(cat.ring().canonicalize(&tr).as_integer(), Some(want));
                }
            }
        }
    }

    #[test]
    fn labeling_must_be_constant_on_components() {
        let cat = cat(0);
        let fig8 = BraidWord::parse_gittings("AbAb", 3).unwrap(); // a knot
        let r = closure_invariant(&cat, &fig8, &[1, 2, 3]);
        assert_eq!(r.unwrap_err(), RepError::NotClosed);
    }

    #[test]
    fn component_labeling_expansion() {
        let braid = BraidWord::parse_gittings("AABaB", 3).unwrap(); // 2 components
        let lab = ComponentLabeling {
            per_component: vec![7, 30],
        };
        let strands = lab.strand_labels(&braid).unwrap();
        assert_eq!(strands.len(), 3);
        let comps = braid.components();
        for (ci, cycle) in comps.iter().enumerate() {
            for &s in cycle {
                assert_eq!(strands[s], lab.per_component[ci]);
            }
        }
        let bad = ComponentLabeling {
            per_component: vec![7],
        };
        assert!(bad.strand_labels(&braid).is_err());
    }

    #[test]
    fn markov_conjugation_invariance_sampled() {
        let cat = cat(4);
        for word in ["AAbAb", "AbAb", "AABaB"] {
            let braid = BraidWord::parse_gittings(word, 3).unwrap();
            assert!(verify_markov_conjugation(&cat, &braid, 30, 0xd1ce).unwrap());
        }
    }
}
