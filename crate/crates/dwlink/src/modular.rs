//! Modular data, Verlinde fusion, and modular permutations.
//!
//! `S̃` is unnormalized (no division by the total dimension `D = |G|`), so
//! every entry stays in the cyclotomic integer ring: `S̃_{ab}` is the trace
//! closure of the Hopf braid `aa` with labels `(a, b)`, and
//! `S̃ · conj(S̃) = |G|² · Id` exactly. A modular permutation `ρ` between
//! parameters `(u_src, u_tgt)` satisfies
//! `S̃^{(tgt)}_{ρ(a)ρ(b)} = S̃^{(src)}_{ab}` and `T^{(tgt)}_{ρ(a)} = T^{(src)}_a`.
//!
//! Permutations are found two independent ways and cross-checked: the
//! block-structured enumeration of all T-respecting candidates filtered by
//! exact S̃-compatibility, and a backtracking matcher over all
//! `(d, θ)`-preserving bijections with row-by-row S̃ pruning.

use crate::anyon::Category;
use crate::braid::BraidWord;
use crate::cyclo::{CanonicalCyclo, CycloRing};
use crate::rep::{closure_invariant, LinkInvariantSet};
use rayon::prelude::*;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModularError {
    #[error("S-matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("unit row mismatch at column {0}")]
    UnitRow(usize),
    #[error("S conj(S) differs from |G|^2 Id at ({0}, {1})")]
    NotUnitary(usize, usize),
    #[error("Verlinde multiplicity at ({0}, {1}, {2}) is not a nonnegative integer")]
    BadFusion(usize, usize, usize),
    #[error("fusion does not split the dimension-{0} labels into blocks of {1}")]
    BadBlocks(u32, usize),
    #[error("structured filter and backtracking matcher disagree for ({0}, {1})")]
    MatcherDisagreement(u32, u32),
    #[error("permutation violates the defining equations for ({0}, {1})")]
    BadPermutation(u32, u32),
}

/// The Hopf-link braid: two strands, two positive crossings.
pub fn hopf_word() -> BraidWord {
    BraidWord::parse_gittings("aa", 2).expect("static word")
}

/// Unnormalized modular data of one category.
#[derive(Debug, Clone)]
pub struct ModularData {
    pub u: u32,
    rank: usize,
    /// canonical `S̃` entries, row-major
    s: Vec<CanonicalCyclo>,
    /// sparse cyclic-basis `S̃` entries, for exact products
    s_sparse: Vec<Vec<(u32, i64)>>,
    /// twist exponents mod N
    pub twists: Vec<u32>,
    pub dims: Vec<u32>,
}

impl ModularData {
    pub fn compute(cat: &Category) -> Self {
        let rank = cat.rank();
        let hopf = hopf_word();
        let ring = cat.ring();
        let cells: Vec<(CanonicalCyclo, Vec<(u32, i64)>)> = (0..rank * rank)
            .into_par_iter()
            .map(|cell| {
                let (a, b) = (cell / rank, cell % rank);
                let tr = closure_invariant(cat, &hopf, &[a, b]).expect("hopf closes");
                (ring.canonicalize(&tr), tr.sparse())
            })
            .collect();
        let (s, s_sparse) = cells.into_iter().unzip();
        ModularData {
            u: cat.u(),
            rank,
            s,
            s_sparse,
            twists: cat.anyons().iter().map(|a| a.twist).collect(),
            dims: cat.anyons().iter().map(|a| a.qdim).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn s(&self, a: usize, b: usize) -> &CanonicalCyclo {
        &self.s[a * self.rank + b]
    }

    /// Checks symmetry, the unit row, and `S̃ conj(S̃) = |G|² Id` exactly.
    pub fn verify_structure(&self, ring: &CycloRing) -> Result<(), ModularError> {
        let rank = self.rank;
        for a in 0..rank {
            for b in 0..a {
                if self.s(a, b) != self.s(b, a) {
                    return Err(ModularError::NotSymmetric(a, b));
                }
            }
        }
        for b in 0..rank {
            if self.s(0, b).as_integer() != Some(self.dims[b] as i64) {
                return Err(ModularError::UnitRow(b));
            }
        }
        let order_sq: i64 = {
            let d: i64 = self.dims.iter().map(|&d| (d * d) as i64).sum();
            d
        };
        let conj_sparse: Vec<Vec<(u32, i64)>> = self
            .s_sparse
            .iter()
            .map(|terms| conj_terms(terms, ring.order() as u32))
            .collect();
        let bad = (0..rank * rank).into_par_iter().find_any(|&cell| {
            let (a, c) = (cell / rank, cell % rank);
            let mut acc = vec![0i64; ring.order()];
            for x in 0..rank {
                ring.mul_sparse_into(
                    &mut acc,
                    &self.s_sparse[a * rank + x],
                    &conj_sparse[c * rank + x],
                    1,
                );
            }
            let want = if a == c { order_sq } else { 0 };
            ring.canonicalize_slice(&acc).as_integer() != Some(want)
        });
        match bad {
            Some(cell) => Err(ModularError::NotUnitary(cell / rank, cell % rank)),
            None => Ok(()),
        }
    }
}

fn conj_terms(terms: &[(u32, i64)], n: u32) -> Vec<(u32, i64)> {
    let mut out: Vec<(u32, i64)> = terms.iter().map(|&(e, c)| ((n - e) % n, c)).collect();
    out.sort_unstable();
    out
}

/// Fusion multiplicities `N_{ab}^c`, stored dense.
#[derive(Debug, Clone)]
pub struct FusionTable {
    rank: usize,
    n: Vec<u16>,
}

impl FusionTable {
    pub fn get(&self, a: usize, b: usize, c: usize) -> u16 {
        self.n[(a * self.rank + b) * self.rank + c]
    }
}

/// Verlinde formula, evaluated exactly in the ring:
/// `N_{ab}^c · D⁴ = Σ_x S̃_{ax} S̃_{bx} conj(S̃_{cx}) · (D²/d_x)` with
/// `D² = |G|²`. Errors if any multiplicity is not a nonnegative integer.
pub fn verlinde_fusion(md: &ModularData, ring: &CycloRing) -> Result<FusionTable, ModularError> {
    let rank = md.rank();
    let order_sq: i64 = md.dims.iter().map(|&d| (d * d) as i64).sum();
    let conj_sparse: Vec<Vec<(u32, i64)>> = md
        .s_sparse
        .iter()
        .map(|t| conj_terms(t, ring.order() as u32))
        .collect();
    let weights: Vec<i64> = md.dims.iter().map(|&d| order_sq / d as i64).collect();
    let denom = order_sq * order_sq;

    let rows: Vec<Result<Vec<u16>, ModularError>> = (0..rank * rank)
        .into_par_iter()
        .map(|ab| {
            let (a, b) = (ab / rank, ab % rank);
            if b < a {
                return Ok(Vec::new()); // filled from (b, a) by symmetry
            }
            let mut pair: Vec<Vec<(u32, i64)>> = Vec::with_capacity(rank);
            for x in 0..rank {
                let mut acc = vec![0i64; ring.order()];
                ring.mul_sparse_into(
                    &mut acc,
                    &md.s_sparse[a * rank + x],
                    &md.s_sparse[b * rank + x],
                    weights[x],
                );
                pair.push(
                    acc.iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(e, &c)| (e as u32, c))
                        .collect(),
                );
            }
            let mut row = Vec::with_capacity(rank);
            for c in 0..rank {
                let mut acc = vec![0i64; ring.order()];
                for x in 0..rank {
                    ring.mul_sparse_into(&mut acc, &pair[x], &conj_sparse[c * rank + x], 1);
                }
                let total = ring
                    .canonicalize_slice(&acc)
                    .as_integer()
                    .ok_or(ModularError::BadFusion(a, b, c))?;
                if total % denom != 0 || total < 0 {
                    return Err(ModularError::BadFusion(a, b, c));
                }
                row.push((total / denom) as u16);
            }
            Ok(row)
        })
        .collect();

    let mut n = vec![0u16; rank * rank * rank];
    for (ab, row) in rows.into_iter().enumerate() {
        let row = row?;
        let (a, b) = (ab / rank, ab % rank);
        if b < a {
            continue;
        }
        for c in 0..rank {
            n[(a * rank + b) * rank + c] = row[c];
            n[(b * rank + a) * rank + c] = row[c];
        }
    }
    Ok(FusionTable { rank, n })
}

/// Partition of the labels of dimension `block_dim` into fusion blocks:
/// orbits under tensoring with the invertible (dimension-1) labels.
pub fn fusion_blocks(
    fusion: &FusionTable,
    dims: &[u32],
    block_dim: u32,
    expected_block_size: usize,
) -> Result<Vec<Vec<usize>>, ModularError> {
    let rank = dims.len();
    let invertibles: Vec<usize> = (0..rank).filter(|&x| dims[x] == 1).collect();
    let members: Vec<usize> = (0..rank).filter(|&x| dims[x] == block_dim).collect();
    let mut assigned: HashMap<usize, usize> = HashMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &start in &members {
        if assigned.contains_key(&start) {
            continue;
        }
        let id = blocks.len();
        let mut frontier = vec![start];
        let mut block = vec![];
        while let Some(a) = frontier.pop() {
            if assigned.insert(a, id).is_some() {
                continue;
            }
            block.push(a);
            for &x in &invertibles {
                for &b in &members {
                    if fusion.get(x, a, b) > 0 && !assigned.contains_key(&b) {
                        frontier.push(b);
                    }
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks.sort_by_key(|b| b[0]);
    if blocks.iter().any(|b| b.len() != expected_block_size) {
        return Err(ModularError::BadBlocks(block_dim, expected_block_size));
    }
    Ok(blocks)
}

/// A label bijection transporting the modular data of `source_u` onto
/// `target_u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularPermutation {
    pub source_u: u32,
    pub target_u: u32,
    pub map: Vec<u8>,
}

impl ModularPermutation {
    pub fn apply(&self, label: usize) -> usize {
        self.map[label] as usize
    }
}

/// The paper's block-structured family of T-respecting candidate bijections
/// between two categories sharing twist spectra:
/// unit fixed; free permutations of the nontrivial invertibles and of the
/// trivial-twist dimension-5 labels; a swap bit per twist-paired
/// dimension-5 doublet; and whole-block moves of the top-dimension blocks.
pub struct TRespectingCandidates {
    rank: usize,
    base: Vec<u8>,
    dim1_src: Vec<usize>,
    dim1_tgt: Vec<usize>,
    triv_src: Vec<usize>,
    triv_tgt: Vec<usize>,
    /// aligned twist pairs: ([src1, src2], [tgt1, tgt2]) with equal twists
    pairs: Vec<([usize; 2], [usize; 2])>,
    /// each matching maps every top-dimension label (twist-uniquely)
    matchings: Vec<Vec<(usize, usize)>>,
}

const FOUR_PERMS: usize = 24;

fn nth_permutation4(mut k: usize) -> [usize; 4] {
    let mut pool = [0usize, 1, 2, 3];
    let mut out = [0usize; 4];
    for slot in 0..4 {
        let fact = [6, 2, 1, 1][slot];
        let pick = k / fact;
        k %= fact;
        out[slot] = pool[pick];
        for t in pick..3 - slot {
            pool[t] = pool[t + 1];
        }
    }
    out
}

impl TRespectingCandidates {
    pub fn build(
        src: &ModularData,
        tgt: &ModularData,
        src_blocks: &[Vec<usize>],
        tgt_blocks: &[Vec<usize>],
    ) -> Self {
        let rank = src.rank();
        let top_dim = *src.dims.iter().max().unwrap();
        let mid_dims = |md: &ModularData, pred: &dyn Fn(u32, u32) -> bool| -> Vec<usize> {
            (0..rank).filter(|&x| pred(md.dims[x], md.twists[x])).collect()
        };
        let dim1_src = mid_dims(src, &|d, _| d == 1)
            .into_iter()
            .filter(|&x| x != 0)
            .collect::<Vec<_>>();
        let dim1_tgt = mid_dims(tgt, &|d, _| d == 1)
            .into_iter()
            .filter(|&x| x != 0)
            .collect::<Vec<_>>();
        let mid = |md: &ModularData| {
            mid_dims(md, &|d, t| d > 1 && d < top_dim && t == 0)
        };
        let (triv_src, triv_tgt) = (mid(src), mid(tgt));

        // twist-paired middle-dimension labels
        let group_by_twist = |md: &ModularData| -> HashMap<u32, Vec<usize>> {
            let mut m: HashMap<u32, Vec<usize>> = HashMap::new();
            for x in 0..rank {
                if md.dims[x] > 1 && md.dims[x] < top_dim && md.twists[x] != 0 {
                    m.entry(md.twists[x]).or_default().push(x);
                }
            }
            m
        };
        let src_groups = group_by_twist(src);
        let tgt_groups = group_by_twist(tgt);
        let mut pairs = Vec::new();
        let mut twists: Vec<u32> = src_groups.keys().copied().collect();
        twists.sort_unstable();
        let mut pairable = src_groups.len() == tgt_groups.len();
        for tw in twists {
            match (src_groups.get(&tw), tgt_groups.get(&tw)) {
                (Some(s), Some(t)) if s.len() == 2 && t.len() == 2 => {
                    pairs.push(([s[0], s[1]], [t[0], t[1]]));
                }
                _ => pairable = false,
            }
        }

        // block matchings by twist multiset, with twist-determined element maps
        let block_twists = |md: &ModularData, blocks: &[Vec<usize>]| -> Vec<Vec<u32>> {
            blocks
                .iter()
                .map(|b| {
                    let mut t: Vec<u32> = b.iter().map(|&x| md.twists[x]).collect();
                    t.sort_unstable();
                    t
                })
                .collect()
        };
        let stw = block_twists(src, src_blocks);
        let ttw = block_twists(tgt, tgt_blocks);
        let mut matchings = Vec::new();
        if pairable && dim1_src.len() == dim1_tgt.len() && triv_src.len() == triv_tgt.len() {
            let nb = src_blocks.len();
            let mut used = vec![false; nb];
            let mut current = vec![0usize; nb];
            fn search(
                bi: usize,
                nb: usize,
                stw: &[Vec<u32>],
                ttw: &[Vec<u32>],
                used: &mut [bool],
                current: &mut [usize],
                out: &mut Vec<Vec<usize>>,
            ) {
                if bi == nb {
                    out.push(current.to_vec());
                    return;
                }
                for bt in 0..nb {
                    if !used[bt] && stw[bi] == ttw[bt] {
                        used[bt] = true;
                        current[bi] = bt;
                        search(bi + 1, nb, stw, ttw, used, current, out);
                        used[bt] = false;
                    }
                }
            }
            let mut raw = Vec::new();
            search(0, nb, &stw, &ttw, &mut used, &mut current, &mut raw);
            for assignment in raw {
                let mut full = Vec::new();
                let mut ok = true;
                for (bi, &bt) in assignment.iter().enumerate() {
                    for &sl in &src_blocks[bi] {
                        let mates: Vec<usize> = tgt_blocks[bt]
                            .iter()
                            .copied()
                            .filter(|&tl| tgt.twists[tl] == src.twists[sl])
                            .collect();
                        if mates.len() == 1 {
                            full.push((sl, mates[0]));
                        } else {
                            ok = false;
                        }
                    }
                }
                if ok {
                    matchings.push(full);
                }
            }
        }

        let mut base = vec![0u8; rank];
        base[0] = 0;
        TRespectingCandidates {
            rank,
            base,
            dim1_src,
            dim1_tgt,
            triv_src,
            triv_tgt,
            pairs,
            matchings,
        }
    }

    /// Number of candidates: `|dim1|! · |triv|! · 2^pairs · matchings`.
    pub fn count(&self) -> u64 {
        if self.matchings.is_empty() {
            return 0;
        }
        let fact = |n: usize| (1..=n as u64).product::<u64>();
        fact(self.dim1_src.len())
            * fact(self.triv_tgt.len())
            * (1u64 << self.pairs.len())
            * self.matchings.len() as u64
    }

    /// Materializes candidate number `idx` (mixed-radix decode). Only
    /// supports the default shape of four dim-1 and four trivial-twist
    /// labels, which is asserted.
    pub fn candidate(&self, idx: u64, map: &mut [u8]) {
        assert_eq!(self.dim1_src.len(), 4);
        assert_eq!(self.triv_src.len(), 4);
        let nm = self.matchings.len() as u64;
        let m_idx = (idx % nm) as usize;
        let rest = idx / nm;
        let mask = (rest % (1 << self.pairs.len())) as usize;
        let rest = rest >> self.pairs.len();
        let b_idx = (rest % FOUR_PERMS as u64) as usize;
        let a_idx = (rest / FOUR_PERMS as u64) as usize;

        map.copy_from_slice(&self.base);
        let pa = nth_permutation4(a_idx);
        for (slot, &src) in self.dim1_src.iter().enumerate() {
            map[src] = self.dim1_tgt[pa[slot]] as u8;
        }
        let pb = nth_permutation4(b_idx);
        for (slot, &src) in self.triv_src.iter().enumerate() {
            map[src] = self.triv_tgt[pb[slot]] as u8;
        }
        for (bit, ([s1, s2], [t1, t2])) in self.pairs.iter().enumerate() {
            if mask >> bit & 1 == 0 {
                map[*s1] = *t1 as u8;
                map[*s2] = *t2 as u8;
            } else {
                map[*s1] = *t2 as u8;
                map[*s2] = *t1 as u8;
            }
        }
        for &(sl, tl) in &self.matchings[m_idx] {
            map[sl] = tl as u8;
        }
    }
}

/// Interns the entries of both matrices so S̃-compatibility checks are
/// integer comparisons; check pairs are ordered most-discriminating first
/// (largest dimensions).
struct SCompatibilityGrid {
    rank: usize,
    ids_src: Vec<u32>,
    ids_tgt: Vec<u32>,
    check_pairs: Vec<(usize, usize)>,
}

impl SCompatibilityGrid {
    fn build(src: &ModularData, tgt: &ModularData) -> Self {
        fn intern<'a>(
            table: &mut HashMap<&'a CanonicalCyclo, u32>,
            v: &'a [CanonicalCyclo],
        ) -> Vec<u32> {
            let mut out = Vec::with_capacity(v.len());
            for c in v {
                let next = table.len() as u32;
                out.push(*table.entry(c).or_insert(next));
            }
            out
        }
        let rank = src.rank();
        let mut table: HashMap<&CanonicalCyclo, u32> = HashMap::new();
        let ids_src = intern(&mut table, &src.s);
        let ids_tgt = intern(&mut table, &tgt.s);
        let mut order: Vec<usize> = (0..rank).collect();
        order.sort_by_key(|&x| std::cmp::Reverse(src.dims[x]));
        let mut check_pairs = Vec::with_capacity(rank * (rank + 1) / 2);
        for ai in 0..rank {
            for bi in 0..=ai {
                check_pairs.push((order[ai], order[bi]));
            }
        }
        SCompatibilityGrid {
            rank,
            ids_src,
            ids_tgt,
            check_pairs,
        }
    }

    fn compatible(&self, map: &[u8]) -> bool {
        self.check_pairs.iter().all(|&(a, b)| {
            let (ta, tb) = (map[a] as usize, map[b] as usize);
            self.ids_tgt[ta * self.rank + tb] == self.ids_src[a * self.rank + b]
        })
    }
}

/// All `(d, θ)`-preserving bijections satisfying the S̃ equations, found by
/// depth-first search with row pruning. Independent of the block structure.
pub fn backtracking_permutations(src: &ModularData, tgt: &ModularData) -> Vec<Vec<u8>> {
    let rank = src.rank();
    let grid = SCompatibilityGrid::build(src, tgt);
    let candidates: Vec<Vec<u8>> = (0..rank)
        .map(|a| {
            (0..rank)
                .filter(|&b| src.dims[a] == tgt.dims[b] && src.twists[a] == tgt.twists[b])
                .map(|b| b as u8)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut assign = vec![0u8; rank];
    let mut used = vec![false; rank];
    fn dfs(
        a: usize,
        rank: usize,
        grid: &SCompatibilityGrid,
        candidates: &[Vec<u8>],
        assign: &mut [u8],
        used: &mut [bool],
        out: &mut Vec<Vec<u8>>,
    ) {
        if a == rank {
            out.push(assign.to_vec());
            return;
        }
        'next: for &b in &candidates[a] {
            if used[b as usize] {
                continue;
            }
            for a2 in 0..=a {
                let b2 = if a2 == a { b } else { assign[a2] };
                if grid.ids_tgt[b as usize * rank + b2 as usize]
                    != grid.ids_src[a * rank + a2]
                    || grid.ids_tgt[b2 as usize * rank + b as usize]
                        != grid.ids_src[a2 * rank + a]
                {
                    continue 'next;
                }
            }
            used[b as usize] = true;
            assign[a] = b;
            dfs(a + 1, rank, grid, candidates, assign, used, out);
            used[b as usize] = false;
        }
    }
    dfs(0, rank, &grid, &candidates, &mut assign, &mut used, &mut out);
    out.sort();
    out
}

/// Filters the structured candidates by exact S̃-compatibility, in parallel;
/// results are in candidate-index order.
pub fn filter_modular_permutations(
    cands: &TRespectingCandidates,
    src: &ModularData,
    tgt: &ModularData,
) -> Vec<Vec<u8>> {
    let grid = SCompatibilityGrid::build(src, tgt);
    let total = cands.count();
    let mut found: Vec<(u64, Vec<u8>)> = (0..total)
        .into_par_iter()
        .map_init(
            || vec![0u8; cands.rank],
            |buf, idx| {
                cands.candidate(idx, buf);
                grid.compatible(buf).then(|| (idx, buf.clone()))
            },
        )
        .flatten()
        .collect();
    found.sort_by_key(|(idx, _)| *idx);
    found.into_iter().map(|(_, m)| m).collect()
}

/// The modular permutations between two categories: structured filter,
/// verified against the independent backtracking matcher and against the
/// defining equations; permutations are returned sorted by image tuple.
pub fn modular_permutations(
    src: &ModularData,
    tgt: &ModularData,
    src_blocks: &[Vec<usize>],
    tgt_blocks: &[Vec<usize>],
) -> Result<Vec<ModularPermutation>, ModularError> {
    let cands = TRespectingCandidates::build(src, tgt, src_blocks, tgt_blocks);
    let mut filtered = if cands.count() == 0 {
        Vec::new()
    } else {
        filter_modular_permutations(&cands, src, tgt)
    };
    filtered.sort();
    let independent = backtracking_permutations(src, tgt);
    if filtered != independent {
        return Err(ModularError::MatcherDisagreement(src.u, tgt.u));
    }
    let rank = src.rank();
    for map in &filtered {
        for a in 0..rank {
            if src.twists[a] != tgt.twists[map[a] as usize] {
                return Err(ModularError::BadPermutation(src.u, tgt.u));
            }
            for b in 0..rank {
                if src.s(a, b) != tgt.s(map[a] as usize, map[b] as usize) {
                    return Err(ModularError::BadPermutation(src.u, tgt.u));
                }
            }
        }
    }
    Ok(filtered
        .into_iter()
        .map(|map| ModularPermutation {
            source_u: src.u,
            target_u: tgt.u,
            map,
        })
        .collect())
}

/// Whether two categories share the same modular data as sets, i.e. at
/// least one modular permutation exists.
pub fn modular_data_equal_as_sets(
    src: &ModularData,
    tgt: &ModularData,
    src_blocks: &[Vec<usize>],
    tgt_blocks: &[Vec<usize>],
) -> Result<bool, ModularError> {
    Ok(!modular_permutations(src, tgt, src_blocks, tgt_blocks)?.is_empty())
}

/// The twist-normalized Whitehead matrix `W_{ab} = (θ_a/θ_b) · W̃_{ab}`,
/// from the precomputed Whitehead-link invariant tensor.
pub fn w_matrix(
    cat: &Category,
    whitehead: &LinkInvariantSet,
) -> Vec<CanonicalCyclo> {
    let rank = cat.rank();
    let ring = cat.ring();
    let u = cat.u() as usize;
    let mut out = Vec::with_capacity(rank * rank);
    for a in 0..rank {
        for b in 0..rank {
            let raw = ring.from_canonical(whitehead.entry(u, &[a, b]));
            let ta = cat.anyon(a).twist as i64;
            let tb = cat.anyon(b).twist as i64;
            let shifted = ring.mul(&raw, &ring.root(ta - tb));
            out.push(ring.canonicalize(&shifted));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon::Category;
    use crate::group::GroupSpec;

    fn data(u: u32) -> (Category, ModularData) {
        let cat = Category::build(GroupSpec::default(), u).unwrap();
        let md = ModularData::compute(&cat);
        (cat, md)
    }

    #[test]
    fn permutation4_decode_is_bijective() {
        let mut seen = std::collections::HashSet::new();
        for k in 0..24 {
            assert!(seen.insert(nth_permutation4(k)));
        }
    }

    #[test]
    fn modular_structure_u0() {
        let (cat, md) = data(0);
        md.verify_structure(cat.ring()).unwrap();
        assert_eq!(md.s(0, 29).as_integer(), Some(11));
    }

    #[test]
    fn verlinde_unit_and_blocks_u0() {
        let (cat, md) = data(0);
        let fusion = verlinde_fusion(&md, cat.ring()).unwrap();
        for a in 0..md.rank() {
            assert_eq!(fusion.get(0, a, a), 1);
            assert_eq!(fusion.get(a, 0, a), 1);
        }
        let blocks = fusion_blocks(&fusion, &md.dims, 11, 5).unwrap();
        assert_eq!(blocks.len(), 4);
        // the blocks are exactly the four [b^k] families, contiguous in the basis
        for (k, block) in blocks.iter().enumerate() {
            let base = 29 + 5 * k;
            assert_eq!(block, &(base..base + 5).collect::<Vec<_>>());
        }
    }

    #[test]
    fn candidate_count_for_shared_pairs() {
        let (cat1, md1) = data(1);
        let (_, md4) = data(4);
        let ring = cat1.ring();
        let f1 = verlinde_fusion(&md1, ring).unwrap();
        let f4 = verlinde_fusion(&md4, ring).unwrap();
        let b1 = fusion_blocks(&f1, &md1.dims, 11, 5).unwrap();
        let b4 = fusion_blocks(&f4, &md4.dims, 11, 5).unwrap();
        let cands = TRespectingCandidates::build(&md1, &md4, &b1, &b4);
        assert_eq!(cands.count(), 2_359_296);
        // every emitted bijection preserves dimensions and matches twists
        let mut map = vec![0u8; 49];
        for idx in [0u64, 1, 99_999, 2_359_295] {
            cands.candidate(idx, &mut map);
            let mut seen = vec![false; 49];
            for a in 0..49 {
                let b = map[a] as usize;
                assert!(!seen[b]);
                seen[b] = true;
                assert_eq!(md1.dims[a], md4.dims[b]);
                assert_eq!(md1.twists[a], md4.twists[b]);
            }
        }
    }

    #[test]
    fn no_permutations_between_u0_and_u1() {
        let (cat0, md0) = data(0);
        let (_, md1) = data(1);
        let ring = cat0.ring();
        let f0 = verlinde_fusion(&md0, ring).unwrap();
        let f1 = verlinde_fusion(&md1, ring).unwrap();
        let b0 = fusion_blocks(&f0, &md0.dims, 11, 5).unwrap();
        let b1 = fusion_blocks(&f1, &md1.dims, 11, 5).unwrap();
        assert!(!modular_data_equal_as_sets(&md0, &md1, &b0, &b1).unwrap());
    }

    #[test]
    fn identity_pair_contains_identity() {
        let (cat, md) = data(2);
        let ring = cat.ring();
        let f = verlinde_fusion(&md, ring).unwrap();
        let b = fusion_blocks(&f, &md.dims, 11, 5).unwrap();
        let perms = modular_permutations(&md, &md, &b, &b).unwrap();
        let id: Vec<u8> = (0..49).collect();
        assert!(perms.iter().any(|p| p.map == id));
    }
}
