//! The multilevel construction: each skeleton codeword fixes an echelon
//! Ferrers form, a Ferrers-diagram rank-metric code fills its free entries,
//! and the filled forms are lifted to subspaces. The union over all
//! skeleton codewords is the subspace code. Includes the two-step decoder
//! (skeleton first, rank code second) and exact/sampled verification.

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ferrers::EchelonFerrersForm;
use crate::field::{FieldCtx, FiniteField};
use crate::matrix::MatrixGFq;
use crate::rank::{rank_bits, RankCode, VerifyPolicy};
use crate::skeleton::SkeletonCode;
use crate::subspace::Subspace;
use crate::word::BitWord;

/// Blocks above this many codewords are not materialized.
pub const BLOCK_ENUMERATION_LIMIT: u128 = 1 << 22;

/// Exhaustive pairwise verification is used up to this many pairs.
pub const EXHAUSTIVE_PAIR_LIMIT: u64 = 20_000_000;

/// Substitute a Ferrers-code matrix into the free entries of an echelon
/// Ferrers form. The result is already in reduced row echelon form with
/// identifying vector `ef.identifying_vector()`.
pub fn lift(ef: &EchelonFerrersForm, a: &MatrixGFq) -> Result<Subspace> {
    let diagram = ef.diagram();
    let (m, eta) = (diagram.num_rows(), diagram.num_cols());
    if a.shape() != (m, eta) {
        return Err(Error::ShapeMismatch { expected: (m, eta), got: a.shape() });
    }
    for r in 0..m {
        for c in 0..eta {
            if a.get(r, c) != 0 && !diagram.has_dot(r, c) {
                return Err(Error::PatternViolation { row: r, col: c });
            }
        }
    }
    let k = ef.dim();
    let n = ef.ambient();
    let field = a.field();
    let nonpivots = ef.nonpivot_columns();
    let offset = ef.box_col_offset();
    let mut gen = MatrixGFq::zeros(field, k, n);
    for (i, &p) in ef.pivots().iter().enumerate() {
        gen.set(i, p, 1);
    }
    for r in 0..m {
        for c in 0..eta {
            let v = a.get(r, c);
            if v != 0 {
                gen.set(r, nonpivots[offset + c], v);
            }
        }
    }
    let lifted = Subspace::from_matrix(&gen);
    debug_assert_eq!(lifted.generator(), &gen, "lift must land in RREF");
    debug_assert_eq!(lifted.identifying_vector(), ef.identifying_vector());
    Ok(lifted)
}

/// One identifying vector's slice of a subspace code.
#[derive(Clone)]
pub struct CodeBlock {
    id: BitWord,
    ef: Option<EchelonFerrersForm>,
    rank_code: Option<RankCode>,
    codewords: Vec<Subspace>,
}

impl CodeBlock {
    pub fn identifying_vector(&self) -> BitWord {
        self.id
    }

    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn rank_code(&self) -> Option<&RankCode> {
        self.rank_code.as_ref()
    }

    pub fn echelon_form(&self) -> Option<&EchelonFerrersForm> {
        self.ef.as_ref()
    }
}

/// A set of subspaces of GF(q)^n with a declared minimum subspace distance,
/// partitioned by identifying vector. Construction metadata (skeleton and
/// per-block rank codes) is retained when the code was built here, so the
/// two-step decoder needs no reconstruction.
#[derive(Clone)]
pub struct SubspaceCode {
    field: FieldCtx,
    n: usize,
    min_distance: usize,
    blocks: Vec<CodeBlock>,
    skeleton: Option<SkeletonCode>,
    delta: Option<usize>,
    /// GF(2) only: bit-packed generator rows per codeword, same indexing as
    /// flattened blocks; speeds up pairwise distance work.
    packed: Option<Vec<Vec<u64>>>,
}

impl SubspaceCode {
    /// The multilevel construction for a constant-weight skeleton with
    /// minimum distance at least 2*delta.
    pub fn construct_multilevel(
        field: &FieldCtx,
        skeleton: &SkeletonCode,
        delta: usize,
    ) -> Result<SubspaceCode> {
        let skel_d = skeleton.verify_min_distance().unwrap_or(usize::MAX);
        if skel_d < 2 * delta {
            return Err(Error::SkeletonDistanceTooSmall { required: 2 * delta, found: skel_d });
        }
        Self::construct_with(field, skeleton, delta, 2 * delta)
    }

    /// The same construction for a general (possibly mixed-weight) skeleton,
    /// as used for codes in the full projective space. The resulting minimum
    /// distance is the smaller of 2*delta and the skeleton distance.
    pub fn construct_multilevel_mixed(
        field: &FieldCtx,
        skeleton: &SkeletonCode,
        delta: usize,
    ) -> Result<SubspaceCode> {
        let skel_d = skeleton.verify_min_distance().unwrap_or(usize::MAX);
        let declared = (2 * delta).min(skel_d);
        Self::construct_with(field, skeleton, delta, declared)
    }

    fn construct_with(
        field: &FieldCtx,
        skeleton: &SkeletonCode,
        delta: usize,
        declared: usize,
    ) -> Result<SubspaceCode> {
        if delta == 0 {
            return Err(Error::InvalidParameter("delta must be >= 1".into()));
        }
        let n = skeleton.word_length();
        let mut blocks = Vec::with_capacity(skeleton.len());
        for &word in skeleton.words() {
            blocks.push(Self::build_block(field, word, delta)?);
        }
        let mut code = SubspaceCode {
            field: field.clone(),
            n,
            min_distance: declared,
            blocks,
            skeleton: Some(skeleton.clone()),
            delta: Some(delta),
            packed: None,
        };
        code.pack_generators();
        Ok(code)
    }

    fn build_block(field: &FieldCtx, word: BitWord, delta: usize) -> Result<CodeBlock> {
        if word.weight() == 0 {
            // the null space is the only subspace with this identifying vector
            return Ok(CodeBlock {
                id: word,
                ef: None,
                rank_code: None,
                codewords: vec![Subspace::zero(field, word.len())],
            });
        }
        let ef = EchelonFerrersForm::new(word)?;
        let rank_code =
            RankCode::for_diagram(field, ef.diagram(), delta, VerifyPolicy::Auto)?;
        if rank_code.size() > BLOCK_ENUMERATION_LIMIT {
            return Err(Error::DeskScaleExceeded {
                limit: BLOCK_ENUMERATION_LIMIT,
                requested: rank_code.size(),
            });
        }
        let mut codewords = Vec::with_capacity(rank_code.size() as usize);
        let mut lift_err = None;
        rank_code.for_each_codeword(|matrix| match lift(&ef, matrix) {
            Ok(s) => {
                codewords.push(s);
                true
            }
            Err(e) => {
                lift_err = Some(e);
                false
            }
        });
        if let Some(e) = lift_err {
            return Err(e);
        }
        Ok(CodeBlock { id: word, ef: Some(ef), rank_code: Some(rank_code), codewords })
    }

    /// Wrap externally produced subspaces (e.g. loaded from a file or built
    /// by puncturing), grouped into blocks by identifying vector, without
    /// construction metadata.
    pub fn from_subspaces(
        field: &FieldCtx,
        n: usize,
        min_distance: usize,
        subspaces: Vec<Subspace>,
    ) -> Result<SubspaceCode> {
        for s in &subspaces {
            if s.field() != field || s.ambient() != n {
                return Err(Error::AmbientMismatch);
            }
        }
        let mut order: Vec<BitWord> = Vec::new();
        let mut grouped: Vec<(BitWord, Vec<Subspace>)> = Vec::new();
        for s in subspaces {
            let id = s.identifying_vector();
            match grouped.iter_mut().find(|(w, _)| *w == id) {
                Some((_, v)) => v.push(s),
                None => {
                    order.push(id);
                    grouped.push((id, vec![s]));
                }
            }
        }
        let blocks = grouped
            .into_iter()
            .map(|(id, codewords)| CodeBlock { id, ef: None, rank_code: None, codewords })
            .collect();
        let mut code = SubspaceCode {
            field: field.clone(),
            n,
            min_distance,
            blocks,
            skeleton: None,
            delta: None,
            packed: None,
        };
        code.pack_generators();
        Ok(code)
    }

    fn pack_generators(&mut self) {
        if self.field.order() != 2 || self.n > 64 {
            return;
        }
        let packed = self
            .codewords()
            .map(|s| {
                (0..s.dim())
                    .map(|r| {
                        s.generator()
                            .row(r)
                            .iter()
                            .enumerate()
                            .fold(0u64, |acc, (c, &v)| acc | v << c)
                    })
                    .collect()
            })
            .collect();
        self.packed = Some(packed);
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn min_distance(&self) -> usize {
        self.min_distance
    }

    pub fn delta(&self) -> Option<usize> {
        self.delta
    }

    pub fn skeleton(&self) -> Option<&SkeletonCode> {
        self.skeleton.as_ref()
    }

    pub fn blocks(&self) -> &[CodeBlock] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|b| b.is_empty())
    }

    /// All codewords in serialization order (block order, then enumeration
    /// order within each block).
    pub fn codewords(&self) -> impl Iterator<Item = &Subspace> {
        self.blocks.iter().flat_map(|b| b.codewords.iter())
    }

    /// Dimensions present in the code, ascending without repeats.
    pub fn dimensions(&self) -> Vec<usize> {
        let mut dims: Vec<usize> =
            self.blocks.iter().flat_map(|b| b.codewords.iter().map(|s| s.dim())).collect();
        dims.sort_unstable();
        dims.dedup();
        dims
    }

    /// Constant dimension k, when all codewords share it.
    pub fn constant_dimension(&self) -> Option<usize> {
        match self.dimensions().as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.blocks
            .iter()
            .find(|b| b.id == s.identifying_vector())
            .is_some_and(|b| b.codewords.contains(s))
    }

    pub fn to_set(&self) -> HashSet<Subspace> {
        self.codewords().cloned().collect()
    }

    /// Exhaustive pairwise distance when the pair count allows, otherwise a
    /// seeded random sample. The report carries per-block sizes.
    pub fn verify(&self, seed: u64) -> VerifyReport {
        self.verify_with(EXHAUSTIVE_PAIR_LIMIT, 1_000_000, seed)
    }

    pub fn verify_with(
        &self,
        exhaustive_pair_limit: u64,
        samples: u64,
        seed: u64,
    ) -> VerifyReport {
        let all: Vec<&Subspace> = self.codewords().collect();
        let m = all.len();
        let per_block: Vec<(BitWord, usize)> =
            self.blocks.iter().map(|b| (b.id, b.len())).collect();
        let pair_count = (m as u64).saturating_mul(m as u64 - 1) / 2;
        if m < 2 {
            return VerifyReport {
                size: m,
                declared_distance: self.min_distance,
                observed_min_distance: None,
                exhaustive: true,
                pairs_checked: 0,
                per_block,
                distance_ok: true,
            };
        }
        let exhaustive = pair_count <= exhaustive_pair_limit;
        let observed = if exhaustive {
            if let Some(packed) = &self.packed {
                (0..m - 1)
                    .into_par_iter()
                    .map(|i| {
                        let mut buf: Vec<u64> = Vec::with_capacity(2 * self.n);
                        let mut min = usize::MAX;
                        for j in i + 1..m {
                            let d = packed_distance(&packed[i], &packed[j], &mut buf);
                            min = min.min(d);
                        }
                        min
                    })
                    .min()
                    .unwrap_or(usize::MAX)
            } else {
                (0..m - 1)
                    .into_par_iter()
                    .map(|i| {
                        let mut min = usize::MAX;
                        for j in i + 1..m {
                            min = min.min(all[i].distance(all[j]).expect("same ambient"));
                        }
                        min
                    })
                    .min()
                    .unwrap_or(usize::MAX)
            }
        } else {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut min = usize::MAX;
            let mut buf: Vec<u64> = Vec::with_capacity(2 * self.n);
            for _ in 0..samples {
                let i = rng.gen_range(0..m);
                let mut j = rng.gen_range(0..m);
                while j == i {
                    j = rng.gen_range(0..m);
                }
                let d = match &self.packed {
                    Some(packed) => packed_distance(&packed[i], &packed[j], &mut buf),
                    None => all[i].distance(all[j]).expect("same ambient"),
                };
                min = min.min(d);
            }
            min
        };
        VerifyReport {
            size: m,
            declared_distance: self.min_distance,
            observed_min_distance: Some(observed),
            exhaustive,
            pairs_checked: if exhaustive { pair_count } else { samples },
            per_block,
            distance_ok: observed >= self.min_distance,
        }
    }

    /// Nearest codeword by subspace distance: the reference decoder. Returns
    /// the first nearest in serialization order and whether it was tied.
    pub fn nearest_codeword(&self, y: &Subspace) -> Option<(Subspace, usize, bool)> {
        let mut best: Option<&Subspace> = None;
        let mut best_dist = usize::MAX;
        let mut tie = false;
        let mut buf: Vec<u64> = Vec::with_capacity(2 * self.n);
        let y_packed = self.packed.as_ref().map(|_| pack_subspace(y));
        for (idx, cand) in self.codewords().enumerate() {
            let d = match (&self.packed, &y_packed) {
                (Some(packed), Some(yp)) => packed_distance(&packed[idx], yp, &mut buf),
                _ => cand.distance(y).expect("same ambient"),
            };
            if d < best_dist {
                best_dist = d;
                best = Some(cand);
                tie = false;
            } else if d == best_dist {
                tie = true;
            }
        }
        best.map(|s| (s.clone(), best_dist, tie))
    }

    /// Two-step decoding: recover the identifying vector through the
    /// skeleton code, then decode within the block's rank-metric code (run
    /// on the lifted subspaces, where rank distance doubles into subspace
    /// distance). Received subspaces of any dimension within the tolerance
    /// window are accepted; if the two-step path misses, the reference
    /// nearest-codeword decoder has the final word.
    ///
    /// Guarantee: if some codeword X has d_S(X, Y) <= floor((d-1)/2) the
    /// output is exactly X.
    pub fn decode(&self, y: &Subspace) -> Result<SubspaceDecodeOutcome> {
        if y.field() != &self.field || y.ambient() != self.n {
            return Err(Error::AmbientMismatch);
        }
        let radius = self.min_distance.saturating_sub(1) / 2;
        // Step 1: skeleton decoding of the received identifying vector.
        if let Some(skeleton) = &self.skeleton {
            let vy = y.identifying_vector();
            let hit = skeleton.decode(&vy)?;
            if let Some(block) = self.blocks.iter().find(|b| b.id == hit.codeword) {
                // Step 2: nearest codeword within the block.
                let mut best: Option<&Subspace> = None;
                let mut best_dist = usize::MAX;
                for cand in &block.codewords {
                    let d = cand.distance(y)?;
                    if d < best_dist {
                        best_dist = d;
                        best = Some(cand);
                    }
                }
                if let Some(b) = best {
                    if best_dist <= radius {
                        return Ok(SubspaceDecodeOutcome::Decoded {
                            codeword: b.clone(),
                            distance: best_dist,
                        });
                    }
                }
            }
        }
        // Reference path: whole-code nearest codeword.
        match self.nearest_codeword(y) {
            Some((cw, d, tie)) => {
                if d <= radius && !tie {
                    Ok(SubspaceDecodeOutcome::Decoded { codeword: cw, distance: d })
                } else {
                    Ok(SubspaceDecodeOutcome::Failed {
                        nearest: Some(cw),
                        distance: d,
                        tie,
                    })
                }
            }
            None => Ok(SubspaceDecodeOutcome::Failed {
                nearest: None,
                distance: usize::MAX,
                tie: false,
            }),
        }
    }
}

/// Result of subspace decoding. `Failed` reports the reference decoder's
/// nearest codeword so callers can inspect near misses.
#[derive(Clone, Debug)]
pub enum SubspaceDecodeOutcome {
    Decoded { codeword: Subspace, distance: usize },
    Failed { nearest: Option<Subspace>, distance: usize, tie: bool },
}

impl SubspaceDecodeOutcome {
    pub fn decoded(&self) -> Option<&Subspace> {
        match self {
            SubspaceDecodeOutcome::Decoded { codeword, .. } => Some(codeword),
            SubspaceDecodeOutcome::Failed { .. } => None,
        }
    }
}

/// Machine-readable verification report.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub size: usize,
    pub declared_distance: usize,
    /// None when the code has fewer than two codewords.
    pub observed_min_distance: Option<usize>,
    pub exhaustive: bool,
    pub pairs_checked: u64,
    pub per_block: Vec<(BitWord, usize)>,
    pub distance_ok: bool,
}

/// Analytic block dimensions: what the construction attains per skeleton
/// word, without enumerating codewords.
#[derive(Clone, Debug)]
pub struct AnalyticSizes {
    pub per_word: Vec<(BitWord, usize)>,
    pub total: u128,
}

/// Per-word Ferrers-code dimensions and the total code size
/// sum(q^dim) the multilevel construction yields for this skeleton.
pub fn code_size_analytic(
    field: &FieldCtx,
    skeleton: &SkeletonCode,
    delta: usize,
) -> Result<AnalyticSizes> {
    let q = field.order() as u128;
    let mut per_word = Vec::with_capacity(skeleton.len());
    let mut total: u128 = 0;
    for &word in skeleton.words() {
        let dim = if word.weight() == 0 {
            0
        } else {
            let ef = EchelonFerrersForm::new(word)?;
            crate::rank::attained_dim(field, ef.diagram(), delta)?
        };
        per_word.push((word, dim));
        total += q.pow(dim as u32);
    }
    Ok(AnalyticSizes { per_word, total })
}

/// All k-dimensional subspaces of GF(q)^n: every echelon Ferrers form with
/// every filling of its dots. Desk-scale tool for exhaustive checks.
pub fn enumerate_grassmannian(field: &FieldCtx, n: usize, k: usize) -> Vec<Subspace> {
    if k == 0 {
        return vec![Subspace::zero(field, n)];
    }
    let q = field.order();
    let mut out = Vec::new();
    for v in BitWord::all_of_weight(n, k) {
        let ef = EchelonFerrersForm::new(v).expect("positive weight");
        let d = ef.diagram();
        let (m, eta) = (d.num_rows(), d.num_cols());
        let dots: Vec<(usize, usize)> = (0..m)
            .flat_map(|r| (0..eta).map(move |c| (r, c)))
            .filter(|&(r, c)| d.has_dot(r, c))
            .collect();
        let mut values = vec![0u64; dots.len()];
        loop {
            let mut mat = MatrixGFq::zeros(field, m, eta);
            for (&(r, c), &val) in dots.iter().zip(&values) {
                mat.set(r, c, val);
            }
            out.push(lift(&ef, &mat).expect("respects pattern"));
            let mut pos = 0;
            loop {
                if pos == values.len() {
                    break;
                }
                values[pos] += 1;
                if values[pos] < q {
                    break;
                }
                values[pos] = 0;
                pos += 1;
            }
            if pos == values.len() {
                break;
            }
        }
    }
    out
}

pub(crate) fn pack_subspace(s: &Subspace) -> Vec<u64> {
    (0..s.dim())
        .map(|r| {
            s.generator()
                .row(r)
                .iter()
                .enumerate()
                .fold(0u64, |acc, (c, &v)| acc | v << c)
        })
        .collect()
}

/// d_S via bit-packed generators: 2 rank(stack) - dim a - dim b.
pub(crate) fn packed_distance(a: &[u64], b: &[u64], buf: &mut Vec<u64>) -> usize {
    buf.clear();
    buf.extend_from_slice(a);
    buf.extend_from_slice(b);
    2 * rank_bits(buf) - a.len() - b.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::rank_distance;

    fn gf2() -> FieldCtx {
        FieldCtx::gf(2).unwrap()
    }

    fn ef(v: &str) -> EchelonFerrersForm {
        EchelonFerrersForm::new(BitWord::parse(v).unwrap()).unwrap()
    }

    #[test]
    fn lift_leading_vector_example() {
        let f = gf2();
        let a = MatrixGFq::from_rows(
            &f,
            vec![vec![1, 0, 1, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0]],
        )
        .unwrap();
        let lifted = lift(&ef("1110000"), &a).unwrap();
        let expected = Subspace::from_rows(
            &f,
            vec![
                vec![1, 0, 0, 1, 0, 1, 0],
                vec![0, 1, 0, 0, 0, 0, 1],
                vec![0, 0, 1, 0, 0, 0, 0],
            ],
            7,
        )
        .unwrap();
        assert_eq!(lifted, expected);
    }

    #[test]
    fn lift_interleaved_vector_example() {
        let f = gf2();
        // diagram of 1001001 is (4,2); the codeword rows (1010, 0001)
        let a = MatrixGFq::from_rows(&f, vec![vec![1, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        let lifted = lift(&ef("1001001"), &a).unwrap();
        let expected = Subspace::from_rows(
            &f,
            vec![
                vec![1, 1, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 1, 0, 1, 0],
                vec![0, 0, 0, 0, 0, 0, 1],
            ],
            7,
        )
        .unwrap();
        assert_eq!(lifted, expected);
    }

    #[test]
    fn lift_zero_matrix_gives_pivot_units() {
        let f = gf2();
        let e = ef("1001001");
        let a = MatrixGFq::zeros(&f, 2, 4);
        let lifted = lift(&e, &a).unwrap();
        let expected = Subspace::from_rows(
            &f,
            vec![
                vec![1, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 1, 0, 0, 0],
                vec![0, 0, 0, 0, 0, 0, 1],
            ],
            7,
        )
        .unwrap();
        assert_eq!(lifted, expected);
    }

    #[test]
    fn lift_rejects_pattern_violation() {
        let f = gf2();
        let e = ef("1001001");
        // row 1 of the (4,2) diagram only allows its last two columns
        let a = MatrixGFq::from_rows(&f, vec![vec![1, 0, 1, 0], vec![1, 0, 0, 0]]).unwrap();
        assert!(matches!(lift(&e, &a), Err(Error::PatternViolation { .. })));
    }

    #[test]
    fn example5_code() {
        let f = gf2();
        let skeleton = SkeletonCode::lexicode(6, 3, 4);
        let code = SubspaceCode::construct_multilevel(&f, &skeleton, 2).unwrap();
        assert_eq!(code.len(), 71);
        let sizes: Vec<usize> = code.blocks().iter().map(|b| b.len()).collect();
        assert_eq!(sizes, vec![64, 4, 2, 1]);
        assert_eq!(code.constant_dimension(), Some(3));
        let report = code.verify(0);
        assert!(report.exhaustive);
        assert_eq!(report.pairs_checked, 71 * 70 / 2);
        assert_eq!(report.observed_min_distance, Some(4));
        // identifying vectors are preserved by lifting
        for block in code.blocks() {
            for cw in block.codewords() {
                assert_eq!(cw.identifying_vector(), block.identifying_vector());
            }
        }
    }

    #[test]
    fn example5_analytic_matches_enumerated() {
        let f = gf2();
        let skeleton = SkeletonCode::lexicode(6, 3, 4);
        let analytic = code_size_analytic(&f, &skeleton, 2).unwrap();
        assert_eq!(analytic.total, 71);
        let dims: Vec<usize> = analytic.per_word.iter().map(|&(_, d)| d).collect();
        assert_eq!(dims, vec![6, 2, 1, 0]);
    }

    #[test]
    fn example6_code_sizes() {
        let f = gf2();
        let skeleton =
            SkeletonCode::hamming_weight_class("extended_hamming_8_4_4", Some(4)).unwrap();
        let code = SubspaceCode::construct_multilevel(&f, &skeleton, 2).unwrap();
        assert_eq!(code.len(), 4573);
        let sizes: Vec<usize> = code.blocks().iter().map(|b| b.len()).collect();
        assert_eq!(
            sizes,
            vec![4096, 256, 16, 64, 16, 16, 16, 32, 16, 16, 8, 16, 4, 1]
        );
        let analytic = code_size_analytic(&f, &skeleton, 2).unwrap();
        assert_eq!(analytic.total, 4573);
    }

    #[test]
    fn lexicode_7_3_gives_289() {
        let f = gf2();
        let skeleton = SkeletonCode::lexicode(7, 3, 4);
        let analytic = code_size_analytic(&f, &skeleton, 2).unwrap();
        assert_eq!(analytic.total, 289);
        let code = SubspaceCode::construct_multilevel(&f, &skeleton, 2).unwrap();
        assert_eq!(code.len(), 289);
    }

    #[test]
    fn skeleton_distance_requirement() {
        let f = gf2();
        let skeleton = SkeletonCode::lexicode(6, 3, 2);
        assert!(matches!(
            SubspaceCode::construct_multilevel(&f, &skeleton, 2),
            Err(Error::SkeletonDistanceTooSmall { .. })
        ));
    }

    #[test]
    fn cross_block_distance_bounded_by_hamming() {
        let f = gf2();
        let skeleton = SkeletonCode::lexicode(6, 3, 4);
        let code = SubspaceCode::construct_multilevel(&f, &skeleton, 2).unwrap();
        for (i, a) in code.blocks().iter().enumerate() {
            for b in code.blocks().iter().skip(i + 1) {
                let dh = a.identifying_vector().hamming(&b.identifying_vector());
                for x in a.codewords() {
                    for y in b.codewords() {
                        assert!(x.distance(y).unwrap() >= dh);
                    }
                }
            }
        }
    }

    #[test]
    fn in_block_distance_doubles_rank_distance() {
        let f = gf2();
        let e = ef("1110000");
        let rc = RankCode::for_diagram(&f, e.diagram(), 2, VerifyPolicy::Skip).unwrap();
        let mut msg1 = vec![0u64; rc.dim()];
        msg1[0] = 1;
        let mut msg2 = vec![0u64; rc.dim()];
        msg2[3] = 1;
        msg2[1] = 1;
        let a = rc.encode(&msg1).unwrap();
        let b = rc.encode(&msg2).unwrap();
        let la = lift(&e, &a).unwrap();
        let lb = lift(&e, &b).unwrap();
        assert_eq!(
            la.distance(&lb).unwrap(),
            2 * rank_distance(&a, &b).unwrap()
        );
    }

    #[test]
    fn orthogonal_duality_preserves_example5() {
        let f = gf2();
        let skeleton = SkeletonCode::lexicode(6, 3, 4);
        let code = SubspaceCode::construct_multilevel(&f, &skeleton, 2).unwrap();
        let duals: Vec<Subspace> =
            code.codewords().map(|s| s.orthogonal_complement()).collect();
        assert_eq!(duals.len(), 71);
        let dual_code = SubspaceCode::from_subspaces(&f, 6, 4, duals.clone()).unwrap();
        assert_eq!(dual_code.len(), 71);
        let report = dual_code.verify(0);
        assert_eq!(report.observed_min_distance, Some(4));
        // distances are preserved pairwise
        let originals: Vec<&Subspace> = code.codewords().collect();
        for i in (0..originals.len()).step_by(7) {
            for j in (i + 1..originals.len()).step_by(11) {
                assert_eq!(
                    originals[i].distance(originals[j]).unwrap(),
                    duals[i].distance(&duals[j]).unwrap()
                );
            }
        }
    }

    #[test]
    fn decode_roundtrip_example5() {
        let f = gf2();
        let skeleton = SkeletonCode::lexicode(6, 3, 4);
        let code = SubspaceCode::construct_multilevel(&f, &skeleton, 2).unwrap();
        for cw in code.codewords() {
            let out = code.decode(cw).unwrap();
            assert_eq!(out.decoded(), Some(cw));
        }
    }

    #[test]
    fn decode_erasure_example5() {
        let f = gf2();
        let skeleton = SkeletonCode::lexicode(6, 3, 4);
        let code = SubspaceCode::construct_multilevel(&f, &skeleton, 2).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        let all: Vec<&Subspace> = code.codewords().collect();
        for _ in 0..500 {
            let x = all[rng.gen_range(0..all.len())];
            // drop one generator row: a dimension erasure, d_S = 1
            let dropped = rng.gen_range(0..x.dim());
            let keep: Vec<Vec<u64>> = (0..x.dim())
                .filter(|&r| r != dropped)
                .map(|r| x.generator().row_vec(r))
                .collect();
            let y = Subspace::from_rows(&f, keep, 6).unwrap();
            if y.dim() == x.dim() {
                continue;
            }
            assert_eq!(x.distance(&y).unwrap(), 1);
            let out = code.decode(&y).unwrap();
            assert_eq!(out.decoded(), Some(x), "decoding failed for {:?}", x.generator());
        }
    }

    #[test]
    fn decode_at_distance_delta_flagged() {
        let f = gf2();
        let skeleton = SkeletonCode::lexicode(6, 3, 4);
        let code = SubspaceCode::construct_multilevel(&f, &skeleton, 2).unwrap();
        // distance exactly delta = 2 from some codeword: outside the radius;
        // the outcome must agree with the oracle (failure or ambiguity)
        let all: Vec<&Subspace> = code.codewords().collect();
        let x = all[0];
        // replace one basis vector by a vector outside x
        let mut rows: Vec<Vec<u64>> = (1..x.dim()).map(|r| x.generator().row_vec(r)).collect();
        rows.push(vec![0, 0, 0, 0, 0, 1]);
        let y = Subspace::from_rows(&f, rows, 6).unwrap();
        if y.dim() == 3 && x.distance(&y).unwrap() == 2 {
            match code.decode(&y).unwrap() {
                SubspaceDecodeOutcome::Decoded { distance, .. } => {
                    // only legal if y is itself within radius of another codeword
                    assert!(distance <= 1);
                }
                SubspaceDecodeOutcome::Failed { distance, .. } => assert!(distance >= 2),
            }
        }
    }

    #[test]
    fn mixed_skeleton_hamming_7_4_3() {
        let f = gf2();
        let skeleton = SkeletonCode::hamming_weight_class("hamming_7_4_3", None).unwrap();
        let code = SubspaceCode::construct_multilevel_mixed(&f, &skeleton, 2).unwrap();
        assert_eq!(code.min_distance(), 3);
        // the paper reports size 394 for this projective-space code
        assert_eq!(code.len(), 394);
        let report = code.verify(0);
        assert!(report.exhaustive);
        assert_eq!(report.observed_min_distance, Some(3));
    }

    #[test]
    fn grassmannian_enumeration_counts() {
        let f = gf2();
        // Gaussian binomials over GF(2): [5 choose k] = 1, 31, 155, 155, 31, 1
        assert_eq!(enumerate_grassmannian(&f, 5, 0).len(), 1);
        assert_eq!(enumerate_grassmannian(&f, 5, 1).len(), 31);
        assert_eq!(enumerate_grassmannian(&f, 5, 2).len(), 155);
        let f3 = FieldCtx::gf(3).unwrap();
        // [4 choose 2] over GF(3) = 130
        assert_eq!(enumerate_grassmannian(&f3, 4, 2).len(), 130);
    }

    #[test]
    fn lemma1_leading_entries_at_pivots() {
        // for every subspace of GF(2)^6 with k <= 3, the leftmost nonzero
        // entry of every element sits at a pivot of E(X)
        let f = gf2();
        for k in 0..=3usize {
            for s in enumerate_grassmannian(&f, 6, k) {
                let pivots = s.pivot_columns();
                for v in s.vectors() {
                    if let Some(first) = v.iter().position(|&x| x != 0) {
                        assert!(pivots.contains(&first));
                    }
                }
            }
        }
    }

    #[test]
    fn lemma2_distance_dominates_hamming() {
        // exhaustive over all pairs of subspaces of GF(2)^5
        let f = gf2();
        let mut all = Vec::new();
        for k in 0..=5usize {
            all.extend(enumerate_grassmannian(&f, 5, k));
        }
        assert_eq!(all.len(), 374);
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let ds = all[i].distance(&all[j]).unwrap();
                let dh = all[i]
                    .identifying_vector()
                    .hamming(&all[j].identifying_vector());
                assert!(ds >= dh);
            }
        }
    }
}
