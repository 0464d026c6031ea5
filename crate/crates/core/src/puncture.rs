//! Puncturing of subspace codes through a hyperplane: the union of
//! punctured codewords inside Q and punctured intersections of codewords
//! through a vector v outside Q. Yields mixed-dimension codes one shorter
//! and one weaker in distance, usually far larger than direct multilevel
//! constructions in the projective space.

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FiniteField};
use crate::multilevel::{SubspaceCode, SubspaceDecodeOutcome};
use crate::skeleton::{Provenance, SkeletonCode};
use crate::subspace::Subspace;
use crate::word::BitWord;

/// A hyperplane Q (dimension n-1), the coordinate tau where v(Q) has its
/// unique zero, and a vector v outside Q.
#[derive(Clone)]
pub struct PuncturingContext {
    hyperplane: Subspace,
    tau: usize,
    v: Vec<u64>,
    /// Entries of column tau of E(Q), indexed by generator row: the symbol
    /// appended when embedding a punctured word back into Q.
    u: Vec<u64>,
}

impl PuncturingContext {
    pub fn new(hyperplane: Subspace, v: Vec<u64>) -> Result<PuncturingContext> {
        let n = hyperplane.ambient();
        if hyperplane.dim() != n - 1 {
            return Err(Error::InvalidParameter(format!(
                "puncturing needs an (n-1)-dimensional subspace, got dim {} in ambient {}",
                hyperplane.dim(),
                n
            )));
        }
        if v.len() != n {
            return Err(Error::InvalidParameter("v has wrong length".into()));
        }
        if hyperplane.contains_vector(&v) {
            return Err(Error::InvalidParameter("v must lie outside the hyperplane".into()));
        }
        let vq = hyperplane.identifying_vector();
        let tau = (0..n).find(|&i| !vq.get(i)).expect("weight n-1 vector has a zero");
        let u = (0..n - 1).map(|r| hyperplane.generator().get(r, tau)).collect();
        Ok(PuncturingContext { hyperplane, tau, v, u })
    }

    /// The hyperplane spanned by the first n-1 unit vectors, E(Q) = [I | 0].
    pub fn standard_hyperplane(field: &FieldCtx, n: usize) -> Subspace {
        let rows: Vec<Vec<u64>> = (0..n - 1)
            .map(|r| {
                let mut row = vec![0u64; n];
                row[r] = 1;
                row
            })
            .collect();
        Subspace::from_rows(field, rows, n).expect("identity rows")
    }

    pub fn hyperplane(&self) -> &Subspace {
        &self.hyperplane
    }

    /// 0-indexed punctured coordinate.
    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn v(&self) -> &[u64] {
        &self.v
    }

    /// Delete coordinate tau. Defined for subspaces of Q.
    pub fn puncture(&self, x: &Subspace) -> Result<Subspace> {
        x.puncture_coordinate(self.tau)
    }

    /// Inverse of puncturing on subspaces of Q: re-insert coordinate tau,
    /// its value determined by E(Q). The result lands in Q, already in
    /// reduced row echelon form.
    pub fn embed(&self, y: &Subspace) -> Result<Subspace> {
        let n = self.hyperplane.ambient();
        if y.ambient() != n - 1 {
            return Err(Error::AmbientMismatch);
        }
        let rows: Vec<Vec<u64>> = (0..y.dim())
            .map(|r| {
                let row = y.generator().row(r);
                let field = y.field();
                let mut appended = 0u64;
                for (j, &coeff) in row.iter().enumerate() {
                    if coeff != 0 {
                        appended = field.add(appended, field.mul(coeff, self.u[j]));
                    }
                }
                let mut out = Vec::with_capacity(n);
                out.extend_from_slice(&row[..self.tau]);
                out.push(appended);
                out.extend_from_slice(&row[self.tau..]);
                out
            })
            .collect();
        let embedded = Subspace::from_rows(y.field(), rows, n)?;
        debug_assert!(embedded.is_subspace_of(&self.hyperplane));
        debug_assert_eq!(embedded.dim(), y.dim());
        Ok(embedded)
    }
}

/// The punctured code C'_{Q,v} with its partition and source retained.
#[derive(Clone)]
pub struct PuncturedCode {
    code: SubspaceCode,
    source: SubspaceCode,
    ctx: PuncturingContext,
    part_q: Vec<Subspace>,
    part_qv: Vec<Subspace>,
    /// Contributions per source identifying vector, before deduplication.
    table_q: Vec<(BitWord, usize)>,
    table_qv: Vec<(BitWord, usize)>,
    raw_total: usize,
    augmented: bool,
}

impl PuncturedCode {
    pub fn code(&self) -> &SubspaceCode {
        &self.code
    }

    pub fn source(&self) -> &SubspaceCode {
        &self.source
    }

    pub fn context(&self) -> &PuncturingContext {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    pub fn min_distance(&self) -> usize {
        self.code.min_distance()
    }

    pub fn part_q(&self) -> &[Subspace] {
        &self.part_q
    }

    pub fn part_qv(&self) -> &[Subspace] {
        &self.part_qv
    }

    /// (source identifying vector, contribution) rows for C_Q.
    pub fn table_q(&self) -> &[(BitWord, usize)] {
        &self.table_q
    }

    /// (source identifying vector, contribution) rows for C_{Q,v}.
    pub fn table_qv(&self) -> &[(BitWord, usize)] {
        &self.table_qv
    }

    /// Total before cross-part deduplication.
    pub fn raw_total(&self) -> usize {
        self.raw_total
    }

    pub fn augmented(&self) -> bool {
        self.augmented
    }

    /// Parity-cased decoding: embed the received word into Q, extend it by v
    /// or not according to the dimension parities, decode in the source
    /// code, then intersect with Q and puncture. If the pipeline misses, the
    /// reference nearest-codeword decoder over the punctured code decides.
    ///
    /// Guarantee: all source dimensions share one parity and the source
    /// distance is 2*delta; then d_S(X', Y') <= delta - 1 implies the output
    /// is X'.
    pub fn decode(&self, received: &Subspace) -> Result<SubspaceDecodeOutcome> {
        let source_dims = self.source.dimensions();
        let delta = self.source.min_distance() / 2;
        let same_parity = source_dims.windows(2).all(|w| (w[0] % 2) == (w[1] % 2));
        if !same_parity || self.source.min_distance() % 2 != 0 || delta == 0 {
            return Err(Error::InvalidParameter(
                "punctured decoding needs a source with one dimension parity and even distance"
                    .into(),
            ));
        }
        let radius = delta - 1;
        let p = source_dims.first().copied().unwrap_or(0) % 2;
        let ell = received.dim();
        let y = self.ctx.embed(received)?;
        let extend = if delta % 2 == 0 { ell % 2 == p } else { ell % 2 != p };
        let z = if extend {
            let mut rows: Vec<Vec<u64>> =
                (0..y.dim()).map(|r| y.generator().row_vec(r)).collect();
            rows.push(self.ctx.v.clone());
            let z = Subspace::from_rows(y.field(), rows, y.ambient())?;
            debug_assert_eq!(z.dim(), y.dim() + 1, "v never lies in Q, so Z grows");
            z
        } else {
            y
        };
        if let SubspaceDecodeOutcome::Decoded { codeword, .. } = self.source.decode(&z)? {
            let restricted = codeword.intersection(self.ctx.hyperplane())?;
            let candidate = self.ctx.puncture(&restricted)?;
            if self.code.contains(&candidate) {
                let d = candidate.distance(received)?;
                if d <= radius {
                    return Ok(SubspaceDecodeOutcome::Decoded { codeword: candidate, distance: d });
                }
            }
        }
        // reference fallback: nearest codeword of the punctured code
        match self.code.nearest_codeword(received) {
            Some((cw, d, tie)) if d <= radius && !tie => {
                Ok(SubspaceDecodeOutcome::Decoded { codeword: cw, distance: d })
            }
            Some((cw, d, tie)) => {
                Ok(SubspaceDecodeOutcome::Failed { nearest: Some(cw), distance: d, tie })
            }
            None => Ok(SubspaceDecodeOutcome::Failed {
                nearest: None,
                distance: usize::MAX,
                tie: false,
            }),
        }
    }
}

/// Puncture a code through a context: C_Q collects punctured codewords
/// contained in Q, C_{Q,v} punctured intersections of codewords through v.
/// Duplicates across the two parts are stored once; the per-vector tables
/// count contributions before deduplication. `augment_trivial` adds the
/// null space and the full space, as the published example does.
pub fn puncture_code(
    source: &SubspaceCode,
    ctx: &PuncturingContext,
    augment_trivial: bool,
) -> Result<PuncturedCode> {
    if source.min_distance() < 2 {
        return Err(Error::InvalidParameter(
            "puncturing needs a source distance of at least 2".into(),
        ));
    }
    if ctx.hyperplane().ambient() != source.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let field = source.field().clone();
    let n = source.ambient();
    let mut part_q: Vec<Subspace> = Vec::new();
    let mut part_qv: Vec<Subspace> = Vec::new();
    let mut table_q: Vec<(BitWord, usize)> = Vec::new();
    let mut table_qv: Vec<(BitWord, usize)> = Vec::new();
    for block in source.blocks() {
        let mut count_q = 0usize;
        let mut count_qv = 0usize;
        for x in block.codewords() {
            if x.is_subspace_of(ctx.hyperplane()) {
                part_q.push(ctx.puncture(x)?);
                count_q += 1;
            }
            if x.contains_vector(&ctx.v) {
                let meet = x.intersection(ctx.hyperplane())?;
                part_qv.push(ctx.puncture(&meet)?);
                count_qv += 1;
            }
        }
        if count_q > 0 {
            table_q.push((block.identifying_vector(), count_q));
        }
        if count_qv > 0 {
            table_qv.push((block.identifying_vector(), count_qv));
        }
    }
    let raw_total = part_q.len() + part_qv.len();
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut words: Vec<Subspace> = Vec::new();
    for s in part_q.iter().chain(part_qv.iter()) {
        if seen.insert(s.clone()) {
            words.push(s.clone());
        }
    }
    let mut augmented = false;
    if augment_trivial {
        for extra in [Subspace::zero(&field, n - 1), Subspace::full(&field, n - 1)] {
            if seen.insert(extra.clone()) {
                words.push(extra);
                augmented = true;
            }
        }
    }
    let code = SubspaceCode::from_subspaces(&field, n - 1, source.min_distance() - 1, words)?;
    Ok(PuncturedCode {
        code,
        source: source.clone(),
        ctx: ctx.clone(),
        part_q,
        part_qv,
        table_q,
        table_qv,
        raw_total,
        augmented,
    })
}

/// Search strategy for [`best_context_search`].
#[derive(Clone, Copy, Debug)]
pub enum ContextSearch {
    /// All (q^(2n-1) - q^(n-1))/(q-1) contexts.
    Exhaustive,
    /// A seeded random sample of contexts.
    Sampled { contexts: usize, seed: u64 },
}

/// Outcome of a context search: the best context found, its punctured size,
/// and the guaranteed lower bound for the best possible context.
pub struct BestContext {
    pub context: PuncturingContext,
    pub size: usize,
    /// ceil(M (q^(n-k) + q^k - 2) / (q^n - 1)) for constant-dimension
    /// sources; the exhaustive maximum must reach it.
    pub bound: Option<u128>,
}

/// Sweep hyperplane/vector pairs maximizing the punctured size.
pub fn best_context_search(source: &SubspaceCode, strategy: ContextSearch) -> Result<BestContext> {
    let field = source.field().clone();
    let n = source.ambient();
    let q = field.order();
    let bound = source.constant_dimension().map(|k| {
        let m = source.len() as u128;
        let qk = (q as u128).pow(k as u32);
        let qnk = (q as u128).pow((n - k) as u32);
        let qn = (q as u128).pow(n as u32);
        let num = m * (qnk + qk - 2);
        let den = qn - 1;
        num.div_ceil(den)
    });
    let normals = projective_vectors(&field, n);
    let mut best: Option<(PuncturingContext, usize)> = None;
    let mut consider = |ctx: PuncturingContext| -> Result<()> {
        let punctured = puncture_code(source, &ctx, false)?;
        let size = punctured.len();
        if best.as_ref().is_none_or(|(_, s)| size > *s) {
            best = Some((ctx, size));
        }
        Ok(())
    };
    match strategy {
        ContextSearch::Exhaustive => {
            for w in &normals {
                let hyperplane = hyperplane_from_normal(&field, w)?;
                for v in &normals {
                    if hyperplane.contains_vector(v) {
                        continue;
                    }
                    consider(PuncturingContext::new(hyperplane.clone(), v.clone())?)?;
                }
            }
        }
        ContextSearch::Sampled { contexts, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..contexts {
                let w = &normals[rng.gen_range(0..normals.len())];
                let hyperplane = hyperplane_from_normal(&field, w)?;
                let v = loop {
                    let cand = &normals[rng.gen_range(0..normals.len())];
                    if !hyperplane.contains_vector(cand) {
                        break cand.clone();
                    }
                };
                consider(PuncturingContext::new(hyperplane, v)?)?;
            }
        }
    }
    let (context, size) = best.ok_or_else(|| {
        Error::InvalidParameter("no puncturing context exists for this code".into())
    })?;
    if let (ContextSearch::Exhaustive, Some(b)) = (strategy, bound) {
        debug_assert!(
            size as u128 >= b,
            "exhaustive maximum {size} below the averaging bound {b}"
        );
    }
    Ok(BestContext { context, size, bound })
}

/// One representative per projective point: vectors whose first nonzero
/// coordinate is 1.
fn projective_vectors(field: &FieldCtx, n: usize) -> Vec<Vec<u64>> {
    let q = field.order();
    let mut out = Vec::new();
    let mut v = vec![0u64; n];
    loop {
        if v.iter().any(|&x| x != 0) {
            let first = v.iter().find(|&&x| x != 0).copied().unwrap();
            if first == 1 {
                out.push(v.clone());
            }
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            v[pos] += 1;
            if v[pos] < q {
                break;
            }
            v[pos] = 0;
        }
    }
}

fn hyperplane_from_normal(field: &FieldCtx, w: &[u64]) -> Result<Subspace> {
    let m = crate::matrix::MatrixGFq::from_rows(field, vec![w.to_vec()])?;
    Ok(Subspace::from_matrix(&m.kernel()))
}

/// The generalized family: puncture the single-block constant-dimension
/// code of the all-ones-then-zeros word of length 4k with the standard
/// hyperplane and v = 1 0^(2k-1) u, where u is a codeword first row ending
/// in a one. Both parts then have q^(2k^2) words, giving a
/// (4k-1, 2q^(2k^2), 2k-1) code.
pub fn generalized_punctured_family(field: &FieldCtx, k: usize) -> Result<PuncturedCode> {
    if k == 0 || 4 * k > 12 {
        return Err(Error::InvalidParameter(
            "the generalized family is built at desk scale 1 <= k <= 3".into(),
        ));
    }
    let n = 4 * k;
    let mut word = BitWord::zero(n);
    for i in 0..2 * k {
        word.set(i, true);
    }
    let skeleton = SkeletonCode::new(n, usize::MAX, vec![word], Provenance::User)?;
    let source = SubspaceCode::construct_multilevel(field, &skeleton, k)?;
    let block = &source.blocks()[0];
    let rank_code = block.rank_code().expect("constructed block");
    // u: the first row, ending in a one, of some codeword; a basis element
    // scaled to make the corner entry 1 works
    let corner = 2 * k - 1;
    let u = rank_code
        .basis()
        .iter()
        .find(|b| b.get(0, corner) != 0)
        .map(|b| {
            let inv = field.inv(b.get(0, corner)).expect("nonzero corner");
            b.scale(inv).row_vec(0)
        })
        .ok_or_else(|| {
            Error::InvalidParameter("no codeword with a one ending its first row".into())
        })?;
    let mut v = vec![0u64; n];
    v[0] = 1;
    v[2 * k..].copy_from_slice(&u);
    let hyperplane = PuncturingContext::standard_hyperplane(field, n);
    let ctx = PuncturingContext::new(hyperplane, v)?;
    puncture_code(&source, &ctx, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilevel::code_size_analytic;

    fn gf2() -> FieldCtx {
        FieldCtx::gf(2).unwrap()
    }

    fn example5(field: &FieldCtx) -> SubspaceCode {
        let skeleton = SkeletonCode::lexicode(6, 3, 4);
        SubspaceCode::construct_multilevel(field, &skeleton, 2).unwrap()
    }

    #[test]
    fn context_validation() {
        let f = gf2();
        let q = PuncturingContext::standard_hyperplane(&f, 6);
        assert_eq!(q.dim(), 5);
        // v inside Q rejected
        assert!(PuncturingContext::new(q.clone(), vec![1, 0, 0, 0, 0, 0]).is_err());
        let ctx = PuncturingContext::new(q, vec![1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(ctx.tau(), 5);
    }

    #[test]
    fn embed_inverts_puncture() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let f = gf2();
        let q = PuncturingContext::standard_hyperplane(&f, 6);
        let ctx = PuncturingContext::new(q, vec![0, 0, 0, 0, 0, 1]).unwrap();
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..1000 {
            let k = rng.gen_range(0..=3usize);
            let rows: Vec<Vec<u64>> =
                (0..k).map(|_| (0..5).map(|_| rng.gen_range(0..2u64)).collect()).collect();
            let y = Subspace::from_rows(&f, rows, 5).unwrap();
            let embedded = ctx.embed(&y).unwrap();
            assert_eq!(ctx.puncture(&embedded).unwrap(), y);
        }
        // the null space embeds to the null space
        let zero = Subspace::zero(&f, 5);
        assert_eq!(ctx.embed(&zero).unwrap(), Subspace::zero(&f, 6));
    }

    #[test]
    fn embed_lands_in_rref_nonstandard_hyperplane() {
        let f = gf2();
        // hyperplane x_1 + x_3 = 0 has its identifying-vector zero inside
        let h = hyperplane_from_normal(&f, &[1, 0, 1, 0, 0]).unwrap();
        let v = vec![1, 0, 0, 0, 0];
        assert!(!h.contains_vector(&v));
        let ctx = PuncturingContext::new(h, v).unwrap();
        let y = Subspace::from_rows(&f, vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]], 4).unwrap();
        let embedded = ctx.embed(&y).unwrap();
        assert_eq!(embedded.dim(), 2);
        assert_eq!(ctx.puncture(&embedded).unwrap(), y);
    }

    #[test]
    fn puncture_example5_exhaustive_sweep_meets_bound() {
        let f = gf2();
        let code = example5(&f);
        let best = best_context_search(&code, ContextSearch::Exhaustive).unwrap();
        // ceil(71 * (8 + 8 - 2) / 63) = ceil(994/63) = 16
        assert_eq!(best.bound, Some(16));
        assert!(best.size as u128 >= 16, "best context size {}", best.size);
        // the best punctured code verifies distance 3
        let punctured = puncture_code(&code, &best.context, false).unwrap();
        let report = punctured.code().verify(0);
        assert!(report.exhaustive);
        assert!(report.observed_min_distance.unwrap() >= 3);
    }

    #[test]
    fn puncture_code_without_members_is_empty() {
        let f = gf2();
        // a single-codeword code neither inside Q nor through v
        let x = Subspace::from_rows(&f, vec![vec![1, 0, 0, 0, 0, 1]], 6).unwrap();
        let code = SubspaceCode::from_subspaces(&f, 6, 2, vec![x]).unwrap();
        let q = PuncturingContext::standard_hyperplane(&f, 6);
        let ctx = PuncturingContext::new(q, vec![0, 0, 0, 0, 0, 1]).unwrap();
        let punctured = puncture_code(&code, &ctx, false).unwrap();
        assert_eq!(punctured.len(), 0);
    }

    #[test]
    fn family_k1_sizes() {
        let f = gf2();
        let fam = generalized_punctured_family(&f, 1).unwrap();
        // |C_Q| = |C_{Q,v}| = q^(2k^2) = 4
        assert_eq!(fam.part_q().len(), 4);
        assert_eq!(fam.part_qv().len(), 4);
        assert_eq!(fam.len(), 8);
        assert_eq!(fam.min_distance(), 1);
    }

    #[test]
    fn family_k2_sizes_and_distance() {
        let f = gf2();
        let fam = generalized_punctured_family(&f, 2).unwrap();
        assert_eq!(fam.part_q().len(), 256);
        assert_eq!(fam.part_qv().len(), 256);
        assert_eq!(fam.len(), 512);
        assert_eq!(fam.min_distance(), 3);
        let report = fam.code().verify(0);
        assert!(report.exhaustive);
        assert_eq!(report.observed_min_distance, Some(3));
    }

    #[test]
    fn family_k1_gf3() {
        let f = FieldCtx::gf(3).unwrap();
        let fam = generalized_punctured_family(&f, 1).unwrap();
        assert_eq!(fam.part_q().len(), 9);
        assert_eq!(fam.part_qv().len(), 9);
    }

    #[test]
    fn example8_pipeline() {
        let f = gf2();
        let skeleton =
            SkeletonCode::hamming_weight_class("extended_hamming_8_4_4", Some(4)).unwrap();
        let source = SubspaceCode::construct_multilevel(&f, &skeleton, 2).unwrap();
        let q = PuncturingContext::standard_hyperplane(&f, 8);
        let ctx = PuncturingContext::new(q, vec![1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        let punctured = puncture_code(&source, &ctx, true).unwrap();
        // averaging bound: ceil(4573 * 30 / 255) = 538, plus two trivial words
        assert!(punctured.len() >= 540, "punctured size {}", punctured.len());
        assert_eq!(punctured.min_distance(), 3);
        let report = punctured.code().verify(0);
        assert!(report.exhaustive);
        assert_eq!(report.observed_min_distance, Some(3));
        // parts are disjoint by dimension for a constant-dimension source
        assert_eq!(punctured.raw_total(), punctured.len() - 2);
    }

    #[test]
    fn decode_punctured_roundtrip_family() {
        let f = gf2();
        let fam = generalized_punctured_family(&f, 2).unwrap();
        for (i, cw) in fam.code().codewords().enumerate() {
            if i % 37 == 0 {
                let out = fam.decode(cw).unwrap();
                assert_eq!(out.decoded(), Some(cw));
            }
        }
    }

    #[test]
    fn theorem6_bound_small_codes() {
        // exhaustive sweeps on every constant-dimension code we can afford
        let f = gf2();
        let skeleton = SkeletonCode::lexicode(5, 2, 4);
        let analytic = code_size_analytic(&f, &skeleton, 2).unwrap();
        let code = SubspaceCode::construct_multilevel(&f, &skeleton, 2).unwrap();
        assert_eq!(code.len() as u128, analytic.total);
        let best = best_context_search(&code, ContextSearch::Exhaustive).unwrap();
        assert!(Some(best.size as u128) >= best.bound.map(|b| b));
    }
}
