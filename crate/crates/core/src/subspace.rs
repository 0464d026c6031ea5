//! Subspaces of GF(q)^n in canonical form and the subspace metric.
//!
//! A subspace is stored as its unique reduced-row-echelon generator matrix
//! with zero rows dropped, so equality and hashing are structural. The null
//! space {0} is first-class: dimension 0, empty generator.

use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FiniteField};
use crate::matrix::MatrixGFq;
use crate::word::BitWord;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    /// k x n generator in RREF, k = dim, no zero rows.
    gen: MatrixGFq,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonicalize a spanning set. The zero matrix (or an empty list) yields
    /// the null space.
    pub fn from_rows(field: &FieldCtx, rows: Vec<Vec<u64>>, n: usize) -> Result<Subspace> {
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch {
                expected: (rows.len(), n),
                got: (rows.len(), rows.iter().map(|r| r.len()).max().unwrap_or(0)),
            });
        }
        if rows.is_empty() {
            let gen = MatrixGFq::zeros(field, 0, n);
            return Ok(Subspace { gen, pivots: Vec::new() });
        }
        let m = MatrixGFq::from_rows(field, rows)?;
        Ok(Subspace::from_matrix(&m))
    }

    pub fn from_matrix(m: &MatrixGFq) -> Subspace {
        let (mut rr, rank, pivots) = m.rref();
        // drop zero rows
        let rows: Vec<Vec<u64>> = (0..rank).map(|r| rr.row_vec(r)).collect();
        rr = MatrixGFq::from_rows(m.field(), rows)
            .unwrap_or_else(|_| MatrixGFq::zeros(m.field(), 0, m.cols()));
        if rank == 0 {
            rr = MatrixGFq::zeros(m.field(), 0, m.cols());
        }
        Subspace { gen: rr, pivots }
    }

    pub fn zero(field: &FieldCtx, n: usize) -> Subspace {
        Subspace { gen: MatrixGFq::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: &FieldCtx, n: usize) -> Subspace {
        Subspace { gen: MatrixGFq::identity(field, n), pivots: (0..n).collect() }
    }

    pub fn field(&self) -> &FieldCtx {
        self.gen.field()
    }

    /// Ambient dimension n.
    pub fn ambient(&self) -> usize {
        self.gen.cols()
    }

    /// Subspace dimension k.
    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// The canonical generator matrix E(X).
    pub fn generator(&self) -> &MatrixGFq {
        &self.gen
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Binary weight-k vector marking the pivot columns of E(X).
    pub fn identifying_vector(&self) -> BitWord {
        let mut w = BitWord::zero(self.ambient());
        for &p in &self.pivots {
            w.set(p, true);
        }
        w
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() || self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// Membership test by reduction against the RREF generator.
    pub fn contains_vector(&self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.ambient());
        let f = self.field().clone();
        let mut v = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c != 0 {
                for j in 0..v.len() {
                    v[j] = f.sub(v[j], f.mul(c, self.gen.get(r, j)));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Subspace inclusion: every generator row of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|r| other.contains_vector(self.gen.row(r)))
    }

    /// dim U + dim V - 2 dim(U cap V), computed as
    /// 2 rank([E(U); E(V)]) - dim U - dim V.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        self.check_ambient(other)?;
        let stacked = self.gen.stack(&other.gen)?;
        Ok(2 * stacked.rank() - self.dim() - other.dim())
    }

    /// U + V as a subspace.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_matrix(&self.gen.stack(&other.gen)?))
    }

    /// U cap V via the Zassenhaus block trick: reduce [E(U) E(U); E(V) 0];
    /// rows with zero left half carry an intersection basis in the right half.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient();
        let f = self.field();
        let mut block = MatrixGFq::zeros(f, self.dim() + other.dim(), 2 * n);
        for r in 0..self.dim() {
            for c in 0..n {
                let v = self.gen.get(r, c);
                block.set(r, c, v);
                block.set(r, n + c, v);
            }
        }
        for r in 0..other.dim() {
            for c in 0..n {
                block.set(self.dim() + r, c, other.gen.get(r, c));
            }
        }
        let (rr, rank, _) = block.rref();
        let mut rows = Vec::new();
        for r in 0..rank {
            if (0..n).all(|c| rr.get(r, c) == 0) {
                rows.push(rr.row(r)[n..].to_vec());
            }
        }
        Subspace::from_rows(f, rows, n)
    }

    /// Orthogonal complement under the standard inner product.
    pub fn orthogonal_complement(&self) -> Subspace {
        Subspace::from_matrix(&self.gen.kernel())
    }

    /// Delete coordinate `i` (0-indexed) from every vector. Requires that
    /// the unit vector e_i is not in the subspace; dimension is preserved.
    pub fn puncture_coordinate(&self, i: usize) -> Result<Subspace> {
        let n = self.ambient();
        if i >= n {
            return Err(Error::InvalidParameter(format!(
                "coordinate {i} outside ambient dimension {n}"
            )));
        }
        let mut unit = vec![0u64; n];
        unit[i] = 1;
        if self.contains_vector(&unit) {
            return Err(Error::UnitVectorInSubspace(i));
        }
        let rows: Vec<Vec<u64>> = (0..self.dim())
            .map(|r| {
                let mut row = self.gen.row_vec(r);
                row.remove(i);
                row
            })
            .collect();
        let out = Subspace::from_rows(self.field(), rows, n - 1)?;
        debug_assert_eq!(out.dim(), self.dim());
        Ok(out)
    }

    /// Every vector of the subspace, the zero vector included. Intended for
    /// desk-scale checks; q^k vectors.
    pub fn vectors(&self) -> Vec<Vec<u64>> {
        let f = self.field().clone();
        let n = self.ambient();
        let q = f.order();
        let k = self.dim();
        let total = (q as u128).pow(k as u32);
        let mut out = Vec::with_capacity(total as usize);
        let mut coeffs = vec![0u64; k];
        loop {
            let mut v = vec![0u64; n];
            for (r, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for j in 0..n {
                        v[j] = f.add(v[j], f.mul(c, self.gen.get(r, j)));
                    }
                }
            }
            out.push(v);
            // odometer
            let mut pos = 0;
            loop {
                if pos == k {
                    return out;
                }
                coeffs[pos] += 1;
                if coeffs[pos] < q {
                    break;
                }
                coeffs[pos] = 0;
                pos += 1;
            }
        }
    }
}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field().characteristic().hash(state);
        self.field().degree().hash(state);
        self.ambient().hash(state);
        self.dim().hash(state);
        for r in 0..self.dim() {
            self.gen.row(r).hash(state);
        }
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of {:?}^{})", self.dim(), self.field(), self.ambient())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn gf2() -> FieldCtx {
        FieldCtx::gf(2).unwrap()
    }

    fn rand_subspace(rng: &mut StdRng, f: &FieldCtx, n: usize, k: usize) -> Subspace {
        loop {
            let rows: Vec<Vec<u64>> = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(0..f.order())).collect())
                .collect();
            let s = Subspace::from_rows(f, rows, n).unwrap();
            if s.dim() == k {
                return s;
            }
        }
    }

    #[test]
    fn running_example_canonical_form() {
        let f = gf2();
        // the eight listed vectors of the running example span the same
        // subspace as its RREF basis
        let vectors = vec![
            vec![0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 1, 1, 0, 0, 0],
            vec![1, 0, 0, 1, 1, 0, 1],
            vec![1, 0, 1, 0, 0, 1, 1],
            vec![0, 0, 1, 0, 1, 0, 1],
            vec![0, 0, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 1, 1, 1, 0],
            vec![1, 0, 0, 0, 1, 1, 0],
        ];
        let x = Subspace::from_rows(&f, vectors.clone(), 7).unwrap();
        let basis = Subspace::from_rows(
            &f,
            vec![
                vec![1, 0, 0, 0, 1, 1, 0],
                vec![0, 0, 1, 0, 1, 0, 1],
                vec![0, 0, 0, 1, 0, 1, 1],
            ],
            7,
        )
        .unwrap();
        assert_eq!(x, basis);
        assert_eq!(x.dim(), 3);
        assert_eq!(x.identifying_vector().to_string(), "1011000");
        for v in &vectors {
            assert!(x.contains_vector(v));
        }
        assert_eq!(x.vectors().len(), 8);
    }

    #[test]
    fn duplicate_rows_collapse() {
        let f = gf2();
        let a = Subspace::from_rows(&f, vec![vec![1, 1, 0], vec![1, 1, 0]], 3).unwrap();
        let b = Subspace::from_rows(&f, vec![vec![1, 1, 0]], 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn zero_space() {
        let f = gf2();
        let z = Subspace::from_rows(&f, vec![vec![0, 0, 0, 0]], 4).unwrap();
        assert_eq!(z.dim(), 0);
        assert_eq!(z, Subspace::zero(&f, 4));
        assert_eq!(z.identifying_vector().weight(), 0);
        assert!(z.contains_vector(&[0, 0, 0, 0]));
        assert_eq!(Subspace::full(&f, 4).identifying_vector().weight(), 4);
    }

    #[test]
    fn distance_basics() {
        let f = gf2();
        let u = Subspace::from_rows(&f, vec![vec![1, 0, 0, 0]], 4).unwrap();
        let v =
            Subspace::from_rows(&f, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]], 4).unwrap();
        assert_eq!(u.distance(&u).unwrap(), 0);
        assert_eq!(u.distance(&v).unwrap(), 1);
        assert_eq!(v.distance(&u).unwrap(), 1);
    }

    #[test]
    fn distance_cross_checked_by_intersection() {
        let f = FieldCtx::gf(3).unwrap();
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..1000 {
            let k1 = rng.gen_range(0..=3);
            let k2 = rng.gen_range(0..=3);
            let u = rand_subspace(&mut rng, &f, 5, k1);
            let v = rand_subspace(&mut rng, &f, 5, k2);
            let meet = u.intersection(&v).unwrap();
            let expected = u.dim() + v.dim() - 2 * meet.dim();
            assert_eq!(u.distance(&v).unwrap(), expected);
            // modular identity dim(U cap V) = dim U + dim V - dim(U + V)
            let join = u.sum(&v).unwrap();
            assert_eq!(meet.dim(), u.dim() + v.dim() - join.dim());
            assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&v));
            assert!(u.is_subspace_of(&join));
        }
    }

    #[test]
    fn triangle_inequality_random() {
        let f = gf2();
        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..500 {
            let (ka, kb, kc) =
                (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
            let a = rand_subspace(&mut rng, &f, 6, ka);
            let b = rand_subspace(&mut rng, &f, 6, kb);
            let c = rand_subspace(&mut rng, &f, 6, kc);
            let ab = a.distance(&b).unwrap();
            let bc = b.distance(&c).unwrap();
            let ac = a.distance(&c).unwrap();
            assert!(ac <= ab + bc);
        }
    }

    #[test]
    fn orthogonal_complement_involution() {
        let f = FieldCtx::gf(3).unwrap();
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..1000 {
            let k = rng.gen_range(0..=5);
            let x = rand_subspace(&mut rng, &f, 5, k);
            let c = x.orthogonal_complement();
            assert_eq!(c.dim(), 5 - x.dim());
            assert_eq!(c.orthogonal_complement(), x);
            for r in 0..x.dim() {
                for cr in 0..c.dim() {
                    assert_eq!(x.generator().row_dot(r, c.generator().row(cr)), 0);
                }
            }
        }
    }

    #[test]
    fn complement_of_line() {
        let f = gf2();
        let x = Subspace::from_rows(&f, vec![vec![1, 0]], 2).unwrap();
        let c = x.orthogonal_complement();
        assert_eq!(c, Subspace::from_rows(&f, vec![vec![0, 1]], 2).unwrap());
    }

    #[test]
    fn puncture_deletes_coordinate() {
        let f = gf2();
        // X = span{110, 001}, delete coordinate 2 (0-indexed 1)
        let x = Subspace::from_rows(&f, vec![vec![1, 1, 0], vec![0, 0, 1]], 3).unwrap();
        let p = x.puncture_coordinate(1).unwrap();
        assert_eq!(p, Subspace::full(&f, 2));
        // enumeration oracle: puncturing every vector gives the same set
        let mut punctured: Vec<Vec<u64>> = x
            .vectors()
            .into_iter()
            .map(|mut v| {
                v.remove(1);
                v
            })
            .collect();
        punctured.sort();
        punctured.dedup();
        let mut target = p.vectors();
        target.sort();
        assert_eq!(punctured, target);
    }

    #[test]
    fn puncture_rejects_contained_unit() {
        let f = gf2();
        let x = Subspace::from_rows(&f, vec![vec![1, 0, 0]], 3).unwrap();
        assert_eq!(x.puncture_coordinate(0), Err(Error::UnitVectorInSubspace(0)));
    }

    #[test]
    fn puncture_preserves_dimension_random() {
        let f = gf2();
        let mut rng = StdRng::seed_from_u64(37);
        let mut done = 0;
        while done < 1000 {
            let k = rng.gen_range(0..=4);
            let x = rand_subspace(&mut rng, &f, 6, k);
            let i = rng.gen_range(0..6);
            match x.puncture_coordinate(i) {
                Ok(p) => {
                    assert_eq!(p.dim(), x.dim());
                    assert_eq!(p.ambient(), 5);
                    done += 1;
                }
                Err(Error::UnitVectorInSubspace(_)) => {}
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let f = gf2();
        let u = Subspace::from_rows(&f, vec![vec![1, 0]], 2).unwrap();
        let v = Subspace::from_rows(&f, vec![vec![1, 0, 0]], 3).unwrap();
        assert_eq!(u.distance(&v), Err(Error::AmbientMismatch));
    }
}
