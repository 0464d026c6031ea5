//! Ferrers diagrams (right-justified, as used for echelon forms of
//! subspaces), conjugation, the echelon Ferrers form EF(v) of a binary
//! vector, and the upper bound on dimensions of Ferrers-diagram rank-metric
//! codes.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::BitWord;

/// A partition drawn as a right-justified dot pattern: row i carries
/// `rows[i]` dots, flushed right, with non-increasing row lengths. The empty
/// diagram (no dots) is legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FerrersDiagram {
    rows: Vec<usize>,
}

impl FerrersDiagram {
    pub fn new(rows: Vec<usize>) -> Result<FerrersDiagram> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "row lengths must be non-increasing".into(),
            ));
        }
        if rows.iter().any(|&r| r == 0) {
            return Err(Error::InvalidParameter("row lengths must be positive".into()));
        }
        Ok(FerrersDiagram { rows })
    }

    pub fn empty() -> FerrersDiagram {
        FerrersDiagram { rows: Vec::new() }
    }

    /// Full m x eta box.
    pub fn full(m: usize, eta: usize) -> FerrersDiagram {
        if m == 0 || eta == 0 {
            return FerrersDiagram::empty();
        }
        FerrersDiagram { rows: vec![eta; m] }
    }

    pub fn row_lengths(&self) -> &[usize] {
        &self.rows
    }

    /// Number of rows m (dots in the rightmost column).
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns eta (dots in the top row).
    pub fn num_cols(&self) -> usize {
        self.rows.first().copied().unwrap_or(0)
    }

    pub fn dots(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Dots in column j, columns indexed 0..eta left to right. Since rows
    /// are right-justified with non-increasing lengths, the dots of a column
    /// occupy its topmost positions.
    pub fn col_counts(&self) -> Vec<usize> {
        let eta = self.num_cols();
        (0..eta)
            .map(|j| self.rows.iter().filter(|&&len| len >= eta - j).count())
            .collect()
    }

    /// Dot at (row i, column j), both 0-indexed in the m x eta box.
    pub fn has_dot(&self, i: usize, j: usize) -> bool {
        i < self.rows.len() && j < self.num_cols() && j >= self.num_cols() - self.rows[i]
    }

    /// Read the diagram by columns: the conjugate partition. An m x eta
    /// diagram conjugates to an eta x m diagram; applying it twice returns
    /// the original.
    pub fn conjugate(&self) -> FerrersDiagram {
        let mut cols = self.col_counts();
        cols.reverse(); // col_counts is non-decreasing; reversed it is a partition
        FerrersDiagram { rows: cols }
    }

    /// Upper bound on the dimension of a rank-distance-`delta` code confined
    /// to this diagram: the minimum over i of the number of dots outside the
    /// first i rows and outside the rightmost delta-1-i columns.
    pub fn dim_bound(&self, delta: usize) -> usize {
        assert!(delta >= 1);
        (0..delta)
            .map(|i| {
                let cols_removed = delta - 1 - i;
                self.rows
                    .iter()
                    .skip(i)
                    .map(|&len| len.saturating_sub(cols_removed))
                    .sum::<usize>()
            })
            .min()
            .unwrap_or(0)
    }

    /// Hypothesis of the attaining construction: the diagram is at least as
    /// tall as wide and each of its rightmost delta-1 columns is full.
    pub fn construction_hypothesis(&self, delta: usize) -> bool {
        assert!(delta >= 1);
        let m = self.num_rows();
        let eta = self.num_cols();
        if m < eta || delta - 1 > eta {
            return false;
        }
        let cols = self.col_counts();
        cols.iter().rev().take(delta - 1).all(|&c| c == m)
    }
}

impl fmt::Debug for FerrersDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FerrersDiagram{:?}", self.rows)
    }
}

impl fmt::Display for FerrersDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eta = self.num_cols();
        for (i, &len) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..eta {
                write!(f, "{}", if j >= eta - len { "●" } else { " " })?;
            }
        }
        Ok(())
    }
}

/// All partitions fitting a max_rows x max_cols box, the empty one included.
pub fn partitions_in_box(max_rows: usize, max_cols: usize) -> Vec<FerrersDiagram> {
    fn rec(out: &mut Vec<Vec<usize>>, prefix: &mut Vec<usize>, rows_left: usize, cap: usize) {
        out.push(prefix.clone());
        if rows_left == 0 {
            return;
        }
        for len in (1..=cap).rev() {
            prefix.push(len);
            rec(out, prefix, rows_left - 1, len);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&mut raw, &mut Vec::new(), max_rows, max_cols);
    raw.into_iter().map(|rows| FerrersDiagram { rows }).collect()
}

/// The echelon Ferrers form EF(v) of a binary vector v of weight k: the
/// k x n reduced-row-echelon skeleton whose pivots sit at the support of v.
/// Free entries ("dots") are the positions right of each pivot that are not
/// pivot columns themselves; they form a Ferrers diagram right-justified in
/// the k x (n-k) box of non-pivot columns.
#[derive(Clone, PartialEq, Eq)]
pub struct EchelonFerrersForm {
    v: BitWord,
    pivots: Vec<usize>,
    nonpivots: Vec<usize>,
    diagram: FerrersDiagram,
}

impl EchelonFerrersForm {
    pub fn new(v: BitWord) -> Result<EchelonFerrersForm> {
        if v.weight() == 0 {
            return Err(Error::InvalidParameter(
                "identifying vector must have positive weight".into(),
            ));
        }
        let pivots = v.support();
        let nonpivots: Vec<usize> = (0..v.len()).filter(|&i| !v.get(i)).collect();
        // dots of EF row i: non-pivot columns right of pivot i; the counts
        // are non-increasing, zero-length tails are dropped
        let mut lens: Vec<usize> = pivots
            .iter()
            .map(|&p| nonpivots.iter().filter(|&&c| c > p).count())
            .collect();
        while lens.last() == Some(&0) {
            lens.pop();
        }
        let diagram = FerrersDiagram::new(lens)?;
        Ok(EchelonFerrersForm { v, pivots, nonpivots, diagram })
    }

    pub fn identifying_vector(&self) -> BitWord {
        self.v
    }

    pub fn ambient(&self) -> usize {
        self.v.len()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn nonpivot_columns(&self) -> &[usize] {
        &self.nonpivots
    }

    pub fn diagram(&self) -> &FerrersDiagram {
        &self.diagram
    }

    /// Dots as (EF row, ambient column) pairs, row-major.
    pub fn dot_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &p) in self.pivots.iter().enumerate() {
            for &c in &self.nonpivots {
                if c > p {
                    out.push((i, c));
                }
            }
        }
        out
    }

    /// Column offset of the diagram inside the k x (n-k) box of non-pivot
    /// columns: the diagram occupies the rightmost `eta` of those columns.
    pub fn box_col_offset(&self) -> usize {
        self.nonpivots.len() - self.diagram.num_cols()
    }
}

impl fmt::Debug for EchelonFerrersForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EF({})", self.v)
    }
}
