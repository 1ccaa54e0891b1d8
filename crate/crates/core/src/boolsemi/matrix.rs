use serde::{Deserialize, Serialize};

use super::Bits;
use crate::error::Error;
use crate::limits::Limits;

use super::Semimodule;

/// A Boolean matrix, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoolMatrix {
    pub rows: usize,
    pub cols: usize,
    /// One [`Bits`] of width `cols` per row.
    pub data: Vec<Bits>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BoolMatrix {
            rows,
            cols,
            data: vec![Bits::zeros(cols); rows],
        }
    }

    /// Builds a matrix from 0/1 entries given row by row.
    pub fn from_entries(entries: &[Vec<u8>]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let data = entries
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix");
                Bits::from_bools(&r.iter().map(|&x| x != 0).collect::<Vec<_>>())
            })
            .collect();
        BoolMatrix { rows, cols, data }
    }

    /// Parses rows like `["011", "110"]`.
    pub fn from_rows(rows: &[&str]) -> Self {
        let data: Vec<Bits> = rows.iter().map(|r| Bits::parse(r).expect("bad row")).collect();
        let cols = data.first().map_or(0, |b| b.len());
        assert!(data.iter().all(|b| b.len() == cols), "ragged matrix");
        BoolMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.data[r].set(c, v);
    }

    pub fn row(&self, r: usize) -> &Bits {
        &self.data[r]
    }

    pub fn col(&self, c: usize) -> Bits {
        Bits::from_bools(&(0..self.rows).map(|r| self.get(r, c)).collect::<Vec<_>>())
    }

    pub fn transpose(&self) -> BoolMatrix {
        BoolMatrix {
            rows: self.cols,
            cols: self.rows,
            data: (0..self.cols).map(|c| self.col(c)).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    /// Deletes rows and then columns that are joins of the remaining
    /// ones, repeating until none is redundant. Scans rows before
    /// columns, lowest index first. Row and column spans are preserved
    /// up to isomorphism.
    pub fn canonical_matrix(&self) -> BoolMatrix {
        let mut m = self.clone();
        loop {
            if let Some(r) = redundant_row(&m) {
                m.data.remove(r);
                m.rows -= 1;
                continue;
            }
            let t = m.transpose();
            if let Some(c) = redundant_row(&t) {
                let mut t2 = t;
                t2.data.remove(c);
                t2.rows -= 1;
                m = t2.transpose();
                continue;
            }
            return m;
        }
    }

    /// Join closure of the rows.
    pub fn row_span(&self, limits: &Limits) -> Result<Semimodule, Error> {
        Semimodule::span(self.cols, self.data.clone(), limits)
    }

    /// Join closure of the columns.
    pub fn col_span(&self, limits: &Limits) -> Result<Semimodule, Error> {
        self.transpose().row_span(limits)
    }
}

/// Index of the first row that is the join of the other rows below it.
fn redundant_row(m: &BoolMatrix) -> Option<usize> {
    (0..m.rows).find(|&r| {
        let mut acc = Bits::zeros(m.cols);
        for (i, row) in m.data.iter().enumerate() {
            if i != r && row.leq(&m.data[r]) {
                acc.or_assign(row);
            }
        }
        acc == m.data[r]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_matrix_is_idempotent_and_removes_duplicates() {
        let id3 = BoolMatrix::from_rows(&["100", "010", "001"]);
        assert_eq!(id3.canonical_matrix(), id3);

        let dup = BoolMatrix::from_rows(&["101", "101", "010"]);
        let c = dup.canonical_matrix();
        assert_eq!(c.rows, 2);
        assert_eq!(c.canonical_matrix(), c);

        // all weight-2 columns of B^4: already reduced, 6 column
        // generators against 4 row generators
        let w2 = BoolMatrix::from_rows(&[
            "111000", "100110", "010101", "001011",
        ]);
        assert_eq!(w2.canonical_matrix(), w2);
        let limits = crate::limits::Limits::default();
        assert_eq!(w2.col_span(&limits).unwrap().irreducibles().len(), 6);
        assert_eq!(w2.row_span(&limits).unwrap().irreducibles().len(), 4);
    }

    #[test]
    fn transpose_and_access() {
        let m = BoolMatrix::from_rows(&["011", "100"]);
        assert!(m.get(0, 1) && m.get(1, 0) && !m.get(0, 0));
        let t = m.transpose();
        assert_eq!(t.rows, 3);
        assert_eq!(t, BoolMatrix::from_rows(&["01", "10", "10"]));
        assert!(!m.is_symmetric());
    }

    #[test]
    fn json_shape() {
        let m = BoolMatrix::from_rows(&["01", "11"]);
        let j = serde_json::to_value(&m).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"rows": 2, "cols": 2, "data": ["01", "11"]})
        );
        let back: BoolMatrix = serde_json::from_value(j).unwrap();
        assert_eq!(back, m);
    }
}
