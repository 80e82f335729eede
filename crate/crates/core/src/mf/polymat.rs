use std::sync::Arc;

use crate::error::Error;
use crate::ring::{check_same_ring, GaussianRational, Poly, RingContext};

/// Rectangular matrix of polynomials over one ring, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMat {
    ring: Arc<RingContext>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    pub fn new(
        ring: &Arc<RingContext>,
        rows: usize,
        cols: usize,
        entries: Vec<Poly>,
    ) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                detail: format!("{rows}x{cols} matrix needs {} entries, got {}", rows * cols, entries.len()),
            });
        }
        for e in &entries {
            check_same_ring(ring, e.ring())?;
        }
        Ok(PolyMat { ring: ring.clone(), rows, cols, entries })
    }

    pub fn zeros(ring: &Arc<RingContext>, rows: usize, cols: usize) -> Self {
        PolyMat { ring: ring.clone(), rows, cols, entries: vec![Poly::zero(ring); rows * cols] }
    }

    /// `p * I_n`.
    pub fn scalar(ring: &Arc<RingContext>, n: usize, p: &Poly) -> Self {
        let mut m = PolyMat::zeros(ring, n, n);
        for k in 0..n {
            m.set(k, k, p.clone());
        }
        m
    }

    pub fn identity(ring: &Arc<RingContext>, n: usize) -> Self {
        PolyMat::scalar(ring, n, &Poly::one(ring))
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Poly) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Largest total degree over all entries (`None` for a zero matrix).
    pub fn max_entry_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(Poly::total_degree).max()
    }

    /// Every entry has order >= 1 (vacuously true for empty matrices).
    pub fn all_entries_in_maximal_ideal(&self) -> bool {
        self.entries.iter().all(|p| p.order().map_or(true, |o| o >= 1))
    }

    pub fn mul(&self, other: &PolyMat) -> Result<PolyMat, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                detail: format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols),
            });
        }
        let mut out = PolyMat::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyMat) -> Result<PolyMat, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                detail: format!("{}x{} + {}x{}", self.rows, self.cols, other.rows, other.cols),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(PolyMat { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn neg(&self) -> PolyMat {
        PolyMat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| -p).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> PolyMat {
        PolyMat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Block matrix `[[a, b], [c, d]]`; shapes must be consistent.
    pub fn block2x2(a: &PolyMat, b: &PolyMat, c: &PolyMat, d: &PolyMat) -> Result<PolyMat, Error> {
        check_same_ring(&a.ring, &b.ring)?;
        check_same_ring(&a.ring, &c.ring)?;
        check_same_ring(&a.ring, &d.ring)?;
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::ShapeMismatch { detail: "inconsistent block shapes".into() });
        }
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut out = PolyMat::zeros(&a.ring, rows, cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.get(i, j).clone());
            }
            for j in 0..b.cols {
                out.set(i, a.cols + j, b.get(i, j).clone());
            }
        }
        for i in 0..c.rows {
            for j in 0..c.cols {
                out.set(a.rows + i, j, c.get(i, j).clone());
            }
            for j in 0..d.cols {
                out.set(a.rows + i, c.cols + j, d.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Entry-wise move into an extended ring.
    pub fn lifted_to(&self, target: &Arc<RingContext>) -> Result<PolyMat, Error> {
        let entries: Result<Vec<Poly>, Error> =
            self.entries.iter().map(|p| p.lifted_to(target)).collect();
        Ok(PolyMat { ring: target.clone(), rows: self.rows, cols: self.cols, entries: entries? })
    }

    /// Drop one row and one column.
    pub fn deleted(&self, row: usize, col: usize) -> PolyMat {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            for j in 0..self.cols {
                if j == col {
                    continue;
                }
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMat { ring: self.ring.clone(), rows: self.rows - 1, cols: self.cols - 1, entries }
    }

    /// Reorder rows by `row_perm` and columns by `col_perm`:
    /// `out[i][j] = self[row_perm[i]][col_perm[j]]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> PolyMat {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        let mut out = PolyMat::zeros(&self.ring, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(row_perm[i], col_perm[j]).clone());
            }
        }
        out
    }
}
