use std::fmt;

use crate::algebra::{Poly, Ring};
use crate::error::{Error, Result};

/// Dense matrix of polynomials acting on column vectors.
#[derive(Clone)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Poly>>, ncols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for p in row {
                ring.check_same(p.ring())?;
                data.push(p);
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: nrows, cols: ncols, data })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        let cols = self.cols;
        self.data.iter().enumerate().map(move |(k, p)| (k / cols, k % cols, p))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        self.ring.check_same(&rhs.ring)?;
        let mut out = Self::zeros(&self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * rhs.cols + j].add_mul_assign(a, b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &PolyMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<PolyMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        self.ring.check_same(&rhs.ring)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: &Poly) -> PolyMatrix {
        self.map(|p| p * c)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Fallible entrywise map into `ring` (which may differ from this
    /// matrix's ring, e.g. when embedding).
    pub fn try_map_into(&self, ring: &Ring, f: impl Fn(&Poly) -> Result<Poly>) -> Result<PolyMatrix> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { ring: ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for (i, j, p) in self.entries() {
            out.set(j, i, p.clone());
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = Self::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Copy `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for (i, j, p) in block.entries() {
            self.set(r0 + i, c0 + j, p.clone());
        }
    }

    /// First entry (row-major) where the matrices differ, with `self - other`
    /// at that entry.
    pub fn first_difference(&self, other: &PolyMatrix) -> Option<(usize, usize, Poly)> {
        debug_assert!(self.rows == other.rows && self.cols == other.cols);
        self.data.iter().zip(&other.data).enumerate().find_map(|(k, (a, b))| {
            (a != b).then(|| (k / self.cols, k % self.cols, a - b))
        })
    }
}

impl PartialEq for PolyMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
