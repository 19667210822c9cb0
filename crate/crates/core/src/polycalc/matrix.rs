//! Dense matrices of polynomials sharing one ring.

use super::{MultiPoly, VarNames};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    conductor: u32,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize, conductor: u32) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            conductor,
            entries: vec![MultiPoly::zero(nvars, conductor); rows * cols],
        }
    }

    /// `p` times the identity.
    pub fn scalar(n: usize, p: &MultiPoly) -> Self {
        let mut m = Self::zeros(n, n, p.nvars(), p.conductor());
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(nvars: usize, conductor: u32, rows: Vec<Vec<MultiPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c, nvars, conductor);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        debug_assert_eq!(p.nvars(), self.nvars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols, self.nvars, self.conductor);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (o, b) in out.entries.iter_mut().zip(&other.entries) {
            *o = &*o + b;
        }
        out
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        let mut out = self.clone();
        for o in out.entries.iter_mut() {
            *o = -&*o;
        }
        out
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyMatrix {
        let entries: Vec<MultiPoly> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map_or(self.nvars, MultiPoly::nvars);
        PolyMatrix { rows: self.rows, cols: self.cols, nvars, conductor: self.conductor, entries }
    }

    /// Kronecker product with `self` as the outer (major) index.
    pub fn kron(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut out =
            Self::zeros(self.rows * other.rows, self.cols * other.cols, self.nvars, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Stacks `[[tl, tr], [bl, br]]`.
    pub fn blocks(tl: &PolyMatrix, tr: &PolyMatrix, bl: &PolyMatrix, br: &PolyMatrix) -> PolyMatrix {
        assert_eq!(tl.rows, tr.rows);
        assert_eq!(bl.rows, br.rows);
        assert_eq!(tl.cols, bl.cols);
        assert_eq!(tr.cols, br.cols);
        let mut out = Self::zeros(tl.rows + bl.rows, tl.cols + tr.cols, tl.nvars, tl.conductor);
        for (m, r0, c0) in [(tl, 0, 0), (tr, 0, tl.cols), (bl, tl.rows, 0), (br, tl.rows, tl.cols)] {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(r0 + i, c0 + j, m.get(i, j).clone());
                }
            }
        }
        out
    }

    pub fn render(&self, names: &VarNames) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| names.render(self.get(i, j))).collect())
            .collect()
    }
}
