//! Sparse exact linear algebra over ℚ(ζ_n): an incremental echelon form that
//! records how each stored row was combined from the inserted vectors, which
//! gives kernels, spans and particular solutions from one elimination pass.

use std::collections::BTreeMap;

use super::Cyclo;

pub type SparseVec = BTreeMap<usize, Cyclo>;

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Rows indexed by pivot column, each normalised to pivot 1.
#[derive(Clone, Debug)]
pub struct Echelon {
    conductor: u32,
    rows: BTreeMap<usize, Row>,
    inserted: usize,
}

/// `dst −= c·src`.
fn sub_scaled(dst: &mut SparseVec, c: &Cyclo, src: &SparseVec) {
    for (k, v) in src {
        let t = c * v;
        match dst.get_mut(k) {
            Some(e) => {
                *e -= &t;
                if e.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                dst.insert(*k, -t);
            }
        }
    }
}

impl Echelon {
    pub fn new(conductor: u32) -> Self {
        Echelon { conductor, rows: BTreeMap::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` against the stored rows; returns the residual and the
    /// combination `c` of inserted vectors with `residual = v + Σ c_i v_i`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut res = v.clone();
        let mut combo = SparseVec::new();
        let mut from = 0usize;
        loop {
            let Some((&k, c)) = res.range(from..).find(|(k, _)| self.rows.contains_key(k)) else { break };
            let c = c.clone();
            let row = &self.rows[&k];
            sub_scaled(&mut res, &c, &row.vec);
            sub_scaled(&mut combo, &c, &row.combo);
            from = k + 1;
        }
        (res, combo)
    }

    /// Inserts `v` as the next vector. On dependence returns the relation
    /// `Σ r_i v_i = 0` (including `v` itself with coefficient 1).
    pub fn insert(&mut self, v: &SparseVec) -> Result<usize, SparseVec> {
        let id = self.inserted;
        self.inserted += 1;
        let (res, combo) = self.reduce(v);
        let mut relation = combo;
        relation.insert(id, Cyclo::one(self.conductor));
        let Some((&pivot, lead)) = res.iter().next() else {
            return Err(relation);
        };
        let inv = lead.inv().expect("nonzero pivot");
        let scale = |m: SparseVec| -> SparseVec { m.into_iter().map(|(k, c)| (k, &c * &inv)).collect() };
        self.rows.insert(pivot, Row { vec: scale(res), combo: scale(relation) });
        Ok(pivot)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coefficients `x` with `Σ x_i v_i = target`, if `target` is in the span.
    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        let (res, combo) = self.reduce(target);
        res.is_empty().then(|| combo.into_iter().map(|(k, c)| (k, -c)).collect())
    }
}

/// A basis of `{x : Σ x_j columns[j] = 0}`.
pub fn kernel(columns: &[SparseVec], conductor: u32) -> Vec<SparseVec> {
    let mut ech = Echelon::new(conductor);
    columns.iter().filter_map(|c| ech.insert(c).err()).collect()
}
