//! Free ℤ₂-graded bimodules as lists of rank-1 blocks, operator matrices
//! between them, DG morphisms and matrix bi-factorisations.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::kernel::Shape;
use super::operator::{compare, Mismatch, Operator, Verdict};
use crate::exactalg::Cyclo;
use crate::polycalc::MultiPoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BifactError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("potential mismatch between factors")]
    Potential,
    #[error("degenerate potential: {0}")]
    Degenerate(String),
    #[error("d² ≠ (W(a) − W(b))·id at block {block}: {mismatch:?}")]
    Violation { block: usize, mismatch: Box<Mismatch> },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Provenance of a rank-1 block: a generator of a factor, or a pair from a
/// tensor product. Leaf sequences identify blocks across rebracketings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Leaf { parity: u8, index: usize },
    Pair(Box<Label>, Box<Label>),
}

impl Label {
    pub fn leaf(parity: u8, index: usize) -> Self {
        Label::Leaf { parity, index }
    }

    pub fn parity(&self) -> u8 {
        match self {
            Label::Leaf { parity, .. } => *parity,
            Label::Pair(l, r) => (l.parity() + r.parity()) % 2,
        }
    }

    pub fn leaves(&self) -> Vec<(u8, usize)> {
        match self {
            Label::Leaf { parity, index } => vec![(*parity, *index)],
            Label::Pair(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }

    /// Compact form such as `0`, `(1,0)`, `((0,1),1)`; indices appear as
    /// `1.2` when a factor has several blocks of one parity.
    pub fn render(&self) -> String {
        match self {
            Label::Leaf { parity, index: 0 } => format!("{parity}"),
            Label::Leaf { parity, index } => format!("{parity}.{index}"),
            Label::Pair(l, r) => format!("({},{})", l.render(), r.render()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub shape: Shape,
    pub label: Label,
}

impl Block {
    pub fn parity(&self) -> u8 {
        self.label.parity()
    }
}

/// Blocks ordered with all even blocks first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    blocks: Vec<Block>,
    n_even: usize,
}

impl Space {
    pub fn new(even: Vec<Block>, odd: Vec<Block>) -> Self {
        debug_assert!(even.iter().all(|b| b.parity() == 0) && odd.iter().all(|b| b.parity() == 1));
        let n_even = even.len();
        let mut blocks = even;
        blocks.extend(odd);
        Space { blocks, n_even }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn rank(&self) -> (usize, usize) {
        (self.n_even, self.blocks.len() - self.n_even)
    }

    pub fn even(&self) -> &[Block] {
        &self.blocks[..self.n_even]
    }

    pub fn odd(&self) -> &[Block] {
        &self.blocks[self.n_even..]
    }

    pub fn block(&self, i: usize) -> &Block {
        &self.blocks[i]
    }

    pub fn parity(&self, i: usize) -> u8 {
        u8::from(i >= self.n_even)
    }

    pub fn nvars(&self) -> usize {
        self.blocks[0].shape.nvars
    }

    /// Position of the block whose leaf sequence is `leaves`.
    pub fn find_leaves(&self, leaves: &[(u8, usize)]) -> Option<usize> {
        self.blocks.iter().position(|b| b.label.leaves() == leaves)
    }

    /// Tensor product blocks: even `[D0D′0, D1D′1]`, odd `[D1D′0, D0D′1]`,
    /// each group ordered with the left index major.
    pub fn tensor(&self, other: &Space) -> Space {
        let pair = |u: &Block, v: &Block| Block {
            shape: u.shape.glue(&v.shape),
            label: Label::Pair(Box::new(u.label.clone()), Box::new(v.label.clone())),
        };
        let prod = |l: &[Block], r: &[Block]| -> Vec<Block> {
            l.iter().flat_map(|u| r.iter().map(move |v| pair(u, v))).collect()
        };
        let mut even = prod(self.even(), other.even());
        even.extend(prod(self.odd(), other.odd()));
        let mut odd = prod(self.odd(), other.even());
        odd.extend(prod(self.even(), other.odd()));
        Space::new(even, odd)
    }
}

/// Dense matrix of operators; row `i` maps into target block `i`.
#[derive(Clone, Debug)]
pub struct OpMatrix {
    source: Space,
    target: Space,
    entries: Vec<Operator>,
}

impl OpMatrix {
    pub fn zero(source: &Space, target: &Space, conductor: u32) -> Self {
        let mut entries = Vec::with_capacity(source.len() * target.len());
        for t in target.blocks() {
            for s in source.blocks() {
                entries.push(Operator::zero(s.shape, t.shape, conductor));
            }
        }
        OpMatrix { source: source.clone(), target: target.clone(), entries }
    }

    pub fn identity(space: &Space, conductor: u32) -> Self {
        let mut m = Self::zero(space, space, conductor);
        for (i, b) in space.blocks().iter().enumerate() {
            m.set(i, i, Operator::identity(b.shape, conductor));
        }
        m
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn get(&self, row: usize, col: usize) -> &Operator {
        &self.entries[row * self.source.len() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, op: Operator) {
        assert_eq!(
            (op.source(), op.target()),
            (self.source.block(col).shape, self.target.block(row).shape),
            "entry ({row},{col}) has the wrong shape"
        );
        let n = self.source.len();
        self.entries[row * n + col] = op;
    }

    /// Entries that are not structurally zero.
    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|op| !op.is_zero()).count()
    }

    pub fn map(&self, f: impl Fn(usize, usize, &Operator) -> Operator) -> OpMatrix {
        let n = self.source.len();
        let entries = self.entries.iter().enumerate().map(|(k, op)| f(k / n, k % n, op)).collect();
        OpMatrix { source: self.source.clone(), target: self.target.clone(), entries }
    }

    pub fn add(&self, other: &OpMatrix) -> OpMatrix {
        assert!(self.source == other.source && self.target == other.target, "adding matrices of different shape");
        self.map(|i, j, op| op.add(other.get(i, j)))
    }

    pub fn sub(&self, other: &OpMatrix) -> OpMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> OpMatrix {
        self.map(|_, _, op| op.neg())
    }

    pub fn scale(&self, c: &Cyclo) -> OpMatrix {
        self.map(|_, _, op| op.scale(c))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &OpMatrix) -> OpMatrix {
        assert!(self.source == inner.target, "composing matrices with mismatched spaces");
        let cond = self.conductor().max(inner.conductor());
        let mut out = OpMatrix::zero(&inner.source, &self.target, cond);
        for i in 0..self.target.len() {
            for j in 0..inner.source.len() {
                let mut acc = Operator::zero(inner.source.block(j).shape, self.target.block(i).shape, cond);
                for k in 0..self.source.len() {
                    let (a, b) = (self.get(i, k), inner.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.compose(b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn conductor(&self) -> u32 {
        self.entries.iter().map(Operator::conductor).max().unwrap_or(1).max(1)
    }

    /// Zero pattern of a morphism of the given parity.
    pub fn has_parity(&self, parity: u8) -> bool {
        (0..self.target.len()).all(|i| {
            (0..self.source.len()).all(|j| {
                self.get(i, j).is_zero() || (self.target.parity(i) + self.source.parity(j)) % 2 == parity
            })
        })
    }

    /// Entrywise comparison; the weakest verdict over all entries.
    pub fn compare(&self, other: &OpMatrix, cutoff: u32) -> Result<Verdict, EntryMismatch> {
        assert!(self.source == other.source && self.target == other.target, "comparing matrices of different shape");
        let mut verdict = Verdict::Exact;
        for i in 0..self.target.len() {
            for j in 0..self.source.len() {
                match compare(self.get(i, j), other.get(i, j), cutoff) {
                    Ok(Verdict::Exact) => {}
                    Ok(v) => verdict = v,
                    Err(m) => return Err(EntryMismatch { row: i, col: j, mismatch: m }),
                }
            }
        }
        Ok(verdict)
    }

    pub fn is_zero_to(&self, cutoff: u32) -> Result<Verdict, EntryMismatch> {
        self.compare(&OpMatrix::zero(&self.source, &self.target, self.conductor()), cutoff)
    }

    /// Entries as text, `None` for zeros.
    pub fn render(&self) -> Vec<Vec<Option<String>>> {
        (0..self.target.len())
            .map(|i| {
                (0..self.source.len())
                    .map(|j| {
                        let op = self.get(i, j);
                        (!op.is_zero()).then(|| op.render())
                    })
                    .collect()
            })
            .collect()
    }

    /// When every entry between 2-slot blocks is multiplication by a
    /// polynomial in `(a, b)`, those polynomials.
    pub fn as_poly_entries(&self) -> Option<Vec<Vec<MultiPoly>>> {
        (0..self.target.len())
            .map(|i| {
                (0..self.source.len())
                    .map(|j| self.get(i, j).as_kernel().and_then(|k| k.as_mul_poly()))
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub mismatch: Mismatch,
}

impl fmt::Display for EntryMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entry ({}, {}) differs on internal monomial {:?} by {:?}",
            self.row, self.col, self.mismatch.monomial, self.mismatch.difference
        )
    }
}

/// Even or odd DG morphism.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub parity: u8,
    pub matrix: OpMatrix,
}

impl Morphism {
    pub fn new(parity: u8, matrix: OpMatrix) -> Result<Self, BifactError> {
        if !matrix.has_parity(parity) {
            return Err(BifactError::Shape(format!("block pattern is not of parity {parity}")));
        }
        Ok(Morphism { parity, matrix })
    }

    pub fn identity(space: &Space, conductor: u32) -> Self {
        Morphism { parity: 0, matrix: OpMatrix::identity(space, conductor) }
    }

    pub fn compose(&self, inner: &Morphism) -> Morphism {
        Morphism { parity: (self.parity + inner.parity) % 2, matrix: self.matrix.compose(&inner.matrix) }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert_eq!(self.parity, other.parity, "adding morphisms of different parity");
        Morphism { parity: self.parity, matrix: self.matrix.add(&other.matrix) }
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        self.add(&other.scale(&-Cyclo::one(other.matrix.conductor())))
    }

    pub fn scale(&self, c: &Cyclo) -> Morphism {
        Morphism { parity: self.parity, matrix: self.matrix.scale(c) }
    }

    pub fn source(&self) -> &Space {
        self.matrix.source()
    }

    pub fn target(&self) -> &Space {
        self.matrix.target()
    }

    pub fn report(&self) -> MorphismReport {
        MorphismReport {
            parity: self.parity,
            source_rank: self.source().rank(),
            target_rank: self.target().rank(),
            source_blocks: self.source().blocks().iter().map(|b| b.label.render()).collect(),
            target_blocks: self.target().blocks().iter().map(|b| b.label.render()).collect(),
            entries: self.matrix.render(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismReport {
    pub parity: u8,
    pub source_rank: (usize, usize),
    pub target_rank: (usize, usize),
    pub source_blocks: Vec<String>,
    pub target_blocks: Vec<String>,
    pub entries: Vec<Vec<Option<String>>>,
}

/// A matrix bi-factorisation of `W(a) − W(b)`: a graded free bimodule with an
/// odd endomorphism squaring to the potential difference.
///
/// `twist = (m, n)` records a twisted bimodule structure `_{σ^m}D_{σ^n}` with
/// `σ(x) = η x`; it changes the actions, not the stored differential.
#[derive(Clone, Debug)]
pub struct Mbf {
    pub space: Space,
    pub diff: OpMatrix,
    pub potential: MultiPoly,
    pub twist: (i64, i64),
}

impl Mbf {
    pub fn new(space: Space, diff: OpMatrix, potential: MultiPoly) -> Result<Self, BifactError> {
        if diff.source() != &space || diff.target() != &space {
            return Err(BifactError::Shape("differential is not an endomorphism".into()));
        }
        if !diff.has_parity(1) {
            return Err(BifactError::Shape("differential is not odd".into()));
        }
        if potential.nvars() != space.nvars() {
            return Err(BifactError::Shape("potential lives in the wrong number of variables".into()));
        }
        Ok(Mbf { space, diff, potential, twist: (0, 0) })
    }

    /// Two-slot object with polynomial entries `d0: D0 → D1`, `d1: D1 → D0`
    /// in the variables `(a_1..a_N, b_1..b_N)`.
    pub fn from_polys(d0: &[Vec<MultiPoly>], d1: &[Vec<MultiPoly>], potential: MultiPoly) -> Result<Self, BifactError> {
        let nvars = potential.nvars();
        let cond = potential.conductor();
        let r0 = d0.first().map_or(0, Vec::len);
        let r1 = d0.len();
        if d1.len() != r0 || d1.iter().any(|r| r.len() != r1) || d0.iter().any(|r| r.len() != r0) {
            return Err(BifactError::Shape("d0 must be r1×r0 and d1 r0×r1".into()));
        }
        let shape = Shape::new(2, nvars);
        let even = (0..r0).map(|i| Block { shape, label: Label::leaf(0, i) }).collect();
        let odd = (0..r1).map(|i| Block { shape, label: Label::leaf(1, i) }).collect();
        let space = Space::new(even, odd);
        let mut diff = OpMatrix::zero(&space, &space, cond);
        for (i, row) in d0.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                diff.set(r0 + i, j, Operator::mul_poly(shape, p.clone()));
            }
        }
        for (i, row) in d1.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                diff.set(i, r0 + j, Operator::mul_poly(shape, p.clone()));
            }
        }
        Mbf::new(space, diff, potential)
    }

    pub fn nvars(&self) -> usize {
        self.potential.nvars()
    }

    pub fn conductor(&self) -> u32 {
        self.potential.conductor()
    }

    pub fn rank(&self) -> (usize, usize) {
        self.space.rank()
    }

    /// `W(outer left) − W(outer right)` in the variables of `shape`.
    pub fn potential_difference(&self, shape: Shape) -> MultiPoly {
        let n = self.nvars();
        let left: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (0..n).map(|v| shape.var(shape.slots - 1, v)).collect();
        &self.potential.embed(&left, shape.vars()) - &self.potential.embed(&right, shape.vars())
    }

    /// Checks `d∘d = (W(a) − W(b))·id` block by block.
    pub fn validate(&self, cutoff: u32) -> Result<Verdict, BifactError> {
        let sq = self.diff.compose(&self.diff);
        let mut expect = OpMatrix::zero(&self.space, &self.space, self.conductor());
        for (i, b) in self.space.blocks().iter().enumerate() {
            expect.set(i, i, Operator::mul_poly(b.shape, self.potential_difference(b.shape)));
        }
        sq.compare(&expect, cutoff)
            .map_err(|e| BifactError::Violation { block: e.row, mismatch: Box::new(e.mismatch) })
    }

    /// The δ-differential on morphisms `self → other`:
    /// `δφ = D′φ − (−1)^{|φ|} φ D`.
    pub fn delta(&self, phi: &Morphism, other: &Mbf) -> Result<Morphism, BifactError> {
        if phi.source() != &self.space || phi.target() != &other.space {
            return Err(BifactError::Shape("morphism does not connect the given objects".into()));
        }
        let left = other.diff.compose(&phi.matrix);
        let right = phi.matrix.compose(&self.diff);
        let matrix = if phi.parity == 0 { left.sub(&right) } else { left.add(&right) };
        Ok(Morphism { parity: 1 - phi.parity, matrix })
    }

    pub fn is_closed(&self, phi: &Morphism, other: &Mbf, cutoff: u32) -> Result<Verdict, BifactError> {
        let dphi = self.delta(phi, other)?;
        dphi.matrix.is_zero_to(cutoff).map_err(|e| BifactError::Shape(format!("not closed: {e}")))
    }

    pub fn report(&self) -> MbfReport {
        let names = self.space.block(0).shape.names();
        MbfReport {
            nvars: self.nvars(),
            conductor: self.conductor(),
            potential: crate::polycalc::VarNames::slots(1, self.nvars()).render(&self.potential),
            rank: self.rank(),
            slots: self.space.blocks().iter().map(|b| b.shape.slots).collect(),
            blocks: self.space.blocks().iter().map(|b| b.label.render()).collect(),
            twist: self.twist,
            differential: self.diff.render(),
            variables: names.names().to_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MbfReport {
    pub nvars: usize,
    pub conductor: u32,
    pub potential: String,
    pub rank: (usize, usize),
    pub slots: Vec<usize>,
    pub blocks: Vec<String>,
    pub twist: (i64, i64),
    pub differential: Vec<Vec<Option<String>>>,
    pub variables: Vec<String>,
}
