//! Substitution kernels: the normal form of bimodule maps built from
//! polynomial multiplication, slot collapse (with twist), slot insertion and
//! full monomial transfer.
//!
//! A kernel from a block of shape `s` to a block of shape `t` is a finite sum
//! `Σ_σ p_σ · σ*`, where `σ` sends every source variable to a scalar multiple
//! of one target variable and `σ*` acts on polynomials by substitution. Over a
//! field, distinct `σ` give linearly independent maps (they are distinct
//! monoid characters into the rational function field), so two kernels are
//! equal as maps iff their normal forms agree. That is what makes equality of
//! kernels an exact structural test.

use std::collections::BTreeMap;
use std::fmt;

use crate::exactalg::Cyclo;
use crate::polycalc::{MultiPoly, VarNames};

/// A rank-1 block `R^{⊗slots}` with `R = k[x_1..x_nvars]`. Variable `v` of
/// slot `s` has index `s·nvars + v`; slot 0 carries the left action and the
/// last slot the right action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub slots: usize,
    pub nvars: usize,
}

impl Shape {
    pub fn new(slots: usize, nvars: usize) -> Self {
        assert!(slots >= 1 && nvars >= 1, "degenerate block shape");
        Shape { slots, nvars }
    }

    /// Total number of polynomial variables.
    pub fn vars(&self) -> usize {
        self.slots * self.nvars
    }

    pub fn var(&self, slot: usize, v: usize) -> usize {
        debug_assert!(slot < self.slots && v < self.nvars);
        slot * self.nvars + v
    }

    pub fn slot_of(&self, var: usize) -> usize {
        var / self.nvars
    }

    /// Shape of `self ⊗_R other` (the last slot of `self` is shared).
    pub fn glue(&self, other: &Shape) -> Shape {
        assert_eq!(self.nvars, other.nvars, "gluing blocks over different rings");
        Shape::new(self.slots + other.slots - 1, self.nvars)
    }

    pub fn names(&self) -> VarNames {
        VarNames::slots(self.slots, self.nvars)
    }

    /// Indices of the internal (non-outer) variables.
    pub fn internal_vars(&self) -> std::ops::Range<usize> {
        if self.slots <= 2 {
            0..0
        } else {
            self.nvars..(self.slots - 1) * self.nvars
        }
    }
}

/// Images of the source variables: source variable `i` ↦ `scale · y_target`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subst(pub Vec<(usize, Cyclo)>);

impl Subst {
    pub fn identity(shape: Shape, conductor: u32) -> Self {
        Subst((0..shape.vars()).map(|i| (i, Cyclo::one(conductor))).collect())
    }

    /// `self` followed by `outer` (as maps on variables).
    fn then(&self, outer: &Subst) -> Subst {
        Subst(
            self.0
                .iter()
                .map(|(t, c)| {
                    let (t2, c2) = &outer.0[*t];
                    (*t2, c * c2)
                })
                .collect(),
        )
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Kernel {
    source: Shape,
    target: Shape,
    conductor: u32,
    terms: BTreeMap<Subst, MultiPoly>,
}

impl Kernel {
    pub fn zero(source: Shape, target: Shape, conductor: u32) -> Self {
        assert_eq!(source.nvars, target.nvars);
        Kernel { source, target, conductor, terms: BTreeMap::new() }
    }

    /// `poly · σ*` for a single substitution.
    pub fn single(source: Shape, target: Shape, subst: Subst, poly: MultiPoly) -> Self {
        assert_eq!(subst.0.len(), source.vars(), "substitution length");
        assert_eq!(poly.nvars(), target.vars(), "kernel polynomial lives in target variables");
        let conductor = poly.conductor();
        let mut k = Kernel::zero(source, target, conductor);
        if !poly.is_zero() {
            k.terms.insert(subst, poly);
        }
        k
    }

    pub fn identity(shape: Shape, conductor: u32) -> Self {
        Self::mul_poly(shape, MultiPoly::one(shape.vars(), conductor))
    }

    /// Multiplication by `p`, a polynomial in the block's variables.
    pub fn mul_poly(shape: Shape, p: MultiPoly) -> Self {
        let c = p.conductor();
        Self::single(shape, shape, Subst::identity(shape, c), p)
    }

    pub fn scalar(shape: Shape, c: &Cyclo) -> Self {
        Self::mul_poly(shape, MultiPoly::constant(shape.vars(), c.clone()))
    }

    /// Merges slots `i` and `i+1` into one: `r ⊗ s ↦ σ_lo(r)·σ_hi(s)` where
    /// the twists scale every variable of the slot by `η^twist`, η = ζ_conductor.
    pub fn collapse(shape: Shape, i: usize, twist_lo: i64, twist_hi: i64, conductor: u32) -> Self {
        assert!(i + 1 < shape.slots, "collapse needs two adjacent slots");
        let target = Shape::new(shape.slots - 1, shape.nvars);
        let n = shape.nvars;
        let lo = Cyclo::zeta_pow(conductor, twist_lo);
        let hi = Cyclo::zeta_pow(conductor, twist_hi);
        let map = (0..shape.vars())
            .map(|idx| {
                let (s, v) = (idx / n, idx % n);
                match s.cmp(&i) {
                    std::cmp::Ordering::Less => (idx, Cyclo::one(conductor)),
                    std::cmp::Ordering::Equal => (i * n + v, lo.clone()),
                    std::cmp::Ordering::Greater if s == i + 1 => (i * n + v, hi.clone()),
                    std::cmp::Ordering::Greater => ((s - 1) * n + v, Cyclo::one(conductor)),
                }
            })
            .collect();
        Self::single(shape, target, Subst(map), MultiPoly::one(target.vars(), conductor))
    }

    /// Inserts a fresh slot at position `i` (`1 ≤ i < slots`): `r ⊗ s ↦ r ⊗ 1 ⊗ s`.
    pub fn insert(shape: Shape, i: usize, conductor: u32) -> Self {
        assert!(i >= 1 && i < shape.slots, "insertion point must be internal");
        let target = Shape::new(shape.slots + 1, shape.nvars);
        let n = shape.nvars;
        let map = (0..shape.vars())
            .map(|idx| {
                let s = idx / n;
                let t = if s < i { idx } else { idx + n };
                (t, Cyclo::one(conductor))
            })
            .collect();
        Self::single(shape, target, Subst(map), MultiPoly::one(target.vars(), conductor))
    }

    /// Moves every variable of slot `from` onto slot `to` (the map `x^n ↦ a^n`
    /// when `from` is internal and `to` outer). Same source and target shape.
    pub fn transfer_full(shape: Shape, from: usize, to: usize, conductor: u32) -> Self {
        let n = shape.nvars;
        let map = (0..shape.vars())
            .map(|idx| {
                let (s, v) = (idx / n, idx % n);
                let t = if s == from { to * n + v } else { idx };
                (t, Cyclo::one(conductor))
            })
            .collect();
        Self::single(shape, shape, Subst(map), MultiPoly::one(shape.vars(), conductor))
    }

    /// Linear map given by substitution only (outer slots may be twisted;
    /// such kernels are maps of twisted bimodules, see [`Kernel::is_bimodule_map`]).
    pub fn substitution(shape: Shape, scales: &[Cyclo]) -> Self {
        assert_eq!(scales.len(), shape.vars());
        let c = scales[0].conductor();
        let map = scales.iter().enumerate().map(|(i, s)| (i, s.clone())).collect();
        Self::single(shape, shape, Subst(map), MultiPoly::one(shape.vars(), c))
    }

    pub fn source(&self) -> Shape {
        self.source
    }

    pub fn target(&self) -> Shape {
        self.target
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Subst, &MultiPoly)> {
        self.terms.iter()
    }

    /// True when outer source slots go to the matching outer target slots
    /// untwisted, i.e. the map commutes with both actions.
    pub fn is_bimodule_map(&self) -> bool {
        let (s, t) = (self.source, self.target);
        let one = Cyclo::one(self.conductor);
        self.terms.keys().all(|sub| {
            (0..s.nvars).all(|v| {
                let first = &sub.0[s.var(0, v)];
                let last = &sub.0[s.var(s.slots - 1, v)];
                *first == (t.var(0, v), one.clone()) && *last == (t.var(t.slots - 1, v), one.clone())
            })
        })
    }

    /// The polynomial `p` when the kernel is plain multiplication by `p`.
    pub fn as_mul_poly(&self) -> Option<MultiPoly> {
        if self.source != self.target {
            return None;
        }
        if self.terms.is_empty() {
            return Some(MultiPoly::zero(self.target.vars(), self.conductor));
        }
        let id = Subst::identity(self.source, self.conductor);
        (self.terms.len() == 1).then(|| self.terms.get(&id).cloned()).flatten()
    }

    fn add_term(&mut self, s: Subst, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(q) => {
                let sum = &*q + &p;
                if sum.is_zero() {
                    self.terms.remove(&s);
                } else {
                    *q = sum;
                }
            }
            None => {
                self.terms.insert(s, p);
            }
        }
    }

    fn check_same(&self, other: &Kernel) {
        assert_eq!(
            (self.source, self.target),
            (other.source, other.target),
            "adding kernels between different blocks"
        );
    }

    pub fn add(&self, other: &Kernel) -> Kernel {
        self.check_same(other);
        let mut out = self.clone();
        for (s, p) in &other.terms {
            out.add_term(s.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Kernel) -> Kernel {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Kernel {
        self.scale(&-Cyclo::one(self.conductor))
    }

    pub fn scale(&self, c: &Cyclo) -> Kernel {
        let mut out = Kernel::zero(self.source, self.target, self.conductor);
        if c.is_zero() {
            return out;
        }
        for (s, p) in &self.terms {
            out.terms.insert(s.clone(), p.scale(c));
        }
        out
    }

    /// Post-multiplication by a polynomial in the target variables.
    pub fn then_mul(&self, p: &MultiPoly) -> Kernel {
        let mut out = Kernel::zero(self.source, self.target, self.conductor);
        for (s, q) in &self.terms {
            out.add_term(s.clone(), q * p);
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Kernel) -> Kernel {
        assert_eq!(inner.target, self.source, "composing kernels with mismatched blocks");
        let mut out = Kernel::zero(inner.source, self.target, self.conductor);
        let tv = self.target.vars();
        for (sig, p) in &self.terms {
            for (tau, q) in &inner.terms {
                let moved = q.subst_linear(&sig.0, tv);
                out.add_term(tau.then(sig), p * &moved);
            }
        }
        out
    }

    /// `self ⊗_R other` on glued blocks.
    pub fn tensor(&self, other: &Kernel) -> Kernel {
        let n = self.source.nvars;
        let source = self.source.glue(&other.source);
        let target = self.target.glue(&other.target);
        let left_src = self.source.vars();
        let shift_src = (self.source.slots - 1) * n;
        let shift_tgt = (self.target.slots - 1) * n;
        let left_map: Vec<usize> = (0..self.target.vars()).collect();
        let right_map: Vec<usize> = (0..other.target.vars()).map(|i| i + shift_tgt).collect();
        let mut out = Kernel::zero(source, target, self.conductor);
        for (sig, p) in &self.terms {
            for (tau, q) in &other.terms {
                let mut map = Vec::with_capacity(source.vars());
                for i in 0..source.vars() {
                    if i < left_src {
                        map.push(sig.0[i].clone());
                    } else {
                        let (t, c) = &tau.0[i - shift_src];
                        map.push((t + shift_tgt, c.clone()));
                    }
                }
                // The shared slot must be carried identically by both factors.
                for v in 0..n {
                    let (t, c) = &tau.0[v];
                    debug_assert_eq!((*t + shift_tgt, c), (sig.0[shift_src + v].0, &sig.0[shift_src + v].1));
                }
                let poly = &p.embed(&left_map, target.vars()) * &q.embed(&right_map, target.vars());
                out.add_term(Subst(map), poly);
            }
        }
        out
    }

    /// Image of a source element (a polynomial in the source variables).
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let tv = self.target.vars();
        let mut out = MultiPoly::zero(tv, self.conductor);
        for (s, p) in &self.terms {
            out = &out + &(p * &f.subst_linear(&s.0, tv));
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = self.target.names();
        let src = self.source.names();
        let id = (self.source == self.target).then(|| Subst::identity(self.source, self.conductor));
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, p)| {
                let poly = names.render(p);
                if Some(s) == id.as_ref() {
                    format!("[{poly}]")
                } else {
                    let subst: Vec<String> = s
                        .0
                        .iter()
                        .enumerate()
                        .map(|(i, (t, c))| {
                            let tn = &names.names()[*t];
                            if c.is_one() {
                                format!("{}->{}", src.names()[i], tn)
                            } else {
                                format!("{}->({})*{}", src.names()[i], c, tn)
                            }
                        })
                        .collect();
                    format!("[{poly}]{{{}}}", subst.join(","))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Kernel({}->{}: {})", self.source.slots, self.target.slots, self.render())
    }
}
