//! General bimodule operators: substitution kernels plus the few maps that
//! have no finite kernel form (divided transfer, division quotients and
//! remainder coefficients), closed under sum, composition, scaling and the
//! tensor product over a shared slot.
//!
//! Every operator is a map of bimodules (outer slots act linearly), so it is
//! determined by its values on monomials in the internal slots. Equality is
//! decided structurally when both sides reduce to kernels; otherwise by
//! evaluation on internal monomials up to a degree cutoff.

use std::fmt;

use super::kernel::{Kernel, Shape};
use crate::exactalg::Cyclo;
use crate::polycalc::{Exps, Mono, MultiPoly};

#[derive(Clone)]
pub enum Operator {
    Kernel(Kernel),
    /// `f ↦ (f − f|_{from := to}) / (from − to)`; sends `x^n` to
    /// `Σ_{i<n} a^i x^{n−1−i}` when `from = x`, `to = a`.
    DividedTransfer { shape: Shape, from: usize, to: usize, conductor: u32 },
    /// Quotient of division by `divisor` (monic in `var`), same block.
    Quotient { shape: Shape, divisor: MultiPoly, var: usize },
    /// Coefficient of `var^power` in the remainder of division by `divisor`;
    /// the slot holding `var` (which must carry no other variable) is dropped.
    RemainderCoeff { source: Shape, divisor: MultiPoly, var: usize, power: u16 },
    Sum(Shape, Shape, Vec<Operator>),
    /// `Compose(f, g) = f ∘ g`.
    Compose(Box<Operator>, Box<Operator>),
    Scaled(Cyclo, Box<Operator>),
    Tensor(Box<Operator>, Box<Operator>),
}

/// How an operator identity was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "cutoff")]
pub enum Verdict {
    Exact,
    VerifiedToCutoff(u32),
}

/// A failed identity: the first internal monomial where the two sides differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub monomial: Vec<u16>,
    pub difference: MultiPoly,
}

pub const DEFAULT_CUTOFF: u32 = 30;

impl From<Kernel> for Operator {
    fn from(k: Kernel) -> Self {
        Operator::Kernel(k)
    }
}

impl Operator {
    pub fn zero(source: Shape, target: Shape, conductor: u32) -> Self {
        Kernel::zero(source, target, conductor).into()
    }

    pub fn identity(shape: Shape, conductor: u32) -> Self {
        Kernel::identity(shape, conductor).into()
    }

    pub fn mul_poly(shape: Shape, p: MultiPoly) -> Self {
        Kernel::mul_poly(shape, p).into()
    }

    pub fn source(&self) -> Shape {
        match self {
            Operator::Kernel(k) => k.source(),
            Operator::DividedTransfer { shape, .. } | Operator::Quotient { shape, .. } => *shape,
            Operator::RemainderCoeff { source, .. } => *source,
            Operator::Sum(s, _, _) => *s,
            Operator::Compose(_, g) => g.source(),
            Operator::Scaled(_, f) => f.source(),
            Operator::Tensor(f, g) => f.source().glue(&g.source()),
        }
    }

    pub fn target(&self) -> Shape {
        match self {
            Operator::Kernel(k) => k.target(),
            Operator::DividedTransfer { shape, .. } | Operator::Quotient { shape, .. } => *shape,
            Operator::RemainderCoeff { source, .. } => Shape::new(source.slots - 1, source.nvars),
            Operator::Sum(_, t, _) => *t,
            Operator::Compose(f, _) => f.target(),
            Operator::Scaled(_, f) => f.target(),
            Operator::Tensor(f, g) => f.target().glue(&g.target()),
        }
    }

    pub fn as_kernel(&self) -> Option<&Kernel> {
        match self {
            Operator::Kernel(k) => Some(k),
            _ => None,
        }
    }

    /// True only for the zero kernel; other forms are never simplified to it.
    pub fn is_zero(&self) -> bool {
        matches!(self, Operator::Kernel(k) if k.is_zero())
    }

    pub fn add(&self, other: &Operator) -> Operator {
        assert_eq!((self.source(), self.target()), (other.source(), other.target()), "operator sum shapes");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        match (self, other) {
            (Operator::Kernel(a), Operator::Kernel(b)) => a.add(b).into(),
            _ => {
                let mut parts = Vec::new();
                for op in [self, other] {
                    match op {
                        Operator::Sum(_, _, v) => parts.extend(v.iter().cloned()),
                        _ => parts.push(op.clone()),
                    }
                }
                // Keep all kernel parts merged into one leading term.
                let (mut kern, rest): (Vec<Operator>, Vec<Operator>) =
                    parts.into_iter().partition(|p| p.as_kernel().is_some());
                let mut out = Vec::new();
                if let Some(first) = kern.pop() {
                    let merged = kern.iter().fold(first.as_kernel().cloned().expect("kernel"), |acc, k| {
                        acc.add(k.as_kernel().expect("kernel"))
                    });
                    if !merged.is_zero() {
                        out.push(merged.into());
                    }
                }
                out.extend(rest);
                match out.len() {
                    0 => Operator::zero(self.source(), self.target(), self.conductor()),
                    1 => out.pop().expect("one part"),
                    _ => Operator::Sum(self.source(), self.target(), out),
                }
            }
        }
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Operator {
        self.scale(&-Cyclo::one(self.conductor()))
    }

    pub fn scale(&self, c: &Cyclo) -> Operator {
        if c.is_zero() {
            return Operator::zero(self.source(), self.target(), self.conductor());
        }
        if c.is_one() {
            return self.clone();
        }
        match self {
            Operator::Kernel(k) => k.scale(c).into(),
            Operator::Scaled(c0, f) => Operator::Scaled(c0 * c, f.clone()),
            Operator::Sum(s, t, v) => Operator::Sum(*s, *t, v.iter().map(|f| f.scale(c)).collect()),
            _ => Operator::Scaled(c.clone(), Box::new(self.clone())),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Operator) -> Operator {
        assert_eq!(self.source(), inner.target(), "composition shapes");
        if self.is_zero() || inner.is_zero() {
            return Operator::zero(inner.source(), self.target(), self.conductor());
        }
        match (self, inner) {
            (Operator::Kernel(a), Operator::Kernel(b)) => a.compose(b).into(),
            (Operator::Kernel(a), _) if is_identity(a) => inner.clone(),
            (_, Operator::Kernel(b)) if is_identity(b) => self.clone(),
            _ => Operator::Compose(Box::new(self.clone()), Box::new(inner.clone())),
        }
    }

    pub fn tensor(&self, other: &Operator) -> Operator {
        let (s, t) = (self.source().glue(&other.source()), self.target().glue(&other.target()));
        if self.is_zero() || other.is_zero() {
            return Operator::zero(s, t, self.conductor());
        }
        match (self, other) {
            (Operator::Kernel(a), Operator::Kernel(b)) => a.tensor(b).into(),
            _ => Operator::Tensor(Box::new(self.clone()), Box::new(other.clone())),
        }
    }

    pub fn conductor(&self) -> u32 {
        match self {
            Operator::Kernel(k) => k.conductor(),
            Operator::Quotient { divisor, .. } | Operator::RemainderCoeff { divisor, .. } => divisor.conductor(),
            Operator::DividedTransfer { conductor, .. } => *conductor,
            Operator::Sum(_, _, v) => v.iter().map(Operator::conductor).max().unwrap_or(0),
            Operator::Compose(f, g) | Operator::Tensor(f, g) => f.conductor().max(g.conductor()),
            Operator::Scaled(c, _) => c.conductor(),
        }
    }

    /// Image of a source element.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(f.nvars(), self.source().vars());
        match self {
            Operator::Kernel(k) => k.apply(f),
            Operator::DividedTransfer { from, to, .. } => {
                f.divided_difference(*from, *to).expect("variables in range")
            }
            Operator::Quotient { divisor, var, .. } => f.div_rem_in(*var, divisor).expect("monic divisor").0,
            Operator::RemainderCoeff { source, divisor, var, power } => {
                let rem = f.div_rem_in(*var, divisor).expect("monic divisor").1;
                let coeff = rem.coeff_of_power(*var, *power);
                let slot = source.slot_of(*var);
                let n = source.nvars;
                let map: Vec<usize> =
                    (0..source.vars()).map(|i| if i / n > slot { i - n } else if i / n == slot { 0 } else { i }).collect();
                // Variables of the dropped slot are absent from `coeff`.
                coeff.embed(&map, source.vars() - n)
            }
            Operator::Sum(_, t, v) => v.iter().fold(MultiPoly::zero(t.vars(), f.conductor()), |acc, op| &acc + &op.apply(f)),
            Operator::Compose(a, b) => a.apply(&b.apply(f)),
            Operator::Scaled(c, a) => a.apply(f).scale(c),
            Operator::Tensor(a, b) => apply_tensor(a, b, f),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Operator::Kernel(k) => k.render(),
            Operator::DividedTransfer { from, to, shape, .. } => {
                let n = shape.names();
                format!("T[{}->{}]", n.names()[*from], n.names()[*to])
            }
            Operator::Quotient { shape, divisor, var } => {
                let n = shape.names();
                format!("quo_{}({})", n.names()[*var], n.render(divisor))
            }
            Operator::RemainderCoeff { source, divisor, var, power } => {
                let n = source.names();
                format!("rem_{}^{}({})", n.names()[*var], power, n.render(divisor))
            }
            Operator::Sum(_, _, v) => v.iter().map(Operator::render).collect::<Vec<_>>().join(" + "),
            Operator::Compose(f, g) => format!("({})∘({})", f.render(), g.render()),
            Operator::Scaled(c, f) => format!("({c})·({})", f.render()),
            Operator::Tensor(f, g) => format!("({})⊗({})", f.render(), g.render()),
        }
    }
}

fn is_identity(k: &Kernel) -> bool {
    k.source() == k.target() && k.as_mul_poly().is_some_and(|p| p.as_constant().is_some_and(|c| c.is_one()))
}

/// Evaluates `a ⊗ b` on a glued monomial: the shared slot's power goes to the
/// left factor, which is right-linear in that slot.
fn apply_tensor(a: &Operator, b: &Operator, f: &MultiPoly) -> MultiPoly {
    let (sa, sb) = (a.source(), b.source());
    let (ta, tb) = (a.target(), b.target());
    let n = sa.nvars;
    let left_vars = sa.vars();
    let shift_tgt = (ta.slots - 1) * n;
    let target = ta.glue(&tb);
    let cond = f.conductor();
    let left_map: Vec<usize> = (0..ta.vars()).collect();
    let right_map: Vec<usize> = (0..tb.vars()).map(|i| i + shift_tgt).collect();
    let mut out = MultiPoly::zero(target.vars(), cond);
    for (m, c) in f.terms() {
        let mut le = Exps::from_elem(0, left_vars);
        le.copy_from_slice(&m.0[..left_vars]);
        let mut re = Exps::from_elem(0, sb.vars());
        re[n..].copy_from_slice(&m.0[left_vars..]);
        let l = a.apply(&MultiPoly::term(Mono(le), c.clone()));
        if l.is_zero() {
            continue;
        }
        let r = b.apply(&MultiPoly::term(Mono(re), Cyclo::one(cond)));
        out = &out + &(&l.embed(&left_map, target.vars()) * &r.embed(&right_map, target.vars()));
    }
    out
}

/// Exponent vectors of total degree ≤ `cutoff` in `count` variables.
pub fn monomials_up_to(count: usize, cutoff: u32) -> Vec<Vec<u16>> {
    let mut out = vec![];
    let mut cur = vec![0u16; count];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, cutoff, &mut cur, &mut out);
    out
}

/// The basis element with the given internal exponents and trivial outer slots.
pub fn internal_monomial(shape: Shape, exps: &[u16], conductor: u32) -> MultiPoly {
    let mut e = Exps::from_elem(0, shape.vars());
    for (k, v) in shape.internal_vars().enumerate() {
        e[v] = exps[k];
    }
    MultiPoly::term(Mono(e), Cyclo::one(conductor))
}

/// Decides `lhs = rhs` as bimodule maps.
pub fn compare(lhs: &Operator, rhs: &Operator, cutoff: u32) -> Result<Verdict, Mismatch> {
    assert_eq!((lhs.source(), lhs.target()), (rhs.source(), rhs.target()), "comparing operators of different shapes");
    if let (Some(a), Some(b)) = (lhs.as_kernel(), rhs.as_kernel()) {
        return if a == b {
            Ok(Verdict::Exact)
        } else {
            let probe = first_difference(lhs, rhs, cutoff);
            Err(probe.unwrap_or_else(|| Mismatch {
                monomial: vec![],
                difference: MultiPoly::zero(lhs.target().vars(), lhs.conductor().max(1)),
            }))
        };
    }
    match first_difference(lhs, rhs, cutoff) {
        Some(m) => Err(m),
        None if lhs.source().slots == 2 => Ok(Verdict::Exact),
        None => Ok(Verdict::VerifiedToCutoff(cutoff)),
    }
}

fn first_difference(lhs: &Operator, rhs: &Operator, cutoff: u32) -> Option<Mismatch> {
    let s = lhs.source();
    let cond = lhs.conductor().max(rhs.conductor()).max(1);
    let count = s.internal_vars().len();
    let bound = if count == 0 { 0 } else { cutoff };
    for e in monomials_up_to(count, bound) {
        let m = internal_monomial(s, &e, cond);
        let diff = &lhs.apply(&m) - &rhs.apply(&m);
        if !diff.is_zero() {
            return Some(Mismatch { monomial: e, difference: diff });
        }
    }
    None
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Op({})", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(k: usize) -> Shape {
        Shape::new(k, 1)
    }

    #[test]
    fn divided_transfer_on_powers() {
        let d = 3;
        let t = Operator::DividedTransfer { shape: sh(3), from: 1, to: 0, conductor: d };
        let x3 = MultiPoly::var(3, d, 1).pow(3);
        let names = sh(3).names();
        assert_eq!(names.render(&t.apply(&x3)), "a^2 + a*x + x^2");
    }

    #[test]
    fn remainder_coefficients_drop_the_slot() {
        let d = 4;
        let names = sh(3).names();
        let div = names.parse("x^2 + b^2", d).unwrap();
        let op = Operator::RemainderCoeff { source: sh(3), divisor: div.clone(), var: 1, power: 0 };
        let f = names.parse("a*x^3 + x^2 + 5", d).unwrap();
        // x^3 = x·(x²+b²) − b²x, x^2 ≡ −b²
        assert_eq!(sh(2).names().render(&op.apply(&f)), "-b^2 + 5");
        let op1 = Operator::RemainderCoeff { source: sh(3), divisor: div, var: 1, power: 1 };
        assert_eq!(sh(2).names().render(&op1.apply(&f)), "-a*b^2");
    }

    #[test]
    fn compare_reports_cutoff_for_infinite_sums() {
        let d = 3;
        let t = Operator::DividedTransfer { shape: sh(3), from: 1, to: 0, conductor: d };
        let ax = MultiPoly::var(3, d, 0) - MultiPoly::var(3, d, 1);
        let lhs = t.compose(&Operator::mul_poly(sh(3), ax));
        let rhs = Operator::identity(sh(3), d).neg();
        assert_eq!(compare(&lhs, &rhs, 12), Ok(Verdict::VerifiedToCutoff(12)));
        assert!(compare(&lhs, &Operator::identity(sh(3), d), 12).is_err());
    }

    #[test]
    fn tensor_with_general_factor() {
        let d = 5;
        let t = Operator::DividedTransfer { shape: sh(3), from: 1, to: 0, conductor: d };
        let id = Operator::identity(sh(2), d);
        let op = t.tensor(&id);
        assert_eq!(op.source(), sh(4));
        let names = sh(4).names();
        let f = names.parse("x1^2*x2*b", d).unwrap();
        assert_eq!(names.render(&op.apply(&f)), "a*x2*b + x1*x2*b");
    }
}
