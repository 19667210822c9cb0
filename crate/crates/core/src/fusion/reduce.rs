//! Finite-rank model of `A ⊗ P_T` for a 2-slot object `A`.
//!
//! On each block `A_i ⊗ P_T` the component `A_i⊗T_1 → A_i⊗T_0` is
//! multiplication by `ε_i·Q` with `Q = p_T(x, b)` monic in `x` and
//! `ε_i = (−1)^{|i|}`. It is an isomorphism onto `Q·R[a,x,b]`, so Gaussian
//! elimination removes `A_i⊗T_1` together with `Q·(A_i⊗T_0)`. What is left is
//! spanned by `x^j`, `j < deg Q`, over `R[a, b]`:
//!
//! * `π` takes remainders mod `Q` (and vanishes on `A⊗T_1`);
//! * `ι(x^j) = x^j − Σ_{i′} ε_{i′} quo_Q(d_{i′i}(a,x)·x^j)` in `A_{i′}⊗T_1`;
//! * the reduced differential is `π∘D∘ι`, which only sees `d_A`;
//! * `h = ε_i·quo_Q` from `A_i⊗T_0` to `A_i⊗T_1` gives `id − ι∘π = D h + h D`.

use serde::Serialize;

use super::{FusionError, PsObject};
use crate::bifact::{pair_indices, Block, CheckOutcome, Kernel, Label, Mbf, Morphism, OpMatrix, Operator, Shape, Space};
use crate::exactalg::rat::rat;
use crate::exactalg::Cyclo;
use crate::graded::GradedMbf;
use crate::polycalc::{p_s, Mono, MultiPoly};

const TWO: Shape = Shape { slots: 2, nvars: 1 };
const THREE: Shape = Shape { slots: 3, nvars: 1 };
const X: usize = 1;

#[derive(Clone, Debug)]
pub struct ReducedTensor {
    pub original: GradedMbf,
    pub reduced: GradedMbf,
    pub iota: Morphism,
    pub pi: Morphism,
    pub h: Morphism,
}

/// Generator `(i, j)` of the reduced object: block `i` of `A` times `x^j`.
fn reduced_index(a: &Space, m: usize) -> Vec<(usize, usize)> {
    (0..a.len()).flat_map(|i| (0..m).map(move |j| (i, j))).collect()
}

fn x_pow(j: usize, d: u32) -> MultiPoly {
    MultiPoly::term(Mono::var(3, X, j as u16), Cyclo::one(d))
}

pub fn reduce_right(a: &GradedMbf, t: &[i64], d: u32) -> Result<ReducedTensor, FusionError> {
    let a_space = &a.base.space;
    if a_space.blocks().iter().any(|b| b.shape != TWO) {
        return Err(FusionError::Precondition("the left factor must be a one-variable 2-slot object".into()));
    }
    let t_obj = PsObject::new(d, t)?;
    let original = a.tensor(&t_obj.graded)?;
    let q = p_s(d, &t_obj.set, 3, 1, 2)?;
    let m = t_obj.set.len();
    let d_a = a
        .base
        .diff
        .as_poly_entries()
        .ok_or_else(|| FusionError::Precondition("left factor needs polynomial entries".into()))?;
    let d_ax: Vec<Vec<MultiPoly>> = d_a.iter().map(|r| r.iter().map(|p| p.embed(&[0, 1], 3)).collect()).collect();

    let idx = reduced_index(a_space, m);
    let (even, odd): (Vec<_>, Vec<_>) = idx.iter().partition(|(i, _)| a_space.parity(*i) == 0);
    let order: Vec<(usize, usize)> = even.iter().chain(odd.iter()).map(|&&p| p).collect();
    let block = |&(i, j): &(usize, usize)| Block {
        shape: TWO,
        label: Label::Pair(Box::new(a_space.block(i).label.clone()), Box::new(Label::leaf(0, j))),
    };
    let space = Space::new(even.iter().map(|p| block(p)).collect(), odd.iter().map(|p| block(p)).collect());
    let pos = |p: (usize, usize)| order.iter().position(|&o| o == p).expect("generator exists");

    let rem = |power: usize| Operator::RemainderCoeff { source: THREE, divisor: q.clone(), var: X, power: power as u16 };
    let quo = Operator::Quotient { shape: THREE, divisor: q.clone(), var: X };
    let insert: Operator = Kernel::insert(TWO, 1, d).into();
    let eps = |i: usize| if a_space.parity(i) == 0 { Cyclo::one(d) } else { -Cyclo::one(d) };

    // Reduced differential: coefficient of x^{j′} in d_{i′i}(a,x)·x^j mod Q.
    let mut diff = OpMatrix::zero(&space, &space, d);
    for &(i, j) in &order {
        for (i2, row) in d_ax.iter().enumerate() {
            let p = &row[i] * &x_pow(j, d);
            if p.is_zero() {
                continue;
            }
            for j2 in 0..m {
                let c = rem(j2).apply(&p);
                if !c.is_zero() {
                    diff.set(pos((i2, j2)), pos((i, j)), Operator::mul_poly(TWO, c));
                }
            }
        }
    }
    let charges = order
        .iter()
        .map(|&(i, j)| &a.charges[i] + &t_obj.graded.charges[0] + rat(2 * j as i64, i64::from(d)))
        .collect();
    let reduced = GradedMbf::new(Mbf::new(space.clone(), diff, a.base.potential.clone())?, a.weights.clone(), charges)?;

    let orig_space = &original.base.space;
    let opos = {
        let pairs = pair_indices(a_space, &t_obj.graded.base.space);
        move |i: usize, k: usize| pairs.iter().position(|&p| p == (i, k)).expect("block exists")
    };

    let mut iota = OpMatrix::zero(&space, orig_space, d);
    let mut pi = OpMatrix::zero(orig_space, &space, d);
    for &(i, j) in &order {
        let col = pos((i, j));
        iota.set(opos(i, 0), col, Operator::mul_poly(THREE, x_pow(j, d)).compose(&insert));
        for (i2, row) in d_ax.iter().enumerate() {
            let p = &row[i] * &x_pow(j, d);
            if p.is_zero() {
                continue;
            }
            let corr = quo.compose(&Operator::mul_poly(THREE, p)).compose(&insert).scale(&-eps(i2));
            iota.set(opos(i2, 1), col, corr);
        }
        pi.set(col, opos(i, 0), rem(j));
    }
    let mut h = OpMatrix::zero(orig_space, orig_space, d);
    for i in 0..a_space.len() {
        h.set(opos(i, 1), opos(i, 0), quo.scale(&eps(i)));
    }
    Ok(ReducedTensor {
        original,
        reduced,
        iota: Morphism::new(0, iota)?,
        pi: Morphism::new(0, pi)?,
        h: Morphism::new(1, h)?,
    })
}

/// `P_S ⊗ P_T` reduced to finite rank.
pub fn reduce_tensor(s: &PsObject, t: &PsObject) -> Result<ReducedTensor, FusionError> {
    if s.d != t.d {
        return Err(FusionError::Precondition("factors live over different d".into()));
    }
    reduce_right(&s.graded, &t.set, s.d)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionChecks {
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

impl ReducedTensor {
    /// `π∘ι = id` (exact), `ι`, `π` closed, and `id − ι∘π = D h + h D`.
    pub fn verify(&self, cutoff: u32) -> ReductionChecks {
        let cond = self.reduced.conductor();
        let (orig, red) = (&self.original.base, &self.reduced.base);
        let mut checks = vec![];
        checks.push(match red.validate(0) {
            Ok(v) => CheckOutcome { name: "reduced object is a factorisation".into(), pass: true, verdict: Some(v), detail: None },
            Err(e) => CheckOutcome::failed("reduced object is a factorisation", e.to_string()),
        });
        let id_red = OpMatrix::identity(&red.space, cond);
        checks.push(CheckOutcome::from_result("π∘ι = id", self.pi.compose(&self.iota).matrix.compare(&id_red, cutoff)));
        for (name, phi, src, tgt) in [("ι closed", &self.iota, red, orig), ("π closed", &self.pi, orig, red)] {
            checks.push(match src.is_closed(phi, tgt, cutoff) {
                Ok(v) => CheckOutcome { name: name.into(), pass: true, verdict: Some(v), detail: None },
                Err(e) => CheckOutcome::failed(name, e.to_string()),
            });
        }
        let lhs = OpMatrix::identity(&orig.space, cond).sub(&self.iota.compose(&self.pi).matrix);
        let homotopy = orig.delta(&self.h, orig).map(|dh| lhs.compare(&dh.matrix, cutoff));
        checks.push(match homotopy {
            Ok(r) => CheckOutcome::from_result("id − ι∘π = δh", r),
            Err(e) => CheckOutcome::failed("id − ι∘π = δh", e.to_string()),
        });
        ReductionChecks { pass: checks.iter().all(|c| c.pass), checks }
    }
}
