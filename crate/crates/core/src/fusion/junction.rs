//! Junction morphisms between tensor products of `P_S` objects and the two
//! scalar fusing identities they satisfy on the nose.
//!
//! Tensor products `P_I ⊗ P_J` have blocks `[00, 11 | 10, 01]`, so a map into
//! `P_K` is a 2×4 matrix and a map out of `P_K` is a 4×2 matrix. All entries
//! act on the slots `(a, x, b)`.

use serde::Serialize;

use super::{FusionError, PsObject};
use crate::bifact::{associator, tensor_mor, Kernel, Morphism, OpMatrix, Operator, Shape, Verdict};
use crate::exactalg::Cyclo;
use crate::graded::{morphism_charge, GradedMbf};
use crate::polycalc::{p_s, MultiPoly};

const THREE: Shape = Shape { slots: 3, nvars: 1 };
const TWO: Shape = Shape { slots: 2, nvars: 1 };

/// `1⊗x^m⊗1 ↦ η^{jm}·1⊗x^m`: the middle slot merged into the right one.
pub fn m_map(d: u32, j: i64) -> Operator {
    Kernel::collapse(THREE, 1, j, 0, d).into()
}

/// `1⊗x^m⊗1 ↦ η^{−jm}·x^m⊗1`: the middle slot merged into the left one.
pub fn m_prime_map(d: u32, j: i64) -> Operator {
    Kernel::collapse(THREE, 0, 0, -j, d).into()
}

/// `r⊗s ↦ r⊗1⊗s`.
pub fn insert_map(d: u32) -> Operator {
    Kernel::insert(TWO, 1, d).into()
}

/// `[p(a, x, b)]ˆ ∘ J`.
fn hat_j(p: MultiPoly) -> Operator {
    let d = p.conductor();
    Operator::mul_poly(THREE, p).compose(&insert_map(d))
}

/// A named junction map between graded objects.
#[derive(Clone, Debug)]
pub struct Junction {
    pub name: String,
    pub source: GradedMbf,
    pub target: GradedMbf,
    pub map: Morphism,
}

#[derive(Clone, Debug, Serialize)]
pub struct JunctionCheck {
    pub name: String,
    pub closed: Option<Verdict>,
    pub charge: Option<String>,
    pub pass: bool,
    pub detail: Option<String>,
}

impl Junction {
    /// δ-closedness and charge 0.
    pub fn check(&self, cutoff: u32) -> JunctionCheck {
        let closed = self.source.base.is_closed(&self.map, &self.target.base, cutoff);
        let charge = morphism_charge(&self.map, &self.source, &self.target);
        let detail = match (&closed, &charge) {
            (Err(e), _) => Some(e.to_string()),
            (_, Err(e)) => Some(e.to_string()),
            (_, Ok(Some(q))) if !num_traits::Zero::is_zero(q) => Some("nonzero charge".into()),
            _ => None,
        };
        JunctionCheck {
            name: self.name.clone(),
            closed: closed.ok(),
            charge: charge.ok().flatten().map(|q| crate::exactalg::rat::rat_to_string(&q)),
            pass: detail.is_none(),
            detail,
        }
    }
}

fn ps(d: u32, set: &[i64]) -> Result<GradedMbf, FusionError> {
    Ok(PsObject::new(d, set)?.graded)
}

/// `Λ_{i,j}: P_{i} ⊗ P_{j} → P_{i+j}`.
pub fn lambda(d: u32, i: i64, j: i64) -> Result<Junction, FusionError> {
    let source = ps(d, &[i])?.tensor(&ps(d, &[j])?)?;
    let target = ps(d, &[i + j])?;
    let m = m_map(d, j);
    let mut mat = OpMatrix::zero(&source.base.space, &target.base.space, d);
    mat.set(0, 0, m.clone());
    mat.set(1, 2, m);
    Ok(Junction { name: format!("Lambda_{{{i},{j}}}"), source, target, map: Morphism::new(0, mat)? })
}

/// `H = {0, …, d/2 − 1}` and `L = {d/2 + 1, …, 3d/2 − 1}` for even `d`.
fn half_sets(d: u32) -> (Vec<i64>, Vec<i64>) {
    let h = i64::from(d / 2);
    ((0..h).collect(), (h + 1..3 * h).collect())
}

/// `F_l: P_L ⊗ P_H → P_H` and `F_r: P_H ⊗ P_L → P_H`, `d` even.
pub fn f_maps(d: u32) -> Result<(Junction, Junction), FusionError> {
    if !d.is_multiple_of(2) || d < 4 {
        return Err(FusionError::Precondition("F_l, F_r need even d ≥ 4".into()));
    }
    let (hs, ls) = half_sets(d);
    let (h, l) = (ps(d, &hs)?, ps(d, &ls)?);
    let half = i64::from(d / 2);
    let sign = if (half - 1) % 2 == 0 { Cyclo::one(d) } else { -Cyclo::one(d) };

    let src_l = l.tensor(&h)?;
    let mp = m_prime_map(d, half);
    let mut fl = OpMatrix::zero(&src_l.base.space, &h.base.space, d);
    fl.set(0, 1, mp.clone());
    fl.set(1, 2, mp.scale(&sign));

    let src_r = h.tensor(&l)?;
    let m = m_map(d, half);
    let mut fr = OpMatrix::zero(&src_r.base.space, &h.base.space, d);
    fr.set(0, 1, m.clone());
    fr.set(1, 3, m);

    Ok((
        Junction { name: "F_l".into(), source: src_l, target: h.clone(), map: Morphism::new(0, fl)? },
        Junction { name: "F_r".into(), source: src_r, target: h, map: Morphism::new(0, fr)? },
    ))
}

/// `c_a·a + c_x·x + c_b·b` on three slots.
fn lin(d: u32, ca: Cyclo, cx: Cyclo, cb: Cyclo) -> MultiPoly {
    let v = |i| MultiPoly::var(3, d, i);
    &(&v(0).scale(&ca) + &v(1).scale(&cx)) + &v(2).scale(&cb)
}

/// Entries of one of the maps `A^{IJ}_K: P_K → P_I ⊗ P_J`; `None` marks
/// the `(2,1)` entry, which is derived from the `(3,2)` and `(4,2)` entries.
struct AData {
    name: &'static str,
    i: &'static [i64],
    j: &'static [i64],
    k: &'static [i64],
    e11: MultiPoly,
    e32: MultiPoly,
    e42: MultiPoly,
}

fn a_data(d: u32) -> Vec<AData> {
    let z = |k: i64| Cyclo::zeta_pow(d, k);
    let one = Cyclo::one(d);
    let konst = |s: Cyclo| MultiPoly::constant(3, s);
    let unit = konst(one.clone());
    let e1 = &z(1) + &one;
    let e2 = &(&z(2) + &z(1)) + &one;
    let inv1 = z(-1);
    let inv2 = z(-2);
    vec![
        AData {
            name: "A1",
            i: &[0, 1],
            j: &[0, 1],
            k: &[1],
            e11: lin(d, one.clone(), -&e1, z(1)),
            e32: unit.clone(),
            e42: konst(-z(1)),
        },
        AData {
            name: "A2",
            i: &[0, 1],
            j: &[0, 1],
            k: &[0, 1, 2],
            e11: unit.clone(),
            e32: lin(d, one.clone(), e1.clone(), -&e2),
            e42: lin(d, e2.clone(), -&(&z(2) + &z(1)), -z(2)),
        },
        AData {
            name: "A3",
            i: &[0, 1],
            j: &[1],
            k: &[1, 2],
            e11: unit.clone(),
            e32: unit.clone(),
            e42: lin(d, e1.clone(), -z(1), -z(2)),
        },
        AData {
            name: "A4",
            i: &[0, 1],
            j: &[0, 1, 2],
            k: &[1, 2],
            // The printed (1,1) entry has `−b`; closedness at (00, K₁) forces `+b`.
            e11: lin(d, &inv1 + &inv2, -&(&(&one + &inv1) + &inv2), one.clone()),
            e32: lin(d, &inv1 + &inv2, (&one + &inv1) * &e1.inv().expect("η+1 ≠ 0"), -&(&(&z(1) + &one) + &inv1)),
            e42: konst(-one.clone()),
        },
        AData {
            name: "A5",
            i: &[1],
            j: &[0, 1],
            k: &[1, 2],
            e11: unit.clone(),
            e32: lin(d, one.clone(), z(1), -&(&z(2) + &z(1))),
            e42: konst(z(2)),
        },
        AData {
            name: "A6",
            i: &[0, 1, 2],
            j: &[0, 1],
            k: &[1, 2],
            e11: lin(d, one.clone(), -e2.clone(), &z(2) + &z(1)),
            e32: unit,
            e42: lin(d, -&(&(&z(3) + &z(2)) + &z(1)), z(3), &z(4) + &z(3)),
        },
    ]
}

fn complement(d: u32, s: &[i64]) -> Vec<i64> {
    (0..i64::from(d)).filter(|i| !s.contains(i)).collect()
}

/// `(A_{42}·p_{I^c}(a,x) − A_{32}·p_{J^c}(x,b)) / p_K(a,b)`; a nonzero
/// remainder means the other entries were transcribed wrongly.
fn entry_21(d: u32, a: &AData) -> Result<MultiPoly, FusionError> {
    let pic = p_s(d, &complement(d, a.i), 3, 0, 1)?;
    let pjc = p_s(d, &complement(d, a.j), 3, 1, 2)?;
    let pk = p_s(d, a.k, 3, 0, 2)?;
    let num = &(&a.e42 * &pic) - &(&a.e32 * &pjc);
    Ok(num.exact_divide(&pk)?)
}

/// The maps `A_1, …, A_6` dual to the six junction fields of the 2×2
/// fusing problem (`d ≥ 4`).
pub fn a_maps(d: u32) -> Result<Vec<Junction>, FusionError> {
    if d < 4 {
        return Err(FusionError::Precondition("the A maps need d ≥ 4".into()));
    }
    a_data(d)
        .into_iter()
        .map(|a| {
            let source = ps(d, a.k)?;
            let target = ps(d, a.i)?.tensor(&ps(d, a.j)?)?;
            let mut m = OpMatrix::zero(&source.base.space, &target.base.space, d);
            m.set(0, 0, hat_j(a.e11.clone()));
            m.set(1, 0, hat_j(entry_21(d, &a)?));
            m.set(2, 1, hat_j(a.e32.clone()));
            m.set(3, 1, hat_j(a.e42.clone()));
            Ok(Junction { name: a.name.into(), source, target, map: Morphism::new(0, m)? })
        })
        .collect()
}

/// Every junction map used by the fusing computations at one `d`.
#[derive(Clone, Debug)]
pub struct Junctions {
    pub d: u32,
    pub lambdas: Vec<Junction>,
    pub f_maps: Option<(Junction, Junction)>,
    pub a_maps: Vec<Junction>,
}

impl Junctions {
    pub fn all(&self) -> impl Iterator<Item = &Junction> {
        self.lambdas
            .iter()
            .chain(self.f_maps.iter().flat_map(|(l, r)| [l, r]))
            .chain(self.a_maps.iter())
    }

    pub fn check(&self, cutoff: u32) -> Vec<JunctionCheck> {
        self.all().map(|j| j.check(cutoff)).collect()
    }
}

pub fn junction_morphisms(d: u32) -> Result<Junctions, FusionError> {
    let n = i64::from(d);
    let mut lambdas = vec![];
    for i in 0..n {
        for j in 0..n {
            lambdas.push(lambda(d, i, j)?);
        }
    }
    let f_maps = if d.is_multiple_of(2) && d >= 4 { Some(f_maps(d)?) } else { None };
    let a_maps = if d >= 4 { a_maps(d)? } else { vec![] };
    Ok(Junctions { d, lambdas, f_maps, a_maps })
}

/// The scalar `c` with `lhs = c·rhs`, with the verdict of the final check.
pub fn proportionality(lhs: &OpMatrix, rhs: &OpMatrix, cutoff: u32) -> Result<(Cyclo, Verdict), FusionError> {
    let cond = lhs.conductor().max(rhs.conductor());
    for r in 0..rhs.target().len() {
        for c in 0..rhs.source().len() {
            let op = rhs.get(r, c);
            if op.is_zero() {
                continue;
            }
            let shape = op.source();
            let count = shape.internal_vars().len();
            for e in crate::bifact::operator::monomials_up_to(count, if count == 0 { 0 } else { cutoff }) {
                let probe = crate::bifact::operator::internal_monomial(shape, &e, cond);
                let out = op.apply(&probe);
                let Some((m, cr)) = out.leading() else { continue };
                let cl = lhs.get(r, c).apply(&probe).coeff(m);
                let ratio = &cl * &cr.inv().expect("nonzero coefficient");
                let verdict = lhs.compare(&rhs.scale(&ratio), cutoff)?;
                return Ok((ratio, verdict));
            }
        }
    }
    Err(FusionError::NotProportional("right-hand side vanishes".into()))
}

/// `c` in `Λ_{i,j+k}∘(id⊗Λ_{j,k})∘α = c·Λ_{i+j,k}∘(Λ_{i,j}⊗id)`.
pub fn verify_group_like(d: u32, i: i64, j: i64, k: i64) -> Result<Cyclo, FusionError> {
    let (pi, pj, pk) = (ps(d, &[i])?, ps(d, &[j])?, ps(d, &[k])?);
    let alpha = associator(&pi.base.space, &pj.base.space, &pk.base.space, d, false);
    let lhs = lambda(d, i, j + k)?
        .map
        .compose(&tensor_mor(&Morphism::identity(&pi.base.space, d), &lambda(d, j, k)?.map))
        .compose(&alpha);
    let rhs = lambda(d, i + j, k)?.map.compose(&tensor_mor(&lambda(d, i, j)?.map, &Morphism::identity(&pk.base.space, d)));
    Ok(proportionality(&lhs.matrix, &rhs.matrix, 0)?.0)
}

/// `c` in `F_l∘(id⊗F_r)∘α = c·F_r∘(F_l⊗id)` for even `d`.
pub fn verify_sign(d: u32) -> Result<Cyclo, FusionError> {
    let (fl, fr) = f_maps(d)?;
    let (hs, ls) = half_sets(d);
    let (h, l) = (ps(d, &hs)?, ps(d, &ls)?);
    let alpha = associator(&l.base.space, &h.base.space, &l.base.space, d, false);
    let lhs = fl.map.compose(&tensor_mor(&Morphism::identity(&l.base.space, d), &fr.map)).compose(&alpha);
    let rhs = fr.map.compose(&tensor_mor(&fl.map, &Morphism::identity(&l.base.space, d)));
    Ok(proportionality(&lhs.matrix, &rhs.matrix, 0)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_maps_are_closed_with_charge_zero() {
        for d in 4..=7 {
            for a in a_maps(d).unwrap() {
                let c = a.check(0);
                assert!(c.pass, "d = {d}: {c:?}");
            }
        }
    }

    #[test]
    fn group_like_and_sign() {
        assert!(verify_group_like(5, 1, 2, 3).unwrap().is_one());
        assert_eq!(verify_sign(4).unwrap(), -Cyclo::one(4));
        assert!(verify_sign(6).unwrap().is_one());
    }
}
