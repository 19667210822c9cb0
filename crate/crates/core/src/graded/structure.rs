//! Charge-0 checks for the structure maps: associator and unit isomorphisms.

use serde::Serialize;

use super::{morphism_charge, GradedError, GradedMbf};
use crate::bifact::{associator, unit_isos, unit_isos_inverse, Morphism, Operator};
use crate::exactalg::rat::rat_to_string;
use crate::polycalc::MultiPoly;

#[derive(Clone, Debug, Serialize)]
pub struct StructureCheck {
    pub name: String,
    pub pass: bool,
    pub charge: Option<String>,
    pub detail: Option<String>,
}

fn check(name: String, phi: &Morphism, source: &GradedMbf, target: &GradedMbf) -> StructureCheck {
    match morphism_charge(phi, source, target) {
        Ok(q) => StructureCheck {
            pass: q.as_ref().is_none_or(num_traits::Zero::is_zero),
            charge: q.as_ref().map(rat_to_string),
            detail: None,
            name,
        },
        Err(e) => StructureCheck { name, pass: false, charge: None, detail: Some(e.to_string()) },
    }
}

/// `α` on triples of singletons and `λ_D, ρ_D, λ_D⁻¹, ρ_D⁻¹` on consecutive
/// `P_S`, all required to carry charge 0.
pub fn zero_charge_structure_check(d: u32) -> Result<Vec<StructureCheck>, GradedError> {
    let mut out = vec![];
    let unit = GradedMbf::p_s(d, &[0])?;
    for len in 1..=2usize.min(d as usize - 1) {
        let set: Vec<i64> = (0..len as i64).collect();
        let obj = GradedMbf::p_s(d, &set)?;
        let il = unit.tensor(&obj)?;
        let ir = obj.tensor(&unit)?;
        let (lam, rho) = unit_isos(&obj.base)?;
        let (lam_inv, rho_inv) = unit_isos_inverse(&obj.base)?;
        let tag = format!("{set:?}");
        out.push(check(format!("lambda P{tag}"), &lam, &il, &obj));
        out.push(check(format!("rho P{tag}"), &rho, &ir, &obj));
        out.push(check(format!("lambda^-1 P{tag}"), &lam_inv, &obj, &il));
        out.push(check(format!("rho^-1 P{tag}"), &rho_inv, &obj, &ir));
    }
    let singles: Vec<GradedMbf> = (0..3).map(|i| GradedMbf::p_s(d, &[i % i64::from(d)])).collect::<Result<_, _>>()?;
    let left = singles[0].tensor(&singles[1])?.tensor(&singles[2])?;
    let right = singles[0].tensor(&singles[1].tensor(&singles[2])?)?;
    let alpha = associator(&singles[0].base.space, &singles[1].base.space, &singles[2].base.space, d, false);
    out.push(check("alpha P{0},P{1},P{2}".into(), &alpha, &left, &right));
    Ok(out)
}

/// `λ_D` with one nonzero entry multiplied by the outer variable `a`; the
/// result must be flagged as not homogeneous.
pub fn perturbed_lambda_is_flagged(d: u32) -> Result<bool, GradedError> {
    let unit = GradedMbf::p_s(d, &[0])?;
    let obj = GradedMbf::p_s(d, &[0, 1])?;
    let il = unit.tensor(&obj)?;
    let (lam, _) = unit_isos(&obj.base)?;
    let (row, col) = (0..lam.target().len())
        .flat_map(|r| (0..lam.source().len()).map(move |c| (r, c)))
        .find(|&(r, c)| !lam.matrix.get(r, c).is_zero())
        .expect("λ has a nonzero entry");
    let entry = lam.matrix.get(row, col).clone();
    let shape = entry.target();
    let a = MultiPoly::var(shape.vars(), d, 0);
    let mut m = lam.matrix.clone();
    m.set(row, col, Operator::mul_poly(shape, a).compose(&entry));
    let bad = Morphism { parity: 0, matrix: m };
    Ok(morphism_charge(&bad, &il, &obj).is_err())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_maps_have_charge_zero() {
        for d in [3, 4, 5] {
            for c in zero_charge_structure_check(d).unwrap() {
                assert!(c.pass, "d = {d}: {c:?}");
            }
        }
    }

    #[test]
    fn perturbation_is_flagged() {
        assert!(perturbed_lambda_is_flagged(4).unwrap());
    }
}
