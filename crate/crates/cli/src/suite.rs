//! Coherence checks of the monoidal structure on samples of `P_S` objects
//! for `W = x^d`.

use mbf_core::bifact::monoidal::{check_unit_homotopy, mu_relations};
use mbf_core::bifact::{
    p_s_object, pentagon_check, rxa_lemma_check, tensor_obj, triangle_check, unit_isos, unit_isos_inverse, unit_object,
    CheckOutcome, Mbf, OpMatrix, Side, Verdict,
};
use mbf_core::polycalc::MultiPoly;

/// Singletons `P_{i}` and the intervals `P_{0..j}`.
pub fn sample_sets(d: u32) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..i64::from(d)).map(|i| vec![i]).collect();
    out.extend((1..i64::from(d) - 1).map(|j| (0..=j).collect()));
    out
}

fn name(set: &[i64]) -> String {
    let inner: Vec<String> = set.iter().map(i64::to_string).collect();
    format!("P{{{}}}", inner.join(","))
}

fn exact(name: String, r: Result<Verdict, impl std::fmt::Display>) -> CheckOutcome {
    match r {
        Ok(v) => CheckOutcome { name, pass: true, verdict: Some(v), detail: None },
        Err(e) => CheckOutcome::failed(name, e.to_string()),
    }
}

/// Pentagon and triangle on the samples, unit isomorphisms and their inverses,
/// the unit homotopies and the `rxa` identities to `cutoff`, `λ_I = ρ_I`,
/// and the relations among the `μ` maps.
pub fn monoidal_suite(d: u32, cutoff: u32) -> Vec<CheckOutcome> {
    let mut out = vec![];
    let sets = sample_sets(d);
    let objs: Vec<(String, Mbf)> = sets.iter().map(|s| (name(s), p_s_object(d, s).expect("proper subset"))).collect();
    let single = &objs[..d as usize];

    // Pentagon: all singleton quadruples `(i, j, k, l)` with `l = 0`, and every
    // sample in each slot against singletons elsewhere.
    for (ni, a) in single {
        for (nj, b) in single {
            for (nk, c) in single {
                let (nl, e) = &single[0];
                out.push(exact(
                    format!("pentagon {ni} {nj} {nk} {nl}"),
                    pentagon_check([&a.space, &b.space, &c.space, &e.space], d),
                ));
            }
        }
    }
    let p1 = &single[1.min(single.len() - 1)].1;
    for (nx, x) in &objs[d as usize..] {
        for slot in 0..4 {
            let mut spaces = [&p1.space; 4];
            spaces[slot] = &x.space;
            out.push(exact(format!("pentagon {nx} in slot {slot}"), pentagon_check(spaces, d)));
        }
    }

    for (nx, x) in &objs {
        for (ny, y) in &objs {
            out.push(exact(format!("triangle {nx} {ny}"), triangle_check(x, y)));
        }
    }

    let unit = unit_object(&MultiPoly::var(1, d, 0).pow(d)).expect("x^d has a unit");
    for (nx, x) in &objs {
        let (lam, rho) = unit_isos(x).expect("unit maps");
        let (lami, rhoi) = unit_isos_inverse(x).expect("one-variable inverses");
        let id = OpMatrix::identity(&x.space, d);
        out.push(exact(format!("λ∘λ⁻¹ = id on {nx}"), lam.compose(&lami).matrix.compare(&id, 0)));
        out.push(exact(format!("ρ∘ρ⁻¹ = id on {nx}"), rho.compose(&rhoi).matrix.compare(&id, 0)));
        let il = tensor_obj(&unit, x).expect("tensor");
        let ir = tensor_obj(x, &unit).expect("tensor");
        out.push(exact(format!("λ⁻¹ closed on {nx}"), x.is_closed(&lami, &il, 0)));
        out.push(exact(format!("ρ⁻¹ closed on {nx}"), x.is_closed(&rhoi, &ir, 0)));
        out.push(exact(format!("λ⁻¹∘λ ≃ id on {nx}"), check_unit_homotopy(x, Side::Left, cutoff)));
        out.push(exact(format!("ρ⁻¹∘ρ ≃ id on {nx}"), check_unit_homotopy(x, Side::Right, cutoff)));
        let d0 = x.diff.get(1, 0).as_kernel().and_then(|k| k.as_mul_poly()).expect("rank-one P_S");
        for mut c in rxa_lemma_check(&d0, cutoff) {
            c.name = format!("{} on {nx}", c.name);
            out.push(c);
        }
    }

    // λ_I and ρ_I differ on the nose (they collapse onto different outer
    // variables); equality holds against the strict inverses.
    let (lam, rho) = unit_isos(&unit).expect("unit maps on I");
    let (lami, rhoi) = unit_isos_inverse(&unit).expect("unit inverses on I");
    let id = OpMatrix::identity(&unit.space, d);
    out.push(exact("λ_I = ρ_I: ρ_I∘λ_I⁻¹ = id".into(), rho.compose(&lami).matrix.compare(&id, 0)));
    out.push(exact("λ_I = ρ_I: λ_I∘ρ_I⁻¹ = id".into(), lam.compose(&rhoi).matrix.compare(&id, 0)));
    out.extend(mu_relations(d));
    out
}
