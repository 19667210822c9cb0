use mbf_core::exactalg::rat::rat;
use mbf_core::exactalg::Rat;
use mbf_core::graded::structure::perturbed_lambda_is_flagged;
use mbf_core::graded::{charge_matrix_ps, hom_space, is_null_homotopic, zero_charge_structure_check, GradedMbf};

fn interval(d: u32, start: i64, len: usize) -> GradedMbf {
    let set: Vec<i64> = (0..len as i64).map(|k| (start + k).rem_euclid(i64::from(d))).collect();
    GradedMbf::p_s(d, &set).unwrap()
}

/// `{(2k+u)/d : 0 ≤ k ≤ d−u−2}`.
fn predicted(d: u32, u: u32) -> Vec<Rat> {
    (0..=(d - u - 2)).map(|k| rat(i64::from(2 * k + u), i64::from(d))).collect()
}

#[test]
fn point_to_doublet_at_d5() {
    let h = hom_space(&interval(5, 0, 1), &interval(5, 0, 2), None).unwrap();
    assert_eq!(h.dim(), 3);
    assert_eq!(h.charge_multiset(), vec![rat(1, 5), rat(3, 5), rat(1, 1)]);
}

#[test]
fn charge_spectra_of_point_to_interval() {
    for d in 3..=7u32 {
        for u in 0..=(d - 2) {
            let h = hom_space(&interval(d, 0, 1), &interval(d, 0, u as usize + 1), None).unwrap();
            assert_eq!(h.charge_multiset(), predicted(d, u), "d = {d}, u = {u}");
        }
    }
}

#[test]
fn spectra_are_stable_under_shifts() {
    for d in 3..=8u32 {
        for j in 0..(d as usize - 1) {
            let base = hom_space(&interval(d, 0, 1), &interval(d, 0, j + 1), None).unwrap().dim();
            for i in 1..i64::from(d) {
                let h = hom_space(&interval(d, i, 1), &interval(d, i, j + 1), None).unwrap();
                assert_eq!(h.dim(), base, "d = {d}, i = {i}, j = {j}");
            }
        }
    }
}

#[test]
fn basis_elements_are_closed_and_not_exact() {
    for d in [4u32, 5] {
        let (src, tgt) = (interval(d, 0, 1), interval(d, 0, 2));
        for sector in hom_space(&src, &tgt, None).unwrap().sectors {
            for phi in &sector.basis {
                assert!(src.base.is_closed(phi, &tgt.base, 0).is_ok());
                assert!(is_null_homotopic(phi, &src, &tgt).unwrap().is_none(), "d = {d}, q = {}", sector.charge);
            }
        }
    }
}

#[test]
fn charge_matrices() {
    assert_eq!(charge_matrix_ps(5, 0), (rat(0, 1), rat(-3, 5)));
    assert_eq!(charge_matrix_ps(5, 2), (rat(-2, 5), rat(-1, 5)));
    for d in 3..=8u32 {
        for j in 0..d {
            let (q0, q1) = charge_matrix_ps(d, j);
            // d₁ = p_S has degree |S| = j+1 in weight-2/d variables and charge 1.
            assert_eq!(&q0 - &q1 + rat(2 * i64::from(j + 1), i64::from(d)), rat(1, 1));
        }
    }
}

#[test]
fn structure_maps_have_charge_zero() {
    for d in 3..=6 {
        let checks = zero_charge_structure_check(d).unwrap();
        assert!(checks.iter().all(|c| c.pass), "d = {d}: {checks:?}");
        assert!(perturbed_lambda_is_flagged(d).unwrap());
    }
}
