use mbf_cft::examples::{closed_form, complex_ratio, complexify, dual_direction, ratio, ratio_closed_form};
use mbf_cft::su2::{admissible, Su2Level};
use mbf_cft::*;
use mbf_core::exactalg::{Complex, Rat, Real};
use mbf_core::graded::{hom_space, GradedMbf};
use proptest::prelude::*;

const P: u32 = 128;

fn zero() -> Real {
    Real::zero(P)
}

#[test]
fn two_by_two_matches_the_closed_form() {
    for d in 4..=12u32 {
        let FusingExample::TwoByTwo { f, max_deviation, ratio: r, .. } =
            cft_fusing_examples(d, WhichExample::TwoByTwo, P).unwrap()
        else {
            unreachable!()
        };
        assert!(max_deviation.close_to(&zero(), 1e-10), "d = {d}: {max_deviation:?}");
        assert!(r.close_to(&ratio_closed_form(d, P), 1e-10), "d = {d}");
        assert!(f[0][0].close_to(&f[1][1].neg(), 1e-30) && f[0][1].close_to(&f[1][0], 1e-30));
    }
    assert!(ratio(&two_by_two(4, P).unwrap()).close_to(&Real::from_i64(-1, P), 1e-30));
}

#[test]
fn dual_direction_gives_the_same_numbers() {
    for d in [4u32, 5] {
        let f = two_by_two(d, P).unwrap();
        let g = dual_direction(&f);
        for i in 0..2 {
            for j in 0..2 {
                assert!(g[i][j].close_to(&f[i][j], 1e-30), "d = {d}, ({i},{j})");
            }
        }
    }
}

#[test]
fn group_like_scalars_are_one() {
    for d in [3u32, 5, 7] {
        let FusingExample::GroupLike { values, .. } = cft_fusing_examples(d, WhichExample::GroupLike, P).unwrap() else {
            unreachable!()
        };
        assert_eq!(values.len(), (d * d * d) as usize);
        assert!(values.iter().all(|v| v.value.close_to(&Real::from_i64(1, P), 0.0)));
    }
}

#[test]
fn u1_examples() {
    let d = 5;
    assert_eq!(u1_fusing(U1Label::new(d, 1), U1Label::new(d, 5), U1Label::new(d, 5)), -1);
    assert_eq!(u1_fusing(U1Label::new(d, 0), U1Label::new(d, 5), U1Label::new(d, 9)), 1);
    for n in 1..=8 {
        assert_eq!(u1_cocycle_check(n), 0);
    }
}

#[test]
fn pentagon_up_to_level_three() {
    for k in 1..=3 {
        let r = pentagon_check(k, None, P);
        let tol = if k == 1 { 1e-25 } else { 1e-20 };
        assert!(r.max_residual.close_to(&zero(), tol), "k = {k}: {r:?}");
        assert!(r.max_residual.close_to(&zero(), 1e-18));
        assert!(r.unit_residual.is_zero(), "k = {k}");
    }
}

#[test]
fn sampled_pentagon_at_level_six() {
    let r = pentagon_check(6, Some(&[1, 2, 5]), P);
    assert!(r.equations > 0 && r.max_residual.close_to(&zero(), 1e-20), "{r:?}");
}

/// The 24 tetrahedral images of `{a b e; d c f}`, as `[a,b,e,d,c,f]`.
fn tetrahedral_images(s: [u32; 6]) -> Vec<[u32; 6]> {
    let cols = [(s[0], s[3]), (s[1], s[4]), (s[2], s[5])];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = vec![];
    for p in perms {
        let c = p.map(|i| cols[i]);
        // Swap top and bottom in an even number of columns.
        for flip in [[false, false, false], [true, true, false], [true, false, true], [false, true, true]] {
            let c: Vec<(u32, u32)> = c.iter().zip(flip).map(|(&(t, b), f)| if f { (b, t) } else { (t, b) }).collect();
            out.push([c[0].0, c[1].0, c[2].0, c[0].1, c[1].1, c[2].1]);
        }
    }
    out
}

#[test]
fn racah_wigner_core_has_tetrahedral_symmetry() {
    for k in 1..=4u32 {
        let level = Su2Level::new(k, P);
        let mut checked = 0;
        for code in 0..(k + 1).pow(6) {
            let s: [u32; 6] = std::array::from_fn(|i| code / (k + 1).pow(i as u32) % (k + 1));
            let spins = s.map(Spin);
            let Some(v) = level.racah_wigner(spins) else { continue };
            for img in tetrahedral_images(s) {
                let w = level.racah_wigner(img.map(Spin)).expect("images stay admissible");
                assert!(v.close_to(&w, 1e-18), "k = {k}: {s:?} vs {img:?}");
            }
            checked += 1;
        }
        assert!(checked > 0);
    }
}

#[test]
fn sixj_is_stable_under_precision_doubling() {
    for k in 1..=3u32 {
        let (lo, hi) = (Su2Level::new(k, P), Su2Level::new(k, 2 * P));
        for code in 0..(k + 1).pow(6) {
            let s: [u32; 6] = std::array::from_fn(|i| code / (k + 1).pow(i as u32) % (k + 1));
            let (a, b) = (lo.sixj(s.map(Spin)), hi.sixj(s.map(Spin)));
            assert_eq!(a.admissible, b.admissible);
            assert!(a.value.close_to(&b.value, 1e-30), "k = {k}: {s:?}");
            assert!(a.value.abs().cmp_value(&Real::from_i64(10, P)).is_lt());
        }
    }
    // k = 1, spins in {0, ½}, re-evaluated at 200 bits.
    let (lo, hi) = (Su2Level::new(1, P), Su2Level::new(1, 200));
    for code in 0..64u32 {
        let s: [u32; 6] = std::array::from_fn(|i| code >> i & 1);
        assert!(lo.sixj(s.map(Spin)).value.close_to(&hi.sixj(s.map(Spin)).value, 1e-35));
    }
}

#[test]
fn chiral_spectra() {
    for d in 3..=8u32 {
        for u in 0..=(d - 2) {
            let sp = defect_spectrum(d, u, 0, true).unwrap();
            assert_eq!(sp.channel, mm_normalize(d, i64::from(u), i64::from(u), 0).unwrap());
            let want: Vec<(MMLabel, MMLabel)> = (0..=i64::from(d - u) - 2)
                .map(|l| {
                    let up = l + i64::from(u);
                    (mm_normalize(d, up, up, 0).unwrap(), mm_normalize(d, l, l, 0).unwrap())
                })
                .collect();
            let got: Vec<(MMLabel, MMLabel)> = sp.pairs.iter().map(|p| (p.left, p.right)).collect();
            assert_eq!(got, want, "d = {d}, u = {u}");
            let q: Vec<Rat> = (0..=(d - u - 2)).map(|k| Rat::new(i64::from(2 * k + u).into(), i64::from(d).into())).collect();
            assert_eq!(sp.charges(), q);
        }
    }
}

#[test]
fn spectra_do_not_depend_on_n() {
    for d in [4u32, 5, 6] {
        for u in 0..=(d - 2) {
            let a = defect_spectrum(d, u, 0, false).unwrap();
            let b = defect_spectrum(d, u, 3, false).unwrap();
            let key = |s: &DefectSpectrum| s.pairs.iter().map(|p| (p.left, p.right)).collect::<Vec<_>>();
            assert_eq!(key(&a), key(&b), "d = {d}, u = {u}");
            assert!(!a.pairs.is_empty());
        }
    }
}

#[test]
fn bulk_chiral_ring_matches_the_identity_defect() {
    for d in 3..=7u32 {
        let sp = defect_spectrum(d, 0, 0, true).unwrap();
        assert_eq!(sp.pairs.len(), d as usize - 1);
        let p0 = GradedMbf::p_s(d, &[0]).unwrap();
        assert_eq!(hom_space(&p0, &p0, None).unwrap().dim(), d as usize - 1);
    }
}

#[test]
fn mm_fuse_is_associative_for_small_d() {
    for d in 3..=5u32 {
        let labels = mm_labels(d);
        for &x in &labels {
            for &y in &labels {
                for &z in &labels {
                    assert_eq!(triple(x, y, z, true), triple(x, y, z, false));
                }
            }
        }
    }
}

fn triple(x: MMLabel, y: MMLabel, z: MMLabel, left: bool) -> Vec<MMLabel> {
    let mut out = vec![];
    if left {
        for w in mm_fuse(x, y).unwrap() {
            out.extend(mm_fuse(w, z).unwrap());
        }
    } else {
        for w in mm_fuse(y, z).unwrap() {
            out.extend(mm_fuse(x, w).unwrap());
        }
    }
    out.sort();
    out
}

fn label() -> impl Strategy<Value = MMLabel> {
    (6u32..=8).prop_flat_map(|d| (Just(d), 0..=i64::from(d) - 2, 0..2 * i64::from(d), 0i64..4)).prop_filter_map(
        "parity",
        |(d, l, m, s)| mm_normalize(d, l, m, s).ok(),
    )
}

fn scalar() -> impl Strategy<Value = Complex> {
    ((-40i32..=40), (-40i32..=40)).prop_filter_map("nonzero", |(a, b)| {
        (a != 0 || b != 0).then(|| Complex::new(Real::from_f64(f64::from(a) / 8.0, P), Real::from_f64(f64::from(b) / 8.0, P)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn mm_fuse_is_associative(x in label(), y in label(), z in label()) {
        prop_assume!(x.d == y.d && y.d == z.d);
        prop_assert_eq!(triple(x, y, z, true), triple(x, y, z, false));
    }

    #[test]
    fn gauge_rescaling_keeps_the_ratio(d in 4u32..=12, s in prop::collection::vec(scalar(), 6)) {
        let f = complexify(&two_by_two(d, P).unwrap());
        let g = GaugeScalars {
            e13_02_11: s[0].clone(), e13_11_02: s[1].clone(), e13_22_11: s[2].clone(),
            e13_11_22: s[3].clone(), e22_11_11: s[4].clone(), e02_11_11: s[5].clone(),
        };
        let moved = complex_ratio(&gauge_transform(&f, &g).unwrap());
        let r = complex_ratio(&f);
        prop_assert!(moved.re.close_to(&r.re, 1e-12) && moved.im.close_to(&r.im, 1e-12));
    }
}

#[test]
fn gauge_examples() {
    let d = 7;
    let f = complexify(&closed_form(d, P));
    let same = gauge_transform(&f, &GaugeScalars::identity(P)).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            assert!(same[i][j].re.close_to(&f[i][j].re, 0.0));
        }
    }
    // η¹³_{(2,2)(1,1)} = 1/F₀₂ and η¹³_{(0,2)(1,1)} = 1/F₂₀ make the
    // off-diagonal entries 1; then F₀₀F₂₂ is the ratio.
    let mut g = GaugeScalars::identity(P);
    let one = Complex::real(Real::from_i64(1, P));
    g.e13_22_11 = one.div(&f[0][1]);
    g.e13_02_11 = one.div(&f[1][0]);
    let h = gauge_transform(&f, &g).unwrap();
    assert!(h[0][1].re.close_to(&one.re, 1e-30) && h[1][0].re.close_to(&one.re, 1e-30));
    let prod = h[0][0].mul(&h[1][1]);
    assert!(prod.re.close_to(&ratio_closed_form(d, P), 1e-25));
}

#[test]
fn admissibility_examples() {
    assert!(admissible(2, 1, 1, 2));
    assert!(!admissible(2, 2, 2, 2));
    assert!(!admissible(3, 1, 1, 1));
    let v = sixj(2, [1, 1, 0, 1, 1, 2].map(Spin), P);
    assert!(v.admissible);
}
