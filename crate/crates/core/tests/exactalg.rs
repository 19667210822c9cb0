use mbf_core::exactalg::cyclo::{cyclotomic_poly, euler_phi};
use mbf_core::exactalg::rat::rat;
use mbf_core::exactalg::{Complex, Cyclo, Real};
use proptest::prelude::*;

fn cyclo(n: u32) -> impl Strategy<Value = Cyclo> {
    let k = euler_phi(n);
    prop::collection::vec((-9i64..=9, 1i64..=4), k).prop_map(move |cs| {
        let coeffs: Vec<_> = cs.into_iter().map(|(p, q)| rat(p, q)).collect();
        Cyclo::from_coeffs(n, &coeffs)
    })
}

fn triple() -> impl Strategy<Value = (Cyclo, Cyclo, Cyclo)> {
    (3u32..=24).prop_flat_map(|n| (cyclo(n), cyclo(n), cyclo(n)))
}

fn pair() -> impl Strategy<Value = (Cyclo, Cyclo)> {
    (3u32..=24).prop_flat_map(|n| (cyclo(n), cyclo(n)))
}

/// Integer polynomial product, lowest degree first.
fn poly_mul(p: &[i64], q: &[i64]) -> Vec<i64> {
    let mut out = vec![0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

const PREC: u32 = 128;

/// |z − w| below `2^{10−PREC}` relative to `scale`.
fn close(z: &Complex, w: &Complex, scale: f64) -> bool {
    let tol = 2f64.powi(10 - PREC as i32) * scale.max(1.0);
    z.re.close_to(&w.re, tol) && z.im.close_to(&w.im, tol)
}

fn size(z: &Complex) -> f64 {
    z.abs().to_f64()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism((x, y) in pair()) {
        let (ex, ey) = (x.embed(PREC), y.embed(PREC));
        let scale = (1.0 + size(&ex)) * (1.0 + size(&ey));
        prop_assert!(close(&(&x + &y).embed(PREC), &ex.add(&ey), scale));
        prop_assert!(close(&(&x * &y).embed(PREC), &ex.mul(&ey), scale));
    }

    #[test]
    fn division_undoes_multiplication((x, y) in pair()) {
        prop_assume!(!y.is_zero());
        prop_assert_eq!(x.try_div(&y).unwrap().try_mul(&y).unwrap(), x);
    }
}

#[test]
fn cyclotomic_polynomials_factor_t_n_minus_one() {
    for n in 1..=24u32 {
        let mut prod = vec![1i64];
        for d in (1..=n).filter(|d| n % d == 0) {
            prod = poly_mul(&prod, &cyclotomic_poly(d));
        }
        let mut expect = vec![0i64; n as usize + 1];
        expect[0] = -1;
        expect[n as usize] = 1;
        assert_eq!(prod, expect, "n = {n}");
        assert_eq!(cyclotomic_poly(n).len() - 1, euler_phi(n));
    }
}

#[test]
fn eta_is_a_primitive_root() {
    for n in 3..=24u32 {
        let z = Cyclo::zeta_pow(n, 1);
        assert!(z.pow(i64::from(n)).unwrap().is_one());
        for k in 1..n {
            assert!(!z.pow(i64::from(k)).unwrap().is_one(), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn ratio_examples_reduce_to_rationals() {
    // −η/(η²+η+1) at d = 6 and d = 4.
    for (d, want) in [(6u32, rat(-1, 2)), (4, rat(-1, 1))] {
        let z = |k| Cyclo::zeta_pow(d, k);
        let den = &(&z(2) + &z(1)) + &Cyclo::one(d);
        let r = (-z(1)).try_div(&den).unwrap();
        assert_eq!(r.as_rational(), Some(want));
    }
}

#[test]
fn numeric_embedding_of_zeta() {
    let z = Cyclo::zeta_pow(8, 1).embed(PREC);
    let h = Real::from_rat(&rat(1, 2), PREC).sqrt();
    assert!(z.re.close_to(&h, 1e-35) && z.im.close_to(&h, 1e-35));
}
