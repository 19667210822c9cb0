use mbf_core::bifact::*;
use mbf_core::exactalg::Cyclo;
use mbf_core::polycalc::{MultiPoly, VarNames};

fn xd(d: u32) -> MultiPoly {
    MultiPoly::var(1, d, 0).pow(d)
}

fn singletons(d: u32) -> Vec<Mbf> {
    (0..d as i64).map(|i| p_s_object(d, &[i]).unwrap()).collect()
}

#[test]
fn unit_for_cube_is_exact() {
    let unit = unit_object(&xd(3)).unwrap();
    assert_eq!(unit.validate(30), Ok(Verdict::Exact));
    let names = VarNames::slots(2, 1);
    let d0 = unit.diff.get(1, 0).as_kernel().unwrap().as_mul_poly().unwrap();
    assert_eq!(names.render(&d0), "a^2 + a*b + b^2");
}

#[test]
fn corrupted_unit_is_rejected() {
    let d = 3;
    let names = VarNames::slots(2, 1);
    let broken = names.parse("a^2 + a*b", d).unwrap();
    let m = Mbf::from_polys(&[vec![broken]], &[vec![names.parse("a - b", d).unwrap()]], xd(d)).unwrap();
    assert!(matches!(m.validate(30), Err(BifactError::Violation { .. })));
}

#[test]
fn p_s_objects_validate() {
    for d in 3..=8 {
        for i in 0..d as i64 {
            assert_eq!(p_s_object(d, &[i, i + 1]).unwrap().validate(0), Ok(Verdict::Exact));
        }
    }
}

#[test]
fn delta_of_odd_constant_on_unit() {
    let d = 3;
    let unit = unit_object(&xd(d)).unwrap();
    let mut m = OpMatrix::zero(&unit.space, &unit.space, d);
    m.set(1, 0, Operator::identity(Shape::new(2, 1), d));
    let psi = Morphism::new(1, m).unwrap();
    let dpsi = unit.delta(&psi, &unit).unwrap();
    let names = VarNames::slots(2, 1);
    let e0 = dpsi.matrix.get(0, 0).as_kernel().unwrap().as_mul_poly().unwrap();
    let e1 = dpsi.matrix.get(1, 1).as_kernel().unwrap().as_mul_poly().unwrap();
    assert_eq!(names.render(&e0), "a - b");
    assert_eq!(names.render(&e1), "a - b");
    // δ² = 0
    let dd = unit.delta(&dpsi, &unit).unwrap();
    assert!(dd.matrix.is_zero_to(0).is_ok());
}

#[test]
fn tensor_products_validate() {
    for d in 3..=6u32 {
        let ps = singletons(d);
        for a in &ps {
            for b in &ps {
                let t = tensor_obj(a, b).unwrap();
                assert_eq!(t.validate(10), Ok(Verdict::Exact), "d={d}");
                assert_eq!(t.rank(), (2, 2));
            }
        }
    }
}

#[test]
fn unit_tensor_layout_matches_display() {
    // I⊗D: even [I0D0, I1D1], odd [I1D0, I0D1];
    // d0 = [[ι0⊗1, −1⊗d1], [1⊗d0, ι1⊗1]].
    let d = 4;
    let unit = unit_object(&xd(d)).unwrap();
    let p = p_s_object(d, &[1]).unwrap();
    let t = tensor_obj(&unit, &p).unwrap();
    let names = VarNames::slots(3, 1);
    let r = |i, j| {
        let k = t.diff.get(i, j).as_kernel().unwrap().as_mul_poly().unwrap();
        names.render(&k)
    };
    assert_eq!(r(2, 0), "a^3 + a^2*x + a*x^2 + x^3");
    assert_eq!(r(2, 1), "-x + (z)*b");
    assert_eq!(r(3, 0), "x^3 + (z)*x^2*b - x*b^2 + (-z)*b^3");
    assert_eq!(r(3, 1), "a - x");
    assert_eq!(r(0, 2), "a - x");
    assert_eq!(r(0, 3), "x + (-z)*b");
    assert_eq!(r(1, 2), "-x^3 + (-z)*x^2*b + x*b^2 + (z)*b^3");
    assert_eq!(r(1, 3), "a^3 + a^2*x + a*x^2 + x^3");
}

#[test]
fn associator_is_invertible_and_closed() {
    let d = 4;
    let ps = singletons(d);
    let (a, b, c) = (&ps[0], &ps[1], &ps[3]);
    let al = associator(&a.space, &b.space, &c.space, d, false);
    let inv = associator(&a.space, &b.space, &c.space, d, true);
    let id = OpMatrix::identity(al.source(), d);
    assert!(inv.compose(&al).matrix.compare(&id, 0).is_ok());
    let left = tensor_obj(&tensor_obj(a, b).unwrap(), c).unwrap();
    let right = tensor_obj(a, &tensor_obj(b, c).unwrap()).unwrap();
    assert_eq!(left.is_closed(&al, &right, 0), Ok(Verdict::Exact));
}

#[test]
fn pentagon_for_singletons() {
    for d in 3..=4u32 {
        let ps = singletons(d);
        for i in 0..d as usize {
            let j = (i + 1) % d as usize;
            let spaces = [&ps[i].space, &ps[j].space, &ps[0].space, &ps[i].space];
            assert_eq!(pentagon_check(spaces, d), Ok(Verdict::Exact));
        }
    }
}

#[test]
fn triangle_and_negative_control() {
    let d = 3;
    let p0 = p_s_object(d, &[0]).unwrap();
    assert_eq!(triangle_check(&p0, &p0), Ok(Verdict::Exact));
    let d = 5;
    let p1 = p_s_object(d, &[1]).unwrap();
    let p01 = p_s_object(d, &[0, 1]).unwrap();
    assert_eq!(triangle_check(&p1, &p01), Ok(Verdict::Exact));
    let flipped = monoidal::triangle_with(&p1, &p01, &-Cyclo::one(d));
    assert!(flipped.is_err());
}

#[test]
fn unit_maps_are_closed() {
    let d = 4;
    let p = p_s_object(d, &[1]).unwrap();
    let unit = unit_object(&xd(d)).unwrap();
    let (lam, rho) = unit_isos(&p).unwrap();
    let il = tensor_obj(&unit, &p).unwrap();
    let ir = tensor_obj(&p, &unit).unwrap();
    assert_eq!(il.is_closed(&lam, &p, 0), Ok(Verdict::Exact));
    assert_eq!(ir.is_closed(&rho, &p, 0), Ok(Verdict::Exact));
}

#[test]
fn unit_inverses() {
    for (d, set) in [(3u32, vec![0i64]), (5, vec![2]), (4, vec![0, 1]), (5, vec![1, 2]), (6, vec![0, 1, 2])] {
        let p = p_s_object(d, &set).unwrap();
        let unit = unit_object(&xd(d)).unwrap();
        let (lam, rho) = unit_isos(&p).unwrap();
        let (lami, rhoi) = unit_isos_inverse(&p).unwrap();
        let id = OpMatrix::identity(&p.space, d);
        assert_eq!(lam.compose(&lami).matrix.compare(&id, 0), Ok(Verdict::Exact));
        assert_eq!(rho.compose(&rhoi).matrix.compare(&id, 0), Ok(Verdict::Exact));
        let il = tensor_obj(&unit, &p).unwrap();
        let ir = tensor_obj(&p, &unit).unwrap();
        assert_eq!(p.is_closed(&lami, &il, 0), Ok(Verdict::Exact), "λ⁻¹ closed d={d} {set:?}");
        assert_eq!(p.is_closed(&rhoi, &ir, 0), Ok(Verdict::Exact), "ρ⁻¹ closed d={d} {set:?}");
        assert_eq!(monoidal::check_unit_homotopy(&p, Side::Left, 30), Ok(Verdict::VerifiedToCutoff(30)));
        assert_eq!(monoidal::check_unit_homotopy(&p, Side::Right, 30), Ok(Verdict::VerifiedToCutoff(30)));
    }
}

#[test]
fn lambda_inverse_second_block_for_cube() {
    let d = 3;
    let unit = unit_object(&xd(d)).unwrap();
    let (lami, _) = unit_isos_inverse(&unit).unwrap();
    // rows [I0I0, I1I1, I1I0, I0I1]
    let k = lami.matrix.get(1, 0).as_kernel().unwrap().clone();
    let names = VarNames::slots(3, 1);
    let img = k.apply(&MultiPoly::one(2, d));
    assert_eq!(names.render(&img), "a + x + b");
}

#[test]
fn lambda_equals_rho_on_unit() {
    let d = 5;
    let unit = unit_object(&xd(d)).unwrap();
    let (_, rho) = unit_isos(&unit).unwrap();
    let (lami, _) = unit_isos_inverse(&unit).unwrap();
    let id = OpMatrix::identity(&unit.space, d);
    assert_eq!(rho.compose(&lami).matrix.compare(&id, 0), Ok(Verdict::Exact));
}

#[test]
fn rxa_identities() {
    let d = 4;
    let p1 = p_s_object(d, &[1]).unwrap();
    let d0 = p1.diff.get(1, 0).as_kernel().unwrap().as_mul_poly().unwrap();
    for c in rxa_lemma_check(&d0, 30) {
        assert!(c.pass, "{}: {:?}", c.name, c.detail);
        assert_eq!(c.verdict, Some(Verdict::VerifiedToCutoff(30)));
    }
}

#[test]
fn twisted_units() {
    for (d, m, n, s) in [(3u32, 1i64, 0i64, 1i64), (5, 2, 2, 0), (4, 0, 1, 3)] {
        let tw = twist_object(d, m, n).unwrap();
        let p = tw.target.diff.get(0, 1).as_kernel().unwrap().as_mul_poly().unwrap();
        let expect = p_s_object(d, &[s]).unwrap();
        assert_eq!(&p, expect.diff.get(0, 1).as_kernel().unwrap().as_mul_poly().as_ref().unwrap());
        for c in tw.verify() {
            assert!(c.pass, "{} {:?}", c.name, c.detail);
        }
    }
}

#[test]
fn mu_relations_hold() {
    for d in 2..=8 {
        for c in monoidal::mu_relations(d) {
            assert!(c.pass, "{}", c.name);
        }
    }
}

#[test]
fn many_variable_units() {
    let names = VarNames::new(["x", "y", "z"]);
    for (w, n, rank) in [("x^2 + y^2", 2usize, (2, 2)), ("x^3 + y^3", 2, (2, 2)), ("x^3 + y^3 + z^3", 3, (4, 4))] {
        let names = VarNames::new(names.names()[..n].to_vec());
        let w = names.parse(w, 1).unwrap();
        let unit = unit_object(&w).unwrap();
        assert_eq!(unit.validate(0), Ok(Verdict::Exact));
        assert_eq!(unit.rank(), rank);
    }
}

#[test]
fn two_variable_unit_display() {
    let names = VarNames::new(["x", "y"]);
    let w = names.parse("x^2 + y^2", 1).unwrap();
    let unit = unit_object(&w).unwrap();
    let v = VarNames::slots(2, 2);
    let r = |i, j| v.render(&unit.diff.get(i, j).as_kernel().unwrap().as_mul_poly().unwrap());
    // d0 = [[Δ1, −(a2−b2)], [Δ2, a1−b1]], d1 = [[a1−b1, a2−b2], [−Δ2, Δ1]]
    assert_eq!(r(2, 0), "a1 + b1");
    assert_eq!(r(2, 1), "-a2 + b2");
    assert_eq!(r(3, 0), "a2 + b2");
    assert_eq!(r(3, 1), "a1 - b1");
    assert_eq!(r(0, 2), "a1 - b1");
    assert_eq!(r(0, 3), "a2 - b2");
    assert_eq!(r(1, 2), "-a2 - b2");
    assert_eq!(r(1, 3), "a1 + b1");
}

#[test]
fn degenerate_potentials_are_refused() {
    let names = VarNames::new(["x"]);
    assert!(unit_object(&names.parse("x + 1", 1).unwrap()).is_err());
    assert!(unit_object(&names.parse("3", 1).unwrap()).is_err());
}

mod random {
    use super::*;
    use mbf_core::polycalc::Mono;
    use proptest::prelude::*;

    /// A proper nonempty subset of residues mod `d`.
    fn subset(d: u32, mask: u32) -> Vec<i64> {
        let s: Vec<i64> = (0..i64::from(d)).filter(|i| mask >> i & 1 == 1).collect();
        if s.is_empty() || s.len() == d as usize {
            vec![0]
        } else {
            s
        }
    }

    fn morphism(src: &Mbf, tgt: &Mbf, parity: u8, coeffs: &[(i64, u16, u16)]) -> Morphism {
        let d = src.conductor();
        let mut m = OpMatrix::zero(&src.space, &tgt.space, d);
        let mut k = 0;
        for r in 0..tgt.space.len() {
            for c in 0..src.space.len() {
                if (tgt.space.parity(r) + src.space.parity(c)) % 2 != parity {
                    continue;
                }
                let (v, ea, eb) = coeffs[k % coeffs.len()];
                k += 1;
                let mono = Mono::var(2, 0, ea).mul(&Mono::var(2, 1, eb));
                let p = MultiPoly::term(mono, Cyclo::from_int(d, v));
                m.set(r, c, Operator::mul_poly(Shape::new(2, 1), p));
            }
        }
        Morphism::new(parity, m).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn delta_squares_to_zero(
            d in 3u32..=6,
            (m1, m2) in (any::<u32>(), any::<u32>()),
            parity in 0u8..=1,
            coeffs in prop::collection::vec((-4i64..=4, 0u16..=3, 0u16..=3), 1..6),
        ) {
            let src = p_s_object(d, &subset(d, m1)).unwrap();
            let tgt = p_s_object(d, &subset(d, m2)).unwrap();
            let phi = morphism(&src, &tgt, parity, &coeffs);
            let dd = src.delta(&src.delta(&phi, &tgt).unwrap(), &tgt).unwrap();
            prop_assert!(dd.matrix.is_zero_to(0).is_ok());
        }

        #[test]
        fn tensor_products_of_random_objects_validate(d in 3u32..=5, (m1, m2) in (any::<u32>(), any::<u32>())) {
            let a = p_s_object(d, &subset(d, m1)).unwrap();
            let b = p_s_object(d, &subset(d, m2)).unwrap();
            prop_assert!(tensor_obj(&a, &b).unwrap().validate(2 * d).is_ok());
        }
    }
}
