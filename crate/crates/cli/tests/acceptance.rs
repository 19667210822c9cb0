//! Acceptance criteria 1–10. Each criterion is one test that prints a single
//! `criterion N: PASS|FAIL` line with its measurements; run with
//! `--nocapture` to see them. The tests hold a shared lock so that wall-clock
//! bounds are measured without competing work.

use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use mbf_cft::examples::{complex_ratio, complexify};
use mbf_cft::*;
use mbf_cli::compare::{fusion_rule_compare, ratio_compare};
use mbf_cli::suite::monoidal_suite;
use mbf_core::bifact::{p_s_object, unit_object, Mbf, Morphism, OpMatrix, Operator, Shape, Verdict};
use mbf_core::exactalg::cyclo::euler_phi;
use mbf_core::exactalg::rat::rat;
use mbf_core::exactalg::{Complex, Cyclo, Rat, Real};
use mbf_core::fusion::{
    expected_fusing_matrix, solve_with_entries, verify_fusing_up_to_homotopy, verify_group_like, verify_sign, verify_with,
    HomotopyStatus, DETERMINED_ENTRIES,
};
use mbf_core::graded::{hom_space, GradedMbf};
use mbf_core::polycalc::{p_s, Mono, MultiPoly, VarNames};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

// Pinned tolerances and limits.
const PREC: u32 = 128;
const RATIO_TOL: f64 = 1e-10;
const FCFT_TOL: f64 = 1e-10;
const GAUGE_TOL: f64 = 1e-12;
const SCALAR_TOL: f64 = 1e-10;
const SIXJ_PENTAGON_TOL: f64 = 1e-18;
const CUTOFF: u32 = 30;
const FUSING_LIMIT: Duration = Duration::from_secs(10);
const RATIO_LIMIT: Duration = Duration::from_secs(5);
const MONOIDAL_LIMIT: Duration = Duration::from_secs(60);
const UNIT_LIMIT: Duration = Duration::from_secs(5);
const SUITE_LIMIT: Duration = Duration::from_secs(300);
const GAUGE_SAMPLES: usize = 100;
const SEED: u64 = 0x006d_6266;

static SERIAL: Mutex<()> = Mutex::new(());

type Outcome = Result<String, String>;

fn report(n: u8, title: &str, f: impl FnOnce() -> Outcome) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let r = f();
    let took = start.elapsed();
    match &r {
        Ok(detail) => println!("criterion {n}: PASS  {title} [{took:.2?}] {detail}"),
        Err(why) => println!("criterion {n}: FAIL  {title} [{took:.2?}] {why}"),
    }
    if let Err(why) = r {
        panic!("criterion {n} failed: {why}");
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn mbf(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_mbf")).args(args).output().expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

#[test]
fn criterion_01_lg_fusing_matrix() {
    report(1, "LG fusing matrix from the four determined entries, d = 4…12", || {
        let pinned = serde_json::json!([[1, 1], [5, 2], [6, 2], [7, 2]]);
        let mut slowest = Duration::ZERO;
        for d in 4..=12u32 {
            let t = Instant::now();
            let (code, json) = mbf(&["fusing", "--d", &d.to_string()]);
            let took = t.elapsed();
            slowest = slowest.max(took);
            ensure(code == 0, || format!("d = {d}: exit {code}"))?;
            let want = serde_json::to_value(expected_fusing_matrix(d)).expect("serialisable");
            ensure(json["result"]["F"] == want, || format!("d = {d}: F = {}", json["result"]["F"]))?;
            ensure(json["result"]["determined_entries"] == pinned, || format!("d = {d}: entries differ"))?;
            ensure(took < FUSING_LIMIT, || format!("d = {d} took {took:.2?}"))?;
        }
        // Any single determined entry already fixes the matrix.
        for d in 4..=6u32 {
            for e in DETERMINED_ENTRIES {
                let f = solve_with_entries(d, &[e]).map_err(|x| x.to_string())?.f;
                ensure(f == expected_fusing_matrix(d), || format!("d = {d}: entry {e:?} alone gives another F"))?;
            }
        }
        Ok(format!("exact for d = 4…12, slowest {slowest:.2?}"))
    });
}

#[test]
fn criterion_02_ratio() {
    report(2, "gauge-invariant ratio −η/(η²+η+1) = −1/(1+2cos 2π/d), d = 4…12", || {
        let t = Instant::now();
        let mut worst = 0f64;
        for d in 4..=12u32 {
            let r = ratio_compare(d, RATIO_TOL, PREC).map_err(|e| e.to_string())?;
            ensure(r.pass, || format!("d = {d}: deviation {:e}", r.deviation))?;
            worst = worst.max(r.deviation);
        }
        let took = t.elapsed();
        ensure(took < RATIO_LIMIT, || format!("took {took:.2?}"))?;
        Ok(format!("max deviation {worst:e} ≤ {RATIO_TOL:e}"))
    });
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Complex {
    loop {
        let (a, b): (f64, f64) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if a.hypot(b) > 0.1 {
            return Complex::new(Real::from_f64(a, PREC), Real::from_f64(b, PREC));
        }
    }
}

#[test]
fn criterion_03_cft_two_by_two() {
    report(3, "CFT 2×2 fusing matrix and gauge invariance of its ratio", || {
        let mut worst = 0f64;
        for d in 4..=12u32 {
            let f = two_by_two(d, PREC).map_err(|e| e.to_string())?;
            let cf = examples::closed_form(d, PREC);
            for i in 0..2 {
                for j in 0..2 {
                    let dev = f[i][j].sub(&cf[i][j]).abs().to_f64();
                    ensure(dev <= FCFT_TOL, || format!("d = {d}, F[{i}][{j}] off by {dev:e}"))?;
                    worst = worst.max(dev);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut drift = 0f64;
        for n in 0..GAUGE_SAMPLES {
            let d = 4 + (n as u32 % 9);
            let f = complexify(&two_by_two(d, PREC).map_err(|e| e.to_string())?);
            let g = GaugeScalars {
                e13_02_11: random_scalar(&mut rng),
                e13_11_02: random_scalar(&mut rng),
                e13_22_11: random_scalar(&mut rng),
                e13_11_22: random_scalar(&mut rng),
                e22_11_11: random_scalar(&mut rng),
                e02_11_11: random_scalar(&mut rng),
            };
            let (before, after) = (complex_ratio(&f), complex_ratio(&gauge_transform(&f, &g).map_err(|e| e.to_string())?));
            let dev = after.sub(&before).abs().to_f64();
            ensure(dev <= GAUGE_TOL, || format!("rescaling {n} at d = {d} moves the ratio by {dev:e}"))?;
            drift = drift.max(dev);
        }
        Ok(format!("entries within {worst:e}; {GAUGE_SAMPLES} rescalings move the ratio by ≤ {drift:e}"))
    });
}

#[test]
fn criterion_04_scalar_examples() {
    report(4, "group-like ψ = 1 and sign (−1)^{(d−2)/2}, LG exact and CFT", || {
        let one_r = Real::from_i64(1, PREC);
        for d in [3u32, 5, 7] {
            for i in 0..i64::from(d) {
                for j in 0..i64::from(d) {
                    for k in 0..i64::from(d) {
                        let c = verify_group_like(d, i, j, k).map_err(|e| e.to_string())?;
                        ensure(c.is_one(), || format!("d = {d}: ψ({i},{j},{k}) = {c}"))?;
                    }
                }
            }
            let FusingExample::GroupLike { values, .. } =
                cft_fusing_examples(d, WhichExample::GroupLike, PREC).map_err(|e| e.to_string())?
            else {
                return Err("wrong example kind".into());
            };
            ensure(values.iter().all(|v| v.value.close_to(&one_r, SCALAR_TOL)), || format!("d = {d}: CFT ψ ≠ 1"))?;
        }
        for d in [4u32, 6, 8, 10] {
            let s: i64 = if (d - 2) / 2 % 2 == 0 { 1 } else { -1 };
            let lg = verify_sign(d).map_err(|e| e.to_string())?;
            ensure(lg == Cyclo::from_int(d, s), || format!("d = {d}: LG sign {lg}"))?;
            let FusingExample::Sign { value, .. } =
                cft_fusing_examples(d, WhichExample::Sign, PREC).map_err(|e| e.to_string())?
            else {
                return Err("wrong example kind".into());
            };
            ensure(value.close_to(&Real::from_i64(s, PREC), SCALAR_TOL), || format!("d = {d}: CFT sign {value:?}"))?;
        }
        Ok("495 group-like triples; signs −1, +1, −1, +1 on both sides".into())
    });
}

#[test]
fn criterion_05_identity_defect_spectrum() {
    report(5, "Hom(I,I) has dimension d−1 and charges {2i/d}", || {
        for d in 3..=10u32 {
            let p0 = GradedMbf::p_s(d, &[0]).map_err(|e| e.to_string())?;
            let h = hom_space(&p0, &p0, None).map_err(|e| e.to_string())?;
            let want: Vec<Rat> = (0..i64::from(d) - 1).map(|i| rat(2 * i, i64::from(d))).collect();
            ensure(h.dim() == d as usize - 1, || format!("d = {d}: dim {}", h.dim()))?;
            ensure(h.charge_multiset() == want, || format!("d = {d}: charges differ"))?;
            let chiral = defect_spectrum(d, 0, 0, true).map_err(|e| e.to_string())?;
            ensure(chiral.pairs.len() == d as usize - 1, || format!("d = {d}: CFT count {}", chiral.pairs.len()))?;
        }
        Ok("d = 3…10".into())
    });
}

#[test]
fn criterion_06_monoidal_coherence() {
    report(6, "pentagon, triangle, unit isomorphisms and homotopies, d ≤ 5", || {
        let t = Instant::now();
        let mut n = 0;
        for d in 3..=5u32 {
            for c in monoidal_suite(d, CUTOFF) {
                ensure(c.pass, || format!("d = {d}: {} {:?}", c.name, c.detail))?;
                n += 1;
            }
        }
        let took = t.elapsed();
        ensure(took < MONOIDAL_LIMIT, || format!("took {took:.2?}"))?;
        Ok(format!("{n} checks, cutoff {CUTOFF}"))
    });
}

#[test]
fn criterion_07_many_variable_units() {
    report(7, "unit objects for x²+y², x³+y³, x³+y³+z³ and the N=2 display", || {
        let t = Instant::now();
        let xyz = ["x", "y", "z"];
        for (w, n, rank) in [("x^2 + y^2", 2usize, (2, 2)), ("x^3 + y^3", 2, (2, 2)), ("x^3 + y^3 + z^3", 3, (4, 4))] {
            let names = VarNames::new(xyz[..n].to_vec());
            let unit = unit_object(&names.parse(w, 1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(unit.validate(0) == Ok(Verdict::Exact), || format!("{w} does not validate"))?;
            ensure(unit.rank() == rank, || format!("{w}: rank {:?}", unit.rank()))?;
        }
        let names = VarNames::new(["x", "y"]);
        let unit = unit_object(&names.parse("x^2 + y^2", 1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let v = VarNames::slots(2, 2);
        let entry = |i, j| unit.diff.get(i, j).as_kernel().and_then(|k| k.as_mul_poly()).map(|p| v.render(&p));
        // d₀ = [[a1+b1, −(a2−b2)], [a2+b2, a1−b1]], d₁ = [[a1−b1, a2−b2], [−(a2+b2), a1+b1]].
        let want = [
            ((2, 0), "a1 + b1"),
            ((2, 1), "-a2 + b2"),
            ((3, 0), "a2 + b2"),
            ((3, 1), "a1 - b1"),
            ((0, 2), "a1 - b1"),
            ((0, 3), "a2 - b2"),
            ((1, 2), "-a2 - b2"),
            ((1, 3), "a1 + b1"),
        ];
        for ((i, j), w) in want {
            ensure(entry(i, j).as_deref() == Some(w), || format!("entry ({i},{j}) = {:?}", entry(i, j)))?;
        }
        let took = t.elapsed();
        ensure(took < UNIT_LIMIT, || format!("took {took:.2?}"))?;
        Ok("three potentials exact; 4×4 display block-for-block".into())
    });
}

#[test]
fn criterion_08_fusion_rules() {
    report(8, "P_S ⊗ P_T against N=2 fusion through the dictionary, d = 4, 5, 6", || {
        let mut rows = 0;
        for d in 4..=6u32 {
            let table = fusion_rule_compare(d, Some(2 * d)).map_err(|e| e.to_string())?;
            if let Some(bad) = table.rows.iter().find(|r| !r.agree) {
                return Err(format!("d = {d}: {:?} ⊗ {:?} gives {:?} vs {:?}", bad.left, bad.right, bad.lg, bad.cft));
            }
            ensure(table.rows.iter().all(|r| r.reduction_verified == Some(true)), || format!("d = {d}: reduction"))?;
            rows += table.rows.len();
        }
        Ok(format!("{rows} ordered pairs agree; every reduction is a deformation retract"))
    });
}

#[test]
fn criterion_09_homotopy_completion() {
    report(9, "remaining fusing equations hold up to homotopy; perturbation is rejected", || {
        for d in [5u32, 7] {
            let (f, h) = verify_fusing_up_to_homotopy(d).map_err(|e| e.to_string())?;
            ensure(h.all_witnessed, || format!("d = {d}: {:?}", h.entries))?;
            let positions = f.homotopy_entries.unwrap_or_default();
            ensure(!positions.is_empty() && positions.iter().all(|p| p.status == HomotopyStatus::Witness), || {
                format!("d = {d}: residual positions not all witnessed")
            })?;
        }
        let mut f = expected_fusing_matrix(5);
        f[0][0] = &f[0][0] + &Cyclo::one(5);
        let h = verify_with(5, &f).map_err(|e| e.to_string())?;
        let row0 = h.entries.iter().find(|e| e.row == 0).map(|e| e.status);
        ensure(row0 == Some(HomotopyStatus::No), || format!("perturbed row 0: {row0:?}"))?;
        Ok("d = 5, 7 witnessed; F̃₀₀+1 gives no".into())
    });
}

fn random_cyclo(rng: &mut ChaCha8Rng, n: u32) -> Cyclo {
    let coeffs: Vec<Rat> = (0..euler_phi(n)).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
    Cyclo::from_coeffs(n, &coeffs)
}

fn random_morphism(rng: &mut ChaCha8Rng, src: &Mbf, tgt: &Mbf, parity: u8) -> Morphism {
    let d = src.conductor();
    let mut m = OpMatrix::zero(&src.space, &tgt.space, d);
    for r in 0..tgt.space.len() {
        for c in 0..src.space.len() {
            if (tgt.space.parity(r) + src.space.parity(c)) % 2 == parity {
                let mono = Mono::var(2, 0, rng.gen_range(0..=3)).mul(&Mono::var(2, 1, rng.gen_range(0..=3)));
                let p = MultiPoly::term(mono, Cyclo::from_int(d, rng.gen_range(-4..=4)));
                m.set(r, c, Operator::mul_poly(Shape::new(2, 1), p));
            }
        }
    }
    Morphism::new(parity, m).expect("parity-respecting matrix")
}

fn subset(d: u32, mask: u32) -> (Vec<i64>, Vec<i64>) {
    (0..i64::from(d)).partition(|i| mask >> i & 1 == 1)
}

fn fuse3(x: MMLabel, y: MMLabel, z: MMLabel, left: bool) -> Vec<MMLabel> {
    let mut out = vec![];
    let (outer, inner) = if left { (mm_fuse(x, y), z) } else { (mm_fuse(y, z), x) };
    for w in outer.expect("same model") {
        out.extend(if left { mm_fuse(w, inner) } else { mm_fuse(inner, w) }.expect("same model"));
    }
    out.sort();
    out
}

#[test]
fn criterion_10_property_suites() {
    report(10, "field axioms, δ² = 0, p_S·p_{S^c} = W, mm_fuse associativity, 6j pentagon", || {
        let t = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..200 {
            let n = rng.gen_range(3..=24);
            let (x, y, z) = (random_cyclo(&mut rng, n), random_cyclo(&mut rng, n), random_cyclo(&mut rng, n));
            ensure(&(&x * &y) * &z == &x * &(&y * &z), || format!("associativity in Q(ζ_{n})"))?;
            ensure(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), || format!("distributivity in Q(ζ_{n})"))?;
            ensure(x.is_zero() || (&x * &x.inv().expect("nonzero")).is_one(), || format!("inverse in Q(ζ_{n})"))?;
        }
        for _ in 0..40 {
            let d = rng.gen_range(3..=6u32);
            let pick = |rng: &mut ChaCha8Rng| {
                let (s, _) = subset(d, rng.gen_range(1..(1u32 << d) - 1));
                p_s_object(d, &s).expect("proper subset")
            };
            let (src, tgt) = (pick(&mut rng), pick(&mut rng));
            let parity = rng.gen_range(0..=1);
            let phi = random_morphism(&mut rng, &src, &tgt, parity);
            let dd = src.delta(&src.delta(&phi, &tgt).map_err(|e| e.to_string())?, &tgt).map_err(|e| e.to_string())?;
            ensure(dd.matrix.is_zero_to(0).is_ok(), || format!("δ² ≠ 0 at d = {d}"))?;
        }
        for d in 2..=8u32 {
            let a = MultiPoly::var(2, d, 0);
            let b = MultiPoly::var(2, d, 1);
            let w = &a.pow(d) - &b.pow(d);
            for mask in 0..(1u32 << d) {
                let (s, c) = subset(d, mask);
                let prod = &p_s(d, &s, 2, 0, 1).map_err(|e| e.to_string())? * &p_s(d, &c, 2, 0, 1).map_err(|e| e.to_string())?;
                ensure(prod == w, || format!("d = {d}, S = {s:?}"))?;
            }
        }
        for d in 3..=5u32 {
            let labels = mm_labels(d);
            for &x in &labels {
                for &y in &labels {
                    for &z in &labels {
                        ensure(fuse3(x, y, z, true) == fuse3(x, y, z, false), || format!("{x}⋆{y}⋆{z} at d = {d}"))?;
                    }
                }
            }
        }
        for _ in 0..500 {
            let d = rng.gen_range(6..=8u32);
            let labels = mm_labels(d);
            let mut pick = || labels[rng.gen_range(0..labels.len())];
            let (x, y, z) = (pick(), pick(), pick());
            ensure(fuse3(x, y, z, true) == fuse3(x, y, z, false), || format!("{x}⋆{y}⋆{z} at d = {d}"))?;
        }
        let mut worst = Real::zero(PREC);
        for k in 1..=3 {
            let r = pentagon_check(k, None, PREC);
            ensure(r.max_residual.to_f64() < SIXJ_PENTAGON_TOL, || format!("k = {k}: residual {:?}", r.max_residual))?;
            if r.max_residual.cmp_value(&worst).is_gt() {
                worst = r.max_residual;
            }
        }
        let took = t.elapsed();
        ensure(took < SUITE_LIMIT, || format!("took {took:.2?}"))?;
        Ok(format!("6j pentagon residual ≤ {:e} for k ≤ 3", worst.to_f64()))
    });
}
