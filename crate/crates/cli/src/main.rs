use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mbf_cft::examples::{cft_fusing_examples, WhichExample};
use mbf_cft::su2::{Spin, Su2Level};
use mbf_cft::{defect_spectrum, pentagon_check, FusingExample, DEFAULT_PRECISION};
use mbf_cli::compare::{fusion_rule_compare, ratio_compare, spectrum_compare};
use mbf_cli::report::{Check, Report};
use mbf_cli::sets::parse_set;
use mbf_cli::suite::monoidal_suite;
use mbf_core::exactalg::rat::rat_to_string;
use mbf_core::exactalg::Rat;
use mbf_core::fusion::{
    decompose_into_ps, junction_morphisms, reduce_tensor, solve_fusing_2x2, verify_fusing_up_to_homotopy, PsObject,
};
use mbf_core::graded::{hom_space, GradedMbf};

/// Exact matrix bi-factorisation calculus for x^d and its comparison with
/// N=2 minimal model fusion data.
#[derive(Parser)]
#[command(name = "mbf", version)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coherence suites.
    #[command(subcommand)]
    Verify(Verify),
    /// The 2×2 fusing matrix of P{0,1} from the four determined entries.
    Fusing {
        #[arg(long)]
        d: u32,
        /// Also check the remaining equations up to homotopy.
        #[arg(long)]
        verify_homotopy: bool,
        /// Degree cutoff for the junction-map checks.
        #[arg(long, default_value_t = 30)]
        cutoff: u32,
    },
    /// Charge-graded morphisms P_S → P_T.
    Hom {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// A single charge `p/q`.
        #[arg(long, conflicts_with = "all")]
        charge: Option<String>,
        /// Every charge in the admissible window (the default).
        #[arg(long)]
        all: bool,
    },
    /// Reduce P_S ⊗ P_T to finite rank and split it into P summands.
    Fuse {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Degree cutoff for the deformation-retract checks.
        #[arg(long, default_value_t = 30)]
        cutoff: u32,
    },
    /// Numeric CFT data.
    #[command(subcommand)]
    Cft(Cft),
    /// Landau-Ginzburg against CFT.
    #[command(subcommand)]
    Compare(Compare),
}

#[derive(Subcommand)]
enum Verify {
    /// Pentagon, triangle, unit isomorphisms and homotopies on P_S samples.
    Monoidal {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 30)]
        cutoff: u32,
    },
}

#[derive(Args)]
struct Precision {
    /// Binary precision of numeric values.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    GroupLike,
    Sign,
    TwoByTwo,
}

#[derive(Subcommand)]
enum Cft {
    /// `{a b e; d c f}` at level k, labels as doubled spins; without
    /// `--labels`, the whole admissible table as CSV.
    Sixj {
        #[arg(long)]
        k: u32,
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<u32>>,
        #[command(flatten)]
        precision: Precision,
    },
    /// Max residual of the su(2)_k pentagon equations.
    Pentagon {
        #[arg(long)]
        k: u32,
        /// Restrict outer labels to this list.
        #[arg(long, value_delimiter = ',')]
        sample: Option<Vec<u32>>,
        #[command(flatten)]
        precision: Precision,
    },
    /// The group-like, sign and 2×2 fusing examples of the N=2 model.
    Fusing {
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = Example::TwoByTwo)]
        example: Example,
        #[command(flatten)]
        precision: Precision,
    },
    /// Fields changing D[0,2n,0] into D[u,2n+u,0].
    Spectrum {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        u: u32,
        #[arg(long, default_value_t = 0)]
        n: i64,
        #[arg(long)]
        chiral: bool,
    },
}

#[derive(Args)]
struct Range {
    #[arg(long, conflicts_with_all = ["d_min", "d_max"])]
    d: Option<u32>,
    #[arg(long, requires = "d_max")]
    d_min: Option<u32>,
    #[arg(long, requires = "d_min")]
    d_max: Option<u32>,
}

impl Range {
    fn values(&self) -> Result<Vec<u32>, String> {
        match (self.d, self.d_min, self.d_max) {
            (Some(d), _, _) => Ok(vec![d]),
            (None, Some(lo), Some(hi)) if lo <= hi => Ok((lo..=hi).collect()),
            _ => Err("give --d or --d-min ≤ --d-max".into()),
        }
    }
}

#[derive(Subcommand)]
enum Compare {
    /// Gauge-invariant ratio F₀₀F₂₂/(F₀₂F₂₀) on both sides.
    Ratio {
        #[command(flatten)]
        range: Range,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        precision: Precision,
    },
    /// Charges of Hom(P{0}, P{0..u}) against chiral defect fields.
    Spectrum {
        #[command(flatten)]
        range: Range,
        /// A single u; all 0 ≤ u ≤ d−2 when absent.
        #[arg(long)]
        u: Option<u32>,
    },
    /// Decomposition of P_S ⊗ P_T against minimal model fusion.
    Fusion {
        #[command(flatten)]
        range: Range,
        /// Also verify each reduction to this degree.
        #[arg(long)]
        cutoff: Option<u32>,
    },
}

/// Input the harness cannot act on; exits with status 2.
struct Usage(String);

enum Output {
    Report(Report),
    /// Tables without a verdict, e.g. CSV.
    Text(String),
}

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn run(cmd: Command) -> Result<Output, Usage> {
    Ok(Output::Report(match cmd {
        Command::Verify(Verify::Monoidal { d, cutoff }) => {
            if d < 2 {
                return Err(Usage("d must be at least 2".into()));
            }
            let mut r = Report::new("verify monoidal").param("d", d).param("cutoff", cutoff);
            for c in monoidal_suite(d, cutoff) {
                r.check(Check::from(&c));
            }
            r
        }
        Command::Fusing { d, verify_homotopy, cutoff } => {
            let mut r = Report::new("fusing").param("d", d).param("cutoff", cutoff).param("verify_homotopy", verify_homotopy);
            for j in junction_morphisms(d)?.check(cutoff) {
                r.check(Check::new(format!("junction {}", j.name), j.pass, j.detail.clone()));
            }
            let report = if verify_homotopy {
                let (f, h) = verify_fusing_up_to_homotopy(d)?;
                for e in &h.entries {
                    r.check(Check::new(format!("row {} up to homotopy", e.row), e.status == mbf_core::fusion::HomotopyStatus::Witness, None));
                }
                f
            } else {
                solve_fusing_2x2(d)?
            };
            r.check(Check::new("matches closed form", report.matches_closed_form, None));
            r.result(report)
        }
        Command::Hom { d, source, target, charge, all: _ } => {
            let (s, t) = (parse_set(&source, d)?, parse_set(&target, d)?);
            let q: Option<Rat> = charge.as_deref().map(parse_rat).transpose()?;
            let (src, tgt) = (GradedMbf::p_s(d, &s)?, GradedMbf::p_s(d, &t)?);
            let basis = hom_space(&src, &tgt, q.as_ref())?;
            let names = (PsObject::new(d, &s)?.name(), PsObject::new(d, &t)?.name());
            Report::new("hom")
                .param("d", d)
                .param("source", &s)
                .param("target", &t)
                .param("charge", q.as_ref().map(rat_to_string))
                .result(basis.report(&names.0, &names.1))
        }
        Command::Fuse { d, left, right, cutoff } => {
            let (s, t) = (PsObject::new(d, &parse_set(&left, d)?)?, PsObject::new(d, &parse_set(&right, d)?)?);
            let reduced = reduce_tensor(&s, &t)?;
            let mut r = Report::new("fuse").param("d", d).param("left", &s.set).param("right", &t.set).param("cutoff", cutoff);
            for c in reduced.verify(cutoff).checks {
                r.check(Check::from(&c));
            }
            let dec = decompose_into_ps(&reduced.reduced.base)?;
            #[derive(serde::Serialize)]
            struct Fused {
                display: String,
                decomposition: mbf_core::fusion::Decomposition,
            }
            r.result(Fused { display: dec.to_string(), decomposition: dec })
        }
        Command::Cft(c) => return run_cft(c),
        Command::Compare(c) => run_compare(c)?,
    }))
}

fn parse_rat(text: &str) -> Result<Rat, Usage> {
    let bad = || Usage(format!("cannot parse {text:?} as p/q"));
    let (p, q) = text.split_once('/').unwrap_or((text, "1"));
    let (p, q): (i64, i64) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
    if q == 0 {
        return Err(bad());
    }
    Ok(Rat::new(p.into(), q.into()))
}

fn run_cft(c: Cft) -> Result<Output, Usage> {
    Ok(Output::Report(match c {
        Cft::Sixj { k, labels: Some(l), precision: Precision { precision } } => {
            let l: [u32; 6] = l.try_into().map_err(|l: Vec<u32>| Usage(format!("--labels takes six values, got {}", l.len())))?;
            let v = Su2Level::new(k, precision).sixj(l.map(Spin));
            Report::new("cft sixj").param("k", k).param("precision", precision).result(v)
        }
        Cft::Sixj { k, labels: None, precision: Precision { precision } } => {
            let level = Su2Level::new(k, precision);
            let mut csv = String::from("a,b,e,d,c,f,value\n");
            let top = k;
            for code in 0..(top + 1).pow(6) {
                let s: [u32; 6] = std::array::from_fn(|i| code / (top + 1).pow(i as u32) % (top + 1));
                let v = level.sixj(s.map(Spin));
                if v.admissible {
                    let cells: Vec<String> = s.iter().map(u32::to_string).collect();
                    csv.push_str(&format!("{},{}\n", cells.join(","), v.value.to_decimal(mbf_cft::decimal_digits(precision))));
                }
            }
            return Ok(Output::Text(csv));
        }
        Cft::Pentagon { k, sample, precision: Precision { precision } } => {
            if k > 10 {
                return Err(Usage(format!("pentagon sweeps are limited to k ≤ 10, got {k}")));
            }
            let p = pentagon_check(k, sample.as_deref(), precision);
            let mut r = Report::new("cft pentagon").param("k", k).param("precision", precision).param("sample", &sample);
            let tol = 2f64.powi(-(precision as i32) / 2);
            r.check(Check::new(format!("max residual ≤ {tol:e}"), p.max_residual.to_f64() <= tol, None));
            r.check(Check::new("unit equations exact", p.unit_residual.is_zero(), None));
            r.result(p)
        }
        Cft::Fusing { d, example, precision: Precision { precision } } => {
            let which = match example {
                Example::GroupLike => WhichExample::GroupLike,
                Example::Sign => WhichExample::Sign,
                Example::TwoByTwo => WhichExample::TwoByTwo,
            };
            let ex = cft_fusing_examples(d, which, precision)?;
            let mut r = Report::new("cft fusing").param("d", d).param("precision", precision).param("example", which);
            let tol = 1e-10;
            let one = mbf_core::exactalg::Real::from_i64(1, precision);
            match &ex {
                FusingExample::GroupLike { values, .. } => {
                    r.check(Check::new("ψ = 1 for every triple", values.iter().all(|v| v.value.close_to(&one, tol)), None))
                }
                FusingExample::Sign { value, expected, .. } => r.check(Check::new(
                    "sign = (−1)^{(d−2)/2}",
                    value.close_to(&mbf_core::exactalg::Real::from_i64(i64::from(*expected), precision), tol),
                    None,
                )),
                FusingExample::TwoByTwo { max_deviation, .. } => {
                    r.check(Check::new("matches closed form within 1e-10", max_deviation.to_f64() <= tol, None))
                }
            }
            r.result(ex)
        }
        Cft::Spectrum { d, u, n, chiral } => {
            let sp = defect_spectrum(d, u, n, chiral)?;
            #[derive(serde::Serialize)]
            struct Spectrum {
                count: usize,
                charges: Option<Vec<String>>,
                spectrum: mbf_cft::DefectSpectrum,
            }
            let charges = chiral.then(|| sp.charges().iter().map(rat_to_string).collect());
            Report::new("cft spectrum")
                .param("d", d)
                .param("u", u)
                .param("n", n)
                .param("chiral", chiral)
                .result(Spectrum { count: sp.pairs.len(), charges, spectrum: sp })
        }
    }))
}

fn run_compare(c: Compare) -> Result<Report, Usage> {
    Ok(match c {
        Compare::Ratio { range, tol, precision: Precision { precision } } => {
            let mut r = Report::new("compare ratio").param("tol", tol).param("precision", precision);
            let mut rows = vec![];
            for d in range.values()? {
                let row = ratio_compare(d, tol, precision)?;
                r.check(Check::new(format!("d = {d}"), row.pass, Some(format!("deviation {:e}", row.deviation))));
                rows.push(row);
            }
            r.param("d", range.values()?).result(rows)
        }
        Compare::Spectrum { range, u } => {
            let mut r = Report::new("compare spectrum").param("u", u);
            let mut rows = vec![];
            for d in range.values()? {
                let us: Vec<u32> = match u {
                    Some(u) => vec![u],
                    None => (0..=d.saturating_sub(2)).collect(),
                };
                for u in us {
                    let row = spectrum_compare(d, u)?;
                    r.check(Check::new(format!("d = {d}, u = {u}"), row.pass, None));
                    rows.push(row);
                }
            }
            r.param("d", range.values()?).result(rows)
        }
        Compare::Fusion { range, cutoff } => {
            let mut r = Report::new("compare fusion").param("cutoff", cutoff);
            let mut tables = vec![];
            for d in range.values()? {
                let t = fusion_rule_compare(d, cutoff)?;
                for row in t.rows.iter().filter(|row| !row.agree) {
                    r.check(Check::new(format!("d = {d}: {:?} ⊗ {:?}", row.left, row.right), false, None));
                }
                r.check(Check::new(format!("d = {d}: {} pairs agree", t.rows.len()), t.pass, None));
                tables.push(t);
            }
            r.param("d", range.values()?).result(tables)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, pass) = match run(cli.command) {
        Ok(Output::Report(r)) => (format!("{}\n", r.to_json()), r.pass),
        Ok(Output::Text(t)) => (t, true),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            // A closed pipe (`mbf … | head`) is not an error of the computation.
            if let Err(e) = std::io::stdout().lock().write_all(text.as_bytes()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
