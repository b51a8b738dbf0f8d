//! The `lensbound` command line.
//!
//! Exit status: `0` when a query was answered (whatever the verdict), `1`
//! for invalid input, `2` when an internal invariant or oracle check fails.
//! Errors are reported on one line as `error[<kind>]: <reason>`.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::farey::{bfs_minimal_path, minimal_path};
use crate::filling::{embeds_s4_pair, embeds_s4_sum, lisca_qhb_filling, punctured_verdict, sum_qhb_filling};
use crate::homology::{h1_of_surgery, smith_normal_form, IntMatrix};
use crate::plot::farey_path_svg;
use crate::rational::{ConnectedSum, LensSpace};
use crate::surgery::{
    fickle_certificate, fs_conjecture_coefficient, plumbing_certificate, slice_surgery_certificate,
    stein_contractible_verdict, Ambient, Certificate, PlusMinus,
};
use crate::sweep::{run_sweep, Execution, SweepKind};
use crate::tight::{
    count_tight_formula, enumerate_tight, is_universally_tight, menke_candidate_union, mixed_vertices_with,
    parse_signs, signs_to_string, universally_tight_count, Orderings, TightStructure,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lensbound",
    version,
    about = "Exact decision procedures for lens spaces, Farey geodesics and surgery homology",
    allow_negative_numbers = true
)]
pub struct Cli {
    /// Emit canonical JSON (exact values rendered as strings).
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the tight contact structures on L(p,q).
    Tight { lens: LensSpace },
    /// Minimal counterclockwise Farey path from -p/q to 0.
    Path {
        lens: LensSpace,
        /// Check the greedy path against the breadth-first oracle.
        #[arg(long)]
        verify_bfs: bool,
    },
    /// Mixed vertices and meridional-slope candidates of a sign assignment.
    Menke {
        lens: LensSpace,
        /// Signs on the interior edges, e.g. "+-".
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
        /// Consider every ordering of the signs within each block.
        #[arg(long)]
        all_orderings: bool,
    },
    /// Lisca's criterion for a rational homology ball filling of (L(p,q), xi_std).
    Lisca { lens: LensSpace },
    /// Rational ball fillings of L(p,q) # L(p,p-q).
    SumQhb {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Whether L1 # L2 embeds smoothly in S^4.
    EmbedS4 { first: LensSpace, second: LensSpace },
    /// Whether a sum "p1,q1#p2,q2#..." is Y # -Y and so embeds in R^4.
    Donald {
        sum: ConnectedSum,
        /// Drop the requirement that every p is odd.
        #[arg(long)]
        allow_even: bool,
    },
    /// Whether the punctured L(p,q) embeds in R^4.
    Punctured { lens: LensSpace },
    /// First homology of the surgery on a framed link with this linking matrix.
    H1(MatrixInput),
    /// Smith normal form U*M*V = D.
    Snf(MatrixInput),
    /// Conditional certificates for surgeries bounding (rationally) acyclic manifolds.
    #[command(subcommand)]
    Cert(CertCommand),
    /// Run a check over all coprime (p,q) with 2 <= p <= pmax.
    Sweep {
        kind: SweepKind,
        #[arg(long)]
        pmax: i64,
        #[arg(long, env = "LENSBOUND_JOBS", default_value_t = 1)]
        jobs: usize,
    },
    /// Draw the minimal Farey path of L(p,q) as SVG.
    PlotPath {
        lens: LensSpace,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct MatrixInput {
    /// Matrix file (first line n, then n rows); standard input when omitted.
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CertCommand {
    /// 1/m surgery on a knot slice in a contractible manifold.
    Slice {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// 1/(s +- 1) surgery via a slice curve on a genus one surface.
    Fickle {
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, allow_hyphen_values = true)]
        sign: PlusMinus,
        #[arg(long)]
        ambient: Ambient,
    },
    /// 1/(m_i +- 1) surgeries on a plumbing of twisted ribbons.
    Plumbing {
        #[arg(long, allow_hyphen_values = true)]
        m1: i64,
        #[arg(long, allow_hyphen_values = true)]
        m2: i64,
        #[arg(long, allow_hyphen_values = true)]
        sign: PlusMinus,
        #[arg(long)]
        ambient: Ambient,
    },
    /// Contact (1 + 1/m) surgery on a regular Lagrangian slice knot.
    Stein {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// The family 1/(k(s +- 1)).
    Fs {
        #[arg(long)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, allow_hyphen_values = true)]
        sign: PlusMinus,
    },
}

/// A failed command: exit status plus a one-line reason.
struct Failure {
    code: i32,
    kind: &'static str,
    reason: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::InvalidInput(_) => (EXIT_INPUT, "invalid-input"),
            Error::InfiniteNeighborSet(_) => (EXIT_INPUT, "infinite-neighbor-set"),
            Error::InvariantViolation(_) => (EXIT_INVARIANT, "invariant-violation"),
        };
        Failure {
            code,
            kind,
            reason: match &e {
                Error::InfiniteNeighborSet(_) => e.to_string(),
                _ => e.reason().to_string(),
            },
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            kind: "io",
            reason: e.to_string(),
        }
    }
}

/// Canonical JSON: object keys sorted, compact, no floats.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("serialisable");
    serde_json::to_string(&v).expect("serialisable")
}

struct Io<'a> {
    stdin: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    json: bool,
}

impl Io<'_> {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> std::io::Result<()> {
        if self.json {
            writeln!(self.out, "{}", canonical_json(value))
        } else {
            writeln!(self.out, "{}", text())
        }
    }
}

/// Runs the CLI with process stdio and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdin = std::io::stdin();
    let mut stdin = stdin.lock();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(argv, &mut stdin, &mut out, &mut err)
}

pub fn run_with<I, T>(argv: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let reason = e.to_string();
            let first = reason.lines().next().unwrap_or("bad arguments");
            let first = first.trim_start_matches("error: ");
            let _ = writeln!(err, "error[invalid-input]: {first}");
            return EXIT_INPUT;
        }
    };
    let mut io = Io {
        stdin,
        out,
        err,
        json: cli.json,
    };
    match execute(cli.command, &mut io) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(io.err, "error[{}]: {}", f.kind, f.reason);
            f.code
        }
    }
}

fn read_matrix(input: &MatrixInput, stdin: &mut dyn BufRead) -> std::result::Result<IntMatrix, Failure> {
    Ok(match &input.matrix {
        Some(path) => IntMatrix::read_from(BufReader::new(File::open(path)?))?,
        None => IntMatrix::read_from(stdin)?,
    })
}

fn matrix_json(m: &IntMatrix) -> Value {
    let n = m.dim();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| Value::String(m[(i, j)].to_string())).collect()))
            .collect(),
    )
}

fn execute(command: Command, io: &mut Io<'_>) -> std::result::Result<(), Failure> {
    match command {
        Command::Tight { lens } => tight(&lens, io)?,
        Command::Path { lens, verify_bfs } => path(&lens, verify_bfs, io)?,
        Command::Menke {
            lens,
            signs,
            all_orderings,
        } => menke(&lens, &signs, all_orderings, io)?,
        Command::Lisca { lens } => {
            let v = lisca_qhb_filling(&lens)?;
            io.emit(&v, || format!("lisca L({lens}): {v}"))?;
        }
        Command::SumQhb { p, q } => {
            let v = sum_qhb_filling(p, q)?;
            io.emit(&v, || {
                let mut text = format!("sum-qhb L({p},{q}) # L({p},{}): {}", p - q.rem_euclid(p), v.answer);
                for s in &v.derivation {
                    text.push_str(&format!("\n  - {}", s.text));
                }
                text
            })?;
        }
        Command::EmbedS4 { first, second } => {
            let v = embeds_s4_pair(&first, &second)?;
            io.emit(&v, || format!("embed-s4 L({first}) # L({second}): {v}"))?;
        }
        Command::Donald { sum, allow_even } => {
            let v = embeds_s4_sum(&sum, !allow_even);
            io.emit(&v, || format!("donald {sum}: {v}"))?;
        }
        Command::Punctured { lens } => {
            let v = punctured_verdict(&lens);
            io.emit(&v, || format!("punctured L({lens}): {}", v.answer))?;
        }
        Command::H1(input) => {
            let m = read_matrix(&input, io.stdin)?;
            let g = h1_of_surgery(&m)?;
            let det = m.determinant();
            let value = json!({
                "determinant": det.to_string(),
                "group": g,
                "homology_sphere": det.abs() == 1.into(),
            });
            io.emit(&value, || format!("H1 = {g}, det = {det}"))?;
        }
        Command::Snf(input) => {
            let m = read_matrix(&input, io.stdin)?;
            let snf = smith_normal_form(&m);
            if !snf.verify(&m) {
                return Err(Error::InvariantViolation("U*M*V != D".into()).into());
            }
            let diag = snf.diagonal();
            let factors: Vec<String> = diag
                .iter()
                .filter(|d| !d.is_zero_or_one())
                .map(ToString::to_string)
                .collect();
            let det = m.determinant();
            let value = json!({
                "d": matrix_json(&snf.d),
                "determinant_abs": det.abs().to_string(),
                "diagonal": diag.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "invariant_factors": factors,
                "u": matrix_json(&snf.u),
                "v": matrix_json(&snf.v),
            });
            io.emit(&value, || {
                let d: Vec<String> = diag.iter().map(ToString::to_string).collect();
                format!(
                    "diagonal [{}], invariant factors [{}], |det| = {}",
                    d.join(", "),
                    factors.join(", "),
                    det.abs()
                )
            })?;
        }
        Command::Cert(cmd) => cert(cmd, io)?,
        Command::Sweep { kind, pmax, jobs } => {
            if jobs == 0 {
                return Err(Error::InvalidInput("jobs must be at least 1".into()).into());
            }
            let start = Instant::now();
            let report = run_sweep(kind, pmax, Execution::with_jobs(jobs))?;
            let elapsed = start.elapsed();
            io.emit(&report, || report.to_string())?;
            writeln!(
                io.err,
                "sweep {kind}: {:.3}s wall time, {jobs} jobs",
                elapsed.as_secs_f64()
            )?;
            if let Some(c) = report.counterexamples.first() {
                return Err(Failure {
                    code: EXIT_INVARIANT,
                    kind: "invariant-violation",
                    reason: format!("sweep {kind} failed at (p,q) = ({},{}): {}", c.p, c.q, c.detail),
                });
            }
        }
        Command::PlotPath { lens, out } => {
            let path = minimal_path(&lens)?;
            std::fs::write(&out, farey_path_svg(&format!("L({lens})"), &path))?;
            let value = json!({ "out": out.display().to_string(), "path": path });
            io.emit(&value, || {
                format!("wrote {} ({} edges)", out.display(), path.edge_count())
            })?;
        }
    }
    Ok(())
}

trait ZeroOrOne {
    fn is_zero_or_one(&self) -> bool;
}

impl ZeroOrOne for num_bigint::BigInt {
    fn is_zero_or_one(&self) -> bool {
        use num_traits::{One, Zero};
        self.is_zero() || self.is_one()
    }
}

fn tight(lens: &LensSpace, io: &mut Io<'_>) -> std::result::Result<(), Failure> {
    let all = enumerate_tight(lens)?;
    let formula = count_tight_formula(lens)?;
    if all.len() as u64 != formula {
        return Err(Error::InvariantViolation(format!(
            "L({lens}): enumerated {} structures, formula gives {formula}",
            all.len()
        ))
        .into());
    }
    let oriented = universally_tight_count(&all, true);
    let unoriented = universally_tight_count(&all, false);
    let value = json!({
        "count": all.len().to_string(),
        "formula": formula.to_string(),
        "neg_cf": lens.neg_cf()?.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "p": lens.p().to_string(),
        "q": lens.q().to_string(),
        "structures": all,
        "universally_tight": oriented.to_string(),
        "universally_tight_unoriented": unoriented.to_string(),
    });
    io.emit(&value, || {
        let mut text = format!(
            "L({lens}): {} tight structures, {oriented} universally tight ({unoriented} up to orientation)",
            all.len()
        );
        for (i, t) in all.iter().enumerate() {
            text.push_str(&format!("\n  #{i} {t}"));
        }
        text
    })?;
    Ok(())
}

fn path(lens: &LensSpace, verify_bfs: bool, io: &mut Io<'_>) -> std::result::Result<(), Failure> {
    let greedy = minimal_path(lens)?;
    if verify_bfs {
        let oracle = bfs_minimal_path(lens)?;
        if oracle != greedy {
            return Err(
                Error::InvariantViolation(format!("L({lens}): greedy path differs from the BFS oracle")).into(),
            );
        }
    }
    let value = json!({
        "bfs_verified": verify_bfs,
        "edges": greedy.edge_count().to_string(),
        "p": lens.p().to_string(),
        "path": greedy,
        "q": lens.q().to_string(),
    });
    io.emit(&value, || {
        let v: Vec<String> = greedy.vertices().iter().map(ToString::to_string).collect();
        format!("L({lens}): [{}] ({} edges)", v.join(", "), greedy.edge_count())
    })?;
    Ok(())
}

fn menke(lens: &LensSpace, signs: &str, all_orderings: bool, io: &mut Io<'_>) -> std::result::Result<(), Failure> {
    let t = TightStructure::from_signs(lens, &parse_signs(signs)?)?;
    let orderings = if all_orderings {
        Orderings::All
    } else {
        Orderings::Canonical
    };
    let candidates = menke_candidate_union(&t, orderings)?;
    let mixed: Vec<Value> = mixed_vertices_with(&t, orderings)
        .iter()
        .map(|v| {
            json!({
                "candidates": candidates[&v.index],
                "index": v.index.to_string(),
                "r1": v.r1,
                "r2": v.r2,
                "r3": v.r3,
            })
        })
        .collect();
    let value = json!({
        "mixed": mixed,
        "p": lens.p().to_string(),
        "q": lens.q().to_string(),
        "signs": signs_to_string(t.signs()),
        "universally_tight": is_universally_tight(&t),
    });
    io.emit(&value, || {
        let mut text = format!("{t}");
        for v in mixed_vertices_with(&t, orderings) {
            let c: Vec<String> = candidates[&v.index].iter().map(ToString::to_string).collect();
            text.push_str(&format!(
                "\n  mixed at r2 = {} (r1 = {}, r3 = {}): candidates [{}]",
                v.r2,
                v.r1,
                v.r3,
                c.join(", ")
            ));
        }
        text
    })?;
    Ok(())
}

fn cert(cmd: CertCommand, io: &mut Io<'_>) -> std::result::Result<(), Failure> {
    let certs: Vec<Certificate> = match cmd {
        CertCommand::Slice { m } => vec![slice_surgery_certificate(m)?],
        CertCommand::Fickle { s, sign, ambient } => vec![fickle_certificate(s, sign, ambient)?],
        CertCommand::Plumbing { m1, m2, sign, ambient } => {
            let (a, b) = plumbing_certificate(m1, m2, sign, ambient)?;
            vec![a, b]
        }
        CertCommand::Stein { m } => vec![stein_contractible_verdict(m)?],
        CertCommand::Fs { k, s, sign } => vec![fs_conjecture_coefficient(k, s, sign)?],
    };
    if let Some(bad) = certs.iter().find(|c| !c.homology_check) {
        return Err(Error::InvariantViolation(format!(
            "certificate {} does not present a homology sphere",
            bad.coefficient
        ))
        .into());
    }
    for c in &certs {
        io.emit(c, || c.to_string())?;
    }
    Ok(())
}
