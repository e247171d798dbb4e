//! Command-line front end for `hflens-core`: correction terms of lens spaces,
//! the Alexander polynomial table of lens space surgeries, surgery invariants
//! and definite lattice bounds.
//!
//! Every subcommand builds a [`report::Report`]; text output is rendered from
//! it and `--json` serializes it. Exit status is 0 on success, 2 on invalid
//! input and 3 when the computation finds an obstruction.

pub mod gram;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hflens_core::alexpoly::torus_knot_poly;
use hflens_core::lattice::{check_bounding_qsphere, max_char_square, thom_circle_bundle_check, thom_genus_bound};
use hflens_core::lens::{d_vector_for, DCache};
use hflens_core::surgery::{
    casson_of_surgery, is_obstructed, lens_table, not_zero_surgery_check, surgery_descriptor, SurgeryScreen,
    ZeroSurgeryVerdict,
};
use hflens_core::{LensSpec, Rational, SurgerySign, SymLaurentPoly};

use report::*;

/// Environment variable holding the worker count for parallel commands.
/// Unset or `0` means the available parallelism.
pub const THREADS_ENV: &str = "HFLENS_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_OBSTRUCTED: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hflens_core::Error),
    #[error("gram file: {0}")]
    Gram(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "hflens", version, about = "Correction terms, lens space surgeries and definite lattices")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    /// d(L(p,q), i)
    Plus,
    /// d(-L(p,q), i)
    Minus,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Correction terms of a lens space, in label order.
    Dlens {
        p: u64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        /// A single Spin^c label instead of the whole vector.
        #[arg(allow_negative_numbers = true)]
        i: Option<i64>,
        #[arg(long, value_enum, default_value = "minus")]
        orientation: OrientationArg,
    },
    /// Alexander polynomials of knots with L(p,q) as a +p (or -p) surgery.
    Family {
        p: u64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
        sign: SurgerySign,
        /// Also list the accepted identifications (c, h) with their torsion.
        #[arg(long)]
        show_correspondences: bool,
    },
    /// The displayed table of non-empty families for p <= pmax.
    Table {
        #[arg(long, default_value_t = 26)]
        pmax: u64,
    },
    /// Can L(p,q) be a ±p surgery on a knot in S^3?
    Obstruct {
        p: u64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Knot Alexander polynomials.
    Knot {
        #[command(subcommand)]
        kind: KnotKind,
    },
    /// Invariants of ±1/n surgery on a knot with non-negative torsion coefficients.
    Surgery {
        /// Symmetric coefficients a0,a1,...
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Surgery coefficient +1/n or -1/n.
        #[arg(long, allow_hyphen_values = true)]
        coef: String,
    },
    /// Check a negative-definite Gram matrix against max c1^2 + rank <= R, with R = 4d.
    Lattice {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        bound: Rational,
    },
    /// Maximal characteristic square of a negative-definite Gram matrix.
    Elkies { file: PathBuf },
    /// Minimal genus of a degree m curve in CP^2 allowed by the correction-term bound.
    Thom { m: u64 },
    /// Is a homology S^1 x S^2 with these d_-1/2, d_1/2 zero surgery on a knot in S^3?
    Notknot {
        #[arg(allow_hyphen_values = true)]
        d_minus: Rational,
        #[arg(allow_hyphen_values = true)]
        d_plus: Rational,
    },
}

#[derive(Subcommand, Debug)]
pub enum KnotKind {
    /// The (p,q) torus knot.
    Torus { p: u64, q: u64 },
}

fn parse_sign(s: &str) -> Result<SurgerySign, String> {
    match s {
        "+" | "plus" => Ok(SurgerySign::Plus),
        "-" | "minus" => Ok(SurgerySign::Minus),
        _ => Err(format!("expected + or -, got '{s}'")),
    }
}

/// `±1/n` or `±1`; a missing sign means `+`.
pub fn parse_coef(s: &str) -> Result<(SurgerySign, u64), CliError> {
    let bad = || CliError::Usage(format!("surgery coefficient must be +1/n or -1/n, got '{s}'"));
    let (sign, rest) = match s.as_bytes().first() {
        Some(b'-') => (SurgerySign::Minus, &s[1..]),
        Some(b'+') => (SurgerySign::Plus, &s[1..]),
        _ => (SurgerySign::Plus, s),
    };
    let n = match rest.split_once('/') {
        Some(("1", n)) => n.parse::<u64>().map_err(|_| bad())?,
        None if rest == "1" => 1,
        _ => return Err(bad()),
    };
    if n == 0 {
        return Err(bad());
    }
    Ok((sign, n))
}

/// Worker count from [`THREADS_ENV`].
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(n) => Ok(Some(n)),
            Err(_) => Err(CliError::Usage(format!("{THREADS_ENV} must be a non-negative integer, got '{v}'"))),
        },
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

pub fn table_report(pmax: u64, threads: Option<usize>) -> Result<TableReport, CliError> {
    if pmax < 2 {
        return Err(CliError::Usage(format!("--pmax must be at least 2, got {pmax}")));
    }
    let entries = with_threads(threads, || lens_table(pmax))?;
    Ok(TableReport {
        pmax,
        entries: entries.into_iter().map(|e| TableRow { p: e.p, q: e.q, family: family_list(&e.family) }).collect(),
    })
}

pub fn dlens_report(p: u64, q: i64, i: Option<i64>, orientation: OrientationArg) -> Result<DLensReport, CliError> {
    let lens = LensSpec::new(p, q)?;
    let v = d_vector_for(lens, &mut DCache::new());
    let values = match orientation {
        OrientationArg::Minus => v.values.clone(),
        OrientationArg::Plus => v.reversed(),
    };
    let values = match i {
        Some(i) => vec![values[lens.label(i) as usize].to_string()],
        None => values.iter().map(rat_text).collect(),
    };
    let orientation = match orientation {
        OrientationArg::Plus => "plus",
        OrientationArg::Minus => "minus",
    };
    Ok(DLensReport { p, q: lens.q(), orientation: orientation.into(), i, values })
}

pub fn family_report(p: u64, q: i64, sign: SurgerySign, show: bool) -> Result<FamilyReport, CliError> {
    let lens = LensSpec::new(p, q)?;
    let target = match sign {
        SurgerySign::Plus => lens,
        SurgerySign::Minus => lens.mirror(),
    };
    let (accepted, _) = SurgeryScreen::new(target, &mut DCache::new()).candidates();
    let family: std::collections::BTreeSet<SymLaurentPoly> = accepted.iter().map(|c| c.poly.clone()).collect();
    let correspondences = show.then(|| {
        accepted
            .iter()
            .map(|c| CorrespondenceReport {
                c: c.correspondence.c.value(),
                h: c.correspondence.h.value(),
                torsion: c.torsion.values().to_vec(),
                poly: c.poly.coeffs().to_vec(),
            })
            .collect()
    });
    Ok(FamilyReport { p, q: lens.q(), sign: sign.to_string(), family: family_list(&family), correspondences })
}

pub fn obstruct_report(p: u64, q: i64) -> Result<ObstructReport, CliError> {
    let v = is_obstructed(p, q)?;
    Ok(ObstructReport {
        p,
        q: v.lens.q(),
        obstructed: !v.knot_in_s3_possible,
        fintushel_stern: v.fintushel_stern_possible,
        plus_family: family_list(&v.plus_family),
        minus_family: family_list(&v.minus_family),
        reasons: v.notes,
    })
}

pub fn knot_report(p: u64, q: u64) -> Result<KnotReport, CliError> {
    let poly = torus_knot_poly(p, q)?;
    Ok(KnotReport {
        p,
        q,
        poly: poly.coeffs().to_vec(),
        torsion: poly.torsion_coeffs().values().to_vec(),
        casson_delta: poly.casson_delta(),
    })
}

pub fn surgery_report(poly: &str, coef: &str) -> Result<SurgeryReport, CliError> {
    let poly: SymLaurentPoly = poly.parse()?;
    let (sign, n) = parse_coef(coef)?;
    casson_of_surgery(&poly, n, sign)?;
    let d = surgery_descriptor(&poly, n, sign)?;
    Ok(SurgeryReport {
        poly: poly.coeffs().to_vec(),
        sign: sign.to_string(),
        n,
        d: rat_text(&d.d),
        hfred_rank: d.hfred_rank,
        chi_red: d.chi_red,
        casson: d.casson,
    })
}

pub fn elkies_report(lattice: &hflens_core::IntLattice) -> Result<LatticeReport, CliError> {
    let r = max_char_square(lattice)?;
    let diagonalizable = r.unimodular && r.diagonal_consistent;
    Ok(LatticeReport {
        rank: r.rank,
        max_char_square: r.max_char_square,
        gap: r.gap,
        witness: r.witness,
        unimodular: r.unimodular,
        diagonalizable,
        verdict: if diagonalizable { "diagonalizable" } else { "not-diagonalizable" }.into(),
        bound: None,
    })
}

pub fn lattice_report(lattice: &hflens_core::IntLattice, four_d: &Rational) -> Result<LatticeReport, CliError> {
    let mut report = elkies_report(lattice)?;
    let v = check_bounding_qsphere(lattice, four_d)?;
    report.verdict = if v.obstructed() {
        "obstructed"
    } else if v.sharp {
        "sharp"
    } else {
        "consistent"
    }
    .into();
    report.bound = Some(BoundReport {
        lhs: rat_text(&v.lhs),
        rhs: rat_text(&v.rhs),
        consistent: v.consistent,
        sharp: v.sharp,
        complete: v.complete,
        note: v.note,
    });
    Ok(report)
}

pub fn thom_report(m: u64) -> Result<ThomReport, CliError> {
    if m == 0 {
        return Err(CliError::Usage("degree must be at least 1".into()));
    }
    let check = if m >= 3 {
        let c = thom_circle_bundle_check(m)?;
        Some(ThomCheckReport {
            n: c.n,
            genus: c.genus,
            d_bottom: rat_text(&c.d_bottom),
            contradiction: c.verdict.obstructed(),
            note: c.verdict.note,
        })
    } else {
        None
    };
    Ok(ThomReport { m, genus_bound: thom_genus_bound(m), check })
}

pub fn notknot_report(d_minus: &Rational, d_plus: &Rational) -> Result<NotKnotReport, CliError> {
    let (obstructed, reasons) = match not_zero_surgery_check(d_minus, d_plus)? {
        ZeroSurgeryVerdict::Obstructed(why) => (true, vec![why]),
        ZeroSurgeryVerdict::NoObstruction => (false, Vec::new()),
    };
    Ok(NotKnotReport { d_minus_half: rat_text(d_minus), d_plus_half: rat_text(d_plus), obstructed, reasons })
}

fn execute(command: Command) -> Result<(Report, bool), CliError> {
    Ok(match command {
        Command::Dlens { p, q, i, orientation } => (Report::DLens(dlens_report(p, q, i, orientation)?), false),
        Command::Family { p, q, sign, show_correspondences } => {
            (Report::Family(family_report(p, q, sign, show_correspondences)?), false)
        }
        Command::Table { pmax } => (Report::Table(table_report(pmax, threads_from_env()?)?), false),
        Command::Obstruct { p, q } => {
            let r = obstruct_report(p, q)?;
            let obstructed = r.obstructed;
            (Report::Obstruct(r), obstructed)
        }
        Command::Knot { kind: KnotKind::Torus { p, q } } => (Report::Knot(knot_report(p, q)?), false),
        Command::Surgery { poly, coef } => (Report::Surgery(surgery_report(&poly, &coef)?), false),
        Command::Lattice { file, bound } => {
            let r = lattice_report(&gram::read_gram(&file)?, &bound)?;
            let obstructed = r.verdict == "obstructed";
            (Report::Lattice(r), obstructed)
        }
        Command::Elkies { file } => (Report::Lattice(elkies_report(&gram::read_gram(&file)?)?), false),
        Command::Thom { m } => (Report::Thom(thom_report(m)?), false),
        Command::Notknot { d_minus, d_plus } => {
            let r = notknot_report(&d_minus, &d_plus)?;
            let obstructed = r.obstructed;
            (Report::NotKnot(r), obstructed)
        }
    })
}

/// Result of one invocation: exit status and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli.command) {
        Ok((report, obstructed)) => Outcome {
            code: if obstructed { EXIT_OBSTRUCTED } else { EXIT_OK },
            stdout: if cli.json { report.to_json() } else { report.render() },
            stderr: String::new(),
        },
        Err(e) => Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
