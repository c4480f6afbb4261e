use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use springer_core::coxeter::{Component, Family};
use springer_core::data::{enumerate_families, row, sweep, DatumFamily, Tag};
use springer_core::kl::DEFAULT_KL_CAP;
use springer_core::report::{analyze, Options, Report, Status, Suite};

#[derive(Parser)]
#[command(name = "springer", version, about = "Relative Weyl groups and weights of induction data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Finite,
    AffineG,
    Dual,
    Weights,
    Afunction,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// List the induction-datum families of a group type.
    List {
        #[arg(long = "type")]
        ty: char,
        #[arg(long)]
        rank: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Full report of one family instance.
    Report {
        /// Family letter a..n, or `torus` (with --type and --rank).
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        t: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long = "type")]
        ty: Option<char>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_KL_CAP)]
        max_order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite over the sweep.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Largest rank of G.
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        /// Largest group order for KL tables.
        #[arg(long, default_value_t = DEFAULT_KL_CAP)]
        max_order: usize,
        /// Restrict to one family letter (or `torus`).
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List { ty, rank, format } => list(ty, rank, format),
        Command::Report {
            family,
            t,
            k,
            n,
            ty,
            rank,
            max_order,
            format,
        } => report(&family, (n, t, k), ty.zip(rank), max_order, format),
        Command::Verify {
            suite,
            max_rank,
            max_order,
            case,
            t,
            k,
            n,
            format,
        } => verify(suite, max_rank, max_order, case.as_deref(), (n, t, k), format),
    }
}

fn list(ty: char, rank: i64, format: Format) -> ExitCode {
    let family = match Family::from_letter(ty) {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    if rank < 1 {
        return usage(format!("rank >= 1 required, got {rank}"));
    }
    let fams = match enumerate_families(Component::finite(family, rank as usize)) {
        Ok(v) => v,
        Err(e) => return usage(e),
    };
    match format {
        Format::Text => {
            for f in fams {
                println!("{f}");
            }
        }
        Format::Json => {
            let names: Vec<String> = fams.iter().map(|f| f.to_string()).collect();
            println!("{}", serde_json::to_string_pretty(&names).expect("strings serialize"));
        }
    }
    ExitCode::SUCCESS
}

fn report(
    family: &str,
    (n, t, k): (u32, u32, u32),
    torus: Option<(char, usize)>,
    max_order: usize,
    format: Format,
) -> ExitCode {
    let tag = match Tag::parse(family) {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    let datum = if tag == Tag::Torus {
        let Some((ty, rank)) = torus else {
            return usage("torus needs --type and --rank");
        };
        match Family::from_letter(ty) {
            Ok(f) => DatumFamily::torus(Component::finite(f, rank)),
            Err(e) => return usage(e),
        }
    } else {
        DatumFamily::new(tag, n, t, k)
    };
    let r = match row(&datum) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let opts = Options {
        kl_cap: max_order,
        ..Options::default()
    };
    let rep = Report::from(&analyze(&r, &opts));
    match format {
        Format::Text => print!("{}", rep.to_text()),
        Format::Json => println!("{}", rep.to_json()),
    }
    ExitCode::SUCCESS
}

fn verify(
    suite: SuiteArg,
    max_rank: usize,
    max_order: usize,
    case: Option<&str>,
    (n, t, k): (Option<u32>, Option<u32>, Option<u32>),
    format: Format,
) -> ExitCode {
    let suites: BTreeSet<Suite> = match suite {
        SuiteArg::Finite => [Suite::Finite].into(),
        SuiteArg::AffineG => [Suite::AffineG].into(),
        SuiteArg::Dual => [Suite::Dual].into(),
        SuiteArg::Weights => [Suite::Weights].into(),
        SuiteArg::Afunction => [Suite::Afunction].into(),
        SuiteArg::All => Suite::ALL.into_iter().collect(),
    };
    let tag = match case.map(Tag::parse).transpose() {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    let opts = Options {
        suites,
        kl_cap: max_order,
    };
    let cases: Vec<DatumFamily> = sweep(max_rank)
        .into_iter()
        .filter(|f| tag.map_or(true, |t| f.tag == t))
        .filter(|f| n.map_or(true, |v| f.n == v) && t.map_or(true, |v| f.t == v) && k.map_or(true, |v| f.k == v))
        .collect();
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    let mut json = Vec::new();
    for f in cases {
        let r = match row(&f) {
            Ok(r) => r,
            Err(e) => {
                println!("FAIL {f}: {e}");
                fail += 1;
                continue;
            }
        };
        let rep = analyze(&r, &opts);
        for c in &rep.checks {
            match c.status {
                Status::Pass => pass += 1,
                Status::Fail => fail += 1,
                Status::Skip => skip += 1,
            }
            if let Format::Text = format {
                println!("{} {} | {} {}: {}", c.status, rep.case, c.suite.name(), c.name, c.detail);
            }
        }
        json.push(Report::from(&rep));
    }
    match format {
        Format::Text => println!("summary: {pass} passed, {fail} failed, {skip} skipped"),
        Format::Json => println!(
            "{}",
            serde_json::json!({ "passed": pass, "failed": fail, "skipped": skip, "reports": json })
        ),
    }
    if fail == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
