//! `blockweights`: run the verification suites and write reports.

mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use blockweights::isometry::PartialMap;
use blockweights::liedata::{self, load_catalog, NamedUnipotent};
use blockweights::report::Report;

use suites::DEFAULT_QS;

#[derive(Parser, Debug)]
#[command(name = "blockweights", version, about = "Exact checks for 2-blocks with elementary abelian defect group of order 8")]
struct Cli {
    /// JSON-lines unipotent degree catalog; entries replace built-in ones with the same key.
    #[arg(long, global = true, value_name = "FILE")]
    data: Option<PathBuf>,
    /// Directory for `<suite>.json` and `<suite>.txt`.
    #[arg(long, global = true, value_name = "DIR")]
    report_dir: Option<PathBuf>,
    /// Print the structured report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character tables, L0 lattices and basis shapes of the four local groups.
    LocalGroups {
        #[arg(long)]
        show_tables: bool,
    },
    /// Landrock's (k, l) table and its inverse.
    Landrock,
    /// Support sizes of norm-8 vectors.
    Norm8 {
        #[arg(long, default_value_t = 8)]
        max_support: usize,
    },
    /// Minimum 2-defects of unipotent characters of classical groups.
    ClassicalDefects {
        #[arg(long, default_value_t = 8)]
        lmax: u32,
        #[arg(long, value_delimiter = ',', value_parser = odd_q, default_values_t = DEFAULT_QS)]
        qset: Vec<i64>,
        /// Also print every scanned character.
        #[arg(long)]
        full: bool,
    },
    /// The identity c + h+ + h- - 2 rank over reduced symbols.
    SymbolIdentity {
        #[arg(long, default_value_t = 8)]
        rankmax: u32,
        #[arg(long, default_value_t = 10)]
        sizemax: usize,
    },
    /// Rows of the E6 and 2E6 small-defect tables.
    TablesE6 {
        /// Evaluation points; by default the two smallest admissible per row.
        #[arg(long, value_delimiter = ',', value_parser = odd_q)]
        q: Vec<i64>,
        /// Print each row beside its recomputed product.
        #[arg(long)]
        audit: bool,
    },
    /// Defects of the exceptional characters with stated degrees.
    Named {
        #[arg(long, value_delimiter = ',', value_parser = odd_q, default_values_t = [3, 5, 7, 9])]
        q: Vec<i64>,
    },
    /// Isolated centralizers of F4.
    F4 {
        #[arg(long, value_delimiter = ',', value_parser = odd_q, default_values_t = [3, 5, 7])]
        q: Vec<i64>,
    },
    /// The E8 degree comparison.
    E8 {
        #[arg(long, value_delimiter = ',', value_parser = odd_q)]
        q: Vec<i64>,
    },
    /// Primitive prime divisors of q^n - 1.
    Zsigmondy {
        #[arg(long, value_delimiter = ',', value_parser = odd_q, default_values_t = [3, 5, 7, 9])]
        q: Vec<i64>,
        #[arg(long, default_value_t = 20)]
        nmax: u32,
        #[arg(long, default_value_t = 60)]
        dmax: u32,
    },
    /// Sylow 2-subgroups of SL2, PGL2 and PSL2.
    Sylow {
        #[arg(long, value_delimiter = ',', value_parser = odd_q, default_values_t = DEFAULT_QS)]
        q: Vec<i64>,
    },
    /// Extension of a partial isometry of a local L0 to a perfect isometry.
    Isometry {
        #[arg(long = "case", value_delimiter = ',', default_values_t = [3, 7, 21])]
        cases: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Partial::Identity)]
        partial: Partial,
    },
    /// Every suite.
    All {
        /// Smaller scan caps.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Partial {
    Identity,
    Negation,
    Rotate,
}

impl From<Partial> for PartialMap {
    fn from(p: Partial) -> Self {
        match p {
            Partial::Identity => PartialMap::Identity,
            Partial::Negation => PartialMap::Negation,
            Partial::Rotate => PartialMap::RotateNorm4,
        }
    }
}

fn odd_q(s: &str) -> Result<i64, String> {
    let q: i64 = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    if q < 3 || q % 2 == 0 {
        return Err(format!("q must be odd and at least 3, got {q}"));
    }
    Ok(q)
}

fn catalog(path: Option<&Path>) -> Result<Vec<NamedUnipotent>> {
    let mut entries = liedata::catalog();
    if let Some(path) = path {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        for extra in load_catalog(&text).with_context(|| format!("parsing {}", path.display()))? {
            match entries.iter_mut().find(|e| e.key() == extra.key()) {
                Some(slot) => *slot = extra,
                None => entries.push(extra),
            }
        }
    }
    Ok(entries)
}

fn run_all(quick: bool, catalog: &[NamedUnipotent]) -> Result<Report> {
    let (lmax, class_qs, nmax): (u32, &[i64], u32) = if quick { (6, &[3, 5, 7, 9], 12) } else { (8, &DEFAULT_QS, 20) };
    let jobs: Vec<Box<dyn Fn() -> Result<Report> + Send + Sync + '_>> = vec![
        Box::new(|| suites::local(false)),
        Box::new(suites::landrock),
        Box::new(|| suites::norm8(8)),
        Box::new(|| suites::symbol_identity(8, 10)),
        Box::new(move || suites::classical(lmax, class_qs)),
        Box::new(|| suites::named(&[3, 5, 7, 9], catalog)),
        Box::new(|| suites::tables(None, catalog)),
        Box::new(|| suites::f4(&[3, 5, 7], catalog)),
        Box::new(|| suites::e8(&suites::e8_defaults())),
        Box::new(move || suites::zsigmondy(&[3, 5, 7, 9], nmax, 60)),
        Box::new(|| suites::sylow(&DEFAULT_QS)),
        Box::new(|| suites::isometry(&[3, 7, 21], PartialMap::Identity)),
    ];
    let reports: Vec<Report> = jobs.par_iter().map(|job| job()).collect::<Result<_>>()?;
    let mut all = Report::new("all");
    for mut r in reports {
        for c in &mut r.checks {
            c.id = format!("{}/{}", r.suite, c.id);
        }
        all.absorb(r);
    }
    Ok(all)
}

fn run(cli: &Cli) -> Result<(Report, Vec<String>)> {
    let catalog = catalog(cli.data.as_deref())?;
    let mut extra = Vec::new();
    let report = match &cli.command {
        Command::LocalGroups { show_tables } => suites::local(*show_tables)?,
        Command::Landrock => suites::landrock()?,
        Command::Norm8 { max_support } => suites::norm8(*max_support)?,
        Command::ClassicalDefects { lmax, qset, full } => {
            if *full {
                extra = suites::classical_records(*lmax, qset)?;
            }
            suites::classical(*lmax, qset)?
        }
        Command::SymbolIdentity { rankmax, sizemax } => suites::symbol_identity(*rankmax, *sizemax)?,
        Command::TablesE6 { q, audit } => {
            if *audit {
                extra = suites::table_audit()?
                    .into_iter()
                    .map(|a| {
                        let mark = if a.matches_printed { "=" } else { "!" };
                        format!("{mark} {:<10} printed {}  recomputed {}", a.row, a.printed, a.recomputed)
                    })
                    .collect();
            }
            suites::tables((!q.is_empty()).then_some(q.as_slice()), &catalog)?
        }
        Command::Named { q } => suites::named(q, &catalog)?,
        Command::F4 { q } => suites::f4(q, &catalog)?,
        Command::E8 { q } => {
            let qs = if q.is_empty() { suites::e8_defaults() } else { q.clone() };
            suites::e8(&qs)?
        }
        Command::Zsigmondy { q, nmax, dmax } => suites::zsigmondy(q, *nmax, *dmax)?,
        Command::Sylow { q } => suites::sylow(q)?,
        Command::Isometry { cases, partial } => suites::isometry(cases, (*partial).into())?,
        Command::All { quick } => run_all(*quick, &catalog)?,
    };
    Ok((report, extra))
}

fn write_reports(dir: &Path, report: &Report, json: &serde_json::Value) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let base = dir.join(&report.suite);
    fs::write(base.with_extension("json"), serde_json::to_string_pretty(json)? + "\n")?;
    fs::write(base.with_extension("txt"), report.to_text())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let (report, extra) = match run(&cli) {
        Ok(out) => out,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(1);
        }
    };
    let json = report.to_json(Some(start.elapsed()));
    for line in &extra {
        println!("{line}");
    }
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&json).expect("report serializes"));
    } else {
        print!("{}", report.to_text());
    }
    if let Some(dir) = &cli.report_dir {
        if let Err(err) = write_reports(dir, &report, &json) {
            eprintln!("error: {err:#}");
            return ExitCode::from(1);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
