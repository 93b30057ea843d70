use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coxeter_core::cache::TableCache;
use coxeter_core::matgroup::{Flavor, GroupSpec};
use coxeter_core::predict::predict;
use coxeter_core::ring::{Elem, Mode, RingSpec};
use coxeter_core::torus::CoxeterTorus;
use coxeter_core::verify::{load_manifest, run_suite, CaseKey, SuiteReport, Verdict, VerifyOptions};
use coxeter_core::weyl::{sweep, RootDatum, SweepRecord};
use coxeter_core::workbench::Workbench;
use serde_json::json;

#[derive(Parser)]
#[command(name = "coxeter", version, about = "Coxeter-torus characters of GL2 and SL2 over finite local rings")]
struct Cli {
    /// Character table cache directory (overrides COXETER_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable the table cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct RingArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long)]
    r: u32,
    #[arg(long, default_value = "mixed")]
    mode: Mode,
}

impl RingArgs {
    fn spec(&self) -> Result<RingSpec> {
        Ok(RingSpec::new(self.p, self.k, self.r, self.mode)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// One JSON record per character of the Coxeter torus.
    ClassifyTorus {
        #[command(flatten)]
        ring: RingArgs,
        /// Residue index c of the additive character x -> zeta_p^Tr(cx).
        #[arg(long, default_value_t = 1)]
        psi: u32,
    },
    /// One JSON prediction record per torus character.
    Predict {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value = "gl")]
        flavor: Flavor,
    },
    /// Sign conjecture against the classical sign law at level one.
    SweepConjecture {
        /// Root data, e.g. gl2,gl3,sl4,b3,d4.
        #[arg(long, value_delimiter = ',', default_values_t = ["gl2".to_string(), "gl3".to_string(), "gl4".to_string(), "gl5".to_string()])]
        groups: Vec<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 4, 5, 7, 8, 9])]
        q: Vec<u64>,
        /// Only the Coxeter twist instead of every twist class.
        #[arg(long)]
        coxeter_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Run the checks for one case or a manifest; exit code 0 iff nothing fails.
    Verify {
        #[arg(long, conflicts_with_all = ["p", "k", "r", "flavor", "mode"])]
        manifest: Option<PathBuf>,
        #[arg(long, required_unless_present = "manifest")]
        p: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, required_unless_present = "manifest")]
        r: Option<u32>,
        #[arg(long)]
        flavor: Option<Flavor>,
        #[arg(long)]
        mode: Option<Mode>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Largest group for which a character table is computed.
        #[arg(long)]
        table_bound: Option<u64>,
    },
    /// Dump a character table.
    Table {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value = "gl")]
        flavor: Flavor,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn workbench(cli: &Cli) -> Workbench {
    let cache = if cli.no_cache {
        None
    } else {
        cli.cache_dir.clone().map(TableCache::new).or_else(TableCache::from_env)
    };
    Workbench::new(cache)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let wb = workbench(&cli);
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::ClassifyTorus { ring, psi } => {
            let torus = CoxeterTorus::with_psi(ring.spec()?, Elem(psi))?;
            for tc in torus.classify_all()? {
                writeln!(out, "{}", serde_json::to_string(&tc)?)?;
            }
        }
        Command::Predict { ring, flavor } => {
            let spec = ring.spec()?;
            let data = wb.torus(spec)?;
            for tc in &data.classes {
                let p = predict(flavor, tc, data.torus.q(), spec.r)?;
                let c = p.conjecture(spec.p, spec.k)?;
                let rec = json!({
                    "index": tc.index,
                    "theta": tc.theta.exps,
                    "clause": p.clause.tag(),
                    "prediction": p,
                    "conjecture_exponent": c.exponent_string(),
                    "conjecture_sign": c.sign,
                });
                writeln!(out, "{rec}")?;
            }
        }
        Command::SweepConjecture { groups, q, coxeter_only, format } => {
            let data: Vec<RootDatum> = groups.iter().map(|g| g.parse()).collect::<Result<_, _>>()?;
            let mut rows = sweep(&data, &q)?;
            if coxeter_only {
                rows.retain(|r| {
                    let d: RootDatum = r.group.parse().expect("printed datum parses");
                    d.coxeter_element().cycle_type() == r.twist
                });
            }
            write_sweep(&mut out, &rows, format)?;
            let bad = rows.iter().filter(|r| r.verdict != "pass").count();
            out.flush()?;
            eprintln!("{} rows, {} not passing", rows.len(), bad);
            if bad > 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify { manifest, p, k, r, flavor, mode, report, table_bound } => {
            let cases = match manifest {
                Some(path) => load_manifest(&path).with_context(|| format!("reading {}", path.display()))?,
                None => {
                    let (Some(p), Some(r)) = (p, r) else { bail!("--p and --r are required without --manifest") };
                    let flavors = flavor.map_or(vec![Flavor::Gl, Flavor::Sl], |f| vec![f]);
                    let modes = mode.map_or(vec![Mode::Mixed], |m| vec![m]);
                    let mut cases = Vec::new();
                    for &flavor in &flavors {
                        for &mode in &modes {
                            cases.push(CaseKey { p, k: k.unwrap_or(1), r, flavor, mode });
                        }
                    }
                    cases
                }
            };
            let mut opts = VerifyOptions::default();
            if let Some(b) = table_bound {
                opts.table_bound = b;
            }
            let suite = run_suite(&wb, &cases, &opts)?;
            print_suite(&mut out, &suite)?;
            if let Some(path) = report {
                fs::write(&path, serde_json::to_string_pretty(&suite)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            out.flush()?;
            if !suite.passed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Table { ring, flavor, format, output } => {
            let spec = GroupSpec::new(ring.spec()?, flavor);
            let data = wb.group(spec)?;
            let table = wb.table(spec)?;
            let text = match format {
                Format::Tsv => table.to_tsv(&data.classes),
                Format::Json => serde_json::to_string_pretty(&table.to_record(&data.classes))?,
            };
            match output {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn write_sweep(out: &mut impl Write, rows: &[SweepRecord], format: Format) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(rows)?)?,
        Format::Tsv => {
            writeln!(out, "group\ttwist\tq\trk_T\trk_G\tdim\tp_exponent\texponent\tsign\tclassical_sign\tverdict")?;
            for r in rows {
                let sign = r.sign.map_or("-".to_string(), |s| s.to_string());
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.group, r.twist, r.q, r.rk_t, r.rk_g, r.dim, r.p_exponent, r.exponent, sign, r.classical_sign, r.verdict
                )?;
            }
        }
    }
    Ok(())
}

fn print_suite(out: &mut impl Write, suite: &SuiteReport) -> Result<()> {
    for rep in &suite.cases {
        for c in &rep.checks {
            writeln!(out, "{}\t{}\t{}\t{:.3}s", rep.case, c.check_id, c.verdict, c.runtime_s)?;
        }
    }
    let count = |v: Verdict| suite.cases.iter().map(|r| r.count(v)).sum::<usize>();
    writeln!(
        out,
        "summary: {} cases, {} pass, {} fail, {} inapplicable",
        suite.cases.len(),
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Inapplicable)
    )?;
    Ok(())
}
