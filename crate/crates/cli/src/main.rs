use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fqlab::distlab::sumprod;
use fqlab::simplex::{self, CensusMode, Filters};
use fqlab::{FieldSpec, Fq};
use fqlab_cli::config::{ExperimentConfig, ModeChoice};
use fqlab_cli::report::{RecordBuilder, Report, Status};
use fqlab_cli::{io, specifier, suite};
use std::io::Write;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "fqlab",
    about = "Exact finite-field Fourier laboratory: identity and bound verification over F_q^d",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field sizes q = p^l, comma-separated (e.g. 3,5,9,27)
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
    /// Characteristic p (use together with --l instead of --q)
    #[arg(long)]
    p: Option<u64>,
    /// Extension degree l
    #[arg(long)]
    l: Option<u32>,
    /// Dimensions d, comma-separated
    #[arg(long, value_delimiter = ',')]
    d: Vec<u32>,
    /// Numeric mode: exact, float, or auto (exact for q ≤ 31)
    #[arg(long, default_value = "auto")]
    mode: String,
    /// Master seed for every randomized ensemble
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Work cap on enumerated tuples and grids (also the acknowledgment
    /// that larger sweeps are intentional)
    #[arg(long)]
    cap: Option<u64>,
    /// Soft-check constant override, name=value (repeatable):
    /// moment_ratio, proportion, restriction_guard
    #[arg(long = "constant")]
    constants: Vec<String>,
}

impl FieldArgs {
    fn into_config(self) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::default();
        if !self.q.is_empty() {
            cfg.qs = self.q;
        }
        match (self.p, self.l) {
            (Some(p), l) => cfg.pl = Some((p, l.unwrap_or(1))),
            (None, Some(_)) => bail!("--l requires --p"),
            _ => {}
        }
        if !self.d.is_empty() {
            if self.d.iter().any(|&d| d == 0 || d > 16) {
                bail!("--d values must be in 1..=16");
            }
            cfg.ds = self.d;
        }
        cfg.mode = match self.mode.as_str() {
            "exact" => ModeChoice::Exact,
            "float" => ModeChoice::Float,
            "auto" => ModeChoice::Auto,
            other => bail!("unknown mode {other}"),
        };
        cfg.seed = self.seed;
        if let Some(cap) = self.cap {
            cfg.caps.tuples = cap;
            cfg.caps.grid_exact = cap;
            cfg.caps.grid_float = cap;
        }
        for c in &self.constants {
            cfg.set_constant(c)?;
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a check suite and emit one report line per check
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        /// identities, wolff, pinned, slices, kstar, simplex, sumproduct, all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Samples per matrix cell in seeded ensembles
        #[arg(long, default_value_t = 10)]
        samples: u64,
        /// Set specifier override (defaults to per-suite ensembles)
        #[arg(long)]
        set: Option<String>,
        /// Simplex/k-star order
        #[arg(long)]
        k: Option<u32>,
        /// Slice coordinate
        #[arg(long)]
        z: Option<u64>,
        /// Emit CSV instead of JSON lines
        #[arg(long)]
        csv: bool,
    },
    /// Build a point set and write it in the point-set file format
    Construct {
        #[command(flatten)]
        field: FieldArgs,
        /// Set specifier (grid, random:size=..,seed=.., line:auto, subfield,
        /// product:..., sphere:t=.., sphere_subset:..., file:path)
        #[arg(long)]
        set: String,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<String>,
    },
    /// Count congruence classes of (k+1)-point configurations
    Census {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Count raw keys without the nondegeneracy filters
        #[arg(long)]
        raw: bool,
        /// Sample tuples instead of exhausting them
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long)]
        csv: bool,
    },
    /// Sum-product scan: fraction of coefficient tuples with a large
    /// linear sumset
    Scan {
        #[command(flatten)]
        field: FieldArgs,
        /// The set A ⊆ F_q, as a d=1 specifier
        #[arg(long)]
        set: String,
        /// Fixed multiplier z ≠ 0
        #[arg(long, default_value_t = 1)]
        z: u64,
        /// Number of samples when the tuple space exceeds the cap
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long)]
        csv: bool,
    },
}

fn single_field(cfg: &ExperimentConfig) -> Result<FieldSpec> {
    let fields = cfg.fields()?;
    if fields.len() != 1 {
        bail!("this command needs exactly one field (one --q or --p/--l)");
    }
    Ok(fields.into_iter().next().unwrap())
}

fn single_d(cfg: &ExperimentConfig) -> Result<u32> {
    if cfg.ds.len() != 1 {
        bail!("this command needs exactly one --d");
    }
    Ok(cfg.ds[0])
}

fn emit(report: &Report, csv: bool) -> Result<i32> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if csv {
        report.write_csv(&mut lock)?;
    } else {
        report.write_jsonl(&mut lock)?;
    }
    lock.flush()?;
    Ok(report.exit_code())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match cli.command {
        Command::Verify { field, suite: suite_name, samples, set, k, z, csv } => {
            let mut cfg = field.into_config()?;
            cfg.samples = samples;
            cfg.k = k;
            cfg.z = z;
            if let Some(set) = set {
                cfg.set = set;
            }
            let name: suite::SuiteName = suite_name.parse()?;
            let report = suite::run_suite(name, &cfg)?;
            eprintln!(
                "suite {} finished in {:.2?}: {} checks, {} failures",
                suite_name,
                started.elapsed(),
                report.records.len(),
                report.failures()
            );
            emit(&report, csv)?
        }
        Command::Construct { field, set, out } => {
            let cfg = field.into_config()?;
            let f = single_field(&cfg)?;
            let d = single_d(&cfg)?;
            let points = specifier::construct_set(&f, d, &set)?;
            let text = io::render_pointset(&f, &points);
            match out {
                Some(path) => std::fs::write(&path, text).context("writing point-set file")?,
                None => print!("{text}"),
            }
            eprintln!(
                "constructed {} points in F_{}^{} in {:.2?}",
                points.len(),
                f.q(),
                d,
                started.elapsed()
            );
            0
        }
        Command::Census { field, set, k, raw, sample, csv } => {
            let cfg = field.into_config()?;
            let f = single_field(&cfg)?;
            let d = single_d(&cfg)?;
            if k == 0 || k > fqlab::simplex::MAX_K {
                bail!("--k must be in 1..={}", fqlab::simplex::MAX_K);
            }
            let points = specifier::construct_set(&f, d, &set)?;
            let filters = if raw { Filters::RAW } else { Filters::NONDEGENERATE };
            let mode = match sample {
                Some(count) => CensusMode::Sampled { seed: cfg.seed, count },
                None => CensusMode::Exact,
            };
            let census = simplex::simplex_census(&f, &points, k, filters, mode, cfg.caps.tuples)?;
            let b = RecordBuilder {
                suite: "census",
                q: f.q(),
                l: f.l(),
                d,
                set: set.clone(),
                mode: "exact",
                seed: cfg.seed,
            };
            let status = if sample.is_some() { Status::Finding } else { Status::Pass };
            let margin = match sample {
                Some(count) => format!("sampled:{count} (lower bound)"),
                None => "exhaustive".to_string(),
            };
            let rec = b.make(format!("census.k{k}"), "congruence_census", status, census, "", margin);
            let report = Report::new(cfg, vec![rec]);
            eprintln!("census = {census} in {:.2?}", started.elapsed());
            emit(&report, csv)?
        }
        Command::Scan { field, set, z, sample, csv } => {
            let cfg = field.into_config()?;
            let f = single_field(&cfg)?;
            let d = single_d(&cfg)?;
            let a_set = specifier::construct_set(&f, 1, &set)?;
            let elems: Vec<Fq> = a_set.members().into_iter().map(|i| f.element(i)).collect();
            let a = sumprod::fq_set_from(&f, &elems);
            let z = z % f.q(); // reduce into the field
            if z == 0 {
                bail!("--z must be nonzero in F_q");
            }
            let rep = sumprod::sum_product_scan(
                &f,
                &a,
                f.element(z),
                d,
                cfg.caps.tuples,
                sample.map(|n| (cfg.seed, n)),
            )?;
            let b = RecordBuilder {
                suite: "scan",
                q: f.q(),
                l: f.l(),
                d,
                set: set.clone(),
                mode: "exact",
                seed: cfg.seed,
            };
            let frac = fqlab::scalar::rat_to_f64(&rep.fraction);
            let status = if frac >= cfg.constants.proportion { Status::Pass } else { Status::Fail };
            let rec = b.make(
                "scan.fraction",
                "linear_sumset_scan",
                status,
                format!("{}", rep.fraction),
                format!("≥ {}", cfg.constants.proportion),
                format!(
                    "tuples {}{}, min size {}",
                    rep.tuples_tested,
                    if rep.sampled { " (sampled)" } else { "" },
                    rep.min_size
                ),
            );
            let report = Report::new(cfg, vec![rec]);
            eprintln!("scan finished in {:.2?}", started.elapsed());
            emit(&report, csv)?
        }
    };
    std::process::exit(code);
}
