//! `maxdeg`: command-line front end. Every subcommand writes to stdout or
//! `--output`, as JSON (default) or CSV. Output schemas are listed by
//! `maxdeg schema` and versioned in `schema.json`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use maxdeg::bounds::{self, MaxDegreeBounds};
use maxdeg::constants::solve_class_constants;
use maxdeg::sampler::{self, experiment, ExperimentConfig, Sampler};
use maxdeg::spectrum::{self, DegreeTable, Spectrum};
use maxdeg::{verify, GraphClass, Scalar};

const SCHEMA: &str = include_str!("../schema.json");

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "maxdeg", version, about = "Degree statistics, constants, bounds and samplers for random outerplanar and series-parallel graphs")]
#[command(after_help = "Classes: 2conn-outerplanar, conn-outerplanar, 2conn-sp, conn-sp.\n\
Set MAXDEG_CACHE_DIR to cache sampler coefficient tables between runs.\n\
Output schemas: `maxdeg schema`.")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout (a directory for `experiment`).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Exact numbers of labelled graphs. Rows: n, count (decimal string).
    Counts { class: GraphClass, nmax: usize },
    /// Singularity constants, q and c. JSON object: class, x0, q, c,
    /// auxiliaries, residuals, precise (decimal strings). CSV: name,value.
    Constants {
        class: GraphClass,
        /// Digits of the decimal strings in `precise`.
        #[arg(long, default_value_t = 30)]
        digits: usize,
    },
    /// Degree law d_{n,k} and pair law d_{n,k,l}. Rows: n, k, l (empty for
    /// single-vertex rows), d (exact `p/q`, or decimal with --float), d_float.
    Degrees {
        class: GraphClass,
        n: usize,
        /// Largest degree reported; clamped to n-1. Default: n-1.
        kmax: Option<usize>,
        /// Use scaled floating point (fast for large n; no pairs).
        #[arg(long)]
        float: bool,
    },
    /// Degree tails. Rows: k, tail = P(deg > k), tail_float, limit_tail
    /// (sum of the limiting law above k), n_tail = n * tail_float.
    Tails {
        class: GraphClass,
        n: usize,
        kmax: Option<usize>,
        #[arg(long)]
        float: bool,
    },
    /// Moment bounds on P(max degree > k) and on E(max degree). Rows: n, k,
    /// lower, upper, lower_float, upper_float. JSON adds `expectation`.
    Bounds {
        class: GraphClass,
        n: usize,
        #[arg(long)]
        float: bool,
    },
    /// Uniform random graphs. JSON: array of {index, n, max_degree, edges
    /// (1-indexed pairs)}. CSV: index,u,v.
    Sample {
        class: GraphClass,
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Maximum-degree experiment over a grid of sizes. With --output DIR,
    /// writes samples.csv, summary.csv, records.json and plot.dat
    /// (n, mean, std_err, c*ln n). Stdout: summary plus fitted slope.
    Experiment {
        class: GraphClass,
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: all cores). Results do not depend on it.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Generating functions against exhaustive enumeration: level 1 (n <= 5),
    /// 2 (n <= 6) or 3 (adds n = 7, slow). Exits nonzero on any mismatch.
    Verify { level: u8 },
    /// Prints the machine-readable output schema.
    Schema,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn sink(output: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match output {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(w: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, v)?;
    writeln!(w)?;
    Ok(())
}

fn csv_rows(w: &mut dyn Write, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for r in rows {
        out.write_record(r)?;
    }
    out.flush()?;
    Ok(())
}

fn check_size(class: GraphClass, n: usize) -> Result<()> {
    if n < class.min_size() {
        bail!("{class} needs n >= {}", class.min_size());
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    if let Cmd::Experiment { .. } = cli.cmd {
        return experiment_cmd(cli);
    }
    let mut w = sink(cli.output.as_deref())?;
    let w = &mut *w;
    let ok = match &cli.cmd {
        Cmd::Counts { class, nmax } => {
            check_size(*class, *nmax)?;
            let spec = Spectrum::exact(*class, *nmax, 1, None)?;
            let rows = (class.min_size()..=*nmax)
                .map(|n| Ok((n, spec.count(n)?.to_string())))
                .collect::<Result<Vec<_>>>()?;
            match cli.format {
                Format::Json => write_json(w, &json!(rows.iter().map(|(n, c)| json!({"n": n, "count": c})).collect::<Vec<_>>()))?,
                Format::Csv => csv_rows(w, &["n", "count"], rows.into_iter().map(|(n, c)| vec![n.to_string(), c]))?,
            }
            true
        }
        Cmd::Constants { class, digits } => {
            let r = solve_class_constants(*class, *digits)?;
            match cli.format {
                Format::Json => write_json(w, &serde_json::to_value(&r)?)?,
                Format::Csv => {
                    let mut rows = vec![
                        vec!["x0".to_string(), r.x0.to_string()],
                        vec!["q".to_string(), r.q.to_string()],
                        vec!["c".to_string(), r.c.to_string()],
                    ];
                    rows.extend(r.auxiliaries.iter().map(|(k, v)| vec![k.clone(), v.to_string()]));
                    csv_rows(w, &["name", "value"], rows)?;
                }
            }
            true
        }
        Cmd::Degrees { class, n, kmax, float } => {
            check_size(*class, *n)?;
            let k = kmax.unwrap_or(n - 1).min(n - 1);
            if *float {
                let t = Spectrum::float(*class, *n, k, None)?.table(*n, k)?;
                emit_table(w, cli.format, &t)?;
            } else {
                emit_table(w, cli.format, &spectrum::degree_table(*class, *n, k)?)?;
            }
            true
        }
        Cmd::Tails { class, n, kmax, float } => {
            check_size(*class, *n)?;
            let k = kmax.unwrap_or(n - 1).min(n - 1);
            // long range so the stored tail sums are not truncated
            let limit = spectrum::limit_distribution(*class, (k + 1).max(400))?;
            let rows: Vec<(usize, String, f64)> = if *float {
                let t = Spectrum::float(*class, *n, k, None)?.table(*n, k)?;
                (0..=k).map(|j| bounds::tail(&t, j).map(|v| (j, v.to_string(), v))).collect::<Result<_, _>>()?
            } else {
                let t = Spectrum::exact(*class, *n, k, None)?.table(*n, k)?;
                (0..=k).map(|j| bounds::tail(&t, j).map(|v| (j, v.to_string(), v.to_f64()))).collect::<Result<_, _>>()?
            };
            let nf = *n as f64;
            match cli.format {
                Format::Json => write_json(
                    w,
                    &json!(rows
                        .iter()
                        .map(|(j, s, f)| json!({"k": j, "tail": s, "tail_float": f, "limit_tail": limit.tail(*j), "n_tail": nf * f}))
                        .collect::<Vec<_>>()),
                )?,
                Format::Csv => csv_rows(
                    w,
                    &["k", "tail", "tail_float", "limit_tail", "n_tail"],
                    rows.iter().map(|(j, s, f)| {
                        vec![j.to_string(), s.clone(), f.to_string(), limit.tail(*j).to_string(), (nf * f).to_string()]
                    }),
                )?,
            }
            true
        }
        Cmd::Bounds { class, n, float } => {
            check_size(*class, *n)?;
            if *float {
                emit_bounds(w, cli.format, &bounds::max_degree_bounds_float(*class, *n)?)?;
            } else {
                emit_bounds(w, cli.format, &bounds::max_degree_bounds(*class, *n)?)?;
            }
            true
        }
        Cmd::Sample { class, n, count, seed } => {
            check_size(*class, *n)?;
            let s = Sampler::float(*class, *n, sampler::cache_dir_from_env().as_deref())?;
            let graphs = (0..*count)
                .map(|i| s.sample(*n, &mut experiment::sample_rng(*seed, *n, i)))
                .collect::<Result<Vec<_>, _>>()?;
            match cli.format {
                Format::Json => write_json(
                    w,
                    &json!(graphs
                        .iter()
                        .enumerate()
                        .map(|(i, g)| json!({
                            "index": i,
                            "n": g.vertex_count(),
                            "max_degree": g.max_degree(),
                            "edges": g.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect::<Vec<_>>(),
                        }))
                        .collect::<Vec<_>>()),
                )?,
                Format::Csv => csv_rows(
                    w,
                    &["index", "u", "v"],
                    graphs.iter().enumerate().flat_map(|(i, g)| {
                        g.edges().into_iter().map(move |(u, v)| vec![i.to_string(), (u + 1).to_string(), (v + 1).to_string()])
                    }),
                )?,
            }
            true
        }
        Cmd::Verify { level } => {
            let checks = verify::verify_level(*level)?;
            let ok = checks.iter().all(verify::Check::passed);
            match cli.format {
                Format::Json => write_json(w, &json!({"level": level, "passed": ok, "checks": checks}))?,
                Format::Csv => csv_rows(
                    w,
                    &["class", "n", "count", "passed", "mismatches"],
                    checks.iter().map(|c| {
                        vec![
                            c.class.to_string(),
                            c.n.to_string(),
                            c.count.to_string(),
                            c.passed().to_string(),
                            c.mismatches.join("; "),
                        ]
                    }),
                )?,
            }
            if !ok {
                eprintln!("verification failed");
            }
            ok
        }
        Cmd::Schema => {
            w.write_all(SCHEMA.as_bytes())?;
            true
        }
        Cmd::Experiment { .. } => unreachable!("handled above"),
    };
    w.flush()?;
    Ok(ok)
}

fn emit_table<T: Scalar>(w: &mut dyn Write, format: Format, t: &DegreeTable<T>) -> Result<()> {
    match format {
        Format::Json => write_json(w, &t.to_json()),
        Format::Csv => Ok(t.write_csv(w)?),
    }
}

fn emit_bounds<T: Scalar>(w: &mut dyn Write, format: Format, b: &MaxDegreeBounds<T>) -> Result<()> {
    match format {
        Format::Json => {
            let rows: Vec<_> = (0..=b.kmax)
                .map(|k| {
                    let (l, u) = b.at(k);
                    json!({"k": k, "lower": l.to_string(), "upper": u.to_string(), "lower_float": l.to_f64(), "upper_float": u.to_f64()})
                })
                .collect();
            let expectation = b.expectation.as_ref().map(|(l, u)| {
                json!({"lower": l.to_string(), "upper": u.to_string(), "lower_float": l.to_f64(), "upper_float": u.to_f64()})
            });
            write_json(w, &json!({"class": b.class, "n": b.n, "bounds": rows, "expectation": expectation}))
        }
        Format::Csv => Ok(b.write_csv(w, None)?),
    }
}

fn experiment_cmd(cli: &Cli) -> Result<bool> {
    let Cmd::Experiment { class, sizes, samples, seed, workers } = &cli.cmd else {
        unreachable!()
    };
    for &n in sizes {
        check_size(*class, n)?;
    }
    if *samples == 0 {
        bail!("--samples must be positive");
    }
    let cfg = ExperimentConfig {
        class: *class,
        sizes: sizes.clone(),
        samples: *samples,
        seed: *seed,
        workers: *workers,
        cache_dir: sampler::cache_dir_from_env(),
    };
    let records = sampler::max_degree_experiment(&cfg)?;
    let c = maxdeg::constants::solve_constants::<f64>(*class)?.c;
    let (slope, intercept) = if records.len() >= 2 { sampler::fit_slope(&records) } else { (f64::NAN, f64::NAN) };
    if let Some(dir) = &cli.output {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        experiment::write_samples_csv(&records, fs::File::create(dir.join("samples.csv"))?)?;
        experiment::write_summary_csv(&records, fs::File::create(dir.join("summary.csv"))?)?;
        experiment::write_plot_data(&records, c, fs::File::create(dir.join("plot.dat"))?)?;
        serde_json::to_writer_pretty(fs::File::create(dir.join("records.json"))?, &records)?;
    }
    let mut w = io::BufWriter::new(io::stdout().lock());
    match cli.format {
        Format::Json => {
            let summary: Vec<_> = records
                .iter()
                .map(|r| json!({"n": r.n, "samples": r.samples, "mean": r.mean, "std_err": r.std_err}))
                .collect();
            let slope = slope.is_finite().then_some(slope);
            let intercept = intercept.is_finite().then_some(intercept);
            write_json(&mut w, &json!({"class": class, "seed": seed, "c": c, "slope": slope, "intercept": intercept, "summary": summary}))?;
        }
        Format::Csv => experiment::write_summary_csv(&records, &mut w)?,
    }
    w.flush()?;
    Ok(true)
}
