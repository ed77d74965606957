//! Maximum-degree experiments over a grid of sizes.

use std::io::Write;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Result, Sampler};
use crate::class::GraphClass;

/// Generator for sample `index` at size `n`: ChaCha20 keyed by `seed`, on
/// stream `(n << 32) | index`. Results never depend on the worker count.
pub fn sample_rng(seed: u64, n: usize, index: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | (index as u64 & 0xffff_ffff));
    rng
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub class: GraphClass,
    pub sizes: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    /// Worker threads; `None` uses all cores.
    pub workers: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRecord {
    pub class: GraphClass,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub rng: String,
    pub maxdeg: Vec<u32>,
    pub mean: f64,
    pub std_err: f64,
    /// `histogram[k]` samples with maximum degree `k`.
    pub histogram: Vec<u64>,
}

impl ExperimentRecord {
    fn new(cfg: &ExperimentConfig, n: usize, maxdeg: Vec<u32>) -> Self {
        let m = maxdeg.len() as f64;
        let mean = maxdeg.iter().map(|&d| d as f64).sum::<f64>() / m;
        let var = maxdeg.iter().map(|&d| (d as f64 - mean).powi(2)).sum::<f64>() / (m - 1.0).max(1.0);
        let top = maxdeg.iter().copied().max().unwrap_or(0) as usize;
        let mut histogram = vec![0u64; top + 1];
        for &d in &maxdeg {
            histogram[d as usize] += 1;
        }
        ExperimentRecord {
            class: cfg.class,
            n,
            samples: maxdeg.len(),
            seed: cfg.seed,
            rng: "ChaCha20, stream (n << 32) | sample".into(),
            maxdeg,
            mean,
            std_err: (var / m).sqrt(),
            histogram,
        }
    }
}

/// Samples `cfg.samples` graphs for each size and records maximum degrees.
pub fn max_degree_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    let nmax = cfg.sizes.iter().copied().max().unwrap_or(cfg.class.min_size());
    let sampler = Sampler::float(cfg.class, nmax.max(cfg.class.min_size()), cfg.cache_dir.as_deref())?;
    let run = || -> Result<Vec<ExperimentRecord>> {
        cfg.sizes
            .iter()
            .map(|&n| {
                let maxdeg = (0..cfg.samples)
                    .into_par_iter()
                    .map(|i| {
                        let mut rng = sample_rng(cfg.seed, n, i);
                        sampler.sample_raw(n, &mut rng).map(|g| g.max_degree() as u32)
                    })
                    .collect::<Result<Vec<u32>>>()?;
                Ok(ExperimentRecord::new(cfg, n, maxdeg))
            })
            .collect()
    };
    match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    }
}

/// Least-squares `(slope, intercept)` of mean maximum degree against `ln n`.
pub fn fit_slope(records: &[ExperimentRecord]) -> (f64, f64) {
    let pts: Vec<(f64, f64)> = records.iter().map(|r| ((r.n as f64).ln(), r.mean)).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// One CSV row per sample: `class,n,sample,maxdeg`.
pub fn write_samples_csv<W: Write>(records: &[ExperimentRecord], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["class", "n", "sample", "maxdeg"])?;
    for r in records {
        for (i, d) in r.maxdeg.iter().enumerate() {
            out.write_record([r.class.name().to_string(), r.n.to_string(), i.to_string(), d.to_string()])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// One CSV row per size: `class,n,samples,mean,std_err`.
pub fn write_summary_csv<W: Write>(records: &[ExperimentRecord], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["class", "n", "samples", "mean", "std_err"])?;
    for r in records {
        out.write_record([
            r.class.name().to_string(),
            r.n.to_string(),
            r.samples.to_string(),
            r.mean.to_string(),
            r.std_err.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Whitespace-separated columns `n mean std_err c*ln(n)` for gnuplot.
pub fn write_plot_data<W: Write>(records: &[ExperimentRecord], c: f64, mut w: W) -> std::io::Result<()> {
    writeln!(w, "# n mean_maxdeg std_err c_ln_n  (c = {c})")?;
    for r in records {
        writeln!(w, "{} {} {} {}", r.n, r.mean, r.std_err, c * (r.n as f64).ln())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(workers: usize) -> ExperimentConfig {
        ExperimentConfig {
            class: GraphClass::CONN_OUTERPLANAR,
            sizes: vec![20, 80],
            samples: 40,
            seed: 5,
            workers: Some(workers),
            cache_dir: None,
        }
    }

    #[test]
    fn independent_of_worker_count() {
        let a = max_degree_experiment(&cfg(1)).unwrap();
        let b = max_degree_experiment(&cfg(3)).unwrap();
        assert_eq!(a[0].maxdeg, b[0].maxdeg);
        assert_eq!(a[1].maxdeg, b[1].maxdeg);
        assert_eq!(a[1].histogram.iter().sum::<u64>(), 40);
        assert!(a[1].mean > a[0].mean);
    }

    #[test]
    fn slope_of_exact_line() {
        let mk = |n: usize, mean: f64| ExperimentRecord {
            class: GraphClass::CONN_SP,
            n,
            samples: 1,
            seed: 0,
            rng: String::new(),
            maxdeg: vec![],
            mean,
            std_err: 0.0,
            histogram: vec![],
        };
        let recs: Vec<_> = [10usize, 100, 1000].iter().map(|&n| mk(n, 2.0 * (n as f64).ln() + 1.0)).collect();
        let (s, i) = fit_slope(&recs);
        assert!((s - 2.0).abs() < 1e-12 && (i - 1.0).abs() < 1e-12);
        let mut buf = Vec::new();
        write_plot_data(&recs, 2.0, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 4);
    }
}
