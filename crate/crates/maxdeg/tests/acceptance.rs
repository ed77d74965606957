//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use maxdeg::bounds::{max_degree_bounds, max_degree_bounds_float, mean_from_histogram};
use maxdeg::constants::{matches_quoted, solve_class_constants, ConstantsReport};
use maxdeg::oracle::{enumerate, is_member};
use maxdeg::sampler::{self, experiment::sample_rng, ExperimentConfig, Sampler};
use maxdeg::spectrum::{convergence_report, limit_distribution, Spectrum};
use maxdeg::verify::{verify_level, Check};
use maxdeg::{GraphClass, Rational};
use statrs::distribution::{ChiSquared, ContinuousCDF};

type Outcome = Result<(bool, String), Box<dyn std::error::Error>>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("constants regression", constants_regression),
        ("oracle equivalence", oracle_equivalence),
        ("limit-distribution convergence", limit_convergence),
        ("pair factorization", pair_factorization),
        ("moment-bound sandwich", moment_sandwich),
        ("sampler correctness", sampler_correctness),
        ("max-degree growth", max_degree_growth),
        ("tail-bound hypothesis", tail_bound_hypothesis),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            failed += 1;
        }
        println!("criterion {} {name}: {} ({detail}; {:.1}s)", i + 1, if ok { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn report(class: GraphClass, all: &[ConstantsReport]) -> &ConstantsReport {
    all.iter().find(|r| r.class == class).expect("every class solved")
}

fn constants_regression() -> Outcome {
    let t = Instant::now();
    let all = GraphClass::ALL.iter().map(|&c| solve_class_constants(c, 30)).collect::<Result<Vec<_>, _>>()?;
    let elapsed = t.elapsed();
    let mut misses = Vec::new();
    let mut check = |label: &str, value: Option<f64>, quoted: &str| {
        if !value.is_some_and(|v| matches_quoted(v, quoted, 6)) {
            misses.push(format!("{label}={value:?} vs {quoted}"));
        }
    };
    use GraphClass as G;
    let (op2, op, sp2, sp) = (
        report(G::TWO_CONN_OUTERPLANAR, &all),
        report(G::CONN_OUTERPLANAR, &all),
        report(G::TWO_CONN_SP, &all),
        report(G::CONN_SP, &all),
    );
    check("c 2conn-sp", Some(sp2.c), "3.679771");
    check("c conn-sp", Some(sp.c), "3.482774");
    check("c conn-outerplanar", Some(op.c), "1.035792");
    check("c 2conn-outerplanar", Some(op2.c), "1.134592");
    check("q 2conn-sp", Some(sp2.q), "0.7620402");
    check("q conn-sp", Some(sp.q), "0.750416");
    check("q conn-outerplanar", Some(op.q), "0.380813");
    check("rho1", sp2.aux("rho1"), "0.1280038");
    check("E0", sp2.aux("E0"), "1.867893");
    check("E1", sp2.aux("E1"), "-1.507045");
    check("w0(rho1)", sp2.aux("w0(rho1)"), "1.312267");
    check("v0", op.aux("v0"), "0.170765");
    check("rho", op.aux("rho"), "0.136594");
    check("rho2", sp.aux("rho2"), "0.11021");
    if (op2.q - (2f64.sqrt() - 1.0)).abs() > 1e-15 {
        misses.push(format!("q 2conn-outerplanar={}", op2.q));
    }
    let fast = elapsed < Duration::from_secs(1);
    let ok = misses.is_empty() && fast;
    Ok((ok, format!("18 values, {} mismatches {:?}, solve time {:.3}s", misses.len(), misses, elapsed.as_secs_f64())))
}

fn oracle_equivalence() -> Outcome {
    let checks = verify_level(2)?;
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{} n={}: {}", c.class, c.n, c.mismatches.join("; ")))
        .collect();
    let ok = bad.is_empty() && checks.iter().all(Check::passed);
    Ok((ok, format!("{} class/size pairs compared exactly, mismatches {bad:?}", checks.len())))
}

/// `max_k |d_{n,k} / dbar_k - 1|` for each `n`.
fn deviations(class: GraphClass, ns: &[usize], ks: &[usize]) -> Result<Vec<f64>, Box<dyn std::error::Error>> {
    let rows = convergence_report(class, ns, ks, false)?;
    Ok(ns
        .iter()
        .map(|&n| rows.iter().filter(|r| r.n == n).map(|r| (r.ratio - 1.0).abs()).fold(0.0, f64::max))
        .collect())
}

fn decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn limit_convergence() -> Outcome {
    let q = 2f64.sqrt() - 1.0;
    let ns = [100, 300, 1000];
    let spec = Spectrum::float(GraphClass::TWO_CONN_OUTERPLANAR, 1000, 8, None)?;
    let mut dev = Vec::new();
    for &n in &ns {
        let d = spec.single(n, 8)?;
        let m = (2..=8).map(|k| (d[k] / (2.0 * (k as f64 - 1.0) * q.powi(k as i32)) - 1.0).abs()).fold(0.0, f64::max);
        dev.push(m);
    }
    let mut ok = dev[2] < 0.05 && decreasing(&dev);
    let mut detail = format!("2conn-outerplanar closed form: deviation {:.4} {:.4} {:.4} at n=100,300,1000", dev[0], dev[1], dev[2]);
    for class in [GraphClass::CONN_OUTERPLANAR, GraphClass::TWO_CONN_SP, GraphClass::CONN_SP] {
        let lo = if class.is_two_connected() { 2 } else { 1 };
        let ks: Vec<usize> = (lo..=8).collect();
        let dev = deviations(class, &[100, 200, 300], &ks)?;
        ok &= dev[2] < 0.15 && decreasing(&dev);
        detail += &format!("; {class}: {:.4} {:.4} {:.4} at n=100,200,300", dev[0], dev[1], dev[2]);
    }
    Ok((ok, detail))
}

fn pair_factorization() -> Outcome {
    let ns = [20, 40, 60];
    let rows = convergence_report(GraphClass::TWO_CONN_OUTERPLANAR, &ns, &[2, 3, 4], true)?;
    let dev: Vec<f64> = ns
        .iter()
        .map(|&n| {
            rows.iter()
                .filter(|r| r.n == n && r.l.is_some())
                .map(|r| (r.ratio - 1.0).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let ok = dev[2] < 0.25 && decreasing(&dev);
    Ok((ok, format!("max |d_(n,k,l)/(dbar_k dbar_l) - 1| = {:.4} {:.4} {:.4} at n=20,40,60", dev[0], dev[1], dev[2])))
}

fn moment_sandwich() -> Outcome {
    let mut bad = Vec::new();
    let mut exact_cases = 0;
    for class in GraphClass::ALL {
        for n in class.min_size()..=6 {
            let rec = enumerate(class, n, false)?;
            let b = max_degree_bounds(class, n)?;
            for k in 0..n {
                let p = Rational::new(rec.maxdeg_above(k).into(), rec.count.into());
                let (lo, hi) = b.at(k);
                if !(lo <= p && p <= hi) {
                    bad.push(format!("{class} n={n} k={k}"));
                }
            }
            let (lo, hi) = b.expectation.clone().expect("complete table");
            let mean = mean_from_histogram(&rec.maxdeg);
            if !(lo <= mean && mean <= hi) {
                bad.push(format!("{class} n={n} expectation"));
            }
            exact_cases += 1;
        }
    }
    let draws = 100_000usize;
    let nf = draws as f64;
    let mut sampled_cases = 0;
    for class in GraphClass::ALL {
        let sampler = Sampler::float(class, 50, None)?;
        for n in [20usize, 50] {
            let b = max_degree_bounds_float(class, n)?;
            let mut hist = vec![0u64; n];
            for i in 0..draws {
                hist[sampler.sample_raw(n, &mut sample_rng(17, n, i))?.max_degree()] += 1;
            }
            let mut above = draws as u64;
            for k in 0..n {
                above -= hist[k];
                let p = above as f64 / nf;
                let (lo, hi) = b.at(k);
                let slack = |x: f64| 3.0 * (x.clamp(0.0, 1.0) * (1.0 - x.clamp(0.0, 1.0)) / nf).sqrt();
                if p < lo - slack(lo) - 1e-12 || p > hi + slack(hi) + 1e-12 {
                    bad.push(format!("{class} n={n} k={k}: {p} not in [{lo}, {hi}]"));
                }
            }
            let mean = hist.iter().enumerate().map(|(d, &c)| d as f64 * c as f64).sum::<f64>() / nf;
            let var = hist.iter().enumerate().map(|(d, &c)| (d as f64 - mean).powi(2) * c as f64).sum::<f64>() / (nf - 1.0);
            let se = (var / nf).sqrt();
            let (lo, hi) = b.expectation.expect("complete table");
            if mean < lo - 3.0 * se || mean > hi + 3.0 * se {
                bad.push(format!("{class} n={n} mean {mean} not in [{lo}, {hi}]"));
            }
            sampled_cases += 1;
        }
    }
    Ok((
        bad.is_empty(),
        format!("{exact_cases} exact cases (n<=6), {sampled_cases} sampled cases (n=20,50; {draws} draws, 3 sigma), violations {bad:?}"),
    ))
}

fn sampler_correctness() -> Outcome {
    let n = 4;
    let class = GraphClass::TWO_CONN_OUTERPLANAR;
    let support = enumerate(class, n, false)?.count as usize;
    let sampler = Sampler::float(class, n, None)?;
    let draws = 100_000usize;
    let mut counts: HashMap<Vec<(usize, usize)>, u64> = HashMap::new();
    for i in 0..draws {
        *counts.entry(sampler.sample(n, &mut sample_rng(23, n, i))?.edges()).or_default() += 1;
    }
    let expect = draws as f64 / support as f64;
    let stat: f64 = counts.values().map(|&c| (c as f64 - expect).powi(2) / expect).sum::<f64>()
        + (support - counts.len()) as f64 * expect;
    let p = 1.0 - ChiSquared::new((support - 1) as f64)?.cdf(stat);
    let mut ok = support == 9 && counts.len() == 9 && p > 0.001;
    let mut detail = format!("chi-square over {} graphs at n=4: stat {stat:.3}, p {p:.4}", counts.len());
    let m = 50;
    for class in GraphClass::ALL {
        let s = Sampler::float(class, m, None)?;
        let mut members = 0;
        for i in 0..10_000 {
            let g = s.sample(m, &mut sample_rng(29, m, i))?;
            if g.vertex_count() == m && is_member(&g, class) {
                members += 1;
            }
        }
        ok &= members == 10_000;
        detail += &format!("; {class} membership {members}/10000");
    }
    Ok((ok, detail))
}

fn max_degree_growth() -> Outcome {
    let sizes: Vec<usize> = (10..=16).map(|e| 1usize << e).collect();
    let mut ok = true;
    let mut detail = Vec::new();
    for class in GraphClass::ALL {
        let cfg = ExperimentConfig {
            class,
            sizes: sizes.clone(),
            samples: 1000,
            seed: 2024,
            workers: None,
            cache_dir: sampler::cache_dir_from_env(),
        };
        let records = sampler::max_degree_experiment(&cfg)?;
        let (slope, _) = sampler::fit_slope(&records);
        let c = maxdeg::constants::solve_constants::<f64>(class)?.c;
        let tol = if class.is_two_connected() { 0.20 } else { 0.30 };
        let rel = (slope - c).abs() / c;
        ok &= rel <= tol;
        detail.push(format!("{class}: slope {slope:.3} vs c {c:.3} (rel. error {rel:.3}, tol {tol})"));
    }
    Ok((ok, detail.join("; ")))
}

fn tail_bound_hypothesis() -> Outcome {
    let nmax = 300;
    let kcap = 60;
    let mut ok = true;
    let mut detail = Vec::new();
    for class in GraphClass::ALL {
        let limit = limit_distribution(class, 1)?;
        let qbar = limit.q + (1.0 - limit.q) / 2.0;
        let spec = Spectrum::float(class, nmax, kcap, None)?;
        let mut sup_by_n = Vec::new();
        for n in class.min_size()..=nmax {
            let kmax = kcap.min(n - 1);
            let d = spec.single(n, kmax)?;
            let s = d.iter().enumerate().map(|(k, v)| v / qbar.powi(k as i32)).fold(0.0, f64::max);
            sup_by_n.push((n, s));
        }
        let early = sup_by_n.iter().filter(|(n, _)| *n <= nmax / 2).map(|p| p.1).fold(0.0, f64::max);
        let late = sup_by_n.iter().filter(|(n, _)| *n > nmax / 2).map(|p| p.1).fold(0.0, f64::max);
        let bounded = early.is_finite() && late <= early;
        ok &= bounded;
        detail.push(format!("{class}: qbar {qbar:.4}, k<={kcap}, sup n<=150 {early:.4}, sup 150<n<=300 {late:.4}"));
    }
    Ok((ok, detail.join("; ")))
}
