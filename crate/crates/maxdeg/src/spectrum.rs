//! Exact counts, degree probabilities `d_{n,k}`, pair probabilities
//! `d_{n,k,l}` and limiting distributions.
//!
//! With roots not counted in the `x` exponent, a graph on `n` vertices
//! contributes to `[x^(n-1)] G•` and to `[x^(n-2)] G••`, so
//! `d_{n,k} = [x^(n-1) w^k] G• / [x^(n-1)] G'` and
//! `d_{n,k,l} = [x^(n-2) w^k t^l] G•• / [x^(n-2)] G''`.

use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::class::GraphClass;
use crate::connected::rooted_for_class;
use crate::constants::{self, ConstantsError};
use crate::rooted::RootedGf;
use crate::scalar::{factorial, Rational, Scalar};
use crate::series::{SeriesError, XVar};

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("{class} has no members with {n} vertices (minimum {min})")]
    BelowMinimum { class: GraphClass, n: usize, min: usize },
    #[error("kmax {kmax} exceeds n - 1 = {}", n - 1)]
    KmaxTooLarge { n: usize, kmax: usize },
    #[error("size {n} beyond the table limit {nmax}")]
    BeyondTable { n: usize, nmax: usize },
    #[error("degree cap {cap} below requested kmax {kmax}")]
    CapTooSmall { cap: usize, kmax: usize },
    #[error("pair statistics were not computed")]
    NoPairs,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Constants(#[from] ConstantsError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, SpectrumError>;

/// Rescaling used by float-mode tables: slightly below the dominant
/// singularity, so stored coefficients decay only polynomially.
pub fn float_scale(class: GraphClass) -> f64 {
    use crate::class::{Connectivity::*, Family::*};
    match (class.family, class.connectivity) {
        (Outerplanar, TwoConnected) => 0.17,
        (Outerplanar, Connected) => 0.1365,
        (SeriesParallel, TwoConnected) => 0.128,
        (SeriesParallel, Connected) => 0.110,
    }
}

/// Default `kmax = ceil(4 log n)`, clamped to `n - 1`.
pub fn default_kmax(n: usize) -> usize {
    ((4.0 * (n as f64).ln()).ceil() as usize).clamp(1, n.saturating_sub(1).max(1))
}

/// Rooted series of a class covering all sizes up to `nmax`.
#[derive(Clone, Debug)]
pub struct Spectrum<T: Scalar> {
    pub class: GraphClass,
    pub nmax: usize,
    pub gf: RootedGf<T>,
}

impl<T: Scalar> Spectrum<T> {
    /// Tables for every `n <= nmax`, degrees up to `kcap`, and pair degrees up
    /// to `pair_cap` when given.
    pub fn build(class: GraphClass, nmax: usize, kcap: usize, pair_cap: Option<usize>, var: XVar<T>) -> Result<Self> {
        let min = class.min_size();
        if nmax < min {
            return Err(SpectrumError::BelowMinimum { class, n: nmax, min });
        }
        // the lift needs at least one coefficient beyond the constant term
        let gf = rooted_for_class(class, (nmax - 1).max(1), kcap, pair_cap, var)?;
        Ok(Spectrum { class, nmax, gf })
    }

    fn check(&self, n: usize) -> Result<()> {
        let min = self.class.min_size();
        if n < min {
            return Err(SpectrumError::BelowMinimum { class: self.class, n, min });
        }
        if n > self.nmax {
            return Err(SpectrumError::BeyondTable { n, nmax: self.nmax });
        }
        Ok(())
    }

    /// Largest degree stored in the single-vertex table.
    pub fn kcap(&self) -> usize {
        self.gf.g_rooted.wcap()
    }

    /// Number of labelled class members on `n` vertices. In float mode this
    /// overflows for large `n`; use [`Spectrum::scaled_count`] there.
    pub fn count(&self, n: usize) -> Result<T> {
        self.check(n)?;
        let s = self.scaled_count(n)?;
        let r = self.gf.var.scale.clone();
        let mut pow = T::one();
        for _ in 0..n - 1 {
            pow *= &r;
        }
        Ok(s / pow * factorial::<T>(n - 1))
    }

    /// `[x^(n-1)] G'` times `scale^(n-1)`, as stored.
    pub fn scaled_count(&self, n: usize) -> Result<T> {
        self.check(n)?;
        Ok(self.gf.g_prime.coeff(n - 1, 0, 0))
    }

    /// `d_{n,k}` for `k = 0..=kmax`.
    pub fn single(&self, n: usize, kmax: usize) -> Result<Vec<T>> {
        self.check(n)?;
        if kmax > n - 1 {
            return Err(SpectrumError::KmaxTooLarge { n, kmax });
        }
        if kmax > self.kcap() {
            return Err(SpectrumError::CapTooSmall { cap: self.kcap(), kmax });
        }
        let total = self.gf.g_prime.coeff(n - 1, 0, 0);
        Ok((0..=kmax).map(|k| self.gf.g_rooted.coeff(n - 1, k, 0) / total.clone()).collect())
    }

    /// `d_{n,k,l}` for `k, l = 0..=kmax`.
    pub fn pair(&self, n: usize, kmax: usize) -> Result<Vec<Vec<T>>> {
        self.check(n)?;
        if n < 2 {
            return Err(SpectrumError::BelowMinimum { class: self.class, n, min: 2 });
        }
        if kmax > n - 1 {
            return Err(SpectrumError::KmaxTooLarge { n, kmax });
        }
        let dd = self.gf.g_double.as_ref().ok_or(SpectrumError::NoPairs)?;
        if kmax > dd.wcap() {
            return Err(SpectrumError::CapTooSmall { cap: dd.wcap(), kmax });
        }
        let total = self.gf.g_second().coeff(n - 2, 0, 0);
        Ok((0..=kmax)
            .map(|k| (0..=kmax).map(|l| dd.coeff(n - 2, k, l) / total.clone()).collect())
            .collect())
    }

    /// Full table at `n` with pairs when available.
    pub fn table(&self, n: usize, kmax: usize) -> Result<DegreeTable<T>> {
        let single = self.single(n, kmax)?;
        let pair = match self.gf.g_double {
            Some(_) if n >= 2 => Some(self.pair(n, kmax)?),
            _ => None,
        };
        let count = if T::EXACT { Some(self.count(n)?) } else { None };
        Ok(DegreeTable { class: self.class, n, kmax, count, single, pair })
    }
}

impl Spectrum<Rational> {
    pub fn exact(class: GraphClass, nmax: usize, kcap: usize, pair_cap: Option<usize>) -> Result<Self> {
        Self::build(class, nmax, kcap, pair_cap, XVar::unit())
    }
}

impl Spectrum<f64> {
    pub fn float(class: GraphClass, nmax: usize, kcap: usize, pair_cap: Option<usize>) -> Result<Self> {
        Self::build(class, nmax, kcap, pair_cap, XVar::new(float_scale(class)))
    }
}

/// Degree statistics of the uniform random class member on `n` vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeTable<T: Scalar> {
    pub class: GraphClass,
    pub n: usize,
    pub kmax: usize,
    /// Exact count of labelled members (exact mode only).
    pub count: Option<T>,
    /// `single[k] = d_{n,k}`.
    pub single: Vec<T>,
    /// `pair[k][l] = d_{n,k,l}`.
    pub pair: Option<Vec<Vec<T>>>,
}

impl<T: Scalar> DegreeTable<T> {
    /// Whether the table covers every possible degree.
    pub fn is_complete(&self) -> bool {
        self.kmax + 1 >= self.n
    }

    pub fn to_f64(&self) -> DegreeTable<f64> {
        DegreeTable {
            class: self.class,
            n: self.n,
            kmax: self.kmax,
            count: self.count.as_ref().map(Scalar::to_f64),
            single: self.single.iter().map(Scalar::to_f64).collect(),
            pair: self.pair.as_ref().map(|p| p.iter().map(|r| r.iter().map(Scalar::to_f64).collect()).collect()),
        }
    }

    /// JSON form; values are decimal or `p/q` strings.
    pub fn to_json(&self) -> serde_json::Value {
        let s = |v: &T| v.to_string();
        serde_json::json!({
            "class": self.class,
            "n": self.n,
            "kmax": self.kmax,
            "count": self.count.as_ref().map(s),
            "single": self.single.iter().map(s).collect::<Vec<_>>(),
            "pair": self.pair.as_ref().map(|p| p.iter().map(|r| r.iter().map(s).collect::<Vec<_>>()).collect::<Vec<_>>()),
        })
    }

    /// CSV rows `n,k,l,d`; `l` is empty for single-vertex entries.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["n", "k", "l", "d", "d_float"])?;
        for (k, v) in self.single.iter().enumerate() {
            out.write_record([self.n.to_string(), k.to_string(), String::new(), v.to_string(), v.to_f64().to_string()])?;
        }
        if let Some(p) = &self.pair {
            for (k, row) in p.iter().enumerate() {
                for (l, v) in row.iter().enumerate() {
                    out.write_record([
                        self.n.to_string(),
                        k.to_string(),
                        l.to_string(),
                        v.to_string(),
                        v.to_f64().to_string(),
                    ])?;
                }
            }
        }
        out.flush()?;
        Ok(())
    }
}

/// Exact degree table of `class` at size `n`, including pairs.
pub fn degree_table(class: GraphClass, n: usize, kmax: usize) -> Result<DegreeTable<Rational>> {
    let min = class.min_size();
    if n < min {
        return Err(SpectrumError::BelowMinimum { class, n, min });
    }
    if kmax > n - 1 {
        return Err(SpectrumError::KmaxTooLarge { n, kmax });
    }
    Spectrum::exact(class, n, kmax, Some(kmax))?.table(n, kmax)
}

/// Limiting degree distribution `dbar_k` with its tail data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitDistribution {
    pub class: GraphClass,
    pub dbar: Vec<f64>,
    /// Exponential base of `dbar_k`.
    pub q: f64,
    /// Geometric estimate of `sum_{k > kmax} dbar_k`.
    pub tail_bound: f64,
    /// Subexponential prefactors (closed forms and fits).
    pub prefactors: std::collections::BTreeMap<String, f64>,
}

impl LimitDistribution {
    pub fn get(&self, k: usize) -> f64 {
        self.dbar.get(k).copied().unwrap_or(0.0)
    }

    /// `sum_{l > k} dbar_l` over the stored range.
    pub fn tail(&self, k: usize) -> f64 {
        self.dbar.iter().skip(k + 1).sum()
    }
}

/// `dbar_0..=dbar_kmax` by expanding the limiting generating function in `w`.
pub fn limit_distribution(class: GraphClass, kmax: usize) -> Result<LimitDistribution> {
    let report = constants::solve_class_constants(class, 20)?;
    let dbar = constants::limit_pgf(class, kmax)?;
    // d_k ~ poly(k) q^k: bound the tail by a geometric series with a slightly larger base
    let qq = report.q + (1.0 - report.q) / 8.0;
    let last = dbar.last().copied().unwrap_or(0.0).abs();
    let tail_bound = last * qq / (1.0 - qq);
    let prefactors = match class {
        GraphClass::CONN_OUTERPLANAR => ["c1", "c2"].iter().map(|k| (k.to_string(), report.aux(k).unwrap())).collect(),
        _ => Default::default(),
    };
    Ok(LimitDistribution { class, dbar, q: report.q, tail_bound, prefactors })
}

/// One ratio of a convergence report: `d_{n,k}/dbar_k` or, with `l`, `d_{n,k,l}/(dbar_k dbar_l)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub k: usize,
    pub l: Option<usize>,
    pub ratio: f64,
}

/// Ratios to the limit for every `n` in `ns` and `k` (and pairs `k, l`) in `ks`,
/// from float tables. Pairs are included when `with_pairs` is set.
pub fn convergence_report(class: GraphClass, ns: &[usize], ks: &[usize], with_pairs: bool) -> Result<Vec<ConvergenceRow>> {
    let nmax = ns.iter().copied().max().unwrap_or(0);
    let kmax = ks.iter().copied().max().unwrap_or(0);
    let spec = Spectrum::float(class, nmax, kmax, with_pairs.then_some(kmax))?;
    let limit = limit_distribution(class, kmax.max(1))?;
    let mut rows = Vec::new();
    for &n in ns {
        let single = spec.single(n, kmax.min(n - 1))?;
        for &k in ks.iter().filter(|&&k| k < n) {
            rows.push(ConvergenceRow { n, k, l: None, ratio: single[k] / limit.get(k) });
        }
        if with_pairs {
            let pair = spec.pair(n, kmax.min(n - 1))?;
            for &k in ks.iter().filter(|&&k| k < n) {
                for &l in ks.iter().filter(|&&l| l < n) {
                    rows.push(ConvergenceRow { n, k, l: Some(l), ratio: pair[k][l] / (limit.get(k) * limit.get(l)) });
                }
            }
        }
    }
    Ok(rows)
}

/// CSV rows `n,k,l,ratio`.
pub fn write_convergence_csv<W: Write>(rows: &[ConvergenceRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["n", "k", "l", "ratio"])?;
    for r in rows {
        let l = r.l.map(|l| l.to_string()).unwrap_or_default();
        out.write_record([r.n.to_string(), r.k.to_string(), l, r.ratio.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn small_outerplanar_tables() {
        let t = degree_table(GraphClass::TWO_CONN_OUTERPLANAR, 3, 2).unwrap();
        assert_eq!(t.single, vec![q(0, 1), q(0, 1), q(1, 1)]);
        let t = degree_table(GraphClass::TWO_CONN_OUTERPLANAR, 4, 3).unwrap();
        assert_eq!(t.single, vec![q(0, 1), q(0, 1), q(2, 3), q(1, 3)]);
        assert_eq!(t.count, Some(q(9, 1)));
    }

    #[test]
    fn tables_are_normalized_and_symmetric() {
        for class in GraphClass::ALL {
            let spec = Spectrum::exact(class, 12, 11, Some(11)).unwrap();
            for n in class.min_size().max(2)..=12 {
                let t = spec.table(n, n - 1).unwrap();
                let s: Rational = t.single.iter().sum();
                assert!(s.is_one(), "{class} {n}");
                let p = t.pair.unwrap();
                let s: Rational = p.iter().flatten().sum();
                assert!(s.is_one(), "{class} {n}");
                for k in 0..n {
                    for l in 0..n {
                        assert_eq!(p[k][l], p[l][k]);
                    }
                }
                if class.is_two_connected() && n >= 3 {
                    assert!(t.single[0].is_zero() && t.single[1].is_zero());
                }
            }
        }
    }

    #[test]
    fn pair_marginal_counts_rerooted_graphs() {
        // sum_l (n-1) n count d_{n,k,l} = (n-1) n count d_{n,k}: each vertex of degree k
        // is paired with each of the other n-1 vertices
        for class in GraphClass::ALL {
            let n = 9;
            let spec = Spectrum::exact(class, n, n - 1, Some(n - 1)).unwrap();
            let t = spec.table(n, n - 1).unwrap();
            let p = t.pair.unwrap();
            for k in 0..n {
                let row: Rational = p[k].iter().sum();
                assert_eq!(row, t.single[k], "{class} k={k}");
            }
        }
    }

    #[test]
    fn truncated_caps_give_identical_entries() {
        let full = Spectrum::exact(GraphClass::CONN_SP, 10, 9, Some(9)).unwrap();
        let cut = Spectrum::exact(GraphClass::CONN_SP, 10, 4, Some(4)).unwrap();
        assert_eq!(full.single(10, 4).unwrap(), cut.single(10, 4).unwrap());
        let p = full.pair(10, 9).unwrap();
        let pc = cut.pair(10, 4).unwrap();
        for k in 0..=4 {
            assert_eq!(p[k][..=4], pc[k][..]);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            degree_table(GraphClass::TWO_CONN_SP, 1, 0),
            Err(SpectrumError::BelowMinimum { .. })
        ));
        assert!(matches!(
            degree_table(GraphClass::TWO_CONN_SP, 4, 4),
            Err(SpectrumError::KmaxTooLarge { .. })
        ));
        let s = Spectrum::exact(GraphClass::CONN_OUTERPLANAR, 6, 3, None).unwrap();
        assert!(matches!(s.single(7, 2), Err(SpectrumError::BeyondTable { .. })));
        assert!(matches!(s.single(6, 4), Err(SpectrumError::CapTooSmall { .. })));
        assert!(matches!(s.pair(6, 2), Err(SpectrumError::NoPairs)));
    }

    #[test]
    fn float_tables_match_exact() {
        for class in GraphClass::ALL {
            let n = 40;
            let e = Spectrum::exact(class, n, 6, Some(4)).unwrap();
            let f = Spectrum::float(class, n, 6, Some(4)).unwrap();
            for m in [10, 25, 40] {
                for (a, b) in e.single(m, 6).unwrap().iter().zip(f.single(m, 6).unwrap()) {
                    assert!((a.to_f64() - b).abs() < 1e-12, "{class} {m}");
                }
                let (pa, pb) = (e.pair(m, 4).unwrap(), f.pair(m, 4).unwrap());
                for k in 0..=4 {
                    for l in 0..=4 {
                        assert!((pa[k][l].to_f64() - pb[k][l]).abs() < 1e-12, "{class} {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn limit_distribution_closed_form() {
        let d = limit_distribution(GraphClass::TWO_CONN_OUTERPLANAR, 60).unwrap();
        let r2 = 2f64.sqrt();
        assert!((d.get(2) - 2.0 * (3.0 - 2.0 * r2)).abs() < 1e-15);
        let s: f64 = d.dbar.iter().sum();
        assert!((s - 1.0).abs() < 1e-9 && d.tail_bound < 1e-10);
    }

    #[test]
    fn connected_sp_limit_tail() {
        let d = limit_distribution(GraphClass::CONN_SP, 400).unwrap();
        let w0 = 1.0 / d.q;
        let a = |k: usize| d.get(k) * (k as f64).powf(1.5) * w0.powi(k as i32);
        assert!((a(400) / 3.5952391 - 1.0).abs() < 0.01);
        assert!((a(400) - 3.5952391).abs() < (a(100) - 3.5952391).abs());
    }

    #[test]
    fn csv_and_json_emitters() {
        let t = degree_table(GraphClass::TWO_CONN_OUTERPLANAR, 4, 3).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("4,2,,2/3,"));
        assert!(text.contains("4,3,3,"));
        let j = t.to_json();
        assert_eq!(j["single"][3], "1/3");
        assert_eq!(j["class"], "2conn-outerplanar");
    }
}
