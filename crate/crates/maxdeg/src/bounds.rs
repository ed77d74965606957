//! First and second moment bounds on the maximum degree.
//!
//! With `Y_{n,k}` the number of vertices of degree above `k`,
//! `E Y = n T_k` and `E Y^2 = n T_k + n(n-1) P_k`, where `T_k` is the
//! single-vertex tail and `P_k` the tail of both degrees of an ordered
//! pair of distinct vertices. Then
//! `(E Y)^2 / E Y^2 <= P{Delta_n > k} <= min(1, E Y)`.

use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::class::GraphClass;
use crate::scalar::{Rational, Scalar};
use crate::spectrum::{self, DegreeTable, LimitDistribution, SpectrumError};

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("degree {k} beyond the table range {kmax}")]
    Truncated { k: usize, kmax: usize },
    #[error("expectation bounds need a table with full degree support")]
    Incomplete,
    #[error("pair statistics missing")]
    NoPairs,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, BoundsError>;

/// `sum_{l > k} d_{n,l}`, exact whenever `d_{n,0..=k}` are known.
pub fn tail<T: Scalar>(t: &DegreeTable<T>, k: usize) -> Result<T> {
    if k + 1 >= t.n {
        return Ok(T::zero());
    }
    if t.is_complete() {
        return Ok(t.single.iter().skip(k + 1).fold(T::zero(), |a, v| a + v));
    }
    if k > t.kmax {
        return Err(BoundsError::Truncated { k, kmax: t.kmax });
    }
    Ok(t.single.iter().take(k + 1).fold(T::one(), |a, v| a - v))
}

/// `sum_{l1, l2 > k} d_{n,l1,l2}`, by inclusion-exclusion over the pair
/// marginals when the table is truncated.
pub fn pair_tail<T: Scalar>(t: &DegreeTable<T>, k: usize) -> Result<T> {
    let p = t.pair.as_ref().ok_or(BoundsError::NoPairs)?;
    if k + 1 >= t.n {
        return Ok(T::zero());
    }
    if t.is_complete() {
        return Ok(p.iter().skip(k + 1).flat_map(|r| r.iter().skip(k + 1)).fold(T::zero(), |a, v| a + v));
    }
    if k > t.kmax {
        return Err(BoundsError::Truncated { k, kmax: t.kmax });
    }
    let below: T = t.single.iter().take(k + 1).fold(T::zero(), |a, v| a + v);
    let both: T = p.iter().take(k + 1).flat_map(|r| r.iter().take(k + 1)).fold(T::zero(), |a, v| a + v);
    Ok(T::one() - below.clone() - below + both)
}

/// The two moment bounds on `P{Delta_n > k}`.
pub fn prob_bounds_from<T: Scalar>(t: &DegreeTable<T>, k: usize) -> Result<(T, T)> {
    let tk = tail(t, k)?;
    if tk == T::zero() {
        return Ok((T::zero(), T::zero()));
    }
    let n = T::from_i64(t.n as i64);
    let ey = n.clone() * tk;
    let ey2 = ey.clone() + n.clone() * (n.clone() - T::one()) * pair_tail(t, k)?;
    let lower = ey.clone() * ey.clone() / ey2;
    let upper = if ey > T::one() { T::one() } else { ey };
    Ok((lower, upper))
}

/// Per-`k` bounds and, for complete tables, bounds on `E Delta_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxDegreeBounds<T: Scalar> {
    pub class: GraphClass,
    pub n: usize,
    pub kmax: usize,
    /// `lower[k] <= P{Delta_n > k} <= upper[k]`.
    pub lower: Vec<T>,
    pub upper: Vec<T>,
    pub expectation: Option<(T, T)>,
}

impl<T: Scalar> MaxDegreeBounds<T> {
    pub fn from_table(t: &DegreeTable<T>) -> Result<Self> {
        let kmax = if t.is_complete() { t.n - 1 } else { t.kmax };
        let mut lower = Vec::with_capacity(kmax + 1);
        let mut upper = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            let (l, u) = prob_bounds_from(t, k)?;
            lower.push(l);
            upper.push(u);
        }
        let expectation = t.is_complete().then(|| {
            let s = |v: &[T]| v.iter().fold(T::zero(), |a, x| a + x);
            (s(&lower), s(&upper))
        });
        Ok(MaxDegreeBounds { class: t.class, n: t.n, kmax, lower, upper, expectation })
    }

    /// Bounds at `k`, zero beyond the maximum possible degree.
    pub fn at(&self, k: usize) -> (T, T) {
        match (self.lower.get(k), self.upper.get(k)) {
            (Some(l), Some(u)) => (l.clone(), u.clone()),
            _ => (T::zero(), T::zero()),
        }
    }

    pub fn to_f64(&self) -> MaxDegreeBounds<f64> {
        let f = |v: &[T]| v.iter().map(Scalar::to_f64).collect();
        MaxDegreeBounds {
            class: self.class,
            n: self.n,
            kmax: self.kmax,
            lower: f(&self.lower),
            upper: f(&self.upper),
            expectation: self.expectation.as_ref().map(|(l, u)| (l.to_f64(), u.to_f64())),
        }
    }

    /// CSV rows `n,k,lower,upper,reference`; `reference[k]` is an optional
    /// exact or empirical `P{Delta_n > k}`.
    pub fn write_csv<W: Write>(&self, w: W, reference: Option<&[f64]>) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["n", "k", "lower", "upper", "lower_float", "upper_float", "reference"])?;
        for k in 0..=self.kmax {
            let (l, u) = self.at(k);
            let r = reference.and_then(|r| r.get(k)).map(|v| v.to_string()).unwrap_or_default();
            out.write_record([
                self.n.to_string(),
                k.to_string(),
                l.to_string(),
                u.to_string(),
                l.to_f64().to_string(),
                u.to_f64().to_string(),
                r,
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Exact bounds on `P{Delta_n > k}` for one `k`.
pub fn prob_bounds(class: GraphClass, n: usize, k: usize) -> Result<(Rational, Rational)> {
    let t = spectrum::degree_table(class, n, k.min(n.saturating_sub(1)))?;
    prob_bounds_from(&t, k)
}

/// Exact bounds on `E Delta_n`.
pub fn expectation_bounds(class: GraphClass, n: usize) -> Result<(Rational, Rational)> {
    let t = spectrum::degree_table(class, n, n - 1)?;
    MaxDegreeBounds::from_table(&t)?.expectation.ok_or(BoundsError::Incomplete)
}

/// Exact bounds for every `k` at size `n`.
pub fn max_degree_bounds(class: GraphClass, n: usize) -> Result<MaxDegreeBounds<Rational>> {
    let t = spectrum::degree_table(class, n, n - 1)?;
    MaxDegreeBounds::from_table(&t)
}

/// Float bounds for every `k` at size `n`, from full-support float tables.
pub fn max_degree_bounds_float(class: GraphClass, n: usize) -> Result<MaxDegreeBounds<f64>> {
    let spec = spectrum::Spectrum::float(class, n, n - 1, Some(n - 1))?;
    MaxDegreeBounds::from_table(&spec.table(n, n - 1)?)
}

/// `k_0(n) = min{k : n sum_{l > k} dbar_l <= 1}`.
pub fn k0(limit: &LimitDistribution, n: usize) -> Option<usize> {
    (0..limit.dbar.len()).find(|&k| n as f64 * limit.tail(k) <= 1.0)
}

/// `k_1(n) = max{k : n sum_{l > k} dbar_l >= log n}`.
pub fn k1(limit: &LimitDistribution, n: usize) -> Option<usize> {
    let nf = n as f64;
    (0..limit.dbar.len()).take_while(|&k| nf * limit.tail(k) >= nf.ln()).last()
}

/// `E Delta_n` from an oracle-style maximum degree histogram.
pub fn mean_from_histogram(hist: &[u64]) -> Rational {
    let total: u64 = hist.iter().sum();
    let s: u64 = hist.iter().enumerate().map(|(d, &c)| d as u64 * c).sum();
    Rational::new(s.into(), total.into())
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ThresholdRow {
    pub n: usize,
    pub k0: Option<usize>,
    pub k1: Option<usize>,
    pub c_log_n: f64,
}

/// `k_0`, `k_1` and `c log n` over a grid of sizes.
pub fn thresholds(class: GraphClass, ns: &[usize]) -> Result<Vec<ThresholdRow>> {
    let limit = spectrum::limit_distribution(class, 600)?;
    let c = 1.0 / (1.0 / limit.q).ln();
    Ok(ns
        .iter()
        .map(|&n| ThresholdRow { n, k0: k0(&limit, n), k1: k1(&limit, n), c_log_n: c * (n as f64).ln() })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::Spectrum;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn outerplanar_four() {
        let t = spectrum::degree_table(GraphClass::TWO_CONN_OUTERPLANAR, 4, 3).unwrap();
        assert_eq!(tail(&t, 2).unwrap(), q(1, 3));
        assert!(tail(&t, 3).unwrap().is_zero());
        assert!(tail(&t, 1).unwrap().is_one());
        let (l, u) = prob_bounds(GraphClass::TWO_CONN_OUTERPLANAR, 4, 2).unwrap();
        assert!(l <= q(2, 3) && q(2, 3) <= u);
        let (l, u) = expectation_bounds(GraphClass::TWO_CONN_OUTERPLANAR, 4).unwrap();
        assert!(l <= q(8, 3) && q(8, 3) <= u);
    }

    #[test]
    fn last_degree_is_zero_and_bounds_ordered() {
        for class in GraphClass::ALL {
            for n in class.min_size().max(2)..=14 {
                let b = max_degree_bounds(class, n).unwrap();
                assert_eq!(b.at(n - 1), (q(0, 1), q(0, 1)));
                for k in 0..n {
                    let (l, u) = b.at(k);
                    assert!(Rational::zero() <= l && l <= u && u <= Rational::one(), "{class} {n} {k}");
                    if k > 0 {
                        assert!(b.upper[k] <= b.upper[k - 1]);
                    }
                }
                let (el, eu) = b.expectation.unwrap();
                assert!(el <= eu);
            }
        }
    }

    #[test]
    fn first_moment_is_n_times_tail() {
        let t = spectrum::degree_table(GraphClass::CONN_SP, 8, 7).unwrap();
        for k in 0..7 {
            let ey = Rational::from_i64(8) * tail(&t, k).unwrap();
            let (_, u) = prob_bounds_from(&t, k).unwrap();
            assert_eq!(u, if ey > Rational::one() { Rational::one() } else { ey });
        }
    }

    #[test]
    fn truncated_tables_give_the_same_bounds() {
        let class = GraphClass::TWO_CONN_SP;
        let full = spectrum::degree_table(class, 12, 11).unwrap();
        let cut = Spectrum::exact(class, 12, 5, Some(5)).unwrap().table(12, 5).unwrap();
        for k in 0..=5 {
            assert_eq!(prob_bounds_from(&full, k).unwrap(), prob_bounds_from(&cut, k).unwrap());
        }
        assert!(matches!(tail(&cut, 7), Err(BoundsError::Truncated { .. })));
        assert!(MaxDegreeBounds::from_table(&cut).unwrap().expectation.is_none());
    }

    #[test]
    fn float_bounds_match_exact() {
        let class = GraphClass::CONN_OUTERPLANAR;
        let e = max_degree_bounds(class, 16).unwrap();
        let f = max_degree_bounds_float(class, 16).unwrap();
        for k in 0..16 {
            assert!((e.lower[k].to_f64() - f.lower[k]).abs() < 1e-12);
            assert!((e.upper[k].to_f64() - f.upper[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn thresholds_grow_like_c_log_n() {
        let rows = thresholds(GraphClass::TWO_CONN_OUTERPLANAR, &[1 << 10, 1 << 20, 1 << 40]).unwrap();
        let ratio = |r: &ThresholdRow| r.k0.unwrap() as f64 / r.c_log_n;
        assert!((ratio(&rows[2]) - 1.0).abs() < (ratio(&rows[0]) - 1.0).abs());
        assert!(rows.iter().all(|r| r.k1.unwrap() <= r.k0.unwrap()));
    }

    #[test]
    fn csv_emitter() {
        let b = max_degree_bounds(GraphClass::TWO_CONN_OUTERPLANAR, 4).unwrap();
        let mut buf = Vec::new();
        b.write_csv(&mut buf, Some(&[1.0, 1.0, 2.0 / 3.0, 0.0])).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().count() == 5 && text.contains("4,3,0,0,"));
    }
}
