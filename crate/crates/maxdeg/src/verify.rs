//! Generating functions against exhaustive enumeration.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::class::GraphClass;
use crate::oracle::{self, OracleError, OracleResult};
use crate::sampler::{self, SamplerError};
use crate::scalar::Rational;
use crate::spectrum::{self, SpectrumError};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown verification level {0}; use 1, 2 or 3")]
    Level(u8),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
}

/// Outcome of one class and size.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub class: GraphClass,
    pub n: usize,
    pub count: u64,
    /// Human-readable description of every disagreement.
    pub mismatches: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn ratio(a: u64, b: u64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

/// Compares counts, degree laws, pair laws and the maximum-degree law.
pub fn compare(rec: &OracleResult) -> Result<Check, VerifyError> {
    let (class, n) = (rec.class, rec.n);
    let mut bad = Vec::new();
    let table = spectrum::degree_table(class, n, n - 1)?;
    let count = Rational::from_integer(BigInt::from(rec.count));
    if table.count.as_ref() != Some(&count) {
        bad.push(format!("count: gf {:?}, enumeration {}", table.count, rec.count));
    }
    let nn = n as u64;
    for k in 0..n {
        let want = ratio(rec.degree_tally.get(k).copied().unwrap_or(0), nn * rec.count);
        if table.single[k] != want {
            bad.push(format!("d[{k}]: gf {}, enumeration {want}", table.single[k]));
        }
    }
    if let Some(pair) = &table.pair {
        for k in 0..n {
            for l in 0..n {
                let c = rec.pair_tally.get(k).and_then(|r| r.get(l)).copied().unwrap_or(0);
                let want = ratio(c, nn * (nn - 1) * rec.count);
                if pair[k][l] != want {
                    bad.push(format!("d[{k},{l}]: gf {}, enumeration {want}", pair[k][l]));
                }
            }
        }
    } else if n >= 2 {
        bad.push("pair table missing".into());
    }
    let law = sampler::exact_maxdeg_distribution(class, n)?;
    for d in 0..law.len().max(rec.maxdeg.len()) {
        let want = ratio(rec.maxdeg.get(d).copied().unwrap_or(0), rec.count);
        let got = law.get(d).cloned().unwrap_or_else(|| Rational::from_integer(0.into()));
        if got != want {
            bad.push(format!("P(max degree = {d}): gf {got}, enumeration {want}"));
        }
    }
    Ok(Check { class, n, count: rec.count, mismatches: bad })
}

/// Largest size checked at each level: 1 covers `n <= 5`, 2 covers
/// `n <= 6`, 3 adds the slow `n = 7`.
pub fn level_max_n(level: u8) -> Result<usize, VerifyError> {
    match level {
        1 => Ok(5),
        2 => Ok(6),
        3 => Ok(7),
        l => Err(VerifyError::Level(l)),
    }
}

/// Runs every class and size of a level.
pub fn verify_level(level: u8) -> Result<Vec<Check>, VerifyError> {
    let nmax = level_max_n(level)?;
    let mut out = Vec::new();
    for class in GraphClass::ALL {
        for n in class.min_size()..=nmax {
            let rec = oracle::enumerate(class, n, level >= 3)?;
            out.push(compare(&rec)?);
        }
    }
    Ok(out)
}
