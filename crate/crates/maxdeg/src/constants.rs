//! Singular points, exponential bases `q` and max-degree constants
//! `c = 1/log(1/q)` for every class, solved in multi-precision arithmetic.
//!
//! Series-parallel quantities are parametrized by `e = E(x)`: the network
//! equation `E = 2 exp(x E^2/(1 + x E)) - 1` inverts to
//! `x(e) = L/(e(e - L))` with `L = ln((1 + e)/2)`, whose maximum on `e > 1`
//! is the singularity `rho_1`, attained at `E_0`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::class::{Connectivity, Family, GraphClass};
use crate::connected::rooted_for_class;
use crate::real::{Big, Dual, Real};
use crate::series::{solve_implicit, Series, SeriesError, UniSeries, XVar};
use crate::sp;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstantsError {
    #[error("no sign change for {what} on [{lo}, {hi}]")]
    Bracket { what: &'static str, lo: f64, hi: f64 },
    #[error("Newton iteration for {what} did not converge")]
    NoConvergence { what: &'static str },
    #[error("point {x} outside the domain of {what}")]
    Domain { what: &'static str, x: f64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, ConstantsError>;

/// Root of `f` on `[lo, hi]`: bisection down to relative width `1e-6`,
/// then Newton with derivatives from dual numbers.
pub fn find_root<R: Real>(what: &'static str, lo: R, hi: R, f: impl Fn(Dual<R>) -> Dual<R>) -> Result<R> {
    let eval = |x: &R| f(Dual::var(x.clone()));
    let (lo0, hi0) = (lo.clone(), hi.clone());
    let (mut lo, mut hi) = (lo, hi);
    let flo = eval(&lo).re;
    let fhi = eval(&hi).re;
    let neg_lo = flo < R::zero();
    if neg_lo == (fhi < R::zero()) {
        return Err(ConstantsError::Bracket { what, lo: lo.to_f64(), hi: hi.to_f64() });
    }
    let two = R::from_i64(2);
    while (hi.clone() - lo.clone()).to_f64() > 1e-6 * hi.abs().to_f64() {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if (eval(&mid).re < R::zero()) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = (lo + hi) / two;
    let tol = (64.0 * R::epsilon()).max(1e-55);
    for _ in 0..100 {
        let fx = eval(&x);
        if fx.du == R::zero() {
            return Err(ConstantsError::NoConvergence { what });
        }
        let step = fx.re / fx.du;
        x = x - step.clone();
        if x < lo0 || x > hi0 {
            return Err(ConstantsError::NoConvergence { what });
        }
        if step.abs().to_f64() <= tol * x.abs().to_f64() {
            return Ok(x);
        }
    }
    Err(ConstantsError::NoConvergence { what })
}

/// Dissection series `A(x) = (1 - 3x - sqrt(1 - 6x + x^2))/(4x)`.
pub fn op_dissections<R: Real>(x: R) -> R {
    let disc = R::one() - R::from_i64(6) * x.clone() + x.clone() * x.clone();
    (R::one() - R::from_i64(3) * x.clone() - disc.sqrt()) / (R::from_i64(4) * x)
}

/// `B'(x) = x + x A(x)/2` for 2-connected outerplanar graphs.
pub fn op_block_prime<R: Real>(x: R) -> R {
    x.clone() + x.clone() * op_dissections(x) / R::from_i64(2)
}

/// `B''(x) = (5 + (3 - x)/sqrt(1 - 6x + x^2))/8`.
pub fn op_block_second<R: Real>(x: R) -> R {
    let disc = R::one() - R::from_i64(6) * x.clone() + x.clone() * x.clone();
    (R::from_i64(5) + (R::from_i64(3) - x) / disc.sqrt()) / R::from_i64(8)
}

/// `x(e)`, the inverse of `E(x)` on its principal branch.
pub fn sp_x_of_e<R: Real>(e: R) -> R {
    let l = ((R::one() + e.clone()) / R::from_i64(2)).ln();
    l.clone() / (e.clone() * (e - l))
}

/// `B'(x)` for 2-connected SP graphs, written in `x` and `e = E(x)`.
pub fn sp_block_prime_xe<R: Real>(x: R, e: R) -> R {
    let xe = x.clone() * e.clone();
    let half = R::from_ratio(1, 2);
    x.clone() * (e.clone() - x * e.clone() * e.clone() * (R::one() + half * e) / (R::one() + xe))
}

/// `B''(x(e))` by the chain rule through `x(e)`.
pub fn sp_block_second_of_e<R: Real>(e: R) -> R {
    let d = Dual::var(e);
    let x = sp_x_of_e(d.clone());
    let b = sp_block_prime_xe(x.clone(), d);
    b.du / x.du
}

/// `E'(x(e)) = 1 / x'(e)`.
pub fn sp_e_prime_of_e<R: Real>(e: R) -> R {
    R::one() / sp_x_of_e(Dual::var(e)).du
}

/// `w_0(x) = (1 + 1/(x E)) exp(-1/(1 + x E)) - 1`, the singularity of `D(x, .)`.
pub fn sp_w0<R: Real>(x: R, e: R) -> R {
    let xe = x * e;
    (R::one() + R::one() / xe.clone()) * (-(R::one() / (R::one() + xe))).exp() - R::one()
}

/// Scalar evaluators for the generating functions at real points.
#[derive(Clone, Debug)]
pub struct PointEvaluator<R: Real> {
    /// `E_0 = E(rho_1)`.
    pub e0: R,
    /// Singularity of `E(x)`.
    pub rho1: R,
}

impl<R: Real> PointEvaluator<R> {
    pub fn new() -> Result<Self> {
        let e0 = find_root("E0", R::from_ratio(3, 2), R::from_ratio(5, 2), |e| {
            let s = (Dual::one() + Dual::one() / e.clone()).sqrt();
            e + Dual::one() - Dual::from_i64(2) * (Dual::one() / (s.clone() * (s + Dual::one()))).exp()
        })?;
        let s = (R::one() + R::one() / e0.clone()).sqrt();
        let rho1 = (s - R::one()) / e0.clone();
        Ok(PointEvaluator { e0, rho1 })
    }

    /// `E(x)` for `0 <= x <= rho_1`, by inverting `x(e)` on `[1, E_0]`.
    pub fn sp_e(&self, x: R) -> Result<R> {
        if x < R::zero() || x > self.rho1 {
            return Err(ConstantsError::Domain { what: "E", x: x.to_f64() });
        }
        if x == R::zero() {
            return Ok(R::one());
        }
        if x == self.rho1 {
            return Ok(self.e0.clone());
        }
        let target = Dual::constant(x);
        let lo = R::one() + R::from_f64(1e-12);
        find_root("E(x)", lo, self.e0.clone(), |e| sp_x_of_e(e) - target.clone())
    }

    pub fn sp_e_prime(&self, x: R) -> Result<R> {
        Ok(sp_e_prime_of_e(self.sp_e(x)?))
    }

    pub fn sp_block_prime(&self, x: R) -> Result<R> {
        let e = self.sp_e(x.clone())?;
        Ok(sp_block_prime_xe(x, e))
    }

    pub fn sp_block_second(&self, x: R) -> Result<R> {
        Ok(sp_block_second_of_e(self.sp_e(x)?))
    }

    pub fn op_dissections(&self, x: R) -> R {
        op_dissections(x)
    }

    pub fn op_block_prime(&self, x: R) -> R {
        op_block_prime(x)
    }

    pub fn op_block_second(&self, x: R) -> R {
        op_block_second(x)
    }
}

/// Singular data of one class in the working precision.
#[derive(Clone, Debug)]
pub struct ClassConstants<R: Real> {
    pub class: GraphClass,
    pub x0: R,
    pub q: R,
    pub c: R,
    pub auxiliaries: Vec<(&'static str, R)>,
    pub residuals: Vec<(&'static str, R)>,
}

impl<R: Real> ClassConstants<R> {
    pub fn aux(&self, name: &str) -> Option<&R> {
        self.auxiliaries.iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }
}

fn c_of_q<R: Real>(q: &R) -> R {
    R::one() / (R::one() / q.clone()).ln()
}

/// Solves the defining system of `class` in the working precision `R`.
pub fn solve_constants<R: Real>(class: GraphClass) -> Result<ClassConstants<R>> {
    let two = || R::from_i64(2);
    match (class.family, class.connectivity) {
        (Family::Outerplanar, Connectivity::TwoConnected) => {
            let r2 = two().sqrt();
            let q = r2.clone() - R::one();
            let x0 = R::from_i64(3) - two() * r2;
            let g = (R::one() + R::from_i64(5) * x0.clone()) / R::from_i64(8);
            let h = (R::one() - x0.clone() * x0.clone()).sqrt() / R::from_i64(8);
            let c = c_of_q(&q);
            Ok(ClassConstants {
                class,
                residuals: vec![
                    ("q^2+2q-1", q.clone() * q.clone() + two() * q.clone() - R::one()),
                    ("x0-q^2", x0.clone() - q.clone() * q.clone()),
                    ("1-6x0+x0^2", R::one() - R::from_i64(6) * x0.clone() + x0.clone() * x0.clone()),
                ],
                auxiliaries: vec![("g(x0)", g), ("h(x0)", h)],
                x0,
                q,
                c,
            })
        }
        (Family::Outerplanar, Connectivity::Connected) => {
            let x0_block = R::from_i64(3) - two() * two().sqrt();
            let hi = x0_block * (R::one() - R::from_f64(1e-9));
            let v0 = find_root("v0", R::from_ratio(1, 10), hi, |v| v.clone() * op_block_second(v) - Dual::one())?;
            let ad = op_dissections(Dual::var(v0.clone()));
            let (a, ap) = (ad.re, ad.du);
            let bp = op_block_prime(v0.clone());
            let rho = v0.clone() * (-bp.clone()).exp();
            let u = R::one() + two() * a.clone();
            let q = v0.clone() * u.clone();
            let c = c_of_q(&q);
            let (c1, c2) = op_conn_prefactors(&v0, &a, &ap, &rho);
            Ok(ClassConstants {
                class,
                residuals: vec![
                    ("1-v0*B''(v0)", R::one() - v0.clone() * op_block_second(v0.clone())),
                    (
                        "2v0*A^2+(3v0-1)A+v0",
                        two() * v0.clone() * a.clone() * a.clone()
                            + (R::from_i64(3) * v0.clone() - R::one()) * a.clone()
                            + v0.clone(),
                    ),
                    ("v0-rho*exp(B'(v0))", v0.clone() - rho.clone() * bp.clone().exp()),
                ],
                auxiliaries: vec![
                    ("v0", v0),
                    ("rho", rho.clone()),
                    ("A(v0)", a),
                    ("A'(v0)", ap),
                    ("B'(v0)", bp),
                    ("c1", c1),
                    ("c2", c2),
                ],
                x0: rho,
                q,
                c,
            })
        }
        (Family::SeriesParallel, Connectivity::TwoConnected) => {
            let pe = PointEvaluator::<R>::new()?;
            let (e0, rho1) = (pe.e0.clone(), pe.rho1.clone());
            let re = rho1.clone() * e0.clone();
            let e1 = -(two() * e0.clone() * (R::one() + e0.clone()) / (R::from_i64(4) + R::from_i64(3) * re.clone()))
                .sqrt();
            let w0 = sp_w0(rho1.clone(), e0.clone());
            let q = R::one() / w0.clone();
            let c = c_of_q(&q);
            Ok(ClassConstants {
                class,
                residuals: vec![
                    ("rho1*E0^2*(2+rho1*E0)-1", re.clone() * e0.clone() * (two() + re.clone()) - R::one()),
                    (
                        "E0-2exp(rho1*E0^2/(1+rho1*E0))+1",
                        e0.clone() - two() * (re.clone() * e0.clone() / (R::one() + re.clone())).exp() + R::one(),
                    ),
                    ("x(E0)-rho1", sp_x_of_e(e0.clone()) - rho1.clone()),
                    ("x'(E0)", sp_x_of_e(Dual::var(e0.clone())).du),
                ],
                auxiliaries: vec![
                    ("E0", e0),
                    ("E1", e1),
                    ("rho1", rho1.clone()),
                    ("w0(rho1)", w0),
                    ("beta", re.clone() / (R::one() + re)),
                ],
                x0: rho1,
                q,
                c,
            })
        }
        (Family::SeriesParallel, Connectivity::Connected) => {
            let pe = PointEvaluator::<R>::new()?;
            let lo = R::one() + R::from_ratio(1, 1000);
            let hi = pe.e0.clone() * (R::one() - R::from_f64(1e-9));
            let e = find_root("E(v0)", lo, hi, |e| sp_x_of_e(e.clone()) * sp_block_second_of_e(e) - Dual::one())?;
            let v0 = sp_x_of_e(e.clone());
            let bp = sp_block_prime_xe(v0.clone(), e.clone());
            let rho2 = v0.clone() * (-bp.clone()).exp();
            let w0 = sp_w0(v0.clone(), e.clone());
            let q = R::one() / w0.clone();
            let c = c_of_q(&q);
            let ve = v0.clone() * e.clone();
            Ok(ClassConstants {
                class,
                residuals: vec![
                    ("1-v0*B''(v0)", R::one() - v0.clone() * sp_block_second_of_e(e.clone())),
                    (
                        "E(v0)-2exp(v0*E^2/(1+v0*E))+1",
                        e.clone() - two() * (ve.clone() * e.clone() / (R::one() + ve)).exp() + R::one(),
                    ),
                    ("v0-rho2*exp(B'(v0))", v0.clone() - rho2.clone() * bp.clone().exp()),
                ],
                auxiliaries: vec![
                    ("v0", v0),
                    ("E(v0)", e.clone()),
                    ("E'(v0)", sp_e_prime_of_e(e)),
                    ("B'(v0)", bp),
                    ("rho2", rho2.clone()),
                    ("w0(v0)", w0),
                    ("rho1", pe.rho1),
                    ("E0", pe.e0),
                ],
                x0: rho2,
                q,
                c,
            })
        }
    }
}

/// Subexponential prefactors of `dbar_k ~ c1 k^(1/4) exp(c2 sqrt(k)) q^k`
/// for connected outerplanar graphs.
///
/// `p̄(w)` has an essential singularity `exp(H/(1 - w/w*))` at `w* = 1/q`
/// with `H = 1/(2(2A(v0) + 1))`; the saddle point estimate gives
/// `c2 = 2 sqrt(H)` and the prefactor `c1` below.
fn op_conn_prefactors<R: Real>(v0: &R, a: &R, ap: &R, rho: &R) -> (R, R) {
    let two = R::from_i64(2);
    let u = R::one() + two.clone() * a.clone();
    let b = v0.clone() * u.clone();
    let hh = R::one() / (two.clone() * u);
    let c2 = two.clone() * hh.sqrt();
    let up = R::one() + two.clone() * a.clone() + two.clone() * v0.clone() * ap.clone();
    let pi = R::from_f64(std::f64::consts::PI);
    let pi = if R::epsilon() < f64::EPSILON { pi_hp::<R>() } else { pi };
    let hq = hh.sqrt().sqrt();
    let c1 = rho.clone() * (v0.clone() / b.clone() - two.clone() * hh.clone() + hh.clone() / two.clone()).exp() * v0.clone()
        * up
        / (two.clone() * b.clone() * b)
        / (hq.clone() * hq.clone() * hq)
        / (two * pi.sqrt());
    (c1, c2)
}

/// `pi` in the working precision, as `4 atan(1)` via `16 atan(1/5) - 4 atan(1/239)`.
fn pi_hp<R: Real>() -> R {
    fn atan_inv<R: Real>(n: i64) -> R {
        let x = R::from_ratio(1, n);
        let x2 = x.clone() * x.clone();
        let mut term = x;
        let mut sum = R::zero();
        for k in 0..200 {
            let t = term.clone() / R::from_i64(2 * k + 1);
            sum = if k % 2 == 0 { sum + t } else { sum - t };
            term = term * x2.clone();
            if term.to_f64().abs() < 1e-70 {
                break;
            }
        }
        sum
    }
    R::from_i64(16) * atan_inv::<R>(5) - R::from_i64(4) * atan_inv::<R>(239)
}

/// JSON-facing report. Floats are `f64`; `precise` carries 40-digit decimals.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConstantsReport {
    pub class: GraphClass,
    pub x0: f64,
    pub q: f64,
    pub c: f64,
    pub auxiliaries: BTreeMap<String, f64>,
    pub residuals: BTreeMap<String, f64>,
    pub precise: BTreeMap<String, String>,
}

impl ConstantsReport {
    pub fn aux(&self, name: &str) -> Option<f64> {
        self.auxiliaries.get(name).copied()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().fold(0.0, |m, r| m.max(r.abs()))
    }
}

/// Solves `class` with 200-bit arithmetic. `digits` sets the length of
/// the decimal strings in `precise` (at most 55).
pub fn solve_class_constants(class: GraphClass, digits: usize) -> Result<ConstantsReport> {
    let k = solve_constants::<Big>(class)?;
    let digits = digits.clamp(1, 55);
    let mut precise = BTreeMap::new();
    for (name, v) in [("x0", &k.x0), ("q", &k.q), ("c", &k.c)] {
        precise.insert(name.to_string(), v.to_decimal_string(digits));
    }
    for (name, v) in &k.auxiliaries {
        precise.insert(name.to_string(), v.to_decimal_string(digits));
    }
    Ok(ConstantsReport {
        class,
        x0: k.x0.to_f64(),
        q: k.q.to_f64(),
        c: k.c.to_f64(),
        auxiliaries: k.auxiliaries.iter().map(|(n, v)| (n.to_string(), v.to_f64())).collect(),
        residuals: k.residuals.iter().map(|(n, v)| (n.to_string(), v.to_f64())).collect(),
        precise,
    })
}

/// Whether `value` reproduces the decimal `quoted`, compared to the unit of
/// its last significant digit, capped at `max_digits` digits.
pub fn matches_quoted(value: f64, quoted: &str, max_digits: usize) -> bool {
    let Ok(target) = quoted.trim().parse::<f64>() else {
        return false;
    };
    let mantissa: String = quoted.split(['e', 'E']).next().unwrap_or("").chars().filter(|c| c.is_ascii_digit()).collect();
    let sig = mantissa.trim_start_matches('0').len().clamp(1, max_digits);
    if target == 0.0 {
        return value.abs() < 10f64.powi(-(sig as i32));
    }
    let lead = target.abs().log10().floor() as i32;
    (value - target).abs() < 10f64.powi(lead - sig as i32 + 1)
}

/// Coefficients `dbar_0..=dbar_kmax` of the limiting degree generating
/// function `p̄(w)`, expanded as a power series in `w`.
pub fn limit_pgf(class: GraphClass, kmax: usize) -> Result<Vec<f64>> {
    let k = solve_constants::<Big>(class)?;
    let f = |n: &str| k.aux(n).map(|v| v.to_f64()).unwrap_or(f64::NAN);
    let coeffs = match (class.family, class.connectivity) {
        (Family::Outerplanar, Connectivity::TwoConnected) => {
            let q = k.q.to_f64();
            (0..=kmax).map(|j| if j < 2 { 0.0 } else { 2.0 * (j as f64 - 1.0) * q.powi(j as i32) }).collect()
        }
        (Family::Outerplanar, Connectivity::Connected) => {
            // rho exp(B•(v0,w)) ∂x B•(v0,w), B• = x w + (x w^2/2) u/(1 - u w), u = x(2A + 1)
            let (v0, a, ap, rho) = (f("v0"), f("A(v0)"), f("A'(v0)"), f("rho"));
            let u = v0 * (2.0 * a + 1.0);
            let up = 2.0 * a + 1.0 + 2.0 * v0 * ap;
            let w = Series::<f64>::var_x(kmax);
            let w2 = w.square();
            let geo = Series::one(kmax).sub(&w.scale(&u)).inv()?;
            let bdot = w.scale(&v0).add(&w2.mul(&geo).scale(&(v0 * u / 2.0)));
            let bdot_x = w
                .add(&w2.mul(&geo).scale(&(u / 2.0)))
                .add(&w2.mul(&geo.square()).scale(&(v0 * up / 2.0)));
            bdot.exp()?.mul(&bdot_x).scale(&rho).uni_coeffs()
        }
        (Family::SeriesParallel, Connectivity::TwoConnected) => {
            // (D0(w)/E0)^2 with D0 = (1 + w) exp(beta D0) - 1
            let d0 = sp_root_degree_series(f("beta"), kmax)?;
            let e0 = f("E0");
            d0.square().scale(&(1.0 / (e0 * e0))).uni_coeffs()
        }
        (Family::SeriesParallel, Connectivity::Connected) => {
            // rho2 exp(B•(v0,w)) ∂x B•(v0,w) with B• = x(D - hD(1 + D/2));
            // ∂x B• simplifies to D - hD(1 + D/2) + x h' D^2/2
            let (v0, e, ep, rho2) = (f("v0"), f("E(v0)"), f("E'(v0)"), f("rho2"));
            let h = v0 * e / (1.0 + v0 * e);
            let hp = (e + v0 * ep) / ((1.0 + v0 * e) * (1.0 + v0 * e));
            let d = sp_root_degree_series(h, kmax)?;
            let d2 = d.square();
            let core = d.sub(&d.scale(&h)).sub(&d2.scale(&(h / 2.0)));
            let bdot = core.scale(&v0);
            let bdot_x = core.add(&d2.scale(&(v0 * hp / 2.0)));
            bdot.exp()?.mul(&bdot_x).scale(&rho2).uni_coeffs()
        }
    };
    Ok(coeffs)
}

/// `D(w) = (1 + w) exp(beta D(w)) - 1` as a power series in `w`.
fn sp_root_degree_series(beta: f64, kmax: usize) -> Result<UniSeries<f64>> {
    let one_w = Series::<f64>::var_x(kmax).add_scalar(&1.0);
    Ok(solve_implicit(kmax, Series::zeros(0, 0, 0), |y, o| {
        let e = y.scale(&beta).exp()?.mul(&one_w.truncate(o));
        Ok((e.add_scalar(&-1.0), e.scale(&beta)))
    })?)
}

/// Secondary constants with the method used to obtain each.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Prefactors {
    pub class: GraphClass,
    pub values: BTreeMap<String, f64>,
    /// Fits whose two Richardson estimates disagree by more than 1%.
    pub flags: Vec<String>,
}

/// Order of the coefficient sequences used for fitted prefactors.
pub const FIT_ORDER: usize = 300;

/// Extrapolation of `lim a_n` assuming `a_n = a + alpha/n + beta/n^2 + ...`:
/// the quadratic in `1/n` through `n/3, 2n/3, n` evaluated at 0, with the
/// relative gap to the linear estimate from `2n/3, n`.
fn richardson(a: impl Fn(usize) -> f64, n: usize) -> (f64, f64) {
    let ns = [n / 3, 2 * n / 3, n];
    let h: Vec<f64> = ns.iter().map(|&m| 1.0 / m as f64).collect();
    let quad: f64 = (0..3)
        .map(|i| {
            let w: f64 = (0..3).filter(|&j| j != i).map(|j| h[j] / (h[j] - h[i])).product();
            w * a(ns[i])
        })
        .sum();
    let lin = (h[1] * a(ns[2]) - h[2] * a(ns[1])) / (h[1] - h[2]);
    (quad, ((quad - lin) / quad).abs())
}

/// Secondary constants: closed-form prefactors where available, Richardson
/// fits to coefficient sequences otherwise.
pub fn asymptotic_prefactors(class: GraphClass) -> Result<Prefactors> {
    let k = solve_constants::<Big>(class)?;
    let mut values = BTreeMap::new();
    let mut flags = Vec::new();
    let mut fit = |name: &str, (v, spread): (f64, f64)| {
        values.insert(name.to_string(), v);
        if spread > 0.01 {
            flags.push(format!("{name}: spread {spread:.3e}"));
        }
    };
    match (class.family, class.connectivity) {
        (Family::Outerplanar, Connectivity::TwoConnected) => {
            fit("dbar_slope", (2.0, 0.0));
        }
        (Family::Outerplanar, Connectivity::Connected) => {
            fit("c1", (k.aux("c1").unwrap().to_f64(), 0.0));
            fit("c2", (k.aux("c2").unwrap().to_f64(), 0.0));
        }
        (Family::SeriesParallel, Connectivity::TwoConnected) => {
            // b_n rho1^n n^(5/2) / n! = [x^(n-1)]B' rho1^n n^(3/2)
            let rho1 = k.x0.to_f64();
            let var = XVar::new(rho1);
            let e = sp::networks(FIT_ORDER, &var)?;
            let bp = sp::block_derivative(&e, &var)?;
            let a = |n: usize| bp.coeff(n - 1, 0, 0) * rho1 * (n as f64).powf(1.5);
            fit("b", richardson(a, FIT_ORDER));
            let w0 = k.aux("w0(rho1)").unwrap().to_f64();
            fit("c_dbar", dbar_fit(class, w0)?);
        }
        (Family::SeriesParallel, Connectivity::Connected) => {
            let rho2 = k.x0.to_f64();
            let g = rooted_for_class(class, FIT_ORDER, 0, None, XVar::new(rho2))?;
            let a = |n: usize| g.g_prime.coeff(n - 1, 0, 0) * rho2 * (n as f64).powf(1.5);
            fit("c", richardson(a, FIT_ORDER));
            let w0 = k.aux("w0(v0)").unwrap().to_f64();
            fit("c_prime", dbar_fit(class, w0)?);
        }
    }
    Ok(Prefactors { class, values, flags })
}

/// Fit of `dbar_k ~ c k^(-3/2) w0^(-k)`.
fn dbar_fit(class: GraphClass, w0: f64) -> Result<(f64, f64)> {
    let kmax = 400;
    let d = limit_pgf(class, kmax)?;
    let a = |j: usize| d[j] * (j as f64).powf(1.5) * w0.powi(j as i32);
    Ok(richardson(a, kmax))
}
