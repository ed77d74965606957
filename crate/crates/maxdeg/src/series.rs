//! Truncated power series in `x` with polynomial caps in `w` and `t`.
//!
//! A [`Series`] is a dense table of coefficients of `x^i w^a t^b` for
//! `i <= order`, `a <= wcap`, `b <= tcap`. Truncation in `x` is a truncation of
//! the power series; truncation in `w` and `t` is reduction modulo
//! `w^(wcap+1)` and `t^(tcap+1)`. A cap of zero marks a series that does not
//! depend on that variable, so a product takes the larger of the two caps.

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division by a series whose constant term is not invertible")]
    ZeroDivisor,
    #[error("{0}: the x^0 coefficient must vanish")]
    NonzeroConstantTerm(&'static str),
    #[error("{0}: the x^0 coefficient must equal 1")]
    ConstantTermNotOne(&'static str),
    #[error("integrate_w: the w^0 column is nonzero")]
    NonzeroW0Column,
    #[error("implicit equation is inconsistent at order 0")]
    OrderZeroInconsistent,
    #[error("incompatible shapes: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// Truncated series in `x` with optional `w`, `t` dependence.
#[derive(Clone, PartialEq)]
pub struct Series<T> {
    order: usize,
    wcap: usize,
    tcap: usize,
    data: Vec<T>,
}

/// Series in `x` only.
pub type UniSeries<T> = Series<T>;
/// Series in `x` and `w`.
pub type BiSeries<T> = Series<T>;
/// Series in `x`, `w` and `t`.
pub type TriSeries<T> = Series<T>;

impl<T: Scalar> fmt::Debug for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}x{}x{}](", self.order, self.wcap, self.tcap)?;
        let mut first = true;
        for i in 0..=self.order {
            for a in 0..=self.wcap {
                for b in 0..=self.tcap {
                    let c = self.get(i, a, b);
                    if !c.is_zero() {
                        if !first {
                            write!(f, " + ")?;
                        }
                        first = false;
                        write!(f, "{c}*x^{i}w^{a}t^{b}")?;
                    }
                }
            }
        }
        write!(f, ")")
    }
}

impl<T: Scalar> Series<T> {
    pub fn zeros(order: usize, wcap: usize, tcap: usize) -> Self {
        Series {
            order,
            wcap,
            tcap,
            data: vec![T::zero(); (order + 1) * (wcap + 1) * (tcap + 1)],
        }
    }

    /// Univariate series from its coefficients (order = `len - 1`).
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Series { order: coeffs.len() - 1, wcap: 0, tcap: 0, data: coeffs }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zeros(order, 0, 0);
        s.data[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// The series `x`.
    pub fn var_x(order: usize) -> Self {
        let mut s = Self::zeros(order, 0, 0);
        if order >= 1 {
            s.data[1] = T::one();
        }
        s
    }

    /// The series `w` with cap `wcap`.
    pub fn var_w(order: usize, wcap: usize) -> Self {
        let mut s = Self::zeros(order, wcap.max(1), 0);
        *s.get_mut(0, 1, 0) = T::one();
        s.with_caps(wcap, 0)
    }

    /// The series `t` with cap `tcap`.
    pub fn var_t(order: usize, tcap: usize) -> Self {
        let mut s = Self::zeros(order, 0, tcap.max(1));
        *s.get_mut(0, 0, 1) = T::one();
        s.with_caps(0, tcap)
    }

    /// The monomial `c x^i w^a t^b`.
    pub fn monomial(c: T, i: usize, a: usize, b: usize, order: usize, wcap: usize, tcap: usize) -> Self {
        let mut s = Self::zeros(order, wcap, tcap);
        if i <= order && a <= wcap && b <= tcap {
            *s.get_mut(i, a, b) = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn wcap(&self) -> usize {
        self.wcap
    }

    pub fn tcap(&self) -> usize {
        self.tcap
    }

    #[inline]
    fn idx(&self, i: usize, a: usize, b: usize) -> usize {
        (i * (self.wcap + 1) + a) * (self.tcap + 1) + b
    }

    #[inline]
    fn slice_len(&self) -> usize {
        (self.wcap + 1) * (self.tcap + 1)
    }

    /// Coefficient of `x^i w^a t^b`; zero outside the stored range.
    pub fn coeff(&self, i: usize, a: usize, b: usize) -> T {
        if i <= self.order && a <= self.wcap && b <= self.tcap {
            self.data[self.idx(i, a, b)].clone()
        } else {
            T::zero()
        }
    }

    #[inline]
    pub fn get(&self, i: usize, a: usize, b: usize) -> &T {
        &self.data[self.idx(i, a, b)]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, a: usize, b: usize) -> &mut T {
        let k = self.idx(i, a, b);
        &mut self.data[k]
    }

    /// Coefficients of `x^0..x^order` at `w^0 t^0`.
    pub fn uni_coeffs(&self) -> Vec<T> {
        (0..=self.order).map(|i| self.get(i, 0, 0).clone()).collect()
    }

    /// Coefficients of `w^a` at `x^i`, `t^0`.
    pub fn w_row(&self, i: usize) -> Vec<T> {
        (0..=self.wcap).map(|a| self.coeff(i, a, 0)).collect()
    }

    fn slice(&self, i: usize) -> &[T] {
        let s = self.slice_len();
        &self.data[i * s..(i + 1) * s]
    }

    /// Resizes the `x` order, padding with zeros.
    pub fn truncate(&self, order: usize) -> Self {
        let mut r = Self::zeros(order, self.wcap, self.tcap);
        let keep = (order.min(self.order) + 1) * self.slice_len();
        r.data[..keep].clone_from_slice(&self.data[..keep]);
        r
    }

    /// Resizes the `w` and `t` caps, padding with zeros.
    pub fn with_caps(&self, wcap: usize, tcap: usize) -> Self {
        if wcap == self.wcap && tcap == self.tcap {
            return self.clone();
        }
        let mut r = Self::zeros(self.order, wcap, tcap);
        for i in 0..=self.order {
            for a in 0..=self.wcap.min(wcap) {
                for b in 0..=self.tcap.min(tcap) {
                    *r.get_mut(i, a, b) = self.get(i, a, b).clone();
                }
            }
        }
        r
    }

    fn aligned(&self, o: &Self) -> (Self, Self) {
        let n = self.order.min(o.order);
        let k = self.wcap.max(o.wcap);
        let l = self.tcap.max(o.tcap);
        (self.truncate(n).with_caps(k, l), o.truncate(n).with_caps(k, l))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let (mut a, b) = self.aligned(o);
        for (x, y) in a.data.iter_mut().zip(&b.data) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, o: &Self) -> Self {
        let (mut a, b) = self.aligned(o);
        for (x, y) in a.data.iter_mut().zip(&b.data) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        for x in r.data.iter_mut() {
            *x = -x.clone();
        }
        r
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut r = self.clone();
        for x in r.data.iter_mut() {
            *x *= c;
        }
        r
    }

    /// `self + c` for a scalar `c`.
    pub fn add_scalar(&self, c: &T) -> Self {
        let mut r = self.clone();
        r.data[0] += c;
        r
    }

    /// Multiplies by the monomial `x^i w^a t^b`, raising the caps if needed.
    pub fn shift(&self, i: usize, a: usize, b: usize) -> Self {
        let k = if self.wcap == 0 && a > 0 { a } else { self.wcap };
        let l = if self.tcap == 0 && b > 0 { b } else { self.tcap };
        let mut r = Self::zeros(self.order, k, l);
        for p in 0..=self.order.saturating_sub(i) {
            if p + i > self.order {
                break;
            }
            for c in 0..=self.wcap {
                if c + a > k {
                    break;
                }
                for d in 0..=self.tcap {
                    if d + b > l {
                        break;
                    }
                    *r.get_mut(p + i, c + a, d + b) = self.get(p, c, d).clone();
                }
            }
        }
        r
    }

    /// Largest nonzero `(a, b)` indices of each `x` slice.
    fn supports(&self) -> Vec<Option<(usize, usize)>> {
        (0..=self.order)
            .map(|i| {
                let mut best: Option<(usize, usize)> = None;
                for a in 0..=self.wcap {
                    for b in 0..=self.tcap {
                        if !self.get(i, a, b).is_zero() {
                            best = Some(match best {
                                None => (a, b),
                                Some((x, y)) => (x.max(a), y.max(b)),
                            });
                        }
                    }
                }
                best
            })
            .collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order.min(o.order);
        let k = self.wcap.max(o.wcap);
        let l = self.tcap.max(o.tcap);
        let mut r = Self::zeros(n, k, l);
        let sf = self.supports();
        let so = o.supports();
        for i in 0..=n {
            let Some((fa, fb)) = sf[i] else { continue };
            for j in 0..=n - i {
                let Some((ga, gb)) = so[j] else { continue };
                for a in 0..=fa {
                    let cmax = ga.min(k - a);
                    for b in 0..=fb {
                        let x = self.get(i, a, b);
                        if x.is_zero() {
                            continue;
                        }
                        let dmax = gb.min(l - b);
                        for c in 0..=cmax {
                            let base_r = r.idx(i + j, a + c, b);
                            let base_o = o.idx(j, c, 0);
                            for d in 0..=dmax {
                                let y = &o.data[base_o + d];
                                r.data[base_r + d].mul_acc(x, y);
                            }
                        }
                    }
                }
            }
        }
        r
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Inverse of the `x^0` slice as a power series in `w, t`.
    fn slice0_inverse(&self) -> Result<Vec<T>> {
        let (k, l) = (self.wcap, self.tcap);
        let f0 = self.slice(0);
        let c = &f0[0];
        if c.is_zero() {
            return Err(SeriesError::ZeroDivisor);
        }
        let cinv = T::one() / c.clone();
        let mut h = vec![T::zero(); (k + 1) * (l + 1)];
        for a in 0..=k {
            for b in 0..=l {
                let mut acc = if a == 0 && b == 0 { T::one() } else { T::zero() };
                for c2 in 0..=a {
                    for d in 0..=b {
                        if c2 == 0 && d == 0 {
                            continue;
                        }
                        let f = &f0[c2 * (l + 1) + d];
                        if f.is_zero() {
                            continue;
                        }
                        let mut t = f.clone();
                        t *= &h[(a - c2) * (l + 1) + (b - d)];
                        acc -= &t;
                    }
                }
                acc *= &cinv;
                h[a * (l + 1) + b] = acc;
            }
        }
        Ok(h)
    }

    /// Adds `p * q` (two `(w,t)` slices with the caps of `self`) into slice `i` of `self`.
    fn slice_mul_acc(&mut self, i: usize, p: &[T], q: &[T], sign_neg: bool) {
        let (k, l) = (self.wcap, self.tcap);
        let base = i * self.slice_len();
        for a in 0..=k {
            for b in 0..=l {
                let x = &p[a * (l + 1) + b];
                if x.is_zero() {
                    continue;
                }
                for c in 0..=k - a {
                    for d in 0..=l - b {
                        let y = &q[c * (l + 1) + d];
                        if y.is_zero() {
                            continue;
                        }
                        let t = &mut self.data[base + (a + c) * (l + 1) + b + d];
                        if sign_neg {
                            let mut m = x.clone();
                            m *= y;
                            *t -= &m;
                        } else {
                            t.mul_acc(x, y);
                        }
                    }
                }
            }
        }
    }

    fn slice_product(&self, p: &[T], q: &[T]) -> Vec<T> {
        let mut tmp = Self::zeros(0, self.wcap, self.tcap);
        tmp.slice_mul_acc(0, p, q, false);
        tmp.data
    }

    /// Multiplicative inverse; the `x^0` slice must have a nonzero constant.
    pub fn inv(&self) -> Result<Self> {
        let h0 = self.slice0_inverse()?;
        let n = self.order;
        let s = self.slice_len();
        let mut h = Self::zeros(n, self.wcap, self.tcap);
        h.data[..s].clone_from_slice(&h0);
        let sup = self.supports();
        for m in 1..=n {
            let mut acc = Self::zeros(0, self.wcap, self.tcap);
            for j in 1..=m {
                if sup[j].is_none() {
                    continue;
                }
                acc.slice_mul_acc(0, self.slice(j), h.slice(m - j), true);
            }
            let v = h.slice_product(&acc.data, &h0);
            h.data[m * s..(m + 1) * s].clone_from_slice(&v);
        }
        Ok(h)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        let n = self.order.min(o.order);
        let k = self.wcap.max(o.wcap);
        let l = self.tcap.max(o.tcap);
        let inv = o.truncate(n).with_caps(k, l).inv()?;
        Ok(self.mul(&inv))
    }

    /// Formal exponential; the `x^0` slice must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.slice(0).iter().all(|c| c.is_zero()) {
            return Err(SeriesError::NonzeroConstantTerm("exp"));
        }
        let n = self.order;
        let s = self.slice_len();
        let mut g = Self::zeros(n, self.wcap, self.tcap);
        g.data[0] = T::one();
        let sup = self.supports();
        // j * f_j, precomputed
        let jf: Vec<Vec<T>> = (0..=n)
            .map(|j| {
                let js = T::from_i64(j as i64);
                self.slice(j).iter().map(|c| c.clone() * &js).collect()
            })
            .collect();
        for m in 1..=n {
            let mut acc = Self::zeros(0, self.wcap, self.tcap);
            for j in 1..=m {
                if sup[j].is_none() {
                    continue;
                }
                acc.slice_mul_acc(0, &jf[j], g.slice(m - j), false);
            }
            let inv_m = T::one() / T::from_i64(m as i64);
            for (t, v) in g.data[m * s..(m + 1) * s].iter_mut().zip(acc.data) {
                *t = v * &inv_m;
            }
        }
        Ok(g)
    }

    /// Formal logarithm; the `x^0` slice must equal 1.
    pub fn log(&self) -> Result<Self> {
        let s = self.slice(0);
        if !s[0].is_one() || !s[1..].iter().all(|c| c.is_zero()) {
            return Err(SeriesError::ConstantTermNotOne("log"));
        }
        let q = self.differentiate_x().div(&self.truncate(self.order.saturating_sub(1)))?;
        Ok(q.integrate_x())
    }

    /// Integer power by repeated squaring.
    pub fn pow_int(&self, e: u32) -> Self {
        let mut result = Self::one(self.order).with_caps(self.wcap, self.tcap);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    /// `self^b = exp(b log self)`; the `x^0` slice of `self` must equal 1.
    pub fn pow(&self, b: &Self) -> Result<Self> {
        self.log()?.mul(b).exp()
    }

    /// Square root with constant term 1, via Newton on `z^2 = self`.
    pub fn sqrt(&self) -> Result<Self> {
        let s = self.slice(0);
        if !s[0].is_one() || !s[1..].iter().all(|c| c.is_zero()) {
            return Err(SeriesError::ConstantTermNotOne("sqrt"));
        }
        let half = T::from_ratio(1, 2);
        let init = Self::one(0).with_caps(self.wcap, self.tcap);
        solve_implicit(self.order, init, |z, order| {
            let p = self.truncate(order);
            // z = z - (z^2 - p)/2, derivative 1 - z
            let phi = z.sub(&z.square().sub(&p).scale(&half));
            let dphi = Self::one(order).sub(z);
            Ok((phi, dphi))
        })
    }

    /// `d/dx`; the order drops by one.
    pub fn differentiate_x(&self) -> Self {
        let n = self.order.saturating_sub(1);
        let s = self.slice_len();
        let mut r = Self::zeros(n, self.wcap, self.tcap);
        for i in 1..=self.order {
            let f = T::from_i64(i as i64);
            for (t, v) in r.data[(i - 1) * s..i * s].iter_mut().zip(self.slice(i)) {
                *t = v.clone() * &f;
            }
        }
        r
    }

    /// Antiderivative in `x` with zero constant; the order rises by one.
    pub fn integrate_x(&self) -> Self {
        let s = self.slice_len();
        let mut r = Self::zeros(self.order + 1, self.wcap, self.tcap);
        for i in 0..=self.order {
            let f = T::one() / T::from_i64(i as i64 + 1);
            for (t, v) in r.data[(i + 1) * s..(i + 2) * s].iter_mut().zip(self.slice(i)) {
                *t = v.clone() * &f;
            }
        }
        r
    }

    /// The operator `w d/dw`.
    pub fn w_dw(&self) -> Self {
        let mut r = self.clone();
        for i in 0..=self.order {
            for a in 0..=self.wcap {
                let f = T::from_i64(a as i64);
                for b in 0..=self.tcap {
                    *r.get_mut(i, a, b) *= &f;
                }
            }
        }
        r
    }

    /// Inverse of `w d/dw`: divides the `w^k` coefficient by `k`.
    pub fn integrate_w(&self) -> Result<Self> {
        for i in 0..=self.order {
            for b in 0..=self.tcap {
                if !self.get(i, 0, b).is_zero() {
                    return Err(SeriesError::NonzeroW0Column);
                }
            }
        }
        let mut r = self.clone();
        for i in 0..=self.order {
            for a in 1..=self.wcap {
                let f = T::one() / T::from_i64(a as i64);
                for b in 0..=self.tcap {
                    *r.get_mut(i, a, b) *= &f;
                }
            }
        }
        Ok(r)
    }

    /// Substitutes `w = value`; the result has `wcap = 0`.
    pub fn eval_w(&self, value: &T) -> Self {
        let mut r = Self::zeros(self.order, 0, self.tcap);
        for i in 0..=self.order {
            let mut pw = T::one();
            for a in 0..=self.wcap {
                for b in 0..=self.tcap {
                    r.get_mut(i, 0, b).mul_acc(self.get(i, a, b), &pw);
                }
                pw *= value;
            }
        }
        r
    }

    /// Substitutes `t = value`; the result has `tcap = 0`.
    pub fn eval_t(&self, value: &T) -> Self {
        self.swap_wt().eval_w(value).swap_wt()
    }

    /// Exchanges the roles of `w` and `t`.
    pub fn swap_wt(&self) -> Self {
        let mut r = Self::zeros(self.order, self.tcap, self.wcap);
        for i in 0..=self.order {
            for a in 0..=self.wcap {
                for b in 0..=self.tcap {
                    *r.get_mut(i, b, a) = self.get(i, a, b).clone();
                }
            }
        }
        r
    }

    /// Evaluates a univariate series at a point (Horner).
    pub fn eval_x(&self, x: &T) -> T {
        let mut acc = T::zero();
        for i in (0..=self.order).rev() {
            acc *= x;
            acc += self.get(i, 0, 0);
        }
        acc
    }

    /// Substitutes `x -> c x`, multiplying `[x^i]` by `c^i`.
    pub fn rescale_x(&self, c: &T) -> Self {
        let mut r = self.clone();
        let s = self.slice_len();
        let mut p = T::one();
        for i in 0..=self.order {
            for v in r.data[i * s..(i + 1) * s].iter_mut() {
                *v *= &p;
            }
            p *= c;
        }
        r
    }

    /// Formal composition `self(inner(x), w, t)`; `inner` must be univariate
    /// with zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.wcap != 0 || inner.tcap != 0 {
            return Err(SeriesError::Shape("compose: inner series must be univariate".into()));
        }
        if !inner.data[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm("compose"));
        }
        let n = self.order.min(inner.order);
        let inner = inner.truncate(n);
        let mut r = Self::zeros(n, self.wcap, self.tcap);
        let s = self.slice_len();
        let mut power = Self::one(n);
        for m in 0..=n {
            let slice = self.slice(m);
            if slice.iter().any(|c| !c.is_zero()) {
                for j in m..=n {
                    let p = power.get(j, 0, 0);
                    if p.is_zero() {
                        continue;
                    }
                    for (t, v) in r.data[j * s..(j + 1) * s].iter_mut().zip(slice) {
                        t.mul_acc(v, p);
                    }
                }
            }
            if m < n {
                power = power.mul(&inner);
            }
        }
        Ok(r)
    }

    /// Converts coefficients to `f64`.
    pub fn to_f64(&self) -> Series<f64> {
        Series {
            order: self.order,
            wcap: self.wcap,
            tcap: self.tcap,
            data: self.data.iter().map(|c| c.to_f64()).collect(),
        }
    }

    /// Converts coefficients from `f64` (exactly, in exact mode).
    pub fn from_f64_series(s: &Series<f64>) -> Self {
        Series {
            order: s.order,
            wcap: s.wcap,
            tcap: s.tcap,
            data: s.data.iter().map(|c| T::from_f64(*c)).collect(),
        }
    }

    /// All coefficients, in storage order.
    pub fn coefficients(&self) -> &[T] {
        &self.data
    }

    /// Largest absolute difference to `o` after alignment, as `f64`.
    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        let d = self.sub(o);
        d.data.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }
}

/// The variable `x = scale * y` of series stored in the rescaled variable `y`.
///
/// Storing `f(scale * y)` keeps float coefficients of exponentially growing
/// sequences near unit size. Products, quotients and compositions of series
/// sharing the same scale are unaffected; only explicit `x` factors and
/// derivatives need the scale.
#[derive(Clone, Debug, PartialEq)]
pub struct XVar<T> {
    pub scale: T,
}

impl<T: Scalar> XVar<T> {
    pub fn new(scale: T) -> Self {
        XVar { scale }
    }

    /// No rescaling.
    pub fn unit() -> Self {
        XVar { scale: T::one() }
    }

    /// The series `x` at the given order.
    pub fn x(&self, order: usize) -> Series<T> {
        Series::var_x(order).scale(&self.scale)
    }

    /// `d/dx` of a rescaled series.
    pub fn dx(&self, f: &Series<T>) -> Series<T> {
        f.differentiate_x().scale(&(T::one() / self.scale.clone()))
    }

    /// Inner series to substitute into a rescaled series when composing
    /// with the function `v` (itself stored rescaled).
    pub fn as_inner(&self, v: &Series<T>) -> Series<T> {
        v.scale(&(T::one() / self.scale.clone()))
    }
}

/// Solves `y = phi(y)` by Newton iteration, doubling the number of correct
/// coefficients each step.
///
/// `init` holds the `x^0` slice of the solution. `phi(y, order)` must return
/// `phi(y)` and `d phi / d y` truncated at `order`. The `x^0` slice of
/// `1 - d phi / d y` must be invertible.
pub fn solve_implicit<T, F>(order: usize, init: Series<T>, phi: F) -> Result<Series<T>>
where
    T: Scalar,
    F: Fn(&Series<T>, usize) -> Result<(Series<T>, Series<T>)>,
{
    let mut y = init.truncate(0);
    let (p0, _) = phi(&y, 0)?;
    if !p0.truncate(0).sub(&y).is_zero() {
        return Err(SeriesError::OrderZeroInconsistent);
    }
    let mut prec = 1;
    while prec <= order {
        let o = (2 * prec - 1).min(order);
        let ye = y.truncate(o);
        let (p, dp) = phi(&ye, o)?;
        let denom = Series::one(o).sub(&dp);
        let step = p.sub(&ye).div(&denom)?;
        y = ye.add(&step);
        prec = o + 1;
    }
    Ok(y.truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn uni(c: &[i64]) -> Series<Rational> {
        Series::from_coeffs(c.iter().map(|&v| Rational::from_i64(v)).collect())
    }

    #[test]
    fn product_telescopes() {
        let a = uni(&[1, 1, 0]);
        let b = uni(&[1, -1, 0]);
        assert_eq!(a.mul(&b), uni(&[1, 0, -1]));
    }

    #[test]
    fn geometric_series() {
        let g = uni(&[1, -1, 0, 0]).inv().unwrap();
        assert_eq!(g, uni(&[1, 1, 1, 1]));
        assert_eq!(uni(&[0, 1]).inv(), Err(SeriesError::ZeroDivisor));
    }

    #[test]
    fn exp_and_log() {
        let e = Series::<Rational>::var_x(3).exp().unwrap();
        assert_eq!(e.uni_coeffs(), vec![q(1, 1), q(1, 1), q(1, 2), q(1, 6)]);
        let x = Series::<Rational>::var_x(10);
        assert_eq!(x.exp().unwrap().log().unwrap(), x);
        assert!(Series::<Rational>::one(3).exp().is_err());
        assert!(x.log().is_err());
    }

    #[test]
    fn compose_identity() {
        let a = uni(&[0, 1, 3, 11, 45]);
        assert_eq!(a.compose(&Series::var_x(4)).unwrap(), a);
        assert!(a.compose(&Series::one(4)).is_err());
    }

    #[test]
    fn compose_leaves_w_polynomial() {
        let p = Series::<Rational>::one(5).add(&Series::var_w(5, 1));
        let inner = uni(&[0, 1, 1, 1, 1, 1]);
        assert_eq!(p.compose(&inner).unwrap(), p);
    }

    #[test]
    fn derivative_and_w_integration() {
        assert_eq!(uni(&[0, 0, 1]).differentiate_x(), uni(&[0, 2]));
        let w2 = Series::<Rational>::var_w(3, 4).square();
        assert_eq!(w2.w_dw().integrate_w().unwrap(), w2);
        assert_eq!(Series::<Rational>::one(2).with_caps(2, 0).integrate_w(), Err(SeriesError::NonzeroW0Column));
    }

    #[test]
    fn geometric_fixed_point() {
        // y = x (1 + y)
        let x = Series::<Rational>::var_x(8);
        let y = solve_implicit(8, Series::zeros(0, 0, 0), |y, o| {
            let xo = x.truncate(o);
            Ok((xo.mul(&Series::one(o).add(y)), xo))
        })
        .unwrap();
        assert_eq!(y, uni(&[0, 1, 1, 1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn inconsistent_start_is_rejected() {
        let r = solve_implicit(4, Series::<Rational>::zeros(0, 0, 0), |_, o| {
            Ok((Series::one(o), Series::zeros(o, 0, 0)))
        });
        assert_eq!(r, Err(SeriesError::OrderZeroInconsistent));
    }

    #[test]
    fn sqrt_of_schroeder_discriminant() {
        // z^2 = 1 - 6x + x^2, and A = (1 - 3x - z)/(4x) has coefficients 1, 3, 11, 45, 197
        let p = uni(&[1, -6, 1, 0, 0, 0, 0]);
        let z = p.sqrt().unwrap();
        assert_eq!(z.square(), p);
        let num = uni(&[1, -3, 0, 0, 0, 0, 0]).sub(&z);
        let a: Vec<Rational> = (1..=5).map(|i| num.coeff(i + 1, 0, 0) / Rational::from_i64(4)).collect();
        assert_eq!(a, [1, 3, 11, 45, 197].map(Rational::from_i64).to_vec());
    }

    #[test]
    fn bivariate_inverse() {
        // 1/(1 - x w) = sum x^i w^i
        let n = 5;
        let xw = Series::<Rational>::var_x(n).mul(&Series::var_w(n, 5));
        let g = Series::one(n).sub(&xw).inv().unwrap();
        for i in 0..=n {
            for a in 0..=5 {
                let expect = if i == a { q(1, 1) } else { q(0, 1) };
                assert_eq!(g.coeff(i, a, 0), expect);
            }
        }
    }

    #[test]
    fn inverse_with_w_dependent_constant() {
        // 1/(1 + w) with caps: 1 - w + w^2 - ...
        let s = Series::<Rational>::one(2).add(&Series::var_w(2, 4));
        let g = s.inv().unwrap();
        assert_eq!(g.w_row(0), vec![q(1, 1), q(-1, 1), q(1, 1), q(-1, 1), q(1, 1)]);
        assert_eq!(g.mul(&s).truncate(2), Series::one(2).with_caps(4, 0));
    }

    #[test]
    fn trivariate_outer_product() {
        let n = 4;
        let fw = Series::<Rational>::one(n).sub(&Series::var_x(n).mul(&Series::var_w(n, 3))).inv().unwrap();
        let gt = fw.swap_wt();
        let p = fw.mul(&gt);
        assert_eq!(p.wcap(), 3);
        assert_eq!(p.tcap(), 3);
        // [x^2] = w^2 + w t + t^2
        assert_eq!(p.coeff(2, 1, 1), q(1, 1));
        assert_eq!(p.coeff(2, 2, 0), q(1, 1));
        assert_eq!(p.coeff(2, 0, 2), q(1, 1));
        assert_eq!(p.coeff(2, 2, 2), q(0, 1));
        assert_eq!(p.swap_wt(), p);
    }

    #[test]
    fn eval_and_shift() {
        let n = 3;
        let s = Series::<Rational>::var_w(n, 3).add(&Series::var_x(n)).shift(1, 1, 0);
        assert_eq!(s.coeff(1, 2, 0), q(1, 1));
        assert_eq!(s.coeff(2, 1, 0), q(1, 1));
        let e = s.eval_w(&q(2, 1));
        assert_eq!(e.uni_coeffs(), vec![q(0, 1), q(4, 1), q(2, 1), q(0, 1)]);
    }

    #[test]
    fn float_matches_exact() {
        let p = uni(&[1, -6, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let ze = p.sqrt().unwrap().to_f64();
        let zf = p.to_f64().sqrt().unwrap();
        for (a, b) in ze.uni_coeffs().iter().zip(zf.uni_coeffs()) {
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = uni(&[1, 2, 3, 4, 5]);
        let three = Series::constant(Rational::from_i64(3), 4);
        assert_eq!(a.pow(&three).unwrap(), a.mul(&a).mul(&a));
        assert_eq!(a.pow_int(3), a.mul(&a).mul(&a));
    }
}
