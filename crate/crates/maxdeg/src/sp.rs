//! Series-parallel networks and rooted 2-connected series-parallel graphs.

use crate::class::GraphClass;
use crate::rooted::RootedGf;
use crate::scalar::Scalar;
use crate::series::{solve_implicit, BiSeries, Result, Series, TriSeries, UniSeries, XVar};

/// Every series-parallel series in the rescaled variable of `var`.
#[derive(Clone, Debug)]
pub struct SpGfBundle<T: Scalar> {
    pub var: XVar<T>,
    /// All networks, by non-pole vertices.
    pub e: UniSeries<T>,
    /// Series networks.
    pub s: UniSeries<T>,
    pub d: BiSeries<T>,
    pub s_w: BiSeries<T>,
    pub d1: TriSeries<T>,
    pub s1: TriSeries<T>,
    pub d2: TriSeries<T>,
    pub s2: TriSeries<T>,
    /// 2-connected graphs, by vertices.
    pub b: UniSeries<T>,
    pub b_prime: UniSeries<T>,
    pub b_rooted: BiSeries<T>,
    pub b_double: TriSeries<T>,
}

/// `E(x)` from `E = 2 exp(x E^2 / (1 + x E)) - 1`.
pub fn networks<T: Scalar>(order: usize, var: &XVar<T>) -> Result<UniSeries<T>> {
    let two = T::from_i64(2);
    solve_implicit(order, Series::one(0), |e, o| {
        let xe = var.x(o).mul(e);
        let one_xe = xe.add_scalar(&T::one());
        let inv = one_xe.inv()?;
        let g = xe.mul(e).mul(&inv);
        let eg = g.exp()?;
        let phi = eg.scale(&two).add_scalar(&-T::one());
        // d g / d E = x E (2 + x E) / (1 + x E)^2
        let dg = xe.mul(&xe.add_scalar(&two)).mul(&inv.square());
        Ok((phi, eg.scale(&two).mul(&dg)))
    })
}

/// `h = x E / (1 + x E)`.
fn h_series<T: Scalar>(e: &UniSeries<T>, var: &XVar<T>) -> Result<UniSeries<T>> {
    let xe = var.x(e.order()).mul(e);
    xe.div(&xe.add_scalar(&T::one()))
}

/// `D(x, w)` from `D = (1 + w) exp(h D) - 1` with `D(0, w) = w`.
pub fn networks_w<T: Scalar>(e: &UniSeries<T>, wcap: usize, var: &XVar<T>) -> Result<BiSeries<T>> {
    let h = h_series(e, var)?;
    solve_implicit(e.order(), Series::var_w(0, wcap), |d, o| {
        let ht = h.truncate(o);
        let one_w = Series::var_w(o, wcap).add_scalar(&T::one());
        let ex = one_w.mul(&ht.mul(d).exp()?);
        Ok((ex.add_scalar(&-T::one()), ex.mul(&ht)))
    })
}

/// `B'(x) = x (E - x E^2 (1 + E/2) / (1 + x E))`, the rooted series at `w = 1`.
pub fn block_derivative<T: Scalar>(e: &UniSeries<T>, var: &XVar<T>) -> Result<UniSeries<T>> {
    rooted_from(e, e, var)
}

/// `B•(x, w) = x (D - h D (1 + D/2))`.
fn rooted_from<T: Scalar>(e: &UniSeries<T>, d: &Series<T>, var: &XVar<T>) -> Result<Series<T>> {
    let h = h_series(e, var)?;
    let half = T::from_ratio(1, 2);
    let inner = d.sub(&h.mul(d).mul(&d.scale(&half).add_scalar(&T::one())));
    Ok(var.x(e.order()).mul(&inner))
}

/// `B(x) = log(1 + xE)/2 - xE (x^2 E^2 + xE + 2 - 2x) / (4 (1 + xE))`.
pub fn blocks<T: Scalar>(e: &UniSeries<T>, var: &XVar<T>) -> Result<UniSeries<T>> {
    let x = var.x(e.order());
    let xe = x.mul(e);
    let one_xe = xe.add_scalar(&T::one());
    let poly = xe.square().add(&xe).add_scalar(&T::from_i64(2)).sub(&x.scale(&T::from_i64(2)));
    let rational = xe.mul(&poly).div(&one_xe.scale(&T::from_i64(4)))?;
    Ok(one_xe.log()?.scale(&T::from_ratio(1, 2)).sub(&rational))
}

/// `1 - 2 x E^2 - x^2 E^3`.
pub fn delta<T: Scalar>(e: &UniSeries<T>, var: &XVar<T>) -> UniSeries<T> {
    let xe = var.x(e.order()).mul(e);
    let xe2 = xe.mul(e);
    Series::one(e.order())
        .sub(&xe2.scale(&T::from_i64(2)))
        .sub(&xe2.mul(&xe))
}

/// The double-rooted network series, in the order `(D_1, S_1, D_2, S_2)`.
pub struct DoubleNetworks<T: Scalar> {
    pub d1: TriSeries<T>,
    pub s1: TriSeries<T>,
    pub d2: TriSeries<T>,
    pub s2: TriSeries<T>,
}

/// Closed forms for `D_1, S_1, D_2, S_2` given `E`, `D(x,w)`, `D(x,t)` and the
/// denominator `delta`.
fn double_networks_with<T: Scalar>(
    e: &UniSeries<T>,
    dw: &Series<T>,
    dt: &Series<T>,
    delta: &UniSeries<T>,
    var: &XVar<T>,
) -> Result<DoubleNetworks<T>> {
    let order = e.order();
    let one = T::one();
    let x = var.x(order);
    let xe = x.mul(e);
    let one_xe = xe.add_scalar(&one);
    let alpha = x.div(&one_xe)?;
    let s1 = alpha.mul(dw).mul(dt);
    let wt = Series::var_w(order, dw.wcap()).mul(&Series::var_t(order, dt.tcap()));
    let d1 = wt.add_scalar(&one).mul(&s1.exp()?).add_scalar(&-one.clone());
    let inv_w = Series::one(order).sub(&xe.mul(dw)).inv()?;
    let coef = x.mul(&xe).mul(&one_xe).div(delta)?;
    let s2 = x
        .mul(dt)
        .mul(&inv_w)
        .mul(&d1)
        .add(&coef.mul(dw).mul(&dt.square()).mul(&inv_w));
    let d2 = dw.add_scalar(&one).mul(&s2);
    Ok(DoubleNetworks { d1, s1, d2, s2 })
}

/// `D_1, S_1, D_2, S_2` with caps `wcap`, `tcap`.
pub fn double_networks<T: Scalar>(
    e: &UniSeries<T>,
    d: &BiSeries<T>,
    wcap: usize,
    tcap: usize,
    var: &XVar<T>,
) -> Result<DoubleNetworks<T>> {
    let dw = d.with_caps(wcap, 0);
    let dt = d.swap_wt().with_caps(0, tcap);
    double_networks_with(e, &dw, &dt, &delta(e, var), var)
}

/// `B••` from `w d/dw B•• = wt exp(S_1) + w exp(S(x, w)) S_2`.
fn double_from<T: Scalar>(s_w: &BiSeries<T>, net: &DoubleNetworks<T>) -> Result<TriSeries<T>> {
    let order = net.s1.order();
    let w = Series::var_w(order, net.s1.wcap());
    let t = Series::var_t(order, net.s1.tcap());
    let first = w.mul(&t).mul(&net.s1.exp()?);
    let second = w.mul(&s_w.exp()?).mul(&net.s2);
    first.add(&second).integrate_w()
}

impl<T: Scalar> SpGfBundle<T> {
    pub fn build(order: usize, wcap: usize, tcap: usize, var: XVar<T>) -> Result<Self> {
        // one extra order so that B' = dB/dx reaches `order`
        let e_ext = networks(order + 1, &var)?;
        let b = blocks(&e_ext, &var)?;
        let e = e_ext.truncate(order);
        let x = var.x(order);
        let xe = x.mul(&e);
        let s = xe.mul(&e).div(&xe.add_scalar(&T::one()))?;
        let d = networks_w(&e, wcap.max(tcap), &var)?;
        let h = h_series(&e, &var)?;
        let s_w = h.mul(&d).with_caps(wcap, 0);
        let net = double_networks(&e, &d, wcap, tcap, &var)?;
        let b_prime = block_derivative(&e, &var)?;
        let b_rooted = rooted_from(&e, &d.with_caps(wcap, 0), &var)?;
        let b_double = double_from(&s_w, &net)?;
        Ok(SpGfBundle {
            var,
            e,
            s,
            d: d.with_caps(wcap, 0),
            s_w,
            d1: net.d1,
            s1: net.s1,
            d2: net.d2,
            s2: net.s2,
            b,
            b_prime,
            b_rooted,
            b_double,
        })
    }

    pub fn rooted(&self) -> RootedGf<T> {
        RootedGf {
            class: GraphClass::TWO_CONN_SP,
            var: self.var.clone(),
            g_prime: self.b_prime.clone(),
            g_rooted: self.b_rooted.clone(),
            g_double: Some(self.b_double.clone()),
        }
    }
}

/// Rooted 2-connected series-parallel series; the pair series only when `tcap` is given.
pub fn rooted_2conn<T: Scalar>(order: usize, wcap: usize, tcap: Option<usize>, var: XVar<T>) -> Result<RootedGf<T>> {
    let e = networks(order, &var)?;
    let cap = wcap.max(tcap.unwrap_or(0));
    let d = networks_w(&e, cap, &var)?;
    let g_double = match tcap {
        Some(l) => {
            let net = double_networks(&e, &d, wcap, l, &var)?;
            let s_w = h_series(&e, &var)?.mul(&d).with_caps(wcap, 0);
            Some(double_from(&s_w, &net)?)
        }
        None => None,
    };
    Ok(RootedGf {
        class: GraphClass::TWO_CONN_SP,
        g_prime: block_derivative(&e, &var)?,
        g_rooted: rooted_from(&e, &d.with_caps(wcap, 0), &var)?,
        g_double,
        var,
    })
}
