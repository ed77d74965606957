//! Dissections and rooted 2-connected outerplanar graphs.

use crate::class::GraphClass;
use crate::rooted::RootedGf;
use crate::scalar::Scalar;
use crate::series::{solve_implicit, BiSeries, Result, Series, TriSeries, UniSeries, XVar};

/// Every outerplanar series in the rescaled variable of `var`.
#[derive(Clone, Debug)]
pub struct OuterplanarGfBundle<T: Scalar> {
    pub var: XVar<T>,
    /// Dissections of polygons, by vertices beyond the root edge.
    pub a: UniSeries<T>,
    /// `S(x) = 2A(x) + 1`.
    pub s: UniSeries<T>,
    pub a_w: BiSeries<T>,
    pub s_w: BiSeries<T>,
    pub a1: TriSeries<T>,
    pub a2: TriSeries<T>,
    pub s2: TriSeries<T>,
    pub b_prime: UniSeries<T>,
    pub b_rooted: BiSeries<T>,
    pub b_double: TriSeries<T>,
}

/// `A(x)` from the closed form `(1 - 3x - sqrt(1 - 6x + x^2)) / (4x)`, and `S = 2A + 1`.
pub fn build_dissections<T: Scalar>(order: usize, var: &XVar<T>) -> Result<(UniSeries<T>, UniSeries<T>)> {
    let x = var.x(order + 1);
    let disc = Series::one(order + 1)
        .sub(&x.scale(&T::from_i64(6)))
        .add(&x.square());
    let num = Series::one(order + 1).sub(&x.scale(&T::from_i64(3))).sub(&disc.sqrt()?);
    // num / (4x): drop the vanishing constant term
    let c = T::one() / (T::from_i64(4) * var.scale.clone());
    let a = Series::from_coeffs((1..=order + 1).map(|i| num.coeff(i, 0, 0) * &c).collect());
    let s = a.scale(&T::from_i64(2)).add_scalar(&T::one());
    Ok((a, s))
}

/// `A(x)` by Newton iteration on `A = x(1 + A)(1 + 2A)`.
pub fn dissections_by_newton<T: Scalar>(order: usize, var: &XVar<T>) -> Result<UniSeries<T>> {
    let two = T::from_i64(2);
    solve_implicit(order, Series::zeros(0, 0, 0), |a, o| {
        let x = var.x(o);
        let one = Series::one(o);
        let phi = x.mul(&one.add(a)).mul(&one.add(&a.scale(&two)));
        let dphi = x.mul(&a.scale(&T::from_i64(4)).add_scalar(&T::from_i64(3)));
        Ok((phi, dphi))
    })
}

/// `u = x(2A + 1)`.
fn u_series<T: Scalar>(s: &UniSeries<T>, var: &XVar<T>) -> UniSeries<T> {
    var.x(s.order()).mul(s)
}

/// `1 / (1 - m u)` for a marker series `m` (a variable or the constant 1).
fn geometric<T: Scalar>(m: &Series<T>, u: &UniSeries<T>) -> Result<Series<T>> {
    let mu = m.mul(u);
    Series::one(mu.order()).sub(&mu).inv()
}

/// `A(x, w) = w^2 u / (1 - w u)`.
pub fn dissections_w<T: Scalar>(s: &UniSeries<T>, wcap: usize, var: &XVar<T>) -> Result<BiSeries<T>> {
    let n = s.order();
    let u = u_series(s, var);
    let w = Series::var_w(n, wcap);
    Ok(w.square().mul(&u).mul(&geometric(&w, &u)?))
}

/// `S(x, w) = w(1 + u) / (1 - w u)`.
pub fn series_w<T: Scalar>(s: &UniSeries<T>, wcap: usize, var: &XVar<T>) -> Result<BiSeries<T>> {
    let n = s.order();
    let u = u_series(s, var);
    let w = Series::var_w(n, wcap);
    Ok(w.mul(&u.add_scalar(&T::one())).mul(&geometric(&w, &u)?))
}

/// `B•(x, w) = xw + (x w^2 / 2) u / (1 - u w)`.
pub fn build_rooted_2conn<T: Scalar>(s: &UniSeries<T>, wcap: usize, var: &XVar<T>) -> Result<BiSeries<T>> {
    let n = s.order();
    let x = var.x(n);
    let w = Series::var_w(n, wcap);
    let u = u_series(s, var);
    let tail = x.mul(&w.square()).mul(&u).mul(&geometric(&w, &u)?);
    Ok(x.mul(&w).add(&tail.scale(&T::from_ratio(1, 2))))
}

/// `B'(x) = x + x A(x) / 2`.
pub fn block_derivative<T: Scalar>(a: &UniSeries<T>, var: &XVar<T>) -> UniSeries<T> {
    let x = var.x(a.order());
    x.add(&x.mul(a).scale(&T::from_ratio(1, 2)))
}

/// `A_1` with root-degree markers `m` and `nm` (variables or constants).
fn a1_with<T: Scalar>(m: &Series<T>, nm: &Series<T>, s: &UniSeries<T>, var: &XVar<T>) -> Result<Series<T>> {
    let order = s.order();
    let x = var.x(order);
    let u = u_series(s, var);
    let num = x.mul(&m.square()).mul(&nm.square()).mul(&u.add_scalar(&T::one()));
    Ok(num.mul(&geometric(m, &u)?).mul(&geometric(nm, &u)?))
}

/// `A_2` with markers `m` (first root-edge vertex) and `nm` (extra root).
fn a2_with<T: Scalar>(
    m: &Series<T>,
    nm: &Series<T>,
    a: &UniSeries<T>,
    s: &UniSeries<T>,
    var: &XVar<T>,
) -> Result<Series<T>> {
    let order = s.order();
    let x = var.x(order);
    let one = T::one();
    let u = u_series(s, var);
    let p1 = Series::one(order).sub(&x.mul(&a.scale(&T::from_i64(4)).add_scalar(&one)));
    let p2 = Series::one(order).sub(&a.scale(&T::from_i64(2))).add(&u);
    let cross = m.mul(nm).sub(m).sub(nm);
    let bracket = p1.add(&x.mul(&cross).mul(&p2));
    let num = x.mul(&m.square()).mul(&nm.square()).mul(&u.add_scalar(&one)).mul(&bracket);
    let gm = geometric(m, &u)?;
    let gn = geometric(nm, &u)?;
    let last = Series::one(order)
        .sub(&x.mul(&a.scale(&T::from_i64(4)).add_scalar(&T::from_i64(3))))
        .inv()?;
    Ok(num.mul(&gm.square()).mul(&gn.square()).mul(&last))
}

/// The trivariate dissection series `A_1`, `A_2`, `S_2`.
pub fn double_dissections<T: Scalar>(
    a: &UniSeries<T>,
    s: &UniSeries<T>,
    wcap: usize,
    tcap: usize,
    var: &XVar<T>,
) -> Result<(TriSeries<T>, TriSeries<T>, TriSeries<T>)> {
    let order = s.order();
    let w = Series::var_w(order, wcap);
    let t = Series::var_t(order, tcap);
    let one = Series::one(order);
    let x = var.x(order);
    let a1 = a1_with(&w, &t, s, var)?;
    let a2 = a2_with(&w, &t, a, s, var)?;
    // S_2(x, 1, t) = 2 A_2(x, 1, t)
    let s2_one = a2_with(&one, &t, a, s, var)?.scale(&T::from_i64(2));
    let s_t = series_w(s, tcap, var)?.swap_wt();
    let a_w = dissections_w(s, wcap, var)?;
    let wt = w.mul(&t);
    let s2 = a2
        .mul(&x.mul(s).add_scalar(&T::one()))
        .add(&wt.add(&a1).mul(&x).mul(&s_t))
        .add(&w.add(&a_w).mul(&x).mul(&s2_one));
    Ok((a1, a2, s2))
}

/// `B••(x, w, t) = wt + A_1/2 + A_2/2`.
pub fn build_double_2conn<T: Scalar>(
    a: &UniSeries<T>,
    s: &UniSeries<T>,
    wcap: usize,
    tcap: usize,
    var: &XVar<T>,
) -> Result<TriSeries<T>> {
    let order = s.order();
    let w = Series::var_w(order, wcap);
    let t = Series::var_t(order, tcap);
    let a1 = a1_with(&w, &t, s, var)?;
    let a2 = a2_with(&w, &t, a, s, var)?;
    Ok(w.mul(&t).add(&a1.add(&a2).scale(&T::from_ratio(1, 2))))
}

impl<T: Scalar> OuterplanarGfBundle<T> {
    pub fn build(order: usize, wcap: usize, tcap: usize, var: XVar<T>) -> Result<Self> {
        let (a, s) = build_dissections(order, &var)?;
        let a_w = dissections_w(&s, wcap, &var)?;
        let s_w = series_w(&s, wcap, &var)?;
        let (a1, a2, s2) = double_dissections(&a, &s, wcap, tcap, &var)?;
        let b_prime = block_derivative(&a, &var);
        let b_rooted = build_rooted_2conn(&s, wcap, &var)?;
        let b_double = Series::var_w(order, wcap)
            .mul(&Series::var_t(order, tcap))
            .add(&a1.add(&a2).scale(&T::from_ratio(1, 2)));
        Ok(OuterplanarGfBundle { var, a, s, a_w, s_w, a1, a2, s2, b_prime, b_rooted, b_double })
    }

    pub fn rooted(&self) -> RootedGf<T> {
        RootedGf {
            class: GraphClass::TWO_CONN_OUTERPLANAR,
            var: self.var.clone(),
            g_prime: self.b_prime.clone(),
            g_rooted: self.b_rooted.clone(),
            g_double: Some(self.b_double.clone()),
        }
    }
}

/// Rooted 2-connected outerplanar series; the pair series only when `tcap` is given.
pub fn rooted_2conn<T: Scalar>(order: usize, wcap: usize, tcap: Option<usize>, var: XVar<T>) -> Result<RootedGf<T>> {
    let (a, s) = build_dissections(order, &var)?;
    let g_double = match tcap {
        Some(l) => Some(build_double_2conn(&a, &s, wcap, l, &var)?),
        None => None,
    };
    Ok(RootedGf {
        class: GraphClass::TWO_CONN_OUTERPLANAR,
        g_prime: block_derivative(&a, &var),
        g_rooted: build_rooted_2conn(&s, wcap, &var)?,
        g_double,
        var,
    })
}
