//! Lift from 2-connected blocks to connected graphs.

use crate::class::{Connectivity, Family, GraphClass};
use crate::rooted::RootedGf;
use crate::scalar::Scalar;
use crate::series::{solve_implicit, Result, Series, UniSeries, XVar};
use crate::{outerplanar, sp};

/// Connected series for one family, with `v = x C'(x)`.
#[derive(Clone, Debug)]
pub struct ConnectedBundle<T: Scalar> {
    pub rooted: RootedGf<T>,
    pub v: UniSeries<T>,
}

/// Solves `v = x exp(B'(v))` from the block series.
pub fn solve_v<T: Scalar>(block: &RootedGf<T>) -> Result<UniSeries<T>> {
    let var = &block.var;
    let n = block.g_prime.order();
    let bp = &block.g_prime;
    // B'' is only ever multiplied by x, so padding its top coefficient with 0 is harmless
    let bpp = block.g_second().truncate(n);
    solve_implicit(n, Series::zeros(0, 0, 0), |v, o| {
        let inner = var.as_inner(v);
        let xe = var.x(o).mul(&bp.truncate(o).compose(&inner)?.exp()?);
        let d = xe.mul(&bpp.truncate(o).compose(&inner)?);
        Ok((xe, d))
    })
}

/// `C'`, `C•` and, when the block series carries it, `C••`.
pub fn build_connected<T: Scalar>(block: &RootedGf<T>) -> Result<ConnectedBundle<T>> {
    let var = block.var.clone();
    let v = solve_v(block)?;
    let inner = var.as_inner(&v);
    let c_prime = block.g_prime.compose(&inner)?.exp()?;
    let c_rooted = block.g_rooted.compose(&inner)?.exp()?;
    let c_double = match &block.g_double {
        Some(bdd) => {
            let (k, l) = (bdd.wcap(), bdd.tcap());
            let cw = c_rooted.with_caps(k, 0);
            let ct = c_rooted.swap_wt().with_caps(0, l);
            let n = c_rooted.order();
            // same block: x / v' * dC•(w)/dx * dC•(t)/dx
            let vp = var.dx(&v);
            let same = var
                .x(n - 1)
                .div(&vp)?
                .mul(&var.dx(&cw))
                .mul(&var.dx(&ct));
            let different = bdd.compose(&inner)?.mul(&cw).mul(&ct);
            Some(same.add(&different))
        }
        None => None,
    };
    let class = GraphClass { connectivity: Connectivity::Connected, family: block.class.family };
    Ok(ConnectedBundle {
        rooted: RootedGf { class, var, g_prime: c_prime, g_rooted: c_rooted, g_double: c_double },
        v,
    })
}

/// Rooted series of any class up to `x^order`, with root-degree caps `wcap`
/// and, if pair statistics are wanted, `tcap`.
pub fn rooted_for_class<T: Scalar>(
    class: GraphClass,
    order: usize,
    wcap: usize,
    tcap: Option<usize>,
    var: XVar<T>,
) -> Result<RootedGf<T>> {
    let block = match class.family {
        Family::Outerplanar => outerplanar::rooted_2conn(order, wcap, tcap, var)?,
        Family::SeriesParallel => sp::rooted_2conn(order, wcap, tcap, var)?,
    };
    match class.connectivity {
        Connectivity::TwoConnected => Ok(block),
        Connectivity::Connected => Ok(build_connected(&block)?.rooted),
    }
}
