//! Vertex-rooted generating functions shared by every class.

use crate::class::GraphClass;
use crate::scalar::Scalar;
use crate::series::{BiSeries, TriSeries, UniSeries, XVar};

/// `G'`, `G•` and optionally `G••` for one class, stored in the rescaled
/// variable of `var`.
///
/// Roots are unlabelled and not counted in the `x` exponent; `w` and `t`
/// mark root degrees.
#[derive(Clone, Debug)]
pub struct RootedGf<T: Scalar> {
    pub class: GraphClass,
    pub var: XVar<T>,
    pub g_prime: UniSeries<T>,
    pub g_rooted: BiSeries<T>,
    pub g_double: Option<TriSeries<T>>,
}

impl<T: Scalar> RootedGf<T> {
    /// `G''`, the derivative of `G'`.
    pub fn g_second(&self) -> UniSeries<T> {
        self.var.dx(&self.g_prime)
    }

    /// Largest `x` order available for single-vertex statistics.
    pub fn order(&self) -> usize {
        self.g_prime.order().min(self.g_rooted.order())
    }
}
