//! Reduction of the Pexider variant `a(x) + b(y) = c(w(x) y)` to a single
//! logarithmic solution plus additive constants.

use crate::descriptor::AlgebraDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::tolerance::Tolerance;

use super::{sampling, Law, LawKind, ResidualReport};

/// A sampled real function on the cone.
pub type ConeFn<'a> = dyn Fn(&Element) -> f64 + 'a;

/// Recovers the constants of a Pexider triple: with `b0 = b(e)` and
/// `a0 = c(e) - b0`, the function `f = c - a0 - b0` must satisfy
/// `a = f + a0`, `b = f + b0` (both algorithms fix `e`), and the plain
/// logarithmic equation `f(x) + f(y) = f(w(x) y)`. All three are verified on
/// deterministically sampled cone pairs; an inconsistent triple is rejected
/// with [`Error::ToleranceExceeded`].
///
/// Returns `(a0, b0, report)`; the recovered solution is evaluable as
/// `f(x) = c(x) - a0 - b0`.
#[allow(clippy::too_many_arguments)]
pub fn pexider_reduce(
    a_fn: &ConeFn,
    b_fn: &ConeFn,
    c_fn: &ConeFn,
    desc: AlgebraDescriptor,
    law: &Law,
    n_samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<(f64, f64, ResidualReport)> {
    if let Law::W2 { frame } = law {
        frame.descriptor().check_same(&desc)?;
    }
    let e = Element::identity(desc);
    let b0 = b_fn(&e);
    let a0 = c_fn(&e) - b0;
    let f = |x: &Element| c_fn(x) - a0 - b0;

    let mut max_abs = 0.0_f64;
    let mut max_rel = 0.0_f64;
    for index in 0..n_samples {
        let (x, y) = sampling::cone_pair(desc, seed, index as u64);
        let wxy = law.apply(&x, &y)?;
        let residuals = [
            a_fn(&x) - (f(&x) + a0),
            b_fn(&y) - (f(&y) + b0),
            f(&x) + f(&y) - f(&wxy),
            a_fn(&x) + b_fn(&y) - c_fn(&wxy),
        ];
        for r in residuals {
            let abs = r.abs();
            max_abs = max_abs.max(abs);
        }
        let scale = f(&x).abs().max(f(&y).abs()).max(1.0);
        max_rel = max_rel.max(max_abs / scale);
    }
    let report = ResidualReport {
        law: LawKind::Pexider,
        samples: n_samples,
        max_abs_residual: max_abs,
        max_rel_residual: max_rel,
        seed,
        pass: max_abs <= tol.abs,
    };
    if !report.pass {
        return Err(Error::ToleranceExceeded {
            what: "pexider triple consistency".into(),
            residual: max_abs,
        });
    }
    Ok((a0, b0, report))
}
