//! The functional-equation verification lab.
//!
//! A *multiplication algorithm* is a map `w` from the cone into the
//! automorphism group with `w(x) e = x`. Two are implemented: `w1(x) =
//! P(x^{1/2})` and `w2(x) = t_x`, the triangular algorithm. The lab samples
//! cone pairs deterministically and reports the worst residual of
//!
//! `f(x) + f(y) = f(w(x) y)`
//!
//! for logarithmic solution families, along with determinant
//! multiplicativity, witness-pair construction, triangular-group characters,
//! the Pexider variant, and the polar reduction of identity-invariant
//! solutions.

mod character;
mod kgroup;
mod pexider;
pub mod sampling;
mod witness;

pub use character::{character_multiplicativity, character_of, triangular_character};
pub use kgroup::{
    k_invariance_reduction_check, polar_k_factor, random_k_automorphism, random_k_with,
};
pub use pexider::{pexider_reduce, ConeFn};
pub use witness::{alpha_sup, witness_candidate, witness_pair, WitnessPair};

use serde::{Deserialize, Serialize};

use crate::descriptor::AlgebraDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::peirce::JordanFrame;
use crate::tolerance::Tolerance;
use crate::triangular;

/// `P(x^{1/2}) y`: the quadratic-representation multiplication algorithm.
pub fn w1_apply(x: &Element, y: &Element) -> Result<Element> {
    let sqrt = x
        .sqrt()
        .map_err(|_| Error::NotInCone("w1 requires a cone element".into()))?;
    Operator::quad_rep(&sqrt).apply(y)
}

/// `t_x y`: the triangular multiplication algorithm for the given frame.
pub fn w2_apply(x: &Element, y: &Element, frame: &JordanFrame) -> Result<Element> {
    triangular::t_apply(&triangular::triangular_decompose(x, frame)?, y)
}

/// Which law a report measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawKind {
    W1,
    W2,
    Pexider,
    Character,
    DetMult,
    KInvariance,
}

/// A multiplication algorithm; `W2` carries the frame of its triangular
/// group.
#[derive(Debug, Clone)]
pub enum Law {
    W1,
    W2 { frame: JordanFrame },
}

impl Law {
    pub fn kind(&self) -> LawKind {
        match self {
            Law::W1 => LawKind::W1,
            Law::W2 { .. } => LawKind::W2,
        }
    }

    pub fn apply(&self, x: &Element, y: &Element) -> Result<Element> {
        match self {
            Law::W1 => w1_apply(x, y),
            Law::W2 { frame } => w2_apply(x, y, frame),
        }
    }
}

/// A regular logarithmic solution family.
///
/// `DetLog` evaluates `s * log det x`; `MinorLog` evaluates
/// `sum_k s_k log Delta_k(x)` against its own frame. Non-measurable
/// solutions of the underlying scalar equation exist only via choice axioms
/// and are not representable here.
#[derive(Debug, Clone)]
pub enum LogFamily {
    DetLog { s: f64 },
    MinorLog { s: Vec<f64>, frame: JordanFrame },
}

impl LogFamily {
    pub fn eval(&self, x: &Element) -> Result<f64> {
        match self {
            LogFamily::DetLog { s } => {
                let det = x.det();
                if det <= 0.0 {
                    return Err(Error::NotInCone(format!("det = {det:.3e}")));
                }
                Ok(s * det.ln())
            }
            LogFamily::MinorLog { s, frame } => {
                if s.len() != frame.len() {
                    return Err(Error::InvalidInput(format!(
                        "family has {} exponents for rank {}",
                        s.len(),
                        frame.len()
                    )));
                }
                let mut acc = 0.0;
                for (k, sk) in s.iter().enumerate() {
                    if *sk == 0.0 {
                        continue;
                    }
                    let minor = triangular::principal_minor(x, k + 1, frame)?;
                    if minor <= 0.0 {
                        return Err(Error::NotInCone(format!(
                            "principal minor {} is {minor:.3e}",
                            k + 1
                        )));
                    }
                    acc += sk * minor.ln();
                }
                Ok(acc)
            }
        }
    }

    /// `f(e) = 0` for every family.
    pub fn vanishes_at_identity(&self, desc: AlgebraDescriptor) -> Result<bool> {
        Ok(self.eval(&Element::identity(desc))?.abs() < 1e-12)
    }
}

/// Outcome of a sampled residual suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub law: LawKind,
    pub samples: usize,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub seed: u64,
    pub pass: bool,
}

/// Residual suite for `f(x) + f(y) = f(w(x) y)` over deterministically
/// sampled cone pairs. Function-value residuals are judged on the absolute
/// scale (the logarithm is already relative): `pass` means
/// `max |f(x) + f(y) - f(w(x) y)| <= tol.abs`.
pub fn check_cauchy(
    desc: AlgebraDescriptor,
    law: &Law,
    family: &LogFamily,
    n_samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<ResidualReport> {
    if let Law::W2 { frame } = law {
        frame.descriptor().check_same(&desc)?;
    }
    let mut max_abs = 0.0_f64;
    let mut max_rel = 0.0_f64;
    for index in 0..n_samples {
        let (x, y) = sampling::cone_pair(desc, seed, index as u64);
        let lhs = family.eval(&x)? + family.eval(&y)?;
        let rhs = family.eval(&law.apply(&x, &y)?)?;
        let abs = (lhs - rhs).abs();
        max_abs = max_abs.max(abs);
        max_rel = max_rel.max(abs / lhs.abs().max(rhs.abs()).max(1.0));
    }
    Ok(ResidualReport {
        law: law.kind(),
        samples: n_samples,
        max_abs_residual: max_abs,
        max_rel_residual: max_rel,
        seed,
        pass: max_abs <= tol.abs,
    })
}

/// Residual suite for `det(w(y) x) = det y det x`. Determinant residuals
/// are judged relatively: `pass` means the worst relative residual is at
/// most `tol.rel`.
pub fn det_multiplicativity(
    desc: AlgebraDescriptor,
    law: &Law,
    n_samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<ResidualReport> {
    if let Law::W2 { frame } = law {
        frame.descriptor().check_same(&desc)?;
    }
    let mut max_abs = 0.0_f64;
    let mut max_rel = 0.0_f64;
    for index in 0..n_samples {
        let (x, y) = sampling::cone_pair(desc, seed, index as u64);
        let lhs = law.apply(&y, &x)?.det();
        let rhs = y.det() * x.det();
        let abs = (lhs - rhs).abs();
        max_abs = max_abs.max(abs);
        max_rel = max_rel.max(abs / rhs.abs().max(1e-300));
    }
    Ok(ResidualReport {
        law: LawKind::DetMult,
        samples: n_samples,
        max_abs_residual: max_abs,
        max_rel_residual: max_rel,
        seed,
        pass: max_rel <= tol.rel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym_real::SymMatrix;

    fn sym(rows: &[&[f64]]) -> Element {
        SymMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
            .unwrap()
            .to_element()
            .unwrap()
    }

    #[test]
    fn w1_identity_cases() {
        let desc = AlgebraDescriptor::sym_real(2).unwrap();
        let e = Element::identity(desc);
        let y = sym(&[&[2.0, 0.5], &[0.5, 1.0]]);
        assert!(w1_apply(&e, &y).unwrap().max_abs_diff(&y) < 1e-13);
        let x = sym(&[&[3.0, 1.0], &[1.0, 2.0]]);
        assert!(w1_apply(&x, &e).unwrap().max_abs_diff(&x) < 1e-12);
    }

    #[test]
    fn w1_on_commuting_diagonals_is_lmap() {
        let x = sym(&[&[4.0, 0.0], &[0.0, 1.0]]);
        let y = sym(&[&[2.0, 0.0], &[0.0, 3.0]]);
        let got = w1_apply(&x, &y).unwrap();
        assert!(got.max_abs_diff(&sym(&[&[8.0, 0.0], &[0.0, 3.0]])) < 1e-12);
    }

    #[test]
    fn w1_matches_lorentz_closed_form() {
        let desc = AlgebraDescriptor::lorentz(3).unwrap();
        let (x, y) = sampling::cone_pair(desc, 11, 0);
        let generic = w1_apply(&x, &y).unwrap();
        let closed = crate::lorentz::quad_sqrt_apply(&x, &y).unwrap();
        assert!(generic.max_abs_diff(&closed) < 1e-12);
    }

    #[test]
    fn w2_identity_cases() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let e = Element::identity(desc);
        let (x, y) = sampling::cone_pair(desc, 3, 1);
        assert!(w2_apply(&e, &y, &frame).unwrap().max_abs_diff(&y) < 1e-12);
        assert!(w2_apply(&x, &e, &frame).unwrap().max_abs_diff(&x) < 1e-11);
    }

    #[test]
    fn w1_rejects_non_cone_base() {
        let x = sym(&[&[1.0, 2.0], &[2.0, 1.0]]);
        let e = Element::identity(*x.descriptor());
        assert!(matches!(w1_apply(&x, &e), Err(Error::NotInCone(_))));
    }

    #[test]
    fn log_det_solves_w1() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let report = check_cauchy(
            desc,
            &Law::W1,
            &LogFamily::DetLog { s: 1.0 },
            200,
            42,
            &Tolerance::absolute(1e-9),
        )
        .unwrap();
        assert!(report.pass, "max abs residual {}", report.max_abs_residual);
    }

    #[test]
    fn first_minor_violates_w1() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let family = LogFamily::MinorLog {
            s: vec![1.0, 0.0, 0.0],
            frame,
        };
        let report =
            check_cauchy(desc, &Law::W1, &family, 200, 42, &Tolerance::absolute(1e-9)).unwrap();
        assert!(!report.pass);
        assert!(report.max_abs_residual > 0.01);
    }

    #[test]
    fn minor_family_solves_w2() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let family = LogFamily::MinorLog {
            s: vec![0.7, -1.3, 2.0],
            frame: frame.clone(),
        };
        let report = check_cauchy(
            desc,
            &Law::W2 { frame },
            &family,
            200,
            42,
            &Tolerance::absolute(1e-9),
        )
        .unwrap();
        assert!(report.pass, "max abs residual {}", report.max_abs_residual);
    }

    #[test]
    fn det_multiplicativity_both_laws() {
        let tol = Tolerance {
            abs: 1e-10,
            rel: 1e-9,
        };
        let desc = AlgebraDescriptor::lorentz(3).unwrap();
        let r1 = det_multiplicativity(desc, &Law::W1, 200, 42, &tol).unwrap();
        assert!(r1.pass, "w1 max rel residual {}", r1.max_rel_residual);

        let desc = AlgebraDescriptor::sym_real(4).unwrap();
        let frame = JordanFrame::standard(desc);
        let r2 = det_multiplicativity(desc, &Law::W2 { frame }, 200, 42, &tol).unwrap();
        assert!(r2.pass, "w2 max rel residual {}", r2.max_rel_residual);
    }

    #[test]
    fn determinant_symmetry_identity() {
        // det(P(x) y^2) = det(x^2) det(y^2) = det(P(y) x^2)
        for desc in [
            AlgebraDescriptor::sym_real(3).unwrap(),
            AlgebraDescriptor::lorentz(3).unwrap(),
        ] {
            for index in 0..50u64 {
                let (x, y) = sampling::cone_pair(desc, 29, index);
                let lhs = crate::Operator::quad_rep(&x)
                    .apply(&y.square())
                    .unwrap()
                    .det();
                let mid = x.square().det() * y.square().det();
                let rhs = crate::Operator::quad_rep(&y)
                    .apply(&x.square())
                    .unwrap()
                    .det();
                let scale = mid.abs().max(1.0);
                assert!((lhs - mid).abs() < 1e-9 * scale);
                assert!((rhs - mid).abs() < 1e-9 * scale);
            }
        }
    }

    #[test]
    fn identity_pair_has_zero_residual() {
        // det(w(e) e) - det(e) det(e) is exactly zero.
        let desc = AlgebraDescriptor::sym_real(2).unwrap();
        let e = Element::identity(desc);
        let out = w1_apply(&e, &e).unwrap();
        assert_eq!(out.det() - e.det() * e.det(), 0.0);
    }

    #[test]
    fn families_vanish_at_identity() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        assert!(LogFamily::DetLog { s: 2.5 }
            .vanishes_at_identity(desc)
            .unwrap());
        assert!(LogFamily::MinorLog {
            s: vec![1.0, 2.0, -0.5],
            frame
        }
        .vanishes_at_identity(desc)
        .unwrap());
    }

    #[test]
    fn report_serialization_shape() {
        let report = ResidualReport {
            law: LawKind::DetMult,
            samples: 10,
            max_abs_residual: 1e-12,
            max_rel_residual: 1e-13,
            seed: 42,
            pass: true,
        };
        let s = serde_json::to_string(&report).unwrap();
        assert!(s.starts_with("{\"law\":\"det_mult\",\"samples\":10,"));
        assert!(s.contains("\"seed\":42"));
        assert!(s.ends_with("\"pass\":true}"));
    }
}
