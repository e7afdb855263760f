//! Published closed forms for the reduced and noise-evolved states and
//! their coherence concurrences.
//!
//! Matrix positions below are 1-based `(row, col)` pairs, as written for the
//! 8x8 matrices, and converted to 0-based indices when the matrix is built.
//!
//! For channels the closed forms only multiply each subsystem's coherent
//! corner by a channel factor and keep every population as it was:
//!
//! | channel       | corner factor              |
//! |---------------|----------------------------|
//! | phase damping | `√(1-P_b) √(1-P_c)`        |
//! | phase flip    | `(2P_b - 1)(2P_c - 1)`     |
//! | bit flip      | `(1-P_b)(1-P_c)`           |
//!
//! The same pattern is used for every subsystem, including `AB1B2` and
//! `AC1C2` under the flip channels where no matrix is tabulated.

use alloc::format;
use num_complex::Complex64;

use crate::channels::ChannelKind;
use crate::dilation::AccelerationParameter;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::subsystem::Subsystem;

/// Every named matrix element as a function of `(α, r_b, r_c, P_b, P_c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormElements {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub b4: f64,
    pub b5: f64,
    pub b6: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
    pub e1: f64,
    pub f1: f64,
}

impl ClosedFormElements {
    pub fn new(
        alpha: f64,
        rb: AccelerationParameter,
        rc: AccelerationParameter,
        pb: f64,
        pc: f64,
    ) -> Result<Self> {
        check_unit("alpha", alpha)?;
        check_unit("p_b", pb)?;
        check_unit("p_c", pc)?;
        let (cb, sb) = (rb.cos(), rb.sin());
        let (cc, sc) = (rc.cos(), rc.sin());
        let pop = (2.0 - alpha) / 2.0;
        let half = alpha / 2.0;
        let damp = damping_factor(pb, pc);
        Ok(Self {
            a1: pop * cb * cb * cc * cc,
            a2: pop * cb * cb * sc * sc,
            a3: pop * sb * sb * cc * cc,
            a4: pop * sb * sb * sc * sc,
            b1: half * cb * cc,
            b2: half * sb * cc,
            b3: half * cb * sc,
            b4: half * sb * sc,
            b5: half * cb * cb,
            b6: half * cc * cc,
            c1: pop * (cb * cb) * (cb * cb),
            c2: pop * cb * cb * sb * sb,
            c3: pop * (sb * sb) * (sb * sb),
            g1: pop * (cc * cc) * (cc * cc),
            g2: pop * cc * cc * sc * sc,
            g3: pop * (sc * sc) * (sc * sc),
            d1: half * damp * cb * cc,
            d2: half * damp * sb * cc,
            d3: half * damp * cb * sc,
            d4: half * damp * sb * sc,
            e1: alpha * (2.0 * pb - 1.0) * (2.0 * pc - 1.0) / 2.0 * cb * cc,
            f1: alpha * (1.0 - pb) * (1.0 - pc) / 2.0 * cb * cc,
        })
    }
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::argument(format!("{name} = {v} outside [0, 1]")));
    }
    Ok(())
}

fn damping_factor(pb: f64, pc: f64) -> f64 {
    libm::sqrt(1.0 - pb) * libm::sqrt(1.0 - pc)
}

/// Signed factor multiplying the coherent corner under `kind`.
pub fn channel_factor(kind: Option<ChannelKind>, pb: f64, pc: f64) -> f64 {
    match kind {
        None => 1.0,
        Some(ChannelKind::PhaseDamping) => damping_factor(pb, pc),
        Some(ChannelKind::PhaseFlip) => (2.0 * pb - 1.0) * (2.0 * pc - 1.0),
        Some(ChannelKind::BitFlip) => (1.0 - pb) * (1.0 - pc),
    }
}

/// Diagonal and the single coherent pair `(row, col, value)` (1-based) of a
/// subsystem's noiseless closed form.
fn layout(s: Subsystem, alpha: f64, e: &ClosedFormElements) -> ([f64; 8], (usize, usize, f64)) {
    let h = alpha / 2.0;
    let (a1, a2, a3, a4) = (e.a1, e.a2, e.a3, e.a4);
    match s {
        Subsystem::AB1C1 => ([a1, a2, a3, a4, 0.0, 0.0, 0.0, h], (1, 8, e.b1)),
        Subsystem::AB2C1 => ([a1, a2, a3, a4, 0.0, h, 0.0, 0.0], (3, 6, e.b2)),
        Subsystem::AB1C2 => ([a1, a2, a3, a4, 0.0, 0.0, h, 0.0], (2, 7, e.b3)),
        Subsystem::AB2C2 => ([a1, a2, a3, a4, h, 0.0, 0.0, 0.0], (4, 5, e.b4)),
        Subsystem::AB1B2 => ([e.c1, e.c2, e.c2, e.c3, 0.0, 0.0, 0.0, h], (1, 8, e.b5)),
        Subsystem::AC1C2 => ([e.g1, e.g2, e.g2, e.g3, 0.0, 0.0, 0.0, h], (1, 8, e.b6)),
    }
}

fn build(diag: [f64; 8], (row, col, value): (usize, usize, f64)) -> DensityMatrix {
    let mut m = ComplexMatrix::diagonal(&diag);
    m.set(row - 1, col - 1, Complex64::new(value, 0.0));
    m.set(col - 1, row - 1, Complex64::new(value, 0.0));
    DensityMatrix::from_matrix_unchecked(m)
}

/// Closed-form reduced state of subsystem `s` after dilation, before noise.
pub fn reduced_matrix_closed_form(
    s: Subsystem,
    alpha: f64,
    rb: AccelerationParameter,
    rc: AccelerationParameter,
) -> Result<DensityMatrix> {
    let e = ClosedFormElements::new(alpha, rb, rc, 0.0, 0.0)?;
    let (diag, corner) = layout(s, alpha, &e);
    Ok(build(diag, corner))
}

/// Closed-form state after `kind` acts with probabilities `pb`, `pc`.
///
/// The damping corners are the `d1..d4` elements, the flip corners of
/// `AB1C1` are `e1` and `f1`; all other cases scale the noiseless corner by
/// [`channel_factor`]. Populations are those of the noiseless state.
pub fn evolved_matrix_closed_form(
    s: Subsystem,
    alpha: f64,
    rb: AccelerationParameter,
    rc: AccelerationParameter,
    kind: ChannelKind,
    pb: f64,
    pc: f64,
) -> Result<DensityMatrix> {
    let e = ClosedFormElements::new(alpha, rb, rc, pb, pc)?;
    let (diag, (row, col, corner)) = layout(s, alpha, &e);
    let value = match (kind, s) {
        (ChannelKind::PhaseDamping, Subsystem::AB1C1) => e.d1,
        // dephasing never moves entries, so d2 keeps b2's (3,6) slot
        (ChannelKind::PhaseDamping, Subsystem::AB2C1) => e.d2,
        (ChannelKind::PhaseDamping, Subsystem::AB1C2) => e.d3,
        (ChannelKind::PhaseDamping, Subsystem::AB2C2) => e.d4,
        (ChannelKind::PhaseFlip, Subsystem::AB1C1) => e.e1,
        (ChannelKind::BitFlip, Subsystem::AB1C1) => e.f1,
        _ => corner * channel_factor(Some(kind), pb, pc),
    };
    Ok(build(diag, (row, col, value)))
}

/// Closed-form coherence concurrence of subsystem `s`, optionally after a
/// channel.
pub fn concurrence_closed_form(
    s: Subsystem,
    alpha: f64,
    rb: AccelerationParameter,
    rc: AccelerationParameter,
    kind: Option<ChannelKind>,
    pb: f64,
    pc: f64,
) -> Result<f64> {
    check_unit("alpha", alpha)?;
    check_unit("p_b", pb)?;
    check_unit("p_c", pc)?;
    let (cb, sb) = (rb.cos(), rb.sin());
    let (cc, sc) = (rc.cos(), rc.sin());
    let base = match s {
        Subsystem::AB1C1 => alpha * cb * cc,
        Subsystem::AB2C1 => alpha * sb * cc,
        Subsystem::AB1C2 => alpha * cb * sc,
        Subsystem::AB2C2 => alpha * sb * sc,
        Subsystem::AB1B2 => alpha * cb * cb,
        Subsystem::AC1C2 => alpha * cc * cc,
    };
    Ok((base * channel_factor(kind, pb, pc)).abs())
}

/// Residuals of the three complementarity identities, computed from the
/// closed-form concurrences:
///
/// 0. `C²(AB1C1) + C²(AB1C2) - α²`, which vanishes only when `r_b = 0`;
/// 1. `C²(AB1C2) + α C(AC1C2) - α²`, which vanishes only when `r_b = 0`;
/// 2. `Σ C² - α²` over the four subsystems keeping one Bob and one Charlie
///    mode, which vanishes everywhere.
pub fn complementarity_residuals(
    alpha: f64,
    rb: AccelerationParameter,
    rc: AccelerationParameter,
) -> Result<[f64; 3]> {
    let c = |s| concurrence_closed_form(s, alpha, rb, rc, None, 0.0, 0.0);
    let ab1c1 = c(Subsystem::AB1C1)?;
    let ab2c1 = c(Subsystem::AB2C1)?;
    let ab1c2 = c(Subsystem::AB1C2)?;
    let ab2c2 = c(Subsystem::AB2C2)?;
    let ac1c2 = c(Subsystem::AC1C2)?;
    let a2 = alpha * alpha;
    Ok([
        ab1c1 * ab1c1 + ab1c2 * ab1c2 - a2,
        ab1c2 * ab1c2 + alpha * ac1c2 - a2,
        ab1c1 * ab1c1 + ab2c1 * ab2c1 + ab1c2 * ab1c2 + ab2c2 * ab2c2 - a2,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dilation::initial_state;
    use crate::linalg::{validate_density, Tolerances};
    use crate::measures::{is_x_shaped, x_concurrence};
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_6};

    fn r(x: f64) -> AccelerationParameter {
        AccelerationParameter::new(x).unwrap()
    }

    #[test]
    fn flat_limit_is_initial_state() {
        for alpha in [0.0, 0.4, 1.0] {
            let m = reduced_matrix_closed_form(Subsystem::AB1C1, alpha, r(0.0), r(0.0)).unwrap();
            assert_eq!(m, initial_state(alpha).unwrap());
        }
    }

    #[test]
    fn ab2c2_corner_at_four_five() {
        let (alpha, rb, rc) = (0.9, 0.3, 0.6);
        let m = reduced_matrix_closed_form(Subsystem::AB2C2, alpha, r(rb), r(rc)).unwrap();
        let b4 = alpha / 2.0 * libm::sin(rb) * libm::sin(rc);
        assert_eq!(m.get(3, 4).re, b4);
        assert_eq!(m.get(4, 3).re, b4);
        assert_eq!(m.get(4, 4).re, alpha / 2.0);
    }

    #[test]
    fn ab1b2_layout() {
        let (alpha, rb) = (0.5, FRAC_PI_6);
        let m = reduced_matrix_closed_form(Subsystem::AB1B2, alpha, r(rb), r(0.2)).unwrap();
        let e = ClosedFormElements::new(alpha, r(rb), r(0.2), 0.0, 0.0).unwrap();
        assert_eq!(m.get(0, 7).re, alpha / 2.0 * libm::cos(rb) * libm::cos(rb));
        let diag: [f64; 8] = core::array::from_fn(|i| m.get(i, i).re);
        assert_eq!(diag, [e.c1, e.c2, e.c2, e.c3, 0.0, 0.0, 0.0, alpha / 2.0]);
    }

    #[test]
    fn element_sum_rules() {
        for &alpha in &[0.0, 0.3, 1.0] {
            for &(rb, rc) in &[(0.0, 0.0), (0.2, 0.7), (FRAC_PI_4, 0.1)] {
                let e = ClosedFormElements::new(alpha, r(rb), r(rc), 0.0, 0.0).unwrap();
                let target = (2.0 - alpha) / 2.0;
                assert!((e.a1 + e.a2 + e.a3 + e.a4 - target).abs() < 1e-15);
                assert!((e.c1 + 2.0 * e.c2 + e.c3 - target).abs() < 1e-15);
                assert!((e.g1 + 2.0 * e.g2 + e.g3 - target).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn evolved_corners() {
        let (alpha, rb, rc, pb, pc) = (0.8, 0.3, 0.5, 0.2, 0.6);
        let cbcc = libm::cos(rb) * libm::cos(rc);
        let expect = [
            (ChannelKind::PhaseDamping, alpha / 2.0 * libm::sqrt(1.0 - pb) * libm::sqrt(1.0 - pc) * cbcc),
            (ChannelKind::PhaseFlip, alpha * (2.0 * pb - 1.0) * (2.0 * pc - 1.0) / 2.0 * cbcc),
            (ChannelKind::BitFlip, alpha * (1.0 - pb) * (1.0 - pc) / 2.0 * cbcc),
        ];
        for (kind, corner) in expect {
            let m = evolved_matrix_closed_form(Subsystem::AB1C1, alpha, r(rb), r(rc), kind, pb, pc).unwrap();
            assert!((m.get(0, 7).re - corner).abs() < 1e-16, "{kind}");
            let base = reduced_matrix_closed_form(Subsystem::AB1C1, alpha, r(rb), r(rc)).unwrap();
            for i in 0..8 {
                assert_eq!(m.get(i, i), base.get(i, i));
            }
        }
    }

    #[test]
    fn concurrence_spot_values() {
        let q = r(FRAC_PI_4);
        let c = concurrence_closed_form(Subsystem::AB2C1, 0.8, q, q, None, 0.0, 0.0).unwrap();
        assert!((c - 0.4).abs() < 1e-15);
        let c = concurrence_closed_form(
            Subsystem::AB1C1,
            FRAC_1_SQRT_2,
            r(0.3),
            r(0.3),
            Some(ChannelKind::PhaseFlip),
            0.5,
            0.5,
        )
        .unwrap();
        assert_eq!(c, 0.0);
        let c = concurrence_closed_form(Subsystem::AB1C1, 1.0, r(0.0), r(0.0), Some(ChannelKind::BitFlip), 1.0 / 3.0, 1.0 / 3.0)
            .unwrap();
        assert!((c - 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn phase_flip_concurrence_is_nonnegative() {
        let c = concurrence_closed_form(Subsystem::AB1C1, 1.0, r(0.0), r(0.0), Some(ChannelKind::PhaseFlip), 0.1, 0.9)
            .unwrap();
        assert!((c - 0.64).abs() < 1e-15);
    }

    #[test]
    fn residuals_at_maximal_acceleration() {
        let q = r(FRAC_PI_4);
        let res = complementarity_residuals(1.0, q, q).unwrap();
        assert!((res[0] + 0.5).abs() < 1e-14);
        assert!(res[2].abs() < 1e-14);
    }

    #[test]
    fn every_closed_form_is_a_valid_x_state() {
        let tol = Tolerances::default();
        for s in Subsystem::ALL {
            for &(alpha, rb, rc) in &[(0.0, 0.0, 0.0), (0.35, 0.2, 0.7), (1.0, FRAC_PI_4, FRAC_PI_4)] {
                let m = reduced_matrix_closed_form(s, alpha, r(rb), r(rc)).unwrap();
                assert!(validate_density(m.matrix(), &tol).is_ok(), "{s}");
                assert!(is_x_shaped(&m, 0.0));
                let expected = concurrence_closed_form(s, alpha, r(rb), r(rc), None, 0.0, 0.0).unwrap();
                assert!((x_concurrence(&m).unwrap() - expected).abs() < 1e-15);
                for kind in ChannelKind::ALL {
                    let m = evolved_matrix_closed_form(s, alpha, r(rb), r(rc), kind, 0.3, 0.8).unwrap();
                    assert!(validate_density(m.matrix(), &tol).is_ok(), "{s} {kind}");
                    let expected = concurrence_closed_form(s, alpha, r(rb), r(rc), Some(kind), 0.3, 0.8).unwrap();
                    assert!((x_concurrence(&m).unwrap() - expected).abs() < 1e-15, "{s} {kind}");
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range_probabilities() {
        assert!(ClosedFormElements::new(0.5, r(0.0), r(0.0), 1.5, 0.0).is_err());
        assert!(concurrence_closed_form(Subsystem::AB1C1, 2.0, r(0.0), r(0.0), None, 0.0, 0.0).is_err());
    }
}
