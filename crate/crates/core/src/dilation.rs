//! Unruh dilation of the shared three-qubit state onto Rindler modes.

use core::f64::consts::{FRAC_PI_4, PI};

use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{ChannelKind, NoisePolicy};
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, tensor_product, ComplexMatrix, DensityMatrix, QubitIndex};
use crate::subsystem::{Mode, Subsystem};

/// Slack allowed above `π/4` before an acceleration parameter is rejected.
/// Values inside the slack are clamped to `π/4`.
const R_SLACK: f64 = 1e-12;

/// Acceleration parameter `r ∈ [0, π/4]`, in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct AccelerationParameter(f64);

impl AccelerationParameter {
    pub const ZERO: Self = Self(0.0);
    pub const MAX: Self = Self(FRAC_PI_4);

    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || !(0.0..=FRAC_PI_4 + R_SLACK).contains(&r) {
            return Err(Error::argument(format!("acceleration parameter {r} outside [0, pi/4]")));
        }
        Ok(Self(r.min(FRAC_PI_4)))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn cos(self) -> f64 {
        libm::cos(self.0)
    }

    pub fn sin(self) -> f64 {
        libm::sin(self.0)
    }
}

impl TryFrom<f64> for AccelerationParameter {
    type Error = Error;

    fn try_from(r: f64) -> Result<Self> {
        Self::new(r)
    }
}

impl From<AccelerationParameter> for f64 {
    fn from(r: AccelerationParameter) -> f64 {
        r.0
    }
}

/// Dirac mode frequency `omega`, proper acceleration `a` and light speed `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalAcceleration {
    pub omega: f64,
    pub a: f64,
    pub c: f64,
}

impl PhysicalAcceleration {
    pub fn new(omega: f64, a: f64, c: f64) -> Result<Self> {
        for (name, v) in [("omega", omega), ("a", a), ("c", c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::argument(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { omega, a, c })
    }
}

/// `r = arccos((exp(-2π ω c / a) + 1)^(-1/2))`.
pub fn acceleration_parameter(p: PhysicalAcceleration) -> Result<AccelerationParameter> {
    let p = PhysicalAcceleration::new(p.omega, p.a, p.c)?;
    let exponent = -2.0 * PI * p.omega * p.c / p.a;
    let cos_r = 1.0 / libm::sqrt(libm::exp(exponent) + 1.0);
    let r = libm::acos(cos_r);
    if !r.is_finite() {
        return Err(Error::Numeric("acceleration parameter"));
    }
    AccelerationParameter::new(r)
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::argument(format!("{name} = {v} outside [0, 1]")));
    }
    Ok(())
}

/// `alpha |GHZ><GHZ| + (1 - alpha) |000><000|` with
/// `|GHZ> = (|000> + |111>)/√2`.
pub fn initial_state(alpha: f64) -> Result<DensityMatrix> {
    check_unit("alpha", alpha)?;
    let mut m = ComplexMatrix::zeros(8, 8);
    m.set(0, 0, Complex64::new(1.0 - alpha / 2.0, 0.0));
    m.set(7, 7, Complex64::new(alpha / 2.0, 0.0));
    m.set(0, 7, Complex64::new(alpha / 2.0, 0.0));
    m.set(7, 0, Complex64::new(alpha / 2.0, 0.0));
    Ok(DensityMatrix::from_matrix_unchecked(m))
}

/// The 4x2 isometry taking a Minkowski qubit to the Rindler pair (I, II):
/// `|0> -> cos r |00> + sin r |11>`, `|1> -> |10>`.
pub fn unruh_isometry(r: AccelerationParameter) -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(4, 2);
    v.set(0, 0, Complex64::new(r.cos(), 0.0));
    v.set(3, 0, Complex64::new(r.sin(), 0.0));
    v.set(2, 1, Complex64::new(1.0, 0.0));
    v
}

/// Maps a three-qubit state onto modes `[A, B_I, B_II, C_I, C_II]`.
pub fn dilate(
    rho_abc: &DensityMatrix,
    rb: AccelerationParameter,
    rc: AccelerationParameter,
) -> Result<DensityMatrix> {
    if rho_abc.dim() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, actual: rho_abc.dim() });
    }
    let v = tensor_product(
        &ComplexMatrix::identity(2),
        &tensor_product(&unruh_isometry(rb), &unruh_isometry(rc))?,
    )?;
    let global = v.matmul(rho_abc.matrix())?.matmul(&v.adjoint())?;
    Ok(DensityMatrix::from_matrix_unchecked(global))
}

/// Traces the 32-dimensional dilated state down to `s`, qubits ordered as in
/// the subsystem label.
pub fn reduce_to_subsystem(global: &DensityMatrix, s: Subsystem) -> Result<DensityMatrix> {
    if global.dim() != 32 {
        return Err(Error::DimensionMismatch { expected: 32, actual: global.dim() });
    }
    let kept = s.kept_modes();
    let drop: Vec<QubitIndex> = Mode::ALL
        .into_iter()
        .filter(|m| !kept.contains(m))
        .map(|m| QubitIndex(m.position()))
        .collect();
    partial_trace(global, &drop)
}

/// Every parameter driving one simulated or closed-form evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub subsystem: Subsystem,
    pub alpha: f64,
    pub rb: AccelerationParameter,
    pub rc: AccelerationParameter,
    pub channel: Option<ChannelKind>,
    pub pb: f64,
    pub pc: f64,
    pub policy: NoisePolicy,
}

impl Scenario {
    /// Noiseless scenario.
    pub fn new(subsystem: Subsystem, alpha: f64, rb: f64, rc: f64) -> Result<Self> {
        let s = Self {
            subsystem,
            alpha,
            rb: AccelerationParameter::new(rb)?,
            rc: AccelerationParameter::new(rc)?,
            channel: None,
            pb: 0.0,
            pc: 0.0,
            policy: NoisePolicy::default(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_channel(mut self, kind: ChannelKind, pb: f64, pc: f64) -> Result<Self> {
        self.channel = Some(kind);
        self.pb = pb;
        self.pc = pc;
        self.validate()?;
        Ok(self)
    }

    pub fn with_policy(mut self, policy: NoisePolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("alpha", self.alpha)?;
        check_unit("p_b", self.pb)?;
        check_unit("p_c", self.pc)?;
        AccelerationParameter::new(self.rb.0)?;
        AccelerationParameter::new(self.rc.0)?;
        Ok(())
    }
}
