//! Single-qubit Kraus channels and where they act on the tripartite system.

use core::fmt;
use core::str::FromStr;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dilation::Scenario;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, QubitIndex};
use crate::subsystem::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    PhaseDamping,
    PhaseFlip,
    BitFlip,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [ChannelKind::PhaseDamping, ChannelKind::PhaseFlip, ChannelKind::BitFlip];

    /// Short name used on the command line and in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::PhaseDamping => "damping",
            ChannelKind::PhaseFlip => "phase-flip",
            ChannelKind::BitFlip => "bit-flip",
        }
    }

    /// True for channels that never touch populations.
    pub fn is_dephasing(self) -> bool {
        !matches!(self, ChannelKind::BitFlip)
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "damping" | "phase-damping" => Ok(ChannelKind::PhaseDamping),
            "phase-flip" => Ok(ChannelKind::PhaseFlip),
            "bit-flip" => Ok(ChannelKind::BitFlip),
            _ => Err(Error::argument(format!("unknown channel `{s}`"))),
        }
    }
}

/// Where Bob's and Charlie's channels are applied.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoisePolicy {
    /// `channel(P_b)` on qubit 1 and `channel(P_c)` on qubit 2 of the reduced
    /// three-qubit state.
    #[default]
    ReducedQubit,
    /// `channel(P_b)` on `B_I` and `B_II`, `channel(P_c)` on `C_I` and `C_II`
    /// of the dilated state, before reduction.
    RindlerMode,
}

impl NoisePolicy {
    pub fn name(self) -> &'static str {
        match self {
            NoisePolicy::ReducedQubit => "reduced-qubit",
            NoisePolicy::RindlerMode => "rindler-mode",
        }
    }
}

impl fmt::Display for NoisePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NoisePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "reduced-qubit" => Ok(NoisePolicy::ReducedQubit),
            "rindler-mode" => Ok(NoisePolicy::RindlerMode),
            _ => Err(Error::argument(format!("unknown noise policy `{s}`"))),
        }
    }
}

/// A single-qubit channel in Kraus form.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kind: ChannelKind,
    p: f64,
    operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn probability(&self) -> f64 {
        self.p
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// `max |(Σ E_k† E_k - I)_ij|`.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(2, 2);
        for e in &self.operators {
            let ete = e.adjoint().matmul(e).expect("2x2 operators");
            sum = sum.combine(1.0, &ete, 1.0).expect("2x2 operators");
        }
        sum.max_abs_diff(&ComplexMatrix::identity(2)).expect("2x2 operators")
    }
}

fn real2(a: f64, b: f64, c: f64, d: f64) -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[a, b, c, d]).expect("finite 2x2")
}

pub fn make_channel(kind: ChannelKind, p: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::argument(format!("decay probability {p} outside [0, 1]")));
    }
    let keep = libm::sqrt(1.0 - p);
    let hit = libm::sqrt(p);
    let operators = match kind {
        ChannelKind::PhaseDamping => vec![real2(1.0, 0.0, 0.0, keep), real2(0.0, 0.0, 0.0, hit)],
        ChannelKind::PhaseFlip => vec![real2(keep, 0.0, 0.0, keep), real2(hit, 0.0, 0.0, -hit)],
        ChannelKind::BitFlip => vec![real2(keep, 0.0, 0.0, keep), real2(0.0, hit, hit, 0.0)],
    };
    Ok(KrausChannel { kind, p, operators })
}

/// `Σ_k E_k ρ E_k†` with each `E_k` acting on qubit `q` only.
pub fn apply_to_qubit(rho: &DensityMatrix, q: QubitIndex, ch: &KrausChannel) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    if q.0 >= n {
        return Err(Error::argument(format!("qubit {} out of range for {n} qubits", q.0)));
    }
    let shift = n - 1 - q.0;
    let mask = 1usize << shift;
    let d = rho.dim();
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(d, d);
    for e in ch.operators() {
        let e = [[e.get(0, 0), e.get(0, 1)], [e.get(1, 0), e.get(1, 1)]];
        for i in 0..d {
            let bi = (i >> shift) & 1;
            let i_base = i & !mask;
            for j in 0..d {
                let bj = (j >> shift) & 1;
                let j_base = j & !mask;
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, &ea) in e[bi].iter().enumerate() {
                    if ea.re == 0.0 && ea.im == 0.0 {
                        continue;
                    }
                    for (b, &eb) in e[bj].iter().enumerate() {
                        acc += ea * m.get(i_base | a << shift, j_base | b << shift) * eb.conj();
                    }
                }
                out.add_at(i, j, acc);
            }
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Applies the scenario's channels under its noise policy.
///
/// `ReducedQubit` expects the 8x8 reduced state; `RindlerMode` expects the
/// 32x32 dilated state and leaves the reduction to the caller.
pub fn apply_policy(s: &Scenario, state: &DensityMatrix) -> Result<DensityMatrix> {
    let expected = match s.policy {
        NoisePolicy::ReducedQubit => 8,
        NoisePolicy::RindlerMode => 32,
    };
    if state.dim() != expected {
        return Err(Error::DimensionMismatch { expected, actual: state.dim() });
    }
    let Some(kind) = s.channel else {
        return Ok(state.clone());
    };
    let bob = make_channel(kind, s.pb)?;
    let charlie = make_channel(kind, s.pc)?;
    let targets: &[(usize, &KrausChannel)] = match s.policy {
        NoisePolicy::ReducedQubit => &[(1, &bob), (2, &charlie)],
        NoisePolicy::RindlerMode => &[
            (Mode::BI as usize, &bob),
            (Mode::BII as usize, &bob),
            (Mode::CI as usize, &charlie),
            (Mode::CII as usize, &charlie),
        ],
    };
    let mut rho = state.clone();
    for &(q, ch) in targets {
        rho = apply_to_qubit(&rho, QubitIndex(q), ch)?;
    }
    Ok(rho)
}
