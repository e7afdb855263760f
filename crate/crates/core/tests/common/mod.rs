#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use relcoh_core::{Complex64, ComplexMatrix, DensityMatrix, PureState, Tolerances};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_pure(n_qubits: usize, rng: &mut ChaCha8Rng) -> PureState {
    let amps = (0..1usize << n_qubits).map(|_| gaussian(rng)).collect();
    PureState::normalized(amps).unwrap()
}

/// Ginibre-ensemble mixed state.
pub fn random_density(n_qubits: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let d = 1usize << n_qubits;
    let g = ComplexMatrix::new(d, d, (0..d * d).map(|_| gaussian(rng)).collect()).unwrap();
    let m = g.matmul(&g.adjoint()).unwrap();
    let t = m.trace().re;
    let m = m.combine(1.0 / t, &ComplexMatrix::zeros(d, d), 0.0).unwrap();
    DensityMatrix::new(m, &Tolerances::default()).unwrap()
}

/// Random X state: a positive diagonal with anti-diagonal pairs bounded by
/// `|ρ_{i,n-1-i}|² <= ρ_ii ρ_{n-1-i,n-1-i}`.
pub fn random_x_state(n_qubits: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let d = 1usize << n_qubits;
    let diag: Vec<f64> = (0..d).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = diag.iter().sum();
    let diag: Vec<f64> = diag.iter().map(|x| x / total).collect();
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        entries[i * d + i] = Complex64::new(diag[i], 0.0);
    }
    for i in 0..d / 2 {
        let j = d - 1 - i;
        let bound = (diag[i] * diag[j]).sqrt();
        let z = Complex64::from_polar(bound * rng.random::<f64>(), std::f64::consts::TAU * rng.random::<f64>());
        entries[i * d + j] = z;
        entries[j * d + i] = z.conj();
    }
    DensityMatrix::new(ComplexMatrix::new(d, d, entries).unwrap(), &Tolerances::default()).unwrap()
}
