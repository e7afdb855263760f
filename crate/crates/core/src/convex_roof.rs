//! Numerical upper bound on the convex roof of the pure-state coherence
//! concurrence.
//!
//! Every ensemble of `m >= k` members for a rank-`k` state is reached as
//! `|ψ̃_i> = Σ_j W_ij √λ_j |e_j>` with `W` an `m x k` isometry. The search
//! samples such isometries, keeps the cheapest ensemble, and then refines it
//! with two-member plane rotations. A rotation between members `i` and `j`
//! is a left action of `U(m)` on `W`, so the ensemble keeps averaging to the
//! same state throughout.
//!
//! For unnormalized members `p_i C(ψ_i) = Σ_{a≠b} |ψ̃_ia| |ψ̃_ib|`, which is
//! what the objective sums.

use core::f64::consts::{FRAC_PI_2, PI};

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, DensityMatrix};
use crate::measures::{l1_coherence, CoherenceBounds, Method};

/// Largest Hilbert-space dimension the search accepts.
pub const MAX_DIM: usize = 32;

/// Eigenvalues at or below this are dropped from the purification.
pub const EIGEN_FLOOR: f64 = 1e-12;

const GRID_POINTS: usize = 24;
const GOLDEN_ITERATIONS: usize = 40;
const SWEEP_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexRoofOptions {
    /// Ensembles sampled before refinement; the eigen-ensemble is always the
    /// first of them.
    pub restarts: usize,
    /// Ensemble size is `rank + extra_members`.
    pub extra_members: usize,
    /// Upper limit on full rotation sweeps over all member pairs.
    pub refine_steps: usize,
    pub seed: u64,
}

impl Default for ConvexRoofOptions {
    fn default() -> Self {
        Self { restarts: 200, extra_members: 2, refine_steps: 500, seed: 0 }
    }
}

/// Convex-roof search with `rank + 2` ensemble members.
pub fn convex_roof_upper_bound(
    rho: &DensityMatrix,
    restarts: usize,
    refine_steps: usize,
    seed: u64,
) -> Result<CoherenceBounds> {
    convex_roof_search(rho, &ConvexRoofOptions { restarts, refine_steps, seed, ..Default::default() })
}

pub fn convex_roof_search(rho: &DensityMatrix, opts: &ConvexRoofOptions) -> Result<CoherenceBounds> {
    let n = rho.dim();
    if n > MAX_DIM {
        return Err(Error::Size { requested: n, max: MAX_DIM });
    }
    let lower = l1_coherence(rho);
    let (values, vectors) = hermitian_eigen(rho.matrix())?;

    // columns √λ_j |e_j> of the purification, stored row-wise
    let basis: Vec<Vec<Complex64>> = values
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > EIGEN_FLOOR)
        .map(|(j, &l)| {
            let s = libm::sqrt(l);
            (0..n).map(|a| vectors.get(a, j) * s).collect()
        })
        .collect();
    let rank = basis.len();
    if rank == 0 {
        return Err(Error::Numeric("convex roof: no positive eigenvalue"));
    }
    let members = rank + opts.extra_members;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best = Ensemble::from_isometry(&identity_isometry(members, rank), &basis, n);
    for _ in 1..opts.restarts {
        let candidate = Ensemble::from_isometry(&random_isometry(members, rank, &mut rng), &basis, n);
        if candidate.total() < best.total() {
            best = candidate;
        }
    }

    let mut iterations = 0;
    for _ in 0..opts.refine_steps {
        iterations += 1;
        let before = best.total();
        best.sweep();
        if before - best.total() <= SWEEP_TOLERANCE * before.max(1.0) {
            break;
        }
    }

    Ok(CoherenceBounds {
        lower,
        upper: best.total(),
        method: Method::ConvexRoofSearch,
        optimizer_iterations: iterations,
    })
}

/// `W = [I_k; 0]`, i.e. the spectral ensemble padded with empty members.
fn identity_isometry(m: usize, k: usize) -> Vec<Vec<Complex64>> {
    (0..m)
        .map(|i| (0..k).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect()
}

/// Haar-distributed `m x k` isometry: Gram-Schmidt on a complex Gaussian
/// matrix.
fn random_isometry(m: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Complex64>> {
    let mut w: Vec<Vec<Complex64>> = (0..m)
        .map(|_| {
            (0..k)
                .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
                .collect()
        })
        .collect();
    for col in 0..k {
        // two passes keep the columns orthogonal to working precision
        for _ in 0..2 {
            for prev in 0..col {
                let dot: Complex64 = (0..m).map(|i| w[i][prev].conj() * w[i][col]).sum();
                for row in w.iter_mut() {
                    let p = row[prev];
                    row[col] -= p * dot;
                }
            }
        }
        let norm = libm::sqrt((0..m).map(|i| w[i][col].norm_sqr()).sum::<f64>());
        for row in w.iter_mut() {
            row[col] /= norm;
        }
    }
    w
}

#[inline]
fn modulus(z: Complex64) -> f64 {
    libm::sqrt(z.re * z.re + z.im * z.im)
}

/// `p C(ψ)` for an unnormalized member `ψ̃ = √p ψ`.
fn member_cost(psi: &[Complex64]) -> f64 {
    let (mut sum, mut sq) = (0.0, 0.0);
    for &z in psi {
        let m = modulus(z);
        sum += m;
        sq += m * m;
    }
    (sum * sum - sq).max(0.0)
}

struct Ensemble {
    members: Vec<Vec<Complex64>>,
    costs: Vec<f64>,
    scratch: [Vec<Complex64>; 2],
}

impl Ensemble {
    fn from_isometry(w: &[Vec<Complex64>], basis: &[Vec<Complex64>], n: usize) -> Self {
        let members: Vec<Vec<Complex64>> = w
            .iter()
            .map(|row| {
                let mut psi = vec![Complex64::new(0.0, 0.0); n];
                for (coef, b) in row.iter().zip(basis) {
                    for (p, &x) in psi.iter_mut().zip(b) {
                        *p += coef * x;
                    }
                }
                psi
            })
            .collect();
        let costs = members.iter().map(|m| member_cost(m)).collect();
        Self { members, costs, scratch: [vec![Complex64::new(0.0, 0.0); n], vec![Complex64::new(0.0, 0.0); n]] }
    }

    fn total(&self) -> f64 {
        self.costs.iter().sum()
    }

    /// Cost of members `i`, `j` after the rotation
    /// `[[c, e^{iφ} s], [-e^{-iφ} s, c]]` with `c = cos θ`, `s = sin θ`.
    fn pair_cost(&mut self, i: usize, j: usize, theta: f64, phase: Complex64) -> f64 {
        let (s, c) = libm::sincos(theta);
        let [x, y] = &mut self.scratch;
        rotate_into(&self.members[i], &self.members[j], c, s, phase, x, y);
        member_cost(x) + member_cost(y)
    }

    fn apply(&mut self, i: usize, j: usize, theta: f64, phase: Complex64) {
        let (s, c) = libm::sincos(theta);
        let [x, y] = &mut self.scratch;
        rotate_into(&self.members[i], &self.members[j], c, s, phase, x, y);
        self.members[i].copy_from_slice(x);
        self.members[j].copy_from_slice(y);
        self.costs[i] = member_cost(&self.members[i]);
        self.costs[j] = member_cost(&self.members[j]);
    }

    /// One pass of real and imaginary plane rotations over every pair.
    fn sweep(&mut self) {
        let m = self.members.len();
        let phases = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        for i in 0..m {
            for j in i + 1..m {
                for &phase in &phases {
                    let current = self.costs[i] + self.costs[j];
                    let (theta, cost) = self.line_search(i, j, phase);
                    if cost < current - 1e-15 {
                        self.apply(i, j, theta, phase);
                    }
                }
            }
        }
    }

    /// Coarse grid over one period of θ, then golden-section refinement
    /// around the best grid point.
    fn line_search(&mut self, i: usize, j: usize, phase: Complex64) -> (f64, f64) {
        let step = PI / GRID_POINTS as f64;
        let mut best = (0.0, self.pair_cost(i, j, 0.0, phase));
        for k in 1..GRID_POINTS {
            let theta = -FRAC_PI_2 + k as f64 * step;
            let cost = self.pair_cost(i, j, theta, phase);
            if cost < best.1 {
                best = (theta, cost);
            }
        }

        let inv_phi = 0.5 * (libm::sqrt(5.0) - 1.0);
        let (mut a, mut b) = (best.0 - step, best.0 + step);
        let mut x1 = b - inv_phi * (b - a);
        let mut x2 = a + inv_phi * (b - a);
        let mut f1 = self.pair_cost(i, j, x1, phase);
        let mut f2 = self.pair_cost(i, j, x2, phase);
        for _ in 0..GOLDEN_ITERATIONS {
            if f1 < f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = self.pair_cost(i, j, x1, phase);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = self.pair_cost(i, j, x2, phase);
            }
        }
        for (theta, cost) in [(x1, f1), (x2, f2)] {
            if cost < best.1 {
                best = (theta, cost);
            }
        }
        best
    }
}

fn rotate_into(
    x: &[Complex64],
    y: &[Complex64],
    c: f64,
    s: f64,
    phase: Complex64,
    out_x: &mut [Complex64],
    out_y: &mut [Complex64],
) {
    let fwd = phase * s;
    let back = phase.conj() * s;
    for a in 0..x.len() {
        out_x[a] = x[a] * c + fwd * y[a];
        out_y[a] = y[a] * c - back * x[a];
    }
}
