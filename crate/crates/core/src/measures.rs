//! Coherence quantifiers in the computational basis.

use serde::{Deserialize, Serialize};

use crate::convex_roof::{convex_roof_search, ConvexRoofOptions};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, DensityMatrix, PureState};

/// Magnitude below which an entry off both diagonals still counts as zero
/// for the X-shape test used by [`x_concurrence`].
pub const X_SHAPE_TOLERANCE: f64 = 1e-9;

/// States with `Tr(ρ²)` at least this close to 1 are treated as pure.
pub const PURITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    XClosedForm,
    PureExact,
    ConvexRoofSearch,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::XClosedForm => "x_closed_form",
            Method::PureExact => "pure_exact",
            Method::ConvexRoofSearch => "convex_roof_search",
        }
    }
}

/// Bracket on the coherence concurrence: the l1-norm from below, the best
/// ensemble found from above.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceBounds {
    pub lower: f64,
    pub upper: f64,
    pub method: Method,
    pub optimizer_iterations: usize,
}

impl CoherenceBounds {
    fn exact(value: f64, method: Method) -> Self {
        Self { lower: value, upper: value, method, optimizer_iterations: 0 }
    }

    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Sum of the moduli of all off-diagonal entries.
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    let n = rho.dim();
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            total += rho.get(i, j).norm() + rho.get(j, i).norm();
        }
    }
    total
}

/// `Σ_{j<k} |<ψ| Λ_jk |ψ*>|` with `Λ_jk = |j><k| + |k><j|`.
pub fn pure_concurrence(psi: &PureState) -> f64 {
    let a = psi.amplitudes();
    let mut total = 0.0;
    for j in 0..a.len() {
        for k in j + 1..a.len() {
            // <ψ|j><k|ψ*> + <ψ|k><j|ψ*>
            let term = a[j].conj() * a[k].conj() + a[k].conj() * a[j].conj();
            total += term.norm();
        }
    }
    total
}

/// Position and magnitude of the largest entry off both diagonals.
fn worst_off_x(rho: &DensityMatrix) -> Option<(usize, usize, f64)> {
    let n = rho.dim();
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..n {
        for j in 0..n {
            if j == i || j == n - 1 - i {
                continue;
            }
            let m = rho.get(i, j).norm();
            if worst.is_none_or(|(_, _, w)| m > w) {
                worst = Some((i, j, m));
            }
        }
    }
    worst
}

/// True iff every entry off the main and anti-diagonal has modulus `<= tol`.
pub fn is_x_shaped(rho: &DensityMatrix, tol: f64) -> bool {
    worst_off_x(rho).is_none_or(|(_, _, m)| m <= tol)
}

/// Closed-form concurrence of an X state: twice the summed moduli of the
/// upper anti-diagonal.
pub fn x_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if let Some((row, col, magnitude)) = worst_off_x(rho) {
        if magnitude > X_SHAPE_TOLERANCE {
            return Err(Error::NotXShaped { row, col, magnitude });
        }
    }
    let n = rho.dim();
    let half: f64 = (0..n / 2).map(|i| rho.get(i, n - 1 - i).norm()).sum();
    Ok(2.0 * half)
}

/// Coherence concurrence with the default search budget.
pub fn coherence_concurrence(rho: &DensityMatrix) -> Result<CoherenceBounds> {
    coherence_concurrence_with(rho, &ConvexRoofOptions::default())
}

/// Dispatches to the cheapest exact route: pure states, then X states, then
/// the convex-roof search.
pub fn coherence_concurrence_with(rho: &DensityMatrix, opts: &ConvexRoofOptions) -> Result<CoherenceBounds> {
    if rho.purity() >= 1.0 - PURITY_TOLERANCE {
        let (_, vectors) = hermitian_eigen(rho.matrix())?;
        let top = (0..rho.dim()).map(|i| vectors.get(i, 0)).collect();
        let psi = PureState::normalized(top)?;
        return Ok(CoherenceBounds::exact(pure_concurrence(&psi), Method::PureExact));
    }
    if is_x_shaped(rho, X_SHAPE_TOLERANCE) {
        return Ok(CoherenceBounds::exact(x_concurrence(rho)?, Method::XClosedForm));
    }
    convex_roof_search(rho, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dilation::initial_state;
    use crate::linalg::ComplexMatrix;
    use alloc::vec;
    use alloc::vec::Vec;
    use core::f64::consts::FRAC_1_SQRT_2;
    use num_complex::Complex64;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn ghz_state() -> PureState {
        let mut a = vec![c(0.0); 8];
        a[0] = c(FRAC_1_SQRT_2);
        a[7] = c(FRAC_1_SQRT_2);
        PureState::normalized(a).unwrap()
    }

    #[test]
    fn diagonal_states_have_no_l1_coherence() {
        let rho = DensityMatrix::from_matrix_unchecked(ComplexMatrix::diagonal(&[0.1, 0.2, 0.3, 0.4]));
        assert_eq!(l1_coherence(&rho), 0.0);
        assert!(is_x_shaped(&rho, 0.0));
        assert_eq!(x_concurrence(&rho).unwrap(), 0.0);
    }

    #[test]
    fn ghz_projector() {
        let rho = DensityMatrix::from_pure(&ghz_state());
        assert!((l1_coherence(&rho) - 1.0).abs() < 1e-15);
        assert!((pure_concurrence(&ghz_state()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pure_concurrence_small_cases() {
        assert_eq!(pure_concurrence(&PureState::basis(1, 0).unwrap()), 0.0);
        let plus = PureState::normalized(vec![c(1.0), c(1.0)]).unwrap();
        assert!((pure_concurrence(&plus) - 1.0).abs() < 1e-15);
        let phased = PureState::normalized(vec![c(1.0), Complex64::new(0.0, 1.0)]).unwrap();
        assert!((pure_concurrence(&phased) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn initial_state_is_x_shaped_with_concurrence_alpha() {
        for alpha in [0.0, 0.25, 0.5, 1.0] {
            let rho = initial_state(alpha).unwrap();
            assert!(is_x_shaped(&rho, 0.0));
            assert!((x_concurrence(&rho).unwrap() - alpha).abs() < 1e-15);
        }
    }

    #[test]
    fn x_concurrence_names_offending_entry() {
        let mut m = ComplexMatrix::diagonal(&[0.25; 4]);
        m.set(0, 1, c(0.1));
        m.set(1, 0, c(0.1));
        m.set(1, 3, c(0.05));
        m.set(3, 1, c(0.05));
        let rho = DensityMatrix::from_matrix_unchecked(m);
        assert!(!is_x_shaped(&rho, 1e-9));
        match x_concurrence(&rho).unwrap_err() {
            Error::NotXShaped { row, col, magnitude } => {
                assert_eq!((row, col), (0, 1));
                assert!((magnitude - 0.1).abs() < 1e-16);
            }
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn x_shape_tolerance_absorbs_noise() {
        let mut m = ComplexMatrix::diagonal(&[0.25; 4]);
        m.set(0, 3, c(0.2));
        m.set(3, 0, c(0.2));
        m.set(0, 1, c(1e-12));
        m.set(1, 0, c(1e-12));
        let rho = DensityMatrix::from_matrix_unchecked(m);
        assert!(is_x_shaped(&rho, X_SHAPE_TOLERANCE));
        assert!(!is_x_shaped(&rho, 1e-13));
        assert!((x_concurrence(&rho).unwrap() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn dispatch_labels() {
        let b = coherence_concurrence(&initial_state(0.5).unwrap()).unwrap();
        assert_eq!(b.method, Method::XClosedForm);
        assert_eq!((b.lower, b.upper), (0.5, 0.5));

        let b = coherence_concurrence(&DensityMatrix::maximally_mixed(1)).unwrap();
        assert_eq!((b.lower, b.upper), (0.0, 0.0));

        let psi = PureState::normalized(vec![c(0.6), c(0.0), Complex64::new(0.0, 0.8), c(0.0)]).unwrap();
        let b = coherence_concurrence(&DensityMatrix::from_pure(&psi)).unwrap();
        assert_eq!(b.method, Method::PureExact);
        assert!((b.upper - 0.96).abs() < 1e-12);
    }

    #[test]
    fn l1_matches_pure_concurrence_on_fixed_vectors() {
        let amps: Vec<Complex64> =
            [(0.1, 0.2), (-0.3, 0.05), (0.4, -0.4), (0.0, 0.7)].iter().map(|&(r, i)| Complex64::new(r, i)).collect();
        let psi = PureState::normalized(amps).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        assert!((pure_concurrence(&psi) - l1_coherence(&rho)).abs() < 1e-14);
    }
}
