//! Continuous conventional powers `A^α = Σ λᵢ^α Pᵢ`, Hadamard powers
//! `A^{(α)} = (aᵢⱼ^α)`, and entry-trajectory export.

use crate::exppoly::ExpPoly;
use crate::fp;
use crate::matrix::RealMatrix;
use crate::spectral::{raw_eigenvalues, SpectralData};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum PowerError {
    /// Conventional powers need a nonnegative spectrum.
    NegativeEigenvalue(f64),
    /// Hadamard powers need nonnegative entries.
    NegativeEntry(f64),
    /// The eigensolver failed on a Hadamard power.
    EigenFailure,
}

impl fmt::Display for PowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerError::NegativeEigenvalue(l) => write!(f, "negative eigenvalue {l:e}"),
            PowerError::NegativeEntry(e) => write!(f, "negative entry {e:e}"),
            PowerError::EigenFailure => write!(f, "eigendecomposition failed"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PowerError {}

/// `Σ λᵢ^α Pᵢ` for α > 0. With a clamped GDN spectrum the zero eigenvalue
/// contributes nothing (`0^α = 0`).
pub fn power(sd: &SpectralData, alpha: f64) -> Result<RealMatrix, PowerError> {
    if let Some(&bad) = sd.lambdas.iter().find(|&&l| l < 0.0) {
        return Err(PowerError::NegativeEigenvalue(bad));
    }
    let n = sd.n();
    let mut out = RealMatrix::zeros(n);
    for (lam, p) in sd.lambdas.iter().zip(&sd.projectors) {
        let w = if *lam == 0.0 { 0.0 } else { fp::powf(*lam, alpha) };
        if w == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += w * p[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Entrywise power `(aᵢⱼ^α)` with `0^α := 0`.
pub fn hadamard_power(a: &RealMatrix, alpha: f64) -> Result<RealMatrix, PowerError> {
    if let Some(&bad) = a.entries().iter().find(|&&e| e < 0.0) {
        return Err(PowerError::NegativeEntry(bad));
    }
    let entries = a
        .entries()
        .iter()
        .map(|&e| if e == 0.0 { 0.0 } else { fp::powf(e, alpha) })
        .collect();
    Ok(RealMatrix::new(a.n(), entries).expect("entrywise power of finite entries"))
}

/// Eigenvalues of `A^{(α)}` for each requested α, sorted by descending real
/// part, with imaginary parts kept as diagnostics (a Hadamard power of a
/// nonnegative matrix may well have complex spectrum).
pub fn hadamard_spectrum_trace(
    a: &RealMatrix,
    alphas: &[f64],
) -> Result<Vec<Vec<(f64, f64)>>, PowerError> {
    let mut out = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let ha = hadamard_power(a, alpha)?;
        let eigs = raw_eigenvalues(&ha).ok_or(PowerError::EigenFailure)?;
        out.push(eigs);
    }
    Ok(out)
}

/// The n×n grid of entry exponential polynomials of `A^α`: the coefficient
/// of `λₖ^α` in entry (i, j) is `(Pₖ)ᵢⱼ`.
#[derive(Debug, Clone)]
pub struct EntryPolyMatrix {
    n: usize,
    polys: Vec<ExpPoly>,
}

impl EntryPolyMatrix {
    pub fn from_spectral(sd: &SpectralData) -> Self {
        let n = sd.n();
        // Keep every nonzero coefficient: an entry's meaningful terms can
        // be twenty orders below its largest one (they are what survives
        // at large α), so no relative drop rule is safe here. Phantom
        // structure from roundoff-scale coefficients is screened later
        // against exact integer-power anchors.
        let mut polys = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let terms = sd
                    .lambdas
                    .iter()
                    .zip(&sd.projectors)
                    .map(|(&lam, p)| (p[(i, j)], lam));
                polys.push(
                    ExpPoly::with_zero_tol(terms, 0.0).expect("spectral bases are nonnegative"),
                );
            }
        }
        Self { n, polys }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self, i: usize, j: usize) -> &ExpPoly {
        &self.polys[i * self.n + j]
    }

    /// Entrywise evaluation; equals `power(sd, alpha)` up to roundoff.
    pub fn evaluate(&self, alpha: f64) -> RealMatrix {
        let mut out = RealMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self.poly(i, j).evaluate(alpha);
            }
        }
        out
    }
}

/// One sampled point of an entry trajectory; indices are 0-based here and
/// 1-based in the CSV rendering.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrajectoryPoint {
    pub alpha: f64,
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

/// Samples the selected entries of `A^α` over `[window.0, window.1]` with
/// the given step. Rows come out entry-major, then by α.
pub fn trajectory(
    epm: &EntryPolyMatrix,
    entries: &[(usize, usize)],
    window: (f64, f64),
    step: f64,
) -> Vec<TrajectoryPoint> {
    let (lo, hi) = window;
    let mut rows = Vec::new();
    if !(lo > 0.0 && hi >= lo && step > 0.0) {
        return rows;
    }
    for &(i, j) in entries {
        let p = epm.poly(i, j);
        let mut k = 0usize;
        loop {
            let alpha = lo + k as f64 * step;
            if alpha > hi + step * 1e-9 {
                break;
            }
            let alpha = alpha.min(hi);
            rows.push(TrajectoryPoint {
                alpha,
                i,
                j,
                value: p.evaluate(alpha),
            });
            if alpha >= hi {
                break;
            }
            k += 1;
        }
    }
    rows
}

/// Lossless CSV: header `alpha,i,j,value`, indices 1-based, 17 significant
/// digits.
pub fn trajectory_csv(rows: &[TrajectoryPoint]) -> String {
    let mut out = String::from("alpha,i,j,value\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{:.16e},{},{},{:.16e}",
            r.alpha,
            r.i + 1,
            r.j + 1,
            r.value
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::gdn_spectral;
    use crate::ToleranceConfig;
    use alloc::vec;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn identity_power_is_identity() {
        let sd = gdn_spectral(&RealMatrix::identity(4), &tol()).unwrap();
        for alpha in [0.3, 1.0, 2.5, 17.0] {
            let p = power(&sd, alpha).unwrap();
            assert!(p.sub(&RealMatrix::identity(4)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_square_root() {
        let a = RealMatrix::from_rows(&[&[4.0, 0.0], &[0.0, 9.0]]).unwrap();
        let sd = gdn_spectral(&a, &tol()).unwrap();
        let h = power(&sd, 0.5).unwrap();
        assert!((h[(0, 0)] - 2.0).abs() < 1e-12);
        assert!((h[(1, 1)] - 3.0).abs() < 1e-12);
        assert!(h[(0, 1)].abs() < 1e-12);
    }

    #[test]
    fn negative_spectrum_rejected() {
        let sd = SpectralData {
            lambdas: vec![2.0, -1.0],
            projectors: vec![RealMatrix::identity(2), RealMatrix::zeros(2)],
            cond_s: 1.0,
        };
        assert!(matches!(
            power(&sd, 0.5),
            Err(PowerError::NegativeEigenvalue(_))
        ));
    }

    #[test]
    fn integer_powers_match_repeated_multiplication() {
        let a = RealMatrix::from_rows(&[
            &[1.0, 7.0, 0.0, 0.0],
            &[0.0, 17000.0, 8500.0, 0.0],
            &[0.0, 0.0, 24000.0, 1600.0],
            &[20.0, 0.0, 0.0, 5.0],
        ])
        .unwrap();
        let sd = gdn_spectral(&a, &tol()).unwrap();
        let epm = EntryPolyMatrix::from_spectral(&sd);
        for k in 1..=5usize {
            let exact = a.int_power(k);
            let viapow = power(&sd, k as f64).unwrap();
            assert!(
                viapow.sub(&exact).max_abs() <= 1e-8 * exact.max_abs(),
                "k={k}"
            );
            if k <= 3 {
                let viapoly = epm.evaluate(k as f64);
                assert!(
                    viapoly.sub(&exact).max_abs() <= 1e-8 * exact.max_abs(),
                    "poly k={k}"
                );
            }
        }
    }

    #[test]
    fn hadamard_power_entrywise() {
        let a = RealMatrix::from_rows(&[&[4.0, 1.0], &[0.0, 9.0]]).unwrap();
        let h = hadamard_power(&a, 0.5).unwrap();
        assert_eq!(h.entries(), &[2.0, 1.0, 0.0, 3.0]);
        let j = RealMatrix::new(3, vec![1.0; 9]).unwrap();
        for alpha in [0.5, 2.0, 13.0] {
            assert_eq!(hadamard_power(&j, alpha).unwrap().entries(), j.entries());
        }
        let neg = RealMatrix::from_rows(&[&[1.0, -0.5], &[0.0, 1.0]]).unwrap();
        assert!(matches!(
            hadamard_power(&neg, 2.0),
            Err(PowerError::NegativeEntry(_))
        ));
    }

    #[test]
    fn hadamard_identity_alpha_is_input() {
        let a = RealMatrix::from_rows(&[&[2.0, 1.0, 1.0], &[1.0, 2.0, 1.0], &[1.0, 5.0, 2.0]])
            .unwrap();
        let h = hadamard_power(&a, 1.0).unwrap();
        assert!(h.sub(&a).max_abs() < 1e-15);
    }

    #[test]
    fn hadamard_spectrum_of_psd_square_stays_nonnegative() {
        // Schur product theorem: A∘A of a PSD nonnegative matrix is PSD
        let a = RealMatrix::from_rows(&[&[2.0, 1.0, 0.5], &[1.0, 3.0, 1.0], &[0.5, 1.0, 2.5]])
            .unwrap();
        let traces = hadamard_spectrum_trace(&a, &[2.0]).unwrap();
        for &(re, im) in &traces[0] {
            assert!(im.abs() < 1e-10);
            assert!(re > -1e-10);
        }
    }

    #[test]
    fn trajectory_constant_for_identity() {
        let sd = gdn_spectral(&RealMatrix::identity(3), &tol()).unwrap();
        let epm = EntryPolyMatrix::from_spectral(&sd);
        let rows = trajectory(&epm, &[(0, 0), (0, 1)], (0.5, 2.5), 0.5);
        assert_eq!(rows.len(), 10);
        for r in rows.iter().take(5) {
            assert!((r.value - 1.0).abs() < 1e-12);
        }
        for r in rows.iter().skip(5) {
            assert!(r.value.abs() < 1e-12);
        }
        let csv = trajectory_csv(&rows);
        assert!(csv.starts_with("alpha,i,j,value\n"));
        assert!(csv.lines().count() == 11);
        // 1-based indices in the rendering
        assert!(csv.lines().nth(1).unwrap().contains(",1,1,"));
    }

    #[test]
    fn trajectory_matches_power_at_shared_alpha() {
        let a = RealMatrix::from_rows(&[&[3.0, 1.0], &[0.5, 2.0]]).unwrap();
        let sd = gdn_spectral(&a, &tol()).unwrap();
        let epm = EntryPolyMatrix::from_spectral(&sd);
        let rows = trajectory(&epm, &[(0, 1)], (0.25, 3.0), 0.25);
        for r in &rows {
            let p = power(&sd, r.alpha).unwrap();
            let want = p[(r.i, r.j)];
            assert!(
                (r.value - want).abs() <= 1e-10 * want.abs().max(1.0),
                "alpha={}",
                r.alpha
            );
        }
    }
}
