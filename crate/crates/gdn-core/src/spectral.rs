//! Spectral decomposition into merged rank-≥1 projectors, and GDN
//! validation.
//!
//! For a diagonalizable `A = S D S⁻¹` with columns `xᵢ` of `S` and rows `yᵢ`
//! of `S⁻¹`, the matrix splits as `A = Σ λᵢ xᵢ yᵢ`. Numerically coincident
//! eigenvalues are merged and their rank-one terms summed, which keeps the
//! projector family well conditioned and the downstream Descartes counting
//! sound when eigenvalues collide in floating point.

use crate::eig::{self, EigenDecomposition};
use crate::matrix::RealMatrix;
use crate::primitivity::{reducibility_blocks, BlockStructure, BoolPattern};
use crate::ToleranceConfig;
use alloc::vec::Vec;
use core::fmt;

/// Accept a decomposition only below this eigenvector condition number.
const COND_MAX: f64 = 1e12;
/// Absolute cap on `‖PᵢPⱼ − δᵢⱼPᵢ‖_max` for the merged projector family.
const IDEM_TOL: f64 = 1e-6;
/// Relative cap on `‖Σ λᵢPᵢ − A‖_max` and `‖Σ Pᵢ − I‖_max`.
const RECON_TOL: f64 = 1e-6;

/// Eigenvalues (merged, strictly descending) with their spectral projectors.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectralData {
    /// Distinct eigenvalues, strictly descending.
    pub lambdas: Vec<f64>,
    /// `projectors[i]` sums the rank-one terms of all eigenvalues merged
    /// into `lambdas[i]`; `Σ Pᵢ = I` and `PᵢPⱼ = δᵢⱼ Pᵢ` within tolerance.
    pub projectors: Vec<RealMatrix>,
    /// 1-norm condition estimate of the eigenvector matrix.
    pub cond_s: f64,
}

impl SpectralData {
    pub fn n(&self) -> usize {
        self.projectors.first().map_or(0, RealMatrix::n)
    }

    /// `Σ λᵢ Pᵢ`, which should reproduce the decomposed matrix.
    pub fn reconstruct(&self) -> RealMatrix {
        let n = self.n();
        let mut out = RealMatrix::zeros(n);
        for (lam, p) in self.lambdas.iter().zip(&self.projectors) {
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += lam * p[(i, j)];
                }
            }
        }
        out
    }

    /// Clamps eigenvalues in `[-floor, 0)` to exactly zero.
    pub(crate) fn clamp_small_negatives(&mut self, floor: f64) {
        for lam in &mut self.lambdas {
            if *lam < 0.0 && *lam >= -floor {
                *lam = 0.0;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DecomposeError {
    /// Eigenvector matrix too ill conditioned, or the projector family is
    /// not idempotent/orthogonal within tolerance.
    NotDiagonalizable { cond_s: f64 },
    /// An eigenvalue has imaginary part above `imag_tol·ρ(A)`.
    ComplexSpectrum { max_imag_abs: f64 },
    /// The QR iteration failed or reconstruction did not close.
    NumericalFailure,
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::NotDiagonalizable { cond_s } => {
                write!(
                    f,
                    "matrix is not numerically diagonalizable (cond_S ~ {cond_s:.3e})"
                )
            }
            DecomposeError::ComplexSpectrum { max_imag_abs } => {
                write!(f, "spectrum has imaginary parts up to {max_imag_abs:.3e}")
            }
            DecomposeError::NumericalFailure => write!(f, "eigendecomposition failed numerically"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DecomposeError {}

/// Reason codes carried by [`GdnReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ReasonCode {
    NegativeEntry,
    NegativeEigenvalue,
    ComplexSpectrum,
    NotDiagonalizable,
    NumericalFailure,
    /// Entry in `[-entry_tol·scale, 0)`: treated as zero.
    ClampedNegativeEntry,
    /// Eigenvalue in `[-eig_tol·ρ(A), 0)`: treated as zero.
    ClampedNegativeEigenvalue,
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReasonCode::NegativeEntry => "negative-entry",
            ReasonCode::NegativeEigenvalue => "negative-eigenvalue",
            ReasonCode::ComplexSpectrum => "complex-spectrum",
            ReasonCode::NotDiagonalizable => "not-diagonalizable",
            ReasonCode::NumericalFailure => "numerical-failure",
            ReasonCode::ClampedNegativeEntry => "clamped-negative-entry",
            ReasonCode::ClampedNegativeEigenvalue => "clamped-negative-eigenvalue",
        };
        f.write_str(s)
    }
}

/// Validation verdict with the diagnostics that produced it.
///
/// `is_gdn` is true exactly when `failures` is empty; in-tolerance
/// violations are clamped and land in `warnings` instead.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GdnReport {
    pub is_gdn: bool,
    pub min_entry: f64,
    pub min_eigenvalue_real: f64,
    pub max_eigenvalue_imag_abs: f64,
    pub diag_cond: f64,
    pub irreducible: bool,
    pub failures: Vec<ReasonCode>,
    pub warnings: Vec<ReasonCode>,
}

/// Eigendecomposition with merging, in descending eigenvalue order.
///
/// Eigenvalues with `|λᵢ−λⱼ| ≤ merge_tol·max(1, ρ(A))` are merged and their
/// projectors summed; imaginary parts up to `imag_tol·ρ(A)` are dropped
/// (their paired real-storage columns then merge into the correct invariant
/// subspace projector).
pub fn decompose(a: &RealMatrix, tol: &ToleranceConfig) -> Result<SpectralData, DecomposeError> {
    let ed = eig::eigen(a).map_err(|_| DecomposeError::NumericalFailure)?;
    decompose_from(a, tol, &ed)
}

fn decompose_from(
    a: &RealMatrix,
    tol: &ToleranceConfig,
    ed: &EigenDecomposition,
) -> Result<SpectralData, DecomposeError> {
    let n = a.n();
    let rho = ed.spectral_radius();
    let max_im = ed.max_imag_abs();
    if max_im > tol.imag_tol * rho {
        return Err(DecomposeError::ComplexSpectrum {
            max_imag_abs: max_im,
        });
    }

    // Sort eigenvalues descending, permuting eigenvector columns along.
    // Conjugate-pair columns share an eigenvalue, so the sort keeps them in
    // one merge cluster and the summed projector spans their invariant
    // subspace.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        ed.re[j]
            .partial_cmp(&ed.re[i])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut s = RealMatrix::zeros(n);
    let mut lams = Vec::with_capacity(n);
    for (col, &src) in order.iter().enumerate() {
        lams.push(ed.re[src]);
        for i in 0..n {
            s[(i, col)] = ed.vectors[(i, src)];
        }
    }

    let mut s_inv = s.inverse().ok_or(DecomposeError::NotDiagonalizable {
        cond_s: f64::INFINITY,
    })?;
    let cond_s = s.one_norm() * s_inv.one_norm();
    if !cond_s.is_finite() || cond_s > COND_MAX {
        return Err(DecomposeError::NotDiagonalizable { cond_s });
    }

    // Inverse-iteration polish of the simple, well-separated eigenpairs.
    // Entry polynomials can hinge on eigenvector components many orders
    // below the dominant ones; a shifted solve recovers their relative
    // accuracy where plain QR back-substitution loses it.
    refine_eigenvectors(a, &lams, &mut s, &mut s_inv, rho);

    // Cluster by gap, then sum each cluster's rank-one terms. Simple
    // clusters use the biorthogonal rank-one form x·yᵀ/(yᵀx), which is
    // idempotent by construction.
    let merge_gap = tol.merge_tol * rho.max(1.0);
    let mut lambdas = Vec::new();
    let mut projectors = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && lams[end - 1] - lams[end] <= merge_gap {
            end += 1;
        }
        lambdas.push(lams[start..end].iter().sum::<f64>() / (end - start) as f64);
        let mut proj = RealMatrix::zeros(n);
        if end - start == 1 {
            let k = start;
            let mut dot = 0.0;
            for i in 0..n {
                dot += s[(i, k)] * s_inv[(k, i)];
            }
            if dot.abs() > 1e-3 {
                for i in 0..n {
                    for j in 0..n {
                        proj[(i, j)] = s[(i, k)] * s_inv[(k, j)] / dot;
                    }
                }
            } else {
                for i in 0..n {
                    for j in 0..n {
                        proj[(i, j)] = s[(i, k)] * s_inv[(k, j)];
                    }
                }
            }
        } else {
            for i in 0..n {
                for j in 0..n {
                    let mut acc = 0.0;
                    for k in start..end {
                        acc += s[(i, k)] * s_inv[(k, j)];
                    }
                    proj[(i, j)] = acc;
                }
            }
        }
        projectors.push(proj);
        start = end;
    }

    // Projector family checks: idempotence, orthogonality, resolution of
    // the identity, and reconstruction of A.
    let k = projectors.len();
    for i in 0..k {
        for j in 0..k {
            let prod = projectors[i].mul(&projectors[j]);
            let err = if i == j {
                prod.sub(&projectors[i]).max_abs()
            } else {
                prod.max_abs()
            };
            if !(err <= IDEM_TOL) {
                return Err(DecomposeError::NotDiagonalizable { cond_s });
            }
        }
    }
    let mut sum_p = RealMatrix::zeros(n);
    for p in &projectors {
        for i in 0..n {
            for j in 0..n {
                sum_p[(i, j)] += p[(i, j)];
            }
        }
    }
    if sum_p.sub(&RealMatrix::identity(n)).max_abs() > RECON_TOL {
        return Err(DecomposeError::NotDiagonalizable { cond_s });
    }
    let sd = SpectralData {
        lambdas,
        projectors,
        cond_s,
    };
    if sd.reconstruct().sub(a).max_abs() > RECON_TOL * a.max_abs().max(1.0) {
        return Err(DecomposeError::NumericalFailure);
    }
    Ok(sd)
}

/// One inverse-iteration pass for the eigenvector of `m` at shift
/// `lambda`, starting from `v`. Keeps the result only if the eigenpair
/// residual actually shrinks.
fn polish_vector(m: &RealMatrix, lambda: f64, v: &mut [f64]) {
    let n = m.n();
    let mut shifted = m.clone();
    for i in 0..n {
        shifted[(i, i)] -= lambda;
    }
    let Some(lu) = shifted.lu() else {
        // exactly singular shift: the current vector is already as good
        // as the factorization can tell
        return;
    };
    let residual = |x: &[f64]| -> f64 {
        let mut worst = 0.0f64;
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += m[(i, j)] * x[j];
            }
            worst = worst.max((acc - lambda * x[i]).abs());
        }
        worst
    };
    let before = residual(v);
    let mut w = lu.solve(v);
    let norm = crate::fp::sqrt(w.iter().map(|x| x * x).sum::<f64>());
    if !(norm.is_finite() && norm > 0.0) {
        return;
    }
    // keep the orientation of the incoming vector
    let dot: f64 = w.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
    let sign = if dot < 0.0 { -1.0 } else { 1.0 };
    for x in &mut w {
        *x *= sign / norm;
    }
    if w.iter().all(|x| x.is_finite()) && residual(&w) <= before {
        v.copy_from_slice(&w);
    }
}

/// Polishes the simple well-separated real eigenpairs: right vectors
/// against A, left vectors (rows of S⁻¹) against Aᵀ, preserving the
/// row scale of S⁻¹ so that S·S⁻¹ stays near the identity.
fn refine_eigenvectors(
    a: &RealMatrix,
    lams: &[f64],
    s: &mut RealMatrix,
    s_inv: &mut RealMatrix,
    rho: f64,
) {
    let n = a.n();
    let at = a.transpose();
    let sep_floor = 1e-6 * rho.max(1.0);
    for k in 0..n {
        let sep = lams
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &l)| (l - lams[k]).abs())
            .fold(f64::INFINITY, f64::min);
        if sep < sep_floor {
            continue;
        }
        let mut x: Vec<f64> = (0..n).map(|i| s[(i, k)]).collect();
        polish_vector(a, lams[k], &mut x);
        polish_vector(a, lams[k], &mut x);
        for i in 0..n {
            s[(i, k)] = x[i];
        }

        let mut y: Vec<f64> = (0..n).map(|j| s_inv[(k, j)]).collect();
        let scale = crate::fp::sqrt(y.iter().map(|v| v * v).sum::<f64>());
        if scale > 0.0 && scale.is_finite() {
            polish_vector(&at, lams[k], &mut y);
            polish_vector(&at, lams[k], &mut y);
            // polish normalizes; restore the biorthogonal row scale
            let ynorm = crate::fp::sqrt(y.iter().map(|v| v * v).sum::<f64>());
            if ynorm > 0.0 {
                for v in &mut y {
                    *v *= scale / ynorm;
                }
                for j in 0..n {
                    s_inv[(k, j)] = y[j];
                }
            }
        }
    }
}

/// Checks entrywise nonnegativity, diagonalizability, and spectrum
/// nonnegativity, returning a verdict object instead of an error.
pub fn validate_gdn(a: &RealMatrix, tol: &ToleranceConfig) -> GdnReport {
    let mut failures = Vec::new();
    let mut warnings = Vec::new();

    let min_entry = a.min_entry();
    let entry_floor = tol.entry_tol * a.max_abs().max(1.0);
    if min_entry < -entry_floor {
        failures.push(ReasonCode::NegativeEntry);
    } else if min_entry < 0.0 {
        warnings.push(ReasonCode::ClampedNegativeEntry);
    }

    let pattern = BoolPattern::from_matrix(a, 0.0);
    let irreducible = matches!(reducibility_blocks(&pattern), BlockStructure::Irreducible);

    let mut min_re = f64::NAN;
    let mut max_im = f64::NAN;
    let mut diag_cond = f64::NAN;
    match eig::eigen(a) {
        Ok(ed) => {
            min_re = ed.re.iter().fold(f64::INFINITY, |m, &v| m.min(v));
            max_im = ed.max_imag_abs();
            let rho = ed.spectral_radius();
            match decompose_from(a, tol, &ed) {
                Ok(sd) => diag_cond = sd.cond_s,
                Err(DecomposeError::NotDiagonalizable { cond_s }) => {
                    diag_cond = cond_s;
                    failures.push(ReasonCode::NotDiagonalizable);
                }
                Err(DecomposeError::ComplexSpectrum { .. }) => {
                    failures.push(ReasonCode::ComplexSpectrum);
                }
                Err(DecomposeError::NumericalFailure) => {
                    failures.push(ReasonCode::NumericalFailure);
                }
            }
            let eig_floor = tol.eig_tol * rho;
            if min_re < -eig_floor {
                failures.push(ReasonCode::NegativeEigenvalue);
            } else if min_re < 0.0 {
                warnings.push(ReasonCode::ClampedNegativeEigenvalue);
            }
        }
        Err(_) => failures.push(ReasonCode::NumericalFailure),
    }

    GdnReport {
        is_gdn: failures.is_empty(),
        min_entry,
        min_eigenvalue_real: min_re,
        max_eigenvalue_imag_abs: max_im,
        diag_cond,
        irreducible,
        failures,
        warnings,
    }
}

/// Validates and, on success, returns the spectral data with in-tolerance
/// negative eigenvalues clamped to exact zeros — the canonical input for
/// power and critical-exponent computations.
pub fn gdn_spectral(a: &RealMatrix, tol: &ToleranceConfig) -> Result<SpectralData, GdnReport> {
    let report = validate_gdn(a, tol);
    if !report.is_gdn {
        return Err(report);
    }
    let mut sd = decompose(a, tol).map_err(|_| report)?;
    let rho = sd.lambdas.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    sd.clamp_small_negatives(tol.eig_tol * rho);
    debug_assert!(
        sd.lambdas.windows(2).all(|w| w[0] > w[1]),
        "merged eigenvalues must stay strictly descending after clamping"
    );
    Ok(sd)
}

/// Raw eigenvalues as (re, im) pairs sorted by descending real part.
pub fn raw_eigenvalues(a: &RealMatrix) -> Option<Vec<(f64, f64)>> {
    let ed = eig::eigen(a).ok()?;
    let mut pairs: Vec<(f64, f64)> = ed.re.iter().copied().zip(ed.im.iter().copied()).collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(core::cmp::Ordering::Equal));
    Some(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn identity_decomposes_to_single_projector() {
        let a = RealMatrix::identity(3);
        let sd = decompose(&a, &tol()).unwrap();
        assert_eq!(sd.lambdas, vec![1.0]);
        assert_eq!(sd.projectors.len(), 1);
        assert!(sd.projectors[0].sub(&RealMatrix::identity(3)).max_abs() < 1e-12);
    }

    #[test]
    fn diagonal_matrix_gives_elementary_projectors() {
        let a = RealMatrix::from_rows(&[&[3.0, 0.0, 0.0], &[0.0, 2.0, 0.0], &[0.0, 0.0, 1.0]])
            .unwrap();
        let sd = decompose(&a, &tol()).unwrap();
        assert_eq!(sd.lambdas, vec![3.0, 2.0, 1.0]);
        for (k, p) in sd.projectors.iter().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j && i == k { 1.0 } else { 0.0 };
                    assert!((p[(i, j)] - want).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn all_ones_merges_null_space() {
        let a = RealMatrix::new(3, vec![1.0; 9]).unwrap();
        let sd = decompose(&a, &tol()).unwrap();
        assert_eq!(sd.lambdas.len(), 2);
        assert!((sd.lambdas[0] - 3.0).abs() < 1e-10);
        assert!(sd.lambdas[1].abs() < 1e-10);
        // P1 = J/3, P2 = I - J/3
        for i in 0..3 {
            for j in 0..3 {
                assert!((sd.projectors[0][(i, j)] - 1.0 / 3.0).abs() < 1e-10);
                let want = if i == j { 2.0 / 3.0 } else { -1.0 / 3.0 };
                assert!((sd.projectors[1][(i, j)] - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn jordan_block_is_not_diagonalizable() {
        let a = RealMatrix::from_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let report = validate_gdn(&a, &tol());
        assert!(!report.is_gdn);
        assert!(report.failures.contains(&ReasonCode::NotDiagonalizable));
    }

    #[test]
    fn swap_matrix_has_negative_eigenvalue() {
        let a = RealMatrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let report = validate_gdn(&a, &tol());
        assert!(!report.is_gdn);
        assert!(report.failures.contains(&ReasonCode::NegativeEigenvalue));
        assert!((report.min_eigenvalue_real + 1.0).abs() < 1e-12);
    }

    #[test]
    fn reconstruction_invariant_holds_on_wide_scale() {
        let a = RealMatrix::from_rows(&[
            &[1.0, 7.0, 0.0, 0.0],
            &[0.0, 17000.0, 8500.0, 0.0],
            &[0.0, 0.0, 24000.0, 1600.0],
            &[20.0, 0.0, 0.0, 5.0],
        ])
        .unwrap();
        let report = validate_gdn(&a, &tol());
        assert!(report.is_gdn, "failures: {:?}", report.failures);
        assert!(report.irreducible);
        let sd = decompose(&a, &tol()).unwrap();
        assert!(sd.reconstruct().sub(&a).max_abs() <= 1e-6 * a.max_abs());
        // merging is idempotent: decompose(reconstruct) gives the same lambdas
        let sd2 = decompose(&sd.reconstruct(), &tol()).unwrap();
        assert_eq!(sd.lambdas.len(), sd2.lambdas.len());
        for (x, y) in sd.lambdas.iter().zip(&sd2.lambdas) {
            assert!((x - y).abs() <= 1e-6 * x.abs().max(1.0));
        }
    }

    #[test]
    fn zero_matrix_and_1x1_are_trivial() {
        let z = RealMatrix::zeros(3);
        let sd = decompose(&z, &tol()).unwrap();
        assert_eq!(sd.lambdas, vec![0.0]);
        assert!(validate_gdn(&z, &tol()).is_gdn);

        let one = RealMatrix::new(1, vec![2.5]).unwrap();
        let sd1 = decompose(&one, &tol()).unwrap();
        assert_eq!(sd1.lambdas, vec![2.5]);
        assert!(validate_gdn(&one, &tol()).is_gdn);
    }

    #[test]
    fn dn_matrices_are_gdn() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 2..=6usize {
            let b: Vec<f64> = (0..n * n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let bm = RealMatrix::new(n, b).unwrap();
            let a = bm.mul(&bm.transpose());
            let report = validate_gdn(&a, &tol());
            assert!(report.is_gdn, "n={n} failures {:?}", report.failures);
        }
    }
}
