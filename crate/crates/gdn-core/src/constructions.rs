//! Parameterized extremal families and named example matrices, each with
//! self-verification.
//!
//! The centerpiece is the odd-n upper-bidiagonal family with a corner
//! entry: diagonal `d₁ > … > d_{n−1} > dₙ = 0`, superdiagonal ε, and corner
//! `(n,1) = ε`. Gershgorin discs keep the spectrum real, `det = εⁿ > 0`
//! makes it GDN, `(Aᵏ)ₙₙ = 0` for `k < n` pushes the index of primitivity
//! to at least n, and the diagonal entry `(n,n)` of `A^α` must dip negative
//! somewhere in `(n−2, n−1)`. That exhibits critical exponents of at least
//! `n−1`, strictly above the symmetric-case value `n−2`.

use crate::exppoly::NegInterval;
use crate::fp;
use crate::matrix::RealMatrix;
use crate::powers::{hadamard_power, EntryPolyMatrix};
use crate::spectral::{gdn_spectral, raw_eigenvalues};
use crate::ToleranceConfig;
use alloc::vec::Vec;
use core::fmt;
use rand::{Rng, SeedableRng};

/// Parameters for the odd-n corner-cycle family.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Prop44Params {
    /// Odd, at least 3.
    pub n: usize,
    /// The n−1 positive diagonal values, strictly decreasing (dₙ = 0 is
    /// implied).
    pub d: Vec<f64>,
    /// Coupling entry; must satisfy `0 < ε < min gap / 2` so the Gershgorin
    /// discs stay disjoint.
    pub eps: f64,
}

impl Prop44Params {
    pub fn validate(&self) -> Result<(), ConstructionError> {
        if self.n < 3 || self.n % 2 == 0 || self.d.len() != self.n - 1 {
            return Err(ConstructionError::InvalidParams(
                "n must be odd >= 3 with n-1 diagonal values",
            ));
        }
        let mut prev = f64::INFINITY;
        for &v in &self.d {
            if !(v > 0.0 && v < prev) {
                return Err(ConstructionError::InvalidParams(
                    "diagonal values must be strictly decreasing and positive",
                ));
            }
            prev = v;
        }
        let min_gap = self.min_gap();
        if !(self.eps > 0.0 && self.eps < min_gap / 2.0) {
            return Err(ConstructionError::InvalidParams(
                "eps must lie in (0, min gap / 2)",
            ));
        }
        Ok(())
    }

    /// Smallest gap between consecutive diagonal values, counting the
    /// implicit dₙ = 0.
    pub fn min_gap(&self) -> f64 {
        let mut gap = f64::INFINITY;
        for w in self.d.windows(2) {
            gap = gap.min(w[0] - w[1]);
        }
        gap.min(*self.d.last().expect("validated length"))
    }
}

/// Deterministic parameter draw: `dᵢ = (n−i)·scale` with a random scale in
/// [1, 10], and `ε = 0.4·(min gap)`.
pub fn prop44_default_params(n: usize, seed: u64) -> Prop44Params {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let scale = rng.gen_range(1.0..10.0);
    let d: Vec<f64> = (1..n).map(|i| (n - i) as f64 * scale).collect();
    // every consecutive gap equals `scale`, so this is 0.4 · min gap
    let eps = 0.4 * scale;
    Prop44Params { n, d, eps }
}

/// Which self-verification clause failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Prop44Clause {
    SpectrumRealPositive,
    DeterminantEqualsEpsN,
    CornerDiagonalZeroUpToN,
    NegativityInTargetInterval,
}

impl fmt::Display for Prop44Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Prop44Clause::SpectrumRealPositive => "spectrum real and positive",
            Prop44Clause::DeterminantEqualsEpsN => "det equals eps^n",
            Prop44Clause::CornerDiagonalZeroUpToN => "(n,n) entry of A^k zero for k < n",
            Prop44Clause::NegativityInTargetInterval => "negativity of (n,n) in (n-2, n-1)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConstructionError {
    InvalidParams(&'static str),
    VerificationFailed(Prop44Clause),
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            ConstructionError::VerificationFailed(c) => write!(f, "verification failed: {c}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConstructionError {}

/// Builds the family matrix and runs all four verification clauses.
pub fn build_prop44(p: &Prop44Params) -> Result<RealMatrix, ConstructionError> {
    p.validate()?;
    let n = p.n;
    let mut a = RealMatrix::zeros(n);
    for i in 0..n - 1 {
        a[(i, i)] = p.d[i];
        a[(i, i + 1)] = p.eps;
    }
    a[(n - 1, 0)] = p.eps;

    // spectrum: real and strictly positive
    let eigs = raw_eigenvalues(&a).ok_or(ConstructionError::VerificationFailed(
        Prop44Clause::SpectrumRealPositive,
    ))?;
    let rho = eigs.iter().fold(0.0f64, |m, &(re, im)| m.max(fp::hypot(re, im)));
    for &(re, im) in &eigs {
        if im.abs() > 1e-8 * rho || re <= 0.0 {
            return Err(ConstructionError::VerificationFailed(
                Prop44Clause::SpectrumRealPositive,
            ));
        }
    }

    // det = eps^n exactly up to relative 1e-8
    let det = a.det();
    let want = fp::powi(p.eps, n as i32);
    if (det - want).abs() > 1e-8 * want {
        return Err(ConstructionError::VerificationFailed(
            Prop44Clause::DeterminantEqualsEpsN,
        ));
    }

    // (A^k)_{nn} = 0 for k = 1..n-1 — exactly: every path of length < n
    // from n back to n carries a structural zero factor
    let mut ak = a.clone();
    for _k in 1..n {
        if ak[(n - 1, n - 1)] != 0.0 {
            return Err(ConstructionError::VerificationFailed(
                Prop44Clause::CornerDiagonalZeroUpToN,
            ));
        }
        ak = ak.mul(&a);
    }

    // the (n,n) entry must go negative somewhere in (n-2, n-1)
    let tol = ToleranceConfig::default();
    let sd = gdn_spectral(&a, &tol).map_err(|_| {
        ConstructionError::VerificationFailed(Prop44Clause::SpectrumRealPositive)
    })?;
    let epm = EntryPolyMatrix::from_spectral(&sd);
    let target = ((n - 2) as f64, (n - 1) as f64);
    let intervals = epm
        .poly(n - 1, n - 1)
        .negativity_intervals((1e-4, n as f64), tol.isolation_tol, tol.touch_tol)
        .map_err(|_| {
            ConstructionError::VerificationFailed(Prop44Clause::NegativityInTargetInterval)
        })?;
    let hits = intervals
        .iter()
        .any(|iv| iv.hi > target.0 && iv.lo < target.1);
    if !hits {
        return Err(ConstructionError::VerificationFailed(
            Prop44Clause::NegativityInTargetInterval,
        ));
    }
    Ok(a)
}

/// The (n,n)-entry negativity intervals of a family matrix, for reporting.
pub fn prop44_corner_negativity(
    a: &RealMatrix,
    tol: &ToleranceConfig,
) -> Option<Vec<NegInterval>> {
    let n = a.n();
    let sd = gdn_spectral(a, tol).ok()?;
    let epm = EntryPolyMatrix::from_spectral(&sd);
    epm.poly(n - 1, n - 1)
        .negativity_intervals((1e-4, n as f64), tol.isolation_tol, tol.touch_tol)
        .ok()
}

/// Named example matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum PaperMatrix {
    /// 4×4 with critical exponent in (3.99, 4).
    Ce4,
    /// 5×5 with critical exponent in (5.99, 6).
    Ce5,
    /// 6×6 with critical exponent in (6.99, 7).
    Ce6,
    /// 4×4 with index of primitivity 4.
    Mip4,
    /// 5×5 with index of primitivity 6.
    Mip5,
    /// 6×6 with index of primitivity 6.
    Mip6,
    /// 3×3 whose Hadamard powers have a negative eigenvalue for every
    /// α > 1.
    Hadamard3,
}

impl PaperMatrix {
    pub const ALL: [PaperMatrix; 7] = [
        PaperMatrix::Ce4,
        PaperMatrix::Ce5,
        PaperMatrix::Ce6,
        PaperMatrix::Mip4,
        PaperMatrix::Mip5,
        PaperMatrix::Mip6,
        PaperMatrix::Hadamard3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PaperMatrix::Ce4 => "ce4",
            PaperMatrix::Ce5 => "ce5",
            PaperMatrix::Ce6 => "ce6",
            PaperMatrix::Mip4 => "mip4",
            PaperMatrix::Mip5 => "mip5",
            PaperMatrix::Mip6 => "mip6",
            PaperMatrix::Hadamard3 => "hadamard3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|m| m.name() == s)
    }
}

impl fmt::Display for PaperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Returns the named matrix, entries verbatim.
pub fn paper_matrix(name: PaperMatrix) -> RealMatrix {
    let rows: &[&[f64]] = match name {
        PaperMatrix::Ce4 => &[
            &[1.0, 7.0, 0.0, 0.0],
            &[0.0, 17000.0, 8500.0, 0.0],
            &[0.0, 0.0, 24000.0, 1600.0],
            &[20.0, 0.0, 0.0, 5.0],
        ],
        PaperMatrix::Ce5 => &[
            &[10.0, 70.0, 0.0, 0.0, 0.0],
            &[0.0, 5.0, 90.0, 0.0, 0.0],
            &[0.0, 0.0, 80000.0, 15000.0, 0.0],
            &[0.0, 0.0, 0.0, 120000.0, 30.0],
            &[150.0, 0.0, 0.0, 0.0, 0.0],
        ],
        PaperMatrix::Ce6 => &[
            &[156.0, 1605.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 375.0, 7932.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 805.0, 7840.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 13803330.0, 224210.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 9373900.0, 18590.0],
            &[105720.0, 0.0, 0.0, 0.0, 0.0, 25200.0],
        ],
        PaperMatrix::Mip4 => &[
            &[0.0, 0.0, 2.0, 0.0],
            &[0.0, 68.0, 56.0, 21.0],
            &[0.0, 0.0, 0.0, 16.0],
            &[14.0, 72.0, 0.0, 168.0],
        ],
        PaperMatrix::Mip5 => &[
            &[1800.0, 405.0, 0.0, 0.0, 0.0],
            &[0.0, 916.0, 794.0, 0.0, 0.0],
            &[447.0, 0.0, 0.0, 7.0, 0.0],
            &[0.0, 300.0, 0.0, 0.0, 15.0],
            &[0.0, 0.0, 72.0, 0.0, 0.0],
        ],
        PaperMatrix::Mip6 => &[
            &[2439.0, 1020.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 1917.0, 668.0, 0.0, 0.0, 0.0],
            &[509.0, 0.0, 890.0, 213.0, 0.0, 0.0],
            &[0.0, 2746.0, 0.0, 0.0, 158.0, 0.0],
            &[0.0, 0.0, 270.0, 0.0, 0.0, 2.0],
            &[0.0, 0.0, 0.0, 206.0, 0.0, 0.0],
        ],
        // The (2,2) entry is 2, consistent with the closed-form spectrum
        // λ₁ = 2^α − 1, λ₂,₃ = 2^α + ½ ± √(5^α + 5/4) (and with the matrix
        // being GDN at α = 1, eigenvalues {5, 1, 0}).
        PaperMatrix::Hadamard3 => &[&[2.0, 1.0, 1.0], &[1.0, 2.0, 1.0], &[1.0, 5.0, 2.0]],
    };
    RealMatrix::from_rows(rows).expect("example matrices are well formed")
}

/// Closed-form eigenvalues of `hadamard3^{(α)}`, descending.
pub fn hadamard3_closed_eigenvalues(alpha: f64) -> [f64; 3] {
    let two = fp::powf(2.0, alpha);
    let root = fp::sqrt(fp::powf(5.0, alpha) + 1.25);
    let mut eigs = [two - 1.0, two + 0.5 + root, two + 0.5 - root];
    eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eigs
}

/// One sampled α of the Hadamard counterexample demo.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HadamardSample {
    pub alpha: f64,
    pub min_eigenvalue: f64,
    pub closed_form_rel_err: f64,
}

/// Demonstrates that Hadamard powers of `hadamard3` never regain a
/// nonnegative spectrum: the minimum eigenvalue stays negative at every
/// sampled α in (1, alpha_max], and computed spectra match the closed forms.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HadamardDemoReport {
    pub alpha_max: f64,
    pub step: f64,
    pub samples: usize,
    pub all_min_eigenvalues_negative: bool,
    pub max_closed_form_rel_err: f64,
    /// First α where a check failed, if any.
    pub first_failure: Option<f64>,
    /// Worst few samples for inspection.
    pub extremes: Vec<HadamardSample>,
}

impl HadamardDemoReport {
    pub fn holds(&self) -> bool {
        self.all_min_eigenvalues_negative && self.max_closed_form_rel_err <= 1e-8
    }
}

/// Samples α over (1, alpha_max] with step 0.05 and checks both claims.
pub fn hadamard_no_ce_demo(alpha_max: f64) -> Option<HadamardDemoReport> {
    if !(alpha_max > 1.0) || !alpha_max.is_finite() {
        return None;
    }
    let a = paper_matrix(PaperMatrix::Hadamard3);
    let step = 0.05;
    let mut alphas = Vec::new();
    let mut k = 1usize;
    loop {
        let alpha = 1.0 + k as f64 * step;
        if alpha > alpha_max + 1e-12 {
            break;
        }
        alphas.push(alpha);
        k += 1;
    }
    if alphas.last().is_none_or(|&l| l < alpha_max - 1e-12) {
        alphas.push(alpha_max);
    }

    let mut all_negative = true;
    let mut worst_rel = 0.0f64;
    let mut first_failure = None;
    let mut extremes: Vec<HadamardSample> = Vec::new();
    for &alpha in &alphas {
        let ha = hadamard_power(&a, alpha).ok()?;
        let eigs = raw_eigenvalues(&ha)?;
        let min_eig = eigs.iter().fold(f64::INFINITY, |m, &(re, _)| m.min(re));
        let closed = hadamard3_closed_eigenvalues(alpha);
        let mut rel = 0.0f64;
        for (&(re, _), &cf) in eigs.iter().zip(closed.iter()) {
            rel = rel.max((re - cf).abs() / cf.abs().max(1.0));
        }
        worst_rel = worst_rel.max(rel);
        let ok = min_eig < 0.0 && rel <= 1e-8;
        if min_eig >= 0.0 {
            all_negative = false;
        }
        if !ok && first_failure.is_none() {
            first_failure = Some(alpha);
        }
        if extremes.len() < 3 || rel >= extremes.last().map_or(0.0, |s| s.closed_form_rel_err) {
            extremes.push(HadamardSample {
                alpha,
                min_eigenvalue: min_eig,
                closed_form_rel_err: rel,
            });
            extremes.sort_by(|x, y| {
                y.closed_form_rel_err
                    .partial_cmp(&x.closed_form_rel_err)
                    .unwrap()
            });
            extremes.truncate(3);
        }
    }
    Some(HadamardDemoReport {
        alpha_max,
        step,
        samples: alphas.len(),
        all_min_eigenvalues_negative: all_negative,
        max_closed_form_rel_err: worst_rel,
        first_failure,
        extremes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ce::estimate_ce;
    use crate::primitivity::{index_of_primitivity, BoolPattern};
    use crate::spectral::validate_gdn;

    #[test]
    fn prop44_params_validation() {
        let good = Prop44Params {
            n: 3,
            d: alloc::vec![2.0, 1.0],
            eps: 0.4,
        };
        assert!(good.validate().is_ok());
        let even = Prop44Params {
            n: 4,
            d: alloc::vec![3.0, 2.0, 1.0],
            eps: 0.3,
        };
        assert!(even.validate().is_err());
        let eps_too_big = Prop44Params {
            n: 3,
            d: alloc::vec![2.0, 1.0],
            eps: 0.6,
        };
        assert!(eps_too_big.validate().is_err());
        let not_decreasing = Prop44Params {
            n: 5,
            d: alloc::vec![1.0, 2.0, 3.0, 0.5],
            eps: 0.1,
        };
        assert!(not_decreasing.validate().is_err());
    }

    #[test]
    fn prop44_n3_has_ce_two() {
        let a = build_prop44(&Prop44Params {
            n: 3,
            d: alloc::vec![2.0, 1.0],
            eps: 0.4,
        })
        .unwrap();
        assert!(validate_gdn(&a, &ToleranceConfig::default()).is_gdn);
        let profile = estimate_ce(&a, &ToleranceConfig::default()).unwrap();
        let (lo, hi) = profile.bracket.unwrap();
        assert!(lo > 2.0 - 1e-5 && hi <= 2.0 + 1e-6, "bracket [{lo}, {hi}]");
    }

    #[test]
    fn prop44_n5_primitivity_at_least_n() {
        let a = build_prop44(&prop44_default_params(5, 99)).unwrap();
        let idx = index_of_primitivity(&BoolPattern::from_matrix(&a, 0.0)).unwrap();
        assert!(idx >= 5, "index {idx}");
    }

    #[test]
    fn prop44_n7_ce_at_least_n_minus_one() {
        let a = build_prop44(&prop44_default_params(7, 7)).unwrap();
        let profile = estimate_ce(&a, &ToleranceConfig::default()).unwrap();
        let sup = profile.global_sup.unwrap();
        assert!(sup >= 6.0 - 1e-4, "sup {sup}");
    }

    #[test]
    fn named_matrices_are_gdn() {
        let tol = ToleranceConfig::default();
        for m in PaperMatrix::ALL {
            let a = paper_matrix(m);
            let report = validate_gdn(&a, &tol);
            assert!(report.is_gdn, "{m}: {:?}", report.failures);
        }
    }

    #[test]
    fn hadamard3_matches_closed_forms_at_one() {
        let eigs = hadamard3_closed_eigenvalues(1.0);
        assert!((eigs[0] - 5.0).abs() < 1e-12);
        assert!((eigs[1] - 1.0).abs() < 1e-12);
        assert!(eigs[2].abs() < 1e-12);
    }

    #[test]
    fn hadamard_demo_short_run() {
        let report = hadamard_no_ce_demo(10.0).unwrap();
        assert!(report.holds(), "report: {report:?}");
        assert!(report.samples >= 180);
        // closed form at alpha = 2: lambda_3 = 4.5 - sqrt(26.25)
        let cf = hadamard3_closed_eigenvalues(2.0);
        assert!((cf[2] - (4.5 - 26.25f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn hadamard_demo_rejects_bad_alpha() {
        assert!(hadamard_no_ce_demo(1.0).is_none());
        assert!(hadamard_no_ce_demo(0.5).is_none());
    }
}
