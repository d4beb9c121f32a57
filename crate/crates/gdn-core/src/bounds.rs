//! Closed-form bounds: the sign-change matrix W, per-entry negativity
//! component caps, and the quadratic upper bound on the critical exponent.

use crate::powers::EntryPolyMatrix;
use alloc::vec::Vec;

/// Entrywise count of coefficient sign alternations of the entry
/// polynomials, ordered by decreasing eigenvalue. Each wᵢⱼ bounds the root
/// count of `(A^α)ᵢⱼ` counting multiplicity; wᵢⱼ ≤ n − 1 always.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SignChangeMatrix {
    n: usize,
    w: Vec<usize>,
}

impl SignChangeMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.w[i * self.n + j]
    }

    pub fn max(&self) -> usize {
        self.w.iter().copied().max().unwrap_or(0)
    }
}

pub fn sign_change_matrix(epm: &EntryPolyMatrix) -> SignChangeMatrix {
    let n = epm.n();
    let mut w = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let changes = epm.poly(i, j).sign_changes();
            debug_assert!(changes <= n.saturating_sub(1));
            w.push(changes);
        }
    }
    SignChangeMatrix { n, w }
}

/// Maximum number of connected components of `{α > 1 : (A^α)ᵢⱼ < 0}` for an
/// invertible GDN matrix with `w` coefficient sign changes at that entry:
/// `⌊(w−1)/2⌋` off the diagonal, `⌊w/2⌋` on it, and 0 when w = 0.
pub fn component_cap(w: usize, diagonal: bool) -> usize {
    if w == 0 {
        0
    } else if diagonal {
        w / 2
    } else {
        (w - 1) / 2
    }
}

/// Quadratic upper bound k(n) on the n×n critical exponent:
/// `(n²−3n+4)/2` for odd n, `(n²−2n)/2` for even n.
pub fn theorem_upper_bound(n: usize) -> f64 {
    let nf = n as f64;
    if n % 2 == 1 {
        (nf * nf - 3.0 * nf + 4.0) / 2.0
    } else {
        (nf * nf - 2.0 * nf) / 2.0
    }
}

/// Count of column-set negativity components available in `[1, ∞)`:
/// `(n−1)·⌊(n−2)/2⌋ + ⌊(n−1)/2⌋`, i.e. `(n²−3n+2)/2` for odd n and
/// `(n²−2n)/2` for even n (before the even case loses one to the
/// below-one component).
pub fn component_budget(n: usize) -> usize {
    assert!(n >= 2, "component budget needs n >= 2");
    if n % 2 == 1 {
        (n * n - 3 * n + 2) / 2
    } else {
        (n * n - 2 * n) / 2
    }
}

/// The search window `(0, k(n)+1]` used for whole-matrix negativity work:
/// beyond k(n) entries provably stay nonnegative, the +1 guards boundary
/// roots.
pub fn default_window_hi(n: usize) -> f64 {
    theorem_upper_bound(n) + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RealMatrix;
    use crate::spectral::gdn_spectral;
    use crate::ToleranceConfig;

    #[test]
    fn upper_bound_table() {
        let want = [(2, 0.0), (3, 2.0), (4, 4.0), (5, 7.0), (6, 12.0), (7, 16.0)];
        for (n, k) in want {
            assert_eq!(theorem_upper_bound(n), k, "n={n}");
        }
    }

    #[test]
    fn upper_bound_dominates_dn_bound() {
        for n in 2..=20 {
            assert!(theorem_upper_bound(n) >= (n as f64) - 2.0);
        }
    }

    #[test]
    fn component_budget_values() {
        assert_eq!(component_budget(3), 1);
        assert_eq!(component_budget(5), 6);
        assert_eq!(component_budget(4), 4);
        // both parity branches agree with the displayed count
        for n in 2..=9usize {
            let direct = (n - 1) * ((n - 2) / 2) + (n - 1) / 2;
            assert_eq!(component_budget(n), direct, "n={n}");
        }
    }

    #[test]
    fn component_cap_cases() {
        assert_eq!(component_cap(0, false), 0);
        assert_eq!(component_cap(0, true), 0);
        assert_eq!(component_cap(3, false), 1);
        assert_eq!(component_cap(4, true), 2);
        assert_eq!(component_cap(1, false), 0);
        assert_eq!(component_cap(2, true), 1);
    }

    #[test]
    fn sign_change_matrix_of_diagonal_is_zero() {
        let tol = ToleranceConfig::default();
        for a in [
            RealMatrix::identity(3),
            RealMatrix::from_rows(&[&[3.0, 0.0, 0.0], &[0.0, 2.0, 0.0], &[0.0, 0.0, 1.0]])
                .unwrap(),
        ] {
            let sd = gdn_spectral(&a, &tol).unwrap();
            let epm = EntryPolyMatrix::from_spectral(&sd);
            let w = sign_change_matrix(&epm);
            assert_eq!(w.max(), 0);
        }
    }
}
