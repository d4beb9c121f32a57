//! Seeded random matrix generators for tests, search seeding, and the
//! verification suite.
//!
//! Three families:
//! - DN: `B Bᵀ` for entrywise nonnegative B (optionally shifted to be
//!   invertible) — symmetric PSD nonnegative;
//! - invertible GDN: a positive diagonal similarity `D⁻¹ M D` of an
//!   invertible DN matrix (nonsymmetric, same positive spectrum), mixed
//!   with odd-n corner-cycle matrices and hierarchical cyclic samples;
//! - reducible GDN: block upper triangular with GDN diagonal blocks.

use crate::constructions::{build_prop44, prop44_default_params};
use crate::fp;
use crate::matrix::RealMatrix;
use crate::spectral::validate_gdn;
use crate::ToleranceConfig;
use alloc::vec::Vec;
use rand::Rng;

/// Log-uniform draw on [lo, hi].
pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let (llo, lhi) = (fp::ln(lo), fp::ln(hi));
    fp::exp(rng.gen_range(llo..lhi))
}

/// Symmetric doubly nonnegative matrix: `B Bᵀ` with nonnegative B, plus a
/// diagonal shift most of the time (so singular DN matrices appear too).
pub fn random_dn<R: Rng>(n: usize, rng: &mut R) -> RealMatrix {
    let b: Vec<f64> = (0..n * n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let bm = RealMatrix::new(n, b).expect("finite entries");
    let mut a = bm.mul(&bm.transpose());
    if rng.gen_bool(0.7) {
        let shift = rng.gen_range(0.01..0.5);
        for i in 0..n {
            a[(i, i)] += shift;
        }
    }
    let scale = log_uniform(rng, 0.1, 100.0);
    a.scale(scale)
}

/// Invertible DN: the shift is always applied.
fn random_dn_invertible<R: Rng>(n: usize, rng: &mut R) -> RealMatrix {
    let b: Vec<f64> = (0..n * n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let bm = RealMatrix::new(n, b).expect("finite entries");
    let mut a = bm.mul(&bm.transpose());
    let shift = rng.gen_range(0.05..0.5) * (a.trace() / n as f64).max(0.1);
    for i in 0..n {
        a[(i, i)] += shift;
    }
    a
}

/// Positive diagonal similarity `D⁻¹ M D`: keeps the spectrum, breaks the
/// symmetry, keeps entries nonnegative.
fn diagonal_similarity<R: Rng>(m: &RealMatrix, rng: &mut R) -> RealMatrix {
    let n = m.n();
    let d: Vec<f64> = (0..n).map(|_| log_uniform(rng, 0.1, 10.0)).collect();
    let mut out = RealMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = m[(i, j)] * d[j] / d[i];
        }
    }
    out
}

/// Cyclic hierarchical candidate: log-spread descending diagonal, a cycle
/// of small couplings sized against the smallest diagonal gap. Gershgorin
/// keeps the spectrum real and positive most of the time; the caller
/// validates.
fn cyclic_candidate<R: Rng>(n: usize, rng: &mut R) -> RealMatrix {
    let mut diag: Vec<f64> = (0..n).map(|_| log_uniform(rng, 1.0, 1e4)).collect();
    diag.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut gap = f64::INFINITY;
    for w in diag.windows(2) {
        gap = gap.min(w[0] - w[1]);
    }
    gap = gap.min(*diag.last().expect("n >= 1"));
    let eps = gap * rng.gen_range(0.05..0.45);
    let mut a = RealMatrix::zeros(n);
    for (i, &d) in diag.iter().enumerate() {
        a[(i, i)] = d;
        a[(i, (i + 1) % n)] = eps.max(1e-6);
    }
    a
}

/// Invertible GDN matrix with strictly positive spectrum, validated before
/// returning. Panics only if generation fails persistently, which would be
/// a generator bug.
pub fn random_invertible_gdn<R: Rng>(n: usize, rng: &mut R) -> RealMatrix {
    let tol = ToleranceConfig::default();
    for attempt in 0..200 {
        let kind = rng.gen_range(0..4u8);
        let candidate = match kind {
            0 | 1 => diagonal_similarity(&random_dn_invertible(n, rng), rng),
            2 if n >= 3 && n % 2 == 1 => {
                let seed = rng.gen::<u64>();
                match build_prop44(&prop44_default_params(n, seed)) {
                    Ok(a) => a,
                    Err(_) => continue,
                }
            }
            _ => cyclic_candidate(n, rng),
        };
        let report = validate_gdn(&candidate, &tol);
        if report.is_gdn && report.min_eigenvalue_real > 0.0 {
            return candidate;
        }
        let _ = attempt;
    }
    panic!("generator failed to produce an invertible GDN matrix for n = {n}");
}

/// Reducible GDN matrix, block upper triangular by construction:
/// `[[B, C], [0, D]]` with GDN blocks and nonnegative coupling. Returns the
/// matrix and the split point k.
pub fn random_reducible_gdn<R: Rng>(n: usize, rng: &mut R) -> (RealMatrix, usize) {
    assert!(n >= 2, "reducible matrices need n >= 2");
    let tol = ToleranceConfig::default();
    for _ in 0..200 {
        let k = rng.gen_range(1..n);
        let b = if k == 1 {
            RealMatrix::new(1, alloc::vec![log_uniform(rng, 0.5, 10.0)]).expect("1x1")
        } else {
            random_invertible_gdn(k, rng)
        };
        let d = if n - k == 1 {
            RealMatrix::new(1, alloc::vec![log_uniform(rng, 0.5, 10.0)]).expect("1x1")
        } else {
            random_invertible_gdn(n - k, rng)
        };
        // separate the block spectra so the assembly stays diagonalizable
        let d = d.scale(rng.gen_range(1.5..4.0));
        let mut a = RealMatrix::zeros(n);
        for i in 0..k {
            for j in 0..k {
                a[(i, j)] = b[(i, j)];
            }
        }
        for i in 0..n - k {
            for j in 0..n - k {
                a[(k + i, k + j)] = d[(i, j)];
            }
        }
        let coupling = rng.gen_range(0.1..2.0);
        for i in 0..k {
            for j in k..n {
                if rng.gen_bool(0.6) {
                    a[(i, j)] = coupling * rng.gen_range(0.0..1.0);
                }
            }
        }
        if validate_gdn(&a, &tol).is_gdn {
            return (a, k);
        }
    }
    panic!("generator failed to produce a reducible GDN matrix for n = {n}");
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn dn_generator_yields_gdn() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let tol = ToleranceConfig::default();
        for n in 2..=6 {
            for _ in 0..10 {
                let a = random_dn(n, &mut rng);
                let r = validate_gdn(&a, &tol);
                assert!(r.is_gdn, "n={n}: {:?}", r.failures);
                assert!(a.min_entry() >= 0.0);
            }
        }
    }

    #[test]
    fn invertible_gdn_generator_has_positive_spectrum() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let tol = ToleranceConfig::default();
        for n in 2..=6 {
            for _ in 0..10 {
                let a = random_invertible_gdn(n, &mut rng);
                let r = validate_gdn(&a, &tol);
                assert!(r.is_gdn && r.min_eigenvalue_real > 0.0, "n={n}");
            }
        }
    }

    #[test]
    fn reducible_generator_keeps_zero_block() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in 2..=6 {
            let (a, k) = random_reducible_gdn(n, &mut rng);
            for i in k..n {
                for j in 0..k {
                    assert_eq!(a[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn generators_are_deterministic_under_seed() {
        let a1 = random_invertible_gdn(4, &mut rand_chacha::ChaCha8Rng::seed_from_u64(77));
        let a2 = random_invertible_gdn(4, &mut rand_chacha::ChaCha8Rng::seed_from_u64(77));
        assert_eq!(a1, a2);
    }
}
