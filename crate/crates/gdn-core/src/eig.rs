//! Dense real nonsymmetric eigensolver.
//!
//! Classic EISPACK lineage: Parlett–Reinsch balancing, Householder reduction
//! to upper Hessenberg form, then Francis double-shift QR with accumulated
//! transformations and back-substitution for the eigenvectors. Eigenvalues
//! come out as (re, im) pairs; for a complex conjugate pair at positions
//! `j, j+1` the vector columns hold the real and imaginary parts of the
//! eigenvector, matching the usual real-storage convention.

use crate::fp;
use crate::matrix::RealMatrix;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const EPS: f64 = 2.220446049250313e-16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EigError {
    /// QR iteration failed to deflate an eigenvalue within the iteration cap.
    NoConvergence,
}

impl fmt::Display for EigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigError::NoConvergence => write!(f, "QR iteration did not converge"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EigError {}

/// Raw eigendecomposition output, unsorted (deflation order).
pub struct EigenDecomposition {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    /// Column j is the eigenvector for eigenvalue j (real case), or the
    /// real/imaginary parts for a conjugate pair (j, j+1).
    pub vectors: RealMatrix,
}

impl EigenDecomposition {
    /// Spectral radius max |λ|.
    pub fn spectral_radius(&self) -> f64 {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(&r, &i)| fp::hypot(r, i))
            .fold(0.0, f64::max)
    }

    pub fn max_imag_abs(&self) -> f64 {
        self.im.iter().fold(0.0, |m, i| m.max(i.abs()))
    }
}

/// Computes eigenvalues and eigenvectors of a dense real square matrix.
pub fn eigen(a: &RealMatrix) -> Result<EigenDecomposition, EigError> {
    let n = a.n();
    if n == 1 {
        return Ok(EigenDecomposition {
            re: vec![a[(0, 0)]],
            im: vec![0.0],
            vectors: RealMatrix::identity(1),
        });
    }
    let mut h = a.entries().to_vec();
    let scale = balance(&mut h, n);
    let mut v = vec![0.0; n * n];
    orthes(&mut h, &mut v, n);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    hqr2(&mut h, &mut v, &mut d, &mut e, n)?;
    // Undo the balancing similarity on the eigenvector rows.
    for i in 0..n {
        for j in 0..n {
            v[i * n + j] *= scale[i];
        }
    }
    normalize_columns(&mut v, &e, n);
    Ok(EigenDecomposition {
        re: d,
        im: e,
        vectors: RealMatrix::new(n, v).expect("solver produced non-finite eigenvectors"),
    })
}

/// Parlett–Reinsch balancing (radix-2 diagonal similarity, no permutation).
/// Returns the per-row scale factors; balanced matrix is D⁻¹ A D.
fn balance(h: &mut [f64], n: usize) -> Vec<f64> {
    const RADIX: f64 = 2.0;
    const SQRDX: f64 = RADIX * RADIX;
    let mut scale = vec![1.0; n];
    for _pass in 0..100 {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += h[j * n + i].abs();
                    r += h[i * n + j].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= SQRDX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= SQRDX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                scale[i] *= f;
                let inv = 1.0 / f;
                for j in 0..n {
                    h[i * n + j] *= inv;
                }
                for j in 0..n {
                    h[j * n + i] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
    scale
}

/// Householder reduction to upper Hessenberg form, accumulating the
/// orthogonal transformation into `v`.
fn orthes(h: &mut [f64], v: &mut [f64], n: usize) {
    let low = 0;
    let high = n - 1;
    let mut ort = vec![0.0; n];

    for m in low + 1..high {
        let mut sc = 0.0;
        for i in m..=high {
            sc += h[i * n + m - 1].abs();
        }
        if sc == 0.0 {
            continue;
        }
        let mut hh = 0.0;
        for i in (m..=high).rev() {
            ort[i] = h[i * n + m - 1] / sc;
            hh += ort[i] * ort[i];
        }
        let mut g = fp::sqrt(hh);
        if ort[m] > 0.0 {
            g = -g;
        }
        hh -= ort[m] * g;
        ort[m] -= g;

        for j in m..n {
            let mut f = 0.0;
            for i in (m..=high).rev() {
                f += ort[i] * h[i * n + j];
            }
            f /= hh;
            for i in m..=high {
                h[i * n + j] -= f * ort[i];
            }
        }
        for i in 0..=high {
            let mut f = 0.0;
            for j in (m..=high).rev() {
                f += ort[j] * h[i * n + j];
            }
            f /= hh;
            for j in m..=high {
                h[i * n + j] -= f * ort[j];
            }
        }
        ort[m] *= sc;
        h[m * n + m - 1] = sc * g;
    }

    for i in 0..n {
        for j in 0..n {
            v[i * n + j] = if i == j { 1.0 } else { 0.0 };
        }
    }
    for m in (low + 1..high).rev() {
        if h[m * n + m - 1] == 0.0 {
            continue;
        }
        for i in m + 1..=high {
            ort[i] = h[i * n + m - 1];
        }
        for j in m..=high {
            let mut g = 0.0;
            for i in m..=high {
                g += ort[i] * v[i * n + j];
            }
            // double division avoids possible underflow
            g = (g / ort[m]) / h[m * n + m - 1];
            for i in m..=high {
                v[i * n + j] += g * ort[i];
            }
        }
    }
}

fn cdiv(xr: f64, xi: f64, yr: f64, yi: f64) -> (f64, f64) {
    if yr.abs() > yi.abs() {
        let r = yi / yr;
        let d = yr + r * yi;
        ((xr + r * xi) / d, (xi - r * xr) / d)
    } else {
        let r = yr / yi;
        let d = yi + r * yr;
        ((r * xr + xi) / d, (r * xi - xr) / d)
    }
}

/// Francis double-shift QR on a Hessenberg matrix, with eigenvector
/// back-substitution and back-transformation into `v`.
#[allow(clippy::too_many_lines)]
fn hqr2(h: &mut [f64], v: &mut [f64], d: &mut [f64], e: &mut [f64], nn: usize) -> Result<(), EigError> {
    let low: usize = 0;
    let high: usize = nn - 1;
    let at = |i: usize, j: usize| i * nn + j;

    let mut norm = 0.0;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[at(i, j)].abs();
        }
    }
    if norm == 0.0 {
        // zero matrix: eigenvalues zero, V already holds the basis
        for i in 0..nn {
            d[i] = 0.0;
            e[i] = 0.0;
        }
        return Ok(());
    }

    let mut n = nn - 1;
    let mut active = true; // n is usize; becomes false once the last block deflates
    let mut exshift = 0.0;
    let mut iter = 0usize;
    let mut total_iter = 0usize;
    let (mut p, mut q, mut r, mut s, mut z);
    let (mut x, mut y, mut w);

    while active {
        // Look for a single small sub-diagonal element.
        let mut l = n;
        while l > low {
            s = h[at(l - 1, l - 1)].abs() + h[at(l, l)].abs();
            if s == 0.0 {
                s = norm;
            }
            if h[at(l, l - 1)].abs() < EPS * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // One real root found.
            h[at(n, n)] += exshift;
            d[n] = h[at(n, n)];
            e[n] = 0.0;
            if n == low {
                active = false;
            } else {
                n -= 1;
            }
            iter = 0;
        } else if l == n - 1 {
            // A 2x2 block: real or complex pair.
            w = h[at(n, n - 1)] * h[at(n - 1, n)];
            p = (h[at(n - 1, n - 1)] - h[at(n, n)]) / 2.0;
            q = p * p + w;
            z = fp::sqrt(q.abs());
            h[at(n, n)] += exshift;
            h[at(n - 1, n - 1)] += exshift;
            x = h[at(n, n)];
            if q >= 0.0 {
                z = if p >= 0.0 { p + z } else { p - z };
                d[n - 1] = x + z;
                d[n] = d[n - 1];
                if z != 0.0 {
                    d[n] = x - w / z;
                }
                e[n - 1] = 0.0;
                e[n] = 0.0;
                x = h[at(n, n - 1)];
                s = x.abs() + z.abs();
                p = x / s;
                q = z / s;
                r = fp::sqrt(p * p + q * q);
                p /= r;
                q /= r;
                for j in n - 1..nn {
                    z = h[at(n - 1, j)];
                    h[at(n - 1, j)] = q * z + p * h[at(n, j)];
                    h[at(n, j)] = q * h[at(n, j)] - p * z;
                }
                for i in 0..=n {
                    z = h[at(i, n - 1)];
                    h[at(i, n - 1)] = q * z + p * h[at(i, n)];
                    h[at(i, n)] = q * h[at(i, n)] - p * z;
                }
                for i in low..=high {
                    z = v[at(i, n - 1)];
                    v[at(i, n - 1)] = q * z + p * v[at(i, n)];
                    v[at(i, n)] = q * v[at(i, n)] - p * z;
                }
            } else {
                d[n - 1] = x + p;
                d[n] = x + p;
                e[n - 1] = z;
                e[n] = -z;
            }
            if n <= low + 1 {
                active = false;
            } else {
                n -= 2;
            }
            iter = 0;
        } else {
            // Form shift.
            x = h[at(n, n)];
            y = 0.0;
            w = 0.0;
            if l < n {
                y = h[at(n - 1, n - 1)];
                w = h[at(n, n - 1)] * h[at(n - 1, n)];
            }
            if iter == 10 {
                exshift += x;
                for i in low..=n {
                    h[at(i, i)] -= x;
                }
                s = h[at(n, n - 1)].abs() + h[at(n - 1, n - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = fp::sqrt(s);
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low..=n {
                        h[at(i, i)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = 0.964;
                    w = 0.964;
                }
            }
            iter += 1;
            total_iter += 1;
            if total_iter > 60 * nn {
                return Err(EigError::NoConvergence);
            }

            // Look for two consecutive small sub-diagonal elements.
            let mut m = n - 2;
            loop {
                z = h[at(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[at(m + 1, m)] + h[at(m, m + 1)];
                q = h[at(m + 1, m + 1)] - z - r - s;
                r = h[at(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if h[at(m, m - 1)].abs() * (q.abs() + r.abs())
                    < EPS
                        * (p.abs()
                            * (h[at(m - 1, m - 1)].abs() + z.abs() + h[at(m + 1, m + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=n {
                h[at(i, i - 2)] = 0.0;
                if i > m + 2 {
                    h[at(i, i - 3)] = 0.0;
                }
            }

            // Double QR step on rows l..=n, columns m..=n.
            for k in m..n {
                let notlast = k != n - 1;
                if k != m {
                    p = h[at(k, k - 1)];
                    q = h[at(k + 1, k - 1)];
                    r = if notlast { h[at(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = fp::sqrt(p * p + q * q + r * r);
                if p < 0.0 {
                    s = -s;
                }
                if s == 0.0 {
                    continue;
                }
                if k != m {
                    h[at(k, k - 1)] = -s * x;
                } else if l != m {
                    h[at(k, k - 1)] = -h[at(k, k - 1)];
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;

                for j in k..nn {
                    let mut pp = h[at(k, j)] + q * h[at(k + 1, j)];
                    if notlast {
                        pp += r * h[at(k + 2, j)];
                        h[at(k + 2, j)] -= pp * z;
                    }
                    h[at(k, j)] -= pp * x;
                    h[at(k + 1, j)] -= pp * y;
                }
                let hi = if n < k + 3 { n } else { k + 3 };
                for i in 0..=hi {
                    let mut pp = x * h[at(i, k)] + y * h[at(i, k + 1)];
                    if notlast {
                        pp += z * h[at(i, k + 2)];
                        h[at(i, k + 2)] -= pp * r;
                    }
                    h[at(i, k)] -= pp;
                    h[at(i, k + 1)] -= pp * q;
                }
                for i in low..=high {
                    let mut pp = x * v[at(i, k)] + y * v[at(i, k + 1)];
                    if notlast {
                        pp += z * v[at(i, k + 2)];
                        v[at(i, k + 2)] -= pp * r;
                    }
                    v[at(i, k)] -= pp;
                    v[at(i, k + 1)] -= pp * q;
                }
            }
        }
    }

    if norm == 0.0 {
        return Ok(());
    }

    // Back-substitute the vectors of the quasi-triangular form.
    for nv in (0..nn).rev() {
        p = d[nv];
        q = e[nv];
        if q == 0.0 {
            // Real vector.
            let mut l = nv;
            h[at(nv, nv)] = 1.0;
            z = 0.0;
            s = 0.0;
            for i in (0..nv).rev() {
                w = h[at(i, i)] - p;
                r = 0.0;
                for j in l..=nv {
                    r += h[at(i, j)] * h[at(j, nv)];
                }
                if e[i] < 0.0 {
                    z = w;
                    s = r;
                } else {
                    l = i;
                    if e[i] == 0.0 {
                        h[at(i, nv)] = if w != 0.0 { -r / w } else { -r / (EPS * norm) };
                    } else {
                        // Solve the real 2x2 system for a conjugate pair above.
                        x = h[at(i, i + 1)];
                        y = h[at(i + 1, i)];
                        let qq = (d[i] - p) * (d[i] - p) + e[i] * e[i];
                        let t = (x * s - z * r) / qq;
                        h[at(i, nv)] = t;
                        h[at(i + 1, nv)] = if x.abs() > z.abs() {
                            (-r - w * t) / x
                        } else {
                            (-s - y * t) / z
                        };
                    }
                    // Overflow control.
                    let t = h[at(i, nv)].abs();
                    if (EPS * t) * t > 1.0 {
                        for j in i..=nv {
                            h[at(j, nv)] /= t;
                        }
                    }
                }
            }
        } else if q < 0.0 && nv > 0 {
            // Complex vector, stored in columns nv-1 (real) and nv (imag).
            let mut l = nv - 1;
            if h[at(nv, nv - 1)].abs() > h[at(nv - 1, nv)].abs() {
                h[at(nv - 1, nv - 1)] = q / h[at(nv, nv - 1)];
                h[at(nv - 1, nv)] = -(h[at(nv, nv)] - p) / h[at(nv, nv - 1)];
            } else {
                let (cr, ci) = cdiv(0.0, -h[at(nv - 1, nv)], h[at(nv - 1, nv - 1)] - p, q);
                h[at(nv - 1, nv - 1)] = cr;
                h[at(nv - 1, nv)] = ci;
            }
            h[at(nv, nv - 1)] = 0.0;
            h[at(nv, nv)] = 1.0;
            z = 0.0;
            r = 0.0;
            s = 0.0;
            for i in (0..nv - 1).rev() {
                let mut ra = 0.0;
                let mut sa = 0.0;
                for j in l..=nv {
                    ra += h[at(i, j)] * h[at(j, nv - 1)];
                    sa += h[at(i, j)] * h[at(j, nv)];
                }
                w = h[at(i, i)] - p;
                if e[i] < 0.0 {
                    z = w;
                    r = ra;
                    s = sa;
                } else {
                    l = i;
                    if e[i] == 0.0 {
                        let (cr, ci) = cdiv(-ra, -sa, w, q);
                        h[at(i, nv - 1)] = cr;
                        h[at(i, nv)] = ci;
                    } else {
                        x = h[at(i, i + 1)];
                        y = h[at(i + 1, i)];
                        let mut vr = (d[i] - p) * (d[i] - p) + e[i] * e[i] - q * q;
                        let vi = (d[i] - p) * 2.0 * q;
                        if vr == 0.0 && vi == 0.0 {
                            vr = EPS
                                * norm
                                * (w.abs() + q.abs() + x.abs() + y.abs() + z.abs());
                        }
                        let (cr, ci) =
                            cdiv(x * r - z * ra + q * sa, x * s - z * sa - q * ra, vr, vi);
                        h[at(i, nv - 1)] = cr;
                        h[at(i, nv)] = ci;
                        if x.abs() > z.abs() + q.abs() {
                            h[at(i + 1, nv - 1)] =
                                (-ra - w * h[at(i, nv - 1)] + q * h[at(i, nv)]) / x;
                            h[at(i + 1, nv)] =
                                (-sa - w * h[at(i, nv)] - q * h[at(i, nv - 1)]) / x;
                        } else {
                            let (cr, ci) =
                                cdiv(-r - y * h[at(i, nv - 1)], -s - y * h[at(i, nv)], z, q);
                            h[at(i + 1, nv - 1)] = cr;
                            h[at(i + 1, nv)] = ci;
                        }
                    }
                    let t = h[at(i, nv - 1)].abs().max(h[at(i, nv)].abs());
                    if (EPS * t) * t > 1.0 {
                        for j in i..=nv {
                            h[at(j, nv - 1)] /= t;
                            h[at(j, nv)] /= t;
                        }
                    }
                }
            }
        }
    }

    // Back-transform to eigenvectors of the original (balanced) matrix.
    for j in (low..nn).rev() {
        for i in low..=high {
            let hi = if j < high { j } else { high };
            let mut zz = 0.0;
            for k in low..=hi {
                zz += v[at(i, k)] * h[at(k, j)];
            }
            v[at(i, j)] = zz;
        }
    }
    Ok(())
}

/// Unit 2-norm columns; real columns additionally get a sign convention
/// (largest-magnitude component positive) so results are reproducible.
fn normalize_columns(v: &mut [f64], e: &[f64], n: usize) {
    let mut j = 0;
    while j < n {
        if e[j] == 0.0 {
            let mut nrm = 0.0;
            let mut big = 0.0;
            let mut sign = 1.0;
            for i in 0..n {
                let val = v[i * n + j];
                nrm += val * val;
                if val.abs() > big {
                    big = val.abs();
                    sign = if val < 0.0 { -1.0 } else { 1.0 };
                }
            }
            nrm = fp::sqrt(nrm);
            if nrm > 0.0 {
                let f = sign / nrm;
                for i in 0..n {
                    v[i * n + j] *= f;
                }
            }
            j += 1;
        } else {
            // Conjugate pair: scale both columns by the pair norm.
            let mut nrm = 0.0;
            for i in 0..n {
                nrm += v[i * n + j] * v[i * n + j];
                if j + 1 < n {
                    nrm += v[i * n + j + 1] * v[i * n + j + 1];
                }
            }
            nrm = fp::sqrt(nrm);
            if nrm > 0.0 {
                for i in 0..n {
                    v[i * n + j] /= nrm;
                    if j + 1 < n {
                        v[i * n + j + 1] /= nrm;
                    }
                }
            }
            j += 2;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RealMatrix;

    fn residual_real(a: &RealMatrix, ed: &EigenDecomposition) -> f64 {
        // max over real eigenpairs of ||A v - lambda v||_inf / (||A||_inf ||v||_inf)
        let n = a.n();
        let mut worst = 0.0f64;
        for j in 0..n {
            if ed.im[j] != 0.0 {
                continue;
            }
            let mut vmax = 0.0f64;
            let mut rmax = 0.0f64;
            for i in 0..n {
                let mut av = 0.0;
                for k in 0..n {
                    av += a[(i, k)] * ed.vectors[(k, j)];
                }
                let r = av - ed.re[j] * ed.vectors[(i, j)];
                rmax = rmax.max(r.abs());
                vmax = vmax.max(ed.vectors[(i, j)].abs());
            }
            worst = worst.max(rmax / (a.inf_norm().max(1.0) * vmax.max(1e-300)));
        }
        worst
    }

    #[test]
    fn diagonal_matrix() {
        let a = RealMatrix::from_rows(&[&[3.0, 0.0, 0.0], &[0.0, 2.0, 0.0], &[0.0, 0.0, 1.0]])
            .unwrap();
        let ed = eigen(&a).unwrap();
        let mut lams = ed.re.clone();
        lams.sort_by(|x, y| y.partial_cmp(x).unwrap());
        assert_eq!(lams, vec![3.0, 2.0, 1.0]);
        assert_eq!(ed.max_imag_abs(), 0.0);
    }

    #[test]
    fn all_ones_matrix() {
        let a = RealMatrix::new(3, vec![1.0; 9]).unwrap();
        let ed = eigen(&a).unwrap();
        let mut lams = ed.re.clone();
        lams.sort_by(|x, y| y.partial_cmp(x).unwrap());
        assert!((lams[0] - 3.0).abs() < 1e-12);
        assert!(lams[1].abs() < 1e-12 && lams[2].abs() < 1e-12);
        assert!(residual_real(&a, &ed) < 1e-12);
    }

    #[test]
    fn rotation_gives_complex_pair() {
        let a = RealMatrix::from_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let ed = eigen(&a).unwrap();
        assert!((ed.max_imag_abs() - 1.0).abs() < 1e-12);
        assert!(ed.re.iter().all(|r| r.abs() < 1e-12));
    }

    #[test]
    fn wide_magnitude_spread_is_balanced() {
        // Entries spanning seven orders of magnitude.
        let a = RealMatrix::from_rows(&[
            &[1.0, 7.0, 0.0, 0.0],
            &[0.0, 17000.0, 8500.0, 0.0],
            &[0.0, 0.0, 24000.0, 1600.0],
            &[20.0, 0.0, 0.0, 5.0],
        ])
        .unwrap();
        let ed = eigen(&a).unwrap();
        assert_eq!(ed.max_imag_abs(), 0.0);
        assert!(residual_real(&a, &ed) < 1e-13);
        let mut lams = ed.re.clone();
        lams.sort_by(|x, y| y.partial_cmp(x).unwrap());
        assert!((lams[0] - 24000.0).abs() < 1.0);
        assert!((lams[1] - 17000.0).abs() < 1.0);
    }

    #[test]
    fn random_matrices_have_small_residuals() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for n in 2..=8usize {
            for _ in 0..30 {
                let entries: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let a = RealMatrix::new(n, entries).unwrap();
                let ed = eigen(&a).unwrap();
                // trace equals eigenvalue sum (complex parts cancel pairwise)
                let tr: f64 = ed.re.iter().sum();
                assert!(
                    (tr - a.trace()).abs() < 1e-9 * a.inf_norm().max(1.0),
                    "trace mismatch n={n}"
                );
                assert!(residual_real(&a, &ed) < 1e-10, "residual too big n={n}");
            }
        }
    }

    #[test]
    fn symmetric_psd_spectrum_nonnegative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 2..=6usize {
            let b: Vec<f64> = (0..n * n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let bm = RealMatrix::new(n, b).unwrap();
            let a = bm.mul(&bm.transpose());
            let ed = eigen(&a).unwrap();
            assert_eq!(ed.max_imag_abs(), 0.0);
            assert!(ed.re.iter().all(|&l| l > -1e-10 * ed.spectral_radius()));
            assert!(residual_real(&a, &ed) < 1e-11);
        }
    }
}
