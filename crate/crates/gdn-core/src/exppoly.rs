//! Real exponential polynomials `φ(α) = Σ aᵢ λᵢ^α` with distinct
//! nonnegative bases.
//!
//! These are the entry functions of continuous matrix powers. Descartes'
//! rule for exponential polynomials bounds the number of real roots
//! (counting multiplicity) by the number of sign changes in the coefficient
//! sequence ordered by decreasing base, which is what makes certified root
//! isolation possible here.
//!
//! Root isolation runs a sign-scan grid first (with one refinement retry),
//! then — whenever the Descartes budget leaves room for an undetected root
//! pair — an exact fallback: divide by the smallest positive base so the
//! last term becomes constant, differentiate (one term fewer), isolate the
//! derivative's roots recursively, and bracket sign changes between
//! consecutive extrema, where the function is monotone.
//!
//! Evaluation is scale-normalized: values are computed as
//! `λ₁^α · Σ aᵢ e^{α(ln λᵢ − ln λ₁)}` so the sign is resolved without
//! overflow even for bases near 10⁷ and α beyond 16.

use crate::fp;
use alloc::vec::Vec;
use core::fmt;

/// Relative floor below which an evaluation counts as zero: `|φ(α)|` against
/// the gross term magnitude `Σ |aᵢ| λᵢ^α` at the same point.
const SIGN_FLOOR: f64 = 1e-13;
/// Fraction of the tolerance used when refining extrema of the derivative
/// recursion.
const CRIT_REFINE: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Term {
    pub coeff: f64,
    pub base: f64,
}

/// `Σ aᵢ λᵢ^α` with bases strictly descending and ≥ 0; at most one base is
/// zero (its term contributes nothing for α > 0). Coefficients at or below
/// `coeff_zero_tol` are dropped at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPoly {
    terms: Vec<Term>,
    coeff_zero_tol: f64,
    /// `ln(λᵢ) − ln(λ₁)` for each positive-base term.
    log_ratio: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpPolyError {
    NegativeBase,
    NonFinite,
}

impl fmt::Display for ExpPolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpPolyError::NegativeBase => write!(f, "bases must be nonnegative"),
            ExpPolyError::NonFinite => write!(f, "coefficients and bases must be finite"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ExpPolyError {}

impl ExpPoly {
    /// Builds from (coefficient, base) pairs: sorts by descending base,
    /// merges duplicate bases, and drops coefficients at or below
    /// `1e-12 · max|aᵢ|`.
    pub fn new(terms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self, ExpPolyError> {
        let raw: Vec<(f64, f64)> = terms.into_iter().collect();
        let max_abs = raw.iter().fold(0.0f64, |m, &(c, _)| m.max(c.abs()));
        Self::with_zero_tol(raw, 1e-12 * max_abs)
    }

    /// Like [`ExpPoly::new`] with an explicit drop tolerance.
    ///
    /// Matrix entry polynomials pass 0 here: their meaningful coefficients
    /// can sit twenty orders of magnitude below the entry's largest one
    /// (they are what survives at large α), so a relative drop rule is not
    /// safe for them.
    pub fn with_zero_tol(
        terms: impl IntoIterator<Item = (f64, f64)>,
        coeff_zero_tol: f64,
    ) -> Result<Self, ExpPolyError> {
        let mut raw: Vec<(f64, f64)> = terms.into_iter().collect();
        for &(c, b) in &raw {
            if !c.is_finite() || !b.is_finite() {
                return Err(ExpPolyError::NonFinite);
            }
            if b < 0.0 {
                return Err(ExpPolyError::NegativeBase);
            }
        }
        raw.sort_by(|x, y| y.1.partial_cmp(&x.1).unwrap_or(core::cmp::Ordering::Equal));
        let mut merged: Vec<Term> = Vec::with_capacity(raw.len());
        for (c, b) in raw {
            match merged.last_mut() {
                Some(t) if t.base == b => t.coeff += c,
                _ => merged.push(Term { coeff: c, base: b }),
            }
        }
        merged.retain(|t| t.coeff.abs() > coeff_zero_tol && t.coeff != 0.0);
        let log_ratio = Self::log_ratios(&merged);
        Ok(Self {
            terms: merged,
            coeff_zero_tol,
            log_ratio,
        })
    }

    fn log_ratios(terms: &[Term]) -> Vec<f64> {
        let lead = terms.first().map_or(0.0, |t| t.base);
        if lead <= 0.0 {
            return Vec::new();
        }
        let lead_ln = fp::ln(lead);
        terms
            .iter()
            .filter(|t| t.base > 0.0)
            .map(|t| fp::ln(t.base) - lead_ln)
            .collect()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn coeff_zero_tol(&self) -> f64 {
        self.coeff_zero_tol
    }

    /// Number of terms with positive base — the ones active for α > 0.
    fn active(&self) -> &[Term] {
        let k = self.terms.iter().take_while(|t| t.base > 0.0).count();
        &self.terms[..k]
    }

    /// Identically zero on α > 0.
    pub fn is_zero(&self) -> bool {
        self.active().is_empty()
    }

    /// Scaled evaluation: returns `(s, g)` with
    /// `s = Σ aᵢ e^{α(lnλᵢ − lnλ₁)}` and `g = Σ |aᵢ| e^{α(lnλᵢ − lnλ₁)}`,
    /// so `φ(α) = s·λ₁^α` and `g` measures the cancellation scale.
    pub fn eval_scaled(&self, alpha: f64) -> (f64, f64) {
        let (s, g, _) = self.eval_full(alpha);
        (s, g)
    }

    /// Adds `u = Σ e^{α(lnλᵢ − lnλ₁)}`: the unweighted ratio mass.
    fn eval_full(&self, alpha: f64) -> (f64, f64, f64) {
        let mut s = 0.0;
        let mut g = 0.0;
        let mut u = 0.0;
        for (t, lr) in self.active().iter().zip(&self.log_ratio) {
            let w = fp::exp(alpha * lr);
            s += t.coeff * w;
            g += t.coeff.abs() * w;
            u += w;
        }
        (s, g, u)
    }

    /// `Σ aᵢ λᵢ^α` for α > 0 (zero-base terms contribute nothing).
    pub fn evaluate(&self, alpha: f64) -> f64 {
        let act = self.active();
        if act.is_empty() {
            return 0.0;
        }
        let (s, _) = self.eval_scaled(alpha);
        s * fp::powf(act[0].base, alpha)
    }

    /// Sign of φ(α) with a cancellation-aware zero band: 0 when
    /// `|s| ≤ 1e-13·g`.
    pub fn sign_at(&self, alpha: f64) -> i8 {
        let (s, g, _) = self.eval_full(alpha);
        if !s.is_finite() {
            return 0;
        }
        if s.abs() <= SIGN_FLOOR * g {
            0
        } else if s > 0.0 {
            1
        } else {
            -1
        }
    }

    /// Strict sign alternations of the coefficient sequence in decreasing
    /// base order, zero-base terms excluded.
    pub fn sign_changes(&self) -> usize {
        let mut changes = 0;
        let mut prev = 0.0f64;
        for t in self.active() {
            if prev != 0.0 && t.coeff.signum() != prev {
                changes += 1;
            }
            prev = t.coeff.signum();
        }
        changes
    }

    /// The reduced derivative: with `μ = λ_min` (smallest positive base),
    /// `q(α) = φ(α)/μ^α` has the same sign everywhere as φ, and `q'` has one
    /// term fewer. Returned as an ExpPoly in the bases `λᵢ/μ`.
    fn reduced_derivative(&self) -> Option<Self> {
        let act = self.active();
        let mu = act.last().map_or(1.0, |t| t.base);
        let ln_mu = fp::ln(mu);
        let terms = act
            .iter()
            .map(|t| ((fp::ln(t.base) - ln_mu) * t.coeff, t.base / mu))
            .collect::<Vec<_>>();
        Self::new(terms).ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum RootParity {
    /// Odd multiplicity: the sign flips across the root.
    Crossing,
    /// Even multiplicity: an extremum that reaches zero without a sign flip.
    Touching,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IsolatedRoot {
    pub lo: f64,
    pub hi: f64,
    pub parity: RootParity,
}

impl IsolatedRoot {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RootIsolation {
    /// Disjoint brackets of width ≤ tol, sorted.
    pub roots: Vec<IsolatedRoot>,
    /// Sign-change bound on the total root count (touching roots weigh 2).
    pub descartes_bound: usize,
}

impl RootIsolation {
    pub fn weighted_count(&self) -> usize {
        self.roots
            .iter()
            .map(|r| match r.parity {
                RootParity::Crossing => 1,
                RootParity::Touching => 2,
            })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsolationError {
    /// Window must satisfy 0 < lo < hi with positive tolerance.
    WindowInvalid,
    /// Evaluation broke down (NaN) or the sign data is internally
    /// inconsistent with the Descartes bound.
    Inconclusive,
}

impl fmt::Display for IsolationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsolationError::WindowInvalid => write!(f, "window must satisfy 0 < lo < hi, tol > 0"),
            IsolationError::Inconclusive => write!(f, "root isolation was inconclusive"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for IsolationError {}

/// A maximal open subinterval of the search window where φ < 0.
///
/// `lo`/`hi` are located to the requested tolerance. When an endpoint is the
/// window edge itself (the sign is still negative there), the corresponding
/// `clipped_*` flag is set.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NegInterval {
    pub lo: f64,
    pub hi: f64,
    pub clipped_lo: bool,
    pub clipped_hi: bool,
}

impl ExpPoly {
    /// Brackets every root of φ inside `(lo, hi)` to width ≤ `tol`.
    ///
    /// Grid scan (step ≤ min(0.01, span/1000)) with valley refinement for
    /// near-miss pockets, one grid retry at step/10 when the Descartes
    /// budget suggests missed roots, then the exact derivative-recursion
    /// fallback if the deficit persists.
    pub fn isolate_roots(
        &self,
        window: (f64, f64),
        tol: f64,
        touch_tol: f64,
    ) -> Result<RootIsolation, IsolationError> {
        let (lo, hi) = window;
        if !(lo > 0.0 && hi > lo && tol > 0.0 && touch_tol > 0.0) || !lo.is_finite() || !hi.is_finite() {
            return Err(IsolationError::WindowInvalid);
        }
        let bound = self.sign_changes();
        if self.is_zero() || bound == 0 {
            return Ok(RootIsolation {
                roots: Vec::new(),
                descartes_bound: bound,
            });
        }

        let step = (0.01f64).min((hi - lo) / 1000.0);
        let mut roots = self.grid_pass(lo, hi, step, tol, touch_tol)?;
        let mut found = weighted(&roots);
        if bound.saturating_sub(found) >= 2 {
            roots = self.grid_pass(lo, hi, step / 10.0, tol, touch_tol)?;
            found = weighted(&roots);
        }
        if bound.saturating_sub(found) >= 2 {
            if let Some(exact) = self.certified_roots(lo, hi, tol, touch_tol) {
                roots = exact;
            } else {
                return Err(IsolationError::Inconclusive);
            }
        }

        // Enforce the Descartes budget: crossings are certain sign flips,
        // touchings are the weakest evidence, so they go first if the count
        // somehow exceeds the bound.
        let crossings = roots
            .iter()
            .filter(|r| r.parity == RootParity::Crossing)
            .count();
        if crossings > bound {
            return Err(IsolationError::Inconclusive);
        }
        while weighted(&roots) > bound {
            if let Some(pos) = roots.iter().rposition(|r| r.parity == RootParity::Touching) {
                roots.remove(pos);
            } else {
                break;
            }
        }

        roots.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap_or(core::cmp::Ordering::Equal));
        Ok(RootIsolation {
            roots,
            descartes_bound: bound,
        })
    }

    /// Maximal open subintervals of the window where φ < 0, endpoints
    /// located to ≤ `tol`. Touching roots do not break positivity and do
    /// not create intervals, but a touching zero inside a negative stretch
    /// splits it into two components sharing that endpoint.
    pub fn negativity_intervals(
        &self,
        window: (f64, f64),
        tol: f64,
        touch_tol: f64,
    ) -> Result<Vec<NegInterval>, IsolationError> {
        let isolation = self.isolate_roots(window, tol, touch_tol)?;
        Ok(self.assemble_negativity(window, &isolation.roots))
    }

    fn assemble_negativity(&self, window: (f64, f64), roots: &[IsolatedRoot]) -> Vec<NegInterval> {
        let (lo, hi) = window;
        let mut nodes: Vec<f64> = Vec::with_capacity(roots.len() + 2);
        nodes.push(lo);
        nodes.extend(roots.iter().map(IsolatedRoot::mid));
        nodes.push(hi);

        let mut intervals: Vec<NegInterval> = Vec::new();
        let mut open: Option<NegInterval> = None;
        for seg in 0..nodes.len() - 1 {
            let (a, b) = (nodes[seg], nodes[seg + 1]);
            if b <= a {
                continue;
            }
            let negative = self.sign_at(0.5 * (a + b)) < 0;
            match (&mut open, negative) {
                (None, true) => {
                    open = Some(NegInterval {
                        lo: a,
                        hi: b,
                        clipped_lo: seg == 0 && self.sign_at(lo) < 0,
                        clipped_hi: false,
                    });
                }
                (Some(iv), true) => {
                    // a touching root between two negative stretches keeps
                    // the components separate (shared endpoint, open sets)
                    let at_touch = roots
                        .get(seg - 1)
                        .is_some_and(|r| r.parity == RootParity::Touching);
                    if at_touch {
                        intervals.push(*iv);
                        open = Some(NegInterval {
                            lo: a,
                            hi: b,
                            clipped_lo: false,
                            clipped_hi: false,
                        });
                    } else {
                        iv.hi = b;
                    }
                }
                (Some(iv), false) => {
                    intervals.push(*iv);
                    open = None;
                }
                (None, false) => {}
            }
        }
        if let Some(mut iv) = open {
            iv.clipped_hi = self.sign_at(hi) < 0;
            iv.hi = hi;
            intervals.push(iv);
        }
        intervals
    }

    fn grid_pass(
        &self,
        lo: f64,
        hi: f64,
        step: f64,
        tol: f64,
        touch_tol: f64,
    ) -> Result<Vec<IsolatedRoot>, IsolationError> {
        let m = ((hi - lo) / step) as usize + 1;
        let mut xs: Vec<f64> = (0..m).map(|i| lo + i as f64 * step).collect();
        xs.retain(|&x| x < hi);
        xs.push(hi);
        let mut vs = Vec::with_capacity(xs.len());
        let mut sg = Vec::with_capacity(xs.len());
        for &x in &xs {
            let (s, g, _) = self.eval_full(x);
            if !s.is_finite() || !g.is_finite() {
                return Err(IsolationError::Inconclusive);
            }
            vs.push(s);
            sg.push(self.sign_at(x));
        }

        let mut roots: Vec<IsolatedRoot> = Vec::new();
        // Walk nonzero-sign nodes; zero runs between them hold roots.
        let nz: Vec<usize> = (0..xs.len()).filter(|&i| sg[i] != 0).collect();
        for w in nz.windows(2) {
            let (i, j) = (w[0], w[1]);
            if sg[i] != sg[j] {
                // odd number of roots between; bisect to a single bracket
                let (a, b) = self.bisect(xs[i], xs[j], sg[i], tol);
                roots.push(IsolatedRoot {
                    lo: a,
                    hi: b,
                    parity: RootParity::Crossing,
                });
            } else if j > i + 1 {
                // zero run flanked by equal signs: an even cluster — find
                // the extremum to split it or call it touching
                self.classify_extremum(xs[i], xs[j], sg[i], tol, touch_tol, &mut roots);
            }
        }
        // Valley / peak refinement on same-sign triples that dip toward 0.
        for t in 1..xs.len().saturating_sub(1) {
            if sg[t] == 0 || sg[t - 1] != sg[t] || sg[t + 1] != sg[t] {
                continue;
            }
            let dips = if sg[t] > 0 {
                vs[t] <= vs[t - 1] && vs[t] <= vs[t + 1]
            } else {
                vs[t] >= vs[t - 1] && vs[t] >= vs[t + 1]
            };
            if dips {
                self.classify_extremum(xs[t - 1], xs[t + 1], sg[t], tol, touch_tol, &mut roots);
            }
        }
        dedupe(&mut roots, tol);
        Ok(roots)
    }

    /// A same-sign span that may hide an even root cluster: refine the
    /// interior extremum; a sign flip there splits into two crossings, a
    /// value within the touch band is a touching root, anything else is no
    /// root at all.
    fn classify_extremum(
        &self,
        a: f64,
        b: f64,
        flank_sign: i8,
        tol: f64,
        touch_tol: f64,
        out: &mut Vec<IsolatedRoot>,
    ) {
        let (x, s, g) = self.refine_extremum(a, b, flank_sign > 0, tol * CRIT_REFINE);
        if s.abs() <= touch_tol * g.max(f64::MIN_POSITIVE) {
            out.push(IsolatedRoot {
                lo: (x - tol / 2.0).max(a),
                hi: (x + tol / 2.0).min(b),
                parity: RootParity::Touching,
            });
        } else if (s < 0.0) == (flank_sign > 0) && s != 0.0 {
            // extremum crosses zero: two crossings around it
            let opp = if flank_sign > 0 { -1 } else { 1 };
            let (l1, h1) = self.bisect(a, x, flank_sign, tol);
            let (l2, h2) = self.bisect(x, b, opp, tol);
            out.push(IsolatedRoot {
                lo: l1,
                hi: h1,
                parity: RootParity::Crossing,
            });
            out.push(IsolatedRoot {
                lo: l2,
                hi: h2,
                parity: RootParity::Crossing,
            });
        }
    }

    /// Golden-section extremum refinement; returns (argmin/argmax, value,
    /// gross scale at the point).
    fn refine_extremum(&self, mut a: f64, mut b: f64, minimize: bool, xtol: f64) -> (f64, f64, f64) {
        const INV_PHI: f64 = 0.618_033_988_749_894_8;
        let orient = if minimize { 1.0 } else { -1.0 };
        let mut x1 = b - INV_PHI * (b - a);
        let mut x2 = a + INV_PHI * (b - a);
        let mut f1 = orient * self.eval_scaled(x1).0;
        let mut f2 = orient * self.eval_scaled(x2).0;
        let mut guard = 0;
        while b - a > xtol.max(1e-14) && guard < 200 {
            if f1 <= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - INV_PHI * (b - a);
                f1 = orient * self.eval_scaled(x1).0;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + INV_PHI * (b - a);
                f2 = orient * self.eval_scaled(x2).0;
            }
            guard += 1;
        }
        let xm = 0.5 * (a + b);
        let (s, g) = self.eval_scaled(xm);
        (xm, s, g)
    }

    /// Bisection between points of known opposite (nonzero) sign; `sa` is
    /// the sign at `a`. Returns a bracket of width ≤ tol. A zero-sign
    /// midpoint short-circuits: the root is numerically there.
    fn bisect(&self, mut a: f64, mut b: f64, sa: i8, tol: f64) -> (f64, f64) {
        let mut guard = 0;
        while b - a > tol && guard < 200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let sm = self.sign_at(m);
            if sm == 0 {
                return ((m - tol / 2.0).max(a), (m + tol / 2.0).min(b));
            }
            if sm == sa {
                a = m;
            } else {
                b = m;
            }
            guard += 1;
        }
        (a, b)
    }

    /// Exact isolation: roots of φ equal roots of q = φ/μ^α, and q is
    /// monotone between consecutive roots of q' (which has one term fewer).
    /// Recursion bottoms out at single-term polynomials with no roots.
    fn certified_roots(
        &self,
        lo: f64,
        hi: f64,
        tol: f64,
        touch_tol: f64,
    ) -> Option<Vec<IsolatedRoot>> {
        let act = self.active();
        if act.len() <= 1 {
            return Some(Vec::new());
        }
        let dq = self.reduced_derivative()?;
        let crit = dq.certified_roots(lo, hi, (tol * CRIT_REFINE).max(1e-12), touch_tol)?;

        let mut nodes: Vec<f64> = Vec::with_capacity(crit.len() + 2);
        nodes.push(lo);
        nodes.extend(crit.iter().map(IsolatedRoot::mid));
        nodes.push(hi);
        nodes.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));

        let signs: Vec<i8> = nodes.iter().map(|&x| self.sign_at(x)).collect();
        if nodes.iter().any(|x| !x.is_finite()) {
            return None;
        }

        let mut roots = Vec::new();
        for i in 0..nodes.len() - 1 {
            let (sa, sb) = (signs[i], signs[i + 1]);
            if sa != 0 && sb != 0 && sa != sb {
                let (a, b) = self.bisect(nodes[i], nodes[i + 1], sa, tol);
                roots.push(IsolatedRoot {
                    lo: a,
                    hi: b,
                    parity: RootParity::Crossing,
                });
            }
        }
        // Interior extrema that sit numerically on zero: touching if the
        // neighbors agree in sign, otherwise already caught as a crossing.
        for (idx, &x) in nodes.iter().enumerate().skip(1).take(nodes.len().saturating_sub(2)) {
            if signs[idx] != 0 {
                continue;
            }
            let left = (0..idx).rev().find(|&k| signs[k] != 0).map(|k| signs[k]);
            let right = (idx + 1..nodes.len()).find(|&k| signs[k] != 0).map(|k| signs[k]);
            let parity = match (left, right) {
                (Some(l), Some(r)) if l != r => RootParity::Crossing,
                _ => RootParity::Touching,
            };
            // crossings with a zero node were bracketed above only if the
            // flanking nodes were adjacent; bracket explicitly otherwise
            if parity == RootParity::Touching {
                roots.push(IsolatedRoot {
                    lo: (x - tol / 2.0).max(lo),
                    hi: (x + tol / 2.0).min(hi),
                    parity,
                });
            } else if !roots
                .iter()
                .any(|r| r.lo - tol <= x && x <= r.hi + tol)
            {
                roots.push(IsolatedRoot {
                    lo: (x - tol / 2.0).max(lo),
                    hi: (x + tol / 2.0).min(hi),
                    parity,
                });
            }
        }
        dedupe(&mut roots, tol);
        Some(roots)
    }
}

fn weighted(roots: &[IsolatedRoot]) -> usize {
    roots
        .iter()
        .map(|r| match r.parity {
            RootParity::Crossing => 1,
            RootParity::Touching => 2,
        })
        .sum()
}

/// Sorts and drops near-duplicate brackets (same root found twice).
fn dedupe(roots: &mut Vec<IsolatedRoot>, tol: f64) {
    roots.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap_or(core::cmp::Ordering::Equal));
    let mut i = 1;
    while i < roots.len() {
        let prev = roots[i - 1];
        let cur = roots[i];
        if cur.mid() - prev.mid() <= tol {
            // keep the crossing if parities differ, else the first
            if prev.parity == RootParity::Touching && cur.parity == RootParity::Crossing {
                roots[i - 1] = cur;
            }
            roots.remove(i);
        } else {
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const TOUCH: f64 = 1e-10;

    fn poly(terms: &[(f64, f64)]) -> ExpPoly {
        ExpPoly::new(terms.iter().copied()).unwrap()
    }

    #[test]
    fn evaluate_single_term() {
        let p = poly(&[(1.0, 2.0)]);
        assert!((p.evaluate(3.0) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn evaluate_cancelling_pair() {
        let p = poly(&[(1.0, 2.0), (-1.0, 1.0)]);
        assert!((p.evaluate(1.0) - 1.0).abs() < 1e-12);
        // limit toward 0 is 0
        assert!(p.evaluate(1e-9).abs() < 1e-8);
        let q = poly(&[(1.0, 4.0), (-2.0, 1.0)]);
        assert!(q.evaluate(0.5).abs() < 1e-12);
    }

    #[test]
    fn sign_change_counting() {
        assert_eq!(poly(&[(1.0, 3.0), (-1.0, 2.0), (1.0, 1.0)]).sign_changes(), 2);
        assert_eq!(poly(&[(1.0, 3.0), (1.0, 2.0)]).sign_changes(), 0);
        assert_eq!(
            poly(&[(-1.0, 5.0), (2.0, 4.0), (-3.0, 2.0), (4.0, 1.0)]).sign_changes(),
            3
        );
    }

    #[test]
    fn zero_base_term_is_inert() {
        let with = poly(&[(1.0, 3.0), (-1.0, 2.0), (5.0, 0.0)]);
        let without = poly(&[(1.0, 3.0), (-1.0, 2.0)]);
        for a in [0.1, 0.5, 1.0, 2.0, 7.3] {
            assert_eq!(with.evaluate(a), without.evaluate(a));
        }
        assert_eq!(with.sign_changes(), without.sign_changes());
    }

    #[test]
    fn tiny_coefficients_are_dropped() {
        let p = poly(&[(1.0, 3.0), (1e-15, 2.0), (-1.0, 1.0)]);
        assert_eq!(p.terms().len(), 2);
    }

    #[test]
    fn no_roots_when_positive_dominates() {
        let p = poly(&[(1.0, 2.0), (-1.0, 1.0)]);
        // only the root alpha = 0 exists, outside every valid window
        let iso = p.isolate_roots((0.5, 5.0), 1e-8, TOUCH).unwrap();
        assert!(iso.roots.is_empty());
    }

    #[test]
    fn single_crossing_closed_form() {
        // 9^a - 2*3^a = 0  <=>  3^a = 2  <=>  a = ln2/ln3
        let p = poly(&[(1.0, 9.0), (-2.0, 3.0)]);
        let iso = p.isolate_roots((0.01, 10.0), 1e-9, TOUCH).unwrap();
        assert_eq!(iso.roots.len(), 1);
        let want = core::f64::consts::LN_2 / 3.0f64.ln();
        let r = iso.roots[0];
        assert_eq!(r.parity, RootParity::Crossing);
        assert!(r.lo <= want && want <= r.hi, "{want} not in [{}, {}]", r.lo, r.hi);
        assert!(r.hi - r.lo <= 1e-9);
    }

    #[test]
    fn integer_root_with_sign_change() {
        // 4^a - 3*2^a + 2 = (2^a - 1)(2^a - 2): roots at 0 and 1
        let p = poly(&[(1.0, 4.0), (-3.0, 2.0), (2.0, 1.0)]);
        let iso = p.isolate_roots((0.01, 10.0), 1e-8, TOUCH).unwrap();
        assert_eq!(iso.roots.len(), 1);
        assert!((iso.roots[0].mid() - 1.0).abs() < 1e-6);
        let neg = p.negativity_intervals((0.01, 10.0), 1e-8, TOUCH).unwrap();
        assert_eq!(neg.len(), 1);
        assert!(neg[0].clipped_lo);
        assert!((neg[0].lo - 0.01).abs() < 1e-12);
        assert!((neg[0].hi - 1.0).abs() < 1e-6);
    }

    #[test]
    fn touching_root_detected() {
        // (2^a - 2)^2 = 4^a - 4*2^a + 4: double root at a = 1, no sign change
        let p = poly(&[(1.0, 4.0), (-4.0, 2.0), (4.0, 1.0)]);
        let iso = p.isolate_roots((0.1, 5.0), 1e-8, TOUCH).unwrap();
        assert_eq!(iso.roots.len(), 1, "roots: {:?}", iso.roots);
        assert_eq!(iso.roots[0].parity, RootParity::Touching);
        assert!((iso.roots[0].mid() - 1.0).abs() < 1e-4);
        assert!(iso.weighted_count() <= iso.descartes_bound);
        // touching roots do not create negativity
        let neg = p.negativity_intervals((0.1, 5.0), 1e-8, TOUCH).unwrap();
        assert!(neg.is_empty());
    }

    #[test]
    fn narrow_pocket_is_not_missed() {
        // (2^a - 1.99)(2^a - 2) = 4^a - 3.99*2^a + 3.98:
        // negative only on (log2(1.99), 1), width ~ 0.0072
        let p = poly(&[(1.0, 4.0), (-3.99, 2.0), (3.98, 1.0)]);
        let iso = p.isolate_roots((0.1, 5.0), 1e-9, TOUCH).unwrap();
        assert_eq!(iso.roots.len(), 2, "roots: {:?}", iso.roots);
        let neg = p.negativity_intervals((0.1, 5.0), 1e-9, TOUCH).unwrap();
        assert_eq!(neg.len(), 1);
        let want_lo = (1.99f64).ln() / core::f64::consts::LN_2;
        assert!((neg[0].lo - want_lo).abs() < 1e-6);
        assert!((neg[0].hi - 1.0).abs() < 1e-6);
    }

    #[test]
    fn all_positive_coefficients_no_negativity() {
        let p = poly(&[(2.0, 5.0), (1.0, 2.0), (0.5, 1.0)]);
        let neg = p.negativity_intervals((0.01, 20.0), 1e-8, TOUCH).unwrap();
        assert!(neg.is_empty());
    }

    #[test]
    fn bisection_brackets_have_opposite_signs() {
        let p = poly(&[(1.0, 5.0), (-3.0, 3.0), (1.0, 2.0)]);
        let iso = p.isolate_roots((0.01, 12.0), 1e-9, TOUCH).unwrap();
        for r in iso
            .roots
            .iter()
            .filter(|r| r.parity == RootParity::Crossing)
        {
            // widen by tol so endpoint signs are unambiguous
            let before = p.sign_at(r.lo - 1e-7);
            let after = p.sign_at(r.hi + 1e-7);
            assert_eq!(before * after, -1, "bracket {:?}", r);
        }
    }

    #[test]
    fn window_validation() {
        let p = poly(&[(1.0, 2.0), (-1.0, 1.0)]);
        assert_eq!(
            p.isolate_roots((0.0, 1.0), 1e-8, TOUCH).unwrap_err(),
            IsolationError::WindowInvalid
        );
        assert_eq!(
            p.isolate_roots((2.0, 1.0), 1e-8, TOUCH).unwrap_err(),
            IsolationError::WindowInvalid
        );
        assert_eq!(
            p.isolate_roots((0.5, 5.0), -1.0, TOUCH).unwrap_err(),
            IsolationError::WindowInvalid
        );
    }

    #[test]
    fn identically_zero_poly() {
        let p = poly(&[(1.0, 0.0)]);
        assert!(p.is_zero());
        assert_eq!(p.evaluate(2.0), 0.0);
        let iso = p.isolate_roots((0.5, 2.0), 1e-8, TOUCH).unwrap();
        assert!(iso.roots.is_empty());
    }
}
