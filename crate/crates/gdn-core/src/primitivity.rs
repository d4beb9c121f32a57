//! Zero-nonzero pattern analytics: irreducibility via strongly connected
//! components, index of primitivity by boolean matrix powers, and the
//! trace-coefficient necessities satisfied by every GDN matrix with strictly
//! positive spectrum.

use crate::matrix::RealMatrix;
use crate::spectral::validate_gdn;
use crate::ToleranceConfig;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Boolean zero-nonzero pattern of a matrix (entry > pattern_tol).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoolPattern {
    n: usize,
    bits: Vec<bool>,
}

impl BoolPattern {
    pub fn from_matrix(a: &RealMatrix, pattern_tol: f64) -> Self {
        let n = a.n();
        let bits = a.entries().iter().map(|&e| e > pattern_tol).collect();
        Self { n, bits }
    }

    pub fn new(n: usize, bits: Vec<bool>) -> Option<Self> {
        (bits.len() == n * n && n > 0).then_some(Self { n, bits })
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            bits: vec![true; n * n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.n + j] = v;
    }

    pub fn all_true(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn count_true(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Number of true diagonal positions.
    pub fn diagonal_count(&self) -> usize {
        (0..self.n).filter(|&i| self.get(i, i)).count()
    }

    /// Boolean matrix product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self {
            n,
            bits: vec![false; n * n],
        };
        for i in 0..n {
            for k in 0..n {
                if self.get(i, k) {
                    for j in 0..n {
                        if other.get(k, j) {
                            out.set(i, j, true);
                        }
                    }
                }
            }
        }
        out
    }

    /// 0/1 grid, one row per line.
    pub fn render(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let _ = write!(s, "{}", u8::from(self.get(i, j)));
            }
            let _ = writeln!(s);
        }
        s
    }
}

/// Classical maximum for the index of primitivity of an n×n primitive
/// matrix: n² − 2n + 2.
pub fn wielandt_bound(n: usize) -> usize {
    n * n - 2 * n + 2
}

/// Least `k` with all of `P^k` true (boolean powers), capped at the Wielandt
/// bound; `None` when the cap is reached without filling, i.e. the pattern
/// is not primitive.
pub fn index_of_primitivity(p: &BoolPattern) -> Option<usize> {
    let cap = wielandt_bound(p.n());
    let mut q = p.clone();
    for k in 1..=cap {
        if q.all_true() {
            return Some(k);
        }
        if k < cap {
            q = q.mul(p);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundError {
    /// No positive diagonal entry, or the pattern is reducible.
    NotApplicable,
}

impl fmt::Display for BoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bound requires an irreducible pattern with a positive diagonal entry"
        )
    }
}

#[cfg(feature = "std")]
impl std::error::Error for BoundError {}

/// `2n − d − 1` where `d` is the count of true diagonal entries: an upper
/// bound on the index of primitivity of an irreducible pattern with `d ≥ 1`.
pub fn diagonal_support_bound(p: &BoolPattern) -> Result<usize, BoundError> {
    let d = p.diagonal_count();
    if d == 0 || !matches!(reducibility_blocks(p), BlockStructure::Irreducible) {
        return Err(BoundError::NotApplicable);
    }
    Ok(2 * p.n() - d - 1)
}

/// Outcome of the strongly-connected-component condensation.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BlockStructure {
    Irreducible,
    /// `permutation[k]` is the original index at permuted position `k`;
    /// relabeling rows and columns by it makes the matrix block upper
    /// triangular with the listed diagonal blocks (in order).
    Reducible {
        permutation: Vec<usize>,
        blocks: Vec<Vec<usize>>,
    },
}

/// Finds the strongly connected components of the pattern digraph and the
/// permutation to block upper triangular form.
pub fn reducibility_blocks(p: &BoolPattern) -> BlockStructure {
    let n = p.n();
    let mut comps = tarjan_scc(p);
    if comps.len() == 1 {
        return BlockStructure::Irreducible;
    }
    // Tarjan emits sinks first; reverse so edges point from earlier blocks
    // to later ones (block upper triangular).
    comps.reverse();
    let mut permutation = Vec::with_capacity(n);
    for c in &comps {
        permutation.extend_from_slice(c);
    }
    BlockStructure::Reducible {
        permutation,
        blocks: comps,
    }
}

struct TarjanState {
    index: usize,
    idx: Vec<Option<usize>>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    comps: Vec<Vec<usize>>,
}

fn tarjan_scc(p: &BoolPattern) -> Vec<Vec<usize>> {
    let n = p.n();
    let mut st = TarjanState {
        index: 0,
        idx: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        comps: Vec::new(),
    };
    for v in 0..n {
        if st.idx[v].is_none() {
            tarjan_visit(v, p, &mut st);
        }
    }
    st.comps
}

// Iterative DFS so deep graphs cannot overflow the call stack.
fn tarjan_visit(v0: usize, p: &BoolPattern, st: &mut TarjanState) {
    let n = p.n();
    let mut work: Vec<(usize, usize)> = vec![(v0, 0)];
    st.idx[v0] = Some(st.index);
    st.low[v0] = st.index;
    st.index += 1;
    st.stack.push(v0);
    st.on_stack[v0] = true;

    while let Some(&mut (v, ref mut cursor)) = work.last_mut() {
        let mut descended = false;
        while *cursor < n {
            let w = *cursor;
            *cursor += 1;
            if !p.get(v, w) {
                continue;
            }
            match st.idx[w] {
                None => {
                    st.idx[w] = Some(st.index);
                    st.low[w] = st.index;
                    st.index += 1;
                    st.stack.push(w);
                    st.on_stack[w] = true;
                    work.push((w, 0));
                    descended = true;
                    break;
                }
                Some(wi) => {
                    if st.on_stack[w] && wi < st.low[v] {
                        st.low[v] = wi;
                    }
                }
            }
        }
        if descended {
            continue;
        }
        work.pop();
        if let Some(&(parent, _)) = work.last() {
            if st.low[v] < st.low[parent] {
                st.low[parent] = st.low[v];
            }
        }
        if st.low[v] == st.idx[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().unwrap();
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            st.comps.push(comp);
        }
    }
}

/// Trace-coefficient facts for a GDN matrix with strictly positive spectrum:
/// with `t₁ = Tr(A)`, `t₂ = Tr(A²)`, the characteristic polynomial
/// coefficients `c₁ = −t₁` and `c₂ = (t₁² − t₂)/2` must satisfy `c₁ < 0`
/// and `c₂ > 0`, which forces at least two positive diagonal entries.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TraceReport {
    pub t1: f64,
    pub t2: f64,
    pub c1: f64,
    pub c2: f64,
    pub positive_diagonal_count: usize,
    pub c1_negative: bool,
    pub c2_positive: bool,
    pub diagonal_count_at_least_two: bool,
}

impl TraceReport {
    pub fn holds(&self) -> bool {
        self.c1_negative && self.c2_positive && self.diagonal_count_at_least_two
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceError {
    /// Input is not GDN with strictly positive eigenvalues.
    PreconditionViolated,
}

impl fmt::Display for TraceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "matrix must be GDN with strictly positive eigenvalues")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TraceError {}

pub fn gdn_trace_necessities(
    a: &RealMatrix,
    tol: &ToleranceConfig,
) -> Result<TraceReport, TraceError> {
    let report = validate_gdn(a, tol);
    if !report.is_gdn || !(report.min_eigenvalue_real > 0.0) {
        return Err(TraceError::PreconditionViolated);
    }
    let t1 = a.trace();
    let t2 = a.mul(a).trace();
    let c1 = -t1;
    let c2 = 0.5 * (t1 * t1 - t2);
    let positive_diagonal_count = (0..a.n()).filter(|&i| a[(i, i)] > 0.0).count();
    Ok(TraceReport {
        t1,
        t2,
        c1,
        c2,
        positive_diagonal_count,
        c1_negative: c1 < 0.0,
        c2_positive: c2 > 0.0,
        diagonal_count_at_least_two: positive_diagonal_count >= 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(rows: &[&[u8]]) -> BoolPattern {
        let n = rows.len();
        let bits = rows
            .iter()
            .flat_map(|r| r.iter().map(|&b| b != 0))
            .collect();
        BoolPattern::new(n, bits).unwrap()
    }

    #[test]
    fn full_pattern_has_index_one() {
        assert_eq!(index_of_primitivity(&BoolPattern::full(3)), Some(1));
    }

    #[test]
    fn cycle_is_not_primitive() {
        // pure 3-cycle: irreducible but periodic
        let p = pat(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(index_of_primitivity(&p), None);
        assert!(matches!(
            reducibility_blocks(&p),
            BlockStructure::Irreducible
        ));
    }

    #[test]
    fn wielandt_extremal_pattern() {
        // cycle plus one chord attains exactly n^2 - 2n + 2
        let p = pat(&[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]);
        assert_eq!(index_of_primitivity(&p), Some(wielandt_bound(3)));
    }

    #[test]
    fn diagonal_support_bound_formula() {
        // n=4 full diagonal, irreducible: 2*4-4-1 = 3
        let mut p = BoolPattern::full(4);
        assert_eq!(diagonal_support_bound(&p), Ok(3));
        // zero diagonal: not applicable
        for i in 0..4 {
            p.set(i, i, false);
        }
        assert_eq!(diagonal_support_bound(&p), Err(BoundError::NotApplicable));
    }

    #[test]
    fn triangular_pattern_is_reducible() {
        let p = pat(&[&[1, 1], &[0, 1]]);
        match reducibility_blocks(&p) {
            BlockStructure::Reducible { blocks, .. } => {
                assert_eq!(blocks.len(), 2);
            }
            BlockStructure::Irreducible => panic!("expected reducible"),
        }
        assert!(matches!(
            reducibility_blocks(&BoolPattern::full(2)),
            BlockStructure::Irreducible
        ));
    }

    #[test]
    fn coupled_blocks_recovered_and_upper_triangular() {
        // two 2-cycles with a single coupling edge 0 -> 2
        let p = pat(&[&[0, 1, 1, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        match reducibility_blocks(&p) {
            BlockStructure::Reducible {
                permutation,
                blocks,
            } => {
                assert_eq!(blocks.len(), 2);
                // after permutation the lower-left block must be empty
                let k = blocks[0].len();
                for bi in k..4 {
                    for bj in 0..k {
                        assert!(
                            !p.get(permutation[bi], permutation[bj]),
                            "lower-left entry nonzero after permutation"
                        );
                    }
                }
            }
            BlockStructure::Irreducible => panic!("expected reducible"),
        }
    }

    #[test]
    fn trace_necessities_on_diagonal_matrix() {
        let a = RealMatrix::from_rows(&[&[1.0, 0.0, 0.0], &[0.0, 2.0, 0.0], &[0.0, 0.0, 3.0]])
            .unwrap();
        let r = gdn_trace_necessities(&a, &ToleranceConfig::default()).unwrap();
        assert_eq!(r.c1, -6.0);
        assert_eq!(r.c2, (36.0 - 14.0) / 2.0);
        assert_eq!(r.positive_diagonal_count, 3);
        assert!(r.holds());
    }

    #[test]
    fn trace_necessities_rejects_negative_spectrum() {
        let a = RealMatrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert_eq!(
            gdn_trace_necessities(&a, &ToleranceConfig::default()),
            Err(TraceError::PreconditionViolated)
        );
    }

    #[test]
    fn index_invariant_under_positive_rescaling() {
        let a = RealMatrix::from_rows(&[
            &[0.0, 0.0, 2.0, 0.0],
            &[0.0, 68.0, 56.0, 21.0],
            &[0.0, 0.0, 0.0, 16.0],
            &[14.0, 72.0, 0.0, 168.0],
        ])
        .unwrap();
        let p1 = BoolPattern::from_matrix(&a, 0.0);
        let p2 = BoolPattern::from_matrix(&a.scale(3.7), 0.0);
        assert_eq!(index_of_primitivity(&p1), index_of_primitivity(&p2));
        assert_eq!(index_of_primitivity(&p1), Some(4));
    }
}
