//! Exhaustive minimum-weight search over cosets.
//!
//! Every nonzero combination of a basis of the containing space is visited in
//! Gray-code order, so each step costs one XOR of a basis row. Alongside the
//! running vector `v` we carry `red(v)`, its remainder modulo the excluded
//! space; the reduction is linear, so it updates with the same XOR pattern,
//! and `v` is excluded exactly when `red(v) = 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Echelon};

pub const DEFAULT_DIM_CAP: usize = 26;

/// Vectors of `RowSpan(containing)` that are not in `RowSpan(excluded)`.
#[derive(Clone, Debug)]
pub struct CosetProblem {
    n: usize,
    basis: BitMatrix,
    excluded: Echelon,
}

impl CosetProblem {
    pub fn new(containing: &BitMatrix, excluded: &BitMatrix) -> Result<Self> {
        if containing.cols() != excluded.cols() {
            return Err(Error::DimensionMismatch {
                op: "coset problem",
                left_rows: containing.rows(),
                left_cols: containing.cols(),
                right_rows: excluded.rows(),
                right_cols: excluded.cols(),
            });
        }
        if !containing.row_space_includes(excluded)? {
            return Err(Error::InvalidSpec("excluded space is not inside the containing space".into()));
        }
        let ech = containing.echelon();
        let basis = ech.matrix().select_rows(&(0..ech.rank()).collect::<Vec<_>>());
        Ok(CosetProblem {
            n: containing.cols(),
            basis,
            excluded: excluded.echelon(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum OracleOutcome {
    /// `min_weight` is `None` when every vector is excluded.
    Exact { min_weight: Option<usize>, visited: u64 },
    Refused { dim: usize, cap: usize },
}

impl OracleOutcome {
    pub fn weight(&self) -> Option<usize> {
        match self {
            OracleOutcome::Exact { min_weight, .. } => *min_weight,
            OracleOutcome::Refused { .. } => None,
        }
    }

    pub fn is_refused(&self) -> bool {
        matches!(self, OracleOutcome::Refused { .. })
    }
}

/// Enumerates `start + span(basis rows lo..hi)` over all combinations with the
/// given prefix fixed. Returns `(min weight, candidates visited)`; the zero
/// vector is never counted.
fn scan(p: &CosetProblem, reduced: &[BitVector], prefix: u64, split: usize) -> (Option<usize>, u64) {
    let dim = p.dim();
    let low = dim - split;
    let mut v = BitVector::zeros(p.n);
    let mut rv = BitVector::zeros(p.n);
    for b in 0..split {
        if prefix >> b & 1 == 1 {
            v.xor_assign(&p.basis.row(low + b));
            rv.xor_assign(&reduced[low + b]);
        }
    }
    let rows: Vec<BitVector> = (0..low).map(|i| p.basis.row(i)).collect();
    let mut best: Option<usize> = None;
    let mut visited = 0u64;
    let consider = |v: &BitVector, rv: &BitVector, best: &mut Option<usize>| {
        if !rv.is_zero() {
            let w = v.weight();
            if best.is_none_or(|b| w < b) {
                *best = Some(w);
            }
        }
    };
    if prefix != 0 {
        visited += 1;
        consider(&v, &rv, &mut best);
    }
    for step in 1u64..(1u64 << low) {
        let i = step.trailing_zeros() as usize;
        v.xor_assign(&rows[i]);
        rv.xor_assign(&reduced[i]);
        visited += 1;
        consider(&v, &rv, &mut best);
    }
    (best, visited)
}

/// Exact minimum weight over the containing space minus the excluded space,
/// or a refusal when the containing dimension exceeds `dim_cap`.
///
/// With `threads > 1` the combinations are split by their top bits; the
/// answer does not depend on the split.
pub fn coset_min_weight(p: &CosetProblem, dim_cap: usize, threads: usize) -> OracleOutcome {
    let dim = p.dim();
    if dim > dim_cap || dim >= 63 {
        return OracleOutcome::Refused { dim, cap: dim_cap };
    }
    let reduced: Vec<BitVector> = (0..dim)
        .map(|i| {
            let mut r = p.basis.row(i);
            p.excluded.reduce(&mut r);
            r
        })
        .collect();
    let threads = threads.max(1);
    let split = if threads == 1 { 0 } else { (usize::BITS - (threads - 1).leading_zeros()) as usize + 2 }.min(dim);
    let parts = 1u64 << split;
    let results: Vec<(Option<usize>, u64)> = if threads == 1 {
        vec![scan(p, &reduced, 0, 0)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    let reduced = &reduced;
                    s.spawn(move || {
                        (t..parts)
                            .step_by(threads)
                            .map(|prefix| scan(p, reduced, prefix, split))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    let visited = results.iter().map(|r| r.1).sum();
    let min_weight = results.iter().filter_map(|r| r.0).min();
    debug_assert_eq!(visited, (1u64 << dim) - 1);
    OracleOutcome::Exact { min_weight, visited }
}

/// Brute-force `(d_x, d_z)` of the CSS code with checks `(hx, hz)`:
/// `d_x` minimizes over `Ker(hz) \ RowSpan(hx)`, `d_z` over `Ker(hx) \ RowSpan(hz)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BruteForceDistances {
    pub d_x: OracleOutcome,
    pub d_z: OracleOutcome,
}

pub fn css_distances_bruteforce(hx: &BitMatrix, hz: &BitMatrix, dim_cap: usize, threads: usize) -> Result<BruteForceDistances> {
    if !hx.mul(&hz.transpose())?.is_zero() {
        return Err(Error::NotOrthogonal { component: None });
    }
    let side = |kernel_of: &BitMatrix, excluded: &BitMatrix| -> Result<OracleOutcome> {
        let dim = kernel_of.cols() - kernel_of.rank();
        if dim > dim_cap {
            return Ok(OracleOutcome::Refused { dim, cap: dim_cap });
        }
        let p = CosetProblem::new(&kernel_of.kernel_basis(), excluded)?;
        Ok(coset_min_weight(&p, dim_cap, threads))
    };
    Ok(BruteForceDistances {
        d_x: side(hz, hx)?,
        d_z: side(hx, hz)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pair() {
        let c = BitMatrix::from_rows(2, &[[1u8, 1]]).unwrap();
        let p = CosetProblem::new(&c, &BitMatrix::zeros(0, 2)).unwrap();
        assert_eq!(coset_min_weight(&p, 26, 1), OracleOutcome::Exact { min_weight: Some(2), visited: 1 });
    }

    #[test]
    fn everything_excluded() {
        let c = BitMatrix::identity(3);
        let p = CosetProblem::new(&c, &c).unwrap();
        assert_eq!(coset_min_weight(&p, 26, 1).weight(), None);
    }

    #[test]
    fn excluded_must_be_inside() {
        let c = BitMatrix::from_rows(2, &[[1u8, 1]]).unwrap();
        let e = BitMatrix::from_rows(2, &[[1u8, 0]]).unwrap();
        assert!(CosetProblem::new(&c, &e).is_err());
    }

    #[test]
    fn refuses_over_cap() {
        let p = CosetProblem::new(&BitMatrix::identity(10), &BitMatrix::zeros(0, 10)).unwrap();
        assert_eq!(coset_min_weight(&p, 9, 1), OracleOutcome::Refused { dim: 10, cap: 9 });
    }

    #[test]
    fn threads_do_not_change_answer() {
        // Extended Hamming [8,4,4] minus the all-ones word.
        let g = BitMatrix::from_rows(
            8,
            &[[1u8, 1, 1, 1, 1, 1, 1, 1], [0, 0, 0, 0, 1, 1, 1, 1], [0, 0, 1, 1, 0, 0, 1, 1], [0, 1, 0, 1, 0, 1, 0, 1]],
        )
        .unwrap();
        let ones = g.select_rows(&[0]);
        let p = CosetProblem::new(&g, &ones).unwrap();
        let one = coset_min_weight(&p, 26, 1);
        for t in [2, 3, 4, 7] {
            assert_eq!(coset_min_weight(&p, 26, t), one);
        }
        assert_eq!(one, OracleOutcome::Exact { min_weight: Some(4), visited: 15 });
    }

    #[test]
    fn steane_distances() {
        let h = BitMatrix::from_rows(7, &[[1u8, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]]).unwrap();
        let d = css_distances_bruteforce(&h, &h, 26, 1).unwrap();
        assert_eq!((d.d_x.weight(), d.d_z.weight()), (Some(3), Some(3)));
    }
}
