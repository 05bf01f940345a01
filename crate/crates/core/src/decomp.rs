//! Matrix decompositions behind the code construction.
//!
//! * [`IncompletePermutation`]: 0/1 matrices with at most one 1 per row and
//!   column, and the invertible factor [`lambda_factor`] relating a stack of
//!   them to a single one supported on the union of their supports.
//! * [`joint_decompose`]: a simultaneous `P A Q = L D R`,
//!   `P' B Q = L' D' R^{-T}` for an orthogonal pair `A Bᵀ = 0`.
//! * [`layered_tensor`] / [`layered_decompose`]: stacked Kronecker products
//!   with identity factors, and the decomposition inherited from the
//!   component decompositions.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::posets::SubsetTuple;

/// An `rows x cols` matrix with ones exactly at `(placement[c], c)` for each
/// column `c` in the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncompletePermutation {
    rows: usize,
    cols: usize,
    placement: BTreeMap<usize, usize>,
}

impl IncompletePermutation {
    /// `pairs` lists `(column, row)` entries. Columns must be distinct, rows
    /// must be distinct, and both must be in range.
    pub fn new(rows: usize, cols: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut placement = BTreeMap::new();
        let mut used = vec![false; rows];
        for (c, r) in pairs {
            if c >= cols || r >= rows {
                return Err(Error::SupportMismatch(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            if used[r] || placement.insert(c, r).is_some() {
                return Err(Error::SupportMismatch(format!("entry ({r},{c}) breaks injectivity")));
            }
            used[r] = true;
        }
        Ok(IncompletePermutation { rows, cols, placement })
    }

    pub fn identity(n: usize) -> Self {
        IncompletePermutation {
            rows: n,
            cols: n,
            placement: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Column support, sorted.
    pub fn support(&self) -> Vec<usize> {
        self.placement.keys().copied().collect()
    }

    pub fn support_len(&self) -> usize {
        self.placement.len()
    }

    pub fn row_of(&self, col: usize) -> Option<usize> {
        self.placement.get(&col).copied()
    }

    /// `(column, row)` pairs in column order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.placement.iter().map(|(&c, &r)| (c, r))
    }

    pub fn materialize(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, self.cols);
        for (c, r) in self.entries() {
            m.set(r, c, true);
        }
        m
    }

    /// Kronecker product; supports multiply as sets.
    pub fn kron(&self, other: &IncompletePermutation) -> IncompletePermutation {
        let mut placement = BTreeMap::new();
        for (c1, r1) in self.entries() {
            for (c2, r2) in other.entries() {
                placement.insert(c1 * other.cols + c2, r1 * other.rows + r2);
            }
        }
        IncompletePermutation {
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            placement,
        }
    }
}

/// Builds the invertible `Λ` with `stack(parts) == Λ · merged`, where the
/// support of `merged` is the union of the part supports.
///
/// `Λ = Π₂ · C · Π₁`: `Π₁` moves the row of `merged` holding the `j`-th
/// support column to row `j`, `C` is lower unit triangular and copies row `j`
/// once for every extra part containing that column, and `Π₂` moves every
/// row to its place in the stack.
pub fn lambda_factor(parts: &[IncompletePermutation], merged: &IncompletePermutation) -> Result<BitMatrix> {
    let n = merged.cols;
    let l: usize = parts.iter().map(|p| p.rows).sum();
    if parts.iter().any(|p| p.cols != n) {
        return Err(Error::SupportMismatch("parts disagree on the column count".into()));
    }
    if merged.rows != l {
        return Err(Error::SupportMismatch(format!(
            "merged matrix has {} rows, parts stack to {l}",
            merged.rows
        )));
    }

    // Stack rows holding each column, in stack order.
    let mut occurrences: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut offset = 0;
    for p in parts {
        for (c, r) in p.entries() {
            occurrences.entry(c).or_default().push(offset + r);
        }
        offset += p.rows;
    }
    let union: Vec<usize> = occurrences.keys().copied().collect();
    if union != merged.support() {
        return Err(Error::SupportMismatch(format!(
            "union of part supports {union:?} differs from merged support {:?}",
            merged.support()
        )));
    }

    let r = union.len();
    let mut first = BitMatrix::zeros(l, l);
    let mut merged_row_used = vec![false; l];
    for (j, &a) in union.iter().enumerate() {
        let src = merged.row_of(a).expect("support checked");
        first.set(j, src, true);
        merged_row_used[src] = true;
    }
    for (k, src) in (0..l).filter(|&i| !merged_row_used[i]).enumerate() {
        first.set(r + k, src, true);
    }

    let mut copy = BitMatrix::identity(l);
    // Intermediate position -> final stack row.
    let mut destination = vec![usize::MAX; l];
    let mut next = r;
    for (j, a) in union.iter().enumerate() {
        let rows = &occurrences[a];
        destination[j] = rows[0];
        for &row in &rows[1..] {
            copy.set(next, j, true);
            destination[next] = row;
            next += 1;
        }
    }
    let mut stack_row_used = vec![false; l];
    for &d in destination.iter().filter(|&&d| d != usize::MAX) {
        stack_row_used[d] = true;
    }
    let mut free_rows = (0..l).filter(|&i| !stack_row_used[i]);
    for d in destination.iter_mut().skip(next) {
        *d = free_rows.next().expect("row counts agree");
    }
    let mut second = BitMatrix::zeros(l, l);
    for (p, &d) in destination.iter().enumerate() {
        second.set(d, p, true);
    }
    second.mul(&copy)?.mul(&first)
}

/// Factors of a joint decomposition of an orthogonal pair `(A, B)`:
///
/// ```text
/// P_a · A · Q = L_a · D_a · R
/// P_b · B · Q = L_b · D_b · R^{-T}
/// ```
///
/// `L_a` is lower unit triangular, `L_b` and `R` are upper unit triangular,
/// `D_a` has ones at `(i, i)` for `i < rank_a`, and `D_b` has ones at
/// `(m_b - rank_b + i, n - rank_b + i)` for `i < rank_b`.
#[derive(Clone, Debug)]
pub struct JointDecomposition {
    pub p_a: BitMatrix,
    pub p_b: BitMatrix,
    pub q: BitMatrix,
    pub l_a: BitMatrix,
    pub l_b: BitMatrix,
    pub r: BitMatrix,
    pub d_a: IncompletePermutation,
    pub d_b: IncompletePermutation,
    pub rank_a: usize,
    pub rank_b: usize,
}

impl JointDecomposition {
    /// `R^{-T}`.
    pub fn r_inv_t(&self) -> BitMatrix {
        self.r.invert().expect("unit triangular").transpose()
    }

    /// Factors for the `A` side, with `R` as the right factor.
    pub fn a_factors(&self) -> ComponentFactors {
        ComponentFactors {
            p: self.p_a.clone(),
            q: self.q.clone(),
            l: self.l_a.clone(),
            d: self.d_a.clone(),
            right: self.r.clone(),
        }
    }

    /// Factors for the `B` side, with `R^{-T}` as the right factor.
    pub fn b_factors(&self) -> ComponentFactors {
        ComponentFactors {
            p: self.p_b.clone(),
            q: self.q.clone(),
            l: self.l_b.clone(),
            d: self.d_b.clone(),
            right: self.r_inv_t(),
        }
    }

    /// Checks both product identities and every shape constraint against the
    /// source pair. Returns a description of the first violation.
    pub fn check(&self, a: &BitMatrix, b: &BitMatrix) -> std::result::Result<(), String> {
        let (ma, n) = a.shape();
        let mb = b.rows();
        let lhs_a = self.p_a.mul(a).and_then(|x| x.mul(&self.q)).map_err(|e| e.to_string())?;
        let rhs_a = self.l_a.mul(&self.d_a.materialize()).and_then(|x| x.mul(&self.r)).map_err(|e| e.to_string())?;
        if lhs_a != rhs_a {
            return Err("P_a A Q != L_a D_a R".into());
        }
        let lhs_b = self.p_b.mul(b).and_then(|x| x.mul(&self.q)).map_err(|e| e.to_string())?;
        let rhs_b = self.l_b.mul(&self.d_b.materialize()).and_then(|x| x.mul(&self.r_inv_t())).map_err(|e| e.to_string())?;
        if lhs_b != rhs_b {
            return Err("P_b B Q != L_b D_b R^-T".into());
        }
        if !self.l_a.is_lower_unit_triangular() {
            return Err("L_a is not lower unit triangular".into());
        }
        if !self.l_b.is_upper_unit_triangular() {
            return Err("L_b is not upper unit triangular".into());
        }
        if !self.r.is_upper_unit_triangular() {
            return Err("R is not upper unit triangular".into());
        }
        for (name, p, size) in [("P_a", &self.p_a, ma), ("P_b", &self.p_b, mb), ("Q", &self.q, n)] {
            if !is_permutation(p, size) {
                return Err(format!("{name} is not a {size}x{size} permutation"));
            }
        }
        let expect_a = IncompletePermutation::new(ma, n, (0..self.rank_a).map(|i| (i, i))).map_err(|e| e.to_string())?;
        if self.d_a != expect_a {
            return Err("D_a has the wrong shape".into());
        }
        let expect_b = IncompletePermutation::new(mb, n, (0..self.rank_b).map(|i| (n - self.rank_b + i, mb - self.rank_b + i)))
            .map_err(|e| e.to_string())?;
        if self.d_b != expect_b {
            return Err("D_b has the wrong shape".into());
        }
        if self.rank_a != a.rank() || self.rank_b != b.rank() {
            return Err("reported ranks differ from elimination ranks".into());
        }
        Ok(())
    }
}

fn is_permutation(p: &BitMatrix, n: usize) -> bool {
    p.shape() == (n, n)
        && (0..n).all(|i| p.row_weight(i) == 1)
        && p.transpose().row_vectors().iter().all(|c| c.weight() == 1)
}

/// Row-selection matrix: row `i` of `P · A` is row `order[i]` of `A`.
fn row_permutation(order: &[usize]) -> BitMatrix {
    let mut p = BitMatrix::zeros(order.len(), order.len());
    for (i, &src) in order.iter().enumerate() {
        p.set(i, src, true);
    }
    p
}

/// Conjugates by the transposition `(i j)`.
fn conjugate_swap(m: &mut BitMatrix, i: usize, j: usize) {
    m.swap_rows(i, j);
    m.swap_cols(i, j);
}

/// Joint decomposition of an orthogonal pair.
///
/// Pivots are chosen deterministically. At each step the `A` pivot is the
/// first one of the active block in row-major order; the `B` pivot is the
/// first one found scanning the active columns from the right, and each
/// column from the bottom, skipping the `A` pivot column. The `A` pivot moves
/// to the top-left of the active block and the `B` pivot to its bottom-right,
/// after which one step of the block recursion clears both.
pub fn joint_decompose(a: &BitMatrix, b: &BitMatrix) -> Result<JointDecomposition> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            op: "joint_decompose",
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    if !a.mul(&b.transpose())?.is_zero() {
        return Err(Error::NotOrthogonal { component: None });
    }
    let (ma, n) = a.shape();
    let mb = b.rows();

    // Invariants: aw = L_a⁻¹ (P_a A Q) R⁻¹ and bw = L_b⁻¹ (P_b B Q) Rᵀ.
    let mut aw = a.clone();
    let mut bw = b.clone();
    let mut row_a: Vec<usize> = (0..ma).collect();
    let mut row_b: Vec<usize> = (0..mb).collect();
    let mut col: Vec<usize> = (0..n).collect();
    let mut l_a = BitMatrix::identity(ma);
    let mut l_b = BitMatrix::identity(mb);
    let mut r = BitMatrix::identity(n);
    let (mut ta, mut tb) = (0, 0);

    loop {
        let hi = n - tb;
        let a_pivot = (ta..ma).find_map(|i| (ta..hi).find(|&j| aw.get(i, j)).map(|j| (i, j)));
        if let Some((pi, pj)) = a_pivot {
            aw.swap_rows(ta, pi);
            row_a.swap(ta, pi);
            conjugate_swap(&mut l_a, ta, pi);
            aw.swap_cols(ta, pj);
            bw.swap_cols(ta, pj);
            col.swap(ta, pj);
            conjugate_swap(&mut r, ta, pj);
        }
        let b_rows = mb - tb;
        let skip = a_pivot.map(|_| ta);
        let b_pivot = (ta..hi)
            .rev()
            .filter(|&j| Some(j) != skip)
            .find_map(|j| (0..b_rows).rev().find(|&i| bw.get(i, j)).map(|i| (i, j)));
        if a_pivot.is_none() && b_pivot.is_none() {
            break;
        }
        let (br, bc) = (b_rows.wrapping_sub(1), hi - 1);
        if let Some((pi, pj)) = b_pivot {
            bw.swap_rows(br, pi);
            row_b.swap(br, pi);
            conjugate_swap(&mut l_b, br, pi);
            aw.swap_cols(bc, pj);
            bw.swap_cols(bc, pj);
            col.swap(bc, pj);
            conjugate_swap(&mut r, bc, pj);
        }

        // Column step: the A pivot row fills row `ta`, the B pivot row fills
        // column `bc` (transposed) of this level's upper unit triangular factor.
        let mut step = BitMatrix::identity(n);
        if a_pivot.is_some() {
            for j in ta + 1..hi {
                step.set(ta, j, aw.get(ta, j));
            }
        }
        if b_pivot.is_some() {
            let start = if a_pivot.is_some() { ta + 1 } else { ta };
            for i in start..bc {
                step.set(i, bc, bw.get(br, i));
            }
        }
        aw = aw.mul(&step.invert()?)?;
        bw = bw.mul(&step.transpose())?;
        r = step.mul(&r)?;

        // Row step: clear the pivot columns with unit triangular row operations.
        if a_pivot.is_some() {
            for i in ta + 1..ma {
                if aw.get(i, ta) {
                    aw.xor_row(ta, i);
                    l_a.flip(i, ta);
                }
            }
            ta += 1;
        }
        if b_pivot.is_some() {
            for i in 0..br {
                if bw.get(i, bc) {
                    bw.xor_row(br, i);
                    l_b.flip(i, br);
                }
            }
            tb += 1;
        }
    }

    let d_a = IncompletePermutation::new(ma, n, (0..ta).map(|i| (i, i)))?;
    let d_b = IncompletePermutation::new(mb, n, (0..tb).map(|i| (n - tb + i, mb - tb + i)))?;
    debug_assert_eq!(aw, d_a.materialize());
    debug_assert_eq!(bw, d_b.materialize());

    let mut q = BitMatrix::zeros(n, n);
    for (j, &src) in col.iter().enumerate() {
        q.set(src, j, true);
    }
    Ok(JointDecomposition {
        p_a: row_permutation(&row_a),
        p_b: row_permutation(&row_b),
        q,
        l_a,
        l_b,
        r,
        d_a,
        d_b,
        rank_a: ta,
        rank_b: tb,
    })
}

/// One component's factors `P · H · Q = L · D · right`.
#[derive(Clone, Debug)]
pub struct ComponentFactors {
    pub p: BitMatrix,
    pub q: BitMatrix,
    pub l: BitMatrix,
    pub d: IncompletePermutation,
    pub right: BitMatrix,
}

/// `M(H, X) = ⊗_i (H_i if i ∈ X else I_{n_i})` for a single subset `x` given
/// as a bit mask over component positions.
pub fn layered_tensor(h: &[BitMatrix], x: u64) -> BitMatrix {
    let factors: Vec<BitMatrix> = h
        .iter()
        .enumerate()
        .map(|(i, hi)| {
            if x >> i & 1 == 1 {
                hi.clone()
            } else {
                BitMatrix::identity(hi.cols())
            }
        })
        .collect();
    BitMatrix::kron_all(&factors)
}

/// A stack of layered tensor products, one layer per subset.
#[derive(Clone, Debug)]
pub struct LayeredMatrix {
    pub components: Vec<BitMatrix>,
    pub subsets: SubsetTuple,
    pub layers: Vec<BitMatrix>,
    pub materialized: BitMatrix,
}

impl LayeredMatrix {
    pub fn new(components: &[BitMatrix], subsets: &SubsetTuple) -> Result<Self> {
        if components.len() != subsets.m() {
            return Err(Error::ComponentCount {
                expected: subsets.m(),
                found: components.len(),
            });
        }
        let n: usize = components.iter().map(|h| h.cols()).product();
        let layers: Vec<BitMatrix> = subsets.masks().iter().map(|&x| layered_tensor(components, x)).collect();
        let materialized = BitMatrix::vstack(n, &layers)?;
        Ok(LayeredMatrix {
            components: components.to_vec(),
            subsets: subsets.clone(),
            layers,
            materialized,
        })
    }

    /// First stacked row of each layer.
    pub fn layer_offsets(&self) -> Vec<usize> {
        self.layers
            .iter()
            .scan(0, |acc, l| {
                let start = *acc;
                *acc += l.rows();
                Some(start)
            })
            .collect()
    }
}

/// `P · M(H,X) · Q = L · D · R` for a stacked layered matrix.
///
/// `P` is block diagonal over layers, `L = blockdiag(L_i) · Λ`, `D` is
/// supported on the union of the per-layer supports, and `Q`, `R` are the
/// Kronecker products of the component factors.
#[derive(Clone, Debug)]
pub struct LayeredDecomposition {
    pub p: BitMatrix,
    pub q: BitMatrix,
    pub l: BitMatrix,
    pub lambda: BitMatrix,
    pub d: IncompletePermutation,
    pub r: BitMatrix,
    /// Per-layer `D(H, X_i)` in stack order.
    pub layer_d: Vec<IncompletePermutation>,
}

/// Decomposes `M(H, X)` from per-component factors.
///
/// Each support column of `D` is placed at the row of its first occurrence
/// in the layer stack.
pub fn layered_decompose(factors: &[ComponentFactors], x: &SubsetTuple) -> Result<LayeredDecomposition> {
    if factors.len() != x.m() {
        return Err(Error::ComponentCount {
            expected: x.m(),
            found: factors.len(),
        });
    }
    let mut right_inv = Vec::with_capacity(factors.len());
    for f in factors {
        right_inv.push(f.right.invert()?);
    }
    let mut p_blocks = Vec::new();
    let mut l_blocks = Vec::new();
    let mut layer_d = Vec::new();
    for &mask in x.masks() {
        let mut p = BitMatrix::identity(1);
        let mut l = BitMatrix::identity(1);
        let mut d = IncompletePermutation::identity(1);
        for (i, f) in factors.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p = p.kron(&f.p);
                l = l.kron(&f.l);
                d = d.kron(&f.d);
            } else {
                p = p.kron(&f.q.transpose());
                l = l.kron(&right_inv[i]);
                d = d.kron(&IncompletePermutation::identity(f.q.rows()));
            }
        }
        p_blocks.push(p);
        l_blocks.push(l);
        layer_d.push(d);
    }
    let q = BitMatrix::kron_all(factors.iter().map(|f| &f.q));
    let r = BitMatrix::kron_all(factors.iter().map(|f| &f.right));
    let n = q.rows();

    let rows: usize = layer_d.iter().map(|d| d.rows()).sum();
    let mut placement: BTreeMap<usize, usize> = BTreeMap::new();
    let mut offset = 0;
    for d in &layer_d {
        for (c, row) in d.entries() {
            placement.entry(c).or_insert(offset + row);
        }
        offset += d.rows();
    }
    let merged = IncompletePermutation::new(rows, n, placement)?;
    let lambda = lambda_factor(&layer_d, &merged)?;
    let l = BitMatrix::block_diag(&l_blocks).mul(&lambda)?;
    Ok(LayeredDecomposition {
        p: BitMatrix::block_diag(&p_blocks),
        q,
        l,
        lambda,
        d: merged,
        r,
        layer_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitVector;

    fn bits(rows: &[&str]) -> BitMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vec<u8>> = rows.iter().map(|r| r.bytes().map(|b| (b == b'1') as u8).collect()).collect();
        BitMatrix::from_rows(cols, &v).unwrap()
    }

    #[test]
    fn gp_materializes() {
        let gp = IncompletePermutation::new(1, 2, [(0, 0)]).unwrap();
        assert_eq!(gp.materialize(), bits(&["10"]));
        assert_eq!(gp.materialize().mul(&bits(&["11", "01"])).unwrap(), bits(&["11"]));
        assert!(IncompletePermutation::identity(3).materialize().is_identity());
    }

    #[test]
    fn gp_rejects_non_injective() {
        assert!(IncompletePermutation::new(2, 2, [(0, 0), (1, 0)]).is_err());
        assert!(IncompletePermutation::new(2, 2, [(0, 2)]).is_err());
    }

    #[test]
    fn gp_kron_is_product_support() {
        let a = IncompletePermutation::new(2, 3, [(0, 1), (2, 0)]).unwrap();
        let b = IncompletePermutation::new(3, 2, [(1, 2)]).unwrap();
        let k = a.kron(&b);
        assert_eq!(k.materialize(), a.materialize().kron(&b.materialize()));
        assert_eq!(k.support(), vec![1, 5]);
    }

    #[test]
    fn lambda_two_copies() {
        let part = IncompletePermutation::new(1, 1, [(0, 0)]).unwrap();
        let merged = IncompletePermutation::new(2, 1, [(0, 0)]).unwrap();
        let lambda = lambda_factor(&[part.clone(), part], &merged).unwrap();
        assert_eq!(lambda.mul(&merged.materialize()).unwrap(), bits(&["1", "1"]));
        assert!(lambda.invert().is_ok());
    }

    #[test]
    fn lambda_single_part_is_identity() {
        let part = IncompletePermutation::new(3, 4, [(0, 2), (3, 0)]).unwrap();
        let lambda = lambda_factor(std::slice::from_ref(&part), &part).unwrap();
        assert!(lambda.is_identity());
    }

    #[test]
    fn lambda_support_mismatch() {
        let part = IncompletePermutation::new(1, 2, [(0, 0)]).unwrap();
        let merged = IncompletePermutation::new(1, 2, [(1, 0)]).unwrap();
        assert!(matches!(lambda_factor(&[part], &merged), Err(Error::SupportMismatch(_))));
    }

    #[test]
    fn lambda_with_scattered_rows() {
        let parts = [
            IncompletePermutation::new(3, 5, [(0, 2), (3, 0)]).unwrap(),
            IncompletePermutation::new(2, 5, [(3, 1), (4, 0)]).unwrap(),
            IncompletePermutation::new(3, 5, [(0, 0), (3, 2), (1, 1)]).unwrap(),
        ];
        let merged = IncompletePermutation::new(8, 5, [(0, 7), (1, 0), (3, 4), (4, 2)]).unwrap();
        let lambda = lambda_factor(&parts, &merged).unwrap();
        let stack = BitMatrix::vstack(5, &parts.iter().map(|p| p.materialize()).collect::<Vec<_>>()).unwrap();
        assert_eq!(lambda.mul(&merged.materialize()).unwrap(), stack);
        assert!(lambda.invert().is_ok());
    }

    #[test]
    fn single_parity_pair() {
        let h = bits(&["11"]);
        let jd = joint_decompose(&h, &h).unwrap();
        assert_eq!(jd.d_a.materialize(), bits(&["10"]));
        assert_eq!(jd.d_b.materialize(), bits(&["01"]));
        assert_eq!(jd.r, bits(&["11", "01"]));
        assert_eq!(jd.r_inv_t(), bits(&["10", "11"]));
        for p in [&jd.p_a, &jd.p_b, &jd.q, &jd.l_a, &jd.l_b] {
            assert!(p.is_identity());
        }
        jd.check(&h, &h).unwrap();
    }

    #[test]
    fn zero_pair() {
        let a = BitMatrix::zeros(2, 4);
        let b = BitMatrix::zeros(3, 4);
        let jd = joint_decompose(&a, &b).unwrap();
        assert_eq!((jd.rank_a, jd.rank_b), (0, 0));
        assert!(jd.d_a.materialize().is_zero() && jd.d_b.materialize().is_zero());
        assert!(jd.r.is_identity() && jd.q.is_identity());
        jd.check(&a, &b).unwrap();
    }

    #[test]
    fn one_sided_pairs() {
        let a = bits(&["0110", "1010", "1100"]);
        let z = BitMatrix::zeros(2, 4);
        joint_decompose(&a, &z).unwrap().check(&a, &z).unwrap();
        joint_decompose(&z, &a).unwrap().check(&z, &a).unwrap();
    }

    #[test]
    fn empty_matrices() {
        let a = BitMatrix::zeros(0, 3);
        let b = bits(&["101"]);
        joint_decompose(&a, &b).unwrap().check(&a, &b).unwrap();
        let e = BitMatrix::zeros(0, 0);
        joint_decompose(&e, &e).unwrap().check(&e, &e).unwrap();
    }

    #[test]
    fn non_orthogonal_pair_is_rejected() {
        assert!(matches!(
            joint_decompose(&bits(&["10"]), &bits(&["11"])),
            Err(Error::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn hamming_pair() {
        let g = bits(&["1110000", "1001100", "0101010", "1101001"]);
        let h = g.kernel_basis();
        let jd = joint_decompose(&g, &h).unwrap();
        jd.check(&g, &h).unwrap();
        assert_eq!(jd.rank_a + jd.rank_b, 7);
    }

    #[test]
    fn layered_tensor_examples() {
        let one = bits(&["11"]);
        assert_eq!(layered_tensor(&[one.clone(), one.clone()], 0b11), bits(&["1111"]));
        assert!(layered_tensor(&[one.clone(), one.clone()], 0).is_identity());
        let spc = vec![one; 4];
        let layer = layered_tensor(&spc, 0b0011);
        assert_eq!(layer.shape(), (4, 16));
        assert!((0..4).all(|i| layer.row_weight(i) == 4));
    }

    #[test]
    fn layered_single_subset_has_identity_lambda() {
        let h = bits(&["11"]);
        let jd = joint_decompose(&h, &h).unwrap();
        let x = SubsetTuple::from_lists(3, &[vec![0, 2]]).unwrap();
        let dec = layered_decompose(&vec![jd.a_factors(); 3], &x).unwrap();
        assert!(dec.lambda.is_identity());
        let m = LayeredMatrix::new(&vec![h; 3], &x).unwrap().materialized;
        let lhs = dec.p.mul(&m).unwrap().mul(&dec.q).unwrap();
        let rhs = dec.l.mul(&dec.d.materialize()).unwrap().mul(&dec.r).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn layered_rows_span() {
        let h = bits(&["11"]);
        let jd = joint_decompose(&h, &h).unwrap();
        let x = SubsetTuple::from_lists(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let dec = layered_decompose(&vec![jd.a_factors(); 4], &x).unwrap();
        let m = LayeredMatrix::new(&vec![h; 4], &x).unwrap().materialized;
        let gp_r = dec.d.materialize().mul(&dec.r).unwrap();
        assert!(m.same_row_space(&gp_r).unwrap());
        assert_eq!(dec.d.support_len(), 7);
        assert_eq!(m.rank(), 7);
        let probe = BitVector::from_indices(16, [0, 1, 2, 3]);
        assert!(m.row_space_contains(&probe).unwrap());
    }
}
