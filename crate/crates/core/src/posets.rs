//! The componentwise partial order on boxes `[n_0] x ... x [n_{m-1}]`,
//! monotone closures, extremal elements and subset tuples.
//!
//! Every tuple has a flat index given by lexicographic linearization, which
//! is the same order [`BitMatrix::kron`](crate::gf2::BitMatrix::kron) uses for
//! rows and columns. [`Shape::linearize`] is the only place that order is
//! spelled out.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// The bounding box `(n_0, ..., n_{m-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(dims: Vec<usize>) -> Self {
        Shape(dims)
    }

    /// `{0,1}^m`.
    pub fn binary(m: usize) -> Self {
        Shape(vec![2; m])
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    /// Number of coordinates.
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Number of points in the box.
    pub fn size(&self) -> usize {
        self.0.iter().product()
    }

    pub fn check(&self, t: &IndexTuple) -> Result<()> {
        if t.0.len() != self.0.len() {
            return Err(Error::ShapeMismatch(t.0.clone(), self.0.clone()));
        }
        if t.0.iter().zip(&self.0).any(|(x, n)| x >= n) {
            return Err(Error::OutOfBox {
                entries: t.0.clone(),
                shape: self.0.clone(),
            });
        }
        Ok(())
    }

    /// Lexicographic flat index: the last coordinate varies fastest.
    pub fn linearize(&self, entries: &[usize]) -> usize {
        debug_assert_eq!(entries.len(), self.0.len());
        entries
            .iter()
            .zip(&self.0)
            .fold(0, |acc, (&x, &n)| acc * n + x)
    }

    pub fn delinearize(&self, mut index: usize) -> IndexTuple {
        let mut entries = vec![0; self.0.len()];
        for (slot, &n) in entries.iter_mut().zip(&self.0).rev() {
            *slot = index % n;
            index /= n;
        }
        IndexTuple(entries)
    }

    /// Every tuple of the box in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = IndexTuple> + '_ {
        (0..self.size()).map(|i| self.delinearize(i))
    }
}

/// A point of a box.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexTuple(pub Vec<usize>);

impl IndexTuple {
    pub fn new(entries: Vec<usize>) -> Self {
        IndexTuple(entries)
    }

    /// Parses the digit shorthand `"0110"`.
    pub fn from_digits(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
            })
            .collect::<Result<_>>()
            .map(IndexTuple)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// Sum of entries; the Hamming weight for binary tuples.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// `self <= other` componentwise.
    pub fn is_below(&self, other: &IndexTuple) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&x| x < 10) {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            write!(f, "{:?}", self.0)
        }
    }
}

/// Strict componentwise order: `x <= y` everywhere and `x < y` somewhere.
pub fn tuple_lt(x: &IndexTuple, y: &IndexTuple) -> Result<bool> {
    if x.0.len() != y.0.len() {
        return Err(Error::ShapeMismatch(x.0.clone(), y.0.clone()));
    }
    Ok(x.is_below(y) && x != y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Increasing => Direction::Decreasing,
            Direction::Decreasing => Direction::Increasing,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremal {
    Min,
    Max,
}

/// A subset of a box closed in one direction, with explicit membership.
#[derive(Clone, PartialEq, Eq)]
pub struct MonotoneSet {
    shape: Shape,
    direction: Direction,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl fmt::Debug for MonotoneSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneSet")
            .field("direction", &self.direction)
            .field("members", &self.tuples().collect::<Vec<_>>())
            .finish()
    }
}

impl MonotoneSet {
    /// The increasing or decreasing set generated by `generators`.
    pub fn closure(shape: &Shape, generators: &[IndexTuple], direction: Direction) -> Result<MonotoneSet> {
        for g in generators {
            shape.check(g)?;
        }
        let mut mask = vec![false; shape.size()];
        for (i, x) in shape.tuples().enumerate() {
            mask[i] = generators.iter().any(|g| match direction {
                Direction::Decreasing => x.is_below(g),
                Direction::Increasing => g.is_below(&x),
            });
        }
        Ok(Self::from_mask(shape.clone(), direction, mask))
    }

    /// Wraps an explicit member list, verifying closure.
    pub fn from_members(shape: &Shape, direction: Direction, members: impl IntoIterator<Item = usize>) -> Result<MonotoneSet> {
        let mut mask = vec![false; shape.size()];
        for i in members {
            if i >= mask.len() {
                return Err(Error::OutOfBox {
                    entries: vec![i],
                    shape: shape.dims().to_vec(),
                });
            }
            mask[i] = true;
        }
        let set = Self::from_mask(shape.clone(), direction, mask);
        if !set.is_closed() {
            return Err(Error::InvalidSpec(format!("member list is not {direction:?}")));
        }
        Ok(set)
    }

    pub fn empty(shape: &Shape, direction: Direction) -> MonotoneSet {
        Self::from_mask(shape.clone(), direction, vec![false; shape.size()])
    }

    fn from_mask(shape: Shape, direction: Direction, mask: Vec<bool>) -> MonotoneSet {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        MonotoneSet {
            shape,
            direction,
            members,
            mask,
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Sorted flat indices of the members.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn tuples(&self) -> impl Iterator<Item = IndexTuple> + '_ {
        self.members.iter().map(|&i| self.shape.delinearize(i))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.mask.get(index).copied().unwrap_or(false)
    }

    pub fn contains(&self, t: &IndexTuple) -> bool {
        self.shape.check(t).is_ok() && self.mask[self.shape.linearize(&t.0)]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// True when the member set really is closed in the declared direction.
    pub fn is_closed(&self) -> bool {
        // Closed iff stepping one unit along any coordinate (down for a
        // decreasing set, up for an increasing one) stays inside.
        let dims = self.shape.dims();
        self.tuples().all(|t| {
            (0..dims.len()).all(|c| {
                let mut s = t.clone();
                match self.direction {
                    Direction::Decreasing if s.0[c] > 0 => s.0[c] -= 1,
                    Direction::Increasing if s.0[c] + 1 < dims[c] => s.0[c] += 1,
                    _ => return true,
                }
                self.mask[self.shape.linearize(&s.0)]
            })
        })
    }

    /// The complement in the box; it is monotone in the opposite direction.
    pub fn complement(&self) -> MonotoneSet {
        Self::from_mask(
            self.shape.clone(),
            self.direction.opposite(),
            self.mask.iter().map(|b| !b).collect(),
        )
    }

    /// Coordinate reversal `x_i -> n_i - 1 - x_i`; on `{0,1}^m` this swaps
    /// zeros and ones. Flips the direction.
    pub fn reflect(&self) -> MonotoneSet {
        let dims = self.shape.dims();
        let mut mask = vec![false; self.mask.len()];
        for t in self.tuples() {
            let r: Vec<usize> = t.0.iter().zip(dims).map(|(&x, &n)| n - 1 - x).collect();
            mask[self.shape.linearize(&r)] = true;
        }
        Self::from_mask(self.shape.clone(), self.direction.opposite(), mask)
    }

    pub fn is_subset_of(&self, other: &MonotoneSet) -> bool {
        self.shape == other.shape && self.members.iter().all(|&i| other.mask[i])
    }

    /// Flat indices in `self` but not in `other`.
    pub fn difference(&self, other: &MonotoneSet) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&i| !other.contains_index(i))
            .collect()
    }

    /// The minimal or maximal elements, in lexicographic order.
    pub fn extremal(&self, kind: Extremal) -> Vec<IndexTuple> {
        let all: Vec<IndexTuple> = self.tuples().collect();
        all.iter()
            .filter(|x| {
                !all.iter().any(|y| match kind {
                    Extremal::Min => y.is_below(x) && y != *x,
                    Extremal::Max => x.is_below(y) && y != *x,
                })
            })
            .cloned()
            .collect()
    }
}

/// The column partition `(down, middle, up)` of a box.
#[derive(Clone, Debug)]
pub struct Partition {
    pub down: MonotoneSet,
    pub middle: Vec<usize>,
    pub up: MonotoneSet,
}

impl Partition {
    pub fn middle_tuples(&self) -> Vec<IndexTuple> {
        let shape = self.down.shape();
        self.middle.iter().map(|&i| shape.delinearize(i)).collect()
    }
}

/// Splits the box into the decreasing closure of `down_generators`, the
/// increasing closure of `up_generators`, and the remaining middle layer.
///
/// Fails if the two closures overlap.
pub fn complement_partition(shape: &Shape, down_generators: &[IndexTuple], up_generators: &[IndexTuple]) -> Result<Partition> {
    let down = MonotoneSet::closure(shape, down_generators, Direction::Decreasing)?;
    let up = MonotoneSet::closure(shape, up_generators, Direction::Increasing)?;
    if let Some(&i) = down.members().iter().find(|&&i| up.contains_index(i)) {
        return Err(Error::ClosureOverlap(shape.delinearize(i).0));
    }
    let middle = (0..shape.size())
        .filter(|&i| !down.contains_index(i) && !up.contains_index(i))
        .collect();
    Ok(Partition { down, middle, up })
}

/// An ordered tuple of subsets of `[m]`, stored as bit masks.
///
/// Serializes as a JSON array of element lists, e.g. `[[0,1],[2,3]]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "Vec<Vec<usize>>")]
pub struct SubsetTuple {
    m: usize,
    masks: Vec<u64>,
}

impl From<SubsetTuple> for Vec<Vec<usize>> {
    fn from(s: SubsetTuple) -> Self {
        s.lists()
    }
}

impl fmt::Debug for SubsetTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.lists().iter().map(|l| l.iter().map(|x| x.to_string()).collect::<String>()))
            .finish()
    }
}

impl SubsetTuple {
    pub fn from_lists(m: usize, lists: &[Vec<usize>]) -> Result<SubsetTuple> {
        if m > 64 {
            return Err(Error::InvalidSpec(format!("m = {m} exceeds 64 coordinates")));
        }
        let masks = lists
            .iter()
            .map(|l| {
                l.iter().try_fold(0u64, |acc, &e| {
                    if e >= m {
                        Err(Error::SubsetOutOfRange { element: e, m })
                    } else {
                        Ok(acc | 1 << e)
                    }
                })
            })
            .collect::<Result<_>>()?;
        Ok(SubsetTuple { m, masks })
    }

    pub fn from_masks(m: usize, masks: Vec<u64>) -> Result<SubsetTuple> {
        let lists: Vec<Vec<usize>> = masks
            .iter()
            .map(|&mask| (0..64).filter(|b| mask >> b & 1 == 1).collect())
            .collect();
        Self::from_lists(m, &lists)
    }

    /// Parses digit shorthand such as `["013", "124"]`.
    pub fn from_digit_strings(m: usize, items: &[&str]) -> Result<SubsetTuple> {
        let lists: Vec<Vec<usize>> = items
            .iter()
            .map(|s| IndexTuple::from_digits(s).map(|t| t.0))
            .collect::<Result<_>>()?;
        Self::from_lists(m, &lists)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn contains(&self, subset: usize, element: usize) -> bool {
        self.masks[subset] >> element & 1 == 1
    }

    pub fn subset(&self, i: usize) -> Vec<usize> {
        (0..self.m).filter(|&e| self.contains(i, e)).collect()
    }

    pub fn lists(&self) -> Vec<Vec<usize>> {
        (0..self.masks.len()).map(|i| self.subset(i)).collect()
    }

    /// Sorts the subsets by their sorted element lists, lexicographically.
    pub fn sorted_lexicographic(&self) -> SubsetTuple {
        let mut lists = self.lists();
        lists.sort();
        SubsetTuple::from_lists(self.m, &lists).expect("elements already validated")
    }

    /// Positions `(i, j)` with `i < j` holding the same subset.
    pub fn duplicates(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.masks.len() {
            for j in i + 1..self.masks.len() {
                if self.masks[i] == self.masks[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The `u x m` indicator matrix with one row per subset.
    pub fn indicator_matrix(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.masks.len(), self.m);
        for i in 0..self.masks.len() {
            for e in self.subset(i) {
                out.set(i, e, true);
            }
        }
        out
    }

    /// Reads the subsets back from an indicator matrix.
    pub fn from_indicator(m: &BitMatrix) -> Result<SubsetTuple> {
        let lists: Vec<Vec<usize>> = (0..m.rows()).map(|i| m.row_ones(i).collect()).collect();
        Self::from_lists(m.cols(), &lists)
    }

    /// Binary index tuples `(1 if e in X_i else 0)_e`, one per subset.
    pub fn indicator_tuples(&self) -> Vec<IndexTuple> {
        (0..self.masks.len())
            .map(|i| IndexTuple((0..self.m).map(|e| self.contains(i, e) as usize).collect()))
            .collect()
    }
}

impl<'de> Deserialize<'de> for SubsetTuple {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        // Without an explicit m, the ground set is the smallest [m] covering
        // every element. Callers that know m use `with_m`.
        let lists = Vec::<Vec<usize>>::deserialize(de)?;
        let m = lists.iter().flatten().max().map_or(0, |&e| e + 1);
        SubsetTuple::from_lists(m, &lists).map_err(serde::de::Error::custom)
    }
}

impl SubsetTuple {
    /// Re-targets the tuple at a larger ground set `[m]`.
    pub fn with_m(&self, m: usize) -> Result<SubsetTuple> {
        Self::from_lists(m, &self.lists())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> IndexTuple {
        IndexTuple::from_digits(s).unwrap()
    }

    fn digits(set: &MonotoneSet) -> Vec<String> {
        let mut v: Vec<String> = set.tuples().map(|x| format!("{x:?}")).collect();
        v.sort();
        v
    }

    fn sorted(items: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = items.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn strict_order_examples() {
        assert!(tuple_lt(&t("123"), &t("234")).unwrap());
        assert!(tuple_lt(&t("234"), &t("345")).unwrap());
        assert!(!tuple_lt(&t("123"), &t("432")).unwrap());
        assert!(!tuple_lt(&t("432"), &t("123")).unwrap());
        assert!(!tuple_lt(&t("123"), &t("123")).unwrap());
        assert!(tuple_lt(&t("12"), &t("123")).is_err());
    }

    #[test]
    fn lexicographic_linearization() {
        let shape = Shape::new(vec![2, 3, 4]);
        assert_eq!(shape.linearize(&[1, 2, 3]), 23);
        assert_eq!(shape.linearize(&[0, 1, 0]), 4);
        for i in 0..shape.size() {
            assert_eq!(shape.linearize(&shape.delinearize(i).0), i);
        }
        assert_eq!(Shape::binary(4).linearize(&t("0011").0), 3);
    }

    #[test]
    fn spc_closures() {
        let shape = Shape::binary(4);
        let down = MonotoneSet::closure(&shape, &[t("0011"), t("1100")], Direction::Decreasing).unwrap();
        assert_eq!(digits(&down), sorted(&["0011", "1100", "1000", "0100", "0010", "0001", "0000"]));
        let up = MonotoneSet::closure(&shape, &[t("1010"), t("0101")], Direction::Increasing).unwrap();
        assert_eq!(digits(&up), sorted(&["1010", "0101", "1110", "1101", "1011", "0111", "1111"]));
        assert!(MonotoneSet::closure(&shape, &[], Direction::Decreasing).unwrap().is_empty());
        assert_eq!(down.extremal(Extremal::Max), vec![t("0011"), t("1100")]);
        assert_eq!(down.extremal(Extremal::Min), vec![t("0000")]);
    }

    #[test]
    fn closure_rejects_bad_generators() {
        let shape = Shape::binary(3);
        assert!(matches!(
            MonotoneSet::closure(&shape, &[t("0120")], Direction::Increasing),
            Err(Error::ShapeMismatch(..))
        ));
        assert!(matches!(
            MonotoneSet::closure(&shape, &[t("020")], Direction::Increasing),
            Err(Error::OutOfBox { .. })
        ));
    }

    #[test]
    fn spc_partition() {
        let p = complement_partition(&Shape::binary(4), &[t("0011"), t("1100")], &[t("1010"), t("0101")]).unwrap();
        assert_eq!(p.middle_tuples(), vec![t("0110"), t("1001")]);
    }

    #[test]
    fn overlapping_closures_are_rejected() {
        let err = complement_partition(&Shape::binary(2), &[t("11")], &[t("01")]).unwrap_err();
        assert!(matches!(err, Error::ClosureOverlap(_)));
    }

    #[test]
    fn complement_and_reflection_flip_direction() {
        let shape = Shape::new(vec![3, 2, 4]);
        let down = MonotoneSet::closure(&shape, &[IndexTuple(vec![1, 1, 2]), IndexTuple(vec![2, 0, 0])], Direction::Decreasing).unwrap();
        let c = down.complement();
        assert_eq!(c.direction(), Direction::Increasing);
        assert!(c.is_closed());
        let r = down.reflect();
        assert_eq!(r.direction(), Direction::Increasing);
        assert!(r.is_closed());
        assert_eq!(r.len(), down.len());
    }

    #[test]
    fn from_members_validates() {
        let shape = Shape::binary(2);
        assert!(MonotoneSet::from_members(&shape, Direction::Decreasing, [0, 1]).is_ok());
        assert!(MonotoneSet::from_members(&shape, Direction::Decreasing, [1]).is_err());
    }

    #[test]
    fn subset_tuple_views() {
        let x = SubsetTuple::from_lists(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(
            x.indicator_matrix(),
            BitMatrix::from_rows(4, &[[1u8, 1, 0, 0], [0, 0, 1, 1]]).unwrap()
        );
        assert_eq!(SubsetTuple::from_indicator(&x.indicator_matrix()).unwrap(), x);
        assert_eq!(serde_json::to_string(&x).unwrap(), "[[0,1],[2,3]]");
        let back: SubsetTuple = serde_json::from_str("[[0,1],[2,3]]").unwrap();
        assert_eq!(back, x);
        assert!(SubsetTuple::from_lists(3, &[vec![3]]).is_err());
        let dup = SubsetTuple::from_digit_strings(5, &["02", "13", "04", "14", "13"]).unwrap();
        assert_eq!(dup.duplicates(), vec![(1, 4)]);
        let sorted = SubsetTuple::from_digit_strings(3, &["12", "02", "01"]).unwrap().sorted_lexicographic();
        assert_eq!(sorted.lists(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }
}
