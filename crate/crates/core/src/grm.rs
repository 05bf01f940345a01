//! Generalized Reed-Muller spaces on `{0,1}^m`.
//!
//! `GRM(S) = RowSpan(GP(S) · R_m)` for a decreasing `S`, and
//! `GRMT(T) = RowSpan(GP(T) · R_m^{-T})` for an increasing `T`, where
//! `R_m = [[1,1],[0,1]]^{⊗m}`. Since `R_m` is an involution, `R_m^{-T} = R_m^T`.
//!
//! Flat index of a point is its binary expansion with coordinate 0 as the
//! most significant bit, so the Hamming weight of a point is the popcount of
//! its index.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::posets::{complement_partition, Direction, IndexTuple, MonotoneSet, Shape, SubsetTuple};

/// `[[1,1],[0,1]]^{⊗m}`.
pub fn r_matrix(m: usize) -> BitMatrix {
    let base = BitMatrix::from_rows(2, &[[1u8, 1], [0, 1]]).expect("static");
    BitMatrix::kron_all(std::iter::repeat_n(&base, m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parametrization {
    /// Decreasing set, rows of `R_m`.
    Decreasing,
    /// Increasing set, rows of `R_m^{-T}`.
    Increasing,
}

impl Parametrization {
    pub fn direction(self) -> Direction {
        match self {
            Parametrization::Decreasing => Direction::Decreasing,
            Parametrization::Increasing => Direction::Increasing,
        }
    }

    pub fn for_direction(d: Direction) -> Self {
        match d {
            Direction::Decreasing => Parametrization::Decreasing,
            Direction::Increasing => Parametrization::Increasing,
        }
    }
}

fn binary_arity(set: &MonotoneSet) -> Result<usize> {
    let m = set.shape().arity();
    if *set.shape() != Shape::binary(m) {
        return Err(Error::InvalidSpec(format!("expected a subset of {{0,1}}^{m}, got box {:?}", set.shape().dims())));
    }
    Ok(m)
}

/// A GRM space with its parameter set and generator matrix.
#[derive(Clone, Debug)]
pub struct GrmSpace {
    m: usize,
    set: MonotoneSet,
    parametrization: Parametrization,
    generator: BitMatrix,
}

/// Builds the generator `GP(S) · R_m` or `GP(T) · R_m^{-T}`; GP places the
/// members of the set in lexicographic order.
pub fn grm_generator(set: &MonotoneSet, parametrization: Parametrization) -> Result<GrmSpace> {
    if set.direction() != parametrization.direction() {
        return Err(Error::DirectionMismatch);
    }
    let m = binary_arity(set)?;
    let r = match parametrization {
        Parametrization::Decreasing => r_matrix(m),
        Parametrization::Increasing => r_matrix(m).transpose(),
    };
    Ok(GrmSpace {
        m,
        generator: r.select_rows(set.members()),
        set: set.clone(),
        parametrization,
    })
}

impl GrmSpace {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn set(&self) -> &MonotoneSet {
        &self.set
    }

    pub fn parametrization(&self) -> Parametrization {
        self.parametrization
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn dimension(&self) -> usize {
        self.set.len()
    }

    /// The same space in the other parametrization: `GRM(S) = GRMT(φ(S))`.
    pub fn partner(&self) -> GrmSpace {
        let reflected = self.set.reflect();
        grm_generator(&reflected, Parametrization::for_direction(reflected.direction())).expect("reflection flips direction")
    }

    /// The orthogonal complement, in the same parametrization. Its parameter
    /// set is `φ(S)^c`.
    pub fn dual(&self) -> GrmSpace {
        grm_generator(&self.set.reflect().complement(), self.parametrization).expect("direction preserved")
    }
}

/// `S ⊆ T`, both monotone in the same direction on `{0,1}^m`.
#[derive(Clone, Debug)]
pub struct NestedPair {
    t: MonotoneSet,
    s: MonotoneSet,
}

impl NestedPair {
    pub fn new(t: MonotoneSet, s: MonotoneSet) -> Result<Self> {
        if t.direction() != s.direction() {
            return Err(Error::DirectionMismatch);
        }
        binary_arity(&t)?;
        if !s.is_subset_of(&t) {
            return Err(Error::NotNested);
        }
        Ok(NestedPair { t, s })
    }

    pub fn t(&self) -> &MonotoneSet {
        &self.t
    }

    pub fn s(&self) -> &MonotoneSet {
        &self.s
    }

    pub fn m(&self) -> usize {
        self.t.shape().arity()
    }

    pub fn direction(&self) -> Direction {
        self.t.direction()
    }

    /// The pair seen through `φ`, which swaps the direction.
    pub fn reflect(&self) -> NestedPair {
        NestedPair {
            t: self.t.reflect(),
            s: self.s.reflect(),
        }
    }

    /// `max |t|` over `T \ S` for decreasing pairs, `max (m - |t|)` for
    /// increasing ones.
    pub fn r(&self) -> Result<usize> {
        let diff = self.t.difference(&self.s);
        let m = self.m();
        let weights = diff.iter().map(|&i| i.count_ones() as usize);
        match self.direction() {
            Direction::Decreasing => weights.max(),
            Direction::Increasing => weights.map(|w| m - w).max(),
        }
        .ok_or(Error::EmptyDifference)
    }
}

/// Minimum weight of `GRM(T) \ GRM(S)`: `2^{m - r(T,S)}`. Increasing pairs
/// are reduced to decreasing ones through `φ`.
pub fn nested_distance(p: &NestedPair) -> Result<u64> {
    let p = match p.direction() {
        Direction::Decreasing => p.clone(),
        Direction::Increasing => p.reflect(),
    };
    let r = p.r()?;
    Ok(1u64 << (p.m() - r))
}

/// Splits a set on `{0,1}^m` by its first coordinate: `T = (0,T_0) ∪ (1,T_1)`.
pub fn uuv_split(t: &MonotoneSet) -> Result<(MonotoneSet, MonotoneSet)> {
    let m = binary_arity(t)?;
    if m == 0 {
        return Err(Error::ZeroCoordinates);
    }
    let half = 1usize << (m - 1);
    let shape = Shape::binary(m - 1);
    let t0 = t.members().iter().filter(|&&i| i < half).copied();
    let t1 = t.members().iter().filter(|&&i| i >= half).map(|&i| i - half);
    Ok((
        MonotoneSet::from_members(&shape, t.direction(), t0)?,
        MonotoneSet::from_members(&shape, t.direction(), t1)?,
    ))
}

fn recursive(t: &MonotoneSet, s: &MonotoneSet) -> Option<u64> {
    if t.difference(s).is_empty() {
        return None;
    }
    if t.shape().arity() == 0 {
        return Some(1);
    }
    let (t0, t1) = uuv_split(t).expect("binary, m >= 1");
    let (s0, s1) = uuv_split(s).expect("binary, m >= 1");
    let a = recursive(&t0, &s0).map(|d| 2 * d);
    let b = recursive(&t1, &s1);
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Same value as [`nested_distance`], evaluated through the `(u, u+v)`
/// recursion `d(T,S) = min(2 d(T_0,S_0), d(T_1,S_1))`.
pub fn nested_distance_recursive(p: &NestedPair) -> Result<u64> {
    let p = match p.direction() {
        Direction::Decreasing => p.clone(),
        Direction::Increasing => p.reflect(),
    };
    recursive(&p.t, &p.s).ok_or(Error::EmptyDifference)
}

/// The middle layer `K` of `CSS(X, Z)` with all components `[1 1]`.
pub fn logical_set(x: &SubsetTuple, z: &SubsetTuple) -> Result<Vec<IndexTuple>> {
    let m = x.m();
    if z.m() != m {
        return Err(Error::ComponentCount { expected: m, found: z.m() });
    }
    crate::css::check_intersecting(x, z)?;
    let sx: Vec<IndexTuple> = x
        .masks()
        .iter()
        .map(|&mask| IndexTuple((0..m).map(|j| (mask >> j & 1 == 0) as usize).collect()))
        .collect();
    let sz = z.indicator_tuples();
    let partition = complement_partition(&Shape::binary(m), &sx, &sz)?;
    Ok(partition.middle_tuples())
}

/// `(d_x, d_z) = (2^{min (m - |v|)}, 2^{min |v|})` over `v ∈ K`.
pub fn distances_from_k(m: usize, k: &[IndexTuple]) -> Result<(u64, u64)> {
    let min_w = k.iter().map(IndexTuple::weight).min().ok_or(Error::NoLogicalQubits)?;
    let max_w = k.iter().map(IndexTuple::weight).max().ok_or(Error::NoLogicalQubits)?;
    Ok((1 << (m - max_w), 1 << min_w))
}

/// Closed-form distances of `CSS(X, Z)` with all components `[1 1]`.
pub fn css_xz_distances(x: &SubsetTuple, z: &SubsetTuple) -> Result<(u64, u64)> {
    distances_from_k(x.m(), &logical_set(x, z)?)
}
