//! Intersecting-subset CSS codes.
//!
//! A code is given by `m` orthogonal component pairs `(H^x_i, H^z_i)` and two
//! tuples of subsets `X`, `Z` of `[m]`. Its X checks are the stacked layered
//! tensors `M(H^x, X)` and its Z checks `M(H^z, Z)`.
//!
//! Qubits are labelled by the lexicographic linearization of index tuples in
//! the box `[n_0] × ... × [n_{m-1}]`. The column partition `(down, K, up)` is
//! expressed in *decomposition coordinates*, i.e. after the column permutation
//! `Q = ⊗ Q_i`; [`CssCode::physical_qubit`] maps back. For the common case of
//! `[1 1]` components `Q` is the identity and the two labelings agree.

mod circuit;
mod schedule;
mod spec;
mod verify;

pub use circuit::{CircuitSpec, Cnot, SymplecticMatrix};
pub use schedule::{Measurement, ScheduleLayer, SyndromeSchedule};
pub use spec::{CodeSpec, ComponentSpec};
pub use verify::{verify_code, verify_spec, CheckResult, VerifyReport};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::decomp::{joint_decompose, layered_decompose, JointDecomposition, LayeredDecomposition, LayeredMatrix};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::posets::{complement_partition, IndexTuple, MonotoneSet, Partition, Shape, SubsetTuple};

/// X or Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, serde::Deserialize)]
pub enum Pauli {
    X,
    Z,
}

/// One orthogonal pair `(H^x_i, H^z_i)` on `n_i` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPair {
    hx: BitMatrix,
    hz: BitMatrix,
    rank_x: usize,
    rank_z: usize,
}

impl ComponentPair {
    /// Checks column agreement and `H^x · (H^z)^T = 0`.
    pub fn new(hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        Self::check(&hx, &hz, None)?;
        let rank_x = hx.rank();
        let rank_z = hz.rank();
        Ok(ComponentPair { hx, hz, rank_x, rank_z })
    }

    fn check(hx: &BitMatrix, hz: &BitMatrix, component: Option<usize>) -> Result<()> {
        if hx.cols() != hz.cols() {
            return Err(Error::DimensionMismatch {
                op: "component pair",
                left_rows: hx.rows(),
                left_cols: hx.cols(),
                right_rows: hz.rows(),
                right_cols: hz.cols(),
            });
        }
        if hx.cols() == 0 {
            return Err(Error::InvalidSpec("component with zero columns".into()));
        }
        if !hx.mul(&hz.transpose())?.is_zero() {
            return Err(Error::NotOrthogonal { component });
        }
        Ok(())
    }

    /// The pair `([1 1], [1 1])`.
    pub fn repetition() -> Self {
        let h = BitMatrix::from_rows(2, &[[1u8, 1]]).expect("static");
        Self::new(h.clone(), h).expect("orthogonal")
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn rank_x(&self) -> usize {
        self.rank_x
    }

    pub fn rank_z(&self) -> usize {
        self.rank_z
    }
}

/// Which canonical generator family to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Stabilizer,
    Normalizer,
    Logical,
}

/// Count and weight of measurements contributed by one layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerProfile {
    pub pauli: Pauli,
    pub subset: Vec<usize>,
    pub count: usize,
    /// Distinct row weights in this layer (one entry for uniform layers).
    pub weights: Vec<usize>,
}

/// `[[n, k]]` together with the syndrome measurement profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub layers: Vec<LayerProfile>,
    /// weight -> number of X-type measurements
    pub x_profile: BTreeMap<usize, usize>,
    /// weight -> number of Z-type measurements
    pub z_profile: BTreeMap<usize, usize>,
}

impl CodeParameters {
    /// Both sides merged: weight -> count.
    pub fn total_profile(&self) -> BTreeMap<usize, usize> {
        let mut total = self.x_profile.clone();
        for (&w, &c) in &self.z_profile {
            *total.entry(w).or_default() += c;
        }
        total
    }
}

/// A constructed code with its cached partition and decompositions.
#[derive(Clone, Debug)]
pub struct CssCode {
    components: Vec<ComponentPair>,
    x: SubsetTuple,
    z: SubsetTuple,
    shape: Shape,
    sx: Vec<IndexTuple>,
    sz: Vec<IndexTuple>,
    partition: Partition,
    joint: Vec<JointDecomposition>,
    mx: LayeredMatrix,
    mz: LayeredMatrix,
    x_side: LayeredDecomposition,
    z_side: LayeredDecomposition,
    /// decomposition coordinate -> physical qubit
    physical: Vec<usize>,
}

/// Generators of the decreasing set: entry `j` of row `i` is `r^x_j - 1` for
/// `j ∈ X_i`, else `n_j - 1`. Rows with a negative entry generate nothing.
fn decreasing_generators(components: &[ComponentPair], x: &SubsetTuple) -> Vec<IndexTuple> {
    x.masks()
        .iter()
        .filter_map(|&mask| {
            components
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    if mask >> j & 1 == 1 {
                        c.rank_x.checked_sub(1)
                    } else {
                        Some(c.n() - 1)
                    }
                })
                .collect::<Option<Vec<_>>>()
                .map(IndexTuple)
        })
        .collect()
}

/// Generators of the increasing set: entry `j` of row `i` is `n_j - r^z_j` for
/// `j ∈ Z_i`, else `0`. Rows with an entry outside the box generate nothing.
fn increasing_generators(components: &[ComponentPair], z: &SubsetTuple) -> Vec<IndexTuple> {
    z.masks()
        .iter()
        .filter_map(|&mask| {
            components
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    if mask >> j & 1 == 1 {
                        let v = c.n() - c.rank_z;
                        (v < c.n()).then_some(v)
                    } else {
                        Some(0)
                    }
                })
                .collect::<Option<Vec<_>>>()
                .map(IndexTuple)
        })
        .collect()
}

/// Fails with the first `(i, j)` such that `X_i ∩ Z_j = ∅`.
pub fn check_intersecting(x: &SubsetTuple, z: &SubsetTuple) -> Result<()> {
    for (i, &a) in x.masks().iter().enumerate() {
        for (j, &b) in z.masks().iter().enumerate() {
            if a & b == 0 {
                return Err(Error::NonIntersecting { x: i, z: j });
            }
        }
    }
    Ok(())
}

/// Builds `CSS(H^x, H^z, X, Z)`.
pub fn build_css(components: Vec<ComponentPair>, x: SubsetTuple, z: SubsetTuple) -> Result<CssCode> {
    let m = components.len();
    if m == 0 {
        return Err(Error::ZeroCoordinates);
    }
    for s in [&x, &z] {
        if s.m() != m {
            return Err(Error::ComponentCount {
                expected: m,
                found: s.m(),
            });
        }
    }
    for (i, c) in components.iter().enumerate() {
        ComponentPair::check(&c.hx, &c.hz, Some(i))?;
    }
    check_intersecting(&x, &z)?;

    let shape = Shape::new(components.iter().map(|c| c.n()).collect());
    let sx = decreasing_generators(&components, &x);
    let sz = increasing_generators(&components, &z);
    let partition = complement_partition(&shape, &sx, &sz)?;

    let joint = components
        .iter()
        .map(|c| joint_decompose(&c.hx, &c.hz))
        .collect::<Result<Vec<_>>>()?;
    let hx: Vec<BitMatrix> = components.iter().map(|c| c.hx.clone()).collect();
    let hz: Vec<BitMatrix> = components.iter().map(|c| c.hz.clone()).collect();
    let mx = LayeredMatrix::new(&hx, &x)?;
    let mz = LayeredMatrix::new(&hz, &z)?;
    let a: Vec<_> = joint.iter().map(|j| j.a_factors()).collect();
    let b: Vec<_> = joint.iter().map(|j| j.b_factors()).collect();
    let x_side = layered_decompose(&a, &x)?;
    let z_side = layered_decompose(&b, &z)?;

    if x_side.d.support() != partition.down.members() {
        return Err(Error::SupportMismatch("X-side D support differs from the decreasing closure".into()));
    }
    if z_side.d.support() != partition.up.members() {
        return Err(Error::SupportMismatch("Z-side D support differs from the increasing closure".into()));
    }

    let mut physical = vec![0; shape.size()];
    for (p, j) in x_side.q.transpose().row_vectors().iter().map(|r| r.ones().next()).enumerate() {
        physical[p] = j.expect("Q is a permutation");
    }

    Ok(CssCode {
        components,
        x,
        z,
        shape,
        sx,
        sz,
        partition,
        joint,
        mx,
        mz,
        x_side,
        z_side,
        physical,
    })
}

impl CssCode {
    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn n(&self) -> usize {
        self.shape.size()
    }

    pub fn k(&self) -> usize {
        self.partition.middle.len()
    }

    pub fn components(&self) -> &[ComponentPair] {
        &self.components
    }

    pub fn x(&self) -> &SubsetTuple {
        &self.x
    }

    pub fn z(&self) -> &SubsetTuple {
        &self.z
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Rows of `S^x` that generate a nonempty set.
    pub fn sx_generators(&self) -> &[IndexTuple] {
        &self.sx
    }

    /// Rows of `S^z` that generate a nonempty set.
    pub fn sz_generators(&self) -> &[IndexTuple] {
        &self.sz
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn down(&self) -> &MonotoneSet {
        &self.partition.down
    }

    pub fn up(&self) -> &MonotoneSet {
        &self.partition.up
    }

    /// `K` as tuples, in lexicographic order.
    pub fn logical_indices(&self) -> Vec<IndexTuple> {
        self.partition.middle_tuples()
    }

    pub fn joint_decompositions(&self) -> &[JointDecomposition] {
        &self.joint
    }

    pub fn layered(&self, side: Pauli) -> &LayeredMatrix {
        match side {
            Pauli::X => &self.mx,
            Pauli::Z => &self.mz,
        }
    }

    pub fn decomposition(&self, side: Pauli) -> &LayeredDecomposition {
        match side {
            Pauli::X => &self.x_side,
            Pauli::Z => &self.z_side,
        }
    }

    /// Physical qubit of a decomposition coordinate.
    pub fn physical_qubit(&self, index: usize) -> usize {
        self.physical[index]
    }

    /// `(M(H^x, X), M(H^z, Z))`.
    pub fn check_matrices(&self) -> (&BitMatrix, &BitMatrix) {
        (&self.mx.materialized, &self.mz.materialized)
    }

    /// The set `T` whose GP selects independent generators on `side`.
    fn support(&self, side: Pauli) -> &MonotoneSet {
        match side {
            Pauli::X => &self.partition.down,
            Pauli::Z => &self.partition.up,
        }
    }

    /// `GP(T) · right · Q^T`: rows of the right factor at `T`, in physical labels.
    fn gp_rows(&self, side: Pauli, t: &[usize]) -> BitMatrix {
        let d = self.decomposition(side);
        d.r.select_rows(t).mul(&d.q.transpose()).expect("square factors")
    }

    /// `(x_part, z_part)` of the requested canonical generator family.
    pub fn canonical_generators(&self, kind: GeneratorKind) -> (BitMatrix, BitMatrix) {
        let n = self.n();
        let (tx, tz): (Vec<usize>, Vec<usize>) = match kind {
            GeneratorKind::Stabilizer => (self.partition.down.members().to_vec(), self.partition.up.members().to_vec()),
            GeneratorKind::Normalizer => (
                (0..n).filter(|&i| !self.partition.up.contains_index(i)).collect(),
                (0..n).filter(|&i| !self.partition.down.contains_index(i)).collect(),
            ),
            GeneratorKind::Logical => (self.partition.middle.clone(), self.partition.middle.clone()),
        };
        (self.gp_rows(Pauli::X, &tx), self.gp_rows(Pauli::Z, &tz))
    }

    pub fn parameters(&self) -> CodeParameters {
        let mut layers = Vec::new();
        let mut x_profile = BTreeMap::new();
        let mut z_profile = BTreeMap::new();
        for (side, profile) in [(Pauli::X, &mut x_profile), (Pauli::Z, &mut z_profile)] {
            let lm = self.layered(side);
            for (i, layer) in lm.layers.iter().enumerate() {
                let mut weights = Vec::new();
                let mut count = 0;
                for r in 0..layer.rows() {
                    let w = layer.row_weight(r);
                    if w == 0 {
                        continue;
                    }
                    count += 1;
                    *profile.entry(w).or_default() += 1;
                    if !weights.contains(&w) {
                        weights.push(w);
                    }
                }
                weights.sort_unstable();
                layers.push(LayerProfile {
                    pauli: side,
                    subset: lm.subsets.subset(i),
                    count,
                    weights,
                });
            }
        }
        CodeParameters {
            n: self.n(),
            k: self.k(),
            layers,
            x_profile,
            z_profile,
        }
    }

    /// Number of independent generators on `side`: `|down|` or `|up|`.
    pub fn independent_count(&self, side: Pauli) -> usize {
        self.support(side).len()
    }

    /// The unencoded syndrome `(R · Q^T · e^T)` restricted to `T`, where `T`
    /// is `down` for X checks and `up` for Z checks.
    pub fn raw_syndrome(&self, side: Pauli, error: &BitVector) -> Result<BitVector> {
        if error.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: error.len(),
            });
        }
        let gp = self.gp_rows(side, self.support(side).members());
        gp.mul_vec(error)
    }

    /// `P^T · L · pad(raw)`: the raw bits are placed at the rows of `D`'s
    /// support in the layer stack, zeros elsewhere. The result is indexed like
    /// the rows of the check matrix, so it equals `M · e^T` for the error that
    /// produced `raw`.
    pub fn syndrome_encode(&self, side: Pauli, raw: &BitVector) -> Result<BitVector> {
        let t = self.support(side).members();
        if raw.len() != t.len() {
            return Err(Error::LengthMismatch {
                expected: t.len(),
                found: raw.len(),
            });
        }
        let d = self.decomposition(side);
        let mut padded = BitVector::zeros(d.l.rows());
        for (k, &a) in t.iter().enumerate() {
            if raw.get(k) {
                padded.set(d.d.row_of(a).expect("support agrees with partition"), true);
            }
        }
        let encoded = d.l.mul_vec(&padded)?;
        d.p.transpose().mul_vec(&encoded)
    }

    pub fn syndrome_schedule(&self) -> SyndromeSchedule {
        schedule::build(self)
    }

    pub fn encoding_circuit(&self) -> CircuitSpec {
        circuit::build(self)
    }
}
