//! Layer-by-layer syndrome measurement schedule.

use serde::{Deserialize, Serialize};

use super::{CssCode, Pauli};
use crate::gf2::BitMatrix;
use crate::posets::Shape;

/// One parity measurement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measurement {
    /// Qubit group: the flat index of the coordinates outside the layer's subset.
    pub group: usize,
    /// Physical qubit indices, ascending.
    pub qubits: Vec<usize>,
}

/// All measurements belonging to one subset `X_i` (or `Z_j`).
///
/// Measurements in different groups act on disjoint qubits and run in
/// parallel. When the inner product of component matrices has several rows,
/// one group carries several (overlapping) measurements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleLayer {
    pub pauli: Pauli,
    pub subset: Vec<usize>,
    pub measurements: Vec<Measurement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeSchedule {
    pub layers: Vec<ScheduleLayer>,
}

impl SyndromeSchedule {
    pub fn measurement_count(&self) -> usize {
        self.layers.iter().map(|l| l.measurements.len()).sum()
    }

    /// Checks that measurements from different groups of a layer never share
    /// a qubit. Returns the offending `(layer, qubit)` on failure.
    pub fn check_disjoint(&self, n: usize) -> Result<(), (usize, usize)> {
        for (li, layer) in self.layers.iter().enumerate() {
            let mut owner = vec![usize::MAX; n];
            for m in &layer.measurements {
                for &q in &m.qubits {
                    if owner[q] != usize::MAX && owner[q] != m.group {
                        return Err((li, q));
                    }
                    owner[q] = m.group;
                }
            }
        }
        Ok(())
    }

    /// Measurements of one layer as a matrix on `n` qubits.
    pub fn layer_matrix(&self, layer: usize, n: usize) -> BitMatrix {
        let ms = &self.layers[layer].measurements;
        let mut out = BitMatrix::zeros(ms.len(), n);
        for (r, m) in ms.iter().enumerate() {
            for &q in &m.qubits {
                out.set(r, q, true);
            }
        }
        out
    }
}

pub(super) fn build(code: &CssCode) -> SyndromeSchedule {
    let shape = code.shape();
    let m = code.m();
    let mut layers = Vec::new();
    for side in [Pauli::X, Pauli::Z] {
        let subsets = match side {
            Pauli::X => code.x(),
            Pauli::Z => code.z(),
        };
        for &mask in subsets.masks() {
            let inside: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
            let outside: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 0).collect();
            let inner_shape = Shape::new(inside.iter().map(|&j| shape.dims()[j]).collect());
            let outer_shape = Shape::new(outside.iter().map(|&j| shape.dims()[j]).collect());
            let inner = BitMatrix::kron_all(inside.iter().map(|&j| match side {
                Pauli::X => code.components()[j].hx(),
                Pauli::Z => code.components()[j].hz(),
            }));
            let mut measurements = Vec::new();
            let mut full = vec![0; m];
            for group in 0..outer_shape.size() {
                let y = outer_shape.delinearize(group);
                for (&j, &v) in outside.iter().zip(y.entries()) {
                    full[j] = v;
                }
                for row in 0..inner.rows() {
                    let mut qubits: Vec<usize> = inner
                        .row_ones(row)
                        .map(|c| {
                            let t = inner_shape.delinearize(c);
                            for (&j, &v) in inside.iter().zip(t.entries()) {
                                full[j] = v;
                            }
                            shape.linearize(&full)
                        })
                        .collect();
                    if qubits.is_empty() {
                        continue;
                    }
                    qubits.sort_unstable();
                    measurements.push(Measurement { group, qubits });
                }
            }
            layers.push(ScheduleLayer {
                pauli: side,
                subset: inside,
                measurements,
            });
        }
    }
    SyndromeSchedule { layers }
}
