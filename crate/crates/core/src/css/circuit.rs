//! Encoding circuits: preparations followed by `m` commuting CNOT layers.
//!
//! Paulis are binary row vectors acted on from the right. A CNOT with control
//! `c` and target `t` maps the X part by "column `t` ^= column `c`" and the Z
//! part by "column `c` ^= column `t`".

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::CssCode;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::posets::Shape;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cnot {
    pub control: usize,
    pub target: usize,
}

/// The block-diagonal symplectic action `diag(X, Z)` of a CNOT circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticMatrix {
    pub x: BitMatrix,
    pub z: BitMatrix,
}

impl SymplecticMatrix {
    pub fn identity(n: usize) -> Self {
        SymplecticMatrix {
            x: BitMatrix::identity(n),
            z: BitMatrix::identity(n),
        }
    }

    pub fn mul(&self, other: &SymplecticMatrix) -> Result<SymplecticMatrix> {
        Ok(SymplecticMatrix {
            x: self.x.mul(&other.x)?,
            z: self.z.mul(&other.z)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitSpec {
    pub n: usize,
    /// Qubits prepared in |+>.
    pub prep_plus: Vec<usize>,
    /// Qubits prepared in |0>.
    pub prep_zero: Vec<usize>,
    /// Unprepared input qubits.
    pub data: Vec<usize>,
    /// Layer `i` acts along coordinate `i` only.
    pub layers: Vec<Vec<Cnot>>,
}

/// Applies gates in order to the X parts held in the rows of `x`.
pub fn apply_x(gates: &[Cnot], x: &mut BitMatrix) {
    for r in 0..x.rows() {
        for g in gates {
            if x.get(r, g.control) {
                x.flip(r, g.target);
            }
        }
    }
}

/// Applies gates in order to the Z parts held in the rows of `z`.
pub fn apply_z(gates: &[Cnot], z: &mut BitMatrix) {
    for r in 0..z.rows() {
        for g in gates {
            if z.get(r, g.target) {
                z.flip(r, g.control);
            }
        }
    }
}

impl CircuitSpec {
    pub fn gate_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// Symplectic matrix of one layer.
    pub fn layer_matrix(&self, layer: usize) -> SymplecticMatrix {
        let mut s = SymplecticMatrix::identity(self.n);
        apply_x(&self.layers[layer], &mut s.x);
        apply_z(&self.layers[layer], &mut s.z);
        s
    }

    /// Symplectic matrix of the whole circuit.
    pub fn total_matrix(&self) -> SymplecticMatrix {
        let mut s = SymplecticMatrix::identity(self.n);
        for layer in &self.layers {
            apply_x(layer, &mut s.x);
            apply_z(layer, &mut s.z);
        }
        s
    }

    /// Pushes the initial stabilizer (X on `prep_plus`, Z on `prep_zero`)
    /// through all layers. Returns `(x_rows, z_rows)`.
    pub fn pushforward(&self) -> (BitMatrix, BitMatrix) {
        let mut x = BitMatrix::zeros(self.prep_plus.len(), self.n);
        for (r, &q) in self.prep_plus.iter().enumerate() {
            x.set(r, q, true);
        }
        let mut z = BitMatrix::zeros(self.prep_zero.len(), self.n);
        for (r, &q) in self.prep_zero.iter().enumerate() {
            z.set(r, q, true);
        }
        for layer in &self.layers {
            apply_x(layer, &mut x);
            apply_z(layer, &mut z);
        }
        (x, z)
    }

    /// One instruction per line: `PREP+ q`, `PREP0 q`, `LAYER i`, `CNOT c t`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for q in &self.prep_plus {
            writeln!(out, "PREP+ {q}").unwrap();
        }
        for q in &self.prep_zero {
            writeln!(out, "PREP0 {q}").unwrap();
        }
        for (i, layer) in self.layers.iter().enumerate() {
            writeln!(out, "LAYER {i}").unwrap();
            for g in layer {
                writeln!(out, "CNOT {} {}", g.control, g.target).unwrap();
            }
        }
        out
    }

    /// Parses [`CircuitSpec::to_text`] output for an `n`-qubit register.
    pub fn from_text(n: usize, text: &str) -> Result<CircuitSpec> {
        let mut spec = CircuitSpec {
            n,
            prep_plus: Vec::new(),
            prep_zero: Vec::new(),
            data: Vec::new(),
            layers: Vec::new(),
        };
        let num = |s: Option<&str>| -> Result<usize> {
            let s = s.ok_or_else(|| Error::Parse("missing operand".into()))?;
            let v: usize = s.parse().map_err(|_| Error::Parse(format!("bad operand {s:?}")))?;
            if v >= n {
                return Err(Error::Parse(format!("qubit {v} out of range")));
            }
            Ok(v)
        };
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("PREP+") => spec.prep_plus.push(num(parts.next())?),
                Some("PREP0") => spec.prep_zero.push(num(parts.next())?),
                Some("LAYER") => spec.layers.push(Vec::new()),
                Some("CNOT") => {
                    let control = num(parts.next())?;
                    let target = num(parts.next())?;
                    spec.layers
                        .last_mut()
                        .ok_or_else(|| Error::Parse("CNOT before first LAYER".into()))?
                        .push(Cnot { control, target });
                }
                _ => return Err(Error::Parse(format!("unknown instruction {line:?}"))),
            }
        }
        let mut prepared = vec![false; n];
        for &q in spec.prep_plus.iter().chain(&spec.prep_zero) {
            prepared[q] = true;
        }
        spec.data = (0..n).filter(|&q| !prepared[q]).collect();
        Ok(spec)
    }
}

/// Elementary transvections `(c, t)` realizing a unit upper triangular `r`,
/// in the order they must be applied: applying `E_{c,t} = I + e_c e_t^T` for
/// each pair in sequence to the identity yields `r`.
pub fn transvections(r: &BitMatrix) -> Vec<(usize, usize)> {
    debug_assert!(r.is_upper_unit_triangular());
    // Column-by-column elimination reduces r to I; the realizing sequence is
    // the elimination sequence reversed.
    let mut work = r.clone();
    let mut ops = Vec::new();
    for t in 0..work.cols() {
        for c in 0..t {
            if work.get(c, t) {
                for row in 0..work.rows() {
                    if work.get(row, c) {
                        work.flip(row, t);
                    }
                }
                ops.push((c, t));
            }
        }
    }
    debug_assert!(work.is_identity());
    ops.reverse();
    ops
}

pub(super) fn build(code: &CssCode) -> CircuitSpec {
    let shape = code.shape();
    let m = code.m();
    let n = code.n();
    let phys = |i: usize| code.physical_qubit(i);
    let mut layers = Vec::with_capacity(m);
    for (i, jd) in code.joint_decompositions().iter().enumerate() {
        let ops = transvections(&jd.r);
        let others: Vec<usize> = (0..m).filter(|&j| j != i).collect();
        let outer = Shape::new(others.iter().map(|&j| shape.dims()[j]).collect());
        let mut gates = Vec::with_capacity(ops.len() * outer.size());
        let mut full = vec![0; m];
        for y in outer.tuples() {
            for (&j, &v) in others.iter().zip(y.entries()) {
                full[j] = v;
            }
            for &(c, t) in &ops {
                full[i] = c;
                let control = phys(shape.linearize(&full));
                full[i] = t;
                let target = phys(shape.linearize(&full));
                gates.push(Cnot { control, target });
            }
        }
        layers.push(gates);
    }
    let mut prep_plus: Vec<usize> = code.down().members().iter().map(|&i| phys(i)).collect();
    let mut prep_zero: Vec<usize> = code.up().members().iter().map(|&i| phys(i)).collect();
    let mut data: Vec<usize> = code.partition().middle.iter().map(|&i| phys(i)).collect();
    prep_plus.sort_unstable();
    prep_zero.sort_unstable();
    data.sort_unstable();
    debug_assert_eq!(prep_plus.len() + prep_zero.len() + data.len(), n);
    CircuitSpec {
        n,
        prep_plus,
        prep_zero,
        data,
        layers,
    }
}
