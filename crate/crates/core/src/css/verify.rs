//! Structural self-checks for constructed codes.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{build_css, check_intersecting, CssCode, GeneratorKind, Pauli};
use crate::gf2::{BitMatrix, BitVector};
use crate::posets::SubsetTuple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn record(&mut self, name: &str, outcome: Result<(), String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed: outcome.is_ok(),
            detail: outcome.err(),
        });
    }
}

fn orthogonality(components: &[(BitMatrix, BitMatrix)]) -> Result<(), String> {
    for (i, (hx, hz)) in components.iter().enumerate() {
        if hx.cols() != hz.cols() {
            return Err(format!("component {i}: {} vs {} columns", hx.cols(), hz.cols()));
        }
        let p = hx.mul(&hz.transpose()).map_err(|e| e.to_string())?;
        if let Some((r, c)) = (0..p.rows()).find_map(|r| p.row_ones(r).next().map(|c| (r, c))) {
            return Err(format!("component {i}: row {r} of H^x meets row {c} of H^z oddly"));
        }
    }
    Ok(())
}

/// Checks a code description before construction, then every structural
/// invariant of the built code. Precondition failures are reported instead
/// of aborting.
pub fn verify_spec(components: &[(BitMatrix, BitMatrix)], x: &SubsetTuple, z: &SubsetTuple) -> VerifyReport {
    let mut report = VerifyReport::default();
    let ortho = orthogonality(components);
    let inter = check_intersecting(x, z).map_err(|e| e.to_string());
    let ok = ortho.is_ok() && inter.is_ok();
    report.record("orthogonality", ortho);
    report.record("intersecting", inter);
    if !ok {
        return report;
    }
    let pairs = components
        .iter()
        .map(|(hx, hz)| super::ComponentPair::new(hx.clone(), hz.clone()))
        .collect::<crate::Result<Vec<_>>>();
    match pairs.and_then(|p| build_css(p, x.clone(), z.clone())) {
        Err(e) => report.record("construction", Err(e.to_string())),
        Ok(code) => {
            report.record("construction", Ok(()));
            report.checks.extend(verify_code(&code).checks.into_iter().skip(2));
        }
    }
    report
}

fn cross_commutation(code: &CssCode) -> Result<(), String> {
    let mx = code.layered(Pauli::X);
    let mz = code.layered(Pauli::Z);
    for (i, a) in mx.layers.iter().enumerate() {
        for (j, b) in mz.layers.iter().enumerate() {
            if !a.mul(&b.transpose()).map_err(|e| e.to_string())?.is_zero() {
                return Err(format!("X layer {i} and Z layer {j} anticommute"));
            }
        }
    }
    Ok(())
}

fn decomposition(code: &CssCode, side: Pauli) -> Result<(), String> {
    let d = code.decomposition(side);
    let m = &code.layered(side).materialized;
    let lhs = d.p.mul(m).and_then(|x| x.mul(&d.q)).map_err(|e| e.to_string())?;
    let rhs = d.l.mul(&d.d.materialize()).and_then(|x| x.mul(&d.r)).map_err(|e| e.to_string())?;
    if lhs != rhs {
        return Err("P M Q != L D R".into());
    }
    if d.l.invert().is_err() {
        return Err("L is singular".into());
    }
    let expected = match side {
        Pauli::X => code.down().members(),
        Pauli::Z => code.up().members(),
    };
    if d.d.support() != expected {
        return Err("D support differs from the closure".into());
    }
    Ok(())
}

fn span(code: &CssCode, side: Pauli) -> Result<(), String> {
    let (gx, gz) = code.canonical_generators(GeneratorKind::Stabilizer);
    let (g, m) = match side {
        Pauli::X => (gx, &code.layered(Pauli::X).materialized),
        Pauli::Z => (gz, &code.layered(Pauli::Z).materialized),
    };
    if g.rank() != g.rows() {
        return Err("canonical generators are dependent".into());
    }
    if !m.same_row_space(&g).map_err(|e| e.to_string())? {
        return Err("row spaces differ".into());
    }
    Ok(())
}

fn counting(code: &CssCode) -> Result<(), String> {
    let (mx, mz) = code.check_matrices();
    let (rx, rz) = (mx.rank(), mz.rank());
    let n = code.n();
    let (down, up, k) = (code.down().len(), code.up().len(), code.k());
    if rx != down || rz != up {
        return Err(format!("ranks ({rx}, {rz}) vs closure sizes ({down}, {up})"));
    }
    if n - rx - rz != k {
        return Err(format!("n - rank = {} but |K| = {k}", n - rx - rz));
    }
    let (nx, nz) = code.canonical_generators(GeneratorKind::Normalizer);
    let normalizer = nx.rows() + nz.rows();
    let stabilizer = down + up;
    if stabilizer + normalizer != 2 * n || normalizer != stabilizer + 2 * k {
        return Err(format!("stabilizer {stabilizer}, normalizer {normalizer}, k {k}, n {n}"));
    }
    Ok(())
}

fn symplectic(code: &CssCode) -> Result<(), String> {
    let (sx, sz) = code.canonical_generators(GeneratorKind::Stabilizer);
    if !sx.mul(&sz.transpose()).map_err(|e| e.to_string())?.is_zero() {
        return Err("stabilizer generators anticommute".into());
    }
    let (nx, nz) = code.canonical_generators(GeneratorKind::Normalizer);
    if !nx.mul(&sz.transpose()).map_err(|e| e.to_string())?.is_zero() || !sx.mul(&nz.transpose()).map_err(|e| e.to_string())?.is_zero() {
        return Err("normalizer element anticommutes with the stabilizer".into());
    }
    Ok(())
}

fn logical_pairing(code: &CssCode) -> Result<(), String> {
    let (lx, lz) = code.canonical_generators(GeneratorKind::Logical);
    if !lx.mul(&lz.transpose()).map_err(|e| e.to_string())?.is_identity() {
        return Err("logical pairing matrix is not the identity".into());
    }
    Ok(())
}

fn encoding(code: &CssCode) -> Result<(), String> {
    let circuit = code.encoding_circuit();
    let shape = code.shape();
    for (i, layer) in circuit.layers.iter().enumerate() {
        for g in layer {
            let (a, b) = (shape.delinearize(g.control), shape.delinearize(g.target));
            let differ: Vec<usize> = (0..code.m()).filter(|&j| a.entries()[j] != b.entries()[j]).collect();
            if differ != [i] {
                return Err(format!("layer {i} gate {g:?} acts across coordinates {differ:?}"));
            }
        }
    }
    let (px, pz) = circuit.pushforward();
    let (sx, sz) = code.canonical_generators(GeneratorKind::Stabilizer);
    if px != sx || pz != sz {
        let same = |a: &BitMatrix, b: &BitMatrix| a.same_row_space(b).unwrap_or(false);
        if !same(&px, &sx) || !same(&pz, &sz) {
            return Err("pushforward does not span the stabilizer".into());
        }
    }
    let mats: Vec<_> = (0..circuit.layers.len()).map(|i| circuit.layer_matrix(i)).collect();
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let ab = mats[i].mul(&mats[j]).map_err(|e| e.to_string())?;
            let ba = mats[j].mul(&mats[i]).map_err(|e| e.to_string())?;
            if ab != ba {
                return Err(format!("layers {i} and {j} do not commute"));
            }
        }
    }
    Ok(())
}

fn sorted_rows(m: &BitMatrix) -> Vec<Vec<usize>> {
    let mut rows: Vec<Vec<usize>> = (0..m.rows()).map(|r| m.row_ones(r).collect()).filter(|r: &Vec<usize>| !r.is_empty()).collect();
    rows.sort();
    rows
}

fn schedule(code: &CssCode) -> Result<(), String> {
    let s = code.syndrome_schedule();
    let n = code.n();
    if let Err((layer, q)) = s.check_disjoint(n) {
        return Err(format!("layer {layer}: qubit {q} shared between groups"));
    }
    let layers = code.layered(Pauli::X).layers.iter().chain(&code.layered(Pauli::Z).layers);
    for (i, m) in layers.enumerate() {
        if sorted_rows(&s.layer_matrix(i, n)) != sorted_rows(m) {
            return Err(format!("layer {i} measurements differ from the check rows"));
        }
    }
    let mut counts: BTreeMap<Pauli, usize> = BTreeMap::new();
    for l in &s.layers {
        *counts.entry(l.pauli).or_default() += 1;
    }
    if counts.get(&Pauli::X).copied().unwrap_or(0) != code.x().len() || counts.get(&Pauli::Z).copied().unwrap_or(0) != code.z().len() {
        return Err("layer counts differ from the subset tuples".into());
    }
    Ok(())
}

fn syndrome_identity(code: &CssCode) -> Result<(), String> {
    let (mx, mz) = code.check_matrices();
    let n = code.n();
    for q in 0..n {
        let e = BitVector::from_indices(n, [q]);
        for (side, m) in [(Pauli::X, mx), (Pauli::Z, mz)] {
            let raw = code.raw_syndrome(side, &e).map_err(|e| e.to_string())?;
            let enc = code.syndrome_encode(side, &raw).map_err(|e| e.to_string())?;
            if enc != m.mul_vec(&e).map_err(|e| e.to_string())? {
                return Err(format!("{side:?} side, error on qubit {q}"));
            }
        }
    }
    Ok(())
}

/// Runs every structural invariant on a constructed code.
pub fn verify_code(code: &CssCode) -> VerifyReport {
    let mut report = VerifyReport::default();
    let comps: Vec<_> = code.components().iter().map(|c| (c.hx().clone(), c.hz().clone())).collect();
    report.record("orthogonality", orthogonality(&comps));
    report.record("intersecting", check_intersecting(code.x(), code.z()).map_err(|e| e.to_string()));
    report.record("cross_commutation", cross_commutation(code));
    report.record("decomposition_x", decomposition(code, Pauli::X));
    report.record("decomposition_z", decomposition(code, Pauli::Z));
    report.record("span_x", span(code, Pauli::X));
    report.record("span_z", span(code, Pauli::Z));
    report.record("counting", counting(code));
    report.record("symplectic", symplectic(code));
    report.record("logical_pairing", logical_pairing(code));
    report.record("encoding_circuit", encoding(code));
    report.record("syndrome_schedule", schedule(code));
    report.record("syndrome_identity", syndrome_identity(code));
    report
}
