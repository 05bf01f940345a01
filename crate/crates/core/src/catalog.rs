//! Named example codes with their published parameters, and a verifier that
//! rebuilds each one and checks every stored claim.
//!
//! All entries use `[1 1]` components, so `n = 2^m`. When a source lists a
//! set of subsets rather than a tuple, the subsets are ordered
//! lexicographically by their sorted element lists.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::css::{build_css, verify_code, verify_spec, CodeSpec, ComponentPair, CssCode, VerifyReport};
use crate::error::Result;
use crate::grm::distances_from_k;
use crate::oracle::{css_distances_bruteforce, OracleOutcome, DEFAULT_DIM_CAP};
use crate::posets::{IndexTuple, SubsetTuple};

/// Parameters as stated by the source. Optional fields are only present when
/// the source states them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub n: usize,
    pub k: usize,
    pub d_x: u64,
    pub d_z: u64,
    /// Measurement weight -> count, both sides together.
    pub profile: BTreeMap<usize, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_profile: Option<BTreeMap<usize, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_profile: Option<BTreeMap<usize, usize>>,
    /// Logical index set as subsets of `[m]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logical_set: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub m: usize,
    pub x: Vec<Vec<usize>>,
    pub z: Vec<Vec<usize>>,
    pub claims: Claims,
}

impl CatalogEntry {
    pub fn x_tuple(&self) -> Result<SubsetTuple> {
        SubsetTuple::from_lists(self.m, &self.x)
    }

    pub fn z_tuple(&self) -> Result<SubsetTuple> {
        SubsetTuple::from_lists(self.m, &self.z)
    }

    pub fn spec(&self) -> CodeSpec {
        CodeSpec {
            components: None,
            m: self.m,
            x: self.x.clone(),
            z: self.z.clone(),
        }
    }

    pub fn build(&self) -> Result<CssCode> {
        build_css(vec![ComponentPair::repetition(); self.m], self.x_tuple()?, self.z_tuple()?)
    }
}

fn digits(items: &[&str]) -> Vec<Vec<usize>> {
    items
        .iter()
        .map(|s| s.bytes().map(|b| (b - b'0') as usize).collect())
        .collect()
}

/// Sorted element lists, sorted lexicographically.
fn as_set(items: &[&str]) -> Vec<Vec<usize>> {
    let mut lists = digits(items);
    for l in &mut lists {
        l.sort_unstable();
    }
    lists.sort();
    lists
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn weight_layer(m: usize, w: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u64..1 << m)
        .filter(|v| v.count_ones() as usize == w)
        .map(|v| (0..m).filter(|&i| v >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

fn profile(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    let mut p = BTreeMap::new();
    for &(w, c) in pairs {
        if c > 0 {
            *p.entry(w).or_insert(0) += c;
        }
    }
    p
}

#[allow(clippy::too_many_arguments)]
fn symmetric(name: &str, description: &str, m: usize, x: Vec<Vec<usize>>, z: Vec<Vec<usize>>, k: usize, d: u64, count: usize, weight: usize, logical: Option<&[&str]>) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        description: description.into(),
        m,
        x,
        z,
        claims: Claims {
            n: 1 << m,
            k,
            d_x: d,
            d_z: d,
            profile: profile(&[(weight, count)]),
            x_profile: None,
            z_profile: None,
            logical_set: logical.map(as_set),
        },
    }
}

/// Standard Reed-Muller entry: `X` is the weight-`(m-r+1)` layer, `Z` the
/// weight-`(r+1)` layer; `[[2^m, C(m,r)]]` with distances `(2^{m-r}, 2^r)`.
pub fn standard_rm(r: usize, m: usize) -> CatalogEntry {
    assert!(1 <= r && r < m, "need 1 <= r < m");
    let x_count = binom(m, r - 1) << (r - 1);
    let x_weight = 1 << (m - r + 1);
    let z_count = binom(m, r + 1) << (m - r - 1);
    let z_weight = 1 << (r + 1);
    CatalogEntry {
        name: format!("rm_{r}_{m}"),
        description: format!("standard Reed-Muller family, r = {r}, m = {m}"),
        m,
        x: weight_layer(m, m - r + 1),
        z: weight_layer(m, r + 1),
        claims: Claims {
            n: 1 << m,
            k: binom(m, r),
            d_x: 1 << (m - r),
            d_z: 1 << r,
            profile: profile(&[(x_weight, x_count), (z_weight, z_count)]),
            x_profile: Some(profile(&[(x_weight, x_count)])),
            z_profile: Some(profile(&[(z_weight, z_count)])),
            logical_set: Some(weight_layer(m, r)),
        },
    }
}

/// Highly asymmetric family: `X = ({0})`, `Z = ({0,i} : i = 1..m-1)`;
/// `[[2^m, 1]]` with distances `(2^{m-1}, 2)`.
pub fn asymmetric_family(m: usize) -> CatalogEntry {
    assert!(m >= 3, "family starts at m = 3");
    let x_count = 1 << (m - 1);
    let z_count = (m - 1) << (m - 2);
    CatalogEntry {
        name: format!("asym_m{m}"),
        description: format!("asymmetric family with distances (2^(m-1), 2), m = {m}"),
        m,
        x: vec![vec![0]],
        z: (1..m).map(|i| vec![0, i]).collect(),
        claims: Claims {
            n: 1 << m,
            k: 1,
            d_x: 1 << (m - 1),
            d_z: 2,
            profile: profile(&[(2, x_count), (4, z_count)]),
            x_profile: Some(profile(&[(2, x_count)])),
            z_profile: Some(profile(&[(4, z_count)])),
            logical_set: Some(vec![vec![0]]),
        },
    }
}

/// Every named example, ordered by name.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = vec![
        symmetric(
            "spc2d",
            "2D product of [4,3] single parity check codes",
            4,
            digits(&["01", "23"]),
            digits(&["02", "13"]),
            2,
            4,
            16,
            4,
            Some(&["12", "03"]),
        ),
        symmetric(
            "spc3d",
            "3D product of [8,7] single parity check codes",
            9,
            digits(&["012", "345", "678"]),
            digits(&["036", "147", "258"]),
            174,
            8,
            384,
            8,
            None,
        ),
        symmetric("cyc32", "cyclic pattern, m = 5", 5, digits(&["013", "124", "230"]), digits(&["013", "124", "230"]), 14, 4, 24, 8, None),
        symmetric(
            "cyc64",
            "cyclic pattern, m = 6",
            6,
            as_set(&["013", "124", "235", "340", "451", "502"]),
            as_set(&["013", "124", "235", "340", "451", "502"]),
            8,
            8,
            96,
            8,
            Some(&["012", "123", "234", "345", "450", "501", "024", "135"]),
        ),
        symmetric(
            "cyc128",
            "cyclic pattern, m = 7",
            7,
            as_set(&["013", "124", "235", "346", "450", "561"]),
            as_set(&["013", "124", "235", "346", "450", "561"]),
            10,
            8,
            192,
            8,
            Some(&["345", "145", "135", "134", "1345", "026", "0256", "0246", "0236", "0126"]),
        ),
        symmetric(
            "x128",
            "block size 128 with 24 logical qubits",
            7,
            as_set(&["012", "013", "234", "356", "456"]),
            as_set(&["143", "146", "360", "325", "025"]),
            24,
            8,
            160,
            8,
            None,
        ),
        symmetric(
            "sym256",
            "distance 16 from weight-8 measurements, m = 8",
            8,
            as_set(&["012", "123", "234", "345", "456", "567", "670", "701"]),
            as_set(&["136", "247", "350", "461", "572", "603", "714", "025"]),
            6,
            16,
            512,
            8,
            Some(&["2367", "1357", "1256", "0347", "0246", "0145"]),
        ),
        symmetric(
            "sym512",
            "rows, columns and diagonals of a 3x3 square, m = 9",
            9,
            as_set(&["012", "345", "678", "048", "156", "237"]),
            as_set(&["036", "147", "258", "246", "138", "057"]),
            18,
            16,
            768,
            8,
            None,
        ),
        CatalogEntry {
            name: "asym32".into(),
            description: "asymmetric block size 32; Z stored as listed, repeated subset included".into(),
            m: 5,
            x: as_set(&["01", "234"]),
            z: as_set(&["02", "13", "04", "14", "13"]),
            claims: Claims {
                n: 32,
                k: 2,
                d_x: 8,
                d_z: 4,
                profile: profile(&[(4, 48), (8, 4)]),
                x_profile: None,
                z_profile: None,
                logical_set: Some(as_set(&["03", "12"])),
            },
        },
        CatalogEntry {
            name: "asym128".into(),
            description: "asymmetric block size 128".into(),
            m: 7,
            x: as_set(&["013", "124", "235", "346", "450", "561", "602", "134"]),
            z: as_set(&["013", "124", "235", "346", "450", "561"]),
            claims: Claims {
                n: 128,
                k: 3,
                d_x: 8,
                d_z: 16,
                profile: profile(&[(8, 224)]),
                x_profile: None,
                z_profile: None,
                logical_set: Some(as_set(&["0246", "0236", "0126"])),
            },
        },
    ];
    for m in 2..=7 {
        for r in 1..m {
            out.push(standard_rm(r, m));
        }
    }
    for m in 3..=9 {
        out.push(asymmetric_family(m));
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

pub fn to_json(entries: &[CatalogEntry]) -> String {
    serde_json::to_string_pretty(entries).expect("plain data")
}

pub fn from_json(text: &str) -> Result<Vec<CatalogEntry>> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleStatus {
    /// Brute force ran on both sides and agrees with the formula.
    Verified,
    /// The oracle was not run.
    FormulaOnly,
    /// At least one side exceeded the dimension cap.
    Refused,
    /// Brute force disagrees with the formula.
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub status: OracleStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_x: Option<OracleOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_z: Option<OracleOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub claimed: Value,
    pub computed: Value,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Computed {
    pub n: usize,
    pub k: usize,
    pub d_x: Option<u64>,
    pub d_z: Option<u64>,
    pub profile: BTreeMap<usize, usize>,
    pub x_profile: BTreeMap<usize, usize>,
    pub z_profile: BTreeMap<usize, usize>,
    pub logical_set: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub computed: Option<Computed>,
    pub claims: Vec<ClaimCheck>,
    pub oracle: OracleReport,
    pub structural: VerifyReport,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.computed.is_some() && self.claims.iter().all(|c| c.passed) && self.structural.passed() && self.oracle.status != OracleStatus::Mismatch
    }

    pub fn claim(&self, name: &str) -> Option<&ClaimCheck> {
        self.claims.iter().find(|c| c.claim == name)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub dim_cap: usize,
    pub threads: usize,
    pub oracle: bool,
    pub structural: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            dim_cap: DEFAULT_DIM_CAP,
            threads: 1,
            oracle: true,
            structural: true,
        }
    }
}

fn subsets_of(k: &[IndexTuple]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = k
        .iter()
        .map(|t| t.entries().iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i).collect())
        .collect();
    out.sort();
    out
}

fn sorted_set(lists: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = lists
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l
        })
        .collect();
    out.sort();
    out
}

/// Compares oracle outcomes with formula values.
pub fn oracle_status(d_x: &OracleOutcome, d_z: &OracleOutcome, formula: (Option<u64>, Option<u64>)) -> OracleStatus {
    if d_x.is_refused() || d_z.is_refused() {
        return OracleStatus::Refused;
    }
    let agrees = |o: &OracleOutcome, f: Option<u64>| o.weight().map(|w| w as u64) == f;
    if agrees(d_x, formula.0) && agrees(d_z, formula.1) {
        OracleStatus::Verified
    } else {
        OracleStatus::Mismatch
    }
}

/// Rebuilds the entry and checks every claim, the structural invariants, and
/// (when enumerable) the distances by brute force.
pub fn verify_entry(e: &CatalogEntry, opts: &VerifyOptions) -> VerificationReport {
    let mut notes = Vec::new();
    duplicate_notes(e.x_tuple().ok().as_ref(), e.z_tuple().ok().as_ref(), &mut notes);
    let code = match e.build() {
        Ok(c) => c,
        Err(err) => {
            notes.push(format!("construction failed: {err}"));
            return VerificationReport {
                name: e.name.clone(),
                computed: None,
                claims: Vec::new(),
                oracle: OracleReport {
                    status: OracleStatus::FormulaOnly,
                    d_x: None,
                    d_z: None,
                },
                structural: VerifyReport::default(),
                notes,
            };
        }
    };
    let params = code.parameters();
    let k_tuples = code.logical_indices();
    let distances = distances_from_k(e.m, &k_tuples).ok();
    let computed = Computed {
        n: params.n,
        k: params.k,
        d_x: distances.map(|d| d.0),
        d_z: distances.map(|d| d.1),
        profile: params.total_profile(),
        x_profile: params.x_profile.clone(),
        z_profile: params.z_profile.clone(),
        logical_set: subsets_of(&k_tuples),
    };

    let c = &e.claims;
    let mut claims = Vec::new();
    let mut check = |name: &str, claimed: Value, got: Value| {
        let passed = claimed == got;
        claims.push(ClaimCheck {
            claim: name.into(),
            claimed,
            computed: got,
            passed,
        });
    };
    check("n", json!(c.n), json!(computed.n));
    check("k", json!(c.k), json!(computed.k));
    check("d_x", json!(c.d_x), json!(computed.d_x));
    check("d_z", json!(c.d_z), json!(computed.d_z));
    check("profile", json!(c.profile), json!(computed.profile));
    if let Some(p) = &c.x_profile {
        check("x_profile", json!(p), json!(computed.x_profile));
    }
    if let Some(p) = &c.z_profile {
        check("z_profile", json!(p), json!(computed.z_profile));
    }
    if let Some(k) = &c.logical_set {
        check("logical_set", json!(sorted_set(k)), json!(computed.logical_set));
    }

    let oracle = oracle_report(&code, (computed.d_x, computed.d_z), opts, &mut notes);

    let structural = if opts.structural { verify_code(&code) } else { VerifyReport::default() };
    VerificationReport {
        name: e.name.clone(),
        computed: Some(computed),
        claims,
        oracle,
        structural,
        notes,
    }
}

fn oracle_report(code: &CssCode, formula: (Option<u64>, Option<u64>), opts: &VerifyOptions, notes: &mut Vec<String>) -> OracleReport {
    if !opts.oracle {
        return OracleReport {
            status: OracleStatus::FormulaOnly,
            d_x: None,
            d_z: None,
        };
    }
    let (hx, hz) = code.check_matrices();
    match css_distances_bruteforce(hx, hz, opts.dim_cap, opts.threads) {
        Ok(b) => OracleReport {
            status: oracle_status(&b.d_x, &b.d_z, formula),
            d_x: Some(b.d_x),
            d_z: Some(b.d_z),
        },
        Err(err) => {
            notes.push(format!("oracle failed: {err}"));
            OracleReport {
                status: OracleStatus::Mismatch,
                d_x: None,
                d_z: None,
            }
        }
    }
}

fn duplicate_notes(x: Option<&SubsetTuple>, z: Option<&SubsetTuple>, notes: &mut Vec<String>) {
    for (label, t) in [("Z", z), ("X", x)] {
        if let Some(t) = t {
            for (i, j) in t.duplicates() {
                notes.push(format!("{label} lists the subset {:?} twice (positions {i} and {j}); both are kept as separate layers", t.subset(i)));
            }
        }
    }
}

/// Verifies a free-standing code description, which carries no claims.
///
/// The distance formula only covers `[1 1]` components; for anything else the
/// oracle is the sole source of distances and an exact oracle answer counts
/// as verified.
pub fn verify_code_spec(name: &str, spec: &CodeSpec, opts: &VerifyOptions) -> VerificationReport {
    let mut notes = Vec::new();
    let (x, z) = (spec.x_tuple(), spec.z_tuple());
    duplicate_notes(x.as_ref().ok(), z.as_ref().ok(), &mut notes);
    let structural = match (spec.component_matrices(), &x, &z) {
        (Ok(mats), Ok(x), Ok(z)) if opts.structural => verify_spec(&mats, x, z),
        _ => VerifyReport::default(),
    };
    let failed = |notes: Vec<String>, structural: VerifyReport| VerificationReport {
        name: name.into(),
        computed: None,
        claims: Vec::new(),
        oracle: OracleReport {
            status: OracleStatus::FormulaOnly,
            d_x: None,
            d_z: None,
        },
        structural,
        notes,
    };
    let code = match spec.build() {
        Ok(c) => c,
        Err(err) => {
            notes.push(format!("construction failed: {err}"));
            return failed(notes, structural);
        }
    };
    let params = code.parameters();
    let k_tuples = code.logical_indices();
    let binary = code.components().iter().all(|c| *c == ComponentPair::repetition());
    let distances = if binary { distances_from_k(spec.m, &k_tuples).ok() } else { None };
    if !binary {
        notes.push("components are not all [1 1]; distances come from the oracle only".into());
    }
    let mut oracle = oracle_report(&code, distances.unzip(), opts, &mut notes);
    if !binary && oracle.status == OracleStatus::Mismatch && oracle.d_x.is_some() {
        oracle.status = OracleStatus::Verified;
    }
    let computed = Computed {
        n: params.n,
        k: params.k,
        d_x: distances.map(|d| d.0).or(oracle.d_x.and_then(|o| o.weight()).map(|w| w as u64)),
        d_z: distances.map(|d| d.1).or(oracle.d_z.and_then(|o| o.weight()).map(|w| w as u64)),
        profile: params.total_profile(),
        x_profile: params.x_profile.clone(),
        z_profile: params.z_profile.clone(),
        logical_set: if binary { subsets_of(&k_tuples) } else { Vec::new() },
    };
    VerificationReport {
        name: name.into(),
        computed: Some(computed),
        claims: Vec::new(),
        oracle,
        structural,
        notes,
    }
}
