//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p subset-codes --test acceptance`. Expected values
//! come either from stored published claims or from independent brute-force
//! computations written here, never from the code paths under test.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subset_codes::catalog::{catalog, CatalogEntry};
use subset_codes::css::Pauli;
use subset_codes::decomp::joint_decompose;
use subset_codes::grm::{css_xz_distances, grm_generator, nested_distance, nested_distance_recursive, NestedPair, Parametrization};
use subset_codes::oracle::{coset_min_weight, css_distances_bruteforce, CosetProblem, OracleOutcome};
use subset_codes::posets::{Direction, MonotoneSet, Shape, SubsetTuple};
use subset_codes::{BitMatrix, BitVector};

const CAP: usize = 26;

struct Outcome {
    passed: bool,
    summary: String,
}

fn run(id: usize, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    println!(
        "criterion {id} [{}] {title}: {} ({:.2}s, budget {}s)",
        if out.passed { "PASS" } else { "FAIL" },
        out.summary,
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    out.passed
}

// ---- independent helpers -------------------------------------------------

fn naive_mul(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    assert_eq!(a.cols(), b.rows());
    let mut out = BitMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut s = false;
            for k in 0..a.cols() {
                s ^= a.get(i, k) & b.get(k, j);
            }
            out.set(i, j, s);
        }
    }
    out
}

/// Rank by elimination on plain byte rows.
fn naive_rank(m: &BitMatrix) -> usize {
    let mut rows: Vec<Vec<u8>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j) as u8).collect()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] == 1 {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn same_span(a: &BitMatrix, b: &BitMatrix) -> bool {
    let both = BitMatrix::vstack(a.cols(), &[a.clone(), b.clone()]).unwrap();
    let r = naive_rank(&both);
    r == naive_rank(a) && r == naive_rank(b)
}

/// `R_m[i][j] = 1` iff the bits of `i` are a subset of the bits of `j`.
fn r_m(m: usize) -> BitMatrix {
    let n = 1 << m;
    let mut r = BitMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            r.set(i, j, i & !j == 0);
        }
    }
    r
}

fn down_set(m: usize, gens: &[usize]) -> Vec<usize> {
    (0..1usize << m).filter(|&x| gens.iter().any(|&g| x & !g == 0)).collect()
}

fn is_down(m: usize, set: &[bool]) -> bool {
    (0..1usize << m).all(|x| !set[x] || (0..m).all(|b| x >> b & 1 == 0 || set[x & !(1 << b)]))
}

fn monotone(m: usize, members: &[usize], dir: Direction) -> MonotoneSet {
    MonotoneSet::from_members(&Shape::binary(m), dir, members.iter().copied()).unwrap()
}

fn brute_min_weight(rows: &BitMatrix, excluded: &BitMatrix) -> Option<usize> {
    let p = CosetProblem::new(rows, excluded).unwrap();
    coset_min_weight(&p, CAP, 1).weight()
}

// ---- criteria -------------------------------------------------------------

fn named(entries: &[CatalogEntry], name: &str) -> bool {
    entries.iter().any(|e| e.name == name)
}

fn c1(entries: &[CatalogEntry]) -> Outcome {
    let required = [
        "spc2d", "rm_2_4", "spc3d", "cyc32", "cyc64", "cyc128", "x128", "sym256", "sym512", "asym32", "asym128", "asym_m3", "asym_m4", "asym_m5",
        "asym_m6", "asym_m7", "asym_m8", "asym_m9",
    ];
    let mut bad = Vec::new();
    for name in required {
        if !named(entries, name) {
            bad.push(format!("{name} missing"));
        }
    }
    for e in entries {
        match e.build() {
            Err(err) => bad.push(format!("{}: {err}", e.name)),
            Ok(code) => {
                let (mx, mz) = code.check_matrices();
                let k_rank = code.n() - naive_rank(mx) - naive_rank(mz);
                if code.n() != e.claims.n || code.k() != e.claims.k || k_rank != e.claims.k {
                    bad.push(format!("{}: [[{},{}]] (rank count {k_rank}) vs claim [[{},{}]]", e.name, code.n(), code.k(), e.claims.n, e.claims.k));
                }
            }
        }
    }
    Outcome {
        passed: bad.is_empty(),
        summary: if bad.is_empty() { format!("{} entries reproduce [[n,k]]", entries.len()) } else { bad.join("; ") },
    }
}

fn c2(entries: &[CatalogEntry]) -> Outcome {
    let mut bad = Vec::new();
    for e in entries {
        let got = css_xz_distances(&e.x_tuple().unwrap(), &e.z_tuple().unwrap());
        match got {
            Ok(d) if d == (e.claims.d_x, e.claims.d_z) => {}
            other => bad.push(format!("{}: {other:?} vs ({}, {})", e.name, e.claims.d_x, e.claims.d_z)),
        }
    }
    Outcome {
        passed: bad.is_empty(),
        summary: if bad.is_empty() { format!("{} entries match claimed (d_x, d_z)", entries.len()) } else { bad.join("; ") },
    }
}

fn c3(entries: &[CatalogEntry]) -> Outcome {
    let must_verify = ["spc2d", "rm_2_4", "cyc32", "asym32", "asym_m3", "asym_m4", "asym_m5"];
    let mut bad = Vec::new();
    let (mut verified, mut refused) = (0, 0);
    for e in entries {
        let code = e.build().unwrap();
        let (hx, hz) = code.check_matrices();
        let dims = (code.n() - naive_rank(hz), code.n() - naive_rank(hx));
        let b = css_distances_bruteforce(hx, hz, CAP, 1).unwrap();
        for (side, outcome, dim, claim) in [("d_x", b.d_x, dims.0, e.claims.d_x), ("d_z", b.d_z, dims.1, e.claims.d_z)] {
            match outcome {
                OracleOutcome::Exact { min_weight, visited } => {
                    if dim > CAP {
                        bad.push(format!("{} {side}: answered above cap", e.name));
                    }
                    if visited != (1u64 << dim) - 1 {
                        bad.push(format!("{} {side}: visited {visited}", e.name));
                    }
                    if min_weight.map(|w| w as u64) != Some(claim) {
                        bad.push(format!("{} {side}: oracle {min_weight:?} vs {claim}", e.name));
                    }
                }
                OracleOutcome::Refused { dim: d, .. } => {
                    if d <= CAP || d != dim {
                        bad.push(format!("{} {side}: refused at dim {d}", e.name));
                    }
                }
            }
        }
        match (b.d_x, b.d_z) {
            (OracleOutcome::Exact { .. }, OracleOutcome::Exact { .. }) => verified += 1,
            _ => {
                refused += 1;
                if must_verify.contains(&e.name.as_str()) {
                    bad.push(format!("{} was not enumerated", e.name));
                }
            }
        }
    }
    Outcome {
        passed: bad.is_empty(),
        summary: if bad.is_empty() { format!("{verified} entries oracle-verified, {refused} explicitly refused") } else { bad.join("; ") },
    }
}

fn c4(entries: &[CatalogEntry]) -> Outcome {
    let mut bad = Vec::new();
    for e in entries {
        let code = e.build().unwrap();
        let (mx, mz) = code.check_matrices();
        let count = |m: &BitMatrix| {
            let mut p = BTreeMap::new();
            for r in 0..m.rows() {
                let w = m.row_weight(r);
                if w > 0 {
                    *p.entry(w).or_insert(0usize) += 1;
                }
            }
            p
        };
        let (px, pz) = (count(mx), count(mz));
        let mut total = px.clone();
        for (w, c) in &pz {
            *total.entry(*w).or_insert(0) += c;
        }
        if total != e.claims.profile {
            bad.push(format!("{}: {total:?} vs {:?}", e.name, e.claims.profile));
        }
        if e.claims.x_profile.as_ref().is_some_and(|p| *p != px) || e.claims.z_profile.as_ref().is_some_and(|p| *p != pz) {
            bad.push(format!("{}: per-side profile {px:?} / {pz:?}", e.name));
        }
        let s = code.syndrome_schedule();
        if s.measurement_count() != total.values().sum::<usize>() || s.check_disjoint(code.n()).is_err() {
            bad.push(format!("{}: schedule disagrees with check rows", e.name));
        }
    }
    Outcome {
        passed: bad.is_empty(),
        summary: if bad.is_empty() { format!("{} profiles exact", entries.len()) } else { bad.join("; ") },
    }
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.gen_bool(density));
        }
    }
    m
}

fn c5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let trials = 600;
    let mut bad = Vec::new();
    for t in 0..trials {
        let n = rng.gen_range(1..=12);
        let ma = rng.gen_range(0..=8);
        let mb = rng.gen_range(0..=8);
        let density = rng.gen_range(0.1..0.9);
        let a = random_matrix(&mut rng, ma, n, density);
        let ker = a.kernel_basis();
        let coeffs = random_matrix(&mut rng, mb, ker.rows(), 0.5);
        let b = if ker.rows() == 0 { BitMatrix::zeros(mb, n) } else { naive_mul(&coeffs, &ker) };
        assert!(naive_mul(&a, &b.transpose()).is_zero());
        let jd = match joint_decompose(&a, &b) {
            Ok(jd) => jd,
            Err(e) => {
                bad.push(format!("trial {t}: {e}"));
                continue;
            }
        };
        let r_inv_t = jd.r.invert().unwrap().transpose();
        let lhs_a = naive_mul(&naive_mul(&jd.p_a, &a), &jd.q);
        let rhs_a = naive_mul(&naive_mul(&jd.l_a, &jd.d_a.materialize()), &jd.r);
        let lhs_b = naive_mul(&naive_mul(&jd.p_b, &b), &jd.q);
        let rhs_b = naive_mul(&naive_mul(&jd.l_b, &jd.d_b.materialize()), &r_inv_t);
        let perm = |p: &BitMatrix| (0..p.rows()).all(|i| p.row_weight(i) == 1) && naive_mul(p, &p.transpose()).is_identity();
        let da_ok = jd.rank_a == naive_rank(&a) && (0..ma).all(|i| (0..n).all(|j| jd.d_a.materialize().get(i, j) == (i == j && i < jd.rank_a)));
        let rb = jd.rank_b;
        let db_ok = rb == naive_rank(&b)
            && (0..mb).all(|i| (0..n).all(|j| jd.d_b.materialize().get(i, j) == (i + rb >= mb && j + rb >= n && mb - i == n - j)));
        let ok = lhs_a == rhs_a
            && lhs_b == rhs_b
            && jd.l_a.is_lower_unit_triangular()
            && jd.l_b.is_upper_unit_triangular()
            && jd.r.is_upper_unit_triangular()
            && perm(&jd.p_a)
            && perm(&jd.p_b)
            && perm(&jd.q)
            && da_ok
            && db_ok;
        if !ok {
            bad.push(format!("trial {t}: {ma}x{n} / {mb}x{n} failed an invariant"));
        }
    }
    Outcome {
        passed: bad.is_empty(),
        summary: if bad.is_empty() { format!("{trials} random orthogonal pairs reassemble exactly") } else { bad.join("; ") },
    }
}

fn all_down_sets(m: usize) -> Vec<Vec<usize>> {
    let n = 1usize << m;
    (0u64..1 << n)
        .filter_map(|mask| {
            let set: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            is_down(m, &set).then(|| (0..n).filter(|&i| set[i]).collect())
        })
        .collect()
}

fn check_nested(m: usize, t: &[usize], s: &[usize], rm: &BitMatrix, bad: &mut Vec<String>) {
    let pair = NestedPair::new(monotone(m, t, Direction::Decreasing), monotone(m, s, Direction::Decreasing)).unwrap();
    let formula = nested_distance(&pair).unwrap();
    let recursive = nested_distance_recursive(&pair).unwrap();
    let brute = brute_min_weight(&rm.select_rows(t), &rm.select_rows(s)).map(|w| w as u64);
    if brute != Some(formula) || recursive != formula {
        bad.push(format!("m={m} T={t:?} S={s:?}: formula {formula}, recursion {recursive}, oracle {brute:?}"));
    }
    // The increasing case through the reflection must agree with its own oracle.
    let flip = |v: &[usize]| -> Vec<usize> {
        let mut f: Vec<usize> = v.iter().map(|&x| x ^ ((1 << m) - 1)).collect();
        f.sort_unstable();
        f
    };
    let (ti, si) = (flip(t), flip(s));
    let inc = NestedPair::new(monotone(m, &ti, Direction::Increasing), monotone(m, &si, Direction::Increasing)).unwrap();
    let rt = rm.transpose();
    let brute_inc = brute_min_weight(&rt.select_rows(&ti), &rt.select_rows(&si)).map(|w| w as u64);
    if brute_inc != Some(nested_distance(&inc).unwrap()) {
        bad.push(format!("m={m} increasing T={ti:?} S={si:?}: oracle {brute_inc:?}"));
    }
}

fn c6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();

    // Duality and the two parametrizations.
    let mut duality = 0;
    for m in 1..=5 {
        let rm = r_m(m);
        for _ in 0..200 {
            let gens: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..1usize << m)).collect();
            let s = down_set(m, &gens);
            let space = grm_generator(&monotone(m, &s, Direction::Decreasing), Parametrization::Decreasing).unwrap();
            let dual = space.dual();
            let partner = space.partner();
            let g = rm.select_rows(&s);
            // Independent dual: the complement of the up-closure of the flipped generators.
            let flipped: Vec<usize> = gens.iter().map(|&x| x ^ ((1 << m) - 1)).collect();
            let up: Vec<usize> = (0..1usize << m).filter(|&x| flipped.iter().any(|&f| f & !x == 0)).collect();
            let dual_set: Vec<usize> = (0..1usize << m).filter(|x| !up.contains(x)).collect();
            let gd = rm.select_rows(&dual_set);
            let partner_gen = rm.transpose().select_rows(&up);
            let ok = *space.generator() == g
                && dual.set().members() == dual_set.as_slice()
                && s.len() + dual_set.len() == 1 << m
                && naive_mul(&g, &gd.transpose()).is_zero()
                && same_span(&g, &partner_gen)
                && same_span(&g, partner.generator());
            if !ok {
                bad.push(format!("duality m={m} gens={gens:?}"));
            }
            duality += 1;
        }
    }

    // Every nested decreasing pair for m <= 4.
    let mut exhaustive = 0;
    for m in 0..=4 {
        let rm = r_m(m);
        let sets = all_down_sets(m);
        for t in &sets {
            for s in &sets {
                if s.len() < t.len() && s.iter().all(|x| t.contains(x)) {
                    check_nested(m, t, s, &rm, &mut bad);
                    exhaustive += 1;
                }
            }
        }
    }

    // Random pairs at m = 5.
    let m = 5;
    let rm = r_m(m);
    let mut sampled = 0;
    while sampled < 200 {
        let gens: Vec<usize> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(0..32)).collect();
        let t = down_set(m, &gens);
        // Keep GRM(T) within the oracle's enumeration cap.
        if t.len() > CAP {
            continue;
        }
        let sub: Vec<usize> = (0..rng.gen_range(0..=3)).map(|_| t[rng.gen_range(0..t.len())]).collect();
        let s = down_set(m, &sub);
        if s.len() == t.len() {
            continue;
        }
        check_nested(m, &t, &s, &rm, &mut bad);
        sampled += 1;
    }
    bad.truncate(5);
    Outcome {
        passed: bad.is_empty(),
        summary: if bad.is_empty() {
            format!("{duality} duality cases, {exhaustive} exhaustive pairs (m<=4), {sampled} random pairs (m=5); formula = recursion = oracle")
        } else {
            bad.join("; ")
        },
    }
}

fn c7(entries: &[CatalogEntry]) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for e in entries.iter().filter(|e| e.claims.n <= 512) {
        let code = e.build().unwrap();
        let circuit = code.encoding_circuit();
        let (px, pz) = circuit.pushforward();
        let (mx, mz) = code.check_matrices();
        if !(same_span(&px, mx) && same_span(&pz, mz)) {
            bad.push(format!("{}: pushforward spans a different stabilizer", e.name));
        }
        let mats: Vec<_> = (0..circuit.layers.len()).map(|i| circuit.layer_matrix(i)).collect();
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                if mats[i].mul(&mats[j]).unwrap() != mats[j].mul(&mats[i]).unwrap() {
                    bad.push(format!("{}: layers {i},{j} do not commute", e.name));
                }
            }
        }
        checked += 1;
    }
    Outcome {
        passed: bad.is_empty(),
        summary: if bad.is_empty() { format!("{checked} circuits span their stabilizers with commuting layers") } else { bad.join("; ") },
    }
}

fn c8(entries: &[CatalogEntry]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = Vec::new();
    let mut cases = 0;
    for name in ["spc2d", "cyc32"] {
        let e = entries.iter().find(|e| e.name == name).unwrap();
        let code = e.build().unwrap();
        let n = code.n();
        let mut errors: Vec<BitVector> = (0..n).map(|q| BitVector::from_indices(n, [q])).collect();
        for _ in 0..1000 {
            let w = rng.gen_range(2..=n);
            let mut v = BitVector::zeros(n);
            for _ in 0..w {
                v.set(rng.gen_range(0..n), true);
            }
            errors.push(v);
        }
        for side in [Pauli::X, Pauli::Z] {
            let d = code.decomposition(side);
            let m = &code.layered(side).materialized;
            // With [1 1] components P and Q are identities; L is used as is.
            if !d.p.is_identity() || !d.q.is_identity() {
                bad.push(format!("{name}: unexpected permutations"));
            }
            let t: Vec<usize> = d.d.support();
            for e in &errors {
                let re = naive_mul(&d.r, &BitMatrix::from_row(e).transpose());
                let mut pad = BitMatrix::zeros(d.l.rows(), 1);
                for &a in &t {
                    pad.set(d.d.row_of(a).unwrap(), 0, re.get(a, 0));
                }
                let lhs = naive_mul(m, &BitMatrix::from_row(e).transpose());
                let rhs = naive_mul(&d.l, &pad);
                let lib = code.syndrome_encode(side, &code.raw_syndrome(side, e).unwrap()).unwrap();
                if lhs != rhs || BitMatrix::from_row(&lib).transpose() != lhs {
                    bad.push(format!("{name} {side:?}: identity fails for {e:?}"));
                    break;
                }
                cases += 1;
            }
        }
    }
    Outcome {
        passed: bad.is_empty(),
        summary: if bad.is_empty() { format!("{cases} (error, side) cases satisfy M e = L pad(GP R e)") } else { bad.join("; ") },
    }
}

fn c9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    let (mut samples, mut tight, mut oracle_checked) = (0, 0, 0);
    while samples < 1000 {
        let m = rng.gen_range(2..=7);
        let draw = |rng: &mut ChaCha8Rng| -> Vec<Vec<usize>> {
            (0..rng.gen_range(1..=4))
                .map(|_| {
                    let mask: u64 = rng.gen_range(1..1u64 << m);
                    (0..m).filter(|&i| mask >> i & 1 == 1).collect()
                })
                .collect()
        };
        let (xl, zl) = (draw(&mut rng), draw(&mut rng));
        if xl.iter().any(|a| zl.iter().any(|b| !a.iter().any(|e| b.contains(e)))) {
            continue;
        }
        // Independent K: not below any complement of X_i, not above any Z_j.
        let k: Vec<usize> = (0..1usize << m)
            .filter(|&v| {
                let below = xl.iter().any(|x| x.iter().all(|&e| v >> (m - 1 - e) & 1 == 0));
                let above = zl.iter().any(|z| z.iter().all(|&e| v >> (m - 1 - e) & 1 == 1));
                !below && !above
            })
            .collect();
        if k.is_empty() {
            continue;
        }
        let x = SubsetTuple::from_lists(m, &xl).unwrap();
        let z = SubsetTuple::from_lists(m, &zl).unwrap();
        let (dx, dz) = css_xz_distances(&x, &z).unwrap();
        let weights: Vec<u32> = k.iter().map(|v| v.count_ones()).collect();
        let uniform = weights.iter().all(|&w| w == weights[0]);
        let bound = dx * dz <= 1 << m;
        let equality = (dx * dz == 1 << m) == uniform;
        if !bound || !equality {
            bad.push(format!("m={m} X={xl:?} Z={zl:?}: ({dx},{dz}), uniform={uniform}"));
        }
        tight += uniform as usize;
        if m <= 4 {
            let code = subset_codes::css::build_css(vec![subset_codes::css::ComponentPair::repetition(); m], x, z).unwrap();
            let (hx, hz) = code.check_matrices();
            let b = css_distances_bruteforce(hx, hz, CAP, 1).unwrap();
            if b.d_x.weight().map(|w| w as u64) != Some(dx) || b.d_z.weight().map(|w| w as u64) != Some(dz) {
                bad.push(format!("m={m} X={xl:?} Z={zl:?}: oracle {:?}/{:?} vs ({dx},{dz})", b.d_x, b.d_z));
            }
            oracle_checked += 1;
        }
        samples += 1;
    }
    bad.truncate(5);
    Outcome {
        passed: bad.is_empty(),
        summary: if bad.is_empty() {
            format!("{samples} codes obey d_x d_z <= 2^m ({tight} tight, all with uniform K weights); {oracle_checked} also oracle-checked")
        } else {
            bad.join("; ")
        },
    }
}

fn main() {
    let entries = catalog();
    let results = [
        run(1, "catalog [[n,k]] reproduction", Duration::from_secs(10), || c1(&entries)),
        run(2, "distance formula reproduction", Duration::from_secs(1), || c2(&entries)),
        run(3, "oracle cross-check", Duration::from_secs(120), || c3(&entries)),
        run(4, "measurement profiles", Duration::from_secs(10), || c4(&entries)),
        run(5, "joint decomposition property suite", Duration::from_secs(5), c5),
        run(6, "GRM distance and duality suite", Duration::from_secs(120), c6),
        run(7, "encoding circuit correctness", Duration::from_secs(30), || c7(&entries)),
        run(8, "syndrome redundancy identity", Duration::from_secs(10), || c8(&entries)),
        run(9, "product bound property", Duration::from_secs(10), c9),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
