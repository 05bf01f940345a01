//! `subset-codes`: build, inspect and verify intersecting-subset CSS codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subset_codes::alist::to_alist;
use subset_codes::catalog::{self, verify_code_spec, verify_entry, VerificationReport, VerifyOptions};
use subset_codes::css::{CodeSpec, ComponentPair, CssCode};
use subset_codes::grm::{grm_generator, nested_distance, GrmSpace, NestedPair, Parametrization};
use subset_codes::oracle::{css_distances_bruteforce, DEFAULT_DIM_CAP};
use subset_codes::posets::{Direction, IndexTuple, MonotoneSet, Shape};

#[derive(Parser)]
#[command(name = "subset-codes", version, about = "Intersecting-subset CSS codes")]
struct Cli {
    /// Worker threads for exhaustive distance search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write its check matrices, schedule and circuit.
    Construct {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify a code description; exits non-zero on any failure.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
    },
    /// Compute X and Z distances.
    Distance {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
    },
    /// Built-in example codes.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Generalized Reed-Muller spaces from monotone parameter sets.
    Grm {
        #[arg(long)]
        m: usize,
        /// JSON list of generators, each a digit string ("0110") or a 0/1 array.
        #[arg(long)]
        gens: String,
        #[arg(long, value_enum)]
        direction: Dir,
        /// Generators of an inner set S; reports the distance of GRM(T) \ GRM(S).
        #[arg(long)]
        nested: Option<String>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show {
        name: String,
    },
    Verify {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Inc,
    Dec,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Direction {
        match d {
            Dir::Inc => Direction::Increasing,
            Dir::Dec => Direction::Decreasing,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether the command succeeded; errors are reported separately.
fn run(cli: Cli) -> Result<bool> {
    let threads = cli.threads.max(1);
    match cli.command {
        Command::Construct { spec, out } => construct(&read_spec(&spec)?, &out).map(|_| true),
        Command::Verify { spec, dim_cap } => {
            let name = spec.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let report = verify_code_spec(&name, &read_spec(&spec)?, &options(dim_cap, threads));
            print_json(&report)?;
            Ok(report.passed())
        }
        Command::Distance { spec, method, dim_cap } => distance(&read_spec(&spec)?, method, dim_cap, threads),
        Command::Catalog { action } => catalog_cmd(action, threads),
        Command::Grm { m, gens, direction, nested } => grm(m, &gens, direction.into(), nested.as_deref()).map(|_| true),
    }
}

fn options(dim_cap: usize, threads: usize) -> VerifyOptions {
    VerifyOptions {
        dim_cap,
        threads,
        ..VerifyOptions::default()
    }
}

fn read_spec(path: &Path) -> Result<CodeSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    CodeSpec::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn construct(spec: &CodeSpec, out: &Path) -> Result<()> {
    let code = spec.build().context("building code")?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let (hx, hz) = code.check_matrices();
    let schedule = code.syndrome_schedule();
    let files = [
        ("hx.alist", to_alist(hx)),
        ("hz.alist", to_alist(hz)),
        ("hx.txt", hx.to_text()),
        ("hz.txt", hz.to_text()),
        ("schedule.json", serde_json::to_string_pretty(&schedule)?),
        ("circuit.txt", code.encoding_circuit().to_text()),
        ("params.json", serde_json::to_string_pretty(&params_json(&code))?),
    ];
    for (name, body) in files {
        let path = out.join(name);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!("wrote [[{}, {}]] code to {}", code.n(), code.k(), out.display());
    Ok(())
}

fn params_json(code: &CssCode) -> Value {
    let p = code.parameters();
    json!({
        "n": p.n,
        "k": p.k,
        "m": code.m(),
        "x": code.x(),
        "z": code.z(),
        "logical_set": code.logical_indices().iter().map(digits).collect::<Vec<_>>(),
        "profile": p.total_profile(),
        "x_profile": p.x_profile,
        "z_profile": p.z_profile,
        "layers": p.layers,
    })
}

fn is_binary(code: &CssCode) -> bool {
    code.components().iter().all(|c| *c == ComponentPair::repetition())
}

fn distance(spec: &CodeSpec, method: Method, dim_cap: usize, threads: usize) -> Result<bool> {
    let code = spec.build().context("building code")?;
    let mut out = json!({ "n": code.n(), "k": code.k() });
    if matches!(method, Method::Formula | Method::Both) {
        if !is_binary(&code) {
            bail!("the distance formula needs [1 1] components; use --method oracle");
        }
        let (dx, dz) = subset_codes::grm::distances_from_k(code.m(), &code.logical_indices())?;
        out["formula"] = json!({ "d_x": dx, "d_z": dz });
    }
    let mut ok = true;
    if matches!(method, Method::Oracle | Method::Both) {
        let (hx, hz) = code.check_matrices();
        let b = css_distances_bruteforce(hx, hz, dim_cap, threads)?;
        out["oracle"] = serde_json::to_value(b)?;
        if let Some(f) = out.get("formula") {
            let agree = |o: &subset_codes::oracle::OracleOutcome, key: &str| {
                o.is_refused() || o.weight().map(|w| w as u64) == f[key].as_u64()
            };
            ok = agree(&b.d_x, "d_x") && agree(&b.d_z, "d_z");
            out["agree"] = json!(ok);
        }
    }
    print_json(&out)?;
    Ok(ok)
}

fn catalog_cmd(action: CatalogAction, threads: usize) -> Result<bool> {
    match action {
        CatalogAction::List => {
            for e in catalog::catalog() {
                let c = &e.claims;
                println!("{:<10} [[{}, {}, {}/{}]]  {}", e.name, c.n, c.k, c.d_x, c.d_z, e.description);
            }
            Ok(true)
        }
        CatalogAction::Show { name } => {
            let e = catalog::find(&name).ok_or_else(|| anyhow!("no catalog entry named {name:?}"))?;
            print_json(&e)?;
            Ok(true)
        }
        CatalogAction::Verify { name, all, dim_cap } => {
            let entries = match (name, all) {
                (Some(n), _) => vec![catalog::find(&n).ok_or_else(|| anyhow!("no catalog entry named {n:?}"))?],
                (None, true) => catalog::catalog(),
                (None, false) => bail!("give an entry name or --all"),
            };
            let reports = verify_all(&entries, &options(dim_cap, 1), threads);
            for r in &reports {
                eprintln!("{:<10} {}  oracle: {:?}", r.name, if r.passed() { "ok" } else { "FAILED" }, r.oracle.status);
            }
            print_json(&reports)?;
            Ok(reports.iter().all(VerificationReport::passed))
        }
    }
}

/// Entries are independent, so they are spread over `threads` workers; the
/// output keeps catalog (name) order.
fn verify_all(entries: &[catalog::CatalogEntry], opts: &VerifyOptions, threads: usize) -> Vec<VerificationReport> {
    if threads <= 1 || entries.len() <= 1 {
        return entries.iter().map(|e| verify_entry(e, opts)).collect();
    }
    let mut slots: Vec<Option<VerificationReport>> = vec![None; entries.len()];
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                s.spawn(move || {
                    (t..entries.len())
                        .step_by(threads)
                        .map(|i| (i, verify_entry(&entries[i], opts)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("verifier panicked") {
                slots[i] = Some(r);
            }
        }
    });
    let mut reports: Vec<VerificationReport> = slots.into_iter().map(|r| r.expect("every slot filled")).collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}

fn digits(t: &IndexTuple) -> String {
    t.entries().iter().map(|d| char::from(b'0' + *d as u8)).collect()
}

fn parse_gens(m: usize, text: &str) -> Result<Vec<IndexTuple>> {
    let value: Value = serde_json::from_str(text).context("generators must be a JSON list")?;
    let items = value.as_array().ok_or_else(|| anyhow!("generators must be a JSON list"))?;
    items
        .iter()
        .map(|item| {
            let t = match item {
                Value::String(s) => IndexTuple::from_digits(s)?,
                Value::Array(bits) => IndexTuple::new(
                    bits.iter()
                        .map(|b| b.as_u64().map(|v| v as usize).ok_or_else(|| anyhow!("bad generator entry {b}")))
                        .collect::<Result<_>>()?,
                ),
                other => bail!("bad generator {other}"),
            };
            if t.entries().len() != m || t.entries().iter().any(|&d| d > 1) {
                bail!("generator {} is not a point of {{0,1}}^{m}", item);
            }
            Ok(t)
        })
        .collect()
}

fn space_json(g: &GrmSpace) -> Value {
    json!({
        "parametrization": g.parametrization(),
        "members": g.set().tuples().map(|t| digits(&t)).collect::<Vec<_>>(),
        "dimension": g.dimension(),
        "generator": g.generator().to_text().lines().skip(1).collect::<Vec<_>>(),
    })
}

fn grm(m: usize, gens: &str, direction: Direction, nested: Option<&str>) -> Result<()> {
    let shape = Shape::binary(m);
    let t = MonotoneSet::closure(&shape, &parse_gens(m, gens)?, direction)?;
    let space = grm_generator(&t, Parametrization::for_direction(direction))?;
    let partner = space.partner();
    let mut out = json!({
        "m": m,
        "space": space_json(&space),
        "partner": space_json(&partner),
        "same_span": space.generator().same_row_space(partner.generator())?,
        "dual": space_json(&space.dual()),
    });
    if let Some(inner) = nested {
        let s = MonotoneSet::closure(&shape, &parse_gens(m, inner)?, direction)?;
        let pair = NestedPair::new(t, s)?;
        out["nested"] = json!({
            "inner": pair.s().tuples().map(|t| digits(&t)).collect::<Vec<_>>(),
            "distance": nested_distance(&pair)?,
        });
    }
    print_json(&out)
}
