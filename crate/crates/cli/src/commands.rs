//! Subcommand implementations. Each returns a `Report` holding a JSON body,
//! a human-readable rendering and whether a verification failed.

use std::collections::hash_map::DefaultHasher;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use holant::certificates::{self, CertificateReport, Status};
use holant::classifier::{self, Outcome};
use holant::coloring::{self, fixtures, PlaneGraph};
use holant::exactnum::{BiPoly, IntPoly, Scalar};
use holant::gadgets::gates::{self, GadgetKind};
use holant::gadgets::{verify_formulas, TernaryTriple};
use holant::holant::json::GridJson;
use holant::holant::SignatureGrid;
use holant::interpolation::{self as interp, HoleGate};
use holant::linalg::{self, Matrix};
use holant::signatures::{SignatureDescriptor, SuccinctSignature, SuccinctType};
use holant::tractable::{self, Method};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::config::{Mode, RunConfig};
use crate::schema;

pub const CACHE_ENV: &str = "HOLANT_CACHE_DIR";

pub struct Report {
    pub schema: &'static str,
    pub body: Value,
    pub human: String,
    pub mismatch: bool,
}

impl Report {
    fn new(schema: &'static str, body: Value, human: String) -> Self {
        Report { schema, body, human, mismatch: false }
    }

    fn mismatch_if(mut self, failed: bool) -> Self {
        self.mismatch = failed;
        self
    }

    /// The JSON record with its schema tag.
    pub fn record(&self) -> Value {
        let mut v = self.body.clone();
        if let Value::Object(m) = &mut v {
            m.insert("schema".into(), Value::String(self.schema.into()));
        }
        v
    }
}

fn s(v: &Scalar) -> Value {
    Value::String(v.simplified().to_string())
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(s).collect())).collect())
}

/// Splits on top-level commas so bracketed cyclotomic values stay whole.
pub fn split_values(raw: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0i32;
    for ch in raw.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(String::new());
        } else {
            out.last_mut().expect("nonempty").push(ch);
        }
    }
    out.into_iter().map(|p| p.trim().to_string()).collect()
}

/// Parses a scalar, converting to float in float mode and refusing float
/// input in exact mode.
pub fn parse_scalar(raw: &str, cfg: &RunConfig) -> Result<Scalar> {
    let v: Scalar = raw.parse().map_err(|e| anyhow!("bad scalar {raw:?}: {e}"))?;
    adapt(v, cfg)
}

fn adapt(v: Scalar, cfg: &RunConfig) -> Result<Scalar> {
    match cfg.mode {
        Mode::Float => Ok(v.to_float()),
        Mode::Exact if !v.is_exact() => bail!("float value {v} in exact mode; pass --mode float to allow it"),
        Mode::Exact => Ok(v),
    }
}

fn parse_list<const N: usize>(raw: &str, what: &str, cfg: &RunConfig) -> Result<[Scalar; N]> {
    let parts = split_values(raw);
    if parts.len() != N {
        bail!("{what} expects {N} comma-separated values, got {}", parts.len());
    }
    let v: Vec<Scalar> = parts.iter().map(|p| parse_scalar(p, cfg)).collect::<Result<_>>()?;
    Ok(v.try_into().expect("length checked"))
}

fn same(a: &Scalar, b: &Scalar, cfg: &RunConfig) -> bool {
    if a.is_exact() && b.is_exact() {
        a.simplified() == b.simplified()
    } else {
        a.approx_eq(b, cfg.tol)
    }
}

/// Compares `value` with an optional expected value, recording the result.
fn expect(value: &Scalar, expected: Option<&str>, cfg: &RunConfig, body: &mut Value, human: &mut String) -> Result<bool> {
    let Some(raw) = expected else { return Ok(true) };
    let e = parse_scalar(raw, cfg)?;
    let ok = same(value, &e, cfg);
    body["expected"] = s(&e);
    body["matches_expected"] = json!(ok);
    write!(human, "\nexpected {}: {}", e.simplified(), if ok { "matches" } else { "MISMATCH" })?;
    Ok(ok)
}

fn same_all(a: &[Scalar], b: &[Scalar], cfg: &RunConfig) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| same(x, y, cfg))
}

fn builtin_graph(name: &str) -> Option<PlaneGraph> {
    let name = name.to_ascii_lowercase().replace('_', "-");
    Some(match name.as_str() {
        "digon" => fixtures::digon(),
        "theta" => fixtures::theta(),
        "k4" => fixtures::k4(),
        "k33" | "k3,3" => fixtures::k33(),
        "prism" => fixtures::prism(),
        "bridge" => fixtures::bridge(),
        "self-loop" | "loop" => fixtures::self_loop(),
        "bridged-cubic" | "bridged" => fixtures::bridged_cubic(),
        other => {
            let n: usize = other.strip_prefix("cycle").or_else(|| other.strip_prefix('c'))?.parse().ok()?;
            if n < 3 {
                return None;
            }
            fixtures::cycle(n)
        }
    })
}

/// A graph from a JSON file, or a builtin by name (a missing `name.json`
/// falls back to the builtin `name`).
pub fn load_graph(arg: &str) -> Result<PlaneGraph> {
    let p = Path::new(arg);
    if p.is_file() {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading graph {arg}"))?;
        return PlaneGraph::from_json(&text).with_context(|| format!("parsing graph {arg}"));
    }
    let stem = arg.strip_suffix(".json").unwrap_or(arg);
    let stem = Path::new(stem).file_name().and_then(|s| s.to_str()).unwrap_or(stem);
    builtin_graph(stem).ok_or_else(|| anyhow!("no graph file {arg:?} and no builtin named {stem:?}"))
}

fn load_grid_json(path: &Path, cfg: &RunConfig) -> Result<GridJson> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading grid {}", path.display()))?;
    let mut g: GridJson = serde_json::from_str(&text).with_context(|| format!("parsing grid {}", path.display()))?;
    for sig in &mut g.signatures {
        for v in &mut sig.values {
            *v = adapt(v.clone(), cfg)?;
        }
    }
    Ok(g)
}

pub fn eval(cfg: &RunConfig, grid: &Path, method: &str, compare: bool, expected: Option<&str>) -> Result<Report> {
    let grid = SignatureGrid::from_json_value(&load_grid_json(grid, cfg)?)?;
    let (value, used) = match method {
        "auto" => classifier::eval_auto(&grid, cfg.cap)?,
        name => {
            let m = Method::from_name(name).ok_or_else(|| anyhow!("unknown method {name:?}"))?;
            let v = match m {
                Method::Brute => grid.holant_value_capped(cfg.cap)?,
                Method::Equality => tractable::eval_equality(&grid)?,
                Method::Gp => tractable::eval_gp(&grid, &classifier::gp_decompositions(&grid)?)?,
                Method::AffineZ3 => tractable::eval_affine_z3(&grid)?,
                Method::HadamardK4 => tractable::eval_hadamard_k4(&grid)?,
            };
            (v, m)
        }
    };
    let value = value.simplified();
    let mut body = json!({"value": s(&value), "method": used.name(), "kappa": grid.kappa});
    let mut human = format!("Holant = {value}  (method: {})", used.name());
    let mut failed = false;
    if compare {
        let brute = grid.holant_value_capped(cfg.cap)?.simplified();
        let agrees = same(&value, &brute, cfg);
        body["brute"] = s(&brute);
        body["agrees"] = json!(agrees);
        write!(human, "\nbrute force = {brute}: {}", if agrees { "agrees" } else { "MISMATCH" })?;
        failed = !agrees;
    }
    failed |= !expect(&value, expected, cfg, &mut body, &mut human)?;
    Ok(Report::new(schema::EVAL, body, human).mismatch_if(failed))
}

pub fn gadget(cfg: &RunConfig, name: &str, kappa: usize, abc: &str, xy: &[String]) -> Result<Report> {
    let kind = GadgetKind::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = GadgetKind::ALL.iter().map(|k| k.name()).collect();
        anyhow!("unknown gadget {name:?}; expected one of {}", names.join(", "))
    })?;
    let [a, b, c] = parse_list::<3>(abc, "--abc", cfg)?;
    let t = TernaryTriple::new(kappa, a, b, c);
    let bins = xy
        .iter()
        .map(|raw| parse_list::<2>(raw, "--xy", cfg).map(|[x, y]| (x, y)))
        .collect::<Result<Vec<_>>>()?;
    if bins.len() < kind.n_binaries() {
        bail!("{} needs {} binary signature(s) via --xy/--xy2", kind.name(), kind.n_binaries());
    }
    let exhaustive = cfg.mode == Mode::Exact && kappa <= 4;
    let r = gates::check(kind, &t, &bins, exhaustive)?;
    let agrees = if cfg.mode == Mode::Exact { r.agrees } else { same_all(&r.closed.entries, &r.oracle.entries, cfg) };
    let body = json!({
        "gadget": kind.name(),
        "kappa": kappa,
        "closed": SignatureDescriptor::from_succinct(&r.closed),
        "oracle": SignatureDescriptor::from_succinct(&r.oracle),
        "agrees": agrees,
        "exhaustive": exhaustive,
    });
    let human = format!(
        "{} at κ={kappa}\nclosed form: {}\nbrute force: {}\n{}",
        kind.name(),
        succinct_str(&r.closed),
        succinct_str(&r.oracle),
        if agrees { "agrees" } else { "MISMATCH" }
    );
    Ok(Report::new(schema::GADGET, body, human).mismatch_if(!agrees))
}

fn succinct_str(f: &SuccinctSignature) -> String {
    let parts: Vec<String> = f.entries.iter().map(|v| v.simplified().to_string()).collect();
    format!("{} ⟨{}⟩", f.ty.name(), parts.join(", "))
}

pub fn classify(cfg: &RunConfig, kappa: usize, abc: &str) -> Result<Report> {
    let [a, b, c] = parse_list::<3>(abc, "--abc", cfg)?;
    let v = classifier::classify(kappa, &a, &b, &c)?;
    let d = &v.discriminants;
    let (da, db, dc) = (d.a.simplified(), d.b.simplified(), d.c.simplified());
    let (verdict, route, steps) = match &v.outcome {
        Outcome::Tractable { .. } => ("Tractable", None, Vec::new()),
        Outcome::Hard { route } => ("Hard", Some(route.name()), route.steps()),
    };
    let w = v.witness();
    let body = json!({
        "kappa": kappa,
        "abc": [s(&a), s(&b), s(&c)],
        "verdict": verdict,
        "case": v.case(),
        "evaluator": w.map(|w| w.method().name()),
        "witness": w.map(|w| w.describe()),
        "route": route,
        "route_steps": steps,
        "discriminants": {"A": s(&d.a), "B": s(&d.b), "C": s(&d.c)},
        "approximate": v.approximate,
    });
    let mut human = format!("{v}\ndiscriminants: A = {da}, B = {db}, C = {dc}");
    for (i, st) in steps.iter().enumerate() {
        write!(human, "\n  {}. {st}", i + 1)?;
    }
    Ok(Report::new(schema::CLASSIFY, body, human))
}

pub fn color_count(cfg: &RunConfig, graph: &str, kappa: usize, expected: Option<&str>) -> Result<Report> {
    let g = load_graph(graph)?;
    let n = coloring::count_edge_colorings(&g, kappa)?.simplified();
    let mut body = json!({"graph": graph, "kappa": kappa, "count": s(&n)});
    let mut human = n.to_string();
    let ok = expect(&n, expected, cfg, &mut body, &mut human)?;
    Ok(Report::new(schema::COLOR_COUNT, body, human).mismatch_if(!ok))
}

#[derive(serde::Serialize, Deserialize)]
struct TutteCache {
    graph: String,
    /// Coefficient of xⁱ as ascending coefficients in y.
    coeffs: Vec<Vec<String>>,
}

fn cache_path(dir: &Path, key: &str) -> PathBuf {
    let mut h = DefaultHasher::new();
    key.hash(&mut h);
    dir.join(format!("tutte-{:016x}.json", h.finish()))
}

fn read_cache(path: &Path, key: &str) -> Option<BiPoly> {
    let c: TutteCache = serde_json::from_str(&std::fs::read_to_string(path).ok()?).ok()?;
    if c.graph != key {
        return None;
    }
    let rows: Option<Vec<IntPoly>> = c
        .coeffs
        .iter()
        .map(|r| r.iter().map(|v| v.parse::<BigInt>().ok()).collect::<Option<Vec<_>>>().map(IntPoly::new))
        .collect();
    rows.map(BiPoly::new)
}

/// The Tutte polynomial, memoized under `$HOLANT_CACHE_DIR` when set.
pub fn tutte_polynomial_cached(g: &PlaneGraph) -> Result<BiPoly> {
    let Some(dir) = std::env::var_os(CACHE_ENV).map(PathBuf::from) else {
        return Ok(coloring::tutte_polynomial(g)?);
    };
    let key = g.to_json();
    let path = cache_path(&dir, &key);
    if let Some(p) = read_cache(&path, &key) {
        return Ok(p);
    }
    let p = coloring::tutte_polynomial(g)?;
    let entry = TutteCache {
        graph: key,
        coeffs: p.coeffs().iter().map(|r| r.coeffs().iter().map(BigInt::to_string).collect()).collect(),
    };
    std::fs::create_dir_all(&dir).with_context(|| format!("creating cache dir {}", dir.display()))?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    std::fs::write(&tmp, serde_json::to_string(&entry)?)?;
    std::fs::rename(&tmp, &path)?;
    Ok(p)
}

pub fn tutte(cfg: &RunConfig, graph: &str, x: &str, y: &str, expected: Option<&str>) -> Result<Report> {
    let g = load_graph(graph)?;
    let (x, y) = (parse_scalar(x, cfg)?, parse_scalar(y, cfg)?);
    let p = tutte_polynomial_cached(&g)?;
    let v = coloring::eval_bipoly(&p, &x, &y).simplified();
    let mut body = json!({"graph": graph, "x": s(&x), "y": s(&y), "value": s(&v), "polynomial": p.to_string()});
    let mut human = format!("T(G; {x}, {y}) = {v}\nT(G; x, y) = {p}");
    let ok = expect(&v, expected, cfg, &mut body, &mut human)?;
    Ok(Report::new(schema::TUTTE, body, human).mismatch_if(!ok))
}

pub fn medial(graph: &str, directed: bool) -> Result<Report> {
    let g = load_graph(graph)?;
    let (mg, dm) = coloring::medial(&g)?;
    let mut body = json!({"graph": graph, "medial": mg.to_json_value()});
    let mut human = mg.to_json();
    if directed {
        body["arcs"] = serde_json::to_value(&dm.arcs)?;
        body["slots"] = serde_json::to_value(&dm.slots)?;
        body["alternates"] = json!(dm.alternates());
        for (i, [t, h]) in dm.arcs.iter().enumerate() {
            write!(human, "\narc {i}: ({}, {}) -> ({}, {})", t.0, t.1, h.0, h.1)?;
        }
        write!(human, "\nin/out alternation: {}", dm.alternates())?;
    }
    Ok(Report::new(schema::MEDIAL, body, human))
}

pub fn interp_demo(graph: &str, kappa: usize) -> Result<Report> {
    let g = load_graph(graph)?;
    let d = interp::coloring_interpolation_demo(&g, kappa)?;
    let agrees = d.value == d.direct && d.closed_form_holds;
    let body = json!({
        "graph": graph,
        "kappa": kappa,
        "samples": d.samples.iter().map(|(x, v)| json!([s(x), s(v)])).collect::<Vec<_>>(),
        "coefficients": d.coefficients.iter().map(s).collect::<Vec<_>>(),
        "value": s(&d.value),
        "direct": s(&d.direct),
        "closed_form_holds": d.closed_form_holds,
        "agrees": agrees,
    });
    let mut human = String::new();
    for (x, v) in &d.samples {
        writeln!(human, "x = {}: Holant = {}", x.simplified(), v.simplified())?;
    }
    let coeffs: Vec<String> = d.coefficients.iter().map(|v| v.simplified().to_string()).collect();
    write!(
        human,
        "polynomial (ascending): [{}]\nvalue at x = {}: {}\ndirect evaluation: {}\nf_t closed form: {}",
        coeffs.join(", "),
        kappa + 1,
        d.value.simplified(),
        d.direct.simplified(),
        if d.closed_form_holds { "holds" } else { "FAILS" }
    )?;
    Ok(Report::new(schema::INTERP_DEMO, body, human).mismatch_if(!agrees))
}

#[derive(Deserialize)]
struct ConstructionFile {
    gate: GridJson,
    hole: usize,
}

pub fn interp_matrix(cfg: &RunConfig, construction: &str, kappa: Option<usize>, space: Option<&str>) -> Result<Report> {
    let named = |k: Option<usize>| k.ok_or_else(|| anyhow!("--kappa is required for a named construction"));
    let (c, kappa, default_ty, table): (HoleGate, usize, SuccinctType, Option<Matrix>) = match construction {
        "coloring" => {
            let k = named(kappa)?;
            (interp::coloring_construction(&interp::coloring_gadget_signature(k)?)?, k, SuccinctType::TauColor, Some(interp::coloring_matrix(k)))
        }
        "alternate" => {
            let k = named(kappa)?;
            let c = interp::alternate_coloring_construction(&interp::coloring_gadget_signature(k)?)?;
            (c, k, SuccinctType::TauColor, Some(interp::alternate_coloring_matrix(k)))
        }
        "weave" => {
            let k = named(kappa)?;
            let kk = Scalar::int(k as i64);
            let t = interp::weave_table(k).iter().map(|r| r.iter().map(|v| v * &kk).collect()).collect();
            (interp::weave_construction(&interp::weave_vertex_signature(k)?)?, k, SuccinctType::Tau4, Some(t))
        }
        path => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading construction {path}"))?;
            let mut f: ConstructionFile = serde_json::from_str(&text).with_context(|| format!("parsing construction {path}"))?;
            if let Some(k) = kappa {
                if k != f.gate.kappa {
                    bail!("--kappa {k} disagrees with the construction's kappa {}", f.gate.kappa);
                }
            }
            for sig in &mut f.gate.signatures {
                for v in &mut sig.values {
                    *v = adapt(v.clone(), cfg)?;
                }
            }
            let k = f.gate.kappa;
            let gate = SignatureGrid::from_json_value(&f.gate)?;
            if f.hole >= gate.vertices.len() {
                bail!("hole {} is not a vertex of the gate", f.hole);
            }
            (HoleGate { gate, hole: f.hole }, k, SuccinctType::Tau4, None)
        }
    };
    let ty = match space {
        Some(n) => SuccinctType::from_name(n).ok_or_else(|| anyhow!("unknown space {n:?}"))?,
        None => default_ty,
    };
    let r = interp::construction_matrix(&c, ty)?;
    let cp = r.char_int_poly();
    let eig = linalg::integer_eigenvalues(&r.m);
    let matches = table.as_ref().filter(|_| ty == default_ty).map(|t| t == &r.m);
    let body = json!({
        "construction": construction,
        "kappa": kappa,
        "space": ty.name(),
        "matrix": matrix_json(&r.m),
        "char_poly": cp.as_ref().map(IntPoly::to_string),
        "eigenvalues": eig.as_ref().map(|e| e.iter().map(BigInt::to_string).collect::<Vec<_>>()),
        "matches_table": matches,
    });
    let mut human = format!("{construction} on {} at κ={kappa}:", ty.name());
    for row in &r.m {
        let cells: Vec<String> = row.iter().map(|v| v.simplified().to_string()).collect();
        write!(human, "\n  [{}]", cells.join(", "))?;
    }
    if let Some(p) = &cp {
        write!(human, "\ncharacteristic polynomial: {p}")?;
    }
    if let Some(e) = &eig {
        let e: Vec<String> = e.iter().map(BigInt::to_string).collect();
        write!(human, "\neigenvalues: {}", e.join(", "))?;
    }
    if let Some(m) = matches {
        write!(human, "\nmatches published matrix: {m}")?;
    }
    Ok(Report::new(schema::INTERP_MATRIX, body, human).mismatch_if(matches == Some(false)))
}

pub fn certify(suite: &str, bound: Option<u64>) -> Result<Report> {
    let mut evidence = Value::Null;
    let reports: Vec<CertificateReport> = match suite {
        "p-solutions" => vec![certificates::p_solutions_report(bound.unwrap_or(2000))?],
        "fixtures" => certificates::verify_factorization_fixtures(),
        "identities" => certificates::identity_suite(),
        "roots" => {
            let hi = bound.unwrap_or(20).max(3) as i64;
            vec![certificates::roots_nature_report(3..=hi)]
        }
        "dedekind" => {
            let (ev, rep) = certificates::quartic_dedekind_report()?;
            evidence = serde_json::to_value(&ev)?;
            vec![rep]
        }
        "lattice" => {
            let b = u32::try_from(bound.unwrap_or(4)).context("lattice bound too large")?;
            let mut out: Vec<CertificateReport> = (4..=7).map(|k| certificates::h_tilde_lattice_falsifier(k, b)).collect();
            for k in 3..=6i64 {
                let f = IntPoly::from_desc(&[1, -1, 1, -(k - 1)]);
                let claim = format!("lattice condition for the roots of x^3 - x^2 + x - {}", k - 1);
                let status = match certificates::cubic_lattice_criterion(&f) {
                    Ok(true) => Status::Verified,
                    Ok(false) => Status::FalsifiedWith("criterion fails".into()),
                    Err(e) => Status::FalsifiedWith(e.to_string()),
                };
                out.push(CertificateReport { claim, status, work: 1 });
            }
            out
        }
        other => bail!("unknown suite {other:?}; expected p-solutions, dedekind, identities, lattice, fixtures or roots"),
    };
    let failed = reports.iter().any(|r| !r.is_ok());
    let body = json!({"suite": suite, "reports": reports, "evidence": evidence});
    let human = reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
    Ok(Report::new(schema::CERTIFY, body, human).mismatch_if(failed))
}

pub fn verify(cfg: &RunConfig, kappa: usize, trials: usize) -> Result<Report> {
    let exhaustive = kappa <= 4;
    let sums = verify_formulas(kappa, trials, cfg.seed, exhaustive)?;
    let mut failed = false;
    let mut rows = Vec::new();
    let mut human = format!("κ={kappa}, {trials} trial(s), seed {}", cfg.seed);
    for sm in &sums {
        let ok = sm.agreements == sm.trials;
        failed |= !ok;
        let mismatch = sm.first_mismatch.as_ref().map(|r| {
            json!({"closed": SignatureDescriptor::from_succinct(&r.closed), "oracle": SignatureDescriptor::from_succinct(&r.oracle)})
        });
        rows.push(json!({"gadget": sm.kind.name(), "agreements": sm.agreements, "trials": sm.trials, "mismatch": mismatch}));
        write!(human, "\n{:<16} {}/{} {}", sm.kind.name(), sm.agreements, sm.trials, if ok { "verified" } else { "MISMATCH" })?;
    }
    let body = json!({"kappa": kappa, "trials": trials, "seed": cfg.seed, "exhaustive": exhaustive, "gadgets": rows});
    Ok(Report::new(schema::VERIFY_FORMULAS, body, human).mismatch_if(failed))
}
