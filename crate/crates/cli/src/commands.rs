use std::fmt;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ncx_core::acceptance;
use ncx_core::brs::{examples, theorem4_verify, PolyConstraintSystem};
use ncx_core::cosimplicial::{hochschild, prop7_verify, theorem2_verify, AlgebraData, Bimodule};
use ncx_core::gauge::{self, GaugeInstance, Momentum};
use ncx_core::linalg::SparseVec;
use ncx_core::ndiff::{all_hexagons, connecting_is_well_defined, hexagon_check, proposition4_check, ses_hexagon_check};
use ncx_core::ndiff::{HexagonReport, NDiffModule, ShortExactSequence};
use ncx_core::scalars::{make_cyclotomic, FieldKind};
use ncx_core::young::{double_divergence, has_riemann_symmetry, poincare_verify, potential_solve, random_divergence_free};
use ncx_core::young::{spin_sequence_check, OmegaN, Poly};
use ncx_core::{Cyc, Field, FieldDescriptor, NcxError, Rational};

use crate::report::{opt, yn, Report};
use crate::{AlgebraArgs, Command};

type Q = Rational;

#[derive(Debug)]
pub enum CliError {
    /// unreadable or inconsistent input
    Input(String),
    /// a computation contradicted a property it relies on
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Math(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl From<NcxError> for CliError {
    fn from(e: NcxError) -> Self {
        match e {
            NcxError::NotMember | NcxError::NotSubspace => CliError::Math(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

macro_rules! with_field {
    ($desc:expr, $F:ident => $body:expr) => {
        match $desc.kind {
            FieldKind::Rationals => {
                type $F = Rational;
                $body
            }
            FieldKind::Cyclotomic => {
                type $F = Cyc;
                $body
            }
        }
    };
}

pub fn tag(c: &Command) -> &'static str {
    match c {
        Command::Homology { .. } => "homology",
        Command::Multiplicities { .. } => "multiplicities",
        Command::Hexagon { .. } => "hexagon",
        Command::Ses { .. } => "ses",
        Command::Cosimplicial { .. } => "cosimplicial",
        Command::Theorem2 { .. } => "theorem2",
        Command::Prop7 { .. } => "prop7",
        Command::Poincare { .. } => "poincare",
        Command::SpinSeq { .. } => "spin-seq",
        Command::Potential { .. } => "potential",
        Command::Brs { .. } => "brs",
        Command::GaugeExt { .. } => "gauge-ext",
        Command::SpinExample { .. } => "spin-example",
        Command::Selftest { .. } => "selftest",
    }
}

pub fn run(c: &Command) -> Result<Report> {
    match c {
        Command::Homology { module } => {
            let (v, f) = read_with_field(module)?;
            with_field!(f, F => homology::<F>(&v, &f))
        }
        Command::Multiplicities { module } => {
            let (v, f) = read_with_field(module)?;
            with_field!(f, F => multiplicities::<F>(&v))
        }
        Command::Hexagon { module, l, m } => {
            let (v, f) = read_with_field(module)?;
            with_field!(f, F => hexagon::<F>(&v, *l, *m))
        }
        Command::Ses { sequence, relifts, seed } => {
            let v = read_json(sequence)?;
            let f = field_of(&v["F"])?;
            with_field!(f, F => ses::<F>(&v, *relifts, *seed))
        }
        Command::Cosimplicial { alg, nmax } => cosimplicial(alg, *nmax),
        Command::Theorem2 { alg, window } => theorem2(alg, *window),
        Command::Prop7 { alg, window } => prop7(alg, *window),
        Command::Poincare { n, d, k, wmax } => poincare(*n, *d, *k, *wmax),
        Command::SpinSeq { s, d, wmax } => spin_seq(*s, *d, *wmax),
        Command::Potential { source, degree, seed } => potential(source.as_deref(), *degree, *seed),
        Command::Brs { system, example, wmax } => brs(system.as_deref(), example.as_deref(), *wmax),
        Command::GaugeExt { instance, suite, trials, random_n, dim, seed, hochschild, nmax } => match (instance, random_n, hochschild) {
            _ if suite.is_some() => {
                if instance.as_deref().is_some_and(|p| p != Path::new("verify")) || random_n.is_some() || hochschild.is_some() {
                    return Err(input("--suite takes no instance file, --random-N or --hochschild"));
                }
                Ok(gauge_suite(*trials, *seed))
            }
            (_, _, Some(h)) => gauge_hochschild(h, *nmax),
            (Some(p), None, None) => gauge_instance(read_json(p)?),
            (None, Some(n), None) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let q = Cyc::root_of_unity(2 * *n as u32, 1);
                let g = gauge::random_instance::<Cyc, _>(&mut rng, *n, *dim, q)?;
                gauge_instance(g.to_json(&make_cyclotomic(2 * *n as u32)))
            }
            _ => Err(input("give exactly one of an instance file, --random-N or --hochschild")),
        },
        Command::SpinExample { spin, p, alpha, two_particle } => spin_example(*spin, p, alpha, two_particle.as_deref()),
        Command::Selftest { seed, only } => selftest(*seed, only),
    }
}

// ---- input ----

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| input(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())))?;
    // a saved failure replays as its witness
    match (v.get("schema_version"), v.get("witness")) {
        (Some(_), Some(w)) => Ok(w.clone()),
        _ => Ok(v),
    }
}

fn field_of(v: &Value) -> Result<FieldDescriptor> {
    match v.get("field").and_then(Value::as_str) {
        Some(name) => Ok(FieldDescriptor::parse_name(name)?),
        None => Ok(FieldDescriptor::rationals()),
    }
}

fn read_with_field(path: &Path) -> Result<(Value, FieldDescriptor)> {
    let v = read_json(path)?;
    let f = field_of(&v)?;
    Ok((v, f))
}

/// `zeta:M`, `zeta:M:j`, or anything the scalar parser accepts.
fn parse_scalar(s: &str) -> Result<Cyc> {
    if let Some(rest) = s.trim().strip_prefix("zeta:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let bad = || input(format!("bad root of unity {s:?}"));
        let m: u32 = parts[0].parse().map_err(|_| bad())?;
        let j: i64 = match parts.get(1) {
            Some(t) => t.parse().map_err(|_| bad())?,
            None => 1,
        };
        if m == 0 || m > ncx_core::scalars::MAX_ORDER || parts.len() > 2 {
            return Err(bad());
        }
        return Ok(Cyc::root_of_unity(m, j));
    }
    Ok(s.parse()?)
}

fn dense<F: Field>(v: &SparseVec<F>, dim: usize) -> Value {
    json!(v.to_dense(dim).iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn poly_text<F: Field>(p: &Poly<F>) -> String {
    let mut out = String::new();
    for (e, c) in p.terms() {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, k)| **k > 0)
            .map(|(i, k)| if *k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
            .collect();
        let c = c.to_string();
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        let term = match (mono.is_empty(), mag.as_str()) {
            (true, _) => mag,
            (false, "1") => mono.join("*"),
            (false, _) => format!("{mag}*{}", mono.join("*")),
        };
        match (out.is_empty(), neg) {
            (true, false) => out = term,
            (true, true) => out = format!("-{term}"),
            (false, false) => out += &format!(" + {term}"),
            (false, true) => out += &format!(" - {term}"),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

// ---- N-differential modules ----

fn homology<F: Field>(v: &Value, field: &FieldDescriptor) -> Result<Report> {
    let e = NDiffModule::<F>::from_json(v)?;
    let h = e.homology();
    let mut r = Report::new(
        "homology",
        format!("H_(m) of a {}-dimensional module with N = {} over {}", e.dim(), e.n(), field.name()),
        vec!["m", "dim Z", "dim B", "dim H"],
    );
    let mut pieces = Vec::new();
    for d in h.dims() {
        r.row(vec![d.m.to_string(), d.dim_z.to_string(), d.dim_b.to_string(), d.dim_h.to_string()]);
        let reps: Vec<Value> = h.piece(d.m).representatives().iter().map(|x| dense(x, e.dim())).collect();
        pieces.push(json!({ "m": d.m, "dim_z": d.dim_z, "dim_b": d.dim_b, "dim_h": d.dim_h, "representatives": reps }));
    }
    r.body = json!({ "N": e.n(), "dim": e.dim(), "field": field.name(), "pieces": pieces });
    Ok(r)
}

fn multiplicities<F: Field>(v: &Value) -> Result<Report> {
    let e = NDiffModule::<F>::from_json(v)?;
    let rep = proposition4_check(&e)?;
    let mut r = Report::new(
        "multiplicities",
        format!("multiplicities m_1..m_N = {:?}", rep.multiplicities),
        vec!["k", "formula", "dim H_(k)", "dim H_(N-k)"],
    );
    for row in &rep.rows {
        r.row(vec![row.k.to_string(), row.formula.to_string(), row.dim_h_k.to_string(), row.dim_h_n_minus_k.to_string()]);
    }
    r.holds = Some(rep.holds);
    r.body = serde_json::to_value(&rep).expect("serializable");
    r.witness = Some(v.clone());
    Ok(r)
}

fn hexagon_rows(r: &mut Report, reports: &[(String, &ncx_core::ndiff::ExactnessReport)]) {
    for (name, ex) in reports {
        for vtx in &ex.vertices {
            r.row(vec![
                name.clone(),
                vtx.vertex.clone(),
                vtx.dim.to_string(),
                vtx.rank_in.to_string(),
                vtx.rank_out.to_string(),
                yn(vtx.exact),
            ]);
        }
    }
}

fn hexagon<F: Field>(v: &Value, l: Option<usize>, m: Option<usize>) -> Result<Report> {
    let e = NDiffModule::<F>::from_json(v)?;
    let reports: Vec<HexagonReport> = match (l, m) {
        (Some(l), Some(m)) => vec![hexagon_check(&e, &e.homology(), l, m)?],
        (None, None) => all_hexagons(&e)?,
        _ => return Err(input("give both --l and --m, or neither")),
    };
    let mut r = Report::new(
        "hexagon",
        format!("{} hexagon(s) for N = {}", reports.len(), e.n()),
        vec!["(l,m)", "vertex", "dim", "rank in", "rank out", "exact"],
    );
    let named: Vec<(String, &_)> = reports.iter().map(|h| (format!("({},{})", h.l, h.m), &h.exactness)).collect();
    hexagon_rows(&mut r, &named);
    r.holds = Some(reports.iter().all(|h| h.exactness.exact));
    r.body = json!({ "N": e.n(), "hexagons": reports });
    r.witness = Some(v.clone());
    Ok(r)
}

fn ses<F: Field>(v: &Value, relifts: usize, seed: u64) -> Result<Report> {
    let module = |k: &str| NDiffModule::<F>::from_json(&v[k]).map_err(|e| input(format!("\"{k}\": {e}")));
    let matrix = |k: &str| ncx_core::linalg::ExactMatrix::<F>::from_json(&v[k]).map_err(|e| input(format!("\"{k}\": {e}")));
    let s = ShortExactSequence::new(module("E")?, module("F")?, module("G")?, matrix("phi")?, matrix("psi")?)?;
    let hex = ses_hexagon_check(&s)?;
    let (he, hg) = (s.e.homology(), s.g.homology());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut connecting = Vec::new();
    for m in 1..s.n() {
        let mut ok = true;
        for _ in 0..relifts {
            ok &= connecting_is_well_defined(&s, &hg, &he, m, &mut rng)?;
        }
        connecting.push(json!({ "m": m, "well_defined": ok }));
    }
    let well_defined = connecting.iter().all(|c| c["well_defined"] == json!(true));
    let mut r = Report::new(
        "ses",
        format!("short exact sequence, N = {}; ∂ well-defined over {relifts} re-lifts: {}", s.n(), yn(well_defined)),
        vec!["hexagon", "vertex", "dim", "rank in", "rank out", "exact"],
    );
    let named: Vec<(String, &_)> = hex.iter().map(|h| (format!("n={}", h.n), &h.exactness)).collect();
    hexagon_rows(&mut r, &named);
    r.holds = Some(well_defined && hex.iter().all(|h| h.exactness.exact));
    r.body = json!({ "N": s.n(), "hexagons": hex, "connecting": connecting });
    r.witness = Some(v.clone());
    Ok(r)
}

// ---- cosimplicial ----

fn algebra_and_q(alg: &AlgebraArgs) -> Result<(AlgebraData<Cyc>, Cyc, Value)> {
    let (a, v) = match &alg.algebra {
        Some(p) => {
            let v = read_json(p)?;
            (AlgebraData::<Cyc>::from_json(&v)?, v)
        }
        None => {
            let a = AlgebraData::<Cyc>::dual_numbers();
            let v = a.to_json();
            (a, v)
        }
    };
    let q = match &alg.q {
        Some(s) => parse_scalar(s)?,
        None => Cyc::root_of_unity(alg.n as u32, 1),
    };
    Ok((a, q, v))
}

fn cosimplicial(alg: &AlgebraArgs, nmax: usize) -> Result<Report> {
    let (a, q, _) = algebra_and_q(alg)?;
    let e = hochschild(&a, &Bimodule::regular(&a)?, nmax)?;
    let mut r = Report::new(
        "cosimplicial",
        format!("Hochschild cochains of a {}-dimensional algebra, N = {}, q = {q}, levels 0..={nmax}", a.dim(), alg.n),
        vec!["differential", "degree", "m", "dim"],
    );
    let mut table = Vec::new();
    for (name, c) in [("d0", e.d0(&q, alg.n)?), ("d1", e.d1(&q, alg.n)?)] {
        for row in c.homology().table() {
            r.row(vec![name.into(), row.degree.to_string(), row.m.to_string(), opt(row.dim)]);
            table.push(json!({ "differential": name, "degree": row.degree, "m": row.m, "dim": row.dim }));
        }
    }
    r.body = json!({ "N": alg.n, "q": q.to_string(), "levels": e.dims(), "cohomology": table });
    Ok(r)
}

fn theorem2(alg: &AlgebraArgs, window: usize) -> Result<Report> {
    let (a, q, v) = algebra_and_q(alg)?;
    let e = hochschild(&a, &Bimodule::regular(&a)?, window + alg.n - 1)?;
    let rep = theorem2_verify(&e, &q, alg.n, window)?;
    let mut r = Report::new(
        "theorem2",
        format!("d₀/d₁ cohomology against HH, N = {}, degrees 0..={window}", alg.n),
        vec!["differential", "degree", "m", "computed", "predicted"],
    );
    for row in &rep.rows {
        r.row(vec![row.differential.into(), row.degree.to_string(), row.m.to_string(), row.computed.to_string(), row.predicted.to_string()]);
    }
    r.holds = Some(rep.holds);
    r.body = serde_json::to_value(&rep).expect("serializable");
    r.witness = Some(json!({ "algebra": v, "q": q.to_string(), "N": alg.n }));
    Ok(r)
}

fn prop7(alg: &AlgebraArgs, window: usize) -> Result<Report> {
    let (a, q, v) = algebra_and_q(alg)?;
    let rep = prop7_verify(&a, &q, alg.n, window)?;
    let mut r = Report::new(
        "prop7",
        format!("tensor algebra and Ω_q, N = {}, degrees 0..={window}", alg.n),
        vec!["complex", "degree", "k", "dim", "expected"],
    );
    for row in &rep.rows {
        r.row(vec![row.complex.into(), row.degree.to_string(), row.k.to_string(), row.dim.to_string(), row.expected.to_string()]);
    }
    r.holds = Some(rep.holds);
    r.body = serde_json::to_value(&rep).expect("serializable");
    r.witness = Some(json!({ "algebra": v, "q": q.to_string(), "N": alg.n }));
    Ok(r)
}

// ---- tensor fields ----

fn poincare(n: usize, d: usize, k: Option<usize>, wmax: usize) -> Result<Report> {
    let omega = OmegaN::<Q>::new(n, d, (n - 1).saturating_mul(d))?;
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (1..n).collect(),
    };
    let reports = ks.iter().map(|&k| poincare_verify(&omega, k, wmax)).collect::<ncx_core::Result<Vec<_>>>()?;
    let off: usize = reports.iter().map(|x| x.off_lattice.len()).sum();
    let mut r = Report::new(
        "poincare",
        format!("Ω_{n}(ℝ^{d}), weights ≤ {wmax}; {off} nonzero class(es) off the (N−1)ℕ lattice"),
        vec!["k", "weight", "p", "dim"],
    );
    for rep in &reports {
        for row in rep.rows.iter().filter(|x| x.dim > 0) {
            r.row(vec![row.k.to_string(), row.weight.to_string(), row.p.to_string(), row.dim.to_string()]);
        }
    }
    r.holds = Some(reports.iter().all(|x| x.holds));
    r.body = json!({ "N": n, "D": d, "w_max": wmax, "reports": reports });
    r.witness = Some(json!({ "N": n, "D": d, "k": ks, "w_max": wmax }));
    Ok(r)
}

fn spin_seq(s: usize, d: usize, wmax: usize) -> Result<Report> {
    let rep = spin_sequence_check::<Q>(s, d, wmax)?;
    let mut r = Report::new(
        "spin-seq",
        format!("spin {s} in D = {d}: Ω^{} → Ω^{s} → Ω^{} → Ω^{}", s - 1, 2 * s, 2 * s + 1),
        vec!["weight", "dims", "rank in", "rank mid", "rank out", "exact at S", "exact at 2S"],
    );
    for row in &rep.rows {
        r.row(vec![
            row.weight.to_string(),
            format!("{:?}", row.dims),
            row.rank_in.to_string(),
            row.rank_curvature.to_string(),
            row.rank_out.to_string(),
            yn(row.exact_at_s),
            yn(row.exact_at_2s),
        ]);
    }
    r.holds = Some(rep.holds);
    r.body = serde_json::to_value(&rep).expect("serializable");
    r.witness = Some(json!({ "S": s, "D": d, "w_max": wmax }));
    Ok(r)
}

fn potential(source: Option<&Path>, degree: usize, seed: u64) -> Result<Report> {
    let t: Vec<Vec<Poly<Q>>> = match source {
        Some(p) => {
            let v = read_json(p)?;
            let rows = v.as_array().filter(|a| a.len() == 3).ok_or_else(|| input("T must be a 3×3 list of polynomials"))?;
            rows.iter()
                .map(|row| {
                    let row = row.as_array().filter(|a| a.len() == 3).ok_or_else(|| input("T must be a 3×3 list of polynomials"))?;
                    row.iter().map(|x| Ok(Poly::from_json(x, 3)?)).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?
        }
        None => random_divergence_free::<Q, _>(&mut ChaCha8Rng::seed_from_u64(seed), degree),
    };
    let t_json = json!(t.iter().map(|row| row.iter().map(Poly::to_json).collect::<Vec<_>>()).collect::<Vec<_>>());
    let sol = potential_solve(&t)?;
    let symmetric = has_riemann_symmetry(&sol.r);
    let reproduces = double_divergence(&sol.r) == t;
    let mut r = Report::new(
        "potential",
        format!("R = {}·εε∂∂ρ; curvature symmetries: {}; ∂∂R = T: {}", sol.scale, yn(symmetric), yn(reproduces)),
        vec!["component", "R"],
    );
    let mut comps = Vec::new();
    for (idx, p) in sol.r.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
        let name = format!("{}{}{}{}", idx / 27 + 1, idx / 9 % 3 + 1, idx / 3 % 3 + 1, idx % 3 + 1);
        r.row(vec![name.clone(), poly_text(p)]);
        comps.push(json!({ "index": name, "poly": p.to_json() }));
    }
    r.holds = Some(symmetric && reproduces);
    r.body = json!({ "T": t_json, "scale": sol.scale.to_string(), "R": comps, "riemann_symmetry": symmetric, "reproduces_T": reproduces });
    r.witness = Some(t_json);
    Ok(r)
}

// ---- ghosts and gauge ----

fn brs(system: Option<&Path>, example: Option<&str>, wmax: i64) -> Result<Report> {
    let sys: PolyConstraintSystem<Q> = match (system, example) {
        (Some(p), None) => PolyConstraintSystem::from_json(&read_json(p)?)?,
        (None, Some("abelian")) => examples::abelian_model(2, 2),
        (None, Some(_)) => examples::syzygy_model(),
        _ => return Err(input("give a system file or --example, not both")),
    };
    let rep = theorem4_verify(&sys, wmax)?;
    let mut r = Report::new(
        "brs",
        format!("ghost complex, δ tower up to δ_{}, Koszul acyclic: {}", rep.tower_top, yn(rep.koszul_acyclic)),
        vec!["weight", "degree", "H(δ)", "longitudinal"],
    );
    for row in &rep.rows {
        r.row(vec![row.weight.to_string(), row.degree.to_string(), row.brs.to_string(), row.longitudinal.to_string()]);
    }
    r.holds = Some(rep.holds);
    r.body = serde_json::to_value(&rep).expect("serializable");
    r.witness = Some(sys.to_json());
    Ok(r)
}

fn gauge_instance(v: Value) -> Result<Report> {
    let g = GaugeInstance::<Cyc>::from_json(&v)?;
    let rep = gauge::theorem5_verify(&g)?;
    let mut r = Report::new(
        "gauge-ext",
        format!("N = {}, dim ℋ = {}, dim ℋ_I = {}, dim ℋ• = {}", rep.n, rep.dim_h, rep.dim_hi, rep.dim_extended),
        vec!["k", "H_(k)(ℋ•, Q)", "H_(k)(ℋ_I, A)", "classes independent"],
    );
    for row in &rep.rows {
        r.row(vec![row.k.to_string(), row.extended.to_string(), row.invariant.to_string(), yn(row.injective)]);
    }
    r.holds = Some(rep.holds);
    r.body = serde_json::to_value(&rep).expect("serializable");
    r.witness = Some(v);
    Ok(r)
}

fn gauge_hochschild(which: &str, nmax: usize) -> Result<Report> {
    let (u, g, action) = if which == "z2" { gauge::examples::z2_example()? } else { gauge::examples::synthetic_example()? };
    let witness = g.to_json(&make_cyclotomic(2 * g.n() as u32));
    let rep = gauge::theorem6_verify(&u, &g, action, nmax)?;
    let mut r = Report::new(
        "gauge-ext",
        format!(
            "Hochschild version ({which}), levels ≤ {nmax}: coefficient identity {}, window-stable {}",
            yn(rep.coefficient_identity),
            yn(rep.window_stable)
        ),
        vec!["k", "F⁰H_(k)", "at nmax+1", "H_(k)(ℋ_I, A)", "injective"],
    );
    for row in &rep.rows {
        r.row(vec![row.k.to_string(), row.f0.to_string(), row.f0_next.to_string(), row.invariant.to_string(), yn(row.injective)]);
    }
    r.holds = Some(rep.holds);
    r.body = serde_json::to_value(&rep).expect("serializable");
    r.witness = Some(json!({ "example": which, "instance": witness, "n_max": nmax }));
    Ok(r)
}

fn momentum(s: &str) -> Result<Momentum> {
    let parts = s.split(',').map(|x| x.trim().parse::<Rational>()).collect::<ncx_core::Result<Vec<_>>>()?;
    let arr: [Rational; 4] = parts.try_into().map_err(|_| input(format!("momentum {s:?} needs four components")))?;
    Ok(Momentum::new(arr)?)
}

fn spin_example(spin: usize, p: &str, alpha: &str, two: Option<&str>) -> Result<Report> {
    let p1 = momentum(p)?;
    if let Some(p2) = two {
        let p2 = momentum(p2)?;
        let rep = gauge::two_particle_study::<Q>(&p1, &p2)?;
        let mut r = Report::new("spin-example", format!("two particles at ({p}) and ({})", two.unwrap_or("")), vec!["quantity", "value"]);
        for (k, v) in [
            ("dim", rep.dim.to_string()),
            ("Q12^2 != 0", yn(rep.square_nonzero)),
            ("Q12^3 = 0", yn(rep.cube_zero)),
            ("dim H_(1)", rep.h1.to_string()),
            ("dim H_(2)", rep.h2.to_string()),
            ("dim Z(p1)⊗Z(p2)", rep.zz.to_string()),
            ("dim H(p1)⊗H(p2)", rep.physical.to_string()),
        ] {
            r.row(vec![k.into(), v]);
        }
        r.holds = Some(rep.holds);
        r.body = serde_json::to_value(&rep).expect("serializable");
        return Ok(r);
    }
    let a = parse_scalar(alpha)?;
    let c = match spin {
        1 => gauge::spin1_complex(&p1, a)?,
        2 => gauge::spin2_complex(&p1, a)?,
        _ => return Err(input("--spin must be 1 or 2")),
    };
    let rep = c.report();
    let mut r = Report::new(
        "spin-example",
        format!(
            "spin {spin} at p = ({p}): δ² = 0 {}, δ hermitian {}, dim Z⁰ = {}, dim B⁰ = {}",
            yn(rep.delta_squared_zero),
            yn(rep.delta_hermitian),
            rep.z0,
            rep.b0
        ),
        vec!["degree", "dim C", "dim H"],
    );
    for (i, deg) in [-1, 0, 1].iter().enumerate() {
        r.row(vec![deg.to_string(), rep.components[i].to_string(), rep.homology[i].to_string()]);
    }
    r.holds = Some(rep.holds);
    r.body = serde_json::to_value(&rep).expect("serializable");
    r.witness = Some(json!({ "spin": spin, "p": p, "alpha": alpha }));
    Ok(r)
}

// ---- acceptance ----

fn gauge_suite(trials: usize, seed: u64) -> Report {
    let out = acceptance::random_gauge_suite(trials, seed);
    let mut r = Report::new(
        "gauge-ext",
        format!("{trials} random gauge instances, seed {seed}"),
        vec!["trials", "seed", "holds", "detail"],
    );
    r.row(vec![trials.to_string(), seed.to_string(), yn(out.passed), out.detail.clone()]);
    r.holds = Some(out.passed);
    r.witness = out.artifact.clone().filter(|_| !out.passed);
    r.body = json!({ "suite": "random", "trials": trials, "seed": seed, "detail": out.detail });
    r
}

fn selftest(seed: u64, only: &[usize]) -> Result<Report> {
    let all = acceptance::criteria();
    if let Some(bad) = only.iter().find(|id| !all.iter().any(|c| c.id == **id)) {
        return Err(input(format!("no criterion {bad}; ids run 1..={}", all.len())));
    }
    let mut r = Report::new(
        "selftest",
        format!("acceptance suite, seed {seed}, {} worker thread(s)", acceptance::thread_count()),
        vec!["id", "criterion", "status", "seconds", "limit", "detail"],
    );
    let mut results = Vec::new();
    for c in all.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let res = acceptance::run_criterion(c, seed);
        r.row(vec![
            res.id.to_string(),
            res.name.into(),
            if res.ok() { "PASS" } else { "FAIL" }.into(),
            format!("{:.2}", res.seconds),
            res.limit_seconds.to_string(),
            res.detail.clone(),
        ]);
        results.push(res);
    }
    let failing: serde_json::Map<String, Value> = results
        .iter()
        .filter(|x| !x.ok())
        .map(|x| (x.id.to_string(), x.artifact.clone().unwrap_or(json!({ "seed": seed, "criterion": x.id }))))
        .collect();
    r.holds = Some(failing.is_empty());
    r.witness = (!failing.is_empty()).then(|| Value::Object(failing));
    r.body = json!({ "seed": seed, "criteria": results });
    Ok(r)
}
