use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use morozov_core::fixtures::{self, SubspaceInput};
use morozov_core::gfp::Subspace;
use morozov_core::hnslope::{self, HNFiltration};
use morozov_core::kempf::{self, KempfConfig};
use morozov_core::liealg::{Family, LieAlgebra};
use morozov_core::morozov::{self, TowerStatus};
use morozov_core::parabolic::{self, ParabolicStatus};
use morozov_core::radicals::{self, RadicalConfig, Strategy, DEFAULT_BUDGET};
use morozov_core::rootdata::{self, CartanType, RootDatum};
use morozov_core::{suite, Error};
use serde_json::{json, Value};

use crate::{
    AlgebraCmd, AlgebraSpec, Cli, Command, FixturesCmd, Global, HnCmd, KempfCmd, ParabolicCmd, PrimeCmd,
    RadicalCmd, SubspaceArgs, SuiteCmd, TowerCmd,
};

pub const OK: u8 = 0;
pub const FAILED: u8 = 1;
pub const UNDETERMINED: u8 = 2;
pub const INPUT_ERROR: u8 = 3;

pub struct Output {
    pub text: String,
    pub code: u8,
}

struct CliError {
    code: u8,
    msg: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_undetermined() { UNDETERMINED } else { INPUT_ERROR };
        CliError {
            code,
            msg: e.to_string(),
        }
    }
}

fn input_error(msg: impl Into<String>) -> CliError {
    CliError {
        code: INPUT_ERROR,
        msg: msg.into(),
    }
}

/// Result of a command: exit code, JSON payload and text rendering.
struct Done {
    code: u8,
    result: Value,
    text: String,
}

fn status_name(code: u8) -> &'static str {
    match code {
        OK => "ok",
        FAILED => "failed",
        UNDETERMINED => "undetermined",
        _ => "error",
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Algebra(_) => "algebra build",
        Command::Tower(_) => "tower run",
        Command::Kempf(_) => "kempf optimize",
        Command::Parabolic(_) => "parabolic detect",
        Command::Radical(_) => "radical compute",
        Command::Prime(_) => "prime classify",
        Command::Hn(_) => "hn check",
        Command::Fixtures(_) => "fixtures paper",
        Command::Suite(_) => "suite run",
    }
}

pub fn dispatch(cli: &Cli) -> Output {
    let g = &cli.global;
    let name = command_name(&cli.command);
    let res = match &cli.command {
        Command::Algebra(AlgebraCmd::Build { algebra }) => algebra_build(algebra),
        Command::Tower(TowerCmd::Run { input }) => tower_run(g, input),
        Command::Kempf(KempfCmd::Optimize { input }) => kempf_optimize(g, input),
        Command::Parabolic(ParabolicCmd::Detect { input }) => parabolic_detect(g, input),
        Command::Radical(RadicalCmd::Compute { input, strategy }) => radical_compute(g, input, strategy),
        Command::Prime(PrimeCmd::Classify { cartan_type, p }) => prime_classify(cartan_type, *p),
        Command::Hn(HnCmd::Check { filtration, p, dim }) => hn_check(filtration, *p, *dim),
        Command::Fixtures(FixturesCmd::Paper { out }) => fixtures_write(out),
        Command::Suite(SuiteCmd::Run { only }) => suite_run(g, only),
    };
    let (code, body, text) = match res {
        Ok(d) => (d.code, json!({ "result": d.result }), d.text),
        Err(e) => (e.code, json!({ "error": e.msg }), format!("{}: {}\n", status_name(e.code), e.msg)),
    };
    let text = if g.json {
        let mut env = json!({
            "schema": 1,
            "command": name,
            "seed": g.seed,
            "status": status_name(code),
        });
        if let (Value::Object(m), Value::Object(b)) = (&mut env, body) {
            m.extend(b);
        }
        let mut s = serde_json::to_string_pretty(&env).expect("serializable");
        s.push('\n');
        s
    } else {
        format!("seed: {}\n{text}", g.seed)
    };
    Output { text, code }
}

fn parse_family(s: &str) -> Result<Family, CliError> {
    s.parse::<Family>().map_err(|e| input_error(e.to_string()))
}

fn build_algebra(spec: &AlgebraSpec, file: Option<&SubspaceInput>) -> Result<LieAlgebra, CliError> {
    let family = match &spec.family {
        Some(f) => Some(parse_family(f)?),
        None => None,
    };
    let pick = |flag: Option<String>, from_file: Option<String>, what: &str| match (flag, from_file) {
        (Some(a), Some(b)) if a != b => Err(input_error(format!("--{what} {a} disagrees with the subspace file ({b})"))),
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Err(input_error(format!("--{what} is required"))),
    };
    let f = file;
    let fam = pick(
        family.map(|x| x.to_string()),
        f.and_then(|f| f.family).map(|x| x.to_string()),
        "family",
    )?;
    let n = pick(spec.n.map(|x| x.to_string()), f.and_then(|f| f.n).map(|x| x.to_string()), "n")?;
    let p = pick(spec.p.map(|x| x.to_string()), f.and_then(|f| f.p).map(|x| x.to_string()), "p")?;
    let fam = parse_family(&fam)?;
    let n: usize = n.parse().map_err(|_| input_error("bad --n"))?;
    let p: u32 = p.parse().map_err(|_| input_error("bad --p"))?;
    Ok(LieAlgebra::build(fam, n, p)?)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_subspace(input: &SubspaceArgs) -> Result<(LieAlgebra, Subspace), CliError> {
    let raw = read(&input.subspace)?;
    let file = SubspaceInput::from_json_str(&raw)
        .map_err(|e| input_error(format!("{}: {e}", input.subspace.display())))?;
    let g = build_algebra(&input.algebra, Some(&file))?;
    let s = file
        .resolve(&g)
        .map_err(|e| input_error(format!("{}: {e}", input.subspace.display())))?;
    Ok((g, s))
}

fn radical_config(g: &Global, strategy: Strategy) -> Result<RadicalConfig, CliError> {
    let budget = match g.budget {
        Some(0) => return Err(input_error("--budget must be positive")),
        Some(b) => b,
        None => DEFAULT_BUDGET,
    };
    Ok(RadicalConfig {
        budget,
        strategy,
        seed: g.seed,
    })
}

fn kempf_config(g: &Global) -> Result<KempfConfig, CliError> {
    match g.bound {
        Some(b) if b <= 0 => Err(input_error("--bound must be positive")),
        b => Ok(KempfConfig { bound: b }),
    }
}

fn algebra_name(g: &LieAlgebra) -> String {
    match g.frame() {
        Some(f) => format!("{}{} over GF({})", f.family, f.n, g.p()),
        None => format!("algebra of dim {} over GF({})", g.dim(), g.p()),
    }
}

/// `2·e12 + e23` style rendering of an element.
fn render(g: &LieAlgebra, v: &[u32]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let l = &g.labels()[i];
            if c == 1 {
                l.clone()
            } else {
                format!("{c}·{l}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn render_space(g: &LieAlgebra, s: &Subspace) -> String {
    let b: Vec<String> = s.basis().iter().map(|v| render(g, v)).collect();
    format!("dim {} <{}>", s.dim(), b.join(", "))
}

fn space_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": s.as_i64() })
}

fn algebra_build(spec: &AlgebraSpec) -> Result<Done, CliError> {
    let g = build_algebra(spec, None)?;
    let j = g.to_json();
    let text = format!("{}: dim {}\nbasis: {}\n", algebra_name(&g), g.dim(), g.labels().join(" "));
    Ok(Done {
        code: OK,
        result: serde_json::to_value(j).expect("serializable"),
        text,
    })
}

fn tower_run(gl: &Global, input: &SubspaceArgs) -> Result<Done, CliError> {
    let (g, u0) = load_subspace(input)?;
    let cfg = radical_config(gl, Strategy::Auto)?;
    let kcfg = kempf_config(gl)?;
    if gl.max_steps == Some(0) {
        return Err(input_error("--max-steps must be positive"));
    }
    let t = morozov::run_tower(&g, &u0, gl.max_steps, &cfg)?;
    let rep = morozov::verify_morozov(&g, &t, &cfg, &kcfg);
    let code = if t.status != TowerStatus::Stabilized {
        UNDETERMINED
    } else if rep.any_fail() {
        FAILED
    } else if rep.all_pass() {
        OK
    } else {
        UNDETERMINED
    };
    let steps: Vec<Value> = t
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            json!({
                "step": i + 1,
                "dim_u": s.dim_u,
                "dim_q": s.dim_q,
                "u": space_json(&s.u),
                "q": space_json(&s.q),
                "radical_method": s.radicals.method_used,
            })
        })
        .collect();
    let mut text = format!("{}\nu0: {}\n", algebra_name(&g), render_space(&g, &u0));
    for (i, s) in t.steps.iter().enumerate() {
        let _ = writeln!(text, "step {}: dim u = {}, dim q = {}", i + 1, s.dim_u, s.dim_q);
    }
    let _ = writeln!(text, "status: {:?}, stabilized at {:?}", t.status, t.stabilized_at);
    if let Some((u, q)) = t.limit() {
        let _ = writeln!(text, "u_inf: {}", render_space(&g, u));
        let _ = writeln!(text, "q_inf: {}", render_space(&g, q));
    }
    for c in &rep.checks {
        let _ = writeln!(
            text,
            "check {}: {:?}{}",
            c.name,
            c.status,
            c.detail.as_ref().map_or(String::new(), |d| format!(" ({d})"))
        );
    }
    Ok(Done {
        code,
        result: json!({
            "algebra": algebra_name(&g),
            "u0": space_json(&u0),
            "status": t.status,
            "stabilized_at": t.stabilized_at,
            "max_steps": t.max_steps,
            "steps": steps,
            "checks": rep.checks,
        }),
        text,
    })
}

fn kempf_optimize(gl: &Global, input: &SubspaceArgs) -> Result<Done, CliError> {
    let (g, u) = load_subspace(input)?;
    let kcfg = kempf_config(gl)?;
    let cert = kempf::optimize(&g, &u, &kcfg)?;
    let (pg, ug, cg) = kempf::parabolic_from_cochar(&g, &cert.lambda);
    let rep = kempf::verify_obstruction(&g, &u, &cert);
    let diag = kempf::diagonal_exponents(&g, &cert.lambda)?;
    let mut text = format!(
        "{}\nlambda = {:?} (diagonal exponents {:?})\nalpha = {}, alpha²/|lambda|² = {}/{}\nsearch: |lambda|² <= {}, {} lattice points\n",
        algebra_name(&g),
        cert.lambda.coords,
        diag,
        cert.alpha,
        cert.ratio_num,
        cert.ratio_den,
        cert.search_bound * cert.search_bound,
        cert.enumerated_count
    );
    if !cert.ties.is_empty() {
        let _ = writeln!(text, "ties: {:?}", cert.ties);
    }
    let _ = writeln!(text, "p_g(lambda): {}", render_space(&g, &pg));
    let _ = writeln!(text, "u_g(lambda): {}", render_space(&g, &ug));
    for c in &rep.checks {
        let _ = writeln!(text, "check {}: {:?}", c.name, c.status);
    }
    Ok(Done {
        code: OK,
        result: json!({
            "algebra": algebra_name(&g),
            "certificate": cert,
            "diagonal_exponents": diag,
            "p_g": space_json(&pg),
            "u_g": space_json(&ug),
            "c_g": space_json(&cg),
            "checks": rep.checks,
        }),
        text,
    })
}

fn parabolic_detect(gl: &Global, input: &SubspaceArgs) -> Result<Done, CliError> {
    let (g, q) = load_subspace(input)?;
    let v = parabolic::detect_parabolic(&g, &q, gl.seed);
    let borel = parabolic::contains_borel(&g, &q).ok();
    let killing = if g.killing_nondegenerate() {
        parabolic::killing_detector(&g, &q, gl.seed).ok()
    } else {
        None
    };
    let code = match v.status {
        ParabolicStatus::Parabolic => OK,
        ParabolicStatus::NotParabolic => FAILED,
        ParabolicStatus::Undetermined => UNDETERMINED,
    };
    let mut text = format!("{}\nq: {}\n", algebra_name(&g), render_space(&g, &q));
    let _ = writeln!(text, "status: {:?}", v.status);
    if let Some(r) = v.failure_reason {
        let _ = writeln!(text, "failure reason: {r:?}");
    }
    if let Some(rs) = &v.root_subset {
        let _ = writeln!(text, "root subset: {rs:?}");
    }
    let _ = writeln!(text, "contains a frame Borel: {}", borel.map_or("unknown".into(), |b| b.to_string()));
    match &killing {
        Some(k) => {
            let _ = writeln!(text, "Killing detector: {:?}", k.status);
        }
        None => {
            let _ = writeln!(text, "Killing detector: not applicable");
        }
    }
    Ok(Done {
        code,
        result: json!({
            "algebra": algebra_name(&g),
            "q": space_json(&q),
            "verdict": {
                "status": v.status,
                "failure_reason": v.failure_reason,
                "root_subset": v.root_subset,
                "torus_used": v.torus_used.as_ref().map(space_json),
            },
            "contains_borel": borel,
            "killing": killing.map(|k| json!({
                "status": k.status,
                "perp": space_json(&k.perp),
                "perp_is_subalgebra": k.perp_is_subalgebra,
                "perp_is_nilpotent": k.perp_is_nilpotent,
                "normalizer_of_perp_matches": k.normalizer_of_perp_matches,
            })),
        }),
        text,
    })
}

fn radical_compute(gl: &Global, input: &SubspaceArgs, strategy: &str) -> Result<Done, CliError> {
    let strategy = match strategy {
        "auto" => Strategy::Auto,
        "structured" => Strategy::Structured,
        "enumeration" => Strategy::Enumeration,
        s => return Err(input_error(format!("unknown strategy {s:?}"))),
    };
    let (g, h) = load_subspace(input)?;
    if !g.is_subalgebra(&h) {
        return Err(input_error("the subspace is not a subalgebra"));
    }
    let cfg = radical_config(gl, strategy)?;
    let r = radicals::radicals(&g, &h, &cfg)?;
    let mut text = format!("{}\nh: {}\n", algebra_name(&g), render_space(&g, &h));
    let _ = writeln!(text, "rad: {}", render_space(&g, &r.rad));
    let _ = writeln!(text, "nil: {}", render_space(&g, &r.nil));
    let _ = writeln!(text, "rad_p: {}", render_space(&g, &r.rad_p));
    let _ = writeln!(text, "method: {:?}", r.method_used);
    Ok(Done {
        code: OK,
        result: json!({
            "algebra": algebra_name(&g),
            "h": space_json(&h),
            "rad": space_json(&r.rad),
            "nil": space_json(&r.nil),
            "rad_p": space_json(&r.rad_p),
            "p_nilpotent_cone_is_subspace": r.p_nilpotent_cone_is_subspace,
            "method_used": r.method_used,
            "budget": r.budget.to_string(),
        }),
        text,
    })
}

fn prime_classify(label: &str, p: u64) -> Result<Done, CliError> {
    let t: CartanType = label.parse()?;
    let rd = RootDatum::build(t)?;
    let c = rootdata::classify_prime(&rd, p)?;
    let text = format!(
        "{t} p={p}: torsion {}, bad {}, good {}, very good {}, separably good {}, Coxeter number {}\n",
        c.is_torsion, c.is_bad, c.is_good, c.is_very_good, c.is_separably_good, c.coxeter_number
    );
    Ok(Done {
        code: OK,
        result: serde_json::to_value(&c).expect("serializable"),
        text,
    })
}

fn hn_check(path: &Path, p: Option<u64>, dim: Option<u64>) -> Result<Done, CliError> {
    let raw = read(path)?;
    let f = HNFiltration::from_json_str(&raw).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let dual = hnslope::dual_pattern(&f)?;
    let hn = hnslope::verify_hn(&f);
    let dim = dim.unwrap_or_else(|| f.rank());
    let e0 = p.map(|p| hnslope::e0_preconditions(&f, p, dim));
    let pass = hn && dual.passes() && e0.as_ref().is_none_or(|e| e.passes());
    let slopes: Vec<String> = f.slopes().iter().map(|s| s.to_string()).collect();
    let mut text = format!("slopes: {}\nstrictly decreasing: {hn}\n", slopes.join(", "));
    let _ = writeln!(text, "dual pattern: {}", if dual.passes() { "pass" } else { "fail" });
    for m in &dual.mismatches {
        let _ = writeln!(text, "  index {}: {}", m.index, m.what);
    }
    if let Some(e) = &e0 {
        let _ = writeln!(
            text,
            "E_0 preconditions: below positive {}, above negative {}, slope at E_0 is zero {}, first nonpositive {}, chain {}, rank = dim {}, p > 2 dim - 2 {}",
            e.below_positive,
            e.above_negative,
            e.zero_index_slope_zero,
            e.zero_index_first_nonpositive,
            e.chain_holds,
            e.rank_matches_dim,
            e.tensor_identity_licensed
        );
    }
    Ok(Done {
        code: if pass { OK } else { FAILED },
        result: json!({
            "slopes": slopes,
            "strictly_decreasing": hn,
            "dual_pattern": dual,
            "e0_preconditions": e0,
        }),
        text,
    })
}

fn fixtures_write(out: &Path) -> Result<Done, CliError> {
    fs::create_dir_all(out).map_err(|e| input_error(format!("{}: {e}", out.display())))?;
    let mut files = Vec::new();
    let mut text = String::new();
    for (name, content) in fixtures::shipped_fixtures() {
        let path = out.join(name);
        fs::write(&path, content).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        let _ = writeln!(text, "wrote {}", path.display());
        files.push(name);
    }
    Ok(Done {
        code: OK,
        result: json!({ "files": files }),
        text,
    })
}

fn suite_run(gl: &Global, only: &[u8]) -> Result<Done, CliError> {
    if let Some(bad) = only.iter().find(|&&i| !(1..=10).contains(&i)) {
        return Err(input_error(format!("no criterion {bad}")));
    }
    let ids: Vec<u8> = if only.is_empty() {
        suite::CRITERIA.iter().map(|c| c.0).collect()
    } else {
        only.to_vec()
    };
    let outcomes: Vec<suite::CriterionOutcome> = ids.iter().map(|&i| suite::run(i, gl.seed)).collect();
    let mut text = String::new();
    for o in &outcomes {
        let _ = writeln!(
            text,
            "criterion {:>2} {} {} ({} ms, limit {} s)",
            o.id,
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.elapsed.as_millis(),
            o.time_limit_secs
        );
        for d in &o.details {
            let _ = writeln!(text, "    {d}");
        }
    }
    let code = if outcomes.iter().all(|o| o.passed) { OK } else { FAILED };
    Ok(Done {
        code,
        result: json!({ "criteria": outcomes }),
        text,
    })
}
