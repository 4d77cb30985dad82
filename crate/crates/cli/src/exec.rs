//! Session execution: name environment, expression evaluation, and the
//! compute/verify dispatch.

use crate::ast::{Arg, Expr, FieldSpec, Pos, Script, Stmt};
use crate::verify;
use eulerform_core::asymptotics::{self, Confidence};
use eulerform_core::field::Field;
use eulerform_core::hilbert;
use eulerform_core::homology::{self, Functor};
use eulerform_core::invariants::{self, Outcome};
use eulerform_core::module::GradedModule;
use eulerform_core::poly::Polynomial;
use eulerform_core::resolution;
use eulerform_core::ring::{PolyRing, Ring};
use eulerform_core::vector::FreeVector;
use eulerform_core::Error as CoreError;
use serde_json::{json, Value as Json};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub format: Format,
    pub seed: u64,
    pub bound: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            format: Format::Table,
            seed: 1,
            bound: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    Skipped,
    Failed,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Ok => write!(f, "ok"),
            Status::Skipped => write!(f, "skipped"),
            Status::Failed => write!(f, "failed"),
            Status::Error => write!(f, "error"),
        }
    }
}

/// One executed statement: request echo, outcome, headline value, full
/// payload, wall time and the seed in effect.
#[derive(Debug, Clone)]
pub struct ResultRecord {
    pub request: String,
    pub status: Status,
    pub value: String,
    pub detail: Json,
    pub wall_ms: f64,
    pub seed: u64,
}

impl ResultRecord {
    pub fn to_json(&self) -> Json {
        json!({
            "request": self.request,
            "status": self.status.to_string(),
            "value": self.value,
            "detail": self.detail,
            "wall_ms": self.wall_ms,
            "seed": self.seed,
        })
    }
}

#[derive(Debug)]
pub struct ExecError {
    pub message: String,
    pub pos: Pos,
}

impl fmt::Display for ExecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error at {}: {}", self.pos, self.message)
    }
}

#[derive(Default)]
struct Env {
    rings: BTreeMap<String, Ring>,
    modules: BTreeMap<String, GradedModule>,
}

/// Evaluate a script. Definition errors abort with `Err`; compute/verify
/// problems become records. The exit code is 0 when everything computed,
/// 2 when the only non-ok records are hypothesis skips, 1 otherwise.
pub fn execute(script: &Script, config: &Config) -> Result<(Vec<ResultRecord>, i32), ExecError> {
    let mut env = Env::default();
    let mut records = Vec::new();
    for stmt in &script.stmts {
        match stmt {
            Stmt::Ring {
                name,
                field,
                vars,
                quotient,
                pos,
            } => {
                define_ring(&mut env, name, field, vars, quotient.as_deref(), *pos)?;
            }
            Stmt::ModuleQuotient {
                name,
                ring,
                ideal,
                pos,
            } => {
                let ring = lookup_ring(&env, ring, *pos)?;
                let gens = eval_ideal(ideal, ring.poly_ring(), *pos)?;
                let module = GradedModule::cyclic(ring.clone(), gens).map_err(|e| ExecError {
                    message: e.to_string(),
                    pos: *pos,
                })?;
                env.modules.insert(name.clone(), module);
            }
            Stmt::ModuleCoker {
                name,
                ring,
                rows,
                degrees,
                pos,
            } => {
                let module = coker_module(&env, ring, rows, degrees.as_deref(), *pos)?;
                env.modules.insert(name.clone(), module);
            }
            Stmt::Compute { op, args, pos } => {
                let request = format!("{stmt}");
                let started = Instant::now();
                let record = match compute(&env, op, args, config, *pos) {
                    Ok((value, detail)) => ResultRecord {
                        request,
                        status: Status::Ok,
                        value,
                        detail,
                        wall_ms: ms(started),
                        seed: config.seed,
                    },
                    Err(ComputeError::Skip(hypothesis)) => ResultRecord {
                        request,
                        status: Status::Skipped,
                        value: format!("skipped: hypothesis {hypothesis} failed"),
                        detail: json!({"hypothesis": hypothesis}),
                        wall_ms: ms(started),
                        seed: config.seed,
                    },
                    Err(ComputeError::Fail(message, detail)) => ResultRecord {
                        request,
                        status: Status::Failed,
                        value: message,
                        detail,
                        wall_ms: ms(started),
                        seed: config.seed,
                    },
                    Err(ComputeError::Hard(message)) => ResultRecord {
                        request,
                        status: Status::Error,
                        value: message.clone(),
                        detail: json!({"error": message}),
                        wall_ms: ms(started),
                        seed: config.seed,
                    },
                };
                records.push(record);
            }
            Stmt::Verify { suite, opts, pos } => {
                let request = format!("{stmt}");
                let started = Instant::now();
                let mut trials = 50usize;
                let mut seed = config.seed;
                let mut vars = 3usize;
                let mut maxdeg = 4u32;
                for (k, v) in opts {
                    match k.as_str() {
                        "trials" => trials = *v as usize,
                        "seed" => seed = *v as u64,
                        "vars" => vars = *v as usize,
                        "maxdeg" => maxdeg = *v as u32,
                        other => {
                            return Err(ExecError {
                                message: format!("unknown verify option \"{other}\""),
                                pos: *pos,
                            })
                        }
                    }
                }
                let summary = verify::run_suite(suite, trials, seed, vars, maxdeg)
                    .map_err(|message| ExecError { message, pos: *pos })?;
                let status = if summary.failed > 0 {
                    Status::Failed
                } else if summary.in_regime == 0 {
                    Status::Skipped
                } else {
                    Status::Ok
                };
                records.push(ResultRecord {
                    request,
                    status,
                    value: summary.headline(),
                    detail: summary.to_json(),
                    wall_ms: ms(started),
                    seed,
                });
            }
        }
    }
    let exit = if records
        .iter()
        .any(|r| matches!(r.status, Status::Error | Status::Failed))
    {
        1
    } else if records.iter().any(|r| r.status == Status::Skipped) {
        2
    } else {
        0
    };
    Ok((records, exit))
}

fn ms(started: Instant) -> f64 {
    started.elapsed().as_secs_f64() * 1e3
}

fn define_ring(
    env: &mut Env,
    name: &str,
    field: &FieldSpec,
    vars: &[(String, u32)],
    quotient: Option<&[Expr]>,
    pos: Pos,
) -> Result<(), ExecError> {
    let field = match field {
        FieldSpec::Rationals => Field::Rationals,
        FieldSpec::Prime(p) => Field::Prime(*p),
    };
    let names: Vec<String> = vars.iter().map(|(v, _)| v.clone()).collect();
    let weights: Vec<u32> = vars.iter().map(|(_, w)| *w).collect();
    let pr = PolyRing::new(field, names, weights).map_err(|e| ExecError {
        message: e.to_string(),
        pos,
    })?;
    let ring = match quotient {
        None => Ring::polynomial(pr),
        Some(gens) => {
            let mut polys = Vec::new();
            for g in gens {
                polys.extend(eval_ideal(g, &pr, pos)?);
            }
            Ring::quotient(pr, polys).map_err(|e| ExecError {
                message: e.to_string(),
                pos,
            })?
        }
    };
    env.rings.insert(name.to_string(), ring);
    Ok(())
}

fn coker_module(
    env: &Env,
    ring: &str,
    rows: &[Vec<Expr>],
    degrees: Option<&[i64]>,
    pos: Pos,
) -> Result<GradedModule, ExecError> {
    let ring = lookup_ring(env, ring, pos)?;
    let pr = ring.poly_ring().clone();
    let ncols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(ExecError {
            message: "ragged presentation matrix".into(),
            pos,
        });
    }
    let mut entries: Vec<Vec<Polynomial>> = Vec::new();
    for row in rows {
        let mut out = Vec::new();
        for e in row {
            out.push(eval_poly(e, &pr, pos)?);
        }
        entries.push(out);
    }
    let gen_degrees: Vec<i64> = match degrees {
        Some(d) => {
            if d.len() != rows.len() {
                return Err(ExecError {
                    message: "one degree per generator row required".into(),
                    pos,
                });
            }
            d.to_vec()
        }
        None => infer_degrees(&entries),
    };
    let columns: Vec<FreeVector> = (0..ncols)
        .map(|c| FreeVector::new(entries.iter().map(|row| row[c].clone()).collect()))
        .collect();
    GradedModule::new(ring.clone(), gen_degrees, columns).map_err(|e| ExecError {
        message: e.to_string(),
        pos,
    })
}

/// Infer generator degrees from column homogeneity: the first generator sits
/// in degree 0 and entries propagate constraints.
fn infer_degrees(entries: &[Vec<Polynomial>]) -> Vec<i64> {
    let nrows = entries.len();
    let ncols = entries.first().map_or(0, |r| r.len());
    let mut degrees: Vec<Option<i64>> = vec![None; nrows];
    degrees[0] = Some(0);
    // propagate: in column c, deg(entry r) + deg gen r is constant
    for _ in 0..nrows {
        for c in 0..ncols {
            let mut col_degree: Option<i64> = None;
            for (r, row) in entries.iter().enumerate() {
                if let (Some(d), Some(gd)) = (row[c].homogeneous_degree(), degrees[r]) {
                    col_degree = Some(d + gd);
                }
            }
            if let Some(cd) = col_degree {
                for (r, row) in entries.iter().enumerate() {
                    if degrees[r].is_none() {
                        if let Some(d) = row[c].homogeneous_degree() {
                            degrees[r] = Some(cd - d);
                        }
                    }
                }
            }
        }
    }
    // generators untouched by any homogeneity constraint default to degree 0;
    // if that guess is wrong the module constructor rejects the columns
    degrees.into_iter().map(|d| d.unwrap_or(0)).collect()
}

fn lookup_ring<'a>(env: &'a Env, name: &str, pos: Pos) -> Result<&'a Ring, ExecError> {
    env.rings.get(name).ok_or_else(|| ExecError {
        message: format!("unknown ring \"{name}\""),
        pos,
    })
}

// ---- expression evaluation ----

enum Value {
    Poly(Polynomial),
    Ideal(Vec<Polynomial>),
}

fn eval_poly(e: &Expr, pr: &Arc<PolyRing>, pos: Pos) -> Result<Polynomial, ExecError> {
    match eval(e, pr, pos)? {
        Value::Poly(p) => Ok(p),
        Value::Ideal(_) => Err(ExecError {
            message: "expected a polynomial, found an ideal".into(),
            pos,
        }),
    }
}

/// Evaluate to a generator list: a polynomial becomes a principal ideal.
pub fn eval_ideal(e: &Expr, pr: &Arc<PolyRing>, pos: Pos) -> Result<Vec<Polynomial>, ExecError> {
    match eval(e, pr, pos)? {
        Value::Poly(p) => Ok(vec![p]),
        Value::Ideal(gens) => Ok(gens),
    }
}

fn eval(e: &Expr, pr: &Arc<PolyRing>, pos: Pos) -> Result<Value, ExecError> {
    Ok(match e {
        Expr::Int(n) => Value::Poly(Polynomial::constant(pr, pr.field.from_i64(*n))),
        Expr::Ratio(p, q) => {
            let c = pr.field.from_i64(*p).div(&pr.field.from_i64(*q));
            Value::Poly(Polynomial::constant(pr, c))
        }
        Expr::Var(name, vpos) => match pr.vars.iter().position(|v| v == name) {
            Some(i) => Value::Poly(Polynomial::variable(pr, i)),
            None => {
                return Err(ExecError {
                    message: format!("unknown identifier \"{name}\""),
                    pos: *vpos,
                })
            }
        },
        Expr::Paren(inner) => eval(inner, pr, pos)?,
        Expr::List(entries) => {
            let mut gens = Vec::new();
            for entry in entries {
                gens.extend(eval_ideal(entry, pr, pos)?);
            }
            Value::Ideal(gens)
        }
        Expr::Neg(inner) => match eval(inner, pr, pos)? {
            Value::Poly(p) => Value::Poly(p.neg()),
            Value::Ideal(_) => {
                return Err(ExecError {
                    message: "cannot negate an ideal".into(),
                    pos,
                })
            }
        },
        Expr::Add(a, b) => match (eval(a, pr, pos)?, eval(b, pr, pos)?) {
            (Value::Poly(p), Value::Poly(q)) => Value::Poly(p.add(&q)),
            (x, y) => {
                // ideal sum: union of generators
                let mut gens = into_gens(x);
                gens.extend(into_gens(y));
                Value::Ideal(gens)
            }
        },
        Expr::Sub(a, b) => match (eval(a, pr, pos)?, eval(b, pr, pos)?) {
            (Value::Poly(p), Value::Poly(q)) => Value::Poly(p.sub(&q)),
            _ => {
                return Err(ExecError {
                    message: "cannot subtract ideals".into(),
                    pos,
                })
            }
        },
        Expr::Mul(a, b) => match (eval(a, pr, pos)?, eval(b, pr, pos)?) {
            (Value::Poly(p), Value::Poly(q)) => Value::Poly(p.mul(&q)),
            (x, y) => {
                // product ideal: pairwise products of generators
                let xs = into_gens(x);
                let ys = into_gens(y);
                let mut gens = Vec::with_capacity(xs.len() * ys.len());
                for p in &xs {
                    for q in &ys {
                        gens.push(p.mul(q));
                    }
                }
                Value::Ideal(gens)
            }
        },
        Expr::Pow(base, n) => match eval(base, pr, pos)? {
            Value::Poly(p) => Value::Poly(p.pow(*n)),
            Value::Ideal(gens) => {
                if *n == 0 {
                    return Err(ExecError {
                        message: "ideal to the power zero".into(),
                        pos,
                    });
                }
                let mut acc = gens.clone();
                for _ in 1..*n {
                    let mut next = Vec::new();
                    for p in &acc {
                        for q in &gens {
                            next.push(p.mul(q));
                        }
                    }
                    acc = next;
                }
                Value::Ideal(acc)
            }
        },
    })
}

fn into_gens(v: Value) -> Vec<Polynomial> {
    match v {
        Value::Poly(p) => vec![p],
        Value::Ideal(gens) => gens,
    }
}

// ---- compute dispatch ----

enum ComputeError {
    /// Hypothesis failed; the record is a structured skip.
    Skip(String),
    /// A checker ran and its assertion is false.
    Fail(String, Json),
    /// Computation error (bad arguments, insufficient truncation, …).
    Hard(String),
}

impl From<CoreError> for ComputeError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::HypothesisViolated { hypothesis, .. } => ComputeError::Skip(hypothesis),
            other => ComputeError::Hard(other.to_string()),
        }
    }
}

fn compute(
    env: &Env,
    op: &str,
    args: &[Arg],
    config: &Config,
    pos: Pos,
) -> Result<(String, Json), ComputeError> {
    let module = |a: &Arg| -> Result<GradedModule, ComputeError> {
        match a {
            Arg::Name(n) => env
                .modules
                .get(n)
                .cloned()
                .ok_or_else(|| ComputeError::Hard(format!("unknown module \"{n}\" at {pos}"))),
            Arg::Int(_) => Err(ComputeError::Hard(format!("expected module name at {pos}"))),
        }
    };
    let int = |a: &Arg| -> Result<i64, ComputeError> {
        match a {
            Arg::Int(n) => Ok(*n),
            Arg::Name(_) => Err(ComputeError::Hard(format!("expected integer at {pos}"))),
        }
    };
    let arity = |want: usize| -> Result<(), ComputeError> {
        if args.len() == want {
            Ok(())
        } else {
            Err(ComputeError::Hard(format!(
                "{op} expects {want} arguments, got {} at {pos}",
                args.len()
            )))
        }
    };
    let bound = config.bound;
    let asym_bound = config.bound.unwrap_or(12);

    match op {
        "length" => {
            arity(1)?;
            let m = module(&args[0])?;
            let l = m.length();
            Ok((l.to_string(), json!({"length": l.to_string()})))
        }
        "dim" => {
            arity(1)?;
            let m = module(&args[0])?;
            let d = m.dimension();
            Ok((d.to_string(), json!({"dimension": d.to_string()})))
        }
        "depth" => {
            arity(1)?;
            let m = module(&args[0])?;
            let d = homology::module_depth(&m, bound)?;
            Ok((d.to_string(), json!({"depth": d.to_string()})))
        }
        "hilbert" => {
            arity(1)?;
            let m = module(&args[0])?;
            let p = hilbert::hilbert_polynomial(&m)?;
            Ok((
                format!("{p} (n0 = {})", p.n0),
                serde_json::to_value(p.to_json()).unwrap(),
            ))
        }
        "resolution" => {
            arity(1)?;
            let m = module(&args[0])?;
            let res = resolution::resolve(&m, bound)?;
            let betti = res.betti_numbers()?;
            Ok((
                format!(
                    "betti {betti:?}{}",
                    if res.is_complete() {
                        ""
                    } else {
                        " (truncated)"
                    }
                ),
                serde_json::to_value(res.to_json()).unwrap(),
            ))
        }
        "betti" => {
            arity(1)?;
            let m = module(&args[0])?;
            let res = resolution::resolve(&m, bound)?;
            let betti = res.betti_numbers()?;
            Ok((format!("{betti:?}"), json!({"betti": betti})))
        }
        "period" => {
            arity(1)?;
            let m = module(&args[0])?;
            let res = resolution::resolve(&m, bound)?;
            match resolution::detect_period(&res) {
                Some((start, period)) => Ok((
                    format!("start {start}, period {period}"),
                    json!({"start": start, "period": period}),
                )),
                None => Ok(("none".into(), json!({"period": Json::Null}))),
            }
        }
        "twist_coeffs" => {
            arity(1)?;
            let m = module(&args[0])?;
            let res = resolution::resolve(&m, bound)?;
            let tc = invariants::twist_coefficients(&res)?;
            let c: Vec<String> = tc.c.iter().map(|v| v.to_string()).collect();
            Ok((
                format!("c = {c:?}, k0 = {:?}", tc.k0),
                json!({"c": c, "k0": tc.k0}),
            ))
        }
        "grade" => match args.len() {
            1 => {
                let m = module(&args[0])?;
                let g = invariants::grade_of(&m, bound)?;
                Ok((g.to_string(), json!({"grade": g.to_string()})))
            }
            2 => {
                let m = module(&args[0])?;
                let n = module(&args[1])?;
                let g = invariants::grade_pair(&m, &n, bound)?;
                Ok((g.to_string(), json!({"grade": g.to_string()})))
            }
            _ => Err(ComputeError::Hard(format!(
                "grade expects 1 or 2 arguments at {pos}"
            ))),
        },
        "q" => {
            arity(2)?;
            let m = module(&args[0])?;
            let n = module(&args[1])?;
            let q = invariants::q_last_tor(&m, &n, bound)?;
            Ok((q.to_string(), json!({"q": q.to_string()})))
        }
        "ext" | "tor" => {
            arity(3)?;
            let i = int(&args[0])?;
            if i < 0 {
                return Err(ComputeError::Hard(format!(
                    "homological index must be >= 0 at {pos}"
                )));
            }
            let m = module(&args[1])?;
            let n = module(&args[2])?;
            let h = if op == "ext" {
                homology::ext_module(i as usize, &m, &n, bound)?
            } else {
                homology::tor_module(i as usize, &m, &n, bound)?
            };
            Ok((
                format!("length {}, dimension {}", h.length(), h.dimension()),
                serde_json::to_value(h.to_json()).unwrap(),
            ))
        }
        "chi" | "xi" => {
            arity(3)?;
            let j = int(&args[0])?;
            if j < 0 {
                return Err(ComputeError::Hard(format!("index must be >= 0 at {pos}")));
            }
            let m = module(&args[1])?;
            let n = module(&args[2])?;
            let sum = if op == "chi" {
                invariants::chi_partial(j as usize, &m, &n, bound)?
            } else {
                invariants::xi_partial(j as usize, &m, &n, bound)?
            };
            Ok((sum.value.to_string(), report_json(op, args, &sum)))
        }
        "xibar" => {
            arity(3)?;
            let j = int(&args[0])?;
            let m = module(&args[1])?;
            let n = module(&args[2])?;
            let sum = invariants::xi_bar(j, &m, &n, bound)?;
            Ok((sum.value.to_string(), report_json(op, args, &sum)))
        }
        "chan" => {
            arity(2)?;
            let m = module(&args[0])?;
            let n = module(&args[1])?;
            match invariants::chan_check(&m, &n, bound)? {
                Outcome::Skipped { hypothesis } => Err(ComputeError::Skip(hypothesis)),
                Outcome::Checked(rep) => {
                    let pass = rep.chan_holds && rep.chi_side_holds && rep.xi_side_holds;
                    let detail = json!({
                        "chi": rep.chi, "xi": rep.xi, "grade": rep.grade,
                        "k0": rep.k0, "c_k0": rep.c_k0.to_string(),
                        "pn_derivative": rep.pn_derivative.to_string(),
                        "rhs": rep.rhs.to_string(),
                        "chan_holds": rep.chan_holds,
                        "chi_side_holds": rep.chi_side_holds,
                        "xi_side_holds": rep.xi_side_holds,
                        "tor_lengths": rep.tor_lengths,
                        "ext_lengths": rep.ext_lengths,
                        "hypotheses": [
                            {"name": "length(M⊗N) < infinity", "holds": true},
                            {"name": "pdim M < infinity", "holds": true},
                        ],
                    });
                    let value = format!(
                        "chi = {}, xi = {}, grade = {}, c_k0*P^(k0) = {}: {}",
                        rep.chi,
                        rep.xi,
                        rep.grade,
                        rep.rhs,
                        if pass { "holds" } else { "FAILS" }
                    );
                    if pass {
                        Ok((value, detail))
                    } else {
                        Err(ComputeError::Fail(value, detail))
                    }
                }
            }
        }
        "theorem_a" => {
            arity(3)?;
            let j = int(&args[0])?;
            let m = module(&args[1])?;
            let n = module(&args[2])?;
            if j < 1 {
                return Err(ComputeError::Skip("1 <= j <= grade M".into()));
            }
            match invariants::vanishing_equivalence_check(j as usize, &m, &n, bound)? {
                Outcome::Skipped { hypothesis } => Err(ComputeError::Skip(hypothesis)),
                Outcome::Checked(rep) => {
                    let pass = rep.equivalent && rep.xi_j_nonneg;
                    let detail = json!({
                        "xi_j": rep.xi_j,
                        "grade_pair": rep.grade_mn.to_string(),
                        "chi_top": rep.chi_top,
                        "conditions": [rep.cond_xi_zero, rep.cond_grade_ge_j, rep.cond_chi_zero],
                        "equivalent": rep.equivalent,
                        "xi_j_nonneg": rep.xi_j_nonneg,
                        "hypotheses": [
                            {"name": "length(M⊗N) < infinity", "holds": true},
                            {"name": "dim M + dim N < dim R", "holds": true},
                            {"name": "1 <= j <= grade M", "holds": true},
                        ],
                    });
                    let value = format!(
                        "xi_j = {}, grade(M,N) = {}, chi_top = {}: {}",
                        rep.xi_j,
                        rep.grade_mn,
                        rep.chi_top,
                        if pass { "equivalent" } else { "NOT EQUIVALENT" }
                    );
                    if pass {
                        Ok((value, detail))
                    } else {
                        Err(ComputeError::Fail(value, detail))
                    }
                }
            }
        }
        "jorgensen" => {
            arity(1)?;
            let m = module(&args[0])?;
            match invariants::self_ext_check(&m, bound)? {
                Outcome::Skipped { hypothesis } => Err(ComputeError::Skip(hypothesis)),
                Outcome::Checked(rep) => {
                    let detail = json!({
                        "grade": rep.grade, "pdim": rep.pdim,
                        "nonzero": rep.nonzero, "required_through": rep.required,
                        "pass": rep.pass,
                    });
                    let value = format!(
                        "Ext^n(M,M) nonzero for n = 0..={}: {}",
                        rep.required,
                        if rep.pass { "holds" } else { "FAILS" }
                    );
                    if rep.pass {
                        Ok((value, detail))
                    } else {
                        Err(ComputeError::Fail(value, detail))
                    }
                }
            }
        }
        "decomposition" => {
            arity(3)?;
            let j = int(&args[0])?;
            if j < 0 {
                return Err(ComputeError::Hard(format!("index must be >= 0 at {pos}")));
            }
            let m = module(&args[1])?;
            let n = module(&args[2])?;
            match invariants::xi_decomposition_check(j as usize, &m, &n, bound)? {
                Outcome::Skipped { hypothesis } => Err(ComputeError::Skip(hypothesis)),
                Outcome::Checked(rep) => {
                    let detail = json!({
                        "grade": rep.grade, "xi_j": rep.xi_j, "chi": rep.chi,
                        "xi_bar_prev": rep.xi_bar_prev,
                        "lhs": rep.lhs, "rhs": rep.rhs, "holds": rep.holds,
                    });
                    let value = format!(
                        "lhs = {}, rhs = {}: {}",
                        rep.lhs,
                        rep.rhs,
                        if rep.holds { "holds" } else { "FAILS" }
                    );
                    if rep.holds {
                        Ok((value, detail))
                    } else {
                        Err(ComputeError::Fail(value, detail))
                    }
                }
            }
        }
        "cx" | "px" => {
            arity(1)?;
            let m = module(&args[0])?;
            let est = if op == "cx" {
                asymptotics::complexity(&m, asym_bound)?
            } else {
                asymptotics::plexity(&m, asym_bound)?
            };
            let conf = match est.confidence {
                Confidence::Exact => "exact",
                Confidence::Fitted => "fitted",
            };
            Ok((
                format!("{} ({conf})", est.value),
                json!({"value": est.value, "confidence": conf}),
            ))
        }
        "h" | "eta" => {
            arity(3)?;
            let e = int(&args[0])?;
            if e < 0 {
                return Err(ComputeError::Hard(format!("e must be >= 0 at {pos}")));
            }
            let m = module(&args[1])?;
            let n = module(&args[2])?;
            let est = if op == "h" {
                asymptotics::herbrand_h(e as usize, &m, &n, asym_bound)?
            } else {
                asymptotics::eta(e as usize, &m, &n, asym_bound)?
            };
            let j = est.to_json();
            let value = match &j.value {
                Some(v) => format!("{} {}", j.verdict, v),
                None => j.verdict.clone(),
            };
            Ok((value, serde_json::to_value(j).unwrap()))
        }
        "f_ext" | "f_tor" => {
            arity(2)?;
            let m = module(&args[0])?;
            let n = module(&args[1])?;
            let functor = if op == "f_ext" {
                Functor::Ext
            } else {
                Functor::Tor
            };
            let t = asymptotics::f_threshold(functor, &m, &n, asym_bound)?;
            let value = match t {
                asymptotics::Threshold::Known(s) => s.to_string(),
                asymptotics::Threshold::Inconclusive => "inconclusive".to_string(),
            };
            Ok((value.clone(), json!({"threshold": value})))
        }
        other => Err(ComputeError::Hard(format!(
            "unknown operation \"{other}\" at {pos}"
        ))),
    }
}

fn report_json(op: &str, args: &[Arg], sum: &invariants::AlternatingSum) -> Json {
    let report = invariants::InvariantReport {
        invariant: op.to_string(),
        args: args.iter().map(|a| a.to_string()).collect(),
        value: sum.value.to_string(),
        lengths: sum.length_entries(),
        hypotheses: Vec::new(),
    };
    serde_json::to_value(report).unwrap()
}
