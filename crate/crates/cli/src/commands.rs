use std::fmt::Write as _;

use psicalc::expansion::{expand_in_Q, BasisMode};
use psicalc::integration::{psi_integral, q_integral, r_integral};
use psicalc::operators::{d_psi, d_q, d_r};
use psicalc::special::{exp_psi, trig_psi, TrigKind};
use psicalc::star::poisson_build;
use psicalc::umbral::{
    basic_sequence, binomial_identity_check, normal_basic_general, recognize_delta, translate, Route, Target,
};
use psicalc::verify::{all_passed, four_routes, run_suites, VerifyConfig, MANIFEST};
use psicalc::{Error, Exec, Poly, Preset, PsiSequence, Result, Scalar};
use serde_json::{json, Value};

use crate::inputs::{self, OperatorContext};
use crate::{Cli, Command, Global, IntegralKind, ModeArg, TableKind};

/// What a command produced: the JSON payload, its text rendering, and whether
/// every identity it checked held.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

struct Setup {
    psi: PsiSequence,
    q: Option<Scalar>,
    r: Option<psicalc::RationalFunction>,
    seed: u64,
    exec: Exec,
}

impl Setup {
    fn from_args(g: &Global) -> Result<Self> {
        if g.cap < 4 {
            return Err(Error::Parse(format!("--cap must be at least 4, got {}", g.cap)));
        }
        let q = g.q.as_deref().map(str::parse).transpose()?;
        let r = inputs::rational_function(g.r_numer.as_deref(), g.r_denom.as_deref())?;
        let n_psi = g.n_psi.as_deref().map(inputs::scalar_list).transpose()?;
        let preset = Preset::parse(&g.psi, q.clone(), r.clone(), n_psi)?;
        Ok(Setup {
            psi: PsiSequence::make(&preset, g.cap)?,
            q,
            r,
            seed: g.seed,
            exec: if g.sequential { Exec::Sequential } else { Exec::default() },
        })
    }

    fn cap(&self) -> usize {
        self.psi.cap()
    }

    fn context(&self) -> OperatorContext<'_> {
        OperatorContext {
            psi: &self.psi,
            q: self.q.as_ref(),
            r: self.r.as_ref(),
            seed: self.seed,
        }
    }

    fn need_q(&self) -> Result<&Scalar> {
        self.q.as_ref().ok_or(Error::MissingParameter("q"))
    }

    fn header(&self) -> Value {
        json!({ "psi": self.psi, "cap": self.cap(), "seed": self.seed })
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let s = Setup::from_args(&cli.global)?;
    match &cli.command {
        Command::BasicSeq { delta, m } => basic_seq(&s, delta, *m),
        Command::Verify { suites, trials, list } => verify(&s, suites, *trials, *list),
        Command::Expand {
            op,
            delta,
            m,
            mode,
            lambda_order,
        } => expand(&s, op, delta, *m, *mode, *lambda_order),
        Command::Classify { op, b_table } => classify(&s, op, *b_table),
        Command::Translate { y, poly, n, delta } => translate_cmd(&s, y, poly.as_deref(), *n, delta.as_deref()),
        Command::Poisson { lambda, m, order } => poisson(&s, lambda, *m, *order),
        Command::Integrate { kind, poly, n } => integrate(&s, *kind, poly.as_deref(), *n),
        Command::Table { kind } => table(&s, *kind),
    }
}

fn with_header(s: &Setup, body: Value) -> Value {
    let mut v = s.header();
    if let (Value::Object(h), Value::Object(b)) = (&mut v, body) {
        h.extend(b);
    }
    v
}

fn poly_lines(out: &mut String, name: &str, polys: &[Poly]) {
    for (n, p) in polys.iter().enumerate() {
        let _ = writeln!(out, "  {name}_{n} = {p}");
    }
}

fn basic_seq(s: &Setup, delta: &str, m: usize) -> Result<Outcome> {
    let q = inputs::series(delta, &s.psi)?;
    let routes = four_routes(&q, m)?;
    let oracle = normal_basic_general(&q.to_matrix(), &s.psi, m)?;
    let agree = routes.iter().all(|b| b.polys == oracle.polys);
    let verdict = if agree { "AGREE" } else { "DISAGREE" };
    let mut text = format!("basic sequence of Q = {delta} under psi = {}\n", s.psi.label());
    poly_lines(&mut text, "p", &routes[0].polys);
    let _ = writeln!(text, "routes {}: {verdict}", Route::ALL.map(Route::name).join(", "));
    let by_route: serde_json::Map<String, Value> = Route::ALL
        .iter()
        .zip(&routes)
        .map(|(r, b)| (r.name().to_string(), json!(b.polys)))
        .collect();
    Ok(Outcome {
        json: with_header(
            s,
            json!({ "delta": q.coeffs(), "M": m, "routes": by_route, "triangular_solve": oracle.polys, "verdict": verdict }),
        ),
        text,
        ok: agree,
    })
}

fn verify(s: &Setup, suites: &[String], trials: usize, list: bool) -> Result<Outcome> {
    if list {
        let entries: Vec<Value> = MANIFEST
            .iter()
            .map(|e| json!({ "suite": e.name, "report_only": e.report_only }))
            .collect();
        let text = MANIFEST
            .iter()
            .map(|e| format!("{}{}\n", e.name, if e.report_only { " (report-only)" } else { "" }))
            .collect();
        return Ok(Outcome {
            json: json!({ "suites": entries }),
            text,
            ok: true,
        });
    }
    let cfg = VerifyConfig {
        psi: s.psi.clone(),
        seed: s.seed,
        trials,
        exec: s.exec,
    };
    let reports = run_suites(suites, &cfg)?;
    let mut text = format!("psi = {}, cap = {}, seed = {}, trials = {trials}\n", s.psi.label(), s.cap(), s.seed);
    for r in &reports {
        let _ = writeln!(text, "{:<20} {}", r.suite, r.status.label());
        for c in &r.checks {
            let mark = if c.holds { "holds" } else { "FAILS" };
            let _ = write!(text, "  [{mark}] {}", c.name);
            if let Some(d) = &c.detail {
                let _ = write!(text, " -- {d}");
            }
            text.push('\n');
        }
    }
    let ok = all_passed(&reports);
    Ok(Outcome {
        json: with_header(s, json!({ "trials": trials, "suites": reports, "passed": ok })),
        text,
        ok,
    })
}

fn expand(s: &Setup, op: &str, delta: &str, m: usize, mode: ModeArg, lambda_order: Option<usize>) -> Result<Outcome> {
    let lambda_order = lambda_order.unwrap_or(m);
    let t = inputs::operator(op, &s.context())?;
    let q = inputs::series(delta, &s.psi)?;
    let mode = match mode {
        ModeArg::XHat => BasisMode::XHat,
        ModeArg::XHatQ => BasisMode::XHatQ,
    };
    let basic = basic_sequence(&q, m.min(s.cap() - 1), Route::Rodrigues)?;
    let e = expand_in_Q(&t, &q.to_matrix(), &s.psi, m, mode, Some(&basic))?;
    let ok = e.reconstructs(&t)?;
    let ind = e.indicator(lambda_order)?;
    let verdict = if ok { "RECONSTRUCTS" } else { "MISMATCH" };
    let mut text = format!("T = {op} expanded in Q = {delta} up to Q^{m}\n");
    poly_lines(&mut text, "q", &e.q_polys);
    let _ = writeln!(text, "indicator P(x;lambda) to lambda^{lambda_order}:");
    for (n, p) in ind.terms().iter().enumerate() {
        let _ = writeln!(text, "  [lambda^{n}] {p}");
    }
    let _ = writeln!(text, "reconstruction on degrees <= {m}: {verdict}");
    Ok(Outcome {
        json: with_header(s, json!({ "expansion": e, "indicator": ind.terms(), "reconstruction": verdict })),
        text,
        ok,
    })
}

fn classify(s: &Setup, op: &str, b_table: bool) -> Result<Outcome> {
    let matrix = if b_table {
        inputs::operator_from_b_table(op, s.cap())?
    } else {
        inputs::operator(op, &s.context())?
    };
    let r = recognize_delta(&matrix)?;
    let mut text = String::new();
    if r.is_series {
        let psi = r.psi.as_ref().expect("series carry a psi");
        let _ = writeln!(text, "is_series: true (psi = {}, scale = {})", psi.label(), r.scale);
        let n_psi: Vec<String> = psi.n_psi_table()[1..].iter().map(|v| v.to_string()).collect();
        let _ = writeln!(text, "n_psi: {}", n_psi.join(", "));
        let q: Vec<String> = r.q_coeffs.iter().flatten().map(|v| v.to_string()).collect();
        let _ = writeln!(text, "series coefficients: {}", q.join(", "));
    } else {
        let _ = writeln!(text, "is_series: false");
        if let Some(w) = &r.failure_witness {
            let _ = writeln!(
                text,
                "witness: (n, k) = ({}, {}), predicted {}, actual {}",
                w.n, w.k, w.predicted, w.actual
            );
        }
    }
    Ok(Outcome {
        json: with_header(s, json!({ "recognition": r })),
        text,
        ok: true,
    })
}

fn translate_cmd(s: &Setup, y: &str, poly: Option<&str>, n: Option<usize>, delta: Option<&str>) -> Result<Outcome> {
    let y: Scalar = y.parse()?;
    let (result, input, binomial) = match (poly, n, delta) {
        (Some(p), None, None) => {
            let p = inputs::poly(p, s.cap())?;
            (translate(&s.psi, &y, Target::Poly(&p))?, json!(p), None)
        }
        (None, Some(n), None) => (translate(&s.psi, &y, Target::Monomial(n))?, json!({ "monomial": n }), None),
        (None, Some(n), Some(d)) => {
            let q = inputs::series(d, &s.psi)?;
            let b = basic_sequence(&q, n, Route::Lagrange1)?;
            let holds = binomial_identity_check(&b, &y)?;
            (translate(&s.psi, &y, Target::Basic(&b, n))?, json!({ "basic": d, "index": n, "p_n": b.poly(n) }), Some(holds))
        }
        _ => {
            return Err(Error::Parse(
                "give --poly, or -n (with optional --delta for a basic sequence term)".into(),
            ))
        }
    };
    let mut text = format!("E^{y} applied: {result}\n");
    if let Some(h) = binomial {
        let _ = writeln!(text, "binomial identity at y = {y}: {}", if h { "holds" } else { "FAILS" });
    }
    Ok(Outcome {
        json: with_header(s, json!({ "y": y, "input": input, "result": result, "binomial_identity": binomial })),
        text,
        ok: binomial.unwrap_or(true),
    })
}

fn poisson(s: &Setup, lambda: &str, m: usize, order: Option<usize>) -> Result<Outcome> {
    let lam: Scalar = lambda.parse()?;
    let order = order.unwrap_or(s.cap().saturating_sub(m));
    let model = poisson_build(&s.psi, &lam, m, order)?;
    let checks = model.checks();
    let mut text = format!("psi-Poisson components, lambda = {lam}, series order {order}\n");
    poly_lines(&mut text, "p", &model.components);
    let _ = writeln!(text, "  N = {}", model.normalizer);
    let _ = writeln!(
        text,
        "difference equations (degrees <= {}): {}\npartial sum = N (degrees <= {}): {}\nN = 1: {}\noperator solution: {}",
        model.guard_degree,
        checks.difference_equations,
        model.partial_sum_guard(),
        checks.partial_sum,
        checks.normalizer_is_one,
        checks.operator_solution
    );
    Ok(Outcome {
        json: with_header(s, json!({ "model": model, "checks": checks })),
        text,
        ok: checks.all(),
    })
}

fn integrate(s: &Setup, kind: IntegralKind, poly: Option<&str>, n: Option<usize>) -> Result<Outcome> {
    let cap = s.cap();
    let p = match (poly, n) {
        (Some(p), None) => inputs::poly(p, cap)?,
        (None, Some(n)) => Poly::monomial(n, cap)?,
        _ => return Err(Error::Parse("give exactly one of --poly, -n".into())),
    };
    let (integral, derivative) = match kind {
        IntegralKind::Psi => (psi_integral(&s.psi, &p)?, d_psi(&s.psi)),
        IntegralKind::Q => {
            let q = s.need_q()?;
            (q_integral(q, &p)?, d_q(q, cap)?)
        }
        IntegralKind::R => {
            let r = s.r.as_ref().ok_or(Error::MissingParameter("R"))?;
            let q = s.need_q()?;
            (r_integral(r, q, &p)?, d_r(r, q, cap)?)
        }
    };
    let ok = derivative.apply(&integral)? == p;
    let kind_name = format!("{kind:?}").to_lowercase();
    let text = format!(
        "integral ({kind_name}) of {p} = {integral}\nderivative recovers input: {}\n",
        if ok { "holds" } else { "FAILS" }
    );
    Ok(Outcome {
        json: with_header(s, json!({ "kind": kind_name, "input": p, "integral": integral, "derivative_recovers_input": ok })),
        text,
        ok,
    })
}

fn table(s: &Setup, kind: TableKind) -> Result<Outcome> {
    let cap = s.cap();
    let psi = &s.psi;
    let (json, text) = match kind {
        TableKind::Psi => {
            let rows: Vec<Value> = (0..=cap)
                .map(|n| json!({ "n": n, "n_psi": psi.n(n), "n_psi_factorial": psi.fact(n) }))
                .collect();
            let mut text = format!("{:>3}  {:>24}  {}\n", "n", "n_psi", "n_psi!");
            for n in 0..=cap {
                let _ = writeln!(text, "{n:>3}  {:>24}  {}", psi.n(n).to_string(), psi.fact(n));
            }
            (json!({ "rows": rows }), text)
        }
        TableKind::Binomial => {
            let rows: Vec<Vec<Scalar>> = (0..=cap)
                .map(|n| (0..=n).map(|k| psi.psi_binomial(n, k)).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            let text = rows
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ") + "\n")
                .collect();
            (json!({ "psi_binomials": rows }), text)
        }
        TableKind::Series => {
            let series = vec![
                exp_psi(psi, cap)?,
                trig_psi(psi, TrigKind::Cosh, cap)?,
                trig_psi(psi, TrigKind::Sinh, cap)?,
                trig_psi(psi, TrigKind::Cos, cap)?,
                trig_psi(psi, TrigKind::Sin, cap)?,
            ];
            let mut text = String::new();
            for sr in &series {
                let c: Vec<String> = sr.coeffs.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(text, "{}: {}", sr.kind, c.join(", "));
            }
            let payload: Vec<Value> = series.iter().map(|sr| json!({ "kind": sr.kind, "coeffs": sr.coeffs })).collect();
            (json!({ "series": payload }), text)
        }
    };
    Ok(Outcome {
        json: with_header(s, json),
        text,
        ok: true,
    })
}
