//! The verification battery: named suites of exact identity checks, each
//! marked in the manifest as asserted or report-only.
//!
//! Suites are independent and pure, so they run under any [`Exec`] strategy;
//! reports always come back in manifest order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::expansion::{expand_in_Q, indicator_conjugation_check, psi_exponential_indicator_check, BasisMode};
use crate::identities::{classical_bridge_check, d_zero_series_check, ghw_exponential_check, ghw_leibniz_check, leibniz_product_check};
use crate::integration::{psi_integral, q_integral, q_integral_operator, r_integral};
use crate::operators::{d_classical, d_psi, d_q, d_r, pincherle, shift_invariance, x_hat, x_hat_psi};
use crate::opmatrix::OpMatrix;
use crate::poly::Poly;
use crate::psi::{Preset, PsiSequence, RationalFunction};
use crate::random;
use crate::scalar::{rat, Scalar};
use crate::special::{exp_psi, exponential_addition_check, hyperbolic_component, limit_deformation_check, trig_psi, trig_pythagorean, TrigKind};
use crate::star::{
    exp_psi_on_one_check, exponential_law_check, operator_product_check, poisson_build, psi_pincherle_check,
    star, star_leibniz_check, star_power, StarPoly,
};
use crate::umbral::{
    basic_sequence, binomial_identity_check, collapsed_exponential, egf_eigen_check, first_expansion,
    general_binomial_check, normal_basic_general, recognize_delta, reconstruct_first_expansion, sheffer_sequence,
    translate_monomial, translation_operator, BasicSequence, DeltaSeries, Route,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "REPORT-ONLY")]
    ReportOnly,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ReportOnly => "REPORT-ONLY",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub status: Status,
    pub checks: Vec<CheckLine>,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub psi: PsiSequence,
    pub seed: u64,
    /// Random operators/series per randomized check.
    pub trials: usize,
    pub exec: Exec,
}

impl VerifyConfig {
    pub fn new(psi: PsiSequence, seed: u64) -> Self {
        VerifyConfig {
            psi,
            seed,
            trials: 10,
            exec: Exec::default(),
        }
    }
}

pub struct SuiteSpec {
    pub name: &'static str,
    /// Findings that are reported but never fail a run.
    pub report_only: bool,
    run: fn(&VerifyConfig) -> Result<Vec<CheckLine>>,
}

pub const MANIFEST: &[SuiteSpec] = &[
    SuiteSpec { name: "ghw", report_only: false, run: ghw },
    SuiteSpec { name: "leibniz", report_only: false, run: leibniz },
    SuiteSpec { name: "binomial", report_only: false, run: binomial },
    SuiteSpec { name: "note21", report_only: true, run: note21 },
    SuiteSpec { name: "poisson", report_only: false, run: poisson },
    SuiteSpec { name: "integration", report_only: false, run: integration },
    SuiteSpec { name: "expansion-roundtrip", report_only: false, run: expansion_roundtrip },
    SuiteSpec { name: "pincherle", report_only: false, run: pincherle_suite },
    SuiteSpec { name: "egf", report_only: false, run: egf },
    SuiteSpec { name: "sheffer", report_only: false, run: sheffer },
    SuiteSpec { name: "bridge", report_only: false, run: bridge },
    SuiteSpec { name: "classify", report_only: false, run: classify },
    SuiteSpec { name: "special", report_only: false, run: special },
    SuiteSpec { name: "remark21b", report_only: true, run: remark21b },
    SuiteSpec { name: "printed-variants", report_only: true, run: printed_variants },
];

pub fn suite_names() -> Vec<&'static str> {
    MANIFEST.iter().map(|s| s.name).collect()
}

/// Runs the named suites (all of them when `names` is empty).
pub fn run_suites(names: &[String], cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    let selected: Vec<&SuiteSpec> = if names.is_empty() {
        MANIFEST.iter().collect()
    } else {
        names
            .iter()
            .map(|n| {
                MANIFEST
                    .iter()
                    .find(|s| s.name == n)
                    .ok_or_else(|| Error::Parse(format!("unknown suite {n:?}; known: {}", suite_names().join(", "))))
            })
            .collect::<Result<_>>()?
    };
    Ok(cfg.exec.map_range(selected.len(), |i| run_one(selected[i], cfg)))
}

fn run_one(spec: &SuiteSpec, cfg: &VerifyConfig) -> SuiteReport {
    let checks = (spec.run)(cfg).unwrap_or_else(|e| {
        vec![CheckLine {
            name: "suite aborted".into(),
            holds: false,
            detail: Some(e.to_string()),
        }]
    });
    let status = if spec.report_only {
        Status::ReportOnly
    } else if checks.iter().all(|c| c.holds) {
        Status::Pass
    } else {
        Status::Fail
    };
    SuiteReport {
        suite: spec.name,
        status,
        checks,
    }
}

/// True when no suite failed.
pub fn all_passed(reports: &[SuiteReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

#[derive(Default)]
struct Lines(Vec<CheckLine>);

impl Lines {
    fn check(&mut self, name: impl Into<String>, r: Result<bool>) {
        let (holds, detail) = match r {
            Ok(b) => (b, None),
            Err(e) => (false, Some(e.to_string())),
        };
        self.0.push(CheckLine {
            name: name.into(),
            holds,
            detail,
        });
    }

    fn note(&mut self, name: impl Into<String>, holds: bool, detail: String) {
        self.0.push(CheckLine {
            name: name.into(),
            holds,
            detail: Some(detail),
        });
    }

    fn all(r: impl IntoIterator<Item = Result<bool>>) -> Result<bool> {
        for x in r {
            if !x? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The three delta series exercised throughout: `∂ψ`, `∂ψ + ∂ψ²`, and
/// `Σ_{k>=1} ∂ψ^k/kψ!`.
pub fn standard_deltas(psi: &PsiSequence) -> Vec<(&'static str, DeltaSeries)> {
    let plus = DeltaSeries::polynomial(psi.clone(), vec![Scalar::zero(), Scalar::one(), Scalar::one()])
        .expect("nonempty");
    vec![
        ("d_psi", DeltaSeries::d_psi(psi)),
        ("d_psi + d_psi^2", plus),
        ("forward-difference analog", DeltaSeries::forward_difference_analog(psi)),
    ]
}

/// Basic sequences of the standard deltas by every route.
pub fn four_routes(q: &DeltaSeries, m: usize) -> Result<Vec<BasicSequence>> {
    Route::ALL.iter().map(|&r| basic_sequence(q, m, r)).collect()
}

pub const BINOMIAL_SAMPLES: [(i64, i64); 5] = [(1, 1), (-1, 1), (1, 2), (2, 1), (-3, 4)];

fn ghw(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let mut out = Lines::default();
    let c = d_psi(psi).commutator(&x_hat_psi(psi))?;
    out.check(
        format!("[d_psi, x_hat_psi] = id on degrees <= {}", cap - 1),
        Ok(c.valid() == cap - 1 && c.agrees_on(&OpMatrix::identity(cap), cap - 1)),
    );
    let pairs: Vec<(usize, usize)> = (0..=4)
        .flat_map(|n| (0..=4).map(move |m| (n, m)))
        .filter(|(n, m)| n + m <= cap / 2)
        .collect();
    out.check(
        format!("normal-ordering rule for {} pairs n, m <= 4", pairs.len()),
        Lines::all(pairs.iter().map(|&(n, m)| ghw_leibniz_check(psi, n, m))),
    );
    let k = 6.min(cap / 2);
    for (t, a) in [(Scalar::one(), Scalar::one()), (rat(1, 2), rat(-1, 3)), (Scalar::int(-2), rat(3, 4))] {
        out.check(
            format!("exponential commutation K={k}, t={t}, a={a}"),
            ghw_exponential_check(psi, &t, &a, k),
        );
    }
    Ok(out.0)
}

fn leibniz(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let half = cap / 2;
    let mut out = Lines::default();
    let mut rng = random::rng(cfg.seed);
    let pairs: Vec<(Poly, Poly)> = (0..cfg.trials)
        .map(|_| (random::poly(&mut rng, half, cap), random::poly(&mut rng, half, cap)))
        .collect();
    out.check(
        "product rule via n_hat_psi and d_0 (plus q-rule for q-presets)",
        Lines::all(pairs.iter().map(|(f, g)| leibniz_product_check(psi, f, g))),
    );
    out.check(
        "d_psi of star powers lowers the index",
        Lines::all((1..=cap).map(|n| {
            let lhs = star_power(psi, n)?.plain;
            let lhs = crate::operators::d_psi_apply(psi, &lhs);
            Ok(lhs == star_power(psi, n - 1)?.plain.scale(&Scalar::int(n as i64)))
        })),
    );
    let alpha = random::nonzero_scalar(&mut rng);
    let beta = random::nonzero_scalar(&mut rng);
    out.check(format!("exp_psi[a x] = exp(a x_hat_psi) 1, a={alpha}"), exp_psi_on_one_check(psi, &alpha, cap));
    out.check(
        format!("exp[a x] *psi exp_psi[b x] = exp_psi[(a+b) x], a={alpha}, b={beta}"),
        exponential_law_check(psi, &alpha, &beta, cap).map(|l| l.corrected),
    );
    out.check(
        "d_psi(x^k *psi x^(n*psi)) rule for k + n <= cap",
        Lines::all((0..=half).flat_map(|k| (0..=half).map(move |n| (k, n))).map(|(k, n)| {
            star_leibniz_check(psi, &Poly::monomial(k, cap)?, &star_power(psi, n)?)
        })),
    );
    out.check(
        "d_psi(f *psi g) = (Df) *psi g + f *psi (d_psi g) on random f, g",
        Lines::all(pairs.iter().map(|(f, g)| {
            star_leibniz_check(psi, f, &StarPoly::in_star_basis(g.clone()))
        })),
    );
    out.check(
        "f(x_hat_psi) g(x_hat_psi) 1 = f *psi g~ on random f, g",
        Lines::all(pairs.iter().map(|(f, g)| operator_product_check(psi, f, g))),
    );
    out.check(
        "x^(n*psi) *psi x^(k*psi) = (n!/n_psi!) x^((n+k)*psi)",
        Lines::all((0..=half).flat_map(|n| (0..=half).map(move |k| (n, k))).map(|(n, k)| {
            let lhs = star(psi, &star_power(psi, n)?.plain, &star_power(psi, k)?.plain)?;
            let w = Scalar::factorial(n) / psi.fact(n);
            Ok(lhs == star_power(psi, n + k)?.plain.scale(&w))
        })),
    );
    Ok(out.0)
}

fn binomial(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let m = 12.min(cap - 1);
    let mut out = Lines::default();
    for (name, q) in standard_deltas(psi) {
        let routes = four_routes(&q, m)?;
        out.check(
            format!("{name}: four routes agree on p_0..p_{m} and pass post-verification"),
            Ok(routes.windows(2).all(|w| w[0].polys == w[1].polys)),
        );
        let general = normal_basic_general(&q.to_matrix(), psi, m)?;
        out.check(
            format!("{name}: triangular solve agrees with the closed forms"),
            Ok(general.polys == routes[0].polys),
        );
        let mut short = routes[0].clone();
        short.polys.truncate(11.min(m + 1));
        out.check(
            format!("{name}: E^y p_n = sum (n k)psi p_k(x) p_(n-k)(y), n <= {}", short.max_index()),
            Lines::all(BINOMIAL_SAMPLES.iter().map(|&(a, b)| binomial_identity_check(&short, &rat(a, b)))),
        );
        out.check(
            format!("{name}: same identity with E^y(Q)"),
            Lines::all(
                BINOMIAL_SAMPLES
                    .iter()
                    .map(|&(a, b)| general_binomial_check(&q.to_matrix(), &short, &rat(a, b))),
            ),
        );
    }
    Ok(out.0)
}

/// `(1 +ψ (−1))^n` for `n = 1..=cap`.
pub fn note21_values(psi: &PsiSequence) -> Result<Vec<Scalar>> {
    (1..=psi.cap())
        .map(|n| Ok(translate_monomial(psi, &Scalar::int(-1), n)?.eval(&Scalar::one())))
        .collect()
}

fn note21(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let v = note21_values(&cfg.psi)?;
    let fmt = |parity: usize| {
        v.iter()
            .enumerate()
            .filter(|(i, _)| (i + 1) % 2 == parity)
            .map(|(i, x)| format!("n={}: {x}", i + 1))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut out = Lines::default();
    let even_zero = v.iter().enumerate().filter(|(i, _)| (i + 1) % 2 == 0).all(|(_, x)| x.is_zero());
    let odd_zero = v.iter().enumerate().filter(|(i, _)| (i + 1) % 2 == 1).all(|(_, x)| x.is_zero());
    out.note("(1 +psi (-1))^(2n) = 0 for even powers", even_zero, fmt(0));
    out.note("(1 +psi (-1))^n = 0 for odd powers", odd_zero, fmt(1));
    Ok(out.0)
}

fn poisson(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let m = 5.min(cap / 2);
    let mut out = Lines::default();
    for lam in [Scalar::one(), rat(1, 2)] {
        let model = poisson_build(psi, &lam, m, cap - m)?;
        let c = model.checks();
        let g = model.guard_degree;
        out.check(format!("lambda={lam}: difference equations on degrees <= {g}"), Ok(c.difference_equations));
        out.check(
            format!("lambda={lam}: sum p_m = N on degrees <= {}", model.partial_sum_guard()),
            Ok(c.partial_sum),
        );
        out.check(format!("lambda={lam}: N = 1 on degrees <= {}", cap - m), Ok(c.normalizer_is_one));
        out.check(format!("lambda={lam}: p_m = p_m(x_hat_psi) 1"), Ok(c.operator_solution));
    }
    Ok(out.0)
}

fn integration(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let q = match (psi.is_q_family(), psi.q()) {
        (true, Some(q)) => q.clone(),
        _ => rat(1, 2),
    };
    let r = RationalFunction::new(vec![Scalar::one(), Scalar::int(2)], vec![Scalar::int(3)]);
    let dp = d_psi(psi);
    let dq = d_q(&q, cap)?;
    let dr = d_r(&r, &q, cap)?;
    let oracle = q_integral_operator(&q, cap)?;
    let monomials: Vec<Poly> = (0..cap).map(|n| Poly::monomial(n, cap)).collect::<Result<_>>()?;
    let mut out = Lines::default();
    out.check(
        format!("d_psi int_psi = id on degrees <= {}", cap - 1),
        Lines::all(monomials.iter().map(|m| Ok(dp.apply(&psi_integral(psi, m)?)? == *m))),
    );
    out.check(
        format!("d_q int_q = id on degrees <= {}, q={q}", cap - 1),
        Lines::all(monomials.iter().map(|m| Ok(dq.apply(&q_integral(&q, m)?)? == *m))),
    );
    out.check(
        format!("d_R int_R = id on degrees <= {}, R=(1+2x)/3", cap - 1),
        Lines::all(monomials.iter().map(|m| Ok(dr.apply(&r_integral(&r, &q, m)?)? == *m))),
    );
    out.check(
        "q-integral closed form = operator form",
        Lines::all(monomials.iter().map(|m| Ok(oracle.apply(m)? == q_integral(&q, m)?))),
    );
    let mut rng = random::rng(cfg.seed);
    let samples: Vec<Poly> = (0..cfg.trials)
        .map(|_| {
            let mut p = random::poly(&mut rng, cap - 1, cap);
            p.set_coeff(0, Scalar::zero()).expect("in range");
            p
        })
        .collect();
    out.check(
        "integral of derivative = id when p(0) = 0 (all three pairs)",
        Lines::all(samples.iter().map(|p| {
            Ok(psi_integral(psi, &dp.apply(p)?)? == *p
                && q_integral(&q, &dq.apply(p)?)? == *p
                && r_integral(&r, &q, &dr.apply(p)?)? == *p)
        })),
    );
    let jackson = PsiSequence::q_jackson(q.clone(), cap)?;
    let rq = RationalFunction::q_integer(&q);
    out.check(
        "int_psi reduces to int_q and int_R with R=(1-x)/(1-q)",
        Lines::all(monomials.iter().map(|m| {
            let c = q_integral(&q, m)?;
            Ok(psi_integral(&jackson, m)? == c && r_integral(&rq, &q, m)? == c)
        })),
    );
    Ok(out.0)
}

/// Expansion trials for one delta: reconstruction and re-expansion in both
/// coefficient modes, plus the indicator conjugation in the x̂ mode.
pub fn expansion_trial(
    t: &OpMatrix,
    q: &DeltaSeries,
    m: usize,
    lambda_cap: usize,
) -> Result<bool> {
    let psi = q.psi();
    let qm = q.to_matrix();
    let basic = basic_sequence(q, m.min(psi.cap() - 1), Route::Rodrigues)?;
    for mode in [BasisMode::XHat, BasisMode::XHatQ] {
        let e = expand_in_Q(t, &qm, psi, m, mode, Some(&basic))?;
        if !e.reconstructs(t)? {
            return Ok(false);
        }
        let again = expand_in_Q(&e.reconstruct()?, &qm, psi, m, mode, Some(&basic))?;
        if again.q_polys != e.q_polys {
            return Ok(false);
        }
        if mode == BasisMode::XHat && !indicator_conjugation_check(&e, t, lambda_cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn expansion_roundtrip(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let m = 10.min(cap - 1);
    let raise = cap - m;
    let mut out = Lines::default();
    for (k, (name, q)) in standard_deltas(psi).into_iter().enumerate() {
        let verdicts = cfg.exec.try_map_range(cfg.trials, |i| {
            let mut rng = random::trial_rng(cfg.seed + k as u64, i);
            let t = random::operator(&mut rng, cap, raise);
            expansion_trial(&t, &q, m, 6.min(m))
        });
        out.check(
            format!("{name}: {} random T reconstruct and re-expand on degrees <= {m}", cfg.trials),
            verdicts.map(|v| v.into_iter().all(|b| b)),
        );
    }
    Ok(out.0)
}

fn pincherle_suite(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let mut rng = random::rng(cfg.seed);
    let mut out = Lines::default();
    let series: Vec<DeltaSeries> = (0..cfg.trials).map(|_| random::invertible_series(&mut rng, psi, cap)).collect();
    out.check(
        "Pincherle derivative of a series = formal derivative",
        Lines::all(series.iter().map(|s| {
            let p = pincherle(&s.to_matrix(), psi)?;
            Ok(p.agrees_on(&s.formal_derivative().to_matrix(), p.valid()))
        })),
    );
    out.check(
        "series in d_psi commute",
        Lines::all(series.windows(2).map(|w| {
            let c = w[0].to_matrix().commutator(&w[1].to_matrix())?;
            Ok(w[0].mul(&w[1])? == w[1].mul(&w[0])? && c.is_zero_on(cap))
        })),
    );
    out.check(
        "[d_psi, f(x_hat_psi)] = f'(x_hat_psi) and its action on 1",
        Lines::all((0..cfg.trials).map(|_| {
            let c: Vec<Scalar> = (0..=cap / 2).map(|_| random::scalar(&mut rng)).collect();
            psi_pincherle_check(&c, psi)
        })),
    );
    let samples = [Scalar::one(), rat(-1, 2), rat(3, 2)];
    let invariant = [
        d_psi(psi).pow(3),
        OpMatrix::identity(cap),
        translation_operator(psi, &Scalar::one()),
        series[0].to_matrix(),
    ];
    out.check(
        "shift invariance: series operators pass both tests",
        Lines::all(invariant.iter().map(|t| {
            let r = shift_invariance(t, psi, &samples)?;
            Ok(r.sampled && r.coefficient)
        })),
    );
    let noncommuting = [x_hat(cap), x_hat_psi(psi), random::operator(&mut rng, cap, 1)];
    out.check(
        "shift invariance: x_hat, x_hat_psi, random T fail both tests",
        Lines::all(noncommuting.iter().map(|t| {
            let r = shift_invariance(t, psi, &samples)?;
            Ok(!r.sampled && !r.coefficient)
        })),
    );
    Ok(out.0)
}

fn egf(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let m = 12.min(cap - 1);
    let mut out = Lines::default();
    for (name, q) in standard_deltas(psi) {
        let b = basic_sequence(&q, m, Route::Lagrange1)?;
        out.check(format!("{name}: Q Phi = lambda Phi to order {}", 8.min(m)), egf_eigen_check(&q, &b, 8.min(m)));
    }
    let mono = BasicSequence::monomial(psi, m)?;
    out.check(
        "monomial basic sequence: Phi collapses to exp_psi",
        Ok(collapsed_exponential(&mono).is_some_and(|p| p.n_psi_table() == &psi.n_psi_table()[..=m])),
    );
    let mut rng = random::rng(cfg.seed);
    out.check(
        "P(x;lambda) = exp_psi[lambda x]^-1 T exp_psi[lambda x] for T = sum q_n(x_hat) d_psi^n",
        Lines::all((0..cfg.trials).map(|_| {
            let qp: Vec<Poly> = (0..4).map(|_| random::poly(&mut rng, 2, cap)).collect();
            psi_exponential_indicator_check(&qp, psi, 6.min(cap - 2))
        })),
    );
    Ok(out.0)
}

fn sheffer(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let m = 10.min(cap - 1);
    let mut rng = random::rng(cfg.seed);
    let mut out = Lines::default();
    let one_plus = DeltaSeries::polynomial(psi.clone(), vec![Scalar::one(), Scalar::one()])?;
    let shifts = [
        ("1 + d_psi", one_plus),
        ("E^1", DeltaSeries::translation(psi, &Scalar::one())),
        ("random S", random::invertible_series(&mut rng, psi, cap)),
    ];
    for (qname, q) in standard_deltas(psi) {
        let b = basic_sequence(&q, m, Route::Lagrange3)?;
        for (sname, s) in &shifts {
            out.check(
                format!("{qname}, S = {sname}: Sheffer binomial identity"),
                sheffer_sequence(&b, s).and_then(|pair| {
                    Lines::all(BINOMIAL_SAMPLES.iter().map(|&(a, c)| pair.binomial_check(&rat(a, c))))
                }),
            );
        }
        let full = basic_sequence(&q, cap - 1, Route::Rodrigues)?;
        let targets = [translation_operator(psi, &Scalar::one()), shifts[2].1.to_matrix()];
        out.check(
            format!("{qname}: first expansion reconstructs shift-invariant T"),
            Lines::all(targets.iter().map(|t| {
                let a = first_expansion(t, &full)?;
                Ok(reconstruct_first_expansion(&a, &q)?.to_matrix().agrees_on(t, cap - 1))
            })),
        );
    }
    Ok(out.0)
}

fn bridge(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let cap = cfg.psi.cap();
    let mut out = Lines::default();
    out.check("classical derivative/difference bridge, K=5", classical_bridge_check(5.min(cap), cap));
    out.check(
        format!("d_0 series on x^m, m <= {cap}"),
        Lines::all((0..=cap).map(|m| d_zero_series_check(m, cap))),
    );
    Ok(out.0)
}

/// `D x̂ D` and `½ D x̂ D − ⅓ D³` at the given cap.
pub fn classifier_examples(cap: usize) -> Result<(OpMatrix, OpMatrix)> {
    let d = d_classical(cap);
    let dxd = d.compose(&x_hat(cap))?.compose(&d)?;
    let counter = dxd.scale(&rat(1, 2)).checked_sub(&d.pow(3).scale(&rat(1, 3)))?;
    Ok((dxd, counter))
}

fn classify(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let (dxd, counter) = classifier_examples(cap)?;
    let mut out = Lines::default();
    let r = recognize_delta(&dxd)?;
    out.check(
        "D x_hat D is a series with n_psi = n^2",
        Ok(r.is_series && r.psi.as_ref().is_some_and(|p| p.label() == "dxd")),
    );
    let r = recognize_delta(&counter)?;
    out.check(
        "1/2 D x_hat D - 1/3 D^3 is rejected with witness (4,3)",
        Ok(!r.is_series && r.failure_witness.as_ref().is_some_and(|w| (w.n, w.k) == (4, 3))),
    );
    let mut rng = random::rng(cfg.seed);
    out.check(
        format!("recognize . realize = id on {} random delta series", cfg.trials),
        Lines::all((0..cfg.trials).map(|_| {
            let s = random::delta_series(&mut rng, psi, cap);
            let r = recognize_delta(&s.to_matrix())?;
            let back = r.to_series().ok_or(Error::NotDeltaOperator("not recognized"))?;
            let same_psi = !psi.n(1).is_one() || back.psi().same_values(psi);
            Ok(same_psi && back.to_matrix() == s.to_matrix())
        })),
    );
    Ok(out.0)
}

fn special(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let mut out = Lines::default();
    out.check("exp_psi(x +psi y) = exp_psi(x) exp_psi(y)", exponential_addition_check(psi, cap));
    let e = exp_psi(psi, cap)?;
    out.check(
        "sum of h_j(m) over residues = exp_psi, m = 2, 3, 4",
        Lines::all((2..=4).map(|m| {
            let mut acc = hyperbolic_component(psi, m, 0, cap)?;
            for j in 1..m {
                acc = acc.add(&hyperbolic_component(psi, m, j, cap)?);
            }
            Ok(acc.coeffs == e.coeffs)
        })),
    );
    out.check(
        "cosh_psi + sinh_psi = exp_psi",
        Ok(trig_psi(psi, TrigKind::Cosh, cap)?.add(&trig_psi(psi, TrigKind::Sinh, cap)?).coeffs == e.coeffs),
    );
    let report = limit_deformation_check(&[rat(1, 1000), rat(1, 2), rat(9, 10), rat(999, 1000)], 8.min(cap))?;
    out.check(
        "exp_q coefficients approach exp (q -> 1) and 1/(1-x) (q -> 0) monotonically",
        Ok(report.approaches_exp && report.approaches_geometric),
    );
    Ok(out.0)
}

/// Presets compared against the configured sequence.
pub fn comparison_presets(cap: usize) -> Vec<PsiSequence> {
    let mut v = vec![PsiSequence::classical(cap), PsiSequence::ones(cap), PsiSequence::dxd(cap)];
    for q in [rat(1, 2), rat(1, 3), rat(2, 3)] {
        v.push(PsiSequence::q_jackson(q, cap).expect("admissible"));
    }
    v
}

fn remark21b(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let d = d_psi(psi);
    let mut out = Lines::default();
    out.check("[d_psi, d_psi] = 0", Ok(d.commutator(&d)?.is_zero_on(cap)));
    for phi in comparison_presets(cap) {
        if phi.same_values(psi) {
            continue;
        }
        let c = d.commutator(&d_psi(&phi))?;
        let label = match phi.q() {
            Some(q) => format!("{} q={q}", phi.label()),
            None => phi.label().to_string(),
        };
        out.check(format!("[d_psi, d_phi] != 0 for phi = {label}"), Ok(!c.is_zero_on(cap)));
    }
    let scaled = PsiSequence::make(&Preset::Custom(psi.n_psi_table()[1..].iter().map(|v| v * Scalar::int(2)).collect()), cap)?;
    let c = d.commutator(&d_psi(&scaled))?;
    out.note(
        "distinct phi with n_phi = 2 n_psi gives a nonzero commutator",
        !c.is_zero_on(cap),
        "proportional sequences commute, so 'only if' holds only up to proportionality".into(),
    );
    Ok(out.0)
}

fn printed_variants(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let psi = &cfg.psi;
    let cap = psi.cap();
    let mut out = Lines::default();
    let law = exponential_law_check(psi, &Scalar::one(), &rat(1, 2), cap / 2)?;
    out.note(
        "exp[a x] *psi (exp_psi{b x_hat_psi} 1) = exp_psi{(a+b) x_hat_psi} 1",
        law.printed,
        "the form with exp_psi[b x] in place of exp_psi{b x_hat_psi} 1 holds for every psi".into(),
    );
    out.note(
        "cos_psi^2 + sin_psi^2 = 1",
        trig_pythagorean(psi, cap)?,
        format!("to order {cap}"),
    );
    Ok(out.0)
}
