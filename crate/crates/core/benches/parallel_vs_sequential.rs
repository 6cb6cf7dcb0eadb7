use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use psicalc::expansion::{expand_in_Q, BasisMode};
use psicalc::random;
use psicalc::umbral::{basic_sequence, Route};
use psicalc::verify::{run_suites, standard_deltas, VerifyConfig};
use psicalc::{rat, Exec, PsiSequence};

const CAP: usize = 16;
const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn compose(c: &mut Criterion) {
    let mut g = c.benchmark_group("compose_cap16");
    let mut rng = random::rng(1);
    let a = random::operator(&mut rng, CAP, 0);
    let b = random::operator(&mut rng, CAP, 0);
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |bench, &exec| {
            bench.iter(|| black_box(a.compose_with(&b, exec).unwrap()))
        });
    }
    g.finish();
}

fn expansion_batch(c: &mut Criterion) {
    let psi = PsiSequence::q_jackson(rat(1, 2), CAP).unwrap();
    let (_, q) = standard_deltas(&psi).remove(2);
    let qm = q.to_matrix();
    let basic = basic_sequence(&q, 10, Route::Rodrigues).unwrap();
    let mut g = c.benchmark_group("expansion_batch_8");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |bench, &exec| {
            bench.iter(|| {
                exec.map_range(8, |i| {
                    let t = random::operator(&mut random::trial_rng(9, i), CAP, CAP - 10);
                    let e = expand_in_Q(&t, &qm, &psi, 10, BasisMode::XHat, Some(&basic)).unwrap();
                    e.reconstructs(&t).unwrap()
                })
            })
        });
    }
    g.finish();
}

fn verify_suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_binomial_ghw");
    g.sample_size(10);
    let suites = vec!["binomial".to_string(), "ghw".to_string()];
    for (name, exec) in STRATEGIES {
        let cfg = VerifyConfig {
            psi: PsiSequence::dxd(12),
            seed: 0,
            trials: 2,
            exec,
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |bench, cfg| {
            bench.iter(|| black_box(run_suites(&suites, cfg).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, compose, expansion_batch, verify_suites);
criterion_main!(benches);
