use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pmutl::markov::ChainFamily;
use pmutl::omega::{build_tilde, DEFAULT_MAX_DPA_STATES};
use pmutl::{check, corpus, sat};
use pmutl_bench::{automaton, chain, formula};

fn model_checking(c: &mut Criterion) {
    let mut group = c.benchmark_group("check");
    let f = formula("nu Z.(!attacked & X[>=7/8] Z)");
    for n in [10, 100, 1000] {
        let m = chain(ChainFamily::Hacker(n));
        group.bench_with_input(BenchmarkId::new("intrusion", n), &m, |b, m| b.iter(|| check(m, &f)));
    }
    let f = formula("nu Z.(a & X[>0] X[>0] Z)");
    for n in [8, 64, 512] {
        let m = chain(ChainFamily::MDoublePrimeN(n));
        group.bench_with_input(BenchmarkId::new("alternating", n), &m, |b, m| b.iter(|| check(m, &f)));
    }
    group.finish();
}

fn determinization(c: &mut Criterion) {
    let mut group = c.benchmark_group("tilde");
    for (i, text) in corpus::SAT.iter().enumerate() {
        let (a, alphabet) = automaton(text);
        group.bench_function(BenchmarkId::from_parameter(i), |b| {
            b.iter(|| build_tilde(&a, &alphabet, DEFAULT_MAX_DPA_STATES))
        });
    }
    group.finish();
}

fn satisfiability(c: &mut Criterion) {
    let mut group = c.benchmark_group("sat");
    group.sample_size(20);
    for (name, f) in corpus::all() {
        group.bench_function(name, |b| b.iter(|| sat(&f)));
    }
    group.finish();
}

criterion_group!(benches, model_checking, determinization, satisfiability);
criterion_main!(benches);
