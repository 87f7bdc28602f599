use bicusp::apps::grid_seeds;
use bicusp::boxes::Boxcode;
use bicusp::prooftree::{search, verify_tree, SearchConfig, VerifyOptions};
use bicusp::words::Word;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn root() -> Boxcode {
    Boxcode::containing([2.0, 1.0, 1.0, 0.0, 1.0, 0.0], 30).unwrap()
}

fn bench_search(c: &mut Criterion) {
    let root = root();
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for parallel in [false, true] {
        let cfg = SearchConfig { max_depth: 38, parallel, ..SearchConfig::main() };
        let name = if parallel { "parallel" } else { "sequential" };
        group.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| search(&root, cfg).unwrap())
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let root = root();
    let tree = search(&root, &SearchConfig { max_depth: 38, ..SearchConfig::main() }).unwrap();
    let mut group = c.benchmark_group("verify");
    for parallel in [false, true] {
        let opts = VerifyOptions { allow_holes: true, parallel, ..VerifyOptions::main() };
        let name = if parallel { "parallel" } else { "sequential" };
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, opts| {
            b.iter(|| verify_tree(&tree, &root, opts))
        });
    }
    group.finish();
}

fn bench_grid(c: &mut Criterion) {
    let r1 = Word::parse("MnGmgMgmG").unwrap();
    let r2 = Word::parse("gmGMgMGmg").unwrap();
    let mut group = c.benchmark_group("grid_seeds");
    group.sample_size(10);
    for parallel in [false, true] {
        let name = if parallel { "parallel" } else { "sequential" };
        group.bench_function(name, |b| b.iter(|| grid_seeds(&r1, &r2, 3.65, 32, parallel)));
    }
    group.finish();
}

criterion_group!(benches, bench_search, bench_verify, bench_grid);
criterion_main!(benches);
