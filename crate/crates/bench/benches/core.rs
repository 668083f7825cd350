use criterion::{black_box, criterion_group, criterion_main, Criterion};

use marc_core::{
    df_achievable_region, exp_integral_e1, rayleigh_region, run_scheme, BinningCode, DmChannel,
    FactoredInputDist, FadingKind, FadingMarcConfig, JointSourceDist, JointTable, LinkModel,
    SchemeConfig,
};

fn bit_pipe_channel() -> DmChannel {
    let mut kernel = vec![0.0; 8 * 8 * 4];
    for x1 in 0..2usize {
        for x2 in 0..2usize {
            for x3 in 0..2usize {
                let y = 4 * x1 + 2 * x2 + x3;
                let y3 = 2 * x1 + x2;
                kernel[(((x1 * 2 + x2) * 2 + x3) * 8 + y) * 4 + y3] = 1.0;
            }
        }
    }
    DmChannel::from_sizes([2, 2, 2], [8, 4], kernel).unwrap()
}

fn dsbs_sources() -> JointSourceDist {
    let mut pmf = vec![0.0; 2 * 2 * 2 * 4];
    for s1 in 0..2usize {
        for s2 in 0..2usize {
            for w in 0..2usize {
                let p = 0.5
                    * if s1 == s2 { 0.9 } else { 0.1 }
                    * if w == s2 { 0.9 } else { 0.1 };
                pmf[((s1 * 2 + s2) * 2 + w) * 4 + 2 * s1 + s2] = p;
            }
        }
    }
    JointSourceDist::from_sizes([2, 2, 2, 4], pmf).unwrap()
}

fn bench_expint(c: &mut Criterion) {
    c.bench_function("exp_integral_e1 across regimes", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for &x in &[1e-3, 0.1, 0.8, 1.5, 6.0, 30.0] {
                acc += exp_integral_e1(black_box(x)).unwrap();
            }
            acc
        })
    });
}

fn bench_entropy(c: &mut Criterion) {
    let sources = dsbs_sources();
    c.bench_function("conditional entropy on a 4-variable table", |b| {
        b.iter(|| {
            sources
                .table()
                .conditional_entropy(black_box(&[0, 1]), black_box(&[2]))
                .unwrap()
        })
    });
}

fn bench_region(c: &mut Criterion) {
    let sources = dsbs_sources();
    let channel = bit_pipe_channel();
    let input = FactoredInputDist::uniform_for(&channel);
    c.bench_function("decode-and-forward region evaluation", |b| {
        b.iter(|| df_achievable_region(black_box(&sources), &channel, &input).unwrap())
    });
}

fn bench_rayleigh_mc(c: &mut Criterion) {
    let cfg = FadingMarcConfig {
        a11: 1.0,
        a21: 0.7,
        a31: 0.4,
        a13: 2.0,
        a23: 2.0,
        p1: 1.0,
        p2: 1.0,
        p3: 1.0,
        kind: FadingKind::Rayleigh,
    };
    c.bench_function("rayleigh Monte Carlo, 64k samples", |b| {
        b.iter(|| rayleigh_region(black_box(&cfg), 65_536, 7).unwrap())
    });
}

fn bench_binning(c: &mut Criterion) {
    let code = BinningCode::new(12, 0.8, 3).unwrap();
    c.bench_function("bin assignment over 4096 sequences", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for s in 0..4096u64 {
                acc ^= code.bin_of(black_box(s));
            }
            acc
        })
    });
}

fn bench_simulator(c: &mut Criterion) {
    let cfg = SchemeConfig {
        sources: dsbs_sources(),
        m: 10,
        blocks: 1,
        relay_rates: [0.3, 0.3],
        dest_rates: [1.6, 1.4],
        epsilon: 0.35,
        link: LinkModel::Ideal,
    };
    c.bench_function("binning simulator, 10 trials at m=10", |b| {
        b.iter(|| run_scheme(black_box(&cfg), 10, 5).unwrap())
    });
}

fn bench_typicality_table(c: &mut Criterion) {
    let probs = vec![1.0 / 64.0; 64];
    let table = JointTable::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![4, 4, 4],
        probs,
    )
    .unwrap();
    let seq: Vec<usize> = (0..32).map(|i| i % 4).collect();
    c.bench_function("strong typicality membership, m=32", |b| {
        b.iter(|| {
            marc_core::is_strongly_typical(
                black_box(&[&seq, &seq, &seq]),
                &table,
                0.1,
            )
            .unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_expint,
    bench_entropy,
    bench_region,
    bench_rayleigh_mc,
    bench_binning,
    bench_simulator,
    bench_typicality_table
);
criterion_main!(benches);
