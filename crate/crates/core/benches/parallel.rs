use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ddc_core::bdc::InputModel;
use ddc_core::bdc::{frak_h_general, l2_iud};
use ddc_core::oracle::{mutual_information_for_law, OracleBudget};
use ddc_core::{ChannelParams, Exec, SeriesSpec};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn l2_sweep(c: &mut Criterion) {
    let grid: Vec<f64> = (1..=99).map(|k| k as f64 / 100.0).collect();
    let spec = SeriesSpec::default();
    let mut g = c.benchmark_group("l2_iud_sweep");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exec.try_map(&grid, |&p| l2_iud(p, &spec)).unwrap())
        });
    }
    g.finish();
}

fn posterior_enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("frak_h_general_3_12");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| frak_h_general(3, 12, exec).unwrap())
        });
    }
    g.finish();
}

fn mutual_information(c: &mut Criterion) {
    let params = ChannelParams::bdc(0.2).unwrap();
    let budget = OracleBudget::default();
    let mut g = c.benchmark_group("mi_bdc_n10");
    g.sample_size(10);
    for (name, exec) in MODES {
        let law: Vec<f64> = ddc_core::BinarySeq::all(10)
            .map(|x| InputModel::Iud.block_prob(&x))
            .collect();
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| mutual_information_for_law(&params, &law, 10, &budget, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, l2_sweep, posterior_enumeration, mutual_information);
criterion_main!(benches);
