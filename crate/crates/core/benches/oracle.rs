use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use regset::oracle::{enumerate_pairs, EnumerationBudget};
use regset::subgroup::generate_subgroup;
use regset::sweep::{verify_theorem_sweep, SweepSpec};
use regset::{Execution, Group};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_pairs");
    group.sample_size(10);
    let cases = [
        (
            "C2xC2xC4/<(0,0,2)>",
            Group::abelian(&[2, 2, 4]).unwrap(),
            vec![&[0, 0, 2][..]],
        ),
        (
            "C2xC4xC3/<(1,0,0)>",
            Group::abelian(&[2, 4, 3]).unwrap(),
            vec![&[1, 0, 0][..]],
        ),
    ];
    for (name, g, gens) in &cases {
        let gens: Vec<usize> = gens
            .iter()
            .map(|c| g.from_coordinates(c).unwrap())
            .collect();
        let h = generate_subgroup(g, &gens);
        for (mode, execution) in MODES {
            let budget = EnumerationBudget::default().with_execution(execution);
            group.bench_with_input(BenchmarkId::new(mode, name), &budget, |b, budget| {
                b.iter(|| enumerate_pairs(g, &h, budget).unwrap())
            });
        }
    }
    let g = Group::dihedral(40).unwrap();
    let h = generate_subgroup(&g, &[g.rotation(4)]);
    for (mode, execution) in MODES {
        let budget = EnumerationBudget::default().with_execution(execution);
        group.bench_with_input(BenchmarkId::new(mode, "D80/<a^4>"), &budget, |b, budget| {
            b.iter(|| enumerate_pairs(&g, &h, budget).unwrap())
        });
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for spec in [
        SweepSpec::Abelian { max_order: 12 },
        SweepSpec::Dihedral { from: 3, to: 12 },
    ] {
        for (mode, execution) in MODES {
            let budget = EnumerationBudget::default().with_execution(execution);
            group.bench_with_input(
                BenchmarkId::new(mode, spec.to_string()),
                &budget,
                |b, budget| b.iter(|| verify_theorem_sweep(&spec, budget).unwrap()),
            );
        }
    }
    group.finish();
}

criterion_group!(benches, enumerate, sweeps);
criterion_main!(benches);
