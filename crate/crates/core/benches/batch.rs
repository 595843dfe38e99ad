use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rankone::batch::map_sequential;
use rankone::corr::BoundaryChart;
use rankone::hypmodel::{ray_endpoint, sampling, ModelSpace};
use rankone::verify::{check_thm1, sample_heis_disk, stream, BoundCheckRecord, PaperConstants, Tolerances};

fn thm1_sample(bc: &BoundaryChart, constants: &PaperConstants, tol: &Tolerances, i: usize) -> BoundCheckRecord {
    let model = bc.model();
    let mut rng = stream(5, 1, i);
    let p = sample_heis_disk(model, 1.0, &mut rng);
    let q = sample_heis_disk(model, 1.0, &mut rng);
    check_thm1(&bc.ideal(&p).unwrap(), &bc.ideal(&q).unwrap(), bc, constants, tol)
}

fn batch(c: &mut Criterion) {
    let model = ModelSpace::complex(2);
    let mut rng = stream(5, 0, 0);
    let o = sampling::point(model, 1.0, &mut rng);
    let bc = BoundaryChart::from_center(ray_endpoint(&sampling::unit_tangent(&o, &mut rng)).unwrap(), o).unwrap();
    let constants = PaperConstants::new(None);
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("thm1_batch");
    for n in [64usize, 512] {
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| map_sequential(n, |i| black_box(thm1_sample(&bc, &constants, &tol, i))))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| rankone::batch::map_parallel(n, |i| black_box(thm1_sample(&bc, &constants, &tol, i))))
        });
    }
    group.finish();
}

criterion_group!(benches, batch);
criterion_main!(benches);
