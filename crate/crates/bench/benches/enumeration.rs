use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twonormal::{
    build_matching_system, coordinate_layout, enumerate_vertex_surfaces, extreme_rays, reconstruct,
    report, type_restrictions, AdmissibilityMode, CurveOracle, EnumerationOptions,
};
use twonormal_bench::samples;

fn curve_oracle(c: &mut Criterion) {
    c.bench_function("curve_oracle_24", |b| {
        b.iter(|| CurveOracle::new(24).enumerate(24).unwrap())
    });
}

fn cones(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_cones");
    for (name, tri) in samples() {
        let layout = coordinate_layout(&tri);
        let system = build_matching_system(&tri, &layout).unwrap();
        let restrictions = type_restrictions(&layout, AdmissibilityMode::Normal);
        group.bench_with_input(BenchmarkId::from_parameter(name), &restrictions, |b, rs| {
            b.iter(|| {
                rs.iter()
                    .map(|r| {
                        extreme_rays(
                            system.matrix(),
                            layout.dimension(),
                            Some(&r.allowed_columns(&layout)),
                        )
                        .unwrap()
                        .len()
                    })
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (name, tri) in samples() {
        for mode in AdmissibilityMode::ALL {
            group.bench_function(BenchmarkId::new(mode.name(), name), |b| {
                b.iter(|| {
                    enumerate_vertex_surfaces(&tri, mode, &EnumerationOptions::default()).unwrap()
                })
            });
        }
    }
    group.finish();
}

fn reconstruction(c: &mut Criterion) {
    let (_, tri) = samples().pop().unwrap();
    let found = enumerate_vertex_surfaces(
        &tri,
        AdmissibilityMode::TwoNormal,
        &EnumerationOptions::default(),
    )
    .unwrap();
    c.bench_function("reconstruct_four_tet_2normal", |b| {
        b.iter(|| {
            for s in &found {
                let complex = reconstruct(&tri, &s.coordinates(), s.tubes()).unwrap();
                report(&complex).unwrap();
            }
        })
    });
}

criterion_group!(benches, curve_oracle, cones, enumeration, reconstruction);
criterion_main!(benches);
