//! Sequential vs rayon on the hot paths: the density grid sweep, outer
//! quadrature on many points, and boundary evaluation of a symbol.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use tkl::density::{default_grid, interior_density_estimate, SubsequenceStrategy, DEFAULT_GRID_STEP};
use tkl::dsl::{parse_symbol, Bindings, GeneratorSpec};
use tkl::numeric::{symbol_boundary_eval, EvalGrid, OuterQuadrature};
use tkl::par;
use tkl::symbol::{NamedSource, OuterSource, Space};

const MODES: [(&str, bool); 2] = [("sequential", true), ("parallel", false)];

fn density_sweep(c: &mut Criterion) {
    let seq = GeneratorSpec::new("worked-example").with("n", 2000.0).expand().unwrap();
    let grid = default_grid(&seq, DEFAULT_GRID_STEP);
    let mut g = c.benchmark_group("interior_density");
    g.sample_size(10);
    for (name, seq_only) in MODES {
        g.bench_function(BenchmarkId::new(name, 2000), |b| {
            par::force_sequential(seq_only);
            b.iter(|| interior_density_estimate(&seq, &grid, SubsequenceStrategy::GreedyThinning).unwrap())
        });
    }
    g.finish();
    par::force_sequential(false);
}

fn outer_quadrature(c: &mut Criterion) {
    let q = OuterQuadrature::new(&OuterSource::Named(NamedSource::Cos), Space::Disk, 1 << 12).unwrap();
    let pts: Vec<Complex64> = (0..512).map(|j| Complex64::from_polar(0.999, j as f64 * 0.0123)).collect();
    let mut g = c.benchmark_group("outer_eval_many");
    for (name, seq_only) in MODES {
        g.bench_function(BenchmarkId::new(name, pts.len()), |b| {
            par::force_sequential(seq_only);
            b.iter(|| q.eval_many(&pts).unwrap())
        });
    }
    g.finish();
    par::force_sequential(false);
}

fn boundary_eval(c: &mut Criterion) {
    let e = parse_symbol("S(2)*b_i^3*B[1+i,2i,-3+0.5i]*conj(O{exp-cauchy})", Space::HalfPlane, &Bindings::default()).unwrap();
    let grid = EvalGrid::line(-50.0, 50.0, 20_000);
    let mut g = c.benchmark_group("symbol_boundary_eval");
    for (name, seq_only) in MODES {
        g.bench_function(BenchmarkId::new(name, 20_000), |b| {
            par::force_sequential(seq_only);
            b.iter(|| symbol_boundary_eval(&e, &grid).unwrap())
        });
    }
    g.finish();
    par::force_sequential(false);
}

criterion_group!(benches, density_sweep, outer_quadrature, boundary_eval);
criterion_main!(benches);
