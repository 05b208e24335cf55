//! Checks against independently computed reference values.

use std::f64::consts::{PI, TAU};

use approx::assert_relative_eq;
use num_complex::Complex64;

use tkl::density::{
    counting_function, deficit_on, default_grid, exterior_density_estimate, interior_density_estimate,
    is_strongly_a_regular, lower_uniform_density, polya_verdict, star_transform, PointSequence,
    SubsequenceStrategy, SupersequenceStrategy, DEFAULT_GRID_STEP, REGULARITY_TOL,
};
use tkl::dsl::{parse_symbol, Bindings, GeneratorSpec};
use tkl::kernel::{kernel_dim_rational, kernel_inclusion, kernel_nontrivial, KernelDim, Tri};
use tkl::numeric::{
    blaschke_condition, reconstruction_error, spectrum_sigma, symbol_boundary_eval, EvalGrid, MifParams, ZeroList,
};
use tkl::symbol::{NamedSource, OuterSource, Space, SymbolExpr};

fn real(xs: impl IntoIterator<Item = f64>) -> PointSequence {
    PointSequence::real(xs.into_iter().collect()).unwrap().0
}

fn disk(s: &str) -> SymbolExpr {
    parse_symbol(s, Space::Disk, &Bindings::default()).unwrap()
}

fn hp(s: &str) -> SymbolExpr {
    parse_symbol(s, Space::HalfPlane, &Bindings::default()).unwrap()
}

/// Composite Simpson on `[lo, hi]` split at `cuts`, where `f` may jump.
fn piecewise_simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, mut cuts: Vec<f64>, m: usize) -> f64 {
    cuts.retain(|c| *c > lo && *c < hi);
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (u, v) = (w[0], w[1]);
        if v - u < 1e-14 {
            continue;
        }
        let h = (v - u) / m as f64;
        // sample just inside the piece so jumps at the ends are not picked up
        let g = |x: f64| f(x.clamp(u + 1e-13, v - 1e-13));
        let mut acc = g(u) + g(v);
        for k in 1..m {
            acc += g(u + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        total += acc * h / 3.0;
    }
    total
}

#[test]
fn cauchy_series_closed_form() {
    // sum_{n>=1} 1/(1+n^2) = (pi coth pi - 1)/2
    let direct: f64 = (1..=1_000_000u64).rev().map(|n| 1.0 / (1.0 + (n as f64).powi(2))).sum();
    let closed = (PI / PI.tanh() - 1.0) / 2.0;
    assert!((direct - closed).abs() < 1.1e-6);
    assert!((closed - 1.0767).abs() < 1e-4);
}

#[test]
fn worked_example_counting_function() {
    let seq = GeneratorSpec::new("worked-example").with("n", 30.0).expand().unwrap();
    let star = star_transform(&seq).sequence;
    let pt = |n: f64| n + 1.0 / (n * 2f64.powi(2 * n as i32));
    for n in 1..29 {
        let n = n as f64;
        let mid = 0.5 * (pt(n) + pt(n + 1.0));
        assert_eq!(counting_function(&star, mid), n as i64);
    }
}

#[test]
fn deficit_scaling_change_of_variables() {
    let seq = real([-3.7, -2.2, -0.4, 0.3, 1.9, 2.0, 4.4, 6.1]);
    let (a, r) = (0.9, 7.0);
    for t in [0.5, 2.0, 3.0] {
        let scaled = real(seq.reals().iter().map(|x| t * x));
        let lhs = deficit_on(&scaled, a / t, -t * r, t * r);
        // substitute x = t u: weight becomes t/(1 + t^2 u^2)
        let mut cuts = seq.reals();
        cuts.push(0.0);
        cuts.extend((-8..=8).map(|c| c as f64 / a));
        let rhs = piecewise_simpson(
            |u| (counting_function(&seq, u) as f64 - a * u).abs() * t / (1.0 + t * t * u * u),
            -r,
            r,
            cuts,
            4000,
        );
        assert!((lhs - rhs).abs() < 1e-6, "t = {t}: {lhs} vs {rhs}");
    }
}

#[test]
fn divergent_sequences_are_not_regular() {
    let positive = real((1..=4000).map(f64::from)).with_window(-4000.5, 4000.5);
    assert_eq!(is_strongly_a_regular(&positive, 0.0, &[], REGULARITY_TOL).value, Tri::No);
    let squares = real((1..=100).map(|n| (n * n) as f64)).with_window(-10_000.5, 10_000.5);
    assert_eq!(is_strongly_a_regular(&squares, 1.0, &[], REGULARITY_TOL).value, Tri::No);
}

#[test]
fn even_lattice_densities() {
    let seq = real((-4000..=4000).map(|n| 2.0 * n as f64)).with_window(-8001.0, 8001.0);
    let grid = default_grid(&seq, DEFAULT_GRID_STEP);
    let lo = interior_density_estimate(&seq, &grid, SubsequenceStrategy::GreedyThinning).unwrap();
    let hi = exterior_density_estimate(&seq, &grid, SupersequenceStrategy::ArithmeticPadding).unwrap();
    assert!((lo.value - 0.5).abs() <= DEFAULT_GRID_STEP, "{}", lo.value);
    assert!((hi.value - 0.5).abs() <= DEFAULT_GRID_STEP, "{}", hi.value);
    let d = lower_uniform_density(&seq, &[250.0, 500.0, 1000.0]).unwrap();
    assert!((d.value - 0.5).abs() <= 1e-3, "{}", d.value);
}

#[test]
fn integer_window_counts() {
    // #(Z ∩ (x − r, x + r)) lies in {⌈2r⌉ − 1, …, ⌊2r⌋ + 1}
    let pts: Vec<f64> = (-200..=200).map(f64::from).collect();
    for r in [0.5, 1.25, 3.0, 7.7] {
        let m = tkl::density::min_window_count(&pts, r, -150.0, 150.0) as f64;
        assert!(m >= (2.0 * r).ceil() - 1.0 && m <= (2.0 * r).floor() + 1.0, "r = {r}: {m}");
    }
}

#[test]
fn powers_of_two_are_not_polya() {
    let seq = GeneratorSpec::new("powers-of-two").with("n", 40.0).expand().unwrap();
    assert_eq!(polya_verdict(&seq).unwrap().value, Tri::No);
}

#[test]
fn blaschke_series() {
    let geometric = |n: usize| Complex64::new(1.0 - 2f64.powi(-(n as i32)), 0.0);
    let c = blaschke_condition(ZeroList::Generated { term: &geometric, max_terms: 200 }, Space::Disk);
    assert_eq!(c.converged.value, Tri::Yes);
    assert_relative_eq!(c.estimated_total.unwrap(), 1.0, epsilon = 1e-6);
    let harmonic = |n: usize| Complex64::new(1.0 - 1.0 / n as f64, 0.0);
    let c = blaschke_condition(ZeroList::Generated { term: &harmonic, max_terms: 10_000 }, Space::Disk);
    assert_eq!(c.converged.value, Tri::No);
}

#[test]
fn half_plane_outer_reconstruction() {
    let xs: Vec<f64> = (0..=400).map(|k| -10.0 + k as f64 * 0.05).collect();
    let err = reconstruction_error(&OuterSource::Named(NamedSource::ExpCauchy), Space::HalfPlane, 1e-3, 1 << 14, &xs).unwrap();
    assert!(err <= 1e-3, "{err}");
}

#[test]
fn outer_times_b_i_modulus() {
    let g = hp("b_i*conj(O{exp-cauchy})");
    let grid = EvalGrid::line(-10.0, 10.0, 401);
    let vals = symbol_boundary_eval(&g, &grid).unwrap();
    for (x, v) in grid.abscissae().iter().zip(&vals) {
        assert!((v.norm() - (1.0 / (1.0 + x * x)).exp()).abs() <= 1e-3);
    }
}

#[test]
fn spectrum_count_matches_dense_phase_sampling() {
    let theta = MifParams { constant_angle: 0.0, a: 1.0, zeros: vec![Complex64::new(0.0, 1.0)] };
    let r = spectrum_sigma(&theta, 0.0, 20.0, 0.05).unwrap();
    // unwrap the phase on a fine grid and count crossings of 2πk
    let n = 200_000;
    let mut phase = theta.eval(0.0).arg();
    let start = phase;
    let mut prev = theta.eval(0.0);
    for k in 1..=n {
        let v = theta.eval(20.0 * k as f64 / n as f64);
        phase += (v / prev).arg();
        prev = v;
    }
    let crossings = ((phase / TAU).floor() - (start / TAU).ceil()) as i64 + 1;
    assert_eq!(r.points.len() as i64, crossings);
    assert!((r.total_phase - (phase - start)).abs() < 1e-6);
    for x in r.points.reals() {
        assert!((theta.eval(x) - 1.0).norm() < 1e-8);
    }
}

#[test]
fn polynomial_model_space_dimensions() {
    for m in 1..=6u64 {
        assert_eq!(kernel_dim_rational(&disk(&format!("conj(z^{m})"))).unwrap(), KernelDim::Finite(m));
    }
    assert_eq!(kernel_dim_rational(&hp("conj(b_i)")).unwrap(), KernelDim::Finite(1));
    let v = kernel_nontrivial(&disk("conj(z^3)"));
    assert_eq!((v.value, v.dim), (Tri::Yes, Some(KernelDim::Finite(3))));
}

#[test]
fn inclusion_on_polynomial_model_spaces() {
    // K_{z^m} = span{1..z^{m-1}}, so K_{z^m} ⊂ K_{z^n} iff m ≤ n
    for m in 1..=5 {
        for n in 1..=5 {
            let v = kernel_inclusion(&disk(&format!("conj(z^{m})")), &disk(&format!("conj(z^{n})")), Space::Disk).unwrap();
            assert_eq!(v.value, if m <= n { Tri::Yes } else { Tri::No }, "m = {m}, n = {n}");
        }
    }
}
