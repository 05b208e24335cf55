//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tkl::density::{
    default_grid, deficit_on, exterior_density_estimate, interior_density_estimate, is_strongly_a_regular,
    polya_verdict, star_transform, PointSequence, SubsequenceStrategy, SupersequenceStrategy, DEFAULT_GRID_STEP,
    REGULARITY_TOL,
};
use tkl::dsl::{parse_symbol, print_symbol, Bindings, DslError, GeneratorSpec};
use tkl::kernel::{
    example4_dichotomy, is_maximal_vector, kernel_dim_rational, kernel_nontrivial, minimal_kernel_symbol,
    multiplier_check, multiplier_space_nontrivial, KernelDim, KernelRef, SpaceDescriptor, Tri,
};
use tkl::numeric::{symbol_boundary_eval, EvalGrid, OuterQuadrature};
use tkl::symbol::{is_bounded, Atom, BlaschkeZeros, ClassVerdict, NamedSource, OuterSource, Space, SymbolExpr};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sym(s: &str, space: Space) -> SymbolExpr {
    parse_symbol(s, space, &Bindings::default()).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn worked_example(n: usize) -> PointSequence {
    GeneratorSpec::new("worked-example").with("n", n as f64).expand().unwrap()
}

fn c1_star_transform() -> Check {
    let seq = worked_example(50);
    let t = star_transform(&seq);
    ensure(t.sequence.len() == 100 && t.dropped == 0, format!("{} images, {} dropped", t.sequence.len(), t.dropped))?;
    let mut worst = 0.0f64;
    for (x, &i) in t.sequence.reals().iter().zip(&t.preimage) {
        let n = seq.points()[i].re;
        let p = 2f64.powi(2 * n.abs() as i32);
        let closed = (n * n * p + 1.0) / (n * p);
        worst = worst.max(((x - closed) / closed).abs());
    }
    ensure(worst <= 1e-12, format!("max relative error {worst:.3e}"))?;
    Ok(format!("max relative error {worst:.2e}"))
}

fn c2_regularity() -> Check {
    let star = star_transform(&worked_example(10_000)).sequence;
    let v = is_strongly_a_regular(&star, 1.0, &[], REGULARITY_TOL);
    ensure(v.value == Tri::Yes, format!("regularity verdict {v}"))?;

    // sum_{n>=1} 1/(1+n^2) by direct summation, smallest terms first
    let terms = 1_000_000u64;
    let oracle: f64 = (1..=terms).rev().map(|n| 1.0 / (1.0 + (n as f64).powi(2))).sum();
    let tail = 1.0 / terms as f64;
    ensure((oracle - 1.0767).abs() <= 1e-3, format!("summation oracle {oracle}"))?;
    let r = star.window_or_span().1;
    let deficit = deficit_on(&star, 1.0, 1.25, r);
    ensure(deficit <= oracle + tail, format!("deficit {deficit} exceeds bound {}", oracle + tail))?;
    Ok(format!("{}; deficit over [5/4, {r}] = {deficit:.4} <= {:.4}", v.rule, oracle + tail))
}

fn c3_densities() -> Check {
    let seq = worked_example(10_000);
    let grid = default_grid(&seq, DEFAULT_GRID_STEP);
    let lo = interior_density_estimate(&seq, &grid, SubsequenceStrategy::GreedyThinning).map_err(|e| e.to_string())?;
    let hi = exterior_density_estimate(&seq, &grid, SupersequenceStrategy::ArithmeticPadding).map_err(|e| e.to_string())?;
    for r in [&lo, &hi] {
        ensure((r.value - 1.0).abs() <= DEFAULT_GRID_STEP, format!("{:?} estimate {}", r.kind, r.value))?;
    }
    Ok(format!("D_* = {} ({:?}), D^* = {} ({:?})", lo.value, lo.confidence, hi.value, hi.confidence))
}

fn c4_dichotomy() -> Check {
    let start = Instant::now();
    let cases = [(2.0, 1.0, Tri::Yes), (8.0, 1.0, Tri::No), (1.0 + TAU, 1.0, Tri::Unknown)];
    let got: Vec<Tri> = cases.iter().map(|&(b, a, _)| example4_dichotomy(b, a, 1.0).map(|v| v.value)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for (&(b, a, want), got) in cases.iter().zip(&got) {
        ensure(*got == want, format!("b-a = {}: got {got}, want {want}", b - a))?;
    }
    ensure(elapsed < Duration::from_millis(1), format!("took {elapsed:?}"))?;
    Ok("(1,1) YES, (7,1) NO, (2pi,1) UNKNOWN".into())
}

/// Null space of `a` from its SVD.
fn null_space(a: &DMatrix<f64>) -> Vec<DVector<f64>> {
    let n = a.ncols();
    // pad to square so the SVD returns a full V
    let mut sq = DMatrix::zeros(n.max(a.nrows()), n);
    sq.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
    let svd = sq.svd(false, true);
    let vt = svd.v_t.unwrap();
    (0..n).filter(|&i| svd.singular_values[i] < 1e-10).map(|i| vt.row(i).transpose()).collect()
}

/// Matrix of `T_{conj(z^m)}` (backward shift by m) on polynomials of degree < dim.
fn backward_shift(m: usize, dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, |i, j| if j == i + m { 1.0 } else { 0.0 })
}

fn forward_shift(k: usize, dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, |i, j| if i == j + k { 1.0 } else { 0.0 })
}

fn c5_polynomial_oracle() -> Check {
    const DIM: usize = 24;
    let mut disagreements = Vec::new();
    let mut cases = 0;
    for m in 0..=8usize {
        let kernel_g = null_space(&backward_shift(m, DIM));
        // kernels of conj(z^m) are polynomials of degree < m, well inside DIM
        let g = sym(&format!("conj(z^{m})"), Space::Disk);
        let gk = KernelRef::classical(g).map_err(|e| e.to_string())?;
        for n in 0..=8usize {
            let h = sym(&format!("conj(z^{n})"), Space::Disk);
            let hk = KernelRef::classical(h).map_err(|e| e.to_string())?;
            let th = backward_shift(n, DIM);
            for k in 0..=8usize {
                cases += 1;
                let w = sym(&format!("z^{k}"), Space::Disk);
                let shift = forward_shift(k, DIM);
                let oracle = kernel_g.iter().all(|v| (&th * (&shift * v)).norm() < 1e-10);
                let got = multiplier_check(&w, &gk, &hk).map_err(|e| e.to_string())?;
                if got.value != if oracle { Tri::Yes } else { Tri::No } {
                    disagreements.push(format!("(m,n,k)=({m},{n},{k}): {got} vs oracle {oracle}"));
                }
            }
        }
    }
    ensure(disagreements.is_empty(), format!("{} disagreements, first {:?}", disagreements.len(), disagreements.first()))?;
    Ok(format!("{cases} cases, 0 disagreements"))
}

fn analytic_corpus() -> Vec<(SymbolExpr, Space)> {
    let disk_inner = ["1", "z", "z^3", "B[0.5]", "B[0.3-0.4i,-0.2+0.1i]", "Sd{1:0.5}", "z*B[0.5]", "z^2*Sd{0.5:1,3:2}"];
    let disk_outer = ["1", "O{cos}", "O{cos}^-2"];
    let hp_inner = ["1", "S(1)", "S(2.5)", "b_i", "B[1+i]", "B[2i,-1+0.5i]", "S(1)*b_i", "b_i^2*S(0.5)"];
    let hp_outer = ["1", "O{exp-cauchy}", "O{cauchy:2}^-1"];
    let mut out = Vec::new();
    for (inner, outer, space) in [(&disk_inner[..], &disk_outer[..], Space::Disk), (&hp_inner[..], &hp_outer[..], Space::HalfPlane)] {
        for i in inner {
            for o in outer {
                out.push((sym(&format!("{i}*{o}"), space), space));
            }
        }
    }
    out.push((sym("z^5*O{cos}^3", Space::Disk), Space::Disk));
    out.push((sym("S(4)*B[1+i]^2*O{exp-cauchy}^2", Space::HalfPlane), Space::HalfPlane));
    out
}

/// Rank of the Szego-kernel Gram matrix at the zeros, i.e. dim of the model space.
fn gram_rank(zeros: &[Complex64]) -> usize {
    let n = zeros.len();
    let g = DMatrix::from_fn(n, n, |i, j| 1.0 / (Complex64::new(1.0, 0.0) - zeros[i].conj() * zeros[j]));
    let s = g.singular_values();
    let top = s.max();
    s.iter().filter(|v| **v > 1e-10 * top).count()
}

fn c6_kernel_round_trips() -> Check {
    let corpus = analytic_corpus();
    ensure(corpus.len() == 50, format!("corpus has {} expressions", corpus.len()))?;
    let mut decided = 0;
    for (k, space) in &corpus {
        let g = minimal_kernel_symbol(k, &SpaceDescriptor::FullHardy, *space).map_err(|e| format!("{k}: {e}"))?;
        let kr = KernelRef::classical(g.clone()).map_err(|e| format!("{g}: {e}"))?;
        let v = is_maximal_vector(k, &kr).map_err(|e| format!("{k}: {e}"))?;
        match v.value {
            Tri::Yes => decided += 1,
            Tri::No => return Err(format!("k = {k}, g = {g}: {v}")),
            Tri::Unknown => {}
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x7EC1);
    let mut trials = 0;
    while trials < 60 {
        let deg = rng.gen_range(1..=6);
        let mut zeros: Vec<Complex64> = Vec::new();
        while zeros.len() < deg {
            let z = Complex64::from_polar(rng.gen_range(0.0..0.9f64).sqrt(), rng.gen_range(0.0..TAU));
            if zeros.iter().all(|w| (w - z).norm() > 0.15) {
                zeros.push(z);
            }
        }
        let b = SymbolExpr::atom(Space::Disk, Atom::Blaschke(BlaschkeZeros::new(zeros.clone()))).map_err(|e| e.to_string())?;
        let dim = kernel_dim_rational(&b.conjugate()).map_err(|e| e.to_string())?;
        let rank = gram_rank(&zeros);
        ensure(
            dim == KernelDim::Finite(deg as u64) && rank == deg,
            format!("zeros {zeros:?}: dim {dim:?}, Gram rank {rank}, degree {deg}"),
        )?;
        trials += 1;
    }
    Ok(format!("{decided}/{} maximal-vector cases decided, all Yes; {trials} Blaschke dimensions match", corpus.len()))
}

fn c7_numeric() -> Check {
    let mut worst = 0.0f64;
    let inner = [
        ("z^3*B[0.5,0.3-0.4i,-0.9i]*Sd{1:0.5,4:2}", Space::Disk),
        ("S(2)*b_i^3*B[1+i,2i,-3+0.01i]", Space::HalfPlane),
    ];
    for (s, space) in inner {
        let e = sym(s, space);
        let grid = match space {
            Space::Disk => EvalGrid::circle(1000),
            Space::HalfPlane => EvalGrid::line(-50.0, 50.0, 1000),
        };
        let vals = symbol_boundary_eval(&e, &grid).map_err(|e| format!("{s}: {e}"))?;
        worst = worst.max(vals.iter().map(|v| (v.norm() - 1.0).abs()).fold(0.0, f64::max));
    }
    ensure(worst <= 1e-9, format!("unimodularity defect {worst:.3e}"))?;

    let nodes = 1usize << 14;
    let q = OuterQuadrature::new(&OuterSource::Named(NamedSource::Cos), Space::Disk, nodes).map_err(|e| e.to_string())?;
    let r = 1.0 - 1e-3;
    let thetas: Vec<f64> = (0..1000).map(|j| TAU * j as f64 / 1000.0).collect();
    let pts: Vec<Complex64> = thetas.iter().map(|&t| Complex64::from_polar(r, t)).collect();
    let vals = q.eval_many(&pts).map_err(|e| e.to_string())?;
    // Poisson integral of cos by direct summation of the real kernel
    let poisson = |t: f64| -> f64 {
        (0..nodes)
            .map(|j| {
                let s = TAU * (j as f64 + 0.5) / nodes as f64;
                (1.0 - r * r) / (1.0 - 2.0 * r * (t - s).cos() + r * r) * s.cos()
            })
            .sum::<f64>()
            / nodes as f64
    };
    let mut err = 0.0f64;
    let mut exact = 0.0f64;
    let mut boundary = 0.0f64;
    for (v, &t) in vals.iter().zip(&thetas) {
        let oracle = poisson(t).exp();
        err = err.max((v.norm() - oracle).abs() / oracle);
        exact = exact.max((v.norm() - (r * t.cos()).exp()).abs());
        boundary = boundary.max((v.norm() - t.cos().exp()).abs());
    }
    ensure(err <= 1e-3, format!("reconstruction error {err:.3e} against the Poisson sum"))?;
    Ok(format!(
        "inner defect {worst:.1e}; outer error {err:.1e} vs Poisson sum, {exact:.1e} vs e^(r cos t), {boundary:.1e} vs boundary e^(cos t)"
    ))
}

fn c8_examples() -> Check {
    let hp = |s: &str| sym(s, Space::HalfPlane);
    let v1 = multiplier_space_nontrivial(&hp("b_i*conj(O{exp-cauchy})"), &hp("conj(S(1))")).map_err(|e| e.to_string())?;
    ensure(v1.value == Tri::Yes, format!("b_i*conj(O) vs conj(S(1)): {v1}"))?;

    let p = hp("O{cauchy:0.5}");
    // 0 <= log|P| <= 1/2 gives 1 <= |P| <= e^(1/2)
    ensure(is_bounded(&p) == ClassVerdict::Member && is_bounded(&p.inv()) == ClassVerdict::Member, "P is not a bounded outer with bounded inverse")?;
    let g = hp("conj(O{cauchy:0.5}*S(2))");
    let h = hp("conj(O{exp-cauchy}*b_i*S(2))");
    let v2 = multiplier_space_nontrivial(&g, &h).map_err(|e| e.to_string())?;
    let reduced = kernel_nontrivial(&hp("conj(O{exp-cauchy}*b_i)/conj(O{cauchy:0.5})"));
    ensure(v2.value == reduced.value && reduced.value == Tri::Yes, format!("perturbed outer pair: {v2} vs reduced {reduced}"))?;
    Ok(format!("b_i*conj(O) vs conj(S(1)) {}, perturbed outer pair {} = reduced {}", v1.value, v2.value, reduced.value))
}

fn c9_polya() -> Check {
    let star = star_transform(&worked_example(10_000)).sequence;
    let v = polya_verdict(&star).map_err(|e| e.to_string())?;
    ensure(v.value == Tri::Yes, format!("{v}"))?;
    Ok(v.rule)
}

fn c10_parser() -> Check {
    let (seq, _) = PointSequence::real((-20..=20).map(|n| n as f64).collect()).unwrap();
    let (zs, _) = PointSequence::upper(vec![Complex64::new(1.0, 1.0), Complex64::new(-2.0, 0.5)]).unwrap();
    let table = tkl::symbol::LogModulusTable::new("T", vec![(-1.0, 0.0), (0.0, 0.5), (1.0, 0.0)]).unwrap();
    let b = Bindings::default().with_sequence("L", seq).with_sequence("Z", zs).with_table(table);
    let disk = [
        "1", "-1", "exp(i*0.75)", "z", "z^4", "conj(z)", "conj(z)^-3", "z*conj(z)^2", "B[0.5]",
        "B[0.3-0.4i, 0.1i]^2", "Sd{0:1}", "Sd{1.5:2,3:0.25}^-1", "O{cos}", "conj(O{cos})^2", "(z*B[0.2])^3",
        "z / B[0.5]", "exp(i*2)*conj(z*Sd{1:1})",
    ];
    let half = [
        "S(1)", "conj(S(2.5))", "b_i", "b_i^-2", "B[1+i,2i]", "B[@Z]", "O{exp-cauchy}", "O{cauchy:2}",
        "O{log-power:-1}", "O{unit}", "O{@T}", "Theta(@L)", "S(1)*conj(Theta(@L))",
    ];
    let mut n = 0;
    for (list, space) in [(&disk[..], Space::Disk), (&half[..], Space::HalfPlane)] {
        for s in list {
            let e1 = parse_symbol(s, space, &b).map_err(|e| format!("{s}: {e}"))?;
            let printed = print_symbol(&e1);
            let e2 = parse_symbol(&printed, space, &b).map_err(|e| format!("{s} -> {printed}: {e}"))?;
            ensure(e1 == e2 && print_symbol(&e2) == printed, format!("{s} -> {printed} -> {e2}"))?;
            n += 1;
        }
    }
    ensure(n == 30, format!("corpus has {n} expressions"))?;

    let malformed = [
        ("", Space::Disk), ("z*", Space::Disk), ("z)", Space::Disk), ("(z", Space::Disk), ("2*z", Space::Disk),
        ("z^", Space::Disk), ("z^1.5", Space::Disk), ("conj z", Space::Disk), ("b_i", Space::Disk), ("S(1)", Space::Disk),
        ("S(-1)", Space::HalfPlane), ("B[]", Space::HalfPlane), ("B[1-i]", Space::HalfPlane), ("B[1.5]", Space::Disk),
        ("O{nope}", Space::HalfPlane), ("O{cauchy}", Space::HalfPlane), ("Sd{1}", Space::Disk), ("Theta(@nobody)", Space::HalfPlane),
        ("exp(2)", Space::Disk), ("z $ z", Space::Disk), ("z *\n  q", Space::Disk),
    ];
    for (s, space) in malformed {
        match parse_symbol(s, space, &b) {
            Err(DslError::Syntax { line, col, .. }) | Err(DslError::UnknownSeqRef { line, col, .. }) if line >= 1 && col >= 1 => {}
            other => return Err(format!("{s:?}: expected a positioned diagnostic, got {other:?}")),
        }
    }
    Ok(format!("{n} round trips, {} positioned diagnostics", malformed.len()))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 10] = [
        ("worked-example star transform", Duration::from_secs(1), c1_star_transform),
        ("worked-example strong 1-regularity", Duration::from_secs(10), c2_regularity),
        ("worked-example densities", Duration::from_secs(30), c3_densities),
        ("dichotomy table", Duration::from_secs(1), c4_dichotomy),
        ("polynomial oracle equivalence", Duration::from_secs(5), c5_polynomial_oracle),
        ("kernel-calculus round trips", Duration::from_secs(10), c6_kernel_round_trips),
        ("numeric unimodularity and reconstruction", Duration::from_secs(10), c7_numeric),
        ("multiplier-space examples", Duration::from_secs(1), c8_examples),
        ("Polya verdict", Duration::from_secs(30), c9_polya),
        ("parser round trip", Duration::from_secs(1), c10_parser),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|d| if elapsed <= *budget { Ok(d) } else { Err(format!("{d}; over budget {budget:?}")) });
        match result {
            Ok(detail) => println!("PASS {:>2} {name} [{elapsed:.2?}] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{elapsed:.2?}] {why}", i + 1)
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
