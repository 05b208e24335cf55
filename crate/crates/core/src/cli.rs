//! The `tkl` command-line front end.
//!
//! Exit codes: 0 decided Yes or success, 1 decided No, 2 Unknown or
//! heuristic, 64 usage error, 65 data error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::density::{
    default_grid, default_schedule, exterior_density_estimate, grid_step, interior_density_estimate,
    is_strongly_a_regular, lower_uniform_density, polya_verdict, Confidence, DensityReport, PointSequence,
    SubsequenceStrategy, SupersequenceStrategy, REGULARITY_TOL,
};
use crate::dsl::{self, Bindings, GeneratorSpec, GENERATORS};
use crate::kernel::{self, KernelRef, SpaceDescriptor, Tri, TriVerdict};
use crate::numeric::{self, EvalGrid, MifParams};
use crate::symbol::{in_conj_smirnov, is_bounded, ClassVerdict, Space, SymbolExpr};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    Disk,
    Halfplane,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::Disk => Space::Disk,
            SpaceArg::Halfplane => Space::HalfPlane,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Interior,
    Exterior,
    Both,
    LowerUniform,
}

#[derive(Debug, Parser)]
#[command(name = "tkl", version, about = "Symbolic-numeric toolkit for generalized Toeplitz kernels")]
struct Cli {
    /// Ambient space of all symbols.
    #[arg(long, value_enum, default_value = "disk", global = true)]
    space: SpaceArg,
    /// Write a machine-readable report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write plot data (CSV) here.
    #[arg(long, global = true)]
    plot_data: Option<PathBuf>,
    /// Omit the header line (tool version and timestamp) from reports.
    #[arg(long, global = true)]
    no_header: bool,
    /// Bind a sequence for `@NAME` references: NAME=PATH or NAME=GENERATOR[:k=v,...].
    #[arg(long = "bind", value_name = "NAME=SPEC", global = true)]
    binds: Vec<String>,
    /// Load a log-modulus table (x,logmod CSV) usable as `O{@stem}`.
    #[arg(long = "table", value_name = "PATH", global = true)]
    tables: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SeqArgs {
    /// Sequence file (.csv or .jsonl) or generator name.
    #[arg(long)]
    seq: String,
    /// Generator size parameter.
    #[arg(long)]
    n: Option<f64>,
    /// Generator step parameter (lattice).
    #[arg(long)]
    step: Option<f64>,
    /// Truncation window LO,HI.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    window: Option<(f64, f64)>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical form of a symbol.
    Normalize { expr: String },
    /// Conjugate-Smirnov membership and boundedness of a symbol.
    Classify { expr: String },
    /// Symbol of the minimal kernel containing an analytic k.
    MinimalKernel {
        #[arg(long)]
        k: String,
        /// Inner function of the codomain E2 = Theta2*H2 (default H2).
        #[arg(long)]
        codomain: Option<String>,
    },
    /// Maximal vector of ker T_g for an outer p, or test whether --k is maximal.
    MaximalVector {
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "1")]
        p: String,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        codomain: Option<String>,
    },
    /// Whether ker T_g is contained in ker T_h.
    Inclusion {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Whether w multiplies ker T_g into ker T_h; without --w, whether the
    /// multiplier space is nonzero (half-plane).
    Multiplier {
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        codomain: Option<String>,
    },
    /// Whether ker T_phi is nontrivial.
    Nontrivial {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// The multiplier dichotomy b - a < 2*pi*D.
    Dichotomy {
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        density: f64,
    },
    /// Density estimates for a sequence.
    Density {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, value_enum, default_value = "both")]
        side: Side,
        /// Test strong a-regularity of the sequence itself instead.
        #[arg(long)]
        regular: Option<f64>,
    },
    /// Polya verdict for a separated sequence.
    Polya {
        #[command(flatten)]
        seq: SeqArgs,
    },
    /// Boundary values of a symbol on a grid (CSV).
    Eval {
        expr: String,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
        hi: f64,
    },
    /// Solutions of e^{i*angle} e^{iax} B(x) = 1 on [lo, hi].
    Spectrum {
        #[arg(long, default_value_t = 0.0)]
        a: f64,
        /// Zeros in the upper half-plane, comma separated complex literals.
        #[arg(long)]
        zeros: Option<String>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        angle: f64,
        #[arg(long, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 0.05)]
        resolution: f64,
    },
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected LO,HI")?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad number '{a}'"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad number '{b}'"))?;
    Ok((a, b))
}

/// A data error with its message.
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

type Outcome = Result<(i32, Value), Fail>;

struct Ctx<'a> {
    space: Space,
    bindings: Bindings,
    out: &'a mut dyn Write,
    plot: Option<PathBuf>,
}

fn tri_code(t: Tri) -> i32 {
    match t {
        Tri::Yes => EXIT_YES,
        Tri::No => EXIT_NO,
        Tri::Unknown => EXIT_UNKNOWN,
    }
}

fn class_code(c: ClassVerdict) -> i32 {
    match c {
        ClassVerdict::Member => EXIT_YES,
        ClassVerdict::NotMember => EXIT_NO,
        ClassVerdict::Unknown => EXIT_UNKNOWN,
    }
}

fn confidence_code(r: &DensityReport) -> i32 {
    if r.confidence == Confidence::Confident {
        EXIT_YES
    } else {
        EXIT_UNKNOWN
    }
}

/// Resolves a sequence spec: a generator name, `name:k=v,...`, or a path.
fn load_seq_spec(spec: &str, n: Option<f64>, step: Option<f64>, window: Option<(f64, f64)>) -> Result<PointSequence, Fail> {
    let (head, params) = spec.split_once(':').unwrap_or((spec, ""));
    if GENERATORS.contains(&head) {
        let mut g = GeneratorSpec::new(head);
        for kv in params.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| Fail(format!("bad generator parameter '{kv}'")))?;
            let v: f64 = v.parse().map_err(|_| Fail(format!("bad generator parameter '{kv}'")))?;
            g = g.with(k, v);
        }
        if let Some(n) = n {
            g = g.with("n", n);
        }
        if let Some(h) = step {
            g = g.with("step", h);
        }
        let text = format!("{}\n", generator_line(&g));
        return Ok(dsl::parse_sequence(&text, true, spec, window)?.0);
    }
    Ok(dsl::load_sequence(Path::new(spec), window)?.0)
}

fn generator_line(g: &GeneratorSpec) -> String {
    let mut obj = serde_json::Map::new();
    obj.insert("generator".into(), json!(g.name));
    for (k, v) in &g.params {
        obj.insert(k.clone(), json!(v));
    }
    Value::Object(obj).to_string()
}

impl Ctx<'_> {
    fn parse(&mut self, src: &str) -> Result<SymbolExpr, Fail> {
        let e = dsl::parse_symbol(src, self.space, &self.bindings)?;
        // attach interior densities to MIF spectra on first use
        let missing: Vec<String> = e
            .mif_atoms()
            .filter_map(|f| match &f.atom {
                crate::symbol::Atom::Mif(m) if !self.bindings.densities.contains_key(&m.name) => Some(m.name.clone()),
                _ => None,
            })
            .collect();
        if missing.is_empty() {
            return Ok(e);
        }
        for name in missing {
            let seq = self.bindings.sequences[&name].clone();
            let grid = default_grid(&seq, grid_step());
            let r = interior_density_estimate(&seq, &grid, SubsequenceStrategy::GreedyThinning)?;
            self.bindings.densities.insert(name, r.into());
        }
        Ok(dsl::parse_symbol(src, self.space, &self.bindings)?)
    }

    fn codomain(&mut self, c: &Option<String>) -> Result<SpaceDescriptor, Fail> {
        Ok(match c {
            None => SpaceDescriptor::FullHardy,
            Some(s) => SpaceDescriptor::InvariantSubspace(self.parse(s)?),
        })
    }

    fn say(&mut self, line: impl AsRef<str>) -> Result<(), Fail> {
        writeln!(self.out, "{}", line.as_ref())?;
        Ok(())
    }

    fn verdict(&mut self, label: &str, v: &TriVerdict) -> Outcome {
        self.say(format!("{label}: {v}"))?;
        Ok((tri_code(v.value), json!({ "command": label, "verdict": dsl::verdict_json(v) })))
    }

    fn plot(&self, write: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<(), Fail> {
        if let Some(p) = &self.plot {
            let mut f = std::io::BufWriter::new(std::fs::File::create(p)?);
            write(&mut f)?;
            f.flush()?;
        }
        Ok(())
    }

    fn density_line(&mut self, r: &DensityReport) -> Result<(), Fail> {
        let sym = match r.kind {
            crate::density::DensityKind::Interior => "D_*",
            crate::density::DensityKind::Exterior => "D^*",
            crate::density::DensityKind::LowerUniform => "D^-",
        };
        let conf = match r.confidence {
            Confidence::Confident => "Confident",
            Confidence::Heuristic => "Heuristic",
        };
        let step = r.grid_step.map(|h| format!(", grid step {h}")).unwrap_or_default();
        self.say(format!("{sym} ≈ {:.3} ({conf}{step})", r.value))
    }

    fn run(&mut self, cmd: &Command) -> Outcome {
        match cmd {
            Command::Normalize { expr } => {
                let e = self.parse(expr)?;
                self.say(dsl::print_symbol(&e))?;
                Ok((EXIT_YES, json!({ "command": "normalize", "result": dsl::symbol_json(&e) })))
            }
            Command::Classify { expr } => {
                let e = self.parse(expr)?;
                let c = in_conj_smirnov(&e);
                let b = is_bounded(&e);
                self.say(format!("{e}"))?;
                self.say(format!("conjugate Smirnov class: {c:?}"))?;
                self.say(format!("bounded: {b:?}"))?;
                Ok((class_code(c), json!({ "command": "classify", "symbol": e.to_string(), "conj_smirnov": c, "bounded": b })))
            }
            Command::MinimalKernel { k, codomain } => {
                let k = self.parse(k)?;
                let c = self.codomain(codomain)?;
                let g = kernel::minimal_kernel_symbol(&k, &c, self.space)?;
                self.say(dsl::print_symbol(&g))?;
                Ok((EXIT_YES, json!({ "command": "minimal-kernel", "k": k.to_string(), "symbol": g.to_string() })))
            }
            Command::MaximalVector { g, p, k, codomain } => {
                let g = self.parse(g)?;
                let c = self.codomain(codomain)?;
                match k {
                    Some(k) => {
                        let k = self.parse(k)?;
                        let kr = KernelRef::new(g, SpaceDescriptor::FullHardy, c)?;
                        let v = kernel::is_maximal_vector(&k, &kr)?;
                        self.verdict("maximal-vector", &v)
                    }
                    None => {
                        let p = self.parse(p)?;
                        let k = kernel::maximal_vector(&g, &c, &p, self.space)?;
                        self.say(dsl::print_symbol(&k))?;
                        Ok((EXIT_YES, json!({ "command": "maximal-vector", "g": g.to_string(), "vector": k.to_string() })))
                    }
                }
            }
            Command::Inclusion { g, h } => {
                let (g, h) = (self.parse(g)?, self.parse(h)?);
                let v = kernel::kernel_inclusion(&g, &h, self.space)?;
                self.verdict("inclusion", &v)
            }
            Command::Multiplier { w, g, h, codomain } => {
                let (gs, hs) = (self.parse(g)?, self.parse(h)?);
                match w {
                    Some(w) => {
                        let w = self.parse(w)?;
                        let c = self.codomain(codomain)?;
                        let gk = KernelRef::new(gs, SpaceDescriptor::FullHardy, c.clone())?;
                        let hk = KernelRef::new(hs, SpaceDescriptor::FullHardy, c)?;
                        let v = kernel::multiplier_check(&w, &gk, &hk)?;
                        self.verdict("multiplier", &v)
                    }
                    None => {
                        let v = kernel::multiplier_space_nontrivial(&gs, &hs)?;
                        self.verdict("multiplier-space", &v)
                    }
                }
            }
            Command::Nontrivial { phi } => {
                let phi = self.parse(phi)?;
                let v = kernel::kernel_nontrivial(&phi);
                self.verdict("nontrivial", &v)
            }
            Command::Dichotomy { b, a, density } => {
                let v = kernel::example4_dichotomy(*b, *a, *density)?;
                let (word, op) = match v.value {
                    Tri::Yes => ("NONZERO", "<"),
                    Tri::No => ("ZERO", ">"),
                    Tri::Unknown => ("UNDECIDED", "="),
                };
                let c = b - a;
                let c = if c.fract() == 0.0 && c.abs() < 1e15 { format!("{}", c as i64) } else { format!("{c:.4}") };
                self.say(format!("{word} (b−a = {c} {op} 2πD = {:.4})", std::f64::consts::TAU * density))?;
                Ok((tri_code(v.value), json!({ "command": "dichotomy", "verdict": dsl::verdict_json(&v) })))
            }
            Command::Density { seq, side, regular } => {
                let s = load_seq_spec(&seq.seq, seq.n, seq.step, seq.window)?;
                if let Some(a) = regular {
                    let v = is_strongly_a_regular(&s, *a, &[], REGULARITY_TOL);
                    let (lo, hi) = s.window_or_span();
                    let sched = default_schedule(hi.max(-lo));
                    let r = sched.last().copied().unwrap_or(1.0);
                    let (deficit, tail) = crate::density::regularity_deficit(&s, *a, r)?;
                    self.say(format!("strongly {a}-regular: {v}"))?;
                    self.say(format!("deficit over [-{r}, {r}] = {deficit:.6} (tail bound {tail:.3e})"))?;
                    self.plot(|w| dsl::write_deviation_csv(w, &s, *a, -r, r, 2001))?;
                    return Ok((
                        tri_code(v.value),
                        json!({ "command": "regularity", "a": a, "verdict": dsl::verdict_json(&v), "radius": r, "deficit": deficit, "tail_bound": tail }),
                    ));
                }
                let grid = default_grid(&s, grid_step());
                let mut reports = Vec::new();
                if matches!(side, Side::Interior | Side::Both) {
                    reports.push(interior_density_estimate(&s, &grid, SubsequenceStrategy::GreedyThinning)?);
                }
                if matches!(side, Side::Exterior | Side::Both) {
                    reports.push(exterior_density_estimate(&s, &grid, SupersequenceStrategy::ArithmeticPadding)?);
                }
                if *side == Side::LowerUniform {
                    reports.push(lower_uniform_density(&s, &[])?);
                }
                for r in &reports {
                    self.density_line(r)?;
                }
                if let Some(r) = reports.first() {
                    let (lo, hi) = r.window;
                    let star = crate::density::star_transform(&s).sequence;
                    let a = r.value;
                    self.plot(|w| dsl::write_deviation_csv(w, &star, a, lo, hi, 2001))?;
                }
                let code = reports.iter().map(confidence_code).max().unwrap_or(EXIT_UNKNOWN);
                let body: Vec<Value> = reports.iter().map(dsl::density_json).collect();
                Ok((code, json!({ "command": "density", "source": s.source, "reports": body })))
            }
            Command::Polya { seq } => {
                let s = load_seq_spec(&seq.seq, seq.n, seq.step, seq.window)?;
                let v = polya_verdict(&s)?;
                self.verdict("polya", &v)
            }
            Command::Eval { expr, points, lo, hi } => {
                let e = self.parse(expr)?;
                let grid = match self.space {
                    Space::Disk => EvalGrid::circle(*points),
                    Space::HalfPlane => EvalGrid::line(*lo, *hi, *points),
                };
                let vals = numeric::symbol_boundary_eval(&e, &grid)?;
                let xs = grid.abscissae().to_vec();
                dsl::write_eval_csv(self.out, &xs, &vals)?;
                self.plot(|w| {
                    writeln!(w, "x,modulus")?;
                    for (x, v) in xs.iter().zip(&vals) {
                        writeln!(w, "{x},{}", v.norm())?;
                    }
                    Ok(())
                })?;
                let rows: Vec<Value> = xs.iter().zip(&vals).map(|(x, v)| json!([x, v.re, v.im])).collect();
                Ok((EXIT_YES, json!({ "command": "eval", "symbol": e.to_string(), "values": rows })))
            }
            Command::Spectrum { a, zeros, angle, lo, hi, resolution } => {
                let zeros = match zeros {
                    None => Vec::new(),
                    Some(z) => parse_zero_list(z)?,
                };
                let params = MifParams { constant_angle: *angle, a: *a, zeros };
                let r = numeric::spectrum_sigma(&params, *lo, *hi, *resolution)?;
                dsl::write_sequence_csv(self.out, &r.points)?;
                self.plot(|w| dsl::write_sequence_csv(w, &r.points))?;
                let xs = r.points.reals();
                Ok((EXIT_YES, json!({ "command": "spectrum", "points": xs, "total_phase": r.total_phase })))
            }
        }
    }
}

fn parse_zero_list(s: &str) -> Result<Vec<Complex64>, Fail> {
    let e = dsl::parse_symbol(&format!("B[{s}]"), Space::HalfPlane, &Bindings::default())?;
    match e.factors().first().map(|f| &f.atom) {
        Some(crate::symbol::Atom::Blaschke(b)) => Ok(b.zeros.to_vec()),
        _ => Err(Fail("expected a zero list".into())),
    }
}

fn load_bindings(cli: &Cli) -> Result<Bindings, Fail> {
    let mut b = Bindings::default();
    for spec in &cli.binds {
        let (name, src) = spec.split_once('=').ok_or_else(|| Fail(format!("--bind expects NAME=SPEC, got '{spec}'")))?;
        let seq = load_seq_spec(src, None, None, None)?;
        b = b.with_sequence(name, seq);
    }
    for p in &cli.tables {
        b = b.with_table(dsl::load_log_modulus(p)?);
    }
    Ok(b)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Normalize { .. } => "normalize",
        Command::Classify { .. } => "classify",
        Command::MinimalKernel { .. } => "minimal-kernel",
        Command::MaximalVector { .. } => "maximal-vector",
        Command::Inclusion { .. } => "inclusion",
        Command::Multiplier { .. } => "multiplier",
        Command::Nontrivial { .. } => "nontrivial",
        Command::Dichotomy { .. } => "dichotomy",
        Command::Density { .. } => "density",
        Command::Polya { .. } => "polya",
        Command::Eval { .. } => "eval",
        Command::Spectrum { .. } => "spectrum",
    }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_YES
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let bindings = match load_bindings(&cli) {
        Ok(b) => b,
        Err(Fail(m)) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_DATA;
        }
    };
    let mut ctx = Ctx { space: cli.space.into(), bindings, out, plot: cli.plot_data.clone() };
    let (code, body) = match ctx.run(&cli.command) {
        Ok(r) => r,
        Err(Fail(m)) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_DATA;
        }
    };
    if let Some(path) = &cli.out {
        let header = if cli.no_header {
            None
        } else {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            Some(format!("tkl {} {} unix-time {secs}", env!("CARGO_PKG_VERSION"), command_name(&cli.command)))
        };
        let mut body = body;
        body["exit_code"] = json!(code);
        let res = std::fs::File::create(path).and_then(|mut f| dsl::write_report(&mut f, header.as_deref(), &body));
        if let Err(e) = res {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_DATA;
        }
    }
    code
}
