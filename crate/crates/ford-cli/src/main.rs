//! Command line front end for the exact Ford circle and sphere library:
//! generate families as JSON or SVG, run the verification sweeps, convert
//! single configurations between their representations, and print
//! Euclidean reduction traces.

mod records;
mod svg;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ford::circles::{bary_to_circle, gen_circles, sea_pair, BaryTriple, FordCircle};
use ford::eisenstein::{frame_triangle, gen_g_omega, gen_p_omega, gsea, EisQuad};
use ford::gaussian::{gen_g_i, gen_p_i, GaussBary};
use ford::general::{eq11_enumerate, gen_p_sigma, mu_apply, mu_invert, SigmaBary};
use ford::quadint::{Discriminant, QuadInt};
use ford::spheres::{FordSphere, Window};
use ford::verify::{run_suite, DEFAULT_SEED};
use num::rational::BigRational;
use num::{BigInt, Integer, One, ToPrimitive, Zero};

use records::{circle_record, render_json, sort_records, sphere_record, Document};

#[derive(Parser)]
#[command(
    name = "ford",
    version,
    about = "Exact Ford circles and Ford spheres over the class-number-one \
             imaginary quadratic rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a circle or sphere family and write it as JSON or SVG
    Generate(GenerateArgs),
    /// Run verification sweeps; exits nonzero if any check fails
    Verify(VerifyArgs),
    /// Convert one configuration between ring-pair and barycentric form
    Convert(ConvertArgs),
    /// Print the reduction trace of a quadruple `a,b,c,m` or a pair `a,b`
    Gsea(GseaArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Rational Ford circles on the real line
    Circles,
    /// The `D = 3` sphere family over the fundamental triangle
    Eisenstein,
    /// The `D = 1` sphere family over the unit square
    Gaussian,
    /// Any of the nine rings over the fundamental cell
    Sigma,
}

impl Family {
    fn label(self) -> &'static str {
        match self {
            Family::Circles => "circles",
            Family::Eisenstein => "eisenstein",
            Family::Gaussian => "gaussian",
            Family::Sigma => "sigma",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Enumerate coprime ring pairs directly
    Ring,
    /// Grow the family by recursive tangency completion
    Geometric,
    /// Enumerate integer solutions of the barycentric quadric
    Barycentric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Args)]
struct GenerateArgs {
    /// Configuration family
    #[arg(long, value_enum)]
    family: Family,
    /// Discriminant; required for `sigma`, fixed for the other families
    #[arg(long)]
    d: Option<i64>,
    /// Construction route (default: geometric for circles, ring otherwise)
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Norm bound `|β|² ≤ bound` (denominator bound for circles); the
    /// geometric route takes it as an optional pruning cap
    #[arg(long)]
    bound: Option<i64>,
    /// Rounds of recursive completion (geometric route only)
    #[arg(long)]
    depth: Option<usize>,
    /// Circles: `lo:hi` (rationals). Spheres: `cell` or `x0:x1,y0:y1`
    /// giving the real and `im/√D` ranges
    #[arg(long)]
    window: Option<String>,
    /// Output path
    #[arg(long)]
    out: PathBuf,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of `equality`, `tangency`, `corollaries`, `algorithms`, `all`
    #[arg(long, default_value = "all")]
    suite: String,
    /// Narrow the equality suite to a single ring
    #[arg(long)]
    d: Option<i64>,
    /// Override the suite's default size limit
    #[arg(long)]
    bound: Option<i64>,
    /// Seed for the randomized checks
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Repr {
    /// Coprime pair `(α, β)` in `σ`-coordinates
    Ring,
    /// Quadric quadruple `(a, b, c, m)`
    Barycentric,
}

#[derive(Args)]
struct ConvertArgs {
    /// Source representation
    #[arg(long, value_enum)]
    from: Repr,
    /// Target representation
    #[arg(long, value_enum)]
    to: Repr,
    /// Discriminant of the ring
    #[arg(long)]
    d: i64,
    /// Ring form `ax,ay;bx,by` (plain integers allowed, e.g. `0;1`);
    /// barycentric form `a,b,c,m`
    #[arg(allow_hyphen_values = true)]
    coords: String,
}

#[derive(Args)]
struct GseaArgs {
    /// Four entries `a,b,c,m` reduce a quadruple; two entries `a,b` run
    /// subtractive Euclid on a positive pair
    #[arg(allow_hyphen_values = true)]
    entries: String,
    /// Optional ring check: quadruples live in D = 3, pairs over the
    /// rationals
    #[arg(long)]
    d: Option<i64>,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Generate(args) => {
            cmd_generate(&args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => cmd_verify(&args),
        Command::Convert(args) => {
            cmd_convert(&args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gsea(args) => {
            cmd_gsea(&args)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

// ---------------------------------------------------------------- generate

fn cmd_generate(args: &GenerateArgs) -> Result<()> {
    let (text, count) = match args.family {
        Family::Circles => {
            let window = circle_window(args.window.as_deref())?;
            let circles = build_circles(args, &window)?;
            let text = match args.format {
                Format::Json => {
                    let mut recs: Vec<_> = circles.iter().map(circle_record).collect();
                    sort_records(&mut recs);
                    render_json(&Document {
                        d: 0,
                        family: args.family.label().to_string(),
                        spheres: recs,
                    })?
                }
                Format::Svg => svg::render_circles(&circles, &window),
            };
            (text, circles.len())
        }
        _ => {
            let (d, spheres) = build_spheres(args)?;
            let text = match args.format {
                Format::Json => {
                    let mut recs = spheres
                        .iter()
                        .map(|s| sphere_record(s, true))
                        .collect::<Result<Vec<_>>>()?;
                    sort_records(&mut recs);
                    render_json(&Document {
                        d,
                        family: args.family.label().to_string(),
                        spheres: recs,
                    })?
                }
                Format::Svg => svg::render_spheres(&spheres),
            };
            (text, spheres.len())
        }
    };
    std::fs::write(&args.out, text)
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    println!("wrote {count} objects to {}", args.out.display());
    Ok(())
}

fn build_circles(
    args: &GenerateArgs,
    window: &(BigRational, BigRational),
) -> Result<Vec<FordCircle>> {
    if args.d.is_some() {
        bail!("--family circles works over the rationals and takes no --d");
    }
    match args.mode.unwrap_or(Mode::Geometric) {
        Mode::Geometric => {
            let depth = args.depth.context("the geometric route needs --depth")?;
            if args.bound.is_some() {
                bail!("--bound does not apply to the geometric route for circles");
            }
            Ok(gen_circles(depth as u32, window)?)
        }
        Mode::Ring => {
            need_no_depth(args)?;
            let bound = positive_bound(args)?;
            let mut out = Vec::new();
            for b in 1..=bound {
                for a in int_range(&window.0, &window.1, b) {
                    if a.gcd(&b) == 1 {
                        out.push(FordCircle::new(a, b)?);
                    }
                }
            }
            Ok(out)
        }
        Mode::Barycentric => {
            need_no_depth(args)?;
            let bound = positive_bound(args)?;
            let mut out = Vec::new();
            // Quadric solutions with s + t = k²; the position t/(s+t)
            // restricts t to the window, and u is forced by the quadric.
            for k in 1..=bound {
                let sq = k * k;
                for t in int_range(&window.0, &window.1, sq) {
                    let s = sq - t;
                    let prod = s as i128 * t as i128;
                    if prod % sq as i128 != 0 {
                        continue;
                    }
                    let u = (-(prod / sq as i128)) as i64;
                    // Non-primitive triples name circles already produced
                    // at a smaller k; the constructor rejects them.
                    let Ok(triple) = BaryTriple::new(s, t, u) else { continue };
                    out.push(bary_to_circle(&triple)?);
                }
            }
            Ok(out)
        }
    }
}

fn build_spheres(args: &GenerateArgs) -> Result<(i64, Vec<FordSphere>)> {
    let implied = match args.family {
        Family::Eisenstein => Some(3),
        Family::Gaussian => Some(1),
        _ => None,
    };
    let raw = match (implied, args.d) {
        (Some(fixed), Some(asked)) if fixed != asked => bail!(
            "--family {} fixes D = {fixed}, but --d {asked} was given",
            args.family.label()
        ),
        (Some(fixed), _) => fixed,
        (None, Some(asked)) => asked,
        (None, None) => bail!("--family sigma needs an explicit --d"),
    };
    let d = Discriminant::new(raw)?;
    let default_window = match args.family {
        Family::Eisenstein => frame_triangle(),
        Family::Gaussian => Window::unit_box(),
        _ => Window::Cell,
    };
    let window = sphere_window(args.window.as_deref(), default_window)?;

    let spheres: Vec<FordSphere> = match args.mode.unwrap_or(Mode::Ring) {
        Mode::Ring => {
            need_no_depth(args)?;
            let bound = positive_bound(args)?;
            match args.family {
                Family::Eisenstein => gen_p_omega(bound, &window)?,
                Family::Gaussian => gen_p_i(bound, &window)?,
                _ => gen_p_sigma(d, bound, &window)?,
            }
        }
        Mode::Geometric => {
            let depth = args.depth.context("the geometric route needs --depth")?;
            let grown = match args.family {
                Family::Eisenstein => gen_g_omega(depth, args.bound)?.spheres,
                Family::Gaussian => {
                    // The completion walk can route through spheres past
                    // the target norm near the window edge; prune at twice
                    // the cap and filter below.
                    gen_g_i(depth, args.bound.map(|b| 2 * b))?.spheres
                }
                _ => bail!(
                    "the recursive route exists only for D = 1 (gaussian) \
                     and D = 3 (eisenstein)"
                ),
            };
            filter_spheres(grown, args.bound, &window)
        }
        Mode::Barycentric => {
            need_no_depth(args)?;
            let bound = positive_bound(args)?;
            match args.family {
                Family::Eisenstein => {
                    filter_spheres(eis_quad_spheres(bound)?, None, &window)
                }
                Family::Gaussian => {
                    filter_spheres(gauss_quad_spheres(bound)?, None, &window)
                }
                _ => eq11_enumerate(d, bound, &window)?
                    .iter()
                    .map(mu_invert)
                    .collect::<ford::Result<Vec<_>>>()?,
            }
        }
    };
    let unique: BTreeSet<FordSphere> = spheres.into_iter().collect();
    Ok((raw, unique.into_iter().collect()))
}

/// Nonnegative quadruple solutions of the `D = 3` quadric with
/// `a + b + c ≤ bound`, which names exactly the spheres of norm at most
/// `bound` over the fundamental triangle.
fn eis_quad_spheres(bound: i64) -> Result<Vec<FordSphere>> {
    let mut out = Vec::new();
    for a in 0..=bound {
        for b in 0..=bound - a {
            for c in 0..=bound - a - b {
                let s3 = a + b + c;
                if s3 == 0 {
                    continue;
                }
                let sym = a * b + a * c + b * c;
                if sym % s3 != 0 {
                    continue;
                }
                let m = -(sym / s3);
                if gcd4(a, b, c, m) != 1 {
                    continue;
                }
                let quad = EisQuad::new([a, b, c, m])?;
                out.push(quad.to_sphere()?.to_ford()?);
            }
        }
    }
    Ok(out)
}

/// Signed-root triples of the `D = 1` quadric over the unit square:
/// `n = a + c` is the curvature slot and `b = (m² - ac)/n` must divide out.
fn gauss_quad_spheres(bound: i64) -> Result<Vec<FordSphere>> {
    let mut out = Vec::new();
    for n in 1..=bound {
        for c in 0..=n {
            for m in 0..=n {
                let a = n - c;
                let scaled = m * m - a * c;
                if scaled % n != 0 {
                    continue;
                }
                let b = scaled / n;
                if gcd4(a, b, c, m) != 1 {
                    continue;
                }
                out.push(GaussBary { a, b, c, m }.to_sphere()?);
            }
        }
    }
    Ok(out)
}

fn filter_spheres(
    spheres: Vec<FordSphere>,
    bound: Option<i64>,
    window: &Window,
) -> Vec<FordSphere> {
    let cap = bound.map(BigInt::from);
    spheres
        .into_iter()
        .filter(|s| {
            let in_cap = cap.as_ref().map_or(true, |c| s.beta().norm() <= *c);
            // A window selects tangency points, so the plane (which has
            // none) never shows up; the surface families stay aligned
            // across the three construction routes.
            let in_window = s.tangent().is_some_and(|t| window.contains(&t));
            in_cap && in_window
        })
        .collect()
}

fn need_no_depth(args: &GenerateArgs) -> Result<()> {
    if args.depth.is_some() {
        bail!("--depth only applies to the geometric route");
    }
    Ok(())
}

fn positive_bound(args: &GenerateArgs) -> Result<i64> {
    let bound = args.bound.context("this route needs --bound")?;
    if bound < 1 {
        bail!("--bound must be at least 1, got {bound}");
    }
    Ok(bound)
}

fn gcd4(a: i64, b: i64, c: i64, d: i64) -> i64 {
    a.gcd(&b).gcd(&c).gcd(&d)
}

/// Integers `a` with `lo ≤ a/scale ≤ hi`.
fn int_range(lo: &BigRational, hi: &BigRational, scale: i64) -> std::ops::RangeInclusive<i64> {
    let s = BigRational::from_integer(BigInt::from(scale));
    let first = (lo * &s).ceil().to_integer().to_i64().unwrap_or(i64::MAX);
    let last = (hi * &s).floor().to_integer().to_i64().unwrap_or(i64::MIN);
    first..=last
}

fn parse_rational(text: &str) -> Result<BigRational> {
    BigRational::from_str(text.trim())
        .map_err(|e| anyhow!("cannot read {text:?} as a rational: {e}"))
}

fn circle_window(spec: Option<&str>) -> Result<(BigRational, BigRational)> {
    let Some(spec) = spec else {
        return Ok((BigRational::zero(), BigRational::one()));
    };
    let (lo, hi) = spec
        .split_once(':')
        .context("a circle window is `lo:hi`, e.g. `0:1` or `-1/2:1/2`")?;
    let (lo, hi) = (parse_rational(lo)?, parse_rational(hi)?);
    if lo > hi {
        bail!("window {spec:?} is empty");
    }
    Ok((lo, hi))
}

fn sphere_window(spec: Option<&str>, default: Window) -> Result<Window> {
    let Some(spec) = spec else { return Ok(default) };
    if spec.eq_ignore_ascii_case("cell") {
        return Ok(Window::Cell);
    }
    let (re, im) = spec
        .split_once(',')
        .context("a sphere window is `cell` or `x0:x1,y0:y1`")?;
    let parse_pair = |part: &str| -> Result<[BigRational; 2]> {
        let (a, b) = part.split_once(':').context("each range is `lo:hi`")?;
        let (a, b) = (parse_rational(a)?, parse_rational(b)?);
        if a > b {
            bail!("range {part:?} is empty");
        }
        Ok([a, b])
    };
    Ok(Window::Rect { re: parse_pair(re)?, im_scaled: parse_pair(im)? })
}

// ------------------------------------------------------------------ verify

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let reports =
        run_suite(&args.suite, args.d, args.bound, args.seed.unwrap_or(DEFAULT_SEED))?;
    for report in &reports {
        println!("{report}");
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    println!("{passed}/{} checks passed", reports.len());
    Ok(if passed == reports.len() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

// ----------------------------------------------------------------- convert

fn parse_ints(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .with_context(|| format!("cannot read {p:?} as an integer"))
        })
        .collect()
}

fn parse_quadint(d: Discriminant, text: &str) -> Result<QuadInt> {
    match parse_ints(text)?[..] {
        [x] => Ok(QuadInt::from_i64(d, x, 0)),
        [x, y] => Ok(QuadInt::from_i64(d, x, y)),
        _ => bail!("a ring element is `x` or `x,y` for x + yσ, got {text:?}"),
    }
}

fn cmd_convert(args: &ConvertArgs) -> Result<()> {
    let d = Discriminant::new(args.d)?;
    let sphere = match args.from {
        Repr::Ring => {
            let (alpha, beta) = args
                .coords
                .split_once(';')
                .context("ring coordinates are `alpha;beta`, e.g. `0;1` or `1,2;0,1`")?;
            FordSphere::new(parse_quadint(d, alpha)?, parse_quadint(d, beta)?)?
        }
        Repr::Barycentric => {
            let [a, b, c, m] = parse_ints(&args.coords)?[..] else {
                bail!("a barycentric quadruple is four integers `a,b,c,m`");
            };
            mu_invert(&SigmaBary::new(d, a, b, c, m)?)?
        }
    };
    match args.to {
        Repr::Ring => {
            println!("alpha = ({}, {})", sphere.alpha().x, sphere.alpha().y);
            println!("beta = ({}, {})", sphere.beta().x, sphere.beta().y);
        }
        Repr::Barycentric => {
            let q = mu_apply(&sphere)?.quad();
            println!("({}, {}, {}, {})", q[0], q[1], q[2], q[3]);
        }
    }
    Ok(())
}

// -------------------------------------------------------------------- gsea

fn cmd_gsea(args: &GseaArgs) -> Result<()> {
    let entries = parse_ints(&args.entries)?;
    match entries[..] {
        [a, b] => {
            if args.d.is_some() {
                bail!("pair reduction runs over the rationals and takes no --d");
            }
            let word = sea_pair(a, b)?;
            println!("({}, {})", word.states[0].0, word.states[0].1);
            for (state, letter) in word.states[1..].iter().zip(&word.letters) {
                println!("({}, {})  [{letter}]", state.0, state.1);
            }
            println!("rank {}, gcd {}", word.letters.len(), word.terminal.0);
        }
        [a, b, c, m] => {
            if args.d.is_some_and(|d| d != 3) {
                bail!("the quadruple reduction lives in the D = 3 ring");
            }
            let start = EisQuad::new([a, b, c, m])?;
            let trace = gsea(&start)?;
            let q = trace.states[0].entries();
            println!("({}, {}, {}, {})", q[0], q[1], q[2], q[3]);
            for (state, code) in trace.states[1..].iter().zip(&trace.step_codes) {
                let q = state.entries();
                println!("({}, {}, {}, {})  [{code}]", q[0], q[1], q[2], q[3]);
            }
            println!("rank {}, gcd {}", trace.rank(), start.gcd());
        }
        _ => bail!("give two entries `a,b` or four entries `a,b,c,m`"),
    }
    Ok(())
}
