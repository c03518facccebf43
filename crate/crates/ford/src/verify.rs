//! Named verification sweeps over the whole library: golden traces for the
//! two Euclidean reductions, three-way parameterization equalities for each
//! sphere family, the pairing-versus-geometry bridge, corollary witness
//! sweeps, and the octahedron distance identity. Each check runs to
//! completion and reports pass/fail with a human-readable summary; the
//! `verify` subcommand of the command line tool and the acceptance test
//! both drive these functions.
//!
//! Checks with a stated time budget fail when they exceed it, so a
//! regression in the generators shows up as a failed check rather than a
//! slow test run.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circles::{
    bary_to_circle, circle_to_bary, gen_circles, sea_pair, BaryTriple, FordCircle, SeaLetter,
};
use crate::eisenstein::{
    cor46_check, frame_triangle, gen_g_omega, gen_p_omega, gsea, int_sqrt, is_eisenstein_norm,
    quad_parents, EisQuad, OrbitVerdict, Surd,
};
use crate::error::{Error, Result};
use crate::gaussian::{
    cor510_check, eq9_check, gen_g_i, gen_p_i, is_eisenstein_norm_pair_sum, is_two_square_sum,
    mobius_octahedron, octahedron_graph_ok, DescartesQuad, GaussBary, OctBranch,
};
use crate::general::{eq11_enumerate, gen_p_sigma, mu_apply, pair_norm_general, SigmaBary};
use crate::quadint::{qi_coprime, qi_gcd, Discriminant, QuadInt, QuadRat};
use crate::spheres::{q_form, ExtPoint, FordSphere, Window};

/// Seed for the randomized checks; fixed so test runs are reproducible.
pub const DEFAULT_SEED: u64 = 0xF00D5EA;

/// Discriminants covered by the σ-barycentric equality sweep.
pub const SIGMA_DS: [i64; 6] = [1, 2, 3, 7, 11, 19];

/// The five norm-Euclidean discriminants, where the subtractive gcd runs.
pub const EUCLIDEAN_DS: [i64; 5] = [1, 2, 3, 7, 11];

/// Outcome of one verification sweep.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub millis: u128,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {} ({} ms) {}", self.name, self.millis, self.details)
    }
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

fn run_check(
    name: &'static str,
    budget_ms: Option<u128>,
    body: impl FnOnce() -> std::result::Result<String, String>,
) -> CheckReport {
    let start = Instant::now();
    let outcome = body();
    let millis = start.elapsed().as_millis();
    let (mut passed, mut details) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed {
        if let Some(budget) = budget_ms {
            if millis > budget {
                passed = false;
                details.push_str(&format!(" [exceeded {budget} ms budget]"));
            }
        }
    }
    CheckReport { name, passed, details, millis }
}

fn explain<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn first_diff<T: Ord + fmt::Display>(left: &BTreeSet<T>, right: &BTreeSet<T>) -> String {
    if let Some(x) = left.difference(right).next() {
        return format!("{x} only on the left");
    }
    if let Some(x) = right.difference(left).next() {
        return format!("{x} only on the right");
    }
    "sets agree".into()
}

fn gcd4(a: i64, b: i64, c: i64, d: i64) -> i64 {
    a.gcd(&b).gcd(&c).gcd(&d)
}

fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = int_sqrt(n);
    r * r == n
}

/// Golden trace of the quadruple reduction: `(12,12,3,-8)` reduces with
/// step codes `[4,3,1,2,1,4]`, rank 6, and the three recorded tangent
/// predecessors, all inside a millisecond.
pub fn check_gsea_golden() -> CheckReport {
    run_check("gsea-golden-trace", None, || {
        let q = EisQuad::new([12, 12, 3, -8]).map_err(explain)?;
        let mut best_micros = u128::MAX;
        let mut result = None;
        for _ in 0..3 {
            let clock = Instant::now();
            let trace = gsea(&q).map_err(explain)?;
            let parents = quad_parents(&q).map_err(explain)?;
            best_micros = best_micros.min(clock.elapsed().as_micros());
            result = Some((trace, parents));
        }
        let (trace, parents) = result.expect("three timed runs");
        if trace.step_codes != [4, 3, 1, 2, 1, 4] {
            return Err(format!("step codes {:?}, wanted [4, 3, 1, 2, 1, 4]", trace.step_codes));
        }
        if trace.rank() != 6 {
            return Err(format!("rank {}, wanted 6", trace.rank()));
        }
        let got: BTreeSet<[i64; 4]> = parents.iter().map(|p| p.entries()).collect();
        let want: BTreeSet<[i64; 4]> =
            [[2, 2, 0, -1], [5, 6, 2, -4], [6, 5, 2, -4]].into_iter().collect();
        if got != want {
            return Err(format!("parents {got:?}"));
        }
        if best_micros >= 1000 {
            return Err(format!("trace and parents took {best_micros} µs, budget is 1 ms"));
        }
        Ok(format!(
            "steps [4,3,1,2,1,4], rank 6, parents (2,2,0,-1) (5,6,2,-4) (6,5,2,-4) in {best_micros} µs"
        ))
    })
}

/// Golden trace of the subtractive Euclidean word: `(14,5)` spells
/// `L,L,R,L,L,L` and stops at `(1,1)`.
pub fn check_sea_golden() -> CheckReport {
    run_check("sea-golden-trace", None, || {
        use SeaLetter::{L, R};
        let word = sea_pair(14, 5).map_err(explain)?;
        if word.letters != [L, L, R, L, L, L] {
            return Err(format!("letters {:?}", word.letters));
        }
        if word.terminal != (1, 1) {
            return Err(format!("terminal {:?}, wanted (1, 1)", word.terminal));
        }
        Ok("word L,L,R,L,L,L ends at (1,1)".into())
    })
}

/// Three-way equality for Ford circles on `[0,1]`.
///
/// * The mediant recursion to the given depth must reproduce exactly the
///   reduced pairs whose subtractive word has at most `depth` letters
///   (computed independently; the deepest depth-`d` denominator is the
///   Fibonacci number `F(d+2)`), and it must contain every denominator up
///   to `depth + 1` — the largest bound the finite tree covers in full,
///   since `1/b` enters only at depth `b - 1`.
/// * The reduced pairs with `b ≤ denom_bound` must coincide with the
///   primitive barycentric quadric solutions of matching height through
///   the triple dictionary, both directions.
pub fn check_circle_equality(denom_bound: i64, depth: u32) -> CheckReport {
    run_check("circle-parameterizations", Some(1_000), move || {
        let window = (BigRational::zero(), BigRational::one());
        let mut pairs: BTreeSet<FordCircle> = BTreeSet::new();
        for b in 1..=denom_bound {
            for a in 0..=b {
                if a.gcd(&b) == 1 {
                    pairs.insert(FordCircle::new(a, b).map_err(explain)?);
                }
            }
        }

        let grown: BTreeSet<FordCircle> =
            gen_circles(depth, &window).map_err(explain)?.into_iter().collect();
        let fib_cap = {
            let (mut x, mut y) = (1i64, 1i64);
            for _ in 0..depth {
                let z = x + y;
                x = y;
                y = z;
            }
            y
        };
        let mut by_rank: BTreeSet<FordCircle> = BTreeSet::new();
        for b in 1..=fib_cap {
            for a in 0..=b {
                if a.gcd(&b) != 1 {
                    continue;
                }
                let rank =
                    if b == 1 { 0 } else { sea_pair(a, b).map_err(explain)?.letters.len() as u32 };
                if rank <= depth {
                    by_rank.insert(FordCircle::new(a, b).map_err(explain)?);
                }
            }
        }
        if grown != by_rank {
            return Err(format!(
                "depth-{depth} recursion produced {} circles, word-rank enumeration {}: {}",
                grown.len(),
                by_rank.len(),
                first_diff(&grown, &by_rank)
            ));
        }
        let covered = depth as i64 + 1;
        for b in 1..=covered {
            for a in 0..=b {
                if a.gcd(&b) == 1 && !grown.contains(&FordCircle::new(a, b).map_err(explain)?) {
                    return Err(format!("recursion to depth {depth} misses {a}/{b}"));
                }
            }
        }

        let height_cap = denom_bound * denom_bound;
        let mut solutions: BTreeSet<BaryTriple> = BTreeSet::new();
        for s in 0..=height_cap {
            for t in 0..=height_cap {
                let sum = s + t;
                if sum == 0 || sum > height_cap || (s * t) % sum != 0 {
                    continue;
                }
                let u = -(s * t) / sum;
                if s.gcd(&t).gcd(&u) != 1 {
                    continue;
                }
                solutions.insert(BaryTriple::new(s, t, u).map_err(explain)?);
            }
        }
        let images: BTreeSet<BaryTriple> = pairs.iter().map(circle_to_bary).collect();
        if solutions != images {
            return Err(format!(
                "{} quadric solutions vs {} circle shadows: {}",
                solutions.len(),
                images.len(),
                first_diff(&solutions, &images)
            ));
        }
        for triple in &solutions {
            let circle = bary_to_circle(triple).map_err(explain)?;
            if !pairs.contains(&circle) {
                return Err(format!("{triple} inverts to {circle} outside the pair set"));
            }
        }
        Ok(format!(
            "{} reduced pairs with b ≤ {denom_bound} match the quadric solutions; \
             depth-{depth} recursion = {} rank-bounded circles, complete through b ≤ {covered}",
            pairs.len(),
            grown.len()
        ))
    })
}

/// The pairing-versus-geometry bridge for the `D = 3` quadruples: over
/// every sphere-naming quadric solution with entries bounded by
/// `entry_bound` (positive leading sum, plus the plane), the pairing form
/// equals one exactly when the named spheres are geometrically tangent,
/// computed from tangency points and radii in exact integer arithmetic.
pub fn check_quad_pairing_bridge(entry_bound: i64) -> CheckReport {
    run_check("quadruple-pairing-bridge", Some(10_000), move || {
        // Tangency site of each sphere quadruple: numerator coordinates of
        // `α·conj(β)` in the `σ` basis plus the denominator `|β|²`; `None`
        // marks the plane. Distance comparisons then clear denominators:
        // the spheres touch exactly when
        // `N(w₁n₂ - w₂n₁) = n₁n₂` with `N(x + yσ) = x² + xy + y²`.
        let mut quads: Vec<([i64; 4], Option<(i64, i64, i64)>)> = Vec::new();
        for a in -entry_bound..=entry_bound {
            for b in -entry_bound..=entry_bound {
                for c in -entry_bound..=entry_bound {
                    let s3 = a + b + c;
                    if s3 <= 0 {
                        continue;
                    }
                    let sym = a * b + a * c + b * c;
                    if sym % s3 != 0 {
                        continue;
                    }
                    let d = -(sym / s3);
                    if d.abs() > entry_bound || gcd4(a, b, c, d) != 1 {
                        continue;
                    }
                    let quad = EisQuad::new([a, b, c, d]).map_err(explain)?;
                    let (alpha, beta) = quad.to_pair().map_err(explain)?;
                    let w = &alpha * &beta.conj();
                    let (p, q) = crate::eisenstein::omega_coords(&w);
                    let wx = i64::try_from(&p - &q).map_err(explain)?;
                    let wy = i64::try_from(q).map_err(explain)?;
                    quads.push((quad.entries(), Some((wx, wy, s3))));
                }
            }
        }
        quads.push(([0, 0, 0, 1], None));

        let norm3 = |x: i128, y: i128| x * x + x * y + y * y;
        let mut tangent_pairs = 0u64;
        let mut checked = 0u64;
        for i in 0..quads.len() {
            for j in i + 1..quads.len() {
                let (u, site_u) = &quads[i];
                let (v, site_v) = &quads[j];
                let pairing = q_form(u, v);
                if pairing < 1 {
                    return Err(format!("pairing {pairing} below one for {u:?} and {v:?}"));
                }
                let touching = match (site_u, site_v) {
                    (Some((x1, y1, n1)), Some((x2, y2, n2))) => {
                        let dx = (*x1 as i128) * (*n2 as i128) - (*x2 as i128) * (*n1 as i128);
                        let dy = (*y1 as i128) * (*n2 as i128) - (*y2 as i128) * (*n1 as i128);
                        norm3(dx, dy) == (*n1 as i128) * (*n2 as i128)
                    }
                    // A sphere reaches the height-one plane exactly when
                    // its diameter 1/|β|² is one.
                    (Some((_, _, n)), None) | (None, Some((_, _, n))) => *n == 1,
                    (None, None) => unreachable!("a single plane quadruple"),
                };
                if (pairing == 1) != touching {
                    return Err(format!(
                        "pairing {pairing} vs geometric contact {touching} for {u:?} and {v:?}"
                    ));
                }
                checked += 1;
                tangent_pairs += u64::from(touching);
            }
        }
        Ok(format!(
            "{} quadruples, {checked} pairs, {tangent_pairs} tangent, pairing and geometry agree",
            quads.len()
        ))
    })
}

/// Three-way equality for the `D = 3` sphere family over the fundamental
/// triangle: ring pairs, the pruned tetrahedron recursion, and direct
/// enumeration of nonnegative quadric quadruples must give the same
/// sphere set for `|β|² ≤ norm_bound`.
pub fn check_eisenstein_equality(norm_bound: i64) -> CheckReport {
    run_check("eisenstein-sphere-parameterizations", Some(30_000), move || {
        let window = frame_triangle();
        let pairs: BTreeSet<FordSphere> =
            gen_p_omega(norm_bound, &window).map_err(explain)?.into_iter().collect();

        let growth = gen_g_omega(10_000, Some(norm_bound)).map_err(explain)?;
        let cap = BigInt::from(norm_bound);
        let grown: BTreeSet<FordSphere> = growth
            .spheres
            .iter()
            .filter(|s| {
                s.beta().norm() <= cap && s.tangent().is_some_and(|t| window.contains(&t))
            })
            .cloned()
            .collect();
        if pairs != grown {
            return Err(format!(
                "{} pair spheres vs {} recursion spheres: {}",
                pairs.len(),
                grown.len(),
                first_diff(&pairs, &grown)
            ));
        }

        let mut bary: BTreeSet<FordSphere> = BTreeSet::new();
        for a in 0..=norm_bound {
            for b in 0..=norm_bound - a {
                for c in 0..=norm_bound - a - b {
                    let s3 = a + b + c;
                    if s3 == 0 {
                        continue;
                    }
                    let sym = a * b + a * c + b * c;
                    if sym % s3 != 0 {
                        continue;
                    }
                    let d = -(sym / s3);
                    if gcd4(a, b, c, d) != 1 {
                        continue;
                    }
                    let quad = EisQuad::new([a, b, c, d]).map_err(explain)?;
                    bary.insert(
                        quad.to_sphere().map_err(explain)?.to_ford().map_err(explain)?,
                    );
                }
            }
        }
        if pairs != bary {
            return Err(format!(
                "{} pair spheres vs {} quadruple spheres: {}",
                pairs.len(),
                bary.len(),
                first_diff(&pairs, &bary)
            ));
        }
        Ok(format!(
            "{} spheres from pairs, recursion ({} quadruples, plane contacted {} times), \
             and quadruple enumeration",
            pairs.len(),
            growth.quads.len(),
            growth.plane_children
        ))
    })
}

/// Three-way equality for the `D = 1` sphere family over the closed unit
/// square: ring pairs, the octahedral completion recursion, and the
/// signed-root quadruple enumeration agree for `|β|² ≤ norm_bound`, and
/// every six-sphere record the recursion produced has the octahedral
/// contact graph.
pub fn check_gaussian_equality(norm_bound: i64) -> CheckReport {
    run_check("gaussian-sphere-parameterizations", Some(60_000), move || {
        let window = Window::unit_box();
        let pairs: BTreeSet<FordSphere> =
            gen_p_i(norm_bound, &window).map_err(explain)?.into_iter().collect();

        // The completion walk may route through spheres past the target
        // norm near the window edge; double the cap before filtering.
        let growth = gen_g_i(64, Some(2 * norm_bound)).map_err(explain)?;
        let cap = BigInt::from(norm_bound);
        let grown: BTreeSet<FordSphere> = growth
            .spheres
            .iter()
            .filter(|s| {
                s.beta().norm() <= cap && s.tangent().is_some_and(|t| window.contains(&t))
            })
            .cloned()
            .collect();
        if pairs != grown {
            return Err(format!(
                "{} pair spheres vs {} recursion spheres: {}",
                pairs.len(),
                grown.len(),
                first_diff(&pairs, &grown)
            ));
        }
        for oct in &growth.octahedra {
            if !octahedron_graph_ok(oct) {
                return Err(format!("six-sphere record without octahedral contacts: {oct:?}"));
            }
        }

        let mut bary: BTreeSet<FordSphere> = BTreeSet::new();
        for n in 1..=norm_bound {
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
                    let triple = GaussBary { a, b, c, m };
                    bary.insert(triple.to_sphere().map_err(explain)?);
                }
            }
        }
        if pairs != bary {
            return Err(format!(
                "{} pair spheres vs {} quadruple spheres: {}",
                pairs.len(),
                bary.len(),
                first_diff(&pairs, &bary)
            ));
        }
        Ok(format!(
            "{} spheres from pairs, completion recursion, and signed-root triples; \
             {} octahedral records all 12-edge 4-regular",
            pairs.len(),
            growth.octahedra.len()
        ))
    })
}

/// For each requested ring: the barycentric shadows of the generated
/// sphere set over the fundamental cell equal the independently
/// enumerated quadric solutions, and the integer pairing of two shadows
/// is one exactly on geometrically tangent sphere pairs (and never below
/// one on distinct spheres).
pub fn check_sigma_equality(ds: &[i64], norm_bound: i64) -> CheckReport {
    let ds = ds.to_vec();
    run_check("sigma-barycentric-parameterizations", Some(120_000), move || {
        let mut notes = Vec::new();
        for &raw in &ds {
            let d = Discriminant::new(raw).map_err(explain)?;
            let spheres = gen_p_sigma(d, norm_bound, &Window::Cell).map_err(explain)?;
            let shadows: Vec<SigmaBary> =
                spheres.iter().map(mu_apply).collect::<Result<_>>().map_err(explain)?;
            let image: BTreeSet<SigmaBary> = shadows.iter().cloned().collect();
            let enumerated =
                eq11_enumerate(d, norm_bound, &Window::Cell).map_err(explain)?;
            if image != enumerated {
                return Err(format!(
                    "D={raw}: {} sphere shadows vs {} enumerated solutions: {}",
                    image.len(),
                    enumerated.len(),
                    first_diff(&image, &enumerated)
                ));
            }
            let mut tangent_pairs = 0u64;
            for i in 0..spheres.len() {
                for j in i + 1..spheres.len() {
                    let pairing =
                        pair_norm_general(&shadows[i], &shadows[j]).map_err(explain)?;
                    if pairing < 1 {
                        return Err(format!(
                            "D={raw}: pairing {pairing} below one for distinct spheres"
                        ));
                    }
                    let touching = spheres[i].is_tangent(&spheres[j]).map_err(explain)?;
                    if (pairing == 1) != touching {
                        return Err(format!(
                            "D={raw}: pairing {pairing} vs contact {touching} for {} and {}",
                            spheres[i], spheres[j]
                        ));
                    }
                    tangent_pairs += u64::from(touching);
                }
            }
            notes.push(format!("D={raw}: {} spheres, {tangent_pairs} tangent pairs", spheres.len()));
        }
        Ok(notes.join("; "))
    })
}

/// Witness sweeps for the three divisibility corollaries, over every
/// primitive quadric solution with entries up to `entry_bound`:
///
/// * circle triples: `|s+t|` is a perfect square;
/// * `D = 3` quadruples: `|a+b+c|` is an Eisenstein norm;
/// * signed-sum quadruples, positive orientation: `a+b` is a sum of two
///   squares and `a+b+c` a sum of two Eisenstein norms.
///
/// The last sweep uses sieved norm tables for speed; the tables are first
/// validated against the bounded-search predicates over their whole range.
pub fn check_corollary_sweeps(entry_bound: i64) -> CheckReport {
    run_check("corollary-witness-sweeps", None, move || {
        // Circle triples, canonical orientation s + t > 0 (negating a
        // solution is again a solution, so this covers every one up to
        // sign; the degenerate (0,0,±1) has |s+t| = 0, a square).
        let mut circle_count = 0u64;
        for s in -entry_bound..=entry_bound {
            for t in -entry_bound..=entry_bound {
                let sum = s + t;
                if sum <= 0 || (s * t) % sum != 0 {
                    continue;
                }
                let u = -(s * t) / sum;
                if u.abs() > entry_bound || s.gcd(&t).gcd(&u) != 1 {
                    continue;
                }
                let triple = BaryTriple::new(s, t, u).map_err(explain)?;
                if !crate::circles::check_square(&triple) {
                    return Err(format!("{triple}: s+t = {sum} is not a perfect square"));
                }
                circle_count += 1;
            }
        }

        let mut eis_count = 0u64;
        for a in -entry_bound..=entry_bound {
            for b in -entry_bound..=entry_bound {
                for c in -entry_bound..=entry_bound {
                    let s3 = a + b + c;
                    if s3 == 0 {
                        continue;
                    }
                    let sym = a * b + a * c + b * c;
                    if sym % s3 != 0 {
                        continue;
                    }
                    let d = -(sym / s3);
                    if d.abs() > entry_bound || gcd4(a, b, c, d) != 1 {
                        continue;
                    }
                    let quad = EisQuad::new([a, b, c, d]).map_err(explain)?;
                    if !cor46_check(&quad) {
                        return Err(format!("{quad}: |a+b+c| is not of the form m²+mn+n²"));
                    }
                    eis_count += 1;
                }
            }
        }
        // The only solutions with a+b+c = 0 are (0,0,0,±1); zero is an
        // Eisenstein norm.
        for sign in [1i64, -1] {
            let quad = EisQuad::new([0, 0, 0, sign]).map_err(explain)?;
            if !cor46_check(&quad) {
                return Err(format!("{quad}: zero sum rejected"));
            }
            eis_count += 1;
        }

        // Signed-sum quadruples: sieve the two norm predicates up to the
        // largest sums the sweep can produce, check the sieves against
        // the library predicates, then sweep with table lookups.
        let reach = (3 * entry_bound) as usize;
        let lim = int_sqrt(3 * entry_bound) + 1;
        let mut eis_norm = vec![false; reach + 1];
        for m in -lim..=lim {
            for k in -lim..=lim {
                let v = m * m + m * k + k * k;
                if (0..=reach as i64).contains(&v) {
                    eis_norm[v as usize] = true;
                }
            }
        }
        let mut eis_pair = vec![false; reach + 1];
        for lo in 0..=reach {
            if !eis_norm[lo] {
                continue;
            }
            for hi in lo..=reach - lo {
                if eis_norm[hi] {
                    eis_pair[lo + hi] = true;
                }
            }
        }
        for n in 0..=reach {
            if eis_norm[n] != is_eisenstein_norm(n as i64) {
                return Err(format!("norm sieve disagrees with search at {n}"));
            }
            if eis_pair[n] != is_eisenstein_norm_pair_sum(n as i64) {
                return Err(format!("norm-pair sieve disagrees with search at {n}"));
            }
        }

        let mut descartes_count = 0u64;
        let mut direct_calls = 0u64;
        for a in -entry_bound..=entry_bound {
            for b in -entry_bound..=entry_bound {
                for c in -entry_bound..=entry_bound {
                    let rad = a * b + a * c + b * c;
                    if rad < 0 || !is_square(rad) {
                        continue;
                    }
                    let root = int_sqrt(rad);
                    let s3 = a + b + c;
                    let mut seen_root = [i64::MIN; 2];
                    for (slot, sign) in [1i64, -1].into_iter().enumerate() {
                        let d = s3 + 2 * sign * root;
                        if slot == 1 && d == seen_root[0] {
                            continue;
                        }
                        seen_root[slot] = d;
                        if d.abs() > entry_bound || gcd4(a, b, c, d) != 1 {
                            continue;
                        }
                        // Positive orientation only: the negated quadruple
                        // repeats the same unordered solution.
                        if s3 + d <= 0 {
                            continue;
                        }
                        let quad = DescartesQuad::new([a, b, c, d]).map_err(explain)?;
                        let two_square = is_two_square_sum(a + b);
                        let pair_sum = (0..=reach as i64).contains(&s3) && eis_pair[s3 as usize];
                        if !(two_square && pair_sum) {
                            return Err(format!(
                                "{quad}: a+b two-square {two_square}, a+b+c norm-pair {pair_sum}"
                            ));
                        }
                        if s3 <= 40 {
                            direct_calls += 1;
                            if !cor510_check(&quad) {
                                return Err(format!("{quad}: bounded-search check failed"));
                            }
                        }
                        descartes_count += 1;
                    }
                }
            }
        }
        Ok(format!(
            "{circle_count} circle triples, {eis_count} triangular quadruples, \
             {descartes_count} signed-sum quadruples ({direct_calls} double-checked \
             by bounded search), zero failures"
        ))
    })
}

/// The integer-vector coprimality criterion agrees with the Euclidean gcd
/// on random pairs in every norm-Euclidean ring.
pub fn check_gcd_agreement(ds: &[i64], samples: u32, seed: u64) -> CheckReport {
    let ds = ds.to_vec();
    run_check("coprimality-criterion-agreement", None, move || {
        let mut notes = Vec::new();
        for &raw in &ds {
            let d = Discriminant::new(raw).map_err(explain)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (raw as u64).rotate_left(17));
            let mut coprime_count = 0u32;
            for _ in 0..samples {
                let (a, b) = loop {
                    let a = QuadInt::from_i64(
                        d,
                        rng.gen_range(-30..=30),
                        rng.gen_range(-30..=30),
                    );
                    let b = QuadInt::from_i64(
                        d,
                        rng.gen_range(-30..=30),
                        rng.gen_range(-30..=30),
                    );
                    if !(a.is_zero() && b.is_zero()) {
                        break (a, b);
                    }
                };
                let by_vector = qi_coprime(&a, &b).map_err(explain)?;
                let by_euclid = qi_gcd(&a, &b).map_err(explain)?.is_unit();
                if by_vector != by_euclid {
                    return Err(format!(
                        "D={raw}: vector test {by_vector}, Euclidean test {by_euclid} \
                         for {a} and {b}"
                    ));
                }
                coprime_count += u32::from(by_vector);
            }
            notes.push(format!("D={raw}: {samples} pairs, {coprime_count} coprime"));
        }
        Ok(notes.join("; "))
    })
}

/// Orbit dichotomy of the interval map `x ↦ x−1` (above one) and
/// `x ↦ x/(1−x)` (below one): quadratic surds cycle, rationals leave the
/// domain.
pub fn check_orbit_periodicity(rational_samples: u32, seed: u64) -> CheckReport {
    run_check("surd-orbit-periodicity", None, move || {
        let surds = [
            (Surd::sqrt_int(2).map_err(explain)?, "√2"),
            (Surd::new(1, 1, 5, 2).map_err(explain)?, "(1+√5)/2"),
            (Surd::sqrt_int(7).map_err(explain)?, "√7"),
        ];
        let mut notes = Vec::new();
        for (x, label) in surds {
            let (orbit, verdict) = crate::eisenstein::f_map_orbit(&x, 5_000).map_err(explain)?;
            match verdict {
                OrbitVerdict::Periodic { start, len } => {
                    notes.push(format!("{label}: period {len} from step {start}"));
                }
                other => {
                    return Err(format!(
                        "{label}: expected a cycle, got {other:?} after {} steps",
                        orbit.len()
                    ));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0FB17);
        for _ in 0..rational_samples {
            let p = rng.gen_range(1..=200);
            let q = rng.gen_range(1..=200);
            let x = Surd::new(p, 0, 1, q).map_err(explain)?;
            let (orbit, verdict) = crate::eisenstein::f_map_orbit(&x, 5_000).map_err(explain)?;
            if verdict != OrbitVerdict::Terminates {
                return Err(format!(
                    "{p}/{q}: expected the orbit to exit the domain, got {verdict:?} \
                     after {} steps",
                    orbit.len()
                ));
            }
        }
        notes.push(format!("{rational_samples} random rationals all exit"));
        Ok(notes.join("; "))
    })
}

/// The six-point distance identity: on the finite octahedron over
/// `(0, 1, 1+i)` exactly the opposite-edge denominator variant closes the
/// identity, and that variant continues to hold on random exact Möbius
/// images of the canonical octahedron.
pub fn check_octahedron_identity(samples: u32, seed: u64) -> CheckReport {
    run_check("octahedron-distance-identity", None, move || {
        let d = Discriminant::new(1).map_err(explain)?;
        let point = |x: i64, y: i64, den: i64| -> std::result::Result<ExtPoint, String> {
            Ok(ExtPoint::Finite(
                QuadRat::new(QuadInt::from_i64(d, x, y), BigInt::from(den)).map_err(explain)?,
            ))
        };
        let octahedron = mobius_octahedron(
            &point(0, 0, 1)?,
            &point(1, 0, 1)?,
            &point(1, 1, 1)?,
            OctBranch::PlusI,
        )
        .map_err(explain)?;
        if !octahedron.contact_is_octahedral().map_err(explain)? {
            return Err("canonical image lost the octahedral contact graph".into());
        }
        let resolved = eq9_check(&octahedron).map_err(explain)?;
        if !resolved.df_denominator_holds || resolved.bf_denominator_holds {
            return Err(format!(
                "expected only the opposite-edge denominator to close the identity, \
                 got opposite-edge {} and adjacent {}",
                resolved.df_denominator_holds, resolved.bf_denominator_holds
            ));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0C7A);
        let mut accepted = 0u32;
        let mut attempts = 0u32;
        let mut coincidences = 0u32;
        while accepted < samples {
            attempts += 1;
            if attempts > samples.saturating_mul(100) {
                return Err(format!("drew {attempts} triples without {samples} usable images"));
            }
            let mut draw = || -> std::result::Result<ExtPoint, String> {
                point(rng.gen_range(-8..=8), rng.gen_range(-8..=8), rng.gen_range(1..=4))
            };
            let (p1, p2, p3) = (draw()?, draw()?, draw()?);
            if p1 == p2 || p1 == p3 || p2 == p3 {
                continue;
            }
            let branch =
                if accepted % 2 == 0 { OctBranch::PlusI } else { OctBranch::MinusI };
            let image = match mobius_octahedron(&p1, &p2, &p3, branch) {
                Ok(image) => image,
                Err(_) => continue,
            };
            if image.points().into_iter().any(|p| matches!(p, ExtPoint::Infinity)) {
                continue;
            }
            let outcome = eq9_check(&image).map_err(explain)?;
            if !outcome.df_denominator_holds {
                return Err(format!(
                    "opposite-edge denominator failed on the image of \
                     ({p1}, {p2}, {p3}) with {branch:?}"
                ));
            }
            coincidences += u32::from(outcome.bf_denominator_holds);
            accepted += 1;
        }
        Ok(format!(
            "opposite-edge denominator resolves the identity; {samples} random images pass \
             ({attempts} draws, adjacent variant coincided {coincidences} times)"
        ))
    })
}

/// All eleven checks with their pinned scopes, in order.
pub fn run_all(seed: u64) -> Vec<CheckReport> {
    vec![
        check_gsea_golden(),
        check_sea_golden(),
        check_circle_equality(50, 12),
        check_quad_pairing_bridge(20),
        check_eisenstein_equality(50),
        check_gaussian_equality(50),
        check_sigma_equality(&SIGMA_DS, 30),
        check_corollary_sweeps(100),
        check_gcd_agreement(&EUCLIDEAN_DS, 1000, seed),
        check_orbit_periodicity(10, seed),
        check_octahedron_identity(100, seed),
    ]
}

/// The named suites driven by the command line `verify` subcommand.
/// `d` narrows the equality suite to one ring family; `bound` overrides
/// the family's default size limit.
pub fn run_suite(
    suite: &str,
    d: Option<i64>,
    bound: Option<i64>,
    seed: u64,
) -> Result<Vec<CheckReport>> {
    let reports = match suite {
        "equality" => match d {
            None => vec![
                check_circle_equality(bound.unwrap_or(50), 12),
                check_eisenstein_equality(bound.unwrap_or(50)),
                check_gaussian_equality(bound.unwrap_or(50)),
                check_sigma_equality(&SIGMA_DS, bound.unwrap_or(30)),
            ],
            Some(3) => vec![check_eisenstein_equality(bound.unwrap_or(50))],
            Some(1) => vec![check_gaussian_equality(bound.unwrap_or(50))],
            Some(other) => {
                Discriminant::new(other)?;
                vec![check_sigma_equality(&[other], bound.unwrap_or(30))]
            }
        },
        "tangency" => vec![
            check_quad_pairing_bridge(bound.unwrap_or(20)),
            check_octahedron_identity(100, seed),
        ],
        "corollaries" => vec![
            check_corollary_sweeps(bound.unwrap_or(100)),
            check_gcd_agreement(&EUCLIDEAN_DS, 1000, seed),
        ],
        "algorithms" => vec![
            check_gsea_golden(),
            check_sea_golden(),
            check_orbit_periodicity(10, seed),
        ],
        "all" => run_all(seed),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; expected equality, tangency, corollaries, \
                 algorithms, or all"
            )))
        }
    };
    Ok(reports)
}
