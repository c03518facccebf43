//! The Gaussian Ford spheres (`D = 1`) and their octahedral structure.
//! Tangent triples of spheres here extend to octahedra rather than
//! tetrahedra: six spheres, twelve tangencies, three opposite pairs. The
//! integer shadow is the Descartes world — triples `(a, b, c)` with
//! `ab+ac+bc` a perfect square and quadruples on
//! `(a+b+c+d)² = 2(a²+b²+c²+d²)` — connected to coprime Gaussian pairs by
//! an explicit change of coordinates that carries a signed square root.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Signed;

use crate::eisenstein::{int_sqrt, is_eisenstein_norm};
use crate::error::{Error, Result};
use crate::quadint::{
    qi_coprime, qi_hermitian, qi_sea, Discriminant, PairSide, QuadInt, QuadRat,
};
use crate::spheres::{gen_spheres, ExtPoint, FordSphere, MobiusMap, NormalSphere, SurdRadius, Window};

fn d1() -> Discriminant {
    Discriminant::new(1).expect("1 is a valid discriminant")
}

/// The two parents of a Gaussian pair under the slow Euclidean algorithm:
/// take the penultimate state `(a', b')`, split it into `[a', 0]` and
/// `[0, b']`, and replay the reversed reduction word on both halves. The
/// parents sum to the input and have strictly smaller run length.
pub fn gauss_parents(
    alpha: &QuadInt,
    beta: &QuadInt,
) -> Result<((QuadInt, QuadInt), (QuadInt, QuadInt))> {
    if alpha.d.get() != 1 {
        return Err(Error::DiscriminantMismatch(alpha.d.get(), 1));
    }
    if !qi_coprime(alpha, beta)? {
        return Err(Error::NotCoprime);
    }
    let trace = qi_sea(alpha, beta)?;
    let r = trace.rank();
    if r == 0 {
        return Err(Error::RankZero);
    }
    let (pa, pb) = trace.states[r - 1].clone();
    let zero = QuadInt::zero(alpha.d);
    let mut first = (pa, zero.clone());
    let mut second = (zero, pb);
    for step in trace.steps[..r - 1].iter().rev() {
        // Inverse of `e ← e - m·other` is `e ← e + m·other`.
        for p in [&mut first, &mut second] {
            match step.side {
                PairSide::First => p.0 = &p.0 + &(&step.multiplier * &p.1),
                PairSide::Second => p.1 = &p.1 + &(&step.multiplier * &p.0),
            }
        }
    }
    Ok((first, second))
}

/// Run length of the slow Euclidean algorithm on a pair.
pub fn sea_rank(alpha: &QuadInt, beta: &QuadInt) -> Result<usize> {
    Ok(qi_sea(alpha, beta)?.rank())
}

/// All canonical coprime Gaussian sphere pairs with `|β|² ≤ norm_bound`
/// and tangency point inside the window.
pub fn gen_p_i(norm_bound: i64, window: &Window) -> Result<Vec<FordSphere>> {
    gen_spheres(d1(), norm_bound, window)
}

/// A Gaussian pair in raw `i64` coordinates `(αx, αy, βx, βy)`, scaled to
/// the canonical unit associate. The recursive generator works on these to
/// stay in machine integers.
type RawPair = [i64; 4];

fn raw_canonical(p: RawPair) -> RawPair {
    let rot = |q: RawPair| [-q[1], q[0], -q[3], q[2]]; // multiply by i
    let mut cur = p;
    for _ in 0..4 {
        if (cur[2] > 0 && cur[3] >= 0) || (cur[2] == 0 && cur[3] == 0 && cur[0] > 0 && cur[1] == 0)
        {
            return cur;
        }
        cur = rot(cur);
    }
    // β = 0 but α not normalized to a positive real: the loop above hits
    // the plane form (1,0,0,0) for unit α, which coprimality guarantees.
    unreachable!("no canonical associate for {p:?}")
}

fn raw_det_norm(u: &RawPair, v: &RawPair) -> i64 {
    // det = α_u β_v - β_u α_v in complex i64 arithmetic.
    let re = u[0] * v[2] - u[1] * v[3] - (u[2] * v[0] - u[3] * v[1]);
    let im = u[0] * v[3] + u[1] * v[2] - (u[2] * v[1] + u[3] * v[0]);
    re * re + im * im
}

fn raw_add(u: &RawPair, v: &RawPair) -> RawPair {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3]]
}

/// `u + ρ·v` for `ρ = i` (`rot = 1`) or `ρ = -i` (`rot = -1`).
fn raw_add_rot(u: &RawPair, v: &RawPair, rot: i64) -> RawPair {
    [
        u[0] - rot * v[1],
        u[1] + rot * v[0],
        u[2] - rot * v[3],
        u[3] + rot * v[2],
    ]
}

fn raw_to_sphere(p: &RawPair) -> Result<FordSphere> {
    let d = d1();
    FordSphere::new(QuadInt::from_i64(d, p[0], p[1]), QuadInt::from_i64(d, p[2], p[3]))
}

/// Output of the octahedral closure: the sphere set and every six-sphere
/// configuration the rule produced (each must have the octahedral contact
/// graph).
#[derive(Clone, Debug)]
pub struct GaussGeneration {
    pub spheres: Vec<FordSphere>,
    pub octahedra: Vec<[RawPair; 6]>,
}

/// Close the roots `S_{0,1}`, `S_{1,1}`, `S_{1,0}` under the octahedral
/// completion rule: every tangent pair `U, V` contributes the mediant
/// `S[U+V]` and, for `ρ = ±i`, the spheres `S[U+ρV]`, `S[U+ρ(U+V)]`,
/// `S[U+V+ρV]`. With `norm_cap` set, children are pruned to
/// `|β|² ≤ cap` and tangency points within one unit of the unit square,
/// which keeps deep runs finite without losing in-window spheres.
pub fn gen_g_i(depth: usize, norm_cap: Option<i64>) -> Result<GaussGeneration> {
    let keep = |p: &RawPair| -> bool {
        let Some(cap) = norm_cap else { return true };
        let n = p[2] * p[2] + p[3] * p[3];
        if n == 0 {
            return true; // the plane
        }
        if n > cap {
            return false;
        }
        // tangent = α·conj(β)/n; demand re, im ∈ [-1, 2].
        let re = p[0] * p[2] + p[1] * p[3];
        let im = p[1] * p[2] - p[0] * p[3];
        -n <= re && re <= 2 * n && -n <= im && im <= 2 * n
    };
    let mut set: BTreeSet<RawPair> = BTreeSet::new();
    set.insert(raw_canonical([0, 0, 1, 0]));
    set.insert(raw_canonical([1, 0, 1, 0]));
    set.insert(raw_canonical([1, 0, 0, 0]));
    let mut octahedra: BTreeSet<[RawPair; 6]> = BTreeSet::new();
    let mut fresh: Vec<RawPair> = set.iter().copied().collect();
    for _ in 0..depth {
        let mut next_fresh: Vec<RawPair> = Vec::new();
        // Only pairs touching a sphere new in the previous round can
        // produce anything unseen, so scan fresh-against-everything
        // rather than all pairs. The completion rule is symmetric in the
        // pair up to unit multiples, which canonicalization absorbs.
        let fresh_set: HashSet<RawPair> = fresh.iter().copied().collect();
        let stale: Vec<RawPair> =
            set.iter().copied().filter(|p| !fresh_set.contains(p)).collect();
        for (fi, &u) in fresh.iter().enumerate() {
            for &v in stale.iter().chain(&fresh[fi + 1..]) {
                if raw_det_norm(&u, &v) != 1 {
                    continue;
                }
                let med = raw_add(&u, &v);
                for rot in [1i64, -1] {
                    let children = [
                        med,
                        raw_add_rot(&u, &v, rot),
                        raw_add_rot(&u, &med, rot),
                        raw_add_rot(&med, &v, rot),
                    ];
                    let mut oct = [u, v, raw_canonical(med), [0; 4], [0; 4], [0; 4]];
                    for (slot, child) in oct[3..].iter_mut().zip(&children[1..]) {
                        *slot = raw_canonical(*child);
                    }
                    oct.sort();
                    octahedra.insert(oct);
                    for child in children {
                        let c = raw_canonical(child);
                        if keep(&c) && set.insert(c) {
                            next_fresh.push(c);
                        }
                    }
                }
            }
        }
        if next_fresh.is_empty() {
            break;
        }
        fresh = next_fresh;
    }
    let mut spheres = BTreeSet::new();
    for p in &set {
        spheres.insert(raw_to_sphere(p)?);
    }
    Ok(GaussGeneration {
        spheres: spheres.into_iter().collect(),
        octahedra: octahedra.into_iter().collect(),
    })
}

/// Exact contact test of a six-sphere record: twelve tangent pairs, each
/// sphere missing exactly its opposite.
pub fn octahedron_graph_ok(oct: &[RawPair; 6]) -> bool {
    let mut edges = 0;
    let mut degrees = [0usize; 6];
    for i in 0..6 {
        for j in i + 1..6 {
            if raw_det_norm(&oct[i], &oct[j]) == 1 {
                edges += 1;
                degrees[i] += 1;
                degrees[j] += 1;
            }
        }
    }
    edges == 12 && degrees.iter().all(|&d| d == 4)
}

/// The cross-ratio `[z, q, r, s] = (z-q)(r-s) / ((z-s)(r-q))` with the
/// point at infinity handled by symbolic cancellation. Möbius-invariant;
/// `q`, `r`, `s` must be pairwise distinct.
pub fn cross_ratio(z: &ExtPoint, q: &ExtPoint, r: &ExtPoint, s: &ExtPoint) -> Result<ExtPoint> {
    for (x, y) in [(q, r), (q, s), (r, s)] {
        if x == y {
            return Err(Error::Degenerate(format!("coincident reference points {x}")));
        }
    }
    use ExtPoint::*;
    let fin = |p: &ExtPoint| p.as_finite().cloned();
    let ratio = |num: QuadRat, den: QuadRat| -> Result<ExtPoint> {
        if den.is_zero() {
            Ok(Infinity)
        } else {
            Ok(Finite(num.div(&den)?))
        }
    };
    match (z, q, r, s) {
        (Infinity, _, _, _) => {
            // (z-q)/(z-s) → 1.
            let (q, r, s) = (fin(q).unwrap(), fin(r).unwrap(), fin(s).unwrap());
            ratio(&r - &s, &r - &q)
        }
        (_, Infinity, _, _) => {
            // (z-q)/(r-q) → 1.
            let (z, r, s) = (fin(z).unwrap(), fin(r).unwrap(), fin(s).unwrap());
            ratio(&r - &s, &z - &s)
        }
        (_, _, Infinity, _) => {
            // (r-s)/(r-q) → 1.
            let (z, q, s) = (fin(z).unwrap(), fin(q).unwrap(), fin(s).unwrap());
            ratio(&z - &q, &z - &s)
        }
        (_, _, _, Infinity) => {
            // (r-s)/(z-s) → 1.
            let (z, q, r) = (fin(z).unwrap(), fin(q).unwrap(), fin(r).unwrap());
            ratio(&z - &q, &r - &q)
        }
        _ => {
            let (z, q, r, s) =
                (fin(z).unwrap(), fin(q).unwrap(), fin(r).unwrap(), fin(s).unwrap());
            ratio(&(&z - &q) * &(&r - &s), &(&z - &s) * &(&r - &q))
        }
    }
}

/// Six points carrying an octahedral sphere configuration: two opposite
/// triangles with antipodes index-aligned (`triangle1[k]` opposite
/// `triangle2[k]`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MobiusOctahedron {
    pub triangle1: [ExtPoint; 3],
    pub triangle2: [ExtPoint; 3],
}

/// Which of the two octahedra through a tangent triple to build: the
/// canonical second triangle uses `i` or its conjugate uses `-i`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum OctBranch {
    #[default]
    PlusI,
    MinusI,
}

/// Build the Möbius octahedron over three distinct Gaussian points: the
/// image of the canonical vertex set `{0, 1, ∞, 1+i, i, (1+i)/2}` under
/// the map sending `0, 1, ∞` to the given points. The second branch uses
/// the conjugate vertex set.
pub fn mobius_octahedron(
    p1: &ExtPoint,
    p2: &ExtPoint,
    p3: &ExtPoint,
    branch: OctBranch,
) -> Result<MobiusOctahedron> {
    let d = d1();
    for p in [p1, p2, p3] {
        if let Some(f) = p.as_finite() {
            if f.d() != d {
                return Err(Error::UnsupportedDiscriminant(f.d().get()));
            }
        }
    }
    let m = MobiusMap::sending_standard_triple(d, p1, p2, p3)?;
    let sign = match branch {
        OctBranch::PlusI => 1,
        OctBranch::MinusI => -1,
    };
    let qr = |x: i64, y: i64, den: i64| {
        ExtPoint::Finite(
            QuadRat::new(QuadInt::from_i64(d, x, sign * y), BigInt::from(den)).unwrap(),
        )
    };
    let verts = [qr(1, 1, 1), qr(0, 1, 1), qr(1, 1, 2)];
    let mut triangle2 = Vec::with_capacity(3);
    for v in verts {
        triangle2.push(m.apply_point(&v)?);
    }
    Ok(MobiusOctahedron {
        triangle1: [p1.clone(), p2.clone(), p3.clone()],
        triangle2: triangle2.try_into().expect("three images"),
    })
}

impl MobiusOctahedron {
    pub fn points(&self) -> [&ExtPoint; 6] {
        [
            &self.triangle1[0],
            &self.triangle1[1],
            &self.triangle1[2],
            &self.triangle2[0],
            &self.triangle2[1],
            &self.triangle2[2],
        ]
    }

    fn finite_points(&self) -> Result<[QuadRat; 6]> {
        let mut out = Vec::with_capacity(6);
        for p in self.points() {
            match p.as_finite() {
                Some(q) => out.push(q.clone()),
                None => {
                    return Err(Error::InvalidArgument(
                        "octahedron check needs all six points finite".into(),
                    ))
                }
            }
        }
        Ok(out.try_into().expect("six points"))
    }

    /// Verify the contact graph of the induced spheres: radii come from
    /// the mutual-tangency of each triangle (a face), then all fifteen
    /// pairs are tested exactly. Requires finite points.
    pub fn contact_is_octahedral(&self) -> Result<bool> {
        let p = self.finite_points()?;
        let r1 = crate::spheres::mutual_radii(&p[0], &p[1], &p[2])?;
        let r2 = crate::spheres::mutual_radii(&p[3], &p[4], &p[5])?;
        let radius = |k: usize| -> &SurdRadius {
            if k < 3 {
                &r1[k]
            } else {
                &r2[k - 3]
            }
        };
        let four = BigRational::from_integer(BigInt::from(4));
        for i in 0..6 {
            for j in i + 1..6 {
                let dist_sq = (&p[i] - &p[j]).norm();
                let prod = radius(i).mul(radius(j));
                // 4·r_i·r_j must be rational to even compare; tangency is
                // exact equality with the squared distance.
                let tangent = prod
                    .as_rational()
                    .map(|pr| &four * &pr == dist_sq)
                    .unwrap_or(false);
                let antipodal = j == i + 3;
                if tangent == antipodal {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Which denominator closes the octahedron distance identity
/// `(AE)² = (AB)(AC)(ED)(EF) / denom`: the product of opposite-edge pair
/// `(BC)(DF)`, or the printed variant `(BC)(BF)`. Both are evaluated
/// exactly, squared, under all six letter rotations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Eq9Outcome {
    pub df_denominator_holds: bool,
    pub bf_denominator_holds: bool,
}

/// Evaluate the distance identity on a finite Möbius octahedron with the
/// lettering `A, C, E = triangle1`, `D, F, B = triangle2` (antipodes
/// `A–D`, `C–F`, `E–B`), under every rotation and triangle swap.
pub fn eq9_check(oct: &MobiusOctahedron) -> Result<Eq9Outcome> {
    let p = oct.finite_points()?;
    // Index letters into the six points: A C E D F B.
    let letter = |t1: [usize; 3], t2: [usize; 3]| -> [usize; 6] {
        [t1[0], t1[1], t1[2], t2[0], t2[1], t2[2]]
    };
    let mut labelings = Vec::new();
    for r in 0..3 {
        let rot = |k: usize| (k + r) % 3;
        let t1 = [rot(0), rot(1), rot(2)];
        let t2 = [rot(0) + 3, rot(1) + 3, rot(2) + 3];
        labelings.push(letter(t1, t2));
        labelings.push(letter([t2[0], t2[1], t2[2]], [t1[0], t1[1], t1[2]]));
    }
    let sq = |i: usize, j: usize| (&p[i] - &p[j]).norm();
    let mut df_all = true;
    let mut bf_all = true;
    for lab in labelings {
        let [a, c, e, d, f, b] = lab;
        let ae = sq(a, e);
        let num = sq(a, b) * sq(a, c) * sq(e, d) * sq(e, f);
        let den_df = sq(b, c) * sq(d, f);
        let den_bf = sq(b, c) * sq(b, f);
        // (AE)²·den = product of distances: compare squared quantities.
        df_all &= &ae * &ae * den_df == num;
        bf_all &= &ae * &ae * den_bf == num;
    }
    Ok(Eq9Outcome { df_denominator_holds: df_all, bf_denominator_holds: bf_all })
}

/// A triple with `ab+ac+bc` a perfect square and no common factor; the
/// integer shadow of a Gaussian Ford sphere.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DescartesTriple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl DescartesTriple {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        use num::Integer;
        if a.gcd(&b).gcd(&c) != 1 {
            return Err(Error::InvalidArgument(format!(
                "triple ({a},{b},{c}) has a common factor"
            )));
        }
        let s = a * b + a * c + b * c;
        let r = int_sqrt(s);
        if s < 0 || r * r != s {
            return Err(Error::NotASquare(format!("ab+ac+bc = {s}")));
        }
        Ok(DescartesTriple { a, b, c })
    }

    pub fn radical(&self) -> i64 {
        int_sqrt(self.a * self.b + self.a * self.c + self.b * self.c)
    }
}

impl fmt::Display for DescartesTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// An integer quadruple on `(a+b+c+d)² = 2(a²+b²+c²+d²)` with gcd one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DescartesQuad(pub [i64; 4]);

impl DescartesQuad {
    pub fn new(q: [i64; 4]) -> Result<Self> {
        use num::Integer;
        let s: i64 = q.iter().sum();
        let sq: i64 = q.iter().map(|&x| x * x).sum();
        if s * s != 2 * sq {
            return Err(Error::OffQuadric(q));
        }
        if q.iter().fold(0i64, |g, &v| g.gcd(&v)) != 1 {
            return Err(Error::InvalidArgument(format!("quadruple {q:?} has a common factor")));
        }
        Ok(DescartesQuad(q))
    }
}

impl fmt::Display for DescartesQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Extend a triple to the quadric by `d = a+b+c ± 2√(ab+ac+bc)`.
pub fn descartes_convert(t: &DescartesTriple, sign: i8) -> Result<DescartesQuad> {
    let root = t.radical();
    let d = t.a + t.b + t.c + 2 * i64::from(sign.signum()) * root;
    DescartesQuad::new([t.a, t.b, t.c, d])
}

/// The barycentric shadow of a Gaussian pair, with the signed square root
/// carried explicitly: `m² = ab + ac + bc` identically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GaussBary {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub m: i64,
}

impl GaussBary {
    pub fn triple(&self) -> Result<DescartesTriple> {
        DescartesTriple::new(self.a, self.b, self.c)
    }

    /// Curvature slot `|β|² = a + c`; zero for the plane.
    pub fn beta_norm(&self) -> i64 {
        self.a + self.c
    }

    /// Recover the sphere: tangency point `(m + ci)/(a+c)`, curvature
    /// `2(a+c)`; `a + c = 0` names the plane.
    pub fn to_sphere(&self) -> Result<FordSphere> {
        let d = d1();
        let n = self.beta_norm();
        if n == 0 {
            return FordSphere::plane(d);
        }
        if n < 0 {
            return Err(Error::NonPositiveSum(n));
        }
        let t = QuadRat::new(QuadInt::from_i64(d, self.m, self.c), BigInt::from(n))?;
        let s = FordSphere::from_point(&t)?;
        if s.beta().norm() != BigInt::from(n) {
            return Err(Error::Invariant(format!(
                "triple ({},{},{},{}) is not primitive over its sphere",
                self.a, self.b, self.c, self.m
            )));
        }
        Ok(s)
    }
}

impl fmt::Display for GaussBary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}; m={})", self.a, self.b, self.c, self.m)
    }
}

/// Barycentric coordinates of the sphere `S_{α,β}`: with
/// `s + it = conj(α)·β`,
///
/// ```text
/// a = |β|² + t    b = |α|² + t    c = -t    m = s
/// ```
pub fn gauss_to_bary(alpha: &QuadInt, beta: &QuadInt) -> Result<GaussBary> {
    if alpha.d.get() != 1 {
        return Err(Error::DiscriminantMismatch(alpha.d.get(), 1));
    }
    if !qi_coprime(alpha, beta)? {
        return Err(Error::NotCoprime);
    }
    let h = qi_hermitian(alpha, beta)?;
    let to_i64 = |b: &BigInt| -> Result<i64> {
        b.try_into().map_err(|_| Error::Overflow("barycentric triple"))
    };
    let t = to_i64(&h.t_over_root)?;
    let s2 = to_i64(&h.two_s)?;
    debug_assert_eq!(s2 % 2, 0, "Re(conj(α)β) is integral over Z[i]");
    let s = s2 / 2;
    let a = to_i64(&beta.norm())? + t;
    let b = to_i64(&alpha.norm())? + t;
    let c = -t;
    let g = GaussBary { a, b, c, m: s };
    debug_assert_eq!(
        (g.m as i128) * (g.m as i128),
        (g.a as i128) * (g.b as i128) + (g.a as i128) * (g.c as i128) + (g.b as i128) * (g.c as i128)
    );
    Ok(g)
}

/// The tangency pairing of two triples-with-sign:
/// `aB+aC+bA+bC+cA+cB - 2mm'`. Equals `|αδ - βγ|²` for the corresponding
/// Gaussian pairs; zero on equal triples, one exactly on tangent spheres.
pub fn pair_norm_descartes(t1: &GaussBary, t2: &GaussBary) -> i64 {
    let cross = t1.a * t2.b + t1.a * t2.c + t1.b * t2.a + t1.b * t2.c + t1.c * t2.a + t1.c * t2.b;
    cross - 2 * t1.m * t2.m
}

/// Two-squares and Eisenstein-norm decompositions of the leading sums:
/// `a + b` must be `m² + n²` and `a + b + c` a sum of two values of
/// `m² + mn + n²`, both by bounded search.
pub fn cor510_check(q: &DescartesQuad) -> bool {
    let [a, b, c, _] = q.0;
    is_two_square_sum(a + b) && is_eisenstein_norm_pair_sum(a + b + c)
}

pub(crate) fn is_two_square_sum(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let lim = int_sqrt(n);
    (0..=lim).any(|m| {
        let rest = n - m * m;
        let r = int_sqrt(rest);
        r * r == rest
    })
}

pub(crate) fn is_eisenstein_norm_pair_sum(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    (0..=n).any(|k| is_eisenstein_norm(k) && is_eisenstein_norm(n - k))
}

/// A circle in the base plane with exact center and radius.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlanarCircle {
    pub center: QuadRat,
    pub radius: BigRational,
}

impl PlanarCircle {
    pub fn new(center: QuadRat, radius: BigRational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::InvalidArgument("circle radius must be positive".into()));
        }
        Ok(PlanarCircle { center, radius })
    }

    pub fn curvature(&self) -> BigRational {
        self.radius.recip()
    }
}

/// The sphere erected over the tangency point of two externally tangent
/// circles: its curvature is the sum of theirs. Spheres built over the
/// three tangencies of a mutually tangent circle triple are themselves
/// mutually tangent.
pub fn sphere_over_tangency(c1: &PlanarCircle, c2: &PlanarCircle) -> Result<NormalSphere> {
    let dist_sq = (&c1.center - &c2.center).norm();
    let rsum = &c1.radius + &c2.radius;
    if dist_sq != &rsum * &rsum {
        return Err(Error::NotTangent);
    }
    // The tangency point divides the center segment r₁ : r₂.
    let w1 = &c2.radius / &rsum;
    let w2 = &c1.radius / &rsum;
    let point = &c1.center.scale(&w1) + &c2.center.scale(&w2);
    let radius = (c1.curvature() + c2.curvature()).recip();
    NormalSphere::ball(point, radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    fn qi(x: i64, y: i64) -> QuadInt {
        QuadInt::from_i64(d1(), x, y)
    }

    fn qr(x: i64, y: i64, den: i64) -> QuadRat {
        QuadRat::new(qi(x, y), BigInt::from(den)).unwrap()
    }

    fn fin(x: i64, y: i64, den: i64) -> ExtPoint {
        ExtPoint::Finite(qr(x, y, den))
    }

    #[test]
    fn parents_one_step() {
        let (p1, p2) = gauss_parents(&qi(1, 0), &qi(1, 1)).unwrap();
        // [1, 1+i] = [1,1] + [0,i].
        assert_eq!(p1, (qi(1, 0), qi(1, 0)));
        assert_eq!(p2, (qi(0, 0), qi(0, 1)));
        assert_eq!(&p1.0 + &p2.0, qi(1, 0));
        assert_eq!(&p1.1 + &p2.1, qi(1, 1));
        // Unit pairs have rank issues only at rank zero.
        assert_eq!(gauss_parents(&qi(0, 0), &qi(1, 0)).unwrap_err(), Error::RankZero);
    }

    #[test]
    fn parents_sum_and_shrink_rank() {
        for ax in -3..=3i64 {
            for ay in -3..=3i64 {
                for bx in -3..=3i64 {
                    for by in 0..=3i64 {
                        let (a, b) = (qi(ax, ay), qi(bx, by));
                        if (a.is_zero() && b.is_zero())
                            || !qi_coprime(&a, &b).unwrap_or(false)
                        {
                            continue;
                        }
                        let r = sea_rank(&a, &b).unwrap();
                        if r == 0 {
                            continue;
                        }
                        let (p1, p2) = gauss_parents(&a, &b).unwrap();
                        assert_eq!(&p1.0 + &p2.0, a);
                        assert_eq!(&p1.1 + &p2.1, b);
                        for p in [&p1, &p2] {
                            if p.0.is_zero() && p.1.is_zero() {
                                continue;
                            }
                            assert!(sea_rank(&p.0, &p.1).unwrap() < r, "({a},{b})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unit_square_enumeration() {
        let w = Window::unit_box();
        let one = gen_p_i(1, &w).unwrap();
        // Spheres of radius 1/2 at 0, 1, i, 1+i.
        assert_eq!(one.len(), 4);
        for s in &one {
            assert_eq!(s.curvature(), BigInt::from(2));
        }
        // |β|² = 2 adds exactly the center sphere S_{i,1+i} over (1+i)/2.
        let two = gen_p_i(2, &w).unwrap();
        assert_eq!(two.len(), one.len() + 1);
        let center = FordSphere::new(qi(0, 1), qi(1, 1)).unwrap();
        assert!(two.contains(&center));
        assert!(gen_p_i(0, &w).unwrap().is_empty());
    }

    #[test]
    fn octahedral_closure_small_depth() {
        let g0 = gen_g_i(0, None).unwrap();
        assert_eq!(g0.spheres.len(), 3);
        assert!(g0.spheres.iter().any(|s| s.is_plane()));
        let g1 = gen_g_i(1, None).unwrap();
        assert!(g1.spheres.len() > 3);
        // A ±i-rotated sphere from the first octahedron round.
        let si = FordSphere::new(qi(0, 1), qi(1, 0)).unwrap();
        let si_minus = FordSphere::new(qi(0, -1), qi(1, 0)).unwrap();
        assert!(g1.spheres.contains(&si) || g1.spheres.contains(&si_minus));
        for oct in &g1.octahedra {
            assert!(octahedron_graph_ok(oct), "{oct:?}");
        }
    }

    #[test]
    fn cross_ratio_normalization() {
        let z = fin(3, 2, 5);
        let got = cross_ratio(&z, &fin(0, 0, 1), &fin(1, 0, 1), &ExtPoint::Infinity).unwrap();
        assert_eq!(got, z);
        let got = cross_ratio(&fin(0, 1, 1), &fin(0, 0, 1), &fin(1, 0, 1), &ExtPoint::Infinity)
            .unwrap();
        assert_eq!(got, fin(0, 1, 1));
        // Möbius invariance under translation z ↦ z + 1.
        let pts = [fin(1, 1, 2), fin(0, 1, 1), fin(2, -1, 3), fin(1, 0, 1)];
        let shift = |p: &ExtPoint| match p.as_finite() {
            Some(q) => ExtPoint::Finite(q + &QuadRat::one(d1())),
            None => ExtPoint::Infinity,
        };
        let base = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let moved = cross_ratio(
            &shift(&pts[0]),
            &shift(&pts[1]),
            &shift(&pts[2]),
            &shift(&pts[3]),
        )
        .unwrap();
        assert_eq!(base, moved);
        // Degenerate reference points are refused.
        assert!(cross_ratio(&pts[0], &pts[1], &pts[1], &pts[3]).is_err());
    }

    #[test]
    fn canonical_octahedron_and_contact() {
        let o = mobius_octahedron(
            &fin(0, 0, 1),
            &fin(1, 0, 1),
            &ExtPoint::Infinity,
            OctBranch::PlusI,
        )
        .unwrap();
        assert_eq!(o.triangle2, [fin(1, 1, 1), fin(0, 1, 1), fin(1, 1, 2)]);
        // A finite Möbius image: apply z ↦ 1/(z - (1+i))-style map by
        // choosing a finite target triple instead.
        let finite = mobius_octahedron(&fin(0, 0, 1), &fin(1, 0, 1), &fin(1, 1, 1), OctBranch::PlusI)
            .unwrap();
        assert!(finite.contact_is_octahedral().unwrap());
        // The minus branch gives the conjugate second triangle at the
        // canonical position.
        let conj = mobius_octahedron(
            &fin(0, 0, 1),
            &fin(1, 0, 1),
            &ExtPoint::Infinity,
            OctBranch::MinusI,
        )
        .unwrap();
        assert_eq!(conj.triangle2, [fin(1, -1, 1), fin(0, -1, 1), fin(1, -1, 2)]);
    }

    #[test]
    fn eq9_resolves_on_finite_image() {
        let finite = mobius_octahedron(&fin(0, 0, 1), &fin(1, 0, 1), &fin(1, 1, 1), OctBranch::PlusI)
            .unwrap();
        let out = eq9_check(&finite).unwrap();
        assert!(out.df_denominator_holds);
        assert!(!out.bf_denominator_holds);
        // Perturbing one vertex breaks the identity.
        let mut bad = finite.clone();
        bad.triangle2[2] = fin(9, 9, 7);
        assert!(!eq9_check(&bad).unwrap().df_denominator_holds);
        // Points at infinity are rejected.
        let with_inf =
            mobius_octahedron(&fin(0, 0, 1), &fin(1, 0, 1), &ExtPoint::Infinity, OctBranch::PlusI)
                .unwrap();
        assert!(eq9_check(&with_inf).is_err());
    }

    #[test]
    fn descartes_conversions() {
        let t = DescartesTriple::new(0, 0, 1).unwrap();
        assert_eq!(descartes_convert(&t, 1).unwrap(), DescartesQuad::new([0, 0, 1, 1]).unwrap());
        let t = DescartesTriple::new(-1, 2, 2).unwrap();
        assert_eq!(t.radical(), 0);
        let q = descartes_convert(&t, 1).unwrap();
        assert_eq!(q, DescartesQuad::new([-1, 2, 2, 3]).unwrap());
        assert_eq!(descartes_convert(&t, -1).unwrap(), q);
        assert!(DescartesTriple::new(1, 1, 1).is_err()); // 3 is not a square
        assert!(DescartesQuad::new([1, 1, 1, 1]).is_err());
        assert!(cor510_check(&q)); // 1 = 1+0, 3 = 3+0
        assert!(cor510_check(&DescartesQuad::new([0, 0, 1, 1]).unwrap()));
    }

    #[test]
    fn bary_shadow_of_pairs() {
        let g = gauss_to_bary(&qi(0, 0), &qi(1, 0)).unwrap();
        assert_eq!(g, GaussBary { a: 1, b: 0, c: 0, m: 0 });
        let g = gauss_to_bary(&qi(1, 0), &qi(1, 0)).unwrap();
        assert_eq!(g, GaussBary { a: 1, b: 1, c: 0, m: 1 });
        assert_eq!(g.triple().unwrap(), DescartesTriple::new(1, 1, 0).unwrap());
        // Self-pairing vanishes; the frame pair pairs to 1.
        assert_eq!(pair_norm_descartes(&g, &g), 0);
        let e1 = GaussBary { a: 1, b: 0, c: 0, m: 0 };
        let e2 = GaussBary { a: 0, b: 1, c: 0, m: 0 };
        assert_eq!(pair_norm_descartes(&e1, &e2), 1);
        // Round trip through the sphere.
        let s = g.to_sphere().unwrap();
        assert_eq!(s, FordSphere::new(qi(1, 0), qi(1, 0)).unwrap());
        let plane = gauss_to_bary(&qi(1, 0), &qi(0, 0)).unwrap();
        assert_eq!(plane.beta_norm(), 0);
        assert!(plane.to_sphere().unwrap().is_plane());
    }

    #[test]
    fn pairing_matches_determinant_norm() {
        for ax in -2..=2i64 {
            for ay in -2..=2i64 {
                for bx in 0..=2i64 {
                    for by in 0..=2i64 {
                        let (a, b) = (qi(ax, ay), qi(bx, by));
                        if a.is_zero() && b.is_zero() {
                            continue;
                        }
                        if !qi_coprime(&a, &b).unwrap() {
                            continue;
                        }
                        let g1 = gauss_to_bary(&a, &b).unwrap();
                        for (c, d) in [(qi(1, 0), qi(1, 1)), (qi(0, 1), qi(1, 0)), (qi(2, 1), qi(1, -1))]
                        {
                            let g2 = gauss_to_bary(&c, &d).unwrap();
                            let det = &(&a * &d) - &(&b * &c);
                            assert_eq!(
                                BigInt::from(pair_norm_descartes(&g1, &g2)),
                                det.norm(),
                                "({a},{b}) vs ({c},{d})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn curvature_sum_spheres() {
        let unit_left = PlanarCircle::new(qr(-1, 0, 1), BigRational::one()).unwrap();
        let unit_right = PlanarCircle::new(qr(1, 0, 1), BigRational::one()).unwrap();
        let s = sphere_over_tangency(&unit_left, &unit_right).unwrap();
        match &s {
            NormalSphere::Ball { tangent, radius } => {
                assert!(tangent.is_zero());
                assert_eq!(*radius, BigRational::new(BigInt::one(), BigInt::from(2)));
            }
            _ => panic!("expected a ball"),
        }
        // Non-tangent centers are refused: distance² 5/2 ≠ (3/2)².
        let half = PlanarCircle::new(qr(1, 3, 2), BigRational::new(BigInt::one(), BigInt::from(2)))
            .unwrap();
        let touching = PlanarCircle::new(qr(1, 0, 1), BigRational::one()).unwrap();
        assert!(sphere_over_tangency(&half, &touching).is_err());
        let c1 = PlanarCircle::new(qr(0, 0, 1), BigRational::one()).unwrap();
        let c2 = PlanarCircle::new(qr(3, 0, 2), BigRational::new(BigInt::one(), BigInt::from(2)))
            .unwrap();
        let s = sphere_over_tangency(&c1, &c2).unwrap();
        match &s {
            NormalSphere::Ball { tangent, radius } => {
                assert_eq!(tangent, &qr(1, 0, 1));
                assert_eq!(*radius, BigRational::new(BigInt::one(), BigInt::from(3)));
            }
            _ => panic!("expected a ball"),
        }
        // A 3-4-5 triple of mutually tangent circles lifts to three
        // mutually tangent spheres.
        let a = PlanarCircle::new(qr(0, 0, 1), BigRational::from_integer(BigInt::from(1))).unwrap();
        let b = PlanarCircle::new(qr(3, 0, 1), BigRational::from_integer(BigInt::from(2))).unwrap();
        let c = PlanarCircle::new(qr(0, 4, 1), BigRational::from_integer(BigInt::from(3))).unwrap();
        // distances: 3 = 1+2, 4 = 1+3, 5 = 2+3: all externally tangent.
        let sab = sphere_over_tangency(&a, &b).unwrap();
        let sac = sphere_over_tangency(&a, &c).unwrap();
        let sbc = sphere_over_tangency(&b, &c).unwrap();
        assert!(sab.is_tangent(&sac).unwrap());
        assert!(sab.is_tangent(&sbc).unwrap());
        assert!(sac.is_tangent(&sbc).unwrap());
    }
}
