//! Spheres resting on the complex plane. A *normal sphere* is either a
//! sphere tangent to `C` from above or a horizontal plane at positive
//! height; two of them are tangent exactly when `|z - w|² = 4rs` (spheres
//! of tangency points `z, w` and radii `r, s`) or `2r = h` against a plane.
//!
//! A *Ford sphere* `S_{α,β}` is the normal sphere with tangency point `α/β`
//! and radius `1/(2|β|²)` for a coprime pair from one of the nine rings,
//! with `S_{1,0}` the plane at height one. Tangency collapses to the unit
//! test `|αδ - βγ|² = 1`, unimodular matrices act exactly, and the `D = 3`
//! barycentric quadruples land here through [`bary_to_sphere`].

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadint::{
    qi_coprime, qi_gcd, Discriminant, QuadInt, QuadRat, RingClass,
};

/// A sphere tangent to the plane (`Ball`) or a horizontal plane (`Plane`),
/// in exact rational data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NormalSphere {
    Ball { tangent: QuadRat, radius: BigRational },
    Plane { d: Discriminant, height: BigRational },
}

impl NormalSphere {
    pub fn ball(tangent: QuadRat, radius: BigRational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::InvalidArgument("radius must be positive".into()));
        }
        Ok(NormalSphere::Ball { tangent, radius })
    }

    pub fn plane(d: Discriminant, height: BigRational) -> Result<Self> {
        if !height.is_positive() {
            return Err(Error::InvalidArgument("plane height must be positive".into()));
        }
        Ok(NormalSphere::Plane { d, height })
    }

    pub fn d(&self) -> Discriminant {
        match self {
            NormalSphere::Ball { tangent, .. } => tangent.d(),
            NormalSphere::Plane { d, .. } => *d,
        }
    }

    /// Exact geometric tangency: `|z - w|² = 4rs`, or `2r = h` for a plane.
    pub fn is_tangent(&self, other: &NormalSphere) -> Result<bool> {
        if self.d() != other.d() {
            return Err(Error::DiscriminantMismatch(self.d().get(), other.d().get()));
        }
        use NormalSphere::*;
        Ok(match (self, other) {
            (Ball { tangent: z, radius: r }, Ball { tangent: w, radius: s }) => {
                let diff = z - w;
                diff.norm() == BigRational::from_integer(BigInt::from(4)) * r * s
            }
            (Ball { radius: r, .. }, Plane { height: h, .. })
            | (Plane { height: h, .. }, Ball { radius: r, .. }) => {
                &BigRational::from_integer(BigInt::from(2)) * r == *h
            }
            (Plane { .. }, Plane { .. }) => false,
        })
    }

    /// Recover the coprime pair naming this sphere; needs a norm-Euclidean
    /// ring for the gcd reduction of the tangency point.
    pub fn to_ford(&self) -> Result<FordSphere> {
        match self {
            NormalSphere::Plane { d, height } => {
                if !height.is_one() {
                    return Err(Error::Invariant(format!(
                        "plane at height {height} is not a Ford sphere"
                    )));
                }
                FordSphere::plane(*d)
            }
            NormalSphere::Ball { tangent, radius } => {
                let s = FordSphere::from_point(tangent)?;
                if &s.radius() != radius {
                    return Err(Error::Invariant(format!(
                        "radius {radius} does not match the reduced tangency point {tangent}"
                    )));
                }
                Ok(s)
            }
        }
    }
}

impl fmt::Display for NormalSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalSphere::Ball { tangent, radius } => write!(f, "S({tangent}, {radius})"),
            NormalSphere::Plane { height, .. } => write!(f, "plane(z={height})"),
        }
    }
}

/// The Ford sphere `S_{α,β}`, kept in canonical form: the pair is coprime
/// and scaled by the unique unit putting `β` in the standard argument
/// sector (for `β = 0`, the plane, `α` is normalized to `1`). Structural
/// equality then coincides with equality of spheres.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FordSphere {
    beta: QuadInt,
    alpha: QuadInt,
}

impl FordSphere {
    pub fn new(alpha: QuadInt, beta: QuadInt) -> Result<Self> {
        if alpha.d != beta.d {
            return Err(Error::DiscriminantMismatch(alpha.d.get(), beta.d.get()));
        }
        if !qi_coprime(&alpha, &beta)? {
            return Err(Error::NotCoprime);
        }
        if beta.is_zero() {
            // α is a unit; the plane is always stored as S_{1,0}.
            return Ok(FordSphere { alpha: QuadInt::one(alpha.d), beta });
        }
        let (cbeta, unit) = beta.canonical_associate();
        Ok(FordSphere { alpha: &alpha * &unit, beta: cbeta })
    }

    pub fn plane(d: Discriminant) -> Result<Self> {
        FordSphere::new(QuadInt::one(d), QuadInt::zero(d))
    }

    pub fn alpha(&self) -> &QuadInt {
        &self.alpha
    }

    pub fn beta(&self) -> &QuadInt {
        &self.beta
    }

    pub fn d(&self) -> Discriminant {
        self.alpha.d
    }

    pub fn is_plane(&self) -> bool {
        self.beta.is_zero()
    }

    /// Tangency point `α/β`; `None` for the plane.
    pub fn tangent(&self) -> Option<QuadRat> {
        if self.is_plane() {
            None
        } else {
            Some(
                QuadRat::new(&self.alpha * &self.beta.conj(), self.beta.norm())
                    .expect("nonzero denominator"),
            )
        }
    }

    /// Radius `1/(2|β|²)`; the plane reports its height, which is also 1/…
    /// of nothing — callers should branch on [`FordSphere::is_plane`].
    pub fn radius(&self) -> BigRational {
        if self.is_plane() {
            BigRational::one()
        } else {
            BigRational::new(BigInt::one(), BigInt::from(2) * self.beta.norm())
        }
    }

    /// Curvature `2|β|²` (zero for the plane).
    pub fn curvature(&self) -> BigInt {
        BigInt::from(2) * self.beta.norm()
    }

    pub fn to_normal(&self) -> NormalSphere {
        match self.tangent() {
            None => NormalSphere::Plane { d: self.d(), height: BigRational::one() },
            Some(t) => NormalSphere::Ball { tangent: t, radius: self.radius() },
        }
    }

    /// The sphere resting at an exact field point, via gcd reduction of
    /// `numerator/denominator` (norm-Euclidean rings only).
    pub fn from_point(t: &QuadRat) -> Result<FordSphere> {
        let d = t.d();
        let den = QuadInt::new(d, t.den().clone(), BigInt::zero());
        let g = qi_gcd(t.num(), &den)?;
        let alpha = div_exact(t.num(), &g)
            .ok_or_else(|| Error::Invariant("gcd does not divide numerator".into()))?;
        let beta = div_exact(&den, &g)
            .ok_or_else(|| Error::Invariant("gcd does not divide denominator".into()))?;
        FordSphere::new(alpha, beta)
    }

    /// Determinant `αδ - βγ` of the pair against another sphere.
    pub fn pair_det(&self, other: &FordSphere) -> Result<QuadInt> {
        if self.d() != other.d() {
            return Err(Error::DiscriminantMismatch(self.d().get(), other.d().get()));
        }
        Ok(&(&self.alpha * &other.beta) - &(&self.beta * &other.alpha))
    }

    /// Unit tangency test `|αδ - βγ|² = 1`; agrees with the geometric test
    /// on the associated normal spheres.
    pub fn is_tangent(&self, other: &FordSphere) -> Result<bool> {
        Ok(self.pair_det(other)?.norm().is_one())
    }
}

impl fmt::Display for FordSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S[{}; {}]", self.alpha, self.beta)
    }
}

/// Exact division in `Z[σ]`: `a / g` when `g` divides `a`, else `None`.
pub(crate) fn div_exact(a: &QuadInt, g: &QuadInt) -> Option<QuadInt> {
    if g.is_zero() {
        return None;
    }
    let n = g.norm();
    let p = a * &g.conj();
    let (qx, rx) = p.x.div_rem(&n);
    let (qy, ry) = p.y.div_rem(&n);
    (rx.is_zero() && ry.is_zero()).then(|| QuadInt::new(a.d, qx, qy))
}

/// An exact positive surd `coeff·√radicand` with `radicand` squarefree.
/// Mutual radii of three pairwise tangent spheres live here: they are
/// square roots of rationals, closed under the products the tangency
/// identity needs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurdRadius {
    pub coeff: BigRational,
    pub radicand: BigInt,
}

impl SurdRadius {
    /// `√q` for a positive rational `q`: `√(n/d) = √(nd)/d`, with the
    /// square part of `nd` pulled into the coefficient.
    pub fn sqrt_of(q: &BigRational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::InvalidArgument(format!("need a positive radicand, got {q}")));
        }
        let (k, m) = square_split(&(q.numer() * q.denom()));
        Ok(SurdRadius {
            coeff: BigRational::new(k, q.denom().clone()),
            radicand: m,
        })
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeff.clone())
    }

    pub fn square(&self) -> BigRational {
        &self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone())
    }

    pub fn mul(&self, other: &SurdRadius) -> SurdRadius {
        let (k, m) = square_split(&(&self.radicand * &other.radicand));
        SurdRadius {
            coeff: &self.coeff * &other.coeff * BigRational::from_integer(k),
            radicand: m,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
            / self.coeff.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        c * self.radicand.to_string().parse::<f64>().unwrap_or(f64::NAN).sqrt()
    }
}

impl fmt::Display for SurdRadius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}√{}", self.coeff, self.radicand)
        }
    }
}

/// Decompose `|n| = k²·m` with `m` squarefree; returns `(k, m)`.
pub(crate) fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut n = n.abs();
    if n.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    let mut k = BigInt::one();
    let mut m = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            k *= p.pow(e / 2);
            if e % 2 == 1 {
                m *= &p;
            }
        }
        p += 1u32;
    }
    // Whatever is left is prime (or one) with exponent one.
    m *= n;
    (k, m)
}

/// Radii of the unique mutually tangent sphere triple resting at three
/// distinct points: the sphere at `p₁` has radius
/// `|p₁-p₂||p₁-p₃| / (2|p₂-p₃|)`, and cyclically. Exact surds.
pub fn mutual_radii(p1: &QuadRat, p2: &QuadRat, p3: &QuadRat) -> Result<[SurdRadius; 3]> {
    let d12 = (p1 - p2).norm();
    let d13 = (p1 - p3).norm();
    let d23 = (p2 - p3).norm();
    if d12.is_zero() || d13.is_zero() || d23.is_zero() {
        return Err(Error::Degenerate("coincident tangency points".into()));
    }
    let four = BigRational::from_integer(BigInt::from(4));
    let r1 = SurdRadius::sqrt_of(&(&d12 * &d13 / (&four * &d23)))?;
    let r2 = SurdRadius::sqrt_of(&(&d12 * &d23 / (&four * &d13)))?;
    let r3 = SurdRadius::sqrt_of(&(&d13 * &d23 / (&four * &d12)))?;
    // Pairwise tangency of the triple in surd arithmetic: 4·rᵢrⱼ = |pᵢ-pⱼ|².
    for (ri, rj, dij) in [(&r1, &r2, &d12), (&r1, &r3, &d13), (&r2, &r3, &d23)] {
        let prod = ri.mul(rj);
        debug_assert!(prod.is_rational());
        debug_assert_eq!(&four * prod.as_rational().unwrap(), *dij);
    }
    Ok([r1, r2, r3])
}

/// Bilinear form `Q(u, v) = (Σu)(Σv) - u·v` on integer 4-vectors. On the
/// barycentric quadruple quadric `Q(u, u) = 0`, and `Q(u, v) = 1` is the
/// tangency pairing.
pub fn q_form(u: &[i64; 4], v: &[i64; 4]) -> i128 {
    let su: i128 = u.iter().map(|&x| x as i128).sum();
    let sv: i128 = v.iter().map(|&x| x as i128).sum();
    let dot: i128 = u.iter().zip(v).map(|(&x, &y)| (x as i128) * (y as i128)).sum();
    su * sv - dot
}

/// The barycentric sphere `⟨a,b,c⟩` over the frame of unit-diameter spheres
/// at `0`, `1`, `1+ω` (`D = 3`): tangency point `(b·1 + c·(1+ω))/(a+b+c)`,
/// radius `1/(2(a+b+c))`.
pub fn bary_to_sphere(a: i64, b: i64, c: i64) -> Result<NormalSphere> {
    let sum = a + b + c;
    if sum <= 0 {
        return Err(Error::NonPositiveSum(sum));
    }
    let d3 = Discriminant::new(3)?;
    // 1+ω = σ, so the numerator is b + cσ.
    let tangent = QuadRat::new(QuadInt::from_i64(d3, b, c), BigInt::from(sum))?;
    NormalSphere::ball(tangent, BigRational::new(BigInt::one(), BigInt::from(2 * sum)))
}

/// A quadruple on `(a+b+c+d)² = a²+b²+c²+d²` with positive leading sum
/// names the sphere `⟨a,b,c⟩`; the residual slot `d` is determined by the
/// quadric.
pub fn sphere_from_quad(q: &[i64; 4]) -> Result<NormalSphere> {
    if q_form(q, q) != 0 {
        return Err(Error::OffQuadric(*q));
    }
    bary_to_sphere(q[0], q[1], q[2])
}

/// A Möbius transformation with ring coefficients, acting on Ford spheres
/// by `S_{α,β} ↦ S_{aα+bβ, cα+dβ}` when the determinant is a unit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MobiusMap {
    pub a: QuadInt,
    pub b: QuadInt,
    pub c: QuadInt,
    pub d: QuadInt,
}

impl MobiusMap {
    pub fn new(a: QuadInt, b: QuadInt, c: QuadInt, d: QuadInt) -> Result<Self> {
        for pair in [(&a, &b), (&a, &c), (&a, &d)] {
            if pair.0.d != pair.1.d {
                return Err(Error::DiscriminantMismatch(pair.0.d.get(), pair.1.d.get()));
            }
        }
        let m = MobiusMap { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::Degenerate("zero determinant".into()));
        }
        Ok(m)
    }

    pub fn det(&self) -> QuadInt {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().norm().is_one()
    }

    /// Exact action on a Ford sphere; rejects non-unimodular matrices,
    /// whose images would leave the Ford family.
    pub fn apply(&self, s: &FordSphere) -> Result<FordSphere> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular(self.det().norm().to_string()));
        }
        if self.a.d != s.d() {
            return Err(Error::DiscriminantMismatch(self.a.d.get(), s.d().get()));
        }
        FordSphere::new(
            &(&self.a * s.alpha()) + &(&self.b * s.beta()),
            &(&self.c * s.alpha()) + &(&self.d * s.beta()),
        )
    }

    /// Action on a point of `Q(σ) ∪ {∞}` (any nonzero determinant).
    pub fn apply_point(&self, z: &ExtPoint) -> Result<ExtPoint> {
        let to_rat = |q: &QuadInt| QuadRat::from_int(q.clone());
        match z {
            ExtPoint::Infinity => {
                if self.c.is_zero() {
                    Ok(ExtPoint::Infinity)
                } else {
                    Ok(ExtPoint::Finite(
                        QuadRat::from_int(self.a.clone()).div(&to_rat(&self.c))?,
                    ))
                }
            }
            ExtPoint::Finite(w) => {
                if w.d() != self.a.d {
                    return Err(Error::DiscriminantMismatch(w.d().get(), self.a.d.get()));
                }
                let num = &(&to_rat(&self.a) * w) + &to_rat(&self.b);
                let den = &(&to_rat(&self.c) * w) + &to_rat(&self.d);
                if den.is_zero() {
                    Ok(ExtPoint::Infinity)
                } else {
                    Ok(ExtPoint::Finite(num.div(&den)?))
                }
            }
        }
    }

    /// The Möbius map sending `0, 1, ∞` to three distinct points, with
    /// denominators cleared to ring coefficients.
    pub fn sending_standard_triple(
        d: Discriminant,
        p1: &ExtPoint,
        p2: &ExtPoint,
        p3: &ExtPoint,
    ) -> Result<MobiusMap> {
        use ExtPoint::*;
        for (x, y) in [(p1, p2), (p1, p3), (p2, p3)] {
            if x == y {
                return Err(Error::Degenerate("coincident target points".into()));
            }
        }
        let fin = |p: &ExtPoint| match p {
            Finite(q) => Ok(q.clone()),
            Infinity => Err(Error::Degenerate("unexpected point at infinity".into())),
        };
        let one = QuadRat::one(d);
        let zero = QuadRat::zero(d);
        // Rational-entry matrix rows (a b / c d), by where ∞ sits.
        let (a, b, c, dd) = match (p1, p2, p3) {
            (Infinity, _, _) => {
                // 0 ↦ ∞ forces d = 0.
                let (z2, z3) = (fin(p2)?, fin(p3)?);
                (z3.clone(), &z2 - &z3, one, zero)
            }
            (_, Infinity, _) => {
                // 1 ↦ ∞ forces c + d = 0.
                let (z1, z3) = (fin(p1)?, fin(p3)?);
                (z3, -&z1, one.clone(), -&one)
            }
            (_, _, Infinity) => {
                let (z1, z2) = (fin(p1)?, fin(p2)?);
                (&z2 - &z1, z1, zero, one)
            }
            _ => {
                let (z1, z2, z3) = (fin(p1)?, fin(p2)?, fin(p3)?);
                let d21 = &z2 - &z1;
                let d23 = &z2 - &z3;
                (&z3 * &d21, -&(&z1 * &d23), d21, -&d23)
            }
        };
        // Clear denominators; the projective action is unchanged.
        let lcm = a.den().lcm(b.den()).lcm(c.den()).lcm(dd.den());
        let clear = |q: &QuadRat| {
            let k = &lcm / q.den();
            QuadInt::new(d, q.num().x.clone() * &k, q.num().y.clone() * &k)
        };
        MobiusMap::new(clear(&a), clear(&b), clear(&c), clear(&dd))
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}; {}, {}]", self.a, self.b, self.c, self.d)
    }
}

/// A point of `Q(σ) ∪ {∞}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtPoint {
    Finite(QuadRat),
    Infinity,
}

impl ExtPoint {
    pub fn finite(q: QuadRat) -> Self {
        ExtPoint::Finite(q)
    }

    pub fn as_finite(&self) -> Option<&QuadRat> {
        match self {
            ExtPoint::Finite(q) => Some(q),
            ExtPoint::Infinity => None,
        }
    }
}

impl fmt::Display for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPoint::Finite(q) => write!(f, "{q}"),
            ExtPoint::Infinity => f.write_str("∞"),
        }
    }
}

/// The two spheres completing a mutually tangent triple inside the Ford
/// family. Writing the triple as pairs with `s₃ ~ s₁ + ρ·s₂` for a unit
/// `ρ` (always possible), the completions are `S[s₁ + σ·s₂]` where `σ`
/// runs over the two units adjacent to `ρ` — at ±60° for `D = 3`, where
/// both completions are tangent to all three inputs, and at ±90° for
/// `D = 1`, where they are the octahedral opposites of `s₃` (tangent to
/// `s₁` and `s₂`). Other rings have no unit pairs to work with.
pub fn sphere_completions(
    s1: &FordSphere,
    s2: &FordSphere,
    s3: &FordSphere,
) -> Result<(FordSphere, FordSphere)> {
    let d = s1.d();
    if !matches!(d.get(), 1 | 3) {
        return Err(Error::UnsupportedDiscriminant(d.get()));
    }
    let eps = s1.pair_det(s2)?;
    let eps2 = s1.pair_det(s3)?;
    let eps1 = s2.pair_det(s3)?;
    if !(eps.norm().is_one() && eps1.norm().is_one() && eps2.norm().is_one()) {
        return Err(Error::NotTangent);
    }
    // Solving the two tangency determinants for s₃'s pair gives
    // s₃ = u·s₁ + v·s₂ with u = -ε₁/ε and v = ε₂/ε, so ρ = v/u.
    let inv = |u: &QuadInt| u.conj(); // units: 1/u = conj(u)
    let u = -&(&eps1 * &inv(&eps));
    let v = &eps2 * &inv(&eps);
    let rho = &v * &inv(&u);
    let adjacent: Vec<QuadInt> = if d.get() == 3 {
        // The two units at ±60° from ρ, i.e. those with σ - ρ again a unit.
        d.units().into_iter().filter(|w| (w - &rho).norm().is_one()).collect()
    } else {
        // D = 1: rotate ρ by ±90°. The outputs are the opposites of s₃ in
        // the two octahedra through the triple, tangent to s₁ and s₂.
        let i_unit = QuadInt::sigma(d);
        vec![&i_unit * &rho, -&(&i_unit * &rho)]
    };
    debug_assert_eq!(adjacent.len(), 2, "two admissible units for {rho}");
    let build = |s: &QuadInt| {
        FordSphere::new(
            &(s1.alpha().clone()) + &(s * s2.alpha()),
            &(s1.beta().clone()) + &(s * s2.beta()),
        )
    };
    let mut out = (build(&adjacent[0])?, build(&adjacent[1])?);
    if out.1 < out.0 {
        out = (out.1, out.0);
    }
    Ok(out)
}

/// Tangency graph of a sphere list: vertices are indices, edges are the
/// exactly tangent pairs `(i, j)` with `i < j`, in lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContactGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl ContactGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    /// The octahedron: six vertices, 4-regular, complement a perfect
    /// matching (three antipodal non-edges).
    pub fn is_octahedron(&self) -> bool {
        self.n == 6 && self.edges.len() == 12 && self.degrees().iter().all(|&d| d == 4)
    }

    /// The tetrahedron on four vertices: all six pairs tangent.
    pub fn is_tetrahedron(&self) -> bool {
        self.n == 4 && self.edges.len() == 6
    }
}

pub fn contact_graph(spheres: &[NormalSphere]) -> Result<ContactGraph> {
    let mut edges = Vec::new();
    for i in 0..spheres.len() {
        for j in i + 1..spheres.len() {
            if spheres[i].is_tangent(&spheres[j])? {
                edges.push((i, j));
            }
        }
    }
    Ok(ContactGraph { n: spheres.len(), edges })
}

pub fn contact_graph_ford(spheres: &[FordSphere]) -> Result<ContactGraph> {
    let mut edges = Vec::new();
    for i in 0..spheres.len() {
        for j in i + 1..spheres.len() {
            if spheres[i].is_tangent(&spheres[j])? {
                edges.push((i, j));
            }
        }
    }
    Ok(ContactGraph { n: spheres.len(), edges })
}

/// A region of the plane used to window sphere generation. Vertical
/// coordinates are expressed as multiples of `√D` so every containment
/// test is a rational comparison.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Window {
    /// Closed box: `re ∈ [re₀, re₁]`, `im/√D ∈ [t₀, t₁]`.
    Rect { re: [BigRational; 2], im_scaled: [BigRational; 2] },
    /// Closed triangle with exact vertices.
    Triangle([QuadRat; 3]),
    /// Half-open fundamental cell `{x + yσ : 0 ≤ x, y < 1}`.
    Cell,
}

impl Window {
    pub fn unit_box() -> Window {
        Window::Rect {
            re: [BigRational::zero(), BigRational::one()],
            im_scaled: [BigRational::zero(), BigRational::one()],
        }
    }

    pub fn contains(&self, z: &QuadRat) -> bool {
        match self {
            Window::Rect { re, im_scaled } => {
                let r = z.re();
                let i = z.im_over_root();
                re[0] <= r && r <= re[1] && im_scaled[0] <= i && i <= im_scaled[1]
            }
            Window::Triangle(v) => {
                // Signed side of z against each directed edge, normalized by
                // the triangle orientation; all nonnegative means inside.
                let orient = side(&v[0], &v[1], &v[2]);
                if orient.is_zero() {
                    return false;
                }
                let sgn = if orient.is_positive() { 1 } else { -1 };
                [(0, 1), (1, 2), (2, 0)].iter().all(|&(i, j)| {
                    let s = side(&v[i], &v[j], z);
                    (s * BigRational::from_integer(BigInt::from(sgn))) >= BigRational::zero()
                })
            }
            Window::Cell => {
                let (x, y) = z.coords();
                BigRational::zero() <= x
                    && x < BigRational::one()
                    && BigRational::zero() <= y
                    && y < BigRational::one()
            }
        }
    }

    /// Corner points spanning the window, used to bound enumeration boxes.
    pub fn corners(&self, d: Discriminant) -> Vec<QuadRat> {
        match self {
            Window::Rect { re, im_scaled } => {
                let mut out = Vec::new();
                for r in re {
                    for t in im_scaled {
                        // z = r + t·√D·i in σ-coordinates.
                        let (x, y) = match d.class() {
                            RingClass::A => {
                                let y = BigRational::from_integer(BigInt::from(2)) * t;
                                (r - t, y)
                            }
                            RingClass::B => (r.clone(), t.clone()),
                        };
                        out.push(QuadRat::from_coords(d, &x, &y));
                    }
                }
                out
            }
            Window::Triangle(v) => v.to_vec(),
            Window::Cell => [(0, 0), (1, 0), (0, 1), (1, 1)]
                .iter()
                .map(|&(x, y)| QuadRat::from_int(QuadInt::from_i64(d, x, y)))
                .collect(),
        }
    }
}

/// `im(conj(b - a) · (z - a)) / √D`: positive when `z` lies to the left of
/// the directed segment `a → b`.
fn side(a: &QuadRat, b: &QuadRat, z: &QuadRat) -> BigRational {
    (b - a).hermitian_im_scaled(&(z - a))
}

/// All Ford spheres with `|β|² ≤ norm_bound` whose tangency point lies in
/// the window, in canonical form and canonical order. Runs over any of the
/// nine rings: one `β` per unit orbit, `α` over the lattice points of
/// `β · window`, coprimality by the integer vector gcd.
pub fn gen_spheres(d: Discriminant, norm_bound: i64, window: &Window) -> Result<Vec<FordSphere>> {
    let mut out = std::collections::BTreeSet::new();
    if norm_bound < 1 {
        return Ok(Vec::new());
    }
    let corners = window.corners(d);
    if corners.is_empty() {
        return Err(Error::InvalidArgument("window spans no corners".into()));
    }
    let bound = BigInt::from(norm_bound);
    for beta in sector_elements(d, norm_bound) {
        debug_assert!(beta.norm() <= bound);
        // α must lie in β·window; bound its σ-coordinates by the corners.
        let beta_rat = QuadRat::from_int(beta.clone());
        let mut xs: Vec<BigRational> = Vec::new();
        let mut ys: Vec<BigRational> = Vec::new();
        for w in &corners {
            let (cx, cy) = (w * &beta_rat).coords();
            xs.push(cx);
            ys.push(cy);
        }
        let lo = |v: &[BigRational]| v.iter().min().unwrap().floor().to_integer();
        let hi = |v: &[BigRational]| v.iter().max().unwrap().ceil().to_integer();
        let (x0, x1) = (lo(&xs), hi(&xs));
        let (y0, y1) = (lo(&ys), hi(&ys));
        let mut y = y0.clone();
        while y <= y1 {
            let mut x = x0.clone();
            while x <= x1 {
                let alpha = QuadInt::new(d, x.clone(), y.clone());
                x += 1;
                if !qi_coprime(&alpha, &beta)? {
                    continue;
                }
                let tangent = QuadRat::new(&alpha * &beta.conj(), beta.norm())?;
                if window.contains(&tangent) {
                    out.insert(FordSphere::new(alpha, beta.clone())?);
                }
            }
            y += 1;
        }
    }
    Ok(out.into_iter().collect())
}

/// Nonzero lattice elements of norm ≤ `bound` in the canonical unit
/// sector, one per unit orbit.
pub(crate) fn sector_elements(d: Discriminant, bound: i64) -> Vec<QuadInt> {
    let mut out = Vec::new();
    if bound < 1 {
        return out;
    }
    let dd = d.get() as i64;
    let big = BigInt::from(bound);
    // |x + yσ|² ≥ (D/4)·y² in class A and ≥ D·y² in class B.
    let ylim = match d.class() {
        RingClass::A => int_sqrt_floor(4 * bound / dd),
        RingClass::B => int_sqrt_floor(bound / dd),
    };
    for y in -ylim..=ylim {
        // Solve the norm quadratic in x with a unit of slack, test exactly.
        let (center, half) = match d.class() {
            RingClass::A => (-(y as f64) / 2.0, ((bound as f64) - (dd as f64) * (y * y) as f64 / 4.0).max(0.0).sqrt()),
            RingClass::B => (0.0, ((bound - dd * y * y).max(0) as f64).sqrt()),
        };
        let x0 = (center - half).floor() as i64 - 1;
        let x1 = (center + half).ceil() as i64 + 1;
        for x in x0..=x1 {
            let q = QuadInt::from_i64(d, x, y);
            if !q.is_zero() && q.norm() <= big && q.in_canonical_sector() {
                out.push(q);
            }
        }
    }
    out.sort();
    out
}

fn int_sqrt_floor(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    while r * r > n {
        r -= 1;
    }
    r
}
