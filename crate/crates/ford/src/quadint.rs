//! Quadratic integers `x + yσ` for the nine imaginary quadratic rings with
//! class number one, together with the operations everything else is built
//! on: norms, conjugation, units, Hermitian products, the slow Euclidean
//! algorithm, coprimality and pigeonhole lattice approximation.
//!
//! For `D ≡ 3 (mod 4)` (class A) the ring is `Z[σ]` with `σ = (1+√-D)/2`;
//! for `D ∈ {1, 2}` (class B) it is `Z[σ]` with `σ = √-D`. Elements are
//! always stored in `σ`-coordinates; conversions to other bases (such as the
//! Eisenstein `ω`-basis for `D = 3`) live next to the code that needs them.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// The nine values of `D` for which `Z[σ]` has unique factorization.
pub const HEEGNER: [u32; 9] = [1, 2, 3, 7, 11, 19, 43, 67, 163];

/// Whether the ring is generated by `(1+√-D)/2` or by `√-D`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RingClass {
    /// `D ≡ 3 (mod 4)`: `σ = (1+√-D)/2`, norm `x² + xy + ((D+1)/4)y²`.
    A,
    /// `D ∈ {1, 2}`: `σ = √-D`, norm `x² + Dy²`.
    B,
}

/// One of the nine class-number-one discriminants.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Discriminant(u32);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if d > 0 && HEEGNER.contains(&(d as u32)) {
            Ok(Discriminant(d as u32))
        } else {
            Err(Error::BadDiscriminant(d))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn class(self) -> RingClass {
        if self.0 % 4 == 3 {
            RingClass::A
        } else {
            RingClass::B
        }
    }

    /// The constant term of `σ²`: in class A `σ² = σ - (D+1)/4`, in class B
    /// `σ² = -D`.
    fn sigma_sq_const(self) -> i64 {
        match self.class() {
            RingClass::A => -((self.0 as i64 + 1) / 4),
            RingClass::B => -(self.0 as i64),
        }
    }

    /// Norm-Euclidean rings, the ones where the slow Euclidean algorithm runs.
    pub fn is_euclidean(self) -> bool {
        matches!(self.0, 1 | 2 | 3 | 7 | 11)
    }

    pub fn unit_count(self) -> usize {
        match self.0 {
            1 => 4,
            3 => 6,
            _ => 2,
        }
    }

    /// The unit group, listed counterclockwise starting from `1`.
    pub fn units(self) -> Vec<QuadInt> {
        let u = |x: i64, y: i64| QuadInt::from_i64(self, x, y);
        match self.0 {
            1 => vec![u(1, 0), u(0, 1), u(-1, 0), u(0, -1)],
            3 => vec![u(1, 0), u(0, 1), u(-1, 1), u(-1, 0), u(0, -1), u(1, -1)],
            _ => vec![u(1, 0), u(-1, 0)],
        }
    }

    /// Squared diameter of the fundamental cell `{x + yσ : 0 ≤ x, y < 1}`,
    /// i.e. `|1+σ|²` (the longer diagonal in every class).
    pub fn cell_diameter_sq(self) -> BigInt {
        QuadInt::from_i64(self, 1, 1).norm()
    }

    fn check_same(self, other: Discriminant) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DiscriminantMismatch(self.0, other.0))
        }
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element `x + yσ` of `Z[σ]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QuadInt {
    pub x: BigInt,
    pub y: BigInt,
    pub d: Discriminant,
}

impl QuadInt {
    pub fn new(d: Discriminant, x: BigInt, y: BigInt) -> Self {
        QuadInt { x, y, d }
    }

    pub fn from_i64(d: Discriminant, x: i64, y: i64) -> Self {
        QuadInt::new(d, BigInt::from(x), BigInt::from(y))
    }

    pub fn zero(d: Discriminant) -> Self {
        QuadInt::from_i64(d, 0, 0)
    }

    pub fn one(d: Discriminant) -> Self {
        QuadInt::from_i64(d, 1, 0)
    }

    pub fn sigma(d: Discriminant) -> Self {
        QuadInt::from_i64(d, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `|x + yσ|²`, always a nonnegative rational integer.
    pub fn norm(&self) -> BigInt {
        let QuadInt { x, y, d } = self;
        match d.class() {
            RingClass::A => {
                let k = BigInt::from((d.get() + 1) / 4);
                x * x + x * y + k * y * y
            }
            RingClass::B => x * x + BigInt::from(d.get()) * y * y,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Complex conjugate, again in `σ`-coordinates: class A sends
    /// `σ ↦ 1 - σ`, class B sends `σ ↦ -σ`.
    pub fn conj(&self) -> QuadInt {
        match self.d.class() {
            RingClass::A => QuadInt::new(self.d, &self.x + &self.y, -&self.y),
            RingClass::B => QuadInt::new(self.d, self.x.clone(), -&self.y),
        }
    }

    /// Real part as a rational: `x + y/2` in class A, `x` in class B.
    pub fn re(&self) -> BigRational {
        match self.d.class() {
            RingClass::A => {
                BigRational::new(BigInt::from(2) * &self.x + &self.y, BigInt::from(2))
            }
            RingClass::B => BigRational::from_integer(self.x.clone()),
        }
    }

    /// Imaginary part divided by `√D` (so a rational): `y/2` in class A,
    /// `y` in class B.
    pub fn im_over_root(&self) -> BigRational {
        match self.d.class() {
            RingClass::A => BigRational::new(self.y.clone(), BigInt::from(2)),
            RingClass::B => BigRational::from_integer(self.y.clone()),
        }
    }

    fn mul_ref(&self, rhs: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.d, rhs.d, "mixed discriminants in multiplication");
        let c = BigInt::from(self.d.sigma_sq_const());
        let xx = &self.x * &rhs.x;
        let yy = &self.y * &rhs.y;
        let cross = &self.x * &rhs.y + &self.y * &rhs.x;
        match self.d.class() {
            // σ² = σ + c, so (x1+y1σ)(x2+y2σ) = x1x2 + c·y1y2 + (cross + y1y2)σ.
            RingClass::A => QuadInt::new(self.d, xx + &c * &yy, cross + yy),
            RingClass::B => QuadInt::new(self.d, xx + c * yy, cross),
        }
    }

    /// True when this element lies in the canonical argument sector
    /// `[0, 2π/#units)`. Every nonzero element has exactly one associate in
    /// the sector, which makes unit-orbit representatives unique.
    pub fn in_canonical_sector(&self) -> bool {
        if self.d.unit_count() >= 4 {
            // σ sits on the open upper edge of the sector for D = 1 and 3,
            // so the predicate is the same in both rings.
            self.x.is_positive() && !self.y.is_negative()
        } else {
            self.y.is_positive() || (self.y.is_zero() && self.x.is_positive())
        }
    }

    /// The associate in the canonical sector, together with the unit that
    /// gets there: returns `(u·self, u)`. Zero maps to itself.
    pub fn canonical_associate(&self) -> (QuadInt, QuadInt) {
        if self.is_zero() {
            return (self.clone(), QuadInt::one(self.d));
        }
        for u in self.d.units() {
            let c = self.mul_ref(&u);
            if c.in_canonical_sector() {
                return (c, u);
            }
        }
        unreachable!("one associate per sector");
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let sig = if self.y.is_one() {
            "σ".to_string()
        } else if (-&self.y).is_one() {
            "-σ".to_string()
        } else {
            format!("{}σ", self.y)
        };
        if self.x.is_zero() {
            write!(f, "{sig}")
        } else if self.y.is_negative() {
            write!(f, "{}{}", self.x, sig)
        } else {
            write!(f, "{}+{}", self.x, sig)
        }
    }
}

macro_rules! binop {
    ($trait:ident, $fn:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b QuadInt> for &'a QuadInt {
            type Output = QuadInt;
            fn $fn(self, rhs: &'b QuadInt) -> QuadInt {
                let ($a, $b) = (self, rhs);
                debug_assert_eq!($a.d, $b.d, "mixed discriminants");
                $body
            }
        }
        impl $trait<QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $fn(self, rhs: QuadInt) -> QuadInt {
                $trait::$fn(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| QuadInt::new(a.d, &a.x + &b.x, &a.y + &b.y));
binop!(Sub, sub, |a, b| QuadInt::new(a.d, &a.x - &b.x, &a.y - &b.y));
binop!(Mul, mul, |a, b| a.mul_ref(b));

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(self.d, -&self.x, -&self.y)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -&self
    }
}

/// An element of the field `Q(σ)` stored as `num/den` with `den > 0` and no
/// rational prime dividing `den` together with both coordinates of `num`.
/// Equality is structural, which the reduction makes canonical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QuadRat {
    num: QuadInt,
    den: BigInt,
}

impl QuadRat {
    pub fn new(num: QuadInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadRat { num, den }.reduced())
    }

    fn reduced(mut self) -> Self {
        if self.den.is_negative() {
            self.num = -&self.num;
            self.den = -&self.den;
        }
        let g = self.num.x.gcd(&self.num.y).gcd(&self.den);
        if !g.is_one() && !g.is_zero() {
            self.num.x /= &g;
            self.num.y /= &g;
            self.den /= &g;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
        }
        self
    }

    pub fn from_int(num: QuadInt) -> Self {
        QuadRat { num, den: BigInt::one() }
    }

    pub fn from_coords(d: Discriminant, x: &BigRational, y: &BigRational) -> Self {
        let den = x.denom().lcm(y.denom());
        let den_rat = BigRational::from_integer(den.clone());
        let num = QuadInt::new(d, (x * &den_rat).to_integer(), (y * &den_rat).to_integer());
        QuadRat { num, den }.reduced()
    }

    pub fn zero(d: Discriminant) -> Self {
        QuadRat::from_int(QuadInt::zero(d))
    }

    pub fn one(d: Discriminant) -> Self {
        QuadRat::from_int(QuadInt::one(d))
    }

    pub fn d(&self) -> Discriminant {
        self.num.d
    }

    pub fn num(&self) -> &QuadInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// σ-coordinates as rationals: the point is `x + yσ`.
    pub fn coords(&self) -> (BigRational, BigRational) {
        (
            BigRational::new(self.num.x.clone(), self.den.clone()),
            BigRational::new(self.num.y.clone(), self.den.clone()),
        )
    }

    pub fn re(&self) -> BigRational {
        self.num.re() / BigRational::from_integer(self.den.clone())
    }

    pub fn im_over_root(&self) -> BigRational {
        self.num.im_over_root() / BigRational::from_integer(self.den.clone())
    }

    /// `|z|²` as an exact rational.
    pub fn norm(&self) -> BigRational {
        BigRational::new(self.num.norm(), &self.den * &self.den)
    }

    pub fn conj(&self) -> QuadRat {
        QuadRat { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<QuadRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/z = conj(z)/|z|², cleared of denominators.
        QuadRat::new(&self.num.conj() * &QuadInt::new(self.d(), self.den.clone(), BigInt::zero()), self.num.norm())
    }

    pub fn div(&self, rhs: &QuadRat) -> Result<QuadRat> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, k: &BigRational) -> QuadRat {
        QuadRat {
            num: QuadInt::new(self.d(), &self.num.x * k.numer(), &self.num.y * k.numer()),
            den: &self.den * k.denom(),
        }
        .reduced()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_quadint(&self) -> Option<QuadInt> {
        self.is_integral().then(|| self.num.clone())
    }

    /// `t/√D` of the Hermitian product `conj(self)·rhs = s + it`; its sign
    /// tells which side of the directed line through `0` and `self` the
    /// point `rhs` lies on.
    pub fn hermitian_im_scaled(&self, rhs: &QuadRat) -> BigRational {
        let cross = &self.num.x * &rhs.num.y - &rhs.num.x * &self.num.y;
        let den = &self.den * &rhs.den;
        let r = BigRational::new(cross, den);
        match self.d().class() {
            RingClass::A => r / BigRational::from_integer(BigInt::from(2)),
            RingClass::B => r,
        }
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

macro_rules! rat_binop {
    ($trait:ident, $fn:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b QuadRat> for &'a QuadRat {
            type Output = QuadRat;
            fn $fn(self, rhs: &'b QuadRat) -> QuadRat {
                let ($a, $b) = (self, rhs);
                debug_assert_eq!($a.d(), $b.d(), "mixed discriminants");
                $body
            }
        }
        impl $trait<QuadRat> for QuadRat {
            type Output = QuadRat;
            fn $fn(self, rhs: QuadRat) -> QuadRat {
                $trait::$fn(&self, &rhs)
            }
        }
    };
}

rat_binop!(Add, add, |a, b| {
    let dscale = |n: &QuadInt, k: &BigInt| QuadInt::new(n.d, &n.x * k, &n.y * k);
    QuadRat { num: &dscale(&a.num, &b.den) + &dscale(&b.num, &a.den), den: &a.den * &b.den }
        .reduced()
});
rat_binop!(Sub, sub, |a, b| a + &(-b));
rat_binop!(Mul, mul, |a, b| QuadRat { num: &a.num * &b.num, den: &a.den * &b.den }.reduced());

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        -&self
    }
}

/// The two integer invariants of a Hermitian product `conj(a)·b = s + it`:
/// `2s` and `t` in units of `√D` (`2t/√D` in class A, `t/√D` in class B).
/// Both are rational integers; in class A they share the same parity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HermitianParts {
    pub two_s: BigInt,
    pub t_over_root: BigInt,
}

impl HermitianParts {
    pub fn s(&self) -> BigRational {
        BigRational::new(self.two_s.clone(), BigInt::from(2))
    }

    /// `t/√D` as a rational (halved in class A where only `2t/√D` is integral).
    pub fn t_over_root_rat(&self, d: Discriminant) -> BigRational {
        match d.class() {
            RingClass::A => BigRational::new(self.t_over_root.clone(), BigInt::from(2)),
            RingClass::B => BigRational::from_integer(self.t_over_root.clone()),
        }
    }
}

/// Invariants of `conj(a)·b`. Writing `a = u₁ + iv₁√D`, `b = u₂ + iv₂√D`
/// gives `s = u₁u₂ + Dv₁v₂` and `t/√D = u₁v₂ - u₂v₁`; in `σ`-coordinates
/// that collapses to the integer formulas below.
pub fn qi_hermitian(a: &QuadInt, b: &QuadInt) -> Result<HermitianParts> {
    a.d.check_same(b.d)?;
    let cross = &a.x * &b.y - &b.x * &a.y;
    match a.d.class() {
        RingClass::A => {
            let half = BigInt::from((a.d.get() as i64 + 1) / 2);
            let two_s =
                BigInt::from(2) * &a.x * &b.x + &a.x * &b.y + &b.x * &a.y + half * &a.y * &b.y;
            Ok(HermitianParts { two_s, t_over_root: cross })
        }
        RingClass::B => {
            let s = &a.x * &b.x + BigInt::from(a.d.get()) * &a.y * &b.y;
            Ok(HermitianParts { two_s: BigInt::from(2) * s, t_over_root: cross })
        }
    }
}

/// Which entry of the pair a slow-Euclidean step rewrote.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairSide {
    First,
    Second,
}

/// One reduction step: `e ← e - m·(other)` on the recorded side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeaStep {
    pub side: PairSide,
    pub multiplier: QuadInt,
}

/// Full log of a slow-Euclidean run: every intermediate state plus the step
/// that produced it. `states[0]` is the input, the last state has a zero
/// entry, and replaying `steps` forward reproduces the whole chain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeaTrace {
    pub states: Vec<(QuadInt, QuadInt)>,
    pub steps: Vec<SeaStep>,
}

impl SeaTrace {
    pub fn rank(&self) -> usize {
        self.steps.len()
    }

    pub fn terminal(&self) -> &(QuadInt, QuadInt) {
        self.states.last().expect("trace has at least the input state")
    }

    /// The greatest common divisor the run ended on (up to units): the
    /// nonzero entry of the terminal state.
    pub fn gcd(&self) -> QuadInt {
        let (a, b) = self.terminal();
        if a.is_zero() {
            b.clone()
        } else {
            a.clone()
        }
    }
}

/// Multiplier for one reduction of `e` against `other`: the unit (D = 1, 3)
/// or lattice quotient digit (D = 2, 7, 11) minimizing `|e - m·other|`.
fn sea_multiplier(d: Discriminant, e: &QuadInt, other: &QuadInt) -> QuadInt {
    let mut best: Option<(BigInt, QuadInt)> = None;
    let mut consider = |m: QuadInt| {
        let n = (e - &(&m * other)).norm();
        if best.as_ref().map_or(true, |(bn, _)| n < *bn) {
            best = Some((n, m));
        }
    };
    if d.unit_count() >= 4 {
        for u in d.units() {
            consider(u);
        }
    } else {
        // Exact quotient e/other in σ-coordinates, then the nine lattice
        // points around its nearest rounding (ties toward zero). For the
        // norm-Euclidean rings one of them always strictly reduces.
        let n = other.norm();
        let q = e * &other.conj();
        let qx = BigRational::new(q.x, n.clone());
        let qy = BigRational::new(q.y, n);
        let (rx, ry) = (round_half_toward_zero(&qx), round_half_toward_zero(&qy));
        for dx in [0i64, -1, 1] {
            for dy in [0i64, -1, 1] {
                consider(QuadInt::new(d, &rx + BigInt::from(dx), &ry + BigInt::from(dy)));
            }
        }
    }
    best.expect("nonempty candidate set").1
}

fn round_half_toward_zero(r: &BigRational) -> BigInt {
    let t = r.trunc().to_integer();
    let double_frac = (r.fract() * BigRational::from_integer(BigInt::from(2))).abs();
    if double_frac > BigRational::one() {
        if r.is_negative() {
            t - 1
        } else {
            t + 1
        }
    } else {
        t
    }
}

/// Slow Euclidean algorithm. Repeatedly subtracts a multiple of the
/// smaller-norm entry from the larger (the second entry on ties) until one
/// entry is zero; the norm of the rewritten entry strictly drops each step,
/// so the run terminates with a gcd of the pair.
pub fn qi_sea(a: &QuadInt, b: &QuadInt) -> Result<SeaTrace> {
    a.d.check_same(b.d)?;
    let d = a.d;
    if !d.is_euclidean() {
        return Err(Error::NotEuclidean(d.get()));
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let mut cur = (a.clone(), b.clone());
    let mut states = vec![cur.clone()];
    let mut steps = Vec::new();
    while !cur.0.is_zero() && !cur.1.is_zero() {
        let (na, nb) = (cur.0.norm(), cur.1.norm());
        let (side, e, other) = if nb < na {
            (PairSide::First, &cur.0, &cur.1)
        } else {
            (PairSide::Second, &cur.1, &cur.0)
        };
        let m = sea_multiplier(d, e, other);
        let reduced = e - &(&m * other);
        if reduced.norm() >= e.norm() {
            return Err(Error::Invariant(format!(
                "slow Euclidean step failed to reduce |{e}| against |{other}|"
            )));
        }
        match side {
            PairSide::First => cur.0 = reduced,
            PairSide::Second => cur.1 = reduced,
        }
        steps.push(SeaStep { side, multiplier: m });
        states.push(cur.clone());
    }
    Ok(SeaTrace { states, steps })
}

/// Gcd in a norm-Euclidean ring, canonicalized to the standard sector.
pub fn qi_gcd(a: &QuadInt, b: &QuadInt) -> Result<QuadInt> {
    Ok(qi_sea(a, b)?.gcd().canonical_associate().0)
}

/// Exact coprimality test, valid in all nine rings (also the non-Euclidean
/// ones). A common divisor `γ` forces `|γ|²` to divide all four integers
/// below, and conversely a Bezout combination exists exactly when their gcd
/// is 1, so the test is an if-and-only-if.
pub fn qi_coprime(a: &QuadInt, b: &QuadInt) -> Result<bool> {
    a.d.check_same(b.d)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let h = qi_hermitian(a, b)?;
    let (na, nb) = (a.norm(), b.norm());
    let g = match a.d.class() {
        RingClass::A => {
            // Integerization A = |b|² - s + t/√D, B = |a|² - s + t/√D,
            // C = s + t/√D, M = -2t/√D; the shared parity of 2s and 2t/√D
            // makes all four integral.
            let down = (&h.two_s - &h.t_over_root) / BigInt::from(2);
            let c = (&h.two_s + &h.t_over_root) / BigInt::from(2);
            let va = &nb - &down;
            let vb = &na - &down;
            va.gcd(&vb).gcd(&c).gcd(&h.t_over_root)
        }
        RingClass::B => {
            let s = &h.two_s / BigInt::from(2);
            na.gcd(&nb).gcd(&s).gcd(&h.t_over_root)
        }
    };
    Ok(g.is_one())
}

/// Coordinatewise floor and fractional part of a point `x + yσ` with
/// rational coordinates: returns the lattice point and a pair in `[0,1)²`.
pub fn qi_floor_frac(
    d: Discriminant,
    x: &BigRational,
    y: &BigRational,
) -> (QuadInt, (BigRational, BigRational)) {
    let fx = x.floor();
    let fy = y.floor();
    let frac = (x - &fx, y - &fy);
    (QuadInt::new(d, fx.to_integer(), fy.to_integer()), frac)
}

/// Norm form evaluated on rational `σ`-coordinates.
pub fn norm_of_coords(d: Discriminant, x: &BigRational, y: &BigRational) -> BigRational {
    match d.class() {
        RingClass::A => {
            let k = BigRational::from_integer(BigInt::from((d.get() + 1) / 4));
            x * x + x * y + k * y * y
        }
        RingClass::B => {
            let dd = BigRational::from_integer(BigInt::from(d.get()));
            x * x + dd * y * y
        }
    }
}

/// A point of the field `Q(σ)` handed to [`qi_approximate`], in rational
/// `σ`-coordinates. `Exact` targets are returned as their own fraction;
/// `Numeric` targets (e.g. promoted floats) go through the pigeonhole sweep.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ApproxTarget {
    Exact { x: BigRational, y: BigRational },
    Numeric { x: BigRational, y: BigRational },
}

impl ApproxTarget {
    /// Promote a float complex target to exact rational `σ`-coordinates.
    /// The float is read at full precision, so the promoted point is within
    /// one part in 2⁻⁵³ of the intended one; the report carries the promoted
    /// value so callers know exactly what was approximated.
    pub fn from_f64(d: Discriminant, re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::InvalidArgument("non-finite float target".into()));
        }
        let root = (d.get() as f64).sqrt();
        let (xf, yf) = match d.class() {
            RingClass::A => {
                let y = 2.0 * im / root;
                (re - y / 2.0, y)
            }
            RingClass::B => (re, im / root),
        };
        let x = BigRational::from_float(xf)
            .ok_or_else(|| Error::InvalidArgument("unrepresentable float".into()))?;
        let y = BigRational::from_float(yf)
            .ok_or_else(|| Error::InvalidArgument("unrepresentable float".into()))?;
        Ok(ApproxTarget::Numeric { x, y })
    }

    pub fn coords(&self) -> (&BigRational, &BigRational) {
        match self {
            ApproxTarget::Exact { x, y } | ApproxTarget::Numeric { x, y } => (x, y),
        }
    }
}

/// Result of a lattice approximation: `|β·z - α| < bound` with `β ≠ 0`.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub alpha: QuadInt,
    pub beta: QuadInt,
    /// The target actually approximated (promoted value for float inputs).
    pub target: (BigRational, BigRational),
    pub residual_sq: BigRational,
}

/// Dirichlet-style approximation by pigeonhole: split the fundamental cell
/// into `N²` subcells with `N` large enough that a subcell has diameter
/// below `bound`, then walk `{jz}` for `j = 1, …, N²+1` until two multiples
/// land in the same subcell. Their difference gives `β ∈ Z` and a lattice
/// point `α` with `|βz - α| < bound`, all verified in exact arithmetic.
pub fn qi_approximate(
    d: Discriminant,
    target: &ApproxTarget,
    bound: &BigRational,
    cap: u64,
) -> Result<Approximation> {
    if !bound.is_positive() {
        return Err(Error::InvalidArgument("bound must be positive".into()));
    }
    let (x, y) = target.coords();
    if let ApproxTarget::Exact { .. } = target {
        // An exact field element is its own best fraction: clear the common
        // denominator and report a zero residual.
        let den = x.denom().lcm(y.denom());
        let alpha = QuadInt::new(
            d,
            (x * BigRational::from_integer(den.clone())).to_integer(),
            (y * BigRational::from_integer(den.clone())).to_integer(),
        );
        let beta = QuadInt::new(d, den, BigInt::zero());
        return Ok(Approximation {
            alpha,
            beta,
            target: (x.clone(), y.clone()),
            residual_sq: BigRational::zero(),
        });
    }

    let diam_sq = BigRational::from_integer(d.cell_diameter_sq());
    let bound_sq = bound * bound;
    // Smallest N with N²·bound² ≥ diam²; subcell diameters then sit below
    // the bound (strictly, because subcells are half-open).
    let mut n = (&diam_sq / &bound_sq).ceil().to_integer().sqrt();
    while BigRational::from_integer(&n * &n) * &bound_sq < diam_sq {
        n += 1;
    }
    if n.is_zero() {
        n = BigInt::one();
    }
    let sweeps = &n * &n + 1u32;
    if sweeps > BigInt::from(cap) {
        return Err(Error::CapExceeded(cap));
    }

    let mut seen: HashMap<(BigInt, BigInt), (BigInt, BigInt, BigInt)> = HashMap::new();
    let (mut jx, mut jy) = (BigRational::zero(), BigRational::zero());
    let mut j = BigInt::zero();
    let n_rat = BigRational::from_integer(n.clone());
    while j < sweeps {
        j += 1;
        jx += x;
        jy += y;
        let (floor_pt, (fx, fy)) = qi_floor_frac(d, &jx, &jy);
        let cell = ((&n_rat * fx).floor().to_integer(), (&n_rat * fy).floor().to_integer());
        if let Some((k, kx, ky)) = seen.get(&cell) {
            let beta = QuadInt::new(d, &j - k, BigInt::zero());
            let alpha = QuadInt::new(d, &floor_pt.x - kx, &floor_pt.y - ky);
            // Residual β·z - α has rational coordinates (β is rational here).
            let bz = BigRational::from_integer(beta.x.clone());
            let rx = &bz * x - BigRational::from_integer(alpha.x.clone());
            let ry = &bz * y - BigRational::from_integer(alpha.y.clone());
            let residual_sq = norm_of_coords(d, &rx, &ry);
            if residual_sq >= bound_sq {
                return Err(Error::Invariant("pigeonhole residual out of bound".into()));
            }
            return Ok(Approximation {
                alpha,
                beta,
                target: (x.clone(), y.clone()),
                residual_sq,
            });
        }
        seen.insert(cell, (j.clone(), floor_pt.x, floor_pt.y));
    }
    // N²+1 multiples over N² cells cannot all be distinct.
    unreachable!("pigeonhole sweep exhausted without a collision");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: i64) -> Discriminant {
        Discriminant::new(n).unwrap()
    }

    fn q(dd: Discriminant, x: i64, y: i64) -> QuadInt {
        QuadInt::from_i64(dd, x, y)
    }

    #[test]
    fn discriminant_classes() {
        assert_eq!(d(1).class(), RingClass::B);
        assert_eq!(d(2).class(), RingClass::B);
        for n in [3, 7, 11, 19, 43, 67, 163] {
            assert_eq!(d(n).class(), RingClass::A);
        }
        assert!(Discriminant::new(5).is_err());
        assert!(Discriminant::new(-3).is_err());
        assert_eq!(d(1).unit_count(), 4);
        assert_eq!(d(3).unit_count(), 6);
        assert_eq!(d(7).unit_count(), 2);
    }

    #[test]
    fn norms_and_conjugation() {
        // 2 + 3ω with ω = σ - 1 is -1 + 3σ; its norm is 7.
        assert_eq!(q(d(3), -1, 3).norm(), BigInt::from(7));
        assert_eq!(q(d(1), 3, 4).norm(), BigInt::from(25));
        assert_eq!(q(d(2), 1, 2).norm(), BigInt::from(9));
        assert_eq!(q(d(163), 0, 1).norm(), BigInt::from(41));
        for dd in [d(1), d(3), d(7), d(43)] {
            let a = q(dd, 5, -3);
            // a·conj(a) should be the norm as a rational integer.
            let p = &a * &a.conj();
            assert_eq!(p.x, a.norm());
            assert!(p.y.is_zero());
        }
    }

    #[test]
    fn sigma_squared_reduction() {
        for dd in HEEGNER.map(|n| d(n as i64)) {
            let s = QuadInt::sigma(dd);
            let ss = &s * &s;
            let c = BigInt::from(dd.sigma_sq_const());
            match dd.class() {
                RingClass::A => assert_eq!(ss, QuadInt::new(dd, c, BigInt::one())),
                RingClass::B => assert_eq!(ss, QuadInt::new(dd, c, BigInt::zero())),
            }
        }
    }

    #[test]
    fn units_are_units() {
        for dd in HEEGNER.map(|n| d(n as i64)) {
            let units = dd.units();
            assert_eq!(units.len(), dd.unit_count());
            for u in &units {
                assert!(u.is_unit());
            }
        }
    }

    #[test]
    fn canonical_sector_is_a_transversal() {
        for dd in [d(1), d(2), d(3), d(7)] {
            for x in -3i64..=3 {
                for y in -3i64..=3 {
                    let a = q(dd, x, y);
                    if a.is_zero() {
                        continue;
                    }
                    let hits: usize = dd
                        .units()
                        .iter()
                        .filter(|u| (&a * *u).in_canonical_sector())
                        .count();
                    assert_eq!(hits, 1, "associates of {a} in sector (D={dd})");
                    let (c, u) = a.canonical_associate();
                    assert!(c.in_canonical_sector());
                    assert_eq!(c, &a * &u);
                }
            }
        }
    }

    #[test]
    fn hermitian_examples() {
        // D=3: conj(1)·ω = ω = -1/2 + (√3/2)i, so 2s = -1 and 2t/√3 = 1.
        let h = qi_hermitian(&q(d(3), 1, 0), &q(d(3), -1, 1)).unwrap();
        assert_eq!(h.two_s, BigInt::from(-1));
        assert_eq!(h.t_over_root, BigInt::from(1));
        // D=1: conj(1+i)·(1-i) = -2i, so s = 0 and t/√1 = -2.
        let h = qi_hermitian(&q(d(1), 1, 1), &q(d(1), 1, -1)).unwrap();
        assert_eq!(h.two_s, BigInt::from(0));
        assert_eq!(h.t_over_root, BigInt::from(-2));
        // Parity invariant in class A, and consistency with the norm.
        for dd in [d(3), d(7), d(11), d(19)] {
            for (a, b) in [(q(dd, 2, -1), q(dd, 1, 3)), (q(dd, 0, 1), q(dd, 5, 2))] {
                let h = qi_hermitian(&a, &b).unwrap();
                assert_eq!((&h.two_s - &h.t_over_root).mod_floor(&BigInt::from(2)), BigInt::zero());
                let n = qi_hermitian(&a, &a).unwrap();
                assert_eq!(n.two_s, BigInt::from(2) * a.norm());
                assert!(n.t_over_root.is_zero());
            }
        }
    }

    #[test]
    fn sea_gaussian_example() {
        // gcd(1+i, 1-i) is 1+i (norm 2), found in short order.
        let t = qi_sea(&q(d(1), 1, 1), &q(d(1), 1, -1)).unwrap();
        let g = t.gcd().canonical_associate().0;
        assert_eq!(g, q(d(1), 1, 1));
        assert_eq!(g.norm(), BigInt::from(2));
    }

    #[test]
    fn sea_d2_quotient_digits() {
        // gcd(2, σ) = σ for D = 2 since σ·σ = -2.
        let t = qi_sea(&q(d(2), 2, 0), &q(d(2), 0, 1)).unwrap();
        assert_eq!(t.gcd().canonical_associate().0, q(d(2), 0, 1));
    }

    #[test]
    fn sea_norms_strictly_decrease() {
        for dd in [d(1), d(2), d(3), d(7), d(11)] {
            for x in -4i64..=4 {
                for y in -4i64..=4 {
                    let a = q(dd, x, y);
                    let b = q(dd, 3, -2);
                    let t = qi_sea(&a, &b).unwrap();
                    let mut prev = &a.norm() + b.norm();
                    for st in &t.states[1..] {
                        let tot = st.0.norm() + st.1.norm();
                        assert!(tot < prev);
                        prev = tot;
                    }
                    // Replaying the step log forward reproduces the chain.
                    let mut cur = t.states[0].clone();
                    for (step, want) in t.steps.iter().zip(&t.states[1..]) {
                        match step.side {
                            PairSide::First => cur.0 = &cur.0 - &(&step.multiplier * &cur.1),
                            PairSide::Second => cur.1 = &cur.1 - &(&step.multiplier * &cur.0),
                        }
                        assert_eq!(&cur, want);
                    }
                }
            }
        }
    }

    #[test]
    fn sea_rejects_non_euclidean() {
        assert_eq!(
            qi_sea(&q(d(19), 1, 0), &q(d(19), 0, 1)).unwrap_err(),
            Error::NotEuclidean(19)
        );
    }

    /// Divisor-sweep oracle: search every nonunit of norm ≤ min(|a|²,|b|²)
    /// for a common divisor by checking divisibility exactly.
    fn coprime_oracle(a: &QuadInt, b: &QuadInt) -> bool {
        let divides = |g: &QuadInt, e: &QuadInt| {
            let n = g.norm();
            let p = e * &g.conj();
            (&p.x % &n).is_zero() && (&p.y % &n).is_zero()
        };
        // Everything divides zero, so the search bound comes from the
        // nonzero entries only.
        let bound = match (a.is_zero(), b.is_zero()) {
            (true, false) => b.norm(),
            (false, true) => a.norm(),
            _ => a.norm().min(b.norm()),
        };
        let lim = 1 + bound.sqrt().try_into().unwrap_or(20i64);
        for gx in -lim..=lim {
            for gy in -lim..=lim {
                let g = QuadInt::from_i64(a.d, gx, gy);
                if g.is_zero() || g.is_unit() || g.norm() > bound {
                    continue;
                }
                if divides(&g, a) && divides(&g, b) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn coprime_matches_divisor_sweep() {
        for dd in [d(1), d(2), d(3), d(7), d(19), d(43)] {
            for x in -3i64..=3 {
                for y in -3i64..=3 {
                    let a = q(dd, x, y);
                    let b = q(dd, 2, 1);
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    assert_eq!(
                        qi_coprime(&a, &b).unwrap(),
                        coprime_oracle(&a, &b),
                        "D={dd} a={a} b={b}"
                    );
                }
            }
        }
        // (1+i, 1-i) share the prime 1+i.
        assert!(!qi_coprime(&q(d(1), 1, 1), &q(d(1), 1, -1)).unwrap());
        // (a, 0) is coprime exactly when a is a unit.
        assert!(qi_coprime(&q(d(3), 0, 1), &QuadInt::zero(d(3))).unwrap());
        assert!(!qi_coprime(&q(d(3), 2, 0), &QuadInt::zero(d(3))).unwrap());
        assert_eq!(
            qi_coprime(&QuadInt::zero(d(3)), &QuadInt::zero(d(3))).unwrap_err(),
            Error::BothZero
        );
    }

    #[test]
    fn floor_frac_basic() {
        let x = BigRational::new(BigInt::from(7), BigInt::from(3));
        let y = BigRational::new(BigInt::from(-1), BigInt::from(2));
        let (ip, (fx, fy)) = qi_floor_frac(d(3), &x, &y);
        assert_eq!(ip, q(d(3), 2, -1));
        assert_eq!(fx, BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert_eq!(fy, BigRational::new(BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn approximate_exact_target_is_its_own_fraction() {
        let x = BigRational::new(BigInt::from(3), BigInt::from(7));
        let y = BigRational::new(BigInt::from(2), BigInt::from(7));
        let t = ApproxTarget::Exact { x, y };
        let r = qi_approximate(d(3), &t, &BigRational::new(BigInt::one(), BigInt::from(1000)), 10_000)
            .unwrap();
        assert!(r.residual_sq.is_zero());
        assert_eq!(r.alpha, q(d(3), 3, 2));
        assert_eq!(r.beta, q(d(3), 7, 0));
    }

    #[test]
    fn approximate_sqrt2_in_gaussian_lattice() {
        let t = ApproxTarget::from_f64(d(1), std::f64::consts::SQRT_2, 0.0).unwrap();
        let bound = BigRational::new(BigInt::one(), BigInt::from(10));
        let r = qi_approximate(d(1), &t, &bound, 100_000).unwrap();
        assert!(!r.beta.is_zero());
        assert!(r.residual_sq < &bound * &bound);
        // Independent existence check over small denominators.
        let (x, _) = t.coords();
        let mut found = false;
        'outer: for b in 1i64..=10 {
            let bx = BigRational::from_integer(BigInt::from(b)) * x;
            for a in -20i64..=20 {
                let r = &bx - BigRational::from_integer(BigInt::from(a));
                if (&r * &r) < &bound * &bound {
                    found = true;
                    break 'outer;
                }
            }
        }
        assert!(found, "oracle: some |βz-α| < 1/10 with small β exists");
    }

    #[test]
    fn quadrat_field_arithmetic() {
        let dd = d(3);
        let a = QuadRat::new(q(dd, 2, 1), BigInt::from(3)).unwrap();
        let b = QuadRat::new(q(dd, -1, 2), BigInt::from(6)).unwrap();
        // Field laws on a couple of fixed values.
        let prod = &a * &b;
        assert_eq!(prod.div(&b).unwrap(), a);
        assert_eq!(&(&a + &b) - &b, a);
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, QuadRat::one(dd));
        // Reduction: 2/4 + (2/4)σ is (1+σ)/2.
        let r = QuadRat::new(q(dd, 2, 2), BigInt::from(4)).unwrap();
        assert_eq!(r, QuadRat::new(q(dd, 1, 1), BigInt::from(2)).unwrap());
        // Norm multiplicativity.
        assert_eq!(prod.norm(), a.norm() * b.norm());
        // 1/(1-ω) for D=3: 1-ω = 2-σ has norm 3 and conjugate 1+σ.
        let one_minus_omega = QuadRat::from_int(q(dd, 2, -1));
        let inv2 = one_minus_omega.inv().unwrap();
        assert_eq!(inv2, QuadRat::new(q(dd, 1, 1), BigInt::from(3)).unwrap());
        assert_eq!(&inv2 * &one_minus_omega, QuadRat::one(dd));
    }

    #[test]
    fn approximate_cap() {
        let t = ApproxTarget::from_f64(d(3), std::f64::consts::PI, 0.27).unwrap();
        let tight = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
        assert_eq!(qi_approximate(d(3), &t, &tight, 10).unwrap_err(), Error::CapExceeded(10));
        let ok = qi_approximate(
            d(3),
            &t,
            &BigRational::new(BigInt::one(), BigInt::from(50)),
            100_000,
        )
        .unwrap();
        assert!(ok.residual_sq < BigRational::new(BigInt::one(), BigInt::from(2500)));
    }
}
