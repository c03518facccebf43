//! Ford circles: for a reduced fraction `a/b` the circle of radius `1/(2b²)`
//! resting on the real line at `a/b`. Two of them are tangent exactly when
//! `|ad - bc| = 1`, mediants insert children between tangent pairs, and the
//! subtractive Euclidean word on `(a, b)` walks a circle back to its two
//! parents. The same circles are also solutions `⟨s,t⟩` of the barycentric
//! quadric `(s+t+u)² = s² + t² + u²`; both directions of that dictionary
//! live here.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Integer;

use crate::error::{Error, Result};

/// The circle `C(a/b, 1/(2b²))`, stored as the reduced pair `(a, b)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FordCircle {
    a: i64,
    b: i64,
}

impl FordCircle {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b == 0 {
            return Err(Error::DivisionByZero);
        }
        let sign = b.signum();
        let (mut a, mut b) = (a * sign, b * sign);
        let g = a.gcd(&b);
        if g > 1 {
            a /= g;
            b /= g;
        }
        Ok(FordCircle { a, b })
    }

    pub fn numer(&self) -> i64 {
        self.a
    }

    pub fn denom(&self) -> i64 {
        self.b
    }

    /// Point of tangency with the real line.
    pub fn tangent(&self) -> BigRational {
        BigRational::new(BigInt::from(self.a), BigInt::from(self.b))
    }

    pub fn radius(&self) -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(2) * self.b * self.b)
    }

    /// Curvature `2b²`, the reciprocal radius.
    pub fn curvature(&self) -> i64 {
        2 * self.b * self.b
    }

    /// Determinant tangency test: `|ad - bc| = 1`.
    pub fn is_tangent(&self, other: &FordCircle) -> bool {
        let det = (self.a as i128) * (other.b as i128) - (self.b as i128) * (other.a as i128);
        det.abs() == 1
    }
}

impl fmt::Display for FordCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C[{}/{}]", self.a, self.b)
    }
}

/// Geometric tangency: `(t - t')² = 4rr'` in exact rational arithmetic.
/// Same verdict as [`FordCircle::is_tangent`], by the determinant identity
/// `(a/b - c/d)² - 4·(1/2b²)(1/2d²) = ((ad-bc)² - 1)/(bd)²`.
pub fn circle_tangent_geometric(c1: &FordCircle, c2: &FordCircle) -> bool {
    let dt = c1.tangent() - c2.tangent();
    let four = BigRational::from_integer(BigInt::from(4));
    &dt * &dt == four * c1.radius() * c2.radius()
}

/// The mediant child `C_{a+c, b+d}` of two tangent circles: the unique Ford
/// circle tangent to both and nested between them.
pub fn circle_child(c1: &FordCircle, c2: &FordCircle) -> Result<FordCircle> {
    if !c1.is_tangent(c2) {
        return Err(Error::NotTangent);
    }
    FordCircle::new(c1.a + c2.a, c1.b + c2.b)
}

/// Letters of the subtractive Euclidean word: `L` rewrites the first entry,
/// `R` the second.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeaLetter {
    L,
    R,
}

impl fmt::Display for SeaLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeaLetter::L => "L",
            SeaLetter::R => "R",
        })
    }
}

/// Word of a subtractive Euclidean run on a positive pair, ending at `(g, g)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeaWord {
    pub letters: Vec<SeaLetter>,
    pub terminal: (i64, i64),
    pub states: Vec<(i64, i64)>,
}

/// Subtractive Euclid on positive integers: `L: (a,b) ↦ (a-b, b)` while
/// `a > b`, `R: (a,b) ↦ (a, b-a)` while `b > a`, stopping at `a = b`.
pub fn sea_pair(a: i64, b: i64) -> Result<SeaWord> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidArgument(format!("need positive entries, got ({a}, {b})")));
    }
    let (mut a, mut b) = (a, b);
    let mut letters = Vec::new();
    let mut states = vec![(a, b)];
    while a != b {
        if a > b {
            a -= b;
            letters.push(SeaLetter::L);
        } else {
            b -= a;
            letters.push(SeaLetter::R);
        }
        states.push((a, b));
    }
    Ok(SeaWord { letters, terminal: (a, b), states })
}

/// The two Ford circles tangent to `c` with smaller denominator, recovered
/// by replaying the reversed Euclidean word of `(a, b)` on the seeds
/// `(0, 1)` and `(1, 0)`. Needs `b ≥ 2`; integer circles are roots. Works
/// for any numerator by translating into `0 ≤ a < b` and back.
pub fn circle_parents(c: &FordCircle) -> Result<(FordCircle, FordCircle)> {
    if c.b < 2 {
        return Err(Error::Degenerate(format!("{c} is a root circle with no parents")));
    }
    let shift = c.a.div_euclid(c.b);
    let a0 = c.a.rem_euclid(c.b);
    let word = sea_pair(a0, c.b)?;
    debug_assert_eq!(word.terminal, (1, 1), "reduced fraction reaches (1,1)");
    let replay = |seed: (i64, i64)| {
        let (mut p, mut q) = seed;
        // Inverse steps in reverse order: L⁻¹ (p,q) = (p+q, q), R⁻¹ = (p, p+q).
        for letter in word.letters.iter().rev() {
            match letter {
                SeaLetter::L => p += q,
                SeaLetter::R => q += p,
            }
        }
        (p, q)
    };
    let (x1, y1) = replay((0, 1));
    let (x2, y2) = replay((1, 0));
    let p1 = FordCircle::new(x1 + shift * y1, y1)?;
    let p2 = FordCircle::new(x2 + shift * y2, y2)?;
    Ok((p1, p2))
}

/// A solution `(s, t, u)` of `(s+t+u)² = s² + t² + u²` with `gcd = 1` and
/// `s + t > 0`, naming the circle `C(t/(s+t), 1/(2(s+t)))`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BaryTriple {
    pub s: i64,
    pub t: i64,
    pub u: i64,
}

impl BaryTriple {
    pub fn new(s: i64, t: i64, u: i64) -> Result<Self> {
        let (ss, tt, uu) = (s as i128, t as i128, u as i128);
        let total = ss + tt + uu;
        if total * total != ss * ss + tt * tt + uu * uu {
            return Err(Error::OffQuadric([s, t, u, 0]));
        }
        if s + t <= 0 {
            return Err(Error::NonPositiveSum(s + t));
        }
        if s.gcd(&t).gcd(&u) != 1 {
            return Err(Error::InvalidArgument(format!("({s},{t},{u}) is not primitive")));
        }
        Ok(BaryTriple { s, t, u })
    }
}

impl fmt::Display for BaryTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{}>", self.s, self.t, self.u)
    }
}

/// `C_{a,b} ↦ (b² - ab, ab, a² - ab)`, the barycentric coordinates of the
/// circle against the frame of circles at 0 and 1 plus the top line.
pub fn circle_to_bary(c: &FordCircle) -> BaryTriple {
    let (a, b) = (c.a, c.b);
    let triple = BaryTriple { s: b * b - a * b, t: a * b, u: a * a - a * b };
    debug_assert!(BaryTriple::new(triple.s, triple.t, triple.u).is_ok());
    triple
}

/// Inverse dictionary: `s + t` is a perfect square `b²` and `t = ab`.
pub fn bary_to_circle(t: &BaryTriple) -> Result<FordCircle> {
    let sum = t.s + t.t;
    let b = int_sqrt(sum).ok_or_else(|| Error::NotASquare(format!("s+t = {sum}")))?;
    if t.t % b != 0 {
        return Err(Error::NotIntegral(format!("t/√(s+t) = {}/{}", t.t, b)));
    }
    let c = FordCircle::new(t.t / b, b)?;
    if circle_to_bary(&c) != *t {
        return Err(Error::Invariant(format!("{t} does not name a Ford circle")));
    }
    Ok(c)
}

/// Floor square root for nonnegative `n`, else `None`.
fn int_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt() as i64;
    for c in [r.saturating_sub(1), r, r + 1] {
        if c >= 0 && c * c == n {
            return Some(c);
        }
    }
    None
}

/// Cor-style squareness check for a triple: `|s+t|` is a perfect square.
pub fn check_square(t: &BaryTriple) -> bool {
    int_sqrt((t.s + t.t).abs()).is_some()
}

/// Stern–Brocot style generation: seed the integer circles covering the
/// window, then insert mediants between adjacent tangent pairs for `depth`
/// rounds, pruning gaps that miss the window. Returns the circles whose
/// tangent point lies in the closed window, sorted by tangent.
pub fn gen_circles(depth: u32, window: &(BigRational, BigRational)) -> Result<Vec<FordCircle>> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::InvalidArgument("empty window".into()));
    }
    let first: i64 = lo.floor().to_integer().try_into().map_err(|_| Error::Overflow("window"))?;
    let last: i64 = hi.ceil().to_integer().try_into().map_err(|_| Error::Overflow("window"))?;
    let mut out = Vec::new();
    let mut stack: Vec<(FordCircle, FordCircle, u32)> = Vec::new();
    for n in first..=last {
        out.push(FordCircle::new(n, 1)?);
        if n < last {
            stack.push((FordCircle::new(n, 1)?, FordCircle::new(n + 1, 1)?, depth));
        }
    }
    while let Some((c1, c2, left)) = stack.pop() {
        if left == 0 {
            continue;
        }
        // The gap densely fills (t₁, t₂); skip it if that misses the window.
        if &c2.tangent() < lo || &c1.tangent() > hi {
            continue;
        }
        let child = circle_child(&c1, &c2)?;
        out.push(child);
        stack.push((c1, child, left - 1));
        stack.push((child, c2, left - 1));
    }
    let mut out: Vec<FordCircle> = out
        .into_iter()
        .filter(|c| &c.tangent() >= lo && &c.tangent() <= hi)
        .collect();
    out.sort_by_key(|c| (c.tangent(), c.b));
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    fn c(a: i64, b: i64) -> FordCircle {
        FordCircle::new(a, b).unwrap()
    }

    #[test]
    fn basic_geometry() {
        assert_eq!(c(1, 2).tangent(), BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(c(1, 2).radius(), BigRational::new(BigInt::from(1), BigInt::from(8)));
        assert_eq!(c(2, 4), c(1, 2));
        assert_eq!(c(1, -2), c(-1, 2));
        assert_eq!(c(3, 1).curvature(), 2);
    }

    #[test]
    fn tangency_det_equals_geometry() {
        let cases = [
            (c(0, 1), c(1, 1), true),
            (c(0, 1), c(1, 2), true),
            (c(1, 2), c(1, 1), true),
            (c(0, 1), c(2, 3), false),
            (c(1, 3), c(2, 3), false),
            (c(-1, 2), c(0, 1), true),
        ];
        for (x, y, want) in cases {
            assert_eq!(x.is_tangent(&y), want, "{x} vs {y}");
            assert_eq!(circle_tangent_geometric(&x, &y), want, "{x} vs {y} geometric");
        }
    }

    #[test]
    fn children_are_mediants() {
        assert_eq!(circle_child(&c(0, 1), &c(1, 1)).unwrap(), c(1, 2));
        assert_eq!(circle_child(&c(1, 2), &c(1, 1)).unwrap(), c(2, 3));
        assert_eq!(circle_child(&c(0, 1), &c(2, 3)).unwrap_err(), Error::NotTangent);
        // A child touches both parents.
        let ch = circle_child(&c(2, 5), &c(1, 2)).unwrap();
        assert!(ch.is_tangent(&c(2, 5)) && ch.is_tangent(&c(1, 2)));
    }

    #[test]
    fn sea_word_for_14_5() {
        use SeaLetter::{L, R};
        let w = sea_pair(14, 5).unwrap();
        assert_eq!(w.letters, vec![L, L, R, L, L, L]);
        assert_eq!(w.terminal, (1, 1));
        // gcd(a, b) surfaces as the terminal pair.
        assert_eq!(sea_pair(12, 8).unwrap().terminal, (4, 4));
    }

    #[test]
    fn parents_replay_the_word() {
        assert_eq!(circle_parents(&c(1, 2)).unwrap(), (c(0, 1), c(1, 1)));
        assert_eq!(circle_parents(&c(2, 3)).unwrap(), (c(1, 2), c(1, 1)));
        assert_eq!(circle_parents(&c(3, 5)).unwrap(), (c(1, 2), c(2, 3)));
        assert!(circle_parents(&c(7, 1)).is_err());
        // Mirror symmetry for negative numerators.
        let (p1, p2) = circle_parents(&c(-1, 2)).unwrap();
        assert_eq!((p1, p2), (c(-1, 1), c(0, 1)));
        // Parents are tangent to the child, to each other, and sum to it.
        for circle in [c(2, 5), c(3, 7), c(-4, 9), c(22, 7)] {
            let (p1, p2) = circle_parents(&circle).unwrap();
            assert!(p1.is_tangent(&circle));
            assert!(p2.is_tangent(&circle));
            assert!(p1.is_tangent(&p2));
            assert_eq!(p1.a + p2.a, circle.a);
            assert_eq!(p1.b + p2.b, circle.b);
        }
    }

    #[test]
    fn barycentric_dictionary() {
        assert_eq!(circle_to_bary(&c(1, 2)), BaryTriple { s: 2, t: 2, u: -1 });
        assert_eq!(circle_to_bary(&c(0, 1)), BaryTriple { s: 1, t: 0, u: 0 });
        assert_eq!(circle_to_bary(&c(1, 1)), BaryTriple { s: 0, t: 1, u: 0 });
        for circle in [c(0, 1), c(1, 1), c(1, 2), c(2, 3), c(-3, 5), c(8, 13)] {
            let b = circle_to_bary(&circle);
            assert!(check_square(&b));
            assert_eq!(bary_to_circle(&b).unwrap(), circle);
        }
        assert!(BaryTriple::new(1, 1, 1).is_err());
        assert!(BaryTriple::new(2, 2, -1).is_ok());
        assert!(BaryTriple::new(4, 4, -2).is_err()); // not primitive
    }

    #[test]
    fn generation_by_depth() {
        let unit = (BigRational::zero(), BigRational::from_integer(BigInt::from(1)));
        let d0 = gen_circles(0, &unit).unwrap();
        assert_eq!(d0, vec![c(0, 1), c(1, 1)]);
        let d2 = gen_circles(2, &unit).unwrap();
        assert_eq!(d2, vec![c(0, 1), c(1, 3), c(1, 2), c(2, 3), c(1, 1)]);
        // Depth 5 on a sub-window stays inside and disjoint.
        let w = (
            BigRational::new(BigInt::from(1), BigInt::from(4)),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        );
        let circles = gen_circles(5, &w).unwrap();
        assert!(circles.contains(&c(1, 3)));
        for (i, x) in circles.iter().enumerate() {
            assert!(x.tangent() >= w.0 && x.tangent() <= w.1);
            for y in &circles[i + 1..] {
                // Distinct circles never overlap: |ad - bc| ≥ 1.
                let det = x.a * y.b - x.b * y.a;
                assert!(det.abs() >= 1, "{x} overlaps {y}");
            }
        }
    }
}
