//! Ford spheres over all nine imaginary quadratic rings of class number
//! one, and their barycentric shadow.
//!
//! The Möbius map `μ = (ω, 0; ω, 1)` (sending `0, 1, ∞` to `0, 1+ω, 1`)
//! carries the sphere `S_{α,β}` to a sphere whose barycentric coordinates
//! over the equilateral frame have the form `⟨a+mξ, b+mξ, c+mξ⟩` with
//! `a, b, c, m` integers and `ξ` a fixed quadratic irrationality of the
//! ring. The integer quadruples land exactly on the quadric
//!
//! ```text
//! ab+ac+bc + (a+b+c)m = ((D−3)/4)·m²   for D ≡ 3 (mod 4)
//! ab+ac+bc = D·m²                       otherwise
//! ```
//!
//! and, conversely, every primitive solution with positive frame sum is
//! the image of a unique coprime pair. The quadruples also support an
//! exact tangency pairing mirroring `|αδ−βγ|²`.
//!
//! A second route to the solutions goes through secant addition on
//! `Q ∪ {∞}` for the ring's minimal polynomial: triples `x ⊕ y ⊕ z = ∞`
//! scale to solutions. Solutions with `m = 0` sit at the `z = ∞` chart
//! boundary of that parameterization, so the enumerator supplements them
//! with their closed form `(q(q−p), p(p−q), pq, 0)` over coprime `p, q`.

use std::collections::BTreeSet;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

use crate::error::{Error, Result};
use crate::quadint::{qi_coprime, Discriminant, QuadInt, RingClass};
use crate::spheres::{gen_spheres, FordSphere, Window};

/// The frame constant `ξ`: `(√3−√D)/√12` for class A rings, `√(D/3)`
/// for class B. Kept symbolic; only rendered numerically on demand.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct XiFrame {
    pub d: Discriminant,
}

impl XiFrame {
    pub fn new(d: Discriminant) -> Self {
        XiFrame { d }
    }

    pub fn xi_f64(&self) -> f64 {
        let dv = self.d.get() as f64;
        match self.d.class() {
            RingClass::A => (3f64.sqrt() - dv.sqrt()) / 12f64.sqrt(),
            RingClass::B => (dv / 3.0).sqrt(),
        }
    }
}

impl fmt::Display for XiFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d.class() {
            RingClass::A => write!(f, "(√3−√{})/√12", self.d.get()),
            RingClass::B => write!(f, "√({}/3)", self.d.get()),
        }
    }
}

/// Does `(a, b, c, m)` solve the barycentric quadric for `d`?
pub fn eq11_verify(d: Discriminant, q: [i64; 4]) -> bool {
    let [a, b, c, m] = q.map(i128::from);
    let sym = a * b + a * c + b * c;
    match d.class() {
        RingClass::A => {
            let k = i128::from((d.get() - 3) / 4);
            sym + (a + b + c) * m == k * m * m
        }
        RingClass::B => sym == i128::from(d.get()) * m * m,
    }
}

/// A primitive integer solution of the barycentric quadric, carrying its
/// ring. The coordinates of the named sphere are `a+mξ, b+mξ, c+mξ`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SigmaBary {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub m: i64,
    pub d: Discriminant,
}

impl SigmaBary {
    pub fn new(d: Discriminant, a: i64, b: i64, c: i64, m: i64) -> Result<Self> {
        if !eq11_verify(d, [a, b, c, m]) {
            return Err(Error::OffQuadric([a, b, c, m]));
        }
        if a.gcd(&b).gcd(&c).gcd(&m) != 1 {
            return Err(Error::InvalidArgument(format!(
                "({a},{b},{c},{m}) has a common factor"
            )));
        }
        Ok(SigmaBary { a, b, c, m, d })
    }

    pub fn quad(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.m]
    }

    /// Sign of the frame sum `(a+mξ)+(b+mξ)+(c+mξ)`, which is twice the
    /// curvature scale of the named sphere: positive for genuine spheres,
    /// zero exactly for the plane-shaped solution (possible only at
    /// `D = 3`).
    pub fn frame_sum_sign(&self) -> i32 {
        let (sum, m) = (i128::from(self.a) + i128::from(self.b) + i128::from(self.c),
            i128::from(self.m));
        // Frame sum = Σ + 3mξ; rationalize to P + Q√(3D) (up to a
        // positive factor) per class.
        let n = 3 * i128::from(self.d.get());
        let (p, q) = match self.d.class() {
            RingClass::A => (2 * sum + 3 * m, -m),
            RingClass::B => (sum, m),
        };
        sign_plus_root(p, q, n)
    }

    /// The representative of `{v, −v}` naming an actual sphere: frame
    /// sum positive, with `m > 0` breaking the tie on the frame-sum-zero
    /// plane solution.
    pub fn canonical(&self) -> SigmaBary {
        let flip = match self.frame_sum_sign() {
            s if s < 0 => true,
            0 => self.m < 0,
            _ => false,
        };
        if flip {
            SigmaBary { a: -self.a, b: -self.b, c: -self.c, m: -self.m, d: self.d }
        } else {
            *self
        }
    }

    /// Floating render of the three frame coordinates.
    pub fn coords_f64(&self) -> [f64; 3] {
        let xi = XiFrame::new(self.d).xi_f64();
        let m = self.m as f64;
        [self.a as f64 + m * xi, self.b as f64 + m * xi, self.c as f64 + m * xi]
    }
}

impl fmt::Display for SigmaBary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}; m={}; D={})", self.a, self.b, self.c, self.m, self.d.get())
    }
}

/// Sign of `p + q√n` for `n > 0`, by exact integer comparison.
fn sign_plus_root(p: i128, q: i128, n: i128) -> i32 {
    debug_assert!(n > 0);
    let cmp = |x: i128, y: i128| -> i32 {
        // sign of x² − y²·n where x ≥ 0, y ≥ 0.
        match (x * x).cmp(&(y * y * n)) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    };
    match (p >= 0, q >= 0) {
        (true, true) => {
            if p == 0 && q == 0 {
                0
            } else {
                1
            }
        }
        (false, false) => -1,
        (true, false) => cmp(p, -q),
        (false, true) => -cmp(-p, q),
    }
}

fn to_i64(v: &BigInt, what: &'static str) -> Result<i64> {
    v.try_into().map_err(|_| Error::Overflow(what))
}

/// The barycentric shadow of a sphere: with `w = conj(α)·β = wx + wy·σ`,
///
/// ```text
/// class A:  a = |β|²−wx   b = |α|²−wx   c = wx+wy   m = −wy
/// class B:  a = |β|²−wx   b = |α|²−wx   c = wx      m = wy
/// ```
///
/// The output is primitive precisely because the pair is coprime, and it
/// is already canonical (the frame sum is the norm of `ωα+β` scaled).
pub fn mu_apply(s: &FordSphere) -> Result<SigmaBary> {
    let d = s.d();
    let w = &s.alpha().conj() * s.beta();
    let wx = to_i64(&w.x, "barycentric shadow")?;
    let wy = to_i64(&w.y, "barycentric shadow")?;
    let nb = to_i64(&s.beta().norm(), "barycentric shadow")?;
    let na = to_i64(&s.alpha().norm(), "barycentric shadow")?;
    let (a, b, c, m) = match d.class() {
        RingClass::A => (nb - wx, na - wx, wx + wy, -wy),
        RingClass::B => (nb - wx, na - wx, wx, wy),
    };
    let out = SigmaBary::new(d, a, b, c, m)?;
    debug_assert!(out.frame_sum_sign() >= 0);
    debug_assert_eq!(out.canonical(), out);
    Ok(out)
}

/// Inverse of `mu_apply` on canonical solutions: recover
/// `w = conj(α)·β` and `|β|²`, hence the tangency point `conj(w)/|β|²`.
/// The pair is rebuilt by finding the unique sector element `β` of norm
/// `|β|²` that clears the denominator (no Euclidean reduction needed, so
/// this works in every supported ring). Frame-sum-negative inputs name
/// no sphere and are rejected.
pub fn mu_invert(q: &SigmaBary) -> Result<FordSphere> {
    let d = q.d;
    let (wx, wy, nb) = match d.class() {
        RingClass::A => (q.c + q.m, -q.m, q.a + q.c + q.m),
        RingClass::B => (q.c, q.m, q.a + q.c),
    };
    if nb < 0 || (nb == 0 && !(wx == 0 && wy == 0)) {
        return Err(Error::NonPositiveSum(nb));
    }
    let s = if nb == 0 {
        FordSphere::plane(d)?
    } else {
        let theta = QuadInt::from_i64(d, wx, wy).conj();
        let nbig = BigInt::from(nb);
        let mut found = None;
        for beta in crate::spheres::sector_elements(d, nb) {
            if beta.norm() != nbig {
                continue;
            }
            // α = β·θ/nb must land in the ring with the pair coprime.
            let prod = &beta * &theta;
            if !(&prod.x % &nbig).is_zero() || !(&prod.y % &nbig).is_zero() {
                continue;
            }
            let alpha = QuadInt::new(d, &prod.x / &nbig, &prod.y / &nbig);
            if qi_coprime(&alpha, &beta)? {
                found = Some(FordSphere::new(alpha, beta)?);
                break;
            }
        }
        found.ok_or_else(|| Error::Invariant(format!("{q} is not a primitive sphere shadow")))?
    };
    let back = mu_apply(&s)?;
    if back != *q {
        return Err(Error::Invariant(format!("{q} is not a primitive sphere shadow")));
    }
    Ok(s)
}

/// The exact tangency pairing on barycentric solutions, equal to
/// `|αδ−βγ|²` of the underlying pairs:
///
/// ```text
/// class A:  ΣAB' + M(A'+B'+C') + M'(A+B+C) − ((D−3)/2)·MM'
/// class B:  ΣAB' − 2D·MM'
/// ```
///
/// where `ΣAB' = AB'+AC'+BA'+BC'+CA'+CB'`. Zero on equal solutions, one
/// exactly on tangent spheres.
pub fn pair_norm_general(q1: &SigmaBary, q2: &SigmaBary) -> Result<i128> {
    if q1.d != q2.d {
        return Err(Error::DiscriminantMismatch(q1.d.get(), q2.d.get()));
    }
    let [a, b, c, m] = q1.quad().map(i128::from);
    let [a2, b2, c2, m2] = q2.quad().map(i128::from);
    let cross = a * b2 + a * c2 + b * a2 + b * c2 + c * a2 + c * b2;
    Ok(match q1.d.class() {
        RingClass::A => {
            let k = i128::from(q1.d.get() - 3) / 2;
            cross + m * (a2 + b2 + c2) + m2 * (a + b + c) - k * m * m2
        }
        RingClass::B => cross - 2 * i128::from(q1.d.get()) * m * m2,
    })
}

/// A point of `Q ∪ {∞}` for the secant group; `None` is `∞`.
pub type SecantValue = Option<BigRational>;

/// Secant addition for the ring's minimal polynomial:
/// `(xy−(D+1)/4)/(x+y−1)` in class A, `(xy−D)/(x+y)` in class B, with
/// `∞` as identity and denominator zero mapping to `∞`. Associative and
/// commutative on all of `Q ∪ {∞}` (the polynomial has no real roots).
pub fn secant_add(x: &SecantValue, y: &SecantValue, d: Discriminant) -> SecantValue {
    let (x, y) = match (x, y) {
        (None, _) => return y.clone(),
        (_, None) => return x.clone(),
        (Some(x), Some(y)) => (x, y),
    };
    let rat = |n: i64| BigRational::from_integer(BigInt::from(n));
    let (num, den) = match d.class() {
        RingClass::A => {
            let k = BigRational::new(BigInt::from(d.get() as i64 + 1), BigInt::from(4));
            (x * y - k, x + y - rat(1))
        }
        RingClass::B => (x * y - rat(d.get() as i64), x + y),
    };
    if den.is_zero() {
        None
    } else {
        Some(num / den)
    }
}

/// The secant-group inverse: negation in class B, reflection `w ↦ 1−w`
/// in class A; `∞` is self-inverse.
pub fn secant_inverse(x: &SecantValue, d: Discriminant) -> SecantValue {
    x.as_ref().map(|v| match d.class() {
        RingClass::A => BigRational::one() - v,
        RingClass::B => -v,
    })
}

/// Run the secant pipeline on one rational pair: `z` completes
/// `x ⊕ y ⊕ z = ∞`; `m` is the least positive integer clearing the
/// denominators of `x, y, z` and of `xy+xz+yz`; the candidate triple is
/// `(−mx, −my, −mz)` with the fourth slot recovered from the quadric
/// (both roots when two exist). Pairs with `z = ∞` yield nothing.
pub fn secant_candidates(
    x: &BigRational,
    y: &BigRational,
    d: Discriminant,
) -> Result<Vec<SigmaBary>> {
    let sum = secant_add(&Some(x.clone()), &Some(y.clone()), d);
    let z = match secant_inverse(&sum, d) {
        Some(z) => z,
        None => return Ok(Vec::new()),
    };
    let prod_sum = x * y + x * &z + y * &z;
    let m = x
        .denom()
        .lcm(y.denom())
        .lcm(z.denom())
        .lcm(prod_sum.denom());
    let lin = |v: &BigRational| -> Result<i64> {
        let scaled = v * BigRational::from_integer(m.clone());
        debug_assert!(scaled.is_integer());
        to_i64(&-scaled.to_integer(), "secant candidate")
    };
    let (a, b, c) = (lin(x)?, lin(y)?, lin(&z)?);
    let mut out = Vec::new();
    let push = |slots: &mut Vec<SigmaBary>, mm: i64| -> Result<()> {
        let g = a.gcd(&b).gcd(&c).gcd(&mm);
        if g == 0 {
            return Ok(());
        }
        let q = SigmaBary::new(d, a / g, b / g, c / g, mm / g)?.canonical();
        if !slots.contains(&q) {
            slots.push(q);
        }
        Ok(())
    };
    let sym = i128::from(a) * i128::from(b) + i128::from(a) * i128::from(c)
        + i128::from(b) * i128::from(c);
    let s3 = i128::from(a) + i128::from(b) + i128::from(c);
    match d.class() {
        RingClass::B => {
            let dv = i128::from(d.get());
            if sym % dv == 0 && sym >= 0 {
                if let Some(r) = exact_sqrt(sym / dv) {
                    push(&mut out, i64::try_from(r).map_err(|_| Error::Overflow("m slot"))?)?;
                    if r != 0 {
                        push(&mut out, -i64::try_from(r).unwrap())?;
                    }
                }
            }
        }
        RingClass::A if d.get() == 3 => {
            // The quadric is linear in m here.
            if s3 != 0 && sym % s3 == 0 {
                push(&mut out, i64::try_from(-sym / s3).map_err(|_| Error::Overflow("m slot"))?)?;
            }
        }
        RingClass::A => {
            let k = i128::from(d.get() - 3) / 4;
            let disc = s3 * s3 + 4 * k * sym;
            if disc >= 0 {
                if let Some(r) = exact_sqrt(disc) {
                    for root_num in [s3 + r, s3 - r] {
                        if root_num % (2 * k) == 0 {
                            let mm = i64::try_from(root_num / (2 * k))
                                .map_err(|_| Error::Overflow("m slot"))?;
                            push(&mut out, mm)?;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = BigInt::from(n).sqrt();
    let r: i128 = (&r).try_into().ok()?;
    (r * r == n).then_some(r)
}

/// All canonical solutions reachable from rational pairs of height at
/// most `height_bound`, plus the `m = 0` family `(q(q−p), p(p−q), pq, 0)`
/// over coprime `p, q` in the same range (those sit at the `z = ∞`
/// boundary of the rational chart and are missed by the pipeline).
pub fn secant_enumerate(d: Discriminant, height_bound: i64) -> Result<BTreeSet<SigmaBary>> {
    if height_bound < 1 {
        return Err(Error::InvalidArgument("height bound must be at least 1".into()));
    }
    let mut rats = Vec::new();
    for den in 1..=height_bound {
        for num in -height_bound..=height_bound {
            if num.gcd(&den) == 1 {
                rats.push(BigRational::new(BigInt::from(num), BigInt::from(den)));
            }
        }
    }
    let mut set = BTreeSet::new();
    for x in &rats {
        for y in &rats {
            for q in secant_candidates(x, y, d)? {
                set.insert(q);
            }
        }
    }
    for q in 0..=height_bound {
        for p in -height_bound..=height_bound {
            if (p == 0 && q == 0) || p.gcd(&q) != 1 {
                continue;
            }
            let (a, b, c) = (q * (q - p), p * (p - q), p * q);
            if let Ok(s) = SigmaBary::new(d, a, b, c, 0) {
                set.insert(s.canonical());
            }
        }
    }
    Ok(set)
}

/// All canonical coprime sphere pairs of the ring with `|β|² ≤ norm_bound`
/// and tangency point inside the window. Valid for every supported
/// discriminant, including the non-Euclidean ones.
pub fn gen_p_sigma(d: Discriminant, norm_bound: i64, window: &Window) -> Result<Vec<FordSphere>> {
    gen_spheres(d, norm_bound, window)
}

/// All canonical quadric solutions whose sphere has `|β|² ≤ beta_bound`
/// and tangency point inside the window, found by direct integer search
/// on the quadric (independent of any pair enumeration): for each
/// `|β|²`, the slots `wx, wy` of `conj(α)β` range over the disk allowed
/// by the window, and the `b`-slot is solved from the quadric.
pub fn eq11_enumerate(
    d: Discriminant,
    beta_bound: i64,
    window: &Window,
) -> Result<BTreeSet<SigmaBary>> {
    // Squared radius of the window's far corner bounds |α/β|².
    let corner_sq = window
        .corners(d)
        .iter()
        .map(|z| z.norm())
        .max()
        .unwrap_or_else(|| BigRational::from_integer(BigInt::from(1)));
    let mut set = BTreeSet::new();
    let dv = d.get() as i64;
    for nb in 1..=beta_bound {
        // |w|² = |α|²·|β|² ≤ corner_sq·nb²; the coordinate ranges widen
        // by the skew of the σ basis in class A, where the norm is
        // (wx + wy/2)² + (D/4)wy², so |wx| can reach 2|w|/√3.
        let w_cap_sq = &corner_sq * BigRational::from_integer(BigInt::from(nb * nb));
        let w_base: i64 = to_i64(&(w_cap_sq.to_integer().sqrt() + BigInt::from(1)), "search radius")?;
        let (wx_cap, wy_cap) = match d.class() {
            RingClass::A => (2 * w_base + 2, 2 * w_base / int_sqrt_i64(dv).max(1) + 2),
            RingClass::B => (w_base + 1, w_base / int_sqrt_i64(dv).max(1) + 2),
        };
        for wx in -wx_cap..=wx_cap {
            for wy in -wy_cap..=wy_cap {
                let (a, c, m) = match d.class() {
                    RingClass::A => (nb - wx, wx + wy, -wy),
                    RingClass::B => (nb - wx, wx, wy),
                };
                // Solve the quadric for b: grouping the b terms gives
                // b·(a+c+m) = k·m² − ac − am − cm in class A (and the
                // left factor is |β|²), or b·(a+c) = D·m² − ac in class B.
                let (num, den) = match d.class() {
                    RingClass::A => {
                        let k = i128::from((dv - 3) / 4);
                        (
                            k * i128::from(m) * i128::from(m)
                                - i128::from(a) * i128::from(c)
                                - i128::from(a) * i128::from(m)
                                - i128::from(c) * i128::from(m),
                            i128::from(nb),
                        )
                    }
                    RingClass::B => (
                        i128::from(dv) * i128::from(m) * i128::from(m)
                            - i128::from(a) * i128::from(c),
                        i128::from(nb),
                    ),
                };
                if num % den != 0 {
                    continue;
                }
                let Ok(b) = i64::try_from(num / den) else { continue };
                let Ok(q) = SigmaBary::new(d, a, b, c, m) else { continue };
                let q = q.canonical();
                let Ok(sphere) = mu_invert(&q) else { continue };
                if sphere.is_plane() {
                    continue;
                }
                if sphere.beta().norm() > BigInt::from(beta_bound) {
                    continue;
                }
                if !window.contains(&sphere.tangent().expect("ball has a tangent point")) {
                    continue;
                }
                set.insert(q);
            }
        }
    }
    Ok(set)
}

fn int_sqrt_i64(n: i64) -> i64 {
    debug_assert!(n >= 0);
    let r: i64 = (&BigInt::from(n).sqrt()).try_into().expect("fits");
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadint::qi_coprime;

    fn d(n: i64) -> Discriminant {
        Discriminant::new(n).unwrap()
    }

    fn sphere(dd: i64, ax: i64, ay: i64, bx: i64, by: i64) -> FordSphere {
        FordSphere::new(
            QuadInt::from_i64(d(dd), ax, ay),
            QuadInt::from_i64(d(dd), bx, by),
        )
        .unwrap()
    }

    fn rat(n: i64, dn: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(dn))
    }

    #[test]
    fn shadow_examples() {
        let q = mu_apply(&sphere(1, 0, 0, 1, 0)).unwrap();
        assert_eq!(q.quad(), [1, 0, 0, 0]);
        // D=3, pair (1,1): w = 1.
        let q = mu_apply(&sphere(3, 1, 0, 1, 0)).unwrap();
        assert_eq!(q.quad(), [0, 0, 1, 0]);
        assert!(eq11_verify(d(3), q.quad()));
        // D=7, pair (σ,1): lands on the quadric with m = 1.
        let q = mu_apply(&sphere(7, 0, 1, 1, 0)).unwrap();
        assert_eq!(q.quad(), [0, 1, 0, 1]);
        assert!(eq11_verify(d(7), q.quad()));
        // D=3 plane-shaped solution from the pole pair.
        let q = mu_apply(&sphere(3, 0, 1, 1, 0)).unwrap();
        assert_eq!(q.quad(), [0, 0, 0, 1]);
        assert_eq!(q.frame_sum_sign(), 0);
        // The plane itself.
        let q = mu_apply(&FordSphere::plane(d(11)).unwrap()).unwrap();
        assert_eq!(q.quad(), [0, 1, 0, 0]);
    }

    #[test]
    fn shadow_round_trip_all_rings() {
        for dd in [1i64, 2, 3, 7, 11, 19, 43, 67, 163] {
            let dr = d(dd);
            for bx in -2..=2i64 {
                for by in -2..=2i64 {
                    for ax in -2..=2i64 {
                        for ay in -2..=2i64 {
                            let (alpha, beta) =
                                (QuadInt::from_i64(dr, ax, ay), QuadInt::from_i64(dr, bx, by));
                            if (alpha.is_zero() && beta.is_zero())
                                || !qi_coprime(&alpha, &beta).unwrap()
                            {
                                continue;
                            }
                            let s = FordSphere::new(alpha, beta).unwrap();
                            let q = mu_apply(&s).unwrap();
                            assert!(eq11_verify(dr, q.quad()), "{s:?} -> {q}");
                            assert_eq!(mu_invert(&q).unwrap(), s, "{q}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn invert_rejects_negative_frame() {
        let q = SigmaBary::new(d(2), -1, 0, 0, 0).unwrap();
        assert!(q.frame_sum_sign() < 0);
        assert!(mu_invert(&q).is_err());
        assert_eq!(q.canonical().quad(), [1, 0, 0, 0]);
    }

    #[test]
    fn pairing_matches_determinant_norm() {
        for dd in [1i64, 2, 3, 7, 11, 19, 163] {
            let dr = d(dd);
            let pairs = [
                (0i64, 0i64, 1i64, 0i64),
                (1, 0, 1, 0),
                (0, 1, 1, 0),
                (1, 0, 0, 0),
                (1, 1, 2, 0),
                (2, -1, 1, 1),
            ];
            for &(ax, ay, bx, by) in &pairs {
                for &(cx, cy, dx, dy) in &pairs {
                    let (a, b) = (QuadInt::from_i64(dr, ax, ay), QuadInt::from_i64(dr, bx, by));
                    let (g, h) = (QuadInt::from_i64(dr, cx, cy), QuadInt::from_i64(dr, dx, dy));
                    if !qi_coprime(&a, &b).unwrap() || !qi_coprime(&g, &h).unwrap() {
                        continue;
                    }
                    let q1 = mu_apply(&FordSphere::new(a.clone(), b.clone()).unwrap()).unwrap();
                    let q2 = mu_apply(&FordSphere::new(g.clone(), h.clone()).unwrap()).unwrap();
                    let det = &(&a * &h) - &(&b * &g);
                    // The canonical pairs may be unit-scaled versions of
                    // the inputs; the pairing sees only the sphere.
                    let expect: i128 = (&det.norm()).try_into().unwrap();
                    let got = pair_norm_general(&q1, &q2).unwrap();
                    if expect == 0 {
                        assert_eq!(got, 0);
                    } else {
                        assert_eq!(got, expect, "D={dd} ({ax},{ay},{bx},{by})");
                    }
                }
            }
        }
        let q1 = mu_apply(&sphere(3, 0, 0, 1, 0)).unwrap();
        let q2 = mu_apply(&sphere(7, 0, 0, 1, 0)).unwrap();
        assert!(pair_norm_general(&q1, &q2).is_err());
    }

    #[test]
    fn eisenstein_pairing_agrees_with_q_form() {
        use crate::eisenstein::eis_to_bary;
        use crate::spheres::q_form;
        let pairs = [(0i64, 0, 1, 0), (1, 0, 1, 0), (0, 1, 1, 0), (1, 1, 1, 1), (2, 1, 1, -1)];
        for &(ax, ay, bx, by) in &pairs {
            for &(cx, cy, dx, dy) in &pairs {
                let dr = d(3);
                let (a, b) = (QuadInt::from_i64(dr, ax, ay), QuadInt::from_i64(dr, bx, by));
                let (g, h) = (QuadInt::from_i64(dr, cx, cy), QuadInt::from_i64(dr, dx, dy));
                if !qi_coprime(&a, &b).unwrap() || !qi_coprime(&g, &h).unwrap() {
                    continue;
                }
                let e1 = eis_to_bary(&a, &b).unwrap();
                let e2 = eis_to_bary(&g, &h).unwrap();
                let m1 = mu_apply(&FordSphere::new(a, b).unwrap()).unwrap();
                let m2 = mu_apply(&FordSphere::new(g, h).unwrap()).unwrap();
                assert_eq!(
                    q_form(&e1.0, &e2.0),
                    pair_norm_general(&m1, &m2).unwrap()
                );
            }
        }
    }

    #[test]
    fn secant_group_basics() {
        let dr = d(2);
        let one = Some(rat(1, 1));
        assert_eq!(secant_add(&one, &None, dr), one);
        assert_eq!(secant_add(&None, &None, dr), None);
        // 1 ⊕ 1 = (1−2)/2 = −1/2.
        assert_eq!(secant_add(&one, &one, dr), Some(rat(-1, 2)));
        // x ⊕ inv(x) = ∞.
        for dd in [1i64, 2, 3, 7, 11, 19, 43, 67, 163] {
            let dr = d(dd);
            for x in [Some(rat(3, 4)), Some(rat(-2, 5)), Some(rat(0, 1)), None] {
                let inv = secant_inverse(&x, dr);
                assert_eq!(secant_add(&x, &inv, dr), None, "D={dd}");
            }
            // Associativity on a few exact triples.
            let vals = [Some(rat(1, 2)), Some(rat(-3, 1)), Some(rat(5, 7)), None, Some(rat(2, 3))];
            for x in &vals {
                for y in &vals {
                    for z in &vals {
                        let left = secant_add(&secant_add(x, y, dr), z, dr);
                        let right = secant_add(x, &secant_add(y, z, dr), dr);
                        assert_eq!(left, right, "D={dd}");
                    }
                }
            }
        }
    }

    #[test]
    fn secant_pipeline_examples() {
        // D=1, x = y = −1: the (1,1,0,±m) solutions.
        let got = secant_candidates(&rat(-1, 1), &rat(-1, 1), d(1)).unwrap();
        let want1 = SigmaBary::new(d(1), 1, 1, 0, 1).unwrap();
        let want2 = SigmaBary::new(d(1), 1, 1, 0, -1).unwrap();
        assert!(got.contains(&want1.canonical()));
        assert!(got.contains(&want2.canonical()));
        // z = ∞ pairs produce nothing.
        assert!(secant_candidates(&rat(2, 1), &rat(-2, 1), d(2)).unwrap().is_empty());
    }

    #[test]
    fn secant_enumeration_is_sound() {
        for dd in [1i64, 3, 7] {
            let set = secant_enumerate(d(dd), 3).unwrap();
            assert!(!set.is_empty());
            for q in &set {
                assert!(eq11_verify(d(dd), q.quad()), "D={dd} {q}");
                assert_eq!(q.canonical(), *q);
            }
        }
        let set = secant_enumerate(d(1), 2).unwrap();
        assert!(set.contains(&SigmaBary::new(d(1), 1, 1, 0, 1).unwrap()));
        // The m = 0 chart: unit-sphere shadows at 0 and 1.
        assert!(set.contains(&SigmaBary::new(d(1), 1, 0, 0, 0).unwrap()));
        assert!(set.contains(&SigmaBary::new(d(1), 0, 0, 1, 0).unwrap()));
    }

    #[test]
    fn images_appear_in_secant_enumeration() {
        // Every shadow of a small sphere is reachable: m ≠ 0 shadows from
        // the witness pair x = −a/|m|, y = −b/|m|; m = 0 shadows are in
        // the supplementary family by construction.
        for dd in [2i64, 7] {
            let dr = d(dd);
            let spheres = gen_p_sigma(dr, 5, &Window::Cell).unwrap();
            for s in spheres {
                let q = mu_apply(&s).unwrap();
                if q.m == 0 {
                    let sym = i128::from(q.a) * i128::from(q.b)
                        + i128::from(q.a) * i128::from(q.c)
                        + i128::from(q.b) * i128::from(q.c);
                    assert_eq!(sym, 0, "m = 0 shadows satisfy the product identity");
                    continue;
                }
                let mm = q.m.unsigned_abs() as i64;
                let (x, y) = (rat(-q.a, mm), rat(-q.b, mm));
                let got = secant_candidates(&x, &y, dr).unwrap();
                assert!(got.contains(&q), "D={dd} {q} not reached from its witness");
            }
        }
    }

    #[test]
    fn quadric_search_matches_sphere_images() {
        for dd in [1i64, 3, 7, 19] {
            let dr = d(dd);
            let bound = 6;
            let from_spheres: BTreeSet<SigmaBary> = gen_p_sigma(dr, bound, &Window::Cell)
                .unwrap()
                .iter()
                .map(|s| mu_apply(s).unwrap())
                .collect();
            let from_quadric = eq11_enumerate(dr, bound, &Window::Cell).unwrap();
            assert_eq!(from_spheres, from_quadric, "D={dd}");
        }
    }

    #[test]
    fn unit_sphere_layer_in_class_a() {
        // Tangencies at the box's lattice points 0, 1, σ, −1+2σ, 2σ.
        let spheres = gen_p_sigma(d(19), 1, &Window::unit_box()).unwrap();
        assert_eq!(spheres.len(), 5);
        for s in &spheres {
            assert_eq!(s.curvature(), BigInt::from(2));
            assert!(s.alpha().is_unit() || s.alpha().is_zero() || s.beta().is_unit());
        }
        assert!(gen_p_sigma(d(19), 0, &Window::unit_box()).unwrap().is_empty());
    }

    #[test]
    fn frame_constant_values() {
        assert!((XiFrame::new(d(3)).xi_f64()).abs() < 1e-12);
        assert!((XiFrame::new(d(1)).xi_f64() - (1f64 / 3.0).sqrt()).abs() < 1e-12);
        let q = SigmaBary::new(d(3), 0, 0, 0, 1).unwrap();
        let coords = q.coords_f64();
        assert!(coords.iter().all(|v| v.abs() < 1e-12));
    }
}
