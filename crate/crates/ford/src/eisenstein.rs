//! The Eisenstein Ford spheres (`D = 3`) and their tetrahedral integer
//! coordinates. A sphere resting on the plane corresponds to a quadruple
//! `(a, b, c, d)` on the quadric `(a+b+c+d)² = a²+b²+c²+d²`: `(a, b, c)`
//! are twice-barycentric coordinates over the frame spheres at `0`, `1`,
//! `1+ω`, with `a+b+c = |β|²`, and `d` is the slot the reflection group
//! moves. A generalized slow Euclidean algorithm walks any quadruple down
//! to a basis vector, giving each sphere a rank, three parents, and a
//! recursive generation rule equivalent to sphere completion.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadint::{qi_coprime, Discriminant, QuadInt, QuadRat};
use crate::spheres::{
    bary_to_sphere, gen_spheres, q_form, FordSphere, NormalSphere, Window,
};

/// ω-coordinates of an Eisenstein integer: `x + yω` with `ω = σ - 1`.
pub fn omega_coords(q: &QuadInt) -> (BigInt, BigInt) {
    (&q.x + &q.y, q.y.clone())
}

/// The Eisenstein integer `x + yω` (converts to the σ-basis).
pub fn from_omega(d3: Discriminant, x: i64, y: i64) -> QuadInt {
    QuadInt::from_i64(d3, x - y, y)
}

/// An integer quadruple on `(a+b+c+d)² = a²+b²+c²+d²`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EisQuad(pub [i64; 4]);

impl EisQuad {
    pub fn new(q: [i64; 4]) -> Result<Self> {
        if q_form(&q, &q) != 0 {
            return Err(Error::OffQuadric(q));
        }
        Ok(EisQuad(q))
    }

    pub fn entries(&self) -> [i64; 4] {
        self.0
    }

    /// `a + b + c`, which is `|β|²` for sphere-encoding quadruples.
    pub fn sum3(&self) -> i64 {
        self.0[0] + self.0[1] + self.0[2]
    }

    pub fn sum4(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &v| g.gcd(&v))
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd() == 1
    }

    /// The sphere named by the quadruple (positive `a+b+c` required).
    pub fn to_sphere(&self) -> Result<NormalSphere> {
        bary_to_sphere(self.0[0], self.0[1], self.0[2])
    }

    /// The canonical coprime Eisenstein pair of the sphere.
    pub fn to_pair(&self) -> Result<(QuadInt, QuadInt)> {
        let s = self.to_sphere()?.to_ford()?;
        Ok((s.alpha().clone(), s.beta().clone()))
    }
}

impl fmt::Display for EisQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// The quadruple of the sphere `S_{α,β}`. In ω-coordinates `α = x + yω`,
/// `β = u + vω`:
///
/// ```text
/// a = u² + v² - uv + xv - xu - yv      c = yu - xv
/// b = xu - yu + yv                     d = x² + y² - xy + xv - xu - yv
/// ```
pub fn eis_to_bary(alpha: &QuadInt, beta: &QuadInt) -> Result<EisQuad> {
    if alpha.d.get() != 3 {
        return Err(Error::DiscriminantMismatch(alpha.d.get(), 3));
    }
    if !qi_coprime(alpha, beta)? {
        return Err(Error::NotCoprime);
    }
    let (x, y) = omega_coords(alpha);
    let (u, v) = omega_coords(beta);
    let big = |b: &BigInt| -> Result<i64> {
        b.try_into().map_err(|_| Error::Overflow("barycentric quadruple"))
    };
    let a = big(&(&u * &u + &v * &v - &u * &v + &x * &v - &x * &u - &y * &v))?;
    let b = big(&(&x * &u - &y * &u + &y * &v))?;
    let c = big(&(&y * &u - &x * &v))?;
    let d = big(&(&x * &x + &y * &y - &x * &y + &x * &v - &x * &u - &y * &v))?;
    let q = EisQuad::new([a, b, c, d])?;
    debug_assert!(q.is_primitive());
    debug_assert_eq!(BigInt::from(q.sum3()), beta.norm());
    Ok(q)
}

/// One reflection step: entry `k` (0-based) is negated and added to the
/// other three. This is the row action of [`reflection_matrix`] and an
/// involution.
pub fn apply_reflection(v: [i64; 4], k: usize) -> [i64; 4] {
    let mut w = v;
    for (j, slot) in w.iter_mut().enumerate() {
        if j == k {
            *slot = -v[k];
        } else {
            *slot += v[k];
        }
    }
    w
}

/// The generator `M_k` (1-based `k`) of the tetrahedral reflection group,
/// `(M_k)_{ij} = δ_ij + δ_ik - 3·δ_ik·δ_jk`. Quadruples transform as row
/// vectors, `q ↦ q·M_k`, which is exactly [`apply_reflection`].
pub fn reflection_matrix(k: usize) -> [[i64; 4]; 4] {
    assert!((1..=4).contains(&k), "k must be 1..=4");
    let mut m = [[0i64; 4]; 4];
    for i in 0..4 {
        for (j, cell) in m[i].iter_mut().enumerate() {
            let dij = i64::from(i == j);
            let dik = i64::from(i == k - 1);
            let djk = i64::from(j == k - 1);
            *cell = dij + dik - 3 * dik * djk;
        }
    }
    m
}

/// Matrix–row-vector product `v·M`.
pub fn row_apply(v: [i64; 4], m: &[[i64; 4]; 4]) -> [i64; 4] {
    let mut out = [0i64; 4];
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = (0..4).map(|i| v[i] * m[i][j]).sum();
    }
    out
}

/// Trace of the generalized slow Euclidean algorithm: the visited
/// quadruples and the 1-based slot codes of the steps taken.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GseaTrace {
    pub states: Vec<EisQuad>,
    pub step_codes: Vec<u8>,
}

impl GseaTrace {
    pub fn rank(&self) -> usize {
        self.step_codes.len()
    }

    pub fn terminal(&self) -> EisQuad {
        *self.states.last().expect("trace holds at least the start")
    }
}

/// Run the generalized slow Euclidean algorithm: while some entry is
/// negative, reflect at the minimal entry (ties broken by slot order
/// `a, b, c, d`). The total `a+b+c+d` strictly decreases by `|min|` each
/// step, and the terminal state is `gcd · (basis vector)`.
pub fn gsea(q: &EisQuad) -> Result<GseaTrace> {
    if q.sum4() <= 0 {
        return Err(Error::InvalidArgument(format!(
            "gsea needs a positive total, got {} with total {}",
            q, q.sum4()
        )));
    }
    let mut v = q.0;
    let mut states = vec![*q];
    let mut codes = Vec::new();
    loop {
        let (k, &min) = v.iter().enumerate().min_by_key(|&(i, &x)| (x, i)).unwrap();
        if min >= 0 {
            break;
        }
        v = apply_reflection(v, k);
        codes.push((k + 1) as u8);
        states.push(EisQuad(v));
    }
    let trace = GseaTrace { states, step_codes: codes };
    debug_assert!({
        let t = trace.terminal().0;
        t.iter().filter(|&&x| x != 0).count() == 1
            && t.iter().max() == Some(&q.gcd())
    });
    Ok(trace)
}

/// Number of gsea steps to reach a basis multiple.
pub fn quad_rank(q: &EisQuad) -> Result<usize> {
    Ok(gsea(q)?.rank())
}

/// The three parents of a positive-rank quadruple: replay the reversed
/// step word on the three basis vectors other than the terminal one
/// (basis order). Each parent has strictly smaller rank, and all pairs
/// among `{q, parents}` are tangent under the quadric pairing.
pub fn quad_parents(q: &EisQuad) -> Result<[EisQuad; 3]> {
    let trace = gsea(q)?;
    if trace.rank() == 0 {
        return Err(Error::RankZero);
    }
    let tslot = trace
        .terminal()
        .0
        .iter()
        .position(|&x| x != 0)
        .expect("terminal is a basis multiple");
    let mut parents = Vec::with_capacity(3);
    for j in 0..4 {
        if j == tslot {
            continue;
        }
        let mut v = [0i64; 4];
        v[j] = 1;
        for &code in trace.step_codes.iter().rev() {
            v = apply_reflection(v, code as usize - 1);
        }
        parents.push(EisQuad(v));
    }
    Ok([parents[0], parents[1], parents[2]])
}

/// Tetrahedral rule: four mutually tangent quadruples yield a fifth,
/// `a + b + c - d`, tangent to the first three (the reflection of `d`
/// through the face `a, b, c`).
pub fn tetra_rule(a: &EisQuad, b: &EisQuad, c: &EisQuad, d: &EisQuad) -> Result<EisQuad> {
    let quads = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if q_form(&quads[i].0, &quads[j].0) != 1 {
                return Err(Error::NotTangent);
            }
        }
    }
    let mut out = [0i64; 4];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = a.0[i] + b.0[i] + c.0[i] - d.0[i];
    }
    EisQuad::new(out)
}

/// All canonical coprime Eisenstein sphere pairs with `|β|² ≤ norm_bound`
/// and tangency point inside the window.
pub fn gen_p_omega(norm_bound: i64, window: &Window) -> Result<Vec<FordSphere>> {
    gen_spheres(Discriminant::new(3)?, norm_bound, window)
}

/// The closed fundamental triangle with the three frame tangency points
/// as vertices.
pub fn frame_triangle() -> Window {
    let d3 = Discriminant::new(3).expect("3 is a valid discriminant");
    Window::Triangle([
        QuadRat::zero(d3),
        QuadRat::one(d3),
        QuadRat::from_int(QuadInt::sigma(d3)),
    ])
}

/// Result of the recursive generation: the spheres produced, the
/// quadruples behind them, and how often the plane quadruple `(0,0,0,1)`
/// appeared as a face child (it never enters the sphere set).
#[derive(Clone, Debug)]
pub struct Generation {
    pub spheres: Vec<FordSphere>,
    pub quads: Vec<EisQuad>,
    pub plane_children: u64,
}

/// Close the three root spheres at `0`, `1`, `1+ω` under sphere
/// completion, `depth` rounds, implemented as a tetrahedron walk with the
/// tetrahedral rule. With `sum_cap` set the walk is restricted to the
/// fundamental triangle: children must have nonnegative barycentric
/// entries (spheres over the closed triangle) and `a+b+c` at most three
/// times the cap, the slack a flip path may need through the large
/// sibling of a face. Pass `None` for the unpruned closure. The walk
/// stops early once a round adds nothing.
pub fn gen_g_omega(depth: usize, sum_cap: Option<i64>) -> Result<Generation> {
    let root: [[i64; 4]; 4] =
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    let keep = |q: &[i64; 4]| -> bool {
        match sum_cap {
            Some(cap) => {
                q[0] >= 0 && q[1] >= 0 && q[2] >= 0 && q[0] + q[1] + q[2] <= 3 * cap + 1
            }
            None => true,
        }
    };
    let norm_tetra = |t: &[[i64; 4]; 4]| {
        let mut s = *t;
        s.sort();
        s
    };
    let mut seen_tetra: HashSet<[[i64; 4]; 4]> = HashSet::new();
    let mut quads: BTreeSet<EisQuad> = root.iter().map(|&q| EisQuad(q)).collect();
    let mut plane_children = 0u64;
    seen_tetra.insert(norm_tetra(&root));
    let mut frontier: VecDeque<[[i64; 4]; 4]> = VecDeque::from([root]);
    for _ in 0..depth {
        let mut next = VecDeque::new();
        while let Some(t) = frontier.pop_front() {
            for drop in 0..4 {
                let mut child = [0i64; 4];
                for i in 0..4 {
                    child[i] = t.iter().map(|row| row[i]).sum::<i64>() - 2 * t[drop][i];
                }
                if child == [0, 0, 0, 1] {
                    plane_children += 1;
                }
                if !keep(&child) {
                    continue;
                }
                let mut nt = t;
                nt[drop] = child;
                let key = norm_tetra(&nt);
                if seen_tetra.insert(key) {
                    quads.insert(EisQuad(child));
                    next.push_back(nt);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let mut spheres = BTreeSet::new();
    for q in &quads {
        if q.sum3() > 0 {
            spheres.insert(q.to_sphere()?.to_ford()?);
        }
    }
    Ok(Generation {
        spheres: spheres.into_iter().collect(),
        quads: quads.into_iter().collect(),
        plane_children,
    })
}

/// Whether `|a+b+c|` is an Eisenstein norm `m² + mn + n²`, by bounded
/// search. The quadric guarantees this for every sphere quadruple.
pub fn cor46_check(q: &EisQuad) -> bool {
    let n = q.sum3().abs();
    is_eisenstein_norm(n)
}

pub(crate) fn is_eisenstein_norm(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let lim = int_sqrt(n) + 1;
    for m in -lim..=lim {
        for k in -lim..=lim {
            if m * m + m * k + k * k == n {
                return true;
            }
        }
    }
    false
}

pub(crate) fn int_sqrt(n: i64) -> i64 {
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

/// An exact real quadratic surd `(p + q√n)/r` with `n ≥ 1` squarefree,
/// `r ≥ 1`, `gcd(p, q, r) = 1`, and `q = 0` whenever `n = 1`. Equality of
/// values is structural equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Surd {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    n: BigInt,
}

impl Surd {
    pub fn new(p: i64, q: i64, n: i64, r: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::DivisionByZero);
        }
        if n < 0 {
            return Err(Error::InvalidArgument(format!("negative radicand {n}")));
        }
        Ok(Self::build(BigInt::from(p), BigInt::from(q), BigInt::from(n), BigInt::from(r)))
    }

    pub fn from_rational(x: &BigRational) -> Self {
        Self::build(x.numer().clone(), BigInt::zero(), BigInt::one(), x.denom().clone())
    }

    /// `√n` for a nonnegative integer.
    pub fn sqrt_int(n: i64) -> Result<Self> {
        Surd::new(0, 1, n, 1)
    }

    fn build(p: BigInt, q: BigInt, n: BigInt, r: BigInt) -> Self {
        // Pull the square part of n into q, absorb √1, fix signs, reduce.
        let (mut p, mut q, mut r) = (p, q, r);
        let n = if q.is_zero() {
            BigInt::one()
        } else {
            let (k, m) = crate::spheres::square_split(&n);
            q *= k;
            m
        };
        if n.is_one() {
            p += std::mem::take(&mut q);
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_zero() && !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        Surd { p, q, r, n }
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Sign of the value: -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        sign_of(&self.p, &self.q, &self.n)
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.p == self.r
    }

    /// Compare against 1: sign of `(p - r) + q√n`.
    fn cmp_one(&self) -> i32 {
        sign_of(&(&self.p - &self.r), &self.q, &self.n)
    }

    fn sub_one(&self) -> Surd {
        Self::build(&self.p - &self.r, self.q.clone(), self.n.clone(), self.r.clone())
    }

    /// `x / (1 - x)` via conjugate rationalization within `Q(√n)`.
    fn over_one_minus(&self) -> Surd {
        // x/(1-x) = (p+q√n) / ((r-p) - q√n); the r's cancel. Multiplying
        // by the conjugate (r-p) + q√n clears the root from the bottom.
        let s = &self.r - &self.p;
        let den = &s * &s - &self.q * &self.q * &self.n;
        let p = &self.p * &s + &self.q * &self.q * &self.n;
        let q = &self.q * &self.r;
        Self::build(p, q, self.n.clone(), den)
    }

    pub fn to_f64(&self) -> f64 {
        let f = |b: &BigInt| b.to_string().parse::<f64>().unwrap_or(f64::NAN);
        (f(&self.p) + f(&self.q) * f(&self.n).sqrt()) / f(&self.r)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            if self.r.is_one() {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.r)
            }
        } else {
            write!(f, "({}+{}√{})/{}", self.p, self.q, self.n, self.r)
        }
    }
}

/// Sign of `a + b√n` for nonnegative `n`.
fn sign_of(a: &BigInt, b: &BigInt, n: &BigInt) -> i32 {
    let sa = a.sign();
    let sb = b.sign();
    use num::bigint::Sign::*;
    match (sa, sb) {
        (NoSign, NoSign) => 0,
        (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => 1,
        (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => -1,
        (Plus, Minus) | (Minus, Plus) => {
            // |a|² vs |b|²·n decides which term wins.
            let lhs = a * a;
            let rhs = b * b * n;
            let big = match lhs.cmp(&rhs) {
                std::cmp::Ordering::Greater => sa,
                std::cmp::Ordering::Less => sb,
                std::cmp::Ordering::Equal => return 0,
            };
            if big == Plus {
                1
            } else {
                -1
            }
        }
    }
}

/// How an `f`-map orbit ended.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrbitVerdict {
    /// A state repeated: `orbit[start..]` cycles with the given length.
    Periodic { start: usize, len: usize },
    /// The orbit reached exactly 1, where the map is undefined; this is
    /// the rational exit.
    Terminates,
    /// Step budget exhausted without repetition.
    Cap,
}

/// Iterate `f(x) = x - 1` for `x > 1`, `x/(1-x)` for `0 < x < 1`, in
/// exact surd arithmetic, until a state repeats, the orbit hits 1, or the
/// step cap is reached. Orbits repeat exactly for quadratic surds; this
/// is the double-step shadow of the gsea on `(1, x, x², -x)`.
pub fn f_map_orbit(x: &Surd, max_steps: usize) -> Result<(Vec<Surd>, OrbitVerdict)> {
    if x.signum() <= 0 {
        return Err(Error::InvalidArgument(format!("f-map needs x > 0, got {x}")));
    }
    let mut orbit = vec![x.clone()];
    let mut seen: std::collections::HashMap<Surd, usize> = std::collections::HashMap::new();
    seen.insert(x.clone(), 0);
    let mut cur = x.clone();
    for _ in 0..max_steps {
        if cur.is_one() {
            return Ok((orbit, OrbitVerdict::Terminates));
        }
        let next = match cur.cmp_one() {
            1 => cur.sub_one(),
            -1 => cur.over_one_minus(),
            _ => return Ok((orbit, OrbitVerdict::Terminates)),
        };
        debug_assert!(next.signum() > 0, "f preserves positivity");
        if let Some(&start) = seen.get(&next) {
            let len = orbit.len() - start;
            orbit.push(next);
            return Ok((orbit, OrbitVerdict::Periodic { start, len }));
        }
        seen.insert(next.clone(), orbit.len());
        orbit.push(next.clone());
        cur = next;
    }
    Ok((orbit, OrbitVerdict::Cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3() -> Discriminant {
        Discriminant::new(3).unwrap()
    }

    fn quad(a: i64, b: i64, c: i64, d: i64) -> EisQuad {
        EisQuad::new([a, b, c, d]).unwrap()
    }

    #[test]
    fn quadric_gatekeeping() {
        assert!(EisQuad::new([1, 1, 1, 1]).is_err());
        assert!(EisQuad::new([12, 12, 3, -8]).is_ok());
        assert_eq!(quad(12, 12, 3, -8).sum3(), 27);
        assert!(quad(2, 2, 0, -1).is_primitive());
        assert_eq!(EisQuad::new([2, 0, 0, 0]).unwrap().gcd(), 2);
    }

    #[test]
    fn pair_to_quadruple_basis_cases() {
        let alpha = |x: i64, y: i64| from_omega(d3(), x, y);
        assert_eq!(
            eis_to_bary(&alpha(0, 0), &alpha(1, 0)).unwrap(),
            quad(1, 0, 0, 0)
        );
        assert_eq!(
            eis_to_bary(&alpha(1, 0), &alpha(1, 0)).unwrap(),
            quad(0, 1, 0, 0)
        );
        assert_eq!(
            eis_to_bary(&alpha(1, 1), &alpha(1, 0)).unwrap(),
            quad(0, 0, 1, 0)
        );
        // Non-coprime pairs are refused.
        assert!(eis_to_bary(&alpha(2, 0), &alpha(2, 2)).is_err());
    }

    #[test]
    fn quadruple_round_trip_matches_sphere() {
        // Coprime pairs with |β|² ≤ 30: quadruple encodes the same sphere.
        let window = frame_triangle();
        for s in gen_p_omega(30, &window).unwrap() {
            let q = eis_to_bary(s.alpha(), s.beta()).unwrap();
            assert_eq!(BigInt::from(q.sum3()), s.beta().norm());
            let back = q.to_sphere().unwrap().to_ford().unwrap();
            assert_eq!(back, s, "quadruple {q}");
            let (a, b) = q.to_pair().unwrap();
            assert_eq!(eis_to_bary(&a, &b).unwrap(), q);
        }
    }

    #[test]
    fn gsea_golden_trace() {
        let t = gsea(&quad(12, 12, 3, -8)).unwrap();
        assert_eq!(t.step_codes, vec![4, 3, 1, 2, 1, 4]);
        assert_eq!(t.rank(), 6);
        assert_eq!(t.terminal(), quad(0, 0, 0, 1));
        // First intermediate state as printed in the worked example.
        assert_eq!(t.states[1], quad(4, 4, -5, 8));
        // Replaying the reversed word from the terminal recovers the start.
        let mut v = t.terminal().0;
        for &c in t.step_codes.iter().rev() {
            v = apply_reflection(v, c as usize - 1);
        }
        assert_eq!(v, [12, 12, 3, -8]);
        // Base cases.
        assert_eq!(gsea(&quad(1, 0, 0, 0)).unwrap().rank(), 0);
        let one = gsea(&quad(1, 1, 1, -1)).unwrap();
        assert_eq!(one.step_codes, vec![4]);
        assert_eq!(one.terminal(), quad(0, 0, 0, 1));
        // Total decreases strictly; gcd is preserved.
        for w in t.states.windows(2) {
            assert!(w[1].sum4() < w[0].sum4());
            assert_eq!(w[1].gcd(), w[0].gcd());
        }
        // Non-primitive input terminates at gcd·basis.
        let double = gsea(&EisQuad::new([2, 2, 2, -2]).unwrap()).unwrap();
        assert_eq!(double.terminal().0, [0, 0, 0, 2]);
    }

    #[test]
    fn golden_parents() {
        let q = quad(12, 12, 3, -8);
        let parents = quad_parents(&q).unwrap();
        let got: BTreeSet<EisQuad> = parents.iter().copied().collect();
        let want: BTreeSet<EisQuad> =
            [quad(2, 2, 0, -1), quad(5, 6, 2, -4), quad(6, 5, 2, -4)].into_iter().collect();
        assert_eq!(got, want);
        let r = quad_rank(&q).unwrap();
        for p in &parents {
            assert!(quad_rank(p).unwrap() < r);
            assert_eq!(q_form(&p.0, &q.0), 1);
        }
        for i in 0..3 {
            for j in i + 1..3 {
                assert_eq!(q_form(&parents[i].0, &parents[j].0), 1);
            }
        }
        // Rank-1 quadruples descend to the basis vectors.
        assert_eq!(
            quad_parents(&quad(1, 1, 1, -1)).unwrap(),
            [quad(1, 0, 0, 0), quad(0, 1, 0, 0), quad(0, 0, 1, 0)]
        );
        assert_eq!(quad_parents(&quad(1, 0, 0, 0)).unwrap_err(), Error::RankZero);
    }

    #[test]
    fn tetra_rule_and_reflections() {
        let e = [quad(1, 0, 0, 0), quad(0, 1, 0, 0), quad(0, 0, 1, 0), quad(0, 0, 0, 1)];
        let child = tetra_rule(&e[0], &e[1], &e[2], &e[3]).unwrap();
        assert_eq!(child, quad(1, 1, 1, -1));
        assert_eq!(tetra_rule(&e[0], &e[1], &e[3], &e[2]).unwrap(), quad(1, 1, -1, 1));
        // The rule is an involution in the dropped slot.
        assert_eq!(tetra_rule(&e[0], &e[1], &e[2], &child).unwrap(), e[3]);
        // Non-tangent inputs are rejected.
        assert_eq!(
            tetra_rule(&e[0], &e[1], &e[2], &quad(12, 12, 3, -8)).unwrap_err(),
            Error::NotTangent
        );
        // The matrix generators agree with the step function and square to I.
        for k in 1..=4 {
            let m = reflection_matrix(k);
            let v = [12, 12, 3, -8];
            assert_eq!(row_apply(v, &m), apply_reflection(v, k - 1));
            let mm = {
                let mut out = [[0i64; 4]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        out[i][j] = (0..4).map(|l| m[i][l] * m[l][j]).sum();
                    }
                }
                out
            };
            let mut id = [[0i64; 4]; 4];
            for (i, row) in id.iter_mut().enumerate() {
                row[i] = 1;
            }
            assert_eq!(mm, id);
            // The quadric is preserved.
            let w = row_apply(v, &m);
            assert_eq!(q_form(&w, &w), 0);
        }
        assert_eq!(row_apply([1, 1, 1, -1], &reflection_matrix(4)), [0, 0, 0, 1]);
    }

    #[test]
    fn generation_small_depths() {
        let d = d3();
        let g0 = gen_g_omega(0, None).unwrap();
        let roots: Vec<FordSphere> = [
            FordSphere::new(QuadInt::from_i64(d, 0, 0), QuadInt::one(d)).unwrap(),
            FordSphere::new(QuadInt::one(d), QuadInt::one(d)).unwrap(),
            FordSphere::new(QuadInt::sigma(d), QuadInt::one(d)).unwrap(),
        ]
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
        assert_eq!(g0.spheres, roots);
        let g1 = gen_g_omega(1, None).unwrap();
        let child = FordSphere::new(QuadInt::one(d), QuadInt::from_i64(d, 2, -1)).unwrap();
        assert!(g1.spheres.contains(&child), "depth 1 adds S_{{1,1-ω}}");
        assert!(!g1.spheres.iter().any(|s| s.is_plane()));
        // Depth-k quadruples have rank ≤ k.
        for depth in 0..4 {
            let g = gen_g_omega(depth, None).unwrap();
            for q in &g.quads {
                assert!(quad_rank(q).unwrap() <= depth, "{q} at depth {depth}");
            }
        }
    }

    #[test]
    fn eisenstein_norm_representability() {
        assert!(cor46_check(&quad(12, 12, 3, -8))); // 27 = 3² + 3·3 + 3²
        assert!(cor46_check(&quad(1, 0, 0, 0)));
        assert!(is_eisenstein_norm(0));
        assert!(is_eisenstein_norm(49));
        assert!(!is_eisenstein_norm(2));
        assert!(!is_eisenstein_norm(5));
    }

    #[test]
    fn surd_arithmetic_and_signs() {
        let root2 = Surd::sqrt_int(2).unwrap();
        assert_eq!(root2.signum(), 1);
        assert_eq!(root2.cmp_one(), 1);
        let x = Surd::new(-3, 2, 2, 1).unwrap(); // 2√2 - 3 < 0
        assert_eq!(x.signum(), -1);
        let y = Surd::new(3, -2, 2, 1).unwrap(); // 3 - 2√2 > 0, < 1
        assert_eq!(y.signum(), 1);
        assert_eq!(y.cmp_one(), -1);
        // √8 normalizes to 2√2; √9 collapses to the rational 3.
        assert_eq!(Surd::sqrt_int(8).unwrap(), Surd::new(0, 2, 2, 1).unwrap());
        assert_eq!(Surd::sqrt_int(9).unwrap(), Surd::new(3, 0, 1, 1).unwrap());
        assert!(Surd::new(1, 0, 1, 1).unwrap().is_one());
        assert_eq!(Surd::new(2, 2, 4, 6).unwrap(), Surd::new(1, 0, 1, 1).unwrap());
    }

    #[test]
    fn f_orbit_of_root_two_is_periodic() {
        let (orbit, verdict) = f_map_orbit(&Surd::sqrt_int(2).unwrap(), 100).unwrap();
        match verdict {
            OrbitVerdict::Periodic { start, len } => {
                // √2 → √2-1 → √2/2 → √2+1 → √2 again.
                assert_eq!((start, len), (0, 4));
                assert_eq!(orbit[1], Surd::new(-1, 1, 2, 1).unwrap());
                assert_eq!(orbit[2], Surd::new(0, 1, 2, 2).unwrap());
                assert_eq!(orbit[3], Surd::new(1, 1, 2, 1).unwrap());
                assert_eq!(orbit[4], orbit[0]);
            }
            other => panic!("expected periodicity, got {other:?}"),
        }
        // Golden ratio: period two.
        let phi = Surd::new(1, 1, 5, 2).unwrap();
        let (_, verdict) = f_map_orbit(&phi, 100).unwrap();
        assert!(matches!(verdict, OrbitVerdict::Periodic { len: 2, .. }));
    }

    #[test]
    fn f_orbit_of_rationals_terminates() {
        // 3/2 → 1/2 → 1: undefined, exits.
        let x = Surd::new(3, 0, 1, 2).unwrap();
        let (orbit, verdict) = f_map_orbit(&x, 100).unwrap();
        assert_eq!(verdict, OrbitVerdict::Terminates);
        assert_eq!(*orbit.last().unwrap(), Surd::new(1, 0, 1, 1).unwrap());
        // Nonpositive starts are rejected; a tiny cap reports Cap.
        assert!(f_map_orbit(&Surd::new(-1, 0, 1, 1).unwrap(), 10).is_err());
        let (_, verdict) = f_map_orbit(&Surd::sqrt_int(2).unwrap(), 2).unwrap();
        assert_eq!(verdict, OrbitVerdict::Cap);
    }
}
