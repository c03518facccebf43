//! Serializable sphere records and the JSON document layout.
//!
//! A record carries the ring pair in `σ`-coordinates plus the derived
//! tangency data, so a reader can rebuild the exact sphere without touching
//! floating point. Circles are stored in the same shape with `D = 0`: the
//! pair is `(a, b)` on the real line and `baryCoords` holds the triple
//! `(s, t, u)` instead of a quadruple.

use anyhow::{Context, Result};
use ford::circles::{circle_to_bary, FordCircle};
use ford::general::mu_apply;
use ford::spheres::FordSphere;
use num::BigInt;
use serde::{Deserialize, Serialize};

/// One sphere (or circle), exact and self-contained.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SphereRecord {
    #[serde(rename = "D")]
    pub d: i64,
    /// `α` as `(x, y)` in `x + yσ`; for circles, `(a, 0)`.
    #[serde(rename = "alphaCoords")]
    pub alpha_coords: [i64; 2],
    /// `β` likewise; for circles, `(b, 0)`.
    #[serde(rename = "betaCoords")]
    pub beta_coords: [i64; 2],
    /// Numerator of the reduced tangency point `α/β`; `[0, 0]` for the plane.
    #[serde(rename = "tangentNumCoords")]
    pub tangent_num_coords: [i64; 2],
    /// Denominator of the reduced tangency point; `0` for the plane.
    #[serde(rename = "tangentDen")]
    pub tangent_den: i64,
    /// `2|β|²` (so `0` for the plane, `2b²` for a circle over `a/b`).
    pub curvature: i64,
    /// Barycentric coordinates when the ring has them: the quadric
    /// quadruple `(a, b, c, m)`, or the triple `(s, t, u)` for circles.
    #[serde(rename = "baryCoords", skip_serializing_if = "Option::is_none")]
    pub bary_coords: Option<Vec<i64>>,
}

/// Top-level JSON document: the ring, the family label, and the records.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Document {
    #[serde(rename = "D")]
    pub d: i64,
    pub family: String,
    pub spheres: Vec<SphereRecord>,
}

fn small(n: &BigInt, what: &str) -> Result<i64> {
    i64::try_from(n).with_context(|| format!("{what} {n} does not fit in 64 bits"))
}

/// Build a record from an exact sphere, attaching barycentric coordinates
/// when the discriminant supports them (`D ≡ 3 mod 4` and `D ∈ {1, 2}` all
/// do; the quadruple is the `μ`-image).
pub fn sphere_record(s: &FordSphere, with_bary: bool) -> Result<SphereRecord> {
    let d = s.d().get() as i64;
    let alpha = [small(&s.alpha().x, "coordinate")?, small(&s.alpha().y, "coordinate")?];
    let beta = [small(&s.beta().x, "coordinate")?, small(&s.beta().y, "coordinate")?];
    let (tangent_num, tangent_den) = match s.tangent() {
        Some(t) => (
            [small(&t.num().x, "coordinate")?, small(&t.num().y, "coordinate")?],
            small(t.den(), "denominator")?,
        ),
        None => ([0, 0], 0),
    };
    let bary = if with_bary {
        let q = mu_apply(s)?.quad();
        Some(q.to_vec())
    } else {
        None
    };
    Ok(SphereRecord {
        d,
        alpha_coords: alpha,
        beta_coords: beta,
        tangent_num_coords: tangent_num,
        tangent_den,
        curvature: small(&s.curvature(), "curvature")?,
        bary_coords: bary,
    })
}

/// Build a record from a Ford circle (`D = 0` marks the rational line).
pub fn circle_record(c: &FordCircle) -> SphereRecord {
    let t = circle_to_bary(c);
    SphereRecord {
        d: 0,
        alpha_coords: [c.numer(), 0],
        beta_coords: [c.denom(), 0],
        tangent_num_coords: [c.numer(), 0],
        tangent_den: c.denom(),
        curvature: c.curvature(),
        bary_coords: Some(vec![t.s, t.t, t.u]),
    }
}

/// Deterministic order: by reduced tangency point, then curvature, with the
/// plane (`tangentDen = 0`) sorting first.
pub fn sort_records(records: &mut [SphereRecord]) {
    records.sort_by_key(|r| {
        (r.tangent_den != 0, r.tangent_num_coords, r.tangent_den, r.curvature)
    });
}

/// Serialize the document with a trailing newline; the output is a pure
/// function of the records, so identical inputs give identical bytes.
pub fn render_json(doc: &Document) -> Result<String> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    Ok(text)
}
