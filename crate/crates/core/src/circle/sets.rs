//! Points, open arcs, finite arc unions and closed subsets of the unit circle.
//!
//! A closed set `E` is stored through the open arcs of its complement. The
//! endpoints of those arcs belong to `E`; an isolated point of `E` is the
//! shared endpoint of two neighbouring arcs. An arc whose start and end
//! coincide is the circle punctured at that point, which is how `E = {ξ}` is
//! represented.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point `e^{iθ}` of the unit circle with `θ` canonicalised to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CirclePoint {
    theta: f64,
}

impl CirclePoint {
    pub fn new(theta: f64) -> Self {
        let mut t = theta.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π for tiny negative inputs
        if t >= TAU {
            t = 0.0;
        }
        CirclePoint { theta: t }
    }

    /// The point nearest to `z / |z|`.
    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.im.atan2(z.re))
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn to_complex(self) -> Complex64 {
        unit(self.theta)
    }

    /// Euclidean chord length `|ξ − ζ| = 2 sin(Δθ/2)`.
    pub fn chord(self, other: CirclePoint) -> f64 {
        chord_of_angle(self.angular_gap(other))
    }

    /// Shortest angular separation in `[0, π]`.
    pub fn angular_gap(self, other: CirclePoint) -> f64 {
        let d = (self.theta - other.theta).rem_euclid(TAU);
        d.min(TAU - d)
    }

    /// Counterclockwise angle from `self` to `other`, in `[0, 2π)`.
    pub fn ccw_to(self, other: CirclePoint) -> f64 {
        let d = (other.theta - self.theta).rem_euclid(TAU);
        if d >= TAU {
            0.0
        } else {
            d
        }
    }

    pub fn rotate(self, angle: f64) -> Self {
        Self::new(self.theta + angle)
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(i{:.6})", self.theta)
    }
}

/// `e^{iθ}` with exact values on the four axis directions.
pub fn unit(theta: f64) -> Complex64 {
    let t = theta.rem_euclid(TAU);
    let quarter = t / (PI / 2.0);
    if quarter.fract() == 0.0 {
        return match quarter as u32 % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::new(t.cos(), t.sin())
}

/// Chord length subtended by an angle in `[0, 2π]`.
pub fn chord_of_angle(angle: f64) -> f64 {
    2.0 * (angle / 2.0).sin().abs()
}

/// The open arc traversed counterclockwise from `start` for `length` radians.
///
/// `length` lies in `(0, 2π]`; the value `2π` is the circle punctured at `start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    start: CirclePoint,
    length: f64,
}

impl Arc {
    /// Open arc from `a` to `b` counterclockwise. `a == b` gives `T \ {a}`.
    pub fn new(a: CirclePoint, b: CirclePoint) -> Self {
        let len = a.ccw_to(b);
        Arc {
            start: a,
            length: if len == 0.0 { TAU } else { len },
        }
    }

    pub fn from_start_length(start: CirclePoint, length: f64) -> Result<Self> {
        if !(length > 0.0 && length <= TAU) || !length.is_finite() {
            return Err(Error::InvalidArc(format!("length {length} not in (0, 2π]")));
        }
        Ok(Arc { start, length })
    }

    pub fn start(&self) -> CirclePoint {
        self.start
    }

    pub fn end(&self) -> CirclePoint {
        self.start.rotate(self.length)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Strict membership in the open arc.
    pub fn contains(&self, p: CirclePoint) -> bool {
        let s = self.start.ccw_to(p);
        s > 0.0 && s < self.length
    }

    /// Chord distance from an interior point to the nearer endpoint.
    fn distance_to_endpoints(&self, p: CirclePoint) -> f64 {
        let s = self.start.ccw_to(p);
        chord_of_angle(s.min(self.length - s))
    }

    /// Arcs that merely abut, up to rounding in their endpoints, do not overlap.
    fn overlaps(&self, other: &Arc) -> bool {
        const SLACK: f64 = 1e-12;
        let inside = |a: &Arc, p: CirclePoint| {
            let d = a.start.ccw_to(p);
            d < a.length - SLACK && d > 0.0 && TAU - d > SLACK
        };
        self.start == other.start || inside(self, other.start) || inside(other, self.start)
    }

    /// Length of the intersection with the closed interval `[lo, lo + width]`
    /// (angles, `width < 2π`).
    pub(crate) fn overlap_with_interval(&self, lo: f64, width: f64) -> f64 {
        let s0 = self.start.theta;
        let s1 = s0 + self.length;
        let mut total = 0.0;
        // The interval may wrap; test it at three 2π shifts against [s0, s1].
        for shift in [-TAU, 0.0, TAU] {
            let a = lo + shift;
            let b = a + width;
            let o = b.min(s1) - a.max(s0);
            if o > 0.0 {
                total += o;
            }
        }
        total.min(width)
    }
}

/// A finite union of pairwise-disjoint open arcs, sorted by start angle.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ArcUnion {
    arcs: Vec<Arc>,
}

impl ArcUnion {
    pub fn empty() -> Self {
        ArcUnion { arcs: Vec::new() }
    }

    pub fn new(mut arcs: Vec<Arc>) -> Result<Self> {
        arcs.sort_by(|a, b| a.start.theta.total_cmp(&b.start.theta));
        for i in 0..arcs.len() {
            for j in (i + 1)..arcs.len() {
                if arcs[i].overlaps(&arcs[j]) {
                    return Err(Error::InvalidArc(format!(
                        "arcs starting at {} and {} overlap",
                        arcs[i].start, arcs[j].start
                    )));
                }
            }
        }
        let total: f64 = arcs.iter().map(|a| a.length).sum();
        if total > TAU * (1.0 + 1e-12) {
            return Err(Error::InvalidArc(format!("total length {total} exceeds 2π")));
        }
        Ok(ArcUnion { arcs })
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.arcs.iter().map(|a| a.length).sum()
    }

    pub fn contains(&self, p: CirclePoint) -> bool {
        self.arcs.iter().any(|a| a.contains(p))
    }

    /// The arc containing `p`, if any.
    pub fn arc_containing(&self, p: CirclePoint) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.contains(p))
    }

    /// Fraction of each grid cell `[θ_k − π/n, θ_k + π/n]` covered by the union.
    ///
    /// This is the quadrature discretisation of the indicator function; a
    /// single excluded point has measure zero and does not lower any weight.
    pub fn cell_weights(&self, n: usize) -> Vec<f64> {
        let h = TAU / n as f64;
        (0..n)
            .map(|k| {
                let lo = k as f64 * h - h / 2.0;
                let covered: f64 = self
                    .arcs
                    .iter()
                    .map(|a| a.overlap_with_interval(lo, h))
                    .sum();
                let w = covered / h;
                // snap round-off so that fully covered cells weigh exactly 1
                if (w - 1.0).abs() < 1e-9 {
                    1.0
                } else if w < 1e-9 {
                    0.0
                } else {
                    w.min(1.0)
                }
            })
            .collect()
    }
}

/// A closed subset `E` of the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedBoundarySet {
    repr: SetRepr,
}

#[derive(Debug, Clone, PartialEq)]
enum SetRepr {
    Empty,
    Complement(ArcUnion),
}

impl ClosedBoundarySet {
    /// `E = T \ (union of the given open arcs)`.
    pub fn from_complement(complement: ArcUnion) -> Self {
        ClosedBoundarySet {
            repr: SetRepr::Complement(complement),
        }
    }

    pub fn empty() -> Self {
        ClosedBoundarySet {
            repr: SetRepr::Empty,
        }
    }

    /// `E = T`.
    pub fn full() -> Self {
        Self::from_complement(ArcUnion::empty())
    }

    /// A finite set of points.
    pub fn from_points(points: &[CirclePoint]) -> Result<Self> {
        if points.is_empty() {
            return Ok(Self::empty());
        }
        let mut pts: Vec<CirclePoint> = points.to_vec();
        pts.sort_by(|a, b| a.theta.total_cmp(&b.theta));
        pts.dedup();
        let arcs = (0..pts.len())
            .map(|i| Arc::new(pts[i], pts[(i + 1) % pts.len()]))
            .collect();
        Ok(Self::from_complement(ArcUnion::new(arcs)?))
    }

    pub fn from_angles(angles: &[f64]) -> Result<Self> {
        let pts: Vec<CirclePoint> = angles.iter().map(|&t| CirclePoint::new(t)).collect();
        Self::from_points(&pts)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.repr, SetRepr::Empty)
    }

    pub fn is_full(&self) -> bool {
        matches!(&self.repr, SetRepr::Complement(c) if c.is_empty())
    }

    /// The complementary arcs; `None` for the empty set.
    pub fn complement(&self) -> Option<&ArcUnion> {
        match &self.repr {
            SetRepr::Empty => None,
            SetRepr::Complement(c) => Some(c),
        }
    }

    pub fn complementary_arcs(&self) -> &[Arc] {
        self.complement().map(|c| c.arcs()).unwrap_or(&[])
    }

    pub fn contains(&self, p: CirclePoint) -> bool {
        match &self.repr {
            SetRepr::Empty => false,
            SetRepr::Complement(c) => !c.contains(p),
        }
    }

    /// Lebesgue measure of `E` (in radians).
    pub fn measure(&self) -> f64 {
        match &self.repr {
            SetRepr::Empty => 0.0,
            SetRepr::Complement(c) => (TAU - c.total_length()).max(0.0),
        }
    }

    /// Endpoints of the complementary arcs (all of which lie in `E`).
    pub fn boundary_points(&self) -> Vec<CirclePoint> {
        let mut pts: Vec<CirclePoint> = self
            .complementary_arcs()
            .iter()
            .flat_map(|a| [a.start(), a.end()])
            .collect();
        pts.sort_by(|a, b| a.theta.total_cmp(&b.theta));
        pts.dedup_by(|a, b| a.chord(*b) < 1e-15);
        pts
    }

    /// `d(ξ, E) = min_{e ∈ E} |ξ − e|`.
    pub fn chordal_distance(&self, xi: CirclePoint) -> Result<f64> {
        match &self.repr {
            SetRepr::Empty => Err(Error::EmptySet),
            SetRepr::Complement(c) => Ok(match c.arc_containing(xi) {
                None => 0.0,
                Some(arc) => arc.distance_to_endpoints(xi),
            }),
        }
    }

    /// `E ∪ F`.
    pub fn union(&self, other: &ClosedBoundarySet) -> Result<ClosedBoundarySet> {
        let (a, b) = match (self.complement(), other.complement()) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(a), Some(b)) => (a, b),
        };
        // complement of the union is the intersection of complements
        let mut arcs = Vec::new();
        for x in a.arcs() {
            for y in b.arcs() {
                arcs.extend(intersect_arcs(x, y));
            }
        }
        Ok(Self::from_complement(ArcUnion::new(arcs)?))
    }
}

/// Intersection of two open arcs, as zero, one or two open arcs.
fn intersect_arcs(x: &Arc, y: &Arc) -> Vec<Arc> {
    // Parametrise by counterclockwise offset from x.start.
    let ys = x.start.ccw_to(y.start);
    let mut out = Vec::new();
    let mut push = |lo: f64, hi: f64| {
        let hi = hi.min(x.length);
        let lo = lo.max(0.0);
        if hi - lo > 1e-15 {
            out.push(Arc {
                start: x.start.rotate(lo),
                length: hi - lo,
            });
        }
    };
    if x.length >= TAU && y.length >= TAU {
        if x.start == y.start {
            out.push(*x);
        } else {
            // punctured at two different points
            push(0.0, ys);
            push(ys, TAU);
        }
        return out;
    }
    push(ys, ys + y.length);
    push(ys - TAU, ys + y.length - TAU);
    out
}

/// `Γ_N`: the union of the `N` longest complementary arcs of `E`
/// (ties broken by smaller start angle).
pub fn gamma_exhaustion(set: &ClosedBoundarySet, count: usize) -> Result<ArcUnion> {
    let arcs = set.complementary_arcs();
    if arcs.is_empty() {
        return Err(Error::InvalidArgument {
            arg: "E",
            reason: "set has no complementary arc".into(),
        });
    }
    let mut order: Vec<&Arc> = arcs.iter().collect();
    order.sort_by(|a, b| {
        b.length
            .total_cmp(&a.length)
            .then(a.start.theta.total_cmp(&b.start.theta))
    });
    ArcUnion::new(order.into_iter().take(count).copied().collect())
}

#[derive(Serialize, Deserialize)]
struct ArcRecord {
    a_theta: f64,
    b_theta: f64,
}

impl Serialize for ClosedBoundarySet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.repr {
            SetRepr::Empty => s.serialize_none(),
            SetRepr::Complement(c) => {
                let recs: Vec<ArcRecord> = c
                    .arcs()
                    .iter()
                    .map(|a| ArcRecord {
                        a_theta: a.start().theta(),
                        b_theta: a.end().theta(),
                    })
                    .collect();
                recs.serialize(s)
            }
        }
    }
}

impl<'de> Deserialize<'de> for ClosedBoundarySet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let recs: Option<Vec<ArcRecord>> = Option::deserialize(d)?;
        match recs {
            None => Ok(ClosedBoundarySet::empty()),
            Some(recs) => {
                let arcs = recs
                    .iter()
                    .map(|r| Arc::new(CirclePoint::new(r.a_theta), CirclePoint::new(r.b_theta)))
                    .collect();
                ArcUnion::new(arcs)
                    .map(ClosedBoundarySet::from_complement)
                    .map_err(serde::de::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(t: f64) -> CirclePoint {
        CirclePoint::new(t)
    }

    #[test]
    fn canonical_angles() {
        assert_eq!(pt(TAU), pt(0.0));
        assert_eq!(pt(-PI / 2.0), pt(3.0 * PI / 2.0));
        assert!(pt(-1e-300).theta() < TAU);
    }

    #[test]
    fn distance_to_single_point() {
        let e = ClosedBoundarySet::from_angles(&[0.0]).unwrap();
        let d = e.chordal_distance(pt(PI / 2.0)).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn distance_inside_set_is_zero() {
        let e = ClosedBoundarySet::from_angles(&[0.0, PI]).unwrap();
        assert_eq!(e.chordal_distance(pt(PI)).unwrap(), 0.0);
        // closed interval [0.5, 1.0] plus the point 3.0
        let arcs = vec![
            Arc::new(pt(1.0), pt(3.0)),
            Arc::new(pt(3.0), pt(0.5)),
        ];
        let e = ClosedBoundarySet::from_complement(ArcUnion::new(arcs).unwrap());
        assert_eq!(e.chordal_distance(pt(0.75)).unwrap(), 0.0);
        assert!(e.contains(pt(1.0)));
        assert!(!e.contains(pt(2.0)));
        assert!((e.measure() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn distance_two_points() {
        let e = ClosedBoundarySet::from_angles(&[0.0, PI]).unwrap();
        let xi = pt(PI / 4.0);
        let direct = (xi.to_complex() - Complex64::new(1.0, 0.0)).norm();
        let d = e.chordal_distance(xi).unwrap();
        assert!((d - direct).abs() < 1e-15);
        assert!((d - 0.765_366_864_730_179_6).abs() < 1e-12);
    }

    #[test]
    fn empty_set_distance_errors() {
        assert_eq!(
            ClosedBoundarySet::empty().chordal_distance(pt(0.0)),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn overlapping_arcs_rejected() {
        let arcs = vec![Arc::new(pt(0.0), pt(2.0)), Arc::new(pt(1.0), pt(3.0))];
        assert!(ArcUnion::new(arcs).is_err());
    }

    #[test]
    fn exhaustion_orders_by_length() {
        // arcs of lengths 1.0, 0.5, 0.2 and the rest
        let arcs = vec![
            Arc::new(pt(0.0), pt(0.2)),
            Arc::new(pt(0.2), pt(0.7)),
            Arc::new(pt(0.7), pt(1.7)),
        ];
        let e = ClosedBoundarySet::from_complement(ArcUnion::new(arcs).unwrap());
        let g = gamma_exhaustion(&e, 2).unwrap();
        let mut lens: Vec<f64> = g.arcs().iter().map(|a| a.length()).collect();
        lens.sort_by(f64::total_cmp);
        assert!((lens[0] - 0.5).abs() < 1e-12 && (lens[1] - 1.0).abs() < 1e-12);
        assert!(gamma_exhaustion(&e, 0).unwrap().is_empty());
        assert_eq!(gamma_exhaustion(&e, 10).unwrap().len(), 3);
    }

    #[test]
    fn exhaustion_single_point() {
        let e = ClosedBoundarySet::from_angles(&[0.0]).unwrap();
        let g = gamma_exhaustion(&e, 1).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.arcs()[0].length(), TAU);
        assert!(!g.contains(pt(0.0)));
        assert!(g.contains(pt(1e-9)));
        let e2 = ClosedBoundarySet::from_angles(&[0.0, PI]).unwrap();
        assert_eq!(gamma_exhaustion(&e2, 2).unwrap().len(), 2);
        assert!(gamma_exhaustion(&ClosedBoundarySet::full(), 1).is_err());
    }

    #[test]
    fn cell_weights_ignore_isolated_points() {
        let e = ClosedBoundarySet::from_angles(&[0.0]).unwrap();
        let w = e.complement().unwrap().cell_weights(16);
        assert!(w.iter().all(|&x| x == 1.0));
        let e2 = ClosedBoundarySet::from_angles(&[0.0, PI]).unwrap();
        let upper = ArcUnion::new(vec![e2.complementary_arcs()[0]]).unwrap();
        let w = upper.cell_weights(16);
        assert!((w[0] - 0.5).abs() < 1e-12);
        assert!((w[8] - 0.5).abs() < 1e-12);
        assert_eq!(w[4], 1.0);
        assert_eq!(w[12], 0.0);
    }

    #[test]
    fn union_of_point_sets() {
        let a = ClosedBoundarySet::from_angles(&[0.0]).unwrap();
        let b = ClosedBoundarySet::from_angles(&[PI]).unwrap();
        let u = a.union(&b).unwrap();
        assert_eq!(u.complementary_arcs().len(), 2);
        assert!(u.contains(pt(0.0)) && u.contains(pt(PI)));
        let c = ClosedBoundarySet::from_angles(&[0.0, 1.0, 2.0]).unwrap();
        let d = ClosedBoundarySet::from_angles(&[1.5, 4.0]).unwrap();
        let cd = c.union(&d).unwrap();
        assert_eq!(cd.complementary_arcs().len(), 5);
        assert!((cd.complement().unwrap().total_length() - TAU).abs() < 1e-12);
    }

    #[test]
    fn union_tolerates_rounded_endpoints() {
        // the wrapped piece ends at 0.2488... only up to rounding
        let a = ClosedBoundarySet::from_angles(&[0.0]).unwrap();
        let b = ClosedBoundarySet::from_angles(&[0.24883490823417695, 5.528637544703643]).unwrap();
        assert_eq!(a.union(&b).unwrap().complementary_arcs().len(), 3);
    }

    #[test]
    fn json_round_trip() {
        let e = ClosedBoundarySet::from_angles(&[0.0, PI]).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.contains("a_theta"));
        let back: ClosedBoundarySet = serde_json::from_str(&s).unwrap();
        assert_eq!(back.complementary_arcs().len(), 2);
        assert_eq!(serde_json::to_string(&ClosedBoundarySet::full()).unwrap(), "[]");
        let empty: ClosedBoundarySet = serde_json::from_str("null").unwrap();
        assert!(empty.is_empty());
    }
}
