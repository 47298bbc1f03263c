//! Annular link diagrams with an exact geometric realization.
//!
//! A diagram is a PD code whose edges carry rational polylines in the
//! punctured plane (puncture at the origin). Every classification that the
//! homology needs (trivial or essential, innermost-to-outermost order,
//! winding, nesting) is computed from the geometry against the reference
//! ray, the positive horizontal axis.

pub mod builder;
pub mod geometry;
mod resolve;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

pub use geometry::{Point, Q};
pub use resolve::{Circle, RayStation, ResolvedDiagram};

use geometry::{cross, dist2_point_segment, dist2_to_ray, on_segment, qr, segment_contact, Contact};

/// Edge identifier as it appears in diagram files (strings or integers).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub String);

impl Serialize for EdgeId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for EdgeId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => Ok(EdgeId(s)),
            serde_json::Value::Number(n) if n.is_u64() || n.is_i64() => Ok(EdgeId(n.to_string())),
            other => Err(de::Error::custom(format!("edge id must be a string or integer, got {other}"))),
        }
    }
}

/// A rational coordinate, written as `"p/q"`, `"p"` or a JSON integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coord(pub Q);

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match &v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) if n.is_u64() || n.is_i64() => n.to_string(),
            other => return Err(de::Error::custom(format!("coordinate must be a rational string, got {other}"))),
        };
        geometry::parse_rational(&text)
            .map(Coord)
            .ok_or_else(|| de::Error::custom(format!("bad rational `{text}`")))
    }
}

/// The JSON file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub crossings: Vec<[EdgeId; 4]>,
    pub edges: BTreeMap<EdgeId, Vec<[Coord; 2]>>,
    pub components: Vec<Vec<EdgeId>>,
    pub orientations: Vec<bool>,
}

impl DiagramFile {
    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        serde_json::from_str(text).map_err(|e| DiagramError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// Rotate every vertex about the origin by a rational rotation.
    pub fn rotated(&self, cs: &(Q, Q)) -> Self {
        let mut out = self.clone();
        for pts in out.edges.values_mut() {
            for p in pts.iter_mut() {
                let r = geometry::rotate(&Point::new(p[0].0.clone(), p[1].0.clone()), cs);
                *p = [Coord(r.x), Coord(r.y)];
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationKind {
    RayTangency,
    EndpointMismatch,
    SelfIntersection,
    OriginOnCurve,
    /// Structural problems: empty polylines, repeated vertices, bad component lists.
    Malformed,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::RayTangency => "RAY_TANGENCY",
            ViolationKind::EndpointMismatch => "ENDPOINT_MISMATCH",
            ViolationKind::SelfIntersection => "SELF_INTERSECTION",
            ViolationKind::OriginOnCurve => "ORIGIN_ON_CURVE",
            ViolationKind::Malformed => "MALFORMED",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.kind, self.location, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiagramError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid diagram:\n{}", .0.iter().map(|v| format!("  {v}")).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Violation>),
    #[error("embedding violation: {0}")]
    Embedding(String),
    #[error("smoothing has length {got}, diagram has {expected} crossings")]
    SmoothingLength { expected: usize, got: usize },
    #[error("orientation choice has length {got}, diagram has {expected} components")]
    OrientationLength { expected: usize, got: usize },
    #[error("cannot read {0}: {1}")]
    Io(String, String),
}

impl DiagramError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            DiagramError::Invalid(v) => v,
            _ => &[],
        }
    }
}

/// One end of an edge. `head` is the last polyline vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub edge: usize,
    pub head: bool,
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub id: EdgeId,
    pub points: Vec<Point>,
    /// A crossing-free closed loop; the closing segment is implicit.
    pub closed: bool,
    pub component: usize,
}

impl Edge {
    /// Segments of the polyline, including the closing one of a loop.
    pub fn segments(&self) -> Vec<(Point, Point)> {
        let n = self.points.len();
        let mut s: Vec<(Point, Point)> = (0..n - 1)
            .map(|i| (self.points[i].clone(), self.points[i + 1].clone()))
            .collect();
        if self.closed {
            s.push((self.points[n - 1].clone(), self.points[0].clone()));
        }
        s
    }

    /// Vertex adjacent to the given end.
    fn neighbor(&self, head: bool) -> &Point {
        let n = self.points.len();
        if head {
            &self.points[n - 2]
        } else {
            &self.points[1]
        }
    }
}

#[derive(Debug, Clone)]
pub struct Crossing {
    pub point: Point,
    /// PD order: incoming under-strand first, then counterclockwise.
    pub ends: [End; 4],
    /// Cut parameter: reconnection points sit at `P + t (neighbor - P)`.
    pub cut: Q,
}

/// A tuple in `{0,1}^n`.
pub type Smoothing = Vec<u8>;

/// One flag per component: `true` reverses the diagram's orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientationChoice {
    pub flags: Vec<bool>,
}

impl OrientationChoice {
    pub fn keep(k: usize) -> Self {
        Self { flags: vec![false; k] }
    }

    /// All `2^k` choices, in binary order.
    pub fn all(k: usize) -> Vec<Self> {
        (0..1usize << k)
            .map(|m| Self {
                flags: (0..k).map(|i| (m >> (k - 1 - i)) & 1 == 1).collect(),
            })
            .collect()
    }
}

/// A validated annular diagram.
#[derive(Debug, Clone)]
pub struct AnnularDiagram {
    pub name: Option<String>,
    pub edges: Vec<Edge>,
    pub crossings: Vec<Crossing>,
    pub components: Vec<Vec<usize>>,
    pub orientations: Vec<bool>,
    end_site: HashMap<End, (usize, usize)>,
}

fn natural_key(id: &EdgeId) -> (usize, String) {
    (id.0.len(), id.0.clone())
}

fn violation(kind: ViolationKind, location: impl Into<String>, detail: impl Into<String>) -> Violation {
    Violation {
        kind,
        location: location.into(),
        detail: detail.into(),
    }
}

impl AnnularDiagram {
    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        Self::from_file(&DiagramFile::from_json(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, DiagramError> {
        let text = std::fs::read_to_string(path).map_err(|e| DiagramError::Io(path.display().to_string(), e.to_string()))?;
        Self::from_json(&text)
    }

    /// Load, rotating the diagram by a small rational angle when the
    /// unrotated input is not transverse to the reference ray.
    pub fn from_file_nudged(file: &DiagramFile) -> Result<Self, DiagramError> {
        let first = Self::from_file(file);
        let Err(err) = first else { return first };
        if !err.violations().iter().any(|v| v.kind == ViolationKind::RayTangency) {
            return Err(err);
        }
        for k in 4..40 {
            let t = BigRational::new(1.into(), num_bigint::BigInt::from(2u8).pow(k));
            if let Ok(d) = Self::from_file(&file.rotated(&geometry::rotation(&t))) {
                return Ok(d);
            }
        }
        Err(err)
    }

    pub fn from_file(file: &DiagramFile) -> Result<Self, DiagramError> {
        let mut v = Vec::new();
        let mut ids: Vec<&EdgeId> = file.edges.keys().collect();
        ids.sort_by_key(|id| natural_key(id));
        let index: HashMap<&EdgeId, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();

        // Edges and their components.
        let mut component_of = vec![usize::MAX; ids.len()];
        let mut components = Vec::new();
        for (ci, comp) in file.components.iter().enumerate() {
            let mut list = Vec::new();
            for id in comp {
                match index.get(id) {
                    None => v.push(violation(ViolationKind::EndpointMismatch, format!("component {ci}"), format!("unknown edge `{}`", id.0))),
                    Some(&e) if component_of[e] != usize::MAX => {
                        v.push(violation(ViolationKind::Malformed, format!("edge `{}`", id.0), "listed in two components"))
                    }
                    Some(&e) => {
                        component_of[e] = ci;
                        list.push(e);
                    }
                }
            }
            components.push(list);
        }
        if file.orientations.len() != file.components.len() {
            v.push(violation(
                ViolationKind::Malformed,
                "orientations",
                format!("{} flags for {} components", file.orientations.len(), file.components.len()),
            ));
        }
        let in_crossing: std::collections::HashSet<&EdgeId> = file.crossings.iter().flatten().collect();
        let mut edges = Vec::new();
        for (i, id) in ids.iter().enumerate() {
            let loc = format!("edge `{}`", id.0);
            if component_of[i] == usize::MAX {
                v.push(violation(ViolationKind::Malformed, &loc, "not listed in any component"));
            }
            let mut points: Vec<Point> = file.edges[*id]
                .iter()
                .map(|c| Point::new(c[0].0.clone(), c[1].0.clone()))
                .collect();
            let closed = !in_crossing.contains(id);
            if closed && points.len() > 1 && points.first() == points.last() {
                points.pop();
            }
            let needed = if closed { 3 } else { 2 };
            if points.len() < needed {
                v.push(violation(ViolationKind::Malformed, &loc, format!("needs at least {needed} vertices")));
            }
            let n = points.len();
            let wrap = if closed { n } else { n.saturating_sub(1) };
            for k in 0..wrap {
                if points[k] == points[(k + 1) % n] {
                    v.push(violation(ViolationKind::Malformed, &loc, format!("repeated vertex {:?}", points[k])));
                }
            }
            edges.push(Edge {
                id: (*id).clone(),
                points,
                closed,
                component: component_of[i],
            });
        }
        if !v.is_empty() {
            return Err(DiagramError::Invalid(v));
        }

        // Crossings.
        let mut end_site: HashMap<End, (usize, usize)> = HashMap::new();
        let mut crossings = Vec::new();
        for (k, rec) in file.crossings.iter().enumerate() {
            let loc = format!("crossing {k}");
            let mut es = Vec::new();
            for id in rec {
                match index.get(id) {
                    Some(&e) => es.push(e),
                    None => v.push(violation(ViolationKind::EndpointMismatch, &loc, format!("unknown edge `{}`", id.0))),
                }
            }
            if es.len() != 4 {
                continue;
            }
            let p = edges[es[0]].points.last().unwrap().clone();
            let at = |e: usize, head: bool| {
                let pts = &edges[e].points;
                if head {
                    pts.last() == Some(&p)
                } else {
                    pts.first() == Some(&p)
                }
            };
            if !at(es[2], false) {
                v.push(violation(ViolationKind::EndpointMismatch, &loc, format!("edge `{}` does not start at the crossing {:?}", edges[es[2]].id.0, p)));
                continue;
            }
            let mut found = None;
            for head2 in [true, false] {
                let cand = [
                    End { edge: es[0], head: true },
                    End { edge: es[1], head: head2 },
                    End { edge: es[2], head: false },
                    End { edge: es[3], head: !head2 },
                ];
                if !at(es[1], head2) || !at(es[3], !head2) {
                    continue;
                }
                let distinct = (0..4).all(|i| (i + 1..4).all(|j| cand[i] != cand[j]));
                if !distinct {
                    continue;
                }
                let dirs: Vec<Point> = cand.iter().map(|c| edges[c.edge].neighbor(c.head).sub(&p)).collect();
                let ccw = (0..4).all(|i| cross(&dirs[i], &dirs[(i + 1) % 4]).is_positive());
                if ccw {
                    found = Some(cand);
                    break;
                }
            }
            let Some(ends) = found else {
                v.push(violation(
                    ViolationKind::EndpointMismatch,
                    &loc,
                    "edge ends do not match the declared counterclockwise order",
                ));
                continue;
            };
            for (pos, end) in ends.iter().enumerate() {
                if let Some((other, _)) = end_site.insert(*end, (k, pos)) {
                    v.push(violation(
                        ViolationKind::EndpointMismatch,
                        &loc,
                        format!("end of edge `{}` already used at crossing {other}", edges[end.edge].id.0),
                    ));
                }
            }
            if edges[ends[0].edge].component != edges[ends[2].edge].component
                || edges[ends[1].edge].component != edges[ends[3].edge].component
            {
                v.push(violation(ViolationKind::Malformed, &loc, "strand changes component through the crossing"));
            }
            crossings.push(Crossing {
                point: p,
                ends,
                cut: Q::zero(),
            });
        }
        for (e, edge) in edges.iter().enumerate() {
            if edge.closed {
                continue;
            }
            for head in [false, true] {
                if !end_site.contains_key(&End { edge: e, head }) {
                    v.push(violation(
                        ViolationKind::EndpointMismatch,
                        format!("edge `{}`", edge.id.0),
                        format!("{} is not attached to a crossing", if head { "head" } else { "tail" }),
                    ));
                }
            }
        }
        if !v.is_empty() {
            return Err(DiagramError::Invalid(v));
        }

        // Geometry.
        let crossing_points: std::collections::HashSet<&Point> = crossings.iter().map(|c| &c.point).collect();
        if crossing_points.len() != crossings.len() {
            v.push(violation(ViolationKind::EndpointMismatch, "crossings", "two crossings share a point"));
        }
        let origin = Point::origin();
        let mut segs: Vec<(usize, usize, Point, Point)> = Vec::new();
        for (e, edge) in edges.iter().enumerate() {
            let loc = format!("edge `{}`", edge.id.0);
            for p in &edge.points {
                if p.on_ray() {
                    v.push(violation(ViolationKind::RayTangency, &loc, format!("vertex {p:?} lies on the reference ray")));
                }
            }
            for (s, (a, b)) in edge.segments().into_iter().enumerate() {
                if on_segment(&origin, &a, &b) {
                    v.push(violation(ViolationKind::OriginOnCurve, &loc, format!("segment {s} passes through the puncture")));
                }
                segs.push((e, s, a, b));
            }
        }
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (e1, s1, a, b) = &segs[i];
                let (e2, s2, c, d) = &segs[j];
                let bad = match segment_contact(a, b, c, d) {
                    Contact::Disjoint => None,
                    Contact::Proper(p) => Some(format!("segments cross at {p:?}")),
                    Contact::Overlap => Some("collinear overlap".to_string()),
                    Contact::Touch(pts) => {
                        let consecutive = e1 == e2 && {
                            let n = edges[*e1].segments().len();
                            s1.abs_diff(*s2) == 1 || (edges[*e1].closed && s1.abs_diff(*s2) == n - 1)
                        };
                        let allowed = |p: &Point| {
                            let shared = (p == a || p == b) && (p == c || p == d);
                            shared && (consecutive || crossing_points.contains(p))
                        };
                        pts.iter().find(|p| !allowed(p)).map(|p| format!("segments touch at {p:?}"))
                    }
                };
                if let Some(detail) = bad {
                    v.push(violation(
                        ViolationKind::SelfIntersection,
                        format!("edge `{}` segment {s1} / edge `{}` segment {s2}", edges[*e1].id.0, edges[*e2].id.0),
                        detail,
                    ));
                }
            }
        }
        if !v.is_empty() {
            return Err(DiagramError::Invalid(v));
        }

        // Cut parameters: keep every reconnection chord inside a disk far
        // from the ray and from segments not incident to the crossing.
        for c in crossings.iter_mut() {
            let p = &c.point;
            let mut delta2 = dist2_to_ray(p);
            for (_, _, a, b) in &segs {
                if a != p && b != p {
                    let d = dist2_point_segment(p, a, b);
                    if d < delta2 {
                        delta2 = d;
                    }
                }
            }
            let mut len2 = Q::zero();
            for end in &c.ends {
                let d = edges[end.edge].neighbor(end.head).sub(p).norm2();
                if d > len2 {
                    len2 = d;
                }
            }
            let mut t = qr(1, 4);
            while &t * &t * &len2 * geometry::q(16) >= delta2 {
                t /= geometry::q(2);
            }
            c.cut = t;
        }

        Ok(Self {
            name: file.name.clone(),
            edges,
            crossings,
            components,
            orientations: file.orientations.clone(),
            end_site,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// `(crossing, PD position)` of an edge end.
    pub fn site(&self, end: End) -> Option<(usize, usize)> {
        self.end_site.get(&end).copied()
    }

    /// Whether the component runs along the polyline direction under `o`.
    pub fn forward(&self, component: usize, o: &OrientationChoice) -> bool {
        self.orientations[component] ^ o.flags[component]
    }

    fn check_orientation(&self, o: &OrientationChoice) -> Result<(), DiagramError> {
        if o.flags.len() != self.components.len() {
            return Err(DiagramError::OrientationLength {
                expected: self.components.len(),
                got: o.flags.len(),
            });
        }
        Ok(())
    }

    /// PD positions `(under_in, under_out, over_in, over_out)` under `o`.
    fn oriented_positions(&self, k: usize, o: &OrientationChoice) -> (usize, usize, usize, usize) {
        let c = &self.crossings[k];
        let under_fwd = self.forward(self.edges[c.ends[0].edge].component, o);
        let (ui, uo) = if under_fwd { (0, 2) } else { (2, 0) };
        let over_head = if c.ends[1].head { 1 } else { 3 };
        let over_tail = 4 - over_head;
        let over_fwd = self.forward(self.edges[c.ends[1].edge].component, o);
        let (oi, oo) = if over_fwd { (over_head, over_tail) } else { (over_tail, over_head) };
        (ui, uo, oi, oo)
    }

    /// The smoothing at crossing `k` compatible with the orientation.
    pub fn oriented_smoothing_at(&self, k: usize, o: &OrientationChoice) -> u8 {
        let (ui, _, _, oo) = self.oriented_positions(k, o);
        let pair = (ui.min(oo), ui.max(oo));
        if pair == (0, 1) || pair == (2, 3) {
            0
        } else {
            1
        }
    }

    /// +1 when the over-strand must turn counterclockwise to reach the under-strand.
    pub fn crossing_sign(&self, k: usize, o: &OrientationChoice) -> Result<i32, DiagramError> {
        self.check_orientation(o)?;
        let (_, uo, _, oo) = self.oriented_positions(k, o);
        let c = &self.crossings[k];
        let dir = |pos: usize| {
            let end = c.ends[pos];
            self.edges[end.edge].neighbor(end.head).sub(&c.point)
        };
        Ok(geometry::sign(&cross(&dir(oo), &dir(uo))))
    }

    /// `(n_plus, n_minus)` for the diagram's own orientation.
    pub fn sign_counts(&self) -> (usize, usize) {
        let o = OrientationChoice::keep(self.components.len());
        let signs: Vec<i32> = (0..self.crossings.len()).map(|k| self.crossing_sign(k, &o).unwrap()).collect();
        (signs.iter().filter(|&&s| s > 0).count(), signs.iter().filter(|&&s| s < 0).count())
    }

    /// Winding number of the oriented link around the puncture, read off
    /// the edge polylines directly.
    pub fn link_winding(&self, o: &OrientationChoice) -> Result<i32, DiagramError> {
        self.check_orientation(o)?;
        let mut w = 0;
        for edge in &self.edges {
            let s: i32 = edge
                .segments()
                .iter()
                .filter_map(|(a, b)| geometry::ray_crossing(a, b))
                .map(|(_, sg)| sg)
                .sum();
            w += if self.forward(edge.component, o) { s } else { -s };
        }
        Ok(w)
    }

    pub fn resolve(&self, u: &[u8]) -> Result<ResolvedDiagram, DiagramError> {
        resolve::resolve(self, u, None)
    }

    /// Oriented resolution; circles carry the induced orientation.
    pub fn oriented_resolution(&self, o: &OrientationChoice) -> Result<(Smoothing, ResolvedDiagram), DiagramError> {
        self.check_orientation(o)?;
        let u: Smoothing = (0..self.crossings.len()).map(|k| self.oriented_smoothing_at(k, o)).collect();
        let rd = resolve::resolve(self, &u, Some(o))?;
        Ok((u, rd))
    }

    /// Reconnection point of an edge end inside its crossing disk.
    pub(crate) fn cut_point(&self, end: End) -> Point {
        let (k, _) = self.end_site[&end];
        let c = &self.crossings[k];
        let nb = self.edges[end.edge].neighbor(end.head);
        c.point.add(&nb.sub(&c.point).scale(&c.cut))
    }
}

/// Nesting depth: the number of other circles with nonzero winding around a
/// vertex of `c`.
pub fn nesting_depth(rd: &ResolvedDiagram, c: usize) -> usize {
    let p = &rd.circles[c].polygon[0];
    rd.circles
        .iter()
        .enumerate()
        .filter(|&(i, other)| i != c && geometry::winding_number(&other.polygon, p) != 0)
        .count()
}
