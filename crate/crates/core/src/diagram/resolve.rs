use std::collections::HashMap;

use super::geometry::{self, Point, Q};
use super::{AnnularDiagram, DiagramError, End, OrientationChoice, Smoothing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayStation {
    pub radius: Q,
    /// +1 when the circle crosses the ray counterclockwise.
    pub sign: i32,
}

#[derive(Debug, Clone)]
pub struct Circle {
    /// Traversed edges with direction (`true` = tail to head).
    pub arcs: Vec<(usize, bool)>,
    pub polygon: Vec<Point>,
    pub winding: i32,
    pub stations: Vec<RayStation>,
    /// 1-based innermost-to-outermost position among essential circles.
    pub essential_index: Option<usize>,
    /// Sorted edge indices; identifies the circle across cube edges.
    pub edges: Vec<usize>,
}

impl Circle {
    pub fn essential(&self) -> bool {
        self.winding != 0
    }

    pub fn counterclockwise(&self) -> bool {
        geometry::signed_area2(&self.polygon) > Q::from_integer(0.into())
    }

    fn min_radius(&self) -> Option<&Q> {
        self.stations.iter().map(|s| &s.radius).min()
    }
}

#[derive(Debug, Clone)]
pub struct ResolvedDiagram {
    pub smoothing: Smoothing,
    /// Trivial circles first (by smallest edge index), then essential ones
    /// innermost to outermost.
    pub circles: Vec<Circle>,
}

impl ResolvedDiagram {
    pub fn essential_count(&self) -> usize {
        self.circles.iter().filter(|c| c.essential()).count()
    }

    /// Index of the circle containing the given edge.
    pub fn circle_of_edge(&self, e: usize) -> Option<usize> {
        self.circles.iter().position(|c| c.edges.binary_search(&e).is_ok())
    }

    /// Total winding of the (oriented) circles.
    pub fn total_winding(&self) -> i32 {
        self.circles.iter().map(|c| c.winding).sum()
    }
}

/// Partner of each edge end under the smoothing.
fn partners(d: &AnnularDiagram, u: &[u8]) -> HashMap<End, End> {
    let mut map = HashMap::new();
    for (k, c) in d.crossings.iter().enumerate() {
        let pairs = if u[k] == 0 { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
        for (a, b) in pairs {
            map.insert(c.ends[a], c.ends[b]);
            map.insert(c.ends[b], c.ends[a]);
        }
    }
    map
}

pub(super) fn resolve(
    d: &AnnularDiagram,
    u: &[u8],
    orientation: Option<&OrientationChoice>,
) -> Result<ResolvedDiagram, DiagramError> {
    if u.len() != d.crossings.len() {
        return Err(DiagramError::SmoothingLength {
            expected: d.crossings.len(),
            got: u.len(),
        });
    }
    let partner = partners(d, u);
    let mut visited = vec![false; d.edges.len()];
    let mut circles = Vec::new();
    for start in 0..d.edges.len() {
        if visited[start] {
            continue;
        }
        let fwd0 = orientation.is_none_or(|o| d.forward(d.edges[start].component, o));
        let mut arcs = Vec::new();
        let mut polygon = Vec::new();
        if d.edges[start].closed {
            visited[start] = true;
            arcs.push((start, fwd0));
            polygon = d.edges[start].points.clone();
            if !fwd0 {
                polygon.reverse();
            }
        } else {
            let (mut e, mut fwd) = (start, fwd0);
            loop {
                visited[e] = true;
                arcs.push((e, fwd));
                let pts = &d.edges[e].points;
                let n = pts.len();
                let (entry, exit) = (End { edge: e, head: !fwd }, End { edge: e, head: fwd });
                let mut piece = Vec::with_capacity(n);
                piece.push(d.cut_point(End { edge: e, head: false }));
                piece.extend(pts[1..n - 1].iter().cloned());
                piece.push(d.cut_point(End { edge: e, head: true }));
                if !fwd {
                    piece.reverse();
                }
                debug_assert_eq!(piece[0], d.cut_point(entry));
                polygon.extend(piece);
                let next = partner[&exit];
                e = next.edge;
                fwd = !next.head;
                if (e, fwd) == (start, fwd0) {
                    break;
                }
                if visited[e] {
                    return Err(DiagramError::Embedding(format!("edge `{}` traversed twice", d.edges[e].id.0)));
                }
            }
        }
        let n = polygon.len();
        let mut stations = Vec::new();
        for i in 0..n {
            if let Some((x, s)) = geometry::ray_crossing(&polygon[i], &polygon[(i + 1) % n]) {
                stations.push(RayStation { radius: x, sign: s });
            }
        }
        stations.sort_by(|a, b| a.radius.cmp(&b.radius));
        let winding: i32 = stations.iter().map(|s| s.sign).sum();
        if winding.abs() > 1 {
            return Err(DiagramError::Embedding(format!("circle with winding number {winding}")));
        }
        let mut edges: Vec<usize> = arcs.iter().map(|a| a.0).collect();
        edges.sort_unstable();
        circles.push(Circle {
            arcs,
            polygon,
            winding,
            stations,
            essential_index: None,
            edges,
        });
    }

    let (mut trivial, mut essential): (Vec<Circle>, Vec<Circle>) = circles.into_iter().partition(|c| !c.essential());
    trivial.sort_by_key(|c| c.edges[0]);
    essential.sort_by(|a, b| a.min_radius().cmp(&b.min_radius()));
    for w in essential.windows(2) {
        if w[0].min_radius() == w[1].min_radius() {
            return Err(DiagramError::Embedding("two essential circles share a ray station".into()));
        }
    }
    for (i, c) in essential.iter_mut().enumerate() {
        c.essential_index = Some(i + 1);
    }
    trivial.extend(essential);
    Ok(ResolvedDiagram {
        smoothing: u.to_vec(),
        circles: trivial,
    })
}
