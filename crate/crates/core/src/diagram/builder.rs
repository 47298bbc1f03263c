//! Construct diagram files from closed polygonal curves.
//!
//! Crossings are found exactly; the caller decides which strand passes over
//! at each crossing. [`braid_closure`] produces annular closures of braid
//! words, either around the puncture or pushed off to one side.

use std::collections::BTreeMap;

use super::geometry::{self, q, segment_contact, Contact, Point, Q};
use super::{Coord, DiagramFile, EdgeId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("curves are not in general position: {0}")]
    Degenerate(String),
}

/// One strand through a crossing: which curve, which segment, where.
#[derive(Debug, Clone)]
pub struct HitSide {
    pub curve: usize,
    pub segment: usize,
    pub param: Q,
}

#[derive(Debug, Clone)]
pub struct Hit {
    pub point: Point,
    pub sides: [HitSide; 2],
}

/// Curves are closed polylines (closing segment implicit) oriented along
/// their vertex order. `over(hit)` returns 0 or 1: the side passing over.
pub fn from_curves<F>(name: &str, curves: &[Vec<Point>], over: F) -> Result<DiagramFile, BuildError>
where
    F: Fn(&Hit) -> usize,
{
    let segs: Vec<(usize, usize, Point, Point)> = curves
        .iter()
        .enumerate()
        .flat_map(|(c, pts)| {
            let n = pts.len();
            (0..n).map(move |s| (c, s, pts[s].clone(), pts[(s + 1) % n].clone()))
        })
        .collect();
    let mut hits = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (c1, s1, a, b) = &segs[i];
            let (c2, s2, c, d) = &segs[j];
            let n1 = curves[*c1].len();
            let adjacent = c1 == c2 && (s1.abs_diff(*s2) == 1 || s1.abs_diff(*s2) == n1 - 1);
            match segment_contact(a, b, c, d) {
                Contact::Disjoint => {}
                Contact::Proper(p) => hits.push(Hit {
                    point: p,
                    sides: [
                        HitSide {
                            curve: *c1,
                            segment: *s1,
                            param: geometry::intersection_param(a, b, c, d),
                        },
                        HitSide {
                            curve: *c2,
                            segment: *s2,
                            param: geometry::intersection_param(c, d, a, b),
                        },
                    ],
                }),
                Contact::Touch(pts) if adjacent && pts.len() == 1 => {}
                other => {
                    return Err(BuildError::Degenerate(format!(
                        "curve {c1} segment {s1} and curve {c2} segment {s2}: {other:?}"
                    )))
                }
            }
        }
    }

    // Positions along each curve, sorted.
    let mut along: Vec<Vec<(usize, Q, usize, usize)>> = vec![Vec::new(); curves.len()];
    for (h, hit) in hits.iter().enumerate() {
        for (side, hs) in hit.sides.iter().enumerate() {
            along[hs.curve].push((hs.segment, hs.param.clone(), h, side));
        }
    }
    for v in along.iter_mut() {
        v.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    }

    // Edges between consecutive positions.
    let mut edges: Vec<Vec<Point>> = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    // (hit, side) -> (edge ending there, edge starting there)
    let mut ending: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut starting: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (c, pts) in curves.iter().enumerate() {
        let m = pts.len();
        let pos = &along[c];
        let mut comp = Vec::new();
        if pos.is_empty() {
            comp.push(edges.len());
            edges.push(pts.clone());
        } else {
            for i in 0..pos.len() {
                let (s, _, h, side) = &pos[i];
                let (s2, _, h2, side2) = &pos[(i + 1) % pos.len()];
                let wrap = i + 1 == pos.len();
                let mut poly = vec![hits[*h].point.clone()];
                let last = if wrap { s2 + m } else { *s2 };
                for k in s + 1..=last {
                    poly.push(pts[k % m].clone());
                }
                poly.push(hits[*h2].point.clone());
                starting.insert((*h, *side), edges.len());
                ending.insert((*h2, *side2), edges.len());
                comp.push(edges.len());
                edges.push(poly);
            }
        }
        components.push(comp);
    }

    let id = |e: usize| EdgeId((e + 1).to_string());
    let mut crossings = Vec::new();
    for (h, hit) in hits.iter().enumerate() {
        let o = over(hit);
        assert!(o < 2, "over side must be 0 or 1");
        let u = 1 - o;
        let under_in = ending[&(h, u)];
        let under_out = starting[&(h, u)];
        let over_in = ending[&(h, o)];
        let over_out = starting[&(h, o)];
        let p = &hit.point;
        let d1 = edges[under_in][edges[under_in].len() - 2].sub(p);
        let d_out = edges[over_out][1].sub(p);
        let (x, y) = if geometry::cross(&d1, &d_out) > Q::from_integer(0.into()) {
            (over_out, over_in)
        } else {
            (over_in, over_out)
        };
        crossings.push([id(under_in), id(x), id(under_out), id(y)]);
    }

    let coord = |p: &Point| [Coord(p.x.clone()), Coord(p.y.clone())];
    Ok(DiagramFile {
        name: Some(name.to_string()),
        crossings,
        edges: edges
            .iter()
            .enumerate()
            .map(|(e, pts)| (id(e), pts.iter().map(coord).collect()))
            .collect(),
        components: components.iter().map(|c| c.iter().map(|&e| id(e)).collect()).collect(),
        orientations: vec![true; curves.len()],
    })
}

/// Point on the boundary of the square `[-1,1]^2` at perimeter parameter
/// `s` in `[0, 4)`, counterclockwise from the lower-left corner.
fn square(s: &Q) -> Point {
    let one = q(1);
    let two = q(2);
    if *s <= q(1) {
        Point::new(-&one + &two * s, -one)
    } else if *s <= q(2) {
        Point::new(one.clone(), -&one + &two * (s - q(1)))
    } else if *s <= q(3) {
        Point::new(&one - &two * (s - q(2)), one)
    } else {
        Point::new(-one.clone(), &one - &two * (s - q(3)))
    }
}

/// Closure of a braid word on `strands` strands. Letters are `+j` / `-j`
/// for the positive / negative generator exchanging levels `j` and `j+1`
/// (level 1 innermost). All strands run counterclockwise about `center`;
/// with the center at the origin every component is essential.
pub fn braid_closure(name: &str, strands: usize, word: &[i32], center: &Point) -> Result<DiagramFile, BuildError> {
    assert!(strands >= 1);
    for &g in word {
        assert!(g != 0 && (g.unsigned_abs() as usize) < strands, "bad braid letter {g}");
    }
    let mut c = word.len() + 2;
    if c % 2 == 1 {
        c += 1;
    }
    let columns = 4 * c;
    // s_k = (2k+1)/(2c): never 3/2, so vertices avoid the ray.
    let s_at = |k: usize| Q::new(((2 * (k % columns) + 1) as i64).into(), ((2 * c) as i64).into());
    let radius = |level: usize| q(level as i64 + 1);

    // level_at[k][strand position] after column transitions.
    let mut perm: Vec<usize> = (1..=strands).collect(); // perm[p] = level of the strand that started at level p+1
    let mut paths: Vec<Vec<usize>> = vec![Vec::new(); strands]; // level per column per starting strand
    let mut columns_word: BTreeMap<usize, i32> = BTreeMap::new();
    for (k, &g) in word.iter().enumerate() {
        columns_word.insert(k, g);
    }
    for k in 0..columns {
        for p in 0..strands {
            paths[p].push(perm[p]);
        }
        if let Some(&g) = columns_word.get(&k) {
            let j = g.unsigned_abs() as usize;
            for lvl in perm.iter_mut() {
                if *lvl == j {
                    *lvl = j + 1;
                } else if *lvl == j + 1 {
                    *lvl = j;
                }
            }
        }
    }
    // Follow cycles of the closure permutation into curves.
    let mut used = vec![false; strands];
    let mut curves: Vec<Vec<Point>> = Vec::new();
    // (curve, segment) -> column, for the over rule.
    let mut seg_column: Vec<Vec<usize>> = Vec::new();
    for start in 0..strands {
        if used[start] {
            continue;
        }
        let mut pts = Vec::new();
        let mut cols = Vec::new();
        let mut level = start + 1;
        loop {
            let p = level - 1;
            used[p] = true;
            for k in 0..columns {
                let lvl = paths[p][k];
                pts.push(center.add(&square(&s_at(k)).scale(&radius(lvl))));
                cols.push(k);
            }
            level = perm[p];
            if level == start + 1 {
                break;
            }
        }
        curves.push(pts);
        seg_column.push(cols);
    }
    from_curves(name, &curves, |hit| {
        let k = seg_column[hit.sides[0].curve][hit.sides[0].segment];
        let g = columns_word[&k];
        // On the bottom side outward is downward.
        let outward = |hs: &HitSide| {
            let pts = &curves[hs.curve];
            let a = &pts[hs.segment];
            let b = &pts[(hs.segment + 1) % pts.len()];
            b.y < a.y
        };
        let zero_outward = outward(&hit.sides[0]);
        match (g > 0, zero_outward) {
            (true, true) | (false, false) => 0,
            _ => 1,
        }
    })
}

/// An axis-parallel rectangle traversed counterclockwise.
pub fn rectangle(x0: i64, y0: i64, x1: i64, y1: i64) -> Vec<Point> {
    vec![Point::ints(x0, y0), Point::ints(x1, y0), Point::ints(x1, y1), Point::ints(x0, y1)]
}

fn closure_at(name: &str, strands: usize, word: &[i32], x: i64, y: i64) -> DiagramFile {
    braid_closure(name, strands, word, &Point::ints(x, y)).expect("braid closures are generic")
}

/// An essential square with a one-crossing kink on its bottom side.
fn kinked_square(name: &str, over_first: bool) -> DiagramFile {
    let pts = vec![
        Point::ints(-3, -2),
        Point::ints(1, -2),
        Point::ints(0, -1),
        Point::ints(-1, -1),
        Point::new(geometry::qr(-1, 2), q(-3)),
        Point::ints(3, -3),
        Point::ints(3, 3),
        Point::ints(-3, 3),
    ];
    from_curves(name, &[pts], |hit| {
        let first = hit.sides[0].segment < hit.sides[1].segment;
        usize::from(first != over_first)
    })
    .expect("kink is generic")
}

fn translate(pts: &[Point], x: i64, y: i64) -> Vec<Point> {
    pts.iter().map(|p| p.add(&Point::ints(x, y))).collect()
}

/// The bundled diagrams, in a fixed order.
pub fn corpus() -> Vec<DiagramFile> {
    let single = |name: &str, pts: Vec<Point>| from_curves(name, &[pts], |_| 0).expect("simple curve");
    let mut cw = closure_at("essential_unknot_cw", 1, &[], 0, 0);
    cw.orientations = vec![false];
    let square = rectangle(-3, -3, 3, 3);
    // Side 1 (the rectangle) passes over the circle at both crossings.
    let over_rect = |hit: &Hit| if hit.sides[0].curve == 1 { 0 } else { 1 };
    let kink_trivial = relocate(&kinked_square("r1_trivial_b", true), "r1_trivial_b", 20, 0);
    vec![
        closure_at("trivial_unknot", 1, &[], 0, 50),
        closure_at("essential_unknot", 1, &[], 0, 0),
        cw,
        closure_at("clasp", 2, &[1], 0, 0),
        closure_at("hopf_null", 2, &[1, 1], 0, 50),
        closure_at("hopf_essential", 2, &[1, 1], 0, 0),
        closure_at("trefoil", 2, &[1, 1, 1], 0, 0),
        closure_at("trefoil_left", 2, &[-1, -1, -1], 0, 0),
        closure_at("trefoil_planar", 2, &[1, 1, 1], 0, 60),
        single("r1_essential_a", square.clone()),
        kinked_square("r1_essential_b", true),
        single("r1_essential_neg_a", square.clone()),
        kinked_square("r1_essential_neg_b", false),
        single("r1_trivial_a", translate(&square, 20, 0)),
        kink_trivial,
        closure_at("r2_braid_a", 2, &[], 0, 0),
        closure_at("r2_braid_b", 2, &[1, -1], 0, 0),
        from_curves("r2_straddle_a", &[square.clone(), rectangle(5, 1, 7, 2)], over_rect).expect("generic"),
        from_curves("r2_straddle_b", &[square, rectangle(2, 1, 4, 2)], over_rect).expect("generic"),
        closure_at("r2_trefoil_a", 3, &[1, 1, 1], 0, 0),
        closure_at("r2_trefoil_b", 3, &[1, 1, 1, 2, -2], 0, 0),
        closure_at("r3_a", 3, &[1, 2, 1], 0, 0),
        closure_at("r3_b", 3, &[2, 1, 2], 0, 0),
        closure_at("r3_mixed_a", 3, &[-1, 2, 1], 0, 0),
        closure_at("r3_mixed_b", 3, &[2, 1, -2], 0, 0),
        closure_at("r3_planar_a", 3, &[1, 2, 1], 0, 80),
        closure_at("r3_planar_b", 3, &[2, 1, 2], 0, 80),
    ]
}

fn relocate(f: &DiagramFile, name: &str, x: i64, y: i64) -> DiagramFile {
    let shift = |c: &[Coord; 2]| [Coord(&c[0].0 + q(x)), Coord(&c[1].0 + q(y))];
    DiagramFile {
        name: Some(name.to_string()),
        edges: f.edges.iter().map(|(k, v)| (k.clone(), v.iter().map(shift).collect())).collect(),
        ..f.clone()
    }
}

/// Reidemeister-related pairs in [`corpus`]: (move, first, second).
pub const REIDEMEISTER_PAIRS: &[(&str, &str, &str)] = &[
    ("R1", "r1_essential_a", "r1_essential_b"),
    ("R1", "r1_essential_neg_a", "r1_essential_neg_b"),
    ("R1", "r1_trivial_a", "r1_trivial_b"),
    ("R2", "r2_braid_a", "r2_braid_b"),
    ("R2", "r2_straddle_a", "r2_straddle_b"),
    ("R2", "r2_trefoil_a", "r2_trefoil_b"),
    ("R3", "r3_a", "r3_b"),
    ("R3", "r3_mixed_a", "r3_mixed_b"),
    ("R3", "r3_planar_a", "r3_planar_b"),
];
