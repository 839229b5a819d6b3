//! Explicit basic embeddings of R_n in the plane with exact rational
//! coordinates, their self-check, sampling and SVG output.
//!
//! Layout in local coordinates: center (0,0), pendant arm to (1,0), arm A to
//! (2,2), arm B to (-4,4), arm C to (4,-4). Unit frames sit at the three arm
//! tips, each extending away from the center. A copy of the child complex is
//! scaled by 1/12 and glued at the tip of its own arm B.

mod svg;

use std::fmt;
use std::ops::Range;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graphs::Multigraph;
use crate::points::{Point, PointSet};
use crate::rational::{frac, int};
use crate::Rational;

pub use svg::{emit_svg, svg_for_complex, svg_for_points, SvgOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
    /// The edge of R_n (by path labels) this segment lies on.
    pub tag: (String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameName {
    A,
    B,
    C,
    Pendant,
}

impl fmt::Display for FrameName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameName::A => "A",
            FrameName::B => "B",
            FrameName::C => "C",
            FrameName::Pendant => "pendant",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
        })
    }
}

/// An axis-parallel square frame and the segments of the copy placed in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub corner: Point,
    pub side: Rational,
    pub content: Option<Range<usize>>,
}

impl Frame {
    fn interval(&self, axis: Axis) -> (Rational, Rational) {
        let lo = match axis {
            Axis::X => self.corner.x().clone(),
            Axis::Y => self.corner.y().clone(),
        };
        let hi = &lo + &self.side;
        (lo, hi)
    }

    fn contains(&self, p: &Point) -> bool {
        let (x0, x1) = self.interval(Axis::X);
        let (y0, y1) = self.interval(Axis::Y);
        *p.x() >= x0 && *p.x() <= x1 && *p.y() >= y0 && *p.y() <= y1
    }
}

/// The frames of one skeleton instance, in world coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramePlacement {
    pub level: usize,
    pub center: String,
    pub pendant_x: (Rational, Rational),
    /// Frames A, B, C.
    pub frames: [Frame; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentComplex {
    pub n: usize,
    pub segments: Vec<Segment>,
    pub placements: Vec<FramePlacement>,
}

/// `p -> offset + scale * p`, with a signed scale per axis.
#[derive(Debug, Clone)]
struct Affine {
    offset: [Rational; 2],
    scale: [Rational; 2],
}

impl Affine {
    fn identity() -> Self {
        Affine {
            offset: [Rational::zero(), Rational::zero()],
            scale: [Rational::one(), Rational::one()],
        }
    }

    fn apply(&self, x: &Rational, y: &Rational) -> Point {
        Point::new(vec![
            &self.offset[0] + &self.scale[0] * x,
            &self.offset[1] + &self.scale[1] * y,
        ])
    }

    fn then(&self, inner: &Affine) -> Affine {
        Affine {
            offset: [
                &self.offset[0] + &self.scale[0] * &inner.offset[0],
                &self.offset[1] + &self.scale[1] * &inner.offset[1],
            ],
            scale: [
                &self.scale[0] * &inner.scale[0],
                &self.scale[1] * &inner.scale[1],
            ],
        }
    }
}

struct Arm {
    tip: (i64, i64),
    sign: (i64, i64),
}

const ARMS: [Arm; 3] = [
    Arm {
        tip: (2, 2),
        sign: (1, 1),
    },
    Arm {
        tip: (-4, 4),
        sign: (-1, 1),
    },
    Arm {
        tip: (4, -4),
        sign: (1, -1),
    },
];

/// Local map of a child copy glued at the tip of `arm`: the child's own B tip
/// lands on the tip and the child extends into the frame.
fn child_map(arm: &Arm) -> Affine {
    let s = frac(1, 12);
    let (sx, sy) = (int(arm.sign.0) * &s, int(arm.sign.1) * &s);
    Affine {
        offset: [int(arm.tip.0) + int(4) * &sx, int(arm.tip.1) + int(4) * &sy],
        scale: [sx, -sy],
    }
}

struct Builder {
    segments: Vec<Segment>,
    placements: Vec<FramePlacement>,
}

impl Builder {
    fn push(&mut self, map: &Affine, to: (i64, i64), tag: (String, String)) {
        self.segments.push(Segment {
            a: map.apply(&Rational::zero(), &Rational::zero()),
            b: map.apply(&int(to.0), &int(to.1)),
            tag,
        });
    }

    /// One skeleton with center label `center`. `arm_labels` gives the R_n
    /// neighbour at the end of arms A, B, C; `fill` the depth of the copy to
    /// place in each frame (0 for none).
    fn skeleton(
        &mut self,
        map: &Affine,
        level: usize,
        center: &str,
        arm_labels: [String; 3],
        fill: [usize; 3],
    ) {
        let at = self.placements.len();
        let p0 = map.apply(&Rational::zero(), &Rational::zero());
        let p1 = map.apply(&Rational::one(), &Rational::zero());
        let (lo, hi) = if p0.x() <= p1.x() {
            (p0.x().clone(), p1.x().clone())
        } else {
            (p1.x().clone(), p0.x().clone())
        };
        let frames = ARMS.each_ref().map(|arm| {
            let near = map.apply(&int(arm.tip.0), &int(arm.tip.1));
            let far = map.apply(&int(arm.tip.0 + arm.sign.0), &int(arm.tip.1 + arm.sign.1));
            let corner = Point::new(vec![
                near.x().min(far.x()).clone(),
                near.y().min(far.y()).clone(),
            ]);
            Frame {
                corner,
                side: map.scale[0].abs(),
                content: None,
            }
        });
        self.placements.push(FramePlacement {
            level,
            center: center.to_string(),
            pendant_x: (lo, hi),
            frames,
        });
        self.push(map, (1, 0), (center.to_string(), format!("{center}.p")));
        for (i, arm) in ARMS.iter().enumerate() {
            let (a, b) = if i == 1 && arm_labels[1].len() < center.len() {
                (arm_labels[1].clone(), center.to_string())
            } else {
                (center.to_string(), arm_labels[i].clone())
            };
            self.push(map, arm.tip, (a, b));
        }
        for (i, arm) in ARMS.iter().enumerate() {
            if fill[i] == 0 {
                continue;
            }
            let start = self.segments.len();
            let child = arm_labels[i].clone();
            self.copy(
                &map.then(&child_map(arm)),
                level + 1,
                center,
                &child,
                fill[i],
            );
            self.placements[at].frames[i].content = Some(start..self.segments.len());
        }
    }

    /// The branch complex P_k: arm B leads back to `parent`, arms A and C to
    /// the children `center.0` and `center.1`.
    fn copy(&mut self, map: &Affine, level: usize, parent: &str, center: &str, k: usize) {
        let labels = [
            format!("{center}.0"),
            parent.to_string(),
            format!("{center}.1"),
        ];
        let d = k - 1;
        self.skeleton(map, level, center, labels, [d, 0, d]);
    }
}

/// The complex for R_n: the diagonal for n = 0, otherwise a skeleton with
/// copies of depth n - 1 in all three frames.
pub fn generate_rn_embedding(n: usize) -> SegmentComplex {
    let mut b = Builder {
        segments: Vec::new(),
        placements: Vec::new(),
    };
    if n == 0 {
        b.segments.push(Segment {
            a: Point::from_ints(&[-7, -7]),
            b: Point::from_ints(&[5, 5]),
            tag: ("r".into(), "r.p".into()),
        });
    } else {
        let labels = ["r.0", "r.1", "r.2"].map(String::from);
        b.skeleton(&Affine::identity(), 0, "r", labels, [n - 1; 3]);
    }
    SegmentComplex {
        n,
        segments: b.segments,
        placements: b.placements,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Overlap {
        placement: usize,
        first: FrameName,
        second: FrameName,
        axis: Axis,
    },
    Escape {
        placement: usize,
        frame: FrameName,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Overlap {
                placement,
                first,
                second,
                axis,
            } => write!(
                f,
                "{first} and {second} overlap on {axis} (placement {placement})"
            ),
            Violation::Escape { placement, frame } => {
                write!(f, "copy leaves frame {frame} (placement {placement})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub placements_checked: usize,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn disjoint(a: &(Rational, Rational), b: &(Rational, Rational)) -> bool {
    a.1 < b.0 || b.1 < a.0
}

/// Checks every placement: the frames' x-projections are pairwise disjoint
/// and miss the pendant arm's x-projection, the y-projections are pairwise
/// disjoint, and each placed copy stays inside its frame.
pub fn validate_projection_constraints(sc: &SegmentComplex) -> ValidationReport {
    const NAMES: [FrameName; 3] = [FrameName::A, FrameName::B, FrameName::C];
    for (pi, pl) in sc.placements.iter().enumerate() {
        let overlap = |first, second, axis| {
            Some(Violation::Overlap {
                placement: pi,
                first,
                second,
                axis,
            })
        };
        for axis in [Axis::X, Axis::Y] {
            for i in 0..3 {
                for j in i + 1..3 {
                    let (a, b) = (pl.frames[i].interval(axis), pl.frames[j].interval(axis));
                    if !disjoint(&a, &b) {
                        return ValidationReport {
                            placements_checked: pi,
                            violation: overlap(NAMES[i], NAMES[j], axis),
                        };
                    }
                }
            }
            if axis == Axis::X {
                for i in 0..3 {
                    if !disjoint(&pl.frames[i].interval(Axis::X), &pl.pendant_x) {
                        return ValidationReport {
                            placements_checked: pi,
                            violation: overlap(NAMES[i], FrameName::Pendant, Axis::X),
                        };
                    }
                }
            }
        }
        for (i, fr) in pl.frames.iter().enumerate() {
            let Some(range) = &fr.content else { continue };
            let inside = sc.segments[range.clone()]
                .iter()
                .all(|s| fr.contains(&s.a) && fr.contains(&s.b));
            if !inside {
                return ValidationReport {
                    placements_checked: pi,
                    violation: Some(Violation::Escape {
                        placement: pi,
                        frame: NAMES[i],
                    }),
                };
            }
        }
    }
    ValidationReport {
        placements_checked: sc.placements.len(),
        violation: None,
    }
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x())
}

/// Whether two segments meet anywhere other than at an endpoint shared by
/// both.
fn bad_contact(s: &Segment, t: &Segment) -> bool {
    let shared = |p: &Point| (p == &s.a || p == &s.b) && (p == &t.a || p == &t.b);
    let d1 = cross(&s.a, &s.b, &t.a);
    let d2 = cross(&s.a, &s.b, &t.b);
    let d3 = cross(&t.a, &t.b, &s.a);
    let d4 = cross(&t.a, &t.b, &s.b);
    if d1.is_zero() && d2.is_zero() {
        // collinear: compare parameter intervals along s
        let dir = [s.b.x() - s.a.x(), s.b.y() - s.a.y()];
        let param = |p: &Point| (p.x() - s.a.x()) * &dir[0] + (p.y() - s.a.y()) * &dir[1];
        let len = param(&s.b);
        let (u0, u1) = (param(&t.a), param(&t.b));
        let (lo, hi) = if u0 <= u1 { (u0, u1) } else { (u1, u0) };
        let lo = lo.max(Rational::zero());
        let hi = hi.min(len);
        if lo > hi {
            return false;
        }
        if lo < hi {
            return true;
        }
        let p = if lo.is_zero() { &s.a } else { &s.b };
        return !shared(p);
    }
    let straddle = |u: &Rational, v: &Rational| {
        !(u.is_positive() && v.is_positive()) && !(u.is_negative() && v.is_negative())
    };
    if !(straddle(&d1, &d2) && straddle(&d3, &d4)) {
        return false;
    }
    let touch = [
        (d3.is_zero(), &s.a),
        (d4.is_zero(), &s.b),
        (d1.is_zero(), &t.a),
        (d2.is_zero(), &t.b),
    ];
    match touch.iter().find(|(z, _)| *z) {
        Some((_, p)) => !shared(p),
        None => true,
    }
}

/// First pair of segments that meet outside a shared endpoint.
pub fn find_improper_intersection(sc: &SegmentComplex) -> Option<(usize, usize)> {
    let segs = &sc.segments;
    (0..segs.len()).find_map(|i| {
        (i + 1..segs.len())
            .find(|&j| bad_contact(&segs[i], &segs[j]))
            .map(|j| (i, j))
    })
}

/// `k` equally spaced points on every segment, endpoints included; shared
/// points appear once.
pub fn discretize(sc: &SegmentComplex, k: usize) -> Result<PointSet> {
    if k < 2 {
        return Err(Error::Input("need at least 2 samples per segment".into()));
    }
    let steps = int(k as i64 - 1);
    let mut pts = Vec::with_capacity(sc.segments.len() * k);
    for s in &sc.segments {
        let (dx, dy) = (s.b.x() - s.a.x(), s.b.y() - s.a.y());
        for i in 0..k {
            let t = int(i as i64) / &steps;
            pts.push(Point::new(vec![s.a.x() + &dx * &t, s.a.y() + &dy * &t]));
        }
    }
    PointSet::from_points_dedup(2, pts)
}

/// The graph whose vertices are segment endpoints and whose edges are the
/// segments.
pub fn underlying_graph(sc: &SegmentComplex) -> Multigraph {
    let edges: Vec<(String, String)> = sc
        .segments
        .iter()
        .map(|s| (s.a.to_string(), s.b.to_string()))
        .collect();
    Multigraph::from_edges(&[] as &[String], &edges)
}

/// The graph spanned by the segment tags: R_n with its path labels when the
/// construction is consistent.
pub fn tag_graph(sc: &SegmentComplex) -> Multigraph {
    let mut tags: Vec<(String, String)> = sc.segments.iter().map(|s| s.tag.clone()).collect();
    tags.sort();
    tags.dedup();
    Multigraph::from_edges(&[] as &[String], &tags)
}

impl SegmentComplex {
    /// Distinct segment endpoints in sorted order.
    pub fn vertices(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self
            .segments
            .iter()
            .flat_map(|s| [s.a.clone(), s.b.clone()])
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Per segment, the indices of its endpoints in [`SegmentComplex::vertices`].
    pub fn incidence(&self) -> Vec<(usize, usize)> {
        let v = self.vertices();
        let at = |p: &Point| v.binary_search(p).unwrap();
        self.segments.iter().map(|s| (at(&s.a), at(&s.b))).collect()
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "level: {}\nsegments: {}\nvertices: {}\nplacements: {}\n",
            self.n,
            self.segments.len(),
            self.vertices().len(),
            self.placements.len()
        );
        for s in &self.segments {
            out += &format!("segment {} {} {}-{}\n", s.a, s.b, s.tag.0, s.tag.1);
        }
        out
    }
}
