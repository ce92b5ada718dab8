//! Exact planar predicates on grid coordinates.
//!
//! Coordinates are integer numerators on the workspace grid; every predicate
//! is evaluated in `i128` so no rounding enters any decision.

use std::cmp::Ordering;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Coord {
    pub x: i64,
    pub y: i64,
}

impl Coord {
    pub const fn new(x: i64, y: i64) -> Self {
        Coord { x, y }
    }

    fn doubled(self) -> Coord {
        Coord::new(self.x * 2, self.y * 2)
    }
}

/// Sign of the cross product `(b - a) × (c - a)`: positive for a left turn.
pub fn orient(a: Coord, b: Coord, c: Coord) -> Ordering {
    let abx = i128::from(b.x) - i128::from(a.x);
    let aby = i128::from(b.y) - i128::from(a.y);
    let acx = i128::from(c.x) - i128::from(a.x);
    let acy = i128::from(c.y) - i128::from(a.y);
    (abx * acy - aby * acx).cmp(&0)
}

/// True when `p` lies on the closed segment `ab`.
pub fn on_segment(a: Coord, b: Coord, p: Coord) -> bool {
    orient(a, b, p) == Ordering::Equal
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// True when closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: Coord, b: Coord, c: Coord, d: Coord) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
    {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// True when two segments that share exactly the endpoint `shared` meet
/// anywhere else, i.e. they overlap along a common line.
pub fn overlap_beyond_shared(shared: Coord, p: Coord, q: Coord) -> bool {
    // segments shared→p and shared→q
    orient(shared, p, q) == Ordering::Equal
        && (on_segment(shared, p, q) || on_segment(shared, q, p))
}

/// Twice the signed area (shoelace); positive for counterclockwise rings.
pub fn signed_area2(ring: &[Coord]) -> i128 {
    let n = ring.len();
    (0..n)
        .map(|i| {
            let a = ring[i];
            let b = ring[(i + 1) % n];
            i128::from(a.x) * i128::from(b.y) - i128::from(b.x) * i128::from(a.y)
        })
        .sum()
}

/// True when every point of `ring` lies on one line.
pub fn all_collinear(ring: &[Coord]) -> bool {
    match ring {
        [] | [_] | [_, _] => true,
        [a, rest @ ..] => match rest.iter().find(|p| *p != a) {
            None => true,
            Some(&b) => ring.iter().all(|&p| orient(*a, b, p) == Ordering::Equal),
        },
    }
}

/// A closed ring is simple when consecutive edges meet only at their shared
/// vertex and non-consecutive edges do not meet at all.
pub fn is_simple(ring: &[Coord]) -> bool {
    let n = ring.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if ring[i] == ring[j] {
                return false;
            }
        }
    }
    let edge = |i: usize| (ring[i], ring[(i + 1) % n]);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = edge(i);
            let (c, d) = edge(j);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // shared vertex is b == c (j = i+1) or a == d (wraparound)
                let (shared, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if overlap_beyond_shared(shared, p, q) {
                    return false;
                }
            } else if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Position of a point relative to a simple polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Ray casting towards +x with exact crossing tests; boundary points are
/// reported separately and never count as inside.
pub fn locate(p: Coord, ring: &[Coord]) -> Location {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if on_segment(a, b, p) {
            return Location::Boundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            // crossing x is right of p iff (p.y-a.y)(b.x-a.x) > (p.x-a.x)(b.y-a.y) for b.y > a.y
            let lhs = (i128::from(p.y) - i128::from(a.y)) * (i128::from(b.x) - i128::from(a.x));
            let rhs = (i128::from(p.x) - i128::from(a.x)) * (i128::from(b.y) - i128::from(a.y));
            let right = if b.y > a.y { lhs > rhs } else { lhs < rhs };
            if right {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Midpoint of `ab` on a grid doubled in resolution, for use with a ring
/// passed through [`double`].
pub fn doubled_midpoint(a: Coord, b: Coord) -> Coord {
    Coord::new(a.x + b.x, a.y + b.y)
}

pub fn double(ring: &[Coord]) -> Vec<Coord> {
    ring.iter().map(|c| c.doubled()).collect()
}
