//! The Farey graph: adjacency, circular order and minimal geodesics from
//! `-p/q` to `0`.
//!
//! Counterclockwise means increasing real value, wrapping from `+∞` through
//! `∞` to `-∞`.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rational::{mod_inverse, LensSpace, Slope};

/// `|ad - bc| = 1` for distinct slopes `a/b`, `c/d`.
pub fn is_farey_edge(s: Slope, t: Slope) -> Result<bool> {
    if s == t {
        return Err(invalid(format!("is_farey_edge({s}, {s}): slopes must differ")));
    }
    Ok(adjacent(s, t))
}

pub(crate) fn adjacent(s: Slope, t: Slope) -> bool {
    let det = s.num() as i128 * t.den() as i128 - s.den() as i128 * t.num() as i128;
    det.abs() == 1
}

/// Compares `x` and `y` by their position when walking counterclockwise from
/// `from`; `from` itself comes first.
pub fn ccw_cmp(from: Slope, x: Slope, y: Slope) -> Ordering {
    let group = |s: Slope| {
        if s == from {
            0
        } else if s.cmp_extended(&from) == Ordering::Greater {
            1
        } else {
            2
        }
    };
    group(x).cmp(&group(y)).then_with(|| x.cmp_extended(&y))
}

/// Whether `x` lies strictly inside the arc traversed counterclockwise from
/// `a` to `b`.
pub fn ccw_in_open_arc(x: Slope, a: Slope, b: Slope) -> Result<bool> {
    if a == b {
        return Err(invalid(format!("degenerate arc ({a}, {b})")));
    }
    Ok(in_open_arc(x, a, b))
}

pub(crate) fn in_open_arc(x: Slope, a: Slope, b: Slope) -> bool {
    x != a && x != b && ccw_cmp(a, x, b) == Ordering::Less
}

/// A counterclockwise path of Farey-adjacent slopes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FareyPath {
    vertices: Vec<Slope>,
}

impl FareyPath {
    /// Checks adjacency and strict counterclockwise progress from the first
    /// vertex.
    pub fn new(vertices: Vec<Slope>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(invalid("a Farey path needs at least two vertices"));
        }
        let start = vertices[0];
        for w in vertices.windows(2) {
            if !adjacent(w[0], w[1]) {
                return Err(Error::InvariantViolation(format!(
                    "{} and {} are not Farey neighbours",
                    w[0], w[1]
                )));
            }
            if ccw_cmp(start, w[0], w[1]) != Ordering::Less {
                return Err(Error::InvariantViolation(format!(
                    "path does not move counterclockwise at {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(FareyPath { vertices })
    }

    pub fn vertices(&self) -> &[Slope] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (Slope, Slope)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn first(&self) -> Slope {
        self.vertices[0]
    }

    pub fn last(&self) -> Slope {
        *self.vertices.last().expect("length >= 2")
    }
}

fn require_nontrivial(lens: &LensSpace) -> Result<()> {
    if lens.p() < 2 {
        return Err(invalid(format!("L({lens}): need p >= 2")));
    }
    Ok(())
}

/// Farey neighbour of a negative slope `a/b` on its counterclockwise side
/// with the smallest denominator.
///
/// Right neighbours `c/d` satisfy `bc - ad = 1`, so `d` is pinned modulo `b`
/// and the smallest admissible `d` is unique.
fn next_vertex(current: Slope) -> Slope {
    let (a, b) = (current.num(), current.den());
    let d = if b == 1 {
        1
    } else {
        let inv = mod_inverse(a, b).expect("reduced slope");
        (-inv).rem_euclid(b)
    };
    let c = (1 + a * d) / b;
    debug_assert_eq!(b * c - a * d, 1);
    Slope::new(c, d).expect("d >= 1")
}

/// Minimal counterclockwise path from `-p/q` to `0`, built greedily.
pub fn minimal_path(lens: &LensSpace) -> Result<FareyPath> {
    require_nontrivial(lens)?;
    let mut current = Slope::lens_endpoint(lens);
    let mut vertices = vec![current];
    while current != Slope::ZERO {
        let next = next_vertex(current);
        if next.cmp_extended(&Slope::ZERO) == Ordering::Greater {
            return Err(Error::InvariantViolation(format!(
                "greedy step from {current} overshot 0"
            )));
        }
        vertices.push(next);
        current = next;
    }
    FareyPath::new(vertices)
}

/// Breadth-first shortest path from `-p/q` to `0` over every reduced slope in
/// `[-p/q, 0]` with denominator at most `q`, using only counterclockwise
/// steps.
pub fn bfs_minimal_path(lens: &LensSpace) -> Result<FareyPath> {
    require_nontrivial(lens)?;
    let (p, q) = (lens.p(), lens.q());
    let start = Slope::lens_endpoint(lens);

    let mut vertices = Vec::new();
    for den in 1..=q {
        // num/den >= -p/q  <=>  num >= -p·den/q
        let lo = -(p * den).div_euclid(q);
        for num in lo..=0 {
            if num * q < -p * den {
                continue;
            }
            let s = Slope::new(num, den).expect("den >= 1");
            if s.den() == den {
                vertices.push(s);
            }
        }
    }
    let index: HashMap<Slope, usize> = vertices.iter().enumerate().map(|(i, &s)| (s, i)).collect();

    let source = index[&start];
    let target = index[&Slope::ZERO];
    let mut parent = vec![usize::MAX; vertices.len()];
    parent[source] = source;
    let mut queue = VecDeque::from([source]);
    'search: while let Some(i) = queue.pop_front() {
        let (a, b) = (vertices[i].num(), vertices[i].den());
        for d in 1..=q {
            let top = 1 + a * d;
            if top % b != 0 {
                continue;
            }
            let Some(&j) = index.get(&Slope::new(top / b, d).expect("d >= 1")) else {
                continue;
            };
            if parent[j] == usize::MAX {
                parent[j] = i;
                if j == target {
                    break 'search;
                }
                queue.push_back(j);
            }
        }
    }
    if parent[target] == usize::MAX {
        return Err(Error::InvariantViolation(format!(
            "no counterclockwise path from {start} to 0"
        )));
    }
    let mut path = vec![Slope::ZERO];
    let mut at = target;
    while at != source {
        at = parent[at];
        path.push(vertices[at]);
    }
    path.reverse();
    FareyPath::new(path)
}

/// A fan of Farey neighbours `base + k·step` (`k ≥ 0`) converging to the
/// centre slope from one side.
struct Fan {
    base: (i64, i64),
    step: (i64, i64),
    ccw: bool,
}

/// The two fans covering every Farey neighbour of `r`.
fn neighbor_fans(r: Slope) -> [Fan; 2] {
    if r.is_infinite() {
        return [
            Fan {
                base: (0, 1),
                step: (1, 0),
                ccw: true,
            },
            Fan {
                base: (-1, 1),
                step: (-1, 0),
                ccw: false,
            },
        ];
    }
    let (x, y) = (r.num(), r.den());
    // parent u = c/d with yc - xd = 1 and 0 <= d < y; u lies clockwise-above r
    let d = if y == 1 {
        0
    } else {
        mod_inverse(-x, y).expect("reduced slope")
    };
    let c = (1 + x * d) / y;
    debug_assert_eq!(y * c - x * d, 1);
    [
        Fan {
            base: (c, d),
            step: (x, y),
            ccw: false,
        },
        Fan {
            base: (x - c, y - d),
            step: (x, y),
            ccw: true,
        },
    ]
}

/// Farey neighbours of `r` strictly inside the counterclockwise arc from `a`
/// to `b`, listed counterclockwise from `a`.
pub fn neighbors_in_arc(r: Slope, a: Slope, b: Slope) -> Result<Vec<Slope>> {
    if a == b {
        return Err(invalid(format!("degenerate arc ({a}, {b})")));
    }
    if r == a || r == b || in_open_arc(r, a, b) {
        return Err(Error::InfiniteNeighborSet(format!("{r} in [{a}, {b}]")));
    }
    let mut out = Vec::new();
    for fan in neighbor_fans(r) {
        for k in 0.. {
            let t = Slope::fan_step(fan.base, k, fan.step);
            let past = if fan.ccw {
                t == b || in_open_arc(t, b, r)
            } else {
                t == a || in_open_arc(t, r, a)
            };
            if past {
                break;
            }
            if in_open_arc(t, a, b) {
                out.push(t);
            }
        }
    }
    out.sort_by(|x, y| ccw_cmp(a, *x, *y));
    out.dedup();
    Ok(out)
}
