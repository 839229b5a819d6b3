#![allow(dead_code)]

use basicity::graphs::Multigraph;
use basicity::rational::{frac, int};
use basicity::{Point, PointSet, Rational, Valuation};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn grid_set(rng: &mut impl Rng, max_len: usize, side: i64) -> PointSet {
    let mut cells: Vec<(i64, i64)> = (0..side)
        .flat_map(|x| (0..side).map(move |y| (x, y)))
        .collect();
    cells.shuffle(rng);
    let n = rng.gen_range(0..=max_len);
    PointSet::new(
        2,
        cells[..n]
            .iter()
            .map(|&(x, y)| Point::from_ints(&[x, y]))
            .collect(),
    )
    .unwrap()
}

/// Adds grid cells in random order, skipping any that would close a cycle in
/// the row/column graph.
pub fn acyclic_set(rng: &mut impl Rng, max_len: usize, side: i64) -> PointSet {
    let n = rng.gen_range(1..=max_len);
    let mut parent: Vec<usize> = (0..2 * side as usize).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut cells: Vec<(i64, i64)> = (0..side)
        .flat_map(|x| (0..side).map(move |y| (x, y)))
        .collect();
    cells.shuffle(rng);
    let mut pts = Vec::new();
    for (x, y) in cells {
        if pts.len() == n {
            break;
        }
        let (a, b) = (
            find(&mut parent, x as usize),
            find(&mut parent, (side + y) as usize),
        );
        if a != b {
            parent[a] = b;
            pts.push(Point::from_ints(&[x, y]));
        }
    }
    PointSet::new(2, pts).unwrap()
}

pub fn random_set_3d(rng: &mut impl Rng, max_len: usize, side: i64) -> PointSet {
    let mut pts: Vec<Point> = (0..rng.gen_range(0..=max_len))
        .map(|_| {
            Point::from_ints(&[
                rng.gen_range(0..side),
                rng.gen_range(0..side),
                rng.gen_range(0..side),
            ])
        })
        .collect();
    pts.sort();
    pts.dedup();
    PointSet::new(3, pts).unwrap()
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    frac(rng.gen_range(-50..=50), rng.gen_range(1..=9))
}

pub fn random_valuation(rng: &mut impl Rng, n: usize) -> Valuation {
    Valuation::new((0..n).map(|_| random_rational(rng)).collect())
}

pub fn small_int_valuation(rng: &mut impl Rng, n: usize) -> Valuation {
    Valuation::new((0..n).map(|_| int(rng.gen_range(-9..=9))).collect())
}

pub fn random_tree(rng: &mut impl Rng, max_vertices: usize) -> Multigraph {
    let n = rng.gen_range(2..=max_vertices);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    basicity::graphs::canon::tree_from_prufer(&seq)
}

/// Longest alternating walk by exhaustive search: consecutive points
/// distinct, transitions alternate between sharing x and sharing y, points
/// may repeat. Returns None once a walk longer than `cap` exists.
pub fn brute_force_longest(k: &PointSet, cap: usize) -> Option<usize> {
    fn go(
        k: &PointSet,
        last: usize,
        share_x: bool,
        len: usize,
        cap: usize,
        best: &mut usize,
    ) -> bool {
        *best = (*best).max(len);
        if len > cap {
            return false;
        }
        for j in 0..k.len() {
            if j == last {
                continue;
            }
            let (p, q) = (k.get(last), k.get(j));
            let ok = if share_x {
                p.x() == q.x()
            } else {
                p.y() == q.y()
            };
            if ok && !go(k, j, !share_x, len + 1, cap, best) {
                return false;
            }
        }
        true
    }
    let mut best = 0;
    for i in 0..k.len() {
        for share_x in [true, false] {
            if !go(k, i, share_x, 1, cap, &mut best) {
                return None;
            }
        }
    }
    Some(best)
}

/// Level `i` of the staircase: `(m_{i,2l}, m_{i,2l})` and
/// `(m_{i,2l}, m_{i,2l-2})` for `l = 1..2^{i-1}`.
pub fn staircase_level(i: u32) -> PointSet {
    let m = |j: i64| {
        int(2) - int(3) * Rational::new(1.into(), (1i64 << i).into())
            + Rational::new(j.into(), (1i64 << (2 * i)).into())
    };
    let mut pts = Vec::new();
    for l in 1..=(1i64 << (i - 1)) {
        pts.push(Point::new(vec![m(2 * l), m(2 * l)]));
        pts.push(Point::new(vec![m(2 * l), m(2 * l - 2)]));
    }
    PointSet::new(2, pts).unwrap()
}

/// `a_{2k+1} = (k,k)`, `a_{2k+2} = (k,k+1)`; `len` points.
pub fn lemma_staircase(len: usize) -> (Vec<Point>, PointSet) {
    let pts: Vec<Point> = (0..len)
        .map(|i| {
            let k = (i / 2) as i64;
            if i % 2 == 0 {
                Point::from_ints(&[k, k])
            } else {
                Point::from_ints(&[k, k + 1])
            }
        })
        .collect();
    let set = PointSet::new(2, pts.clone()).unwrap();
    (pts, set)
}

/// Values listed along `order`, placed at their canonical indices in `k`.
pub fn valuation_in_order(k: &PointSet, order: &[Point], values: &[Rational]) -> Valuation {
    let mut v = vec![int(0); k.len()];
    for (p, f) in order.iter().zip(values) {
        v[k.index_of(p).unwrap()] = f.clone();
    }
    Valuation::new(v)
}
