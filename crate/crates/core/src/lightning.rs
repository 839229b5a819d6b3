//! Lightnings, the E-operator, and the collapse map.
//!
//! Planar sets are studied through their bipartite view: every distinct
//! x-coordinate and every distinct y-coordinate is a node, every point is an
//! edge joining its x-node to its y-node. A lightning is then a walk whose
//! consecutive edges are distinct, a closed lightning is a cycle, and the E
//! operator deletes every edge incident to a node of degree one.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::points::{Point, PointSet};
use crate::Rational;

/// Which coordinate is shared across the first step `a_1 -> a_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FirstTransition {
    /// `y(a_1) = y(a_2)`, the parity of the classical definition.
    YEqual,
    XEqual,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lightning {
    pub indices: Vec<usize>,
    pub first_transition: FirstTransition,
}

impl Lightning {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Checks the alternation against the coordinates of `k`.
    pub fn is_valid_in(&self, k: &PointSet) -> bool {
        is_lightning(k, &self.indices, self.first_transition)
    }
}

/// A closed lightning `a_1, ..., a_{2l+1}` with `a_1 = a_{2l+1}`, stored with
/// the repeated index at both ends and transition 1 sharing y.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedLightning {
    pub indices: Vec<usize>,
}

impl ClosedLightning {
    /// Number of distinct steps, `2l`.
    pub fn steps(&self) -> usize {
        self.indices.len() - 1
    }

    pub fn is_valid_in(&self, k: &PointSet) -> bool {
        let n = self.indices.len();
        n >= 5
            && n % 2 == 1
            && self.indices[0] == self.indices[n - 1]
            && is_lightning(k, &self.indices, FirstTransition::YEqual)
    }

    /// `f(a_1) - f(a_2) + ... - f(a_{2l})`.
    pub fn alternating_sum(&self, f: &crate::Valuation) -> Rational {
        let mut s = Rational::from_integer(0.into());
        for (i, &p) in self.indices[..self.steps()].iter().enumerate() {
            if i % 2 == 0 {
                s += &f[p];
            } else {
                s -= &f[p];
            }
        }
        s
    }
}

pub(crate) fn is_lightning(k: &PointSet, idx: &[usize], first: FirstTransition) -> bool {
    if k.dim() != 2 || idx.iter().any(|&i| i >= k.len()) {
        return false;
    }
    idx.windows(2).enumerate().all(|(t, w)| {
        let (a, b) = (k.get(w[0]), k.get(w[1]));
        let y_step = (t % 2 == 0) == (first == FirstTransition::YEqual);
        w[0] != w[1]
            && if y_step {
                a.y() == b.y()
            } else {
                a.x() == b.x()
            }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LightningLength {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EIterationReport {
    /// `|E^k(K)|` for k = 0, 1, ... until empty or stable.
    pub sizes: Vec<usize>,
    /// Least n with `E^n(K)` empty.
    pub index: Option<usize>,
    /// The stable residue when it is nonempty.
    pub core: Option<PointSet>,
}

/// Rows/columns as nodes, points as edges.
#[derive(Debug, Clone)]
pub struct BipartiteView {
    pub x_values: Vec<Rational>,
    pub y_values: Vec<Rational>,
    /// Per point: (x node, y node); y nodes are offset by `x_values.len()`.
    pub ends: Vec<(usize, usize)>,
    /// Per node: (neighbour node, point index).
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl BipartiteView {
    pub fn new(k: &PointSet) -> Result<Self> {
        require_dim(k, &[2])?;
        let idx = k.axis_index();
        let nx = idx[0].len();
        let mut adj = vec![Vec::new(); nx + idx[1].len()];
        let ends: Vec<(usize, usize)> = k
            .iter()
            .map(|p| (idx[0][p.x()], nx + idx[1][p.y()]))
            .collect();
        for (e, &(u, v)) in ends.iter().enumerate() {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        Ok(BipartiteView {
            x_values: k.axis_values(0),
            y_values: k.axis_values(1),
            ends,
            adj,
        })
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_y_node(&self, node: usize) -> bool {
        node >= self.x_values.len()
    }

    pub fn is_forest(&self) -> bool {
        let mut uf = crate::linalg::UnionFind::new(self.node_count());
        self.ends.iter().all(|&(u, v)| uf.union(u, v))
    }

    /// Connected components as lists of nodes, each sorted, in order of the
    /// smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.node_count()];
        let mut out = Vec::new();
        for s in 0..self.node_count() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS from `src` ignoring edge `skip`; returns (dist, parent edge) per node.
    fn bfs(&self, src: usize, skip: Option<usize>) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
        let mut dist = vec![usize::MAX; self.node_count()];
        let mut parent = vec![None; self.node_count()];
        dist[src] = 0;
        let mut q = VecDeque::from([src]);
        while let Some(u) = q.pop_front() {
            for &(v, e) in &self.adj[u] {
                if Some(e) != skip && dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = Some((u, e));
                    q.push_back(v);
                }
            }
        }
        (dist, parent)
    }

    /// Edges along the BFS tree path from the BFS source to `to`.
    fn path_edges(parent: &[Option<(usize, usize)>], to: usize) -> Vec<usize> {
        let mut edges = Vec::new();
        let mut cur = to;
        while let Some((p, e)) = parent[cur] {
            edges.push(e);
            cur = p;
        }
        edges.reverse();
        edges
    }

    /// Points of a shortest cycle in cyclic order, or `None` on a forest.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for (e, &(u, v)) in self.ends.iter().enumerate() {
            let (dist, parent) = self.bfs(u, Some(e));
            if dist[v] == usize::MAX {
                continue;
            }
            if best.as_ref().is_some_and(|b| b.len() <= dist[v] + 1) {
                continue;
            }
            let mut cycle = Self::path_edges(&parent, v);
            cycle.push(e);
            best = Some(cycle);
        }
        best
    }

    /// Cycle closed by edge `e` in the BFS forest rooted at the given roots:
    /// tree path between the endpoints of `e`, then `e`.
    pub(crate) fn fundamental_cycle(
        &self,
        parent: &[Option<(usize, usize)>],
        depth: &[usize],
        e: usize,
    ) -> Vec<usize> {
        let (mut u, mut v) = self.ends[e];
        let (mut up, mut down) = (Vec::new(), Vec::new());
        while depth[u] > depth[v] {
            let (p, pe) = parent[u].expect("non-root has a parent");
            up.push(pe);
            u = p;
        }
        while depth[v] > depth[u] {
            let (p, pe) = parent[v].expect("non-root has a parent");
            down.push(pe);
            v = p;
        }
        while u != v {
            let (pu, eu) = parent[u].expect("non-root has a parent");
            let (pv, ev) = parent[v].expect("non-root has a parent");
            up.push(eu);
            down.push(ev);
            u = pu;
            v = pv;
        }
        // walk: endpoint0 -> lca -> endpoint1, then e back to endpoint0
        down.reverse();
        up.extend(down);
        up.push(e);
        up
    }

    /// A longest simple path (as a list of points) when the view is a forest.
    pub fn longest_path(&self) -> Option<Vec<usize>> {
        if !self.is_forest() {
            return None;
        }
        let mut best: Vec<usize> = Vec::new();
        for comp in self.components() {
            let (d0, _) = self.bfs(comp[0], None);
            let far = *comp
                .iter()
                .max_by_key(|&&n| (d0[n], std::cmp::Reverse(n)))
                .expect("component is nonempty");
            let (d1, parent) = self.bfs(far, None);
            let other = *comp
                .iter()
                .max_by_key(|&&n| (d1[n], std::cmp::Reverse(n)))
                .expect("component is nonempty");
            if d1[other] > best.len() {
                best = Self::path_edges(&parent, other);
            }
        }
        Some(best)
    }
}

fn require_dim(k: &PointSet, allowed: &[usize]) -> Result<()> {
    if allowed.contains(&k.dim()) {
        Ok(())
    } else {
        Err(Error::DimensionUnsupported { dim: k.dim() })
    }
}

/// Points of `k` through which every axis-orthogonal line (d = 2) or plane
/// (d = 3) meets `k` at least twice.
pub fn e_step(k: &PointSet) -> Result<PointSet> {
    require_dim(k, &[2, 3])?;
    let keep = e_survivors(k);
    Ok(k.subset(keep))
}

fn e_survivors(k: &PointSet) -> Vec<usize> {
    let counts: Vec<std::collections::BTreeMap<&Rational, usize>> = (0..k.dim())
        .map(|a| {
            let mut m = std::collections::BTreeMap::new();
            for p in k {
                *m.entry(&p.coords()[a]).or_insert(0) += 1;
            }
            m
        })
        .collect();
    (0..k.len())
        .filter(|&i| {
            k.get(i)
                .coords()
                .iter()
                .zip(&counts)
                .all(|(c, m)| m[c] >= 2)
        })
        .collect()
}

/// Iterates [`e_step`] until the set is empty or stops shrinking.
pub fn e_iterate(k: &PointSet) -> Result<EIterationReport> {
    require_dim(k, &[2, 3])?;
    let mut cur = k.clone();
    let mut sizes = vec![cur.len()];
    loop {
        if cur.is_empty() {
            return Ok(EIterationReport {
                index: Some(sizes.len() - 1),
                sizes,
                core: None,
            });
        }
        let next = e_step(&cur)?;
        if next.len() == cur.len() {
            return Ok(EIterationReport {
                sizes,
                index: None,
                core: Some(cur),
            });
        }
        sizes.push(next.len());
        cur = next;
    }
}

/// Maximum number of points in a lightning contained in `k`, over both
/// starting parities. Infinite exactly when `k` has a closed lightning.
pub fn max_lightning_length(k: &PointSet) -> Result<LightningLength> {
    let view = BipartiteView::new(k)?;
    Ok(match view.longest_path() {
        Some(path) => LightningLength::Finite(path.len()),
        None => LightningLength::Infinite,
    })
}

/// A longest lightning when `k` has none of unbounded length.
pub fn longest_lightning(k: &PointSet) -> Result<Option<Lightning>> {
    let view = BipartiteView::new(k)?;
    Ok(view.longest_path().map(|path| {
        let first_transition = match path.as_slice() {
            [a, b, ..] if k.get(*a).x() == k.get(*b).x() => FirstTransition::XEqual,
            _ => FirstTransition::YEqual,
        };
        Lightning {
            indices: path,
            first_transition,
        }
    }))
}

/// Orients a cycle of points (cyclic order) as a closed lightning with a
/// y-step first, choosing the lexicographically least index sequence.
pub(crate) fn orient_cycle(k: &PointSet, cycle: &[usize]) -> ClosedLightning {
    let m = cycle.len();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..m {
        for forward in [true, false] {
            let seq: Vec<usize> = (0..=m)
                .map(|i| {
                    let j = if forward {
                        (start + i) % m
                    } else {
                        (start + m - i % m) % m
                    };
                    cycle[j]
                })
                .collect();
            if k.get(seq[0]).y() != k.get(seq[1]).y() {
                continue;
            }
            if best.as_ref().is_none_or(|b| seq < *b) {
                best = Some(seq);
            }
        }
    }
    ClosedLightning {
        indices: best.expect("an even cycle has a y-first orientation"),
    }
}

/// A shortest closed lightning of `k`, if any.
pub fn find_closed_lightning(k: &PointSet) -> Result<Option<ClosedLightning>> {
    let view = BipartiteView::new(k)?;
    Ok(view.shortest_cycle().map(|c| orient_cycle(k, &c)))
}

/// The vertical strip `[a; b] x R` together with the level `c` of the
/// horizontal segment `[a; b] x c` that the collapse lemma sets aside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strip {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Strip {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if a > b {
            return Err(Error::Input(format!("strip bounds reversed: {a} > {b}")));
        }
        Ok(Strip { a, b, c })
    }

    /// The collapse map `q`.
    pub fn map_point(&self, p: &Point) -> Point {
        let x = p.x();
        let nx = if x < &self.a {
            x.clone()
        } else if x <= &self.b {
            self.a.clone()
        } else {
            x - (&self.b - &self.a)
        };
        Point::new(vec![nx, p.y().clone()])
    }

    pub fn on_segment(&self, p: &Point) -> bool {
        p.y() == &self.c && p.x() >= &self.a && p.x() <= &self.b
    }

    /// Two points of `k` off the segment `[a; b] x c` with equal images, if any.
    pub fn collision_off_segment(&self, k: &PointSet) -> Option<(usize, usize)> {
        let mut seen: std::collections::BTreeMap<Point, usize> = Default::default();
        for (i, p) in k.iter().enumerate() {
            if self.on_segment(p) {
                continue;
            }
            if let Some(&j) = seen.get(&self.map_point(p)) {
                return Some((j, i));
            }
            seen.insert(self.map_point(p), i);
        }
        None
    }
}

/// Applies `q` pointwise; points with equal images merge.
pub fn collapse(k: &PointSet, strip: &Strip) -> Result<PointSet> {
    require_dim(k, &[2])?;
    PointSet::from_points_dedup(2, k.iter().map(|p| strip.map_point(p)).collect())
}
