//! Detection of the three forbidden subgraphs: a cycle, the pentode T_5 and
//! the cross with branched ends C.

use std::collections::VecDeque;

use super::Multigraph;
use crate::linalg::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PentodeWitness {
    pub center: String,
    pub rays: Vec<String>,
}

/// A subdivided C: four paths leaving `center`, each ending at a branch
/// vertex, and two further neighbours of each branch vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossWitness {
    pub center: String,
    pub arms: Vec<Vec<String>>,
    pub ends: Vec<[String; 2]>,
}

impl CrossWitness {
    pub fn branch_vertices(&self) -> Vec<&str> {
        self.arms
            .iter()
            .map(|a| a.last().map_or("", String::as_str))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ForbiddenReport {
    /// Vertices of a cycle in cyclic order (a loop gives one vertex).
    pub cycle: Option<Vec<String>>,
    pub pentode: Option<PentodeWitness>,
    pub cross: Option<CrossWitness>,
}

impl ForbiddenReport {
    pub fn has_cycle(&self) -> bool {
        self.cycle.is_some()
    }

    pub fn has_t5(&self) -> bool {
        self.pentode.is_some()
    }

    pub fn has_c(&self) -> bool {
        self.cross.is_some()
    }

    pub fn any(&self) -> bool {
        self.has_cycle() || self.has_t5() || self.has_c()
    }
}

fn forest_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &w in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Cycle flag on `g`; the pentode and cross flags are computed on the
/// spanning forest kept by union-find in edge order (equal to `g` when `g`
/// is a forest).
pub fn forbidden_check(g: &Multigraph) -> ForbiddenReport {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut adj = vec![Vec::new(); n];
    let mut cycle = None;
    for &(a, b) in g.edges() {
        if uf.union(a, b) {
            adj[a].push(b);
            adj[b].push(a);
        } else if cycle.is_none() {
            let path = forest_path(&adj, a, b);
            cycle = Some(path.iter().map(|&v| g.label(v).to_string()).collect());
        }
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    let name = |v: usize| g.label(v).to_string();

    let pentode = (0..n).find(|&v| adj[v].len() >= 5).map(|v| PentodeWitness {
        center: name(v),
        rays: adj[v][..5].iter().map(|&w| name(w)).collect(),
    });

    let mut cross = None;
    'outer: for v in (0..n).filter(|&v| adj[v].len() >= 4) {
        let mut arms = Vec::new();
        let mut ends = Vec::new();
        for &w in &adj[v] {
            let mut parent = vec![usize::MAX; n];
            parent[v] = v;
            parent[w] = v;
            let mut queue = VecDeque::from([w]);
            let mut found = None;
            while let Some(u) = queue.pop_front() {
                if adj[u].len() >= 3 {
                    found = Some(u);
                    break;
                }
                for &x in &adj[u] {
                    if parent[x] == usize::MAX {
                        parent[x] = u;
                        queue.push_back(x);
                    }
                }
            }
            let Some(b) = found else { continue };
            let mut path = vec![b];
            while *path.last().unwrap() != v {
                path.push(parent[*path.last().unwrap()]);
            }
            path.reverse();
            let prev = path[path.len() - 2];
            let others: Vec<usize> = adj[b].iter().copied().filter(|&x| x != prev).collect();
            ends.push([name(others[0]), name(others[1])]);
            arms.push(path.into_iter().map(name).collect::<Vec<_>>());
            if arms.len() == 4 {
                cross = Some(CrossWitness {
                    center: name(v),
                    arms,
                    ends,
                });
                break 'outer;
            }
        }
    }

    ForbiddenReport {
        cycle,
        pentode,
        cross,
    }
}

/// True iff no forbidden subgraph is present; per component this is the
/// plane criterion for each tree of the forest.
pub fn is_basically_embeddable(g: &Multigraph) -> bool {
    !forbidden_check(g).any()
}

#[cfg(test)]
mod tests {
    use super::super::{build_fn, build_rn, named};
    use super::*;

    #[test]
    fn pentode_detected() {
        let r = forbidden_check(&named::star(5));
        assert!(r.has_t5() && !r.has_cycle() && !r.has_c());
        assert_eq!(r.pentode.unwrap().center, "c");
    }

    #[test]
    fn branched_cross_detected() {
        let g = named::branched_cross();
        assert_eq!(g.vertex_count(), 13);
        let r = forbidden_check(&g);
        assert!(r.has_c() && !r.has_t5() && !r.has_cycle());
        let w = r.cross.unwrap();
        assert_eq!(w.center, "c");
        assert_eq!(w.branch_vertices(), vec!["t0", "t1", "t2", "t3"]);
    }

    #[test]
    fn rn_and_fn_are_clean() {
        for n in 1..6 {
            assert!(!forbidden_check(&build_rn(n)).any());
            assert!(is_basically_embeddable(&build_fn(n)));
        }
    }

    #[test]
    fn cycles_and_loops() {
        let r = forbidden_check(&named::cycle(3));
        assert_eq!(r.cycle.unwrap(), vec!["v1", "v0", "v2"]);
        let r = forbidden_check(&Multigraph::parse("a a").unwrap());
        assert_eq!(r.cycle.unwrap(), vec!["a"]);
        let r = forbidden_check(&Multigraph::parse("a b\na b").unwrap());
        assert_eq!(r.cycle.unwrap(), vec!["a", "b"]);
        assert!(!is_basically_embeddable(&named::cycle(4)));
    }
}
