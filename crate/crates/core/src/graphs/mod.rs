//! Finite graphs and the forbidden-subgraph criterion for basic
//! embeddability into the plane and into books.

mod book;
pub mod canon;
pub mod checker;
mod family;
mod forbidden;
mod matcher;

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub use book::{defect, embeds_in_book};
pub use family::{build_fn, build_rn};
pub use forbidden::{
    forbidden_check, is_basically_embeddable, CrossWitness, ForbiddenReport, PentodeWitness,
};
pub use matcher::{
    embed_into, embed_into_rn, embed_into_tree, least_rn, EdgePath, EmbedMap, ExplicitHost,
    HostTree, RnHost,
};

/// Undirected multigraph with string labels. Loops and parallel edges are
/// allowed. Vertices are kept sorted by label, so vertex indices follow label
/// order and every traversal in this module is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Multigraph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn from_edges<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Self {
        let mut labels: Vec<String> = vertices
            .iter()
            .map(|s| s.as_ref().to_string())
            .chain(
                edges
                    .iter()
                    .flat_map(|(a, b)| [a.as_ref().to_string(), b.as_ref().to_string()]),
            )
            .collect();
        labels.sort();
        labels.dedup();
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut e: Vec<(usize, usize)> = edges
            .iter()
            .map(|(a, b)| {
                let (a, b) = (index[a.as_ref()], index[b.as_ref()]);
                (a.min(b), a.max(b))
            })
            .collect();
        e.sort_unstable();
        Multigraph { labels, edges: e }
    }

    /// Edge-list format: `u v` per edge, a lone `v` declares a vertex, `#`
    /// starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let t: Vec<&str> = l.split_whitespace().collect();
            match t.as_slice() {
                [v] => vertices.push(*v),
                [a, b] => edges.push((*a, *b)),
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: "expected `u v` or `v`".into(),
                    })
                }
            }
        }
        Ok(Multigraph::from_edges(&vertices, &edges))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.vertex_count() {
            if self.degree(v) == 0 {
                out += &format!("{}\n", self.labels[v]);
            }
        }
        for &(a, b) in &self.edges {
            out += &format!("{} {}\n", self.labels[a], self.labels[b]);
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbour per edge end; a loop contributes its vertex twice.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn is_forest(&self) -> bool {
        let mut uf = crate::linalg::UnionFind::new(self.vertex_count());
        self.edges.iter().all(|&(a, b)| uf.union(a, b))
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.is_forest() && self.edge_count() + 1 == self.vertex_count()
    }

    /// Vertex sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for s in 0..self.vertex_count() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
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

    /// Induced subgraph on `keep`.
    pub fn induced(&self, keep: &[usize]) -> Multigraph {
        let set: std::collections::BTreeSet<usize> = keep.iter().copied().collect();
        let labels: Vec<&str> = set.iter().map(|&v| self.label(v)).collect();
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .filter(|(a, b)| set.contains(a) && set.contains(b))
            .map(|&(a, b)| (self.label(a), self.label(b)))
            .collect();
        Multigraph::from_edges(&labels, &edges)
    }

    /// Vertices of degree at least 2.
    pub fn non_leaf_count(&self) -> usize {
        self.degrees().into_iter().filter(|&d| d >= 2).count()
    }
}

/// Smooths degree-2 vertices until none is left, except a vertex whose only
/// edge is a loop (the normal form of a cycle component). The smallest label
/// is smoothed first; surviving vertices keep their labels.
pub fn suppress_degree2(g: &Multigraph) -> Multigraph {
    let mut alive = vec![true; g.vertex_count()];
    let mut edges: Vec<Option<(usize, usize)>> = g.edges.iter().copied().map(Some).collect();
    loop {
        let mut deg = vec![0usize; g.vertex_count()];
        let mut looped = vec![false; g.vertex_count()];
        for &(a, b) in edges.iter().flatten() {
            deg[a] += 1;
            deg[b] += 1;
            looped[a] |= a == b;
        }
        let Some(v) = (0..g.vertex_count()).find(|&v| alive[v] && deg[v] == 2 && !looped[v]) else {
            break;
        };
        let mut ends = Vec::new();
        for slot in edges.iter_mut() {
            if let Some((a, b)) = *slot {
                if a == v || b == v {
                    ends.push(if a == v { b } else { a });
                    *slot = None;
                }
            }
        }
        alive[v] = false;
        edges.push(Some((ends[0].min(ends[1]), ends[0].max(ends[1]))));
    }
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| alive[v]).collect();
    let labels: Vec<&str> = keep.iter().map(|&v| g.label(v)).collect();
    let pairs: Vec<(&str, &str)> = edges
        .into_iter()
        .flatten()
        .map(|(a, b)| (g.label(a), g.label(b)))
        .collect();
    Multigraph::from_edges(&labels, &pairs)
}

/// Helpers for the named graphs of the criterion.
pub mod named {
    use super::Multigraph;

    /// Star with `k` rays: center `c`, leaves `l0..`.
    pub fn star(k: usize) -> Multigraph {
        let leaves: Vec<String> = (0..k).map(|i| format!("l{i}")).collect();
        let edges: Vec<(String, String)> = leaves
            .iter()
            .map(|l| ("c".to_string(), l.clone()))
            .collect();
        Multigraph::from_edges(&["c".to_string()], &edges)
    }

    /// Path on `n` vertices `v0 - v1 - ...`.
    pub fn path(n: usize) -> Multigraph {
        let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String)> = vs
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Multigraph::from_edges(&vs, &edges)
    }

    pub fn cycle(n: usize) -> Multigraph {
        let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String)> = (0..n)
            .map(|i| (vs[i].clone(), vs[(i + 1) % n].clone()))
            .collect();
        Multigraph::from_edges(&vs, &edges)
    }

    /// The cross with branched ends: a 4-star whose tips each carry two
    /// pendant edges (13 vertices).
    pub fn branched_cross() -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..4 {
            let tip = format!("t{i}");
            edges.push(("c".to_string(), tip.clone()));
            for j in 0..2 {
                edges.push((tip.clone(), format!("t{i}e{j}")));
            }
        }
        Multigraph::from_edges(&[] as &[String], &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_degrees() {
        let g = Multigraph::parse("# t\na b\nb c\nz\nc c\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        let c = g.index_of("c").unwrap();
        assert_eq!(g.degree(c), 3);
        assert_eq!(g.degree(g.index_of("z").unwrap()), 0);
        assert!(!g.is_forest());
        assert_eq!(Multigraph::parse(&g.to_text()).unwrap(), g);
        assert!(Multigraph::parse("a b c").is_err());
    }

    #[test]
    fn suppress_path() {
        let g = suppress_degree2(&named::path(5));
        assert_eq!(g, Multigraph::from_edges(&["v0", "v4"], &[("v0", "v4")]));
    }

    #[test]
    fn suppress_subdivided_pentode() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push(("c".to_string(), format!("m{i}")));
            edges.push((format!("m{i}"), format!("l{i}")));
        }
        let g = suppress_degree2(&Multigraph::from_edges(&[] as &[String], &edges));
        assert_eq!(g, named::star(5));
    }

    #[test]
    fn suppress_triangle_to_loop() {
        let g = suppress_degree2(&named::cycle(3));
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edges(), &[(0, 0)]);
    }

    #[test]
    fn components_and_trees() {
        let g = Multigraph::parse("a b\nc d\ne").unwrap();
        assert_eq!(g.components().len(), 3);
        assert!(g.is_forest());
        assert!(!g.is_tree());
        assert!(named::star(3).is_tree());
    }
}
