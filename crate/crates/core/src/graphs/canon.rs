//! Canonical forms of forests (AHU encoding) and enumeration of free trees.

use std::collections::BTreeSet;

use super::Multigraph;

fn encode(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| encode(adj, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn centers(adj: &[Vec<usize>], comp: &[usize]) -> Vec<usize> {
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = comp.iter().copied().filter(|&v| deg[v] <= 1).collect();
    let mut left = comp.len();
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Isomorphism invariant of a forest; None if `g` has a cycle.
pub fn forest_canonical(g: &Multigraph) -> Option<String> {
    if !g.is_forest() {
        return None;
    }
    let adj = g.adjacency();
    let mut parts: Vec<String> = g
        .components()
        .iter()
        .map(|comp| {
            centers(&adj, comp)
                .into_iter()
                .map(|c| encode(&adj, c, usize::MAX))
                .min()
                .unwrap()
        })
        .collect();
    parts.sort();
    Some(parts.join(","))
}

pub fn forests_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    match (forest_canonical(a), forest_canonical(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

fn tree_graph(edges: &[(usize, usize)], n: usize) -> Multigraph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    let pairs: Vec<(String, String)> = edges
        .iter()
        .map(|&(a, b)| (names[a].clone(), names[b].clone()))
        .collect();
    Multigraph::from_edges(&names, &pairs)
}

/// All free trees on `n` vertices up to isomorphism, labelled `v00`, `v01`...
pub fn free_trees(n: usize) -> Vec<Multigraph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..size - 1 {
                let mut e = t.clone();
                e.push((v, size - 1));
                if seen.insert(forest_canonical(&tree_graph(&e, size)).unwrap()) {
                    next.push(e);
                }
            }
        }
        level = next;
    }
    level.iter().map(|e| tree_graph(e, n)).collect()
}

/// The labelled tree on `seq.len() + 2` vertices with Prüfer sequence `seq`.
pub fn tree_from_prufer(seq: &[usize]) -> Multigraph {
    let n = seq.len() + 2;
    let mut deg = vec![1usize; n];
    for &s in seq {
        deg[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (0..n).find(|&v| deg[v] == 1).unwrap();
        edges.push((leaf, s));
        deg[leaf] -= 1;
        deg[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    tree_graph(&edges, n)
}

#[cfg(test)]
mod tests {
    use super::super::named;
    use super::*;

    #[test]
    fn free_tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| free_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn isomorphism_ignores_labels() {
        let a = Multigraph::parse("x y\ny z\ny w").unwrap();
        assert!(forests_isomorphic(&a, &named::star(3)));
        assert!(!forests_isomorphic(&a, &named::path(4)));
        assert!(!forests_isomorphic(&named::cycle(3), &named::cycle(3)));
    }

    #[test]
    fn prufer_gives_trees() {
        let t = tree_from_prufer(&[3, 3, 3, 4]);
        assert!(t.is_tree());
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(t.degree(3), 4);
    }
}
