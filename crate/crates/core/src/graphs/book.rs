//! Basic embeddability of trees into the book I x T_n.

use super::Multigraph;

fn pendant_flags(g: &Multigraph) -> (Vec<usize>, Vec<bool>) {
    let deg = g.degrees();
    let mut pendant = vec![false; g.vertex_count()];
    for &(a, b) in g.edges() {
        if a != b {
            pendant[a] |= deg[b] == 1;
            pendant[b] |= deg[a] == 1;
        }
    }
    (deg, pendant)
}

/// Sum of `deg - 2` over vertices of degree above four and over vertices of
/// degree four without a pendant edge.
pub fn defect(g: &Multigraph) -> usize {
    let (deg, pendant) = pendant_flags(g);
    (0..g.vertex_count())
        .filter(|&v| deg[v] > 4 || (deg[v] == 4 && !pendant[v]))
        .map(|v| deg[v] - 2)
        .sum()
}

/// `g` is a tree and either its defect is below `n`, or equals `n` and some
/// vertex of degree above four has a pendant edge.
pub fn embeds_in_book(g: &Multigraph, n: usize) -> bool {
    if !g.is_tree() {
        return false;
    }
    let d = defect(g);
    let (deg, pendant) = pendant_flags(g);
    d < n || (d == n && (0..g.vertex_count()).any(|v| deg[v] > 4 && pendant[v]))
}

#[cfg(test)]
mod tests {
    use super::super::{build_fn, named};
    use super::*;

    #[test]
    fn stars() {
        let t6 = named::star(6);
        assert_eq!(defect(&t6), 4);
        assert!(embeds_in_book(&t6, 4));
        assert!(!embeds_in_book(&t6, 3));
        assert_eq!(defect(&named::star(4)), 0);
        assert!(embeds_in_book(&named::star(4), 1));
    }

    #[test]
    fn f2_and_non_trees() {
        assert_eq!(defect(&build_fn(2)), 0);
        assert!(embeds_in_book(&build_fn(2), 1));
        assert!(!embeds_in_book(&named::cycle(3), 10));
        assert!(!embeds_in_book(&Multigraph::default(), 3));
    }

    #[test]
    fn degree_four_without_pendant_counts() {
        let mut edges = Vec::new();
        for i in 0..4 {
            edges.push(("c".to_string(), format!("m{i}")));
            edges.push((format!("m{i}"), format!("l{i}")));
        }
        let g = Multigraph::from_edges(&[] as &[String], &edges);
        assert_eq!(defect(&g), 2);
        assert!(!embeds_in_book(&g, 2));
        assert!(embeds_in_book(&g, 3));
    }
}
