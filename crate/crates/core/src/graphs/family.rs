//! The trees F_n and R_n with path labels: the center is `r`, its children
//! `r.0`, `r.1`, `r.2`, deeper children append `.0` / `.1`, and the extra
//! pendant edge at a branch vertex `v` ends in `v.p`.

use super::Multigraph;

fn grow(n: usize, pendants: bool) -> Multigraph {
    let mut edges: Vec<(String, String)> = Vec::new();
    if n == 0 {
        edges.push(("r".into(), "r.p".into()));
        return Multigraph::from_edges(&[] as &[String], &edges);
    }
    let mut frontier: Vec<String> = Vec::new();
    for i in 0..3 {
        let c = format!("r.{i}");
        edges.push(("r".into(), c.clone()));
        frontier.push(c);
    }
    if pendants {
        edges.push(("r".into(), "r.p".into()));
    }
    for _ in 1..n {
        let mut next = Vec::new();
        for v in frontier {
            for i in 0..2 {
                let c = format!("{v}.{i}");
                edges.push((v.clone(), c.clone()));
                next.push(c);
            }
            if pendants {
                edges.push((v.clone(), format!("{v}.p")));
            }
        }
        frontier = next;
    }
    Multigraph::from_edges(&[] as &[String], &edges)
}

/// F_1 is the triod; F_{n+1} splits every leaf of F_n into two new leaves.
/// `build_fn(0)` is a single edge.
pub fn build_fn(n: usize) -> Multigraph {
    grow(n, false)
}

/// F_n with a pendant edge added at every branch vertex. `build_rn(0)` is a
/// single edge, matching the segment R_0.
pub fn build_rn(n: usize) -> Multigraph {
    grow(n, true)
}
