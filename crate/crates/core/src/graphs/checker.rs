//! Stand-alone verification of embedding and forbidden-subgraph witnesses.
//! Works from the raw edge list of the input and from host adjacency only.

use std::collections::{BTreeMap, BTreeSet};

use super::{CrossWitness, EmbedMap, Multigraph, PentodeWitness};

/// Adjacency queries on a host tree given by vertex labels.
pub trait HostOracle {
    fn contains(&self, v: &str) -> bool;
    fn adjacent(&self, a: &str, b: &str) -> bool;
}

fn edge_multiplicity(g: &Multigraph, a: &str, b: &str) -> usize {
    g.edges()
        .iter()
        .filter(|&&(x, y)| {
            let (x, y) = (g.label(x), g.label(y));
            (x == a && y == b) || (x == b && y == a)
        })
        .count()
}

impl HostOracle for Multigraph {
    fn contains(&self, v: &str) -> bool {
        self.labels().iter().any(|l| l == v)
    }

    fn adjacent(&self, a: &str, b: &str) -> bool {
        edge_multiplicity(self, a, b) > 0
    }
}

/// R_n read off its path labels.
pub struct RnLabels {
    pub n: usize,
}

impl RnLabels {
    /// Number of digit steps below the center, or None if `v` is not a
    /// vertex of R_n. A pendant vertex reports `usize::MAX`.
    fn depth(&self, v: &str) -> Option<usize> {
        let mut parts = v.split('.');
        if parts.next() != Some("r") {
            return None;
        }
        let mut depth = 0usize;
        let mut ended = false;
        for s in parts {
            if ended {
                return None;
            }
            match s {
                "p" if depth == 0 || depth < self.n => ended = true,
                "0" | "1" if depth < self.n => depth += 1,
                "2" if depth == 0 && self.n >= 1 => depth += 1,
                _ => return None,
            }
        }
        Some(if ended { usize::MAX } else { depth })
    }
}

impl HostOracle for RnLabels {
    fn contains(&self, v: &str) -> bool {
        self.depth(v).is_some()
    }

    fn adjacent(&self, a: &str, b: &str) -> bool {
        if !self.contains(a) || !self.contains(b) {
            return false;
        }
        let child_of = |c: &str, p: &str| {
            c.strip_prefix(p)
                .and_then(|rest| rest.strip_prefix('.'))
                .is_some_and(|s| !s.contains('.'))
        };
        child_of(a, b) || child_of(b, a)
    }
}

/// Verifies that `map` realises the forest `k` (as given, before any
/// smoothing) inside `host`.
pub fn check_embedding<H: HostOracle + ?Sized>(
    k: &Multigraph,
    map: &EmbedMap,
    host: &H,
) -> Result<(), String> {
    let n = k.vertex_count();
    let mut nbrs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(a, b)) in k.edges().iter().enumerate() {
        if a == b {
            return Err("input has a loop".into());
        }
        nbrs[a].push((b, id));
        nbrs[b].push((a, id));
    }
    let keys: Vec<usize> = (0..n).filter(|&v| nbrs[v].len() != 2).collect();

    // chains between consecutive non-degree-2 vertices
    let mut used = vec![false; k.edge_count()];
    let mut chains: Vec<(String, String)> = Vec::new();
    for &s in &keys {
        for &(first, id) in &nbrs[s] {
            if used[id] {
                continue;
            }
            used[id] = true;
            let mut cur = first;
            while nbrs[cur].len() == 2 {
                let Some(&(next, nid)) = nbrs[cur].iter().find(|&&(_, eid)| !used[eid]) else {
                    return Err("input has a cycle".into());
                };
                used[nid] = true;
                cur = next;
            }
            let (a, b) = (k.label(s).to_string(), k.label(cur).to_string());
            chains.push(if a <= b { (a, b) } else { (b, a) });
        }
    }
    if used.iter().any(|u| !u) {
        return Err("input has a cycle".into());
    }

    let key_labels: BTreeSet<&str> = keys.iter().map(|&v| k.label(v)).collect();
    let mapped: BTreeSet<&str> = map.vertex_map.keys().map(String::as_str).collect();
    if key_labels != mapped {
        return Err("vertex map domain differs from the branch and end vertices".into());
    }
    let mut claimed: Vec<(String, String)> = map
        .edge_paths
        .iter()
        .map(|e| {
            if e.from <= e.to {
                (e.from.clone(), e.to.clone())
            } else {
                (e.to.clone(), e.from.clone())
            }
        })
        .collect();
    claimed.sort();
    chains.sort();
    if claimed != chains {
        return Err("edge paths do not match the edges of the smoothed input".into());
    }

    for (v, img) in &map.vertex_map {
        if !host.contains(img) {
            return Err(format!("image {img} of {v} is not a host vertex"));
        }
    }
    for e in &map.edge_paths {
        let p = &e.path;
        if p.len() < 2 {
            return Err(format!("path for {}-{} too short", e.from, e.to));
        }
        if p[0] != map.vertex_map[&e.from] || p[p.len() - 1] != map.vertex_map[&e.to] {
            return Err(format!("path for {}-{} has wrong ends", e.from, e.to));
        }
        if p.iter().collect::<BTreeSet<_>>().len() != p.len() {
            return Err(format!("path for {}-{} repeats a vertex", e.from, e.to));
        }
        for w in p.windows(2) {
            if !host.adjacent(&w[0], &w[1]) {
                return Err(format!(
                    "{} and {} are not adjacent in the host",
                    w[0], w[1]
                ));
            }
        }
    }

    // components of k, by label
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = s;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(w, _) in &nbrs[u] {
                if comp[w] == usize::MAX {
                    comp[w] = s;
                    stack.push(w);
                }
            }
        }
    }
    let comp_of = |l: &str| comp[k.index_of(l).unwrap()];
    let mut owner: BTreeMap<(usize, &str), String> = BTreeMap::new();
    for (v, img) in &map.vertex_map {
        if let Some(o) = owner.insert((comp_of(v), img.as_str()), v.clone()) {
            return Err(format!("{o} and {v} share the image {img}"));
        }
    }
    for e in &map.edge_paths {
        let c = comp_of(&e.from);
        for x in &e.path[1..e.path.len() - 1] {
            let tag = format!("edge {}-{}", e.from, e.to);
            if let Some(o) = owner.insert((c, x.as_str()), tag.clone()) {
                return Err(format!("{tag} meets {o} at {x}"));
            }
        }
    }
    Ok(())
}

pub fn check_cycle(g: &Multigraph, cycle: &[String]) -> Result<(), String> {
    match cycle {
        [] => Err("empty cycle".into()),
        [a] => (edge_multiplicity(g, a, a) >= 1)
            .then_some(())
            .ok_or_else(|| format!("no loop at {a}")),
        [a, b] => (a != b && edge_multiplicity(g, a, b) >= 2)
            .then_some(())
            .ok_or_else(|| format!("no double edge {a}-{b}")),
        _ => {
            if cycle.iter().collect::<BTreeSet<_>>().len() != cycle.len() {
                return Err("cycle repeats a vertex".into());
            }
            for i in 0..cycle.len() {
                let (a, b) = (&cycle[i], &cycle[(i + 1) % cycle.len()]);
                if edge_multiplicity(g, a, b) == 0 {
                    return Err(format!("no edge {a}-{b}"));
                }
            }
            Ok(())
        }
    }
}

pub fn check_pentode(g: &Multigraph, w: &PentodeWitness) -> Result<(), String> {
    let rays: BTreeSet<&String> = w.rays.iter().collect();
    if rays.len() != 5 || rays.contains(&w.center) {
        return Err("pentode needs five distinct rays".into());
    }
    for r in &w.rays {
        if edge_multiplicity(g, &w.center, r) == 0 {
            return Err(format!("no edge {}-{r}", w.center));
        }
    }
    Ok(())
}

pub fn check_cross(g: &Multigraph, w: &CrossWitness) -> Result<(), String> {
    if w.arms.len() != 4 || w.ends.len() != 4 {
        return Err("cross needs four arms".into());
    }
    let mut seen: BTreeSet<&str> = BTreeSet::from([w.center.as_str()]);
    for (arm, ends) in w.arms.iter().zip(&w.ends) {
        if arm.len() < 2 || arm[0] != w.center {
            return Err("arm must start at the center".into());
        }
        for pair in arm.windows(2) {
            if edge_multiplicity(g, &pair[0], &pair[1]) == 0 {
                return Err(format!("no edge {}-{}", pair[0], pair[1]));
            }
        }
        let tip = &arm[arm.len() - 1];
        for e in ends {
            if edge_multiplicity(g, tip, e) == 0 {
                return Err(format!("no edge {tip}-{e}"));
            }
        }
        for v in arm[1..].iter().chain(ends.iter()) {
            if !seen.insert(v.as_str()) {
                return Err(format!("vertex {v} used twice"));
            }
        }
    }
    Ok(())
}
