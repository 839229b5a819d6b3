//! Topological containment of a forest in a rooted host tree, by dynamic
//! programming over (vertex, parent, host node) with bipartite matching at
//! every vertex.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{suppress_degree2, Multigraph};

/// A rooted host forest. Nodes with equal `kind` must root isomorphic
/// subtrees; the matcher memoises on kinds.
pub trait HostTree {
    type Node: Clone;
    fn roots(&self) -> Vec<Self::Node>;
    fn children(&self, t: &Self::Node) -> Vec<Self::Node>;
    fn kind(&self, t: &Self::Node) -> usize;
    fn label(&self, t: &Self::Node) -> String;
}

/// An explicit forest rooted at the smallest label of each component.
pub struct ExplicitHost<'a> {
    g: &'a Multigraph,
    adj: Vec<Vec<usize>>,
}

impl<'a> ExplicitHost<'a> {
    pub fn new(g: &'a Multigraph) -> Self {
        ExplicitHost {
            g,
            adj: g.adjacency(),
        }
    }
}

impl HostTree for ExplicitHost<'_> {
    type Node = (usize, usize);

    fn roots(&self) -> Vec<(usize, usize)> {
        self.g
            .components()
            .into_iter()
            .map(|c| (c[0], usize::MAX))
            .collect()
    }

    fn children(&self, &(v, p): &(usize, usize)) -> Vec<(usize, usize)> {
        self.adj[v]
            .iter()
            .filter(|&&w| w != p)
            .map(|&w| (w, v))
            .collect()
    }

    fn kind(&self, t: &(usize, usize)) -> usize {
        t.0
    }

    fn label(&self, t: &(usize, usize)) -> String {
        self.g.label(t.0).to_string()
    }
}

/// R_n without materialising it: a node is its path label and its kind,
/// `usize::MAX` for the center and `k` for a vertex with `k` levels below
/// (`0` for every leaf).
pub struct RnHost {
    pub n: usize,
}

impl HostTree for RnHost {
    type Node = (String, usize);

    fn roots(&self) -> Vec<(String, usize)> {
        vec![("r".to_string(), usize::MAX)]
    }

    fn children(&self, (l, k): &(String, usize)) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        if *k == usize::MAX {
            if self.n >= 1 {
                out.extend((0..3).map(|i| (format!("{l}.{i}"), self.n - 1)));
            }
        } else if *k >= 1 {
            out.extend((0..2).map(|i| (format!("{l}.{i}"), k - 1)));
        } else {
            return out;
        }
        out.push((format!("{l}.p"), 0));
        out
    }

    fn kind(&self, t: &(String, usize)) -> usize {
        t.1
    }

    fn label(&self, t: &(String, usize)) -> String {
        t.0.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePath {
    pub from: String,
    pub to: String,
    /// Host vertices from the image of `from` to the image of `to`.
    pub path: Vec<String>,
}

/// Images of the branch and end vertices of K (after degree-2 suppression)
/// and of its edges. Distinct components may share host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EmbedMap {
    pub vertex_map: BTreeMap<String, String>,
    pub edge_paths: Vec<EdgePath>,
}

impl EmbedMap {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.vertex_map {
            out += &format!("vertex {k} -> {v}\n");
        }
        for e in &self.edge_paths {
            out += &format!("edge {} {} : {}\n", e.from, e.to, e.path.join(" "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut map = EmbedMap::default();
        for l in text.lines().map(str::trim) {
            let t: Vec<&str> = l.split_whitespace().collect();
            match t.as_slice() {
                ["vertex", k, "->", v] => {
                    map.vertex_map.insert(k.to_string(), v.to_string());
                }
                ["edge", a, b, ":", rest @ ..] => map.edge_paths.push(EdgePath {
                    from: a.to_string(),
                    to: b.to_string(),
                    path: rest.iter().map(|s| s.to_string()).collect(),
                }),
                _ => {}
            }
        }
        Ok(map)
    }
}

const NONE: usize = usize::MAX;

struct Matcher<'h, H: HostTree> {
    host: &'h H,
    k: Multigraph,
    adj: Vec<Vec<usize>>,
    exact_memo: HashMap<(usize, usize, usize), bool>,
    any_memo: HashMap<(usize, usize, usize), bool>,
}

fn kuhn(compat: &[Vec<bool>], right: usize) -> Option<Vec<usize>> {
    fn augment(i: usize, compat: &[Vec<bool>], seen: &mut [bool], owner: &mut [usize]) -> bool {
        for j in 0..seen.len() {
            if compat[i][j] && !seen[j] {
                seen[j] = true;
                if owner[j] == NONE || augment(owner[j], compat, seen, owner) {
                    owner[j] = i;
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![NONE; right];
    for i in 0..compat.len() {
        if !augment(i, compat, &mut vec![false; right], &mut owner) {
            return None;
        }
    }
    let mut assign = vec![NONE; compat.len()];
    for (j, &i) in owner.iter().enumerate() {
        if i != NONE {
            assign[i] = j;
        }
    }
    Some(assign)
}

impl<'h, H: HostTree> Matcher<'h, H> {
    fn kids(&self, u: usize, p: usize) -> Vec<usize> {
        self.adj[u].iter().copied().filter(|&w| w != p).collect()
    }

    fn matching(&mut self, u: usize, p: usize, t: &H::Node) -> Option<Vec<usize>> {
        let kids = self.kids(u, p);
        let tc = self.host.children(t);
        if kids.len() > tc.len() {
            return None;
        }
        let compat: Vec<Vec<bool>> = kids
            .iter()
            .map(|&c| tc.iter().map(|tj| self.anywhere(c, u, tj)).collect())
            .collect();
        kuhn(&compat, tc.len())
    }

    fn exact(&mut self, u: usize, p: usize, t: &H::Node) -> bool {
        let key = (u, p, self.host.kind(t));
        if let Some(&v) = self.exact_memo.get(&key) {
            return v;
        }
        let v = self.matching(u, p, t).is_some();
        self.exact_memo.insert(key, v);
        v
    }

    fn anywhere(&mut self, u: usize, p: usize, t: &H::Node) -> bool {
        let key = (u, p, self.host.kind(t));
        if let Some(&v) = self.any_memo.get(&key) {
            return v;
        }
        let v = self.exact(u, p, t) || self.host.children(t).iter().any(|c| self.anywhere(u, p, c));
        self.any_memo.insert(key, v);
        v
    }

    fn build_exact(&mut self, u: usize, p: usize, t: &H::Node, out: &mut EmbedMap) {
        let tl = self.host.label(t);
        out.vertex_map
            .insert(self.k.label(u).to_string(), tl.clone());
        let kids = self.kids(u, p);
        let tc = self.host.children(t);
        let assign = self.matching(u, p, t).expect("exact node has a matching");
        for (i, &c) in kids.iter().enumerate() {
            let mut path = vec![tl.clone()];
            path.extend(self.build_anywhere(c, u, &tc[assign[i]], out));
            out.edge_paths.push(EdgePath {
                from: self.k.label(u).to_string(),
                to: self.k.label(c).to_string(),
                path,
            });
        }
    }

    /// Route from `t` down to the image of `u`.
    fn build_anywhere(
        &mut self,
        u: usize,
        p: usize,
        t: &H::Node,
        out: &mut EmbedMap,
    ) -> Vec<String> {
        if self.exact(u, p, t) {
            self.build_exact(u, p, t, out);
            return vec![self.host.label(t)];
        }
        let c = self
            .host
            .children(t)
            .into_iter()
            .find(|c| self.anywhere(u, p, c))
            .expect("anywhere implies a child");
        let mut route = vec![self.host.label(t)];
        route.extend(self.build_anywhere(u, p, &c, out));
        route
    }

    fn component(&mut self, comp: &[usize], out: &mut EmbedMap) -> bool {
        if comp.len() == 1 {
            let Some(r) = self.host.roots().into_iter().next() else {
                return false;
            };
            out.vertex_map
                .insert(self.k.label(comp[0]).to_string(), self.host.label(&r));
            return true;
        }
        let mut seen_kinds = BTreeSet::new();
        let mut queue: VecDeque<H::Node> = self.host.roots().into();
        while let Some(t) = queue.pop_front() {
            if !seen_kinds.insert(self.host.kind(&t)) {
                continue;
            }
            for &u in comp {
                if self.exact(u, NONE, &t) {
                    self.build_exact(u, NONE, &t, out);
                    return true;
                }
            }
            let tc = self.host.children(&t);
            for &u in comp {
                for v in self.adj[u].clone().into_iter().filter(|&v| v > u) {
                    for i in 0..tc.len() {
                        for j in (0..tc.len()).filter(|&j| j != i) {
                            if self.anywhere(u, v, &tc[i]) && self.anywhere(v, u, &tc[j]) {
                                let mut path = self.build_anywhere(u, v, &tc[i], out);
                                path.reverse();
                                path.push(self.host.label(&t));
                                path.extend(self.build_anywhere(v, u, &tc[j], out));
                                out.edge_paths.push(EdgePath {
                                    from: self.k.label(u).to_string(),
                                    to: self.k.label(v).to_string(),
                                    path,
                                });
                                return true;
                            }
                        }
                    }
                }
            }
            queue.extend(tc);
        }
        false
    }
}

/// Embeds the forest `k` into `host`, component by component, after
/// suppressing the degree-2 vertices of `k`.
pub fn embed_into<H: HostTree>(k: &Multigraph, host: &H) -> Option<EmbedMap> {
    if !k.is_forest() {
        return None;
    }
    let k = suppress_degree2(k);
    let adj = k.adjacency();
    let mut m = Matcher {
        host,
        k: k.clone(),
        adj,
        exact_memo: HashMap::new(),
        any_memo: HashMap::new(),
    };
    let mut out = EmbedMap::default();
    for comp in k.components() {
        if !m.component(&comp, &mut out) {
            return None;
        }
    }
    Some(out)
}

/// Topological containment of the forest `k` in the forest `t`.
pub fn embed_into_tree(k: &Multigraph, t: &Multigraph) -> Option<EmbedMap> {
    if !t.is_forest() {
        return None;
    }
    embed_into(k, &ExplicitHost::new(t))
}

/// Containment in R_n, using the implicit host.
pub fn embed_into_rn(k: &Multigraph, n: usize) -> Option<EmbedMap> {
    embed_into(k, &RnHost { n })
}

/// The least `n` in `1..=max_n` with a witness in R_n.
pub fn least_rn(k: &Multigraph, max_n: usize) -> Option<(usize, EmbedMap)> {
    (1..=max_n).find_map(|n| embed_into_rn(k, n).map(|w| (n, w)))
}
