//! Exact and approximate decomposition of valuations into sums of one-axis
//! functions, and the basicness decision for finite sets.
//!
//! For a finite set every function is continuous, so `K` is basic exactly when
//! the point/axis-coordinate incidence matrix has full row rank. In the plane
//! this is the same as the bipartite view being a forest, i.e. `K` having no
//! closed lightning.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::decomposition::{AxisFunction, Decomposition, GaugeClass};
use crate::error::Result;
use crate::lightning::{orient_cycle, BipartiteView, ClosedLightning};
use crate::linalg::{reduce, Incidence, UnionFind};
use crate::points::{PointSet, Valuation};
use crate::rational::{abs, to_f64};
use crate::Rational;

/// Why a particular valuation has no decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfeasibilityCertificate {
    /// A closed lightning whose alternating f-sum is nonzero.
    ClosedLightningSum {
        cycle: ClosedLightning,
        alternating_sum: Rational,
    },
    /// Weights `w` with `Σ_p w_p·[p_j = c] = 0` for every axis `j` and
    /// coordinate `c`, and `Σ_p w_p·f(p) = pairing ≠ 0`.
    DependencyVector {
        weights: BTreeMap<usize, Rational>,
        pairing: Rational,
    },
}

impl InfeasibilityCertificate {
    /// Recomputes the pairing with `f` from scratch.
    pub fn pairing_with(&self, f: &Valuation) -> Rational {
        match self {
            Self::ClosedLightningSum { cycle, .. } => cycle.alternating_sum(f),
            Self::DependencyVector { weights, .. } => weights.iter().map(|(&i, w)| w * &f[i]).sum(),
        }
    }

    /// Structure holds against `k` and the pairing with `f` is the stated,
    /// nonzero value.
    pub fn is_valid_for(&self, k: &PointSet, f: &Valuation) -> bool {
        if f.check_domain(k).is_err() {
            return false;
        }
        let (structure, stated) = match self {
            Self::ClosedLightningSum {
                cycle,
                alternating_sum,
            } => (cycle.is_valid_in(k), alternating_sum),
            Self::DependencyVector { weights, pairing } => (is_dependency(k, weights), pairing),
        };
        let actual = self.pairing_with(f);
        structure && !actual.is_zero() && &actual == stated
    }
}

/// True when `weights` is a nonzero left null vector of the incidence matrix.
pub fn is_dependency(k: &PointSet, weights: &BTreeMap<usize, Rational>) -> bool {
    if weights.is_empty() || weights.iter().any(|(&i, w)| i >= k.len() || w.is_zero()) {
        return false;
    }
    (0..k.dim()).all(|axis| {
        let mut sums: BTreeMap<&Rational, Rational> = BTreeMap::new();
        for (&i, w) in weights {
            *sums
                .entry(&k.get(i).coords()[axis])
                .or_insert_with(Rational::zero) += w;
        }
        sums.values().all(Zero::is_zero)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasicWitness {
    ClosedLightning(ClosedLightning),
    Dependency(BTreeMap<usize, Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicnessVerdict {
    pub basic: bool,
    pub witness: Option<BasicWitness>,
}

impl BasicnessVerdict {
    fn basic() -> Self {
        BasicnessVerdict {
            basic: true,
            witness: None,
        }
    }

    fn not_basic(w: BasicWitness) -> Self {
        BasicnessVerdict {
            basic: false,
            witness: Some(w),
        }
    }
}

/// Decides whether every function on `k` splits into per-axis functions.
/// Planar sets are decided by searching for a closed lightning, all other
/// dimensions by the incidence rank.
pub fn is_basic(k: &PointSet) -> BasicnessVerdict {
    if k.dim() == 2 {
        match crate::lightning::find_closed_lightning(k).expect("dimension checked") {
            Some(c) => BasicnessVerdict::not_basic(BasicWitness::ClosedLightning(c)),
            None => BasicnessVerdict::basic(),
        }
    } else {
        is_basic_by_rank(k)
    }
}

/// Basicness through the rank of the incidence matrix, in any dimension.
pub fn is_basic_by_rank(k: &PointSet) -> BasicnessVerdict {
    let a = Incidence::new(k).dense();
    let red = reduce(&a, &vec![Rational::zero(); a.len()]);
    match red.dependencies.first() {
        None => BasicnessVerdict::basic(),
        Some(w) => BasicnessVerdict::not_basic(BasicWitness::Dependency(sparse(w))),
    }
}

pub fn incidence_rank(k: &PointSet) -> usize {
    crate::linalg::rank(&Incidence::new(k).dense())
}

fn sparse(w: &[Rational]) -> BTreeMap<usize, Rational> {
    w.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome {
    Decomposed(Decomposition),
    Infeasible(InfeasibilityCertificate),
}

impl ExactOutcome {
    pub fn decomposition(&self) -> Option<&Decomposition> {
        match self {
            ExactOutcome::Decomposed(d) => Some(d),
            ExactOutcome::Infeasible(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&InfeasibilityCertificate> {
        match self {
            ExactOutcome::Decomposed(_) => None,
            ExactOutcome::Infeasible(c) => Some(c),
        }
    }
}

/// Decomposes this particular `f`, or certifies that it cannot be done.
///
/// Gauge: in each connectivity class the root is its smallest point; the
/// root's axis-0 entry is `f(root)` and its other axis entries are 0. Planar
/// sets propagate along a BFS forest of the bipartite view; other dimensions
/// solve the gauged linear system exactly.
pub fn decompose_exact(k: &PointSet, f: &Valuation) -> Result<ExactOutcome> {
    f.check_domain(k)?;
    if k.dim() == 2 {
        Ok(propagate_planar(k, f))
    } else {
        decompose_by_elimination(k, f)
    }
}

fn propagate_planar(k: &PointSet, f: &Valuation) -> ExactOutcome {
    let view = BipartiteView::new(k).expect("planar");
    let nodes = view.node_count();
    let mut value: Vec<Option<Rational>> = vec![None; nodes];
    let mut parent = vec![None; nodes];
    let mut depth = vec![0usize; nodes];
    let mut gauge = Vec::new();
    for root in 0..k.len() {
        let (rx, _) = view.ends[root];
        if value[rx].is_some() {
            continue;
        }
        gauge.push(GaugeClass {
            root,
            value: f[root].clone(),
        });
        value[rx] = Some(f[root].clone());
        let mut queue = std::collections::VecDeque::from([rx]);
        while let Some(u) = queue.pop_front() {
            let vu = value[u].clone().expect("queued nodes are valued");
            for &(v, e) in &view.adj[u] {
                if value[v].is_none() {
                    value[v] = Some(&f[e] - &vu);
                    parent[v] = Some((u, e));
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    let value: Vec<Rational> = value
        .into_iter()
        .map(|v| v.expect("all nodes reached"))
        .collect();
    for (e, &(x, y)) in view.ends.iter().enumerate() {
        if &value[x] + &value[y] != f[e] {
            let cycle = orient_cycle(k, &view.fundamental_cycle(&parent, &depth, e));
            let alternating_sum = cycle.alternating_sum(f);
            return ExactOutcome::Infeasible(InfeasibilityCertificate::ClosedLightningSum {
                cycle,
                alternating_sum,
            });
        }
    }
    let nx = view.x_values.len();
    let mut gx = AxisFunction::new(0);
    let mut gy = AxisFunction::new(1);
    for (i, c) in view.x_values.iter().enumerate() {
        gx.table.insert(c.clone(), value[i].clone());
    }
    for (j, c) in view.y_values.iter().enumerate() {
        gy.table.insert(c.clone(), value[nx + j].clone());
    }
    ExactOutcome::Decomposed(Decomposition {
        per_axis: vec![gx, gy],
        gauge,
    })
}

/// The gauged linear-system route, valid in every dimension. Unknowns not
/// pinned by the gauge (possible from d = 3 on) are set to 0.
pub fn decompose_by_elimination(k: &PointSet, f: &Valuation) -> Result<ExactOutcome> {
    f.check_domain(k)?;
    let inc = Incidence::new(k);
    let ncols = inc.columns.len();
    let mut uf = UnionFind::new(ncols);
    for row in &inc.rows {
        for w in row.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let mut rows = inc.dense();
    let mut rhs: Vec<Rational> = f.values().to_vec();
    let mut gauge = Vec::new();
    let mut seen_class = std::collections::BTreeSet::new();
    for (i, row) in inc.rows.iter().enumerate() {
        if !seen_class.insert(uf.find(row[0])) {
            continue;
        }
        gauge.push(GaugeClass {
            root: i,
            value: f[i].clone(),
        });
        for (axis, &col) in row.iter().enumerate() {
            let mut g = vec![Rational::zero(); ncols];
            g[col] = Rational::from_integer(1.into());
            rows.push(g);
            rhs.push(if axis == 0 {
                f[i].clone()
            } else {
                Rational::zero()
            });
        }
    }
    let red = reduce(&rows, &rhs);
    let Some(x) = red.solution else {
        // the gauge is always compatible, so the point rows alone are inconsistent
        let plain = reduce(&inc.dense(), f.values());
        let (w, pairing) = plain
            .dependencies
            .iter()
            .zip(&plain.pairings)
            .find(|(_, p)| !p.is_zero())
            .expect("an inconsistent system has a dependency with nonzero pairing");
        return Ok(ExactOutcome::Infeasible(
            InfeasibilityCertificate::DependencyVector {
                weights: sparse(w),
                pairing: pairing.clone(),
            },
        ));
    };
    let mut per_axis: Vec<AxisFunction> = (0..k.dim()).map(AxisFunction::new).collect();
    for ((axis, c), v) in inc.columns.into_iter().zip(x) {
        per_axis[axis].table.insert(c, v);
    }
    Ok(ExactOutcome::Decomposed(Decomposition { per_axis, gauge }))
}

/// Sup norms `(|f|, Σ_j |g_j|)`.
pub fn norm_report(dec: &Decomposition, f: &Valuation) -> (Rational, Rational) {
    let fsup = f
        .values()
        .iter()
        .map(abs)
        .max()
        .unwrap_or_else(Rational::zero);
    let gsum = dec.per_axis.iter().map(AxisFunction::sup_norm).sum();
    (fsup, gsum)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LsqOptions {
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for LsqOptions {
    fn default() -> Self {
        LsqOptions {
            max_iters: 500,
            tol: 1e-15,
        }
    }
}

/// Floating-point per-axis tables keyed by the exact coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxDecomposition {
    pub per_axis: Vec<BTreeMap<Rational, f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LsqReport {
    pub decomposition: ApproxDecomposition,
    /// Sup-norm residual after each sweep.
    pub residuals: Vec<f64>,
}

impl LsqReport {
    pub fn final_residual(&self) -> f64 {
        self.residuals.last().copied().unwrap_or(0.0)
    }
}

/// Alternating projections: each sweep replaces every axis function in turn
/// by itself plus the per-fiber mean of the current residual. Converges to
/// the least-squares best approximation of `f` by sums of one-axis functions.
///
/// Stops after `max_iters` sweeps, when the residual vanishes, or when the
/// Euclidean residual (which never increases) improves by less than `tol`.
pub fn decompose_lsq(k: &PointSet, f: &Valuation, opts: LsqOptions) -> Result<LsqReport> {
    f.check_domain(k)?;
    let idx = k.axis_index();
    let fiber: Vec<Vec<usize>> = (0..k.dim())
        .map(|a| k.iter().map(|p| idx[a][&p.coords()[a]]).collect())
        .collect();
    let target: Vec<f64> = f.values().iter().map(to_f64).collect();
    let mut tables: Vec<Vec<f64>> = idx.iter().map(|m| vec![0.0; m.len()]).collect();
    let mut residual = target.clone();
    let mut residuals = Vec::new();
    let mut prev_l2 = f64::INFINITY;
    for _ in 0..opts.max_iters.max(1) {
        for axis in 0..k.dim() {
            let n = tables[axis].len();
            let (mut sum, mut count) = (vec![0.0; n], vec![0usize; n]);
            for (i, r) in residual.iter().enumerate() {
                sum[fiber[axis][i]] += r;
                count[fiber[axis][i]] += 1;
            }
            for c in 0..n {
                tables[axis][c] += sum[c] / count[c] as f64;
            }
            for (i, r) in residual.iter_mut().enumerate() {
                let c = fiber[axis][i];
                *r -= sum[c] / count[c] as f64;
            }
        }
        // recompute from scratch to keep rounding drift out of the residual
        for (i, r) in residual.iter_mut().enumerate() {
            *r = target[i] - (0..k.dim()).map(|a| tables[a][fiber[a][i]]).sum::<f64>();
        }
        let sup = residual.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        let l2 = residual.iter().map(|r| r * r).sum::<f64>().sqrt();
        residuals.push(sup);
        if sup == 0.0 || prev_l2 - l2 < opts.tol {
            break;
        }
        prev_l2 = l2;
    }
    let per_axis = idx
        .into_iter()
        .zip(tables)
        .map(|(m, t)| m.into_keys().zip(t).collect())
        .collect();
    Ok(LsqReport {
        decomposition: ApproxDecomposition { per_axis },
        residuals,
    })
}
