//! Exact Gauss-Jordan elimination over the rationals, with row-combination
//! tracking so that every rank deficiency comes with a dependency vector.

use num_traits::{One, Zero};

use crate::points::PointSet;
use crate::Rational;

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Columns of the point/axis-coordinate incidence matrix: `(axis, coordinate)`.
#[derive(Debug, Clone)]
pub struct Incidence {
    pub columns: Vec<(usize, Rational)>,
    /// Per point, the column index of each of its coordinates.
    pub rows: Vec<Vec<usize>>,
}

impl Incidence {
    pub fn new(k: &PointSet) -> Self {
        let idx = k.axis_index();
        let mut offsets = Vec::with_capacity(k.dim());
        let mut columns = Vec::new();
        for (axis, m) in idx.iter().enumerate() {
            offsets.push(columns.len());
            columns.extend(m.keys().map(|c| (axis, c.clone())));
        }
        let rows = k
            .iter()
            .map(|p| {
                p.coords()
                    .iter()
                    .enumerate()
                    .map(|(a, c)| offsets[a] + idx[a][c])
                    .collect()
            })
            .collect();
        Incidence { columns, rows }
    }

    pub fn dense(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|cols| {
                let mut row = vec![Rational::zero(); self.columns.len()];
                for &c in cols {
                    row[c] += Rational::one();
                }
                row
            })
            .collect()
    }
}

/// Outcome of reducing `[A | b]`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub rank: usize,
    /// Pivot column of each pivot, in elimination order.
    pub pivot_columns: Vec<usize>,
    /// One solution with free unknowns at zero, if `A x = b` is consistent.
    pub solution: Option<Vec<Rational>>,
    /// Left null vectors of `A`, one per zero row, ordered by pivot search.
    pub dependencies: Vec<Vec<Rational>>,
    /// `w . b` for each dependency.
    pub pairings: Vec<Rational>,
}

/// Gauss-Jordan on `[A | b | I]`. Pivots are taken column by column, each
/// from the lowest-indexed remaining row with a nonzero entry.
pub fn reduce(a: &[Vec<Rational>], b: &[Rational]) -> Reduction {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut rows: Vec<(Vec<Rational>, Rational, Vec<Rational>)> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (r, bi))| {
            let mut id = vec![Rational::zero(); m];
            id[i] = Rational::one();
            (r.clone(), bi.clone(), id)
        })
        .collect();
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; m];
    for col in 0..n {
        let Some(p) = (0..m).find(|&r| !used[r] && !rows[r].0[col].is_zero()) else {
            continue;
        };
        used[p] = true;
        let inv = rows[p].0[col].recip();
        {
            let row = &mut rows[p];
            row.0.iter_mut().for_each(|v| *v *= &inv);
            row.1 *= &inv;
            row.2.iter_mut().for_each(|v| *v *= &inv);
        }
        let pivot = rows[p].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == p || row.0[col].is_zero() {
                continue;
            }
            let factor = row.0[col].clone();
            for (v, pv) in row.0.iter_mut().zip(&pivot.0) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            row.1 -= &factor * &pivot.1;
            for (v, pv) in row.2.iter_mut().zip(&pivot.2) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        pivot_rows.push((p, col));
    }
    let mut dependencies = Vec::new();
    let mut pairings = Vec::new();
    for r in (0..m).filter(|&r| !used[r]) {
        dependencies.push(rows[r].2.clone());
        pairings.push(rows[r].1.clone());
    }
    let solution = pairings.iter().all(Zero::is_zero).then(|| {
        let mut x = vec![Rational::zero(); n];
        for &(p, col) in &pivot_rows {
            x[col] = rows[p].1.clone();
        }
        x
    });
    Reduction {
        rank: pivot_rows.len(),
        pivot_columns: pivot_rows.iter().map(|&(_, c)| c).collect(),
        solution,
        dependencies,
        pairings,
    }
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let zeros = vec![Rational::zero(); a.len()];
    reduce(a, &zeros).rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    #[test]
    fn rank_and_dependency() {
        let a = m(&[&[1, 1, 0], &[2, 2, 0], &[0, 1, 1]]);
        let red = reduce(&a, &[int(1), int(2), int(0)]);
        assert_eq!(red.rank, 2);
        assert_eq!(red.dependencies, vec![vec![int(-2), int(1), int(0)]]);
        assert!(red.solution.is_some());
        let red = reduce(&a, &[int(1), int(3), int(0)]);
        assert!(red.solution.is_none());
        assert_eq!(red.pairings, vec![int(1)]);
    }

    #[test]
    fn solution_satisfies_system() {
        let a = m(&[&[2, 1, 1], &[1, 0, 1], &[2, 1, 0]]);
        let b = [int(3), int(2), int(2)];
        let x = reduce(&a, &b).solution.unwrap();
        for (row, bi) in a.iter().zip(&b) {
            let s: Rational = row.iter().zip(&x).map(|(p, q)| p * q).sum();
            assert_eq!(&s, bi);
        }
    }

    #[test]
    fn union_find_detects_cycles() {
        let mut uf = UnionFind::new(3);
        assert!(uf.union(0, 1));
        assert!(uf.union(1, 2));
        assert!(!uf.union(0, 2));
    }
}
