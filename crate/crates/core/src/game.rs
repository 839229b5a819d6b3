//! The marked-board game: a board is won by V.I. when every assignment of
//! numbers to the marked cells splits as a sum of per-row, per-column (and
//! per-layer) weights, i.e. when the cell centres form a basic set.

use std::collections::BTreeSet;
use std::fmt;

use crate::decompose::{decompose_exact, is_basic, BasicWitness, ExactOutcome};
use crate::error::{Error, Result};
use crate::points::{Point, PointSet, Valuation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Board {
    pub n: usize,
    pub dim: usize,
    /// 1-based cells in ascending order.
    pub marked: Vec<Vec<usize>>,
}

impl Board {
    pub fn new(n: usize, dim: usize, mut marked: Vec<Vec<usize>>) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(Error::DimensionUnsupported { dim });
        }
        for c in &marked {
            if c.len() != dim {
                return Err(Error::Input(format!("cell {c:?} is not {dim}-dimensional")));
            }
            if c.iter().any(|&v| v == 0 || v > n) {
                return Err(Error::Input(format!("cell {c:?} outside [1,{n}]")));
            }
        }
        marked.sort();
        if let Some(w) = marked.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Input(format!("cell {:?} marked twice", w[0])));
        }
        Ok(Board { n, dim, marked })
    }

    /// Cell centres as integer points; index `i` is `marked[i]`.
    pub fn points(&self) -> PointSet {
        let pts = self
            .marked
            .iter()
            .map(|c| Point::from_ints(&c.iter().map(|&v| v as i64).collect::<Vec<_>>()))
            .collect();
        PointSet::new(self.dim, pts).expect("cells are distinct")
    }

    pub fn cell_name(&self, i: usize) -> String {
        let parts: Vec<String> = self.marked[i].iter().map(usize::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// First content line: the side `n`. Then one cell per line, `i j` or
/// `i j k`, 1-based. `#` starts a comment line.
pub fn parse_board(text: &str) -> Result<Board> {
    let mut n = None;
    let mut dim = None;
    let mut cells = Vec::new();
    let mut lines_of = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let nums: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse {
                line,
                message: "expected non-negative integers".into(),
            })?;
        if n.is_none() {
            match nums.as_slice() {
                [v] if *v > 0 => n = Some(*v),
                _ => {
                    return Err(Error::Parse {
                        line,
                        message: "first line must be the board side".into(),
                    })
                }
            }
            continue;
        }
        let d = *dim.get_or_insert(nums.len());
        if !(2..=3).contains(&nums.len()) || nums.len() != d {
            return Err(Error::DimensionMismatch {
                line,
                expected: d,
                found: nums.len(),
            });
        }
        if nums.iter().any(|&v| v == 0 || v > n.unwrap()) {
            return Err(Error::Parse {
                line,
                message: format!("cell outside [1,{}]", n.unwrap()),
            });
        }
        cells.push(nums);
        lines_of.push(line);
    }
    let n = n.ok_or_else(|| Error::Input("empty board file".into()))?;
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by(|&a, &b| cells[a].cmp(&cells[b]));
    for w in order.windows(2) {
        if cells[w[0]] == cells[w[1]] {
            let (a, b) = (
                lines_of[w[0]].min(lines_of[w[1]]),
                lines_of[w[0]].max(lines_of[w[1]]),
            );
            return Err(Error::DuplicatePoint {
                first: a,
                second: b,
            });
        }
    }
    Board::new(n, dim.unwrap_or(2), cells)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    /// Every assignment decomposes.
    VI,
    AN,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::VI => "V.I. wins",
            Winner::AN => "A.N. wins",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameOutcome {
    pub winner: Winner,
    /// A rook circuit (2D) or a dependency over cells when A.N. wins.
    pub witness: Option<BasicWitness>,
}

pub fn solve(board: &Board) -> GameOutcome {
    let v = is_basic(&board.points());
    GameOutcome {
        winner: if v.basic { Winner::VI } else { Winner::AN },
        witness: v.witness,
    }
}

/// Weights for one particular assignment, or why there are none.
pub fn solve_values(board: &Board, f: &Valuation) -> Result<ExactOutcome> {
    decompose_exact(&board.points(), f)
}

/// Minimal sets of cells of the `n`-cube that A.N. can win on, grouped up to
/// the 48 symmetries of the cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitClasses {
    pub n: usize,
    pub total: usize,
    /// `(size, number of circuits, one representative per class)`.
    pub by_size: Vec<(usize, usize, Vec<Vec<[usize; 3]>>)>,
}

// Every subdeterminant of a 0/1 matrix with three ones per row and at most
// 3n - 2 <= 7 independent rows is below 3^4, so rank mod this prime is exact.
const P: u64 = 2_147_483_647;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

struct Echelon {
    /// Reduced rows with their pivot column and combination of chosen cells.
    rows: Vec<(Vec<u64>, usize, Vec<u64>)>,
}

impl Echelon {
    /// Reduces `v` (the row of cell number `depth` in the chosen list);
    /// returns the leftover and the combination over the chosen cells.
    fn reduce(&self, mut v: Vec<u64>, width: usize) -> (Vec<u64>, Vec<u64>) {
        let mut comb = vec![0u64; width];
        for (row, pivot, rc) in &self.rows {
            let f = v[*pivot];
            if f == 0 {
                continue;
            }
            for (a, b) in v.iter_mut().zip(row) {
                *a = (*a + P - f * b % P) % P;
            }
            for (a, b) in comb.iter_mut().zip(rc) {
                *a = (*a + P - f * b % P) % P;
            }
        }
        (v, comb)
    }
}

fn canonical(cells: &[[usize; 3]], n: usize) -> Vec<[usize; 3]> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut best: Option<Vec<[usize; 3]>> = None;
    for perm in PERMS {
        for mask in 0..8u8 {
            let mut img: Vec<[usize; 3]> = cells
                .iter()
                .map(|c| {
                    let mut out = [0; 3];
                    for a in 0..3 {
                        let v = c[perm[a]];
                        out[a] = if mask >> a & 1 == 1 { n + 1 - v } else { v };
                    }
                    out
                })
                .collect();
            img.sort();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.unwrap_or_default()
}

/// Enumerates all circuits of the incidence matroid on the `n^3` cells by
/// depth-first search over independent sets.
pub fn enumerate_circuits(n: usize) -> Result<CircuitClasses> {
    if !(1..=3).contains(&n) {
        return Err(Error::Input("enumeration supports 1 <= n <= 3".into()));
    }
    let mut cells = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                cells.push([i, j, k]);
            }
        }
    }
    let width = 3 * n;
    let row_of = |c: &[usize; 3]| {
        let mut v = vec![0u64; width];
        for a in 0..3 {
            v[a * n + c[a] - 1] = 1;
        }
        v
    };
    let mut found: Vec<Vec<[usize; 3]>> = Vec::new();
    let mut classes: BTreeSet<Vec<[usize; 3]>> = BTreeSet::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut ech = Echelon { rows: Vec::new() };

    fn dfs(
        start: usize,
        cells: &[[usize; 3]],
        row_of: &dyn Fn(&[usize; 3]) -> Vec<u64>,
        n: usize,
        chosen: &mut Vec<usize>,
        ech: &mut Echelon,
        found: &mut Vec<Vec<[usize; 3]>>,
        classes: &mut BTreeSet<Vec<[usize; 3]>>,
    ) {
        for e in start..cells.len() {
            let depth = chosen.len();
            let (rest, comb) = ech.reduce(row_of(&cells[e]), depth + 1);
            match rest.iter().position(|&v| v != 0) {
                None => {
                    if comb[..depth].iter().all(|&c| c != 0) {
                        let mut circuit: Vec<[usize; 3]> =
                            chosen.iter().map(|&i| cells[i]).collect();
                        circuit.push(cells[e]);
                        classes.insert(canonical(&circuit, n));
                        found.push(circuit);
                    }
                }
                Some(pivot) => {
                    let inv = pow_mod(rest[pivot], P - 2);
                    let row: Vec<u64> = rest.iter().map(|v| v * inv % P).collect();
                    let mut rc: Vec<u64> = comb.iter().map(|v| v * inv % P).collect();
                    rc[depth] = inv;
                    // keep combination vectors long enough for deeper rows
                    for (_, _, c) in ech.rows.iter_mut() {
                        c.push(0);
                    }
                    ech.rows.push((row, pivot, rc));
                    chosen.push(e);
                    dfs(e + 1, cells, row_of, n, chosen, ech, found, classes);
                    chosen.pop();
                    ech.rows.pop();
                    for (_, _, c) in ech.rows.iter_mut() {
                        c.pop();
                    }
                }
            }
        }
    }
    dfs(
        0,
        &cells,
        &row_of,
        n,
        &mut chosen,
        &mut ech,
        &mut found,
        &mut classes,
    );

    let mut by_size: Vec<(usize, usize, Vec<Vec<[usize; 3]>>)> = Vec::new();
    let sizes: BTreeSet<usize> = found.iter().map(Vec::len).collect();
    for s in sizes {
        let count = found.iter().filter(|c| c.len() == s).count();
        let reps: Vec<Vec<[usize; 3]>> = classes.iter().filter(|c| c.len() == s).cloned().collect();
        by_size.push((s, count, reps));
    }
    Ok(CircuitClasses {
        n,
        total: found.len(),
        by_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::is_basic_by_rank;

    #[test]
    fn parse_and_validate() {
        let b = parse_board("# rectangle\n3\n1 1\n1 3\n2 1\n2 3\n").unwrap();
        assert_eq!((b.n, b.dim, b.marked.len()), (3, 2, 4));
        assert!(parse_board("2\n1 3\n").is_err());
        assert!(matches!(
            parse_board("2\n1 1\n1 1\n"),
            Err(Error::DuplicatePoint {
                first: 2,
                second: 3
            })
        ));
        assert!(parse_board("2\n1 1\n1 1 1\n").is_err());
        assert!(parse_board("").is_err());
    }

    #[test]
    fn rectangle_corners_lose() {
        let b = parse_board("3\n1 1\n1 3\n2 1\n2 3\n").unwrap();
        let out = solve(&b);
        assert_eq!(out.winner, Winner::AN);
        assert!(matches!(
            out.witness,
            Some(BasicWitness::ClosedLightning(_))
        ));
    }

    #[test]
    fn cube_examples() {
        let b = parse_board("2\n1 1 1\n2 2 1\n1 2 2\n2 1 2\n").unwrap();
        assert_eq!(solve(&b).winner, Winner::VI);
        let mut all = String::from("2\n");
        for i in 1..=2 {
            for j in 1..=2 {
                for k in 1..=2 {
                    all += &format!("{i} {j} {k}\n");
                }
            }
        }
        assert_eq!(solve(&parse_board(&all).unwrap()).winner, Winner::AN);
    }

    #[test]
    fn circuits_of_the_2_cube() {
        let c = enumerate_circuits(2).unwrap();
        // every circuit is a minimal dependent set under the exact rank
        for (size, _, reps) in &c.by_size {
            for r in reps {
                assert_eq!(r.len(), *size);
                let b = Board::new(2, 3, r.iter().map(|c| c.to_vec()).collect()).unwrap();
                assert!(!is_basic_by_rank(&b.points()).basic);
                for skip in 0..r.len() {
                    let sub: Vec<Vec<usize>> = r
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, c)| c.to_vec())
                        .collect();
                    assert!(is_basic_by_rank(&Board::new(2, 3, sub).unwrap().points()).basic);
                }
            }
        }
        assert!(c.total > 0);
        assert_eq!(c.by_size[0].0, 4);
    }
}
