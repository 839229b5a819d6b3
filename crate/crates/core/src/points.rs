//! Finite point sets in Q^d and valuations on them.
//!
//! A [`PointSet`] is always kept in canonical order: points are sorted
//! lexicographically by coordinates, and every index handed out by this
//! crate (certificates, gauges, valuations) refers to that order.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::parse_rational_at;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| crate::rational::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn x(&self) -> &Rational {
        &self.0[0]
    }

    pub fn y(&self) -> &Rational {
        &self.0[1]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    pub fn empty(dim: usize) -> Self {
        PointSet {
            dim,
            points: Vec::new(),
        }
    }

    /// Builds a normalized set. Duplicates and dimension errors are reported
    /// with 1-based positions in `points`.
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        let lines: Vec<usize> = (1..=points.len()).collect();
        Self::from_numbered(dim, points.into_iter().zip(lines).collect())
    }

    /// Like [`PointSet::new`] but silently merges equal points.
    pub fn from_points_dedup(dim: usize, mut points: Vec<Point>) -> Result<Self> {
        points.sort();
        points.dedup();
        Self::new(dim, points)
    }

    fn from_numbered(dim: usize, mut pts: Vec<(Point, usize)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("dimension must be positive".into()));
        }
        for (p, line) in &pts {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    line: *line,
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        pts.sort();
        for w in pts.windows(2) {
            if w[0].0 == w[1].0 {
                let (a, b) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
                return Err(Error::DuplicatePoint {
                    first: a,
                    second: b,
                });
            }
        }
        Ok(PointSet {
            dim,
            points: pts.into_iter().map(|(p, _)| p).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Subset by canonical indices; order is preserved so the result is
    /// already canonical.
    pub fn subset(&self, keep: impl IntoIterator<Item = usize>) -> PointSet {
        let mut idx: Vec<usize> = keep.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        PointSet {
            dim: self.dim,
            points: idx.into_iter().map(|i| self.points[i].clone()).collect(),
        }
    }

    /// Distinct coordinates along `axis`, ascending.
    pub fn axis_values(&self, axis: usize) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.points.iter().map(|p| p.0[axis].clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// For every axis, the map coordinate -> column index within that axis.
    pub(crate) fn axis_index(&self) -> Vec<BTreeMap<Rational, usize>> {
        (0..self.dim)
            .map(|a| {
                self.axis_values(a)
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| (c, i))
                    .collect()
            })
            .collect()
    }

    /// Text in the points-file format; parses back to an equal set.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            let line: Vec<String> = p.0.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then_some((i + 1, l))
    })
}

/// Parses the points file format: one point per line, whitespace-separated
/// integers or `p/q` fractions, `#` comment lines. An empty file is the empty
/// set in dimension 2.
pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let mut pts = Vec::new();
    let mut dim = None;
    for (line, l) in content_lines(text) {
        let coords = l
            .split_whitespace()
            .map(|t| parse_rational_at(t, line))
            .collect::<Result<Vec<_>>>()?;
        let d = *dim.get_or_insert(coords.len());
        if coords.len() != d {
            return Err(Error::DimensionMismatch {
                line,
                expected: d,
                found: coords.len(),
            });
        }
        pts.push((Point(coords), line));
    }
    PointSet::from_numbered(dim.unwrap_or(2), pts)
}

/// A function on a point set, indexed by canonical position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuation(pub Vec<Rational>);

impl Valuation {
    pub fn new(values: Vec<Rational>) -> Self {
        Valuation(values)
    }

    pub fn zeros(n: usize) -> Self {
        Valuation(vec![crate::rational::int(0); n])
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Valuation(values.iter().map(|&v| crate::rational::int(v)).collect())
    }

    /// Evaluates `f` at every point of `k`.
    pub fn from_fn(k: &PointSet, f: impl Fn(&Point) -> Rational) -> Self {
        Valuation(k.iter().map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn check_domain(&self, k: &PointSet) -> Result<()> {
        if self.0.len() != k.len() {
            return Err(Error::ValuationMismatch {
                expected: k.len(),
                found: self.0.len(),
            });
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        self.0.iter().map(|v| format!("{v}\n")).collect()
    }
}

impl std::ops::Index<usize> for Valuation {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

/// Parses a valuation file: either one value per line (i-th line is the value
/// at the i-th canonical point) or `index value` pairs covering `0..n`.
pub fn parse_valuation(text: &str, n: usize) -> Result<Valuation> {
    let lines: Vec<(usize, Vec<&str>)> = content_lines(text)
        .map(|(i, l)| (i, l.split_whitespace().collect()))
        .collect();
    let paired = lines.first().is_some_and(|(_, t)| t.len() == 2);
    let mut values: Vec<Option<Rational>> = vec![None; if paired { n } else { 0 }];
    for (line, toks) in &lines {
        match (paired, toks.len()) {
            (false, 1) => values.push(Some(parse_rational_at(toks[0], *line)?)),
            (true, 2) => {
                let idx: usize = toks[0].parse().map_err(|_| Error::Parse {
                    line: *line,
                    message: format!("bad index {:?}", toks[0]),
                })?;
                if idx >= n {
                    return Err(Error::ValuationMismatch {
                        expected: n,
                        found: idx + 1,
                    });
                }
                if values[idx].is_some() {
                    return Err(Error::Parse {
                        line: *line,
                        message: format!("index {idx} given twice"),
                    });
                }
                values[idx] = Some(parse_rational_at(toks[1], *line)?);
            }
            _ => {
                return Err(Error::Parse {
                    line: *line,
                    message: "mixed valuation line formats".into(),
                })
            }
        }
    }
    let found = values.iter().filter(|v| v.is_some()).count();
    if values.len() != n || found != n {
        return Err(Error::ValuationMismatch { expected: n, found });
    }
    Ok(Valuation(values.into_iter().map(Option::unwrap).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn parses_unit_square() {
        let k = parse_point_set("0 0\n0 1\n1 0\n1 1").unwrap();
        assert_eq!(k.len(), 4);
        assert_eq!(k.dim(), 2);
        assert_eq!(k.get(1), &Point::from_ints(&[0, 1]));
    }

    #[test]
    fn duplicate_reports_lines() {
        let err = parse_point_set("1/2 1/2\n1/2 1/2").unwrap_err();
        assert_eq!(
            err,
            Error::DuplicatePoint {
                first: 1,
                second: 2
            }
        );
        let err = parse_point_set("# c\n0 0\n2/4 1\n1 1\n1/2 1").unwrap_err();
        assert_eq!(
            err,
            Error::DuplicatePoint {
                first: 3,
                second: 5
            }
        );
    }

    #[test]
    fn dimension_mismatch_and_bad_token() {
        assert!(matches!(
            parse_point_set("0 0\n0 0 1"),
            Err(Error::DimensionMismatch {
                line: 2,
                expected: 2,
                found: 3
            })
        ));
        assert!(matches!(
            parse_point_set("0 a"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn eleven_b_set() {
        let k = parse_point_set("0 0 0\n1 1 0\n0 1 1\n1 0 1").unwrap();
        assert_eq!(k.dim(), 3);
        let order: Vec<String> = k.iter().map(|p| p.to_string()).collect();
        assert_eq!(order, ["(0,0,0)", "(0,1,1)", "(1,0,1)", "(1,1,0)"]);
    }

    #[test]
    fn empty_file_is_empty_set() {
        let k = parse_point_set("# nothing\n\n").unwrap();
        assert!(k.is_empty());
    }

    #[test]
    fn valuation_formats() {
        let v = parse_valuation("1\n-1/2\n3", 3).unwrap();
        assert_eq!(v.0, vec![int(1), frac(-1, 2), int(3)]);
        let v = parse_valuation("2 5\n0 1\n1 7/3", 3).unwrap();
        assert_eq!(v.0, vec![int(1), frac(7, 3), int(5)]);
        assert!(matches!(
            parse_valuation("1\n2", 3),
            Err(Error::ValuationMismatch {
                expected: 3,
                found: 2
            })
        ));
        assert!(parse_valuation("0 1\n0 2\n1 1", 2).is_err());
    }
}
