//! Per-axis decompositions `f(p) = g_0(p_0) + ... + g_{d-1}(p_{d-1})`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::points::{Point, PointSet, Valuation};
use crate::rational::parse_rational;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxisFunction {
    pub axis: usize,
    pub table: BTreeMap<Rational, Rational>,
}

impl AxisFunction {
    pub fn new(axis: usize) -> Self {
        AxisFunction {
            axis,
            table: BTreeMap::new(),
        }
    }

    pub fn get(&self, coord: &Rational) -> Option<&Rational> {
        self.table.get(coord)
    }

    pub fn sup_norm(&self) -> Rational {
        self.table
            .values()
            .map(crate::rational::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// One connectivity class of the gauge: its root (smallest point of the
/// class, canonical index) and the value f(root) stored on axis 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaugeClass {
    pub root: usize,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub per_axis: Vec<AxisFunction>,
    pub gauge: Vec<GaugeClass>,
}

impl Decomposition {
    pub fn zero(dim: usize) -> Self {
        Decomposition {
            per_axis: (0..dim).map(AxisFunction::new).collect(),
            gauge: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.per_axis.len()
    }

    /// `alpha * self + beta * other`, tables added pointwise over the union of
    /// keys (a missing key counts as 0). The gauge record is dropped.
    pub fn combine(&self, alpha: &Rational, other: &Decomposition, beta: &Rational) -> Self {
        let per_axis = self
            .per_axis
            .iter()
            .zip(&other.per_axis)
            .map(|(a, b)| {
                let mut table = BTreeMap::new();
                for k in a.table.keys().chain(b.table.keys()) {
                    let va = a.table.get(k).cloned().unwrap_or_else(Rational::zero);
                    let vb = b.table.get(k).cloned().unwrap_or_else(Rational::zero);
                    table.insert(k.clone(), alpha * va + beta * vb);
                }
                AxisFunction {
                    axis: a.axis,
                    table,
                }
            })
            .collect();
        Decomposition {
            per_axis,
            gauge: Vec::new(),
        }
    }

    /// Decomposition text: `axis j: coord -> value` lines per axis in
    /// ascending coordinate order, followed by the gauge block.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.per_axis {
            for (c, v) in &g.table {
                let _ = writeln!(out, "axis {}: {} -> {}", g.axis, c, v);
            }
        }
        out.push_str("gauge:\n");
        for class in &self.gauge {
            let _ = writeln!(out, "  root {} value {}", class.root, class.value);
        }
        out
    }

    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        let mut dec = Decomposition::zero(dim);
        let mut in_gauge = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            let bad = |m: &str| Error::Parse {
                line,
                message: m.to_string(),
            };
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            if l == "gauge:" {
                in_gauge = true;
                continue;
            }
            if in_gauge {
                let t: Vec<&str> = l.split_whitespace().collect();
                match t.as_slice() {
                    ["root", r, "value", v] => {
                        let root = r.parse().map_err(|_| bad("bad gauge root"))?;
                        let value = parse_rational(v).map_err(|m| bad(&m))?;
                        dec.gauge.push(GaugeClass { root, value });
                    }
                    _ => return Err(bad("bad gauge line")),
                }
                continue;
            }
            let Some(rest) = l.strip_prefix("axis ") else {
                // other report lines are skipped so whole reports can be fed back
                continue;
            };
            let (axis, body) = rest.split_once(':').ok_or_else(|| bad("missing ':'"))?;
            let axis: usize = axis.trim().parse().map_err(|_| bad("bad axis"))?;
            if axis >= dim {
                return Err(bad("axis out of range"));
            }
            let (c, v) = body.split_once("->").ok_or_else(|| bad("missing '->'"))?;
            let c = parse_rational(c.trim()).map_err(|m| bad(&m))?;
            let v = parse_rational(v.trim()).map_err(|m| bad(&m))?;
            dec.per_axis[axis].table.insert(c, v);
        }
        Ok(dec)
    }
}

/// Σ_j g_j(p_j). Fails with `OutOfDomain` if a coordinate has no table entry.
pub fn evaluate(dec: &Decomposition, p: &Point) -> Result<Rational> {
    if p.dim() != dec.dim() {
        return Err(Error::Input(format!(
            "point of dimension {} against a {}-axis decomposition",
            p.dim(),
            dec.dim()
        )));
    }
    let mut sum = Rational::zero();
    for (g, c) in dec.per_axis.iter().zip(p.coords()) {
        let v = g.get(c).ok_or_else(|| Error::OutOfDomain {
            axis: g.axis,
            coord: c.clone(),
        })?;
        sum += v;
    }
    Ok(sum)
}

/// Index of the first point where the decomposition disagrees with `f`.
pub fn first_mismatch(dec: &Decomposition, k: &PointSet, f: &Valuation) -> Result<Option<usize>> {
    f.check_domain(k)?;
    for (i, p) in k.iter().enumerate() {
        if evaluate(dec, p)? != f[i] {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
