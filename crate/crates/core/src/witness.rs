//! Text forms of every certificate the tools print, and their verification
//! against the input alone.
//!
//! A certificate is a block of `key: value` lines starting with
//! `certificate: <kind>`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::Zero;

use crate::decompose::{is_dependency, BasicWitness, InfeasibilityCertificate};
use crate::decomposition::{first_mismatch, Decomposition};
use crate::graphs::checker::{check_cross, check_cycle, check_embedding, check_pentode, RnLabels};
use crate::graphs::{CrossWitness, EmbedMap, Multigraph, PentodeWitness};
use crate::lightning::{e_iterate, ClosedLightning};
use crate::linalg::{rank, reduce, Incidence};
use crate::points::{PointSet, Valuation};
use crate::rational::parse_rational;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointsCertificate {
    /// Negative: point indices of a closed lightning, first index repeated
    /// at the end.
    ClosedLightning {
        indices: Vec<usize>,
        alternating_sum: Option<Rational>,
    },
    /// Negative: a left null vector of the incidence matrix.
    Dependency {
        weights: BTreeMap<usize, Rational>,
        pairing: Option<Rational>,
    },
    /// Positive: the points removed by each E step, until nothing is left.
    Layers(Vec<Vec<usize>>),
    /// Positive: `|K|` incidence columns `(axis, coordinate)` whose square
    /// submatrix is nonsingular.
    Columns(Vec<(usize, Rational)>),
    /// Positive for one valuation: the decomposition itself.
    Decomposition(Decomposition),
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

impl PointsCertificate {
    pub fn is_positive(&self) -> bool {
        matches!(
            self,
            Self::Layers(_) | Self::Columns(_) | Self::Decomposition(_)
        )
    }

    pub fn from_witness(w: &BasicWitness) -> Self {
        match w {
            BasicWitness::ClosedLightning(c) => Self::ClosedLightning {
                indices: c.indices.clone(),
                alternating_sum: None,
            },
            BasicWitness::Dependency(w) => Self::Dependency {
                weights: w.clone(),
                pairing: None,
            },
        }
    }

    pub fn from_infeasibility(c: &InfeasibilityCertificate) -> Self {
        match c {
            InfeasibilityCertificate::ClosedLightningSum {
                cycle,
                alternating_sum,
            } => Self::ClosedLightning {
                indices: cycle.indices.clone(),
                alternating_sum: Some(alternating_sum.clone()),
            },
            InfeasibilityCertificate::DependencyVector { weights, pairing } => Self::Dependency {
                weights: weights.clone(),
                pairing: Some(pairing.clone()),
            },
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Self::ClosedLightning {
                indices,
                alternating_sum,
            } => {
                out += "certificate: closed-lightning\n";
                let _ = writeln!(out, "points: {}", join(indices));
                if let Some(s) = alternating_sum {
                    let _ = writeln!(out, "alternating-sum: {s}");
                }
            }
            Self::Dependency { weights, pairing } => {
                out += "certificate: dependency\n";
                let w: Vec<String> = weights.iter().map(|(i, v)| format!("{i}={v}")).collect();
                let _ = writeln!(out, "weights: {}", w.join(" "));
                if let Some(p) = pairing {
                    let _ = writeln!(out, "pairing: {p}");
                }
            }
            Self::Layers(layers) => {
                out += "certificate: layers\n";
                for (i, l) in layers.iter().enumerate() {
                    let _ = writeln!(out, "layer {}: {}", i + 1, join(l));
                }
            }
            Self::Columns(cols) => {
                out += "certificate: columns\n";
                let c: Vec<String> = cols.iter().map(|(a, v)| format!("{a}:{v}")).collect();
                let _ = writeln!(out, "columns: {}", c.join(" "));
            }
            Self::Decomposition(d) => {
                out += "certificate: decomposition\n";
                out += &d.to_text();
            }
        }
        out
    }

    /// Reads the first certificate block in `text`; other lines are ignored.
    pub fn parse(text: &str, dim: usize) -> Result<Self, String> {
        let fields = key_values(text);
        let kind = fields
            .iter()
            .find(|(k, _)| k == "certificate")
            .map(|(_, v)| v.as_str())
            .ok_or("no certificate line")?;
        let get = |key: &str| {
            fields
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
        };
        let rat = |s: &str| parse_rational(s);
        let idx = |s: &str| s.parse::<usize>().map_err(|_| format!("bad index {s:?}"));
        Ok(match kind {
            "closed-lightning" => Self::ClosedLightning {
                indices: get("points")
                    .ok_or("missing points")?
                    .split_whitespace()
                    .map(idx)
                    .collect::<Result<_, _>>()?,
                alternating_sum: get("alternating-sum").map(rat).transpose()?,
            },
            "dependency" => {
                let mut weights = BTreeMap::new();
                for t in get("weights").ok_or("missing weights")?.split_whitespace() {
                    let (i, v) = t.split_once('=').ok_or("weights are idx=value")?;
                    weights.insert(idx(i)?, rat(v)?);
                }
                Self::Dependency {
                    weights,
                    pairing: get("pairing").map(rat).transpose()?,
                }
            }
            "layers" => Self::Layers(
                fields
                    .iter()
                    .filter(|(k, _)| k.starts_with("layer "))
                    .map(|(_, v)| v.split_whitespace().map(idx).collect())
                    .collect::<Result<_, _>>()?,
            ),
            "columns" => Self::Columns(
                get("columns")
                    .ok_or("missing columns")?
                    .split_whitespace()
                    .map(|t| {
                        let (a, v) = t.split_once(':').ok_or("columns are axis:coordinate")?;
                        Ok((idx(a)?, rat(v)?))
                    })
                    .collect::<Result<_, String>>()?,
            ),
            "decomposition" => {
                Self::Decomposition(Decomposition::parse(text, dim).map_err(|e| e.to_string())?)
            }
            other => return Err(format!("unknown points certificate {other:?}")),
        })
    }
}

fn key_values(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once(':'))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

/// A positive certificate for a basic `k`: E-iteration layers when E empties
/// the set, otherwise a nonsingular square column selection.
pub fn basic_certificate(k: &PointSet) -> Option<PointsCertificate> {
    if matches!(k.dim(), 2 | 3) {
        let mut layers = Vec::new();
        let mut alive: Vec<usize> = (0..k.len()).collect();
        let report = e_iterate(k).ok()?;
        if report.index.is_some() {
            while !alive.is_empty() {
                let sub = k.subset(alive.iter().copied());
                let next = crate::lightning::e_step(&sub).ok()?;
                let (gone, kept): (Vec<usize>, Vec<usize>) = alive
                    .iter()
                    .partition(|&&i| next.index_of(k.get(i)).is_none());
                layers.push(gone);
                alive = kept;
            }
            return Some(PointsCertificate::Layers(layers));
        }
    }
    let inc = Incidence::new(k);
    let a = inc.dense();
    let red = reduce(&a, &vec![Rational::zero(); a.len()]);
    (red.rank == k.len()).then(|| {
        PointsCertificate::Columns(
            red.pivot_columns
                .iter()
                .map(|&c| inc.columns[c].clone())
                .collect(),
        )
    })
}

/// Checks `cert` against `k` (and `f` where the certificate talks about a
/// valuation). Negative certificates prove `k` not basic; with `f` given and
/// a stated sum or pairing, they also prove this `f` has no decomposition.
pub fn verify_points(
    k: &PointSet,
    f: Option<&Valuation>,
    cert: &PointsCertificate,
) -> Result<(), String> {
    if let Some(f) = f {
        f.check_domain(k).map_err(|e| e.to_string())?;
    }
    match cert {
        PointsCertificate::ClosedLightning {
            indices,
            alternating_sum,
        } => {
            if k.dim() != 2 {
                return Err("closed lightnings live in the plane".into());
            }
            if indices.iter().any(|&i| i >= k.len()) {
                return Err("point index out of range".into());
            }
            let c = ClosedLightning {
                indices: indices.clone(),
            };
            if !c.is_valid_in(k) {
                return Err("not a closed lightning".into());
            }
            check_pairing(alternating_sum, f, |f| c.alternating_sum(f))
        }
        PointsCertificate::Dependency { weights, pairing } => {
            if !is_dependency(k, weights) {
                return Err("weights are not a dependency".into());
            }
            check_pairing(pairing, f, |f| {
                weights.iter().map(|(&i, w)| w * &f[i]).sum()
            })
        }
        PointsCertificate::Layers(layers) => {
            let all: Vec<usize> = layers.iter().flatten().copied().collect();
            let set: BTreeSet<usize> = all.iter().copied().collect();
            if set.len() != all.len() || set != (0..k.len()).collect() {
                return Err("layers do not partition the set".into());
            }
            let mut alive: BTreeSet<usize> = set;
            for (t, layer) in layers.iter().enumerate() {
                for &i in layer {
                    let p = k.get(i);
                    let lonely = (0..k.dim()).any(|a| {
                        alive
                            .iter()
                            .filter(|&&j| k.get(j).coords()[a] == p.coords()[a])
                            .count()
                            == 1
                    });
                    if !lonely {
                        return Err(format!("point {i} of layer {} is not removable", t + 1));
                    }
                }
                for i in layer {
                    alive.remove(i);
                }
            }
            Ok(())
        }
        PointsCertificate::Columns(cols) => {
            if cols.len() != k.len() {
                return Err("need exactly |K| columns".into());
            }
            let distinct: BTreeSet<&(usize, Rational)> = cols.iter().collect();
            if distinct.len() != cols.len() || cols.iter().any(|(a, _)| *a >= k.dim()) {
                return Err("columns repeat or name a missing axis".into());
            }
            let minor: Vec<Vec<Rational>> = k
                .iter()
                .map(|p| {
                    cols.iter()
                        .map(|(a, c)| {
                            if &p.coords()[*a] == c {
                                Rational::from_integer(1.into())
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            if rank(&minor) == k.len() {
                Ok(())
            } else {
                Err("selected columns are singular".into())
            }
        }
        PointsCertificate::Decomposition(d) => {
            let f = f.ok_or("a decomposition needs the values file")?;
            if d.dim() != k.dim() {
                return Err("dimension mismatch".into());
            }
            match first_mismatch(d, k, f).map_err(|e| e.to_string())? {
                None => Ok(()),
                Some(i) => Err(format!("decomposition disagrees with f at point {i}")),
            }
        }
    }
}

fn check_pairing(
    stated: &Option<Rational>,
    f: Option<&Valuation>,
    compute: impl Fn(&Valuation) -> Rational,
) -> Result<(), String> {
    match (stated, f) {
        (Some(s), Some(f)) => {
            let actual = compute(f);
            if actual.is_zero() {
                Err("pairing with f vanishes".into())
            } else if &actual != s {
                Err(format!("stated {s}, recomputed {actual}"))
            } else {
                Ok(())
            }
        }
        (Some(_), None) => Err("certificate names a sum but no values were given".into()),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphCertificate {
    Cycle(Vec<String>),
    Pentode(PentodeWitness),
    Cross(CrossWitness),
    /// Containment in R_n.
    Embedding {
        n: usize,
        map: EmbedMap,
    },
}

impl GraphCertificate {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Self::Cycle(c) => {
                out += "certificate: cycle\n";
                let _ = writeln!(out, "cycle: {}", c.join(" "));
            }
            Self::Pentode(w) => {
                out += "certificate: pentode\n";
                let _ = writeln!(out, "center: {}", w.center);
                let _ = writeln!(out, "rays: {}", w.rays.join(" "));
            }
            Self::Cross(w) => {
                out += "certificate: cross\n";
                let _ = writeln!(out, "center: {}", w.center);
                for (arm, ends) in w.arms.iter().zip(&w.ends) {
                    let _ = writeln!(out, "arm: {} | {} {}", arm.join(" "), ends[0], ends[1]);
                }
            }
            Self::Embedding { n, map } => {
                out += "certificate: embedding\n";
                let _ = writeln!(out, "host: R {n}");
                out += &map.to_text();
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let fields = key_values(text);
        let get = |key: &str| {
            fields
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.clone())
                .ok_or(format!("missing {key}"))
        };
        let words = |s: String| s.split_whitespace().map(String::from).collect::<Vec<_>>();
        Ok(match get("certificate")?.as_str() {
            "cycle" => Self::Cycle(words(get("cycle")?)),
            "pentode" => Self::Pentode(PentodeWitness {
                center: get("center")?,
                rays: words(get("rays")?),
            }),
            "cross" => {
                let mut arms = Vec::new();
                let mut ends = Vec::new();
                for (_, v) in fields.iter().filter(|(k, _)| k == "arm") {
                    let (a, e) = v.split_once('|').ok_or("arm lines are `path | e1 e2`")?;
                    let e = words(e.to_string());
                    let [e1, e2] = <[String; 2]>::try_from(e).map_err(|_| "two ends per arm")?;
                    arms.push(words(a.to_string()));
                    ends.push([e1, e2]);
                }
                Self::Cross(CrossWitness {
                    center: get("center")?,
                    arms,
                    ends,
                })
            }
            "embedding" => {
                let host = get("host")?;
                let n = host
                    .strip_prefix("R ")
                    .and_then(|v| v.trim().parse().ok())
                    .ok_or("host is `R <n>`")?;
                Self::Embedding {
                    n,
                    map: EmbedMap::parse(text)?,
                }
            }
            other => return Err(format!("unknown graph certificate {other:?}")),
        })
    }
}

pub fn verify_graph(g: &Multigraph, cert: &GraphCertificate) -> Result<(), String> {
    match cert {
        GraphCertificate::Cycle(c) => check_cycle(g, c),
        GraphCertificate::Pentode(w) => check_pentode(g, w),
        GraphCertificate::Cross(w) => check_cross(g, w),
        GraphCertificate::Embedding { n, map } => check_embedding(g, map, &RnLabels { n: *n }),
    }
}
