//! Basic subsets of Q^d and basic embeddings of trees.
//!
//! A finite set `K ⊂ Q^d` is *basic* when every function `f: K -> Q` is a sum
//! `g_0(x_0) + ... + g_{d-1}(x_{d-1})` of functions of one coordinate each.
//! This crate decides basicness exactly, produces decompositions under a fixed
//! gauge or certificates of infeasibility, implements the lightning and
//! E-operator machinery for planar sets, checks the forbidden-subgraph
//! criterion for basic embeddability of graphs in the plane and in books, and
//! generates explicit basic plane embeddings of the trees `R_n`.

pub mod decompose;
pub mod decomposition;
pub mod embed;
pub mod error;
pub mod game;
pub mod graphs;
pub mod lightning;
pub mod linalg;
pub mod points;
pub mod rational;
pub mod witness;

pub use decompose::{
    decompose_by_elimination, decompose_exact, decompose_lsq, is_basic, is_basic_by_rank,
    norm_report, BasicWitness, BasicnessVerdict, ExactOutcome, InfeasibilityCertificate,
    LsqOptions, LsqReport,
};
pub use decomposition::{evaluate, AxisFunction, Decomposition, GaugeClass};
pub use error::{Error, Result};
pub use graphs::{
    build_fn, build_rn, defect, embed_into_rn, embed_into_tree, embeds_in_book, forbidden_check,
    is_basically_embeddable, suppress_degree2, EmbedMap, ForbiddenReport, Multigraph,
};
pub use lightning::{
    collapse, e_iterate, e_step, find_closed_lightning, max_lightning_length, ClosedLightning,
    EIterationReport, FirstTransition, Lightning, LightningLength, Strip,
};
pub use points::{parse_point_set, parse_valuation, Point, PointSet, Valuation};
pub use rational::Rational;
