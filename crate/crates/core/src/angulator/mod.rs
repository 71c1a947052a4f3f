//! Recognition and construction of convex hull g-angulations.
//!
//! A convex hull g-angulation is a connected simple plane graph whose
//! exterior face is a simple `h`-cycle and whose inner faces are all
//! `g`-cycles. Two special cases get their own name: `h = n` (every vertex
//! on the exterior cycle) and `h = g` (every face a `g`-cycle).

mod layout;
mod spiral;
mod triangulate;

pub use layout::synthesize_coordinates;
pub use spiral::{construct_combinatorial, construct_with_trace, EarStep, SpiralTrace};
pub use triangulate::triangulate_points;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::{self, AngulationParams, FormulaError, InfeasibleReason};
use crate::geom::GeomError;
use crate::plane_graph::{GraphError, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AngulatorError {
    #[error("graph has no cycle")]
    Acyclic,
    #[error("no convex hull g-angulation exists: {0:?}")]
    Infeasible(InfeasibleReason),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("layout needs coordinates of magnitude {0}, beyond the coordinate limit")]
    LayoutOverflow(i64),
    #[error("cannot lay out graph: {0}")]
    LayoutUnsupported(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    ConvexHullGAngulation,
    ConvexGAngulation,
    GAngulation,
    NotAngulation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RecognitionFlag {
    /// The exterior walk repeats a vertex.
    ExteriorNotSimpleCycle,
    /// Inner faces share one degree that differs from the girth.
    GirthMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceViolation {
    pub face: usize,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionReport {
    pub is_angulation: bool,
    /// Every class the graph belongs to, most general first.
    pub classification: Vec<Classification>,
    /// Observed counts; `g` is the girth and `t` is `m - n`.
    pub measured: AngulationParams,
    pub violations: Vec<FaceViolation>,
    pub flags: Vec<RecognitionFlag>,
}

impl RecognitionReport {
    pub fn is(&self, class: Classification) -> bool {
        self.classification.contains(&class)
    }
}

/// Classifies a plane graph. Girth is measured by graph search and every
/// inner face degree is checked against it; when the graph qualifies, its
/// counts are cross-checked against [`formulas::feasibility`].
pub fn recognize(graph: &PlaneGraph) -> Result<RecognitionReport, AngulatorError> {
    let g = graph.girth().ok_or(AngulatorError::Acyclic)?;
    let census = graph.face_census();
    let n = graph.vertex_count();
    let m = graph.edge_count();
    let h = census.exterior_degree;

    let exterior = &census.walks[census.outer];
    let mut seen = vec![false; n];
    let simple_exterior = exterior
        .iter()
        .all(|&v| !std::mem::replace(&mut seen[v], true));

    let violations: Vec<FaceViolation> = census
        .degrees
        .iter()
        .enumerate()
        .filter(|&(f, &d)| f != census.outer && d != g)
        .map(|(face, &degree)| FaceViolation { face, degree })
        .collect();

    let mut flags = Vec::new();
    if !simple_exterior {
        flags.push(RecognitionFlag::ExteriorNotSimpleCycle);
    }
    if census.inner_degrees.len() == 1 && census.min_inner_degree() != Some(g) {
        flags.push(RecognitionFlag::GirthMismatch);
    }

    let measured = AngulationParams {
        n: n as u64,
        h: h as u64,
        g: g as u64,
        t: (m - n) as u64,
        m: m as u64,
        inner_faces: census.inner_face_count() as u64,
    };
    let is_angulation = simple_exterior && violations.is_empty() && census.f > 1;

    let mut classification = Vec::new();
    if is_angulation {
        let report = formulas::feasibility(n as u64, g as u64, h as u64)?;
        if report.params != Some(measured) {
            return Err(AngulatorError::Inconsistent(format!(
                "measured {measured:?} but the counting formulas give {report:?}"
            )));
        }
        classification.push(Classification::ConvexHullGAngulation);
        if h == n {
            classification.push(Classification::ConvexGAngulation);
        }
        if h == g {
            classification.push(Classification::GAngulation);
        }
    } else {
        classification.push(Classification::NotAngulation);
    }

    Ok(RecognitionReport {
        is_angulation,
        classification,
        measured,
        violations,
        flags,
    })
}
