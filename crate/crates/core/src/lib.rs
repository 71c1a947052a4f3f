pub mod angulator;
pub mod formulas;
pub mod geom;
pub mod oracle;
pub mod plane_graph;
pub mod render;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/plane-graphs.md")]
    mod plane_graphs {}
    #[doc = include_str!("../../../book/src/edge-bound.md")]
    mod edge_bound {}
    #[doc = include_str!("../../../book/src/feasibility.md")]
    mod feasibility {}
    #[doc = include_str!("../../../book/src/construction.md")]
    mod construction {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
