//! Checked-in example graphs, decompositions and property files.

use crate::graph::{MultiGraph, VertexId};

pub const FIGURE1_ADJ: &str = include_str!("../../../fixtures/figure1.adj");
pub const FIGURE1_BAGS: &str = include_str!("../../../fixtures/figure1.bags");
pub const FIGURE2_ADJ: &str = include_str!("../../../fixtures/figure2.adj");
pub const FIGURE2_BAGS: &str = include_str!("../../../fixtures/figure2.bags");
/// The four-core Reed block with maximum degree below 4.
pub const CONCLUSION_PROP: &str = include_str!("../../../fixtures/conclusion.prop");
pub const TRIANGLE_FREE_PROP: &str = include_str!("../../../fixtures/triangle_free_3col.prop");

/// One bag per line, comma separated vertex ids; blank lines and `#`
/// comments are skipped.
pub fn parse_bags(text: &str) -> Result<Vec<Vec<VertexId>>, std::num::ParseIntError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(|x| x.trim().parse()).collect())
        .collect()
}

/// Triangle-free, 14 vertices, 27 edges, chromatic number 4, pathwidth 4.
pub fn figure1() -> (MultiGraph, Vec<Vec<VertexId>>) {
    (MultiGraph::from_adjacency_text(FIGURE1_ADJ).unwrap(), parse_bags(FIGURE1_BAGS).unwrap())
}

/// Triangle-free, 22 vertices, maximum degree 4, chromatic number 4,
/// pathwidth 4.
pub fn figure2() -> (MultiGraph, Vec<Vec<VertexId>>) {
    (MultiGraph::from_adjacency_text(FIGURE2_ADJ).unwrap(), parse_bags(FIGURE2_BAGS).unwrap())
}
