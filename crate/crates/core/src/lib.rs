//! Iterative color refinement of simple graphs.
//!
//! Starting from a coloring (by default every vertex gets color 0), each
//! step recolors all vertices at once by their *portrait*: the number of
//! neighbors they have of each current color. Distinct portraits are ranked
//! lexicographically and the rank becomes the new color. From the uniform
//! start the palette never shrinks, and once two consecutive colorings
//! agree up to renaming colors nothing changes again; the stable coloring
//! is the coarsest equitable partition, reached within `n` steps.
//!
//! ```
//! use equirefine::{graph::Graph, refine::refine, analysis::partition_of};
//!
//! let trace = refine(&Graph::path(5));
//! assert_eq!(trace.palette_sizes, vec![1, 2, 3, 3]);
//! assert_eq!(trace.converged_at, Some(3));
//! assert_eq!(
//!     partition_of(trace.final_coloring()).classes,
//!     vec![vec![0, 4], vec![1, 3], vec![2]],
//! );
//! ```

pub mod analysis;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod refine;

pub use analysis::{
    colorings_isomorphic, is_refinement, partition_of, verify_equitable, Partition,
};
pub use graph::{random_graph, ExpandedGraph, Graph, VertexOrigin};
pub use refine::{refine, refine_step, refine_to_fixpoint, Coloring, Portrait, RefinementTrace};
