//! Graph mining kernels written against a swappable set-algebra layer, with a
//! staged benchmarking harness.
//!
//! The crate is organised bottom-up:
//!
//! - [`setcore`]: the [`VertexSet`](setcore::VertexSet) contract and its
//!   sorted-array, hybrid-bitmap and hash implementations.
//! - [`graphstore`]: the set-centric [`SetGraph`](graphstore::SetGraph),
//!   edge-list ingestion, synthetic generators and rank orientation.
//! - [`ordering`]: degree, degeneracy and approximate degeneracy orders, and
//!   core decomposition.
//! - [`cliqueminer`]: Bron-Kerbosch maximal cliques, k-clique counting and
//!   listing, triangles and k-clique-stars.
//! - [`graphlearn`]: vertex similarity, link prediction and Jarvis-Patrick
//!   clustering.
//! - [`benchkit`]: the load/build/preprocess/kernel pipeline with timings and
//!   throughput reporting.

pub mod setcore;
pub mod graphstore;
pub mod ordering;
pub mod cliqueminer;
pub mod graphlearn;
pub mod benchkit;
