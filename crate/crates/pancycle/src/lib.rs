//! Constructive pancyclicity engine for Cartesian powers of the nine-vertex
//! graph obtained by deleting a spanning ring from the complete graph `K9`.
//!
//! The n-fold power has `9^n` vertices and is never materialized: adjacency
//! is answered coordinate-wise ([`product`]), cycles of every length from 3
//! up to `9^n` are synthesized from a small family of editing moves inside
//! 9×9 mesh blocks ([`mesh`]) that are then spliced along a Hamiltonian chain
//! of blocks ([`chain`]), and every synthesized cycle doubles as an explicit
//! certificate that an independent checker re-validates vertex by vertex
//! ([`verify`]).
//!
//! Module map:
//!
//! * [`base`] — the nine-vertex base graph, Hamiltonian path search, and
//!   classical sufficient conditions for hamiltonicity.
//! * [`product`] — implicit Cartesian-power adjacency, mesh coordinates, and
//!   the boustrophedon chain of mesh blocks.
//! * [`mesh`] — length schedules and cycle constructions inside one block,
//!   with optional port edges for splicing.
//! * [`chain`] — length planning across blocks, splicing, and the full
//!   certificate stream.
//! * [`verify`] — construction-blind certificate checking and a brute-force
//!   oracle for small graphs.
//! * [`cert`] — on-disk certificate documents and edge-list exports.

#![forbid(unsafe_code)]

pub mod base;
pub mod cert;
pub mod chain;
pub mod mesh;
pub mod product;
pub mod verify;
