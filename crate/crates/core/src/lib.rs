//! Cycle-space analysis of Hamilton cycles over GF(2).
//!
//! This crate decides, constructs and empirically measures whether the
//! Hamilton cycles of a graph span its cycle space over GF(2). It provides:
//!
//! - dense GF(2) linear algebra ([`gf2`]);
//! - immutable simple graphs with stable edge indices ([`graph`]);
//! - cycle space, cut space and Hamilton-span computations plus witness
//!   subgraph search ([`cyclespace`]);
//! - random graph models with reproducible seeding ([`models`]);
//! - Hamilton cycle enumeration and Hamilton path construction ([`hamilton`]);
//! - the parity-switcher pipeline that turns a non-spanning witness into a
//!   contradiction certificate ([`switcher`]);
//! - executable structural checks: expansion, edge distribution, robust
//!   diameter, degree splits ([`checkers`]);
//! - a reproducible trial runner with CSV/JSON reporting ([`experiments`]).

pub mod checkers;
pub mod cyclespace;
pub mod experiments;
pub mod gf2;
pub mod graph;
pub mod hamilton;
pub mod models;
pub mod switcher;
