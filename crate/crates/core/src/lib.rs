//! The `(k+2, k)` Zigzag MSR erasure code over GF(3), with optimal-bandwidth
//! repair of both parity nodes, disk-I/O accounting, and a small simulated
//! storage cluster.
//!
//! ```
//! use zigzag_msr::repair::{RepairPlan, plan_repair};
//! use zigzag_msr::zigzag::ZigzagCode;
//!
//! let code = ZigzagCode::new(3).unwrap();
//! let plan = plan_repair(&code, 3).unwrap();
//! assert_eq!(plan.total_io(), 13);
//! assert_eq!(plan.bandwidth(), 8);
//! # let _: &RepairPlan = &plan;
//! ```

pub mod cluster;
pub mod error;
pub mod exec;
pub mod gf3;
pub mod repair;
pub mod report;
pub mod sweep;
pub mod zigzag;

pub use error::{Error, Result};
pub use exec::Execution;
pub use gf3::{Gf3, Gf3Matrix, SignedPermutation};
pub use zigzag::{CodeParams, ZigzagCode};
