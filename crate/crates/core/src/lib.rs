#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod budget;
pub mod classes;
#[cfg(feature = "cli")]
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod io;
mod nls;
pub mod poly;
pub mod spectra;
pub mod tcp;
pub mod tensor;

pub use budget::{Budget, BudgetUsed, Tolerances};
pub use error::{Error, Result};
pub use tensor::{scale_point, IndexSet, ScaleMode, Tensor};
pub use classes::{classify, witness_search, ClassId, Method, Status, Verdict, Witness};
pub use spectra::{h_eigenpairs, z_eigenpairs, EigenKind, EigenPair};
pub use tcp::{TcpInstance, TcpSolution};
