//! Exact Clebsch-Gordan rules and Green rings for the pointed tensor
//! categories C(n, s, q) of finite type.

pub mod cyclotomic;
pub mod error;
pub mod fusion;
pub mod greenring;
pub mod majid;
pub mod modp;
pub mod quiverrep;
pub mod rank;
pub mod sweep;
pub mod verify;

pub use cyclotomic::{q_binomial, q_factorial, q_integer, root_of_unity, CycNumber, CyclotomicField, QBinomTable};
pub use error::{Error, ParamError, Result};
pub use majid::{coproduct, counit, majid_mul, path_mul, validate_params, MajidAlgebra, MajidElement, Params, PathElement};
pub use fusion::{cg_decompose, count_n, kernel_dim, summand_counts, summands_from_kernels, vertex_dim, FusionContext};
pub use sweep::{cg_table, class_pairs, oracle_sweep, Execution, Mismatch, OracleReport};
pub use quiverrep::{
    coaction_indecomposable, decompose_oracle, direct_sum, kernel_dims, standard_indecomposable, string_module, tensor_coaction,
    tensor_rep, Coaction, CoactionTerm, Decomposition, IndecompClass, QuiverRep, SparseMatrix,
};
pub use greenring::{fibonacci_closed_form, fibonacci_poly, from_poly, green_mul, poly_reduce, to_poly, GreenElement, GreenRing, IntPoly2, NormalForm};
pub use verify::{verify, Level, ParamsReport, SuiteReport, VerifyReport};
