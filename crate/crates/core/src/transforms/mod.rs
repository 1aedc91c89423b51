//! Semantics-preserving conversions between representation models.

pub mod circuits;
pub mod dlist;
pub mod knn;
pub mod labeled;
pub mod nn_mpptf;
pub mod registry;
pub mod report;
pub mod sym;

pub use circuits::{hnn_to_depth2, hnn_to_depth3, hnn_to_depth3_slice, Depth3Variant};
pub use dlist::{attainable_values, eldl_to_kstat, mpptf_to_ldl};
pub use knn::{knn_to_kstat, knn_to_mpptf, kstat_equalize, kstat_to_knn};
pub use labeled::{labeled_to_twosided, twosided_to_labeled};
pub use nn_mpptf::{drop_common_columns, mpptf_to_hnn, mpptf_to_nn, nn_to_mpptf};
pub use registry::{convert_to, pass_route, run_pass, PASSES};
pub use report::{BoundCheck, Metrics, Pass, PassReport};
pub use sym::{sym_and_to_knn, sym_maj_to_kstat};
