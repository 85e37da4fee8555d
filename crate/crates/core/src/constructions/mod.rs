//! Certificate builders for the λ-family and twisted-product lemmas, the
//! root decomposition, symmetric powers, the spinor endgames and cone
//! lifting.

mod lemma1;

pub use lemma1::{lemma1_build, LambdaFamily, Lemma1Output};
mod remark;

pub use remark::{remark_decompose, RemarkFamily, RemarkOutput};
mod lemma2;

pub use lemma2::{lemma2_build, Lemma2Output, TwistFamily};
mod sympow;

pub use sympow::{exponent_vectors, multinomial, sym_power, SymBasis, SymPower};
mod tau;

pub use tau::{s_lambda_check, SLambdaOutput, TauData};
mod ramond;

pub use ramond::{s_xi_build, s_xi_reduce, RamondData, SXiOutput};
mod conelift;

pub use conelift::{cone_lift, cone_lift_difference, ConeLift};
