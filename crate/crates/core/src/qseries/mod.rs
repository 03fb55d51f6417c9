//! q-calculus kernels: shifted factorials, basic hypergeometric series,
//! q-exponentials and q-Gamma.

mod base;
mod functions;
mod hypergeometric;
mod pochhammer;

pub use base::{
    integer_power_index, nonpositive_power_index, QBase, SeriesOptions, SeriesValue,
    ADMISSIBILITY_RTOL, C64, POLE_RTOL,
};
pub use functions::{e_q, q_gamma, E_q};
pub use hypergeometric::{
    majorant, phi11, phi11_regularized, phi11_regularized_lattice, phi11_regularized_with, phi21,
    phi21_continued, phi_rs, PhiParams,
};
pub use pochhammer::{
    q_pochhammer, q_pochhammer_inf, q_pochhammer_inf_ratio, q_pochhammer_multi, PochhammerLength,
};

pub(crate) use base::{c, principal_pow};
pub(crate) use hypergeometric::sum_ratio_series;
pub(crate) use pochhammer::{neg_poch_inf_real, qq_inf};
