//! S-DAGs: DAGs labelled with separations, their bags and width, validation
//! and the rewrite into nice form.

mod model;
mod nice;
mod validate;

pub use model::{Derived, SDag};
pub use nice::{nicefy, NICE_SIZE_FACTOR};
pub use validate::{validate_nice, validate_sdag, NiceReport, SdagReport};

#[derive(Debug, thiserror::Error)]
pub enum SdagError {
    #[error("invalid S-DAG: {0}")]
    Invalid(String),
    #[error("malformed S-DAG file: {0}")]
    Format(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub fn width(s: &SDag) -> usize {
    s.width()
}
