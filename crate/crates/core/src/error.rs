use alloc::string::String;

/// Failures raised while building or transforming designs.
///
/// Verification outcomes are not errors; they are reported through
/// [`VerifyReport`](crate::VerifyReport). These variants cover inputs that
/// cannot be turned into a well-formed object at all.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesignError {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("duplicate block {block} produced while developing base block {base}")]
    DuplicateBlock { block: String, base: usize },
    #[error("table consistency error: {0}")]
    TableConsistency(String),
    #[error("data integrity error: {0}")]
    DataIntegrity(String),
    #[error("construction integrity error at {0}")]
    ConstructionIntegrity(String),
    #[error("the zero element has no discrete logarithm")]
    LogOfZero,
}

impl DesignError {
    pub fn param(msg: impl Into<String>) -> Self {
        DesignError::Parameter(msg.into())
    }
}
