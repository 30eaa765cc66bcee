use thiserror::Error;

/// Errors shared by all algebra modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// An operation required a weight −1 element and got something else.
    #[error("{what} has weight {weight}, expected weight -1")]
    Weight { what: String, weight: i64 },

    /// A degree argument exceeded the configured enumeration bound.
    #[error("degree {requested} exceeds the enumeration bound {bound}")]
    Bound { requested: usize, bound: usize },

    /// A weight −1 monomial with no tree mapping onto it under the fertility
    /// map. Believed impossible; reported instead of assumed.
    #[error("empty fertility fiber for {monomial}")]
    EmptyFiber { monomial: String },

    /// Malformed value (bad slot, bad decoration symbol, ...).
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },
}

impl AlgebraError {
    pub fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        AlgebraError::Invalid {
            what,
            reason: reason.into(),
        }
    }
}
