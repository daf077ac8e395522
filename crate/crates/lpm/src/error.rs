use thiserror::Error;

/// Errors raised by parsing, validation, and the combinatorial engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("endpoint mismatch: lower path ends at ({0}, {1}), upper path ends at ({2}, {3})")]
    EndpointMismatch(u32, u32, u32, u32),

    #[error("dominance violation at index {index}: upper path dips below lower path")]
    Dominance { index: usize },

    #[error("element {element} is not in the ground set")]
    UnknownElement { element: u32 },

    #[error("element {element} is a loop: use the factor y instead of deletion/contraction")]
    LoopElement { element: u32 },

    #[error("element {element} is a coloop: use the factor x instead of deletion/contraction")]
    ColoopElement { element: u32 },

    #[error("problem size {size} exceeds the brute-force cap {cap}")]
    CapExceeded { size: u32, cap: u32 },

    #[error("diagram has no interior lattice point (it is a snake)")]
    NoInteriorPoint,

    #[error("diagram is not connected")]
    NotConnected,

    #[error("invalid snake composition: {message}")]
    InvalidComposition { message: String },

    #[error("invalid multi-fan: {message}")]
    InvalidFan { message: String },

    #[error("loops present at {0:?}: the inequality requires a loopless matroid")]
    LoopsPresent(Vec<u32>),

    #[error("coloops present at {0:?}: the inequality requires a coloopless matroid")]
    ColoopsPresent(Vec<u32>),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

impl Error {
    /// Stable machine-readable code for structured error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::EndpointMismatch(..) => "endpoint_mismatch",
            Error::Dominance { .. } => "dominance",
            Error::UnknownElement { .. } => "unknown_element",
            Error::LoopElement { .. } => "loop_element",
            Error::ColoopElement { .. } => "coloop_element",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::NoInteriorPoint => "no_interior_point",
            Error::NotConnected => "not_connected",
            Error::InvalidComposition { .. } => "invalid_composition",
            Error::InvalidFan { .. } => "invalid_fan",
            Error::LoopsPresent(..) => "loops_present",
            Error::ColoopsPresent(..) => "coloops_present",
            Error::EmptyInput(..) => "empty_input",
        }
    }

    /// 1-based position associated with the error, when one exists.
    pub fn position(&self) -> Option<usize> {
        match self {
            Error::Parse { position, .. } => Some(*position),
            Error::Dominance { index } => Some(*index),
            _ => None,
        }
    }

    /// Structured `{code, position, message}` form.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "code": self.code(),
            "position": self.position(),
            "message": self.to_string(),
        })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structured_form_carries_code_and_position() {
        let e = Error::Parse { position: 2, message: "unexpected 'X'".into() };
        let v = e.to_json();
        assert_eq!(v["code"], "parse");
        assert_eq!(v["position"], 2);
        let e = Error::NoInteriorPoint;
        assert_eq!(e.to_json()["position"], serde_json::Value::Null);
    }
}
