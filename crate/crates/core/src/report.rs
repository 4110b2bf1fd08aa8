//! JSON report envelopes shared by every subcommand.

use serde_json::{json, Value};

use crate::caps::Caps;
use crate::error::Error;

pub const TOOL: &str = "pstab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status for an error: 2 for bad input, 3 for a cap overrun.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_cap() {
        3
    } else {
        2
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::OrderCapExceeded { .. } => "order-cap-exceeded",
        Error::DegreeCapExceeded { .. } => "degree-cap-exceeded",
        Error::SubgroupCapExceeded { .. } => "subgroup-cap-exceeded",
        Error::BadParameters(_) => "bad-parameters",
        Error::NotNormal => "not-normal",
        Error::NotNormalized => "not-normalized",
        Error::NotFullyNormalized => "not-fully-normalized",
        Error::NotCentric => "not-centric",
        Error::NotNormalInF => "not-normal-in-f",
        Error::MismatchedSylow => "mismatched-sylow",
        Error::Parse { .. } => "parse",
        Error::Io(_) => "io",
    }
}

/// Object keys come out sorted, so equal inputs give byte-identical output.
pub fn envelope(command: &str, inputs: Value, caps: Caps, result: Value) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "inputs": inputs,
        "caps": caps,
        "result": result,
    })
}

pub fn error_envelope(command: &str, inputs: Value, caps: Caps, e: &Error) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "inputs": inputs,
        "caps": caps,
        "error": { "kind": error_kind(e), "message": e.to_string(), "exit_code": exit_code(e) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::bad("x")), 2);
        assert_eq!(exit_code(&Error::OrderCapExceeded { cap: 1 }), 3);
        let v = error_envelope("analyze", json!({}), Caps::default(), &Error::NotCentric);
        assert_eq!(v["error"]["kind"], "not-centric");
        assert_eq!(v["version"], VERSION);
    }
}
