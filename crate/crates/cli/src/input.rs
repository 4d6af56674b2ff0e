//! JSON payloads given inline or as file paths.

use std::fs;

use serde::de::DeserializeOwned;

/// Why a command did not run; becomes a `refused` report.
#[derive(Debug, Clone, PartialEq)]
pub struct Refusal(pub String);

impl<E: std::error::Error> From<E> for Refusal {
    fn from(e: E) -> Self {
        Refusal(e.to_string())
    }
}

/// Reads `arg` as inline JSON when it starts with `{` or `[`, otherwise as
/// a path. Errors name the payload and the line and column of the problem.
pub fn load<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, Refusal> {
    let trimmed = arg.trim_start();
    let (text, origin) = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        (arg.to_string(), "inline".to_string())
    } else {
        let text = fs::read_to_string(arg).map_err(|e| Refusal(format!("cannot read {what} from {arg}: {e}")))?;
        (text, arg.to_string())
    };
    serde_json::from_str(&text).map_err(|e| {
        let kind = if e.is_syntax() || e.is_eof() { "malformed JSON" } else { "invalid" };
        Refusal(format!("{kind} {what} ({origin}) at line {} column {}: {e}", e.line(), e.column()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_and_errors() {
        let v: Vec<i32> = load("[1, 2]", "list").unwrap();
        assert_eq!(v, vec![1, 2]);
        let e = load::<Vec<i32>>("[1,\n 2", "list").unwrap_err();
        assert!(e.0.starts_with("malformed JSON list (inline) at line 2"), "{}", e.0);
        let e = load::<Vec<i32>>("[\"a\"]", "list").unwrap_err();
        assert!(e.0.starts_with("invalid list"), "{}", e.0);
        assert!(load::<Vec<i32>>("/nonexistent/x.json", "list").unwrap_err().0.contains("cannot read"));
    }
}
