use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;

/// Bad input: unreadable files, malformed or invalid JSON, bad arguments.
/// Reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn bad_input(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

/// Reads a file, or stdin for `-`.
pub fn read_source(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| bad_input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| bad_input(format!("{}: {e}", path.display())))
    }
}

/// Parses JSON, locating syntax and validation errors by line and column.
pub fn parse_str<T: DeserializeOwned>(label: &str, text: &str) -> anyhow::Result<T> {
    serde_json::from_str(text).map_err(|e| {
        bad_input(format!(
            "{label}:{}:{}: {}",
            e.line(),
            e.column(),
            strip_location(&e.to_string())
        ))
    })
}

pub fn load<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let label = if path == Path::new("-") { "<stdin>".to_string() } else { path.display().to_string() };
    parse_str(&label, &read_source(path)?)
}

// serde_json appends " at line L column C"; the prefix already says so
fn strip_location(msg: &str) -> &str {
    match msg.rfind(" at line ") {
        Some(i) => &msg[..i],
        None => msg,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn located_errors() {
        let err = parse_str::<Vec<u32>>("m.json", "[1,\n 2,\n x]").unwrap_err();
        assert_eq!(err.to_string(), "m.json:3:2: expected value");
        assert!(err.downcast_ref::<InputError>().is_some());
    }
}
