use serde::de::DeserializeOwned;

use crate::CliError;

/// Decodes `arg` as inline JSON when it starts with `{`, otherwise as the
/// path of a JSON file.
pub(crate) fn read_json<T: DeserializeOwned>(arg: &str) -> Result<T, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("malformed input: {e}")))
}
