//! Subcommand implementations.

pub mod current;
pub mod feasibility;
pub mod fields;
pub mod figures;
pub mod spectrum;
pub mod verify;

use std::path::Path;

use crate::CliError;

pub(crate) fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::io(&format!("creating {}", parent.display()), e))?;
        }
    }
    std::fs::write(path, contents)
        .map_err(|e| CliError::io(&format!("writing {}", path.display()), e))
}
