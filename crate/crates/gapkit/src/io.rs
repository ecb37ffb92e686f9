//! Reading tables from files or standard input.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use gapkit_core::scform::{read_table, ParseError};
use gapkit_core::KTable;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}:{source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
}

/// Reads a table file; `-` means standard input.
pub fn load_table(path: &Path, stdin: &mut dyn Read) -> Result<KTable, InputError> {
    let io_err = |source| InputError::Io {
        path: path.to_path_buf(),
        source,
    };
    let text = if path == Path::new("-") {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(io_err)?;
        s
    } else {
        fs::read_to_string(path).map_err(io_err)?
    };
    read_table(&text).map_err(|source| InputError::Parse {
        path: path.to_path_buf(),
        source,
    })
}
