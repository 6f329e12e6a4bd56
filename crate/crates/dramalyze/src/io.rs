//! Reading input documents.

use std::fs;
use std::path::Path;

use dramalyze_core::RawDocument;

use crate::Error;

/// Reads a whole file as UTF-8 without any normalization.
pub fn load_document(path: &Path) -> Result<RawDocument, Error> {
    let bytes = fs::read(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let content = String::from_utf8(bytes).map_err(|e| Error::InvalidUtf8 {
        path: path.to_path_buf(),
        offset: e.utf8_error().valid_up_to(),
    })?;
    Ok(RawDocument::new(path.display().to_string(), content))
}

/// Reads a whole file as bytes, mapping failures to [`Error::Read`].
pub fn read_bytes(path: &Path) -> Result<Vec<u8>, Error> {
    fs::read(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })
}
