//! File formats: run configuration, CSV grids and curves, PGM images.

pub mod config;
pub mod grid;
pub mod pgm;

use std::fs;
use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::Result;

pub use config::{parse_config, RunConfig};
pub use grid::{read_curve, read_grid, write_curve, write_density, write_grid};
pub use pgm::{read_pgm, write_pgm};

/// Lower-case hex SHA-256.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Identification written at the top of every output file.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub config_sha256: String,
    pub version: String,
    /// Canonical config text, one `key = value` per line.
    pub config: String,
    pub units: String,
}

impl Provenance {
    pub fn new(cfg: &RunConfig, units: &str) -> Self {
        let config = cfg.emit();
        Self {
            config_sha256: sha256_hex(config.as_bytes()),
            version: format!("pbec {}", env!("CARGO_PKG_VERSION")),
            config,
            units: units.to_string(),
        }
    }

    pub(crate) fn header_lines(&self) -> String {
        let mut s = format!(
            "# config_sha256: {}\n# version: {}\n# units: {}\n",
            self.config_sha256, self.version, self.units
        );
        for line in self.config.lines() {
            s.push_str("# config: ");
            s.push_str(line);
            s.push('\n');
        }
        s
    }
}

/// Writes `bytes` to a temporary file next to `path` and renames it into place.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    if let Err(e) = fs::rename(&tmp, path) {
        let _ = fs::remove_file(&tmp);
        return Err(e.into());
    }
    Ok(())
}

/// 17 significant digits.
pub(crate) fn sci(v: f64) -> String {
    format!("{v:.16e}")
}
