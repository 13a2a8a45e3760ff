//! Text wavefiles and VCD export.

mod vcd;
mod wavefile;

use std::io::{self, Write};
use std::path::Path;

pub use self::vcd::{export_vcd, write_vcd, VcdError, VcdExport};
pub use wavefile::{WaveError, WaveFile};

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: impl AsRef<Path>, contents: &[u8]) -> io::Result<()> {
    let path = path.as_ref();
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
