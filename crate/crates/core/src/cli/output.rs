use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::error::Result;

/// Files written by one command. Unless [`OutputSet::commit`] is called,
/// dropping the set deletes every file it recorded.
#[derive(Debug, Default)]
pub struct OutputSet {
    written: Mutex<Vec<PathBuf>>,
    committed: bool,
}

impl OutputSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs `write` for `path` and records the path on success.
    pub fn write(&self, path: PathBuf, write: impl FnOnce(&Path) -> Result<()>) -> Result<PathBuf> {
        write(&path)?;
        self.written
            .lock()
            .expect("output list poisoned")
            .push(path.clone());
        Ok(path)
    }

    pub fn len(&self) -> usize {
        self.written.lock().expect("output list poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn commit(mut self) {
        self.committed = true;
    }
}

impl Drop for OutputSet {
    fn drop(&mut self) {
        if self.committed {
            return;
        }
        if let Ok(paths) = self.written.get_mut() {
            for p in paths.drain(..) {
                let _ = std::fs::remove_file(p);
            }
        }
    }
}
