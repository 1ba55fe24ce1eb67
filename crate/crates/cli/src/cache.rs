//! One JSON file per invocation key, named by the SHA-256 of the key.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bump when any emitted document changes shape.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    key: String,
    exit: i32,
    output: String,
}

fn stamp() -> String {
    format!("{}+{}", env!("CARGO_PKG_VERSION"), FORMAT_VERSION)
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Self { dir: dir.to_path_buf() }
    }

    fn path(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(format!("{}\n{key}", stamp()).as_bytes());
        self.dir.join(format!("{digest:x}.json"))
    }

    /// `(exit code, output)` for a stored key with a matching version stamp.
    pub fn get(&self, key: &str) -> Option<(i32, String)> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let e: Entry = serde_json::from_str(&text).ok()?;
        (e.version == stamp() && e.key == key).then_some((e.exit, e.output))
    }

    /// Failures to write are reported but never fatal.
    pub fn put(&self, key: &str, exit: i32, output: &str) {
        let e = Entry { version: stamp(), key: key.to_string(), exit, output: output.to_string() };
        let res = fs::create_dir_all(&self.dir).and_then(|_| {
            let tmp = self.path(key).with_extension("tmp");
            fs::write(&tmp, serde_json::to_string(&e).expect("entry serializes"))?;
            fs::rename(tmp, self.path(key))
        });
        if let Err(err) = res {
            eprintln!("warning: cache write to {} failed: {err}", self.dir.display());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_miss() {
        let dir = std::env::temp_dir().join(format!("parfus-cache-unit-{}", std::process::id()));
        let c = Cache::new(&dir);
        assert!(c.get("k").is_none());
        c.put("k", 1, "out\n");
        assert_eq!(c.get("k"), Some((1, "out\n".to_string())));
        assert!(c.get("other").is_none());
        // a stale stamp is a miss
        fs::write(c.path("k"), r#"{"version":"0.0.0+0","key":"k","exit":0,"output":"x"}"#).unwrap();
        assert!(c.get("k").is_none());
        fs::remove_dir_all(&dir).unwrap();
    }
}
