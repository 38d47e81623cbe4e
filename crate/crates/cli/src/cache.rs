//! Fusion products persisted between runs. The file may be deleted at any time.

use g2core::fusion::{cache_preload, cache_snapshot, FusionVector};
use g2core::lattice::{LevelRule, Weight};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};

/// Entries written by a different build are ignored.
pub const VERSION: &str = concat!("g2-fusion-cache/", env!("CARGO_PKG_VERSION"));

const FILE: &str = "fusion.json";

#[derive(Serialize, Deserialize)]
struct Entry {
    rule: LevelRule,
    lambda: Weight,
    generator: Weight,
    product: FusionVector,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: String,
    entries: Vec<Entry>,
}

fn file(dir: &Path) -> PathBuf {
    dir.join(FILE)
}

/// Loads the cache if present and current. Returns the number of entries used.
pub fn load(dir: &Path) -> usize {
    let Ok(text) = fs::read_to_string(file(dir)) else {
        return 0;
    };
    let parsed: CacheFile = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("warning: ignoring unreadable cache {}: {e}", file(dir).display());
            return 0;
        }
    };
    if parsed.version != VERSION {
        eprintln!("warning: ignoring cache written by {}", parsed.version);
        return 0;
    }
    let n = parsed.entries.len();
    cache_preload(parsed.entries.into_iter().map(|e| (e.rule, e.lambda, e.generator, e.product)));
    n
}

pub fn store(dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let entries = cache_snapshot()
        .into_iter()
        .map(|(rule, lambda, generator, product)| Entry { rule, lambda, generator, product })
        .collect();
    let text = serde_json::to_string(&CacheFile { version: VERSION.to_string(), entries }).expect("cache serializes");
    let tmp = dir.join(format!("{FILE}.tmp"));
    fs::write(&tmp, text)?;
    fs::rename(tmp, file(dir))
}
