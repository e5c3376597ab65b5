//! A directory of named JSON objects with a content-hash manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const MANIFEST: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub kind: String,
    pub file: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub objects: BTreeMap<String, ManifestEntry>,
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub root: PathBuf,
    pub manifest: Manifest,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Workspace {
    /// Opens `root`, creating it and an empty manifest when missing.
    pub fn open(root: &Path) -> Result<Self> {
        fs::create_dir_all(root)?;
        let path = root.join(MANIFEST);
        let manifest =
            if path.exists() { serde_json::from_str(&fs::read_to_string(&path)?)? } else { Manifest::default() };
        Ok(Workspace { root: root.to_path_buf(), manifest })
    }

    pub fn save_manifest(&self) -> Result<()> {
        fs::write(self.root.join(MANIFEST), serde_json::to_string_pretty(&self.manifest)? + "\n")?;
        Ok(())
    }

    /// Writes `text` as `<name>.<kind>.json` and records its hash.
    pub fn put(&mut self, name: &str, kind: &str, text: &str) -> Result<PathBuf> {
        if name.is_empty() || name.contains(['/', '\\']) {
            return Err(Error::Input(format!("bad object name {name:?}")));
        }
        let file = format!("{name}.{kind}.json");
        let path = self.root.join(&file);
        fs::write(&path, text)?;
        self.manifest.objects.insert(
            name.to_string(),
            ManifestEntry { kind: kind.to_string(), file, sha256: sha256_hex(text.as_bytes()) },
        );
        self.save_manifest()?;
        Ok(path)
    }

    /// Resolves an object name or a path relative to the root.
    pub fn resolve(&self, name_or_path: &str) -> PathBuf {
        match self.manifest.objects.get(name_or_path) {
            Some(e) => self.root.join(&e.file),
            None => self.root.join(name_or_path),
        }
    }

    /// Names whose file is missing or no longer matches its recorded hash.
    pub fn verify(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for (name, e) in &self.manifest.objects {
            match fs::read(self.root.join(&e.file)) {
                Ok(bytes) if sha256_hex(&bytes) == e.sha256 => {}
                _ => bad.push(name.clone()),
            }
        }
        Ok(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn put_resolve_verify() {
        let dir = tempfile::tempdir().unwrap();
        let mut ws = Workspace::open(dir.path()).unwrap();
        ws.put("octa", "complex", "{}\n").unwrap();
        assert_eq!(ws.resolve("octa"), dir.path().join("octa.complex.json"));
        assert!(ws.verify().unwrap().is_empty());
        let again = Workspace::open(dir.path()).unwrap();
        assert_eq!(again.manifest, ws.manifest);
        fs::write(dir.path().join("octa.complex.json"), "changed").unwrap();
        assert_eq!(ws.verify().unwrap(), vec!["octa".to_string()]);
        assert!(ws.put("a/b", "complex", "").is_err());
    }
}
