use std::fs::File;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

impl FileDigest {
    pub fn of(path: &Path) -> io::Result<Self> {
        let mut f = File::open(path)?;
        let mut hasher = Sha256::new();
        let mut buf = vec![0u8; 1 << 16];
        let mut bytes = 0u64;
        loop {
            let n = f.read(&mut buf)?;
            if n == 0 {
                break;
            }
            hasher.update(&buf[..n]);
            bytes += n as u64;
        }
        Ok(FileDigest {
            path: path.display().to_string(),
            sha256: hex::encode(hasher.finalize()),
            bytes,
        })
    }
}

/// Everything needed to reproduce an output file, written next to it as
/// `<output>.manifest.json`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub args: Vec<String>,
    pub tie_convention: String,
    pub jobs: usize,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub wall_clock_seconds: f64,
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

impl RunManifest {
    pub fn write_beside(&self, output: &Path) -> io::Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(io::Error::other)?;
        std::fs::write(manifest_path(output), text + "\n")
    }

    pub fn read_beside(output: &Path) -> io::Result<Option<RunManifest>> {
        let path = manifest_path(output);
        if !path.exists() {
            return Ok(None);
        }
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map(Some).map_err(io::Error::other)
    }
}

/// Compares a file against the digest its manifest recorded for it.
/// `Ok(None)` when there is no manifest or it does not list the file.
pub fn check_against_manifest(file: &Path) -> io::Result<Option<bool>> {
    let Some(m) = RunManifest::read_beside(file)? else {
        return Ok(None);
    };
    let name = file.file_name();
    let Some(recorded) = m.outputs.iter().find(|d| Path::new(&d.path).file_name() == name) else {
        return Ok(None);
    };
    let actual = FileDigest::of(file)?;
    Ok(Some(actual.sha256 == recorded.sha256 && actual.bytes == recorded.bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_and_mismatch_detection() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("data.bin");
        std::fs::write(&out, b"abc").unwrap();
        let d = FileDigest::of(&out).unwrap();
        assert_eq!(d.sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
        assert_eq!(check_against_manifest(&out).unwrap(), None);
        let m = RunManifest {
            tool: "pktop".into(),
            version: "0".into(),
            subcommand: "test".into(),
            args: vec![],
            tie_convention: "split-tie".into(),
            jobs: 1,
            inputs: vec![],
            outputs: vec![d],
            wall_clock_seconds: 0.0,
        };
        m.write_beside(&out).unwrap();
        assert_eq!(check_against_manifest(&out).unwrap(), Some(true));
        std::fs::write(&out, b"abd").unwrap();
        assert_eq!(check_against_manifest(&out).unwrap(), Some(false));
    }
}
