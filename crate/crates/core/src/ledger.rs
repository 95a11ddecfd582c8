//! Append-only JSONL record of report-producing runs.

use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunLedgerEntry {
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub command: String,
    pub args: Vec<String>,
    /// SHA-256 of the report file, hex.
    pub digest: String,
    pub path: PathBuf,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunLedgerEntry {
    /// Entry for a report already written to `path`.
    pub fn for_report(command: &str, args: &[String], path: &Path) -> Result<Self> {
        let bytes = fs::read(path)?;
        Ok(Self {
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            command: command.to_string(),
            args: args.to_vec(),
            digest: digest(&bytes),
            path: path.to_path_buf(),
        })
    }

    /// Whether the report on disk still matches the stored digest.
    pub fn verify(&self) -> Result<bool> {
        Ok(digest(&fs::read(&self.path)?) == self.digest)
    }
}

pub fn append(ledger: &Path, entry: &RunLedgerEntry) -> Result<()> {
    let mut file = OpenOptions::new().create(true).append(true).open(ledger)?;
    writeln!(file, "{}", serde_json::to_string(entry)?)?;
    Ok(())
}

pub fn read(ledger: &Path) -> Result<Vec<RunLedgerEntry>> {
    let file = fs::File::open(ledger)?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            digest(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn append_read_verify() {
        let dir = tempfile::tempdir().unwrap();
        let report = dir.path().join("r.json");
        fs::write(&report, "{\"x\":1}").unwrap();
        let ledger = dir.path().join("ledger.jsonl");
        let e = RunLedgerEntry::for_report("eval", &["--vector".into(), "1,1".into()], &report)
            .unwrap();
        append(&ledger, &e).unwrap();
        append(&ledger, &e).unwrap();
        let back = read(&ledger).unwrap();
        assert_eq!(back, vec![e.clone(), e.clone()]);
        assert!(back[0].verify().unwrap());
        fs::write(&report, "{\"x\":2}").unwrap();
        assert!(!back[0].verify().unwrap());
    }
}
