//! Output directories, hashed artifact writers and the run manifest.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{CliError, Result, ResultExt};

pub const MANIFEST: &str = "manifest.tsv";
const MANIFEST_HEADER: &str = "path\trows\tsha256\tstatus";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    /// Relative to the output root, `/`-separated.
    pub path: String,
    /// Data rows; header lines are not counted.
    pub rows: u64,
    pub sha256: String,
    pub stale: bool,
}

/// Writer that hashes everything and counts newline-terminated lines.
pub struct HashingWriter {
    inner: BufWriter<File>,
    hasher: Sha256,
    lines: u64,
}

impl Write for HashingWriter {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.hasher.update(&buf[..n]);
        self.lines += buf[..n].iter().filter(|&&b| b == b'\n').count() as u64;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

pub struct OutputDir {
    root: PathBuf,
    artifacts: Vec<Artifact>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self> {
        std::fs::create_dir_all(root)
            .map_err(|e| CliError::config(format!("cannot create output directory {}: {e}", root.display())))?;
        Ok(Self {
            root: root.to_path_buf(),
            artifacts: Vec::new(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn artifacts(&self) -> &[Artifact] {
        &self.artifacts
    }

    fn open(&self, rel: &str) -> io::Result<HashingWriter> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        Ok(HashingWriter {
            inner: BufWriter::new(File::create(path)?),
            hasher: Sha256::new(),
            lines: 0,
        })
    }

    fn finish(&mut self, rel: &str, mut w: HashingWriter, rows: impl FnOnce(u64) -> u64) -> io::Result<()> {
        w.flush()?;
        self.artifacts.push(Artifact {
            path: rel.to_string(),
            rows: rows(w.lines),
            sha256: hex::encode(w.hasher.finalize()),
            stale: false,
        });
        Ok(())
    }

    /// Writes a TSV file: `header` columns, then whatever `body` emits.
    pub fn tsv<F>(&mut self, rel: &str, header: &[&str], body: F) -> Result<()>
    where
        F: FnOnce(&mut HashingWriter) -> io::Result<()>,
    {
        let go = || -> io::Result<()> {
            let mut w = self.open(rel)?;
            writeln!(w, "{}", header.join("\t"))?;
            body(&mut w)?;
            self.finish(rel, w, |lines| lines.saturating_sub(1))
        };
        go().map_err(|e| anyhow::Error::new(e).context(format!("writing {rel}")))
            .stage_err("write")
    }

    /// Writes a headerless line-oriented file.
    pub fn lines<F>(&mut self, rel: &str, body: F) -> Result<()>
    where
        F: FnOnce(&mut HashingWriter) -> io::Result<()>,
    {
        let go = || -> io::Result<()> {
            let mut w = self.open(rel)?;
            body(&mut w)?;
            self.finish(rel, w, |lines| lines)
        };
        go().map_err(|e| anyhow::Error::new(e).context(format!("writing {rel}")))
            .stage_err("write")
    }

    /// Writes a TSV file whose `body` emits its own header line.
    pub fn tsv_with_header<F>(&mut self, rel: &str, body: F) -> Result<()>
    where
        F: FnOnce(&mut HashingWriter) -> io::Result<()>,
    {
        let go = || -> io::Result<()> {
            let mut w = self.open(rel)?;
            body(&mut w)?;
            self.finish(rel, w, |lines| lines.saturating_sub(1))
        };
        go().map_err(|e| anyhow::Error::new(e).context(format!("writing {rel}")))
            .stage_err("write")
    }

    /// Writes a binary file whose row count is supplied by the caller.
    pub fn binary<F>(&mut self, rel: &str, rows: u64, body: F) -> Result<()>
    where
        F: FnOnce(&mut HashingWriter) -> io::Result<()>,
    {
        let go = || -> io::Result<()> {
            let mut w = self.open(rel)?;
            body(&mut w)?;
            self.finish(rel, w, |_| rows)
        };
        go().map_err(|e| anyhow::Error::new(e).context(format!("writing {rel}")))
            .stage_err("write")
    }

    pub fn mark_all_stale(&mut self) {
        for a in &mut self.artifacts {
            a.stale = true;
        }
    }

    pub fn write_manifest(&self) -> Result<PathBuf> {
        let path = self.root.join(MANIFEST);
        let go = || -> io::Result<()> {
            let mut w = BufWriter::new(File::create(&path)?);
            writeln!(w, "{MANIFEST_HEADER}")?;
            for a in &self.artifacts {
                let status = if a.stale { "stale" } else { "ok" };
                writeln!(w, "{}\t{}\t{}\t{status}", a.path, a.rows, a.sha256)?;
            }
            w.flush()
        };
        go().map_err(|e| anyhow::Error::new(e).context(format!("writing {MANIFEST}")))
            .stage_err("write")?;
        Ok(path)
    }
}

pub fn read_manifest(dir: &Path) -> Result<Vec<Artifact>> {
    let path = dir.join(MANIFEST);
    let file = File::open(&path)
        .map_err(|e| CliError::config(format!("cannot open {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.data_err()?;
        if i == 0 {
            if line != MANIFEST_HEADER {
                return Err(CliError::data(format!("{}: unexpected header", path.display())));
            }
            continue;
        }
        let bad = || CliError::data(format!("{}:{}: malformed manifest row", path.display(), i + 1));
        let cols: Vec<&str> = line.split('\t').collect();
        let [p, rows, sha, status] = cols[..] else { return Err(bad()) };
        out.push(Artifact {
            path: p.to_string(),
            rows: rows.parse().map_err(|_| bad())?,
            sha256: sha.to_string(),
            stale: match status {
                "ok" => false,
                "stale" => true,
                _ => return Err(bad()),
            },
        });
    }
    Ok(out)
}

/// Re-hashes every artifact; returns the paths whose content no longer
/// matches the manifest.
pub fn verify_manifest(dir: &Path) -> Result<Vec<String>> {
    let mut mismatched = Vec::new();
    for a in read_manifest(dir)? {
        let mut hasher = Sha256::new();
        let ok = File::open(dir.join(&a.path))
            .and_then(|mut f| {
                let mut buf = [0u8; 1 << 16];
                loop {
                    let n = f.read(&mut buf)?;
                    if n == 0 {
                        break Ok(());
                    }
                    hasher.update(&buf[..n]);
                }
            })
            .is_ok();
        if !ok || hex::encode(hasher.finalize()) != a.sha256 {
            mismatched.push(a.path);
        }
    }
    Ok(mismatched)
}
