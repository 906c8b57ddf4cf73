//! On-disk cache of group tables.
//!
//! Layout, all integers little endian: the magic `CXGT`, a `u32` format
//! version, `u32` rank, `u32` order, then the left-multiplication table
//! (`rank * order` entries of `u32`). Files are named by the SHA-256 of the
//! matrix text, so a cache hit never depends on how the matrix was spelled.

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use coxnichols::{CoxeterMatrix, GroupTable};
use sha2::{Digest, Sha256};

const MAGIC: &[u8; 4] = b"CXGT";
const VERSION: u32 = 1;

/// Whether a table came from disk or was enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Cache,
    Built,
}

pub fn cache_key(matrix: &CoxeterMatrix) -> String {
    Sha256::digest(matrix.to_text().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn cache_path(dir: &Path, matrix: &CoxeterMatrix) -> PathBuf {
    dir.join(format!("{}.cxgt", cache_key(matrix)))
}

pub fn write_table(path: &Path, g: &GroupTable) -> Result<()> {
    // Write to a sibling and rename so readers never see a partial file.
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut out = BufWriter::new(File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?);
        out.write_all(MAGIC)?;
        out.write_u32::<LittleEndian>(VERSION)?;
        out.write_u32::<LittleEndian>(g.rank() as u32)?;
        out.write_u32::<LittleEndian>(g.order() as u32)?;
        for &x in g.left_table() {
            out.write_u32::<LittleEndian>(x)?;
        }
        out.flush()?;
    }
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

pub fn read_table(path: &Path, matrix: &CoxeterMatrix) -> Result<GroupTable> {
    let file = File::open(path)?;
    let len = file.metadata()?.len();
    let mut r = BufReader::new(file);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        bail!("{} is not a group table cache", path.display());
    }
    let version = r.read_u32::<LittleEndian>()?;
    if version != VERSION {
        bail!("unsupported cache version {version}");
    }
    let rank = r.read_u32::<LittleEndian>()? as usize;
    let order = r.read_u32::<LittleEndian>()? as usize;
    if rank != matrix.rank() {
        bail!("cached rank {rank} differs from the matrix rank {}", matrix.rank());
    }
    if len != 16 + 4 * (rank as u64) * (order as u64) {
        bail!("{} has {len} bytes, inconsistent with its header", path.display());
    }
    let mut left = vec![0u32; rank * order];
    r.read_u32_into::<LittleEndian>(&mut left)?;
    Ok(GroupTable::from_left_table(matrix, left)?)
}

/// Loads the table from `dir` if a valid entry exists; otherwise builds it
/// and stores it. Unreadable entries are rebuilt and overwritten.
pub fn load_or_build(matrix: &CoxeterMatrix, dir: Option<&Path>) -> Result<(GroupTable, Origin)> {
    let Some(dir) = dir else {
        return Ok((GroupTable::build(matrix)?, Origin::Built));
    };
    let path = cache_path(dir, matrix);
    match read_table(&path, matrix) {
        Ok(g) => return Ok((g, Origin::Cache)),
        Err(e) => {
            let missing = e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::NotFound);
            if !missing {
                eprintln!("warning: ignoring cache entry {}: {e:#}", path.display());
            }
        }
    }
    let g = GroupTable::build(matrix)?;
    fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
    write_table(&path, &g)?;
    Ok((g, Origin::Built))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let m = CoxeterMatrix::preset("B3").unwrap();
        let (fresh, o1) = load_or_build(&m, Some(dir.path())).unwrap();
        let (cached, o2) = load_or_build(&m, Some(dir.path())).unwrap();
        assert_eq!((o1, o2), (Origin::Built, Origin::Cache));
        assert_eq!(fresh.left_table(), cached.left_table());
        assert_eq!(fresh.order(), 48);

        let path = cache_path(dir.path(), &m);
        let mut bytes = fs::read(&path).unwrap();
        assert_eq!(bytes.len(), 16 + 4 * 3 * 48);
        bytes[20] ^= 0xff;
        fs::write(&path, &bytes).unwrap();
        assert!(read_table(&path, &m).is_err());
        let (_, o3) = load_or_build(&m, Some(dir.path())).unwrap();
        assert_eq!(o3, Origin::Built);
    }

    #[test]
    fn key_depends_on_matrix_only() {
        let a = CoxeterMatrix::preset("I2(4)").unwrap();
        let b = CoxeterMatrix::parse_text("2\n1 4\n4 1\n").unwrap();
        assert_eq!(cache_key(&a), cache_key(&b));
        assert_ne!(cache_key(&a), cache_key(&CoxeterMatrix::preset("I2(5)").unwrap()));
    }
}
