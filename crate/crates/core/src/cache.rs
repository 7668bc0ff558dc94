//! On-disk action-matrix files.
//!
//! Layout (integers little-endian):
//!
//! ```text
//! "SKWL" | version: u32 | p: u32 | k: u32 | modulus length: u32 | modulus bytes
//! D: u32 | G: u32 | G dense D x D matrices, row-major, k bytes per entry
//! parity trailer: D bytes (0 even, 1 odd) | G bytes generator parity
//! spin generator count: u32 | indices: u32 each | provenance length: u32 | UTF-8
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::field::{make_field, Field, FieldElement as Fe};
use crate::linalg::SparseMatrix;
use crate::meataxe::GradedRep;
use crate::superalg::Parity;

pub const MAGIC: &[u8; 4] = b"SKWL";
pub const VERSION: u32 = 1;
pub const EXTENSION: &str = "skwl";
pub const ENV_VAR: &str = "SKWLAB_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("i/o error on {path}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("not an action-matrix file (bad magic)")]
    BadMagic,
    #[error("unsupported format version {0}")]
    BadVersion(u32),
    #[error("file ends early")]
    Truncated,
    #[error("corrupt file: {0}")]
    Corrupt(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Header fields, readable without decoding the matrices.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Header {
    pub version: u32,
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
    pub dim: usize,
    pub generators: usize,
}

pub fn encode(rep: &GradedRep) -> Vec<u8> {
    let f = &**rep.field();
    let d = rep.dim();
    let gens = rep.generators();
    let mut out = Vec::with_capacity(32 + gens.len() * d * d * f.degree() as usize);
    out.extend_from_slice(MAGIC);
    let put = |out: &mut Vec<u8>, x: u32| out.extend_from_slice(&x.to_le_bytes());
    put(&mut out, VERSION);
    put(&mut out, f.characteristic());
    put(&mut out, f.degree());
    put(&mut out, f.modulus().len() as u32);
    out.extend(f.modulus().iter().map(|&c| c as u8));
    put(&mut out, d as u32);
    put(&mut out, gens.len() as u32);
    for g in gens {
        for row in g.to_dense().to_rows() {
            for x in row {
                f.encode(x, &mut out);
            }
        }
    }
    out.extend(rep.parity().iter().map(|p| p.is_odd() as u8));
    out.extend(rep.generator_parity().iter().map(|p| p.is_odd() as u8));
    put(&mut out, rep.spin_generators().len() as u32);
    for &s in rep.spin_generators() {
        put(&mut out, s as u32);
    }
    put(&mut out, rep.provenance.len() as u32);
    out.extend_from_slice(rep.provenance.as_bytes());
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], CacheError> {
        let end = self.pos.checked_add(n).ok_or(CacheError::Truncated)?;
        let s = self.buf.get(self.pos..end).ok_or(CacheError::Truncated)?;
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, CacheError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

fn read_header(r: &mut Reader) -> Result<Header, CacheError> {
    if r.take(4).map_err(|_| CacheError::BadMagic)? != MAGIC {
        return Err(CacheError::BadMagic);
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(CacheError::BadVersion(version));
    }
    let p = r.u32()?;
    let k = r.u32()?;
    let mlen = r.u32()? as usize;
    let modulus = r.take(mlen)?.iter().map(|&b| b as u32).collect();
    let dim = r.u32()? as usize;
    let generators = r.u32()? as usize;
    Ok(Header {
        version,
        p,
        k,
        modulus,
        dim,
        generators,
    })
}

pub fn decode(buf: &[u8]) -> Result<GradedRep, CacheError> {
    let mut r = Reader { buf, pos: 0 };
    let h = read_header(&mut r)?;
    let field = make_field(h.p, h.k).map_err(|e| CacheError::Corrupt(e.to_string()))?;
    if field.modulus() != h.modulus.as_slice() {
        return Err(CacheError::Corrupt(
            "modulus differs from the canonical one".into(),
        ));
    }
    let field = Arc::new(field);
    let d = h.dim;
    let k = h.k as usize;
    let bytes = d
        .checked_mul(d)
        .and_then(|x| x.checked_mul(k))
        .ok_or_else(|| CacheError::Corrupt("dimension overflow".into()))?;
    let mut gens = Vec::with_capacity(h.generators);
    for _ in 0..h.generators {
        let raw = r.take(bytes)?;
        let mut cols: Vec<Vec<(u32, Fe)>> = vec![Vec::new(); d];
        for (idx, chunk) in raw.chunks(k).enumerate() {
            let x = field
                .decode(chunk)
                .map_err(|e| CacheError::Corrupt(e.to_string()))?;
            if !x.is_zero() {
                cols[idx % d].push(((idx / d) as u32, x));
            }
        }
        gens.push(SparseMatrix::from_columns(cols));
    }
    let parity_of = |b: u8| match b {
        0 => Ok(Parity::Even),
        1 => Ok(Parity::Odd),
        _ => Err(CacheError::Corrupt(format!("parity byte {b}"))),
    };
    let parity = r
        .take(d)?
        .iter()
        .map(|&b| parity_of(b))
        .collect::<Result<Vec<_>, _>>()?;
    let gen_parity = r
        .take(h.generators)?
        .iter()
        .map(|&b| parity_of(b))
        .collect::<Result<Vec<_>, _>>()?;
    let s = r.u32()? as usize;
    let mut spin = Vec::with_capacity(s.min(h.generators));
    for _ in 0..s {
        let i = r.u32()? as usize;
        if i >= h.generators {
            return Err(CacheError::Corrupt(format!(
                "spin generator {i} out of range"
            )));
        }
        spin.push(i);
    }
    let plen = r.u32()? as usize;
    let provenance = String::from_utf8(r.take(plen)?.to_vec())
        .map_err(|_| CacheError::Corrupt("provenance is not UTF-8".into()))?;
    if r.pos != buf.len() {
        return Err(CacheError::Corrupt("trailing bytes".into()));
    }
    let mut rep = GradedRep::new(field, parity, gens, gen_parity, provenance);
    rep.set_spin_generators(spin);
    Ok(rep)
}

/// Write through a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CacheError> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut file = fs::File::create(&tmp).map_err(io_err(&tmp))?;
    file.write_all(bytes).map_err(io_err(&tmp))?;
    file.sync_all().map_err(io_err(&tmp))?;
    drop(file);
    fs::rename(&tmp, path).map_err(io_err(path))
}

pub fn save(path: &Path, rep: &GradedRep) -> Result<(), CacheError> {
    write_atomic(path, &encode(rep))
}

pub fn load(path: &Path) -> Result<GradedRep, CacheError> {
    decode(&fs::read(path).map_err(io_err(path))?)
}

pub fn read_file_header(path: &Path) -> Result<Header, CacheError> {
    let buf = fs::read(path).map_err(io_err(path))?;
    read_header(&mut Reader { buf: &buf, pos: 0 })
}

/// Flag, then `SKWLAB_CACHE_DIR`, then the user cache directory.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()) {
        return PathBuf::from(p);
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(p).join("skwlab");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(home).join(".cache").join("skwlab");
    }
    std::env::temp_dir().join("skwlab")
}

/// File name for a module described by `key`.
pub fn file_name(key: &str) -> String {
    let digest = Sha256::digest(key.as_bytes());
    format!("{}.{EXTENSION}", &hex::encode(digest)[..24])
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub bytes: u64,
    pub header: Option<Header>,
}

pub fn list(dir: &Path) -> Result<Vec<Entry>, CacheError> {
    let mut out = Vec::new();
    let rd = match fs::read_dir(dir) {
        Ok(rd) => rd,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
        Err(e) => return Err(io_err(dir)(e)),
    };
    for entry in rd {
        let entry = entry.map_err(io_err(dir))?;
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) != Some(EXTENSION) {
            continue;
        }
        let bytes = entry.metadata().map_err(io_err(&path))?.len();
        out.push(Entry {
            name: entry.file_name().to_string_lossy().into_owned(),
            bytes,
            header: read_file_header(&path).ok(),
        });
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

/// Remove the named entries, or every entry when `names` is empty.
pub fn remove(dir: &Path, names: &[String]) -> Result<Vec<String>, CacheError> {
    let targets: Vec<String> = if names.is_empty() {
        list(dir)?.into_iter().map(|e| e.name).collect()
    } else {
        names.to_vec()
    };
    for n in &targets {
        let path = dir.join(n);
        fs::remove_file(&path).map_err(io_err(&path))?;
    }
    Ok(targets)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyResult {
    pub name: String,
    pub ok: bool,
    pub error: Option<String>,
}

/// Fully decode every entry and check that generators respect the grading.
pub fn verify(dir: &Path) -> Result<Vec<VerifyResult>, CacheError> {
    Ok(list(dir)?
        .into_iter()
        .map(|e| {
            let res = load(&dir.join(&e.name)).and_then(|rep| {
                if rep.parity_consistent() {
                    Ok(())
                } else {
                    Err(CacheError::Corrupt("generator breaks the grading".into()))
                }
            });
            VerifyResult {
                name: e.name,
                ok: res.is_ok(),
                error: res.err().map(|e| e.to_string()),
            }
        })
        .collect())
}

/// Field of a header, for callers that only need arithmetic.
pub fn header_field(h: &Header) -> Result<Field, CacheError> {
    make_field(h.p, h.k).map_err(|e| CacheError::Corrupt(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn sample() -> GradedRep {
        let f = Arc::new(make_field(3, 2).unwrap());
        let t = f.gen();
        let m = Matrix::from_rows(vec![vec![Fe::ZERO, t], vec![f.one(), Fe::ZERO]]);
        GradedRep::new(
            f,
            vec![Parity::Even, Parity::Odd],
            vec![SparseMatrix::from_dense(&m)],
            vec![Parity::Odd],
            "sample".into(),
        )
    }

    #[test]
    fn round_trip() {
        let rep = sample();
        let back = decode(&encode(&rep)).unwrap();
        assert_eq!(back.generators(), rep.generators());
        assert_eq!(back.parity(), rep.parity());
        assert_eq!(back.provenance, "sample");
    }

    #[test]
    fn detects_corruption() {
        let mut bytes = encode(&sample());
        bytes[0] = b'X';
        assert!(matches!(decode(&bytes), Err(CacheError::BadMagic)));
        let mut bytes = encode(&sample());
        bytes[4] = 9;
        assert!(matches!(decode(&bytes), Err(CacheError::BadVersion(9))));
        let bytes = encode(&sample());
        assert!(matches!(
            decode(&bytes[..bytes.len() - 3]),
            Err(CacheError::Truncated)
        ));
    }

    #[test]
    fn names_are_stable() {
        assert_eq!(file_name("a"), file_name("a"));
        assert_ne!(file_name("a"), file_name("b"));
        assert!(file_name("a").ends_with(".skwl"));
    }
}
