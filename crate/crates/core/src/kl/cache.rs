//! On-disk cache of KL tables.
//!
//! One text file per Cartan matrix, named `kl-<key>.txt`:
//!
//! ```text
//! springer-kl-cache 1
//! cartan 2,-1;-1,2
//! order 6
//! <w> <x> <exp>:<coeff>,...      one line per nonzero P_{x,w}
//! checksum <sha256 of all preceding lines, newline-terminated>
//! ```
//!
//! Element indices refer to the deterministic enumeration order of
//! [`CoxeterPresentation::enumerate`].

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::poly::LaurentPoly;
use super::table::KlGroup;
use crate::coxeter::CoxeterPresentation;
use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "SPRINGER_KL_CACHE";
const HEADER: &str = "springer-kl-cache 1";

fn cartan_line(p: &CoxeterPresentation) -> String {
    let rows: Vec<String> = p
        .cartan_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("cartan {}", rows.join(";"))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn cache_path(dir: &Path, p: &CoxeterPresentation) -> PathBuf {
    let digest = Sha256::digest(cartan_line(p).as_bytes());
    dir.join(format!("kl-{}.txt", &hex(&digest)[..16]))
}

pub fn write_table(path: &Path, g: &KlGroup) -> Result<()> {
    let n = g.size();
    let mut body = format!("{HEADER}\n{}\norder {n}\n", cartan_line(g.presentation()));
    for (idx, poly) in g.raw_table().iter().enumerate() {
        if poly.is_zero() {
            continue;
        }
        let terms: Vec<String> = poly.terms().map(|(e, c)| format!("{e}:{c}")).collect();
        let _ = writeln!(body, "{} {} {}", idx / n, idx % n, terms.join(","));
    }
    let sum = hex(&Sha256::digest(body.as_bytes()));
    body.push_str(&format!("checksum {sum}\n"));
    fs::write(path, body).map_err(|e| Error::Cache(e.to_string()))
}

pub fn read_table(path: &Path, pres: &CoxeterPresentation, cap: usize) -> Result<KlGroup> {
    let bad = |m: &str| Error::Cache(format!("{}: {m}", path.display()));
    let text = fs::read_to_string(path).map_err(|e| Error::Cache(e.to_string()))?;
    let cut = text.rfind("checksum ").ok_or_else(|| bad("missing checksum"))?;
    let (body, tail) = text.split_at(cut);
    if tail.trim_end() != format!("checksum {}", hex(&Sha256::digest(body.as_bytes()))) {
        return Err(bad("checksum mismatch"));
    }
    let mut lines = body.lines();
    if lines.next() != Some(HEADER) {
        return Err(bad("unknown header or version"));
    }
    if lines.next() != Some(cartan_line(pres).as_str()) {
        return Err(bad("Cartan matrix differs"));
    }
    let elements = pres.enumerate(cap as u128)?;
    let n = elements.len();
    if lines.next() != Some(format!("order {n}").as_str()) {
        return Err(bad("group order differs"));
    }
    let mut table = vec![LaurentPoly::zero(); n * n];
    for line in lines {
        let mut parts = line.split(' ');
        let mut index = || -> Result<usize> {
            let v: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("malformed index"))?;
            if v >= n {
                return Err(bad("index out of range"));
            }
            Ok(v)
        };
        let (w, x) = (index()?, index()?);
        let mut terms = Vec::new();
        for t in parts.next().ok_or_else(|| bad("missing terms"))?.split(',') {
            let (e, c) = t.split_once(':').ok_or_else(|| bad("malformed term"))?;
            let e: i32 = e.parse().map_err(|_| bad("malformed exponent"))?;
            let c: i64 = c.parse().map_err(|_| bad("malformed coefficient"))?;
            terms.push((e, c));
        }
        table[w * n + x] = LaurentPoly::from_terms(&terms);
    }
    let mut g = KlGroup::skeleton(pres, elements);
    g.set_table(table)?;
    Ok(g)
}

/// Builds the KL table, going through the cache directory named by
/// `SPRINGER_KL_CACHE` when it is set. An unreadable or stale cache file is
/// rebuilt and overwritten.
pub fn load_or_build(pres: &CoxeterPresentation, cap: usize) -> Result<KlGroup> {
    let Some(dir) = std::env::var_os(CACHE_ENV).map(PathBuf::from) else {
        return KlGroup::new(pres, cap);
    };
    let path = cache_path(&dir, pres);
    if let Ok(g) = read_table(&path, pres, cap) {
        return Ok(g);
    }
    let g = KlGroup::new(pres, cap)?;
    fs::create_dir_all(&dir).map_err(|e| Error::Cache(e.to_string()))?;
    write_table(&path, &g)?;
    Ok(g)
}
