use std::fs;
use std::path::{Path, PathBuf};

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Sidecar header of an instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceHeader {
    pub construction: String,
    pub n: usize,
    pub k: usize,
    pub b: usize,
    pub seed: u64,
    pub len: usize,
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".hdr");
    PathBuf::from(s)
}

impl InstanceHeader {
    pub fn to_text(&self) -> String {
        format!(
            "construction={}\nn={}\nk={}\nb={}\nseed={}\nN={}\n",
            self.construction, self.n, self.k, self.b, self.seed, self.len
        )
    }

    pub fn from_text(text: &str) -> Result<InstanceHeader> {
        let mut h = InstanceHeader {
            construction: String::new(),
            n: 0,
            k: 0,
            b: 0,
            seed: 0,
            len: 0,
        };
        let num = |v: &str| v.trim().parse::<u64>().map_err(|e| Error::Parse(format!("header value `{v}`: {e}")));
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("header line `{line}`")))?;
            match key.trim() {
                "construction" => h.construction = value.trim().to_string(),
                "n" => h.n = num(value)? as usize,
                "k" => h.k = num(value)? as usize,
                "b" => h.b = num(value)? as usize,
                "seed" => h.seed = num(value)?,
                "N" => h.len = num(value)? as usize,
                other => return Err(Error::Parse(format!("unknown header key `{other}`"))),
            }
        }
        if h.construction.is_empty() {
            return Err(Error::Parse("header has no construction".into()));
        }
        Ok(h)
    }
}

/// Writes the packed bits to `path` and the header to `path.hdr`.
pub fn write_instance(path: &Path, header: &InstanceHeader, bits: &BitString) -> Result<()> {
    if header.len != bits.len() {
        return Err(Error::Length {
            expected: header.len,
            got: bits.len(),
        });
    }
    fs::write(path, bits.to_bytes())?;
    fs::write(sidecar(path), header.to_text())?;
    Ok(())
}

/// Reads an instance, taking its length from the sidecar header when present.
pub fn read_instance(path: &Path, len: Option<usize>) -> Result<(Option<InstanceHeader>, BitString)> {
    let bytes = fs::read(path)?;
    let header = match fs::read_to_string(sidecar(path)) {
        Ok(t) => Some(InstanceHeader::from_text(&t)?),
        Err(_) => None,
    };
    let n = match (len, &header) {
        (Some(n), _) => n,
        (None, Some(h)) => h.len,
        (None, None) => bytes.len() * 8,
    };
    Ok((header, BitString::from_bytes(&bytes, n)?))
}
