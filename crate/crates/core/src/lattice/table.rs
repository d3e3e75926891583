//! The persisted full redundancy table: one bit per 26-bit neighbour mask.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use rayon::prelude::*;

use super::complex::NeighborMask;
use super::redundancy::{contact_complex, RedundancyOracle};
use crate::error::{Error, Result};

pub const TABLE_HEADER: &str = "CUBE3-REDUNDANCY v1";
const MASKS: usize = 1 << 26;
const BYTES: usize = MASKS / 8;

/// Bit array indexed by mask value, least significant bit first within each byte.
#[derive(Clone, PartialEq, Eq)]
pub struct LookupTable {
    bytes: Vec<u8>,
}

impl std::fmt::Debug for LookupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LookupTable").field("ones", &self.count_redundant()).finish()
    }
}

impl LookupTable {
    pub fn from_fn(f: impl Fn(NeighborMask) -> bool + Sync) -> Self {
        let mut bytes = vec![0u8; BYTES];
        bytes.par_chunks_mut(1 << 12).enumerate().for_each(|(chunk, out)| {
            for (j, byte) in out.iter_mut().enumerate() {
                let base = ((chunk << 12) + j) << 3;
                for bit in 0..8 {
                    if f(NeighborMask((base + bit) as u32)) {
                        *byte |= 1 << bit;
                    }
                }
            }
        });
        LookupTable { bytes }
    }

    /// Materialises every entry through `oracle` (keyed by contact complex).
    pub fn build(oracle: &RedundancyOracle) -> Self {
        Self::from_fn(|m| oracle.by_contact_complex(contact_complex(m)))
    }

    pub fn get(&self, mask: NeighborMask) -> bool {
        let m = (mask.0 as usize) & (MASKS - 1);
        self.bytes[m >> 3] >> (m & 7) & 1 == 1
    }

    pub fn count_redundant(&self) -> u64 {
        self.bytes.iter().map(|b| u64::from(b.count_ones())).sum()
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "{TABLE_HEADER}")?;
        w.write_all(&self.bytes)?;
        Ok(())
    }

    pub fn read_from(r: impl Read) -> Result<Self> {
        let mut r = BufReader::new(r);
        let mut header = String::new();
        r.read_line(&mut header)?;
        if header.trim_end_matches('\n') != TABLE_HEADER {
            return Err(Error::LookupTable(format!("bad header `{}`", header.trim_end())));
        }
        let mut bytes = Vec::with_capacity(BYTES);
        r.read_to_end(&mut bytes)?;
        if bytes.len() != BYTES {
            return Err(Error::LookupTable(format!("expected {BYTES} bytes, found {}", bytes.len())));
        }
        Ok(LookupTable { bytes })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let f = std::fs::File::create(path)?;
        self.write_to(std::io::BufWriter::new(f))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_from(std::fs::File::open(path)?)
    }
}
