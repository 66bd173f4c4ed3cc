//! Codeword container: a small binary format (header, then per-block
//! name/symbol runs) plus a JSON manifest describing the payload.

use crate::{Codeword, DpError};
use std::collections::BTreeMap;

const MAGIC: &[u8; 4] = b"DPW1";

/// Serializes a codeword. Symbols are stored as little-endian u16, which
/// covers the supported alphabet range.
pub fn codeword_to_bytes(system_id: &str, w: &Codeword) -> Result<Vec<u8>, DpError> {
    if w.sigma > crate::SIGMA_CAP {
        return Err(DpError::Format("alphabet too large for the container".into()));
    }
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    let id = system_id.as_bytes();
    out.extend_from_slice(&(id.len() as u16).to_le_bytes());
    out.extend_from_slice(id);
    out.extend_from_slice(&w.sigma.to_le_bytes());
    out.extend_from_slice(&(w.block_len as u32).to_le_bytes());
    out.extend_from_slice(&(w.blocks.len() as u64).to_le_bytes());
    for (name, block) in &w.blocks {
        if block.len() != w.block_len {
            return Err(DpError::Format(format!("block {name} has wrong length")));
        }
        out.extend_from_slice(&(name.len() as u16).to_le_bytes());
        out.extend_from_slice(name.as_bytes());
        for &sym in block {
            out.extend_from_slice(&(sym as u16).to_le_bytes());
        }
    }
    Ok(out)
}

pub fn codeword_from_bytes(bytes: &[u8]) -> Result<(String, Codeword), DpError> {
    let bad = |m: &str| DpError::Format(format!("container: {m}"));
    let mut pos: usize = 0;
    let mut take = |n: usize| -> Result<&[u8], DpError> {
        let end = pos.checked_add(n).filter(|&e| e <= bytes.len()).ok_or(bad("truncated"))?;
        let out = &bytes[pos..end];
        pos = end;
        Ok(out)
    };
    if take(4)? != MAGIC {
        return Err(bad("bad magic"));
    }
    let id_len = u16::from_le_bytes(take(2)?.try_into().unwrap()) as usize;
    let system_id = String::from_utf8(take(id_len)?.to_vec()).map_err(|_| bad("bad id"))?;
    let sigma = u64::from_le_bytes(take(8)?.try_into().unwrap());
    let block_len = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
    let count = u64::from_le_bytes(take(8)?.try_into().unwrap());
    let mut blocks = BTreeMap::new();
    for _ in 0..count {
        let name_len = u16::from_le_bytes(take(2)?.try_into().unwrap()) as usize;
        let name = String::from_utf8(take(name_len)?.to_vec()).map_err(|_| bad("bad name"))?;
        let raw = take(2 * block_len)?;
        let block = raw
            .chunks_exact(2)
            .map(|c| u16::from_le_bytes(c.try_into().unwrap()) as u32)
            .collect();
        blocks.insert(name, block);
    }
    Ok((system_id, Codeword { sigma, block_len, blocks }))
}

pub fn codeword_manifest(system_id: &str, w: &Codeword) -> serde_json::Value {
    serde_json::json!({
        "format": "DPW1",
        "system": system_id,
        "sigma": w.sigma,
        "block_len": w.block_len,
        "blocks": w.blocks.len(),
    })
}
