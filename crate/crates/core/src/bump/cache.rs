//! Binary cache for a built [`BumpProfile`]:
//! versioned header, little-endian `f64` payload, CRC-32 trailer.
//!
//! The decoder treats its input as untrusted: lengths are bounded before
//! allocation, every float must be finite, and the checksum must match.

use super::BumpProfile;
use crate::{Error, Result};

const MAGIC: &[u8; 8] = b"EXPMAXBP";
const VERSION: u32 = 1;
const MAX_SAMPLES: u32 = 1 << 26;

pub fn encode(profile: &BumpProfile) -> Vec<u8> {
    let mut out = Vec::with_capacity(64 + 8 * (profile.phi.len() + profile.phi_hat.len()));
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&profile.resolution.to_le_bytes());
    out.extend_from_slice(&profile.x_range.to_le_bytes());
    out.extend_from_slice(&(profile.phi.len() as u32).to_le_bytes());
    out.extend_from_slice(&(profile.phi_hat.len() as u32).to_le_bytes());
    out.extend_from_slice(&profile.phi_l2.to_le_bytes());
    out.extend_from_slice(&profile.phi_hat_l1.to_le_bytes());
    out.extend_from_slice(&profile.phi_hat_l2.to_le_bytes());
    for v in profile.phi.iter().chain(&profile.phi_hat) {
        out.extend_from_slice(&v.to_le_bytes());
    }
    let crc = crc32(&out[MAGIC.len()..]);
    out.extend_from_slice(&crc.to_le_bytes());
    out
}

pub fn decode(bytes: &[u8]) -> Result<BumpProfile> {
    let mut r = Reader { bytes, pos: 0 };
    let magic = r.take(8)?;
    if magic != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let body_start = r.pos;
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let resolution = r.u32()?;
    let x_range = r.f64()?;
    let phi_len = r.u32()?;
    let hat_len = r.u32()?;
    if phi_len == 0 || hat_len == 0 || phi_len > MAX_SAMPLES || hat_len > MAX_SAMPLES {
        return Err(Error::Format("sample counts out of range".into()));
    }
    if phi_len % 2 == 0 || hat_len % 2 == 0 {
        return Err(Error::Format("sample counts must be odd".into()));
    }
    if !x_range.is_finite() || !(4.0..=1024.0).contains(&x_range) {
        return Err(Error::Format("x_range out of range".into()));
    }
    let phi_l2 = r.finite_f64()?;
    let phi_hat_l1 = r.finite_f64()?;
    let phi_hat_l2 = r.finite_f64()?;
    let need = (phi_len as usize + hat_len as usize) * 8 + 4;
    if r.remaining() != need {
        return Err(Error::Format(format!(
            "payload length mismatch: have {}, need {need}",
            r.remaining()
        )));
    }
    let mut phi = Vec::with_capacity(phi_len as usize);
    for _ in 0..phi_len {
        phi.push(r.finite_f64()?);
    }
    let mut phi_hat = Vec::with_capacity(hat_len as usize);
    for _ in 0..hat_len {
        phi_hat.push(r.finite_f64()?);
    }
    let stored_crc = r.u32()?;
    let actual = crc32(&bytes[body_start..bytes.len() - 4]);
    if stored_crc != actual {
        return Err(Error::Format("checksum mismatch".into()));
    }
    Ok(BumpProfile {
        resolution,
        x_range,
        phi,
        phi_hat,
        phi_l2,
        phi_hat_l1,
        phi_hat_l2,
    })
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(Error::Format("truncated input".into()));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn finite_f64(&mut self) -> Result<f64> {
        let v = self.f64()?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Format("non-finite sample".into()))
        }
    }
}

/// CRC-32 (IEEE), bit-serial; the payloads are small enough not to care.
pub fn crc32(bytes: &[u8]) -> u32 {
    let mut crc = 0xFFFF_FFFFu32;
    for &b in bytes {
        crc ^= b as u32;
        for _ in 0..8 {
            let mask = (crc & 1).wrapping_neg();
            crc = (crc >> 1) ^ (0xEDB8_8320 & mask);
        }
    }
    !crc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bump::build_bump;

    #[test]
    fn roundtrip() {
        let p = build_bump(256).unwrap();
        let bytes = encode(&p);
        let q = decode(&bytes).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rejects_corruption() {
        let p = build_bump(256).unwrap();
        let mut bytes = encode(&p);
        let mid = bytes.len() / 2;
        bytes[mid] ^= 0x40;
        assert!(decode(&bytes).is_err());
    }

    #[test]
    fn rejects_truncation_and_garbage() {
        let p = build_bump(256).unwrap();
        let bytes = encode(&p);
        assert!(decode(&bytes[..bytes.len() - 5]).is_err());
        assert!(decode(b"not a profile").is_err());
        assert!(decode(b"").is_err());
    }

    #[test]
    fn crc_known_value() {
        assert_eq!(crc32(b"123456789"), 0xCBF4_3926);
    }
}
