//! JSON payloads of the remote embedding protocol.
//!
//! `POST {endpoint}/embed` with an [`EmbedRequest`]; success is an
//! [`EmbedResponse`], failures are 4xx/5xx with an [`ErrorResponse`].
//! Tensors travel as base64 of little-endian `f32`, row-major.

use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WarpadError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbedRequest {
    /// `[N, 3, S, S]`, already normalized.
    pub shape: [usize; 4],
    pub data_b64: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbedResponse {
    pub dims: usize,
    /// `N * dims` values.
    pub data_b64: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorResponse {
    pub error: String,
}

pub fn encode_f32(values: &[f32]) -> String {
    let mut bytes = Vec::with_capacity(values.len() * 4);
    for v in values {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    STANDARD.encode(bytes)
}

pub fn decode_f32(b64: &str) -> Result<Vec<f32>> {
    let bytes = STANDARD
        .decode(b64)
        .map_err(|e| WarpadError::Backend(format!("bad base64 payload: {e}")))?;
    if bytes.len() % 4 != 0 {
        return Err(WarpadError::Backend(format!(
            "payload of {} bytes is not a whole number of f32 values",
            bytes.len()
        )));
    }
    Ok(bytes
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f32_round_trip() {
        let v = [0.0f32, -1.5, 3.25e-7, f32::MAX];
        assert_eq!(decode_f32(&encode_f32(&v)).unwrap(), v);
    }

    #[test]
    fn little_endian_layout() {
        // 1.0f32 = 0x3f800000
        assert_eq!(
            encode_f32(&[1.0]),
            STANDARD.encode([0x00, 0x00, 0x80, 0x3f])
        );
        assert!(decode_f32(&STANDARD.encode([1u8, 2, 3])).is_err());
        assert!(decode_f32("not base64!").is_err());
    }
}
