use std::sync::{Condvar, Mutex, OnceLock};
use std::thread;
use std::time::Duration;

use log::{debug, warn};
use ureq::Agent;

use super::wire::{decode_f32, encode_f32, EmbedRequest, EmbedResponse, ErrorResponse};
use super::{validate_patches, Embedder, EmbedderConfig, EmbeddingVector, Normalization};
use crate::error::{Result, WarpadError};
use crate::scalar::Scalar;
use crate::tensor::ImageTensor;

/// Counting semaphore bounding concurrent requests.
struct Gate {
    free: Mutex<usize>,
    cv: Condvar,
}

struct Permit<'a>(&'a Gate);

impl Gate {
    fn new(n: usize) -> Self {
        Gate {
            free: Mutex::new(n),
            cv: Condvar::new(),
        }
    }

    fn acquire(&self) -> Permit<'_> {
        let mut free = self.free.lock().unwrap_or_else(|e| e.into_inner());
        while *free == 0 {
            free = self.cv.wait(free).unwrap_or_else(|e| e.into_inner());
        }
        *free -= 1;
        Permit(self)
    }
}

impl Drop for Permit<'_> {
    fn drop(&mut self) {
        *self.0.free.lock().unwrap_or_else(|e| e.into_inner()) += 1;
        self.0.cv.notify_one();
    }
}

enum Attempt {
    Retry(String),
    Fatal(String),
}

/// HTTP client for an external embedding service.
pub struct RemoteEmbedder {
    url: String,
    agent: Agent,
    input_size: usize,
    normalization: Normalization,
    retries: u32,
    backoff: Duration,
    gate: Gate,
    dims: OnceLock<usize>,
}

impl RemoteEmbedder {
    pub fn from_config(cfg: &EmbedderConfig) -> Result<Self> {
        cfg.validate()?;
        let endpoint = cfg.endpoint.as_deref().unwrap_or_default();
        if !(endpoint.starts_with("http://") || endpoint.starts_with("https://")) {
            return Err(WarpadError::config(format!(
                "endpoint must be an http(s) URL, got {endpoint:?}"
            )));
        }
        let agent: Agent = Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(cfg.timeout_secs.max(1))))
            .http_status_as_error(false)
            .build()
            .into();
        Ok(RemoteEmbedder {
            url: format!("{}/embed", endpoint.trim_end_matches('/')),
            agent,
            input_size: cfg.input_size,
            normalization: cfg.normalization,
            retries: cfg.retries,
            backoff: Duration::from_millis(200),
            gate: Gate::new(cfg.max_in_flight),
            dims: OnceLock::new(),
        })
    }

    /// Overrides the base delay between retries (doubles on every attempt).
    pub fn with_backoff(mut self, backoff: Duration) -> Self {
        self.backoff = backoff;
        self
    }

    pub fn url(&self) -> &str {
        &self.url
    }

    /// Embedding width, known after the first successful call.
    pub fn dims(&self) -> Option<usize> {
        self.dims.get().copied()
    }

    fn request_body<T: Scalar>(&self, patches: &[ImageTensor<T>]) -> Result<String> {
        let s = self.input_size;
        let mut flat = Vec::with_capacity(patches.len() * 3 * s * s);
        for p in patches {
            for c in 0..3 {
                flat.extend(
                    p.channel(c)
                        .iter()
                        .map(|v| self.normalization.apply(c, v.as_f64()) as f32),
                );
            }
        }
        let req = EmbedRequest {
            shape: [patches.len(), 3, s, s],
            data_b64: encode_f32(&flat),
        };
        Ok(serde_json::to_string(&req)?)
    }

    fn attempt(&self, body: &str) -> std::result::Result<EmbedResponse, Attempt> {
        let _permit = self.gate.acquire();
        let mut resp = self
            .agent
            .post(&self.url)
            .header("Content-Type", "application/json")
            .send(body)
            .map_err(|e| Attempt::Retry(e.to_string()))?;
        let status = resp.status().as_u16();
        let text = resp
            .body_mut()
            .read_to_string()
            .map_err(|e| Attempt::Retry(format!("reading response: {e}")))?;
        if (200..300).contains(&status) {
            return serde_json::from_str(&text)
                .map_err(|e| Attempt::Fatal(format!("malformed response: {e}")));
        }
        let detail = serde_json::from_str::<ErrorResponse>(&text)
            .map(|e| e.error)
            .unwrap_or(text);
        let msg = format!("HTTP {status}: {detail}");
        if status >= 500 || status == 429 {
            Err(Attempt::Retry(msg))
        } else {
            Err(Attempt::Fatal(msg))
        }
    }

    fn post(&self, body: &str) -> Result<EmbedResponse> {
        let mut tries = 0u32;
        loop {
            match self.attempt(body) {
                Ok(r) => return Ok(r),
                Err(Attempt::Fatal(reason)) => {
                    return Err(WarpadError::Transport {
                        retries: tries,
                        reason,
                    })
                }
                Err(Attempt::Retry(reason)) if tries >= self.retries => {
                    return Err(WarpadError::Transport {
                        retries: tries,
                        reason,
                    })
                }
                Err(Attempt::Retry(reason)) => {
                    warn!("{}: {reason}; retrying", self.url);
                    thread::sleep(self.backoff * 2u32.saturating_pow(tries));
                    tries += 1;
                }
            }
        }
    }
}

impl<T: Scalar> Embedder<T> for RemoteEmbedder {
    fn input_size(&self) -> usize {
        self.input_size
    }

    fn embed_batch(&self, patches: &[ImageTensor<T>]) -> Result<Vec<EmbeddingVector>> {
        validate_patches(patches, self.input_size)?;
        if patches.is_empty() {
            return Ok(Vec::new());
        }
        let body = self.request_body(patches)?;
        debug!("POST {} ({} patches)", self.url, patches.len());
        let resp = self.post(&body)?;
        if resp.dims == 0 {
            return Err(WarpadError::Backend("server reported dims = 0".into()));
        }
        let known = *self.dims.get_or_init(|| resp.dims);
        if known != resp.dims {
            return Err(WarpadError::Backend(format!(
                "server switched embedding width from {known} to {}",
                resp.dims
            )));
        }
        let values = decode_f32(&resp.data_b64)?;
        if values.len() != patches.len() * resp.dims {
            return Err(WarpadError::Backend(format!(
                "expected {} x {} values, got {}",
                patches.len(),
                resp.dims,
                values.len()
            )));
        }
        values
            .chunks_exact(resp.dims)
            .map(|row| EmbeddingVector::new(row.iter().map(|&v| f64::from(v)).collect()))
            .collect()
    }

    fn name(&self) -> &str {
        "remote"
    }
}
