use std::sync::atomic::{AtomicUsize, Ordering};

use super::{Embedder, EmbeddingVector};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::tensor::ImageTensor;

/// Wraps a backend and counts calls and embedded patches.
pub struct CountingEmbedder<E> {
    inner: E,
    calls: AtomicUsize,
    patches: AtomicUsize,
}

impl<E> CountingEmbedder<E> {
    pub fn new(inner: E) -> Self {
        CountingEmbedder {
            inner,
            calls: AtomicUsize::new(0),
            patches: AtomicUsize::new(0),
        }
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }

    pub fn patches(&self) -> usize {
        self.patches.load(Ordering::SeqCst)
    }

    pub fn reset(&self) {
        self.calls.store(0, Ordering::SeqCst);
        self.patches.store(0, Ordering::SeqCst);
    }
}

impl<T: Scalar, E: Embedder<T>> Embedder<T> for CountingEmbedder<E> {
    fn input_size(&self) -> usize {
        self.inner.input_size()
    }

    fn embed_batch(&self, patches: &[ImageTensor<T>]) -> Result<Vec<EmbeddingVector>> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        self.patches.fetch_add(patches.len(), Ordering::SeqCst);
        self.inner.embed_batch(patches)
    }

    fn name(&self) -> &str {
        self.inner.name()
    }
}
