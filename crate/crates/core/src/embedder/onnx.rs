use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use log::{info, warn};
use tract_onnx::prelude::*;

use super::{
    validate_patches, Embedder, EmbedderConfig, EmbeddingVector, ExportManifest, Normalization,
};
use crate::error::{Result, WarpadError};
use crate::scalar::Scalar;
use crate::tensor::ImageTensor;

type Plan = TypedRunnableModel<TypedModel>;

const INPUT_NAME: &str = "pixels";
const OUTPUT_NAME: &str = "embedding";

fn backend_err(path: &Path, e: impl std::fmt::Display) -> WarpadError {
    WarpadError::Backend(format!("{}: {e}", path.display()))
}

/// Runs an exported ONNX backbone on the CPU.
///
/// The graph takes `pixels: f32[N, 3, S, S]` (normalized) and returns
/// `embedding: f32[N, D]`. Plans are compiled lazily per batch size.
pub struct OnnxEmbedder {
    path: PathBuf,
    model: InferenceModel,
    input_index: usize,
    output_index: usize,
    input_size: usize,
    normalization: Normalization,
    expected_dims: Option<usize>,
    plans: Mutex<HashMap<usize, Arc<Plan>>>,
}

impl OnnxEmbedder {
    pub fn from_config(cfg: &EmbedderConfig) -> Result<Self> {
        cfg.validate()?;
        let path = cfg.resolve_model_path()?;
        let manifest = ExportManifest::find_for(&path)?;
        let mut expected_dims = None;
        if let Some(m) = &manifest {
            m.verify_file(&path)?;
            if m.input_size != cfg.input_size {
                return Err(WarpadError::Backend(format!(
                    "{} was exported for {}px input, config asks for {}px",
                    path.display(),
                    m.input_size,
                    cfg.input_size
                )));
            }
            if m.normalization != cfg.normalization {
                warn!(
                    "normalization in config differs from the export manifest of {}",
                    path.display()
                );
            }
            expected_dims = Some(m.embedding_dims);
            info!(
                "loaded export manifest for {} ({})",
                path.display(),
                m.backbone_id
            );
        }
        let model = tract_onnx::onnx()
            .model_for_path(&path)
            .map_err(|e| backend_err(&path, e))?;
        let input_index = Self::find_port(&model, &path, true)?;
        let output_index = Self::find_port(&model, &path, false)?;
        Ok(OnnxEmbedder {
            path,
            model,
            input_index,
            output_index,
            input_size: cfg.input_size,
            normalization: cfg.normalization,
            expected_dims,
            plans: Mutex::new(HashMap::new()),
        })
    }

    fn find_port(model: &InferenceModel, path: &Path, input: bool) -> Result<usize> {
        let (outlets, wanted) = if input {
            (model.input_outlets(), INPUT_NAME)
        } else {
            (model.output_outlets(), OUTPUT_NAME)
        };
        let outlets = outlets.map_err(|e| backend_err(path, e))?;
        let named = outlets.iter().position(|o| {
            model.node(o.node).name == wanted || model.outlet_label(*o) == Some(wanted)
        });
        match named {
            Some(i) => Ok(i),
            None if outlets.len() == 1 => Ok(0),
            None => Err(WarpadError::Backend(format!(
                "{}: no {} named {wanted:?}",
                path.display(),
                if input { "input" } else { "output" }
            ))),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn plan(&self, batch: usize) -> Result<Arc<Plan>> {
        let mut plans = self.plans.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(p) = plans.get(&batch) {
            return Ok(p.clone());
        }
        let s = self.input_size;
        let plan = self
            .model
            .clone()
            .with_input_fact(self.input_index, f32::fact([batch, 3, s, s]).into())
            .and_then(|m| m.into_optimized())
            .and_then(|m| m.into_runnable())
            .map_err(|e| backend_err(&self.path, e))?;
        let plan = Arc::new(plan);
        plans.insert(batch, plan.clone());
        Ok(plan)
    }
}

impl<T: Scalar> Embedder<T> for OnnxEmbedder {
    fn input_size(&self) -> usize {
        self.input_size
    }

    fn embed_batch(&self, patches: &[ImageTensor<T>]) -> Result<Vec<EmbeddingVector>> {
        validate_patches(patches, self.input_size)?;
        if patches.is_empty() {
            return Ok(Vec::new());
        }
        let n = patches.len();
        let s = self.input_size;
        let mut flat = Vec::with_capacity(n * 3 * s * s);
        for p in patches {
            for c in 0..3 {
                flat.extend(
                    p.channel(c)
                        .iter()
                        .map(|v| self.normalization.apply(c, v.as_f64()) as f32),
                );
            }
        }
        let input =
            Tensor::from_shape(&[n, 3, s, s], &flat).map_err(|e| backend_err(&self.path, e))?;
        let plan = self.plan(n)?;
        let mut inputs: TVec<TValue> = tvec!();
        inputs.push(input.into());
        let outputs = plan.run(inputs).map_err(|e| backend_err(&self.path, e))?;
        let out = outputs
            .get(self.output_index)
            .ok_or_else(|| backend_err(&self.path, "model produced no embedding output"))?;
        let view = out
            .to_array_view::<f32>()
            .map_err(|e| backend_err(&self.path, e))?;
        let shape = view.shape().to_vec();
        if shape.len() != 2 || shape[0] != n {
            return Err(backend_err(
                &self.path,
                format!("embedding output has shape {shape:?}, expected [{n}, D]"),
            ));
        }
        if let Some(d) = self.expected_dims {
            if shape[1] != d {
                return Err(backend_err(
                    &self.path,
                    format!("embedding width {} differs from manifest ({d})", shape[1]),
                ));
            }
        }
        let values: Vec<f64> = view.iter().map(|&v| f64::from(v)).collect();
        values
            .chunks_exact(shape[1])
            .map(|row| EmbeddingVector::new(row.to_vec()))
            .collect()
    }

    fn name(&self) -> &str {
        "model_file"
    }
}
