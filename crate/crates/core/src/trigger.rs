//! Transform-domain trigger embedding: perturb a chosen index set of the
//! coefficient tensor by delta, invert, and project back to a valid video.
//!
//! The perturbed set is a product `band x X x Y` of a contiguous temporal
//! band with spatial row/column index sets. For complex (DFT) coefficients
//! delta is added to the real part. The perturbation is applied per channel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transforms::{
    self, RandomTransformSpec, TransformId, DEFAULT_CONDITION_BOUND,
};
use crate::video::{pixel_residual, project_to_valid, FloatTensor, Shape, Values, VideoTensor};

/// Default seed for preset spatial-set sampling.
pub const DEFAULT_TRIGGER_SEED: u64 = 17;

/// Parameters of the trigger embedding function: transform, perturbed index
/// set, and magnitude.
///
/// The spatial sets are given either explicitly (`x`/`y`), as a sampled size
/// (`set_size`, drawn without replacement from `seed`), or — when both are
/// absent — as the full spatial grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriggerSpec {
    pub transform: TransformId,
    /// First temporal coefficient index of the perturbed band.
    pub k0: usize,
    /// Number of consecutive temporal indices in the band.
    pub band_len: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<usize>>,
    /// Perturbation magnitude added to each selected coefficient.
    pub delta: f64,
    /// Seed for sampling the spatial sets.
    pub seed: u64,
    /// Seed for the random-transform mode matrices (defaults to `seed`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rt_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rt_condition_bound: Option<f64>,
}

impl TriggerSpec {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Shifts only the temporal band start (collateral-damage sweeps).
    pub fn with_k0(&self, k0: usize) -> TriggerSpec {
        TriggerSpec { k0, ..self.clone() }
    }

    pub fn with_delta(&self, delta: f64) -> TriggerSpec {
        TriggerSpec {
            delta,
            ..self.clone()
        }
    }

    pub fn with_set_size(&self, set_size: usize) -> TriggerSpec {
        TriggerSpec {
            set_size: Some(set_size),
            x: None,
            y: None,
            ..self.clone()
        }
    }

    /// Resolves the spec against a concrete video shape: samples or validates
    /// the spatial sets, materializes the temporal band, and generates the
    /// random-transform matrices when needed.
    pub fn resolve(&self, shape: Shape) -> Result<ResolvedTrigger> {
        if self.delta < 0.0 {
            return Err(Error::InvalidSpec("delta must be >= 0".into()));
        }
        if self.band_len == 0 {
            return Err(Error::InvalidSpec("temporal band must be non-empty".into()));
        }
        let n0 = shape.frames;
        let band: Vec<usize> = if self.transform == TransformId::Dft {
            // The DFT kernel is periodic in k, so temporal indices reduce
            // modulo the frame count; duplicates after reduction collapse.
            let mut seen = std::collections::BTreeSet::new();
            for k in self.k0..self.k0 + self.band_len {
                seen.insert(k % n0);
            }
            seen.into_iter().collect()
        } else {
            let end = self.k0 + self.band_len;
            if end > n0 {
                return Err(Error::IndexOutOfRange(format!(
                    "temporal band {}..{} exceeds {} frames",
                    self.k0, end, n0
                )));
            }
            (self.k0..end).collect()
        };

        let (xs, ys) = match (&self.x, &self.y, self.set_size) {
            (Some(x), Some(y), _) => {
                let xs = validate_set(x, shape.height, "x")?;
                let ys = validate_set(y, shape.width, "y")?;
                (xs, ys)
            }
            (None, None, Some(size)) => sample_spatial_sets(self.seed, size, shape.height, shape.width)?,
            (None, None, None) => (
                (0..shape.height).collect(),
                (0..shape.width).collect(),
            ),
            _ => {
                return Err(Error::InvalidSpec(
                    "spatial sets x and y must be given together".into(),
                ))
            }
        };

        let rt = if self.transform == TransformId::Rt {
            Some(RandomTransformSpec::generate(
                self.rt_seed.unwrap_or(self.seed),
                [shape.frames, shape.height, shape.width],
                self.rt_condition_bound.unwrap_or(DEFAULT_CONDITION_BOUND),
            )?)
        } else {
            None
        };

        Ok(ResolvedTrigger {
            transform: self.transform,
            band,
            xs,
            ys,
            delta: self.delta,
            rt,
        })
    }
}

fn validate_set(set: &[usize], axis_len: usize, name: &str) -> Result<Vec<usize>> {
    if set.is_empty() {
        return Err(Error::InvalidSpec(format!("spatial set {name} is empty")));
    }
    let mut sorted: Vec<usize> = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&bad) = sorted.iter().find(|&&i| i >= axis_len) {
        return Err(Error::IndexOutOfRange(format!(
            "spatial index {bad} >= axis length {axis_len} in {name}"
        )));
    }
    Ok(sorted)
}

/// Samples index sets X from `[n1]` and Y from `[n2]` without replacement,
/// deterministically for a fixed seed. Returned sets are sorted.
pub fn sample_spatial_sets(
    seed: u64,
    size: usize,
    n1: usize,
    n2: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if size == 0 {
        return Err(Error::InvalidSpec("spatial set size must be >= 1".into()));
    }
    if size > n1 || size > n2 {
        return Err(Error::InvalidSpec(format!(
            "spatial set size {size} exceeds axis length {}",
            n1.min(n2)
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let xs = choose_without_replacement(&mut rng, n1, size);
    let ys = choose_without_replacement(&mut rng, n2, size);
    Ok((xs, ys))
}

fn choose_without_replacement(rng: &mut ChaCha20Rng, n: usize, k: usize) -> Vec<usize> {
    // Partial Fisher-Yates over 0..n.
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    let mut chosen = pool[..k].to_vec();
    chosen.sort_unstable();
    chosen
}

/// A trigger spec materialized against a concrete shape.
#[derive(Debug, Clone)]
pub struct ResolvedTrigger {
    pub transform: TransformId,
    pub band: Vec<usize>,
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    pub delta: f64,
    pub rt: Option<RandomTransformSpec>,
}

impl ResolvedTrigger {
    /// Embeds the trigger: forward transform, add delta on the index set,
    /// invert, project to a valid video.
    pub fn embed(&self, v: &VideoTensor) -> Result<VideoTensor> {
        let shape = v.shape();
        let mut coeffs = transforms::forward(&v.to_float(), self.transform, self.rt.as_ref())?;
        self.perturb(&mut coeffs)?;
        let reconstructed = transforms::inverse(&coeffs, self.rt.as_ref())?;
        Ok(project_to_valid(&reconstructed))
    }

    fn perturb(&self, coeffs: &mut transforms::SpectralCoefficients) -> Result<()> {
        let shape = coeffs.shape();
        for &k in self.band.iter().chain(self.xs.iter()).take(0) {
            let _ = k; // no-op: indices are validated below per axis
        }
        if let Some(&bad) = self.band.iter().find(|&&k| k >= shape.frames) {
            return Err(Error::IndexOutOfRange(format!(
                "temporal index {bad} >= {}",
                shape.frames
            )));
        }
        if let Some(&bad) = self.xs.iter().find(|&&k| k >= shape.height) {
            return Err(Error::IndexOutOfRange(format!(
                "row index {bad} >= {}",
                shape.height
            )));
        }
        if let Some(&bad) = self.ys.iter().find(|&&k| k >= shape.width) {
            return Err(Error::IndexOutOfRange(format!(
                "column index {bad} >= {}",
                shape.width
            )));
        }
        let delta = self.delta;
        match coeffs.values_mut() {
            Values::Real(vals) => {
                for c in 0..shape.channels {
                    for &k0 in &self.band {
                        for &k1 in &self.xs {
                            for &k2 in &self.ys {
                                vals[shape.index(c, k0, k1, k2)] += delta;
                            }
                        }
                    }
                }
            }
            Values::Complex(vals) => {
                for c in 0..shape.channels {
                    for &k0 in &self.band {
                        for &k1 in &self.xs {
                            for &k2 in &self.ys {
                                vals[shape.index(c, k0, k1, k2)].re += delta;
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Embeds the trigger described by `spec` into `v` (Eq.-style pipeline:
/// transform, perturb, invert, project).
pub fn embed_trigger(v: &VideoTensor, spec: &TriggerSpec) -> Result<VideoTensor> {
    spec.resolve(v.shape())?.embed(v)
}

/// Signed pixel-space difference between the triggered and original video.
pub fn trigger_residual(v: &VideoTensor, spec: &TriggerSpec) -> Result<FloatTensor> {
    let triggered = embed_trigger(v, spec)?;
    pixel_residual(&triggered, v)
}

/// Named trigger presets.
///
/// The `-paper` presets carry the published full-scale hyper-parameters; the
/// `-desk` presets are scaled to 16x32x32 clips with magnitudes calibrated so
/// the pixel-space residual has a comparable range.
pub fn preset(name: &str) -> Option<TriggerSpec> {
    let spec = match name {
        "dft-paper" => TriggerSpec {
            transform: TransformId::Dft,
            k0: 35,
            band_len: 10,
            set_size: Some(25),
            x: None,
            y: None,
            delta: 50_000.0,
            seed: DEFAULT_TRIGGER_SEED,
            rt_seed: None,
            rt_condition_bound: None,
        },
        "dct-paper" => TriggerSpec {
            transform: TransformId::Dct,
            k0: 35,
            band_len: 10,
            set_size: Some(25),
            x: None,
            y: None,
            delta: 50.0,
            seed: DEFAULT_TRIGGER_SEED,
            rt_seed: None,
            rt_condition_bound: None,
        },
        "dwt-paper" => TriggerSpec {
            transform: TransformId::Dwt,
            k0: 12,
            band_len: 10,
            set_size: None,
            x: None,
            y: None,
            delta: 10.0,
            seed: DEFAULT_TRIGGER_SEED,
            rt_seed: None,
            rt_condition_bound: None,
        },
        "rt-paper" => TriggerSpec {
            transform: TransformId::Rt,
            k0: 35,
            band_len: 10,
            set_size: Some(25),
            x: None,
            y: None,
            delta: 30.0,
            seed: DEFAULT_TRIGGER_SEED,
            rt_seed: Some(23),
            rt_condition_bound: None,
        },
        "dft-desk" => TriggerSpec {
            transform: TransformId::Dft,
            k0: 4,
            band_len: 5,
            set_size: Some(8),
            x: None,
            y: None,
            delta: 3_000.0,
            seed: DEFAULT_TRIGGER_SEED,
            rt_seed: None,
            rt_condition_bound: None,
        },
        "dct-desk" => TriggerSpec {
            transform: TransformId::Dct,
            k0: 4,
            band_len: 5,
            set_size: Some(8),
            x: None,
            y: None,
            delta: 8.0,
            seed: DEFAULT_TRIGGER_SEED,
            rt_seed: None,
            rt_condition_bound: None,
        },
        "dwt-desk" => TriggerSpec {
            transform: TransformId::Dwt,
            k0: 6,
            band_len: 5,
            set_size: None,
            x: None,
            y: None,
            delta: 10.0,
            seed: DEFAULT_TRIGGER_SEED,
            rt_seed: None,
            rt_condition_bound: None,
        },
        "rt-desk" => TriggerSpec {
            transform: TransformId::Rt,
            k0: 4,
            band_len: 5,
            set_size: Some(8),
            x: None,
            y: None,
            delta: 0.2,
            seed: DEFAULT_TRIGGER_SEED,
            rt_seed: Some(23),
            rt_condition_bound: None,
        },
        _ => return None,
    };
    Some(spec)
}

pub fn preset_names() -> &'static [&'static str] {
    &[
        "dft-paper",
        "dct-paper",
        "dwt-paper",
        "rt-paper",
        "dft-desk",
        "dct-desk",
        "dwt-desk",
        "rt-desk",
    ]
}
