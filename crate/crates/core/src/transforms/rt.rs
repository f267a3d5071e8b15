//! Random transform: three seeded random invertible mode matrices.
//!
//! The basis is b_k = sum_n e_n * prod_i M^i(k_i, n_i), so reconstruction
//! applies M^i transposed along each mode and the forward pass applies the
//! inverse of that map. Matrices are sampled uniformly on [0, 1) from a
//! seeded generator and resampled (next sub-seed) while any mode matrix
//! exceeds the condition-number bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::axis::{apply_kernel, axis_geometry};
use super::{SpectralCoefficients, TransformId};
use crate::error::{Error, Result};
use crate::video::{FloatTensor, Values};

pub const DEFAULT_CONDITION_BOUND: f64 = 1e6;
const MAX_SAMPLE_ATTEMPTS: u64 = 64;

/// Three random invertible mode matrices plus their inverses.
///
/// Serializes as `{seed, dims, condition_bound}`; the matrices are
/// regenerated from the seed on deserialization.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RtSpecDoc", into = "RtSpecDoc")]
pub struct RandomTransformSpec {
    seed: u64,
    dims: [usize; 3],
    condition_bound: f64,
    matrices: [Vec<f64>; 3],
    inverses: [Vec<f64>; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RtSpecDoc {
    seed: u64,
    dims: [usize; 3],
    condition_bound: f64,
}

impl From<RandomTransformSpec> for RtSpecDoc {
    fn from(spec: RandomTransformSpec) -> Self {
        RtSpecDoc {
            seed: spec.seed,
            dims: spec.dims,
            condition_bound: spec.condition_bound,
        }
    }
}

impl TryFrom<RtSpecDoc> for RandomTransformSpec {
    type Error = Error;

    fn try_from(doc: RtSpecDoc) -> Result<Self> {
        RandomTransformSpec::generate(doc.seed, doc.dims, doc.condition_bound)
    }
}

impl RandomTransformSpec {
    /// Samples mode matrices for a `(frames, height, width)` grid.
    pub fn generate(seed: u64, dims: [usize; 3], condition_bound: f64) -> Result<Self> {
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidSpec("zero-sized transform mode".into()));
        }
        let mut worst = 0.0f64;
        for attempt in 0..MAX_SAMPLE_ATTEMPTS {
            let mut rng = ChaCha20Rng::seed_from_u64(mix_seed(seed, attempt));
            let mats: Vec<Vec<f64>> = dims
                .iter()
                .map(|&n| (0..n * n).map(|_| rng.gen::<f64>()).collect())
                .collect();
            let mut invs = Vec::with_capacity(3);
            let mut ok = true;
            for (m, &n) in mats.iter().zip(dims.iter()) {
                match invert(m, n) {
                    Some(inv) => {
                        let cond = norm1(m, n) * norm1(&inv, n);
                        if cond > condition_bound {
                            worst = worst.max(cond);
                            ok = false;
                            break;
                        }
                        invs.push(inv);
                    }
                    None => {
                        worst = f64::INFINITY;
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let matrices: [Vec<f64>; 3] = mats.try_into().unwrap();
                let inverses: [Vec<f64>; 3] = invs.try_into().unwrap();
                return Ok(RandomTransformSpec {
                    seed,
                    dims,
                    condition_bound,
                    matrices,
                    inverses,
                });
            }
        }
        Err(Error::IllConditioned {
            cond: worst,
            bound: condition_bound,
        })
    }

    /// Builds a spec whose mode matrices are identity scaled by `factor`
    /// (test helper; bypasses sampling).
    pub fn scaled_identity(dims: [usize; 3], factor: f64) -> Result<Self> {
        if factor == 0.0 {
            return Err(Error::SingularMatrix);
        }
        let build = |n: usize, v: f64| -> Vec<f64> {
            let mut m = vec![0.0; n * n];
            for i in 0..n {
                m[i * n + i] = v;
            }
            m
        };
        Ok(RandomTransformSpec {
            seed: 0,
            dims,
            condition_bound: DEFAULT_CONDITION_BOUND,
            matrices: [
                build(dims[0], factor),
                build(dims[1], factor),
                build(dims[2], factor),
            ],
            inverses: [
                build(dims[0], 1.0 / factor),
                build(dims[1], 1.0 / factor),
                build(dims[2], 1.0 / factor),
            ],
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn condition_bound(&self) -> f64 {
        self.condition_bound
    }

    pub fn matrix(&self, mode: usize) -> &[f64] {
        &self.matrices[mode]
    }

    fn check_dims(&self, shape: crate::video::Shape) -> Result<()> {
        if self.dims != [shape.frames, shape.height, shape.width] {
            return Err(Error::ShapeMismatch(format!(
                "transform spec dims {:?} vs video {}x{}x{}",
                self.dims, shape.frames, shape.height, shape.width
            )));
        }
        Ok(())
    }
}

pub(crate) fn mix_seed(seed: u64, tag: u64) -> u64 {
    // SplitMix64 finalizer over (seed, tag).
    let mut z = seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Gauss-Jordan inverse with partial pivoting; `None` when singular.
fn invert(m: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut a = m.to_vec();
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for col in 0..n {
        let pivot_row = (col..n).max_by(|&r, &s| {
            a[r * n + col]
                .abs()
                .partial_cmp(&a[s * n + col].abs())
                .unwrap()
        })?;
        let pivot = a[pivot_row * n + col];
        if pivot.abs() < 1e-300 {
            return None;
        }
        if pivot_row != col {
            for j in 0..n {
                a.swap(col * n + j, pivot_row * n + j);
                inv.swap(col * n + j, pivot_row * n + j);
            }
        }
        let inv_pivot = 1.0 / a[col * n + col];
        for j in 0..n {
            a[col * n + j] *= inv_pivot;
            inv[col * n + j] *= inv_pivot;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = a[row * n + col];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                a[row * n + j] -= factor * a[col * n + j];
                inv[row * n + j] -= factor * inv[col * n + j];
            }
        }
    }
    Some(inv)
}

/// 1-norm (maximum absolute column sum).
fn norm1(m: &[f64], n: usize) -> f64 {
    (0..n)
        .map(|j| (0..n).map(|i| m[i * n + j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn real_values(values: &Values, what: &'static str) -> Result<Vec<f64>> {
    match values {
        Values::Real(v) => Ok(v.clone()),
        Values::Complex(_) => Err(Error::RealTensorRequired(what)),
    }
}

pub fn rt_forward(v: &FloatTensor, spec: &RandomTransformSpec) -> Result<SpectralCoefficients> {
    let shape = v.shape();
    spec.check_dims(shape)?;
    let mut data = real_values(v.values(), "rt_forward")?;
    for axis in 0..3 {
        let (len, _) = axis_geometry(shape, axis);
        // Forward kernel is inv(M)^T: kernel[k*len + n] = inv(M)[n*len + k].
        let inv = &spec.inverses[axis];
        let mut kernel = vec![0.0; len * len];
        for k in 0..len {
            for n in 0..len {
                kernel[k * len + n] = inv[n * len + k];
            }
        }
        apply_kernel(&mut data, shape, axis, &kernel);
    }
    SpectralCoefficients::new(shape, TransformId::Rt, Values::Real(data))
}

pub fn rt_inverse(r: &SpectralCoefficients, spec: &RandomTransformSpec) -> Result<FloatTensor> {
    let shape = r.shape();
    spec.check_dims(shape)?;
    let mut data = real_values(r.values(), "rt_inverse")?;
    for axis in 0..3 {
        let (len, _) = axis_geometry(shape, axis);
        // Reconstruction kernel is M^T: kernel[n*len + k] = M[k*len + n].
        let m = &spec.matrices[axis];
        let mut kernel = vec![0.0; len * len];
        for n in 0..len {
            for k in 0..len {
                kernel[n * len + k] = m[k * len + n];
            }
        }
        apply_kernel(&mut data, shape, axis, &kernel);
    }
    FloatTensor::from_real(shape, data)
}
