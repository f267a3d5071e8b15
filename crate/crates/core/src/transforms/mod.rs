//! Forward and inverse 3-D separable transforms: DFT, orthonormal DCT-II,
//! single-level Haar DWT, and a seeded random transform. Each transform maps
//! a float tensor to a coefficient tensor over the same index grid, per
//! channel.

mod axis;
mod dct;
mod dft;
mod dwt;
mod rt;

pub use dct::{dct2_plane_forward, dct2_plane_inverse, dct_forward, dct_inverse};
pub use dft::{dft_forward, dft_inverse};
pub use dwt::{dwt_forward, dwt_inverse};
pub use rt::{rt_forward, rt_inverse, RandomTransformSpec, DEFAULT_CONDITION_BOUND};

pub(crate) use rt::mix_seed;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::video::{FloatTensor, Shape, Values};

/// Which transform produced a coefficient tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformId {
    Dft,
    Dct,
    Dwt,
    Rt,
}

impl std::fmt::Display for TransformId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TransformId::Dft => "dft",
            TransformId::Dct => "dct",
            TransformId::Dwt => "dwt",
            TransformId::Rt => "rt",
        };
        f.write_str(s)
    }
}

/// Coefficient tensor over the same `(channel, k0, k1, k2)` grid as the
/// source video. Complex for DFT, real for DCT/DWT/RT.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoefficients {
    shape: Shape,
    transform: TransformId,
    values: Values,
}

impl SpectralCoefficients {
    pub fn new(shape: Shape, transform: TransformId, values: Values) -> Result<Self> {
        if values.len() != shape.len() {
            return Err(Error::ShapeMismatch(format!(
                "coefficient count {} != shape volume {}",
                values.len(),
                shape.len()
            )));
        }
        Ok(SpectralCoefficients {
            shape,
            transform,
            values,
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn transform(&self) -> TransformId {
        self.transform
    }

    pub fn values(&self) -> &Values {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut Values {
        &mut self.values
    }
}

/// Dispatches to the forward transform named by `id`. RT requires `rt_spec`.
pub fn forward(
    v: &FloatTensor,
    id: TransformId,
    rt_spec: Option<&RandomTransformSpec>,
) -> Result<SpectralCoefficients> {
    match id {
        TransformId::Dft => dft_forward(v),
        TransformId::Dct => dct_forward(v),
        TransformId::Dwt => dwt_forward(v),
        TransformId::Rt => {
            let spec = rt_spec
                .ok_or_else(|| Error::InvalidSpec("random transform requires an rt spec".into()))?;
            rt_forward(v, spec)
        }
    }
}

/// Dispatches to the inverse transform of `r`. RT requires `rt_spec`.
pub fn inverse(
    r: &SpectralCoefficients,
    rt_spec: Option<&RandomTransformSpec>,
) -> Result<FloatTensor> {
    match r.transform() {
        TransformId::Dft => dft_inverse(r),
        TransformId::Dct => dct_inverse(r),
        TransformId::Dwt => dwt_inverse(r),
        TransformId::Rt => {
            let spec = rt_spec
                .ok_or_else(|| Error::InvalidSpec("random transform requires an rt spec".into()))?;
            rt_inverse(r, spec)
        }
    }
}
