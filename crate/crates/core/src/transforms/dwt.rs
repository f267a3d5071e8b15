//! Single-level 3-D Haar (db1) wavelet transform.
//!
//! The coefficient grid keeps the source shape with an interleaved layout:
//! coefficient index 2k+m along each axis selects the low-pass (m = 0) or
//! high-pass (m = 1) output of input pair (2k, 2k+1). The basis is
//! orthonormal, and the normalized pair butterfly is an involution, so the
//! same per-axis pass serves forward and inverse.

use super::axis::apply_haar_pairs;
use super::{SpectralCoefficients, TransformId};
use crate::error::{Error, Result};
use crate::video::{FloatTensor, Shape, Values};

fn check_even(shape: Shape) -> Result<()> {
    if shape.frames % 2 != 0 || shape.height % 2 != 0 || shape.width % 2 != 0 {
        return Err(Error::EvenDimensionsRequired(
            shape.frames,
            shape.height,
            shape.width,
        ));
    }
    Ok(())
}

fn real_values(values: &Values, what: &'static str) -> Result<Vec<f64>> {
    match values {
        Values::Real(v) => Ok(v.clone()),
        Values::Complex(_) => Err(Error::RealTensorRequired(what)),
    }
}

pub fn dwt_forward(v: &FloatTensor) -> Result<SpectralCoefficients> {
    let shape = v.shape();
    check_even(shape)?;
    let mut data = real_values(v.values(), "dwt_forward")?;
    for axis in 0..3 {
        apply_haar_pairs(&mut data, shape, axis);
    }
    SpectralCoefficients::new(shape, TransformId::Dwt, Values::Real(data))
}

pub fn dwt_inverse(r: &SpectralCoefficients) -> Result<FloatTensor> {
    let shape = r.shape();
    check_even(shape)?;
    let mut data = real_values(r.values(), "dwt_inverse")?;
    for axis in 0..3 {
        apply_haar_pairs(&mut data, shape, axis);
    }
    FloatTensor::from_real(shape, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::video::VideoTensor;

    #[test]
    fn all_ones_concentrates_in_approximation() {
        let shape = Shape::new(1, 2, 2, 2).unwrap();
        let v = VideoTensor::new(shape, vec![1; 8]).unwrap();
        let r = dwt_forward(&v.to_float()).unwrap();
        let vals = match r.values() {
            Values::Real(v) => v,
            _ => unreachable!(),
        };
        assert!((vals[0] - 2.0 * 2.0f64.sqrt()).abs() < 1e-12);
        assert!(vals[1..].iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn impulse_spreads_uniformly() {
        let shape = Shape::new(1, 2, 2, 2).unwrap();
        let mut v = VideoTensor::zeros(shape);
        v.set(0, 0, 0, 0, 1);
        let r = dwt_forward(&v.to_float()).unwrap();
        let vals = match r.values() {
            Values::Real(v) => v,
            _ => unreachable!(),
        };
        let expected = 1.0 / (2.0 * 2.0f64.sqrt());
        for x in vals {
            assert!((x - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn odd_dimensions_are_rejected() {
        let shape = Shape::new(1, 3, 2, 2).unwrap();
        let v = VideoTensor::zeros(shape);
        assert!(matches!(
            dwt_forward(&v.to_float()),
            Err(Error::EvenDimensionsRequired(3, 2, 2))
        ));
    }
}
