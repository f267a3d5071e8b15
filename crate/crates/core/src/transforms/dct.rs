//! Separable 3-D orthonormal DCT-II; the inverse is DCT-III (the transpose).

use super::axis::{apply_kernel, axis_geometry};
use super::{SpectralCoefficients, TransformId};
use crate::error::{Error, Result};
use crate::video::{FloatTensor, Values};

/// Orthonormal DCT-II kernel: c(k) * cos(pi * (2n+1) * k / (2 len)) with
/// c(0) = sqrt(1/len) and c(k>0) = sqrt(2/len).
fn dct_kernel(len: usize) -> Vec<f64> {
    let mut kernel = vec![0.0; len * len];
    let c0 = (1.0 / len as f64).sqrt();
    let ck = (2.0 / len as f64).sqrt();
    for k in 0..len {
        let scale = if k == 0 { c0 } else { ck };
        for n in 0..len {
            let angle = std::f64::consts::PI * (2 * n + 1) as f64 * k as f64 / (2.0 * len as f64);
            kernel[k * len + n] = scale * angle.cos();
        }
    }
    kernel
}

fn transpose(m: &[f64], len: usize) -> Vec<f64> {
    let mut t = vec![0.0; len * len];
    for k in 0..len {
        for n in 0..len {
            t[n * len + k] = m[k * len + n];
        }
    }
    t
}

fn real_values(values: &Values, what: &'static str) -> Result<Vec<f64>> {
    match values {
        Values::Real(v) => Ok(v.clone()),
        Values::Complex(_) => Err(Error::RealTensorRequired(what)),
    }
}

pub fn dct_forward(v: &FloatTensor) -> Result<SpectralCoefficients> {
    let shape = v.shape();
    let mut data = real_values(v.values(), "dct_forward")?;
    for axis in 0..3 {
        let (len, _) = axis_geometry(shape, axis);
        apply_kernel(&mut data, shape, axis, &dct_kernel(len));
    }
    SpectralCoefficients::new(shape, TransformId::Dct, Values::Real(data))
}

pub fn dct_inverse(r: &SpectralCoefficients) -> Result<FloatTensor> {
    let shape = r.shape();
    let mut data = real_values(r.values(), "dct_inverse")?;
    for axis in 0..3 {
        let (len, _) = axis_geometry(shape, axis);
        apply_kernel(&mut data, shape, axis, &transpose(&dct_kernel(len), len));
    }
    FloatTensor::from_real(shape, data)
}

/// 2-D orthonormal DCT-II of a single `height x width` plane (used by the
/// frame-wise FTtrojan baseline).
pub fn dct2_plane_forward(plane: &mut [f64], height: usize, width: usize) {
    let shape = crate::video::Shape::new(1, 1, height, width).unwrap();
    for axis in [1usize, 2] {
        let (len, _) = axis_geometry(shape, axis);
        apply_kernel(plane, shape, axis, &dct_kernel(len));
    }
}

/// Inverse of [`dct2_plane_forward`].
pub fn dct2_plane_inverse(plane: &mut [f64], height: usize, width: usize) {
    let shape = crate::video::Shape::new(1, 1, height, width).unwrap();
    for axis in [1usize, 2] {
        let (len, _) = axis_geometry(shape, axis);
        apply_kernel(plane, shape, axis, &transpose(&dct_kernel(len), len));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::video::{Shape, VideoTensor};

    #[test]
    fn constant_video_dc_is_sqrt_volume() {
        let shape = Shape::new(1, 2, 2, 2).unwrap();
        let v = VideoTensor::new(shape, vec![1; 8]).unwrap();
        let r = dct_forward(&v.to_float()).unwrap();
        let vals = match r.values() {
            Values::Real(v) => v,
            _ => unreachable!(),
        };
        assert!((vals[0] - 8.0f64.sqrt()).abs() < 1e-12);
        assert!(vals[1..].iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn round_trip_is_identity() {
        let shape = Shape::new(1, 4, 4, 4).unwrap();
        let pixels: Vec<u8> = (0..64).map(|i| (i * 53 % 256) as u8).collect();
        let v = VideoTensor::new(shape, pixels).unwrap();
        let f = v.to_float();
        let back = dct_inverse(&dct_forward(&f).unwrap()).unwrap();
        let orig = f.as_real().unwrap();
        let rec = back.as_real().unwrap();
        for (a, b) in orig.iter().zip(rec) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}
