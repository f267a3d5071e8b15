//! Separable 3-D discrete Fourier transform.
//!
//! Forward is un-normalized; the inverse carries the 1/(N0*N1*N2) factor.

use num_complex::Complex64;

use super::axis::apply_kernel;
use super::{SpectralCoefficients, TransformId};
use crate::error::Result;
use crate::video::{FloatTensor, Values};

/// Kernel matrix exp(-2*pi*i*k*n/len); `sign` +1.0 gives the inverse kernel.
/// The angle argument is reduced mod `len` before evaluating sin/cos.
fn dft_kernel(len: usize, sign: f64, scale: f64) -> Vec<Complex64> {
    let mut kernel = vec![Complex64::new(0.0, 0.0); len * len];
    let step = 2.0 * std::f64::consts::PI / len as f64;
    for k in 0..len {
        for n in 0..len {
            let angle = sign * step * ((k * n) % len) as f64;
            kernel[k * len + n] = Complex64::from_polar(scale, angle);
        }
    }
    kernel
}

fn to_complex(values: &Values) -> Vec<Complex64> {
    match values {
        Values::Real(v) => v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        Values::Complex(v) => v.clone(),
    }
}

pub fn dft_forward(v: &FloatTensor) -> Result<SpectralCoefficients> {
    let shape = v.shape();
    let mut data = to_complex(v.values());
    for axis in 0..3 {
        let (len, _) = super::axis::axis_geometry(shape, axis);
        let kernel = dft_kernel(len, -1.0, 1.0);
        apply_kernel(&mut data, shape, axis, &kernel);
    }
    SpectralCoefficients::new(shape, TransformId::Dft, Values::Complex(data))
}

pub fn dft_inverse(r: &SpectralCoefficients) -> Result<FloatTensor> {
    let shape = r.shape();
    let mut data = to_complex(r.values());
    for axis in 0..3 {
        let (len, _) = super::axis::axis_geometry(shape, axis);
        let kernel = dft_kernel(len, 1.0, 1.0 / len as f64);
        apply_kernel(&mut data, shape, axis, &kernel);
    }
    FloatTensor::from_complex(shape, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::video::{Shape, VideoTensor};

    fn coeff(r: &SpectralCoefficients, c: usize, k0: usize, k1: usize, k2: usize) -> Complex64 {
        match r.values() {
            Values::Complex(v) => v[r.shape().index(c, k0, k1, k2)],
            _ => unreachable!(),
        }
    }

    #[test]
    fn constant_video_has_only_dc() {
        let shape = Shape::new(1, 2, 2, 2).unwrap();
        let v = VideoTensor::new(shape, vec![1; 8]).unwrap();
        let r = dft_forward(&v.to_float()).unwrap();
        assert!((coeff(&r, 0, 0, 0, 0) - Complex64::new(8.0, 0.0)).norm() < 1e-12);
        for k0 in 0..2 {
            for k1 in 0..2 {
                for k2 in 0..2 {
                    if (k0, k1, k2) != (0, 0, 0) {
                        assert!(coeff(&r, 0, k0, k1, k2).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn impulse_has_flat_spectrum() {
        let shape = Shape::new(1, 2, 2, 2).unwrap();
        let mut v = VideoTensor::zeros(shape);
        v.set(0, 0, 0, 0, 1);
        let r = dft_forward(&v.to_float()).unwrap();
        for k0 in 0..2 {
            for k1 in 0..2 {
                for k2 in 0..2 {
                    assert!((coeff(&r, 0, k0, k1, k2) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
                }
            }
        }
    }
}
