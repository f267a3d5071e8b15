//! Lane iteration for separable per-axis transforms.
//!
//! Axis 0 is the frame axis, axis 1 the row (height) axis, axis 2 the column
//! (width) axis. Channels are independent: lane enumeration covers every
//! channel block.

use std::ops::{AddAssign, Mul};

use num_traits::Zero;

use crate::video::Shape;

/// (lane length, element stride) for an axis.
pub(crate) fn axis_geometry(shape: Shape, axis: usize) -> (usize, usize) {
    match axis {
        0 => (shape.frames, shape.height * shape.width),
        1 => (shape.height, shape.width),
        2 => (shape.width, 1),
        _ => unreachable!("axis must be 0, 1, or 2"),
    }
}

/// Calls `f` with the base offset of every lane along `axis`.
pub(crate) fn for_each_lane_base(shape: Shape, axis: usize, mut f: impl FnMut(usize)) {
    let Shape {
        channels,
        frames,
        height,
        width,
    } = shape;
    match axis {
        0 => {
            let plane = height * width;
            for c in 0..channels {
                let cb = c * frames * plane;
                for r in 0..plane {
                    f(cb + r);
                }
            }
        }
        1 => {
            for c in 0..channels {
                for n0 in 0..frames {
                    let b = (c * frames + n0) * height * width;
                    for n2 in 0..width {
                        f(b + n2);
                    }
                }
            }
        }
        2 => {
            for c in 0..channels {
                for n0 in 0..frames {
                    for n1 in 0..height {
                        f(((c * frames + n0) * height + n1) * width);
                    }
                }
            }
        }
        _ => unreachable!("axis must be 0, 1, or 2"),
    }
}

/// Multiplies every lane along `axis` by the `len x len` kernel matrix
/// (row-major, `kernel[out * len + in]`).
pub(crate) fn apply_kernel<T>(data: &mut [T], shape: Shape, axis: usize, kernel: &[T])
where
    T: Copy + Zero + Mul<Output = T> + AddAssign,
{
    let (len, stride) = axis_geometry(shape, axis);
    debug_assert_eq!(kernel.len(), len * len);
    let mut lane = vec![T::zero(); len];
    let mut out = vec![T::zero(); len];
    for_each_lane_base(shape, axis, |base| {
        for (j, slot) in lane.iter_mut().enumerate() {
            *slot = data[base + j * stride];
        }
        for (k, slot) in out.iter_mut().enumerate() {
            let row = &kernel[k * len..(k + 1) * len];
            let mut acc = T::zero();
            for (w, x) in row.iter().zip(lane.iter()) {
                acc += *w * *x;
            }
            *slot = acc;
        }
        for (k, value) in out.iter().enumerate() {
            data[base + k * stride] = *value;
        }
    });
}

/// In-place normalized Haar butterfly on index pairs (2k, 2k+1) of every lane.
/// The pair map ((a+b)/sqrt2, (a-b)/sqrt2) is its own inverse.
pub(crate) fn apply_haar_pairs(data: &mut [f64], shape: Shape, axis: usize) {
    let (len, stride) = axis_geometry(shape, axis);
    debug_assert!(len % 2 == 0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for_each_lane_base(shape, axis, |base| {
        for k in 0..len / 2 {
            let i = base + 2 * k * stride;
            let j = i + stride;
            let a = data[i];
            let b = data[j];
            data[i] = (a + b) * s;
            data[j] = (a - b) * s;
        }
    });
}
