//! Video tensor representation, validity projection, temporal padding and
//! downsampling, and the `.vten` binary file format.
//!
//! A video is an integer-pixel tensor over a `(channels, frames, height,
//! width)` grid; every pixel lies in `[0, 255]`. All operations here are pure
//! and per-channel.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dimensions of a video or coefficient tensor.
///
/// Layout is channel-major, then frame-major, then row-major:
/// `index = ((c * frames + n0) * height + n1) * width + n2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub channels: usize,
    pub frames: usize,
    pub height: usize,
    pub width: usize,
}

impl Shape {
    pub fn new(channels: usize, frames: usize, height: usize, width: usize) -> Result<Self> {
        if channels == 0 || frames == 0 || height == 0 || width == 0 {
            return Err(Error::InvalidSpec(format!(
                "all dimensions must be >= 1, got {channels}x{frames}x{height}x{width}"
            )));
        }
        let shape = Shape {
            channels,
            frames,
            height,
            width,
        };
        shape.checked_len()?;
        Ok(shape)
    }

    /// Total element count, or an error if it overflows.
    pub fn checked_len(&self) -> Result<usize> {
        self.channels
            .checked_mul(self.frames)
            .and_then(|n| n.checked_mul(self.height))
            .and_then(|n| n.checked_mul(self.width))
            .ok_or_else(|| {
                Error::DimensionOverflow(format!(
                    "{}x{}x{}x{}",
                    self.channels, self.frames, self.height, self.width
                ))
            })
    }

    pub fn len(&self) -> usize {
        self.channels * self.frames * self.height * self.width
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Elements per channel.
    pub fn channel_len(&self) -> usize {
        self.frames * self.height * self.width
    }

    pub fn index(&self, c: usize, n0: usize, n1: usize, n2: usize) -> usize {
        ((c * self.frames + n0) * self.height + n1) * self.width + n2
    }
}

/// Integer-pixel video: the valid input space of the classifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VideoTensor {
    shape: Shape,
    pixels: Vec<u8>,
}

impl VideoTensor {
    pub fn new(shape: Shape, pixels: Vec<u8>) -> Result<Self> {
        if pixels.len() != shape.len() {
            return Err(Error::ShapeMismatch(format!(
                "pixel count {} != shape volume {}",
                pixels.len(),
                shape.len()
            )));
        }
        Ok(VideoTensor { shape, pixels })
    }

    pub fn zeros(shape: Shape) -> Self {
        VideoTensor {
            shape,
            pixels: vec![0; shape.len()],
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn get(&self, c: usize, n0: usize, n1: usize, n2: usize) -> u8 {
        self.pixels[self.shape.index(c, n0, n1, n2)]
    }

    pub fn set(&mut self, c: usize, n0: usize, n1: usize, n2: usize, value: u8) {
        let i = self.shape.index(c, n0, n1, n2);
        self.pixels[i] = value;
    }

    /// Lift pixels to a real-valued float tensor.
    pub fn to_float(&self) -> FloatTensor {
        FloatTensor {
            shape: self.shape,
            values: Values::Real(self.pixels.iter().map(|&p| f64::from(p)).collect()),
        }
    }

    /// Appends all-zero frames until the frame count reaches `target_frames`.
    pub fn pad_frames(&self, target_frames: usize) -> Result<VideoTensor> {
        let s = self.shape;
        if target_frames < s.frames {
            return Err(Error::PadWouldTruncate {
                target: target_frames,
                frames: s.frames,
            });
        }
        if target_frames == s.frames {
            return Ok(self.clone());
        }
        let new_shape = Shape::new(s.channels, target_frames, s.height, s.width)?;
        let frame_len = s.height * s.width;
        let mut pixels = vec![0u8; new_shape.len()];
        for c in 0..s.channels {
            let src = &self.pixels[c * s.channel_len()..][..s.channel_len()];
            let dst_base = c * target_frames * frame_len;
            pixels[dst_base..dst_base + src.len()].copy_from_slice(src);
        }
        VideoTensor::new(new_shape, pixels)
    }

    /// Keeps `target_frames` frames at indices `floor(j * frames / target_frames)`.
    pub fn downsample_frames(&self, target_frames: usize) -> Result<VideoTensor> {
        let s = self.shape;
        if target_frames == 0 || target_frames > s.frames {
            return Err(Error::BadDownsampleTarget {
                target: target_frames,
                frames: s.frames,
            });
        }
        if target_frames == s.frames {
            return Ok(self.clone());
        }
        let new_shape = Shape::new(s.channels, target_frames, s.height, s.width)?;
        let frame_len = s.height * s.width;
        let mut pixels = Vec::with_capacity(new_shape.len());
        for c in 0..s.channels {
            for j in 0..target_frames {
                let n0 = j * s.frames / target_frames;
                let start = (c * s.frames + n0) * frame_len;
                pixels.extend_from_slice(&self.pixels[start..start + frame_len]);
            }
        }
        VideoTensor::new(new_shape, pixels)
    }

    /// Writes the tensor in the `.vten` binary format.
    pub fn write_vten(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut buf = Vec::with_capacity(20 + self.pixels.len());
        buf.extend_from_slice(VTEN_MAGIC);
        buf.extend_from_slice(&VTEN_VERSION.to_le_bytes());
        buf.extend_from_slice(&(self.shape.channels as u16).to_le_bytes());
        buf.extend_from_slice(&(self.shape.frames as u32).to_le_bytes());
        buf.extend_from_slice(&(self.shape.height as u32).to_le_bytes());
        buf.extend_from_slice(&(self.shape.width as u32).to_le_bytes());
        buf.extend_from_slice(&self.pixels);
        fs::write(path, buf).map_err(|e| Error::io(path, e))
    }

    /// Reads a tensor from the `.vten` binary format.
    pub fn read_vten(path: impl AsRef<Path>) -> Result<VideoTensor> {
        let path = path.as_ref();
        let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let mut reader = std::io::BufReader::new(file);
        let mut header = [0u8; 20];
        reader
            .read_exact(&mut header)
            .map_err(|_| Error::BadMagic)?;
        if &header[0..4] != VTEN_MAGIC {
            return Err(Error::BadMagic);
        }
        let version = u16::from_le_bytes([header[4], header[5]]);
        if version != VTEN_VERSION {
            return Err(Error::UnsupportedVersion(version));
        }
        let channels = u16::from_le_bytes([header[6], header[7]]) as usize;
        let frames = u32::from_le_bytes(header[8..12].try_into().unwrap()) as usize;
        let height = u32::from_le_bytes(header[12..16].try_into().unwrap()) as usize;
        let width = u32::from_le_bytes(header[16..20].try_into().unwrap()) as usize;
        let shape = Shape::new(channels, frames, height, width)?;
        let expected = shape.checked_len()? as u64;
        let mut pixels = Vec::new();
        reader
            .read_to_end(&mut pixels)
            .map_err(|e| Error::io(path, e))?;
        if (pixels.len() as u64) != expected {
            return Err(Error::TruncatedPayload {
                expected,
                found: pixels.len() as u64,
            });
        }
        VideoTensor::new(shape, pixels)
    }
}

const VTEN_MAGIC: &[u8; 4] = b"VTEN";
const VTEN_VERSION: u16 = 1;

/// Values of a float tensor: real, or complex (the output of a DFT path).
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl Values {
    pub fn len(&self) -> usize {
        match self {
            Values::Real(v) => v.len(),
            Values::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, Values::Complex(_))
    }
}

/// Double-precision tensor with the same shape metadata as a video; the
/// intermediate representation between inverse transforms and projection.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatTensor {
    shape: Shape,
    values: Values,
}

impl FloatTensor {
    pub fn new(shape: Shape, values: Values) -> Result<Self> {
        if values.len() != shape.len() {
            return Err(Error::ShapeMismatch(format!(
                "value count {} != shape volume {}",
                values.len(),
                shape.len()
            )));
        }
        Ok(FloatTensor { shape, values })
    }

    pub fn from_real(shape: Shape, values: Vec<f64>) -> Result<Self> {
        FloatTensor::new(shape, Values::Real(values))
    }

    pub fn from_complex(shape: Shape, values: Vec<Complex64>) -> Result<Self> {
        FloatTensor::new(shape, Values::Complex(values))
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn values(&self) -> &Values {
        &self.values
    }

    pub fn as_real(&self) -> Result<&[f64]> {
        match &self.values {
            Values::Real(v) => Ok(v),
            Values::Complex(_) => Err(Error::RealTensorRequired("real accessor")),
        }
    }

    /// L-infinity norm of a real tensor's values.
    pub fn linf(&self) -> f64 {
        match &self.values {
            Values::Real(v) => v.iter().fold(0.0, |m, x| m.max(x.abs())),
            Values::Complex(v) => v.iter().fold(0.0, |m, x| m.max(x.norm())),
        }
    }

    /// L2 norm of the tensor's values.
    pub fn l2(&self) -> f64 {
        match &self.values {
            Values::Real(v) => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            Values::Complex(v) => v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt(),
        }
    }
}

/// Projects an arbitrary float tensor back to a valid video: complex values
/// are replaced by their magnitude, then each value is rounded to the nearest
/// integer (ties away from zero) and clipped to `[0, 255]`.
pub fn project_to_valid(x: &FloatTensor) -> VideoTensor {
    let quantize = |v: f64| -> u8 {
        // f64::round rounds half away from zero.
        let r = v.round();
        if r <= 0.0 {
            0
        } else if r >= 255.0 {
            255
        } else {
            r as u8
        }
    };
    let pixels: Vec<u8> = match &x.values {
        Values::Real(v) => v.iter().map(|&v| quantize(v)).collect(),
        Values::Complex(v) => v.iter().map(|z| quantize(z.norm())).collect(),
    };
    VideoTensor {
        shape: x.shape,
        pixels,
    }
}

/// Signed per-pixel difference `a - b` as a real float tensor.
pub fn pixel_residual(a: &VideoTensor, b: &VideoTensor) -> Result<FloatTensor> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch(format!(
            "{:?} vs {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let values = a
        .pixels
        .iter()
        .zip(&b.pixels)
        .map(|(&x, &y)| f64::from(x) - f64::from(y))
        .collect();
    FloatTensor::from_real(a.shape(), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(c: usize, f: usize, h: usize, w: usize) -> Shape {
        Shape::new(c, f, h, w).unwrap()
    }

    #[test]
    fn projection_rounds_and_clips() {
        let s = shape(1, 1, 2, 2);
        let t = FloatTensor::from_real(s, vec![3.4, 300.0, -5.0, 3.5]).unwrap();
        let v = project_to_valid(&t);
        assert_eq!(v.pixels(), &[3, 255, 0, 4]);
    }

    #[test]
    fn projection_takes_complex_magnitude() {
        let s = shape(1, 1, 1, 1);
        let t = FloatTensor::from_complex(s, vec![Complex64::new(3.0, 4.0)]).unwrap();
        assert_eq!(project_to_valid(&t).pixels(), &[5]);
    }

    #[test]
    fn projection_is_idempotent_and_exact_on_lifted_videos() {
        let s = shape(2, 3, 4, 5);
        let pixels: Vec<u8> = (0..s.len()).map(|i| (i * 37 % 256) as u8).collect();
        let v = VideoTensor::new(s, pixels).unwrap();
        let once = project_to_valid(&v.to_float());
        assert_eq!(once, v);
        let twice = project_to_valid(&once.to_float());
        assert_eq!(twice, once);
    }

    #[test]
    fn pad_appends_zero_frames() {
        let s = shape(1, 3, 1, 2);
        let v = VideoTensor::new(s, vec![1, 2, 3, 4, 5, 6]).unwrap();
        let p = v.pad_frames(5).unwrap();
        assert_eq!(p.shape().frames, 5);
        assert_eq!(p.pixels(), &[1, 2, 3, 4, 5, 6, 0, 0, 0, 0]);
    }

    #[test]
    fn pad_to_same_length_is_identity() {
        let s = shape(1, 2, 1, 1);
        let v = VideoTensor::new(s, vec![9, 8]).unwrap();
        assert_eq!(v.pad_frames(2).unwrap(), v);
    }

    #[test]
    fn pad_single_pixel() {
        let v = VideoTensor::new(shape(1, 1, 1, 1), vec![7]).unwrap();
        assert_eq!(v.pad_frames(2).unwrap().pixels(), &[7, 0]);
    }

    #[test]
    fn pad_cannot_truncate() {
        let v = VideoTensor::zeros(shape(1, 3, 1, 1));
        assert!(matches!(
            v.pad_frames(2),
            Err(Error::PadWouldTruncate { target: 2, frames: 3 })
        ));
    }

    #[test]
    fn pad_is_per_channel() {
        let s = shape(2, 1, 1, 1);
        let v = VideoTensor::new(s, vec![10, 20]).unwrap();
        let p = v.pad_frames(2).unwrap();
        assert_eq!(p.pixels(), &[10, 0, 20, 0]);
    }

    #[test]
    fn downsample_uniform_stride() {
        let s = shape(1, 8, 1, 1);
        let v = VideoTensor::new(s, (0..8).collect()).unwrap();
        let d = v.downsample_frames(4).unwrap();
        assert_eq!(d.pixels(), &[0, 2, 4, 6]);
    }

    #[test]
    fn downsample_identity_and_errors() {
        let s = shape(1, 4, 1, 1);
        let v = VideoTensor::new(s, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(v.downsample_frames(4).unwrap(), v);
        assert!(v.downsample_frames(5).is_err());
        assert!(v.downsample_frames(0).is_err());
    }

    #[test]
    fn downsample_32_to_16_hits_even_indices() {
        // floor(j * 32 / 16) = 2j for all j in [16].
        let s = shape(1, 32, 1, 1);
        let v = VideoTensor::new(s, (0..32).collect()).unwrap();
        let d = v.downsample_frames(16).unwrap();
        let expected: Vec<u8> = (0..16).map(|j| (2 * j) as u8).collect();
        assert_eq!(d.pixels(), expected.as_slice());
    }

    #[test]
    fn pad_then_downsample_recovers_original() {
        let s = shape(1, 5, 2, 2);
        let pixels: Vec<u8> = (0..s.len()).map(|i| (i * 11 % 256) as u8).collect();
        let v = VideoTensor::new(s, pixels).unwrap();
        let rt = v.pad_frames(5).unwrap().downsample_frames(5).unwrap();
        assert_eq!(rt, v);
    }

    #[test]
    fn vten_round_trip_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.vten");
        let s = shape(2, 3, 4, 5);
        let pixels: Vec<u8> = (0..s.len()).map(|i| (i * 41 % 256) as u8).collect();
        let v = VideoTensor::new(s, pixels).unwrap();
        v.write_vten(&path).unwrap();
        let r = VideoTensor::read_vten(&path).unwrap();
        assert_eq!(r, v);

        v.write_vten(&path).unwrap();
        let bytes1 = std::fs::read(&path).unwrap();
        r.write_vten(&path).unwrap();
        let bytes2 = std::fs::read(&path).unwrap();
        assert_eq!(bytes1, bytes2);
    }

    #[test]
    fn vten_bad_magic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.vten");
        std::fs::write(&path, b"NOPE\x01\x00\x01\x00\x01\x00\x00\x00\x01\x00\x00\x00\x01\x00\x00\x00\x00").unwrap();
        assert!(matches!(VideoTensor::read_vten(&path), Err(Error::BadMagic)));
    }

    #[test]
    fn vten_truncated_payload() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("trunc.vten");
        // Header declares 1 channel, 2x2x2 = 8 payload bytes; supply 7.
        let mut buf = Vec::new();
        buf.extend_from_slice(b"VTEN");
        buf.extend_from_slice(&1u16.to_le_bytes());
        buf.extend_from_slice(&1u16.to_le_bytes());
        buf.extend_from_slice(&2u32.to_le_bytes());
        buf.extend_from_slice(&2u32.to_le_bytes());
        buf.extend_from_slice(&2u32.to_le_bytes());
        buf.extend_from_slice(&[0u8; 7]);
        std::fs::write(&path, buf).unwrap();
        assert!(matches!(
            VideoTensor::read_vten(&path),
            Err(Error::TruncatedPayload { expected: 8, found: 7 })
        ));
    }

    #[test]
    fn vten_dimension_overflow() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("huge.vten");
        let mut buf = Vec::new();
        buf.extend_from_slice(b"VTEN");
        buf.extend_from_slice(&1u16.to_le_bytes());
        buf.extend_from_slice(&u16::MAX.to_le_bytes());
        buf.extend_from_slice(&u32::MAX.to_le_bytes());
        buf.extend_from_slice(&u32::MAX.to_le_bytes());
        buf.extend_from_slice(&u32::MAX.to_le_bytes());
        std::fs::write(&path, buf).unwrap();
        assert!(matches!(
            VideoTensor::read_vten(&path),
            Err(Error::DimensionOverflow(_))
        ));
    }

    #[test]
    fn vten_unsupported_version() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v9.vten");
        let mut buf = Vec::new();
        buf.extend_from_slice(b"VTEN");
        buf.extend_from_slice(&9u16.to_le_bytes());
        buf.extend_from_slice(&1u16.to_le_bytes());
        buf.extend_from_slice(&1u32.to_le_bytes());
        buf.extend_from_slice(&1u32.to_le_bytes());
        buf.extend_from_slice(&1u32.to_le_bytes());
        buf.push(0);
        std::fs::write(&path, buf).unwrap();
        assert!(matches!(
            VideoTensor::read_vten(&path),
            Err(Error::UnsupportedVersion(9))
        ));
    }
}
