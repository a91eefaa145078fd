//! Dense float image buffer shared by every module.

use crate::error::{Error, Result};

/// Row-major, top-to-bottom, channel-interleaved `f32` image.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageBuf {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<f32>,
}

impl ImageBuf {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<f32>) -> Result<Self> {
        if width == 0 || height == 0 || channels == 0 {
            return Err(Error::Dimension(format!(
                "empty image {width}x{height}x{channels}"
            )));
        }
        let expected = width
            .checked_mul(height)
            .and_then(|n| n.checked_mul(channels))
            .ok_or_else(|| Error::Dimension("image size overflows".into()))?;
        if data.len() != expected {
            return Err(Error::Dimension(format!(
                "buffer holds {} samples, {width}x{height}x{channels} needs {expected}",
                data.len()
            )));
        }
        Ok(ImageBuf {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, channels: usize, value: f32) -> Result<Self> {
        let n = width
            .checked_mul(height)
            .and_then(|n| n.checked_mul(channels))
            .ok_or_else(|| Error::Dimension("image size overflows".into()))?;
        Self::new(width, height, channels, vec![value; n])
    }

    pub fn zeros_like(other: &ImageBuf) -> Self {
        ImageBuf {
            data: vec![0.0; other.data.len()],
            ..*other
        }
    }

    /// Builds an image of the same shape from a per-sample function of `self`.
    pub fn map(&self, mut f: impl FnMut(f32) -> f32) -> Self {
        ImageBuf {
            data: self.data.iter().map(|&v| f(v)).collect(),
            ..*self
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.width, self.height, self.channels)
    }

    pub fn same_dims(&self, other: &ImageBuf) -> bool {
        self.dims() == other.dims()
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f32] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize, c: usize) -> usize {
        (y * self.width + x) * self.channels + c
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, c: usize) -> f32 {
        self.data[self.index(x, y, c)]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, c: usize, v: f32) {
        let i = self.index(x, y, c);
        self.data[i] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Extracts one channel as a single-channel image.
    pub fn channel(&self, c: usize) -> Result<ImageBuf> {
        if c >= self.channels {
            return Err(Error::Parameter(format!(
                "channel {c} out of range for {}-channel image",
                self.channels
            )));
        }
        let data = self
            .data
            .chunks_exact(self.channels)
            .map(|px| px[c])
            .collect();
        ImageBuf::new(self.width, self.height, 1, data)
    }

    pub(crate) fn zip_map(&self, other: &ImageBuf, f: impl Fn(f32, f32) -> f32) -> Result<Self> {
        if !self.same_dims(other) {
            return Err(Error::Dimension(format!(
                "{:?} vs {:?}",
                self.dims(),
                other.dims()
            )));
        }
        Ok(ImageBuf {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            ..*self
        })
    }
}
