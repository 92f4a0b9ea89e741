use serde::{Deserialize, Serialize};

use crate::image::{BinaryMask, Image, Rgb};
use crate::{Error, Result};

/// Inclusive per-channel bounds plus an optional inclusive ceiling on the
/// rounded Rec.601 intensity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdSpec {
    pub r: (u8, u8),
    pub g: (u8, u8),
    pub b: (u8, u8),
    pub intensity_max: Option<u8>,
}

impl ThresholdSpec {
    /// R > 180, 80 <= G <= 200, B < 80.
    pub const ORANGE: ThresholdSpec = ThresholdSpec { r: (181, 255), g: (80, 200), b: (0, 79), intensity_max: None };
    /// Intensity < 100.
    pub const DARK: ThresholdSpec = ThresholdSpec { r: (0, 255), g: (0, 255), b: (0, 255), intensity_max: Some(99) };
    /// R > 150, G < 100, B < 100.
    pub const RED: ThresholdSpec = ThresholdSpec { r: (151, 255), g: (0, 99), b: (0, 99), intensity_max: None };

    pub fn new(r: (u8, u8), g: (u8, u8), b: (u8, u8), intensity_max: Option<u8>) -> Result<Self> {
        let spec = Self { r, g, b, intensity_max };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r.0 > self.r.1 || self.g.0 > self.g.1 || self.b.0 > self.b.1 {
            return Err(Error::InvalidThreshold("channel minimum exceeds maximum"));
        }
        Ok(())
    }

    #[inline]
    pub fn matches(&self, p: Rgb) -> bool {
        let within = |v: u8, (lo, hi): (u8, u8)| lo <= v && v <= hi;
        within(p.r(), self.r)
            && within(p.g(), self.g)
            && within(p.b(), self.b)
            && self.intensity_max.is_none_or(|m| p.intensity() <= m)
    }
}

pub fn threshold_mask(img: &Image, spec: &ThresholdSpec) -> Result<BinaryMask> {
    spec.validate()?;
    Ok(BinaryMask::from_fn(img.width(), img.height(), |x, y| spec.matches(img.get(x, y))))
}

/// Keeps masked pixels and paints everything else `(bg, bg, bg)`.
pub fn isolate_on_background(img: &Image, mask: &BinaryMask, bg: u8) -> Result<Image> {
    if img.dimensions() != mask.dimensions() {
        return Err(Error::DimensionMismatch { image: img.dimensions(), mask: mask.dimensions() });
    }
    let mut out = img.clone();
    for y in 0..img.height() {
        for x in 0..img.width() {
            if !mask.get(x, y) {
                out.set(x, y, Rgb::gray(bg));
            }
        }
    }
    Ok(out)
}

pub fn invert(img: &Image) -> Image {
    img.map_pixels(|p| Rgb(p.0.map(|v| 255 - v)))
}

/// Per-pixel rounded Rec.601 intensity replicated into all three channels.
pub fn grayscale(img: &Image) -> Image {
    img.map_pixels(|p| Rgb::gray(p.intensity()))
}
