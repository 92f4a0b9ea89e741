use serde::{Deserialize, Serialize};

use crate::image::{Image, Rgb};
use crate::{Error, Result};

use super::to_u8;

/// Multipliers for the four enhancement stages. 1.0 disables a stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnhanceFactors {
    pub saturation: f64,
    pub contrast: f64,
    pub sharpness: f64,
    pub color: f64,
}

impl EnhanceFactors {
    pub const IDENTITY: EnhanceFactors = EnhanceFactors { saturation: 1.0, contrast: 1.0, sharpness: 1.0, color: 1.0 };

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl Default for EnhanceFactors {
    fn default() -> Self {
        Self::IDENTITY
    }
}

const CONTRAST_PIVOT: f64 = 128.0;

/// Applies color, contrast, sharpness and saturation, in that order.
///
/// Each stage rounds and clamps to 8 bits before the next one runs, and a
/// stage whose factor is exactly 1.0 is skipped, so the identity factors
/// return the input unchanged.
///
/// - color: moves each channel away from (or toward) the pixel's Rec.601
///   luma, `L + f (v - L)`.
/// - contrast: scales around the fixed pivot 128.
/// - sharpness: blends between a 3x3 smoothed copy (weights 1, centre 5,
///   normalised by 13) and the original, `blur + f (orig - blur)`; the
///   outermost ring of pixels is left untouched.
/// - saturation: scales HSV saturation, keeping hue and value; gray pixels
///   have zero saturation and never change.
pub fn enhance(img: &Image, f: &EnhanceFactors) -> Result<Image> {
    for v in [f.saturation, f.contrast, f.sharpness, f.color] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument("enhancement factors must be positive"));
        }
    }
    let mut out = img.clone();
    if f.color != 1.0 {
        out = out.map_pixels(|p| scale_around_luma(p, f.color));
    }
    if f.contrast != 1.0 {
        let k = f.contrast;
        out = out.map_pixels(|p| Rgb(p.0.map(|v| to_u8(CONTRAST_PIVOT + k * (f64::from(v) - CONTRAST_PIVOT)))));
    }
    if f.sharpness != 1.0 {
        out = sharpen(&out, f.sharpness);
    }
    if f.saturation != 1.0 {
        out = out.map_pixels(|p| scale_saturation(p, f.saturation));
    }
    Ok(out)
}

fn scale_around_luma(p: Rgb, k: f64) -> Rgb {
    let l = p.luma();
    Rgb(p.0.map(|v| to_u8(l + k * (f64::from(v) - l))))
}

fn scale_saturation(p: Rgb, k: f64) -> Rgb {
    let v = f64::from(p.0.iter().copied().max().unwrap_or(0));
    let min = f64::from(p.0.iter().copied().min().unwrap_or(0));
    if v == min {
        return p;
    }
    let s = (v - min) / v;
    let scale = (s * k).min(1.0) / s;
    Rgb(p.0.map(|c| to_u8(v - (v - f64::from(c)) * scale)))
}

fn sharpen(img: &Image, k: f64) -> Image {
    let (w, h) = img.dimensions();
    if w < 3 || h < 3 {
        return img.clone();
    }
    let mut out = img.clone();
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            let mut acc = [0.0f64; 3];
            for dy in 0..3 {
                for dx in 0..3 {
                    let weight = if dx == 1 && dy == 1 { 5.0 } else { 1.0 };
                    let p = img.get(x + dx - 1, y + dy - 1);
                    for (a, v) in acc.iter_mut().zip(p.0) {
                        *a += weight * f64::from(v);
                    }
                }
            }
            let orig = img.get(x, y);
            let mut c = [0u8; 3];
            for ch in 0..3 {
                let blur = acc[ch] / 13.0;
                c[ch] = to_u8(blur + k * (f64::from(orig.0[ch]) - blur));
            }
            out.set(x, y, Rgb(c));
        }
    }
    out
}
