use crate::image::{Image, Rgb};
use crate::{Error, Result};

/// Mirrors the left half onto the right half and alpha-blends them.
///
/// The output is `floor(w / 2)` columns wide and covers the right half of
/// the input; for odd widths the middle column takes no part. Each channel
/// is `alpha * mirrored_left + (1 - alpha) * right`, rounded half up.
pub fn mirror_blend(img: &Image, alpha: f64) -> Result<Image> {
    if img.width() < 2 {
        return Err(Error::InvalidArgument("mirror blend needs an image at least 2 pixels wide"));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidArgument("blend alpha must lie in [0, 1]"));
    }
    let half = img.width() / 2;
    let offset = img.width() - half;
    Image::from_fn(half, img.height(), |x, y| {
        let left = img.get(half - 1 - x, y);
        let right = img.get(offset + x, y);
        Rgb(core::array::from_fn(|ch| {
            let v = alpha * f64::from(left.0[ch]) + (1.0 - alpha) * f64::from(right.0[ch]);
            libm::floor(v + 0.5).clamp(0.0, 255.0) as u8
        }))
    })
}
