use crate::image::{Image, Rgb};
use crate::{Error, Result};

use super::to_u8;

/// Copies the leftmost and rightmost `max(1, round(frac * width))` columns.
pub fn extract_edge_strips(img: &Image, frac: f64) -> Result<(Image, Image)> {
    if !(frac > 0.0 && frac < 0.5) {
        return Err(Error::InvalidArgument("strip fraction must lie in (0, 0.5)"));
    }
    let w = strip_width(img.width(), frac);
    let left = img.sub_image(0, 0, w, img.height())?;
    let right = img.sub_image(img.width() - w, 0, w, img.height())?;
    Ok((left, right))
}

pub(crate) fn strip_width(width: usize, frac: f64) -> usize {
    (libm::round(frac * width as f64) as usize).clamp(1, width)
}

/// Bilinear resample with pixel-center alignment.
pub fn resize(img: &Image, width: usize, height: usize) -> Result<Image> {
    if width == 0 || height == 0 {
        return Err(Error::EmptyImage { width, height });
    }
    if (width, height) == img.dimensions() {
        return Ok(img.clone());
    }
    let xs = sample_positions(img.width(), width);
    let ys = sample_positions(img.height(), height);
    Image::from_fn(width, height, |x, y| {
        let (x0, x1, tx) = xs[x];
        let (y0, y1, ty) = ys[y];
        let mut c = [0u8; 3];
        for (ch, out) in c.iter_mut().enumerate() {
            let p = |xx: usize, yy: usize| f64::from(img.get(xx, yy).0[ch]);
            let top = p(x0, y0) * (1.0 - tx) + p(x1, y0) * tx;
            let bottom = p(x0, y1) * (1.0 - tx) + p(x1, y1) * tx;
            *out = to_u8(top * (1.0 - ty) + bottom * ty);
        }
        Rgb(c)
    })
}

fn sample_positions(src: usize, dst: usize) -> alloc::vec::Vec<(usize, usize, f64)> {
    (0..dst)
        .map(|i| {
            let s = ((i as f64 + 0.5) * src as f64 / dst as f64 - 0.5).clamp(0.0, (src - 1) as f64);
            let i0 = libm::floor(s) as usize;
            let i1 = (i0 + 1).min(src - 1);
            (i0, i1, s - i0 as f64)
        })
        .collect()
}

/// Placement of the two panels produced by [`compose_side_by_side`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideBySideLayout {
    pub width: usize,
    pub height: usize,
    pub gutter: usize,
    pub panel_width: usize,
    pub panel_height: usize,
    /// Top-left corner of the left panel.
    pub left: (usize, usize),
    /// Top-left corner of the right panel.
    pub right: (usize, usize),
}

/// Layout for two panels of `target_width` columns; the panel height is the taller input height.
pub fn side_by_side_layout(height_a: usize, height_b: usize, target_width: usize) -> SideBySideLayout {
    let gutter = (target_width / 10).max(1);
    let panel_height = height_a.max(height_b);
    SideBySideLayout {
        width: 2 * target_width + 3 * gutter,
        height: panel_height + 2 * gutter,
        gutter,
        panel_width: target_width,
        panel_height,
        left: (gutter, gutter),
        right: (2 * gutter + target_width, gutter),
    }
}

/// Places `a` and `b` next to each other on a uniform gray canvas, each
/// resampled to `target_width` x the common panel height.
pub fn compose_side_by_side(a: &Image, b: &Image, target_width: usize, bg: u8) -> Result<Image> {
    if target_width == 0 {
        return Err(Error::InvalidArgument("target strip width must be positive"));
    }
    let layout = side_by_side_layout(a.height(), b.height(), target_width);
    let mut canvas = Image::filled(layout.width, layout.height, Rgb::gray(bg))?;
    canvas.blit(&resize(a, target_width, layout.panel_height)?, layout.left.0, layout.left.1);
    canvas.blit(&resize(b, target_width, layout.panel_height)?, layout.right.0, layout.right.1);
    Ok(canvas)
}

/// Centered sub-rectangle of `round(frac * dim)` pixels per axis (at least one).
pub fn center_crop(img: &Image, frac_w: f64, frac_h: f64) -> Result<Image> {
    if !(frac_w > 0.0 && frac_w <= 1.0 && frac_h > 0.0 && frac_h <= 1.0) {
        return Err(Error::InvalidArgument("crop fractions must lie in (0, 1]"));
    }
    let (w, h) = img.dimensions();
    let cw = (libm::round(frac_w * w as f64) as usize).clamp(1, w);
    let ch = (libm::round(frac_h * h as f64) as usize).clamp(1, h);
    img.sub_image((w - cw) / 2, (h - ch) / 2, cw, ch)
}

/// Stretches horizontally to `round(factor * width)` columns.
pub fn horizontal_stretch(img: &Image, factor: f64) -> Result<Image> {
    if factor.is_nan() || factor < 1.0 {
        return Err(Error::InvalidArgument("stretch factor must be >= 1"));
    }
    let w = libm::round(factor * img.width() as f64) as usize;
    resize(img, w, img.height())
}
