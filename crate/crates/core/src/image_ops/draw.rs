use serde::{Deserialize, Serialize};

use crate::image::{Image, Rgb};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DashPattern {
    pub on: u32,
    pub off: u32,
}

impl DashPattern {
    #[inline]
    fn is_on(&self, distance: f64) -> bool {
        let period = f64::from(self.on + self.off);
        if period == 0.0 {
            return true;
        }
        let phase = distance - libm::floor(distance / period) * period;
        phase < f64::from(self.on)
    }
}

/// Pen used by the annotation routines. `dash: None` draws solid lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stroke {
    pub color: Rgb,
    pub thickness: u32,
    pub dash: Option<DashPattern>,
}

impl Stroke {
    pub const fn solid(color: Rgb, thickness: u32) -> Self {
        Self { color, thickness, dash: None }
    }

    pub const fn dashed(color: Rgb, thickness: u32, on: u32, off: u32) -> Self {
        Self { color, thickness, dash: Some(DashPattern { on, off }) }
    }

    /// Offsets `k` with `-t/2 <= k < t/2`, i.e. exactly `thickness` integers.
    fn band(&self) -> (i64, i64) {
        let t = i64::from(self.thickness.max(1));
        let lo = -(t / 2);
        (lo, lo + t - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridAxes {
    VerticalOnly,
    Both,
}

/// Draws a (possibly dashed) segment from `from` to `to` onto a copy of `img`.
///
/// A pixel centre is painted when its projection falls on the segment, its
/// signed perpendicular offset `d` satisfies `-t/2 <= d < t/2`, and the arc
/// length of its projection falls in an "on" interval of the dash pattern
/// (measured from `from`, which starts "on"). Parts outside the canvas are
/// clipped.
pub fn draw_dashed_line(img: &Image, from: (f64, f64), to: (f64, f64), stroke: &Stroke) -> Image {
    let mut out = img.clone();
    let (dx, dy) = (to.0 - from.0, to.1 - from.1);
    let len = libm::sqrt(dx * dx + dy * dy);
    if !len.is_finite() || len <= 0.0 {
        return out;
    }
    let (ux, uy) = (dx / len, dy / len);
    let (nx, ny) = (-uy, ux);
    let half = f64::from(stroke.thickness.max(1)) / 2.0;

    let (w, h) = (img.width() as f64, img.height() as f64);
    let x_lo = (from.0.min(to.0) - half - 1.0).max(0.0);
    let x_hi = (from.0.max(to.0) + half + 1.0).min(w - 1.0);
    let y_lo = (from.1.min(to.1) - half - 1.0).max(0.0);
    let y_hi = (from.1.max(to.1) + half + 1.0).min(h - 1.0);
    if x_lo > x_hi || y_lo > y_hi {
        return out;
    }
    for y in libm::ceil(y_lo) as usize..=libm::floor(y_hi) as usize {
        for x in libm::ceil(x_lo) as usize..=libm::floor(x_hi) as usize {
            let (px, py) = (x as f64 - from.0, y as f64 - from.1);
            let s = px * ux + py * uy;
            let d = px * nx + py * ny;
            if s < 0.0 || s > len || d < -half || d >= half {
                continue;
            }
            if stroke.dash.is_none_or(|p| p.is_on(s)) {
                out.set(x, y, stroke.color);
            }
        }
    }
    out
}

/// Paints a vertical line of the stroke's thickness centred on column `x`.
fn vertical_line(img: &mut Image, x: i64, stroke: &Stroke) {
    let (lo, hi) = stroke.band();
    for y in 0..img.height() {
        if stroke.dash.is_some_and(|p| !p.is_on(y as f64)) {
            continue;
        }
        for k in lo..=hi {
            img.put(x + k, y as i64, stroke.color);
        }
    }
}

fn horizontal_line(img: &mut Image, y: i64, stroke: &Stroke) {
    let (lo, hi) = stroke.band();
    for x in 0..img.width() {
        if stroke.dash.is_some_and(|p| !p.is_on(x as f64)) {
            continue;
        }
        for k in lo..=hi {
            img.put(x as i64, y + k, stroke.color);
        }
    }
}

/// Full-height lines centred at `x_i = round((i + 1) * width / (n + 1))`.
pub fn draw_vertical_reference_lines(img: &Image, n: usize, stroke: &Stroke) -> Result<Image> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one reference line"));
    }
    let mut out = img.clone();
    let w = img.width();
    for i in 0..n {
        // round half up of (i + 1) * w / (n + 1) in integers
        let x = (2 * (i + 1) * w + (n + 1)) / (2 * (n + 1));
        vertical_line(&mut out, x as i64, stroke);
    }
    Ok(out)
}

/// Grid lines at every positive multiple of `spacing` inside the canvas.
pub fn draw_grid(img: &Image, spacing: usize, stroke: &Stroke, axes: GridAxes) -> Result<Image> {
    if spacing < 4 {
        return Err(Error::InvalidArgument("grid spacing must be at least 4 pixels"));
    }
    let mut out = img.clone();
    for x in (spacing..img.width()).step_by(spacing) {
        vertical_line(&mut out, x as i64, stroke);
    }
    if axes == GridAxes::Both {
        for y in (spacing..img.height()).step_by(spacing) {
            horizontal_line(&mut out, y as i64, stroke);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use alloc::vec::Vec;

    use super::*;

    fn runs(row: impl Iterator<Item = bool>) -> Vec<(bool, usize)> {
        let mut out: Vec<(bool, usize)> = Vec::new();
        for v in row {
            match out.last_mut() {
                Some((last, n)) if *last == v => *n += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    #[test]
    fn horizontal_dash_runs() {
        let img = Image::filled(120, 5, Rgb::WHITE).unwrap();
        let out = draw_dashed_line(&img, (0.0, 2.0), (100.0, 2.0), &Stroke::dashed(Rgb::RED, 1, 12, 8));
        let r = runs((0..120).map(|x| out.get(x, 2) == Rgb::RED));
        // five full periods, then the single pixel at x = 100, then blank to the edge
        for i in 0..5 {
            assert_eq!(r[2 * i], (true, 12));
            assert_eq!(r[2 * i + 1], (false, 8));
        }
        assert_eq!(r[10], (true, 1));
        assert_eq!(r[11], (false, 19));
        assert!((0..120).all(|x| out.get(x, 0) == Rgb::WHITE && out.get(x, 4) == Rgb::WHITE));
    }

    #[test]
    fn zero_length_is_noop() {
        let img = Image::filled(10, 10, Rgb::WHITE).unwrap();
        let out = draw_dashed_line(&img, (3.0, 3.0), (3.0, 3.0), &Stroke::dashed(Rgb::RED, 3, 12, 8));
        assert_eq!(out, img);
    }

    #[test]
    fn thickness_cross_section() {
        let img = Image::filled(60, 40, Rgb::WHITE).unwrap();
        let out = draw_dashed_line(&img, (0.0, 20.0), (59.0, 20.0), &Stroke::solid(Rgb::BLUE, 3));
        for x in 0..60 {
            let painted: Vec<usize> = (0..40).filter(|&y| out.get(x, y) == Rgb::BLUE).collect();
            assert_eq!(painted, [19, 20, 21]);
        }
        let out = draw_dashed_line(&img, (30.0, -50.0), (30.0, 90.0), &Stroke::solid(Rgb::BLUE, 4));
        let painted: Vec<usize> = (0..60).filter(|&x| out.get(x, 10) == Rgb::BLUE).collect();
        assert_eq!(painted, [29, 30, 31, 32]);
    }

    #[test]
    fn clipped_endpoints() {
        let img = Image::filled(20, 20, Rgb::WHITE).unwrap();
        let out = draw_dashed_line(&img, (-20.0, -20.0), (40.0, 40.0), &Stroke::solid(Rgb::RED, 1));
        assert!((0..20).all(|i| out.get(i, i) == Rgb::RED));
    }

    #[test]
    fn reference_line_positions() {
        let img = Image::filled(1100, 20, Rgb::WHITE).unwrap();
        let out = draw_vertical_reference_lines(&img, 10, &Stroke::solid(Rgb::RED, 3)).unwrap();
        let red: Vec<usize> = (0..1100).filter(|&x| out.get(x, 7) == Rgb::RED).collect();
        let mut expected = Vec::new();
        for c in (100..=1000).step_by(100) {
            expected.extend([c - 1, c, c + 1]);
        }
        assert_eq!(red, expected);

        let img = Image::filled(100, 5, Rgb::WHITE).unwrap();
        let out = draw_vertical_reference_lines(&img, 1, &Stroke::solid(Rgb::RED, 1)).unwrap();
        let red: Vec<usize> = (0..100).filter(|&x| out.get(x, 0) == Rgb::RED).collect();
        assert_eq!(red, [50]);
    }

    #[test]
    fn grid_vertical_only_matches_reference_lines() {
        let img = Image::from_fn(1100, 30, |x, y| Rgb([(x % 251) as u8, y as u8, 3])).unwrap();
        let stroke = Stroke::solid(Rgb::RED, 3);
        let a = draw_grid(&img, 100, &stroke, GridAxes::VerticalOnly).unwrap();
        let b = draw_vertical_reference_lines(&img, 10, &stroke).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn grid_large_spacing_is_noop() {
        let img = Image::filled(50, 40, Rgb::WHITE).unwrap();
        let out = draw_grid(&img, 64, &Stroke::dashed(Rgb::RED, 3, 12, 8), GridAxes::Both).unwrap();
        assert_eq!(out, img);
        assert!(draw_grid(&img, 3, &Stroke::solid(Rgb::RED, 1), GridAxes::Both).is_err());
    }

    #[test]
    fn grid_both_axes_probe() {
        let img = Image::filled(100, 100, Rgb::WHITE).unwrap();
        let out = draw_grid(&img, 50, &Stroke::solid(Rgb::RED, 3), GridAxes::Both).unwrap();
        assert_eq!(out.get(50, 10), Rgb::RED);
        assert_eq!(out.get(10, 50), Rgb::RED);
        assert_eq!(out.get(10, 10), Rgb::WHITE);
        assert_eq!(out.get(52, 10), Rgb::WHITE);
        let dashed = draw_grid(&img, 50, &Stroke::dashed(Rgb::RED, 1, 12, 8), GridAxes::Both).unwrap();
        assert_eq!(dashed.get(50, 5), Rgb::RED);
        assert_eq!(dashed.get(50, 15), Rgb::WHITE);
        assert_eq!(dashed.get(15, 50), Rgb::WHITE);
    }
}
