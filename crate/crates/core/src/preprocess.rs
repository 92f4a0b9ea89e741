//! Per-category image transformations that weaken the illusion-inducing
//! context before the image is shown to a model.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::classifier::{IllusionCategory, SubType};
use crate::image::{Image, Rgb};
use crate::image_ops::{
    self, center_crop, compose_side_by_side, draw_dashed_line, draw_grid, draw_vertical_reference_lines, enhance,
    extract_edge_strips, fit_line, grayscale, horizontal_stretch, invert, isolate_on_background, label_components,
    mirror_blend, threshold_mask, DashPattern, EnhanceFactors, GridAxes, LineFit, Stroke, ThresholdSpec,
};
use crate::{Error, Result};

/// Tunable constants for every route.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PreprocessParams {
    pub background_gray: u8,
    pub strip_fraction: f64,
    pub strip_width: usize,
    pub color_enhance: EnhanceFactors,
    pub square_crop_fraction: f64,
    pub orange: ThresholdSpec,
    pub dark: ThresholdSpec,
    pub red: ThresholdSpec,
    /// Normalised gray levels at or below this count as pentagon ink.
    pub pentagon_gray_max: u8,
    pub blend_alpha: f64,
    pub label_band_fraction: f64,
    pub stretch_factor: f64,
    pub grid_spacing: usize,
    pub annotation_thickness: u32,
    pub dash: DashPattern,
    pub annotation_red: Rgb,
    pub annotation_blue: Rgb,
    pub reference_lines: usize,
    pub boundary_enhance: EnhanceFactors,
    pub comprehensive_contrast: f64,
    pub inset_fraction: f64,
    pub inset_scale: f64,
}

impl Default for PreprocessParams {
    fn default() -> Self {
        Self {
            background_gray: 128,
            strip_fraction: 0.02,
            strip_width: 200,
            color_enhance: EnhanceFactors { saturation: 2.0, contrast: 1.5, ..EnhanceFactors::IDENTITY },
            square_crop_fraction: 0.3,
            orange: ThresholdSpec::ORANGE,
            dark: ThresholdSpec::DARK,
            red: ThresholdSpec::RED,
            pentagon_gray_max: 127,
            blend_alpha: 0.5,
            label_band_fraction: 0.2,
            stretch_factor: 3.0,
            grid_spacing: 50,
            annotation_thickness: 3,
            dash: DashPattern { on: 12, off: 8 },
            annotation_red: Rgb::RED,
            annotation_blue: Rgb::BLUE,
            reference_lines: 10,
            boundary_enhance: EnhanceFactors { contrast: 2.0, sharpness: 2.0, color: 1.5, ..EnhanceFactors::IDENTITY },
            comprehensive_contrast: 1.5,
            inset_fraction: 0.5,
            inset_scale: 2.0,
        }
    }
}

impl PreprocessParams {
    fn dashed(&self, color: Rgb) -> Stroke {
        Stroke { color, thickness: self.annotation_thickness, dash: Some(self.dash) }
    }
}

/// One applied transformation, in the order it ran.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    /// Prompt-only route: the image is passed through untouched.
    None,
    EdgeStrips {
        fraction: f64,
        width: usize,
    },
    SplitHalves,
    CenterCrop {
        fraction: f64,
    },
    SideBySide {
        panel_width: usize,
        background: u8,
    },
    Enhance {
        factors: EnhanceFactors,
    },
    Threshold {
        spec: ThresholdSpec,
        matched: usize,
    },
    NormalizedGrayscale {
        max_level: u8,
        matched: usize,
    },
    InteriorComponents {
        kept: usize,
        total: usize,
    },
    Isolate {
        background: u8,
    },
    InvertLeftHalf,
    MirrorBlend {
        alpha: f64,
    },
    BottomBand {
        fraction: f64,
    },
    HorizontalStretch {
        factor: f64,
    },
    Grid {
        spacing: usize,
        color: Rgb,
        dashed: bool,
        axes: GridAxes,
    },
    FitLine {
        fit: LineFit,
    },
    ExtensionLine {
        from: (f64, f64),
        to: (f64, f64),
    },
    ReferenceLines {
        count: usize,
        color: Rgb,
    },
    CenterInset {
        fraction: f64,
        scale: f64,
    },
    /// A step failed; the original image was passed through.
    Fallback {
        reason: FallbackReason,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FallbackReason {
    EmptyMask,
    NoInteriorShapes,
    DegenerateLine,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::None => write!(f, "none"),
            Step::EdgeStrips { fraction, width } => write!(f, "edge_strips fraction={fraction} width={width}"),
            Step::SplitHalves => write!(f, "split_halves"),
            Step::CenterCrop { fraction } => write!(f, "center_crop fraction={fraction}"),
            Step::SideBySide { panel_width, background } => {
                write!(f, "side_by_side panel_width={panel_width} background={background}")
            }
            Step::Enhance { factors: e } => write!(
                f,
                "enhance color={} contrast={} sharpness={} saturation={}",
                e.color, e.contrast, e.sharpness, e.saturation
            ),
            Step::Threshold { spec, matched } => write!(
                f,
                "threshold r={:?} g={:?} b={:?} intensity_max={:?} matched={matched}",
                spec.r, spec.g, spec.b, spec.intensity_max
            ),
            Step::NormalizedGrayscale { max_level, matched } => {
                write!(f, "normalized_grayscale max_level={max_level} matched={matched}")
            }
            Step::InteriorComponents { kept, total } => write!(f, "interior_components kept={kept} total={total}"),
            Step::Isolate { background } => write!(f, "isolate background={background}"),
            Step::InvertLeftHalf => write!(f, "invert_left_half"),
            Step::MirrorBlend { alpha } => write!(f, "mirror_blend alpha={alpha}"),
            Step::BottomBand { fraction } => write!(f, "bottom_band fraction={fraction}"),
            Step::HorizontalStretch { factor } => write!(f, "horizontal_stretch factor={factor}"),
            Step::Grid { spacing, color, dashed, axes } => {
                write!(f, "grid spacing={spacing} color={:?} dashed={dashed} axes={axes:?}", color.0)
            }
            Step::FitLine { fit } => write!(
                f,
                "fit_line orientation={:?} slope={:.6} intercept={:.3} pixels={}",
                fit.orientation, fit.slope, fit.intercept, fit.pixel_count
            ),
            Step::ExtensionLine { from, to } => {
                write!(f, "extension_line from=({:.1},{:.1}) to=({:.1},{:.1})", from.0, from.1, to.0, to.1)
            }
            Step::ReferenceLines { count, color } => write!(f, "reference_lines count={count} color={:?}", color.0),
            Step::CenterInset { fraction, scale } => write!(f, "center_inset fraction={fraction} scale={scale}"),
            Step::Fallback { reason } => write!(f, "fallback reason={reason:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreprocessOutput {
    pub image: Image,
    pub applied_steps: Vec<Step>,
    pub fallback_used: bool,
}

impl PreprocessOutput {
    fn done(image: Image, applied_steps: Vec<Step>) -> Self {
        Self { image, applied_steps, fallback_used: false }
    }

    fn fallback(original: &Image, mut applied_steps: Vec<Step>, reason: FallbackReason) -> Self {
        applied_steps.push(Step::Fallback { reason });
        Self { image: original.clone(), applied_steps, fallback_used: true }
    }
}

/// Runs the route for `(category, subtype)` with default parameters.
pub fn preprocess(category: IllusionCategory, subtype: SubType, img: &Image) -> Result<PreprocessOutput> {
    preprocess_with(&PreprocessParams::default(), category, subtype, img)
}

/// Runs the route for `(category, subtype)`.
///
/// Only an invalid category/sub-type pairing is an error. A threshold that
/// selects nothing or a line fit without enough pixels makes the route
/// return the original image with `fallback_used` set.
pub fn preprocess_with(
    p: &PreprocessParams,
    category: IllusionCategory,
    subtype: SubType,
    img: &Image,
) -> Result<PreprocessOutput> {
    use IllusionCategory as C;
    use SubType as S;
    if !subtype.belongs_to(category) {
        return Err(Error::InvalidRoute { category: category.name(), subtype: subtype.name() });
    }
    match (category, subtype) {
        (C::Color, S::Bands) => color_bands(p, img),
        (C::Color, S::SmallSquares) => color_small_squares(p, img),
        (C::Color, _) => {
            let out = enhance(img, &p.color_enhance)?;
            Ok(PreprocessOutput::done(out, vec![Step::Enhance { factors: p.color_enhance }]))
        }
        (C::Size, S::OrangeCircles) => size_threshold_blend(p, img, &p.orange),
        (C::Size, S::DarkCircles) => size_threshold_blend(p, img, &p.dark),
        (C::Size, S::Pentagons) => size_pentagons(p, img),
        (C::Size, _) => size_inverted_squares(p, img),
        (C::Length, S::MarkerDistance) => marker_distance(p, img),
        (C::Length, _) => Ok(PreprocessOutput::done(img.clone(), vec![Step::None])),
        (C::Straightness, S::RedOnCrosshatch) => red_on_crosshatch(p, img),
        (C::Straightness, S::VerticalZollner) => grid_overlay(p, img, GridAxes::VerticalOnly),
        (C::Straightness, _) => grid_overlay(p, img, GridAxes::Both),
        (C::Alignment, _) => extension_line(p, img),
        (C::Parallelism, _) => {
            let stroke = Stroke::solid(p.annotation_red, p.annotation_thickness);
            let out = draw_vertical_reference_lines(img, p.reference_lines, &stroke)?;
            Ok(PreprocessOutput::done(
                out,
                vec![Step::ReferenceLines { count: p.reference_lines, color: p.annotation_red }],
            ))
        }
        (C::Boundary, _) => {
            let out = enhance(img, &p.boundary_enhance)?;
            Ok(PreprocessOutput::done(out, vec![Step::Enhance { factors: p.boundary_enhance }]))
        }
        (C::Comprehensive, _) => comprehensive(p, img),
    }
}

fn color_bands(p: &PreprocessParams, img: &Image) -> Result<PreprocessOutput> {
    let (left, right) = extract_edge_strips(img, p.strip_fraction)?;
    let width = left.width();
    let composed = compose_side_by_side(&left, &right, p.strip_width, p.background_gray)?;
    let out = enhance(&composed, &p.color_enhance)?;
    Ok(PreprocessOutput::done(
        out,
        vec![
            Step::EdgeStrips { fraction: p.strip_fraction, width },
            Step::SideBySide { panel_width: p.strip_width, background: p.background_gray },
            Step::Enhance { factors: p.color_enhance },
        ],
    ))
}

fn split_halves(img: &Image) -> Result<(Image, Image)> {
    let (w, h) = img.dimensions();
    if w < 2 {
        return Err(Error::InvalidArgument("image too narrow to split"));
    }
    let half = w / 2;
    Ok((img.sub_image(0, 0, half, h)?, img.sub_image(w - half, 0, half, h)?))
}

fn color_small_squares(p: &PreprocessParams, img: &Image) -> Result<PreprocessOutput> {
    if img.width() < 2 {
        return Ok(PreprocessOutput::fallback(img, vec![Step::SplitHalves], FallbackReason::EmptyMask));
    }
    let (l, r) = split_halves(img)?;
    let f = p.square_crop_fraction;
    let (lc, rc) = (center_crop(&l, f, f)?, center_crop(&r, f, f)?);
    let out = compose_side_by_side(&lc, &rc, p.strip_width, p.background_gray)?;
    Ok(PreprocessOutput::done(
        out,
        vec![
            Step::SplitHalves,
            Step::CenterCrop { fraction: f },
            Step::SideBySide { panel_width: p.strip_width, background: p.background_gray },
        ],
    ))
}

fn size_threshold_blend(p: &PreprocessParams, img: &Image, spec: &ThresholdSpec) -> Result<PreprocessOutput> {
    let mask = threshold_mask(img, spec)?;
    let matched = mask.count();
    let mut steps = vec![Step::Threshold { spec: *spec, matched }];
    if matched == 0 || img.width() < 2 {
        return Ok(PreprocessOutput::fallback(img, steps, FallbackReason::EmptyMask));
    }
    let isolated = isolate_on_background(img, &mask, p.background_gray)?;
    let out = mirror_blend(&isolated, p.blend_alpha)?;
    steps.push(Step::Isolate { background: p.background_gray });
    steps.push(Step::MirrorBlend { alpha: p.blend_alpha });
    Ok(PreprocessOutput::done(out, steps))
}

/// Min-max stretched intensity, so the ink threshold does not depend on exposure.
fn normalized_gray_levels(img: &Image) -> Vec<u8> {
    let gray = grayscale(img);
    let levels: Vec<u8> = gray.pixels().map(|p| p.r()).collect();
    let lo = levels.iter().copied().min().unwrap_or(0);
    let hi = levels.iter().copied().max().unwrap_or(0);
    if hi == lo {
        return levels;
    }
    let span = f64::from(hi - lo);
    levels.into_iter().map(|v| libm::round(f64::from(v - lo) * 255.0 / span) as u8).collect()
}

fn size_pentagons(p: &PreprocessParams, img: &Image) -> Result<PreprocessOutput> {
    let (w, h) = img.dimensions();
    let levels = normalized_gray_levels(img);
    let ink = crate::image::BinaryMask::from_fn(w, h, |x, y| levels[y * w + x] <= p.pentagon_gray_max);
    let matched = ink.count();
    let mut steps = vec![Step::NormalizedGrayscale { max_level: p.pentagon_gray_max, matched }];
    let labeling = label_components(&ink);
    let interior: Vec<u32> =
        labeling.components.iter().filter(|c| !c.bbox.touches_border(w, h)).map(|c| c.label).collect();
    steps.push(Step::InteriorComponents { kept: interior.len(), total: labeling.components.len() });
    if interior.is_empty() || w < 2 {
        return Ok(PreprocessOutput::fallback(img, steps, FallbackReason::NoInteriorShapes));
    }
    let keep = labeling.mask_where(|l| interior.contains(&l));
    let isolated = isolate_on_background(img, &keep, p.background_gray)?;
    let out = mirror_blend(&isolated, p.blend_alpha)?;
    steps.push(Step::Isolate { background: p.background_gray });
    steps.push(Step::MirrorBlend { alpha: p.blend_alpha });
    Ok(PreprocessOutput::done(out, steps))
}

fn size_inverted_squares(p: &PreprocessParams, img: &Image) -> Result<PreprocessOutput> {
    if img.width() < 2 {
        return Ok(PreprocessOutput::fallback(img, vec![], FallbackReason::EmptyMask));
    }
    let half = img.width() / 2;
    let left = invert(&img.sub_image(0, 0, half, img.height())?);
    let mut flipped = img.clone();
    flipped.blit(&left, 0, 0);
    let out = mirror_blend(&flipped, p.blend_alpha)?;
    Ok(PreprocessOutput::done(out, vec![Step::InvertLeftHalf, Step::MirrorBlend { alpha: p.blend_alpha }]))
}

fn marker_distance(p: &PreprocessParams, img: &Image) -> Result<PreprocessOutput> {
    let (w, h) = img.dimensions();
    let band = (libm::round(p.label_band_fraction * h as f64) as usize).clamp(1, h);
    let cropped = img.sub_image(0, h - band, w, band)?;
    let out = horizontal_stretch(&cropped, p.stretch_factor)?;
    Ok(PreprocessOutput::done(
        out,
        vec![
            Step::BottomBand { fraction: p.label_band_fraction },
            Step::HorizontalStretch { factor: p.stretch_factor },
        ],
    ))
}

fn red_on_crosshatch(p: &PreprocessParams, img: &Image) -> Result<PreprocessOutput> {
    let mask = threshold_mask(img, &p.red)?;
    let matched = mask.count();
    let mut steps = vec![Step::Threshold { spec: p.red, matched }];
    if matched == 0 {
        return Ok(PreprocessOutput::fallback(img, steps, FallbackReason::EmptyMask));
    }
    let isolated = isolate_on_background(img, &mask, 255)?;
    let stroke = p.dashed(p.annotation_blue);
    let out = draw_grid(&isolated, p.grid_spacing, &stroke, GridAxes::Both)?;
    steps.push(Step::Isolate { background: 255 });
    steps.push(Step::Grid { spacing: p.grid_spacing, color: p.annotation_blue, dashed: true, axes: GridAxes::Both });
    Ok(PreprocessOutput::done(out, steps))
}

fn grid_overlay(p: &PreprocessParams, img: &Image, axes: GridAxes) -> Result<PreprocessOutput> {
    let out = draw_grid(img, p.grid_spacing, &p.dashed(p.annotation_red), axes)?;
    Ok(PreprocessOutput::done(
        out,
        vec![Step::Grid { spacing: p.grid_spacing, color: p.annotation_red, dashed: true, axes }],
    ))
}

fn extension_line(p: &PreprocessParams, img: &Image) -> Result<PreprocessOutput> {
    let mask = threshold_mask(img, &p.red)?;
    let matched = mask.count();
    let mut steps = vec![Step::Threshold { spec: p.red, matched }];
    let fit = match fit_line(&mask) {
        Ok(fit) => fit,
        Err(_) => {
            let reason = if matched == 0 { FallbackReason::EmptyMask } else { FallbackReason::DegenerateLine };
            return Ok(PreprocessOutput::fallback(img, steps, reason));
        }
    };
    let (from, to) = fit.canvas_span(img.width(), img.height());
    let out = draw_dashed_line(img, from, to, &p.dashed(p.annotation_blue));
    steps.push(Step::FitLine { fit });
    steps.push(Step::ExtensionLine { from, to });
    Ok(PreprocessOutput::done(out, steps))
}

fn comprehensive(p: &PreprocessParams, img: &Image) -> Result<PreprocessOutput> {
    let gridded = draw_grid(img, p.grid_spacing, &p.dashed(p.annotation_red), GridAxes::Both)?;
    let factors = EnhanceFactors { contrast: p.comprehensive_contrast, ..EnhanceFactors::IDENTITY };
    let enhanced = enhance(&gridded, &factors)?;
    let crop = center_crop(&enhanced, p.inset_fraction, p.inset_fraction)?;
    let iw = (libm::round(crop.width() as f64 * p.inset_scale) as usize).max(1);
    let ih = (libm::round(crop.height() as f64 * p.inset_scale) as usize).max(1);
    let inset = image_ops::resize(&crop, iw, ih)?;
    let (w, h) = enhanced.dimensions();
    let cw = w.max(iw);
    let mut canvas = Image::filled(cw, h + ih, Rgb::gray(p.background_gray))?;
    canvas.blit(&enhanced, (cw - w) / 2, 0);
    canvas.blit(&inset, (cw - iw) / 2, h);
    Ok(PreprocessOutput::done(
        canvas,
        vec![
            Step::Grid { spacing: p.grid_spacing, color: p.annotation_red, dashed: true, axes: GridAxes::Both },
            Step::Enhance { factors },
            Step::CenterInset { fraction: p.inset_fraction, scale: p.inset_scale },
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_routes() -> impl Iterator<Item = (IllusionCategory, SubType)> {
        IllusionCategory::ALL.into_iter().flat_map(|c| c.subtypes().iter().map(move |s| (c, *s)))
    }

    fn busy_image() -> Image {
        Image::from_fn(120, 90, |x, y| Rgb([(x * 2) as u8, (y * 2) as u8, ((x + y) % 256) as u8])).unwrap()
    }

    #[test]
    fn invalid_pair_rejected() {
        let img = busy_image();
        assert!(matches!(preprocess(IllusionCategory::Size, SubType::Bands, &img), Err(Error::InvalidRoute { .. })));
    }

    #[test]
    fn every_route_runs_and_records_steps() {
        let img = busy_image();
        for (c, s) in all_routes() {
            let out = preprocess(c, s, &img).unwrap();
            assert!(!out.applied_steps.is_empty(), "{c}/{s}");
            assert_eq!(out.fallback_used, matches!(out.applied_steps.last(), Some(Step::Fallback { .. })));
            // deterministic
            assert_eq!(out, preprocess(c, s, &img).unwrap());
        }
    }

    #[test]
    fn prompt_only_length_route() {
        let img = busy_image();
        let out = preprocess(IllusionCategory::Length, SubType::LineComparison, &img).unwrap();
        assert_eq!(out.image, img);
        assert_eq!(out.applied_steps, [Step::None]);
        assert!(!out.fallback_used);
    }

    #[test]
    fn orange_route_falls_back_on_blue_image() {
        let img = Image::filled(64, 32, Rgb::BLUE).unwrap();
        let out = preprocess(IllusionCategory::Size, SubType::OrangeCircles, &img).unwrap();
        assert!(out.fallback_used);
        assert_eq!(out.image, img);
    }

    #[test]
    fn alignment_route_falls_back_without_red() {
        let img = Image::filled(64, 32, Rgb::WHITE).unwrap();
        let out = preprocess(IllusionCategory::Alignment, SubType::Default, &img).unwrap();
        assert!(out.fallback_used);
        assert_eq!(out.applied_steps.last(), Some(&Step::Fallback { reason: FallbackReason::EmptyMask }));
    }

    #[test]
    fn overlay_routes_keep_dimensions() {
        let img = busy_image();
        for (c, s) in [
            (IllusionCategory::Straightness, SubType::VerticalZollner),
            (IllusionCategory::Straightness, SubType::SquareEdges),
            (IllusionCategory::Parallelism, SubType::Default),
            (IllusionCategory::Boundary, SubType::Default),
            (IllusionCategory::Color, SubType::Circles),
        ] {
            assert_eq!(preprocess(c, s, &img).unwrap().image.dimensions(), img.dimensions());
        }
        let comp = preprocess(IllusionCategory::Comprehensive, SubType::Default, &img).unwrap();
        assert_eq!(comp.image.dimensions(), (120, 180));
    }

    #[test]
    fn derived_dimensions() {
        let img = busy_image();
        let p = PreprocessParams::default();
        let lay = image_ops::side_by_side_layout(90, 90, p.strip_width);
        let bands = preprocess(IllusionCategory::Color, SubType::Bands, &img).unwrap();
        assert_eq!(bands.image.dimensions(), (lay.width, lay.height));
        let md = preprocess(IllusionCategory::Length, SubType::MarkerDistance, &img).unwrap();
        assert_eq!(md.image.dimensions(), (360, 18));
        let sq = preprocess(IllusionCategory::Size, SubType::WhiteOnBlackSquares, &img).unwrap();
        assert_eq!(sq.image.dimensions(), (60, 90));
    }

    #[test]
    fn inverted_squares_cancel_for_equal_targets() {
        // white square on black at left, black square on white at right, same size
        let img = Image::from_fn(100, 40, |x, y| {
            let in_left = (20..30).contains(&x) && (15..25).contains(&y);
            let in_right = (70..80).contains(&x) && (15..25).contains(&y);
            if x < 50 {
                if in_left {
                    Rgb::WHITE
                } else {
                    Rgb::BLACK
                }
            } else if in_right {
                Rgb::BLACK
            } else {
                Rgb::WHITE
            }
        })
        .unwrap();
        let out = preprocess(IllusionCategory::Size, SubType::WhiteOnBlackSquares, &img).unwrap();
        assert_eq!(out.image, img.sub_image(50, 0, 50, 40).unwrap());
    }

    #[test]
    fn pentagon_route_keeps_interior_shapes_only() {
        // dark frame touching the border plus two dark interior blobs
        let img = Image::from_fn(80, 40, |x, y| {
            let frame = x < 2 || y < 2 || x >= 78 || y >= 38;
            let blob = (10..20).contains(&x) && (10..20).contains(&y) || (60..70).contains(&x) && (10..20).contains(&y);
            if frame || blob {
                Rgb::gray(20)
            } else {
                Rgb::gray(230)
            }
        })
        .unwrap();
        let out = preprocess(IllusionCategory::Size, SubType::Pentagons, &img).unwrap();
        assert!(!out.fallback_used);
        assert!(out.applied_steps.contains(&Step::InteriorComponents { kept: 2, total: 3 }));
        // frame removed: right border column of output is background gray
        assert_eq!(out.image.get(39, 0), Rgb::gray(128));
        // blobs coincide after mirroring, so no half-tone pixels remain
        assert!(out.image.pixels().all(|p| p == Rgb::gray(128) || p == Rgb::gray(20)));
    }
}
