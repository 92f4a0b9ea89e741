//! Procedural illusion fixtures with known ground truth.
//!
//! Every fixture is an 800x600 image plus a question phrased so the keyword
//! classifier routes it to the matching preprocessing route, and a label
//! that holds by construction. Pixel `(x, y)` has its centre at the integer
//! coordinates `(x, y)`; all geometry in [`GroundTruth`] uses that frame.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::answer::Label;
use crate::classifier::{IllusionCategory, SubType};
use crate::image::{Image, Rgb};
use crate::{Error, Result};

pub const WIDTH: usize = 800;
pub const HEIGHT: usize = 600;

/// Ebbinghaus target fill; inside the orange threshold with >= 20 levels of margin.
pub const TARGET_ORANGE: Rgb = Rgb([230, 140, 40]);
/// Poggendorff visible segment; inside the red threshold with margin.
pub const SEGMENT_RED: Rgb = Rgb([230, 30, 30]);
const CONTEXT_BLUE: Rgb = Rgb([90, 110, 200]);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureKind {
    MullerLyer,
    Ebbinghaus,
    ColorBands,
    CafeWall,
    Poggendorff,
    ZollnerVertical,
    Kanizsa,
}

impl FixtureKind {
    pub const ALL: [FixtureKind; 7] = [
        Self::MullerLyer,
        Self::Ebbinghaus,
        Self::ColorBands,
        Self::CafeWall,
        Self::Poggendorff,
        Self::ZollnerVertical,
        Self::Kanizsa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::MullerLyer => "muller_lyer",
            Self::Ebbinghaus => "ebbinghaus",
            Self::ColorBands => "color_bands",
            Self::CafeWall => "cafe_wall",
            Self::Poggendorff => "poggendorff",
            Self::ZollnerVertical => "zollner_vertical",
            Self::Kanizsa => "kanizsa",
        }
    }

    pub fn question(self) -> &'static str {
        match self {
            Self::MullerLyer => "Are the two horizontal lines equal in length?",
            Self::Ebbinghaus => "Are the two orange circles the same size?",
            Self::ColorBands => "Do the left and right bands have the same color?",
            Self::CafeWall => "Are the horizontal mortar lines parallel to each other?",
            Self::Poggendorff => "Is the red line aligned with the black line on the other side of the bar?",
            Self::ZollnerVertical => "Are the vertical lines straight?",
            Self::Kanizsa => "Is there a real boundary between the left and right regions?",
        }
    }

    /// Route the question is expected to take.
    pub fn route(self) -> (IllusionCategory, SubType) {
        match self {
            Self::MullerLyer => (IllusionCategory::Length, SubType::LineComparison),
            Self::Ebbinghaus => (IllusionCategory::Size, SubType::OrangeCircles),
            Self::ColorBands => (IllusionCategory::Color, SubType::Bands),
            Self::CafeWall => (IllusionCategory::Parallelism, SubType::Default),
            Self::Poggendorff => (IllusionCategory::Alignment, SubType::Default),
            Self::ZollnerVertical => (IllusionCategory::Straightness, SubType::VerticalZollner),
            Self::Kanizsa => (IllusionCategory::Boundary, SubType::Default),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fins {
    Inward,
    Outward,
}

/// Geometry and colour knobs per kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixtureParams {
    /// Upper line `len_a`, lower line `len_b`; equal lengths label 1.
    MullerLyer {
        len_a: f64,
        len_b: f64,
        fins: Fins,
    },
    /// Target radii and the radii of the surrounding context circles.
    Ebbinghaus {
        r_left: f64,
        r_right: f64,
        context_left: f64,
        context_right: f64,
        center_y: f64,
    },
    ColorBands {
        left: Rgb,
        right: Rgb,
        gradient_left: u8,
        gradient_right: u8,
    },
    /// Mortar lines alternate between `+tilt_deg` and `-tilt_deg`.
    CafeWall {
        tilt_deg: f64,
    },
    /// Line `y = slope * (x - 400) + 300`; the black continuation is shifted by `offset_px`.
    Poggendorff {
        slope: f64,
        offset_px: f64,
    },
    /// Peak sideways deviation of each line; signs alternate line to line.
    ZollnerVertical {
        bow_px: f64,
    },
    Kanizsa {
        real_edge: bool,
        left: Rgb,
        right: Rgb,
    },
}

impl FixtureParams {
    pub fn kind(&self) -> FixtureKind {
        match self {
            Self::MullerLyer { .. } => FixtureKind::MullerLyer,
            Self::Ebbinghaus { .. } => FixtureKind::Ebbinghaus,
            Self::ColorBands { .. } => FixtureKind::ColorBands,
            Self::CafeWall { .. } => FixtureKind::CafeWall,
            Self::Poggendorff { .. } => FixtureKind::Poggendorff,
            Self::ZollnerVertical { .. } => FixtureKind::ZollnerVertical,
            Self::Kanizsa { .. } => FixtureKind::Kanizsa,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureSpec {
    pub params: FixtureParams,
    /// Drives cosmetic variation only; never the label.
    pub seed: u64,
    /// Supersample shape edges instead of hard point-sampled edges.
    #[serde(default)]
    pub antialias: bool,
}

/// Exact geometry behind a fixture, for oracle checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroundTruth {
    MullerLyer {
        len_a: f64,
        len_b: f64,
    },
    Ebbinghaus {
        left_center: (f64, f64),
        right_center: (f64, f64),
        r_left: f64,
        r_right: f64,
        target: Rgb,
    },
    ColorBands {
        left: Rgb,
        right: Rgb,
        band_width: usize,
    },
    CafeWall {
        tilt_deg: f64,
    },
    /// Red line `y = slope * x + intercept`; the bar spans `bar.0..=bar.1` in x.
    Poggendorff {
        slope: f64,
        intercept: f64,
        offset_px: f64,
        bar: (f64, f64),
    },
    ZollnerVertical {
        bow_px: f64,
        line_x: Vec<f64>,
    },
    Kanizsa {
        real_edge: bool,
        edge_x: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub image: Image,
    pub question: String,
    pub label: Label,
    pub truth: GroundTruth,
}

impl FixtureSpec {
    pub fn new(params: FixtureParams, seed: u64) -> Self {
        Self { params, seed, antialias: false }
    }

    /// Random parameters of the given kind whose ground truth is `label`.
    pub fn random(kind: FixtureKind, label: Label, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f1c7_u64);
        let yes = label == Label::Yes;
        let sign = |rng: &mut ChaCha8Rng| if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let params = match kind {
            FixtureKind::MullerLyer => {
                let len_a = libm::round(rng.random_range(260.0..400.0));
                let len_b = if yes {
                    len_a
                } else {
                    libm::round(len_a * (1.0 + sign(&mut rng) * rng.random_range(0.12..0.25)))
                };
                let fins = if rng.random_bool(0.5) { Fins::Inward } else { Fins::Outward };
                FixtureParams::MullerLyer { len_a, len_b, fins }
            }
            FixtureKind::Ebbinghaus => {
                let r_left = libm::round(rng.random_range(26.0..44.0));
                let r_right = if yes {
                    r_left
                } else {
                    let k = rng.random_range(1.12..1.3);
                    if rng.random_bool(0.5) {
                        libm::round(r_left * k)
                    } else {
                        libm::round(r_left / k)
                    }
                };
                let (big, small) = (rng.random_range(1.2..1.4), rng.random_range(0.3..0.45));
                let (cl, cr) = if rng.random_bool(0.5) { (big, small) } else { (small, big) };
                FixtureParams::Ebbinghaus {
                    r_left,
                    r_right,
                    context_left: libm::round(cl * r_left),
                    context_right: libm::round(cr * r_right),
                    center_y: libm::round(rng.random_range(270.0..330.0)),
                }
            }
            FixtureKind::ColorBands => {
                let left = Rgb([rng.random_range(60..200), rng.random_range(60..200), rng.random_range(60..200)]);
                let right = if yes {
                    left
                } else {
                    let mut c = left;
                    let ch = rng.random_range(0..3usize);
                    let delta: i16 = rng.random_range(25..50) * if rng.random_bool(0.5) { 1 } else { -1 };
                    c.0[ch] = (i16::from(c.0[ch]) + delta).clamp(0, 255) as u8;
                    c
                };
                let (g0, g1) = if rng.random_bool(0.5) { (210, 50) } else { (50, 210) };
                FixtureParams::ColorBands { left, right, gradient_left: g0, gradient_right: g1 }
            }
            FixtureKind::CafeWall => {
                let tilt_deg = if yes { 0.0 } else { sign(&mut rng) * rng.random_range(1.5..4.0) };
                FixtureParams::CafeWall { tilt_deg }
            }
            FixtureKind::Poggendorff => {
                let slope = -rng.random_range(0.3..0.7);
                let offset_px = if yes { 0.0 } else { libm::round(sign(&mut rng) * rng.random_range(12.0..30.0)) };
                FixtureParams::Poggendorff { slope, offset_px }
            }
            FixtureKind::ZollnerVertical => {
                let bow_px = if yes { 0.0 } else { libm::round(rng.random_range(6.0..14.0)) };
                FixtureParams::ZollnerVertical { bow_px }
            }
            FixtureKind::Kanizsa => {
                let base: [u8; 3] =
                    [rng.random_range(150..220), rng.random_range(150..220), rng.random_range(150..220)];
                let mut other = base;
                let ch = rng.random_range(0..3usize);
                other[ch] = other[ch].saturating_sub(rng.random_range(40..70));
                FixtureParams::Kanizsa { real_edge: yes, left: Rgb(base), right: Rgb(other) }
            }
        };
        Self::new(params, seed)
    }
}

/// Renders a fixture.
pub fn generate(spec: &FixtureSpec) -> Result<Fixture> {
    validate(&spec.params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut canvas = Canvas::new(spec.antialias)?;
    let kind = spec.params.kind();
    let (label, truth) = match spec.params {
        FixtureParams::MullerLyer { len_a, len_b, fins } => render_muller_lyer(&mut canvas, len_a, len_b, fins),
        FixtureParams::Ebbinghaus { r_left, r_right, context_left, context_right, center_y } => {
            let phase = rng.random_range(0.0..core::f64::consts::PI / 3.0);
            render_ebbinghaus(&mut canvas, r_left, r_right, context_left, context_right, center_y, phase)
        }
        FixtureParams::ColorBands { left, right, gradient_left, gradient_right } => {
            render_color_bands(&mut canvas, left, right, gradient_left, gradient_right)
        }
        FixtureParams::CafeWall { tilt_deg } => {
            let shift = rng.random_range(0.0..60.0);
            render_cafe_wall(&mut canvas, tilt_deg, shift)
        }
        FixtureParams::Poggendorff { slope, offset_px } => render_poggendorff(&mut canvas, slope, offset_px),
        FixtureParams::ZollnerVertical { bow_px } => {
            let hatch = rng.random_range(35.0..55.0);
            render_zollner(&mut canvas, bow_px, hatch)
        }
        FixtureParams::Kanizsa { real_edge, left, right } => render_kanizsa(&mut canvas, real_edge, left, right),
    };
    Ok(Fixture { image: canvas.image, question: kind.question().to_string(), label, truth })
}

fn validate(p: &FixtureParams) -> Result<()> {
    let bad = |msg: &str| Err(Error::FixtureParam(msg.to_string()));
    let within = |v: f64, lo: f64, hi: f64| v.is_finite() && v >= lo && v <= hi;
    match *p {
        FixtureParams::MullerLyer { len_a, len_b, .. } => {
            if !within(len_a, 40.0, 640.0) || !within(len_b, 40.0, 640.0) {
                return bad("muller-lyer lengths must lie in [40, 640]");
            }
        }
        FixtureParams::Ebbinghaus { r_left, r_right, context_left, context_right, center_y } => {
            if !within(r_left, 5.0, 60.0) || !within(r_right, 5.0, 60.0) {
                return bad("ebbinghaus radii must lie in [5, 60]");
            }
            if !within(context_left, 2.0, 90.0) || !within(context_right, 2.0, 90.0) {
                return bad("context radii must lie in [2, 90]");
            }
            for (r, c) in [(r_left, context_left), (r_right, context_right)] {
                let reach = r + CONTEXT_GAP + 2.0 * c;
                if reach >= 199.0 || center_y - reach < 0.0 || center_y + reach > (HEIGHT - 1) as f64 {
                    return bad("ebbinghaus context does not fit its half of the canvas");
                }
            }
        }
        FixtureParams::ColorBands { .. } | FixtureParams::Kanizsa { .. } => {}
        FixtureParams::CafeWall { tilt_deg } => {
            if !within(tilt_deg, -10.0, 10.0) {
                return bad("cafe wall tilt must lie in [-10, 10] degrees");
            }
        }
        FixtureParams::Poggendorff { slope, offset_px } => {
            if !within(slope, -0.7, 0.7) || !within(offset_px, -60.0, 60.0) {
                return bad("poggendorff slope must lie in [-0.7, 0.7] and offset in [-60, 60]");
            }
        }
        FixtureParams::ZollnerVertical { bow_px } => {
            if !within(bow_px, -40.0, 40.0) {
                return bad("zollner bow must lie in [-40, 40]");
            }
        }
    }
    Ok(())
}

/// Point-sampled or 4x4-supersampled painter over a white canvas.
struct Canvas {
    image: Image,
    antialias: bool,
}

const SUBSAMPLES: [f64; 4] = [-0.375, -0.125, 0.125, 0.375];

impl Canvas {
    fn new(antialias: bool) -> Result<Self> {
        Ok(Self { image: Image::filled(WIDTH, HEIGHT, Rgb::WHITE)?, antialias })
    }

    /// Paints every pixel in the clipped box `[x0, x1] x [y0, y1]` with the
    /// colour `shade` returns at its centre (or the mean over 16 sub-samples);
    /// `None` keeps the existing colour at that sample.
    fn shade(&mut self, (x0, y0, x1, y1): (f64, f64, f64, f64), shade: impl Fn(f64, f64) -> Option<Rgb>) {
        let xa = libm::floor(x0).max(0.0) as usize;
        let ya = libm::floor(y0).max(0.0) as usize;
        let xb = (libm::ceil(x1).max(0.0) as usize).min(WIDTH - 1);
        let yb = (libm::ceil(y1).max(0.0) as usize).min(HEIGHT - 1);
        for y in ya..=yb {
            for x in xa..=xb {
                let old = self.image.get(x, y);
                let (fx, fy) = (x as f64, y as f64);
                let c = if self.antialias {
                    let mut acc = [0u32; 3];
                    for dy in SUBSAMPLES {
                        for dx in SUBSAMPLES {
                            let s = shade(fx + dx, fy + dy).unwrap_or(old);
                            for (a, v) in acc.iter_mut().zip(s.0) {
                                *a += u32::from(v);
                            }
                        }
                    }
                    Rgb(acc.map(|a| ((a + 8) / 16) as u8))
                } else {
                    match shade(fx, fy) {
                        Some(c) => c,
                        None => continue,
                    }
                };
                self.image.set(x, y, c);
            }
        }
    }

    fn everywhere(&mut self, shade: impl Fn(f64, f64) -> Option<Rgb>) {
        self.shade((0.0, 0.0, (WIDTH - 1) as f64, (HEIGHT - 1) as f64), shade);
    }

    fn disc(&mut self, cx: f64, cy: f64, r: f64, color: Rgb) {
        self.shade((cx - r - 1.0, cy - r - 1.0, cx + r + 1.0, cy + r + 1.0), |x, y| {
            ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r).then_some(color)
        });
    }

    /// Segment of total width `width` with flat ends.
    fn segment(&mut self, a: (f64, f64), b: (f64, f64), width: f64, color: Rgb) {
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len = libm::sqrt(dx * dx + dy * dy);
        if len == 0.0 {
            return;
        }
        let (ux, uy) = (dx / len, dy / len);
        let h = width / 2.0;
        let bbox = (a.0.min(b.0) - h - 1.0, a.1.min(b.1) - h - 1.0, a.0.max(b.0) + h + 1.0, a.1.max(b.1) + h + 1.0);
        self.shade(bbox, |x, y| {
            let (px, py) = (x - a.0, y - a.1);
            let s = px * ux + py * uy;
            let d = px * -uy + py * ux;
            (s >= 0.0 && s <= len && d >= -h && d < h).then_some(color)
        });
    }
}

fn truth_label(equal: bool) -> Label {
    if equal {
        Label::Yes
    } else {
        Label::No
    }
}

fn render_muller_lyer(c: &mut Canvas, len_a: f64, len_b: f64, fins: Fins) -> (Label, GroundTruth) {
    let cx = 400.0;
    for (len, y) in [(len_a, 200.0), (len_b, 400.0)] {
        let (x0, x1) = (cx - len / 2.0, cx + len / 2.0);
        c.segment((x0, y), (x1, y), 4.0, Rgb::BLACK);
        // fins point away from the segment (outward) or back over it (inward)
        let reach = 40.0;
        let dir = match fins {
            Fins::Outward => -1.0,
            Fins::Inward => 1.0,
        };
        for (end, side) in [(x0, 1.0), (x1, -1.0)] {
            for vy in [-1.0, 1.0] {
                c.segment((end, y), (end + side * dir * reach * 0.7, y + vy * reach * 0.7), 4.0, Rgb::BLACK);
            }
        }
    }
    (truth_label(len_a == len_b), GroundTruth::MullerLyer { len_a, len_b })
}

const CONTEXT_GAP: f64 = 12.0;

fn render_ebbinghaus(
    c: &mut Canvas,
    r_left: f64,
    r_right: f64,
    context_left: f64,
    context_right: f64,
    cy: f64,
    phase: f64,
) -> (Label, GroundTruth) {
    let left_center = (200.0, cy);
    let right_center = ((WIDTH - 1) as f64 - 200.0, cy);
    for ((cx, cy), r, cr) in [(left_center, r_left, context_left), (right_center, r_right, context_right)] {
        let dist = r + CONTEXT_GAP + cr;
        // number of context circles that fit around the ring without overlap
        let n = ((core::f64::consts::TAU * dist) / (2.0 * cr + 6.0)).clamp(4.0, 12.0) as usize;
        for i in 0..n {
            let a = phase + core::f64::consts::TAU * i as f64 / n as f64;
            c.disc(cx + dist * libm::cos(a), cy + dist * libm::sin(a), cr, CONTEXT_BLUE);
        }
        c.disc(cx, cy, r, TARGET_ORANGE);
    }
    (
        truth_label(r_left == r_right),
        GroundTruth::Ebbinghaus { left_center, right_center, r_left, r_right, target: TARGET_ORANGE },
    )
}

fn render_color_bands(c: &mut Canvas, left: Rgb, right: Rgb, g0: u8, g1: u8) -> (Label, GroundTruth) {
    let band = 160.0;
    let right_start = WIDTH as f64 - band;
    c.everywhere(|x, _| {
        Some(if x < band {
            left
        } else if x >= right_start {
            right
        } else {
            let t = (x - band) / (right_start - band);
            Rgb::gray(libm::round(f64::from(g0) * (1.0 - t) + f64::from(g1) * t) as u8)
        })
    });
    (truth_label(left == right), GroundTruth::ColorBands { left, right, band_width: band as usize })
}

fn render_cafe_wall(c: &mut Canvas, tilt_deg: f64, shift: f64) -> (Label, GroundTruth) {
    const ROW: f64 = 60.0;
    const TILE: f64 = 60.0;
    const MORTAR: f64 = 4.0;
    let slope = libm::tan(tilt_deg.to_radians());
    let line_y = |k: usize, x: f64| {
        let s = if k.is_multiple_of(2) { slope } else { -slope };
        k as f64 * ROW + s * (x - 400.0)
    };
    let rows = HEIGHT / ROW as usize;
    c.everywhere(|x, y| {
        for k in 1..rows {
            if libm::fabs(y - line_y(k, x)) < MORTAR / 2.0 {
                return Some(Rgb::gray(128));
            }
        }
        let row = (1..rows).filter(|&k| y >= line_y(k, x)).count();
        // alternate rows shift by half a tile, the classic café-wall offset
        let offset = if row % 2 == 0 { shift } else { shift + TILE / 2.0 };
        let col = libm::floor((x + offset) / TILE) as i64;
        Some(if col.rem_euclid(2) == 0 { Rgb::BLACK } else { Rgb::WHITE })
    });
    (truth_label(tilt_deg == 0.0), GroundTruth::CafeWall { tilt_deg })
}

fn render_poggendorff(c: &mut Canvas, slope: f64, offset_px: f64) -> (Label, GroundTruth) {
    let bar = (350.0, 450.0);
    let line = |x: f64| slope * (x - 400.0) + 300.0;
    c.segment((60.0, line(60.0)), (bar.0 - 10.0, line(bar.0 - 10.0)), 4.0, SEGMENT_RED);
    c.segment((bar.1 + 10.0, line(bar.1 + 10.0) + offset_px), (740.0, line(740.0) + offset_px), 4.0, Rgb::BLACK);
    c.shade((bar.0, 0.0, bar.1, (HEIGHT - 1) as f64), |x, _| (x >= bar.0 && x <= bar.1).then_some(Rgb::gray(128)));
    let intercept = 300.0 - 400.0 * slope;
    (truth_label(offset_px == 0.0), GroundTruth::Poggendorff { slope, intercept, offset_px, bar })
}

fn render_zollner(c: &mut Canvas, bow_px: f64, hatch_deg: f64) -> (Label, GroundTruth) {
    let line_x: Vec<f64> = [160.0, 320.0, 480.0, 640.0].to_vec();
    let (top, bottom) = (60.0, 540.0);
    let mid = (top + bottom) / 2.0;
    let half = (bottom - top) / 2.0;
    let bow = |i: usize, y: f64| {
        let s = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
        let t = (y - mid) / half;
        s * bow_px * (1.0 - t * t)
    };
    for (i, &x0) in line_x.iter().enumerate() {
        c.shade((x0 - 50.0, top, x0 + 50.0, bottom), |x, y| {
            (y >= top && y <= bottom && libm::fabs(x - (x0 + bow(i, y))) < 2.0).then_some(Rgb::BLACK)
        });
        // short hatches, tilted alternately per line
        let a = hatch_deg.to_radians() * if i % 2 == 0 { 1.0 } else { -1.0 };
        let (hx, hy) = (22.0 * libm::cos(a), 22.0 * libm::sin(a));
        let mut y = top + 15.0;
        while y < bottom - 10.0 {
            let xc = x0 + bow(i, y);
            c.segment((xc - hx, y - hy), (xc + hx, y + hy), 3.0, Rgb::BLACK);
            y += 30.0;
        }
    }
    (truth_label(bow_px == 0.0), GroundTruth::ZollnerVertical { bow_px, line_x })
}

fn render_kanizsa(c: &mut Canvas, real_edge: bool, left: Rgb, right: Rgb) -> (Label, GroundTruth) {
    let edge_x = 400.0;
    let ramp = 150.0;
    c.everywhere(|x, _| {
        Some(if real_edge {
            if x < edge_x {
                left
            } else {
                right
            }
        } else {
            let t = ((x - (edge_x - ramp)) / (2.0 * ramp)).clamp(0.0, 1.0);
            Rgb([0, 1, 2].map(|i| libm::round(f64::from(left.0[i]) * (1.0 - t) + f64::from(right.0[i]) * t) as u8))
        })
    });
    if real_edge {
        c.segment((edge_x, 0.0), (edge_x, (HEIGHT - 1) as f64), 2.0, Rgb::gray(60));
    }
    // pac-man inducers at the corners of an illusory square, mouths facing inward
    let (sx0, sy0, sx1, sy1) = (250.0, 170.0, 550.0, 430.0);
    let r = 55.0;
    for (cx, cy) in [(sx0, sy0), (sx1, sy0), (sx0, sy1), (sx1, sy1)] {
        let (inx, iny) = (if cx < edge_x { 1.0 } else { -1.0 }, if cy < 300.0 { 1.0 } else { -1.0 });
        c.shade((cx - r - 1.0, cy - r - 1.0, cx + r + 1.0, cy + r + 1.0), |x, y| {
            let (dx, dy) = (x - cx, y - cy);
            let in_disc = dx * dx + dy * dy <= r * r;
            let in_mouth = dx * inx >= 0.0 && dy * iny >= 0.0;
            (in_disc && !in_mouth).then_some(Rgb::BLACK)
        });
    }
    (truth_label(real_edge), GroundTruth::Kanizsa { real_edge, edge_x })
}

/// One generated sample of a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteItem {
    pub id: String,
    pub spec: FixtureSpec,
    pub fixture: Fixture,
}

/// `counts[k]` fixtures of each kind with labels alternating yes/no (so
/// every kind is balanced, odd counts get the extra yes). The last item of
/// each kind with at least two items is antialiased.
pub fn generate_suite(counts: &[(FixtureKind, usize)], seed: u64) -> Result<Vec<SuiteItem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::new();
    for &(kind, n) in counts {
        for i in 0..n {
            let label = if i % 2 == 0 { Label::Yes } else { Label::No };
            let mut spec = FixtureSpec::random(kind, label, rng.next_u64());
            spec.antialias = n >= 2 && i == n - 1;
            let fixture = generate(&spec)?;
            debug_assert_eq!(fixture.label, label);
            items.push(SuiteItem { id: format!("{}_{:03}", kind.name(), i), spec, fixture });
        }
    }
    Ok(items)
}
