//! Raster primitives shared by the preprocessing routes.
//!
//! Every function takes its input by reference and returns a new value;
//! nothing here mutates a caller's image.

mod blend;
mod components;
mod draw;
mod enhance;
mod geometry;
mod line_fit;
mod threshold;

pub use blend::mirror_blend;
pub use components::{connected_components, label_components, BoundingBox, Component, Labeling};
pub use draw::{draw_dashed_line, draw_grid, draw_vertical_reference_lines, DashPattern, GridAxes, Stroke};
pub use enhance::{enhance, EnhanceFactors};
pub use geometry::{
    center_crop, compose_side_by_side, extract_edge_strips, horizontal_stretch, resize, side_by_side_layout,
    SideBySideLayout,
};
pub use line_fit::{fit_line, LineFit, Orientation};
pub use threshold::{grayscale, invert, isolate_on_background, threshold_mask, ThresholdSpec};

/// Rounds half away from zero and clamps into the 8-bit range.
#[inline]
pub(crate) fn to_u8(v: f64) -> u8 {
    let r = libm::round(v);
    if r <= 0.0 {
        0
    } else if r >= 255.0 {
        255
    } else {
        r as u8
    }
}
