use serde::{Deserialize, Serialize};

use crate::image::BinaryMask;
use crate::{Error, Result};

/// Which coordinate is modelled as a function of the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// `y = slope * x + intercept`
    YofX,
    /// `x = slope * y + intercept`, used for near-vertical lines.
    XofY,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub orientation: Orientation,
    pub slope: f64,
    pub intercept: f64,
    pub pixel_count: usize,
}

impl LineFit {
    /// Slope as dy/dx; `None` for an exactly vertical line.
    pub fn dy_dx(&self) -> Option<f64> {
        match self.orientation {
            Orientation::YofX => Some(self.slope),
            Orientation::XofY if self.slope == 0.0 => None,
            Orientation::XofY => Some(1.0 / self.slope),
        }
    }

    /// Perpendicular distance from `(x, y)` to the fitted line.
    pub fn distance(&self, x: f64, y: f64) -> f64 {
        let (along, across) = match self.orientation {
            Orientation::YofX => (x, y),
            Orientation::XofY => (y, x),
        };
        libm::fabs(self.slope * along + self.intercept - across) / libm::sqrt(1.0 + self.slope * self.slope)
    }

    /// Endpoints where the line crosses the first and last row/column of a `width` x `height` canvas.
    pub fn canvas_span(&self, width: usize, height: usize) -> ((f64, f64), (f64, f64)) {
        match self.orientation {
            Orientation::YofX => {
                let x1 = (width - 1) as f64;
                ((0.0, self.intercept), (x1, self.slope * x1 + self.intercept))
            }
            Orientation::XofY => {
                let y1 = (height - 1) as f64;
                ((self.intercept, 0.0), (self.slope * y1 + self.intercept, y1))
            }
        }
    }
}

/// Ordinary least squares over the coordinates of every set pixel.
///
/// Pixel `(x, y)` contributes the point `(x, y)`. The dependent axis is the
/// one with the larger spread, so steep lines are fitted as `x(y)`.
pub fn fit_line(mask: &BinaryMask) -> Result<LineFit> {
    let mut n = 0usize;
    let (mut sx, mut sy) = (0.0f64, 0.0f64);
    for (x, y) in mask.iter_set() {
        n += 1;
        sx += x as f64;
        sy += y as f64;
    }
    if n < 2 {
        return Err(Error::DegenerateFit("fewer than two pixels"));
    }
    let (mx, my) = (sx / n as f64, sy / n as f64);
    let (mut sxx, mut syy, mut sxy) = (0.0f64, 0.0f64, 0.0f64);
    for (x, y) in mask.iter_set() {
        let (dx, dy) = (x as f64 - mx, y as f64 - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 && syy == 0.0 {
        return Err(Error::DegenerateFit("all pixels coincide"));
    }
    let fit = if sxx < syy {
        let slope = sxy / syy;
        LineFit { orientation: Orientation::XofY, slope, intercept: mx - slope * my, pixel_count: n }
    } else {
        let slope = sxy / sxx;
        LineFit { orientation: Orientation::YofX, slope, intercept: my - slope * mx, pixel_count: n }
    };
    Ok(fit)
}
