use alloc::vec;
use alloc::vec::Vec;

use crate::image::BinaryMask;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundingBox {
    pub min_x: usize,
    pub min_y: usize,
    pub max_x: usize,
    pub max_y: usize,
}

impl BoundingBox {
    pub fn width(&self) -> usize {
        self.max_x - self.min_x + 1
    }

    pub fn height(&self) -> usize {
        self.max_y - self.min_y + 1
    }

    pub fn touches_border(&self, width: usize, height: usize) -> bool {
        self.min_x == 0 || self.min_y == 0 || self.max_x + 1 >= width || self.max_y + 1 >= height
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    /// 1-based, in raster order of each component's first pixel.
    pub label: u32,
    pub pixel_count: usize,
    pub bbox: BoundingBox,
    pub centroid: (f64, f64),
}

/// Label image (0 = background) plus component statistics sorted by
/// descending size; equal sizes keep label order.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub width: usize,
    pub height: usize,
    pub labels: Vec<u32>,
    pub components: Vec<Component>,
}

impl Labeling {
    pub fn label_at(&self, x: usize, y: usize) -> u32 {
        self.labels[y * self.width + x]
    }

    /// Mask of the pixels whose label satisfies `keep`.
    pub fn mask_where(&self, mut keep: impl FnMut(u32) -> bool) -> BinaryMask {
        BinaryMask::from_fn(self.width, self.height, |x, y| {
            let l = self.label_at(x, y);
            l != 0 && keep(l)
        })
    }
}

pub fn connected_components(mask: &BinaryMask) -> Vec<Component> {
    label_components(mask).components
}

/// Two-pass 4-connected labeling with a union-find over provisional labels.
pub fn label_components(mask: &BinaryMask) -> Labeling {
    let (w, h) = mask.dimensions();
    let mut labels = vec![0u32; w * h];
    let mut parent: Vec<u32> = vec![0];

    fn find(parent: &mut [u32], mut a: u32) -> u32 {
        while parent[a as usize] != a {
            parent[a as usize] = parent[parent[a as usize] as usize];
            a = parent[a as usize];
        }
        a
    }

    for y in 0..h {
        for x in 0..w {
            if !mask.get(x, y) {
                continue;
            }
            let up = if y > 0 { labels[(y - 1) * w + x] } else { 0 };
            let left = if x > 0 { labels[y * w + x - 1] } else { 0 };
            let l = match (up, left) {
                (0, 0) => {
                    let n = parent.len() as u32;
                    parent.push(n);
                    n
                }
                (a, 0) | (0, a) => a,
                (a, b) => {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    parent[hi as usize] = lo;
                    lo
                }
            };
            labels[y * w + x] = l;
        }
    }

    // Resolve roots and renumber densely in raster order of first appearance.
    let mut dense = vec![0u32; parent.len()];
    let mut next = 0u32;
    let mut stats: Vec<(usize, BoundingBox, f64, f64)> = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let l = labels[y * w + x];
            if l == 0 {
                continue;
            }
            let root = find(&mut parent, l) as usize;
            if dense[root] == 0 {
                next += 1;
                dense[root] = next;
                stats.push((0, BoundingBox { min_x: x, min_y: y, max_x: x, max_y: y }, 0.0, 0.0));
            }
            let d = dense[root];
            labels[y * w + x] = d;
            let s = &mut stats[(d - 1) as usize];
            s.0 += 1;
            s.1.min_x = s.1.min_x.min(x);
            s.1.max_x = s.1.max_x.max(x);
            s.1.max_y = y;
            s.2 += x as f64;
            s.3 += y as f64;
        }
    }

    let mut components: Vec<Component> = stats
        .into_iter()
        .enumerate()
        .map(|(i, (count, bbox, sx, sy))| Component {
            label: i as u32 + 1,
            pixel_count: count,
            bbox,
            centroid: (sx / count as f64, sy / count as f64),
        })
        .collect();
    components.sort_by_key(|c| core::cmp::Reverse(c.pixel_count));
    Labeling { width: w, height: h, labels, components }
}
