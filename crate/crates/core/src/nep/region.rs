use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Children are split along one axis only when the aspect ratio exceeds this.
pub const THIN_STRIP_RATIO: f64 = 8.0;

/// Relative `|Im|` slack that counts a pole as lying on an interval.
pub const INTERVAL_SLACK: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    Rectangle,
    Interval,
}

/// Root bounds shared by a region and all of its descendants.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Frame {
    x0: f64,
    w: f64,
    y0: f64,
    h: f64,
}

/// A dyadic cell of the root frame: `[ix, ix + 1] / 2^lx` along each axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Cell {
    lx: u32,
    ix: u64,
    ly: u32,
    iy: u64,
}

/// Axis-aligned rectangle in the complex plane or a real interval, with a
/// sampling budget. Coordinates of descendants are computed on a dyadic
/// lattice so that shared boundary samples coincide bit for bit.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchRegion {
    kind: RegionKind,
    frame: Frame,
    cell: Cell,
    samples_per_side: usize,
}

impl SearchRegion {
    /// Rectangle with opposite corners `lo` and `hi` and `samples_per_side`
    /// equispaced samples on each side.
    pub fn rectangle(lo: Complex64, hi: Complex64, samples_per_side: usize) -> Result<Self> {
        let (x0, x1) = (lo.re.min(hi.re), lo.re.max(hi.re));
        let (y0, y1) = (lo.im.min(hi.im), lo.im.max(hi.im));
        if !(x1 > x0 && y1 > y0) || ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "rectangle needs positive width and height, got [{x0}, {x1}] x [{y0}, {y1}]"
            )));
        }
        if samples_per_side < 2 {
            return Err(Error::InvalidInput(
                "rectangle needs at least 2 samples per side".into(),
            ));
        }
        Ok(Self {
            kind: RegionKind::Rectangle,
            frame: Frame {
                x0,
                w: x1 - x0,
                y0,
                h: y1 - y0,
            },
            cell: Cell {
                lx: 0,
                ix: 0,
                ly: 0,
                iy: 0,
            },
            samples_per_side,
        })
    }

    /// Real interval `[a, b]` sampled at `samples` equispaced points.
    pub fn interval(a: f64, b: f64, samples: usize) -> Result<Self> {
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput(format!(
                "interval needs a < b, got [{a}, {b}]"
            )));
        }
        if samples < 8 {
            return Err(Error::InvalidInput(
                "interval needs at least 8 samples".into(),
            ));
        }
        Ok(Self {
            kind: RegionKind::Interval,
            frame: Frame {
                x0: a,
                w: b - a,
                y0: 0.0,
                h: 0.0,
            },
            cell: Cell {
                lx: 0,
                ix: 0,
                ly: 0,
                iy: 0,
            },
            samples_per_side: samples,
        })
    }

    pub fn kind(&self) -> RegionKind {
        self.kind
    }

    pub fn samples_per_side(&self) -> usize {
        self.samples_per_side
    }

    fn divisions(&self) -> u64 {
        match self.kind {
            RegionKind::Rectangle => self.samples_per_side as u64,
            RegionKind::Interval => self.samples_per_side as u64 - 1,
        }
    }

    fn x_at(&self, num: u64, level: u32) -> f64 {
        let den = (self.divisions() << level) as f64;
        self.frame.x0 + (self.frame.w * num as f64) / den
    }

    fn y_at(&self, num: u64, level: u32) -> f64 {
        let den = (self.divisions() << level) as f64;
        self.frame.y0 + (self.frame.h * num as f64) / den
    }

    /// `(re_lo, re_hi, im_lo, im_hi)`; intervals have `im_lo = im_hi = 0`.
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        let n = self.divisions();
        let c = self.cell;
        (
            self.x_at(c.ix * n, c.lx),
            self.x_at((c.ix + 1) * n, c.lx),
            self.y_at(c.iy * n, c.ly),
            self.y_at((c.iy + 1) * n, c.ly),
        )
    }

    pub fn width(&self) -> f64 {
        let (x0, x1, _, _) = self.bounds();
        x1 - x0
    }

    pub fn height(&self) -> f64 {
        let (_, _, y0, y1) = self.bounds();
        y1 - y0
    }

    pub fn center(&self) -> Complex64 {
        let (x0, x1, y0, y1) = self.bounds();
        Complex64::new(0.5 * (x0 + x1), 0.5 * (y0 + y1))
    }

    pub fn diameter(&self) -> f64 {
        self.width().hypot(self.height())
    }

    /// Allowed `|Im|` distance from the segment (intervals only; zero otherwise).
    pub fn slack_im(&self) -> f64 {
        match self.kind {
            RegionKind::Rectangle => 0.0,
            RegionKind::Interval => INTERVAL_SLACK * self.width(),
        }
    }

    /// Closed containment; intervals accept `|Im| <= slack_im`.
    pub fn contains(&self, z: Complex64) -> bool {
        self.contains_inflated(z, 0.0)
    }

    /// Containment in the region grown by `delta` along the real axis (and
    /// the imaginary axis for rectangles).
    pub fn contains_inflated(&self, z: Complex64, delta: f64) -> bool {
        let (x0, x1, y0, y1) = self.bounds();
        let re_ok = z.re >= x0 - delta && z.re <= x1 + delta;
        match self.kind {
            RegionKind::Rectangle => re_ok && z.im >= y0 - delta && z.im <= y1 + delta,
            RegionKind::Interval => re_ok && z.im.abs() <= self.slack_im(),
        }
    }

    /// Sample locations: each rectangle side counter-clockwise from the
    /// bottom-left corner, `N` points per side (corners once); or the
    /// interval's `N` equispaced points including both ends.
    pub fn boundary_points(&self) -> Vec<Complex64> {
        let n = self.divisions();
        let c = self.cell;
        match self.kind {
            RegionKind::Interval => (0..=n)
                .map(|j| Complex64::new(self.x_at(c.ix * n + j, c.lx), 0.0))
                .collect(),
            RegionKind::Rectangle => {
                let (xl, xr) = (c.ix * n, (c.ix + 1) * n);
                let (yb, yt) = (c.iy * n, (c.iy + 1) * n);
                let p = |xn: u64, yn: u64| Complex64::new(self.x_at(xn, c.lx), self.y_at(yn, c.ly));
                let mut pts = Vec::with_capacity(4 * n as usize);
                pts.extend((0..n).map(|j| p(xl + j, yb)));
                pts.extend((0..n).map(|j| p(xr, yb + j)));
                pts.extend((0..n).map(|j| p(xr - j, yt)));
                pts.extend((0..n).map(|j| p(xl, yt - j)));
                pts
            }
        }
    }

    /// Dyadic children: 2 for intervals and thin strips, 4 otherwise.
    /// Order: left to right, then bottom to top.
    pub fn children(&self) -> Vec<SearchRegion> {
        let (split_x, split_y) = match self.kind {
            RegionKind::Interval => (true, false),
            RegionKind::Rectangle => {
                let (w, h) = (self.width(), self.height());
                if w > THIN_STRIP_RATIO * h {
                    (true, false)
                } else if h > THIN_STRIP_RATIO * w {
                    (false, true)
                } else {
                    (true, true)
                }
            }
        };
        let xs: Vec<(u32, u64)> = if split_x {
            vec![
                (self.cell.lx + 1, 2 * self.cell.ix),
                (self.cell.lx + 1, 2 * self.cell.ix + 1),
            ]
        } else {
            vec![(self.cell.lx, self.cell.ix)]
        };
        let ys: Vec<(u32, u64)> = if split_y {
            vec![
                (self.cell.ly + 1, 2 * self.cell.iy),
                (self.cell.ly + 1, 2 * self.cell.iy + 1),
            ]
        } else {
            vec![(self.cell.ly, self.cell.iy)]
        };
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for &(ly, iy) in &ys {
            for &(lx, ix) in &xs {
                out.push(SearchRegion {
                    cell: Cell { lx, ix, ly, iy },
                    ..self.clone()
                });
            }
        }
        out
    }

    /// Box ten times the size of the region about its center.
    pub fn guard_box(&self) -> GuardBox {
        let c = self.center();
        let hw = 5.0 * self.width();
        let hh = match self.kind {
            RegionKind::Rectangle => 5.0 * self.height(),
            RegionKind::Interval => 10.0 * self.slack_im(),
        };
        GuardBox {
            re: (c.re - hw, c.re + hw),
            im: (c.im - hh, c.im + hh),
        }
    }
}

/// Axis-aligned box used to detect runaway refinement iterations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GuardBox {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

impl GuardBox {
    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re.0 && z.re <= self.re.1 && z.im >= self.im.0 && z.im <= self.im.1
    }
}
