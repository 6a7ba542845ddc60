use std::f64::consts::PI;

use crate::error::{Error, Result};

pub type Point = [f64; 2];

/// Smooth 2π-periodic closed curve `r(t)`, `t ∈ [0, 2π)`.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedCurve {
    Circle {
        center: Point,
        radius: f64,
    },
    /// `(cos t + 0.65 cos 2t − 0.65, 1.5 sin t)`.
    Kite,
    /// `((0.45 − 0.15 sin t) cos t + 0.04 cos 5t, 1.4 sin t − 0.2 cos 2t)`:
    /// a capsule, narrow at the nose (top) and flared at the tail.
    Rocket,
}

impl ClosedCurve {
    pub fn unit_circle() -> Self {
        ClosedCurve::Circle {
            center: [0.0, 0.0],
            radius: 1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClosedCurve::Circle { .. } => "circle",
            ClosedCurve::Kite => "kite",
            ClosedCurve::Rocket => "rocket",
        }
    }

    pub fn point(&self, t: f64) -> Point {
        let (s, c) = t.sin_cos();
        match self {
            ClosedCurve::Circle { center, radius } => {
                [center[0] + radius * c, center[1] + radius * s]
            }
            ClosedCurve::Kite => [c + 0.65 * (2.0 * t).cos() - 0.65, 1.5 * s],
            ClosedCurve::Rocket => [
                (0.45 - 0.15 * s) * c + 0.04 * (5.0 * t).cos(),
                1.4 * s - 0.2 * (2.0 * t).cos(),
            ],
        }
    }

    pub fn derivative(&self, t: f64) -> Point {
        let (s, c) = t.sin_cos();
        match self {
            ClosedCurve::Circle { radius, .. } => [-radius * s, radius * c],
            ClosedCurve::Kite => [-s - 1.3 * (2.0 * t).sin(), 1.5 * c],
            ClosedCurve::Rocket => [
                -0.45 * s - 0.15 * (2.0 * t).cos() - 0.2 * (5.0 * t).sin(),
                1.4 * c + 0.4 * (2.0 * t).sin(),
            ],
        }
    }

    pub fn speed(&self, t: f64) -> f64 {
        let d = self.derivative(t);
        d[0].hypot(d[1])
    }

    /// Arclength by the trapezoidal rule (spectrally accurate for periodic curves).
    pub fn length(&self) -> f64 {
        let n = 512;
        (0..n)
            .map(|j| self.speed(2.0 * PI * j as f64 / n as f64))
            .sum::<f64>()
            * 2.0
            * PI
            / n as f64
    }
}

/// Smooth open arc `r(t)`, `t ∈ [−1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum OpenArc {
    /// The part of a closed curve with parameter `center + half_width·t`.
    Window {
        base: ClosedCurve,
        center: f64,
        half_width: f64,
    },
    /// Straight segment from `a` (t = −1) to `b` (t = 1).
    Segment { a: Point, b: Point },
}

impl OpenArc {
    /// Unit circle with the gap of angular width `aperture` centred at angle 0.
    pub fn open_circle(aperture: f64) -> Result<Self> {
        if !(aperture > 0.0 && aperture < 2.0 * PI) {
            return Err(Error::InvalidInput(format!(
                "aperture must lie in (0, 2π), got {aperture}"
            )));
        }
        Ok(OpenArc::Window {
            base: ClosedCurve::unit_circle(),
            center: PI,
            half_width: PI - aperture / 2.0,
        })
    }

    /// Rocket with a gap of `fraction` of its parameter range, centred on the
    /// right flank (t = 0).
    pub fn open_rocket(fraction: f64) -> Result<Self> {
        if !(fraction > 0.0 && fraction < 1.0) {
            return Err(Error::InvalidInput(format!(
                "opening fraction must lie in (0, 1), got {fraction}"
            )));
        }
        Ok(OpenArc::Window {
            base: ClosedCurve::Rocket,
            center: PI,
            half_width: PI * (1.0 - fraction),
        })
    }

    pub fn slit(a: Point, b: Point) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidInput(
                "slit endpoints must be distinct".into(),
            ));
        }
        Ok(OpenArc::Segment { a, b })
    }

    pub fn name(&self) -> &'static str {
        match self {
            OpenArc::Window { base, .. } => match base {
                ClosedCurve::Circle { .. } => "open-circle",
                ClosedCurve::Kite => "open-kite",
                ClosedCurve::Rocket => "open-rocket",
            },
            OpenArc::Segment { .. } => "slit",
        }
    }

    pub fn point(&self, t: f64) -> Point {
        match self {
            OpenArc::Window {
                base,
                center,
                half_width,
            } => base.point(center + half_width * t),
            OpenArc::Segment { a, b } => [
                0.5 * (a[0] + b[0]) + 0.5 * t * (b[0] - a[0]),
                0.5 * (a[1] + b[1]) + 0.5 * t * (b[1] - a[1]),
            ],
        }
    }

    pub fn derivative(&self, t: f64) -> Point {
        match self {
            OpenArc::Window {
                base,
                center,
                half_width,
            } => {
                let d = base.derivative(center + half_width * t);
                [half_width * d[0], half_width * d[1]]
            }
            OpenArc::Segment { a, b } => [0.5 * (b[0] - a[0]), 0.5 * (b[1] - a[1])],
        }
    }

    pub fn speed(&self, t: f64) -> f64 {
        let d = self.derivative(t);
        d[0].hypot(d[1])
    }

    /// Arclength by composite Simpson's rule in `t`.
    pub fn length(&self) -> f64 {
        let n = 4096;
        let h = 2.0 / n as f64;
        let sum: f64 = (0..=n)
            .map(|j| {
                let w = if j == 0 || j == n {
                    1.0
                } else if j % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                w * self.speed(-1.0 + j as f64 * h)
            })
            .sum();
        sum * h / 3.0
    }
}

/// Any boundary supported by the Helmholtz backend.
#[derive(Clone, Debug, PartialEq)]
pub enum Geometry {
    Closed(ClosedCurve),
    Open(OpenArc),
}

impl Geometry {
    pub fn name(&self) -> &'static str {
        match self {
            Geometry::Closed(c) => c.name(),
            Geometry::Open(a) => a.name(),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Geometry::Closed(c) => c.length(),
            Geometry::Open(a) => a.length(),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Geometry::Closed(_))
    }
}

/// Default aperture of the open circle (π/8).
pub const DEFAULT_APERTURE: f64 = PI / 8.0;

/// Default opening fraction of the open rocket.
pub const DEFAULT_OPENING_FRACTION: f64 = 0.006;

/// The named geometries available from the command line.
pub fn builtin_geometries() -> Vec<(&'static str, Geometry)> {
    vec![
        ("circle", Geometry::Closed(ClosedCurve::unit_circle())),
        ("kite", Geometry::Closed(ClosedCurve::Kite)),
        ("rocket", Geometry::Closed(ClosedCurve::Rocket)),
        (
            "open-circle",
            Geometry::Open(OpenArc::open_circle(DEFAULT_APERTURE).expect("valid default aperture")),
        ),
        (
            "open-rocket",
            Geometry::Open(
                OpenArc::open_rocket(DEFAULT_OPENING_FRACTION).expect("valid default fraction"),
            ),
        ),
        (
            "slit",
            Geometry::Open(OpenArc::slit([-1.0, 0.0], [1.0, 0.0]).expect("distinct endpoints")),
        ),
    ]
}

/// Looks up a geometry by name; `aperture` overrides the open-circle gap and
/// `fraction` the open-rocket gap.
pub fn geometry_by_name(
    name: &str,
    aperture: Option<f64>,
    fraction: Option<f64>,
) -> Result<Geometry> {
    match name {
        "open-circle" => Ok(Geometry::Open(OpenArc::open_circle(
            aperture.unwrap_or(DEFAULT_APERTURE),
        )?)),
        "open-rocket" => Ok(Geometry::Open(OpenArc::open_rocket(
            fraction.unwrap_or(DEFAULT_OPENING_FRACTION),
        )?)),
        _ => builtin_geometries()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::InvalidInput(format!("unknown geometry '{name}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(point: impl Fn(f64) -> Point, deriv: impl Fn(f64) -> Point, t: f64) {
        let h = 1e-5;
        let (p, m) = (point(t + h), point(t - h));
        let d = deriv(t);
        for c in 0..2 {
            let fd = (p[c] - m[c]) / (2.0 * h);
            assert!((fd - d[c]).abs() < 1e-8, "t = {t}: {fd} vs {}", d[c]);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for curve in [
            ClosedCurve::unit_circle(),
            ClosedCurve::Kite,
            ClosedCurve::Rocket,
        ] {
            for t in [0.0, 0.7, PI, 4.1, 5.9] {
                fd_check(|t| curve.point(t), |t| curve.derivative(t), t);
            }
        }
        for arc in [
            OpenArc::open_circle(0.3).unwrap(),
            OpenArc::open_rocket(0.01).unwrap(),
            OpenArc::slit([0.0, 1.0], [2.0, -1.0]).unwrap(),
        ] {
            for t in [-0.99, -0.3, 0.0, 0.5, 0.99] {
                fd_check(|t| arc.point(t), |t| arc.derivative(t), t);
            }
        }
    }

    #[test]
    fn closed_curves_close_and_are_regular() {
        for curve in [
            ClosedCurve::unit_circle(),
            ClosedCurve::Kite,
            ClosedCurve::Rocket,
        ] {
            let (a, b) = (curve.point(0.0), curve.point(2.0 * PI));
            assert!((a[0] - b[0]).abs() < 1e-14 && (a[1] - b[1]).abs() < 1e-14);
            let min_speed = (0..1000)
                .map(|j| curve.speed(2.0 * PI * j as f64 / 1000.0))
                .fold(f64::INFINITY, f64::min);
            assert!(min_speed > 0.1, "{}: {min_speed}", curve.name());
        }
    }

    #[test]
    fn aperture_subtends_requested_angle() {
        let theta = PI / 8.0;
        let arc = OpenArc::open_circle(theta).unwrap();
        let (a, b) = (arc.point(-1.0), arc.point(1.0));
        let gap = (a[0] * b[0] + a[1] * b[1]).clamp(-1.0, 1.0).acos();
        assert!((gap - theta).abs() < 1e-14);
        assert!((arc.length() - (2.0 * PI - theta)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_apertures() {
        for bad in [0.0, -0.1, 2.0 * PI, 7.0, f64::NAN] {
            assert!(OpenArc::open_circle(bad).is_err());
        }
        assert!(OpenArc::open_rocket(1.0).is_err());
        assert!(OpenArc::slit([1.0, 1.0], [1.0, 1.0]).is_err());
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(
            geometry_by_name("kite", None, None).unwrap(),
            Geometry::Closed(ClosedCurve::Kite)
        );
        assert!(
            geometry_by_name("open-circle", Some(0.2), None)
                .unwrap()
                .name()
                == "open-circle"
        );
        assert!(geometry_by_name("teapot", None, None).is_err());
        assert!((ClosedCurve::unit_circle().length() - 2.0 * PI).abs() < 1e-12);
    }
}
