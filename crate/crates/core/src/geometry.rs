//! Receiver coverage shapes, sink-centred intersection areas and the
//! distance densities used to weight sender positions.
//!
//! The sink sits at the origin. A [`Coverage`] is either a disk of radius
//! `R` (horizontal links) or an ellipse with semi-minor axis `R` along `y`
//! and semi-major axis `alpha * R` along `x` (vertical links).

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Disk,
    Ellipse,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coverage {
    shape: Shape,
    radius: f64,
    alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl Coverage {
    pub fn disk(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::config("R", format!("radius must be positive, got {radius}")));
        }
        Ok(Coverage { shape: Shape::Disk, radius, alpha: 1.0 })
    }

    pub fn ellipse(radius: f64, alpha: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::config("R", format!("radius must be positive, got {radius}")));
        }
        if !(alpha >= 1.0 && alpha.is_finite()) {
            return Err(Error::config("alpha", format!("alpha must be >= 1, got {alpha}")));
        }
        Ok(Coverage { shape: Shape::Ellipse, radius, alpha })
    }

    /// Disk when `alpha == 1`, ellipse otherwise.
    pub fn from_alpha(radius: f64, alpha: f64) -> Result<Self> {
        if alpha == 1.0 {
            Self::disk(radius)
        } else {
            Self::ellipse(radius, alpha)
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Disk radius, or the ellipse's semi-minor axis.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn area(&self) -> f64 {
        PI * self.alpha * self.radius * self.radius
    }

    /// Largest sink distance inside the coverage (`alpha * R`).
    pub fn max_range(&self) -> f64 {
        self.alpha * self.radius
    }

    fn check_radius(&self, what: &'static str, r: f64) -> Result<()> {
        let hi = self.max_range();
        // Allow round-off at the outer edge.
        if r.is_nan() || r < 0.0 || r > hi * (1.0 + 1e-12) {
            return Err(Error::domain(what, r, 0.0, hi));
        }
        Ok(())
    }

    /// Area of the coverage lying within distance `r` of the sink.
    pub fn covered_area_within_radius(&self, r: f64) -> Result<f64> {
        self.check_radius("radius", r)?;
        Ok(self.area_within_unchecked(r.min(self.max_range())))
    }

    pub(crate) fn area_within_unchecked(&self, r: f64) -> f64 {
        let big_r = self.radius;
        if r <= big_r {
            return PI * r * r;
        }
        let (ellipse_angle, circle_angle) = self.crossing_angles(r);
        2.0 * self.alpha * big_r * big_r * ellipse_angle + 2.0 * r * r * circle_angle
    }

    /// For `R < r <= alpha R`, with `s = sqrt((r^2 - R^2) / (alpha^2 - 1))`:
    /// `(asin(s / R), acos(alpha s / r))`. Both are formed from sine and
    /// cosine factors that stay accurate as `alpha -> 1` and `r -> alpha R`.
    fn crossing_angles(&self, r: f64) -> (f64, f64) {
        let (a, u) = (self.alpha, r / self.radius);
        let denom = (a - 1.0) * (a + 1.0);
        let sin2 = ((u - 1.0) * (u + 1.0) / denom).max(0.0);
        let cos2 = ((a - u) * (a + u) / denom).max(0.0);
        let (sin, cos) = (sin2.sqrt(), cos2.sqrt());
        (sin.atan2(cos), cos.atan2(a * sin))
    }

    /// Area of the annulus `a <= |p| <= b` intersected with the coverage.
    pub fn annulus_area(&self, a: f64, b: f64) -> Result<f64> {
        self.check_radius("inner radius", a)?;
        self.check_radius("outer radius", b)?;
        if a > b {
            return Err(Error::domain("inner radius", a, 0.0, b));
        }
        Ok(self.annulus_area_unchecked(a, b))
    }

    pub(crate) fn annulus_area_unchecked(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let top = self.max_range();
        self.area_within_unchecked(b.min(top)) - self.area_within_unchecked(a.max(0.0))
    }

    /// Density of the sink distance of a point uniform over the coverage.
    pub fn radial_pdf(&self, l: f64) -> Result<f64> {
        self.check_radius("distance", l)?;
        Ok(self.radial_pdf_unchecked(l))
    }

    pub(crate) fn radial_pdf_unchecked(&self, l: f64) -> f64 {
        if l < 0.0 || l > self.max_range() {
            return 0.0;
        }
        let big_r = self.radius;
        // Derivative of the covered area: arc length of the circle of radius
        // l that lies inside the coverage.
        let arc = if l <= big_r {
            2.0 * PI * l
        } else {
            4.0 * l * self.crossing_angles(l).1
        };
        arc / self.area()
    }

    /// Link-distance density for this shape, with ellipse distances
    /// expressed in units of `R`.
    pub fn link_pdf(&self, l: f64) -> f64 {
        match self.shape {
            Shape::Disk => link_pdf_disk(l, self.radius),
            Shape::Ellipse => link_pdf_ellipse(l / self.radius, self.alpha).unwrap_or(0.0) / self.radius,
        }
    }

    pub fn sample_uniform_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let u: f64 = rng.random();
        let theta: f64 = rng.random::<f64>() * 2.0 * PI;
        let rho = u.sqrt();
        Point {
            x: self.alpha * self.radius * rho * theta.cos(),
            y: self.radius * rho * theta.sin(),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        let ax = self.alpha * self.radius;
        (p.x / ax).powi(2) + (p.y / self.radius).powi(2) <= 1.0
    }
}

/// Distance density between two points uniform in a disk of radius `radius`.
/// Zero outside `(0, 2R)`.
pub fn link_pdf_disk(l: f64, radius: f64) -> f64 {
    if !(l > 0.0 && l < 2.0 * radius) {
        return 0.0;
    }
    let h = l / (2.0 * radius);
    2.0 * l / (radius * radius) * ((2.0 / PI) * h.acos() - l / (PI * radius) * (1.0 - h * h).sqrt())
}

/// Link-distance density for elliptic coverage with major/minor ratio
/// `alpha`; `l` is dimensionless.
pub fn link_pdf_ellipse(l: f64, alpha: f64) -> Result<f64> {
    if l.is_nan() || l < 0.0 {
        return Err(Error::domain("link distance", l, 0.0, f64::INFINITY));
    }
    let a2 = alpha * alpha;
    let l2 = l * l;
    let p = 9.0 * l2 * (a2 + 1.0) / (8.0 * a2);
    let q = 9.0 * l2 * (a2 - 1.0) / (8.0 * a2);
    // exp(-p) * I0(q) == exp(q - p) * (exp(-q) I0(q)), which stays finite.
    Ok(9.0 * l / (2.0 * alpha) * (q - p).exp() * bessel_i0_scaled(q))
}

const I0_SERIES_LIMIT: f64 = 30.0;

/// Modified Bessel function of the first kind, order zero.
pub fn bessel_i0(x: f64) -> f64 {
    let x = x.abs();
    if x <= I0_SERIES_LIMIT {
        i0_series(x)
    } else {
        x.exp() * i0_asymptotic_scaled(x)
    }
}

/// `exp(-|x|) * I0(x)`.
pub fn bessel_i0_scaled(x: f64) -> f64 {
    let x = x.abs();
    if x <= I0_SERIES_LIMIT {
        i0_series(x) * (-x).exp()
    } else {
        i0_asymptotic_scaled(x)
    }
}

fn i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
        k += 1.0;
    }
    sum
}

// exp(-x) I0(x) ~ (2 pi x)^(-1/2) * sum_k ((2k-1)!!)^2 / (k! (8x)^k)
fn i0_asymptotic_scaled(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..40 {
        let kf = k as f64;
        let next = term * (2.0 * kf - 1.0).powi(2) / (kf * 8.0 * x);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}
