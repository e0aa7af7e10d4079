//! Two-disk configuration, circle inversion, fixed points and gap geometry.

use crate::error::{Error, Result};
use crate::vec2::Vec2;
use serde::{Deserialize, Serialize};

/// Quasi-static threshold on k * max{r1, r2, eps}.
pub const QUASI_STATIC_MAX: f64 = 0.1;
/// Minimum min{r1, r2} / eps for the blowup regime.
pub const BLOWUP_RATIO_MIN: f64 = 50.0;
/// k must exceed this multiple of sqrt(eps / min{r1, r2}).
pub const MITIGATION_FACTOR: f64 = 1.0;
/// Below eps = EPS_FLOOR * max{r1, r2} a conditioning warning is raised.
pub const EPS_FLOOR: f64 = 1e-6;

/// Disk index, 1 (upper) or 2 (lower).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Disk {
    One,
    Two,
}

impl Disk {
    pub const BOTH: [Disk; 2] = [Disk::One, Disk::Two];

    pub fn index(self) -> usize {
        match self {
            Disk::One => 0,
            Disk::Two => 1,
        }
    }

    pub fn other(self) -> Disk {
        match self {
            Disk::One => Disk::Two,
            Disk::Two => Disk::One,
        }
    }

    /// (-1)^{j+1}: +1 for disk 1, -1 for disk 2.
    pub fn sign(self) -> f64 {
        match self {
            Disk::One => 1.0,
            Disk::Two => -1.0,
        }
    }
}

/// Two disks of radii `r1`, `r2` separated by `2 eps` along the x2-axis,
/// with the gap midpoint at the origin and disk 1 on top.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPair {
    pub r1: f64,
    pub r2: f64,
    pub eps: f64,
}

/// Mutually inverse points (0, p1) in the gap side of disk 1 and (0, p2)
/// on the side of disk 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPoints {
    pub p1: f64,
    pub p2: f64,
    pub d: f64,
}

impl FixedPoints {
    pub fn point1(&self) -> Vec2 {
        Vec2::new(0.0, self.p1)
    }

    pub fn point2(&self) -> Vec2 {
        Vec2::new(0.0, self.p2)
    }
}

/// Distances |p_i - c_j|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPointDistances {
    pub p1_c1: f64,
    pub p2_c1: f64,
    pub p1_c2: f64,
    pub p2_c2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub quasi_static: bool,
    pub blowup_regime: bool,
    pub mitigation_ok: bool,
}

impl DiskPair {
    pub fn new(r1: f64, r2: f64, eps: f64) -> Result<Self> {
        for (name, v) in [("r1", r1), ("r2", r2), ("eps", eps)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(DiskPair { r1, r2, eps })
    }

    pub fn radius(&self, j: Disk) -> f64 {
        match j {
            Disk::One => self.r1,
            Disk::Two => self.r2,
        }
    }

    pub fn center(&self, j: Disk) -> Vec2 {
        match j {
            Disk::One => Vec2::new(0.0, self.r1 + self.eps),
            Disk::Two => Vec2::new(0.0, -self.r2 - self.eps),
        }
    }

    pub fn min_radius(&self) -> f64 {
        self.r1.min(self.r2)
    }

    pub fn max_radius(&self) -> f64 {
        self.r1.max(self.r2)
    }

    /// Largest of r1, r2, eps.
    pub fn scale(&self) -> f64 {
        self.max_radius().max(self.eps)
    }

    /// Same configuration with all lengths multiplied by `s`.
    pub fn scaled(&self, s: f64) -> DiskPair {
        DiskPair {
            r1: self.r1 * s,
            r2: self.r2 * s,
            eps: self.eps * s,
        }
    }

    /// True when eps is below the conditioning floor.
    pub fn below_eps_floor(&self) -> bool {
        self.eps < EPS_FLOOR * self.max_radius()
    }

    /// Whether x lies in the closed disk j.
    pub fn contains(&self, j: Disk, x: Vec2) -> bool {
        x.dist(self.center(j)) <= self.radius(j)
    }

    /// Inversion in circle j: c_j + r_j^2 (x - c_j) / |x - c_j|^2.
    pub fn reflect(&self, j: Disk, x: Vec2) -> Result<Vec2> {
        let c = self.center(j);
        let v = x - c;
        let n2 = v.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::CenterInversion(j.index() + 1));
        }
        let r = self.radius(j);
        Ok(c + v * (r * r / n2))
    }

    /// Closed-form fixed points, arranged without subtractive cancellation.
    pub fn fixed_points(&self) -> FixedPoints {
        let (r1, r2, e) = (self.r1, self.r2, self.eps);
        let d2 = r1 * r2 * (r1 + r2)
            + (r1 * r1 + r2 * r2 + 3.0 * r1 * r2) * e
            + 2.0 * (r1 + r2) * e * e
            + e * e * e;
        let d = d2.sqrt();
        let se = e.sqrt();
        let den = r1 + r2 + 2.0 * e;
        let p1 = se * (2.0 * d + se * (r1 - r2)) / den;
        let p2 = -se * (2.0 * d - se * (r1 - r2)) / den;
        FixedPoints { p1, p2, d }
    }

    pub fn fixed_point_distances(&self) -> FixedPointDistances {
        let fp = self.fixed_points();
        let (a1, a2) = (self.r1 + self.eps, self.r2 + self.eps);
        FixedPointDistances {
            p1_c1: a1 - fp.p1,
            p2_c1: a1 - fp.p2,
            p1_c2: fp.p1 + a2,
            p2_c2: fp.p2 + a2,
        }
    }

    /// Residual of the fixed-point quadratic at x.
    pub fn fixed_point_quadratic(&self, x: f64) -> f64 {
        let (r1, r2, e) = (self.r1, self.r2, self.eps);
        (r1 + r2 + 2.0 * e) * x * x + 2.0 * e * (r2 - r1) * x
            - e * (4.0 * r1 * r2 + 3.0 * r1 * e + 3.0 * r2 * e + 2.0 * e * e)
    }

    /// g_j(x1) = r_j - sqrt(r_j^2 - x1^2), the height of arc j above its tip.
    pub fn arc_height(&self, j: Disk, x1: f64) -> Result<f64> {
        let lim = self.min_radius();
        if !(x1.abs() < lim) {
            return Err(Error::OutOfGap { x1, limit: lim });
        }
        let r = self.radius(j);
        Ok(x1 * x1 / (r + (r * r - x1 * x1).sqrt()))
    }

    /// Derivative of `arc_height` in x1.
    pub fn arc_slope(&self, j: Disk, x1: f64) -> Result<f64> {
        let lim = self.min_radius();
        if !(x1.abs() < lim) {
            return Err(Error::OutOfGap { x1, limit: lim });
        }
        let r = self.radius(j);
        Ok(x1 / (r * r - x1 * x1).sqrt())
    }

    /// delta(x1) = 2 eps + g1(x1) + g2(x1).
    pub fn gap_width(&self, x1: f64) -> Result<f64> {
        Ok(2.0 * self.eps + self.arc_height(Disk::One, x1)? + self.arc_height(Disk::Two, x1)?)
    }

    /// delta'(x1).
    pub fn gap_width_slope(&self, x1: f64) -> Result<f64> {
        Ok(self.arc_slope(Disk::One, x1)? + self.arc_slope(Disk::Two, x1)?)
    }

    pub fn regime_classify(&self, k: f64) -> RegimeReport {
        let rmin = self.min_radius();
        RegimeReport {
            quasi_static: k * self.scale() <= QUASI_STATIC_MAX,
            blowup_regime: rmin / self.eps >= BLOWUP_RATIO_MIN,
            mitigation_ok: k >= MITIGATION_FACTOR * (self.eps / rmin).sqrt(),
        }
    }
}
