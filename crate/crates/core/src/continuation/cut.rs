//! Geometry of the cut family `γ_s` in slice coordinates.
//!
//! For `t ∈ [0, ½]`, `γ_s(t) = −1 + 2i + cos 2πt + i(1 − 2s) sin 2πt`: half of the
//! ellipse centred at `−1 + 2i` with semi-axes `1` and `|1 − 2s|`, upper for
//! `s < ½`, lower for `s > ½`, the chord `[−2, 0] + 2i` at `s = ½`.
//! For `t ∈ (½, 1)` it is the ray `2i − 1/(1 − t)`, i.e. `{x + 2i : x ≤ −2}`.

use crate::{Complex, Error, Result};
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

/// Points closer than this to the cut are refused.
pub const CUT_CLEARANCE: f64 = 1e-3;

const ELLIPSE_SAMPLES: usize = 256;
const GOLDEN_STEPS: usize = 60;

/// The image of one `γ_s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cut {
    s: f64,
    beta: f64,
}

impl Cut {
    pub fn new(s: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::ParameterOutOfRange { t: s });
        }
        Ok(Self {
            s,
            beta: 1.0 - 2.0 * s,
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// `γ_s(t)` for `t ∈ [0, 1)`.
    pub fn point(&self, t: f64) -> Complex {
        if t <= 0.5 {
            self.ellipse(2.0 * PI * t)
        } else {
            Complex::new(-1.0 / (1.0 - t), 2.0)
        }
    }

    fn ellipse(&self, theta: f64) -> Complex {
        let (s, c) = theta.sin_cos();
        Complex::new(-1.0 + c, 2.0 + self.beta * s)
    }

    fn ellipse_distance(&self, z: Complex) -> f64 {
        let d = |theta: f64| (self.ellipse(theta) - z).norm();
        let h = PI / ELLIPSE_SAMPLES as f64;
        let (mut best_k, mut best) = (0, f64::INFINITY);
        for k in 0..=ELLIPSE_SAMPLES {
            let v = d(k as f64 * h);
            if v < best {
                best = v;
                best_k = k;
            }
        }
        // golden-section refinement around the best sample
        let inv_phi = (5.0.sqrt() - 1.0) / 2.0;
        let mut a = (best_k as f64 - 1.0).max(0.0) * h;
        let mut b = ((best_k + 1) as f64 * h).min(PI);
        let mut x1 = b - inv_phi * (b - a);
        let mut x2 = a + inv_phi * (b - a);
        let (mut f1, mut f2) = (d(x1), d(x2));
        for _ in 0..GOLDEN_STEPS {
            if f1 < f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = d(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = d(x2);
            }
        }
        best.min(f1).min(f2)
    }

    fn ray_distance(z: Complex) -> f64 {
        if z.re <= -2.0 {
            (z.im - 2.0).abs()
        } else {
            (z - Complex::new(-2.0, 2.0)).norm()
        }
    }

    /// Euclidean distance from `z` to the cut image.
    pub fn distance(&self, z: Complex) -> f64 {
        self.ellipse_distance(z).min(Self::ray_distance(z))
    }

    /// Whether the closed segment `[p, q]` meets the cut image.
    pub fn segment_crosses(&self, p: Complex, q: Complex) -> bool {
        crosses_horizontal(p, q, f64::NEG_INFINITY, -2.0) || self.crosses_ellipse(p, q)
    }

    fn crosses_ellipse(&self, p: Complex, q: Complex) -> bool {
        if self.beta == 0.0 {
            return crosses_horizontal(p, q, -2.0, 0.0);
        }
        // unit circle coordinates X = x + 1, Y = (y − 2)/β; the cut is Y ≥ 0
        let (xp, yp) = (p.re + 1.0, (p.im - 2.0) / self.beta);
        let (dx, dy) = (q.re - p.re, (q.im - p.im) / self.beta);
        let a = dx * dx + dy * dy;
        let b = 2.0 * (xp * dx + yp * dy);
        let c = xp * xp + yp * yp - 1.0;
        if a == 0.0 {
            return c.abs() <= 1e-14 && yp >= 0.0;
        }
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return false;
        }
        let sq = disc.sqrt();
        [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)]
            .into_iter()
            .any(|u| (-1e-12..=1.0 + 1e-12).contains(&u) && yp + u * dy >= -1e-12)
    }
}

/// Whether `[p, q]` meets the horizontal piece `{x + 2i : lo ≤ x ≤ hi}`.
fn crosses_horizontal(p: Complex, q: Complex, lo: f64, hi: f64) -> bool {
    let (a, b) = (p.im - 2.0, q.im - 2.0);
    if a == 0.0 && b == 0.0 {
        let (x0, x1) = (p.re.min(q.re), p.re.max(q.re));
        return x1 >= lo && x0 <= hi;
    }
    if (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0) {
        return false;
    }
    let u = a / (a - b);
    let x = p.re + u * (q.re - p.re);
    x >= lo && x <= hi
}

/// Detour points at distance ≥ 3 from the convex hull of every cut in the family.
pub const DETOURS: [Complex; 2] = [Complex::new(-1.0, 6.0), Complex::new(-1.0, -2.0)];

/// A polyline from `from` to `to` avoiding the cut: straight, or through one detour point.
pub fn route(cut: &Cut, from: Complex, to: Complex) -> Result<alloc::vec::Vec<Complex>> {
    let clearance = cut.distance(to);
    if clearance <= CUT_CLEARANCE {
        return Err(Error::OnCut {
            x: to.re,
            y: to.im,
            clearance,
        });
    }
    if !cut.segment_crosses(from, to) {
        return Ok(alloc::vec![from, to]);
    }
    for via in DETOURS {
        if !cut.segment_crosses(from, via) && !cut.segment_crosses(via, to) {
            return Ok(alloc::vec![from, via, to]);
        }
    }
    Err(Error::NoRoute { x: to.re, y: to.im })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn distance_matches_closed_forms() {
        let upper = Cut::new(0.0).unwrap();
        // upper semicircle around −1 + 2i with radius 1
        assert!((upper.distance(c(-1.0, 4.0)) - 1.0).abs() < 1e-12);
        assert!((upper.distance(c(-1.0, 2.5)) - 0.5).abs() < 1e-12);
        assert!((upper.distance(c(-5.0, 3.0)) - 1.0).abs() < 1e-12);
        assert!(upper.distance(c(0.0, 2.0)) < 1e-12);
        assert!((upper.distance(c(-1.0, 1.0)) - 2.0.sqrt()).abs() < 1e-9);
        let chord = Cut::new(0.5).unwrap();
        assert!((chord.distance(c(-1.0, 2.3)) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn crossings() {
        let upper = Cut::new(0.0).unwrap();
        let lower = Cut::new(1.0).unwrap();
        let chord = Cut::new(0.5).unwrap();
        let inside = c(-1.0, 2.5);
        assert!(upper.segment_crosses(c(1.0, 2.0), inside));
        assert!(!lower.segment_crosses(c(1.0, 2.0), inside));
        assert!(upper.segment_crosses(c(-1.0, 6.0), inside));
        assert!(!upper.segment_crosses(c(-1.0, -2.0), inside));
        assert!(lower.segment_crosses(c(-1.0, -2.0), c(-1.0, 1.5)));
        assert!(chord.segment_crosses(c(-1.0, 1.0), c(-1.0, 3.0)));
        assert!(!chord.segment_crosses(c(1.0, 1.0), c(1.0, 3.0)));
        // the ray
        assert!(upper.segment_crosses(c(-3.0, 1.0), c(-3.0, 3.0)));
        assert!(!upper.segment_crosses(c(-1.5, 1.0), c(-1.5, 1.5)));
    }

    #[test]
    fn routes() {
        let upper = Cut::new(0.0).unwrap();
        let from = c(1.0, 2.0);
        assert_eq!(route(&upper, from, c(2.0, 5.0)).unwrap().len(), 2);
        assert_eq!(route(&upper, from, c(-1.0, 2.5)).unwrap()[1], DETOURS[1]);
        assert!(matches!(
            route(&upper, from, c(-3.0, 2.0)),
            Err(Error::OnCut { .. })
        ));
    }
}
