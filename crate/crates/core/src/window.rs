//! Acceptance windows in internal space and regions in physical space.

use num::bigint::BigInt;
use num::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::{GoldenRat, Rat};

/// Closed axis-aligned box in physical space. One dimension for the
/// golden scheme; arbitrary for numeric schemes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Region {
    #[serde(with = "crate::golden::rat_pairs_str")]
    pub dims: Vec<(Rat, Rat)>,
}

impl Region {
    pub fn new(dims: Vec<(Rat, Rat)>) -> Result<Self> {
        for (lo, hi) in &dims {
            if lo > hi {
                return Err(Error::InvalidRegion(format!(
                    "lower bound {lo} exceeds upper bound {hi}"
                )));
            }
        }
        Ok(Region { dims })
    }

    /// 1-d region from float endpoints (each float is an exact rational).
    pub fn interval_f64(lo: f64, hi: f64) -> Result<Self> {
        let lo = Rat::from_float(lo)
            .ok_or_else(|| Error::InvalidRegion("non-finite region endpoint".into()))?;
        let hi = Rat::from_float(hi)
            .ok_or_else(|| Error::InvalidRegion("non-finite region endpoint".into()))?;
        Region::new(vec![(lo, hi)])
    }

    pub fn interval(lo: Rat, hi: Rat) -> Result<Self> {
        Region::new(vec![(lo, hi)])
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn contains_f64(&self, x: &[f64]) -> bool {
        x.len() == self.dims.len()
            && x.iter().zip(&self.dims).all(|(v, (lo, hi))| {
                let lo = lo.to_f64().unwrap_or(f64::NEG_INFINITY);
                let hi = hi.to_f64().unwrap_or(f64::INFINITY);
                *v >= lo && *v <= hi
            })
    }

    pub fn contains_exact(&self, x: &[GoldenRat]) -> bool {
        x.len() == self.dims.len()
            && x.iter().zip(&self.dims).all(|(v, (lo, hi))| {
                v >= &GoldenRat::from_rat(lo.clone()) && v <= &GoldenRat::from_rat(hi.clone())
            })
    }

    /// Region shrunk by `margin` on every side. Errors if that empties it.
    pub fn shrink(&self, margin: &Rat) -> Result<Region> {
        let dims = self
            .dims
            .iter()
            .map(|(lo, hi)| (lo + margin, hi - margin))
            .collect::<Vec<_>>();
        for (lo, hi) in &dims {
            if lo > hi {
                return Err(Error::InvalidRegion(format!(
                    "margin {margin} empties the region"
                )));
            }
        }
        Ok(Region { dims })
    }

    pub fn pad(&self, margin: &Rat) -> Region {
        Region {
            dims: self
                .dims
                .iter()
                .map(|(lo, hi)| (lo - margin, hi + margin))
                .collect(),
        }
    }

    /// True when `inner` sits inside `self` with at least `margin` slack
    /// on every side.
    pub fn covers_with_margin(&self, inner: &Region, margin: &Rat) -> bool {
        self.dims.len() == inner.dims.len()
            && self.dims.iter().zip(&inner.dims).all(|((lo, hi), (ilo, ihi))| {
                &(ilo - lo) >= margin && &(hi - ihi) >= margin
            })
    }

    pub fn widths_f64(&self) -> Vec<f64> {
        self.dims
            .iter()
            .map(|(lo, hi)| (hi - lo).to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    /// Centered cube `[-n, n]^d`.
    pub fn centered_cube(dim: usize, n: u64) -> Region {
        let n = Rat::from(BigInt::from(n));
        Region {
            dims: (0..dim).map(|_| (-n.clone(), n.clone())).collect(),
        }
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .dims
            .iter()
            .map(|(lo, hi)| format!("[{}, {}]", lo.to_f64().unwrap_or(f64::NAN), hi.to_f64().unwrap_or(f64::NAN)))
            .collect();
        parts.join(" x ")
    }
}

/// Acceptance window in internal space.
///
/// Intervals are half-open `[lo, hi)` with exact golden-field endpoints
/// (the golden scheme has a one-dimensional internal space). Boxes are
/// products of half-open rational intervals and balls are closed
/// Euclidean balls; both serve numeric schemes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Window {
    Interval {
        lo: GoldenRat,
        hi: GoldenRat,
    },
    Box {
        #[serde(with = "crate::golden::rat_pairs_str")]
        dims: Vec<(Rat, Rat)>,
    },
    Ball {
        #[serde(with = "crate::golden::rat_vec_str")]
        center: Vec<Rat>,
        #[serde(with = "crate::golden::rat_str")]
        radius: Rat,
    },
}

impl Window {
    pub fn interval(lo: GoldenRat, hi: GoldenRat) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow(format!(
                "interval lower endpoint {lo} exceeds upper endpoint {hi}"
            )));
        }
        Ok(Window::Interval { lo, hi })
    }

    /// The standard Fibonacci window `[-1, tau - 1)`.
    pub fn fibonacci() -> Self {
        Window::Interval {
            lo: GoldenRat::from_int(-1),
            hi: &GoldenRat::tau() - &GoldenRat::from_int(1),
        }
    }

    pub fn internal_dim(&self) -> usize {
        match self {
            Window::Interval { .. } => 1,
            Window::Box { dims } => dims.len(),
            Window::Ball { center, .. } => center.len(),
        }
    }

    /// True when the window has nonempty interior.
    pub fn has_interior(&self) -> bool {
        match self {
            Window::Interval { lo, hi } => lo < hi,
            Window::Box { dims } => dims.iter().all(|(lo, hi)| lo < hi),
            Window::Ball { radius, .. } => radius.is_positive(),
        }
    }

    /// Exact membership of a 1-d internal value (interval windows).
    pub fn contains_golden(&self, v: &GoldenRat) -> Result<bool> {
        match self {
            Window::Interval { lo, hi } => Ok(v >= lo && v < hi),
            Window::Box { dims } if dims.len() == 1 => {
                if !v.is_rational() {
                    // Irrational internal value against a rational box is
                    // still exactly decidable through golden ordering.
                    let lo = GoldenRat::from_rat(dims[0].0.clone());
                    let hi = GoldenRat::from_rat(dims[0].1.clone());
                    return Ok(*v >= lo && *v < hi);
                }
                let x = v.coeff_a();
                Ok(x >= &dims[0].0 && x < &dims[0].1)
            }
            Window::Ball { center, radius } if center.len() == 1 => {
                let c = GoldenRat::from_rat(center[0].clone());
                let r = GoldenRat::from_rat(radius.clone());
                let d = (v - &c).abs();
                Ok(d <= r)
            }
            _ => Err(Error::DimensionMismatch(
                "1-d internal value against a multi-dimensional window".into(),
            )),
        }
    }

    /// Exact membership of a rational internal vector (numeric schemes).
    pub fn contains_rat_vec(&self, v: &[Rat]) -> Result<bool> {
        match self {
            Window::Interval { lo, hi } => {
                if v.len() != 1 {
                    return Err(Error::DimensionMismatch("expected 1-d internal value".into()));
                }
                let x = GoldenRat::from_rat(v[0].clone());
                Ok(&x >= lo && &x < hi)
            }
            Window::Box { dims } => {
                if v.len() != dims.len() {
                    return Err(Error::DimensionMismatch("box dimension mismatch".into()));
                }
                Ok(v.iter().zip(dims).all(|(x, (lo, hi))| x >= lo && x < hi))
            }
            Window::Ball { center, radius } => {
                if v.len() != center.len() {
                    return Err(Error::DimensionMismatch("ball dimension mismatch".into()));
                }
                let d2: Rat = v
                    .iter()
                    .zip(center)
                    .map(|(x, c)| {
                        let d = x - c;
                        &d * &d
                    })
                    .sum();
                Ok(d2 <= radius * radius)
            }
        }
    }

    /// Distance from an internal value to the window boundary, measured
    /// inward; zero or negative when the value is not interior.
    pub fn interior_distance(&self, v: &GoldenRat) -> Result<GoldenRat> {
        match self {
            Window::Interval { lo, hi } => {
                let d1 = v - lo;
                let d2 = hi - v;
                Ok(if d1 < d2 { d1 } else { d2 })
            }
            Window::Box { dims } if dims.len() == 1 => {
                let lo = GoldenRat::from_rat(dims[0].0.clone());
                let hi = GoldenRat::from_rat(dims[0].1.clone());
                let d1 = v - &lo;
                let d2 = &hi - v;
                Ok(if d1 < d2 { d1 } else { d2 })
            }
            Window::Ball { center, radius } if center.len() == 1 => {
                let c = GoldenRat::from_rat(center[0].clone());
                let r = GoldenRat::from_rat(radius.clone());
                let d = (v - &c).abs();
                Ok(&r - &d)
            }
            _ => Err(Error::DimensionMismatch(
                "interior distance needs a 1-d internal value here".into(),
            )),
        }
    }

    /// Lebesgue measure; exact for intervals and boxes, float for balls.
    pub fn measure_f64(&self) -> f64 {
        match self {
            Window::Interval { lo, hi } => (hi - lo).to_f64().max(0.0),
            Window::Box { dims } => dims
                .iter()
                .map(|(lo, hi)| (hi - lo).to_f64().unwrap_or(0.0).max(0.0))
                .product(),
            Window::Ball { center, radius } => {
                let r = radius.to_f64().unwrap_or(0.0).max(0.0);
                let d = center.len() as f64;
                let half = d / 2.0;
                // pi^(d/2) r^d / Gamma(d/2 + 1)
                std::f64::consts::PI.powf(half) * r.powf(d) / gamma(half + 1.0)
            }
        }
    }

    /// Exact measure for interval windows.
    pub fn length_exact(&self) -> Option<GoldenRat> {
        match self {
            Window::Interval { lo, hi } => Some(hi - lo),
            _ => None,
        }
    }

    /// Radius of the largest centered ball inside the window shape
    /// (half-width for intervals and boxes).
    pub fn inradius(&self) -> Result<GoldenRat> {
        match self {
            Window::Interval { lo, hi } => Ok((hi - lo).div_int(2)),
            Window::Box { dims } => {
                let mut best: Option<GoldenRat> = None;
                for (lo, hi) in dims {
                    let w = GoldenRat::from_rat((hi - lo) / Rat::from(BigInt::from(2)));
                    best = Some(match best {
                        None => w,
                        Some(b) => {
                            if w < b {
                                w
                            } else {
                                b
                            }
                        }
                    });
                }
                best.ok_or_else(|| Error::InvalidWindow("zero-dimensional box".into()))
            }
            Window::Ball { radius, .. } => Ok(GoldenRat::from_rat(radius.clone())),
        }
    }

    /// The window shrunk to the middle half of each extent.
    pub fn middle_half(&self) -> Result<Window> {
        match self {
            Window::Interval { lo, hi } => {
                let quarter = (hi - lo).div_int(4);
                Window::interval(lo + &quarter, hi - &quarter)
            }
            Window::Box { dims } => {
                let four = Rat::from(BigInt::from(4));
                Ok(Window::Box {
                    dims: dims
                        .iter()
                        .map(|(lo, hi)| {
                            let q = (hi - lo) / &four;
                            (lo + &q, hi - &q)
                        })
                        .collect(),
                })
            }
            Window::Ball { center, radius } => Ok(Window::Ball {
                center: center.clone(),
                radius: radius / Rat::from(BigInt::from(2)),
            }),
        }
    }

    /// Centered symmetric interval `[-r, r)` (1-d helper).
    pub fn centered(r: GoldenRat) -> Result<Window> {
        let neg = -r.clone();
        Window::interval(neg, r)
    }

    /// Minkowski difference `W - W` for interval windows: `(lo-hi, hi-lo)`
    /// returned as the half-open `[lo-hi, hi-lo)`; the lost right endpoint
    /// is harmless for the containment checks this supports.
    pub fn minkowski_self_difference(&self) -> Result<Window> {
        match self {
            Window::Interval { lo, hi } => Window::interval(lo - hi, hi - lo),
            _ => Err(Error::InvalidWindow(
                "self-difference implemented for intervals only".into(),
            )),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Window::Interval { lo, hi } => format!("[{lo}, {hi})"),
            Window::Box { dims } => {
                let parts: Vec<String> = dims
                    .iter()
                    .map(|(lo, hi)| format!("[{lo}, {hi})"))
                    .collect();
                parts.join(" x ")
            }
            Window::Ball { center, radius } => {
                let c: Vec<String> = center.iter().map(|x| x.to_string()).collect();
                format!("ball(({}), {})", c.join(", "), radius)
            }
        }
    }
}

fn gamma(x: f64) -> f64 {
    // Lanczos approximation; only used for ball volumes in reports.
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut a = C[0];
        let t = x + G + 0.5;
        for (i, c) in C.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat_one() -> Rat {
        Rat::one()
    }

    fn rat_zero() -> Rat {
        Rat::zero()
    }

    #[test]
    fn fibonacci_window_bounds() {
        let w = Window::fibonacci();
        if let Window::Interval { lo, hi } = &w {
            assert_eq!(lo.to_f64(), -1.0);
            assert!((hi.to_f64() - 0.6180339887).abs() < 1e-9);
        } else {
            panic!("expected interval");
        }
        assert!(w.has_interior());
        assert!((w.measure_f64() - 1.6180339887).abs() < 1e-9);
    }

    #[test]
    fn half_open_interval_membership() {
        let w = Window::fibonacci();
        let lo = GoldenRat::from_int(-1);
        let hi = &GoldenRat::tau() - &GoldenRat::from_int(1);
        assert!(w.contains_golden(&lo).unwrap());
        assert!(!w.contains_golden(&hi).unwrap());
        assert!(w.contains_golden(&GoldenRat::zero()).unwrap());
    }

    #[test]
    fn empty_window_has_no_interior() {
        let w = Window::interval(GoldenRat::zero(), GoldenRat::zero()).unwrap();
        assert!(!w.has_interior());
        assert_eq!(w.measure_f64(), 0.0);
        assert!(!w.contains_golden(&GoldenRat::zero()).unwrap());
        assert!(Window::interval(GoldenRat::from_int(1), GoldenRat::zero()).is_err());
    }

    #[test]
    fn middle_half_and_inradius() {
        let w = Window::interval(GoldenRat::zero(), GoldenRat::from_int(4)).unwrap();
        let v = w.middle_half().unwrap();
        if let Window::Interval { lo, hi } = &v {
            assert_eq!(lo, &GoldenRat::from_int(1));
            assert_eq!(hi, &GoldenRat::from_int(3));
        } else {
            panic!();
        }
        assert_eq!(w.inradius().unwrap(), GoldenRat::from_int(2));
    }

    #[test]
    fn region_margins() {
        let r = Region::interval_f64(-10.0, 10.0).unwrap();
        let inner = Region::interval_f64(-5.0, 5.0).unwrap();
        assert!(r.covers_with_margin(&inner, &Rat::from(BigInt::from(5))));
        assert!(!r.covers_with_margin(&inner, &Rat::from(BigInt::from(6))));
        let s = r.shrink(&Rat::from(BigInt::from(3))).unwrap();
        assert_eq!(s.widths_f64()[0], 14.0);
    }

    #[test]
    fn ball_volume_matches_known_values() {
        let b1 = Window::Ball {
            center: vec![rat_zero()],
            radius: rat_one(),
        };
        assert!((b1.measure_f64() - 2.0).abs() < 1e-9);
        let b2 = Window::Ball {
            center: vec![rat_zero(), rat_zero()],
            radius: rat_one(),
        };
        assert!((b2.measure_f64() - std::f64::consts::PI).abs() < 1e-9);
    }
}
