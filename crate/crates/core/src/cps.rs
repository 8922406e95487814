//! Cut-and-project schemes: the golden scheme with exact quadratic
//! arithmetic, and numeric schemes given by a rational lattice basis.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenRat, Rat};
use crate::point_set::{Coords, LatticeCoords, PointEntry, PointSet, Provenance};
use crate::window::{Region, Window};

/// Guard on the number of lattice candidates visited by one enumeration.
const ENUM_CANDIDATE_GUARD: u128 = 50_000_000;

/// Numeric scheme: a full-rank rational lattice in `R^(d+m)`.
/// `basis[i]` is the i-th basis vector; the first `phys_dim` coordinates
/// are physical, the rest internal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericCps {
    pub phys_dim: usize,
    pub internal_dim: usize,
    #[serde(with = "crate::golden::rat_mat_str")]
    pub basis: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CpsDescriptor {
    /// `Z(1,1) + Z(tau, tau')` in the plane; physical and internal
    /// dimensions are both 1 and the star map is Galois conjugation.
    Golden,
    Numeric(NumericCps),
}

impl CpsDescriptor {
    pub fn numeric(phys_dim: usize, internal_dim: usize, basis: Vec<Vec<Rat>>) -> Result<Self> {
        let n = phys_dim + internal_dim;
        if phys_dim == 0 || internal_dim == 0 {
            return Err(Error::InvalidConfig(
                "physical and internal dimensions must be positive".into(),
            ));
        }
        if basis.len() != n || basis.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidConfig(format!(
                "basis must be a {n}x{n} matrix"
            )));
        }
        let cps = NumericCps {
            phys_dim,
            internal_dim,
            basis,
        };
        if cps.determinant().is_zero() {
            return Err(Error::InvalidConfig("basis matrix is singular".into()));
        }
        Ok(CpsDescriptor::Numeric(cps))
    }

    pub fn phys_dim(&self) -> usize {
        match self {
            CpsDescriptor::Golden => 1,
            CpsDescriptor::Numeric(nc) => nc.phys_dim,
        }
    }

    pub fn internal_dim(&self) -> usize {
        match self {
            CpsDescriptor::Golden => 1,
            CpsDescriptor::Numeric(nc) => nc.internal_dim,
        }
    }

    /// Covolume of the lattice: `sqrt5` for the golden scheme (the basis
    /// `{(1,1), (tau, tau')}` has determinant `tau' - tau`), `|det B|`
    /// for numeric schemes.
    pub fn covolume_f64(&self) -> f64 {
        match self {
            CpsDescriptor::Golden => crate::golden::SQRT5_F64,
            CpsDescriptor::Numeric(nc) => nc.determinant().to_f64().unwrap_or(f64::NAN).abs(),
        }
    }

    /// `1/covolume`: the lattice density convention used by every
    /// density target in this crate.
    pub fn lattice_density_f64(&self) -> f64 {
        1.0 / self.covolume_f64()
    }
}

impl NumericCps {
    fn dim(&self) -> usize {
        self.phys_dim + self.internal_dim
    }

    fn determinant(&self) -> Rat {
        let n = self.dim();
        let mut a: Vec<Vec<Rat>> = self.basis.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            det *= a[col][col].clone();
            let pivot = a[col][col].clone();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pivot;
                for c in col..n {
                    let sub = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &sub;
                }
            }
        }
        det
    }

    fn inverse(&self) -> Result<Vec<Vec<Rat>>> {
        let n = self.dim();
        let mut a = self.basis.clone();
        let mut inv: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::InvalidConfig("basis matrix is singular".into()))?;
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let p = a[col][col].clone();
            for c in 0..n {
                a[col][c] = &a[col][c] / &p;
                inv[col][c] = &inv[col][c] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let s = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &s;
                    let s = &f * &inv[col][c];
                    inv[r][c] = &inv[r][c] - &s;
                }
            }
        }
        Ok(inv)
    }

    /// Ambient coordinates of the lattice point `k`, as `k^T B`.
    fn embed(&self, k: &[i64]) -> Vec<Rat> {
        let n = self.dim();
        let mut x = vec![Rat::zero(); n];
        for (i, ki) in k.iter().enumerate() {
            if *ki == 0 {
                continue;
            }
            let f = Rat::from(BigInt::from(*ki));
            for (j, xj) in x.iter_mut().enumerate() {
                *xj = &*xj + &(&f * &self.basis[i][j]);
            }
        }
        x
    }
}

/// The star map of the golden scheme: Galois conjugation on `Z[tau]`.
pub fn star(x: GoldenInt) -> GoldenInt {
    x.star()
}

/// Exact membership of a lattice point in the model set of `window`.
pub fn is_member(cps: &CpsDescriptor, window: &Window, coords: &LatticeCoords) -> Result<bool> {
    match (cps, coords) {
        (CpsDescriptor::Golden, LatticeCoords::Golden(g)) => {
            window.contains_golden(&g.star().to_rat())
        }
        (CpsDescriptor::Numeric(nc), LatticeCoords::Ints(k)) => {
            if k.len() != nc.dim() {
                return Err(Error::DimensionMismatch(
                    "lattice coordinate length does not match the scheme".into(),
                ));
            }
            let x = nc.embed(k);
            window.contains_rat_vec(&x[nc.phys_dim..])
        }
        _ => Err(Error::SchemeMismatch(
            "lattice coordinates do not belong to this scheme".into(),
        )),
    }
}

/// Closure bounds of a 1-d window as golden-field values.
fn window_closure_bounds_1d(window: &Window) -> Result<(GoldenRat, GoldenRat)> {
    match window {
        Window::Interval { lo, hi } => Ok((lo.clone(), hi.clone())),
        Window::Box { dims } if dims.len() == 1 => Ok((
            GoldenRat::from_rat(dims[0].0.clone()),
            GoldenRat::from_rat(dims[0].1.clone()),
        )),
        Window::Ball { center, radius } if center.len() == 1 => {
            let c = GoldenRat::from_rat(center[0].clone());
            let r = GoldenRat::from_rat(radius.clone());
            Ok((&c - &r, &c + &r))
        }
        _ => Err(Error::DimensionMismatch(
            "golden scheme needs a 1-d window".into(),
        )),
    }
}

fn sign_a_plus_b_tau(a: i128, b: i128) -> i8 {
    // a + b tau = (2a+b)/2 + (b/2) sqrt5
    let p = 2 * a + b;
    if p == 0 && b == 0 {
        return 0;
    }
    if p >= 0 && b >= 0 {
        return 1;
    }
    if p <= 0 && b <= 0 {
        return -1;
    }
    const LIM: i128 = 3_000_000_000_000_000_000;
    if p.abs() <= LIM && b.abs() <= LIM {
        let lhs = p * p;
        let rhs = 5 * b * b;
        let c = match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
        };
        if p > 0 {
            c
        } else {
            -c
        }
    } else {
        GoldenRat::new(Rat::from(BigInt::from(a)), Rat::from(BigInt::from(b))).sign()
    }
}

/// Floor of `(a + b tau)/d` with `d > 0`, verified exactly around a float
/// estimate.
fn floor_golden_i128(a: i128, b: i128, d: i128) -> i128 {
    debug_assert!(d > 0);
    let exact_fallback = || {
        GoldenRat::new(
            Rat::new(BigInt::from(a), BigInt::from(d)),
            Rat::new(BigInt::from(b), BigInt::from(d)),
        )
        .floor()
        .to_i128()
        .expect("floor fits i128")
    };
    let est = ((a as f64) + (b as f64) * crate::golden::TAU_F64) / (d as f64);
    if !est.is_finite() {
        return exact_fallback();
    }
    let mut k = est.floor() as i128;
    // ge(k) holds iff (a + b tau)/d >= k
    let ge = |k: i128| -> bool {
        match k.checked_mul(d) {
            Some(kd) => sign_a_plus_b_tau(a - kd, b) >= 0,
            None => false,
        }
    };
    let mut steps = 0;
    while !ge(k) {
        k -= 1;
        steps += 1;
        if steps > 64 {
            return exact_fallback();
        }
    }
    while ge(k + 1) {
        k += 1;
        steps += 1;
        if steps > 64 {
            return exact_fallback();
        }
    }
    k
}

fn ceil_golden_i128(a: i128, b: i128, d: i128) -> i128 {
    let f = floor_golden_i128(a, b, d);
    if sign_a_plus_b_tau(a - f * d, b) == 0 {
        f
    } else {
        f + 1
    }
}

/// Window membership constraints compiled to integer form, when the
/// endpoints fit. Each bound reads `star cmp (p + q tau)/d`.
struct FastWindow {
    bounds: Vec<(i128, i128, i128, bool, bool)>, // (p, q, d, strict, lower)
}

impl FastWindow {
    fn compile(window: &Window) -> Option<FastWindow> {
        const LIM: i128 = 1_000_000_000_000_000; // keep products comfortably in i128
        let part = |v: &GoldenRat| -> Option<(i128, i128, i128)> {
            let (p, q, d) = v.to_i128_parts()?;
            (p.abs() <= LIM && q.abs() <= LIM && d <= LIM).then_some((p, q, d))
        };
        let mut bounds = Vec::new();
        match window {
            Window::Interval { lo, hi } => {
                let (p, q, d) = part(lo)?;
                bounds.push((p, q, d, false, true));
                let (p, q, d) = part(hi)?;
                bounds.push((p, q, d, true, false));
            }
            Window::Box { dims } if dims.len() == 1 => {
                let (p, q, d) = part(&GoldenRat::from_rat(dims[0].0.clone()))?;
                bounds.push((p, q, d, false, true));
                let (p, q, d) = part(&GoldenRat::from_rat(dims[0].1.clone()))?;
                bounds.push((p, q, d, true, false));
            }
            Window::Ball { center, radius } if center.len() == 1 => {
                let c = GoldenRat::from_rat(center[0].clone());
                let r = GoldenRat::from_rat(radius.clone());
                let (p, q, d) = part(&(&c - &r))?;
                bounds.push((p, q, d, false, true));
                let (p, q, d) = part(&(&c + &r))?;
                bounds.push((p, q, d, false, false));
            }
            _ => return None,
        }
        Some(FastWindow { bounds })
    }

    fn contains_star(&self, m: i64, n: i64) -> bool {
        // star(m,n) = (m+n) - n tau
        for &(p, q, d, strict, lower) in &self.bounds {
            let a = d * (m as i128 + n as i128) - p;
            let b = -d * (n as i128) - q;
            let s = sign_a_plus_b_tau(a, b);
            let ok = if lower {
                if strict {
                    s > 0
                } else {
                    s >= 0
                }
            } else if strict {
                s < 0
            } else {
                s <= 0
            };
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Exhaustive enumeration of `{x in L : phys(x) in region, star(x) in W}`.
///
/// Golden scheme: `phys - star = n sqrt5` pins the tau coefficient to an
/// exact integer range; for each `n` the region and the window closure
/// each pin `m` to an exact integer range, and the half-open window test
/// settles every candidate exactly. No float ever decides membership.
pub fn enumerate_model_set(
    cps: &CpsDescriptor,
    window: &Window,
    region: &Region,
) -> Result<PointSet> {
    match cps {
        CpsDescriptor::Golden => enumerate_golden(window, region),
        CpsDescriptor::Numeric(nc) => enumerate_numeric(nc, window, region),
    }
}

fn enumerate_golden(window: &Window, region: &Region) -> Result<PointSet> {
    if region.dim() != 1 {
        return Err(Error::DimensionMismatch(
            "golden scheme has a 1-d physical space".into(),
        ));
    }
    let provenance = Provenance::ModelSet {
        cps: CpsDescriptor::Golden,
        window: window.clone(),
    };
    let (b_lo, b_hi) = window_closure_bounds_1d(window)?;
    if b_lo > b_hi {
        return Ok(PointSet::new(vec![], provenance, region.clone()));
    }
    let x1 = GoldenRat::from_rat(region.dims[0].0.clone());
    let x2 = GoldenRat::from_rat(region.dims[0].1.clone());

    // n sqrt5 = phys - star ∈ [x1 - b_hi, x2 - b_lo]
    let inv_sqrt5 = GoldenRat::sqrt5().inv();
    let n_min_big = (&(&x1 - &b_hi) * &inv_sqrt5).ceil();
    let n_max_big = (&(&x2 - &b_lo) * &inv_sqrt5).floor();
    if n_min_big > n_max_big {
        return Ok(PointSet::new(vec![], provenance, region.clone()));
    }
    let range_err = || Error::GuardExceeded {
        what: "lattice coefficient range".into(),
        limit: "i64".into(),
    };
    let n_min = n_min_big.to_i64().ok_or_else(range_err)?;
    let n_max = n_max_big.to_i64().ok_or_else(range_err)?;

    let span = (n_max as i128 - n_min as i128) as u128 + 1;
    let width_bound = (&x2 - &x1)
        .to_f64()
        .abs()
        .min((&b_hi - &b_lo).to_f64().abs());
    let per_n = width_bound.ceil() as u128 + 2;
    if span.saturating_mul(per_n) > ENUM_CANDIDATE_GUARD {
        return Err(Error::GuardExceeded {
            what: format!(
                "enumeration would visit about {} candidates",
                span.saturating_mul(per_n)
            ),
            limit: ENUM_CANDIDATE_GUARD.to_string(),
        });
    }

    let mut coords: Vec<GoldenInt> = Vec::new();
    let fast = FastWindow::compile(window).and_then(|fw| {
        Some((
            fw,
            x1.to_i128_parts()?,
            x2.to_i128_parts()?,
            b_lo.to_i128_parts()?,
            b_hi.to_i128_parts()?,
        ))
    });
    match fast {
        Some((fw, (p1, q1, d1), (p2, q2, d2), (pl, ql, dl), (ph, qh, dh)))
            if [p1, q1, d1, p2, q2, d2, pl, ql, dl, ph, qh, dh]
                .iter()
                .all(|v| v.abs() <= 1_000_000_000_000_000)
                && n_min.abs() < 1 << 40
                && n_max.abs() < 1 << 40 =>
        {
            for n in n_min..=n_max {
                let ni = n as i128;
                // region: ceil(x1 - n tau) <= m <= floor(x2 - n tau)
                let m_lo_r = ceil_golden_i128(p1, q1 - ni * d1, d1);
                let m_hi_r = floor_golden_i128(p2, q2 - ni * d2, d2);
                // window closure: star = (m+n) - n tau in [b_lo, b_hi]
                // => ceil(b_lo - n + n tau) <= m <= floor(b_hi - n + n tau)
                let m_lo_w = ceil_golden_i128(pl - ni * dl, ql + ni * dl, dl);
                let m_hi_w = floor_golden_i128(ph - ni * dh, qh + ni * dh, dh);
                let m_lo = m_lo_r.max(m_lo_w);
                let m_hi = m_hi_r.min(m_hi_w);
                for m in m_lo..=m_hi {
                    let (Ok(m64), Ok(n64)) = (i64::try_from(m), i64::try_from(n)) else {
                        continue;
                    };
                    if fw.contains_star(m64, n64) {
                        coords.push(GoldenInt::new(m64, n64));
                    }
                }
            }
        }
        _ => {
            let tau = GoldenRat::tau();
            for n in n_min..=n_max {
                let ntau = tau.scale_int(n);
                let m_lo_region = (&x1 - &ntau).ceil();
                let m_hi_region = (&x2 - &ntau).floor();
                let shift = &ntau - &GoldenRat::from_int(n);
                let m_lo_window = (&b_lo + &shift).ceil();
                let m_hi_window = (&b_hi + &shift).floor();
                let m_lo = m_lo_region.max(m_lo_window);
                let m_hi = m_hi_region.min(m_hi_window);
                if m_lo > m_hi {
                    continue;
                }
                let (Some(m_lo), Some(m_hi)) = (m_lo.to_i64(), m_hi.to_i64()) else {
                    return Err(range_err());
                };
                for m in m_lo..=m_hi {
                    let g = GoldenInt::new(m, n);
                    if window.contains_golden(&g.star().to_rat())? {
                        coords.push(g);
                    }
                }
            }
        }
    }
    Ok(PointSet::from_golden(coords, provenance, region.clone()))
}

/// Enumeration over a box of golden lattice coordinates rather than a
/// physical region: every `(m, n)` with `star(m+n tau)` in the window.
pub fn enumerate_by_coord_box(
    window: &Window,
    m_range: (i64, i64),
    n_range: (i64, i64),
) -> Result<Vec<GoldenInt>> {
    let span = (m_range.1 - m_range.0).max(0) as u128 * (n_range.1 - n_range.0).max(0) as u128;
    if span > ENUM_CANDIDATE_GUARD {
        return Err(Error::GuardExceeded {
            what: format!("coordinate box with {span} candidates"),
            limit: ENUM_CANDIDATE_GUARD.to_string(),
        });
    }
    let fast = FastWindow::compile(window);
    let mut out = Vec::new();
    match fast {
        Some(fw) => {
            for m in m_range.0..=m_range.1 {
                for n in n_range.0..=n_range.1 {
                    if fw.contains_star(m, n) {
                        out.push(GoldenInt::new(m, n));
                    }
                }
            }
        }
        None => {
            for m in m_range.0..=m_range.1 {
                for n in n_range.0..=n_range.1 {
                    let g = GoldenInt::new(m, n);
                    if window.contains_golden(&g.star().to_rat())? {
                        out.push(g);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Guard band for flagging numeric-scheme points near the window
/// boundary; exact rational `1e-9`.
fn numeric_guard_band() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(1_000_000_000u64))
}

fn enumerate_numeric(nc: &NumericCps, window: &Window, region: &Region) -> Result<PointSet> {
    if region.dim() != nc.phys_dim {
        return Err(Error::DimensionMismatch(format!(
            "region has dimension {}, scheme has physical dimension {}",
            region.dim(),
            nc.phys_dim
        )));
    }
    if window.internal_dim() != nc.internal_dim {
        return Err(Error::DimensionMismatch(format!(
            "window has dimension {}, scheme has internal dimension {}",
            window.internal_dim(),
            nc.internal_dim
        )));
    }
    // Ambient target box: region x window bounding box.
    let wbox: Vec<(Rat, Rat)> = match window {
        Window::Interval { lo, hi } => {
            if !lo.is_rational() || !hi.is_rational() {
                return Err(Error::InvalidConfig(
                    "numeric schemes need rational window endpoints".into(),
                ));
            }
            vec![(lo.coeff_a().clone(), hi.coeff_a().clone())]
        }
        Window::Box { dims } => dims.clone(),
        Window::Ball { center, radius } => center
            .iter()
            .map(|c| (c - radius, c + radius))
            .collect(),
    };
    let mut target = region.dims.clone();
    target.extend(wbox);
    let dim = nc.dim();
    let inv = nc.inverse()?;

    // k_i = sum_j x_j * inv[j][i]; interval arithmetic over the box.
    let mut ranges: Vec<(i64, i64)> = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        for (j, (xl, xh)) in target.iter().enumerate() {
            let c = &inv[j][i];
            if c.is_positive() {
                lo = &lo + &(c * xl);
                hi = &hi + &(c * xh);
            } else {
                lo = &lo + &(c * xh);
                hi = &hi + &(c * xl);
            }
        }
        let lo = GoldenRat::from_rat(lo).ceil();
        let hi = GoldenRat::from_rat(hi).floor();
        if lo > hi {
            return Ok(PointSet::new(
                vec![],
                Provenance::ModelSet {
                    cps: CpsDescriptor::Numeric(nc.clone()),
                    window: window.clone(),
                },
                region.clone(),
            ));
        }
        let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else {
            return Err(Error::GuardExceeded {
                what: "lattice coordinate range".into(),
                limit: "i64".into(),
            });
        };
        ranges.push((lo, hi));
    }
    let count = ranges
        .iter()
        .map(|(lo, hi)| (*hi as i128 - *lo as i128 + 1) as u128)
        .try_fold(1u128, |acc, c| acc.checked_mul(c))
        .unwrap_or(u128::MAX);
    if count > 2_000_000 {
        return Err(Error::GuardExceeded {
            what: format!("numeric enumeration over {count} lattice candidates"),
            limit: "2000000".into(),
        });
    }

    let guard = numeric_guard_band();
    let mut entries = Vec::new();
    let mut phys_seen: HashMap<Vec<Rat>, Vec<i64>> = HashMap::new();
    let mut k: Vec<i64> = ranges.iter().map(|(lo, _)| *lo).collect();
    'outer: loop {
        let x = nc.embed(&k);
        let phys = &x[..nc.phys_dim];
        let internal = &x[nc.phys_dim..];
        let phys_in = phys
            .iter()
            .zip(&region.dims)
            .all(|(v, (lo, hi))| v >= lo && v <= hi);
        if phys_in {
            // Injectivity must hold among all lattice points seen over
            // the region, accepted or not.
            if let Some(prev) = phys_seen.insert(phys.to_vec(), k.clone()) {
                if prev != k {
                    return Err(Error::ProjectionNotInjective(
                        format!("{prev:?}"),
                        format!("{k:?}"),
                    ));
                }
            }
            if window.contains_rat_vec(internal)? {
                let uncertain = near_boundary(window, internal, &guard);
                entries.push(PointEntry {
                    coords: Coords {
                        exact: Some(phys.iter().cloned().map(GoldenRat::from_rat).collect()),
                        lattice: Some(LatticeCoords::Ints(k.clone())),
                        approx: phys.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect(),
                    },
                    internal: Some(
                        internal
                            .iter()
                            .map(|v| v.to_f64().unwrap_or(f64::NAN))
                            .collect(),
                    ),
                    boundary_uncertain: uncertain,
                });
            }
        }
        // Odometer step.
        for i in 0..dim {
            if k[i] < ranges[i].1 {
                k[i] += 1;
                for (r, (lo, _)) in k.iter_mut().zip(&ranges).take(i) {
                    *r = *lo;
                }
                continue 'outer;
            }
        }
        break;
    }
    Ok(PointSet::new(
        entries,
        Provenance::ModelSet {
            cps: CpsDescriptor::Numeric(nc.clone()),
            window: window.clone(),
        },
        region.clone(),
    ))
}

/// True when an accepted internal point sits within the guard band of
/// the window boundary.
fn near_boundary(window: &Window, v: &[Rat], guard: &Rat) -> bool {
    match window {
        Window::Interval { lo, hi } => {
            let x = GoldenRat::from_rat(v[0].clone());
            let g = GoldenRat::from_rat(guard.clone());
            (&x - lo).abs() < g || (hi - &x).abs() < g
        }
        Window::Box { dims } => v.iter().zip(dims).any(|(x, (lo, hi))| {
            let a = x - lo;
            let b = hi - x;
            a.abs() < *guard || b.abs() < *guard
        }),
        Window::Ball { center, radius } => {
            let d2: Rat = v
                .iter()
                .zip(center)
                .map(|(x, c)| {
                    let d = x - c;
                    &d * &d
                })
                .sum();
            let lo = radius - guard;
            let hi = radius + guard;
            let lo2 = if lo.is_negative() { Rat::zero() } else { &lo * &lo };
            d2 >= lo2 && d2 <= &hi * &hi
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib(region: (f64, f64)) -> PointSet {
        enumerate_model_set(
            &CpsDescriptor::Golden,
            &Window::fibonacci(),
            &Region::interval_f64(region.0, region.1).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn small_region_matches_bruteforce() {
        // golden, W = [-1, tau-1), region [-0.5, 3] -> {0, tau, tau+1}
        let ps = fib((-0.5, 3.0));
        let got: Vec<(i64, i64)> = ps.golden_keys().unwrap();
        assert_eq!(got, vec![(0, 0), (0, 1), (1, 1)]);

        // Independent scan over |m|,|n| <= 10.
        let w = Window::fibonacci();
        let mut expect = Vec::new();
        for m in -10..=10i64 {
            for n in -10..=10i64 {
                let g = GoldenInt::new(m, n);
                let phys = g.to_f64();
                if (-0.5..=3.0).contains(&phys)
                    && w.contains_golden(&g.star().to_rat()).unwrap()
                {
                    expect.push(g);
                }
            }
        }
        expect.sort();
        let got: Vec<GoldenInt> = ps
            .points
            .iter()
            .map(|p| p.coords.golden_lattice().unwrap())
            .collect();
        let mut expect_sorted = expect.clone();
        expect_sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(got, expect_sorted);
    }

    #[test]
    fn degenerate_region_keeps_origin() {
        let ps = fib((0.0, 0.0));
        assert_eq!(ps.golden_keys().unwrap(), vec![(0, 0)]);
    }

    #[test]
    fn empty_window_gives_empty_set() {
        let w = Window::interval(GoldenRat::zero(), GoldenRat::zero()).unwrap();
        let ps = enumerate_model_set(
            &CpsDescriptor::Golden,
            &w,
            &Region::interval_f64(-100.0, 100.0).unwrap(),
        )
        .unwrap();
        assert!(ps.is_empty());
    }

    #[test]
    fn membership_examples() {
        let w = Window::fibonacci();
        let cps = CpsDescriptor::Golden;
        let member = |m, n| {
            is_member(&cps, &w, &LatticeCoords::Golden(GoldenInt::new(m, n))).unwrap()
        };
        assert!(member(0, 0));
        // 1* = 1 >= tau - 1
        assert!(!member(1, 0));
        // (3 tau + 2)* ~ 0.1459
        assert!(member(2, 3));
        // Half-open boundaries: star(-tau) = tau - 1 (the upper endpoint, excluded),
        // star(-1) = -1 (the lower endpoint, included).
        assert!(!member(0, -1));
        assert!(member(-1, 0));
    }

    #[test]
    fn enumeration_agrees_with_membership() {
        let ps = fib((-30.0, 30.0));
        let w = Window::fibonacci();
        for p in &ps.points {
            let g = p.coords.golden_lattice().unwrap();
            assert!(is_member(&CpsDescriptor::Golden, &w, &LatticeCoords::Golden(g)).unwrap());
        }
        // Exhaustive complement check over a coordinate box that covers the region.
        let in_set: std::collections::HashSet<(i64, i64)> =
            ps.golden_keys().unwrap().into_iter().collect();
        for m in -60..=60i64 {
            for n in -40..=40i64 {
                let g = GoldenInt::new(m, n);
                let phys = g.to_f64();
                if phys < -30.0 + 1e-9 || phys > 30.0 - 1e-9 {
                    continue;
                }
                let inside =
                    is_member(&CpsDescriptor::Golden, &w, &LatticeCoords::Golden(g)).unwrap();
                assert_eq!(in_set.contains(&(g.m, g.n)), inside, "at {g:?}");
            }
        }
    }

    #[test]
    fn fibonacci_gaps_are_unit_and_tau() {
        let ps = fib((0.0, 100.0));
        let xs = ps.phys1_values();
        for w in xs.windows(2) {
            let gap = w[1] - w[0];
            assert!(
                (gap - 1.0).abs() < 1e-9 || (gap - crate::golden::TAU_F64).abs() < 1e-9,
                "unexpected gap {gap}"
            );
        }
        assert_eq!(crate::point_set::min_gap(&ps).unwrap(), 1.0);
    }

    #[test]
    fn numeric_scheme_enumerates_and_checks_injectivity() {
        // Lattice Z(1,1) + Z(3/2, -1/2): injective on small regions only.
        let basis = vec![
            vec![Rat::from(BigInt::from(1)), Rat::from(BigInt::from(1))],
            vec![
                Rat::new(BigInt::from(3), BigInt::from(2)),
                Rat::new(BigInt::from(-1), BigInt::from(2)),
            ],
        ];
        let cps = CpsDescriptor::numeric(1, 1, basis).unwrap();
        let w = Window::Box {
            dims: vec![(
                Rat::new(BigInt::from(-1), BigInt::from(1)),
                Rat::new(BigInt::from(1), BigInt::from(1)),
            )],
        };
        let ps = enumerate_model_set(&cps, &w, &Region::interval_f64(-2.0, 2.0).unwrap()).unwrap();
        assert!(!ps.is_empty());
        for p in &ps.points {
            let Some(LatticeCoords::Ints(k)) = &p.coords.lattice else {
                panic!("expected integer lattice coords");
            };
            assert!(is_member(&cps, &w, &LatticeCoords::Ints(k.clone())).unwrap());
        }
        // A wide region exposes the projection collision (3,0) vs (0,2).
        let err = enumerate_model_set(&cps, &w, &Region::interval_f64(-5.0, 5.0).unwrap());
        assert!(matches!(err, Err(Error::ProjectionNotInjective(_, _))));
    }

    #[test]
    fn covolume_conventions() {
        assert!((CpsDescriptor::Golden.covolume_f64() - crate::golden::SQRT5_F64).abs() < 1e-12);
        let basis = vec![
            vec![Rat::from(BigInt::from(2)), Rat::zero()],
            vec![Rat::zero(), Rat::from(BigInt::from(3))],
        ];
        let cps = CpsDescriptor::numeric(1, 1, basis).unwrap();
        assert!((cps.covolume_f64() - 6.0).abs() < 1e-12);
    }
}
