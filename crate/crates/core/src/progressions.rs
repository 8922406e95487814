//! Arithmetic progressions in model sets: brute-force detection, the
//! constructive difference-window calculus, and explicit radius bounds
//! for finding progressions inside bounded balls.

use std::collections::HashSet;
use std::hash::Hash;

use serde::Serialize;

use crate::cps::{enumerate_model_set, is_member, CpsDescriptor};
use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenRat, Rat};
use crate::point_set::{cmp_coords, Coords, LatticeCoords, PointSet};
use crate::window::{Region, Window};

const BRUTEFORCE_GUARD: usize = 100_000;

/// A certified arithmetic progression `start + j*diff`, `0 <= j < len`.
#[derive(Debug, Clone, Serialize)]
pub struct Progression {
    pub start: Coords,
    pub diff: Coords,
    pub len: usize,
    /// Internal-space window certifying every admissible difference for
    /// the anchor this progression was constructed from, when it came
    /// from the constructive route.
    pub witness: Option<Window>,
}

impl Progression {
    pub fn terms(&self) -> Result<Vec<Coords>> {
        let mut out = Vec::with_capacity(self.len);
        let mut cur = self.start.clone();
        for j in 0..self.len {
            if j > 0 {
                cur = cur.add(&self.diff)?;
            }
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn describe(&self) -> String {
        format!(
            "start {} step {} length {}",
            self.start.describe(),
            self.diff.describe(),
            self.len
        )
    }
}

/// Window of admissible common differences for progressions anchored at
/// a fixed model-set point.
#[derive(Debug, Clone, Serialize)]
pub struct DifferenceWindow {
    pub window: Window,
    pub anchor: Coords,
    pub steps: usize,
}

impl DifferenceWindow {
    /// True when `t` is a nonzero lattice element whose internal value
    /// falls in the window, hence a valid common difference.
    pub fn admits(&self, cps: &CpsDescriptor, t: &LatticeCoords) -> Result<bool> {
        match t {
            LatticeCoords::Golden(g) if g.is_zero() => return Ok(false),
            LatticeCoords::Ints(k) if k.iter().all(|v| *v == 0) => return Ok(false),
            _ => {}
        }
        is_member(cps, &self.window, t)
    }
}

/// Checks that a point sequence is an arithmetic progression with a
/// nonzero common difference. Exact when every point carries exact
/// coordinates, within `tol` per coordinate otherwise.
pub fn verify_ap(points: &[Coords], tol: f64) -> Result<bool> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    let all_exact = points.iter().all(|p| p.exact.is_some());
    if all_exact {
        let d0 = points[1].sub(&points[0])?;
        if d0.is_zero() {
            return Ok(false);
        }
        for w in points.windows(2).skip(1) {
            let d = w[1].sub(&w[0])?;
            if d.exact != d0.exact {
                return Ok(false);
            }
        }
        Ok(true)
    } else {
        let d0: Vec<f64> = points[1]
            .approx
            .iter()
            .zip(&points[0].approx)
            .map(|(a, b)| a - b)
            .collect();
        if d0.iter().map(|x| x.abs()).fold(0.0, f64::max) <= tol {
            return Ok(false);
        }
        for w in points.windows(2).skip(1) {
            for (i, (a, b)) in w[1].approx.iter().zip(&w[0].approx).enumerate() {
                if ((a - b) - d0[i]).abs() > tol {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

trait ApKey: Hash + Eq + Clone {
    fn sub(&self, o: &Self) -> Self;
    fn add(&self, o: &Self) -> Self;
}

impl ApKey for (i128, i128) {
    fn sub(&self, o: &Self) -> Self {
        (self.0 - o.0, self.1 - o.1)
    }
    fn add(&self, o: &Self) -> Self {
        (self.0 + o.0, self.1 + o.1)
    }
}

impl ApKey for Vec<GoldenRat> {
    fn sub(&self, o: &Self) -> Self {
        self.iter().zip(o).map(|(a, b)| a - b).collect()
    }
    fn add(&self, o: &Self) -> Self {
        self.iter().zip(o).map(|(a, b)| a + b).collect()
    }
}

/// Pair-expansion scan. Keys must be sorted; reports maximal
/// progressions `(start index, step, length)` in order of (start, step).
fn scan_keys<K: ApKey>(keys: &[K], k_min: usize, stop_first: bool) -> Vec<(usize, K, usize)> {
    let set: HashSet<&K> = keys.iter().collect();
    let mut out = Vec::new();
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            let t = keys[j].sub(&keys[i]);
            // Maximal progressions only: skip pairs whose start extends left.
            if set.contains(&keys[i].sub(&t)) {
                continue;
            }
            let mut len = 2;
            let mut cur = keys[j].add(&t);
            while set.contains(&cur) {
                len += 1;
                cur = cur.add(&t);
            }
            if len >= k_min {
                out.push((i, t, len));
                if stop_first {
                    return out;
                }
            }
        }
    }
    out
}

enum Keys {
    Golden(Vec<(i128, i128)>),
    Exact(Vec<Vec<GoldenRat>>),
}

fn exact_keys_of(ps: &PointSet) -> Result<Keys> {
    if let Some(g) = ps.golden_keys() {
        Ok(Keys::Golden(
            g.into_iter().map(|(m, n)| (m as i128, n as i128)).collect(),
        ))
    } else if let Some(e) = ps.exact_keys() {
        Ok(Keys::Exact(e))
    } else {
        Err(Error::ExactCoordsRequired(
            "brute-force progression search needs exact coordinates".into(),
        ))
    }
}

fn golden_key_coords(t: (i128, i128)) -> Coords {
    Coords::golden(GoldenInt::new(
        i64::try_from(t.0).expect("difference fits i64"),
        i64::try_from(t.1).expect("difference fits i64"),
    ))
}

fn exact_key_coords(t: Vec<GoldenRat>) -> Coords {
    Coords {
        approx: t.iter().map(|v| v.to_f64()).collect(),
        exact: Some(t),
        lattice: None,
    }
}

/// Every maximal arithmetic progression of length at least `k` in the
/// point set, found by pair expansion over exact coordinates.
/// Deterministic: results are ordered by start, then step.
pub fn find_aps_bruteforce(ps: &PointSet, k: usize) -> Result<Vec<Progression>> {
    if k < 2 {
        return Err(Error::InvalidConfig(
            "progression length must be >= 2".into(),
        ));
    }
    if ps.len() > BRUTEFORCE_GUARD {
        return Err(Error::GuardExceeded {
            what: format!("brute-force search over {} points", ps.len()),
            limit: BRUTEFORCE_GUARD.to_string(),
        });
    }
    let found = match exact_keys_of(ps)? {
        Keys::Golden(keys) => scan_keys(&keys, k, false)
            .into_iter()
            .map(|(i, t, len)| Progression {
                start: ps.points[i].coords.clone(),
                diff: golden_key_coords(t),
                len,
                witness: None,
            })
            .collect::<Vec<_>>(),
        Keys::Exact(keys) => scan_keys(&keys, k, false)
            .into_iter()
            .map(|(i, t, len)| Progression {
                start: ps.points[i].coords.clone(),
                diff: exact_key_coords(t),
                len,
                witness: None,
            })
            .collect::<Vec<_>>(),
    };
    Ok(found)
}

/// First maximal progression of length >= `k` in scan order, trimmed to
/// exactly `k` terms. Used by the coloring searches.
pub(crate) fn find_first_ap(ps: &PointSet, k: usize) -> Result<Option<Progression>> {
    if ps.len() > BRUTEFORCE_GUARD {
        return Err(Error::GuardExceeded {
            what: format!("brute-force search over {} points", ps.len()),
            limit: BRUTEFORCE_GUARD.to_string(),
        });
    }
    if ps.len() < 2 {
        return Ok(None);
    }
    let found = match exact_keys_of(ps)? {
        Keys::Golden(keys) => {
            scan_keys(&keys, k, true)
                .into_iter()
                .next()
                .map(|(i, t, _len)| Progression {
                    start: ps.points[i].coords.clone(),
                    diff: golden_key_coords(t),
                    len: k,
                    witness: None,
                })
        }
        Keys::Exact(keys) => {
            scan_keys(&keys, k, true)
                .into_iter()
                .next()
                .map(|(i, t, _len)| Progression {
                    start: ps.points[i].coords.clone(),
                    diff: exact_key_coords(t),
                    len: k,
                    witness: None,
                })
        }
    };
    Ok(found)
}

/// The exact window of common differences: for an interval window
/// `[w1, w2)` and anchor `s`, a lattice `t` yields the progression
/// `s, s+t, ..., s+nt` inside the model set exactly when
/// `star(t) in [(w1 - s*)/n, (w2 - s*)/n)`. For boxes and balls the
/// returned window is the largest centered ball that `n` steps cannot
/// push out of the window.
pub fn difference_window(
    cps: &CpsDescriptor,
    window: &Window,
    s: &LatticeCoords,
    n: usize,
) -> Result<DifferenceWindow> {
    if n < 1 {
        return Err(Error::InvalidConfig("step count must be >= 1".into()));
    }
    if !is_member(cps, window, s)? {
        return Err(Error::NotInModelSet(format!("{s:?}")));
    }
    match (cps, s) {
        (CpsDescriptor::Golden, LatticeCoords::Golden(g)) => {
            let s_star = g.star().to_rat();
            let slack = window.interior_distance(&s_star)?;
            if slack.sign() <= 0 {
                return Err(Error::NoInteriorSlack(slack.to_string()));
            }
            let anchor = Coords::golden(*g);
            match window {
                Window::Interval { lo, hi } => {
                    let u_lo = (lo - &s_star).div_int(n as i64);
                    let u_hi = (hi - &s_star).div_int(n as i64);
                    Ok(DifferenceWindow {
                        window: Window::interval(u_lo, u_hi)?,
                        anchor,
                        steps: n,
                    })
                }
                _ => {
                    let r = slack.div_int(n as i64);
                    Ok(DifferenceWindow {
                        window: Window::centered(r)?,
                        anchor,
                        steps: n,
                    })
                }
            }
        }
        (CpsDescriptor::Numeric(nc), LatticeCoords::Ints(k)) => {
            let dim = nc.phys_dim + nc.internal_dim;
            if k.len() != dim {
                return Err(Error::DimensionMismatch("lattice coordinates".into()));
            }
            let x = numeric_embed(nc, k);
            let internal = &x[nc.phys_dim..];
            let (interior, slack) = numeric_interior_ball(window, internal)?;
            if !interior {
                return Err(Error::NoInteriorSlack("0".into()));
            }
            let radius = slack / Rat::from(num::BigInt::from(n as i64));
            Ok(DifferenceWindow {
                window: Window::Ball {
                    center: vec![Rat::from(num::BigInt::from(0)); nc.internal_dim],
                    radius,
                },
                anchor: Coords {
                    exact: Some(
                        x[..nc.phys_dim]
                            .iter()
                            .cloned()
                            .map(GoldenRat::from_rat)
                            .collect(),
                    ),
                    approx: x[..nc.phys_dim]
                        .iter()
                        .map(|v| num::ToPrimitive::to_f64(v).unwrap_or(f64::NAN))
                        .collect(),
                    lattice: Some(s.clone()),
                },
                steps: n,
            })
        }
        _ => Err(Error::SchemeMismatch(
            "anchor coordinates do not belong to this scheme".into(),
        )),
    }
}

fn numeric_embed(nc: &crate::cps::NumericCps, k: &[i64]) -> Vec<Rat> {
    let dim = nc.phys_dim + nc.internal_dim;
    let mut x = vec![Rat::from(num::BigInt::from(0)); dim];
    for (i, ki) in k.iter().enumerate() {
        if *ki == 0 {
            continue;
        }
        let f = Rat::from(num::BigInt::from(*ki));
        for (j, xj) in x.iter_mut().enumerate() {
            *xj = &*xj + &(&f * &nc.basis[i][j]);
        }
    }
    x
}

/// Largest rational radius (under-approximated for balls) of a centered
/// ball around `v` inside the window; the bool is false when `v` is not
/// interior.
fn numeric_interior_ball(window: &Window, v: &[Rat]) -> Result<(bool, Rat)> {
    let zero = Rat::from(num::BigInt::from(0));
    match window {
        Window::Interval { lo, hi } => {
            let x = GoldenRat::from_rat(v[0].clone());
            let d1 = &x - lo;
            let d2 = hi - &x;
            let m = if d1 < d2 { d1 } else { d2 };
            if m.sign() <= 0 {
                return Ok((false, zero));
            }
            if let Some(r) = Rat::from_float(m.to_f64() * 0.999) {
                if GoldenRat::from_rat(r.clone()) < m && num::Signed::is_positive(&r) {
                    return Ok((true, r));
                }
            }
            Ok((
                true,
                Rat::new(num::BigInt::from(1), num::BigInt::from(1_000_000)),
            ))
        }
        Window::Box { dims } => {
            let mut best: Option<Rat> = None;
            for (x, (lo, hi)) in v.iter().zip(dims) {
                let d1 = x - lo;
                let d2 = hi - x;
                let m = if d1 < d2 { d1 } else { d2 };
                best = Some(match best {
                    None => m,
                    Some(b) => {
                        if m < b {
                            m
                        } else {
                            b
                        }
                    }
                });
            }
            let m = best.ok_or_else(|| Error::InvalidWindow("empty box".into()))?;
            let ok = num::Signed::is_positive(&m);
            Ok((ok, m))
        }
        Window::Ball { center, radius } => {
            // dist to boundary = radius - |v - c|; under-approximate the
            // norm from floats and verify exactly with squares.
            let d2: Rat = v
                .iter()
                .zip(center)
                .map(|(x, c)| {
                    let d = x - c;
                    &d * &d
                })
                .sum();
            if d2 >= radius * radius {
                return Ok((false, zero));
            }
            let dist = num::ToPrimitive::to_f64(&d2).unwrap_or(f64::NAN).sqrt();
            let rf = num::ToPrimitive::to_f64(radius).unwrap_or(f64::NAN);
            let mut guess = (rf - dist) * 0.999;
            for _ in 0..60 {
                if guess <= 0.0 {
                    break;
                }
                if let Some(g) = Rat::from_float(guess) {
                    // need |v - c| + g <= radius, i.e. d2 <= (radius - g)^2
                    let rem = radius - &g;
                    if !num::Signed::is_negative(&rem) && d2 <= &rem * &rem {
                        return Ok((true, g));
                    }
                }
                guess *= 0.5;
            }
            Ok((false, zero))
        }
    }
}

/// Constructs an (n+1)-term progression anchored at `s`, taking the
/// admissible difference of smallest physical magnitude in the search
/// region (ties broken lexicographically on lattice coordinates).
/// Without an explicit region the search widens geometrically.
pub fn constructive_ap(
    cps: &CpsDescriptor,
    window: &Window,
    s: &LatticeCoords,
    n: usize,
    region: Option<&Region>,
) -> Result<Progression> {
    let dw = difference_window(cps, window, s, n)?;
    let t = match region {
        Some(r) => smallest_nonzero_in(cps, &dw.window, r)?.ok_or(Error::NoDifferenceFound)?,
        None => {
            let mut half_width = initial_search_width(&dw.window);
            let mut found = None;
            for _ in 0..12 {
                let r = Region::interval_f64(-half_width, half_width)?;
                if let Some(t) = smallest_nonzero_in(cps, &dw.window, &r)? {
                    found = Some(t);
                    break;
                }
                half_width *= 2.0;
            }
            found.ok_or(Error::NoDifferenceFound)?
        }
    };
    let start = dw.anchor.clone();
    let mut terms = vec![start.clone()];
    for _ in 0..n {
        terms.push(terms.last().unwrap().add(&t)?);
    }
    for term in &terms {
        let lc = term
            .lattice
            .clone()
            .ok_or_else(|| Error::ExactCoordsRequired("progression term".into()))?;
        if !is_member(cps, window, &lc)? {
            return Err(Error::NotInModelSet(term.describe()));
        }
    }
    Ok(Progression {
        start,
        diff: t,
        len: n + 1,
        witness: Some(dw.window),
    })
}

fn initial_search_width(window: &Window) -> f64 {
    let len = window.measure_f64();
    if len > 0.0 {
        2.0 * crate::golden::TAU_F64.powi(3) / len
    } else {
        100.0
    }
}

/// Smallest-|phys| nonzero model-set element in the region, ties broken
/// lexicographically on lattice coordinates.
fn smallest_nonzero_in(
    cps: &CpsDescriptor,
    window: &Window,
    region: &Region,
) -> Result<Option<Coords>> {
    let ps = enumerate_model_set(cps, window, region)?;
    let mut best: Option<&Coords> = None;
    for p in &ps.points {
        if p.coords.is_zero() {
            continue;
        }
        best = Some(match best {
            None => &p.coords,
            Some(b) => {
                if closer_to_origin(&p.coords, b) {
                    &p.coords
                } else {
                    b
                }
            }
        });
    }
    Ok(best.cloned())
}

fn closer_to_origin(a: &Coords, b: &Coords) -> bool {
    match (&a.exact, &b.exact) {
        (Some(x), Some(y)) if x.len() == 1 && y.len() == 1 => {
            let ax = x[0].abs();
            let by = y[0].abs();
            match ax.cmp(&by) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => cmp_coords(a, b) == std::cmp::Ordering::Less,
            }
        }
        _ => {
            let an = a.norm_f64();
            let bn = b.norm_f64();
            if an != bn {
                an < bn
            } else {
                cmp_coords(a, b) == std::cmp::Ordering::Less
            }
        }
    }
}

/// Empirical covering radius of the punctured set `model(U) \ {0}`.
/// Enumerates over `region` and samples over `region` shrunk by a
/// quarter of its width on each side.
pub fn punctured_covering_radius(
    cps: &CpsDescriptor,
    window: &Window,
    region: &Region,
    pitch: Option<f64>,
) -> Result<f64> {
    if !window.has_interior() {
        return Err(Error::InvalidWindow("window has no interior".into()));
    }
    let zero_inside = window.contains_golden(&GoldenRat::zero()).unwrap_or(false)
        || window
            .contains_rat_vec(&vec![
                Rat::from(num::BigInt::from(0));
                window.internal_dim()
            ])
            .unwrap_or(false);
    if !zero_inside {
        return Err(Error::InvalidWindow(
            "punctured covering radius needs 0 in the window".into(),
        ));
    }
    let ps = enumerate_model_set(cps, window, region)?;
    let punctured: Vec<_> = ps
        .points
        .iter()
        .filter(|p| !p.coords.is_zero())
        .cloned()
        .collect();
    if punctured.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let punctured = PointSet {
        points: punctured,
        provenance: ps.provenance.clone(),
        region: ps.region.clone(),
    };
    let w = region.widths_f64()[0];
    let quarter = Rat::from_float(w / 4.0)
        .ok_or_else(|| Error::InvalidRegion("non-finite region".into()))?;
    let sample = region.shrink(&quarter)?;
    crate::point_set::covering_radius_estimate(&punctured, &sample, pitch)
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundedGapRadius {
    pub value: f64,
    /// Exact value in golden standard-window mode.
    pub exact: Option<GoldenRat>,
    /// `(R_dense, R_step)` from the general split `R_dense + n * R_step`.
    pub parts: Option<(f64, f64)>,
}

/// Radius `R` such that every ball `B_R(x)` in the tested range contains
/// an (n+1)-term progression of the model set.
///
/// Golden scheme with the standard window returns the exact closed form
/// `2 (n^2 + 1) tau^2`. Otherwise the window splits as `V + U + ... + U`
/// with `V` its middle half and `U` a centered ball of radius
/// `inradius/(2n)`, and `R = R_dense(V) + n * R_step(U)` from empirical
/// covering radii over the test region.
pub fn bounded_gap_radius(
    cps: &CpsDescriptor,
    window: &Window,
    n: usize,
    test_region: Option<&Region>,
) -> Result<BoundedGapRadius> {
    if n < 1 {
        return Err(Error::InvalidConfig("step count must be >= 1".into()));
    }
    if !window.has_interior() {
        return Err(Error::InvalidWindow("window has no interior".into()));
    }
    if matches!(cps, CpsDescriptor::Golden) && *window == Window::fibonacci() {
        let c = 2 * (n as i64 * n as i64 + 1);
        // tau^2 = 1 + tau
        let exact = GoldenInt::new(c, c).to_rat();
        return Ok(BoundedGapRadius {
            value: exact.to_f64(),
            exact: Some(exact),
            parts: None,
        });
    }
    let region = test_region.ok_or_else(|| {
        Error::InvalidConfig("general bounded-gap mode needs a test region".into())
    })?;
    let v = window.middle_half()?;
    let u_radius = window.inradius()?.div_int(2 * n as i64);
    if u_radius.sign() <= 0 {
        return Err(Error::InvalidWindow("window inradius is zero".into()));
    }
    let u = match cps {
        CpsDescriptor::Golden => Window::centered(u_radius)?,
        CpsDescriptor::Numeric(nc) => {
            if !u_radius.is_rational() {
                return Err(Error::InvalidConfig(
                    "numeric schemes need rational window endpoints".into(),
                ));
            }
            Window::Ball {
                center: vec![Rat::from(num::BigInt::from(0)); nc.internal_dim],
                radius: u_radius.coeff_a().clone(),
            }
        }
    };
    let dense_ps = enumerate_model_set(cps, &v, region)?;
    let w = region.widths_f64()[0];
    let quarter = Rat::from_float(w / 4.0)
        .ok_or_else(|| Error::InvalidRegion("non-finite region".into()))?;
    let sample = region.shrink(&quarter)?;
    let r_dense = crate::point_set::covering_radius_estimate(&dense_ps, &sample, None)?;
    let r_step = punctured_covering_radius(cps, &u, region, None)?;
    Ok(BoundedGapRadius {
        value: r_dense + n as f64 * r_step,
        exact: None,
        parts: Some((r_dense, r_step)),
    })
}

/// Exact covering-radius bound `tau^3 / (b - a)` for golden model sets
/// of interval windows `(a, b)`.
pub fn interval_covering_radius_bound(a: &GoldenRat, b: &GoldenRat) -> Result<GoldenRat> {
    if a >= b {
        return Err(Error::InvalidWindow(format!("need a < b, got [{a}, {b})")));
    }
    let tau_cubed = GoldenInt::new(1, 2).to_rat(); // tau^3 = 1 + 2 tau
    Ok(tau_cubed.div(&(b - a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_set::Provenance;

    fn golden_coords(pairs: &[(i64, i64)]) -> Vec<Coords> {
        pairs
            .iter()
            .map(|&(m, n)| Coords::golden(GoldenInt::new(m, n)))
            .collect()
    }

    fn fib(lo: f64, hi: f64) -> PointSet {
        enumerate_model_set(
            &CpsDescriptor::Golden,
            &Window::fibonacci(),
            &Region::interval_f64(lo, hi).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn verify_ap_examples() {
        // 0, tau, 2 tau
        let pts = golden_coords(&[(0, 0), (0, 1), (0, 2)]);
        assert!(verify_ap(&pts, 0.0).unwrap());
        // 0, 1, 3
        let pts = golden_coords(&[(0, 0), (1, 0), (3, 0)]);
        assert!(!verify_ap(&pts, 0.0).unwrap());
        // the five-term progression with step 3 tau + 2
        let pts = golden_coords(&[(0, 0), (2, 3), (4, 6), (6, 9), (8, 12)]);
        assert!(verify_ap(&pts, 0.0).unwrap());
        // zero step is rejected
        let pts = golden_coords(&[(1, 0), (1, 0), (1, 0)]);
        assert!(!verify_ap(&pts, 0.0).unwrap());
        assert!(verify_ap(&golden_coords(&[(0, 0)]), 0.0).is_err());
    }

    #[test]
    fn bruteforce_on_integers() {
        let z = PointSet::integers(0, 4);
        let aps = find_aps_bruteforce(&z, 5).unwrap();
        assert_eq!(aps.len(), 1);
        assert_eq!(aps[0].len, 5);
        assert_eq!(aps[0].start.golden_lattice().unwrap(), GoldenInt::new(0, 0));
        assert_eq!(aps[0].diff.golden_lattice().unwrap(), GoldenInt::new(1, 0));

        let aps3 = find_aps_bruteforce(&z, 3).unwrap();
        let sig: Vec<(i64, i64, usize)> = aps3
            .iter()
            .map(|p| {
                (
                    p.start.golden_lattice().unwrap().m,
                    p.diff.golden_lattice().unwrap().m,
                    p.len,
                )
            })
            .collect();
        assert_eq!(sig, vec![(0, 1, 5), (0, 2, 3)]);
    }

    #[test]
    fn powers_of_two_have_no_triple() {
        let ps = PointSet::powers_of_two(10);
        assert!(find_aps_bruteforce(&ps, 3).unwrap().is_empty());
    }

    #[test]
    fn fibonacci_contains_figure_progression() {
        let ps = fib(0.0, 100.0);
        let aps = find_aps_bruteforce(&ps, 5).unwrap();
        let hit = aps.iter().find(|p| {
            p.start.golden_lattice() == Some(GoldenInt::new(0, 0))
                && p.diff.golden_lattice() == Some(GoldenInt::new(2, 3))
        });
        let hit = hit.expect("progression with step 3 tau + 2 from 0");
        assert!(hit.len >= 5);
        for term in hit.terms().unwrap().iter().take(5) {
            let g = term.golden_lattice().unwrap();
            assert!(is_member(
                &CpsDescriptor::Golden,
                &Window::fibonacci(),
                &LatticeCoords::Golden(g)
            )
            .unwrap());
        }
    }

    #[test]
    fn difference_window_formula() {
        let cps = CpsDescriptor::Golden;
        let w = Window::fibonacci();
        // anchor 0, five steps: [(-1 - 0)/5, (tau - 1 - 0)/5)
        let dw =
            difference_window(&cps, &w, &LatticeCoords::Golden(GoldenInt::zero()), 5).unwrap();
        let Window::Interval { lo, hi } = &dw.window else {
            panic!()
        };
        assert_eq!(lo, &GoldenRat::from_int(-1).div_int(5));
        assert_eq!(hi, &(&GoldenRat::tau() - &GoldenRat::from_int(1)).div_int(5));
        // one step recovers the window itself
        let dw1 =
            difference_window(&cps, &w, &LatticeCoords::Golden(GoldenInt::zero()), 1).unwrap();
        assert_eq!(dw1.window, w);
    }

    #[test]
    fn difference_window_matches_bruteforce_over_box() {
        let cps = CpsDescriptor::Golden;
        let w = Window::fibonacci();
        // anchor tau, two steps
        let s = GoldenInt::new(0, 1);
        let n = 2usize;
        let dw = difference_window(&cps, &w, &LatticeCoords::Golden(s), n).unwrap();
        let lim = 50i64;
        let mut direct = Vec::new();
        for m in -lim..=lim {
            for nn in -lim..=lim {
                let t = GoldenInt::new(m, nn);
                let ok = (0..=n as i64).all(|j| {
                    let term = s + t.scale(j);
                    is_member(&cps, &w, &LatticeCoords::Golden(term)).unwrap()
                });
                if ok {
                    direct.push(t);
                }
            }
        }
        let via_window =
            crate::cps::enumerate_by_coord_box(&dw.window, (-lim, lim), (-lim, lim)).unwrap();
        let mut direct_sorted = direct;
        direct_sorted.sort_by_key(|g| (g.m, g.n));
        let mut via_sorted = via_window;
        via_sorted.sort_by_key(|g| (g.m, g.n));
        assert_eq!(direct_sorted, via_sorted);
    }

    #[test]
    fn anchor_on_boundary_is_rejected() {
        let cps = CpsDescriptor::Golden;
        let w = Window::fibonacci();
        // star(-1) = -1 is the included endpoint but has zero slack
        let err = difference_window(&cps, &w, &LatticeCoords::Golden(GoldenInt::new(-1, 0)), 3);
        assert!(matches!(err, Err(Error::NoInteriorSlack(_))));
        // 1 is not in the model set at all
        let err = difference_window(&cps, &w, &LatticeCoords::Golden(GoldenInt::new(1, 0)), 3);
        assert!(matches!(err, Err(Error::NotInModelSet(_))));
    }

    #[test]
    fn constructive_ap_from_origin() {
        let cps = CpsDescriptor::Golden;
        let w = Window::fibonacci();
        let p =
            constructive_ap(&cps, &w, &LatticeCoords::Golden(GoldenInt::zero()), 4, None).unwrap();
        assert_eq!(p.len, 5);
        // the step 3 tau + 2 is admissible for four steps from 0
        let dw = DifferenceWindow {
            window: p.witness.clone().unwrap(),
            anchor: p.start.clone(),
            steps: 4,
        };
        assert!(dw
            .admits(&cps, &LatticeCoords::Golden(GoldenInt::new(2, 3)))
            .unwrap());
        // the chosen step is the closest admissible one: 1 + 2 tau
        assert_eq!(p.diff.golden_lattice().unwrap(), GoldenInt::new(1, 2));
        let terms = p.terms().unwrap();
        assert!(verify_ap(&terms, 0.0).unwrap());
    }

    #[test]
    fn constructive_ap_two_terms() {
        let cps = CpsDescriptor::Golden;
        let w = Window::fibonacci();
        let p =
            constructive_ap(&cps, &w, &LatticeCoords::Golden(GoldenInt::zero()), 1, None).unwrap();
        assert_eq!(p.len, 2);
        assert!(!p.diff.is_zero());
    }

    #[test]
    fn constructive_ap_from_tau_three_steps() {
        let cps = CpsDescriptor::Golden;
        let w = Window::fibonacci();
        let s = GoldenInt::new(0, 1);
        let p = constructive_ap(&cps, &w, &LatticeCoords::Golden(s), 3, None).unwrap();
        let terms = p.terms().unwrap();
        assert_eq!(terms.len(), 4);
        for term in &terms {
            let g = term.golden_lattice().unwrap();
            assert!(is_member(&cps, &w, &LatticeCoords::Golden(g)).unwrap());
        }
        // brute force over |m|,|n| <= 50 finds no admissible step closer
        // to the origin than the chosen one
        let dw = difference_window(&cps, &w, &LatticeCoords::Golden(s), 3).unwrap();
        let chosen = p.diff.golden_lattice().unwrap();
        let chosen_abs = chosen.to_rat().abs();
        for m in -50..=50i64 {
            for n in -50..=50i64 {
                let t = GoldenInt::new(m, n);
                if t.is_zero() {
                    continue;
                }
                if dw.admits(&cps, &LatticeCoords::Golden(t)).unwrap() {
                    assert!(t.to_rat().abs() >= chosen_abs, "closer step {t:?}");
                }
            }
        }
    }

    #[test]
    fn punctured_radius_examples() {
        let cps = CpsDescriptor::Golden;
        // U = (-(tau-1), tau-1) around 0
        let tau1 = &GoldenRat::tau() - &GoldenRat::from_int(1);
        let u = Window::centered(tau1).unwrap();
        let region = Region::interval_f64(-20.0, 20.0).unwrap();
        let r = punctured_covering_radius(&cps, &u, &region, None).unwrap();
        assert!(r.is_finite() && r > 0.0);

        // a wide box window accepts every lattice point; the lattice is
        // dense so the radius collapses to sampling scale
        let wide = Window::Box {
            dims: vec![(
                Rat::from(num::BigInt::from(-10)),
                Rat::from(num::BigInt::from(10)),
            )],
        };
        let region = Region::interval_f64(-10.0, 10.0).unwrap();
        let r = punctured_covering_radius(&cps, &wide, &region, Some(0.05)).unwrap();
        assert!(r <= 1.0);

        let degenerate = Window::interval(GoldenRat::zero(), GoldenRat::zero()).unwrap();
        assert!(matches!(
            punctured_covering_radius(&cps, &degenerate, &region, None),
            Err(Error::InvalidWindow(_))
        ));
    }

    #[test]
    fn bounded_gap_closed_form() {
        let cps = CpsDescriptor::Golden;
        let w = Window::fibonacci();
        let r4 = bounded_gap_radius(&cps, &w, 4, None).unwrap();
        // 34 tau^2
        assert_eq!(r4.exact.unwrap(), GoldenInt::new(34, 34).to_rat());
        assert!((r4.value - 89.01315561749643).abs() < 1e-9);
        let r1 = bounded_gap_radius(&cps, &w, 1, None).unwrap();
        assert_eq!(r1.exact.unwrap(), GoldenInt::new(4, 4).to_rat());
        assert!((r1.value - 10.47213595499958).abs() < 1e-9);
    }

    #[test]
    fn bounded_gap_general_split() {
        let cps = CpsDescriptor::Golden;
        let w = Window::interval(
            GoldenRat::zero(),
            GoldenRat::from_rat(Rat::new(num::BigInt::from(1), num::BigInt::from(5))),
        )
        .unwrap();
        let region = Region::interval_f64(-2000.0, 2000.0).unwrap();
        let r = bounded_gap_radius(&cps, &w, 2, Some(&region)).unwrap();
        let (dense, step) = r.parts.unwrap();
        assert!(dense > 0.0 && step > 0.0);
        assert!((r.value - (dense + 2.0 * step)).abs() < 1e-12);
        // the split radius serves its purpose: balls of radius R around
        // sampled centers contain 3-term progressions
        let ps = enumerate_model_set(&cps, &w, &Region::interval_f64(-1500.0, 1500.0).unwrap())
            .unwrap();
        for c in (-5..5).map(|i| i as f64 * 100.0) {
            let ball: Vec<_> = ps
                .points
                .iter()
                .filter(|p| (p.phys1() - c).abs() <= r.value)
                .cloned()
                .collect();
            let ball_ps = PointSet {
                points: ball,
                provenance: Provenance::Derived {
                    label: "ball".into(),
                },
                region: Region::interval_f64(c - r.value, c + r.value).unwrap(),
            };
            let found = find_first_ap(&ball_ps, 3).unwrap();
            assert!(found.is_some(), "no 3-term progression near {c}");
        }
    }

    #[test]
    fn interval_bound_values() {
        let tau = GoldenRat::tau();
        let one = GoldenRat::from_int(1);
        // (0, tau - 1): tau^3/(tau-1) = tau^4 = 2 + 3 tau
        let b = interval_covering_radius_bound(&GoldenRat::zero(), &(&tau - &one)).unwrap();
        assert_eq!(b, GoldenInt::new(2, 3).to_rat());
        // (-1, tau - 1): tau^3/tau = tau^2
        let b = interval_covering_radius_bound(&GoldenRat::from_int(-1), &(&tau - &one)).unwrap();
        assert_eq!(b, GoldenInt::new(1, 1).to_rat());
        // (0, 0.1): about 42.36
        let b = interval_covering_radius_bound(
            &GoldenRat::zero(),
            &GoldenRat::from_rat(Rat::new(num::BigInt::from(1), num::BigInt::from(10))),
        )
        .unwrap();
        assert!((b.to_f64() - 42.3606797749979).abs() < 1e-9);
        assert!(interval_covering_radius_bound(&one, &GoldenRat::zero()).is_err());
    }
}
