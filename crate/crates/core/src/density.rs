//! Densities along the centered cubes `[-n, n]^d`, the symmetric-
//! difference density metric, almost periods, translate intersections,
//! autocorrelation coefficients, the maximal-density comparison, and a
//! linearly-independent perturbation of the integers with no three-term
//! progressions.

use num::bigint::BigInt;
use num::{Signed, ToPrimitive};
use serde::Serialize;

use crate::cps::{enumerate_model_set, CpsDescriptor};
use crate::error::{Error, Result};
use crate::fixed::exp_over_3pow;
use crate::golden::{GoldenRat, Rat};
use crate::point_set::{Coords, PointSet, Provenance, SetIndex};
use crate::window::{Region, Window};

/// The averaging cubes `A_n = [-n, n]^d` at a strictly increasing list
/// of indices.
#[derive(Debug, Clone, Serialize)]
pub struct AveragingSequence {
    pub dim: usize,
    pub indices: Vec<u64>,
}

impl AveragingSequence {
    pub fn cubes(dim: usize, indices: Vec<u64>) -> Result<Self> {
        if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) || indices[0] == 0 {
            return Err(Error::InvalidConfig(
                "averaging indices must be positive and strictly increasing".into(),
            ));
        }
        Ok(AveragingSequence { dim, indices })
    }

    /// Dyadic indices 1, 2, 4, ... capped by and ending at `max`.
    pub fn dyadic_up_to(dim: usize, max: u64) -> Self {
        let mut indices = Vec::new();
        let mut n = 1u64;
        while n < max {
            indices.push(n);
            n = n.saturating_mul(2);
        }
        indices.push(max);
        AveragingSequence { dim, indices }
    }

    pub fn largest(&self) -> u64 {
        *self.indices.last().expect("non-empty by construction")
    }

    pub fn region(&self, n: u64) -> Region {
        Region::centered_cube(self.dim, n)
    }

    pub fn volume(&self, n: u64) -> f64 {
        (2.0 * n as f64).powi(self.dim as i32)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityEstimate {
    /// `(n, count/(2n)^d)` per averaging index.
    pub partials: Vec<(u64, f64)>,
    /// The partial at the largest index.
    pub value: f64,
    /// Spread (max - min) of the partials over the tail half; a
    /// finite-data stand-in for convergence of the upper density.
    pub oscillation: f64,
}

fn estimate_from_counts(counts: Vec<(u64, usize)>, avg: &AveragingSequence) -> DensityEstimate {
    let partials: Vec<(u64, f64)> = counts
        .into_iter()
        .map(|(n, c)| (n, c as f64 / avg.volume(n)))
        .collect();
    let value = partials.last().map(|(_, v)| *v).unwrap_or(0.0);
    let tail = &partials[partials.len() / 2..];
    let max = tail.iter().map(|(_, v)| *v).fold(f64::NEG_INFINITY, f64::max);
    let min = tail.iter().map(|(_, v)| *v).fold(f64::INFINITY, f64::min);
    DensityEstimate {
        partials,
        value,
        oscillation: if max >= min { max - min } else { 0.0 },
    }
}

/// Exact count of points inside the closed cube `[-n, n]^d`.
fn count_in_cube(ps: &PointSet, n: u64) -> usize {
    let region = Region::centered_cube(ps.dim(), n);
    ps.points
        .iter()
        .filter(|p| match &p.coords.exact {
            Some(e) => region.contains_exact(e),
            None => region.contains_f64(&p.coords.approx),
        })
        .count()
}

fn require_covers(ps: &PointSet, avg: &AveragingSequence, what: &str) -> Result<()> {
    let largest = avg.region(avg.largest());
    let zero = Rat::from_integer(BigInt::from(0));
    if !ps.region.covers_with_margin(&largest, &zero) {
        return Err(Error::RegionMismatch(format!(
            "{what}: enumerated region {} does not cover the largest averaging cube {}",
            ps.region.describe(),
            largest.describe()
        )));
    }
    Ok(())
}

/// Point-count densities along the averaging cubes.
pub fn density(ps: &PointSet, avg: &AveragingSequence) -> Result<DensityEstimate> {
    if ps.dim() != avg.dim {
        return Err(Error::DimensionMismatch("averaging dimension".into()));
    }
    require_covers(ps, avg, "density")?;
    let counts = avg
        .indices
        .iter()
        .map(|&n| (n, count_in_cube(ps, n)))
        .collect();
    Ok(estimate_from_counts(counts, avg))
}

/// Finite-scale symmetric-difference density between two point sets,
/// matched exactly where both carry exact coordinates and within 1e-9
/// otherwise.
pub fn d_b(lam: &PointSet, gam: &PointSet, avg: &AveragingSequence) -> Result<DensityEstimate> {
    if lam.dim() != avg.dim || gam.dim() != avg.dim {
        return Err(Error::DimensionMismatch("averaging dimension".into()));
    }
    require_covers(lam, avg, "symmetric difference")?;
    require_covers(gam, avg, "symmetric difference")?;
    let lam_index = SetIndex::build(lam, 1e-9);
    let gam_index = SetIndex::build(gam, 1e-9);
    let counts = avg
        .indices
        .iter()
        .map(|&n| {
            let region = Region::centered_cube(avg.dim, n);
            let inside = |c: &Coords| match &c.exact {
                Some(e) => region.contains_exact(e),
                None => region.contains_f64(&c.approx),
            };
            let only_lam = lam
                .points
                .iter()
                .filter(|p| inside(&p.coords) && !gam_index.contains(&p.coords))
                .count();
            let only_gam = gam
                .points
                .iter()
                .filter(|p| inside(&p.coords) && !lam_index.contains(&p.coords))
                .count();
            (n, only_lam + only_gam)
        })
        .collect();
    Ok(estimate_from_counts(counts, avg))
}

/// Symmetric-difference count between `a+Λ` and `b+Λ` inside `A_n`,
/// using membership queries against the enumerated fragment. Every
/// query is validated to land inside the fragment's region.
fn translate_symdiff_count(
    lam: &PointSet,
    index: &SetIndex,
    a: &Coords,
    b: &Coords,
    n: u64,
) -> Result<usize> {
    // x in (a+Λ) Δ (b+Λ) iff (x-a ∈ Λ) xor (x-b ∈ Λ); candidates are
    // x = y + a and x = y + b for y ∈ Λ.
    let region = Region::centered_cube(lam.dim(), n);
    let mut count = 0usize;
    for (first, second) in [(a, b), (b, a)] {
        for p in &lam.points {
            let x = p.coords.add(first)?;
            let inside = match &x.exact {
                Some(e) => region.contains_exact(e),
                None => region.contains_f64(&x.approx),
            };
            if !inside {
                continue;
            }
            let shifted = x.sub(second)?;
            let in_fragment = match &shifted.exact {
                Some(e) => lam.region.contains_exact(e),
                None => lam.region.contains_f64(&shifted.approx),
            };
            if !in_fragment {
                return Err(Error::RegionMismatch(
                    "translate comparison leaves the enumerated fragment".into(),
                ));
            }
            if !index.contains(&shifted) {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, Serialize)]
pub struct AlmostPeriod {
    pub t: Coords,
    /// Finite-scale `d(Λ, t+Λ)` at the largest averaging index.
    pub d_value: f64,
}

/// All candidate translations `t` in the search region with
/// `d(Λ, t+Λ) < eps` at the largest averaging index.
///
/// Candidates are the differences of Λ realized inside a fragment
/// around the search region: a translation outside `Λ - Λ` shifts a
/// locally finite set completely off itself, so it can never come
/// close.
pub fn almost_periods(
    lam: &PointSet,
    eps: f64,
    search: &Region,
    avg: &AveragingSequence,
) -> Result<Vec<AlmostPeriod>> {
    if lam.dim() != 1 || search.dim() != 1 {
        return Err(Error::DimensionMismatch(
            "almost-period scan is one-dimensional".into(),
        ));
    }
    require_covers(lam, avg, "almost periods")?;
    let index = SetIndex::build(lam, 1e-9);
    let candidates = realized_differences(lam, search)?;
    if candidates.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let n = avg.largest();
    let zero = Coords::golden(crate::golden::GoldenInt::zero());
    let mut out = Vec::new();
    for t in candidates {
        let count = translate_symdiff_count(lam, &index, &zero, &t, n)?;
        let d_value = count as f64 / avg.volume(n);
        if d_value < eps {
            out.push(AlmostPeriod { t, d_value });
        }
    }
    Ok(out)
}

/// Distinct differences of `lam` falling inside `search`, realized by
/// point pairs drawn from a fragment around the search region.
fn realized_differences(lam: &PointSet, search: &Region) -> Result<Vec<Coords>> {
    let (s_lo, s_hi) = (
        search.dims[0].0.to_f64().unwrap_or(f64::NAN),
        search.dims[0].1.to_f64().unwrap_or(f64::NAN),
    );
    let span = (s_hi - s_lo).abs().max(s_lo.abs()).max(s_hi.abs());
    let frag_half = span + 100.0;
    let xs = lam.phys1_values();
    let lo_i = xs.partition_point(|v| *v < -frag_half);
    let hi_i = xs.partition_point(|v| *v <= frag_half);
    let frag = &lam.points[lo_i..hi_i];
    let frag_xs = &xs[lo_i..hi_i];
    let mut seen: std::collections::HashSet<(i64, i64)> = std::collections::HashSet::new();
    let mut seen_general: std::collections::HashSet<Vec<u64>> = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (i, p) in frag.iter().enumerate() {
        let x = frag_xs[i];
        // want x - y in [s_lo, s_hi] => y in [x - s_hi, x - s_lo]
        let from = frag_xs.partition_point(|v| *v < x - s_hi - 1e-9);
        let to = frag_xs.partition_point(|v| *v <= x - s_lo + 1e-9);
        for q in &frag[from..to] {
            let d = p.coords.sub(&q.coords)?;
            let inside = match &d.exact {
                Some(e) => search.contains_exact(e),
                None => search.contains_f64(&d.approx),
            };
            if !inside {
                continue;
            }
            let fresh = match d.golden_lattice() {
                Some(g) => seen.insert((g.m, g.n)),
                None => seen_general.insert(d.approx.iter().map(|v| v.to_bits()).collect()),
            };
            if fresh {
                out.push(d);
            }
        }
    }
    out.sort_by(crate::point_set::cmp_coords);
    Ok(out)
}

/// The translate intersection `Λ ∩ (t+Λ) ∩ ... ∩ (nt+Λ)`: survivors
/// are exactly the points `s` with `s, s-t, ..., s-nt` all in Λ. The
/// result's region shrinks to where every membership was decidable.
pub fn intersect_translates(lam: &PointSet, t: &Coords, n: usize) -> Result<PointSet> {
    let index = SetIndex::build(lam, 1e-9);
    // Valid region: x - k t must stay inside the fragment for all k.
    // Rational translates shift the region exactly; otherwise pad the
    // float bound outward so decidability is never overstated.
    let t_bounds: Vec<Rat> = match &t.exact {
        Some(e) if e.iter().all(|v| v.is_rational()) => {
            e.iter().map(|v| v.coeff_a().clone()).collect()
        }
        _ => t
            .approx
            .iter()
            .map(|v| {
                Rat::from_float(v + v.abs() * 1e-12 + 1e-12)
                    .unwrap_or_else(|| Rat::from_integer(BigInt::from(0)))
            })
            .collect(),
    };
    let dims = lam
        .region
        .dims
        .iter()
        .zip(&t_bounds)
        .map(|((lo, hi), tv)| {
            let shift = tv * Rat::from_integer(BigInt::from(n as i64));
            if tv.is_negative() {
                (lo.clone(), hi + &shift)
            } else {
                (lo + &shift, hi.clone())
            }
        })
        .collect::<Vec<_>>();
    let region = Region::new(dims)?;
    let mut points = Vec::new();
    for p in &lam.points {
        let inside = match &p.coords.exact {
            Some(e) => region.contains_exact(e),
            None => region.contains_f64(&p.coords.approx),
        };
        if !inside {
            continue;
        }
        let mut ok = true;
        let mut cur = p.coords.clone();
        for _ in 1..=n {
            cur = cur.sub(t)?;
            if !index.contains(&cur) {
                ok = false;
                break;
            }
        }
        if ok {
            points.push(p.clone());
        }
    }
    Ok(PointSet {
        points,
        provenance: Provenance::Derived {
            label: format!("translate-intersection(n={n})"),
        },
        region,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TranslateEntry {
    pub t: Coords,
    pub d_value: f64,
    pub gamma_density: f64,
    pub density_bound: f64,
    pub density_ok: bool,
    /// Exact finite count of `Λ \ Γ_t` inside the check cube.
    pub chain_lhs: usize,
    /// Sum of consecutive-translate symmetric-difference counts.
    pub chain_rhs: usize,
    pub chain_ok: bool,
    /// Every surplus point belongs to one of the consecutive
    /// symmetric differences, checked exactly on a trimmed cube.
    pub inclusion_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntersectionReport {
    pub density: f64,
    pub threshold: f64,
    pub eps: f64,
    pub steps: usize,
    pub entries: Vec<TranslateEntry>,
}

/// For every almost period below the derived threshold
/// `eps * density / n`, the n-fold translate intersection must retain
/// at least `(1 - eps)` of the density (minus `tol`), the finite chain
/// bound must hold as exact counts, and the surplus-set inclusion must
/// hold exactly on a trimmed cube.
pub fn verify_intersection_density(
    lam: &PointSet,
    eps: f64,
    n: usize,
    avg: &AveragingSequence,
    search: &Region,
    tol: f64,
) -> Result<IntersectionReport> {
    if !(0.0..1.0).contains(&eps) || eps == 0.0 {
        return Err(Error::InvalidConfig("eps must be in (0, 1)".into()));
    }
    if n < 1 {
        return Err(Error::InvalidConfig("need n >= 1".into()));
    }
    let base = density(lam, avg)?;
    if base.value <= 0.0 {
        return Err(Error::InvalidConfig("set has zero finite density".into()));
    }
    let threshold = eps * base.value / n as f64;
    let periods = almost_periods(lam, threshold, search, avg)?;
    let index = SetIndex::build(lam, 1e-9);
    let n_idx = avg.largest();
    let mut entries = Vec::new();
    for ap in periods {
        let t = ap.t;
        let gamma = intersect_translates(lam, &t, n)?;
        let gamma_density = density(&gamma, avg)?.value;
        let density_bound = (1.0 - eps) * base.value - tol;
        let density_ok = gamma_density >= density_bound;

        // Exact chain bound at the largest cube: points of Λ ∩ A_n
        // missing from Γ_t, against the sum of consecutive symmetric
        // differences.
        let cube = Region::centered_cube(1, n_idx);
        let gamma_index = SetIndex::build(&gamma, 1e-9);
        let chain_lhs = lam
            .points
            .iter()
            .filter(|p| {
                let inside = match &p.coords.exact {
                    Some(e) => cube.contains_exact(e),
                    None => cube.contains_f64(&p.coords.approx),
                };
                inside && !gamma_index.contains(&p.coords)
            })
            .count();
        let mut chain_rhs = 0usize;
        for k in 0..n {
            let a = t.scale_int(k as i64);
            let b = t.scale_int((k + 1) as i64);
            chain_rhs += translate_symdiff_count(lam, &index, &a, &b, n_idx)?;
        }
        let chain_ok = chain_lhs <= chain_rhs;

        // Exact surplus inclusion on the cube trimmed by n|t|.
        let trim = (n as f64) * t.norm_f64();
        let trimmed = n_idx as f64 - trim;
        let inclusion_ok = if trimmed > 0.0 {
            let trimmed_cube = Region::interval_f64(-trimmed, trimmed)?;
            let mut ok = true;
            'points: for p in &lam.points {
                let inside = match &p.coords.exact {
                    Some(e) => trimmed_cube.contains_exact(e),
                    None => trimmed_cube.contains_f64(&p.coords.approx),
                };
                if !inside || gamma_index.contains(&p.coords) {
                    continue;
                }
                // s must satisfy (s - kt in Λ) xor (s - (k+1)t in Λ)
                // for some k.
                for k in 0..n {
                    let with_k = index.contains(&p.coords.sub(&t.scale_int(k as i64))?);
                    let with_k1 = index.contains(&p.coords.sub(&t.scale_int((k + 1) as i64))?);
                    if with_k != with_k1 {
                        continue 'points;
                    }
                }
                ok = false;
                break;
            }
            ok
        } else {
            true
        };

        entries.push(TranslateEntry {
            t,
            d_value: ap.d_value,
            gamma_density,
            density_bound,
            density_ok,
            chain_lhs,
            chain_rhs,
            chain_ok,
            inclusion_ok,
        });
    }
    Ok(IntersectionReport {
        density: base.value,
        threshold,
        eps,
        steps: n,
        entries,
    })
}

/// Finite-n autocorrelation coefficients `eta(z)` for differences
/// inside `z_cap`, from the fragment `Λ ∩ [-n, n]`.
pub fn autocorrelation_coeffs(
    lam: &PointSet,
    n: u64,
    z_cap: &Region,
) -> Result<Vec<(Coords, f64)>> {
    if lam.dim() != 1 {
        return Err(Error::DimensionMismatch(
            "autocorrelation scan is one-dimensional".into(),
        ));
    }
    let avg = AveragingSequence::cubes(1, vec![n])?;
    require_covers(lam, &avg, "autocorrelation")?;
    let cube = Region::centered_cube(1, n);
    let inside_cube = lam.restrict(&cube);
    // Locally finite difference set: distinct differences in the cap
    // must keep positive gaps.
    let zs = realized_differences(&inside_cube, z_cap)?;
    for w in zs.windows(2) {
        let gap = w[1].approx[0] - w[0].approx[0];
        if gap.abs() < 1e-9 {
            return Err(Error::FlcCheckFailed(1e-9));
        }
    }
    let index = SetIndex::build(&inside_cube, 1e-9);
    let vol = avg.volume(n);
    let mut out = Vec::new();
    for z in zs {
        let mut pairs = 0usize;
        for p in &inside_cube.points {
            if let Ok(shifted) = p.coords.sub(&z) {
                if index.contains(&shifted) {
                    pairs += 1;
                }
            }
        }
        out.push((z, pairs as f64 / vol));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct MaxDensityReport {
    /// `measure(window) / covolume`, the density a maximal-density
    /// model set attains.
    pub target: f64,
    pub partials: Vec<(u64, f64)>,
    pub value: f64,
    pub final_gap: f64,
}

/// Compares the empirical density of the model set against
/// `dens(lattice) * measure(window)` along the averaging cubes.
pub fn max_density_check(
    cps: &CpsDescriptor,
    window: &Window,
    avg: &AveragingSequence,
) -> Result<MaxDensityReport> {
    let n = avg.largest();
    let region = Region::centered_cube(avg.dim, n);
    let ps = enumerate_model_set(cps, window, &region)?;
    let est = density(&ps, avg)?;
    let target = window.measure_f64() * cps.lattice_density_f64();
    Ok(MaxDensityReport {
        target,
        value: est.value,
        final_gap: (est.value - target).abs(),
        partials: est.partials,
    })
}

/// The explicit linearly-independent perturbation of the integers:
/// `0`, `n + e^(2n+2)/3^(2n+2)` and `-n + e^(2n+1)/3^(2n+1)` for
/// `1 <= n <= count`, evaluated in fixed-point decimals.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleSet {
    pub count: u32,
    pub digits: u32,
    pub point_set: PointSet,
}

const COUNTEREXAMPLE_N_GUARD: u32 = 400;

pub fn counterexample_set(count: u32, digits: u32) -> Result<CounterexampleSet> {
    if count == 0 {
        return Err(Error::InvalidConfig("need count >= 1".into()));
    }
    if count > COUNTEREXAMPLE_N_GUARD {
        return Err(Error::GuardExceeded {
            what: format!("counterexample size {count}"),
            limit: COUNTEREXAMPLE_N_GUARD.to_string(),
        });
    }
    // The smallest offset is (e/3)^(2 count + 2), about
    // 0.04284 (2 count + 2) decimal digits below one; keep at least
    // fifty significant digits for it.
    let smallest_mag = (0.042843f64 * (2.0 * count as f64 + 2.0)).ceil() as u32;
    let scale = digits + 20;
    if scale < smallest_mag + 50 {
        return Err(Error::PrecisionInsufficient {
            digits,
            n: count,
            needed: smallest_mag + 30,
        });
    }
    let mut coords = Vec::with_capacity(2 * count as usize + 1);
    coords.push(Coords::rational(Rat::from_integer(BigInt::from(0))));
    let mut last_pos: Option<Rat> = None;
    let mut last_neg: Option<Rat> = None;
    for n in 1..=count {
        let a_pos = exp_over_3pow(2 * n + 2, scale).to_rat();
        let a_neg = exp_over_3pow(2 * n + 1, scale).to_rat();
        // offsets decrease strictly along each side
        if let Some(prev) = &last_pos {
            debug_assert!(&a_pos < prev);
        }
        if let Some(prev) = &last_neg {
            debug_assert!(&a_neg < prev);
        }
        last_pos = Some(a_pos.clone());
        last_neg = Some(a_neg.clone());
        coords.push(Coords::rational(Rat::from_integer(BigInt::from(n)) + a_pos));
        coords.push(Coords::rational(
            Rat::from_integer(BigInt::from(-(n as i64))) + a_neg,
        ));
    }
    let region = Region::interval_f64(-(count as f64) - 1.0, count as f64 + 1.0)?;
    let point_set = PointSet::from_coords(
        coords,
        Provenance::Explicit {
            label: format!("integer-perturbation(count={count}, digits={digits})"),
        },
        region,
    );
    if point_set.len() != 2 * count as usize + 1 {
        return Err(Error::CertificateFailed(
            "perturbed points collided; precision too low".into(),
        ));
    }
    Ok(CounterexampleSet {
        count,
        digits,
        point_set,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct No3ApReport {
    /// Smallest `|2b - a - c|` over triples `a < b < c`.
    pub min_residual: f64,
    /// Exact value when the set carries exact coordinates.
    pub min_residual_exact: Option<String>,
    /// Indices of the minimizing triple.
    pub argmin: (usize, usize, usize),
    pub tol: f64,
    pub passes: bool,
}

const NO3AP_GUARD: usize = 5000;

/// Exhaustive three-term-progression residual scan: for every pair
/// `(a, c)` the middle elements nearest `(a+c)/2` are inspected, with a
/// float prefilter and exact confirmation of every candidate near the
/// minimum or the tolerance. Assumes point gaps far above 1e-12.
pub fn verify_no_3ap(ps: &PointSet, tol: f64) -> Result<No3ApReport> {
    if ps.len() > NO3AP_GUARD {
        return Err(Error::GuardExceeded {
            what: format!("residual scan over {} points", ps.len()),
            limit: NO3AP_GUARD.to_string(),
        });
    }
    if ps.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: ps.len(),
        });
    }
    if ps.dim() != 1 {
        return Err(Error::DimensionMismatch("residual scan is 1-d".into()));
    }
    let xs = ps.phys1_values();
    let len = xs.len();
    let mut candidates: Vec<(usize, usize, usize, f64)> = Vec::new();
    let mut float_min = f64::INFINITY;
    for i in 0..len {
        for k in i + 2..len {
            let target = xs[i] + xs[k];
            let half = target / 2.0;
            let j0 = xs.partition_point(|v| *v < half);
            for j in j0.saturating_sub(2)..=(j0 + 2).min(len - 1) {
                if j <= i || j >= k {
                    continue;
                }
                let res = (2.0 * xs[j] - target).abs();
                float_min = float_min.min(res);
                candidates.push((i, j, k, res));
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::TooFewPoints { needed: 3, got: 2 });
    }
    let margin = 1e-9;
    let cut = (float_min + margin).max(tol + margin);
    match ps.exact_keys() {
        Some(keys) => {
            let mut best: Option<(GoldenRat, (usize, usize, usize))> = None;
            for (i, j, k, res) in candidates {
                if res > cut {
                    continue;
                }
                let exact = &(&keys[j][0].scale_int(2) - &keys[i][0]) - &keys[k][0];
                let exact = exact.abs();
                best = Some(match best {
                    None => (exact, (i, j, k)),
                    Some((b, arg)) => {
                        if exact < b {
                            (exact, (i, j, k))
                        } else {
                            (b, arg)
                        }
                    }
                });
            }
            let (exact, argmin) = best.expect("candidate below the cut exists");
            let tol_rat = GoldenRat::from_rat(
                Rat::from_float(tol).unwrap_or_else(|| Rat::from_integer(BigInt::from(0))),
            );
            Ok(No3ApReport {
                min_residual: exact.to_f64(),
                min_residual_exact: Some(exact.to_string()),
                argmin,
                tol,
                passes: exact > tol_rat,
            })
        }
        None => {
            let (i, j, k, res) = candidates
                .iter()
                .cloned()
                .min_by(|a, b| a.3.total_cmp(&b.3))
                .expect("non-empty");
            Ok(No3ApReport {
                min_residual: res,
                min_residual_exact: None,
                argmin: (i, j, k),
                tol,
                passes: res > tol,
            })
        }
    }
}
