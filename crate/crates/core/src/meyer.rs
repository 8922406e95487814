//! Meyer-set diagnostics: difference sets, relative-denseness and
//! uniform-discreteness reports, and finite translation covers relating
//! a Meyer set to a covering model set.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::golden::Rat;
use crate::point_set::{
    cmp_coords, covering_radius_estimate, min_gap, Coords, PointEntry, PointSet, Provenance,
    SetIndex,
};
use crate::window::Region;

const DIFF_PAIR_GUARD: u128 = 40_000_000;
const COVER_GUARD: usize = 64;

/// `{x - y : x, y in ps}` clipped to `cap`, with exact coordinates and
/// exact deduplication.
pub fn difference_set(ps: &PointSet, cap: &Region) -> Result<PointSet> {
    let n = ps.len() as u128;
    if ps.dim() == 1 {
        // Sorted points: for each x only the y with x - y inside the cap
        // matter, found by binary search.
        let lo = cap.dims[0].0.to_f64_lossy();
        let hi = cap.dims[0].1.to_f64_lossy();
        let xs = ps.phys1_values();
        let mut out: Vec<Coords> = Vec::new();
        for (i, &x) in xs.iter().enumerate() {
            // need y with x - y in [lo, hi] => y in [x - hi, x - lo]
            let from = xs.partition_point(|v| *v < x - hi - 1e-9);
            let to = xs.partition_point(|v| *v <= x - lo + 1e-9);
            if (out.len() as u128) + ((to - from) as u128) > DIFF_PAIR_GUARD {
                return Err(Error::GuardExceeded {
                    what: "difference-set size".into(),
                    limit: DIFF_PAIR_GUARD.to_string(),
                });
            }
            for j in from..to {
                let d = ps.points[i].coords.sub(&ps.points[j].coords)?;
                let inside = match &d.exact {
                    Some(e) => cap.contains_exact(e),
                    None => cap.contains_f64(&d.approx),
                };
                if inside {
                    out.push(d);
                }
            }
        }
        Ok(PointSet::from_coords(
            out,
            Provenance::Derived {
                label: "difference-set".into(),
            },
            cap.clone(),
        ))
    } else {
        if n * n > DIFF_PAIR_GUARD {
            return Err(Error::GuardExceeded {
                what: format!("difference set over {n} points"),
                limit: DIFF_PAIR_GUARD.to_string(),
            });
        }
        let mut out = Vec::new();
        for p in &ps.points {
            for q in &ps.points {
                let d = p.coords.sub(&q.coords)?;
                let inside = match &d.exact {
                    Some(e) => cap.contains_exact(e),
                    None => cap.contains_f64(&d.approx),
                };
                if inside {
                    out.push(d);
                }
            }
        }
        Ok(PointSet::from_coords(
            out,
            Provenance::Derived {
                label: "difference-set".into(),
            },
            cap.clone(),
        ))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MeyerCheckParams {
    /// Uniform discreteness passes when the difference-set gap stays at
    /// or above this scale.
    pub discreteness_threshold: f64,
    /// Relative denseness passes when the empirical covering radius
    /// stays below this; defaults to an eighth of the region width.
    pub denseness_threshold: Option<f64>,
    /// Cap region for the difference set; defaults to the full span.
    pub diff_cap: Option<Region>,
    pub pitch: Option<f64>,
}

impl Default for MeyerCheckParams {
    fn default() -> Self {
        MeyerCheckParams {
            discreteness_threshold: 1e-3,
            denseness_threshold: None,
            diff_cap: None,
            pitch: None,
        }
    }
}

/// Finite-scale Meyer diagnostics. Thresholds are always reported next
/// to the booleans they produced; a finite sample cannot certify the
/// infinite claims.
#[derive(Debug, Clone, Serialize)]
pub struct MeyerReport {
    pub region: Region,
    pub covering_radius: f64,
    pub denseness_threshold: f64,
    pub relatively_dense: bool,
    pub diff_min_gap: f64,
    pub discreteness_threshold: f64,
    pub diff_uniformly_discrete: bool,
    pub diff_count: usize,
}

pub fn check_meyer(ps: &PointSet, region: &Region, params: &MeyerCheckParams) -> Result<MeyerReport> {
    if ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let covering_radius = covering_radius_estimate(ps, region, params.pitch)?;
    let width = region.widths_f64()[0];
    let denseness_threshold = params.denseness_threshold.unwrap_or(width / 8.0);
    let cap = match &params.diff_cap {
        Some(c) => c.clone(),
        None => {
            let w = Rat::from_float(width).ok_or_else(|| {
                Error::InvalidRegion("non-finite region width".into())
            })?;
            Region::interval(-w.clone(), w)?
        }
    };
    let diff = difference_set(ps, &cap)?;
    let diff_min_gap = if diff.len() >= 2 {
        min_gap(&diff)?
    } else {
        f64::INFINITY
    };
    Ok(MeyerReport {
        region: region.clone(),
        covering_radius,
        denseness_threshold,
        relatively_dense: covering_radius <= denseness_threshold,
        diff_min_gap,
        discreteness_threshold: params.discreteness_threshold,
        diff_uniformly_discrete: diff_min_gap >= params.discreteness_threshold,
        diff_count: diff.len(),
    })
}

/// Greedy construction of a finite `F` with
/// `full ∩ region ⊆ sub + F`: repeatedly pick the uncovered full point
/// closest to the origin and add its offset from the nearest sub point.
///
/// Membership queries that leave the enumerated sub fragment count as
/// misses, so an under-enumerated `sub` can only inflate `F` (or hit the
/// guard), never fake coverage.
pub fn find_cover_f(sub: &PointSet, full: &PointSet, region: &Region) -> Result<Vec<Coords>> {
    if sub.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let sub_index = SetIndex::build(sub, 1e-9);
    // Subset precondition on the requested region.
    let full_index = SetIndex::build(full, 1e-9);
    for p in &sub.points {
        let inside = match &p.coords.exact {
            Some(e) => region.contains_exact(e),
            None => region.contains_f64(&p.coords.approx),
        };
        if inside && full_index.lookup(&p.coords).is_none() {
            return Err(Error::InvalidConfig(
                "sub is not a subset of full on the region".into(),
            ));
        }
    }

    let targets: Vec<&PointEntry> = full
        .points
        .iter()
        .filter(|p| match &p.coords.exact {
            Some(e) => region.contains_exact(e),
            None => region.contains_f64(&p.coords.approx),
        })
        .collect();
    let mut covered = vec![false; targets.len()];
    let mut f_set: Vec<Coords> = Vec::new();
    loop {
        // Closest-to-origin uncovered target, ties broken by order.
        let mut pick: Option<usize> = None;
        for (i, t) in targets.iter().enumerate() {
            if covered[i] {
                continue;
            }
            pick = Some(match pick {
                None => i,
                Some(j) => {
                    let a = t.coords.norm_f64();
                    let b = targets[j].coords.norm_f64();
                    if a < b || (a == b && cmp_coords(&t.coords, &targets[j].coords).is_lt()) {
                        i
                    } else {
                        j
                    }
                }
            });
        }
        let Some(pick) = pick else {
            break;
        };
        if f_set.len() >= COVER_GUARD {
            return Err(Error::CoverGuardExceeded { limit: COVER_GUARD });
        }
        let x = &targets[pick].coords;
        let nearest = sub
            .points
            .iter()
            .min_by(|a, b| {
                let da = a.coords.dist_f64(x);
                let db = b.coords.dist_f64(x);
                da.total_cmp(&db)
                    .then_with(|| cmp_coords(&a.coords, &b.coords))
            })
            .expect("sub is nonempty");
        let t = x.sub(&nearest.coords)?;
        // Mark everything the new translate covers.
        for (i, target) in targets.iter().enumerate() {
            if covered[i] {
                continue;
            }
            if let Ok(shifted) = target.coords.sub(&t) {
                if sub_index.contains(&shifted) {
                    covered[i] = true;
                }
            }
        }
        if !covered[pick] {
            // The chosen translate must cover its own witness.
            return Err(Error::CertificateFailed(
                "greedy translate failed to cover its witness point".into(),
            ));
        }
        f_set.push(t);
    }
    Ok(f_set)
}

/// Exhaustive check that the constructed cover really works:
/// `full ∩ region ⊆ sub + F`.
pub fn verify_cover_exhaustive(
    sub: &PointSet,
    full: &PointSet,
    f_set: &[Coords],
    region: &Region,
) -> Result<bool> {
    let sub_index = SetIndex::build(sub, 1e-9);
    for p in &full.points {
        let inside = match &p.coords.exact {
            Some(e) => region.contains_exact(e),
            None => region.contains_f64(&p.coords.approx),
        };
        if !inside {
            continue;
        }
        let covered = f_set.iter().any(|t| {
            p.coords
                .sub(t)
                .map(|s| sub_index.contains(&s))
                .unwrap_or(false)
        });
        if !covered {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `(ps - ps) ∩ region ⊆ ps + F` where decidable: differences
/// whose every translate lands outside the enumerated fragment are
/// skipped rather than judged.
pub fn check_diff_cover(ps: &PointSet, f_set: &[Coords], region: &Region) -> Result<bool> {
    let diff = difference_set(ps, region)?;
    let index = SetIndex::build(ps, 1e-9);
    for d in &diff.points {
        let mut hit = false;
        let mut decidable = false;
        for t in f_set {
            let shifted = d.coords.sub(t)?;
            let inside_region = match &shifted.exact {
                Some(e) => ps.region.contains_exact(e),
                None => ps.region.contains_f64(&shifted.approx),
            };
            if !inside_region {
                continue;
            }
            decidable = true;
            if index.contains(&shifted) {
                hit = true;
                break;
            }
        }
        if decidable && !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

trait RatF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl RatF64 for Rat {
    fn to_f64_lossy(&self) -> f64 {
        num::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}
