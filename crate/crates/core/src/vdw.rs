//! Van der Waerden machinery: an exact backtracking oracle for W(r, k)
//! on the integers, colorings of point sets, monochromatic progression
//! search, and the radius constructions that transfer integer coloring
//! arguments into model sets and their Meyer subsets.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cps::{enumerate_model_set, CpsDescriptor};
use crate::error::{Error, Result};
use crate::golden::GoldenRat;
use crate::point_set::{Coords, PointSet, Provenance, SetIndex};
use crate::progressions::{
    bounded_gap_radius, find_first_ap, verify_ap, BoundedGapRadius, Progression,
};
use crate::window::{Region, Window};

const ORACLE_N_LIMIT: u32 = 40;
const ORACLE_NODE_BUDGET: u64 = 300_000_000;

/// How to color a point set.
#[derive(Debug, Clone, Serialize)]
pub enum ColoringScheme {
    /// Seeded uniform colors in sorted point order.
    Random { seed: u64 },
    /// Color `i mod r` for the i-th point in sorted order.
    PeriodicByIndex,
    /// Color by which of `r` equal slices of the window holds the
    /// internal coordinate. Adversarially aligned with the structure of
    /// the set; needs model-set provenance with an interval window.
    InternalThreshold,
    /// Caller-provided colors, aligned with sorted point order.
    Explicit(Vec<u8>),
}

impl ColoringScheme {
    pub fn describe(&self) -> String {
        match self {
            ColoringScheme::Random { seed } => format!("random(seed={seed})"),
            ColoringScheme::PeriodicByIndex => "periodic-by-index".into(),
            ColoringScheme::InternalThreshold => "internal-threshold".into(),
            ColoringScheme::Explicit(_) => "explicit".into(),
        }
    }
}

/// A total coloring of a point set, aligned with its sorted points.
#[derive(Debug, Clone, Serialize)]
pub struct Coloring {
    pub colors: Vec<u8>,
    pub color_count: u8,
    pub scheme: String,
}

/// Colors a point set with `r` colors under the given scheme.
/// Deterministic for a fixed (scheme, point set).
pub fn color(ps: &PointSet, scheme: &ColoringScheme, r: u8) -> Result<Coloring> {
    if r == 0 {
        return Err(Error::InvalidConfig("need at least one color".into()));
    }
    let colors = match scheme {
        ColoringScheme::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..ps.len()).map(|_| rng.gen_range(0..r)).collect()
        }
        ColoringScheme::PeriodicByIndex => (0..ps.len()).map(|i| (i % r as usize) as u8).collect(),
        ColoringScheme::InternalThreshold => internal_threshold_colors(ps, r)?,
        ColoringScheme::Explicit(v) => {
            if v.len() != ps.len() {
                return Err(Error::SchemeMismatch(format!(
                    "explicit coloring has {} entries for {} points",
                    v.len(),
                    ps.len()
                )));
            }
            if v.iter().any(|c| *c >= r) {
                return Err(Error::SchemeMismatch("color index out of range".into()));
            }
            v.clone()
        }
    };
    Ok(Coloring {
        colors,
        color_count: r,
        scheme: scheme.describe(),
    })
}

fn internal_threshold_colors(ps: &PointSet, r: u8) -> Result<Vec<u8>> {
    let Provenance::ModelSet { cps, window } = &ps.provenance else {
        return Err(Error::SchemeMismatch(
            "internal-threshold coloring needs model-set provenance".into(),
        ));
    };
    let (lo, len) = match window {
        Window::Interval { lo, hi } => (lo.clone(), hi - lo),
        Window::Box { dims } if dims.len() == 1 => {
            let lo = GoldenRat::from_rat(dims[0].0.clone());
            let hi = GoldenRat::from_rat(dims[0].1.clone());
            (lo.clone(), &hi - &lo)
        }
        _ => {
            return Err(Error::SchemeMismatch(
                "internal-threshold coloring needs an interval window".into(),
            ))
        }
    };
    if len.sign() <= 0 {
        return Err(Error::SchemeMismatch("window has no interior".into()));
    }
    let r_rat = GoldenRat::from_int(r as i64);
    ps.points
        .iter()
        .map(|p| {
            let star = match (&cps, &p.coords.lattice) {
                (CpsDescriptor::Golden, Some(crate::point_set::LatticeCoords::Golden(g))) => {
                    g.star().to_rat()
                }
                (CpsDescriptor::Numeric(_), _) => match &p.internal {
                    Some(v) if v.len() == 1 => GoldenRat::from_rat(
                        crate::golden::Rat::from_float(v[0]).ok_or_else(|| {
                            Error::SchemeMismatch("non-finite internal coordinate".into())
                        })?,
                    ),
                    _ => {
                        return Err(Error::SchemeMismatch(
                            "point lacks a 1-d internal coordinate".into(),
                        ))
                    }
                },
                _ => {
                    return Err(Error::SchemeMismatch(
                        "point lacks lattice coordinates".into(),
                    ))
                }
            };
            // slice = floor((star - lo) * r / len), clamped into range
            let idx = (&(&star - &lo) * &r_rat).div(&len).floor();
            let idx = num::ToPrimitive::to_i64(&idx).unwrap_or(0);
            Ok(idx.clamp(0, r as i64 - 1) as u8)
        })
        .collect()
}

/// Outcome of the exact W(r, k) search.
#[derive(Debug, Clone, Serialize)]
pub enum VdwOutcome {
    /// `value` is the least N such that every r-coloring of {1..N} has a
    /// monochromatic k-term progression; `witness` is a valid coloring
    /// of {1..value-1} avoiding one.
    Exact { value: u32, witness: Vec<u8> },
    /// Some coloring of {1..n_max} still avoids monochromatic k-term
    /// progressions; `witness` exhibits one.
    ExceedsLimit { n_max: u32, witness: Vec<u8> },
}

/// Backtracking search for a coloring of {1..n} with no monochromatic
/// k-term progression. Positions fill left to right; a placement is
/// pruned as soon as it completes a monochromatic progression ending at
/// it. The first position is pinned to color 0 by symmetry.
fn avoiding_coloring(n: u32, r: u32, k: u32, budget: &mut u64) -> Result<Option<Vec<u8>>> {
    let n = n as usize;
    let k = k as usize;
    let mut colors: Vec<u8> = vec![0; n];
    let mut next: Vec<u8> = vec![0; n];
    let mut i = 0usize;
    let completes_mono = |colors: &[u8], i: usize| -> bool {
        let c = colors[i];
        let mut d = 1usize;
        while i >= (k - 1) * d {
            let mut mono = true;
            let mut pos = i;
            for _ in 0..k - 1 {
                pos -= d;
                if colors[pos] != c {
                    mono = false;
                    break;
                }
            }
            if mono {
                return true;
            }
            d += 1;
        }
        false
    };
    loop {
        if *budget == 0 {
            return Err(Error::GuardExceeded {
                what: "backtracking node budget".into(),
                limit: ORACLE_NODE_BUDGET.to_string(),
            });
        }
        *budget -= 1;
        let limit = if i == 0 { 1 } else { r as u8 };
        if next[i] >= limit {
            next[i] = 0;
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            next[i] += 1;
            continue;
        }
        colors[i] = next[i];
        if completes_mono(&colors, i) {
            next[i] += 1;
            continue;
        }
        if i + 1 == n {
            return Ok(Some(colors));
        }
        i += 1;
    }
}

/// Exact van der Waerden number W(r, k) by exhaustive backtracking, up
/// to the limit `n_max <= 40`.
pub fn vdw_number_oracle(r: u32, k: u32, n_max: u32) -> Result<VdwOutcome> {
    if r < 1 || k < 2 {
        return Err(Error::InvalidConfig("need r >= 1 and k >= 2".into()));
    }
    if n_max > ORACLE_N_LIMIT {
        return Err(Error::GuardExceeded {
            what: format!("oracle limit {n_max}"),
            limit: ORACLE_N_LIMIT.to_string(),
        });
    }
    let mut budget = ORACLE_NODE_BUDGET;
    let mut last_witness: Vec<u8> = Vec::new();
    for n in 1..=n_max {
        match avoiding_coloring(n, r, k, &mut budget)? {
            Some(w) => last_witness = w,
            None => {
                return Ok(VdwOutcome::Exact {
                    value: n,
                    witness: last_witness,
                })
            }
        }
    }
    Ok(VdwOutcome::ExceedsLimit {
        n_max,
        witness: last_witness,
    })
}

/// Pigeonhole cross-check: W(r, 2) = r + 1.
pub fn vdw_pigeonhole_pair(r: u32) -> u32 {
    r + 1
}

/// Monochromatic nontrivial k-term progression inside the closed ball,
/// searched per color class in color order. `None` when no class
/// contains one.
pub fn find_monochromatic_ap(
    ps: &PointSet,
    coloring: &Coloring,
    k: usize,
    center: &[f64],
    radius: f64,
) -> Result<Option<(Progression, u8)>> {
    if coloring.colors.len() != ps.len() {
        return Err(Error::SchemeMismatch(
            "coloring does not match the point set".into(),
        ));
    }
    let bbox = ball_bbox(center, radius)?;
    let zero = crate::golden::Rat::from_float(0.0).unwrap();
    if !ps.region.covers_with_margin(&bbox, &zero) {
        return Err(Error::BallNotCovered {
            center: format!("{center:?}"),
            radius: format!("{radius}"),
        });
    }
    for c in 0..coloring.color_count {
        let subset: Vec<_> = ps
            .points
            .iter()
            .zip(&coloring.colors)
            .filter(|(p, &pc)| pc == c && in_ball(&p.coords, center, radius))
            .map(|(p, _)| p.clone())
            .collect();
        if subset.len() < k {
            continue;
        }
        let subset = PointSet {
            points: subset,
            provenance: Provenance::Derived {
                label: format!("color-class-{c}"),
            },
            region: bbox.clone(),
        };
        if let Some(ap) = find_first_ap(&subset, k)? {
            return Ok(Some((ap, c)));
        }
    }
    Ok(None)
}

fn ball_bbox(center: &[f64], radius: f64) -> Result<Region> {
    let dims = center
        .iter()
        .map(|c| {
            let lo = crate::golden::Rat::from_float(c - radius)
                .ok_or_else(|| Error::InvalidRegion("non-finite ball".into()))?;
            let hi = crate::golden::Rat::from_float(c + radius)
                .ok_or_else(|| Error::InvalidRegion("non-finite ball".into()))?;
            Ok((lo, hi))
        })
        .collect::<Result<Vec<_>>>()?;
    Region::new(dims)
}

fn in_ball(c: &Coords, center: &[f64], radius: f64) -> bool {
    let d2: f64 = c
        .approx
        .iter()
        .zip(center)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    d2.sqrt() <= radius
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelVdwRadius {
    /// The integer van der Waerden bound N = W(r, k) used.
    pub vdw_n: u32,
    /// Ball radius guaranteeing a monochromatic k-term progression,
    /// from the bounded-gap radius for N-1 steps (N terms).
    pub radius: BoundedGapRadius,
}

/// Radius for the model-set van der Waerden property with `r` colors and
/// progressions of length `k`.
pub fn model_vdw_radius(
    cps: &CpsDescriptor,
    window: &Window,
    r: u32,
    k: u32,
    test_region: Option<&Region>,
) -> Result<ModelVdwRadius> {
    let n = match vdw_number_oracle(r, k, ORACLE_N_LIMIT)? {
        VdwOutcome::Exact { value, .. } => value,
        VdwOutcome::ExceedsLimit { n_max, .. } => {
            return Err(Error::GuardExceeded {
                what: format!("W({r}, {k}) exceeds the oracle limit"),
                limit: n_max.to_string(),
            })
        }
    };
    // N terms need N-1 steps.
    let radius = bounded_gap_radius(cps, window, (n - 1) as usize, test_region)?;
    Ok(ModelVdwRadius { vdw_n: n, radius })
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateEntry {
    pub center: f64,
    pub scheme: String,
    pub color: u8,
    pub progression: Progression,
    /// The integer-coloring transfer was replayed at this center: an
    /// N-term point progression induced an integer coloring, whose
    /// monochromatic integer progression mapped back to a monochromatic
    /// point progression.
    pub transfer_checked: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VdwCertificate {
    pub r: u8,
    pub k: u32,
    pub vdw_n: u32,
    pub radius: f64,
    pub entries: Vec<CertificateEntry>,
}

/// Runs the sampled certificate: for every coloring scheme and center,
/// a monochromatic k-term progression must appear inside the ball of
/// the computed radius. Fails with `CertificateFailed` otherwise.
pub fn model_vdw_certificate(
    cps: &CpsDescriptor,
    window: &Window,
    r: u8,
    k: u32,
    centers: &[f64],
    schemes: &[ColoringScheme],
    test_region: Option<&Region>,
) -> Result<VdwCertificate> {
    if centers.is_empty() {
        return Err(Error::InvalidConfig("need at least one center".into()));
    }
    let mv = model_vdw_radius(cps, window, r as u32, k, test_region)?;
    let radius = mv.radius.value;
    let lo = centers.iter().cloned().fold(f64::INFINITY, f64::min) - radius - 2.0;
    let hi = centers.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + radius + 2.0;
    let ps = enumerate_model_set(cps, window, &Region::interval_f64(lo, hi)?)?;
    let index = SetIndex::build(&ps, 1e-9);
    let mut entries = Vec::new();
    for scheme in schemes {
        let coloring = color(&ps, scheme, r)?;
        for &c in centers {
            let found = find_monochromatic_ap(&ps, &coloring, k as usize, &[c], radius)?;
            let Some((ap, col)) = found else {
                return Err(Error::CertificateFailed(format!(
                    "no monochromatic {k}-term progression in the ball at {c} under {}",
                    scheme.describe()
                )));
            };
            let terms = ap.terms()?;
            if !verify_ap(&terms, 0.0)? {
                return Err(Error::CertificateFailed(
                    "found sequence is not a progression".into(),
                ));
            }
            for t in &terms {
                let Some(i) = index.lookup(t) else {
                    return Err(Error::CertificateFailed(
                        "term left the enumerated set".into(),
                    ));
                };
                if coloring.colors[i] != col {
                    return Err(Error::CertificateFailed(
                        "progression is not monochromatic".into(),
                    ));
                }
                if !in_ball(t, &[c], radius) {
                    return Err(Error::CertificateFailed("term left the ball".into()));
                }
            }
            let transfer_checked =
                transfer_check(cps, window, &index, &coloring, mv.vdw_n, k, c, radius)?;
            entries.push(CertificateEntry {
                center: c,
                scheme: scheme.describe(),
                color: col,
                progression: ap,
                transfer_checked,
            });
        }
    }
    Ok(VdwCertificate {
        r,
        k,
        vdw_n: mv.vdw_n,
        radius,
        entries,
    })
}

/// The coloring-transfer argument, replayed concretely at one center:
/// build an N-term progression `s + j t` inside the ball, color the
/// integers `j` by the point colors, find a monochromatic integer
/// k-progression, and check its image is a monochromatic point
/// progression in the ball.
#[allow(clippy::too_many_arguments)]
fn transfer_check(
    cps: &CpsDescriptor,
    window: &Window,
    index: &SetIndex,
    coloring: &Coloring,
    vdw_n: u32,
    k: u32,
    center: f64,
    radius: f64,
) -> Result<bool> {
    let steps = (vdw_n - 1) as usize;
    // Anchor from the middle half of the window near the center, step
    // from the centered difference window; mirrors the bounded-gap split.
    // The anchor offset plus `steps` times the step length stays below
    // the radius by construction.
    let v = window.middle_half()?;
    let u_radius = window.inradius()?.div_int(2 * steps as i64);
    let u = Window::centered(u_radius)?;
    let anchor_region = Region::interval_f64(center - radius / 4.0, center + radius / 4.0)?;
    let anchors = enumerate_model_set(cps, &v, &anchor_region)?;
    let Some(anchor) = anchors
        .points
        .iter()
        .min_by(|a, b| {
            (a.phys1() - center)
                .abs()
                .total_cmp(&(b.phys1() - center).abs())
        })
        .map(|p| p.coords.clone())
    else {
        return Err(Error::CertificateFailed("no anchor near center".into()));
    };
    let offset = (anchor.approx[0] - center).abs();
    let step_limit = (radius - offset) / steps as f64;
    let step_ps = enumerate_model_set(cps, &u, &Region::interval_f64(-step_limit, step_limit)?)?;
    let Some(step) = step_ps
        .points
        .iter()
        .filter(|p| !p.coords.is_zero())
        .min_by(|a, b| a.phys1().abs().total_cmp(&b.phys1().abs()))
        .map(|p| p.coords.clone())
    else {
        return Err(Error::CertificateFailed("no nonzero step near 0".into()));
    };
    // Integer coloring j -> color(s + j t).
    let mut int_colors = Vec::with_capacity(vdw_n as usize);
    let mut cur = anchor.clone();
    for j in 0..vdw_n {
        if j > 0 {
            cur = cur.add(&step)?;
        }
        let Some(i) = index.lookup(&cur) else {
            return Err(Error::CertificateFailed(format!(
                "transfer term {} is not in the enumerated set",
                cur.describe()
            )));
        };
        if !in_ball(&cur, &[center], radius) {
            return Err(Error::CertificateFailed(
                "transfer term left the ball".into(),
            ));
        }
        int_colors.push(coloring.colors[i]);
    }
    // A monochromatic integer progression of length k must exist.
    let n = int_colors.len();
    let k = k as usize;
    let mut found: Option<(usize, usize)> = None;
    'outer: for a in 0..n {
        let mut d = 1;
        while a + (k - 1) * d < n {
            if (1..k).all(|j| int_colors[a + j * d] == int_colors[a]) {
                found = Some((a, d));
                break 'outer;
            }
            d += 1;
        }
    }
    let Some((a, d)) = found else {
        return Err(Error::CertificateFailed(
            "no monochromatic integer progression inside the transfer block".into(),
        ));
    };
    // Map back and re-verify everything claimed.
    let base = anchor.add(&step.scale_int(a as i64))?;
    let jump = step.scale_int(d as i64);
    let mut terms = vec![base.clone()];
    for _ in 1..k {
        terms.push(terms.last().unwrap().add(&jump)?);
    }
    if !verify_ap(&terms, 0.0)? {
        return Err(Error::CertificateFailed(
            "transfer image is not a progression".into(),
        ));
    }
    let c0 = int_colors[a];
    for t in &terms {
        let i = index
            .lookup(t)
            .ok_or_else(|| Error::CertificateFailed("transfer image leaves the set".into()))?;
        if coloring.colors[i] != c0 {
            return Err(Error::CertificateFailed(
                "transfer image is not monochromatic".into(),
            ));
        }
        if !in_ball(t, &[center], radius) {
            return Err(Error::CertificateFailed(
                "transfer image left the ball".into(),
            ));
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
pub struct MeyerVdwRadius {
    pub f_size: usize,
    pub combined_colors: u32,
    pub vdw_n: u32,
    /// Radius for the covering model set.
    pub model_radius: f64,
    /// Final radius: model radius plus the largest translate length.
    pub radius: f64,
}

/// Radius for the Meyer-set van der Waerden property via a finite cover
/// `model(W) ⊆ Λ + F`: the covering model set is colored with `|F| * r`
/// colors (cover index paired with the Λ color) and the radius grows by
/// the largest translate length.
#[allow(clippy::too_many_arguments)]
pub fn meyer_vdw_radius(
    meyer: &PointSet,
    cps: &CpsDescriptor,
    window: &Window,
    f_set: &[Coords],
    r: u32,
    k: u32,
    verify_region: &Region,
    test_region: Option<&Region>,
) -> Result<MeyerVdwRadius> {
    if f_set.is_empty() {
        return Err(Error::InvalidConfig("empty translate set".into()));
    }
    verify_cover(meyer, cps, window, f_set, verify_region)?;
    let combined = f_set.len() as u32 * r;
    if combined > 64 {
        return Err(Error::GuardExceeded {
            what: format!("{combined} combined colors"),
            limit: "64".into(),
        });
    }
    let mv = model_vdw_radius(cps, window, combined, k, test_region)?;
    let max_t = f_set.iter().map(|t| t.norm_f64()).fold(0.0, f64::max);
    Ok(MeyerVdwRadius {
        f_size: f_set.len(),
        combined_colors: combined,
        vdw_n: mv.vdw_n,
        model_radius: mv.radius.value,
        radius: mv.radius.value + max_t,
    })
}

/// Checks `model(W) ∩ verify_region ⊆ meyer + F`, requiring the Meyer
/// fragment to be enumerated wide enough to decide every membership.
fn verify_cover(
    meyer: &PointSet,
    cps: &CpsDescriptor,
    window: &Window,
    f_set: &[Coords],
    verify_region: &Region,
) -> Result<()> {
    let max_t = f_set.iter().map(|t| t.norm_f64()).fold(0.0, f64::max);
    let pad = crate::golden::Rat::from_float(max_t)
        .ok_or_else(|| Error::InvalidRegion("non-finite translate".into()))?;
    if !meyer.region.covers_with_margin(verify_region, &pad) {
        return Err(Error::RegionMismatch(format!(
            "Meyer fragment on {} cannot decide the cover on {} with translates up to {max_t}",
            meyer.region.describe(),
            verify_region.describe()
        )));
    }
    let full = enumerate_model_set(cps, window, verify_region)?;
    let index = SetIndex::build(meyer, 1e-9);
    for p in &full.points {
        let covered = f_set.iter().any(|t| {
            p.coords
                .sub(t)
                .map(|shifted| index.contains(&shifted))
                .unwrap_or(false)
        });
        if !covered {
            return Err(Error::CertificateFailed(format!(
                "cover misses {}",
                p.coords.describe()
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct MeyerCertEntry {
    pub center: f64,
    pub cover_index: usize,
    pub meyer_color: u8,
    /// The progression found in the covering model set.
    pub model_progression: Progression,
    /// Its translate inside the Meyer set.
    pub meyer_progression: Progression,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeyerVdwCertificate {
    pub radius: MeyerVdwRadius,
    pub entries: Vec<MeyerCertEntry>,
}

/// Sampled certificate for the Meyer van der Waerden property: at every
/// center, a progression monochromatic under the combined
/// (cover index, Λ color) coloring appears in the model-set ball and
/// translates into a Λ-monochromatic progression in the enlarged ball.
#[allow(clippy::too_many_arguments)]
pub fn meyer_vdw_certificate(
    meyer: &PointSet,
    cps: &CpsDescriptor,
    window: &Window,
    f_set: &[Coords],
    r: u8,
    k: u32,
    meyer_scheme: &ColoringScheme,
    centers: &[f64],
    verify_region: &Region,
    test_region: Option<&Region>,
) -> Result<MeyerVdwCertificate> {
    let rad = meyer_vdw_radius(
        meyer,
        cps,
        window,
        f_set,
        r as u32,
        k,
        verify_region,
        test_region,
    )?;
    let meyer_coloring = color(meyer, meyer_scheme, r)?;
    let meyer_index = SetIndex::build(meyer, 1e-9);

    let model_radius = rad.model_radius;
    let lo = centers.iter().cloned().fold(f64::INFINITY, f64::min) - model_radius;
    let hi = centers.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + model_radius;
    let full_region = Region::interval_f64(lo, hi)?;
    let zero = crate::golden::Rat::from_float(0.0).unwrap();
    if !verify_region.covers_with_margin(&full_region, &zero) {
        return Err(Error::RegionMismatch(
            "centers and radius exceed the verified cover region".into(),
        ));
    }
    let full = enumerate_model_set(cps, window, &full_region)?;

    // Combined coloring of the covering model set: cover index paired
    // with the Λ color of the translated point.
    let mut combined: Vec<u8> = Vec::with_capacity(full.len());
    for p in &full.points {
        let mut assigned = None;
        for (j, t) in f_set.iter().enumerate() {
            let shifted = p.coords.sub(t)?;
            if let Some(i) = meyer_index.lookup(&shifted) {
                assigned = Some((j as u8) * r + meyer_coloring.colors[i]);
                break;
            }
        }
        let Some(c) = assigned else {
            return Err(Error::CertificateFailed(format!(
                "cover misses {}",
                p.coords.describe()
            )));
        };
        combined.push(c);
    }
    let combined = Coloring {
        colors: combined,
        color_count: (f_set.len() as u8) * r,
        scheme: format!("cover-index x {}", meyer_coloring.scheme),
    };

    let mut entries = Vec::new();
    for &c in centers {
        let found = find_monochromatic_ap(&full, &combined, k as usize, &[c], model_radius)?;
        let Some((ap, col)) = found else {
            return Err(Error::CertificateFailed(format!(
                "no combined-monochromatic progression in the ball at {c}"
            )));
        };
        let cover_index = (col / r) as usize;
        let meyer_color = col % r;
        let t = &f_set[cover_index];
        let translated = Progression {
            start: ap.start.sub(t)?,
            diff: ap.diff.clone(),
            len: ap.len,
            witness: None,
        };
        // Every translated term must be a Λ point of the right color,
        // inside the enlarged ball.
        for term in translated.terms()? {
            let i = meyer_index.lookup(&term).ok_or_else(|| {
                Error::CertificateFailed("translated term is not in the Meyer set".into())
            })?;
            if meyer_coloring.colors[i] != meyer_color {
                return Err(Error::CertificateFailed(
                    "translated progression is not monochromatic".into(),
                ));
            }
            if !in_ball(&term, &[c], rad.radius) {
                return Err(Error::CertificateFailed(
                    "translated term left the enlarged ball".into(),
                ));
            }
        }
        entries.push(MeyerCertEntry {
            center: c,
            cover_index,
            meyer_color,
            model_progression: ap,
            meyer_progression: translated,
        });
    }
    Ok(MeyerVdwCertificate {
        radius: rad,
        entries,
    })
}
