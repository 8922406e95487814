//! Subcommand implementations: thin wrappers mapping flags and configs
//! onto library calls, producing JSON reports and CSV artifacts.

use std::path::PathBuf;

use serde_json::{json, Value};

use modelset_core::density::{self, AveragingSequence};
use modelset_core::export;
use modelset_core::meyer;
use modelset_core::progressions;
use modelset_core::vdw::{self, ColoringScheme};
use modelset_core::{
    enumerate_model_set, is_member, Coords, GoldenInt, LatticeCoords, PointSet, Region,
};

use crate::config::Resolved;
use crate::Failure;

pub struct Ctx {
    pub resolved: Resolved,
    pub out: Option<PathBuf>,
}

impl Ctx {
    fn region(&self) -> Result<Region, Failure> {
        let [a, b] = self.resolved.region.ok_or_else(|| {
            Failure::config("this command needs --region A B (or a config region)".into())
        })?;
        Ok(Region::interval_f64(a, b)?)
    }

    fn write_file(&self, name: &str, contents: &str) -> Result<Option<String>, Failure> {
        let Some(dir) = &self.out else {
            return Ok(None);
        };
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::config(format!("cannot create {}: {e}", dir.display())))?;
        let path = dir.join(name);
        std::fs::write(&path, contents)
            .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display())))?;
        Ok(Some(path.display().to_string()))
    }
}

pub fn parse_golden_pair(s: &str) -> Result<GoldenInt, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure::config(format!(
            "expected \"m,n\" for a lattice point, got {s:?}"
        )));
    }
    let m: i64 = parts[0]
        .trim()
        .parse()
        .map_err(|e| Failure::config(format!("bad m in {s:?}: {e}")))?;
    let n: i64 = parts[1]
        .trim()
        .parse()
        .map_err(|e| Failure::config(format!("bad n in {s:?}: {e}")))?;
    Ok(GoldenInt::new(m, n))
}

pub fn generate(ctx: &Ctx) -> Result<Value, Failure> {
    let region = ctx.region()?;
    let ps = enumerate_model_set(&ctx.resolved.cps, &ctx.resolved.window, &region)?;
    let csv = export::point_set_to_csv(&ps);
    let file = ctx.write_file("points.csv", &csv)?;
    Ok(json!({
        "command": "generate",
        "window": ctx.resolved.window.describe(),
        "region": export::region_json(&region),
        "points": ps.len(),
        "csv_file": file,
        "csv": if file_absent(&file) { Some(csv) } else { None },
    }))
}

fn file_absent(f: &Option<String>) -> bool {
    f.is_none()
}

pub fn find_ap(
    ctx: &Ctx,
    k: Option<usize>,
    start: &str,
    search: Option<Vec<f64>>,
) -> Result<Value, Failure> {
    let k = k
        .or(ctx.resolved.config.k.map(|v| v as usize))
        .ok_or_else(|| Failure::config("need --k (or \"k\" in the config)".into()))?;
    if k < 2 {
        return Err(Failure::config("need k >= 2 terms".into()));
    }
    let s = parse_golden_pair(start)?;
    let steps = k - 1;
    let search_region = match search {
        Some(v) => Some(Region::interval_f64(v[0], v[1])?),
        None => None,
    };
    let ap = progressions::constructive_ap(
        &ctx.resolved.cps,
        &ctx.resolved.window,
        &LatticeCoords::Golden(s),
        steps,
        search_region.as_ref(),
    )?;
    // List the admissible differences near the origin for the report.
    let dw = progressions::difference_window(
        &ctx.resolved.cps,
        &ctx.resolved.window,
        &LatticeCoords::Golden(s),
        steps,
    )?;
    let listing_region = match &search_region {
        Some(r) => r.clone(),
        None => Region::interval_f64(-60.0, 60.0)?,
    };
    let candidates = enumerate_model_set(&ctx.resolved.cps, &dw.window, &listing_region)?;
    let mut valid: Vec<&modelset_core::PointEntry> = candidates
        .points
        .iter()
        .filter(|p| !p.coords.is_zero())
        .collect();
    valid.sort_by(|a, b| a.phys1().abs().total_cmp(&b.phys1().abs()));
    let valid_differences: Vec<Value> = valid
        .iter()
        .take(25)
        .map(|p| {
            let g = p.coords.golden_lattice().expect("golden scheme");
            json!({ "m": g.m, "n": g.n, "phys": g.to_f64(), "star": g.star_f64() })
        })
        .collect();
    Ok(json!({
        "command": "find-ap",
        "start": start,
        "k": k,
        "chosen": export::progression_json(&ap)?,
        "difference_window": dw.window.describe(),
        "valid_differences": valid_differences,
    }))
}

pub fn certify_ap(ctx: &Ctx, start: &str, diff: &str, k: usize) -> Result<Value, Failure> {
    if k < 2 {
        return Err(Failure::config("need k >= 2 terms".into()));
    }
    let s = parse_golden_pair(start)?;
    let t = parse_golden_pair(diff)?;
    let mut terms = Vec::with_capacity(k);
    let mut memberships = Vec::with_capacity(k);
    for j in 0..k {
        let term = s + t.scale(j as i64);
        memberships.push(is_member(
            &ctx.resolved.cps,
            &ctx.resolved.window,
            &LatticeCoords::Golden(term),
        )?);
        terms.push(term);
    }
    let coords: Vec<Coords> = terms.iter().map(|g| Coords::golden(*g)).collect();
    let is_progression = progressions::verify_ap(&coords, 0.0)?;
    let all_members = memberships.iter().all(|&b| b);
    // Is the difference inside the exact admissible window?
    let admissible = match progressions::difference_window(
        &ctx.resolved.cps,
        &ctx.resolved.window,
        &LatticeCoords::Golden(s),
        k - 1,
    ) {
        Ok(dw) => Some(dw.admits(&ctx.resolved.cps, &LatticeCoords::Golden(t))?),
        Err(_) => None,
    };
    Ok(json!({
        "command": "certify-ap",
        "start": start,
        "diff": diff,
        "k": k,
        "is_progression": is_progression,
        "all_members": all_members,
        "memberships": memberships,
        "difference_admissible": admissible,
        "certified": is_progression && all_members,
        "terms_phys": terms.iter().map(|g| g.to_f64()).collect::<Vec<_>>(),
        "terms_star": terms.iter().map(|g| g.star_f64()).collect::<Vec<_>>(),
    }))
}

pub fn diff_window(ctx: &Ctx, start: &str, n: usize) -> Result<Value, Failure> {
    let s = parse_golden_pair(start)?;
    let dw = progressions::difference_window(
        &ctx.resolved.cps,
        &ctx.resolved.window,
        &LatticeCoords::Golden(s),
        n,
    )?;
    Ok(json!({
        "command": "diff-window",
        "start": start,
        "steps": n,
        "window": dw.window,
        "window_display": dw.window.describe(),
    }))
}

pub fn bounded_gap(ctx: &Ctx, n: usize, test_region: Option<Vec<f64>>) -> Result<Value, Failure> {
    let region = match test_region {
        Some(v) => Some(Region::interval_f64(v[0], v[1])?),
        None => None,
    };
    let r = progressions::bounded_gap_radius(
        &ctx.resolved.cps,
        &ctx.resolved.window,
        n,
        region.as_ref(),
    )?;
    Ok(json!({
        "command": "bounded-gap",
        "steps": n,
        "terms": n + 1,
        "radius": r.value,
        "exact": r.exact.as_ref().map(|e| e.to_string()),
        "parts": r.parts,
    }))
}

pub fn vdw_oracle(ctx: &Ctx, r: Option<u32>, k: Option<u32>, n_max: u32) -> Result<Value, Failure> {
    let r = r
        .or(ctx.resolved.config.r)
        .ok_or_else(|| Failure::config("need --r (or \"r\" in the config)".into()))?;
    let k = k
        .or(ctx.resolved.config.k)
        .ok_or_else(|| Failure::config("need --k (or \"k\" in the config)".into()))?;
    let outcome = vdw::vdw_number_oracle(r, k, n_max)?;
    Ok(match outcome {
        vdw::VdwOutcome::Exact { value, witness } => json!({
            "command": "vdw-oracle",
            "r": r,
            "k": k,
            "value": value,
            "witness_length": witness.len(),
            "witness": witness,
        }),
        vdw::VdwOutcome::ExceedsLimit { n_max, witness } => json!({
            "command": "vdw-oracle",
            "r": r,
            "k": k,
            "value": Value::Null,
            "exceeds_n_max": n_max,
            "witness": witness,
        }),
    })
}

pub fn vdw_experiment(
    ctx: &Ctx,
    r: Option<u8>,
    k: Option<u32>,
    centers: usize,
    center_range: &[f64],
    random_colorings: u64,
) -> Result<Value, Failure> {
    let r = r
        .or(ctx.resolved.config.r.map(|v| v as u8))
        .ok_or_else(|| Failure::config("need --r (or \"r\" in the config)".into()))?;
    let k = k
        .or(ctx.resolved.config.k)
        .ok_or_else(|| Failure::config("need --k (or \"k\" in the config)".into()))?;
    if centers == 0 {
        return Err(Failure::config("need at least one center".into()));
    }
    let (lo, hi) = (center_range[0], center_range[1]);
    let grid: Vec<f64> = if centers == 1 {
        vec![(lo + hi) / 2.0]
    } else {
        (0..centers)
            .map(|i| lo + (hi - lo) * i as f64 / (centers - 1) as f64)
            .collect()
    };
    let mut schemes: Vec<ColoringScheme> = (0..random_colorings)
        .map(|i| ColoringScheme::Random {
            seed: ctx.resolved.seed + i,
        })
        .collect();
    schemes.push(ColoringScheme::InternalThreshold);
    let cert = vdw::model_vdw_certificate(
        &ctx.resolved.cps,
        &ctx.resolved.window,
        r,
        k,
        &grid,
        &schemes,
        None,
    )?;
    let entries: Vec<Value> = cert
        .entries
        .iter()
        .map(|e| {
            Ok(json!({
                "center": e.center,
                "scheme": e.scheme,
                "color": e.color,
                "progression": export::progression_json(&e.progression)?,
                "transfer_checked": e.transfer_checked,
            }))
        })
        .collect::<Result<_, Failure>>()?;
    Ok(json!({
        "command": "vdw-experiment",
        "r": r,
        "k": k,
        "vdw_n": cert.vdw_n,
        "radius": cert.radius,
        "centers": grid.len(),
        "colorings": schemes.len(),
        "entries": entries,
        "all_succeeded": true,
    }))
}

pub fn meyer_check(ctx: &Ctx, threshold: f64) -> Result<Value, Failure> {
    let region = ctx.region()?;
    let width = region.widths_f64()[0];
    let pad = modelset_core::Rat::from_float(width / 8.0 + 2.0)
        .ok_or_else(|| Failure::config("non-finite region".into()))?;
    let enum_region = region.pad(&pad);
    let ps = enumerate_model_set(&ctx.resolved.cps, &ctx.resolved.window, &enum_region)?;
    let report = meyer::check_meyer(
        &ps,
        &region,
        &meyer::MeyerCheckParams {
            discreteness_threshold: threshold,
            diff_cap: Some(Region::interval_f64(-width.min(60.0), width.min(60.0))?),
            ..Default::default()
        },
    )?;
    Ok(json!({
        "command": "meyer-check",
        "report": report,
    }))
}

pub fn find_cover(ctx: &Ctx) -> Result<Value, Failure> {
    let region = ctx.region()?;
    let sub_window = ctx.resolved.sub_window.clone().ok_or_else(|| {
        Failure::config("find-cover needs a \"sub_window\" in the config".into())
    })?;
    let pad_sub = modelset_core::Rat::from_float(25.0).unwrap();
    let pad_full = modelset_core::Rat::from_float(2.0).unwrap();
    let sub = enumerate_model_set(&ctx.resolved.cps, &sub_window, &region.pad(&pad_sub))?;
    let full = enumerate_model_set(
        &ctx.resolved.cps,
        &ctx.resolved.window,
        &region.pad(&pad_full),
    )?;
    let f = meyer::find_cover_f(&sub, &full, &region)?;
    let verified = meyer::verify_cover_exhaustive(&sub, &full, &f, &region)?;
    let f_json: Vec<Value> = f
        .iter()
        .map(|t| match t.golden_lattice() {
            Some(g) => json!({ "m": g.m, "n": g.n, "phys": g.to_f64() }),
            None => json!({ "phys": t.approx }),
        })
        .collect();
    Ok(json!({
        "command": "find-cover",
        "window": ctx.resolved.window.describe(),
        "sub_window": sub_window.describe(),
        "region": export::region_json(&region),
        "f": f_json,
        "size": f.len(),
        "verified": verified,
    }))
}

pub fn density(ctx: &Ctx, n_max: u64) -> Result<Value, Failure> {
    let avg = match &ctx.resolved.config.avg_indices {
        Some(idx) => AveragingSequence::cubes(1, idx.clone())?,
        None => AveragingSequence::dyadic_up_to(1, n_max),
    };
    let n = avg.largest();
    let region = Region::interval_f64(-(n as f64), n as f64)?;
    let ps = enumerate_model_set(&ctx.resolved.cps, &ctx.resolved.window, &region)?;
    let est = density::density(&ps, &avg)?;
    let max_report =
        density::max_density_check(&ctx.resolved.cps, &ctx.resolved.window, &avg)?;
    let mut table = String::from("n,density\n");
    for (n, v) in &est.partials {
        table.push_str(&format!("{n},{v:.12}\n"));
    }
    let file = ctx.write_file("density.csv", &table)?;
    Ok(json!({
        "command": "density",
        "estimate": est,
        "target": max_report.target,
        "final_gap": max_report.final_gap,
        "table_file": file,
    }))
}

pub fn almost_periods(
    ctx: &Ctx,
    eps: Option<f64>,
    search: &[f64],
    n_max: u64,
) -> Result<Value, Failure> {
    let eps = eps
        .or(ctx.resolved.config.eps)
        .ok_or_else(|| Failure::config("need --eps (or \"eps\" in the config)".into()))?;
    let avg = AveragingSequence::dyadic_up_to(1, n_max);
    let span = search[0].abs().max(search[1].abs());
    let half = n_max as f64 + span + 110.0;
    let region = Region::interval_f64(-half, half)?;
    let ps = enumerate_model_set(&ctx.resolved.cps, &ctx.resolved.window, &region)?;
    let search_region = Region::interval_f64(search[0], search[1])?;
    let periods = density::almost_periods(&ps, eps, &search_region, &avg)?;
    let list: Vec<Value> = periods
        .iter()
        .map(|ap| match ap.t.golden_lattice() {
            Some(g) => json!({
                "m": g.m, "n": g.n,
                "phys": g.to_f64(),
                "star": g.star_f64(),
                "d": ap.d_value,
            }),
            None => json!({ "phys": ap.t.approx, "d": ap.d_value }),
        })
        .collect();
    Ok(json!({
        "command": "almost-periods",
        "eps": eps,
        "n": n_max,
        "search": search,
        "found": list.len(),
        "periods": list,
    }))
}

pub fn verify_p6(
    ctx: &Ctx,
    eps: Option<f64>,
    n: Option<usize>,
    search: &[f64],
    n_max: u64,
    tol: f64,
) -> Result<Value, Failure> {
    let eps = eps
        .or(ctx.resolved.config.eps)
        .ok_or_else(|| Failure::config("need --eps (or \"eps\" in the config)".into()))?;
    let n = n
        .or(ctx.resolved.config.n.map(|v| v as usize))
        .ok_or_else(|| Failure::config("need --n (or \"n\" in the config)".into()))?;
    let span = search[0].abs().max(search[1].abs());
    let half = n_max as f64 + n as f64 * span + 110.0;
    let region = Region::interval_f64(-half, half)?;
    let ps = enumerate_model_set(&ctx.resolved.cps, &ctx.resolved.window, &region)?;
    let avg = AveragingSequence::dyadic_up_to(1, n_max);
    let search_region = Region::interval_f64(search[0], search[1])?;
    let report = density::verify_intersection_density(&ps, eps, n, &avg, &search_region, tol)?;
    let all_ok = report
        .entries
        .iter()
        .all(|e| e.density_ok && e.chain_ok && e.inclusion_ok);
    Ok(json!({
        "command": "verify-p6",
        "report": report,
        "all_ok": all_ok,
    }))
}

pub fn autocorr(ctx: &Ctx, n_max: u64, zcap: &[f64]) -> Result<Value, Failure> {
    let region = Region::interval_f64(-(n_max as f64) - 2.0, n_max as f64 + 2.0)?;
    let ps = enumerate_model_set(&ctx.resolved.cps, &ctx.resolved.window, &region)?;
    let z_region = Region::interval_f64(zcap[0], zcap[1])?;
    let table = density::autocorrelation_coeffs(&ps, n_max, &z_region)?;
    let mut csv = String::from("z,eta\n");
    let rows: Vec<Value> = table
        .iter()
        .map(|(z, eta)| {
            csv.push_str(&format!("{:.16e},{eta:.12}\n", z.approx[0]));
            match z.golden_lattice() {
                Some(g) => json!({ "m": g.m, "n": g.n, "z": g.to_f64(), "eta": eta }),
                None => json!({ "z": z.approx[0], "eta": eta }),
            }
        })
        .collect();
    let file = ctx.write_file("autocorr.csv", &csv)?;
    Ok(json!({
        "command": "autocorr",
        "n": n_max,
        "zcap": zcap,
        "coefficients": rows,
        "table_file": file,
    }))
}

pub fn no3ap(ctx: &Ctx, count: u32, control: bool, tol: f64) -> Result<Value, Failure> {
    let (label, ps) = if control {
        ("integer-control".to_string(), PointSet::integers(0, 10))
    } else {
        let cs = density::counterexample_set(count, ctx.resolved.precision)?;
        (
            format!("integer-perturbation(count={count})"),
            cs.point_set,
        )
    };
    let report = density::verify_no_3ap(&ps, tol)?;
    Ok(json!({
        "command": "no3ap",
        "set": label,
        "points": ps.len(),
        "precision": ctx.resolved.precision,
        "report": report,
    }))
}
