//! Plot-ready data for the two standard pictures: the strip-projection
//! construction of the golden model set, and the five-term progression
//! with step 3 tau + 2.

use serde_json::{json, Value};

use modelset_core::progressions::difference_window;
use modelset_core::{
    enumerate_model_set, is_member, GoldenInt, LatticeCoords, Region, Window,
};

use crate::commands::Ctx;
use crate::Failure;

pub fn reproduce(ctx: &Ctx) -> Result<Value, Failure> {
    let cps = &ctx.resolved.cps;
    let window = Window::fibonacci();
    let region = match ctx.resolved.region {
        Some([a, b]) => Region::interval_f64(a, b)?,
        None => Region::interval_f64(-5.0, 11.0)?,
    };

    // Picture one: the planar lattice, the window strip, and the
    // model-set points whose strip coordinates fall inside it.
    let mut lattice_csv = String::from("m,n,x,y,in_strip\n");
    for m in -13..=13i64 {
        for n in -13..=13i64 {
            let g = GoldenInt::new(m, n);
            let in_strip = is_member(cps, &window, &LatticeCoords::Golden(g))?;
            lattice_csv.push_str(&format!(
                "{m},{n},{:.16e},{:.16e},{}\n",
                g.to_f64(),
                g.star_f64(),
                u8::from(in_strip)
            ));
        }
    }
    let model = enumerate_model_set(cps, &window, &region)?;
    let model_csv = modelset_core::export::point_set_to_csv(&model);
    let strip = json!({
        "window": window.describe(),
        "lo": -1.0,
        "hi": modelset_core::golden::TAU_F64 - 1.0,
    });

    // Picture two: the five-term progression from the origin with step
    // 3 tau + 2; its conjugates step by about 0.1459 and stay in the
    // window.
    let step = GoldenInt::new(2, 3);
    let dw = difference_window(cps, &window, &LatticeCoords::Golden(GoldenInt::zero()), 4)?;
    if !dw.admits(cps, &LatticeCoords::Golden(step))? {
        return Err(Failure::config(
            "the pictured step is not admissible; scheme or window mismatch".into(),
        ));
    }
    let mut terms = Vec::new();
    for j in 0..5i64 {
        let term = step.scale(j);
        if !is_member(cps, &window, &LatticeCoords::Golden(term))? {
            return Err(Failure::config(format!(
                "pictured term {j} is not in the model set"
            )));
        }
        terms.push(json!({
            "j": j,
            "m": term.m,
            "n": term.n,
            "phys": term.to_f64(),
            "star": term.star_f64(),
        }));
    }
    let progression = json!({
        "start": { "m": 0, "n": 0 },
        "step": { "m": step.m, "n": step.n },
        "step_phys": step.to_f64(),
        "step_star": step.star_f64(),
        "terms": terms,
        "difference_window": dw.window.describe(),
    });

    let lattice_file = ctx.write_figure("fig_scheme_lattice.csv", &lattice_csv)?;
    let model_file = ctx.write_figure("fig_scheme_model_set.csv", &model_csv)?;
    let window_file = ctx.write_figure(
        "fig_scheme_window.json",
        &serde_json::to_string_pretty(&strip).unwrap(),
    )?;
    let progression_file = ctx.write_figure(
        "fig_progression.json",
        &serde_json::to_string_pretty(&progression).unwrap(),
    )?;

    Ok(json!({
        "command": "reproduce-figures",
        "region": modelset_core::export::region_json(&region),
        "model_points": model.len(),
        "files": {
            "lattice": lattice_file,
            "model_set": model_file,
            "window": window_file,
            "progression": progression_file,
        },
        "progression": progression,
    }))
}

impl Ctx {
    fn write_figure(&self, name: &str, contents: &str) -> Result<String, Failure> {
        let dir = self
            .out
            .clone()
            .unwrap_or_else(|| std::path::PathBuf::from("figures"));
        std::fs::create_dir_all(&dir)
            .map_err(|e| Failure::config(format!("cannot create {}: {e}", dir.display())))?;
        let path = dir.join(name);
        std::fs::write(&path, contents)
            .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display())))?;
        Ok(path.display().to_string())
    }
}
