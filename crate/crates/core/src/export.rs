//! Delimited-text export and import of point sets, and JSON rendering
//! of progressions.

use num::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::golden::GoldenInt;
use crate::point_set::{Coords, LatticeCoords, PointSet, Provenance};
use crate::progressions::Progression;
use crate::window::Region;

/// Golden point sets export as `m,n,phys,star` with exact integer
/// lattice coordinates and 17-significant-digit floats, sorted by the
/// physical coordinate. Other sets fall back to generic columns.
pub fn point_set_to_csv(ps: &PointSet) -> String {
    let mut out = String::new();
    if ps.golden_keys().is_some() {
        out.push_str("m,n,phys,star\n");
        for p in &ps.points {
            let g = p.coords.golden_lattice().expect("golden keys checked");
            out.push_str(&format!(
                "{},{},{:.16e},{:.16e}\n",
                g.m,
                g.n,
                g.to_f64(),
                g.star_f64()
            ));
        }
        return out;
    }
    let dim = ps.dim();
    let lattice_dim = ps.points.first().and_then(|p| match &p.coords.lattice {
        Some(LatticeCoords::Ints(k)) => Some(k.len()),
        _ => None,
    });
    let mut header: Vec<String> = Vec::new();
    if let Some(ld) = lattice_dim {
        header.extend((0..ld).map(|i| format!("k{i}")));
    }
    header.extend((0..dim).map(|i| format!("phys{i}")));
    let internal_dim = ps
        .points
        .first()
        .and_then(|p| p.internal.as_ref().map(|v| v.len()))
        .unwrap_or(0);
    header.extend((0..internal_dim).map(|i| format!("star{i}")));
    out.push_str(&header.join(","));
    out.push('\n');
    for p in &ps.points {
        let mut row: Vec<String> = Vec::new();
        if let Some(ld) = lattice_dim {
            if let Some(LatticeCoords::Ints(k)) = &p.coords.lattice {
                row.extend(k.iter().map(|v| v.to_string()));
            } else {
                row.extend(std::iter::repeat(String::new()).take(ld));
            }
        }
        row.extend(p.coords.approx.iter().map(|v| format!("{v:.16e}")));
        if let Some(internal) = &p.internal {
            row.extend(internal.iter().map(|v| format!("{v:.16e}")));
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Parses the golden `m,n,phys,star` format back into a point set; the
/// exact lattice coordinates are authoritative, the floats are checked
/// for consistency.
pub fn point_set_from_csv_golden(
    text: &str,
    provenance: Provenance,
    region: Region,
) -> Result<PointSet> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidConfig("empty export".into()))?;
    if header.trim() != "m,n,phys,star" {
        return Err(Error::InvalidConfig(format!(
            "unexpected header {header:?}"
        )));
    }
    let mut coords = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::InvalidConfig(format!(
                "line {}: expected 4 fields",
                i + 2
            )));
        }
        let m: i64 = fields[0]
            .trim()
            .parse()
            .map_err(|e| Error::InvalidConfig(format!("line {}: {e}", i + 2)))?;
        let n: i64 = fields[1]
            .trim()
            .parse()
            .map_err(|e| Error::InvalidConfig(format!("line {}: {e}", i + 2)))?;
        let phys: f64 = fields[2]
            .trim()
            .parse()
            .map_err(|e| Error::InvalidConfig(format!("line {}: {e}", i + 2)))?;
        let g = GoldenInt::new(m, n);
        if (g.to_f64() - phys).abs() > 1e-6 {
            return Err(Error::InvalidConfig(format!(
                "line {}: floats disagree with lattice coordinates",
                i + 2
            )));
        }
        coords.push(g);
    }
    Ok(PointSet::from_golden(coords, provenance, region))
}

fn coords_json(c: &Coords) -> Value {
    match &c.lattice {
        Some(LatticeCoords::Golden(g)) => json!({ "m": g.m, "n": g.n }),
        Some(LatticeCoords::Ints(k)) => json!({ "k": k }),
        None => match &c.exact {
            Some(e) => {
                let parts: Vec<Value> = e
                    .iter()
                    .map(|v| {
                        let (m, n, den) = crate::golden::rat_parts_big(v);
                        json!({
                            "m": m.to_string(),
                            "n": n.to_string(),
                            "den": den.to_string(),
                        })
                    })
                    .collect();
                if parts.len() == 1 {
                    parts[0].clone()
                } else {
                    Value::Array(parts)
                }
            }
            None => json!(c.approx),
        },
    }
}

/// `{s: {m, n}, t: {m, n}, k, phys_terms: [...]}`.
pub fn progression_json(p: &Progression) -> Result<Value> {
    let terms = p.terms()?;
    let phys: Vec<f64> = terms
        .iter()
        .map(|t| t.approx.first().copied().unwrap_or(f64::NAN))
        .collect();
    Ok(json!({
        "s": coords_json(&p.start),
        "t": coords_json(&p.diff),
        "k": p.len,
        "phys_terms": phys,
        "witness_window": p.witness.as_ref().map(|w| w.describe()),
    }))
}

/// Region as `[lo, hi]` float pairs for reports.
pub fn region_json(r: &Region) -> Value {
    let dims: Vec<Value> = r
        .dims
        .iter()
        .map(|(lo, hi)| {
            json!([
                lo.to_f64().unwrap_or(f64::NAN),
                hi.to_f64().unwrap_or(f64::NAN)
            ])
        })
        .collect();
    if dims.len() == 1 {
        dims[0].clone()
    } else {
        Value::Array(dims)
    }
}
