//! Finite enumerated fragments of Delone sets.
//!
//! Points carry display floats plus, whenever available, exact physical
//! coordinates (golden-field elements, one per physical dimension) and
//! the lattice coordinates that produced them. Exact data drives every
//! membership and ordering decision; floats are for export and sampling.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::Hash;

use num::ToPrimitive;
use serde::Serialize;

use crate::cps::CpsDescriptor;
use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenRat, Rat};
use crate::window::{Region, Window};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum LatticeCoords {
    Golden(GoldenInt),
    Ints(Vec<i64>),
}

/// A physical point or difference vector, exact where possible.
#[derive(Debug, Clone, Serialize)]
pub struct Coords {
    /// Exact physical coordinates, one golden-field element per dimension.
    pub exact: Option<Vec<GoldenRat>>,
    /// Lattice coordinates behind the point, when it came from a scheme.
    pub lattice: Option<LatticeCoords>,
    /// Display floats, always present.
    pub approx: Vec<f64>,
}

impl Coords {
    pub fn golden(g: GoldenInt) -> Self {
        Coords {
            approx: vec![g.to_f64()],
            exact: Some(vec![g.to_rat()]),
            lattice: Some(LatticeCoords::Golden(g)),
        }
    }

    pub fn golden_rat(v: GoldenRat) -> Self {
        Coords {
            approx: vec![v.to_f64()],
            exact: Some(vec![v]),
            lattice: None,
        }
    }

    pub fn rational(v: Rat) -> Self {
        Coords::golden_rat(GoldenRat::from_rat(v))
    }

    pub fn rational_vec(v: Vec<Rat>) -> Self {
        Coords {
            approx: v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
            exact: Some(v.into_iter().map(GoldenRat::from_rat).collect()),
            lattice: None,
        }
    }

    pub fn float(v: Vec<f64>) -> Self {
        Coords {
            approx: v,
            exact: None,
            lattice: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.approx.len()
    }

    pub fn golden_lattice(&self) -> Option<GoldenInt> {
        match &self.lattice {
            Some(LatticeCoords::Golden(g)) => Some(*g),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(e) => e.iter().all(|v| v.is_zero()),
            None => self.approx.iter().all(|v| *v == 0.0),
        }
    }

    pub fn sub(&self, rhs: &Coords) -> Result<Coords> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch("coordinate subtraction".into()));
        }
        let approx: Vec<f64> = self
            .approx
            .iter()
            .zip(&rhs.approx)
            .map(|(a, b)| a - b)
            .collect();
        let exact = match (&self.exact, &rhs.exact) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x - y).collect()),
            _ => None,
        };
        let lattice = match (&self.lattice, &rhs.lattice) {
            (Some(LatticeCoords::Golden(a)), Some(LatticeCoords::Golden(b))) => {
                Some(LatticeCoords::Golden(*a - *b))
            }
            (Some(LatticeCoords::Ints(a)), Some(LatticeCoords::Ints(b))) if a.len() == b.len() => {
                Some(LatticeCoords::Ints(
                    a.iter().zip(b).map(|(x, y)| x - y).collect(),
                ))
            }
            _ => None,
        };
        Ok(Coords {
            exact,
            lattice,
            approx,
        })
    }

    pub fn add(&self, rhs: &Coords) -> Result<Coords> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch("coordinate addition".into()));
        }
        let approx: Vec<f64> = self
            .approx
            .iter()
            .zip(&rhs.approx)
            .map(|(a, b)| a + b)
            .collect();
        let exact = match (&self.exact, &rhs.exact) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            _ => None,
        };
        let lattice = match (&self.lattice, &rhs.lattice) {
            (Some(LatticeCoords::Golden(a)), Some(LatticeCoords::Golden(b))) => {
                Some(LatticeCoords::Golden(*a + *b))
            }
            (Some(LatticeCoords::Ints(a)), Some(LatticeCoords::Ints(b))) if a.len() == b.len() => {
                Some(LatticeCoords::Ints(
                    a.iter().zip(b).map(|(x, y)| x + y).collect(),
                ))
            }
            _ => None,
        };
        Ok(Coords {
            exact,
            lattice,
            approx,
        })
    }

    pub fn scale_int(&self, k: i64) -> Coords {
        Coords {
            approx: self.approx.iter().map(|a| a * k as f64).collect(),
            exact: self
                .exact
                .as_ref()
                .map(|e| e.iter().map(|v| v.scale_int(k)).collect()),
            lattice: match &self.lattice {
                Some(LatticeCoords::Golden(g)) => Some(LatticeCoords::Golden(g.scale(k))),
                Some(LatticeCoords::Ints(v)) => {
                    Some(LatticeCoords::Ints(v.iter().map(|x| x * k).collect()))
                }
                None => None,
            },
        }
    }

    pub fn norm_f64(&self) -> f64 {
        self.approx.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn dist_f64(&self, rhs: &Coords) -> f64 {
        self.approx
            .iter()
            .zip(&rhs.approx)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn describe(&self) -> String {
        match &self.lattice {
            Some(LatticeCoords::Golden(g)) => format!("{g}"),
            Some(LatticeCoords::Ints(v)) => format!("{v:?}"),
            None => match &self.exact {
                Some(e) => {
                    let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
                    parts.join(", ")
                }
                None => format!("{:?}", self.approx),
            },
        }
    }
}

/// Exact total order on coordinates; float fallback when either side
/// lacks exact data.
pub fn cmp_coords(a: &Coords, b: &Coords) -> Ordering {
    match (&a.exact, &b.exact) {
        (Some(x), Some(y)) => x.cmp(y),
        _ => {
            for (x, y) in a.approx.iter().zip(&b.approx) {
                match x.total_cmp(y) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointEntry {
    pub coords: Coords,
    /// Internal-space coordinates as floats, when known.
    pub internal: Option<Vec<f64>>,
    /// Set for numeric-scheme points decided within the guard band of the
    /// window boundary.
    pub boundary_uncertain: bool,
}

impl PointEntry {
    pub fn new(coords: Coords) -> Self {
        PointEntry {
            coords,
            internal: None,
            boundary_uncertain: false,
        }
    }

    pub fn phys1(&self) -> f64 {
        self.coords.approx[0]
    }
}

#[derive(Debug, Clone, Serialize)]
pub enum Provenance {
    ModelSet { cps: CpsDescriptor, window: Window },
    Explicit { label: String },
    Derived { label: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct PointSet {
    pub points: Vec<PointEntry>,
    pub provenance: Provenance,
    pub region: Region,
}

impl PointSet {
    /// Sorts by physical coordinate, removes duplicates (exact equality
    /// when both sides are exact, a 1e-12 metric guard otherwise).
    pub fn new(mut points: Vec<PointEntry>, provenance: Provenance, region: Region) -> Self {
        points.sort_by(|p, q| cmp_coords(&p.coords, &q.coords));
        points.dedup_by(|p, q| match (&p.coords.exact, &q.coords.exact) {
            (Some(a), Some(b)) => a == b,
            _ => p.coords.dist_f64(&q.coords) <= 1e-12,
        });
        PointSet {
            points,
            provenance,
            region,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.region.dim()
    }

    /// The integers in `[lo, hi]` as golden lattice points.
    pub fn integers(lo: i64, hi: i64) -> Self {
        let points = (lo..=hi)
            .map(|m| PointEntry {
                coords: Coords::golden(GoldenInt::new(m, 0)),
                internal: Some(vec![m as f64]),
                boundary_uncertain: false,
            })
            .collect();
        PointSet::new(
            points,
            Provenance::Explicit {
                label: "integers".into(),
            },
            Region::interval_f64(lo as f64, hi as f64).expect("finite"),
        )
    }

    /// `{2^j : 0 <= j <= max_exp}` as golden lattice points.
    pub fn powers_of_two(max_exp: u32) -> Self {
        let points = (0..=max_exp)
            .map(|j| PointEntry::new(Coords::golden(GoldenInt::new(1i64 << j, 0))))
            .collect();
        PointSet::new(
            points,
            Provenance::Explicit {
                label: "powers-of-two".into(),
            },
            Region::interval_f64(0.0, (1i64 << max_exp) as f64).expect("finite"),
        )
    }

    pub fn from_golden(
        coords: Vec<GoldenInt>,
        provenance: Provenance,
        region: Region,
    ) -> Self {
        let points = coords
            .into_iter()
            .map(|g| PointEntry {
                internal: Some(vec![g.star_f64()]),
                coords: Coords::golden(g),
                boundary_uncertain: false,
            })
            .collect();
        PointSet::new(points, provenance, region)
    }

    pub fn from_coords(coords: Vec<Coords>, provenance: Provenance, region: Region) -> Self {
        let points = coords.into_iter().map(PointEntry::new).collect();
        PointSet::new(points, provenance, region)
    }

    /// Golden lattice coordinates for every point, if all points have them.
    pub fn golden_keys(&self) -> Option<Vec<(i64, i64)>> {
        self.points
            .iter()
            .map(|p| p.coords.golden_lattice().map(|g| (g.m, g.n)))
            .collect()
    }

    /// Exact coordinates for every point, if all points have them.
    pub fn exact_keys(&self) -> Option<Vec<Vec<GoldenRat>>> {
        self.points
            .iter()
            .map(|p| p.coords.exact.clone())
            .collect()
    }

    pub fn phys1_values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.phys1()).collect()
    }

    /// Translate every point by `t`; the region shifts along.
    pub fn translate(&self, t: &Coords) -> Result<PointSet> {
        if t.dim() != self.dim() {
            return Err(Error::DimensionMismatch("translation vector".into()));
        }
        let points = self
            .points
            .iter()
            .map(|p| {
                Ok(PointEntry {
                    coords: p.coords.add(t)?,
                    internal: None,
                    boundary_uncertain: p.boundary_uncertain,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let t_exact: Vec<Rat> = match &t.exact {
            Some(e) if e.iter().all(|v| v.is_rational()) => {
                e.iter().map(|v| v.coeff_a().clone()).collect()
            }
            _ => t
                .approx
                .iter()
                .map(|v| Rat::from_float(*v).unwrap_or_else(|| Rat::from_integer(0.into())))
                .collect(),
        };
        let region = Region {
            dims: self
                .region
                .dims
                .iter()
                .zip(&t_exact)
                .map(|((lo, hi), tv)| (lo + tv, hi + tv))
                .collect(),
        };
        Ok(PointSet::new(points, self.provenance.clone(), region))
    }

    pub fn restrict(&self, region: &Region) -> PointSet {
        let points = self
            .points
            .iter()
            .filter(|p| match &p.coords.exact {
                Some(e) => region.contains_exact(e),
                None => region.contains_f64(&p.coords.approx),
            })
            .cloned()
            .collect();
        PointSet {
            points,
            provenance: self.provenance.clone(),
            region: region.clone(),
        }
    }
}

/// Minimum pairwise distance. Exact adjacent differences in one
/// dimension; quadratic scan elsewhere.
pub fn min_gap(ps: &PointSet) -> Result<f64> {
    if ps.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: ps.len(),
        });
    }
    if ps.dim() == 1 {
        // Points are sorted, so adjacent differences suffice.
        let mut best: Option<f64> = None;
        if let Some(exact) = ps.exact_keys() {
            for w in exact.windows(2) {
                let d = (&w[1][0] - &w[0][0]).to_f64();
                best = Some(best.map_or(d, |b: f64| b.min(d)));
            }
        } else {
            let xs = ps.phys1_values();
            for w in xs.windows(2) {
                let d = w[1] - w[0];
                best = Some(best.map_or(d, |b: f64| b.min(d)));
            }
        }
        Ok(best.expect("at least one adjacent pair"))
    } else {
        if ps.len() > 20_000 {
            return Err(Error::GuardExceeded {
                what: format!("pairwise gap scan over {} points", ps.len()),
                limit: "20000".into(),
            });
        }
        let mut best = f64::INFINITY;
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                best = best.min(ps.points[i].coords.dist_f64(&ps.points[j].coords));
            }
        }
        Ok(best)
    }
}

/// Empirical covering radius of a 1-d point set over `region`, sampled
/// on a deterministic grid.
///
/// The result is only trusted when the sampled region keeps a margin of
/// at least the computed radius to the enumerated region, so that no
/// unseen point outside the enumeration could have been closer.
pub fn covering_radius_estimate(
    ps: &PointSet,
    region: &Region,
    pitch: Option<f64>,
) -> Result<f64> {
    if ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if ps.dim() != 1 || region.dim() != 1 {
        return Err(Error::DimensionMismatch(
            "covering radius sampling is one-dimensional".into(),
        ));
    }
    let pitch = match pitch {
        Some(p) if p > 0.0 => p,
        Some(_) => {
            return Err(Error::InvalidConfig("grid pitch must be positive".into()));
        }
        None => {
            let g = if ps.len() >= 2 { min_gap(ps)? } else { 1.0 };
            (g / 4.0).max(1e-6)
        }
    };
    let xs = ps.phys1_values();
    let lo = region.dims[0].0.to_f64().unwrap_or(f64::NAN);
    let hi = region.dims[0].1.to_f64().unwrap_or(f64::NAN);
    let steps = ((hi - lo) / pitch).round() as u64;
    let mut worst = 0.0f64;
    let mut idx = 0usize;
    for s in 0..=steps {
        let x = lo + s as f64 * pitch;
        let x = x.min(hi);
        while idx + 1 < xs.len() && xs[idx + 1] <= x {
            idx += 1;
        }
        let mut d = (x - xs[idx]).abs();
        if idx + 1 < xs.len() {
            d = d.min((xs[idx + 1] - x).abs());
        }
        worst = worst.max(d);
    }
    // Validity: the estimate must not exceed the enumeration margin.
    let margin = Rat::from_float(worst).unwrap_or_else(|| Rat::from_integer(0.into()));
    if !ps.region.covers_with_margin(region, &margin) {
        return Err(Error::MarginTooSmall {
            region: region.describe(),
            enumerated: ps.region.describe(),
            margin: format!("{worst:.6}"),
        });
    }
    Ok(worst)
}

/// Hash-backed membership probe over a point set: exact keys where the
/// set carries them, a 1e-9 float match otherwise.
pub struct Membership {
    index: SetIndex,
}

impl Membership {
    pub fn new(ps: &PointSet) -> Self {
        Membership {
            index: SetIndex::build(ps, 1e-9),
        }
    }

    pub fn contains(&self, c: &Coords) -> bool {
        self.index.contains(c)
    }
}

/// Uniform set index for exact membership tests. Golden lattice sets get
/// an integer-pair fast path.
pub(crate) enum SetIndex {
    Golden(HashMap<(i64, i64), usize>),
    Exact(HashMap<Vec<GoldenRat>, usize>),
    /// Sorted 1-d floats, matched with a tolerance.
    Float(Vec<f64>, f64),
}

impl SetIndex {
    pub(crate) fn build(ps: &PointSet, float_tol: f64) -> SetIndex {
        if let Some(keys) = ps.golden_keys() {
            SetIndex::Golden(keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect())
        } else if let Some(keys) = ps.exact_keys() {
            SetIndex::Exact(keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect())
        } else {
            SetIndex::Float(ps.phys1_values(), float_tol)
        }
    }

    pub(crate) fn contains(&self, c: &Coords) -> bool {
        self.lookup(c).is_some()
    }

    pub(crate) fn lookup(&self, c: &Coords) -> Option<usize> {
        match self {
            SetIndex::Golden(map) => {
                let g = c.golden_lattice()?;
                map.get(&(g.m, g.n)).copied()
            }
            SetIndex::Exact(map) => {
                let e = c.exact.as_ref()?;
                map.get(e).copied()
            }
            SetIndex::Float(xs, tol) => {
                let x = c.approx[0];
                let i = xs.partition_point(|v| *v < x);
                for j in [i.wrapping_sub(1), i] {
                    if let Some(v) = xs.get(j) {
                        if (v - x).abs() <= *tol {
                            return Some(j);
                        }
                    }
                }
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_have_unit_min_gap() {
        let z = PointSet::integers(0, 10);
        assert_eq!(z.len(), 11);
        assert_eq!(min_gap(&z).unwrap(), 1.0);
    }

    #[test]
    fn min_gap_exact_mixed_points() {
        // {0, tau-1, 1}: smallest gap is 2 - tau
        let tau = GoldenRat::tau();
        let pts = vec![
            Coords::golden_rat(GoldenRat::zero()),
            Coords::golden_rat(&tau - &GoldenRat::from_int(1)),
            Coords::golden_rat(GoldenRat::from_int(1)),
        ];
        let ps = PointSet::from_coords(
            pts,
            Provenance::Explicit { label: "t".into() },
            Region::interval_f64(0.0, 1.0).unwrap(),
        );
        let g = min_gap(&ps).unwrap();
        assert!((g - (2.0 - crate::golden::TAU_F64)).abs() < 1e-12);
    }

    #[test]
    fn min_gap_needs_two_points() {
        let ps = PointSet::integers(3, 3);
        assert!(matches!(
            min_gap(&ps),
            Err(Error::TooFewPoints { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn covering_radius_of_integers_is_half() {
        let z = PointSet::integers(-100, 100);
        let r = covering_radius_estimate(
            &z,
            &Region::interval_f64(-90.0, 90.0).unwrap(),
            None,
        )
        .unwrap();
        assert_eq!(r, 0.5);
    }

    #[test]
    fn covering_radius_rejects_thin_margin() {
        // Points only on [0, 10] but sampling asks about [0, 100].
        let z = PointSet::integers(0, 10);
        let err = covering_radius_estimate(
            &z,
            &Region::interval_f64(0.0, 100.0).unwrap(),
            Some(0.5),
        );
        assert!(matches!(err, Err(Error::MarginTooSmall { .. })));
    }

    #[test]
    fn dedup_is_exact() {
        let pts = vec![
            Coords::golden(GoldenInt::new(1, 0)),
            Coords::golden(GoldenInt::new(1, 0)),
            Coords::golden(GoldenInt::new(0, 1)),
        ];
        let ps = PointSet::from_coords(
            pts,
            Provenance::Explicit { label: "d".into() },
            Region::interval_f64(0.0, 2.0).unwrap(),
        );
        assert_eq!(ps.len(), 2);
    }

    #[test]
    fn translate_shifts_exactly() {
        let z = PointSet::integers(0, 3);
        let t = Coords::golden(GoldenInt::new(0, 1));
        let shifted = z.translate(&t).unwrap();
        let g = shifted.points[0].coords.golden_lattice().unwrap();
        assert_eq!(g, GoldenInt::new(0, 1));
    }
}
