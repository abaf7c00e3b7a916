//! Phase-diagram engine over the `(u, v)` plane.
//!
//! Grids are swept row by row (`v` outer, `u` inner). Rows may be evaluated in
//! parallel but results are always merged in row-major order, so output never
//! depends on the worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::dipolar::{spectrum, BellLabel, CouplingParams, COUPLING_LIMIT};
use crate::error::{Error, Result};
use crate::measures::{chsh_max, negativity_bell_diagonal};
use crate::scalar::Real;
use crate::teleport::{best_fidelity, minimum_fidelity};

/// Resource guard on `nu · nv`.
pub const MAX_GRID_POINTS: u128 = 100_000_000;

pub const DEFAULT_ROOT_TOL: f64 = 1e-9;

pub const SCAN_HEADER: &str = "u,v,chsh,negativity,fidelity,dominant_weight,dominant_label,region";
pub const CONTOUR_HEADER: &str = "contour_id,u,v";
pub const DOMINANT_HEADER: &str = "u,v,dominant_label,dominant_weight";

/// Inclusive axis `min:max:count`; coordinate `i` is `min + i·(max − min)/(count − 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange<T> {
    pub min: T,
    pub max: T,
    pub count: usize,
}

impl<T: Real> AxisRange<T> {
    pub fn new(min: T, max: T, count: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min >= max {
            return Err(Error::InvalidGrid(format!("need finite min < max, got {min}:{max}")));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points per axis, got {count}")));
        }
        let limit = T::lit(COUPLING_LIMIT);
        if min < -limit || max > limit {
            return Err(Error::InvalidGrid(format!("axis {min}:{max} leaves [-{COUPLING_LIMIT}, {COUPLING_LIMIT}]")));
        }
        Ok(Self { min, max, count })
    }

    /// The last coordinate is pinned to `max` exactly.
    #[inline]
    pub fn coord(&self, i: usize) -> T {
        if i + 1 == self.count {
            return self.max;
        }
        let step = (self.max - self.min) / T::lit((self.count - 1) as f64);
        self.min + T::lit(i as f64) * step
    }
}

impl<T: Real> FromStr for AxisRange<T> {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts.as_slice() else {
            return Err(format!("expected min:max:count, got `{s}`"));
        };
        let lo: f64 = lo.trim().parse().map_err(|e| format!("bad min `{lo}`: {e}"))?;
        let hi: f64 = hi.trim().parse().map_err(|e| format!("bad max `{hi}`: {e}"))?;
        let n: usize = n.trim().parse().map_err(|e| format!("bad count `{n}`: {e}"))?;
        AxisRange::new(T::lit(lo), T::lit(hi), n).map_err(|e| e.to_string())
    }
}

/// Rectangular sampling of the coupling plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    pub u: AxisRange<T>,
    pub v: AxisRange<T>,
}

impl<T: Real> GridSpec<T> {
    pub fn new(u: AxisRange<T>, v: AxisRange<T>) -> Result<Self> {
        let u = AxisRange::new(u.min, u.max, u.count)?;
        let v = AxisRange::new(v.min, v.max, v.count)?;
        let points = u.count as u128 * v.count as u128;
        if points > MAX_GRID_POINTS {
            return Err(Error::ResourceGuard { points, limit: MAX_GRID_POINTS });
        }
        Ok(Self { u, v })
    }

    pub fn from_bounds(u_min: T, u_max: T, nu: usize, v_min: T, v_max: T, nv: usize) -> Result<Self> {
        Self::new(AxisRange { min: u_min, max: u_max, count: nu }, AxisRange { min: v_min, max: v_max, count: nv })
    }

    pub fn len(&self) -> usize {
        self.u.count * self.v.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    fn params(&self, i: usize, j: usize) -> CouplingParams<T> {
        CouplingParams::new(self.u.coord(i), self.v.coord(j)).expect("grid validated against the coupling limit")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    Separable,
    EntangledLocal,
    Nonlocal,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::Separable => "separable",
            Region::EntangledLocal => "entangled_local",
            Region::Nonlocal => "nonlocal",
        }
    }

    /// Separable iff negativity < tol; otherwise nonlocal iff chsh > 2 + tol.
    pub fn classify<T: Real>(chsh: T, negativity: T) -> Self {
        if negativity < T::BOUNDARY_TOL {
            Region::Separable
        } else if chsh > T::lit(2.0) + T::BOUNDARY_TOL {
            Region::Nonlocal
        } else {
            Region::EntangledLocal
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything the phase diagrams plot at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRecord<T> {
    pub u: T,
    pub v: T,
    pub chsh: T,
    pub negativity: T,
    pub fidelity: T,
    pub dominant_weight: T,
    pub dominant_label: BellLabel,
    pub region: Region,
}

impl<T: Real> ScanRecord<T> {
    /// One CSV row (no terminator) in [`SCAN_HEADER`] column order.
    pub fn csv_row(&self, normalized_negativity: bool) -> String {
        let neg = if normalized_negativity { T::lit(2.0) * self.negativity } else { self.negativity };
        format!(
            "{},{},{},{},{},{},{},{}",
            self.u, self.v, self.chsh, neg, self.fidelity, self.dominant_weight, self.dominant_label, self.region
        )
    }
}

/// Signed quantities whose zero sets are the critical boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    /// `B − 2`.
    ChshMinus2,
    /// `max_α p_α − ½`, the signed continuation of the negativity.
    Negativity,
    /// `F − 2/3`.
    FidelityMinusTwoThirds,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::ChshMinus2 => "chsh_minus_2",
            Quantity::Negativity => "negativity",
            Quantity::FidelityMinusTwoThirds => "fidelity_minus_twothirds",
        }
    }

    pub fn evaluate<T: Real>(self, p: &CouplingParams<T>) -> T {
        match self {
            Quantity::ChshMinus2 => chsh_max(p).value - T::lit(2.0),
            Quantity::Negativity => spectrum(p).weights().dominant().1 - T::lit(0.5),
            Quantity::FidelityMinusTwoThirds => {
                best_fidelity(spectrum(p).weights()).best - minimum_fidelity::<T>(2).expect("d = 2")
            }
        }
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "chsh" | "chsh_minus_2" => Ok(Quantity::ChshMinus2),
            "negativity" => Ok(Quantity::Negativity),
            "fidelity" | "fidelity_minus_twothirds" => Ok(Quantity::FidelityMinusTwoThirds),
            other => Err(format!("unknown quantity `{other}` (expected chsh, negativity or fidelity)")),
        }
    }
}

/// One connected piece of a traced zero set.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourPolyline<T> {
    pub quantity: Quantity,
    pub points: Vec<(T, T)>,
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominantPoint<T> {
    pub u: T,
    pub v: T,
    pub label: BellLabel,
    pub weight: T,
}

pub fn evaluate_point<T: Real>(p: &CouplingParams<T>) -> ScanRecord<T> {
    let spec = spectrum(p);
    let weights = spec.weights();
    let chsh = chsh_max(p).value;
    let negativity = negativity_bell_diagonal(weights);
    let fidelity = best_fidelity(weights).best;
    let (dominant_label, dominant_weight) = weights.dominant();
    ScanRecord {
        u: p.u(),
        v: p.v(),
        chsh,
        negativity,
        fidelity,
        dominant_weight,
        dominant_label,
        region: Region::classify(chsh, negativity),
    }
}

fn sweep<T: Real, R: Send>(g: &GridSpec<T>, f: impl Fn(&CouplingParams<T>) -> R + Sync) -> Vec<R> {
    let rows: Vec<Vec<R>> =
        (0..g.v.count).into_par_iter().map(|j| (0..g.u.count).map(|i| f(&g.params(i, j))).collect()).collect();
    rows.into_iter().flatten().collect()
}

/// Row-major (`v` outer, `u` inner) records on the current rayon pool.
pub fn scan_grid<T: Real>(g: &GridSpec<T>) -> Vec<ScanRecord<T>> {
    sweep(g, evaluate_point)
}

/// [`scan_grid`] on a dedicated pool of `workers` threads (0 = rayon default).
pub fn scan_grid_with_workers<T: Real>(g: &GridSpec<T>, workers: usize) -> Result<Vec<ScanRecord<T>>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidGrid(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(|| scan_grid(g)))
}

/// Dominant Boltzmann weight per grid point.
pub fn dominant_map<T: Real>(g: &GridSpec<T>) -> Vec<DominantPoint<T>> {
    sweep(g, |p| {
        let (label, weight) = spectrum(p).weights().dominant();
        debug_assert!(label != BellLabel::PsiMinus, "Ψ⁻ dominant at ({}, {})", p.u(), p.v());
        DominantPoint { u: p.u(), v: p.v(), label, weight }
    })
}

/// Grid edge: `H(i, j)` joins nodes `(i, j)`–`(i+1, j)`, `V(i, j)` joins `(i, j)`–`(i, j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

/// Bisection between a non-positive and a positive endpoint along a segment.
///
/// Stops once the bracket is narrower than `tol` and the better endpoint has
/// `|f| < tol`, or when the bracket can no longer be split.
pub fn bisect<T: Real>(f: impl Fn(T) -> T, a: T, fa: T, b: T, fb: T, tol: T) -> (T, T) {
    debug_assert!((fa > T::zero()) != (fb > T::zero()), "endpoints must bracket a sign change");
    let (mut lo, mut flo, mut hi, mut fhi) = if fa > T::zero() { (b, fb, a, fa) } else { (a, fa, b, fb) };
    let best = |lo: T, flo: T, hi: T, fhi: T| if flo.abs() <= fhi.abs() { (lo, flo) } else { (hi, fhi) };
    for _ in 0..400 {
        let (x, fx) = best(lo, flo, hi, fhi);
        if (hi - lo).abs() < tol && fx.abs() < tol {
            return (x, fx);
        }
        let mid = lo + (hi - lo) * T::lit(0.5);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm > T::zero() {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    best(lo, flo, hi, fhi)
}

/// Traces the zero set of `quantity` over `g`.
///
/// Every grid edge whose endpoints straddle the sign change gets one root by
/// bisection; roots are linked through marching-squares cells, with saddle
/// cells resolved by the sign at the cell centre.
pub fn trace_boundary<T: Real>(quantity: Quantity, g: &GridSpec<T>, tol: T) -> Result<Vec<ContourPolyline<T>>> {
    if tol.is_nan() || tol <= T::zero() {
        return Err(Error::InvalidTolerance(tol.as_f64()));
    }
    let (nu, nv) = (g.u.count, g.v.count);
    let eval = |u: T, v: T| -> T { quantity.evaluate(&CouplingParams::new(u, v).expect("inside grid bounds")) };
    let values = sweep(g, |p| quantity.evaluate(p));
    let inside = |i: usize, j: usize| values[j * nu + i] > T::zero();

    let mut crossings = Vec::new();
    for j in 0..nv {
        for i in 0..nu {
            if i + 1 < nu && inside(i, j) != inside(i + 1, j) {
                crossings.push(Edge::H(i, j));
            }
            if j + 1 < nv && inside(i, j) != inside(i, j + 1) {
                crossings.push(Edge::V(i, j));
            }
        }
    }
    let roots: Vec<(Edge, (T, T))> = crossings
        .into_par_iter()
        .map(|edge| {
            let point = match edge {
                Edge::H(i, j) => {
                    let v = g.v.coord(j);
                    let (u, _) = bisect(
                        |u| eval(u, v),
                        g.u.coord(i),
                        values[j * nu + i],
                        g.u.coord(i + 1),
                        values[j * nu + i + 1],
                        tol,
                    );
                    (u, v)
                }
                Edge::V(i, j) => {
                    let u = g.u.coord(i);
                    let (v, _) = bisect(
                        |v| eval(u, v),
                        g.v.coord(j),
                        values[j * nu + i],
                        g.v.coord(j + 1),
                        values[(j + 1) * nu + i],
                        tol,
                    );
                    (u, v)
                }
            };
            (edge, point)
        })
        .collect();
    let roots: BTreeMap<Edge, (T, T)> = roots.into_iter().collect();

    let mut links: BTreeMap<Edge, Vec<Edge>> = roots.keys().map(|&e| (e, Vec::new())).collect();
    let mut link = |a: Edge, b: Edge| {
        links.get_mut(&a).expect("crossing edge").push(b);
        links.get_mut(&b).expect("crossing edge").push(a);
    };
    for j in 0..nv.saturating_sub(1) {
        for i in 0..nu.saturating_sub(1) {
            let corners = [inside(i, j), inside(i + 1, j), inside(i + 1, j + 1), inside(i, j + 1)];
            let bottom = Edge::H(i, j);
            let right = Edge::V(i + 1, j);
            let top = Edge::H(i, j + 1);
            let left = Edge::V(i, j);
            let cut: Vec<Edge> = [bottom, right, top, left].into_iter().filter(|e| roots.contains_key(e)).collect();
            match cut.len() {
                0 => {}
                2 => link(cut[0], cut[1]),
                4 => {
                    let centre = eval(
                        (g.u.coord(i) + g.u.coord(i + 1)) * T::lit(0.5),
                        (g.v.coord(j) + g.v.coord(j + 1)) * T::lit(0.5),
                    ) > T::zero();
                    // isolate the two corners whose class differs from the centre
                    let corner_edges = [(bottom, left), (bottom, right), (right, top), (top, left)];
                    for (k, &(a, b)) in corner_edges.iter().enumerate() {
                        if corners[k] != centre {
                            link(a, b);
                        }
                    }
                }
                n => unreachable!("a cell cannot have {n} crossing edges"),
            }
        }
    }

    let mut visited: BTreeMap<Edge, bool> = links.keys().map(|&e| (e, false)).collect();
    let mut out = Vec::new();
    let walk = |start: Edge, visited: &mut BTreeMap<Edge, bool>| -> (Vec<Edge>, bool) {
        let mut chain = vec![start];
        visited.insert(start, true);
        let mut prev: Option<Edge> = None;
        let mut cur = start;
        loop {
            let next = links[&cur].iter().copied().find(|n| Some(*n) != prev && !visited[n]);
            match next {
                Some(n) => {
                    visited.insert(n, true);
                    chain.push(n);
                    prev = Some(cur);
                    cur = n;
                }
                None => {
                    let closed = chain.len() > 2 && links[&cur].contains(&start);
                    return (chain, closed);
                }
            }
        }
    };
    let ends: Vec<Edge> = links.iter().filter(|(_, n)| n.len() < 2).map(|(&e, _)| e).collect();
    for e in ends {
        if !visited[&e] {
            out.push(walk(e, &mut visited));
        }
    }
    let rest: Vec<Edge> = links.keys().copied().collect();
    for e in rest {
        if !visited[&e] {
            out.push(walk(e, &mut visited));
        }
    }

    Ok(out
        .into_iter()
        .map(|(chain, closed)| ContourPolyline { quantity, points: chain.iter().map(|e| roots[e]).collect(), closed })
        .collect())
}

pub fn write_scan_csv<T: Real, W: Write + ?Sized>(
    out: &mut W,
    records: &[ScanRecord<T>],
    normalized_negativity: bool,
) -> io::Result<()> {
    writeln!(out, "{SCAN_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row(normalized_negativity))?;
    }
    Ok(())
}

pub fn write_contour_csv<T: Real, W: Write + ?Sized>(out: &mut W, contours: &[ContourPolyline<T>]) -> io::Result<()> {
    writeln!(out, "{CONTOUR_HEADER}")?;
    for (id, c) in contours.iter().enumerate() {
        for (u, v) in &c.points {
            writeln!(out, "{id},{u},{v}")?;
        }
    }
    Ok(())
}

pub fn write_dominant_csv<T: Real, W: Write + ?Sized>(out: &mut W, points: &[DominantPoint<T>]) -> io::Result<()> {
    writeln!(out, "{DOMINANT_HEADER}")?;
    for p in points {
        writeln!(out, "{},{},{},{}", p.u, p.v, p.label, p.weight)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(u: f64, v: f64) -> CouplingParams<f64> {
        CouplingParams::new(u, v).unwrap()
    }

    fn grid(lo: f64, hi: f64, n: usize) -> GridSpec<f64> {
        GridSpec::from_bounds(lo, hi, n, lo, hi, n).unwrap()
    }

    #[test]
    fn evaluate_point_examples() {
        let r = evaluate_point(&params(0.0, 0.0));
        assert_eq!((r.chsh, r.negativity, r.fidelity, r.dominant_weight), (0.0, 0.0, 0.5, 0.25));
        assert_eq!(r.region, Region::Separable);

        let r = evaluate_point(&params(3.0, 1.0));
        assert!((r.chsh - 1.307064702404812).abs() < 1e-12);
        assert!((r.negativity - 0.034446645388523).abs() < 1e-12);
        assert!((r.fidelity - 0.689631096925682).abs() < 1e-12);
        assert!((r.dominant_weight - 0.534446645388523).abs() < 1e-12);
        assert_eq!(r.dominant_label, BellLabel::PsiPlus);
        assert_eq!(r.region, Region::EntangledLocal);

        let r = evaluate_point(&params(30.0, 0.0));
        assert!((r.chsh - 2.0 * 2f64.sqrt()).abs() < 1e-3);
        assert!((r.negativity - 0.5).abs() < 1e-4);
        assert!((r.fidelity - 1.0).abs() < 1e-4);
        assert_eq!(r.region, Region::Nonlocal);
    }

    #[test]
    fn grid_corners_exact() {
        let recs = scan_grid(&grid(0.0, 1.0, 2));
        let coords: Vec<(f64, f64)> = recs.iter().map(|r| (r.u, r.v)).collect();
        assert_eq!(coords, vec![(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]);
    }

    #[test]
    fn grid_validation() {
        assert!(matches!(GridSpec::from_bounds(1.0, 0.0, 3, 0.0, 1.0, 3), Err(Error::InvalidGrid(_))));
        assert!(matches!(GridSpec::from_bounds(0.0, 1.0, 1, 0.0, 1.0, 3), Err(Error::InvalidGrid(_))));
        assert!(matches!(GridSpec::from_bounds(0.0, 3000.0, 3, 0.0, 1.0, 3), Err(Error::InvalidGrid(_))));
        assert!(matches!(
            GridSpec::from_bounds(0.0, 1.0, 10_001, 0.0, 1.0, 10_000),
            Err(Error::ResourceGuard { points: 100_010_000, .. })
        ));
        assert!(GridSpec::from_bounds(0.0, 1.0, 10_000, 0.0, 1.0, 10_000).is_ok());
    }

    #[test]
    fn axis_parsing() {
        let a: AxisRange<f64> = "-10:10:81".parse().unwrap();
        assert_eq!((a.min, a.max, a.count), (-10.0, 10.0, 81));
        assert_eq!(a.coord(40), 0.0);
        assert_eq!(a.coord(80), 10.0);
        assert!("1:2".parse::<AxisRange<f64>>().is_err());
        assert!("a:2:3".parse::<AxisRange<f64>>().is_err());
        assert!("0:1:1".parse::<AxisRange<f64>>().is_err());
    }

    #[test]
    fn negativity_root_on_segment() {
        let g = GridSpec::from_bounds(2.0, 3.0, 2, 1.0, 2.0, 2).unwrap();
        // sign change bracketed along v = 1
        let q = Quantity::Negativity;
        assert!(q.evaluate(&params(2.0, 1.0)) < 0.0);
        assert!(q.evaluate(&params(3.0, 1.0)) > 0.0);
        let tol = 1e-9;
        let f = |u: f64| q.evaluate(&params(u, 1.0));
        let (root_n, res) = bisect(f, 2.0, f(2.0), 3.0, f(3.0), tol);
        assert!(res.abs() < tol);
        let fq = |u: f64| Quantity::FidelityMinusTwoThirds.evaluate(&params(u, 1.0));
        let (root_f, res_f) = bisect(fq, 2.0, fq(2.0), 3.0, fq(3.0), tol);
        assert!(res_f.abs() < tol);
        assert!((root_n - root_f).abs() < 2.0 * tol);

        let contours = trace_boundary(q, &g, tol).unwrap();
        let on_bottom: Vec<_> = contours.iter().flat_map(|c| &c.points).filter(|p| p.1 == 1.0).collect();
        assert_eq!(on_bottom.len(), 1);
        assert!((on_bottom[0].0 - root_n).abs() < 2.0 * tol);
    }

    #[test]
    fn no_chsh_boundary_near_origin() {
        assert!(trace_boundary(Quantity::ChshMinus2, &grid(-1.0, 1.0, 11), 1e-9).unwrap().is_empty());
    }

    #[test]
    fn bad_tolerance_rejected() {
        assert!(matches!(
            trace_boundary(Quantity::Negativity, &grid(-1.0, 1.0, 3), 0.0),
            Err(Error::InvalidTolerance(_))
        ));
    }

    #[test]
    fn closed_contour_detected() {
        // the separable region around the origin is bounded, so the N = 0 curve closes
        let contours = trace_boundary(Quantity::Negativity, &grid(-10.0, 10.0, 41), 1e-9).unwrap();
        assert!(!contours.is_empty());
        for c in &contours {
            for &(u, v) in &c.points {
                assert!(Quantity::Negativity.evaluate(&params(u, v)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn dominant_map_examples() {
        let g = GridSpec::from_bounds(-10.0, 30.0, 5, -10.0, 10.0, 3).unwrap();
        let map = dominant_map(&g);
        let at = |u: f64, v: f64| map.iter().find(|p| p.u == u && p.v == v).unwrap().label;
        assert_eq!(at(30.0, 0.0), BellLabel::PsiPlus);
        assert_eq!(at(-10.0, 10.0), BellLabel::PhiMinus);
        assert_eq!(at(-10.0, -10.0), BellLabel::PhiPlus);
    }

    #[test]
    fn csv_row_format() {
        let r = evaluate_point(&params(0.0, 0.0));
        assert_eq!(r.csv_row(false), "0,0,0,0,0.5,0.25,PhiPlus,separable");
        let r = evaluate_point(&params(30.0, 0.0));
        let plain: Vec<f64> = r.csv_row(false).split(',').take(5).map(|x| x.parse().unwrap()).collect();
        let norm: Vec<f64> = r.csv_row(true).split(',').take(5).map(|x| x.parse().unwrap()).collect();
        assert_eq!(norm[3], 2.0 * plain[3]);
        assert_eq!(plain[2], r.chsh);
    }
}
