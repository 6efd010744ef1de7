//! Almost-planar realizations of the catalog diagrams.
//!
//! Each builder lays a long-knot diagram out as a planar path, lifts the
//! strands out of the plane near the crossings, and returns a polyline whose
//! projection recovers the intended signed Gauss code. [`extract_diagram_code`]
//! performs that recovery and is how the tests tie the shipped catalog codes
//! to actual curves.

use super::polyline::{Polyline3, Vec3};
use super::GeomError;
use crate::codes::{Passage, Sign, SignedGaussCode, Strand};

/// A planar path with a chosen over/under resolution at each self-crossing.
#[derive(Debug, Clone)]
pub struct PlanarPath {
    points: Vec<(f64, f64)>,
    /// Per crossing, in order of first passage: is the earlier strand on top?
    over_first: Vec<bool>,
}

#[derive(Debug, Clone, Copy)]
struct Crossing {
    param_a: f64,
    param_b: f64,
}

impl PlanarPath {
    pub fn new(points: Vec<(f64, f64)>, over_first: Vec<bool>) -> Self {
        PlanarPath { points, over_first }
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    fn subdivided(&self, max_len: f64) -> PlanarPath {
        let mut pts = Vec::new();
        for w in self.points.windows(2) {
            let (a, b) = (w[0], w[1]);
            let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
            let pieces = (len / max_len).ceil().max(1.0) as usize;
            for k in 0..pieces {
                let t = k as f64 / pieces as f64;
                pts.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
            }
        }
        pts.push(*self.points.last().unwrap());
        PlanarPath { points: pts, over_first: self.over_first.clone() }
    }

    /// Transverse self-intersections, sorted by first passage parameter.
    fn crossings(&self) -> Vec<Crossing> {
        let p = &self.points;
        let n = p.len() - 1;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 2..n {
                if let Some((t, u)) = segment_intersection(p[i], p[i + 1], p[j], p[j + 1]) {
                    out.push(Crossing { param_a: i as f64 + t, param_b: j as f64 + u });
                }
            }
        }
        out.sort_by(|a, b| a.param_a.total_cmp(&b.param_a));
        out
    }

    fn tangent(&self, param: f64) -> (f64, f64) {
        let i = param.floor() as usize;
        let (a, b) = (self.points[i], self.points[i + 1]);
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len = (dx * dx + dy * dy).sqrt();
        (dx / len, dy / len)
    }

    /// The signed Gauss code read off the resolved diagram.
    pub fn code(&self) -> Result<SignedGaussCode, crate::codes::CodeError> {
        let crossings = self.crossings();
        let mut passages: Vec<(f64, usize, bool)> = Vec::new();
        for (k, c) in crossings.iter().enumerate() {
            passages.push((c.param_a, k, true));
            passages.push((c.param_b, k, false));
        }
        passages.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out = Vec::new();
        for &(_, k, is_first) in &passages {
            let c = crossings[k];
            let over_first = self.over_first[k];
            let strand = if is_first == over_first { Strand::Over } else { Strand::Under };
            let (t_first, t_second) = (self.tangent(c.param_a), self.tangent(c.param_b));
            let (t_over, t_under) = if over_first { (t_first, t_second) } else { (t_second, t_first) };
            let det = t_over.0 * t_under.1 - t_over.1 * t_under.0;
            let sign = if det > 0.0 { Sign::Plus } else { Sign::Minus };
            out.push(Passage { strand, crossing: k as u32 + 1, sign });
        }
        SignedGaussCode::new(out)
    }

    /// Lift to an almost-planar polyline: the over strand rises to `+height`
    /// and the under strand dips to `-height` near each crossing, with
    /// quartic bumps of the given arclength half-width.
    pub fn lift(&self, height: f64, halfwidth: f64) -> Result<Polyline3, GeomError> {
        let fine = self.subdivided(halfwidth / 3.0);
        let crossings = fine.crossings();
        // arclength at each vertex and at each passage parameter
        let pts = &fine.points;
        let mut arc = vec![0.0f64; pts.len()];
        for i in 1..pts.len() {
            let (a, b) = (pts[i - 1], pts[i]);
            arc[i] = arc[i - 1] + ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
        }
        let arc_at = |param: f64| {
            let i = param.floor() as usize;
            arc[i] + (param - i as f64) * (arc[i + 1] - arc[i])
        };
        let mut bumps: Vec<(f64, f64)> = Vec::new();
        for (k, c) in crossings.iter().enumerate() {
            let sign = if self.over_first[k] { 1.0 } else { -1.0 };
            bumps.push((arc_at(c.param_a), sign * height));
            bumps.push((arc_at(c.param_b), -sign * height));
        }
        let mut vertices = Vec::with_capacity(pts.len());
        for (i, &(x, y)) in pts.iter().enumerate() {
            let mut z = 0.0;
            for &(center, amp) in &bumps {
                let u = (arc[i] - center).abs() / halfwidth;
                if u < 1.0 {
                    let q = 1.0 - u * u;
                    z += amp * q * q;
                }
            }
            vertices.push(Vec3::new(x, y, z));
        }
        Polyline3::open(vertices)
    }
}

fn segment_intersection(
    p1: (f64, f64),
    p2: (f64, f64),
    p3: (f64, f64),
    p4: (f64, f64),
) -> Option<(f64, f64)> {
    let d = (p2.0 - p1.0) * (p4.1 - p3.1) - (p2.1 - p1.1) * (p4.0 - p3.0);
    if d.abs() < 1e-12 {
        return None;
    }
    let t = ((p3.0 - p1.0) * (p4.1 - p3.1) - (p3.1 - p1.1) * (p4.0 - p3.0)) / d;
    let u = ((p3.0 - p1.0) * (p2.1 - p1.1) - (p3.1 - p1.1) * (p2.0 - p1.0)) / d;
    if t > 1e-9 && t < 1.0 - 1e-9 && u > 1e-9 && u < 1.0 - 1e-9 {
        Some((t, u))
    } else {
        None
    }
}

/// Project an almost-planar long polyline back to its signed Gauss code:
/// crossings come from the xy-projection and over/under from the lifted z.
pub fn extract_diagram_code(p: &Polyline3) -> Result<SignedGaussCode, GeomError> {
    if p.is_closed() {
        return Err(GeomError::NotAlmostPlanar("closed polyline".into()));
    }
    let points: Vec<(f64, f64)> = p.vertices().iter().map(|v| (v.x, v.y)).collect();
    let shadow = PlanarPath::new(points, Vec::new());
    let crossings = shadow.crossings();
    let z_at = |param: f64| {
        let i = param.floor() as usize;
        let t = param - i as f64;
        let v = p.vertices();
        v[i].z + t * (v[i + 1].z - v[i].z)
    };
    let mut over_first = Vec::with_capacity(crossings.len());
    for c in &crossings {
        let (za, zb) = (z_at(c.param_a), z_at(c.param_b));
        if (za - zb).abs() < 1e-9 {
            return Err(GeomError::NotAlmostPlanar(format!(
                "strands are not separated at a crossing (dz = {:.2e})",
                za - zb
            )));
        }
        over_first.push(za > zb);
    }
    let resolved = PlanarPath::new(shadow.points, over_first);
    resolved.code().map_err(|e| GeomError::NotAlmostPlanar(e.to_string()))
}

/// The cut epitrochoid underlying the standard trefoil diagram, with tails.
fn trefoil_points() -> Vec<(f64, f64)> {
    let samples = 120;
    let delta = 2.0 * std::f64::consts::PI / samples as f64 * 0.5;
    let mut pts = vec![(-6.0, 0.0), (-1.0, 0.0)];
    for k in 0..=samples {
        let t = delta + (2.0 * std::f64::consts::PI - 2.0 * delta) * k as f64 / samples as f64;
        let r = 2.0 + (3.0 * t).cos();
        let ang = 2.0 * t + std::f64::consts::PI / 2.0;
        pts.push((r * ang.cos(), r * ang.sin() - 5.0));
    }
    pts.push((1.0, 0.0));
    pts.push((6.0, 0.0));
    pts
}

/// Right-handed trefoil, all crossings positive, writhe +3.
pub fn almost_planar_trefoil() -> PlanarPath {
    PlanarPath::new(trefoil_points(), vec![false, true, false])
}

/// The standard figure-eight long diagram, writhe 0.
pub fn almost_planar_figure_eight() -> PlanarPath {
    let arc = |cx: f64, cy: f64, r: f64, t0: f64, mut t1: f64, out: &mut Vec<(f64, f64)>| {
        if t1 < t0 {
            t1 += 2.0 * std::f64::consts::PI;
        }
        let n = 40;
        for k in 0..=n {
            let t = t0 + (t1 - t0) * k as f64 / n as f64;
            out.push((cx + r * t.cos(), cy + r * t.sin()));
        }
    };
    let mut raw: Vec<(f64, f64)> = vec![(100.0, 300.0), (500.0, 300.0)];
    arc(500.0, 700.0, 400.0, 4.7123890, 5.6396842, &mut raw);
    arc(500.0, 700.0, 400.0, 5.9026789, 6.2831853, &mut raw);
    arc(700.0, 700.0, 200.0, 6.2831853, 3.1415927, &mut raw);
    arc(850.0, 700.0, 350.0, 3.1415927, 4.2487414, &mut raw);
    arc(850.0, 700.0, 350.0, 4.4209322, 6.2831853, &mut raw);
    arc(1000.0, 700.0, 200.0, 6.2831853, 2.2455373, &mut raw);
    arc(1000.0, 700.0, 200.0, 2.5535901, 3.1415927, &mut raw);
    arc(1200.0, 700.0, 400.0, 3.1415927, 4.0176507, &mut raw);
    arc(1200.0, 700.0, 400.0, 4.1719695, 4.7123890, &mut raw);
    raw.push((1200.0, 300.0));
    raw.push((1600.0, 300.0));
    // flip y, rescale, drop coincident points
    let mut points: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
    for (x, y) in raw {
        let p = ((x - 850.0) / 100.0, (300.0 - y) / 100.0);
        if points.last().map_or(true, |q: &(f64, f64)| {
            let (dx, dy) = (p.0 - q.0, p.1 - q.1);
            (dx * dx + dy * dy).sqrt() > 1e-9
        }) {
            points.push(p);
        }
    }
    PlanarPath::new(points, vec![true, false, true, true])
}

/// The 5-crossing twist knot: the trefoil path with a finger clasping the
/// left tail, writhe +5.
pub fn twist_knot_5_2() -> PlanarPath {
    let tp = trefoil_points();
    let mut points = tp[..=80].to_vec();
    points.extend_from_slice(&[(-3.8, -4.8), (-3.8, 0.5), (-4.5, 0.5), (-4.5, -5.0)]);
    points.extend_from_slice(&tp[81..]);
    PlanarPath::new(points, vec![true, false, false, true, false])
}

/// Right trefoil with one positive kink in the left tail, writhe +4.
pub fn almost_planar_kinked_trefoil() -> PlanarPath {
    let tp = trefoil_points();
    let mut points = vec![
        (-6.0, 0.0),
        (-5.0, 0.0),
        (-3.0, 0.0),
        (-2.6, 0.5),
        (-3.3, 0.8),
        (-3.7, 0.3),
        (-3.5, -0.4),
    ];
    points.extend_from_slice(&tp[1..]);
    PlanarPath::new(points, vec![false, false, true, false])
}

/// Two clasped loops forming a positive Hopf link, linking number +1.
pub fn hopf_clasp() -> (Polyline3, Polyline3) {
    let n = 24;
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for k in 0..n {
        let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        a.push(Vec3::new(t.cos(), t.sin(), 0.0));
        b.push(Vec3::new(1.0 + t.cos(), 0.0, -t.sin()));
    }
    (Polyline3::closed(a).unwrap(), Polyline3::closed(b).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_gauss_code;
    use crate::geom::{gauss_linking, self_linking_half};

    #[test]
    fn trefoil_path_realizes_standard_code() {
        let code = almost_planar_trefoil().code().unwrap();
        assert_eq!(code.to_text(), "U1+ O2+ U3+ O1+ U2+ O3+");
        assert_eq!(code.writhe(), 3);
    }

    #[test]
    fn figure_eight_path_realizes_catalog_code() {
        let code = almost_planar_figure_eight().code().unwrap();
        assert_eq!(code, parse_gauss_code("O1+ U2- O4- U1+ O3+ U4- O2- U3+").unwrap());
    }

    #[test]
    fn twist_knot_path_realizes_catalog_code() {
        let code = twist_knot_5_2().code().unwrap();
        assert_eq!(code, parse_gauss_code("U1+ O2+ U3+ O4+ U5+ O3+ U2+ O1+ U4+ O5+").unwrap());
        assert_eq!(code.writhe(), 5);
    }

    #[test]
    fn kinked_trefoil_path_realizes_catalog_code() {
        let code = almost_planar_kinked_trefoil().code().unwrap();
        assert_eq!(code, parse_gauss_code("U1+ O1+ U2+ O3+ U4+ O2+ U3+ O4+").unwrap());
    }

    #[test]
    fn lift_round_trips_through_extraction() {
        for (path, expect) in [
            (almost_planar_trefoil(), "U1+ O2+ U3+ O1+ U2+ O3+"),
            (almost_planar_figure_eight(), "O1+ U2- O4- U1+ O3+ U4- O2- U3+"),
            (twist_knot_5_2(), "U1+ O2+ U3+ O4+ U5+ O3+ U2+ O1+ U4+ O5+"),
            (almost_planar_kinked_trefoil(), "U1+ O1+ U2+ O3+ U4+ O2+ U3+ O4+"),
        ] {
            let lifted = path.lift(0.08, 0.5).unwrap();
            lifted.validate_long_knot().unwrap();
            let code = extract_diagram_code(&lifted).unwrap();
            assert_eq!(code, parse_gauss_code(expect).unwrap());
        }
    }

    #[test]
    fn lifted_trefoil_half_writhe() {
        let lifted = almost_planar_trefoil().lift(0.08, 0.5).unwrap();
        let val = self_linking_half(&lifted).unwrap();
        assert!((val - 1.5).abs() < 0.05, "got {val}");
    }

    #[test]
    fn lifted_figure_eight_half_writhe_vanishes() {
        let lifted = almost_planar_figure_eight().lift(0.08, 0.5).unwrap();
        let val = self_linking_half(&lifted).unwrap();
        assert!(val.abs() < 0.05, "got {val}");
    }

    #[test]
    fn half_writhe_is_dilation_invariant() {
        let lifted = almost_planar_trefoil().lift(0.08, 0.5).unwrap();
        let base = self_linking_half(&lifted).unwrap();
        let big = self_linking_half(&lifted.scaled(3.0)).unwrap();
        assert!((base - big).abs() < 1e-9);
    }

    #[test]
    fn hopf_clasp_links_once_positively() {
        let (a, b) = hopf_clasp();
        let lk = gauss_linking(&a, &b).unwrap();
        assert!((lk - 1.0).abs() < 1e-9, "lk = {lk}");
    }
}
