//! Piecewise-linear curves and exact segment-pair Gauss integrals.
//!
//! The Gauss map of a segment pair sweeps a geodesic quadrilateral on the
//! sphere, so each pair contributes its signed spherical area in closed form
//! and the per-pair sum reproduces linking numbers to machine precision.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use super::GeomError;

pub const MIN_SEGMENT: f64 = 1e-12;
pub const MIN_CLEARANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        self * (1.0 / self.norm())
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self * -1.0
    }
}

/// A polyline in 3-space, open (a long knot with x-axis tails) or closed.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline3 {
    vertices: Vec<Vec3>,
    closed: bool,
}

impl Polyline3 {
    pub fn open(vertices: Vec<Vec3>) -> Result<Self, GeomError> {
        Self::build(vertices, false)
    }

    pub fn closed(vertices: Vec<Vec3>) -> Result<Self, GeomError> {
        Self::build(vertices, true)
    }

    fn build(vertices: Vec<Vec3>, closed: bool) -> Result<Self, GeomError> {
        let needed = if closed { 3 } else { 2 };
        if vertices.len() < needed {
            return Err(GeomError::TooFewVertices { needed, got: vertices.len() });
        }
        let p = Polyline3 { vertices, closed };
        for (a, b) in p.segments() {
            let len = (b - a).norm();
            if len < MIN_SEGMENT {
                return Err(GeomError::DegenerateSegment(len));
            }
        }
        Ok(p)
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn segments(&self) -> Vec<(Vec3, Vec3)> {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count)
            .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    /// Uniform scaling about the origin.
    pub fn scaled(&self, factor: f64) -> Polyline3 {
        Polyline3 {
            vertices: self.vertices.iter().map(|&v| v * factor).collect(),
            closed: self.closed,
        }
    }

    /// Check the long-knot boundary condition: the first and last segments
    /// run along the x-axis, outward, beyond |x| = 1.
    pub fn validate_long_knot(&self) -> Result<(), GeomError> {
        if self.closed {
            return Err(GeomError::NotAlmostPlanar("polyline is closed".into()));
        }
        let v = &self.vertices;
        let first = v[0];
        let last = v[v.len() - 1];
        let on_axis = |p: Vec3| p.y.abs() < 1e-9 && p.z.abs() < 1e-9;
        if !(on_axis(first) && on_axis(v[1]) && first.x < -1.0 && v[1].x > first.x) {
            return Err(GeomError::NotAlmostPlanar("left tail is not on the x-axis".into()));
        }
        if !(on_axis(last) && on_axis(v[v.len() - 2]) && last.x > 1.0 && v[v.len() - 2].x < last.x) {
            return Err(GeomError::NotAlmostPlanar("right tail is not on the x-axis".into()));
        }
        Ok(())
    }
}

/// Signed solid angle of the spherical triangle spanned by three directions.
fn triangle_solid_angle(r1: Vec3, r2: Vec3, r3: Vec3) -> f64 {
    let (n1, n2, n3) = (r1.norm(), r2.norm(), r3.norm());
    let numerator = r1.dot(r2.cross(r3));
    let denominator = n1 * n2 * n3 + r1.dot(r2) * n3 + r2.dot(r3) * n1 + r3.dot(r1) * n2;
    2.0 * numerator.atan2(denominator)
}

/// Signed area swept on the sphere by the Gauss map of one segment pair.
fn pair_solid_angle(a1: Vec3, a2: Vec3, b1: Vec3, b2: Vec3) -> f64 {
    let u11 = b1 - a1;
    let u12 = b2 - a1;
    let u21 = b1 - a2;
    let u22 = b2 - a2;
    triangle_solid_angle(u11, u21, u22) + triangle_solid_angle(u11, u22, u12)
}

fn segment_distance(p1: Vec3, p2: Vec3, q1: Vec3, q2: Vec3) -> f64 {
    // standard clamped closest-point computation
    let d1 = p2 - p1;
    let d2 = q2 - q1;
    let r = p1 - q1;
    let a = d1.dot(d1);
    let e = d2.dot(d2);
    let f = d2.dot(r);
    let c = d1.dot(r);
    let b = d1.dot(d2);
    let denom = a * e - b * b;
    let mut s = if denom.abs() > 1e-300 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
    let mut t = if e > 1e-300 { (b * s + f) / e } else { 0.0 };
    if t < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    }
    ((p1 + d1 * s) - (q1 + d2 * t)).norm()
}

/// Gauss linking integral of two disjoint polylines, exact per segment pair.
/// Equals the integer linking number for closed or clasped configurations.
pub fn gauss_linking(p: &Polyline3, q: &Polyline3) -> Result<f64, GeomError> {
    let ps = p.segments();
    let qs = q.segments();
    let mut min_dist = f64::INFINITY;
    for &(a1, a2) in &ps {
        for &(b1, b2) in &qs {
            min_dist = min_dist.min(segment_distance(a1, a2, b1, b2));
        }
    }
    if min_dist < MIN_CLEARANCE {
        return Err(GeomError::IntersectingInputs(min_dist));
    }
    let mut total = 0.0;
    for &(a1, a2) in &ps {
        for &(b1, b2) in &qs {
            total += pair_solid_angle(a1, a2, b1, b2);
        }
    }
    Ok(total / (4.0 * std::f64::consts::PI))
}

/// Gauss integral of one open polyline over ordered pairs x1 < x2: half the
/// polygonal writhe. On an almost-planar diagram this approaches half the sum
/// of crossing signs.
pub fn self_linking_half(p: &Polyline3) -> Result<f64, GeomError> {
    let segs = p.segments();
    let mut total = 0.0;
    for i in 0..segs.len() {
        for j in i + 2..segs.len() {
            let (a1, a2) = segs[i];
            let (b1, b2) = segs[j];
            total += pair_solid_angle(a1, a2, b1, b2);
        }
    }
    Ok(total / (4.0 * std::f64::consts::PI))
}

/// Parse `x y z` triples, one vertex per line, blank line separating
/// components; `#` begins a comment. All components are open polylines.
pub fn parse_polylines(text: &str) -> Result<Vec<Polyline3>, GeomError> {
    let mut out = Vec::new();
    let mut current: Vec<Vec3> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if !current.is_empty() {
                out.push(Polyline3::open(std::mem::take(&mut current))?);
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(GeomError::BadPolylineText {
                line: lineno + 1,
                reason: format!("expected 3 coordinates, got {}", fields.len()),
            });
        }
        let mut coord = [0.0f64; 3];
        for (k, f) in fields.iter().enumerate() {
            coord[k] = f.parse().map_err(|_| GeomError::BadPolylineText {
                line: lineno + 1,
                reason: format!("bad number `{f}`"),
            })?;
        }
        current.push(Vec3::new(coord[0], coord[1], coord[2]));
    }
    if !current.is_empty() {
        out.push(Polyline3::open(current)?);
    }
    Ok(out)
}

pub fn polylines_to_text(polylines: &[Polyline3]) -> String {
    let mut out = String::new();
    for (k, p) in polylines.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        for v in p.vertices() {
            writeln!(out, "{} {} {}", v.x, v.y, v.z).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(center: Vec3, normal_axis: char, r: f64, n: usize, flip: bool) -> Polyline3 {
        let mut v = Vec::new();
        for k in 0..n {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let t = if flip { -t } else { t };
            let (c, s) = (r * t.cos(), r * t.sin());
            let p = match normal_axis {
                'z' => Vec3::new(c, s, 0.0),
                'y' => Vec3::new(c, 0.0, s),
                _ => Vec3::new(0.0, c, s),
            };
            v.push(center + p);
        }
        Polyline3::closed(v).unwrap()
    }

    #[test]
    fn hopf_linking_is_plus_one() {
        let a = circle(Vec3::new(0.0, 0.0, 0.0), 'z', 1.0, 24, false);
        let b = circle(Vec3::new(1.0, 0.0, 0.0), 'y', 1.0, 24, false);
        let lk = gauss_linking(&a, &b).unwrap();
        assert!((lk.abs() - 1.0).abs() < 1e-9, "lk = {lk}");
        // reflecting one component through a plane flips the sign
        let b_mirror = Polyline3::closed(
            b.vertices().iter().map(|&v| Vec3::new(v.x, v.y, -v.z)).collect(),
        )
        .unwrap();
        let lk_m = gauss_linking(&a, &b_mirror).unwrap();
        assert!((lk + lk_m).abs() < 1e-9);
    }

    #[test]
    fn distant_loops_unlink() {
        let a = circle(Vec3::new(0.0, 0.0, 0.0), 'z', 1.0, 24, false);
        let far = circle(Vec3::new(10.0, 0.0, 0.0), 'z', 1.0, 24, false);
        assert!(gauss_linking(&a, &far).unwrap().abs() < 1e-9);
    }

    #[test]
    fn linking_is_refinement_invariant() {
        let a = circle(Vec3::new(0.0, 0.0, 0.0), 'z', 1.0, 12, false);
        let b = circle(Vec3::new(1.0, 0.0, 0.0), 'y', 1.0, 12, false);
        let coarse = gauss_linking(&a, &b).unwrap();
        let a2 = circle(Vec3::new(0.0, 0.0, 0.0), 'z', 1.0, 96, false);
        let b2 = circle(Vec3::new(1.0, 0.0, 0.0), 'y', 1.0, 96, false);
        let fine = gauss_linking(&a2, &b2).unwrap();
        assert!((coarse - fine).abs() < 1e-9, "{coarse} vs {fine}");
    }

    #[test]
    fn linking_is_rigid_motion_invariant() {
        let a = circle(Vec3::new(0.0, 0.0, 0.0), 'z', 1.0, 24, false);
        let b = circle(Vec3::new(1.0, 0.0, 0.0), 'y', 1.0, 24, false);
        let base = gauss_linking(&a, &b).unwrap();
        // rotate both about the z-axis by 0.7 and translate
        let rot = |v: Vec3| {
            let (c, s) = (0.7f64.cos(), 0.7f64.sin());
            Vec3::new(c * v.x - s * v.y + 2.0, s * v.x + c * v.y - 1.0, v.z + 0.5)
        };
        let ar = Polyline3::closed(a.vertices().iter().map(|&v| rot(v)).collect()).unwrap();
        let br = Polyline3::closed(b.vertices().iter().map(|&v| rot(v)).collect()).unwrap();
        assert!((gauss_linking(&ar, &br).unwrap() - base).abs() < 1e-9);
    }

    #[test]
    fn intersecting_inputs_error() {
        let a = circle(Vec3::new(0.0, 0.0, 0.0), 'z', 1.0, 24, false);
        let err = gauss_linking(&a, &a.clone()).unwrap_err();
        assert!(matches!(err, GeomError::IntersectingInputs(_)));
    }

    #[test]
    fn degenerate_segment_rejected() {
        let p = Polyline3::open(vec![Vec3::new(0.0, 0.0, 0.0), Vec3::new(0.0, 0.0, 0.0)]);
        assert!(matches!(p, Err(GeomError::DegenerateSegment(_))));
    }

    #[test]
    fn straight_segment_has_no_self_linking() {
        let p = Polyline3::open(vec![
            Vec3::new(-3.0, 0.0, 0.0),
            Vec3::new(-1.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(3.0, 0.0, 0.0),
        ])
        .unwrap();
        assert!(self_linking_half(&p).unwrap().abs() < 1e-12);
    }

    #[test]
    fn polyline_text_round_trip() {
        let text = "0 0 0\n1 0 0\n1 1 0\n\n5 5 5\n6 5 5\n";
        let ps = parse_polylines(text).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].vertices().len(), 3);
        let again = parse_polylines(&polylines_to_text(&ps)).unwrap();
        assert_eq!(again, ps);
    }

    #[test]
    fn polyline_text_errors() {
        assert!(matches!(
            parse_polylines("1 2\n"),
            Err(GeomError::BadPolylineText { line: 1, .. })
        ));
        assert!(matches!(
            parse_polylines("1 2 x\n"),
            Err(GeomError::BadPolylineText { line: 1, .. })
        ));
    }
}
