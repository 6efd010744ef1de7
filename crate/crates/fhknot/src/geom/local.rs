//! Local models of the configuration-space integrals.
//!
//! The weight on the sphere is a unit volume form concentrated on the two
//! polar caps, antisymmetric under the antipodal map; each of the three
//! direction maps of a local model then covers one cap once, contributing a
//! factor 1/2, and the orientation of the linear change of variables fixes
//! the overall sign. Combined with the occurrence multiplicities 1, 2, 2, 6
//! of the four configuration kinds along a Fox-Hatcher cycle, that reproduces
//! the constants 1/8, -1/4, -1/4, 3/4 and assembles to the finite-difference
//! values -2, 2, 6.

use super::polyline::Vec3;
use super::GeomError;
use crate::codes::Sign;
use crate::fh::CycleType;

/// An even, compactly supported profile on the line, positive at 0.
pub trait BumpProfile {
    fn value(&self, x: f64) -> f64;
    fn derivative(&self, x: f64) -> f64;
    /// Value is zero outside `[-support, support]`.
    fn support(&self) -> f64;
    /// An upper bound for the value, used to box the integration region.
    fn max_value(&self) -> f64;
}

/// exp(-1/(1-x^2)) on |x| < 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardBump;

impl BumpProfile for StandardBump {
    fn value(&self, x: f64) -> f64 {
        if x.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - x * x)).exp()
        }
    }

    fn derivative(&self, x: f64) -> f64 {
        if x.abs() >= 1.0 {
            0.0
        } else {
            let u = 1.0 - x * x;
            self.value(x) * (-2.0 * x / (u * u))
        }
    }

    fn support(&self) -> f64 {
        1.0
    }

    fn max_value(&self) -> f64 {
        (-1.0f64).exp()
    }
}

/// cos^2(pi x / 2) on |x| < 1; a second profile for the independence checks.
#[derive(Debug, Clone, Copy, Default)]
pub struct CosineBump;

impl BumpProfile for CosineBump {
    fn value(&self, x: f64) -> f64 {
        if x.abs() >= 1.0 {
            0.0
        } else {
            let c = (std::f64::consts::FRAC_PI_2 * x).cos();
            c * c
        }
    }

    fn derivative(&self, x: f64) -> f64 {
        if x.abs() >= 1.0 {
            0.0
        } else {
            let a = std::f64::consts::FRAC_PI_2 * x;
            -std::f64::consts::PI * a.sin() * a.cos()
        }
    }

    fn support(&self) -> f64 {
        1.0
    }

    fn max_value(&self) -> f64 {
        1.0
    }
}

/// An antisymmetric unit volume form on the sphere supported on the two polar
/// caps: `vol = rho * dA` with `rho` a radial bump of mass 1/2 per cap,
/// invariant under the antipodal map (which makes the form antisymmetric,
/// since the antipode reverses orientation).
#[derive(Debug, Clone, Copy)]
pub struct PoleVolumeForm {
    cap_half_angle: f64,
    normalization: f64,
}

impl PoleVolumeForm {
    pub fn new(cap_half_angle: f64) -> Result<Self, GeomError> {
        if !(cap_half_angle > 0.0 && cap_half_angle < std::f64::consts::FRAC_PI_2) {
            return Err(GeomError::BadCapAngle(cap_half_angle));
        }
        // 2 caps * 2pi * int_0^cap b(th/cap) sin th dth = 1
        let bump = StandardBump;
        let n = 20_000;
        let mut s = 0.0;
        for i in 0..n {
            let th = cap_half_angle * (i as f64 + 0.5) / n as f64;
            s += bump.value(th / cap_half_angle) * th.sin() * (cap_half_angle / n as f64);
        }
        Ok(PoleVolumeForm { cap_half_angle, normalization: 1.0 / (4.0 * std::f64::consts::PI * s) })
    }

    pub fn cap_half_angle(&self) -> f64 {
        self.cap_half_angle
    }

    /// Density at a unit vector, relative to the round area form.
    pub fn density(&self, v: Vec3) -> f64 {
        let z = v.z.abs().clamp(0.0, 1.0);
        let theta = z.acos();
        if theta >= self.cap_half_angle {
            return 0.0;
        }
        self.normalization * StandardBump.value(theta / self.cap_half_angle)
    }
}

/// Which of the two template direction maps to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiKind {
    /// Stationary strand: vertical profile `b(x')`.
    One,
    /// Moving strand: vertical profile `2 b(x'/2)`.
    Two,
}

fn direction(kind: PsiKind, bump: &dyn BumpProfile, x: f64, xp: f64) -> (Vec3, Vec3, Vec3) {
    let (height, slope) = match kind {
        PsiKind::One => (bump.value(xp), bump.derivative(xp)),
        PsiKind::Two => (2.0 * bump.value(xp / 2.0), bump.derivative(xp / 2.0)),
    };
    let w = Vec3::new(-x, -xp, height);
    let dx = Vec3::new(-1.0, 0.0, 0.0);
    let dxp = Vec3::new(0.0, -1.0, slope);
    (w, dx, dxp)
}

/// Integral over the plane of the pullback of the volume form under a
/// template map. Converges to 1/2: the map covers the north cap exactly once,
/// positively, and never reaches the south cap.
pub fn half_integral(
    kind: PsiKind,
    bump: &dyn BumpProfile,
    vol: &PoleVolumeForm,
) -> Result<f64, GeomError> {
    let peak = match kind {
        PsiKind::One => bump.max_value(),
        PsiKind::Two => 2.0 * bump.max_value(),
    };
    let radius = peak * vol.cap_half_angle().tan() * 1.2;
    let integrand = |x: f64, xp: f64| {
        let (w, dx, dxp) = direction(kind, bump, x, xp);
        let n2 = w.dot(w);
        if n2 < 1e-300 {
            return 0.0;
        }
        let n = n2.sqrt();
        let rho = vol.density(w * (1.0 / n));
        if rho == 0.0 {
            return 0.0;
        }
        rho * w.dot(dx.cross(dxp)) / (n2 * n)
    };
    // midpoint rule, refined until two successive estimates agree
    let tolerance = 1e-4;
    let mut previous = f64::NAN;
    let mut cells = 64usize;
    for refinement in 0..6 {
        let h = 2.0 * radius / cells as f64;
        let mut total = 0.0;
        for i in 0..cells {
            let x = -radius + h * (i as f64 + 0.5);
            for j in 0..cells {
                let xp = -radius + h * (j as f64 + 0.5);
                total += integrand(x, xp);
            }
        }
        total *= h * h;
        if (total - previous).abs() < tolerance {
            return Ok(total);
        }
        previous = total;
        cells *= 2;
        let _ = refinement;
    }
    Err(GeomError::QuadratureNotConverged { tolerance, refinements: 6 })
}

/// The four local configuration kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalModelKind {
    OneA,
    OneB,
    TwoA,
    TwoB,
}

impl LocalModelKind {
    pub const ALL: [LocalModelKind; 4] =
        [LocalModelKind::OneA, LocalModelKind::OneB, LocalModelKind::TwoA, LocalModelKind::TwoB];

    /// How often the configuration occurs along a full Fox-Hatcher cycle.
    pub fn multiplicity(self) -> i64 {
        match self {
            LocalModelKind::OneA => 1,
            LocalModelKind::OneB => 2,
            LocalModelKind::TwoA => 2,
            LocalModelKind::TwoB => 6,
        }
    }
}

/// A local model: configuration kind plus the three crossing signs.
#[derive(Debug, Clone, Copy)]
pub struct LocalModelSpec {
    pub kind: LocalModelKind,
    pub signs: [Sign; 3],
}

/// The linear change of variables factoring the three direction maps through
/// the plane, as a matrix over `(theta, x1..x5)`. Rows come in pairs feeding
/// the template maps; the determinant sign carries the whole orientation.
fn transfer_matrix(spec: &LocalModelSpec) -> [[i64; 6]; 6] {
    let [e1, e2, e3] = [spec.signs[0].value(), spec.signs[1].value(), spec.signs[2].value()];
    let mut m = [[0i64; 6]; 6];
    // columns: theta, x1, x2, x3, x4, x5
    let rows: [(usize, i64, bool); 6] = match spec.kind {
        // pairs: (psi1 args), (psi1 args), (psi2 args = moving strand)
        LocalModelKind::OneA => {
            [(1, 1, false), (2, e2, false), (3, 1, false), (5, e3, false), (1, 1, true), (4, e1, false)]
        }
        LocalModelKind::OneB => {
            [(1, 1, false), (4, e1, false), (3, 1, false), (5, e3, false), (1, 1, true), (2, e2, false)]
        }
        LocalModelKind::TwoA => {
            [(1, 1, false), (3, e2, false), (2, 1, false), (5, e3, false), (1, 1, true), (4, e1, false)]
        }
        LocalModelKind::TwoB => {
            [(1, 1, false), (4, e2, false), (2, 1, false), (5, e3, false), (1, 1, true), (3, e1, false)]
        }
    };
    for (r, (col, coeff, minus_theta)) in rows.iter().enumerate() {
        m[r][*col] = *coeff;
        if *minus_theta {
            m[r][0] = -1;
        }
    }
    m
}

fn determinant6(m: &[[i64; 6]; 6]) -> i64 {
    fn det(m: &Vec<Vec<i64>>) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        let mut total = 0;
        for (j, &lead) in m[0].iter().enumerate() {
            if lead == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            total += sign * lead * det(&minor);
        }
        total
    }
    det(&m.iter().map(|r| r.to_vec()).collect())
}

/// One local model integral: the determinant sign of the transfer matrix
/// times the product of the three half-integrals times the occurrence
/// multiplicity. Multiplying by the product of the three signs gives a
/// sign-independent constant per kind.
pub fn local_model_integral(
    spec: &LocalModelSpec,
    bump: &dyn BumpProfile,
    vol: &PoleVolumeForm,
) -> Result<f64, GeomError> {
    let h1 = half_integral(PsiKind::One, bump, vol)?;
    let h2 = half_integral(PsiKind::Two, bump, vol)?;
    Ok(local_model_with_factors(spec, h1, h2))
}

fn local_model_with_factors(spec: &LocalModelSpec, h1: f64, h2: f64) -> f64 {
    let det = determinant6(&transfer_matrix(spec));
    debug_assert!(det != 0, "transfer matrix is a diffeomorphism");
    let orientation = if det > 0 { 1.0 } else { -1.0 };
    orientation * h1 * h1 * h2 * spec.kind.multiplicity() as f64
}

/// The assembled finite-difference constants per cycle type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem34Constants {
    pub type_i: f64,
    pub type_ii: f64,
    pub type_iii: f64,
    pub other: f64,
}

impl Theorem34Constants {
    pub fn value(&self, t: CycleType) -> f64 {
        match t {
            CycleType::TypeI => self.type_i,
            CycleType::TypeII => self.type_ii,
            CycleType::TypeIII => self.type_iii,
            CycleType::Other => self.other,
        }
    }
}

/// Graph-cocycle coefficients of the two contributing graphs.
pub const COCYCLE_A1: f64 = -2.0;
pub const COCYCLE_A2: f64 = 1.0;

/// Assemble the finite-difference values from the local models: sum each
/// kind's integral, weighted by the cocycle coefficient of its graph, over
/// all eight sign assignments of the three crossings.
pub fn theorem34_from_local_models(
    bump: &dyn BumpProfile,
    vol: &PoleVolumeForm,
) -> Result<Theorem34Constants, GeomError> {
    let h1 = half_integral(PsiKind::One, bump, vol)?;
    let h2 = half_integral(PsiKind::Two, bump, vol)?;
    let alternating_sum = |kind: LocalModelKind| -> f64 {
        let mut total = 0.0;
        for mask in 0..8u32 {
            let signs = [
                if mask & 1 == 0 { Sign::Plus } else { Sign::Minus },
                if mask & 2 == 0 { Sign::Plus } else { Sign::Minus },
                if mask & 4 == 0 { Sign::Plus } else { Sign::Minus },
            ];
            let eps: i64 = signs.iter().map(|s| s.value()).product();
            total += eps as f64 * local_model_with_factors(&LocalModelSpec { kind, signs }, h1, h2);
        }
        total
    };
    Ok(Theorem34Constants {
        type_i: COCYCLE_A1 * alternating_sum(LocalModelKind::OneA),
        type_ii: COCYCLE_A1 * alternating_sum(LocalModelKind::OneB)
            + COCYCLE_A2 * alternating_sum(LocalModelKind::TwoA),
        type_iii: COCYCLE_A2 * alternating_sum(LocalModelKind::TwoB),
        other: 0.0,
    })
}
