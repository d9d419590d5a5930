//! Affine maps of R⁴ and exact membership predicates for the classical and
//! relativistic transformation groups.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Mat4, Vec3, Vec4};
use crate::scalar::Scalar;
use crate::spacetime::{require_future_timelike, Event, MetricParams};

/// `x ↦ L x + b` with `L` invertible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Affine4 {
    linear: Mat4,
    translation: Vec4,
}

impl Affine4 {
    pub fn new(linear: Mat4, translation: Vec4) -> Result<Self> {
        if linear.determinant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(Affine4 { linear, translation })
    }

    pub fn linear_map(linear: Mat4) -> Result<Self> {
        Self::new(linear, Vec4::zero())
    }

    pub fn identity() -> Self {
        Affine4 { linear: Mat4::identity(), translation: Vec4::zero() }
    }

    pub fn linear(&self) -> &Mat4 {
        &self.linear
    }

    pub fn translation_part(&self) -> &Vec4 {
        &self.translation
    }

    pub fn apply(&self, p: &Event) -> Event {
        Event(&self.linear.apply(&p.0) + &self.translation)
    }

    /// Action on free vectors (linear part only).
    pub fn apply_vector(&self, v: &Vec4) -> Vec4 {
        self.linear.apply(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Affine4) -> Affine4 {
        Affine4 {
            linear: &self.linear * &other.linear,
            translation: &self.linear.apply(&other.translation) + &self.translation,
        }
    }

    pub fn invert(&self) -> Affine4 {
        let inv = self.linear.inverse().expect("linear part is invertible");
        let translation = -inv.apply(&self.translation);
        Affine4 { linear: inv, translation }
    }

    /// `other⁻¹ ∘ self ∘ other`.
    pub fn conjugate_by(&self, other: &Affine4) -> Affine4 {
        other.invert().compose(self).compose(other)
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_zero()
    }

    /// Unique factorization `g = h ∘ t` into a homogeneous map `h` and a
    /// translation `t`.
    pub fn decompose(&self) -> (Affine4, Affine4) {
        let inv = self.linear.inverse().expect("linear part is invertible");
        let h = Affine4 { linear: self.linear.clone(), translation: Vec4::zero() };
        let t = translation(&inv.apply(&self.translation));
        (h, t)
    }
}

impl fmt::Display for Affine4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}", self.linear, self.translation)
    }
}

impl fmt::Debug for Affine4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Pencil direction for the rest-isotropy groups: a future-timelike `u`
/// together with the form it is timelike for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestFrame {
    u: Vec4,
    metric: MetricParams,
}

impl RestFrame {
    pub fn new(u: Vec4, metric: MetricParams) -> Result<Self> {
        require_future_timelike(&u, &metric)?;
        Ok(RestFrame { u, metric })
    }

    pub fn u(&self) -> &Vec4 {
        &self.u
    }

    pub fn metric(&self) -> &MetricParams {
        &self.metric
    }
}

/// The groups whose invariant relations are classified.
///
/// Line stabilizers refer to the worldline `o + R·e4`; other lines are handled
/// by conjugating with an explicit affine map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupId {
    Newton,
    ConformalNewton,
    Galilei,
    ConformalGalilei,
    Lorentz(MetricParams),
    OrthochronousLorentz(MetricParams),
    ProperOrthochronousLorentz(MetricParams),
    Poincare(MetricParams),
    OrthochronousProperPoincare(MetricParams),
    ConformalPoincare(MetricParams),
    RestIsotropy(RestFrame),
    ConformalRestIsotropy(RestFrame),
    /// Rotations about the line, time inversion, translations along it.
    LineStabilizer,
    /// `LineStabilizer` together with positive dilatations.
    LineStabilizerConformal,
    /// Rotations about the line, positive dilatations, translations along it.
    NewtonLineStabilizerConformal,
    TimeInversionPair,
    SpatialRotations,
    Translations,
}

impl GroupId {
    pub fn name(&self) -> &'static str {
        match self {
            GroupId::Newton => "newton",
            GroupId::ConformalNewton => "conformal-newton",
            GroupId::Galilei => "galilei",
            GroupId::ConformalGalilei => "conformal-galilei",
            GroupId::Lorentz(_) => "lorentz",
            GroupId::OrthochronousLorentz(_) => "orthochronous-lorentz",
            GroupId::ProperOrthochronousLorentz(_) => "proper-orthochronous-lorentz",
            GroupId::Poincare(_) => "poincare",
            GroupId::OrthochronousProperPoincare(_) => "orthochronous-proper-poincare",
            GroupId::ConformalPoincare(_) => "conformal-poincare",
            GroupId::RestIsotropy(_) => "rest-isotropy",
            GroupId::ConformalRestIsotropy(_) => "conformal-rest-isotropy",
            GroupId::LineStabilizer => "line-stabilizer",
            GroupId::LineStabilizerConformal => "line-stabilizer-conformal",
            GroupId::NewtonLineStabilizerConformal => "newton-line-stabilizer-conformal",
            GroupId::TimeInversionPair => "time-inversion-pair",
            GroupId::SpatialRotations => "spatial-rotations",
            GroupId::Translations => "translations",
        }
    }
}

pub fn is_rotation3(s: &Mat3) -> bool {
    (&s.transpose() * s).is_identity() && s.determinant().is_one()
}

/// `(S w; 0ᵀ 1)` shape with `S ∈ SO(3)`; returns `w`.
fn galilei_shape(l: &Mat4) -> Option<Vec3> {
    let bottom = [&l.0[3][0], &l.0[3][1], &l.0[3][2]];
    if !bottom.iter().all(|x| x.is_zero()) || !l.0[3][3].is_one() {
        return None;
    }
    if !is_rotation3(&l.spatial_block()) {
        return None;
    }
    Some(Vec3::new(l.0[0][3].clone(), l.0[1][3].clone(), l.0[2][3].clone()))
}

/// `Σ_S` or `Θ·Σ_S`.
fn line_rotation_shape(l: &Mat4) -> bool {
    let off = (0..3).all(|i| l.0[i][3].is_zero() && l.0[3][i].is_zero());
    let t = l.0[3][3].abs();
    off && t.is_one() && is_rotation3(&l.spatial_block())
}

/// Positive `μ` with `L/μ` of the requested shape, read off `|L44|`.
fn strip_dilatation(l: &Mat4) -> Option<Mat4> {
    let mu = l.0[3][3].abs();
    if mu.is_zero() {
        return None;
    }
    Some(l.scale(&mu.recip().ok()?))
}

/// `κ` with `LᵀGL = κG`, if any.
fn conformal_factor(l: &Mat4, m: &MetricParams) -> Option<Scalar> {
    let g = m.gram();
    let lhs = &(&l.transpose() * &g) * l;
    let kappa = lhs.0[0][0].clone();
    (lhs == g.scale(&kappa)).then_some(kappa)
}

fn along_e4(b: &Vec4) -> bool {
    b[0].is_zero() && b[1].is_zero() && b[2].is_zero()
}

fn is_lorentz(l: &Mat4, m: &MetricParams) -> bool {
    conformal_factor(l, m).is_some_and(|k| k.is_one())
}

fn is_proper_orthochronous_lorentz(l: &Mat4, m: &MetricParams) -> bool {
    is_lorentz(l, m) && l.0[3][3].is_positive() && l.determinant().is_one()
}

/// Exact group-membership predicate.
pub fn member(g: &Affine4, group: &GroupId) -> bool {
    let l = g.linear();
    let b = g.translation_part();
    match group {
        GroupId::Translations => l.is_identity(),
        GroupId::SpatialRotations => b.is_zero() && galilei_shape(l).is_some_and(|w| w.is_zero()),
        GroupId::Newton => galilei_shape(l).is_some_and(|w| w.is_zero()),
        GroupId::Galilei => galilei_shape(l).is_some(),
        GroupId::ConformalNewton => l.0[3][3].is_positive()
            && strip_dilatation(l).and_then(|n| galilei_shape(&n)).is_some_and(|w| w.is_zero()),
        GroupId::ConformalGalilei => l.0[3][3].is_positive()
            && strip_dilatation(l).and_then(|n| galilei_shape(&n)).is_some(),
        GroupId::Lorentz(m) => b.is_zero() && is_lorentz(l, m),
        GroupId::OrthochronousLorentz(m) => b.is_zero() && is_lorentz(l, m) && l.0[3][3].is_positive(),
        GroupId::ProperOrthochronousLorentz(m) => b.is_zero() && is_proper_orthochronous_lorentz(l, m),
        GroupId::Poincare(m) => is_lorentz(l, m),
        GroupId::OrthochronousProperPoincare(m) => is_proper_orthochronous_lorentz(l, m),
        GroupId::ConformalPoincare(m) => conformal_factor(l, m).is_some_and(|k| k.is_positive()),
        GroupId::RestIsotropy(f) => {
            is_proper_orthochronous_lorentz(l, &f.metric) && l.apply(&f.u) == f.u
        }
        GroupId::ConformalRestIsotropy(f) => {
            conformal_factor(l, &f.metric).is_some_and(|k| k.is_positive())
                && l.0[3][3].is_positive()
                && l.determinant().is_positive()
                && eigen_ratio(&l.apply(&f.u), &f.u).is_some_and(|r| r.is_positive())
        }
        GroupId::LineStabilizer => along_e4(b) && line_rotation_shape(l),
        GroupId::LineStabilizerConformal => {
            along_e4(b) && strip_dilatation(l).is_some_and(|n| line_rotation_shape(&n))
        }
        GroupId::NewtonLineStabilizerConformal => {
            along_e4(b)
                && l.0[3][3].is_positive()
                && strip_dilatation(l).is_some_and(|n| {
                    galilei_shape(&n).is_some_and(|w| w.is_zero())
                })
        }
        GroupId::TimeInversionPair => {
            b.is_zero() && (l.is_identity() || *l == time_inversion().linear)
        }
    }
}

/// `ρ` with `image = ρ·u`, if `image` is parallel to the nonzero `u`.
fn eigen_ratio(image: &Vec4, u: &Vec4) -> Option<Scalar> {
    let i = (0..4).find(|&i| !u[i].is_zero())?;
    let rho = image[i].checked_div(&u[i]).ok()?;
    (u.scale(&rho) == *image).then_some(rho)
}

/// True when `u` and `v` are linearly dependent.
pub fn proportional(u: &Vec4, v: &Vec4) -> bool {
    (0..4).all(|i| (0..4).all(|j| (&u[i] * &v[j] - &u[j] * &v[i]).is_zero()))
}

pub fn translation(b: &Vec4) -> Affine4 {
    Affine4 { linear: Mat4::identity(), translation: b.clone() }
}

/// Embeds a spatial rotation `S` as `Σ_S`; `S` must lie in SO(3).
pub fn spatial_rotation(s: &Mat3) -> Result<Affine4> {
    if !is_rotation3(s) {
        return Err(Error::Precondition(format!("{s} is not a rotation")));
    }
    Ok(Affine4 { linear: Mat4::from_spatial(s), translation: Vec4::zero() })
}

/// Cayley transform `(I - K)⁻¹(I + K)` of the skew matrix built from `p`.
pub fn rotation_cayley(p1: &Scalar, p2: &Scalar, p3: &Scalar) -> Affine4 {
    let z = Scalar::zero;
    let k = Mat3::from_rows([
        [z(), -p3, p2.clone()],
        [p3.clone(), z(), -p1],
        [-p2, p1.clone(), z()],
    ]);
    let id = Mat3::identity();
    let inv = (&id - &k).inverse().expect("I - K is invertible for real parameters");
    let s = &inv * &(&id + &k);
    Affine4 { linear: Mat4::from_spatial(&s), translation: Vec4::zero() }
}

/// The 24 rotations of the cube (signed permutation matrices of determinant 1).
pub fn cube_rotations() -> Vec<Affine4> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(24);
    for perm in PERMS {
        for signs in 0..8u8 {
            let mut s = Mat3::zero();
            for (row, &col) in perm.iter().enumerate() {
                let v = if signs >> row & 1 == 1 { -1 } else { 1 };
                s.0[row][col] = Scalar::int(v);
            }
            if s.determinant().is_one() {
                out.push(spatial_rotation(&s).expect("signed permutation of det 1"));
            }
        }
    }
    out
}

/// Lorentz boost along the x-axis with `γ² - (βγ)² = 1`, `γ > 0`:
/// `x' = γx - βγ·λt`, `t' = γt - (βγ/λ)x`.
pub fn boost_x(gamma: &Scalar, beta_gamma: &Scalar, m: &MetricParams) -> Result<Affine4> {
    boost_along(0, gamma, beta_gamma, m)
}

/// Boost along spatial axis `axis` (0, 1 or 2).
pub fn boost_along(axis: usize, gamma: &Scalar, beta_gamma: &Scalar, m: &MetricParams) -> Result<Affine4> {
    if axis > 2 {
        return Err(Error::Precondition(format!("no spatial axis {axis}")));
    }
    if !gamma.is_positive() || !(gamma.square() - beta_gamma.square()).is_one() {
        return Err(Error::Precondition(format!(
            "boost parameters ({gamma}, {beta_gamma}) violate γ² - (βγ)² = 1, γ > 0"
        )));
    }
    let lam = m.lambda();
    let mut l = Mat4::identity();
    l.0[axis][axis] = gamma.clone();
    l.0[3][3] = gamma.clone();
    l.0[axis][3] = -(beta_gamma * lam);
    l.0[3][axis] = -(beta_gamma / lam);
    Ok(Affine4 { linear: l, translation: Vec4::zero() })
}

pub fn dilatation(lam: &Scalar) -> Result<Affine4> {
    if !lam.is_positive() {
        return Err(Error::Precondition(format!("dilatation factor must be positive, got {lam}")));
    }
    Ok(Affine4 { linear: Mat4::identity().scale(lam), translation: Vec4::zero() })
}

/// `Θ: (x̄, t) ↦ (x̄, -t)`.
pub fn time_inversion() -> Affine4 {
    Affine4 {
        linear: Mat4::diagonal([Scalar::one(), Scalar::one(), Scalar::one(), Scalar::int(-1)]),
        translation: Vec4::zero(),
    }
}

/// Uniform motion `(x̄, t) ↦ (x̄ + t·w, t)`.
pub fn galilei_boost(w: &Vec3) -> Affine4 {
    let mut l = Mat4::identity();
    for i in 0..3 {
        l.0[i][3] = w[i].clone();
    }
    Affine4 { linear: l, translation: Vec4::zero() }
}

/// Checks `g ∈ H(Λu) ⟺ Λ⁻¹gΛ ∈ H(u)` on the given inputs.
pub fn conjugate_isotropy_check(
    lambda: &Affine4,
    u: &Vec4,
    metric: &MetricParams,
    g: &Affine4,
) -> Result<bool> {
    let frame = RestFrame::new(u.clone(), metric.clone())?;
    let moved = RestFrame::new(lambda.apply_vector(u), metric.clone())?;
    let lhs = member(g, &GroupId::RestIsotropy(moved));
    let rhs = member(&g.conjugate_by(lambda), &GroupId::RestIsotropy(frame));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> MetricParams {
        MetricParams::unit()
    }

    fn b54() -> Affine4 {
        boost_x(&Scalar::frac(5, 4), &Scalar::frac(3, 4), &unit()).unwrap()
    }

    #[test]
    fn apply_compose_invert() {
        let p = Event::from_ints([1, 2, 3, 4]);
        assert_eq!(Affine4::identity().apply(&p), p);
        let b = Vec4::from_ints([1, -1, 0, 2]);
        assert_eq!(translation(&b).apply(&p), &p + &b);
        let g = b54().compose(&translation(&b)).compose(&rotation_cayley(
            &Scalar::frac(1, 3),
            &Scalar::zero(),
            &Scalar::one(),
        ));
        assert!(g.compose(&g.invert()).is_identity());
        assert!(g.invert().compose(&g).is_identity());
        let h = dilatation(&Scalar::int(2)).unwrap();
        assert_eq!(g.compose(&h).apply(&p), g.apply(&h.apply(&p)));
    }

    #[test]
    fn singular_linear_part_rejected() {
        assert_eq!(Affine4::linear_map(Mat4::zero()), Err(Error::Singular));
    }

    #[test]
    fn time_inversion_membership() {
        let theta = time_inversion();
        assert!(member(&theta, &GroupId::Lorentz(unit())));
        assert!(!member(&theta, &GroupId::OrthochronousLorentz(unit())));
        assert_eq!(theta.apply(&Event::from_ints([1, 2, 3, 4])), Event::from_ints([1, 2, 3, -4]));
        assert!(member(&theta, &GroupId::TimeInversionPair));
        assert!(member(&theta, &GroupId::LineStabilizer));
        assert!(!member(&theta, &GroupId::NewtonLineStabilizerConformal));
    }

    #[test]
    fn galilei_versus_newton() {
        let rz = rotation_cayley(&Scalar::zero(), &Scalar::zero(), &Scalar::one());
        let g = galilei_boost(&Vec3::from_ints([1, 0, 0])).compose(&rz);
        assert!(member(&g, &GroupId::Galilei));
        assert!(!member(&g, &GroupId::Newton));
        assert!(member(&rz, &GroupId::Newton));
        assert_eq!(
            galilei_boost(&Vec3::from_ints([1, 0, 0])).apply(&Event::from_ints([0, 0, 0, 1])),
            Event::from_ints([1, 0, 0, 1])
        );
    }

    #[test]
    fn boost_membership() {
        let b = b54();
        assert!(member(&b, &GroupId::ProperOrthochronousLorentz(unit())));
        assert!(!member(&b, &GroupId::Galilei));
        assert_eq!(
            b.apply_vector(&Vec4::basis(3)),
            Vec4::new(Scalar::frac(-3, 4), Scalar::zero(), Scalar::zero(), Scalar::frac(5, 4))
        );
        let back = boost_x(&Scalar::frac(5, 4), &Scalar::frac(-3, 4), &unit()).unwrap();
        assert!(b.compose(&back).is_identity());
        assert!(boost_x(&Scalar::one(), &Scalar::zero(), &unit()).unwrap().is_identity());
        assert!(boost_x(&Scalar::int(2), &Scalar::one(), &unit()).is_err());
        let c2 = MetricParams::new(Scalar::sqrt2()).unwrap();
        let bc = boost_x(&Scalar::frac(5, 4), &Scalar::frac(3, 4), &c2).unwrap();
        assert!(member(&bc, &GroupId::ProperOrthochronousLorentz(c2)));
        assert!(!member(&bc, &GroupId::Lorentz(unit())));
    }

    #[test]
    fn cayley_examples() {
        let z = Scalar::zero();
        assert!(rotation_cayley(&z, &z, &z).is_identity());
        let r = rotation_cayley(&z, &z, &Scalar::one());
        assert_eq!(
            r.linear().spatial_block(),
            Mat3::from_ints([[0, -1, 0], [1, 0, 0], [0, 0, 1]])
        );
        let r = rotation_cayley(&Scalar::frac(2, 7), &Scalar::frac(-5, 3), &Scalar::sqrt2());
        assert!(member(&r, &GroupId::SpatialRotations));
    }

    #[test]
    fn cube_group_has_24_rotations() {
        let rots = cube_rotations();
        assert_eq!(rots.len(), 24);
        assert!(rots.iter().all(|r| member(r, &GroupId::SpatialRotations)));
    }

    #[test]
    fn dilatations_and_conformal_groups() {
        let d = dilatation(&Scalar::int(2)).unwrap();
        assert_eq!(d.apply(&Event::from_ints([1, 0, 0, 1])), Event::from_ints([2, 0, 0, 2]));
        assert!(dilatation(&Scalar::zero()).is_err());
        assert!(member(&d, &GroupId::ConformalNewton));
        assert!(member(&d, &GroupId::ConformalGalilei));
        assert!(member(&d, &GroupId::ConformalPoincare(unit())));
        assert!(!member(&d, &GroupId::Poincare(unit())));
        assert!(member(&d, &GroupId::NewtonLineStabilizerConformal));
        assert!(member(&d.compose(&time_inversion()), &GroupId::LineStabilizerConformal));
        let frame = RestFrame::new(Vec4::basis(3), unit()).unwrap();
        assert!(member(&d, &GroupId::ConformalRestIsotropy(frame.clone())));
        assert!(!member(&d, &GroupId::RestIsotropy(frame)));
    }

    #[test]
    fn rest_isotropy_conjugation() {
        let m = unit();
        let e4 = Vec4::basis(3);
        assert!(conjugate_isotropy_check(&Affine4::identity(), &e4, &m, &b54()).unwrap());
        let rx = rotation_cayley(&Scalar::one(), &Scalar::zero(), &Scalar::zero());
        assert!(conjugate_isotropy_check(&b54(), &e4, &m, &rx).unwrap());
        let moved = RestFrame::new(b54().apply_vector(&e4), m.clone()).unwrap();
        assert!(member(&rx, &GroupId::RestIsotropy(moved.clone())));
        let rz = rotation_cayley(&Scalar::zero(), &Scalar::zero(), &Scalar::one());
        assert!(conjugate_isotropy_check(&b54(), &e4, &m, &rz).unwrap());
        assert!(!member(&rz, &GroupId::RestIsotropy(moved)));
    }

    #[test]
    fn decomposition_recomposes() {
        let g = b54()
            .compose(&translation(&Vec4::from_ints([1, 2, 3, 4])))
            .compose(&rotation_cayley(&Scalar::one(), &Scalar::frac(1, 2), &Scalar::zero()));
        let (h, t) = g.decompose();
        assert!(h.translation_part().is_zero());
        assert!(member(&t, &GroupId::Translations));
        assert_eq!(h.compose(&t), g);
    }

    #[test]
    fn line_stabilizer_rejects_moving_the_line() {
        let t = translation(&Vec4::from_ints([0, 0, 0, 3]));
        assert!(member(&t, &GroupId::LineStabilizer));
        let t = translation(&Vec4::from_ints([1, 0, 0, 3]));
        assert!(!member(&t, &GroupId::LineStabilizer));
        assert!(!member(&b54(), &GroupId::LineStabilizerConformal));
    }
}
