//! Events, the Lorentzian forms `g_λ = diag(1, 1, 1, -λ²)` and causal structure.
//!
//! Time is stored in time units in the fourth coordinate; `λ` converts it to
//! space units. Future/past is read off the sign of `x4`.

use std::fmt;
use std::ops::{Add, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
pub use crate::linalg::{Vec3, Vec4};
use crate::linalg::Mat4;
use crate::scalar::Scalar;

/// A point of R⁴.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Event(pub Vec4);

impl Event {
    pub fn origin() -> Self {
        Event(Vec4::zero())
    }

    pub fn new(x1: Scalar, x2: Scalar, x3: Scalar, x4: Scalar) -> Self {
        Event(Vec4::new(x1, x2, x3, x4))
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Event(Vec4::from_ints(c))
    }

    pub fn coords(&self) -> &Vec4 {
        &self.0
    }

    pub fn time(&self) -> &Scalar {
        self.0.time()
    }

    pub fn spatial(&self) -> Vec3 {
        self.0.spatial()
    }
}

impl Sub for &Event {
    type Output = Vec4;
    fn sub(self, o: &Event) -> Vec4 {
        &self.0 - &o.0
    }
}

impl Add<&Vec4> for &Event {
    type Output = Event;
    fn add(self, v: &Vec4) -> Event {
        Event(&self.0 + v)
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Parameter `λ > 0` of the form `g_λ`; the physical case is `λ = c`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MetricParams {
    lambda: Scalar,
}

impl MetricParams {
    pub fn new(lambda: Scalar) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::Precondition(format!("metric parameter must be positive, got {lambda}")));
        }
        Ok(MetricParams { lambda })
    }

    /// `λ = 1`.
    pub fn unit() -> Self {
        MetricParams { lambda: Scalar::one() }
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn lambda_sq(&self) -> Scalar {
        self.lambda.square()
    }

    /// Matrix of the form, `diag(1, 1, 1, -λ²)`.
    pub fn gram(&self) -> Mat4 {
        Mat4::diagonal([Scalar::one(), Scalar::one(), Scalar::one(), -self.lambda_sq()])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CausalClass {
    Zero,
    Spacelike,
    NullFuture,
    NullPast,
    TimelikeFuture,
    TimelikePast,
}

impl CausalClass {
    pub fn is_future_causal(self) -> bool {
        matches!(self, CausalClass::NullFuture | CausalClass::TimelikeFuture)
    }

    pub fn is_causal(self) -> bool {
        !matches!(self, CausalClass::Zero | CausalClass::Spacelike)
    }

    /// Class of the negated vector.
    pub fn reversed(self) -> CausalClass {
        match self {
            CausalClass::NullFuture => CausalClass::NullPast,
            CausalClass::NullPast => CausalClass::NullFuture,
            CausalClass::TimelikeFuture => CausalClass::TimelikePast,
            CausalClass::TimelikePast => CausalClass::TimelikeFuture,
            other => other,
        }
    }
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CausalClass::Zero => "zero",
            CausalClass::Spacelike => "spacelike",
            CausalClass::NullFuture => "null-future",
            CausalClass::NullPast => "null-past",
            CausalClass::TimelikeFuture => "timelike-future",
            CausalClass::TimelikePast => "timelike-past",
        })
    }
}

/// Which notion of causal connectibility applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CausalKind {
    Minkowski(MetricParams),
    /// Newton/Galilei space-time: distinct instants are connectible.
    Classical,
}

/// `u1 v1 + u2 v2 + u3 v3 - λ² u4 v4`.
pub fn lorentz_form(u: &Vec4, v: &Vec4, m: &MetricParams) -> Scalar {
    let spatial = &(&u[0] * &v[0] + &u[1] * &v[1]) + &(&u[2] * &v[2]);
    spatial - m.lambda_sq() * (&u[3] * &v[3])
}

pub fn causal_class(v: &Vec4, m: &MetricParams) -> CausalClass {
    if v.is_zero() {
        return CausalClass::Zero;
    }
    let q = lorentz_form(v, v, m).signum();
    // q <= 0 with v != 0 forces v4 != 0
    let future = v[3].is_positive();
    match (q, future) {
        (1, _) => CausalClass::Spacelike,
        (0, true) => CausalClass::NullFuture,
        (0, false) => CausalClass::NullPast,
        (_, true) => CausalClass::TimelikeFuture,
        (_, false) => CausalClass::TimelikePast,
    }
}

/// `p ≤ q`: `q - p` is zero or future-pointing causal.
pub fn causal_order(p: &Event, q: &Event, m: &MetricParams) -> bool {
    let c = causal_class(&(q - p), m);
    c == CausalClass::Zero || c.is_future_causal()
}

pub fn causally_connectible(p: &Event, q: &Event, kind: &CausalKind) -> bool {
    match kind {
        CausalKind::Minkowski(m) => causal_class(&(p - q), m).is_causal(),
        CausalKind::Classical => p.time() != q.time(),
    }
}

pub fn require_future_timelike(u: &Vec4, m: &MetricParams) -> Result<()> {
    if causal_class(u, m) != CausalClass::TimelikeFuture {
        return Err(Error::Precondition(format!("{u} is not future timelike")));
    }
    Ok(())
}

/// Standard simultaneity `R_u`: `x - y` is `g_λ`-orthogonal to `u`.
pub fn standard_sim(u: &Vec4, x: &Event, y: &Event, m: &MetricParams) -> Result<bool> {
    require_future_timelike(u, m)?;
    Ok(lorentz_form(&(x - y), u, m).is_zero())
}
