//! Inertial coordinates with non-standard synchrony,
//! `r̄′ = λ·A·r̄`, `t′ = λ·(t + k̄·A·r̄)`, and what they do to light signals.

use std::collections::HashSet;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formats::{key_fields, parse_vector, vector_from};
use crate::groups::rotation_cayley;
use crate::linalg::{Mat3, Mat4, Vec3, Vec4};
use crate::scalar::{Lexer, Scalar};
use crate::spacetime::{causal_class, Event, MetricParams};

/// A coordinate system `φ′` relative to the standard one `φ`; `metric` carries `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertialCoords {
    scale: Scalar,
    k: Vec3,
    rotation: Mat3,
    metric: MetricParams,
}

impl InertialCoords {
    /// Requires `scale > 0`, `AᵀA = I` and `c²|k̄|² < 1`.
    pub fn new(scale: Scalar, k: Vec3, rotation: Mat3, metric: MetricParams) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::Precondition(format!("scale must be positive, got {scale}")));
        }
        if !(&rotation.transpose() * &rotation).is_identity() {
            return Err(Error::Precondition("A is not orthogonal".into()));
        }
        if &k.norm_sq() * &metric.lambda_sq() >= Scalar::one() {
            return Err(Error::Precondition(format!("|k| must be below 1/c, got k = {k}")));
        }
        Ok(InertialCoords { scale, k, rotation, metric })
    }

    /// The standard coordinates themselves.
    pub fn identity(metric: MetricParams) -> Self {
        InertialCoords { scale: Scalar::one(), k: Vec3::zero(), rotation: Mat3::identity(), metric }
    }

    pub fn scale(&self) -> &Scalar {
        &self.scale
    }

    pub fn k(&self) -> &Vec3 {
        &self.k
    }

    pub fn rotation(&self) -> &Mat3 {
        &self.rotation
    }

    pub fn metric(&self) -> &MetricParams {
        &self.metric
    }

    pub fn c(&self) -> &Scalar {
        self.metric.lambda()
    }

    pub fn is_standard_synchrony(&self) -> bool {
        self.k.is_zero()
    }

    pub fn to_prime(&self, p: &Event) -> Event {
        let ar = self.rotation.apply(&p.spatial());
        let t = &self.scale * &(p.time() + &self.k.dot(&ar));
        Event(Vec4::from_parts(&ar.scale(&self.scale), t))
    }

    pub fn from_prime(&self, p: &Event) -> Event {
        let inv = self.scale.recip().expect("scale is positive");
        let ar = p.spatial().scale(&inv);
        let t = &(p.time() * &inv) - &self.k.dot(&ar);
        Event(Vec4::from_parts(&self.rotation.transpose().apply(&ar), t))
    }

    fn check_unit(n: &Vec3) -> Result<()> {
        if !n.norm_sq().is_one() {
            return Err(Error::Precondition(format!("direction {n} is not a unit vector")));
        }
        Ok(())
    }

    /// Coordinate speed in `φ′` of light travelling along `A·n`.
    pub fn one_way_speed(&self, n: &Vec3) -> Result<Scalar> {
        Self::check_unit(n)?;
        let c = self.c();
        let denom = Scalar::one() + c * &self.k.dot(&self.rotation.apply(n));
        c.checked_div(&denom)
    }

    /// Harmonic mean of the one-way speeds along `n` and `-n`.
    pub fn two_way_speed(&self, n: &Vec3) -> Result<Scalar> {
        let there = self.one_way_speed(n)?;
        let back = self.one_way_speed(&-n)?;
        Scalar::int(2).checked_div(&(there.recip()? + back.recip()?))
    }

    /// `φ′(q) - φ′(p)` is future timelike or null.
    pub fn m_connectible(&self, p: &Event, q: &Event) -> bool {
        causal_class(&(&self.to_prime(q) - &self.to_prime(p)), &self.metric).is_future_causal()
    }

    /// `|v| ≤ c(1 + k̄·A·v)` fails for `v` with `|v| = c`.
    pub fn violates_light_bound(&self, v: &Vec3) -> bool {
        let s = Scalar::one() + self.k.dot(&self.rotation.apply(v));
        !s.is_positive() || v.norm_sq() > &self.metric.lambda_sq() * &s.square()
    }

    /// A velocity `v` with `|v| = c` breaking the light bound; `None` iff `k̄ = 0`.
    pub fn causality_witness(&self) -> Option<Vec3> {
        if self.k.is_zero() {
            return None;
        }
        let c = self.c();
        let w = self.rotation.transpose().apply(&self.k);
        if let Some(norm) = w.norm_sq().sqrt_exact() {
            let v = w.scale(&(-c / &norm));
            debug_assert!(self.violates_light_bound(&v));
            return Some(v);
        }
        // Rational unit directions are dense on the sphere; take the one most
        // opposed to Aᵀk̄. The coordinate axes are among them, so w·n < 0 is
        // always reachable.
        let best = rational_unit_vectors(12).into_iter().min_by(|a, b| w.dot(a).cmp(&w.dot(b)))?;
        let v = best.scale(c);
        self.violates_light_bound(&v).then_some(v)
    }

    /// Quadratic form vanishing exactly on the `φ′`-image of the light cone,
    /// `|r̄′|² - c²(t′ - k̄·r̄′)²`.
    pub fn lightcone_image(&self) -> Mat4 {
        let c2 = self.metric.lambda_sq();
        let mut q = Mat4::zero();
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { Scalar::one() } else { Scalar::zero() };
                q.0[i][j] = delta - &c2 * &(&self.k[i] * &self.k[j]);
            }
            q.0[i][3] = &c2 * &self.k[i];
            q.0[3][i] = q.0[i][3].clone();
        }
        q.0[3][3] = -c2;
        q
    }
}

/// Evaluates `vᵀ·Q·v`.
pub fn quadratic_form(q: &Mat4, v: &Vec4) -> Scalar {
    v.dot(&q.apply(v))
}

/// All unit vectors `(a, b, c)/d` with `a² + b² + c² = d²`, `d ≤ max_den`.
pub fn rational_unit_vectors(max_den: i64) -> Vec<Vec3> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for d in 1..=max_den {
        for a in 0..=d {
            for b in 0..=d {
                let rest = d * d - a * a - b * b;
                if rest < 0 {
                    continue;
                }
                let c = (rest as f64).sqrt().round() as i64;
                if c * c != rest {
                    continue;
                }
                for sa in [1, -1] {
                    for sb in [1, -1] {
                        for sc in [1, -1] {
                            let v = Vec3::new(Scalar::frac(sa * a, d), Scalar::frac(sb * b, d), Scalar::frac(sc * c, d));
                            if seen.insert(v.clone()) {
                                out.push(v);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

const KEYS: [&str; 4] = ["lambda", "k", "A", "c"];

impl FromStr for InertialCoords {
    type Err = Error;

    /// `coords lambda=<S> k=(S,S,S) A=cayley(S,S,S) c=<S>`
    fn from_str(s: &str) -> Result<Self> {
        let (kind, fields) = key_fields(s, &KEYS)?;
        if kind != "coords" {
            return Err(Error::Parse(format!("expected `coords`, got `{kind}`")));
        }
        let get = |key: &str| -> Result<&str> {
            let mut it = fields.iter().filter(|(k, _)| *k == key);
            let v = it.next().ok_or_else(|| Error::Parse(format!("missing `{key}=`")))?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("repeated `{key}=`")));
            }
            Ok(v.1)
        };
        let scale: Scalar = get("lambda")?.parse()?;
        let k: Vec3 = parse_vector(get("k")?)?;
        let a_text = get("A")?;
        let params = a_text
            .strip_prefix("cayley")
            .ok_or_else(|| Error::Parse(format!("A must be cayley(..), got `{a_text}`")))?;
        let mut lx = Lexer::new(params);
        let p: Vec3 = vector_from(&mut lx)?;
        if !lx.at_end() {
            return Err(Error::Parse(format!("trailing input after `{a_text}`")));
        }
        let rotation = rotation_cayley(&p[0], &p[1], &p[2]).linear().spatial_block();
        let metric = MetricParams::new(get("c")?.parse()?)?;
        InertialCoords::new(scale, k, rotation, metric)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::causal_order;

    fn unit() -> MetricParams {
        MetricParams::unit()
    }

    fn half_x() -> InertialCoords {
        "coords lambda=1 k=(1/2,0,0) A=cayley(0,0,0) c=1".parse().unwrap()
    }

    fn x() -> Vec3 {
        Vec3::basis(0)
    }

    #[test]
    fn transition_examples() {
        let id = InertialCoords::identity(unit());
        let p = Event::from_ints([3, -1, 2, 7]);
        assert_eq!(id.to_prime(&p), p);
        assert_eq!(
            half_x().to_prime(&Event::from_ints([1, 0, 0, 0])),
            Event::new(Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::frac(1, 2))
        );
        let phi: InertialCoords = "coords lambda=2 k=(0,1/3,1/4) A=cayley(1,2,3) c=1".parse().unwrap();
        assert_eq!(phi.from_prime(&phi.to_prime(&p)), p);
    }

    #[test]
    fn speed_examples() {
        let phi = half_x();
        assert_eq!(phi.one_way_speed(&x()).unwrap(), Scalar::frac(2, 3));
        assert_eq!(phi.one_way_speed(&-x()).unwrap(), Scalar::int(2));
        assert_eq!(phi.two_way_speed(&x()).unwrap(), Scalar::one());
        assert!(phi.one_way_speed(&Vec3::from_ints([1, 1, 0])).is_err());
        let id = InertialCoords::identity(MetricParams::new(Scalar::int(3)).unwrap());
        assert_eq!(id.one_way_speed(&Vec3::basis(2)).unwrap(), Scalar::int(3));
    }

    #[test]
    fn connectibility_examples() {
        let o = Event::origin();
        let q = Event::from_ints([-1, 0, 0, 1]);
        let id = InertialCoords::identity(unit());
        assert!(id.m_connectible(&o, &q));
        assert!(!half_x().m_connectible(&o, &q));
        assert!(half_x().m_connectible(&o, &Event::from_ints([0, 0, 0, 1])));
        for (p, r) in [([0, 0, 0, 0], [1, 0, 0, 2]), ([0, 0, 0, 0], [2, 0, 0, 1]), ([1, 1, 0, 3], [0, 0, 0, 0])] {
            let (p, r) = (Event::from_ints(p), Event::from_ints(r));
            assert_eq!(id.m_connectible(&p, &r), causal_order(&p, &r, &unit()));
        }
    }

    #[test]
    fn witness_examples() {
        assert_eq!(InertialCoords::identity(unit()).causality_witness(), None);
        let v = half_x().causality_witness().unwrap();
        assert_eq!(v, -x());
        let rotated: InertialCoords = "coords lambda=1 k=(0,1/2,0) A=cayley(0,0,1) c=1".parse().unwrap();
        let v = rotated.causality_witness().unwrap();
        assert!(rotated.violates_light_bound(&v));
        assert!(v.norm_sq().is_one());
        // |Aᵀk| = √(1/4 + 1/9) is irrational: exercises the direction search
        let odd: InertialCoords = "coords lambda=1 k=(1/2,1/3,0) A=cayley(0,0,0) c=1".parse().unwrap();
        let v = odd.causality_witness().unwrap();
        assert!(odd.violates_light_bound(&v));
    }

    #[test]
    fn cone_examples() {
        let id = InertialCoords::identity(MetricParams::new(Scalar::int(2)).unwrap());
        assert_eq!(id.lightcone_image(), id.metric().gram());
        let q = half_x().lightcone_image();
        assert_eq!(q.0[0][3], Scalar::frac(1, 2));
        assert_eq!(q.0[0][0], Scalar::frac(3, 4));
        let phi: InertialCoords = "coords lambda=3 k=(1/5,0,1/7) A=cayley(1,0,2) c=1".parse().unwrap();
        for dir in rational_unit_vectors(9) {
            let null = Event(Vec4::from_parts(&dir, Scalar::one()));
            let img = phi.to_prime(&null);
            assert!(quadratic_form(&phi.lightcone_image(), img.coords()).is_zero());
        }
    }

    #[test]
    fn rejects_invalid_systems() {
        assert!("coords lambda=1 k=(1,0,0) A=cayley(0,0,0) c=1".parse::<InertialCoords>().is_err());
        assert!("coords lambda=0 k=(0,0,0) A=cayley(0,0,0) c=1".parse::<InertialCoords>().is_err());
        assert!("coords lambda=1 k=(0,0,0) A=rows(0,0,0) c=1".parse::<InertialCoords>().is_err());
        assert!(InertialCoords::new(Scalar::one(), Vec3::zero(), Mat3::diagonal([Scalar::int(2), Scalar::one(), Scalar::one()]), unit()).is_err());
    }

    #[test]
    fn unit_vectors_are_unit() {
        let vs = rational_unit_vectors(9);
        assert!(vs.iter().all(|v| v.norm_sq().is_one()));
        assert!(vs.contains(&Vec3::new(Scalar::frac(2, 3), Scalar::frac(2, 3), Scalar::frac(1, 3))));
    }
}
