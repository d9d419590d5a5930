//! Finitely generated additive subgroups of R inside Q(√2).
//!
//! A Scalar `a + b√2` is identified with the rational pair `(a, b)`. After
//! clearing denominators the generators span an integer lattice in Z², kept in
//! Hermite normal form `{(a1, b1), (0, b2)}`. The Q-rank of that lattice is the
//! rank of the subgroup: 0 is `{0}`, 1 is cyclic, 2 is dense in R.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// A subgroup `H` of (R, +).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RealSubgroupSpec {
    Zero,
    /// `Z·a`, `a > 0`.
    Cyclic(Scalar),
    /// Integer span of the generators; never contains a zero entry.
    Generated(Vec<Scalar>),
    Full,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SubgroupClass {
    Zero,
    Cyclic(Scalar),
    Dense,
    Full,
}

impl fmt::Display for SubgroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupClass::Zero => f.write_str("zero"),
            SubgroupClass::Cyclic(a) => write!(f, "cyclic({a})"),
            SubgroupClass::Dense => f.write_str("dense"),
            SubgroupClass::Full => f.write_str("full"),
        }
    }
}

impl RealSubgroupSpec {
    pub fn cyclic(a: Scalar) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::MalformedSpec(format!("cyclic generator must be positive, got {a}")));
        }
        Ok(RealSubgroupSpec::Cyclic(a))
    }

    /// Zero entries are dropped; an empty list is still a `Generated` spec
    /// and classifies as `Zero`.
    pub fn generated<I: IntoIterator<Item = Scalar>>(gens: I) -> Self {
        RealSubgroupSpec::Generated(gens.into_iter().filter(|g| !g.is_zero()).collect())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RealSubgroupSpec::Cyclic(a) if !a.is_positive() => {
                Err(Error::MalformedSpec(format!("cyclic generator must be positive, got {a}")))
            }
            RealSubgroupSpec::Generated(g) if g.iter().any(Scalar::is_zero) => {
                Err(Error::MalformedSpec("zero entry in generator list".into()))
            }
            _ => Ok(()),
        }
    }

    /// Generators of the subgroup (empty for `Zero`, `None` for `Full`).
    pub fn generators(&self) -> Option<Vec<Scalar>> {
        match self {
            RealSubgroupSpec::Zero => Some(Vec::new()),
            RealSubgroupSpec::Cyclic(a) => Some(vec![a.clone()]),
            RealSubgroupSpec::Generated(g) => Some(g.clone()),
            RealSubgroupSpec::Full => None,
        }
    }

    pub fn classify(&self) -> SubgroupClass {
        classify_subgroup(self)
    }

    pub fn contains(&self, h: &Scalar) -> bool {
        subgroup_contains(self, h)
    }
}

impl fmt::Display for RealSubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealSubgroupSpec::Zero => f.write_str("zero"),
            RealSubgroupSpec::Full => f.write_str("full"),
            RealSubgroupSpec::Cyclic(a) => write!(f, "cyclic:{a}"),
            RealSubgroupSpec::Generated(g) => {
                let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
                write!(f, "gen:{}", parts.join(";"))
            }
        }
    }
}

/// Integer lattice `{(a1, b1), (0, b2)}` scaled by `1/den`, with `a1, b2 ≥ 0`.
/// A zero `a1` means the first basis vector is absent.
#[derive(Clone, Debug)]
struct Lattice {
    den: BigInt,
    a1: BigInt,
    b1: BigInt,
    b2: BigInt,
}

impl Lattice {
    fn new(gens: &[Scalar]) -> Self {
        let den = gens.iter().fold(BigInt::one(), |d, g| {
            d.lcm(g.rational_part().denom()).lcm(g.sqrt2_part().denom())
        });
        let scaled = |r: &Rational| (r * Rational::from_integer(den.clone())).to_integer();
        let mut rows: Vec<(BigInt, BigInt)> =
            gens.iter().map(|g| (scaled(g.rational_part()), scaled(g.sqrt2_part()))).collect();

        // Euclid on the first column, carrying the second along.
        let mut pivot: Option<(BigInt, BigInt)> = None;
        let mut rest_gcd = BigInt::zero();
        for (mut x, mut y) in rows.drain(..) {
            if let Some((mut px, mut py)) = pivot.take() {
                while !x.is_zero() {
                    let q = px.div_floor(&x);
                    let (nx, ny) = (&px - &q * &x, &py - &q * &y);
                    px = std::mem::replace(&mut x, nx);
                    py = std::mem::replace(&mut y, ny);
                }
                rest_gcd = rest_gcd.gcd(&y);
                pivot = Some((px, py));
            } else if x.is_zero() {
                rest_gcd = rest_gcd.gcd(&y);
            } else {
                pivot = Some((x, y));
            }
        }
        let (mut a1, mut b1) = pivot.unwrap_or((BigInt::zero(), BigInt::zero()));
        if a1.is_negative() {
            a1 = -a1;
            b1 = -b1;
        }
        let b2 = rest_gcd.abs();
        if !b2.is_zero() {
            b1 = b1.mod_floor(&b2);
        }
        Lattice { den, a1, b1, b2 }
    }

    fn rank(&self) -> usize {
        usize::from(!self.a1.is_zero()) + usize::from(!self.b2.is_zero())
    }

    fn contains(&self, h: &Scalar) -> bool {
        let d = Rational::from_integer(self.den.clone());
        let (x, y) = (h.rational_part() * &d, h.sqrt2_part() * &d);
        if !x.is_integer() || !y.is_integer() {
            return false;
        }
        let (x, y) = (x.to_integer(), y.to_integer());
        let r = if self.a1.is_zero() {
            if !x.is_zero() {
                return false;
            }
            y
        } else {
            if !x.is_multiple_of(&self.a1) {
                return false;
            }
            y - (&x / &self.a1) * &self.b1
        };
        if self.b2.is_zero() {
            r.is_zero()
        } else {
            r.is_multiple_of(&self.b2)
        }
    }

    /// Positive generator when the rank is 1.
    fn cyclic_generator(&self) -> Scalar {
        let den = Rational::from_integer(self.den.clone());
        let (x, y) = if self.a1.is_zero() {
            (BigInt::zero(), self.b2.clone())
        } else {
            (self.a1.clone(), self.b1.clone())
        };
        let s = Scalar::new(Rational::from_integer(x) / &den, Rational::from_integer(y) / &den);
        s.abs()
    }
}

pub fn classify_subgroup(s: &RealSubgroupSpec) -> SubgroupClass {
    match s {
        RealSubgroupSpec::Zero => SubgroupClass::Zero,
        RealSubgroupSpec::Full => SubgroupClass::Full,
        RealSubgroupSpec::Cyclic(a) => SubgroupClass::Cyclic(a.clone()),
        RealSubgroupSpec::Generated(g) => {
            let lat = Lattice::new(g);
            match lat.rank() {
                0 => SubgroupClass::Zero,
                1 => SubgroupClass::Cyclic(lat.cyclic_generator()),
                _ => SubgroupClass::Dense,
            }
        }
    }
}

pub fn subgroup_contains(s: &RealSubgroupSpec, h: &Scalar) -> bool {
    match s {
        RealSubgroupSpec::Zero => h.is_zero(),
        RealSubgroupSpec::Full => true,
        RealSubgroupSpec::Cyclic(a) => h.checked_div(a).map(|q| q.is_integer()).unwrap_or(false),
        RealSubgroupSpec::Generated(g) => Lattice::new(g).contains(h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gen(v: &[Scalar]) -> RealSubgroupSpec {
        RealSubgroupSpec::generated(v.iter().cloned())
    }

    #[test]
    fn classification_examples() {
        let half_third = gen(&[Scalar::frac(1, 2), Scalar::frac(1, 3)]);
        assert_eq!(classify_subgroup(&half_third), SubgroupClass::Cyclic(Scalar::frac(1, 6)));
        assert_eq!(classify_subgroup(&gen(&[Scalar::one(), Scalar::sqrt2()])), SubgroupClass::Dense);
        assert_eq!(classify_subgroup(&gen(&[Scalar::zero()])), SubgroupClass::Zero);
        assert_eq!(classify_subgroup(&gen(&[Scalar::int(2), Scalar::int(4)])), SubgroupClass::Cyclic(Scalar::int(2)));
        assert_eq!(classify_subgroup(&gen(&[Scalar::int(-3)])), SubgroupClass::Cyclic(Scalar::int(3)));
        let s2 = Scalar::sqrt2();
        assert_eq!(
            classify_subgroup(&gen(&[&s2 * &Scalar::int(4), &s2 * &Scalar::int(-6)])),
            SubgroupClass::Cyclic(&s2 * &Scalar::int(2))
        );
    }

    #[test]
    fn membership_examples() {
        assert!(subgroup_contains(&RealSubgroupSpec::Cyclic(Scalar::frac(1, 6)), &Scalar::frac(5, 2)));
        assert!(subgroup_contains(&RealSubgroupSpec::Zero, &Scalar::zero()));
        let dense = gen(&[Scalar::one(), Scalar::sqrt2()]);
        let h = Scalar::int(3) - Scalar::int(2) * Scalar::sqrt2();
        assert!(subgroup_contains(&dense, &h));
        assert!(!subgroup_contains(&dense, &Scalar::frac(1, 2)));
        assert!(!subgroup_contains(&RealSubgroupSpec::Cyclic(Scalar::one()), &Scalar::sqrt2()));
        assert!(subgroup_contains(&RealSubgroupSpec::Full, &Scalar::sqrt2()));
        assert!(RealSubgroupSpec::cyclic(Scalar::int(-1)).is_err());
    }

    #[test]
    fn three_generators_of_rank_two() {
        // span{2, 2√2, 1 + √2} has index 2 in Z + Z√2: it contains -1 + √2 but not 1.
        let s = gen(&[Scalar::int(2), Scalar::int(2) * Scalar::sqrt2(), Scalar::one() + Scalar::sqrt2()]);
        assert_eq!(classify_subgroup(&s), SubgroupClass::Dense);
        assert!(subgroup_contains(&s, &(Scalar::sqrt2() - Scalar::one())));
        assert!(!subgroup_contains(&s, &Scalar::one()));
        assert!(!subgroup_contains(&s, &Scalar::sqrt2()));
        let full = gen(&[Scalar::int(2), Scalar::int(3) * Scalar::sqrt2(), Scalar::one() + Scalar::sqrt2()]);
        assert!(subgroup_contains(&full, &Scalar::one()));
        assert!(subgroup_contains(&full, &Scalar::sqrt2()));
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        (-12i64..=12, 1i64..=6, -12i64..=12, 1i64..=6)
            .prop_map(|(a, b, c, d)| Scalar::new(crate::scalar::rational(a, b), crate::scalar::rational(c, d)))
    }

    proptest! {
        #[test]
        fn integer_combinations_are_members(gens in prop::collection::vec(small_scalar(), 1..4),
                                            coeffs in prop::collection::vec(-20i64..=20, 4)) {
            let s = gen(&gens);
            let h: Scalar = gens.iter().zip(&coeffs).map(|(g, n)| g * &Scalar::int(*n)).sum();
            prop_assert!(subgroup_contains(&s, &h));
        }

        #[test]
        fn cyclic_verdict_matches_multiples(nums in prop::collection::vec((-30i64..=30, 1i64..=12), 1..4),
                                            probe in (-200i64..=200, 1i64..=36)) {
            let gens: Vec<Scalar> = nums.iter().map(|&(n, d)| Scalar::frac(n, d)).collect();
            let s = gen(&gens);
            let h = Scalar::frac(probe.0, probe.1);
            match classify_subgroup(&s) {
                SubgroupClass::Cyclic(a) => {
                    prop_assert!(gens.iter().all(|g| g.checked_div(&a).unwrap().is_integer()));
                    prop_assert_eq!(subgroup_contains(&s, &h), h.checked_div(&a).unwrap().is_integer());
                }
                SubgroupClass::Zero => prop_assert!(gens.iter().all(Scalar::is_zero) || gens.is_empty()),
                other => prop_assert!(false, "rational generators classified as {other}"),
            }
        }
    }
}
