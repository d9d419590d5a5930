//! Default event sets and group elements for the shipped verifiers.
//!
//! Finite sets built from closed orbits of the cube rotation group, so that
//! rotations act on them as bijections.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::groups::{boost_along, cube_rotations, rotation_cayley, Affine4};
use crate::linalg::{Vec3, Vec4, Vector};
use crate::partition::EventSet;
use crate::scalar::Scalar;
use crate::spacetime::{Event, MetricParams};

/// Quarter turns about z and x; together they generate the cube group.
pub fn cube_generators() -> Vec<Affine4> {
    let (z, o) = (Scalar::zero(), Scalar::one());
    vec![rotation_cayley(&z, &z, &o), rotation_cayley(&o, &z, &z)]
}

/// Orbit of `v` under the cube group, deduplicated, in a fixed order.
pub fn cube_orbit(v: &Vec3) -> Vec<Vec3> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let p = Event(Vec4::from_parts(v, Scalar::zero()));
    for g in cube_rotations() {
        let img = g.apply(&p).spatial();
        if seen.insert(img.clone()) {
            out.push(img);
        }
    }
    out
}

/// `o`, the six axis points and the twelve points of the orbit of `(1,1,0)`.
pub fn spatial_points() -> Vec<Vec3> {
    let mut pts = vec![Vec3::zero()];
    pts.extend(cube_orbit(&Vec3::from_ints([1, 0, 0])));
    pts.extend(cube_orbit(&Vec3::from_ints([1, 1, 0])));
    pts
}

/// `0, 1, 2, √2, 1 + √2`.
pub fn default_times() -> Vec<Scalar> {
    vec![Scalar::zero(), Scalar::one(), Scalar::int(2), Scalar::sqrt2(), Scalar::one() + Scalar::sqrt2()]
}

/// `spatial_points × times`.
pub fn product_set(times: &[Scalar]) -> EventSet {
    let mut evs = Vec::new();
    for t in times {
        for p in spatial_points() {
            evs.push(Event(Vec4::from_parts(&p, t.clone())));
        }
    }
    EventSet::from_events(evs)
}

pub fn newton_set() -> EventSet {
    product_set(&default_times())
}

/// Product set with times `-2..=2`, closed under time inversion.
pub fn symmetric_set() -> EventSet {
    product_set(&(-2..=2).map(Scalar::int).collect::<Vec<_>>())
}

/// Points on the future half-cones of aperture `c_hat` with apexes
/// `(0̄, k)`, `k = 0..=3`, radii 1 and 2, along 30 rational directions,
/// plus the apexes themselves.
pub fn cone_set(c_hat: &Scalar) -> EventSet {
    let mut dirs = cube_orbit(&Vec3::from_ints([1, 0, 0]));
    let twothirds = Vec3::new(Scalar::frac(2, 3), Scalar::frac(2, 3), Scalar::frac(1, 3));
    dirs.extend(cube_orbit(&twothirds));
    let mut evs = Vec::new();
    for k in 0..=3 {
        let apex = Scalar::int(k);
        evs.push(Event(Vec4::from_parts(&Vec3::zero(), apex.clone())));
        for r in [1, 2] {
            let r = Scalar::int(r);
            let t = &apex + &(&r / c_hat);
            for d in &dirs {
                evs.push(Event(Vec4::from_parts(&d.scale(&r), t.clone())));
            }
        }
    }
    EventSet::from_events(evs)
}

/// The boost with `γ = 5/4`, `βγ = 3/4` along `axis`.
pub fn boost_54(axis: usize, m: &MetricParams) -> Affine4 {
    boost_along(axis, &Scalar::frac(5, 4), &Scalar::frac(3, 4), m).expect("5/4, 3/4 satisfy γ² - (βγ)² = 1")
}

/// `n` distinct events with coordinates in `{-r, ..., r}/den`.
pub fn random_events(rng: &mut ChaCha8Rng, n: usize, r: i64, den: i64) -> EventSet {
    let mut seen = HashSet::new();
    let mut evs = Vec::new();
    while evs.len() < n {
        let c: [Scalar; 4] = std::array::from_fn(|_| Scalar::frac(rng.gen_range(-r..=r), den));
        let ev = Event(Vector(c));
        if seen.insert(ev.clone()) {
            evs.push(ev);
        }
    }
    EventSet::from_events(evs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_sizes() {
        assert_eq!(spatial_points().len(), 19);
        assert_eq!(newton_set().len(), 95);
        assert_eq!(cone_set(&Scalar::one()).len(), 244);
    }

    #[test]
    fn sets_are_closed_under_cube_rotations() {
        for g in cube_generators() {
            assert!(newton_set().is_closed_under(&g));
            assert!(cone_set(&Scalar::one()).is_closed_under(&g));
        }
        assert!(symmetric_set().is_closed_under(&crate::groups::time_inversion()));
    }
}
