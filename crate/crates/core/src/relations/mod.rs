//! Intensional equivalence relations on R⁴ and their exact membership tests.

mod parse;
mod subgroup;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

pub use subgroup::{classify_subgroup, subgroup_contains, RealSubgroupSpec, SubgroupClass};

use crate::error::{Error, Result};
use crate::groups::Affine4;
use crate::linalg::Vec4;
use crate::partition::{EventSet, FinitePartition};
use crate::scalar::Scalar;
use crate::spacetime::{causally_connectible, lorentz_form, require_future_timelike, CausalKind, Event, MetricParams};

/// Which half-cone a [`RelationSpec::HalfCone`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeSign {
    /// Classes are upper shells `(0̄, k) + C⁺`.
    Future,
    /// Classes are lower shells `(0̄, k) + C⁻`.
    Past,
}

impl ConeSign {
    pub fn symbol(self) -> char {
        match self {
            ConeSign::Future => '+',
            ConeSign::Past => '-',
        }
    }

    pub fn flipped(self) -> ConeSign {
        match self {
            ConeSign::Future => ConeSign::Past,
            ConeSign::Past => ConeSign::Future,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationSpec {
    Total,
    Identity,
    /// Classes `x + ({0}×H)`.
    NewtonTypeI(RealSubgroupSpec),
    /// Classes `x + (R³×H)`.
    NewtonTypeII(RealSubgroupSpec),
    /// Classes `x + H·u`.
    PencilTypeI { u: Vec4, h: RealSubgroupSpec, m: MetricParams },
    /// Classes `x + (⟨u⟩⊥ + H·u)`.
    PencilTypeII { u: Vec4, h: RealSubgroupSpec, m: MetricParams },
    /// Standard simultaneity `R_u`.
    StandardSim { u: Vec4, m: MetricParams },
    /// Half-cones of aperture `c_hat` with apexes on `ℓ = o + R·e4`.
    HalfCone { c_hat: Scalar, sign: ConeSign },
    /// `p ~ q` iff `base + (q - p)` lies in the orbit `K·base`, `K = ⟨gens⟩`.
    /// Orbits are explored up to `word_bound` letters.
    CosetRelation { gens: Vec<Affine4>, base: Event, word_bound: usize },
}

/// Result of a membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Decided(bool),
    /// The bounded coset search neither found the point nor closed the orbit.
    BoundExhausted,
}

impl Decision {
    pub fn holds(self) -> Option<bool> {
        match self {
            Decision::Decided(b) => Some(b),
            Decision::BoundExhausted => None,
        }
    }
}

/// Outcome of a causality-condition scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CausalityOutcome {
    Ok,
    /// Indices of a related, causally connectible pair.
    Violation(usize, usize),
}

/// Points of `K·base` reachable with at most `word_bound` letters.
struct Orbit {
    points: HashSet<Event>,
    complete: bool,
}

impl Orbit {
    fn explore(gens: &[Affine4], base: &Event, word_bound: usize) -> Orbit {
        let mut letters: Vec<Affine4> = Vec::with_capacity(gens.len() * 2);
        for g in gens {
            letters.push(g.clone());
            letters.push(g.invert());
        }
        let mut points = HashSet::from([base.clone()]);
        let mut frontier = VecDeque::from([base.clone()]);
        for _ in 0..word_bound {
            let mut next = VecDeque::new();
            for p in frontier {
                for g in &letters {
                    let q = g.apply(&p);
                    if points.insert(q.clone()) {
                        next.push_back(q);
                    }
                }
            }
            if next.is_empty() {
                return Orbit { points, complete: true };
            }
            frontier = next;
        }
        Orbit { points, complete: false }
    }

    fn decide(&self, base: &Event, p: &Event, q: &Event) -> Decision {
        let target = base + &(q - p);
        if self.points.contains(&target) {
            Decision::Decided(true)
        } else if self.complete {
            Decision::Decided(false)
        } else {
            Decision::BoundExhausted
        }
    }
}

/// `|p̄| ± ĉ(q4 - p4) = |q̄|` without square roots.
fn half_cone_related(c_hat: &Scalar, sign: ConeSign, p: &Event, q: &Event) -> bool {
    let r_sq = p.spatial().norm_sq();
    let s_sq = q.spatial().norm_sq();
    let mut delta = c_hat * &(q.time() - p.time());
    if sign == ConeSign::Past {
        delta = -delta;
    }
    if delta.is_zero() {
        return r_sq == s_sq;
    }
    // |q̄| = |p̄| + δ squared gives |p̄| = (|q̄|² - |p̄|² - δ²) / 2δ.
    let r = (&s_sq - &r_sq - delta.square()) / (Scalar::int(2) * &delta);
    !r.is_negative() && r.square() == r_sq && !(&r + &delta).is_negative()
}

/// Splits `d = α·u + w` with `w ⊥ u`; returns `(α, w)`.
pub fn pencil_decompose(d: &Vec4, u: &Vec4, m: &MetricParams) -> (Scalar, Vec4) {
    let alpha = lorentz_form(d, u, m) / lorentz_form(u, u, m);
    let w = d - &u.scale(&alpha);
    (alpha, w)
}

impl RelationSpec {
    pub fn validate(&self) -> Result<()> {
        let timelike = |u: &Vec4, m: &MetricParams| {
            require_future_timelike(u, m).map_err(|e| Error::MalformedSpec(e.to_string()))
        };
        match self {
            RelationSpec::NewtonTypeI(h) | RelationSpec::NewtonTypeII(h) => h.validate(),
            RelationSpec::PencilTypeI { u, h, m } | RelationSpec::PencilTypeII { u, h, m } => {
                h.validate()?;
                timelike(u, m)
            }
            RelationSpec::StandardSim { u, m } => timelike(u, m),
            RelationSpec::HalfCone { c_hat, .. } if !c_hat.is_positive() => {
                Err(Error::MalformedSpec(format!("cone aperture must be positive, got {c_hat}")))
            }
            _ => Ok(()),
        }
    }

    /// Exact membership of the pair `(p, q)`.
    pub fn related(&self, p: &Event, q: &Event) -> Result<Decision> {
        self.validate()?;
        if let RelationSpec::CosetRelation { gens, base, word_bound } = self {
            return Ok(Orbit::explore(gens, base, *word_bound).decide(base, p, q));
        }
        Ok(Decision::Decided(self.related_direct(p, q)))
    }

    /// Membership for every variant except `CosetRelation`.
    fn related_direct(&self, p: &Event, q: &Event) -> bool {
        let d = q - p;
        match self {
            RelationSpec::Total => true,
            RelationSpec::Identity => d.is_zero(),
            RelationSpec::NewtonTypeI(h) => d.spatial().is_zero() && h.contains(d.time()),
            RelationSpec::NewtonTypeII(h) => h.contains(d.time()),
            RelationSpec::PencilTypeI { u, h, m } => {
                let (alpha, w) = pencil_decompose(&d, u, m);
                w.is_zero() && h.contains(&alpha)
            }
            RelationSpec::PencilTypeII { u, h, m } => h.contains(&pencil_decompose(&d, u, m).0),
            RelationSpec::StandardSim { u, m } => lorentz_form(&d, u, m).is_zero(),
            RelationSpec::HalfCone { c_hat, sign } => half_cone_related(c_hat, *sign, p, q),
            RelationSpec::CosetRelation { .. } => unreachable!("coset relations use the orbit search"),
        }
    }

    /// Trace of the relation on `x` as a partition. The trace is checked to be
    /// an equivalence rather than assumed.
    pub fn restrict(&self, x: &Arc<EventSet>) -> Result<FinitePartition> {
        self.validate()?;
        let n = x.len();
        let orbit = match self {
            RelationSpec::CosetRelation { gens, base, word_bound } => {
                Some((Orbit::explore(gens, base, *word_bound), base))
            }
            _ => None,
        };
        let rel = |i: usize, j: usize| -> Result<bool> {
            let (p, q) = (x.event(i), x.event(j));
            match &orbit {
                Some((o, base)) => o.decide(base, p, q).holds().ok_or_else(|| Error::BoundExhausted {
                    p: x.id(i).to_string(),
                    q: x.id(j).to_string(),
                }),
                None => Ok(self.related_direct(p, q)),
            }
        };
        let mut matrix = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                matrix[i * n + j] = rel(i, j)?;
            }
        }
        let pairs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| i < j && matrix[i * n + j]);
        let part = FinitePartition::from_pairs(x, pairs.collect::<Vec<_>>());
        for i in 0..n {
            if !matrix[i * n + i] {
                return Err(Error::NotAnEquivalence(format!("`{}` is not related to itself", x.id(i))));
            }
            for j in 0..n {
                if matrix[i * n + j] != matrix[j * n + i] {
                    return Err(Error::NotAnEquivalence(format!(
                        "asymmetric on ({}, {})",
                        x.id(i),
                        x.id(j)
                    )));
                }
                if part.same_block(i, j) && !matrix[i * n + j] {
                    return Err(Error::NotAnEquivalence(format!(
                        "intransitive: ({}, {}) joined through a chain but unrelated",
                        x.id(i),
                        x.id(j)
                    )));
                }
            }
        }
        Ok(part)
    }

    /// First related pair that is also causally connectible.
    pub fn satisfies_causality(&self, x: &Arc<EventSet>, kind: &CausalKind) -> Result<CausalityOutcome> {
        let part = self.restrict(x)?;
        for block in part.blocks() {
            for (a, &i) in block.iter().enumerate() {
                for &j in &block[a + 1..] {
                    if causally_connectible(x.event(i), x.event(j), kind) {
                        return Ok(CausalityOutcome::Violation(i, j));
                    }
                }
            }
        }
        Ok(CausalityOutcome::Ok)
    }

    /// Short family name used in reports.
    pub fn family(&self) -> &'static str {
        match self {
            RelationSpec::Total => "total",
            RelationSpec::Identity => "identity",
            RelationSpec::NewtonTypeI(_) => "newton1",
            RelationSpec::NewtonTypeII(_) => "newton2",
            RelationSpec::PencilTypeI { .. } => "pencil1",
            RelationSpec::PencilTypeII { .. } => "pencil2",
            RelationSpec::StandardSim { .. } => "stdsim",
            RelationSpec::HalfCone { .. } => "halfcone",
            RelationSpec::CosetRelation { .. } => "coset",
        }
    }
}

fn fmt_vec4(v: &Vec4) -> String {
    format!("({},{},{},{})", v[0], v[1], v[2], v[3])
}

impl fmt::Display for RelationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationSpec::Total | RelationSpec::Identity => f.write_str(self.family()),
            RelationSpec::NewtonTypeI(h) | RelationSpec::NewtonTypeII(h) => write!(f, "{} H={h}", self.family()),
            RelationSpec::PencilTypeI { u, h, m } | RelationSpec::PencilTypeII { u, h, m } => {
                write!(f, "{} u={} H={h} lambda={}", self.family(), fmt_vec4(u), m.lambda())
            }
            RelationSpec::StandardSim { u, m } => write!(f, "stdsim u={} lambda={}", fmt_vec4(u), m.lambda()),
            RelationSpec::HalfCone { c_hat, sign } => write!(f, "halfcone c={c_hat} sign={}", sign.symbol()),
            RelationSpec::CosetRelation { gens, base, word_bound } => {
                write!(f, "coset base={base} gens={} bound={word_bound}", gens.len())
            }
        }
    }
}
