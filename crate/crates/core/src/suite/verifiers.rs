//! One verifier per classification result. Each takes explicit inputs; the
//! `default_*` wrappers supply the shipped instances.

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fixtures::{self, boost_54, cube_generators};
use super::oracle::{density_oracle, OracleVerdict};
use super::{ReportBuilder, TheoremReport};
use crate::error::{Error, Result};
use crate::groups::{
    conjugate_isotropy_check, cube_rotations, dilatation, galilei_boost, is_rotation3, member, proportional,
    rotation_cayley, time_inversion, translation, Affine4, GroupId, RestFrame,
};
use crate::linalg::{Mat3, Vec3, Vec4};
use crate::partition::{EventSet, FinitePartition, InducedPolicy};
use crate::relations::{
    classify_subgroup, CausalityOutcome, ConeSign, RealSubgroupSpec, RelationSpec, SubgroupClass,
};
use crate::scalar::Scalar;
use crate::spacetime::{causal_order, lorentz_form, require_future_timelike, standard_sim, CausalKind, Event, MetricParams};
use crate::synchrony::{rational_unit_vectors, InertialCoords};

const SCOPE_NOTE: &str = "uniqueness certified against the classified families, not all set-theoretic relations";

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ev(v: [i64; 4]) -> Event {
    Event::from_ints(v)
}

fn h_cyclic() -> RealSubgroupSpec {
    RealSubgroupSpec::Cyclic(Scalar::one())
}

fn h_dense() -> RealSubgroupSpec {
    RealSubgroupSpec::generated([Scalar::one(), Scalar::sqrt2()])
}

fn subgroup_for(id: &str) -> RealSubgroupSpec {
    if id.ends_with(":zero") {
        RealSubgroupSpec::Zero
    } else if id.ends_with(":dense") {
        h_dense()
    } else if id.ends_with(":full") {
        RealSubgroupSpec::Full
    } else {
        h_cyclic()
    }
}

/// Records whether `part` is fixed by `g` and checks that against `expect`.
fn check_invariance(
    b: &mut ReportBuilder,
    label: &str,
    part: &FinitePartition,
    g: &Affine4,
    policy: InducedPolicy,
    expect_invariant: bool,
) -> Result<bool> {
    let defect = part.invariance_defect(g, policy)?;
    let x = part.base();
    let mut values = vec![
        ("map".to_string(), g.to_string()),
        ("policy".to_string(), format!("{policy:?}")),
        ("expected".to_string(), if expect_invariant { "invariant" } else { "broken" }.to_string()),
    ];
    if let Some(d) = &defect {
        let (i, j) = d.pair;
        let (pi, pj) = d.preimages;
        values.push(("pair".into(), format!("{} {}, {} {}", x.id(i), x.event(i), x.id(j), x.event(j))));
        values.push(("preimages".into(), format!("{}, {}", x.event(pi), x.event(pj))));
        values.push(("related_before".into(), d.related_before.to_string()));
    }
    Ok(b.check(label, defect.is_none() == expect_invariant, values))
}

fn check_member(b: &mut ReportBuilder, label: &str, g: &Affine4, group: &GroupId, expect: bool) -> bool {
    let got = member(g, group);
    b.check(label, got == expect, [("map", g.to_string()), ("group", group.name().to_string()), ("member", got.to_string())])
}

fn decided(spec: &RelationSpec, p: &Event, q: &Event) -> Result<bool> {
    spec.related(p, q)?.holds().ok_or_else(|| Error::BoundExhausted { p: p.to_string(), q: q.to_string() })
}

/// Checks `p ~ q` but not `g·p ~ g·q`.
fn check_pair_broken(b: &mut ReportBuilder, label: &str, spec: &RelationSpec, g: &Affine4, p: &Event, q: &Event) -> Result<bool> {
    let before = decided(spec, p, q)?;
    let (gp, gq) = (g.apply(p), g.apply(q));
    let after = decided(spec, &gp, &gq)?;
    Ok(b.check(
        label,
        before && !after,
        [
            ("relation", spec.to_string()),
            ("pair", format!("{p}, {q}")),
            ("image", format!("{gp}, {gq}")),
            ("related", before.to_string()),
            ("image_related", after.to_string()),
        ],
    ))
}

// ---------------------------------------------------------------------------
// Integer spans of rotated copies of a vector.

/// Searches integer combinations `Σ nᵢ Sᵢb` with `Σ|nᵢ| ≤ depth` reaching each target.
pub fn verify_rotation_span(
    id: &str,
    b: &Vec3,
    targets: &[Vec3],
    rotations: &[Mat3],
    depth: usize,
    seed: u64,
) -> TheoremReport {
    ReportBuilder::new(id, seed).run(|rep| {
        if b.is_zero() {
            return Err(Error::Precondition("b must be nonzero".into()));
        }
        let mut gens: Vec<Vec3> = Vec::new();
        for (i, s) in rotations.iter().enumerate() {
            if !rep.check("rotation is in SO(3)", is_rotation3(s), [("index", i.to_string()), ("matrix", s.to_string())]) {
                continue;
            }
            let img = s.apply(b);
            if !gens.contains(&img) {
                gens.push(img);
            }
        }
        // Breadth-first over sums; each state remembers its last step.
        let mut parent: HashMap<Vec3, Option<(Vec3, usize, i64)>> = HashMap::from([(Vec3::zero(), None)]);
        let mut frontier = vec![Vec3::zero()];
        let mut remaining: Vec<&Vec3> = targets.iter().filter(|t| !t.is_zero()).collect();
        for _ in 0..depth {
            if remaining.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for v in &frontier {
                for (k, g) in gens.iter().enumerate() {
                    for sign in [1, -1] {
                        let w = if sign > 0 { v + g } else { v - g };
                        if !parent.contains_key(&w) {
                            parent.insert(w.clone(), Some((v.clone(), k, sign)));
                            next.push(w);
                        }
                    }
                }
            }
            remaining.retain(|t| !parent.contains_key(*t));
            frontier = next;
        }
        for t in targets {
            let Some(_) = parent.get(t) else {
                rep.check("target reached", false, [("target", t.to_string()), ("depth", depth.to_string())]);
                continue;
            };
            let mut coeffs: Vec<i64> = vec![0; gens.len()];
            let mut cur = t.clone();
            while let Some(Some((prev, k, sign))) = parent.get(&cur) {
                coeffs[*k] += sign;
                cur = prev.clone();
            }
            let sum = gens.iter().zip(&coeffs).fold(Vec3::zero(), |acc, (g, n)| &acc + &g.scale(&Scalar::int(*n)));
            let terms: Vec<String> =
                gens.iter().zip(&coeffs).filter(|(_, n)| **n != 0).map(|(g, n)| format!("{n}·{g}")).collect();
            rep.check(
                "target reached",
                sum == *t,
                [("target", t.to_string()), ("combination", terms.join(" + ")), ("letters", coeffs.iter().map(|n| n.abs()).sum::<i64>().to_string())],
            );
        }
        Ok(())
    })
}

fn default_rotations() -> Vec<Mat3> {
    let mut rots: Vec<Mat3> = cube_rotations().iter().map(|g| g.linear().spatial_block()).collect();
    let half = rotation_cayley(&Scalar::zero(), &Scalar::zero(), &Scalar::frac(1, 2));
    rots.push(half.linear().spatial_block());
    rots.push(half.invert().linear().spatial_block());
    rots
}

pub fn default_rotation_span(seed: u64) -> TheoremReport {
    let b = Vec3::from_ints([3, 4, 0]);
    let targets = vec![
        b.clone(),
        b.scale(&Scalar::int(2)),
        Vec3::from_ints([5, 0, 0]),
        b.scale(&Scalar::frac(6, 5)),
        Vec3::from_ints([0, 0, 6]),
        Vec3::from_ints([1, -1, 0]),
    ];
    let mut report = verify_rotation_span("rotation-span", &b, &targets, &default_rotations(), 3, seed);
    let trivial = verify_rotation_span("rotation-span", &b, &[b.scale(&Scalar::int(2))], &[Mat3::identity()], 2, seed);
    for mut c in trivial.details {
        c.name = format!("identity only: {}", c.name);
        report.details.push(c);
    }
    if report.details.iter().any(|c| !c.passed) {
        report.status = super::Status::Fail;
    }
    report
}

// ---------------------------------------------------------------------------
// Newton and Galilei invariant relations.

/// `H·e4` offset of a nonzero element of `H`, if any.
fn nonzero_element(h: &RealSubgroupSpec) -> Option<Scalar> {
    match h {
        RealSubgroupSpec::Zero => None,
        RealSubgroupSpec::Full => Some(Scalar::one()),
        RealSubgroupSpec::Cyclic(a) => Some(a.clone()),
        RealSubgroupSpec::Generated(g) => g.first().map(Scalar::abs),
    }
}

pub fn verify_newton_family(id: &str, h: &RealSubgroupSpec, x: &Arc<EventSet>, seed: u64) -> TheoremReport {
    ReportBuilder::new(id, seed).run(|rep| {
        let type1 = RelationSpec::NewtonTypeI(h.clone());
        let type2 = RelationSpec::NewtonTypeII(h.clone());
        let (r1, r2) = (type1.restrict(x)?, type2.restrict(x)?);
        let strict: Vec<Affine4> = cube_generators();
        let partial = vec![
            translation(&Vec4::basis(3)),
            translation(&Vec4::basis(0)),
            translation(&Vec4::from_parts(&Vec3::zero(), Scalar::sqrt2())),
        ];
        for g in strict.iter().chain(&partial) {
            check_member(rep, "generator is in the Newton group", g, &GroupId::Newton, true);
        }
        for (name, r) in [("type I", &r1), ("type II", &r2)] {
            for g in &strict {
                check_invariance(rep, &format!("{name} fixed by rotation"), r, g, InducedPolicy::Strict, true)?;
            }
            for g in &partial {
                check_invariance(rep, &format!("{name} fixed by translation"), r, g, InducedPolicy::Partial, true)?;
            }
        }
        let boost = galilei_boost(&Vec3::from_ints([1, 0, 0]));
        check_member(rep, "uniform motion is Galilei", &boost, &GroupId::Galilei, true);
        check_member(rep, "uniform motion is not Newton", &boost, &GroupId::Newton, false);
        check_invariance(rep, "type II fixed by uniform motion", &r2, &boost, InducedPolicy::Partial, true)?;
        match nonzero_element(h) {
            None => {
                check_invariance(rep, "type I (identity) fixed by uniform motion", &r1, &boost, InducedPolicy::Partial, true)?;
            }
            Some(t) => {
                check_invariance(rep, "type I broken by uniform motion", &r1, &boost, InducedPolicy::Partial, false)?;
                let q = Event(Vec4::from_parts(&Vec3::zero(), t));
                check_pair_broken(rep, "type I witness pair", &type1, &boost, &Event::origin(), &q)?;
            }
        }
        Ok(())
    })
}

pub fn default_newton_family(id: &str, seed: u64) -> TheoremReport {
    verify_newton_family(id, &subgroup_for(id), &Arc::new(fixtures::newton_set()), seed)
}

// ---------------------------------------------------------------------------
// Dilatations single out the H = {0} member of each family.

#[derive(Clone, Debug)]
pub enum ConformalGroup {
    ConformalNewton,
    ConformalGalilei,
    ConformalRest(Box<RestFrame>),
}

pub fn verify_conformal_uniqueness(id: &str, group: &ConformalGroup, h: &RealSubgroupSpec, seed: u64) -> TheoremReport {
    ReportBuilder::new(id, seed).run(|rep| {
        match classify_subgroup(h) {
            SubgroupClass::Zero => return Err(Error::Precondition("H must be nonzero".into())),
            SubgroupClass::Full => {
                rep.skip("H = R gives the total relation, which is trivially invariant");
                return Ok(());
            }
            _ => {}
        }
        let m = MetricParams::unit();
        let (family, zero_rel, direction, x, strict, partial, conformal_id, plain_id) = match group {
            ConformalGroup::ConformalNewton | ConformalGroup::ConformalGalilei => {
                let mut partial = vec![translation(&Vec4::basis(3)), translation(&Vec4::basis(1))];
                let (cid, pid) = if matches!(group, ConformalGroup::ConformalGalilei) {
                    partial.push(galilei_boost(&Vec3::from_ints([0, 1, 0])));
                    (GroupId::ConformalGalilei, GroupId::Galilei)
                } else {
                    (GroupId::ConformalNewton, GroupId::Newton)
                };
                (
                    RelationSpec::NewtonTypeII(h.clone()),
                    RelationSpec::NewtonTypeII(RealSubgroupSpec::Zero),
                    Vec4::basis(3),
                    fixtures::newton_set(),
                    cube_generators(),
                    partial,
                    cid,
                    pid,
                )
            }
            ConformalGroup::ConformalRest(frame) => {
                let u = frame.u().clone();
                let lift = lift_to(&u, frame.metric())?;
                let x = image_set(&lift, &fixtures::newton_set());
                let strict = cube_generators().iter().map(|g| g.conjugate_by(&lift.invert())).collect();
                (
                    RelationSpec::PencilTypeII { u: u.clone(), h: h.clone(), m: frame.metric().clone() },
                    RelationSpec::StandardSim { u: u.clone(), m: frame.metric().clone() },
                    u.clone(),
                    x,
                    strict,
                    vec![translation(&u)],
                    GroupId::ConformalRestIsotropy((**frame).clone()),
                    GroupId::RestIsotropy((**frame).clone()),
                )
            }
        };
        let _ = m;
        let x = Arc::new(x);
        let t = nonzero_element(h).expect("nonzero subgroup");
        // Escalate the factor until it moves t out of H.
        let factors = [Scalar::int(2), Scalar::frac(3, 2), Scalar::int(3), Scalar::frac(4, 3), Scalar::frac(5, 4)];
        let mu = factors
            .iter()
            .find(|mu| !h.contains(&(*mu * &t)))
            .cloned()
            .ok_or_else(|| Error::Precondition("no dilatation witness among the candidate factors".into()))?;
        let d = dilatation(&mu)?;
        check_member(rep, "dilatation is in the conformal group", &d, &conformal_id, true);
        check_member(rep, "dilatation is not in the unextended group", &d, &plain_id, false);
        let (p, q) = (Event::origin(), Event(direction.scale(&t)));
        check_pair_broken(rep, "dilatation witness pair", &family, &d, &p, &q)?;
        let small = Arc::new(EventSet::from_events([p.clone(), q.clone(), d.apply(&q)]));
        check_invariance(rep, "restriction broken by dilatation", &family.restrict(&small)?, &d, InducedPolicy::Partial, false)?;

        let zero = zero_rel.restrict(&x)?;
        for g in &strict {
            check_member(rep, "generator is in the conformal group", g, &conformal_id, true);
            check_invariance(rep, "H = {0} fixed by rotation", &zero, g, InducedPolicy::Strict, true)?;
        }
        for g in partial.iter().chain([&d, &d.invert()]) {
            check_invariance(rep, "H = {0} fixed by generator", &zero, g, InducedPolicy::Partial, true)?;
        }
        rep.check("scope", true, [("note", SCOPE_NOTE)]);
        rep.witness(format!("dilatation by {mu} maps the related pair ({p}, {q}) to an unrelated pair"));
        Ok(())
    })
}

/// The boost (5/4, 3/4) if it carries `e4` to `u`, otherwise an error.
fn lift_to(u: &Vec4, m: &MetricParams) -> Result<Affine4> {
    let b = boost_54(0, m);
    if b.apply_vector(&Vec4::basis(3)) == *u {
        Ok(b)
    } else if u == &Vec4::basis(3) {
        Ok(Affine4::identity())
    } else {
        Err(Error::Precondition(format!("no shipped boost maps e4 to {u}")))
    }
}

fn image_set(g: &Affine4, x: &EventSet) -> EventSet {
    EventSet::from_events(x.events().iter().map(|e| g.apply(e)))
}

fn tilted_u(m: &MetricParams) -> Vec4 {
    boost_54(0, m).apply_vector(&Vec4::basis(3))
}

pub fn default_conformal(id: &str, seed: u64) -> TheoremReport {
    let m = MetricParams::unit();
    let group = if id.contains(":cg:") {
        ConformalGroup::ConformalGalilei
    } else if id.contains(":rest:") {
        ConformalGroup::ConformalRest(Box::new(RestFrame::new(tilted_u(&m), m).expect("boosted e4 is future timelike")))
    } else {
        ConformalGroup::ConformalNewton
    };
    verify_conformal_uniqueness(id, &group, &subgroup_for(id), seed)
}

// ---------------------------------------------------------------------------
// No proper nonzero subgroup survives a boost.

pub fn verify_poincare_nogo(id: &str, h: &RealSubgroupSpec, boost: &Affine4, m: &MetricParams, seed: u64) -> Result<TheoremReport> {
    if matches!(classify_subgroup(h), SubgroupClass::Zero | SubgroupClass::Full) {
        return Err(Error::Precondition("H must be a proper nonzero subgroup".into()));
    }
    if !member(boost, &GroupId::OrthochronousProperPoincare(m.clone())) {
        return Err(Error::Precondition(format!("{boost} is not proper orthochronous Poincaré")));
    }
    if boost.apply_vector(&Vec4::basis(3)) == Vec4::basis(3) {
        return Err(Error::Precondition("the map fixes e4, so it is a rotation, not a boost".into()));
    }
    Ok(ReportBuilder::new(id, seed).run(|rep| {
        let rel = RelationSpec::NewtonTypeII(h.clone());
        let o = Event::origin();
        let candidates: Vec<Event> = (1..=3)
            .flat_map(|n| (0..3).map(move |i| Event(Vec4::basis(i).scale(&Scalar::int(n)))))
            .collect();
        let x = candidates
            .into_iter()
            .find(|x| !h.contains(boost.apply(x).time()))
            .ok_or_else(|| Error::Precondition("no escaping time projection among the candidates".into()))?;
        let image = boost.apply(&x);
        rep.check(
            "time projection of the boosted hyperplane escapes H",
            !h.contains(image.time()),
            [("x", x.to_string()), ("boosted", image.to_string()), ("H", h.to_string())],
        );
        check_pair_broken(rep, "simultaneous pair separated by the boost", &rel, boost, &o, &x)?;
        let small = Arc::new(EventSet::from_events([o.clone(), x.clone(), image.clone()]));
        check_invariance(rep, "restriction broken by boost", &rel.restrict(&small)?, boost, InducedPolicy::Partial, false)?;
        rep.witness(format!("boost sends the simultaneous pair (o, {x}) to time separation {}", image.time()));
        Ok(())
    }))
}

pub fn default_poincare_nogo(id: &str, seed: u64) -> TheoremReport {
    let m = MetricParams::unit();
    let boost = boost_54(0, &m);
    let mut report = match verify_poincare_nogo(id, &subgroup_for(id), &boost, &m, seed) {
        Ok(r) => r,
        Err(e) => {
            let mut b = ReportBuilder::new(id, seed);
            b.error("preconditions", &e);
            return b.finish();
        }
    };
    let rz = rotation_cayley(&Scalar::zero(), &Scalar::zero(), &Scalar::one());
    let rejected = verify_poincare_nogo(id, &subgroup_for(id), &rz, &m, seed).is_err();
    report.details.push(super::SubCheck {
        name: "rotation rejected as boost".into(),
        passed: rejected,
        values: [("map".to_string(), rz.to_string())].into_iter().collect(),
    });
    if !rejected {
        report.status = super::Status::Fail;
    }
    report
}

// ---------------------------------------------------------------------------
// Join and meet of standard simultaneities.

/// Solves `g(y - x, u1) = 0`, `g(y - x - s·u1, u2) = 0` with the least
/// Euclidean norm.
pub fn join_chain_point(u1: &Vec4, u2: &Vec4, x: &Event, s: &Scalar, m: &MetricParams) -> Result<Event> {
    let g = m.gram();
    let (a1, a2) = (g.apply(u1), g.apply(u2));
    let xv = x.coords();
    let r1 = lorentz_form(xv, u1, m);
    let r2 = lorentz_form(&(xv + &u1.scale(s)), u2, m);
    let (m11, m12, m22) = (a1.dot(&a1), a1.dot(&a2), a2.dot(&a2));
    let det = &(&m11 * &m22) - &(&m12 * &m12);
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let z1 = (&(&m22 * &r1) - &(&m12 * &r2)) / &det;
    let z2 = (&(&m11 * &r2) - &(&m12 * &r1)) / &det;
    Ok(Event(&a1.scale(&z1) + &a2.scale(&z2)))
}

#[allow(clippy::too_many_arguments)]
pub fn verify_join_meet(
    id: &str,
    u1: &Vec4,
    u2: &Vec4,
    vs: &[Vec4; 4],
    x: &Event,
    s: &Scalar,
    m: &MetricParams,
    meet_set: &Arc<EventSet>,
    seed: u64,
) -> Result<TheoremReport> {
    require_future_timelike(u1, m)?;
    require_future_timelike(u2, m)?;
    if proportional(u1, u2) {
        return Err(Error::Precondition(format!("{u1} and {u2} are proportional")));
    }
    if s.is_zero() {
        return Err(Error::Precondition("s must be nonzero".into()));
    }
    for v in vs {
        require_future_timelike(v, m)?;
    }
    Ok(ReportBuilder::new(id, seed).run(|rep| {
        let y = join_chain_point(u1, u2, x, s, m)?;
        let x2 = x + &u1.scale(s);
        rep.check("x R_u1 y", standard_sim(u1, x, &y, m)?, [("x", x.to_string()), ("y", y.to_string())]);
        rep.check("y R_u2 x + s·u1", standard_sim(u2, &y, &x2, m)?, [("y", y.to_string()), ("x + s·u1", x2.to_string())]);
        let three = Arc::new(EventSet::new(vec![("x".into(), x.clone()), ("y".into(), y.clone()), ("x+s*u1".into(), x2.clone())])?);
        let r1 = RelationSpec::StandardSim { u: u1.clone(), m: m.clone() }.restrict(&three)?;
        let r2 = RelationSpec::StandardSim { u: u2.clone(), m: m.clone() }.restrict(&three)?;
        let top = FinitePartition::top(&three);
        rep.check("neither relation alone is total", r1 != top && r2 != top, [("R_u1", format!("{r1:?}")), ("R_u2", format!("{r2:?}"))]);
        let join = r1.join(&r2)?;
        rep.check("join is a single block", join == top, [("join", format!("{join:?}"))]);

        let g = m.gram();
        let rows = crate::linalg::Mat4::from_columns(std::array::from_fn(|i| g.apply(&vs[i]))).transpose();
        let det = rows.determinant();
        rep.check("orthogonal hyperplanes meet only in 0", !det.is_zero(), [("det", det.to_string())]);
        let mut meet = FinitePartition::top(meet_set);
        for v in vs {
            meet = meet.meet(&RelationSpec::StandardSim { u: v.clone(), m: m.clone() }.restrict(meet_set)?)?;
        }
        rep.check(
            "meet is the identity relation",
            meet == FinitePartition::bottom(meet_set),
            [("events", meet_set.len().to_string()), ("blocks", meet.block_count().to_string())],
        );
        Ok(())
    }))
}

pub fn default_join_meet(seed: u64) -> TheoremReport {
    let id = "join-meet";
    let m = MetricParams::unit();
    let u1 = Vec4::basis(3);
    let u2 = boost_54(0, &m).invert().apply_vector(&u1);
    let vs = [u1.clone(), tilted_u(&m), boost_54(1, &m).apply_vector(&u1), boost_54(2, &m).apply_vector(&u1)];
    let meet_set = Arc::new(fixtures::random_events(&mut rng(seed), 20, 3, 1));
    let run = verify_join_meet(id, &u1, &u2, &vs, &Event::origin(), &Scalar::one(), &m, &meet_set, seed);
    let mut report = match run {
        Ok(r) => r,
        Err(e) => {
            let mut b = ReportBuilder::new(id, seed);
            b.error("preconditions", &e);
            return b.finish();
        }
    };
    let same = verify_join_meet(id, &u1, &u1, &vs, &Event::origin(), &Scalar::one(), &m, &meet_set, seed).is_err();
    report.details.push(super::SubCheck {
        name: "proportional directions rejected".into(),
        passed: same,
        values: [("u", u1.to_string())].into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    });
    if !same {
        report.status = super::Status::Fail;
    }
    report
}

// ---------------------------------------------------------------------------
// Causality M-statements under non-standard synchrony.

pub fn verify_causality(id: &str, phi: &InertialCoords, x: &Arc<EventSet>, seed: u64) -> TheoremReport {
    ReportBuilder::new(id, seed).run(|rep| {
        let c = phi.c().clone();
        let standard = InertialCoords::identity(phi.metric().clone());
        for n in rational_unit_vectors(5) {
            let two = phi.two_way_speed(&n)?;
            if !rep.check("two-way light speed is c", two == c, [("direction", n.to_string()), ("speed", two.to_string())]) {
                break;
            }
        }
        match phi.causality_witness() {
            None => {
                rep.check("no witness for standard synchrony", phi.is_standard_synchrony(), [("k", phi.k().to_string())]);
                let n = x.len();
                let mut agree = 0usize;
                for i in 0..n {
                    for j in 0..n {
                        let (p, q) = (x.event(i), x.event(j));
                        if standard.m_connectible(p, q) == phi.m_connectible(p, q) {
                            agree += 1;
                        } else {
                            rep.check("M-statements agree", false, [("p", p.to_string()), ("q", q.to_string())]);
                        }
                    }
                }
                rep.check("M-statements agree", agree == n * n, [("pairs", agree.to_string())]);
            }
            Some(v) => {
                let s = Scalar::one() + phi.k().dot(&phi.rotation().apply(&v));
                rep.check(
                    "witness violates |v| ≤ c(1 + k·Av)",
                    phi.violates_light_bound(&v) && v.norm_sq() == c.square(),
                    [("v", v.to_string()), ("|v|²", v.norm_sq().to_string()), ("c(1 + k·Av)", (&c * &s).to_string())],
                );
                let (o, q) = (Event::origin(), Event(Vec4::from_parts(&v.scale(&c.recip()?), Scalar::one())));
                let before = standard.m_connectible(&o, &q);
                let after = phi.m_connectible(&o, &q);
                rep.check(
                    "pair M-connectible in standard coordinates only",
                    before && !after,
                    [("p", o.to_string()), ("q", q.to_string()), ("q'", phi.to_prime(&q).to_string())],
                );
                rep.witness(format!("light signal along {v} is not M-connectible in the primed system"));
            }
        }
        Ok(())
    })
}

pub fn default_causality(id: &str, seed: u64) -> TheoremReport {
    let text = if id.ends_with(":nonstandard") {
        "coords lambda=1 k=(1/2,0,0) A=cayley(0,0,0) c=1"
    } else if id.ends_with(":rotated") {
        "coords lambda=1 k=(0,1/2,0) A=cayley(0,0,1) c=1"
    } else {
        "coords lambda=2 k=(0,0,0) A=cayley(1,2,3) c=1"
    };
    let phi: InertialCoords = text.parse().expect("shipped coordinate systems are valid");
    let x = Arc::new(fixtures::random_events(&mut rng(seed), 30, 4, 2));
    verify_causality(id, &phi, &x, seed)
}

/// Among the Newton families only absolute simultaneity avoids relating
/// causally connectible events.
pub fn verify_absolute_simultaneity(id: &str, x: &Arc<EventSet>, seed: u64) -> TheoremReport {
    ReportBuilder::new(id, seed).run(|rep| {
        for h in [RealSubgroupSpec::Zero, h_cyclic(), h_dense()] {
            for spec in [RelationSpec::NewtonTypeI(h.clone()), RelationSpec::NewtonTypeII(h.clone())] {
                let trivial = matches!(spec, RelationSpec::NewtonTypeI(RealSubgroupSpec::Zero));
                let expect_ok = matches!(spec, RelationSpec::NewtonTypeII(RealSubgroupSpec::Zero));
                let outcome = spec.satisfies_causality(x, &CausalKind::Classical)?;
                let mut values = vec![("relation".to_string(), spec.to_string())];
                if let CausalityOutcome::Violation(i, j) = outcome {
                    values.push(("violation".into(), format!("{}, {}", x.event(i), x.event(j))));
                }
                if trivial {
                    values.push(("note".into(), "identity relation, excluded as trivial".into()));
                    rep.check("trivial family skipped", true, values);
                    continue;
                }
                let ok = outcome == CausalityOutcome::Ok;
                values.push(("expected".into(), if expect_ok { "ok" } else { "violation" }.into()));
                rep.check("causality condition", ok == expect_ok, values);
            }
        }
        Ok(())
    })
}

pub fn default_absolute_simultaneity(seed: u64) -> TheoremReport {
    verify_absolute_simultaneity("causality:absolute", &Arc::new(fixtures::newton_set()), seed)
}

// ---------------------------------------------------------------------------
// Conformal orthochronous maps preserve the causal order.

pub fn verify_alexandrov(id: &str, g: &Affine4, x: &Arc<EventSet>, m: &MetricParams, seed: u64) -> Result<TheoremReport> {
    if !member(g, &GroupId::ConformalPoincare(m.clone())) || !g.linear().0[3][3].is_positive() {
        return Err(Error::Precondition(format!("{g} is not a conformal orthochronous Poincaré map")));
    }
    Ok(ReportBuilder::new(id, seed).run(|rep| {
        let n = x.len();
        let mut causal_pairs = 0usize;
        let mut ok = true;
        for i in 0..n {
            for j in 0..n {
                let (p, q) = (x.event(i), x.event(j));
                let before = causal_order(p, q, m);
                causal_pairs += usize::from(before && i != j);
                if before != causal_order(&g.apply(p), &g.apply(q), m) {
                    ok = false;
                    rep.check("order preserved", false, [("p", p.to_string()), ("q", q.to_string())]);
                }
            }
        }
        rep.check(
            "order preserved on all pairs",
            ok,
            [("map", g.to_string()), ("events", n.to_string()), ("ordered pairs", causal_pairs.to_string())],
        );
        Ok(())
    }))
}

pub fn default_alexandrov(seed: u64) -> TheoremReport {
    let id = "alexandrov";
    let m = MetricParams::unit();
    let x = Arc::new(fixtures::random_events(&mut rng(seed), 30, 4, 1));
    let g = dilatation(&Scalar::int(2)).expect("positive").compose(&boost_54(0, &m));
    let mut b = ReportBuilder::new(id, seed);
    match verify_alexandrov(id, &g, &x, &m, seed) {
        Ok(r) => {
            for c in r.details {
                b.check(&c.name, c.passed, c.values);
            }
        }
        Err(e) => b.error("preconditions", &e),
    }
    match verify_alexandrov(id, &Affine4::identity(), &x, &m, seed) {
        Ok(r) => {
            b.check("identity preserves order", !r.status.is_fail(), [("checks", r.details.len())]);
        }
        Err(e) => b.error("identity accepted", &e),
    }
    let theta = verify_alexandrov(id, &time_inversion(), &x, &m, seed);
    b.check("time inversion rejected", theta.is_err(), [("map", time_inversion().to_string())]);
    b.finish()
}

// ---------------------------------------------------------------------------
// Half-cone relations along a worldline.

pub fn verify_malament(id: &str, c_hat: &Scalar, x: &Arc<EventSet>, seed: u64) -> TheoremReport {
    ReportBuilder::new(id, seed).run(|rep| {
        let m = MetricParams::unit();
        let plus = RelationSpec::HalfCone { c_hat: c_hat.clone(), sign: ConeSign::Future };
        let minus = RelationSpec::HalfCone { c_hat: c_hat.clone(), sign: ConeSign::Past };
        let rest = RelationSpec::StandardSim { u: Vec4::basis(3), m: m.clone() };
        let strict = cube_generators();
        let partial = vec![
            dilatation(&Scalar::int(2))?,
            dilatation(&Scalar::frac(1, 2))?,
            translation(&Vec4::basis(3)),
            translation(&-Vec4::basis(3)),
        ];
        for g in strict.iter().chain(&partial) {
            check_member(rep, "generator fixes the worldline", g, &GroupId::NewtonLineStabilizerConformal, true);
        }
        // Part 1: cones and the standard relation survive the Newton line group.
        let theta = time_inversion();
        let mirrored = Arc::new(image_set(&theta, x));
        for (name, spec, set) in [("future half-cones", &plus, x), ("past half-cones", &minus, &mirrored), ("R_e4", &rest, x)] {
            let part = spec.restrict(set)?;
            rep.check(
                &format!("{name}: restriction is nontrivial"),
                part != FinitePartition::top(set) && part != FinitePartition::bottom(set),
                [("blocks", part.block_count().to_string()), ("events", set.len().to_string())],
            );
            for g in &strict {
                check_invariance(rep, &format!("{name} fixed by rotation"), &part, g, InducedPolicy::Strict, true)?;
            }
            for g in &partial {
                check_invariance(rep, &format!("{name} fixed by dilatation/translation"), &part, g, InducedPolicy::Partial, true)?;
            }
        }
        // A tilted hyperplane relation is not rotation invariant.
        let u = tilted_u(&m);
        let tilted = RelationSpec::StandardSim { u: u.clone(), m: m.clone() };
        let q = Event(Vec4::from_parts(&Vec3::from_ints([5, 0, 0]), Scalar::int(-3)));
        let rz = &strict[0];
        check_pair_broken(rep, "tilted rival broken by rotation", &tilted, rz, &Event::origin(), &q)?;
        let orbit = Arc::new(EventSet::from_events(
            std::iter::once(Event::origin()).chain((0..4).scan(q.clone(), |cur, _| {
                let out = cur.clone();
                *cur = rz.apply(cur);
                Some(out)
            })),
        ));
        check_invariance(rep, "tilted rival restriction broken", &tilted.restrict(&orbit)?, rz, InducedPolicy::Strict, false)?;

        // Part 2: time inversion glues the cones of two apexes together.
        let (k1, k2) = (Scalar::zero(), Scalar::int(2));
        let half = (&k2 - &k1) / Scalar::int(2);
        let w = Event(Vec4::from_parts(&Vec3::new(c_hat * &half, Scalar::zero(), Scalar::zero()), (&k1 + &k2) / Scalar::int(2)));
        let apex = |k: &Scalar| Event(Vec4::from_parts(&Vec3::zero(), k.clone()));
        let cone_m = MetricParams::new(c_hat.clone())?;
        let on_upper = lorentz_form(&(&w - &apex(&k1)), &(&w - &apex(&k1)), &cone_m).is_zero() && w.time() > &k1;
        let on_lower = lorentz_form(&(&w - &apex(&k2)), &(&w - &apex(&k2)), &cone_m).is_zero() && w.time() < &k2;
        rep.check(
            "intersection point lies on both cones",
            on_upper && on_lower && w.spatial().norm_sq() == (c_hat * &half).square(),
            [("x", w.to_string()), ("k1", k1.to_string()), ("k2", k2.to_string())],
        );
        rep.check(
            "chain (0,k1) ~+ x ~- (0,k2)",
            decided(&plus, &apex(&k1), &w)? && decided(&minus, &w, &apex(&k2))?,
            [("x", w.to_string())],
        );
        rep.check("apexes are not related by the cone relation", !decided(&plus, &apex(&k1), &apex(&k2))?, [("k1", k1.to_string()), ("k2", k2.to_string())]);
        check_pair_broken(rep, "time inversion breaks the future cones", &plus, &theta, &apex(&k1), &w)?;
        let mut mirror_ok = true;
        for (i, p) in x.events().iter().enumerate().step_by(7) {
            for q in x.events().iter().skip(i % 5).step_by(11) {
                mirror_ok &= decided(&minus, p, q)? == decided(&plus, &theta.apply(p), &theta.apply(q))?;
            }
        }
        rep.check("past cones are the time-inverted future cones", mirror_ok, [("sampled from", x.len().to_string())]);
        let three = Arc::new(EventSet::from_events([apex(&k1), w.clone(), apex(&k2)]));
        let glued = plus.restrict(&three)?.join(&minus.restrict(&three)?)?;
        rep.check("cones of both signs join the two apexes", glued.same_block(0, 2), [("join", format!("{glued:?}"))]);
        // Once two points of the line are related, the line collapses.
        let line = Arc::new(EventSet::from_events((-4..=4).map(|t| ev([0, 0, 0, t]))));
        let start = FinitePartition::from_pairs(&line, [(line.index_of(&apex(&k1)).unwrap(), line.index_of(&apex(&k2)).unwrap())]);
        let closure = start.invariant_closure(&[translation(&Vec4::basis(3)), dilatation(&Scalar::int(2))?], InducedPolicy::Partial, 20)?;
        rep.check(
            "invariant closure collapses the worldline",
            closure.converged && closure.partition == FinitePartition::top(&line),
            [("rounds", closure.rounds.to_string()), ("blocks", closure.partition.block_count().to_string())],
        );
        // R_e4 survives the full conformal line group including time inversion.
        let sym = Arc::new(fixtures::symmetric_set());
        let rest_sym = rest.restrict(&sym)?;
        check_member(rep, "time inversion fixes the worldline", &theta, &GroupId::LineStabilizerConformal, true);
        for g in strict.iter().chain([&theta]) {
            check_invariance(rep, "R_e4 fixed by rotation / time inversion", &rest_sym, g, InducedPolicy::Strict, true)?;
        }
        for g in &partial {
            check_invariance(rep, "R_e4 fixed by dilatation/translation", &rest_sym, g, InducedPolicy::Partial, true)?;
        }
        rep.check("scope", true, [("note", SCOPE_NOTE)]);
        Ok(())
    })
}

pub fn default_malament(seed: u64) -> TheoremReport {
    let c = Scalar::one();
    verify_malament("malament", &c, &Arc::new(fixtures::cone_set(&c)), seed)
}

// ---------------------------------------------------------------------------
// Without dilatations: unique representatives on the line force R_e4.

/// One derived equivalence: `pair` follows from `from` by `step`.
struct Derived {
    step: String,
    pair: (Event, Event),
}

pub fn verify_hogarth(id: &str, a_bar: &Vec3, s: &Scalar, seed: u64) -> TheoremReport {
    ReportBuilder::new(id, seed).run(|rep| {
        let at = |t: &Scalar| Event(Vec4::from_parts(&Vec3::zero(), t.clone()));
        let o = Event::origin();
        let p = Event(Vec4::from_parts(a_bar, s.clone()));
        let down = translation(&Vec4::from_parts(&Vec3::zero(), -s));
        let up = down.invert();
        let theta = time_inversion();
        for (g, name) in [(&down, "translation"), (&theta, "time inversion")] {
            check_member(rep, &format!("{name} is in the line group"), g, &GroupId::LineStabilizer, true);
        }
        let image = |g: &Affine4, pr: &(Event, Event)| (g.apply(&pr.0), g.apply(&pr.1));
        let start = (p.clone(), o.clone());
        let d1 = Derived { step: "translate by -s·e4".into(), pair: image(&down, &start) };
        let d2 = Derived { step: "time inversion".into(), pair: image(&theta, &start) };
        let d3 = Derived { step: "translate the inverted pair by s·e4".into(), pair: image(&up, &d2.pair) };
        let expected = [
            (Event(Vec4::from_parts(a_bar, Scalar::zero())), at(&-s)),
            (Event(Vec4::from_parts(a_bar, -s)), o.clone()),
            (Event(Vec4::from_parts(a_bar, Scalar::zero())), at(s)),
        ];
        for (d, e) in [&d1, &d2, &d3].into_iter().zip(&expected) {
            rep.check(&d.step, d.pair == *e, [("derived", format!("{} ~ {}", d.pair.0, d.pair.1))]);
        }
        // Transitivity through the common point (ā, 0).
        let common = d1.pair.0 == d3.pair.0;
        let end = (d3.pair.1.clone(), d1.pair.1.clone());
        rep.check("chain closes through (ā, 0)", common, [("conclusion", format!("{} ~ {}", end.0, end.1))]);
        let contradiction = end.0 != end.1;
        rep.check(
            "two line points forced together unless s = 0",
            contradiction == !s.is_zero(),
            [("s", s.to_string()), ("points", format!("{}, {}", end.0, end.1))],
        );
        // Replay on a finite set with the partition machinery.
        let six = Arc::new(EventSet::from_events([o.clone(), p.clone(), d1.pair.0.clone(), d1.pair.1.clone(), d2.pair.0.clone(), d3.pair.1.clone()]));
        let idx = |e: &Event| six.index_of(e).expect("chain point in set");
        let r0 = FinitePartition::from_pairs(&six, [(idx(&p), idx(&o))]);
        let closure = r0.invariant_closure(&[up.clone(), theta.clone()], InducedPolicy::Partial, 10)?;
        rep.check(
            "closure relates (0̄, s) and (0̄, -s)",
            closure.converged && closure.partition.same_block(idx(&end.0), idx(&end.1)),
            [("closure", format!("{:?}", closure.partition))],
        );
        // R_e4 itself passes the line-group checks.
        let sym = Arc::new(fixtures::symmetric_set());
        let rest = RelationSpec::StandardSim { u: Vec4::basis(3), m: MetricParams::unit() }.restrict(&sym)?;
        for g in cube_generators().iter().chain([&theta]) {
            check_invariance(rep, "R_e4 fixed by rotation / time inversion", &rest, g, InducedPolicy::Strict, true)?;
        }
        check_invariance(rep, "R_e4 fixed by translation along the line", &rest, &translation(&Vec4::basis(3)), InducedPolicy::Partial, true)?;
        Ok(())
    })
}

pub fn default_hogarth(seed: u64) -> TheoremReport {
    let a = Vec3::from_ints([1, 0, 0]);
    let mut report = verify_hogarth("hogarth", &a, &Scalar::one(), seed);
    let flat = verify_hogarth("hogarth", &a, &Scalar::zero(), seed);
    for mut c in flat.details {
        c.name = format!("s = 0: {}", c.name);
        report.details.push(c);
    }
    if report.details.iter().any(|c| !c.passed) {
        report.status = super::Status::Fail;
    }
    report
}

// ---------------------------------------------------------------------------
// Finitely generated subgroups of R: cyclic or dense.

pub fn verify_subgroup_dichotomy(id: &str, lists: &[Vec<Scalar>], bound: i64, probes: usize, seed: u64) -> TheoremReport {
    ReportBuilder::new(id, seed).run(|rep| {
        for gens in lists {
            let spec = RealSubgroupSpec::generated(gens.iter().cloned());
            let class = classify_subgroup(&spec);
            let oracle = density_oracle(gens, bound, probes);
            let agree = match (&class, &oracle) {
                (SubgroupClass::Zero, OracleVerdict::Zero) => true,
                (SubgroupClass::Cyclic(a), OracleVerdict::Gap { smallest }) => a == smallest,
                (SubgroupClass::Dense, OracleVerdict::Dense) => true,
                _ => false,
            };
            rep.check(
                "classifier agrees with sweep oracle",
                agree,
                [("generators", spec.to_string()), ("class", class.to_string()), ("oracle", format!("{oracle:?}"))],
            );
        }
        Ok(())
    })
}

pub fn default_subgroup_dichotomy(seed: u64) -> TheoremReport {
    let r2 = Scalar::sqrt2();
    let lists = vec![
        vec![Scalar::frac(1, 2), Scalar::frac(1, 3)],
        vec![Scalar::one(), r2.clone()],
        vec![Scalar::int(2), Scalar::int(4)],
        vec![&r2 * &Scalar::int(2), &r2 * &Scalar::int(3)],
        vec![Scalar::frac(3, 4), Scalar::one() + &r2],
        vec![Scalar::zero()],
    ];
    verify_subgroup_dichotomy("subgroup-dichotomy", &lists, 1000, 100, seed)
}

// ---------------------------------------------------------------------------
// Relations invariant under the isotropy group of a rest pencil.

pub fn verify_rest_pencil(id: &str, frame: &RestFrame, seed: u64) -> TheoremReport {
    ReportBuilder::new(id, seed).run(|rep| {
        let (u, m) = (frame.u().clone(), frame.metric().clone());
        let lift = lift_to(&u, &m)?;
        let x = Arc::new(image_set(&lift, &fixtures::product_set(&[Scalar::zero(), Scalar::one(), Scalar::int(2)])));
        let rotations: Vec<Affine4> = cube_generators().iter().map(|g| g.conjugate_by(&lift.invert())).collect();
        let group = GroupId::RestIsotropy(frame.clone());
        for g in &rotations {
            check_member(rep, "conjugated rotation fixes u", g, &group, true);
            let same = conjugate_isotropy_check(&lift, &Vec4::basis(3), &m, g)?;
            rep.check("isotropy groups correspond under the boost", same, [("map", g.to_string())]);
        }
        if !lift.linear().is_identity() {
            // The boost is along x, so the quarter turn about z moves u.
            check_member(rep, "unconjugated rotation does not fix u", &cube_generators()[0], &group, false);
        }
        let shift = translation(&u);
        let specs = [
            RelationSpec::PencilTypeI { u: u.clone(), h: h_cyclic(), m: m.clone() },
            RelationSpec::PencilTypeII { u: u.clone(), h: h_cyclic(), m: m.clone() },
            RelationSpec::PencilTypeII { u: u.clone(), h: h_dense(), m: m.clone() },
            RelationSpec::StandardSim { u: u.clone(), m: m.clone() },
        ];
        for spec in &specs {
            let part = spec.restrict(&x)?;
            for g in &rotations {
                check_invariance(rep, &format!("{} fixed by rest rotation", spec.family()), &part, g, InducedPolicy::Strict, true)?;
            }
            check_invariance(rep, &format!("{} fixed by translation along u", spec.family()), &part, &shift, InducedPolicy::Partial, true)?;
        }
        let std = RelationSpec::StandardSim { u: u.clone(), m: m.clone() }.restrict(&x)?;
        let pencil0 = RelationSpec::PencilTypeII { u: u.clone(), h: RealSubgroupSpec::Zero, m: m.clone() }.restrict(&x)?;
        rep.check("R_u equals the type II pencil with H = {0}", std == pencil0, [("events", x.len().to_string())]);
        Ok(())
    })
}

pub fn default_rest_pencil(seed: u64) -> TheoremReport {
    let m = MetricParams::unit();
    let frame = RestFrame::new(tilted_u(&m), m).expect("boosted e4 is future timelike");
    verify_rest_pencil("rest-pencil", &frame, seed)
}
