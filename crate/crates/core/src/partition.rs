//! The lattice of equivalence relations on a finite event set.
//!
//! A [`FinitePartition`] stores, for every event index, the smallest index in
//! its block. That labelling is canonical, so two partitions over the same
//! base are equal exactly when their label vectors are. Building partitions
//! goes through a [`UnionFind`] forest with path compression and union by size.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::Affine4;
use crate::spacetime::Event;

/// Finite list of labelled, pairwise distinct events.
#[derive(Clone, PartialEq, Eq)]
pub struct EventSet {
    ids: Vec<String>,
    events: Vec<Event>,
    by_event: HashMap<Event, usize>,
    by_id: HashMap<String, usize>,
}

impl EventSet {
    pub fn new(entries: Vec<(String, Event)>) -> Result<Self> {
        let mut set = EventSet {
            ids: Vec::with_capacity(entries.len()),
            events: Vec::with_capacity(entries.len()),
            by_event: HashMap::with_capacity(entries.len()),
            by_id: HashMap::with_capacity(entries.len()),
        };
        for (id, ev) in entries {
            if id.is_empty() || id.chars().any(char::is_whitespace) {
                return Err(Error::Parse(format!("invalid event id `{id}`")));
            }
            let idx = set.ids.len();
            if set.by_id.insert(id.clone(), idx).is_some() {
                return Err(Error::DuplicateEvent(format!("id `{id}`")));
            }
            if let Some(prev) = set.by_event.insert(ev.clone(), idx) {
                return Err(Error::DuplicateEvent(format!(
                    "`{id}` and `{}` are the same point {ev}",
                    set.ids[prev]
                )));
            }
            set.ids.push(id);
            set.events.push(ev);
        }
        Ok(set)
    }

    /// Labels the events `e0, e1, ...`; duplicate points are dropped.
    pub fn from_events<I: IntoIterator<Item = Event>>(events: I) -> Self {
        let mut seen = HashMap::new();
        let mut entries = Vec::new();
        for ev in events {
            if seen.insert(ev.clone(), ()).is_none() {
                entries.push((format!("e{}", entries.len()), ev));
            }
        }
        EventSet::new(entries).expect("generated ids and points are unique")
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn event(&self, i: usize) -> &Event {
        &self.events[i]
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn index_of(&self, ev: &Event) -> Option<usize> {
        self.by_event.get(ev).copied()
    }

    pub fn index_of_id(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Event)> {
        self.ids.iter().map(String::as_str).zip(&self.events)
    }

    /// True when `g` maps the set onto itself.
    pub fn is_closed_under(&self, g: &Affine4) -> bool {
        self.events.iter().all(|e| self.by_event.contains_key(&g.apply(e)))
    }
}

impl fmt::Debug for EventSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// Disjoint-set forest with path compression and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`; returns false if they were already one.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }

    /// For each element, the smallest element of its set.
    pub fn canonical_labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut min_of_root = vec![usize::MAX; n];
        let roots: Vec<usize> = (0..n).map(|i| self.find(i)).collect();
        for (i, &r) in roots.iter().enumerate() {
            min_of_root[r] = min_of_root[r].min(i);
        }
        roots.into_iter().map(|r| min_of_root[r]).collect()
    }
}

/// How `induced` treats events whose image leaves the base set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InducedPolicy {
    /// The map must send the base set onto itself.
    Strict,
    /// Events whose preimage lies outside the set become singletons.
    Partial,
}

/// Equivalence relation on the indices of an [`EventSet`].
#[derive(Clone)]
pub struct FinitePartition {
    base: Arc<EventSet>,
    rep: Vec<usize>,
}

/// A pair on which a partition and its image under a map disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceDefect {
    /// Indices `i, j` in the base set.
    pub pair: (usize, usize),
    /// Preimages of `i, j` under the map.
    pub preimages: (usize, usize),
    /// Whether `i, j` are related in the original partition.
    pub related_before: bool,
}

/// Outcome of [`FinitePartition::invariant_closure`].
#[derive(Debug, Clone)]
pub struct Closure {
    pub partition: FinitePartition,
    pub converged: bool,
    pub rounds: usize,
}

impl FinitePartition {
    /// The identity relation `I`.
    pub fn bottom(base: &Arc<EventSet>) -> Self {
        FinitePartition { base: base.clone(), rep: (0..base.len()).collect() }
    }

    /// The total relation `T`.
    pub fn top(base: &Arc<EventSet>) -> Self {
        FinitePartition { base: base.clone(), rep: vec![0; base.len()] }
    }

    /// Finest partition relating every listed pair.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(base: &Arc<EventSet>, pairs: I) -> Self {
        let mut uf = UnionFind::new(base.len());
        for (a, b) in pairs {
            uf.union(a, b);
        }
        FinitePartition { base: base.clone(), rep: uf.canonical_labels() }
    }

    /// Groups indices by equal key.
    pub fn from_keys<K: std::hash::Hash + Eq>(base: &Arc<EventSet>, keys: &[K]) -> Self {
        assert_eq!(keys.len(), base.len());
        let mut first: HashMap<&K, usize> = HashMap::new();
        let rep = keys.iter().enumerate().map(|(i, k)| *first.entry(k).or_insert(i)).collect();
        FinitePartition { base: base.clone(), rep }
    }

    pub fn base(&self) -> &Arc<EventSet> {
        &self.base
    }

    /// Smallest index in the block of `i`.
    pub fn rep(&self, i: usize) -> usize {
        self.rep[i]
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.rep[i] == self.rep[j]
    }

    pub fn block_count(&self) -> usize {
        self.rep.iter().enumerate().filter(|&(i, &r)| i == r).count()
    }

    /// Blocks in order of their smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut slot = vec![usize::MAX; self.rep.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (i, &r) in self.rep.iter().enumerate() {
            if i == r {
                slot[i] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(i);
        }
        out
    }

    /// Blocks as lists of event ids.
    pub fn id_blocks(&self) -> Vec<Vec<String>> {
        self.blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|i| self.base.id(i).to_string()).collect())
            .collect()
    }

    fn check_base(&self, other: &FinitePartition) -> Result<()> {
        if Arc::ptr_eq(&self.base, &other.base) || self.base == other.base {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    /// Common refinement.
    pub fn meet(&self, other: &FinitePartition) -> Result<FinitePartition> {
        self.check_base(other)?;
        let keys: Vec<(usize, usize)> = self.rep.iter().copied().zip(other.rep.iter().copied()).collect();
        Ok(FinitePartition::from_keys(&self.base, &keys))
    }

    /// Finest partition coarser than both.
    pub fn join(&self, other: &FinitePartition) -> Result<FinitePartition> {
        self.check_base(other)?;
        let mut uf = UnionFind::new(self.rep.len());
        for i in 0..self.rep.len() {
            uf.union(i, self.rep[i]);
            uf.union(i, other.rep[i]);
        }
        Ok(FinitePartition { base: self.base.clone(), rep: uf.canonical_labels() })
    }

    /// `self ⪯ other`: every block of `self` lies inside a block of `other`.
    pub fn finer_than(&self, other: &FinitePartition) -> Result<bool> {
        self.check_base(other)?;
        Ok((0..self.rep.len()).all(|i| other.same_block(i, self.rep[i])))
    }

    /// For each index `j`, the index of `g⁻¹·x_j` when it lies in the set.
    fn preimages(&self, g: &Affine4, policy: InducedPolicy) -> Result<Vec<Option<usize>>> {
        let n = self.base.len();
        match policy {
            InducedPolicy::Strict => {
                let mut pre = vec![None; n];
                for i in 0..n {
                    let j = self.base.index_of(&g.apply(self.base.event(i))).ok_or_else(|| {
                        Error::EscapingEvent { id: self.base.id(i).to_string() }
                    })?;
                    pre[j] = Some(i);
                }
                Ok(pre)
            }
            InducedPolicy::Partial => {
                let inv = g.invert();
                Ok((0..n).map(|j| self.base.index_of(&inv.apply(self.base.event(j)))).collect())
            }
        }
    }

    /// `g·R`: `p (g·R) q ⟺ (g⁻¹p) R (g⁻¹q)`.
    pub fn induced(&self, g: &Affine4, policy: InducedPolicy) -> Result<FinitePartition> {
        let n = self.base.len();
        let pre = self.preimages(g, policy)?;
        let keys: Vec<usize> = pre
            .iter()
            .enumerate()
            .map(|(j, p)| match p {
                Some(i) => self.rep[*i],
                None => n + j,
            })
            .collect();
        Ok(FinitePartition::from_keys(&self.base, &keys))
    }

    /// First pair where `R` and `g·R` disagree, restricted to the events whose
    /// preimage stays in the set. `None` means `R` is fixed by `g` there.
    pub fn invariance_defect(&self, g: &Affine4, policy: InducedPolicy) -> Result<Option<InvarianceDefect>> {
        let pre = self.preimages(g, policy)?;
        // Label maps between blocks of R and blocks of g·R must be a bijection.
        let mut fwd: HashMap<usize, usize> = HashMap::new();
        let mut bwd: HashMap<usize, usize> = HashMap::new();
        for (j, p) in pre.iter().enumerate() {
            let Some(i) = *p else { continue };
            let (old, new) = (self.rep[j], self.rep[i]);
            if let Some(&k) = fwd.get(&old) {
                if self.rep[pre[k].unwrap()] != new {
                    return Ok(Some(InvarianceDefect {
                        pair: (k, j),
                        preimages: (pre[k].unwrap(), i),
                        related_before: true,
                    }));
                }
            } else {
                fwd.insert(old, j);
            }
            if let Some(&k) = bwd.get(&new) {
                if self.rep[k] != old {
                    return Ok(Some(InvarianceDefect {
                        pair: (k, j),
                        preimages: (pre[k].unwrap(), i),
                        related_before: false,
                    }));
                }
            } else {
                bwd.insert(new, j);
            }
        }
        Ok(None)
    }

    /// Least fixpoint of `R ↦ R ∨ ⋁_g g·R` over `gens` and their inverses.
    pub fn invariant_closure(&self, gens: &[Affine4], policy: InducedPolicy, max_rounds: usize) -> Result<Closure> {
        let mut all = Vec::with_capacity(gens.len() * 2);
        for g in gens {
            all.push(g.clone());
            all.push(g.invert());
        }
        let mut cur = self.clone();
        for round in 1..=max_rounds {
            let mut next = cur.clone();
            for g in &all {
                next = next.join(&cur.induced(g, policy)?)?;
            }
            if next == cur {
                return Ok(Closure { partition: cur, converged: true, rounds: round });
            }
            cur = next;
        }
        Ok(Closure { partition: cur, converged: false, rounds: max_rounds })
    }
}

impl PartialEq for FinitePartition {
    fn eq(&self, other: &Self) -> bool {
        self.check_base(other).is_ok() && self.rep == other.rep
    }
}

impl Eq for FinitePartition {}

impl fmt::Debug for FinitePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.id_blocks()).finish()
    }
}

impl fmt::Display for FinitePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in self.id_blocks() {
            writeln!(f, "{}", block.join(" "))?;
        }
        Ok(())
    }
}
