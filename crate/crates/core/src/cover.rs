//! Covering numbers: the least number of proper subrings whose union is the
//! whole ring, computed as an exact minimum set cover over maximal subrings.

use std::cmp::Ordering;
use std::fmt;
use std::time::{Duration, Instant};

use crate::elemset::ElementSet;
use crate::error::{Result, RingError};
use crate::ideal::ideal_closure;
use crate::ring::RingTable;
use crate::subring::{all_subrings, is_subring, subring_closure, DEFAULT_LATTICE_CAP};

pub const DEFAULT_SIGMA_CAP: usize = 12;

/// Engine limits shared by the solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub lattice_cap: usize,
    pub sigma_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            lattice_cap: DEFAULT_LATTICE_CAP,
            sigma_cap: DEFAULT_SIGMA_CAP,
        }
    }
}

impl Limits {
    pub fn with_sigma_cap(self, sigma_cap: usize) -> Self {
        Limits { sigma_cap, ..self }
    }
}

/// A covering number; `NotCoverable` compares above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sigma {
    Finite(usize),
    NotCoverable,
}

impl Sigma {
    pub fn finite(self) -> Option<usize> {
        match self {
            Sigma::Finite(n) => Some(n),
            Sigma::NotCoverable => None,
        }
    }
}

impl Ord for Sigma {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Sigma::Finite(a), Sigma::Finite(b)) => a.cmp(b),
            (Sigma::Finite(_), Sigma::NotCoverable) => Ordering::Less,
            (Sigma::NotCoverable, Sigma::Finite(_)) => Ordering::Greater,
            (Sigma::NotCoverable, Sigma::NotCoverable) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Sigma {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma::Finite(n) => write!(f, "{n}"),
            Sigma::NotCoverable => f.write_str("NotCoverable"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct CoverResult {
    pub sigma: Sigma,
    /// A minimum cover by maximal subrings (lexicographically least in
    /// canonical order); empty when not coverable.
    pub witness: Vec<ElementSet>,
    /// Intersection of the witness members.
    pub intersection: Option<ElementSet>,
    pub stats: SearchStats,
}

/// True iff no single element generates the ring.
pub fn is_coverable(ring: &RingTable) -> bool {
    ring.elements()
        .all(|x| !subring_closure(ring, &ElementSet::from_elems(ring.order(), [x])).is_full())
}

/// Computes the covering number from scratch.
pub fn sigma(ring: &RingTable, limits: &Limits) -> Result<CoverResult> {
    let lattice = all_subrings(ring, limits.lattice_cap)?;
    sigma_from_maximals(ring, &lattice.maximal_subrings(), limits.sigma_cap)
}

/// Covering number given the maximal subrings in canonical order.
pub fn sigma_from_maximals(ring: &RingTable, maximals: &[ElementSet], cap: usize) -> Result<CoverResult> {
    let start = Instant::now();
    let n = ring.order();
    let m = maximals.len();
    let mut stats = SearchStats::default();

    // Containment pattern of each element; keep the inclusion-minimal ones.
    let patterns: Vec<Mask> = ring
        .elements()
        .map(|x| Mask::from_iter(m, (0..m).filter(|&i| maximals[i].contains(x))))
        .collect();
    if patterns.iter().any(Mask::is_empty) {
        stats.elapsed = start.elapsed();
        return Ok(CoverResult {
            sigma: Sigma::NotCoverable,
            witness: Vec::new(),
            intersection: None,
            stats,
        });
    }
    let mut universe: Vec<Mask> = Vec::new();
    for p in &patterns {
        if !universe.contains(p) {
            universe.push(p.clone());
        }
    }
    let reduced: Vec<Mask> = universe
        .iter()
        .filter(|p| !universe.iter().any(|q| q != *p && q.is_subset(p)))
        .cloned()
        .collect();
    let problem = CoverProblem::new(m, reduced);

    let all = Mask::full(m);
    let best = problem
        .minimum(&Mask::full(problem.universe), &all, cap, &mut stats.nodes)
        .ok_or_else(|| RingError::CapExceeded(format!("covering number exceeds {cap}")))?;
    let size = best.len();

    // Lexicographically least cover of that size.
    let mut chosen: Vec<usize> = Vec::with_capacity(size);
    let mut uncovered = Mask::full(problem.universe);
    let mut next = 0;
    for pos in 0..size {
        let j = (next..m)
            .find(|&j| {
                let rest = uncovered.difference(&problem.sets[j]);
                let allowed = Mask::from_iter(m, j + 1..m);
                problem
                    .minimum(&rest, &allowed, size - pos - 1, &mut stats.nodes)
                    .is_some()
            })
            .expect("a cover of the optimal size exists");
        uncovered = uncovered.difference(&problem.sets[j]);
        chosen.push(j);
        next = j + 1;
    }

    let witness: Vec<ElementSet> = chosen.iter().map(|&i| maximals[i].clone()).collect();
    let union = witness.iter().fold(ElementSet::empty(n), |acc, s| acc.union(s));
    if !union.is_full() {
        return Err(RingError::Invalid("witness does not cover the ring".into()));
    }
    // No cover with one fewer member, neither inside the witness nor at all.
    for skip in 0..witness.len() {
        let partial = witness
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .fold(ElementSet::empty(n), |acc, (_, s)| acc.union(s));
        if partial.is_full() {
            return Err(RingError::Invalid("witness is redundant".into()));
        }
    }
    if size > 0
        && problem
            .minimum(&Mask::full(problem.universe), &all, size - 1, &mut stats.nodes)
            .is_some()
    {
        return Err(RingError::Invalid("re-search found a smaller cover".into()));
    }
    let intersection = witness
        .iter()
        .skip(1)
        .fold(witness[0].clone(), |acc, s| acc.intersection(s));
    stats.elapsed = start.elapsed();
    Ok(CoverResult {
        sigma: Sigma::Finite(size),
        witness,
        intersection: Some(intersection),
        stats,
    })
}

/// Indices attached to a cover `S_1, .., S_n` with `S` their intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodTupleReport {
    /// `[R : S_i]`
    pub indexes: Vec<usize>,
    /// `[S_i : S]`
    pub indexes_over_intersection: Vec<usize>,
    /// `[R : S]`
    pub index: usize,
    pub intersection: ElementSet,
    pub unit_in_intersection: bool,
    /// `S` contains no nonzero two-sided ideal of `R`.
    pub ideal_free: bool,
}

pub fn verify_good_tuple(ring: &RingTable, cover: &[ElementSet]) -> Result<GoodTupleReport> {
    let n = ring.order();
    if cover.is_empty() {
        return Err(RingError::NotACover);
    }
    if cover.iter().any(|s| s.is_full() || !is_subring(ring, s)) {
        return Err(RingError::NotASubring);
    }
    let union = cover.iter().fold(ElementSet::empty(n), |acc, s| acc.union(s));
    if !union.is_full() {
        return Err(RingError::NotACover);
    }
    let s = cover
        .iter()
        .skip(1)
        .fold(cover[0].clone(), |acc, t| acc.intersection(t));
    // Every nonzero ideal inside S contains a principal one.
    let ideal_free = s
        .iter()
        .filter(|&x| x != ring.zero())
        .all(|x| !ideal_closure(ring, &ElementSet::from_elems(n, [x])).is_subset(&s));
    Ok(GoodTupleReport {
        indexes: cover.iter().map(|c| n / c.len()).collect(),
        indexes_over_intersection: cover.iter().map(|c| c.len() / s.len()).collect(),
        index: n / s.len(),
        unit_in_intersection: s.contains(ring.one()),
        ideal_free,
        intersection: s,
    })
}

// Small bitset over set or universe indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Mask(Vec<u64>);

impl Mask {
    fn empty(len: usize) -> Self {
        Mask(vec![0; len.div_ceil(64).max(1)])
    }

    fn full(len: usize) -> Self {
        Self::from_iter(len, 0..len)
    }

    fn from_iter(len: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Self::empty(len);
        for i in it {
            m.0[i / 64] |= 1 << (i % 64);
        }
        m
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn intersection(&self, other: &Self) -> Self {
        Mask(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn difference(&self, other: &Self) -> Self {
        Mask(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

struct CoverProblem {
    universe: usize,
    /// For each candidate set, the universe elements it contains.
    sets: Vec<Mask>,
    /// For each universe element, the sets containing it.
    containing: Vec<Mask>,
}

impl CoverProblem {
    fn new(num_sets: usize, containing: Vec<Mask>) -> Self {
        let universe = containing.len();
        let sets = (0..num_sets)
            .map(|s| Mask::from_iter(universe, (0..universe).filter(|&e| containing[e].contains(s))))
            .collect();
        CoverProblem {
            universe,
            sets,
            containing,
        }
    }

    /// Smallest cover of `uncovered` by sets in `allowed` with at most
    /// `limit` members.
    fn minimum(&self, uncovered: &Mask, allowed: &Mask, limit: usize, nodes: &mut u64) -> Option<Vec<usize>> {
        let mut best = None;
        let mut chosen = Vec::new();
        self.branch(uncovered, allowed.clone(), limit, &mut chosen, &mut best, nodes);
        best
    }

    fn branch(
        &self,
        uncovered: &Mask,
        mut allowed: Mask,
        limit: usize,
        chosen: &mut Vec<usize>,
        best: &mut Option<Vec<usize>>,
        nodes: &mut u64,
    ) {
        *nodes += 1;
        if uncovered.is_empty() {
            *best = Some(chosen.clone());
            return;
        }
        let bound = best.as_ref().map_or(limit, |b: &Vec<usize>| b.len().saturating_sub(1));
        if chosen.len() >= bound {
            return;
        }
        let remaining = uncovered.count();
        let widest = allowed
            .iter()
            .map(|s| self.sets[s].intersection(uncovered).count())
            .max()
            .unwrap_or(0);
        if widest == 0 || chosen.len() + remaining.div_ceil(widest) > bound {
            return;
        }
        // Branch on the uncovered element with the fewest candidate sets.
        let (_, options) = uncovered
            .iter()
            .map(|e| {
                let opts = self.containing[e].intersection(&allowed);
                (opts.count(), opts)
            })
            .min_by_key(|(c, _)| *c)
            .unwrap();
        for s in options.iter() {
            chosen.push(s);
            self.branch(&uncovered.difference(&self.sets[s]), allowed.clone(), limit, chosen, best, nodes);
            chosen.pop();
            // Covers using `s` were explored in this branch.
            allowed.remove(s);
            let bound = best.as_ref().map_or(limit, |b: &Vec<usize>| b.len().saturating_sub(1));
            if chosen.len() >= bound {
                return;
            }
        }
    }
}
