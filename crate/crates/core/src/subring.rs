//! Subrings (additive subgroups closed under multiplication; the unit is not
//! required) and the lattice of all subrings.

use std::collections::HashMap;

use crate::elemset::ElementSet;
use crate::error::{Result, RingError};
use crate::ring::{Elem, RingTable};

/// Default bound on the number of subrings enumerated.
pub const DEFAULT_LATTICE_CAP: usize = 100_000;

/// Smallest subring containing `gens`. Does not adjoin `1`.
pub fn subring_closure(ring: &RingTable, gens: &ElementSet) -> ElementSet {
    let zero = ElementSet::from_elems(ring.order(), [ring.zero()]);
    grow(ring, &zero, gens.iter())
}

/// Smallest subring containing the subring `base` and `x`.
pub fn extend_closure(ring: &RingTable, base: &ElementSet, x: Elem) -> ElementSet {
    grow(ring, base, [x])
}

// `base` must already be a subring; pairs inside it are not revisited.
fn grow(ring: &RingTable, base: &ElementSet, extra: impl IntoIterator<Item = Elem>) -> ElementSet {
    let mut set = base.clone();
    let mut members = base.to_vec();
    let mut queue: Vec<Elem> = extra.into_iter().filter(|&x| !set.contains(x)).collect();
    while let Some(x) = queue.pop() {
        if !set.insert(x) {
            continue;
        }
        members.push(x);
        for &y in &members {
            for z in [ring.add(x, y), ring.mul(x, y), ring.mul(y, x)] {
                if !set.contains(z) {
                    queue.push(z);
                }
            }
        }
    }
    set
}

/// Smallest additive subgroup containing `gens`.
pub fn additive_span(ring: &RingTable, gens: impl IntoIterator<Item = Elem>) -> ElementSet {
    let mut set = ElementSet::from_elems(ring.order(), [ring.zero()]);
    let mut members = vec![ring.zero()];
    for g in gens {
        if set.contains(g) {
            continue;
        }
        // Adjoin the cyclic group of g: members + j*g.
        let mut grown = Vec::new();
        let mut step = g;
        while !set.contains(step) {
            for &m in &members {
                grown.push(ring.add(m, step));
            }
            step = ring.add(step, g);
        }
        for e in grown {
            if set.insert(e) {
                members.push(e);
            }
        }
    }
    set
}

pub fn is_subring(ring: &RingTable, s: &ElementSet) -> bool {
    if s.domain() != ring.order() || !s.contains(ring.zero()) {
        return false;
    }
    let members = s.to_vec();
    members.iter().all(|&x| {
        members
            .iter()
            .all(|&y| s.contains(ring.add(x, y)) && s.contains(ring.mul(x, y)))
    })
}

/// One representative (the least index) of each coset `x + s` of an additive
/// subgroup `s`, excluding `s` itself.
pub fn coset_representatives(ring: &RingTable, s: &ElementSet) -> Vec<Elem> {
    let mut seen = s.clone();
    let members = s.to_vec();
    let mut reps = Vec::new();
    for x in ring.elements() {
        if seen.contains(x) {
            continue;
        }
        reps.push(x);
        for &m in &members {
            seen.insert(ring.add(x, m));
        }
    }
    reps
}

/// True iff `s` is a proper subring and adjoining any outside element
/// generates the whole ring.
pub fn is_maximal(ring: &RingTable, s: &ElementSet) -> bool {
    if !is_subring(ring, s) || s.is_full() {
        return false;
    }
    coset_representatives(ring, s)
        .into_iter()
        .all(|x| extend_closure(ring, s, x).is_full())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubringLattice {
    subrings: Vec<ElementSet>,
    maximal: Vec<bool>,
    containment: Vec<(usize, usize)>,
}

impl SubringLattice {
    /// Builds the lattice from a complete family of subrings, sorting it
    /// canonically and deriving maximality and containment.
    pub fn from_subrings(ring: &RingTable, mut subrings: Vec<ElementSet>) -> Result<Self> {
        subrings.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subrings.dedup();
        let n = ring.order();
        if subrings.first().map(|s| s.len()) != Some(1)
            || subrings.last().map(|s| s.len()) != Some(n)
        {
            return Err(RingError::Invalid(
                "lattice must contain the zero subring and the ring".into(),
            ));
        }
        let mut containment = Vec::new();
        for i in 0..subrings.len() {
            for j in i + 1..subrings.len() {
                if subrings[i].len() < subrings[j].len() && subrings[i].is_subset(&subrings[j]) {
                    containment.push((i, j));
                }
            }
        }
        let top = subrings.len() - 1;
        let mut has_proper_super = vec![false; subrings.len()];
        for &(i, j) in &containment {
            if j != top {
                has_proper_super[i] = true;
            }
        }
        let maximal = (0..subrings.len())
            .map(|i| i != top && !has_proper_super[i])
            .collect();
        Ok(Self {
            subrings,
            maximal,
            containment,
        })
    }

    pub fn subrings(&self) -> &[ElementSet] {
        &self.subrings
    }

    pub fn len(&self) -> usize {
        self.subrings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subrings.is_empty()
    }

    pub fn maximal_flags(&self) -> &[bool] {
        &self.maximal
    }

    /// Pairs `(i, j)` with subring `i` strictly contained in subring `j`.
    pub fn containment(&self) -> &[(usize, usize)] {
        &self.containment
    }

    pub fn maximal_subrings(&self) -> Vec<ElementSet> {
        self.subrings
            .iter()
            .zip(&self.maximal)
            .filter(|(_, &m)| m)
            .map(|(s, _)| s.clone())
            .collect()
    }
}

/// Enumerates every subring of `ring`.
///
/// Starting from `{0}`, each listed subring `A` is joined with the cyclic
/// subring of every element outside it (one element per coset of `A`, since
/// the join only depends on the coset). Every subring is generated by finitely
/// many elements, so it is reached by adjoining its generators one at a time.
pub fn all_subrings(ring: &RingTable, cap: usize) -> Result<SubringLattice> {
    let n = ring.order();
    let zero = ElementSet::from_elems(n, [ring.zero()]);
    let mut found: Vec<ElementSet> = vec![zero.clone()];
    let mut index: HashMap<ElementSet, usize> = HashMap::from([(zero, 0)]);
    let mut next = 0;
    while next < found.len() {
        let base = found[next].clone();
        next += 1;
        for x in coset_representatives(ring, &base) {
            let joined = extend_closure(ring, &base, x);
            if !index.contains_key(&joined) {
                if found.len() >= cap {
                    return Err(RingError::CapExceeded(format!(
                        "more than {cap} subrings"
                    )));
                }
                index.insert(joined.clone(), found.len());
                found.push(joined);
            }
        }
    }
    SubringLattice::from_subrings(ring, found)
}

/// Maximal subrings in canonical order (size, then lexicographic).
pub fn maximal_subrings(ring: &RingTable, cap: usize) -> Result<Vec<ElementSet>> {
    let lattice = all_subrings(ring, cap)?;
    let maximals = lattice.maximal_subrings();
    debug_assert!(maximals.iter().all(|m| is_maximal(ring, m)));
    Ok(maximals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{gf, product, zmod};

    #[test]
    fn closure_in_z4() {
        let z4 = zmod(4).unwrap();
        let two = z4.elem(&[2]).unwrap();
        let c = subring_closure(&z4, &ElementSet::from_elems(4, [two]));
        assert_eq!(c, ElementSet::from_elems(4, [z4.zero(), two]));
    }

    #[test]
    fn closure_does_not_adjoin_one() {
        let r = product(&[gf(2).unwrap(), gf(2).unwrap()]).unwrap();
        let e = r.elem(&[1, 0]).unwrap();
        let c = subring_closure(&r, &ElementSet::from_elems(4, [e]));
        assert_eq!(c.len(), 2);
        assert!(!c.contains(r.one()));
    }

    #[test]
    fn subring_predicates() {
        let r = product(&[gf(2).unwrap(), gf(2).unwrap()]).unwrap();
        let e = |a, b| r.elem(&[a, b]).unwrap();
        assert!(is_subring(&r, &ElementSet::from_elems(4, [e(0, 0), e(1, 0)])));
        assert!(!is_subring(
            &r,
            &ElementSet::from_elems(4, [e(0, 0), e(1, 1), e(1, 0)])
        ));
        assert!(is_maximal(&r, &ElementSet::from_elems(4, [e(0, 0), e(1, 1)])));
        assert!(!is_maximal(&r, &r.full_set()));
    }

    #[test]
    fn small_lattices() {
        let r = product(&[gf(2).unwrap(), gf(2).unwrap()]).unwrap();
        assert_eq!(all_subrings(&r, 100).unwrap().len(), 5);
        assert_eq!(all_subrings(&gf(4).unwrap(), 100).unwrap().len(), 3);
        assert_eq!(all_subrings(&gf(8).unwrap(), 100).unwrap().len(), 3);
    }

    #[test]
    fn lattice_cap() {
        let r = product(&[gf(2).unwrap(), gf(2).unwrap()]).unwrap();
        assert!(matches!(
            all_subrings(&r, 3),
            Err(RingError::CapExceeded(_))
        ));
    }

    #[test]
    fn additive_span_sizes() {
        let r = zmod(8).unwrap();
        let two = r.elem(&[2]).unwrap();
        assert_eq!(additive_span(&r, [two]).len(), 4);
        assert_eq!(additive_span(&r, []).len(), 1);
    }
}
