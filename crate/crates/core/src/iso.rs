//! Unital ring isomorphism testing.
//!
//! Cheap invariants are compared first. The search then maps a small
//! generating set of the first ring into elements of the second with the same
//! element fingerprint, extending each partial assignment to the subring it
//! generates and rejecting it on the first inconsistency.

use std::collections::HashMap;

use crate::elemset::ElementSet;
use crate::error::{Result, RingError};
use crate::ideal::jacobson_radical;
use crate::ring::{Elem, RingTable};
use crate::subring::{coset_representatives, extend_closure, subring_closure};

pub const DEFAULT_ISO_BUDGET: u64 = 1_000_000;

/// Isomorphism-invariant data attached to an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Fingerprint {
    additive_order: u64,
    nilpotency: u32,
    unit: bool,
    idempotent: bool,
    central: bool,
    in_radical: bool,
    square_order: u64,
    cube_order: u64,
}

fn fingerprints(ring: &RingTable) -> Vec<Fingerprint> {
    let rad = jacobson_radical(ring).radical;
    let gens: Vec<Elem> = (0..ring.rank()).map(|i| ring.generator(i)).collect();
    ring.elements()
        .map(|x| {
            let sq = ring.mul(x, x);
            Fingerprint {
                additive_order: ring.additive_order(x),
                nilpotency: ring.nilpotency_index(x).unwrap_or(0),
                unit: ring.is_unit(x),
                idempotent: sq == x,
                central: gens.iter().all(|&g| ring.mul(g, x) == ring.mul(x, g)),
                in_radical: rad.contains(x),
                square_order: ring.additive_order(sq),
                cube_order: ring.additive_order(ring.mul(sq, x)),
            }
        })
        .collect()
}

fn histogram(fps: &[Fingerprint]) -> HashMap<Fingerprint, usize> {
    let mut h = HashMap::new();
    for &f in fps {
        *h.entry(f).or_insert(0) += 1;
    }
    h
}

/// A short list of elements that, together with `1`, generate the ring.
/// Greedy: each step adds the element whose join grows the subring most.
pub fn generating_set(ring: &RingTable) -> Vec<Elem> {
    let mut current = subring_closure(ring, &ElementSet::from_elems(ring.order(), [ring.one()]));
    let mut gens = Vec::new();
    while !current.is_full() {
        let (x, next) = coset_representatives(ring, &current)
            .into_iter()
            .map(|x| (x, extend_closure(ring, &current, x)))
            .max_by(|(xa, a), (xb, b)| a.len().cmp(&b.len()).then(xb.cmp(xa)))
            .expect("proper subring has an outside element");
        gens.push(x);
        current = next;
    }
    gens
}

pub fn is_isomorphic(a: &RingTable, b: &RingTable) -> Result<bool> {
    Ok(find_isomorphism(a, b, DEFAULT_ISO_BUDGET)?.is_some())
}

#[derive(Clone)]
struct PartialMap {
    image: Vec<Option<Elem>>,
    used: ElementSet,
    members: Vec<Elem>,
}

impl PartialMap {
    fn new(a: &RingTable, b: &RingTable) -> Self {
        let mut m = PartialMap {
            image: vec![None; a.order()],
            used: b.empty_set(),
            members: Vec::new(),
        };
        m.image[0] = Some(b.zero());
        m.used.insert(b.zero());
        m.members.push(a.zero());
        m
    }

    /// Sends `x` to `y` and closes up under `+` and `*`. Returns false on a
    /// conflict with an existing assignment or a clash of images.
    fn extend(&mut self, a: &RingTable, b: &RingTable, x: Elem, y: Elem) -> bool {
        if !self.assign(x, y) {
            return false;
        }
        let mut queue = vec![x];
        while let Some(u) = queue.pop() {
            if self.members.contains(&u) {
                continue;
            }
            self.members.push(u);
            let fu = self.image[u.index()].unwrap();
            for idx in 0..self.members.len() {
                let v = self.members[idx];
                let fv = self.image[v.index()].unwrap();
                for (z, w) in [
                    (a.add(u, v), b.add(fu, fv)),
                    (a.mul(u, v), b.mul(fu, fv)),
                    (a.mul(v, u), b.mul(fv, fu)),
                ] {
                    match self.image[z.index()] {
                        Some(existing) if existing != w => return false,
                        Some(_) => {}
                        None => {
                            if !self.assign(z, w) {
                                return false;
                            }
                            queue.push(z);
                        }
                    }
                }
            }
        }
        true
    }

    fn assign(&mut self, x: Elem, y: Elem) -> bool {
        match self.image[x.index()] {
            Some(existing) => existing == y,
            None => {
                if !self.used.insert(y) {
                    return false;
                }
                self.image[x.index()] = Some(y);
                true
            }
        }
    }
}

/// Searches for a unital isomorphism `a -> b`, returned as the image of each
/// element of `a`. `Err(Timeout)` when more than `budget` nodes are visited.
pub fn find_isomorphism(a: &RingTable, b: &RingTable, budget: u64) -> Result<Option<Vec<Elem>>> {
    if a.order() != b.order()
        || a.characteristic() != b.characteristic()
        || a.is_commutative() != b.is_commutative()
        || a.units().len() != b.units().len()
    {
        return Ok(None);
    }
    let mut sa = a.shape().to_vec();
    let mut sb = b.shape().to_vec();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let fa = fingerprints(a);
    let fb = fingerprints(b);
    let count = |fps: &[Fingerprint], pred: fn(&Fingerprint) -> bool| fps.iter().filter(|f| pred(f)).count();
    if count(&fa, |f| f.nilpotency > 0) != count(&fb, |f| f.nilpotency > 0)
        || count(&fa, |f| f.idempotent) != count(&fb, |f| f.idempotent)
        || histogram(&fa) != histogram(&fb)
    {
        return Ok(None);
    }

    let gens = generating_set(a);
    let mut start = PartialMap::new(a, b);
    if !start.extend(a, b, a.one(), b.one()) {
        return Ok(None);
    }
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|g| b.elements().filter(|y| fb[y.index()] == fa[g.index()]).collect())
        .collect();
    let mut nodes = 0u64;
    search(a, b, &gens, &candidates, 0, start, &mut nodes, budget)
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &RingTable,
    b: &RingTable,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    level: usize,
    state: PartialMap,
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Vec<Elem>>> {
    *nodes += 1;
    if *nodes > budget {
        return Err(RingError::Timeout(budget));
    }
    if level == gens.len() {
        if state.image.iter().all(Option::is_some) {
            return Ok(Some(state.image.into_iter().map(Option::unwrap).collect()));
        }
        return Ok(None);
    }
    let g = gens[level];
    if let Some(y) = state.image[g.index()] {
        // Already determined by earlier generators.
        let mut next = state;
        if !next.extend(a, b, g, y) {
            return Ok(None);
        }
        return search(a, b, gens, candidates, level + 1, next, nodes, budget);
    }
    for &y in &candidates[level] {
        if state.used.contains(y) {
            continue;
        }
        let mut next = state.clone();
        if next.extend(a, b, g, y) {
            if let Some(found) = search(a, b, gens, candidates, level + 1, next, nodes, budget)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    #[test]
    fn invariant_filters() {
        assert!(!is_isomorphic(&gf(4).unwrap(), &zmod(4).unwrap()).unwrap());
        let f2 = gf(2).unwrap();
        let f2f2 = product(&[f2.clone(), f2.clone()]).unwrap();
        assert!(!is_isomorphic(&f2f2, &gf(4).unwrap()).unwrap());
        assert!(!is_isomorphic(&f2f2, &trunc_poly(2, 2).unwrap()).unwrap());
    }

    #[test]
    fn reordered_products_are_isomorphic() {
        let a = product(&[gf(2).unwrap(), gf(4).unwrap()]).unwrap();
        let b = product(&[gf(4).unwrap(), gf(2).unwrap()]).unwrap();
        let map = find_isomorphism(&a, &b, DEFAULT_ISO_BUDGET).unwrap().unwrap();
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(map[a.mul(x, y).index()], b.mul(map[x.index()], map[y.index()]));
            }
        }
    }

    #[test]
    fn opposite_of_upper_triangular_is_isomorphic() {
        // T_2(F) is isomorphic to its opposite via the transpose-reversal.
        let t = upper_tri(2, &gf(3).unwrap()).unwrap();
        assert!(is_isomorphic(&t, &t.opposite()).unwrap());
    }

    #[test]
    fn budget_is_reported_as_timeout() {
        let t = upper_tri(2, &gf(3).unwrap()).unwrap();
        assert_eq!(find_isomorphism(&t, &t, 1), Err(RingError::Timeout(1)));
    }

    #[test]
    fn generating_sets_generate() {
        let r = matrix_ring(2, &gf(2).unwrap()).unwrap();
        let mut gens = generating_set(&r);
        gens.push(r.one());
        assert!(subring_closure(&r, &ElementSet::from_elems(16, gens)).is_full());
    }
}
