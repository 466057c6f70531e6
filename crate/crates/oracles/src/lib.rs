//! Slow, direct reference computations over finite rings. Nothing here calls
//! the closure, lattice, radical or cover engines of `ringcover`; only ring
//! arithmetic and `ElementSet` are shared.

use ringcover::{Elem, ElementSet, RingTable};

/// Every subring, found by testing each subset that contains `0`.
/// Sorted by size, then lexicographically. Practical for orders up to 16.
pub fn subrings_by_subsets(ring: &RingTable) -> Vec<ElementSet> {
    let n = ring.order();
    assert!(n <= 20, "subset scan is exponential in the order");
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let members: Vec<usize> = std::iter::once(0)
            .chain((1..n).filter(|&i| mask >> (i - 1) & 1 == 1))
            .collect();
        let set = ElementSet::from_indices(n, members.iter().copied());
        let closed = members.iter().all(|&a| {
            members.iter().all(|&b| {
                let (x, y) = (Elem::from_index(a), Elem::from_index(b));
                set.contains(ring.sub(x, y)) && set.contains(ring.mul(x, y))
            })
        });
        if closed {
            out.push(set);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Maximal members of a list of proper subrings.
pub fn maximal_among(subrings: &[ElementSet]) -> Vec<ElementSet> {
    let proper: Vec<&ElementSet> = subrings.iter().filter(|s| !s.is_full()).collect();
    proper
        .iter()
        .filter(|s| !proper.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
        .map(|s| (*s).clone())
        .collect()
}

/// Smallest number of proper subrings from `subrings` whose union is the
/// ring, trying every combination of each size in turn.
pub fn min_cover_by_combinations(ring: &RingTable, subrings: &[ElementSet], max: usize) -> Option<usize> {
    let proper: Vec<&ElementSet> = subrings.iter().filter(|s| !s.is_full()).collect();
    (1..=max.min(proper.len())).find(|&k| {
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            let union = pick
                .iter()
                .fold(ElementSet::empty(ring.order()), |acc, &i| acc.union(proper[i]));
            if union.is_full() {
                return true;
            }
            // next k-combination of 0..proper.len()
            let m = proper.len();
            let mut i = k;
            while i > 0 && pick[i - 1] == m - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return false;
            }
            pick[i - 1] += 1;
            for j in i..k {
                pick[j] = pick[j - 1] + 1;
            }
        }
    })
}

pub fn is_nilpotent(ring: &RingTable, x: Elem) -> bool {
    let mut p = x;
    for _ in 0..ring.order() {
        if p == ring.zero() {
            return true;
        }
        p = ring.mul(p, x);
    }
    p == ring.zero()
}

/// The two-sided ideal generated by `x`: the additive span of all `a x b`.
pub fn principal_ideal(ring: &RingTable, x: Elem) -> ElementSet {
    let n = ring.order();
    let mut set = ElementSet::from_elems(n, [ring.zero()]);
    let mut frontier: Vec<Elem> = Vec::new();
    for a in ring.elements() {
        for b in ring.elements() {
            let y = ring.mul(ring.mul(a, x), b);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    while let Some(y) = frontier.pop() {
        for z in set.to_vec() {
            let s = ring.add(y, z);
            if set.insert(s) {
                frontier.push(s);
            }
        }
    }
    set
}

/// The largest nil two-sided ideal: all `x` whose principal ideal is nil.
pub fn largest_nil_ideal(ring: &RingTable) -> ElementSet {
    ElementSet::from_elems(
        ring.order(),
        ring.elements()
            .filter(|&x| principal_ideal(ring, x).iter().all(|y| is_nilpotent(ring, y))),
    )
}

/// Checks `(xy)z = x(yz)` on every triple of elements.
pub fn associative_on_all_triples(ring: &RingTable) -> bool {
    ring.elements().all(|x| {
        ring.elements().all(|y| {
            let xy = ring.mul(x, y);
            ring.elements()
                .all(|z| ring.mul(xy, z) == ring.mul(x, ring.mul(y, z)))
        })
    })
}

/// Checks `1x = x1 = x` and both distributive laws on every element or pair.
pub fn unital_and_distributive(ring: &RingTable) -> bool {
    let one = ring.one();
    ring.elements().all(|x| {
        ring.mul(one, x) == x
            && ring.mul(x, one) == x
            && ring.elements().all(|y| {
                ring.elements().all(|z| {
                    ring.mul(x, ring.add(y, z)) == ring.add(ring.mul(x, y), ring.mul(x, z))
                        && ring.mul(ring.add(y, z), x) == ring.add(ring.mul(y, x), ring.mul(z, x))
                })
            })
    })
}
