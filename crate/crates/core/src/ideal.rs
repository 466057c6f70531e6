//! Two-sided ideals, quotients, the Jacobson radical, local data, central
//! idempotents and transporter sets.

use crate::arith::exact_log;
use crate::elemset::ElementSet;
use crate::error::{Result, RingError};
use crate::ring::{Elem, RingTable};
use crate::subring::additive_span;
use crate::tabulate::Abstract;

/// Smallest two-sided ideal containing `gens`.
pub fn ideal_closure(ring: &RingTable, gens: &ElementSet) -> ElementSet {
    let gens_r: Vec<Elem> = (0..ring.rank()).map(|i| ring.generator(i)).collect();
    let mut set = ElementSet::from_elems(ring.order(), [ring.zero()]);
    let mut members = vec![ring.zero()];
    let mut queue: Vec<Elem> = gens.iter().collect();
    while let Some(x) = queue.pop() {
        if !set.insert(x) {
            continue;
        }
        members.push(x);
        // Multiplying by basis generators suffices: r x is a sum of g_i x.
        for &g in &gens_r {
            for z in [ring.mul(g, x), ring.mul(x, g)] {
                if !set.contains(z) {
                    queue.push(z);
                }
            }
        }
        for &y in &members {
            let z = ring.add(x, y);
            if !set.contains(z) {
                queue.push(z);
            }
        }
    }
    set
}

pub fn is_ideal(ring: &RingTable, s: &ElementSet) -> bool {
    if s.domain() != ring.order() || !s.contains(ring.zero()) {
        return false;
    }
    let members = s.to_vec();
    let additive = members
        .iter()
        .all(|&x| members.iter().all(|&y| s.contains(ring.add(x, y))));
    additive
        && members.iter().all(|&x| {
            (0..ring.rank()).all(|i| {
                let g = ring.generator(i);
                s.contains(ring.mul(g, x)) && s.contains(ring.mul(x, g))
            })
        })
}

/// Minimal ideals among the nonzero proper two-sided ideals, in canonical
/// order. Empty for simple rings.
pub fn minimal_ideals(ring: &RingTable) -> Vec<ElementSet> {
    let mut principal: Vec<ElementSet> = Vec::new();
    for x in ring.elements().skip(1) {
        let id = ideal_closure(ring, &ElementSet::from_elems(ring.order(), [x]));
        if !id.is_full() && !principal.contains(&id) {
            principal.push(id);
        }
    }
    let mut minimal: Vec<ElementSet> = principal
        .iter()
        .filter(|a| !principal.iter().any(|b| b.len() < a.len() && b.is_subset(a)))
        .cloned()
        .collect();
    minimal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    minimal
}

#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub quotient: RingTable,
    /// `projection[x]` is the image of element `x`.
    pub projection: Vec<Elem>,
    /// Least-index representative of each coset, indexed by quotient element.
    pub section: Vec<Elem>,
}

impl QuotientResult {
    pub fn project(&self, x: Elem) -> Elem {
        self.projection[x.index()]
    }

    /// Preimage of a set of quotient elements.
    pub fn preimage(&self, s: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.projection.len(),
            (0..self.projection.len()).filter(|&x| s.contains(self.projection[x])),
        )
    }
}

/// `R / I` for a two-sided ideal `I`.
pub fn quotient_ring(ring: &RingTable, ideal: &ElementSet) -> Result<QuotientResult> {
    if !is_ideal(ring, ideal) {
        return Err(RingError::NotAnIdeal);
    }
    let n = ring.order();
    // coset id = least member of the coset
    let mut rep = vec![usize::MAX; n];
    let members = ideal.to_vec();
    for x in ring.elements() {
        if rep[x.index()] != usize::MAX {
            continue;
        }
        for &m in &members {
            rep[ring.add(x, m).index()] = x.index();
        }
    }
    let mut ids: Vec<usize> = rep.clone();
    ids.sort_unstable();
    ids.dedup();
    let rep_ref = &rep;
    let add = move |a: usize, b: usize| rep_ref[ring.add(Elem::from_index(a), Elem::from_index(b)).index()];
    let mul = move |a: usize, b: usize| rep_ref[ring.mul(Elem::from_index(a), Elem::from_index(b)).index()];
    let tab = Abstract {
        ids: &ids,
        universe: n,
        zero: 0,
        one: rep[ring.one().index()],
        add: &add,
        mul: &mul,
    }
    .tabulate()?;
    let projection: Vec<Elem> = (0..n).map(|x| tab.embed[rep[x]].unwrap()).collect();
    let mut section = vec![Elem::ZERO; tab.ring.order()];
    for &id in &ids {
        section[tab.embed[id].unwrap().index()] = Elem::from_index(id);
    }
    Ok(QuotientResult {
        quotient: tab.ring,
        projection,
        section,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalResult {
    pub radical: ElementSet,
    /// Least `m >= 1` with `J^m = 0`.
    pub nilpotency_index: u32,
}

/// `J(R) = { x : 1 - r x is a unit for every r }`.
pub fn jacobson_radical(ring: &RingTable) -> RadicalResult {
    let units = ring.units();
    let one = ring.one();
    let radical = ElementSet::from_elems(
        ring.order(),
        ring.elements()
            .filter(|&x| ring.elements().all(|r| units.contains(ring.sub(one, ring.mul(r, x))))),
    );
    let mut m = 1;
    let mut power = radical.clone();
    while power.len() > 1 {
        power = product_span(ring, &power, &radical);
        m += 1;
        assert!(m as usize <= ring.order() + 1, "radical is not nilpotent");
    }
    RadicalResult {
        radical,
        nilpotency_index: m,
    }
}

/// Additive span of all products `ab` with `a` in `left`, `b` in `right`.
pub fn product_span(ring: &RingTable, left: &ElementSet, right: &ElementSet) -> ElementSet {
    let mut prods = ring.empty_set();
    for a in left {
        for b in right {
            prods.insert(ring.mul(a, b));
        }
    }
    additive_span(ring, prods.iter())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalData {
    pub is_local: bool,
    /// `|R / J|`.
    pub residue_order: u64,
    pub resfield_prime: bool,
    /// `dim J/J^2` over `F_p`, when the residue field has prime order `p`.
    pub dim_j_mod_j2: Option<u32>,
    /// Whether `p * 1` lies in `J^2` (`p` the residue characteristic).
    pub p_in_j2: Option<bool>,
}

pub fn local_data(ring: &RingTable) -> LocalData {
    let units = ring.units();
    let nonunits: Vec<Elem> = ring.elements().filter(|&x| !units.contains(x)).collect();
    let is_local = ring.order() > 1
        && nonunits
            .iter()
            .all(|&a| nonunits.iter().all(|&b| !units.contains(ring.add(a, b))));
    let rad = jacobson_radical(ring).radical;
    let residue_order = (ring.order() / rad.len()) as u64;
    let resfield_prime = is_local && crate::arith::is_prime(residue_order);
    let (dim, p_in_j2) = if resfield_prime {
        let p = residue_order;
        let j2 = product_span(ring, &rad, &rad);
        let dim = exact_log(p, (rad.len() / j2.len()) as u64);
        (dim, Some(j2.contains(ring.scalar(p, ring.one()))))
    } else {
        (None, None)
    };
    LocalData {
        is_local,
        residue_order,
        resfield_prime,
        dim_j_mod_j2: dim,
        p_in_j2,
    }
}

/// All central idempotents, ascending by index.
pub fn central_idempotents(ring: &RingTable) -> Vec<Elem> {
    let gens: Vec<Elem> = (0..ring.rank()).map(|i| ring.generator(i)).collect();
    ring.elements()
        .filter(|&e| ring.is_idempotent(e))
        .filter(|&e| gens.iter().all(|&g| ring.mul(e, g) == ring.mul(g, e)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub idempotents: Vec<Elem>,
    pub factors: Vec<RingTable>,
}

/// Splits `R` along its primitive central idempotents into the rings `eRe`.
pub fn decompose(ring: &RingTable) -> Result<Decomposition> {
    let central = central_idempotents(ring);
    let nonzero: Vec<Elem> = central.iter().copied().filter(|&e| e != ring.zero()).collect();
    let primitive: Vec<Elem> = nonzero
        .iter()
        .copied()
        .filter(|&e| {
            !nonzero
                .iter()
                .any(|&f| f != e && ring.mul(e, f) == f)
        })
        .collect();
    let factors = primitive
        .iter()
        .map(|&e| corner_ring(ring, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition {
        idempotents: primitive,
        factors,
    })
}

/// The ring `eRe` with unit `e`, for an idempotent `e`.
pub fn corner_ring(ring: &RingTable, e: Elem) -> Result<RingTable> {
    let mut set = ring.empty_set();
    for r in ring.elements() {
        set.insert(ring.mul(ring.mul(e, r), e));
    }
    let ids: Vec<usize> = set.iter().map(|x| x.index()).collect();
    let add = |a: usize, b: usize| ring.add(Elem::from_index(a), Elem::from_index(b)).index();
    let mul = |a: usize, b: usize| ring.mul(Elem::from_index(a), Elem::from_index(b)).index();
    Ok(Abstract {
        ids: &ids,
        universe: ring.order(),
        zero: 0,
        one: e.index(),
        add: &add,
        mul: &mul,
    }
    .tabulate()?
    .ring)
}

/// Which side of `r` the subring element multiplies in [`transporter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `{ s in S : s r in S }`
    Left,
    /// `{ s in S : r s in S }`
    Right,
}

pub fn transporter(ring: &RingTable, s: &ElementSet, r: Elem, side: Side) -> ElementSet {
    ElementSet::from_elems(
        ring.order(),
        s.iter().filter(|&x| {
            let prod = match side {
                Side::Left => ring.mul(x, r),
                Side::Right => ring.mul(r, x),
            };
            s.contains(prod)
        }),
    )
}
