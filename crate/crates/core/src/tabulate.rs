//! Turning an explicitly enumerated finite ring (quotients, corner rings
//! `eRe`) into a [`RingTable`] by finding a basis of its additive group.

use crate::arith::prime_power_parts;
use crate::error::{Result, RingError};
use crate::ring::{Elem, RingTable};

/// A finite ring given by element ids and closures for its operations.
pub(crate) struct Abstract<'a> {
    /// Ids of all elements; every id is `< universe`.
    pub ids: &'a [usize],
    pub universe: usize,
    pub zero: usize,
    pub one: usize,
    pub add: &'a dyn Fn(usize, usize) -> usize,
    pub mul: &'a dyn Fn(usize, usize) -> usize,
}

pub(crate) struct Tabulated {
    pub ring: RingTable,
    /// `embed[id]` is the element of `ring` corresponding to abstract `id`.
    pub embed: Vec<Option<Elem>>,
}

impl Abstract<'_> {
    fn order_of(&self, x: usize) -> u64 {
        let mut m = 1;
        let mut acc = x;
        while acc != self.zero {
            acc = (self.add)(acc, x);
            m += 1;
        }
        m
    }

    /// Least `m >= 1` with `m * x` in `h`.
    fn coset_order(&self, x: usize, h: &[bool]) -> u64 {
        let mut m = 1;
        let mut acc = x;
        while !h[acc] {
            acc = (self.add)(acc, x);
            m += 1;
        }
        m
    }

    /// Additive basis `(generator, order)` with prime-power orders, primes
    /// ascending, orders non-increasing within a prime. Greedy: a cyclic
    /// subgroup of maximal order in a finite abelian p-group is a direct
    /// summand, and an element whose order equals its coset order modulo the
    /// span so far extends the basis.
    fn basis(&self) -> Result<Vec<(usize, u64)>> {
        let n = self.ids.len() as u64;
        let orders: Vec<(usize, u64)> = self.ids.iter().map(|&x| (x, self.order_of(x))).collect();
        let mut basis = Vec::new();
        for part in prime_power_parts(n) {
            let p = crate::arith::prime_power(part).unwrap().0;
            let sylow: Vec<(usize, u64)> = orders
                .iter()
                .copied()
                .filter(|&(_, o)| crate::arith::exact_log(p, o).is_some())
                .collect();
            let mut h = vec![false; self.universe];
            h[self.zero] = true;
            let mut members = vec![self.zero];
            while (members.len() as u64) < part {
                let coset: Vec<u64> = sylow.iter().map(|&(x, _)| self.coset_order(x, &h)).collect();
                let best = *coset.iter().max().unwrap();
                let (gen, _) = sylow
                    .iter()
                    .zip(&coset)
                    .find(|(&(_, o), &c)| c == best && o == best)
                    .map(|(&g, _)| g)
                    .ok_or_else(|| RingError::Invalid("additive basis extraction failed".into()))?;
                let mut grown = Vec::with_capacity(members.len() * best as usize);
                for &m in &members {
                    let mut acc = m;
                    for _ in 0..best {
                        grown.push(acc);
                        acc = (self.add)(acc, gen);
                    }
                }
                for &g in &grown {
                    h[g] = true;
                }
                members = grown;
                basis.push((gen, best));
            }
        }
        Ok(basis)
    }

    pub fn tabulate(&self) -> Result<Tabulated> {
        let basis = self.basis()?;
        let shape: Vec<u64> = basis.iter().map(|&(_, d)| d).collect();
        let k = shape.len();
        // Enumerate coordinate vectors in mixed-radix order and record the
        // abstract id each one names.
        let mut coords_of: Vec<Option<Vec<u64>>> = vec![None; self.universe];
        let mut coords = vec![0u64; k];
        let total: u64 = shape.iter().product();
        for _ in 0..total {
            let mut id = self.zero;
            for (i, &c) in coords.iter().enumerate() {
                for _ in 0..c {
                    id = (self.add)(id, basis[i].0);
                }
            }
            if coords_of[id].replace(coords.clone()).is_some() {
                return Err(RingError::Invalid("additive basis is not independent".into()));
            }
            for i in (0..k).rev() {
                coords[i] += 1;
                if coords[i] < shape[i] {
                    break;
                }
                coords[i] = 0;
            }
        }
        let lookup = |id: usize| {
            coords_of[id]
                .clone()
                .ok_or_else(|| RingError::Invalid(format!("element {id} outside additive span")))
        };
        let mut consts = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::with_capacity(k);
            for j in 0..k {
                row.push(lookup((self.mul)(basis[i].0, basis[j].0))?);
            }
            consts.push(row);
        }
        let unit = lookup(self.one)?;
        let ring = RingTable::new(shape, consts, unit)?;
        let mut embed = vec![None; self.universe];
        for &id in self.ids {
            embed[id] = Some(ring.elem(&lookup(id)?)?);
        }
        Ok(Tabulated { ring, embed })
    }
}
