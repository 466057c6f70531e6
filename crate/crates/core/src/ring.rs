//! Finite unital rings given by an additive shape and structure constants.
//!
//! The additive group is `C_{d_1} x ... x C_{d_k}` with each `d_i` a prime
//! power. Elements are coordinate vectors `(c_1, .., c_k)` with `0 <= c_i < d_i`,
//! identified with their mixed-radix index (`d_1` most significant). The
//! product of two elements is the bilinear extension of the basis products.
//! Full addition and multiplication tables are built once at construction.

use std::fmt;
use std::sync::OnceLock;

use crate::arith::{gcd, lcm, prime_power};
use crate::elemset::ElementSet;
use crate::error::{Result, RingError};

/// Largest ring order accepted by [`RingTable::new`].
pub const MAX_ORDER: usize = 1024;

/// A ring element, by canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        Elem(i as u32)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub struct RingTable {
    shape: Vec<u64>,
    // consts[i * k + j] = coordinates of g_i * g_j
    consts: Vec<Vec<u64>>,
    unit: Vec<u64>,
    order: usize,
    characteristic: u64,
    strides: Vec<usize>,
    add: Vec<u32>,
    neg: Vec<u32>,
    mul: Vec<u32>,
    one: Elem,
    units: OnceLock<ElementSet>,
}

impl RingTable {
    /// Validates the data and builds the ring. `consts[i][j]` holds the
    /// coordinates of `g_i * g_j`.
    pub fn new(shape: Vec<u64>, consts: Vec<Vec<Vec<u64>>>, unit: Vec<u64>) -> Result<Self> {
        let k = shape.len();
        for &d in &shape {
            if prime_power(d).is_none() {
                return Err(RingError::BadShape(d));
            }
        }
        let mut order: usize = 1;
        for &d in &shape {
            order = order
                .checked_mul(d as usize)
                .filter(|&n| n <= MAX_ORDER)
                .ok_or_else(|| {
                    RingError::CapExceeded(format!("ring order exceeds {MAX_ORDER}"))
                })?;
        }
        if consts.len() != k {
            return Err(RingError::MalformedCoords(format!(
                "expected {k} rows of structure constants, got {}",
                consts.len()
            )));
        }
        let mut flat = Vec::with_capacity(k * k);
        for (i, row) in consts.into_iter().enumerate() {
            if row.len() != k {
                return Err(RingError::MalformedCoords(format!(
                    "row {i} has {} entries, expected {k}",
                    row.len()
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                check_coords(&shape, &v)
                    .map_err(|m| RingError::MalformedCoords(format!("entry ({i},{j}): {m}")))?;
                flat.push(v);
            }
        }
        check_coords(&shape, &unit)
            .map_err(|m| RingError::MalformedCoords(format!("unit: {m}")))?;

        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * shape[i + 1] as usize;
        }

        let mut ring = RingTable {
            shape,
            consts: flat,
            unit,
            order,
            characteristic: 1,
            strides,
            add: Vec::new(),
            neg: Vec::new(),
            mul: Vec::new(),
            one: Elem::ZERO,
            units: OnceLock::new(),
        };
        ring.validate()?;
        ring.characteristic = ring.additive_order_coords(&ring.unit);
        ring.one = ring.index_of(&ring.unit);
        ring.build_tables();
        Ok(ring)
    }

    fn validate(&self) -> Result<()> {
        let k = self.shape.len();
        // Products must be killed by the additive orders of both factors.
        for i in 0..k {
            for j in 0..k {
                let c = &self.consts[i * k + j];
                for d in [self.shape[i], self.shape[j]] {
                    if self.scale_coords(c, d).iter().any(|&x| x != 0) {
                        return Err(RingError::MalformedCoords(format!(
                            "g{i}*g{j} is not killed by {d}"
                        )));
                    }
                }
            }
        }
        for i in 0..k {
            let g = self.basis_coords(i);
            if self.mul_coords(&self.unit, &g) != g || self.mul_coords(&g, &self.unit) != g {
                return Err(RingError::BadUnit(i));
            }
        }
        for i in 0..k {
            for j in 0..k {
                let ij = &self.consts[i * k + j];
                for l in 0..k {
                    let gl = self.basis_coords(l);
                    let left = self.mul_coords(ij, &gl);
                    let right = self.mul_coords(&self.basis_coords(i), &self.consts[j * k + l]);
                    if left != right {
                        return Err(RingError::NonAssociative(i, j, l));
                    }
                }
            }
        }
        Ok(())
    }

    fn build_tables(&mut self) {
        let n = self.order;
        let k = self.shape.len();
        let coords: Vec<Vec<u64>> = (0..n).map(|x| self.coords_of_index(x)).collect();
        let mut add = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let s: Vec<u64> = coords[x]
                    .iter()
                    .zip(&coords[y])
                    .zip(&self.shape)
                    .map(|((a, b), d)| (a + b) % d)
                    .collect();
                add[x * n + y] = self.index_of(&s).0;
            }
        }
        let neg = (0..n)
            .map(|x| {
                let v: Vec<u64> = coords[x]
                    .iter()
                    .zip(&self.shape)
                    .map(|(a, d)| (d - a) % d)
                    .collect();
                self.index_of(&v).0
            })
            .collect();
        // left[i][y] = g_i * y
        let left: Vec<Vec<u32>> = (0..k)
            .map(|i| {
                let g = self.basis_coords(i);
                (0..n)
                    .map(|y| self.index_of(&self.mul_coords(&g, &coords[y])).0)
                    .collect()
            })
            .collect();
        let mut mul = vec![0u32; n * n];
        for x in 1..n {
            // Peel off one copy of the least significant nonzero generator.
            let i = (0..k).rev().find(|&i| coords[x][i] != 0).unwrap();
            let prev = x - self.strides[i];
            for y in 0..n {
                let a = mul[prev * n + y] as usize;
                let b = left[i][y] as usize;
                mul[x * n + y] = add[a * n + b];
            }
        }
        self.add = add;
        self.neg = neg;
        self.mul = mul;
    }

    fn basis_coords(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.shape.len()];
        v[i] = 1 % self.shape[i];
        v
    }

    fn add_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.shape)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    /// `n * v` by double-and-add.
    fn scale_coords(&self, v: &[u64], mut n: u64) -> Vec<u64> {
        let mut acc = vec![0; v.len()];
        let mut base = v.to_vec();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_coords(&acc, &base);
            }
            base = self.add_coords(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Bilinear product on coordinate vectors.
    fn mul_coords(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let k = self.shape.len();
        let mut acc = vec![0; k];
        for (i, &xi) in x.iter().enumerate().filter(|(_, &v)| v != 0) {
            for (j, &yj) in y.iter().enumerate().filter(|(_, &v)| v != 0) {
                let term = self.scale_coords(&self.consts[i * k + j], xi * yj);
                acc = self.add_coords(&acc, &term);
            }
        }
        acc
    }

    fn additive_order_coords(&self, v: &[u64]) -> u64 {
        v.iter()
            .zip(&self.shape)
            .fold(1, |acc, (&c, &d)| lcm(acc, d / gcd(c, d)))
    }

    fn coords_of_index(&self, mut x: usize) -> Vec<u64> {
        let mut v = vec![0; self.shape.len()];
        for i in (0..self.shape.len()).rev() {
            let d = self.shape[i] as usize;
            v[i] = (x % d) as u64;
            x /= d;
        }
        v
    }

    fn index_of(&self, v: &[u64]) -> Elem {
        let i = v
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum::<usize>();
        Elem(i as u32)
    }

    pub fn shape(&self) -> &[u64] {
        &self.shape
    }

    /// Number of additive basis generators.
    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    /// Coordinates of `g_i * g_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[u64] {
        &self.consts[i * self.shape.len() + j]
    }

    /// Structure constants as a `k x k` table of coordinate vectors.
    pub fn struct_consts(&self) -> Vec<Vec<Vec<u64>>> {
        let k = self.rank();
        (0..k)
            .map(|i| (0..k).map(|j| self.basis_product(i, j).to_vec()).collect())
            .collect()
    }

    pub fn unit_coords(&self) -> &[u64] {
        &self.unit
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order as u32).map(Elem)
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn generator(&self, i: usize) -> Elem {
        Elem(self.strides[i] as u32)
    }

    pub fn coords(&self, e: Elem) -> Vec<u64> {
        self.coords_of_index(e.index())
    }

    /// Element with the given coordinates; entries are reduced modulo the shape.
    pub fn elem(&self, coords: &[u64]) -> Result<Elem> {
        if coords.len() != self.rank() {
            return Err(RingError::MalformedCoords(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        let reduced: Vec<u64> = coords.iter().zip(&self.shape).map(|(c, d)| c % d).collect();
        Ok(self.index_of(&reduced))
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.add[x.index() * self.order + y.index()])
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        Elem(self.neg[x.index()])
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.mul[x.index() * self.order + y.index()])
    }

    /// `n * x`.
    pub fn scalar(&self, mut n: u64, x: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut base = x;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    /// `x^n`, with `x^0 = 1`.
    pub fn pow(&self, x: Elem, mut n: u64) -> Elem {
        let mut acc = self.one;
        let mut base = x;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn additive_order(&self, x: Elem) -> u64 {
        self.additive_order_coords(&self.coords(x))
    }

    /// Least `m >= 1` with `x^m = 0`, or `None` if `x` is not nilpotent.
    pub fn nilpotency_index(&self, x: Elem) -> Option<u32> {
        let mut p = x;
        for m in 1..=self.order as u32 {
            if p == Elem::ZERO {
                return Some(m);
            }
            p = self.mul(p, x);
        }
        None
    }

    pub fn is_idempotent(&self, x: Elem) -> bool {
        self.mul(x, x) == x
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.rank();
        (0..k).all(|i| (0..k).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.units().contains(x)
    }

    /// Two-sided inverse of `x`, if it exists.
    pub fn inverse(&self, x: Elem) -> Option<Elem> {
        self.elements()
            .find(|&v| self.mul(x, v) == self.one && self.mul(v, x) == self.one)
    }

    /// The unit group as an element set (computed once).
    pub fn units(&self) -> &ElementSet {
        self.units.get_or_init(|| {
            let n = self.order;
            let mut right_inv = ElementSet::empty(n);
            let mut left_inv = ElementSet::empty(n);
            for x in 0..n {
                for v in 0..n {
                    if self.mul[x * n + v] == self.one.0 {
                        right_inv.insert_index(x);
                        left_inv.insert_index(v);
                    }
                }
            }
            right_inv.intersection(&left_inv)
        })
    }

    /// The opposite ring: same additive group, `g_i * g_j := g_j g_i`.
    pub fn opposite(&self) -> RingTable {
        let k = self.rank();
        let consts = (0..k)
            .map(|i| (0..k).map(|j| self.basis_product(j, i).to_vec()).collect())
            .collect();
        RingTable::new(self.shape.clone(), consts, self.unit.clone())
            .expect("opposite of a valid ring is valid")
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.order)
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    /// Checks `(xy)z = x(yz)` for one triple.
    pub fn associates(&self, x: Elem, y: Elem, z: Elem) -> bool {
        self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z))
    }

    /// Deterministic byte encoding of shape, structure constants and unit:
    /// little-endian `u64` words `k, d_1..d_k, consts (row-major), unit`.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        let mut push = |v: u64| out.extend_from_slice(&v.to_le_bytes());
        push(self.rank() as u64);
        for &d in &self.shape {
            push(d);
        }
        for v in &self.consts {
            for &c in v {
                push(c);
            }
        }
        for &c in &self.unit {
            push(c);
        }
        out
    }
}

fn check_coords(shape: &[u64], v: &[u64]) -> std::result::Result<(), String> {
    if v.len() != shape.len() {
        return Err(format!("length {} != {}", v.len(), shape.len()));
    }
    for (i, (&c, &d)) in v.iter().zip(shape).enumerate() {
        if c >= d {
            return Err(format!("coordinate {i} = {c} out of range 0..{d}"));
        }
    }
    Ok(())
}

impl PartialEq for RingTable {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.consts == other.consts && self.unit == other.unit
    }
}

impl Eq for RingTable {}

impl Clone for RingTable {
    fn clone(&self) -> Self {
        RingTable {
            shape: self.shape.clone(),
            consts: self.consts.clone(),
            unit: self.unit.clone(),
            order: self.order,
            characteristic: self.characteristic,
            strides: self.strides.clone(),
            add: self.add.clone(),
            neg: self.neg.clone(),
            mul: self.mul.clone(),
            one: self.one,
            units: self.units.clone(),
        }
    }
}

impl fmt::Debug for RingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingTable")
            .field("shape", &self.shape)
            .field("consts", &self.struct_consts())
            .field("unit", &self.unit)
            .finish()
    }
}
