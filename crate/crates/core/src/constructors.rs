//! Constructors for the named rings: cyclic rings, small fields, products,
//! full and upper-triangular matrix rings, truncated polynomial rings and a
//! few explicit matrix models.

use crate::arith::{is_prime, prime_power, prime_power_parts};
use crate::error::{Result, RingError};
use crate::ring::RingTable;

/// A finite field `F_p[t]/(f)` with `f` monic irreducible of degree `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub e: u32,
    /// Coefficients of `f`, constant term first; length `e + 1`, leading 1.
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(RingError::BadOrder(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(RingError::Invalid(format!("modulus {modulus:?} is not monic over F_{p}")));
        }
        let spec = FieldSpec {
            p,
            e: (modulus.len() - 1) as u32,
            modulus,
        };
        if !spec.is_irreducible() {
            return Err(RingError::Reducible(p));
        }
        Ok(spec)
    }

    /// The fixed modulus used for `F_q`.
    pub fn standard(q: u64) -> Result<Self> {
        let (p, modulus) = match q {
            2 => (2, vec![0, 1]),
            3 => (3, vec![0, 1]),
            4 => (2, vec![1, 1, 1]),
            8 => (2, vec![1, 1, 0, 1]),
            9 => (3, vec![1, 0, 1]),
            16 => (2, vec![1, 1, 0, 0, 1]),
            27 => (3, vec![1, 2, 0, 1]),
            32 => (2, vec![1, 0, 1, 0, 0, 1]),
            _ => return Err(RingError::UnsupportedFieldOrder(q)),
        };
        FieldSpec::new(p, modulus)
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// Trial division by every monic polynomial of degree `1..=e/2`.
    pub fn is_irreducible(&self) -> bool {
        let e = self.e as usize;
        for deg in 1..=e / 2 {
            let count = self.p.pow(deg as u32);
            for code in 0..count {
                let mut divisor = Vec::with_capacity(deg + 1);
                let mut c = code;
                for _ in 0..deg {
                    divisor.push(c % self.p);
                    c /= self.p;
                }
                divisor.push(1);
                if poly_rem(&self.modulus, &divisor, self.p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Coefficients of `t^m` reduced modulo `f`, length `e`.
    fn power_of_t(&self, m: usize) -> Vec<u64> {
        let mut poly = vec![0; m + 1];
        poly[m] = 1;
        let mut rem = poly_rem(&poly, &self.modulus, self.p);
        rem.resize(self.e as usize, 0);
        rem
    }
}

/// Remainder of `a` modulo monic `m` over `F_p`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
    }
    r
}

fn zero_table(k: usize) -> Vec<Vec<Vec<u64>>> {
    vec![vec![vec![0; k]; k]; k]
}

fn unit_vec(k: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

/// `Z_n`, the ring of order `n` generated by `1`. Orders that are not prime
/// powers are built as the product of their prime-power parts.
pub fn zmod(n: u64) -> Result<RingTable> {
    if n < 2 {
        return Err(RingError::BadOrder(n));
    }
    if prime_power(n).is_some() {
        return RingTable::new(vec![n], vec![vec![vec![1]]], vec![1]);
    }
    let parts = prime_power_parts(n)
        .into_iter()
        .map(zmod)
        .collect::<Result<Vec<_>>>()?;
    product(&parts)
}

pub fn gf(q: u64) -> Result<RingTable> {
    field(&FieldSpec::standard(q)?)
}

/// The field `F_p[t]/(f)` with basis `1, t, .., t^{e-1}`.
pub fn field(spec: &FieldSpec) -> Result<RingTable> {
    let e = spec.e as usize;
    let consts = (0..e)
        .map(|i| (0..e).map(|j| spec.power_of_t(i + j)).collect())
        .collect();
    RingTable::new(vec![spec.p; e], consts, unit_vec(e, 0))
}

/// Direct product; the basis is the concatenation of the factors' bases.
pub fn product(rings: &[RingTable]) -> Result<RingTable> {
    let shape: Vec<u64> = rings.iter().flat_map(|r| r.shape().iter().copied()).collect();
    let k = shape.len();
    let mut consts = zero_table(k);
    let mut unit = Vec::with_capacity(k);
    let mut offset = 0;
    for r in rings {
        let m = r.rank();
        for i in 0..m {
            for j in 0..m {
                let v = &mut consts[offset + i][offset + j];
                v[offset..offset + m].copy_from_slice(r.basis_product(i, j));
            }
        }
        unit.extend_from_slice(r.unit_coords());
        offset += m;
    }
    RingTable::new(shape, consts, unit)
}

/// Matrix-unit construction over `positions`, ordered row-major; the basis is
/// `E_ab * g_i` for `(a, b)` in `positions` and `g_i` a basis element of `base`.
fn matrix_like(k: usize, base: &RingTable, positions: &[(usize, usize)]) -> Result<RingTable> {
    let r = base.rank();
    let dim = positions.len() * r;
    let pos_index = |a: usize, b: usize| positions.iter().position(|&p| p == (a, b));
    let shape: Vec<u64> = positions
        .iter()
        .flat_map(|_| base.shape().iter().copied())
        .collect();
    let mut consts = zero_table(dim);
    for (pi, &(a, b)) in positions.iter().enumerate() {
        for (pj, &(c, d)) in positions.iter().enumerate() {
            if b != c {
                continue;
            }
            let target = pos_index(a, d).expect("positions closed under multiplication");
            for i in 0..r {
                for j in 0..r {
                    let v = &mut consts[pi * r + i][pj * r + j];
                    v[target * r..target * r + r].copy_from_slice(base.basis_product(i, j));
                }
            }
        }
    }
    let mut unit = vec![0; dim];
    for a in 0..k {
        let t = pos_index(a, a).unwrap();
        unit[t * r..t * r + r].copy_from_slice(base.unit_coords());
    }
    RingTable::new(shape, consts, unit)
}

/// `M_k(R)`.
pub fn matrix_ring(k: usize, base: &RingTable) -> Result<RingTable> {
    if k == 0 {
        return Err(RingError::BadOrder(0));
    }
    let positions: Vec<_> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect();
    matrix_like(k, base, &positions)
}

/// `T_k(R)`, upper triangular `k x k` matrices.
pub fn upper_tri(k: usize, base: &RingTable) -> Result<RingTable> {
    if k == 0 {
        return Err(RingError::BadOrder(0));
    }
    let positions: Vec<_> = (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect();
    matrix_like(k, base, &positions)
}

/// `F_p[x]/(x^n)` with basis `1, x, .., x^{n-1}`.
pub fn trunc_poly(p: u64, n: usize) -> Result<RingTable> {
    if !is_prime(p) {
        return Err(RingError::BadOrder(p));
    }
    if n == 0 {
        return Err(RingError::BadOrder(0));
    }
    let consts = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i + j < n { unit_vec(n, i + j) } else { vec![0; n] })
                .collect()
        })
        .collect();
    RingTable::new(vec![p; n], consts, unit_vec(n, 0))
}

/// `F_p[x, y]/(x^2, xy, y^2)` with basis `1, x, y`.
pub fn nil2(p: u64) -> Result<RingTable> {
    if !is_prime(p) {
        return Err(RingError::BadOrder(p));
    }
    let consts = vec![
        vec![unit_vec(3, 0), unit_vec(3, 1), unit_vec(3, 2)],
        vec![unit_vec(3, 1), vec![0; 3], vec![0; 3]],
        vec![unit_vec(3, 2), vec![0; 3], vec![0; 3]],
    ];
    RingTable::new(vec![p; 3], consts, unit_vec(3, 0))
}

/// Builds a ring whose basis products are computed by a model
/// multiplication on coordinate vectors.
fn from_model(
    shape: Vec<u64>,
    unit: Vec<u64>,
    mul: impl Fn(&[u64], &[u64]) -> Vec<u64>,
) -> Result<RingTable> {
    let k = shape.len();
    let consts = (0..k)
        .map(|i| (0..k).map(|j| mul(&unit_vec(k, i), &unit_vec(k, j))).collect())
        .collect();
    RingTable::new(shape, consts, unit)
}

/// Pairs `(a, b)` over `F_q` with `(a, b)(c, d) = (ac, ad + b c^p)`: the
/// matrices `[[a, b], [0, a^p]]`. Basis: `(t^i, 0)` then `(0, t^i)`.
pub fn twisted_dual(q: u64) -> Result<RingTable> {
    if q != 4 && q != 9 {
        return Err(RingError::UnsupportedFieldOrder(q));
    }
    let f = gf(q)?;
    let p = f.characteristic();
    let e = f.rank();
    let mut unit = vec![0; 2 * e];
    unit[0] = 1;
    from_model(vec![p; 2 * e], unit, |x, y| {
        let el = |v: &[u64]| f.elem(v).unwrap();
        let (a, b) = (el(&x[..e]), el(&x[e..]));
        let (c, d) = (el(&y[..e]), el(&y[e..]));
        let first = f.mul(a, c);
        let second = f.add(f.mul(a, d), f.mul(b, f.pow(c, p)));
        let mut out = f.coords(first);
        out.extend(f.coords(second));
        out
    })
}

/// Triples `(a, b, c)` with `a` in `F_2` and `b, c` in `F_4`, multiplied as
/// the matrices `[[a, b], [0, c]]`. Coordinates: `a, b_0, b_1, c_0, c_1`.
pub fn mixed_tri() -> Result<RingTable> {
    let f = gf(4)?;
    from_model(vec![2; 5], vec![1, 0, 0, 1, 0], |x, y| {
        let el = |v: &[u64]| f.elem(v).unwrap();
        let (a, b, c) = (x[0], el(&x[1..3]), el(&x[3..5]));
        let (a2, b2, c2) = (y[0], el(&y[1..3]), el(&y[3..5]));
        let ab = f.scalar(a, b2);
        let mut out = vec![a * a2 % 2];
        out.extend(f.coords(f.add(ab, f.mul(b, c2))));
        out.extend(f.coords(f.mul(c, c2)));
        out
    })
}
