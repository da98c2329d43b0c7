//! Arithmetic in GF(p^s).
//!
//! Elements are stored as integers `0..q` whose base-p digits are the
//! coefficients of the canonical representative modulo the defining
//! polynomial, low digit = constant term. The integer order is the element
//! order used everywhere else (state enumeration, search order).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// An element of some [`Field`]. Carries only its integer label.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Index of the element in the field's element order.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

#[derive(Debug)]
struct FieldData {
    p: u32,
    s: u32,
    q: u32,
    /// Monic modulus, low coefficient first, length s+1. Empty for prime fields.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field GF(p^s). Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.s == other.0.s)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.s == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.s)
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomial helpers over GF(p) used only while building the tables.
fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn prime_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = prime_inv(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = (r[top] * inv_lead) % p;
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (c * mi) % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn prime_inv(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    // Every monic divisor candidate of degree 1..=deg/2.
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for t in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = t;
            for _ in 0..d {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            if prime_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `s`, comparing the coefficient
/// tuples (c0, c1, ..., c_{s-1}) lexicographically.
fn smallest_irreducible(p: u32, s: u32) -> Vec<u32> {
    let count = p.pow(s);
    for t in 0..count {
        // c0 is the most significant digit of t.
        let mut f = vec![0u32; s as usize + 1];
        let mut x = t;
        for i in (0..s as usize).rev() {
            f[i] = x % p;
            x /= p;
        }
        f[s as usize] = 1;
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds GF(p^s). The modulus for s > 1 is the lexicographically
    /// smallest monic irreducible (coefficients compared constant term first).
    pub fn new(p: u32, s: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let q = (p as u64).checked_pow(s).filter(|&q| q <= MAX_FIELD_ORDER as u64);
        let q = match q {
            Some(q) => q as u32,
            None => {
                return Err(Error::FieldTooLarge {
                    p,
                    s,
                    max: MAX_FIELD_ORDER,
                })
            }
        };
        let modulus = if s > 1 { smallest_irreducible(p, s) } else { Vec::new() };

        let digits_of = |mut x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(s as usize);
            for _ in 0..s {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let value_of = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let mulmod = |a: u32, b: u32| -> u32 {
            if s == 1 {
                return ((a as u64 * b as u64) % p as u64) as u32;
            }
            let da = digits_of(a);
            let db = digits_of(b);
            let mut prod = vec![0u32; 2 * s as usize - 1];
            for (i, &x) in da.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = prime_rem(&prod, &modulus, p);
            r.resize(s as usize, 0);
            value_of(&r)
        };

        let order = q - 1;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut found = false;
        for g in 1..q {
            let mut x = 1u32;
            let mut k = 0u32;
            loop {
                exp[k as usize] = x;
                x = mulmod(x, g);
                k += 1;
                if x == 1 || k > order {
                    break;
                }
            }
            if k == order && x == 1 {
                found = true;
                break;
            }
        }
        debug_assert!(found, "multiplicative group is cyclic");
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }
        Ok(Field(Arc::new(FieldData {
            p,
            s,
            q,
            modulus,
            exp,
            log,
        })))
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.s
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.s == 1
    }

    /// Defining polynomial, constant coefficient first. Empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.0.q {
            Ok(Elem(index))
        } else {
            Err(Error::Shape(format!("{} is not an element index of {}", index, self)))
        }
    }

    /// All elements in the fixed element order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.0.q).map(Elem)
    }

    /// The generator `a` of an extension field (the class of x).
    pub fn generator(&self) -> Elem {
        if self.0.s == 1 {
            Elem::ONE
        } else {
            Elem(self.0.p)
        }
    }

    /// Image of the prime-field integer `n mod p`.
    pub fn from_int(&self, n: u64) -> Elem {
        Elem((n % self.0.p as u64) as u32)
    }

    /// Base-p digits, constant coefficient first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let p = self.0.p;
        let mut x = a.0;
        (0..self.0.s)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        let p = self.0.p;
        Elem(digits.iter().rev().fold(0, |acc, &d| acc * p + d % p))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.0.s == 1 {
            return Elem((a.0 + b.0) % p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut r = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            r += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(r)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.s == 1 {
            return Elem((p - a.0) % p);
        }
        let mut x = a.0;
        let mut r = 0;
        let mut place = 1;
        while x > 0 {
            r += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Elem(r)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let d = &self.0;
        let order = d.q - 1;
        let k = (d.log[a.0 as usize] + d.log[b.0 as usize]) % order;
        Elem(d.exp[k as usize])
    }

    /// Multiplicative inverse, `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let d = &self.0;
        let order = d.q - 1;
        let k = (order - d.log[a.0 as usize]) % order;
        Some(Elem(d.exp[k as usize]))
    }

    /// `a / b`; panics when `b` is zero.
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        let inv = self.inv(b).expect("division by zero field element");
        self.mul(a, inv)
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let d = &self.0;
        let order = (d.q - 1) as u64;
        let k = (d.log[a.0 as usize] as u64 * (e % order)) % order;
        Elem(d.exp[k as usize])
    }

    /// x ↦ x^(p^i).
    pub fn frobenius(&self, a: Elem, i: u32) -> Elem {
        if i.is_multiple_of(self.0.s) {
            return a;
        }
        self.pow(a, (self.0.p as u64).pow(i % self.0.s))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        let order = self.0.q - 1;
        let l = self.0.log[a.0 as usize];
        Some(order / gcd_u32(order, l))
    }

    /// The automorphism group x ↦ x^(p^i), identity first.
    pub fn automorphisms(&self) -> Vec<Automorphism> {
        (0..self.0.s)
            .map(|i| Automorphism {
                field: self.clone(),
                exponent: i,
            })
            .collect()
    }

    pub fn identity_automorphism(&self) -> Automorphism {
        Automorphism {
            field: self.clone(),
            exponent: 0,
        }
    }

    /// Number of vectors in F^len, if it fits in `usize`.
    pub fn vector_count(&self, len: usize) -> Option<usize> {
        (self.0.q as usize).checked_pow(len as u32)
    }

    /// Lexicographic index of a vector (first coordinate most significant).
    pub fn vector_index(&self, v: &[Elem]) -> usize {
        let q = self.0.q as usize;
        v.iter().fold(0usize, |acc, e| acc * q + e.0 as usize)
    }

    /// Inverse of [`Field::vector_index`].
    pub fn vector_from_index(&self, mut index: usize, len: usize) -> Vec<Elem> {
        let q = self.0.q as usize;
        let mut v = vec![Elem::ZERO; len];
        for slot in v.iter_mut().rev() {
            *slot = Elem((index % q) as u32);
            index /= q;
        }
        v
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// A field automorphism x ↦ x^(p^i).
#[derive(Clone, PartialEq, Eq)]
pub struct Automorphism {
    field: Field,
    exponent: u32,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism({} ^ p^{})", self.field, self.exponent)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "id")
        } else if self.exponent == 1 {
            write!(f, "x^{}", self.field.characteristic())
        } else {
            write!(f, "x^({}^{})", self.field.characteristic(), self.exponent)
        }
    }
}

impl Automorphism {
    pub fn new(field: &Field, exponent: u32) -> Automorphism {
        Automorphism {
            field: field.clone(),
            exponent: exponent % field.degree(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_identity(&self) -> bool {
        self.exponent == 0
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.field.frobenius(a, self.exponent)
    }

    pub fn apply_vec(&self, v: &[Elem]) -> Vec<Elem> {
        v.iter().map(|&a| self.apply(a)).collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism::new(&self.field, self.exponent + other.exponent)
    }

    pub fn inverse(&self) -> Automorphism {
        let s = self.field.degree();
        Automorphism::new(&self.field, (s - self.exponent) % s)
    }
}
