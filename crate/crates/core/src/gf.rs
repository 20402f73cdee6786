//! Exact arithmetic in `F_q = F_{p^s}` for desk-scale `q` (at most `2^20`).
//!
//! Every element is a [`Felt`] carrying a single canonical integer in `[0, q)`.
//! For prime fields that integer is the residue itself; for extension fields it
//! is the base-`p` digit string `c_0 + c_1 p + ... + c_{s-1} p^{s-1}` of the
//! coefficient tuple of the residue class modulo the defining polynomial.
//! Ascending canonical order is the element order used everywhere in the crate.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest field size accepted by [`Field::new`].
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Fields up to this size get a precomputed addition table.
const ADD_TABLE_LIMIT: u32 = 256;
/// Fields up to this size get log/antilog tables for multiplication.
const LOG_TABLE_LIMIT: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is not an irreducible monic polynomial of degree {degree} over F_{p}")]
    NotIrreducible { p: u32, degree: u32 },
    #[error("field of size {p}^{s} exceeds the supported maximum 2^20")]
    TooLarge { p: u64, s: u32 },
    #[error("exponent s must be at least 1")]
    ZeroExponent,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element rep {rep} does not belong to a field with {q} elements")]
    FieldMismatch { rep: u64, q: u32 },
}

/// A finite field element in canonical form. Meaningful only together with
/// the [`Field`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Felt(u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    #[inline]
    pub fn rep(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    add: Option<Vec<u32>>,
    // exp has length 2(q-1) so that exp[log a + log b] needs no reduction.
    log: Vec<u32>,
    exp: Vec<u32>,
}

struct FieldInner {
    p: u32,
    s: u32,
    q: u32,
    /// Monic modulus, low degree first, length `s + 1`; empty for prime fields.
    modulus: Vec<u32>,
    /// `p^i` for `i < s`.
    place: Vec<u32>,
    tables: Option<Tables>,
}

/// An immutable, cheaply clonable description of `F_{p^s}`.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p())
            .field("s", &self.s())
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.s == other.inner.s
            && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, s)` with `q = p^s`.
pub fn prime_power_parts(q: u64) -> Result<(u32, u32), GfError> {
    if q < 2 {
        return Err(GfError::NotPrimePower(q));
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut s = 0u32;
    while rest % p == 0 {
        rest /= p;
        s += 1;
    }
    if rest != 1 || p > u32::MAX as u64 {
        return Err(GfError::NotPrimePower(q));
    }
    Ok((p as u32, s))
}

// Small dense polynomial helpers over F_p, used only for modulus handling.
mod fp {
    pub(super) fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub(super) fn inv(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub(super) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p) as u64;
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] as u64 * lead_inv % p as u64;
            if c != 0 {
                let shift = top - dm;
                for (i, &mi) in m.iter().enumerate() {
                    let sub = c * mi as u64 % p as u64;
                    r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub(super) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        rem(&out, m, p)
    }

    pub(super) fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        result
    }

    pub(super) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out = vec![0u32; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *slot = (x + p - y) % p;
        }
        trim(&mut out);
        out
    }

    pub(super) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Rabin-style test: `m` of degree `s` is irreducible iff it has no common
    /// factor with `T^{p^i} - T` for `1 <= i <= s/2`.
    pub(super) fn is_irreducible(m: &[u32], p: u32) -> bool {
        let s = m.len() - 1;
        if s == 1 {
            return true;
        }
        let t = vec![0u32, 1u32];
        let mut frob = t.clone();
        for _ in 1..=s / 2 {
            frob = powmod(&frob, p as u64, m, p);
            let g = gcd(m, &sub(&frob, &t, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

/// The monic irreducible polynomial of degree `s` over `F_p` with the smallest
/// coefficient integer `c_0 + c_1 p + ... + c_{s-1} p^{s-1}`, returned low
/// degree first (length `s + 1`, last entry `1`).
pub fn find_irreducible(p: u32, s: u32) -> Result<Vec<u32>, GfError> {
    if !is_prime(p as u64) {
        return Err(GfError::NonPrime(p as u64));
    }
    if s == 0 {
        return Err(GfError::ZeroExponent);
    }
    let count = (p as u64)
        .checked_pow(s)
        .filter(|&c| c <= MAX_FIELD_SIZE)
        .ok_or(GfError::TooLarge { p: p as u64, s })?;
    for index in 0..count {
        let mut m = Vec::with_capacity(s as usize + 1);
        let mut rest = index;
        for _ in 0..s {
            m.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        m.push(1);
        if fp::is_irreducible(&m, p) {
            return Ok(m);
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

impl Field {
    /// Builds `F_{p^s}`. When `s > 1` and no modulus is supplied the one from
    /// [`find_irreducible`] is used. A supplied modulus is given low degree
    /// first; it must be monic of degree `s`.
    pub fn new(p: u64, s: u32, modulus: Option<&[u32]>) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrime(p));
        }
        if s == 0 {
            return Err(GfError::ZeroExponent);
        }
        let q = p
            .checked_pow(s)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(GfError::TooLarge { p, s })?;
        let p = p as u32;
        let modulus = if s == 1 {
            Vec::new()
        } else {
            match modulus {
                Some(m) => {
                    let bad = GfError::NotIrreducible { p, degree: s };
                    if m.len() != s as usize + 1 || m[s as usize] != 1 || m.iter().any(|&c| c >= p) {
                        return Err(bad);
                    }
                    if !fp::is_irreducible(m, p) {
                        return Err(bad);
                    }
                    m.to_vec()
                }
                None => find_irreducible(p, s)?,
            }
        };
        let place = (0..s).map(|i| p.pow(i)).collect();
        let mut inner = FieldInner {
            p,
            s,
            q: q as u32,
            modulus,
            place,
            tables: None,
        };
        if s > 1 {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field {
            inner: Arc::new(inner),
        })
    }

    /// `F_p`.
    pub fn prime(p: u64) -> Result<Field, GfError> {
        Field::new(p, 1, None)
    }

    /// The field with `q` elements, using the default modulus.
    pub fn with_order(q: u64) -> Result<Field, GfError> {
        let (p, s) = prime_power_parts(q)?;
        Field::new(p as u64, s, None)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn s(&self) -> u32 {
        self.inner.s
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Defining polynomial, low degree first; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.inner.s == 1 {
            None
        } else {
            Some(&self.inner.modulus)
        }
    }

    /// Validates a canonical rep.
    pub fn elem(&self, rep: u64) -> Result<Felt, GfError> {
        if rep < self.inner.q as u64 {
            Ok(Felt(rep as u32))
        } else {
            Err(GfError::FieldMismatch {
                rep,
                q: self.inner.q,
            })
        }
    }

    /// Image of an integer under `Z -> F_p ⊂ F_q`.
    pub fn from_int(&self, n: i64) -> Felt {
        Felt(n.rem_euclid(self.inner.p as i64) as u32)
    }

    #[inline]
    pub fn zero(&self) -> Felt {
        Felt::ZERO
    }

    #[inline]
    pub fn one(&self) -> Felt {
        Felt::ONE
    }

    /// All `q` elements in ascending canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..self.inner.q).map(Felt)
    }

    /// The `q - 1` nonzero elements in ascending canonical order. This order
    /// fixes the coordinate positions of every codeword.
    pub fn units(&self) -> Vec<Felt> {
        (1..self.inner.q).map(Felt).collect()
    }

    /// Base-`p` digits `(c_0, ..., c_{s-1})` of an element.
    pub fn digits(&self, a: Felt) -> Vec<u32> {
        let p = self.inner.p;
        let mut rest = a.0;
        (0..self.inner.s)
            .map(|_| {
                let c = rest % p;
                rest /= p;
                c
            })
            .collect()
    }

    /// Inverse of [`Field::digits`]; digits beyond `s` must be absent and
    /// every digit must be below `p`.
    pub fn from_digits(&self, digits: &[u32]) -> Result<Felt, GfError> {
        let p = self.inner.p;
        let mut rep = 0u64;
        for (i, &c) in digits.iter().enumerate().rev() {
            if c >= p || i >= self.inner.s as usize {
                return Err(GfError::FieldMismatch {
                    rep: c as u64,
                    q: self.inner.q,
                });
            }
            rep = rep * p as u64 + c as u64;
        }
        self.elem(rep)
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        let inner = &*self.inner;
        if inner.s == 1 {
            let t = a.0 + b.0;
            return Felt(if t >= inner.q { t - inner.q } else { t });
        }
        if inner.p == 2 {
            return Felt(a.0 ^ b.0);
        }
        if let Some(table) = inner.tables.as_ref().and_then(|t| t.add.as_ref()) {
            return Felt(table[(a.0 * inner.q + b.0) as usize]);
        }
        digitwise(inner, a.0, b.0, |x, y, p| (x + y) % p)
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        let inner = &*self.inner;
        if inner.s == 1 {
            return Felt(if a.0 == 0 { 0 } else { inner.q - a.0 });
        }
        if inner.p == 2 {
            return a;
        }
        digitwise(inner, 0, a.0, |x, y, p| (x + p - y) % p)
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        let inner = &*self.inner;
        if inner.s == 1 {
            return Felt(if a.0 >= b.0 {
                a.0 - b.0
            } else {
                a.0 + inner.q - b.0
            });
        }
        if inner.p == 2 {
            return Felt(a.0 ^ b.0);
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        let inner = &*self.inner;
        if inner.s == 1 {
            return Felt(((a.0 as u64 * b.0 as u64) % inner.q as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return Felt::ZERO;
        }
        match &inner.tables {
            Some(t) if !t.log.is_empty() => {
                Felt(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
            }
            _ => Felt(schoolbook_mul(inner, a.0, b.0)),
        }
    }

    pub fn inv(&self, a: Felt) -> Result<Felt, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        let inner = &*self.inner;
        if let Some(t) = &inner.tables {
            if !t.log.is_empty() {
                let order = inner.q - 1;
                let l = t.log[a.0 as usize];
                return Ok(Felt(t.exp[((order - l) % order) as usize]));
            }
        }
        Ok(self.pow(a, inner.q as u64 - 2))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Felt, mut e: u64) -> Felt {
        let mut result = Felt::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Absolute trace `a + a^p + ... + a^{p^{s-1}}`; the result lies in the
    /// prime subfield, so its rep is below `p`.
    pub fn trace(&self, a: Felt) -> Felt {
        let p = self.inner.p as u64;
        let mut acc = a;
        let mut frob = a;
        for _ in 1..self.inner.s {
            frob = self.pow(frob, p);
            acc = self.add(acc, frob);
        }
        acc
    }

    /// `n` copies of `a` added together.
    pub fn scale_int(&self, a: Felt, n: u64) -> Felt {
        self.mul(a, self.from_int((n % self.inner.p as u64) as i64))
    }
}

fn digitwise(inner: &FieldInner, a: u32, b: u32, op: impl Fn(u32, u32, u32) -> u32) -> Felt {
    let p = inner.p;
    let (mut x, mut y) = (a, b);
    let mut out = 0u32;
    for &place in &inner.place {
        let c = op(x % p, y % p, p);
        out += c * place;
        x /= p;
        y /= p;
    }
    Felt(out)
}

fn schoolbook_mul(inner: &FieldInner, a: u32, b: u32) -> u32 {
    let p = inner.p;
    let s = inner.s as usize;
    let split = |mut v: u32| {
        let mut d = vec![0u32; s];
        for slot in d.iter_mut() {
            *slot = v % p;
            v /= p;
        }
        d
    };
    let prod = fp::mulmod(&split(a), &split(b), &inner.modulus, p);
    prod.iter()
        .zip(&inner.place)
        .map(|(&c, &place)| c * place)
        .sum()
}

fn build_tables(inner: &FieldInner) -> Tables {
    let q = inner.q;
    let add = if q <= ADD_TABLE_LIMIT {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                t[(a * q + b) as usize] = digitwise(inner, a, b, |x, y, p| (x + y) % p).0;
            }
        }
        Some(t)
    } else {
        None
    };
    let (log, exp) = if q <= LOG_TABLE_LIMIT {
        log_tables(inner)
    } else {
        (Vec::new(), Vec::new())
    };
    Tables { add, log, exp }
}

fn distinct_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn log_tables(inner: &FieldInner) -> (Vec<u32>, Vec<u32>) {
    let q = inner.q;
    let order = q - 1;
    let factors = distinct_prime_factors(order);
    let pow = |mut base: u32, mut e: u32| {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = schoolbook_mul(inner, r, base);
            }
            base = schoolbook_mul(inner, base, base);
            e >>= 1;
        }
        r
    };
    // Smallest rep generating the multiplicative group.
    let generator = (2..q)
        .find(|&g| factors.iter().all(|&f| pow(g, order / f) != 1))
        .expect("multiplicative group of a finite field is cyclic");
    let mut log = vec![0u32; q as usize];
    let mut exp = vec![0u32; 2 * order as usize];
    let mut x = 1u32;
    for i in 0..order {
        exp[i as usize] = x;
        exp[(i + order) as usize] = x;
        log[x as usize] = i;
        x = schoolbook_mul(inner, x, generator);
    }
    (log, exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn prime_field_basics() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.q(), 7);
        assert_eq!(f.add(Felt(3), Felt(5)), Felt(1));
        assert_eq!(f.inv(Felt(2)).unwrap(), Felt(4));
        assert_eq!(f.trace(Felt(3)), Felt(3));
        assert_eq!(f.inv(Felt::ZERO), Err(GfError::DivisionByZero));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::prime(4).unwrap_err(), GfError::NonPrime(4));
        assert!(matches!(
            Field::new(2, 21, None),
            Err(GfError::TooLarge { .. })
        ));
        // T^2 + 1 = (T + 1)^2 over F_2.
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(GfError::NotIrreducible { .. })
        ));
        assert!(matches!(
            Field::new(3, 2, Some(&[1, 0, 2])),
            Err(GfError::NotIrreducible { .. })
        ));
    }

    #[test]
    fn f4_multiplication_and_trace() {
        let f = f4();
        // T^2 + T + 1 has no root in F_2.
        for t in 0..2u32 {
            assert_ne!((t * t + t + 1) % 2, 0);
        }
        let alpha = Felt(2);
        assert_eq!(f.mul(alpha, alpha), Felt(3));
        assert_eq!(f.trace(Felt::ONE), Felt::ZERO);
        assert_eq!(f.trace(alpha), Felt::ONE);
        assert_eq!(f.units(), vec![Felt(1), Felt(2), Felt(3)]);
    }

    #[test]
    fn irreducible_selection() {
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(find_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(find_irreducible(5, 2).unwrap(), vec![2, 0, 1]);
        // T^3 + T + 1 is the first cubic over F_2 without roots.
        assert_eq!(find_irreducible(2, 3).unwrap(), vec![1, 1, 0, 1]);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power_parts(9).unwrap(), (3, 2));
        assert_eq!(prime_power_parts(11).unwrap(), (11, 1));
        assert_eq!(prime_power_parts(1024).unwrap(), (2, 10));
        assert!(prime_power_parts(12).is_err());
        assert!(prime_power_parts(1).is_err());
    }

    #[test]
    fn digits_round_trip() {
        let f = Field::with_order(25).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_digits(&f.digits(a)).unwrap(), a);
        }
        assert!(f.elem(25).is_err());
    }

    fn small_fields() -> Vec<Field> {
        [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64]
            .iter()
            .map(|&q| Field::with_order(q).unwrap())
            .collect()
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields() {
            for a in f.elements() {
                assert_eq!(f.pow(a, f.q() as u64), a, "Frobenius in F_{}", f.q());
                assert_eq!(f.add(a, f.neg(a)), Felt::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Felt::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn table_and_schoolbook_agree() {
        for q in [9u64, 25, 64, 243] {
            let f = Field::with_order(q).unwrap();
            let inner = &*f.inner;
            for a in 1..f.q() {
                for b in 1..f.q() {
                    assert_eq!(f.mul(Felt(a), Felt(b)).0, schoolbook_mul(inner, a, b));
                }
            }
        }
    }

    #[test]
    fn trace_properties_exhaustive() {
        for f in small_fields() {
            let mut zeros = 0u32;
            let mut hit = vec![false; f.p() as usize];
            for a in f.elements() {
                let t = f.trace(a);
                assert!(t.rep() < f.p());
                hit[t.rep() as usize] = true;
                if t.is_zero() {
                    zeros += 1;
                }
                for b in f.elements() {
                    assert_eq!(f.trace(f.add(a, b)), f.add(t, f.trace(b)));
                }
            }
            assert_eq!(zeros, f.p().pow(f.s() - 1));
            assert!(hit.iter().all(|&h| h), "trace is surjective");
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = Field::new(2, 20, None).unwrap();
        let a = Felt(123_457);
        let inv = f.inv(a).unwrap();
        assert_eq!(f.mul(a, inv), Felt::ONE);
        let g = Field::new(3, 11, None).unwrap();
        let b = Felt(98_765);
        assert_eq!(g.mul(b, g.inv(b).unwrap()), Felt::ONE);
    }
}
