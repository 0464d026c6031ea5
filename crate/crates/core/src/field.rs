//! Exact arithmetic in GF(p^e).
//!
//! Elements are packed into `u64` values: the element with coefficient
//! vector (c_0, ..., c_{e-1}) over GF(p) is stored as sum(c_i * p^i).
//! Packing is a bijection onto 0..p^e, so iterating raw values walks the
//! whole field. Fields of order at most 2^16 carry exp/log tables; larger
//! fields fall back to polynomial arithmetic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Common surface for GF(p^e) and its extensions, over packed elements.
///
/// `0` is the additive and `1` the multiplicative identity in every
/// implementation, because the constant polynomials 0 and 1 pack to those
/// values.
pub trait FiniteField: Clone + PartialEq + fmt::Debug + Send + Sync {
    /// Number of elements.
    fn order(&self) -> u64;
    fn add(&self, a: u64, b: u64) -> u64;
    fn neg(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    fn inv(&self, a: u64) -> Result<u64>;

    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    fn pow(&self, a: u64, mut k: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }
}

const TABLE_LIMIT: u64 = 1 << 16;

struct FieldInner {
    p: u64,
    e: u32,
    /// Modulus polynomial over GF(p), ascending degree, monic, length e+1.
    modulus: Vec<u64>,
    size: u64,
    /// exp[i] = g^i for 0 <= i < size-1, log[exp[i]] = i.
    tables: Option<(Vec<u64>, Vec<u32>)>,
}

/// Descriptor of GF(p^e); cheap to clone and share across threads.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<FieldInner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.e)
    }
}

fn is_prime(n: u64) -> bool {
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

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// Built-in moduli for the field orders the constructions commonly need.
/// Degree-1 entries are the polynomial x; the rest are Conway-style
/// irreducibles, listed ascending by degree.
fn default_modulus(q: u64) -> Option<(u64, u32, Vec<u64>)> {
    match q {
        2 | 3 | 5 | 7 => Some((q, 1, vec![0, 1])),
        4 => Some((2, 2, vec![1, 1, 1])),     // x^2 + x + 1
        8 => Some((2, 3, vec![1, 1, 0, 1])),  // x^3 + x + 1
        9 => Some((3, 2, vec![2, 2, 1])),     // x^2 + 2x + 2
        16 => Some((2, 4, vec![1, 1, 0, 0, 1])), // x^4 + x + 1
        _ => None,
    }
}

impl FieldCtx {
    /// GF(p^e) with an explicit modulus (ascending coefficients over GF(p),
    /// monic, degree e). `None` selects the built-in default for p^e.
    pub fn new(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || e > 32 {
            return Err(Error::InvalidParameter(format!(
                "extension degree {e} outside 1..=32"
            )));
        }
        let modulus: Vec<u64> = match modulus {
            Some(m) => m.to_vec(),
            None => match default_modulus(p.pow(e).min(u32::MAX as u64 + 1)) {
                Some((dp, de, dm)) if dp == p && de == e => dm,
                _ if e == 1 => vec![0, 1],
                _ => return Err(Error::NoDefaultField(checked_pow(p, e)?)),
            },
        };
        if modulus.len() != e as usize + 1
            || modulus[e as usize] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(Error::ReducibleModulus(format!(
                "expected a monic degree-{e} polynomial with coefficients below {p}"
            )));
        }
        let size = checked_pow(p, e)?;
        if e > 1 {
            let prime = FieldCtx::raw_prime(p);
            if !poly_is_irreducible(&prime, &modulus) {
                return Err(Error::ReducibleModulus(poly_string(&modulus)));
            }
        }
        let mut inner = FieldInner { p, e, modulus, size, tables: None };
        if size <= TABLE_LIMIT && size > 2 {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldCtx { inner: Arc::new(inner) })
    }

    /// GF(q) by order, using the built-in modulus table.
    pub fn gf(q: u64) -> Result<FieldCtx> {
        match default_modulus(q) {
            Some((p, e, m)) => FieldCtx::new(p, e, Some(&m)),
            None => {
                if is_prime(q) {
                    FieldCtx::new(q, 1, None)
                } else {
                    Err(Error::NoDefaultField(q))
                }
            }
        }
    }

    /// Prime field without any validation work; used as the coefficient
    /// field when validating extension moduli.
    fn raw_prime(p: u64) -> FieldCtx {
        FieldCtx {
            inner: Arc::new(FieldInner {
                p,
                e: 1,
                modulus: vec![0, 1],
                size: p,
                tables: None,
            }),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    /// Modulus polynomial, ascending coefficients over GF(p).
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Iterate all packed element values, 0..order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.inner.size
    }

    /// Coefficient vector (length e) of a packed element.
    pub fn unpack(&self, a: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.inner.e as usize);
        let mut a = a;
        for _ in 0..self.inner.e {
            v.push(a % self.inner.p);
            a /= self.inner.p;
        }
        v
    }

    /// Inverse of [`FieldCtx::unpack`]; extra leading zeros are allowed.
    pub fn pack(&self, coeffs: &[u64]) -> u64 {
        let mut a = 0u64;
        for &c in coeffs.iter().rev() {
            debug_assert!(c < self.inner.p);
            a = a * self.inner.p + c;
        }
        a
    }

    /// Wrap a packed value as a checked element.
    pub fn element(&self, val: u64) -> Result<FieldElement> {
        if val >= self.inner.size {
            return Err(Error::InvalidParameter(format!(
                "value {val} outside field of order {}",
                self.inner.size
            )));
        }
        Ok(FieldElement { field: self.clone(), val })
    }

    fn mul_generic(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.inner;
        if inner.e == 1 {
            return mulmod(a, b, inner.p);
        }
        if inner.p == 2 {
            return gf2_polymul(a, b, pack_gf2(&inner.modulus), inner.e);
        }
        // Schoolbook convolution of digit vectors, reduced by the modulus.
        let e = inner.e as usize;
        let p = inner.p;
        let da = self.unpack(a);
        let db = self.unpack(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // Reduce: x^e = -(modulus without leading term).
        for d in (e..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &mc) in inner.modulus.iter().take(e).enumerate() {
                if mc != 0 {
                    let idx = d - e + k;
                    prod[idx] = (prod[idx] + c * (p - mc)) % p;
                }
            }
        }
        prod.truncate(e);
        self.pack(&prod)
    }
}

fn checked_pow(p: u64, e: u32) -> Result<u64> {
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc
            .checked_mul(p)
            .ok_or_else(|| Error::InvalidParameter(format!("p^e overflows u64 (p={p}, e={e})")))?;
    }
    Ok(acc)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pack_gf2(coeffs: &[u64]) -> u64 {
    coeffs
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &c)| acc | (c & 1) << i)
}

/// Carry-less multiply modulo a degree-e polynomial, all packed as bits.
fn gf2_polymul(mut a: u64, mut b: u64, modulus: u64, e: u32) -> u64 {
    let top = 1u64 << e;
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn build_tables(inner: &FieldInner) -> (Vec<u64>, Vec<u32>) {
    let ctx = FieldCtx { inner: Arc::new(FieldInner {
        p: inner.p,
        e: inner.e,
        modulus: inner.modulus.clone(),
        size: inner.size,
        tables: None,
    }) };
    let group = inner.size - 1;
    let factors = prime_factors(group);
    let generator = (2..inner.size)
        .find(|&g| factors.iter().all(|&r| ctx.pow(g, group / r) != 1))
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = Vec::with_capacity(group as usize);
    let mut log = vec![0u32; inner.size as usize];
    let mut acc = 1u64;
    for i in 0..group {
        exp.push(acc);
        log[acc as usize] = i as u32;
        acc = ctx.mul_generic(acc, generator);
    }
    debug_assert_eq!(acc, 1);
    (exp, log)
}

impl FiniteField for FieldCtx {
    fn order(&self) -> u64 {
        self.inner.size
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.inner;
        if inner.p == 2 {
            return a ^ b;
        }
        if inner.e == 1 {
            return (a + b) % inner.p;
        }
        let mut out = 0u64;
        let mut shift = 1u64;
        let (mut a, mut b) = (a, b);
        for _ in 0..inner.e {
            out += (a % inner.p + b % inner.p) % inner.p * shift;
            a /= inner.p;
            b /= inner.p;
            shift *= inner.p;
        }
        out
    }

    fn neg(&self, a: u64) -> u64 {
        let inner = &*self.inner;
        if inner.p == 2 {
            return a;
        }
        if inner.e == 1 {
            return (inner.p - a) % inner.p;
        }
        let mut out = 0u64;
        let mut shift = 1u64;
        let mut a = a;
        for _ in 0..inner.e {
            out += (inner.p - a % inner.p) % inner.p * shift;
            a /= inner.p;
            shift *= inner.p;
        }
        out
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if let Some((exp, log)) = &self.inner.tables {
            if a == 0 || b == 0 {
                return 0;
            }
            let group = self.inner.size - 1;
            let idx = (log[a as usize] as u64 + log[b as usize] as u64) % group;
            return exp[idx as usize];
        }
        self.mul_generic(a, b)
    }

    fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInversion);
        }
        if let Some((exp, log)) = &self.inner.tables {
            let group = self.inner.size - 1;
            let idx = (group - log[a as usize] as u64) % group;
            return Ok(exp[idx as usize]);
        }
        Ok(self.pow(a, self.inner.size - 2))
    }
}

/// A field element carrying its owning field; comparisons and arithmetic
/// across different fields are rejected.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: FieldCtx,
    val: u64,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.val == other.val
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn value(&self) -> u64 {
        self.val
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.unpack(self.val)
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(FieldElement { field: self.field.clone(), val: self.field.add(self.val, other.val) })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(FieldElement { field: self.field.clone(), val: self.field.mul(self.val, other.val) })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement { field: self.field.clone(), val: self.field.inv(self.val)? })
    }

    pub fn pow(&self, k: u64) -> FieldElement {
        FieldElement { field: self.field.clone(), val: self.field.pow(self.val, k) }
    }
}

// ---------------------------------------------------------------------------
// Polynomial helpers over an arbitrary coefficient field. Coefficients are
// packed elements, ascending by degree. Only what modulus validation and
// extension towers need.
// ---------------------------------------------------------------------------

pub(crate) fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn poly_string(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| match d {
            0 => format!("{c}"),
            1 if c == 1 => "x".to_string(),
            1 => format!("{c}*x"),
            _ if c == 1 => format!("x^{d}"),
            _ => format!("{c}*x^{d}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub(crate) fn poly_mulmod<F: FiniteField>(f: &F, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(x, y));
        }
    }
    poly_rem(f, &mut prod, m);
    prod
}

/// In-place remainder by a monic modulus.
pub(crate) fn poly_rem<F: FiniteField>(f: &F, a: &mut Vec<u64>, m: &[u64]) {
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1, "modulus must be monic");
    while a.len() > dm {
        let c = *a.last().unwrap();
        let d = a.len() - 1;
        if c != 0 {
            for (k, &mc) in m.iter().take(dm).enumerate() {
                if mc != 0 {
                    let idx = d - dm + k;
                    a[idx] = f.sub(a[idx], f.mul(c, mc));
                }
            }
        }
        a.pop();
        poly_trim(a);
    }
    poly_trim(a);
}

pub(crate) fn poly_powmod<F: FiniteField>(f: &F, base: &[u64], mut k: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    poly_rem(f, &mut b, m);
    while k > 0 {
        if k & 1 == 1 {
            acc = poly_mulmod(f, &acc, &b, m);
        }
        b = poly_mulmod(f, &b, &b, m);
        k >>= 1;
    }
    acc
}

pub(crate) fn poly_gcd<F: FiniteField>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // a mod b, with b made monic on the fly.
        let lead = *b.last().unwrap();
        let li = f.inv(lead).expect("leading coefficient nonzero");
        let monic: Vec<u64> = b.iter().map(|&c| f.mul(c, li)).collect();
        if a.len() >= monic.len() {
            poly_rem(f, &mut a, &monic);
        }
        std::mem::swap(&mut a, &mut b);
        poly_trim(&mut b);
    }
    a
}

/// Rabin irreducibility test for a monic polynomial over the field `f`.
pub(crate) fn poly_is_irreducible<F: FiniteField>(f: &F, m: &[u64]) -> bool {
    let d = (m.len() - 1) as u64;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let q = f.order();
    let x = vec![0u64, 1];
    // x^(q^d) mod m must equal x.
    let mut h = x.clone();
    for _ in 0..d {
        h = poly_frob_power(f, &h, q, m);
    }
    if h != x {
        return false;
    }
    // gcd(x^(q^(d/r)) - x, m) must be 1 for every prime r | d.
    for r in prime_factors(d) {
        let mut h = x.clone();
        for _ in 0..d / r {
            h = poly_frob_power(f, &h, q, m);
        }
        let mut diff = h;
        // subtract x
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = f.sub(diff[1], 1);
        poly_trim(&mut diff);
        let g = poly_gcd(f, &diff, m);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn poly_frob_power<F: FiniteField>(f: &F, h: &[u64], q: u64, m: &[u64]) -> Vec<u64> {
    poly_powmod(f, h, q, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_basics() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn gf4_multiplication_table() {
        // modulus x^2 + x + 1 forces x*x = x + 1
        let f = FieldCtx::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let x = f.pack(&[0, 1]);
        let x1 = f.pack(&[1, 1]);
        assert_eq!(f.mul(x, x), x1);
        // x * (x+1) = x^2 + x = 1
        assert_eq!(f.mul(x, x1), 1);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        let err = FieldCtx::new(2, 2, Some(&[1, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::ReducibleModulus(_)));
    }

    #[test]
    fn gf3_inverse() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(f.inv(2).unwrap(), 2);
        assert_eq!(f.inv(0), Err(Error::ZeroInversion));
    }

    #[test]
    fn defaults_exist_for_documented_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16] {
            let f = FieldCtx::gf(q).unwrap();
            assert_eq!(f.order(), q);
        }
        assert_eq!(FieldCtx::gf(6), Err(Error::NoDefaultField(6)));
        assert_eq!(FieldCtx::gf(25), Err(Error::NoDefaultField(25)));
    }

    #[test]
    fn mixed_field_arith_rejected() {
        let f4 = FieldCtx::gf(4).unwrap();
        let f2 = FieldCtx::gf(2).unwrap();
        let a = f4.element(2).unwrap();
        let b = f2.element(1).unwrap();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.mul(&b), Err(Error::FieldMismatch));
    }

    fn axiom_suite(f: &FieldCtx) {
        let n = f.order();
        for a in 0..n {
            for b in 0..n {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if a != 0 {
                    let ia = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, ia), 1);
                }
            }
        }
        // associativity + distributivity over all triples
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16] {
            axiom_suite(&FieldCtx::gf(q).unwrap());
        }
        axiom_suite(&FieldCtx::new(5, 2, Some(&[2, 1, 1])).unwrap());
    }

    #[test]
    fn field_axioms_gf256() {
        // x^8 + x^4 + x^3 + x^2 + 1
        let f = FieldCtx::new(2, 8, Some(&[1, 0, 1, 1, 1, 0, 0, 0, 1])).unwrap();
        axiom_suite(&f);
    }

    #[test]
    fn pack_unpack_roundtrip() {
        let f = FieldCtx::gf(9).unwrap();
        for a in f.elements() {
            assert_eq!(f.pack(&f.unpack(a)), a);
        }
    }

    #[test]
    fn large_field_without_tables() {
        // GF(2^17) exceeds the table limit; generic arithmetic must hold.
        let f = FieldCtx::new(2, 17, Some(&[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]))
            .unwrap();
        let a = 0x1_2345u64 % f.order();
        let b = 0x0_fedcu64;
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        assert_eq!(f.mul(a, b), f.mul(b, a));
    }
}
