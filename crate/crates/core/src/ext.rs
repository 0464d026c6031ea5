//! Extension towers GF(q^m) over a base field GF(q), with the coordinate
//! isomorphism onto GF(q)^m used by the rank-metric constructions.
//!
//! Elements are packed in radix q: the element with coordinate vector
//! (a_0, ..., a_{m-1}) over GF(q) packs to sum(a_i * q^i), each a_i itself
//! a packed base element. Since base packing is radix p, the whole value is
//! simply the radix-p digit string of length e*m.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::field::{poly_is_irreducible, poly_string, FieldCtx, FiniteField};

const TABLE_LIMIT: u64 = 1 << 16;

struct ExtInner {
    base: FieldCtx,
    m: u32,
    /// Modulus over the base field, ascending degree, monic, length m+1.
    modulus: Vec<u64>,
    size: u64,
    tables: Option<(Vec<u64>, Vec<u32>)>,
}

/// Descriptor of GF(q^m) over GF(q); cheap to clone, immutable, thread-safe.
#[derive(Clone)]
pub struct ExtensionCtx {
    inner: Arc<ExtInner>,
}

impl PartialEq for ExtensionCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base
                && self.inner.m == other.inner.m
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for ExtensionCtx {}

impl fmt::Debug for ExtensionCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.base.order(), self.inner.m)
    }
}

impl ExtensionCtx {
    /// GF(q^m) over `base` with an explicit monic irreducible modulus of
    /// degree m over the base field. `None` selects the default modulus:
    /// the first irreducible in the deterministic ascending scan of packed
    /// lower-coefficient vectors.
    pub fn new(base: &FieldCtx, m: u32, modulus: Option<&[u64]>) -> Result<ExtensionCtx> {
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let q = base.order();
        let size = checked_pow(q, m)?;
        let modulus = match modulus {
            Some(poly) => {
                let poly = poly.to_vec();
                if poly.len() != m as usize + 1
                    || poly[m as usize] != 1
                    || poly.iter().any(|&c| c >= q)
                {
                    return Err(Error::ReducibleModulus(format!(
                        "expected a monic degree-{m} polynomial over GF({q})"
                    )));
                }
                if !poly_is_irreducible(base, &poly) {
                    return Err(Error::ReducibleModulus(poly_string(&poly)));
                }
                poly
            }
            None => default_extension_modulus(base, m, size)?,
        };
        let mut inner = ExtInner { base: base.clone(), m, modulus, size, tables: None };
        if size <= TABLE_LIMIT && size > 2 {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(ExtensionCtx { inner: Arc::new(inner) })
    }

    /// Default-modulus context, memoized per (base, m). Construction of
    /// Ferrers codes builds the same towers over and over; the exp/log
    /// tables of GF(2^16) are worth caching.
    pub fn default_cached(base: &FieldCtx, m: u32) -> Result<ExtensionCtx> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32, Vec<u64>, u32), ExtensionCtx>>> =
            OnceLock::new();
        let key = (base.characteristic(), base.degree(), base.modulus().to_vec(), m);
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ctx) = cache.lock().unwrap().get(&key) {
            return Ok(ctx.clone());
        }
        let ctx = ExtensionCtx::new(base, m, None)?;
        cache.lock().unwrap().insert(key, ctx.clone());
        Ok(ctx)
    }

    pub fn base(&self) -> &FieldCtx {
        &self.inner.base
    }

    pub fn extension_degree(&self) -> u32 {
        self.inner.m
    }

    /// Modulus polynomial, ascending packed coefficients over the base.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.inner.size
    }

    /// Coordinate vector of length m over GF(q) (polynomial basis).
    pub fn to_coords(&self, a: u64) -> Vec<u64> {
        let q = self.inner.base.order();
        let mut v = Vec::with_capacity(self.inner.m as usize);
        let mut a = a;
        for _ in 0..self.inner.m {
            v.push(a % q);
            a /= q;
        }
        v
    }

    /// Inverse of [`ExtensionCtx::to_coords`].
    pub fn from_coords(&self, coords: &[u64]) -> Result<u64> {
        if coords.len() != self.inner.m as usize {
            return Err(Error::InvalidParameter(format!(
                "coordinate vector length {}, expected {}",
                coords.len(),
                self.inner.m
            )));
        }
        let q = self.inner.base.order();
        let mut a = 0u64;
        for &c in coords.iter().rev() {
            if c >= q {
                return Err(Error::InvalidParameter(format!(
                    "coordinate {c} outside base field of order {q}"
                )));
            }
            a = a * q + c;
        }
        Ok(a)
    }

    /// The class of x, a root of the modulus; generates the polynomial basis
    /// 1, x, x^2, ..., x^(m-1).
    pub fn generator(&self) -> u64 {
        if self.inner.m == 1 {
            // GF(q^1): x reduces to the negated constant term of the modulus.
            self.inner.base.neg(self.inner.modulus[0])
        } else {
            self.inner.base.order()
        }
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u64 {
        if let Some((exp, _)) = &self.inner.tables {
            return exp[1.min(exp.len() - 1)];
        }
        let group = self.inner.size - 1;
        let factors = prime_factors(group);
        (2..self.inner.size)
            .find(|&g| factors.iter().all(|&r| self.pow(g, group / r) != 1))
            .unwrap_or(1)
    }

    /// a^(q^count): `count` applications of the q-power Frobenius map.
    /// The map has order dividing m, so `count` is reduced mod m.
    pub fn frobenius(&self, a: u64, count: u32) -> u64 {
        let q = self.inner.base.order();
        let mut a = a;
        for _ in 0..count % self.inner.m {
            a = self.pow(a, q);
        }
        a
    }

    fn mul_generic(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.inner;
        let base = &inner.base;
        let m = inner.m as usize;
        let da = self.to_coords(a);
        let db = self.to_coords(b);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = base.add(prod[i + j], base.mul(x, y));
            }
        }
        for d in (m..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &mc) in inner.modulus.iter().take(m).enumerate() {
                if mc != 0 {
                    let idx = d - m + k;
                    prod[idx] = base.sub(prod[idx], base.mul(c, mc));
                }
            }
        }
        prod.truncate(m);
        self.from_coords(&prod).expect("reduced product has m coordinates")
    }
}

fn checked_pow(q: u64, m: u32) -> Result<u64> {
    let mut acc = 1u64;
    for _ in 0..m {
        acc = acc.checked_mul(q).ok_or_else(|| {
            Error::InvalidParameter(format!("q^m overflows u64 (q={q}, m={m})"))
        })?;
    }
    Ok(acc)
}

fn default_extension_modulus(base: &FieldCtx, m: u32, size: u64) -> Result<Vec<u64>> {
    let q = base.order();
    if m == 1 {
        return Ok(vec![0, 1]);
    }
    for packed in 0..size {
        let mut poly = Vec::with_capacity(m as usize + 1);
        let mut v = packed;
        for _ in 0..m {
            poly.push(v % q);
            v /= q;
        }
        poly.push(1);
        if poly_is_irreducible(base, &poly) {
            return Ok(poly);
        }
    }
    unreachable!("irreducible polynomials exist in every degree over a finite field")
}

fn build_tables(inner: &ExtInner) -> (Vec<u64>, Vec<u32>) {
    let ctx = ExtensionCtx {
        inner: Arc::new(ExtInner {
            base: inner.base.clone(),
            m: inner.m,
            modulus: inner.modulus.clone(),
            size: inner.size,
            tables: None,
        }),
    };
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

impl FiniteField for ExtensionCtx {
    fn order(&self) -> u64 {
        self.inner.size
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.inner.base.characteristic() == 2 {
            return a ^ b;
        }
        let q = self.inner.base.order();
        let mut out = 0u64;
        let mut shift = 1u64;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.inner.m {
            out += self.inner.base.add(a % q, b % q) * shift;
            a /= q;
            b /= q;
            shift *= q;
        }
        out
    }

    fn neg(&self, a: u64) -> u64 {
        if self.inner.base.characteristic() == 2 {
            return a;
        }
        let q = self.inner.base.order();
        let mut out = 0u64;
        let mut shift = 1u64;
        let mut a = a;
        for _ in 0..self.inner.m {
            out += self.inner.base.neg(a % q) * shift;
            a /= q;
            shift *= q;
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_over_gf2_frobenius() {
        let f2 = FieldCtx::gf(2).unwrap();
        // modulus x^2 + x + 1: frobenius(x) = x^2 = x + 1
        let ext = ExtensionCtx::new(&f2, 2, Some(&[1, 1, 1])).unwrap();
        let x = ext.generator();
        assert_eq!(ext.frobenius(x, 1), ext.add(x, 1));
        // base-field elements are fixed
        assert_eq!(ext.frobenius(1, 1), 1);
        assert_eq!(ext.frobenius(0, 1), 0);
        // order divides m
        for a in ext.elements() {
            assert_eq!(ext.frobenius(a, 2), a);
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f3 = FieldCtx::gf(3).unwrap();
        let ext = ExtensionCtx::new(&f3, 2, None).unwrap();
        for a in ext.elements() {
            for b in ext.elements() {
                assert_eq!(
                    ext.frobenius(ext.add(a, b), 1),
                    ext.add(ext.frobenius(a, 1), ext.frobenius(b, 1))
                );
            }
        }
    }

    #[test]
    fn coords_roundtrip_gf16() {
        let f2 = FieldCtx::gf(2).unwrap();
        let ext = ExtensionCtx::new(&f2, 4, None).unwrap();
        assert_eq!(ext.to_coords(0), vec![0, 0, 0, 0]);
        assert_eq!(ext.to_coords(1), vec![1, 0, 0, 0]);
        for a in ext.elements() {
            assert_eq!(ext.from_coords(&ext.to_coords(a)).unwrap(), a);
        }
    }

    #[test]
    fn coords_are_linear() {
        let f4 = FieldCtx::gf(4).unwrap();
        let ext = ExtensionCtx::new(&f4, 2, None).unwrap();
        for a in ext.elements() {
            for b in ext.elements() {
                let lhs = ext.to_coords(ext.add(a, b));
                let rhs: Vec<u64> = ext
                    .to_coords(a)
                    .iter()
                    .zip(ext.to_coords(b))
                    .map(|(&x, y)| f4.add(x, y))
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn tower_over_composite_base() {
        // GF(4^3): arithmetic sanity in a tower whose base is not prime.
        let f4 = FieldCtx::gf(4).unwrap();
        let ext = ExtensionCtx::new(&f4, 3, None).unwrap();
        assert_eq!(ext.order(), 64);
        for a in ext.elements().skip(1) {
            assert_eq!(ext.mul(a, ext.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn wrong_coordinate_length_rejected() {
        let f2 = FieldCtx::gf(2).unwrap();
        let ext = ExtensionCtx::new(&f2, 3, None).unwrap();
        assert!(ext.from_coords(&[1, 0]).is_err());
    }

    #[test]
    fn big_tower_without_tables() {
        // GF(2^17) as an extension: above the table limit.
        let f2 = FieldCtx::gf(2).unwrap();
        let ext = ExtensionCtx::new(&f2, 17, None).unwrap();
        assert_eq!(ext.order(), 1 << 17);
        let a = 0x155aau64;
        assert_eq!(ext.mul(a, ext.inv(a).unwrap()), 1);
        assert_eq!(ext.frobenius(a, 17), a);
    }
}
