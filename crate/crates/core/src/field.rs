//! Finite fields `F_q` with `q = p^ext_deg`, represented by element indices.
//!
//! An element's index packs its coordinates over the prime subfield as base-p
//! digits: the element `c_0 + c_1*x + ... + c_{k-1}*x^{k-1}` of an extension
//! field has index `c_0 + c_1*p + ... + c_{k-1}*p^{k-1}`. For prime fields the
//! index is the residue itself. Index 0 is always the additive identity and
//! index 1 the multiplicative identity.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

/// Errors from field construction and element arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("NotPrime: {0} is neither a prime nor a prime power")]
    NotPrime(u64),
    #[error("NotIrreducible: the supplied modulus factors over F_{0}")]
    NotIrreducible(u64),
    #[error("DegreeMismatch: modulus has degree {got}, expected monic of degree {want}")]
    DegreeMismatch { got: usize, want: u32 },
    #[error("FieldMismatch: operands belong to different fields")]
    FieldMismatch,
    #[error("DivisionByZero: 0 has no multiplicative inverse")]
    DivisionByZero,
    #[error("NotAGenerator: element {0} does not generate the multiplicative group")]
    NotAGenerator(u64),
    #[error("LimitExceeded: q = {q} exceeds the exhaustive-verification cap {limit} (set INVFORGE_QLIMIT to raise it)")]
    LimitExceeded { q: u64, limit: u64 },
}

/// Default cap on exhaustive, O(q) work (dlog tables, full permutation maps).
pub const DEFAULT_QLIMIT: u64 = 1 << 20;

/// The configured cap: `INVFORGE_QLIMIT` if set and parseable, else 2^20.
/// Read once per process.
pub fn configured_qlimit() -> u64 {
    static LIMIT: OnceLock<u64> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("INVFORGE_QLIMIT")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_QLIMIT)
    })
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set decides primality for every n < 3.3 * 10^24.
    'witness: for &a in &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, ascending. `n >= 1`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut f = 5;
    while f as u128 * f as u128 <= n as u128 {
        push(f, &mut n);
        push(f + 2, &mut n);
        f += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A finite field, shared behind `Arc` so elements and polynomials can carry
/// their owner cheaply.
pub type Field = Arc<FieldSpec>;

/// Description of `F_q`: characteristic, extension degree, and for extension
/// fields the reduction modulus (monic irreducible, ascending coefficients).
pub struct FieldSpec {
    p: u64,
    ext_deg: u32,
    q: u64,
    /// Ascending coefficients of the monic modulus, length `ext_deg + 1`.
    /// Empty for prime fields.
    modulus: Vec<u64>,
    /// Distinct prime factors of `q - 1`.
    unit_primes: Vec<u64>,
    smallest_gen: OnceLock<u64>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.ext_deg == other.ext_deg && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec(q={}, p={}, ext_deg={})", self.q, self.p, self.ext_deg)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

// ---- polynomial arithmetic over F_p used for modulus selection ----

/// Reduce `num` modulo the monic polynomial `den`, coefficients ascending.
fn poly_rem(num: &mut Vec<u64>, den: &[u64], p: u64) {
    let dd = den.len() - 1;
    while num.len() > dd {
        let lead = *num.last().unwrap();
        let shift = num.len() - 1 - dd;
        if lead != 0 {
            for (j, &dc) in den.iter().enumerate() {
                let idx = shift + j;
                num[idx] = (num[idx] + (p - mulmod(lead, dc, p))) % p;
            }
        }
        num.pop();
    }
    while num.last() == Some(&0) {
        num.pop();
    }
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn poly_is_irreducible(coeffs: &[u64], p: u64) -> bool {
    let deg = coeffs.len() - 1;
    for d in 1..=deg / 2 {
        let lo = p.pow(d as u32);
        let hi = 2 * lo;
        for enc in lo..hi {
            let mut den = Vec::with_capacity(d + 1);
            let mut e = enc;
            for _ in 0..=d {
                den.push(e % p);
                e /= p;
            }
            let mut rem = coeffs.to_vec();
            poly_rem(&mut rem, &den, p);
            if rem.is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    fn build(p: u64, ext_deg: u32, modulus: Vec<u64>) -> Field {
        let q = p.pow(ext_deg);
        let unit_primes = factorize(q - 1).into_iter().map(|(f, _)| f).collect();
        Arc::new(FieldSpec {
            p,
            ext_deg,
            q,
            modulus,
            unit_primes,
            smallest_gen: OnceLock::new(),
        })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self::build(p, 1, Vec::new()))
    }

    /// The extension field `F_{p^ext_deg}` with an automatically chosen
    /// modulus: the monic irreducible of degree `ext_deg` whose ascending
    /// coefficients, read as base-p digits, give the smallest integer.
    pub fn extension(p: u64, ext_deg: u32) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if ext_deg < 2 {
            return Err(FieldError::DegreeMismatch { got: ext_deg as usize, want: 2 });
        }
        let lo = p.pow(ext_deg);
        for enc in lo..2 * lo {
            let mut coeffs = Vec::with_capacity(ext_deg as usize + 1);
            let mut e = enc;
            for _ in 0..=ext_deg {
                coeffs.push(e % p);
                e /= p;
            }
            if poly_is_irreducible(&coeffs, p) {
                return Ok(Self::build(p, ext_deg, coeffs));
            }
        }
        unreachable!("an irreducible of every degree exists over F_p")
    }

    /// The extension field with a caller-supplied monic modulus, ascending
    /// coefficients of length `ext_deg + 1`.
    pub fn extension_with_modulus(
        p: u64,
        ext_deg: u32,
        modulus: Vec<u64>,
    ) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if ext_deg < 2 || modulus.len() != ext_deg as usize + 1 || *modulus.last().unwrap() != 1 {
            return Err(FieldError::DegreeMismatch {
                got: modulus.len().saturating_sub(1),
                want: ext_deg.max(2),
            });
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::NotIrreducible(p));
        }
        if !poly_is_irreducible(&modulus, p) {
            return Err(FieldError::NotIrreducible(p));
        }
        Ok(Self::build(p, ext_deg, modulus))
    }

    /// The field of order `q`, auto-detecting prime vs. prime power.
    pub fn from_order(q: u64) -> Result<Field, FieldError> {
        if is_prime(q) {
            return Self::prime(q);
        }
        let factors = factorize(q.max(1));
        if let [(p, e)] = factors.as_slice() {
            if *e >= 2 {
                return Self::extension(*p, *e);
            }
        }
        Err(FieldError::NotPrime(q))
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn ext_deg(&self) -> u32 {
        self.ext_deg
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Ascending modulus coefficients; empty for prime fields.
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    fn decode(&self, mut idx: u64) -> Vec<u64> {
        let mut digits = vec![0; self.ext_deg as usize];
        for d in digits.iter_mut() {
            *d = idx % self.p;
            idx /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        let mut idx = 0;
        for &d in digits.iter().rev() {
            idx = idx * self.p + d;
        }
        idx
    }

    /// Field addition on element indices.
    pub fn add_idx(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if self.ext_deg == 1 {
            let s = a + b;
            if s >= self.p { s - self.p } else { s }
        } else {
            let (da, db) = (self.decode(a), self.decode(b));
            let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
            self.encode(&sum)
        }
    }

    /// Additive inverse on element indices.
    pub fn neg_idx(&self, a: u64) -> u64 {
        debug_assert!(a < self.q);
        if self.ext_deg == 1 {
            if a == 0 { 0 } else { self.p - a }
        } else {
            let da = self.decode(a);
            let neg: Vec<u64> = da.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect();
            self.encode(&neg)
        }
    }

    pub fn sub_idx(&self, a: u64, b: u64) -> u64 {
        self.add_idx(a, self.neg_idx(b))
    }

    /// Field multiplication on element indices.
    pub fn mul_idx(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if self.ext_deg == 1 {
            return mulmod(a, b, self.p);
        }
        let (da, db) = (self.decode(a), self.decode(b));
        let k = self.ext_deg as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(x, y, self.p)) % self.p;
            }
        }
        // Reduce modulo the monic modulus, high coefficients first.
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mcoeff) in self.modulus.iter().enumerate().take(k) {
                let idx = i - k + j;
                prod[idx] = (prod[idx] + (self.p - mulmod(c, mcoeff, self.p)) % self.p) % self.p;
            }
        }
        self.encode(&prod[..k])
    }

    /// `a^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow_idx(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `a^{q-2}`.
    pub fn inv_idx(&self, a: u64) -> Result<u64, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow_idx(a, self.q - 2))
    }

    /// The prime-subfield constant `n mod p` as an element index.
    pub fn embed(&self, n: u64) -> u64 {
        n % self.p
    }

    /// Multiplicative order of a nonzero element: divide `q - 1` down by its
    /// prime factors instead of stepping exhaustively.
    pub fn order_idx(&self, a: u64) -> Result<u64, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let mut ord = self.q - 1;
        for &f in &self.unit_primes {
            while ord % f == 0 && self.pow_idx(a, ord / f) == 1 {
                ord /= f;
            }
        }
        Ok(ord)
    }

    /// True iff `a` generates the full multiplicative group.
    pub fn is_generator(&self, a: u64) -> bool {
        if a == 0 {
            return false;
        }
        self.unit_primes.iter().all(|&f| self.pow_idx(a, (self.q - 1) / f) != 1)
    }

    /// The generator with the smallest element index (deterministic; cached).
    pub fn smallest_generator(&self) -> u64 {
        *self.smallest_gen.get_or_init(|| {
            (1..self.q)
                .find(|&a| self.is_generator(a))
                .expect("the multiplicative group of a finite field is cyclic")
        })
    }

    /// Every generator of the multiplicative group, ascending by index.
    pub fn generators(&self) -> Vec<u64> {
        (1..self.q).filter(|&a| self.is_generator(a)).collect()
    }
}

/// An element of a specific field; carries its owner for mismatch checks.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    index: u64,
}

impl FieldElement {
    /// Wrap an index as an element. Panics if `index >= q`.
    pub fn new(field: &Field, index: u64) -> Self {
        assert!(index < field.q(), "element index {} out of range for {}", index, field);
        FieldElement { field: field.clone(), index }
    }

    pub fn index(&self) -> u64 {
        self.index
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    fn same_field(&self, rhs: &Self) -> Result<(), FieldError> {
        if *self.field == *rhs.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.same_field(rhs)?;
        Ok(Self { field: self.field.clone(), index: self.field.add_idx(self.index, rhs.index) })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.same_field(rhs)?;
        Ok(Self { field: self.field.clone(), index: self.field.sub_idx(self.index, rhs.index) })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.same_field(rhs)?;
        Ok(Self { field: self.field.clone(), index: self.field.mul_idx(self.index, rhs.index) })
    }

    pub fn neg(&self) -> Self {
        Self { field: self.field.clone(), index: self.field.neg_idx(self.index) }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Ok(Self { field: self.field.clone(), index: self.field.inv_idx(self.index)? })
    }

    /// `self^e`; `0^0 = 1`.
    pub fn pow(&self, e: u64) -> Self {
        Self { field: self.field.clone(), index: self.field.pow_idx(self.index, e) }
    }

    pub fn order(&self) -> Result<u64, FieldError> {
        self.field.order_idx(self.index)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.index == other.index
    }
}
impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index)
    }
}

/// Discrete-logarithm table for a fixed generator: `pow[j] = g^j` for
/// `j in [0, q-1)` and `log[x] = j` for every nonzero `x`. Built in one
/// multiplicative sweep, O(q) time and space.
#[derive(Debug)]
pub struct DlogTable {
    g: u64,
    qm1: u64,
    pow: Vec<u64>,
    log: Vec<u64>,
}

impl DlogTable {
    /// Build under the process-configured cap.
    pub fn build(field: &Field, g: u64) -> Result<Self, FieldError> {
        Self::build_with_limit(field, g, configured_qlimit())
    }

    /// Build under an explicit cap on `q`.
    pub fn build_with_limit(field: &Field, g: u64, limit: u64) -> Result<Self, FieldError> {
        let q = field.q();
        if q > limit {
            return Err(FieldError::LimitExceeded { q, limit });
        }
        if !field.is_generator(g) {
            return Err(FieldError::NotAGenerator(g));
        }
        let qm1 = q - 1;
        let mut pow = Vec::with_capacity(qm1 as usize);
        let mut log = vec![u64::MAX; q as usize];
        let mut x = 1u64;
        for j in 0..qm1 {
            pow.push(x);
            log[x as usize] = j;
            x = field.mul_idx(x, g);
        }
        debug_assert_eq!(x, 1, "generator must close its cycle at q-1");
        Ok(DlogTable { g, qm1, pow, log })
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    /// `log_g(x)` for nonzero `x`; `None` for 0.
    pub fn log(&self, x: u64) -> Option<u64> {
        let j = self.log[x as usize];
        if j == u64::MAX { None } else { Some(j) }
    }

    /// `g^j`, with `j` reduced modulo `q - 1`.
    pub fn pow_of(&self, j: u64) -> u64 {
        self.pow[(j % self.qm1) as usize]
    }

    /// The exponent range size, `q - 1`.
    pub fn unit_count(&self) -> u64 {
        self.qm1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_spot_values() {
        assert!(is_prime(2) && is_prime(3) && is_prime(41) && is_prime(1009));
        assert!(!is_prime(1) && !is_prime(40) && !is_prime(1024));
    }

    #[test]
    fn factorization_recomposes() {
        for n in [1u64, 2, 12, 40, 1020, 1 << 20] {
            let f = factorize(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n, "factorize({n}) = {f:?}");
        }
    }

    #[test]
    fn prime_field_arithmetic() {
        let f41 = FieldSpec::prime(41).unwrap();
        assert_eq!(f41.add_idx(29, 22), 10);
        assert_eq!(f41.mul_idx(6, 7), 1);
        assert_eq!(f41.order_idx(2).unwrap(), 20);
        assert_eq!(f41.order_idx(6).unwrap(), 40);
        let f13 = FieldSpec::prime(13).unwrap();
        assert_eq!(f13.inv_idx(8).unwrap(), 5);
        assert_eq!(f13.pow_idx(2, 10), 10);
        assert_eq!(f13.pow_idx(0, 0), 1, "0^0 is 1 by convention");
    }

    #[test]
    fn composite_order_rejected() {
        assert_eq!(FieldSpec::prime(40).unwrap_err(), FieldError::NotPrime(40));
        assert_eq!(FieldSpec::from_order(40).unwrap_err(), FieldError::NotPrime(40));
        assert_eq!(FieldSpec::from_order(49).unwrap().ext_deg(), 2);
        assert_eq!(FieldSpec::from_order(1024).unwrap().ext_deg(), 10);
    }

    #[test]
    fn smallest_encoding_moduli() {
        // Frozen regression anchors for the modulus-selection rule.
        let gf16 = FieldSpec::extension(2, 4).unwrap();
        assert_eq!(gf16.modulus_coeffs(), &[1, 1, 0, 0, 1]); // x^4 + x + 1
        let gf8 = FieldSpec::extension(2, 3).unwrap();
        assert_eq!(gf8.modulus_coeffs(), &[1, 1, 0, 1]); // x^3 + x + 1
        let gf9 = FieldSpec::extension(3, 2).unwrap();
        assert_eq!(gf9.modulus_coeffs(), &[1, 0, 1]); // x^2 + 1
        let gf27 = FieldSpec::extension(3, 3).unwrap();
        assert_eq!(gf27.modulus_coeffs(), &[1, 2, 0, 1]); // x^3 + 2x + 1
    }

    #[test]
    fn supplied_modulus_validation() {
        // x^4 + x^3 + 1 is irreducible over F_2.
        assert!(FieldSpec::extension_with_modulus(2, 4, vec![1, 0, 0, 1, 1]).is_ok());
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 factors.
        assert_eq!(
            FieldSpec::extension_with_modulus(2, 4, vec![1, 0, 1, 0, 1]).unwrap_err(),
            FieldError::NotIrreducible(2)
        );
        assert!(matches!(
            FieldSpec::extension_with_modulus(2, 4, vec![1, 1, 1]).unwrap_err(),
            FieldError::DegreeMismatch { .. }
        ));
    }

    #[test]
    fn extension_arithmetic_spot_values() {
        let gf16 = FieldSpec::extension(2, 4).unwrap();
        assert_eq!(gf16.add_idx(3, 3), 0, "characteristic 2");
        // (x^3) * x = x^4 = x + 1 under x^4 + x + 1.
        assert_eq!(gf16.mul_idx(8, 2), 3);
        let gf9 = FieldSpec::extension(3, 2).unwrap();
        // x * x = x^2 = -1 = 2 under x^2 + 1.
        assert_eq!(gf9.mul_idx(3, 3), 2);
        assert_eq!(gf9.smallest_generator(), 4);
    }

    #[test]
    fn generator_search() {
        let f41 = FieldSpec::prime(41).unwrap();
        assert_eq!(f41.smallest_generator(), 6);
        assert_eq!(f41.generators().len(), 16);
        let f13 = FieldSpec::prime(13).unwrap();
        assert_eq!(f13.smallest_generator(), 2);
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.smallest_generator(), 2);
    }

    #[test]
    fn order_matches_brute_force() {
        let f = FieldSpec::prime(61).unwrap();
        for a in 1..61 {
            let fast = f.order_idx(a).unwrap();
            let mut x = a;
            let mut e = 1;
            while x != 1 {
                x = f.mul_idx(x, a);
                e += 1;
            }
            assert_eq!(fast, e, "order of {a} in F_61");
        }
    }

    #[test]
    fn dlog_table_round_trips() {
        let f41 = FieldSpec::prime(41).unwrap();
        let t = DlogTable::build(&f41, 6).unwrap();
        for x in 1..41 {
            let j = t.log(x).unwrap();
            assert_eq!(t.pow_of(j), x);
            assert_eq!(f41.pow_idx(6, j), x);
        }
        assert_eq!(t.log(0), None);
    }

    #[test]
    fn dlog_table_rejects_non_generators_and_big_fields() {
        let f41 = FieldSpec::prime(41).unwrap();
        assert_eq!(DlogTable::build(&f41, 2).unwrap_err(), FieldError::NotAGenerator(2));
        assert_eq!(
            DlogTable::build_with_limit(&f41, 6, 16).unwrap_err(),
            FieldError::LimitExceeded { q: 41, limit: 16 }
        );
    }

    #[test]
    fn element_wrapper_contracts() {
        let f13 = FieldSpec::prime(13).unwrap();
        let f7 = FieldSpec::prime(7).unwrap();
        let a = FieldElement::new(&f13, 8);
        let b = FieldElement::new(&f13, 7);
        assert_eq!(a.try_add(&b).unwrap().index(), 2);
        assert_eq!(a.try_mul(&b).unwrap().index(), 4);
        assert_eq!(a.inv().unwrap().index(), 5);
        assert_eq!(a.neg().index(), 5);
        assert_eq!(a.pow(0).index(), 1);
        assert_eq!(a.order().unwrap(), 4);
        let c = FieldElement::new(&f7, 3);
        assert_eq!(a.try_add(&c).unwrap_err(), FieldError::FieldMismatch);
        assert_eq!(
            FieldElement::new(&f13, 0).inv().unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    fn equal_specs_from_separate_constructions() {
        let a = FieldSpec::from_order(16).unwrap();
        let b = FieldSpec::extension(2, 4).unwrap();
        assert_eq!(*a, *b);
        let x = FieldElement::new(&a, 5);
        let y = FieldElement::new(&b, 7);
        // Same field by value, so cross-Arc arithmetic is allowed.
        assert_eq!(x.try_add(&y).unwrap().index(), 2);
    }
}
