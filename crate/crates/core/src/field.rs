//! Arithmetic in GF(p^m).
//!
//! Elements are dense integer codes in `0..q`. A code is read as a base-`p`
//! digit vector of polynomial coefficients, least significant digit first
//! (the constant term). For `m > 1` products are reduced modulo the
//! lexicographically smallest monic irreducible polynomial of degree `m`,
//! where polynomials are ordered by the integer formed from their
//! coefficients read most significant first.
//!
//! Fields with `q <= LOG_TABLE_MAX_Q` carry exponent/logarithm tables over a
//! primitive element; larger fields multiply and reduce on demand.

use crate::error::{Error, Result};
use crate::primes::{is_prime, prime_divisors};

/// Element code.
pub type Elem = u64;

/// Largest order for which log/antilog tables are built.
pub const LOG_TABLE_MAX_Q: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow,
}

#[derive(Clone, Debug)]
struct LogTables {
    /// `exp[i] = g^i` for `i < 2(q-1)`, doubled to skip a reduction.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

/// Immutable arithmetic context for GF(p^m).
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    tables: Option<LogTables>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p.checked_pow(m).ok_or(Error::Overflow { p, m })?;
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, m)
        };
        let mut ctx = FieldCtx {
            p,
            m,
            q,
            modulus,
            tables: None,
        };
        if q > 2 && q <= LOG_TABLE_MAX_Q {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, m) = crate::primes::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// The `m + 1` modulus coefficients, constant term first. For prime
    /// fields this is the placeholder `x`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The modulus read as a base-`p` integer (leading coefficient included).
    pub fn modulus_code(&self) -> u128 {
        self.modulus
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.q
    }

    fn check(&self, a: Elem) -> Result<()> {
        if a < self.q {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { code: a, q: self.q })
        }
    }

    /// Checked entry point taking the operation as a value. For `Pow` the
    /// second operand is an exponent and is not range-checked.
    pub fn apply(&self, op: FieldOp, a: Elem, b: u64) -> Result<Elem> {
        self.check(a)?;
        match op {
            FieldOp::Add => self.check(b).map(|_| self.add(a, b)),
            FieldOp::Sub => self.check(b).map(|_| self.sub(a, b)),
            FieldOp::Mul => self.check(b).map(|_| self.mul(a, b)),
            FieldOp::Inv => self.inv(a),
            FieldOp::Pow => Ok(self.pow(a, b)),
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a < self.q && b < self.q);
        if self.m == 1 {
            let s = a as u128 + b as u128;
            return (s % self.p as u128) as u64;
        }
        if self.p == 2 {
            return a ^ b;
        }
        self.digitwise(a, b, |x, y, p| (x + y) % p)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        debug_assert!(a < self.q);
        if self.m == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        if self.p == 2 {
            return a;
        }
        self.digitwise(a, 0, |x, _, p| (p - x) % p)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn digitwise(&self, mut a: u64, mut b: u64, f: impl Fn(u64, u64, u64) -> u64) -> u64 {
        let p = self.p;
        let mut out = 0u64;
        let mut place = 1u64;
        for i in 0..self.m {
            out += f(a % p, b % p, p) * place;
            a /= p;
            b /= p;
            if i + 1 < self.m {
                place *= p;
            }
        }
        out
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a < self.q && b < self.q);
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64,
            None => self.mul_raw(a, b),
        }
    }

    /// Multiply-and-reduce without tables.
    fn mul_raw(&self, a: Elem, b: Elem) -> Elem {
        if self.m == 1 {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        let pa = to_digits(a, self.p, self.m);
        let pb = to_digits(b, self.p, self.m);
        let prod = poly_mul(&pa, &pb, self.p);
        let r = poly_rem(&prod, &self.modulus, self.p);
        from_digits(&r, self.p)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => {
                let n = (self.q - 1) as u32;
                let l = t.log[a as usize];
                t.exp[((n - l) % n) as usize] as u64
            }
            None => self.pow(a, self.q - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        debug_assert!(a < self.q);
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            let l = (t.log[a as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return t.exp[l] as u64;
        }
        let mut base = a;
        let mut e = e;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        self.check(a)?;
        let mut ord = self.q - 1;
        for r in prime_divisors(self.q - 1) {
            while ord % r == 0 && self.pow(a, ord / r) == 1 {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// All element codes, `0..q`.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    fn build_tables(&self) -> LogTables {
        let n = self.q - 1;
        let divisors = prime_divisors(n);
        let generator = (2..self.q)
            .find(|&g| divisors.iter().all(|&r| self.pow_raw(g, n / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u64;
        for i in 0..n as usize {
            exp[i] = x as u32;
            exp[i + n as usize] = x as u32;
            log[x as usize] = i as u32;
            x = self.mul_raw(x, generator);
        }
        LogTables { exp, log }
    }

    fn pow_raw(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }
}

// Polynomials over F_p as coefficient vectors, constant term first, with no
// trailing zeros (the zero polynomial is empty).

fn to_digits(mut code: u64, p: u64, len: u32) -> Vec<u64> {
    let mut v = Vec::with_capacity(len as usize);
    for _ in 0..len {
        v.push(code % p);
        code /= p;
    }
    trim(v)
}

fn from_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0u64, |acc, &c| acc * p + c)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mulmod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_p(a: u64, p: u64) -> u64 {
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_p(acc, base, p);
        }
        base = mulmod_p(base, base, p);
        e >>= 1;
    }
    acc
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod_p(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `f` (not necessarily monic).
fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let f = trim(f.to_vec());
    let df = f.len() - 1;
    let lead_inv = inv_p(f[df], p);
    let mut r = trim(a.to_vec());
    while r.len() > df {
        let top = r.len() - 1;
        let c = mulmod_p(r[top], lead_inv, p);
        let shift = top - df;
        for (k, &fk) in f.iter().enumerate() {
            let sub = mulmod_p(c, fk, p);
            r[shift + k] = (r[shift + k] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), f, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), f, p);
        e >>= 1;
    }
    acc
}

/// Rabin's test: `f` monic of degree `m` is irreducible over F_p iff
/// `x^(p^m) = x (mod f)` and `gcd(x^(p^(m/r)) - x, f) = 1` for every prime
/// `r | m`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let m = (f.len() - 1) as u64;
    if m == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![poly_rem(&x, &f, p)];
    for _ in 0..m {
        let last = frob.last().unwrap();
        let next = poly_powmod(last, p, &f, p);
        frob.push(next);
    }
    if poly_sub(&frob[m as usize], &x, p) != poly_rem(&[], &f, p) {
        return false;
    }
    for r in prime_divisors(m) {
        let h = poly_sub(&frob[(m / r) as usize], &x, p);
        if poly_gcd(&f, &h, p).len() != 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
    let lower = p.pow(m);
    (0..lower)
        .map(|c| {
            let mut f = to_digits(c, p, m);
            f.resize(m as usize, 0);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
