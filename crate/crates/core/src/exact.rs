//! Exact integer and rational arithmetic: p-adic valuations, quadratic residue
//! symbols, integer factorization and squarefree decomposition.
//!
//! Everything here is exact; no floating point is used anywhere. Integers are
//! arbitrary precision ([`ExactInt`]), rationals are always reduced with a
//! positive denominator ([`ExactRat`]).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;
/// Arbitrary-precision rational, always reduced, denominator > 0.
pub type ExactRat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("modulus {0} is not prime")]
    NotPrime(ExactInt),
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(ExactInt),
    #[error("squarefree decomposition of zero is undefined")]
    ZeroInput,
}

/// `d = D * s^2` with `D` a squarefree integer and `s` a positive rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomp {
    pub d_free: ExactInt,
    pub scale: ExactRat,
}

impl SquarefreeDecomp {
    /// Reassembles `D * s^2`; inverse of [`squarefree_part`].
    pub fn recompose(&self) -> ExactRat {
        ExactRat::from(self.d_free.clone()) * &self.scale * &self.scale
    }
}

/// p-adic valuation of a rational; `None` encodes +infinity (valuation of 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicVal {
    pub prime: ExactInt,
    pub value: Option<i64>,
}

impl PAdicVal {
    pub fn is_infinite(&self) -> bool {
        self.value.is_none()
    }
    pub fn finite(&self) -> i64 {
        self.value.expect("valuation of zero")
    }
}

/// Nonnegative gcd with gcd(0,0) = 0.
pub fn gcd(a: &ExactInt, b: &ExactInt) -> ExactInt {
    a.gcd(b)
}

/// Exact p-adic valuation of an integer; caller guarantees p prime.
pub fn int_valuation(x: &ExactInt, p: &ExactInt) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let mut v = 0i64;
    let mut r = x.abs();
    loop {
        let (q, rem) = r.div_rem(p);
        if rem.is_zero() {
            v += 1;
            r = q;
        } else {
            return Some(v);
        }
    }
}

/// p-adic valuation of a rational, extended by v(a/b) = v(a) - v(b).
pub fn valuation(x: &ExactRat, p: &ExactInt) -> Result<PAdicVal, ExactError> {
    if !is_prime(p) {
        return Err(ExactError::NotPrime(p.clone()));
    }
    let value = if x.is_zero() {
        None
    } else {
        let vn = int_valuation(x.numer(), p).unwrap();
        let vd = int_valuation(x.denom(), p).unwrap();
        Some(vn - vd)
    };
    Ok(PAdicVal { prime: p.clone(), value })
}

// ---------------------------------------------------------------------------
// u128 modular arithmetic (Montgomery form) for the factorization hot path.
// ---------------------------------------------------------------------------

#[inline]
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    // 128x128 -> 256 via 64-bit limbs
    let (a1, a0) = ((a >> 64) as u64, a as u64);
    let (b1, b0) = ((b >> 64) as u64, b as u64);
    let ll = (a0 as u128) * (b0 as u128);
    let lh = (a0 as u128) * (b1 as u128);
    let hl = (a1 as u128) * (b0 as u128);
    let hh = (a1 as u128) * (b1 as u128);
    let mid = lh.wrapping_add(hl);
    let mid_carry = if mid < lh { 1u128 << 64 } else { 0 };
    let lo = ll.wrapping_add(mid << 64);
    let lo_carry = if lo < ll { 1u128 } else { 0 };
    let hi = hh + (mid >> 64) + mid_carry + lo_carry;
    (hi, lo)
}

/// Montgomery context for an odd modulus m < 2^127.
#[derive(Clone, Copy)]
struct Mont {
    m: u128,
    neg_inv: u128, // -m^{-1} mod 2^128
    r2: u128,      // 2^256 mod m
    one: u128,     // 2^128 mod m
}

impl Mont {
    fn new(m: u128) -> Mont {
        debug_assert!(m & 1 == 1 && m >> 127 == 0);
        // Newton iteration for m^{-1} mod 2^128 (doubles correct bits each step)
        let mut inv: u128 = m;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(m.wrapping_mul(inv)));
        }
        let neg_inv = inv.wrapping_neg();
        let one = (u128::MAX % m + 1) % m;
        // r2 = 2^256 mod m by 128 modular doublings of 2^128 mod m;
        // m < 2^127 keeps each doubling inside u128
        let mut r2 = one;
        for _ in 0..128 {
            r2 += r2;
            if r2 >= m {
                r2 -= m;
            }
        }
        Mont { m, neg_inv, r2, one }
    }

    /// REDC of T = hi*2^128 + lo, valid for T < m*2^128.
    #[inline]
    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let u = lo.wrapping_mul(self.neg_inv);
        let (c_hi, c_lo) = mul_wide(u, self.m);
        // lo + c_lo is 0 or exactly 2^128; hi + c_hi + carry < 2m < 2^128
        let (_, carry) = lo.overflowing_add(c_lo);
        let t = hi + c_hi + carry as u128;
        if t >= self.m {
            t - self.m
        } else {
            t
        }
    }

    #[inline]
    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }

    #[inline]
    fn to_mont(self, a: u128) -> u128 {
        self.mul(a % self.m, self.r2)
    }

    fn pow(&self, a_mont: u128, mut e: u128) -> u128 {
        let mut base = a_mont;
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn mr_witness(mont: &Mont, n: u128, a: u128) -> bool {
    // returns true if a witnesses compositeness of n
    let a = a % n;
    if a == 0 {
        return false;
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d_odd = d >> s;
    let am = mont.to_mont(a);
    let mut x = mont.pow(am, d_odd);
    let one = mont.one;
    let minus_one = n - one;
    if x == one || x == minus_one {
        return false;
    }
    for _ in 1..s {
        x = mont.mul(x, x);
        if x == minus_one {
            return false;
        }
        if x == one {
            return true;
        }
    }
    true
}

const MR_BASES: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
// extra fixed bases used above the deterministic range of MR_BASES
const MR_EXTRA: [u128; 13] = [41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
// MR_BASES is a deterministic witness set for n < 3.317e24
const MR_DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

/// Primality for u128 (m < 2^127), deterministic below ~3.3e24.
pub fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mont = Mont::new(n);
    if MR_BASES.iter().any(|&a| mr_witness(&mont, n, a)) {
        return false;
    }
    if n >= MR_DETERMINISTIC_BOUND && MR_EXTRA.iter().any(|&a| mr_witness(&mont, n, a)) {
        return false;
    }
    true
}

/// Primality on big integers; exact for everything the toolkit produces
/// (desk-scale inputs; see `is_prime_u128` for the deterministic range).
pub fn is_prime(n: &ExactInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(v) = n.to_u128() {
        if v >> 127 == 0 {
            return is_prime_u128(v);
        }
    }
    // Fallback: BigInt Miller-Rabin over the fixed bases.
    let one = ExactInt::one();
    let two = &one + &one;
    if n.is_even() {
        return *n == two;
    }
    let n_minus_1 = n - &one;
    let s = int_valuation(&n_minus_1, &two).unwrap();
    let d = &n_minus_1 >> (s as usize);
    'bases: for &a in MR_BASES.iter().chain(MR_EXTRA.iter()) {
        let a = ExactInt::from(a);
        if &a % n == ExactInt::zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).is_none_or(|s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

const SMALL_PRIME_BOUND: u64 = 10_000;

fn small_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let hi = SMALL_PRIME_BOUND as usize;
        let mut sieve = vec![true; hi + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut p = 2usize;
        while p * p <= hi {
            if sieve[p] {
                let mut q = p * p;
                while q <= hi {
                    sieve[q] = false;
                    q += p;
                }
            }
            p += 1;
        }
        (2..=hi).filter(|&i| sieve[i]).map(|i| i as u64).collect()
    })
}

/// Brent's cycle variant of the rho method. Returns a nontrivial factor of
/// composite odd n (no factor below the trial-division bound).
fn rho_u128(n: u128) -> u128 {
    let mont = Mont::new(n);
    let mut c_add = 1u128;
    loop {
        let c = mont.to_mont(c_add);
        let mut y = mont.to_mont(2 + c_add);
        let mut r: u64 = 1;
        let mut q = mont.one;
        let (mut g, mut x, mut ys) = (1u128, y, y);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = mont.mul(y, y);
                y = if y + c >= n { y + c - n } else { y + c };
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                let lim = 128.min(r - k);
                for _ in 0..lim {
                    y = mont.mul(y, y);
                    y = if y + c >= n { y + c - n } else { y + c };
                    let diff = x.abs_diff(y);
                    q = mont.mul(q, diff);
                }
                g = gcd_u128(mont.redc(0, q), n);
                k += lim;
            }
            r *= 2;
        }
        if g == n {
            // backtrack
            g = 1;
            let mut z = ys;
            while g == 1 {
                z = mont.mul(z, z);
                z = if z + c >= n { z + c - n } else { z + c };
                let diff = x.abs_diff(z);
                g = gcd_u128(mont.redc(0, diff), n);
            }
        }
        if g != n && g != 1 {
            return g;
        }
        c_add += 1; // retry with a different polynomial
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Complete factorization of a u128 into prime -> exponent.
pub fn factor_u128(mut n: u128) -> BTreeMap<u128, u32> {
    let mut out = BTreeMap::new();
    if n <= 1 {
        return out;
    }
    for &p in small_primes() {
        let p = p as u128;
        if p * p > n {
            break;
        }
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u128(m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let r = isqrt_u128(m);
        if r * r == m {
            stack.push(r);
            stack.push(r);
            continue;
        }
        let f = rho_u128(m);
        stack.push(f);
        stack.push(m / f);
    }
    out
}

/// Complete factorization of |n| into prime -> exponent (BigInt front end).
pub fn factor(n: &ExactInt) -> BTreeMap<ExactInt, u32> {
    let mut out = BTreeMap::new();
    let mut n = n.abs();
    if n <= ExactInt::one() {
        return out;
    }
    if let Some(v) = n.to_u128() {
        if v >> 127 == 0 {
            for (p, e) in factor_u128(v) {
                out.insert(ExactInt::from(p), e);
            }
            return out;
        }
    }
    // Oversized input: strip small primes, then recurse on rho factors.
    for &p in small_primes() {
        let pb = ExactInt::from(p);
        loop {
            let (q, r) = n.div_rem(&pb);
            if r.is_zero() {
                *out.entry(pb.clone()).or_insert(0) += 1;
                n = q;
            } else {
                break;
            }
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(v) = m.to_u128() {
            if v >> 127 == 0 {
                for (p, e) in factor_u128(v) {
                    *out.entry(ExactInt::from(p)).or_insert(0) += e;
                }
                continue;
            }
        }
        if is_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let f = rho_bigint(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    out
}

fn rho_bigint(n: &ExactInt) -> ExactInt {
    // plain Pollard rho with Floyd cycle detection; only reached for
    // inputs beyond u128, which the registry computations never produce
    let one = ExactInt::one();
    let mut c = one.clone();
    loop {
        let f = |x: &ExactInt| (x * x + &c) % n;
        let mut x = ExactInt::from(2);
        let mut y = x.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            let d = gcd(&(&x - &y).abs(), n);
            if d == *n {
                break;
            }
            if d > one {
                return d;
            }
        }
        c += 1;
    }
}

/// Squarefree decomposition `d = D * s^2` of a nonzero rational.
///
/// `D` is the unique squarefree integer with `d / D` a rational square;
/// the sign of `D` matches the sign of `d` and `s > 0`.
pub fn squarefree_part(d: &ExactRat) -> Result<SquarefreeDecomp, ExactError> {
    if d.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    // v_p(d) = v_p(num) - v_p(den); D collects odd-valuation primes.
    let mut free = if d.is_negative() { -ExactInt::one() } else { ExactInt::one() };
    let mut scale = ExactRat::one();
    let num_f = factor(d.numer());
    let den_f = factor(d.denom());
    let mut vals: BTreeMap<ExactInt, i64> = BTreeMap::new();
    for (p, e) in num_f {
        *vals.entry(p).or_insert(0) += e as i64;
    }
    for (p, e) in den_f {
        *vals.entry(p).or_insert(0) -= e as i64;
    }
    for (p, v) in vals {
        let odd = v.rem_euclid(2);
        if odd == 1 {
            free *= &p;
        }
        let half = (v - odd) / 2;
        let pr = ExactRat::from(p);
        if half >= 0 {
            for _ in 0..half {
                scale *= &pr;
            }
        } else {
            for _ in 0..(-half) {
                scale /= &pr;
            }
        }
    }
    Ok(SquarefreeDecomp { d_free: free, scale })
}

/// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
pub fn legendre(a: &ExactInt, p: &ExactInt) -> Result<i32, ExactError> {
    if p.is_even() || !is_prime(p) {
        return Err(ExactError::NotOddPrime(p.clone()));
    }
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Ok(0);
    }
    let exp = (p - ExactInt::one()) >> 1;
    let r = a.modpow(&exp, p);
    if r.is_one() {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// Kronecker symbol (a/n), defined for all integers n.
pub fn kronecker(a: &ExactInt, n: &ExactInt) -> i32 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut a = a.clone();
    let mut n = n.clone();
    let mut result = 1i32;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    // (a/2) component
    let v2 = int_valuation(&n, &ExactInt::from(2)).unwrap_or(0);
    n >>= v2 as usize;
    if v2 > 0 {
        if a.is_even() {
            return 0;
        }
        let amod8 = a.mod_floor(&ExactInt::from(8)).to_i64().unwrap();
        if (amod8 == 3 || amod8 == 5) && v2 % 2 == 1 {
            result = -result;
        }
    }
    // now n odd positive; standard Jacobi loop
    a = a.mod_floor(&n);
    while !a.is_zero() {
        let v = int_valuation(&a, &ExactInt::from(2)).unwrap();
        a >>= v as usize;
        if v % 2 == 1 {
            let nmod8 = n.mod_floor(&ExactInt::from(8)).to_i64().unwrap();
            if nmod8 == 3 || nmod8 == 5 {
                result = -result;
            }
        }
        // reciprocity
        let amod4 = a.mod_floor(&ExactInt::from(4)).to_i64().unwrap();
        let nmod4 = n.mod_floor(&ExactInt::from(4)).to_i64().unwrap();
        if amod4 == 3 && nmod4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}
