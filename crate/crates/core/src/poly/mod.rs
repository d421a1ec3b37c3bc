//! Exact polynomial arithmetic over the integers: resultants via fraction-free
//! Sylvester elimination, discriminants, finite-field root scans, Sturm-chain
//! real-root counting and exact square roots.

mod bivar;
mod quadext;

pub use bivar::{factor_bivariate_mod2, Bivar2, BivarIntPoly, F4};
pub use quadext::{expand_product, quad_poly, QuadExtElem, QuadExtPoly};

use crate::exact::{ExactInt, ExactRat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("resultant of a zero polynomial")]
    ZeroPolynomial,
    #[error("discriminant of a constant polynomial")]
    ConstantPolynomial,
    #[error("product over the quadratic extension keeps a radical part")]
    RadicalResidue,
    #[error("expanded product is not integral after content clearing")]
    NonIntegralResult,
    #[error("factors do not share a common radicand")]
    MixedRadicands,
}

/// Dense univariate polynomial over Z, coefficients ascending by degree.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<ExactInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly{:?}", self.coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<ExactInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| ExactInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> IntPoly {
        IntPoly::from_i64(&[1])
    }

    /// x - c
    pub fn linear_root(c: i64) -> IntPoly {
        IntPoly::from_i64(&[-c, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExactInt {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactInt::zero)
    }

    pub fn leading(&self) -> ExactInt {
        self.coeffs.last().cloned().unwrap_or_else(ExactInt::zero)
    }

    pub fn constant(&self) -> ExactInt {
        self.coeff(0)
    }

    pub fn eval_int(&self, x: &ExactInt) -> ExactInt {
        let mut acc = ExactInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &ExactRat) -> ExactRat {
        let mut acc = ExactRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + ExactRat::from(c.clone());
        }
        acc
    }

    /// Homogeneous evaluation F(m, n) = n^deg * f(m/n), exact.
    pub fn eval_homogeneous(&self, m: &ExactInt, n: &ExactInt) -> ExactInt {
        let d = match self.degree() {
            None => return ExactInt::zero(),
            Some(d) => d,
        };
        let mut acc = ExactInt::zero();
        // Horner in m, multiplying in n at each stage: ((a_d m + a_{d-1} n) m + a_{d-2} n^2) ...
        let mut npow = ExactInt::one();
        for i in (0..=d).rev() {
            acc = acc * m + &self.coeffs[i] * &npow;
            if i > 0 {
                npow *= n;
            }
        }
        acc
    }

    /// Homogeneous evaluation in i128 with overflow checking.
    pub fn eval_homogeneous_i128(&self, m: i64, n: i64) -> Option<i128> {
        let d = self.degree()?;
        let mut acc: i128 = 0;
        let mut npow: i128 = 1;
        let (m, n) = (m as i128, n as i128);
        for i in (0..=d).rev() {
            let c = i128::try_from(&self.coeffs[i]).ok()?;
            acc = acc.checked_mul(m)?.checked_add(c.checked_mul(npow)?)?;
            if i > 0 {
                npow = npow.checked_mul(n)?;
            }
        }
        Some(acc)
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * ExactInt::from(i as u64 + 1))
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![ExactInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, k: &ExactInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Coefficient reversal x^deg * f(1/x).
    pub fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// Exact square root when `self` is the square of an integer polynomial.
    pub fn sqrt_exact(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let d = self.degree()?;
        if d % 2 != 0 {
            return None;
        }
        let h = d / 2;
        let lc = self.leading();
        if lc.is_negative() {
            return None;
        }
        let slc = lc.sqrt();
        if &slc * &slc != lc {
            return None;
        }
        let mut s = vec![ExactInt::zero(); h + 1];
        s[h] = slc;
        for i in (0..h).rev() {
            // coefficient of x^(h+i) in s^2 must equal self[h+i]
            let mut acc = ExactInt::zero();
            for j in (i + 1)..h {
                let k = h + i - j;
                if k <= h && k > i {
                    acc += &s[j] * &s[k];
                }
            }
            let num = self.coeff(h + i) - acc;
            let den = ExactInt::from(2) * &s[h];
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                return None;
            }
            s[i] = q;
        }
        let cand = IntPoly::new(s);
        if cand.mul(&cand) == *self {
            Some(cand)
        } else {
            None
        }
    }

    /// All residues r in F_p with f(r) = 0, plus the projective root at
    /// infinity when p divides the leading coefficient. Exhaustive scan.
    pub fn roots_mod_p(&self, p: u64) -> RootsModP {
        let pm = ExactInt::from(p);
        let cs: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pm);
                u64::try_from(&r).unwrap()
            })
            .collect();
        let infinity = cs.last().is_none_or(|&c| c == 0);
        let mut roots = vec![];
        for r in 0..p {
            let mut acc: u64 = 0;
            for &c in cs.iter().rev() {
                acc = ((acc as u128 * r as u128 + c as u128) % p as u128) as u64;
            }
            if acc == 0 {
                roots.push(r);
            }
        }
        RootsModP { roots, infinity }
    }

    /// Number of distinct real roots, by Sturm's theorem (exact arithmetic).
    pub fn real_root_count(&self) -> usize {
        let d = match self.degree() {
            None | Some(0) => return 0,
            Some(d) => d,
        };
        let to_rat = |p: &IntPoly| -> Vec<ExactRat> {
            p.coeffs.iter().map(|c| ExactRat::from(c.clone())).collect()
        };
        fn deg(v: &[ExactRat]) -> usize {
            v.len().saturating_sub(1)
        }
        fn trim(mut v: Vec<ExactRat>) -> Vec<ExactRat> {
            while v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
            v
        }
        fn rem(a: &[ExactRat], b: &[ExactRat]) -> Vec<ExactRat> {
            let mut r = a.to_vec();
            let db = deg(b);
            let lb = b.last().unwrap().clone();
            while !r.is_empty() && deg(&r) >= db && !(r.len() == 1 && r[0].is_zero()) {
                let dr = deg(&r);
                let q = r.last().unwrap() / &lb;
                for (i, bi) in b.iter().enumerate() {
                    let idx = dr - db + i;
                    let delta = &q * bi;
                    r[idx] -= delta;
                }
                r = trim(r);
                if deg(&r) < db || r.is_empty() {
                    break;
                }
            }
            r
        }
        let _ = d;
        let mut chain: Vec<Vec<ExactRat>> = vec![to_rat(self), to_rat(&self.derivative())];
        loop {
            let last = &chain[chain.len() - 1];
            if last.is_empty() {
                chain.pop();
                break;
            }
            let prev = &chain[chain.len() - 2];
            let r = rem(prev, last);
            if r.is_empty() {
                break;
            }
            chain.push(r.iter().map(|c| -c).collect());
        }
        // sign variations at -inf and +inf from leading terms
        let variations = |at_minus: bool| -> usize {
            let signs: Vec<i32> = chain
                .iter()
                .filter_map(|p| {
                    if p.is_empty() {
                        return None;
                    }
                    let lead = p.last().unwrap();
                    let mut s = if lead.is_negative() { -1 } else { 1 };
                    if at_minus && deg(p) % 2 == 1 {
                        s = -s;
                    }
                    Some(s)
                })
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        variations(true) - variations(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootsModP {
    pub roots: Vec<u64>,
    pub infinity: bool,
}

impl RootsModP {
    /// True when f has no zero in P^1(F_p).
    pub fn is_empty_projective(&self) -> bool {
        self.roots.is_empty() && !self.infinity
    }
}

/// Sylvester-matrix resultant, computed by fraction-free (Bareiss)
/// elimination over the integers.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<ExactInt, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    if m == 0 {
        return Ok(f.constant().pow(n as u32));
    }
    if n == 0 {
        return Ok(g.constant().pow(m as u32));
    }
    let size = m + n;
    let mut a = vec![vec![ExactInt::zero(); size]; size];
    for row in 0..n {
        for (k, c) in f.coeffs.iter().rev().enumerate() {
            a[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in g.coeffs.iter().rev().enumerate() {
            a[n + row][row + k] = c.clone();
        }
    }
    bareiss_det(a)
}

fn bareiss_det(mut a: Vec<Vec<ExactInt>>) -> Result<ExactInt, PolyError> {
    let n = a.len();
    let mut sign = 1i32;
    let mut prev = ExactInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            let pivot = (k + 1..n).find(|&i| !a[i][k].is_zero());
            match pivot {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(ExactInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                let _ = r;
                a[i][j] = q;
            }
            a[i][k] = ExactInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { -det } else { det })
}

/// disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f).
pub fn discriminant(f: &IntPoly) -> Result<ExactInt, PolyError> {
    let n = f.degree().filter(|&d| d >= 1).ok_or(PolyError::ConstantPolynomial)?;
    if n == 1 {
        return Ok(ExactInt::one());
    }
    let r = resultant(f, &f.derivative())?;
    let signed = if (n * (n - 1) / 2) % 2 == 1 { -r } else { r };
    let (q, rem) = signed.div_rem(&f.leading());
    debug_assert!(rem.is_zero());
    let _ = rem;
    Ok(q)
}
