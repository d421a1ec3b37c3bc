//! Ramification witnesses: for (N, a) with the radicand a a square modulo an
//! odd prime p, the model has a simple root mod p, and walking the residue
//! class of that root mod p^2 produces arbitrarily many distinct squarefree
//! parts divisible by p exactly once.

use crate::curvedb::CurveModel;
use crate::exact::{int_valuation, legendre, squarefree_part, ExactInt, ExactRat};
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("f_{level} has no root modulo {p}")]
    NoRoot { level: u32, p: u64 },
    #[error("scan bound reached before {want} distinct squarefree parts were found")]
    Exhausted { want: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationWitness {
    pub level: u32,
    pub radicand: ExactInt,
    pub prime: u64,
    /// Base point with v_p(f(x0)) = 1.
    pub x0: ExactInt,
    pub d_values: Vec<ExactInt>,
}

const SCAN_LIMIT: u64 = 100_000;

/// Finds `count` distinct squarefree parts D with v_p(D) = 1 among f_N(u)
/// for u = x0 (mod p^2). The base point is the first root r of f_N mod p
/// (ascending), shifted by the first k with f_N(r + k p) not divisible by
/// p^2; the walk then steps by p^2.
pub fn find_ramification_witnesses(
    curve: &CurveModel,
    radicand: &ExactInt,
    p: u64,
    count: usize,
) -> Result<RamificationWitness, WitnessError> {
    let roots = curve.f.roots_mod_p(p);
    if roots.roots.is_empty() {
        return Err(WitnessError::NoRoot { level: curve.level, p });
    }
    let p2 = ExactInt::from(p) * ExactInt::from(p);
    let mut base = None;
    'outer: for &r in &roots.roots {
        for k in 0..p {
            let x = ExactInt::from(r) + ExactInt::from(k) * ExactInt::from(p);
            let v = curve.f.eval_int(&x);
            if !v.is_zero() && int_valuation(&v, &ExactInt::from(p)) == Some(1) {
                base = Some(x);
                break 'outer;
            }
        }
    }
    let Some(x0) = base else {
        return Err(WitnessError::NoRoot { level: curve.level, p });
    };
    let mut d_values: Vec<ExactInt> = vec![];
    let mut u = x0.clone();
    let mut steps = 0u64;
    while d_values.len() < count {
        if steps >= SCAN_LIMIT {
            return Err(WitnessError::Exhausted { want: count });
        }
        let v = curve.f.eval_int(&u);
        if !v.is_zero() {
            let dec = squarefree_part(&ExactRat::from(v)).expect("nonzero");
            debug_assert_eq!(
                int_valuation(&dec.d_free, &ExactInt::from(p)),
                Some(1),
                "witness D must carry p exactly once"
            );
            if !d_values.contains(&dec.d_free) {
                d_values.push(dec.d_free);
            }
        }
        u += &p2;
        steps += 1;
    }
    Ok(RamificationWitness {
        level: curve.level,
        radicand: radicand.clone(),
        prime: p,
        x0,
        d_values,
    })
}

/// The tabulated (level, radicand) pairs admitting witnesses.
pub const WITNESS_PAIRS: [(u32, i64); 4] = [(28, -7), (30, 5), (33, -11), (35, 5)];

/// First `how_many` odd primes with (a/p) = 1.
pub fn witness_primes(a: &ExactInt, how_many: usize) -> Vec<u64> {
    let mut out = vec![];
    let mut p = 3u64;
    while out.len() < how_many {
        if crate::exact::is_prime_u128(p as u128)
            && !a.mod_floor(&ExactInt::from(p)).is_zero()
            && legendre(a, &ExactInt::from(p)) == Ok(1)
        {
            out.push(p);
        }
        p += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvedb::Registry;
    use crate::splitting::{classify_prime, SplitBehavior};

    #[test]
    fn witness_prime_lists() {
        assert_eq!(witness_primes(&ExactInt::from(-7), 3), vec![11, 23, 29]);
        assert_eq!(witness_primes(&ExactInt::from(5), 3), vec![11, 19, 29]);
        assert_eq!(witness_primes(&ExactInt::from(-11), 3), vec![3, 5, 23]);
    }

    #[test]
    fn witnesses_for_28_at_11() {
        let reg = Registry::global();
        let c28 = reg.get_curve(28).unwrap();
        let w = find_ramification_witnesses(c28, &ExactInt::from(-7), 11, 5).unwrap();
        assert_eq!(w.x0, ExactInt::from(3));
        assert_eq!(w.d_values.len(), 5);
        assert_eq!(w.d_values[0], ExactInt::from(22));
        for d in &w.d_values {
            assert_eq!(int_valuation(d, &ExactInt::from(11)), Some(1));
            assert_eq!(classify_prime(d, 11), Ok(SplitBehavior::Ramified));
        }
    }

    #[test]
    fn no_root_when_nonsquare() {
        let reg = Registry::global();
        let c28 = reg.get_curve(28).unwrap();
        // (-7/5) = -1, and every factor of f_28 is quadratic over Q(sqrt(-7))
        assert_eq!(
            find_ramification_witnesses(c28, &ExactInt::from(-7), 5, 1),
            Err(WitnessError::NoRoot { level: 28, p: 5 })
        );
    }
}
