//! Splitting behaviour of rational primes in Q(sqrt(D)) and the residue-class
//! rules that turn attained classes of D*s^2 into admissible residues of D.
//!
//! For odd p: p ramifies iff p | D, splits iff (D/p) = 1, is inert iff
//! (D/p) = -1. For p = 2: ramified iff D != 1 (mod 4), split iff D = 1
//! (mod 8), inert iff D = 5 (mod 8).
//!
//! From D*s^2 = a*p^t (mod p^l) with p not dividing a and t < l:
//! odd p, t even: D = a*(p^(t/2)/s)^2 (mod p^(l-t)), so D lands in a times
//! the nonzero squares mod p; odd p, t odd: p | D. For p = 2, t even:
//! D = a (mod 2^min(l-t,3)) because odd squares are 1 mod 8; t odd:
//! D = 2a (mod 2^(l-t+1)).

use crate::exact::{legendre, ExactInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplitError {
    #[error("D = {0} does not define a quadratic field")]
    NotAField(ExactInt),
    #[error("class (t={t}, l={l}) leaves only {bits} bit(s) of unit precision; re-run at a larger modulus")]
    InsufficientPrecision { t: u32, l: u32, bits: u32 },
    #[error("canonical class has t >= l")]
    BadClass,
}

/// Behaviour of one rational prime in Q(sqrt(D)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitBehavior {
    Split,
    Inert,
    Ramified,
}

impl SplitBehavior {
    pub fn label(self) -> &'static str {
        match self {
            SplitBehavior::Split => "split",
            SplitBehavior::Inert => "inert",
            SplitBehavior::Ramified => "ramified",
        }
    }
}

/// One attained residue class: D*s^2 = a * p^t (mod p^l), with a a unit
/// known modulo p^(l-t).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalClass {
    pub prime: u64,
    pub exponent: u32,
    pub t: u32,
    pub unit: u64,
}

impl CanonicalClass {
    pub fn new(prime: u64, exponent: u32, t: u32, unit: u64) -> CanonicalClass {
        debug_assert!(t < exponent);
        CanonicalClass { prime, exponent, t, unit }
    }

    /// Unit precision: a is known modulo p^(l-t).
    pub fn unit_modulus(&self) -> u64 {
        self.prime.pow(self.exponent - self.t)
    }
}

/// Classifies a prime in Q(sqrt(D)) for squarefree D (not 0 or 1).
pub fn classify_prime(d_free: &ExactInt, p: u64) -> Result<SplitBehavior, SplitError> {
    if d_free.is_zero() || d_free.is_one() {
        return Err(SplitError::NotAField(d_free.clone()));
    }
    if p == 2 {
        let m8 = d_free.mod_floor(&ExactInt::from(8));
        let m8 = u64::try_from(&m8).unwrap();
        return Ok(match m8 {
            1 => SplitBehavior::Split,
            5 => SplitBehavior::Inert,
            _ => SplitBehavior::Ramified,
        });
    }
    let pb = ExactInt::from(p);
    match legendre(d_free, &pb).expect("odd prime") {
        0 => Ok(SplitBehavior::Ramified),
        1 => Ok(SplitBehavior::Split),
        _ => Ok(SplitBehavior::Inert),
    }
}

/// Admissible residues of D deduced from a set of canonical classes.
///
/// For odd p the residues live mod p; for p = 2 they live mod 8. A residue
/// of 0 (odd p) or an even residue (p = 2) records that ramification is
/// possible. `exact` is false when some p = 2 class had fewer than three
/// bits of unit precision, in which case the mod-8 set is a sound
/// over-approximation (all lifts included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DConstraints {
    pub prime: u64,
    pub residues: BTreeSet<u64>,
    pub ramified_possible: bool,
    pub exact: bool,
}

impl DConstraints {
    pub fn modulus(&self) -> u64 {
        if self.prime == 2 {
            8
        } else {
            self.prime
        }
    }
}

/// Applies the residue-class rules to every attained class for one (p, l).
pub fn deduce_d_constraints(
    classes: &[CanonicalClass],
    p: u64,
) -> Result<DConstraints, SplitError> {
    let mut residues = BTreeSet::new();
    let mut ramified_possible = false;
    let mut exact = true;
    for c in classes {
        debug_assert_eq!(c.prime, p);
        if c.t >= c.exponent {
            return Err(SplitError::BadClass);
        }
        let precision = c.exponent - c.t;
        if p == 2 {
            if c.t % 2 == 0 {
                // D = a * (odd square) mod 2^min(precision,3)
                match precision {
                    0 => return Err(SplitError::BadClass),
                    1 => {
                        // only "D odd" is known
                        exact = false;
                        residues.extend([1u64, 3, 5, 7]);
                    }
                    2 => {
                        exact = false;
                        let a4 = c.unit % 4;
                        residues.extend([a4, a4 + 4]);
                    }
                    _ => {
                        residues.insert(c.unit % 8);
                    }
                }
            } else {
                // t odd: D = 2a (mod 2^(l-t+1)); D is even, v_2(D) = 1
                ramified_possible = true;
                if precision + 1 >= 3 {
                    residues.insert((2 * c.unit) % 8);
                } else {
                    // D = 2 (mod 4) only
                    exact = false;
                    residues.extend([2u64, 6]);
                }
            }
        } else if c.t % 2 == 1 {
            ramified_possible = true;
            residues.insert(0);
        } else {
            // D in a * (nonzero squares mod p)
            let a = c.unit % p;
            for r in 1..p {
                let sq = (r as u128 * r as u128 % p as u128) as u64;
                residues.insert((a as u128 * sq as u128 % p as u128) as u64);
            }
        }
    }
    if p == 2 {
        ramified_possible |= residues.iter().any(|r| r % 4 != 1);
    }
    Ok(DConstraints { prime: p, residues, ramified_possible, exact })
}

/// Strict variant: refuses to answer when any class was too coarse for an
/// exact mod-8 conclusion (the caller should re-run at a larger modulus).
pub fn deduce_d_constraints_strict(
    classes: &[CanonicalClass],
    p: u64,
) -> Result<DConstraints, SplitError> {
    let out = deduce_d_constraints(classes, p)?;
    if !out.exact {
        let worst = classes
            .iter()
            .map(|c| (c.t, c.exponent))
            .min_by_key(|(t, l)| l - t)
            .unwrap_or((0, 1));
        return Err(SplitError::InsufficientPrecision {
            t: worst.0,
            l: worst.1,
            bits: worst.1 - worst.0,
        });
    }
    Ok(out)
}

/// Coarse facts derivable from an admissible-residue set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BehaviourSummary {
    pub splits: bool,
    pub not_inert: bool,
    pub unramified: bool,
}

impl BehaviourSummary {
    pub fn labels(&self) -> Vec<&'static str> {
        let mut v = vec![];
        if self.splits {
            v.push("splits");
        }
        if self.not_inert {
            v.push("not_inert");
        }
        if self.unramified {
            v.push("unramified");
        }
        v
    }

    pub fn covers(&self, e: crate::curvedb::SplitExpectation) -> bool {
        use crate::curvedb::SplitExpectation::*;
        match e {
            Splits => self.splits,
            NotInert => self.not_inert,
            Unramified => self.unramified,
        }
    }
}

/// Reads off which of {splits, not_inert, unramified} hold for every D in
/// the admissible set.
pub fn summarize_behaviour(constraints: &DConstraints) -> BehaviourSummary {
    let p = constraints.prime;
    let rs = &constraints.residues;
    if rs.is_empty() {
        return BehaviourSummary::default();
    }
    if p == 2 {
        BehaviourSummary {
            splits: rs.iter().all(|&r| r == 1),
            not_inert: rs.iter().all(|&r| r != 5),
            unramified: rs.iter().all(|&r| r % 4 == 1),
        }
    } else {
        let squares: BTreeSet<u64> = (1..p)
            .map(|r| (r as u128 * r as u128 % p as u128) as u64)
            .collect();
        BehaviourSummary {
            splits: rs.iter().all(|&r| squares.contains(&r)),
            not_inert: rs.iter().all(|&r| r == 0 || squares.contains(&r)),
            unramified: !rs.contains(&0),
        }
    }
}
