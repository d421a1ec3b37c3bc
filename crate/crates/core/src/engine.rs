//! Exhaustive residue-class enumeration: the attained values of the
//! homogeneous form F_N(m, n) modulo p^l over coprime-style pairs, and the
//! deduction pipeline from attained classes to admissible residues of D.

use crate::curvedb::{PairConstraint, Registry};
use crate::poly::IntPoly;
use crate::splitting::{
    deduce_d_constraints, summarize_behaviour, BehaviourSummary, CanonicalClass, DConstraints,
    SplitError,
};
use num_integer::Integer;
use rayon::prelude::*;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("modulus {0}^{1} exceeds the exhaustive-scan bound")]
    ModulusTooLarge(u64, u32),
    #[error("zero residue still attained at modulus {0}^{1}; escalation limit reached")]
    EscalationExceeded(u64, u32),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    CurveDb(#[from] crate::curvedb::CurveDbError),
    #[error("no enumeration registered for level {0} at prime {1}")]
    NoRegisteredSpec(u32, u64),
}

/// One enumeration request: all pairs (m, n) mod p^l not simultaneously
/// divisible by p, optionally constrained, evaluated through F_N mod p^l.
#[derive(Debug, Clone)]
pub struct EnumerationSpec {
    pub prime: u64,
    pub exponent: u32,
    pub constraint: Option<PairConstraint>,
    pub escalation_limit: u32,
}

impl EnumerationSpec {
    pub fn new(prime: u64, exponent: u32) -> EnumerationSpec {
        EnumerationSpec {
            prime,
            exponent,
            constraint: None,
            escalation_limit: exponent + 8,
        }
    }

    pub fn with_constraint(mut self, c: PairConstraint) -> EnumerationSpec {
        self.constraint = Some(c);
        self
    }

    pub fn modulus(&self) -> Option<u64> {
        self.prime.checked_pow(self.exponent)
    }
}

/// Attained residues of F(m, n) mod p^l, canonicalized into (t, a) classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClassSet {
    pub prime: u64,
    pub exponent: u32,
    pub attained: BTreeSet<u64>,
    pub canonical: Vec<CanonicalClass>,
    pub saturated_zero: bool,
}

impl ResidueClassSet {
    /// Units attained at valuation t, reduced modulo `m`.
    pub fn units_at(&self, t: u32, m: u64) -> BTreeSet<u64> {
        self.canonical
            .iter()
            .filter(|c| c.t == t)
            .map(|c| c.unit % m)
            .collect()
    }

    pub fn attained_t_values(&self) -> BTreeSet<u32> {
        self.canonical.iter().map(|c| c.t).collect()
    }
}

const SCAN_BOUND: u64 = 20_000;

/// Exhaustively enumerates the attained classes. Deterministic; the grid may
/// be scanned in parallel because the merge is a set union.
pub fn enumerate_classes(
    f: &IntPoly,
    spec: &EnumerationSpec,
) -> Result<ResidueClassSet, EngineError> {
    let p = spec.prime;
    let modulus = spec
        .modulus()
        .filter(|&m| m <= SCAN_BOUND)
        .ok_or(EngineError::ModulusTooLarge(p, spec.exponent))?;
    let deg = f.degree().unwrap_or(0);
    let coeffs: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.mod_floor(&crate::exact::ExactInt::from(modulus));
            u64::try_from(&r).unwrap()
        })
        .collect();
    let eval_row = |m: u64| -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        // powers of m mod modulus
        let mut mp = vec![1u64; deg + 1];
        for i in 1..=deg {
            mp[i] = mp[i - 1] * m % modulus;
        }
        for n in 0..modulus {
            if m.is_multiple_of(p) && n.is_multiple_of(p) {
                continue;
            }
            if let Some(PairConstraint::MEqualsNMod3) = spec.constraint {
                if (m % 3) != (n % 3) {
                    continue;
                }
            }
            let mut acc = 0u64;
            let mut npow = 1u64;
            // sum coeffs[i] * m^i * n^(deg-i): iterate i descending so the
            // running n-power matches deg - i
            for i in (0..=deg).rev() {
                if !coeffs.is_empty() {
                    acc = (acc + coeffs[i] * mp[i] % modulus * npow) % modulus;
                }
                if i > 0 {
                    npow = npow * n % modulus;
                }
            }
            out.insert(acc);
        }
        out
    };
    let attained: BTreeSet<u64> = if modulus >= 64 {
        (0..modulus)
            .into_par_iter()
            .map(eval_row)
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    } else {
        let mut acc = BTreeSet::new();
        for m in 0..modulus {
            acc.extend(eval_row(m));
        }
        acc
    };
    Ok(canonicalize(p, spec.exponent, attained))
}

pub fn canonicalize(p: u64, exponent: u32, attained: BTreeSet<u64>) -> ResidueClassSet {
    let saturated_zero = attained.contains(&0);
    let mut canon = BTreeSet::new();
    for &r in &attained {
        if r == 0 {
            continue;
        }
        let mut t = 0u32;
        let mut u = r;
        while u % p == 0 {
            u /= p;
            t += 1;
        }
        let unit_mod = p.pow(exponent - t);
        canon.insert(CanonicalClass::new(p, exponent, t, u % unit_mod));
    }
    ResidueClassSet {
        prime: p,
        exponent,
        attained,
        canonical: canon.into_iter().collect(),
        saturated_zero,
    }
}

/// Outcome of the enumerate -> deduce -> summarize pipeline for one (N, p).
#[derive(Debug, Clone)]
pub struct DeductionOutcome {
    pub level: u32,
    pub prime: u64,
    /// Exponent the pipeline settled on (after any escalation).
    pub exponent: u32,
    pub escalated: bool,
    pub classes: ResidueClassSet,
    pub constraints: DConstraints,
    pub summary: BehaviourSummary,
}

/// Runs the registered enumeration for (N, p), escalating the modulus when a
/// zero residue is attained (odd p: l + 2, p = 2: l + 1, bounded by the
/// escalation limit), then deduces admissible residues of D and summarizes.
pub fn run_registered_deduction(
    registry: &Registry,
    level: u32,
    prime: u64,
) -> Result<DeductionOutcome, EngineError> {
    let curve = registry.get_curve(level)?;
    let base = curve
        .enum_specs
        .iter()
        .find(|s| s.prime == prime && s.constraint.is_none())
        .ok_or(EngineError::NoRegisteredSpec(level, prime))?;
    let mut spec = EnumerationSpec::new(prime, base.exponent);
    let mut escalated = false;
    loop {
        let classes = enumerate_classes(&curve.f, &spec)?;
        if classes.saturated_zero {
            let step = if prime == 2 { 1 } else { 2 };
            let next = spec.exponent + step;
            if next > spec.escalation_limit {
                return Err(EngineError::EscalationExceeded(prime, spec.exponent));
            }
            spec.exponent = next;
            escalated = true;
            continue;
        }
        let constraints = deduce_d_constraints(&classes.canonical, prime)?;
        let summary = summarize_behaviour(&constraints);
        return Ok(DeductionOutcome {
            level,
            prime,
            exponent: spec.exponent,
            escalated,
            classes,
            constraints,
            summary,
        });
    }
}
