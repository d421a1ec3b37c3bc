//! Table-level verification suites: reproduction of the splitting table
//! through the enumeration pipeline, the hand-derived identities, the
//! ramification-radicand rows, ramification witnesses, the unramified-prime
//! table, and empirical sampling of quadratic points.

pub mod identities;
pub mod reciprocity;
pub mod sample;
pub mod table2;
pub mod table4;
pub mod radicand;
pub mod witness;

pub use identities::check_identities;
pub use reciprocity::check_reciprocity_chain;
pub use sample::{decompose_point, sample_points, PointFacts, PointKind, SampledPoint};
pub use table2::check_table2;
pub use table4::{check_table4, rootless_primes, table4_unramified};
pub use radicand::{factor_discriminant_square, check_radicand_criterion, radicand_levels, RadicandError};
pub use witness::{
    find_ramification_witnesses, witness_primes, RamificationWitness, WitnessError,
    WITNESS_PAIRS,
};

use crate::cubic;
use crate::curvedb::{Registry, SplitExpectation};
use crate::engine::run_registered_deduction;
use crate::exact::{ExactInt, ExactRat};
use crate::report::{sort_reports, CheckReport};
use num_traits::{One, Signed};
use rayon::prelude::*;
use std::time::Instant;

/// Reproduces the published verdict cells for one level from the deduction
/// pipeline: enumeration plus residue rules for the engine-covered cells,
/// the positivity certificate for D > 0, identity eliminations for the mod-5
/// footnote, and the ramification-radicand route for the symbol-product rows.
pub fn check_table2_deduction(registry: &Registry, level: u32) -> Vec<CheckReport> {
    let curve = match registry.get_curve(level) {
        Ok(c) => c,
        Err(e) => {
            return vec![CheckReport::fail(
                format!("deduce.table2.{level}"),
                vec![e.to_string()],
            )]
        }
    };
    let mut out = vec![];
    let engine_primes: Vec<u64> = curve
        .enum_specs
        .iter()
        .filter(|s| s.constraint.is_none())
        .map(|s| s.prime)
        .collect();
    for &(p, e) in &curve.expectations {
        let id = format!("deduce.table2.{level}.{p}.{}", e.label());
        if engine_primes.contains(&p) {
            match run_registered_deduction(registry, level, p) {
                Ok(ded) => out.push(CheckReport::from_bool(id, ded.summary.covers(e), || {
                    vec![format!(
                        "pipeline found residues {:?}, verdicts {:?}",
                        ded.constraints.residues,
                        ded.summary.labels()
                    )]
                })),
                Err(err) => out.push(CheckReport::fail(id, vec![err.to_string()])),
            }
        } else {
            // reciprocity rows: not-inert via the radicand criterion plus the
            // symbol product over the prime factors of D
            debug_assert_eq!(e, SplitExpectation::NotInert);
            let radicand_ok = check_radicand_criterion(registry, level)
                .map(|rs| rs.iter().all(|r| r.is_pass()))
                .unwrap_or(false);
            out.push(CheckReport::from_bool(id, radicand_ok, || {
                vec!["radicand criterion failed, chain unsupported".into()]
            }));
        }
    }
    if curve.d_positive {
        // f has no real roots and a positive value, so d = f(x0) > 0 always
        let none = curve.f.real_root_count() == 0;
        let positive_somewhere = curve.f.constant().is_positive();
        out.push(CheckReport::from_bool(
            format!("deduce.table2.{level}.d_positive"),
            none && positive_somewhere,
            || vec![format!("real roots: {}", curve.f.real_root_count())],
        ));
    }
    if curve.d_odd {
        let ok = run_registered_deduction(registry, level, 2)
            .map(|d| !d.constraints.residues.is_empty() && d.constraints.residues.iter().all(|r| r % 2 == 1))
            .unwrap_or(false);
        out.push(CheckReport::from_bool(
            format!("deduce.table2.{level}.d_odd"),
            ok,
            || vec!["two-adic residues are not all odd".into()],
        ));
    }
    if let Some(set) = &curve.d_mod8 {
        let ok = run_registered_deduction(registry, level, 2)
            .map(|d| &d.constraints.residues == set)
            .unwrap_or(false);
        out.push(CheckReport::from_bool(
            format!("deduce.table2.{level}.d_mod8"),
            ok,
            || vec![format!("expected residues {set:?}")],
        ));
    }
    if let Some(set) = &curve.d_mod5 {
        // engine gives {0, 1, 4}; the quadratic-form identities eliminate 4
        let engine_set = run_registered_deduction(registry, level, 5)
            .map(|d| d.constraints.residues)
            .unwrap_or_default();
        let identities_ok = check_identities(registry)
            .iter()
            .filter(|r| r.id.contains(&format!(".{level}.")))
            .all(|r| r.is_pass());
        let mut refined = engine_set.clone();
        refined.remove(&4);
        out.push(CheckReport::from_bool(
            format!("deduce.table2.{level}.d_mod5"),
            engine_set.iter().all(|r| [0, 1, 4].contains(r)) && identities_ok && &refined == set,
            || {
                vec![format!(
                    "engine set {engine_set:?}, identities ok: {identities_ok}, footnote {set:?}"
                )]
            },
        ));
    }
    out
}

/// Deterministic xorshift stream for the in-library randomized sweeps.
pub(crate) struct XorShift(u64);

impl XorShift {
    pub(crate) fn new(seed: u64) -> XorShift {
        XorShift(seed.max(1))
    }

    pub(crate) fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub(crate) fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

/// Classifier coherence: on a deterministic pseudo-random sample of (u, p),
/// the valuation classifier and the j-valuation criterion agree exactly, and
/// at p = 2 every verdict is multiplicative of type I_{14k}.
pub fn check_reduction_coherence(registry: &Registry, cases: usize) -> Vec<CheckReport> {
    let data = &registry.cubic;
    let primes: Vec<u64> = table4::primes_to_100();
    let mut rng = XorShift::new(0x5eed_cafe);
    let mut agree = true;
    let mut witnesses = vec![];
    let mut tested = 0usize;
    while tested < cases {
        let m = rng.in_range(-50, 50);
        let n = rng.in_range(1, 50);
        if m == 0 || m == -n || num_integer::Integer::gcd(&m, &n) != 1 {
            continue;
        }
        let p = primes[(rng.next() % primes.len() as u64) as usize];
        let u = ExactRat::new(ExactInt::from(m), ExactInt::from(n));
        tested += 1;
        let verdict = cubic::classify_reduction(data, &u, p).expect("non-cusp");
        let oracle = cubic::multiplicative_by_j_criterion(data, &u, p).expect("non-cusp");
        let matches = match verdict.kind {
            cubic::ReductionKind::Multiplicative { components } => oracle == Some(components),
            cubic::ReductionKind::NonMultiplicative => oracle.is_none(),
        };
        if !matches {
            agree = false;
            if witnesses.len() < 5 {
                witnesses.push(format!("disagreement at u = {m}/{n}, p = {p}"));
            }
        }
    }
    let mut out = vec![CheckReport::from_bool(
        "cubic.coherence.j_criterion",
        agree,
        move || witnesses,
    )];
    // p = 2: always multiplicative of type I_{14k}
    let mut rng = XorShift::new(0xfeed_f00d);
    let mut two_ok = true;
    let mut two_witness = vec![];
    let mut tested = 0usize;
    while tested < cases {
        let m = rng.in_range(-50, 50);
        let n = rng.in_range(1, 50);
        if m == 0 || m == -n || num_integer::Integer::gcd(&m, &n) != 1 {
            continue;
        }
        tested += 1;
        let u = ExactRat::new(ExactInt::from(m), ExactInt::from(n));
        let v = cubic::classify_reduction(data, &u, 2).expect("non-cusp");
        let ok = matches!(v.kind, cubic::ReductionKind::Multiplicative { components } if components % 14 == 0);
        // the dichotomy behind it: v_2(u) != 0, or v_2(u) = 0 and v_2(u+1) > 0
        let vu = crate::exact::valuation(&u, &ExactInt::from(2)).unwrap().finite();
        let v1 = crate::exact::valuation(
            &(&u + ExactRat::one()),
            &ExactInt::from(2),
        )
        .unwrap()
        .finite();
        let dichotomy = vu != 0 || v1 > 0;
        if !(ok && dichotomy) {
            two_ok = false;
            if two_witness.len() < 5 {
                two_witness.push(format!("u = {m}/{n}: verdict {}", v.label()));
            }
        }
    }
    out.push(CheckReport::from_bool(
        "cubic.coherence.two_adic",
        two_ok,
        move || two_witness,
    ));
    out
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub height: i64,
    /// Height for the factoring leg of the reciprocity chains.
    pub factor_height: i64,
    pub level_filter: Option<u32>,
    pub coherence_cases: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            height: 200,
            factor_height: 60,
            level_filter: None,
            coherence_cases: 200,
        }
    }
}

/// The complete verification suite, ordered by check id.
pub fn run_all(registry: &Registry, opts: &VerifyOptions) -> Vec<CheckReport> {
    let levels: Vec<u32> = registry
        .curves()
        .iter()
        .map(|c| c.level)
        .filter(|l| opts.level_filter.is_none_or(|f| f == *l))
        .collect();
    let mut reports: Vec<CheckReport> = vec![];
    if opts.level_filter.is_none() {
        let t = Instant::now();
        reports.extend(registry.validate().into_iter().map(|r| r.timed(t)));
        reports.extend(check_identities(registry));
        let t = Instant::now();
        reports.extend(
            cubic::verify_resultant_identities(&registry.cubic)
                .iter()
                .map(|ident| {
                    CheckReport::pass_with(
                        format!("cubic.resultant.{}", ident.name.replace(' ', "_")),
                        vec![match (&ident.claimed_abs, ident.matches_claim) {
                            (Some(c), Some(true)) => {
                                format!("computed |{}| = {} (matches printed {c})", ident.name, ident.computed_abs)
                            }
                            (Some(c), _) => format!(
                                "computed |{}| = {}; printed value {c} is a documented mismatch",
                                ident.name, ident.computed_abs
                            ),
                            (None, _) => {
                                format!("computed |{}| = {}", ident.name, ident.computed_abs)
                            }
                        }],
                    )
                    .timed(t)
                }),
        );
        reports.extend(cubic::check_resultant_consequences(&registry.cubic));
        reports.extend(cubic::verify_mod2_structure(&registry.cubic));
        reports.extend(check_reduction_coherence(registry, opts.coherence_cases));
        reports.extend(check_table4(registry));
        for level in radicand_levels(registry) {
            match check_radicand_criterion(registry, level) {
                Ok(rs) => reports.extend(rs),
                Err(e) => reports.push(CheckReport::fail(
                    format!("verify.radicand.{level}"),
                    vec![e.to_string()],
                )),
            }
        }
        // ramification witnesses at the first three admissible primes
        for (level, a) in WITNESS_PAIRS {
            let a = ExactInt::from(a);
            let curve = registry.get_curve(level).expect("supported");
            for p in witness_primes(&a, 3) {
                let t = Instant::now();
                let id = format!("verify.witness.{level}.{p}");
                match find_ramification_witnesses(curve, &a, p, 5) {
                    Ok(w) => reports.push(
                        CheckReport::from_bool(id, w.d_values.len() == 5, || {
                            vec!["fewer than five distinct squarefree parts".into()]
                        })
                        .timed(t),
                    ),
                    Err(e) => reports.push(CheckReport::fail(id, vec![e.to_string()]).timed(t)),
                }
            }
        }
    }
    // per-level suites (deduction reproduction + sampling) in parallel
    let per_level: Vec<Vec<CheckReport>> = levels
        .par_iter()
        .map(|&level| {
            let t = Instant::now();
            let mut rs = check_table2_deduction(registry, level);
            rs.extend(check_table2(registry, level, opts.height));
            if reciprocity::chain_data(level).is_some() {
                rs.extend(check_reciprocity_chain(
                    registry,
                    level,
                    opts.height,
                    opts.factor_height,
                ));
            }
            rs.into_iter().map(|r| r.timed(t)).collect()
        })
        .collect();
    for rs in per_level {
        reports.extend(rs);
    }
    sort_reports(&mut reports);
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvedb::Registry;

    #[test]
    fn deduction_reproduces_table2_cells() {
        let reg = Registry::global();
        for level in [22u32, 26, 28, 30, 33, 35, 39, 40, 46, 48, 50] {
            for r in check_table2_deduction(reg, level) {
                assert!(r.is_pass(), "{r:?}");
            }
        }
    }

    #[test]
    fn coherence_small_sample() {
        let reg = Registry::global();
        for r in check_reduction_coherence(reg, 50) {
            assert!(r.is_pass(), "{r:?}");
        }
    }

    #[test]
    fn run_all_small_heights() {
        let reg = Registry::global();
        let opts = VerifyOptions {
            height: 8,
            factor_height: 6,
            level_filter: None,
            coherence_cases: 25,
        };
        let reports = run_all(reg, &opts);
        assert!(reports.len() >= 60, "only {} checks", reports.len());
        for r in &reports {
            assert!(r.is_pass(), "{r:?}");
        }
        // deterministic ordering
        let ids: Vec<_> = reports.iter().map(|r| r.id.clone()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }
}
