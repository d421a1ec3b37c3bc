//! The unramified-prime table: primes p <= 100 at which no quadratic point
//! field can ramify.
//!
//! The root criterion covers almost everything: if the homogenized model has
//! no zero in P^1(F_p), then p never divides D. Four rows additionally list
//! p = 2 on the strength of the two-adic enumerations (the deduced residues
//! of D are all 1 mod 4), so the table builder consults those deductions for
//! the prime 2 when the root criterion alone does not exclude it.

use crate::curvedb::Registry;
use crate::engine::run_registered_deduction;
use crate::report::CheckReport;

pub fn primes_to_100() -> Vec<u64> {
    (2..=100u64)
        .filter(|&p| crate::exact::is_prime_u128(p as u128))
        .collect()
}

/// Primes p <= 100 with no projective root of f_N mod p.
pub fn rootless_primes(registry: &Registry, level: u32) -> Vec<u64> {
    let curve = registry.get_curve(level).expect("supported level");
    primes_to_100()
        .into_iter()
        .filter(|&p| curve.f.roots_mod_p(p).is_empty_projective())
        .collect()
}

/// The full unramified list: root criterion, plus 2 when the registered
/// two-adic deduction pins D = 1 (mod 4).
pub fn table4_unramified(registry: &Registry, level: u32) -> Vec<u64> {
    let mut out = rootless_primes(registry, level);
    if !out.contains(&2) && two_adic_unramified(registry, level) {
        out.push(2);
        out.sort_unstable();
    }
    out
}

fn two_adic_unramified(registry: &Registry, level: u32) -> bool {
    let Ok(curve) = registry.get_curve(level) else {
        return false;
    };
    if !curve.enum_specs.iter().any(|s| s.prime == 2 && s.constraint.is_none()) {
        return false;
    }
    match run_registered_deduction(registry, level, 2) {
        Ok(out) => out.summary.unramified,
        Err(_) => false,
    }
}

/// Compares the computed table against the stored rows for every level.
pub fn check_table4(registry: &Registry) -> Vec<CheckReport> {
    registry
        .curves()
        .iter()
        .map(|c| {
            let computed = table4_unramified(registry, c.level);
            CheckReport::from_bool(
                format!("verify.table4.{}", c.level),
                computed == c.unramified_le_100,
                || {
                    vec![format!(
                        "computed {:?}, stored {:?}",
                        computed, c.unramified_le_100
                    )]
                },
            )
        })
        .collect()
}
