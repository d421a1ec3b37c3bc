//! The quadratic-form rewritings and congruences used by the residue
//! eliminations, verified as exact coefficient-wise polynomial identities in
//! (m, n). Three of the printed forms carry typos (a dropped factor 4 and two
//! garbled squares); the registered versions are the recomputed identities
//! with the same consequences, and expansion is the arbiter.

use crate::curvedb::Registry;
use crate::poly::BivarIntPoly;
use crate::report::CheckReport;

fn t(c: i64, dm: u32, dn: u32) -> BivarIntPoly {
    BivarIntPoly::mono(c, dm, dn)
}

fn terms(list: &[(i64, u32, u32)]) -> BivarIntPoly {
    BivarIntPoly::from_terms(list)
}

pub struct Identity {
    pub id: String,
    pub lhs: BivarIntPoly,
    pub rhs: BivarIntPoly,
    /// Coefficient-wise congruence modulus; None means exact equality.
    pub modulus: Option<u64>,
}

impl Identity {
    fn exact(id: &str, lhs: BivarIntPoly, rhs: BivarIntPoly) -> Identity {
        Identity { id: id.into(), lhs, rhs, modulus: None }
    }

    fn modular(id: &str, lhs: BivarIntPoly, rhs: BivarIntPoly, modulus: u64) -> Identity {
        Identity { id: id.into(), lhs, rhs, modulus: Some(modulus) }
    }

    pub fn holds(&self) -> bool {
        let diff = self.lhs.sub(&self.rhs);
        match self.modulus {
            None => diff.is_zero(),
            Some(m) => diff.divisible_by(m),
        }
    }
}

/// All registered hand-derived identities.
pub fn registered_identities(registry: &Registry) -> Vec<Identity> {
    let homog = |level: u32| BivarIntPoly::homogenize(&registry.get_curve(level).unwrap().f);
    let mut out = vec![];

    // level 30: the three factor rewritings behind the mod-5 elimination
    let q30_1 = terms(&[(1, 2, 0), (6, 1, 1), (4, 0, 2)]);
    let q30_2 = terms(&[(1, 2, 0), (3, 1, 1), (1, 0, 2)]);
    let q30_4 = terms(&[(1, 4, 0), (5, 3, 1), (11, 2, 2), (10, 1, 3), (4, 0, 4)]);
    out.push(Identity::exact(
        "identity.30.factorization",
        homog(30),
        q30_1.mul(&q30_2).mul(&q30_4),
    ));
    out.push(Identity::exact(
        "identity.30.first_factor",
        q30_1.clone(),
        terms(&[(1, 1, 0), (3, 0, 1)]).pow(2).sub(&t(5, 0, 2)),
    ));
    out.push(Identity::exact(
        "identity.30.second_factor",
        q30_2.scale(4),
        terms(&[(2, 1, 0), (3, 0, 1)]).pow(2).sub(&t(5, 0, 2)),
    ));
    out.push(Identity::exact(
        "identity.30.quartic_minus3",
        q30_4.scale(4),
        terms(&[(2, 2, 0), (5, 1, 1), (4, 0, 2)])
            .pow(2)
            .add(&t(3, 2, 2)),
    ));
    out.push(Identity::exact(
        "identity.30.quartic_minus15",
        q30_4.scale(4),
        terms(&[(2, 2, 0), (5, 1, 1), (1, 0, 2)])
            .pow(2)
            .add(&terms(&[(1, 1, 1), (1, 0, 2)]).pow(2).scale(15)),
    ));

    // level 35: the two rewritings behind its mod-5 elimination
    let q35_1 = terms(&[(-1, 2, 0), (-1, 1, 1), (1, 0, 2)]);
    let q35_6 = terms(&[(-1, 6, 0), (5, 5, 1), (9, 3, 3), (5, 1, 5), (1, 0, 6)]);
    out.push(Identity::exact(
        "identity.35.factorization",
        homog(35),
        q35_1.mul(&q35_6),
    ));
    out.push(Identity::exact(
        "identity.35.quadratic_factor",
        q35_1.scale(-4),
        terms(&[(2, 1, 0), (1, 0, 1)]).pow(2).sub(&t(5, 0, 2)),
    ));
    out.push(Identity::exact(
        "identity.35.sextic_factor",
        q35_6.scale(4),
        terms(&[(4, 3, 0), (5, 2, 1), (5, 1, 2), (2, 0, 3)])
            .pow(2)
            .sub(&terms(&[(2, 3, 0), (1, 2, 1), (3, 1, 2)]).pow(2).scale(5)),
    ));

    // level 39: the form is congruent to (m^4 - n^4)^2 mod 3
    out.push(Identity::modular(
        "identity.39.mod3_square",
        homog(39),
        terms(&[(1, 4, 0), (-1, 0, 4)]).pow(2),
        3,
    ));

    // level 40: exact square-plus-positive rewritings
    out.push(Identity::exact(
        "identity.40.two_adic",
        homog(40),
        terms(&[(1, 4, 0), (-1, 0, 4)]).pow(2).add(
            &t(8, 2, 2).mul(&terms(&[(1, 4, 0), (1, 0, 4)])),
        ),
    ));
    out.push(Identity::exact(
        "identity.40.sum_of_two_squares",
        homog(40),
        terms(&[(1, 2, 0), (1, 0, 2)]).pow(4).add(
            &terms(&[(2, 1, 1)])
                .mul(&terms(&[(1, 2, 0), (-1, 0, 2)]))
                .pow(2),
        ),
    ));

    // level 48
    out.push(Identity::exact(
        "identity.48.two_adic",
        homog(48),
        terms(&[(1, 4, 0), (1, 0, 4)]).pow(2).add(&t(12, 4, 4)),
    ));

    // level 50: congruent to (m^3 - n^3)^2 mod 4
    out.push(Identity::modular(
        "identity.50.mod4_square",
        homog(50),
        terms(&[(1, 3, 0), (-1, 0, 3)]).pow(2),
        4,
    ));

    out
}

/// Verifies every registered identity, plus the pointwise mod-5 congruence
/// for level 50 (a value congruence via Fermat reduction, not a
/// coefficient-wise one).
pub fn check_identities(registry: &Registry) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = registered_identities(registry)
        .iter()
        .map(|ident| {
            CheckReport::from_bool(ident.id.clone(), ident.holds(), || {
                vec!["expanded difference is nonzero".into()]
            })
        })
        .collect();
    // F_50(m, n) = (m + n)^2 (mod 5) for all residue pairs
    let f50 = &registry.get_curve(50).unwrap().f;
    let mut ok = true;
    for m in 0..5i64 {
        for n in 0..5i64 {
            let lhs = f50.eval_homogeneous(
                &crate::exact::ExactInt::from(m),
                &crate::exact::ExactInt::from(n),
            );
            let rhs = crate::exact::ExactInt::from((m + n) * (m + n));
            if !num_integer::Integer::mod_floor(&(lhs - rhs), &crate::exact::ExactInt::from(5))
                .eq(&crate::exact::ExactInt::from(0))
            {
                ok = false;
            }
        }
    }
    out.push(CheckReport::from_bool(
        "identity.50.mod5_pointwise",
        ok,
        || vec!["F_50(m,n) != (m+n)^2 mod 5 for some residues".into()],
    ));
    out
}
