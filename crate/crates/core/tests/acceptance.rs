//! Acceptance suite: one test per criterion, each printing a PASS line (run
//! with `cargo test --test acceptance -- --nocapture` to see them). All
//! arithmetic is exact, so every comparison is exact equality; the only
//! tolerances are the stated wall-clock budgets.

use primesplit::curvedb::{PairConstraint, Registry};
use primesplit::engine::{enumerate_classes, run_registered_deduction, EngineError, EnumerationSpec};
use primesplit::exact::{
    self, factor, gcd, kronecker, legendre, squarefree_part, valuation, ExactInt, ExactRat,
};
use primesplit::poly::{discriminant, resultant, IntPoly};
use primesplit::splitting::{classify_prime, SplitBehavior};
use primesplit::verify;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::Instant;

fn int(v: i64) -> ExactInt {
    ExactInt::from(v)
}

fn rat(n: i64, d: i64) -> ExactRat {
    ExactRat::new(int(n), int(d))
}

#[test]
fn criterion_1_table4_reproduction() {
    let reg = Registry::global();
    let started = Instant::now();
    for curve in reg.curves() {
        let computed = verify::table4_unramified(reg, curve.level);
        assert_eq!(
            computed, curve.unramified_le_100,
            "unramified row mismatch at level {}",
            curve.level
        );
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "table 4 took {elapsed:?}, budget 5 s"
    );
    println!(
        "PASS criterion-1: all 18 unramified rows reproduced exactly in {:.2}s",
        elapsed.as_secs_f64()
    );
}

/// Golden attained-class data for every registered enumeration, frozen from
/// an independent exhaustive computation. Each entry lists the attained
/// valuations t with the unit sets at the stated precision, and whether the
/// zero residue is attained.
struct GoldenEnum {
    level: u32,
    p: u64,
    l: u32,
    constrained: bool,
    zero: bool,
    classes: &'static [(u32, u64, &'static [u64])], // (t, unit modulus, units)
}

const GOLDEN_ENUMS: &[GoldenEnum] = &[
    GoldenEnum { level: 22, p: 2, l: 9, constrained: false, zero: false,
        classes: &[(0, 8, &[1]), (5, 8, &[1, 3, 5, 7]), (6, 8, &[1])] },
    GoldenEnum { level: 26, p: 2, l: 7, constrained: false, zero: false,
        classes: &[(0, 8, &[1]), (2, 8, &[5]), (4, 8, &[3, 7]), (6, 2, &[1])] },
    GoldenEnum { level: 26, p: 13, l: 2, constrained: false, zero: false,
        classes: &[(0, 13, &[1, 3, 4, 9, 10, 12]), (1, 13, &[4, 9])] },
    GoldenEnum { level: 28, p: 3, l: 1, constrained: false, zero: false,
        classes: &[(0, 3, &[1])] },
    // recomputation: the attained units at t = 0 are {1, 4} mod 7, not the
    // printed {1, 2, 4}; the deduced D-residues {0, 1, 2, 4} agree either way
    GoldenEnum { level: 28, p: 7, l: 2, constrained: false, zero: false,
        classes: &[(0, 7, &[1, 4]), (1, 7, &[2])] },
    GoldenEnum { level: 29, p: 2, l: 5, constrained: false, zero: false,
        classes: &[(0, 8, &[1]), (2, 8, &[3, 7]), (4, 2, &[1])] },
    GoldenEnum { level: 30, p: 2, l: 7, constrained: false, zero: false,
        classes: &[(0, 8, &[1]), (4, 8, &[1])] },
    GoldenEnum { level: 30, p: 3, l: 1, constrained: false, zero: false,
        classes: &[(0, 3, &[1])] },
    GoldenEnum { level: 30, p: 5, l: 2, constrained: false, zero: false,
        classes: &[(0, 5, &[1]), (1, 5, &[1])] },
    GoldenEnum { level: 33, p: 2, l: 3, constrained: false, zero: false,
        classes: &[(0, 8, &[1])] },
    GoldenEnum { level: 35, p: 2, l: 2, constrained: false, zero: false,
        classes: &[(0, 4, &[1])] },
    GoldenEnum { level: 35, p: 5, l: 2, constrained: false, zero: false,
        classes: &[(0, 5, &[1]), (1, 5, &[1])] },
    GoldenEnum { level: 35, p: 7, l: 1, constrained: false, zero: false,
        classes: &[(0, 7, &[1, 2, 4])] },
    GoldenEnum { level: 39, p: 2, l: 2, constrained: false, zero: false,
        classes: &[(0, 4, &[1])] },
    GoldenEnum { level: 39, p: 13, l: 1, constrained: false, zero: false,
        classes: &[(0, 13, &[1, 3, 4, 9, 10, 12])] },
    // the constrained branch attains only odd-valuation classes; the
    // even-valuation alternative in the printed source belongs to the
    // complementary branch
    GoldenEnum { level: 39, p: 3, l: 4, constrained: true, zero: false,
        classes: &[(1, 3, &[2])] },
    GoldenEnum { level: 40, p: 2, l: 7, constrained: false, zero: false,
        classes: &[(0, 8, &[1]), (4, 8, &[1])] },
    GoldenEnum { level: 40, p: 3, l: 1, constrained: false, zero: false,
        classes: &[(0, 3, &[1])] },
    GoldenEnum { level: 40, p: 5, l: 1, constrained: false, zero: false,
        classes: &[(0, 5, &[1, 4])] },
    GoldenEnum { level: 46, p: 2, l: 9, constrained: false, zero: false,
        classes: &[(0, 8, &[1]), (6, 8, &[1])] },
    GoldenEnum { level: 48, p: 2, l: 7, constrained: false, zero: false,
        classes: &[(0, 8, &[1]), (4, 8, &[1])] },
    GoldenEnum { level: 48, p: 3, l: 1, constrained: false, zero: false,
        classes: &[(0, 3, &[1])] },
    GoldenEnum { level: 48, p: 5, l: 1, constrained: false, zero: false,
        classes: &[(0, 5, &[1])] },
    GoldenEnum { level: 50, p: 5, l: 1, constrained: false, zero: true,
        classes: &[(0, 5, &[1, 4])] },
    GoldenEnum { level: 50, p: 2, l: 7, constrained: false, zero: false,
        classes: &[(0, 8, &[1]), (2, 8, &[5]), (4, 8, &[3, 7]), (6, 2, &[1])] },
];

#[test]
fn criterion_2_enumeration_reproduction() {
    let reg = Registry::global();
    for g in GOLDEN_ENUMS {
        let started = Instant::now();
        let curve = reg.get_curve(g.level).unwrap();
        let mut spec = EnumerationSpec::new(g.p, g.l);
        if g.constrained {
            spec = spec.with_constraint(PairConstraint::MEqualsNMod3);
        }
        let set = enumerate_classes(&curve.f, &spec).unwrap();
        assert_eq!(set.saturated_zero, g.zero, "zero flag at ({}, {})", g.level, g.p);
        let want_ts: BTreeSet<u32> = g.classes.iter().map(|(t, _, _)| *t).collect();
        assert_eq!(
            set.attained_t_values(),
            want_ts,
            "attained valuations at ({}, {}^{})",
            g.level,
            g.p,
            g.l
        );
        for (t, m, units) in g.classes {
            let got = set.units_at(*t, *m);
            let want: BTreeSet<u64> = units.iter().copied().collect();
            assert_eq!(
                got, want,
                "units at level {} p^l = {}^{} t = {t} (mod {m})",
                g.level, g.p, g.l
            );
        }
        let elapsed = started.elapsed();
        assert!(
            elapsed.as_secs_f64() < 2.0,
            "enumeration ({}, {}^{}) took {elapsed:?}",
            g.level,
            g.p,
            g.l
        );
    }
    // level 41 has no enumeration: its verdict comes from the symbol product
    assert!(matches!(
        run_registered_deduction(reg, 41, 41),
        Err(EngineError::NoRegisteredSpec(41, 41))
    ));
    println!(
        "PASS criterion-2: {} registered enumerations reproduced (one printed unit-set and one printed branch corrected by recomputation)",
        GOLDEN_ENUMS.len()
    );
}

#[test]
fn criterion_3_table2_deduction() {
    let reg = Registry::global();
    let mut cells = 0usize;
    for curve in reg.curves() {
        let reports = verify::check_table2_deduction(reg, curve.level);
        for r in &reports {
            assert!(r.is_pass(), "{r:?}");
        }
        cells += reports.len();
    }
    // footnote residue sets are pinned exactly
    let d22 = run_registered_deduction(reg, 22, 2).unwrap();
    assert_eq!(
        d22.constraints.residues.iter().copied().collect::<Vec<_>>(),
        vec![1, 2, 6]
    );
    for level in [30u32, 35] {
        let d5 = run_registered_deduction(reg, level, 5).unwrap();
        assert_eq!(
            d5.constraints.residues.iter().copied().collect::<Vec<_>>(),
            vec![0, 1, 4],
            "engine residues at ({level}, 5)"
        );
    }
    println!("PASS criterion-3: every splitting-table verdict reproduced by the pipeline ({cells} checks)");
}

#[test]
fn criterion_4_disc_and_quadratic_factorizations() {
    let reg = Registry::global();
    for r in reg.validate() {
        assert!(r.is_pass(), "{r:?}");
    }
    // the two named spot values
    let c26 = reg.get_curve(26).unwrap();
    assert_eq!(
        discriminant(&c26.factors_z[0]).unwrap(),
        int(2).pow(20) * int(13).pow(3)
    );
    let c35 = reg.get_curve(35).unwrap();
    assert_eq!(
        discriminant(&c35.factors_z[1]).unwrap(),
        int(2).pow(8) * int(5).pow(7) * int(7).pow(2)
    );
    let rows: usize = reg
        .curves()
        .iter()
        .map(|c| c.quad_factorizations.len())
        .sum();
    assert_eq!(rows, 13, "tabulated radicand rows");
    println!("PASS criterion-4: all published discriminants and quadratic-extension factorizations verified");
}

#[test]
fn criterion_5_ramification_witnesses() {
    let reg = Registry::global();
    for (level, a) in verify::WITNESS_PAIRS {
        let a = int(a);
        let curve = reg.get_curve(level).unwrap();
        for p in verify::witness_primes(&a, 3) {
            let started = Instant::now();
            let w = verify::find_ramification_witnesses(curve, &a, p, 5).unwrap();
            assert_eq!(w.d_values.len(), 5);
            let distinct: BTreeSet<_> = w.d_values.iter().collect();
            assert_eq!(distinct.len(), 5, "witness parts must be distinct");
            for d in &w.d_values {
                assert_eq!(
                    valuation(&ExactRat::from(d.clone()), &int(p as i64))
                        .unwrap()
                        .finite(),
                    1,
                    "v_p(D) = 1 at ({level}, {p})"
                );
                assert_eq!(classify_prime(d, p), Ok(SplitBehavior::Ramified));
                let dec = squarefree_part(&ExactRat::from(d.clone())).unwrap();
                assert_eq!(&dec.d_free, d, "witness parts are squarefree");
            }
            let elapsed = started.elapsed();
            assert!(
                elapsed.as_secs_f64() < 10.0,
                "witnesses ({level}, {p}) took {elapsed:?}"
            );
        }
    }
    println!("PASS criterion-5: five distinct squarefree witnesses at each of the twelve (level, prime) pairs");
}

#[test]
fn criterion_6_sampling_soundness() {
    let reg = Registry::global();
    for curve in reg.curves() {
        let started = Instant::now();
        let reports = verify::check_table2(reg, curve.level, 200);
        for r in &reports {
            assert!(r.is_pass(), "{r:?}");
        }
        let elapsed = started.elapsed();
        assert!(
            elapsed.as_secs_f64() < 10.0,
            "level {} sampling took {elapsed:?}",
            curve.level
        );
    }
    println!("PASS criterion-6: height-200 samples satisfy every expectation and deduced residue set on all 18 curves");
}

#[test]
fn criterion_7_section3_resultants() {
    let reg = Registry::global();
    let ids = primesplit::cubic::verify_resultant_identities(&reg.cubic);
    let get = |name: &str| {
        ids.iter()
            .find(|i| i.name == name)
            .unwrap_or_else(|| panic!("missing identity {name}"))
    };
    // recomputed values; the printed claims for the first three do not hold
    // on the printed polynomials and are reported as documented mismatches
    assert_eq!(get("res(c3, g2 g6 g12)").computed_abs, 2401.to_string());
    assert_eq!(get("res(c3, g2 g6 g12)").matches_claim, Some(false));
    assert_eq!(
        get("res(h12, g2 g6 g12)").computed_abs,
        (ExactInt::from(2).pow(60) * ExactInt::from(7).pow(4)).to_string()
    );
    assert_eq!(get("res(h12, g_delta)").computed_abs, 117649.to_string());
    // the degree-one identities match the printed value 1 exactly
    for name in [
        "res(u, g_delta / u^14)",
        "res(u, g2 g6 g12)",
        "res(u+1, g_delta / (u+1)^14)",
        "res(u+1, g2 g6 g12)",
        "res(v, reciprocal-delta numerator)",
    ] {
        assert_eq!(get(name).matches_claim, Some(true), "{name}");
    }
    // interpretations of the printed powers of 7: the c4 denominator h12^4
    // reproduces 7^12; none of the documented candidates reproduces 7^30
    assert_eq!(get("res(c3, h12^4) [c4 denominator]").matches_claim, Some(true));
    for name in [
        "res(c3, u^14 (u+1)^14) [literal delta/c3^2]",
        "res(c3, u^14 (u+1)^14 g6^2) [g6^2-adjusted delta/c3^2]",
        "res(c3, jnum)",
        "res(c3, h12^12) [delta denominator]",
    ] {
        assert_eq!(get(name).matches_claim, Some(false), "{name}");
    }
    // the consequence the classifier needs survives: interference only at 2
    // and 7, both covered
    for r in primesplit::cubic::check_resultant_consequences(&reg.cubic) {
        assert!(r.is_pass(), "{r:?}");
    }
    for r in primesplit::cubic::verify_mod2_structure(&reg.cubic) {
        assert!(r.is_pass(), "{r:?}");
    }
    println!("PASS criterion-7: resultants recomputed; degree-one claims match, the 7^12/7^30/unit claims are documented mismatches with the non-interference consequence verified");
}

#[test]
fn criterion_8_reduction_classifier_coherence() {
    let reg = Registry::global();
    for r in verify::check_reduction_coherence(reg, 200) {
        assert!(r.is_pass(), "{r:?}");
    }
    // every multiplicative verdict has n = 0 (mod 14), or n even with
    // p = +-1 (mod 7), matching the stated dichotomy
    let data = &reg.cubic;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut checked = 0;
    while checked < 200 {
        let m = rng.gen_range(-50i64..=50);
        let n = rng.gen_range(1i64..=50);
        if m == 0 || m == -n || gcd(&int(m), &int(n)) != int(1) {
            continue;
        }
        let p = [2u64, 3, 5, 7, 11, 13, 29, 41, 43, 97][rng.gen_range(0..10)];
        checked += 1;
        let u = rat(m, n);
        if let primesplit::cubic::ReductionKind::Multiplicative { components } =
            primesplit::cubic::classify_reduction(data, &u, p).unwrap().kind
        {
            let ok = components % 14 == 0 || (components % 2 == 0 && (p % 7 == 1 || p % 7 == 6));
            assert!(ok, "dichotomy fails at u = {m}/{n}, p = {p}: I_{components}");
        }
    }
    println!("PASS criterion-8: classifier agrees with the j-valuation criterion on 200 samples; p = 2 verdicts all I_14k");
}

#[test]
fn criterion_9_property_suites() {
    let reg = Registry::global();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    let small_primes: Vec<i64> = (3..1000)
        .filter(|&p| exact::is_prime_u128(p as u128))
        .collect();

    // symbol multiplicativity: (ab/p) = (a/p)(b/p)
    for _ in 0..1000 {
        let p = small_primes[rng.gen_range(0..small_primes.len())];
        let a = rng.gen_range(-500i64..500);
        let b = rng.gen_range(-500i64..500);
        let lhs = legendre(&(int(a) * int(b)), &int(p)).unwrap();
        let rhs = legendre(&int(a), &int(p)).unwrap() * legendre(&int(b), &int(p)).unwrap();
        assert_eq!(lhs, rhs, "multiplicativity at a={a} b={b} p={p}");
    }

    // kronecker extends legendre
    for _ in 0..1000 {
        let p = small_primes[rng.gen_range(0..small_primes.len())];
        let a = rng.gen_range(-500i64..500);
        assert_eq!(
            kronecker(&int(a), &int(p)),
            legendre(&int(a), &int(p)).unwrap()
        );
    }

    // valuation additivity: v_p(xy) = v_p(x) + v_p(y)
    for _ in 0..1000 {
        let p = int(*[2i64, 3, 5, 7, 13].get(rng.gen_range(0..5)).unwrap());
        let x = rat(rng.gen_range(-3000i64..3000), rng.gen_range(1i64..500));
        let y = rat(rng.gen_range(-3000i64..3000), rng.gen_range(1i64..500));
        if x == rat(0, 1) || y == rat(0, 1) {
            continue;
        }
        let vx = valuation(&x, &p).unwrap().finite();
        let vy = valuation(&y, &p).unwrap().finite();
        let vxy = valuation(&(&x * &y), &p).unwrap().finite();
        assert_eq!(vxy, vx + vy);
    }

    // squarefree recomposition d = D s^2
    for _ in 0..1000 {
        let d = rat(rng.gen_range(-100_000i64..100_000), rng.gen_range(1i64..1000));
        if d == rat(0, 1) {
            continue;
        }
        let dec = squarefree_part(&d).unwrap();
        assert_eq!(dec.recompose(), d);
        // squarefreeness of the free part
        for (_, e) in factor(&dec.d_free) {
            assert_eq!(e, 1);
        }
    }

    // resultant multiplicativity res(f, gh) = res(f, g) res(f, h)
    let rand_poly = |rng: &mut ChaCha8Rng, maxdeg: usize| -> IntPoly {
        loop {
            let deg = rng.gen_range(1..=maxdeg);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-6i64..=6)).collect();
            let p = IntPoly::from_i64(&coeffs);
            if p.degree() == Some(deg) {
                return p;
            }
        }
    };
    for _ in 0..1000 {
        let f = rand_poly(&mut rng, 4);
        let g = rand_poly(&mut rng, 3);
        let h = rand_poly(&mut rng, 3);
        let lhs = resultant(&f, &g.mul(&h)).unwrap();
        let rhs = resultant(&f, &g).unwrap() * resultant(&f, &h).unwrap();
        assert_eq!(lhs, rhs);
    }

    // root-product law: res(f, g) = lc(f)^deg(g) prod g(alpha_i) for split f
    for _ in 0..1000 {
        let lc = rng.gen_range(1i64..=3);
        let roots: Vec<i64> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(-5i64..=5)).collect();
        let mut f = IntPoly::from_i64(&[lc]);
        for &r in &roots {
            f = f.mul(&IntPoly::linear_root(r));
        }
        let g = rand_poly(&mut rng, 3);
        let mut expect = int(lc).pow(g.degree().unwrap() as u32);
        for &r in &roots {
            expect *= g.eval_int(&int(r));
        }
        assert_eq!(resultant(&f, &g).unwrap(), expect);
    }

    // homogeneous evaluation against the rational route
    for _ in 0..1000 {
        let f = rand_poly(&mut rng, 6);
        let m = rng.gen_range(-40i64..=40);
        let n = rng.gen_range(1i64..=40);
        let deg = f.degree().unwrap() as i32;
        let lhs = ExactRat::from(f.eval_homogeneous(&int(m), &int(n)));
        let rhs = f.eval_rat(&rat(m, n)) * rat(n, 1).pow(deg);
        assert_eq!(lhs, rhs);
    }

    // discriminant of a monic quadratic is b^2 - 4c
    for _ in 0..1000 {
        let b = rng.gen_range(-30i64..=30);
        let c = rng.gen_range(-30i64..=30);
        let f = IntPoly::from_i64(&[c, b, 1]);
        assert_eq!(discriminant(&f).unwrap(), int(b * b - 4 * c));
    }

    // classify_prime against root counting of x^2 - D
    let mut cases = 0;
    while cases < 1000 {
        let d = rng.gen_range(-300i64..=300);
        let dd = int(d);
        if d == 0 || d == 1 {
            continue;
        }
        let dec = squarefree_part(&ExactRat::from(dd)).unwrap();
        let dfree = dec.d_free.clone();
        if dfree == int(1) {
            continue;
        }
        let p = small_primes[rng.gen_range(0..30)] as u64;
        cases += 1;
        let roots = (0..p)
            .filter(|&x| {
                let v = (int(x as i64) * int(x as i64) - &dfree)
                    % int(p as i64);
                num_integer::Integer::mod_floor(&v, &int(p as i64)) == int(0)
            })
            .count();
        let got = classify_prime(&dfree, p).unwrap();
        let want = if num_integer::Integer::mod_floor(&dfree, &int(p as i64)) == int(0) {
            SplitBehavior::Ramified
        } else if roots == 2 {
            SplitBehavior::Split
        } else {
            SplitBehavior::Inert
        };
        assert_eq!(got, want, "D = {dfree}, p = {p}");
    }

    // homogeneity of lifts and sampling soundness against the attained sets
    let f30 = &reg.get_curve(30).unwrap().f;
    let spec = EnumerationSpec::new(5, 2);
    let set = enumerate_classes(f30, &spec).unwrap();
    let mut checked = 0;
    while checked < 1000 {
        let m = rng.gen_range(-1000i64..=1000);
        let n = rng.gen_range(1i64..=1000);
        if gcd(&int(m), &int(n)) != int(1) || (m % 5 == 0 && n % 5 == 0) {
            continue;
        }
        checked += 1;
        let v = f30.eval_homogeneous(&int(m), &int(n));
        let r = num_integer::Integer::mod_floor(&v, &int(25));
        let r = u64::try_from(&r).unwrap();
        assert!(
            set.attained.contains(&r),
            "F_30({m},{n}) = {r} (mod 25) escapes the attained set"
        );
    }

    // unit scaling: the attained set is stable under (m, n) -> (um, un)
    let f22 = &reg.get_curve(22).unwrap().f;
    let m8 = 8i64;
    for u in [1i64, 3, 5, 7] {
        for m in 0..m8 {
            for n in 0..m8 {
                if m % 2 == 0 && n % 2 == 0 {
                    continue;
                }
                let a = f22.eval_homogeneous(&int(m), &int(n));
                let b = f22.eval_homogeneous(&int(u * m % m8), &int(u * n % m8));
                let ca = num_integer::Integer::mod_floor(&a, &int(m8));
                let cb = num_integer::Integer::mod_floor(&b, &int(m8));
                // scaling multiplies by u^deg, a unit square times u^(deg mod 2)
                let udeg = int(u).pow(6);
                let scaled = num_integer::Integer::mod_floor(&(ca * udeg), &int(m8));
                assert_eq!(scaled, cb);
            }
        }
    }

    println!("PASS criterion-9: randomized property suites (1000 cases each, fixed seed) all hold");
}

#[test]
fn spot_examples_from_named_operations() {
    // gcd / valuation / squarefree / legendre / kronecker examples
    assert_eq!(gcd(&int(12), &int(18)), int(6));
    assert_eq!(valuation(&rat(377, 1), &int(13)).unwrap().finite(), 1);
    let d = squarefree_part(&rat(112, 1)).unwrap();
    assert_eq!((d.d_free, d.scale), (int(7), rat(4, 1)));
    assert_eq!(legendre(&int(2), &int(41)).unwrap(), 1);
    assert_eq!(kronecker(&int(5), &int(11)), 1);
    // classify_prime spot examples
    assert_eq!(classify_prime(&int(5), 2), Ok(SplitBehavior::Inert));
    assert_eq!(classify_prime(&int(-7), 2), Ok(SplitBehavior::Split));
    // f_22 and f_26 homogeneous values at (1, 1)
    let reg = Registry::global();
    assert_eq!(
        reg.get_curve(22).unwrap().f.eval_homogeneous(&int(1), &int(1)),
        int(-7)
    );
    assert_eq!(
        reg.get_curve(26).unwrap().f.eval_homogeneous(&int(1), &int(1)),
        int(-16)
    );
    println!("PASS spot-examples");
}
