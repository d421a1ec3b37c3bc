//! Height-bounded enumeration of non-exceptional points x_0 = m/n and their
//! squarefree field data.
//!
//! Writing d = f_N(m/n), the denominator n^deg is an even power, so the
//! squarefree part of d equals the squarefree part of the integer
//! F_N(m, n) = n^deg f_N(m/n). Factoring goes through the stored integer
//! factorization of f_N, which keeps the piece values small.

use crate::curvedb::CurveModel;
use crate::exact::{factor, factor_u128, ExactInt, ExactRat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointKind {
    /// d is not a square: the point generates Q(sqrt(D)).
    Quadratic { d_free: ExactInt, scale: ExactRat },
    /// d is a nonzero rational square.
    Rational,
    /// f_N(x_0) = 0: a ramification point of the model, not a quadratic point.
    ModelRamification,
}

#[derive(Debug, Clone)]
pub struct SampledPoint {
    pub level: u32,
    pub m: i64,
    pub n: i64,
    pub d: ExactRat,
    pub kind: PointKind,
}

impl SampledPoint {
    pub fn height(&self) -> i64 {
        self.m.abs().max(self.n)
    }
}

/// Value of F_N(m, n) as a product of the stored factor pieces, each exactly
/// factored. Returns the merged prime factorization and the sign.
fn factor_form_value(curve: &CurveModel, m: i64, n: i64) -> Option<(BTreeMap<ExactInt, u32>, bool)> {
    let mut merged: BTreeMap<ExactInt, u32> = BTreeMap::new();
    let mut negative = false;
    for piece in &curve.factors_z {
        let value = match piece.eval_homogeneous_i128(m, n) {
            Some(v) => ExactInt::from(v),
            None => piece.eval_homogeneous(&ExactInt::from(m), &ExactInt::from(n)),
        };
        if value.is_zero() {
            return None;
        }
        if value.is_negative() {
            negative = !negative;
        }
        let fac = match u128::try_from(&value.abs()) {
            Ok(v) if v >> 127 == 0 => factor_u128(v)
                .into_iter()
                .map(|(p, e)| (ExactInt::from(p), e))
                .collect(),
            _ => factor(&value),
        };
        for (p, e) in fac {
            *merged.entry(p).or_insert(0) += e;
        }
    }
    Some((merged, negative))
}

/// Squarefree decomposition of F_N(m, n) through the factored pieces.
pub fn decompose_point(curve: &CurveModel, m: i64, n: i64) -> PointKind {
    let Some((fac, negative)) = factor_form_value(curve, m, n) else {
        return PointKind::ModelRamification;
    };
    let mut d_free = if negative { -ExactInt::one() } else { ExactInt::one() };
    let mut scale = ExactRat::one();
    for (p, e) in fac {
        if e % 2 == 1 {
            d_free *= &p;
        }
        for _ in 0..(e / 2) {
            scale *= ExactRat::from(p.clone());
        }
    }
    if d_free.is_one() {
        return PointKind::Rational;
    }
    // s in d = D s^2 carries the 1/n^(deg/2) from clearing denominators
    let half_deg = curve.f.degree().unwrap_or(0) / 2;
    let n_half = ExactInt::from(n).pow(half_deg as u32);
    scale /= ExactRat::from(n_half);
    PointKind::Quadratic { d_free, scale }
}

/// All x_0 = m/n with |m| <= H, 1 <= n <= H, gcd(m, n) = 1, classified and
/// ordered by height then numerator then denominator.
pub fn sample_points(curve: &CurveModel, height: i64) -> Vec<SampledPoint> {
    let pairs = coprime_pairs(height);
    let mut out: Vec<SampledPoint> = pairs
        .into_par_iter()
        .map(|(m, n)| {
            let kind = decompose_point(curve, m, n);
            let num = curve.f.eval_homogeneous(&ExactInt::from(m), &ExactInt::from(n));
            let den = ExactInt::from(n).pow(curve.f.degree().unwrap_or(0) as u32);
            SampledPoint {
                level: curve.level,
                m,
                n,
                d: ExactRat::new(num, den),
                kind,
            }
        })
        .collect();
    out.sort_by_key(|p| (p.height(), p.m, p.n));
    out
}

pub fn coprime_pairs(height: i64) -> Vec<(i64, i64)> {
    let mut pairs = vec![];
    for n in 1..=height {
        for m in -height..=height {
            if gcd_i64(m, n) == 1 {
                pairs.push((m, n));
            }
        }
    }
    pairs
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Symbol-level facts about one sampled point needed by the expectation
/// checks, computable without factoring the form value.
#[derive(Debug, Clone)]
pub struct PointFacts {
    pub m: i64,
    pub n: i64,
    /// F_N(m, n), exact.
    pub form_value: ExactInt,
    /// d = 0: model ramification point, excluded from the checks.
    pub is_zero: bool,
    /// F is a perfect square times sign: D = +-1 (rational point or Q(i)).
    pub square_free_part_trivial: bool,
}

impl PointFacts {
    pub fn compute(curve: &CurveModel, m: i64, n: i64) -> PointFacts {
        let form_value = match curve.f.eval_homogeneous_i128(m, n) {
            Some(v) => ExactInt::from(v),
            None => curve.f.eval_homogeneous(&ExactInt::from(m), &ExactInt::from(n)),
        };
        let is_zero = form_value.is_zero();
        let square_free_part_trivial = if is_zero {
            false
        } else {
            let a = form_value.abs();
            let r = a.sqrt();
            &r * &r == a && form_value.is_positive()
        };
        PointFacts {
            m,
            n,
            form_value,
            is_zero,
            square_free_part_trivial,
        }
    }

    /// D > 0 iff d > 0.
    pub fn d_positive(&self) -> bool {
        self.form_value.is_positive()
    }

    /// v_p(F) and the p-free part of F.
    pub fn p_part(&self, p: u64) -> (i64, ExactInt) {
        let pb = ExactInt::from(p);
        let v = crate::exact::int_valuation(&self.form_value, &pb).unwrap();
        let mut rest = self.form_value.clone();
        for _ in 0..v {
            rest /= &pb;
        }
        (v, rest)
    }

    /// Exact class of D mod 8, via the 2-adic part: for even v_2 the odd
    /// part F_2 satisfies D = F_2 (mod 8) (odd squares are 1 mod 8); for odd
    /// v_2, D = 2 D' with D' = F_2 (mod 8).
    pub fn d_mod8(&self) -> u64 {
        let (v2, rest) = self.p_part(2);
        let f2 = u64::try_from(&rest.mod_floor(&ExactInt::from(8u8))).unwrap();
        if v2 % 2 == 0 {
            f2
        } else {
            (2 * (f2 % 4)) % 8
        }
    }

    /// Legendre symbol (D/p) for odd p, via the p-free part: (D/p) =
    /// (F_p/p) when v_p(F) is even, and 0 otherwise.
    pub fn d_symbol(&self, p: u64) -> i32 {
        let (v, rest) = self.p_part(p);
        if v % 2 == 1 {
            return 0;
        }
        crate::exact::legendre(&rest, &ExactInt::from(p)).expect("odd prime")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvedb::Registry;

    #[test]
    fn spot_decompositions() {
        let reg = Registry::global();
        // f_28(2) = 112 = 7 * 4^2
        let c28 = reg.get_curve(28).unwrap();
        match decompose_point(c28, 2, 1) {
            PointKind::Quadratic { d_free, scale } => {
                assert_eq!(d_free, ExactInt::from(7));
                assert_eq!(scale, ExactRat::from(ExactInt::from(4)));
            }
            other => panic!("unexpected kind {other:?}"),
        }
        // f_40(1) = 16: a rational point
        let c40 = reg.get_curve(40).unwrap();
        assert_eq!(decompose_point(c40, 1, 1), PointKind::Rational);
        // f_22(1) = -7
        let c22 = reg.get_curve(22).unwrap();
        match decompose_point(c22, 1, 1) {
            PointKind::Quadratic { d_free, scale } => {
                assert_eq!(d_free, ExactInt::from(-7));
                assert_eq!(scale, ExactRat::one());
            }
            other => panic!("unexpected kind {other:?}"),
        }
    }

    #[test]
    fn sampling_is_ordered_and_complete() {
        let reg = Registry::global();
        let c28 = reg.get_curve(28).unwrap();
        let pts = sample_points(c28, 3);
        // heights ascend
        for w in pts.windows(2) {
            assert!(w[0].height() <= w[1].height());
        }
        // contains x0 = 2/1 with D = 7
        assert!(pts.iter().any(|p| p.m == 2
            && p.n == 1
            && matches!(&p.kind, PointKind::Quadratic { d_free, .. } if *d_free == ExactInt::from(7))));
        // d = D s^2 recomposes exactly for every quadratic point
        for p in &pts {
            if let PointKind::Quadratic { d_free, scale } = &p.kind {
                let recomposed = ExactRat::from(d_free.clone()) * scale * scale;
                assert_eq!(recomposed, p.d, "at ({}, {})", p.m, p.n);
            }
        }
    }

    #[test]
    fn facts_match_decomposition() {
        let reg = Registry::global();
        for level in [22u32, 26, 30, 40] {
            let c = reg.get_curve(level).unwrap();
            for (m, n) in coprime_pairs(6) {
                let facts = PointFacts::compute(c, m, n);
                if facts.is_zero {
                    continue;
                }
                match decompose_point(c, m, n) {
                    PointKind::Quadratic { d_free, .. } => {
                        assert!(!facts.square_free_part_trivial);
                        // mod-8 class agrees
                        let expect =
                            u64::try_from(&d_free.mod_floor(&ExactInt::from(8u8))).unwrap();
                        assert_eq!(facts.d_mod8(), expect, "level {level} ({m},{n})");
                        // symbol agrees for a few odd primes
                        for p in [3u64, 5, 7, 13] {
                            let sym = crate::exact::legendre(&d_free, &ExactInt::from(p)).unwrap();
                            assert_eq!(facts.d_symbol(p), sym, "level {level} ({m},{n}) p={p}");
                        }
                    }
                    PointKind::Rational => assert!(facts.square_free_part_trivial),
                    PointKind::ModelRamification => unreachable!(),
                }
            }
        }
    }
}
