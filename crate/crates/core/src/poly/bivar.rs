//! Bivariate polynomials: exact integer bivariate arithmetic for the
//! homogeneous-identity checks, and a tiny dense F_2[u,v] type (bidegree at
//! most (3,3)) with a complete exhaustive factorizer.

use crate::exact::ExactInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Sparse bivariate polynomial over Z, keyed by (deg_m, deg_n).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivarIntPoly {
    terms: BTreeMap<(u32, u32), ExactInt>,
}

impl BivarIntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn mono(c: i64, dm: u32, dn: u32) -> Self {
        let mut p = Self::default();
        p.add_term(ExactInt::from(c), dm, dn);
        p
    }

    pub fn add_term(&mut self, c: ExactInt, dm: u32, dn: u32) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((dm, dn)).or_insert_with(ExactInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(dm, dn));
        }
    }

    pub fn from_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut p = Self::default();
        for &(c, dm, dn) in terms {
            p.add_term(ExactInt::from(c), dm, dn);
        }
        p
    }

    /// Homogenization of a univariate polynomial: sum a_i m^i n^(deg-i).
    pub fn homogenize(f: &super::IntPoly) -> Self {
        let mut p = Self::default();
        if let Some(d) = f.degree() {
            for (i, c) in f.coeffs().iter().enumerate() {
                p.add_term(c.clone(), i as u32, (d - i) as u32);
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((dm, dn), c) in &other.terms {
            out.add_term(c.clone(), *dm, *dn);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((dm, dn), c) in &other.terms {
            out.add_term(-c.clone(), *dm, *dn);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for ((am, an), ac) in &self.terms {
            for ((bm, bn), bc) in &other.terms {
                out.add_term(ac * bc, am + bm, an + bn);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::mono(1, 0, 0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::default();
        for ((dm, dn), c) in &self.terms {
            out.add_term(c * ExactInt::from(k), *dm, *dn);
        }
        out
    }

    /// True when every coefficient is divisible by `m` (coefficient-wise
    /// congruence to zero mod m).
    pub fn divisible_by(&self, m: u64) -> bool {
        let m = ExactInt::from(m);
        self.terms.values().all(|c| c.mod_floor(&m).is_zero())
    }
}

// ---------------------------------------------------------------------------
// F_2[u,v], bidegree <= (3,3): 16-bit mask, bit 4*i+j <-> u^i v^j
// ---------------------------------------------------------------------------

/// Dense polynomial over F_2 in u, v with bidegree at most (3,3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bivar2(pub u16);

impl fmt::Display for Bivar2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "0");
        }
        let mut terms = vec![];
        for i in 0..4u32 {
            for j in 0..4u32 {
                if self.0 >> (4 * i + j) & 1 == 1 {
                    let t = match (i, j) {
                        (0, 0) => "1".to_string(),
                        _ => {
                            let us = match i {
                                0 => String::new(),
                                1 => "u".into(),
                                _ => format!("u^{i}"),
                            };
                            let vs = match j {
                                0 => String::new(),
                                1 => "v".into(),
                                _ => format!("v^{j}"),
                            };
                            if us.is_empty() || vs.is_empty() {
                                format!("{us}{vs}")
                            } else {
                                format!("{us}*{vs}")
                            }
                        }
                    };
                    terms.push(t);
                }
            }
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl Bivar2 {
    pub fn term(i: u32, j: u32) -> Bivar2 {
        Bivar2(1 << (4 * i + j))
    }

    pub fn is_constant(&self) -> bool {
        self.0 == 0 || self.0 == 1
    }

    fn deg_u(&self) -> u32 {
        (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| self.0 >> (4 * i + j) & 1 == 1)
            .map(|(i, _)| i)
            .max()
            .unwrap_or(0)
    }

    fn deg_v(&self) -> u32 {
        (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| self.0 >> (4 * i + j) & 1 == 1)
            .map(|(_, j)| j)
            .max()
            .unwrap_or(0)
    }

    /// Product, or None when the result leaves bidegree (3,3).
    pub fn checked_mul(&self, other: &Bivar2) -> Option<Bivar2> {
        let mut r = 0u16;
        for i in 0..4u32 {
            for j in 0..4u32 {
                if self.0 >> (4 * i + j) & 1 == 0 {
                    continue;
                }
                for k in 0..4u32 {
                    for l in 0..4u32 {
                        if other.0 >> (4 * k + l) & 1 == 0 {
                            continue;
                        }
                        if i + k > 3 || j + l > 3 {
                            return None;
                        }
                        r ^= 1 << (4 * (i + k) + (j + l));
                    }
                }
            }
        }
        Some(Bivar2(r))
    }

    /// Reduction mod 2 of an integer bivariate polynomial.
    pub fn from_bivar_int(p: &BivarIntPoly) -> Bivar2 {
        let two = ExactInt::from(2);
        let mut mask = 0u16;
        for ((dm, dn), c) in &p.terms {
            assert!(*dm <= 3 && *dn <= 3, "bidegree above (3,3)");
            if !c.mod_floor(&two).is_zero() {
                mask ^= 1 << (4 * dm + dn);
            }
        }
        Bivar2(mask)
    }

}

/// Does g divide t in F_2[u,v]? The cofactor coefficients form a linear
/// system over F_2 (one equation per monomial of t's bidegree box), solved by
/// Gaussian elimination; a candidate solution is verified by multiplication.
fn divides(g: Bivar2, t: Bivar2) -> Option<Bivar2> {
    if g.0 == 0 {
        return None;
    }
    let (tu, tv) = (t.deg_u(), t.deg_v());
    let (gu, gv) = (g.deg_u(), g.deg_v());
    if gu > tu || gv > tv {
        return None;
    }
    let (hu, hv) = (tu - gu, tv - gv);
    let unknowns: Vec<(u32, u32)> =
        (0..=hu).flat_map(|i| (0..=hv).map(move |j| (i, j))).collect();
    // rows: bit k = coefficient of unknown k, bit 31 = rhs
    let mut rows: Vec<u32> = vec![];
    for a in 0..=tu {
        for b in 0..=tv {
            let mut row = 0u32;
            for (k, &(i, j)) in unknowns.iter().enumerate() {
                if i <= a && j <= b && a - i <= gu && b - j <= gv
                    && g.0 >> (4 * (a - i) + (b - j)) & 1 == 1
                {
                    row |= 1 << k;
                }
            }
            if t.0 >> (4 * a + b) & 1 == 1 {
                row |= 1 << 31;
            }
            if row != 0 {
                rows.push(row);
            }
        }
    }
    // Gaussian elimination over F_2
    let ncols = unknowns.len();
    let mut pivot_of_col = vec![usize::MAX; ncols];
    let mut used = 0usize;
    #[allow(clippy::needless_range_loop)] // col indexes rows and pivot_of_col together
    for col in 0..ncols {
        let Some(r) = (used..rows.len()).find(|&r| rows[r] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(used, r);
        let pr = rows[used];
        for (q, row) in rows.iter_mut().enumerate() {
            if q != used && *row >> col & 1 == 1 {
                *row ^= pr;
            }
        }
        pivot_of_col[col] = used;
        used += 1;
    }
    // inconsistent system: a zero coefficient row with rhs 1
    if rows[used..].contains(&(1 << 31)) {
        return None;
    }
    let mut h = 0u16;
    for (col, &(i, j)) in unknowns.iter().enumerate() {
        let pr = pivot_of_col[col];
        if pr != usize::MAX && rows[pr] >> 31 & 1 == 1 {
            h |= 1 << (4 * i + j);
        }
    }
    let cand = Bivar2(h);
    if g.checked_mul(&cand) == Some(t) {
        Some(cand)
    } else {
        None
    }
}

/// Complete factorization into irreducibles over F_2, sorted canonically.
/// Exhaustive divisor search; correct for any input of bidegree <= (3,3).
pub fn factor_bivariate_mod2(f: Bivar2) -> Vec<Bivar2> {
    assert!(f.0 != 0, "factorization of zero");
    if f.is_constant() {
        return vec![];
    }
    // smallest proper divisor in (popcount, mask) order gives a canonical,
    // deterministic factor sequence
    let mut order: Vec<u16> = (2..1u32 << 16).map(|x| x as u16).collect();
    order.sort_by_key(|&m| (m.count_ones(), m));
    fn split(f: Bivar2, order: &[u16]) -> Vec<Bivar2> {
        for &gm in order {
            let g = Bivar2(gm);
            if g.0 == f.0 || g.is_constant() {
                continue;
            }
            if let Some(h) = divides(g, f) {
                if h.is_constant() {
                    continue;
                }
                let mut out = split(g, order);
                out.extend(split(h, order));
                return out;
            }
        }
        vec![f]
    }
    let mut out = split(f, &order);
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// F_4 arithmetic for the projective closure checks
// ---------------------------------------------------------------------------

/// Element of F_4 = F_2(w) with w^2 = w + 1, encoded 0..3 as c0 + 2*c1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct F4(pub u8);

impl std::ops::Add for F4 {
    type Output = F4;
    #[allow(clippy::suspicious_arithmetic_impl)] // characteristic 2: addition is xor
    fn add(self, other: F4) -> F4 {
        F4(self.0 ^ other.0)
    }
}

impl std::ops::Mul for F4 {
    type Output = F4;
    fn mul(self, other: F4) -> F4 {
        let (a0, a1) = (self.0 & 1, self.0 >> 1);
        let (b0, b1) = (other.0 & 1, other.0 >> 1);
        let c0 = (a0 & b0) ^ (a1 & b1);
        let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
        F4(c0 | (c1 << 1))
    }
}

impl F4 {
    pub fn in_f2(self) -> bool {
        self.0 < 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPoly;

    #[test]
    fn bivar_int_identity() {
        // (m+3n)^2 - 5n^2 = m^2 + 6mn + 4n^2
        let lhs = BivarIntPoly::from_terms(&[(1, 1, 0), (3, 0, 1)])
            .pow(2)
            .sub(&BivarIntPoly::from_terms(&[(5, 0, 2)]));
        let rhs = BivarIntPoly::from_terms(&[(1, 2, 0), (6, 1, 1), (4, 0, 2)]);
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn homogenize_matches_eval() {
        let f = IntPoly::from_i64(&[4, -12, 25, -30, 25, -12, 4]);
        let h = BivarIntPoly::homogenize(&f);
        // spot check via the term map: degree-0-in-n term is the lead coeff
        assert_eq!(h.terms[&(6, 0)], ExactInt::from(4));
        assert_eq!(h.terms[&(0, 6)], ExactInt::from(4));
    }

    #[test]
    fn frobenius_square() {
        // u^2 + v^2 = (u + v)^2 mod 2
        let f = Bivar2(Bivar2::term(2, 0).0 ^ Bivar2::term(0, 2).0);
        let uv = Bivar2(Bivar2::term(1, 0).0 ^ Bivar2::term(0, 1).0);
        assert_eq!(factor_bivariate_mod2(f), vec![uv, uv]);
    }

    #[test]
    fn monomials() {
        let f = Bivar2::term(1, 1); // uv
        let fac = factor_bivariate_mod2(f);
        assert_eq!(fac, vec![Bivar2::term(0, 1), Bivar2::term(1, 0)]);
    }

    #[test]
    fn product_of_pure_cubics() {
        // (u^3+u^2+1)(v^3+v^2+1): both factors exceed bidegree (2,2),
        // the divisor search must still find them
        let a = Bivar2(Bivar2::term(3, 0).0 ^ Bivar2::term(2, 0).0 ^ 1);
        let b = Bivar2(Bivar2::term(0, 3).0 ^ Bivar2::term(0, 2).0 ^ 1);
        let prod = a.checked_mul(&b).unwrap();
        let mut expect = vec![a, b];
        expect.sort();
        assert_eq!(factor_bivariate_mod2(prod), expect);
    }

    #[test]
    fn f4_field_axioms() {
        // w * w = w + 1, w * (w+1) = 1
        let w = F4(2);
        assert_eq!(w * w, F4(3));
        assert_eq!(w * F4(3), F4(1));
        for a in 0..4 {
            assert_eq!(F4(a) * F4(1), F4(a));
            assert_eq!(F4(a) + F4(a), F4(0));
        }
    }
}
