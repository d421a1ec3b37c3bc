//! Polynomials with coefficients in a quadratic extension Q(sqrt(a)).
//!
//! Used to verify the published factorizations of the curve models over
//! Q(sqrt(a)): the stored conjugate factors are multiplied back out and must
//! reproduce the integer model exactly.

use super::{IntPoly, PolyError};
use crate::exact::{ExactInt, ExactRat};

use num_traits::{One, Zero};

/// `rat + rad * sqrt(a)`; the radicand lives on the containing polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExtElem {
    pub rat: ExactRat,
    pub rad: ExactRat,
}

impl QuadExtElem {
    pub fn new(rat: ExactRat, rad: ExactRat) -> QuadExtElem {
        QuadExtElem { rat, rad }
    }

    pub fn from_int(n: i64) -> QuadExtElem {
        QuadExtElem {
            rat: ExactRat::from(ExactInt::from(n)),
            rad: ExactRat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }

    fn mul(&self, other: &QuadExtElem, radicand: &ExactInt) -> QuadExtElem {
        let a = ExactRat::from(radicand.clone());
        QuadExtElem {
            rat: &self.rat * &other.rat + &self.rad * &other.rad * a,
            rad: &self.rat * &other.rad + &self.rad * &other.rat,
        }
    }

    fn add_assign(&mut self, other: &QuadExtElem) {
        self.rat += &other.rat;
        self.rad += &other.rad;
    }

    /// Galois conjugate sqrt(a) -> -sqrt(a).
    pub fn conjugate(&self) -> QuadExtElem {
        QuadExtElem {
            rat: self.rat.clone(),
            rad: -self.rad.clone(),
        }
    }
}

/// Polynomial over Q(sqrt(a)), ascending coefficients, shared radicand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExtPoly {
    pub radicand: ExactInt,
    pub coeffs: Vec<QuadExtElem>,
}

impl QuadExtPoly {
    pub fn new(radicand: ExactInt, coeffs: Vec<QuadExtElem>) -> QuadExtPoly {
        QuadExtPoly { radicand, coeffs }
    }

    pub fn conjugate(&self) -> QuadExtPoly {
        QuadExtPoly {
            radicand: self.radicand.clone(),
            coeffs: self.coeffs.iter().map(|c| c.conjugate()).collect(),
        }
    }

    fn mul(&self, other: &QuadExtPoly) -> QuadExtPoly {
        let zero = QuadExtElem::new(ExactRat::zero(), ExactRat::zero());
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = a.mul(b, &self.radicand);
                out[i + j].add_assign(&prod);
            }
        }
        QuadExtPoly {
            radicand: self.radicand.clone(),
            coeffs: out,
        }
    }
}

/// Multiplies out conjugate factors over one Q(sqrt(a)) and clears the stated
/// integer content. The radical parts must cancel completely and the scaled
/// coefficients must be integers; anything else is an error.
pub fn expand_product(factors: &[QuadExtPoly], content: &ExactInt) -> Result<IntPoly, PolyError> {
    let first = factors.first().ok_or(PolyError::ZeroPolynomial)?;
    if factors.iter().any(|f| f.radicand != first.radicand) {
        return Err(PolyError::MixedRadicands);
    }
    let mut prod = factors[0].clone();
    for f in &factors[1..] {
        prod = prod.mul(f);
    }
    let mut out = Vec::with_capacity(prod.coeffs.len());
    for c in &prod.coeffs {
        if !c.rad.is_zero() {
            return Err(PolyError::RadicalResidue);
        }
        let scaled = &c.rat * ExactRat::from(content.clone());
        if !scaled.denom().is_one() {
            return Err(PolyError::NonIntegralResult);
        }
        out.push(scaled.numer().clone());
    }
    Ok(IntPoly::new(out))
}

/// Convenience constructor: coefficient list of (rat_num, rat_den, rad_num, rad_den).
pub fn quad_poly(radicand: i64, coeffs: &[(i64, i64, i64, i64)]) -> QuadExtPoly {
    QuadExtPoly::new(
        ExactInt::from(radicand),
        coeffs
            .iter()
            .map(|&(rn, rd, sn, sd)| {
                QuadExtElem::new(
                    ExactRat::new(ExactInt::from(rn), ExactInt::from(rd)),
                    ExactRat::new(ExactInt::from(sn), ExactInt::from(sd)),
                )
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        // (x + sqrt(a))(x - sqrt(a)) = x^2 - a
        for a in [-7i64, 5, 13] {
            let f = quad_poly(a, &[(0, 1, 1, 1), (1, 1, 0, 1)]);
            let out = expand_product(&[f.clone(), f.conjugate()], &ExactInt::one()).unwrap();
            assert_eq!(out, IntPoly::from_i64(&[-a, 0, 1]));
        }
    }

    #[test]
    fn radical_residue_detected() {
        let f = quad_poly(5, &[(0, 1, 1, 1), (1, 1, 0, 1)]); // x + sqrt(5)
        let err = expand_product(&[f.clone(), f], &ExactInt::one());
        assert_eq!(err, Err(PolyError::RadicalResidue));
    }

    #[test]
    fn content_clearing() {
        // (x + 1/2)(x - 1/2) * 4 = 4x^2 - 1
        let f = quad_poly(5, &[(1, 2, 0, 1), (1, 1, 0, 1)]);
        let g = quad_poly(5, &[(-1, 2, 0, 1), (1, 1, 0, 1)]);
        let out = expand_product(&[f, g], &ExactInt::from(4)).unwrap();
        assert_eq!(out, IntPoly::from_i64(&[-1, 0, 4]));
        // and a content that fails to clear
        let f = quad_poly(5, &[(1, 3, 0, 1), (1, 1, 0, 1)]);
        let g = quad_poly(5, &[(-1, 3, 0, 1), (1, 1, 0, 1)]);
        assert_eq!(
            expand_product(&[f, g], &ExactInt::from(3)),
            Err(PolyError::NonIntegralResult)
        );
    }

    #[test]
    fn mixed_radicands_rejected() {
        let f = quad_poly(5, &[(0, 1, 1, 1), (1, 1, 0, 1)]);
        let g = quad_poly(13, &[(0, 1, -1, 1), (1, 1, 0, 1)]);
        assert_eq!(
            expand_product(&[f, g], &ExactInt::one()),
            Err(PolyError::MixedRadicands)
        );
    }
}
