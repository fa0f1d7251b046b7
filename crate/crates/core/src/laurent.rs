//! Exact sparse arithmetic in `Z[q, q^-1]`.
//!
//! A [`LaurentPoly`] is a finite map from exponent to nonzero integer
//! coefficient. Zero coefficients are pruned eagerly, so structural equality
//! is polynomial equality. Coefficient arithmetic is checked: the operator
//! impls panic on `i64` overflow instead of wrapping, and the `checked_*`
//! methods return `None`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("{dividend} is not divisible by {divisor} in Z[q,q^-1]")]
    NotDivisible { dividend: String, divisor: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{0} is not bar-antisymmetric")]
    NotAntisymmetric(String),
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

const OVERFLOW: &str = "Laurent coefficient overflow";

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn q_inv() -> Self {
        Self::monomial(1, -1)
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `q - q^-1`, the ubiquitous Hecke correction.
    pub fn q_minus_q_inv() -> Self {
        Self::from_terms([(1, 1), (-1, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0) == Some(&1)
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry = entry.checked_add(c).expect(OVERFLOW);
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    pub fn is_bar_antisymmetric(&self) -> bool {
        *self == -self.bar()
    }

    /// Evaluation at `q = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.coeffs
            .values()
            .try_fold(0i64, |acc, &c| acc.checked_add(c))
            .expect(OVERFLOW)
    }

    /// Every exponent is `>= 1`, i.e. the polynomial lies in `qZ[q]`.
    pub fn in_positive_part(&self) -> bool {
        self.min_degree().map_or(true, |d| d >= 1)
    }

    /// Every exponent is `<= -1`, i.e. the polynomial lies in `q^-1 Z[q^-1]`.
    pub fn in_negative_part(&self) -> bool {
        self.max_degree().map_or(true, |d| d <= -1)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, &c)| (e.checked_add(k).expect("exponent overflow"), c))
                .collect(),
        }
    }

    pub fn scale(&self, s: i64) -> Self {
        if s == 0 {
            return Self::zero();
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, &c)| (e, c.checked_mul(s).expect(OVERFLOW)))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let mut out = self.coeffs.clone();
        for (&e, &c) in &other.coeffs {
            let entry = out.entry(e).or_insert(0);
            *entry = entry.checked_add(c)?;
            if *entry == 0 {
                out.remove(&e);
            }
        }
        Some(Self { coeffs: out })
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut out: BTreeMap<i32, i64> = BTreeMap::new();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &other.coeffs {
                let e = e1.checked_add(e2)?;
                let entry = out.entry(e).or_insert(0);
                *entry = entry.checked_add(c1.checked_mul(c2)?)?;
            }
        }
        out.retain(|_, c| *c != 0);
        Some(Self { coeffs: out })
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Balanced quantum integer `[r] = (q^r - q^-r)/(q - q^-1)`.
    pub fn q_int(r: u32) -> Self {
        let r = r as i32;
        Self::from_terms((0..r).map(|k| (r - 1 - 2 * k, 1)))
    }

    /// Quantum factorial `[r]! = [1][2]...[r]`, with `[0]! = 1`.
    pub fn q_fact(r: u32) -> Self {
        (1..=r).fold(Self::one(), |acc, k| &acc * &Self::q_int(k))
    }

    /// The unique `u` with `u * divisor == self`, when it exists in
    /// `Z[q,q^-1]`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, LaurentError> {
        let (Some(d_lo), Some(d_hi)) = (divisor.min_degree(), divisor.max_degree()) else {
            return Err(LaurentError::DivisionByZero);
        };
        let not_divisible = || LaurentError::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let lead = divisor.coeff(d_hi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let (Some(r_lo), Some(r_hi)) = (rem.min_degree(), rem.max_degree()) {
            if r_hi - r_lo < d_hi - d_lo {
                return Err(not_divisible());
            }
            let c = rem.coeff(r_hi);
            if c % lead != 0 {
                return Err(not_divisible());
            }
            let term = Self::monomial(c / lead, r_hi - d_hi);
            rem = &rem - &(&term * divisor);
            quot += &term;
        }
        Ok(quot)
    }

    /// For bar-antisymmetric `d`, the unique `p` in `qZ[q]` with
    /// `p - bar(p) = d`.
    pub fn pos_part(&self) -> Result<Self, LaurentError> {
        if !self.is_bar_antisymmetric() {
            return Err(LaurentError::NotAntisymmetric(self.to_string()));
        }
        Ok(Self {
            coeffs: self.coeffs.iter().filter(|(&e, _)| e > 0).map(|(&e, &c)| (e, c)).collect(),
        })
    }

    /// For bar-antisymmetric `d`, the unique `p` in `q^-1 Z[q^-1]` with
    /// `p - bar(p) = d`.
    pub fn neg_part(&self) -> Result<Self, LaurentError> {
        if !self.is_bar_antisymmetric() {
            return Err(LaurentError::NotAntisymmetric(self.to_string()));
        }
        Ok(Self {
            coeffs: self.coeffs.iter().filter(|(&e, _)| e < 0).map(|(&e, &c)| (e, c)).collect(),
        })
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `q^2 - 1 + 2q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.coeffs.iter().rev().enumerate() {
            let abs = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            match e {
                0 => write!(f, "{abs}")?,
                _ => {
                    if abs != 1 {
                        write!(f, "{abs}")?;
                    }
                    match e {
                        1 => write!(f, "q")?,
                        _ => write!(f, "q^{e}")?,
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect(OVERFLOW)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in &rhs.coeffs {
            self.add_term(e, c);
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, &c)| (e, c.checked_neg().expect(OVERFLOW)))
                .collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in &rhs.coeffs {
            self.add_term(e, c.checked_neg().expect(OVERFLOW));
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect(OVERFLOW)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn addition() {
        assert_eq!(LaurentPoly::q() + LaurentPoly::q_inv(), p(&[(1, 1), (-1, 1)]));
        assert!((LaurentPoly::q() + -LaurentPoly::q()).is_zero());
        assert_eq!(p(&[(2, 1), (0, 1)]) + p(&[(0, 1), (2, -1)]), LaurentPoly::constant(2));
    }

    #[test]
    fn multiplication() {
        let a = p(&[(1, 1), (-1, 1)]);
        let b = p(&[(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, p(&[(2, 1), (-2, -1)]));
        assert_eq!(&a * &LaurentPoly::one(), a);
        assert!((LaurentPoly::q() * LaurentPoly::q_inv()).is_one());
    }

    #[test]
    fn bar_examples() {
        assert_eq!(LaurentPoly::q().bar(), LaurentPoly::q_inv());
        assert_eq!(LaurentPoly::q_int(2).bar(), LaurentPoly::q_int(2));
        assert_eq!(p(&[(3, 2), (0, -5)]).bar(), p(&[(-3, 2), (0, -5)]));
    }

    #[test]
    fn quantum_integers() {
        assert!(LaurentPoly::q_int(0).is_zero());
        assert!(LaurentPoly::q_fact(0).is_one());
        assert_eq!(LaurentPoly::q_int(2), p(&[(1, 1), (-1, 1)]));
        assert_eq!(LaurentPoly::q_int(3), p(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(
            LaurentPoly::q_fact(3),
            &p(&[(1, 1), (-1, 1)]) * &p(&[(2, 1), (0, 1), (-2, 1)])
        );
        // [r] (q - q^-1) = q^r - q^-r
        for r in 0..10u32 {
            let lhs = &LaurentPoly::q_int(r) * &LaurentPoly::q_minus_q_inv();
            let rhs = p(&[(r as i32, 1), (-(r as i32), -1)]);
            assert_eq!(lhs, rhs, "r = {r}");
        }
        for r in 1..=8u32 {
            assert_eq!(
                &LaurentPoly::q_int(r) * &LaurentPoly::q_fact(r - 1),
                LaurentPoly::q_fact(r)
            );
        }
    }

    #[test]
    fn exact_division() {
        let two = LaurentPoly::q_int(2);
        let prod = &two * &LaurentPoly::q_pow(3);
        assert_eq!(prod.div_exact(&two).unwrap(), LaurentPoly::q_pow(3));
        let x = p(&[(4, 3), (-2, -1), (0, 7)]);
        assert_eq!(x.div_exact(&LaurentPoly::one()).unwrap(), x);
        assert!(matches!(
            two.div_exact(&LaurentPoly::q_minus_q_inv()),
            Err(LaurentError::NotDivisible { .. })
        ));
        assert!(matches!(two.div_exact(&LaurentPoly::zero()), Err(LaurentError::DivisionByZero)));
        assert!(matches!(
            LaurentPoly::constant(3).div_exact(&LaurentPoly::constant(2)),
            Err(LaurentError::NotDivisible { .. })
        ));
        assert!(LaurentPoly::zero().div_exact(&two).unwrap().is_zero());
    }

    #[test]
    fn positive_and_negative_parts() {
        let d = LaurentPoly::q_minus_q_inv();
        assert_eq!(d.pos_part().unwrap(), LaurentPoly::q());
        assert_eq!(d.neg_part().unwrap(), -LaurentPoly::q_inv());
        let d = p(&[(3, 1), (-3, -1), (1, 2), (-1, -2)]);
        assert_eq!(d.pos_part().unwrap(), p(&[(3, 1), (1, 2)]));
        assert!(LaurentPoly::zero().pos_part().unwrap().is_zero());
        assert!(matches!(LaurentPoly::one().pos_part(), Err(LaurentError::NotAntisymmetric(_))));
        assert!(matches!(LaurentPoly::q().neg_part(), Err(LaurentError::NotAntisymmetric(_))));
    }

    #[test]
    fn overflow_is_detected() {
        let big = LaurentPoly::constant(i64::MAX);
        assert!(big.checked_add(&LaurentPoly::one()).is_none());
        assert!(big.checked_mul(&LaurentPoly::constant(2)).is_none());
        let r = std::panic::catch_unwind(|| &big + &LaurentPoly::one());
        assert!(r.is_err());
    }

    #[test]
    fn display_and_json() {
        assert_eq!(p(&[(2, 1), (0, -1), (-1, 2)]).to_string(), "q^2 - 1 + 2q^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p(&[(1, -1)]).to_string(), "-q");
        let json = serde_json::to_string(&p(&[(-1, 1), (1, 1)])).unwrap();
        assert_eq!(json, r#"{"-1":1,"1":1}"#);
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p(&[(-1, 1), (1, 1)]));
    }
}
