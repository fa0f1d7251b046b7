//! The Hecke algebra of `S_m x S_n` with quadratic relation
//! `(H - q^-1)(H + q) = 0`, its bar involution, the parabolic symmetrizers,
//! and its right action on the tensor space.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::laurent::LaurentPoly;
use crate::weightlat::{Parabolic, Perm, Sector, Shape, SignedTuple};

#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    shape: Shape,
    terms: BTreeMap<Perm, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(shape: Shape) -> Self {
        Self { shape, terms: BTreeMap::new() }
    }

    pub fn one(shape: Shape) -> Self {
        Self::basis(shape, Perm::identity(shape.len()))
    }

    /// `H_sigma`. Panics if `sigma` does not respect the `m|n` split.
    pub fn basis(shape: Shape, sigma: Perm) -> Self {
        assert!(
            Parabolic::full(shape).contains(&sigma),
            "{sigma} is not in S_{} x S_{}",
            shape.m,
            shape.n
        );
        let mut out = Self::zero(shape);
        out.terms.insert(sigma, LaurentPoly::one());
        out
    }

    /// The generator `H_i`.
    pub fn generator(shape: Shape, i: usize) -> Result<Self> {
        if !shape.allows_generator(i) {
            return Err(Error::InvalidGenerator { index: i, shape });
        }
        Ok(Self::basis(shape, Perm::simple(shape.len(), i)))
    }

    pub fn scalar(shape: Shape, p: LaurentPoly) -> Self {
        Self::one(shape).scale(&p)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, sigma: &Perm) -> LaurentPoly {
        self.terms.get(sigma).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, sigma: Perm, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(sigma.clone()).or_default();
        *entry += p;
        if entry.is_zero() {
            self.terms.remove(&sigma);
        }
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.shape);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), &(c * p));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    /// `self * H_i`.
    pub fn mul_generator(&self, i: usize) -> Self {
        let correction = LaurentPoly::q_minus_q_inv().scale(-1);
        let mut out = Self::zero(self.shape);
        for (sigma, p) in &self.terms {
            let up = !sigma.has_right_descent(i);
            out.add_term(sigma.mul_simple_right(i), p);
            if !up {
                out.add_term(sigma.clone(), &(p * &correction));
            }
        }
        out
    }

    /// `self * H_sigma`.
    pub fn mul_basis(&self, sigma: &Perm) -> Self {
        sigma
            .reduced_word()
            .into_iter()
            .fold(self.clone(), |acc, i| acc.mul_generator(i))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch { expected: self.shape, found: other.shape });
        }
        let mut out = Self::zero(self.shape);
        for (sigma, p) in &other.terms {
            let prod = self.mul_basis(sigma);
            for (s, c) in &prod.terms {
                out.add_term(s.clone(), &(c * p));
            }
        }
        Ok(out)
    }

    /// The anti-linear involution with `bar(H_i) = H_i + q - q^-1`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.shape);
        for (sigma, p) in &self.terms {
            let barred = sigma.reduced_word().into_iter().fold(
                Self::scalar(self.shape, p.bar()),
                |acc, i| {
                    let shifted = acc.scale(&LaurentPoly::q_minus_q_inv());
                    acc.mul_generator(i).add(&shifted)
                },
            );
            out = out.add(&barred);
        }
        out
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (s, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})H{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement<{}>({self})", self.shape)
    }
}

pub fn h_mul(x: &HeckeElement, y: &HeckeElement) -> Result<HeckeElement> {
    x.mul(y)
}

pub fn h_bar(x: &HeckeElement) -> HeckeElement {
    x.bar()
}

/// `S = sum over sigma in W of q^(l(w0) - l(sigma)) H_sigma`.
pub fn symmetrizer(p: &Parabolic) -> HeckeElement {
    let (_, top) = p.longest();
    let mut out = HeckeElement::zero(p.shape());
    for sigma in p.elements() {
        let l = sigma.length();
        out.add_term(sigma, &LaurentPoly::q_pow((top - l) as i32));
    }
    out
}

/// `M_f H_i` on a single monomial.
fn monomial_times_generator(f: &SignedTuple, i: usize, coeff: &LaurentPoly, out: &mut FockVector) {
    let (a, b) = (f.entries()[i - 1], f.entries()[i]);
    if a == b {
        out.add_term(f, &coeff.shift(-1));
        return;
    }
    let goes_up = match f.sector(i - 1) {
        Sector::V => a < b,
        Sector::W => a > b,
    };
    out.add_term(&f.swap(i), coeff);
    if !goes_up {
        out.add_term(f, &(coeff * &LaurentPoly::q_minus_q_inv()).scale(-1));
    }
}

/// `v H_i`.
pub fn act_generator(v: &FockVector, i: usize) -> Result<FockVector> {
    if !v.shape().allows_generator(i) {
        return Err(Error::InvalidGenerator { index: i, shape: v.shape() });
    }
    let mut out = FockVector::zero(v.shape());
    for (f, p) in v.terms() {
        monomial_times_generator(f, i, p, &mut out);
    }
    Ok(out)
}

/// The right action `v x`.
pub fn act(v: &FockVector, x: &HeckeElement) -> Result<FockVector> {
    v.check_shape(x.shape())?;
    let mut out = FockVector::zero(v.shape());
    for (sigma, p) in x.terms() {
        let mut cur = v.clone();
        for i in sigma.reduced_word() {
            cur = act_generator(&cur, i)?;
        }
        out.add_scaled(p, &cur);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const S20: Shape = Shape { m: 2, n: 0 };
    const S30: Shape = Shape { m: 3, n: 0 };

    fn h(shape: Shape, i: usize) -> HeckeElement {
        HeckeElement::generator(shape, i).unwrap()
    }

    fn m(shape: Shape, e: &[i32]) -> FockVector {
        FockVector::monomial(&SignedTuple::new(shape, e.to_vec()).unwrap())
    }

    #[test]
    fn quadratic_relation() {
        let h1 = h(S20, 1);
        let sq = h1.mul(&h1).unwrap();
        let expected = HeckeElement::one(S20).add(&h1.scale(&LaurentPoly::q_minus_q_inv().scale(-1)));
        assert_eq!(sq, expected);
        let x = h1.scale(&LaurentPoly::q_int(3)).add(&HeckeElement::one(S20));
        assert_eq!(HeckeElement::one(S20).mul(&x).unwrap(), x);
    }

    #[test]
    fn braid_relation() {
        let (h1, h2) = (h(S30, 1), h(S30, 2));
        let lhs = h1.mul(&h2).unwrap().mul(&h1).unwrap();
        let rhs = h2.mul(&h1).unwrap().mul(&h2).unwrap();
        assert_eq!(lhs, rhs);
        assert!(HeckeElement::generator(Shape::new(1, 1), 1).is_err());
    }

    #[test]
    fn bar_on_generators() {
        let h1 = h(S20, 1);
        let expected = h1.add(&HeckeElement::scalar(S20, LaurentPoly::q_minus_q_inv()));
        assert_eq!(h1.bar(), expected);
        assert_eq!(
            HeckeElement::scalar(S20, LaurentPoly::q()).bar(),
            HeckeElement::scalar(S20, LaurentPoly::q_inv())
        );
        // bar(H_i) is the inverse of H_i
        assert_eq!(h1.mul(&h1.bar()).unwrap(), HeckeElement::one(S20));
    }

    #[test]
    fn symmetrizer_examples() {
        let s = symmetrizer(&Parabolic::full(S20));
        assert_eq!(s, HeckeElement::scalar(S20, LaurentPoly::q()).add(&h(S20, 1)));
        assert_eq!(symmetrizer(&Parabolic::trivial(S20)), HeckeElement::one(S20));
        let s3 = symmetrizer(&Parabolic::full(S30));
        let (h1, h2) = (h(S30, 1), h(S30, 2));
        let expected = HeckeElement::scalar(S30, LaurentPoly::q_pow(3))
            .add(&h1.add(&h2).scale(&LaurentPoly::q_pow(2)))
            .add(&h1.mul(&h2).unwrap().add(&h2.mul(&h1).unwrap()).scale(&LaurentPoly::q()))
            .add(&h1.mul(&h2).unwrap().mul(&h1).unwrap());
        assert_eq!(s3, expected);
    }

    #[test]
    fn action_examples() {
        let h1 = h(S20, 1);
        assert_eq!(act(&m(S20, &[1, 2]), &h1).unwrap(), m(S20, &[2, 1]));
        assert_eq!(act(&m(S20, &[1, 1]), &h1).unwrap(), m(S20, &[1, 1]).scale(&LaurentPoly::q_inv()));
        let s02 = Shape::new(0, 2);
        assert_eq!(act(&m(s02, &[2, 1]), &h(s02, 1)).unwrap(), m(s02, &[1, 2]));
        let down = act(&m(S20, &[2, 1]), &h1).unwrap();
        let expected = &m(S20, &[1, 2]) - &m(S20, &[2, 1]).scale(&LaurentPoly::q_minus_q_inv());
        assert_eq!(down, expected);
    }

    #[test]
    fn action_respects_quadratic_relation() {
        let h1 = h(S20, 1);
        let sq = h1.mul(&h1).unwrap();
        for e in [[1, 2], [2, 1], [3, 3]] {
            let v = m(S20, &e);
            let twice = act(&act(&v, &h1).unwrap(), &h1).unwrap();
            assert_eq!(twice, act(&v, &sq).unwrap());
        }
    }
}
