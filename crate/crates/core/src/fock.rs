//! Vectors in the tensor space of `m` natural and `n` dual modules, and the
//! action of the Chevalley generators of `U_q(gl_infinity)` on them.
//!
//! The coproduct is left-normed: `F_a` acting on factor `j` picks up the
//! twist `K_{a,a+1}` on every earlier factor, `E_a` acting on factor `j`
//! picks up `K_{a+1,a}` on every later factor. The twists are evaluated as
//! scalar powers of `q`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::weightlat::{Sector, Shape, SignedTuple, Window};

#[derive(Clone, PartialEq, Eq)]
pub struct FockVector {
    shape: Shape,
    terms: BTreeMap<SignedTuple, LaurentPoly>,
}

impl FockVector {
    pub fn zero(shape: Shape) -> Self {
        Self { shape, terms: BTreeMap::new() }
    }

    /// The monomial `M_f`.
    pub fn monomial(f: &SignedTuple) -> Self {
        Self::term(f, LaurentPoly::one())
    }

    pub fn term(f: &SignedTuple, p: LaurentPoly) -> Self {
        let mut v = Self::zero(f.shape());
        v.add_term(f, &p);
        v
    }

    pub fn from_terms<I>(shape: Shape, terms: I) -> Self
    where
        I: IntoIterator<Item = (SignedTuple, LaurentPoly)>,
    {
        let mut v = Self::zero(shape);
        for (f, p) in terms {
            v.add_term(&f, &p);
        }
        v
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SignedTuple, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &SignedTuple> {
        self.terms.keys()
    }

    pub fn coeff(&self, f: &SignedTuple) -> LaurentPoly {
        self.terms.get(f).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, f: &SignedTuple, p: &LaurentPoly) {
        assert_eq!(f.shape(), self.shape, "tuple {f} has the wrong shape");
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(f.clone()).or_default();
        *entry += p;
        if entry.is_zero() {
            self.terms.remove(f);
        }
    }

    /// `self += p * other`.
    pub fn add_scaled(&mut self, p: &LaurentPoly, other: &FockVector) {
        if p.is_zero() {
            return;
        }
        for (f, c) in &other.terms {
            self.add_term(f, &(p * c));
        }
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.shape);
        out.add_scaled(p, self);
        out
    }

    /// Applies the coefficient-wise bar map only (not the bar involution of
    /// the module).
    pub fn bar_coefficients(&self) -> Self {
        Self {
            shape: self.shape,
            terms: self.terms.iter().map(|(f, p)| (f.clone(), p.bar())).collect(),
        }
    }

    pub fn in_window(&self, w: Window) -> bool {
        self.terms.keys().all(|f| f.in_window(w))
    }

    /// Drops every term with an entry outside `w`.
    pub fn truncate(&self, w: Window) -> Self {
        Self {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .filter(|(f, _)| f.in_window(w))
                .map(|(f, p)| (f.clone(), p.clone()))
                .collect(),
        }
    }

    pub fn check_window(&self, w: Window) -> Result<()> {
        match self.terms.keys().find(|f| !f.in_window(w)) {
            Some(f) => Err(Error::WindowEscape { tuple: f.to_string(), window: w }),
            None => Ok(()),
        }
    }

    pub fn check_shape(&self, shape: Shape) -> Result<()> {
        if self.shape != shape {
            return Err(Error::ShapeMismatch { expected: shape, found: self.shape });
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let records: Vec<Record> = self
            .terms
            .iter()
            .map(|(f, p)| Record { tuple: f.to_string(), poly: p.clone() })
            .collect();
        serde_json::to_value(records).expect("serializable")
    }

    pub fn from_json(shape: Shape, value: &serde_json::Value) -> Result<Self> {
        let records: Vec<Record> = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("Fock vector JSON: {e}")))?;
        let mut v = Self::zero(shape);
        for r in records {
            v.add_term(&SignedTuple::parse(shape, &r.tuple)?, &r.poly);
        }
        Ok(v)
    }
}

#[derive(Serialize, Deserialize)]
struct Record {
    tuple: String,
    poly: LaurentPoly,
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (t, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})M[{t}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FockVector<{}>({self})", self.shape)
    }
}

impl std::ops::Add for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(&LaurentPoly::one(), rhs);
        out
    }
}

impl std::ops::Sub for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(&LaurentPoly::constant(-1), rhs);
        out
    }
}

/// A Chevalley generator, indexed separately by an integer `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    E,
    F,
    K,
    KInv,
}

/// Exponent of `K_{a,a+1} = K_a K_{a+1}^-1` on one basis vector.
fn twist_down(sector: Sector, a: i32, c: i32) -> i32 {
    let x = (c == a) as i32 - (c == a + 1) as i32;
    x * sector.sign() as i32
}

/// Exponent of `K_a` on the whole monomial.
fn k_exponent(f: &SignedTuple, a: i32) -> i32 {
    (0..f.len())
        .filter(|&p| f.entries()[p] == a)
        .map(|p| f.sector(p).sign() as i32)
        .sum()
}

fn apply_to_monomial(gen: Gen, a: i32, f: &SignedTuple, out: &mut FockVector, coeff: &LaurentPoly) {
    let e = f.entries();
    match gen {
        Gen::K => out.add_term(f, &coeff.shift(k_exponent(f, a))),
        Gen::KInv => out.add_term(f, &coeff.shift(-k_exponent(f, a))),
        Gen::F => {
            let mut twist = 0;
            for j in 0..f.len() {
                let sector = f.sector(j);
                let target = match sector {
                    Sector::V if e[j] == a => Some(a + 1),
                    Sector::W if e[j] == a + 1 => Some(a),
                    _ => None,
                };
                if let Some(t) = target {
                    out.add_term(&f.with_entry(j, t), &coeff.shift(twist));
                }
                twist += twist_down(sector, a, e[j]);
            }
        }
        Gen::E => {
            let mut twist = 0;
            for j in (0..f.len()).rev() {
                let sector = f.sector(j);
                let target = match sector {
                    Sector::V if e[j] == a + 1 => Some(a),
                    Sector::W if e[j] == a => Some(a + 1),
                    _ => None,
                };
                if let Some(t) = target {
                    out.add_term(&f.with_entry(j, t), &coeff.shift(twist));
                }
                // K_{a+1,a} is the inverse of K_{a,a+1}
                twist -= twist_down(sector, a, e[j]);
            }
        }
    }
}

/// Action of `E_a`, `F_a`, `K_a` or `K_a^-1` on a vector.
pub fn apply_chevalley(gen: Gen, a: i32, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.shape());
    for (f, p) in v.terms() {
        apply_to_monomial(gen, a, f, &mut out, p);
    }
    out
}

/// Divided power `E_a^(r)` or `F_a^(r)`.
pub fn apply_divided(gen: Gen, a: i32, r: u32, v: &FockVector) -> Result<FockVector> {
    assert!(matches!(gen, Gen::E | Gen::F), "divided powers exist for E and F only");
    let mut cur = v.clone();
    for _ in 0..r {
        cur = apply_chevalley(gen, a, &cur);
    }
    let fact = LaurentPoly::q_fact(r);
    let mut out = FockVector::zero(v.shape());
    for (f, p) in cur.terms() {
        out.add_term(f, &p.div_exact(&fact)?);
    }
    Ok(out)
}

/// The pairing `<w_a, v_b> = (-q)^-a delta_{ab}`.
pub fn dual_pair(a: i32, b: i32) -> LaurentPoly {
    if a != b {
        return LaurentPoly::zero();
    }
    let sign = if a.rem_euclid(2) == 0 { 1 } else { -1 };
    LaurentPoly::monomial(sign, -a)
}

/// Coefficient-wise specialization at `q = 1`, zeros pruned.
pub fn eval_at_one(v: &FockVector) -> BTreeMap<SignedTuple, i64> {
    v.terms()
        .map(|(f, p)| (f.clone(), p.eval_at_one()))
        .filter(|(_, c)| *c != 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn t(shape: Shape, e: &[i32]) -> SignedTuple {
        SignedTuple::new(shape, e.to_vec()).unwrap()
    }

    fn m(shape: Shape, e: &[i32]) -> FockVector {
        FockVector::monomial(&t(shape, e))
    }

    const S20: Shape = Shape { m: 2, n: 0 };

    #[test]
    fn chevalley_examples() {
        assert_eq!(apply_chevalley(Gen::F, 1, &m(S20, &[1, 2])), m(S20, &[2, 2]));
        assert_eq!(
            apply_chevalley(Gen::E, 1, &m(S20, &[2, 1])),
            m(S20, &[1, 1]).scale(&LaurentPoly::q_inv())
        );
        let shape = Shape::new(2, 2);
        let f = t(shape, &[3, 1, 3, 3]);
        assert_eq!(
            apply_chevalley(Gen::K, 3, &FockVector::monomial(&f)),
            FockVector::term(&f, LaurentPoly::q_pow(-1))
        );
        assert_eq!(
            apply_chevalley(Gen::KInv, 1, &FockVector::monomial(&f)),
            FockVector::term(&f, LaurentPoly::q_pow(-1))
        );
    }

    #[test]
    fn dual_module_rules() {
        let s = Shape::new(0, 1);
        assert_eq!(apply_chevalley(Gen::E, 2, &m(s, &[2])), m(s, &[3]));
        assert_eq!(apply_chevalley(Gen::F, 2, &m(s, &[3])), m(s, &[2]));
        assert!(apply_chevalley(Gen::F, 2, &m(s, &[2])).is_zero());
        assert_eq!(
            apply_chevalley(Gen::K, 2, &m(s, &[2])),
            FockVector::term(&t(s, &[2]), LaurentPoly::q_inv())
        );
    }

    #[test]
    fn divided_powers() {
        assert_eq!(apply_divided(Gen::F, 1, 2, &m(S20, &[1, 1])).unwrap(), m(S20, &[2, 2]));
        let v = m(S20, &[1, 3]);
        assert_eq!(apply_divided(Gen::F, 1, 1, &v).unwrap(), apply_chevalley(Gen::F, 1, &v));
        assert!(apply_chevalley(Gen::E, 5, &v).is_zero());
        assert!(apply_divided(Gen::E, 5, 2, &v).unwrap().is_zero());
        let s = Shape::new(3, 1);
        let v = m(s, &[0, 0, 0, 2]);
        let three = apply_divided(Gen::F, 0, 3, &v).unwrap();
        assert_eq!(three, m(s, &[1, 1, 1, 2]));
    }

    #[test]
    fn pairing() {
        assert!(dual_pair(0, 0).is_one());
        assert_eq!(dual_pair(1, 1), LaurentPoly::monomial(-1, -1));
        assert_eq!(dual_pair(-2, -2), LaurentPoly::q_pow(2));
        assert!(dual_pair(1, 2).is_zero());
    }

    #[test]
    fn specialization() {
        let f = t(S20, &[1, 2]);
        let v = FockVector::term(&f, LaurentPoly::q_int(2));
        assert_eq!(eval_at_one(&v).get(&f), Some(&2));
        assert!(eval_at_one(&FockVector::zero(S20)).is_empty());
        let v = FockVector::term(&f, LaurentPoly::q_minus_q_inv());
        assert!(eval_at_one(&v).is_empty());
    }

    #[test]
    fn sl2_relations_on_monomials() {
        // (E_a F_b - F_b E_a) = delta_ab (K_{a,a+1} - K_{a+1,a}) / (q - q^-1)
        let w = Window::new(0, 3).unwrap();
        for shape in [Shape::new(2, 1), Shape::new(1, 2), Shape::new(2, 2), Shape::new(0, 3)] {
            for e in (0..shape.len()).map(|_| w.letters()).multi_cartesian_product() {
                let v = m(shape, &e);
                for a in w.lo..w.hi {
                    for b in w.lo..w.hi {
                        let ef = apply_chevalley(Gen::E, a, &apply_chevalley(Gen::F, b, &v));
                        let fe = apply_chevalley(Gen::F, b, &apply_chevalley(Gen::E, a, &v));
                        let lhs = &ef - &fe;
                        if a != b {
                            assert!(lhs.is_zero(), "{shape} {e:?} a={a} b={b}");
                            continue;
                        }
                        let f = t(shape, &e);
                        let h = k_exponent(&f, a) - k_exponent(&f, a + 1);
                        let num = LaurentPoly::from_terms([(h, 1), (-h, -1)]);
                        let c = num.div_exact(&LaurentPoly::q_minus_q_inv()).unwrap();
                        assert_eq!(lhs, FockVector::term(&f, c), "{shape} {e:?} a={a}");
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let s = Shape::new(1, 1);
        let mut v = m(s, &[2, 2]);
        v.add_term(&t(s, &[1, 1]), &LaurentPoly::q());
        let json = v.to_json();
        assert_eq!(
            json.to_string(),
            r#"[{"poly":{"1":1},"tuple":"1|1"},{"poly":{"0":1},"tuple":"2|2"}]"#
        );
        assert_eq!(FockVector::from_json(s, &json).unwrap(), v);
    }

    #[test]
    fn window_checks() {
        let v = m(S20, &[1, 5]);
        let w = Window::new(0, 3).unwrap();
        assert!(matches!(v.check_window(w), Err(Error::WindowEscape { .. })));
        assert!(v.truncate(w).is_zero());
        assert!(v.check_window(Window::new(0, 5).unwrap()).is_ok());
    }
}
