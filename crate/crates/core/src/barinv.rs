//! The bar involution on the windowed tensor space.
//!
//! The bar map is built one tensor factor at a time:
//! `bar(x (x) y) = Theta(bar(x) (x) y)`, where a single factor is fixed and
//! `Theta` is the coupling operator. For the coproduct used in [`crate::fock`]
//! the coupling raises the left factor with `E`'s and lowers the new right
//! factor:
//!
//! * new `V` factor: `Theta(x (x) v_b) = x (x) v_b + sum_{c > b} (q - q^-1) E_{bc}(x) (x) v_c`
//!   with `E_{b,b+1} = E_b` and `E_{bc} = E_b E_{b+1,c} - q^-1 E_{b+1,c} E_b`;
//! * new `W` factor: `Theta(x (x) w_b) = x (x) w_b + sum_{c < b} (q - q^-1) E'_{cb}(x) (x) w_c`
//!   with `E'_{c,c+1} = E_c` and `E'_{c,d+1} = E_d E'_{cd} - q^-1 E'_{cd} E_d`.
//!
//! Restricted to a window only generators with both indices inside the
//! window occur, so the windowed map is the exact bar involution of the
//! finite-rank tensor space. [`verify_intertwining`] re-checks the defining
//! equations numerically.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::canonical::Mode;
use crate::error::{Error, Result};
use crate::fock::{apply_chevalley, FockVector, Gen};
use crate::hecke::{act, HeckeElement};
use crate::laurent::LaurentPoly;
use crate::weightlat::{block, block_of_weight, bruhat_lt, PWeight, Parabolic, Sector, Shape, SignedTuple, Window};

/// The bar involution of single-sector shapes, transported from the Hecke
/// algebra: `bar(M_{f0 . sigma}) = M_{f0} bar(H_sigma)` with `f0` the
/// anti-dominant element of the orbit.
pub fn pure_bar(v: &FockVector) -> Result<FockVector> {
    let shape = v.shape();
    if shape.m != 0 && shape.n != 0 {
        return Err(Error::ShapeMismatch { expected: Shape::new(shape.len(), 0), found: shape });
    }
    let full = Parabolic::full(shape);
    let mut out = FockVector::zero(shape);
    for (f, p) in v.terms() {
        let (f0, tau) = full.antidominant_rep(f);
        let sigma = tau.inverse();
        let hbar = HeckeElement::basis(shape, sigma).bar();
        out.add_scaled(&p.bar(), &act(&FockVector::monomial(&f0), &hbar)?);
    }
    Ok(out)
}

/// `x (x) u_b` for a new last factor.
fn tensor_with(x: &FockVector, sector: Sector, b: i32) -> FockVector {
    FockVector::from_terms(
        x.shape().push(sector),
        x.terms().map(|(f, p)| (f.extend(sector, b), p.clone())),
    )
}

fn e(a: i32, x: &FockVector) -> FockVector {
    apply_chevalley(Gen::E, a, x)
}

/// `E_{bc}(x)` for `b < c`.
fn root_vector_v(b: i32, c: i32, x: &FockVector) -> FockVector {
    if x.is_zero() {
        return x.clone();
    }
    if c == b + 1 {
        return e(b, x);
    }
    let first = e(b, &root_vector_v(b + 1, c, x));
    let second = root_vector_v(b + 1, c, &e(b, x));
    let mut out = first;
    out.add_scaled(&LaurentPoly::monomial(-1, -1), &second);
    out
}

/// `E'_{cd}(x)` for `c < d`.
fn root_vector_w(c: i32, d: i32, x: &FockVector) -> FockVector {
    if x.is_zero() {
        return x.clone();
    }
    if d == c + 1 {
        return e(c, x);
    }
    let first = e(d - 1, &root_vector_w(c, d - 1, x));
    let second = root_vector_w(c, d - 1, &e(d - 1, x));
    let mut out = first;
    out.add_scaled(&LaurentPoly::monomial(-1, -1), &second);
    out
}

/// `Theta(x (x) u_b)` within the window.
fn theta(x: &FockVector, sector: Sector, b: i32, w: Window) -> FockVector {
    let mut out = tensor_with(x, sector, b);
    let scale = LaurentPoly::q_minus_q_inv();
    match sector {
        Sector::V => {
            for c in b + 1..=w.hi {
                let y = root_vector_v(b, c, x);
                out.add_scaled(&scale, &tensor_with(&y, sector, c));
            }
        }
        Sector::W => {
            for c in w.lo..b {
                let y = root_vector_w(c, b, x);
                out.add_scaled(&scale, &tensor_with(&y, sector, c));
            }
        }
    }
    out
}

/// The coupling operator on one weight block of `left (x) one factor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingOperator {
    window: Window,
    left_shape: Shape,
    right_sector: Sector,
    weight: PWeight,
    /// `(source, target) -> coefficient of M_target in Theta(M_source)`.
    entries: BTreeMap<(SignedTuple, SignedTuple), LaurentPoly>,
}

impl CouplingOperator {
    pub fn build(left_shape: Shape, right_sector: Sector, w: Window, weight: &PWeight) -> Self {
        let shape = left_shape.push(right_sector);
        let mut entries = BTreeMap::new();
        for f in block_of_weight(shape, weight, w) {
            let x = FockVector::monomial(&f.prefix());
            let b = *f.entries().last().expect("nonempty tuple");
            for (g, p) in theta(&x, right_sector, b, w).terms() {
                entries.insert((f.clone(), g.clone()), p.clone());
            }
        }
        Self { window: w, left_shape, right_sector, weight: weight.clone(), entries }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn left_shape(&self) -> Shape {
        self.left_shape
    }

    pub fn right_sector(&self) -> Sector {
        self.right_sector
    }

    pub fn weight(&self) -> &PWeight {
        &self.weight
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(SignedTuple, SignedTuple), &LaurentPoly)> {
        self.entries.iter()
    }

    /// `Theta(v)` for `v` supported on the block.
    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero(v.shape());
        for ((src, dst), p) in &self.entries {
            let c = v.coeff(src);
            if !c.is_zero() {
                out.add_term(dst, &(&c * p));
            }
        }
        out
    }

    /// Entries grouped by `nu`, the amount by which the weight of the last
    /// factor drops (and the left weight rises).
    pub fn components(&self) -> BTreeMap<PWeight, Vec<(SignedTuple, SignedTuple, LaurentPoly)>> {
        let k = self.left_shape.len() + 1;
        let mut out: BTreeMap<PWeight, Vec<_>> = BTreeMap::new();
        for ((src, dst), p) in &self.entries {
            let nu = src.wt_prefix(k).sub(&dst.wt_prefix(k));
            out.entry(nu).or_default().push((src.clone(), dst.clone(), p.clone()));
        }
        out
    }

    /// The zero component is the identity and every other component moves
    /// weight by a positive `nu` from right to left.
    pub fn check_grading(&self) -> bool {
        let k = self.left_shape.len() + 1;
        self.components().into_iter().all(|(nu, items)| {
            if nu.is_zero() {
                items.iter().all(|(s, d, p)| s == d && p.is_one())
            } else {
                PWeight::zero().leq(&nu)
                    && items.iter().all(|(s, d, _)| {
                        let left = d.wt().sub(&d.wt_prefix(k)).sub(&s.wt().sub(&s.wt_prefix(k)));
                        left == nu
                    })
            }
        })
    }
}

pub fn coupling(left_shape: Shape, right_sector: Sector, w: Window, weight: &PWeight) -> CouplingOperator {
    CouplingOperator::build(left_shape, right_sector, w, weight)
}

/// The bar involution on a fixed window, memoized per monomial.
#[derive(Debug)]
pub struct BarInvolution {
    window: Window,
    memo: Mutex<HashMap<SignedTuple, FockVector>>,
}

impl BarInvolution {
    pub fn new(window: Window) -> Self {
        Self { window, memo: Mutex::new(HashMap::new()) }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// `bar(M_f)`.
    pub fn bar_monomial(&self, f: &SignedTuple) -> Result<FockVector> {
        if !f.in_window(self.window) {
            return Err(Error::WindowEscape { tuple: f.to_string(), window: self.window });
        }
        if let Some(v) = self.memo.lock().expect("bar memo poisoned").get(f) {
            return Ok(v.clone());
        }
        let result = if f.len() <= 1 {
            FockVector::monomial(f)
        } else {
            let left = self.bar_monomial(&f.prefix())?;
            let last = f.len() - 1;
            theta(&left, f.sector(last), f.entries()[last], self.window)
        };
        result.check_window(self.window)?;
        self.memo
            .lock()
            .expect("bar memo poisoned")
            .insert(f.clone(), result.clone());
        Ok(result)
    }

    /// The anti-linear bar map on an arbitrary windowed vector.
    pub fn bar(&self, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero(v.shape());
        for (f, p) in v.terms() {
            out.add_scaled(&p.bar(), &self.bar_monomial(f)?);
        }
        Ok(out)
    }

    /// The coefficients `r_{gf}` of `bar(M_f) = sum_g r_{gf} M_g`.
    pub fn r_column(&self, f: &SignedTuple) -> Result<FockVector> {
        self.bar_monomial(f)
    }
}

/// One-shot bar map on the window `w`.
pub fn bar(v: &FockVector, w: Window) -> Result<FockVector> {
    BarInvolution::new(w).bar(v)
}

/// Checks `bar(u M_f) = bar(u) bar(M_f)` for every monomial of the block of
/// `left (x) one factor` of the given weight and every Chevalley generator
/// supported in the window, where `bar(E) = E`, `bar(F) = F`,
/// `bar(K) = K^-1`.
pub fn verify_intertwining(
    bar: &BarInvolution,
    left_shape: Shape,
    right_sector: Sector,
    weight: &PWeight,
) -> Result<()> {
    let w = bar.window();
    let shape = left_shape.push(right_sector);
    for f in block_of_weight(shape, weight, w) {
        let m = FockVector::monomial(&f);
        let barred = bar.bar_monomial(&f)?;
        let mut checks = Vec::new();
        for a in w.lo..w.hi {
            checks.push((Gen::E, Gen::E, a));
            checks.push((Gen::F, Gen::F, a));
        }
        for a in w.letters() {
            checks.push((Gen::K, Gen::KInv, a));
        }
        for (u, u_bar, a) in checks {
            let lhs = bar.bar(&apply_chevalley(u, a, &m))?;
            let rhs = apply_chevalley(u_bar, a, &barred);
            if lhs != rhs {
                return Err(Error::NoSolution(format!(
                    "coupling for {f} does not intertwine {u:?}_{a}"
                )));
            }
        }
    }
    Ok(())
}

struct Equation {
    coeffs: BTreeMap<usize, BigRational>,
    rhs: BigRational,
}

impl Equation {
    /// `self -= factor * other`.
    fn sub_scaled(&mut self, factor: &BigRational, other: &Equation) {
        for (&c, v) in &other.coeffs {
            let entry = self.coeffs.entry(c).or_insert_with(BigRational::zero);
            *entry -= factor * v;
            if entry.is_zero() {
                self.coeffs.remove(&c);
            }
        }
        self.rhs -= factor * &other.rhs;
    }
}

/// Sparse Gauss-Jordan elimination; returns the unique solution.
fn solve_exact(mut rows: Vec<Equation>, ncols: usize, what: &str) -> Result<Vec<BigRational>> {
    let mut pivot_row = vec![None; ncols];
    let mut used = vec![false; rows.len()];
    for col in 0..ncols {
        let Some(r) = (0..rows.len())
            .filter(|&r| !used[r] && rows[r].coeffs.contains_key(&col))
            .min_by_key(|&r| rows[r].coeffs.len())
        else {
            continue;
        };
        let inv = rows[r].coeffs[&col].recip();
        for v in rows[r].coeffs.values_mut() {
            *v *= &inv;
        }
        rows[r].rhs *= &inv;
        let pivot = std::mem::replace(&mut rows[r], Equation { coeffs: BTreeMap::new(), rhs: BigRational::zero() });
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r {
                if let Some(factor) = row.coeffs.get(&col).cloned() {
                    row.sub_scaled(&factor, &pivot);
                }
            }
        }
        rows[r] = pivot;
        used[r] = true;
        pivot_row[col] = Some(r);
    }
    if rows
        .iter()
        .zip(&used)
        .any(|(row, &u)| !u && row.coeffs.is_empty() && !row.rhs.is_zero())
    {
        return Err(Error::NoSolution(format!("inconsistent system for {what}")));
    }
    pivot_row
        .iter()
        .map(|p| match p {
            Some(r) => Ok(rows[*r].rhs.clone()),
            None => Err(Error::NonUnique(format!("free unknown in the system for {what}"))),
        })
        .collect()
}

/// Brute-force bar-invariant element `M_f + sum_{g < f} c_g M_g` with
/// `c_g` in `qZ[q]` (canonical mode) or `q^-1 Z[q^-1]` (dual mode) of
/// degree at most `degree_bound`, found by exact linear algebra over the
/// rationals with one unknown per `(g, power of q)`.
pub fn bar_oracle(f: &SignedTuple, w: Window, degree_bound: usize, mode: Mode) -> Result<FockVector> {
    let bar = BarInvolution::new(w);
    bar_oracle_with(&bar, f, degree_bound, mode)
}

pub fn bar_oracle_with(bar: &BarInvolution, f: &SignedTuple, degree_bound: usize, mode: Mode) -> Result<FockVector> {
    let w = bar.window();
    let lower: Vec<SignedTuple> = block(f, w).into_iter().filter(|g| bruhat_lt(g, f)).collect();
    let sign: i32 = match mode {
        Mode::Canonical => 1,
        Mode::Dual => -1,
    };
    let d = degree_bound;
    let col = |gi: usize, k: usize| gi * d + (k - 1);
    let ncols = lower.len() * d;
    // (h, exponent) -> equation
    let mut system: BTreeMap<(SignedTuple, i32), Equation> = BTreeMap::new();
    fn row<'a>(
        system: &'a mut BTreeMap<(SignedTuple, i32), Equation>,
        h: &SignedTuple,
        e: i32,
    ) -> &'a mut Equation {
        system
            .entry((h.clone(), e))
            .or_insert_with(|| Equation { coeffs: BTreeMap::new(), rhs: BigRational::zero() })
    }
    let big = |c: i64| BigRational::from_integer(BigInt::from(c));
    // bar(M_f) - M_f moves to the right-hand side
    let drift = &bar.bar_monomial(f)? - &FockVector::monomial(f);
    for (h, p) in drift.terms() {
        for (e, c) in p.terms() {
            row(&mut system, h, e).rhs -= big(c);
        }
    }
    for (gi, g) in lower.iter().enumerate() {
        let bg = bar.bar_monomial(g)?;
        for k in 1..=d {
            let kk = k as i32;
            // x (q^{-sk} bar(M_g) - q^{sk} M_g)
            for (h, p) in bg.terms() {
                for (e, c) in p.terms() {
                    let eq = row(&mut system, h, e - sign * kk);
                    let entry = eq.coeffs.entry(col(gi, k)).or_insert_with(BigRational::zero);
                    *entry += big(c);
                }
            }
            let eq = row(&mut system, g, sign * kk);
            let entry = eq.coeffs.entry(col(gi, k)).or_insert_with(BigRational::zero);
            *entry -= BigRational::one();
        }
    }
    let rows: Vec<Equation> = system
        .into_values()
        .map(|mut eq| {
            eq.coeffs.retain(|_, v| !v.is_zero());
            eq
        })
        .collect();
    let solution = solve_exact(rows, ncols, &f.to_string())?;
    let mut out = FockVector::monomial(f);
    for (gi, g) in lower.iter().enumerate() {
        let mut terms = Vec::new();
        for k in 1..=d {
            let x = &solution[col(gi, k)];
            if !x.is_integer() {
                return Err(Error::NoSolution(format!("non-integral coefficient {x} at {g}")));
            }
            let v = x
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::NoSolution(format!("coefficient at {g} out of range")))?;
            terms.push((sign * k as i32, v));
        }
        out.add_term(g, &LaurentPoly::from_terms(terms));
    }
    Ok(out)
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
    const S11: Shape = Shape { m: 1, n: 1 };

    #[test]
    fn pure_bar_examples() {
        assert_eq!(pure_bar(&m(S20, &[1, 2])).unwrap(), m(S20, &[1, 2]));
        let expected = &m(S20, &[2, 1]) + &m(S20, &[1, 2]).scale(&LaurentPoly::q_minus_q_inv());
        assert_eq!(pure_bar(&m(S20, &[2, 1])).unwrap(), expected);
        let s10 = Shape::new(1, 0);
        assert_eq!(pure_bar(&m(s10, &[7])).unwrap(), m(s10, &[7]));
        assert!(pure_bar(&m(S11, &[1, 1])).is_err());
    }

    #[test]
    fn bar_examples() {
        let w = Window::new(0, 4).unwrap();
        assert_eq!(bar(&m(S11, &[1, 3]), w).unwrap(), m(S11, &[1, 3]));
        let expected = &m(S20, &[2, 1]) + &m(S20, &[1, 2]).scale(&LaurentPoly::q_minus_q_inv());
        assert_eq!(bar(&m(S20, &[2, 1]), w).unwrap(), expected);
        let remark = &m(S20, &[1, 2]).scale(&LaurentPoly::q()) + &m(S20, &[2, 1]);
        assert_eq!(bar(&remark, w).unwrap(), remark);
        let s02 = Shape::new(0, 2);
        let expected = &m(s02, &[1, 2]) + &m(s02, &[2, 1]).scale(&LaurentPoly::q_minus_q_inv());
        assert_eq!(bar(&m(s02, &[1, 2]), w).unwrap(), expected);
    }

    #[test]
    fn atypical_chain_bar() {
        // bar(M_(a,a)) = M_(a,a) + sum_k (-q^-1)^{k-1} (q - q^-1) M_(a-k,a-k)
        let w = Window::new(-2, 3).unwrap();
        let got = bar(&m(S11, &[3, 3]), w).unwrap();
        let mut expected = m(S11, &[3, 3]);
        for k in 1..=5 {
            let c = &LaurentPoly::monomial(-1, -1).pow(k as u32 - 1) * &LaurentPoly::q_minus_q_inv();
            expected.add_term(&t(S11, &[3 - k, 3 - k]), &c);
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn coupling_examples() {
        let w = Window::new(0, 3).unwrap();
        let s10 = Shape::new(1, 0);
        for (a, b) in [(1, 2), (2, 2), (0, 3)] {
            let wt = t(S20, &[a, b]).wt();
            let theta = coupling(s10, Sector::V, w, &wt);
            let v = m(S20, &[a, b]);
            assert_eq!(theta.apply(&v), v);
        }
        let theta = coupling(s10, Sector::V, w, &t(S20, &[2, 1]).wt());
        let got = theta.apply(&m(S20, &[2, 1]));
        let c = got.coeff(&t(S20, &[1, 2]));
        assert!(c == LaurentPoly::q_minus_q_inv() || c == LaurentPoly::q_minus_q_inv().scale(-1));
        assert!(theta.check_grading());
        let theta = coupling(s10, Sector::W, Window::new(0, 4).unwrap(), &t(S11, &[1, 3]).wt());
        assert_eq!(theta.apply(&m(S11, &[1, 3])), m(S11, &[1, 3]));
    }

    #[test]
    fn coupling_grading_mixed() {
        let w = Window::new(0, 3).unwrap();
        for left in [Shape::new(1, 1), Shape::new(2, 0), Shape::new(1, 0)] {
            let shape = left.push(Sector::W);
            for e in (0..shape.len()).map(|_| w.letters()).multi_cartesian_product() {
                let f = t(shape, &e);
                let theta = coupling(left, Sector::W, w, &f.wt());
                assert!(theta.check_grading(), "{f}");
            }
        }
    }

    #[test]
    fn intertwining_holds_on_small_blocks() {
        let w = Window::new(0, 2).unwrap();
        let bar = BarInvolution::new(w);
        for (left, sector) in [
            (Shape::new(1, 0), Sector::V),
            (Shape::new(1, 0), Sector::W),
            (Shape::new(0, 1), Sector::W),
            (Shape::new(1, 1), Sector::W),
            (Shape::new(2, 0), Sector::W),
        ] {
            let shape = left.push(sector);
            for e in (0..shape.len()).map(|_| w.letters()).multi_cartesian_product() {
                verify_intertwining(&bar, left, sector, &t(shape, &e).wt()).unwrap();
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let w = Window::new(0, 4).unwrap();
        assert_eq!(bar_oracle(&t(S11, &[1, 3]), w, 3, Mode::Canonical).unwrap(), m(S11, &[1, 3]));
        let expected = &m(S20, &[2, 1]) + &m(S20, &[1, 2]).scale(&LaurentPoly::q());
        assert_eq!(bar_oracle(&t(S20, &[2, 1]), w, 2, Mode::Canonical).unwrap(), expected);
        let got = bar_oracle(&t(S11, &[4, 4]), w, 5, Mode::Dual).unwrap();
        let mut expected = FockVector::zero(S11);
        for k in 0..=4 {
            expected.add_term(&t(S11, &[4 - k, 4 - k]), &LaurentPoly::monomial(-1, -1).pow(k as u32));
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn window_escape() {
        let w = Window::new(0, 2).unwrap();
        assert!(matches!(bar(&m(S20, &[0, 3]), w), Err(Error::WindowEscape { .. })));
    }
}
