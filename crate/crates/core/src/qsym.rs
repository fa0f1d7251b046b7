//! The q-symmetrized tensor space `T S`, where `S` is the symmetrizer of a
//! parabolic `W`. Vectors are stored in coordinates of the basis
//! `Ntilde_f = M_f S` indexed by anti-dominant tuples; the rescaled bases
//! `Mtilde_f = Ntilde_f / [|W_f|]` and `N_f = ([|W|] / [|W_f|]) Ntilde_f` are
//! coordinate views.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::canonical::{lusztig_solve, BklSolver, Mode, PolyMatrix};
use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::hecke::{act, symmetrizer};
use crate::laurent::LaurentPoly;
use crate::weightlat::{block, bruhat_leq, Parabolic, Shape, SignedTuple, Window};

/// The three monomial bases of the symmetrized space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    N,
    Ntilde,
    Mtilde,
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BasisKind::N => "N",
            BasisKind::Ntilde => "Ntilde",
            BasisKind::Mtilde => "Mtilde",
        };
        write!(f, "{s}")
    }
}

impl FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "N" => Ok(BasisKind::N),
            "Ntilde" => Ok(BasisKind::Ntilde),
            "Mtilde" => Ok(BasisKind::Mtilde),
            other => Err(Error::Parse(format!("unknown basis {other:?}"))),
        }
    }
}

/// `(numerator, denominator)` of the coordinate factor relating the given
/// basis to `Ntilde`: a vector with `Ntilde`-coordinate `c` at `f` has
/// coordinate `c * num / den` in that basis.
fn factor(p: &Parabolic, f: &SignedTuple, kind: BasisKind) -> Result<(LaurentPoly, LaurentPoly)> {
    let wf = p.stabilizer(f)?.quantum_order();
    Ok(match kind {
        BasisKind::Ntilde => (LaurentPoly::one(), LaurentPoly::one()),
        BasisKind::Mtilde => (wf, LaurentPoly::one()),
        BasisKind::N => (wf, p.quantum_order()),
    })
}

/// Converts one coordinate from basis `from` to basis `to` at `f`.
pub fn convert_coordinate(
    p: &Parabolic,
    f: &SignedTuple,
    c: &LaurentPoly,
    from: BasisKind,
    to: BasisKind,
) -> Result<LaurentPoly> {
    let (num_from, den_from) = factor(p, f, from)?;
    let (num_to, den_to) = factor(p, f, to)?;
    let numerator = &(c * &num_to) * &den_from;
    Ok(numerator.div_exact(&(&den_to * &num_from))?)
}

/// Converts a whole coordinate map.
pub fn base_change(
    p: &Parabolic,
    coords: &BTreeMap<SignedTuple, LaurentPoly>,
    from: BasisKind,
    to: BasisKind,
) -> Result<BTreeMap<SignedTuple, LaurentPoly>> {
    coords
        .iter()
        .map(|(f, c)| Ok((f.clone(), convert_coordinate(p, f, c, from, to)?)))
        .collect()
}

/// An element of the symmetrized space in `Ntilde`-coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSymVector {
    shape: Shape,
    parabolic: Parabolic,
    terms: BTreeMap<SignedTuple, LaurentPoly>,
}

impl QSymVector {
    pub fn zero(p: &Parabolic) -> Self {
        Self { shape: p.shape(), parabolic: p.clone(), terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, f: &SignedTuple, c: &LaurentPoly) -> Result<()> {
        if !self.parabolic.is_antidominant(f) {
            return Err(Error::NotAntiDominant(f.to_string()));
        }
        if c.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(f.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(f);
        }
        Ok(())
    }

    /// Builds a vector from coordinates in any of the three bases; fails if
    /// the vector is not integral in `Ntilde`-coordinates.
    pub fn from_coordinates(
        p: &Parabolic,
        coords: &BTreeMap<SignedTuple, LaurentPoly>,
        kind: BasisKind,
    ) -> Result<Self> {
        let mut out = Self::zero(p);
        for (f, c) in base_change(p, coords, kind, BasisKind::Ntilde)? {
            out.add_term(&f, &c)?;
        }
        Ok(out)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn parabolic(&self) -> &Parabolic {
        &self.parabolic
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SignedTuple, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, f: &SignedTuple) -> LaurentPoly {
        self.terms.get(f).cloned().unwrap_or_default()
    }

    pub fn coordinates(&self, kind: BasisKind) -> Result<BTreeMap<SignedTuple, LaurentPoly>> {
        base_change(&self.parabolic, &self.terms, BasisKind::Ntilde, kind)
    }

    /// The vector in the ambient tensor space.
    pub fn to_fock(&self) -> Result<FockVector> {
        let mut out = FockVector::zero(self.shape);
        for (f, c) in &self.terms {
            out.add_scaled(c, &ntilde_expand(f, &self.parabolic)?);
        }
        Ok(out)
    }
}

/// `Ntilde_f = M_f S` for anti-dominant `f`.
pub fn ntilde_expand(f: &SignedTuple, p: &Parabolic) -> Result<FockVector> {
    if !p.is_antidominant(f) {
        return Err(Error::NotAntiDominant(f.to_string()));
    }
    act(&FockVector::monomial(f), &symmetrizer(p))
}

/// `[|W_f|] sum_{tau in W^f} q^(l(^f w0) - l(tau)) M_{f.tau}`, the closed
/// form of `M_f S` for anti-dominant `f`.
pub fn ntilde_formula(f: &SignedTuple, p: &Parabolic) -> Result<FockVector> {
    let wf = p.stabilizer(f)?;
    let top = p.longest().1 - wf.longest().1;
    let mut out = FockVector::zero(f.shape());
    for (tau, l) in p.coset_reps(&wf) {
        out.add_term(&f.right_act(&tau), &LaurentPoly::q_pow((top - l) as i32));
    }
    Ok(out.scale(&wf.quantum_order()))
}

/// `phi(M_f) = M_f S = q^-l(tau) Ntilde_{f.tau}` with `f.tau` anti-dominant.
pub fn phi_zeta(v: &FockVector, p: &Parabolic) -> Result<QSymVector> {
    v.check_shape(p.shape())?;
    let mut out = QSymVector::zero(p);
    for (f, c) in v.terms() {
        let (rep, tau) = p.antidominant_rep(f);
        out.add_term(&rep, &c.shift(-(tau.length() as i32)))?;
    }
    Ok(out)
}

/// Writes a vector of the ambient space as a combination of `Ntilde`'s,
/// orbit by orbit; any residue is an error.
pub fn reexpress(v: &FockVector, p: &Parabolic) -> Result<QSymVector> {
    v.check_shape(p.shape())?;
    let mut residue = v.clone();
    let mut out = QSymVector::zero(p);
    let reps: Vec<SignedTuple> = {
        let mut r: Vec<_> = v.support().map(|f| p.antidominant_rep(f).0).collect();
        r.sort();
        r.dedup();
        r
    };
    for h in reps {
        let wh = p.stabilizer(&h)?;
        let lead = wh.quantum_order().shift((p.longest().1 - wh.longest().1) as i32);
        let c = residue.coeff(&h).div_exact(&lead).map_err(|_| {
            Error::ReexpressionFailure(format!("coefficient at {h} is not a multiple of {lead}"))
        })?;
        if c.is_zero() {
            continue;
        }
        residue.add_scaled(&-&c, &ntilde_expand(&h, p)?);
        out.add_term(&h, &c)?;
    }
    if !residue.is_zero() {
        return Err(Error::ReexpressionFailure(format!("residue {residue}")));
    }
    Ok(out)
}

/// A basis element of the symmetrized space in a named basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QsymExpansion {
    pub target: SignedTuple,
    pub parabolic: Parabolic,
    pub basis: BasisKind,
    pub window: Window,
    pub coefficients: BTreeMap<SignedTuple, LaurentPoly>,
}

impl QsymExpansion {
    pub fn coeff(&self, g: &SignedTuple) -> LaurentPoly {
        self.coefficients.get(g).cloned().unwrap_or_default()
    }

    pub fn in_basis(&self, kind: BasisKind) -> Result<Self> {
        Ok(Self {
            basis: kind,
            coefficients: base_change(&self.parabolic, &self.coefficients, self.basis, kind)?,
            ..self.clone()
        })
    }
}

impl fmt::Display for QsymExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] =", self.target)?;
        if self.coefficients.is_empty() {
            return write!(f, " 0");
        }
        for (i, (g, c)) in self.coefficients.iter().enumerate() {
            let sep = if i == 0 { " " } else { " + " };
            write!(f, "{sep}({c}){}[{g}]", self.basis)?;
        }
        Ok(())
    }
}

/// Anti-dominant members of the block of `f`, in block order.
pub fn zeta_block(f: &SignedTuple, p: &Parabolic, w: Window) -> Vec<SignedTuple> {
    block(f, w).into_iter().filter(|g| p.is_antidominant(g)).collect()
}

fn require_antidominant(f: &SignedTuple, p: &Parabolic) -> Result<()> {
    if !p.is_antidominant(f) {
        return Err(Error::NotAntiDominant(f.to_string()));
    }
    Ok(())
}

/// The symmetrized canonical element attached to anti-dominant `f`, as
/// the image of `T_{f w0}`, in `N`-coordinates. Checks that each
/// coefficient equals `t_{g w0, f w0}`.
pub fn qsym_canonical_with(bkl: &BklSolver, f: &SignedTuple, p: &Parabolic) -> Result<QsymExpansion> {
    require_antidominant(f, p)?;
    let w0 = p.longest().0;
    let top = bkl.canonical(&f.right_act(&w0))?;
    let image = phi_zeta(&top.to_fock(), p)?;
    let coefficients = image.coordinates(BasisKind::N)?;
    for g in zeta_block(f, p, bkl.window()) {
        let expected = top.coeff(&g.right_act(&w0));
        let found = coefficients.get(&g).cloned().unwrap_or_default();
        if expected != found {
            return Err(Error::IdentityViolation(format!(
                "symmetrized canonical coefficient at ({g}, {f}) is {found}, expected {expected}"
            )));
        }
    }
    Ok(QsymExpansion {
        target: f.clone(),
        parabolic: p.clone(),
        basis: BasisKind::N,
        window: bkl.window(),
        coefficients,
    })
}

pub fn qsym_canonical(f: &SignedTuple, p: &Parabolic, w: Window) -> Result<QsymExpansion> {
    qsym_canonical_with(&BklSolver::new(w), f, p)
}

/// Image of a dual-canonical element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualImage {
    Zero,
    Expansion(QsymExpansion),
}

/// `phi(L_f)` in `Ntilde`-coordinates. For anti-dominant `f` the
/// coefficients are checked against `sum_{x in W^g} l_{g x, f} q^-l(x)`;
/// otherwise the image is checked to vanish.
pub fn qsym_dual_canonical_with(bkl: &BklSolver, f: &SignedTuple, p: &Parabolic) -> Result<DualImage> {
    let dual = bkl.dual_canonical(f)?;
    let image = phi_zeta(&dual.to_fock(), p)?;
    if !p.is_antidominant(f) {
        if !image.is_zero() {
            return Err(Error::IdentityViolation(format!(
                "image of L[{f}] should vanish but has {} terms",
                image.terms().count()
            )));
        }
        return Ok(DualImage::Zero);
    }
    for g in zeta_block(f, p, bkl.window()) {
        let wg = p.stabilizer(&g)?;
        let mut expected = LaurentPoly::zero();
        for (x, l) in p.coset_reps(&wg) {
            expected += dual.coeff(&g.right_act(&x)).shift(-(l as i32));
        }
        if expected != image.coeff(&g) {
            return Err(Error::IdentityViolation(format!(
                "symmetrized dual coefficient at ({g}, {f}) is {}, expected {expected}",
                image.coeff(&g)
            )));
        }
    }
    Ok(DualImage::Expansion(QsymExpansion {
        target: f.clone(),
        parabolic: p.clone(),
        basis: BasisKind::Ntilde,
        window: bkl.window(),
        coefficients: image.terms.clone(),
    }))
}

pub fn qsym_dual_canonical(f: &SignedTuple, p: &Parabolic, w: Window) -> Result<DualImage> {
    qsym_dual_canonical_with(&BklSolver::new(w), f, p)
}

/// The bar involution restricted to the symmetrized space, as a matrix in
/// the `N` or `Mtilde` basis over the anti-dominant part of the block of
/// `f`: entry `[h][g]` is the coefficient of basis element `h` in the bar
/// of basis element `g`. Also checks unitriangularity in the `Ntilde`
/// basis.
pub fn restricted_bar_matrix(
    bkl: &BklSolver,
    f: &SignedTuple,
    p: &Parabolic,
    kind: BasisKind,
) -> Result<(Vec<SignedTuple>, PolyMatrix)> {
    let tuples = zeta_block(f, p, bkl.window());
    let n = tuples.len();
    let index: BTreeMap<&SignedTuple, usize> = tuples.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let full = p.quantum_order();
    let mut matrix = vec![vec![LaurentPoly::zero(); n]; n];
    for (gi, g) in tuples.iter().enumerate() {
        let barred = reexpress(&bkl.bar().bar(&ntilde_expand(g, p)?)?, p)?;
        if !barred.coeff(g).is_one()
            || barred.terms().any(|(h, _)| h != g && !bruhat_leq(h, g))
        {
            return Err(Error::IdentityViolation(format!("bar of Ntilde[{g}] is not unitriangular")));
        }
        let wg = p.stabilizer(g)?.quantum_order();
        // bar(N_g) = ([|W|] / [|W_g|]) bar(Ntilde_g) and bar(Mtilde_g) = bar(Ntilde_g) / [|W_g|]
        let coords = match kind {
            BasisKind::Ntilde => barred.terms.clone(),
            BasisKind::Mtilde => barred
                .coordinates(BasisKind::Mtilde)?
                .into_iter()
                .map(|(h, c)| Ok((h, c.div_exact(&wg)?)))
                .collect::<Result<_>>()?,
            BasisKind::N => {
                let ratio = full.div_exact(&wg)?;
                let scaled = barred.terms.iter().map(|(h, c)| (h.clone(), c * &ratio)).collect();
                base_change(p, &scaled, BasisKind::Ntilde, BasisKind::N)?
            }
        };
        for (h, c) in coords {
            let hi = *index.get(&h).ok_or_else(|| {
                Error::ReexpressionFailure(format!("bar of Ntilde[{g}] leaves the block at {h}"))
            })?;
            matrix[hi][gi] = c;
        }
    }
    Ok((tuples, matrix))
}

/// The symmetrized canonical (or dual) element of anti-dominant `f`
/// computed inside the symmetrized space with the restricted bar map.
pub fn qsym_intrinsic_with(
    bkl: &BklSolver,
    f: &SignedTuple,
    p: &Parabolic,
    kind: BasisKind,
    mode: Mode,
) -> Result<QsymExpansion> {
    require_antidominant(f, p)?;
    let (tuples, r) = restricted_bar_matrix(bkl, f, p, kind)?;
    let target = tuples
        .iter()
        .position(|g| g == f)
        .ok_or_else(|| Error::WindowEscape { tuple: f.to_string(), window: bkl.window() })?;
    let coeffs = lusztig_solve(tuples.len(), target, |g, h| r[g][h].clone(), mode, |g| {
        tuples[g].to_string()
    })?;
    Ok(QsymExpansion {
        target: f.clone(),
        parabolic: p.clone(),
        basis: kind,
        window: bkl.window(),
        coefficients: tuples
            .into_iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    })
}

/// Intrinsic symmetrized canonical element in the `N` basis and its
/// primed counterpart in the `Mtilde` basis.
pub fn qsym_canonical_intrinsic(
    f: &SignedTuple,
    p: &Parabolic,
    w: Window,
) -> Result<(QsymExpansion, QsymExpansion)> {
    let bkl = BklSolver::new(w);
    Ok((
        qsym_intrinsic_with(&bkl, f, p, BasisKind::N, Mode::Canonical)?,
        qsym_intrinsic_with(&bkl, f, p, BasisKind::Mtilde, Mode::Canonical)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(shape: Shape, e: &[i32]) -> SignedTuple {
        SignedTuple::new(shape, e.to_vec()).unwrap()
    }

    fn m(shape: Shape, e: &[i32]) -> FockVector {
        FockVector::monomial(&t(shape, e))
    }

    const S21: Shape = Shape { m: 2, n: 1 };
    const S20: Shape = Shape { m: 2, n: 0 };

    fn s1(shape: Shape) -> Parabolic {
        Parabolic::new(shape, [1]).unwrap()
    }

    #[test]
    fn ntilde_examples() {
        let p = s1(S21);
        let got = ntilde_expand(&t(S21, &[1, 2, 7]), &p).unwrap();
        assert_eq!(got, &m(S21, &[1, 2, 7]).scale(&LaurentPoly::q()) + &m(S21, &[2, 1, 7]));
        let got = ntilde_expand(&t(S21, &[1, 1, 5]), &p).unwrap();
        assert_eq!(got, m(S21, &[1, 1, 5]).scale(&LaurentPoly::q_int(2)));
        let triv = Parabolic::trivial(S21);
        assert_eq!(ntilde_expand(&t(S21, &[2, 1, 5]), &triv).unwrap(), m(S21, &[2, 1, 5]));
        assert!(ntilde_expand(&t(S21, &[2, 1, 5]), &p).is_err());
        for e in [[1, 2, 7], [1, 1, 5]] {
            let f = t(S21, &e);
            assert_eq!(ntilde_formula(&f, &p).unwrap(), ntilde_expand(&f, &p).unwrap());
        }
    }

    #[test]
    fn base_change_examples() {
        let p = s1(S21);
        let f = t(S21, &[1, 1, 5]);
        let one = LaurentPoly::one();
        assert_eq!(
            convert_coordinate(&p, &f, &LaurentPoly::q_int(2), BasisKind::Ntilde, BasisKind::Mtilde)
                .unwrap(),
            LaurentPoly::q_int(2).pow(2)
        );
        assert_eq!(
            convert_coordinate(&p, &f, &LaurentPoly::q_int(2), BasisKind::Mtilde, BasisKind::Ntilde)
                .unwrap(),
            one
        );
        assert!(convert_coordinate(&p, &f, &one, BasisKind::Mtilde, BasisKind::Ntilde).is_err());
        assert_eq!(convert_coordinate(&p, &f, &one, BasisKind::N, BasisKind::Ntilde).unwrap(), one);
        let g = t(S21, &[1, 2, 5]);
        assert_eq!(convert_coordinate(&p, &g, &one, BasisKind::Mtilde, BasisKind::Ntilde).unwrap(), one);
        assert_eq!(
            convert_coordinate(&p, &g, &one, BasisKind::N, BasisKind::Ntilde).unwrap(),
            LaurentPoly::q_int(2)
        );
    }

    #[test]
    fn phi_examples() {
        let p = s1(S21);
        let f = t(S21, &[1, 2, 5]);
        let image = phi_zeta(&FockVector::monomial(&f), &p).unwrap();
        assert_eq!(image.coeff(&f), LaurentPoly::one());
        let image = phi_zeta(&m(S21, &[2, 1, 5]), &p).unwrap();
        assert_eq!(image.coeff(&f), LaurentPoly::q_inv());
        // phi(v H_1) = q^-1 phi(v)
        let h1 = crate::hecke::HeckeElement::generator(S21, 1).unwrap();
        for e in [[2, 1, 5], [1, 2, 5], [3, 3, 0]] {
            let v = m(S21, &e);
            let lhs = phi_zeta(&act(&v, &h1).unwrap(), &p).unwrap();
            let rhs = phi_zeta(&v, &p).unwrap();
            let rhs: BTreeMap<_, _> = rhs.terms().map(|(g, c)| (g.clone(), c.shift(-1))).collect();
            assert_eq!(lhs.terms, rhs);
        }
    }

    #[test]
    fn reexpress_round_trip() {
        let p = Parabolic::full(Shape::new(3, 0));
        let mut v = QSymVector::zero(&p);
        v.add_term(&t(Shape::new(3, 0), &[0, 1, 1]), &LaurentPoly::q()).unwrap();
        v.add_term(&t(Shape::new(3, 0), &[0, 0, 0]), &LaurentPoly::constant(3)).unwrap();
        v.add_term(&t(Shape::new(3, 0), &[0, 1, 2]), &LaurentPoly::q_int(2)).unwrap();
        assert_eq!(reexpress(&v.to_fock().unwrap(), &p).unwrap(), v);
        assert!(matches!(
            reexpress(&m(Shape::new(3, 0), &[0, 1, 2]), &p),
            Err(Error::ReexpressionFailure(_))
        ));
    }

    #[test]
    fn canonical_examples() {
        let w = Window::new(0, 3).unwrap();
        let p = Parabolic::full(S20);
        let f = t(S20, &[1, 2]);
        let e = qsym_canonical(&f, &p, w).unwrap();
        assert_eq!(e.coefficients.len(), 1);
        assert!(e.coeff(&f).is_one());
        let DualImage::Expansion(d) = qsym_dual_canonical(&f, &p, w).unwrap() else {
            panic!("anti-dominant image vanished");
        };
        assert!(d.coeff(&f).is_one());
        assert_eq!(qsym_dual_canonical(&t(S20, &[2, 1]), &p, w).unwrap(), DualImage::Zero);
        let (n, mt) = qsym_canonical_intrinsic(&f, &p, w).unwrap();
        assert_eq!(n.coefficients, e.coefficients);
        assert_eq!(mt.coefficients, e.coefficients);
    }

    #[test]
    fn trivial_parabolic_relabels() {
        let w = Window::new(0, 3).unwrap();
        let s11 = Shape::new(1, 1);
        let p = Parabolic::trivial(s11);
        let f = t(s11, &[3, 3]);
        let e = qsym_canonical(&f, &p, w).unwrap();
        let plain = crate::canonical::canonical(&f, w).unwrap();
        assert_eq!(e.coefficients, plain.coefficients);
        let DualImage::Expansion(d) = qsym_dual_canonical(&f, &p, w).unwrap() else {
            panic!("trivial parabolic image vanished");
        };
        assert_eq!(d.coefficients, crate::canonical::dual_canonical(&f, w).unwrap().coefficients);
    }

    #[test]
    fn push_forward_agrees_with_intrinsic() {
        let w = Window::new(0, 2).unwrap();
        for (shape, gens) in [(S21, vec![1]), (Shape::new(1, 2), vec![2]), (Shape::new(3, 0), vec![1, 2])] {
            let p = Parabolic::new(shape, gens).unwrap();
            let bkl = BklSolver::new(w);
            for f in crate::weightlat::all_tuples(shape, w) {
                if p.is_antidominant(&f) {
                    let pushed = qsym_canonical_with(&bkl, &f, &p).unwrap();
                    let intrinsic = qsym_intrinsic_with(&bkl, &f, &p, BasisKind::N, Mode::Canonical).unwrap();
                    assert_eq!(pushed.coefficients, intrinsic.coefficients, "{f}");
                    let primed = qsym_intrinsic_with(&bkl, &f, &p, BasisKind::Mtilde, Mode::Canonical).unwrap();
                    assert_eq!(primed.coefficients, intrinsic.coefficients, "{f}");
                }
                qsym_dual_canonical_with(&bkl, &f, &p).unwrap();
            }
        }
    }
}
