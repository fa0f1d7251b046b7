//! Canonical and dual-canonical bases of the windowed tensor space, the
//! matrices of their coefficient polynomials, and the inverse relation
//! between the two.
//!
//! The solver walks a block downward along its linear extension of the
//! Bruhat order: with `bar(M_h) = sum_g r_{gh} M_g` the coefficient `t_g`
//! must satisfy `t_g - bar(t_g) = sum_{h > g} r_{gh} bar(t_h)`, and the
//! degree condition picks the positive (or negative) half of the right side.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::barinv::BarInvolution;
use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::laurent::LaurentPoly;
use crate::weightlat::{block, bruhat_leq, PWeight, Shape, SignedTuple, Window};

/// Which of the two bar-invariant bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Off-diagonal coefficients in `qZ[q]`.
    Canonical,
    /// Off-diagonal coefficients in `q^-1 Z[q^-1]`.
    Dual,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Canonical => write!(f, "canonical"),
            Mode::Dual => write!(f, "dual"),
        }
    }
}

impl Mode {
    /// Whether `p` satisfies the off-diagonal degree condition.
    pub fn admits(self, p: &LaurentPoly) -> bool {
        match self {
            Mode::Canonical => p.in_positive_part(),
            Mode::Dual => p.in_negative_part(),
        }
    }
}

/// Square matrix of Laurent polynomials, indexed `[row][column]`.
pub type PolyMatrix = Vec<Vec<LaurentPoly>>;

/// Generic triangular solver. Basis elements are `0..n` in an order where
/// `bar(b_h)` only involves `b_g` with `g <= h`; `r(g, h)` is the
/// coefficient of `b_g` in `bar(b_h)`. Returns the coefficients of the
/// bar-invariant element attached to `target`.
pub fn lusztig_solve<R, L>(n: usize, target: usize, r: R, mode: Mode, label: L) -> Result<Vec<LaurentPoly>>
where
    R: Fn(usize, usize) -> LaurentPoly,
    L: Fn(usize) -> String,
{
    let mut coeffs = vec![LaurentPoly::zero(); n];
    coeffs[target] = LaurentPoly::one();
    for g in (0..target).rev() {
        let mut d = LaurentPoly::zero();
        for h in g + 1..=target {
            if coeffs[h].is_zero() {
                continue;
            }
            let r_gh = r(g, h);
            if !r_gh.is_zero() {
                d += &r_gh * &coeffs[h].bar();
            }
        }
        let part = match mode {
            Mode::Canonical => d.pos_part(),
            Mode::Dual => d.neg_part(),
        };
        coeffs[g] = part.map_err(|_| Error::AntisymmetryViolation { g: label(g), d: d.to_string() })?;
    }
    Ok(coeffs)
}

/// `T_f` or `L_f` as a combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisExpansion {
    pub target: SignedTuple,
    pub mode: Mode,
    pub window: Window,
    pub coefficients: BTreeMap<SignedTuple, LaurentPoly>,
}

impl BasisExpansion {
    pub fn coeff(&self, g: &SignedTuple) -> LaurentPoly {
        self.coefficients.get(g).cloned().unwrap_or_default()
    }

    pub fn to_fock(&self) -> FockVector {
        FockVector::from_terms(
            self.target.shape(),
            self.coefficients.iter().map(|(g, p)| (g.clone(), p.clone())),
        )
    }

    /// Unitriangularity and degree conditions.
    pub fn satisfies_degree_conditions(&self) -> bool {
        self.coeff(&self.target).is_one()
            && self.coefficients.iter().all(|(g, p)| {
                g == &self.target || (bruhat_leq(g, &self.target) && self.mode.admits(p))
            })
    }

    /// Some off-diagonal support element has an entry on the lower window
    /// edge, so a wider window might add terms.
    pub fn touches_floor(&self) -> bool {
        self.coefficients
            .keys()
            .any(|g| g != &self.target && g.entries().contains(&self.window.lo))
    }
}

impl fmt::Display for BasisExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.mode {
            Mode::Canonical => "T",
            Mode::Dual => "L",
        };
        write!(f, "{name}[{}] = {}", self.target, self.to_fock())
    }
}

/// A weight block of the window with its bar matrix.
#[derive(Debug)]
pub struct BlockData {
    pub tuples: Vec<SignedTuple>,
    pub index: HashMap<SignedTuple, usize>,
    /// `r[g][h]`: coefficient of `M_g` in `bar(M_h)`.
    pub r: PolyMatrix,
}

impl BlockData {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }
}

/// Canonical-basis engine for one window; caches bar matrices per block and
/// expansions per `(f, mode)`.
#[derive(Debug)]
pub struct BklSolver {
    bar: BarInvolution,
    blocks: Mutex<HashMap<(Shape, PWeight), Arc<BlockData>>>,
    expansions: Mutex<HashMap<(SignedTuple, Mode), BasisExpansion>>,
}

impl BklSolver {
    pub fn new(window: Window) -> Self {
        Self {
            bar: BarInvolution::new(window),
            blocks: Mutex::new(HashMap::new()),
            expansions: Mutex::new(HashMap::new()),
        }
    }

    pub fn window(&self) -> Window {
        self.bar.window()
    }

    pub fn bar(&self) -> &BarInvolution {
        &self.bar
    }

    fn check_in_window(&self, f: &SignedTuple) -> Result<()> {
        if !f.in_window(self.window()) {
            return Err(Error::WindowEscape { tuple: f.to_string(), window: self.window() });
        }
        Ok(())
    }

    pub fn block_data(&self, f: &SignedTuple) -> Result<Arc<BlockData>> {
        self.check_in_window(f)?;
        let key = (f.shape(), f.wt());
        if let Some(b) = self.blocks.lock().expect("block cache poisoned").get(&key) {
            return Ok(Arc::clone(b));
        }
        let tuples = block(f, self.window());
        let index: HashMap<SignedTuple, usize> =
            tuples.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let n = tuples.len();
        let mut r = vec![vec![LaurentPoly::zero(); n]; n];
        for (h, th) in tuples.iter().enumerate() {
            for (g, p) in self.bar.bar_monomial(th)?.terms() {
                let gi = *index.get(g).ok_or_else(|| {
                    Error::IdentityViolation(format!("bar of {th} leaves its block at {g}"))
                })?;
                if gi > h {
                    return Err(Error::IdentityViolation(format!(
                        "bar of {th} is not triangular: term at {g}"
                    )));
                }
                r[gi][h] = p.clone();
            }
        }
        let data = Arc::new(BlockData { tuples, index, r });
        self.blocks
            .lock()
            .expect("block cache poisoned")
            .insert(key, Arc::clone(&data));
        Ok(data)
    }

    pub fn expansion(&self, f: &SignedTuple, mode: Mode) -> Result<BasisExpansion> {
        let key = (f.clone(), mode);
        if let Some(e) = self.expansions.lock().expect("expansion cache poisoned").get(&key) {
            return Ok(e.clone());
        }
        let data = self.block_data(f)?;
        let target = data.index[f];
        let coeffs = lusztig_solve(
            data.len(),
            target,
            |g, h| data.r[g][h].clone(),
            mode,
            |g| data.tuples[g].to_string(),
        )?;
        let coefficients = data
            .tuples
            .iter()
            .zip(coeffs)
            .filter(|(_, p)| !p.is_zero())
            .map(|(g, p)| (g.clone(), p))
            .collect();
        let e = BasisExpansion { target: f.clone(), mode, window: self.window(), coefficients };
        self.expansions
            .lock()
            .expect("expansion cache poisoned")
            .insert(key, e.clone());
        Ok(e)
    }

    pub fn canonical(&self, f: &SignedTuple) -> Result<BasisExpansion> {
        self.expansion(f, Mode::Canonical)
    }

    pub fn dual_canonical(&self, f: &SignedTuple) -> Result<BasisExpansion> {
        self.expansion(f, Mode::Dual)
    }

    /// `(t_{gf})` and `(l_{gf})` over an ordered block, indexed `[g][f]`.
    pub fn bkl_matrices(&self, tuples: &[SignedTuple]) -> Result<(PolyMatrix, PolyMatrix)> {
        let n = tuples.len();
        let mut t = vec![vec![LaurentPoly::zero(); n]; n];
        let mut l = vec![vec![LaurentPoly::zero(); n]; n];
        for (j, f) in tuples.iter().enumerate() {
            let te = self.canonical(f)?;
            let le = self.dual_canonical(f)?;
            for (i, g) in tuples.iter().enumerate() {
                t[i][j] = te.coeff(g);
                l[i][j] = le.coeff(g);
            }
        }
        Ok((t, l))
    }

    /// Whether the expansion of `f` changes when the window floor is lowered
    /// by one.
    pub fn floor_sensitive(&self, f: &SignedTuple, mode: Mode) -> Result<bool> {
        let here = self.expansion(f, mode)?;
        let wider = BklSolver::new(self.window().enlarge(1, 0)).expansion(f, mode)?;
        Ok(wider.coefficients != here.coefficients)
    }
}

pub fn canonical(f: &SignedTuple, w: Window) -> Result<BasisExpansion> {
    BklSolver::new(w).canonical(f)
}

pub fn dual_canonical(f: &SignedTuple, w: Window) -> Result<BasisExpansion> {
    BklSolver::new(w).dual_canonical(f)
}

pub fn bkl_matrices(tuples: &[SignedTuple], w: Window) -> Result<(PolyMatrix, PolyMatrix)> {
    BklSolver::new(w).bkl_matrices(tuples)
}

/// Inverse of an upper unitriangular matrix (`m[g][f] = 0` for `g > f`).
pub fn unitriangular_inverse(m: &PolyMatrix) -> Result<PolyMatrix> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if !row[i].is_one() || row[..i].iter().any(|p| !p.is_zero()) {
            return Err(Error::IdentityViolation(format!("matrix is not unitriangular at row {i}")));
        }
    }
    let mut inv = vec![vec![LaurentPoly::zero(); n]; n];
    for f in 0..n {
        inv[f][f] = LaurentPoly::one();
        for g in (0..f).rev() {
            let mut acc = LaurentPoly::zero();
            for h in g + 1..=f {
                if !m[g][h].is_zero() && !inv[h][f].is_zero() {
                    acc += &m[g][h] * &inv[h][f];
                }
            }
            inv[g][f] = -acc;
        }
    }
    Ok(inv)
}

pub fn matrix_bar(m: &PolyMatrix) -> PolyMatrix {
    m.iter().map(|row| row.iter().map(LaurentPoly::bar).collect()).collect()
}

/// First failing entry of an identity check between two matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryMismatch {
    pub row: String,
    pub column: String,
    pub expected: LaurentPoly,
    pub found: LaurentPoly,
}

impl fmt::Display for EntryMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entry ({}, {}): expected {}, found {}",
            self.row, self.column, self.expected, self.found
        )
    }
}

/// Checks that the inverse of `(l_{gf}(q^-1))` on the block equals
/// `(t_{-f,-g}(q))`, the latter computed on the negated window. Returns the
/// first failing entry, if any.
pub fn inverse_relation_check(tuples: &[SignedTuple], w: Window) -> Result<Option<EntryMismatch>> {
    let solver = BklSolver::new(w);
    let negated = BklSolver::new(w.negate());
    inverse_relation_check_with(&solver, &negated, tuples)
}

pub fn inverse_relation_check_with(
    solver: &BklSolver,
    negated: &BklSolver,
    tuples: &[SignedTuple],
) -> Result<Option<EntryMismatch>> {
    let (_, l) = solver.bkl_matrices(tuples)?;
    let inv = unitriangular_inverse(&matrix_bar(&l))?;
    for (j, f) in tuples.iter().enumerate() {
        for (i, g) in tuples.iter().enumerate() {
            let found = negated.canonical(&g.negate())?.coeff(&f.negate());
            if inv[i][j] != found {
                return Ok(Some(EntryMismatch {
                    row: g.to_string(),
                    column: f.to_string(),
                    expected: inv[i][j].clone(),
                    found,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barinv::bar_oracle;

    fn t(shape: Shape, e: &[i32]) -> SignedTuple {
        SignedTuple::new(shape, e.to_vec()).unwrap()
    }

    const S20: Shape = Shape { m: 2, n: 0 };
    const S11: Shape = Shape { m: 1, n: 1 };

    #[test]
    fn singleton_blocks() {
        let w = Window::new(0, 4).unwrap();
        let f = t(S11, &[1, 3]);
        for e in [canonical(&f, w).unwrap(), dual_canonical(&f, w).unwrap()] {
            assert_eq!(e.to_fock(), FockVector::monomial(&f));
        }
        let (tm, lm) = bkl_matrices(&[f.clone()], w).unwrap();
        assert!(tm[0][0].is_one() && lm[0][0].is_one());
    }

    #[test]
    fn rank_two_examples() {
        let w = Window::new(1, 2).unwrap();
        let f = t(S20, &[2, 1]);
        let g = t(S20, &[1, 2]);
        let te = canonical(&f, w).unwrap();
        assert_eq!(te.coeff(&g), LaurentPoly::q());
        let le = dual_canonical(&f, w).unwrap();
        assert_eq!(le.coeff(&g), LaurentPoly::monomial(-1, -1));
        let (tm, lm) = bkl_matrices(&[g.clone(), f.clone()], w).unwrap();
        assert_eq!(tm[0][1], LaurentPoly::q());
        assert_eq!(lm[0][1], LaurentPoly::monomial(-1, -1));
        assert!(tm[1][0].is_zero() && lm[1][0].is_zero());
        assert!((0..2).all(|i| tm[i][i].is_one() && lm[i][i].is_one()));
    }

    #[test]
    fn atypical_chain() {
        let a = 2;
        let w = Window::new(a - 3, a).unwrap();
        let f = t(S11, &[a, a]);
        let te = canonical(&f, w).unwrap();
        let mut expected = FockVector::monomial(&f);
        expected.add_term(&t(S11, &[a - 1, a - 1]), &LaurentPoly::q());
        assert_eq!(te.to_fock(), expected);
        let le = dual_canonical(&f, w).unwrap();
        for k in 0..=3 {
            let g = t(S11, &[a - k, a - k]);
            assert_eq!(le.coeff(&g), LaurentPoly::monomial(-1, -1).pow(k as u32));
        }
        assert!(le.touches_floor());
        assert!(!te.touches_floor());
    }

    #[test]
    fn solver_matches_oracle() {
        let w = Window::new(0, 3).unwrap();
        for (shape, e) in [(S11, vec![3, 3]), (S20, vec![3, 1]), (Shape::new(2, 1), vec![2, 1, 2])] {
            let f = t(shape, &e);
            for mode in [Mode::Canonical, Mode::Dual] {
                let n = block(&f, w).len();
                let oracle = bar_oracle(&f, w, n, mode).unwrap();
                let solved = BklSolver::new(w).expansion(&f, mode).unwrap();
                assert_eq!(solved.to_fock(), oracle, "{f} {mode}");
                assert!(solved.satisfies_degree_conditions());
            }
        }
    }

    #[test]
    fn inverse_relation_small() {
        let w = Window::new(1, 2).unwrap();
        let b = block(&t(S20, &[2, 1]), w);
        assert_eq!(inverse_relation_check(&b, w).unwrap(), None);
        let w = Window::new(-2, 1).unwrap();
        let b = block(&t(S11, &[1, 1]), w);
        assert_eq!(inverse_relation_check(&b, w).unwrap(), None);
        let w = Window::new(0, 4).unwrap();
        assert_eq!(inverse_relation_check(&[t(S11, &[1, 3])], w).unwrap(), None);
    }

    #[test]
    fn unitriangular_inverse_round_trip() {
        let q = LaurentPoly::q;
        let m = vec![
            vec![LaurentPoly::one(), q(), LaurentPoly::constant(2)],
            vec![LaurentPoly::zero(), LaurentPoly::one(), q().bar()],
            vec![LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::one()],
        ];
        let inv = unitriangular_inverse(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = LaurentPoly::zero();
                for k in 0..3 {
                    acc += &m[i][k] * &inv[k][j];
                }
                assert_eq!(acc, LaurentPoly::constant((i == j) as i64));
            }
        }
    }
}
