//! Index combinatorics for the tensor space: signed tuples, the weight
//! lattice and its partial order, the Bruhat order on tuples, parabolic
//! subgroups of `S_m x S_n`, alphabet windows, blocks, and the bijection
//! between integral `gl(m|n)` weights and tuples.
//!
//! Positions are 0-based internally. Simple transpositions are named by
//! their 1-based index `i`, swapping positions `i-1` and `i`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Numbers of `V` and `W` tensor factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    V,
    W,
}

impl Sector {
    /// `+1` on the natural module, `-1` on its dual.
    pub fn sign(self) -> i64 {
        match self {
            Sector::V => 1,
            Sector::W => -1,
        }
    }
}

impl Shape {
    pub fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }

    pub fn len(self) -> usize {
        self.m + self.n
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    pub fn sector(self, pos: usize) -> Sector {
        if pos < self.m {
            Sector::V
        } else {
            Sector::W
        }
    }

    /// Shape obtained by appending one factor of the given sector. Only
    /// valid while the result keeps all `V` factors before all `W` factors.
    pub fn push(self, sector: Sector) -> Self {
        match sector {
            Sector::V => {
                assert_eq!(self.n, 0, "V factor after a W factor");
                Self::new(self.m + 1, 0)
            }
            Sector::W => Self::new(self.m, self.n + 1),
        }
    }

    /// Shape with the last factor removed.
    pub fn pop(self) -> Self {
        if self.n > 0 {
            Self::new(self.m, self.n - 1)
        } else {
            Self::new(self.m - 1, 0)
        }
    }

    /// Whether the simple transposition `s_i` (1-based) lies in `S_m x S_n`.
    pub fn allows_generator(self, i: usize) -> bool {
        i >= 1 && i < self.len() && i != self.m
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.m, self.n)
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (m, n) = s
            .trim()
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("shape {s:?} must look like m|n")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("shape {s:?}: {e}")))
        };
        Ok(Self::new(parse(m)?, parse(n)?))
    }
}

fn parse_entries(text: &str) -> Result<Vec<i32>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i32>()
                .map_err(|e| Error::Parse(format!("entry {t:?}: {e}")))
        })
        .collect()
}

/// Splits `"a,b|c"` into its two sectors; without a bar the whole list
/// belongs to whichever sector is nonempty.
fn parse_sectors(shape: Shape, text: &str) -> Result<Vec<i32>> {
    let entries = match text.split_once('|') {
        Some((v, w)) => {
            let v = parse_entries(v)?;
            let w = parse_entries(w)?;
            if v.len() != shape.m || w.len() != shape.n {
                return Err(Error::Parse(format!(
                    "{text:?} does not have shape {shape}"
                )));
            }
            v.into_iter().chain(w).collect()
        }
        None if shape.m == 0 || shape.n == 0 => parse_entries(text)?,
        None => {
            return Err(Error::Parse(format!(
                "{text:?} needs a '|' separator for shape {shape}"
            )))
        }
    };
    if entries.len() != shape.len() {
        return Err(Error::Parse(format!("{text:?} does not have shape {shape}")));
    }
    Ok(entries)
}

fn fmt_sectors(f: &mut fmt::Formatter<'_>, m: usize, entries: &[impl fmt::Display]) -> fmt::Result {
    write!(f, "{}|{}", entries[..m].iter().join(","), entries[m..].iter().join(","))
}

/// An integer-valued function on the positions of a shape; indexes the
/// monomial basis of the tensor space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedTuple {
    shape: Shape,
    entries: Vec<i32>,
}

impl SignedTuple {
    pub fn new(shape: Shape, entries: Vec<i32>) -> Result<Self> {
        if entries.len() != shape.len() {
            return Err(Error::Parse(format!(
                "{} entries given for shape {shape}",
                entries.len()
            )));
        }
        Ok(Self { shape, entries })
    }

    pub fn parse(shape: Shape, text: &str) -> Result<Self> {
        Self::new(shape, parse_sectors(shape, text)?)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sector(&self, pos: usize) -> Sector {
        self.shape.sector(pos)
    }

    /// The tuple with its last factor removed.
    pub fn prefix(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.pop();
        Self { shape: self.shape.pop(), entries }
    }

    /// The tuple extended by one factor.
    pub fn extend(&self, sector: Sector, value: i32) -> Self {
        let mut entries = self.entries.clone();
        entries.push(value);
        Self { shape: self.shape.push(sector), entries }
    }

    pub fn with_entry(&self, pos: usize, value: i32) -> Self {
        let mut out = self.clone();
        out.entries[pos] = value;
        out
    }

    /// `(f.sigma)(i) = f(sigma(i))`.
    pub fn right_act(&self, sigma: &Perm) -> Self {
        assert_eq!(sigma.len(), self.len(), "permutation size mismatch");
        Self {
            shape: self.shape,
            entries: (0..self.len()).map(|i| self.entries[sigma.apply(i)]).collect(),
        }
    }

    /// `f.s_i` for the 1-based generator index `i`.
    pub fn swap(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.entries.swap(i - 1, i);
        out
    }

    /// Entry-wise negation.
    pub fn negate(&self) -> Self {
        Self {
            shape: self.shape,
            entries: self.entries.iter().map(|&e| -e).collect(),
        }
    }

    pub fn in_window(&self, w: Window) -> bool {
        self.entries.iter().all(|&e| w.contains(e))
    }

    /// `wt^j(f)` for 1-based `j`; `j = m+n+1` gives zero.
    pub fn wt_prefix(&self, j: usize) -> PWeight {
        let mut out = PWeight::zero();
        for pos in j.saturating_sub(1)..self.len() {
            out.add_eps(self.entries[pos], self.sector(pos).sign());
        }
        out
    }

    pub fn wt(&self) -> PWeight {
        self.wt_prefix(1)
    }

    /// A numerical key that strictly increases along the Bruhat order.
    pub fn order_key(&self) -> i64 {
        -(0..self.len())
            .map(|pos| (pos as i64 + 1) * self.sector(pos).sign() * self.entries[pos] as i64)
            .sum::<i64>()
    }
}

impl fmt::Display for SignedTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sectors(f, self.shape.m, &self.entries)
    }
}

/// Element of the free abelian group on `eps_r`, `r` an integer.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PWeight {
    coeffs: BTreeMap<i32, i64>,
}

impl PWeight {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn eps(r: i32) -> Self {
        let mut out = Self::zero();
        out.add_eps(r, 1);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (r, c) in terms {
            out.add_eps(r, c);
        }
        out
    }

    pub fn add_eps(&mut self, r: i32, c: i64) {
        let entry = self.coeffs.entry(r).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&r);
        }
    }

    pub fn coeff(&self, r: i32) -> i64 {
        self.coeffs.get(&r).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&r, &c)| (r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, c) in other.terms() {
            out.add_eps(r, -c);
        }
        out
    }

    /// `self <= other`: `other - self` is a nonnegative combination of the
    /// simple roots `eps_r - eps_{r+1}`.
    pub fn leq(&self, other: &Self) -> bool {
        let diff = other.sub(self);
        let mut prefix = 0i64;
        for (_, c) in diff.terms() {
            prefix += c;
            if prefix < 0 {
                return false;
            }
        }
        prefix == 0
    }
}

impl fmt::Display for PWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (r, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (i, c.abs()) {
                (0, 1) if c < 0 => write!(f, "-eps{r}")?,
                (0, 1) => write!(f, "eps{r}")?,
                (0, a) if c < 0 => write!(f, "-{a}eps{r}")?,
                (0, a) => write!(f, "{a}eps{r}")?,
                (_, 1) => write!(f, " {sign} eps{r}")?,
                (_, a) => write!(f, " {sign} {a}eps{r}")?,
            }
        }
        Ok(())
    }
}

/// `nu <= mu` in the weight lattice order.
pub fn p_leq(nu: &PWeight, mu: &PWeight) -> bool {
    nu.leq(mu)
}

/// `g` is below or equal to `f` in the Bruhat order.
pub fn bruhat_leq(g: &SignedTuple, f: &SignedTuple) -> bool {
    g.shape() == f.shape()
        && g.wt() == f.wt()
        && (2..=f.len()).all(|j| g.wt_prefix(j).leq(&f.wt_prefix(j)))
}

/// Strictly below.
pub fn bruhat_lt(g: &SignedTuple, f: &SignedTuple) -> bool {
    g != f && bruhat_leq(g, f)
}

/// A permutation of `{0, .., k-1}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(k: usize) -> Self {
        Self((0..k).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self(images))
    }

    /// The simple transposition `s_i` (1-based) in `S_k`.
    pub fn simple(k: usize, i: usize) -> Self {
        let mut p = Self::identity(k);
        p.0.swap(i - 1, i);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Coxeter length, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        (0..self.len())
            .tuple_combinations()
            .filter(|&(i, j)| self.0[i] > self.0[j])
            .count()
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Self(inv)
    }

    /// `self * s_i`: swaps positions.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let mut p = self.clone();
        p.0.swap(i - 1, i);
        p
    }

    /// `s_i * self`: swaps values.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        Self(
            self.0
                .iter()
                .map(|&x| match x {
                    x if x == i - 1 => i,
                    x if x == i => i - 1,
                    x => x,
                })
                .collect(),
        )
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    /// `l(s_i * self) < l(self)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.0[i - 1] > inv.0[i]
    }

    /// A reduced word `i_1 .. i_r` with `self = s_{i_1} .. s_{i_r}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut p = self.clone();
        while let Some(i) = (1..p.len()).find(|&i| p.has_right_descent(i)) {
            word.push(i);
            p = p.mul_simple_right(i);
        }
        word.reverse();
        word
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

/// A standard parabolic subgroup of `S_m x S_n`, given by its simple
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parabolic {
    shape: Shape,
    gens: BTreeSet<usize>,
}

impl Parabolic {
    pub fn new<I: IntoIterator<Item = usize>>(shape: Shape, gens: I) -> Result<Self> {
        let gens: BTreeSet<usize> = gens.into_iter().collect();
        if let Some(&index) = gens.iter().find(|&&i| !shape.allows_generator(i)) {
            return Err(Error::InvalidGenerator { index, shape });
        }
        Ok(Self { shape, gens })
    }

    pub fn trivial(shape: Shape) -> Self {
        Self { shape, gens: BTreeSet::new() }
    }

    /// All of `S_m x S_n`.
    pub fn full(shape: Shape) -> Self {
        Self {
            shape,
            gens: (1..shape.len()).filter(|&i| shape.allows_generator(i)).collect(),
        }
    }

    /// Parses `"s1,s3"` (the `s` is optional; empty means trivial).
    pub fn parse(shape: Shape, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Self::trivial(shape));
        }
        let gens = text
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.strip_prefix('s')
                    .unwrap_or(t)
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("generator {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(shape, gens)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.gens.iter().copied()
    }

    pub fn contains_generator(&self, i: usize) -> bool {
        self.gens.contains(&i)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    /// Maximal runs of positions connected by generators, as
    /// `(start, length)`; singletons included.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for pos in 1..=self.shape.len() {
            if pos == self.shape.len() || !self.gens.contains(&pos) {
                out.push((start, pos - start));
                start = pos;
            }
        }
        out
    }

    /// Group order.
    pub fn order(&self) -> usize {
        self.intervals()
            .iter()
            .map(|&(_, len)| (1..=len).product::<usize>())
            .product()
    }

    /// All group elements.
    pub fn elements(&self) -> Vec<Perm> {
        if self.shape.is_empty() {
            return vec![Perm::identity(0)];
        }
        self.intervals()
            .into_iter()
            .map(|(start, len)| (start..start + len).permutations(len).collect::<Vec<_>>())
            .multi_cartesian_product()
            .map(|blocks| Perm(blocks.concat()))
            .collect()
    }

    /// The longest element and its length.
    pub fn longest(&self) -> (Perm, usize) {
        let mut images = Vec::with_capacity(self.shape.len());
        let mut length = 0;
        for (start, len) in self.intervals() {
            images.extend((start..start + len).rev());
            length += len * len.saturating_sub(1) / 2;
        }
        (Perm(images), length)
    }

    /// `[|W|]`, the product of quantum factorials of the interval sizes.
    pub fn quantum_order(&self) -> LaurentPoly {
        self.intervals()
            .iter()
            .fold(LaurentPoly::one(), |acc, &(_, len)| &acc * &LaurentPoly::q_fact(len as u32))
    }

    /// Weakly increasing on each `V` interval, weakly decreasing on each
    /// `W` interval.
    pub fn is_antidominant(&self, f: &SignedTuple) -> bool {
        self.gens.iter().all(|&i| {
            let (a, b) = (f.entries[i - 1], f.entries[i]);
            match f.sector(i - 1) {
                Sector::V => a <= b,
                Sector::W => a >= b,
            }
        })
    }

    /// The anti-dominant representative `f.tau` of the orbit of `f`, with
    /// `tau` of minimal length.
    pub fn antidominant_rep(&self, f: &SignedTuple) -> (SignedTuple, Perm) {
        let mut images = Vec::with_capacity(f.len());
        for (start, len) in self.intervals() {
            let mut positions: Vec<usize> = (start..start + len).collect();
            match f.sector(start) {
                Sector::V => positions.sort_by_key(|&p| f.entries[p]),
                Sector::W => positions.sort_by_key(|&p| std::cmp::Reverse(f.entries[p])),
            }
            images.extend(positions);
        }
        let tau = Perm(images);
        (f.right_act(&tau), tau)
    }

    /// The stabilizer `W_f` of an anti-dominant tuple, itself a standard
    /// parabolic.
    pub fn stabilizer(&self, f: &SignedTuple) -> Result<Parabolic> {
        if !self.is_antidominant(f) {
            return Err(Error::NotAntiDominant(f.to_string()));
        }
        Ok(Self {
            shape: self.shape,
            gens: self
                .gens
                .iter()
                .copied()
                .filter(|&i| f.entries[i - 1] == f.entries[i])
                .collect(),
        })
    }

    /// Minimal-length representatives of the cosets `sub \ self`, with their
    /// lengths. `sub` must be generated by a subset of our generators.
    pub fn coset_reps(&self, sub: &Parabolic) -> Vec<(Perm, usize)> {
        assert!(sub.gens.is_subset(&self.gens), "not a parabolic subgroup");
        self.elements()
            .into_iter()
            .filter(|tau| sub.gens.iter().all(|&i| !tau.has_left_descent(i)))
            .map(|tau| {
                let l = tau.length();
                (tau, l)
            })
            .collect()
    }

    pub fn contains(&self, sigma: &Perm) -> bool {
        sigma.len() == self.shape.len()
            && sigma.reduced_word().iter().all(|i| self.gens.contains(i))
    }
}

impl fmt::Display for Parabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "e");
        }
        write!(f, "{}", self.gens.iter().map(|i| format!("s{i}")).join(","))
    }
}

/// A closed alphabet interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::Parse(format!("empty window {lo}..{hi}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(self, a: i32) -> bool {
        self.lo <= a && a <= self.hi
    }

    /// Number of letters.
    pub fn width(self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn letters(self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi
    }

    /// `[-hi, -lo]`.
    pub fn negate(self) -> Self {
        Self { lo: -self.hi, hi: -self.lo }
    }

    pub fn contains_window(self, other: Window) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn enlarge(self, below: i32, above: i32) -> Self {
        Self { lo: self.lo - below, hi: self.hi + above }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .trim()
            .split_once("..")
            .ok_or_else(|| Error::Parse(format!("window {s:?} must look like lo..hi")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i32>()
                .map_err(|e| Error::Parse(format!("window {s:?}: {e}")))
        };
        Self::new(parse(lo)?, parse(hi)?)
    }
}

/// Distinct arrangements of a multiset given as sorted values.
fn multiset_arrangements(sorted: &[i32]) -> Vec<Vec<i32>> {
    fn go(counts: &mut BTreeMap<i32, usize>, left: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        let keys: Vec<i32> = counts.iter().filter(|(_, &c)| c > 0).map(|(&k, _)| k).collect();
        for k in keys {
            *counts.get_mut(&k).unwrap() -= 1;
            cur.push(k);
            go(counts, left - 1, cur, out);
            cur.pop();
            *counts.get_mut(&k).unwrap() += 1;
        }
    }
    let mut counts = BTreeMap::new();
    for &x in sorted {
        *counts.entry(x).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    go(&mut counts, sorted.len(), &mut Vec::new(), &mut out);
    out
}

/// All tuples in `w` of the same weight as `f`, sorted along a linear
/// extension of the Bruhat order with lexicographic tie-breaking.
pub fn block(f: &SignedTuple, w: Window) -> Vec<SignedTuple> {
    block_of_weight(f.shape(), &f.wt(), w)
}

/// All tuples of the given shape and weight with entries in `w`, in block
/// order.
pub fn block_of_weight(shape: Shape, wt: &PWeight, w: Window) -> Vec<SignedTuple> {
    let mut out = Vec::new();
    let w_tuples: Vec<Vec<i32>> = if shape.n == 0 {
        vec![Vec::new()]
    } else {
        (0..shape.n).map(|_| w.letters()).multi_cartesian_product().collect()
    };
    for w_part in w_tuples {
        let mut v_weight = wt.clone();
        for &b in &w_part {
            v_weight.add_eps(b, 1);
        }
        let mut v_multiset = Vec::new();
        let mut ok = true;
        for (r, c) in v_weight.terms() {
            if c < 0 || !w.contains(r) {
                ok = false;
                break;
            }
            v_multiset.extend(std::iter::repeat(r).take(c as usize));
        }
        if !ok || v_multiset.len() != shape.m {
            continue;
        }
        for v_part in multiset_arrangements(&v_multiset) {
            let entries = v_part.into_iter().chain(w_part.iter().copied()).collect();
            out.push(SignedTuple { shape, entries });
        }
    }
    out.sort_by(|a, b| a.order_key().cmp(&b.order_key()).then_with(|| a.entries.cmp(&b.entries)));
    out
}

/// Every tuple of the given shape with entries in `w`, lexicographically.
pub fn all_tuples(shape: Shape, w: Window) -> Vec<SignedTuple> {
    if shape.is_empty() {
        return vec![SignedTuple { shape, entries: Vec::new() }];
    }
    (0..shape.len())
        .map(|_| w.letters())
        .multi_cartesian_product()
        .map(|entries| SignedTuple { shape, entries })
        .collect()
}

/// The tuples in `w` partitioned into blocks, each in block order.
pub fn all_blocks(shape: Shape, w: Window) -> Vec<Vec<SignedTuple>> {
    let mut weights: Vec<PWeight> = all_tuples(shape, w).iter().map(SignedTuple::wt).collect();
    weights.sort();
    weights.dedup();
    weights.iter().map(|wt| block_of_weight(shape, wt, w)).collect()
}

/// An integral weight of `gl(m|n)` in the standard `eps/delta` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlWeight {
    shape: Shape,
    coords: Vec<i32>,
}

impl GlWeight {
    pub fn new(shape: Shape, coords: Vec<i32>) -> Result<Self> {
        if coords.len() != shape.len() {
            return Err(Error::Parse(format!(
                "{} coordinates given for gl({}|{})",
                coords.len(),
                shape.m,
                shape.n
            )));
        }
        Ok(Self { shape, coords })
    }

    pub fn parse(shape: Shape, text: &str) -> Result<Self> {
        Self::new(shape, parse_sectors(shape, text)?)
    }

    pub fn zero(shape: Shape) -> Self {
        Self { shape, coords: vec![0; shape.len()] }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    /// Coordinates of the super Weyl vector, 0-based position `pos`.
    fn rho(shape: Shape, pos: usize) -> i32 {
        let i = pos as i32 + 1;
        let m = shape.m as i32;
        if pos < shape.m {
            m - i + 1
        } else {
            m - i
        }
    }

    /// Coordinates of `lambda + rho`.
    pub fn rho_shifted(&self) -> Vec<i32> {
        (0..self.coords.len())
            .map(|p| self.coords[p] + Self::rho(self.shape, p))
            .collect()
    }

    fn from_rho_shifted(shape: Shape, shifted: &[i32]) -> Self {
        Self {
            shape,
            coords: (0..shifted.len()).map(|p| shifted[p] - Self::rho(shape, p)).collect(),
        }
    }

    /// The anti-dominant element of the dot orbit of `W` acting by
    /// permutations of `lambda + rho` within each interval.
    pub fn dot_antidominant(&self, p: &Parabolic) -> Self {
        let mut shifted = self.rho_shifted();
        for (start, len) in p.intervals() {
            shifted[start..start + len].sort_unstable();
        }
        Self::from_rho_shifted(self.shape, &shifted)
    }
}

impl fmt::Display for GlWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sectors(f, self.shape.m, &self.coords)
    }
}

/// `f_lambda`: the `V` entries are `(lambda + rho)_i`, the `W` entries are
/// `-(lambda + rho)_j`.
pub fn weight_to_tuple(lambda: &GlWeight) -> SignedTuple {
    let shape = lambda.shape();
    let entries = lambda
        .rho_shifted()
        .into_iter()
        .enumerate()
        .map(|(p, x)| if p < shape.m { x } else { -x })
        .collect();
    SignedTuple { shape, entries }
}

pub fn tuple_to_weight(f: &SignedTuple) -> GlWeight {
    let shape = f.shape();
    let shifted: Vec<i32> = f
        .entries()
        .iter()
        .enumerate()
        .map(|(p, &x)| if p < shape.m { x } else { -x })
        .collect();
    GlWeight::from_rho_shifted(shape, &shifted)
}
