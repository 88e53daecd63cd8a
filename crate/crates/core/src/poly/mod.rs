// Copyright 2026 The qaclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Sparse multilinear polynomials over block-indexed variables.
//!
//! Variables are named `x_s`, `y_t`, `z_u`, `w_v` where the index is a
//! bitstring, mirroring the way basis states of a register map to variables.
//! Every polynomial is multilinear: a monomial is a *set* of variables.

mod analysis;
mod family;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::numerics::{Scalar, Tolerance};

pub use analysis::{
    bipartition_rank_oracle, check_justifying, decompose, decompose_with,
    find_justifying_assignment, is_indecomposable_by_zero_assignment, is_justifying, is_zero_at,
    sv_partition_test, BipartitionOracle, ZeroAssignmentVerdict, DECOMPOSE_VAR_CAP,
    IDENTITY_TEST_TRIALS,
};
pub use family::{
    build_family_p, check_family_hypotheses, two_zeros_explicit_assignment, BlockCoeffs, BlockSpec,
    ExplicitAssignment, HypothesisReport, LemmaShape, Split,
};
pub use text::{format_poly, parse_poly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("assignment does not cover variable {0}")]
    MissingVariable(VarId),
    #[error("product is not multilinear: variable {0} occurs in both factors")]
    NotMultilinear(VarId),
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("no justifying assignment found after {attempts} attempts")]
    NotFound { attempts: usize },
    #[error("assignment is not justifying: the restriction to {0} is constant")]
    NotJustifying(VarId),
    #[error("{vars} variables exceed the brute-force budget of {cap}")]
    BudgetExceeded { vars: usize, cap: usize },
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("coefficient table for {what} has {got} entries, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("invalid block specification: {0}")]
    InvalidBlockSpec(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Variable block letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    X,
    Y,
    Z,
    W,
}

impl Block {
    pub const ALL: [Block; 4] = [Block::X, Block::Y, Block::Z, Block::W];

    pub fn letter(self) -> char {
        match self {
            Block::X => 'x',
            Block::Y => 'y',
            Block::Z => 'z',
            Block::W => 'w',
        }
    }

    pub fn from_letter(c: char) -> Option<Block> {
        match c {
            'x' => Some(Block::X),
            'y' => Some(Block::Y),
            'z' => Some(Block::Z),
            'w' => Some(Block::W),
            _ => None,
        }
    }
}

/// A bitstring of up to 32 bits; character 0 is the most significant bit.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    len: u8,
    bits: u32,
}

impl BitString {
    pub const EMPTY: BitString = BitString { len: 0, bits: 0 };

    pub fn new(bits: u32, len: usize) -> Self {
        assert!(len <= 32, "bitstrings are limited to 32 bits");
        let mask = if len == 32 {
            u32::MAX
        } else {
            (1u32 << len) - 1
        };
        assert!(bits & !mask == 0, "value {bits} does not fit in {len} bits");
        Self {
            len: len as u8,
            bits,
        }
    }

    /// All-ones string of the given length.
    pub fn ones(len: usize) -> Self {
        let bits = if len == 32 {
            u32::MAX
        } else {
            (1u32 << len) - 1
        };
        Self::new(bits, len)
    }

    pub fn parse(s: &str) -> Option<Self> {
        if s.len() > 32 {
            return None;
        }
        let mut bits = 0u32;
        for ch in s.chars() {
            bits = (bits << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return None,
                };
        }
        Some(Self {
            len: s.len() as u8,
            bits,
        })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self) -> u32 {
        self.bits
    }

    /// Bit at string position `i` (0 = leftmost).
    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len());
        (self.bits >> (self.len() - 1 - i)) & 1 == 1
    }

    /// Splits into the first `head` characters and the rest.
    pub fn split(&self, head: usize) -> (BitString, BitString) {
        assert!(head <= self.len());
        let tail = self.len() - head;
        let tail_mask = if tail == 32 {
            u32::MAX
        } else {
            (1u32 << tail) - 1
        };
        let high = if tail == 32 { 0 } else { self.bits >> tail };
        (
            BitString::new(high, head),
            BitString::new(self.bits & tail_mask, tail),
        )
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let len = self.len() + other.len();
        assert!(len <= 32);
        let high = if other.len() == 32 {
            0
        } else {
            self.bits << other.len()
        };
        BitString::new(high | other.bits, len)
    }

    pub fn is_all_ones(&self) -> bool {
        *self == BitString::ones(self.len())
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// A variable `x_s`, `y_t`, `z_u` or `w_v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub block: Block,
    pub index: BitString,
}

impl VarId {
    pub fn new(block: Block, index: BitString) -> Self {
        Self { block, index }
    }

    /// Convenience constructor from a bitstring literal; panics on bad input.
    pub fn named(block: Block, bits: &str) -> Self {
        Self::new(block, BitString::parse(bits).expect("bitstring literal"))
    }

    pub fn x(bits: &str) -> Self {
        Self::named(Block::X, bits)
    }

    pub fn y(bits: &str) -> Self {
        Self::named(Block::Y, bits)
    }

    pub fn z(bits: &str) -> Self {
        Self::named(Block::Z, bits)
    }

    pub fn w(bits: &str) -> Self {
        Self::named(Block::W, bits)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.block.letter(), self.index)
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A squarefree monomial, stored as a sorted list of distinct variables.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<VarId>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(vars: impl IntoIterator<Item = VarId>) -> Self {
        let set: BTreeSet<VarId> = vars.into_iter().collect();
        Monomial(set.into_iter().collect())
    }

    pub fn vars(&self) -> &[VarId] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: &VarId) -> bool {
        self.0.binary_search(v).is_ok()
    }

    /// Product of two monomials, or the first shared variable.
    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial, VarId> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return Err(self.0[i]),
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Ok(Monomial(out))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let names: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&names.join("·"))
    }
}

/// Values for (a superset of) the variables of a polynomial.
pub type Assignment = BTreeMap<VarId, Scalar>;

/// A multilinear polynomial with no stored zero coefficients.
#[derive(Clone, Default, PartialEq)]
pub struct MultilinearPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultilinearPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: VarId) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new([v]), Scalar::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Accumulates `c·m`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let sum = *e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).copied().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every coefficient is exact.
    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Scalar::is_exact)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).copied(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Drops floating coefficients below `tol.abs_eps` in modulus.
    pub fn pruned(&self, tol: &Tolerance) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.is_negligible(tol))
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        }
    }

    /// Lexicographically first monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn scale(&self, s: Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), *c * s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-Scalar::one()))
    }

    /// Product of two polynomials; fails if a variable would be squared.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.try_mul(m2).map_err(PolyError::NotMultilinear)?;
                out.add_term(m, *c1 * *c2);
            }
        }
        Ok(out)
    }

    /// The union of monomial supports, i.e. `var(f)` for a multilinear `f`.
    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().iter().copied())
            .collect()
    }

    /// Evaluates at a point covering every variable.
    pub fn evaluate(&self, a: &Assignment) -> Result<Scalar, PolyError> {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = *c;
            for v in m.vars() {
                t *= *a.get(v).ok_or(PolyError::MissingVariable(*v))?;
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `a(v)` for every `v ∈ vars`; other variables are untouched.
    pub fn restrict(&self, vars: &BTreeSet<VarId>, a: &Assignment) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = *c;
            let mut rest = Vec::with_capacity(m.degree());
            for v in m.vars() {
                if vars.contains(v) {
                    coeff *= *a.get(v).ok_or(PolyError::MissingVariable(*v))?;
                } else {
                    rest.push(*v);
                }
            }
            if !coeff.is_zero() {
                out.add_term(Monomial(rest), coeff);
            }
        }
        Ok(out)
    }

    /// Coefficient polynomials `(f|_{v=0}, ∂f/∂v)` so that `f = f0 + v·f1`.
    pub fn split_on(&self, v: &VarId) -> (Self, Self) {
        let mut f0 = Self::zero();
        let mut f1 = Self::zero();
        for (m, c) in &self.terms {
            if m.contains(v) {
                f1.add_term(
                    Monomial(m.vars().iter().copied().filter(|u| u != v).collect()),
                    *c,
                );
            } else {
                f0.add_term(m.clone(), *c);
            }
        }
        (f0, f1)
    }
}

/// `f(a)` as a free function.
pub fn evaluate(f: &MultilinearPoly, a: &Assignment) -> Result<Scalar, PolyError> {
    f.evaluate(a)
}

/// `f|_{x_I = a}` as a free function.
pub fn restrict(
    f: &MultilinearPoly,
    vars: &BTreeSet<VarId>,
    a: &Assignment,
) -> Result<MultilinearPoly, PolyError> {
    f.restrict(vars, a)
}

/// `var(f)`.
pub fn variables_of(f: &MultilinearPoly) -> BTreeSet<VarId> {
    f.variables()
}

impl fmt::Debug for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})·{m:?}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::numerics::{random_scalar, SeededRng};
    use rand::Rng;

    /// `v(i)` is `x[bbbb]` with the 4-bit encoding of `i`.
    pub fn v(i: u32) -> VarId {
        VarId::new(Block::X, BitString::new(i, 4))
    }

    pub fn poly(terms: &[(i64, &[u32])]) -> MultilinearPoly {
        MultilinearPoly::from_terms(
            terms
                .iter()
                .map(|(c, vs)| (Monomial::new(vs.iter().map(|&i| v(i))), Scalar::int(*c))),
        )
    }

    pub fn assign(pairs: &[(VarId, Scalar)]) -> Assignment {
        pairs.iter().copied().collect()
    }

    /// Random sparse multilinear polynomial over the given variables.
    pub fn random_poly(
        rng: &mut SeededRng,
        vars: &[VarId],
        terms: usize,
        exact: bool,
    ) -> MultilinearPoly {
        let mut p = MultilinearPoly::zero();
        for _ in 0..terms {
            let m = Monomial::new(vars.iter().copied().filter(|_| rng.random_bool(0.5)));
            let c = if exact {
                Scalar::int(rng.random_range(-4..=4))
            } else {
                random_scalar(rng)
            };
            p.add_term(m, c);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;
    use crate::numerics::{approx_eq, seeded_rng, Scalar, Tolerance};
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn evaluate_examples() {
        let f = MultilinearPoly::from_terms([
            (Monomial::new([VarId::x("0"), VarId::z("0")]), Scalar::one()),
            (
                Monomial::new([VarId::x("1"), VarId::z("1")]),
                -Scalar::one(),
            ),
        ]);
        let a = assign(&[
            (VarId::x("0"), Scalar::one()),
            (VarId::z("0"), Scalar::one()),
            (VarId::x("1"), Scalar::one()),
            (VarId::z("1"), Scalar::one()),
        ]);
        assert_eq!(evaluate(&f, &a).unwrap(), Scalar::zero());
        assert_eq!(
            evaluate(
                &MultilinearPoly::constant(Scalar::int(3)),
                &Assignment::new()
            )
            .unwrap(),
            Scalar::int(3)
        );
        let missing = assign(&[(VarId::x("0"), Scalar::one())]);
        assert!(matches!(
            evaluate(&f, &missing),
            Err(PolyError::MissingVariable(_))
        ));
    }

    // Term-by-term evaluation written independently of `evaluate`.
    fn naive_eval(f: &MultilinearPoly, a: &Assignment) -> num_complex::Complex64 {
        let mut total = num_complex::Complex64::new(0.0, 0.0);
        for (m, c) in f.terms() {
            let prod = m
                .vars()
                .iter()
                .fold(c.to_complex(), |acc, v| acc * a[v].to_complex());
            total += prod;
        }
        total
    }

    #[test]
    fn evaluate_matches_naive_evaluator() {
        let (x0, x1, z0, z1) = (VarId::x("0"), VarId::x("1"), VarId::z("0"), VarId::z("1"));
        let f = crate::poly::build_family_p(
            &BlockSpec::two_blocks(Split::new(1, 0), Split::new(1, 0)),
            &BlockCoeffs::dense(1, 0, vec![Scalar::one(), Scalar::one()]).unwrap(),
            &BlockCoeffs::dense(1, 0, vec![Scalar::one(), Scalar::one()]).unwrap(),
            Scalar::int(2),
        )
        .unwrap();
        let a = assign(&[
            (x0, Scalar::one()),
            (x1, Scalar::int(2)),
            (z0, Scalar::one()),
            (z1, Scalar::float(-0.6, 0.25)),
        ]);
        let got = evaluate(&f, &a).unwrap().to_complex();
        assert!((got - naive_eval(&f, &a)).norm() < 1e-12);
        // x0z0 + x0z1 + x1z0 − x1z1 at that point
        let expect = num_complex::Complex64::new(1.0 + -0.6 + 2.0 - 2.0 * -0.6, 0.25 - 2.0 * 0.25);
        assert!((got - expect).norm() < 1e-12);

        let mut rng = seeded_rng(3);
        let vars: Vec<VarId> = (0..6).map(v).collect();
        for _ in 0..50 {
            let f = random_poly(&mut rng, &vars, 8, false);
            let a: Assignment = vars
                .iter()
                .map(|&u| (u, crate::numerics::random_scalar(&mut rng)))
                .collect();
            assert!((evaluate(&f, &a).unwrap().to_complex() - naive_eval(&f, &a)).norm() < 1e-9);
        }
    }

    #[test]
    fn restrict_examples() {
        let f = poly(&[(1, &[1, 2])]);
        let only1: BTreeSet<VarId> = [v(1)].into();
        assert_eq!(
            restrict(&f, &only1, &assign(&[(v(1), Scalar::one())])).unwrap(),
            MultilinearPoly::var(v(2))
        );
        assert!(restrict(&f, &only1, &assign(&[(v(1), Scalar::zero())]))
            .unwrap()
            .is_zero());
        assert!(matches!(
            restrict(&f, &only1, &Assignment::new()),
            Err(PolyError::MissingVariable(_))
        ));
    }

    #[test]
    fn restrict_composes() {
        let mut rng = seeded_rng(11);
        let vars: Vec<VarId> = (0..7).map(v).collect();
        for _ in 0..100 {
            let f = random_poly(&mut rng, &vars, 10, true);
            let a: Assignment = vars
                .iter()
                .map(|&u| (u, Scalar::int(rng.random_range(-3..=3))))
                .collect();
            let mut i = BTreeSet::new();
            let mut j = BTreeSet::new();
            for &u in &vars {
                match rng.random_range(0..3) {
                    0 => {
                        i.insert(u);
                    }
                    1 => {
                        j.insert(u);
                    }
                    _ => {}
                }
            }
            let two_step = restrict(&restrict(&f, &i, &a).unwrap(), &j, &a).unwrap();
            let union: BTreeSet<VarId> = i.union(&j).copied().collect();
            assert_eq!(two_step, restrict(&f, &union, &a).unwrap());
        }
    }

    #[test]
    fn variables_of_examples() {
        assert_eq!(
            variables_of(&poly(&[(1, &[1, 2]), (1, &[2])])),
            [v(1), v(2)].into()
        );
        let cancelled = poly(&[(1, &[1]), (1, &[2]), (-1, &[2])]);
        assert_eq!(variables_of(&cancelled), [v(1)].into());
    }

    #[test]
    fn variables_match_dependence_oracle() {
        // Brute force: v is a variable iff flipping its value changes f at some point.
        let mut rng = seeded_rng(5);
        let vars: Vec<VarId> = (0..5).map(v).collect();
        for _ in 0..100 {
            let f = random_poly(&mut rng, &vars, 4, true);
            let mut depends = BTreeSet::new();
            for &u in &vars {
                for _ in 0..8 {
                    let mut a: Assignment = vars
                        .iter()
                        .map(|&w| (w, Scalar::int(rng.random_range(-5..=5))))
                        .collect();
                    let f0 = evaluate(&f, &a).unwrap();
                    a.insert(u, a[&u] + Scalar::one());
                    if evaluate(&f, &a).unwrap() != f0 {
                        depends.insert(u);
                        break;
                    }
                }
            }
            // Integer points can miss a dependence only on a measure-zero set;
            // with 8 trials per variable on small-degree f this never happens here.
            assert_eq!(variables_of(&f), depends, "{f:?}");
        }
    }

    #[test]
    fn mul_rejects_shared_variables() {
        let f = poly(&[(1, &[1])]);
        assert_eq!(f.mul(&f), Err(PolyError::NotMultilinear(v(1))));
        let g = poly(&[(2, &[2]), (1, &[])]);
        assert_eq!(f.mul(&g).unwrap(), poly(&[(2, &[1, 2]), (1, &[1])]));
    }

    proptest! {
        #[test]
        fn restrict_is_linear(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let vars: Vec<VarId> = (0..6).map(v).collect();
            let f = random_poly(&mut rng, &vars, 8, true);
            let g = random_poly(&mut rng, &vars, 8, true);
            let a: Assignment = vars.iter().map(|&u| (u, Scalar::exact(rng.random_range(-3..=3), 0, rng.random_range(-3..=3), 0, rng.random_range(0..3)))).collect();
            let i: BTreeSet<VarId> = vars.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
            let lhs = restrict(&f.add(&g), &i, &a).unwrap();
            let rhs = restrict(&f, &i, &a).unwrap().add(&restrict(&g, &i, &a).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn evaluation_is_a_ring_map(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let xs: Vec<VarId> = (0..3).map(v).collect();
            let zs: Vec<VarId> = (8..11).map(v).collect();
            let f = random_poly(&mut rng, &xs, 5, false);
            let g = random_poly(&mut rng, &zs, 5, false);
            let a: Assignment = xs.iter().chain(&zs).map(|&u| (u, crate::numerics::random_scalar(&mut rng))).collect();
            let lhs = f.mul(&g).unwrap().evaluate(&a).unwrap();
            let rhs = f.evaluate(&a).unwrap() * g.evaluate(&a).unwrap();
            prop_assert!(approx_eq(lhs, rhs, &Tolerance::default()));
        }
    }
}
