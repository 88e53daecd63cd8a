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

//! Decomposability: justifying assignments, the partition identity test,
//! the coefficient-matrix rank oracle and exhaustive decomposition.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_complex::Complex64;
use rand::Rng;

use super::{Assignment, Monomial, MultilinearPoly, PolyError, VarId};
use crate::linalg::numerical_rank;
use crate::numerics::{random_scalar, ExactScalar, Scalar, SeededRng, Tolerance};

/// Largest variable count `decompose` will search exhaustively.
pub const DECOMPOSE_VAR_CAP: usize = 24;

/// Random points per polynomial identity test.
pub const IDENTITY_TEST_TRIALS: usize = 20;

/// Exact identity tests expand symbolically up to this many variables.
const EXACT_EXPANSION_VARS: usize = 16;

const ORACLE_VAR_CAP: usize = 64;

// A float counts as nonzero only when it clears the tolerance by this factor,
// and as zero only when it is this factor below it. The gap keeps the
// zero-assignment certificate sound under rounding.
const MARGIN: f64 = 1e3;

/// `Σ |c|·Π|a_v|`, the natural magnitude scale for evaluating `f` at `a`.
fn abs_eval(f: &MultilinearPoly, a: &Assignment) -> Result<f64, PolyError> {
    let mut total = 0.0;
    for (m, c) in f.terms() {
        let mut t = c.abs();
        for v in m.vars() {
            t *= a.get(v).ok_or(PolyError::MissingVariable(*v))?.abs();
        }
        total += t;
    }
    Ok(total)
}

fn is_clearly_nonzero(x: Scalar, scale: f64, tol: &Tolerance) -> bool {
    match x {
        Scalar::Exact(e) => !e.is_zero(),
        Scalar::Float(z) => z.norm() > MARGIN * tol.threshold(scale),
    }
}

fn is_clearly_zero(x: Scalar, scale: f64, tol: &Tolerance) -> bool {
    match x {
        Scalar::Exact(e) => e.is_zero(),
        Scalar::Float(z) => z.norm() <= tol.threshold(scale) / MARGIN,
    }
}

/// `∂f/∂v (a)` for every variable together with the magnitude scale of the sum.
fn partials(
    f: &MultilinearPoly,
    a: &Assignment,
) -> Result<BTreeMap<VarId, (Scalar, f64)>, PolyError> {
    let mut out: BTreeMap<VarId, (Scalar, f64)> = BTreeMap::new();
    for (m, c) in f.terms() {
        let vals: Vec<Scalar> = m
            .vars()
            .iter()
            .map(|v| a.get(v).copied().ok_or(PolyError::MissingVariable(*v)))
            .collect::<Result<_, _>>()?;
        for (j, v) in m.vars().iter().enumerate() {
            let mut t = *c;
            let mut mag = c.abs();
            for (i, x) in vals.iter().enumerate() {
                if i != j {
                    t *= *x;
                    mag *= x.abs();
                }
            }
            let e = out.entry(*v).or_insert((Scalar::zero(), 0.0));
            e.0 += t;
            e.1 += mag;
        }
    }
    Ok(out)
}

/// Checks that every one-variable restriction of `f` at `a` is nonconstant.
///
/// For multilinear `f` the restriction to `v` is `f₀(a) + v·∂f/∂v(a)`, so
/// this is the definition evaluated directly.
pub fn check_justifying(
    f: &MultilinearPoly,
    a: &Assignment,
    tol: &Tolerance,
) -> Result<(), PolyError> {
    for (v, (d, scale)) in partials(f, a)? {
        if !is_clearly_nonzero(d, scale, tol) {
            return Err(PolyError::NotJustifying(v));
        }
    }
    Ok(())
}

pub fn is_justifying(f: &MultilinearPoly, a: &Assignment, tol: &Tolerance) -> bool {
    check_justifying(f, a, tol).is_ok()
}

/// Random search for a justifying assignment: small integers first, then
/// complex Gaussian points.
pub fn find_justifying_assignment(
    f: &MultilinearPoly,
    rng: &mut SeededRng,
    attempts: usize,
) -> Result<Assignment, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let vars = f.variables();
    let tol = Tolerance::default();
    let integer_rounds = attempts.div_ceil(2);
    for t in 0..attempts {
        let a: Assignment = vars
            .iter()
            .map(|&v| {
                (
                    v,
                    if t < integer_rounds {
                        Scalar::int(rng.random_range(1..=7))
                    } else {
                        random_scalar(rng)
                    },
                )
            })
            .collect();
        if is_justifying(f, &a, &tol) {
            return Ok(a);
        }
    }
    Err(PolyError::NotFound { attempts })
}

fn polys_agree(p: &MultilinearPoly, q: &MultilinearPoly, tol: &Tolerance) -> bool {
    if p.is_exact() && q.is_exact() {
        return p == q;
    }
    let scale = p
        .terms()
        .chain(q.terms())
        .map(|(_, c)| c.abs())
        .fold(0.0, f64::max);
    let cut = tol.threshold(scale);
    let keys: BTreeSet<&Monomial> = p.terms().chain(q.terms()).map(|(m, _)| m).collect();
    keys.into_iter()
        .all(|m| (p.coefficient(m).to_complex() - q.coefficient(m).to_complex()).norm() <= cut)
}

/// Decides `f(a)·f ≡ f|_{x_I=a} · f|_{x_Ī=a}` for a justifying `a`.
///
/// Exact inputs on at most 16 variables are expanded symbolically; anything
/// else is tested at `trials` random complex points.
pub fn sv_partition_test(
    f: &MultilinearPoly,
    a: &Assignment,
    i: &BTreeSet<VarId>,
    trials: usize,
    rng: &mut SeededRng,
) -> Result<bool, PolyError> {
    let tol = Tolerance::default();
    check_justifying(f, a, &tol)?;
    let vars = f.variables();
    let inside: BTreeSet<VarId> = vars.intersection(i).copied().collect();
    let outside: BTreeSet<VarId> = vars.difference(i).copied().collect();
    let fa = f.evaluate(a)?;
    let g = f.restrict(&inside, a)?;
    let h = f.restrict(&outside, a)?;
    let exact_point = vars.iter().all(|v| a[v].is_exact());
    if f.is_exact() && exact_point && vars.len() <= EXACT_EXPANSION_VARS {
        return Ok(polys_agree(&f.scale(fa), &g.mul(&h)?, &tol));
    }
    for _ in 0..trials {
        let p: Assignment = vars.iter().map(|&v| (v, random_scalar(rng))).collect();
        let lhs = fa * f.evaluate(&p)?;
        let rhs = g.evaluate(&p)? * h.evaluate(&p)?;
        let scale = fa.abs() * abs_eval(f, &p)? + abs_eval(&g, &p)? * abs_eval(&h, &p)?;
        if (lhs.to_complex() - rhs.to_complex()).norm() > tol.threshold(scale) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the zero-assignment search.
#[derive(Clone, Debug, PartialEq)]
pub enum ZeroAssignmentVerdict {
    /// A justifying `a` with `f(a) = 0` exists, so `f` is indecomposable.
    Indecomposable { witness: Assignment },
    /// No witness found; this says nothing about decomposability.
    Unknown,
}

/// Searches for a justifying zero of `f`.
///
/// Each attempt samples all but one variable and solves the remaining one
/// linearly, then verifies the candidate. Never reports decomposability.
pub fn is_indecomposable_by_zero_assignment(
    f: &MultilinearPoly,
    rng: &mut SeededRng,
    attempts: usize,
) -> Result<ZeroAssignmentVerdict, PolyError> {
    let vars: Vec<VarId> = f.variables().into_iter().collect();
    if vars.is_empty() {
        return Err(PolyError::ConstantPolynomial);
    }
    let tol = Tolerance::default();
    let integer_rounds = attempts.div_ceil(2);
    for t in 0..attempts {
        let target = vars[t % vars.len()];
        let mut a: Assignment = vars
            .iter()
            .map(|&v| {
                (
                    v,
                    if t < integer_rounds {
                        Scalar::int(rng.random_range(-3..=7))
                    } else {
                        random_scalar(rng)
                    },
                )
            })
            .collect();
        let (f0, f1) = f.split_on(&target);
        let slope = f1.evaluate(&a)?;
        if !is_clearly_nonzero(slope, abs_eval(&f1, &a)?, &tol) {
            continue;
        }
        a.insert(target, -f0.evaluate(&a)? / slope);
        if is_zero_at(f, &a, &tol)? && is_justifying(f, &a, &tol) {
            return Ok(ZeroAssignmentVerdict::Indecomposable { witness: a });
        }
    }
    Ok(ZeroAssignmentVerdict::Unknown)
}

/// `f(a) = 0`, exactly or well below tolerance.
pub fn is_zero_at(f: &MultilinearPoly, a: &Assignment, tol: &Tolerance) -> Result<bool, PolyError> {
    Ok(is_clearly_zero(f.evaluate(a)?, abs_eval(f, a)?, tol))
}

/// Rank oracle for the coefficient matrix of `f` under a variable bipartition.
///
/// Rows are indexed by the `I`-part of each monomial and columns by the rest;
/// `f = g(x_I)·h(x_Ī)` iff this matrix has rank at most one. Terms are kept
/// as bitmasks over `var(f)` so repeated queries are cheap.
pub struct BipartitionOracle {
    vars: Vec<VarId>,
    terms: Vec<(u64, Scalar)>,
    exact: bool,
    frobenius: f64,
    tol: Tolerance,
}

impl BipartitionOracle {
    pub fn new(f: &MultilinearPoly, tol: Tolerance) -> Result<Self, PolyError> {
        let vars: Vec<VarId> = f.variables().into_iter().collect();
        if vars.len() > ORACLE_VAR_CAP {
            return Err(PolyError::BudgetExceeded {
                vars: vars.len(),
                cap: ORACLE_VAR_CAP,
            });
        }
        let index: HashMap<VarId, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let terms: Vec<(u64, Scalar)> = f
            .terms()
            .map(|(m, c)| {
                (
                    m.vars().iter().fold(0u64, |acc, v| acc | (1 << index[v])),
                    *c,
                )
            })
            .collect();
        let frobenius = terms.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt();
        Ok(Self {
            vars,
            exact: f.is_exact(),
            terms,
            frobenius,
            tol,
        })
    }

    /// `var(f)` in order; bit `i` of a mask refers to `variables()[i]`.
    pub fn variables(&self) -> &[VarId] {
        &self.vars
    }

    pub fn full_mask(&self) -> u64 {
        if self.vars.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.vars.len()) - 1
        }
    }

    pub fn mask_of(&self, set: &BTreeSet<VarId>) -> u64 {
        self.vars
            .iter()
            .enumerate()
            .filter(|(_, v)| set.contains(v))
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    pub fn set_of(&self, mask: u64) -> BTreeSet<VarId> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| *v)
            .collect()
    }

    pub fn splits(&self, i: &BTreeSet<VarId>) -> bool {
        self.splits_mask(self.mask_of(i))
    }

    /// True iff the coefficient matrix for the bipartition `mask` has rank ≤ 1.
    pub fn splits_mask(&self, mask: u64) -> bool {
        let mask = mask & self.full_mask();
        if self.terms.len() <= 1 {
            return true;
        }
        if self.exact {
            if let Some(answer) = self.exact_rank_le1(mask) {
                return answer;
            }
        }
        self.float_rank_le1(mask)
    }

    fn pivot_index(&self) -> usize {
        if self.exact {
            return 0;
        }
        self.terms
            .iter()
            .enumerate()
            .max_by(|a, b| a.1 .1.abs().total_cmp(&b.1 .1.abs()))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }

    // None when exact arithmetic overflows.
    fn exact_rank_le1(&self, mask: u64) -> Option<bool> {
        let ex = |s: &Scalar| s.as_exact();
        let (m0, p) = self.terms[0];
        let p = ex(&p)?;
        let (r0, c0) = (m0 & mask, m0 & !mask);
        let mut in_col: HashMap<u64, ExactScalar> = HashMap::new();
        let mut in_row: HashMap<u64, ExactScalar> = HashMap::new();
        for (m, v) in &self.terms {
            let (r, c) = (m & mask, m & !mask);
            if c == c0 {
                in_col.insert(r, ex(v)?);
            }
            if r == r0 {
                in_row.insert(c, ex(v)?);
            }
        }
        // Rank one forces the support to be the full rectangle spanned by the pivot.
        if in_col.len() * in_row.len() != self.terms.len() {
            return Some(false);
        }
        for (m, v) in &self.terms {
            let (r, c) = (m & mask, m & !mask);
            let (Some(a), Some(b)) = (in_col.get(&r), in_row.get(&c)) else {
                return Some(false);
            };
            if ex(v)?.checked_mul(&p)? != a.checked_mul(b)? {
                return Some(false);
            }
        }
        Some(true)
    }

    fn float_rank_le1(&self, mask: u64) -> bool {
        let zero = Complex64::new(0.0, 0.0);
        let (m0, p) = self.terms[self.pivot_index()];
        let p = p.to_complex();
        let (r0, c0) = (m0 & mask, m0 & !mask);
        let mut in_col: HashMap<u64, Complex64> = HashMap::new();
        let mut in_row: HashMap<u64, Complex64> = HashMap::new();
        for (m, v) in &self.terms {
            let (r, c) = (m & mask, m & !mask);
            if c == c0 {
                in_col.insert(r, v.to_complex());
            }
            if r == r0 {
                in_row.insert(c, v.to_complex());
            }
        }
        // A 2×2 minor N certifies s₂(M) ≥ s₂(N) ≥ |det N| / ‖N‖_F, and s₁(M) ≤ ‖M‖_F.
        let cut = self.tol.threshold(self.frobenius);
        for (m, v) in &self.terms {
            let (r, c) = (m & mask, m & !mask);
            let v = v.to_complex();
            let a = in_col.get(&r).copied().unwrap_or(zero);
            let b = in_row.get(&c).copied().unwrap_or(zero);
            let det = v * p - a * b;
            let n = (v.norm_sqr() + p.norm_sqr() + a.norm_sqr() + b.norm_sqr()).sqrt();
            if det.norm() > cut * n {
                return false;
            }
        }
        let mut rows: HashMap<u64, usize> = HashMap::new();
        let mut cols: HashMap<u64, usize> = HashMap::new();
        for (m, _) in &self.terms {
            let nr = rows.len();
            rows.entry(m & mask).or_insert(nr);
            let nc = cols.len();
            cols.entry(m & !mask).or_insert(nc);
        }
        let (nr, nc) = (rows.len(), cols.len());
        let mut dense = vec![zero; nr * nc];
        for (m, v) in &self.terms {
            dense[rows[&(m & mask)] * nc + cols[&(m & !mask)]] = v.to_complex();
        }
        numerical_rank(nr, nc, &dense, &self.tol) <= 1
    }

    fn monomial_of(&self, mask: u64) -> Monomial {
        Monomial::new(
            self.vars
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| *v),
        )
    }

    /// Pivot row and column slices `(g, h)` with `f = g·h / pivot` whenever
    /// `splits_mask(mask)` holds.
    fn factor_slices(&self, mask: u64) -> (MultilinearPoly, MultilinearPoly) {
        let (m0, _) = self.terms[self.pivot_index()];
        let (r0, c0) = (m0 & mask, m0 & !mask);
        let mut g = MultilinearPoly::zero();
        let mut h = MultilinearPoly::zero();
        for (m, v) in &self.terms {
            let (r, c) = (m & mask, m & !mask);
            if c == c0 {
                g.add_term(self.monomial_of(r), *v);
            }
            if r == r0 {
                h.add_term(self.monomial_of(c), *v);
            }
        }
        (g, h)
    }

    /// Smallest variable set containing `var(f)[0]` that splits off, if any
    /// proper one exists. Candidates are tried by size, so the result is the
    /// variable-partition class of the first variable.
    pub fn minimal_class(&self) -> Option<u64> {
        let n = self.vars.len();
        if n < 2 {
            return None;
        }
        let others = n - 1;
        for extra in 0..others {
            if extra == 0 {
                if self.splits_mask(1) {
                    return Some(1);
                }
                continue;
            }
            // Gosper's hack over the remaining n−1 variables.
            let mut sub: u64 = (1u64 << extra) - 1;
            let limit = 1u64 << others;
            while sub < limit {
                let mask = (sub << 1) | 1;
                if self.splits_mask(mask) {
                    return Some(mask);
                }
                let c = sub & sub.wrapping_neg();
                let r = sub + c;
                sub = (((r ^ sub) >> 2) / c) | r;
            }
        }
        None
    }
}

/// Rank ≤ 1 test of the `I` × `Ī` coefficient matrix, with default tolerance.
pub fn bipartition_rank_oracle(f: &MultilinearPoly, i: &BTreeSet<VarId>) -> bool {
    match BipartitionOracle::new(f, Tolerance::default()) {
        Ok(o) => o.splits(i),
        // More than 64 variables: fall back to an explicit dense test.
        Err(_) => dense_rank_le1(f, i),
    }
}

fn dense_rank_le1(f: &MultilinearPoly, i: &BTreeSet<VarId>) -> bool {
    let key = |m: &Monomial, inside: bool| -> Vec<VarId> {
        m.vars()
            .iter()
            .copied()
            .filter(|v| i.contains(v) == inside)
            .collect()
    };
    let mut rows: BTreeMap<Vec<VarId>, usize> = BTreeMap::new();
    let mut cols: BTreeMap<Vec<VarId>, usize> = BTreeMap::new();
    for (m, _) in f.terms() {
        let nr = rows.len();
        rows.entry(key(m, true)).or_insert(nr);
        let nc = cols.len();
        cols.entry(key(m, false)).or_insert(nc);
    }
    let mut dense = vec![Complex64::new(0.0, 0.0); rows.len() * cols.len()];
    for (m, c) in f.terms() {
        dense[rows[&key(m, true)] * cols.len() + cols[&key(m, false)]] = c.to_complex();
    }
    numerical_rank(rows.len(), cols.len(), &dense, &Tolerance::default()) <= 1
}

fn normalize_leading(f: &MultilinearPoly) -> MultilinearPoly {
    let lead = *f.leading().expect("factor is nonzero").1;
    MultilinearPoly::from_terms(f.terms().map(|(m, c)| (m.clone(), *c / lead)))
}

/// Splits `f` into variable-disjoint indecomposable factors.
///
/// Every factor has leading coefficient 1 except the first, which carries
/// the overall scalar. A constant `f` comes back as a single factor.
pub fn decompose(f: &MultilinearPoly) -> Result<Vec<MultilinearPoly>, PolyError> {
    decompose_with(f, &Tolerance::default())
}

pub fn decompose_with(
    f: &MultilinearPoly,
    tol: &Tolerance,
) -> Result<Vec<MultilinearPoly>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let n = f.variables().len();
    if n > DECOMPOSE_VAR_CAP {
        return Err(PolyError::BudgetExceeded {
            vars: n,
            cap: DECOMPOSE_VAR_CAP,
        });
    }
    if n == 0 {
        return Ok(vec![f.clone()]);
    }
    let mut raw = Vec::new();
    let mut rest = f.clone();
    loop {
        let oracle = BipartitionOracle::new(&rest, *tol)?;
        match oracle.minimal_class() {
            Some(mask) => {
                let (g, h) = oracle.factor_slices(mask);
                raw.push(g);
                rest = h;
            }
            None => {
                raw.push(rest);
                break;
            }
        }
    }
    let mut factors: Vec<MultilinearPoly> = raw.iter().map(normalize_leading).collect();
    let lead_product = factors
        .iter()
        .map(|p| p.leading().expect("nonzero").0.clone())
        .fold(Monomial::one(), |acc, m| {
            acc.try_mul(&m).expect("factors are variable-disjoint")
        });
    let scalar = f.coefficient(&lead_product);
    factors[0] = factors[0].scale(scalar);
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::seeded_rng;
    use crate::poly::test_support::*;
    use crate::poly::{build_family_p, BlockCoeffs, BlockSpec, Split};
    use proptest::prelude::*;
    use rand::Rng;

    fn set(ids: &[u32]) -> BTreeSet<VarId> {
        ids.iter().map(|&i| v(i)).collect()
    }

    fn product(factors: &[MultilinearPoly]) -> MultilinearPoly {
        factors
            .iter()
            .fold(MultilinearPoly::constant(Scalar::one()), |acc, f| {
                acc.mul(f).unwrap()
            })
    }

    fn polys_close(p: &MultilinearPoly, q: &MultilinearPoly, rel: f64) -> bool {
        let scale = p
            .terms()
            .chain(q.terms())
            .map(|(_, c)| c.abs())
            .fold(0.0, f64::max);
        let keys: BTreeSet<&Monomial> = p.terms().chain(q.terms()).map(|(m, _)| m).collect();
        keys.into_iter().all(|m| {
            (p.coefficient(m).to_complex() - q.coefficient(m).to_complex()).norm() <= rel * scale
        })
    }

    // x0z0 + x0z1 + x1z0 − x1z1 written over v(0), v(1), v(8), v(9).
    fn hadamard_like() -> MultilinearPoly {
        poly(&[(1, &[0, 8]), (1, &[0, 9]), (1, &[1, 8]), (-1, &[1, 9])])
    }

    #[test]
    fn justifying_examples() {
        let tol = Tolerance::default();
        let f = poly(&[(1, &[1, 2])]);
        assert!(is_justifying(
            &f,
            &assign(&[(v(1), Scalar::one()), (v(2), Scalar::one())]),
            &tol
        ));
        assert!(!is_justifying(
            &f,
            &assign(&[(v(1), Scalar::zero()), (v(2), Scalar::zero())]),
            &tol
        ));
        let mut rng = seeded_rng(1);
        let a = find_justifying_assignment(&hadamard_like(), &mut rng, 50).unwrap();
        assert!(is_justifying(&hadamard_like(), &a, &tol));
        assert_eq!(
            find_justifying_assignment(&MultilinearPoly::zero(), &mut rng, 5),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn sv_examples() {
        let mut rng = seeded_rng(2);
        let ones = assign(&[(v(1), Scalar::one()), (v(2), Scalar::one())]);
        assert!(
            sv_partition_test(&poly(&[(1, &[1, 2])]), &ones, &set(&[1]), 20, &mut rng).unwrap()
        );
        assert!(!sv_partition_test(
            &poly(&[(1, &[1]), (1, &[2])]),
            &ones,
            &set(&[1]),
            20,
            &mut rng
        )
        .unwrap());
        let bad = assign(&[(v(1), Scalar::zero()), (v(2), Scalar::zero())]);
        assert!(matches!(
            sv_partition_test(&poly(&[(1, &[1, 2])]), &bad, &set(&[1]), 20, &mut rng),
            Err(PolyError::NotJustifying(_))
        ));
    }

    #[test]
    fn sv_rejects_every_split_of_irreducible_family_member() {
        let f = hadamard_like();
        let mut rng = seeded_rng(9);
        let a = find_justifying_assignment(&f, &mut rng, 50).unwrap();
        let vars: Vec<VarId> = f.variables().into_iter().collect();
        for mask in 1..(1u32 << vars.len()) - 1 {
            let i: BTreeSet<VarId> = vars
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, u)| *u)
                .collect();
            assert!(!sv_partition_test(&f, &a, &i, 20, &mut rng).unwrap());
            assert!(!bipartition_rank_oracle(&f, &i));
        }
    }

    #[test]
    fn rank_oracle_examples() {
        let f = poly(&[(1, &[0, 8]), (1, &[0, 9]), (1, &[1, 8]), (1, &[1, 9])]);
        assert!(bipartition_rank_oracle(&f, &set(&[0, 1])));
        assert!(!bipartition_rank_oracle(&hadamard_like(), &set(&[0, 1])));
        assert!(!bipartition_rank_oracle(&f, &set(&[0, 8])));
        let float = f.scale(Scalar::float(0.3, -1.7));
        assert!(bipartition_rank_oracle(&float, &set(&[0, 1])));
        assert!(!bipartition_rank_oracle(
            &hadamard_like().scale(Scalar::float(0.3, 0.1)),
            &set(&[0, 1])
        ));
    }

    #[test]
    fn rank_oracle_matches_svd_oracle() {
        let mut rng = seeded_rng(4);
        let vars: Vec<VarId> = (0..6).map(v).collect();
        for round in 0..200 {
            let f = if round % 2 == 0 {
                random_poly(&mut rng, &vars, 7, round % 4 == 0)
            } else {
                let g = random_poly(&mut rng, &vars[..3], 3, round % 4 == 1);
                let h = random_poly(&mut rng, &vars[3..], 3, round % 4 == 1);
                g.mul(&h).unwrap()
            };
            for mask in 0..64u32 {
                let i: BTreeSet<VarId> = (0..6).filter(|j| mask >> j & 1 == 1).map(v).collect();
                assert_eq!(
                    bipartition_rank_oracle(&f, &i),
                    dense_rank_le1(&f, &i),
                    "{f:?} / {i:?}"
                );
            }
        }
    }

    #[test]
    fn zero_assignment_examples() {
        let mut rng = seeded_rng(6);
        let sum = poly(&[(1, &[1]), (1, &[2])]);
        assert!(matches!(
            is_indecomposable_by_zero_assignment(&sum, &mut rng, 20).unwrap(),
            ZeroAssignmentVerdict::Indecomposable { .. }
        ));
        let prod = poly(&[(1, &[1, 2])]);
        assert_eq!(
            is_indecomposable_by_zero_assignment(&prod, &mut rng, 40).unwrap(),
            ZeroAssignmentVerdict::Unknown
        );
        assert!(matches!(
            is_indecomposable_by_zero_assignment(&hadamard_like(), &mut rng, 40).unwrap(),
            ZeroAssignmentVerdict::Indecomposable { .. }
        ));
        assert_eq!(
            is_indecomposable_by_zero_assignment(
                &MultilinearPoly::constant(Scalar::int(2)),
                &mut rng,
                5
            ),
            Err(PolyError::ConstantPolynomial)
        );
    }

    #[test]
    fn decompose_examples() {
        let f = poly(&[(1, &[0, 8]), (1, &[0, 9]), (1, &[1, 8]), (1, &[1, 9])]);
        let factors = decompose(&f).unwrap();
        assert_eq!(
            factors,
            vec![poly(&[(1, &[0]), (1, &[1])]), poly(&[(1, &[8]), (1, &[9])])]
        );
        assert_eq!(decompose(&hadamard_like()).unwrap(), vec![hadamard_like()]);
        let scaled = f.scale(Scalar::int(6));
        let factors = decompose(&scaled).unwrap();
        assert_eq!(factors[0], poly(&[(6, &[0]), (6, &[1])]));
        assert_eq!(product(&factors), scaled);
        assert_eq!(
            decompose(&MultilinearPoly::zero()),
            Err(PolyError::ZeroPolynomial)
        );
        let wide = MultilinearPoly::from_terms([(
            Monomial::new(
                (0..25)
                    .map(|i| VarId::new(crate::poly::Block::Y, crate::poly::BitString::new(i, 5))),
            ),
            Scalar::one(),
        )]);
        assert!(matches!(
            decompose(&wide),
            Err(PolyError::BudgetExceeded { vars: 25, cap: 24 })
        ));
    }

    #[test]
    fn decompose_round_trips_random_products() {
        let mut rng = seeded_rng(8);
        let pool: Vec<VarId> = (0..12).map(v).collect();
        for round in 0..200 {
            let exact = round % 2 == 0;
            let parts = 2 + round % 2;
            let mut vars = pool.clone();
            let mut factors = Vec::new();
            for p in 0..parts {
                let take = 2 + rng.random_range(0..2);
                let chunk: Vec<VarId> = vars.drain(..take).collect();
                let mut g = random_poly(&mut rng, &chunk, 3 + p, exact);
                // Ensure every chunk variable appears.
                for &u in &chunk {
                    g.add_term(Monomial::new([u]), Scalar::int(1 + p as i64));
                }
                factors.push(g);
            }
            let f = product(&factors);
            let got = decompose(&f).unwrap();
            let rebuilt = product(&got);
            if f.is_exact() && rebuilt.is_exact() {
                assert_eq!(rebuilt, f);
            } else {
                assert!(polys_close(&rebuilt, &f, 1e-8), "{f:?}");
            }
            let mut seen = BTreeSet::new();
            for g in &got {
                let gv = g.variables();
                assert!(gv.is_disjoint(&seen));
                seen.extend(gv);
                let o = BipartitionOracle::new(g, Tolerance::default()).unwrap();
                assert!(o.minimal_class().is_none(), "factor {g:?} splits further");
            }
            assert_eq!(seen, f.variables());
            assert!(
                got.len()
                    >= factors
                        .iter()
                        .filter(|g| !g.variables().is_empty())
                        .count()
                        .min(1)
            );
        }
    }

    #[test]
    fn family_member_is_one_factor() {
        let spec = BlockSpec::two_blocks(Split::new(1, 1), Split::new(1, 0));
        let c = BlockCoeffs::dense(2, 0, (1..=4).map(Scalar::int).collect()).unwrap();
        let d = BlockCoeffs::dense(1, 0, vec![Scalar::int(2), Scalar::int(-1)]).unwrap();
        let p = build_family_p(&spec, &c, &d, Scalar::int(3)).unwrap();
        assert_eq!(decompose(&p).unwrap().len(), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn sv_agrees_with_partition_classes(seed in any::<u64>(), exact in any::<bool>()) {
            let mut rng = seeded_rng(seed);
            let vars: Vec<VarId> = (0..6).map(v).collect();
            let split = rng.random_range(0..6);
            let f = if rng.random_bool(0.5) {
                random_poly(&mut rng, &vars, 6, exact)
            } else {
                random_poly(&mut rng, &vars[..split], 3, exact).mul(&random_poly(&mut rng, &vars[split..], 3, exact)).unwrap()
            };
            prop_assume!(!f.is_zero());
            let fv: Vec<VarId> = f.variables().into_iter().collect();
            let classes: Vec<BTreeSet<VarId>> = decompose(&f).unwrap().iter().map(|g| g.variables()).collect();
            let a = find_justifying_assignment(&f, &mut rng, 60).unwrap();
            for mask in 0..(1u32 << fv.len()) {
                let i: BTreeSet<VarId> = fv.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, u)| *u).collect();
                let union = classes.iter().all(|c| c.is_subset(&i) || c.is_disjoint(&i));
                prop_assert_eq!(sv_partition_test(&f, &a, &i, IDENTITY_TEST_TRIALS, &mut rng).unwrap(), union);
                prop_assert_eq!(bipartition_rank_oracle(&f, &i), union);
            }
        }

        #[test]
        fn zero_assignment_is_sound(seed in any::<u64>(), exact in any::<bool>()) {
            let mut rng = seeded_rng(seed);
            let vars: Vec<VarId> = (0..6).map(v).collect();
            let g = random_poly(&mut rng, &vars[..3], 4, exact);
            let h = random_poly(&mut rng, &vars[3..], 4, exact);
            let f = g.mul(&h).unwrap();
            prop_assume!(f.variables().len() >= 2 && !g.variables().is_empty() && !h.variables().is_empty());
            let i = g.variables();
            prop_assert!(bipartition_rank_oracle(&f, &i));
            let verdict = is_indecomposable_by_zero_assignment(&f, &mut rng, 30).unwrap();
            prop_assert_eq!(verdict, ZeroAssignmentVerdict::Unknown);
        }

        #[test]
        fn justifying_search_output_verifies(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let vars: Vec<VarId> = (0..5).map(v).collect();
            let f = random_poly(&mut rng, &vars, 5, false);
            prop_assume!(!f.is_zero());
            let a = find_justifying_assignment(&f, &mut rng, 40).unwrap();
            prop_assert!(is_justifying(&f, &a, &Tolerance::default()));
            for u in f.variables() {
                let others: BTreeSet<VarId> = f.variables().into_iter().filter(|w| *w != u).collect();
                let univariate = f.restrict(&others, &a).unwrap();
                prop_assert_eq!(univariate.variables(), BTreeSet::from([u]));
            }
        }
    }
}
