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

//! The irreducible family `P = T₁T₂ − α·Σ c·d·x_s y_t z_u w_v`.
//!
//! `T₁ = Σ c_{s,t} x_s y_t` and `T₂ = Σ d_{u,v} z_u w_v`; the correction sum
//! runs over index tuples whose head parts are all ones. Absent `y` or `w`
//! blocks drop out of both the products and the head condition.

use std::fmt;

use rand::Rng;

use super::analysis::{is_justifying, is_zero_at};
use super::{Assignment, BitString, Block, Monomial, MultilinearPoly, PolyError, VarId};
use crate::numerics::{random_scalar, Scalar, SeededRng, Tolerance};

/// Largest index length per block; a block of length `k` has `2^k` variables.
const MAX_BLOCK_LEN: usize = 12;

/// A block index `s = s₁∘s₂` with `|s₁| = head ≥ 1` and `|s₂| = tail`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Split {
    pub head: usize,
    pub tail: usize,
}

impl Split {
    pub fn new(head: usize, tail: usize) -> Self {
        Self { head, tail }
    }

    pub fn len(&self) -> usize {
        self.head + self.tail
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn head_is_ones(&self, s: BitString) -> bool {
        s.split(self.head).0.is_all_ones()
    }
}

/// Index splits for the `x`, `y`, `z`, `w` blocks; `y` and `w` are optional.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    pub x: Split,
    pub y: Option<Split>,
    pub z: Split,
    pub w: Option<Split>,
}

/// Which of the six lemma forms a spec instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaShape {
    AllContactTwoZeros,
    AllContactOneZero,
    AllContact,
    MostGeneralTwoZeros,
    MostGeneralOneZero,
    MostGeneral,
}

impl LemmaShape {
    pub const ALL: [LemmaShape; 6] = [
        LemmaShape::AllContactTwoZeros,
        LemmaShape::AllContactOneZero,
        LemmaShape::AllContact,
        LemmaShape::MostGeneralTwoZeros,
        LemmaShape::MostGeneralOneZero,
        LemmaShape::MostGeneral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaShape::AllContactTwoZeros => "all-contact-two-zeros",
            LemmaShape::AllContactOneZero => "all-contact-one-zero",
            LemmaShape::AllContact => "all-contact",
            LemmaShape::MostGeneralTwoZeros => "most-general-two-zeros",
            LemmaShape::MostGeneralOneZero => "most-general-one-zero",
            LemmaShape::MostGeneral => "most-general",
        }
    }

    /// Number of optional blocks (`y`, `w`) present.
    pub fn extra_blocks(self) -> usize {
        match self {
            LemmaShape::AllContactTwoZeros | LemmaShape::MostGeneralTwoZeros => 0,
            LemmaShape::AllContactOneZero | LemmaShape::MostGeneralOneZero => 1,
            LemmaShape::AllContact | LemmaShape::MostGeneral => 2,
        }
    }

    /// True for the forms whose blocks may have nonempty tails.
    pub fn is_most_general(self) -> bool {
        matches!(
            self,
            LemmaShape::MostGeneralTwoZeros
                | LemmaShape::MostGeneralOneZero
                | LemmaShape::MostGeneral
        )
    }
}

impl fmt::Display for LemmaShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl BlockSpec {
    pub fn two_blocks(x: Split, z: Split) -> Self {
        Self {
            x,
            y: None,
            z,
            w: None,
        }
    }

    /// `T₁` over `x`, `T₂` over `z` and `w`.
    pub fn three_blocks(x: Split, z: Split, w: Split) -> Self {
        Self {
            x,
            y: None,
            z,
            w: Some(w),
        }
    }

    pub fn four_blocks(x: Split, y: Split, z: Split, w: Split) -> Self {
        Self {
            x,
            y: Some(y),
            z,
            w: Some(w),
        }
    }

    pub fn validate(&self) -> Result<(), PolyError> {
        let blocks = [
            ("x", Some(self.x)),
            ("y", self.y),
            ("z", Some(self.z)),
            ("w", self.w),
        ];
        for (name, split) in blocks {
            let Some(split) = split else { continue };
            if split.head == 0 {
                return Err(PolyError::InvalidBlockSpec(format!(
                    "block {name} needs a head of length at least 1"
                )));
            }
            if split.len() > MAX_BLOCK_LEN {
                return Err(PolyError::InvalidBlockSpec(format!(
                    "block {name} has length {}, limit is {MAX_BLOCK_LEN}",
                    split.len()
                )));
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> LemmaShape {
        let extra = usize::from(self.y.is_some()) + usize::from(self.w.is_some());
        let tails = [Some(self.x), self.y, Some(self.z), self.w]
            .into_iter()
            .flatten()
            .any(|s| s.tail > 0);
        match (extra, tails) {
            (0, false) => LemmaShape::AllContactTwoZeros,
            (1, false) => LemmaShape::AllContactOneZero,
            (_, false) => LemmaShape::AllContact,
            (0, true) => LemmaShape::MostGeneralTwoZeros,
            (1, true) => LemmaShape::MostGeneralOneZero,
            (_, true) => LemmaShape::MostGeneral,
        }
    }

    /// `|var(P)|` when every coefficient is nonzero.
    pub fn variable_count(&self) -> usize {
        [Some(self.x), self.y, Some(self.z), self.w]
            .into_iter()
            .flatten()
            .map(|s| 1usize << s.len())
            .sum()
    }

    /// Dimensions `(first, second)` expected for the `c` table.
    pub fn c_dims(&self) -> (usize, usize) {
        (self.x.len(), self.y.map_or(0, |s| s.len()))
    }

    /// Dimensions `(first, second)` expected for the `d` table.
    pub fn d_dims(&self) -> (usize, usize) {
        (self.z.len(), self.w.map_or(0, |s| s.len()))
    }
}

/// Dense coefficient table indexed by a pair of bitstrings `(s, t)`.
///
/// A missing second block is modelled by `second = 0`, so `t` is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockCoeffs {
    first: usize,
    second: usize,
    values: Vec<Scalar>,
}

impl BlockCoeffs {
    /// `values[(s << second) | t]` is the coefficient of `(s, t)`.
    pub fn dense(first: usize, second: usize, values: Vec<Scalar>) -> Result<Self, PolyError> {
        let expected = 1usize << (first + second);
        if values.len() != expected {
            return Err(PolyError::LengthMismatch {
                what: "coefficient table",
                expected,
                got: values.len(),
            });
        }
        Ok(Self {
            first,
            second,
            values,
        })
    }

    pub fn from_fn(
        first: usize,
        second: usize,
        mut f: impl FnMut(BitString, BitString) -> Scalar,
    ) -> Self {
        let values = (0..1u32 << (first + second))
            .map(|i| {
                f(
                    BitString::new(i >> second, first),
                    BitString::new(i & ((1 << second) - 1), second),
                )
            })
            .collect();
        Self {
            first,
            second,
            values,
        }
    }

    /// Independent complex Gaussian entries.
    pub fn random_gaussian(rng: &mut SeededRng, first: usize, second: usize) -> Self {
        Self::from_fn(first, second, |_, _| random_scalar(rng))
    }

    /// Integer entries drawn uniformly from `-bound..=bound`.
    pub fn random_small_int(rng: &mut SeededRng, first: usize, second: usize, bound: i64) -> Self {
        Self::from_fn(first, second, |_, _| {
            Scalar::int(rng.random_range(-bound..=bound))
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.first, self.second)
    }

    pub fn get(&self, s: BitString, t: BitString) -> Scalar {
        self.values[((s.value() as usize) << self.second) | t.value() as usize]
    }

    /// Nonzero entries as `(s, t, value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (BitString, BitString, Scalar)> + '_ {
        let mask = (1usize << self.second) - 1;
        self.values
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| {
                (
                    BitString::new((i >> self.second) as u32, self.first),
                    BitString::new((i & mask) as u32, self.second),
                    *c,
                )
            })
    }
}

fn check_dims(
    what: &'static str,
    table: &BlockCoeffs,
    want: (usize, usize),
) -> Result<(), PolyError> {
    if table.dims() != want {
        let expected = 1usize << (want.0 + want.1);
        if expected != table.values.len() {
            return Err(PolyError::LengthMismatch {
                what,
                expected,
                got: table.values.len(),
            });
        }
        return Err(PolyError::InvalidBlockSpec(format!(
            "{what} table is {}×{} bits, spec needs {}×{}",
            table.first, table.second, want.0, want.1
        )));
    }
    Ok(())
}

// Terms of one side: (monomial, coefficient, head condition).
fn side_terms(
    table: &BlockCoeffs,
    first: (Block, Split),
    second: Option<(Block, Split)>,
) -> Vec<(Monomial, Scalar, bool)> {
    table
        .nonzero()
        .map(|(s, t, c)| {
            let mut vars = vec![VarId::new(first.0, s)];
            let mut heads = first.1.head_is_ones(s);
            if let Some((block, split)) = second {
                vars.push(VarId::new(block, t));
                heads &= split.head_is_ones(t);
            }
            (Monomial::new(vars), c, heads)
        })
        .collect()
}

/// Builds `P` for the given spec, coefficient tables and nonzero `α`.
pub fn build_family_p(
    spec: &BlockSpec,
    c: &BlockCoeffs,
    d: &BlockCoeffs,
    alpha: Scalar,
) -> Result<MultilinearPoly, PolyError> {
    spec.validate()?;
    if alpha.is_zero() {
        return Err(PolyError::ZeroAlpha);
    }
    check_dims("c", c, spec.c_dims())?;
    check_dims("d", d, spec.d_dims())?;
    let left = side_terms(c, (Block::X, spec.x), spec.y.map(|s| (Block::Y, s)));
    let right = side_terms(d, (Block::Z, spec.z), spec.w.map(|s| (Block::W, s)));
    let mut p = MultilinearPoly::zero();
    for (m1, c1, h1) in &left {
        for (m2, c2, h2) in &right {
            let m = m1.try_mul(m2).expect("blocks are disjoint");
            let cd = *c1 * *c2;
            p.add_term(m, if *h1 && *h2 { cd - alpha * cd } else { cd });
        }
    }
    Ok(p)
}

/// Which existential coefficient hypotheses hold.
///
/// `*_leading`: some entry with all-ones heads is nonzero. `*_off_first`:
/// some nonzero entry has a first-block head other than all ones.
/// `*_off_second`: likewise for the second block, `None` if it is absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub shape: LemmaShape,
    pub c_leading: bool,
    pub c_off_first: bool,
    pub c_off_second: Option<bool>,
    pub d_leading: bool,
    pub d_off_first: bool,
    pub d_off_second: Option<bool>,
}

impl HypothesisReport {
    pub fn all_hold(&self) -> bool {
        self.failures().is_empty()
    }

    /// Names of the failing hypotheses.
    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            ("c-leading", Some(self.c_leading)),
            ("c-off-x", Some(self.c_off_first)),
            ("c-off-y", self.c_off_second),
            ("d-leading", Some(self.d_leading)),
            ("d-off-z", Some(self.d_off_first)),
            ("d-off-w", self.d_off_second),
        ];
        checks
            .into_iter()
            .filter(|(_, ok)| *ok == Some(false))
            .map(|(name, _)| name)
            .collect()
    }
}

fn side_hypotheses(
    table: &BlockCoeffs,
    first: Split,
    second: Option<Split>,
) -> (bool, bool, Option<bool>) {
    let mut leading = false;
    let mut off_first = false;
    let mut off_second = second.map(|_| false);
    for (s, t, _) in table.nonzero() {
        let h1 = first.head_is_ones(s);
        let h2 = second.is_none_or(|sp| sp.head_is_ones(t));
        leading |= h1 && h2;
        off_first |= !h1;
        if let (Some(flag), Some(sp)) = (off_second.as_mut(), second) {
            *flag |= !sp.head_is_ones(t);
        }
    }
    (leading, off_first, off_second)
}

pub fn check_family_hypotheses(
    spec: &BlockSpec,
    c: &BlockCoeffs,
    d: &BlockCoeffs,
) -> HypothesisReport {
    let (c_leading, c_off_first, c_off_second) = side_hypotheses(c, spec.x, spec.y);
    let (d_leading, d_off_first, d_off_second) = side_hypotheses(d, spec.z, spec.w);
    HypothesisReport {
        shape: spec.shape(),
        c_leading,
        c_off_first,
        c_off_second,
        d_leading,
        d_off_first,
        d_off_second,
    }
}

/// A justifying zero of a two-block `P` together with the chosen `A` and `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitAssignment {
    pub a_value: Scalar,
    pub b_value: Scalar,
    pub point: Assignment,
}

/// Constructs `x_{s₀} = A`, `x_𝟙 = 1`, `z_{u₀} = B`, `z_𝟙 = 1`, all else 0,
/// with `A ∈ {0,…,4}` and `B = αc₁d₁ / (d_{u₀}(c₁ + c_{s₀}A)) − d₁/d_{u₀}`,
/// and returns the first candidate that is a justifying zero of `P`.
///
/// `𝟙` stands for the first index with an all-ones head and nonzero
/// coefficient; `s₀`, `u₀` for the first nonzero index whose head is not
/// all ones. Only defined for specs without `y` and `w` blocks.
pub fn two_zeros_explicit_assignment(
    spec: &BlockSpec,
    c: &BlockCoeffs,
    d: &BlockCoeffs,
    alpha: Scalar,
) -> Result<ExplicitAssignment, PolyError> {
    if spec.y.is_some() || spec.w.is_some() {
        return Err(PolyError::InvalidBlockSpec(
            "explicit assignment needs a spec without y and w blocks".into(),
        ));
    }
    let p = build_family_p(spec, c, d, alpha)?;
    let report = check_family_hypotheses(spec, c, d);
    if !report.all_hold() {
        return Err(PolyError::InvalidBlockSpec(format!(
            "hypotheses fail: {}",
            report.failures().join(", ")
        )));
    }
    let pick = |table: &BlockCoeffs, split: Split, ones: bool| {
        table
            .nonzero()
            .find(|(s, _, _)| split.head_is_ones(*s) == ones)
            .map(|(s, _, v)| (s, v))
            .expect("hypotheses hold")
    };
    let (s_one, c1) = pick(c, spec.x, true);
    let (s0, cs0) = pick(c, spec.x, false);
    let (u_one, d1) = pick(d, spec.z, true);
    let (u0, du0) = pick(d, spec.z, false);
    let tol = Tolerance::default();
    for a in 0..=4 {
        let a_value = Scalar::int(a);
        let t1 = c1 + cs0 * a_value;
        if t1.is_zero() {
            continue;
        }
        let b_value = alpha * c1 * d1 / (du0 * t1) - d1 / du0;
        let mut point: Assignment = Assignment::new();
        for s in 0..1u32 << spec.x.len() {
            point.insert(
                VarId::new(Block::X, BitString::new(s, spec.x.len())),
                Scalar::zero(),
            );
        }
        for u in 0..1u32 << spec.z.len() {
            point.insert(
                VarId::new(Block::Z, BitString::new(u, spec.z.len())),
                Scalar::zero(),
            );
        }
        point.insert(VarId::new(Block::X, s0), a_value);
        point.insert(VarId::new(Block::X, s_one), Scalar::one());
        point.insert(VarId::new(Block::Z, u0), b_value);
        point.insert(VarId::new(Block::Z, u_one), Scalar::one());
        if is_zero_at(&p, &point, &tol)? && is_justifying(&p, &point, &tol) {
            return Ok(ExplicitAssignment {
                a_value,
                b_value,
                point,
            });
        }
    }
    Err(PolyError::NotFound { attempts: 5 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::seeded_rng;
    use crate::poly::{decompose, BipartitionOracle};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    fn var_sum(block: Block, len: usize) -> MultilinearPoly {
        (0..1u32 << len).fold(MultilinearPoly::zero(), |acc, i| {
            acc.add(&MultilinearPoly::var(VarId::new(
                block,
                BitString::new(i, len),
            )))
        })
    }

    #[test]
    fn two_block_example_matches_hand_expansion() {
        let spec = BlockSpec::two_blocks(Split::new(1, 0), Split::new(1, 0));
        let ones = BlockCoeffs::dense(1, 0, ints(&[1, 1])).unwrap();
        let p = build_family_p(&spec, &ones, &ones, Scalar::int(2)).unwrap();
        let (x0, x1, z0, z1) = (VarId::x("0"), VarId::x("1"), VarId::z("0"), VarId::z("1"));
        let expect = MultilinearPoly::from_terms([
            (Monomial::new([x0, z0]), Scalar::int(1)),
            (Monomial::new([x0, z1]), Scalar::int(1)),
            (Monomial::new([x1, z0]), Scalar::int(1)),
            (Monomial::new([x1, z1]), Scalar::int(-1)),
        ]);
        assert_eq!(p, expect);
        assert_eq!(spec.shape(), LemmaShape::AllContactTwoZeros);
        assert!(check_family_hypotheses(&spec, &ones, &ones).all_hold());
    }

    #[test]
    fn hypothesis_violation_path() {
        let spec = BlockSpec::two_blocks(Split::new(1, 0), Split::new(1, 0));
        let only_one = BlockCoeffs::dense(1, 0, ints(&[0, 1])).unwrap();
        let p = build_family_p(&spec, &only_one, &only_one, Scalar::int(2)).unwrap();
        assert_eq!(
            p,
            MultilinearPoly::from_terms([(
                Monomial::new([VarId::x("1"), VarId::z("1")]),
                Scalar::int(-1)
            )])
        );
        let report = check_family_hypotheses(&spec, &only_one, &only_one);
        assert!(!report.c_off_first && !report.d_off_first);
        assert_eq!(report.failures(), vec!["c-off-x", "d-off-z"]);
        assert!(matches!(
            two_zeros_explicit_assignment(&spec, &only_one, &only_one, Scalar::int(2)),
            Err(PolyError::InvalidBlockSpec(_))
        ));
    }

    #[test]
    fn four_block_example_matches_direct_expansion() {
        let spec = BlockSpec::four_blocks(
            Split::new(1, 0),
            Split::new(1, 0),
            Split::new(1, 0),
            Split::new(1, 0),
        );
        let ones = BlockCoeffs::dense(1, 1, ints(&[1, 1, 1, 1])).unwrap();
        let p = build_family_p(&spec, &ones, &ones, Scalar::int(2)).unwrap();
        let t1 = var_sum(Block::X, 1).mul(&var_sum(Block::Y, 1)).unwrap();
        let t2 = var_sum(Block::Z, 1).mul(&var_sum(Block::W, 1)).unwrap();
        let corner = Monomial::new([VarId::x("1"), VarId::y("1"), VarId::z("1"), VarId::w("1")]);
        let mut expect = t1.mul(&t2).unwrap();
        expect.add_term(corner.clone(), Scalar::int(-2));
        assert_eq!(expect.num_terms(), 16);
        assert_eq!(p, expect);
        assert_eq!(p.coefficient(&corner), Scalar::int(-1));
        assert_eq!(spec.shape(), LemmaShape::AllContact);
    }

    #[test]
    fn argument_errors() {
        let spec = BlockSpec::two_blocks(Split::new(1, 0), Split::new(1, 0));
        let ones = BlockCoeffs::dense(1, 0, ints(&[1, 1])).unwrap();
        assert_eq!(
            build_family_p(&spec, &ones, &ones, Scalar::zero()),
            Err(PolyError::ZeroAlpha)
        );
        assert_eq!(
            BlockCoeffs::dense(1, 0, ints(&[1])),
            Err(PolyError::LengthMismatch {
                what: "coefficient table",
                expected: 2,
                got: 1
            })
        );
        let wide = BlockCoeffs::dense(2, 0, ints(&[1, 1, 1, 1])).unwrap();
        assert!(matches!(
            build_family_p(&spec, &wide, &ones, Scalar::int(2)),
            Err(PolyError::LengthMismatch {
                what: "c",
                expected: 2,
                got: 4
            })
        ));
        let bad = BlockSpec::two_blocks(Split::new(0, 1), Split::new(1, 0));
        assert!(matches!(
            build_family_p(&bad, &ones, &ones, Scalar::int(2)),
            Err(PolyError::InvalidBlockSpec(_))
        ));
    }

    #[test]
    fn shapes_follow_blocks_and_tails() {
        let s = Split::new(1, 0);
        let t = Split::new(1, 1);
        assert_eq!(
            BlockSpec::three_blocks(s, s, s).shape(),
            LemmaShape::AllContactOneZero
        );
        assert_eq!(
            BlockSpec::two_blocks(t, s).shape(),
            LemmaShape::MostGeneralTwoZeros
        );
        assert_eq!(
            BlockSpec::three_blocks(s, s, t).shape(),
            LemmaShape::MostGeneralOneZero
        );
        assert_eq!(
            BlockSpec::four_blocks(s, s, t, s).shape(),
            LemmaShape::MostGeneral
        );
        assert_eq!(
            BlockSpec::four_blocks(s, s, t, s).variable_count(),
            2 + 2 + 4 + 2
        );
    }

    #[test]
    fn explicit_assignment_for_unit_coefficients() {
        let spec = BlockSpec::two_blocks(Split::new(1, 0), Split::new(1, 0));
        let ones = BlockCoeffs::dense(1, 0, ints(&[1, 1])).unwrap();
        let got = two_zeros_explicit_assignment(&spec, &ones, &ones, Scalar::int(2)).unwrap();
        // A = 0 gives T₂ = αd₁ and A = 1 gives T₁ = αc₁; A = 2 is the first admissible value.
        assert_eq!(got.a_value, Scalar::int(2));
        assert!(
            (got.b_value.to_complex() - num_complex::Complex64::new(-1.0 / 3.0, 0.0)).norm()
                < 1e-12
        );
        let p = build_family_p(&spec, &ones, &ones, Scalar::int(2)).unwrap();
        assert!(is_justifying(&p, &got.point, &Tolerance::default()));
        assert!(is_zero_at(&p, &got.point, &Tolerance::default()).unwrap());
    }

    #[test]
    fn explicit_assignment_for_random_two_block_instances() {
        let mut rng = seeded_rng(21);
        for round in 0..50 {
            let spec = BlockSpec::two_blocks(
                Split::new(1 + round % 2, round % 3),
                Split::new(1 + round % 3, round % 2),
            );
            let c = BlockCoeffs::random_gaussian(&mut rng, spec.x.len(), 0);
            let d = BlockCoeffs::random_gaussian(&mut rng, spec.z.len(), 0);
            let alpha = random_scalar(&mut rng);
            let got = two_zeros_explicit_assignment(&spec, &c, &d, alpha).unwrap();
            let p = build_family_p(&spec, &c, &d, alpha).unwrap();
            assert!(is_justifying(&p, &got.point, &Tolerance::default()));
        }
    }

    #[test]
    fn random_gaussian_coefficients_satisfy_hypotheses() {
        let mut rng = seeded_rng(17);
        let s = Split::new(1, 1);
        let spec = BlockSpec::four_blocks(s, s, s, s);
        for _ in 0..100 {
            let c = BlockCoeffs::random_gaussian(&mut rng, 2, 2);
            let d = BlockCoeffs::random_gaussian(&mut rng, 2, 2);
            assert!(check_family_hypotheses(&spec, &c, &d).all_hold());
        }
    }

    #[test]
    fn small_instances_of_every_shape_are_indecomposable() {
        let mut rng = seeded_rng(33);
        let s = Split::new(1, 0);
        let t = Split::new(1, 1);
        let specs = [
            BlockSpec::two_blocks(s, s),
            BlockSpec::three_blocks(s, s, s),
            BlockSpec::four_blocks(s, s, s, s),
            BlockSpec::two_blocks(t, s),
            BlockSpec::three_blocks(s, t, s),
            BlockSpec::four_blocks(s, s, s, t),
        ];
        for spec in specs {
            for _ in 0..5 {
                let (c, d) = loop {
                    let (a, b) = spec.c_dims();
                    let c = BlockCoeffs::random_small_int(&mut rng, a, b, 3);
                    let (a, b) = spec.d_dims();
                    let d = BlockCoeffs::random_small_int(&mut rng, a, b, 3);
                    if check_family_hypotheses(&spec, &c, &d).all_hold() {
                        break (c, d);
                    }
                };
                let p = build_family_p(&spec, &c, &d, Scalar::int(2)).unwrap();
                let oracle = BipartitionOracle::new(&p, Tolerance::default()).unwrap();
                assert!(
                    oracle.minimal_class().is_none(),
                    "{} splits: {p:?}",
                    spec.shape()
                );
                assert_eq!(decompose(&p).unwrap().len(), 1);
            }
        }
    }
}
