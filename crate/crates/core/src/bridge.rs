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

//! The linear map from states to homogeneous multilinear polynomials.
//!
//! Each block of qubits gets its own variable letter; the basis state
//! `|s⟩⊗|t⟩⊗…` maps to the monomial `x_s·y_t·…`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::numerics::{Scalar, Tolerance};
use crate::poly::{bipartition_rank_oracle, BitString, Block, Monomial, MultilinearPoly, VarId};
use crate::state::{
    gather_bits, scatter_bits, separates_at, Bipartition, QubitSet, StateError, StateVector,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BridgeError {
    #[error("invalid block partition: {0}")]
    InvalidPartition(String),
    #[error("polynomial is not in the image of the state map: {0}")]
    Shape(String),
    #[error(transparent)]
    State(#[from] StateError),
}

/// Disjoint qubit blocks covering a register, each with its variable letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    r: usize,
    blocks: Vec<(QubitSet, Block)>,
}

impl BlockPartition {
    pub fn new(r: usize, blocks: Vec<(QubitSet, Block)>) -> Result<Self, BridgeError> {
        if blocks.is_empty() || blocks.len() > 4 {
            return Err(BridgeError::InvalidPartition(format!(
                "need 1 to 4 blocks, got {}",
                blocks.len()
            )));
        }
        let mut seen = QubitSet::EMPTY;
        let mut letters = BTreeSet::new();
        for (set, letter) in &blocks {
            if set.is_empty() {
                return Err(BridgeError::InvalidPartition(
                    "blocks must be nonempty".into(),
                ));
            }
            if !seen.is_disjoint(set) {
                return Err(BridgeError::InvalidPartition(format!(
                    "block {set} overlaps an earlier block"
                )));
            }
            if !letters.insert(*letter) {
                return Err(BridgeError::InvalidPartition(format!(
                    "letter {} used twice",
                    letter.letter()
                )));
            }
            seen = seen.union(set);
        }
        if seen != QubitSet::full(r) {
            return Err(BridgeError::InvalidPartition(format!(
                "blocks cover {seen}, register has {r} qubits"
            )));
        }
        Ok(Self { r, blocks })
    }

    /// Letters assigned in block order: x, y, z, w.
    pub fn ordered(r: usize, sets: &[QubitSet]) -> Result<Self, BridgeError> {
        Self::new(r, sets.iter().copied().zip(Block::ALL).collect())
    }

    pub fn qubits(&self) -> usize {
        self.r
    }

    pub fn blocks(&self) -> &[(QubitSet, Block)] {
        &self.blocks
    }
}

/// `poly(ψ) = Σ ψ_{s,t,…} x_s y_t …`.
pub fn poly_of_state(
    psi: &StateVector,
    bp: &BlockPartition,
) -> Result<MultilinearPoly, BridgeError> {
    if psi.qubits() != bp.r {
        return Err(BridgeError::InvalidPartition(format!(
            "partition has {} qubits, state has {}",
            bp.r,
            psi.qubits()
        )));
    }
    let layout: Vec<(Vec<usize>, Block)> =
        bp.blocks.iter().map(|(s, b)| (s.to_vec(), *b)).collect();
    let mut f = MultilinearPoly::zero();
    for (i, a) in psi.amps().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let vars = layout.iter().map(|(qs, b)| {
            VarId::new(
                *b,
                BitString::new(gather_bits(i, qs, bp.r) as u32, qs.len()),
            )
        });
        f.add_term(Monomial::new(vars), *a);
    }
    Ok(f)
}

/// Inverse of [`poly_of_state`] on its image.
pub fn state_of_poly(f: &MultilinearPoly, bp: &BlockPartition) -> Result<StateVector, BridgeError> {
    let mut amps = vec![Scalar::zero(); 1 << bp.r];
    for (m, c) in f.terms() {
        if m.degree() != bp.blocks.len() {
            return Err(BridgeError::Shape(format!(
                "monomial {m:?} has degree {}, expected {}",
                m.degree(),
                bp.blocks.len()
            )));
        }
        let mut index = 0;
        for (qs, block) in &bp.blocks {
            let qv = qs.to_vec();
            let mut hits = m.vars().iter().filter(|v| v.block == *block);
            let (Some(v), None) = (hits.next(), hits.next()) else {
                return Err(BridgeError::Shape(format!(
                    "monomial {m:?} needs exactly one {} variable",
                    block.letter()
                )));
            };
            if v.index.len() != qv.len() {
                return Err(BridgeError::Shape(format!(
                    "variable {v} should have a {}-bit index",
                    qv.len()
                )));
            }
            index |= scatter_bits(v.index.value() as usize, &qv, bp.r);
        }
        amps[index] = *c;
    }
    Ok(StateVector::new(bp.r, amps)?)
}

/// Separability of a state across a union of blocks, next to the rank of
/// its polynomial across the matching variable sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeparabilityReport {
    pub separable: bool,
    pub rank_le_one: bool,
}

impl SeparabilityReport {
    /// Separable states map to splitting polynomials and, for this map,
    /// conversely.
    pub fn consistent(&self) -> bool {
        self.separable == self.rank_le_one
    }
}

/// Compares `separates_at` with the polynomial rank oracle for the split
/// placing the blocks selected by `side` (indices into `bp.blocks()`) on one side.
pub fn separability_decomposability_check(
    psi: &StateVector,
    bp: &BlockPartition,
    side: &[usize],
    tol: &Tolerance,
) -> Result<SeparabilityReport, BridgeError> {
    let mut qubits = QubitSet::EMPTY;
    let mut letters = BTreeSet::new();
    for &i in side {
        let (set, letter) = bp
            .blocks
            .get(i)
            .ok_or_else(|| BridgeError::InvalidPartition(format!("no block {i}")))?;
        qubits = qubits.union(set);
        letters.insert(*letter);
    }
    let p = Bipartition::from_side(qubits, bp.r)?;
    let f = poly_of_state(psi, bp)?;
    let vars: BTreeSet<VarId> = f
        .variables()
        .into_iter()
        .filter(|v| letters.contains(&v.block))
        .collect();
    Ok(SeparabilityReport {
        separable: separates_at(psi, &p, tol),
        rank_le_one: bipartition_rank_oracle(&f, &vars),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::seeded_rng;
    use crate::poly::{build_family_p, BlockCoeffs, BlockSpec, Split};
    use crate::state::{random_product_state, random_state, tensor};
    use rand::Rng;

    fn set(labels: &[usize]) -> QubitSet {
        labels.iter().copied().collect()
    }

    fn xz() -> BlockPartition {
        BlockPartition::ordered(2, &[set(&[0]), set(&[1])])
            .unwrap()
            .with_letters(&[Block::X, Block::Z])
    }

    impl BlockPartition {
        fn with_letters(self, letters: &[Block]) -> Self {
            let blocks = self
                .blocks
                .iter()
                .zip(letters)
                .map(|((s, _), l)| (*s, *l))
                .collect();
            BlockPartition::new(self.r, blocks).unwrap()
        }
    }

    #[test]
    fn basis_and_bell_examples() {
        let f = poly_of_state(&StateVector::from_bitstring("11").unwrap(), &xz()).unwrap();
        assert_eq!(
            f,
            MultilinearPoly::from_terms([(
                Monomial::new([VarId::x("1"), VarId::z("1")]),
                Scalar::one()
            )])
        );
        let h = Scalar::frac_1_sqrt_2();
        let bell = StateVector::new(2, vec![h, Scalar::zero(), Scalar::zero(), h]).unwrap();
        let g = poly_of_state(&bell, &xz()).unwrap();
        assert_eq!(
            g.coefficient(&Monomial::new([VarId::x("0"), VarId::z("0")])),
            h
        );
        assert_eq!(
            g.coefficient(&Monomial::new([VarId::x("1"), VarId::z("1")])),
            h
        );
        assert_eq!(g.num_terms(), 2);
    }

    #[test]
    fn cz_on_plus_plus_maps_to_family_member() {
        let mut psi = tensor(&StateVector::plus(), &StateVector::plus(), set(&[0])).unwrap();
        psi.apply_phase_on_ones(set(&[0, 1]), -Scalar::one())
            .unwrap();
        let f = poly_of_state(&psi, &xz()).unwrap();
        let ones = BlockCoeffs::dense(1, 0, vec![Scalar::one(); 2]).unwrap();
        let p = build_family_p(
            &BlockSpec::two_blocks(Split::new(1, 0), Split::new(1, 0)),
            &ones,
            &ones,
            Scalar::int(2),
        )
        .unwrap();
        assert_eq!(f, p.scale(Scalar::exact(1, 0, 0, 0, 2)));
    }

    #[test]
    fn state_of_poly_inverts() {
        let x1z1 = MultilinearPoly::from_terms([(
            Monomial::new([VarId::x("1"), VarId::z("1")]),
            Scalar::one(),
        )]);
        assert_eq!(
            state_of_poly(&x1z1, &xz()).unwrap(),
            StateVector::from_bitstring("11").unwrap()
        );
        let bad = MultilinearPoly::var(VarId::x("0")).add(&MultilinearPoly::var(VarId::z("0")));
        assert!(matches!(
            state_of_poly(&bad, &xz()),
            Err(BridgeError::Shape(_))
        ));
        let mut rng = seeded_rng(12);
        for _ in 0..100 {
            let r = rng.random_range(2..=6);
            let cut = rng.random_range(1..r);
            let bp = BlockPartition::ordered(
                r,
                &[
                    QubitSet::full(cut),
                    QubitSet::full(r).difference(&QubitSet::full(cut)),
                ],
            )
            .unwrap();
            let psi = random_state(r, &mut rng).unwrap();
            let f = poly_of_state(&psi, &bp).unwrap();
            assert_eq!(state_of_poly(&f, &bp).unwrap(), psi);
            let coeff_norm = f.terms().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt();
            assert!((coeff_norm - psi.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn four_blocks_on_interleaved_qubits() {
        let bp =
            BlockPartition::ordered(5, &[set(&[0, 3]), set(&[1]), set(&[2]), set(&[4])]).unwrap();
        let f = poly_of_state(&StateVector::from_bitstring("10110").unwrap(), &bp).unwrap();
        let m = Monomial::new([VarId::x("11"), VarId::y("0"), VarId::z("1"), VarId::w("0")]);
        assert_eq!(f, MultilinearPoly::from_terms([(m, Scalar::one())]));
        assert!(BlockPartition::ordered(3, &[set(&[0]), set(&[0, 1, 2])]).is_err());
        assert!(BlockPartition::ordered(3, &[set(&[0]), set(&[1])]).is_err());
    }

    #[test]
    fn separability_matches_rank() {
        let tol = Tolerance::default();
        let mut rng = seeded_rng(13);
        let product = tensor(
            &StateVector::plus(),
            &StateVector::from_bitstring("1").unwrap(),
            set(&[0]),
        )
        .unwrap();
        let rep = separability_decomposability_check(&product, &xz(), &[0], &tol).unwrap();
        assert!(rep.separable && rep.rank_le_one);
        let h = Scalar::frac_1_sqrt_2();
        let bell = StateVector::new(2, vec![h, Scalar::zero(), Scalar::zero(), h]).unwrap();
        let rep = separability_decomposability_check(&bell, &xz(), &[0], &tol).unwrap();
        assert!(!rep.separable && !rep.rank_le_one);
        for round in 0..500 {
            let r = rng.random_range(2..=6);
            let cut = rng.random_range(1..r);
            let a = QubitSet::full(cut);
            let bp = BlockPartition::ordered(r, &[a, a.complement(r)]).unwrap();
            let psi = if round % 2 == 0 {
                random_state(r, &mut rng).unwrap()
            } else {
                random_product_state(&Bipartition::from_side(a, r).unwrap(), &mut rng).unwrap()
            };
            let rep = separability_decomposability_check(&psi, &bp, &[0], &tol).unwrap();
            assert!(!rep.separable || rep.rank_le_one);
            assert!(rep.consistent());
            assert_eq!(rep.separable, round % 2 == 1);
        }
    }
}
