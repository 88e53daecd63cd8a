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

//! Deterministic inputs shared by the kernel benchmarks.

use qaclab_core::circuit::{random_circuit, Circuit, RandomCircuitSpec};
use qaclab_core::numerics::{seeded_rng, Scalar};
use qaclab_core::poly::{build_family_p, BlockCoeffs, BlockSpec, MultilinearPoly, Split};
use qaclab_core::state::{random_state, StateVector};

/// A depth-`depth` random circuit on `1 + inputs` qubits with no ancillas.
pub fn circuit(inputs: usize, depth: usize, seed: u64) -> Circuit {
    let mut rng = seeded_rng(seed);
    random_circuit(&RandomCircuitSpec::new(inputs, 0, depth), &mut rng)
}

pub fn state(r: usize, seed: u64) -> StateVector {
    random_state(r, &mut seeded_rng(seed)).expect("benchmark sizes fit the register cap")
}

/// A four-block family polynomial with `4 + 2 + 2 + 4 = 12` variables.
pub fn family_poly(seed: u64) -> MultilinearPoly {
    let mut rng = seeded_rng(seed);
    let spec = BlockSpec::four_blocks(
        Split::new(1, 1),
        Split::new(1, 0),
        Split::new(1, 0),
        Split::new(2, 0),
    );
    let (c1, c2) = spec.c_dims();
    let (d1, d2) = spec.d_dims();
    let c = BlockCoeffs::random_gaussian(&mut rng, c1, c2);
    let d = BlockCoeffs::random_gaussian(&mut rng, d1, d2);
    build_family_p(&spec, &c, &d, Scalar::int(2)).expect("valid spec and nonzero alpha")
}
