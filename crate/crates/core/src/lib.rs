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

//! Exact and numerical tools for studying shallow quantum circuits built from
//! multiqubit C-SIGN gates: multilinear polynomials and their decompositions,
//! state vectors and separability, circuit simulation, parity refutation and
//! a randomized verification harness.

pub mod bridge;
pub mod circuit;
pub mod harness;
pub mod linalg;
pub mod numerics;
pub mod parity;
pub mod poly;
pub mod state;
