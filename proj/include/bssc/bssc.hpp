// Copyright 2026 The BSSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "bssc/clifford.hpp"
#include "bssc/codebook.hpp"
#include "bssc/decoder.hpp"
#include "bssc/errors.hpp"
#include "bssc/gf2.hpp"
#include "bssc/io.hpp"
#include "bssc/pauli.hpp"
#include "bssc/plot.hpp"
#include "bssc/rng.hpp"
#include "bssc/search.hpp"
#include "bssc/selftest.hpp"
#include "bssc/sim.hpp"
#include "bssc/symplectic.hpp"
#include "bssc/types.hpp"
