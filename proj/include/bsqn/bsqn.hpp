// Copyright 2026 The BSQN Authors
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

#include "bsqn/bell_sampler.hpp"
#include "bsqn/bitvec.hpp"
#include "bsqn/estimators.hpp"
#include "bsqn/graph.hpp"
#include "bsqn/harness/config.hpp"
#include "bsqn/harness/estimate.hpp"
#include "bsqn/harness/oracle_check.hpp"
#include "bsqn/harness/runner.hpp"
#include "bsqn/noise.hpp"
#include "bsqn/oracle.hpp"
#include "bsqn/rng.hpp"
#include "bsqn/stats.hpp"
#include "bsqn/tableau.hpp"
#include "bsqn/transforms.hpp"
