// Copyright 2026 The Hybrid Auction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "hybrid_auction/auction.hpp"
#include "hybrid_auction/csv.hpp"
#include "hybrid_auction/experiments.hpp"
#include "hybrid_auction/indices.hpp"
#include "hybrid_auction/priors.hpp"
#include "hybrid_auction/quadrature.hpp"
#include "hybrid_auction/scenario.hpp"
#include "hybrid_auction/sim.hpp"
#include "hybrid_auction/stats.hpp"
#include "hybrid_auction/strategies.hpp"
