// Copyright 2026 The spanlb Authors
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

#include "spanlb/avgfree.hpp"
#include "spanlb/base_graph.hpp"
#include "spanlb/digest.hpp"
#include "spanlb/errors.hpp"
#include "spanlb/generators.hpp"
#include "spanlb/graph.hpp"
#include "spanlb/io.hpp"
#include "spanlb/labels.hpp"
#include "spanlb/obstacle_product.hpp"
#include "spanlb/pairs.hpp"
#include "spanlb/parallel.hpp"
#include "spanlb/params.hpp"
#include "spanlb/path_compression.hpp"
#include "spanlb/pipeline.hpp"
#include "spanlb/rng.hpp"
#include "spanlb/spanners.hpp"
#include "spanlb/verification.hpp"
