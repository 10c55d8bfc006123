// Copyright 2026 The hcstruct Authors.
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

#include "hcstruct/approx.hpp"
#include "hcstruct/brute.hpp"
#include "hcstruct/cost.hpp"
#include "hcstruct/detect.hpp"
#include "hcstruct/error.hpp"
#include "hcstruct/graph.hpp"
#include "hcstruct/newick.hpp"
#include "hcstruct/random_model.hpp"
#include "hcstruct/rational.hpp"
#include "hcstruct/tree.hpp"
