// Copyright 2026 The tbounds Authors.
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

#ifndef TBOUNDS_TBOUNDS_HPP
#define TBOUNDS_TBOUNDS_HPP

#include "tbounds/bounds.hpp"
#include "tbounds/errors.hpp"
#include "tbounds/harness.hpp"
#include "tbounds/kernel.hpp"
#include "tbounds/measures.hpp"
#include "tbounds/optimize.hpp"
#include "tbounds/random.hpp"
#include "tbounds/state_io.hpp"
#include "tbounds/states.hpp"

#endif  // TBOUNDS_TBOUNDS_HPP
