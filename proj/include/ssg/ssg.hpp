// Copyright 2026 The SSG Solver Authors
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

#include "ssg/control.hpp"
#include "ssg/error.hpp"
#include "ssg/fixtures.hpp"
#include "ssg/game.hpp"
#include "ssg/generate.hpp"
#include "ssg/io.hpp"
#include "ssg/linear.hpp"
#include "ssg/ludwig.hpp"
#include "ssg/oracle.hpp"
#include "ssg/orders.hpp"
#include "ssg/pivot_solver.hpp"
#include "ssg/rational.hpp"
#include "ssg/transforms.hpp"
#include "ssg/valuation.hpp"
