/*
 * Copyright 2026 The ncent Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include "ncent/basis.hpp"
#include "ncent/commutative.hpp"
#include "ncent/error.hpp"
#include "ncent/io.hpp"
#include "ncent/nc_bipartite.hpp"
#include "ncent/nc_kinematics.hpp"
#include "ncent/oracle.hpp"
#include "ncent/pair_blocks.hpp"
#include "ncent/parallel.hpp"
#include "ncent/report.hpp"
#include "ncent/sweeps.hpp"
#include "ncent/symplectic.hpp"
