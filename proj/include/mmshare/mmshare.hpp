// SPDX-License-Identifier: Apache-2.0
//
// mmshare: system-level Monte Carlo simulator for multi-operator mmWave networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "mmshare/config.hpp"
#include "mmshare/engine.hpp"
#include "mmshare/geometry.hpp"
#include "mmshare/io.hpp"
#include "mmshare/metrics.hpp"
#include "mmshare/mimo.hpp"
#include "mmshare/propagation.hpp"
#include "mmshare/rng.hpp"
#include "mmshare/units.hpp"
