// Copyright 2026 the biskm authors
// SPDX-License-Identifier: Apache-2.0
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
//
// Umbrella header pulling in the whole public API.

#pragma once

#include "biskm/bits.hpp"
#include "biskm/bitserial.hpp"
#include "biskm/blobs.hpp"
#include "biskm/csv.hpp"
#include "biskm/errors.hpp"
#include "biskm/fixedpoint.hpp"
#include "biskm/kmeans.hpp"
#include "biskm/parallel.hpp"
#include "biskm/perfmodel.hpp"
#include "biskm/prng.hpp"
#include "biskm/report.hpp"
#include "biskm/sweep.hpp"
#include "biskm/version.hpp"
#include "biskm/weave.hpp"
#include "biskm/weave_io.hpp"
