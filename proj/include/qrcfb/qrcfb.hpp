// Copyright 2026 The qrcfb Authors
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

#include "qrcfb/config.hpp"
#include "qrcfb/errors.hpp"
#include "qrcfb/feature_series.hpp"
#include "qrcfb/harness.hpp"
#include "qrcfb/io.hpp"
#include "qrcfb/metrics.hpp"
#include "qrcfb/oracle.hpp"
#include "qrcfb/parallel.hpp"
#include "qrcfb/qsim.hpp"
#include "qrcfb/readout.hpp"
#include "qrcfb/reservoirs.hpp"
#include "qrcfb/rng.hpp"
#include "qrcfb/tasks.hpp"
