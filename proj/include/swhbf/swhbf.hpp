// SPDX-License-Identifier: Apache-2.0
//
// swhbf - switch-based hybrid beamforming for wideband multi-carrier receivers
// Copyright (C) 2026 The swhbf authors
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

#ifndef SWHBF_SWHBF_HPP
#define SWHBF_SWHBF_HPP

#include "numkernel.hpp"
#include "channel.hpp"
#include "txbeam.hpp"
#include "rxbeam.hpp"
#include "solvers.hpp"
#include "powermodel.hpp"
#include "config.hpp"
#include "experiment.hpp"
#include "report.hpp"

#endif
