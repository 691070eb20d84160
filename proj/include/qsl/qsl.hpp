// Copyright 2026 The qsl-sim Authors
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

#ifndef QSL_QSL_HPP
#define QSL_QSL_HPP

#include "qsl/adversary.hpp"
#include "qsl/bounds.hpp"
#include "qsl/cli.hpp"
#include "qsl/experiment.hpp"
#include "qsl/learning.hpp"
#include "qsl/no_broadcast.hpp"
#include "qsl/oracle.hpp"
#include "qsl/protocol.hpp"
#include "qsl/qcore.hpp"
#include "qsl/random.hpp"
#include "qsl/report.hpp"
#include "qsl/round.hpp"
#include "qsl/samples.hpp"

#endif
