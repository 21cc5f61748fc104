// Copyright 2026 The Lumen Vision Authors
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

#ifndef LUMEN_LUMEN_HPP
#define LUMEN_LUMEN_HPP

#include "lumen/cascade.hpp"
#include "lumen/detector.hpp"
#include "lumen/eigenface.hpp"
#include "lumen/error.hpp"
#include "lumen/gaussian.hpp"
#include "lumen/image.hpp"
#include "lumen/integral.hpp"
#include "lumen/linalg.hpp"
#include "lumen/pnm.hpp"
#include "lumen/tracker.hpp"

#endif  // LUMEN_LUMEN_HPP
