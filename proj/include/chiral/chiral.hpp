// Copyright 2026 The Chiral Devices Authors
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

#ifndef CHIRAL_CHIRAL_HPP_
#define CHIRAL_CHIRAL_HPP_

#include "chiral/checks.hpp"
#include "chiral/config.hpp"
#include "chiral/errors.hpp"
#include "chiral/finite_window.hpp"
#include "chiral/oracle.hpp"
#include "chiral/params.hpp"
#include "chiral/scattering.hpp"
#include "chiral/sweep.hpp"
#include "chiral/twophoton.hpp"

#endif  // CHIRAL_CHIRAL_HPP_
