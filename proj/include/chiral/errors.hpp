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

#ifndef CHIRAL_ERRORS_HPP_
#define CHIRAL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace chiral {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A waveguide has zero total coupling, so its directionality is undefined.
class DegenerateCouplingError : public Error {
   public:
    using Error::Error;
};

/// Gamma* = 0 makes the Purcell factor infinite.
class InfinitePurcellError : public Error {
   public:
    using Error::Error;
};

/// Parameters that do not describe a physical device (negative rates, |D| > 1, ...).
class InvalidDesignError : public Error {
   public:
    using Error::Error;
};

/// The rectification condition t(omega_eg) = 0 cannot be met (P_F below 1/D_d).
class InfeasibleDesignError : public Error {
   public:
    using Error::Error;
};

class ZeroDetuningError : public Error {
   public:
    using Error::Error;
};

class SingularSystemError : public Error {
   public:
    using Error::Error;
};

/// Integration window too short compared to the correlation length v_g / gamma.
class WindowTooSmallError : public Error {
   public:
    using Error::Error;
};

class ConfigError : public Error {
   public:
    using Error::Error;
};

}  // namespace chiral

#endif  // CHIRAL_ERRORS_HPP_
