// Copyright 2026 The benders-dx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BDX_COMMON_ERRORS_HPP_
#define BDX_COMMON_ERRORS_HPP_

#include <limits>
#include <stdexcept>
#include <string>

namespace bdx {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BDX_DEFINE_ERROR(Name)          \
  class Name : public Error {           \
   public:                              \
    explicit Name(const std::string& w) \
        : Error(#Name ": " + w) {}      \
  }

// The simplex basis could not be (re)factorized or the iteration budget ran
// out. Callers may perturb the model or abort.
BDX_DEFINE_ERROR(NumericalFailure);
BDX_DEFINE_ERROR(UnknownNode);
BDX_DEFINE_ERROR(InstanceShape);
BDX_DEFINE_ERROR(BadShape);
BDX_DEFINE_ERROR(BadNorm);
BDX_DEFINE_ERROR(DualEmpty);
BDX_DEFINE_ERROR(TooLarge);
BDX_DEFINE_ERROR(NotBinary);
BDX_DEFINE_ERROR(Disconnected);
BDX_DEFINE_ERROR(ConstructionFailed);
BDX_DEFINE_ERROR(UsageError);
// The instance has no feasible point.
BDX_DEFINE_ERROR(Infeasible);
BDX_DEFINE_ERROR(IterLimit);

#undef BDX_DEFINE_ERROR

}  // namespace bdx

#endif  // BDX_COMMON_ERRORS_HPP_
