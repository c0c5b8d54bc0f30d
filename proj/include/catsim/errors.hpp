// Copyright 2026 The catsim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace catsim {

// Base for every numerical failure raised by the library. `name()` is the
// stable kebab-case identifier the CLI prints on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what), name_(std::move(name)), module_(module) {}
  const std::string& name() const noexcept { return name_; }
  const std::string& module() const noexcept { return module_; }

 private:
  std::string name_;
  std::string module_;
};

#define CATSIM_DEFINE_ERROR(Class, id)                                   \
  class Class : public Error {                                           \
   public:                                                               \
    Class(const std::string& module, const std::string& what)            \
        : Error(id, module, what) {}                                     \
  }

CATSIM_DEFINE_ERROR(TruncationError, "truncation-insufficient");
CATSIM_DEFINE_ERROR(DimensionMismatch, "dimension-mismatch");
CATSIM_DEFINE_ERROR(ModeMismatch, "mode-mismatch");
CATSIM_DEFINE_ERROR(ZeroProbabilityEvent, "zero-probability-event");
CATSIM_DEFINE_ERROR(InvalidDistribution, "invalid-distribution");
CATSIM_DEFINE_ERROR(InvalidArgument, "invalid-argument");
CATSIM_DEFINE_ERROR(StepSizeFailure, "step-size-failure");
CATSIM_DEFINE_ERROR(MissingField, "missing-field");
CATSIM_DEFINE_ERROR(CutoffInsufficient, "cutoff-insufficient");
CATSIM_DEFINE_ERROR(TermCountOverflow, "term-count-overflow");
CATSIM_DEFINE_ERROR(NoFeasiblePoint, "no-feasible-point");
CATSIM_DEFINE_ERROR(OverflowGuard, "overflow-guard");

#undef CATSIM_DEFINE_ERROR

}  // namespace catsim
