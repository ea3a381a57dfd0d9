// Copyright 2026 The cepfilt Authors.
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

#ifndef CEPFILT_ERRORS_H_
#define CEPFILT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cepfilt {

// Raised for malformed or incomplete configuration. The CLI maps it to the
// usage exit code (2); every other exception maps to 1.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace cepfilt

#endif  // CEPFILT_ERRORS_H_
