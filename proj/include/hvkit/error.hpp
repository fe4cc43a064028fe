// Copyright 2026 The hvkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types shared by every hvkit module.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace hvkit {

/// Input rejected by a precondition (dimension mismatch, unknown outcome,
/// out-of-scope overlap, malformed state string, ...).
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A construction that should always succeed failed to meet its own
/// post-conditions. The message carries the residuals.
class InternalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool cond, const std::string &what) {
    if (!cond) {
        throw InvalidInput(what);
    }
}
} // namespace detail

} // namespace hvkit
