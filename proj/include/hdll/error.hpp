/*
 * Copyright 2026 The hdll Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HDLL_ERROR_HPP
#define HDLL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hdll {

enum class ErrorCode {
  kInvalidArgument = 1,
  kIo,
  kFormat,
  kChecksum,
  kRange,
  kUnsupported,
};

// Every failure in the library surfaces as an Error; the C API maps the code
// onto hdll_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace hdll

#endif  // HDLL_ERROR_HPP
