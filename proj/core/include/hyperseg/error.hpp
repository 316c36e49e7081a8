// Copyright 2026 The hyperseg Authors
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

namespace hyperseg {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable, missing, malformed or truncated files.
class IoError : public Error {
 public:
  using Error::Error;
};

// Dimension, band-count or dtype disagreement between inputs.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input that is well-formed but cannot be processed (all-zero cube,
// empty foreground, non-finite values).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Parameter outside its documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant. Seeing one of these is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperseg
