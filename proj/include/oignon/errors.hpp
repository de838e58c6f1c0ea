// Copyright 2026 The Oignon Authors
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

namespace oignon {

/// Base class for every error the library reports. Precondition violations
/// use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested work or author does not exist upstream.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Network or IO failure that persisted through every retry.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// HTTP 429 responses kept arriving after the backoff schedule ran out.
class RateLimitedError : public TransportError {
 public:
  using TransportError::TransportError;
};

class SnapshotError : public Error {
 public:
  enum class Kind { Io, Empty };

  SnapshotError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Layout and graph passed to an exporter describe different node sets.
class InconsistentInputsError : public Error {
 public:
  using Error::Error;
};

/// A style selection names a node that is not part of the graph.
class UnknownSelectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace oignon
