// Copyright 2026 The qrdet Authors
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

namespace qrdet {

// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A statement was invoked outside its residue/symbol hypotheses. `hypothesis`
// names the violated condition.
class HypothesisViolation : public InvalidArgument {
public:
    explicit HypothesisViolation(std::string hypothesis)
        : InvalidArgument("hypothesis violated: " + hypothesis), hypothesis_(std::move(hypothesis)) {}
    const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
    std::string hypothesis_;
};

// Work would exceed an enforced size or cost limit.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

// Numeric result could not be certified at the working precision.
class PrecisionFailure : public Error {
public:
    using Error::Error;
};

// Two independent routes disagreed; indicates a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

class OutOfScope : public Error {
public:
    using Error::Error;
};

}  // namespace qrdet
