// Copyright 2026 The Chronobell Authors
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

#ifndef CHRONOBELL_ERRORS_HPP
#define CHRONOBELL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chronobell {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

#define CHRONOBELL_DEFINE_ERROR(Name)   \
    class Name : public Error {         \
       public:                          \
        using Error::Error;             \
    };

CHRONOBELL_DEFINE_ERROR(InvalidStateError)
CHRONOBELL_DEFINE_ERROR(InvalidSettingError)
CHRONOBELL_DEFINE_ERROR(ImpossibleOutcomeError)
CHRONOBELL_DEFINE_ERROR(DomainError)
CHRONOBELL_DEFINE_ERROR(ParameterError)
CHRONOBELL_DEFINE_ERROR(EmptyFileError)
CHRONOBELL_DEFINE_ERROR(FileFormatError)
CHRONOBELL_DEFINE_ERROR(NotReducibleError)
CHRONOBELL_DEFINE_ERROR(ValidationError)
CHRONOBELL_DEFINE_ERROR(SearchSpaceError)
CHRONOBELL_DEFINE_ERROR(ArityError)
CHRONOBELL_DEFINE_ERROR(ImpossibleFlashError)

/// Raised when a lambda stream runs past its last word. Never wraps around.
CHRONOBELL_DEFINE_ERROR(StreamExhaustedError)
/// Raised when a split index addresses words past the end of the source.
class CapacityError : public StreamExhaustedError {
   public:
    using StreamExhaustedError::StreamExhaustedError;
};

#undef CHRONOBELL_DEFINE_ERROR

}  // namespace chronobell

#endif
