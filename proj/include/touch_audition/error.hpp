// Copyright 2026 The Touch Audition Authors. All Rights Reserved.
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

#ifndef TOUCH_AUDITION_ERROR_HPP_
#define TOUCH_AUDITION_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace touch_audition {

// Root of every domain error raised by the library. The CLI maps these to
// exit code 1; argument problems are reported separately with exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TOUCH_AUDITION_DEFINE_ERROR(Name)   \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

TOUCH_AUDITION_DEFINE_ERROR(DecodeError);
TOUCH_AUDITION_DEFINE_ERROR(UnsupportedFormatError);
TOUCH_AUDITION_DEFINE_ERROR(TooShortError);
TOUCH_AUDITION_DEFINE_ERROR(ShapeError);
TOUCH_AUDITION_DEFINE_ERROR(ConfigError);
TOUCH_AUDITION_DEFINE_ERROR(LabelError);
TOUCH_AUDITION_DEFINE_ERROR(SplitError);
TOUCH_AUDITION_DEFINE_ERROR(DataError);
TOUCH_AUDITION_DEFINE_ERROR(DegenerateSampleError);
TOUCH_AUDITION_DEFINE_ERROR(IncompatibleCheckpointError);
TOUCH_AUDITION_DEFINE_ERROR(CorruptCheckpointError);
TOUCH_AUDITION_DEFINE_ERROR(IoError);

#undef TOUCH_AUDITION_DEFINE_ERROR

// A tensor axis is smaller than an operator's window on that axis.
class MinSizeError : public ShapeError {
 public:
  using ShapeError::ShapeError;
};

// Raised when an input is shorter than the network's minimum time extent.
class MinLengthError : public Error {
 public:
  MinLengthError(const std::string& what, long required_frames,
                 double required_seconds)
      : Error(what),
        required_frames_(required_frames),
        required_seconds_(required_seconds) {}

  long required_frames() const { return required_frames_; }
  double required_seconds() const { return required_seconds_; }

 private:
  long required_frames_;
  double required_seconds_;
};

}  // namespace touch_audition

#endif  // TOUCH_AUDITION_ERROR_HPP_
