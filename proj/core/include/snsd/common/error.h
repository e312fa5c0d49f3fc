// Copyright 2026  The snsd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SNSD_COMMON_ERROR_H_
#define SNSD_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace snsd {

// Broad failure classes. The CLI maps these onto its exit codes.
enum class ErrorKind {
  kInvalidArgument,  // caller violated a precondition
  kInputData,        // input file or table is missing, malformed or unusable
  kIo,               // filesystem / runtime failure while producing output
  kState,            // operation not allowed in the current state
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string &what)
      : Error(ErrorKind::kInvalidArgument, what) {}
};

class InputDataError : public Error {
 public:
  explicit InputDataError(const std::string &what)
      : Error(ErrorKind::kInputData, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &what) : Error(ErrorKind::kIo, what) {}
};

class StateError : public Error {
 public:
  explicit StateError(const std::string &what)
      : Error(ErrorKind::kState, what) {}
};

class FileNotFoundError : public InputDataError {
 public:
  explicit FileNotFoundError(const std::string &path)
      : InputDataError("file not found: " + path) {}
};

// Audio-specific input failures.
class MalformedWavError : public InputDataError {
 public:
  explicit MalformedWavError(const std::string &what)
      : InputDataError("malformed WAV: " + what) {}
};

class UnsupportedCodecError : public InputDataError {
 public:
  explicit UnsupportedCodecError(const std::string &what)
      : InputDataError("unsupported WAV encoding: " + what) {}
};

class SilentClipError : public InputDataError {
 public:
  explicit SilentClipError(const std::string &what)
      : InputDataError("silent clip: " + what) {}
};

class SampleRateMismatchError : public InvalidArgumentError {
 public:
  explicit SampleRateMismatchError(const std::string &what)
      : InvalidArgumentError("sample rate mismatch: " + what) {}
};

class NonFiniteSampleError : public InvalidArgumentError {
 public:
  explicit NonFiniteSampleError(const std::string &what)
      : InvalidArgumentError("non-finite sample: " + what) {}
};

const char *ErrorKindName(ErrorKind kind);

}  // namespace snsd

#endif  // SNSD_COMMON_ERROR_H_
