// Copyright 2026 The qedge Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qedge {

/// Failure categories. The C API maps each one onto a distinct error code and
/// the CLI onto its exit status.
enum class ErrorKind {
    kParameter,   ///< precondition on an argument violated
    kParse,       ///< malformed input document
    kValidation,  ///< well-formed document with out-of-domain data
    kCapacity,    ///< problem too large for the chosen method
    kSolver,      ///< numerical or internal failure inside a solver
    kIo,          ///< file could not be read or written
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_parameter(const std::string& msg) {
    throw Error(ErrorKind::kParameter, msg);
}
[[noreturn]] inline void throw_capacity(const std::string& msg) {
    throw Error(ErrorKind::kCapacity, msg);
}

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Default absolute tolerance for feasibility checks.
inline constexpr double kFeasibilityTol = 1e-9;

}  // namespace qedge
