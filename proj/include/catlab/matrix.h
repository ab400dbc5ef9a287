// Copyright 2026 The Catlab Authors
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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace catlab {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/// Largest Hilbert space dimension any object may have.
inline constexpr std::size_t kMaxDim = 16;
/// Normalization, Hermiticity, idempotence and unitarity tolerance.
inline constexpr double kTolerance = 1e-10;
/// Smallest eigenvalue a density matrix may have.
inline constexpr double kPsdFloor = -1e-9;
/// Amplitudes (and branch probabilities) below this count as zero.
inline constexpr double kNegligible = 1e-12;

/// Dense row-major square complex matrix.
class Matrix {
   public:
    Matrix() = default;
    explicit Matrix(std::size_t dim);
    Matrix(std::size_t dim, std::vector<Complex> row_major);

    static Matrix identity(std::size_t dim);
    /// |ket><bra|
    static Matrix outer(std::span<const Complex> ket, std::span<const Complex> bra);
    static Matrix kron(const Matrix &a, const Matrix &b);

    std::size_t dim() const {
        return dim_;
    }
    Complex &operator()(std::size_t row, std::size_t col) {
        return data_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }
    std::span<const Complex> data() const {
        return data_;
    }

    Matrix adjoint() const;
    Complex trace() const;
    Amplitudes apply(std::span<const Complex> v) const;

    Matrix operator*(const Matrix &rhs) const;
    Matrix operator+(const Matrix &rhs) const;
    Matrix operator-(const Matrix &rhs) const;
    Matrix operator*(Complex scale) const;
    Matrix &operator+=(const Matrix &rhs);

    /// Entrywise max |a_ij - b_ij|.
    double max_abs_diff(const Matrix &rhs) const;
    bool is_hermitian(double tol = kTolerance) const;
    bool all_finite() const;

    bool operator==(const Matrix &rhs) const = default;

   private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// <a|b>, conjugating the left argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm_squared(std::span<const Complex> v);
Amplitudes kron(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace catlab
