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

#include "catlab/matrix.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace catlab {

Matrix::Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
}

Matrix::Matrix(std::size_t dim, std::vector<Complex> row_major) : dim_(dim), data_(std::move(row_major)) {
    if (data_.size() != dim * dim) {
        throw std::invalid_argument("Matrix: expected dim*dim entries");
    }
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t k = 0; k < dim; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

Matrix Matrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    assert(ket.size() == bra.size());
    Matrix m(ket.size());
    for (std::size_t r = 0; r < ket.size(); r++) {
        for (std::size_t c = 0; c < bra.size(); c++) {
            m(r, c) = ket[r] * std::conj(bra[c]);
        }
    }
    return m;
}

Matrix Matrix::kron(const Matrix &a, const Matrix &b) {
    std::size_t n = a.dim_ * b.dim_;
    Matrix m(n);
    for (std::size_t ar = 0; ar < a.dim_; ar++) {
        for (std::size_t ac = 0; ac < a.dim_; ac++) {
            Complex s = a(ar, ac);
            for (std::size_t br = 0; br < b.dim_; br++) {
                for (std::size_t bc = 0; bc < b.dim_; bc++) {
                    m(ar * b.dim_ + br, ac * b.dim_ + bc) = s * b(br, bc);
                }
            }
        }
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(dim_);
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t c = 0; c < dim_; c++) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

Complex Matrix::trace() const {
    Complex t = 0;
    for (std::size_t k = 0; k < dim_; k++) {
        t += (*this)(k, k);
    }
    return t;
}

Amplitudes Matrix::apply(std::span<const Complex> v) const {
    assert(v.size() == dim_);
    Amplitudes out(dim_);
    for (std::size_t r = 0; r < dim_; r++) {
        Complex acc = 0;
        for (std::size_t c = 0; c < dim_; c++) {
            acc += (*this)(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

Matrix Matrix::operator*(const Matrix &rhs) const {
    assert(dim_ == rhs.dim_);
    Matrix m(dim_);
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t k = 0; k < dim_; k++) {
            Complex a = (*this)(r, k);
            if (a == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < dim_; c++) {
                m(r, c) += a * rhs(k, c);
            }
        }
    }
    return m;
}

Matrix Matrix::operator+(const Matrix &rhs) const {
    Matrix m = *this;
    m += rhs;
    return m;
}

Matrix &Matrix::operator+=(const Matrix &rhs) {
    assert(dim_ == rhs.dim_);
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] += rhs.data_[k];
    }
    return *this;
}

Matrix Matrix::operator-(const Matrix &rhs) const {
    assert(dim_ == rhs.dim_);
    Matrix m = *this;
    for (std::size_t k = 0; k < data_.size(); k++) {
        m.data_[k] -= rhs.data_[k];
    }
    return m;
}

Matrix Matrix::operator*(Complex scale) const {
    Matrix m = *this;
    for (auto &x : m.data_) {
        x *= scale;
    }
    return m;
}

double Matrix::max_abs_diff(const Matrix &rhs) const {
    assert(dim_ == rhs.dim_);
    double worst = 0;
    for (std::size_t k = 0; k < data_.size(); k++) {
        worst = std::max(worst, std::abs(data_[k] - rhs.data_[k]));
    }
    return worst;
}

bool Matrix::is_hermitian(double tol) const {
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t c = r; c < dim_; c++) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](Complex z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    assert(a.size() == b.size());
    Complex acc = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        acc += std::conj(a[k]) * b[k];
    }
    return acc;
}

double norm_squared(std::span<const Complex> v) {
    double acc = 0;
    for (auto z : v) {
        acc += std::norm(z);
    }
    return acc;
}

Amplitudes kron(std::span<const Complex> a, std::span<const Complex> b) {
    Amplitudes out;
    out.reserve(a.size() * b.size());
    for (auto x : a) {
        for (auto y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

}  // namespace catlab
