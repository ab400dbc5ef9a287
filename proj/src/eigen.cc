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

#include "catlab/eigen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace catlab {

namespace {

double off_diagonal_norm(const Matrix &a) {
    double acc = 0;
    for (std::size_t r = 0; r < a.dim(); r++) {
        for (std::size_t c = 0; c < a.dim(); c++) {
            if (r != c) {
                acc += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(acc);
}

double frobenius_norm(const Matrix &a) {
    return std::sqrt(norm_squared(a.data()));
}

// Zero a(p,q) with J = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on
// columns p and q, then A <- J^H A J and V <- V J.
void rotate(Matrix &a, Matrix &v, std::size_t p, std::size_t q) {
    Complex apq = a(p, q);
    double r = std::abs(apq);
    if (r == 0) {
        return;
    }
    Complex phase = apq / r;
    double theta = (a(q, q).real() - a(p, p).real()) / (2 * r);
    double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
    double c = 1 / std::sqrt(t * t + 1);
    double s = t * c;

    Complex jpp = c;
    Complex jpq = s;
    Complex jqp = -s * std::conj(phase);
    Complex jqq = c * std::conj(phase);

    std::size_t n = a.dim();
    for (std::size_t k = 0; k < n; k++) {
        Complex akp = a(k, p);
        Complex akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
        Complex vkp = v(k, p);
        Complex vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
    for (std::size_t k = 0; k < n; k++) {
        Complex apk = a(p, k);
        Complex aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0;
    a(q, p) = 0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

}  // namespace

HermitianEigen hermitian_eigen(const Matrix &m) {
    if (!m.is_hermitian(1e-8)) {
        throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");
    }
    std::size_t n = m.dim();
    Matrix a = m;
    Matrix v = Matrix::identity(n);
    double scale = std::max(frobenius_norm(m), 1e-300);

    for (int sweep = 0; sweep < 64; sweep++) {
        if (off_diagonal_norm(a) <= 1e-15 * scale) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                if (std::abs(a(p, q)) > 1e-300) {
                    rotate(a, v, p, q);
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEigen result{std::vector<double>(n), Matrix(n)};
    for (std::size_t k = 0; k < n; k++) {
        result.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; r++) {
            result.vectors(r, k) = v(r, order[k]);
        }
    }
    return result;
}

std::vector<double> hermitian_eigenvalues(const Matrix &m) {
    return hermitian_eigen(m).values;
}

std::size_t numerical_rank(const Matrix &hermitian, double threshold) {
    auto values = hermitian_eigenvalues(hermitian);
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [&](double x) {
        return x > threshold;
    }));
}

}  // namespace catlab
