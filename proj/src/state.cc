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

#include "catlab/state.h"

#include <algorithm>
#include <cmath>

#include "catlab/complex_text.h"
#include "catlab/eigen.h"
#include "catlab/error.h"

namespace catlab {

namespace {

void require_same_space(const HilbertSpace &a, const HilbertSpace &b, std::string_view what) {
    if (!(a == b)) {
        throw CatlabError(ErrorCode::DimensionMismatch, std::string(what) + ": operands live in different spaces");
    }
}

void require_matrix_dim(const HilbertSpace &space, const Matrix &mat, std::string_view what) {
    if (mat.dim() != space.dim()) {
        throw CatlabError(ErrorCode::DimensionMismatch,
                          std::string(what) + ": matrix is " + std::to_string(mat.dim()) + "x" +
                              std::to_string(mat.dim()) + " but space has dimension " +
                              std::to_string(space.dim()));
    }
}

bool all_finite(std::span<const Complex> v) {
    return std::all_of(v.begin(), v.end(), [](Complex z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

}  // namespace

StateVector StateVector::from_normalized(HilbertSpace space, Amplitudes amps) {
    if (amps.size() != space.dim()) {
        throw CatlabError(ErrorCode::DimensionMismatch, "state has " + std::to_string(amps.size()) +
                                                            " amplitudes but space has dimension " +
                                                            std::to_string(space.dim()));
    }
    if (!all_finite(amps)) {
        throw CatlabError(ErrorCode::InvalidState, "non-finite amplitude");
    }
    double n2 = norm_squared(amps);
    if (std::abs(n2 - 1) >= kTolerance) {
        throw CatlabError(ErrorCode::InvalidState, "state is not normalized (norm^2 = " + format_double(n2) + ")");
    }
    return StateVector(std::move(space), std::move(amps));
}

DensityMatrix DensityMatrix::from_matrix(HilbertSpace space, Matrix mat) {
    require_matrix_dim(space, mat, "density matrix");
    if (!mat.all_finite()) {
        throw CatlabError(ErrorCode::InvalidState, "density matrix has non-finite entries");
    }
    if (!mat.is_hermitian(kTolerance)) {
        throw CatlabError(ErrorCode::InvalidState, "density matrix is not Hermitian");
    }
    Complex tr = mat.trace();
    if (std::abs(tr.real() - 1) >= kTolerance || std::abs(tr.imag()) >= kTolerance) {
        throw CatlabError(ErrorCode::InvalidState, "density matrix trace is " + format_complex(tr));
    }
    auto values = hermitian_eigenvalues(mat);
    if (values.front() < kPsdFloor) {
        throw CatlabError(ErrorCode::InvalidState,
                          "density matrix has negative eigenvalue " + format_double(values.front()));
    }
    return DensityMatrix(std::move(space), std::move(mat));
}

DensityMatrix DensityMatrix::pure(const StateVector &psi) {
    return DensityMatrix(psi.space(), Matrix::outer(psi.amps(), psi.amps()));
}

std::string_view operator_kind_name(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Projector:
            return "projector";
        case OperatorKind::Unitary:
            return "unitary";
        case OperatorKind::General:
            return "general";
    }
    return "general";
}

Operator Operator::projector(HilbertSpace space, Matrix mat) {
    require_matrix_dim(space, mat, "projector");
    if (!mat.all_finite()) {
        throw CatlabError(ErrorCode::InvalidOperator, "projector has non-finite entries");
    }
    if (!mat.is_hermitian(kTolerance)) {
        throw CatlabError(ErrorCode::InvalidOperator, "projector is not Hermitian");
    }
    if ((mat * mat).max_abs_diff(mat) >= kTolerance) {
        throw CatlabError(ErrorCode::InvalidOperator, "projector is not idempotent");
    }
    return Operator(std::move(space), std::move(mat), OperatorKind::Projector);
}

Operator Operator::unitary(HilbertSpace space, Matrix mat) {
    require_matrix_dim(space, mat, "unitary");
    if (!mat.all_finite()) {
        throw CatlabError(ErrorCode::InvalidOperator, "unitary has non-finite entries");
    }
    if ((mat.adjoint() * mat).max_abs_diff(Matrix::identity(mat.dim())) >= kTolerance) {
        throw CatlabError(ErrorCode::InvalidOperator, "operator is not unitary");
    }
    return Operator(std::move(space), std::move(mat), OperatorKind::Unitary);
}

Operator Operator::general(HilbertSpace space, Matrix mat) {
    require_matrix_dim(space, mat, "operator");
    return Operator(std::move(space), std::move(mat), OperatorKind::General);
}

const HilbertSpace &space_of(const QuantumState &state) {
    return std::visit([](const auto &s) -> const HilbertSpace & { return s.space(); }, state);
}

StateVector make_state(const HilbertSpace &space, std::span<const Complex> raw_amps) {
    if (raw_amps.size() != space.dim()) {
        throw CatlabError(ErrorCode::DimensionMismatch, "got " + std::to_string(raw_amps.size()) +
                                                            " amplitudes for a space of dimension " +
                                                            std::to_string(space.dim()));
    }
    if (!all_finite(raw_amps)) {
        throw CatlabError(ErrorCode::InvalidState, "non-finite amplitude");
    }
    double n2 = norm_squared(raw_amps);
    if (n2 < 1e-20) {
        throw CatlabError(ErrorCode::ZeroVector, "cannot normalize a zero vector");
    }
    double norm = std::sqrt(n2);
    Amplitudes amps(raw_amps.begin(), raw_amps.end());
    if (n2 != 1.0) {
        for (auto &a : amps) {
            a /= norm;
        }
    }
    return StateVector(space, std::move(amps));
}

StateVector basis_state(const HilbertSpace &space, std::string_view label) {
    Amplitudes amps(space.dim());
    amps[space.index_of(label)] = 1.0;
    return StateVector::from_normalized(space, std::move(amps));
}

DensityMatrix make_mixture(std::span<const WeightedState> parts) {
    if (parts.empty()) {
        throw CatlabError(ErrorCode::BadWeights, "mixture has no components");
    }
    const HilbertSpace &space = parts.front().state.space();
    double total = 0;
    Matrix acc(space.dim());
    for (const auto &part : parts) {
        if (!(part.weight >= 0) || !std::isfinite(part.weight)) {
            throw CatlabError(ErrorCode::BadWeights, "negative or non-finite weight " + format_double(part.weight));
        }
        require_same_space(space, part.state.space(), "make_mixture");
        total += part.weight;
        acc += Matrix::outer(part.state.amps(), part.state.amps()) * part.weight;
    }
    if (std::abs(total - 1) >= kTolerance) {
        throw CatlabError(ErrorCode::BadWeights, "weights sum to " + format_double(total) + ", not 1");
    }
    return DensityMatrix::from_matrix(space, std::move(acc));
}

StateVector tensor(const StateVector &left, const StateVector &right) {
    auto space = HilbertSpace::product(left.space(), right.space());
    return StateVector::from_normalized(std::move(space), kron(left.amps(), right.amps()));
}

DensityMatrix tensor(const DensityMatrix &left, const DensityMatrix &right) {
    auto space = HilbertSpace::product(left.space(), right.space());
    return DensityMatrix::from_matrix(std::move(space), Matrix::kron(left.matrix(), right.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix &dm, std::size_t keep_factor) {
    const auto &space = dm.space();
    if (!space.is_product()) {
        throw CatlabError(ErrorCode::NotProductSpace, "space has no tensor factorization");
    }
    auto dims = space.factor_dims();
    if (keep_factor >= dims.size()) {
        throw CatlabError(ErrorCode::NotProductSpace, "factor index " + std::to_string(keep_factor) +
                                                          " out of range (" + std::to_string(dims.size()) +
                                                          " factors)");
    }
    // Mixed-radix digits, most significant factor first.
    auto digits = [&](std::size_t index) {
        std::vector<std::size_t> out(dims.size());
        for (std::size_t f = dims.size(); f-- > 0;) {
            out[f] = index % dims[f];
            index /= dims[f];
        }
        return out;
    };
    std::size_t n = space.dim();
    std::vector<std::vector<std::size_t>> table(n);
    for (std::size_t k = 0; k < n; k++) {
        table[k] = digits(k);
    }
    Matrix reduced(dims[keep_factor]);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            bool traced_equal = true;
            for (std::size_t f = 0; f < dims.size(); f++) {
                if (f != keep_factor && table[r][f] != table[c][f]) {
                    traced_equal = false;
                    break;
                }
            }
            if (traced_equal) {
                reduced(table[r][keep_factor], table[c][keep_factor]) += dm.matrix()(r, c);
            }
        }
    }
    return DensityMatrix::from_matrix(HilbertSpace(space.factors()[keep_factor]), std::move(reduced));
}

Operator projector_from_state(const StateVector &psi) {
    return Operator::projector(psi.space(), Matrix::outer(psi.amps(), psi.amps()));
}

StateVector orthogonal_in_span(const StateVector &psi, const StateVector &basis0, const StateVector &basis1) {
    require_same_space(psi.space(), basis0.space(), "orthogonal_in_span");
    require_same_space(psi.space(), basis1.space(), "orthogonal_in_span");
    if (std::abs(inner(basis0.amps(), basis1.amps())) > 1e-9) {
        throw CatlabError(ErrorCode::NotOrthogonal, "span basis vectors are not orthogonal");
    }
    Complex c0 = inner(basis0.amps(), psi.amps());
    Complex c1 = inner(basis1.amps(), psi.amps());
    Amplitudes residual = psi.amps();
    for (std::size_t k = 0; k < residual.size(); k++) {
        residual[k] -= c0 * basis0[k] + c1 * basis1[k];
    }
    if (std::sqrt(norm_squared(residual)) > 1e-9) {
        throw CatlabError(ErrorCode::NotInSpan, "state is not in the span of the given pair");
    }
    Amplitudes perp(psi.dim());
    for (std::size_t k = 0; k < perp.size(); k++) {
        perp[k] = -std::conj(c1) * basis0[k] + std::conj(c0) * basis1[k];
    }
    return canonicalize_phase(make_state(psi.space(), perp));
}

double overlap_probability(const QuantumState &x, const Operator &projector) {
    if (projector.kind() != OperatorKind::Projector) {
        throw CatlabError(ErrorCode::InvalidOperator, "overlap_probability needs a projector");
    }
    require_same_space(space_of(x), projector.space(), "overlap_probability");
    double p = 0;
    if (const auto *psi = std::get_if<StateVector>(&x)) {
        p = inner(psi->amps(), projector.matrix().apply(psi->amps())).real();
    } else {
        p = (projector.matrix() * std::get<DensityMatrix>(x).matrix()).trace().real();
    }
    return std::clamp(p, 0.0, 1.0);
}

double fidelity(const StateVector &a, const StateVector &b) {
    require_same_space(a.space(), b.space(), "fidelity");
    return std::norm(inner(a.amps(), b.amps()));
}

double fidelity(const QuantumState &x, const StateVector &target) {
    if (const auto *psi = std::get_if<StateVector>(&x)) {
        return fidelity(*psi, target);
    }
    const auto &rho = std::get<DensityMatrix>(x);
    require_same_space(rho.space(), target.space(), "fidelity");
    return inner(target.amps(), rho.matrix().apply(target.amps())).real();
}

StateVector canonicalize_phase(const StateVector &psi) {
    Amplitudes amps = psi.amps();
    for (std::size_t k = 0; k < amps.size(); k++) {
        double mag = std::abs(amps[k]);
        if (mag > kNegligible) {
            Complex rot = std::conj(amps[k]) / mag;
            for (auto &a : amps) {
                a *= rot;
            }
            amps[k] = mag;
            break;
        }
    }
    return StateVector::from_normalized(psi.space(), std::move(amps));
}

QuantumState apply_unitary(const Operator &unitary, const QuantumState &x) {
    if (unitary.kind() != OperatorKind::Unitary) {
        throw CatlabError(ErrorCode::InvalidOperator, "apply_unitary needs a unitary operator");
    }
    require_same_space(space_of(x), unitary.space(), "apply_unitary");
    if (const auto *psi = std::get_if<StateVector>(&x)) {
        // Renormalize to stop rounding drift across long protocols.
        return make_state(psi->space(), unitary.matrix().apply(psi->amps()));
    }
    const auto &rho = std::get<DensityMatrix>(x);
    Matrix out = unitary.matrix() * rho.matrix() * unitary.matrix().adjoint();
    return DensityMatrix::from_matrix(rho.space(), std::move(out));
}

StateKey state_key(const QuantumState &x, double grid) {
    StateKey key;
    auto push = [&](Complex z) {
        key.push_back(std::llround(z.real() / grid));
        key.push_back(std::llround(z.imag() / grid));
    };
    if (const auto *psi = std::get_if<StateVector>(&x)) {
        key.push_back(0);
        StateVector canonical = canonicalize_phase(*psi);
        for (auto a : canonical.amps()) {
            push(a);
        }
    } else {
        key.push_back(1);
        for (auto a : std::get<DensityMatrix>(x).matrix().data()) {
            push(a);
        }
    }
    return key;
}

std::string format_state(const StateVector &psi) {
    std::string out;
    for (std::size_t k = 0; k < psi.dim(); k++) {
        Complex a = psi[k];
        if (std::abs(a) <= kNegligible) {
            continue;
        }
        std::string coef;
        if (a.imag() == 0 || a.real() == 0) {
            coef = format_complex(a);
        } else {
            coef = "(" + format_complex(a) + ")";
        }
        if (coef == "1") {
            coef.clear();
        } else if (coef == "-1") {
            coef = "-";
        }
        if (!out.empty()) {
            if (!coef.empty() && coef.front() == '-') {
                out += " - ";
                coef.erase(0, 1);
            } else {
                out += " + ";
            }
        }
        out += coef + "|" + psi.space().label(k) + "⟩";
    }
    return out;
}

}  // namespace catlab
