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

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "catlab/hilbert_space.h"
#include "catlab/matrix.h"

namespace catlab {

/// Normalized ket over a labeled basis. Immutable once built.
class StateVector {
   public:
    /// Keeps `amps` bit-for-bit; throws InvalidState unless |norm^2 - 1| < kTolerance.
    static StateVector from_normalized(HilbertSpace space, Amplitudes amps);

    const HilbertSpace &space() const {
        return space_;
    }
    const Amplitudes &amps() const {
        return amps_;
    }
    std::size_t dim() const {
        return amps_.size();
    }
    const Complex &operator[](std::size_t index) const {
        return amps_[index];
    }

    bool operator==(const StateVector &other) const = default;

   private:
    StateVector(HilbertSpace space, Amplitudes amps) : space_(std::move(space)), amps_(std::move(amps)) {
    }
    friend StateVector make_state(const HilbertSpace &space, std::span<const Complex> raw_amps);

    HilbertSpace space_;
    Amplitudes amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
   public:
    /// Throws InvalidState if any density-matrix invariant fails.
    static DensityMatrix from_matrix(HilbertSpace space, Matrix mat);
    static DensityMatrix pure(const StateVector &psi);

    const HilbertSpace &space() const {
        return space_;
    }
    const Matrix &matrix() const {
        return mat_;
    }
    std::size_t dim() const {
        return mat_.dim();
    }

    bool operator==(const DensityMatrix &other) const = default;

   private:
    DensityMatrix(HilbertSpace space, Matrix mat) : space_(std::move(space)), mat_(std::move(mat)) {
    }

    HilbertSpace space_;
    Matrix mat_;
};

enum class OperatorKind { Projector, Unitary, General };

std::string_view operator_kind_name(OperatorKind kind);

class Operator {
   public:
    /// Throws InvalidOperator unless M^2 = M and M = M^H within kTolerance.
    static Operator projector(HilbertSpace space, Matrix mat);
    /// Throws InvalidOperator unless M^H M = I within kTolerance.
    static Operator unitary(HilbertSpace space, Matrix mat);
    static Operator general(HilbertSpace space, Matrix mat);

    const HilbertSpace &space() const {
        return space_;
    }
    const Matrix &matrix() const {
        return mat_;
    }
    OperatorKind kind() const {
        return kind_;
    }

    bool operator==(const Operator &other) const = default;

   private:
    Operator(HilbertSpace space, Matrix mat, OperatorKind kind)
        : space_(std::move(space)), mat_(std::move(mat)), kind_(kind) {
    }

    HilbertSpace space_;
    Matrix mat_;
    OperatorKind kind_;
};

/// Either a pure or a mixed state; measurement and protocols accept both.
using QuantumState = std::variant<StateVector, DensityMatrix>;

const HilbertSpace &space_of(const QuantumState &state);

struct WeightedState {
    double weight;
    StateVector state;
};

/// Normalized copy of `raw_amps` (relative phases preserved).
/// Throws DimensionMismatch, ZeroVector (norm^2 < 1e-20) or InvalidState (non-finite).
StateVector make_state(const HilbertSpace &space, std::span<const Complex> raw_amps);
StateVector basis_state(const HilbertSpace &space, std::string_view label);

/// Sum_k w_k |psi_k><psi_k|. Throws BadWeights or DimensionMismatch.
DensityMatrix make_mixture(std::span<const WeightedState> parts);

/// Kronecker product; the result's space records both operands as factors.
StateVector tensor(const StateVector &left, const StateVector &right);
DensityMatrix tensor(const DensityMatrix &left, const DensityMatrix &right);

/// Traces out every factor except `keep_factor`. Throws NotProductSpace.
DensityMatrix partial_trace(const DensityMatrix &dm, std::size_t keep_factor);

Operator projector_from_state(const StateVector &psi);

/// The unit vector in span{basis0, basis1} orthogonal to `psi`, phase-canonical.
/// Throws NotInSpan if psi leaves the span by more than 1e-9.
StateVector orthogonal_in_span(const StateVector &psi, const StateVector &basis0, const StateVector &basis1);

/// <x|P|x> or tr(P rho), clamped to [0, 1].
double overlap_probability(const QuantumState &x, const Operator &projector);

/// |<a|b>|^2
double fidelity(const StateVector &a, const StateVector &b);
/// <target|rho|target> for mixed states; |<x|target>|^2 for pure ones.
double fidelity(const QuantumState &x, const StateVector &target);

/// Rotates the global phase so the first non-negligible amplitude is real positive.
StateVector canonicalize_phase(const StateVector &psi);

QuantumState apply_unitary(const Operator &unitary, const QuantumState &x);

/// Hash key: phase-canonical amplitudes (or matrix entries) rounded to `grid`.
using StateKey = std::vector<long long>;
StateKey state_key(const QuantumState &x, double grid = 1e-6);

/// Human-readable ket, e.g. "0.6|alive⟩ + 0.8i|dead⟩".
std::string format_state(const StateVector &psi);

}  // namespace catlab
