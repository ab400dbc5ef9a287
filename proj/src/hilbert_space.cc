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

#include "catlab/hilbert_space.h"

#include <set>

#include "catlab/error.h"
#include "catlab/matrix.h"

namespace catlab {

namespace {

void check_labels(const std::vector<std::string> &labels) {
    std::set<std::string_view> seen;
    for (const auto &label : labels) {
        if (label.empty()) {
            throw CatlabError(ErrorCode::ValidationError, "basis label must be nonempty");
        }
        if (!seen.insert(label).second) {
            throw CatlabError(ErrorCode::ValidationError, "duplicate basis label '" + label + "'");
        }
    }
}

}  // namespace

HilbertSpace::HilbertSpace(std::vector<std::string> labels)
    : data_(std::make_shared<const Data>(Data{std::move(labels), {}})) {
    validate(*data_);
}

HilbertSpace::HilbertSpace(std::shared_ptr<const Data> data) : data_(std::move(data)) {
    validate(*data_);
}

bool HilbertSpace::operator==(const HilbertSpace &other) const {
    return data_ == other.data_ ||
           (data_->labels == other.data_->labels && data_->factors == other.data_->factors);
}

HilbertSpace HilbertSpace::from_factors(std::vector<std::vector<std::string>> factors) {
    if (factors.empty()) {
        throw CatlabError(ErrorCode::ValidationError, "product space needs at least one factor");
    }
    if (factors.size() == 1) {
        return HilbertSpace(std::move(factors[0]));
    }
    std::size_t dim = 1;
    for (const auto &f : factors) {
        check_labels(f);
        if (f.size() < 2) {
            throw CatlabError(ErrorCode::ValidationError, "tensor factor must have dimension >= 2");
        }
        dim *= f.size();
        if (dim > kMaxDim) {
            throw CatlabError(ErrorCode::DimensionCeiling,
                              "product dimension exceeds " + std::to_string(kMaxDim));
        }
    }
    std::vector<std::string> labels{""};
    for (std::size_t k = 0; k < factors.size(); k++) {
        std::vector<std::string> next;
        for (const auto &prefix : labels) {
            for (const auto &l : factors[k]) {
                next.push_back(k == 0 ? l : prefix + std::string(kTensorSeparator) + l);
            }
        }
        labels = std::move(next);
    }
    return HilbertSpace(std::make_shared<const Data>(Data{std::move(labels), std::move(factors)}));
}

HilbertSpace HilbertSpace::product(const HilbertSpace &left, const HilbertSpace &right) {
    std::vector<std::vector<std::string>> factors;
    for (const HilbertSpace *s : {&left, &right}) {
        if (s->is_product()) {
            factors.insert(factors.end(), s->factors().begin(), s->factors().end());
        } else {
            factors.push_back(s->labels());
        }
    }
    return from_factors(std::move(factors));
}

void HilbertSpace::validate(const Data &data) {
    check_labels(data.labels);
    if (data.labels.size() < 2) {
        throw CatlabError(ErrorCode::ValidationError, "Hilbert space dimension must be >= 2");
    }
    if (data.labels.size() > kMaxDim) {
        throw CatlabError(ErrorCode::DimensionCeiling, "dimension exceeds " + std::to_string(kMaxDim));
    }
}

std::optional<std::size_t> HilbertSpace::find(std::string_view label) const {
    const auto &labels = data_->labels;
    for (std::size_t k = 0; k < labels.size(); k++) {
        if (labels[k] == label) {
            return k;
        }
    }
    return std::nullopt;
}

std::size_t HilbertSpace::index_of(std::string_view label) const {
    if (auto k = find(label)) {
        return *k;
    }
    throw CatlabError(ErrorCode::UnknownName, "no basis label '" + std::string(label) + "'");
}

std::vector<std::size_t> HilbertSpace::factor_dims() const {
    std::vector<std::size_t> dims;
    for (const auto &f : data_->factors) {
        dims.push_back(f.size());
    }
    return dims;
}

}  // namespace catlab
