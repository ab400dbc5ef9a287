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

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace catlab {

/// Separator used when tensoring basis labels ("undecayed⊗alive").
inline constexpr std::string_view kTensorSeparator = "⊗";

/// An ordered, labeled orthonormal basis. Product spaces remember the label
/// lists of their factors so that subsystems can be traced out.
class HilbertSpace {
   public:
    /// Throws ValidationError for empty/duplicate labels or dim < 2, and
    /// DimensionCeiling for dim > kMaxDim.
    explicit HilbertSpace(std::vector<std::string> labels);
    static HilbertSpace from_factors(std::vector<std::vector<std::string>> factors);
    static HilbertSpace product(const HilbertSpace &left, const HilbertSpace &right);

    std::size_t dim() const {
        return data_->labels.size();
    }
    const std::vector<std::string> &labels() const {
        return data_->labels;
    }
    const std::string &label(std::size_t index) const {
        return data_->labels.at(index);
    }
    std::optional<std::size_t> find(std::string_view label) const;
    /// Throws UnknownName.
    std::size_t index_of(std::string_view label) const;

    bool is_product() const {
        return !data_->factors.empty();
    }
    /// Label lists of each tensor factor; empty unless is_product().
    const std::vector<std::vector<std::string>> &factors() const {
        return data_->factors;
    }
    std::vector<std::size_t> factor_dims() const;

    bool operator==(const HilbertSpace &other) const;

   private:
    struct Data {
        std::vector<std::string> labels;
        std::vector<std::vector<std::string>> factors;
    };

    explicit HilbertSpace(std::shared_ptr<const Data> data);
    static void validate(const Data &data);

    // Shared so that the many states produced during search and sampling
    // copy a pointer rather than the label strings.
    std::shared_ptr<const Data> data_;
};

}  // namespace catlab
