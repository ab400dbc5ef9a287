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

#include "catlab/complex_text.h"

#include <charconv>
#include <cmath>
#include <system_error>

#include "catlab/error.h"

namespace catlab {

namespace {

[[noreturn]] void fail(std::string_view text, const std::string &why) {
    throw CatlabError(ErrorCode::ParseError, "bad complex literal '" + std::string(text) + "': " + why);
}

double parse_real(std::string_view full, std::string_view part) {
    if (part.empty()) {
        fail(full, "missing number");
    }
    std::string_view digits = part;
    if (digits.front() == '+') {
        digits.remove_prefix(1);
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        fail(full, "cannot read '" + std::string(part) + "'");
    }
    return value;
}

double parse_imag_coefficient(std::string_view full, std::string_view part) {
    if (part.empty() || part == "+") {
        return 1.0;
    }
    if (part == "-") {
        return -1.0;
    }
    return parse_real(full, part);
}

}  // namespace

Complex parse_complex(std::string_view text) {
    std::string compact;
    for (char c : text) {
        if (c != ' ' && c != '\t') {
            compact.push_back(c);
        }
    }
    std::string_view s = compact;
    if (s.empty()) {
        fail(text, "empty");
    }
    if (s.back() != 'i' && s.back() != 'j') {
        return {parse_real(text, s), 0.0};
    }
    s.remove_suffix(1);
    // Split at the last sign that is not the leading one and not an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) {
        return {0.0, parse_imag_coefficient(text, s)};
    }
    return {parse_real(text, s.substr(0, split)), parse_imag_coefficient(text, s.substr(split))};
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

std::string format_complex(Complex z) {
    double re = z.real();
    double im = z.imag();
    if (im == 0) {
        return format_double(re);
    }
    std::string imag = format_double(im) + "i";
    if (re == 0) {
        return imag;
    }
    if (imag.front() != '-') {
        imag = "+" + imag;
    }
    return format_double(re) + imag;
}

}  // namespace catlab
