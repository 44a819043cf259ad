/*
   Copyright 2026 The ffstat Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ffstat/poly_text.hpp"

#include <cctype>
#include <map>

namespace ffstat {

namespace {

class Parser {
public:
    Parser(std::string_view text, const FieldPtr& field) : s_(text), field_(field) {}

    Poly parse() {
        skip_space();
        if (at_end()) throw PolyParseError("empty polynomial", pos_);
        if (looks_like_list()) return parse_list();
        return parse_symbolic();
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool looks_like_list() const {
        for (const char c : s_)
            if (c == 'X' || c == 'x' || c == '+' || c == '^') return false;
        return true;
    }

    unsigned long long read_number() {
        skip_space();
        const std::size_t start = pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw PolyParseError("expected a decimal number", pos_);
        unsigned long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
            if (v > 1'000'000'000ULL) throw PolyParseError("number too large", start);
            ++pos_;
        }
        return v;
    }

    Elem checked_coeff(unsigned long long v, std::size_t at) const {
        if (v >= field_->order())
            throw PolyParseError("coefficient " + std::to_string(v) + " not in [0, " + std::to_string(field_->order()) + ")", at);
        return Elem{static_cast<std::uint32_t>(v)};
    }

    Poly parse_list() {
        std::vector<Elem> c;
        while (true) {
            skip_space();
            const std::size_t at = pos_;
            c.push_back(checked_coeff(read_number(), at));
            skip_space();
            if (at_end()) break;
            if (peek() != ',') throw PolyParseError("expected ','", pos_);
            ++pos_;
        }
        return Poly(field_, std::move(c));
    }

    Poly parse_symbolic() {
        std::map<std::size_t, Elem> terms;
        bool first = true;
        while (true) {
            skip_space();
            if (at_end()) {
                if (first) throw PolyParseError("empty polynomial", pos_);
                break;
            }
            bool negate = false;
            if (peek() == '+' || peek() == '-') {
                negate = peek() == '-';
                ++pos_;
                skip_space();
            } else if (!first) {
                throw PolyParseError("expected '+' or '-'", pos_);
            }
            first = false;
            const std::size_t at = pos_;
            Elem coeff{1};
            bool have_coeff = false;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                coeff = checked_coeff(read_number(), at);
                have_coeff = true;
                skip_space();
                if (peek() == '*') {
                    ++pos_;
                    skip_space();
                    if (peek() != 'X' && peek() != 'x') throw PolyParseError("expected 'X' after '*'", pos_);
                }
            }
            std::size_t exponent = 0;
            if (peek() == 'X' || peek() == 'x') {
                ++pos_;
                exponent = 1;
                skip_space();
                if (peek() == '^') {
                    ++pos_;
                    exponent = static_cast<std::size_t>(read_number());
                    if (exponent > 4096) throw PolyParseError("exponent too large", pos_);
                }
            } else if (!have_coeff) {
                throw PolyParseError("expected a coefficient or 'X'", pos_);
            }
            if (negate) coeff = field_->neg(coeff);
            auto [it, inserted] = terms.emplace(exponent, coeff);
            if (!inserted) it->second = field_->add(it->second, coeff);
        }
        const std::size_t top = terms.rbegin()->first;
        std::vector<Elem> c(top + 1, Elem{0});
        for (const auto& [e, v] : terms) c[e] = v;
        return Poly(field_, std::move(c));
    }

    std::string_view s_;
    const FieldPtr& field_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const FieldPtr& field) { return Parser(text, field).parse(); }

std::string to_string(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t i = f.deg() + 1; i-- > 0;) {
        const Elem c = f.coeff(i);
        if (c.v == 0) continue;
        if (!out.empty()) out += '+';
        if (i == 0 || c.v != 1) out += std::to_string(c.v);
        if (i >= 1) out += 'X';
        if (i >= 2) out += '^' + std::to_string(i);
    }
    return out;
}

std::string to_coeff_string(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i <= f.deg(); ++i) {
        if (i) out += ',';
        out += std::to_string(f.coeff(i).v);
    }
    return out;
}

}  // namespace ffstat
