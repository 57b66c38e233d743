#pragma once

#include <functional>
#include <map>
#include <optional>

#include "graphcx/canonical.hpp"

namespace gcx {

// Finite rational linear combination of canonical graphs, keyed by canonical
// key. No zero coefficients are stored; graphs whose canonicalization sign is
// 0 never enter. The value type of all differentials and brackets.
class LinCombo {
public:
    LinCombo() = default;

    // Canonicalizes g and adds c * sign * (canonical graph).
    void add_graph(const HairyGraph& g, const Rat& c);
    void add_canonical(const CanonicalGraph& cg, const Rat& c);
    void add(const LinCombo& other, const Rat& scale = Rat(1));

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    const std::map<std::string, std::pair<CanonicalGraph, Rat>>& terms() const {
        return terms_;
    }

    Rat coefficient(const std::string& key) const;
    Rat l1_norm() const;  // sum of |coeff|

    LinCombo filtered(const std::function<bool(const HairyGraph&)>& keep) const;

    // Degree of the terms if homogeneous, nullopt for 0 or mixed.
    std::optional<int> homogeneous_degree() const;

    // Splits by graph degree.
    std::map<int, LinCombo> by_degree() const;

    bool operator==(const LinCombo& o) const;

private:
    std::map<std::string, std::pair<CanonicalGraph, Rat>> terms_;
};

LinCombo operator*(const Rat& c, const LinCombo& x);
LinCombo operator+(const LinCombo& a, const LinCombo& b);
LinCombo operator-(const LinCombo& a, const LinCombo& b);

}  // namespace gcx
