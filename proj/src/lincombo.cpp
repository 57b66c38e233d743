#include "graphcx/lincombo.hpp"

namespace gcx {

void LinCombo::add_graph(const HairyGraph& g, const Rat& c) {
    if (c == 0) return;
    CanonResult r = canonicalize(g);
    if (r.sign == 0) return;
    add_canonical(r.canon, c * r.sign);
}

void LinCombo::add_canonical(const CanonicalGraph& cg, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(cg.key);
    if (it == terms_.end()) {
        terms_.emplace(cg.key, std::make_pair(cg, c));
    } else {
        it->second.second += c;
        if (it->second.second == 0) terms_.erase(it);
    }
}

void LinCombo::add(const LinCombo& other, const Rat& scale) {
    if (scale == 0) return;
    for (const auto& [k, tc] : other.terms_) add_canonical(tc.first, tc.second * scale);
}

Rat LinCombo::coefficient(const std::string& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rat(0) : it->second.second;
}

Rat LinCombo::l1_norm() const {
    Rat s(0);
    for (const auto& [k, tc] : terms_) s += abs(tc.second);
    return s;
}

LinCombo LinCombo::filtered(
    const std::function<bool(const HairyGraph&)>& keep) const {
    LinCombo out;
    for (const auto& [k, tc] : terms_)
        if (keep(tc.first.graph)) out.add_canonical(tc.first, tc.second);
    return out;
}

std::optional<int> LinCombo::homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [k, tc] : terms_) {
        int d = tc.first.graph.degree();
        if (!deg) deg = d;
        else if (*deg != d) return std::nullopt;
    }
    return deg;
}

std::map<int, LinCombo> LinCombo::by_degree() const {
    std::map<int, LinCombo> out;
    for (const auto& [k, tc] : terms_)
        out[tc.first.graph.degree()].add_canonical(tc.first, tc.second);
    return out;
}

bool LinCombo::operator==(const LinCombo& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin(), jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || it->second.second != jt->second.second)
            return false;
    return true;
}

LinCombo operator*(const Rat& c, const LinCombo& x) {
    LinCombo out;
    out.add(x, c);
    return out;
}

LinCombo operator+(const LinCombo& a, const LinCombo& b) {
    LinCombo out = a;
    out.add(b);
    return out;
}

LinCombo operator-(const LinCombo& a, const LinCombo& b) {
    LinCombo out = a;
    out.add(b, Rat(-1));
    return out;
}

}  // namespace gcx
