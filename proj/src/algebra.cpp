#include "graphcx/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gcx {

std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rat q(s);
            q.canonicalize();
            return q;
        }
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) return std::nullopt;
        Rat q(num + "/" + den);
        q.canonicalize();
        if (q.get_den() == 0) return std::nullopt;
        return q;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

SymCombo sym_combo_add(const SymCombo& a, const SymCombo& b) {
    SymCombo out;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            Rat c = a[i].second + b[j].second;
            if (c != 0) out.emplace_back(a[i].first, c);
            ++i, ++j;
        }
    }
    return out;
}

SymCombo sym_combo_scale(const SymCombo& a, const Rat& c) {
    if (c == 0) return {};
    SymCombo out = a;
    for (auto& [s, q] : out) q *= c;
    return out;
}

GradedAlgebra::GradedAlgebra(std::string name, std::vector<std::string> symbols,
                             std::vector<int> degrees, int unit_index)
    : name_(std::move(name)),
      symbols_(std::move(symbols)),
      degrees_(std::move(degrees)),
      unit_(unit_index) {
    if (symbols_.size() != degrees_.size())
        throw std::runtime_error("algebra: symbol/degree size mismatch");
    if (unit_ < 0 || unit_ >= dim() || degrees_[unit_] != 0)
        throw std::runtime_error("algebra: unit must be a degree-0 symbol");
    mult_.assign(static_cast<size_t>(dim()) * dim(), {});
    diff_.assign(dim(), {});
    for (int a = 0; a < dim(); ++a) {
        mult_[a * dim() + unit_] = {{a, Rat(1)}};
        mult_[unit_ * dim() + a] = {{a, Rat(1)}};
    }
}

int GradedAlgebra::symbol_id(const std::string& name) const {
    for (int i = 0; i < dim(); ++i)
        if (symbols_[i] == name) return i;
    return -1;
}

void GradedAlgebra::set_product(int a, int b, SymCombo value) {
    std::sort(value.begin(), value.end());
    mult_[a * dim() + b] = value;
    // Graded commutativity fixes the mirrored entry.
    int k = (degree(a) * degree(b)) % 2 == 0 ? 1 : -1;
    mult_[b * dim() + a] = sym_combo_scale(value, Rat(k));
}

void GradedAlgebra::set_differential(int a, SymCombo value) {
    std::sort(value.begin(), value.end());
    diff_[a] = std::move(value);
}

const SymCombo& GradedAlgebra::product(int a, int b) const {
    return mult_.at(a * dim() + b);
}

const SymCombo& GradedAlgebra::differential(int a) const { return diff_.at(a); }

bool GradedAlgebra::has_zero_differential() const {
    for (const auto& d : diff_)
        if (!d.empty()) return false;
    return true;
}

namespace {

// Extends a basis operation linearly to combinations.
SymCombo apply_linear(const GradedAlgebra& alg, const SymCombo& x,
                      const std::function<SymCombo(int)>& f) {
    SymCombo out;
    for (const auto& [s, c] : x) out = sym_combo_add(out, sym_combo_scale(f(s), c));
    return out;
}

}  // namespace

void GradedAlgebra::validate() const {
    auto mul = [&](const SymCombo& x, int b) {
        return apply_linear(*this, x, [&](int a) { return product(a, b); });
    };
    for (int a = 0; a < dim(); ++a) {
        // Unit identity.
        if (product(a, unit_) != SymCombo{{a, Rat(1)}})
            throw std::runtime_error(name_ + ": unit does not act as identity");
        // Homogeneity of products and differential degree.
        for (int b = 0; b < dim(); ++b) {
            for (const auto& [s, c] : product(a, b))
                if (degree(s) != degree(a) + degree(b))
                    throw std::runtime_error(name_ + ": product not homogeneous");
            // Graded commutativity.
            int k = (degree(a) * degree(b)) % 2 == 0 ? 1 : -1;
            if (product(b, a) != sym_combo_scale(product(a, b), Rat(k)))
                throw std::runtime_error(name_ + ": not graded-commutative");
        }
        for (const auto& [s, c] : differential(a))
            if (degree(s) != degree(a) + 1)
                throw std::runtime_error(name_ + ": differential degree != +1");
    }
    // Associativity on all basis triples.
    for (int a = 0; a < dim(); ++a)
        for (int b = 0; b < dim(); ++b)
            for (int c = 0; c < dim(); ++c)
                if (mul(product(a, b), c) !=
                    apply_linear(*this, product(b, c),
                                 [&](int s) { return product(a, s); }))
                    throw std::runtime_error(name_ + ": not associative");
    // Leibniz and d^2 = 0.
    auto d = [&](const SymCombo& x) {
        return apply_linear(*this, x, [&](int a) { return differential(a); });
    };
    for (int a = 0; a < dim(); ++a) {
        if (!d(differential(a)).empty())
            throw std::runtime_error(name_ + ": d^2 != 0");
        for (int b = 0; b < dim(); ++b) {
            SymCombo lhs = d(product(a, b));
            SymCombo rhs = mul(differential(a), b);
            int k = degree(a) % 2 == 0 ? 1 : -1;
            rhs = sym_combo_add(
                rhs, sym_combo_scale(apply_linear(*this, differential(b),
                                                  [&](int s) { return product(a, s); }),
                                     Rat(k)));
            if (lhs != rhs) throw std::runtime_error(name_ + ": Leibniz fails");
        }
    }
}

AlgebraPtr sphere_cohomology(int k) {
    auto alg = std::make_shared<GradedAlgebra>(
        "sphere" + std::to_string(k), std::vector<std::string>{"one", "w"},
        std::vector<int>{0, k}, 0);
    alg->set_product(1, 1, {});
    return alg;
}

AlgebraPtr reduced_sphere_cohomology(int n) {
    auto alg = std::make_shared<GradedAlgebra>(
        "rsphere" + std::to_string(n), std::vector<std::string>{"one", "w"},
        std::vector<int>{0, n}, 0);
    alg->set_product(1, 1, {});
    return alg;
}

AlgebraPtr trivial_unital() {
    return std::make_shared<GradedAlgebra>("unit", std::vector<std::string>{"one"},
                                           std::vector<int>{0}, 0);
}

AlgebraPtr strip_marker_algebra() {
    auto alg = std::make_shared<GradedAlgebra>(
        "marker", std::vector<std::string>{"one", "s"}, std::vector<int>{0, -1},
        0);
    alg->set_product(1, 1, {});
    return alg;
}

AlgebraPtr punctured_product_cohomology(int d) {
    auto alg = std::make_shared<GradedAlgebra>(
        "psphere" + std::to_string(d),
        std::vector<std::string>{"one", "w1", "w2"}, std::vector<int>{0, d, d},
        0);
    alg->set_product(1, 1, {});
    alg->set_product(1, 2, {});
    alg->set_product(2, 2, {});
    return alg;
}

void AlgebraRegistry::add(AlgebraPtr alg) { algs_[alg->name()] = std::move(alg); }

AlgebraPtr AlgebraRegistry::try_get(const std::string& name) const {
    auto it = algs_.find(name);
    if (it != algs_.end()) return it->second;
    if (name == "unit") {
        AlgebraPtr a = trivial_unital();
        algs_[name] = a;
        return a;
    }
    if (name == "marker") {
        AlgebraPtr a = strip_marker_algebra();
        algs_[name] = a;
        return a;
    }
    auto builtin = [&](const char* prefix,
                       AlgebraPtr (*make)(int)) -> AlgebraPtr {
        size_t len = std::string(prefix).size();
        if (name.rfind(prefix, 0) != 0 || name.size() == len) return nullptr;
        for (size_t i = len; i < name.size(); ++i)
            if (!isdigit(name[i])) return nullptr;
        int k = std::stoi(name.substr(len));
        if (k <= 0) return nullptr;
        AlgebraPtr alg = make(k);
        algs_[name] = alg;
        return alg;
    };
    if (auto a = builtin("rsphere", reduced_sphere_cohomology)) return a;
    if (auto a = builtin("psphere", punctured_product_cohomology)) return a;
    if (auto a = builtin("sphere", sphere_cohomology)) return a;
    return nullptr;
}

AlgebraPtr AlgebraRegistry::get(const std::string& name) const {
    AlgebraPtr a = try_get(name);
    if (!a) throw std::runtime_error("unknown algebra: " + name);
    return a;
}

}  // namespace gcx
