#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "graphcx/rational.hpp"

namespace gcx {

// Rational combination of algebra basis symbols, kept sorted by symbol id
// with no zero coefficients.
using SymCombo = std::vector<std::pair<int, Rat>>;

SymCombo sym_combo_add(const SymCombo& a, const SymCombo& b);
SymCombo sym_combo_scale(const SymCombo& a, const Rat& c);

// Finite graded commutative unital algebra given by structure constants on a
// named basis. Serves two roles: the decoration space V on internal vertices
// (only symbols/degrees matter there) and the unital source algebra U1 whose
// dual labels hairs (multiplication and differential matter there).
class GradedAlgebra {
public:
    GradedAlgebra(std::string name, std::vector<std::string> symbols,
                  std::vector<int> degrees, int unit_index);

    const std::string& name() const { return name_; }
    int dim() const { return static_cast<int>(symbols_.size()); }
    int unit() const { return unit_; }
    int degree(int sym) const { return degrees_.at(sym); }
    bool odd(int sym) const { return (degrees_.at(sym) % 2 + 2) % 2 == 1; }
    const std::string& symbol_name(int sym) const { return symbols_.at(sym); }
    int symbol_id(const std::string& name) const;  // -1 if absent

    void set_product(int a, int b, SymCombo value);
    void set_differential(int a, SymCombo value);

    const SymCombo& product(int a, int b) const;
    const SymCombo& differential(int a) const;
    bool has_zero_differential() const;

    // Exhaustive basis checks: graded commutativity, associativity, unit
    // identity, differential degree +1, Leibniz, d^2 = 0. Throws
    // std::runtime_error naming the violated law.
    void validate() const;

private:
    std::string name_;
    std::vector<std::string> symbols_;
    std::vector<int> degrees_;
    int unit_;
    std::vector<SymCombo> mult_;  // dim*dim table
    std::vector<SymCombo> diff_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

// H^*(S^k): unit plus one generator w of degree k, w^2 = 0, d = 0.
AlgebraPtr sphere_cohomology(int k);

// Reduced H^*(S^n): single generator w of degree n, w^2 = 0. Used as a
// decoration space; the adjoined unit is index 0 as usual.
AlgebraPtr reduced_sphere_cohomology(int n);

// H^*(S^d x S^d minus a point) = Q<w1, w2>, both degree d, all products of
// positive-degree elements zero.
AlgebraPtr punctured_product_cohomology(int d);

// The one-dimensional unital algebra (unit only); labels hairs that carry no
// source data.
AlgebraPtr trivial_unital();

// Unit plus a square-zero marker s of degree -1; labels the hairs produced by
// stripping decorations, keeping that identification degree-preserving.
AlgebraPtr strip_marker_algebra();

// Name-keyed registry. Recognizes builtin names "sphereK", "rsphereN",
// "psphereD" (K, N, D positive integers) on demand.
class AlgebraRegistry {
public:
    void add(AlgebraPtr alg);
    AlgebraPtr get(const std::string& name) const;  // throws if unknown
    AlgebraPtr try_get(const std::string& name) const;

private:
    mutable std::map<std::string, AlgebraPtr> algs_;
};

}  // namespace gcx
