#pragma once
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "sftweyl/signature.hpp"

namespace sftweyl {

// Geometric inputs of the identity checks: spanning-surface pairings d_g,
// cup-product structure constants and the triple intersection tensor.
class GeometryData {
public:
    GeometryData() = default;
    explicit GeometryData(const AlgebraSignature& sig)
        : d_(sig.orbits().size(), Rational(0)) {}

    const Rational& d(int orbit) const { return d_.at(static_cast<std::size_t>(orbit)); }
    void set_d(int orbit, Rational v) { d_.at(static_cast<std::size_t>(orbit)) = std::move(v); }

    // c_{ab}^c: cup entries are rejected unless deg c = deg a + deg b.
    void add_cup(const AlgebraSignature& sig, int a, int b, int c, Rational v);
    const std::vector<std::pair<int, Rational>>& cup(int a, int b) const;

    // eta_{abc}: stored graded-symmetrically; a nonzero entry is rejected
    // unless deg a + deg b + deg c = 2m-1. Conflicting redefinitions throw.
    void add_triple(const AlgebraSignature& sig, int a, int b, int c, const Rational& v);
    Rational triple(int a, int b, int c) const;

private:
    std::vector<Rational> d_;
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> cup_;
    std::map<std::tuple<int, int, int>, Rational> triple_;
};

} // namespace sftweyl
