#include "sftweyl/geometry.hpp"

#include <algorithm>

#include "sftweyl/errors.hpp"

namespace sftweyl {

void GeometryData::add_cup(const AlgebraSignature& sig, int a, int b, int c, Rational v) {
    if (v == 0) return;
    const auto& forms = sig.forms();
    if (forms[c].deg != forms[a].deg + forms[b].deg)
        throw ValidationError("cup entry violates form degrees: " + forms[a].name + " " +
                              forms[b].name + " -> " + forms[c].name);
    auto& row = cup_[{a, b}];
    for (auto& [f, coeff] : row) {
        if (f == c)
            throw ValidationError("duplicate cup entry " + forms[a].name + " " + forms[b].name +
                                  " -> " + forms[c].name);
    }
    row.emplace_back(c, std::move(v));
    std::sort(row.begin(), row.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
}

const std::vector<std::pair<int, Rational>>& GeometryData::cup(int a, int b) const {
    static const std::vector<std::pair<int, Rational>> empty;
    auto it = cup_.find({a, b});
    return it == cup_.end() ? empty : it->second;
}

void GeometryData::add_triple(const AlgebraSignature& sig, int a, int b, int c, const Rational& v) {
    if (v == 0) return;
    const auto& forms = sig.forms();
    if (forms[a].deg + forms[b].deg + forms[c].deg != 2 * sig.m() - 1)
        throw ValidationError("triple entry violates total degree: " + forms[a].name + " " +
                              forms[b].name + " " + forms[c].name);

    // Expand the graded-symmetric orbit of (a,b,c). The Koszul sign of a
    // permutation is the parity of odd-odd transpositions needed to sort.
    struct Perm { int x[3]; };
    const Perm perms[6] = {{{0, 1, 2}}, {{0, 2, 1}}, {{1, 0, 2}}, {{1, 2, 0}}, {{2, 0, 1}}, {{2, 1, 0}}};
    const int ids[3] = {a, b, c};
    const bool odd[3] = {sig.form_odd(a), sig.form_odd(b), sig.form_odd(c)};
    for (const Perm& p : perms) {
        // sign: bubble-sort p.x and count swaps of two odd slots
        int arr[3] = {p.x[0], p.x[1], p.x[2]};
        bool neg = false;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j + 1 < 3; ++j)
                if (arr[j] > arr[j + 1]) {
                    if (odd[arr[j]] && odd[arr[j + 1]]) neg = !neg;
                    std::swap(arr[j], arr[j + 1]);
                }
        std::tuple<int, int, int> key{ids[p.x[0]], ids[p.x[1]], ids[p.x[2]]};
        Rational val = neg ? Rational(-v) : v;
        auto [it, inserted] = triple_.emplace(key, val);
        if (!inserted && it->second != val)
            throw ValidationError("conflicting triple entries for " + forms[a].name + " " +
                                  forms[b].name + " " + forms[c].name);
    }
}

Rational GeometryData::triple(int a, int b, int c) const {
    auto it = triple_.find({a, b, c});
    return it == triple_.end() ? Rational(0) : it->second;
}

} // namespace sftweyl
