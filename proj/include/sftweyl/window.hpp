#pragma once
#include <optional>
#include <string>

namespace sftweyl {

// Bounded region of monomials within which all arithmetic is exact.
// max_t_level is optional; it is required only where a finite monomial
// basis must be enumerated.
struct TruncationWindow {
    int hbar_min = 0;
    int hbar_max = 0;
    int max_pq_letters = 0;
    int max_t_letters = 0;
    int max_z_total = 0;
    std::optional<int> max_t_level;

    bool operator==(const TruncationWindow&) const = default;

    // True when every monomial inside `inner` is inside *this.
    bool contains(const TruncationWindow& inner) const;

    // "hbar=<lo>..<hi>,pq=<n>,t=<n>,z=<n>[,tlevel=<n>]"
    static TruncationWindow parse(const std::string& spec);
    std::string str() const;

    void validate() const; // throws ValidationError
};

// Smallest window containing both arguments.
TruncationWindow join_window(const TruncationWindow& a, const TruncationWindow& b);

} // namespace sftweyl
