#pragma once
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sftweyl/series.hpp"

namespace sftweyl {

struct PropertyResult {
    std::string name;
    bool ok = true;
    std::string detail; // first counterexample, printed canonically
};

using Rng = std::mt19937_64;

// Random canonical monomial inside `w` (single term, possibly with letters
// of each kind). Never returns zero.
Series random_monomial(SignaturePtr sig, const TruncationWindow& w, Rng& rng,
                       int max_letters, bool hbar_free = false);

// Small random sum of monomials.
Series random_series(SignaturePtr sig, const TruncationWindow& w, Rng& rng,
                     int max_terms, int max_letters, bool hbar_free = false);

// Randomized algebra/property batteries; `n` is the number of random trials.
PropertyResult prop_star_associativity(SignaturePtr sig, Rng& rng, int n);
PropertyResult prop_supercommutativity_off_diagonal(SignaturePtr sig);
PropertyResult prop_degree_parity_additivity(SignaturePtr sig, Rng& rng, int n);
PropertyResult prop_super_antisymmetry(SignaturePtr sig, Rng& rng, int n);
PropertyResult prop_super_jacobi(SignaturePtr sig, Rng& rng, int n);
PropertyResult prop_hbar_divisibility_and_classical_limit(SignaturePtr sig, Rng& rng, int n);
PropertyResult prop_derivative_side_compatibility(SignaturePtr sig, Rng& rng, int n);
PropertyResult prop_euler_leibniz(SignaturePtr sig, Rng& rng, int n);
PropertyResult prop_io_round_trip(SignaturePtr sig, Rng& rng, int n);
PropertyResult prop_action_associativity(SignaturePtr sig, Rng& rng, int n);
PropertyResult prop_action_weyl_relation(SignaturePtr sig, Rng& rng, int n);

// The bundled battery behind the CLI selftest command.
std::vector<PropertyResult> run_property_suite(uint64_t seed);

} // namespace sftweyl
