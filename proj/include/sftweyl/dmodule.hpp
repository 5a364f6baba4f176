#pragma once
#include <utility>
#include <vector>

#include "sftweyl/identities.hpp"
#include "sftweyl/report.hpp"

namespace sftweyl {

// The cobordism space carries p letters of positive-end orbits and q letters
// of negative-end orbits (plus shared t, z, hbar). Within it p and q letters
// never contract: all products are super-commutative.
bool is_d_element(const Series& f);
void require_d_element(const Series& f);

// Membership in the Weyl algebra of one end.
bool is_w_end(const Series& f, End end);
void require_w_end(const Series& f, End end);

// Left action of a negative-end element: q multiplies from the left, p acts
// as kappa hbar times the left q-derivative; the leftmost letter of a word
// acts outermost.
Series act_left(const Series& f, const Series& g);

// Right action of a positive-end element: p multiplies from the right, q acts
// as kappa hbar times the right p-derivative; the leftmost letter acts first.
Series act_right(const Series& g, const Series& f);

// Validates a potential: even parity throughout and every monomial of
// positive weight (at least one p/q/t letter or z factor).
Series make_potential(const Series& F);

// sum_k F^k / k! clipped to w; terminates because weight grows per factor.
Series exp_series(const Series& F, const TruncationWindow& w);

// defect = act_right(e^F, H+) - act_left(H-, e^F).
CheckReport check_fundamental(const Series& F, const Series& Hp, const Series& Hm,
                              const TruncationWindow& w);

// D^F g = e^{-F} (H- acting on g e^F) - (-1)^{|g|} (g e^F acted by H+) e^{-F}.
Series df_operator(const Series& g, const Series& F, const Series& Hp, const Series& Hm,
                   const TruncationWindow& w);

// end = Minus: f -> e^{-F} (f acting from the left on e^{F});
// end = Plus:  f -> (e^{F} acted on from the right by f) e^{-F}.
Series pushforward(const Series& f, End end, const Series& F, const TruncationWindow& w);

// Per-probe defect pushforward([H, f]) - D^F(pushforward(f)); the aggregate
// report carries the first failing probe's defect.
CheckReport check_chain_map(const Series& F, const Series& Hp, const Series& Hm,
                            const std::vector<std::pair<Series, End>>& probes,
                            const TruncationWindow& w);

// defect = [F+(D H+) - F-(D H-)] - (-1)^{|D|} D^F(D F) for a first-order
// operator D in the t and z variables.
CheckReport check_covariance(const Series& F, const Series& Hp, const Series& Hm,
                             const FirstOrderOp& op, const TruncationWindow& w);
CheckReport check_covariance(const Series& F, const Series& Hp, const Series& Hm,
                             int form, int level, const TruncationWindow& w);

// F_id = hbar^{-1} sum_g kappa_g^{-1} q-_g p+_g over cylindrical orbits. The
// constructor verifies the fundamental identity against every single-letter
// Hamiltonian hbar^{-1} q_g and hbar^{-1} p_g within w and fails loudly.
Series trivial_potential(SignaturePtr sig, const TruncationWindow& w);

} // namespace sftweyl
