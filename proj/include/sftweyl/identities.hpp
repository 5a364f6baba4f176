#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "sftweyl/geometry.hpp"
#include "sftweyl/report.hpp"

namespace sftweyl {

// Certificate search policy for the homology-level upgrade of a failing
// chain-level check. The search window enlarges the check window by one pq
// letter and one hbar step below.
struct CertificateSearch {
    bool enabled = false;
};

// First-order graded differential operator in the t and z variables:
// sum of c * (optional multiplier generator) * d/d(diff).
struct FirstOrderTerm {
    std::optional<Generator> mul;
    Generator diff;
    Rational coeff = 1;
};

struct FirstOrderOp {
    std::vector<FirstOrderTerm> terms;

    Series apply(const Series& f) const;
    // Uniform parity |mul| - |diff| of the operator; throws NonHomogeneous
    // when terms disagree.
    bool odd(const AlgebraSignature& sig) const;
};

// z_0 d/dz_0 generalized to the signature's pairings, plus the cup-product
// level shift; level-raising terms are capped at max_level.
FirstOrderOp divisor_operator(const AlgebraSignature& sig, const GeometryData& geo, int max_level);
// sum_{a,k} t^{a,k+1} d/dt^{a,k}, capped at max_level.
FirstOrderOp string_shift_operator(const AlgebraSignature& sig, int max_level);

// defect = [H,H] truncated to w; the check window must be contained in H's
// window. Every summand of H must have odd parity.
CheckReport check_master(const Series& H, const TruncationWindow& w);

// First report: [H, dH/dt_{a,p}]. Second: the two-derivative identity
// [H_{a,p}, H_{b,q}] + (-1)^{|t_{a,p}|} [H, d2H/dt_{a,p} dt_{b,q}].
std::pair<CheckReport, CheckReport>
check_descendant_commutation(const Series& H, int form_a, int level_a, int form_b, int level_b,
                             const TruncationWindow& w);

// Scales each monomial by (-2 hbar_exp - #p - #q - #t); z is untouched.
Series euler_operator(const Series& f);

// sum_g d_g * normal_form(p_g q_g), central shift retained.
Series build_delta(SignaturePtr sig, const GeometryData& geo, const TruncationWindow& w);

CheckReport divisor_defect(const Series& H, const GeometryData& geo, const TruncationWindow& w,
                           CertificateSearch certs = {});
CheckReport dilaton_defect(const Series& H, const TruncationWindow& w,
                           CertificateSearch certs = {});
CheckReport string_defect(const Series& H, const GeometryData& geo, const TruncationWindow& w,
                          CertificateSearch certs = {});

struct T0Reports {
    CheckReport divisor;
    CheckReport dilaton;
    CheckReport string;
};

// Evaluates the three defects, then sets every t variable to zero.
T0Reports check_t0_specializations(const Series& H, const GeometryData& geo,
                                   const TruncationWindow& w, CertificateSearch certs = {});

} // namespace sftweyl
