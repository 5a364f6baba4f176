#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sftweyl/report.hpp"
#include "sftweyl/series.hpp"

namespace sftweyl {

// Ordered list of all canonical monomials inside a window (coefficient 1),
// in the same deterministic order as print_canonical. Enumeration needs the
// window's t-level bound; a restricted basis can also be built from an
// explicit monomial list.
struct WindowBasis {
    SignaturePtr sig;
    TruncationWindow window;
    std::vector<MonoKey> monomials;
    std::map<MonoKey, int, MonoKeyLess> index;

    static WindowBasis enumerate(SignaturePtr sig, const TruncationWindow& w);
    static WindowBasis from_monomials(SignaturePtr sig, const TruncationWindow& w,
                                      std::vector<MonoKey> monomials);

    int dimension() const { return static_cast<int>(monomials.size()); }
    Series element(int i) const;
};

// Column-major sparse matrix over exact rationals.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, Rational>>> col; // (row, value), row-sorted

    bool is_zero() const;
    SparseMatrix multiply(const SparseMatrix& rhs) const; // this * rhs
    std::string dump_triplets() const;                    // "row col value" lines
};

// Column j = coordinates of [H, basis_j] clipped to dst.
SparseMatrix differential_matrix(const Series& H, const WindowBasis& src, const WindowBasis& dst);

// defect = matrix product of the two stages; holds_exactly when zero. On
// failure the defect series is D(D(b)) for the first failing basis element.
CheckReport check_dsquared(const Series& H, const TruncationWindow& src,
                           const TruncationWindow& mid, const TruncationWindow& dst);

struct HomologyResult {
    int rank_kernel = 0;
    int rank_image = 0;
    std::vector<Series> representatives; // kernel reduced modulo image
};

HomologyResult homology_basis(const Series& H, const WindowBasis& src, const WindowBasis& dst);
HomologyResult homology_basis(const Series& H, const TruncationWindow& src,
                              const TruncationWindow& dst);

struct ExactnessCertificate {
    Series preimage;
    Series residual; // 0 when fully resolved within the window
};

// Solves [H, pre] = x over the src basis, exactly, with the image clipped to
// dst. Returns nullopt (inconclusive) when the system is infeasible within
// src; never claims non-exactness. Requires [H, x] = 0 within dst.
std::optional<ExactnessCertificate> is_exact(const Series& x, const Series& H,
                                             const TruncationWindow& src,
                                             const TruncationWindow& dst);
std::optional<ExactnessCertificate> is_exact(const Series& x, const Series& H,
                                             const WindowBasis& src, const WindowBasis& dst);

} // namespace sftweyl
