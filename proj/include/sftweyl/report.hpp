#pragma once
#include <optional>
#include <string>

#include "sftweyl/series.hpp"

namespace sftweyl {

enum class CheckStatus { HoldsExactly, HoldsWithinWindow, HoldsInHomology, Fails };

std::string status_string(CheckStatus s);

// Outcome of an identity check. defect == 0 iff status is one of the two
// exact outcomes; a certificate x (when present) satisfies [H, x] = defect
// within the window.
struct CheckReport {
    CheckStatus status = CheckStatus::HoldsExactly;
    Series defect;
    std::optional<Series> certificate;
    TruncationWindow window;
    std::string label;

    bool holds() const { return status != CheckStatus::Fails; }
};

} // namespace sftweyl
