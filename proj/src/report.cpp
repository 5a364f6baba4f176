#include "sftweyl/report.hpp"

namespace sftweyl {

std::string status_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::HoldsExactly: return "holds_exactly";
    case CheckStatus::HoldsWithinWindow: return "holds_within_window";
    case CheckStatus::HoldsInHomology: return "holds_in_homology";
    case CheckStatus::Fails: return "fails";
    }
    return "unknown";
}

} // namespace sftweyl
