#include "sftweyl/window.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "sftweyl/errors.hpp"

namespace sftweyl {

void TruncationWindow::validate() const {
    if (hbar_min > hbar_max)
        throw ValidationError("window has hbar_min > hbar_max");
    if (max_pq_letters < 0 || max_t_letters < 0 || max_z_total < 0)
        throw ValidationError("window bounds must be nonnegative");
    if (max_t_level && *max_t_level < 0)
        throw ValidationError("window t-level bound must be nonnegative");
}

bool TruncationWindow::contains(const TruncationWindow& inner) const {
    if (inner.hbar_min < hbar_min || inner.hbar_max > hbar_max) return false;
    if (inner.max_pq_letters > max_pq_letters) return false;
    if (inner.max_t_letters > max_t_letters) return false;
    if (inner.max_z_total > max_z_total) return false;
    if (max_t_level) {
        if (!inner.max_t_level || *inner.max_t_level > *max_t_level) return false;
    }
    return true;
}

namespace {

int parse_int(const std::string& s, std::size_t& i, const std::string& spec) {
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
        throw ValidationError("bad window spec '" + spec + "'");
    return std::atoi(s.substr(start, i - start).c_str());
}

void expect(const std::string& s, std::size_t& i, const std::string& what, const std::string& spec) {
    if (s.compare(i, what.size(), what) != 0)
        throw ValidationError("bad window spec '" + spec + "' (expected '" + what + "')");
    i += what.size();
}

} // namespace

TruncationWindow TruncationWindow::parse(const std::string& spec) {
    TruncationWindow w;
    std::size_t i = 0;
    expect(spec, i, "hbar=", spec);
    w.hbar_min = parse_int(spec, i, spec);
    expect(spec, i, "..", spec);
    w.hbar_max = parse_int(spec, i, spec);
    expect(spec, i, ",pq=", spec);
    w.max_pq_letters = parse_int(spec, i, spec);
    expect(spec, i, ",t=", spec);
    w.max_t_letters = parse_int(spec, i, spec);
    expect(spec, i, ",z=", spec);
    w.max_z_total = parse_int(spec, i, spec);
    if (i < spec.size()) {
        expect(spec, i, ",tlevel=", spec);
        w.max_t_level = parse_int(spec, i, spec);
    }
    if (i != spec.size())
        throw ValidationError("bad window spec '" + spec + "' (trailing characters)");
    w.validate();
    return w;
}

TruncationWindow join_window(const TruncationWindow& a, const TruncationWindow& b) {
    TruncationWindow w;
    w.hbar_min = std::min(a.hbar_min, b.hbar_min);
    w.hbar_max = std::max(a.hbar_max, b.hbar_max);
    w.max_pq_letters = std::max(a.max_pq_letters, b.max_pq_letters);
    w.max_t_letters = std::max(a.max_t_letters, b.max_t_letters);
    w.max_z_total = std::max(a.max_z_total, b.max_z_total);
    if (a.max_t_level && b.max_t_level)
        w.max_t_level = std::max(*a.max_t_level, *b.max_t_level);
    return w;
}

std::string TruncationWindow::str() const {
    std::string s = "hbar=" + std::to_string(hbar_min) + ".." + std::to_string(hbar_max) +
                    ",pq=" + std::to_string(max_pq_letters) +
                    ",t=" + std::to_string(max_t_letters) +
                    ",z=" + std::to_string(max_z_total);
    if (max_t_level) s += ",tlevel=" + std::to_string(*max_t_level);
    return s;
}

} // namespace sftweyl
