#include "sftweyl/signature.hpp"

namespace sftweyl {

namespace {
bool odd(int x) { return ((x % 2) + 2) % 2 == 1; }
} // namespace

bool orbit_is_bad(int cz_underlying, int cz_cover) {
    return odd(cz_underlying - cz_cover);
}

AlgebraSignature::AlgebraSignature(int m,
                                   std::vector<OrbitInfo> orbits,
                                   std::vector<FormInfo> forms,
                                   std::vector<H2Info> h2,
                                   int unit_form,
                                   int divisor_form)
    : m_(m),
      orbits_(std::move(orbits)),
      forms_(std::move(forms)),
      h2_(std::move(h2)),
      unit_form_(unit_form),
      divisor_form_(divisor_form) {
    if (unit_form_ < 0 || unit_form_ >= static_cast<int>(forms_.size()))
        throw ValidationError("signature needs exactly one unit form");
    if (forms_[unit_form_].deg != 0)
        throw ValidationError("unit form must have degree 0");
    if (divisor_form_ >= static_cast<int>(forms_.size()))
        throw ValidationError("divisor form index out of range");
    if (divisor_form_ >= 0 && forms_[divisor_form_].deg != 2)
        throw ValidationError("divisor form must have degree 2");

    for (std::size_t i = 0; i < orbits_.size(); ++i) {
        const auto& o = orbits_[i];
        if (o.kappa < 1)
            throw ValidationError("orbit '" + o.name + "' has multiplicity < 1");
        if (!orbit_index_.emplace(o.name, static_cast<int>(i)).second)
            throw ValidationError("duplicate orbit id '" + o.name + "'");
        orbit_parity_.push_back(odd(m_ - 3 + o.cz));
    }
    for (std::size_t i = 0; i < forms_.size(); ++i) {
        const auto& f = forms_[i];
        if (f.deg < 0)
            throw ValidationError("form '" + f.name + "' has negative degree");
        if (!form_index_.emplace(f.name, static_cast<int>(i)).second)
            throw ValidationError("duplicate form id '" + f.name + "'");
        form_parity_.push_back(odd(f.deg));
    }
    for (std::size_t i = 0; i < h2_.size(); ++i) {
        if (!h2_index_.emplace(h2_[i].name, static_cast<int>(i)).second)
            throw ValidationError("duplicate h2 id '" + h2_[i].name + "'");
    }
}

std::optional<int> AlgebraSignature::find_orbit(const std::string& name) const {
    auto it = orbit_index_.find(name);
    if (it == orbit_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> AlgebraSignature::find_form(const std::string& name) const {
    auto it = form_index_.find(name);
    if (it == form_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> AlgebraSignature::find_h2(const std::string& name) const {
    auto it = h2_index_.find(name);
    if (it == h2_index_.end()) return std::nullopt;
    return it->second;
}

int grade_of(const AlgebraSignature& sig, const Generator& g) {
    switch (g.kind) {
    case GenKind::P: return sig.grade_p(g.idx);
    case GenKind::Q: return sig.grade_q(g.idx);
    case GenKind::T: return sig.grade_t(g.idx, g.level);
    case GenKind::Z: return sig.grade_z(g.idx);
    case GenKind::HBAR: return sig.grade_hbar();
    }
    return 0;
}

bool is_odd(const AlgebraSignature& sig, const Generator& g) {
    return odd(grade_of(sig, g));
}

} // namespace sftweyl
