#pragma once
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sftweyl/errors.hpp"
#include "sftweyl/rational.hpp"

namespace sftweyl {

// Which end of a cobordism an orbit belongs to. Cylindrical signatures mark
// every orbit Both; doubled signatures split the orbit set.
enum class End : uint8_t { Both, Minus, Plus };

struct OrbitInfo {
    std::string name;
    int kappa = 1; // covering multiplicity, >= 1
    int cz = 0;    // Conley-Zehnder index
    End end = End::Both;
};

struct FormInfo {
    std::string name;
    int deg = 0;
};

struct H2Info {
    std::string name;
    int c1 = 0;
    Rational theta2_pairing = 0; // pairing of the divisor form with this class
};

// A multiple cover is bad when its CZ parity differs from the underlying
// orbit's; bad orbits carry no variables.
bool orbit_is_bad(int cz_underlying, int cz_cover);

// The generator universe. Immutable after construction; fixes every grading.
class AlgebraSignature {
public:
    AlgebraSignature(int m,
                     std::vector<OrbitInfo> orbits,
                     std::vector<FormInfo> forms,
                     std::vector<H2Info> h2,
                     int unit_form,
                     int divisor_form); // -1 when absent

    int m() const { return m_; }
    const std::vector<OrbitInfo>& orbits() const { return orbits_; }
    const std::vector<FormInfo>& forms() const { return forms_; }
    const std::vector<H2Info>& h2_basis() const { return h2_; }
    int unit_form() const { return unit_form_; }
    int divisor_form() const { return divisor_form_; } // -1 when absent
    bool has_divisor_form() const { return divisor_form_ >= 0; }

    std::optional<int> find_orbit(const std::string& name) const;
    std::optional<int> find_form(const std::string& name) const;
    std::optional<int> find_h2(const std::string& name) const;

    // Gradings.
    int grade_p(int orbit) const { return m_ - 3 - orbits_[orbit].cz; }
    int grade_q(int orbit) const { return m_ - 3 + orbits_[orbit].cz; }
    int grade_t(int form, int level) const { return 2 * (1 - level) - forms_[form].deg; }
    int grade_z(int i) const { return -2 * h2_[i].c1; }
    int grade_hbar() const { return 2 * (m_ - 3); }

    // Parity shortcuts (p and q of one orbit always share parity).
    bool orbit_odd(int orbit) const { return orbit_parity_[orbit]; }
    bool form_odd(int form) const { return form_parity_[form]; }

private:
    int m_;
    std::vector<OrbitInfo> orbits_;
    std::vector<FormInfo> forms_;
    std::vector<H2Info> h2_;
    int unit_form_;
    int divisor_form_;
    std::vector<bool> orbit_parity_;
    std::vector<bool> form_parity_;
    std::unordered_map<std::string, int> orbit_index_;
    std::unordered_map<std::string, int> form_index_;
    std::unordered_map<std::string, int> h2_index_;
};

using SignaturePtr = std::shared_ptr<const AlgebraSignature>;

enum class GenKind : uint8_t { T = 0, Q = 1, P = 2, Z = 3, HBAR = 4 };

// One formal variable. idx points into the signature's orbit/form/h2 lists;
// level is used by T generators only.
struct Generator {
    GenKind kind = GenKind::HBAR;
    int idx = 0;
    int level = 0;

    static Generator p(int orbit) { return {GenKind::P, orbit, 0}; }
    static Generator q(int orbit) { return {GenKind::Q, orbit, 0}; }
    static Generator t(int form, int level) { return {GenKind::T, form, level}; }
    static Generator z(int i) { return {GenKind::Z, i, 0}; }
    static Generator hbar() { return {GenKind::HBAR, 0, 0}; }

    bool operator==(const Generator&) const = default;
};

int grade_of(const AlgebraSignature& sig, const Generator& g);
bool is_odd(const AlgebraSignature& sig, const Generator& g);

} // namespace sftweyl
