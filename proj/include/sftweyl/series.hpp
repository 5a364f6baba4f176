#pragma once
#include <compare>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "sftweyl/signature.hpp"
#include "sftweyl/window.hpp"

namespace sftweyl {

// A letter of the canonical word: T, Q or P generators only (hbar and z are
// carried as exponents outside the word). Default comparison gives the
// canonical order: T block by (form, level), then Q block by orbit, then P
// block by orbit.
struct Letter {
    GenKind kind;
    int32_t idx;
    int32_t level;
    auto operator<=>(const Letter&) const = default;
};

// Canonical monomial shape. z always has the signature's basis size.
struct MonoKey {
    int hbar = 0;
    std::vector<int32_t> z;
    std::vector<Letter> word;
    bool operator==(const MonoKey&) const = default;
};

// Printing/enumeration order: hbar descending, then z lexicographic, then
// word lexicographic.
struct MonoKeyLess {
    bool operator()(const MonoKey& a, const MonoKey& b) const;
};

enum class Side { Left, Right };
enum class ProductKind { Weyl, Super };

// Finite sum of canonical monomials with exact rational coefficients inside
// a truncation window. Immutable in spirit: operations return new values.
class Series {
public:
    using TermMap = std::map<MonoKey, Rational, MonoKeyLess>;

    Series() = default;
    Series(SignaturePtr sig, TruncationWindow win) : sig_(std::move(sig)), win_(win) {}

    static Series zero(SignaturePtr sig, TruncationWindow win) { return Series(std::move(sig), win); }
    static Series constant(SignaturePtr sig, TruncationWindow win, const Rational& c);
    static Series generator(SignaturePtr sig, TruncationWindow win, const Generator& g);

    const SignaturePtr& signature() const { return sig_; }
    const TruncationWindow& window() const { return win_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool clipped() const { return clipped_; }
    void mark_clipped() { clipped_ = true; }

    std::size_t size() const { return terms_.size(); }

    // Accumulate c * hbar^h * z^zexp * (raw word), rewriting the word to
    // canonical form. Weyl mode applies the p_g q_g -> sign q_g p_g + kappa
    // hbar reduction; Super mode only super-commutes. No window truncation.
    void add_word_term(Rational c, int hbar, std::vector<int32_t> zexp,
                       std::vector<Letter> word, ProductKind mode);
    void add_term(const MonoKey& key, const Rational& c);

    // Drops outside-window monomials in place; marks clipped when a nonzero
    // monomial was dropped.
    void clip_to_window();

    Series operator+(const Series& rhs) const;
    Series operator-(const Series& rhs) const;
    Series operator-() const;
    Series scaled(const Rational& c) const;

    bool equals(const Series& rhs) const { return terms_ == rhs.terms_; }

private:
    SignaturePtr sig_;
    TruncationWindow win_{};
    TermMap terms_;
    bool clipped_ = false;
};

int monomial_grade(const AlgebraSignature& sig, const MonoKey& key);
bool monomial_odd(const AlgebraSignature& sig, const MonoKey& key);
int letter_grade(const AlgebraSignature& sig, const Letter& l);
bool letter_odd(const AlgebraSignature& sig, const Letter& l);
bool monomial_inside(const MonoKey& key, const TruncationWindow& w);

// Canonical form of a coefficient times a raw generator word. Under the Weyl
// rewrite each adjacent p_g q_g pair contributes the Koszul-signed swap plus
// kappa_g hbar; repeated odd letters annihilate the term.
Series normal_form(SignaturePtr sig, const TruncationWindow& w, const Rational& coeff,
                   const std::vector<Generator>& word,
                   ProductKind mode = ProductKind::Weyl);

// Grading of a homogeneous series; throws NonHomogeneous on mixed gradings.
int grade_of(const Series& f);
bool is_homogeneous(const Series& f);
// Uniform parity check/value; throws NonHomogeneous when parities mix.
bool parity_of(const Series& f);

bool is_hbar_free(const Series& f);

// Associative Weyl star product, truncated to the common window.
Series star(const Series& f, const Series& g);
// Super-commutative product (no p/q contraction); the product of the
// Poisson algebra and of the cobordism D-space.
Series super_star(const Series& f, const Series& g);

// f*g - (-1)^{|f||g|} g*f, with internal parity decomposition.
Series weyl_bracket(const Series& f, const Series& g);

// sum_g kappa_g ( d^R f/d p_g * d^L g/d q_g - (-1)^{|f||g|} d^R g/d p_g * d^L f/d q_g )
// on hbar-free inputs.
Series poisson_bracket(const Series& f, const Series& g);

// Graded derivative; x = HBAR uses the exponent rule and ignores `side`.
Series partial_derivative(const Series& f, const Generator& x, Side side);

// Groups monomials by hbar exponent g-1; each part is returned hbar-free.
std::vector<std::pair<int, Series>> genus_expansion(const Series& f);

// Requires w contained in f's window; idempotent.
Series truncate(const Series& f, const TruncationWindow& w);

// Same drop rule as truncate but without the containment precondition;
// used internally where the target is not nested.
Series clip(const Series& f, const TruncationWindow& w);

Series set_t_zero(const Series& f);

// Largest descendant level appearing in f (0 when t-free).
int max_descendant_level(const Series& f);

// Multiplication by a single generator as a Series-level helper.
Series times_generator(const Series& f, const Generator& g, Side side, ProductKind mode);

} // namespace sftweyl
