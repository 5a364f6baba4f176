#include "sftweyl/homology.hpp"

#include <algorithm>

#include "sftweyl/errors.hpp"

namespace sftweyl {

namespace {

void require_master_for(const Series& H, const TruncationWindow& dst) {
    const AlgebraSignature& sig = *H.signature();
    for (const auto& [key, c] : H.terms())
        if (!monomial_odd(sig, key)) throw EvenSummand();
    // master must hold on a window containing dst; the join with H's own
    // window is the strongest view available
    TruncationWindow work = join_window(H.window(), dst);
    Series Hw = clip(H, work);
    if (!clip(weyl_bracket(Hw, Hw), work).is_zero()) throw MasterFails();
}

// All canonical words over `gens` (sorted) of length <= maxlen; an odd
// generator may appear at most once.
void enumerate_words(const AlgebraSignature& sig, const std::vector<Letter>& gens,
                     int maxlen, std::size_t from, std::vector<Letter>& cur,
                     std::vector<std::vector<Letter>>& out) {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) >= maxlen) return;
    for (std::size_t i = from; i < gens.size(); ++i) {
        bool repeat_of_last = !cur.empty() && cur.back() == gens[i];
        if (repeat_of_last && letter_odd(sig, gens[i])) continue;
        cur.push_back(gens[i]);
        enumerate_words(sig, gens, maxlen, i, cur, out);
        cur.pop_back();
    }
}

void enumerate_z(std::size_t slot, int budget, std::vector<int32_t>& cur,
                 std::vector<std::vector<int32_t>>& out) {
    if (slot == cur.size()) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= budget; ++e) {
        cur[slot] = e;
        enumerate_z(slot + 1, budget - e, cur, out);
    }
    cur[slot] = 0;
}

} // namespace

WindowBasis WindowBasis::enumerate(SignaturePtr sig, const TruncationWindow& w) {
    w.validate();
    const AlgebraSignature& s = *sig;
    if (!s.forms().empty() && w.max_t_letters > 0 && !w.max_t_level)
        throw WindowTooSmall("basis enumeration needs a t-level bound (tlevel=...)");

    std::vector<Letter> t_gens;
    if (w.max_t_letters > 0) {
        for (std::size_t f = 0; f < s.forms().size(); ++f)
            for (int lvl = 0; lvl <= *w.max_t_level; ++lvl)
                t_gens.push_back(Letter{GenKind::T, static_cast<int32_t>(f), lvl});
    }
    std::vector<Letter> q_gens, p_gens;
    for (std::size_t g = 0; g < s.orbits().size(); ++g) {
        q_gens.push_back(Letter{GenKind::Q, static_cast<int32_t>(g), 0});
        p_gens.push_back(Letter{GenKind::P, static_cast<int32_t>(g), 0});
    }

    std::vector<std::vector<Letter>> t_words, q_words, p_words;
    std::vector<Letter> cur;
    enumerate_words(s, t_gens, w.max_t_letters, 0, cur, t_words);
    enumerate_words(s, q_gens, w.max_pq_letters, 0, cur, q_words);
    enumerate_words(s, p_gens, w.max_pq_letters, 0, cur, p_words);

    std::vector<std::vector<int32_t>> z_exps;
    std::vector<int32_t> zcur(s.h2_basis().size(), 0);
    if (zcur.empty()) z_exps.push_back({});
    else enumerate_z(0, w.max_z_total, zcur, z_exps);

    WindowBasis basis;
    basis.sig = std::move(sig);
    basis.window = w;
    for (int hbar = w.hbar_min; hbar <= w.hbar_max; ++hbar) {
        for (const auto& z : z_exps) {
            for (const auto& tw : t_words) {
                for (const auto& qw : q_words) {
                    for (const auto& pw : p_words) {
                        if (static_cast<int>(qw.size() + pw.size()) > w.max_pq_letters)
                            continue;
                        MonoKey key;
                        key.hbar = hbar;
                        key.z = z;
                        key.word = tw;
                        key.word.insert(key.word.end(), qw.begin(), qw.end());
                        key.word.insert(key.word.end(), pw.begin(), pw.end());
                        basis.monomials.push_back(std::move(key));
                    }
                }
            }
        }
    }
    std::sort(basis.monomials.begin(), basis.monomials.end(), MonoKeyLess{});
    for (std::size_t i = 0; i < basis.monomials.size(); ++i)
        basis.index.emplace(basis.monomials[i], static_cast<int>(i));
    return basis;
}

WindowBasis WindowBasis::from_monomials(SignaturePtr sig, const TruncationWindow& w,
                                        std::vector<MonoKey> monomials) {
    WindowBasis basis;
    basis.sig = std::move(sig);
    basis.window = w;
    basis.monomials = std::move(monomials);
    std::sort(basis.monomials.begin(), basis.monomials.end(), MonoKeyLess{});
    for (std::size_t i = 0; i < basis.monomials.size(); ++i)
        basis.index.emplace(basis.monomials[i], static_cast<int>(i));
    return basis;
}

Series WindowBasis::element(int i) const {
    Series s(sig, window);
    s.add_term(monomials[static_cast<std::size_t>(i)], 1);
    return s;
}

bool SparseMatrix::is_zero() const {
    for (const auto& c : col)
        if (!c.empty()) return false;
    return true;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
    SparseMatrix out;
    out.rows = rows;
    out.cols = rhs.cols;
    out.col.resize(static_cast<std::size_t>(rhs.cols));
    for (int j = 0; j < rhs.cols; ++j) {
        std::map<int, Rational> acc;
        for (const auto& [k, v] : rhs.col[static_cast<std::size_t>(j)]) {
            for (const auto& [i, u] : col[static_cast<std::size_t>(k)]) {
                Rational& slot = acc[i];
                slot += u * v;
                if (slot == 0) acc.erase(i);
            }
        }
        auto& c = out.col[static_cast<std::size_t>(j)];
        c.assign(acc.begin(), acc.end());
    }
    return out;
}

std::string SparseMatrix::dump_triplets() const {
    std::string out;
    for (int j = 0; j < cols; ++j)
        for (const auto& [i, v] : col[static_cast<std::size_t>(j)])
            out += std::to_string(i) + " " + std::to_string(j) + " " + to_string(v) + "\n";
    return out;
}

namespace {

// Coordinates of s in the basis; monomials missing from a restricted basis
// project away.
std::vector<std::pair<int, Rational>> coordinates(const Series& s, const WindowBasis& basis) {
    std::vector<std::pair<int, Rational>> out;
    for (const auto& [key, c] : s.terms()) {
        auto it = basis.index.find(key);
        if (it != basis.index.end()) out.emplace_back(it->second, c);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Series apply_differential(const Series& H, const Series& x, const TruncationWindow& dst) {
    return clip(weyl_bracket(H, x), dst);
}

// ---------------------------------------------------------------------------
// sparse integer-preserving elimination
//
// Rows are sparse integer vectors (denominators cleared on entry). Pivots are
// the first row carrying the column, in fixed row order; eliminated rows are
// combined integrally (row*pivot - lead*pivotrow) and divided by their content
// so entries stay small. Identical inputs give identical echelons.

using SparseRowQ = std::map<int, Rational>;
using SparseRowZ = std::map<int, Integer>;

SparseRowZ clear_denominators(const SparseRowQ& row) {
    Integer l = 1;
    for (const auto& [j, v] : row) l = lcm(l, v.get_den());
    SparseRowZ out;
    for (const auto& [j, v] : row)
        if (v != 0) out.emplace(j, Integer(v.get_num() * (l / v.get_den())));
    return out;
}

void normalize_content(SparseRowZ& row) {
    Integer g = 0;
    for (const auto& [j, v] : row) g = gcd(g, v);
    if (g == 0 || g == 1) return;
    for (auto& [j, v] : row) {
        Integer q;
        mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        v = q;
    }
}

struct SparseEchelon {
    std::vector<SparseRowZ> rows;            // echelon order
    std::vector<std::pair<int, int>> pivots; // (row position, column)
};

// pivot_cols_limit keeps an augmented right-hand-side column out of the
// pivot set.
SparseEchelon eliminate(std::vector<SparseRowZ> rows, int pivot_cols_limit) {
    SparseEchelon e;
    std::size_t done = 0;
    // visit candidate pivot columns in increasing order of what remains
    for (int c = 0; c < pivot_cols_limit && done < rows.size(); ++c) {
        std::size_t sel = done;
        while (sel < rows.size()) {
            auto it = rows[sel].find(c);
            if (it != rows[sel].end() && it->second != 0) break;
            ++sel;
        }
        if (sel == rows.size()) continue;
        std::swap(rows[done], rows[sel]);
        const Integer pivot = rows[done].at(c);
        for (std::size_t i = done + 1; i < rows.size(); ++i) {
            auto it = rows[i].find(c);
            if (it == rows[i].end() || it->second == 0) continue;
            Integer lead = it->second;
            SparseRowZ next;
            auto a = rows[i].begin();
            auto b = rows[done].begin();
            while (a != rows[i].end() || b != rows[done].end()) {
                if (b == rows[done].end() || (a != rows[i].end() && a->first < b->first)) {
                    Integer v = a->second * pivot;
                    if (v != 0) next.emplace_hint(next.end(), a->first, std::move(v));
                    ++a;
                } else if (a == rows[i].end() || b->first < a->first) {
                    Integer v = -lead * b->second;
                    if (v != 0) next.emplace_hint(next.end(), b->first, std::move(v));
                    ++b;
                } else {
                    Integer v = a->second * pivot - lead * b->second;
                    if (v != 0) next.emplace_hint(next.end(), a->first, std::move(v));
                    ++a;
                    ++b;
                }
            }
            next.erase(c);
            normalize_content(next);
            rows[i] = std::move(next);
        }
        e.pivots.emplace_back(static_cast<int>(done), c);
        ++done;
    }
    e.rows = std::move(rows);
    return e;
}

// Kernel basis from the echelon, one vector per free column with that free
// variable set to one.
std::vector<std::vector<Rational>> kernel_basis(const SparseEchelon& e, int ncols) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
    for (const auto& [r, c] : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<Rational>> out;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(ncols), Rational(0));
        v[static_cast<std::size_t>(f)] = 1;
        for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
            const auto& [r, c] = *it;
            const SparseRowZ& row = e.rows[static_cast<std::size_t>(r)];
            Rational sum = 0;
            for (auto jt = row.upper_bound(c); jt != row.end(); ++jt) {
                if (jt->first >= ncols) break;
                if (v[static_cast<std::size_t>(jt->first)] == 0) continue;
                sum += Rational(jt->second) * v[static_cast<std::size_t>(jt->first)];
            }
            v[static_cast<std::size_t>(c)] = -sum / Rational(row.at(c));
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<SparseRowZ> rows_from_columns(const SparseMatrix& M,
                                          const std::vector<std::pair<int, Rational>>* rhs) {
    std::vector<SparseRowQ> rq(static_cast<std::size_t>(M.rows));
    for (int j = 0; j < M.cols; ++j)
        for (const auto& [i, v] : M.col[static_cast<std::size_t>(j)])
            rq[static_cast<std::size_t>(i)].emplace(j, v);
    if (rhs)
        for (const auto& [i, v] : *rhs) rq[static_cast<std::size_t>(i)].emplace(M.cols, v);
    std::vector<SparseRowZ> rows;
    rows.reserve(rq.size());
    for (const SparseRowQ& r : rq) rows.push_back(clear_denominators(r));
    return rows;
}

} // namespace

SparseMatrix differential_matrix(const Series& H, const WindowBasis& src,
                                 const WindowBasis& dst) {
    require_master_for(H, dst.window);

    SparseMatrix M;
    M.rows = dst.dimension();
    M.cols = src.dimension();
    M.col.resize(static_cast<std::size_t>(M.cols));
    // Work in a window containing both H and the basis so no H-term is lost
    // before the bracket; images are clipped to dst afterwards.
    TruncationWindow work = join_window(H.window(), src.window);
    Series Hw = clip(H, work);
    bool any_image = false;
    bool any_held = false;
    for (int j = 0; j < M.cols; ++j) {
        Series full = weyl_bracket(Hw, clip(src.element(j), work));
        any_image = any_image || !full.is_zero();
        M.col[static_cast<std::size_t>(j)] = coordinates(clip(full, dst.window), dst);
        any_held = any_held || !M.col[static_cast<std::size_t>(j)].empty();
    }
    // A differential that is nonzero somewhere but lands entirely outside dst
    // is a window problem, not a zero matrix.
    if (any_image && !any_held) throw WindowTooSmall("no image monomial fits the target window");
    return M;
}

CheckReport check_dsquared(const Series& H, const TruncationWindow& src,
                           const TruncationWindow& mid, const TruncationWindow& dst) {
    WindowBasis bsrc = WindowBasis::enumerate(H.signature(), src);
    WindowBasis bmid = WindowBasis::enumerate(H.signature(), mid);
    WindowBasis bdst = WindowBasis::enumerate(H.signature(), dst);

    SparseMatrix M1 = differential_matrix(H, bsrc, bmid);

    // Second stage only for mid monomials that are actually hit.
    std::map<int, std::vector<std::pair<int, Rational>>> stage2;
    TruncationWindow work = join_window(H.window(), mid);
    Series Hw = clip(H, work);
    for (const auto& c : M1.col)
        for (const auto& [r, v] : c)
            if (!stage2.count(r))
                stage2[r] = coordinates(
                    apply_differential(Hw, clip(bmid.element(r), work), dst), bdst);

    CheckReport rep;
    rep.label = "dsquared";
    rep.window = dst;
    rep.defect = Series::zero(H.signature(), dst);
    rep.status = CheckStatus::HoldsExactly;
    for (int j = 0; j < M1.cols; ++j) {
        std::map<int, Rational> acc;
        for (const auto& [r, v] : M1.col[static_cast<std::size_t>(j)]) {
            for (const auto& [i, u] : stage2[r]) {
                Rational& slot = acc[i];
                slot += u * v;
                if (slot == 0) acc.erase(i);
            }
        }
        if (!acc.empty()) {
            rep.status = CheckStatus::Fails;
            for (const auto& [i, v] : acc)
                rep.defect.add_term(bdst.monomials[static_cast<std::size_t>(i)], v);
            break;
        }
    }
    return rep;
}

HomologyResult homology_basis(const Series& H, const WindowBasis& src, const WindowBasis& dst) {
    SparseMatrix M = differential_matrix(H, src, dst);
    SparseEchelon e = eliminate(rows_from_columns(M, nullptr), M.cols);
    auto kernel = kernel_basis(e, M.cols);

    HomologyResult out;
    out.rank_kernel = static_cast<int>(kernel.size());
    out.rank_image = static_cast<int>(e.pivots.size());

    // Reduce kernel elements modulo the image, working directly on
    // monomial-keyed series over a window containing both spaces; leading
    // coefficients are normalized to 1.
    TruncationWindow work = join_window(src.window, dst.window);
    using Reducer = std::map<MonoKey, Series, MonoKeyLess>;
    Reducer echelon;
    auto reduce = [&](Series s) {
        while (!s.is_zero()) {
            const auto& [lead, c] = *s.terms().begin();
            auto it = echelon.find(lead);
            if (it == echelon.end()) break;
            s = s - it->second.scaled(c);
        }
        return s;
    };

    for (int j = 0; j < M.cols; ++j) {
        Series img(dst.sig, work);
        for (const auto& [i, v] : M.col[static_cast<std::size_t>(j)])
            img.add_term(dst.monomials[static_cast<std::size_t>(i)], v);
        img = reduce(std::move(img));
        if (!img.is_zero()) {
            const auto& [lead, c] = *img.terms().begin();
            echelon.emplace(lead, img.scaled(1 / c));
        }
    }
    for (const auto& v : kernel) {
        Series ker(src.sig, work);
        for (int j = 0; j < M.cols; ++j)
            if (v[static_cast<std::size_t>(j)] != 0)
                ker.add_term(src.monomials[static_cast<std::size_t>(j)],
                             v[static_cast<std::size_t>(j)]);
        Series rep = reduce(std::move(ker));
        if (!rep.is_zero()) {
            const auto& [lead, c] = *rep.terms().begin();
            rep = rep.scaled(1 / c);
            out.representatives.push_back(rep);
            echelon.emplace(lead, std::move(rep));
        }
    }
    return out;
}

HomologyResult homology_basis(const Series& H, const TruncationWindow& src,
                              const TruncationWindow& dst) {
    return homology_basis(H, WindowBasis::enumerate(H.signature(), src),
                          WindowBasis::enumerate(H.signature(), dst));
}

std::optional<ExactnessCertificate> is_exact(const Series& x, const Series& H,
                                             const WindowBasis& src, const WindowBasis& dst) {
    for (const auto& [key, c] : x.terms())
        if (!monomial_inside(key, dst.window))
            throw ValidationError("exactness target is not supported in the destination window");
    Series xd = clip(x, dst.window);
    TruncationWindow work = join_window(H.window(), dst.window);
    if (!clip(weyl_bracket(clip(H, work), clip(xd, work)), dst.window).is_zero())
        throw NotClosed();

    // Candidate filter: a preimage monomial can only contribute if some
    // H-monomial maps it onto the grading and z profile of a target term.
    // The filter is complete for homogeneous H; otherwise a solution needing
    // cross-grade cancellation is reported inconclusive, never wrongly found
    // (the certificate is re-verified below).
    const AlgebraSignature& sig = *H.signature();
    std::vector<int> wanted_grades;
    std::vector<std::vector<int32_t>> wanted_z;
    for (const auto& [kx, cx] : xd.terms()) {
        int gx = monomial_grade(sig, kx);
        for (const auto& [kh, ch] : H.terms()) {
            wanted_grades.push_back(gx - monomial_grade(sig, kh));
            std::vector<int32_t> dz = kx.z;
            bool ok = true;
            for (std::size_t i = 0; i < dz.size(); ++i) {
                dz[i] -= kh.z[i];
                if (dz[i] < 0) ok = false;
            }
            if (ok) wanted_z.push_back(std::move(dz));
        }
    }
    std::sort(wanted_grades.begin(), wanted_grades.end());
    wanted_grades.erase(std::unique(wanted_grades.begin(), wanted_grades.end()),
                        wanted_grades.end());
    std::sort(wanted_z.begin(), wanted_z.end());
    wanted_z.erase(std::unique(wanted_z.begin(), wanted_z.end()), wanted_z.end());

    std::vector<int> candidates;
    for (int j = 0; j < src.dimension(); ++j) {
        const MonoKey& k = src.monomials[static_cast<std::size_t>(j)];
        if (!std::binary_search(wanted_grades.begin(), wanted_grades.end(),
                                monomial_grade(sig, k)))
            continue;
        if (!std::binary_search(wanted_z.begin(), wanted_z.end(), k.z)) continue;
        candidates.push_back(j);
    }

    // Assemble columns over the candidates; rows are discovered on demand
    // and renumbered canonically.
    TruncationWindow bwork = join_window(H.window(), src.window);
    Series Hw = clip(H, bwork);
    std::map<MonoKey, int, MonoKeyLess> row_of;
    std::vector<std::vector<std::pair<MonoKey, Rational>>> raw_cols;
    for (int j : candidates) {
        Series img = apply_differential(Hw, clip(src.element(j), bwork), dst.window);
        std::vector<std::pair<MonoKey, Rational>> col;
        for (const auto& [key, v] : img.terms()) {
            row_of.emplace(key, 0);
            col.emplace_back(key, v);
        }
        raw_cols.push_back(std::move(col));
    }
    for (const auto& [key, v] : xd.terms()) row_of.emplace(key, 0);
    int next = 0;
    for (auto& [key, idx] : row_of) idx = next++;

    SparseMatrix M;
    M.rows = next;
    M.cols = static_cast<int>(candidates.size());
    M.col.resize(raw_cols.size());
    for (std::size_t j = 0; j < raw_cols.size(); ++j) {
        for (auto& [key, v] : raw_cols[j]) M.col[j].emplace_back(row_of[key], v);
        std::sort(M.col[j].begin(), M.col[j].end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    std::vector<std::pair<int, Rational>> rhs;
    for (const auto& [key, v] : xd.terms()) rhs.emplace_back(row_of[key], v);

    SparseEchelon e = eliminate(rows_from_columns(M, &rhs), M.cols);

    // Consistency: a pivotless row with a nonzero augmented entry means the
    // system is infeasible within src.
    std::vector<bool> pivot_row(static_cast<std::size_t>(M.rows), false);
    for (const auto& [r, c] : e.pivots) pivot_row[static_cast<std::size_t>(r)] = true;
    for (int i = 0; i < M.rows; ++i) {
        if (pivot_row[static_cast<std::size_t>(i)]) continue;
        auto it = e.rows[static_cast<std::size_t>(i)].find(M.cols);
        if (it != e.rows[static_cast<std::size_t>(i)].end() && it->second != 0)
            return std::nullopt;
    }

    // Back-substitute with free variables at zero.
    std::vector<Rational> sol(static_cast<std::size_t>(M.cols), Rational(0));
    for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
        const auto& [r, c] = *it;
        const SparseRowZ& row = e.rows[static_cast<std::size_t>(r)];
        Rational sum = 0;
        auto rt = row.find(M.cols);
        if (rt != row.end()) sum = Rational(rt->second);
        for (auto jt = row.upper_bound(c); jt != row.end(); ++jt) {
            if (jt->first >= M.cols) break;
            if (sol[static_cast<std::size_t>(jt->first)] == 0) continue;
            sum -= Rational(jt->second) * sol[static_cast<std::size_t>(jt->first)];
        }
        sol[static_cast<std::size_t>(c)] = sum / Rational(row.at(c));
    }

    ExactnessCertificate cert{Series::zero(src.sig, src.window), Series::zero(dst.sig, dst.window)};
    for (std::size_t j = 0; j < candidates.size(); ++j)
        if (sol[j] != 0)
            cert.preimage.add_term(src.monomials[static_cast<std::size_t>(candidates[j])], sol[j]);
    // Recompute through the algebra; the certificate must reproduce the
    // target exactly within the destination window.
    Series check = clip(weyl_bracket(Hw, clip(cert.preimage, bwork)), dst.window);
    cert.residual = xd - check;
    if (!cert.residual.is_zero()) return std::nullopt;
    return cert;
}

std::optional<ExactnessCertificate> is_exact(const Series& x, const Series& H,
                                             const TruncationWindow& src,
                                             const TruncationWindow& dst) {
    return is_exact(x, H, WindowBasis::enumerate(H.signature(), src),
                    WindowBasis::enumerate(H.signature(), dst));
}

} // namespace sftweyl
