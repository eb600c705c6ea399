#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "coho/linalg.hpp"

namespace coho {

/// One of the simple series A..G with its rank.
struct CartanType {
    char series = 'A';
    int rank = 0;

    void validate() const {
        auto fail = [&](const std::string& constraint) {
            throw validation_error("invalid Cartan type " + str() + ": " + constraint);
        };
        switch (series) {
            case 'A':
                if (rank < 1) fail("A requires rank >= 1");
                break;
            case 'B':
                if (rank < 2) fail("B requires rank >= 2");
                break;
            case 'C':
                if (rank < 3) fail("C requires rank >= 3");
                break;
            case 'D':
                if (rank < 4) fail("D requires rank >= 4");
                break;
            case 'E':
                if (rank < 6 || rank > 8) fail("E requires rank in {6,7,8}");
                break;
            case 'F':
                if (rank != 4) fail("F requires rank 4");
                break;
            case 'G':
                if (rank != 2) fail("G requires rank 2");
                break;
            default:
                fail("unknown series");
        }
    }

    std::string str() const { return std::string(1, series) + std::to_string(rank); }

    static CartanType parse(const std::string& s) {
        if (s.size() < 2) throw parse_error("cannot parse Cartan type '" + s + "'");
        CartanType t;
        t.series = s[0];
        try {
            t.rank = std::stoi(s.substr(1));
        } catch (const std::exception&) {
            throw parse_error("cannot parse Cartan type '" + s + "'");
        }
        t.validate();
        return t;
    }

    friend bool operator==(const CartanType& a, const CartanType& b) {
        return a.series == b.series && a.rank == b.rank;
    }

    long long root_count() const {
        long long n = rank;
        switch (series) {
            case 'A': return n * (n + 1);
            case 'B':
            case 'C': return 2 * n * n;
            case 'D': return 2 * n * (n - 1);
            case 'E': return rank == 6 ? 72 : rank == 7 ? 126 : 240;
            case 'F': return 48;
            case 'G': return 12;
        }
        return 0;
    }

    long long dimension() const { return root_count() + rank; }
};

/// A linear functional in fundamental-weight coordinates: coords[i] = <lambda, alpha_i^vee>.
using Functional = QVec;

/// Root system of a product of simple types. Roots are integer vectors in
/// simple-root coordinates, positives first in (height, lex) order, then the
/// negatives in matching order.
class RootDatum {
public:
    static RootDatum build(std::vector<CartanType> factors) {
        for (auto& t : factors) t.validate();
        RootDatum R;
        R.factors_ = std::move(factors);
        R.n_ = 0;
        for (const auto& t : R.factors_) {
            R.offsets_.push_back(R.n_);
            R.n_ += size_t(t.rank);
        }
        R.build_cartan();
        R.enumerate_roots();
        R.build_coroots();
        return R;
    }

    size_t rank() const { return n_; }
    const std::vector<CartanType>& factors() const { return factors_; }
    size_t factor_offset(size_t f) const { return offsets_[f]; }
    bool simple() const { return factors_.size() == 1; }

    size_t num_roots() const { return roots_.size(); }
    size_t num_positive() const { return roots_.size() / 2; }
    const IVec& root(size_t idx) const { return roots_[idx]; }
    const std::vector<IVec>& roots() const { return roots_; }
    bool is_positive(size_t idx) const { return idx < num_positive(); }
    size_t negative_of(size_t idx) const {
        return idx < num_positive() ? idx + num_positive() : idx - num_positive();
    }

    size_t index_of(const IVec& r) const {
        auto it = index_.find(r);
        if (it == index_.end()) throw precondition_error("vector " + coho::str(r) + " is not a root");
        return it->second;
    }
    bool is_root(const IVec& r) const { return index_.count(r) != 0; }

    /// Cartan pairing A[i][j] = <alpha_j, alpha_i^vee> = 2(alpha_i,alpha_j)/(alpha_i,alpha_i).
    const std::vector<IVec>& cartan_matrix() const { return A_; }

    /// Symmetrizer d_i = (alpha_i,alpha_i)/2 with long roots at squared length 2 per factor.
    const QVec& symmetrizer() const { return d_; }

    /// Coroot of roots_[idx] in simple-coroot coordinates (always integral).
    const IVec& coroot(size_t idx) const { return coroots_[idx]; }

    const Rat& length2(size_t idx) const { return len2_[idx]; }

    /// <lambda, alpha^vee> for lambda in fundamental-weight coordinates.
    Rat pairing(const Functional& lam, size_t root_idx) const {
        if (lam.size() != n_) throw precondition_error("functional has wrong rank");
        Rat s;
        const IVec& cv = coroots_[root_idx];
        for (size_t j = 0; j < n_; ++j)
            if (cv[j] != 0) s += lam[j] * Rat(cv[j]);
        return s;
    }

    std::int64_t pairing_int(const IVec& lam, size_t root_idx) const {
        return dot_i(lam, coroots_[root_idx]);
    }

    /// <root r, alpha_i^vee> from simple-root coordinates.
    std::int64_t simple_coroot_pairing(const IVec& r, size_t i) const {
        std::int64_t s = 0;
        for (size_t j = 0; j < n_; ++j) s += A_[i][j] * r[j];
        return s;
    }

    /// <r, beta^vee> for two roots given as coordinate vectors.
    std::int64_t root_pairing(const IVec& r, size_t beta_idx) const {
        // 2 (r, beta) / (beta, beta)
        Rat num = form(r, roots_[beta_idx]);
        Rat v = Rat(2) * num / len2_[beta_idx];
        return v.as_integer();
    }

    /// Invariant symmetric form on root-coordinate vectors.
    Rat form(const IVec& x, const IVec& y) const {
        Rat s;
        for (size_t i = 0; i < n_; ++i) {
            if (x[i] == 0) continue;
            for (size_t j = 0; j < n_; ++j)
                if (y[j] != 0) s += Rat(x[i]) * F_[i][j] * Rat(y[j]);
        }
        return s;
    }

    Rat form_q(const QVec& x, const QVec& y) const {
        Rat s;
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j) s += x[i] * F_[i][j] * y[j];
        return s;
    }

    /// s_{alpha_i} acting on root-coordinate vectors.
    IVec reflect_simple(IVec r, size_t i) const {
        std::int64_t p = simple_coroot_pairing(r, i);
        r[i] -= p;
        return r;
    }

    /// s_beta acting on a root, by index.
    size_t reflect_root(size_t r_idx, size_t beta_idx) const {
        IVec r = roots_[r_idx];
        std::int64_t p = root_pairing(r, beta_idx);
        const IVec& b = roots_[beta_idx];
        for (size_t j = 0; j < n_; ++j) r[j] -= p * b[j];
        return index_of(r);
    }

    /// s_{alpha_j} on coweights held in root-evaluation coordinates,
    /// y_i = <alpha_i, x>; the fundamental coweights are the unit vectors.
    IVec coreflect_simple(IVec y, size_t j) const {
        std::int64_t yj = y[j];
        if (yj == 0) return y;
        for (size_t i = 0; i < n_; ++i) y[i] -= detail::mul_i64(A_[j][i], yj);
        return y;
    }

    /// <root, x> for a coweight in root-evaluation coordinates.
    std::int64_t eval_root_at(size_t root_idx, const IVec& y) const {
        return dot_i(roots_[root_idx], y);
    }

    /// s_{alpha_i} on functionals in fundamental-weight coordinates.
    Functional reflect_functional(Functional lam, size_t i) const {
        Rat c = lam[i];
        for (size_t j = 0; j < n_; ++j) lam[j] -= c * Rat(A_[j][i]);
        return lam;
    }

    std::int64_t height(size_t idx) const {
        std::int64_t h = 0;
        for (auto c : roots_[idx]) h += c;
        return h;
    }

    /// rho in fundamental-weight coordinates (all ones) -- asserted against the half sum.
    Functional rho() const { return Functional(n_, Rat(1)); }

    /// Half-sum of positive roots in root coordinates.
    QVec rho_root_coords() const {
        QVec s(n_);
        for (size_t i = 0; i < num_positive(); ++i)
            for (size_t j = 0; j < n_; ++j) s[j] += Rat(roots_[i][j]);
        for (auto& x : s) x = x / Rat(2);
        return s;
    }

    /// Half-sum of positive coroots of roots alpha with alpha/2 not a root,
    /// in simple-coroot coordinates. On reduced systems the filter is vacuous.
    QVec rho_check() const {
        QVec s(n_);
        for (size_t i = 0; i < num_positive(); ++i) {
            IVec half = roots_[i];
            bool halvable = true;
            for (auto& c : half) {
                if (c % 2 != 0) {
                    halvable = false;
                    break;
                }
                c /= 2;
            }
            if (halvable && is_root(half)) continue;
            for (size_t j = 0; j < n_; ++j) s[j] += Rat(coroots_[i][j]);
        }
        for (auto& x : s) x = x / Rat(2);
        return s;
    }

    /// Converts fundamental-weight coordinates to the root-coordinate vector
    /// representing the same functional through the invariant form.
    QVec functional_to_root_coords(const Functional& lam) const {
        QMat m = qmat(n_, n_);
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j) m[i][j] = Rat(A_[i][j]);
        auto u = solve(std::move(m), lam);
        if (!u) throw error("Cartan matrix is singular (internal error)");
        return *u;
    }

    /// evaluation <lambda, x> with lambda in fw coords and x in coroot coords
    Rat eval(const Functional& lam, const QVec& x_coroot) const {
        Rat s;
        for (size_t i = 0; i < n_; ++i) s += lam[i] * x_coroot[i];
        return s;
    }

    std::string str() const {
        std::string s;
        for (size_t f = 0; f < factors_.size(); ++f) {
            if (f) s += "x";
            s += factors_[f].str();
        }
        return s;
    }

private:
    void build_cartan() {
        A_.assign(n_, IVec(n_, 0));
        d_.assign(n_, Rat(1));
        for (size_t f = 0; f < factors_.size(); ++f) fill_factor(factors_[f], offsets_[f]);
        F_ = qmat(n_, n_);
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j) F_[i][j] = d_[i] * Rat(A_[i][j]);
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j)
                if (F_[i][j] != F_[j][i]) throw error("symmetrizer failure (internal)");
    }

    void bond(size_t i, size_t j, int aij, int aji) {
        A_[i][j] = aij;
        A_[j][i] = aji;
    }

    void fill_factor(const CartanType& t, size_t off) {
        size_t n = size_t(t.rank);
        for (size_t i = 0; i < n; ++i) A_[off + i][off + i] = 2;
        auto chain = [&](size_t upto) {
            for (size_t i = 0; i + 1 < upto; ++i) bond(off + i, off + i + 1, -1, -1);
        };
        switch (t.series) {
            case 'A':
                chain(n);
                break;
            case 'B': // alpha_n short
                chain(n);
                bond(off + n - 2, off + n - 1, -1, -2);
                for (size_t i = 0; i < n - 1; ++i) d_[off + i] = Rat(1);
                d_[off + n - 1] = Rat(1, 2);
                break;
            case 'C': // alpha_n long
                chain(n);
                bond(off + n - 2, off + n - 1, -2, -1);
                for (size_t i = 0; i < n - 1; ++i) d_[off + i] = Rat(1, 2);
                d_[off + n - 1] = Rat(1);
                break;
            case 'D':
                chain(n - 1);
                bond(off + n - 3, off + n - 1, -1, -1);
                break;
            case 'E':
                // Bourbaki: chain 1-3-4-5-6(-7)(-8), node 2 attached to node 4
                bond(off + 0, off + 2, -1, -1);
                bond(off + 1, off + 3, -1, -1);
                for (size_t i = 2; i + 1 < n; ++i) bond(off + i, off + i + 1, -1, -1);
                break;
            case 'F': // alpha_1, alpha_2 long; alpha_3, alpha_4 short
                chain(n);
                bond(off + 1, off + 2, -1, -2);
                d_[off + 2] = d_[off + 3] = Rat(1, 2);
                break;
            case 'G': // alpha_1 short, alpha_2 long
                bond(off + 0, off + 1, -3, -1);
                d_[off + 0] = Rat(1, 3);
                break;
        }
    }

    void enumerate_roots() {
        std::set<IVec> all;
        std::vector<IVec> frontier;
        for (size_t i = 0; i < n_; ++i) {
            IVec e(n_, 0);
            e[i] = 1;
            all.insert(e);
            frontier.push_back(e);
        }
        while (!frontier.empty()) {
            std::vector<IVec> next;
            for (const auto& r : frontier)
                for (size_t i = 0; i < n_; ++i) {
                    IVec s = reflect_simple(r, i);
                    if (all.insert(s).second) next.push_back(s);
                }
            frontier = std::move(next);
        }
        std::vector<IVec> pos;
        for (const auto& r : all) {
            bool nonneg = std::all_of(r.begin(), r.end(), [](std::int64_t c) { return c >= 0; });
            bool nonpos = std::all_of(r.begin(), r.end(), [](std::int64_t c) { return c <= 0; });
            if (!nonneg && !nonpos)
                throw error("root with mixed coordinate signs (internal)");
            if (nonneg) pos.push_back(r);
        }
        auto ht = [](const IVec& r) {
            std::int64_t h = 0;
            for (auto c : r) h += c;
            return h;
        };
        std::sort(pos.begin(), pos.end(), [&](const IVec& a, const IVec& b) {
            auto ha = ht(a), hb = ht(b);
            if (ha != hb) return ha < hb;
            return a < b;
        });
        roots_ = pos;
        for (const auto& r : pos) {
            IVec m(r.size());
            for (size_t j = 0; j < r.size(); ++j) m[j] = -r[j];
            roots_.push_back(std::move(m));
        }
        for (size_t i = 0; i < roots_.size(); ++i) index_[roots_[i]] = i;
        long long expected = 0;
        for (const auto& t : factors_) expected += t.root_count();
        if ((long long)roots_.size() != expected)
            throw error("root count mismatch for " + str() + " (internal)");
    }

    void build_coroots() {
        coroots_.reserve(roots_.size());
        len2_.reserve(roots_.size());
        for (const auto& r : roots_) {
            Rat l2 = form(r, r);
            IVec cv(n_);
            for (size_t j = 0; j < n_; ++j) {
                Rat k = Rat(2) * Rat(r[j]) * d_[j] / l2;
                cv[j] = k.as_integer();
            }
            len2_.push_back(l2);
            coroots_.push_back(std::move(cv));
        }
        // <alpha, alpha^vee> = 2 for every root
        for (size_t i = 0; i < roots_.size(); ++i)
            if (self_pairing(i) != 2)
                throw error("coroot normalization failure (internal)");
    }

    // <alpha, alpha^vee> through the Cartan matrix
    std::int64_t self_pairing(size_t idx) const {
        __int128 s = 0;
        for (size_t i = 0; i < n_; ++i) {
            std::int64_t p = 0;
            for (size_t j = 0; j < n_; ++j) p += A_[i][j] * roots_[idx][j];
            s += __int128(p) * coroots_[idx][i];
        }
        return detail::narrow(s, "pairing check");
    }

    std::vector<CartanType> factors_;
    std::vector<size_t> offsets_;
    size_t n_ = 0;
    std::vector<IVec> A_;
    QVec d_;
    QMat F_;
    std::vector<IVec> roots_;
    std::map<IVec, size_t> index_;
    std::vector<IVec> coroots_;
    std::vector<Rat> len2_;
};

/// A simple root system per the library contract; products appear only inside
/// real-form internals.
using RootSystem = RootDatum;

inline RootSystem build_root_system(const CartanType& t) { return RootDatum::build({t}); }

/// Standard parabolic data: the Levi subset of simple indices.
struct ParabolicSubset {
    std::set<size_t> levi; // 0-based simple indices

    bool is_proper(size_t rank) const { return levi.size() < rank; }
    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (auto i : levi) {
            if (!first) s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
        return s + "}";
    }
};

struct ParabolicSplit {
    std::vector<size_t> levi_roots;      // both signs
    std::vector<size_t> nilradical_roots; // positive side only
};

inline ParabolicSplit parabolic_split(const RootDatum& R, const ParabolicSubset& S) {
    for (auto i : S.levi)
        if (i >= R.rank()) throw precondition_error("parabolic subset index out of range");
    ParabolicSplit out;
    for (size_t idx = 0; idx < R.num_roots(); ++idx) {
        const IVec& r = R.root(idx);
        bool in_levi = true;
        for (size_t j = 0; j < R.rank(); ++j)
            if (r[j] != 0 && !S.levi.count(j)) {
                in_levi = false;
                break;
            }
        if (in_levi)
            out.levi_roots.push_back(idx);
        else if (R.is_positive(idx))
            out.nilradical_roots.push_back(idx);
    }
    return out;
}

/// Weyl-orbit of a coweight (simple-coroot coordinates) by breadth-first closure.
inline std::set<IVec> coweight_orbit(const RootDatum& R, const IVec& start) {
    std::set<IVec> orbit{start};
    std::vector<IVec> frontier{start};
    while (!frontier.empty()) {
        std::vector<IVec> next;
        for (const auto& x : frontier)
            for (size_t i = 0; i < R.rank(); ++i) {
                IVec y = R.coreflect_simple(x, i);
                if (orbit.insert(y).second) next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    return orbit;
}

} // namespace coho
