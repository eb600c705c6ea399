#pragma once

#include "coho/realform.hpp"

namespace coho {

/// Result of placing nu in the disjoint cone decomposition of the dual of a0:
/// the unique standard parabolic cell with the dominant projection and the
/// nonnegative cone coefficients of the difference.
struct ConeDecomposition {
    std::set<size_t> levi;  // restricted simple indices of the cell's parabolic
    QVec nu_plus;           // restricted fundamental-weight coordinates
    QVec cone_coefficients; // one per Levi index, all >= 0; nu = nu_plus - sum c_i beta_i
};

/// Membership of x in the cone spanned by the generators: either nonnegative
/// coefficients or a separating certificate.
struct ConeMembership {
    bool inside = false;
    QVec coefficients;
    QVec certificate; // <certificate, g_i> <= 0 for all i, <certificate, x> > 0
};

inline ConeMembership cone_membership(const QVec& x, const std::vector<QVec>& generators) {
    if (x.size() > 8) throw precondition_error("cone membership limited to dimension 8");
    for (const auto& g : generators)
        if (g.size() != x.size())
            throw precondition_error("cone generators live in mismatched dimensions");
    auto res = cone_decompose(generators, x);
    ConeMembership out;
    out.inside = res.inside;
    if (res.inside)
        out.coefficients = res.coefficients;
    else
        out.certificate = res.separator;
    return out;
}

/// Fundamental-weight coordinates of the i-th reduced simple restricted root.
inline QVec restricted_simple_fw(const RestrictedRootSystem& rs, size_t i) {
    QVec fw(rs.rank);
    for (size_t j = 0; j < rs.rank; ++j) fw[j] = Rat(rs.reduced_cartan[j][i]);
    return fw;
}

/// Dominance of a positive character of the Levi: nu lives on the split
/// center of the Levi (vanishing pairings with the S-coroots) and must pair
/// nonnegatively with every nilradical root.
inline bool is_dominant(const RealForm& f, const std::set<size_t>& S, const QVec& nu) {
    auto rs = restricted_root_system(f);
    if (nu.size() != rs.rank)
        throw precondition_error("nu has rank " + std::to_string(nu.size()) + ", expected " +
                                 std::to_string(rs.rank));
    for (auto i : S) {
        if (i >= rs.rank) throw precondition_error("Levi index out of range");
        if (!nu[i].is_zero())
            throw precondition_error("nu does not vanish on the Levi part: coordinate " +
                                     std::to_string(i + 1));
    }
    for (size_t k = 0; k < rs.roots.size(); ++k) {
        if (!rs.is_positive(k)) continue;
        bool in_levi = true;
        for (size_t i = 0; i < rs.rank; ++i)
            if (rs.roots[k][i] != 0 && !S.count(i)) in_levi = false;
        if (in_levi) continue;
        if (rs.pairing(nu, k) < Rat(0)) return false;
    }
    return true;
}

/// The Langlands decomposition of the dual of a0: tests every standard
/// parabolic cell and returns the unique one containing nu. Zero or multiple
/// matches signal an implementation bug, never a data condition.
inline ConeDecomposition langlands_decompose(const RestrictedRootSystem& rs, const QVec& nu) {
    if (nu.size() != rs.rank)
        throw precondition_error("nu has rank " + std::to_string(nu.size()) + ", expected " +
                                 std::to_string(rs.rank));
    std::optional<ConeDecomposition> found;
    size_t matches = 0;
    for (size_t mask = 0; mask < (size_t(1) << rs.rank); ++mask) {
        std::set<size_t> S;
        for (size_t i = 0; i < rs.rank; ++i)
            if (mask & (size_t(1) << i)) S.insert(i);
        // split nu = nu_P + nu^P along the direct sum dual to a_0 = a_P + a_0^P
        std::vector<size_t> sv(S.begin(), S.end());
        QMat m(sv.size(), QVec(sv.size()));
        QVec rhs(sv.size());
        for (size_t r = 0; r < sv.size(); ++r) {
            rhs[r] = nu[sv[r]];
            for (size_t c = 0; c < sv.size(); ++c)
                m[r][c] = Rat(rs.reduced_cartan[sv[r]][sv[c]]);
        }
        auto t = solve(m, rhs);
        if (!t) throw error("principal submatrix of a Cartan matrix is singular (internal)");
        QVec nu_p = nu;
        for (size_t c = 0; c < sv.size(); ++c) {
            QVec fw = restricted_simple_fw(rs, sv[c]);
            for (size_t j = 0; j < rs.rank; ++j) nu_p[j] -= (*t)[c] * fw[j];
        }
        // strict dominance of the projection off the Levi
        bool strict = true;
        for (size_t j = 0; j < rs.rank && strict; ++j)
            if (!S.count(j) && !(nu_p[j] > Rat(0))) strict = false;
        if (!strict) continue;
        // cone condition on the difference, routed through the membership test
        QVec diff = sub(nu_p, nu);
        std::vector<QVec> gens;
        for (auto i : S) gens.push_back(restricted_simple_fw(rs, i));
        auto member = cone_membership(diff, gens);
        if (!member.inside) continue;
        ++matches;
        ConeDecomposition out;
        out.levi = S;
        out.nu_plus = nu_p;
        out.cone_coefficients = member.coefficients;
        found = out;
    }
    if (matches != 1)
        throw error("Langlands decomposition found " + std::to_string(matches) +
                    " cells instead of one (internal)");
    return *found;
}

} // namespace coho
