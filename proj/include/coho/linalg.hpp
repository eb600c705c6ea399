#pragma once

#include <algorithm>
#include <numeric>
#include <optional>

#include "coho/rational.hpp"

namespace coho {

/// Dense rational matrix, row-major.
using QMat = std::vector<QVec>;

inline QMat qmat(size_t rows, size_t cols) { return QMat(rows, QVec(cols)); }

inline Rat dot(const QVec& a, const QVec& b) {
    Rat s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline std::int64_t dot_i(const IVec& a, const IVec& b) {
    __int128 s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += __int128(a[i]) * b[i];
    return detail::narrow(s, "integer dot product");
}

inline QVec mat_apply(const QMat& m, const QVec& v) {
    QVec out(m.size());
    for (size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
    return out;
}

inline QVec add(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline QVec sub(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline QVec scale(const QVec& a, const Rat& c) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

inline bool is_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.is_zero(); });
}

/// In-place Gauss reduction to row echelon form; returns pivot column per row.
inline std::vector<size_t> row_echelon(QMat& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t cols = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        size_t sel = row;
        while (sel < m.size() && m[sel][col].is_zero()) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        Rat inv = Rat(1) / m[row][col];
        for (size_t j = col; j < cols; ++j) m[row][j] *= inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            Rat f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline size_t rank(QMat m) { return row_echelon(m).size(); }

/// Basis of the right kernel {x : m x = 0}.
inline std::vector<QVec> kernel_basis(QMat m, size_t cols) {
    auto pivots = row_echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        QVec v(cols);
        v[free] = Rat(1);
        for (size_t r = 0; r < pivots.size(); ++r) {
            // reduced echelon: row r reads x[pivot_r] + sum coef*x[free] = 0
            v[pivots[r]] = -m[r][free];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves m x = rhs exactly; nullopt if inconsistent. m need not be square.
inline std::optional<QVec> solve(QMat m, QVec rhs) {
    size_t cols = m.empty() ? 0 : m[0].size();
    for (size_t i = 0; i < m.size(); ++i) m[i].push_back(rhs[i]);
    auto pivots = row_echelon(m);
    QVec x(cols);
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) return std::nullopt; // pivot in rhs column
        x[pivots[r]] = m[r][cols];
    }
    // verify: guards against underdetermined inconsistencies
    for (size_t i = pivots.size(); i < m.size(); ++i)
        if (!m[i][cols].is_zero()) return std::nullopt;
    return x;
}

/// Clears denominators and content. Keeps the direction.
inline IVec primitive_integer_directed(const QVec& v) {
    std::int64_t lcm = 1;
    for (const auto& x : v) lcm = detail::mul_i64(lcm / std::gcd(lcm, x.den()), x.den());
    IVec out(v.size());
    std::int64_t g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        out[i] = detail::mul_i64(v[i].num(), lcm / v[i].den());
        g = std::gcd(g, out[i] < 0 ? -out[i] : out[i]);
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

/// Clears denominators and content, then flips so the first nonzero entry is
/// positive. Canonical representative of a line, not of a direction.
inline IVec primitive_integer(const QVec& v) {
    IVec out = primitive_integer_directed(v);
    for (auto& x : out) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : out) y = -y;
        break;
    }
    return out;
}

/// One homogeneous constraint: a.x > 0 when strict, else a.x >= 0.
struct LinIneq {
    QVec a;
    bool strict = false;
};

/// Exact Fourier-Motzkin feasibility with witness extraction for homogeneous
/// systems of dimension <= 8. Equalities enter as paired >= rows.
class FourierMotzkin {
public:
    static std::optional<QVec> witness(std::vector<LinIneq> rows, size_t dim) {
        std::vector<std::vector<LinIneq>> stages;
        stages.reserve(dim);
        for (size_t var = dim; var-- > 0;) {
            stages.push_back(rows);
            rows = eliminate(rows, var);
        }
        // ground level: rows are constraints on the empty vector; a row that
        // survives is identically zero on x, so strict ones are contradictions
        for (const auto& r : rows)
            if (r.strict) return std::nullopt;
        // back-substitute from variable 0 upward through recorded stages
        QVec x(dim);
        for (size_t var = 0; var < dim; ++var) {
            const auto& stage = stages[dim - 1 - var];
            std::optional<Rat> lo, hi;
            bool lo_strict = false, hi_strict = false;
            for (const auto& r : stage) {
                int s = r.a[var].sign();
                if (s == 0) continue;
                Rat rest;
                for (size_t j = 0; j < var; ++j) rest += r.a[j] * x[j];
                Rat bound = -rest / r.a[var];
                if (s > 0) { // lower bound on x[var]
                    if (!lo || bound > *lo) {
                        lo = bound;
                        lo_strict = r.strict;
                    } else if (bound == *lo) {
                        lo_strict = lo_strict || r.strict;
                    }
                } else { // upper bound
                    if (!hi || bound < *hi) {
                        hi = bound;
                        hi_strict = r.strict;
                    } else if (bound == *hi) {
                        hi_strict = hi_strict || r.strict;
                    }
                }
            }
            if (lo && hi) {
                if (*lo == *hi)
                    x[var] = *lo; // elimination ensured neither side is strict
                else
                    x[var] = (*lo + *hi) / Rat(2);
            } else if (lo) {
                x[var] = lo_strict ? *lo + Rat(1) : *lo;
            } else if (hi) {
                x[var] = hi_strict ? *hi - Rat(1) : *hi;
            } else {
                x[var] = Rat(0);
            }
        }
        // exact final check against the original system
        for (const auto& r : stages.front()) {
            Rat v = dot(r.a, x);
            if (r.strict ? !(v > Rat(0)) : v < Rat(0)) return std::nullopt;
        }
        return x;
    }

    static bool feasible(const std::vector<LinIneq>& rows, size_t dim) {
        return witness(rows, dim).has_value();
    }

private:
    static std::vector<LinIneq> eliminate(const std::vector<LinIneq>& rows, size_t var) {
        std::vector<LinIneq> pos, neg, zero;
        for (const auto& r : rows) {
            int s = r.a[var].sign();
            if (s > 0)
                pos.push_back(r);
            else if (s < 0)
                neg.push_back(r);
            else
                zero.push_back(r);
        }
        std::vector<LinIneq> next = zero;
        for (const auto& p : pos)
            for (const auto& n : neg) {
                LinIneq c;
                c.a = add(scale(p.a, -n.a[var]), scale(n.a, p.a[var]));
                c.strict = p.strict || n.strict;
                if (is_zero(c.a)) {
                    if (c.strict) next.push_back(c); // recorded contradiction
                } else {
                    c.a = to_qvec(primitive_integer_directed(c.a));
                    next.push_back(c);
                }
            }
        return dedup(std::move(next));
    }

    static std::vector<LinIneq> dedup(std::vector<LinIneq> rows) {
        auto key = [](const LinIneq& r) { return std::make_pair(!r.strict, r.a); };
        std::sort(rows.begin(), rows.end(), [&](const LinIneq& a, const LinIneq& b) {
            for (size_t i = 0; i < a.a.size(); ++i) {
                if (a.a[i] < b.a[i]) return true;
                if (b.a[i] < a.a[i]) return false;
            }
            return key(a).first < key(b).first;
        });
        rows.erase(std::unique(rows.begin(), rows.end(),
                               [](const LinIneq& a, const LinIneq& b) {
                                   return a.a == b.a && a.strict == b.strict;
                               }),
                   rows.end());
        return rows;
    }
};

/// Nonnegative solution of G c = x (G given by columns) or a Farkas separator:
/// y with <y,g_i> <= 0 for all i and <y,x> > 0.
struct ConeResult {
    bool inside = false;
    QVec coefficients; // when inside
    QVec separator;    // when outside
};

/// Exact phase-1 simplex with Bland's rule on the system
///   G c = x, c >= 0.
inline ConeResult cone_decompose(const std::vector<QVec>& generators, const QVec& x) {
    size_t dim = x.size();
    size_t n = generators.size();
    // tableau for: minimize sum of artificials s.t. G c + s = x' (rows flipped so rhs >= 0)
    // columns: n generator vars + dim artificial vars
    QMat A = qmat(dim, n + dim);
    QVec rhs = x;
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < n; ++j) A[i][j] = generators[j][i];
        if (rhs[i] < Rat(0)) {
            for (size_t j = 0; j < n; ++j) A[i][j] = -A[i][j];
            rhs[i] = -rhs[i];
        }
        A[i][n + i] = Rat(1);
    }
    std::vector<size_t> basis(dim);
    for (size_t i = 0; i < dim; ++i) basis[i] = n + i;
    // phase-1 objective sum(s) expressed in the nonbasic columns
    QVec obj(n + dim);
    Rat obj_val;
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < n; ++j) obj[j] += A[i][j];
        obj_val += rhs[i];
    }
    auto pivot = [&](size_t row, size_t col) {
        Rat inv = Rat(1) / A[row][col];
        for (auto& v : A[row]) v *= inv;
        rhs[row] *= inv;
        for (size_t i = 0; i < dim; ++i) {
            if (i == row || A[i][col].is_zero()) continue;
            Rat f = A[i][col];
            for (size_t j = 0; j < n + dim; ++j) A[i][j] -= f * A[row][j];
            rhs[i] -= f * rhs[row];
        }
        Rat f = obj[col];
        if (!f.is_zero()) {
            for (size_t j = 0; j < n + dim; ++j) obj[j] -= f * A[row][j];
            obj_val -= f * rhs[row];
        }
        basis[row] = col;
    };
    while (true) {
        size_t enter = n + dim;
        for (size_t j = 0; j < n + dim; ++j) // Bland: first improving column
            if (obj[j] > Rat(0)) {
                enter = j;
                break;
            }
        if (enter == n + dim) break;
        size_t leave = dim;
        Rat best;
        for (size_t i = 0; i < dim; ++i) {
            if (A[i][enter] <= Rat(0)) continue;
            Rat ratio = rhs[i] / A[i][enter];
            if (leave == dim || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == dim) break; // unbounded cannot happen in phase 1
        pivot(leave, enter);
    }
    ConeResult res;
    if (obj_val.is_zero()) {
        res.inside = true;
        res.coefficients.assign(n, Rat(0));
        for (size_t i = 0; i < dim; ++i)
            if (basis[i] < n) res.coefficients[basis[i]] = rhs[i];
        // exact recheck of G c = x
        QVec check(dim);
        for (size_t j = 0; j < n; ++j)
            for (size_t i = 0; i < dim; ++i) check[i] += generators[j][i] * res.coefficients[j];
        if (check != x) throw error("cone_decompose: internal coefficient extraction failure");
        return res;
    }
    // Farkas: x outside the cone, so some y has <g_i,y> <= 0 for all i and <x,y> > 0.
    res.inside = false;
    std::vector<LinIneq> dual;
    for (const auto& g : generators) dual.push_back({scale(g, Rat(-1)), false});
    dual.push_back({x, true});
    auto y = FourierMotzkin::witness(dual, dim);
    if (!y) throw error("cone_decompose: Farkas certificate not found (internal error)");
    res.separator = *y;
    return res;
}

} // namespace coho
