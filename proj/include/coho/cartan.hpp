#pragma once

#include "coho/realform.hpp"

namespace coho {

/// A theta-stable Cartan subalgebra, represented by the induced involution on
/// the root lattice together with the compactness grading on imaginary roots.
/// All Cartans of one form live on the same lattice; Cayley transforms twist
/// the involution by a reflection.
struct ThetaCartan {
    const RealForm* form = nullptr;
    std::vector<IVec> theta;       // involution matrix on root coordinates
    std::vector<RootClass> cls;    // per root index
    std::vector<int> eps;          // grading; meaningful on imaginary roots
    size_t dim_t = 0, dim_a = 0;
    std::vector<size_t> provenance; // root indices of the Cayley steps taken

    IVec apply(const IVec& r) const {
        size_t n = r.size();
        IVec out(n, 0);
        for (size_t i = 0; i < n; ++i) {
            __int128 s = 0;
            for (size_t j = 0; j < n; ++j) s += __int128(theta[i][j]) * r[j];
            out[i] = detail::narrow(s, "theta action");
        }
        return out;
    }

    bool has_noncompact_imaginary() const {
        for (auto c : cls)
            if (c == RootClass::imaginary_noncompact) return true;
        return false;
    }

    /// doubled restriction to the split part: alpha - theta(alpha)
    IVec split_restriction(size_t idx) const {
        const IVec& r = form->datum.root(idx);
        IVec img = apply(r);
        IVec out(r.size());
        for (size_t i = 0; i < r.size(); ++i) out[i] = r[i] - img[i];
        return out;
    }

    /// doubled restriction to the compact part: alpha + theta(alpha)
    IVec compact_restriction(size_t idx) const {
        const IVec& r = form->datum.root(idx);
        IVec img = apply(r);
        IVec out(r.size());
        for (size_t i = 0; i < r.size(); ++i) out[i] = r[i] + img[i];
        return out;
    }

    std::string signature() const {
        const RootDatum& R = form->datum;
        std::map<std::string, int> counts;
        auto label = [&](size_t i) {
            std::string key = to_string(cls[i]) + "|" + R.length2(i).str();
            if (cls[i] == RootClass::imaginary_compact || cls[i] == RootClass::imaginary_noncompact)
                key += "|e" + std::to_string(eps[i]);
            return key;
        };
        for (size_t i = 0; i < R.num_roots(); ++i) {
            std::string key = label(i);
            IVec rest = split_restriction(i);
            key += "|n" + R.form(rest, rest).str();
            counts[key]++;
        }
        // sum-closure profile: how often classes add to classes, which sees
        // relative positions the plain counts miss
        std::map<std::string, int> pair_counts;
        for (size_t i = 0; i < R.num_roots(); ++i)
            for (size_t j = i; j < R.num_roots(); ++j) {
                IVec sum(R.rank());
                for (size_t k = 0; k < R.rank(); ++k) sum[k] = R.root(i)[k] + R.root(j)[k];
                if (!R.is_root(sum)) continue;
                std::string a = label(i), b = label(j);
                if (b < a) std::swap(a, b);
                pair_counts[a + "+" + b + ">" + label(R.index_of(sum))]++;
            }
        std::string sig = "t" + std::to_string(dim_t) + "a" + std::to_string(dim_a);
        for (const auto& [k, v] : counts) sig += ";" + k + "x" + std::to_string(v);
        for (const auto& [k, v] : pair_counts) sig += ";" + k + "x" + std::to_string(v);
        return sig;
    }
};

namespace detail_cartan {

inline std::vector<IVec> identity_matrix(size_t n) {
    std::vector<IVec> m(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline std::vector<IVec> reflection_matrix(const RootDatum& R, size_t beta_idx) {
    size_t n = R.rank();
    auto m = identity_matrix(n);
    const IVec& beta = R.root(beta_idx);
    for (size_t j = 0; j < n; ++j) {
        IVec ej(n, 0);
        ej[j] = 1;
        std::int64_t w = R.root_pairing(ej, beta_idx); // <alpha_j, beta^vee>
        for (size_t i = 0; i < n; ++i) m[i][j] -= beta[i] * w;
    }
    return m;
}

inline std::vector<IVec> mat_mul(const std::vector<IVec>& a, const std::vector<IVec>& b) {
    size_t n = a.size();
    std::vector<IVec> c(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j)
                c[i][j] = detail::add_i64(c[i][j], detail::mul_i64(a[i][k], b[k][j]));
        }
    return c;
}

} // namespace detail_cartan

/// Classifies every root under the given involution and derives dims from the
/// trace. Gradings must be supplied by the caller.
inline void reclassify(ThetaCartan& c) {
    const RootDatum& R = c.form->datum;
    size_t n = R.rank();
    c.cls.assign(R.num_roots(), RootClass::complex_pair);
    for (size_t i = 0; i < R.num_roots(); ++i) {
        IVec img = c.apply(R.root(i));
        if (img == R.root(i))
            c.cls[i] = c.eps[i] ? RootClass::imaginary_noncompact : RootClass::imaginary_compact;
        else {
            IVec neg(n);
            for (size_t j = 0; j < n; ++j) neg[j] = -R.root(i)[j];
            c.cls[i] = (img == neg) ? RootClass::real : RootClass::complex_pair;
        }
    }
    std::int64_t tr = 0;
    for (size_t i = 0; i < n; ++i) tr += c.theta[i][i];
    c.dim_t = size_t((std::int64_t(n) + tr) / 2);
    c.dim_a = n - c.dim_t;
}

inline ThetaCartan fundamental_cartan(const RealForm& f) {
    ThetaCartan c;
    c.form = &f;
    size_t n = f.datum.rank();
    c.theta.assign(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i) c.theta[f.vogan.automorphism[i]][i] = 1;
    c.eps.assign(f.datum.num_roots(), 0);
    for (size_t i = 0; i < f.datum.num_roots(); ++i)
        if (f.imaginary(i)) c.eps[i] = f.epsilon(i);
    reclassify(c);
    for (auto cl : c.cls)
        if (cl == RootClass::real)
            throw error("fundamental Cartan with a real root (internal)");
    return c;
}

/// Cayley transform through a noncompact imaginary root beta: beta turns
/// real, imaginary roots orthogonal to beta stay imaginary and flip their
/// compactness exactly when orthogonal but not strongly orthogonal to beta.
inline ThetaCartan cayley_transform(const ThetaCartan& c, size_t beta_idx) {
    const RootDatum& R = c.form->datum;
    if (c.cls[beta_idx] != RootClass::imaginary_noncompact)
        throw precondition_error("Cayley transform requires a noncompact imaginary root, got " +
                                 to_string(c.cls[beta_idx]) + " at " + str(R.root(beta_idx)));
    ThetaCartan out;
    out.form = c.form;
    out.theta = detail_cartan::mat_mul(detail_cartan::reflection_matrix(R, beta_idx), c.theta);
    out.eps.assign(R.num_roots(), 0);
    const IVec& beta = R.root(beta_idx);
    for (size_t i = 0; i < R.num_roots(); ++i) {
        if (out.apply(R.root(i)) != R.root(i)) continue;
        // the new imaginary roots are the old ones orthogonal to beta
        if (c.cls[i] != RootClass::imaginary_compact && c.cls[i] != RootClass::imaginary_noncompact)
            throw error("new imaginary root was not imaginary before Cayley (internal)");
        IVec sum(R.rank());
        for (size_t j = 0; j < R.rank(); ++j) sum[j] = R.root(i)[j] + beta[j];
        int flip = R.is_root(sum) ? 1 : 0;
        out.eps[i] = (c.eps[i] + flip) % 2;
    }
    reclassify(out);
    if (out.dim_t + 1 != c.dim_t || out.dim_a != c.dim_a + 1)
        throw error("Cayley transform did not trade one compact dimension (internal)");
    out.provenance = c.provenance;
    out.provenance.push_back(beta_idx);
    return out;
}

/// Greedy forward Cayley chain; ends at the maximally split Cartan, which is
/// exactly the one without noncompact imaginary roots.
inline ThetaCartan maximally_split_cartan(const RealForm& f) {
    ThetaCartan c = fundamental_cartan(f);
    while (true) {
        size_t pick = c.cls.size();
        for (size_t i = 0; i < c.cls.size(); ++i)
            if (c.cls[i] == RootClass::imaginary_noncompact) {
                pick = i;
                break;
            }
        if (pick == c.cls.size()) break;
        c = cayley_transform(c, pick);
    }
    if (std::int64_t(c.dim_a) != f.satake.dim_a0)
        throw validation_error("form " + f.id + ": Cayley-closure split rank " +
                               std::to_string(c.dim_a) + " mismatches satake dim_a0 " +
                               std::to_string(f.satake.dim_a0));
    return c;
}

namespace detail_cartan {

/// Weyl group as matrices on root coordinates, by closure under the simple
/// reflections. Guarded by size.
inline const std::vector<std::vector<IVec>>& weyl_matrices(const RootDatum& R) {
    static std::map<std::string, std::vector<std::vector<IVec>>> cache;
    auto key = R.str();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<IVec>> gens;
    for (size_t i = 0; i < R.rank(); ++i) {
        IVec simple(R.rank(), 0);
        simple[i] = 1;
        gens.push_back(reflection_matrix(R, R.index_of(simple)));
    }
    std::set<std::vector<IVec>> seen{identity_matrix(R.rank())};
    std::vector<std::vector<IVec>> frontier{identity_matrix(R.rank())};
    while (!frontier.empty()) {
        std::vector<std::vector<IVec>> next;
        for (const auto& w : frontier)
            for (const auto& g : gens) {
                auto wg = mat_mul(g, w);
                if (seen.insert(wg).second) next.push_back(wg);
                if (seen.size() > 60000)
                    throw unsupported_error("Weyl group too large to enumerate for " + R.str());
            }
        frontier = std::move(next);
    }
    auto& slot = cache[key];
    slot.assign(seen.begin(), seen.end());
    return slot;
}

inline bool conjugate_cartans(const ThetaCartan& a, const ThetaCartan& b) {
    const RootDatum& R = a.form->datum;
    for (const auto& w : weyl_matrices(R)) {
        // check M_b w == w M_a and matching gradings
        if (mat_mul(b.theta, w) != mat_mul(w, a.theta)) continue;
        bool ok = true;
        for (size_t i = 0; i < R.num_roots() && ok; ++i) {
            if (a.cls[i] != RootClass::imaginary_compact &&
                a.cls[i] != RootClass::imaginary_noncompact)
                continue;
            IVec img(R.rank(), 0);
            for (size_t x = 0; x < R.rank(); ++x) {
                __int128 s = 0;
                for (size_t y = 0; y < R.rank(); ++y) s += __int128(w[x][y]) * R.root(i)[y];
                img[x] = detail::narrow(s, "Weyl action");
            }
            size_t j = R.index_of(img);
            if (b.eps[j] != a.eps[i]) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

} // namespace detail_cartan

/// All theta-stable Cartan subalgebras up to conjugacy: closure of the
/// fundamental Cartan under Cayley transforms. Classes are held up to Weyl
/// conjugacy of the involution together with its grading; the signature only
/// routes candidates to the exact conjugacy test, so equal signatures can
/// legitimately hold several classes (the triality-related Cartans of
/// so(4,4) are the standard case).
inline std::vector<ThetaCartan> enumerate_cartans(const RealForm& f) {
    if (f.datum.rank() > 6)
        throw unsupported_error("enumerate_cartans exceeds the rank-6 limit for " + f.id);
    std::map<std::string, std::vector<ThetaCartan>> classes;
    ThetaCartan fund = fundamental_cartan(f);
    classes[fund.signature()].push_back(fund);
    std::vector<ThetaCartan> frontier{fund};
    while (!frontier.empty()) {
        std::vector<ThetaCartan> next;
        for (const auto& c : frontier)
            for (size_t i = 0; i < c.cls.size(); ++i) {
                if (c.cls[i] != RootClass::imaginary_noncompact) continue;
                ThetaCartan t = cayley_transform(c, i);
                auto& bucket = classes[t.signature()];
                bool known = false;
                for (const auto& existing : bucket) {
                    if (existing.theta == t.theta && existing.eps == t.eps) {
                        known = true;
                        break;
                    }
                    if (detail_cartan::conjugate_cartans(existing, t)) {
                        known = true;
                        break;
                    }
                }
                if (!known) {
                    bucket.push_back(t);
                    next.push_back(t);
                }
            }
        frontier = std::move(next);
    }
    std::vector<ThetaCartan> out;
    for (auto& [sig, bucket] : classes)
        for (auto& c : bucket) out.push_back(c);
    std::sort(out.begin(), out.end(), [](const ThetaCartan& x, const ThetaCartan& y) {
        if (x.dim_a != y.dim_a) return x.dim_a < y.dim_a;
        return x.signature() < y.signature();
    });
    return out;
}

/// The maximally split Cartan together with the identification of its computed
/// restricted-root structure with the form's Satake record.
struct MaxSplitAnalysis {
    ThetaCartan cartan;
    RestrictedRootSystem descriptor_system;
    std::vector<IVec> computed_simple;   // doubled restriction vectors in root coords
    std::vector<size_t> desc_to_computed; // descriptor simple index -> computed_simple index

    /// doubled restriction vector for the descriptor-basis root with
    /// coordinates c (reduced basis).
    IVec descriptor_to_ambient(const IVec& c) const {
        size_t n = computed_simple[0].size();
        IVec out(n, 0);
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < n; ++j)
                out[j] += c[i] * computed_simple[desc_to_computed[i]][j];
        return out;
    }
};

inline bool lex_positive(const IVec& v) {
    for (auto x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false;
}

/// Cross-validates the Cayley-closure endpoint against the Satake record:
/// the multiset of nonzero split restrictions must realize the descriptor's
/// restricted root system with multiplicities.
inline MaxSplitAnalysis analyze_max_split(const RealForm& f) {
    if (f.compact())
        throw precondition_error("form " + f.id + " is compact: no restricted structure");
    MaxSplitAnalysis out;
    out.cartan = maximally_split_cartan(f);
    out.descriptor_system = restricted_root_system(f);
    const RootDatum& R = f.datum;
    const auto& rs = out.descriptor_system;

    // multiset of nonzero doubled restrictions
    std::map<IVec, std::int64_t> mult;
    for (size_t i = 0; i < R.num_roots(); ++i) {
        IVec rest = out.cartan.split_restriction(i);
        if (std::all_of(rest.begin(), rest.end(), [](std::int64_t x) { return x == 0; })) continue;
        mult[rest]++;
    }
    // reduced positives and simples
    std::vector<IVec> reduced;
    for (const auto& [v, m] : mult) {
        if (!lex_positive(v)) continue;
        IVec half = v;
        bool halvable = true;
        for (auto& x : half) {
            if (x % 2) {
                halvable = false;
                break;
            }
            x /= 2;
        }
        if (halvable && mult.count(half)) continue; // a doubled root
        reduced.push_back(v);
    }
    std::set<IVec> reduced_set(reduced.begin(), reduced.end());
    for (const auto& v : reduced) {
        bool decomposable = false;
        for (const auto& w : reduced) {
            IVec diff(v.size());
            for (size_t j = 0; j < v.size(); ++j) diff[j] = v[j] - w[j];
            if (w != v && reduced_set.count(diff)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) out.computed_simple.push_back(v);
    }
    std::sort(out.computed_simple.begin(), out.computed_simple.end());
    if (out.computed_simple.size() != rs.rank)
        throw validation_error("form " + f.id + ": computed restricted rank " +
                               std::to_string(out.computed_simple.size()) +
                               " mismatches descriptor rank " + std::to_string(rs.rank));

    // computed Cartan numbers between simples, same convention as
    // RootDatum::cartan_matrix: C[i][j] = 2(s_i, s_j)/(s_i, s_i)
    size_t l = rs.rank;
    auto cart = [&](size_t i, size_t j) {
        Rat v = Rat(2) * R.form(out.computed_simple[i], out.computed_simple[j]) /
                R.form(out.computed_simple[i], out.computed_simple[i]);
        return v.as_integer();
    };
    // descriptor simple multiplicities
    auto desc_simple_mult = [&](size_t i) {
        IVec e(l, 0);
        e[i] = 1;
        for (size_t k = 0; k < rs.roots.size(); ++k)
            if (rs.roots[k] == e) return rs.mult[k];
        throw error("descriptor simple root missing (internal)");
    };
    auto computed_mult = [&](const IVec& v) -> std::int64_t {
        auto it = mult.find(v);
        return it == mult.end() ? 0 : it->second;
    };
    // match descriptor basis onto computed basis: backtracking, lex-first
    std::vector<size_t> assign(l, l);
    std::vector<bool> used(l, false);
    std::function<bool(size_t)> place = [&](size_t i) -> bool {
        if (i == l) return true;
        for (size_t cand = 0; cand < l; ++cand) {
            if (used[cand]) continue;
            if (computed_mult(out.computed_simple[cand]) != desc_simple_mult(i)) continue;
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j) {
                if (cart(cand, assign[j]) != rs.reduced_cartan[i][j]) ok = false;
                if (ok && cart(assign[j], cand) != rs.reduced_cartan[j][i]) ok = false;
            }
            if (!ok) continue;
            assign[i] = cand;
            used[cand] = true;
            if (place(i + 1)) return true;
            used[cand] = false;
        }
        return false;
    };
    if (!place(0))
        throw validation_error("form " + f.id +
                               ": computed restricted basis does not match the Satake record");
    out.desc_to_computed = assign;

    // full multiset comparison, doubles included
    std::map<IVec, std::int64_t> expected;
    for (size_t k = 0; k < rs.roots.size(); ++k)
        expected[out.descriptor_to_ambient(rs.roots[k])] = rs.mult[k];
    if (expected != mult)
        throw validation_error("form " + f.id +
                               ": restriction multiplicities mismatch the Satake record");
    return out;
}

/// Standard parabolic data realized on an adapted Cartan h = c + a + c' + a'.
struct AdaptedCartan {
    ThetaCartan base;
    std::set<size_t> S;                    // descriptor restricted simple indices, 0-based
    std::vector<size_t> levi_roots;        // both signs
    std::vector<size_t> nilradical_roots;  // the positive restricted side
    QMat c_basis, a_basis, cp_basis, ap_basis; // h*-side bases, one row per vector
    QMat proj_a, proj_cp, proj_ap;             // projections in root coordinates
};

namespace detail_cartan {

inline QMat stack_conditions(const RootDatum& R, const std::vector<QVec>& vectors) {
    // rows v^T F so the kernel is the F-orthogonal complement
    size_t n = R.rank();
    QMat rows;
    for (const auto& v : vectors) {
        QVec row(n);
        for (size_t j = 0; j < n; ++j) {
            IVec ej(n, 0);
            ej[j] = 1;
            row[j] = R.form_q(v, to_qvec(ej));
        }
        rows.push_back(row);
    }
    return rows;
}

inline std::vector<QVec> intersect_kernels(QMat a, const QMat& b, size_t n) {
    for (const auto& r : b) a.push_back(r);
    return kernel_basis(std::move(a), n);
}

inline QMat inverse(QMat m) {
    size_t n = m.size();
    for (size_t i = 0; i < n; ++i) {
        m[i].resize(2 * n);
        m[i][n + i] = Rat(1);
    }
    auto piv = row_echelon(m);
    if (piv.size() != n || piv.back() >= n) throw error("singular matrix inversion (internal)");
    QMat inv(n, QVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
    return inv;
}

} // namespace detail_cartan

/// Inverse Cayley transform through a real root gamma: gamma turns noncompact
/// imaginary. Imaginary roots orthogonal to gamma flip compactness when not
/// strongly orthogonal; complex pairs {d, s_gamma d} can turn imaginary, and
/// their gradings are pinned down by Z/2 additivity where relations exist.
/// Descent is genuinely multivalued, so all additively consistent gradings
/// are returned; the caller validates and picks.
inline std::vector<ThetaCartan> inverse_cayley_candidates(const ThetaCartan& c, size_t gamma_idx) {
    const RootDatum& R = c.form->datum;
    if (c.cls[gamma_idx] != RootClass::real)
        throw precondition_error("inverse Cayley transform requires a real root, got " +
                                 to_string(c.cls[gamma_idx]));
    ThetaCartan base;
    base.form = c.form;
    base.theta = detail_cartan::mat_mul(detail_cartan::reflection_matrix(R, gamma_idx), c.theta);
    base.provenance = c.provenance;
    base.provenance.push_back(gamma_idx);
    const IVec& gamma = R.root(gamma_idx);

    // new imaginary roots and the known part of the grading
    std::vector<size_t> imag;
    std::map<size_t, int> known;
    std::vector<size_t> unknown;
    for (size_t i = 0; i < R.num_roots(); ++i) {
        if (base.apply(R.root(i)) != R.root(i)) continue;
        imag.push_back(i);
        if (i == gamma_idx || i == R.negative_of(gamma_idx)) {
            known[i] = 1;
        } else if (c.cls[i] == RootClass::imaginary_compact ||
                   c.cls[i] == RootClass::imaginary_noncompact) {
            IVec sum(R.rank());
            for (size_t j = 0; j < R.rank(); ++j) sum[j] = R.root(i)[j] + gamma[j];
            known[i] = (c.eps[i] + (R.is_root(sum) ? 1 : 0)) % 2;
        } else {
            unknown.push_back(i);
        }
    }
    // identify unknowns with their negatives and solve the additivity system
    std::map<size_t, size_t> var_of;
    size_t nvars = 0;
    for (auto i : unknown) {
        size_t rep = std::min(i, R.negative_of(i));
        if (!var_of.count(rep)) var_of[rep] = nvars++;
    }
    std::set<size_t> imag_set(imag.begin(), imag.end());
    // rows over GF(2): nvars coefficients plus one constant column
    std::vector<std::vector<int>> rows;
    auto term = [&](size_t idx, std::vector<int>& row) {
        auto it = known.find(idx);
        if (it != known.end()) {
            row[nvars] ^= it->second;
        } else {
            row[var_of.at(std::min(idx, R.negative_of(idx)))] ^= 1;
        }
    };
    for (size_t x : imag)
        for (size_t y : imag) {
            if (y < x) continue;
            IVec sum(R.rank());
            for (size_t j = 0; j < R.rank(); ++j) sum[j] = R.root(x)[j] + R.root(y)[j];
            if (!R.is_root(sum)) continue;
            size_t s = R.index_of(sum);
            if (!imag_set.count(s)) continue;
            std::vector<int> row(nvars + 1, 0);
            term(x, row);
            term(y, row);
            term(s, row);
            if (std::any_of(row.begin(), row.end() - 1, [](int v) { return v; }))
                rows.push_back(row);
            else if (row[nvars])
                throw error("inverse Cayley grading is additively inconsistent (internal)");
        }
    // GF(2) elimination
    size_t rank2 = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < nvars && rank2 < rows.size(); ++col) {
        size_t sel = rank2;
        while (sel < rows.size() && !rows[sel][col]) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank2], rows[sel]);
        for (size_t r = 0; r < rows.size(); ++r)
            if (r != rank2 && rows[r][col])
                for (size_t j = 0; j <= nvars; ++j) rows[r][j] ^= rows[rank2][j];
        pivot_col.push_back(col);
        ++rank2;
    }
    for (size_t r = rank2; r < rows.size(); ++r)
        if (rows[r][nvars])
            throw error("inverse Cayley grading is additively inconsistent (internal)");
    std::vector<bool> is_pivot(nvars, false);
    for (auto col : pivot_col) is_pivot[col] = true;
    std::vector<size_t> free_vars;
    for (size_t v = 0; v < nvars; ++v)
        if (!is_pivot[v]) free_vars.push_back(v);
    if (free_vars.size() > 12)
        throw unsupported_error("inverse Cayley grading has too many free choices");

    std::vector<ThetaCartan> out;
    for (size_t mask = 0; mask < (size_t(1) << free_vars.size()); ++mask) {
        std::vector<int> val(nvars, 0);
        for (size_t k = 0; k < free_vars.size(); ++k)
            if (mask & (size_t(1) << k)) val[free_vars[k]] = 1;
        for (size_t r = 0; r < rank2; ++r) {
            int v = rows[r][nvars];
            for (size_t col = pivot_col[r] + 1; col < nvars; ++col)
                if (rows[r][col]) v ^= val[col];
            val[pivot_col[r]] = v;
        }
        ThetaCartan cand = base;
        cand.eps.assign(R.num_roots(), 0);
        for (auto [idx, e] : known) cand.eps[idx] = e;
        for (auto i : unknown) cand.eps[i] = val[var_of.at(std::min(i, R.negative_of(i)))];
        reclassify(cand);
        if (cand.dim_t != c.dim_t + 1 || cand.dim_a + 1 != c.dim_a)
            throw error("inverse Cayley did not trade one split dimension (internal)");
        out.push_back(std::move(cand));
    }
    return out;
}

/// Canonical invariant of a multiset of (doubled) restricted roots with
/// multiplicities: the lexicographically least description over relabelings
/// of the computed simple basis. Two configurations carry isomorphic
/// restricted data exactly when their fingerprints agree.
inline std::string restricted_fingerprint(const RootDatum& R,
                									const std::map<IVec, std::int64_t>& mult) {
    if (mult.empty()) return "empty";
    std::vector<IVec> reduced;
    for (const auto& [v, m] : mult) {
        if (!lex_positive(v)) continue;
        IVec half = v;
        bool halvable = true;
        for (auto& x : half) {
            if (x % 2) {
                halvable = false;
                break;
            }
            x /= 2;
        }
        if (halvable && mult.count(half)) continue;
        reduced.push_back(v);
    }
    std::set<IVec> reduced_set(reduced.begin(), reduced.end());
    std::vector<IVec> simples;
    for (const auto& v : reduced) {
        bool decomposable = false;
        for (const auto& w : reduced) {
            IVec diff(v.size());
            for (size_t j = 0; j < v.size(); ++j) diff[j] = v[j] - w[j];
            if (w != v && reduced_set.count(diff)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) simples.push_back(v);
    }
    std::sort(simples.begin(), simples.end());
    size_t l = simples.size();
    // integer coordinates of every vector in the simple basis
    QMat basis_cols(R.rank(), QVec(l));
    for (size_t j = 0; j < l; ++j)
        for (size_t i = 0; i < R.rank(); ++i) basis_cols[i][j] = Rat(simples[j][i]);
    std::vector<std::pair<IVec, std::int64_t>> entries; // coords + mult
    for (const auto& [v, m] : mult) {
        if (!lex_positive(v)) continue;
        auto sol = solve(basis_cols, to_qvec(v));
        if (!sol) throw error("restricted fingerprint: root outside simple span (internal)");
        IVec coords(l);
        for (size_t j = 0; j < l; ++j) coords[j] = (*sol)[j].as_integer();
        entries.push_back({coords, m});
    }
    std::vector<std::vector<std::string>> cart(l, std::vector<std::string>(l));
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j)
            cart[i][j] =
                (Rat(2) * R.form(simples[i], simples[j]) / R.form(simples[i], simples[i])).str();
    std::vector<std::int64_t> simple_mult(l, 0);
    for (size_t i = 0; i < l; ++i) {
        auto it = mult.find(simples[i]);
        simple_mult[i] = it == mult.end() ? 0 : it->second;
    }
    // color refinement so only symmetry-respecting relabelings are tried
    std::vector<std::string> color(l);
    for (size_t i = 0; i < l; ++i) color[i] = "m" + std::to_string(simple_mult[i]);
    for (size_t round = 0; round < l; ++round) {
        std::vector<std::string> next(l);
        for (size_t i = 0; i < l; ++i) {
            std::vector<std::string> nb;
            for (size_t j = 0; j < l; ++j)
                if (j != i && cart[i][j] != "0") nb.push_back(cart[i][j] + "/" + cart[j][i] + "/" + color[j]);
            std::sort(nb.begin(), nb.end());
            next[i] = color[i] + "(";
            for (const auto& s : nb) next[i] += s + " ";
            next[i] += ")";
        }
        color = std::move(next);
    }
    std::map<std::string, std::vector<size_t>> buckets;
    for (size_t i = 0; i < l; ++i) buckets[color[i]].push_back(i);
    std::vector<std::vector<size_t>> bucket_list;
    for (auto& [c, b] : buckets) bucket_list.push_back(b);
    std::string best;
    std::vector<size_t> perm(l);
    std::function<void(size_t)> enumerate = [&](size_t b) {
        if (b == bucket_list.size()) {
            std::string s;
            for (size_t i = 0; i < l; ++i)
                for (size_t j = 0; j < l; ++j) s += cart[perm[i]][perm[j]] + ",";
            std::vector<std::string> lines;
            for (const auto& [coords, m] : entries) {
                std::string e;
                for (size_t j = 0; j < l; ++j) e += std::to_string(coords[perm[j]]) + ".";
                e += "x" + std::to_string(m);
                lines.push_back(e);
            }
            std::sort(lines.begin(), lines.end());
            for (const auto& e : lines) s += e + ";";
            if (best.empty() || s < best) best = s;
            return;
        }
        std::vector<size_t> arrangement = bucket_list[b];
        std::sort(arrangement.begin(), arrangement.end());
        size_t start = 0;
        for (size_t bb = 0; bb < b; ++bb) start += bucket_list[bb].size();
        do {
            for (size_t k = 0; k < arrangement.size(); ++k) perm[start + k] = arrangement[k];
            enumerate(b + 1);
        } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    };
    enumerate(0);
    return best;
}

/// Realizes the Cartan adapted to the standard restricted parabolic S:
/// descend from the maximally split Cartan by inverse Cayley transforms along
/// real Levi roots, branching over the multivalued gradings, and accept the
/// first leaf whose semisimple Levi part carries exactly the restricted data
/// of the S-subsystem. Exhaustion without a valid leaf is an explicit
/// unsupported error, never a silent skip.
inline AdaptedCartan adapted_cartan(const RealForm& f, const std::set<size_t>& S,
                                    const MaxSplitAnalysis* precomputed = nullptr) {
    MaxSplitAnalysis ms = precomputed ? *precomputed : analyze_max_split(f);
    const RootDatum& R = f.datum;
    size_t n = R.rank();
    const auto& rs = ms.descriptor_system;
    for (auto i : S)
        if (i >= rs.rank)
            throw precondition_error("parabolic index " + std::to_string(i + 1) +
                                     " outside restricted rank " + std::to_string(rs.rank));

    AdaptedCartan out;
    out.S = S;

    // span of the S-restrictions, as echelon rows for membership tests
    QMat ech;
    for (auto i : S) ech.push_back(to_qvec(ms.computed_simple[ms.desc_to_computed[i]]));
    size_t span_rank = row_echelon(ech).size();
    auto in_span = [&](const IVec& v) {
        QMat m = ech;
        m.push_back(to_qvec(v));
        return rank(m) == span_rank;
    };

    for (size_t idx = 0; idx < R.num_roots(); ++idx) {
        IVec rest = ms.cartan.split_restriction(idx);
        if (in_span(rest))
            out.levi_roots.push_back(idx);
        else if (lex_positive(rest))
            out.nilradical_roots.push_back(idx);
    }
    std::set<size_t> nil_set(out.nilradical_roots.begin(), out.nilradical_roots.end());

    // the restricted data m must end up carrying: the S-subsystem of the form
    std::map<IVec, std::int64_t> expected_mult;
    for (auto idx : out.levi_roots) {
        IVec rest = ms.cartan.split_restriction(idx);
        if (std::any_of(rest.begin(), rest.end(), [](std::int64_t x) { return x != 0; }))
            expected_mult[rest]++;
    }
    std::string expected_fp = restricted_fingerprint(R, expected_mult);

    // z* = F-orthogonal complement of the Levi root span (theta-independent)
    std::vector<QVec> levi_vectors;
    for (auto idx : out.levi_roots) levi_vectors.push_back(to_qvec(R.root(idx)));
    auto z_basis = kernel_basis(detail_cartan::stack_conditions(R, levi_vectors), n);
    std::int64_t a_dim_required = f.satake.dim_a0 - std::int64_t(S.size());

    auto z_membership = [&]() {
        auto comp = kernel_basis(detail_cartan::stack_conditions(R, z_basis), n);
        return detail_cartan::stack_conditions(R, comp);
    }();

    auto valid_leaf = [&](const ThetaCartan& cand) {
        // nilradical roots must be carried to their negatives
        for (auto idx : out.nilradical_roots) {
            IVec img = cand.apply(R.root(idx));
            for (auto& x : img) x = -x;
            if (!nil_set.count(R.index_of(img))) return false;
        }
        // split central part of the Levi has the full dimension of a
        QMat rows = z_membership;
        for (size_t i = 0; i < n; ++i) {
            QVec row(n);
            for (size_t j = 0; j < n; ++j)
                row[j] = Rat(cand.theta[i][j]) + (i == j ? Rat(1) : Rat(0));
            rows.push_back(row);
        }
        if (std::int64_t(kernel_basis(rows, n).size()) != a_dim_required) return false;
        // the Levi part, pushed forward to its own maximal split, must carry
        // the restricted data of the S-subsystem
        ThetaCartan probe = cand;
        while (true) {
            size_t pick = R.num_roots();
            for (auto idx : out.levi_roots)
                if (probe.cls[idx] == RootClass::imaginary_noncompact) {
                    pick = idx;
                    break;
                }
            if (pick == R.num_roots()) break;
            probe = cayley_transform(probe, pick);
        }
        std::map<IVec, std::int64_t> got;
        for (auto idx : out.levi_roots) {
            IVec rest = probe.split_restriction(idx);
            if (std::any_of(rest.begin(), rest.end(), [](std::int64_t x) { return x != 0; }))
                got[rest]++;
        }
        return restricted_fingerprint(R, got) == expected_fp;
    };

    // depth-first descent along real Levi roots, branching over gradings
    std::optional<ThetaCartan> found;
    std::function<bool(const ThetaCartan&)> descend = [&](const ThetaCartan& cur) {
        size_t pick = R.num_roots();
        for (auto idx : out.levi_roots)
            if (cur.cls[idx] == RootClass::real) {
                pick = idx;
                break;
            }
        if (pick == R.num_roots()) {
            if (!valid_leaf(cur)) return false;
            found = cur;
            return true;
        }
        for (const auto& next : inverse_cayley_candidates(cur, pick))
            if (descend(next)) return true;
        return false;
    };
    if (!descend(ms.cartan)) {
        std::string s;
        for (auto i : S) s += (s.empty() ? "" : ",") + std::to_string(i + 1);
        throw unsupported_error("no adapted Cartan realizes " + f.id + ", S={" + s + "}");
    }
    ThetaCartan c = *found;
    out.base = c;

    // four-way split of h* along the involution and the Levi span;
    // V_m = span of Levi roots = F-orthogonal complement of z*
    auto vm_basis_vs = kernel_basis(detail_cartan::stack_conditions(R, z_basis), n);

    auto eig_conditions = [&](int sign) {
        // rows of (theta - sign I)
        QMat rows(n, QVec(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                rows[i][j] = Rat(c.theta[i][j]) - (i == j ? Rat(sign) : Rat(0));
        return rows;
    };
    auto span_conditions = [&](const std::vector<QVec>& basis) {
        // v in span(basis) iff v is F-orthogonal to the complement of the span
        auto comp = kernel_basis(detail_cartan::stack_conditions(R, basis), n);
        std::vector<QVec> cv(comp.begin(), comp.end());
        return detail_cartan::stack_conditions(R, cv);
    };

    auto zc = span_conditions(z_basis);
    auto mc = span_conditions(vm_basis_vs);
    auto fixed = eig_conditions(1);   // kernel is the theta-fixed (compact) side
    auto split = eig_conditions(-1);  // kernel is the split side
    auto c_b = detail_cartan::intersect_kernels(zc, fixed, n);
    auto a_b = detail_cartan::intersect_kernels(zc, split, n);
    auto cp_b = detail_cartan::intersect_kernels(mc, fixed, n);
    auto ap_b = detail_cartan::intersect_kernels(mc, split, n);
    out.c_basis.assign(c_b.begin(), c_b.end());
    out.a_basis.assign(a_b.begin(), a_b.end());
    out.cp_basis.assign(cp_b.begin(), cp_b.end());
    out.ap_basis.assign(ap_b.begin(), ap_b.end());
    if (out.c_basis.size() + out.a_basis.size() + out.cp_basis.size() + out.ap_basis.size() != n)
        throw error("adapted Cartan split does not span (internal), form " + f.id);

    // projections onto a, c', a' along the direct sum
    QMat B(n, QVec(n));
    size_t col = 0;
    std::vector<size_t> starts;
    for (const QMat* part : {&out.c_basis, &out.a_basis, &out.cp_basis, &out.ap_basis}) {
        starts.push_back(col);
        for (const auto& v : *part) {
            for (size_t i = 0; i < n; ++i) B[i][col] = v[i];
            ++col;
        }
    }
    QMat Binv = detail_cartan::inverse(B);
    auto projector = [&](size_t start, size_t count) {
        QMat P(n, QVec(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Rat s;
                for (size_t k = start; k < start + count; ++k) s += B[i][k] * Binv[k][j];
                P[i][j] = s;
            }
        return P;
    };
    out.proj_a = projector(starts[1], out.a_basis.size());
    out.proj_cp = projector(starts[2], out.cp_basis.size());
    out.proj_ap = projector(starts[3], out.ap_basis.size());

    // all Levi roots vanish on a; the Levi has no real roots on c'+a'
    for (auto idx : out.levi_roots) {
        QVec av = mat_apply(out.proj_a, to_qvec(R.root(idx)));
        for (const auto& x : av)
            if (!x.is_zero()) throw error("Levi root does not vanish on a (internal), " + f.id);
    }
    return out;
}

} // namespace coho
