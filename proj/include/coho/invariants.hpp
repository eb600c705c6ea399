#pragma once

#include "coho/cartan.hpp"

namespace coho {

/// Value of one of the vanishing-degree invariants; no value means +infinity.
struct InvariantValue {
    std::optional<std::int64_t> value;
    std::string witness;
    enum class Method { exhaustive, complex_fast_path, compact_rule, ideal_min_rule } method =
        Method::exhaustive;

    bool infinite() const { return !value.has_value(); }
    std::string str() const { return infinite() ? "infinity" : std::to_string(*value); }

    bool operator<(const InvariantValue& o) const {
        if (infinite()) return false;
        if (o.infinite()) return true;
        return *value < *o.value;
    }
};

inline InvariantValue invariant_infinity(InvariantValue::Method m, const std::string& w) {
    InvariantValue v;
    v.method = m;
    v.witness = w;
    return v;
}

/// Minimal nilradical dimension over the maximal proper standard parabolics of
/// the restricted root system, weighted by multiplicities. Equals the minimum
/// over all proper parabolics because nilradicals shrink as Levis grow.
inline InvariantValue r_prime(const RealForm& f) {
    if (f.compact())
        throw precondition_error("r' is undefined for the compact form " + f.id);
    auto rs = restricted_root_system(f);
    InvariantValue best;
    for (size_t drop = 0; drop < rs.rank; ++drop) {
        std::int64_t total = 0;
        for (size_t k = 0; k < rs.roots.size(); ++k) {
            if (!rs.is_positive(k)) continue;
            if (rs.roots[k][drop] > 0) total += rs.mult[k];
        }
        if (!best.value || total < *best.value) {
            best.value = total;
            best.witness = "drop restricted simple root " + std::to_string(drop + 1);
        }
    }
    best.method = InvariantValue::Method::exhaustive;
    return best;
}

namespace detail_inv {

/// Connected components of a root subset under non-orthogonality.
inline std::vector<std::vector<size_t>> components(const RootDatum& R,
                                                   const std::vector<size_t>& subset) {
    std::vector<std::vector<size_t>> comps;
    std::set<size_t> left(subset.begin(), subset.end());
    while (!left.empty()) {
        std::vector<size_t> comp{*left.begin()};
        left.erase(left.begin());
        for (size_t head = 0; head < comp.size(); ++head) {
            for (auto it = left.begin(); it != left.end();) {
                if (!R.form(R.root(comp[head]), R.root(*it)).is_zero()) {
                    comp.push_back(*it);
                    it = left.erase(it);
                } else {
                    ++it;
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

/// Simple roots of a closed subsystem: indecomposable ambient-positive members.
inline std::vector<size_t> subsystem_simples(const RootDatum& R, const std::vector<size_t>& comp) {
    std::set<IVec> pos;
    for (auto idx : comp)
        if (R.is_positive(idx)) pos.insert(R.root(idx));
    std::vector<size_t> simples;
    for (const auto& v : pos) {
        bool decomposable = false;
        for (const auto& w : pos) {
            if (w == v) continue;
            IVec diff(v.size());
            for (size_t j = 0; j < v.size(); ++j) diff[j] = v[j] - w[j];
            if (pos.count(diff)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) simples.push_back(R.index_of(v));
    }
    std::sort(simples.begin(), simples.end());
    return simples;
}

/// Integer coordinates of each component root in the component simple basis.
inline std::map<size_t, IVec> subsystem_coords(const RootDatum& R,
                                               const std::vector<size_t>& comp,
                                               const std::vector<size_t>& simples) {
    QMat cols(R.rank(), QVec(simples.size()));
    for (size_t j = 0; j < simples.size(); ++j)
        for (size_t i = 0; i < R.rank(); ++i) cols[i][j] = Rat(R.root(simples[j])[i]);
    std::map<size_t, IVec> out;
    for (auto idx : comp) {
        auto sol = solve(cols, to_qvec(R.root(idx)));
        if (!sol) throw error("subsystem root outside its simple span (internal)");
        IVec c(simples.size());
        for (size_t j = 0; j < simples.size(); ++j) c[j] = (*sol)[j].as_integer();
        out[idx] = c;
    }
    return out;
}

/// Minimal complex nilradical dimension of a component (complex fast path):
/// the best maximal parabolic of the component's own system.
inline InvariantValue complex_component_min(const RootDatum& R, const std::vector<size_t>& comp) {
    auto simples = subsystem_simples(R, comp);
    auto coords = subsystem_coords(R, comp, simples);
    InvariantValue best;
    for (size_t i = 0; i < simples.size(); ++i) {
        std::int64_t count = 0;
        for (auto idx : comp)
            if (R.is_positive(idx) && coords[idx][i] != 0) ++count;
        if (!best.value || count < *best.value) {
            best.value = count;
            best.witness = "complex factor, maximal parabolic dropping node " + std::to_string(i + 1);
        }
    }
    best.method = InvariantValue::Method::complex_fast_path;
    return best;
}

struct RayArrangement {
    std::vector<IVec> rows;               // one integer functional per hyperplane class
    std::vector<std::pair<size_t, int>> orbit_terms; // (row index, kind): kind 1 = counts
    size_t dim = 0;
};

constexpr size_t kRaySubsetCap = 4000000;

inline size_t binom(size_t n, size_t k) {
    if (k > n) return 0;
    size_t r = 1;
    for (size_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > (size_t(1) << 62)) return r;
    }
    return r;
}

/// Enumerates the one-dimensional faces of the hyperplane arrangement given by
/// integer functional rows in dimension dim, as primitive direction vectors.
inline std::vector<IVec> enumerate_rays(const std::vector<IVec>& rows, size_t dim) {
    std::set<IVec> rays;
    if (dim == 1) {
        rays.insert(IVec{1});
        rays.insert(IVec{-1});
    } else {
        std::vector<size_t> pick(dim - 1);
        std::function<void(size_t, size_t)> rec = [&](size_t start, size_t chosen) {
            if (chosen == dim - 1) {
                QMat m;
                for (size_t k = 0; k < dim - 1; ++k) m.push_back(to_qvec(rows[pick[k]]));
                auto ker = kernel_basis(std::move(m), dim);
                if (ker.size() != 1) return;
                IVec dir = primitive_integer(ker[0]);
                rays.insert(dir);
                for (auto& x : dir) x = -x;
                rays.insert(dir);
                return;
            }
            for (size_t i = start; i + (dim - 1 - chosen) <= rows.size(); ++i) {
                pick[chosen] = i;
                rec(i + 1, chosen + 1);
            }
        };
        rec(0, 0);
    }
    return std::vector<IVec>(rays.begin(), rays.end());
}

} // namespace detail_inv

/// Ray search over one noncompact theta-stable component.
inline InvariantValue r_g_component(const ThetaCartan& C, const std::vector<size_t>& comp) {
    const RootDatum& R = C.form->datum;
    // compact-side restriction representatives, doubled
    std::map<IVec, size_t> class_of; // representative (lex-positive) -> row id
    std::vector<IVec> reps;
    std::vector<std::tuple<size_t, int, int>> orbit_terms; // (row, sign, kind)
    std::set<size_t> seen;
    for (auto idx : comp) {
        if (seen.count(idx)) continue;
        size_t mate = R.index_of(C.apply(R.root(idx)));
        seen.insert(idx);
        int kind = 0;
        if (mate != idx) {
            seen.insert(mate);
            kind = 1; // complex pair contributes one s-dimension
        } else if (C.cls[idx] == RootClass::imaginary_noncompact) {
            kind = 1;
        } else {
            kind = 0; // compact imaginary
        }
        if (kind == 0) continue;
        IVec rest(R.rank());
        const IVec& r = R.root(idx);
        IVec img = C.apply(r);
        for (size_t j = 0; j < R.rank(); ++j) rest[j] = r[j] + img[j];
        bool zero = std::all_of(rest.begin(), rest.end(), [](std::int64_t x) { return x == 0; });
        if (zero) throw error("noncompact weight restricts to zero on t (internal)");
        int sign = lex_positive(rest) ? 1 : -1;
        IVec rep = rest;
        if (sign < 0)
            for (auto& x : rep) x = -x;
        auto it = class_of.find(rep);
        size_t row;
        if (it == class_of.end()) {
            row = reps.size();
            class_of[rep] = row;
            reps.push_back(rep);
        } else {
            row = it->second;
        }
        orbit_terms.push_back({row, sign, kind});
    }
    // coordinates inside the span of the representatives
    QMat mat;
    for (const auto& v : reps) mat.push_back(to_qvec(v));
    QMat ech = mat;
    auto pivots = row_echelon(ech);
    size_t d = pivots.size();
    // basis = pivot representatives; coordinates via solving
    std::vector<size_t> basis_rows;
    {
        QMat probe;
        for (size_t i = 0; i < reps.size() && basis_rows.size() < d; ++i) {
            probe.push_back(to_qvec(reps[i]));
            if (rank(probe) == basis_rows.size() + 1)
                basis_rows.push_back(i);
            else
                probe.pop_back();
        }
    }
    QMat cols(R.rank(), QVec(d));
    for (size_t j = 0; j < d; ++j)
        for (size_t i = 0; i < R.rank(); ++i) cols[i][j] = Rat(reps[basis_rows[j]][i]);
    // functional row per representative: pairing with x expanded in the basis,
    // through the invariant form
    QMat gram(d, QVec(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            gram[i][j] = R.form(reps[basis_rows[i]], reps[basis_rows[j]]);
    std::vector<IVec> rows;
    for (const auto& v : reps) {
        auto sol = solve(cols, to_qvec(v));
        if (!sol) throw error("restriction outside its own span (internal)");
        QVec row(d);
        for (size_t j = 0; j < d; ++j) {
            Rat s;
            for (size_t i = 0; i < d; ++i) s += (*sol)[i] * gram[i][j];
            row[j] = s;
        }
        rows.push_back(primitive_integer_directed(row));
    }
    // dedupe rows up to sign for the subset enumeration
    std::vector<IVec> lines;
    {
        std::set<IVec> seen_lines;
        for (auto r : rows) {
            IVec canon = r;
            if (!lex_positive(canon))
                for (auto& x : canon) x = -x;
            if (seen_lines.insert(canon).second) lines.push_back(canon);
        }
    }
    std::vector<IVec> rays;
    if (detail_inv::binom(lines.size(), d - 1) <= detail_inv::kRaySubsetCap) {
        rays = detail_inv::enumerate_rays(lines, d);
    } else {
        // full Weyl arrangement of an equal-rank component: rays are the
        // orbits of the fundamental coweights
        bool identity = true;
        for (auto idx : comp)
            if (R.index_of(C.apply(R.root(idx))) != idx) identity = false;
        if (!identity)
            throw unsupported_error("restriction arrangement too large for exact ray search");
        auto simples = detail_inv::subsystem_simples(R, comp);
        auto coords = detail_inv::subsystem_coords(R, comp, simples);
        size_t r = simples.size();
        std::vector<IVec> loc_cart(r, IVec(r));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                Rat v = Rat(2) * R.form(R.root(simples[i]), R.root(simples[j])) /
                        R.form(R.root(simples[i]), R.root(simples[i]));
                loc_cart[i][j] = v.as_integer();
            }
        std::set<IVec> ray_set;
        for (size_t i = 0; i < r; ++i) {
            IVec start(r, 0);
            start[i] = 1;
            std::set<IVec> orbit{start};
            std::vector<IVec> frontier{start};
            while (!frontier.empty()) {
                std::vector<IVec> next;
                for (const auto& y : frontier)
                    for (size_t jj = 0; jj < r; ++jj) {
                        IVec z = y;
                        std::int64_t yj = y[jj];
                        if (yj == 0) continue;
                        for (size_t ii = 0; ii < r; ++ii)
                            z[ii] -= detail::mul_i64(loc_cart[jj][ii], yj);
                        if (orbit.insert(z).second) next.push_back(std::move(z));
                    }
                frontier = std::move(next);
            }
            for (auto& y : orbit) ray_set.insert(y);
        }
        // count noncompact roots positive at each ray, in local coordinates
        InvariantValue best;
        for (const auto& y : ray_set) {
            std::int64_t count = 0;
            for (auto idx : comp) {
                if (C.cls[idx] != RootClass::imaginary_noncompact) continue;
                if (dot_i(coords[idx], y) > 0) ++count;
            }
            if (!best.value || count < *best.value ||
                (count == *best.value && ("coweight ray " + str(y)) < best.witness)) {
                best.value = count;
                best.witness = "coweight ray " + str(y);
            }
        }
        best.method = InvariantValue::Method::exhaustive;
        return best;
    }
    InvariantValue best;
    for (const auto& x : rays) {
        std::int64_t count = 0;
        for (const auto& [row, sign, kind] : orbit_terms) {
            std::int64_t v = sign * dot_i(rows[row], x);
            if (v > 0) count += kind;
        }
        std::string wit = "restriction ray " + str(x);
        if (!best.value || count < *best.value || (count == *best.value && wit < best.witness)) {
            best.value = count;
            best.witness = wit;
        }
    }
    best.method = InvariantValue::Method::exhaustive;
    return best;
}

/// dim(n_q cap s_C) minimized over the proper theta-stable parabolics defined
/// by points of the compact part t: by monotonicity of nilradicals the minimum
/// is attained on the one-dimensional faces of the restriction arrangement,
/// which are enumerated exactly. Disconnected subsets take the minimum over
/// the noncompact ideals; swapped component pairs take the complex fast path.
inline InvariantValue r_g_subsystem(const ThetaCartan& C, const std::vector<size_t>& subset) {
    const RootDatum& R = C.form->datum;
    if (subset.empty()) return invariant_infinity(InvariantValue::Method::compact_rule, "m = 0");
    auto comps = detail_inv::components(R, subset);
    std::map<size_t, size_t> comp_of;
    for (size_t k = 0; k < comps.size(); ++k)
        for (auto idx : comps[k]) comp_of[idx] = k;
    std::set<size_t> done;
    InvariantValue best =
        invariant_infinity(InvariantValue::Method::ideal_min_rule, "no noncompact ideal");
    for (size_t k = 0; k < comps.size(); ++k) {
        if (done.count(k)) continue;
        size_t partner = comp_of.at(R.index_of(C.apply(R.root(comps[k][0]))));
        done.insert(k);
        InvariantValue cand;
        if (partner != k) {
            done.insert(partner);
            cand = detail_inv::complex_component_min(R, comps[k]);
        } else {
            bool all_compact = true;
            for (auto idx : comps[k])
                if (C.cls[idx] != RootClass::imaginary_compact) all_compact = false;
            if (all_compact) continue; // compact ideal contributes +infinity
            cand = r_g_component(C, comps[k]);
        }
        if (cand < best) best = cand;
    }
    return best;
}

/// r_g of a catalog form. Compact forms give +infinity, complex forms take the
/// fast path, everything else runs the exhaustive ray search on the
/// fundamental Cartan (rank of t above 6 requires deep=true).
inline InvariantValue r_g(const RealForm& f, bool deep = false) {
    if (f.compact())
        return invariant_infinity(InvariantValue::Method::compact_rule, "compact form");
    if (f.complex_as_real) {
        std::vector<size_t> left;
        for (size_t i = 0; i < f.datum.num_roots(); ++i) {
            const IVec& r = f.datum.root(i);
            bool in_left = false;
            for (int j = 0; j < f.complex_type.rank; ++j)
                if (r[j] != 0) in_left = true;
            if (in_left) left.push_back(i);
        }
        return detail_inv::complex_component_min(f.datum, left);
    }
    ThetaCartan C = fundamental_cartan(f);
    if (C.dim_t > 6 && !deep)
        throw unsupported_error("form " + f.id +
                                " exceeds exhaustive limit, rerun with --deep");
    std::vector<size_t> all(f.datum.num_roots());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    return r_g_subsystem(C, all);
}

/// dim(n(mu) cap s_C) for a theta-fixed parameter given as a root-coordinate
/// vector u_mu: the positive system is cut out by mu, rho_mu is its half sum
/// restricted to the compact part, and the weights of n(mu) are counted with
/// their s-dimensions. Regularity is checked; integrality is the caller's
/// precondition where required.
inline InvariantValue r_g_mu_subsystem(const ThetaCartan& C, const std::vector<size_t>& subset,
                                       const QVec& u_mu) {
    const RootDatum& R = C.form->datum;
    std::vector<size_t> plus;
    for (auto idx : subset) {
        Rat p = Rat(2) * R.form_q(u_mu, to_qvec(R.root(idx))) / R.length2(idx);
        if (p.is_zero())
            throw precondition_error("parameter is not regular: vanishing pairing with the coroot of " +
                                     str(R.root(idx)));
        if (p > Rat(0)) plus.push_back(idx);
    }
    QVec rho_bar(R.rank());
    for (auto idx : plus)
        for (size_t j = 0; j < R.rank(); ++j) rho_bar[j] += Rat(R.root(idx)[j]);
    {
        // restrict to the compact part: (1 + theta)/2, applied twice the half sum
        QVec img(R.rank());
        for (size_t i = 0; i < R.rank(); ++i) {
            Rat s;
            for (size_t j = 0; j < R.rank(); ++j) s += Rat(C.theta[i][j]) * rho_bar[j];
            img[i] = s;
        }
        for (size_t i = 0; i < R.rank(); ++i) rho_bar[i] = (rho_bar[i] + img[i]) / Rat(4);
    }
    QVec shifted = sub(u_mu, rho_bar);
    std::int64_t count = 0;
    std::set<size_t> seen;
    for (auto idx : subset) {
        if (seen.count(idx)) continue;
        size_t mate = R.index_of(C.apply(R.root(idx)));
        seen.insert(idx);
        int kind = 0;
        if (mate != idx) {
            seen.insert(mate);
            kind = 1;
        } else if (C.cls[idx] == RootClass::imaginary_noncompact) {
            kind = 1;
        }
        if (kind == 0) continue;
        Rat v = R.form_q(shifted, to_qvec(R.root(idx)));
        if (v > Rat(0)) count += kind;
    }
    InvariantValue out;
    out.value = count;
    out.method = InvariantValue::Method::exhaustive;
    out.witness = "n(mu) built from the mu-positive system";
    return out;
}

/// r_{g,mu} for a pure regular integral parameter on the fundamental Cartan,
/// in fundamental-weight coordinates of the complexified system.
inline InvariantValue r_g_mu(const RealForm& f, const Functional& mu) {
    const RootDatum& R = f.datum;
    if (mu.size() != R.rank())
        throw precondition_error("parameter has rank " + std::to_string(mu.size()) +
                                 ", expected " + std::to_string(R.rank()));
    for (size_t i = 0; i < R.rank(); ++i)
        if (mu[i] != mu[f.vogan.automorphism[i]])
            throw precondition_error("parameter is not pure: coordinates " + std::to_string(i + 1) +
                                     " and " + std::to_string(f.vogan.automorphism[i] + 1) +
                                     " differ");
    for (size_t idx = 0; idx < R.num_roots(); ++idx) {
        Rat p = R.pairing(mu, idx);
        if (!p.is_integer() || p.is_zero())
            throw precondition_error("parameter is not regular integral: pairing " + p.str() +
                                     " with the coroot of " + str(R.root(idx)));
    }
    ThetaCartan C = fundamental_cartan(f);
    std::vector<size_t> all(R.num_roots());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    return r_g_mu_subsystem(C, all, R.functional_to_root_coords(mu));
}

/// Minimum of r_{g,mu} over the pure members of the Weyl orbit of lambda0
/// (+infinity when no orbit member is pure).
inline InvariantValue r_min_over_parameter(const RealForm& f, const Functional& lambda0) {
    const RootDatum& R = f.datum;
    for (size_t idx = 0; idx < R.num_roots(); ++idx) {
        Rat p = R.pairing(lambda0, idx);
        if (!p.is_integer() || p.is_zero())
            throw precondition_error("parameter is not regular integral: pairing " + p.str() +
                                     " with the coroot of " + str(R.root(idx)));
    }
    std::set<Functional> orbit{lambda0};
    std::vector<Functional> frontier{lambda0};
    while (!frontier.empty()) {
        std::vector<Functional> next;
        for (const auto& lam : frontier)
            for (size_t i = 0; i < R.rank(); ++i) {
                auto img = R.reflect_functional(lam, i);
                if (orbit.insert(img).second) next.push_back(std::move(img));
            }
        frontier = std::move(next);
        if (orbit.size() > 200000)
            throw unsupported_error("Weyl orbit too large for the parameter minimum");
    }
    InvariantValue best = invariant_infinity(InvariantValue::Method::exhaustive,
                                             "no pure orbit member");
    for (const auto& lam : orbit) {
        bool pure = true;
        for (size_t i = 0; i < R.rank(); ++i)
            if (lam[i] != lam[f.vogan.automorphism[i]]) pure = false;
        if (!pure) continue;
        InvariantValue v = r_g_mu(f, lam);
        v.witness = "orbit parameter with coordinates " + coho::str(lam);
        if (v < best) best = v;
    }
    return best;
}

/// Kostant degree: the number of nilradical roots pairing positively with a
/// regular parameter.
inline std::int64_t kostant_degree(const RootDatum& R, const ParabolicSubset& S,
                                   const Functional& lambda) {
    auto ps = parabolic_split(R, S);
    std::int64_t count = 0;
    for (auto idx : ps.nilradical_roots) {
        Rat p = R.pairing(lambda, idx);
        if (p.is_zero())
            throw precondition_error("parameter is not regular: vanishing pairing with the coroot of " +
                                     str(R.root(idx)));
        if (p > Rat(0)) ++count;
    }
    return count;
}

} // namespace coho
