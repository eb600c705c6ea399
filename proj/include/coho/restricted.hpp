#pragma once

#include "coho/root_system.hpp"

namespace coho {

/// Restricted root system with multiplicities, possibly non-reduced (BC type).
/// Coordinates are taken in the reduced simple basis; the doubled roots of a
/// BC system appear as doubled coordinate vectors.
struct RestrictedRootSystem {
    std::string type_label;        // "A2", "BC1", "B3", ...; reduced label for BC is the B system
    size_t rank = 0;
    std::vector<IVec> roots;       // positives first, then matching negatives
    std::vector<std::int64_t> mult;
    std::vector<IVec> reduced_cartan; // Cartan matrix of the reduced subsystem
    QVec reduced_d;                // symmetrizer of the reduced subsystem
    bool non_reduced = false;

    size_t num_positive() const { return roots.size() / 2; }
    bool is_positive(size_t i) const { return i < num_positive(); }

    /// <functional, beta^vee> where the functional is given by its pairings
    /// with the reduced simple coroots and beta is roots[idx].
    Rat pairing(const QVec& nu, size_t idx) const {
        IVec r = roots[idx];
        Rat half(1);
        if (is_doubled(idx)) {
            for (auto& c : r) c /= 2;
            half = Rat(1, 2); // (2b)^vee = b^vee / 2
        }
        // coroot coordinates of the reduced root r
        Rat l2 = form(r, r);
        Rat s;
        for (size_t j = 0; j < rank; ++j) {
            if (r[j] == 0) continue;
            Rat k = Rat(2) * Rat(r[j]) * reduced_d[j] / l2;
            s += nu[j] * k;
        }
        return s * half;
    }

    Rat form(const IVec& x, const IVec& y) const {
        Rat s;
        for (size_t i = 0; i < rank; ++i)
            for (size_t j = 0; j < rank; ++j)
                if (x[i] != 0 && y[j] != 0)
                    s += Rat(x[i]) * reduced_d[i] * Rat(reduced_cartan[i][j]) * Rat(y[j]);
        return s;
    }

    bool is_doubled(size_t idx) const {
        if (!non_reduced) return false;
        IVec half = roots[idx];
        for (auto& c : half) {
            if (c % 2 != 0) return false;
            c /= 2;
        }
        for (const auto& r : roots)
            if (r == half) return true;
        return false;
    }

    std::int64_t total_dimension() const {
        std::int64_t s = 0;
        for (auto m : mult) s += m;
        return s;
    }
};

/// Builds a restricted system from a type label and multiplicities listed per
/// ascending squared-length class ("BC2" + [m(e_i), m(e_i+-e_j), m(2e_i)], a
/// reduced label + one entry per length class).
inline RestrictedRootSystem build_restricted(const std::string& label,
                                             const std::vector<std::int64_t>& class_mults) {
    RestrictedRootSystem rs;
    rs.type_label = label;
    bool bc = label.size() > 2 && label[0] == 'B' && label[1] == 'C';
    std::string reduced_label = bc ? "B" + label.substr(2) : label;
    if (bc && reduced_label == "B1") {
        // rank-1 non-reduced system: realize by hand on the A1 lattice
        if (class_mults.size() != 2)
            throw validation_error("BC1 needs exactly 2 multiplicities, got " +
                                   std::to_string(class_mults.size()));
        rs.rank = 1;
        rs.non_reduced = true;
        rs.roots = {{1}, {2}, {-1}, {-2}};
        rs.mult = {class_mults[0], class_mults[1], class_mults[0], class_mults[1]};
        rs.reduced_cartan = {{2}};
        rs.reduced_d = {Rat(1)};
        return rs;
    }
    CartanType t = CartanType::parse(reduced_label);
    RootDatum R = RootDatum::build({t});
    rs.rank = R.rank();
    rs.reduced_cartan = R.cartan_matrix();
    rs.reduced_d = R.symmetrizer();
    rs.non_reduced = bc;

    // distinct squared lengths, ascending
    std::vector<Rat> classes;
    for (size_t i = 0; i < R.num_roots(); ++i) {
        Rat l2 = R.length2(i);
        if (std::find(classes.begin(), classes.end(), l2) == classes.end()) classes.push_back(l2);
    }
    std::sort(classes.begin(), classes.end());
    size_t expected = classes.size() + (bc ? 1 : 0);
    if (class_mults.size() != expected)
        throw validation_error("restricted type " + label + " needs " + std::to_string(expected) +
                               " multiplicities, got " + std::to_string(class_mults.size()));

    auto class_of = [&](size_t i) {
        return size_t(std::find(classes.begin(), classes.end(), R.length2(i)) - classes.begin());
    };
    std::vector<IVec> pos, neg;
    std::vector<std::int64_t> pmult, nmult;
    for (size_t i = 0; i < R.num_positive(); ++i) {
        pos.push_back(R.root(i));
        pmult.push_back(class_mults[class_of(i)]);
    }
    if (bc) {
        // doubles of the short roots (squared length class 0)
        for (size_t i = 0; i < R.num_positive(); ++i) {
            if (class_of(i) != 0) continue;
            IVec dbl = R.root(i);
            for (auto& c : dbl) c *= 2;
            pos.push_back(dbl);
            pmult.push_back(class_mults.back());
        }
    }
    rs.roots = pos;
    rs.mult = pmult;
    for (const auto& r : pos) {
        IVec m(r.size());
        for (size_t j = 0; j < r.size(); ++j) m[j] = -r[j];
        rs.roots.push_back(m);
    }
    rs.mult.insert(rs.mult.end(), pmult.begin(), pmult.end());
    return rs;
}

} // namespace coho
