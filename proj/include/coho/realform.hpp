#pragma once

#include <filesystem>
#include <fstream>
#include <optional>

#include <json.hpp>

#include "coho/restricted.hpp"
#include "coho/root_system.hpp"

namespace coho {

/// Involution data on the simple nodes: a diagram automorphism plus the
/// painted (noncompact) nodes among its fixed points.
struct VoganDiagram {
    std::vector<size_t> automorphism; // image of node i, 0-based
    std::set<size_t> painted;

    bool fixed(size_t i) const { return automorphism[i] == i; }
};

struct SatakeRecord {
    std::string restricted_type; // "none" for compact forms
    std::vector<std::int64_t> mults;
    std::int64_t dim_a0 = 0;
    std::int64_t dim_m0 = 0;
};

struct Literature {
    std::optional<std::int64_t> r_prime;
    std::optional<std::int64_t> r_g;
    std::string source;
};

enum class RootClass { complex_pair, real, imaginary_compact, imaginary_noncompact };

inline std::string to_string(RootClass c) {
    switch (c) {
        case RootClass::complex_pair: return "complex";
        case RootClass::real: return "real";
        case RootClass::imaginary_compact: return "imaginary_compact";
        case RootClass::imaginary_noncompact: return "imaginary_noncompact";
    }
    return "?";
}

/// One real form: a row of the catalog. The root datum is the complexified
/// system (doubled with the swap involution for complex-as-real forms).
class RealForm {
public:
    std::string id;
    bool complex_as_real = false;
    CartanType complex_type;
    RootDatum datum;
    VoganDiagram vogan;
    SatakeRecord satake;
    std::int64_t dim_g = 0, dim_k = 0;
    std::int64_t rank_kC = 0;
    Literature literature;

    bool compact() const { return dim_k == dim_g; }

    /// theta on root-coordinate vectors at the fundamental Cartan: the
    /// permutation action of the diagram automorphism.
    IVec apply_automorphism(const IVec& r) const {
        IVec out(r.size());
        for (size_t i = 0; i < r.size(); ++i) out[vogan.automorphism[i]] = r[i];
        return out;
    }

    bool imaginary(size_t root_idx) const {
        return apply_automorphism(datum.root(root_idx)) == datum.root(root_idx);
    }

    /// Z/2 grading on automorphism-fixed roots; 1 means noncompact.
    int epsilon(size_t root_idx) const {
        if (!imaginary(root_idx))
            throw precondition_error("epsilon is defined on imaginary roots only");
        std::int64_t s = 0;
        const IVec& r = datum.root(root_idx);
        for (size_t i = 0; i < r.size(); ++i) s += grading_[i] * r[i];
        return int(((s % 2) + 2) % 2);
    }

    std::int64_t derived_dim_k() const {
        std::int64_t fixed_nodes = 0, orbit_pairs = 0;
        for (size_t i = 0; i < datum.rank(); ++i) {
            if (vogan.fixed(i))
                ++fixed_nodes;
            else if (vogan.automorphism[i] > i)
                ++orbit_pairs;
        }
        std::int64_t t_dim = fixed_nodes + orbit_pairs;
        std::int64_t compact_im = 0, complex_roots = 0;
        for (size_t idx = 0; idx < datum.num_roots(); ++idx) {
            if (imaginary(idx)) {
                if (epsilon(idx) == 0) ++compact_im;
            } else {
                ++complex_roots;
            }
        }
        return t_dim + compact_im + complex_roots / 2;
    }

    std::int64_t dim_t() const { return rank_kC; }
    std::int64_t dim_a0_fundamental() const { return std::int64_t(datum.rank()) - rank_kC; }

    void finalize_and_validate() {
        build_grading();
        auto bad = [&](const std::string& identity, const std::string& detail) {
            throw validation_error("form " + id + ": " + identity + " failed: " + detail);
        };
        // automorphism is an involutive Cartan-matrix symmetry
        const auto& A = datum.cartan_matrix();
        const auto& a = vogan.automorphism;
        if (a.size() != datum.rank()) bad("automorphism shape", "index list has wrong length");
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] >= a.size() || a[a[i]] != i) bad("automorphism involutivity", "node " + std::to_string(i + 1));
            for (size_t j = 0; j < a.size(); ++j)
                if (A[i][j] != A[a[i]][a[j]]) bad("automorphism symmetry", "Cartan entry changes");
        }
        for (auto p : vogan.painted)
            if (p >= a.size() || !vogan.fixed(p)) bad("painted nodes", "node not automorphism-fixed");
        if (dim_g != std::int64_t(datum.num_roots() + datum.rank()))
            bad("dim_g identity", std::to_string(dim_g) + " vs " +
                                      std::to_string(datum.num_roots() + datum.rank()));
        std::int64_t fixed_nodes = 0, orbit_pairs = 0;
        for (size_t i = 0; i < datum.rank(); ++i) {
            if (vogan.fixed(i))
                ++fixed_nodes;
            else if (a[i] > i)
                ++orbit_pairs;
        }
        if (rank_kC != fixed_nodes + orbit_pairs)
            bad("rank_kC identity", std::to_string(rank_kC) + " vs derived " +
                                        std::to_string(fixed_nodes + orbit_pairs));
        std::int64_t dk = derived_dim_k();
        if (dk != dim_k)
            bad("dim_k identity (Vogan grading)",
                "descriptor " + std::to_string(dim_k) + " vs derived " + std::to_string(dk));
        // Satake side
        if (satake.restricted_type == "none") {
            if (satake.dim_a0 != 0 || satake.dim_m0 + 0 != dim_g)
                bad("satake identity", "compact form must have a0=0, m0=dim g");
        } else {
            auto rs = build_restricted(satake.restricted_type, satake.mults);
            if (std::int64_t(rs.rank) != satake.dim_a0)
                bad("satake rank", "restricted rank vs dim_a0");
            std::int64_t total = rs.total_dimension() + satake.dim_m0 + satake.dim_a0;
            if (total != dim_g)
                bad("satake dimension identity",
                    std::to_string(total) + " vs dim_g " + std::to_string(dim_g));
        }
        // q0 integrality
        std::int64_t dim_s = dim_g - dim_k;
        std::int64_t gap = std::int64_t(datum.rank()) - rank_kC;
        if ((dim_s - gap) % 2 != 0 || dim_s < gap)
            bad("q0 integrality", "dim_s=" + std::to_string(dim_s) + " rank gap=" + std::to_string(gap));
        if (complex_as_real != (id.rfind("complex:", 0) == 0))
            bad("id convention", "complex_as_real flag must match 'complex:' id prefix");
    }

private:
    void build_grading() {
        grading_.assign(datum.rank(), 0);
        for (auto p : vogan.painted) grading_[p] = 1;
        // a 2-orbit of adjacent nodes contributes a sign on its fixed combinations
        const auto& A = datum.cartan_matrix();
        for (size_t i = 0; i < datum.rank(); ++i) {
            size_t j = vogan.automorphism[i];
            if (j > i && A[i][j] != 0) grading_[i] += 1;
        }
    }

    IVec grading_;
};

inline std::int64_t q0(const RealForm& f) {
    std::int64_t dim_s = f.dim_g - f.dim_k;
    std::int64_t gap = std::int64_t(f.datum.rank()) - f.rank_kC;
    return (dim_s - gap) / 2;
}

inline std::pair<std::int64_t, std::int64_t> cartan_decomp_dims(const RealForm& f) {
    std::int64_t dk = f.derived_dim_k();
    if (dk != f.dim_k)
        throw validation_error("form " + f.id + ": derived dim_k " + std::to_string(dk) +
                               " mismatches expected " + std::to_string(f.dim_k));
    return {dk, f.dim_g - dk};
}

inline RestrictedRootSystem restricted_root_system(const RealForm& f) {
    if (f.satake.restricted_type == "none")
        throw precondition_error("form " + f.id + " is compact: no restricted roots");
    return build_restricted(f.satake.restricted_type, f.satake.mults);
}

/// map root index -> 0/1 on the automorphism-fixed roots
inline std::map<size_t, int> compactness_grading(const RealForm& f) {
    std::map<size_t, int> out;
    for (size_t idx = 0; idx < f.datum.num_roots(); ++idx)
        if (f.imaginary(idx)) out[idx] = f.epsilon(idx);
    return out;
}

inline RealForm parse_descriptor(const nlohmann::json& j, const std::string& origin) {
    auto need = [&](const char* key) {
        if (!j.contains(key)) throw parse_error(origin + ": missing field '" + key + "'");
        return j.at(key);
    };
    RealForm f;
    try {
        if (need("schema_version").get<int>() != 1)
            throw parse_error(origin + ": unsupported schema_version");
        f.id = need("id").get<std::string>();
        f.complex_type = CartanType::parse(need("complex_type").get<std::string>());
        f.complex_as_real = j.value("complex_as_real", false);
        if (f.complex_as_real) {
            f.datum = RootDatum::build({f.complex_type, f.complex_type});
            size_t n = size_t(f.complex_type.rank);
            f.vogan.automorphism.resize(2 * n);
            for (size_t i = 0; i < n; ++i) {
                f.vogan.automorphism[i] = i + n;
                f.vogan.automorphism[i + n] = i;
            }
        } else {
            f.datum = RootDatum::build({f.complex_type});
            if (j.contains("automorphism")) {
                for (auto v : j.at("automorphism")) f.vogan.automorphism.push_back(v.get<size_t>() - 1);
            } else {
                f.vogan.automorphism.resize(f.datum.rank());
                for (size_t i = 0; i < f.datum.rank(); ++i) f.vogan.automorphism[i] = i;
            }
            if (j.contains("painted"))
                for (auto v : j.at("painted")) f.vogan.painted.insert(v.get<size_t>() - 1);
        }
        auto e = need("expected");
        f.dim_g = e.at("dim_g").get<std::int64_t>();
        f.dim_k = e.at("dim_k").get<std::int64_t>();
        f.rank_kC = e.at("rank_kC").get<std::int64_t>();
        auto s = need("satake");
        f.satake.restricted_type = s.at("restricted_type").get<std::string>();
        if (s.contains("mults"))
            for (auto v : s.at("mults")) f.satake.mults.push_back(v.get<std::int64_t>());
        f.satake.dim_a0 = s.at("dim_a0").get<std::int64_t>();
        f.satake.dim_m0 = s.at("dim_m0").get<std::int64_t>();
        if (j.contains("literature")) {
            auto l = j.at("literature");
            if (l.contains("r_prime")) f.literature.r_prime = l.at("r_prime").get<std::int64_t>();
            if (l.contains("r_g")) f.literature.r_g = l.at("r_g").get<std::int64_t>();
            f.literature.source = l.value("source", "");
        }
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(origin + ": " + e.what());
    }
    f.finalize_and_validate();
    return f;
}

inline std::vector<RealForm> load_catalog(const std::filesystem::path& dir) {
    if (!std::filesystem::exists(dir))
        throw parse_error("catalog directory does not exist: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& ent : std::filesystem::directory_iterator(dir))
        if (ent.path().extension() == ".json") files.push_back(ent.path());
    std::sort(files.begin(), files.end());
    std::vector<RealForm> forms;
    for (const auto& p : files) {
        std::ifstream in(p);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(p.filename().string() + ": " + e.what());
        }
        forms.push_back(parse_descriptor(j, p.filename().string()));
    }
    std::sort(forms.begin(), forms.end(),
              [](const RealForm& a, const RealForm& b) { return a.id < b.id; });
    return forms;
}

inline const RealForm& find_form(const std::vector<RealForm>& catalog, const std::string& id) {
    for (const auto& f : catalog)
        if (f.id == id) return f;
    throw precondition_error("unknown form id '" + id + "'");
}

} // namespace coho
