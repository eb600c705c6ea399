// Generates the bundled real-form catalog under data/catalog from closed-form
// family data (dimensions, Satake multiplicities, table values). Paintings are
// found by search over the fixed nodes and every emitted descriptor must pass
// the library's full validation.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "coho/realform.hpp"

using nlohmann::json;
using namespace coho;

namespace {

struct Row {
    std::string id;
    std::string complex_type;
    bool complex_as_real = false;
    std::vector<size_t> automorphism; // 1-based images; empty means identity
    std::int64_t dim_g = 0, dim_k = 0, rank_kC = 0;
    std::string restricted_type;
    std::vector<std::int64_t> mults;
    std::int64_t dim_a0 = 0, dim_m0 = 0;
    std::optional<std::int64_t> r_prime, r_g;
    std::string source;
};

std::string sanitize(std::string s) {
    for (auto& c : s)
        if (!isalnum(static_cast<unsigned char>(c))) c = '_';
    return s;
}

json descriptor_json(const Row& row, const std::vector<size_t>& painted) {
    json j;
    j["schema_version"] = 1;
    j["id"] = row.id;
    j["complex_type"] = row.complex_type;
    if (row.complex_as_real) j["complex_as_real"] = true;
    if (!row.automorphism.empty()) j["automorphism"] = row.automorphism;
    if (!painted.empty()) j["painted"] = painted;
    j["expected"] = {{"dim_g", row.dim_g}, {"dim_k", row.dim_k}, {"rank_kC", row.rank_kC}};
    json s;
    s["restricted_type"] = row.restricted_type;
    if (!row.mults.empty()) s["mults"] = row.mults;
    s["dim_a0"] = row.dim_a0;
    s["dim_m0"] = row.dim_m0;
    j["satake"] = s;
    if (row.r_prime || row.r_g || !row.source.empty()) {
        json l;
        if (row.r_prime) l["r_prime"] = *row.r_prime;
        if (row.r_g) l["r_g"] = *row.r_g;
        l["source"] = row.source;
        j["literature"] = l;
    }
    return j;
}

// Finds the lexicographically first painting (by size, then indices) of the
// automorphism-fixed nodes that satisfies every validation identity.
json resolve(const Row& row) {
    if (row.complex_as_real) {
        json j = descriptor_json(row, {});
        parse_descriptor(j, row.id);
        return j;
    }
    CartanType t = CartanType::parse(row.complex_type);
    size_t n = size_t(t.rank);
    std::vector<size_t> a(n);
    for (size_t i = 0; i < n; ++i) a[i] = i + 1;
    if (!row.automorphism.empty()) a = row.automorphism;
    std::vector<size_t> fixed;
    for (size_t i = 0; i < n; ++i)
        if (a[i] == i + 1) fixed.push_back(i + 1);
    std::vector<std::vector<size_t>> candidates;
    candidates.push_back({});
    for (auto i : fixed) candidates.push_back({i});
    for (size_t x = 0; x < fixed.size(); ++x)
        for (size_t y = x + 1; y < fixed.size(); ++y) candidates.push_back({fixed[x], fixed[y]});
    std::string first_err;
    for (const auto& painted : candidates) {
        json j = descriptor_json(row, painted);
        try {
            parse_descriptor(j, row.id);
            return j;
        } catch (const std::exception& e) {
            if (first_err.empty()) first_err = e.what();
        }
    }
    throw std::runtime_error("no valid painting found for " + row.id +
                             "; first error: " + first_err);
}

std::int64_t complex_r(const CartanType& t) {
    // minimal nilradical dimension of the simple complex algebra (table values)
    std::int64_t n = t.rank;
    switch (t.series) {
        case 'A': return n;
        case 'B':
        case 'C': return 2 * n - 1;
        case 'D': return 2 * n - 2;
        case 'G': return 5;
        case 'F': return 15;
        case 'E': return n == 6 ? 16 : n == 7 ? 27 : 57;
    }
    return 0;
}

std::vector<Row> complex_rows() {
    std::vector<Row> rows;
    std::vector<std::string> types = {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8",
                                      "B2", "B3", "B4", "B5", "B6", "B7", "B8",
                                      "C3", "C4", "C5", "C6", "C7", "C8",
                                      "D4", "D5", "D6", "D7", "D8",
                                      "G2", "F4", "E6", "E7", "E8"};
    for (const auto& ts : types) {
        CartanType t = CartanType::parse(ts);
        Row r;
        r.id = "complex:" + ts;
        r.complex_type = ts;
        r.complex_as_real = true;
        r.dim_g = 2 * t.dimension();
        r.dim_k = t.dimension();
        r.rank_kC = t.rank;
        r.restricted_type = ts;
        size_t classes = 1;
        if (ts[0] == 'B' || ts[0] == 'C' || ts[0] == 'F' || ts[0] == 'G') classes = 2;
        r.mults.assign(classes, 2);
        r.dim_a0 = t.rank;
        r.dim_m0 = t.rank;
        r.r_g = complex_r(t);
        r.r_prime = 2 * *r.r_g;
        r.source = "table1";
        rows.push_back(r);
    }
    return rows;
}

std::vector<size_t> an_flip(int rank) {
    std::vector<size_t> a(rank);
    for (int i = 0; i < rank; ++i) a[i] = size_t(rank - i);
    return a;
}

std::vector<Row> classical_rows() {
    std::vector<Row> rows;
    // sl(n,R), n = 2..6
    for (int n = 2; n <= 6; ++n) {
        Row r;
        r.id = "sl(" + std::to_string(n) + ",R)";
        r.complex_type = "A" + std::to_string(n - 1);
        if (n > 2) r.automorphism = an_flip(n - 1);
        r.dim_g = std::int64_t(n) * n - 1;
        r.dim_k = std::int64_t(n) * (n - 1) / 2;
        r.rank_kC = n / 2;
        r.restricted_type = r.complex_type;
        r.mults = {1};
        r.dim_a0 = n - 1;
        r.dim_m0 = 0;
        r.r_prime = n - 1;
        r.r_g = n - 1;
        r.source = "table2";
        rows.push_back(r);
    }
    // su(p,q); (2,2) ships without table values
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {4, 1}}) {
        Row r;
        r.id = "su(" + std::to_string(p) + "," + std::to_string(q) + ")";
        r.complex_type = "A" + std::to_string(p + q - 1);
        r.dim_g = std::int64_t(p + q) * (p + q) - 1;
        r.dim_k = std::int64_t(p) * p + std::int64_t(q) * q - 1;
        r.rank_kC = p + q - 1;
        if (p == q) {
            // C_q restricted data: m(short) = 2, m(long) = 1; q = 2 is realized
            // on the isometric B2 lattice with the same length classes
            r.restricted_type = q == 2 ? "B2" : "C" + std::to_string(q);
            r.mults = {2, 1};
            r.dim_m0 = q - 1;
        } else if (q == 1) {
            r.restricted_type = "BC1";
            r.mults = {2 * (std::int64_t(p) - q), 1};
            r.dim_m0 = std::int64_t(p - q) * (p - q) - 1 + q;
        } else {
            r.restricted_type = "BC" + std::to_string(q);
            r.mults = {2 * (std::int64_t(p) - q), 2, 1};
            r.dim_m0 = std::int64_t(p - q) * (p - q) - 1 + q;
        }
        r.dim_a0 = q;
        if (!(p == 2 && q == 2)) {
            r.r_prime = 2 * std::int64_t(p + q) - 3;
            r.r_g = q;
            r.source = "table2";
        }
        rows.push_back(r);
    }
    // so(p,q); (3,3) ships without table values
    struct SO {
        int p, q;
        bool lit;
    };
    for (auto [p, q, lit] : std::vector<SO>{{4, 1, true},
                                            {3, 2, true},
                                            {5, 1, true},
                                            {4, 2, true},
                                            {3, 3, false},
                                            {5, 2, true},
                                            {4, 3, true},
                                            {6, 1, true},
                                            {4, 4, true},
                                            {5, 5, true}}) {
        Row r;
        int n = p + q;
        r.id = "so(" + std::to_string(p) + "," + std::to_string(q) + ")";
        r.dim_g = std::int64_t(n) * (n - 1) / 2;
        r.dim_k = std::int64_t(p) * (p - 1) / 2 + std::int64_t(q) * (q - 1) / 2;
        r.rank_kC = p / 2 + q / 2;
        if (n % 2 == 1) {
            r.complex_type = "B" + std::to_string(n / 2);
        } else {
            int half = n / 2;
            r.complex_type = half == 3 ? "A3" : "D" + std::to_string(half);
            if (p % 2 == 1) { // so(odd,odd) carries the spin-swap involution
                if (half == 3)
                    r.automorphism = an_flip(3);
                else {
                    for (int i = 1; i <= half; ++i) r.automorphism.push_back(size_t(i));
                    std::swap(r.automorphism[half - 2], r.automorphism[half - 1]);
                }
            }
        }
        if (q == 1) {
            r.restricted_type = "A1";
            r.mults = {p - 1};
            r.dim_m0 = std::int64_t(p - 1) * (p - 2) / 2;
        } else if (p == q) {
            r.restricted_type = q == 3 ? "A3" : "D" + std::to_string(q);
            r.mults = {1};
            r.dim_m0 = 0;
        } else {
            r.restricted_type = "B" + std::to_string(q);
            r.mults = {p - q, 1};
            r.dim_m0 = std::int64_t(p - q) * (p - q - 1) / 2;
        }
        r.dim_a0 = q;
        if (lit) {
            r.r_prime = n - 2;
            r.r_g = q;
            r.source = "table2";
        }
        rows.push_back(r);
    }
    // sp(2n,R), n = 2, 3
    for (int n : {2, 3}) {
        Row r;
        r.id = "sp(" + std::to_string(2 * n) + ",R)";
        r.complex_type = n == 2 ? "B2" : "C" + std::to_string(n);
        r.dim_g = std::int64_t(n) * (2 * n + 1);
        r.dim_k = std::int64_t(n) * n;
        r.rank_kC = n;
        r.restricted_type = r.complex_type;
        r.mults = {1, 1};
        r.dim_a0 = n;
        r.dim_m0 = 0;
        r.r_prime = 2 * std::int64_t(n) - 1;
        r.r_g = n;
        r.source = n == 2 ? "table2 so(3,2) row (isomorphic form)" : "table2";
        rows.push_back(r);
    }
    // sp(p,q); (2,2) has its own table row
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        Row r;
        int n = p + q;
        r.id = "sp(" + std::to_string(p) + "," + std::to_string(q) + ")";
        r.complex_type = "C" + std::to_string(n);
        r.dim_g = std::int64_t(n) * (2 * n + 1);
        r.dim_k = std::int64_t(p) * (2 * p + 1) + std::int64_t(q) * (2 * q + 1);
        r.rank_kC = n;
        if (p == q) {
            r.restricted_type = "B2"; // C2 data on the isometric B2 lattice
            r.mults = {4, 3};
            r.dim_m0 = 3 * q;
        } else {
            r.restricted_type = "BC1";
            r.mults = {4 * (std::int64_t(p) - q), 3};
            r.dim_m0 = std::int64_t(p - q) * (2 * (p - q) + 1) + 3 * q;
        }
        r.dim_a0 = q;
        // (2,2) has its own table row; the 4(p+q)-5 formula excludes it
        r.r_prime = (p == 2 && q == 2) ? 10 : 4 * std::int64_t(n) - 5;
        r.r_g = 2 * q;
        r.source = "table2";
        rows.push_back(r);
    }
    // sl(3,H)
    {
        Row r;
        r.id = "sl(3,H)";
        r.complex_type = "A5";
        r.automorphism = an_flip(5);
        r.dim_g = 35;
        r.dim_k = 21;
        r.rank_kC = 3;
        r.restricted_type = "A2";
        r.mults = {4};
        r.dim_a0 = 2;
        r.dim_m0 = 9;
        r.r_prime = 8;
        r.r_g = 3;
        r.source = "table2";
        rows.push_back(r);
    }
    // so*(10), so*(12)
    {
        Row r;
        r.id = "so*(10)";
        r.complex_type = "D5";
        r.dim_g = 45;
        r.dim_k = 25;
        r.rank_kC = 5;
        r.restricted_type = "BC2";
        r.mults = {4, 4, 1};
        r.dim_a0 = 2;
        r.dim_m0 = 7;
        r.r_prime = 13;
        r.r_g = 4;
        r.source = "table2";
        rows.push_back(r);
        Row s;
        s.id = "so*(12)";
        s.complex_type = "D6";
        s.dim_g = 66;
        s.dim_k = 36;
        s.rank_kC = 6;
        s.restricted_type = "C3";
        s.mults = {4, 1};
        s.dim_a0 = 3;
        s.dim_m0 = 9;
        s.r_prime = 15;
        s.r_g = 5;
        s.source = "table2";
        rows.push_back(s);
    }
    return rows;
}

std::vector<Row> exceptional_rows() {
    std::vector<Row> rows;
    auto mk = [&](const std::string& id, const std::string& type, bool outer, std::int64_t dim_g,
                  std::int64_t dim_k, std::int64_t rank_k, const std::string& rt,
                  std::vector<std::int64_t> mults, std::int64_t a0, std::int64_t m0,
                  std::int64_t rp, std::int64_t rg) {
        Row r;
        r.id = id;
        r.complex_type = type;
        if (outer) r.automorphism = {6, 2, 5, 4, 3, 1}; // E6 diagram flip
        r.dim_g = dim_g;
        r.dim_k = dim_k;
        r.rank_kC = rank_k;
        r.restricted_type = rt;
        r.mults = std::move(mults);
        r.dim_a0 = a0;
        r.dim_m0 = m0;
        r.r_prime = rp;
        r.r_g = rg;
        r.source = "table3";
        rows.push_back(r);
    };
    mk("G", "G2", false, 14, 6, 2, "G2", {1, 1}, 2, 0, 5, 3);
    mk("F I", "F4", false, 52, 24, 4, "F4", {1, 1}, 4, 0, 15, 8);
    mk("F II", "F4", false, 52, 36, 4, "BC1", {8, 7}, 1, 21, 15, 4);
    mk("E I", "E6", true, 78, 36, 4, "E6", {1}, 6, 0, 16, 11);
    mk("E II", "E6", false, 78, 38, 6, "F4", {2, 1}, 4, 2, 21, 8);
    mk("E III", "E6", false, 78, 46, 6, "BC2", {8, 6, 1}, 2, 16, 21, 6);
    mk("E IV", "E6", true, 78, 52, 4, "A2", {8}, 2, 28, 16, 6);
    mk("E V", "E7", false, 133, 63, 7, "E7", {1}, 7, 0, 27, 15);
    mk("E VI", "E7", false, 133, 69, 7, "F4", {4, 1}, 4, 9, 33, 12);
    mk("E VII", "E7", false, 133, 79, 7, "C3", {8, 1}, 3, 28, 27, 11);
    mk("E VIII", "E8", false, 248, 120, 8, "E8", {1}, 8, 0, 57, 29);
    mk("E IX", "E8", false, 248, 136, 8, "F4", {8, 1}, 4, 28, 57, 24);
    return rows;
}

std::vector<Row> compact_rows() {
    std::vector<Row> rows;
    for (const auto& [id, type] : std::vector<std::pair<std::string, std::string>>{
             {"compact:a1", "A1"}, {"compact:g2", "G2"}, {"compact:f4", "F4"}}) {
        CartanType t = CartanType::parse(type);
        Row r;
        r.id = id;
        r.complex_type = type;
        r.dim_g = t.dimension();
        r.dim_k = t.dimension();
        r.rank_kC = t.rank;
        r.restricted_type = "none";
        r.dim_a0 = 0;
        r.dim_m0 = t.dimension();
        rows.push_back(r);
    }
    return rows;
}

} // namespace

int main(int argc, char** argv) {
    std::filesystem::path out = argc > 1 ? argv[1] : "data/catalog";
    std::filesystem::create_directories(out);
    std::vector<Row> rows;
    for (auto&& r : complex_rows()) rows.push_back(r);
    for (auto&& r : classical_rows()) rows.push_back(r);
    for (auto&& r : exceptional_rows()) rows.push_back(r);
    for (auto&& r : compact_rows()) rows.push_back(r);
    size_t written = 0;
    for (const auto& row : rows) {
        try {
            json j = resolve(row);
            std::ofstream f(out / (sanitize(row.id) + ".json"));
            f << j.dump(2) << "\n";
            ++written;
        } catch (const std::exception& e) {
            std::cerr << "FAILED " << row.id << ": " << e.what() << "\n";
            return 1;
        }
    }
    std::cout << "wrote " << written << " descriptors to " << out << "\n";
    return 0;
}
