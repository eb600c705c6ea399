// coho: exact root-system structure theory for real forms -- restricted
// roots, theta-stable Cartans, vanishing-degree invariants, cone geometry,
// and the machine-checked claim suites.

#include <CLI11.hpp>

#include <iostream>

#include "coho/verify.hpp"

using namespace coho;

namespace {

// exit codes: 0 success / all pass, 1 verification failures,
// 2 input or catalog errors, 3 precondition errors
constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;

enum class Format { markdown, csv, jsonl };

Format parse_format(const std::string& s) {
    if (s == "markdown") return Format::markdown;
    if (s == "csv") return Format::csv;
    if (s == "json-lines") return Format::jsonl;
    throw CLI::ValidationError("--format must be markdown, csv or json-lines");
}

std::vector<RealForm> load(const std::string& data_dir) {
    std::string dir = data_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv("COHO_DATA_DIR"))
            dir = env;
        else
            dir = std::string(COHO_SOURCE_DIR) + "/data/catalog";
    }
    return load_catalog(dir);
}

QVec parse_coords(const std::string& s) {
    QVec out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Rat::parse(item));
    return out;
}

struct TableRow {
    std::string form;
    std::string rp_computed, rp_paper, rg_computed, rg_paper, match;
};

void emit_rows(Format fmt, const std::string& title, const std::vector<TableRow>& rows) {
    if (fmt == Format::jsonl) {
        for (const auto& r : rows) {
            nlohmann::json j;
            j["v"] = 1;
            j["table"] = title;
            j["form"] = r.form;
            j["rprime_computed"] = r.rp_computed;
            j["rprime_paper"] = r.rp_paper;
            j["rg_computed"] = r.rg_computed;
            j["rg_paper"] = r.rg_paper;
            j["match"] = r.match;
            std::cout << j.dump() << "\n";
        }
        return;
    }
    if (fmt == Format::csv) {
        for (const auto& r : rows)
            std::cout << title << "," << r.form << "," << r.rp_computed << "," << r.rp_paper
                      << "," << r.rg_computed << "," << r.rg_paper << "," << r.match << "\n";
        return;
    }
    std::cout << "\n## " << title << "\n\n";
    std::cout << "| form | r' computed | r' paper | r computed | r paper | match |\n";
    std::cout << "|---|---|---|---|---|---|\n";
    for (const auto& r : rows)
        std::cout << "| " << r.form << " | " << r.rp_computed << " | " << r.rp_paper << " | "
                  << r.rg_computed << " | " << r.rg_paper << " | " << r.match << " |\n";
}

int cmd_tables(const std::vector<RealForm>& catalog, Format fmt, bool deep, size_t jobs) {
    std::map<std::string, std::vector<TableRow>> tables;
    std::vector<const RealForm*> forms;
    for (const auto& f : catalog)
        if (!f.compact()) forms.push_back(&f);
    std::vector<TableRow> rows(forms.size());
    auto work = [&](size_t i) {
        const RealForm& f = *forms[i];
        TableRow row;
        row.form = f.id;
        auto rp = r_prime(f);
        row.rp_computed = rp.str();
        row.rp_paper = f.literature.r_prime ? std::to_string(*f.literature.r_prime) : "-";
        bool ok = true, skipped = false;
        if (f.literature.r_prime && *rp.value != *f.literature.r_prime) ok = false;
        try {
            auto rg_v = r_g(f, deep);
            row.rg_computed = rg_v.str();
            if (f.literature.r_g && (!rg_v.value || *rg_v.value != *f.literature.r_g)) ok = false;
        } catch (const unsupported_error&) {
            row.rg_computed = "-";
            skipped = true;
        }
        row.rg_paper = f.literature.r_g ? std::to_string(*f.literature.r_g) : "-";
        if (!f.literature.r_prime && !f.literature.r_g)
            row.match = "no reference";
        else if (!ok)
            row.match = "NO";
        else if (skipped)
            row.match = "skipped(deep)";
        else
            row.match = "yes";
        rows[i] = row;
    };
    if (jobs <= 1) {
        for (size_t i = 0; i < forms.size(); ++i) work(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> ws;
        for (size_t w = 0; w < jobs; ++w)
            ws.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < forms.size(); i = next.fetch_add(1)) work(i);
            });
        for (auto& t : ws) t.join();
    }
    bool all_ok = true;
    for (size_t i = 0; i < forms.size(); ++i) {
        if (rows[i].match == "NO") all_ok = false;
        tables[detail_verify::table_of(*forms[i])].push_back(rows[i]);
    }
    for (const auto& name : {"table1", "table2", "table3"}) {
        std::string title = name == std::string("table1")
                                ? "Complex simple Lie algebras"
                                : name == std::string("table2")
                                      ? "Noncompact noncomplex simple classical Lie algebras"
                                      : "Noncompact noncomplex exceptional simple Lie algebras";
        emit_rows(fmt, title, tables[name]);
    }
    return all_ok ? kExitOk : kExitVerifyFail;
}

int cmd_invariant(const std::vector<RealForm>& catalog, Format fmt, bool deep,
                  const std::string& kind, const std::string& form_id, const std::string& mu_str) {
    const RealForm* fp = nullptr;
    try {
        fp = &find_form(catalog, form_id);
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    const RealForm& f = *fp;
    std::string value, witness, method;
    try {
        if (kind == "rprime") {
            auto v = r_prime(f);
            value = v.str();
            witness = v.witness;
            method = "exhaustive";
        } else if (kind == "rg") {
            auto v = r_g(f, deep);
            value = v.str();
            witness = v.witness;
            method = v.method == InvariantValue::Method::complex_fast_path ? "complex_fast_path"
                     : v.method == InvariantValue::Method::compact_rule    ? "compact_rule"
                                                                           : "exhaustive";
        } else if (kind == "q0") {
            value = std::to_string(q0(f));
            witness = "(dim s - rank defect) / 2";
            method = "closed_form";
        } else if (kind == "rgmu") {
            if (mu_str.empty()) {
                std::cerr << "error: rgmu requires --mu\n";
                return kExitInput;
            }
            auto v = r_g_mu(f, parse_coords(mu_str));
            value = v.str();
            witness = v.witness;
            method = "exhaustive";
        } else {
            std::cerr << "error: unknown invariant '" << kind << "'\n";
            return kExitInput;
        }
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const unsupported_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    if (fmt == Format::jsonl) {
        nlohmann::json j;
        j["v"] = 1;
        j["form"] = f.id;
        j["invariant"] = kind;
        j["value"] = value;
        j["witness"] = witness;
        j["method"] = method;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << f.id << " " << kind << " = " << value << "\n";
        if (!witness.empty()) std::cout << "  witness: " << witness << "\n";
    }
    return kExitOk;
}

int cmd_langlands(const std::vector<RealForm>& catalog, Format fmt, const std::string& form_id,
                  const std::string& nu_str) {
    const RealForm* fp = nullptr;
    try {
        fp = &find_form(catalog, form_id);
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        auto rs = restricted_root_system(*fp);
        QVec nu = parse_coords(nu_str);
        auto d = langlands_decompose(rs, nu);
        std::string cell = d.levi.size() == rs.rank ? "G"
                           : d.levi.empty()         ? "P0"
                                                    : "P" + detail_verify::set_str(d.levi);
        if (fmt == Format::jsonl) {
            nlohmann::json j;
            j["v"] = 1;
            j["form"] = fp->id;
            j["cell"] = cell;
            std::vector<std::string> np, cc;
            for (const auto& x : d.nu_plus) np.push_back(x.str());
            for (const auto& x : d.cone_coefficients) cc.push_back(x.str());
            j["nu_plus"] = np;
            j["cone_coefficients"] = cc;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "P = " << cell << ", nu_plus = " << str(d.nu_plus)
                      << ", cone coefficients = " << str(d.cone_coefficients) << "\n";
        }
        return kExitOk;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

void print_report(const VerificationReport& r, Format fmt) {
    if (fmt == Format::jsonl) {
        std::cout << r.to_json().dump() << "\n";
        return;
    }
    if (fmt == Format::csv) {
        std::cout << r.claim << "," << VerificationReport::status_name(r.status) << ","
                  << r.witness << "\n";
        return;
    }
    std::cout << VerificationReport::status_name(r.status) << "  " << r.claim;
    if (!r.witness.empty()) std::cout << "  [" << r.witness << "]";
    std::cout << "\n";
}

int cmd_verify(const std::vector<RealForm>& catalog, Format fmt, bool deep, size_t jobs,
               const std::string& suite, std::int64_t bound) {
    std::vector<VerificationReport> reports;
    bool want_tables = suite == "tables" || suite == "all";
    bool want_lemmas = suite == "lemmas" || suite == "all";
    bool want_estimate0 = suite == "estimate0" || suite == "all";
    bool want_cross = suite == "cross" || suite == "all";
    if (!want_tables && !want_lemmas && !want_estimate0 && !want_cross) {
        std::cerr << "error: unknown suite '" << suite
                  << "' (expected tables, lemmas, estimate0, cross or all)\n";
        return kExitInput;
    }
    if (want_tables) {
        for (auto& r : reproduce_tables(catalog, deep, jobs)) reports.push_back(std::move(r));
        reports.push_back(check_observation_rprime_ge_r(catalog, deep));
    }
    if (want_lemmas) {
        // half-count and theta-symmetry over every supported (form, parabolic)
        std::vector<std::pair<const RealForm*, std::set<size_t>>> pairs;
        for (const auto& f : catalog) {
            if (f.compact()) continue;
            auto rs = restricted_root_system(f);
            for (size_t mask = 0; mask + 1 < (size_t(1) << rs.rank); ++mask) {
                std::set<size_t> S;
                for (size_t i = 0; i < rs.rank; ++i)
                    if (mask & (size_t(1) << i)) S.insert(i);
                pairs.push_back({&f, S});
            }
        }
        std::map<const RealForm*, MaxSplitAnalysis> analyses;
        for (const auto& f : catalog)
            if (!f.compact()) analyses.emplace(&f, analyze_max_split(f));
        auto lemma_reports = detail_verify::parallel_reports(
            pairs, jobs, [&](const std::pair<const RealForm*, std::set<size_t>>& p) {
                return std::vector<VerificationReport>{
                    check_lemma_half(*p.first, p.second, 1000, &analyses.at(p.first))};
            });
        for (auto& r : lemma_reports) reports.push_back(std::move(r));
        for (auto& r : check_lemma_lhalf(catalog, deep)) reports.push_back(std::move(r));
        for (const auto& f : catalog) {
            if (!f.complex_as_real || f.complex_type.rank > 6) continue;
            auto R = build_root_system(f.complex_type);
            for (size_t drop = 0; drop < R.rank(); ++drop)
                reports.push_back(check_interval_lemma(R, drop));
        }
        for (auto& r : check_lemma_lhalf6(catalog)) reports.push_back(std::move(r));
        // dichotomy checks over the maximal parabolics of the sweep forms
        for (const auto& id :
             {"complex:A2", "complex:A3", "G", "sl(3,R)", "sl(4,R)", "su(2,1)", "so(3,2)"}) {
            const auto& f = find_form(catalog, id);
            auto rs = restricted_root_system(f);
            for (size_t drop = 0; drop < rs.rank; ++drop) {
                std::set<size_t> S;
                for (size_t i = 0; i < rs.rank; ++i)
                    if (i != drop) S.insert(i);
                reports.push_back(check_lemma_half04(f, S, bound));
            }
        }
    }
    if (want_estimate0) {
        std::vector<std::pair<const RealForm*, std::set<size_t>>> pairs;
        for (const auto& id :
             {"complex:A2", "complex:A3", "G", "sl(3,R)", "sl(4,R)", "su(2,1)", "so(3,2)"}) {
            const auto& f = find_form(catalog, id);
            auto rs = restricted_root_system(f);
            for (size_t mask = 0; mask + 1 < (size_t(1) << rs.rank); ++mask) {
                std::set<size_t> S;
                for (size_t i = 0; i < rs.rank; ++i)
                    if (mask & (size_t(1) << i)) S.insert(i);
                pairs.push_back({&f, S});
            }
        }
        auto sweep_reports = detail_verify::parallel_reports(
            pairs, jobs, [&](const std::pair<const RealForm*, std::set<size_t>>& p) {
                return std::vector<VerificationReport>{
                    estimate0_sweep(*p.first, p.second, bound, deep)};
            });
        for (auto& r : sweep_reports) reports.push_back(std::move(r));
    }
    if (want_cross) {
        for (auto& r : check_cross_encoding(catalog)) reports.push_back(std::move(r));
    }
    size_t fails = 0, unsupported = 0;
    for (const auto& r : reports) {
        print_report(r, fmt);
        if (r.status == VerificationReport::Status::fail) ++fails;
        if (r.status == VerificationReport::Status::unsupported) ++unsupported;
    }
    if (fmt != Format::jsonl)
        std::cout << reports.size() << " claims, " << fails << " failures, " << unsupported
                  << " unsupported\n";
    return fails == 0 ? kExitOk : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact structure-theory computations for real simple Lie algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string data_dir, format_str = "markdown";
    bool deep = false;
    size_t jobs = 1;
    app.add_option("--data-dir", data_dir, "catalog directory (default: COHO_DATA_DIR or bundled)");
    app.add_option("--format", format_str, "output format: markdown, csv, json-lines");
    app.add_flag("--deep", deep, "unlock exhaustive searches beyond rank(t) = 6");
    app.add_option("--jobs", jobs, "worker cap for sweeps");

    auto* tables = app.add_subcommand("tables", "reproduce the r'/r tables against the catalog");

    auto* invariant = app.add_subcommand("invariant", "compute one invariant of one form");
    std::string inv_kind, inv_form, mu_str;
    invariant->add_option("kind", inv_kind, "rprime | rg | q0 | rgmu")->required();
    invariant->add_option("form", inv_form, "catalog form id")->required();
    invariant->add_option("--mu", mu_str, "parameter coordinates for rgmu (comma separated)");

    auto* langlands = app.add_subcommand("langlands", "cone decomposition of a functional");
    std::string ll_form, nu_str;
    langlands->add_option("form", ll_form, "catalog form id")->required();
    langlands->add_option("--nu", nu_str, "functional coordinates (comma separated)")->required();

    auto* verify = app.add_subcommand("verify", "run the machine-checked claim suites");
    std::string suite = "all";
    std::int64_t bound = 3;
    verify->add_option("--suite", suite, "tables | lemmas | estimate0 | cross | all");
    verify->add_option("--bound", bound, "coefficient box bound for sweeps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    Format fmt;
    std::vector<RealForm> catalog;
    try {
        fmt = parse_format(format_str);
        catalog = load(data_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (tables->parsed()) return cmd_tables(catalog, fmt, deep, jobs);
        if (invariant->parsed())
            return cmd_invariant(catalog, fmt, deep, inv_kind, inv_form, mu_str);
        if (langlands->parsed()) return cmd_langlands(catalog, fmt, ll_form, nu_str);
        if (verify->parsed()) return cmd_verify(catalog, fmt, deep, jobs, suite, bound);
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
