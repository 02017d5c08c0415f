#include "qsector/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsector/bloch.hpp"
#include "qsector/explorer.hpp"
#include "qsector/identities.hpp"
#include "qsector/state_spec.hpp"

namespace qsector::cli {

namespace {

using nlohmann::json;

json big_to_json(const BigInt& v) {
    static const BigInt kLimit = BigInt(1) << 53;
    if (v >= -kLimit && v <= kLimit) return v.convert_to<std::int64_t>();
    return v.str();  // decimal string once past exact double/JSON range
}

json report_to_json(const RelationReport& rep) {
    json j{{"relation", rep.relation}, {"left", rep.left},       {"right", rep.right},
           {"residual", rep.residual}, {"tolerance", rep.tolerance}, {"pass", rep.pass}};
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

int default_threads() {
    if (const char* env = std::getenv("QSECTOR_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

struct OutFile {
    std::ofstream file;
    std::ostream* stream;

    OutFile(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream = &fallback;
        } else {
            file.open(path);
            if (!file) throw std::invalid_argument("cannot open output file: " + path);
            stream = &file;
        }
    }
};

int run_sectors(const std::string& state_text, const std::string& method, std::ostream& out) {
    PureState state = state_from_spec_text(state_text);
    SectorDistribution s = (method == "bloch") ? sectors_from_bloch(bloch_expand(state))
                                               : sectors_from_purities(state);
    double expected = 1;
    for (int i = 0; i < s.n_parties; ++i) expected *= s.local_dim;
    double min_sector = s.lengths[0];
    for (double v : s.lengths) min_sector = std::min(min_sector, v);
    double rel_residual = std::abs(s.total() - expected) / expected;
    json j{{"n", s.n_parties},
           {"d", s.local_dim},
           {"method", method},
           {"S", s.lengths},
           {"sum", s.total()},
           {"checks",
            json{{"completeness_relative_residual", rel_residual},
                 {"completeness_pass", rel_residual <= 1e-9},
                 {"min_sector", min_sector}}}};
    out << j.dump(2) << '\n';
    return 0;
}

int run_verify(const std::string& state_text, const std::string& relations, std::ostream& out) {
    PureState state = state_from_spec_text(state_text);
    std::vector<RelationReport> reports;
    if (relations == "all") {
        reports = check_all(state);
    } else if (relations == "pq") {
        reports.push_back(check_pq_relation(sectors_from_purities(state)));
    } else if (relations == "kpurity") {
        SectorDistribution s = sectors_from_purities(state);
        for (int k = 0; k <= (state.n_parties - 1) / 2; ++k)
            reports.push_back(check_k_purity(s, k));
    } else if (relations == "trr") {
        reports.push_back(check_trR_relation(state));
    } else if (relations == "even") {
        reports.push_back(check_even_sector_relation(state));
    } else if (relations == "balance") {
        reports.push_back(check_odd_qubit_balance(sectors_from_purities(state)));
        reports.push_back(check_h_invariant(state));
    } else if (relations == "smalln") {
        reports.push_back(check_small_n_identity(sectors_from_purities(state)));
    } else if (relations == "schmidt") {
        for (int p = 1; p <= state.n_parties; ++p)
            reports.push_back(check_schmidt_delta(state, p));
        reports.push_back(check_symmetrized_max(state));
    } else {
        throw std::invalid_argument("unknown relation set: " + relations);
    }
    json arr = json::array();
    bool all_pass = true;
    for (const auto& rep : reports) {
        arr.push_back(report_to_json(rep));
        all_pass = all_pass && rep.pass;
    }
    out << arr.dump(2) << '\n';
    return all_pass ? 0 : 1;
}

struct TableColumn {
    std::string header;
    std::vector<std::string> cells;
};

void print_aligned(const std::vector<TableColumn>& cols, std::ostream& out) {
    std::vector<std::size_t> width(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        width[c] = cols[c].header.size();
        for (const auto& cell : cols[c].cells) width[c] = std::max(width[c], cell.size());
    }
    auto row = [&](auto get) {
        for (std::size_t c = 0; c < cols.size(); ++c)
            out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << get(c);
        out << '\n';
    };
    row([&](std::size_t c) { return cols[c].header; });
    for (std::size_t r = 0; r < cols[0].cells.size(); ++r)
        row([&](std::size_t c) { return cols[c].cells[r]; });
}

const char* compare_sign(const BigInt& a, const BigInt& b) {
    if (a > b) return ">";
    if (a < b) return "<";
    return "=";
}

int run_tables(int table, std::ostream& out) {
    json j{{"table", table}, {"rows", json::array()}};
    std::vector<TableColumn> cols;
    if (table == 1) {
        // maximal N-sector for N = 2, 3, 4 as a function of d
        cols = {{"d", {}}, {"max_s2: d^2-1", {}}, {"max_s3: (d-1)^2(d+2)", {}}, {"max_s4: (d^2-1)^2", {}}};
        for (int d = 2; d <= 10; ++d) {
            BigInt s2 = ghz_nsector_exact(2, d);
            BigInt s3 = ghz_nsector_exact(3, d);
            BigInt s4 = bell_family_nsector_exact(4, d);
            cols[0].cells.push_back(std::to_string(d));
            cols[1].cells.push_back(s2.str());
            cols[2].cells.push_back(s3.str());
            cols[3].cells.push_back(s4.str());
            j["rows"].push_back(json{{"d", d},
                                     {"max_s2", big_to_json(s2)},
                                     {"max_s3", big_to_json(s3)},
                                     {"max_s4", big_to_json(s4)}});
        }
    } else if (table == 2 || table == 3) {
        const int n = (table == 2) ? 5 : 6;
        const int d_lo = (table == 2) ? 3 : 2;
        const int d_hi = (table == 2) ? 7 : 4;
        cols = {{"d", {}}, {"s_ghz", {}}, {"", {}}, {"s_bell", {}}};
        j["n"] = n;
        for (int d = d_lo; d <= d_hi; ++d) {
            BigInt g = ghz_nsector_exact(n, d);
            BigInt b = bell_family_nsector_exact(n, d);
            cols[0].cells.push_back(std::to_string(d));
            cols[1].cells.push_back(g.str());
            cols[2].cells.push_back(compare_sign(g, b));
            cols[3].cells.push_back(b.str());
            j["rows"].push_back(json{{"d", d},
                                     {"s_ghz", big_to_json(g)},
                                     {"sign", compare_sign(g, b)},
                                     {"s_bell", big_to_json(b)}});
        }
    } else {
        throw std::invalid_argument("table must be 1, 2 or 3");
    }
    print_aligned(cols, out);
    out << j.dump(2) << '\n';
    return 0;
}

int run_sweep(int d_max, int n_max, bool with_boundary, int threads, std::ostream& out) {
    auto records = sweep(d_max, n_max, threads);
    write_sweep_csv(records, out);
    if (with_boundary) {
        BoundaryResult b = boundary();
        out << json{{"gamma", b.gamma}, {"slope", b.slope}, {"residual", b.residual}}.dump()
            << '\n';
    }
    return 0;
}

int run_search(int n, int d, long samples, int steps, std::uint64_t seed,
               const std::string& initial_text, std::ostream& out) {
    SearchResult res;
    if (initial_text.empty()) {
        res = search_max_nsector(n, d, samples, steps, seed);
    } else {
        PureState initial = state_from_spec_text(initial_text);
        res = search_max_nsector(n, d, samples, steps, seed, &initial);
    }
    json j{{"n", res.n_parties},
           {"d", res.local_dim},
           {"seed", res.seed},
           {"samples_evaluated", res.samples_evaluated},
           {"improvements", res.improvements},
           {"best_value", res.best_value},
           {"reference_ghz", big_to_json(res.reference_ghz)},
           {"reference_bell", big_to_json(res.reference_bell)}};
    out << j.dump(2) << '\n';
    return 0;
}

int run_dump_bloch(const std::string& state_text, std::ostream& out) {
    PureState state = state_from_spec_text(state_text);
    BlochCoefficients coeffs = bloch_expand(state);
    for (const auto& [key, r] : coeffs.entries) {
        json j{{"idx", coeffs.decode(key)}, {"r", r}};
        out << j.dump() << '\n';
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sector lengths of pure multiqudit states"};
    app.require_subcommand(1);

    std::string state_text, method = "purity", relations = "all", out_path, initial_text;
    int table = 0, d_max = 100, n_max = 100, steps = 0, search_n = 0, search_d = 0;
    int threads = default_threads();
    long samples = 1000;
    std::uint64_t seed = 1;
    bool with_boundary = false;

    auto* sectors = app.add_subcommand("sectors", "sector distribution of a state");
    sectors->add_option("--state", state_text, "state spec (inline JSON or file path)")->required();
    sectors->add_option("--method", method, "purity | bloch")
        ->check(CLI::IsMember({"purity", "bloch"}));
    sectors->add_option("--out", out_path, "write to a file instead of stdout");

    auto* verify = app.add_subcommand("verify", "check sector relations on a state");
    verify->add_option("--state", state_text, "state spec (inline JSON or file path)")->required();
    verify->add_option("--relations", relations,
                       "all | pq | kpurity | trr | even | balance | smalln | schmidt")
        ->check(CLI::IsMember({"all", "pq", "kpurity", "trr", "even", "balance", "smalln", "schmidt"}));
    verify->add_option("--out", out_path, "write to a file instead of stdout");

    auto* tables = app.add_subcommand("tables", "built-in reference tables");
    tables->add_option("--table", table, "1 | 2 | 3")->required()->check(CLI::Range(1, 3));
    tables->add_option("--out", out_path, "write to a file instead of stdout");

    auto* sweep_cmd = app.add_subcommand("sweep", "GHZ vs Bell-product N-sector sweep");
    sweep_cmd->add_option("--d-max", d_max, "largest local dimension")->check(CLI::Range(2, 4000));
    sweep_cmd->add_option("--n-max", n_max, "largest party count")->check(CLI::Range(2, 4000));
    sweep_cmd->add_flag("--boundary", with_boundary, "append the crossover line as JSON");
    sweep_cmd->add_option("--threads", threads, "worker threads (default: QSECTOR_THREADS or 1)")
        ->check(CLI::Range(1, 1024));
    sweep_cmd->add_option("--out", out_path, "write to a file instead of stdout");

    auto* search = app.add_subcommand("search", "randomized search for large N-sectors");
    search->add_option("--n", search_n, "party count")->required()->check(CLI::Range(2, 31));
    search->add_option("--d", search_d, "local dimension")->required()->check(CLI::Range(2, 1024));
    search->add_option("--samples", samples, "Haar samples")->check(CLI::Range(1L, 100000000L));
    search->add_option("--steps", steps, "hill-climb steps")->check(CLI::Range(0, 100000000));
    search->add_option("--seed", seed, "RNG seed");
    search->add_option("--initial", initial_text, "state spec to seed the climb");
    search->add_option("--out", out_path, "write to a file instead of stdout");

    auto* dump = app.add_subcommand("dump-bloch", "all nonzero Bloch coefficients as JSON lines");
    dump->add_option("--state", state_text, "state spec (inline JSON or file path)")->required();
    dump->add_option("--out", out_path, "write to a file instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return (code == 0) ? 0 : 2;
    }

    try {
        OutFile sink(out_path, out);
        if (sectors->parsed()) return run_sectors(state_text, method, *sink.stream);
        if (verify->parsed()) return run_verify(state_text, relations, *sink.stream);
        if (tables->parsed()) return run_tables(table, *sink.stream);
        if (sweep_cmd->parsed()) return run_sweep(d_max, n_max, with_boundary, threads, *sink.stream);
        if (search->parsed())
            return run_search(search_n, search_d, samples, steps, seed, initial_text, *sink.stream);
        if (dump->parsed()) return run_dump_bloch(state_text, *sink.stream);
        err << "error: no subcommand\n";
        return 2;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace qsector::cli
