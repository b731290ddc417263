// stabweight command-line front end: parameter reports, weight tables, LP
// checks, architecture bounds, reduction tooling and catalog verification.

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stabweight/architecture.hpp"
#include "stabweight/bounds.hpp"
#include "stabweight/catalog.hpp"
#include "stabweight/enumerator.hpp"
#include "stabweight/errors.hpp"
#include "stabweight/exactlp.hpp"
#include "stabweight/reductions.hpp"
#include "stabweight/stabilizer.hpp"

using json = nlohmann::ordered_json;
using namespace stabweight;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitMismatch = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Commands write data to stdout unless an output path is given; progress and
// diagnostics always go to stderr.
struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit OutputTarget(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw ParseError("cannot open output file: " + path);
        stream = &file;
    }
    std::ostream& out() { return *stream; }
};

json rational_vector_json(const RationalVector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i].get_str());
    return arr;
}

std::string rational_vector_text(const RationalVector& v) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + "]";
}

StabilizerGenerators group_from_file(const std::string& path) {
    std::vector<PauliOperator> ops = read_pauli_lines(read_file(path));
    if (ops.empty()) throw ParseError(path + " contains no operators");
    return StabilizerGenerators::from_generators(std::move(ops));
}

struct CommonBudgets {
    std::size_t max_n = DistanceBudget{}.max_n;
    std::size_t max_weight = DistanceBudget{}.max_weight;
    std::size_t max_rank = kDefaultMaxRank;

    DistanceBudget distance() const { return {max_n, max_weight}; }
};

void add_budget_flags(CLI::App* cmd, CommonBudgets& budgets) {
    cmd->add_option("--max-n", budgets.max_n, "distance search qubit budget");
    cmd->add_option("--max-weight", budgets.max_weight, "distance search weight budget");
    cmd->add_option("--max-rank", budgets.max_rank, "group enumeration rank budget");
}

// ---------------------------------------------------------------- params --

int run_params(const std::string& path, const CommonBudgets& budgets, const std::string& format,
               const std::string& output) {
    StabilizerGenerators g = group_from_file(path);
    CodeParameters params = code_parameters(g, budgets.distance(), budgets.max_rank);
    std::vector<PauliOperator> optimal = weight_optimal_generating_set(g, budgets.max_rank);
    RationalVector a = enumerator_from_group(g, budgets.max_rank);

    OutputTarget target(output);
    if (format == "json") {
        json doc;
        doc["n"] = params.n;
        doc["k"] = params.k;
        doc["d"] = params.d.str();
        doc["w"] = params.w;
        doc["w_avg"] = params.w_avg.get_str();
        doc["optimal_generators"] = json::array();
        for (const auto& p : optimal) doc["optimal_generators"].push_back(p.str());
        doc["enumerator"] = rational_vector_json(a);
        target.out() << doc.dump(2) << "\n";
        return 0;
    }
    target.out() << "[[" << params.n << "," << params.k << "," << params.d.str() << "]] W="
                 << params.w << " W_avg=" << params.w_avg.get_str() << "\n";
    target.out() << "weight-optimal generating set:\n";
    for (const auto& p : optimal)
        target.out() << "  " << p.str() << "  (weight " << p.weight() << ")\n";
    target.out() << "A = " << rational_vector_text(a) << "\n";
    return 0;
}

// ----------------------------------------------------------- enumerators --

int run_enumerators(const std::string& path, const CommonBudgets& budgets,
                    const std::string& format, const std::string& output) {
    StabilizerGenerators g = group_from_file(path);
    RationalVector a = enumerator_from_group(g, budgets.max_rank);
    Integer dim = pow2(static_cast<unsigned long>(g.k()));
    RationalVector b = macwilliams(a, dim);
    RationalVector sh = shadow(a, dim);
    ExtendedInt dist = distance_from_enumerators(a, b);
    auto [mean, predicted] = average_group_weight_check(g, budgets.max_rank);

    OutputTarget target(output);
    if (format == "json") {
        json doc;
        doc["n"] = static_cast<int>(g.num_qubits());
        doc["k"] = g.k();
        doc["a"] = rational_vector_json(a);
        doc["b"] = rational_vector_json(b);
        doc["shadow"] = rational_vector_json(sh);
        doc["enumerator_distance"] = dist.str();
        doc["mean_weight"] = mean.get_str();
        doc["mean_weight_identity"] = predicted.get_str();
        target.out() << doc.dump(2) << "\n";
        return 0;
    }
    target.out() << "A  = " << rational_vector_text(a) << "\n";
    target.out() << "B  = " << rational_vector_text(b) << "\n";
    target.out() << "Sh = " << rational_vector_text(sh) << "\n";
    target.out() << "distance from enumerators: " << dist.str() << "\n";
    target.out() << "mean group weight " << mean.get_str() << ", (3n - A_1)/4 = "
                 << predicted.get_str() << "\n";
    return 0;
}

// ------------------------------------------------------------------ table --

struct JoinedRow {
    int n, k, d;
    ExtendedInt wlb;
    std::optional<int> wub;
    std::string source;
    std::string citation;
};

std::vector<JoinedRow> joined_rows(const WeightTable& table, const UpperBoundTable* uppers) {
    std::vector<JoinedRow> rows;
    for (const auto& [key, cell] : table.cells()) {
        JoinedRow row{std::get<0>(key), std::get<1>(key), std::get<2>(key),
                      cell.wlb,         std::nullopt,     cell_source_name(cell.source),
                      cell.citation};
        if (uppers) {
            auto hit = uppers->cells.find(key);
            if (hit != uppers->cells.end()) row.wub = hit->second;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

int run_table(int max_n, int jobs, const std::string& overrides_path,
              const std::string& catalog_path, const std::string& format,
              const std::string& output) {
    TableOptions options;
    options.jobs = jobs;
    options.progress = [](const std::string& line) { std::cerr << line << "\n"; };
    WeightTable table = compute_table(max_n, options);
    if (!overrides_path.empty()) apply_overrides(table, read_overrides(overrides_path));

    std::optional<UpperBoundTable> uppers;
    if (!catalog_path.empty()) {
        Catalog catalog = Catalog::load(catalog_path);
        uppers = upper_bound_table(catalog);
    }
    std::vector<JoinedRow> rows = joined_rows(table, uppers ? &*uppers : nullptr);

    OutputTarget target(output);
    if (format == "json") {
        json doc = json::array();
        for (const auto& row : rows) {
            json item;
            item["n"] = row.n;
            item["k"] = row.k;
            item["d"] = row.d;
            if (row.wlb.is_finite())
                item["wlb"] = static_cast<int>(row.wlb.value());
            else
                item["wlb"] = "inf";
            if (row.wub) item["wub"] = *row.wub;
            item["source"] = row.source;
            if (!row.citation.empty()) item["citation"] = row.citation;
            doc.push_back(std::move(item));
        }
        target.out() << doc.dump(2) << "\n";
        return 0;
    }
    if (format == "csv") {
        target.out() << "n,k,d,wlb,wub,source,citation\n";
        for (const auto& row : rows) {
            target.out() << row.n << "," << row.k << "," << row.d << "," << row.wlb.str() << ",";
            if (row.wub) target.out() << *row.wub;
            target.out() << "," << row.source << "," << row.citation << "\n";
        }
        return 0;
    }
    target.out() << "  n  k  d   wlb   wub  source\n";
    for (const auto& row : rows) {
        char line[64];
        std::snprintf(line, sizeof(line), "%3d %2d %2d %5s %5s  ", row.n, row.k, row.d,
                      row.wlb.str().c_str(), row.wub ? std::to_string(*row.wub).c_str() : "-");
        target.out() << line << row.source;
        if (!row.citation.empty()) target.out() << " (" << row.citation << ")";
        target.out() << "\n";
    }
    return 0;
}

// --------------------------------------------------------------- lp-check --

int run_lp_check(int n, int k, int d, int w, bool standard_only) {
    if (standard_only || w == 0) {
        FeasibilityResult result = feasible(standard_lp(n, k, d));
        bool ok = result.status == LpStatus::Feasible;
        std::cout << "standard enumerator system for [[" << n << "," << k << "," << d
                  << "]]: " << (ok ? "feasible" : "infeasible (no code)") << "\n";
        return 0;
    }
    std::cerr << "building the weight table up to n = " << n - 1
              << " for the side-condition context\n";
    WeightTable table = compute_table(n - 1);
    bool ruled_out = excluded(n, k, d, w, table);
    std::cout << "[[" << n << "," << k << "," << d << ";" << w << "]]: "
              << (ruled_out ? "infeasible (no code)" : "feasible (not excluded)") << "\n";
    return 0;
}

// ----------------------------------------------------- arch-bound/search --

int run_arch_bound(int n, int k, int d) {
    std::cerr << "scanning weights with exact-rational LPs; n = " << n
              << " can take minutes to hours\n";
    int lp_bound = structure_agnostic_weight_lb(n, k, d);
    int nk_bound = nk_lower_bound(n, k);
    std::cout << "structure-agnostic LP bound: W >= " << lp_bound << "\n";
    std::cout << "ceil(2n/(n-k)) bound: W >= " << nk_bound << "\n";
    std::cout << "combined: W >= " << std::max(lp_bound, nk_bound) << "\n";
    return 0;
}

int run_arch_search(const std::string& graph_spec, const std::string& centers_spec, int n, int k,
                    int d, int r_max, int cap) {
    ConnectivityGraph graph =
        graph_spec == "eagle" ? eagle_graph() : load_graph(graph_spec);
    std::vector<int> centers = load_centers(
        centers_spec == "default" ? std::string("data/eagle_centers.txt") : centers_spec);
    if (n == 0) n = graph.num_qubits;
    std::optional<int> cap_opt = cap > 0 ? std::optional<int>(cap) : std::nullopt;
    std::cerr << "graph with " << graph.num_qubits << " qubits, " << centers.size()
              << " centers; scanning radii 1.." << r_max << "\n";
    std::optional<int> radius = min_radius(graph, centers, n, k, d, r_max, cap_opt);
    if (radius)
        std::cout << "min radius " << *radius << "\n";
    else
        std::cout << "no radius <= " << r_max << " is feasible\n";
    return 0;
}

// ----------------------------------------------------------------- reduce --

int run_reduce(const std::string& kind, const std::string& in_path, const std::string& to,
               const std::string& out_path, bool decide) {
    if (!decide && to.empty())
        throw ParseError("reduce needs --decide, --to, or both");

    std::optional<MLDInstance> mld;
    std::optional<SBPInstance> sbp;
    std::optional<MWSGInstance> mwsg;
    if (kind == "mld")
        mld = read_mld(in_path);
    else if (kind == "sbp")
        sbp = read_sbp(in_path);
    else
        mwsg = read_mwsg(in_path);

    // walk the chain as far as requested
    if (!to.empty()) {
        if (kind == "mwsg" || (kind == "sbp" && to != "mwsg") || (kind == "mld" && to == "mld"))
            throw ParseError("cannot reduce " + kind + " to " + to);
        if (mld) {
            std::optional<SBPInstance> step = mld_to_sbp(*mld);
            if (!step) {
                std::cout << "NO-SOLUTION (the syndrome equations are inconsistent)\n";
                return 0;
            }
            sbp = std::move(step);
        }
        if (to == "mwsg") mwsg = sbp_to_mwsg(*sbp);

        OutputTarget target(out_path);
        if (to == "sbp")
            write_sbp(*sbp, target.out());
        else
            write_mwsg(*mwsg, target.out());
    }
    if (decide) {
        bool yes = false;
        if (to == "sbp")
            yes = decide_sbp(*sbp);
        else if (to == "mwsg")
            yes = decide_mwsg(*mwsg);
        else if (mld)
            yes = decide_mld(*mld);
        else if (sbp)
            yes = decide_sbp(*sbp);
        else
            yes = decide_mwsg(*mwsg);
        std::cout << (yes ? "YES" : "NO") << "\n";
    }
    return 0;
}

// --------------------------------------------------------- verify-catalog --

int run_verify_catalog(const std::string& catalog_path, int jobs, const CommonBudgets& budgets,
                       const std::string& format, const std::string& output) {
    Catalog catalog = Catalog::load(catalog_path);
    const auto& entries = catalog.entries();
    std::vector<VerificationReport> reports(entries.size());

    jobs = std::max(1, jobs);
    std::vector<std::future<void>> workers;
    std::atomic<std::size_t> next{0};
    for (int j = 0; j < jobs; ++j) {
        workers.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next.fetch_add(1); i < entries.size(); i = next.fetch_add(1))
                reports[i] = verify_entry(catalog, entries[i], budgets.distance());
        }));
    }
    for (auto& worker : workers) worker.get();

    std::size_t failures = 0;
    OutputTarget target(output);
    if (format == "json") {
        json doc = json::array();
        for (const auto& rep : reports) {
            json item;
            item["label"] = rep.label.str();
            item["ok"] = rep.ok();
            item["n"] = rep.n;
            item["k"] = rep.k;
            item["d"] = rep.d_checked ? json(rep.d.str()) : json(nullptr);
            item["w"] = rep.w;
            item["w_exact"] = rep.w_exact;
            item["set_weight"] = rep.set_weight;
            if (!rep.note.empty()) item["note"] = rep.note;
            doc.push_back(std::move(item));
            failures += rep.ok() ? 0 : 1;
        }
        target.out() << doc.dump(2) << "\n";
    } else {
        for (const auto& rep : reports) {
            target.out() << rep.describe() << "\n";
            failures += rep.ok() ? 0 : 1;
        }
    }
    std::cerr << entries.size() - failures << "/" << entries.size() << " entries verified\n";
    return failures == 0 ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weight parameters of stabilizer codes: tables, bounds, catalog tools"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string output;
    app.add_option("--format", format, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--output", output, "write data here instead of stdout");

    CommonBudgets budgets;
    std::string file;
    int n = 0, k = 0, d = 0, w = 0;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    CLI::App* params_cmd = app.add_subcommand("params", "n, k, d, W, W_avg of a generator file");
    params_cmd->add_option("file", file, "one Pauli per line")->required();
    add_budget_flags(params_cmd, budgets);

    CLI::App* enum_cmd = app.add_subcommand("enumerators", "A, B and shadow enumerators");
    enum_cmd->add_option("file", file, "one Pauli per line")->required();
    add_budget_flags(enum_cmd, budgets);

    std::string overrides_path, catalog_path;
    CLI::App* table_cmd = app.add_subcommand("table", "joined [wlb, wub] weight table");
    int max_n = 9;
    table_cmd->add_option("--max-n", max_n, "largest qubit count")->check(CLI::Range(4, 64));
    table_cmd->add_option("--jobs", jobs, "parallel LP workers");
    table_cmd->add_option("--overrides", overrides_path, "table override file");
    table_cmd->add_option("--catalog", catalog_path, "catalog for the upper-bound column");

    CLI::App* lp_cmd = app.add_subcommand("lp-check", "feasibility of one parameter point");
    bool standard_only = false;
    lp_cmd->add_option("-n", n, "qubits")->required();
    lp_cmd->add_option("-k", k, "logical qubits")->required();
    lp_cmd->add_option("-d", d, "distance")->required();
    lp_cmd->add_option("-w", w, "check the weight-w family instead of the standard system");
    lp_cmd->add_flag("--standard", standard_only, "only the standard enumerator system");

    CLI::App* arch_bound_cmd =
        app.add_subcommand("arch-bound", "structure-agnostic weight lower bound");
    arch_bound_cmd->add_option("-n", n, "qubits")->required();
    arch_bound_cmd->add_option("-k", k, "logical qubits")->required();
    arch_bound_cmd->add_option("-d", d, "distance")->required();

    CLI::App* arch_search_cmd =
        app.add_subcommand("arch-search", "smallest feasible check radius on a device graph");
    std::string graph_spec = "eagle", centers_spec = "default";
    int r_max = 10, cap = 0;
    arch_search_cmd->add_option("--graph", graph_spec, "edge-list file or 'eagle'");
    arch_search_cmd->add_option("--centers", centers_spec, "centers file or 'default'");
    arch_search_cmd->add_option("-n", n, "qubits (defaults to the graph size)");
    arch_search_cmd->add_option("-k", k, "logical qubits")->required();
    arch_search_cmd->add_option("-d", d, "distance")->required();
    arch_search_cmd->add_option("--r-max", r_max, "largest radius to try");
    arch_search_cmd->add_option("--cap", cap, "subset-size cap for the histogram");

    CLI::App* reduce_cmd = app.add_subcommand("reduce", "MLD -> SBP -> MWSG tooling");
    std::string kind, to;
    bool decide = false;
    reduce_cmd->add_option("--kind", kind, "instance kind of the input")
        ->required()
        ->check(CLI::IsMember({"mld", "sbp", "mwsg"}));
    reduce_cmd->add_option("--in", file, "instance file")->required();
    reduce_cmd->add_option("--to", to, "reduce to this kind")
        ->check(CLI::IsMember({"sbp", "mwsg"}));
    reduce_cmd->add_flag("--decide", decide, "print the YES/NO answer");

    CLI::App* verify_cmd = app.add_subcommand("verify-catalog", "verify every catalog entry");
    std::string verify_catalog_path = "data/catalog.txt";
    verify_cmd->add_option("--catalog", verify_catalog_path, "catalog file");
    verify_cmd->add_option("--jobs", jobs, "parallel verification workers");
    add_budget_flags(verify_cmd, budgets);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*params_cmd) return run_params(file, budgets, format, output);
        if (*enum_cmd) return run_enumerators(file, budgets, format, output);
        if (*table_cmd)
            return run_table(max_n, jobs, overrides_path, catalog_path, format, output);
        if (*lp_cmd) return run_lp_check(n, k, d, w, standard_only);
        if (*arch_bound_cmd) return run_arch_bound(n, k, d);
        if (*arch_search_cmd)
            return run_arch_search(graph_spec, centers_spec, n, k, d, r_max, cap);
        if (*reduce_cmd) return run_reduce(kind, file, to, output, decide);
        if (*verify_cmd)
            return run_verify_catalog(verify_catalog_path, jobs, budgets, format, output);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
