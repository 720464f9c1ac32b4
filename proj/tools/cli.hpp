#ifndef ASSOC2X2_TOOLS_CLI_HPP
#define ASSOC2X2_TOOLS_CLI_HPP

#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "assoc2x2/assoc2x2.hpp"

namespace assoc2x2::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Bad command-line input detected after flag parsing.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline ProbTable parse_table_arg(std::string_view text) {
    std::vector<double> v;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                              : comma - start);
        double d = 0.0;
        if (!parse_double(token, d)) {
            throw UsageError("malformed table entry '" + std::string(token) +
                             "' (expected p00,p01,p10,p11)");
        }
        v.push_back(d);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (v.size() != 4) throw UsageError("a table needs exactly four comma-separated entries");
    return make_table(v[0], v[1], v[2], v[3]);
}

inline MeasureKind measure_arg(const std::string& name, double n) {
    if (!parse_measure_tag(name)) throw UsageError("unknown measure '" + name + "'");
    return parse_measure(name, n);
}

// Output goes to `fallback` unless a path is given.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            out_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
        out_ = file_.get();
    }
    std::ostream& stream() { return *out_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_ = nullptr;
};

struct MeasureArgs {
    std::string table;
    std::vector<std::string> measures;
    double n = kDefaultHsWeight;
};

struct GridArgs {
    std::string measure;
    double odds_ratio = 0.0;
    double half_width = 0.0;
    double step = 0.0;
    double n = kDefaultHsWeight;
    std::string output;
};

struct ScanArgs {
    std::string input;
    std::string rank_by = "HS";
    std::vector<std::string> measures;
    std::size_t top = 10;
    double n = kDefaultHsWeight;
    double pseudocount = 0.5;
    unsigned threads = 0;
    std::string output;
};

inline void run_measure(const MeasureArgs& a, std::ostream& out) {
    const ProbTable t = parse_table_arg(a.table);
    std::vector<MeasureKind> kinds;
    if (a.measures.empty()) {
        for (auto tag : kAllMeasureTags) kinds.push_back({tag, a.n});
    } else {
        for (const auto& name : a.measures) kinds.push_back(measure_arg(name, a.n));
    }
    // Evaluate everything first so a failure leaves stdout untouched.
    std::ostringstream buf;
    for (const auto& k : kinds) {
        buf << measure_name(k.tag) << ',' << format_fixed(evaluate(k, t), 6) << '\n';
    }
    out << buf.str();
}

inline void run_grid(const GridArgs& a, std::ostream& out) {
    const GridSpec spec{measure_arg(a.measure, a.n), a.odds_ratio, a.half_width, a.step};
    spec.validate();
    if (spec.measure.tag == MeasureTag::hs) detail::check_hs_weight(spec.measure.n);
    Sink sink(a.output, out);
    emit_grid(spec, sink.stream());
}

inline void run_critical(double odds_ratio, std::ostream& out) {
    const auto points = critical_points(odds_ratio);
    out << "branch,classification,p00,p01,p10,p11,y,z\n";
    for (const auto& cp : points) {
        out << to_string(cp.branch) << ',' << to_string(cp.classification);
        for (double p : cp.table.cells()) out << ',' << format_roundtrip(p);
        out << ',' << format_roundtrip(cp.coords.y) << ',' << format_roundtrip(cp.coords.z) << '\n';
    }
}

inline void run_scan(const ScanArgs& a, std::ostream& out) {
    ScanOptions opt;
    opt.rank_by = measure_arg(a.rank_by, a.n);
    opt.measures.clear();
    for (const auto& name : a.measures) {
        const auto k = measure_arg(name, a.n);
        if (std::find(opt.measures.begin(), opt.measures.end(), k) == opt.measures.end()) {
            opt.measures.push_back(k);
        }
    }
    if (std::find(opt.measures.begin(), opt.measures.end(), opt.rank_by) == opt.measures.end()) {
        opt.measures.insert(opt.measures.begin(), opt.rank_by);
    }
    opt.top_k = a.top;
    opt.pseudocount = a.pseudocount;
    opt.threads = a.threads;
    if (opt.rank_by.tag == MeasureTag::hs) detail::check_hs_weight(opt.rank_by.n);
    detail::check_scan_options(opt);

    std::ifstream in(a.input, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file '" + a.input + "'");
    const BinaryMatrix m = load_matrix(in);

    std::vector<PairResult> results;
    try {
        results = scan(m, opt);
    } catch (const DegenerateTable& e) {
        // A data problem, not a usage problem.
        throw std::runtime_error(e.what());
    }
    Sink sink(a.output, out);
    write_scan_csv(sink.stream(), opt.measures, results);
}

/// Runs the command line; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Measures of association for 2x2 probability tables"};
    app.name("assoc2x2");
    app.require_subcommand(1);

    MeasureArgs measure_args;
    auto* measure = app.add_subcommand("measure", "Evaluate measures on one table");
    measure->add_option("--table", measure_args.table, "p00,p01,p10,p11 (positive, renormalized)")
        ->required();
    measure->add_option("--measures", measure_args.measures,
                        "Comma-separated list of lambda,Q,Y,D,Dprime,r,MI,sMI,kappa,H,Hdiag,HS (default: all)")
        ->delimiter(',');
    measure->add_option("--n", measure_args.n, "Weight exponent of HS")->capture_default_str();

    GridArgs grid_args;
    auto* grid = app.add_subcommand("grid", "Sample a measure on a (y,z) grid at fixed odds-ratio");
    grid->add_option("--measure", grid_args.measure, "Measure name")->required();
    grid->add_option("--odds-ratio", grid_args.odds_ratio, "Odds-ratio of the plane")->required();
    grid->add_option("--half-width", grid_args.half_width, "Grid extent in y and z")->required();
    grid->add_option("--step", grid_args.step, "Grid spacing")->required();
    grid->add_option("--n", grid_args.n, "Weight exponent of HS")->capture_default_str();
    grid->add_option("-o,--output", grid_args.output, "Output CSV file (default: stdout)");

    double critical_odds = 0.0;
    auto* critical = app.add_subcommand("critical", "Entropy critical points at a fixed odds-ratio");
    critical->add_option("--odds-ratio", critical_odds, "Odds-ratio")->required();

    ScanArgs scan_args;
    auto* scan_cmd = app.add_subcommand(
        "scan",
        "Rank all marker pairs of a binary TSV matrix. Missing values (NA) are handled by "
        "pairwise deletion: a sample counts for a pair only when both markers are observed.");
    scan_cmd->add_option("-i,--input", scan_args.input, "Input TSV (header of ids, rows of 0/1/NA)")
        ->required();
    scan_cmd->add_option("--measure", scan_args.rank_by, "Measure to rank by (absolute value)")
        ->capture_default_str();
    scan_cmd->add_option("--measures", scan_args.measures, "Extra comma-separated measures to report")
        ->delimiter(',');
    scan_cmd->add_option("--top", scan_args.top, "Number of pairs to report")->capture_default_str();
    scan_cmd->add_option("--n", scan_args.n, "Weight exponent of HS")->capture_default_str();
    scan_cmd->add_option("--pseudocount", scan_args.pseudocount, "Added to every cell count")
        ->capture_default_str();
    scan_cmd->add_option("--threads", scan_args.threads, "Worker threads (0: all cores)")
        ->capture_default_str();
    scan_cmd->add_option("-o,--output", scan_args.output, "Output CSV file (default: stdout)");

    auto* table1 = app.add_subcommand("table1", "Print the reference comparison table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*measure) run_measure(measure_args, out);
        else if (*grid) run_grid(grid_args, out);
        else if (*critical) run_critical(critical_odds, out);
        else if (*scan_cmd) run_scan(scan_args, out);
        else if (*table1) write_reference_table(out);
        out.flush();
        if (!out) throw std::runtime_error("output stream failed");
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

} // namespace assoc2x2::cli

#endif // ASSOC2X2_TOOLS_CLI_HPP
