#ifndef ASSOC2X2_SCANNER_HPP
#define ASSOC2X2_SCANNER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "assoc2x2/errors.hpp"
#include "assoc2x2/format.hpp"
#include "assoc2x2/measures.hpp"
#include "assoc2x2/table.hpp"

namespace assoc2x2 {

/// Samples x binary markers with missing entries. Stored column-major.
class BinaryMatrix {
public:
    static constexpr std::uint8_t kMissing = 2;

    /// `rows` holds one vector per sample, entries 0, 1 or kMissing.
    BinaryMatrix(std::vector<std::string> marker_ids,
                 const std::vector<std::vector<std::uint8_t>>& rows)
        : ids_(std::move(marker_ids)), samples_(rows.size()) {
        if (ids_.size() < 2) throw std::invalid_argument("binary matrix needs at least 2 markers");
        columns_.assign(ids_.size(), std::vector<std::uint8_t>(samples_, kMissing));
        for (std::size_t s = 0; s < rows.size(); ++s) {
            if (rows[s].size() != ids_.size()) {
                throw std::invalid_argument("sample row " + std::to_string(s) +
                                            " does not match the marker count");
            }
            for (std::size_t m = 0; m < ids_.size(); ++m) {
                const std::uint8_t v = rows[s][m];
                if (v > kMissing) throw std::invalid_argument("marker entries must be 0, 1 or missing");
                columns_[m][s] = v;
            }
        }
    }

    const std::vector<std::string>& marker_ids() const noexcept { return ids_; }
    std::size_t markers() const noexcept { return ids_.size(); }
    std::size_t samples() const noexcept { return samples_; }
    std::uint8_t at(std::size_t sample, std::size_t marker) const {
        return columns_.at(marker).at(sample);
    }
    const std::vector<std::uint8_t>& column(std::size_t marker) const { return columns_.at(marker); }

private:
    std::vector<std::string> ids_;
    std::size_t samples_;
    std::vector<std::vector<std::uint8_t>> columns_;
};

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

} // namespace detail

/// Reads a tab-separated matrix: a header of marker ids, then one row per
/// sample with tokens 0, 1 or NA. Blank lines are skipped.
inline BinaryMatrix load_matrix(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> ids;
    while (std::getline(in, line)) {
        ++line_no;
        const auto view = detail::strip_cr(line);
        if (view.empty()) continue;
        const auto fields = detail::split_tabs(view);
        std::unordered_set<std::string_view> seen;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (fields[c].empty()) throw ParseError(line_no, c + 1, "empty marker id");
            if (!seen.insert(fields[c]).second) {
                throw ParseError(line_no, c + 1, "duplicate marker id '" + std::string(fields[c]) + "'");
            }
            ids.emplace_back(fields[c]);
        }
        break;
    }
    if (ids.empty()) throw ParseError(line_no + 1, 1, "missing header line");
    if (ids.size() < 2) throw ParseError(line_no, 1, "at least 2 markers required");

    std::vector<std::vector<std::uint8_t>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        const auto view = detail::strip_cr(line);
        if (view.empty()) continue;
        const auto fields = detail::split_tabs(view);
        if (fields.size() != ids.size()) {
            throw ParseError(line_no, std::min(fields.size(), ids.size()) + 1,
                             "expected " + std::to_string(ids.size()) + " fields, found " +
                                 std::to_string(fields.size()));
        }
        std::vector<std::uint8_t> row(ids.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (fields[c] == "0") {
                row[c] = 0;
            } else if (fields[c] == "1") {
                row[c] = 1;
            } else if (fields[c] == "NA") {
                row[c] = BinaryMatrix::kMissing;
            } else {
                throw ParseError(line_no, c + 1,
                                 "invalid token '" + std::string(fields[c]) + "' (expected 0, 1 or NA)");
            }
        }
        rows.push_back(std::move(row));
    }
    return BinaryMatrix(std::move(ids), rows);
}

struct PairCounts {
    std::uint64_t n00 = 0;
    std::uint64_t n01 = 0;
    std::uint64_t n10 = 0;
    std::uint64_t n11 = 0;

    std::uint64_t total() const noexcept { return n00 + n01 + n10 + n11; }
    friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

/// Cross-tabulates markers i (rows) and j (columns) over samples where both
/// are observed.
inline PairCounts count_pair(const BinaryMatrix& m, std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("count_pair needs two distinct markers");
    if (i >= m.markers() || j >= m.markers()) throw std::out_of_range("marker index out of range");
    const auto& a = m.column(i);
    const auto& b = m.column(j);
    std::uint64_t n[4] = {0, 0, 0, 0};
    for (std::size_t s = 0; s < m.samples(); ++s) {
        if (a[s] == BinaryMatrix::kMissing || b[s] == BinaryMatrix::kMissing) continue;
        ++n[2 * a[s] + b[s]];
    }
    return {n[0], n[1], n[2], n[3]};
}

/// Plug-in table proportional to count + pseudocount in every cell.
inline ProbTable counts_to_table(const PairCounts& c, double pseudocount) {
    if (!std::isfinite(pseudocount) || pseudocount < 0.0) {
        throw std::invalid_argument("pseudocount must be finite and non-negative");
    }
    const double w[4] = {static_cast<double>(c.n00) + pseudocount,
                         static_cast<double>(c.n01) + pseudocount,
                         static_cast<double>(c.n10) + pseudocount,
                         static_cast<double>(c.n11) + pseudocount};
    for (double v : w) {
        if (!(v > 0.0)) throw DegenerateTable("count table has an empty cell and no pseudocount");
    }
    return make_table(w[0], w[1], w[2], w[3]);
}

struct PairResult {
    std::string id_a;
    std::string id_b;
    PairCounts counts;
    std::uint64_t n = 0;
    std::vector<std::pair<MeasureKind, double>> values; // in the order requested

    double value(const MeasureKind& kind) const {
        for (const auto& [k, v] : values) {
            if (k == kind) return v;
        }
        throw std::out_of_range("measure not computed for this pair");
    }
};

struct ScanOptions {
    std::vector<MeasureKind> measures{{MeasureTag::hs, kDefaultHsWeight}};
    MeasureKind rank_by{MeasureTag::hs, kDefaultHsWeight};
    std::size_t top_k = 10;
    double pseudocount = 0.5;
    unsigned threads = 0; // 0: hardware concurrency
};

namespace detail {

inline void check_scan_options(const ScanOptions& opt) {
    if (opt.measures.empty()) throw std::invalid_argument("scan needs at least one measure");
    for (const auto& k : opt.measures) {
        if (k.tag == MeasureTag::kappa) {
            throw std::invalid_argument("kappa is not a measure of association and cannot be scanned");
        }
    }
    if (std::find(opt.measures.begin(), opt.measures.end(), opt.rank_by) == opt.measures.end()) {
        throw std::invalid_argument("rank_by measure must be among the computed measures");
    }
    if (opt.top_k == 0) throw std::invalid_argument("top_k must be positive");
    if (!std::isfinite(opt.pseudocount) || opt.pseudocount < 0.0) {
        throw std::invalid_argument("pseudocount must be finite and non-negative");
    }
}

} // namespace detail

/// Evaluates every marker pair and returns the top_k by |rank_by| (descending),
/// ties broken by (id_a, id_b). The result does not depend on the thread count.
inline std::vector<PairResult> scan(const BinaryMatrix& m, const ScanOptions& opt) {
    detail::check_scan_options(opt);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(m.markers() * (m.markers() - 1) / 2);
    for (std::size_t i = 0; i < m.markers(); ++i) {
        for (std::size_t j = i + 1; j < m.markers(); ++j) pairs.emplace_back(i, j);
    }

    std::vector<PairResult> results(pairs.size());
    std::vector<std::exception_ptr> errors(pairs.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const auto [i, j] = pairs[k];
            try {
                PairResult r;
                r.id_a = m.marker_ids()[i];
                r.id_b = m.marker_ids()[j];
                r.counts = count_pair(m, i, j);
                r.n = r.counts.total();
                const ProbTable t = counts_to_table(r.counts, opt.pseudocount);
                r.values.reserve(opt.measures.size());
                for (const auto& kind : opt.measures) r.values.emplace_back(kind, evaluate(kind, t));
                results[k] = std::move(r);
            } catch (const DegenerateTable& e) {
                errors[k] = std::make_exception_ptr(DegenerateTable(
                    "pair (" + m.marker_ids()[i] + ", " + m.marker_ids()[j] + "): " + e.what()));
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };

    unsigned threads = opt.threads != 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(pairs.size(), 1)));
    if (threads <= 1) {
        work(0, pairs.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (pairs.size() + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t begin = std::min(pairs.size(), w * chunk);
            const std::size_t end = std::min(pairs.size(), begin + chunk);
            pool.emplace_back(work, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    const std::size_t rank_col = static_cast<std::size_t>(
        std::find(opt.measures.begin(), opt.measures.end(), opt.rank_by) - opt.measures.begin());
    auto before = [rank_col](const PairResult& a, const PairResult& b) {
        const double va = std::fabs(a.values[rank_col].second);
        const double vb = std::fabs(b.values[rank_col].second);
        if (va != vb) return va > vb;
        if (a.id_a != b.id_a) return a.id_a < b.id_a;
        return a.id_b < b.id_b;
    };
    const std::size_t keep = std::min(opt.top_k, results.size());
    std::partial_sort(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(keep),
                      results.end(), before);
    results.resize(keep);
    return results;
}

/// CSV: id_a,id_b,n,n00,n01,n10,n11 followed by one column per measure.
inline void write_scan_csv(std::ostream& out, const std::vector<MeasureKind>& measures,
                           const std::vector<PairResult>& results) {
    out << "id_a,id_b,n,n00,n01,n10,n11";
    for (const auto& k : measures) out << ',' << measure_name(k.tag);
    out << '\n';
    for (const auto& r : results) {
        out << r.id_a << ',' << r.id_b << ',' << r.n << ',' << r.counts.n00 << ','
            << r.counts.n01 << ',' << r.counts.n10 << ',' << r.counts.n11;
        for (const auto& k : measures) out << ',' << format_roundtrip(r.value(k));
        out << '\n';
    }
    if (!out) throw std::ios_base::failure("scan output stream failed");
}

} // namespace assoc2x2

#endif // ASSOC2X2_SCANNER_HPP
