#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

#include "mine/discords.hpp"
#include "mine/matrix_profile.hpp"
#include "mine/metrics.hpp"
#include "mine/motif_sets.hpp"
#include "mine/motifs.hpp"
#include "mine/oracle.hpp"
#include "mine/synthetic.hpp"

namespace mine::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json index(std::size_t v) { return v == no_index ? Json(nullptr) : Json(v); }

std::string csv_number(double v) {
    if (!std::isfinite(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_index(std::size_t v) { return v == no_index ? "" : std::to_string(v); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
    // strtod accepts "nan"/"inf", which ingestion then rejects by position.
    if (text.empty()) return false;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size();
}

Json job_header(const std::string& command, const JobConfig& c, const DataSeries& series) {
    Json src;
    src["input"] = c.synthetic > 0 ? Json("synthetic:" + std::to_string(c.synthetic)) : Json(c.input);
    if (c.column) src["column"] = *c.column;
    src["points"] = series.size();
    return Json{{"schema_version", schema_version}, {"command", command}, {"series", src}};
}

Json pair_json(const MotifPair& p) {
    return Json{{"first", p.first},
                {"second", p.second},
                {"length", p.length},
                {"distance", number(p.distance)},
                {"norm_distance", number(p.norm_distance)}};
}

Json pruning_json(const PruningReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back(Json{{"length", row.length},
                            {"profiles", row.profiles},
                            {"valid", row.valid},
                            {"non_valid", row.non_valid},
                            {"recomputed", row.recomputed},
                            {"full_recompute", row.full_recompute},
                            {"mean_tlb", number(row.mean_tlb)}});
    return Json{{"profiles", r.profiles},
                {"valid", r.valid},
                {"non_valid", r.non_valid},
                {"recomputed", r.recomputed},
                {"full_recomputes", r.full_recomputes},
                {"recomputed_fraction", number(r.recomputed_fraction)},
                {"mean_tlb", number(r.mean_tlb)},
                {"lengths", rows}};
}

Json length_seconds(const PruningReport& r) {
    Json out = Json::array();
    for (const auto& row : r.rows) out.push_back(Json{{"length", row.length}, {"seconds", row.seconds}});
    return out;
}

void valmp_document(ResultDocument& doc, const Valmp& valmp, const std::vector<MotifPair>& per_length) {
    Json d = Json::array(), nd = Json::array(), ls = Json::array(), ix = Json::array();
    for (std::size_t i = 0; i < valmp.size(); ++i) {
        const bool ok = valmp.populated[i] != 0;
        d.push_back(ok ? number(valmp.distances[i]) : Json(nullptr));
        nd.push_back(ok ? number(valmp.norm_distances[i]) : Json(nullptr));
        ls.push_back(ok ? Json(valmp.lengths[i]) : Json(nullptr));
        ix.push_back(ok ? index(valmp.indices[i]) : Json(nullptr));
        doc.csv_rows.push_back({std::to_string(i), ok ? csv_number(valmp.distances[i]) : "",
                                ok ? csv_number(valmp.norm_distances[i]) : "",
                                ok ? std::to_string(valmp.lengths[i]) : "",
                                ok ? csv_index(valmp.indices[i]) : ""});
    }
    doc.csv_header = {"offset", "distance", "norm_distance", "length", "index"};
    Json& result = doc.body["result"];
    result["valmp"] = Json{{"distances", d}, {"norm_distances", nd}, {"lengths", ls}, {"indices", ix}};
    Json pl = Json::array();
    for (const auto& p : per_length) pl.push_back(pair_json(p));
    try {
        result["top_motif"] = pair_json(top_variable_length_motif(valmp));
    } catch (const Error&) {
        result["top_motif"] = nullptr;
    }
    result["per_length"] = pl;
}

Json discord_cells(const DiscordMatrix& dkm) {
    Json cells = Json::array();
    for (std::size_t r = 0; r < dkm.k(); ++r)
        for (std::size_t c = 0; c < dkm.m(); ++c) {
            const auto& cell = dkm.at(r, c);
            cells.push_back(Json{{"rank", r + 1},
                                 {"match", c + 1},
                                 {"distance", cell.empty() ? Json(nullptr) : number(cell.distance)},
                                 {"offset", index(cell.offset)}});
        }
    return cells;
}

void discord_document(ResultDocument& doc, const VariableLengthDiscordMatrix& merged,
                      const std::vector<DiscordMatrix>& per_length, bool include_per_length) {
    Json cells = Json::array();
    doc.csv_header = {"length_scope", "rank", "match", "norm_distance", "distance", "offset", "length"};
    for (std::size_t r = 0; r < merged.k; ++r)
        for (std::size_t c = 0; c < merged.m; ++c) {
            const auto& cell = merged.at(r, c);
            const bool ok = !cell.empty();
            cells.push_back(Json{{"rank", r + 1},
                                 {"match", c + 1},
                                 {"norm_distance", ok ? number(cell.norm_distance) : Json(nullptr)},
                                 {"distance", ok ? number(cell.distance) : Json(nullptr)},
                                 {"offset", index(cell.offset)},
                                 {"length", ok ? Json(cell.length) : Json(nullptr)}});
            doc.csv_rows.push_back({"merged", std::to_string(r + 1), std::to_string(c + 1),
                                    ok ? csv_number(cell.norm_distance) : "",
                                    ok ? csv_number(cell.distance) : "", csv_index(cell.offset),
                                    ok ? std::to_string(cell.length) : ""});
        }
    Json& result = doc.body["result"];
    result["merged"] = cells;
    if (!include_per_length) return;
    Json pl = Json::array();
    for (const auto& dkm : per_length) {
        pl.push_back(Json{{"length", dkm.length()}, {"cells", discord_cells(dkm)}});
        for (std::size_t r = 0; r < dkm.k(); ++r)
            for (std::size_t c = 0; c < dkm.m(); ++c) {
                const auto& cell = dkm.at(r, c);
                const bool ok = !cell.empty();
                const double norm = cell.distance * std::sqrt(1.0 / static_cast<double>(dkm.length()));
                doc.csv_rows.push_back({std::to_string(dkm.length()), std::to_string(r + 1),
                                        std::to_string(c + 1), ok ? csv_number(norm) : "",
                                        ok ? csv_number(cell.distance) : "", csv_index(cell.offset),
                                        std::to_string(dkm.length())});
            }
    }
    result["per_length"] = pl;
}

}  // namespace

std::vector<double> read_values(const std::string& path, std::optional<std::size_t> column) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string field = line;
        if (column) {
            std::stringstream ss(line);
            std::string cell;
            std::size_t c = 0;
            bool found = false;
            while (std::getline(ss, cell, ',')) {
                if (c++ == *column) {
                    field = cell;
                    found = true;
                    break;
                }
            }
            if (!found) {
                if (trim(line).empty()) continue;
                throw Error(ErrorKind::InvalidParameters,
                            path + ":" + std::to_string(line_no) + ": no column " + std::to_string(*column),
                            line_no);
            }
        }
        field = trim(field);
        if (field.empty()) continue;
        double v = 0.0;
        if (!parse_double(field, v)) {
            if (column && values.empty() && line_no == 1) continue;  // header
            throw Error(ErrorKind::InvalidParameters,
                        path + ":" + std::to_string(line_no) + ": not a number: " + field, line_no);
        }
        if (!std::isfinite(v))
            throw Error(ErrorKind::NonFinite,
                        path + ":" + std::to_string(line_no) + ": non-finite value", line_no);
        values.push_back(v);
    }
    if (in.bad()) throw Error(ErrorKind::Io, "read error on " + path);
    return values;
}

DataSeries load_series(const JobConfig& config) {
    if (config.synthetic > 0) {
        const std::size_t n = config.synthetic;
        const std::size_t len = std::max<std::size_t>(config.lmax, 8);
        std::vector<std::size_t> offsets;
        for (std::size_t o = n / 7; o + len < n && offsets.size() < 3; o += 2 * n / 7) offsets.push_back(o);
        return DataSeries::ingest(synthetic::planted_motifs(n, len, offsets, 0.1, config.seed));
    }
    if (config.input.empty()) throw Error(ErrorKind::InvalidParameters, "--input is required");
    return DataSeries::ingest(read_values(config.input, config.column));
}

void validate(const JobConfig& c, const std::string& command) {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidParameters, what); };
    if (c.threads == 0) fail("--threads must be at least 1");
    if (command == "mp") {
        if (c.length < 4) fail("--length must be at least 4");
        return;
    }
    if (c.lmin < 4) fail("--lmin must be at least 4");
    if (c.lmin > c.lmax) fail("--lmin must not exceed --lmax");
    if (c.p < 1) fail("--p must be at least 1");
    if (command == "motif-sets") {
        if (c.top_k < 1) fail("--topk must be at least 1");
        if (!(c.radius >= 0.0) || !std::isfinite(c.radius)) fail("--radius must be a non-negative number");
    }
    if (command == "discords" || command == "oracle-discords") {
        if (c.k < 1 || c.m < 1) fail("--k and --m must be at least 1");
        if (command == "discords" && c.p < c.m) fail("--p must be at least --m (p >= m)");
    }
}

ResultDocument run_motifs(const JobConfig& c, const DataSeries& series) {
    validate(c, "motifs");
    ResultDocument doc;
    doc.body = job_header("motifs", c, series);
    doc.body["job"] = Json{{"lmin", c.lmin}, {"lmax", c.lmax}, {"p", c.p}};
    const auto start = Clock::now();
    MotifOptions options;
    options.p = c.p;
    options.threads = c.threads;
    const MotifResult result = find_variable_length_motifs(series, c.lmin, c.lmax, options);
    doc.run = Json{{"threads", c.threads}, {"wall_seconds", elapsed(start)}};
    valmp_document(doc, result.valmp, result.per_length);
    if (c.trace) {
        const PruningReport report = pruning_report(result.trace);
        doc.body["result"]["pruning"] = pruning_json(report);
        doc.run["length_seconds"] = length_seconds(report);
    }
    return doc;
}

ResultDocument run_motif_sets(const JobConfig& c, const DataSeries& series) {
    validate(c, "motif-sets");
    ResultDocument doc;
    doc.body = job_header("motif-sets", c, series);
    doc.body["job"] = Json{{"lmin", c.lmin},        {"lmax", c.lmax},
                           {"p", c.p},              {"top_k", c.top_k},
                           {"radius_factor", c.radius}, {"min_frequency", c.min_frequency}};
    const auto start = Clock::now();
    MotifSetSearch search;
    search.p = c.p;
    search.top_k = c.top_k;
    search.radius_factor = c.radius;
    search.threads = c.threads;
    search.min_frequency = c.min_frequency;
    const MotifSetResult result = find_variable_length_motif_sets(series, c.lmin, c.lmax, search);
    doc.run = Json{{"threads", c.threads}, {"wall_seconds", elapsed(start)}};

    Json sets = Json::array();
    doc.csv_header = {"set", "offset", "distance", "length", "radius", "frequency"};
    for (std::size_t s = 0; s < result.sets.size(); ++s) {
        const MotifSet& set = result.sets[s];
        Json members = Json::array(), dists = Json::array();
        for (std::size_t i = 0; i < set.members.size(); ++i) {
            members.push_back(set.members[i]);
            dists.push_back(number(set.distances[i]));
            doc.csv_rows.push_back({std::to_string(s + 1), std::to_string(set.members[i]),
                                    csv_number(set.distances[i]), std::to_string(set.anchors.length),
                                    csv_number(set.radius), std::to_string(set.frequency())});
        }
        sets.push_back(Json{{"rank", s + 1},
                            {"length", set.anchors.length},
                            {"radius", number(set.radius)},
                            {"frequency", set.frequency()},
                            {"anchors", pair_json(set.anchors)},
                            {"members", members},
                            {"distances", dists}});
    }
    Json ranking = Json::array();
    for (const auto& r : result.ranking) ranking.push_back(pair_json(r.pair));
    Json& out = doc.body["result"];
    out["sets"] = sets;
    out["ranking"] = ranking;
    const auto problems = lint_motif_sets(result.sets);
    out["lint"] = problems;
    if (c.trace) out["pruning"] = pruning_json(pruning_report(result.motifs.trace));
    return doc;
}

ResultDocument run_discords(const JobConfig& c, const DataSeries& series) {
    validate(c, "discords");
    ResultDocument doc;
    doc.body = job_header("discords", c, series);
    doc.body["job"] = Json{{"lmin", c.lmin}, {"lmax", c.lmax}, {"p", c.p}, {"k", c.k}, {"m", c.m}};
    const auto start = Clock::now();
    DiscordOptions options;
    options.p = c.p;
    options.threads = c.threads;
    options.keep_per_length = c.per_length;
    const DiscordResult result = topkm_discord_discovery(series, c.lmin, c.lmax, c.k, c.m, options);
    doc.run = Json{{"threads", c.threads}, {"wall_seconds", elapsed(start)}};
    discord_document(doc, result.merged, result.per_length, c.per_length);
    if (c.trace) {
        const PruningReport report = pruning_report(result.trace);
        doc.body["result"]["pruning"] = pruning_json(report);
        doc.run["length_seconds"] = length_seconds(report);
    }
    return doc;
}

ResultDocument run_matrix_profile(const JobConfig& c, const DataSeries& series) {
    validate(c, "mp");
    ResultDocument doc;
    doc.body = job_header("mp", c, series);
    doc.body["job"] = Json{{"length", c.length}};
    const auto start = Clock::now();
    ProfileOptions options;
    options.p = 1;
    options.threads = c.threads;
    options.keep_partial = false;
    const ProfileRun run = compute_matrix_profile(series, c.length, options);
    doc.run = Json{{"threads", c.threads}, {"wall_seconds", elapsed(start)}};
    Json d = Json::array(), ix = Json::array();
    doc.csv_header = {"offset", "distance", "index"};
    for (std::size_t i = 0; i < run.profile.size(); ++i) {
        d.push_back(number(run.profile.distances[i]));
        ix.push_back(index(run.profile.indices[i]));
        doc.csv_rows.push_back({std::to_string(i), csv_number(run.profile.distances[i]),
                                csv_index(run.profile.indices[i])});
    }
    doc.body["result"] = Json{{"length", c.length}, {"distances", d}, {"indices", ix}};
    return doc;
}

ResultDocument run_oracle_motifs(const JobConfig& c, const DataSeries& series) {
    validate(c, "oracle-motifs");
    check_length_range(series, c.lmin, c.lmax, 1);
    ResultDocument doc;
    doc.body = job_header("oracle motifs", c, series);
    doc.body["job"] = Json{{"lmin", c.lmin}, {"lmax", c.lmax}};
    const auto start = Clock::now();
    const auto ref = oracle::brute_force_motifs(series, c.lmin, c.lmax, c.threads);
    doc.run = Json{{"threads", c.threads}, {"wall_seconds", elapsed(start)}};
    valmp_document(doc, ref.valmp, ref.per_length);
    return doc;
}

ResultDocument run_oracle_discords(const JobConfig& c, const DataSeries& series) {
    validate(c, "oracle-discords");
    check_length_range(series, c.lmin, c.lmax, 1);
    ResultDocument doc;
    doc.body = job_header("oracle discords", c, series);
    doc.body["job"] = Json{{"lmin", c.lmin}, {"lmax", c.lmax}, {"k", c.k}, {"m", c.m}};
    const auto start = Clock::now();
    const auto ref = oracle::brute_force_discords(series, c.lmin, c.lmax, c.k, c.m, c.threads);
    doc.run = Json{{"threads", c.threads}, {"wall_seconds", elapsed(start)}};
    discord_document(doc, ref.merged, ref.per_length, c.per_length);
    return doc;
}

ResultDocument run_bench(const JobConfig& c, const DataSeries& series) {
    validate(c, "bench");
    check_length_range(series, c.lmin, c.lmax, c.p);
    ResultDocument doc;
    doc.body = job_header("bench", c, series);
    doc.body["job"] = Json{{"lmin", c.lmin}, {"lmax", c.lmax}, {"p", c.p}};

    const auto start = Clock::now();
    MotifOptions options;
    options.p = c.p;
    options.threads = c.threads;
    const MotifResult result = find_variable_length_motifs(series, c.lmin, c.lmax, options);
    const double search_seconds = elapsed(start);

    // Baseline: one full matrix profile per length, timed on an evenly
    // spaced subset when asked and extrapolated to the whole range.
    const std::size_t lengths = c.lmax - c.lmin + 1;
    const std::size_t timed = c.baseline_lengths == 0 ? lengths : std::min(c.baseline_lengths, lengths);
    ProfileOptions po;
    po.p = c.p;
    po.threads = c.threads;
    double baseline_timed = 0.0;
    Json baseline_rows = Json::array();
    for (std::size_t s = 0; s < timed; ++s) {
        const std::size_t L = timed == 1 ? c.lmin : c.lmin + s * (lengths - 1) / (timed - 1);
        const auto t0 = Clock::now();
        const ProfileRun run = compute_matrix_profile(series, L, po);
        const double secs = elapsed(t0);
        baseline_timed += secs;
        baseline_rows.push_back(Json{{"length", L}, {"seconds", secs}});
    }
    const double per_length = baseline_timed / static_cast<double>(timed);
    const double baseline = per_length * static_cast<double>(lengths);
    const PruningReport report = pruning_report(result.trace);

    doc.body["result"] = Json{{"lengths", lengths}, {"pruning", pruning_json(report)}};
    doc.run = Json{{"threads", c.threads},
                   {"search_seconds", search_seconds},
                   {"baseline_lengths_timed", timed},
                   {"baseline_seconds_per_length", per_length},
                   {"baseline_seconds", baseline},
                   {"speedup", search_seconds > 0.0 ? baseline / search_seconds : 0.0},
                   {"baseline", baseline_rows},
                   {"length_seconds", length_seconds(report)}};
    doc.csv_header = {"length", "profiles", "valid", "non_valid", "recomputed", "full_recompute",
                      "mean_tlb", "seconds"};
    for (const auto& row : report.rows)
        doc.csv_rows.push_back({std::to_string(row.length), std::to_string(row.profiles),
                                std::to_string(row.valid), std::to_string(row.non_valid),
                                std::to_string(row.recomputed), row.full_recompute ? "1" : "0",
                                csv_number(row.mean_tlb), csv_number(row.seconds)});
    doc.csv_rows.push_back({"total", std::to_string(report.profiles), std::to_string(report.valid),
                            std::to_string(report.non_valid), std::to_string(report.recomputed),
                            std::to_string(report.full_recomputes), csv_number(report.mean_tlb),
                            csv_number(search_seconds)});
    doc.csv_rows.push_back({"baseline", "", "", "", "", "", "", csv_number(baseline)});
    return doc;
}

std::string render(const ResultDocument& doc, Format format, bool include_run) {
    if (format == Format::Json) {
        Json out = doc.body;
        if (include_run) out["run"] = doc.run;
        return out.dump(2) + "\n";
    }
    std::string s;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) s += ',';
            s += cells[i];
        }
        s += '\n';
    };
    line(doc.csv_header);
    for (const auto& row : doc.csv_rows) line(row);
    return s;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Variable-length motif and discord mining over a univariate series"};
    app.require_subcommand(1);
    JobConfig c;
    std::string format = "json";
    std::size_t column = 0;

    auto common = [&](CLI::App* sub, bool range) {
        sub->add_option("--input,-i", c.input, "Series file: one value per line, or CSV with --column")
            ->envname("MINE_INPUT");
        sub->add_option("--column", column, "0-based CSV column to read")->envname("MINE_COLUMN");
        sub->add_option("--output,-o", c.output, "Output file (default: stdout)")->envname("MINE_OUTPUT");
        sub->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}))
            ->envname("MINE_FORMAT");
        sub->add_option("--threads", c.threads, "Worker threads")->envname("MINE_THREADS");
        if (range) {
            sub->add_option("--lmin", c.lmin, "Shortest subsequence length")->required()->envname("MINE_LMIN");
            sub->add_option("--lmax", c.lmax, "Longest subsequence length")->required()->envname("MINE_LMAX");
            sub->add_option("--p", c.p, "Partial profile capacity")->envname("MINE_P");
            sub->add_flag("--trace", c.trace, "Include per-length pruning statistics")->envname("MINE_TRACE");
        }
    };

    auto* motifs = app.add_subcommand("motifs", "Variable-length motif pairs (VALMP)");
    common(motifs, true);
    auto* sets = app.add_subcommand("motif-sets", "Variable-length motif sets");
    common(sets, true);
    sets->add_option("--topk", c.top_k, "Ranked pairs expanded into sets")->envname("MINE_TOPK");
    sets->add_option("--radius", c.radius, "Radius factor D")->envname("MINE_RADIUS");
    sets->add_option("--min-frequency", c.min_frequency, "Drop sets with fewer members")
        ->envname("MINE_MIN_FREQUENCY");
    auto* discords = app.add_subcommand("discords", "Variable-length Top-k m-th discords");
    common(discords, true);
    auto discord_flags = [&](CLI::App* sub) {
        sub->add_option("--k", c.k, "Discords per column")->envname("MINE_K");
        sub->add_option("--m", c.m, "Best matches per discord")->envname("MINE_M");
        sub->add_flag("--per-length", c.per_length, "Also emit every length's matrix")
            ->envname("MINE_PER_LENGTH");
    };
    discord_flags(discords);
    auto* mp = app.add_subcommand("mp", "Matrix profile for one length");
    common(mp, false);
    mp->add_option("--length", c.length, "Subsequence length")->required()->envname("MINE_LENGTH");
    auto* oracle = app.add_subcommand("oracle", "Brute-force reference results");
    oracle->require_subcommand(1);
    auto* oracle_motifs = oracle->add_subcommand("motifs", "Exhaustive VALMP");
    common(oracle_motifs, true);
    auto* oracle_discords = oracle->add_subcommand("discords", "Exhaustive discord matrices");
    common(oracle_discords, true);
    discord_flags(oracle_discords);
    auto* bench = app.add_subcommand("bench", "Time the pruned search against per-length profiles");
    common(bench, true);
    bench->add_option("--baseline-lengths", c.baseline_lengths,
                      "Lengths timed for the baseline (0 = every length)")
        ->envname("MINE_BASELINE_LENGTHS");
    bench->add_option("--synthetic", c.synthetic, "Use a generated planted-motif series of this size")
        ->envname("MINE_SYNTHETIC");
    bench->add_option("--seed", c.seed, "Generator seed")->envname("MINE_SEED");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    try {
        for (auto* sub : {motifs, sets, discords, mp, oracle_motifs, oracle_discords, bench})
            if (sub->count("--column") > 0) c.column = column;
        c.format = format == "csv" ? Format::Csv : Format::Json;

        auto load = [&] { return load_series(c); };
        ResultDocument doc;
        if (*motifs) doc = run_motifs(c, load());
        else if (*sets) doc = run_motif_sets(c, load());
        else if (*discords) doc = run_discords(c, load());
        else if (*mp) doc = run_matrix_profile(c, load());
        else if (*oracle_motifs) doc = run_oracle_motifs(c, load());
        else if (*oracle_discords) doc = run_oracle_discords(c, load());
        else if (*bench) doc = run_bench(c, load());

        const std::string text = render(doc, c.format);
        if (c.output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(c.output);
            if (!out) throw Error(ErrorKind::Io, "cannot write " + c.output);
            out << text;
            if (!out) throw Error(ErrorKind::Io, "write error on " + c.output);
        }
        return exit_ok;
    } catch (const Error& e) {
        std::cerr << "mine: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return e.kind() == ErrorKind::Io ? exit_io : exit_validation;
    } catch (const std::bad_alloc&) {
        std::cerr << "mine: out of memory\n";
        return exit_io;
    }
}

}  // namespace mine::cli
