// bientropy - command line front end for the BiEntropy toolkit.
//
// Subcommands: compute | enumerate | primes | digits | glyph | scan |
// finance | ttest. Every run emits a reproducibility header with the
// resolved parameter set; output is byte-identical for identical inputs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bientropy/bitstring.hpp"
#include "bientropy/entropy.hpp"
#include "bientropy/enumeration.hpp"
#include "bientropy/errors.hpp"
#include "bientropy/finance.hpp"
#include "bientropy/glyphs.hpp"
#include "bientropy/scanner.hpp"
#include "bientropy/sequences.hpp"
#include "bientropy/stats.hpp"

namespace bt = bientropy;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "1.0.0";

struct Output {
    std::string format = "csv";  // csv | json
    std::string out_path;        // empty = stdout
    int precision = 4;
    std::string subcommand;
    json params = json::object();

    void add_common(CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        cmd->add_option("--out", out_path, "Write output to a file instead of stdout");
        cmd->add_option("--precision", precision, "Decimal places for csv/text scores")
            ->check(CLI::Range(0, 17))
            ->capture_default_str();
    }

    std::string num(double v) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", precision, v);
        return buf;
    }

    std::string header() const {
        std::string h = "# tool=bientropy version=";
        h += kToolVersion;
        h += " subcommand=" + subcommand + "\n";
        h += "# params: " + params.dump() + "\n";
        return h;
    }

    json envelope(json result) const {
        return json{{"tool", "bientropy"},
                    {"version", kToolVersion},
                    {"subcommand", subcommand},
                    {"params", params},
                    {"result", std::move(result)}};
    }

    void write(const std::string& payload) const {
        if (out_path.empty()) {
            std::cout << payload;
            std::cout.flush();
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw bt::DataError("cannot open output file: " + out_path);
            f << payload;
            if (!f) throw bt::DataError("error writing output file: " + out_path);
        }
    }

    void emit_json(json result) const { write(envelope(std::move(result)).dump(2) + "\n"); }

    void emit_csv(const std::string& body) const { write(header() + body); }
};

json stats_json(const bt::SampleStats& s) {
    return json{{"n", s.n}, {"mean", s.mean}, {"stdev", s.stdev}};
}

std::string read_file_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw bt::DataError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> read_value_column(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bt::DataError("cannot open file: " + path);
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        try {
            std::size_t used = 0;
            double v = std::stod(line, &used);
            while (used < line.size() && (line[used] == ' ' || line[used] == '\t')) ++used;
            if (used != line.size()) throw std::invalid_argument(line);
            out.push_back(v);
        } catch (const std::exception&) {
            throw bt::DataError(path + ":" + std::to_string(lineno) + ": not a number: " + line);
        }
    }
    if (out.empty()) throw bt::DataError(path + ": no values");
    return out;
}

bt::Weighting parse_weighting(const std::string& name) {
    if (name == "bien") return bt::Weighting::power_law;
    if (name == "tbien") return bt::Weighting::logarithmic;
    if (name == "uniform") return bt::Weighting::uniform;
    return bt::Weighting::linear;
}

// ---- compute -------------------------------------------------------------

struct ComputeArgs {
    std::string bits;
    std::string metric = "bien";
    bool profile = false;
    std::size_t bien_cap = bt::kDefaultBienCap;
};

void run_compute(const ComputeArgs& a, Output& out) {
    const bt::BitString s = bt::BitString::parse(a.bits);
    const bt::Weighting scheme = parse_weighting(a.metric);
    if (scheme == bt::Weighting::power_law && s.size() > a.bien_cap)
        throw std::invalid_argument("bien: n = " + std::to_string(s.size()) +
                                    " exceeds cap; use --metric tbien or raise --bien-cap");
    const bt::EntropyProfile prof = bt::entropy_profile(s, scheme);

    out.params = {{"bits", s.str()},       {"metric", a.metric},
                  {"profile", a.profile},  {"bien_cap", a.bien_cap},
                  {"n", s.size()},         {"precision", out.precision}};

    if (out.format == "json") {
        json result{{"score", prof.score}, {"n", s.size()}};
        if (a.profile) {
            json rows = json::array();
            for (const auto& r : prof.rows)
                rows.push_back({{"k", r.k},
                                {"p", r.p},
                                {"h", r.h},
                                {"weight", r.weight},
                                {"weighted", r.h * r.weight}});
            result["profile"] = std::move(rows);
        }
        out.emit_json(std::move(result));
        return;
    }
    std::string body;
    if (a.profile) {
        body += "k,p,H,weight,weighted\n";
        for (const auto& r : prof.rows)
            body += std::to_string(r.k) + "," + out.num(r.p) + "," + out.num(r.h) + "," +
                    out.num(r.weight) + "," + out.num(r.h * r.weight) + "\n";
    }
    body += out.num(prof.score) + "\n";
    out.emit_csv(body);
}

// ---- enumerate -----------------------------------------------------------

struct EnumerateArgs {
    std::size_t n = 8;
    std::string metric = "both";
    unsigned threads = 0;
    bool dump = false;
    std::string ascending;   // metric name, empty = off
    double histogram = 0.0;  // bin width, 0 = off
};

void run_enumerate(const EnumerateArgs& a, Output& out) {
    bt::EnumerateOptions opt;
    opt.bien = a.metric != "tbien";
    opt.tbien = a.metric != "bien";
    opt.threads = a.threads;
    const bt::EnumerationTable table = bt::enumerate_strings(a.n, opt);

    out.params = {{"n", a.n},        {"metric", a.metric},       {"threads", a.threads},
                  {"dump", a.dump},  {"ascending", a.ascending}, {"histogram", a.histogram},
                  {"precision", out.precision}};

    json summary{{"n", a.n},
                 {"class_counts",
                  {{"periodic", table.periodic_count},
                   {"nperiodic", table.nperiodic_count},
                   {"aperiodic", table.aperiodic_count}}}};
    if (table.has_bien) summary["bien"] = stats_json(table.bien_stats);
    if (table.has_tbien) summary["tbien"] = stats_json(table.tbien_stats);
    if (table.has_bien && table.has_tbien) summary["adjusted_r2"] = table.adjusted_r2;

    if (!a.ascending.empty()) {
        const bt::Metric m = a.ascending == "bien" ? bt::Metric::bien : bt::Metric::tbien;
        const auto dump = bt::ascending_dump(table, m);
        if (out.format == "json") {
            json rows = json::array();
            for (const auto& [v, s] : dump) rows.push_back({{"value", v}, {"score", s}});
            out.emit_json(json{{"summary", summary}, {"ascending", std::move(rows)}});
            return;
        }
        std::string body = "value,score\n";
        for (const auto& [v, s] : dump) body += std::to_string(v) + "," + out.num(s) + "\n";
        out.emit_csv(body);
        return;
    }
    if (a.histogram > 0.0) {
        const bt::Metric m = a.metric == "tbien" ? bt::Metric::tbien : bt::Metric::bien;
        const auto bins = bt::histogram(table, m, a.histogram);
        if (out.format == "json") {
            json rows = json::array();
            for (const auto& [edge, count] : bins)
                rows.push_back({{"bin_lower_edge", edge}, {"count", count}});
            out.emit_json(json{{"summary", summary}, {"histogram", std::move(rows)}});
            return;
        }
        std::string body = "bin_lower_edge,count\n";
        for (const auto& [edge, count] : bins)
            body += out.num(edge) + "," + std::to_string(count) + "\n";
        out.emit_csv(body);
        return;
    }

    if (out.format == "json") {
        json result{{"summary", summary}};
        if (a.dump) {
            json rows = json::array();
            for (const auto& r : table.rows) {
                json row{{"value", r.value},
                         {"bits", bt::BitString::from_value(r.value, a.n).str()},
                         {"class", bt::to_string(r.cls)}};
                if (table.has_bien) row["bien"] = r.bien;
                if (table.has_tbien) row["tbien"] = r.tbien;
                rows.push_back(std::move(row));
            }
            result["rows"] = std::move(rows);
        }
        out.emit_json(std::move(result));
        return;
    }
    std::string body = "value,bits,bien,tbien,class\n";
    for (const auto& r : table.rows) {
        body += std::to_string(r.value) + "," + bt::BitString::from_value(r.value, a.n).str() +
                ",";
        body += (table.has_bien ? out.num(r.bien) : std::string()) + ",";
        body += (table.has_tbien ? out.num(r.tbien) : std::string()) + ",";
        body += bt::to_string(r.cls);
        body += "\n";
    }
    body += "# summary: " + summary.dump() + "\n";
    out.emit_csv(body);
}

// ---- primes ----------------------------------------------------------------

struct PrimesArgs {
    std::string mode = "bep";
    std::size_t max_n = 512;
    std::string metric = "tbien";
    bool check = false;
    std::size_t check_max = 2048;
};

void run_primes(const PrimesArgs& a, Output& out) {
    const bt::PrimeEncoding enc =
        a.mode == "bep" ? bt::PrimeEncoding::bep : bt::PrimeEncoding::penni;
    const bt::Metric metric = a.metric == "bien" ? bt::Metric::bien : bt::Metric::tbien;
    const auto curve = bt::prefix_curve(enc, a.max_n, metric);

    std::vector<bt::PeriodicityViolation> violations;
    if (a.check) violations = bt::check_nonperiodicity(enc, a.check_max);

    out.params = {{"mode", a.mode},   {"max", a.max_n},          {"metric", a.metric},
                  {"check", a.check}, {"check_max", a.check_max}, {"precision", out.precision}};

    if (out.format == "json") {
        json rows = json::array();
        for (const auto& p : curve) rows.push_back({{"n", p.n}, {"score", p.score}});
        json result{{"curve", std::move(rows)}};
        if (a.check) {
            json vio = json::array();
            for (const auto& v : violations) vio.push_back({{"n", v.n}, {"period", v.period}});
            result["periodicity_violations"] = std::move(vio);
        }
        out.emit_json(std::move(result));
        return;
    }
    std::string body = "n,score\n";
    for (const auto& p : curve) body += std::to_string(p.n) + "," + out.num(p.score) + "\n";
    if (a.check) {
        if (violations.empty()) {
            body += "# check: no periodicity violations through even n = " +
                    std::to_string(a.check_max) + "\n";
        } else {
            for (const auto& v : violations)
                body += "# check: VIOLATION at n = " + std::to_string(v.n) + " (period " +
                        std::to_string(v.period) + ")\n";
        }
    }
    out.emit_csv(body);
}

// ---- digits ----------------------------------------------------------------

struct DigitsArgs {
    std::string digits_file;
    std::size_t champernowne = 0;
    bool include_integer_part = false;
    std::string encoding = "half";
    std::size_t section_bits = 32;
    std::size_t count = 1000;
    std::string metric = "bien";
    bool running_mean = false;
    std::string label;
};

void run_digits(const DigitsArgs& a, Output& out) {
    bt::DigitStream stream;
    if (!a.digits_file.empty()) {
        stream = bt::parse_digit_text(read_file_text(a.digits_file),
                                      a.label.empty() ? a.digits_file : a.label);
    } else {
        if (a.champernowne < 1)
            throw std::invalid_argument("digits: give --digits-file or --champernowne COUNT");
        if (a.include_integer_part) {
            // The written-out number 0.1234... starts with its integer part;
            // this is the alignment that reproduces the paper's CHAMP table.
            stream.digits.push_back(0);
            const auto frac = bt::champernowne(a.champernowne - 1);
            stream.digits.insert(stream.digits.end(), frac.digits.begin(), frac.digits.end());
            stream.source_label = "champernowne(integer part included)";
        } else {
            stream = bt::champernowne(a.champernowne);
        }
        if (!a.label.empty()) stream.source_label = a.label;
    }

    const bt::BitString bits =
        a.encoding == "half" ? bt::encode_half(stream) : bt::encode_octal(stream);
    const bt::Metric metric = a.metric == "bien" ? bt::Metric::bien : bt::Metric::tbien;
    const auto rep = bt::sectioned_analysis(bits, a.section_bits, a.count, metric);

    out.params = {{"source", stream.source_label},
                  {"digits", stream.digits.size()},
                  {"encoding", a.encoding},
                  {"section_bits", a.section_bits},
                  {"count", a.count},
                  {"metric", a.metric},
                  {"include_integer_part", a.include_integer_part},
                  {"running_mean", a.running_mean},
                  {"precision", out.precision}};

    if (out.format == "json") {
        out.emit_json(json{{"stats", stats_json(rep.stats)},
                           {"scores", rep.scores},
                           {"running_mean", rep.running_mean}});
        return;
    }
    std::string body;
    if (a.running_mean) {
        body = "index,running_mean\n";
        for (std::size_t i = 0; i < rep.running_mean.size(); ++i)
            body += std::to_string(i + 1) + "," + out.num(rep.running_mean[i]) + "\n";
    } else {
        body = "index,score\n";
        for (std::size_t i = 0; i < rep.scores.size(); ++i)
            body += std::to_string(i + 1) + "," + out.num(rep.scores[i]) + "\n";
    }
    body += "# stats: " + stats_json(rep.stats).dump() + "\n";
    out.emit_csv(body);
}

// ---- glyph -----------------------------------------------------------------

struct GlyphArgs {
    std::string file;
};

void run_glyph(const GlyphArgs& a, Output& out) {
    const auto glyphs = bt::parse_glyph_file(read_file_text(a.file));
    const auto bien_h = bt::charset_report(glyphs, bt::Orientation::horizontal, bt::Metric::bien);
    const auto bien_v = bt::charset_report(glyphs, bt::Orientation::vertical, bt::Metric::bien);
    const auto tbien_h =
        bt::charset_report(glyphs, bt::Orientation::horizontal, bt::Metric::tbien);
    const auto tbien_v = bt::charset_report(glyphs, bt::Orientation::vertical, bt::Metric::tbien);

    out.params = {{"file", a.file}, {"glyphs", glyphs.size()}, {"precision", out.precision}};

    json stats{{"bien_h", stats_json(bien_h.stats)},
               {"bien_v", stats_json(bien_v.stats)},
               {"tbien_h", stats_json(tbien_h.stats)},
               {"tbien_v", stats_json(tbien_v.stats)}};

    if (out.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < glyphs.size(); ++i)
            rows.push_back({{"name", glyphs[i].name},
                            {"bien_h", bien_h.scores[i].second},
                            {"bien_v", bien_v.scores[i].second},
                            {"tbien_h", tbien_h.scores[i].second},
                            {"tbien_v", tbien_v.scores[i].second}});
        out.emit_json(json{{"glyphs", std::move(rows)}, {"stats", std::move(stats)}});
        return;
    }
    std::string body = "name,bien_h,bien_v,tbien_h,tbien_v\n";
    for (std::size_t i = 0; i < glyphs.size(); ++i)
        body += glyphs[i].name + "," + out.num(bien_h.scores[i].second) + "," +
                out.num(bien_v.scores[i].second) + "," + out.num(tbien_h.scores[i].second) + "," +
                out.num(tbien_v.scores[i].second) + "\n";
    body += "# stats: " + stats.dump() + "\n";
    out.emit_csv(body);
}

// ---- scan ------------------------------------------------------------------

struct ScanArgs {
    std::string file;
    std::size_t window_bits = 1024;
    std::size_t max_windows = 0;  // 0 = all
};

void run_scan(const ScanArgs& a, Output& out) {
    std::optional<std::size_t> max_w;
    if (a.max_windows) max_w = a.max_windows;
    const auto rep = bt::scan_file(a.file, a.window_bits, max_w);

    out.params = {{"file", a.file},
                  {"window_bits", a.window_bits},
                  {"max_windows", a.max_windows},
                  {"precision", out.precision}};

    if (out.format == "json") {
        json rows = json::array();
        for (const auto& w : rep.windows)
            rows.push_back({{"offset_bytes", w.offset_bytes}, {"tbien", w.tbien}});
        out.emit_json(json{{"stats", stats_json(rep.stats)},
                           {"windows", std::move(rows)},
                           {"truncated_tail_bits", rep.truncated_tail_bits}});
        return;
    }
    std::string body = "offset_bytes,tbien\n";
    for (const auto& w : rep.windows)
        body += std::to_string(w.offset_bytes) + "," + out.num(w.tbien) + "\n";
    body += "# stats: " + stats_json(rep.stats).dump() +
            " truncated_tail_bits=" + std::to_string(rep.truncated_tail_bits) + "\n";
    out.emit_csv(body);
}

// ---- finance ---------------------------------------------------------------

struct FinanceArgs {
    std::string prices;
    double threshold = 0.01;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    std::size_t d_fixed = 0;  // 0 = draw uniformly from [32, 63]
    std::size_t i_max = 0;    // 0 = rows - d_max
    std::string metric = "tbien";
    double outlier_sd = 3.0;
};

void run_finance(const FinanceArgs& a, Output& out) {
    std::ifstream in(a.prices);
    if (!in) throw bt::DataError("cannot open file: " + a.prices);
    const bt::PriceMatrix prices = bt::load_prices(in);
    const bt::ThresholdBits tbits = bt::threshold_transform(prices, a.threshold);

    bt::SamplingPlan plan;
    plan.count = a.samples;
    plan.seed = a.seed;
    plan.metric = a.metric == "bien" ? bt::Metric::bien : bt::Metric::tbien;
    if (a.d_fixed) plan.fixed_d = a.d_fixed;
    if (prices.rows <= plan.d_max)
        throw bt::DataError("prices: need more than " + std::to_string(plan.d_max) + " rows");
    plan.i_max = a.i_max ? a.i_max : prices.rows - plan.d_max;

    const bt::DecileReport rep = bt::run_decile_pipeline(prices, tbits, plan, a.outlier_sd);

    out.params = {{"prices", a.prices},     {"threshold", a.threshold},
                  {"samples", a.samples},   {"seed", a.seed},
                  {"d_fixed", a.d_fixed},   {"i_max", plan.i_max},
                  {"metric", a.metric},     {"outlier_sd", a.outlier_sd},
                  {"rows", prices.rows},    {"cols", prices.cols},
                  {"precision", out.precision}};

    json result{{"threshold", rep.threshold},
                {"samples", rep.samples},
                {"upper",
                 {{"mean_return", rep.upper.mean_return},
                  {"stdev", rep.upper.stdev},
                  {"size", rep.upper.size}}},
                {"lower",
                 {{"mean_return", rep.lower.mean_return},
                  {"stdev", rep.lower.stdev},
                  {"size", rep.lower.size}}},
                {"sparsity", rep.sparsity},
                {"outliers_replaced", rep.outliers_replaced}};

    if (out.format == "json") {
        out.emit_json(std::move(result));
        return;
    }
    std::string body =
        "threshold,samples,upper_mean_return,upper_stdev,upper_size,"
        "lower_mean_return,lower_stdev,lower_size,sparsity,outliers_replaced\n";
    body += out.num(rep.threshold) + "," + std::to_string(rep.samples) + "," +
            out.num(rep.upper.mean_return) + "," + out.num(rep.upper.stdev) + "," +
            std::to_string(rep.upper.size) + "," + out.num(rep.lower.mean_return) + "," +
            out.num(rep.lower.stdev) + "," + std::to_string(rep.lower.size) + "," +
            out.num(rep.sparsity) + "," + std::to_string(rep.outliers_replaced) + "\n";
    out.emit_csv(body);
}

// ---- ttest -----------------------------------------------------------------

struct TTestArgs {
    std::string a_path, b_path;
};

void run_ttest(const TTestArgs& a, Output& out) {
    const auto xs = read_value_column(a.a_path);
    const auto ys = read_value_column(a.b_path);
    const bt::WelchResult r = bt::welch_test(xs, ys);

    out.params = {{"a", a.a_path}, {"b", a.b_path}, {"precision", out.precision}};

    if (out.format == "json") {
        out.emit_json(json{{"t", r.t}, {"df", r.df}, {"p", r.p_two_sided}});
        return;
    }
    std::string body = "t,df,p\n";
    body += out.num(r.t) + "," + out.num(r.df) + "," + out.num(r.p_two_sided) + "\n";
    out.emit_csv(body);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BiEntropy toolkit: approximate entropy of finite binary strings"};
    app.require_subcommand(1);

    Output out;
    ComputeArgs compute_args;
    EnumerateArgs enum_args;
    PrimesArgs primes_args;
    DigitsArgs digits_args;
    GlyphArgs glyph_args;
    ScanArgs scan_args;
    FinanceArgs finance_args;
    TTestArgs ttest_args;

    auto* c = app.add_subcommand("compute", "Score a single bit string");
    c->add_option("--bits", compute_args.bits, "Bit string of 0/1 (whitespace ignored)")
        ->required();
    c->add_option("--metric", compute_args.metric, "Weighting: bien, tbien, uniform, linear")
        ->check(CLI::IsMember({"bien", "tbien", "uniform", "linear"}))
        ->capture_default_str();
    c->add_flag("--profile", compute_args.profile, "Emit the per-derivative profile rows");
    c->add_option("--bien-cap", compute_args.bien_cap, "Length cap for the power-law metric")
        ->capture_default_str();
    out.add_common(c);

    auto* e = app.add_subcommand("enumerate", "Evaluate every n-bit string");
    e->add_option("--n", enum_args.n, "String length (2..24)")->required();
    e->add_option("--metric", enum_args.metric, "bien, tbien or both")
        ->check(CLI::IsMember({"bien", "tbien", "both"}))
        ->capture_default_str();
    e->add_option("--threads", enum_args.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    e->add_flag("--dump", enum_args.dump, "Include per-string rows in json output");
    e->add_option("--ascending", enum_args.ascending, "Emit (value, score) sorted ascending")
        ->check(CLI::IsMember({"bien", "tbien"}));
    e->add_option("--histogram", enum_args.histogram, "Emit score histogram with this bin width");
    out.add_common(e);

    auto* p = app.add_subcommand("primes", "Prefix BiEntropy curves of prime encodings");
    p->add_option("--mode", primes_args.mode, "bep or penni")
        ->check(CLI::IsMember({"bep", "penni"}))
        ->capture_default_str();
    p->add_option("--max", primes_args.max_n, "Longest prefix")->capture_default_str();
    p->add_option("--metric", primes_args.metric, "bien or tbien")
        ->check(CLI::IsMember({"bien", "tbien"}))
        ->capture_default_str();
    p->add_flag("--check", primes_args.check, "Verify no even prefix classifies periodic");
    p->add_option("--check-max", primes_args.check_max, "Largest even prefix for --check")
        ->capture_default_str();
    out.add_common(p);

    auto* d = app.add_subcommand("digits", "Sectioned BiEntropy of a decimal digit stream");
    d->add_option("--digits-file", digits_args.digits_file,
                  "Plain-text digit file (non-digits skipped)");
    d->add_option("--champernowne", digits_args.champernowne,
                  "Generate this many Champernowne digits instead of reading a file");
    d->add_flag("--include-integer-part", digits_args.include_integer_part,
                "Prepend the integer-part 0 (the paper's CHAMP alignment)");
    d->add_option("--encoding", digits_args.encoding, "half (digit>=5) or octal")
        ->check(CLI::IsMember({"half", "octal"}))
        ->capture_default_str();
    d->add_option("--section-bits", digits_args.section_bits, "Bits per section")
        ->capture_default_str();
    d->add_option("--count", digits_args.count, "Number of sections")->capture_default_str();
    d->add_option("--metric", digits_args.metric, "bien or tbien")
        ->check(CLI::IsMember({"bien", "tbien"}))
        ->capture_default_str();
    d->add_flag("--running-mean", digits_args.running_mean,
                "Emit the running-mean series instead of per-section scores");
    d->add_option("--label", digits_args.label, "Source label for the report");
    out.add_common(d);

    auto* g = app.add_subcommand("glyph", "Score 7x5 dot-matrix glyphs");
    g->add_option("--file", glyph_args.file, "Glyph file")->required();
    out.add_common(g);

    auto* s = app.add_subcommand("scan", "Windowed TBiEn over a raw binary file");
    s->add_option("--file", scan_args.file, "Input file")->required();
    s->add_option("--window-bits", scan_args.window_bits, "Window size in bits (multiple of 8)")
        ->capture_default_str();
    s->add_option("--max-windows", scan_args.max_windows, "Scan at most this many windows")
        ->capture_default_str();
    out.add_common(s);

    auto* f = app.add_subcommand("finance", "Threshold-binarized price series decile report");
    f->add_option("--prices", finance_args.prices, "Price matrix CSV")->required();
    f->add_option("--threshold", finance_args.threshold, "Relative change threshold R")
        ->capture_default_str();
    f->add_option("--samples", finance_args.samples, "Holding samples to draw")
        ->capture_default_str();
    f->add_option("--seed", finance_args.seed, "RNG seed")->capture_default_str();
    f->add_option("--d-fixed", finance_args.d_fixed, "Fix the holding length (default: uniform 32..63)");
    f->add_option("--i-max", finance_args.i_max, "Largest start row (default: rows - 63)");
    f->add_option("--metric", finance_args.metric, "tbien (paper) or bien (negative control)")
        ->check(CLI::IsMember({"bien", "tbien"}))
        ->capture_default_str();
    f->add_option("--outlier-sd", finance_args.outlier_sd, "Outlier cut in sample stdevs")
        ->capture_default_str();
    out.add_common(f);

    auto* t = app.add_subcommand("ttest", "Welch two-sample t-test on value files");
    t->add_option("--a", ttest_args.a_path, "First sample, one value per line")->required();
    t->add_option("--b", ttest_args.b_path, "Second sample, one value per line")->required();
    out.add_common(t);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::CallForAllHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return 1;
    }

    try {
        if (c->parsed()) {
            out.subcommand = "compute";
            run_compute(compute_args, out);
        } else if (e->parsed()) {
            out.subcommand = "enumerate";
            run_enumerate(enum_args, out);
        } else if (p->parsed()) {
            out.subcommand = "primes";
            run_primes(primes_args, out);
        } else if (d->parsed()) {
            out.subcommand = "digits";
            run_digits(digits_args, out);
        } else if (g->parsed()) {
            out.subcommand = "glyph";
            run_glyph(glyph_args, out);
        } else if (s->parsed()) {
            out.subcommand = "scan";
            run_scan(scan_args, out);
        } else if (f->parsed()) {
            out.subcommand = "finance";
            run_finance(finance_args, out);
        } else if (t->parsed()) {
            out.subcommand = "ttest";
            run_ttest(ttest_args, out);
        }
    } catch (const bt::DataError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
