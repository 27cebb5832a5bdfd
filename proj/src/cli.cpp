#include "gcmeta/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "gcmeta/bench.hpp"
#include "gcmeta/grounder.hpp"
#include "gcmeta/integrate.hpp"
#include "gcmeta/solver.hpp"
#include "gcmeta/textio.hpp"
#include "gcmeta/transform.hpp"
#include "gcmeta/verify.hpp"

namespace gcmeta {

namespace fs = std::filesystem;
using nlohmann::json;

json RunManifest::to_json() const {
    json j;
    j["subcommand"] = subcommand;
    j["input_digests"] = input_digests;
    j["options"] = options;
    j["seeds"] = seeds;
    j["wall_ms"] = wall_ms;
    j["result_digest"] = result_digest;
    j["warnings"] = warnings;
    if (!extra.empty()) j["extra"] = extra;
    return j;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::vector<std::uint64_t> parse_number_list(std::string_view text) {
    std::vector<std::uint64_t> out;
    auto number = [&](std::string_view s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw Error("malformed number list '" + std::string(text) + "'");
        return static_cast<std::uint64_t>(std::stoull(std::string(s)));
    };
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view item = text.substr(start, end - start);
        if (auto dots = item.find(".."); dots != std::string_view::npos) {
            const auto lo = number(item.substr(0, dots));
            const auto hi = number(item.substr(dots + 2));
            if (hi < lo) throw Error("empty range '" + std::string(item) + "'");
            for (auto v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(number(item));
        }
        start = end + 1;
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    RunManifest manifest;
    std::string manifest_path;
};

Program load(Context& ctx, const std::string& path) {
    const std::string text = read_file(path);
    ctx.manifest.input_digests[path] = sha256_hex(text);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw Error(path + ": " + e.what());
    }
}

GroundMode parse_mode(const std::string& s) {
    if (s == "herbrand") return GroundMode::Herbrand;
    if (s == "relevant") return GroundMode::Relevant;
    throw Error("unknown grounding mode '" + s + "'");
}

Program ensure_ground(Context& ctx, const Program& p, GroundMode mode) {
    if (p.flags().ground) return p;
    const auto t0 = Clock::now();
    GroundOptions go;
    go.mode = mode;
    Program g = ground(p, go).program;
    ctx.manifest.wall_ms["ground"] = ms_since(t0);
    return g;
}

void write_text(const std::string& path, const std::string& text) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

// Program text to --out or standard output, plus the result digest.
void emit(Context& ctx, const std::string& text, const std::string& out_path) {
    ctx.manifest.result_digest = sha256_hex(text);
    if (out_path.empty()) {
        ctx.out << text;
        if (!text.empty()) ctx.out << '\n';
    } else {
        write_text(out_path, text);
    }
}

void finish(Context& ctx, Clock::time_point t0) {
    ctx.manifest.wall_ms["total"] = ms_since(t0);
    if (!ctx.manifest_path.empty()) write_text(ctx.manifest_path, ctx.manifest.to_json().dump(2));
}

std::string sidecar(const std::string& manifest, const std::string& out) {
    if (!manifest.empty()) return manifest;
    return out.empty() ? std::string() : out + ".json";
}

void warn(Context& ctx, const std::string& msg) {
    ctx.manifest.warnings.push_back(msg);
    ctx.err << "warning: " << msg << '\n';
}

json rule_map(const Program& p) {
    json m = json::object();
    for (const auto& r : p.rules) m[r.name.str()] = print_rule(r);
    return m;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    for (auto v : parse_number_list(text)) out.push_back(static_cast<std::size_t>(v));
    return out;
}

// Option sets separated by ',', options inside a set joined by '+'; "full" is all eight.
std::vector<TransformOptions> parse_matrix(const std::string& text) {
    if (text == "full") return TransformOptions::all_combinations();
    std::vector<TransformOptions> out;
    for (auto item : split_list(text)) {
        std::replace(item.begin(), item.end(), '+', ',');
        out.push_back(TransformOptions::parse(item));
    }
    return out;
}

json matrix_json(const std::vector<TransformOptions>& m) {
    json a = json::array();
    for (const auto& o : m) a.push_back(o.str());
    return a;
}

std::string sanitize(const std::string& name) {
    std::string s;
    for (char c : name) s += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    while (!s.empty() && s.back() == '_') s.pop_back();
    return s;
}

json instance_parameters(BenchFamily f, std::size_t n) {
    switch (f) {
        case BenchFamily::Qbf:
            return {{"x_vars", n}, {"y_vars", n}, {"terms", default_qbf_terms(n)}, {"term_length", 3}};
        case BenchFamily::Sc:
            return {{"companies", n}, {"products", n}, {"controls", n / 2}};
        case BenchFamily::Bomb:
            return {{"variant", "btc"}, {"packages", n}, {"horizon", n == 0 ? 0 : 2 * n - 1}};
    }
    return {};
}

// ---------------------------------------------------------------------------

int cmd_ground(Context& ctx, const std::string& file, const std::string& mode,
               const std::string& out_path) {
    const auto t0 = Clock::now();
    ctx.manifest.options = {{"mode", mode}};
    const Program p = load(ctx, file);
    GroundOptions go;
    go.mode = parse_mode(mode);
    const GroundResult g = ground(p, go);
    ctx.manifest.wall_ms["ground"] = ms_since(t0);
    ctx.manifest.extra = {{"input_rules", g.report.input_rules},
                          {"output_rules", g.report.output_rules},
                          {"universe_size", g.report.universe_size},
                          {"dropped_rules", g.report.dropped_rules}};
    emit(ctx, print(g.program), out_path);
    finish(ctx, t0);
    return kExitOk;
}

int cmd_transform(Context& ctx, const std::string& file, const std::string& opt,
                  const std::string& mode, const std::string& out_path) {
    const auto t0 = Clock::now();
    const TransformOptions o = TransformOptions::parse(opt);
    ctx.manifest.options = {{"opt", o.str()}, {"mode", mode}};
    const Program p = ensure_ground(ctx, load(ctx, file), parse_mode(mode));
    const bool hcf = p.flags().hcf;
    if (!hcf) warn(ctx, "unsound: not HCF");
    const auto t1 = Clock::now();
    const Program t = tr(p, o);
    ctx.manifest.wall_ms["transform"] = ms_since(t1);
    ctx.manifest.extra = {{"hcf", hcf}, {"rules", rule_map(p)}};
    emit(ctx, print(t), out_path);
    finish(ctx, t0);
    return kExitOk;
}

int cmd_integrate(Context& ctx, const std::string& guess_file, const std::string& check_file,
                  const std::string& opt, bool np, const std::string& out_path) {
    const auto t0 = Clock::now();
    const TransformOptions o = TransformOptions::parse(opt);
    ctx.manifest.options = {{"opt", np ? std::string("np") : o.str()}};
    const Program guess = load(ctx, guess_file);
    const Program check = load(ctx, check_file);
    const auto renames = splitting_renames(GuessCheckPair{guess, check});
    const auto t1 = Clock::now();
    const GuessCheckPair pair = prepare_pair(guess, check);
    ctx.manifest.wall_ms["ground"] = ms_since(t1);
    const bool hcf = pair.check.flags().hcf;
    if (!hcf) warn(ctx, "unsound: not HCF");
    const auto t2 = Clock::now();
    const Program integrated = np ? integrate_np(pair) : integrate(pair, o);
    ctx.manifest.wall_ms["integrate"] = ms_since(t2);
    ctx.manifest.extra = {{"hcf", hcf}, {"renames", renames}, {"check_rules", rule_map(pair.check)}};
    emit(ctx, print(integrated), out_path);
    finish(ctx, t0);
    return kExitOk;
}

int cmd_solve(Context& ctx, const std::string& file, std::optional<std::size_t> n,
              const std::string& project, const std::string& format, const std::string& mode) {
    const auto t0 = Clock::now();
    if (format != "text" && format != "json") throw Error("unknown format '" + format + "'");
    ctx.manifest.options = {{"limit", n ? json(*n) : json("all")},
                            {"project", project},
                            {"format", format},
                            {"mode", mode}};
    const Program p = ensure_ground(ctx, load(ctx, file), parse_mode(mode));
    SolveOptions so = default_solve_options();
    so.limit = n;
    ctx.manifest.options["budget_ms"] = so.budget_ms;
    ctx.manifest.options["max_decisions"] = so.max_decisions;
    const SolveResult r = solve(p, so);
    ctx.manifest.wall_ms["solve"] = r.stats.wall_ms;
    std::vector<AnswerSet> sets = r.answer_sets;
    if (!project.empty()) sets = project_predicates(sets, split_list(project));

    std::string text;
    if (format == "json") {
        json j;
        j["answer_sets"] = json::parse(print_answer_sets(sets, AnswerSetFormat::Json));
        j["status"] = r.exhausted() ? "budget" : "complete";
        j["stats"] = {{"decisions", r.stats.decisions},
                      {"propagations", r.stats.propagations},
                      {"stability_checks", r.stats.stability_checks},
                      {"wall_ms", r.stats.wall_ms}};
        ctx.manifest.result_digest = sha256_hex(print_answer_sets(sets, AnswerSetFormat::Json));
        ctx.out << j.dump() << '\n';
    } else {
        text = print_answer_sets(sets, AnswerSetFormat::Text);
        ctx.manifest.result_digest = sha256_hex(text);
        if (!text.empty()) ctx.out << text << '\n';
    }
    ctx.manifest.extra = {{"answer_sets", sets.size()},
                          {"status", r.exhausted() ? "budget" : "complete"},
                          {"decisions", r.stats.decisions}};
    finish(ctx, t0);
    if (r.exhausted()) {
        ctx.err << "budget exceeded after " << r.answer_sets.size() << " answer set(s)\n";
        return kExitBudget;
    }
    return sets.empty() && r.answer_sets.empty() ? kExitNoAnswerSet : kExitAnswerSets;
}

int cmd_verify(Context& ctx, const std::string& family, const std::string& sizes_text,
               const std::string& seeds_text, const std::string& matrix_text, int drop_line,
               std::size_t max_horizon, bool exhaustive, const std::string& cex_dir) {
    const auto t0 = Clock::now();
    VerifyOptions v;
    v.matrix = parse_matrix(matrix_text);
    v.drop_line = drop_line;
    std::string sizes_default = family == "random" ? "6"
                                : family == "pairs" ? "5"
                                : family == "qbf"   ? "2,3"
                                : family == "sc"    ? "4"
                                                    : "1";
    const auto sizes = parse_sizes(sizes_text.empty() ? sizes_default : sizes_text);
    const auto seeds = parse_number_list(seeds_text);
    ctx.manifest.seeds = seeds;
    ctx.manifest.options = {{"family", family},     {"sizes", sizes},
                            {"opts", matrix_json(v.matrix)}, {"drop_line", drop_line},
                            {"max_horizon", max_horizon}, {"exhaustive", exhaustive}};

    std::vector<PropertyResult> results;
    if (family == "random") results = verify_random(sizes, seeds, v);
    else if (family == "pairs") results = verify_pairs(sizes, seeds, v);
    else if (family == "qbf") {
        results = verify_qbf(sizes, seeds, v);
        if (exhaustive)
            for (const auto& o : v.matrix) results.push_back(verify_qbf_exhaustive(o, v));
    } else if (family == "sc") results = verify_sc(sizes, seeds, v);
    else if (family == "bomb") results = verify_bomb(sizes, max_horizon, v);
    else throw Error("unknown verify family '" + family + "'");

    const std::string report = format_report(results);
    ctx.out << report;
    ctx.manifest.result_digest = sha256_hex(report);
    bool ok = true;
    json files = json::array();
    for (const auto& r : results) {
        if (r.passed()) continue;
        ok = false;
        const std::string path = (fs::path(cex_dir) / (sanitize(r.name) + ".dl")).string();
        write_text(path, "% " + r.detail + "\n" + r.counterexample);
        files.push_back(path);
        ctx.err << "counterexample for " << r.name << " written to " << path << '\n';
    }
    ctx.manifest.extra = {{"passed", ok}, {"counterexamples", files}};
    finish(ctx, t0);
    return ok ? kExitOk : kExitFailure;
}

void write_instance(Context& ctx, const fs::path& root, BenchFamily f, std::size_t size,
                    std::uint64_t seed, bool adhoc) {
    const fs::path dir = root / bench_family_name(f) / std::to_string(size) / std::to_string(seed);
    const GuessCheckPair pair = bench_pair(f, size, seed);
    std::map<std::string, std::string> files = {{"guess.dl", print(pair.guess)},
                                                {"check.dl", print(pair.check)}};
    if (adhoc)
        for (const auto& [name, prog] : bench_adhoc(f, size, seed))
            files["adhoc_" + name + ".dl"] = print(prog);
    json digests = json::object();
    for (const auto& [name, text] : files) {
        write_text((dir / name).string(), text);
        digests[name] = sha256_hex(text);
    }
    json m = {{"family", bench_family_name(f)},
              {"size", size},
              {"seed", seed},
              {"parameters", instance_parameters(f, size)},
              {"files", digests}};
    write_text((dir / "manifest.json").string(), m.dump(2));
    (void)ctx;
}

int cmd_bench(Context& ctx, const std::string& family, const std::string& sizes_text,
              const std::string& seeds_text, const std::string& matrix_text, bool adhoc,
              const std::string& out_path, const std::string& instances, bool no_instances) {
    const auto t0 = Clock::now();
    const BenchFamily f = parse_bench_family(family);
    const auto sizes = parse_sizes(sizes_text);
    const auto seeds = parse_number_list(seeds_text);
    const auto matrix = parse_matrix(matrix_text);
    ctx.manifest.seeds = seeds;
    ctx.manifest.options = {{"family", family}, {"sizes", sizes}, {"opts", matrix_json(matrix)},
                            {"adhoc", adhoc}};
    if (!no_instances)
        for (auto size : sizes)
            for (auto seed : seeds) write_instance(ctx, instances, f, size, seed, adhoc);

    const auto rows = run_bench(f, sizes, seeds, matrix, adhoc);
    std::string csv = bench_csv_header() + "\n";
    std::string timeless;  // rows without the time column, for the result digest
    for (const auto& r : rows) {
        csv += bench_csv_row(r) + "\n";
        BenchRow copy = r;
        copy.time_ms = 0.0;
        timeless += bench_csv_row(copy) + "\n";
    }
    ctx.manifest.wall_ms["bench"] = ms_since(t0);
    ctx.manifest.result_digest = sha256_hex(timeless);
    if (out_path.empty()) ctx.out << csv;
    else write_text(out_path, csv);
    finish(ctx, t0);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Meta-interpretation toolkit for head-cycle-free check programs", "gcmeta"};
    app.require_subcommand(1);
    Context ctx{out, err, {}, {}};

    std::string file, guess_file, check_file, out_path, manifest_path, mode = "herbrand", opt = "none";
    auto* g = app.add_subcommand("ground", "Instantiate a program");
    g->add_option("file", file, "Program file")->required();
    g->add_option("--mode", mode, "herbrand or relevant")->check(CLI::IsMember({"herbrand", "relevant"}));
    g->add_option("--out", out_path, "Output file (default: standard output)");
    g->add_option("--manifest", manifest_path, "Run manifest (default: <out>.json)");

    auto* t = app.add_subcommand("transform", "Meta-interpreter program of a check program");
    t->add_option("file", file, "Program file")->required();
    t->add_option("--opt", opt, "mod, pa, dep (comma-separated), all or none");
    t->add_option("--mode", mode, "Grounding mode for non-ground input")
        ->check(CLI::IsMember({"herbrand", "relevant"}));
    t->add_option("--out", out_path, "Output file (default: standard output)");
    t->add_option("--manifest", manifest_path, "Run manifest (default: <out>.json)");

    bool np = false;
    auto* i = app.add_subcommand("integrate", "Integrate a guess and a check program");
    i->add_option("guess", guess_file, "Guess program")->required();
    i->add_option("check", check_file, "Check program")->required();
    i->add_option("--opt", opt, "mod, pa, dep (comma-separated), all or none");
    i->add_flag("--np", np, "Plain union, for checks that should succeed");
    i->add_option("--out", out_path, "Output file (default: standard output)");
    i->add_option("--manifest", manifest_path, "Run manifest (default: <out>.json)");

    bool all = false;
    std::optional<std::size_t> limit;
    std::string project, format = "text", solve_mode = "relevant";
    auto* s = app.add_subcommand("solve", "Compute answer sets");
    s->add_option("file", file, "Program file")->required();
    auto* all_flag = s->add_flag("--all", all, "Enumerate all answer sets (default)");
    s->add_option("-n", limit, "Stop after K answer sets")->excludes(all_flag);
    s->add_option("--project", project, "Keep only these predicates (comma-separated)");
    s->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--mode", solve_mode, "Grounding mode for non-ground input")
        ->check(CLI::IsMember({"herbrand", "relevant"}));
    s->add_option("--manifest", manifest_path, "Run manifest");

    std::string family, sizes, seeds = "0..99", matrix = "full", cex_dir = "counterexamples";
    int drop_line = 0;
    std::size_t max_horizon = 3;
    bool exhaustive = false;
    auto* v = app.add_subcommand("verify", "Run the property suites");
    v->add_option("--family", family, "qbf, sc, bomb, random or pairs")
        ->required()
        ->check(CLI::IsMember({"qbf", "sc", "bomb", "random", "pairs"}));
    v->add_option("--sizes", sizes, "Sizes, e.g. 2,3 or 4..8");
    v->add_option("--seeds", seeds, "Seeds, e.g. 0..99");
    v->add_option("--opts-matrix", matrix, "Option sets, e.g. none,mod+pa,all, or full");
    v->add_option("--drop-line", drop_line, "Remove this meta line (mutation test)");
    v->add_option("--max-horizon", max_horizon, "Largest bomb horizon");
    v->add_flag("--exhaustive", exhaustive, "Also run the exhaustive small QBF suite");
    v->add_option("--counterexamples", cex_dir, "Directory for counterexample files");
    v->add_option("--manifest", manifest_path, "Run manifest");

    bool adhoc = false, no_instances = false;
    std::string bench_seeds = "0..9", bench_matrix = "full", instances = "bench";
    auto* b = app.add_subcommand("bench", "Time generated instances");
    b->add_option("--family", family, "qbf, sc or bomb")
        ->required()
        ->check(CLI::IsMember({"qbf", "sc", "bomb"}));
    b->add_option("--sizes", sizes, "Sizes, e.g. 2..4");
    b->add_option("--seeds", bench_seeds, "Seeds, e.g. 0..9");
    b->add_option("--opts-matrix", bench_matrix, "Option sets, e.g. none,mod,dep,all, or full");
    b->add_flag("--adhoc", adhoc, "Also time the ad hoc encodings");
    b->add_option("--out", out_path, "CSV file (default: standard output)");
    b->add_option("--instances", instances, "Directory for instance files");
    b->add_flag("--no-instances", no_instances, "Do not write instance files");
    b->add_option("--manifest", manifest_path, "Run manifest");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        ctx.manifest_path = sidecar(manifest_path, out_path);
        if (g->parsed()) {
            ctx.manifest.subcommand = "ground";
            return cmd_ground(ctx, file, mode, out_path);
        }
        if (t->parsed()) {
            ctx.manifest.subcommand = "transform";
            return cmd_transform(ctx, file, opt, mode, out_path);
        }
        if (i->parsed()) {
            ctx.manifest.subcommand = "integrate";
            return cmd_integrate(ctx, guess_file, check_file, opt, np, out_path);
        }
        ctx.manifest_path = manifest_path;
        if (s->parsed()) {
            ctx.manifest.subcommand = "solve";
            return cmd_solve(ctx, file, limit, project, format, solve_mode);
        }
        if (v->parsed()) {
            ctx.manifest.subcommand = "verify";
            return cmd_verify(ctx, family, sizes, seeds, matrix, drop_line, max_horizon, exhaustive,
                              cex_dir);
        }
        ctx.manifest.subcommand = "bench";
        return cmd_bench(ctx, family, sizes, bench_seeds, bench_matrix, adhoc, out_path, instances,
                         no_instances);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace gcmeta
