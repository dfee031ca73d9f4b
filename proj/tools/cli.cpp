#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "dcjx/distance.hpp"
#include "dcjx/median.hpp"
#include "dcjx/simulator.hpp"

namespace dcjx::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HelpRequested {
    std::string text;
};

// Everything a command produces. Files are only written by the caller, so a
// replay can recompute them without touching the disk.
struct Outputs {
    std::string stdout_text;
    std::vector<std::pair<std::string, std::string>> files;
    std::vector<std::string> inputs;
    json options = json::object();
    std::optional<std::string> manifest_path;
    bool timing = false;
    int exit_code = kExitOk;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << data;
}

std::vector<Genome> load_genomes(const std::string& path) {
    const auto text = read_file(path);
    try {
        return parse_genomes(text);
    } catch (const ParseError& e) {
        throw UsageError(path + ":" + std::to_string(e.line()) + ": " + e.what());
    }
}

std::uint64_t default_seed() {
    const char* env = std::getenv("DCJX_SEED");
    if (env == nullptr || *env == '\0') return 0;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (used != std::strlen(env)) throw std::invalid_argument(env);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("DCJX_SEED is not an unsigned integer: ") + env);
    }
}

std::string elapsed_ms(Clock::time_point start, bool timing) {
    if (!timing) return "NA";
    std::ostringstream os;
    os << std::fixed << std::setprecision(3)
       << std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return os.str();
}

// Parses a subcommand's arguments; CLI11 wants them reversed.
void parse(CLI::App& app, const std::vector<std::string>& args) {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    }
}

Model model_of(const std::string& s) { return *parse_model(s); }

void cmd_distance(const std::vector<std::string>& args, Outputs& o, std::ostream& err) {
    CLI::App app{"Pairwise DCJ-Indel exemplar/matching distances", "dcjx distance"};
    std::string file, model = "exemplar", out_prefix, manifest;
    bool no_fix = false, no_condense = false, no_decompose = false, oracle = false, as_json = false, no_timing = false;
    int threads = 1, restarts = 0;
    std::uint64_t seed = default_seed();
    app.add_option("file", file, "Genome file with two or more genomes")->required();
    app.add_option("--model", model, "exemplar or matching")->check(CLI::IsMember({"exemplar", "matching"}));
    app.add_flag("--no-fix2cycles", no_fix, "Do not fix 2-cycles before the search");
    app.add_flag("--no-condense", no_condense, "Evaluate nodes on the full breakpoint graph");
    app.add_flag("--no-decompose", no_decompose, "Search all decision families together");
    app.add_flag("--oracle", oracle, "Cross-check every pair by exhaustive enumeration");
    app.add_option("--restarts", restarts, "Random completions tried for the first upper bound")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed, "Seed for random restarts (default: DCJX_SEED or 0)");
    app.add_option("--threads", threads, "Pairs computed concurrently")->check(CLI::PositiveNumber);
    app.add_flag("--json", as_json, "Emit JSON instead of TSV");
    app.add_flag("--no-timing", no_timing, "Print NA instead of wall time");
    app.add_option("--out", out_prefix, "Also write PREFIX.tsv (or .json) and PREFIX.manifest.json");
    app.add_option("--manifest", manifest, "Manifest path");
    parse(app, args);

    const auto genomes = load_genomes(file);
    if (genomes.size() < 2) throw UsageError(file + ": need at least two genomes");
    o.inputs = {file};
    o.timing = !no_timing;
    const SolverOptions opt{.fix_two_cycles = !no_fix,
                            .condense = !no_condense,
                            .decompose = !no_decompose,
                            .random_restarts = restarts,
                            .seed = seed};
    o.options = {{"model", model},       {"fix_two_cycles", !no_fix}, {"condense", !no_condense},
                 {"decompose", !no_decompose}, {"oracle", oracle},   {"restarts", restarts},
                 {"seed", seed},         {"threads", threads},       {"json", as_json}};

    struct Row {
        std::size_t a, b;
        DistanceResult r;
        std::string ms;
        std::optional<int> oracle;
        std::string oracle_note;
    };
    std::vector<Row> rows;
    for (std::size_t a = 0; a < genomes.size(); ++a)
        for (std::size_t b = a + 1; b < genomes.size(); ++b) rows.push_back({a, b, {}, {}, {}, {}});

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t k; (k = next++) < rows.size();) {
            auto& row = rows[k];
            const auto start = Clock::now();
            row.r = branch_and_bound(genomes[row.a], genomes[row.b], model_of(model), opt);
            row.ms = elapsed_ms(start, o.timing);
            if (!oracle) continue;
            try {
                row.oracle = oracle_distance(genomes[row.a], genomes[row.b], model_of(model));
            } catch (const AssignmentSpaceTooLarge& e) {
                row.oracle_note = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream os;
    json j = json::array();
    if (!as_json) {
        os << "genome_a\tgenome_b\tmodel\tdistance\texpanded_nodes\tfixed_pairs\tgroups";
        if (oracle) os << "\toracle";
        os << "\telapsed_ms\n";
    }
    for (const auto& row : rows) {
        const auto& na = genomes[row.a].name;
        const auto& nb = genomes[row.b].name;
        if (oracle && !row.oracle) err << "warning: " << na << " vs " << nb << ": oracle skipped: " << row.oracle_note << "\n";
        if (row.oracle && *row.oracle != row.r.distance) {
            err << "error: " << na << " vs " << nb << ": distance " << row.r.distance << " but oracle " << *row.oracle
                << "\n";
            o.exit_code = kExitVerify;
        }
        if (as_json) {
            json r = {{"genome_a", na},
                      {"genome_b", nb},
                      {"model", model},
                      {"distance", row.r.distance},
                      {"expanded_nodes", row.r.stats.expanded_nodes},
                      {"fixed_pairs", row.r.stats.fixed_pairs},
                      {"groups", row.r.stats.groups},
                      {"elapsed_ms", row.ms}};
            if (oracle) r["oracle"] = row.oracle ? json(*row.oracle) : json(nullptr);
            j.push_back(std::move(r));
            continue;
        }
        os << na << '\t' << nb << '\t' << model << '\t' << row.r.distance << '\t' << row.r.stats.expanded_nodes << '\t'
           << row.r.stats.fixed_pairs << '\t' << row.r.stats.groups;
        if (oracle) os << '\t' << (row.oracle ? std::to_string(*row.oracle) : "NA");
        os << '\t' << row.ms << '\n';
    }
    o.stdout_text = as_json ? j.dump(2) + "\n" : os.str();
    if (!out_prefix.empty()) {
        o.files.emplace_back(out_prefix + (as_json ? ".json" : ".tsv"), o.stdout_text);
        o.manifest_path = out_prefix + ".manifest.json";
    }
    if (!manifest.empty()) o.manifest_path = manifest;
}

void cmd_median(const std::vector<std::string>& args, Outputs& o, std::ostream& err) {
    CLI::App app{"DCJ-Indel exemplar/matching median of three genomes", "dcjx median"};
    std::string file, model = "exemplar", mode = "lk", out_prefix = "median";
    int l1 = 2, l2 = 3, delta = 2, k = 0;
    std::optional<std::uint32_t> caps;
    bool no_shrink = false, oracle = false, no_timing = false;
    std::uint64_t seed = default_seed();
    app.add_option("file", file, "Genome file with exactly three genomes")->required();
    app.add_option("--model", model, "exemplar or matching")->check(CLI::IsMember({"exemplar", "matching"}));
    app.add_option("--mode", mode, "lk or kopt")->check(CLI::IsMember({"lk", "kopt"}));
    app.add_option("--l1", l1, "Levels expanded exhaustively");
    app.add_option("--l2", l2, "Deepening limit");
    app.add_option("--k", k, "K for kopt (sets both levels)");
    app.add_option("--delta", delta, "num_pair threshold for admitting a neighbor");
    app.add_option("--seed", seed, "Seed for the initial matching (default: DCJX_SEED or 0)");
    app.add_option("--caps", caps, "Cap vertices in the graph (default: most telomeres among the inputs)");
    app.add_flag("--no-shrink", no_shrink, "Skip adequate-subgraph shrinking");
    app.add_flag("--oracle", oracle, "Compare with the exhaustive median");
    app.add_flag("--no-timing", no_timing, "Print NA instead of wall time");
    app.add_option("--out", out_prefix, "Output prefix");
    parse(app, args);

    const auto genomes = load_genomes(file);
    if (genomes.size() != 3) throw UsageError(file + ": expected exactly three genomes, found " + std::to_string(genomes.size()));
    o.inputs = {file};
    o.timing = !no_timing;
    MedianOptions opt;
    if (mode == "kopt") {
        if (k > 0) l1 = l2 = k;
        opt.lk = {l1, l2, delta, SearchMode::kopt};
    } else {
        opt.lk = {l1, l2, delta, SearchMode::lk};
    }
    try {
        opt.lk.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (caps && *caps % 2 != 0) throw UsageError("--caps must be even");
    opt.shrink = !no_shrink;
    opt.seed = seed;
    opt.caps = caps;
    o.options = {{"model", model}, {"mode", mode},        {"l1", opt.lk.L1},     {"l2", opt.lk.L2},
                 {"delta", delta}, {"seed", seed},        {"shrink", !no_shrink}, {"oracle", oracle},
                 {"caps", caps ? json(*caps) : json(nullptr)}};

    const Trio trio{genomes[0], genomes[1], genomes[2]};
    const auto start = Clock::now();
    const auto r = solve_median(trio, model_of(model), opt);
    const auto ms = elapsed_ms(start, o.timing);

    std::optional<int> best;
    if (oracle) {
        const MultipleBreakpointGraph mbg(trio, r.content, caps);
        try {
            best = exhaustive_median(mbg, model_of(model)).score.total;
        } catch (const AssignmentSpaceTooLarge& e) {
            err << "warning: oracle skipped: " << e.what() << "\n";
        }
        if (best && r.score.total < *best) {
            err << "error: median score " << r.score.total << " below the exhaustive optimum " << *best << "\n";
            o.exit_code = kExitVerify;
        }
    }

    std::ostringstream os;
    os << "model\tmode\tl1\tl2\tdelta\tseed\tscore\td1\td2\td3\tinitial_score\taccepted_moves\tfixed_edges\tevaluations";
    if (oracle) os << "\toracle_score\tgap";
    os << "\telapsed_ms\n";
    os << model << '\t' << mode << '\t' << opt.lk.L1 << '\t' << opt.lk.L2 << '\t' << delta << '\t' << seed << '\t'
       << r.score.total << '\t' << r.score.distances[0] << '\t' << r.score.distances[1] << '\t' << r.score.distances[2]
       << '\t' << r.initial_score << '\t' << r.accepted_scores.size() - 1 << '\t' << r.fixed_edges << '\t'
       << r.evaluations;
    if (oracle) {
        if (best) {
            os << '\t' << *best << '\t' << r.score.total - *best;
        } else {
            os << "\tNA\tNA";
        }
    }
    os << '\t' << ms << '\n';
    o.stdout_text = os.str();
    o.files.emplace_back(out_prefix + ".median.txt", serialize_genomes(std::vector<Genome>{r.median}));
    o.files.emplace_back(out_prefix + ".summary.tsv", o.stdout_text);
    o.manifest_path = out_prefix + ".manifest.json";
}

void cmd_simulate(const std::vector<std::string>& args, Outputs& o, std::ostream& err) {
    CLI::App app{"Evolve genomes from the identity", "dcjx simulate"};
    EvolutionConfig c;
    c.seed = default_seed();
    bool trio = false;
    std::string out_prefix = "sim";
    app.add_option("--n", c.n, "Genes in the identity seed genome");
    app.add_option("--theta", c.theta, "Inversions per gene");
    app.add_option("--gamma", c.gamma, "Indels per gene");
    app.add_option("--phi", c.phi, "Duplications per gene");
    app.add_option("--seed", c.seed, "Seed (default: DCJX_SEED or 0)");
    app.add_option("--insertion-fraction", c.insertion_fraction, "Share of indels that insert");
    app.add_option("--dup-length", c.duplication_length, "Genes copied per duplication");
    app.add_flag("--trio", trio, "Three genomes instead of two");
    app.add_option("--out", out_prefix, "Output prefix");
    parse(app, args);
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    o.options = {{"n", c.n},
                 {"theta", c.theta},
                 {"gamma", c.gamma},
                 {"phi", c.phi},
                 {"seed", c.seed},
                 {"insertion_fraction", c.insertion_fraction},
                 {"dup_length", c.duplication_length},
                 {"trio", trio}};

    std::vector<EvolutionResult> runs;
    if (trio) {
        auto t = make_trio(c);
        runs.assign(t.genomes.begin(), t.genomes.end());
    } else {
        auto p = make_pair(c);
        runs.assign(p.begin(), p.end());
    }
    std::vector<Genome> genomes;
    std::vector<std::pair<std::string, std::vector<EvolutionEvent>>> logs;
    std::ostringstream os;
    os << "genome\tevents\tgenes\tchromosomes\n";
    for (const auto& r : runs) {
        for (const auto& w : r.warnings) err << "warning: " << r.genome.name << ": " << w << "\n";
        genomes.push_back(r.genome);
        logs.emplace_back(r.genome.name, r.events);
        os << r.genome.name << '\t' << r.events.size() << '\t' << r.genome.gene_count() << '\t'
           << r.genome.chromosomes.size() << '\n';
    }
    o.stdout_text = os.str();
    o.files.emplace_back(out_prefix + ".genomes.txt", serialize_genomes(genomes));
    o.files.emplace_back(out_prefix + ".seed.txt", serialize_genomes(std::vector<Genome>{make_identity(c.n)}));
    o.files.emplace_back(out_prefix + ".events.tsv", format_event_log(logs));
    o.manifest_path = out_prefix + ".manifest.json";
}

// Runs a command into memory. The seed resolved from the environment is
// appended so the recorded argument list does not depend on it.
void execute(const std::string& command, const std::vector<std::string>& args, Outputs& o, std::ostream& err) {
    if (command == "distance") {
        cmd_distance(args, o, err);
    } else if (command == "median") {
        cmd_median(args, o, err);
    } else if (command == "simulate") {
        cmd_simulate(args, o, err);
    } else {
        throw UsageError("unknown command: " + command);
    }
}

std::vector<std::string> with_seed(const std::string& command, std::vector<std::string> args, const json& options) {
    if (command == "distance" || command == "median" || command == "simulate") {
        const bool has = std::any_of(args.begin(), args.end(), [](const std::string& a) {
            return a == "--seed" || a.rfind("--seed=", 0) == 0;
        });
        if (!has) {
            args.push_back("--seed");
            args.push_back(std::to_string(options.at("seed").get<std::uint64_t>()));
        }
    }
    return args;
}

json make_manifest(const std::string& command, const std::vector<std::string>& args, const Outputs& o) {
    json inputs = json::array();
    for (const auto& path : o.inputs) inputs.push_back({{"path", path}, {"sha256", sha256_hex(read_file(path))}});
    json outputs = json::array();
    outputs.push_back({{"name", "stdout"}, {"sha256", sha256_hex(o.stdout_text)}});
    for (const auto& [path, data] : o.files) outputs.push_back({{"name", path}, {"sha256", sha256_hex(data)}});
    return {{"tool", "dcjx"},         {"version", kVersion}, {"command", command}, {"argv", args},
            {"inputs", inputs},       {"options", o.options}, {"timing", o.timing}, {"outputs", outputs}};
}

int cmd_replay(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Re-run a manifest and compare outputs", "dcjx replay"};
    std::string path;
    app.add_option("manifest", path, "Manifest written by a previous run")->required();
    parse(app, args);
    json m;
    try {
        m = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
    const auto command = m.at("command").get<std::string>();
    const auto argv = m.at("argv").get<std::vector<std::string>>();
    bool ok = true;
    for (const auto& in : m.at("inputs")) {
        const auto p = in.at("path").get<std::string>();
        if (sha256_hex(read_file(p)) != in.at("sha256").get<std::string>()) {
            err << "input changed: " << p << "\n";
            ok = false;
        }
    }
    if (!ok) return kExitVerify;
    if (m.value("timing", false)) err << "warning: the recorded run measured wall time; elapsed_ms will differ\n";
    Outputs o;
    std::ostringstream sink;
    execute(command, argv, o, sink);
    std::map<std::string, std::string> produced{{"stdout", o.stdout_text}};
    for (const auto& [p, data] : o.files) produced[p] = data;
    for (const auto& rec : m.at("outputs")) {
        const auto name = rec.at("name").get<std::string>();
        auto it = produced.find(name);
        const bool same = it != produced.end() && sha256_hex(it->second) == rec.at("sha256").get<std::string>();
        out << (same ? "identical" : "DIFFERS") << '\t' << name << '\n';
        ok = ok && same;
    }
    return ok ? kExitOk : kExitVerify;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    static const char* kUsage =
        "usage: dcjx <command> [options]\n"
        "commands:\n"
        "  distance FILE   pairwise distances\n"
        "  median FILE     median of three genomes\n"
        "  simulate        evolve genomes from the identity\n"
        "  replay MANIFEST re-run a manifest and compare outputs\n"
        "run 'dcjx <command> --help' for options\n";
    if (args.empty()) {
        err << kUsage;
        return kExitUsage;
    }
    const auto& command = args[0];
    if (command == "--help" || command == "-h") {
        out << kUsage;
        return kExitOk;
    }
    if (command == "--version") {
        out << "dcjx " << kVersion << "\n";
        return kExitOk;
    }
    const std::vector<std::string> rest(args.begin() + 1, args.end());
    try {
        if (command == "replay") return cmd_replay(rest, out, err);
        Outputs o;
        execute(command, rest, o, err);
        for (const auto& [path, data] : o.files) write_file(path, data);
        if (o.manifest_path) {
            const auto recorded = with_seed(command, rest, o.options);
            write_file(*o.manifest_path, make_manifest(command, recorded, o).dump(2) + "\n");
        }
        out << o.stdout_text;
        return o.exit_code;
    } catch (const HelpRequested& h) {
        out << h.text;
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "dcjx " << command << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "dcjx " << command << ": " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace dcjx::cli
