// mcck: command-line front end for the consistency checkers.

#include "mcck/mcck.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace mcck;

namespace {

constexpr int kExitConsistent = 0;
constexpr int kExitInconsistent = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTooLarge = 3;

// Total witnesses use explicit relations; skip them past this size.
constexpr std::size_t kWitnessLimit = 2000;

int exit_for(const Error& e) {
    return e.kind() == ErrorKind::TooLarge || e.kind() == ErrorKind::StateLimit ? kExitTooLarge : kExitUsage;
}

std::string join_ids(const std::vector<std::uint64_t>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(ids[i]);
    }
    return s;
}

std::string verdict_line(const Execution& x, const Verdict& v) {
    if (v.consistent()) return "Consistent";
    std::string s = std::string("Inconsistent ") + to_string(v.reason);
    if (v.location) s += " location=" + x.loc_name(*v.location);
    if (!v.events.empty()) s += " events=" + join_ids(v.events);
    return s;
}

void print_partial(std::ostream& os, const Execution& x, const PartialMo& pm) {
    for (auto [a, b] : pm.pairs) os << "partial-mo " << x.loc_name(x[a].loc) << ' ' << x[a].id << ' ' << x[b].id << '\n';
}

void print_total(std::ostream& os, const Execution& x, const TotalMo& mo) {
    for (std::uint32_t l = 0; l < mo.per_loc.size(); ++l) {
        os << "mo " << x.loc_name(std::int32_t(l));
        for (auto e : mo.per_loc[l]) os << ' ' << x[e].id;
        os << '\n';
    }
}

const std::vector<std::string> kCheckers{"wra", "sra", "sra-normw", "ra", "rc20", "relaxed"};

Verdict run_checker(const std::string& name, const Execution& x) {
    if (name == "wra") return check_wra(x);
    if (name == "sra") return check_sra_full(x);
    if (name == "sra-normw") return check_sra_normw(x);
    if (name == "ra") return check_ra(x);
    if (name == "rc20") return check_rc20(x);
    if (name == "relaxed") return check_relaxed(demote(x));
    throw Error(ErrorKind::UnknownName, "unknown checker " + name);
}

// Total witness for a consistent verdict, on the execution the checker ran on.
std::optional<TotalMo> total_witness(const std::string& name, const Execution& x, const Verdict& v) {
    if (v.witness_mo) return v.witness_mo;
    if (!v.partial_mo) return std::nullopt;
    if (x.size() > kWitnessLimit) {
        std::cerr << "note: " << x.size() << " events; total witness skipped\n";
        return std::nullopt;
    }
    if (name == "rc20") return complete_witness_rc20(x, *v.partial_mo);
    if (name == "ra") return complete_witness_rc20(strengthen(x), *v.partial_mo);
    if (name == "relaxed") return complete_witness_relaxed(demote(x), *v.partial_mo);
    if (name == "sra-normw") return complete_witness_sra(x, *v.partial_mo);
    return std::nullopt;
}

int cmd_check(const std::string& model, bool witness, const std::vector<std::string>& files) {
    int worst = kExitConsistent;
    for (const auto& f : files) {
        const std::string prefix = files.size() > 1 ? f + ": " : "";
        try {
            Execution x = load_trace(f);
            Verdict v = run_checker(model, x);
            std::cout << prefix << verdict_line(x, v) << '\n';
            if (witness && v.consistent()) {
                // relaxed pairs refer to the demoted copy, which keeps event indices
                if (v.partial_mo) print_partial(std::cout, x, *v.partial_mo);
                if (auto mo = total_witness(model, x, v)) print_total(std::cout, x, *mo);
            }
            worst = std::max(worst, v.consistent() ? kExitConsistent : kExitInconsistent);
        } catch (const Error& e) {
            std::cerr << prefix << e.what() << '\n';
            worst = std::max(worst, exit_for(e));
        }
    }
    return worst;
}

int cmd_oracle(const std::string& model, double limit, bool witness, const std::string& file) {
    try {
        Execution x = load_trace(file);
        auto m = parse_model(model);
        if (!m) throw Error(ErrorKind::UnknownName, "unknown model " + model);
        OracleResult r = oracle_consistent(x, *m, limit);
        std::cout << (r.consistent ? "Consistent" : "Inconsistent") << '\n';
        if (witness && r.witness) print_total(std::cout, x, *r.witness);
        return r.consistent ? kExitConsistent : kExitInconsistent;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return exit_for(e);
    }
}

// Lattice position of a run. "ra" (checker) decides RA on the strengthened trace.
enum class Key { SC, SRA, RA, RAStrong, WRA, RC20, Relaxed };

Key key_of(const std::string& run) {
    static const std::map<std::string, Key> keys{
        {"wra", Key::WRA},           {"sra", Key::SRA},           {"sra-normw", Key::SRA},
        {"ra", Key::RAStrong},       {"rc20", Key::RC20},         {"relaxed", Key::Relaxed},
        {"oracle:sc", Key::SC},      {"oracle:sra", Key::SRA},    {"oracle:ra", Key::RA},
        {"oracle:wra", Key::WRA},    {"oracle:rc20", Key::RC20},  {"oracle:relaxed", Key::Relaxed},
    };
    auto it = keys.find(run);
    if (it == keys.end()) throw Error(ErrorKind::UnknownName, "unknown run " + run);
    return it->second;
}

// a ⇒ b: every execution consistent under a is consistent under b.
bool implies(Key a, Key b) {
    static const std::vector<std::pair<Key, Key>> edges{
        {Key::SC, Key::SRA},  {Key::SRA, Key::RA},       {Key::RA, Key::WRA},    {Key::RA, Key::RC20},
        {Key::RC20, Key::Relaxed}, {Key::RAStrong, Key::RA},
    };
    if (a == b) return true;
    for (auto [p, q] : edges)
        if (p == a && implies(q, b)) return true;
    return false;
}

std::optional<bool> run_diff_entry(const std::string& run, const Execution& x) {
    if (run.rfind("oracle:", 0) == 0) {
        auto m = parse_model(run.substr(7));
        if (!m) throw Error(ErrorKind::UnknownName, "unknown model " + run);
        return oracle_consistent(*m == Model::Relaxed ? demote(x) : x, *m).consistent;
    }
    if (run == "sra-normw" && x.has_rmw()) return std::nullopt;
    return run_checker(run, x).consistent();
}

int cmd_diff(const std::string& models, const std::vector<std::string>& files) {
    std::vector<std::string> runs;
    std::stringstream ss(models);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) runs.push_back(item);
    if (runs.empty()) {
        std::cerr << "diff: no models given\n";
        return kExitUsage;
    }
    try {
        for (const auto& r : runs) key_of(r);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }
    std::cout << "file";
    for (const auto& r : runs) std::cout << ' ' << r;
    std::cout << '\n';
    int rc = kExitConsistent;
    for (const auto& f : files) {
        std::vector<std::optional<bool>> res;
        try {
            Execution x = load_trace(f);
            for (const auto& r : runs) {
                try {
                    res.push_back(run_diff_entry(r, x));
                } catch (const Error& e) {
                    std::cerr << f << ": " << r << ": " << e.what() << '\n';
                    res.push_back(std::nullopt);
                }
            }
        } catch (const Error& e) {
            std::cerr << f << ": " << e.what() << '\n';
            rc = std::max(rc, kExitUsage);
            continue;
        }
        std::cout << f;
        for (const auto& v : res) std::cout << ' ' << (!v ? "-" : *v ? "C" : "I");
        std::cout << '\n';
        for (std::size_t i = 0; i < runs.size(); ++i)
            for (std::size_t j = 0; j < runs.size(); ++j) {
                if (i == j || !res[i] || !res[j] || !*res[i] || *res[j]) continue;
                if (!implies(key_of(runs[i]), key_of(runs[j]))) continue;
                std::cout << "violation " << f << ' ' << runs[i] << "=C " << runs[j] << "=I\n";
                rc = std::max(rc, kExitInconsistent);
            }
    }
    return rc;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    out << text;
}

// Events fed in a po ∪ rf topological order, smallest id first among ready events.
int cmd_stream(const std::string& file) {
    try {
        Execution x = load_trace(file);
        auto order = topological_order(x);
        if (!order) {
            auto cyc = porf_cycle(x);
            std::cout << "inconsistent " << x[cyc->front()].id << '\n';
            return kExitInconsistent;
        }
        Session s(std::max<std::uint32_t>(1, x.num_threads()));
        std::vector<std::uint64_t> sid(x.size(), 0);
        for (EventIdx e : *order) {
            const Event& ev = x[e];
            StepResult r;
            switch (ev.op) {
            case Op::Write: r = s.on_write(ev.tid, x.loc_name(ev.loc)); break;
            case Op::Read: r = s.on_read(ev.tid, x.loc_name(ev.loc), sid[x.rf(e)]); break;
            case Op::Rmw: r = s.on_rmw(ev.tid, x.loc_name(ev.loc), sid[x.rf(e)]); break;
            case Op::Fence: r = s.on_fence(ev.tid); break;
            }
            if (!r.consistent()) {
                std::cout << "inconsistent " << ev.id << '\n';
                return kExitInconsistent;
            }
            sid[e] = r.id;
        }
        std::cout << "consistent\n";
        return kExitConsistent;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return exit_for(e);
    }
}

int cmd_bench(const std::string& checker, const std::string& preset, const std::string& sizes, int repeat,
              std::uint32_t k) {
    std::vector<std::uint32_t> ns;
    std::stringstream ss(sizes);
    for (std::string item; std::getline(ss, item, ',');) ns.push_back(std::uint32_t(std::stoul(item)));
    std::cout << "size seconds ratio\n";
    double prev = 0;
    for (auto n : ns) {
        Execution x = gen_preset(preset, n, k);
        double best = 1e300;
        for (int i = 0; i < std::max(1, repeat); ++i) {
            auto t0 = std::chrono::steady_clock::now();
            Verdict v = run_checker(checker, x);
            auto t1 = std::chrono::steady_clock::now();
            (void)v;
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        std::printf("%zu %.6f ", x.size(), best);
        if (prev > 0) std::printf("%.3f\n", best / prev);
        else std::printf("-\n");
        prev = best;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reads-from consistency checking for weak memory models"};
    app.require_subcommand(1);

    std::string model;
    bool witness = false;
    std::vector<std::string> files;
    auto* check = app.add_subcommand("check", "Decide consistency of a trace");
    check->add_option("--model", model, "Model")->required()->check(CLI::IsMember(kCheckers));
    check->add_flag("--witness", witness, "Print the partial mo and a total witness");
    check->add_option("files", files, "Trace files")->required();

    std::string omodel;
    double limit = kDefaultOracleLimit;
    std::string ofile;
    bool owitness = false;
    auto* oracle = app.add_subcommand("oracle", "Brute-force consistency by mo enumeration");
    oracle->add_option("--model", omodel, "Model")
        ->required()
        ->check(CLI::IsMember({"sc", "sra", "ra", "wra", "rc20", "relaxed"}));
    oracle->add_option("--limit", limit, "Maximum number of mo candidates");
    oracle->add_flag("--witness", owitness, "Print the first passing mo");
    oracle->add_option("file", ofile, "Trace file")->required();

    std::string models;
    std::vector<std::string> dfiles;
    auto* diff = app.add_subcommand("diff", "Compare checkers and oracles");
    diff->add_option("--models", models, "Comma-separated checker names or oracle:MODEL")->required();
    diff->add_option("files", dfiles, "Trace files")->required();

    auto* gen = app.add_subcommand("gen", "Generate traces");
    gen->require_subcommand(1);
    std::string out, graph;
    auto* gtri = gen->add_subcommand("triangle", "Triangle-detection reduction");
    gtri->add_option("--graph", graph, "Edge list file")->required();
    gtri->add_option("-o,--out", out, "Output file");

    GenParams gp;
    auto* grand = gen->add_subcommand("random", "Seeded random execution");
    grand->add_option("--events", gp.events, "Event count")->required();
    grand->add_option("--threads", gp.threads, "Thread count")->required();
    grand->add_option("--locs", gp.locs, "Location count")->required();
    grand->add_option("--rmw", gp.rmw, "RMW probability");
    grand->add_option("--fence", gp.fence, "Fence probability");
    grand->add_option("--seed", gp.seed, "Seed for std::mt19937_64");
    grand->add_option("--max-writes", gp.max_writes_per_loc, "Writes per location cap (0 = none)");
    grand->add_option("-o,--out", out, "Output file");

    std::string name;
    auto* glit = gen->add_subcommand("litmus", "Named litmus trace");
    glit->add_option("name", name, "Litmus name")->required()->check(CLI::IsMember(litmus_names()));
    glit->add_option("-o,--out", out, "Output file");

    std::uint32_t pn = 100, pk = 4;
    auto* gpre = gen->add_subcommand("preset", "Scaling preset");
    gpre->add_option("name", name, "Preset name")->required()->check(CLI::IsMember(preset_names()));
    gpre->add_option("--n", pn, "Event count");
    gpre->add_option("--k", pk, "Thread parameter");
    gpre->add_option("-o,--out", out, "Output file");

    std::string sfile;
    auto* stream = app.add_subcommand("stream", "Feed a trace to the incremental RA checker");
    stream->add_option("file", sfile, "Trace file")->required();

    std::string bchecker, bpreset, bsizes;
    int brepeat = 3;
    std::uint32_t bk = 4;
    auto* bench = app.add_subcommand("bench", "Time a checker on a preset");
    bench->add_option("--checker", bchecker, "Checker")->required()->check(CLI::IsMember(kCheckers));
    bench->add_option("--preset", bpreset, "Preset")->required()->check(CLI::IsMember(preset_names()));
    bench->add_option("--sizes", bsizes, "Comma-separated sizes")->required();
    bench->add_option("--repeat", brepeat, "Repetitions; the minimum is reported");
    bench->add_option("--k", bk, "Thread parameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*check) return cmd_check(model, witness, files);
        if (*oracle) return cmd_oracle(omodel, limit, owitness, ofile);
        if (*diff) return cmd_diff(models, dfiles);
        if (*stream) return cmd_stream(sfile);
        if (*bench) return cmd_bench(bchecker, bpreset, bsizes, brepeat, bk);
        if (*gtri) write_out(out, serialize_trace(gen_triangle_reduction(parse_edge_list(read_file(graph)))));
        if (*grand) write_out(out, serialize_trace(gen_random(gp)));
        if (*glit) write_out(out, serialize_trace(gen_litmus(name)));
        if (*gpre) write_out(out, serialize_trace(gen_preset(name, pn, pk)));
        return 0;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }
}
