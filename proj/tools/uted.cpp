// Command-line front end: distance, gen, sweep, census, dump-matrix.
//
// Exit codes: 0 ok, 1 usage or parse error, 2 verification mismatch,
// 3 internal error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "uted/uted.hpp"

namespace {

using namespace uted;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A file name if such a file exists, otherwise a literal tree.
LabeledTree read_tree(const std::string& arg, Alphabet& alphabet) {
    std::string text;
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else if (!arg.empty() && arg.find_first_not_of(" \t\r\n") != std::string::npos &&
               arg[arg.find_first_not_of(" \t\r\n")] == '(') {
        text = arg;
    } else {
        throw UsageError("cannot read tree '" + arg + "': no such file");
    }
    try {
        return parse_tree(text, alphabet);
    } catch (const ParseError& e) {
        throw UsageError("cannot parse tree '" + arg + "': " + e.what() + " (offset " + std::to_string(e.position()) +
                         ")");
    }
}

struct EngineFlags {
    std::string algo = "cubic";
    std::string backend = "dense";
    std::string bd = "naive";
    int delta = 0;
    std::string trace;
    bool inject_fault = false;
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f, bool with_oracle) {
    std::vector<std::string> algos{"cubic", "subcubic"};
    if (with_oracle) {
        algos.emplace_back("oracle");
    }
    cmd->add_option("--algo", f.algo, "Engine")->check(CLI::IsMember(algos))->capture_default_str();
    cmd->add_option("--backend", f.backend, "Matrix store")
        ->check(CLI::IsMember({"dense", "persistent"}))
        ->capture_default_str();
    cmd->add_option("--bd", f.bd, "Bounded-difference product backend")
        ->check(CLI::IsMember({"naive"}))
        ->capture_default_str();
    cmd->add_option("--delta", f.delta, "Block size for subcubic (default: cube root of |E(T)|)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--trace", f.trace, "Write one TSV line per subcubic transition to FILE");
    cmd->add_flag("--inject-fault", f.inject_fault, "Perturb the subcubic result (harness self-test)")->group("");
}

SubcubicConfig subcubic_config(const EngineFlags& f, std::ostream* trace) {
    SubcubicConfig cfg;
    cfg.delta = f.delta;
    cfg.backend = naive_backend();
    cfg.trace = trace;
    return cfg;
}

/// Raises cell (1, 1 + 2m), the only cell of that quadrant that is valid.
template <SimilarityStore M>
M inject_fault(const M& s) {
    int j = 1 + s.window();
    return rangemax(s, 1, j, plus(s.value(1, j), 1));
}

std::string describe_cell(Cell c) {
    return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")";
}

template <SimilarityStore M>
int run_distance_with(const LabeledTree& t, const LabeledTree& q, const EngineFlags& f, bool all_rootings, bool check) {
    std::ofstream trace_file;
    std::ostream* trace = nullptr;
    if (!f.trace.empty()) {
        trace_file.open(f.trace);
        if (!trace_file) {
            throw UsageError("cannot open trace file " + f.trace);
        }
        write_trace_header(trace_file);
        trace = &trace_file;
    }
    const LabeledTree* tp = &t;
    const LabeledTree* qp = &q;
    if (q.empty()) {
        std::swap(tp, qp);
    }
    if (qp->empty()) {
        std::cout << 0 << '\n';
        if (all_rootings) {
            std::cout << '\n';
        }
        return kExitOk;
    }
    TourContext ctx(*qp);
    std::vector<int> vec;
    if (f.algo == "oracle") {
        DistanceOptions opt;
        opt.algorithm = Algorithm::oracle;
        vec = unrooted_distance(*tp, *qp, opt).per_rooting;
    } else {
        Algorithm algo = parse_algorithm(f.algo);
        M s = similarity_matrix<M>(*tp, ctx, algo, subcubic_config(f, trace));
        if (f.inject_fault && algo == Algorithm::subcubic) {
            s = inject_fault(s);
        }
        vec = distances_all_rootings(s, tp->edge_count());
    }
    if (check) {
        M cubic = compute_S_cubic<M>(*tp, ctx);
        M sub = compute_S_subcubic<M>(*tp, ctx, subcubic_config(f, nullptr));
        if (f.inject_fault) {
            sub = inject_fault(sub);
        }
        if (auto cell = first_valid_mismatch(cubic, sub)) {
            std::cerr << "check failed: cubic and subcubic differ at cell " << describe_cell(*cell) << ": "
                      << cubic.value(cell->i, cell->j) << " vs " << sub.value(cell->i, cell->j) << '\n';
            return kExitMismatch;
        }
    }
    std::cout << *std::min_element(vec.begin(), vec.end()) << '\n';
    if (all_rootings) {
        for (std::size_t k = 0; k < vec.size(); ++k) {
            std::cout << (k ? " " : "") << vec[k];
        }
        std::cout << '\n';
    }
    return kExitOk;
}

// --- sweep ----------------------------------------------------------------

struct SweepOptions {
    int count = 100;
    int max_edges = 10;
    std::uint64_t seed = 1;
    int alphabet = 2;
    int threads = 0;
    bool inject_fault = false;
};

std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

/// One sweep case; returns a counterexample description on failure.
std::optional<std::string> sweep_case(const SweepOptions& o, int index) {
    auto rng = case_rng(o.seed, static_cast<std::uint64_t>(index));
    Alphabet names;
    LabeledTree t = random_tree(uniform_int(rng, 0, o.max_edges), TreeShape::random, o.alphabet, rng, names);
    LabeledTree q = random_tree(uniform_int(rng, 1, std::max(1, o.max_edges)), TreeShape::random, o.alphabet, rng, names);
    TourContext ctx(q);
    auto report = [&](const std::string& what) {
        std::ostringstream os;
        os << "case " << index << ": " << what << "\n  T = " << format_tree(t, names) << "\n  Q = " << format_tree(q, names);
        return os.str();
    };
    std::vector<int> oracle;
    for (int i = 1; i <= ctx.window(); ++i) {
        oracle.push_back(rooted_ted_oracle(t, segment_tree_of(ctx.tree, ctx.tour, Segment{i, i + ctx.window()})));
    }
    auto cubic = compute_S_cubic<DenseSimMatrix>(t, ctx);
    auto per_rooting = distances_all_rootings(cubic, t.edge_count());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        if (per_rooting[i] != oracle[i]) {
            return report("cubic distance for rooting " + std::to_string(i + 1) + " is " +
                          std::to_string(per_rooting[i]) + ", oracle says " + std::to_string(oracle[i]));
        }
    }
    std::vector<int> deltas{1, 2, 3, std::max(1, t.edge_count())};
    for (int delta : deltas) {
        SubcubicConfig cfg;
        cfg.delta = delta;
        auto sub = compute_S_subcubic<DenseSimMatrix>(t, ctx, cfg);
        if (o.inject_fault) {
            sub = inject_fault(sub);
        }
        if (auto cell = first_valid_mismatch(cubic, sub)) {
            std::ostringstream os;
            os << "subcubic (delta " << delta << ") differs from cubic at cell " << describe_cell(*cell) << ": "
               << sub.value(cell->i, cell->j) << " vs " << cubic.value(cell->i, cell->j);
            return report(os.str());
        }
    }
    return std::nullopt;
}

int run_sweep(const SweepOptions& o) {
    std::atomic<int> next{0};
    std::mutex mu;
    std::vector<std::pair<int, std::string>> failures;
    int workers = o.threads > 0 ? o.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::max(1, std::min(workers, o.count));
    auto work = [&] {
        for (int i = next++; i < o.count; i = next++) {
            std::optional<std::string> r;
            try {
                r = sweep_case(o, i);
            } catch (const std::exception& e) {
                r = "case " + std::to_string(i) + ": exception: " + e.what();
            }
            if (r) {
                std::lock_guard lock(mu);
                failures.emplace_back(i, *r);
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto& th : pool) {
        th.join();
    }
    std::sort(failures.begin(), failures.end());
    if (failures.empty()) {
        std::cout << "sweep: " << o.count << " cases, max " << o.max_edges << " edges, seed " << o.seed << ": all passed\n";
        return kExitOk;
    }
    std::cout << "sweep: " << failures.size() << " of " << o.count << " cases failed; first counterexample:\n"
              << failures.front().second << '\n';
    return kExitMismatch;
}

// --- census -----------------------------------------------------------------

std::vector<int> default_deltas(int n) {
    std::vector<int> out{1, default_delta(n), std::max(1, static_cast<int>(std::ceil(std::sqrt(n)))), std::max(1, n)};
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void print_census(const LabeledTree& t, const std::vector<int>& deltas) {
    const int n = t.edge_count();
    std::cout << "delta\ttype1\ttype2_large\ttype2_small\ttype2_base\tratio\n";
    for (int d : deltas) {
        auto c = transition_census(t, d);
        double ratio = n > 0 ? static_cast<double>(c.total()) * d / n : 0.0;
        std::cout << d << '\t' << c.type1 << '\t' << c.type2_large << '\t' << c.type2_small << '\t' << c.type2_base
                  << '\t' << std::fixed << std::setprecision(3) << ratio << '\n';
        std::cout.unsetf(std::ios::floatfield);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unrooted tree edit distance"};
    app.require_subcommand(1);

    // distance
    auto* dist = app.add_subcommand("distance", "Edit distance between two unrooted trees");
    std::string t1_arg, t2_arg;
    EngineFlags dist_flags;
    bool all_rootings = false;
    bool check = false;
    dist->add_option("tree1", t1_arg, "File or literal tree")->required();
    dist->add_option("tree2", t2_arg, "File or literal tree")->required();
    add_engine_flags(dist, dist_flags, true);
    dist->add_flag("--all-rootings", all_rootings, "Also print the distance to every rooting of tree2");
    dist->add_flag("--check", check, "Cross-check cubic and subcubic matrices");

    // gen
    auto* gen = app.add_subcommand("gen", "Random tree");
    int gen_n = 1;
    std::uint64_t gen_seed = 1;
    std::string gen_shape = "random";
    int gen_alphabet = 2;
    gen->add_option("n", gen_n, "Number of edges")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
    gen->add_option("--shape", gen_shape, "Tree shape")
        ->check(CLI::IsMember({"random", "path", "star", "caterpillar"}))
        ->capture_default_str();
    gen->add_option("--alphabet", gen_alphabet, "Number of distinct labels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Oracle vs cubic vs subcubic on random pairs");
    SweepOptions sweep_opt;
    sweep->add_option("--count", sweep_opt.count, "Number of random pairs")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sweep->add_option("--max-edges", sweep_opt.max_edges, "Largest tree size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--seed", sweep_opt.seed, "Random seed")->capture_default_str();
    sweep->add_option("--alphabet", sweep_opt.alphabet, "Number of distinct labels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--threads", sweep_opt.threads, "Worker threads (default: all cores)")
        ->check(CLI::NonNegativeNumber);
    sweep->add_flag("--inject-fault", sweep_opt.inject_fault, "Perturb subcubic results")->group("");

    // census
    auto* census = app.add_subcommand("census", "Transition counts of the block decomposition");
    std::string census_tree;
    int census_gen = 0;
    std::string census_shape = "random";
    std::uint64_t census_seed = 1;
    std::vector<int> census_deltas;
    census->add_option("tree", census_tree, "File or literal tree");
    census->add_option("--gen", census_gen, "Use a random tree with this many edges instead")
        ->check(CLI::PositiveNumber);
    census->add_option("--shape", census_shape, "Shape for --gen")
        ->check(CLI::IsMember({"random", "path", "star", "caterpillar"}))
        ->capture_default_str();
    census->add_option("--seed", census_seed, "Seed for --gen")->capture_default_str();
    census->add_option("--delta", census_deltas, "Block sizes (default: 1, cbrt n, sqrt n, n)")
        ->check(CLI::PositiveNumber)
        ->delimiter(',');

    // dump-matrix
    auto* dump = app.add_subcommand("dump-matrix", "Print S(tree1, tree2) as CSV");
    std::string d1_arg, d2_arg;
    EngineFlags dump_flags;
    dump->add_option("tree1", d1_arg, "File or literal tree")->required();
    dump->add_option("tree2", d2_arg, "File or literal tree (needs at least one edge)")->required();
    add_engine_flags(dump, dump_flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Alphabet names;
        if (*dist) {
            LabeledTree t = read_tree(t1_arg, names);
            LabeledTree q = read_tree(t2_arg, names);
            if (dist_flags.backend == "persistent") {
                return run_distance_with<PersistentSimMatrix>(t, q, dist_flags, all_rootings, check);
            }
            return run_distance_with<DenseSimMatrix>(t, q, dist_flags, all_rootings, check);
        }
        if (*gen) {
            std::mt19937_64 rng(gen_seed);
            std::cout << format_tree(random_tree(gen_n, parse_shape(gen_shape), gen_alphabet, rng, names), names)
                      << '\n';
            return kExitOk;
        }
        if (*sweep) {
            return run_sweep(sweep_opt);
        }
        if (*census) {
            LabeledTree t;
            if (census_gen > 0) {
                std::mt19937_64 rng(census_seed);
                t = random_tree(census_gen, parse_shape(census_shape), 2, rng, names);
            } else if (!census_tree.empty()) {
                t = read_tree(census_tree, names);
            } else {
                throw UsageError("census needs a tree or --gen N");
            }
            print_census(t, census_deltas.empty() ? default_deltas(t.edge_count()) : census_deltas);
            return kExitOk;
        }
        if (*dump) {
            LabeledTree t = read_tree(d1_arg, names);
            LabeledTree q = read_tree(d2_arg, names);
            if (q.empty()) {
                throw UsageError("dump-matrix: tree2 has no edges");
            }
            TourContext ctx(q);
            Algorithm algo = parse_algorithm(dump_flags.algo);
            auto cfg = subcubic_config(dump_flags, nullptr);
            if (dump_flags.backend == "persistent") {
                write_csv(std::cout, similarity_matrix<PersistentSimMatrix>(t, ctx, algo, cfg));
            } else {
                write_csv(std::cout, similarity_matrix<DenseSimMatrix>(t, ctx, algo, cfg));
            }
            return kExitOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}
