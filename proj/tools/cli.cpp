#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "ampcoh/ampcoh.hpp"

namespace ampcoh::cli {

namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<double, std::int64_t, std::string>;

constexpr double kSweepTolerance = -1e-6;

/// Invalid flag combinations and violated input invariants (exit 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Manifest {
    std::string command;
    Json config = Json::object();
    std::string engine = "none";
    std::uint64_t seed = 0;
    std::string output_path;
    std::string format = "csv";

    Json to_json() const {
        Json j;
        j["command"] = command;
        j["config"] = config;
        j["engine"] = engine;
        j["seed"] = seed;
        j["output_path"] = output_path;
        j["format"] = format;
        return j;
    }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, std::string>> notes;
};

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

Json cell_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d;
    }
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    return std::get<std::string>(c);
}

void write_csv(std::ostream& os, const Manifest& m, const Table& t) {
    os << "# command: " << m.command << '\n';
    os << "# config: " << m.config.dump() << '\n';
    os << "# engine: " << m.engine << '\n';
    os << "# seed: " << m.seed << '\n';
    os << "# output_path: " << m.output_path << '\n';
    os << "# format: " << m.format << '\n';
    for (const auto& [k, v] : t.notes) os << "# " << k << ": " << v << '\n';
    for (const auto& w : t.warnings) os << "# warning: " << w << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const Manifest& m, const Table& t) {
    Json j;
    j["manifest"] = m.to_json();
    Json notes = Json::object();
    for (const auto& [k, v] : t.notes) notes[k] = v;
    j["notes"] = std::move(notes);
    j["warnings"] = t.warnings;
    j["columns"] = t.columns;
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json r = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << '\n';
}

std::string resolve_output(const std::string& output, const std::string& command,
                           const std::string& format) {
    if (!output.empty()) return output;
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
        return (std::filesystem::path(dir) / (command + "." + format)).string();
    }
    return {};
}

int emit(const Manifest& m, const Table& t, std::ostream& out, std::ostream& err) {
    if (m.output_path.empty()) {
        m.format == "json" ? write_json(out, m, t) : write_csv(out, m, t);
        return kExitOk;
    }
    std::ofstream f(m.output_path, std::ios::binary | std::ios::trunc);
    if (!f) {
        err << "error: cannot open output file '" << m.output_path << "'\n";
        return kExitFailure;
    }
    m.format == "json" ? write_json(f, m, t) : write_csv(f, m, t);
    return f.good() ? kExitOk : kExitFailure;
}

// ---------- common options ----------

struct CommonOptions {
    std::string output;
    std::string format = "csv";
    std::uint64_t seed = 0;
};

void add_common(CLI::App* app, CommonOptions& c) {
    app->add_option("-o,--output", c.output, "Output file (default: stdout or $AMPCOH_OUTPUT_DIR)");
    app->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--seed", c.seed, "Seed for random inputs (recorded in every output)");
}

Manifest make_manifest(const std::string& command, const CommonOptions& c) {
    Manifest m;
    m.command = command;
    m.format = c.format;
    m.seed = c.seed;
    m.output_path = resolve_output(c.output, command, c.format);
    return m;
}

// ---------- scenario ----------

struct ScenarioOptions {
    CommonOptions common;
    std::string kind = "inconsistent";
    std::size_t n = 16;
    std::size_t m = 2;
    double m_eta = 0.0;
    double alpha = 0.72;
    double theta = 0.5;
    std::size_t t_max = 40;
};

int cmd_scenario(const ScenarioOptions& o, std::ostream& out, std::ostream& err) {
    ScenarioSpec spec;
    spec.kind = scenario_kind_from_string(o.kind);
    spec.n = o.n;
    spec.m = o.m;
    spec.m_eta = o.m_eta;
    spec.alpha = o.alpha;
    spec.theta = o.theta;
    spec.t_max = o.t_max;
    const ScenarioCurve curve = scenario_curve(spec);  // validates

    Manifest man = make_manifest("scenario", o.common);
    man.engine = "analytic";
    man.config["kind"] = to_string(spec.kind);
    man.config["n"] = spec.n;
    man.config["m"] = spec.m;
    if (spec.kind == ScenarioKind::Consistent) man.config["m_eta"] = spec.m_eta;
    if (spec.kind == ScenarioKind::Inconsistent) man.config["alpha"] = spec.alpha;
    if (spec.kind == ScenarioKind::MixedFixedPoint) man.config["theta"] = spec.theta;
    man.config["t_max"] = spec.t_max;

    Table t;
    t.columns = {"t",        "p_suc",          "c1",           "c1_lower",        "c1_upper",
                 "cg",       "cg_lower",       "cg_upper",     "c1_slack_lower",  "c1_slack_upper",
                 "cg_slack_lower", "cg_slack_upper", "omega_branch"};
    for (std::size_t i = 0; i < curve.size(); ++i) {
        t.rows.push_back({static_cast<std::int64_t>(curve.t[i]), curve.p_suc[i], curve.c1[i],
                          curve.c1_lower[i], curve.c1_upper[i], curve.cg[i], curve.cg_lower[i],
                          curve.cg_upper[i], curve.c1[i] - curve.c1_lower[i],
                          curve.c1_upper[i] - curve.c1[i], curve.cg[i] - curve.cg_lower[i],
                          curve.cg_upper[i] - curve.cg[i],
                          std::string(to_string(curve.omega_branch[i]))});
    }
    if (curve.optimal_times) {
        const auto& ot = *curve.optimal_times;
        t.notes.emplace_back("optimal_times", "floor=" + std::to_string(ot.floor_time) +
                                                  " ceil=" + std::to_string(ot.ceil_time) +
                                                  " best=" + std::to_string(ot.best));
    }
    return emit(man, t, out, err);
}

// ---------- simulate ----------

struct SimulateOptions {
    CommonOptions common;
    std::size_t n = 0;
    std::size_t qubits = 0;
    std::string marked = "0";
    double beta = M_PI;
    double gamma = M_PI;
    std::string eta_file;
    std::string initial_file;
    bool random_eta = false;
    bool random_initial = false;
    std::string engine = "direct";
    std::size_t t_max = 20;
    bool with_cg = false;
    double theta = -1.0;
};

std::vector<std::size_t> parse_index_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(item, &pos);
            if (pos != item.size() || v < 0) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError("invalid index '" + item + "'");
        }
    }
    return out;
}

PureState read_state_file(const std::string& path, std::size_t n) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open amplitude file '" + path + "'");
    std::vector<Complex> amps;
    std::string line;
    while (std::getline(f, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        double re = 0.0;
        double im = 0.0;
        if (!(ls >> re >> im)) throw UsageError("malformed amplitude line in '" + path + "': " + line);
        amps.emplace_back(re, im);
    }
    if (amps.size() != n) {
        throw UsageError("'" + path + "' holds " + std::to_string(amps.size()) +
                         " amplitudes, expected " + std::to_string(n));
    }
    CVector v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
    return PureState(std::move(v));
}

double max_amplitude_deviation(const CVector& a, const CVector& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
    if ((o.n == 0) == (o.qubits == 0)) throw UsageError("exactly one of --n and --qubits is required");
    if (o.qubits > 20) throw UsageError("--qubits must be at most 20");
    const std::size_t n = o.n ? o.n : (std::size_t{1} << o.qubits);
    if (!o.eta_file.empty() && o.random_eta) throw UsageError("--eta-file and --random-eta are exclusive");
    if (!o.initial_file.empty() && o.random_initial) {
        throw UsageError("--initial-file and --random-initial are exclusive");
    }
    const bool mixed = o.theta >= 0.0;
    if (mixed && o.theta > 1.0) throw UsageError("--theta must lie in [0, 1]");
    if (mixed && o.engine != "direct") {
        throw UsageError("mixed initial states run on the direct engine only");
    }

    MarkedSet marked(n, parse_index_list(o.marked));
    Rng rng(derive_seed(o.common.seed, 0));
    PureState eta = !o.eta_file.empty() ? read_state_file(o.eta_file, n)
                    : o.random_eta      ? random_nonzero_state(n, rng)
                                        : PureState::uniform(n);
    PureState initial = !o.initial_file.empty() ? read_state_file(o.initial_file, n)
                        : o.random_initial      ? random_nonzero_state(n, rng)
                                                : PureState::uniform(n);
    const GroverConfig cfg{marked, o.beta, o.gamma, eta, initial};
    cfg.validate();

    Manifest man = make_manifest("simulate", o.common);
    man.engine = o.engine;
    man.config["n"] = n;
    man.config["marked"] = marked.marked();
    man.config["beta"] = o.beta;
    man.config["gamma"] = o.gamma;
    man.config["eta"] = !o.eta_file.empty() ? o.eta_file : o.random_eta ? "random" : "uniform";
    man.config["initial"] = mixed                     ? "fixed-point"
                            : !o.initial_file.empty() ? o.initial_file
                            : o.random_initial        ? "random"
                                                      : "uniform";
    if (mixed) man.config["theta"] = o.theta;
    man.config["t_max"] = o.t_max;
    man.config["with_cg"] = o.with_cg;

    Table t;
    if (marked.exceeds_half()) {
        t.warnings.push_back("M > N/2 lies outside the standing assumption 1 <= M <= N/2");
        err << "warning: " << t.warnings.back() << '\n';
    }

    if (mixed) {
        if (marked.marked() != MarkedSet::first(n, marked.count()).marked()) {
            throw UsageError("--theta requires the marked set {0..M-1}");
        }
        ObservableFlags flags;
        flags.cg = o.with_cg;
        const auto traj = run_density(fixed_point_state(n, marked.count(), o.theta), cfg, o.t_max, flags);
        t.columns = {"t", "p_suc", "c1", "cl1"};
        if (o.with_cg) t.columns.push_back("cg");
        for (const auto& p : traj) {
            std::vector<Cell> row{static_cast<std::int64_t>(p.t), p.p_suc, *p.c1, *p.cl1};
            if (o.with_cg) row.emplace_back(*p.cg);
            t.rows.push_back(std::move(row));
        }
        return emit(man, t, out, err);
    }

    const bool want_direct = o.engine == "direct" || o.engine == "both";
    bool want_closed = o.engine == "closed-form" || o.engine == "both";
    std::optional<ClosedFormSolution> sol;
    if (want_closed) {
        try {
            sol = solve(cfg);
        } catch (const ClosedFormUnavailable& e) {
            if (o.engine != "both") throw;
            want_closed = false;
            t.warnings.push_back(std::string("closed form unavailable, using direct engine only: ") + e.what());
            err << "warning: " << t.warnings.back() << '\n';
        }
    }

    std::vector<TrajectoryPoint> direct;
    if (want_direct) direct = run_pure(cfg, o.t_max);

    t.columns = {"t", "p_suc", "c1", "cl1", "cg"};
    if (o.engine == "both") t.columns.push_back("max_deviation");
    for (std::size_t step = 0; step <= o.t_max; ++step) {
        std::vector<Cell> row;
        if (want_direct) {
            const auto& p = direct[step];
            row = {static_cast<std::int64_t>(step), p.p_suc, *p.c1, *p.cl1, *p.cg};
        } else {
            const PureState s(state_vector_at(*sol, step));
            row = {static_cast<std::int64_t>(step), success_probability(s, cfg.marked),
                   relative_entropy_of_coherence(s), l1_coherence(s), geometric_coherence_pure(s)};
        }
        if (o.engine == "both") {
            const double dev =
                want_closed ? max_amplitude_deviation(std::get<PureState>(direct[step].state).amplitudes(),
                                                      state_vector_at(*sol, step))
                            : std::numeric_limits<double>::quiet_NaN();
            row.emplace_back(dev);
        }
        t.rows.push_back(std::move(row));
    }
    return emit(man, t, out, err);
}

// ---------- bounds-sweep ----------

struct SweepOptions {
    CommonOptions common;
    long long trials = 500;
    std::string dims = "4,8,16";
    unsigned jobs = 0;
};

struct TrialResult {
    std::size_t n = 0;
    double prop1_lower = 0.0;
    double prop1_upper = 0.0;
    double prop2_lower_binary = 0.0;
    double prop2_lower_omega = 0.0;
    double prop2_upper = 0.0;
    double fidelity = 0.0;
};

constexpr std::size_t kNumChecks = 6;
constexpr const char* kCheckNames[kNumChecks] = {"prop1_lower",        "prop1_upper",
                                                  "prop2_lower_binary", "prop2_lower_omega",
                                                  "prop2_upper",        "fidelity_success"};

double check_value(const TrialResult& r, std::size_t k) {
    switch (k) {
        case 0: return r.prop1_lower;
        case 1: return r.prop1_upper;
        case 2: return r.prop2_lower_binary;
        case 3: return r.prop2_lower_omega;
        case 4: return r.prop2_upper;
        default: return r.fidelity;
    }
}

TrialResult run_trial(bool mixed, std::size_t index, std::uint64_t seed,
                      const std::vector<std::size_t>& dims) {
    Rng rng(derive_seed(seed, 2 * index + (mixed ? 1 : 0)));
    const std::size_t n = dims[index % dims.size()];
    const MarkedSet marked = random_marked_set(n, rng);
    // Every fifth trial is an adversarial near-incoherent state.
    const bool adversarial = index % 5 == 4;
    TrialResult r;
    r.n = n;
    if (!mixed) {
        PureState psi = random_pure_state(n, rng);
        if (adversarial) {
            CVector v = 1e-3 * psi.amplitudes();
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            v(static_cast<Eigen::Index>(pick(rng))) += 1.0;
            psi = PureState::normalized(std::move(v));
        }
        const BoundReport p1 = prop1_bounds(psi, marked);
        const BoundReport p2 = prop2_bounds(psi, marked);
        r.prop1_lower = p1.slack_lower;
        r.prop1_upper = p1.slack_upper;
        r.prop2_lower_binary = p2.value - p2.lower_binary;
        r.prop2_lower_omega = p2.value - p2.lower_omega;
        r.prop2_upper = p2.slack_upper;
        r.fidelity = fidelity_success_bound(psi, marked).slack;
        return r;
    }
    std::uniform_int_distribution<std::size_t> rank_dist(1, n);
    const DensityMatrix rho = adversarial ? random_near_diagonal(n, 1e-3, rng)
                                          : random_density_matrix(n, rank_dist(rng), rng);
    const GeometricCoherenceResult cg = geometric_coherence_mixed(rho);
    const BoundReport p1 = prop1_bounds(rho, marked, cg.value);
    const BoundReport p2 = prop2_bounds(rho, marked);
    r.prop1_lower = p1.slack_lower;
    r.prop1_upper = p1.slack_upper;
    r.prop2_lower_binary = p2.value - p2.lower_binary;
    r.prop2_lower_omega = p2.value - p2.lower_omega;
    r.prop2_upper = p2.slack_upper;
    r.fidelity = fidelity_success_bound(rho, marked, cg.max_fidelity).slack;
    return r;
}

int cmd_bounds_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
    if (o.trials <= 0) throw UsageError("--trials must be positive");
    const std::vector<std::size_t> dims = parse_index_list(o.dims);
    if (dims.empty()) throw UsageError("--dims must list at least one dimension");
    for (auto d : dims) {
        if (d < 2 || d > 256) throw UsageError("every dimension in --dims must lie in [2, 256]");
    }
    const auto trials = static_cast<std::size_t>(o.trials);

    // Each trial writes only its own slot; results are merged by index.
    std::vector<TrialResult> results(2 * trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < results.size(); i = next++) {
            results[i] = run_trial(i >= trials, i % trials, o.common.seed, dims);
        }
    };
    const unsigned jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    Manifest man = make_manifest("bounds-sweep", o.common);
    man.config["trials"] = trials;
    man.config["dims"] = dims;
    man.config["tolerance"] = kSweepTolerance;

    Table t;
    t.columns = {"check", "state", "trials", "min_slack", "worst_trial", "worst_n", "pass"};
    bool all_pass = true;
    for (int kind = 0; kind < 2; ++kind) {
        for (std::size_t k = 0; k < kNumChecks; ++k) {
            double min_slack = std::numeric_limits<double>::infinity();
            std::size_t worst = 0;
            for (std::size_t i = 0; i < trials; ++i) {
                const double s = check_value(results[kind * trials + i], k);
                if (s < min_slack) {
                    min_slack = s;
                    worst = i;
                }
            }
            const bool pass = min_slack >= kSweepTolerance;
            all_pass = all_pass && pass;
            t.rows.push_back({std::string(kCheckNames[k]), std::string(kind ? "mixed" : "pure"),
                              static_cast<std::int64_t>(trials), min_slack,
                              static_cast<std::int64_t>(worst),
                              static_cast<std::int64_t>(results[kind * trials + worst].n),
                              std::string(pass ? "true" : "false")});
        }
    }
    const int rc = emit(man, t, out, err);
    if (rc != kExitOk) return rc;
    if (!all_pass) {
        err << "bounds-sweep: at least one bound violated beyond " << kSweepTolerance << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized amplitude amplification and coherence trade-offs"};
    app.name(args.empty() ? "ampcoh" : args.front());
    app.require_subcommand(1);

    ScenarioOptions sc;
    auto* scenario = app.add_subcommand("scenario", "Analytic scenario curves with bounds");
    add_common(scenario, sc.common);
    scenario->add_option("--kind", sc.kind, "original | consistent | inconsistent | mixed");
    scenario->add_option("--n", sc.n, "Search-space size N");
    scenario->add_option("--m", sc.m, "Number of marked items M");
    scenario->add_option("--m-eta", sc.m_eta, "M_eta of the consistent family");
    scenario->add_option("--alpha", sc.alpha, "alpha of the inconsistent family");
    scenario->add_option("--theta", sc.theta, "theta of the mixed fixed-point family");
    scenario->add_option("--t-max", sc.t_max, "Last iteration");

    SimulateOptions si;
    auto* simulate = app.add_subcommand("simulate", "Run a configuration through an engine");
    add_common(simulate, si.common);
    simulate->add_option("--n", si.n, "Dimension N");
    simulate->add_option("--qubits", si.qubits, "Qubit count n (N = 2^n)");
    simulate->add_option("--marked", si.marked, "Comma-separated marked indices");
    simulate->add_option("--beta", si.beta, "Phase beta (radians)");
    simulate->add_option("--gamma", si.gamma, "Phase gamma (radians)");
    simulate->add_option("--eta-file", si.eta_file, "|eta> amplitudes, one 're im' per line");
    simulate->add_option("--initial-file", si.initial_file, "Initial amplitudes, one 're im' per line");
    simulate->add_flag("--random-eta", si.random_eta, "Draw |eta> from --seed");
    simulate->add_flag("--random-initial", si.random_initial, "Draw the initial state from --seed");
    simulate->add_option("--engine", si.engine, "direct | closed-form | both")
        ->transform(CLI::Transformer({{"closed_form", "closed-form"}}))
        ->check(CLI::IsMember({"direct", "closed-form", "both"}));
    simulate->add_option("--t-max", si.t_max, "Last iteration");
    simulate->add_option("--theta", si.theta, "Start from the mixed fixed-point state rho(theta)");
    simulate->add_flag("--with-cg", si.with_cg, "Compute mixed-state geometric coherence");

    SweepOptions sw;
    auto* sweep = app.add_subcommand("bounds-sweep", "Check the coherence bounds on random states");
    add_common(sweep, sw.common);
    sweep->add_option("--trials", sw.trials, "Random pure and random mixed states, each");
    sweep->add_option("--dims", sw.dims, "Comma-separated dimensions");
    sweep->add_option("--jobs", sw.jobs, "Worker threads (0 = hardware concurrency)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }

    try {
        if (*scenario) return cmd_scenario(sc, out, err);
        if (*simulate) return cmd_simulate(si, out, err);
        return cmd_bounds_sweep(sw, out, err);
    } catch (const ClosedFormUnavailable& e) {
        err << "error: " << e.what() << '\n';
        return kExitClosedForm;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const InvalidScenario& e) {
        err << "error: invalid scenario: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace ampcoh::cli
