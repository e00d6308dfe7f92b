#include "tc/experiment.hpp"

#include "tc/errors.hpp"
#include "tc/measures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace tc::experiments {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

int worker_count() {
    if (const char* env = std::getenv("TC_ENTANGLE_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Each index writes only its own output slot, so results do not depend on the
// worker count or the partitioning.
template <typename Fn>
void parallel_for_index(std::size_t n, Fn&& fn) {
    const int workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = static_cast<std::size_t>(w); i < n;
                     i += static_cast<std::size_t>(workers)) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double parse_number(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config field '" + key + "' is not a number: '" + text + "'");
    }
}

std::vector<int> parse_int_list(const std::string& key, const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const double v = parse_number(key, item);
        if (v < 1 || v != std::floor(v)) {
            throw ConfigError("config field '" + key + "' must list positive integers");
        }
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw ConfigError("config field '" + key + "' is empty");
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return {};
    return s.substr(a, b - a + 1);
}

std::size_t grid_count(double maxv, double step) {
    return static_cast<std::size_t>(std::floor(maxv / step + 0.5)) + 1;
}

} // namespace

std::vector<double> GridSpec::points() const {
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = start + static_cast<double>(i) * step;
        if (v > stop + 0.5 * step) break;
        out.push_back(v);
    }
    return out;
}

GridSpec GridSpec::parse(const std::string& text) {
    GridSpec g;
    const auto p1 = text.find(':');
    const auto p2 = text.rfind(':');
    if (p1 == std::string::npos || p2 == p1) {
        throw ConfigError("grid spec must be start:step:stop, got '" + text + "'");
    }
    g.start = parse_number("grid start", text.substr(0, p1));
    g.step = parse_number("grid step", text.substr(p1 + 1, p2 - p1 - 1));
    g.stop = parse_number("grid stop", text.substr(p2 + 1));
    if (!(g.step > 0.0) || g.stop < g.start) {
        throw ConfigError("grid spec must have step > 0 and stop >= start: '" + text + "'");
    }
    return g;
}

const std::vector<ExperimentInfo>& registry() {
    static const std::vector<ExperimentInfo> reg = {
        {"two-qubit-series", "concurrence of one two-qubit case family over a gt grid",
         {"gt", "concurrence"},
         {"case", "theta"},
         {"gt_max", "gt_step"}},
        {"two-qubit-surface", "concurrence over a (theta, gt) grid for one case family",
         {"theta", "gt", "concurrence"},
         {"case", "theta_grid"},
         {"gt_max", "gt_step"}},
        {"two-qubit-maxc",
         "per-theta maximum concurrence and the single-qubit coherence of |theta>",
         {"theta", "coherence", "gt_star", "c_max"},
         {"case", "theta_grid"},
         {"gt_max", "gt_step"}},
        {"snapshot", "density-matrix entries of one case family at one (theta, gt)",
         {"row", "col", "re", "im"},
         {"case", "theta", "gt"},
         {}},
        {"multi-moments", "collective moment series for N identical qubits",
         {"gt", "jz_over_n", "jz2_over_n2", "re_jp", "im_jp", "re_jpjz", "im_jpjz", "re_jp2",
          "im_jp2"},
         {"n_qubits", "theta_tilde"},
         {"t_max", "t_step", "weight_cutoff", "memory_budget"}},
        {"multi-maxc", "maximum pairwise concurrence over a (N, theta_tilde) grid",
         {"n_qubits", "theta_tilde", "t_star", "c_max"},
         {"n_qubits", "theta_tilde_grid"},
         {"t_max", "t_step", "weight_cutoff", "memory_budget"}},
    };
    return reg;
}

namespace {

const ExperimentInfo& find_experiment(const std::string& name) {
    for (const auto& e : registry()) {
        if (e.name == name) return e;
    }
    throw ConfigError("unknown experiment '" + name + "'; run the list command");
}

} // namespace

Config Config::parse_string(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              " is not a key=value pair");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              " has an empty key or value");
        }
        if (kv.count(key)) {
            throw ConfigError("config field '" + key + "' appears twice");
        }
        kv[key] = value;
    }

    auto take = [&kv](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    Config c;
    if (auto v = take("experiment")) {
        c.experiment = *v;
    } else {
        throw ConfigError("config field 'experiment' is required");
    }
    const ExperimentInfo& info = find_experiment(c.experiment);

    if (auto v = take("output_dir")) {
        c.output_dir = *v;
    } else {
        throw ConfigError("config field 'output_dir' is required");
    }
    if (auto v = take("case")) c.case_name = *v;
    if (auto v = take("theta")) c.theta = parse_number("theta", *v);
    if (auto v = take("theta_grid")) c.theta_grid = GridSpec::parse(*v);
    if (auto v = take("gt")) c.gt = parse_number("gt", *v);
    if (auto v = take("gt_max")) c.gt_max = parse_number("gt_max", *v);
    if (auto v = take("gt_step")) c.gt_step = parse_number("gt_step", *v);
    if (auto v = take("n_qubits")) c.n_qubits = parse_int_list("n_qubits", *v);
    if (auto v = take("theta_tilde")) c.theta_tilde = parse_number("theta_tilde", *v);
    if (auto v = take("theta_tilde_grid")) c.theta_tilde_grid = GridSpec::parse(*v);
    if (auto v = take("t_max")) c.t_max = parse_number("t_max", *v);
    if (auto v = take("t_step")) c.t_step = parse_number("t_step", *v);
    if (auto v = take("weight_cutoff")) c.weight_cutoff = parse_number("weight_cutoff", *v);
    if (auto v = take("memory_budget")) {
        const double b = parse_number("memory_budget", *v);
        if (b < 1 || b != std::floor(b)) {
            throw ConfigError("config field 'memory_budget' must be a positive byte count");
        }
        c.memory_budget = static_cast<std::size_t>(b);
    }
    if (!kv.empty()) {
        throw ConfigError("unknown config field '" + kv.begin()->first + "' for experiment '" +
                          c.experiment + "'");
    }

    // required-key presence
    auto has_key = [&c](const std::string& key) {
        if (key == "case") return c.case_name.has_value();
        if (key == "theta") return c.theta.has_value();
        if (key == "theta_grid") return c.theta_grid.has_value();
        if (key == "gt") return c.gt.has_value();
        if (key == "n_qubits") return c.n_qubits.has_value();
        if (key == "theta_tilde") return c.theta_tilde.has_value();
        if (key == "theta_tilde_grid") return c.theta_tilde_grid.has_value();
        return false;
    };
    for (const auto& key : info.required_keys) {
        if (!has_key(key)) {
            throw ConfigError("config field '" + key + "' is required for experiment '" +
                              c.experiment + "'");
        }
    }
    auto allowed = [&info](const std::string& key) {
        if (key == "experiment" || key == "output_dir") return true;
        const auto in = [&key](const std::vector<std::string>& v) {
            return std::find(v.begin(), v.end(), key) != v.end();
        };
        return in(info.required_keys) || in(info.optional_keys);
    };
    const char* all_keys[] = {"case", "theta", "theta_grid", "gt", "gt_max", "gt_step",
                              "n_qubits", "theta_tilde", "theta_tilde_grid", "t_max",
                              "t_step", "weight_cutoff", "memory_budget"};
    for (const char* key : all_keys) {
        if (has_key(key) && !allowed(key)) {
            throw ConfigError("config field '" + std::string(key) +
                              "' is not accepted by experiment '" + c.experiment + "'");
        }
        // optional numeric fields that has_key does not cover
    }
    auto present_numeric = [&c](const std::string& key) {
        if (key == "gt_max") return c.gt_max.has_value();
        if (key == "gt_step") return c.gt_step.has_value();
        if (key == "t_max") return c.t_max.has_value();
        if (key == "t_step") return c.t_step.has_value();
        if (key == "weight_cutoff") return c.weight_cutoff.has_value();
        if (key == "memory_budget") return c.memory_budget.has_value();
        return false;
    };
    for (const char* key : {"gt_max", "gt_step", "t_max", "t_step", "weight_cutoff",
                            "memory_budget"}) {
        if (present_numeric(key) && !allowed(key)) {
            throw ConfigError("config field '" + std::string(key) +
                              "' is not accepted by experiment '" + c.experiment + "'");
        }
    }

    // positivity / range validation
    if (c.gt_max && !(*c.gt_max > 0.0)) throw ConfigError("config field 'gt_max' must be > 0");
    if (c.gt_step && !(*c.gt_step > 0.0)) throw ConfigError("config field 'gt_step' must be > 0");
    if (c.t_max && !(*c.t_max > 0.0)) throw ConfigError("config field 't_max' must be > 0");
    if (c.t_step && !(*c.t_step > 0.0)) throw ConfigError("config field 't_step' must be > 0");
    if (c.gt && !(*c.gt >= 0.0)) throw ConfigError("config field 'gt' must be >= 0");
    if (c.weight_cutoff && !(*c.weight_cutoff >= 0.0 && *c.weight_cutoff < 1.0)) {
        throw ConfigError("config field 'weight_cutoff' must lie in [0, 1)");
    }
    if (c.case_name) parse_two_qubit_case(*c.case_name);  // rejects unknown names
    return c;
}

Config Config::parse_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

namespace {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_table_csv(const fs::path& path, const Table& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path.string() + "'");
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out << ',';
        out << t.columns[i];
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

void write_plot_script(const fs::path& path, const std::string& csv_name,
                       const std::string& experiment, const Table& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path.string() + "'");
    out << "# gnuplot script for " << experiment << "\n";
    out << "set datafile separator ','\n";
    out << "set key autotitle columnhead\n";
    if (experiment == "two-qubit-series") {
        out << "set xlabel 'gt'\nset ylabel 'concurrence'\n";
        out << "plot '" << csv_name << "' using 1:2 with lines\n";
    } else if (experiment == "two-qubit-surface") {
        out << "set xlabel 'theta'\nset ylabel 'gt'\nset view map\n";
        out << "splot '" << csv_name << "' using 1:2:3 with points pt 5 ps 0.4 palette\n";
    } else if (experiment == "two-qubit-maxc") {
        out << "set xlabel 'theta'\nset ylabel 'max concurrence'\n";
        out << "plot '" << csv_name << "' using 1:4 with lines, '' using 1:2 with lines\n";
    } else if (experiment == "snapshot") {
        out << "set xlabel 'row'\nset ylabel 'col'\nset view map\n";
        out << "splot '" << csv_name << "' using 1:2:3 with points pt 5 ps 6 palette\n";
    } else if (experiment == "multi-moments") {
        out << "set xlabel 'gt'\n";
        out << "plot '" << csv_name << "' using 1:2 with lines, '' using 1:3 with lines\n";
    } else if (experiment == "multi-maxc") {
        out << "set xlabel 'theta_tilde'\nset ylabel 'max concurrence'\n";
        std::set<int> ns;
        for (const auto& row : t.rows) ns.insert(static_cast<int>(row[0]));
        out << "plot ";
        bool first = true;
        for (int n : ns) {
            if (!first) out << ", ";
            first = false;
            out << "'" << csv_name << "' using ($1==" << n
                << "?$2:1/0):4 with lines title 'N=" << n << "'";
        }
        out << "\n";
    }
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

double default_gt_max(const Config& c) {
    if (c.gt_max) return *c.gt_max;
    return parse_two_qubit_case(*c.case_name) == TwoQubitCase::identical_pair ? 300.0 : 50.0;
}

Table run_two_qubit_series(const Config& c) {
    const TwoQubitCase kase = parse_two_qubit_case(*c.case_name);
    const double gt_max = default_gt_max(c);
    const double gt_step = c.gt_step.value_or(0.01);
    const std::size_t n = grid_count(gt_max, gt_step);
    Table t;
    t.columns = {"gt", "concurrence"};
    t.rows.resize(n);
    parallel_for_index(n, [&](std::size_t i) {
        const double gt = static_cast<double>(i) * gt_step;
        t.rows[i] = {gt, concurrence(reduced_density_case(kase, *c.theta, gt))};
    });
    return t;
}

Table run_two_qubit_surface(const Config& c) {
    const TwoQubitCase kase = parse_two_qubit_case(*c.case_name);
    const std::vector<double> thetas = c.theta_grid->points();
    const double gt_max = default_gt_max(c);
    const double gt_step = c.gt_step.value_or(0.01);
    const std::size_t ngt = grid_count(gt_max, gt_step);
    Table t;
    t.columns = {"theta", "gt", "concurrence"};
    t.rows.resize(thetas.size() * ngt);
    parallel_for_index(thetas.size(), [&](std::size_t a) {
        for (std::size_t j = 0; j < ngt; ++j) {
            const double gt = static_cast<double>(j) * gt_step;
            t.rows[a * ngt + j] = {thetas[a], gt,
                                   concurrence(reduced_density_case(kase, thetas[a], gt))};
        }
    });
    return t;
}

Table run_two_qubit_maxc(const Config& c) {
    const TwoQubitCase kase = parse_two_qubit_case(*c.case_name);
    const std::vector<double> thetas = c.theta_grid->points();
    const double gt_max = default_gt_max(c);
    const double gt_step = c.gt_step.value_or(0.01);
    const std::size_t ngt = grid_count(gt_max, gt_step);
    Table t;
    t.columns = {"theta", "coherence", "gt_star", "c_max"};
    t.rows.resize(thetas.size());
    parallel_for_index(thetas.size(), [&](std::size_t a) {
        const double theta = thetas[a];
        double best_c = -1.0, best_gt = 0.0;
        for (std::size_t j = 0; j < ngt; ++j) {
            const double gt = static_cast<double>(j) * gt_step;
            const double cc = concurrence(reduced_density_case(kase, theta, gt));
            if (cc > best_c) {
                best_c = cc;
                best_gt = gt;
            }
        }
        Eigen::Matrix2cd single;
        const double ct = std::cos(theta), st = std::sin(theta);
        single << ct * ct, ct * st, st * ct, st * st;
        const double coh = l1_coherence(DensityMatrix::trusted(single));
        t.rows[a] = {theta, coh, best_gt, best_c};
    });
    return t;
}

Table run_snapshot(const Config& c) {
    const TwoQubitCase kase = parse_two_qubit_case(*c.case_name);
    const DensityMatrix rho = reduced_density_case(kase, *c.theta, *c.gt);
    Table t;
    t.columns = {"row", "col", "re", "im"};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            t.rows.push_back({static_cast<double>(i), static_cast<double>(j),
                              rho(i, j).real(), rho(i, j).imag()});
        }
    }
    return t;
}

Table run_multi_moments(const Config& c) {
    if (c.n_qubits->size() != 1) {
        throw ConfigError("multi-moments takes a single n_qubits value");
    }
    const int N = c.n_qubits->front();
    const double t_max = c.t_max.value_or(20.0);
    const double t_step = c.t_step.value_or(0.1);
    const double cutoff = c.weight_cutoff.value_or(1e-10);
    const std::size_t budget = c.memory_budget.value_or(std::size_t{1} << 30);
    const SpinCoherentExpansion exp = dicke_coefficients(N, *c.theta_tilde);
    const auto ms = moments_series(exp, t_max, t_step, cutoff, budget);
    Table t;
    t.columns = {"gt", "jz_over_n", "jz2_over_n2", "re_jp", "im_jp", "re_jpjz", "im_jpjz",
                 "re_jp2", "im_jp2"};
    t.rows.reserve(ms.size());
    for (const auto& m : ms) {
        t.rows.push_back({m.t, m.jz_over_n, m.jz2_over_n2, m.jp_over_n.real(),
                          m.jp_over_n.imag(), m.jpjz_anticomm.real(), m.jpjz_anticomm.imag(),
                          m.jp2_over_n2.real(), m.jp2_over_n2.imag()});
    }
    return t;
}

Table run_multi_maxc(const Config& c) {
    const std::vector<int> ns = *c.n_qubits;
    const std::vector<double> tts = c.theta_tilde_grid->points();
    const double t_max = c.t_max.value_or(50.0);
    const double t_step = c.t_step.value_or(0.05);
    const double cutoff = c.weight_cutoff.value_or(1e-10);
    const std::size_t budget = c.memory_budget.value_or(std::size_t{1} << 30);

    const std::size_t npts = grid_count(t_max, t_step);
    std::vector<double> grid(npts);
    for (std::size_t i = 0; i < npts; ++i) grid[i] = static_cast<double>(i) * t_step;

    Table t;
    t.columns = {"n_qubits", "theta_tilde", "t_star", "c_max"};
    t.rows.resize(ns.size() * tts.size());
    for (std::size_t a = 0; a < ns.size(); ++a) {
        const int N = ns[a];
        std::vector<SpinCoherentExpansion> exps;
        exps.reserve(tts.size());
        std::set<int> union_keep;
        for (double tt : tts) {
            exps.push_back(dicke_coefficients(N, tt));
            for (int k : retained_excited_counts(exps.back(), cutoff)) union_keep.insert(k);
        }
        // Kernel rows depend on (N, M, t) only, so the whole theta_tilde sweep
        // shares one table.
        MomentKernelTable table(N, grid, budget);
        table.ensure(std::vector<int>(union_keep.begin(), union_keep.end()));
        parallel_for_index(tts.size(), [&](std::size_t b) {
            const PairwiseMaxPoint p = pairwise_max_concurrence(table, exps[b], cutoff);
            t.rows[a * tts.size() + b] = {static_cast<double>(N), tts[b], p.t_star, p.c_max};
        });
    }
    return t;
}

} // namespace

std::vector<fs::path> run_experiment(const Config& c) {
    find_experiment(c.experiment);  // validates the name
    Table table;
    if (c.experiment == "two-qubit-series") table = run_two_qubit_series(c);
    else if (c.experiment == "two-qubit-surface") table = run_two_qubit_surface(c);
    else if (c.experiment == "two-qubit-maxc") table = run_two_qubit_maxc(c);
    else if (c.experiment == "snapshot") table = run_snapshot(c);
    else if (c.experiment == "multi-moments") table = run_multi_moments(c);
    else if (c.experiment == "multi-maxc") table = run_multi_maxc(c);

    fs::create_directories(c.output_dir);
    const fs::path csv = c.output_dir / (c.experiment + ".csv");
    const fs::path gp = c.output_dir / (c.experiment + ".gp");
    write_table_csv(csv, table);
    write_plot_script(gp, c.experiment + ".csv", c.experiment, table);
    return {csv, gp};
}

int verify(bool verbose, std::ostream& out, const fs::path& report_path,
           const CrossCheckOptions& options) {
    const CheckReport report = cross_check_report(options);

    out << std::left << std::setw(42) << "check" << std::setw(14) << "max_abs_dev"
        << std::setw(14) << "tolerance" << "status\n";
    for (const auto& c : report.checks) {
        std::ostringstream dev, tol;
        dev << std::scientific << std::setprecision(3) << c.max_abs_deviation;
        tol << (c.must_exceed ? ">" : "<=") << std::scientific << std::setprecision(1)
            << c.tolerance;
        out << std::left << std::setw(42) << c.name << std::setw(14) << dev.str()
            << std::setw(14) << tol.str() << (c.pass ? "PASS" : "FAIL") << "\n";
        if (verbose && !c.note.empty()) {
            out << "    " << c.note << "\n";
        }
    }
    out << (report.all_pass() ? "all checks passed\n" : "some checks FAILED\n");

    if (!report_path.empty()) {
        if (report_path.has_parent_path()) fs::create_directories(report_path.parent_path());
        std::ofstream rep(report_path, std::ios::binary);
        if (!rep) throw Error("cannot open report file '" + report_path.string() + "'");
        rep << "name,max_abs_deviation,tolerance,status\n";
        for (const auto& c : report.checks) {
            rep << c.name << ',' << format_double(c.max_abs_deviation) << ','
                << format_double(c.tolerance) << ',' << (c.pass ? "PASS" : "FAIL") << '\n';
        }
    }
    return report.all_pass() ? 0 : 2;
}

} // namespace tc::experiments
