#include "gqd/experiment.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "gqd/analysis.hpp"
#include "gqd/dynamics.hpp"
#include "gqd/hamiltonian.hpp"
#include "gqd/version.hpp"

namespace gqd {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void parallel_for(int task_count, int threads, const std::function<void(int)>& task) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
    }
    threads = std::max(1, std::min(threads, task_count));
    if (threads == 1) {
        for (int i = 0; i < task_count; ++i) {
            task(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < task_count; i = next.fetch_add(1)) {
                task(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

struct SweepPoint {
    SystemConfig system;
    InitialStateParams initial;
    double sweep_value = 0.0;
};

struct PointContext {
    SweepPoint point;
    SectorBasis basis;
    EvolutionKernel kernel;
    std::vector<double> times;
};

struct Row {
    double gqd = 0.0;
    double vne = 0.0;
    double purity = 0.0;
    Eigen::VectorXd thetas;
    Eigen::VectorXd phis;
    bool converged = false;
};

std::string describe_point(const SweepPoint& p) {
    std::ostringstream os;
    os << "N=" << p.system.n_atoms << " n=" << p.system.n_photons
       << " gamma=" << p.system.decoherence << " p=" << p.initial.mixing_prob
       << " alpha=" << p.initial.superposition_angle;
    return os.str();
}

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& config) {
    std::vector<SweepPoint> points;
    if (config.sweep_axis == SweepAxis::None) {
        points.push_back({config.system, config.initial, 0.0});
        return points;
    }
    std::vector<double> values = config.sweep_values;
    std::sort(values.begin(), values.end());
    for (const double v : values) {
        SweepPoint p{config.system, config.initial, v};
        switch (config.sweep_axis) {
        case SweepAxis::NPhotons:
            p.system.n_photons = static_cast<int>(std::llround(v));
            break;
        case SweepAxis::Alpha:
            p.initial.superposition_angle = v;
            break;
        case SweepAxis::Gamma:
            p.system.decoherence = v;
            break;
        case SweepAxis::NAtoms:
            p.system.n_atoms = static_cast<int>(std::llround(v));
            break;
        case SweepAxis::None:
            break;
        }
        points.push_back(p);
    }
    return points;
}

std::vector<double> make_times(const TimeGrid& grid, double max_gap) {
    double step = grid.step;
    if (grid.auto_step) {
        step = 0.01;
        if (max_gap > 0.0) {
            step = std::min(step, 0.2 / max_gap);
        }
    }
    std::vector<double> times;
    const double span = grid.end - grid.start;
    const auto count = static_cast<long>(std::floor(span / step + 0.5)) + 1;
    times.reserve(static_cast<std::size_t>(std::max(1L, count)));
    for (long i = 0; i < count; ++i) {
        const double t = grid.start + static_cast<double>(i) * step;
        if (t > grid.end + 0.5 * step) {
            break;
        }
        times.push_back(t);
    }
    if (times.empty()) {
        times.push_back(grid.start);
    }
    return times;
}

} // namespace

std::string to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::None: return "none";
    case SweepAxis::NPhotons: return "n_photons";
    case SweepAxis::Alpha: return "alpha";
    case SweepAxis::Gamma: return "gamma";
    case SweepAxis::NAtoms: return "n_atoms";
    }
    return "none";
}

SweepAxis sweep_axis_from_string(const std::string& text) {
    if (text == "none") return SweepAxis::None;
    if (text == "n_photons") return SweepAxis::NPhotons;
    if (text == "alpha") return SweepAxis::Alpha;
    if (text == "gamma") return SweepAxis::Gamma;
    if (text == "n_atoms") return SweepAxis::NAtoms;
    throw ConfigError("unknown sweep axis: " + text);
}

void ExperimentConfig::validate() const {
    try {
        system.validate();
        initial.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(time.end >= time.start)) {
        throw ConfigError("time grid: end must be >= start");
    }
    if (!time.auto_step && !(time.step > 0.0)) {
        throw ConfigError("time grid: step must be > 0");
    }
    if (sweep_axis != SweepAxis::None && sweep_values.empty()) {
        throw ConfigError("sweep axis set but sweep.values is empty");
    }
    for (const double v : sweep_values) {
        switch (sweep_axis) {
        case SweepAxis::NPhotons:
            if (v < 0.0 || v != std::floor(v)) {
                throw ConfigError("sweep over n_photons needs non-negative integers");
            }
            break;
        case SweepAxis::NAtoms:
            if (v < 1.0 || v > 12.0 || v != std::floor(v)) {
                throw ConfigError("sweep over n_atoms needs integers in [1,12]");
            }
            break;
        case SweepAxis::Alpha:
            if (v < 0.0 || v > kPi) {
                throw ConfigError("sweep over alpha needs values in [0,pi]");
            }
            break;
        case SweepAxis::Gamma:
            if (v < 0.0) {
                throw ConfigError("sweep over gamma needs values >= 0");
            }
            break;
        case SweepAxis::None:
            break;
        }
    }
    if (name.empty()) {
        throw ConfigError("output.name must not be empty");
    }
    if (optimizer.multistarts < 1 || optimizer.theta_grid < 1 || optimizer.phi_grid < 1 ||
        optimizer.max_evaluations < 1 || optimizer.grid_budget < 1) {
        throw ConfigError("optimizer options must be positive");
    }
}

RunSummary run_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto t_begin = std::chrono::steady_clock::now();

    // per-point pipeline: basis -> Hamiltonian -> spectrum -> kernel
    std::vector<PointContext> contexts;
    int max_atoms = 0;
    for (const SweepPoint& point : expand_sweep(config)) {
        PointContext ctx;
        ctx.point = point;
        ctx.basis = build_basis(point.system);
        const HamiltonianMatrix h = build_hamiltonian(ctx.basis, point.system);
        Spectrum spectrum;
        try {
            spectrum = eigendecompose(h);
        } catch (const std::runtime_error& e) {
            throw NumericalError(std::string(e.what()) + " at " + describe_point(point));
        }
        const DensityMatrix rho0 = initial_state(ctx.basis, point.initial);
        ctx.kernel = make_kernel(spectrum, point.system.decoherence, rho0);
        const double max_gap =
            spectrum.eigenvalues(spectrum.eigenvalues.size() - 1) - spectrum.eigenvalues(0);
        ctx.times = make_times(config.time, max_gap);
        max_atoms = std::max(max_atoms, point.system.n_atoms);
        contexts.push_back(std::move(ctx));
    }

    // flatten (point, time) into independent tasks with preassigned slots
    struct TaskRef {
        int point;
        int time_index;
    };
    std::vector<TaskRef> tasks;
    std::vector<std::vector<Row>> rows(contexts.size());
    for (std::size_t p = 0; p < contexts.size(); ++p) {
        rows[p].resize(contexts[p].times.size());
        for (std::size_t ti = 0; ti < contexts[p].times.size(); ++ti) {
            tasks.push_back({static_cast<int>(p), static_cast<int>(ti)});
        }
    }

    std::vector<std::string> task_errors(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), config.threads, [&](int task_index) {
        const TaskRef ref = tasks[static_cast<std::size_t>(task_index)];
        const PointContext& ctx = contexts[static_cast<std::size_t>(ref.point)];
        const double t = ctx.times[static_cast<std::size_t>(ref.time_index)];
        try {
            const DensityMatrix rho_t = evolve(ctx.kernel, t);
            const DensityMatrix rho_atoms = trace_out_field(rho_t, ctx.basis);
            if (!rho_atoms.entries.allFinite()) {
                throw std::runtime_error("non-finite state");
            }
            Row row;
            row.purity = purity(rho_atoms);
            row.vne = von_neumann_entropy(rho_atoms);
            const GqdResult gqd = minimize_gqd(rho_atoms, config.optimizer);
            row.gqd = gqd.value;
            row.thetas = gqd.argmin.thetas;
            row.phis = gqd.argmin.phis;
            row.converged = gqd.converged;
            if (!std::isfinite(row.gqd) || !std::isfinite(row.vne) || !std::isfinite(row.purity)) {
                throw std::runtime_error("non-finite quantifier");
            }
            rows[static_cast<std::size_t>(ref.point)][static_cast<std::size_t>(ref.time_index)] =
                std::move(row);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << e.what() << " at " << describe_point(ctx.point) << " t=" << t;
            task_errors[static_cast<std::size_t>(task_index)] = os.str();
        }
    });
    for (const std::string& err : task_errors) {
        if (!err.empty()) {
            throw NumericalError(err);
        }
    }

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + config.out_dir + ": " + ec.message());
    }
    const fs::path dir(config.out_dir);
    const std::string timeseries_path = (dir / (config.name + "_timeseries.csv")).string();
    const std::string analysis_path = (dir / (config.name + "_analysis.csv")).string();
    const std::string manifest_path = (dir / (config.name + "_meta.json")).string();

    // ---- timeseries CSV ----
    std::ofstream ts(timeseries_path, std::ios::binary);
    if (!ts) {
        throw IoError("cannot open " + timeseries_path + " for writing");
    }
    ts << "n_atoms,n_photons,p,alpha,gamma,t,gqd,vne,purity";
    for (int j = 1; j <= max_atoms; ++j) {
        ts << ",theta_" << j;
    }
    for (int j = 1; j <= max_atoms; ++j) {
        ts << ",phi_" << j;
    }
    ts << ",converged\n";
    std::size_t row_count = 0;
    for (std::size_t p = 0; p < contexts.size(); ++p) {
        const PointContext& ctx = contexts[p];
        for (std::size_t ti = 0; ti < ctx.times.size(); ++ti) {
            const Row& row = rows[p][ti];
            ts << ctx.point.system.n_atoms << ',' << ctx.point.system.n_photons << ','
               << format_double(ctx.point.initial.mixing_prob) << ','
               << format_double(ctx.point.initial.superposition_angle) << ','
               << format_double(ctx.point.system.decoherence) << ','
               << format_double(ctx.times[ti]) << ',' << format_double(row.gqd) << ','
               << format_double(row.vne) << ',' << format_double(row.purity);
            for (int j = 0; j < max_atoms; ++j) {
                ts << ',';
                if (j < row.thetas.size()) {
                    ts << format_double(row.thetas(j));
                }
            }
            for (int j = 0; j < max_atoms; ++j) {
                ts << ',';
                if (j < row.phis.size()) {
                    ts << format_double(row.phis(j));
                }
            }
            ts << ',' << (row.converged ? 1 : 0) << '\n';
            ++row_count;
        }
    }
    ts.close();
    if (!ts) {
        throw IoError("write failed for " + timeseries_path);
    }

    // ---- per-point analysis + scaling fits ----
    struct PointStats {
        std::optional<PeakSet> gqd_peaks;
        std::optional<double> m_r;
        SeriesMax d_max;
        SeriesMax e_max;
        std::optional<double> delta_t2;
        std::optional<FitResult> slope;
    };
    std::vector<PointStats> stats(contexts.size());
    for (std::size_t p = 0; p < contexts.size(); ++p) {
        TimeSeries gqd{contexts[p].times, {}, "gqd"};
        TimeSeries vne{contexts[p].times, {}, "vne"};
        for (const Row& row : rows[p]) {
            gqd.values.push_back(row.gqd);
            vne.values.push_back(row.vne);
        }
        stats[p].d_max = max_quantifier(gqd);
        stats[p].e_max = max_quantifier(vne);
        if (gqd.times.size() >= 3) {
            stats[p].gqd_peaks = find_peaks(gqd);
            const double span = gqd.times.back() - gqd.times.front();
            if (span > 0.0) {
                stats[p].m_r = revival_rate(*stats[p].gqd_peaks, span);
            }
        }
        if (gqd.times.size() >= 2) {
            try {
                stats[p].slope = slope_gqd_vs_vne(gqd, vne);
            } catch (const std::invalid_argument&) {
                // constant VNE makes the fit rank-deficient; leave the field empty
            }
        }
    }
    if (config.sweep_axis == SweepAxis::NAtoms) {
        std::optional<std::size_t> reference;
        for (std::size_t p = 0; p < contexts.size(); ++p) {
            if (contexts[p].point.system.n_atoms == 2) {
                reference = p;
                break;
            }
        }
        if (reference) {
            const auto& ref_peaks = stats[*reference].gqd_peaks;
            for (std::size_t p = 0; p < contexts.size(); ++p) {
                if (contexts[p].point.system.n_atoms <= 2) {
                    continue;
                }
                const auto& target_peaks = stats[p].gqd_peaks;
                if (ref_peaks && target_peaks && ref_peaks->count() >= 2 &&
                    target_peaks->count() >= 2) {
                    stats[p].delta_t2 = revival_shift(*ref_peaks, *target_peaks);
                }
            }
        }
    }

    std::ofstream an(analysis_path, std::ios::binary);
    if (!an) {
        throw IoError("cannot open " + analysis_path + " for writing");
    }
    an << "kind,n_atoms,n_photons,p,alpha,gamma,peak_count_gqd,m_r_gqd,d_max,t_d_max,"
          "e_max,t_e_max,delta_t2,slope_gqd_vne,intercept_gqd_vne,slope_residual_rms,"
          "fit_target,fit_c0,fit_c1,fit_c2,fit_residual_rms\n";
    for (std::size_t p = 0; p < contexts.size(); ++p) {
        const PointContext& ctx = contexts[p];
        const PointStats& st = stats[p];
        an << "point," << ctx.point.system.n_atoms << ',' << ctx.point.system.n_photons << ','
           << format_double(ctx.point.initial.mixing_prob) << ','
           << format_double(ctx.point.initial.superposition_angle) << ','
           << format_double(ctx.point.system.decoherence) << ',';
        if (st.gqd_peaks) {
            an << st.gqd_peaks->count();
        }
        an << ',';
        if (st.m_r) {
            an << format_double(*st.m_r);
        }
        an << ',' << format_double(st.d_max.value) << ',' << format_double(st.d_max.time) << ','
           << format_double(st.e_max.value) << ',' << format_double(st.e_max.time) << ',';
        if (st.delta_t2) {
            an << format_double(*st.delta_t2);
        }
        an << ',';
        if (st.slope) {
            an << format_double(st.slope->coefficients[1]) << ','
               << format_double(st.slope->coefficients[0]) << ','
               << format_double(st.slope->residual_rms);
        } else {
            an << ",,";
        }
        an << ",,,,,\n";
    }
    if (config.sweep_axis == SweepAxis::NAtoms && contexts.size() >= 3) {
        std::vector<double> ns;
        std::vector<double> d_maxes;
        std::vector<double> e_maxes;
        for (std::size_t p = 0; p < contexts.size(); ++p) {
            ns.push_back(static_cast<double>(contexts[p].point.system.n_atoms));
            d_maxes.push_back(stats[p].d_max.value);
            e_maxes.push_back(stats[p].e_max.value);
        }
        const auto emit_fit = [&](const std::string& target, const FitResult& fit) {
            an << "fit,,," << format_double(config.initial.mixing_prob) << ','
               << format_double(config.initial.superposition_angle) << ','
               << format_double(config.system.decoherence) << ",,,,,,,,,,," << target << ','
               << format_double(fit.coefficients[0]) << ',' << format_double(fit.coefficients[1])
               << ',' << format_double(fit.coefficients[2]) << ','
               << format_double(fit.residual_rms) << '\n';
        };
        emit_fit("d_max_vs_n_atoms", polyfit(ns, d_maxes, 2));
        emit_fit("e_max_vs_n_atoms", polyfit(ns, e_maxes, 2));
    }
    an.close();
    if (!an) {
        throw IoError("write failed for " + analysis_path);
    }

    const auto t_end = std::chrono::steady_clock::now();
    const double wall = std::chrono::duration<double>(t_end - t_begin).count();

    // ---- run manifest ----
    nlohmann::json meta;
    meta["name"] = config.name;
    meta["library_version"] = kVersion;
    meta["wall_time_seconds"] = wall;
    meta["rows"] = row_count;
    meta["files"] = {fs::path(timeseries_path).filename().string(),
                     fs::path(analysis_path).filename().string()};
    meta["config"] = {
        {"system",
         {{"n_atoms", config.system.n_atoms},
          {"n_photons", config.system.n_photons},
          {"coupling", config.system.coupling},
          {"atom_freq", config.system.atom_freq},
          {"field_freq", config.system.field_freq},
          {"gamma", config.system.decoherence}}},
        {"initial",
         {{"p", config.initial.mixing_prob}, {"alpha", config.initial.superposition_angle}}},
        {"time",
         {{"start", config.time.start},
          {"end", config.time.end},
          {"step", config.time.step},
          {"auto_step", config.time.auto_step}}},
        {"sweep", {{"axis", to_string(config.sweep_axis)}, {"values", config.sweep_values}}},
        {"optimizer",
         {{"multistarts", config.optimizer.multistarts},
          {"theta_grid", config.optimizer.theta_grid},
          {"phi_grid", config.optimizer.phi_grid},
          {"tolerance", config.optimizer.tolerance},
          {"max_evaluations", config.optimizer.max_evaluations},
          {"grid_budget", config.optimizer.grid_budget},
          {"symmetric_scan", config.optimizer.symmetric_scan}}},
        {"output", {{"dir", config.out_dir}, {"name", config.name}}},
        {"threads", config.threads},
    };
    std::ofstream mf(manifest_path, std::ios::binary);
    if (!mf) {
        throw IoError("cannot open " + manifest_path + " for writing");
    }
    mf << meta.dump(2) << '\n';
    mf.close();
    if (!mf) {
        throw IoError("write failed for " + manifest_path);
    }

    RunSummary summary;
    summary.timeseries_path = timeseries_path;
    summary.analysis_path = analysis_path;
    summary.manifest_path = manifest_path;
    summary.rows = row_count;
    summary.wall_seconds = wall;
    return summary;
}

// ---------------------------------------------------------------------------
// presets

namespace {

ExperimentConfig base_config() {
    ExperimentConfig c;
    c.system = SystemConfig{};
    c.initial = InitialStateParams{};
    c.time = TimeGrid{0.0, 10.0, 0.01, false};
    return c;
}

std::vector<double> alpha_grid() {
    std::vector<double> values;
    for (int i = 0; i <= 32; ++i) {
        values.push_back(kPi * static_cast<double>(i) / 32.0);
    }
    return values;
}

std::vector<double> photon_grid(int max_n) {
    std::vector<double> values;
    for (int n = 0; n <= max_n; ++n) {
        values.push_back(static_cast<double>(n));
    }
    return values;
}

std::vector<ExperimentConfig> panels_time_series(const std::string& preset, double gamma,
                                                 double alpha) {
    std::vector<ExperimentConfig> configs;
    for (const int n_atoms : {2, 5}) {
        for (const int n_photons : {0, 10}) {
            ExperimentConfig c = base_config();
            c.system.n_atoms = n_atoms;
            c.system.n_photons = n_photons;
            c.system.decoherence = gamma;
            c.initial.superposition_angle = alpha;
            c.name = preset + "_N" + std::to_string(n_atoms) + "_n" + std::to_string(n_photons);
            configs.push_back(c);
        }
    }
    return configs;
}

std::vector<ExperimentConfig> alpha_density(const std::string& preset, double gamma,
                                            int n_photons, double p) {
    std::vector<ExperimentConfig> configs;
    for (const int n_atoms : {2, 5}) {
        ExperimentConfig c = base_config();
        c.system.n_atoms = n_atoms;
        c.system.n_photons = n_photons;
        c.system.decoherence = gamma;
        c.initial.mixing_prob = p;
        c.sweep_axis = SweepAxis::Alpha;
        c.sweep_values = alpha_grid();
        c.name = preset + "_N" + std::to_string(n_atoms);
        configs.push_back(c);
    }
    return configs;
}

} // namespace

std::vector<PresetInfo> list_presets() {
    return {
        {"fig1", "GQD/VNE vs scaled time, N in {2,5}, n in {0,10}, gamma=0, p=0, alpha=0"},
        {"fig2", "alpha-sweep density data, N in {2,5}, n=0, p=0.5, gamma=0"},
        {"fig3", "d_max and m_R vs photon number n in 0..20, N in {2,5}, gamma=0, p=0, alpha=0"},
        {"fig4", "GQD/VNE vs scaled time under decoherence, N in {2,5}, n in {0,10}, "
                 "gamma=0.05, alpha=pi/4, p=0"},
        {"fig5", "revival rate m_R vs photon number n in 0..20, N=2, gamma=0, p=0, alpha=0"},
        {"fig6", "alpha-sweep density data with decoherence, N in {2,5}, n=10, p=0, gamma=0.05"},
        {"fig7", "GQD-vs-VNE slope comparison, N=2, n in {10,100}, gamma=0, p=0, alpha=0"},
        {"fig8", "revival shift Delta t_2 vs N in {2..5}, n=10, gamma=0, p=0, alpha=0"},
        {"fig9", "d_max/e_max scaling fits over N in {2..5}, n=10, gamma=0, p=0, alpha=0"},
    };
}

std::vector<ExperimentConfig> preset_configs(const std::string& name) {
    if (name == "fig1") {
        return panels_time_series("fig1", 0.0, 0.0);
    }
    if (name == "fig2") {
        return alpha_density("fig2", 0.0, 0, 0.5);
    }
    if (name == "fig3") {
        std::vector<ExperimentConfig> configs;
        for (const int n_atoms : {2, 5}) {
            ExperimentConfig c = base_config();
            c.system.n_atoms = n_atoms;
            c.sweep_axis = SweepAxis::NPhotons;
            c.sweep_values = photon_grid(20);
            c.name = "fig3_N" + std::to_string(n_atoms);
            configs.push_back(c);
        }
        return configs;
    }
    if (name == "fig4") {
        return panels_time_series("fig4", 0.05, kPi / 4.0);
    }
    if (name == "fig5") {
        ExperimentConfig c = base_config();
        c.sweep_axis = SweepAxis::NPhotons;
        c.sweep_values = photon_grid(20);
        c.name = "fig5_N2";
        return {c};
    }
    if (name == "fig6") {
        return alpha_density("fig6", 0.05, 10, 0.0);
    }
    if (name == "fig7") {
        ExperimentConfig c = base_config();
        c.sweep_axis = SweepAxis::NPhotons;
        c.sweep_values = {10.0, 100.0};
        c.time.auto_step = true;
        c.name = "fig7_N2";
        return {c};
    }
    if (name == "fig8" || name == "fig9") {
        ExperimentConfig c = base_config();
        c.system.n_photons = 10;
        c.sweep_axis = SweepAxis::NAtoms;
        c.sweep_values = {2.0, 3.0, 4.0, 5.0};
        c.name = name;
        return {c};
    }
    throw ConfigError("unknown preset: " + name);
}

// ---------------------------------------------------------------------------
// config grammar

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v)) {
        throw ConfigError("expected an integer for " + key + ": '" + value + "'");
    }
    return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("expected true/false for " + key + ": '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> values;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) {
            values.push_back(parse_double(key, t));
        }
    }
    if (values.empty()) {
        throw ConfigError("empty value list for " + key);
    }
    return values;
}

} // namespace

void apply_override(ExperimentConfig& config, const std::string& key, const std::string& value) {
    if (key == "system.n_atoms") {
        config.system.n_atoms = parse_int(key, value);
    } else if (key == "system.n_photons") {
        config.system.n_photons = parse_int(key, value);
    } else if (key == "system.coupling") {
        config.system.coupling = parse_double(key, value);
    } else if (key == "system.atom_freq") {
        config.system.atom_freq = parse_double(key, value);
    } else if (key == "system.field_freq") {
        config.system.field_freq = parse_double(key, value);
    } else if (key == "system.gamma") {
        config.system.decoherence = parse_double(key, value);
    } else if (key == "initial.p") {
        config.initial.mixing_prob = parse_double(key, value);
    } else if (key == "initial.alpha") {
        config.initial.superposition_angle = parse_double(key, value);
    } else if (key == "time.start") {
        config.time.start = parse_double(key, value);
    } else if (key == "time.end") {
        config.time.end = parse_double(key, value);
    } else if (key == "time.step") {
        if (value == "auto") {
            config.time.auto_step = true;
        } else {
            config.time.auto_step = false;
            config.time.step = parse_double(key, value);
        }
    } else if (key == "sweep.axis") {
        config.sweep_axis = sweep_axis_from_string(value);
    } else if (key == "sweep.values") {
        config.sweep_values = parse_list(key, value);
    } else if (key == "optimizer.multistarts") {
        config.optimizer.multistarts = parse_int(key, value);
    } else if (key == "optimizer.theta_grid") {
        config.optimizer.theta_grid = parse_int(key, value);
    } else if (key == "optimizer.phi_grid") {
        config.optimizer.phi_grid = parse_int(key, value);
    } else if (key == "optimizer.tolerance") {
        config.optimizer.tolerance = parse_double(key, value);
    } else if (key == "optimizer.max_evaluations") {
        config.optimizer.max_evaluations = parse_int(key, value);
    } else if (key == "optimizer.grid_budget") {
        config.optimizer.grid_budget = parse_int(key, value);
    } else if (key == "optimizer.symmetric_scan") {
        config.optimizer.symmetric_scan = parse_bool(key, value);
    } else if (key == "output.dir") {
        config.out_dir = value;
    } else if (key == "output.name") {
        config.name = value;
    } else if (key == "threads") {
        config.threads = parse_int(key, value);
    } else {
        throw ConfigError("unknown config key: " + key);
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    ExperimentConfig config;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        const std::string text = trim(line);
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_number) + ": expected key = value");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(line_number) + ": empty key or value");
        }
        apply_override(config, key, value);
    }
    return config;
}

} // namespace gqd
