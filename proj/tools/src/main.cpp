// Command-line front end: model files in, CSV/JSON/OBJ artifacts out.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apspec/lyapunov.hpp"
#include "apspec/mesh.hpp"
#include "apspec/model_file.hpp"
#include "apspec/models.hpp"
#include "apspec/spectrum.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitResolution = 3;
constexpr int kExitNumeric = 4;

struct RunConfig {
    std::string command;
    std::string model_path;
    std::vector<double> window;
    std::vector<int> levels;
    int level = -1;
    double iso = 0.0;
    std::size_t grid = 1000;
    int nmax = 20;
    std::string out_dir = ".";
    int threads = 0;  // 0 = resolve from env / hardware
    std::uint64_t seed = 0;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// FNV-1a over the canonical config string; the hex digest heads every
/// artifact so outputs can be traced back to their exact invocation.
std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string config_hash(const RunConfig& cfg) {
    std::ostringstream os;
    os << "command=" << cfg.command << ";model=" << cfg.model_path << ";window=";
    for (double w : cfg.window) os << fmt17(w) << ',';
    os << ";levels=";
    for (int l : cfg.levels) os << l << ',';
    os << ";level=" << cfg.level << ";iso=" << fmt17(cfg.iso) << ";grid=" << cfg.grid
       << ";nmax=" << cfg.nmax << ";seed=" << cfg.seed;
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
    return buf;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("APERIODIC_SPECTRUM_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, count) on a worker pool. Each result lands at its
/// own index, so output order never depends on the thread count.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    threads = std::min<int>(threads, static_cast<int>(count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

std::ofstream open_artifact(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    std::filesystem::path path = std::filesystem::path(cfg.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out << "# config-hash=" << config_hash(cfg) << "\n";
    return out;
}

aps::EnergyGrid window_grid(const RunConfig& cfg) {
    return aps::EnergyGrid::uniform(cfg.window[0], cfg.window[1], cfg.grid);
}

std::vector<int> requested_levels(const RunConfig& cfg, int fallback) {
    if (!cfg.levels.empty()) return cfg.levels;
    if (cfg.level >= 0) return {cfg.level};
    return {fallback};
}

int cmd_bands(const RunConfig& cfg, const aps::Model& model) {
    nlohmann::json summary;
    summary["config_hash"] = config_hash(cfg);
    summary["levels"] = nlohmann::json::array();

    std::vector<int> levels = requested_levels(cfg, 8);
    std::vector<aps::SpectralCover> covers(levels.size());
    std::vector<std::exception_ptr> errors(levels.size());
    parallel_for(levels.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
        try {
            covers[i] = aps::band_spectrum(model, levels[i], cfg.window[0], cfg.window[1]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (std::size_t i = 0; i < levels.size(); ++i) {
        const aps::SpectralCover& cover = covers[i];
        auto out = open_artifact(cfg, "bands_n" + std::to_string(levels[i]) + ".csv");
        out << "level,e_lo,e_hi,width,log_width,resolved,tangency,"
               "edge_residual_lo,edge_residual_hi\n";
        for (const aps::Band& b : cover.bands)
            out << b.level << ',' << fmt17(b.e_lo) << ',' << fmt17(b.e_hi) << ','
                << fmt17(b.width()) << ',' << fmt17(b.log_width) << ',' << (b.resolved ? 1 : 0)
                << ',' << (b.tangency ? 1 : 0) << ',' << fmt17(b.edge_residual_lo) << ','
                << fmt17(b.edge_residual_hi) << '\n';
        summary["levels"].push_back({{"level", levels[i]},
                                     {"band_count", cover.bands.size()},
                                     {"total_measure", cover.total_measure}});
    }

    std::ofstream js(std::filesystem::path(cfg.out_dir) / "summary.json");
    js << summary.dump(2) << '\n';
    return kExitOk;
}

int cmd_invariant(const RunConfig& cfg, const aps::Model& model) {
    aps::EnergyGrid grid = window_grid(cfg);
    std::optional<aps::ClosedFormModel> closed = aps::recognize_closed_form(model);

    struct Row {
        double numeric, closed_form, diff;
    };
    std::vector<Row> rows(grid.points.size());
    parallel_for(grid.points.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
        double e = grid.points[i];
        double num = aps::invariant_at(model, e);
        double ref = closed ? aps::closed_form_invariant(*closed, e)
                            : std::numeric_limits<double>::quiet_NaN();
        rows[i] = {num, ref, std::fabs(num - ref)};
    });

    auto out = open_artifact(cfg, "invariant.csv");
    out << "E,I_numeric,I_closed_form,abs_diff\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        out << fmt17(grid.points[i]) << ',' << fmt17(rows[i].numeric) << ','
            << fmt17(rows[i].closed_form) << ',' << fmt17(rows[i].diff) << '\n';
    return kExitOk;
}

int cmd_escape(const RunConfig& cfg, const aps::Model& model) {
    aps::EnergyGrid grid = window_grid(cfg);
    std::vector<aps::ClassifiedPoint> points(grid.points.size());
    parallel_for(grid.points.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
        aps::EnergyGrid one;
        one.e_min = one.e_max = grid.points[i];
        one.points = {grid.points[i]};
        points[i] = aps::classify_grid(model, one, cfg.nmax).points[0];
    });

    auto out = open_artifact(cfg, "escape.csv");
    out << "E,class,escape_index,invariant\n";
    for (const aps::ClassifiedPoint& p : points) {
        const char* cls = p.cls == aps::PointClass::Escaped        ? "Escaped"
                          : p.cls == aps::PointClass::Undetermined ? "Undetermined"
                                                                   : "NotEscapedBy";
        out << fmt17(p.energy) << ',' << cls << ',' << p.escape_index << ','
            << fmt17(p.invariant) << '\n';
    }
    return kExitOk;
}

int cmd_lyapunov(const RunConfig& cfg, const aps::Model& model) {
    int n = cfg.level >= 0 ? cfg.level : 12;
    aps::EnergyGrid grid = window_grid(cfg);
    std::vector<aps::LyapunovEstimate> rows(grid.points.size());
    parallel_for(grid.points.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
        rows[i] = aps::lyapunov_estimate(model, grid.points[i], n);
    });

    auto out = open_artifact(cfg, "lyapunov.csv");
    out << "E,l_disc,mean_length,l,n,residual\n";
    for (const aps::LyapunovEstimate& r : rows)
        out << fmt17(r.energy) << ',' << fmt17(r.l_disc) << ',' << fmt17(r.mean_length) << ','
            << fmt17(r.l) << ',' << r.n_used << ',' << fmt17(r.residual) << '\n';
    return kExitOk;
}

int cmd_dimension(const RunConfig& cfg, const aps::Model& model) {
    std::vector<int> levels = cfg.levels.empty() ? std::vector<int>{8, 12} : cfg.levels;
    if (levels.size() != 2)
        throw aps::ModelFileError("dimension needs exactly two levels, e.g. --levels 8,12");
    double d = aps::box_dimension_estimate(model, cfg.window[0], cfg.window[1], levels[0],
                                           levels[1]);

    auto out = open_artifact(cfg, "dimension.csv");
    out << "n1,n2,e_min,e_max,dimension\n";
    out << levels[0] << ',' << levels[1] << ',' << fmt17(cfg.window[0]) << ','
        << fmt17(cfg.window[1]) << ',' << fmt17(d) << '\n';
    std::printf("dimension = %.17g\n", d);
    return kExitOk;
}

int cmd_surface(const RunConfig& cfg) {
    double halfwidth = 3.0;
    if (cfg.window.size() == 2) halfwidth = std::max(std::fabs(cfg.window[0]), std::fabs(cfg.window[1]));
    int resolution = static_cast<int>(cfg.grid);
    aps::SurfaceMesh mesh = aps::surface_mesh(cfg.iso, halfwidth, resolution);

    auto obj = open_artifact(cfg, "surface.obj");
    aps::write_obj(mesh, obj);
    auto csv = open_artifact(cfg, "surface.csv");
    aps::write_mesh_csv(mesh, csv);
    std::printf("vertices = %zu, triangles = %zu, components = %d\n", mesh.vertices.size(),
                mesh.triangles.size(), mesh.component_count());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral computations for aperiodic concatenation potentials"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* sub, bool needs_model, bool needs_window) {
        auto* m = sub->add_option("--model", cfg.model_path, "model definition file");
        if (needs_model) m->required()->check(CLI::ExistingFile);
        auto* w = sub->add_option("--window", cfg.window, "energy window: lo hi")
                      ->expected(2);
        if (needs_window) w->required();
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
        sub->add_option("--seed", cfg.seed, "seed for randomized sweeps");
    };

    auto* bands = app.add_subcommand("bands", "band intervals of periodic approximants");
    add_common(bands, true, true);
    bands->add_option("--levels", cfg.levels, "approximant levels")->delimiter(',');
    bands->add_option("--level", cfg.level, "single approximant level");

    auto* invariant = app.add_subcommand("invariant", "Fricke-Vogt invariant sweep");
    add_common(invariant, true, true);
    invariant->add_option("--grid", cfg.grid, "number of energy samples");

    auto* escape = app.add_subcommand("escape", "trace-map escape classification");
    add_common(escape, true, true);
    escape->add_option("--grid", cfg.grid, "number of energy samples");
    escape->add_option("--nmax", cfg.nmax, "maximum trace-map steps");

    auto* lyap = app.add_subcommand("lyapunov", "finite-scale Lyapunov exponents");
    add_common(lyap, true, true);
    lyap->add_option("--grid", cfg.grid, "number of energy samples");
    lyap->add_option("--level", cfg.level, "substitution level");

    auto* dim = app.add_subcommand("dimension", "two-level box-counting dimension");
    add_common(dim, true, true);
    dim->add_option("--levels", cfg.levels, "two approximant levels n1,n2")->delimiter(',');

    auto* surface = app.add_subcommand("surface", "invariant level-surface mesh");
    add_common(surface, false, false);
    surface->add_option("--level", cfg.iso, "invariant level I");
    surface->add_option("--grid", cfg.grid, "cube resolution")->default_val(96);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    cfg.command = app.get_subcommands().front()->get_name();

    try {
        if (cfg.command == "surface") return cmd_surface(cfg);

        aps::Model model = aps::read_model(cfg.model_path);
        for (const std::string& warning : aps::validate_model(model))
            std::fprintf(stderr, "warning: %s\n", warning.c_str());

        if (cfg.command == "bands") return cmd_bands(cfg, model);
        if (cfg.command == "invariant") return cmd_invariant(cfg, model);
        if (cfg.command == "escape") return cmd_escape(cfg, model);
        if (cfg.command == "lyapunov") return cmd_lyapunov(cfg, model);
        if (cfg.command == "dimension") return cmd_dimension(cfg, model);
        std::fprintf(stderr, "error: unknown command %s\n", cfg.command.c_str());
        return kExitConfig;
    } catch (const aps::ModelFileError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const aps::ResolutionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitResolution;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return kExitNumeric;
    }
}
