#include "carleman_lab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "clab/carleman.hpp"
#include "clab/errors.hpp"
#include "clab/forward_solver.hpp"
#include "clab/io.hpp"
#include "clab/parallel.hpp"
#include "clab/phase_symbols.hpp"
#include "clab/test_fields.hpp"
#include "clab/ucp.hpp"

namespace clab::app {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// Output directory of one suite plus the stamps every artifact carries.
class Suite {
public:
    Suite(const RunConfig& cfg, std::string_view name, std::ostream& log)
        : cfg_(cfg), name_(name), dir_(fs::path(cfg.out) / name), hash_(config_hash(cfg)), log_(log) {}

    [[nodiscard]] std::vector<std::string> comments() const {
        return {"config_hash " + hash_, "seed " + std::to_string(cfg_.seed)};
    }

    json stamp(json j) const {
        j["config_hash"] = hash_;
        j["seed"] = cfg_.seed;
        return j;
    }

    void csv(const std::string& file, const std::string& content, std::vector<std::string> columns) {
        io::write_text(dir_ / file, content);
        manifest_.push_back({{"file", file}, {"columns", std::move(columns)}});
    }

    void write_json(const std::string& file, const json& j) { io::write_text(dir_ / file, stamp(j).dump(2) + "\n"); }

    [[nodiscard]] const fs::path& dir() const { return dir_; }

    std::ostream& log() { return log_ << '[' << name_ << "] "; }

    int finish(bool pass) {
        write_json("manifest.json", json{{"csv", manifest_}});
        log() << (pass ? "PASS" : "FAIL") << " -> " << dir_.string() << '\n';
        return pass ? kOk : kCheckFailed;
    }

private:
    const RunConfig& cfg_;
    std::string name_;
    fs::path dir_;
    std::string hash_;
    std::ostream& log_;
    json manifest_ = json::array();
};

int verify_symbols(const RunConfig& cfg, std::ostream& log) {
    Suite s(cfg, "verify-symbols", log);
    using symbols::BoundKind;
    const BoundKind kinds[] = {BoundKind::FracReal, BoundKind::Characteristic, BoundKind::Bracket, BoundKind::Elliptic,
                               BoundKind::Hypoelliptic};
    std::vector<symbols::BoundReport> reports(std::size(kinds));
    symbols::SampleSpec spec;
    spec.samples = cfg.bound_samples;
    spec.seed = cfg.seed;
    parallel_for(reports.size(), [&](std::size_t i) { reports[i] = symbols::verify_symbol_bounds(kinds[i], cfg.params, spec); });

    bool pass = true;
    json summary = json::object();
    for (const auto& r : reports) {
        const std::string name(symbols::to_string(r.kind));
        s.write_json(name + ".json", json::parse(symbols::to_json(r)));
        summary[name] = {{"worst_ratio", r.worst_ratio}, {"threshold", r.threshold}, {"pass", r.pass}};
        s.log() << name << " worst_ratio " << num(r.worst_ratio) << " threshold " << num(r.threshold)
                << (r.pass ? " pass" : " FAIL") << '\n';
        pass = pass && r.pass;
    }
    s.write_json("summary.json", {{"kinds", summary}, {"pass", pass}});
    return s.finish(pass);
}

int subelliptic(const RunConfig& cfg, std::ostream& log) {
    Suite s(cfg, "subelliptic", log);
    const auto& p = cfg.params;
    std::vector<Axis> axes{Axis::time(cfg.grid.t, 4.0 * p.T / static_cast<double>(cfg.grid.t))};
    fields::FamilySpec box{{0.0}, {2.0 * p.T}, 0.5, 1.0};
    for (int j = 0; j < p.n; ++j) {
        axes.push_back(Axis::centered(cfg.grid.x, 2.0 * p.l));
        box.lo.push_back(-0.8 * p.l);
        box.hi.push_back(0.8 * p.l);
    }
    axes.push_back(Axis{cfg.grid.z, 4.0 / static_cast<double>(cfg.grid.z), -2.0, AxisRole::Z});
    box.lo.push_back(-1.0);
    box.hi.push_back(1.0);
    const GridSpec grid(axes);
    const auto family = fields::bump_family(box, cfg.subelliptic_family, cfg.seed);

    std::vector<carleman::RatioEntry> entries(family.size());
    parallel_for(family.size(),
                 [&](std::size_t i) { entries[i] = carleman::subelliptic_ratio(fields::bump_field(grid, family[i]), p); });
    carleman::RatioSweep sweep;
    sweep.param_name = "member";
    bool pass = true;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        sweep.add(static_cast<double>(i), entries[i]);
        pass = pass && std::isfinite(entries[i].ratio) && entries[i].ratio > 0.0;
    }
    s.csv("ratios.csv", sweep.to_csv(s.comments()), {"member", "lhs", "rhs", "ratio"});
    json summary = json::parse(sweep.summary_json());
    summary["pass"] = pass;
    s.write_json("summary.json", summary);
    s.log() << "sup_ratio " << num(sweep.sup_ratio) << " over " << entries.size() << " fields\n";
    return s.finish(pass);
}

int carleman_sweep(const RunConfig& cfg, std::ostream& log) {
    Suite s(cfg, "carleman-sweep", log);
    const auto& p = cfg.params;
    constexpr double kSlopeLimit = 0.1;
    std::vector<Axis> axes{Axis::time(cfg.grid.t, 4.0 * p.T / static_cast<double>(cfg.grid.t))};
    fields::FamilySpec box{{0.0}, {2.0 * p.T}, 0.8, 1.0};
    for (int j = 0; j + 1 < p.n; ++j) {
        axes.push_back(Axis::centered(cfg.grid.x, 2.0 * p.l));
        box.lo.push_back(-0.8 * p.l);
        box.hi.push_back(0.8 * p.l);
    }
    axes.push_back(Axis::space(cfg.grid.xn, 2.0 * p.l / static_cast<double>(cfg.grid.xn), -(p.l + p.X)));
    box.lo.push_back(-(p.l + p.X) + 0.1 * p.l);
    box.hi.push_back(0.0);
    const GridSpec grid(axes);
    const auto family = fields::bump_family(box, cfg.carleman_family, cfg.seed);
    const auto betas = cfg.beta.values();

    std::vector<Field> fields_(family.size());
    parallel_for(family.size(), [&](std::size_t i) { fields_[i] = fields::bump_field(grid, family[i]); });
    std::vector<carleman::RatioEntry> entries(family.size() * betas.size());
    parallel_for(entries.size(), [&](std::size_t k) {
        entries[k] = carleman::carleman_ratio(fields_[k / betas.size()], betas[k % betas.size()], p);
    });

    std::ostringstream csv;
    for (const auto& c : s.comments()) csv << "# " << c << '\n';
    csv << "field,beta,lhs,rhs,ratio\n";
    std::vector<double> lb;
    for (double b : betas) lb.push_back(std::log(b));
    json slopes = json::array();
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < family.size(); ++f) {
        std::vector<double> lr;
        for (std::size_t b = 0; b < betas.size(); ++b) {
            const auto& e = entries[f * betas.size() + b];
            csv << f << ',' << num(betas[b]) << ',' << num(e.lhs) << ',' << num(e.rhs) << ',' << num(e.ratio) << '\n';
            lr.push_back(std::log(e.ratio));
        }
        const double slope = carleman::fit_slope(lb, lr);
        slopes.push_back(slope);
        worst = std::max(worst, slope);
    }
    const bool pass = worst <= kSlopeLimit;
    s.csv("sweep.csv", csv.str(), {"field", "beta", "lhs", "rhs", "ratio"});
    s.write_json("summary.json",
                 {{"slopes", slopes}, {"worst_slope", worst}, {"slope_limit", kSlopeLimit}, {"pass", pass}});
    s.log() << "worst log-log slope " << num(worst) << " (limit " << kSlopeLimit << ")\n";
    return s.finish(pass);
}

int solve_forward(const RunConfig& cfg, std::ostream& log) {
    Suite s(cfg, "solve-forward", log);
    constexpr double kTolerance = 5e-2;
    constexpr double pi = std::numbers::pi;
    ucp::ForwardProblem fp;
    fp.params = cfg.params;
    fp.cells = cfg.forward.cells;
    const auto& p = fp.params;
    const double dt = p.T / static_cast<double>(cfg.forward.steps);
    const double h = 2.0 * p.l / static_cast<double>(fp.cells);
    // exact solution t^2 sin(pi y_n / l) prod cos(pi y_j / 2l); the spatial factor is a
    // discrete eigenvector, so the error measures the time discretization
    auto mode = [&](std::span<const double> y) {
        double v = std::sin(pi * y.back() / p.l);
        for (std::size_t j = 0; j + 1 < y.size(); ++j) v *= std::cos(pi * y[j] / (2.0 * p.l));
        return v;
    };
    auto eig = [&](double k) { return 4.0 / (h * h) * std::pow(std::sin(k * h / 2.0), 2); };
    const double lam = eig(pi / p.l) + (p.n - 1) * eig(pi / (2.0 * p.l));
    fp.forcing_fn = [&](double t, std::span<const double> y) {
        return (2.0 * std::pow(t, 2.0 - p.alpha) / std::tgamma(3.0 - p.alpha) + lam * t * t) * mode(y);
    };
    const Field u = ucp::solve_forward(fp, dt);

    const auto& g = u.grid();
    const std::size_t steps = g.axis(0).count;
    std::vector<double> err(steps, 0.0), amp(steps, 0.0);
    std::vector<double> y(static_cast<std::size_t>(p.n));
    for_each_index(g, [&](std::size_t flat, std::span<const std::size_t> idx) {
        const double t = g.axis(0).coord(idx[0]);
        for (int a = 0; a < p.n; ++a) y[a] = g.axis(1 + a).coord(idx[1 + a]);
        const double exact = t * t * mode(y);
        err[idx[0]] = std::max(err[idx[0]], std::abs(u[flat].real() - exact));
        amp[idx[0]] = std::max(amp[idx[0]], std::abs(u[flat].real()));
    });
    std::ostringstream csv;
    for (const auto& c : s.comments()) csv << "# " << c << '\n';
    csv << "t,max_error,max_abs\n";
    double worst = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        csv << num(g.axis(0).coord(k)) << ',' << num(err[k]) << ',' << num(amp[k]) << '\n';
        worst = std::max(worst, err[k]);
    }
    const double exact_max = p.T * p.T;
    const double rel = worst / exact_max;
    const bool pass = std::isfinite(rel) && rel <= kTolerance;
    s.csv("history.csv", csv.str(), {"t", "max_error", "max_abs"});
    io::write_field(s.dir() / "solution.clf", u, s.stamp(json::object()).dump());
    s.write_json("summary.json", {{"relative_error", rel}, {"tolerance", kTolerance}, {"dt", dt}, {"cells", fp.cells},
                                  {"pass", pass}});
    s.log() << "max relative error " << num(rel) << " (tolerance " << kTolerance << ")\n";
    return s.finish(pass);
}

int ucp_demo(const RunConfig& cfg, std::ostream& log) {
    Suite s(cfg, "ucp-demo", log);
    ProblemParams p = cfg.params;
    p.n = cfg.ucp.n;
    ucp::DemoSpec spec;
    spec.dt = p.T / static_cast<double>(cfg.ucp.steps);
    spec.cells = cfg.ucp.cells;
    const auto betas = cfg.ucp.beta.values();
    const auto d = ucp::ucp_demo(p, betas, spec);
    const auto& r = d.report;
    bool monotone = true;
    for (std::size_t i = 1; i < r.interior_mass.size(); ++i) monotone = monotone && r.interior_mass[i] < r.interior_mass[i - 1];
    const bool pass = r.pass && monotone;
    s.csv("report.csv", r.to_csv(s.comments()), {"beta", "interior_mass", "bound", "ratio"});
    json summary = json::parse(r.summary_json());
    summary["forward_error"] = d.forward_error;
    summary["interior_mass_monotone"] = monotone;
    summary["n"] = p.n;
    summary["pass"] = pass;
    s.write_json("summary.json", summary);
    s.log() << "fitted exponent " << num(r.fitted_exponent) << " target " << num(-r.decay_margin * r.target_exponent)
            << ", commutator leak " << num(r.commutator_leak) << '\n';
    return s.finish(pass);
}

using Runner = int (*)(const RunConfig&, std::ostream&);

struct Entry {
    std::string_view name;
    Runner run;
};

const Entry kSuites[] = {
    {"verify-symbols", verify_symbols}, {"subelliptic", subelliptic}, {"carleman-sweep", carleman_sweep},
    {"solve-forward", solve_forward},   {"ucp-demo", ucp_demo},
};

std::string usage() {
    std::string u = "usage: carleman-lab <command> --config <path> [--out <dir>] [--seed <u64>]\ncommands:";
    for (auto c : command_names()) u += " " + std::string(c);
    return u + "\n";
}

}  // namespace

const std::vector<std::string_view>& command_names() {
    static const std::vector<std::string_view> names{"verify-symbols", "subelliptic", "carleman-sweep",
                                                     "solve-forward",  "ucp-demo",    "all"};
    return names;
}

int run_command(std::string_view command, const RunConfig& config, std::ostream& log) {
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
        throw ConfigError("unknown command \"" + std::string(command) + "\"");
    }
    io::write_text(fs::path(config.out) / "config.json", to_json(config));
    if (command == "all") {
        int status = kOk;
        for (const auto& e : kSuites) {
            if (e.run(config, log) != kOk) status = kCheckFailed;
        }
        return status;
    }
    for (const auto& e : kSuites) {
        if (e.name == command) return e.run(config, log);
    }
    return kUsageOrIo;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical laboratory for the fractional Carleman estimate and unique continuation", "carleman-lab"};
    std::string command, config_path, out_dir;
    std::uint64_t seed = 0;
    app.add_option("command", command, "Suite to run")->required();
    app.add_option("--config", config_path, "JSON run configuration")->required();
    auto* out_opt = app.add_option("--out", out_dir, "Output directory (overrides the config)");
    auto* seed_opt = app.add_option("--seed", seed, "Seed (overrides the config)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help() << usage();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << usage();
        return kUsageOrIo;
    }
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
        err << "unknown command \"" << command << "\"\n" << usage();
        return kUsageOrIo;
    }
    try {
        RunConfig cfg = parse_config(config_path);
        if (*out_opt) cfg.out = out_dir;
        if (*seed_opt) cfg.seed = seed;
        out << "config_hash " << config_hash(cfg) << " seed " << cfg.seed << " threads " << thread_limit() << '\n';
        return run_command(command, cfg, out);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kUsageOrIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrIo;
    }
}

}  // namespace clab::app
