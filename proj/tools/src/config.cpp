#include "carleman_lab/config.hpp"

#include <cmath>
#include <set>
#include <type_traits>

#include <json.hpp>

#include "clab/errors.hpp"
#include "clab/field.hpp"
#include "clab/io.hpp"

namespace clab::app {

namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) { return prefix.empty() ? key : prefix + "." + key; }

void reject_unknown(const json& j, const std::string& prefix, const std::set<std::string>& known) {
    for (const auto& [k, _] : j.items()) {
        if (!known.count(k)) throw ConfigError("unknown field \"" + join(prefix, k) + "\"");
    }
}

const json* member(const json& j, const std::string& key) {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

void read(const json& j, const std::string& prefix, const std::string& key, double& out) {
    if (const json* v = member(j, key)) {
        if (!v->is_number()) throw ConfigError("field \"" + join(prefix, key) + "\" must be a number");
        out = v->get<double>();
    }
}

void read(const json& j, const std::string& prefix, const std::string& key, bool& out) {
    if (const json* v = member(j, key)) {
        if (!v->is_boolean()) throw ConfigError("field \"" + join(prefix, key) + "\" must be a boolean");
        out = v->get<bool>();
    }
}

void read(const json& j, const std::string& prefix, const std::string& key, std::string& out) {
    if (const json* v = member(j, key)) {
        if (!v->is_string()) throw ConfigError("field \"" + join(prefix, key) + "\" must be a string");
        out = v->get<std::string>();
    }
}

template <class Int>
void read_int(const json& j, const std::string& prefix, const std::string& key, Int& out) {
    if (const json* v = member(j, key)) {
        if (!v->is_number_integer()) throw ConfigError("field \"" + join(prefix, key) + "\" must be an integer");
        if constexpr (std::is_unsigned_v<Int>) {
            if (!v->is_number_unsigned()) throw ConfigError("field \"" + join(prefix, key) + "\" must be non-negative");
        }
        out = v->get<Int>();
    }
}

const json& object(const json& j, const std::string& prefix, const std::string& key) {
    static const json empty = json::object();
    const json* v = member(j, key);
    if (!v) return empty;
    if (!v->is_object()) throw ConfigError("field \"" + join(prefix, key) + "\" must be an object");
    return *v;
}

void read_sweep(const json& j, const std::string& path, BetaSweep& s) {
    reject_unknown(j, path, {"start", "stop", "count", "log"});
    read(j, path, "start", s.start);
    read(j, path, "stop", s.stop);
    read_int(j, path, "count", s.count);
    read(j, path, "log", s.log);
    if (!std::isfinite(s.start) || s.start < 1.0) throw ConfigError("field \"" + path + ".start\" must be >= 1");
    if (!std::isfinite(s.stop) || s.stop < s.start) throw ConfigError("field \"" + path + ".stop\" must be >= start");
    if (s.count < 2) throw ConfigError("field \"" + path + ".count\" must be at least 2");
}

void require_pow2(std::size_t v, const std::string& path) {
    if (!is_power_of_two(v)) throw ConfigError("field \"" + path + "\" must be a power of two");
}

void require_positive(std::size_t v, const std::string& path) {
    if (v == 0) throw ConfigError("field \"" + path + "\" must be positive");
}

json sweep_json(const BetaSweep& s) { return {{"start", s.start}, {"stop", s.stop}, {"count", s.count}, {"log", s.log}}; }

json canonical(const RunConfig& c) {
    json j;
    j["alpha"] = c.params.alpha;
    j["tau0"] = c.params.tau0;
    j["X"] = c.params.X;
    j["T"] = c.params.T;
    j["n"] = c.params.n;
    j["l"] = c.params.l;
    j["eps"] = c.params.eps;
    j["grid"] = {{"t", c.grid.t}, {"x", c.grid.x}, {"xn", c.grid.xn}, {"z", c.grid.z}};
    j["beta"] = sweep_json(c.beta);
    j["bound_samples"] = c.bound_samples;
    j["subelliptic_family"] = c.subelliptic_family;
    j["carleman_family"] = c.carleman_family;
    j["forward"] = {{"steps", c.forward.steps}, {"cells", c.forward.cells}};
    j["ucp"] = {{"n", c.ucp.n}, {"steps", c.ucp.steps}, {"cells", c.ucp.cells}, {"beta", sweep_json(c.ucp.beta)}};
    j["seed"] = c.seed;
    j["out"] = c.out;
    return j;
}

}  // namespace

std::vector<double> BetaSweep::values() const {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double s = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        v[i] = log ? start * std::pow(stop / start, s) : start + (stop - start) * s;
    }
    v.back() = stop;
    return v;
}

RunConfig parse_config_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j, "", {"alpha", "tau0", "X", "T", "n", "l", "eps", "grid", "beta", "bound_samples",
                           "subelliptic_family", "carleman_family", "forward", "ucp", "seed", "out"});
    RunConfig c;
    read(j, "", "alpha", c.params.alpha);
    read(j, "", "tau0", c.params.tau0);
    read(j, "", "X", c.params.X);
    read(j, "", "T", c.params.T);
    read_int(j, "", "n", c.params.n);
    read(j, "", "l", c.params.l);
    read(j, "", "eps", c.params.eps);
    c.params.validate();

    const json& g = object(j, "", "grid");
    reject_unknown(g, "grid", {"t", "x", "xn", "z"});
    read_int(g, "grid", "t", c.grid.t);
    read_int(g, "grid", "x", c.grid.x);
    read_int(g, "grid", "xn", c.grid.xn);
    read_int(g, "grid", "z", c.grid.z);
    require_pow2(c.grid.t, "grid.t");
    require_pow2(c.grid.x, "grid.x");
    require_pow2(c.grid.xn, "grid.xn");
    require_pow2(c.grid.z, "grid.z");

    read_sweep(object(j, "", "beta"), "beta", c.beta);
    read_int(j, "", "bound_samples", c.bound_samples);
    read_int(j, "", "subelliptic_family", c.subelliptic_family);
    read_int(j, "", "carleman_family", c.carleman_family);
    require_positive(c.bound_samples, "bound_samples");
    require_positive(c.subelliptic_family, "subelliptic_family");
    require_positive(c.carleman_family, "carleman_family");

    const json& f = object(j, "", "forward");
    reject_unknown(f, "forward", {"steps", "cells"});
    read_int(f, "forward", "steps", c.forward.steps);
    read_int(f, "forward", "cells", c.forward.cells);
    require_positive(c.forward.steps, "forward.steps");
    if (c.forward.cells < 2) throw ConfigError("field \"forward.cells\" must be at least 2");

    const json& u = object(j, "", "ucp");
    reject_unknown(u, "ucp", {"n", "steps", "cells", "beta"});
    read_int(u, "ucp", "n", c.ucp.n);
    read_int(u, "ucp", "steps", c.ucp.steps);
    read_int(u, "ucp", "cells", c.ucp.cells);
    read_sweep(object(u, "ucp", "beta"), "ucp.beta", c.ucp.beta);
    if (c.ucp.n < 1) throw ConfigError("field \"ucp.n\" must be at least 1");
    require_positive(c.ucp.steps, "ucp.steps");
    if (c.ucp.cells < 2) throw ConfigError("field \"ucp.cells\" must be at least 2");

    read_int(j, "", "seed", c.seed);
    read(j, "", "out", c.out);
    if (c.out.empty()) throw ConfigError("field \"out\" must not be empty");
    return c;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = io::read_text(path);
    } catch (const IoError&) {
        throw ConfigError("cannot read config file " + path.string());
    }
    return parse_config_text(text);
}

std::string to_json(const RunConfig& config) { return canonical(config).dump(2) + "\n"; }

std::string config_hash(const RunConfig& config) {
    json j = canonical(config);
    j.erase("out");
    return io::hex64(io::fnv1a(j.dump()));
}

}  // namespace clab::app
