#include "mars/driver/config.hpp"

#include "mars/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mars::driver {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

const std::vector<std::string> kCommonKeys = {
    "dt", "epsilon_u", "t_end", "snapshot_every", "seed", "n_half", "up_factor", "down_factor",
    "lambda_floor", "zero_seed", "reject_steps", "reject_factor", "max_rejections",
};

// Parses one value; problems go into `errors` and leave `target` untouched.
class Reader {
public:
    Reader(const RawConfig& raw, std::vector<std::string>& errors) : raw_(raw), errors_(errors) {}

    void real(const std::string& key, double& target) {
        const auto it = raw_.find(key);
        if (it == raw_.end()) {
            return;
        }
        double value = 0.0;
        const std::string& s = it->second;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
            errors_.push_back(key + ": expected a finite number, got '" + s + "'");
            return;
        }
        target = value;
    }

    template <typename Int>
    void integer(const std::string& key, Int& target) {
        const auto it = raw_.find(key);
        if (it == raw_.end()) {
            return;
        }
        Int value{};
        const std::string& s = it->second;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            errors_.push_back(key + ": expected a non-negative integer, got '" + s + "'");
            return;
        }
        target = value;
    }

    void boolean(const std::string& key, bool& target) {
        const auto it = raw_.find(key);
        if (it == raw_.end()) {
            return;
        }
        const std::string& s = it->second;
        if (s == "true" || s == "1" || s == "yes" || s == "on") {
            target = true;
        } else if (s == "false" || s == "0" || s == "no" || s == "off") {
            target = false;
        } else {
            errors_.push_back(key + ": expected true or false, got '" + s + "'");
        }
    }

private:
    const RawConfig& raw_;
    std::vector<std::string>& errors_;
};

bool power_of_two_at_least_8(std::size_t n) { return n >= 8 && (n & (n - 1)) == 0; }

}  // namespace

ModelKind parse_model_kind(const std::string& name) {
    if (name == "thinfilm") {
        return ModelKind::thinfilm;
    }
    if (name == "ks2d") {
        return ModelKind::ks2d;
    }
    if (name == "heleshaw") {
        return ModelKind::heleshaw;
    }
    throw ConfigError("model: unknown model '" + name + "' (expected thinfilm, ks2d or heleshaw)");
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::thinfilm:
            return "thinfilm";
        case ModelKind::ks2d:
            return "ks2d";
        case ModelKind::heleshaw:
            return "heleshaw";
    }
    return "unknown";
}

RawConfig parse_key_values(std::istream& in) {
    RawConfig raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string content = trim(std::string_view(line).substr(0, hash));
        if (content.empty()) {
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(std::string_view(content).substr(0, eq));
        std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        }
        if (raw.contains(key)) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + key + " given twice");
        }
        raw.emplace(std::move(key), std::move(value));
    }
    return raw;
}

RawConfig read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path.string());
    }
    return parse_key_values(in);
}

double RunConfig::dt() const {
    switch (model) {
        case ModelKind::thinfilm:
            return thinfilm.dt;
        case ModelKind::ks2d:
            return ks2d.dt;
        case ModelKind::heleshaw:
            return heleshaw.dt;
    }
    return 0.0;
}

std::vector<std::string> known_keys(ModelKind kind) {
    std::vector<std::string> keys = kCommonKeys;
    switch (kind) {
        case ModelKind::thinfilm:
            keys.insert(keys.end(), {"N", "A"});
            break;
        case ModelKind::ks2d:
            keys.insert(keys.end(), {"nx", "ny", "nu", "amplitude"});
            break;
        case ModelKind::heleshaw:
            keys.insert(keys.end(), {"N", "S", "R", "noise_amplitude"});
            break;
    }
    return keys;
}

RunConfig validate_config(ModelKind kind, const RawConfig& raw) {
    RunConfig cfg;
    cfg.model = kind;
    cfg.raw = raw;
    std::vector<std::string> errors;

    const std::vector<std::string> keys = known_keys(kind);
    for (const auto& [key, value] : raw) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            errors.push_back(key + ": unknown key for model " + to_string(kind));
        }
    }

    Reader r(raw, errors);
    double dt = 0.0;
    double epsilon_u = 0.0;
    switch (kind) {
        case ModelKind::thinfilm:
            dt = cfg.thinfilm.dt;
            epsilon_u = cfg.thinfilm.epsilon_u;
            cfg.t_end = 1.0;
            r.integer("N", cfg.thinfilm.n);
            r.real("A", cfg.thinfilm.amplitude);
            if (!power_of_two_at_least_8(cfg.thinfilm.n)) {
                errors.push_back("N: must be a power of two >= 8");
            }
            if (std::abs(cfg.thinfilm.amplitude) >= cfg.thinfilm.h0) {
                errors.push_back("A: |A| must be below h0 so the initial film is positive");
            }
            break;
        case ModelKind::ks2d:
            dt = cfg.ks2d.dt;
            epsilon_u = cfg.ks2d.epsilon_u;
            cfg.t_end = 100.0;
            r.integer("nx", cfg.ks2d.nx);
            r.integer("ny", cfg.ks2d.ny);
            r.real("nu", cfg.ks2d.nu);
            r.real("amplitude", cfg.ks2d.amplitude);
            if (!power_of_two_at_least_8(cfg.ks2d.nx)) {
                errors.push_back("nx: must be a power of two >= 8");
            }
            if (!power_of_two_at_least_8(cfg.ks2d.ny)) {
                errors.push_back("ny: must be a power of two >= 8");
            }
            if (!(cfg.ks2d.nu > 0.0)) {
                errors.push_back("nu: must be positive");
            }
            if (cfg.ks2d.amplitude < 0.0) {
                errors.push_back("amplitude: must be non-negative");
            }
            break;
        case ModelKind::heleshaw:
            dt = cfg.heleshaw.dt;
            epsilon_u = cfg.heleshaw.epsilon_u;
            cfg.t_end = 0.3125;
            r.integer("N", cfg.heleshaw.n);
            r.real("S", cfg.heleshaw.surface_tension);
            r.real("R", cfg.heleshaw.gravity);
            r.real("noise_amplitude", cfg.heleshaw.noise_amplitude);
            if (!power_of_two_at_least_8(cfg.heleshaw.n)) {
                errors.push_back("N: must be a power of two >= 8");
            }
            if (!(cfg.heleshaw.surface_tension > 0.0)) {
                errors.push_back("S: must be positive");
            }
            if (cfg.heleshaw.noise_amplitude < 0.0) {
                errors.push_back("noise_amplitude: must be non-negative");
            }
            break;
    }

    r.real("dt", dt);
    r.real("epsilon_u", epsilon_u);
    r.real("t_end", cfg.t_end);
    r.integer("snapshot_every", cfg.snapshot_every);
    r.integer("seed", cfg.seed);
    r.integer("n_half", cfg.n_half);
    r.real("up_factor", cfg.controller.up_factor);
    r.real("down_factor", cfg.controller.down_factor);
    r.real("lambda_floor", cfg.controller.lambda_floor);
    r.boolean("reject_steps", cfg.reject_steps);
    r.real("reject_factor", cfg.reject_factor);
    r.integer("max_rejections", cfg.max_rejections);

    if (!(dt > 0.0)) {
        errors.push_back("dt: must be positive");
    }
    if (!(epsilon_u > 0.0)) {
        errors.push_back("epsilon_u: must be positive");
    } else if (epsilon_u < 1e-14) {
        cfg.warnings.push_back("epsilon_u: " + raw.at("epsilon_u") +
                               " is below the round-off floor of the noise measure; lambda will only grow");
    }
    if (!(cfg.t_end > 0.0)) {
        errors.push_back("t_end: must be positive");
    }
    if (cfg.snapshot_every == 0) {
        errors.push_back("snapshot_every: must be at least 1");
    }
    if (cfg.n_half < 1) {
        errors.push_back("n_half: must be at least 1");
    }
    if (!(cfg.controller.up_factor > 1.0)) {
        errors.push_back("up_factor: must exceed 1");
    }
    if (!(cfg.controller.down_factor > 1.0)) {
        errors.push_back("down_factor: must exceed 1");
    }
    if (cfg.controller.lambda_floor < 0.0) {
        errors.push_back("lambda_floor: must be non-negative");
    }
    if (!(cfg.reject_factor >= 1.0)) {
        errors.push_back("reject_factor: must be at least 1");
    }

    double zero_seed = 2.0 / (3.0 * dt);
    r.real("zero_seed", zero_seed);
    if (!(zero_seed >= 0.0)) {
        errors.push_back("zero_seed: must be non-negative");
    }
    cfg.controller.zero_seed = zero_seed;
    cfg.controller.epsilon_u = epsilon_u;

    if (!errors.empty()) {
        std::ostringstream msg;
        for (std::size_t i = 0; i < errors.size(); ++i) {
            msg << (i ? "\n" : "") << errors[i];
        }
        throw ConfigError(msg.str());
    }

    switch (kind) {
        case ModelKind::thinfilm:
            cfg.thinfilm.dt = dt;
            cfg.thinfilm.epsilon_u = epsilon_u;
            break;
        case ModelKind::ks2d:
            cfg.ks2d.dt = dt;
            cfg.ks2d.epsilon_u = epsilon_u;
            cfg.ks2d.seed = cfg.seed;
            break;
        case ModelKind::heleshaw:
            cfg.heleshaw.dt = dt;
            cfg.heleshaw.epsilon_u = epsilon_u;
            cfg.heleshaw.seed = cfg.seed;
            break;
    }
    return cfg;
}

std::unique_ptr<Model> make_model(const RunConfig& config) {
    switch (config.model) {
        case ModelKind::thinfilm:
            return std::make_unique<thin_film::Model>(config.thinfilm);
        case ModelKind::ks2d: {
            kuramoto_sivashinsky::Params p = config.ks2d;
            p.seed = config.seed;
            return std::make_unique<kuramoto_sivashinsky::Model>(p);
        }
        case ModelKind::heleshaw: {
            hele_shaw::Params p = config.heleshaw;
            p.seed = config.seed;
            return std::make_unique<hele_shaw::Model>(p);
        }
    }
    throw ConfigError("model: unknown");
}

}  // namespace mars::driver
