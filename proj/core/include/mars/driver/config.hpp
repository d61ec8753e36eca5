#pragma once

#include "mars/controller.hpp"
#include "mars/hele_shaw.hpp"
#include "mars/kuramoto_sivashinsky.hpp"
#include "mars/model.hpp"
#include "mars/thin_film.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace mars::driver {

enum class ModelKind { thinfilm, ks2d, heleshaw };

ModelKind parse_model_kind(const std::string& name);
std::string to_string(ModelKind kind);

/// Raw `key = value` pairs in file order of last assignment.
using RawConfig = std::map<std::string, std::string>;

/// Flat config text: one `key = value` per line, `#` starts a comment,
/// blank lines ignored. Throws ConfigError with the line number on
/// malformed lines or repeated keys.
RawConfig parse_key_values(std::istream& in);
RawConfig read_config_file(const std::filesystem::path& path);

struct RunConfig {
    ModelKind model = ModelKind::thinfilm;
    thin_film::Params thinfilm;
    kuramoto_sivashinsky::Params ks2d;
    hele_shaw::Params heleshaw;
    ControllerConfig controller;

    int n_half = 2;
    double t_end = 1.0;
    std::size_t snapshot_every = 100;
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = "mars_out";

    bool explicit_scheme = false;  ///< lambda = 0, no adaptation
    bool fixed_lambda = false;     ///< keep the initial lambda, no adaptation
    /// Redo a macro step after raising lambda when noise exceeds
    /// reject_factor * epsilon_u. Off by default.
    bool reject_steps = false;
    double reject_factor = 100.0;
    std::size_t max_rejections = 20;

    RawConfig raw;                      ///< the file as given
    std::vector<std::string> warnings;  ///< non-fatal validation notes

    double dt() const;
};

/// Keys accepted for a model (common keys included).
std::vector<std::string> known_keys(ModelKind kind);

/// Fills model defaults, applies `raw`, and checks every value. All
/// problems are collected and reported together in one ConfigError, one
/// `key: reason` per line.
RunConfig validate_config(ModelKind kind, const RawConfig& raw);

std::unique_ptr<Model> make_model(const RunConfig& config);

}  // namespace mars::driver
