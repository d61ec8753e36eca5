#pragma once

#include "mars/grid.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mars::driver {

/// Everything needed to plot one instant of a run: fields on the grid and
/// the per-mode lambda, epsilon and lambda_c on the same index grid.
struct Snapshot {
    std::string model;
    std::size_t step = 0;
    double time = 0.0;
    std::size_t nx = 0;
    std::size_t ny = 1;
    double ke = 0.0;
    std::map<std::string, double> diagnostics;

    std::vector<std::string> component_names;
    std::vector<RealField> components;
    std::vector<double> lambda;
    std::vector<double> epsilon;
    std::vector<double> lambda_c;
};

/// CSV text: `# key=value` metadata lines, one header line, then one row per
/// flat grid index with columns
///   i, kx[, ky], <components...>, lambda, epsilon, lambda_c
/// Doubles use 17 significant digits so a load/save cycle is exact.
std::string format_snapshot(const Snapshot& snapshot);
Snapshot parse_snapshot(const std::string& text);

/// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

Snapshot load_snapshot(const std::filesystem::path& path);

/// SHA-1 of "blob <size>\0<content>", as printed by `git hash-object`.
std::string git_blob_hash(const std::string& content);

struct ManifestEntry {
    std::string file;
    std::size_t step = 0;
    double time = 0.0;
    std::string blob_sha1;
};

struct Manifest {
    std::string model;
    std::map<std::string, std::string> config;    ///< file contents as given
    std::map<std::string, std::string> resolved;  ///< every effective parameter
    std::uint64_t seed = 0;
    std::string rng_algorithm;
    std::vector<std::string> warnings;
    std::vector<ManifestEntry> snapshots;
    std::string status = "running";  ///< running, completed, or an error kind
};

std::string format_manifest(const Manifest& manifest);
Manifest parse_manifest(const std::string& text);
Manifest load_manifest(const std::filesystem::path& path);

/// Machine-readable record of a failed run.
struct ErrorRecord {
    std::string kind;  ///< validation, blowup, rupture, proximity, numerical
    std::string message;
    std::size_t step = 0;
    double time = 0.0;
    int exit_code = 0;
};

std::string format_error_record(const ErrorRecord& record);

/// Appends snapshots to a run directory and keeps manifest.json current.
class SnapshotWriter {
public:
    SnapshotWriter(std::filesystem::path directory, Manifest manifest);

    const std::filesystem::path& directory() const noexcept { return directory_; }
    const Manifest& manifest() const noexcept { return manifest_; }

    /// Returns the path written.
    std::filesystem::path write(const Snapshot& snapshot);
    void finish(const std::string& status);
    void write_error(const ErrorRecord& record);

private:
    void write_manifest();

    std::filesystem::path directory_;
    Manifest manifest_;
};

}  // namespace mars::driver
