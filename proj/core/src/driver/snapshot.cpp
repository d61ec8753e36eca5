#include "mars/driver/snapshot.hpp"

#include "mars/error.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace mars::driver {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string number(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), ptr);
}

double to_double(std::string_view s, const std::string& what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError("snapshot: bad number '" + std::string(s) + "' in " + what);
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string format_snapshot(const Snapshot& s) {
    const std::size_t n = s.nx * s.ny;
    const bool two_d = s.ny > 1;
    if (s.components.size() != s.component_names.size() || s.lambda.size() != n || s.epsilon.size() != n ||
        s.lambda_c.size() != n) {
        throw ConfigError("snapshot: column sizes do not match the grid");
    }
    for (const auto& c : s.components) {
        if (c.size() != n) {
            throw ConfigError("snapshot: component size does not match the grid");
        }
    }

    std::ostringstream out;
    out << "# model=" << s.model << '\n'
        << "# step=" << s.step << '\n'
        << "# time=" << number(s.time) << '\n'
        << "# nx=" << s.nx << '\n'
        << "# ny=" << s.ny << '\n'
        << "# ke=" << number(s.ke) << '\n';
    for (const auto& [key, value] : s.diagnostics) {
        out << "# diag." << key << '=' << number(value) << '\n';
    }

    out << "i,kx";
    if (two_d) {
        out << ",ky";
    }
    for (const auto& name : s.component_names) {
        out << ',' << name;
    }
    out << ",lambda,epsilon,lambda_c\n";

    for (std::size_t i = 0; i < n; ++i) {
        out << i << ',' << mode_frequency(two_d ? i / s.ny : i, s.nx);
        if (two_d) {
            out << ',' << mode_frequency(i % s.ny, s.ny);
        }
        for (const auto& c : s.components) {
            out << ',' << number(c[i]);
        }
        out << ',' << number(s.lambda[i]) << ',' << number(s.epsilon[i]) << ',' << number(s.lambda_c[i]) << '\n';
    }
    return out.str();
}

Snapshot parse_snapshot(const std::string& text) {
    Snapshot s;
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.starts_with("# ")) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                continue;
            }
            const std::string key = line.substr(2, eq - 2);
            const std::string value = line.substr(eq + 1);
            if (key == "model") {
                s.model = value;
            } else if (key == "step") {
                s.step = static_cast<std::size_t>(to_double(value, key));
            } else if (key == "time") {
                s.time = to_double(value, key);
            } else if (key == "nx") {
                s.nx = static_cast<std::size_t>(to_double(value, key));
            } else if (key == "ny") {
                s.ny = static_cast<std::size_t>(to_double(value, key));
            } else if (key == "ke") {
                s.ke = to_double(value, key);
            } else if (key.starts_with("diag.")) {
                s.diagnostics[key.substr(5)] = to_double(value, key);
            }
            continue;
        }
        for (auto col : split(line, ',')) {
            header.emplace_back(col);
        }
        break;
    }
    const std::size_t index_columns = s.ny > 1 ? 3 : 2;
    if (header.size() < index_columns + 3) {
        throw ConfigError("snapshot: missing header line");
    }
    const std::size_t n_comp = header.size() - index_columns - 3;
    s.component_names.assign(header.begin() + static_cast<long>(index_columns),
                             header.begin() + static_cast<long>(index_columns + n_comp));
    const std::size_t n = s.nx * s.ny;
    s.components.assign(n_comp, RealField(n));
    s.lambda.resize(n);
    s.epsilon.resize(n);
    s.lambda_c.resize(n);

    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto cols = split(line, ',');
        if (cols.size() != header.size() || row >= n) {
            throw ConfigError("snapshot: malformed row " + std::to_string(row));
        }
        for (std::size_t c = 0; c < n_comp; ++c) {
            s.components[c][row] = to_double(cols[index_columns + c], header[index_columns + c]);
        }
        s.lambda[row] = to_double(cols[index_columns + n_comp], "lambda");
        s.epsilon[row] = to_double(cols[index_columns + n_comp + 1], "epsilon");
        s.lambda_c[row] = to_double(cols[index_columns + n_comp + 2], "lambda_c");
        ++row;
    }
    if (row != n) {
        throw ConfigError("snapshot: expected " + std::to_string(n) + " rows, found " + std::to_string(row));
    }
    return s;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.parent_path() / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::FILE* f = std::fopen(tmp.c_str(), "wb");
        if (!f) {
            throw ConfigError("cannot write " + tmp.string());
        }
        const bool ok = std::fwrite(content.data(), 1, content.size(), f) == content.size() && std::fflush(f) == 0 &&
                        ::fsync(::fileno(f)) == 0;
        std::fclose(f);
        if (!ok) {
            fs::remove(tmp);
            throw ConfigError("short write to " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

Snapshot load_snapshot(const fs::path& path) { return parse_snapshot(read_file(path)); }

std::string git_blob_hash(const std::string& content) {
    const std::string header = "blob " + std::to_string(content.size()) + '\0';
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    const bool ok = ctx && EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) &&
                    EVP_DigestUpdate(ctx, header.data(), header.size()) &&
                    EVP_DigestUpdate(ctx, content.data(), content.size()) &&
                    EVP_DigestFinal_ex(ctx, digest.data(), &length);
    EVP_MD_CTX_free(ctx);
    if (!ok) {
        throw Error("SHA-1 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        const unsigned char b = digest[i];
        out += hex[b >> 4];
        out += hex[b & 0xF];
    }
    return out;
}

std::string format_manifest(const Manifest& m) {
    json snaps = json::array();
    for (const auto& e : m.snapshots) {
        snaps.push_back({{"file", e.file}, {"step", e.step}, {"time", e.time}, {"blob_sha1", e.blob_sha1}});
    }
    const json j = {
        {"format", "mars-run/1"},
        {"model", m.model},
        {"config", m.config},
        {"resolved", m.resolved},
        {"rng", {{"seed", m.seed}, {"algorithm", m.rng_algorithm}}},
        {"warnings", m.warnings},
        {"snapshots", snaps},
        {"status", m.status},
    };
    return j.dump(2) + "\n";
}

Manifest parse_manifest(const std::string& text) {
    try {
        const json j = json::parse(text);
        Manifest m;
        m.model = j.at("model").get<std::string>();
        m.config = j.at("config").get<std::map<std::string, std::string>>();
        m.resolved = j.at("resolved").get<std::map<std::string, std::string>>();
        m.seed = j.at("rng").at("seed").get<std::uint64_t>();
        m.rng_algorithm = j.at("rng").at("algorithm").get<std::string>();
        m.warnings = j.at("warnings").get<std::vector<std::string>>();
        m.status = j.at("status").get<std::string>();
        for (const auto& e : j.at("snapshots")) {
            m.snapshots.push_back({e.at("file").get<std::string>(), e.at("step").get<std::size_t>(),
                                   e.at("time").get<double>(), e.at("blob_sha1").get<std::string>()});
        }
        return m;
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("manifest: ") + ex.what());
    }
}

Manifest load_manifest(const fs::path& path) { return parse_manifest(read_file(path)); }

std::string format_error_record(const ErrorRecord& r) {
    const json j = {{"kind", r.kind}, {"message", r.message}, {"step", r.step}, {"time", r.time},
                    {"exit_code", r.exit_code}};
    return j.dump(2) + "\n";
}

SnapshotWriter::SnapshotWriter(fs::path directory, Manifest manifest)
    : directory_(std::move(directory)), manifest_(std::move(manifest)) {
    std::error_code ec;
    fs::create_directories(directory_, ec);
    if (ec) {
        throw ConfigError("out: cannot create " + directory_.string() + ": " + ec.message());
    }
    write_manifest();
}

fs::path SnapshotWriter::write(const Snapshot& snapshot) {
    std::array<char, 32> name{};
    std::snprintf(name.data(), name.size(), "snapshot_%08zu.csv", snapshot.step);
    const std::string content = format_snapshot(snapshot);
    const fs::path path = directory_ / name.data();
    write_file_atomic(path, content);
    manifest_.snapshots.push_back({name.data(), snapshot.step, snapshot.time, git_blob_hash(content)});
    write_manifest();
    return path;
}

void SnapshotWriter::finish(const std::string& status) {
    manifest_.status = status;
    write_manifest();
}

void SnapshotWriter::write_error(const ErrorRecord& record) {
    write_file_atomic(directory_ / "error.json", format_error_record(record));
}

void SnapshotWriter::write_manifest() { write_file_atomic(directory_ / "manifest.json", format_manifest(manifest_)); }

}  // namespace mars::driver
