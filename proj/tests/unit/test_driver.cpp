#include "mars/driver/config.hpp"
#include "mars/driver/run.hpp"
#include "mars/driver/snapshot.hpp"
#include "mars/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mars;
using namespace mars::driver;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    fs::path p = fs::temp_directory_path() /
                 (std::string("mars_test_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(p);
    return p;
}

RawConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_key_values(in);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunOutcome quiet_run(const RunConfig& cfg) {
    std::ostringstream log;
    return run(cfg, log);
}

}  // namespace

TEST(Config, ParsesKeyValues) {
    const RawConfig raw = parse("# comment\n\ndt = 1e-4\n  N=64   # trailing\nA= 0.02\n");
    EXPECT_EQ(raw.size(), 3u);
    EXPECT_EQ(raw.at("dt"), "1e-4");
    EXPECT_EQ(raw.at("N"), "64");
    EXPECT_EQ(raw.at("A"), "0.02");
}

TEST(Config, MalformedLinesNameTheLine) {
    try {
        parse("dt = 1\nno equals here\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
    }
    EXPECT_THROW(parse("dt = 1\ndt = 2\n"), ConfigError);
    EXPECT_THROW(parse("= 1\n"), ConfigError);
    EXPECT_THROW(parse("dt =\n"), ConfigError);
}

TEST(Config, EmptyGivesModelDefaults) {
    const RunConfig tf = validate_config(ModelKind::thinfilm, {});
    EXPECT_EQ(tf.thinfilm.n, 128u);
    EXPECT_DOUBLE_EQ(tf.dt(), 1e-4);
    EXPECT_DOUBLE_EQ(tf.t_end, 1.0);
    ASSERT_TRUE(tf.controller.zero_seed.has_value());
    EXPECT_DOUBLE_EQ(*tf.controller.zero_seed, 2.0 / (3.0 * 1e-4));

    const RunConfig ks = validate_config(ModelKind::ks2d, {});
    EXPECT_DOUBLE_EQ(ks.dt(), 0.01);
    EXPECT_DOUBLE_EQ(ks.t_end, 100.0);
    const RunConfig hs = validate_config(ModelKind::heleshaw, {});
    EXPECT_DOUBLE_EQ(hs.dt(), 3.125e-5);
    EXPECT_DOUBLE_EQ(hs.t_end, 0.3125);
}

TEST(Config, ErrorsNameTheKey) {
    auto message = [](ModelKind kind, const std::string& text) {
        try {
            validate_config(kind, parse(text));
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message(ModelKind::thinfilm, "dt = 0\n").find("dt"), std::string::npos);
    EXPECT_NE(message(ModelKind::thinfilm, "bogus = 1\n").find("bogus"), std::string::npos);
    EXPECT_NE(message(ModelKind::ks2d, "N = 64\n").find("N"), std::string::npos);
    EXPECT_NE(message(ModelKind::heleshaw, "epsilon_u = abc\n").find("epsilon_u"), std::string::npos);
    const std::string both = message(ModelKind::ks2d, "dt = -1\nnu = 0\n");
    EXPECT_NE(both.find("dt"), std::string::npos);
    EXPECT_NE(both.find("nu"), std::string::npos);
}

TEST(Config, TinyToleranceWarns) {
    const RunConfig cfg = validate_config(ModelKind::thinfilm, parse("epsilon_u = 1e-16\n"));
    ASSERT_EQ(cfg.warnings.size(), 1u);
    EXPECT_NE(cfg.warnings[0].find("epsilon_u"), std::string::npos);
}

TEST(Config, ModelKindNames) {
    for (ModelKind k : {ModelKind::thinfilm, ModelKind::ks2d, ModelKind::heleshaw}) {
        EXPECT_EQ(parse_model_kind(to_string(k)), k);
    }
    EXPECT_THROW(parse_model_kind("navier"), ConfigError);
}

TEST(Snapshot, RoundTripIsExact) {
    Snapshot s;
    s.model = "ks2d";
    s.step = 42;
    s.time = 0.1 + 0.2;
    s.nx = 2;
    s.ny = 2;
    s.ke = 1.0 / 3.0;
    s.diagnostics = {{"u_mean", -1e-300}, {"u_max_abs", 2.5}};
    s.component_names = {"u"};
    s.components = {{0.1, -std::sqrt(2.0), 1e300, 5e-324}};
    s.lambda = {0.0, 1.0 / 7.0, 2.0, 3.0};
    s.epsilon = {1e-20, 0.0, 0.5, 7.0};
    s.lambda_c = {0.0, 2.0, 4.0, 6.0};
    const Snapshot back = parse_snapshot(format_snapshot(s));
    EXPECT_EQ(back.model, s.model);
    EXPECT_EQ(back.step, s.step);
    EXPECT_EQ(back.time, s.time);
    EXPECT_EQ(back.nx, 2u);
    EXPECT_EQ(back.ny, 2u);
    EXPECT_EQ(back.ke, s.ke);
    EXPECT_EQ(back.diagnostics, s.diagnostics);
    EXPECT_EQ(back.component_names, s.component_names);
    EXPECT_EQ(back.components, s.components);
    EXPECT_EQ(back.lambda, s.lambda);
    EXPECT_EQ(back.epsilon, s.epsilon);
    EXPECT_EQ(back.lambda_c, s.lambda_c);
    EXPECT_EQ(format_snapshot(back), format_snapshot(s));
}

TEST(Snapshot, AtomicWriteReplacesContent) {
    const fs::path dir = scratch_dir();
    fs::create_directories(dir);
    const fs::path file = dir / "a.txt";
    write_file_atomic(file, "first");
    write_file_atomic(file, "second");
    EXPECT_EQ(slurp(file), "second");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) {
        ++entries;
    }
    EXPECT_EQ(entries, 1u);
    fs::remove_all(dir);
}

TEST(Snapshot, GitBlobHash) {
    EXPECT_EQ(git_blob_hash(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
    EXPECT_EQ(git_blob_hash("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST(Snapshot, ManifestRoundTrip) {
    Manifest m;
    m.model = "heleshaw";
    m.config = {{"dt", "1e-5"}, {"S", "0.1"}};
    m.resolved = {{"dt", "1.0000000000000001e-05"}};
    m.seed = 18446744073709551615ull;
    m.rng_algorithm = "mt19937_64";
    m.warnings = {"epsilon_u: \"tiny\""};
    m.snapshots = {{"snapshot_00000000.csv", 0, 0.0, "abc"}, {"snapshot_00000100.csv", 100, 0.01, "def"}};
    m.status = "rupture";
    const Manifest back = parse_manifest(format_manifest(m));
    EXPECT_EQ(back.model, m.model);
    EXPECT_EQ(back.config, m.config);
    EXPECT_EQ(back.resolved, m.resolved);
    EXPECT_EQ(back.seed, m.seed);
    EXPECT_EQ(back.rng_algorithm, m.rng_algorithm);
    EXPECT_EQ(back.warnings, m.warnings);
    ASSERT_EQ(back.snapshots.size(), 2u);
    EXPECT_EQ(back.snapshots[1].file, "snapshot_00000100.csv");
    EXPECT_EQ(back.snapshots[1].step, 100u);
    EXPECT_EQ(back.snapshots[1].time, 0.01);
    EXPECT_EQ(back.snapshots[1].blob_sha1, "def");
    EXPECT_EQ(back.status, "rupture");
    EXPECT_THROW(parse_manifest("{not json"), Error);
}

TEST(Run, DeterministicAndComplete) {
    const fs::path base = scratch_dir();
    RunConfig cfg = validate_config(ModelKind::ks2d, parse("nx = 32\nny = 32\nt_end = 0.5\nsnapshot_every = 20\n"));
    cfg.out_dir = base / "a";
    const RunOutcome a = quiet_run(cfg);
    cfg.out_dir = base / "b";
    const RunOutcome b = quiet_run(cfg);
    ASSERT_EQ(a.exit_code, kExitOk);
    ASSERT_EQ(b.exit_code, kExitOk);
    EXPECT_EQ(a.steps, 50u);

    const Manifest ma = load_manifest(base / "a" / "manifest.json");
    const Manifest mb = load_manifest(base / "b" / "manifest.json");
    EXPECT_EQ(ma.status, "completed");
    ASSERT_EQ(ma.snapshots.size(), 4u);  // 0, 20, 40, 50
    EXPECT_EQ(ma.snapshots.back().step, 50u);
    for (std::size_t i = 0; i < ma.snapshots.size(); ++i) {
        const std::string content = slurp(base / "a" / ma.snapshots[i].file);
        EXPECT_EQ(content, slurp(base / "b" / mb.snapshots[i].file));
        EXPECT_EQ(git_blob_hash(content), ma.snapshots[i].blob_sha1);
    }
    const Snapshot last = load_snapshot(base / "a" / ma.snapshots.back().file);
    EXPECT_EQ(last.nx, 32u);
    EXPECT_EQ(last.lambda.size(), 32u * 32u);
    EXPECT_EQ(last.epsilon.size(), 32u * 32u);
    EXPECT_EQ(last.lambda_c.size(), 32u * 32u);
    EXPECT_NEAR(last.time, 0.5, 1e-12);
    EXPECT_TRUE(last.diagnostics.contains("u_mean"));
    EXPECT_EQ(ma.resolved.at("nx"), "32");
    fs::remove_all(base);
}

TEST(Run, ExplicitSchemeBlowsUp) {
    RunConfig cfg = validate_config(ModelKind::ks2d, parse("nx = 32\nny = 32\nt_end = 5\n"));
    cfg.explicit_scheme = true;
    cfg.out_dir = scratch_dir();
    const RunOutcome out = quiet_run(cfg);
    EXPECT_EQ(out.exit_code, kExitBlowUp);
    EXPECT_EQ(out.status, "blowup");
    EXPECT_TRUE(fs::exists(cfg.out_dir / "error.json"));
    EXPECT_EQ(load_manifest(cfg.out_dir / "manifest.json").status, "blowup");
    fs::remove_all(cfg.out_dir);
}

TEST(Run, ThinFilmRuptures) {
    RunConfig cfg = validate_config(ModelKind::thinfilm, {});
    cfg.out_dir = scratch_dir();
    const RunOutcome out = quiet_run(cfg);
    EXPECT_EQ(out.exit_code, kExitRupture);
    EXPECT_EQ(out.status, "rupture");
    EXPECT_LT(out.time, 1.0);
    const std::string err = slurp(cfg.out_dir / "error.json");
    EXPECT_NE(err.find("rupture"), std::string::npos);
    fs::remove_all(cfg.out_dir);
}

TEST(Run, LambdaDecaysWithoutNoise) {
    // A flat film has zero error, so every pair is divided by down_factor once per step.
    RunConfig cfg = validate_config(ModelKind::thinfilm, parse("A = 0\nN = 32\n"));
    auto model = make_model(cfg);
    Simulation sim(*model, cfg.controller);
    const DampingSpectrum start = sim.lambda();
    for (int m = 1; m <= 10; ++m) {
        sim.step();
        for (std::size_t k = 0; k < start.size(); ++k) {
            EXPECT_NEAR(sim.lambda()[k], start[k] / std::pow(1.02, m), 1e-12 * start[k]) << k;
        }
    }
}

TEST(Run, FixedLambdaKeepsInitialDamping) {
    RunConfig cfg = validate_config(ModelKind::thinfilm, parse("N = 32\n"));
    auto model = make_model(cfg);
    SimulationOptions opts;
    opts.mode = LambdaMode::fixed;
    Simulation sim(*model, cfg.controller, opts);
    const DampingSpectrum start = sim.lambda();
    for (int m = 0; m < 5; ++m) {
        sim.step();
    }
    for (std::size_t k = 0; k < start.size(); ++k) {
        EXPECT_EQ(sim.lambda()[k], start[k]);
    }
}

TEST(Run, RejectionRaisesLambdaBeforeAccepting) {
    RunConfig cfg = validate_config(ModelKind::ks2d, parse("nx = 32\nny = 32\n"));
    auto model = make_model(cfg);
    // start from zero damping so the first step is far over tolerance
    SimulationOptions reject;
    reject.reject_steps = true;
    reject.reject_factor = 10.0;
    Simulation sim(*model, model->initial_state(), DampingSpectrum(model->grid()), cfg.controller, reject);
    const StepReport r = sim.step();
    EXPECT_GT(r.rejections, 0u);
    EXPECT_FALSE(r.step_accepted);
    EXPECT_EQ(sim.steps(), 1u);
}
