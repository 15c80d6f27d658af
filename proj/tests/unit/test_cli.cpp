#include "test_util.h"

#include <maskreg/csv.h>
#include <maskreg/metaimage.h>
#include <maskreg/overlap.h>
#include <maskreg/registration.h>

#include <json.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

namespace maskreg {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct CliRun
{
    int status;
    std::string err;
};

/// Runs the CLI with `args`, stderr captured.
CliRun cli(const fs::path& dir, const std::string& args)
{
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = std::string(MASKREG_CLI_PATH) + " " + args + " >/dev/null 2>" + err.string();
    const int rc = std::system(cmd.c_str());
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, test::file_bytes(err)};
}

Json read_json(const fs::path& p)
{
    std::ifstream in(p);
    return Json::parse(in);
}

class CliTest : public ::testing::Test
{
protected:
    static void SetUpTestSuite()
    {
        dir = new test::TempDir;
        const CliRun r = cli(dir->path(), "--out " + (dir->path() / "ph").string() +
                                           " phantom --dims 24,24,24 --subjects 3 --organs 2 --ambiguous --seed 3");
        ASSERT_EQ(r.status, 0) << r.err;
    }
    static void TearDownTestSuite() { delete dir; }

    static std::string reference_channels()
    {
        std::string s;
        for (const char* c : {"ff", "wf", "sat", "muscle"}) {
            s += (s.empty() ? "" : ",") + (dir->path() / "ph" / (std::string("reference_") + c + ".mha")).string();
        }
        return s;
    }
    static std::string register_args(const fs::path& out, const std::string& extra = "")
    {
        return "--out " + out.string() + " register --reference-channels " + reference_channels() +
            " --manifest " + (dir->path() / "ph" / "manifest.csv").string() + " " + extra;
    }

    static test::TempDir* dir;
};

test::TempDir* CliTest::dir = nullptr;

TEST_F(CliTest, PhantomWritesManifestAndCovariates)
{
    const fs::path ph = dir->path() / "ph";
    const CsvTable m = read_csv(ph / "manifest.csv");
    EXPECT_EQ(m.rows.size(), 3u);
    EXPECT_EQ(read_csv(ph / "covariates.csv").rows.size(), 3u);
    EXPECT_TRUE(fs::exists(ph / "reference_labels.mha"));
    EXPECT_TRUE(fs::exists(ph / "subject_02_truth.mha"));
    EXPECT_EQ(read_json(ph / "phantom_summary.json")["subjects"].size(), 3u);
}

TEST_F(CliTest, RegisterOutputsEnergiesAndReproducibility)
{
    const fs::path a = dir->path() / "reg_a", b = dir->path() / "reg_b";
    ASSERT_EQ(cli(dir->path(), register_args(a)).status, 0);
    ASSERT_EQ(cli(dir->path(), register_args(b, "--workers 2")).status, 0);

    const Json summary = read_json(a / "register_summary.json");
    EXPECT_EQ(summary["config"]["regularization_weight"], 0.1);
    ASSERT_EQ(summary["subjects"].size(), 3u);
    const RegistrationConfig cfg;
    for (const Json& s : summary["subjects"]) {
        const std::string id = s["subject"];
        for (const char* kind : {"field", "ff_warped", "labels_warped", "jd"}) {
            const fs::path out = a / (id + "_" + kind + ".mha");
            ASSERT_TRUE(fs::exists(out)) << out;
            EXPECT_EQ(test::file_bytes(out), test::file_bytes(b / out.filename())) << out;
        }
        const double initial = s["initial_energy"]["total"], final_energy = s["final_energy"]["total"];
        EXPECT_LT(final_energy, initial);

        ChannelStack fixed, moving;
        for (const char* c : {"ff", "wf", "sat", "muscle"}) {
            const bool mask = std::string(c) == "sat" || std::string(c) == "muscle";
            const auto kind = mask ? ChannelKind::Mask : ChannelKind::Intensity;
            fixed.add(c, read_scalar_volume(dir->path() / "ph" / (std::string("reference_") + c + ".mha")), 1.0,
                      kind);
            moving.add(c, read_scalar_volume(dir->path() / "ph" / (id + "_" + c + ".mha")), 1.0, kind);
        }
        const DisplacementField field = read_field(a / (id + "_field.mha"));
        const double recomputed = total_energy(field, prepare_stack(fixed, cfg), prepare_stack(moving, cfg),
                                               cfg.energy_params())
                                      .total;
        EXPECT_NEAR(recomputed, final_energy, 1e-6 * final_energy);
    }
    EXPECT_EQ(test::file_bytes(a / "register_manifest.csv"), test::file_bytes(b / "register_manifest.csv"));
}

TEST_F(CliTest, CohortCommandsAndComparison)
{
    const fs::path reg = dir->path() / "reg_c", base = dir->path() / "reg_nm";
    ASSERT_EQ(cli(dir->path(), register_args(reg)).status, 0);
    ASSERT_EQ(cli(dir->path(), register_args(base, "--no-masks")).status, 0);
    const std::string ref_labels = (dir->path() / "ph" / "reference_labels.mha").string();
    const std::string man = (reg / "register_manifest.csv").string();
    const fs::path d1 = dir->path() / "d1", d2 = dir->path() / "d2";
    ASSERT_EQ(cli(dir->path(), "--out " + d1.string() + " dice --reference-labels " + ref_labels + " --manifest " + man)
                  .status,
              0);
    ASSERT_EQ(cli(dir->path(), "--out " + d2.string() + " dice --reference-labels " + ref_labels + " --manifest " +
                                   (base / "register_manifest.csv").string())
                  .status,
              0);
    EXPECT_EQ(read_dice_table(d1 / "dice.csv").size(), 3u * 5u);
    EXPECT_EQ(read_csv(d1 / "hausdorff.csv").header,
              (std::vector<std::string>{"subject", "label_id", "label_name", "hausdorff_mm"}));

    const fs::path same = dir->path() / "cmp_same";
    ASSERT_EQ(cli(dir->path(), "--out " + same.string() + " compare --dice-a " + (d1 / "dice.csv").string() +
                                   " --dice-b " + (d1 / "dice.csv").string())
                  .status,
              0);
    const CsvTable sig = read_csv(same / "significance.csv");
    ASSERT_EQ(sig.rows.size(), 5u);
    for (const auto& row : sig.rows) {
        EXPECT_EQ(parse_real(row[sig.column("p_adjusted")]), 1.0);
    }
    ASSERT_EQ(cli(dir->path(), "--out " + (dir->path() / "cmp").string() + " compare --dice-a " +
                                   (d1 / "dice.csv").string() + " --dice-b " + (d2 / "dice.csv").string())
                  .status,
              0);

    const fs::path lefm = dir->path() / "lefm", agg = dir->path() / "agg", cor = dir->path() / "cor";
    ASSERT_EQ(cli(dir->path(), "--out " + lefm.string() + " lefm --reference-labels " + ref_labels + " --manifest " + man)
                  .status,
              0);
    const ScalarVolume map = read_scalar_volume(lefm / "lefm.mha");
    for (std::size_t i = 0; i < map.size(); ++i) {
        EXPECT_GE(map[i], 0.0f);
        EXPECT_LE(map[i], 100.0f);
    }
    ASSERT_EQ(cli(dir->path(), "--out " + agg.string() + " aggregate --manifest " + man + " --column jd").status, 0);
    EXPECT_TRUE(fs::exists(agg / "jd_mean.mha"));
    EXPECT_TRUE(fs::exists(agg / "jd_std.mha"));
    ASSERT_EQ(cli(dir->path(), "--out " + cor.string() + " correlate --manifest " + man + " --covariates " +
                                   (dir->path() / "ph" / "covariates.csv").string())
                  .status,
              0);
    const ScalarVolume n = read_scalar_volume(cor / "ff_warped_n.mha");
    EXPECT_EQ(*std::max_element(n.data().begin(), n.data().end()), 3.0f);

    const fs::path w = dir->path() / "warp", j = dir->path() / "jac";
    const std::string field = (reg / "subject_01_field.mha").string();
    ASSERT_EQ(cli(dir->path(), "--out " + w.string() + " warp --field " + field + " --input " +
                                   (dir->path() / "ph" / "subject_01_labels.mha").string())
                  .status,
              0);
    EXPECT_EQ(read_label_volume(w / "subject_01_labels_warped.mha"),
              read_label_volume(reg / "subject_01_labels_warped.mha"));
    ASSERT_EQ(cli(dir->path(), "--out " + j.string() + " jacobian --field " + field).status, 0);
    EXPECT_EQ(test::file_bytes(j / "subject_01_jd.mha"), test::file_bytes(reg / "subject_01_jd.mha"));
}

TEST_F(CliTest, SweepCsvRecomputesFromRunTables)
{
    const fs::path out = dir->path() / "sweep";
    const std::string args = "--out " + out.string() + " sweep --reference-channels " + reference_channels() +
        " --manifest " + (dir->path() / "ph" / "manifest.csv").string() + " --reference-labels " +
        (dir->path() / "ph" / "reference_labels.mha").string() + " --values 0.05,0.3";
    ASSERT_EQ(cli(dir->path(), args).status, 0);
    const CsvTable t = read_csv(out / "sweep.csv");
    ASSERT_EQ(t.rows.size(), 2u);
    for (const auto& row : t.rows) {
        const DiceTable d = read_dice_table(out / row[t.column("run")] / "dice.csv");
        EXPECT_EQ(parse_real(row[t.column("mean_dice")]), mean_dice(d));
    }
}

TEST_F(CliTest, FailuresEmitOneLineErrorRecord)
{
    auto check = [&](const std::string& args, const std::string& kind) {
        const CliRun r = cli(dir->path(), args);
        EXPECT_NE(r.status, 0) << args;
        ASSERT_FALSE(r.err.empty()) << args;
        EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
        const Json rec = Json::parse(r.err);
        EXPECT_EQ(rec["status"], "error");
        EXPECT_EQ(rec["kind"], kind) << r.err;
        EXPECT_FALSE(rec["message"].get<std::string>().empty());
    };
    const fs::path out = dir->path() / "bad";
    check("--out " + out.string() + " register --reference-channels nope.mha --moving-channels also_nope.mha",
          "missing_input");

    const fs::path cfg = dir->path() / "bad.json";
    std::ofstream(cfg) << R"({"regularization_weight": 0.1, "typo": 1})";
    check(register_args(out, "--config " + cfg.string()), "config");

    const fs::path mismatched = dir->path() / "small";
    ASSERT_EQ(cli(dir->path(), "--out " + mismatched.string() + " phantom --dims 16,16,16").status, 0);
    std::string moving;
    for (const char* c : {"ff", "wf", "sat", "muscle"}) {
        moving += (moving.empty() ? "" : ",") + (mismatched / (std::string("subject_01_") + c + ".mha")).string();
    }
    check("--out " + out.string() + " register --reference-channels " + reference_channels() +
              " --moving-channels " + moving,
          "invalid_input");
    check("--out " + out.string() + " dice", "usage");
}

} // namespace
} // namespace maskreg
