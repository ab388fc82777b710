#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("socinf_cli_") + info->name() + "_" +
                                            std::to_string(::getpid()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    CliRun run(const std::string& args) const {
        const auto err_path = dir_ / "stderr.txt";
        const std::string cmd = std::string(SOCINF_CLI) + " " + args + " 2>" + err_path.string();
        CliRun r{0, {}, {}};
        FILE* pipe = ::popen(cmd.c_str(), "r");
        std::array<char, 4096> buf{};
        while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) {
            r.out.append(buf.data(), n);
        }
        const int status = ::pclose(pipe);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.err = slurp(err_path);
        return r;
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }

    void write(const fs::path& p, const std::string& text) const {
        fs::create_directories(p.parent_path());
        std::ofstream(p, std::ios::binary) << text;
    }

    fs::path path(const std::string& rel) const { return dir_ / rel; }
    std::string arg(const std::string& rel) const { return path(rel).string(); }

    // Small timed world; every subject has friends and several actions.
    void write_small_dataset(const std::string& rel) const {
        write(path(rel + "/graph.tsv"), "a\tb\nb\tc\nc\ta\na\tc\nd\ta\nb\td\n");
        std::string actions;
        const char* subjects[] = {"a", "b", "c", "d"};
        for (int e = 0; e < 12; ++e) {
            for (int s = 0; s < 4; ++s) {
                if ((e + s) % 3 != 0) {
                    actions += std::string(subjects[s]) + "\te" + std::to_string(e) + "\t" +
                               std::to_string((e * 7 + s * 3) % 5) + "\n";
                }
            }
        }
        write(path(rel + "/actions.tsv"), actions);
    }

    fs::path dir_;
};

std::string field(const std::string& out, const std::string& key) {
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind(key + "\t", 0) == 0) {
            return line.substr(key.size() + 1);
        }
    }
    return {};
}

TEST_F(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("synth --n 1 --out " + arg("w")).code, 2);
    EXPECT_EQ(run("synth --kind sideways --out " + arg("w")).code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, SynthIsByteReproducible) {
    const auto r = run("synth --kind independent --n 40 --avg-in-degree 4 --actions 50 --seed 5 --out " + arg("w1"));
    ASSERT_EQ(r.code, 0) << r.err;
    run("synth --kind independent --n 40 --avg-in-degree 4 --actions 50 --seed 5 --out " + arg("w2"));
    for (const char* f : {"graph.tsv", "actions.tsv"}) {
        ASSERT_TRUE(fs::exists(path("w1") / f));
        EXPECT_EQ(slurp(path("w1") / f), slurp(path("w2") / f)) << f;
    }
    ASSERT_TRUE(fs::exists(path("w1/manifest.txt")));
    EXPECT_NE(slurp(path("w1/manifest.txt")).find("edge\t"), std::string::npos);
}

TEST_F(Cli, DependentManifestRecordsPairs) {
    const auto r = run("synth --kind dependent --pairs 5 --n 40 --avg-in-degree 4 --actions 30 --seed 2 --out " +
                       arg("w"));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto manifest = slurp(path("w/manifest.txt"));
    std::size_t pairs = 0;
    for (std::size_t pos = 0; (pos = manifest.find("\npair\t", pos)) != std::string::npos; ++pos) {
        ++pairs;
    }
    EXPECT_EQ(pairs, 5u);
}

TEST_F(Cli, IngestKeepsConnectedActiveData) {
    write_small_dataset("raw");
    const auto r = run("ingest --graph " + arg("raw/graph.tsv") + " --actions " + arg("raw/actions.tsv") +
                       " --min-actions 0 --out " + arg("data"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(field(r.out, "subjects"), "4");
    EXPECT_EQ(field(r.out, "edges"), "6");
    EXPECT_EQ(field(r.out, "removed_few_actions"), "0");
    EXPECT_EQ(field(r.out, "removed_no_edges"), "0");
    EXPECT_TRUE(fs::exists(path("data/summary.txt")));
    EXPECT_NE(slurp(path("data/manifest.txt")).find("seed\t"), std::string::npos);
}

TEST_F(Cli, IngestEmptyInput) {
    write(path("empty/graph.tsv"), "");
    write(path("empty/actions.tsv"), "");
    const auto r = run("ingest --graph " + arg("empty/graph.tsv") + " --actions " + arg("empty/actions.tsv") +
                       " --out " + arg("data"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("empty after filtering"), std::string::npos) << r.err;
    EXPECT_EQ(run("ingest --graph " + arg("missing.tsv") + " --actions " + arg("missing.tsv") + " --out " +
                  arg("data"))
                  .code,
              2);
}

TEST_F(Cli, IngestRequiresExplicitTimestampFree) {
    write(path("raw/graph.tsv"), "a\tb\nb\ta\n");
    write(path("raw/actions.tsv"), "a\te1\nb\te1\n");
    const std::string base =
        "ingest --graph " + arg("raw/graph.tsv") + " --actions " + arg("raw/actions.tsv") + " --min-actions 0 ";
    EXPECT_EQ(run(base + "--out " + arg("d1")).code, 2);
    EXPECT_EQ(run(base + "--timestamp-free --out " + arg("d2")).code, 0);
    // Expectation-maximization needs ordering.
    const auto r = run("fit --data " + arg("d2") + " --model icem --timestamp-free --out " + arg("m"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("order"), std::string::npos) << r.err;
}

TEST_F(Cli, PredictStarWorld) {
    write(path("fig/graph.tsv"), "u1\tu5\nu2\tu5\nu3\tu5\nu4\tu5\n");
    write(path("fig/actions.tsv"), "u1\ta\t1\nu2\ta\t1\nu4\ta\t2\nu3\tb\t1\n");
    write(path("model/model.tsv"), "u1\tu5\t0.7\nu2\tu5\t0.4\nu3\tu5\t0.9\nu4\tu5\t0.2\n");
    const auto r = run("predict --model " + arg("model/model.tsv") + " --data " + arg("fig") +
                       " --subject u5 --action a --theta 0.5");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(field(r.out, "score")), 0.856, 1e-12);
    EXPECT_EQ(field(r.out, "decision"), "active");
    EXPECT_EQ(field(r.out, "threshold"), "0.5");
    EXPECT_EQ(field(r.out, "active_friends"), "u1,u2,u4");

    const auto lonely = run("predict --model " + arg("model/model.tsv") + " --data " + arg("fig") +
                            " --subject u1 --action a");
    ASSERT_EQ(lonely.code, 0) << lonely.err;
    EXPECT_EQ(field(lonely.out, "score"), "0");
    EXPECT_EQ(field(lonely.out, "decision"), "inactive");

    const auto unknown = run("predict --model " + arg("model/model.tsv") + " --data " + arg("fig") +
                             " --subject nobody --action a");
    EXPECT_EQ(unknown.code, 2);
    EXPECT_NE(unknown.err.find("unknown subject"), std::string::npos);
}

TEST_F(Cli, FitWritesModelsDeterministically) {
    write_small_dataset("data");
    const auto bd = run("fit --data " + arg("data") + " --model bd --out " + arg("bd"));
    ASSERT_EQ(bd.code, 0) << bd.err;
    const auto edges = slurp(path("bd/model.tsv"));
    EXPECT_EQ(std::count(edges.begin(), edges.end(), '\n'), 6);

    const auto d1 = run("fit --data " + arg("data") + " --model dnn --epochs 2 --seed 3 --out " + arg("dnn1"));
    ASSERT_EQ(d1.code, 0) << d1.err;
    run("fit --data " + arg("data") + " --model dnn --epochs 2 --seed 3 --out " + arg("dnn2"));
    const auto model = slurp(path("dnn1/model.mlp"));
    EXPECT_NE(model.find("layers 8 128 64 32 1\n"), std::string::npos);
    EXPECT_EQ(model, slurp(path("dnn2/model.mlp")));
    const auto manifest = slurp(path("dnn1/manifest.txt"));
    EXPECT_NE(manifest.find("seed\t3"), std::string::npos);
    EXPECT_NE(manifest.find("wall_seconds\t"), std::string::npos);

    const auto em = run("fit --data " + arg("data") + " --model icem --out " + arg("em"));
    ASSERT_EQ(em.code, 0) << em.err;
    EXPECT_TRUE(fs::exists(path("em/ll_trace.txt")));

    // A model fit on other subjects is refused, citing both manifests.
    write(path("other/graph.tsv"), "x\ty\ny\tx\n");
    write(path("other/actions.tsv"), "x\te1\t1\n");
    write(path("other/manifest.txt"), "subcommand\tingest\n");
    const auto mismatch = run("predict --model " + arg("dnn1/model.mlp") + " --data " + arg("other") +
                              " --subject x --action e1");
    EXPECT_EQ(mismatch.code, 2);
    EXPECT_NE(mismatch.err.find("dnn1/manifest.txt"), std::string::npos) << mismatch.err;
    EXPECT_NE(mismatch.err.find("other/manifest.txt"), std::string::npos) << mismatch.err;
}

TEST_F(Cli, EvalTwoFoldIsReproducible) {
    write_small_dataset("data");
    const std::string base = "eval --data " + arg("data") + " --models all --k 2 --epochs 2 --seed 4 --out ";
    const auto r1 = run(base + arg("e1"));
    ASSERT_EQ(r1.code, 0) << r1.err;
    run(base + arg("e2"));
    EXPECT_EQ(slurp(path("e1/report.txt")), slurp(path("e2/report.txt")));
    EXPECT_EQ(slurp(path("e1/report.tsv")), slurp(path("e2/report.tsv")));
    const auto text = slurp(path("e1/report.txt"));
    for (const char* model : {"DNN", "BD", "JI", "PC-B", "PC-J", "IC"}) {
        EXPECT_NE(text.find(std::string("\n") + model + " "), std::string::npos) << model;
    }
    EXPECT_NE(slurp(path("e1/report.tsv")).find("IC\taccuracy\t1\t"), std::string::npos);
}

}  // namespace
