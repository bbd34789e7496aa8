// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "randbasis/cli.hpp"

using namespace randbasis;

namespace {

struct Run
{
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "randbasis");
    std::ostringstream out, err;
    int const status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::string> lines(std::string const& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

std::filesystem::path scratch_dir()
{
    auto dir = std::filesystem::temp_directory_path()
               / ("randbasis_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("simulate is deterministic")
{
    std::vector<std::string> const args{"simulate", "--n",  "1000", "--k",
                                        "2",        "--alpha", "0.5", "--p",
                                        "0.1",      "--trials", "100", "--seed",
                                        "7"};
    auto const a = run(args);
    auto const b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    auto const rows = parse_sweep_csv(a.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].trials == 100);
    CHECK(rows[0].seed == 7);

    auto withworkers = args;
    withworkers.insert(withworkers.end(), {"--workers", "3"});
    CHECK(run(withworkers).out == a.out);

    auto hist = args;
    hist.push_back("--histogram");
    auto const h = run(hist);
    CHECK(h.status == 0);
    CHECK(lines(h.out).front() == "x,count,frequency,seed");
}

TEST_CASE("counts prints q-binomial coefficients")
{
    auto const r = run({"counts", "--n", "2", "--k", "2"});
    CHECK(r.status == 0);
    CHECK(lines(r.out)
          == std::vector<std::string>{"j,count", "0,1", "1,1", "2,2", "3,1",
                                      "4,1"});
    auto const d = run({"counts", "--n", "3", "--k", "3", "--j", "3",
                        "--distinct"});
    CHECK(lines(d.out)
          == std::vector<std::string>{"j,count,c_1,c_2,c_3", "3,3,1,1,1"});
}

TEST_CASE("exact reports the mean number of missing targets")
{
    auto const r = run({"exact", "--n", "4", "--k", "2", "--alpha", "0.5",
                        "--p", "0.3", "--format", "json"});
    CHECK(r.status == 0);
    auto const doc = nlohmann::json::parse(r.out);
    CHECK(doc[0]["exact_lambda"].get<double>()
          == doctest::Approx(3.5099).epsilon(1e-4));

    auto const per = run({"exact", "--n", "4", "--p", "0.5", "--per-target"});
    CHECK(lines(per.out).size() == 6);
    CHECK(lines(per.out)[0] == "j,missing_prob");

    auto const grid = run({"exact", "--n", "100", "--p-grid", "0.1,0.2,0.3"});
    CHECK(lines(grid.out).size() == 4);
}

TEST_CASE("sweep, couple and diagnose")
{
    auto const s = run({"sweep", "--n", "1000,2000", "--a-n", "-1,1",
                        "--trials", "20", "--seed", "3"});
    CHECK(s.status == 0);
    CHECK(parse_sweep_csv(s.out).size() == 4);
    CHECK(lines(s.err).size() == 4);

    auto const c = run({"couple", "--n", "4", "--p", "0.5", "--j", "4",
                        "--samples", "1000"});
    CHECK(c.status == 0);
    CHECK(lines(c.out)[0] == "n,p,j,samples,tv,one_sided_violations,seed");

    auto const d = run({"diagnose", "--n", "1000", "--delta", "1"});
    CHECK(d.status == 0);
    CHECK(lines(d.out)[1].find("window_sum") != std::string::npos);
}

TEST_CASE("errors produce a record and an exit code")
{
    auto const bad = run({"simulate", "--alpha", "1.2", "--p", "0.1"});
    CHECK(bad.status == kExitValidation);
    auto const record = nlohmann::json::parse(bad.out);
    CHECK(record["error"] == "validation");
    CHECK(record["field"] == "alpha");
    CHECK(record["message"] == "alpha out of (0,1)");

    CHECK(run({"simulate", "--bogus"}).status == kExitValidation);
    CHECK(run({}).status == kExitValidation);
    CHECK(run({"couple", "--n", "30", "--p", "0.5", "--j", "3"}).status
          == kExitValidation);

    auto const tight = run({"simulate", "--n", "1000000", "--k", "4", "--p",
                            "0.01", "--trials", "1"});
    // Default cap is 2 GiB; this one fits, so force a smaller cap.
    CHECK(tight.status == 0);
    ::setenv("RANDBASIS_MEMORY_CAP_MB", "1", 1);
    auto const capped = run({"simulate", "--n", "1000000", "--k", "4", "--p",
                             "0.01", "--trials", "1"});
    ::unsetenv("RANDBASIS_MEMORY_CAP_MB");
    CHECK(capped.status == kExitResource);
    CHECK(nlohmann::json::parse(capped.out)["error"] == "resource");

    auto const io = run({"counts", "--n", "2", "--k", "2", "--output",
                         "/nonexistent-dir/out.csv"});
    CHECK(io.status == kExitIo);
    CHECK(nlohmann::json::parse(io.out)["error"] == "io");
}

TEST_CASE("output files and config defaults")
{
    auto const dir = scratch_dir();
    auto const path = (dir / "counts.csv").string();
    auto const r = run({"counts", "--n", "2", "--k", "2", "--output", path});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream body;
    body << in.rdbuf();
    CHECK(body.str() == "j,count\n0,1\n1,1\n2,2\n3,1\n4,1\n");

    auto const config = (dir / "defaults.toml").string();
    std::ofstream(config) << "[counts]\nn = 3\nk = 3\n";
    auto const from_file = run({"--config", config, "counts"});
    CHECK(lines(from_file.out).size() == 11);
    auto const overridden = run({"--config", config, "counts", "--n", "2"});
    CHECK(lines(overridden.out).size() == 8);

    std::filesystem::remove_all(dir);
}

TEST_CASE("help exits cleanly")
{
    auto const r = run({"--help"});
    CHECK(r.status == 0);
    CHECK(r.out.find("simulate") != std::string::npos);
}
