// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "randbasis/model.hpp"
#include "randbasis/report.hpp"
#include "randbasis/rng.hpp"

namespace randbasis {

enum class Subcommand { Simulate, Exact, Sweep, Counts, Couple, Diagnose };

//! Parsed command line. List-valued fields feed the sweep grid; other
//! subcommands read the first entry.
struct RunConfig
{
    Subcommand subcommand = Subcommand::Simulate;
    std::vector<std::uint64_t> n{1000};
    std::vector<unsigned> k{2};
    std::vector<double> alpha{0.5};
    std::vector<double> a_n{0.0};
    std::vector<Mode> mode{Mode::Truncated};
    std::optional<double> p;
    std::vector<double> p_grid;
    std::optional<std::uint64_t> fixed_size;
    std::uint64_t trials = 1000;
    std::uint64_t seed = kDefaultSeed;
    std::optional<std::int64_t> j;
    std::uint64_t samples = 100000;
    std::optional<double> delta;
    bool distinct = false;
    bool per_target = false;
    bool histogram = false;
    unsigned workers = 0;
    Format format = Format::Csv;
    std::string output_path;
};

struct DispatchResult
{
    int exit_code = 0;
    std::string report;
};

inline constexpr int kExitValidation = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitIo = 4;

/*!
 * Run one subcommand and serialize its report.
 *
 * On failure the report is a one-line JSON error record and the exit code is
 * 2 (validation), 3 (resource cap) or 4 (I/O). Per-row progress goes to
 * `log` when given.
 */
DispatchResult dispatch(RunConfig const& config, std::ostream* log = nullptr);

//! Parse argv (argv[0] is the program name). Throws ValidationError on bad
//! input. Returns nullopt after printing help to `out`.
std::optional<RunConfig> parse_args(std::vector<std::string> const& args,
                                    std::ostream& out);

//! Whole command-line pipeline: parse, dispatch, write the report to
//! config.output_path (atomically) or to `out`. Returns the exit status.
int run_cli(std::vector<std::string> const& args, std::ostream& out,
            std::ostream& err);

//! Writes via a temporary sibling file and rename; throws IoError.
void write_atomically(std::string const& path, std::string const& contents);

}  // namespace randbasis
