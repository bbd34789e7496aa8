// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "randbasis/experiments.hpp"

namespace randbasis {

enum class Format { Csv, Json };

Format parse_format(std::string const& text);

//! Decimal integer too wide for a machine word (exact counts).
struct BigNumber
{
    std::string digits;
};

//! A report cell; monostate renders as an empty CSV cell / JSON null, as do
//! non-finite doubles.
using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double,
                          std::string, BigNumber>;

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

//! 17 significant digits, so doubles survive a text round trip exactly.
std::string format_double(double value);

//! CSV: header line then one line per row, LF endings. JSON: array of
//! records keyed by the column names, in column order.
std::string serialize(Table const& table, Format format);

//! Stable sweep/simulate column order.
std::vector<std::string> const& sweep_columns();

Table sweep_table(std::vector<SweepRow> const& rows);

std::vector<SweepRow> parse_sweep_csv(std::string const& text);
std::vector<SweepRow> parse_sweep_json(std::string const& text);

//! Field-wise equality with NaN equal to NaN.
bool same_row(SweepRow const& a, SweepRow const& b);

}  // namespace randbasis
