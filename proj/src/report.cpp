// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#include "randbasis/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "json.hpp"
#include "randbasis/error.hpp"

namespace randbasis {

Format parse_format(std::string const& text)
{
    if (text == "csv")
        return Format::Csv;
    if (text == "json")
        return Format::Json;
    throw ValidationError("format", "unknown format '" + text + "'");
}

std::string format_double(double value)
{
    if (!std::isfinite(value))
        return {};
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

struct CsvCell
{
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(BigNumber const& v) const { return v.digits; }
    std::string operator()(std::string const& v) const
    {
        if (v.find_first_of(",\"\n\r") == std::string::npos)
            return v;
        std::string quoted = "\"";
        for (char c : v) {
            if (c == '"')
                quoted += '"';
            quoted += c;
        }
        return quoted + '"';
    }
};

struct JsonCell
{
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const
    {
        return std::isfinite(v) ? format_double(v) : "null";
    }
    std::string operator()(BigNumber const& v) const
    {
        // Counts wider than 64 bits would lose precision in most JSON
        // readers, so they travel as strings.
        std::uint64_t parsed = 0;
        auto const* end = v.digits.data() + v.digits.size();
        auto const [ptr, ec] = std::from_chars(v.digits.data(), end, parsed);
        if (ec == std::errc{} && ptr == end)
            return v.digits;
        return nlohmann::json(v.digits).dump();
    }
    std::string operator()(std::string const& v) const
    {
        return nlohmann::json(v).dump();
    }
};

}  // namespace

std::string serialize(Table const& table, Format format)
{
    std::string out;
    if (format == Format::Csv) {
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out += (c ? "," : "") + table.columns[c];
        out += '\n';
        for (auto const& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c)
                    out += ',';
                out += std::visit(CsvCell{}, row[c]);
            }
            out += '\n';
        }
        return out;
    }

    out += '[';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out += r ? ",\n {" : "\n {";
        auto const& row = table.rows[r];
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c)
                out += ", ";
            out += nlohmann::json(table.columns[c]).dump() + ": "
                   + std::visit(JsonCell{}, row[c]);
        }
        out += '}';
    }
    out += table.rows.empty() ? "]\n" : "\n]\n";
    return out;
}

std::vector<std::string> const& sweep_columns()
{
    static std::vector<std::string> const columns{
        "n",       "k",        "alpha",        "a_n",
        "p",       "mode",     "trials",       "basis_prob_hat",
        "ci_lo",   "ci_hi",    "exact_lambda", "asympt_lambda",
        "limit_prob", "tv_hat", "seed",        "error"};
    return columns;
}

namespace {

Cell optional_cell(std::optional<double> const& v)
{
    return v ? Cell{*v} : Cell{};
}

}  // namespace

Table sweep_table(std::vector<SweepRow> const& rows)
{
    Table table{sweep_columns(), {}};
    for (auto const& r : rows) {
        table.rows.push_back({r.n, std::uint64_t{r.k}, r.alpha, r.a_n, r.p,
                              to_string(r.mode), r.trials, r.basis_prob_hat,
                              r.ci_lo, r.ci_hi, optional_cell(r.exact_lambda),
                              optional_cell(r.asympt_lambda), r.limit_prob,
                              optional_cell(r.tv_hat), r.seed, r.error});
    }
    return table;
}

namespace {

std::vector<std::vector<std::string>> split_csv(std::string const& text)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool pending = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char const c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
            continue;
        }
        pending = true;
        if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            record.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(record));
            record.clear();
            pending = false;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted)
        throw ValidationError("csv", "unterminated quoted field");
    if (pending) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

double parse_real(std::string const& text)
{
    if (text.empty())
        return std::numeric_limits<double>::quiet_NaN();
    char* end = nullptr;
    double const value = std::strtod(text.c_str(), &end);
    if (*end != '\0')
        throw ValidationError("csv", "not a number: '" + text + "'");
    return value;
}

std::uint64_t parse_count(std::string const& text)
{
    std::uint64_t value = 0;
    auto const* end = text.data() + text.size();
    auto const [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ValidationError("csv", "not an integer: '" + text + "'");
    return value;
}

std::optional<double> parse_optional(std::string const& text)
{
    if (text.empty())
        return std::nullopt;
    return parse_real(text);
}

}  // namespace

std::vector<SweepRow> parse_sweep_csv(std::string const& text)
{
    auto const records = split_csv(text);
    if (records.empty())
        throw ValidationError("csv", "missing header");
    std::map<std::string, std::size_t> index;
    for (std::size_t c = 0; c < records[0].size(); ++c)
        index[records[0][c]] = c;
    for (auto const& name : sweep_columns())
        if (!index.contains(name))
            throw ValidationError("csv", "missing column '" + name + "'");

    std::vector<SweepRow> rows;
    for (std::size_t r = 1; r < records.size(); ++r) {
        auto const& rec = records[r];
        if (rec.size() != records[0].size())
            throw ValidationError("csv", "ragged row " + std::to_string(r));
        auto get = [&](char const* name) -> std::string const& {
            return rec[index.at(name)];
        };
        SweepRow row;
        row.n = parse_count(get("n"));
        row.k = static_cast<unsigned>(parse_count(get("k")));
        row.alpha = parse_real(get("alpha"));
        row.a_n = parse_real(get("a_n"));
        row.p = parse_real(get("p"));
        row.mode = parse_mode(get("mode"));
        row.trials = parse_count(get("trials"));
        row.basis_prob_hat = parse_real(get("basis_prob_hat"));
        row.ci_lo = parse_real(get("ci_lo"));
        row.ci_hi = parse_real(get("ci_hi"));
        row.exact_lambda = parse_optional(get("exact_lambda"));
        row.asympt_lambda = parse_optional(get("asympt_lambda"));
        row.limit_prob = parse_real(get("limit_prob"));
        row.tv_hat = parse_optional(get("tv_hat"));
        row.seed = parse_count(get("seed"));
        row.error = get("error");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> parse_sweep_json(std::string const& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (nlohmann::json::exception const& e) {
        throw ValidationError("json", e.what());
    }
    if (!doc.is_array())
        throw ValidationError("json", "expected an array of records");

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    auto real = [&](nlohmann::json const& v) {
        return v.is_null() ? nan : v.get<double>();
    };
    auto optional = [&](nlohmann::json const& v) -> std::optional<double> {
        if (v.is_null())
            return std::nullopt;
        return v.get<double>();
    };

    std::vector<SweepRow> rows;
    try {
        for (auto const& rec : doc) {
            SweepRow row;
            row.n = rec.at("n").get<std::uint64_t>();
            row.k = rec.at("k").get<unsigned>();
            row.alpha = real(rec.at("alpha"));
            row.a_n = real(rec.at("a_n"));
            row.p = real(rec.at("p"));
            row.mode = parse_mode(rec.at("mode").get<std::string>());
            row.trials = rec.at("trials").get<std::uint64_t>();
            row.basis_prob_hat = real(rec.at("basis_prob_hat"));
            row.ci_lo = real(rec.at("ci_lo"));
            row.ci_hi = real(rec.at("ci_hi"));
            row.exact_lambda = optional(rec.at("exact_lambda"));
            row.asympt_lambda = optional(rec.at("asympt_lambda"));
            row.limit_prob = real(rec.at("limit_prob"));
            row.tv_hat = optional(rec.at("tv_hat"));
            row.seed = rec.at("seed").get<std::uint64_t>();
            row.error = rec.at("error").get<std::string>();
            rows.push_back(std::move(row));
        }
    } catch (nlohmann::json::exception const& e) {
        throw ValidationError("json", e.what());
    }
    return rows;
}

namespace {

bool same_real(double a, double b)
{
    return (std::isnan(a) && std::isnan(b)) || a == b;
}

bool same_optional(std::optional<double> const& a,
                   std::optional<double> const& b)
{
    if (a.has_value() != b.has_value())
        return false;
    return !a || same_real(*a, *b);
}

}  // namespace

bool same_row(SweepRow const& a, SweepRow const& b)
{
    return a.n == b.n && a.k == b.k && same_real(a.alpha, b.alpha)
           && same_real(a.a_n, b.a_n) && same_real(a.p, b.p)
           && a.mode == b.mode && a.trials == b.trials
           && same_real(a.basis_prob_hat, b.basis_prob_hat)
           && same_real(a.ci_lo, b.ci_lo) && same_real(a.ci_hi, b.ci_hi)
           && same_optional(a.exact_lambda, b.exact_lambda)
           && same_optional(a.asympt_lambda, b.asympt_lambda)
           && same_real(a.limit_prob, b.limit_prob)
           && same_optional(a.tv_hat, b.tv_hat) && a.seed == b.seed
           && a.error == b.error;
}

}  // namespace randbasis
