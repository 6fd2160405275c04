#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsecon/pipeline/config.hpp"

namespace tsecon::pipeline {

/// Star suffix for a p-value: "***" below 0.01, "**" below 0.05, "*" below 0.10.
[[nodiscard]] std::string stars_for(double p_value);

/// One table cell: a number kept at full precision plus its display rule, or text.
struct Cell {
    enum class Kind { empty, number, text };

    Kind kind = Kind::empty;
    double value = 0.0;
    int decimals = 4;
    std::string stars;
    std::string text;

    static Cell number(double v, int decimals = 4, std::string stars = {});
    static Cell integer(long long v) { return number(static_cast<double>(v), 0); }
    static Cell str(std::string s);
    static Cell blank() { return {}; }

    /// Rounded display form, e.g. "-3.1416**".
    [[nodiscard]] std::string formatted() const;

    friend bool operator==(const Cell&, const Cell&) = default;
};

struct Row {
    std::string label;
    std::vector<Cell> cells;
    friend bool operator==(const Row&, const Row&) = default;
};

struct Table {
    std::string id;
    std::string title;
    std::vector<std::string> columns;  ///< excludes the row-label column
    std::vector<Row> rows;
    std::vector<std::string> notes;

    [[nodiscard]] const Row& row(const std::string& label) const;
    [[nodiscard]] const Cell& cell(const std::string& row_label, const std::string& column) const;

    friend bool operator==(const Table&, const Table&) = default;
};

struct Section {
    std::string id;  ///< one of kStages
    std::string title;
    std::vector<Table> tables;
    std::vector<std::string> notes;

    [[nodiscard]] const Table& table(const std::string& table_id) const;

    friend bool operator==(const Section&, const Section&) = default;
};

struct Report {
    std::vector<std::pair<std::string, std::string>> metadata;  ///< insertion ordered
    std::vector<Section> sections;
    bool halted = false;
    std::string verdict;

    [[nodiscard]] bool has_section(const std::string& id) const;
    [[nodiscard]] const Section& section(const std::string& id) const;
    [[nodiscard]] std::optional<std::string> meta(const std::string& key) const;

    friend bool operator==(const Report&, const Report&) = default;
};

[[nodiscard]] std::string report_to_json(const Report& r);
/// Inverse of report_to_json. Throws ValidationError on malformed input.
[[nodiscard]] Report report_from_json(const std::string& text);

/// Deterministic rendering in any of the supported formats.
[[nodiscard]] std::string render_report(const Report& r, OutputFormat format);
[[nodiscard]] std::string render_report(const Report& r, const std::string& format);

}  // namespace tsecon::pipeline
