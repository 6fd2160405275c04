#include "tsecon/pipeline/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "tsecon/error.hpp"

namespace tsecon::pipeline {

using nlohmann::ordered_json;

std::string stars_for(double p_value) {
    if (!std::isfinite(p_value)) return {};
    if (p_value < 0.01) return "***";
    if (p_value < 0.05) return "**";
    if (p_value < 0.10) return "*";
    return {};
}

Cell Cell::number(double v, int decimals, std::string stars) {
    Cell c;
    if (!std::isfinite(v)) {
        c.kind = Kind::text;
        c.text = "NA";
        return c;
    }
    c.kind = Kind::number;
    c.value = v;
    c.decimals = decimals;
    c.stars = std::move(stars);
    return c;
}

Cell Cell::str(std::string s) {
    Cell c;
    c.kind = Kind::text;
    c.text = std::move(s);
    return c;
}

std::string Cell::formatted() const {
    switch (kind) {
        case Kind::empty: return {};
        case Kind::text: return text;
        case Kind::number: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
            std::string s = buf;
            // "-0.0000" reads as a sign error
            if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
            return s + stars;
        }
    }
    return {};
}

const Row& Table::row(const std::string& label) const {
    for (const auto& r : rows) {
        if (r.label == label) return r;
    }
    throw ValidationError("table '" + id + "' has no row '" + label + "'");
}

const Cell& Table::cell(const std::string& row_label, const std::string& column) const {
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j] == column) {
            const auto& r = row(row_label);
            if (j < r.cells.size()) return r.cells[j];
        }
    }
    throw ValidationError("table '" + id + "' has no column '" + column + "'");
}

const Table& Section::table(const std::string& table_id) const {
    for (const auto& t : tables) {
        if (t.id == table_id) return t;
    }
    throw ValidationError("section '" + id + "' has no table '" + table_id + "'");
}

bool Report::has_section(const std::string& id) const {
    for (const auto& s : sections) {
        if (s.id == id) return true;
    }
    return false;
}

const Section& Report::section(const std::string& id) const {
    for (const auto& s : sections) {
        if (s.id == id) return s;
    }
    throw ValidationError("report has no section '" + id + "'");
}

std::optional<std::string> Report::meta(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return v;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

ordered_json cell_json(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::empty: return nullptr;
        case Cell::Kind::text: return {{"text", c.text}};
        case Cell::Kind::number: {
            ordered_json j = {{"value", c.value}, {"decimals", c.decimals}};
            if (!c.stars.empty()) j["stars"] = c.stars;
            j["display"] = c.formatted();
            return j;
        }
    }
    return nullptr;
}

Cell cell_from(const ordered_json& j) {
    if (j.is_null()) return Cell::blank();
    if (j.contains("text")) return Cell::str(j.at("text").get<std::string>());
    return Cell::number(j.at("value").get<double>(), j.at("decimals").get<int>(),
                        j.value("stars", std::string{}));
}

}  // namespace

std::string report_to_json(const Report& r) {
    ordered_json doc;
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : r.metadata) meta[k] = v;
    doc["metadata"] = meta;
    doc["halted"] = r.halted;
    doc["verdict"] = r.verdict;
    ordered_json sections = ordered_json::array();
    for (const auto& s : r.sections) {
        ordered_json tables = ordered_json::array();
        for (const auto& t : s.tables) {
            ordered_json rows = ordered_json::array();
            for (const auto& row : t.rows) {
                ordered_json cells = ordered_json::array();
                for (const auto& c : row.cells) cells.push_back(cell_json(c));
                rows.push_back({{"label", row.label}, {"cells", cells}});
            }
            tables.push_back({{"id", t.id},
                              {"title", t.title},
                              {"columns", t.columns},
                              {"rows", rows},
                              {"notes", t.notes}});
        }
        sections.push_back({{"id", s.id}, {"title", s.title}, {"tables", tables}, {"notes", s.notes}});
    }
    doc["sections"] = sections;
    return doc.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    try {
        const auto doc = ordered_json::parse(text);
        Report r;
        for (const auto& [k, v] : doc.at("metadata").items()) r.metadata.emplace_back(k, v.get<std::string>());
        r.halted = doc.at("halted").get<bool>();
        r.verdict = doc.at("verdict").get<std::string>();
        for (const auto& sj : doc.at("sections")) {
            Section s;
            s.id = sj.at("id").get<std::string>();
            s.title = sj.at("title").get<std::string>();
            s.notes = sj.at("notes").get<std::vector<std::string>>();
            for (const auto& tj : sj.at("tables")) {
                Table t;
                t.id = tj.at("id").get<std::string>();
                t.title = tj.at("title").get<std::string>();
                t.columns = tj.at("columns").get<std::vector<std::string>>();
                t.notes = tj.at("notes").get<std::vector<std::string>>();
                for (const auto& rj : tj.at("rows")) {
                    Row row;
                    row.label = rj.at("label").get<std::string>();
                    for (const auto& cj : rj.at("cells")) row.cells.push_back(cell_from(cj));
                    t.rows.push_back(std::move(row));
                }
                s.tables.push_back(std::move(t));
            }
            r.sections.push_back(std::move(s));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed report JSON: ") + e.what());
    }
}

}  // namespace tsecon::pipeline
