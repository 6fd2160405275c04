#include <algorithm>
#include <sstream>

#include "tsecon/error.hpp"
#include "tsecon/pipeline/report.hpp"

namespace tsecon::pipeline {

namespace {

std::string pad_right(const std::string& s, std::size_t w) {
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

std::string pad_left(const std::string& s, std::size_t w) {
    return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

std::string render_text(const Report& r) {
    std::ostringstream out;
    for (const auto& [k, v] : r.metadata) out << pad_right(k, 22) << v << "\n";
    for (const auto& s : r.sections) {
        out << "\n" << s.title << "\n" << std::string(s.title.size(), '=') << "\n";
        for (const auto& t : s.tables) {
            out << "\n" << t.title << "\n";
            std::size_t label_w = 0;
            for (const auto& row : t.rows) label_w = std::max(label_w, row.label.size());
            std::vector<std::size_t> w(t.columns.size());
            for (std::size_t j = 0; j < t.columns.size(); ++j) {
                w[j] = t.columns[j].size();
                for (const auto& row : t.rows) {
                    if (j < row.cells.size()) w[j] = std::max(w[j], row.cells[j].formatted().size());
                }
            }
            std::ostringstream line;
            line << pad_right("", label_w);
            for (std::size_t j = 0; j < t.columns.size(); ++j) line << "  " << pad_left(t.columns[j], w[j]);
            const std::string header = line.str();
            out << header << "\n" << std::string(header.size(), '-') << "\n";
            for (const auto& row : t.rows) {
                out << pad_right(row.label, label_w);
                for (std::size_t j = 0; j < t.columns.size(); ++j) {
                    const std::string v = j < row.cells.size() ? row.cells[j].formatted() : "";
                    out << "  " << pad_left(v, w[j]);
                }
                out << "\n";
            }
            for (const auto& n : t.notes) out << "Note: " << n << "\n";
        }
        for (const auto& n : s.notes) out << "\n" << n << "\n";
    }
    if (!r.verdict.empty()) out << "\n" << (r.halted ? "HALTED: " : "Verdict: ") << r.verdict << "\n";
    return out.str();
}

std::string md_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|' || c == '*') out += '\\';
        out += c;
    }
    return out;
}

std::string render_markdown(const Report& r) {
    std::ostringstream out;
    out << "# Analysis report\n\n";
    out << "| Key | Value |\n|---|---|\n";
    for (const auto& [k, v] : r.metadata) out << "| " << md_escape(k) << " | " << md_escape(v) << " |\n";
    for (const auto& s : r.sections) {
        out << "\n## " << s.title << "\n";
        for (const auto& t : s.tables) {
            out << "\n### " << t.title << "\n\n|  |";
            for (const auto& c : t.columns) out << " " << md_escape(c) << " |";
            out << "\n|---|";
            for (std::size_t j = 0; j < t.columns.size(); ++j) out << "---:|";
            out << "\n";
            for (const auto& row : t.rows) {
                out << "| " << md_escape(row.label) << " |";
                for (std::size_t j = 0; j < t.columns.size(); ++j) {
                    out << " " << (j < row.cells.size() ? md_escape(row.cells[j].formatted()) : "") << " |";
                }
                out << "\n";
            }
            for (const auto& n : t.notes) out << "\n_Note:_ " << md_escape(n) << "\n";
        }
        for (const auto& n : s.notes) out << "\n" << md_escape(n) << "\n";
    }
    if (!r.verdict.empty()) {
        out << "\n**" << (r.halted ? "Halted" : "Verdict") << ":** " << md_escape(r.verdict) << "\n";
    }
    return out.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string render_csv(const Report& r) {
    std::ostringstream out;
    out << "section,table,row,column,value,stars\n";
    for (const auto& [k, v] : r.metadata) {
        out << "metadata,metadata," << csv_field(k) << ",value," << csv_field(v) << ",\n";
    }
    for (const auto& s : r.sections) {
        for (const auto& t : s.tables) {
            for (const auto& row : t.rows) {
                for (std::size_t j = 0; j < t.columns.size() && j < row.cells.size(); ++j) {
                    const Cell& c = row.cells[j];
                    if (c.kind == Cell::Kind::empty) continue;
                    std::string value = c.kind == Cell::Kind::number ? Cell::number(c.value, c.decimals).formatted()
                                                                     : c.text;
                    out << s.id << "," << t.id << "," << csv_field(row.label) << "," << csv_field(t.columns[j])
                        << "," << csv_field(value) << "," << c.stars << "\n";
                }
            }
        }
    }
    if (!r.verdict.empty()) {
        out << "verdict,verdict," << (r.halted ? "halted" : "completed") << ",value," << csv_field(r.verdict)
            << ",\n";
    }
    return out.str();
}

}  // namespace

std::string render_report(const Report& r, OutputFormat format) {
    switch (format) {
        case OutputFormat::text: return render_text(r);
        case OutputFormat::markdown: return render_markdown(r);
        case OutputFormat::csv: return render_csv(r);
        case OutputFormat::json: return report_to_json(r);
    }
    throw ValidationError("unsupported output format");
}

std::string render_report(const Report& r, const std::string& format) {
    return render_report(r, parse_output_format(format));
}

}  // namespace tsecon::pipeline
