#include "tsecon/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "tsecon/error.hpp"
#include "tsecon/probability.hpp"

namespace tsecon {

TimeSeries::TimeSeries(std::string name, int start_year, std::vector<double> values)
    : name_(std::move(name)), start_year_(start_year), values_(std::move(values)) {
    if (name_.empty()) throw ValidationError("time series name must not be empty");
    if (values_.empty()) throw DataError("time series '" + name_ + "' has no observations");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DataError("time series '" + name_ + "' has a non-finite value in year " +
                            std::to_string(start_year_ + static_cast<int>(i)));
        }
    }
}

double TimeSeries::at_year(int year) const {
    if (year < start_year_ || year > end_year()) {
        throw ValidationError("year " + std::to_string(year) + " outside series '" + name_ + "'");
    }
    return values_[static_cast<std::size_t>(year - start_year_)];
}

TimeSeries TimeSeries::renamed(std::string name) const {
    return TimeSeries(std::move(name), start_year_, values_);
}

TimeSeries TimeSeries::slice(int first_year, int last_year) const {
    if (first_year < start_year_ || last_year > end_year() || first_year > last_year) {
        throw ValidationError("invalid slice [" + std::to_string(first_year) + ", " +
                              std::to_string(last_year) + "] of series '" + name_ + "'");
    }
    const auto b = values_.begin() + (first_year - start_year_);
    const auto e = values_.begin() + (last_year - start_year_ + 1);
    return TimeSeries(name_, first_year, std::vector<double>(b, e));
}

Dataset::Dataset(std::vector<TimeSeries> series) {
    std::set<std::string> seen;
    for (const auto& s : series) {
        if (!seen.insert(s.name()).second) {
            throw ValidationError("duplicate series name '" + s.name() + "'");
        }
    }
    if (series.empty()) return;
    int first = series.front().start_year();
    int last = series.front().end_year();
    for (const auto& s : series) {
        first = std::max(first, s.start_year());
        last = std::min(last, s.end_year());
    }
    if (first > last) throw DataError("series share no common years");
    series_.reserve(series.size());
    for (const auto& s : series) series_.push_back(s.slice(first, last));
}

bool Dataset::contains(const std::string& name) const {
    return std::any_of(series_.begin(), series_.end(),
                       [&](const TimeSeries& s) { return s.name() == name; });
}

const TimeSeries& Dataset::at(const std::string& name) const {
    for (const auto& s : series_) {
        if (s.name() == name) return s;
    }
    throw ValidationError("no series named '" + name + "'");
}

std::vector<std::string> Dataset::names() const {
    std::vector<std::string> out;
    out.reserve(series_.size());
    for (const auto& s : series_) out.push_back(s.name());
    return out;
}

std::size_t Dataset::n_obs() const noexcept { return series_.empty() ? 0 : series_.front().size(); }

int Dataset::first_year() const {
    if (series_.empty()) throw ValidationError("empty dataset");
    return series_.front().start_year();
}

int Dataset::last_year() const {
    if (series_.empty()) throw ValidationError("empty dataset");
    return series_.front().end_year();
}

Dataset Dataset::with(TimeSeries s) const {
    std::vector<TimeSeries> out;
    bool replaced = false;
    for (const auto& existing : series_) {
        if (existing.name() == s.name()) {
            out.push_back(s);
            replaced = true;
        } else {
            out.push_back(existing);
        }
    }
    if (!replaced) out.push_back(std::move(s));
    return Dataset(std::move(out));
}

Dataset Dataset::select(const std::vector<std::string>& names) const {
    std::vector<TimeSeries> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(at(n));
    return Dataset(std::move(out));
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(
            start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::optional<double> parse_double(const std::string& cell) {
    double v = 0.0;
    const char* b = cell.data();
    const char* e = cell.data() + cell.size();
    if (b != e && *b == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<int> parse_int(const std::string& cell) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
    return v;
}

struct Row {
    std::size_t line_no;
    int year;
    std::vector<std::string> cells;
};

}  // namespace

Dataset parse_csv(const std::string& text, const std::vector<std::string>& schema,
                  const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    std::vector<Row> rows;

    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
            line.erase(0, 3);
        }
        if (trim(line).empty()) continue;
        auto cells = split_row(line);
        if (header.empty()) {
            header = std::move(cells);
            if (header.front() != "year") {
                throw DataError(source + ": first column must be 'year', found '" +
                                header.front() + "'");
            }
            std::set<std::string> seen;
            for (std::size_t c = 1; c < header.size(); ++c) {
                if (header[c].empty() || !seen.insert(header[c]).second) {
                    throw DataError(source + ": empty or duplicate column name '" + header[c] +
                                    "' in header");
                }
            }
            continue;
        }
        if (cells.size() != header.size()) {
            throw DataError(source + ": row " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(header.size()));
        }
        auto year = parse_int(cells.front());
        if (!year) {
            throw DataError(source + ": non-numeric year '" + cells.front() + "' at row " +
                            std::to_string(line_no));
        }
        rows.push_back(Row{line_no, *year, std::move(cells)});
    }
    if (header.empty()) throw DataError(source + ": missing header row");
    if (rows.empty()) throw DataError(source + ": no data rows");

    for (const auto& name : schema) {
        if (std::find(header.begin() + 1, header.end(), name) == header.end()) {
            throw DataError(source + ": missing column '" + name + "'");
        }
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.year < b.year; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].year == rows[i - 1].year) {
            throw DataError(source + ": duplicate year " + std::to_string(rows[i].year) +
                            " at row " + std::to_string(rows[i].line_no));
        }
        if (rows[i].year != rows[i - 1].year + 1) {
            throw DataError(source + ": non-contiguous years at row " +
                            std::to_string(rows[i].line_no));
        }
    }

    // Empty cells are allowed only at the ends of a column; the dataset then
    // intersects the column spans.
    std::vector<TimeSeries> series;
    for (std::size_t c = 1; c < header.size(); ++c) {
        std::vector<double> values;
        std::optional<int> start;
        bool ended = false;
        std::size_t end_line = 0;
        for (const auto& row : rows) {
            const auto& cell = row.cells[c];
            if (cell.empty()) {
                if (start) {
                    ended = true;
                    end_line = row.line_no;
                }
                continue;
            }
            if (ended) {
                throw DataError(source + ": missing value in column '" + header[c] + "' at row " +
                                std::to_string(end_line));
            }
            auto v = parse_double(cell);
            if (!v) {
                throw DataError(source + ": non-numeric cell '" + cell + "' at row " +
                                std::to_string(row.line_no) + ", column '" + header[c] + "'");
            }
            if (!start) start = row.year;
            values.push_back(*v);
        }
        if (!start) throw DataError(source + ": column '" + header[c] + "' has no values");
        series.emplace_back(header[c], *start, std::move(values));
    }
    return Dataset(std::move(series));
}

Dataset load_csv(const std::filesystem::path& path, const std::vector<std::string>& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open data file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), schema, path.string());
}

std::string to_csv(const Dataset& data) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "year";
    for (const auto& s : data.series()) out << ',' << s.name();
    out << '\n';
    for (std::size_t i = 0; i < data.n_obs(); ++i) {
        out << data.first_year() + static_cast<int>(i);
        for (const auto& s : data.series()) out << ',' << s[i];
        out << '\n';
    }
    return out.str();
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << to_csv(data);
}

// ---------------------------------------------------------------------------
// Transforms

TimeSeries log_transform(const TimeSeries& s) {
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] > 0.0)) {
            throw DataError("cannot take log of non-positive value " + std::to_string(s[i]) +
                            " in series '" + s.name() + "' at year " +
                            std::to_string(s.start_year() + static_cast<int>(i)));
        }
        out[i] = std::log(s[i]);
    }
    return TimeSeries("L" + s.name(), s.start_year(), std::move(out));
}

TimeSeries difference(const TimeSeries& s, int order) {
    if (order < 1) throw ValidationError("difference order must be positive");
    if (static_cast<std::size_t>(order) >= s.size()) {
        throw DataError("difference order " + std::to_string(order) +
                        " not smaller than length of series '" + s.name() + "'");
    }
    std::vector<double> v(s.values().begin(), s.values().end());
    for (int d = 0; d < order; ++d) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = v[i + 1] - v[i];
        v.pop_back();
    }
    return TimeSeries(s.name(), s.start_year() + order, std::move(v));
}

TimeSeries lag(const TimeSeries& s, int k) {
    if (k < 0) throw ValidationError("lag must be non-negative");
    if (static_cast<std::size_t>(k) >= s.size()) {
        throw DataError("lag " + std::to_string(k) + " not smaller than length of series '" +
                        s.name() + "'");
    }
    std::vector<double> v(s.values().begin(), s.values().end() - k);
    return TimeSeries(s.name(), s.start_year() + k, std::move(v));
}

// ---------------------------------------------------------------------------
// Descriptive statistics

double jarque_bera_statistic(double skewness, double kurtosis, std::size_t n) {
    const double excess = kurtosis - 3.0;
    return static_cast<double>(n) / 6.0 * (skewness * skewness + excess * excess / 4.0);
}

SummaryStats summary_stats(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 4) throw DataError("summary statistics need at least 4 observations");
    SummaryStats st;
    st.n = n;
    const double nd = static_cast<double>(n);
    st.mean = std::accumulate(values.begin(), values.end(), 0.0) / nd;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - st.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= nd;
    m3 /= nd;
    m4 /= nd;
    if (!(m2 > 0.0)) throw DataError("zero variance: skewness/kurtosis undefined");

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    st.minimum = sorted.front();
    st.maximum = sorted.back();
    st.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    st.std_dev = std::sqrt(m2 * nd / (nd - 1.0));
    st.skewness = m3 / std::pow(m2, 1.5);
    st.kurtosis = m4 / (m2 * m2);
    st.jarque_bera = jarque_bera_statistic(st.skewness, st.kurtosis, n);
    st.jb_probability = survival(Distribution::chi_square(2.0), st.jarque_bera);
    return st;
}

SummaryStats summary_stats(const TimeSeries& s) { return summary_stats(s.values()); }

}  // namespace tsecon
