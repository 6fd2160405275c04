#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace tsecon {

/**
 * @brief A named annual series without gaps.
 *
 * Element i holds the observation for year start_year + i.
 */
class TimeSeries {
public:
    TimeSeries(std::string name, int start_year, std::vector<double> values);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] int start_year() const noexcept { return start_year_; }
    [[nodiscard]] int end_year() const noexcept {
        return start_year_ + static_cast<int>(values_.size()) - 1;
    }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] double at_year(int year) const;

    /// Same data under a different name.
    [[nodiscard]] TimeSeries renamed(std::string name) const;
    /// Sub-series covering [first_year, last_year].
    [[nodiscard]] TimeSeries slice(int first_year, int last_year) const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::string name_;
    int start_year_;
    std::vector<double> values_;
};

/**
 * @brief A set of uniquely named series sharing one year span.
 *
 * Construction intersects the year ranges of the supplied series, so every
 * member ends up with the same start year and length.
 */
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<TimeSeries> series);

    [[nodiscard]] bool contains(const std::string& name) const;
    [[nodiscard]] const TimeSeries& at(const std::string& name) const;
    [[nodiscard]] const std::vector<TimeSeries>& series() const noexcept { return series_; }
    [[nodiscard]] std::vector<std::string> names() const;
    [[nodiscard]] std::size_t n_obs() const noexcept;
    [[nodiscard]] int first_year() const;
    [[nodiscard]] int last_year() const;
    [[nodiscard]] bool empty() const noexcept { return series_.empty(); }

    /// New dataset with the given series added (or replaced, when the name exists).
    [[nodiscard]] Dataset with(TimeSeries s) const;
    /// New dataset restricted to the named series, in the given order.
    [[nodiscard]] Dataset select(const std::vector<std::string>& names) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<TimeSeries> series_;
};

/// Reads `year,<col>,...` CSV. Every name in `schema` must be present as a column.
[[nodiscard]] Dataset load_csv(const std::filesystem::path& path,
                               const std::vector<std::string>& schema = {});
/// Parses CSV text; `source` is used in error messages.
[[nodiscard]] Dataset parse_csv(const std::string& text,
                                const std::vector<std::string>& schema = {},
                                const std::string& source = "<memory>");
/// Writes a dataset in the same CSV layout load_csv accepts (17 significant digits).
void write_csv(const Dataset& data, const std::filesystem::path& path);
[[nodiscard]] std::string to_csv(const Dataset& data);

/// Element-wise natural log; the result is named "L" + name.
[[nodiscard]] TimeSeries log_transform(const TimeSeries& s);
/// order-th difference; the result starts `order` years later.
[[nodiscard]] TimeSeries difference(const TimeSeries& s, int order = 1);
/// Element for year t holds the original value of year t-k; the first k years are dropped.
[[nodiscard]] TimeSeries lag(const TimeSeries& s, int k);

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double maximum = 0.0;
    double minimum = 0.0;
    double std_dev = 0.0;   ///< n-1 denominator
    double skewness = 0.0;  ///< m3 / m2^1.5, n denominators
    double kurtosis = 0.0;  ///< m4 / m2^2 (not excess)
    double jarque_bera = 0.0;
    double jb_probability = 0.0;
};

/// Jarque-Bera statistic from moment ratios: (n/6)(S^2 + (K-3)^2/4).
[[nodiscard]] double jarque_bera_statistic(double skewness, double kurtosis, std::size_t n);

[[nodiscard]] SummaryStats summary_stats(std::span<const double> values);
[[nodiscard]] SummaryStats summary_stats(const TimeSeries& s);

}  // namespace tsecon
