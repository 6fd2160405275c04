#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tsecon {

/// Name used for the intercept column throughout the library.
inline constexpr const char* kIntercept = "C";

/**
 * @brief Named regressor matrix (n rows, k columns).
 *
 * Column names are unique and no column is constant, except the intercept
 * column which must be named kIntercept and hold ones.
 */
class DesignMatrix {
public:
    DesignMatrix(std::vector<std::string> names, Eigen::MatrixXd columns);

    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return x_; }
    [[nodiscard]] Eigen::Index n() const noexcept { return x_.rows(); }
    [[nodiscard]] Eigen::Index k() const noexcept { return x_.cols(); }
    [[nodiscard]] bool has_intercept() const noexcept { return has_intercept_; }
    [[nodiscard]] Eigen::Index index_of(const std::string& name) const;

private:
    std::vector<std::string> names_;
    Eigen::MatrixXd x_;
    bool has_intercept_ = false;
};

/// Incrementally assembles a DesignMatrix column by column.
class DesignBuilder {
public:
    explicit DesignBuilder(Eigen::Index n) : n_(n) {}

    DesignBuilder& intercept();
    DesignBuilder& add(std::string name, const Eigen::Ref<const Eigen::VectorXd>& column);
    DesignBuilder& add(std::string name, std::span<const double> column);

    [[nodiscard]] Eigen::Index cols() const noexcept { return static_cast<Eigen::Index>(names_.size()); }
    [[nodiscard]] DesignMatrix build() const;

private:
    Eigen::Index n_;
    std::vector<std::string> names_;
    std::vector<Eigen::VectorXd> columns_;
};

struct OlsFit {
    std::vector<std::string> names;
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd t_stats;
    Eigen::VectorXd p_values;  ///< two-sided, Student-t with df_resid
    Eigen::VectorXd residuals;
    Eigen::VectorXd fitted;
    Eigen::MatrixXd coef_covariance;
    Eigen::MatrixXd regressors;  ///< design matrix the fit was computed from
    double rss = 0.0;
    double sigma2 = 0.0;  ///< rss / df_resid
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double log_likelihood = 0.0;
    double aic = 0.0;  ///< -2l/n + 2k/n
    double sic = 0.0;  ///< -2l/n + k ln(n)/n
    Eigen::Index n = 0;
    Eigen::Index k = 0;
    Eigen::Index df_resid = 0;
    bool has_intercept = false;

    [[nodiscard]] Eigen::Index index_of(const std::string& name) const;
    [[nodiscard]] double coef(const std::string& name) const { return coefficients(index_of(name)); }
    [[nodiscard]] double se(const std::string& name) const { return std_errors(index_of(name)); }
};

/**
 * @brief Least squares via Householder QR with full inference.
 *
 * Throws NumericalError when a column is (numerically) a linear combination of
 * the preceding ones: |R_jj| < 1e-10 * ||X||_F. The message names the column.
 */
[[nodiscard]] OlsFit ols_fit(const Eigen::Ref<const Eigen::VectorXd>& y, const DesignMatrix& x);

enum class Kernel { bartlett };

/// Bandwidth request: a fixed non-negative value, or the Newey-West rule floor(4 (n/100)^(2/9)).
class Bandwidth {
public:
    static Bandwidth automatic() { return Bandwidth(true, 0.0); }
    static Bandwidth fixed(double value);

    [[nodiscard]] bool is_auto() const noexcept { return auto_; }
    [[nodiscard]] double value() const noexcept { return value_; }
    [[nodiscard]] double resolve(std::size_t n) const;

private:
    Bandwidth(bool is_auto, double value) : auto_(is_auto), value_(value) {}
    bool auto_;
    double value_;
};

[[nodiscard]] double newey_west_bandwidth(std::size_t n);

/**
 * @brief Kernel long-run covariance of a (demeaned) vector sequence.
 *
 * With Gamma_j = (1/n) sum_t u_{t-j} u_t' and Bartlett weights
 * w_j = max(0, 1 - j/(b+1)):
 *   omega  = Gamma_0 + sum_{j>=1} w_j (Gamma_j + Gamma_j')
 *   lambda = sum_{j>=0} w_j Gamma_j       (one-sided, lag 0 included)
 * Element (a, b) of lambda is the weighted covariance of past u_a with current u_b.
 */
struct LongRunCovariance {
    Eigen::MatrixXd omega;
    Eigen::MatrixXd lambda;
    Eigen::MatrixXd gamma0;
    double bandwidth = 0.0;
    Kernel kernel = Kernel::bartlett;
};

/// Scalar counterpart of LongRunCovariance.
struct LongRunVariance {
    double omega = 0.0;
    double lambda = 0.0;
    double gamma0 = 0.0;
    double bandwidth = 0.0;
    Kernel kernel = Kernel::bartlett;
};

/// Columns of `u` are the component series; rows are time.
[[nodiscard]] LongRunCovariance long_run_covariance(const Eigen::Ref<const Eigen::MatrixXd>& u,
                                                    Bandwidth bandwidth = Bandwidth::automatic(),
                                                    Kernel kernel = Kernel::bartlett);
[[nodiscard]] LongRunVariance long_run_variance(std::span<const double> u,
                                                Bandwidth bandwidth = Bandwidth::automatic(),
                                                Kernel kernel = Kernel::bartlett);

/// Coefficient with inference (t from coefficient/se, two-sided Student-t p).
struct Estimate {
    std::string name;
    double coefficient = 0.0;
    double std_error = 0.0;
    double t_stat = 0.0;
    double p_value = 0.0;
};

/// Estimate for row j of a fit.
[[nodiscard]] Estimate estimate_of(const OlsFit& fit, Eigen::Index j);

struct FTestResult {
    double f = 0.0;
    double p_value = 1.0;
    int df_num = 0;
    int df_den = 0;
};

/// Nested-model F test: ((RSS_r - RSS_u)/q) / (RSS_u/df_u), p from F(q, df_u).
[[nodiscard]] FTestResult wald_f_test(const OlsFit& unrestricted, const OlsFit& restricted, int q);

}  // namespace tsecon
