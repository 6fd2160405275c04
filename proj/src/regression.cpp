#include "tsecon/regression.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "tsecon/error.hpp"
#include "tsecon/probability.hpp"

namespace tsecon {

DesignMatrix::DesignMatrix(std::vector<std::string> names, Eigen::MatrixXd columns)
    : names_(std::move(names)), x_(std::move(columns)) {
    if (static_cast<Eigen::Index>(names_.size()) != x_.cols()) {
        throw ValidationError("design matrix has " + std::to_string(x_.cols()) + " columns but " +
                              std::to_string(names_.size()) + " names");
    }
    std::set<std::string> seen;
    for (Eigen::Index j = 0; j < x_.cols(); ++j) {
        const auto& name = names_[static_cast<std::size_t>(j)];
        if (!seen.insert(name).second) {
            throw ValidationError("duplicate design column '" + name + "'");
        }
        if (!x_.col(j).allFinite()) {
            throw DataError("design column '" + name + "' contains non-finite values");
        }
        const bool constant = x_.rows() > 1 && (x_.col(j).array() == x_(0, j)).all();
        if (name == kIntercept) {
            if (!(x_.col(j).array() == 1.0).all()) {
                throw ValidationError("intercept column must hold ones");
            }
            has_intercept_ = true;
        } else if (constant) {
            throw ValidationError("design column '" + name + "' is constant");
        }
    }
}

Eigen::Index DesignMatrix::index_of(const std::string& name) const {
    for (std::size_t j = 0; j < names_.size(); ++j) {
        if (names_[j] == name) return static_cast<Eigen::Index>(j);
    }
    throw ValidationError("no design column named '" + name + "'");
}

DesignBuilder& DesignBuilder::intercept() {
    names_.emplace_back(kIntercept);
    columns_.push_back(Eigen::VectorXd::Ones(n_));
    return *this;
}

DesignBuilder& DesignBuilder::add(std::string name, const Eigen::Ref<const Eigen::VectorXd>& column) {
    if (column.size() != n_) {
        throw ValidationError("column '" + name + "' has length " + std::to_string(column.size()) +
                              ", expected " + std::to_string(n_));
    }
    names_.push_back(std::move(name));
    columns_.emplace_back(column);
    return *this;
}

DesignBuilder& DesignBuilder::add(std::string name, std::span<const double> column) {
    Eigen::Map<const Eigen::VectorXd> v(column.data(), static_cast<Eigen::Index>(column.size()));
    return add(std::move(name), v);
}

DesignMatrix DesignBuilder::build() const {
    Eigen::MatrixXd x(n_, cols());
    for (Eigen::Index j = 0; j < cols(); ++j) x.col(j) = columns_[static_cast<std::size_t>(j)];
    return DesignMatrix(names_, std::move(x));
}

Eigen::Index OlsFit::index_of(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == name) return static_cast<Eigen::Index>(j);
    }
    throw ValidationError("no coefficient named '" + name + "'");
}

OlsFit ols_fit(const Eigen::Ref<const Eigen::VectorXd>& y, const DesignMatrix& design) {
    const Eigen::MatrixXd& x = design.matrix();
    const Eigen::Index n = x.rows();
    const Eigen::Index k = x.cols();
    if (y.size() != n) {
        throw ValidationError("response length " + std::to_string(y.size()) +
                              " does not match design rows " + std::to_string(n));
    }
    if (k == 0) throw ValidationError("design matrix has no columns");
    if (n <= k) {
        throw DataError("not enough observations: n=" + std::to_string(n) +
                        " must exceed k=" + std::to_string(k));
    }
    if (!y.allFinite()) throw DataError("response contains non-finite values");

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const double threshold = 1e-10 * x.norm();
    for (Eigen::Index j = 0; j < k; ++j) {
        if (std::fabs(r(j, j)) <= threshold) {
            std::ostringstream msg;
            msg << "rank deficient design: column '" << design.names()[static_cast<std::size_t>(j)]
                << "' is linearly dependent on {";
            for (Eigen::Index i = 0; i < j; ++i) {
                msg << (i ? ", " : "") << design.names()[static_cast<std::size_t>(i)];
            }
            msg << "}";
            throw NumericalError(msg.str());
        }
    }

    OlsFit fit;
    fit.names = design.names();
    fit.n = n;
    fit.k = k;
    fit.df_resid = n - k;
    fit.has_intercept = design.has_intercept();
    fit.regressors = x;
    fit.coefficients = qr.solve(y);
    fit.fitted = x * fit.coefficients;
    fit.residuals = y - fit.fitted;
    fit.rss = fit.residuals.squaredNorm();
    fit.sigma2 = fit.rss / static_cast<double>(fit.df_resid);

    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    fit.coef_covariance = fit.sigma2 * (r_inv * r_inv.transpose());
    fit.coef_covariance = 0.5 * (fit.coef_covariance + fit.coef_covariance.transpose()).eval();
    fit.std_errors = fit.coef_covariance.diagonal().cwiseSqrt();
    fit.t_stats = fit.coefficients.cwiseQuotient(fit.std_errors);
    fit.p_values.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        fit.p_values(j) = fit.std_errors(j) > 0.0
                              ? t_pvalue_two_sided(fit.t_stats(j), static_cast<double>(fit.df_resid))
                              : 0.0;
    }

    const double nd = static_cast<double>(n);
    const double tss = fit.has_intercept ? (y.array() - y.mean()).square().sum() : y.squaredNorm();
    fit.r_squared = tss > 0.0 ? 1.0 - fit.rss / tss : 0.0;
    fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * (nd - (fit.has_intercept ? 1.0 : 0.0)) /
                                  static_cast<double>(fit.df_resid);
    fit.log_likelihood =
        -0.5 * nd * (1.0 + std::log(2.0 * std::numbers::pi) + std::log(fit.rss / nd));
    const double kd = static_cast<double>(k);
    fit.aic = -2.0 * fit.log_likelihood / nd + 2.0 * kd / nd;
    fit.sic = -2.0 * fit.log_likelihood / nd + kd * std::log(nd) / nd;
    return fit;
}

Estimate estimate_of(const OlsFit& fit, Eigen::Index j) {
    return Estimate{fit.names[static_cast<std::size_t>(j)], fit.coefficients(j), fit.std_errors(j),
                    fit.t_stats(j), fit.p_values(j)};
}

// ---------------------------------------------------------------------------
// Long-run covariance

Bandwidth Bandwidth::fixed(double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw ValidationError("bandwidth must be a finite non-negative number");
    }
    return Bandwidth(false, value);
}

double newey_west_bandwidth(std::size_t n) {
    return std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0));
}

double Bandwidth::resolve(std::size_t n) const { return auto_ ? newey_west_bandwidth(n) : value_; }

LongRunCovariance long_run_covariance(const Eigen::Ref<const Eigen::MatrixXd>& u, Bandwidth bandwidth,
                                      Kernel kernel) {
    const Eigen::Index n = u.rows();
    if (n == 0 || u.cols() == 0) throw ValidationError("long-run covariance of empty input");
    if (n < 2) throw DataError("long-run covariance needs at least 2 observations");

    const Eigen::MatrixXd d = u.rowwise() - u.colwise().mean();
    const double nd = static_cast<double>(n);
    const double bw = bandwidth.resolve(static_cast<std::size_t>(n));

    LongRunCovariance out;
    out.kernel = kernel;
    out.bandwidth = bw;
    out.gamma0 = d.transpose() * d / nd;
    out.omega = out.gamma0;
    out.lambda = out.gamma0;
    for (Eigen::Index j = 1; j < n; ++j) {
        const double w = 1.0 - static_cast<double>(j) / (bw + 1.0);
        if (w <= 0.0) break;
        // Gamma_j = (1/n) sum_t u_{t-j} u_t'
        const Eigen::MatrixXd gamma =
            d.topRows(n - j).transpose() * d.bottomRows(n - j) / nd;
        out.omega += w * (gamma + gamma.transpose());
        out.lambda += w * gamma;
    }
    return out;
}

LongRunVariance long_run_variance(std::span<const double> u, Bandwidth bandwidth, Kernel kernel) {
    Eigen::Map<const Eigen::VectorXd> v(u.data(), static_cast<Eigen::Index>(u.size()));
    const auto lr = long_run_covariance(v, bandwidth, kernel);
    return LongRunVariance{lr.omega(0, 0), lr.lambda(0, 0), lr.gamma0(0, 0), lr.bandwidth, kernel};
}

// ---------------------------------------------------------------------------

FTestResult wald_f_test(const OlsFit& unrestricted, const OlsFit& restricted, int q) {
    if (q < 1) throw ValidationError("number of restrictions must be at least 1");
    if (unrestricted.n != restricted.n) {
        throw ValidationError("restricted and unrestricted fits use different samples");
    }
    if (unrestricted.df_resid <= 0) throw DataError("unrestricted model has no residual df");
    const double diff = restricted.rss - unrestricted.rss;
    const double scale = std::max(1.0, restricted.rss);
    if (diff < -1e-10 * scale) {
        throw ValidationError("restricted RSS below unrestricted RSS: models are not nested");
    }
    FTestResult out;
    out.df_num = q;
    out.df_den = static_cast<int>(unrestricted.df_resid);
    const double num = std::max(diff, 0.0) / q;
    const double den = unrestricted.rss / static_cast<double>(unrestricted.df_resid);
    if (den <= 0.0) {
        if (num <= 0.0) {
            out.f = 0.0;
            out.p_value = 1.0;
            return out;
        }
        throw NumericalError("unrestricted model fits exactly; F statistic undefined");
    }
    out.f = num / den;
    out.p_value = survival(Distribution::f(q, static_cast<double>(out.df_den)), out.f);
    return out;
}

}  // namespace tsecon
