#include "tsecon/cointegration.hpp"

#include <cmath>
#include <limits>

#include "tsecon/error.hpp"
#include "tsecon/probability.hpp"

namespace tsecon {

std::string to_string(CointegrationMethod m) {
    switch (m) {
        case CointegrationMethod::fmols: return "FMOLS";
        case CointegrationMethod::dols: return "DOLS";
        case CointegrationMethod::ccr: return "CCR";
    }
    return "?";
}

const Estimate& CointegrationFit::coefficient(const std::string& name) const {
    for (const auto& e : coefficients) {
        if (e.name == name) return e;
    }
    if (name == intercept.name) return intercept;
    throw ValidationError("no cointegrating coefficient named '" + name + "'");
}

int dols_default_window(std::size_t n) {
    const int w = static_cast<int>(std::floor(std::pow(static_cast<double>(n) / 100.0, 0.25)));
    return std::max(1, w);
}

namespace {

void check_inputs(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                  const std::vector<std::string>& names) {
    if (x.rows() != y.size()) {
        throw ValidationError("regressors and dependent series are misaligned: " +
                              std::to_string(x.rows()) + " vs " + std::to_string(y.size()) +
                              " observations");
    }
    if (x.cols() == 0) throw ValidationError("at least one regressor is required");
    if (static_cast<Eigen::Index>(names.size()) != x.cols()) {
        throw ValidationError("one name per regressor is required");
    }
}

// Design [C, (TREND), x] for rows [first, first + rows).
DesignMatrix deterministic_design(const Eigen::MatrixXd& x, const std::vector<std::string>& names,
                                  Eigen::Index first, Eigen::Index rows, bool trend) {
    DesignBuilder b(rows);
    b.intercept();
    if (trend) {
        b.add("TREND", Eigen::VectorXd::LinSpaced(rows, static_cast<double>(first + 1),
                                                  static_cast<double>(first + rows)));
    }
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        b.add(names[static_cast<std::size_t>(j)], x.col(j).segment(first, rows));
    }
    return b.build();
}

std::vector<Estimate> inference(const Eigen::VectorXd& coef, const Eigen::MatrixXd& cov,
                                const std::vector<std::string>& names, double df) {
    std::vector<Estimate> out;
    for (Eigen::Index j = 0; j < coef.size(); ++j) {
        Estimate e;
        e.name = names[static_cast<std::size_t>(j)];
        e.coefficient = coef(j);
        e.std_error = std::sqrt(std::max(cov(j, j), 0.0));
        e.t_stat = e.std_error > 0.0 ? e.coefficient / e.std_error
                                     : std::numeric_limits<double>::quiet_NaN();
        e.p_value = e.std_error > 0.0 ? t_pvalue_two_sided(e.t_stat, df) : 0.0;
        out.push_back(std::move(e));
    }
    return out;
}

CointegrationFit assemble(CointegrationMethod method, const Eigen::VectorXd& coef,
                          const Eigen::MatrixXd& cov, const std::vector<std::string>& design_names,
                          Eigen::Index n_eff, Eigen::Index n_regressor_cols, bool trend) {
    const double df = static_cast<double>(n_eff - coef.size());
    auto all = inference(coef, cov, design_names, df);
    CointegrationFit out;
    out.method = method;
    out.n_effective = static_cast<int>(n_eff);
    out.covariance = cov;
    out.intercept = all[0];
    std::size_t next = 1;
    if (trend) out.trend = all[next++];
    for (Eigen::Index j = 0; j < n_regressor_cols; ++j) out.coefficients.push_back(all[next++]);
    return out;
}

struct LongRunParts {
    OlsFit first_stage;  ///< OLS on the trimmed sample
    Eigen::MatrixXd w;   ///< (u1, demeaned dx)
    LongRunCovariance lr;
    Eigen::MatrixXd omega22_inv;
    Eigen::VectorXd omega21;
    double omega_1_2 = 0.0;  ///< omega11 - omega12 Omega22^{-1} omega21
};

LongRunParts long_run_parts(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                            const std::vector<std::string>& names, const CointegrationOptions& opt) {
    const Eigen::Index n = y.size();
    const Eigen::Index k = x.cols();
    if (n < 4 + k) throw DataError("too few observations for a cointegrating regression");
    const Eigen::Index rows = n - 1;
    const auto design = deterministic_design(x, names, 1, rows, opt.trend);
    LongRunParts parts{ols_fit(y.tail(rows), design), Eigen::MatrixXd(rows, k + 1), {}, {}, {}, 0.0};
    parts.w.col(0) = parts.first_stage.residuals;
    const Eigen::MatrixXd dx = x.bottomRows(rows) - x.topRows(rows);
    parts.w.rightCols(k) = dx.rowwise() - dx.colwise().mean();
    parts.lr = long_run_covariance(parts.w, opt.bandwidth);

    const Eigen::MatrixXd omega22 = parts.lr.omega.bottomRightCorner(k, k);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(omega22);
    const double scale = omega22.diagonal().cwiseAbs().maxCoeff();
    if (ldlt.info() != Eigen::Success || !(scale > 0.0) ||
        ldlt.vectorD().cwiseAbs().minCoeff() <= 1e-12 * scale) {
        throw NumericalError("singular long-run covariance of regressor differences");
    }
    parts.omega22_inv = ldlt.solve(Eigen::MatrixXd::Identity(k, k));
    parts.omega21 = parts.lr.omega.bottomLeftCorner(k, 1);
    parts.omega_1_2 =
        parts.lr.omega(0, 0) - (parts.omega21.transpose() * parts.omega22_inv * parts.omega21)(0, 0);
    return parts;
}

std::string small_sample_warning(Eigen::Index n) {
    return "only " + std::to_string(n) +
           " observations; long-run covariance corrections are unreliable below 20";
}

}  // namespace

CointegrationFit fmols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                           const std::vector<std::string>& names, const CointegrationOptions& opt) {
    check_inputs(y, x, names);
    const auto parts = long_run_parts(y, x, names, opt);
    const Eigen::Index k = x.cols();
    const Eigen::Index rows = parts.w.rows();
    const double t = static_cast<double>(rows);

    const Eigen::VectorXd adj = parts.omega22_inv * parts.omega21;
    const Eigen::VectorXd y_plus = y.tail(rows) - parts.w.rightCols(k) * adj;
    const Eigen::VectorXd lambda21 = parts.lr.lambda.bottomLeftCorner(k, 1);
    const Eigen::MatrixXd lambda22 = parts.lr.lambda.bottomRightCorner(k, k);
    const Eigen::VectorXd bias = lambda21 - lambda22 * adj;

    const auto design = deterministic_design(x, names, 1, rows, opt.trend);
    const Eigen::MatrixXd& z = design.matrix();
    Eigen::VectorXd rhs = z.transpose() * y_plus;
    rhs.tail(k) -= t * bias;
    const Eigen::MatrixXd ztz = z.transpose() * z;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(ztz);
    const Eigen::VectorXd coef = ldlt.solve(rhs);
    const Eigen::MatrixXd cov =
        parts.omega_1_2 * ldlt.solve(Eigen::MatrixXd::Identity(z.cols(), z.cols()));

    auto out = assemble(CointegrationMethod::fmols, coef, cov, design.names(), rows, k, opt.trend);
    out.bandwidth = parts.lr.bandwidth;
    out.long_run_variance = parts.omega_1_2;
    if (y.size() < 20) out.warnings.push_back(small_sample_warning(y.size()));
    return out;
}

CointegrationFit ccr_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                         const std::vector<std::string>& names, const CointegrationOptions& opt) {
    check_inputs(y, x, names);
    const auto parts = long_run_parts(y, x, names, opt);
    const Eigen::Index k = x.cols();
    const Eigen::Index rows = parts.w.rows();

    const Eigen::MatrixXd& sigma = parts.lr.gamma0;
    Eigen::LDLT<Eigen::MatrixXd> sigma_ldlt(sigma);
    if (sigma_ldlt.info() != Eigen::Success) {
        throw NumericalError("singular contemporaneous covariance in CCR");
    }
    // Lambda_2(a, j): weighted covariance of past dx_j with current w_a.
    const Eigen::MatrixXd lambda2 = parts.lr.lambda.bottomRows(k).transpose();
    const Eigen::MatrixXd a = sigma_ldlt.solve(lambda2);  // (k+1) x k

    const Eigen::Index beta_offset = opt.trend ? 2 : 1;
    const Eigen::VectorXd beta_ols = parts.first_stage.coefficients.segment(beta_offset, k);
    Eigen::VectorXd y_shift = a * beta_ols;
    y_shift.tail(k) += parts.omega22_inv * parts.omega21;

    const Eigen::MatrixXd x_star = x.bottomRows(rows) - parts.w * a;
    const Eigen::VectorXd y_star = y.tail(rows) - parts.w * y_shift;

    Eigen::MatrixXd x_full = Eigen::MatrixXd::Zero(rows + 1, k);
    x_full.bottomRows(rows) = x_star;
    const auto design = deterministic_design(x_full, names, 1, rows, opt.trend);
    const auto fit = ols_fit(y_star, design);
    const Eigen::MatrixXd& z = design.matrix();
    const Eigen::MatrixXd cov =
        parts.omega_1_2 * (z.transpose() * z).ldlt().solve(Eigen::MatrixXd::Identity(z.cols(), z.cols()));

    auto out = assemble(CointegrationMethod::ccr, fit.coefficients, cov, design.names(), rows, k,
                        opt.trend);
    out.bandwidth = parts.lr.bandwidth;
    out.long_run_variance = parts.omega_1_2;
    if (y.size() < 20) out.warnings.push_back(small_sample_warning(y.size()));
    return out;
}

CointegrationFit dols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                          const std::vector<std::string>& names, const CointegrationOptions& opt) {
    check_inputs(y, x, names);
    const Eigen::Index n = y.size();
    const Eigen::Index k = x.cols();
    const int leads = opt.leads.value_or(dols_default_window(static_cast<std::size_t>(n)));
    const int lags = opt.lags.value_or(dols_default_window(static_cast<std::size_t>(n)));
    if (leads < 0 || lags < 0) throw ValidationError("DOLS leads and lags must be non-negative");
    if (n <= k * (leads + lags + 1) + k + 5) {
        throw DataError("infeasible DOLS window: " + std::to_string(n) + " observations for " +
                        std::to_string(leads) + " leads and " + std::to_string(lags) + " lags");
    }
    const Eigen::Index first = 1 + lags;
    const Eigen::Index rows = n - 1 - leads - lags;

    DesignBuilder b(rows);
    b.intercept();
    if (opt.trend) {
        b.add("TREND", Eigen::VectorXd::LinSpaced(rows, static_cast<double>(first + 1),
                                                  static_cast<double>(first + rows)));
    }
    for (Eigen::Index j = 0; j < k; ++j) {
        b.add(names[static_cast<std::size_t>(j)], x.col(j).segment(first, rows));
    }
    for (Eigen::Index j = 0; j < k; ++j) {
        for (int i = -lags; i <= leads; ++i) {
            Eigen::VectorXd col(rows);
            for (Eigen::Index r = 0; r < rows; ++r) {
                const Eigen::Index t = first + r + i;
                col(r) = x(t, j) - x(t - 1, j);
            }
            b.add("D(" + names[static_cast<std::size_t>(j)] + ")[" + std::to_string(i) + "]", col);
        }
    }
    const auto fit = ols_fit(y.segment(first, rows), b.build());
    const auto lr = long_run_variance(
        std::span<const double>(fit.residuals.data(), static_cast<std::size_t>(rows)), opt.bandwidth);

    const Eigen::Index kept = (opt.trend ? 2 : 1) + k;
    const Eigen::VectorXd coef = fit.coefficients.head(kept);
    const Eigen::MatrixXd cov = fit.coef_covariance.topLeftCorner(kept, kept) * (lr.omega / fit.sigma2);
    std::vector<std::string> kept_names(fit.names.begin(), fit.names.begin() + kept);

    // t reference df from the full augmented regression.
    auto out = assemble(CointegrationMethod::dols, coef, cov, kept_names,
                        rows - (fit.k - kept), k, opt.trend);
    out.leads = leads;
    out.lags = lags;
    out.n_effective = static_cast<int>(rows);
    out.bandwidth = lr.bandwidth;
    out.long_run_variance = lr.omega;
    return out;
}

CointegrationFit cointegration_fit(CointegrationMethod method, const Dataset& data,
                                   const std::string& dependent,
                                   const std::vector<std::string>& regressors,
                                   const CointegrationOptions& options) {
    const auto n = static_cast<Eigen::Index>(data.n_obs());
    const auto& ys = data.at(dependent).values();
    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ys.data(), n);
    Eigen::MatrixXd x(n, static_cast<Eigen::Index>(regressors.size()));
    for (std::size_t j = 0; j < regressors.size(); ++j) {
        const auto& xs = data.at(regressors[j]).values();
        x.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(xs.data(), n);
    }
    switch (method) {
        case CointegrationMethod::fmols: return fmols_fit(y, x, regressors, options);
        case CointegrationMethod::dols: return dols_fit(y, x, regressors, options);
        case CointegrationMethod::ccr: return ccr_fit(y, x, regressors, options);
    }
    throw ValidationError("unknown cointegration method");
}

}  // namespace tsecon
