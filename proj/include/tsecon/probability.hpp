#pragma once

namespace tsecon {

/// Reference distributions used for p-values. Degrees of freedom must be positive.
class Distribution {
public:
    enum class Kind { normal, student_t, f, chi_square };

    static Distribution normal() { return Distribution(Kind::normal, 0.0, 0.0); }
    static Distribution student_t(double df);
    static Distribution f(double df1, double df2);
    static Distribution chi_square(double df);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double df1() const noexcept { return df1_; }
    [[nodiscard]] double df2() const noexcept { return df2_; }

private:
    Distribution(Kind kind, double df1, double df2) : kind_(kind), df1_(df1), df2_(df2) {}

    Kind kind_;
    double df1_;
    double df2_;
};

[[nodiscard]] double cdf(const Distribution& d, double x);
/// Upper tail 1 - cdf, evaluated directly so small tail probabilities keep full precision.
[[nodiscard]] double survival(const Distribution& d, double x);
[[nodiscard]] double quantile(const Distribution& d, double p);

/// Two-sided Student-t p-value for a t-ratio.
[[nodiscard]] double t_pvalue_two_sided(double t, double df);

}  // namespace tsecon
