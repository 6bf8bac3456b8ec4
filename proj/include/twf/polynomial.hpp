#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace twf {

/// Real polynomial on [0,1] stored lowest degree first.
///
/// Trailing zero coefficients are trimmed on construction, so the zero
/// polynomial has an empty coefficient vector and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);
  Polynomial(std::initializer_list<double> coefficients);

  [[nodiscard]] double operator()(double x) const noexcept;

  [[nodiscard]] Polynomial derivative() const;
  /// Antiderivative vanishing at 0.
  [[nodiscard]] Polynomial antiderivative() const;
  /// p(x)/x. Requires p(0) == 0 exactly.
  [[nodiscard]] Polynomial divided_by_x() const;
  /// Coefficients of p(1 - t) in powers of t.
  [[nodiscard]] Polynomial reflected() const;

  [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  /// Index of the first nonzero coefficient, -1 for the zero polynomial.
  [[nodiscard]] int lowest_degree() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
  [[nodiscard]] double coefficient(int k) const noexcept;
  [[nodiscard]] std::span<const double> coefficients() const noexcept { return coeffs_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<double> coeffs_;
};

}  // namespace twf
