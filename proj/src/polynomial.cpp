#include "twf/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace twf {

Polynomial::Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial::Polynomial(std::initializer_list<double> coefficients) : coeffs_(coefficients) {
  trim();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  if (coeffs_.empty()) return {};
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::divided_by_x() const {
  if (coeffs_.empty()) return {};
  if (coeffs_.front() != 0.0) throw std::invalid_argument("divided_by_x: p(0) != 0");
  return Polynomial(std::vector<double>(coeffs_.begin() + 1, coeffs_.end()));
}

Polynomial Polynomial::reflected() const {
  // p(1 - t) = sum_k c_k (1 - t)^k, expanded by repeated multiplication.
  Polynomial result;
  Polynomial power{1.0};
  const Polynomial one_minus_t{1.0, -1.0};
  for (double c : coeffs_) {
    result = result + c * power;
    power = power * one_minus_t;
  }
  return result;
}

int Polynomial::lowest_degree() const noexcept {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0.0) return static_cast<int>(k);
  return -1;
}

double Polynomial::coefficient(int k) const noexcept {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> r(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) r[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) r[k] += b.coeffs_[k];
  return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
  std::vector<double> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(r));
}

Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> r(p.coeffs_);
  for (double& c : r) c *= s;
  return Polynomial(std::move(r));
}

}  // namespace twf
