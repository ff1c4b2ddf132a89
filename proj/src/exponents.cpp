#include "rklab/exponents.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rklab {

Exponents::Exponents(Kind kind, double p) : kind_(kind), p_(p) {}

Exponents Exponents::from_p(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("exponent p must lie in [1, +inf]");
  }
  if (std::isinf(p)) return infinite();
  if (p == 1.0) return Exponents(Kind::kOne, 1.0);
  return Exponents(Kind::kFinite, p);
}

Exponents Exponents::infinite() {
  return Exponents(Kind::kInfinity, std::numeric_limits<double>::infinity());
}

Exponents Exponents::parse(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "inf" || lower == "infinity" || lower == "+inf") return infinite();
  double p = 0.0;
  auto [ptr, ec] = std::from_chars(lower.data(), lower.data() + lower.size(), p);
  if (ec != std::errc() || ptr != lower.data() + lower.size()) {
    throw std::invalid_argument("cannot parse exponent '" + std::string(text) + "'");
  }
  return from_p(p);
}

double Exponents::p() const {
  if (kind_ == Kind::kInfinity) throw std::domain_error("p is infinite");
  return p_;
}

double Exponents::conjugate() const {
  switch (kind_) {
    case Kind::kOne:
      throw std::domain_error("conjugate exponent is infinite");
    case Kind::kInfinity:
      return 1.0;
    case Kind::kFinite:
      break;
  }
  return p_ / (p_ - 1.0);
}

double Exponents::lambda() const {
  if (lambda_infinite()) throw std::domain_error("lambda is infinite");
  return std::max(p_, p_ / (p_ - 1.0));
}

double Exponents::root_of_two() const {
  if (lambda_infinite()) return 1.0;
  return std::pow(2.0, 1.0 / lambda());
}

double Exponents::mean(double a, double b) const {
  const double hi = std::max(a, b);
  if (lambda_infinite() || hi == 0.0) return hi;
  const double lo = std::min(a, b);
  const double lam = lambda();
  // factor out the larger term so that lo/hi <= 1 cannot overflow
  return hi * std::pow(0.5 + 0.5 * std::pow(lo / hi, lam), 1.0 / lam);
}

namespace {
std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}
}  // namespace

std::string Exponents::p_string() const {
  return p_infinite() ? "inf" : format_real(p_);
}

std::string Exponents::lambda_string() const {
  return lambda_infinite() ? "inf" : format_real(lambda());
}

}  // namespace rklab
