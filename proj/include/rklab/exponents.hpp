#pragma once

#include <string>
#include <string_view>

namespace rklab {

/// A Hoelder pair (p, p') with 1/p + 1/p' = 1 together with
/// lambda = max(p, p'). The endpoints p = 1 and p = +inf are stored
/// symbolically; lambda is +inf exactly when p is 1 or +inf.
class Exponents {
 public:
  /// p must lie in [1, +inf]; pass std::numeric_limits<double>::infinity()
  /// or use infinite() for the upper endpoint.
  static Exponents from_p(double p);
  static Exponents infinite();
  /// Accepts decimal numbers and "inf"/"infinity".
  static Exponents parse(std::string_view text);

  bool p_infinite() const noexcept { return kind_ == Kind::kInfinity; }
  bool conjugate_infinite() const noexcept { return kind_ == Kind::kOne; }
  bool lambda_infinite() const noexcept { return kind_ != Kind::kFinite; }

  /// Finite p; throws when p is +inf.
  double p() const;
  /// Finite p'; throws when p' is +inf (p = 1).
  double conjugate() const;
  /// Finite lambda; throws when lambda is +inf.
  double lambda() const;

  /// 2^(1/lambda), which is 1 when lambda is +inf.
  double root_of_two() const;
  /// Power mean (a^lambda/2 + b^lambda/2)^(1/lambda) of nonnegative a, b;
  /// max(a, b) when lambda is +inf.
  double mean(double a, double b) const;

  std::string p_string() const;
  std::string lambda_string() const;

  friend bool operator==(const Exponents&, const Exponents&) = default;

 private:
  enum class Kind { kOne, kFinite, kInfinity };
  Exponents(Kind kind, double p);

  Kind kind_;
  double p_;
};

}  // namespace rklab
