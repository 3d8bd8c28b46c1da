#include "nlcl/scalar_func.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nlcl {

ScalarFunc ScalarFunc::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  ScalarFunc f;
  f.kind_ = Kind::polynomial;
  f.coeffs_ = std::move(coeffs);
  return f;
}

ScalarFunc ScalarFunc::exp_neg(double scale) {
  ScalarFunc f;
  f.kind_ = Kind::exp_neg;
  f.scale_ = scale;
  return f;
}

ScalarFunc ScalarFunc::one_minus_pow(int power, double scale) {
  if (power < 0) throw std::invalid_argument("one_minus_pow: negative power");
  ScalarFunc f;
  f.kind_ = Kind::one_minus_pow;
  f.power_ = power;
  f.scale_ = scale;
  return f;
}

double ScalarFunc::operator()(double x) const {
  switch (kind_) {
    case Kind::polynomial: {
      double acc = 0.0;
      for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
      return acc;
    }
    case Kind::exp_neg:
      return scale_ * std::exp(-x);
    case Kind::one_minus_pow: {
      double base = 1.0 - x;
      double acc = 1.0;
      for (int i = 0; i < power_; ++i) acc *= base;
      return scale_ * acc;
    }
  }
  return 0.0;
}

ScalarFunc ScalarFunc::derivative() const {
  switch (kind_) {
    case Kind::polynomial: {
      std::vector<double> d;
      for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d.push_back(static_cast<double>(i) * coeffs_[i]);
      return polynomial(std::move(d));
    }
    case Kind::exp_neg:
      return exp_neg(-scale_);
    case Kind::one_minus_pow:
      if (power_ == 0) return polynomial({0.0});
      return one_minus_pow(power_ - 1, -scale_ * power_);
  }
  return polynomial({0.0});
}

int ScalarFunc::degree() const {
  if (kind_ != Kind::polynomial)
    throw std::logic_error("degree: not a polynomial");
  return static_cast<int>(coeffs_.size()) - 1;
}

std::vector<double> ScalarFunc::roots_in(double lo, double hi) const {
  std::vector<double> out;
  auto keep = [&](double r) {
    if (r >= lo && r <= hi) out.push_back(r);
  };
  switch (kind_) {
    case Kind::exp_neg:
      return out;  // never zero
    case Kind::one_minus_pow:
      if (power_ >= 1 && scale_ != 0.0) keep(1.0);
      return out;
    case Kind::polynomial:
      break;
  }
  int deg = degree();
  if (deg <= 0) {
    return out;  // constant: no isolated roots reported
  }
  if (deg == 1) {
    keep(-coeffs_[0] / coeffs_[1]);
  } else if (deg == 2) {
    double a = coeffs_[2], b = coeffs_[1], c = coeffs_[0];
    double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      double sq = std::sqrt(disc);
      // Citardauq form for the small root keeps cancellation in check.
      double q = -0.5 * (b + (b >= 0 ? sq : -sq));
      keep(q / a);
      if (q != 0.0) keep(c / q);
    }
  } else {
    throw std::runtime_error(
        "roots_in: polynomial degree > 2, supply stationary points explicitly");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string ScalarFunc::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::polynomial: {
      os << "poly(";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ",";
        os << coeffs_[i];
      }
      os << ")";
      break;
    }
    case Kind::exp_neg:
      os << scale_ << "*exp(-x)";
      break;
    case Kind::one_minus_pow:
      os << scale_ << "*(1-x)^" << power_;
      break;
  }
  return os.str();
}

}  // namespace nlcl
