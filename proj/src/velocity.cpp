#include "nlcl/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlcl {

namespace {
constexpr int kSlidingBlock = 2048;  // re-anchor interval, thread-independent
constexpr int kMinSlidingWindow = 8;

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}
}  // namespace

std::string to_string(VelocityPath p) {
  switch (p) {
    case VelocityPath::serial: return "serial";
    case VelocityPath::direct: return "direct";
    case VelocityPath::sliding: return "sliding";
    case VelocityPath::automatic: return "auto";
  }
  return "?";
}

VelocityPath velocity_path_from_string(const std::string& s) {
  if (s == "serial") return VelocityPath::serial;
  if (s == "direct") return VelocityPath::direct;
  if (s == "sliding") return VelocityPath::sliding;
  if (s == "auto" || s == "automatic") return VelocityPath::automatic;
  throw std::invalid_argument("unknown velocity path: " + s);
}

VelocityEvaluator::VelocityEvaluator(const ScalarFunc& v, const Kernel& kernel,
                                     const KernelWeights& weights, double dx,
                                     VelocityPath requested)
    : v_(v), weights_(weights.weights), k_min_(weights.k_min) {
  if (weights_.empty())
    throw std::invalid_argument("velocity: empty weight vector");
  build_plan(kernel, dx);
  switch (requested) {
    case VelocityPath::automatic:
      active_ = plan_valid_ ? VelocityPath::sliding : VelocityPath::direct;
      break;
    case VelocityPath::sliding:
      if (!plan_valid_)
        throw std::runtime_error(
            "velocity: sliding path unavailable for this kernel/weight pair");
      active_ = VelocityPath::sliding;
      break;
    default:
      active_ = requested;
      break;
  }
}

void VelocityEvaluator::build_plan(const Kernel& kernel, double dx) {
  plan_valid_ = false;
  const auto& a = kernel.antiderivative_poly();
  const int w_count = static_cast<int>(weights_.size());
  if (a.empty() || w_count < kMinSlidingWindow) return;
  const int p_max = static_cast<int>(a.size()) - 1;
  if (p_max - 1 > 3) return;

  // gamma(k) = Omega((k+1)dx) - Omega(k dx) expands to a polynomial in k.
  double b[4] = {0, 0, 0, 0};
  double h_pow = 1.0;
  for (int p = 0; p <= p_max; ++p) {
    for (int m = 0; m < p; ++m) b[m] += a[p] * h_pow * binom(p, m);
    h_pow *= dx;
  }
  // shift to the window coordinate u = k - k_min
  for (int m = 0; m <= 3; ++m) {
    double e = 0.0;
    for (int q = m; q <= 3; ++q)
      e += b[q] * binom(q, m) * ipow(static_cast<double>(k_min_), q - m);
    coeff_[m] = e;
  }
  degree_ = 0;
  for (int m = 3; m >= 1; --m)
    if (coeff_[m] != 0.0) {
      degree_ = m;
      break;
    }

  // Where the cell integral was clipped to the support the weight falls off
  // the polynomial; keep those as explicit per-cell corrections. Anything
  // off-polynomial in the interior disqualifies the plan. The fp dust in the
  // computed weights scales with the antiderivative values, not the weights.
  double scale = 1.0;
  for (double w : weights_) scale = std::max(scale, std::abs(w));
  corrections_.clear();
  for (int u = 0; u < w_count; ++u) {
    double pu = ((coeff_[3] * u + coeff_[2]) * u + coeff_[1]) * u + coeff_[0];
    double delta = weights_[static_cast<std::size_t>(u)] - pu;
    if (std::abs(delta) > 64.0 * 2.220446049250313e-16 * scale) {
      if (u != 0 && u != w_count - 1) return;  // not our weights; use direct
      corrections_.push_back({u, delta});
    }
  }
  plan_valid_ = true;
}

void VelocityEvaluator::operator()(std::span<const double> padded, int center,
                                   int j_first, std::span<double> out) const {
  switch (active_) {
    case VelocityPath::serial:
      eval_dot(padded, center, j_first, out, false);
      return;
    case VelocityPath::direct:
      eval_dot(padded, center, j_first, out, true);
      return;
    case VelocityPath::sliding:
      eval_sliding(padded, center, j_first, out);
      return;
    case VelocityPath::automatic:
      break;
  }
  eval_dot(padded, center, j_first, out, true);
}

void VelocityEvaluator::eval_dot(std::span<const double> padded, int center,
                                 int j_first, std::span<double> out,
                                 bool parallel) const {
  const double* rho = padded.data();
  const double* w = weights_.data();
  const int w_count = static_cast<int>(weights_.size());
  const int count = static_cast<int>(out.size());
  if (!parallel) {
    for (int i = 0; i < count; ++i) {
      const double* win = rho + center + j_first + i + 1 + k_min_;
      double acc = 0.0;
      for (int u = 0; u < w_count; ++u) acc += w[u] * win[u];
      out[static_cast<std::size_t>(i)] = v_(acc);
    }
    return;
  }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < count; ++i) {
    const double* win = rho + center + j_first + i + 1 + k_min_;
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    int u = 0;
    for (; u + 4 <= w_count; u += 4) {
      a0 += w[u] * win[u];
      a1 += w[u + 1] * win[u + 1];
      a2 += w[u + 2] * win[u + 2];
      a3 += w[u + 3] * win[u + 3];
    }
    for (; u < w_count; ++u) a0 += w[u] * win[u];
    out[static_cast<std::size_t>(i)] = v_((a0 + a1) + (a2 + a3));
  }
}

void VelocityEvaluator::eval_sliding(std::span<const double> padded, int center,
                                     int j_first, std::span<double> out) const {
  const double* rho = padded.data();
  const int w_count = static_cast<int>(weights_.size());
  const int count = static_cast<int>(out.size());
  const int blocks = (count + kSlidingBlock - 1) / kSlidingBlock;
  const long double wm1 = static_cast<long double>(w_count - 1);
  const long double wm1_2 = wm1 * wm1;
  const long double wm1_3 = wm1_2 * wm1;

#pragma omp parallel for schedule(static)
  for (int blk = 0; blk < blocks; ++blk) {
    const int i0 = blk * kSlidingBlock;
    const int nb = std::min(kSlidingBlock, count - i0);
    int s = center + j_first + i0 + 1 + k_min_;
    long double m0 = 0, m1 = 0, m2 = 0, m3 = 0;
    for (int u = 0; u < w_count; ++u) {
      long double r = rho[s + u];
      m0 += r;
      if (degree_ >= 1) m1 += static_cast<long double>(u) * r;
      if (degree_ >= 2) m2 += static_cast<long double>(u) * u * r;
      if (degree_ >= 3) m3 += static_cast<long double>(u) * u * u * r;
    }
    for (int i = 0; i < nb; ++i) {
      long double val = coeff_[0] * m0;
      if (degree_ >= 1) val += coeff_[1] * m1;
      if (degree_ >= 2) val += coeff_[2] * m2;
      if (degree_ >= 3) val += coeff_[3] * m3;
      double arg = static_cast<double>(val);
      for (const auto& c : corrections_) arg += c.delta * rho[s + c.idx];
      out[static_cast<std::size_t>(i0 + i)] = v_(arg);
      if (i + 1 == nb) break;
      const long double r_out = rho[s];
      const long double r_in = rho[s + w_count];
      if (degree_ >= 3) m3 = m3 - 3 * m2 + 3 * m1 - m0 + r_out + wm1_3 * r_in;
      if (degree_ >= 2) m2 = m2 - 2 * m1 + m0 - r_out + wm1_2 * r_in;
      if (degree_ >= 1) m1 = m1 - m0 + r_out + wm1 * r_in;
      m0 = m0 - r_out + r_in;
      ++s;
    }
  }
}

}  // namespace nlcl
