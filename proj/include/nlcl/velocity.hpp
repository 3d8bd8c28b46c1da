#ifndef NLCL_VELOCITY_HPP
#define NLCL_VELOCITY_HPP

#include <span>
#include <string>

#include "nlcl/model.hpp"
#include "nlcl/quadrature.hpp"

namespace nlcl {

enum class VelocityPath { serial, direct, sliding, automatic };

std::string to_string(VelocityPath p);
VelocityPath velocity_path_from_string(const std::string& s);

/// Evaluates the nonlocal interface velocities
///   V_j = v( sum_k gamma_k rho_{j+k+1} )
/// over a contiguous range of interfaces, given a ghost-padded density
/// array. Three interchangeable paths:
///   serial  - plain dot product per interface, the reference implementation
///   direct  - same contraction, unrolled and OpenMP-parallel over interfaces
///   sliding - O(1) per interface: kernels with polynomial antiderivatives
///             have weights polynomial in k, so the window contraction
///             reduces to a handful of running power moments, updated by a
///             binomial recurrence and re-anchored every block (fixed block
///             size keeps results independent of the thread count)
/// `automatic` resolves to sliding when available, else direct.
class VelocityEvaluator {
public:
  VelocityEvaluator(const ScalarFunc& v, const Kernel& kernel,
                    const KernelWeights& weights, double dx,
                    VelocityPath requested = VelocityPath::automatic);

  /// out[i] = V_{j_first+i}. `center` is the padded index of interior cell 0.
  /// The caller guarantees the padded array covers every cell the windows
  /// touch.
  void operator()(std::span<const double> padded, int center, int j_first,
                  std::span<double> out) const;

  VelocityPath active() const { return active_; }
  bool sliding_available() const { return plan_valid_; }
  int k_min() const { return k_min_; }
  int k_max() const { return k_min_ + static_cast<int>(weights_.size()) - 1; }

private:
  void eval_dot(std::span<const double> padded, int center, int j_first,
                std::span<double> out, bool parallel) const;
  void eval_sliding(std::span<const double> padded, int center, int j_first,
                    std::span<double> out) const;
  void build_plan(const Kernel& kernel, double dx);

  ScalarFunc v_ = ScalarFunc::polynomial({0.0});
  std::vector<double> weights_;
  int k_min_ = 0;
  VelocityPath active_ = VelocityPath::direct;

  // sliding plan
  bool plan_valid_ = false;
  int degree_ = 0;
  double coeff_[4] = {0, 0, 0, 0};  // gamma as a polynomial in the window index
  struct Correction {
    int idx;
    double delta;
  };
  std::vector<Correction> corrections_;  // support-clipped boundary cells
};

}  // namespace nlcl

#endif
