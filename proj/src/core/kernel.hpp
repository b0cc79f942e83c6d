#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sipkit {

enum class KernelStatus { Ok, AllZero, NonIrreducible, Negative, Empty };

/// Symmetric finite-range jump law on Z. Only the positive half p(1..R) is
/// stored; p(-r) = p(r) and p(0) = 0 hold by construction. Weights are not
/// normalised.
class FiniteRangeKernel {
 public:
  /// Throws Error(AllZero | NonIrreducible | InvalidArgument).
  explicit FiniteRangeKernel(std::vector<double> positive_weights);

  static FiniteRangeKernel nearest_neighbor();  // p(±1) = 1/2
  static FiniteRangeKernel range_two();         // p(±1) = p(±2) = 1/4
  /// "nn" | "nearest-neighbor" | "range2".
  static FiniteRangeKernel preset(const std::string& name);

  int range() const noexcept { return static_cast<int>(weights_.size()); }
  /// p(r) for any integer r (zero outside [-R, R] and at 0).
  double operator()(int64_t r) const noexcept;
  std::span<const double> positive_weights() const noexcept { return weights_; }

  /// chi = sum_{r=1}^R r^2 p(r).
  double chi() const noexcept { return chi_; }
  /// sum over r in A = [-R,R] \ {0} of p(r).
  double total_weight() const noexcept { return 2.0 * half_weight_; }
  /// gcd of the support of the positive half.
  int support_gcd() const noexcept;

 private:
  std::vector<double> weights_;
  double chi_ = 0.0;
  double half_weight_ = 0.0;
};

KernelStatus validate(std::span<const double> positive_weights);
const char* to_string(KernelStatus s);

/// Scaled jump sets: A_N = (1/N){-R..R}\{0}, A_N^+ = |A_N| and
/// B_N = (1/N){-2R..2R}.
struct SupportSets {
  std::vector<double> jumps;
  std::vector<double> positive_jumps;
  std::vector<double> extended;
};

SupportSets support_sets(const FiniteRangeKernel& kernel, int N);

/// Parses a kernel file: `range = R` and `weights = w1, w2, ...` lines
/// (`#` comments), or a bare whitespace/comma separated weight list.
FiniteRangeKernel read_kernel_file(const std::string& path);

}  // namespace sipkit
