#include "kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace sipkit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonIrreducible: return "NonIrreducible";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::RejectionStall: return "RejectionStall";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ToleranceError: return "ToleranceError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

const char* to_string(KernelStatus s) {
  switch (s) {
    case KernelStatus::Ok: return "ok";
    case KernelStatus::AllZero: return "AllZero";
    case KernelStatus::NonIrreducible: return "NonIrreducible";
    case KernelStatus::Negative: return "NegativeWeight";
    case KernelStatus::Empty: return "Empty";
  }
  return "unknown";
}

KernelStatus validate(std::span<const double> w) {
  if (w.empty()) return KernelStatus::Empty;
  int g = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0) || !std::isfinite(w[i])) return KernelStatus::Negative;
    if (w[i] > 0.0) g = std::gcd(g, static_cast<int>(i + 1));
  }
  if (g == 0) return KernelStatus::AllZero;
  if (g != 1) return KernelStatus::NonIrreducible;
  return KernelStatus::Ok;
}

FiniteRangeKernel::FiniteRangeKernel(std::vector<double> positive_weights)
    : weights_(std::move(positive_weights)) {
  switch (validate(weights_)) {
    case KernelStatus::Ok: break;
    case KernelStatus::AllZero: fail(ErrorCode::AllZero, "kernel has no positive weight");
    case KernelStatus::NonIrreducible:
      fail(ErrorCode::NonIrreducible,
           "kernel support has gcd " + std::to_string(support_gcd()) + " > 1");
    case KernelStatus::Negative:
      fail(ErrorCode::InvalidArgument, "kernel weights must be finite and nonnegative");
    case KernelStatus::Empty: fail(ErrorCode::InvalidArgument, "kernel range must be >= 1");
  }
  // trailing zeros do not extend the range
  while (weights_.back() == 0.0) weights_.pop_back();
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double r = static_cast<double>(i + 1);
    chi_ += r * r * weights_[i];
    half_weight_ += weights_[i];
  }
}

FiniteRangeKernel FiniteRangeKernel::nearest_neighbor() { return FiniteRangeKernel({0.5}); }

FiniteRangeKernel FiniteRangeKernel::range_two() { return FiniteRangeKernel({0.25, 0.25}); }

FiniteRangeKernel FiniteRangeKernel::preset(const std::string& name) {
  if (name == "nn" || name == "nearest-neighbor" || name == "nearest_neighbor")
    return nearest_neighbor();
  if (name == "range2" || name == "range-2") return range_two();
  fail(ErrorCode::ConfigError, "unknown kernel preset '" + name + "'");
}

double FiniteRangeKernel::operator()(int64_t r) const noexcept {
  const int64_t a = r < 0 ? -r : r;
  if (a == 0 || a > range()) return 0.0;
  return weights_[static_cast<std::size_t>(a - 1)];
}

int FiniteRangeKernel::support_gcd() const noexcept {
  int g = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] > 0.0) g = std::gcd(g, static_cast<int>(i + 1));
  return g;
}

SupportSets support_sets(const FiniteRangeKernel& kernel, int N) {
  require(N >= 1, "support_sets: N must be >= 1");
  const int R = kernel.range();
  const double h = 1.0 / N;
  SupportSets s;
  for (int r = -R; r <= R; ++r)
    if (r != 0) s.jumps.push_back(r * h);
  for (int r = 1; r <= R; ++r) s.positive_jumps.push_back(r * h);
  for (int r = -2 * R; r <= 2 * R; ++r) s.extended.push_back(r * h);
  return s;
}

FiniteRangeKernel read_kernel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot open kernel file '" + path + "'");
  std::vector<double> weights;
  int declared_range = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string key, rest = line;
    if (auto eq = line.find('='); eq != std::string::npos) {
      key = line.substr(0, eq);
      rest = line.substr(eq + 1);
      key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
    }
    std::replace(rest.begin(), rest.end(), ',', ' ');
    std::istringstream ss(rest);
    if (key == "range") {
      if (!(ss >> declared_range) || declared_range < 1)
        fail(ErrorCode::ConfigError, "kernel file: bad range");
      continue;
    }
    if (!key.empty() && key != "weights")
      fail(ErrorCode::ConfigError, "kernel file: unknown key '" + key + "'");
    double w;
    while (ss >> w) weights.push_back(w);
    if (!ss.eof()) fail(ErrorCode::ConfigError, "kernel file: bad weight in '" + line + "'");
  }
  if (declared_range > 0 && static_cast<int>(weights.size()) != declared_range)
    fail(ErrorCode::ConfigError, "kernel file: range does not match number of weights");
  return FiniteRangeKernel(std::move(weights));
}

}  // namespace sipkit
