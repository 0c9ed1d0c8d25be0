#include "zbrevival/wavepacket.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "zbrevival/errors.hpp"

namespace zbr {

namespace {

double gaussian_weight(int n, int n0, double sigma) {
  const double d = n - n0;
  return std::exp(-d * d / sigma);  // c_n^2 up to a constant
}

}  // namespace

bool BranchMix::is_equal_real() const {
  constexpr double tol = 1e-12;
  return std::abs(positive - cdouble(M_SQRT1_2, 0.0)) < tol &&
         std::abs(negative - cdouble(M_SQRT1_2, 0.0)) < tol;
}

void PacketSpec::validate() const {
  if (n0 < 1) throw std::invalid_argument("packet centre n0 must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("packet width sigma must be positive and finite");
  }
  if (n_max <= n0) throw std::invalid_argument("packet cutoff n_max must exceed n0");
  const double mix_norm = std::norm(mix.positive) + std::norm(mix.negative);
  if (std::abs(mix_norm - 1.0) > 1e-12) {
    throw std::invalid_argument("branch mix must satisfy |a+|^2 + |a-|^2 = 1");
  }
}

double raw_gaussian_coefficient(int n, int n0, double sigma) {
  const double d = n - n0;
  return std::sqrt(1.0 / (M_PI * std::sqrt(sigma))) * std::exp(-d * d / (2.0 * sigma));
}

double gaussian_tail_mass(int n0, double sigma, int n_max) {
  // Terms are summed outward from the far end so the tiny tail is not lost
  // against the bulk.
  const int far = n0 + static_cast<int>(std::ceil(40.0 * std::sqrt(sigma))) + 1;
  double tail = 0.0;
  for (int n = far; n > n_max; --n) tail += gaussian_weight(n, n0, sigma);
  double total = tail;
  for (int n = std::min(n_max, far); n >= 0; --n) total += gaussian_weight(n, n0, sigma);
  return tail / total;
}

std::vector<double> gaussian_coefficients(const PacketSpec& spec) {
  spec.validate();
  const double tail = gaussian_tail_mass(spec.n0, spec.sigma, spec.n_max);
  if (tail > kTailMassTolerance) {
    throw TruncationError("Gaussian tail mass " + std::to_string(tail) + " beyond n_max = " +
                          std::to_string(spec.n_max) + " exceeds tolerance");
  }
  std::vector<double> c(static_cast<std::size_t>(spec.n_max) + 1);
  for (int n = 0; n <= spec.n_max; ++n) {
    c[static_cast<std::size_t>(n)] = raw_gaussian_coefficient(n, spec.n0, spec.sigma);
  }
  const double norm = std::sqrt(std::transform_reduce(c.begin(), c.end(), c.begin(), 0.0));
  for (double& v : c) v /= norm;
  return c;
}

int recommend_cutoff(int n0, double sigma) {
  if (n0 < 1 || !(sigma > 0.0)) {
    throw std::invalid_argument("recommend_cutoff: need n0 >= 1 and sigma > 0");
  }
  const double width = std::sqrt(sigma);
  for (int k = 1;; ++k) {
    const int n_max = std::max(n0 + 10, n0 + static_cast<int>(std::ceil(k * width)));
    if (gaussian_tail_mass(n0, sigma, n_max) < kTailMassTolerance) return n_max;
  }
}

WavePacket::WavePacket(PhysicalParams params, std::span<const cdouble> positive,
                       std::span<const cdouble> negative, BranchMix mix)
    : params_(params),
      positive_(positive.begin(), positive.end()),
      negative_(negative.begin(), negative.end()),
      mix_(mix) {
  if (positive_.empty() || positive_.size() != negative_.size()) {
    throw std::invalid_argument("WavePacket: branch amplitude arrays must match and be non-empty");
  }
  if (negative_.front() != cdouble{}) {
    throw DomainError("WavePacket: the (n = 0, negative) state does not exist");
  }
}

cdouble WavePacket::amplitude(int n, Branch branch) const {
  if (n < 0 || n > n_max()) return {};
  const auto& v = branch == Branch::positive ? positive_ : negative_;
  return v[static_cast<std::size_t>(n)];
}

std::span<const cdouble> WavePacket::amplitudes(Branch branch) const {
  return branch == Branch::positive ? std::span<const cdouble>(positive_)
                                    : std::span<const cdouble>(negative_);
}

double WavePacket::branch_population(Branch branch) const {
  double sum = 0.0;
  for (const cdouble& a : amplitudes(branch)) sum += std::norm(a);
  return sum;
}

double WavePacket::norm_squared() const {
  return branch_population(Branch::positive) + branch_population(Branch::negative);
}

WavePacket build_packet(const PacketSpec& spec, const PhysicalParams& params) {
  params.validate();
  const std::vector<double> c = gaussian_coefficients(spec);
  std::vector<cdouble> pos(c.size());
  std::vector<cdouble> neg(c.size());
  for (std::size_t n = 0; n < c.size(); ++n) {
    pos[n] = spec.mix.positive * c[n];
    neg[n] = n == 0 ? cdouble{} : spec.mix.negative * c[n];
  }
  double norm2 = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) norm2 += std::norm(pos[n]) + std::norm(neg[n]);
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : pos) a *= scale;
  for (auto& a : neg) a *= scale;
  return WavePacket(params, pos, neg, spec.mix);
}

WavePacket single_eigenstate_packet(const PhysicalParams& params, int n, Branch branch,
                                    int n_max) {
  if (n < 0 || n > n_max) throw std::invalid_argument("eigenstate index outside [0, n_max]");
  if (n == 0 && branch == Branch::negative) {
    throw DomainError("the negative branch does not exist at n = 0");
  }
  std::vector<cdouble> pos(static_cast<std::size_t>(n_max) + 1);
  std::vector<cdouble> neg(pos.size());
  (branch == Branch::positive ? pos : neg)[static_cast<std::size_t>(n)] = 1.0;
  const BranchMix mix = branch == Branch::positive ? BranchMix{1.0, 0.0} : BranchMix{0.0, 1.0};
  return WavePacket(params, pos, neg, mix);
}

}  // namespace zbr
