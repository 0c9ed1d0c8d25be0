#pragma once

#include <complex>
#include <span>
#include <vector>

#include "zbrevival/params.hpp"

namespace zbr {

using cdouble = std::complex<double>;

/// Relative weights of the positive- and negative-energy packets.
struct BranchMix {
  cdouble positive{M_SQRT1_2, 0.0};
  cdouble negative{M_SQRT1_2, 0.0};

  [[nodiscard]] bool is_equal_real() const;
};

struct PacketSpec {
  int n0 = 30;
  double sigma = 3.0;
  int n_max = 40;
  BranchMix mix{};

  /// Throws std::invalid_argument unless n0 >= 1, sigma > 0, n_max > n0 and |mix| = 1.
  void validate() const;
};

/// Largest Gaussian tail mass beyond the cutoff that is tolerated.
inline constexpr double kTailMassTolerance = 1e-12;

/// Un-normalized Gaussian amplitude sqrt(1/(pi sqrt(sigma))) exp(-(n-n0)^2 / (2 sigma)).
[[nodiscard]] double raw_gaussian_coefficient(int n, int n0, double sigma);

/// Fraction of sum_{n>=0} c_n^2 that lies above n_max.
[[nodiscard]] double gaussian_tail_mass(int n0, double sigma, int n_max);

/// Gaussian populations c_0..c_{n_max}, renormalized to sum c_n^2 = 1.
/// Throws TruncationError when the tail beyond n_max exceeds kTailMassTolerance.
[[nodiscard]] std::vector<double> gaussian_coefficients(const PacketSpec& spec);

/// Smallest n_max = n0 + ceil(k sqrt(sigma)), k = 1, 2, ..., with tail mass below
/// kTailMassTolerance; never below n0 + 10.
[[nodiscard]] int recommend_cutoff(int n0, double sigma);

/// State in the energy eigenbasis: one complex amplitude per (n, branch).
/// The (0, negative) slot does not exist and always reads zero.
class WavePacket {
 public:
  /// Takes amplitudes for n = 0..N on each branch (both spans of length N+1).
  /// negative[0] must be zero. The packet is stored as given; no renormalization.
  WavePacket(PhysicalParams params, std::span<const cdouble> positive,
             std::span<const cdouble> negative, BranchMix mix);

  [[nodiscard]] const PhysicalParams& params() const { return params_; }
  [[nodiscard]] int n_max() const { return static_cast<int>(positive_.size()) - 1; }
  [[nodiscard]] const BranchMix& mix() const { return mix_; }

  [[nodiscard]] cdouble amplitude(int n, Branch branch) const;
  [[nodiscard]] std::span<const cdouble> amplitudes(Branch branch) const;

  [[nodiscard]] double norm_squared() const;
  [[nodiscard]] double branch_population(Branch branch) const;

 private:
  PhysicalParams params_;
  std::vector<cdouble> positive_;
  std::vector<cdouble> negative_;
  BranchMix mix_;
};

/// amplitude(n, +/-) = mix_{+/-} c_n, with (0, -) dropped and the whole packet
/// renormalized to unit norm afterwards.
[[nodiscard]] WavePacket build_packet(const PacketSpec& spec, const PhysicalParams& params);

/// Packet holding a single eigenstate, mostly useful for stationary-state checks.
[[nodiscard]] WavePacket single_eigenstate_packet(const PhysicalParams& params, int n,
                                                  Branch branch, int n_max);

}  // namespace zbr
