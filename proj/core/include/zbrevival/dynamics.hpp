#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "zbrevival/truncated_model.hpp"
#include "zbrevival/wavepacket.hpp"

namespace zbr {

/// Uniform grid t_i = t_start + (t_end - t_start) i / (n_samples - 1), endpoints included.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  int n_samples = 2;

  /// Smallest uniform grid over [t_start, t_end] whose spacing does not exceed max_step.
  static TimeGrid with_max_step(double t_start, double t_end, double max_step);

  void validate() const;
  [[nodiscard]] double step() const { return (t_end - t_start) / (n_samples - 1); }
  [[nodiscard]] double time(int i) const {
    return t_start + ((t_end - t_start) * i) / (n_samples - 1);
  }
  [[nodiscard]] std::vector<double> times() const;
};

/// Single constant K with oracle(t) = K * closed(t), and how well it holds.
struct ProportionalityFit {
  double constant = 0.0;
  double max_relative_spread = 0.0;
  std::size_t samples_used = 0;
};

struct Trace {
  TimeGrid grid;
  std::vector<double> v_x_closed;                 ///< dimensionless series
  std::optional<std::vector<double>> v_x_oracle;  ///< atomic units
  std::vector<cdouble> autocorr;
  std::optional<ProportionalityFit> proportionality;
};

/// Velocity series for the equal-weight two-branch packet:
///
///   2 sum_n c_n c_{n+1} [ eta_n cos((E_n + E_{n+1}) t/hbar) - nu_n cos((E_n - E_{n+1}) t/hbar) ]
///   eta_n = gamma_n gamma_{n+1} - delta_n delta_{n+1}
///   nu_n  = gamma_{n+1} delta_n - gamma_n delta_{n+1}
///
/// with E_n the positive-branch energy and c_n = sqrt(2) amplitude(n, +).
/// The series is dimensionless; the physical <v_x> is (c/2) times it, which
/// the matrix oracle confirms sample by sample.
class VelocitySeries {
 public:
  /// Throws ContractError unless the packet uses the default equal real branch mix.
  explicit VelocitySeries(const WavePacket& packet);

  [[nodiscard]] double velocity_x(double t) const;

  /// Transverse series 2 sum c_n c_{n+1} [(gamma_n delta_{n+1} + delta_n gamma_{n+1})
  /// sin((E_{n+1} - E_n) t/hbar) - (gamma_n gamma_{n+1} + delta_n delta_{n+1})
  /// sin((E_n + E_{n+1}) t/hbar)], same units as velocity_x.
  [[nodiscard]] double velocity_y(double t) const;

 private:
  struct Term {
    double zb_weight;      // 2 c_n c_{n+1} eta_n
    double slow_weight;    // 2 c_n c_{n+1} nu_n
    double zb_freq;        // (E_n + E_{n+1}) / hbar
    double slow_freq;      // (E_n - E_{n+1}) / hbar
    double y_zb_weight;    // 2 c_n c_{n+1} (gamma gamma' + delta delta')
    double y_slow_weight;  // 2 c_n c_{n+1} (gamma delta' + delta gamma')
  };
  std::vector<Term> terms_;
};

[[nodiscard]] double velocity_x_closed(const WavePacket& packet, double t);

/// Leading-order series result <v_y> = 0. The matrix oracle disagrees: see
/// velocity_y_series and expectation_velocity_y_oracle.
[[nodiscard]] double velocity_y(const WavePacket& packet, double t);

[[nodiscard]] double velocity_y_series(const WavePacket& packet, double t);

/// sum_k weight_k exp(i energy_k t / hbar).
[[nodiscard]] cdouble autocorrelation(std::span<const double> weights,
                                      std::span<const double> energies, double hbar, double t);

/// <Psi(0)|Psi(t)> = sum_{n,+/-} |amp(n,+/-)|^2 exp(i E_n^{+/-} t / hbar).
[[nodiscard]] cdouble autocorrelation(const WavePacket& packet, double t);

/// Multiplies every amplitude by exp(i E_n^{+/-} t / hbar).
[[nodiscard]] WavePacket evolve_state(const WavePacket& packet, double t);

/// <a|b> over both branches.
[[nodiscard]] cdouble overlap(const WavePacket& a, const WavePacket& b);

/// Evaluates velocity expectations with the dense operators of a TruncatedModel.
/// The packet is mapped to the Fock (x) spinor basis through the eigenspinors,
/// each component picks up its phase, and <Psi(t)|v|Psi(t)> is a quadratic form.
class VelocityOracle {
 public:
  /// Throws ContractError when model.n_max < packet.n_max() + 2 or the
  /// physical constants differ.
  VelocityOracle(const WavePacket& packet, const TruncatedModel& model);

  [[nodiscard]] Eigen::VectorXcd state(double t) const;
  [[nodiscard]] double velocity_x(double t) const;
  [[nodiscard]] cdouble velocity_y(double t) const;

 private:
  const TruncatedModel* model_;
  Eigen::MatrixXd basis_;      // columns: embedded eigenspinors
  Eigen::VectorXcd amplitudes_;
  Eigen::VectorXd frequencies_;  // E / hbar
};

[[nodiscard]] double expectation_velocity_oracle(const WavePacket& packet,
                                                 const TruncatedModel& model, double t);

/// Real part; the oracle's v_y is Hermitian so the imaginary part is rounding only.
[[nodiscard]] double expectation_velocity_y_oracle(const WavePacket& packet,
                                                   const TruncatedModel& model, double t);

/// Fits K at t = grid start (falling back to the largest |closed| sample if
/// that is zero) and reports max |ratio/K - 1| over samples whose |closed|
/// exceeds 1e-3 of its maximum.
[[nodiscard]] ProportionalityFit fit_proportionality(std::span<const double> closed,
                                                     std::span<const double> oracle);

struct SampleOptions {
  int threads = 0;  ///< 0 = runtime default; ignored without OpenMP
};

/// Evaluates closed form, autocorrelation and, with a model, the oracle at
/// every grid point. Samples are independent so the result does not depend on
/// the thread count.
[[nodiscard]] Trace sample_trace(const WavePacket& packet, const TruncatedModel* model,
                                 const TimeGrid& grid, SampleOptions options = {});

}  // namespace zbr
