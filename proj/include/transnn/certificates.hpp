#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "transnn/limit_model.hpp"
#include "transnn/matrix.hpp"
#include "transnn/network_model.hpp"

namespace transnn {

/// Operator norm induced by a vector norm. `one` is the maximum absolute
/// column sum, `inf` the maximum absolute row sum.
enum class Norm { one, inf };

std::string to_string(Norm norm);

double induced_norm(const Matrix& m, Norm norm);

enum class CertificateKind {
  contraction_1,
  contraction_inf,
  stability,
  upper_bound_info,
  upper_bound_limit
};

std::string to_string(CertificateKind kind);

struct CertificateReport {
  CertificateKind kind = CertificateKind::contraction_1;
  bool holds = false;
  /// Norm value, spectral radius, or largest bound violation.
  double witness = 0.0;
  /// Per-frame values where the certificate is evaluated frame by frame.
  std::optional<std::vector<double>> per_step;
  /// For contraction: the same quantity under the other induced norm.
  std::optional<double> companion_witness;
  std::string note;
};

/// Checks ‖[B_E ⊙ Λ; B_I ⊙ Λ]‖ < 1 on every frame. Frames past the schedule
/// repeat the last one, so checking each stored frame covers all k.
CertificateReport contraction_certificate(const Network& net, Norm norm);

struct StabilityOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 100000;
  std::uint64_t seed = 0x5eed;
};

/// Spectral radius of a nonnegative matrix. Power iteration on (m + I) with
/// Collatz-Wielandt bounds; when the bounds stall (reducible m) the radius is
/// taken over the strongly connected diagonal blocks. Throws Error carrying
/// the last iterate if a block fails to converge.
double perron_radius(const Matrix& m, const StabilityOptions& options = {});

/// Spectral radius of B_E ⊙ Λ against 1. Requires a constant network.
CertificateReport stability_certificate(const Network& net, const StabilityOptions& options = {});

/// Which linear comparison system bounds the states.
enum class BoundModel {
  population,  ///< B ⊙ A ⊙ Ω, bounding the (s, o) mean-field states
  limit        ///< B ⊙ Λ, bounding the limit (s̄, ō) states
};

/// z(0) = s0, z(k+1) = (B_E^k ⊙ M^k) z(k) for s, and
/// o-bound(k) = (B_I^{k-1} ⊙ M^{k-1}) z(k-1) for k ≥ 1. Row 0 of `o`
/// is the zero initial inhibition.
struct BoundTrajectory {
  Matrix s;  ///< (horizon+1) × n
  Matrix o;
};

BoundTrajectory upper_bound_trajectory(const Network& net, const std::vector<double>& s0,
                                       std::size_t horizon, BoundModel model);

/// Largest amount by which `states` exceed `bound` (≤ 0 when dominated),
/// compared entrywise. Infinite bound entries dominate anything.
double bound_violation(const Matrix& states, const Matrix& bound);

/// Runs the matching trajectory from initial_p and reports the largest
/// violation of its linear bound; holds when it does not exceed `tolerance`.
CertificateReport upper_bound_certificate(const Network& net, std::size_t horizon,
                                          BoundModel model, double tolerance = 1e-12);

/// Jacobian of the limit step at (s̄, ō):
/// [B_E ⊙ Λ; B_I ⊙ Λ] · [diag(e^{-o} e^{-s}), diag(-e^{-o}(1 - e^{-s}))].
Matrix limit_jacobian(const Network& net, std::size_t k, const LimitState& state);

/// [∂φ/∂s ∂φ/∂o] at (s, o), n × 2n.
Matrix phi_jacobian(const LimitState& state);

}  // namespace transnn
