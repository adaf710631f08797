#pragma once

#include <array>
#include <cstdint>

namespace rmtedge::random {

/// Philox4x32-10 block function (Salmon et al., SC'11).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Independent variate stream keyed by (seed, stream id). Stream i of a run
/// depends only on the seed and i, never on how streams are distributed
/// across threads.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint32_t next_u32();
  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform();
  /// Standard normal by the Box-Muller transform.
  double normal();
  /// Gamma(shape, 1) by Marsaglia-Tsang squeeze; shape < 1 via the
  /// U^{1/shape} boost of Gamma(shape + 1).
  double gamma(double shape);
  /// Chi variate with k degrees of freedom, sqrt(2 Gamma(k/2)).
  double chi(double k);

 private:
  void refill();

  PhiloxKey key_;
  PhiloxCounter counter_;
  PhiloxCounter block_{};
  int used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rmtedge::random
