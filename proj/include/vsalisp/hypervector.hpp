#pragma once

// FHRR hypervectors: fixed-length vectors of complex phasors, bound by the
// Hadamard product, unbound by multiplication with the conjugate, bundled by
// elementwise addition, compared with the real part of the normalized inner
// product.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace vsalisp {

using cplx = std::complex<double>;

// Tolerance for exact algebraic identities (bind/unbind inverse, etc.).
inline constexpr double kExactTolerance = 1e-12;
// Tolerance for invariants that accumulate rounding over D-element chains.
inline constexpr double kAccumulatedTolerance = 1e-9;

class HyperVector {
 public:
  using value_type = cplx;

  HyperVector() = default;
  // Every element set to `fill`. Throws invalid-dimension for dimension 0.
  explicit HyperVector(std::size_t dimension, cplx fill = cplx(1.0, 0.0));
  explicit HyperVector(std::vector<cplx> elements);

  // All-ones vector; the identity of bind.
  static HyperVector identity(std::size_t dimension) { return HyperVector(dimension); }
  static HyperVector zero(std::size_t dimension) { return HyperVector(dimension, cplx{}); }

  [[nodiscard]] std::size_t dimension() const noexcept { return elements_.size(); }
  [[nodiscard]] bool empty() const noexcept { return elements_.empty(); }

  [[nodiscard]] const cplx& operator[](std::size_t i) const { return elements_[i]; }
  cplx& operator[](std::size_t i) { return elements_[i]; }

  [[nodiscard]] const cplx* data() const noexcept { return elements_.data(); }
  cplx* data() noexcept { return elements_.data(); }

  [[nodiscard]] std::span<const cplx> elements() const noexcept { return elements_; }
  std::span<cplx> elements() noexcept { return elements_; }

  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  // max_j | |v_j| - 1 |
  [[nodiscard]] double max_modulus_error() const noexcept;

  friend bool operator==(const HyperVector&, const HyperVector&) = default;

 private:
  std::vector<cplx> elements_;
};

// Seeded generator for symbol streams. Exclusively owned by its caller.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer on [lo, hi], inclusive, without modulo bias.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

  // Standard normal deviate (Box-Muller on this generator's own draws).
  double normal();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Stable 64-bit seed derived from a base seed and a name (FNV-1a, then a
// splitmix64 finalizer). Used to give interned symbols name-addressed vectors.
std::uint64_t derive_seed(std::uint64_t base, std::string_view name) noexcept;

// Fresh atomic symbol: each element exp(i*theta), theta uniform on (0, 2*pi].
HyperVector random_symbol(Rng& rng, std::size_t dimension);

HyperVector bind(const HyperVector& u, const HyperVector& v);
// w * conj(u)
HyperVector unbind(const HyperVector& w, const HyperVector& u);
// Unnormalized elementwise sum.
HyperVector superpose(const HyperVector& u, const HyperVector& v);
HyperVector subtract(const HyperVector& u, const HyperVector& v);
HyperVector scale(const HyperVector& v, double factor);
// acc += weight * v
void accumulate(HyperVector& acc, const HyperVector& v, cplx weight = cplx(1.0, 0.0));
// Unit-modulus projection, phase preserved; zero elements become 1 + 0i.
HyperVector normalize(const HyperVector& v);
HyperVector conjugate(const HyperVector& v);
// Elementwise integer power by repeated squaring. Negative exponents use the
// conjugate, which is the inverse for unit phasors.
HyperVector power(const HyperVector& v, std::int64_t exponent);

// Re(conj(u)^T v) / D
double similarity(const HyperVector& u, const HyperVector& v);
// conj(u)^T v, unscaled.
cplx inner(const HyperVector& u, const HyperVector& v);
// Squared L2 norm divided by D.
double mean_energy(const HyperVector& v);

// Element phases in (-pi, pi].
std::vector<double> phases(const HyperVector& v);

// Throws dimension-mismatch unless both have the same dimension.
void require_same_dimension(const HyperVector& u, const HyperVector& v);

}  // namespace vsalisp
