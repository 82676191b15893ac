#pragma once

// Residue hyperdimensional computing: integers encoded as Hadamard products
// of per-modulus phasor codes whose phases are roots of unity. Addition is
// binding, negation is conjugation, multiplication is exponentiation by a
// decoded operand.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "vsalisp/hypervector.hpp"
#include "vsalisp/resonator.hpp"

namespace vsalisp {

// Below this best-match similarity a decode reports failure.
inline constexpr double kConfidenceFloor = 0.1;

// Pairwise co-prime moduli, each >= 2, with range = product of moduli.
class ModuliSet {
 public:
  // Throws invalid-moduli naming the offending modulus or pair.
  explicit ModuliSet(std::vector<std::int64_t> moduli);

  [[nodiscard]] std::span<const std::int64_t> moduli() const noexcept { return moduli_; }
  [[nodiscard]] std::size_t size() const noexcept { return moduli_.size(); }
  [[nodiscard]] std::int64_t operator[](std::size_t i) const { return moduli_[i]; }
  [[nodiscard]] std::int64_t range() const noexcept { return range_; }

  friend bool operator==(const ModuliSet&, const ModuliSet&) = default;

 private:
  std::vector<std::int64_t> moduli_;
  std::int64_t range_ = 1;
};

// One residue per modulus.
struct ResidueVector {
  std::vector<std::int64_t> residues;
};

ResidueVector to_residues(std::int64_t x, const ModuliSet& moduli);

// Unique x in [0, range) with x = residues[i] (mod m_i). Throws
// malformed-residues when a residue is out of [0, m_i) or the count differs.
std::int64_t crt_reconstruct(const ResidueVector& residues, const ModuliSet& moduli);

// x mod m in [0, m) for any sign of x.
std::int64_t floor_mod(std::int64_t x, std::int64_t m) noexcept;

struct ExtendedGcd {
  std::int64_t gcd;
  std::int64_t x;  // a*x + b*y = gcd
  std::int64_t y;
};
ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) noexcept;

// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
std::optional<std::int64_t> modular_inverse(std::int64_t a, std::int64_t m) noexcept;

enum class DecodeMethod { kExhaustive, kResonator };

struct ResonatorOptions {
  std::size_t max_iters = 100;
  std::size_t patience = 3;
  std::ostream* trace = nullptr;
};

class ResidueCodebook {
 public:
  // Draws D root-of-unity indices k in [1, m_i] per modulus and a fresh tag
  // symbol, in that order, from `rng`.
  ResidueCodebook(ModuliSet moduli, std::size_t dimension, Rng& rng);

  // Rebuilds from explicit root indices and tag (deserialization path).
  ResidueCodebook(ModuliSet moduli, std::vector<std::vector<std::uint32_t>> root_indices,
                  HyperVector tag);

  [[nodiscard]] const ModuliSet& moduli() const noexcept { return moduli_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::int64_t range() const noexcept { return moduli_.range(); }
  [[nodiscard]] const HyperVector& tag() const noexcept { return tag_; }

  // phi_i[j] = 2*pi*k/m_i
  [[nodiscard]] std::vector<double> phases(std::size_t modulus_index) const;
  [[nodiscard]] std::span<const std::uint32_t> root_indices(std::size_t modulus_index) const {
    return root_indices_[modulus_index];
  }
  // z_i = exp(i*phi_i)
  [[nodiscard]] HyperVector base(std::size_t modulus_index) const;

  // zeta_i(x) = z_i^x for a single modulus.
  [[nodiscard]] HyperVector encode_channel(std::size_t modulus_index, std::int64_t x) const;
  // zeta(x), the Hadamard product of all channels.
  [[nodiscard]] HyperVector encode(std::int64_t x) const;

  // Per-modulus codebooks {zeta_i(0), ..., zeta_i(m_i - 1)}.
  [[nodiscard]] const std::vector<FactorCodebook>& channel_codebooks() const noexcept {
    return channels_;
  }

  // Best exhaustive candidate without applying the confidence floor.
  struct Match {
    std::int64_t value;
    double similarity;
  };
  [[nodiscard]] Match best_exhaustive(const HyperVector& v) const;

  // Decodes to [0, range). Throws undecodable below the confidence floor.
  [[nodiscard]] std::int64_t decode(const HyperVector& v, DecodeMethod method,
                                    const ResonatorOptions& options = {},
                                    double floor = kConfidenceFloor) const;

  void write(std::ostream& out) const;
  static ResidueCodebook read(std::istream& in);

 private:
  void build_tables();

  ModuliSet moduli_;
  std::size_t dimension_ = 0;
  std::vector<std::vector<std::uint32_t>> root_indices_;
  std::vector<std::vector<cplx>> roots_;  // roots_[i][r] = exp(2*pi*i*r/m_i)
  HyperVector tag_;
  std::vector<FactorCodebook> channels_;
  std::vector<HyperVector> table_;  // zeta(x) for all x, when small enough
};

// Elementwise product; zeta(a) . zeta(b) = zeta(a + b).
HyperVector add_bind(const HyperVector& u, const HyperVector& v);
// Conjugate; encodes -x.
HyperVector negate(const HyperVector& v);
// Decodes v to x2, then raises u elementwise to x2.
HyperVector mul_bind(const ResidueCodebook& cb, const HyperVector& u, const HyperVector& v,
                     DecodeMethod method = DecodeMethod::kExhaustive,
                     const ResonatorOptions& options = {});
// Encoding of x2^-1 mod range. Throws no-inverse when gcd(x2, range) != 1.
HyperVector mod_inverse(const ResidueCodebook& cb, const HyperVector& v,
                        DecodeMethod method = DecodeMethod::kExhaustive,
                        const ResonatorOptions& options = {});

}  // namespace vsalisp
