#include "vsalisp/residue.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "vsalisp/binary_io.hpp"
#include "vsalisp/error.hpp"
#include "vsalisp/kernels.hpp"

namespace vsalisp {

namespace {

// Exhaustive-decode table is cached up to this many complex elements (64 MiB).
constexpr std::size_t kMaxTableElements = std::size_t{1} << 22;

constexpr std::string_view kCodebookMagic = "RHC1";

}  // namespace

ModuliSet::ModuliSet(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw Error(ErrorKind::kInvalidModuli, "moduli set is empty");
  for (std::int64_t m : moduli_) {
    if (m < 2) {
      throw Error(ErrorKind::kInvalidModuli,
                  "modulus " + std::to_string(m) + " is below 2");
    }
  }
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    for (std::size_t j = i + 1; j < moduli_.size(); ++j) {
      const std::int64_t g = std::gcd(moduli_[i], moduli_[j]);
      if (g != 1) {
        throw Error(ErrorKind::kInvalidModuli,
                    "moduli " + std::to_string(moduli_[i]) + " and " +
                        std::to_string(moduli_[j]) + " are not co-prime (gcd " +
                        std::to_string(g) + ")");
      }
    }
  }
  for (std::int64_t m : moduli_) {
    if (range_ > std::numeric_limits<std::int64_t>::max() / 4 / m) {
      throw Error(ErrorKind::kInvalidModuli, "product of moduli overflows 62 bits");
    }
    range_ *= m;
  }
}

std::int64_t floor_mod(std::int64_t x, std::int64_t m) noexcept {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

ResidueVector to_residues(std::int64_t x, const ModuliSet& moduli) {
  ResidueVector out;
  for (std::int64_t m : moduli.moduli()) out.residues.push_back(floor_mod(x, m));
  return out;
}

ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) noexcept {
  std::int64_t old_r = a, r = b;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

std::optional<std::int64_t> modular_inverse(std::int64_t a, std::int64_t m) noexcept {
  const ExtendedGcd e = extended_gcd(floor_mod(a, m), m);
  if (e.gcd != 1) return std::nullopt;
  return floor_mod(e.x, m);
}

__extension__ typedef __int128 wide_int;

std::int64_t crt_reconstruct(const ResidueVector& residues, const ModuliSet& moduli) {
  if (residues.residues.size() != moduli.size()) {
    throw Error(ErrorKind::kMalformedResidues,
                "expected " + std::to_string(moduli.size()) + " residues, got " +
                    std::to_string(residues.residues.size()));
  }
  // Incremental CRT: keep x mod (m_1 ... m_k), lift by one modulus at a time.
  wide_int x = 0;
  wide_int step = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::int64_t m = moduli[i];
    const std::int64_t r = residues.residues[i];
    if (r < 0 || r >= m) {
      throw Error(ErrorKind::kMalformedResidues,
                  "residue " + std::to_string(r) + " out of range for modulus " +
                      std::to_string(m));
    }
    const std::int64_t step_mod = static_cast<std::int64_t>(step % m);
    const std::int64_t inv = *modular_inverse(step_mod, m);
    const std::int64_t gap = floor_mod(r - static_cast<std::int64_t>(x % m), m);
    const wide_int t = static_cast<wide_int>(gap) * inv % m;
    x += t * step;
    step *= m;
  }
  return static_cast<std::int64_t>(x);
}

ResidueCodebook::ResidueCodebook(ModuliSet moduli, std::size_t dimension, Rng& rng)
    : moduli_(std::move(moduli)), dimension_(dimension) {
  if (dimension == 0) throw Error(ErrorKind::kInvalidDimension, "dimension must be at least 1");
  for (std::int64_t m : moduli_.moduli()) {
    std::vector<std::uint32_t> ks(dimension);
    for (std::uint32_t& k : ks) {
      k = static_cast<std::uint32_t>(rng.uniform_int(1, static_cast<std::uint64_t>(m)));
    }
    root_indices_.push_back(std::move(ks));
  }
  tag_ = random_symbol(rng, dimension);
  build_tables();
}

ResidueCodebook::ResidueCodebook(ModuliSet moduli,
                                 std::vector<std::vector<std::uint32_t>> root_indices,
                                 HyperVector tag)
    : moduli_(std::move(moduli)),
      dimension_(tag.dimension()),
      root_indices_(std::move(root_indices)),
      tag_(std::move(tag)) {
  if (root_indices_.size() != moduli_.size()) {
    throw Error(ErrorKind::kInvalidModuli, "root index rows do not match moduli count");
  }
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (root_indices_[i].size() != dimension_) {
      throw Error(ErrorKind::kDimensionMismatch, "root index row has wrong dimension");
    }
    for (std::uint32_t k : root_indices_[i]) {
      if (k < 1 || k > moduli_[i]) {
        throw Error(ErrorKind::kInvalidModuli, "root index outside [1, m]");
      }
    }
  }
  build_tables();
}

void ResidueCodebook::build_tables() {
  roots_.clear();
  for (std::int64_t m : moduli_.moduli()) {
    std::vector<cplx> row(static_cast<std::size_t>(m));
    for (std::int64_t r = 0; r < m; ++r) {
      row[static_cast<std::size_t>(r)] =
          std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m));
    }
    roots_.push_back(std::move(row));
  }
  channels_.clear();
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    std::vector<HyperVector> atoms;
    for (std::int64_t r = 0; r < moduli_[i]; ++r) atoms.push_back(encode_channel(i, r));
    channels_.emplace_back(std::move(atoms), "mod" + std::to_string(moduli_[i]));
  }
  table_.clear();
  const auto range = static_cast<std::size_t>(moduli_.range());
  if (range <= kMaxTableElements / dimension_) {
    std::vector<HyperVector> table;
    table.reserve(range);
    for (std::size_t x = 0; x < range; ++x) table.push_back(encode(static_cast<std::int64_t>(x)));
    table_ = std::move(table);
  }
}

std::vector<double> ResidueCodebook::phases(std::size_t modulus_index) const {
  const double m = static_cast<double>(moduli_[modulus_index]);
  std::vector<double> out;
  out.reserve(dimension_);
  for (std::uint32_t k : root_indices_[modulus_index]) {
    out.push_back(2.0 * std::numbers::pi * static_cast<double>(k) / m);
  }
  return out;
}

HyperVector ResidueCodebook::base(std::size_t modulus_index) const {
  return encode_channel(modulus_index, 1);
}

HyperVector ResidueCodebook::encode_channel(std::size_t modulus_index, std::int64_t x) const {
  const std::int64_t m = moduli_[modulus_index];
  const std::int64_t r = floor_mod(x, m);
  const auto& ks = root_indices_[modulus_index];
  const auto& roots = roots_[modulus_index];
  std::vector<cplx> out(dimension_);
  for (std::size_t j = 0; j < dimension_; ++j) {
    out[j] = roots[static_cast<std::size_t>((static_cast<std::int64_t>(ks[j]) * r) % m)];
  }
  return HyperVector(std::move(out));
}

HyperVector ResidueCodebook::encode(std::int64_t x) const {
  const std::int64_t canonical = floor_mod(x, moduli_.range());
  if (!table_.empty()) return table_[static_cast<std::size_t>(canonical)];
  HyperVector out = HyperVector::identity(dimension_);
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    const std::int64_t m = moduli_[i];
    const std::int64_t r = floor_mod(canonical, m);
    const auto& ks = root_indices_[i];
    const auto& roots = roots_[i];
    for (std::size_t j = 0; j < dimension_; ++j) {
      out[j] *= roots[static_cast<std::size_t>((static_cast<std::int64_t>(ks[j]) * r) % m)];
    }
  }
  return out;
}

ResidueCodebook::Match ResidueCodebook::best_exhaustive(const HyperVector& v) const {
  require_same_dimension(tag_, v);
  const auto& kt = kernels::active();
  const double d = static_cast<double>(dimension_);
  Match best{0, -std::numeric_limits<double>::infinity()};
  for (std::int64_t x = 0; x < moduli_.range(); ++x) {
    double sim;
    if (!table_.empty()) {
      sim = kt.dot_re(table_[static_cast<std::size_t>(x)].data(), v.data(), dimension_) / d;
    } else {
      sim = similarity(encode(x), v);
    }
    if (sim > best.similarity) best = {x, sim};
  }
  return best;
}

std::int64_t ResidueCodebook::decode(const HyperVector& v, DecodeMethod method,
                                     const ResonatorOptions& options, double floor) const {
  require_same_dimension(tag_, v);
  std::int64_t value;
  double confidence;
  if (method == DecodeMethod::kExhaustive) {
    const Match m = best_exhaustive(v);
    value = m.value;
    confidence = m.similarity;
  } else {
    const FactorizeResult f =
        factorize(v, channels_, options.max_iters, options.patience, options.trace);
    ResidueVector residues;
    for (std::size_t index : f.indices) residues.residues.push_back(static_cast<std::int64_t>(index));
    value = crt_reconstruct(residues, moduli_);
    confidence = similarity(encode(value), v);
  }
  if (!(confidence >= floor)) {
    throw Error(ErrorKind::kUndecodable,
                "no residue code above confidence floor (best similarity " +
                    std::to_string(confidence) + ")");
  }
  return value;
}

void ResidueCodebook::write(std::ostream& out) const {
  binary::write_magic(out, kCodebookMagic);
  binary::write_u64(out, dimension_);
  binary::write_u64(out, moduli_.size());
  for (std::int64_t m : moduli_.moduli()) binary::write_u64(out, static_cast<std::uint64_t>(m));
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    for (double phi : phases(i)) binary::write_f64(out, phi);
  }
  binary::write_vector(out, tag_);
  if (!out) throw Error(ErrorKind::kIo, "failed to write codebook");
}

ResidueCodebook ResidueCodebook::read(std::istream& in) {
  binary::expect_magic(in, kCodebookMagic);
  const std::uint64_t dimension = binary::read_u64(in);
  const std::uint64_t n = binary::read_u64(in);
  if (dimension == 0 || dimension > (std::uint64_t{1} << 28) || n == 0 || n > 64) {
    throw Error(ErrorKind::kIo, "implausible codebook header");
  }
  std::vector<std::int64_t> moduli;
  for (std::uint64_t i = 0; i < n; ++i) moduli.push_back(static_cast<std::int64_t>(binary::read_u64(in)));
  ModuliSet set(std::move(moduli));
  std::vector<std::vector<std::uint32_t>> roots(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double m = static_cast<double>(set[i]);
    roots[i].resize(dimension);
    for (std::uint32_t& k : roots[i]) {
      const double phi = binary::read_f64(in);
      k = static_cast<std::uint32_t>(std::llround(phi * m / (2.0 * std::numbers::pi)));
    }
  }
  HyperVector tag = binary::read_vector(in, dimension);
  return ResidueCodebook(std::move(set), std::move(roots), std::move(tag));
}

HyperVector add_bind(const HyperVector& u, const HyperVector& v) { return bind(u, v); }

HyperVector negate(const HyperVector& v) { return conjugate(v); }

HyperVector mul_bind(const ResidueCodebook& cb, const HyperVector& u, const HyperVector& v,
                     DecodeMethod method, const ResonatorOptions& options) {
  require_same_dimension(u, v);
  std::int64_t exponent;
  try {
    exponent = cb.decode(v, method, options);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUndecodable) throw;
    throw Error(ErrorKind::kUndecodable, std::string("multiplicative operand: ") + e.what());
  }
  return normalize(power(u, exponent));
}

HyperVector mod_inverse(const ResidueCodebook& cb, const HyperVector& v, DecodeMethod method,
                        const ResonatorOptions& options) {
  const std::int64_t x = cb.decode(v, method, options);
  const std::optional<std::int64_t> inv = modular_inverse(x, cb.range());
  if (!inv) {
    throw Error(ErrorKind::kNoInverse,
                std::to_string(x) + " has no inverse modulo " + std::to_string(cb.range()) +
                    " (shared factor " + std::to_string(std::gcd(x, cb.range())) + ")");
  }
  return cb.encode(*inv);
}

}  // namespace vsalisp
