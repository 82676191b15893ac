#include "vsalisp/hypervector.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vsalisp/error.hpp"
#include "vsalisp/kernels.hpp"

namespace vsalisp {

namespace {

const kernels::KernelTable& k() { return kernels::active(); }

}  // namespace

HyperVector::HyperVector(std::size_t dimension, cplx fill) : elements_(dimension, fill) {
  if (dimension == 0) throw Error(ErrorKind::kInvalidDimension, "dimension must be at least 1");
}

HyperVector::HyperVector(std::vector<cplx> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorKind::kInvalidDimension, "dimension must be at least 1");
}

double HyperVector::max_modulus_error() const noexcept {
  double worst = 0.0;
  for (const cplx& z : elements_) worst = std::max(worst, std::abs(std::abs(z) - 1.0));
  return worst;
}

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == ~std::uint64_t{0}) return engine_();
  const std::uint64_t bound = span + 1;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return lo + draw % bound;
}

double Rng::normal() {
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view name) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t z = base ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

HyperVector random_symbol(Rng& rng, std::size_t dimension) {
  if (dimension == 0) throw Error(ErrorKind::kInvalidDimension, "dimension must be at least 1");
  std::vector<cplx> out(dimension);
  for (cplx& z : out) {
    const double theta = 2.0 * std::numbers::pi * (1.0 - rng.uniform01());
    z = std::polar(1.0, theta);
  }
  return HyperVector(std::move(out));
}

void require_same_dimension(const HyperVector& u, const HyperVector& v) {
  if (u.dimension() != v.dimension()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "dimension mismatch: " + std::to_string(u.dimension()) + " vs " +
                    std::to_string(v.dimension()));
  }
}

HyperVector bind(const HyperVector& u, const HyperVector& v) {
  require_same_dimension(u, v);
  HyperVector out(u.dimension());
  k().mul(u.data(), v.data(), out.data(), u.dimension());
  return out;
}

HyperVector unbind(const HyperVector& w, const HyperVector& u) {
  require_same_dimension(w, u);
  HyperVector out(w.dimension());
  k().mul_conj(w.data(), u.data(), out.data(), w.dimension());
  return out;
}

HyperVector superpose(const HyperVector& u, const HyperVector& v) {
  require_same_dimension(u, v);
  HyperVector out(u.dimension());
  k().add(u.data(), v.data(), out.data(), u.dimension());
  return out;
}

HyperVector subtract(const HyperVector& u, const HyperVector& v) {
  require_same_dimension(u, v);
  HyperVector out(u.dimension());
  k().sub(u.data(), v.data(), out.data(), u.dimension());
  return out;
}

HyperVector scale(const HyperVector& v, double factor) {
  HyperVector out = HyperVector::zero(v.dimension());
  k().axpy(cplx(factor, 0.0), v.data(), out.data(), v.dimension());
  return out;
}

void accumulate(HyperVector& acc, const HyperVector& v, cplx weight) {
  require_same_dimension(acc, v);
  k().axpy(weight, v.data(), acc.data(), v.dimension());
}

HyperVector normalize(const HyperVector& v) {
  HyperVector out(v.dimension());
  k().normalize(v.data(), out.data(), v.dimension());
  return out;
}

HyperVector conjugate(const HyperVector& v) {
  HyperVector out = v;
  for (cplx& z : out.elements()) z = std::conj(z);
  return out;
}

HyperVector power(const HyperVector& v, std::int64_t exponent) {
  HyperVector base = exponent < 0 ? conjugate(v) : v;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-(exponent + 1)) + 1
                                 : static_cast<std::uint64_t>(exponent);
  HyperVector result = HyperVector::identity(v.dimension());
  const std::size_t n = v.dimension();
  while (e != 0) {
    if (e & 1U) k().mul(result.data(), base.data(), result.data(), n);
    e >>= 1U;
    if (e != 0) k().mul(base.data(), base.data(), base.data(), n);
  }
  return result;
}

double similarity(const HyperVector& u, const HyperVector& v) {
  require_same_dimension(u, v);
  return k().dot_re(u.data(), v.data(), u.dimension()) / static_cast<double>(u.dimension());
}

cplx inner(const HyperVector& u, const HyperVector& v) {
  require_same_dimension(u, v);
  return k().dot(u.data(), v.data(), u.dimension());
}

double mean_energy(const HyperVector& v) {
  return k().dot_re(v.data(), v.data(), v.dimension()) / static_cast<double>(v.dimension());
}

std::vector<double> phases(const HyperVector& v) {
  std::vector<double> out;
  out.reserve(v.dimension());
  for (const cplx& z : v) out.push_back(std::arg(z));
  return out;
}

}  // namespace vsalisp
