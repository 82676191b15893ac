#pragma once

// Little-endian primitives shared by the codebook and session formats.

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "vsalisp/error.hpp"
#include "vsalisp/hypervector.hpp"

namespace vsalisp::binary {

inline void write_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFFU);
  out.write(bytes, 8);
}

inline void write_u32(std::ostream& out, std::uint32_t v) {
  char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFFU);
  out.write(bytes, 4);
}

inline void write_f64(std::ostream& out, double v) { write_u64(out, std::bit_cast<std::uint64_t>(v)); }

inline std::uint64_t read_u64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw Error(ErrorKind::kIo, "unexpected end of binary stream");
  }
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

inline std::uint32_t read_u32(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
    throw Error(ErrorKind::kIo, "unexpected end of binary stream");
  }
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

inline double read_f64(std::istream& in) { return std::bit_cast<double>(read_u64(in)); }

inline void write_magic(std::ostream& out, std::string_view magic) {
  out.write(magic.data(), static_cast<std::streamsize>(magic.size()));
}

inline void expect_magic(std::istream& in, std::string_view magic) {
  std::string got(magic.size(), '\0');
  if (!in.read(got.data(), static_cast<std::streamsize>(got.size())) || got != magic) {
    throw Error(ErrorKind::kIo, "bad magic: expected '" + std::string(magic) + "'");
  }
}

// Interleaved re/im doubles.
inline void write_vector(std::ostream& out, const HyperVector& v) {
  for (const cplx& z : v) {
    write_f64(out, z.real());
    write_f64(out, z.imag());
  }
}

inline HyperVector read_vector(std::istream& in, std::size_t dimension) {
  std::vector<cplx> elements(dimension);
  for (cplx& z : elements) {
    const double re = read_f64(in);
    const double im = read_f64(in);
    z = cplx(re, im);
  }
  return HyperVector(std::move(elements));
}

}  // namespace vsalisp::binary
