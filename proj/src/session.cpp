#include "vsalisp/session.hpp"

#include <fstream>
#include <limits>

#include "vsalisp/binary_io.hpp"
#include "vsalisp/error.hpp"

namespace vsalisp {

namespace {
constexpr std::string_view kMemoryMagic = "MEM1";
}  // namespace

void write_symbols(std::ostream& out, const CleanupMemory& memory) {
  binary::write_magic(out, kMemoryMagic);
  binary::write_u64(out, memory.dimension());
  binary::write_u64(out, memory.size());
  for (std::size_t i = 0; i < memory.size(); ++i) {
    const std::string& name = memory.name(i);
    binary::write_u32(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    binary::write_vector(out, memory.vector(i));
  }
  if (!out) throw Error(ErrorKind::kIo, "failed to write symbol inventory");
}

SymbolInventory read_symbols(std::istream& in) {
  binary::expect_magic(in, kMemoryMagic);
  const std::uint64_t dimension = binary::read_u64(in);
  const std::uint64_t count = binary::read_u64(in);
  if (dimension == 0 || dimension > (std::uint64_t{1} << 28)) {
    throw Error(ErrorKind::kIo, "implausible symbol inventory dimension");
  }
  SymbolInventory out;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint32_t length = binary::read_u32(in);
    std::string name(length, '\0');
    if (!in.read(name.data(), length)) throw Error(ErrorKind::kIo, "truncated symbol name");
    out.emplace_back(std::move(name), binary::read_vector(in, dimension));
  }
  return out;
}

void save_session(const std::string& path, const Interpreter& interpreter) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open session file '" + path + "' for writing");
  interpreter.codebook().write(out);
  write_symbols(out, interpreter.memory());
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "failed writing session file '" + path + "'");
}

Interpreter load_session(const std::string& path, Config config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open session file '" + path + "'");
  ResidueCodebook codebook = ResidueCodebook::read(in);
  SymbolInventory symbols = read_symbols(in);
  for (const auto& entry : symbols) {
    if (entry.second.dimension() != codebook.dimension()) {
      throw Error(ErrorKind::kIo, "symbol inventory dimension differs from codebook");
    }
  }
  return Interpreter(std::move(config), std::move(codebook), std::move(symbols));
}

}  // namespace vsalisp
