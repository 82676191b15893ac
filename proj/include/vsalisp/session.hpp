#pragma once

// Session files: an RHC1 codebook block followed by a MEM1 symbol-inventory
// block (u64 dimension, u64 count, then per entry a u32 byte length, the UTF-8
// name, and the vector as interleaved re/im doubles). All integers are
// little-endian.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vsalisp/interpreter.hpp"
#include "vsalisp/memory.hpp"
#include "vsalisp/residue.hpp"

namespace vsalisp {

using SymbolInventory = std::vector<std::pair<std::string, HyperVector>>;

void write_symbols(std::ostream& out, const CleanupMemory& memory);
SymbolInventory read_symbols(std::istream& in);

void save_session(const std::string& path, const Interpreter& interpreter);

// Throws io when the file is missing or malformed.
Interpreter load_session(const std::string& path, Config config);

}  // namespace vsalisp
