#include "vsalisp/memory.hpp"

#include <limits>

#include "vsalisp/error.hpp"
#include "vsalisp/kernels.hpp"

namespace vsalisp {

CleanupMemory::CleanupMemory(std::size_t dimension, std::uint64_t seed, double floor)
    : dimension_(dimension), seed_(seed), floor_(floor) {
  if (dimension == 0) throw Error(ErrorKind::kInvalidDimension, "dimension must be at least 1");
}

void CleanupMemory::append(std::string name, HyperVector v) {
  if (v.dimension() != dimension_) {
    throw Error(ErrorKind::kDimensionMismatch,
                "memory holds dimension " + std::to_string(dimension_) + ", got " +
                    std::to_string(v.dimension()));
  }
  if (auto it = index_.find(name); it != index_.end()) {
    vectors_[it->second] = std::move(v);
    return;
  }
  index_.emplace(name, names_.size());
  names_.push_back(std::move(name));
  vectors_.push_back(std::move(v));
}

std::optional<RecallResult> CleanupMemory::best_match(const HyperVector& probe) const {
  if (names_.empty()) return std::nullopt;
  if (probe.dimension() != dimension_) require_same_dimension(vectors_.front(), probe);
  const auto& kt = kernels::active();
  const double d = static_cast<double>(dimension_);
  std::size_t best = 0;
  double best_sim = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    const double sim = kt.dot_re(vectors_[i].data(), probe.data(), dimension_) / d;
    if (sim > best_sim) {
      best_sim = sim;
      best = i;
    }
  }
  return RecallResult{names_[best], vectors_[best], best_sim, best};
}

RecallResult CleanupMemory::recall(const HyperVector& probe) const {
  std::optional<RecallResult> r = best_match(probe);
  if (!r) throw Error(ErrorKind::kEmptyMemory, "recall from empty memory");
  if (!(r->similarity >= floor_)) {
    throw Error(ErrorKind::kNoMatch, "no stored symbol above similarity floor (best '" +
                                         r->name + "' at " + std::to_string(r->similarity) + ")");
  }
  return std::move(*r);
}

const HyperVector* CleanupMemory::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &vectors_[it->second];
}

HyperVector CleanupMemory::store_chunk(const HyperVector& tag, std::vector<RoleFiller> pairs) {
  if (tag.dimension() != dimension_) {
    throw Error(ErrorKind::kDimensionMismatch, "chunk tag has wrong dimension");
  }
  HyperVector composite = tag;
  const auto& kt = kernels::active();
  HyperVector bound(dimension_);
  for (const RoleFiller& rf : pairs) {
    require_same_dimension(tag, rf.role);
    require_same_dimension(tag, rf.filler);
    kt.mul(rf.role.data(), rf.filler.data(), bound.data(), dimension_);
    kt.add(composite.data(), bound.data(), composite.data(), dimension_);
  }
  if (!pointer_rng_) pointer_rng_.emplace(derive_seed(seed_, "chunk-pointers"));
  HyperVector pointer = random_symbol(*pointer_rng_, dimension_);
  chunks_.push_back(Chunk{tag, std::move(pairs), pointer, std::move(composite)});
  return pointer;
}

std::optional<ChunkMatch> CleanupMemory::locate_chunk(const HyperVector& probe) const {
  if (chunks_.empty()) return std::nullopt;
  if (probe.dimension() != dimension_) require_same_dimension(chunks_.front().pointer, probe);
  const auto& kt = kernels::active();
  const double d = static_cast<double>(dimension_);
  ChunkMatch best{0, -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < chunks_.size(); ++i) {
    const double sim = kt.dot_re(chunks_[i].pointer.data(), probe.data(), dimension_) / d;
    if (sim > best.similarity) best = {i, sim};
  }
  return best;
}

const HyperVector& CleanupMemory::deref(const HyperVector& pointer) const {
  const std::optional<ChunkMatch> m = locate_chunk(pointer);
  if (!m || !(m->similarity >= floor_)) {
    throw Error(ErrorKind::kDanglingPointer,
                m ? "pointer matches no stored chunk (best similarity " +
                        std::to_string(m->similarity) + ")"
                  : std::string("pointer dereferenced with no chunks stored"));
  }
  return chunks_[m->index].composite;
}

void Environment::pop_frame() {
  if (frames_.empty()) throw Error(ErrorKind::kUnboundSymbol, "pop from empty environment");
  frames_.pop_back();
}

const Environment::Frame& Environment::innermost() const {
  if (frames_.empty()) throw Error(ErrorKind::kUnboundSymbol, "environment has no frames");
  return frames_.back();
}

const HyperVector* Environment::try_lookup(std::string_view name) const {
  for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
    if (const HyperVector* v = (*it)->find(name)) return v;
  }
  return nullptr;
}

const HyperVector& Environment::lookup(std::string_view name) const {
  if (frames_.empty()) {
    throw Error(ErrorKind::kUnboundSymbol, "lookup of '" + std::string(name) + "' in empty environment");
  }
  if (const HyperVector* v = try_lookup(name)) return *v;
  throw Error(ErrorKind::kUnboundSymbol, "unbound symbol '" + std::string(name) + "'");
}

void Environment::define(std::string name, HyperVector value) {
  innermost()->append(std::move(name), std::move(value));
}

Environment Environment::extended(Frame frame) const {
  Environment out = *this;
  out.push_frame(std::move(frame));
  return out;
}

}  // namespace vsalisp
