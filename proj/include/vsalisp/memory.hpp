#pragma once

// Cleanup memory: an appendable inventory of named vectors recalled by
// nearest similarity, plus chunk storage. A chunk is a tag superposed with
// role (.) filler bindings, addressed by a fresh random pointer symbol.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vsalisp/hypervector.hpp"
#include "vsalisp/residue.hpp"

namespace vsalisp {

struct RecallResult {
  std::string name;
  HyperVector vector;
  double similarity;
  std::size_t index;
};

struct RoleFiller {
  HyperVector role;
  HyperVector filler;
};

struct Chunk {
  HyperVector tag;
  std::vector<RoleFiller> pairs;
  HyperVector pointer;
  HyperVector composite;  // tag + sum bind(role, filler)
};

struct ChunkMatch {
  std::size_t index;
  double similarity;
};

class CleanupMemory {
 public:
  // `seed` drives the pointer symbols handed out by store_chunk.
  explicit CleanupMemory(std::size_t dimension, std::uint64_t seed = 0,
                         double floor = kConfidenceFloor);

  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] double floor() const noexcept { return floor_; }

  // Duplicate names overwrite the stored vector in place.
  void append(std::string name, HyperVector v);

  // Throws empty-memory when nothing is stored, no-match below the floor.
  // Ties go to the earliest entry.
  [[nodiscard]] RecallResult recall(const HyperVector& probe) const;
  // Same search without the floor; nullopt only when empty.
  [[nodiscard]] std::optional<RecallResult> best_match(const HyperVector& probe) const;

  [[nodiscard]] const HyperVector* find(std::string_view name) const;
  [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
  [[nodiscard]] const std::string& name(std::size_t i) const { return names_[i]; }
  [[nodiscard]] const HyperVector& vector(std::size_t i) const { return vectors_[i]; }

  // Stores tag + sum bind(role, filler) under a fresh pointer; returns it.
  HyperVector store_chunk(const HyperVector& tag, std::vector<RoleFiller> pairs);
  // Throws dangling-pointer when no stored pointer reaches the floor.
  [[nodiscard]] const HyperVector& deref(const HyperVector& pointer) const;
  [[nodiscard]] std::optional<ChunkMatch> locate_chunk(const HyperVector& probe) const;
  [[nodiscard]] const Chunk& chunk(std::size_t i) const { return chunks_[i]; }
  [[nodiscard]] std::size_t chunk_count() const noexcept { return chunks_.size(); }

 private:
  std::size_t dimension_;
  std::uint64_t seed_;
  double floor_;
  std::vector<std::string> names_;
  std::vector<HyperVector> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Chunk> chunks_;
  std::optional<Rng> pointer_rng_;
};

// Variable frames, innermost last. Frames are shared so closures observe
// later definitions in the frames they captured.
class Environment {
 public:
  using Frame = std::shared_ptr<CleanupMemory>;

  Environment() = default;

  void push_frame(Frame frame) { frames_.push_back(std::move(frame)); }
  void pop_frame();
  [[nodiscard]] std::size_t depth() const noexcept { return frames_.size(); }
  [[nodiscard]] const Frame& innermost() const;

  // Innermost-first. Throws unbound-symbol when absent or the stack is empty.
  [[nodiscard]] const HyperVector& lookup(std::string_view name) const;
  [[nodiscard]] const HyperVector* try_lookup(std::string_view name) const;

  // Binds in the innermost frame.
  void define(std::string name, HyperVector value);

  // Copy of this environment with one extra frame.
  [[nodiscard]] Environment extended(Frame frame) const;

 private:
  std::vector<Frame> frames_;
};

}  // namespace vsalisp
