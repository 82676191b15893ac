#pragma once

// Resonator network: iterative factorization of a Hadamard-bound composite
// s = x (.) y (.) z ... into one atom per codebook.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "vsalisp/hypervector.hpp"

namespace vsalisp {

class FactorCodebook {
 public:
  // Throws empty-codebook for no atoms, dimension-mismatch for mixed D.
  FactorCodebook(std::vector<HyperVector> atoms, std::string label = {});

  [[nodiscard]] const std::vector<HyperVector>& atoms() const noexcept { return atoms_; }
  [[nodiscard]] std::size_t size() const noexcept { return atoms_.size(); }
  [[nodiscard]] std::size_t dimension() const noexcept { return atoms_.front().dimension(); }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] const HyperVector& operator[](std::size_t i) const { return atoms_[i]; }

  // X X^H v: project v onto the span of the atoms.
  [[nodiscard]] HyperVector project(const HyperVector& v) const;

 private:
  std::vector<HyperVector> atoms_;
  std::string label_;
};

struct CleanupResult {
  std::size_t index;
  double similarity;
};

// Argmax-similarity atom; ties go to the lowest index.
CleanupResult cleanup(const HyperVector& s, const FactorCodebook& codebook);

struct ResonatorState {
  std::vector<HyperVector> estimates;
  std::vector<std::size_t> winners;
  std::vector<double> winner_similarity;
  std::size_t iteration = 0;
  bool converged = false;
  std::vector<std::vector<std::size_t>> history;
};

// Estimates start at the unnormalized sum of atoms for every slot.
ResonatorState initial_state(const std::vector<FactorCodebook>& codebooks);

// One sequential sweep: for each slot k,
//   x_k <- g(X_k X_k^H (s (.) prod_{j != k} conj(x_j)))
// with g the unit-phasor projection. Updates winners and appends history.
void resonator_step(ResonatorState& state, const HyperVector& s,
                    const std::vector<FactorCodebook>& codebooks, std::ostream* trace = nullptr);

struct FactorizeResult {
  std::vector<std::size_t> indices;
  std::vector<double> similarities;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<std::vector<std::size_t>> history;
};

// Iterates until the winners are unchanged for `patience` consecutive sweeps
// or `max_iters` sweeps ran. Unconverged runs return best-so-far indices with
// converged == false.
FactorizeResult factorize(const HyperVector& s, const std::vector<FactorCodebook>& codebooks,
                          std::size_t max_iters = 100, std::size_t patience = 3,
                          std::ostream* trace = nullptr);

}  // namespace vsalisp
