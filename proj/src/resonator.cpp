#include "vsalisp/resonator.hpp"

#include <ostream>

#include "vsalisp/error.hpp"
#include "vsalisp/kernels.hpp"

namespace vsalisp {

FactorCodebook::FactorCodebook(std::vector<HyperVector> atoms, std::string label)
    : atoms_(std::move(atoms)), label_(std::move(label)) {
  if (atoms_.empty()) {
    throw Error(ErrorKind::kEmptyCodebook, "codebook '" + label_ + "' has no atoms");
  }
  for (const HyperVector& a : atoms_) require_same_dimension(atoms_.front(), a);
}

HyperVector FactorCodebook::project(const HyperVector& v) const {
  require_same_dimension(atoms_.front(), v);
  const auto& kt = kernels::active();
  const std::size_t d = v.dimension();
  HyperVector out = HyperVector::zero(d);
  for (const HyperVector& atom : atoms_) {
    kt.axpy(kt.dot(atom.data(), v.data(), d), atom.data(), out.data(), d);
  }
  return out;
}

CleanupResult cleanup(const HyperVector& s, const FactorCodebook& codebook) {
  CleanupResult best{0, similarity(codebook[0], s)};
  for (std::size_t i = 1; i < codebook.size(); ++i) {
    const double sim = similarity(codebook[i], s);
    if (sim > best.similarity) best = {i, sim};
  }
  return best;
}

ResonatorState initial_state(const std::vector<FactorCodebook>& codebooks) {
  if (codebooks.empty()) throw Error(ErrorKind::kEmptyCodebook, "no codebooks to factorize over");
  ResonatorState state;
  for (const FactorCodebook& cb : codebooks) {
    HyperVector sum = HyperVector::zero(cb.dimension());
    for (const HyperVector& atom : cb.atoms()) accumulate(sum, atom);
    // Left unnormalized: for residue channels the sum vanishes wherever the
    // root is non-trivial, and normalizing would turn rounding noise into phase.
    const CleanupResult c = cleanup(sum, cb);
    state.estimates.push_back(std::move(sum));
    state.winners.push_back(c.index);
    state.winner_similarity.push_back(c.similarity);
  }
  return state;
}

void resonator_step(ResonatorState& state, const HyperVector& s,
                    const std::vector<FactorCodebook>& codebooks, std::ostream* trace) {
  const auto& kt = kernels::active();
  const std::size_t d = s.dimension();
  HyperVector unbound(d);
  for (std::size_t slot = 0; slot < codebooks.size(); ++slot) {
    require_same_dimension(codebooks[slot][0], s);
    unbound = s;
    for (std::size_t other = 0; other < codebooks.size(); ++other) {
      if (other == slot) continue;
      kt.mul_conj(unbound.data(), state.estimates[other].data(), unbound.data(), d);
    }
    state.estimates[slot] = normalize(codebooks[slot].project(unbound));
    const CleanupResult c = cleanup(state.estimates[slot], codebooks[slot]);
    state.winners[slot] = c.index;
    state.winner_similarity[slot] = c.similarity;
    if (trace != nullptr) {
      *trace << "resonator iter=" << state.iteration + 1 << " slot=" << slot
             << " index=" << c.index << " sim=" << c.similarity << '\n';
    }
  }
  ++state.iteration;
  state.history.push_back(state.winners);
}

FactorizeResult factorize(const HyperVector& s, const std::vector<FactorCodebook>& codebooks,
                          std::size_t max_iters, std::size_t patience, std::ostream* trace) {
  if (max_iters == 0) throw Error(ErrorKind::kInvalidConfig, "max_iters must be at least 1");
  ResonatorState state = initial_state(codebooks);
  std::size_t stable = 0;
  std::vector<std::size_t> previous = state.winners;
  while (state.iteration < max_iters) {
    resonator_step(state, s, codebooks, trace);
    if (state.winners == previous) {
      if (++stable >= patience) {
        state.converged = true;
        break;
      }
    } else {
      stable = 0;
      previous = state.winners;
    }
  }
  return {state.winners, state.winner_similarity, state.iteration, state.converged,
          std::move(state.history)};
}

}  // namespace vsalisp
