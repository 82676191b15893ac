#pragma once

// Vector-symbolic Lisp. Source is read into S-expressions, encoded as
// hypervectors (lists become cons chunks, integers become tagged residue
// codes), and evaluated by inspecting the vectors: every value the evaluator
// touches is recovered from its vector by similarity, never from side tables.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vsalisp/hypervector.hpp"
#include "vsalisp/memory.hpp"
#include "vsalisp/reader.hpp"
#include "vsalisp/residue.hpp"

namespace vsalisp {

struct Config {
  std::size_t dimension = 1000;
  std::vector<std::int64_t> moduli{3, 5, 7};
  // Similarity above which two vectors count as the same symbol.
  double theta = 0.2;
  // Recall and decode confidence floor.
  double floor = kConfidenceFloor;
  std::uint64_t seed = 42;
  DecodeMethod decode_method = DecodeMethod::kResonator;
  std::size_t max_iters = 100;
  std::size_t patience = 3;
  // Print integers in [0, range) instead of the symmetric window.
  bool raw_integers = false;
  // Resonator iteration trace, when set.
  std::ostream* trace = nullptr;

  // Throws invalid-config / invalid-moduli / invalid-dimension.
  void validate() const;
};

enum class ValueKind { kInteger, kBoolean, kSymbol, kCons, kClosure, kNil, kEnvironment, kUnknown };

std::string_view kind_name(ValueKind kind) noexcept;

// A hypervector plus a diagnostic kind hint. The vector carries the meaning.
struct EncodedValue {
  HyperVector vector;
  ValueKind kind = ValueKind::kUnknown;
};

struct Classification {
  ValueKind kind = ValueKind::kUnknown;
  std::int64_t integer = 0;  // raw, in [0, range)
  std::string name;          // symbols
  std::size_t chunk = 0;     // cons, closure, environment
  double similarity = 0.0;   // best match score that decided the kind
};

class Interpreter {
 public:
  explicit Interpreter(Config config);
  // Restores a session: `symbols` override the seed-derived inventory and the
  // codebook fixes dimension and moduli.
  Interpreter(Config config, ResidueCodebook codebook,
              std::vector<std::pair<std::string, HyperVector>> symbols);

  [[nodiscard]] const Config& config() const noexcept { return config_; }
  [[nodiscard]] const ResidueCodebook& codebook() const noexcept { return codebook_; }
  [[nodiscard]] const CleanupMemory& memory() const noexcept { return memory_; }
  [[nodiscard]] Environment& global() noexcept { return global_; }

  // Interned symbol vector, created on first use.
  const HyperVector& intern(const std::string& name);
  // Already-interned symbol, or nullptr.
  [[nodiscard]] const HyperVector* symbol(std::string_view name) const { return memory_.find(name); }

  [[nodiscard]] const HyperVector& t() const noexcept { return t_; }
  [[nodiscard]] const HyperVector& f() const noexcept { return f_; }
  [[nodiscard]] const HyperVector& nil() const noexcept { return nil_; }
  [[nodiscard]] const HyperVector& int_tag() const noexcept { return codebook_.tag(); }

  EncodedValue encode(const SExpr& expr);

  EncodedValue eval(const EncodedValue& expr, Environment& env);
  EncodedValue eval(const SExpr& expr) {
    return eval(encode(expr), global_);
  }

  // Evaluates every top-level form, returning one printed line per form.
  std::vector<std::string> run(std::string_view source);

  [[nodiscard]] std::string print(const EncodedValue& v) const;

  // What a vector denotes, by similarity against the tag, the symbol
  // inventory and the chunk pointers.
  [[nodiscard]] Classification classify(const HyperVector& v) const;
  // Maps a (possibly noisy) vector to the exact vector of what it denotes.
  // Throws no-match when nothing is recognized.
  EncodedValue cleanup(const HyperVector& noisy) const;

  // int(x) = zeta(x) + int
  [[nodiscard]] EncodedValue make_int(std::int64_t x) const;
  // Raw decode of a tagged integer into [0, range); throws undecodable.
  [[nodiscard]] std::int64_t decode_int(const HyperVector& v) const;
  // Symmetric-window display value.
  [[nodiscard]] std::int64_t display_int(std::int64_t raw) const noexcept;

  // Integer type test: cleans up a t/f mixture weighted by similarity to the
  // tag. Returns t or f.
  [[nodiscard]] EncodedValue int_p(const EncodedValue& v) const;
  [[nodiscard]] EncodedValue add(const EncodedValue& u, const EncodedValue& v) const;
  [[nodiscard]] EncodedValue sub(const EncodedValue& u, const EncodedValue& v) const;
  [[nodiscard]] EncodedValue mul(const EncodedValue& u, const EncodedValue& v) const;
  [[nodiscard]] EncodedValue div(const EncodedValue& u, const EncodedValue& v) const;
  [[nodiscard]] EncodedValue negate_int(const EncodedValue& v) const;

  EncodedValue cons(const EncodedValue& head, const EncodedValue& tail);
  [[nodiscard]] EncodedValue car(const EncodedValue& v) const;
  [[nodiscard]] EncodedValue cdr(const EncodedValue& v) const;
  [[nodiscard]] bool is_nil(const EncodedValue& v) const;
  [[nodiscard]] bool eq(const EncodedValue& a, const EncodedValue& b) const;
  [[nodiscard]] std::vector<EncodedValue> list_items(const EncodedValue& list) const;

  // Number of cleanup retrievals performed so far.
  [[nodiscard]] std::size_t retrievals() const noexcept { return retrievals_; }

 private:
  void init_constants();
  [[nodiscard]] ResonatorOptions resonator_options() const;
  [[nodiscard]] HyperVector strip(const EncodedValue& v) const;
  [[nodiscard]] EncodedValue retag(const HyperVector& code) const;
  void require_int(const EncodedValue& v, std::string_view op) const;
  [[nodiscard]] EncodedValue canonical(const Classification& c) const;
  [[nodiscard]] EncodedValue field(const Classification& c, const HyperVector& role) const;
  [[nodiscard]] EncodedValue with_kind(const HyperVector& v) const;

  EncodedValue eval_form(const Classification& c, Environment& env);
  EncodedValue apply(const EncodedValue& fn, const std::vector<EncodedValue>& args);
  EncodedValue apply_primitive(const std::string& name, const std::vector<EncodedValue>& args);
  EncodedValue make_closure(const EncodedValue& params, const EncodedValue& body,
                            const Environment& env);
  void print_into(std::string& out, const HyperVector& v, std::size_t depth) const;

  Config config_;
  ResidueCodebook codebook_;
  CleanupMemory memory_;
  Environment global_;
  HyperVector t_, f_, nil_;
  HyperVector cons_tag_, lambda_tag_, env_tag_;
  HyperVector role_head_, role_tail_, role_params_, role_body_, role_env_;
  std::unordered_map<std::size_t, Environment> captured_;
  mutable std::size_t retrievals_ = 0;
};

}  // namespace vsalisp
