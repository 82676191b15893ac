#include "vsalisp/interpreter.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <memory>

#include "vsalisp/error.hpp"

namespace vsalisp {

namespace {

constexpr std::array<std::string_view, 4> kSpecialForms = {"quote", "cond", "lambda", "define"};
constexpr std::array<std::string_view, 10> kPrimitives = {"cons", "car", "cdr", "atom?", "eq?",
                                                          "int?", "+",   "-",   "*",     "/"};
constexpr std::size_t kMaxPrintDepth = 10000;

bool is_special_form(std::string_view name) {
  return std::find(kSpecialForms.begin(), kSpecialForms.end(), name) != kSpecialForms.end();
}

bool is_primitive(std::string_view name) {
  return std::find(kPrimitives.begin(), kPrimitives.end(), name) != kPrimitives.end();
}

ResidueCodebook make_codebook(const Config& config) {
  config.validate();
  Rng rng(derive_seed(config.seed, "codebook"));
  return ResidueCodebook(ModuliSet(config.moduli), config.dimension, rng);
}

HyperVector structural_symbol(const Config& config, std::string_view name) {
  Rng rng(derive_seed(config.seed, name));
  return random_symbol(rng, config.dimension);
}

void require_arity(std::string_view op, const std::vector<EncodedValue>& args, std::size_t lo,
                   std::size_t hi) {
  if (args.size() < lo || args.size() > hi) {
    std::string expected = std::to_string(lo);
    if (hi != lo) {
      expected += hi == std::numeric_limits<std::size_t>::max()
                      ? " or more"
                      : " to " + std::to_string(hi);
    }
    throw Error(ErrorKind::kArity, std::string(op) + " expects " + expected + " argument(s), got " +
                                       std::to_string(args.size()));
  }
}

}  // namespace

std::string_view kind_name(ValueKind kind) noexcept {
  switch (kind) {
    case ValueKind::kInteger: return "integer";
    case ValueKind::kBoolean: return "boolean";
    case ValueKind::kSymbol: return "symbol";
    case ValueKind::kCons: return "cons";
    case ValueKind::kClosure: return "closure";
    case ValueKind::kNil: return "nil";
    case ValueKind::kEnvironment: return "environment";
    case ValueKind::kUnknown: return "unknown";
  }
  return "unknown";
}

void Config::validate() const {
  if (dimension == 0) throw Error(ErrorKind::kInvalidDimension, "dimension must be at least 1");
  if (!(theta > 0.0 && theta < 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "theta must lie in (0, 1)");
  }
  if (!(floor > 0.0 && floor < 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "confidence floor must lie in (0, 1)");
  }
  if (max_iters == 0) throw Error(ErrorKind::kInvalidConfig, "max_iters must be at least 1");
  ModuliSet check(moduli);
}

Interpreter::Interpreter(Config config)
    : config_(std::move(config)),
      codebook_(make_codebook(config_)),
      memory_(config_.dimension, derive_seed(config_.seed, "memory"), config_.floor) {
  init_constants();
}

Interpreter::Interpreter(Config config, ResidueCodebook codebook,
                         std::vector<std::pair<std::string, HyperVector>> symbols)
    : config_(std::move(config)),
      codebook_(std::move(codebook)),
      memory_(codebook_.dimension(), derive_seed(config_.seed, "memory"), config_.floor) {
  config_.dimension = codebook_.dimension();
  config_.moduli.assign(codebook_.moduli().moduli().begin(), codebook_.moduli().moduli().end());
  config_.validate();
  init_constants();
  for (auto& [name, vec] : symbols) {
    if (name == "int") continue;  // the tag always comes from the codebook
    memory_.append(std::move(name), std::move(vec));
  }
  t_ = *memory_.find("t");
  f_ = *memory_.find("f");
  nil_ = *memory_.find("nil");
}

void Interpreter::init_constants() {
  t_ = intern("t");
  f_ = intern("f");
  nil_ = intern("nil");
  memory_.append("int", codebook_.tag());
  cons_tag_ = structural_symbol(config_, "%tag:cons");
  lambda_tag_ = structural_symbol(config_, "%tag:lambda");
  env_tag_ = structural_symbol(config_, "%tag:environment");
  role_head_ = structural_symbol(config_, "%role:head");
  role_tail_ = structural_symbol(config_, "%role:tail");
  role_params_ = structural_symbol(config_, "%role:params");
  role_body_ = structural_symbol(config_, "%role:body");
  role_env_ = structural_symbol(config_, "%role:env");
  global_ = Environment();
  global_.push_frame(std::make_shared<CleanupMemory>(config_.dimension, 0, config_.floor));
}

const HyperVector& Interpreter::intern(const std::string& name) {
  if (const HyperVector* v = memory_.find(name)) return *v;
  Rng rng(derive_seed(config_.seed, "symbol:" + name));
  memory_.append(name, random_symbol(rng, config_.dimension));
  return *memory_.find(name);
}

ResonatorOptions Interpreter::resonator_options() const {
  return {config_.max_iters, config_.patience, config_.trace};
}

// ---------------------------------------------------------------------------
// Integers

EncodedValue Interpreter::make_int(std::int64_t x) const {
  return {superpose(codebook_.encode(x), codebook_.tag()), ValueKind::kInteger};
}

HyperVector Interpreter::strip(const EncodedValue& v) const {
  return normalize(subtract(v.vector, codebook_.tag()));
}

EncodedValue Interpreter::retag(const HyperVector& code) const {
  return {superpose(code, codebook_.tag()), ValueKind::kInteger};
}

std::int64_t Interpreter::decode_int(const HyperVector& v) const {
  return codebook_.decode(normalize(subtract(v, codebook_.tag())), config_.decode_method,
                          resonator_options(), config_.floor);
}

std::int64_t Interpreter::display_int(std::int64_t raw) const noexcept {
  if (config_.raw_integers) return raw;
  const std::int64_t range = codebook_.range();
  return raw >= (range + 1) / 2 ? raw - range : raw;
}

EncodedValue Interpreter::int_p(const EncodedValue& v) const {
  const double s = similarity(v.vector, codebook_.tag());
  HyperVector w = scale(t_, s);
  accumulate(w, f_, cplx(2.0 * config_.theta - s, 0.0));
  ++retrievals_;
  const std::optional<RecallResult> r = memory_.best_match(w);
  if (r && r->name == "t") return {t_, ValueKind::kBoolean};
  return {f_, ValueKind::kBoolean};
}

void Interpreter::require_int(const EncodedValue& v, std::string_view op) const {
  if (similarity(int_p(v).vector, t_) <= config_.theta) {
    throw Error(ErrorKind::kType, std::string(op) + ": operand is not an integer (" + print(v) + ")");
  }
}

EncodedValue Interpreter::add(const EncodedValue& u, const EncodedValue& v) const {
  require_int(u, "+");
  require_int(v, "+");
  return retag(add_bind(strip(u), strip(v)));
}

EncodedValue Interpreter::sub(const EncodedValue& u, const EncodedValue& v) const {
  require_int(u, "-");
  require_int(v, "-");
  return retag(add_bind(strip(u), negate(strip(v))));
}

EncodedValue Interpreter::negate_int(const EncodedValue& v) const {
  require_int(v, "-");
  return retag(negate(strip(v)));
}

EncodedValue Interpreter::mul(const EncodedValue& u, const EncodedValue& v) const {
  require_int(u, "*");
  require_int(v, "*");
  return retag(mul_bind(codebook_, strip(u), strip(v), config_.decode_method, resonator_options()));
}

EncodedValue Interpreter::div(const EncodedValue& u, const EncodedValue& v) const {
  require_int(u, "/");
  require_int(v, "/");
  const HyperVector inverse =
      mod_inverse(codebook_, strip(v), config_.decode_method, resonator_options());
  return retag(mul_bind(codebook_, strip(u), inverse, config_.decode_method, resonator_options()));
}

// ---------------------------------------------------------------------------
// Classification and cleanup

Classification Interpreter::classify(const HyperVector& v) const {
  Classification out;
  const double s_int = similarity(v, codebook_.tag());
  if (s_int > config_.theta) {
    const HyperVector stripped = subtract(v, codebook_.tag());
    // The bare tag strips to ~0 and is a symbol, not an integer.
    if (mean_energy(stripped) > 0.25) {
      try {
        out.integer = codebook_.decode(normalize(stripped), config_.decode_method,
                                       resonator_options(), config_.floor);
        out.kind = ValueKind::kInteger;
        out.similarity = s_int;
        return out;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kUndecodable) throw;
      }
    }
  }

  const std::optional<RecallResult> sym = memory_.best_match(v);
  const std::optional<ChunkMatch> ch = memory_.locate_chunk(v);
  const double inf = std::numeric_limits<double>::infinity();
  const double s_sym = sym ? sym->similarity : -inf;
  const double s_chunk = ch ? ch->similarity : -inf;
  out.similarity = std::max(s_sym, s_chunk);
  if (!(out.similarity >= config_.floor)) return out;

  if (s_sym >= s_chunk) {
    out.name = sym->name;
    if (out.name == "t" || out.name == "f") {
      out.kind = ValueKind::kBoolean;
    } else if (out.name == "nil") {
      out.kind = ValueKind::kNil;
    } else {
      out.kind = ValueKind::kSymbol;
    }
    return out;
  }

  out.chunk = ch->index;
  const HyperVector& composite = memory_.chunk(ch->index).composite;
  if (similarity(composite, cons_tag_) > config_.theta) {
    out.kind = ValueKind::kCons;
  } else if (similarity(composite, lambda_tag_) > config_.theta) {
    out.kind = ValueKind::kClosure;
  } else if (similarity(composite, env_tag_) > config_.theta) {
    out.kind = ValueKind::kEnvironment;
  }
  return out;
}

EncodedValue Interpreter::canonical(const Classification& c) const {
  switch (c.kind) {
    case ValueKind::kInteger:
      return make_int(c.integer);
    case ValueKind::kBoolean:
    case ValueKind::kSymbol:
    case ValueKind::kNil:
      return {*memory_.find(c.name), c.kind};
    case ValueKind::kCons:
    case ValueKind::kClosure:
    case ValueKind::kEnvironment:
      return {memory_.chunk(c.chunk).pointer, c.kind};
    case ValueKind::kUnknown:
      break;
  }
  throw Error(ErrorKind::kNoMatch,
              "vector matches nothing in memory (best similarity " + std::to_string(c.similarity) +
                  ")");
}

EncodedValue Interpreter::cleanup(const HyperVector& noisy) const {
  ++retrievals_;
  return canonical(classify(noisy));
}

EncodedValue Interpreter::field(const Classification& c, const HyperVector& role) const {
  return cleanup(unbind(memory_.chunk(c.chunk).composite, role));
}

EncodedValue Interpreter::with_kind(const HyperVector& v) const {
  return {v, classify(v).kind};
}

// ---------------------------------------------------------------------------
// Lists

EncodedValue Interpreter::cons(const EncodedValue& head, const EncodedValue& tail) {
  HyperVector pointer =
      memory_.store_chunk(cons_tag_, {{role_head_, head.vector}, {role_tail_, tail.vector}});
  return {std::move(pointer), ValueKind::kCons};
}

EncodedValue Interpreter::car(const EncodedValue& v) const {
  const Classification c = classify(v.vector);
  if (c.kind != ValueKind::kCons) {
    throw Error(ErrorKind::kType, "car of non-cons value " + print(v));
  }
  return field(c, role_head_);
}

EncodedValue Interpreter::cdr(const EncodedValue& v) const {
  const Classification c = classify(v.vector);
  if (c.kind != ValueKind::kCons) {
    throw Error(ErrorKind::kType, "cdr of non-cons value " + print(v));
  }
  return field(c, role_tail_);
}

bool Interpreter::is_nil(const EncodedValue& v) const {
  return similarity(v.vector, nil_) > config_.theta;
}

bool Interpreter::eq(const EncodedValue& a, const EncodedValue& b) const {
  const Classification ca = classify(a.vector);
  const Classification cb = classify(b.vector);
  if (ca.kind == ValueKind::kInteger && cb.kind == ValueKind::kInteger) {
    // Tagged integers share the tag; compare the residue codes alone.
    return similarity(strip(a), strip(b)) > config_.theta;
  }
  return similarity(a.vector, b.vector) > config_.theta;
}

std::vector<EncodedValue> Interpreter::list_items(const EncodedValue& list) const {
  std::vector<EncodedValue> items;
  HyperVector cur = list.vector;
  while (true) {
    const Classification c = classify(cur);
    if (c.kind == ValueKind::kNil) break;
    if (c.kind != ValueKind::kCons) {
      throw Error(ErrorKind::kType, "expected a proper list, found " + print({cur, c.kind}));
    }
    items.push_back(field(c, role_head_));
    cur = field(c, role_tail_).vector;
  }
  return items;
}

// ---------------------------------------------------------------------------
// Encoding and evaluation

EncodedValue Interpreter::encode(const SExpr& expr) {
  if (expr.is_int()) return make_int(expr.int_literal().value);
  if (expr.is_atom()) {
    const std::string& name = expr.atom().name;
    HyperVector v = intern(name);
    ValueKind kind = ValueKind::kSymbol;
    if (name == "nil") kind = ValueKind::kNil;
    if (name == "t" || name == "f") kind = ValueKind::kBoolean;
    return {std::move(v), kind};
  }
  EncodedValue acc{nil_, ValueKind::kNil};
  const auto& items = expr.list().items;
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    EncodedValue head = encode(*it);
    acc = cons(head, acc);
  }
  return acc;
}

EncodedValue Interpreter::eval(const EncodedValue& expr, Environment& env) {
  const Classification c = classify(expr.vector);
  switch (c.kind) {
    case ValueKind::kInteger:
    case ValueKind::kBoolean:
    case ValueKind::kNil:
    case ValueKind::kClosure:
      return canonical(c);
    case ValueKind::kSymbol:
      if (const HyperVector* bound = env.try_lookup(c.name)) return with_kind(*bound);
      if (is_primitive(c.name)) return canonical(c);
      throw Error(ErrorKind::kUnboundSymbol, "unbound symbol '" + c.name + "'");
    case ValueKind::kCons:
      return eval_form(c, env);
    case ValueKind::kEnvironment:
      throw Error(ErrorKind::kType, "an environment is not an expression");
    case ValueKind::kUnknown:
      break;
  }
  throw Error(ErrorKind::kNoMatch, "cannot evaluate unrecognized vector (best similarity " +
                                       std::to_string(c.similarity) + ")");
}

EncodedValue Interpreter::eval_form(const Classification& c, Environment& env) {
  const EncodedValue head = field(c, role_head_);
  const EncodedValue rest = field(c, role_tail_);
  const Classification hc = classify(head.vector);

  if (hc.kind == ValueKind::kSymbol && is_special_form(hc.name)) {
    const std::vector<EncodedValue> args = list_items(rest);
    if (hc.name == "quote") {
      require_arity("quote", args, 1, 1);
      return args[0];
    }
    if (hc.name == "lambda") {
      require_arity("lambda", args, 2, 2);
      for (const EncodedValue& p : list_items(args[0])) {
        if (classify(p.vector).kind != ValueKind::kSymbol) {
          throw Error(ErrorKind::kType, "lambda parameter " + print(p) + " is not a symbol");
        }
      }
      return make_closure(args[0], args[1], env);
    }
    if (hc.name == "define") {
      require_arity("define", args, 2, 2);
      const Classification nc = classify(args[0].vector);
      if (nc.kind != ValueKind::kSymbol) {
        throw Error(ErrorKind::kType, "define expects a symbol name, got " + print(args[0]));
      }
      EncodedValue value = eval(args[1], env);
      env.define(nc.name, value.vector);
      return value;
    }
    // cond
    for (const EncodedValue& clause : args) {
      const std::vector<EncodedValue> parts = list_items(clause);
      if (parts.empty()) throw Error(ErrorKind::kArity, "cond clause is empty");
      EncodedValue result = eval(parts[0], env);
      if (similarity(result.vector, t_) > config_.theta) {
        for (std::size_t i = 1; i < parts.size(); ++i) result = eval(parts[i], env);
        return result;
      }
    }
    return {nil_, ValueKind::kNil};
  }

  const EncodedValue fn = eval(head, env);
  std::vector<EncodedValue> args;
  for (const EncodedValue& a : list_items(rest)) args.push_back(eval(a, env));
  return apply(fn, args);
}

EncodedValue Interpreter::make_closure(const EncodedValue& params, const EncodedValue& body,
                                       const Environment& env) {
  const HyperVector env_pointer = memory_.store_chunk(env_tag_, {});
  captured_.emplace(memory_.chunk_count() - 1, env);
  HyperVector pointer = memory_.store_chunk(
      lambda_tag_,
      {{role_params_, params.vector}, {role_body_, body.vector}, {role_env_, env_pointer}});
  return {std::move(pointer), ValueKind::kClosure};
}

EncodedValue Interpreter::apply(const EncodedValue& fn, const std::vector<EncodedValue>& args) {
  const Classification fc = classify(fn.vector);
  if (fc.kind == ValueKind::kSymbol && is_primitive(fc.name)) {
    return apply_primitive(fc.name, args);
  }
  if (fc.kind != ValueKind::kClosure) {
    throw Error(ErrorKind::kNotApplicable, "cannot apply " + print(fn));
  }

  // Dereference the closure chunk and read back its three fillers.
  const HyperVector& composite = memory_.chunk(fc.chunk).composite;
  const EncodedValue params = field(fc, role_params_);
  const EncodedValue body = field(fc, role_body_);
  ++retrievals_;
  const std::optional<ChunkMatch> env_match = memory_.locate_chunk(unbind(composite, role_env_));
  const auto captured =
      env_match && env_match->similarity >= config_.floor ? captured_.find(env_match->index)
                                                          : captured_.end();
  if (captured == captured_.end()) {
    throw Error(ErrorKind::kDanglingPointer, "closure environment pointer matches no environment");
  }

  const std::vector<EncodedValue> names = list_items(params);
  if (names.size() != args.size()) {
    throw Error(ErrorKind::kArity, "lambda expects " + std::to_string(names.size()) +
                                       " argument(s), got " + std::to_string(args.size()));
  }
  auto frame = std::make_shared<CleanupMemory>(config_.dimension, 0, config_.floor);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const Classification nc = classify(names[i].vector);
    frame->append(nc.name, args[i].vector);
  }
  Environment call_env = captured->second.extended(std::move(frame));
  return eval(body, call_env);
}

EncodedValue Interpreter::apply_primitive(const std::string& name,
                                          const std::vector<EncodedValue>& args) {
  constexpr std::size_t kMany = std::numeric_limits<std::size_t>::max();
  auto boolean = [this](bool b) -> EncodedValue {
    return {b ? t_ : f_, ValueKind::kBoolean};
  };
  if (name == "cons") {
    require_arity(name, args, 2, 2);
    return cons(args[0], args[1]);
  }
  if (name == "car") {
    require_arity(name, args, 1, 1);
    return car(args[0]);
  }
  if (name == "cdr") {
    require_arity(name, args, 1, 1);
    return cdr(args[0]);
  }
  if (name == "atom?") {
    require_arity(name, args, 1, 1);
    const ValueKind k = classify(args[0].vector).kind;
    return boolean(k != ValueKind::kCons && k != ValueKind::kClosure);
  }
  if (name == "eq?") {
    require_arity(name, args, 2, 2);
    return boolean(eq(args[0], args[1]));
  }
  if (name == "int?") {
    require_arity(name, args, 1, 1);
    return int_p(args[0]);
  }
  if (name == "+" || name == "*") {
    require_arity(name, args, 1, kMany);
    EncodedValue acc = args[0];
    if (args.size() == 1) require_int(acc, name);
    for (std::size_t i = 1; i < args.size(); ++i) {
      acc = name == "+" ? add(acc, args[i]) : mul(acc, args[i]);
    }
    return acc;
  }
  if (name == "-") {
    require_arity(name, args, 1, 2);
    return args.size() == 1 ? negate_int(args[0]) : sub(args[0], args[1]);
  }
  if (name == "/") {
    require_arity(name, args, 2, 2);
    return div(args[0], args[1]);
  }
  throw Error(ErrorKind::kNotApplicable, "unknown primitive '" + name + "'");
}

std::vector<std::string> Interpreter::run(std::string_view source) {
  std::vector<std::string> out;
  for (const SExpr& form : read_program(source)) out.push_back(print(eval(form)));
  return out;
}

// ---------------------------------------------------------------------------
// Printing

std::string Interpreter::print(const EncodedValue& v) const {
  std::string out;
  print_into(out, v.vector, 0);
  return out;
}

void Interpreter::print_into(std::string& out, const HyperVector& v, std::size_t depth) const {
  if (depth > kMaxPrintDepth) {
    out += "...";
    return;
  }
  const Classification c = classify(v);
  switch (c.kind) {
    case ValueKind::kInteger:
      out += std::to_string(display_int(c.integer));
      return;
    case ValueKind::kBoolean:
    case ValueKind::kSymbol:
    case ValueKind::kNil:
      out += c.name;
      return;
    case ValueKind::kClosure:
      out += "#<lambda>";
      return;
    case ValueKind::kEnvironment:
      out += "#<environment>";
      return;
    case ValueKind::kUnknown: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "#<vector sim=%.3f>", c.similarity);
      out += buf;
      return;
    }
    case ValueKind::kCons:
      break;
  }
  out += '(';
  Classification cell = c;
  for (std::size_t n = 0;; ++n) {
    if (n != 0) out += ' ';
    if (n > kMaxPrintDepth) {
      out += "...)";
      return;
    }
    print_into(out, field(cell, role_head_).vector, depth + 1);
    const EncodedValue tail = field(cell, role_tail_);
    const Classification tc = classify(tail.vector);
    if (tc.kind == ValueKind::kNil) break;
    if (tc.kind != ValueKind::kCons) {
      out += " . ";
      print_into(out, tail.vector, depth + 1);
      break;
    }
    cell = tc;
  }
  out += ')';
}

}  // namespace vsalisp
