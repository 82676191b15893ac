// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "vsalisp/bench.hpp"
#include "vsalisp/error.hpp"
#include "vsalisp/interpreter.hpp"
#include "vsalisp/residue.hpp"
#include "vsalisp/resonator.hpp"

namespace {

using namespace vsalisp;

constexpr std::size_t kD = 1000;
constexpr std::int64_t kRange = 105;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Roundtrip counts for both methods under one codebook.
std::pair<int, int> roundtrip(const ResidueCodebook& cb) {
  int ex = 0, res = 0;
  for (std::int64_t x = 0; x < kRange; ++x) {
    const HyperVector v = cb.encode(x);
    try {
      ex += cb.decode(v, DecodeMethod::kExhaustive) == x;
    } catch (const Error&) {
    }
    try {
      res += cb.decode(v, DecodeMethod::kResonator) == x;
    } catch (const Error&) {
    }
  }
  return {ex, res};
}

Outcome residue_roundtrip() {
  const Interpreter defaults{Config{}};
  const auto [ex0, res0] = roundtrip(defaults.codebook());
  int ex = 0, res = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Config c;
    c.seed = seed;
    const Interpreter in{c};
    const auto [e, r] = roundtrip(in.codebook());
    ex += e;
    res += r;
  }
  const int total = 20 * kRange;
  const bool pass = ex0 == kRange && res0 == kRange && ex * 100 >= 99 * total &&
                    res * 100 >= 99 * total;
  return {pass, fmt("default seed exhaustive %d/105 resonator %d/105; 20 seeds exhaustive "
                    "%d/%d resonator %d/%d",
                    ex0, res0, ex, total, res, total)};
}

std::int64_t brute_quotient(std::int64_t a, std::int64_t b) {
  for (std::int64_t q = 0; q < kRange; ++q) {
    if (q * b % kRange == a) return q;
  }
  return -1;
}

Outcome arithmetic_homomorphisms() {
  std::mt19937_64 gen(2025);
  std::uniform_int_distribution<std::int64_t> pick(0, kRange - 1);
  const Interpreter in{Config{}};
  int add_ok = 0, sub_ok = 0, mul_ok = 0, div_ok = 0, div_total = 0, no_inv_ok = 0, no_inv = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::int64_t a = pick(gen), b = pick(gen);
    const EncodedValue ea = in.make_int(a), eb = in.make_int(b);
    auto decoded = [&](auto&& op) -> std::int64_t {
      try {
        return in.decode_int(op().vector);
      } catch (const Error&) {
        return -1;
      }
    };
    add_ok += decoded([&] { return in.add(ea, eb); }) == (a + b) % kRange;
    sub_ok += decoded([&] { return in.sub(ea, eb); }) == ((a - b) % kRange + kRange) % kRange;
    mul_ok += decoded([&] { return in.mul(ea, eb); }) == a * b % kRange;
    if (std::gcd(b, kRange) == 1) {
      ++div_total;
      div_ok += decoded([&] { return in.div(ea, eb); }) == brute_quotient(a, b);
    } else {
      ++no_inv;
      try {
        (void)in.div(ea, eb);
      } catch (const Error& e) {
        no_inv_ok += e.kind() == ErrorKind::kNoInverse;
      }
    }
  }
  const bool pass = add_ok == 500 && sub_ok == 500 && mul_ok == 500 && div_ok == div_total &&
                    no_inv_ok == no_inv;
  return {pass, fmt("add %d/500 sub %d/500 mul %d/500 div %d/%d no-inverse raised %d/%d", add_ok,
                    sub_ok, mul_ok, div_ok, div_total, no_inv_ok, no_inv)};
}

Outcome int_discriminator() {
  Interpreter in{Config{}};
  int ints = 0;
  for (std::int64_t x = 0; x < kRange; ++x) ints += in.int_p(in.make_int(x)).vector == in.t();
  int others = 0;
  for (const char* name : {"t", "f", "nil"}) {
    others += in.int_p({*in.symbol(name), ValueKind::kSymbol}).vector == in.f();
  }
  for (int i = 0; i < 100; ++i) {
    others += in.int_p({in.intern("random-" + std::to_string(i)), ValueKind::kSymbol}).vector ==
              in.f();
  }
  return {ints == kRange && others == 103,
          fmt("theta 0.2: integers -> t %d/105, t/f/nil/100 symbols -> f %d/103", ints, others)};
}

Outcome resonator_vs_oracle() {
  Rng rng(4242);
  int match = 0;
  std::size_t worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<FactorCodebook> cbs;
    for (int slot = 0; slot < 3; ++slot) {
      std::vector<HyperVector> atoms;
      for (int i = 0; i < 8; ++i) atoms.push_back(random_symbol(rng, kD));
      cbs.emplace_back(std::move(atoms));
    }
    HyperVector s = HyperVector::identity(kD);
    for (const auto& cb : cbs) s = bind(s, cb[rng.uniform_int(0, 7)]);

    std::vector<std::size_t> oracle(3);
    double best = -2.0;
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 8; ++j) {
        for (std::size_t k = 0; k < 8; ++k) {
          const double sim = similarity(bind(bind(cbs[0][i], cbs[1][j]), cbs[2][k]), s);
          if (sim > best) {
            best = sim;
            oracle = {i, j, k};
          }
        }
      }
    }
    const FactorizeResult r = factorize(s, cbs, 50, 3);
    worst = std::max(worst, r.iterations);
    match += r.indices == oracle && r.iterations <= 50;
  }
  return {match >= 95, fmt("%d/100 match exhaustive search within 50 iterations (max %zu sweeps)",
                           match, worst)};
}

Outcome interpreter_suite() {
  struct Case {
    const char* program;
    const char* expected;
  };
  const Case cases[] = {
      {"(car (cons 1 nil))", "1"},
      {"((lambda (x) (* x x)) 6)", "36"},
      {"((lambda (x) ((lambda (y) (+ x y)) 2)) 3)", "5"},
      {"(define length (lambda (l) (cond ((eq? l nil) 0) (t (+ 1 (length (cdr l)))))))\n"
       "(length '(a b c d e))",
       "5"},
  };
  int ok = 0;
  std::string failures;
  for (const Case& c : cases) {
    Interpreter in{Config{}};
    std::string got;
    try {
      got = in.run(c.program).back();
    } catch (const Error& e) {
      got = e.formatted();
    }
    if (got == c.expected) {
      ++ok;
    } else {
      failures += fmt(" [%s => %s]", c.program, got.c_str());
    }
  }
  return {ok == 4, fmt("%d/4 programs exact%s", ok, failures.c_str())};
}

Outcome benchmark_shape() {
  bench::BenchOptions options;  // magnitudes 5..100, 20 reps
  std::vector<bench::BenchResult> results;
  try {
    results = bench::run_benchmark(Config{}, options);
  } catch (const Error& e) {
    return {false, std::string("sums decoded wrongly: ") + e.what()};
  }
  const double flat = bench::flatness_ratio(results, bench::Encoding::kRhc);
  const double exponent = bench::growth_exponent(results, bench::Encoding::kList);
  return {flat <= 2.0 && exponent >= 1.0,
          fmt("all sums verified; rhc max/min median %.3f (<= 2), list log-log exponent %.3f "
              "(>= 1)",
              flat, exponent)};
}

Outcome vsa_algebra() {
  Rng rng(1000);
  double inverse_err = 0.0, isometry_err = 0.0, modulus_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const HyperVector u = random_symbol(rng, kD), v = random_symbol(rng, kD);
    const HyperVector w = random_symbol(rng, kD);
    const HyperVector back = unbind(bind(u, v), u);
    for (std::size_t i = 0; i < kD; ++i) inverse_err = std::max(inverse_err, std::abs(back[i] - v[i]));
    const HyperVector near = normalize(superpose(u, scale(v, 0.7)));
    isometry_err = std::max(isometry_err, std::abs(similarity(bind(u, w), bind(near, w)) -
                                                   similarity(u, near)));
  }
  HyperVector chain = HyperVector::identity(kD);
  for (int i = 0; i < 1000; ++i) chain = bind(chain, random_symbol(rng, kD));
  modulus_err = chain.max_modulus_error();

  const double bound = 4.0 / std::sqrt(static_cast<double>(kD));
  int orthogonal = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    orthogonal += std::abs(similarity(random_symbol(rng, kD), random_symbol(rng, kD))) < bound;
  }

  int bundles = 0, bundle_total = 0;
  for (std::size_t k = 2; k <= 7; ++k) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<HyperVector> members;
      HyperVector sum = HyperVector::zero(kD);
      for (std::size_t i = 0; i < k; ++i) {
        members.push_back(random_symbol(rng, kD));
        accumulate(sum, members.back());
      }
      const HyperVector bundle = normalize(sum);
      double lowest_member = 1.0, highest_other = -1.0;
      for (const auto& m : members) lowest_member = std::min(lowest_member, similarity(bundle, m));
      for (int i = 0; i < 20; ++i) {
        highest_other = std::max(highest_other, similarity(bundle, random_symbol(rng, kD)));
      }
      ++bundle_total;
      bundles += lowest_member > highest_other;
    }
  }
  const bool pass = inverse_err < kExactTolerance && isometry_err < kAccumulatedTolerance &&
                    modulus_err < kAccumulatedTolerance && orthogonal >= 990 &&
                    bundles * 100 >= 99 * bundle_total;
  return {pass, fmt("unbind/bind err %.1e, isometry err %.1e, chain modulus err %.1e, "
                    "|sim|<4/sqrt(D) %d/1000, bundle cleanup %d/%d",
                    inverse_err, isometry_err, modulus_err, orthogonal, bundles, bundle_total)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"residue-roundtrip", residue_roundtrip},
      {"arithmetic-homomorphisms", arithmetic_homomorphisms},
      {"int-discriminator", int_discriminator},
      {"resonator-vs-oracle", resonator_vs_oracle},
      {"interpreter-suite", interpreter_suite},
      {"benchmark-shape", benchmark_shape},
      {"vsa-algebra", vsa_algebra},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("uncaught: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %-26s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
