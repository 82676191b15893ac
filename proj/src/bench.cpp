#include "vsalisp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include "vsalisp/error.hpp"

#if defined(__linux__)
#include <sched.h>
#endif

namespace vsalisp::bench {

namespace {

using Clock = std::chrono::steady_clock;

void pin_to_current_cpu() {
#if defined(__linux__)
  const int cpu = sched_getcpu();
  if (cpu < 0) return;
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(cpu, &set);
  sched_setaffinity(0, sizeof set, &set);  // best effort
#endif
}

template <typename T>
void keep_alive(T& value) {
  asm volatile("" : : "r"(&value) : "memory");
}

double elapsed_ns(Clock::time_point start, Clock::time_point stop) {
  return std::chrono::duration<double, std::nano>(stop - start).count();
}

}  // namespace

std::string_view encoding_name(Encoding e) noexcept {
  return e == Encoding::kRhc ? "rhc" : "list";
}

EncodedValue list_encode(Interpreter& interpreter, std::int64_t x) {
  if (x < 0) throw Error(ErrorKind::kType, "list encoding covers non-negative integers only");
  const EncodedValue nil{interpreter.nil(), ValueKind::kNil};
  EncodedValue acc = nil;
  for (std::int64_t i = 0; i < x; ++i) acc = interpreter.cons(nil, acc);
  return acc;
}

std::int64_t list_decode(const Interpreter& interpreter, const EncodedValue& v) {
  std::int64_t depth = 0;
  EncodedValue cur = v;
  while (!interpreter.is_nil(cur)) {
    cur = interpreter.cdr(cur);
    ++depth;
  }
  return depth;
}

EncodedValue list_add(Interpreter& interpreter, const EncodedValue& x, const EncodedValue& y) {
  if (interpreter.is_nil(y)) return x;
  EncodedValue rest;
  try {
    rest = interpreter.cdr(y);
  } catch (const Error& e) {
    throw Error(ErrorKind::kType, std::string("malformed list-encoded operand: ") + e.what());
  }
  const EncodedValue nil{interpreter.nil(), ValueKind::kNil};
  return interpreter.cons(nil, list_add(interpreter, x, rest));
}

double median(std::vector<double> samples) {
  if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  return samples.size() % 2 == 1 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
}

std::vector<BenchResult> run_benchmark(const Config& config, const BenchOptions& options) {
  if (options.reps < 5) throw Error(ErrorKind::kInvalidConfig, "benchmark needs at least 5 repetitions");
  if (options.rhc_batch == 0) throw Error(ErrorKind::kInvalidConfig, "rhc batch must be positive");
  if (options.pin_cpu) pin_to_current_cpu();

  // Correctness first: both encodings must produce n + n.
  for (std::int64_t n : options.magnitudes) {
    if (n < 0) throw Error(ErrorKind::kInvalidConfig, "magnitudes must be non-negative");
    Interpreter check(config);
    const ResidueCodebook& cb = check.codebook();
    const std::int64_t rhc_sum = cb.decode(add_bind(cb.encode(n), cb.encode(n)), config.decode_method);
    if (rhc_sum != floor_mod(2 * n, cb.range())) {
      throw Error(ErrorKind::kUndecodable, "rhc sum for magnitude " + std::to_string(n) +
                                               " decoded to " + std::to_string(rhc_sum));
    }
    const EncodedValue x = list_encode(check, n);
    const EncodedValue y = list_encode(check, n);
    const std::int64_t list_sum = list_decode(check, list_add(check, x, y));
    if (list_sum != 2 * n) {
      throw Error(ErrorKind::kUndecodable, "list sum for magnitude " + std::to_string(n) +
                                               " decoded to " + std::to_string(list_sum));
    }
  }

  // RHC samples are interleaved across magnitudes so machine drift hits all
  // of them alike; one untimed batch warms caches and the allocator.
  const Interpreter rhc_session(config);
  std::vector<HyperVector> operands;
  for (std::int64_t n : options.magnitudes) operands.push_back(rhc_session.codebook().encode(n));
  std::vector<std::vector<double>> rhc_samples(operands.size());
  auto rhc_batch = [&](const HyperVector& a) {
    HyperVector out = a;
    const auto start = Clock::now();
    for (std::size_t i = 0; i < options.rhc_batch; ++i) {
      out = add_bind(a, a);
      keep_alive(out);
    }
    return elapsed_ns(start, Clock::now()) / static_cast<double>(options.rhc_batch);
  };
  if (!operands.empty()) rhc_batch(operands.front());
  for (std::size_t r = 0; r < options.reps; ++r) {
    for (std::size_t k = 0; k < operands.size(); ++k) rhc_samples[k].push_back(rhc_batch(operands[k]));
  }

  std::vector<BenchResult> results;
  for (std::size_t k = 0; k < operands.size(); ++k) {
    const std::int64_t n = options.magnitudes[k];
    results.push_back({Encoding::kRhc, n, median(rhc_samples[k]), options.reps, config.dimension});

    std::vector<double> list_samples;
    for (std::size_t r = 0; r < options.reps; ++r) {
      Interpreter session(config);
      const EncodedValue x = list_encode(session, n);
      const EncodedValue y = list_encode(session, n);
      const auto start = Clock::now();
      EncodedValue sum = list_add(session, x, y);
      const auto stop = Clock::now();
      keep_alive(sum);
      list_samples.push_back(elapsed_ns(start, stop));
    }
    results.push_back({Encoding::kList, n, median(list_samples), options.reps, config.dimension});
  }
  return results;
}

void write_csv(std::ostream& out, const std::vector<BenchResult>& results) {
  const auto flags = out.flags();
  const auto precision = out.precision(1);
  out << std::fixed << "encoding,magnitude,median_ns,reps,dimension\n";
  for (const BenchResult& r : results) {
    out << encoding_name(r.encoding) << ',' << r.magnitude << ',' << r.median_ns << ','
        << r.reps << ',' << r.dimension << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

void write_gnuplot(std::ostream& out, const std::vector<BenchResult>& results, Encoding e) {
  const auto flags = out.flags();
  const auto precision = out.precision(1);
  out << std::fixed << "# magnitude median_ns (" << encoding_name(e) << ")\n";
  for (const BenchResult& r : results) {
    if (r.encoding == e) out << r.magnitude << ' ' << r.median_ns << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

double growth_exponent(const std::vector<BenchResult>& results, Encoding e) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const BenchResult& r : results) {
    if (r.encoding != e || r.magnitude <= 0 || !(r.median_ns > 0)) continue;
    const double x = std::log(static_cast<double>(r.magnitude));
    const double y = std::log(r.median_ns);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (dn * sxy - sx * sy) / denom;
}

double flatness_ratio(const std::vector<BenchResult>& results, Encoding e) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const BenchResult& r : results) {
    if (r.encoding != e) continue;
    lo = std::min(lo, r.median_ns);
    hi = std::max(hi, r.median_ns);
  }
  return hi / lo;
}

}  // namespace vsalisp::bench
