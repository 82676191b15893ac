#pragma once

// Integer addition cost: RHC binding versus integers as nested lists
// (x is x-fold cons(nil, .) applied to nil).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "vsalisp/interpreter.hpp"

namespace vsalisp::bench {

EncodedValue list_encode(Interpreter& interpreter, std::int64_t x);
std::int64_t list_decode(const Interpreter& interpreter, const EncodedValue& v);

// add(x, nil) = x
// add(x, cons(nil, y)) = cons(nil, add(x, y))
// Each unnesting step is a memory retrieval.
EncodedValue list_add(Interpreter& interpreter, const EncodedValue& x, const EncodedValue& y);

enum class Encoding { kRhc, kList };
std::string_view encoding_name(Encoding e) noexcept;

struct BenchResult {
  Encoding encoding;
  std::int64_t magnitude;
  double median_ns;
  std::size_t reps;
  std::size_t dimension;
};

struct BenchOptions {
  std::vector<std::int64_t> magnitudes{5, 10, 20, 50, 100};
  std::size_t reps = 20;  // at least 5
  // RHC additions per timed repetition; the per-addition time is reported.
  std::size_t rhc_batch = 4000;
  bool pin_cpu = true;
};

// Verifies both encodings produce the right sums, then times them. Throws
// if a sum decodes wrongly.
std::vector<BenchResult> run_benchmark(const Config& config, const BenchOptions& options);

void write_csv(std::ostream& out, const std::vector<BenchResult>& results);
// "magnitude median_ns" lines for one encoding.
void write_gnuplot(std::ostream& out, const std::vector<BenchResult>& results, Encoding e);

// Least-squares slope of log(median_ns) against log(magnitude).
double growth_exponent(const std::vector<BenchResult>& results, Encoding e);
// max / min median over magnitudes.
double flatness_ratio(const std::vector<BenchResult>& results, Encoding e);

double median(std::vector<double> samples);

}  // namespace vsalisp::bench
