// vsalisp: REPL, script runner and benchmark driver.
//
//   vsalisp [options]                 interactive session on stdin
//   vsalisp [options] run FILE.vl     evaluate a script, one result per form
//   vsalisp [options] bench --out F   RHC vs list-encoded addition timings
//
// Exit codes: 0 ok, 1 runtime error, 2 usage/io/config error, 3 syntax error.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vsalisp/bench.hpp"
#include "vsalisp/error.hpp"
#include "vsalisp/interpreter.hpp"
#include "vsalisp/kernels.hpp"
#include "vsalisp/reader.hpp"
#include "vsalisp/session.hpp"

namespace {

using vsalisp::Config;
using vsalisp::EncodedValue;
using vsalisp::Error;
using vsalisp::ErrorKind;
using vsalisp::Interpreter;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSyntax = 3;

struct CliOptions {
  std::size_t dimension = 1000;
  std::string moduli = "3,5,7";
  double theta = 0.2;
  std::uint64_t seed = 42;
  std::string decode = "resonator";
  bool verbose = false;
  bool raw = false;
  std::string session;
};

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidConfig,
                  std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::kInvalidConfig, std::string(what) + " list is empty");
  return out;
}

Config make_config(const CliOptions& opts) {
  if (opts.dimension < 64) {
    throw Error(ErrorKind::kInvalidDimension, "--dim must be at least 64");
  }
  Config config;
  config.dimension = opts.dimension;
  config.moduli = parse_int_list(opts.moduli, "moduli");
  config.theta = opts.theta;
  config.seed = opts.seed;
  if (opts.decode == "resonator") {
    config.decode_method = vsalisp::DecodeMethod::kResonator;
  } else if (opts.decode == "exhaustive") {
    config.decode_method = vsalisp::DecodeMethod::kExhaustive;
  } else {
    throw Error(ErrorKind::kInvalidConfig, "--decode must be exhaustive or resonator");
  }
  config.raw_integers = opts.raw;
  if (opts.verbose) config.trace = &std::cerr;
  config.validate();
  return config;
}

Interpreter open_session(const CliOptions& opts, const Config& config) {
  if (!opts.session.empty() && std::filesystem::exists(opts.session)) {
    return vsalisp::load_session(opts.session, config);
  }
  return Interpreter(config);
}

void close_session(const CliOptions& opts, const Interpreter& interp) {
  if (!opts.session.empty()) vsalisp::save_session(opts.session, interp);
}

void report(const Error& e) { std::cout << e.formatted() << std::endl; }

int run_file(const CliOptions& opts, const Config& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    report(Error(ErrorKind::kIo, "cannot open '" + path + "'"));
    return kExitUsage;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  std::vector<vsalisp::SExpr> forms;
  try {
    forms = vsalisp::read_program(buffer.str());
  } catch (const vsalisp::SyntaxError& e) {
    report(e);
    return kExitSyntax;
  }

  Interpreter interp = open_session(opts, config);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    try {
      std::cout << interp.print(interp.eval(forms[i])) << '\n';
    } catch (const Error& e) {
      std::cout << std::flush;
      report(Error(e.kind(), std::string(e.what()) + " (form " + std::to_string(i + 1) + ": " +
                                 vsalisp::to_string(forms[i]) + ")"));
      return kExitRuntime;
    }
  }
  std::cout << std::flush;
  close_session(opts, interp);
  return 0;
}

// Net parenthesis depth of a chunk of source, ignoring comments.
int paren_balance(const std::string& text) {
  int depth = 0;
  bool comment = false;
  for (char c : text) {
    if (comment) {
      if (c == '\n') comment = false;
      continue;
    }
    if (c == ';') comment = true;
    if (c == '(') ++depth;
    if (c == ')') --depth;
  }
  return depth;
}

void meta_command(Interpreter& interp, const std::string& line,
                  const std::optional<EncodedValue>& last) {
  std::istringstream ss(line);
  std::string cmd;
  ss >> cmd;
  if (cmd == ":env") {
    const auto& mem = interp.memory();
    for (std::size_t i = 0; i < mem.size(); ++i) std::cout << mem.name(i) << '\n';
    return;
  }
  if (cmd == ":sim") {
    std::string a, b;
    ss >> a >> b;
    const vsalisp::HyperVector* va = interp.symbol(a);
    const vsalisp::HyperVector* vb = interp.symbol(b);
    if (a.empty() || b.empty()) throw Error(ErrorKind::kArity, ":sim expects two symbol names");
    if (va == nullptr) throw Error(ErrorKind::kUnboundSymbol, "no interned symbol '" + a + "'");
    if (vb == nullptr) throw Error(ErrorKind::kUnboundSymbol, "no interned symbol '" + b + "'");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", vsalisp::similarity(*va, *vb));
    std::cout << buf << '\n';
    return;
  }
  if (cmd == ":decode") {
    if (!last) throw Error(ErrorKind::kNoMatch, "no value to decode yet");
    const auto& cb = interp.codebook();
    const double s_int = vsalisp::similarity(last->vector, cb.tag());
    const vsalisp::HyperVector stripped =
        vsalisp::normalize(vsalisp::subtract(last->vector, cb.tag()));
    const auto exhaustive = cb.best_exhaustive(stripped);
    const vsalisp::Classification c = interp.classify(last->vector);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "kind=%s sim(int)=%.4f exhaustive=%lld (sim %.4f)",
                  std::string(vsalisp::kind_name(c.kind)).c_str(), s_int,
                  static_cast<long long>(exhaustive.value), exhaustive.similarity);
    std::cout << buf;
    try {
      const std::int64_t r = cb.decode(stripped, vsalisp::DecodeMethod::kResonator);
      std::cout << " resonator=" << r;
    } catch (const Error&) {
      std::cout << " resonator=undecodable";
    }
    if (auto best = interp.memory().best_match(last->vector)) {
      std::snprintf(buf, sizeof buf, " nearest-symbol=%s (sim %.4f)", best->name.c_str(),
                    best->similarity);
      std::cout << buf;
    }
    std::cout << '\n';
    return;
  }
  throw Error(ErrorKind::kInvalidConfig, "unknown meta-command '" + cmd + "'");
}

int repl(const CliOptions& opts, const Config& config) {
  Interpreter interp = open_session(opts, config);
  const bool interactive = isatty(STDIN_FILENO) != 0;
  std::optional<EncodedValue> last;
  std::string pending;
  std::string line;
  auto prompt = [&] {
    if (interactive) std::cout << (pending.empty() ? "> " : "  ") << std::flush;
  };
  prompt();
  while (std::getline(std::cin, line)) {
    if (pending.empty() && !line.empty() && line[0] == ':') {
      const std::string trimmed = line.substr(0, line.find_last_not_of(" \t\r") + 1);
      if (trimmed == ":quit") break;
      try {
        meta_command(interp, trimmed, last);
      } catch (const Error& e) {
        report(e);
      }
      prompt();
      continue;
    }
    pending += line;
    pending += '\n';
    if (paren_balance(pending) > 0) {
      prompt();
      continue;
    }
    const std::string source = std::move(pending);
    pending.clear();
    std::vector<vsalisp::SExpr> forms;
    try {
      forms = vsalisp::read_program(source);
    } catch (const Error& e) {
      report(e);
      prompt();
      continue;
    }
    for (const vsalisp::SExpr& form : forms) {
      try {
        EncodedValue value = interp.eval(form);
        std::cout << interp.print(value) << '\n';
        last = std::move(value);
      } catch (const Error& e) {
        report(Error(e.kind(), std::string(e.what()) + " (in " + vsalisp::to_string(form) + ")"));
      }
    }
    std::cout << std::flush;
    prompt();
  }
  close_session(opts, interp);
  return 0;
}

int bench_command(const Config& config, const std::string& out_path,
                  const std::string& magnitudes, std::size_t reps,
                  const std::string& gnuplot_prefix) {
  vsalisp::bench::BenchOptions options;
  options.magnitudes = parse_int_list(magnitudes, "magnitudes");
  options.reps = reps;

  std::ofstream csv(out_path, std::ios::trunc);
  if (!csv) {
    report(Error(ErrorKind::kIo, "cannot write '" + out_path + "'"));
    return kExitUsage;
  }
  const auto results = vsalisp::bench::run_benchmark(config, options);
  vsalisp::bench::write_csv(csv, results);
  csv.close();
  if (!gnuplot_prefix.empty()) {
    for (auto e : {vsalisp::bench::Encoding::kRhc, vsalisp::bench::Encoding::kList}) {
      const std::string path =
          gnuplot_prefix + "_" + std::string(vsalisp::bench::encoding_name(e)) + ".dat";
      std::ofstream dat(path, std::ios::trunc);
      if (!dat) {
        report(Error(ErrorKind::kIo, "cannot write '" + path + "'"));
        return kExitUsage;
      }
      vsalisp::bench::write_gnuplot(dat, results, e);
    }
  }
  const double exponent = vsalisp::bench::growth_exponent(results, vsalisp::bench::Encoding::kList);
  const double flatness = vsalisp::bench::flatness_ratio(results, vsalisp::bench::Encoding::kRhc);
  char buf[160];
  std::snprintf(buf, sizeof buf, "list growth exponent: %.3f (%s 1.0)\n", exponent,
                exponent >= 1.0 ? ">=" : "<");
  std::cout << buf;
  std::snprintf(buf, sizeof buf, "rhc flatness ratio: %.3f (%s 2.0)\n", flatness,
                flatness <= 2.0 ? "<=" : ">");
  std::cout << buf;
  std::cout << "wrote " << results.size() << " rows to " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector-symbolic Lisp over FHRR hypervectors with residue arithmetic"};
  CliOptions opts;
  app.add_option("--dim", opts.dimension, "Hypervector dimension (>= 64)")->capture_default_str();
  app.add_option("--moduli", opts.moduli, "Comma-separated co-prime moduli")->capture_default_str();
  app.add_option("--theta", opts.theta, "Similarity threshold in (0, 1)")->capture_default_str();
  app.add_option("--seed", opts.seed, "Seed for all symbol streams")->capture_default_str();
  app.add_option("--decode", opts.decode, "Integer decoding: exhaustive or resonator")
      ->capture_default_str();
  app.add_flag("--verbose", opts.verbose, "Trace resonator iterations to stderr");
  app.add_flag("--raw", opts.raw, "Print integers in [0, range) instead of the symmetric window");
  app.add_option("--session", opts.session, "Session file (codebook + symbols) to load and save");

  auto* run = app.add_subcommand("run", "Evaluate a .vl script");
  std::string script;
  run->add_option("file", script, "Script path")->required();
  run->fallthrough();

  auto* bench = app.add_subcommand("bench", "Time RHC vs list-encoded addition");
  std::string out_path = "bench.csv";
  std::string magnitudes = "5,10,20,50,100";
  std::size_t reps = 20;
  std::string gnuplot_prefix;
  bench->add_option("--out", out_path, "CSV output path")->capture_default_str();
  bench->add_option("--magnitudes", magnitudes, "Comma-separated operand magnitudes")
      ->capture_default_str();
  bench->add_option("--reps", reps, "Timed repetitions per point (>= 5)")->capture_default_str();
  bench->add_option("--gnuplot", gnuplot_prefix, "Also write PREFIX_rhc.dat and PREFIX_list.dat");
  bench->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << "ERROR:invalid-config: " << e.what() << std::endl;
    return kExitUsage;
  }

  Config config;
  try {
    config = make_config(opts);
  } catch (const Error& e) {
    report(e);
    return kExitUsage;
  }
  if (opts.verbose) {
    std::cerr << "kernels: " << vsalisp::kernels::isa_name(vsalisp::kernels::active().isa) << '\n';
  }

  try {
    if (*run) return run_file(opts, config, script);
    if (*bench) return bench_command(config, out_path, magnitudes, reps, gnuplot_prefix);
    return repl(opts, config);
  } catch (const Error& e) {
    report(e);
    return e.kind() == ErrorKind::kIo || e.kind() == ErrorKind::kInvalidConfig ? kExitUsage
                                                                               : kExitRuntime;
  }
}
