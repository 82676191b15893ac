#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "vsalisp/error.hpp"
#include "vsalisp/interpreter.hpp"

namespace {

using namespace vsalisp;

std::string eval1(Interpreter& in, std::string_view source) {
  const auto out = in.run(source);
  return out.empty() ? std::string() : out.back();
}

std::string eval1(std::string_view source) {
  Interpreter in{Config{}};
  return eval1(in, source);
}

ErrorKind error_of(std::string_view source) {
  Interpreter in{Config{}};
  try {
    (void)in.run(source);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error from " << source;
  return ErrorKind::kIo;
}

std::int64_t window(std::int64_t raw) { return raw >= 53 ? raw - 105 : raw; }

TEST(Encode, IntegersCarryTheTag) {
  Interpreter in{Config{}};
  const EncodedValue zero = in.make_int(0);
  EXPECT_GT(similarity(zero.vector, in.int_tag()), in.config().theta);
  EXPECT_EQ(in.decode_int(in.make_int(42).vector), 42);
  const EncodedValue a = in.encode(make_atom("nil"));
  const EncodedValue b = in.encode(make_atom("nil"));
  EXPECT_EQ(a.vector, b.vector);
  EXPECT_EQ(in.encode(make_int(-3)).vector, in.make_int(-3).vector);
}

TEST(Encode, SymbolsAreSeedAddressed) {
  Interpreter a{Config{}};
  Interpreter b{Config{}};
  (void)b.intern("zzz");
  EXPECT_EQ(a.intern("foo"), b.intern("foo"));
}

TEST(Eval, CoreExamples) {
  EXPECT_EQ(eval1("(+ 2 3)"), "5");
  EXPECT_EQ(eval1("(car (cons 1 nil))"), "1");
  EXPECT_EQ(eval1("((lambda (x) (* x x)) 6)"), "36");
  EXPECT_EQ(eval1("(cons 1 (cons 2 nil))"), "(1 2)");
  EXPECT_EQ(eval1("(- 2 3)"), "-1");
  EXPECT_EQ(eval1("(/ 44 4)"), "11");
  EXPECT_EQ(eval1("-7"), "-7");
  EXPECT_EQ(eval1("(- 5)"), "-5");
  EXPECT_EQ(eval1("(+ 1 2 3 4)"), "10");
}

TEST(Eval, RawIntegerDisplay) {
  Config c;
  c.raw_integers = true;
  Interpreter in{c};
  EXPECT_EQ(eval1(in, "(- 2 3)"), "104");
  EXPECT_EQ(eval1(in, "(define sq (lambda (x) (* x x))) (sq 9)"), "81");
}

TEST(Eval, LexicalScopeAndRecursion) {
  EXPECT_EQ(eval1("((lambda (x) ((lambda (y) (+ x y)) 2)) 3)"), "5");
  EXPECT_EQ(eval1("(define length (lambda (l) (cond ((eq? l nil) 0) (t (+ 1 (length (cdr l)))))))"
                  "(length '(a b c d e))"),
            "5");
  // Inner binding of x shadows the captured outer one.
  EXPECT_EQ(eval1("((lambda (x) ((lambda (x) (* x 10)) 4)) 3)"), "40");
  // A closure sees the environment where it was made, not where it is called.
  EXPECT_EQ(eval1("(define k 1) (define addk (lambda (x) (+ x k))) ((lambda (k) (addk 5)) 100)"),
            "6");
}

TEST(Eval, SpecialFormsAndPredicates) {
  Interpreter in{Config{}};
  const auto out = in.run(
      "(define sq (lambda (x) (* x x)))\n"
      "(sq 7)\n"
      "(quote (a b))\n"
      "'sym\n"
      "(atom? 'a)\n"
      "(atom? '(a))\n"
      "(eq? 'a 'a)\n"
      "(eq? 'a 'b)\n"
      "(eq? 3 3)\n"
      "(eq? 3 4)\n"
      "(cond ((eq? 1 2) 'no) ((eq? 1 1) 'yes))\n"
      "(cond ((eq? 1 2) 'no))\n"
      "(cdr '(1))\n"
      "(int? 7)\n"
      "(int? t)\n"
      "(int? '(1 2))\n"
      "car\n");
  const std::vector<std::string> want = {"#<lambda>", "49", "(a b)", "sym", "t", "f", "t", "f",
                                         "t",         "f",  "yes",   "nil", "nil", "t", "f", "f",
                                         "car"};
  EXPECT_EQ(out, want);
}

TEST(Eval, ReferentialTransparency) {
  const std::string program =
      "(define g (lambda (a b) (cons (+ a b) (cons (* a b) nil)))) (g 7 8) (g 7 8) (car (g 2 9))";
  Interpreter a{Config{}};
  Interpreter b{Config{}};
  const auto first = a.run(program);
  EXPECT_EQ(first, b.run(program));
  EXPECT_EQ(first[1], first[2]);
  EXPECT_EQ(first[1], "(15 -49)");
}

TEST(Eval, Errors) {
  EXPECT_EQ(error_of("undefined-thing"), ErrorKind::kUnboundSymbol);
  EXPECT_EQ(error_of("(1 2)"), ErrorKind::kNotApplicable);
  EXPECT_EQ(error_of("((lambda (x) x) 1 2)"), ErrorKind::kArity);
  EXPECT_EQ(error_of("(car 1 2)"), ErrorKind::kArity);
  EXPECT_EQ(error_of("(+ 'a 1)"), ErrorKind::kType);
  EXPECT_EQ(error_of("(car 5)"), ErrorKind::kType);
  EXPECT_EQ(error_of("(/ 1 3)"), ErrorKind::kNoInverse);
  EXPECT_EQ(error_of("(quote)"), ErrorKind::kArity);
  EXPECT_EQ(error_of("(define 3 4)"), ErrorKind::kType);
}

TEST(Print, FallbackForUnrecognizedVector) {
  Interpreter in{Config{}};
  Rng rng(77);
  const std::string s = in.print({random_symbol(rng, 1000), ValueKind::kUnknown});
  EXPECT_EQ(s.rfind("#<vector sim=", 0), 0u) << s;
  EXPECT_EQ(in.print(in.make_int(5)), "5");
}

TEST(IntPredicate, DiscriminatesIntegersFromSymbols) {
  Interpreter in{Config{}};
  for (std::int64_t x = 0; x < 105; ++x) {
    EXPECT_EQ(in.int_p(in.make_int(x)).vector, in.t()) << x;
  }
  for (const char* name : {"t", "f", "nil"}) {
    EXPECT_EQ(in.int_p({*in.symbol(name), ValueKind::kSymbol}).vector, in.f()) << name;
  }
  EXPECT_EQ(in.int_p({in.int_tag(), ValueKind::kSymbol}).vector, in.t());
  for (int i = 0; i < 100; ++i) {
    const HyperVector& s = in.intern("sym" + std::to_string(i));
    EXPECT_EQ(in.int_p({s, ValueKind::kSymbol}).vector, in.f()) << i;
  }
}

TEST(IntPredicate, HoldsAcrossSeeds) {
  int ok = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Config c;
    c.seed = seed;
    Interpreter in{c};
    ++total;
    if (in.int_p(in.make_int(7)).vector == in.t()) ++ok;
    ++total;
    if (in.int_p({in.t(), ValueKind::kBoolean}).vector == in.f()) ++ok;
  }
  EXPECT_EQ(ok, total);
}

TEST(Arithmetic, SoundnessThroughTheEvaluator) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<std::int64_t> pick(0, 104);
  int checked = 0;
  for (int batch = 0; batch < 10; ++batch) {
    Interpreter in{Config{}};
    for (int i = 0; i < 50; ++i) {
      const std::int64_t a = pick(gen), b = pick(gen);
      const std::string args = " " + std::to_string(a) + " " + std::to_string(b) + ")";
      EXPECT_EQ(eval1(in, "(+" + args), std::to_string(window((a + b) % 105)));
      EXPECT_EQ(eval1(in, "(-" + args), std::to_string(window(((a - b) % 105 + 105) % 105)));
      EXPECT_EQ(eval1(in, "(*" + args), std::to_string(window(a * b % 105)));
      if (std::gcd(b, std::int64_t{105}) == 1) {
        std::int64_t q = 0;
        while (q * b % 105 != a) ++q;
        EXPECT_EQ(eval1(in, "(/" + args), std::to_string(window(q)));
      }
      ++checked;
    }
  }
  EXPECT_EQ(checked, 500);
}

TEST(Lists, ConstructorSelectorLaws) {
  std::mt19937_64 gen(6);
  std::uniform_int_distribution<std::int64_t> pick(0, 104);
  for (int batch = 0; batch < 4; ++batch) {
    Interpreter in{Config{}};
    for (int i = 0; i < 50; ++i) {
      const EncodedValue a =
          i % 2 ? in.make_int(pick(gen))
                : EncodedValue{in.intern("s" + std::to_string(pick(gen))), ValueKind::kSymbol};
      const EncodedValue b = in.make_int(pick(gen));
      const EncodedValue c = in.cons(a, b);
      EXPECT_EQ(in.print(in.car(c)), in.print(a));
      EXPECT_EQ(in.print(in.cdr(c)), in.print(b));
    }
  }
}

TEST(Config, Validation) {
  Config c;
  c.theta = 1.5;
  EXPECT_THROW(c.validate(), Error);
  c = Config{};
  c.moduli = {4, 6};
  EXPECT_THROW(Interpreter{c}, Error);
}

}  // namespace
