#include <gtest/gtest.h>

#include "vsalisp/error.hpp"
#include "vsalisp/memory.hpp"

namespace {

using namespace vsalisp;

constexpr std::size_t kD = 1000;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::kIo;
}

TEST(CleanupMemory, AppendRecallAndOverwrite) {
  Rng rng(1);
  CleanupMemory mem(kD);
  const HyperVector a = random_symbol(rng, kD);
  mem.append("a", a);
  const RecallResult r = mem.recall(a);
  EXPECT_EQ(r.name, "a");
  EXPECT_NEAR(r.similarity, 1.0, 1e-9);

  const HyperVector x1 = random_symbol(rng, kD), x2 = random_symbol(rng, kD);
  mem.append("x", x1);
  mem.append("x", x2);
  EXPECT_EQ(mem.size(), 2u);
  EXPECT_EQ(*mem.find("x"), x2);
  EXPECT_EQ(mem.recall(x2).name, "x");
  EXPECT_EQ(mem.find("missing"), nullptr);
}

TEST(CleanupMemory, ExactRecallOfThousandSymbols) {
  Rng rng(2);
  CleanupMemory mem(kD);
  std::vector<HyperVector> stored;
  for (int i = 0; i < 1000; ++i) {
    stored.push_back(random_symbol(rng, kD));
    mem.append("s" + std::to_string(i), stored.back());
  }
  for (int i = 0; i < 1000; ++i) {
    const RecallResult r = mem.recall(stored[static_cast<std::size_t>(i)]);
    ASSERT_EQ(r.name, "s" + std::to_string(i));
    EXPECT_NEAR(r.similarity, 1.0, 1e-9);
  }
}

TEST(CleanupMemory, NoisyRecallAndNoMatch) {
  Rng rng(3);
  CleanupMemory mem(kD);
  std::vector<HyperVector> stored;
  for (int i = 0; i < 50; ++i) {
    stored.push_back(random_symbol(rng, kD));
    mem.append("s" + std::to_string(i), stored.back());
  }
  int recalled = 0, rejected = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = rng.uniform_int(0, 49);
    const HyperVector probe = normalize(superpose(stored[k], scale(random_symbol(rng, kD), 0.5)));
    if (mem.recall(probe).name == "s" + std::to_string(k)) ++recalled;
    if (kind_of([&] { (void)mem.recall(random_symbol(rng, kD)); }) == ErrorKind::kNoMatch) {
      ++rejected;
    }
  }
  EXPECT_GE(recalled, 198);
  EXPECT_GE(rejected, 198);
}

TEST(CleanupMemory, EmptyAndMismatchErrors) {
  CleanupMemory mem(kD);
  EXPECT_EQ(kind_of([&] { (void)mem.recall(HyperVector(kD)); }), ErrorKind::kEmptyMemory);
  EXPECT_FALSE(mem.best_match(HyperVector(kD)).has_value());
  EXPECT_EQ(kind_of([&] { mem.append("x", HyperVector(kD + 1)); }),
            ErrorKind::kDimensionMismatch);
}

TEST(CleanupMemory, TiesGoToEarliestEntry) {
  Rng rng(4);
  CleanupMemory mem(kD);
  const HyperVector v = random_symbol(rng, kD);
  mem.append("first", v);
  mem.append("second", v);
  EXPECT_EQ(mem.recall(v).name, "first");
  EXPECT_EQ(mem.recall(v).index, 0u);
}

TEST(Chunks, RoleFillerRoundtrip) {
  Rng rng(5);
  int ok = 0, total = 0;
  for (int trial = 0; trial < 40; ++trial) {
    CleanupMemory fillers(kD);
    CleanupMemory store(kD, 100 + trial);
    const std::size_t pairs = 1 + trial % 5;
    std::vector<RoleFiller> rf;
    for (std::size_t k = 0; k < pairs; ++k) {
      rf.push_back({random_symbol(rng, kD), random_symbol(rng, kD)});
      fillers.append("f" + std::to_string(k), rf.back().filler);
    }
    for (int extra = 0; extra < 10; ++extra) {
      fillers.append("d" + std::to_string(extra), random_symbol(rng, kD));
    }
    const HyperVector pointer = store.store_chunk(random_symbol(rng, kD), rf);
    const HyperVector& composite = store.deref(pointer);
    for (std::size_t k = 0; k < pairs; ++k) {
      ++total;
      if (fillers.recall(unbind(composite, rf[k].role)).name == "f" + std::to_string(k)) ++ok;
    }
  }
  EXPECT_GE(ok, total * 99 / 100);
}

TEST(Chunks, CompositeIsTagPlusBindings) {
  Rng rng(6);
  CleanupMemory store(kD);
  const HyperVector tag = random_symbol(rng, kD);
  const HyperVector empty = store.store_chunk(tag, {});
  EXPECT_EQ(store.deref(empty), tag);
  const HyperVector r = random_symbol(rng, kD), f = random_symbol(rng, kD);
  const HyperVector p = store.store_chunk(tag, {{r, f}});
  const HyperVector expected = superpose(tag, bind(r, f));
  const HyperVector& got = store.deref(p);
  for (std::size_t i = 0; i < kD; ++i) EXPECT_LT(std::abs(got[i] - expected[i]), 1e-12);
}

TEST(Chunks, FreshPointersAndDangling) {
  Rng rng(7);
  CleanupMemory store(kD, 9);
  const HyperVector tag = random_symbol(rng, kD);
  const HyperVector role = random_symbol(rng, kD), filler = random_symbol(rng, kD);
  const HyperVector p1 = store.store_chunk(tag, {{role, filler}});
  const HyperVector p2 = store.store_chunk(tag, {{role, filler}});
  EXPECT_LT(std::abs(similarity(p1, p2)), 0.15);
  EXPECT_EQ(store.locate_chunk(p2)->index, 1u);
  int dangling = 0;
  for (int trial = 0; trial < 100; ++trial) {
    if (kind_of([&] { (void)store.deref(random_symbol(rng, kD)); }) ==
        ErrorKind::kDanglingPointer) {
      ++dangling;
    }
  }
  EXPECT_GE(dangling, 99);
}

TEST(Chunks, PointerStreamIsSeedDeterministic) {
  Rng rng(8);
  const HyperVector tag = random_symbol(rng, kD);
  CleanupMemory a(kD, 77), b(kD, 77);
  EXPECT_EQ(a.store_chunk(tag, {}), b.store_chunk(tag, {}));
}

TEST(Environment, ShadowingAndPop) {
  Rng rng(9);
  const HyperVector outer = random_symbol(rng, kD), inner = random_symbol(rng, kD);
  Environment env;
  EXPECT_EQ(kind_of([&] { (void)env.lookup("x"); }), ErrorKind::kUnboundSymbol);
  env.push_frame(std::make_shared<CleanupMemory>(kD));
  env.define("x", outer);
  env.push_frame(std::make_shared<CleanupMemory>(kD));
  EXPECT_EQ(env.lookup("x"), outer);
  env.define("x", inner);
  EXPECT_EQ(env.lookup("x"), inner);
  env.pop_frame();
  EXPECT_EQ(env.lookup("x"), outer);
  EXPECT_EQ(env.try_lookup("y"), nullptr);
}

TEST(Environment, ExtendedSharesCapturedFrames) {
  Rng rng(10);
  Environment env;
  env.push_frame(std::make_shared<CleanupMemory>(kD));
  Environment child = env.extended(std::make_shared<CleanupMemory>(kD));
  EXPECT_EQ(child.depth(), 2u);
  const HyperVector later = random_symbol(rng, kD);
  env.define("late", later);
  EXPECT_EQ(child.lookup("late"), later);
}

}  // namespace
