#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fuzztherest/errors.hpp"
#include "fuzztherest/identity_store.hpp"
#include "fuzztherest/mutation.hpp"
#include "support.hpp"

using namespace fuzztherest;
using A = MutationAction;

TEST(ApplicableActions, Matrix) {
  EXPECT_EQ(applicable_actions(Datatype::Integer),
            (std::vector<A>{A::BitFlip, A::Dictionary, A::Arithmetic, A::RandomGen}));
  EXPECT_EQ(applicable_actions(Datatype::Float), applicable_actions(Datatype::Integer));
  EXPECT_EQ(applicable_actions(Datatype::Boolean), (std::vector<A>{A::Dictionary, A::RandomGen}));
  EXPECT_EQ(applicable_actions(Datatype::String),
            (std::vector<A>{A::BitFlip, A::ByteShuffle, A::ByteInjectDelete, A::ByteSubstitute,
                            A::Truncate, A::Dictionary, A::RandomGen}));
  EXPECT_EQ(applicable_actions(Datatype::Byte), applicable_actions(Datatype::String));
  for (auto t : kLeafDatatypes) {
    const auto& acts = applicable_actions(t);
    EXPECT_NE(std::find(acts.begin(), acts.end(), A::RandomGen), acts.end());
  }
  EXPECT_THROW(applicable_actions(Datatype::Object), InapplicableAction);
  EXPECT_EQ(kAllActions.size(), 8u);
}

TEST(Mutate, BitFlipSingleBit) {
  const std::size_t bit0[] = {0};
  EXPECT_EQ(flip_bits(FieldValue::bytes({0x00}), bit0), FieldValue::bytes({0x01}));
  const std::size_t bit63[] = {63};
  EXPECT_EQ(flip_bits(FieldValue::integer(0), bit63),
            FieldValue::integer(std::numeric_limits<std::int64_t>::min()));
}

TEST(Mutate, TruncateToLength) {
  EXPECT_EQ(truncate_to(FieldValue::string("hello"), 2), FieldValue::string("he"));
}

TEST(Mutate, ByteShufflePreservesMultisetOfAllFourBytePermutations) {
  Bytes input{1, 2, 3, 4};
  std::sort(input.begin(), input.end());
  do {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      Rng rng(seed);
      auto out = mutate(FieldValue::bytes(input), A::ByteShuffle, rng, {}).as_bytes();
      std::sort(out.begin(), out.end());
      EXPECT_EQ(out, (Bytes{1, 2, 3, 4}));
    }
  } while (std::next_permutation(input.begin(), input.end()));
}

TEST(Mutate, InapplicableActionThrows) {
  Rng rng(1);
  EXPECT_THROW(mutate(FieldValue::boolean(true), A::BitFlip, rng, {}), InapplicableAction);
  EXPECT_THROW(mutate(FieldValue::integer(1), A::Truncate, rng, {}), InapplicableAction);
  EXPECT_THROW(mutate(FieldValue::string("x"), A::Arithmetic, rng, {}), InapplicableAction);
}

TEST(Mutate, ArithmeticUsesFixedConstants) {
  const std::set<std::int64_t> allowed{1, 2, 16, 255, 2147483647, -1, -2, -16, -255, -2147483647};
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto out = mutate(FieldValue::integer(1), A::Arithmetic, rng, {}).as_integer();
    // 1+c, 1-c, 1*c or -1
    EXPECT_TRUE(allowed.count(out - 1) || allowed.count(1 - out) || allowed.count(out) || out == -1) << out;
  }
}

TEST(Mutate, DictionaryDrawsFromEntries) {
  const auto dict = Dictionary::with_defaults();
  DictionaryView view{dict.entries(Datatype::Integer), {}};
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto out = mutate(FieldValue::integer(123), A::Dictionary, rng, view);
    EXPECT_NE(std::find(view.static_entries.begin(), view.static_entries.end(), out),
              view.static_entries.end());
  }
}

TEST(Mutate, DictionaryPrefersDynamicHalfTheTime) {
  const auto dict = Dictionary::with_defaults();
  DictionaryView view{dict.entries(Datatype::Integer), {FieldValue::integer(777)}};
  Rng rng(3);
  int dynamic = 0;
  for (int i = 0; i < 10000; ++i) {
    dynamic += mutate(FieldValue::integer(1), A::Dictionary, rng, view) == FieldValue::integer(777);
  }
  EXPECT_NEAR(dynamic, 5000, 250);
}

TEST(Dictionary, DefaultContents) {
  const auto dict = Dictionary::with_defaults();
  for (auto t : kLeafDatatypes) EXPECT_FALSE(dict.entries(t).empty());
  const auto ints = dict.entries(Datatype::Integer);
  for (std::int64_t v : {std::int64_t{0}, std::int64_t{-1}, std::int64_t{2147483647},
                         std::int64_t{-2147483648LL}, std::numeric_limits<std::int64_t>::max()}) {
    EXPECT_NE(std::find(ints.begin(), ints.end(), FieldValue::integer(v)), ints.end()) << v;
  }
  const auto floats = dict.entries(Datatype::Float);
  EXPECT_TRUE(std::any_of(floats.begin(), floats.end(),
                          [](const FieldValue& v) { return std::isnan(v.as_float()); }));
  const auto strings = dict.entries(Datatype::String);
  EXPECT_TRUE(std::any_of(strings.begin(), strings.end(),
                          [](const FieldValue& v) { return v.as_string().size() == 4096; }));
  EXPECT_TRUE(std::any_of(strings.begin(), strings.end(), [](const FieldValue& v) {
    return v.as_string().find('\x0B') != std::string::npos;
  }));
  EXPECT_EQ(dict.entries(Datatype::Byte).size(), 3u);
}

TEST(Dictionary, UserEntries) {
  auto dict = Dictionary::with_defaults();
  const auto before_int = dict.entries(Datatype::Integer).size();
  const auto before_str = dict.entries(Datatype::String).size();
  dict.add_user_entries("admin\n\n31337\n");
  EXPECT_EQ(dict.entries(Datatype::String).size(), before_str + 2);
  EXPECT_EQ(dict.entries(Datatype::Integer).size(), before_int + 1);
}

TEST(MutateFunctionInputs, NoSlotsIsIdentity) {
  const auto fns = fuzztherest::testing::petstore();
  const auto& logout = fuzztherest::testing::find_function(fns, "logoutUser");
  Rng rng(1);
  const auto out = mutate_function_inputs(logout, {}, rng, Dictionary::with_defaults(), nullptr);
  EXPECT_EQ(out.operation_id, logout.operation_id);
  EXPECT_TRUE(leaf_slots(out).empty());
}

TEST(MutateFunctionInputs, OnlyChosenSlotChanges) {
  const auto fns = fuzztherest::testing::petstore();
  Rng rng(4);
  const auto pet = instantiate_function(fuzztherest::testing::find_function(fns, "addPet"), rng);
  const auto out =
      mutate_function_inputs(pet, {{"body.id", A::Arithmetic}}, rng, Dictionary::with_defaults(), nullptr);
  for (const auto& slot : leaf_slots(pet)) {
    const auto& before = *find_leaf(pet, slot.path)->sample;
    const auto& after = *find_leaf(out, slot.path)->sample;
    if (slot.path == "body.id") {
      EXPECT_NE(before, after);
    } else {
      EXPECT_EQ(before, after) << slot.path;
    }
  }
}

TEST(MutateFunctionInputs, SeededReplayIsIdentical) {
  const auto fns = fuzztherest::testing::petstore();
  Rng init(8);
  const auto pet = instantiate_function(fuzztherest::testing::find_function(fns, "addPet"), init);
  std::map<std::string, A> all;
  for (const auto& s : leaf_slots(pet)) all[s.path] = A::RandomGen;
  const auto dict = Dictionary::with_defaults();
  Rng a(21), b(21);
  const auto x = mutate_function_inputs(pet, all, a, dict, nullptr);
  const auto y = mutate_function_inputs(pet, all, b, dict, nullptr);
  for (const auto& s : leaf_slots(pet)) EXPECT_EQ(*find_leaf(x, s.path)->sample, *find_leaf(y, s.path)->sample);
}

TEST(MutateFunctionInputs, HarvestedIdsFeedDictionary) {
  const auto fns = fuzztherest::testing::petstore();
  const auto& get = fuzztherest::testing::find_function(fns, "getPetById");
  IdentifierStore store;
  store.add("pet", FieldValue::integer(4242));
  Rng rng(6);
  const auto base = instantiate_function(get, rng);
  int hits = 0;
  for (int i = 0; i < 400; ++i) {
    const auto out =
        mutate_function_inputs(base, {{"path.petId", A::Dictionary}}, rng, Dictionary::with_defaults(), &store);
    hits += *find_leaf(out, "path.petId")->sample == FieldValue::integer(4242);
  }
  EXPECT_GT(hits, 150);
  EXPECT_LT(hits, 250);
}

TEST(MutateFunctionInputs, EnumValuesFeedDictionary) {
  const auto fns = fuzztherest::testing::petstore();
  Rng rng(9);
  const auto pet = instantiate_function(fuzztherest::testing::find_function(fns, "addPet"), rng);
  std::set<std::string> statuses;
  for (int i = 0; i < 400; ++i) {
    const auto out = mutate_function_inputs(pet, {{"body.status", A::Dictionary}}, rng,
                                            Dictionary::with_defaults(), nullptr);
    statuses.insert(find_leaf(out, "body.status")->sample->as_string());
  }
  for (const char* s : {"available", "pending", "sold"}) EXPECT_TRUE(statuses.count(s)) << s;
}

TEST(MutateFunctionInputs, RejectsInapplicable) {
  const auto fns = fuzztherest::testing::petstore();
  Rng rng(1);
  const auto get = instantiate_function(fuzztherest::testing::find_function(fns, "getPetById"), rng);
  EXPECT_THROW(mutate_function_inputs(get, {{"path.petId", A::Truncate}}, rng, Dictionary::with_defaults(), nullptr),
               InapplicableAction);
}
