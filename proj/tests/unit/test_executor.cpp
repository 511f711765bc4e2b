#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "fuzztherest/errors.hpp"
#include "fuzztherest/executor.hpp"
#include "fuzztherest/mock_sut.hpp"
#include "support.hpp"

using namespace fuzztherest;
using fuzztherest::testing::find_function;

namespace {

const std::vector<ApiFunction>& functions() {
  static const auto fns = fuzztherest::testing::petstore();
  return fns;
}

ApiFunction with_samples(const std::string& id, std::uint64_t seed = 3) {
  Rng rng(seed);
  return instantiate_function(find_function(functions(), id), rng);
}

void set(ApiFunction& f, const std::string& slot, FieldValue v) {
  auto* leaf = find_leaf(f, slot);
  ASSERT_NE(leaf, nullptr) << slot;
  leaf->sample = std::move(v);
}

}  // namespace

TEST(PercentEncode, UnreservedPassThrough) {
  EXPECT_EQ(percent_encode("aZ09-._~"), "aZ09-._~");
  EXPECT_EQ(percent_encode("a b/c;d"), "a%20b%2Fc%3Bd");
  EXPECT_EQ(percent_encode(std::string("\x00\xff", 2)), "%00%FF");
}

TEST(BuildRequest, PathParameter) {
  auto f = with_samples("getPetById");
  set(f, "path.petId", FieldValue::integer(5));
  const auto r = build_request(f, "http://sut/api/v3/");
  EXPECT_EQ(r.method, HttpMethod::Get);
  EXPECT_EQ(r.url, "http://sut/api/v3/pet/5");
  EXPECT_TRUE(r.body.empty());
}

TEST(BuildRequest, PathParameterIsEncoded) {
  auto f = with_samples("getPetById");
  set(f, "path.petId", FieldValue::integer(-1));
  EXPECT_EQ(build_request(f, "http://sut").url, "http://sut/pet/-1");
  auto g = with_samples("getUserByName");
  set(g, "path.username", FieldValue::string("a;b/../c"));
  EXPECT_EQ(build_request(g, "http://sut").url, "http://sut/user/a%3Bb%2F..%2Fc");
}

TEST(BuildRequest, QueryArrayRepeatsKey) {
  auto f = with_samples("findPetsByTags");
  const auto slots = leaf_slots(f);
  ASSERT_EQ(slots.size(), 1u);
  set(f, slots[0].path, FieldValue::string("x y"));
  EXPECT_EQ(build_request(f, "http://sut").url, "http://sut/pet/findByTags?tags=x%20y");
}

TEST(BuildRequest, HeadersAndBody) {
  auto f = with_samples("deletePet");
  set(f, "header.api_key", FieldValue::string("a\nb"));
  set(f, "path.petId", FieldValue::integer(9));
  const auto r = build_request(f, "http://sut", {{"Authorization", "Bearer t"}});
  ASSERT_EQ(r.headers.size(), 2u);
  EXPECT_EQ(r.headers[0], (std::pair<std::string, std::string>{"Authorization", "Bearer t"}));
  EXPECT_EQ(r.headers[1], (std::pair<std::string, std::string>{"api_key", "a%0Ab"}));
  EXPECT_EQ(r.method, HttpMethod::Delete);

  auto p = with_samples("addPet");
  const auto body = build_request(p, "http://sut");
  EXPECT_EQ(body.headers.back(), (std::pair<std::string, std::string>{"Content-Type", "application/json"}));
  EXPECT_FALSE(nlohmann::json::parse(body.body).is_discarded());
}

TEST(SerializeJson, SurrogatesAndSpecialNumbers) {
  SchemaNode obj;
  obj.type = Datatype::Object;
  auto s = SchemaNode::leaf(Datatype::String, "s");
  s.sample = FieldValue::string("\xED\xB0\x80q\"\x01");
  auto d = SchemaNode::leaf(Datatype::Float, "d");
  d.sample = FieldValue::floating(std::numeric_limits<double>::quiet_NaN());
  auto b = SchemaNode::leaf(Datatype::Byte, "b");
  b.sample = FieldValue::bytes({'h', 'i'});
  obj.children = {s, d, b};
  EXPECT_EQ(serialize_json(obj), R"({"s":"\udc00q\"\u0001","d":NaN,"b":"aGk="})");
}

TEST(BuildRequest, MissingSampleThrows) {
  auto f = find_function(functions(), "getPetById");
  EXPECT_THROW(build_request(f, "http://sut"), MissingSample);
}

TEST(HttpExecutor, TalksToMock) {
  MockSut sut;
  sut.start();
  HttpExecutor exec(2000);
  const auto pong = exec.execute({HttpMethod::Get, sut.base_url() + "/ping", {}, {}});
  ASSERT_TRUE(std::holds_alternative<int>(pong.outcome));
  EXPECT_EQ(std::get<int>(pong.outcome), 200);
  EXPECT_EQ(nlohmann::json::parse(pong.response_body)["status"], "ok");

  const auto bad = exec.execute({HttpMethod::Get, sut.base_url() + "/store/order/abc", {}, {}});
  EXPECT_EQ(std::get<int>(bad.outcome), 500);
  EXPECT_NE(bad.response_body.find("NumberFormatException"), std::string::npos);

  const auto created = exec.execute({HttpMethod::Post, sut.base_url() + "/pet",
                                     {{"Content-Type", "application/json"}},
                                     R"({"name":"rex","status":"available"})"});
  EXPECT_EQ(std::get<int>(created.outcome), 200);
  EXPECT_EQ(nlohmann::json::parse(created.response_body)["id"], 1);
  sut.stop();
}

TEST(HttpExecutor, ClosedPortIsConnectionRefused) {
  int port = 0;
  {
    MockSut sut;
    sut.start();
    port = sut.port();
    sut.stop();
  }
  HttpExecutor exec(1000);
  const auto e = exec.execute({HttpMethod::Get, "http://127.0.0.1:" + std::to_string(port) + "/ping", {}, {}});
  ASSERT_TRUE(std::holds_alternative<TransportFailure>(e.outcome));
  EXPECT_EQ(std::get<TransportFailure>(e.outcome), TransportFailure::ConnectionRefused);
}

TEST(HttpExecutor, MalformedUrlIsProtocolError) {
  HttpExecutor exec(500);
  const auto e = exec.execute({HttpMethod::Get, "not a url", {}, {}});
  EXPECT_EQ(std::get<TransportFailure>(e.outcome), TransportFailure::ProtocolError);
}
