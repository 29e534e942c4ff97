#include <doctest.h>

#include "latkit/errors.hpp"
#include "latkit/json_io.hpp"

using namespace latkit;

namespace {

Verdict classify_text(const std::string& text) { return classify(spec_from_json(parse_document(text))); }

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("integers switch to strings beyond 2^53 - 1") {
  CHECK(int_to_json(Int("9007199254740991")).is_number());
  CHECK(int_to_json(Int("-9007199254740991")).is_number());
  CHECK(int_to_json(Int("9007199254740992")).is_string());
  CHECK(int_to_json(Int("-123456789012345678901234567890")) == "-123456789012345678901234567890");
  CHECK(int_from_json(Json("123456789012345678901234567890"), "") == Int("123456789012345678901234567890"));
  CHECK(int_from_json(Json(-7), "") == -7);
  CHECK_THROWS_AS(int_from_json(Json("12a"), "/x"), Error);
  CHECK_THROWS_AS(int_from_json(Json(1.5), "/x"), Error);
  IntMatrix m{{1, -2}, {0, 3}};
  CHECK(matrix_from_json(matrix_to_json(m), "") == m);
  IntMatrix e(0, 3);
  CHECK(matrix_from_json(matrix_to_json(e), "") == e);
}

TEST_CASE("group-spec documents") {
  auto s = spec_from_json(parse_document(R"({"factors":[{"family":"A","n":1},{"family":"A","n":1}],"subgroup":[[1,1]]})"));
  CHECK(s.factors.size() == 2);
  REQUIRE(s.S.size() == 1);
  CHECK(s.S[0] == IntVec{Int(1), Int(1)});
  // residues are reduced, D even takes an array per factor, flat tuples are accepted
  auto d = spec_from_json(parse_document(R"({"factors":[{"family":"D","n":4},{"family":"A","n":2}],"subgroup":[[[1,3],-1]]})"));
  CHECK(d.S[0] == IntVec{Int(1), Int(1), Int(2)});
  auto flat = spec_from_json(parse_document(R"({"factors":[{"family":"D","n":4},{"family":"G2"}],"subgroup":[[1,0]]})"));
  CHECK(flat.S[0] == IntVec{Int(1), Int(0)});
  auto g2 = spec_from_json(parse_document(R"({"factors":[{"family":"G2","n":2},{"family":"B","n":2}],"subgroup":[[0,1]]})"));
  CHECK(g2.S[0] == IntVec{Int(1)});
  // named shortcut
  auto so7 = spec_from_json(parse_document(R"({"group":"SO","param":7})"));
  CHECK(so7.factors[0] == DynkinType::make(Family::B, 3));
  CHECK(spec_from_json(spec_to_json(d)).S == d.S);
}

TEST_CASE("schema violations name the field") {
  CHECK(error_of([] { spec_from_json(parse_document(R"({"factors":[{"family":"E","n":6}],"subgroup":[]})")); })
            .find("UnsupportedType") != std::string::npos);
  CHECK(error_of([] { spec_from_json(parse_document(R"({"factors":[{"family":"A"}]})")); }).find("/factors/0") !=
        std::string::npos);
  CHECK(error_of([] {
          spec_from_json(parse_document(R"({"factors":[{"family":"D","n":4},{"family":"A","n":1}],"subgroup":[[1,1]]})"));
        }).find("/subgroup/0/0") != std::string::npos);
  CHECK(error_of([] { parse_document("{\n  \"factors\": [\n  }"); }).find("line 3") != std::string::npos);
}

TEST_CASE("verdict documents round-trip and stay verifiable") {
  const std::vector<std::string> inputs = {
      R"({"factors":[{"family":"A","n":1},{"family":"A","n":1}],"subgroup":[[1,1]]})",
      R"({"factors":[{"family":"A","n":2},{"family":"A","n":2}],"subgroup":[[1,1]]})",
      R"({"factors":[{"family":"B","n":2},{"family":"B","n":1}],"subgroup":[[1,1]]})",
      R"({"factors":[{"family":"A","n":3},{"family":"G2"}],"subgroup":[[1,0]]})",
      R"({"factors":[{"family":"D","n":2},{"family":"B","n":3},{"family":"A","n":2}],"subgroup":[[[1,0],0,1]]})",
      R"({"group":"SO","param":8})",
      R"({"group":"PGL","param":3})",
  };
  for (const auto& text : inputs) {
    INFO(text);
    Verdict v = classify_text(text);
    Json doc = verdict_to_json(v);
    const std::string once = doc.dump(2);
    Verdict back = verdict_from_json(parse_document(once));
    CHECK(verdict_to_json(back).dump(2) == once);
    CHECK(verify_verdict(back).ok);
    // deterministic output
    CHECK(verdict_to_json(classify_text(text)).dump(2) == once);
  }
  Json so4 = verdict_to_json(classify_text(inputs[0]));
  CHECK(so4["status"] == "quasi_permutation");
  CHECK(so4["blocks"].dump() == R"([{"kind":"so4_pair","indices":[0,1]}])");
  CHECK(verdict_to_json(classify_text(inputs[1]))["status"] == "not_quasi_permutation");
}

TEST_CASE("tampered documents fail verification") {
  Json doc = verdict_to_json(classify_text(R"({"factors":[{"family":"B","n":2}],"subgroup":[]})"));
  auto& pi = doc["certificate"]["blocks"][0]["resolution"]["pi"];
  pi[0][0] = pi[0][0].get<long long>() + 1;
  bool rejected = false;
  try {
    rejected = !verify_verdict(verdict_from_json(doc)).ok;
  } catch (const Error&) {
    rejected = true;
  }
  CHECK(rejected);
  Json neg = verdict_to_json(classify_text(R"({"factors":[{"family":"A","n":3}],"subgroup":[[1]]})"));
  neg["certificate"]["sha2"]["factors"] = Json::array({4});
  CHECK_FALSE(verify_verdict(verdict_from_json(neg)).ok);
}
