#include <doctest.h>

#include <cmath>

#include "liecomm/rng.hpp"
#include "liecomm/serialize.hpp"

using namespace liecomm;

namespace {

Element random_element(AlgebraPtr g, uint64_t seed) {
  Rng rng(seed);
  return make_element(g, rng.normal_vec(g->dim));
}

}  // namespace

TEST_CASE("element JSON round trip and dimension checking") {
  AlgebraPtr g = build_algebra(AlgebraSpec::su(3));
  const Element x = random_element(g, 1);
  const Element back = element_from_json(g, element_to_json(x));
  for (int i = 0; i < g->dim; ++i) CHECK(back.coords[i] == x.coords[i]);

  CHECK_THROWS_AS(element_from_json(g, Json::parse("[1,2,3]")), DimensionMismatch);
  CHECK_THROWS_AS(element_from_json(g, Json::parse("{\"a\":1}")), ParseError);
  CHECK_THROWS_AS(element_from_json(g, Json::parse("[1,\"x\",3]")), ParseError);
}

TEST_CASE("frame JSON round trip preserves the decomposition") {
  AlgebraPtr g = build_algebra(AlgebraSpec::so(5));
  const CartanFrame frame = root_decomposition(g, find_csa(g, 3), 4);
  const CartanFrame back = frame_from_json(g, frame_to_json(frame));
  CHECK(back.rank() == frame.rank());
  REQUIRE(back.roots.size() == frame.roots.size());
  for (size_t p = 0; p < frame.roots.size(); ++p) {
    CHECK(norm(sub(back.roots[p].e, frame.roots[p].e)) == 0.0);
    CHECK(norm(sub(back.roots[p].f, frame.roots[p].f)) == 0.0);
    for (int j = 0; j < frame.rank(); ++j)
      CHECK(back.roots[p].alpha[j] == frame.roots[p].alpha[j]);
  }
  CHECK(norm(sub(back.h_ref, frame.h_ref)) == 0.0);
}

TEST_CASE("certificate JSON carries the contract fields and re-verifies") {
  AlgebraPtr g = build_algebra(AlgebraSpec::su(2));
  SolveConfig cfg;
  cfg.rng_seed = 5;
  const Element a = random_element(g, 6);
  const Element b = random_element(g, 7);
  const CommutatorCertificate cert = solve_commutator(g, a, b, cfg);

  const Json j = certificate_to_json(g->spec, cert, cfg.rng_seed);
  for (const char* key : {"algebra_spec", "X", "Y_A", "Y_B", "residual_A", "residual_B",
                          "regularity_margin", "generators", "frame_snapshot", "seed"})
    CHECK(j.contains(key));
  CHECK(j["algebra_spec"] == "su:2");

  const CommutatorCertificate back = certificate_from_json(g, j);
  CHECK(verify_certificate(g, a, b, back, 1e-8).passed());
  CHECK(back.q_generators.size() == cert.q_generators.size());
}

TEST_CASE("trace serialization formats") {
  JacobiStep s1;
  s1.root_index = 2;
  s1.b0_before = 1.5;
  s1.b0_after = 0.5;
  s1.decrease = 2.0;
  JacobiStep s2 = s1;
  s2.root_index = 0;
  const std::vector<JacobiStep> steps{s1, s2};

  SUBCASE("jsonl: one object per line with the exact key order") {
    const std::string out = trace_to_jsonl(steps);
    CHECK(out ==
          "{\"iter\":0,\"root\":2,\"b0_before\":1.5,\"b0_after\":0.5,\"decrease\":2.0}\n"
          "{\"iter\":1,\"root\":0,\"b0_before\":1.5,\"b0_after\":0.5,\"decrease\":2.0}\n");
  }
  SUBCASE("csv: header plus one row per step") {
    const std::string out = trace_to_csv(steps);
    CHECK(out.rfind("iter,root,b0_before,b0_after,decrease\n", 0) == 0);
    CHECK(out.find("0,2,1.5,0.5,2.0") != std::string::npos);
  }
  SUBCASE("json: a single array") {
    const Json arr = Json::parse(trace_to_json_array(steps));
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);
    CHECK(arr[1]["root"] == 0);
  }
}

TEST_CASE("load_json_file reports unreadable and malformed input") {
  CHECK_THROWS_AS(load_json_file("/nonexistent/path.json"), ParseError);
  write_text_file("/tmp/liecomm_bad.json", "{not json");
  CHECK_THROWS_AS(load_json_file("/tmp/liecomm_bad.json"), ParseError);
}
