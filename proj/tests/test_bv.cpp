#include <string>
#include <vector>

#include <doctest.h>

#include "rbv/bv.hpp"
#include "rbv/errors.hpp"
#include "rbv/statevector.hpp"
#include "support/reference.hpp"

using namespace rbv;

namespace {

// Reference two-level instance used throughout: hidden string 11, inner map
// 00->00, 01->01, 10->10, 11->00, with unbalanced outer table g = (0,1,1,1).
RecursiveInstance reference_instance() {
  RecursiveInstance inst;
  inst.n = 2;
  inst.s = BitString::parse("11");
  inst.s_map = {BitString::parse("00"), BitString::parse("01"), BitString::parse("10"),
                BitString::parse("00")};
  inst.g_table = {0, 1, 1, 1};
  return inst;
}

// Inner map x1 -> x1 AND s with the linear outer table, the layout every
// reduced-complexity construction of the first family produces.
RecursiveInstance masked_instance(int n, const BitString& s) {
  RecursiveInstance inst;
  inst.n = n;
  inst.s = s;
  const std::size_t count = std::size_t{1} << n;
  for (std::size_t x1 = 0; x1 < count; ++x1) {
    inst.s_map.push_back(BitString::from_index(x1, n).bit_and(s));
    inst.g_table.push_back(s.dot(BitString::from_index(x1, n)));
  }
  return inst;
}

}  // namespace

TEST_CASE("instance validation separates structure from semantics") {
  const RecursiveInstance good = reference_instance();
  const InstanceDiagnostics d = validate_instance(good);
  CHECK(d.ok);
  CHECK(d.inconsistent_x1.empty());
  CHECK(d.g_attains_zero);
  CHECK(d.g_attains_one);
  CHECK_FALSE(d.g_balanced);

  RecursiveInstance corrupted = good;
  corrupted.g_table[1] = 0;  // breaks g at 01, hit exactly by x1 = 01
  const InstanceDiagnostics bad = validate_instance(corrupted);
  CHECK_FALSE(bad.ok);
  CHECK(bad.inconsistent_x1 == std::vector<std::uint64_t>{1});

  // Flipping g on a value outside the inner map's image changes nothing the
  // consistency check can see.
  RecursiveInstance off_image = good;
  off_image.g_table[3] = 0;
  CHECK(validate_instance(off_image).ok);

  RecursiveInstance zeros = good;
  zeros.g_table = {0, 0, 0, 0};
  const InstanceDiagnostics z = validate_instance(zeros);
  CHECK_FALSE(z.ok);
  CHECK_FALSE(z.g_attains_one);

  RecursiveInstance wrong_size = good;
  wrong_size.s_map.pop_back();
  CHECK_THROWS_AS(validate_instance(wrong_size), std::invalid_argument);

  const RecursiveInstance linear = masked_instance(2, BitString::parse("11"));
  const InstanceDiagnostics ld = validate_instance(linear);
  CHECK(ld.ok);
  CHECK(ld.g_balanced);
}

TEST_CASE("single-level oracle is one CNOT per set bit") {
  const Circuit c = oracle_nonrecursive(BitString::parse("10"));
  REQUIRE(c.size() == 1);
  CHECK(c.gates()[0] == Gate::cnot(0, 2));

  CHECK(oracle_nonrecursive(BitString::parse("000")).size() == 0);
  CHECK(oracle_nonrecursive(BitString::parse("1011")).size() == 3);
}

TEST_CASE("single-level solver recovers the hidden string") {
  const SolveResult a = solve(build_nonrecursive_circuit({2, BitString::parse("11")}));
  CHECK(a.s.str() == "11");
  CHECK(a.probability == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(solve(build_nonrecursive_circuit({1, BitString::parse("0")})).s.str() == "0");
  CHECK(solve(build_nonrecursive_circuit({3, BitString::parse("101")})).s.str() == "101");
  CHECK(solve(build_nonrecursive_circuit({6, BitString::parse("111111")})).s.str() == "111111");
}

TEST_CASE("two-register oracle kicks the documented phase on every basis pair") {
  const RecursiveInstance inst = reference_instance();
  const Circuit oracle = oracle_general_k2(inst);
  for (std::size_t x1 = 0; x1 < 4; ++x1)
    for (std::size_t x2 = 0; x2 < 4; ++x2) {
      Statevector st(6);
      for (int b = 0; b < 2; ++b) {
        if (x1 & (std::size_t{2} >> b)) st.apply(Gate::x(b));
        if (x2 & (std::size_t{2} >> b)) st.apply(Gate::x(2 + b));
      }
      st.apply(Gate::x(4));
      st.apply(Gate::h(4));  // phase target
      const Statevector before = st;
      st.apply(oracle);
      const int expect =
          inst.s_map[x1].dot(BitString::from_index(x2, 2)) ? -1 : 1;
      for (std::size_t i = 0; i < st.dim(); ++i)
        CHECK(std::abs(st.amp(i) - double(expect) * before.amp(i)) <= 1e-12);
    }
}

TEST_CASE("outer oracle reduces to CNOTs exactly when g is linear") {
  const Circuit two = oracle_g(masked_instance(2, BitString::parse("11")));
  REQUIRE(two.size() == 2);
  CHECK(two.gates()[0] == Gate::cnot(2, 5));
  CHECK(two.gates()[1] == Gate::cnot(3, 5));

  const Circuit one = oracle_g(masked_instance(3, BitString::parse("001")));
  REQUIRE(one.size() == 1);
  CHECK(one.gates()[0] == Gate::cnot(5, 7));

  // Unbalanced table: pattern-matched fallback, one gate per g(v)=1.
  const RecursiveInstance inst = reference_instance();
  const Circuit fallback = oracle_g(inst);
  REQUIRE(fallback.size() == 3);
  for (const Gate& g : fallback.gates()) CHECK(g.kind == GateKind::MCX);
  for (std::size_t v = 0; v < 4; ++v) {
    Statevector st(6);
    for (int b = 0; b < 2; ++b)
      if (v & (std::size_t{2} >> b)) st.apply(Gate::x(2 + b));
    st.apply(Gate::x(5));
    st.apply(Gate::h(5));
    const Statevector before = st;
    st.apply(fallback);
    const double expect = inst.g_table[v] ? -1.0 : 1.0;
    for (std::size_t i = 0; i < st.dim(); ++i)
      CHECK(std::abs(st.amp(i) - expect * before.amp(i)) <= 1e-12);
  }
}

TEST_CASE("two-level solver recovers the hidden string") {
  CHECK(solve(build_recursive_circuit(reference_instance())).s.str() == "11");

  // Same hidden string through the masked inner map and a hand-built
  // Toffoli-only inner block.
  const RecursiveInstance inst = masked_instance(2, BitString::parse("11"));
  CHECK(solve(build_recursive_circuit(inst)).s.str() == "11");
  Circuit block(6);
  block.append(Gate::toffoli(0, 2, 4));
  block.append(Gate::toffoli(1, 3, 4));
  CHECK(solve(build_recursive_circuit(inst, block)).s.str() == "11");

  for (std::size_t sv = 1; sv < 4; ++sv) {
    const BitString s = BitString::from_index(sv, 2);
    CHECK(solve(build_recursive_circuit(masked_instance(2, s))).s == s);
  }
  CHECK(solve(build_recursive_circuit(masked_instance(3, BitString::parse("110")))).s.str() ==
        "110");
}

TEST_CASE("after the inner oracle register 2 carries the inner string") {
  const RecursiveInstance inst = reference_instance();
  Circuit half(6);
  half.append(Gate::x(4));
  half.append(Gate::x(5));
  for (int q = 0; q < 6; ++q) half.append(Gate::h(q));
  half.extend(oracle_general_k2(inst));
  for (int q = 2; q < 4; ++q) half.append(Gate::h(q));

  Statevector st = new_zero_state(6);
  st.apply(half);
  for (std::size_t x1 = 0; x1 < 4; ++x1) {
    Statevector block = st;
    block.collapse({0, 1}, x1);
    const std::vector<double> probs = block.branch_probabilities({2, 3});
    for (std::size_t v = 0; v < 4; ++v) {
      const double expect = (v == inst.s_map[x1].index()) ? 1.0 : 0.0;
      CHECK(probs[v] == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("a dropped inner gate makes the readout nondeterministic") {
  const RecursiveInstance inst = masked_instance(2, BitString::parse("11"));
  Circuit full(6), cut(6);
  full.append(Gate::toffoli(0, 2, 4));
  full.append(Gate::toffoli(1, 3, 4));
  cut.append(Gate::toffoli(0, 2, 4));  // second half of the oracle went missing

  RegisterLabels labels;
  labels.register1 = {0, 1};
  labels.register2 = {2, 3};
  labels.ancilla1 = {4};
  labels.ancilla2 = {5};
  Circuit c(6, labels);
  c.append(Gate::x(4));
  c.append(Gate::x(5));
  for (int q = 0; q < 6; ++q) c.append(Gate::h(q));
  c.extend(full);
  c.append(Gate::h(2));
  c.append(Gate::h(3));
  c.extend(oracle_g(inst));
  c.append(Gate::h(2));
  c.append(Gate::h(3));
  c.extend(cut);
  c.append(Gate::h(0));
  c.append(Gate::h(1));
  CHECK_THROWS_AS(solve(c), NondeterministicOutcome);

  Circuit unlabeled(2);
  unlabeled.append(Gate::h(0));
  CHECK_THROWS_AS(solve(unlabeled), std::invalid_argument);
}

TEST_CASE("instance JSON survives a round trip") {
  const RecursiveInstance inst = reference_instance();
  const std::string text = serialize(inst);
  const RecursiveInstance back = instance_from_json(text);
  CHECK(back.n == inst.n);
  CHECK(back.s == inst.s);
  CHECK(back.s_map == inst.s_map);
  CHECK(back.g_table == inst.g_table);
  CHECK(serialize(back) == text);
}

TEST_CASE("instance JSON parser names the missing piece") {
  CHECK_THROWS_AS(instance_from_json("["), ParseError);
  CHECK_THROWS_AS(instance_from_json(R"({"s": "11"})"), ParseError);
  const std::string base = serialize(reference_instance());

  const auto expect_parse_error = [](const std::string& text, const std::string& needle) {
    try {
      instance_from_json(text);
      FAIL(("expected ParseError, wanted locus " + needle));
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  std::string missing = base;
  missing.replace(missing.find("\"00\": \"00\""), 10, "\"xx\": \"00\"");
  expect_parse_error(missing, "s_map");
  std::string bad_bit = base;
  bad_bit.replace(bad_bit.find("\"g_table\": {\n    \"00\": 0"), 24, "\"g_table\": {\n    \"00\": 7");
  expect_parse_error(bad_bit, "g_table");
}
