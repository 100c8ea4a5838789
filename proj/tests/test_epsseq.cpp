#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qaff/epsseq.hpp"

using namespace qaff;

TEST_CASE("A_n rows: all labels -1, eps = -n+1") {
  for (int n = 1; n <= 6; ++n) {
    auto data = affine_cartan({Series::A, n, 1});
    auto seq = builtin_sequence(data);
    REQUIRE(seq.valid);
    CHECK(static_cast<int>(seq.indices.size()) == data.h - 1);
    for (const auto& l : seq.labels) CHECK(l == Rat(-1));
    CHECK(seq.eps_total == Rat(-n + 1));
    CHECK(seq.theta == data.theta);
    CHECK(seq.discrepancies.empty());
  }
}

TEST_CASE("G2 row: labels (-1,-1/3,0,-2/3), eps -2") {
  auto data = affine_cartan("G2^1");
  auto seq = builtin_sequence(data);
  REQUIRE(seq.valid);
  CHECK(seq.indices == std::vector<int>{1, 2, 2, 1, 2});
  CHECK(seq.labels ==
        std::vector<Rat>{Rat(-1), Rat(-1, 3), Rat(0), Rat(-2, 3)});
  CHECK(seq.eps_total == Rat(-2));
  CHECK(seq.theta == std::vector<int>{2, 3});
  CHECK(seq.discrepancies.empty());
}

TEST_CASE("C2 row matches the two-label reading (-1, 0)") {
  auto data = affine_cartan("C2^1");
  auto seq = builtin_sequence(data);
  REQUIRE(seq.valid);
  CHECK(seq.indices == std::vector<int>{1, 2, 1});
  CHECK(seq.labels == std::vector<Rat>{Rat(-1), Rat(0)});
  CHECK(seq.eps_total == Rat(-1));
  CHECK(seq.theta == std::vector<int>{2, 1});
}

TEST_CASE("validate_sequence on G2 step 3: (a1+2a2|a1) = 0") {
  auto data = affine_cartan("G2^1");
  auto val = validate_sequence({1, 2, 2, 1}, data);
  REQUIRE(val.ok);
  CHECK(val.labels[2] == Rat(0));
}

TEST_CASE("repeated root fails validation with position report") {
  auto data = affine_cartan("A2^1");
  auto val = validate_sequence({1, 1}, data);
  CHECK(!val.ok);
  CHECK(val.fail_pos == 1);
}

TEST_CASE("E8 row: computed -28 with discrepancy against printed -16") {
  auto data = affine_cartan("E8^1");
  auto seq = builtin_sequence(data);
  REQUIRE(seq.valid);
  CHECK(seq.eps_total == Rat(-28));            // -h+2 with h = 30
  CHECK(static_cast<int>(seq.indices.size()) == 29);
  REQUIRE(!seq.discrepancies.empty());
  CHECK(seq.discrepancies[0].printed == "-16");
  CHECK(seq.discrepancies[0].computed == "-28");
}

TEST_CASE("E6/E7 rows validate with eps = -h+2") {
  auto e6 = builtin_sequence(affine_cartan("E6^1"));
  REQUIRE(e6.valid);
  CHECK(e6.eps_total == Rat(-10));
  CHECK(e6.discrepancies.empty());
  auto e7 = builtin_sequence(affine_cartan("E7^1"));
  REQUIRE(e7.valid);
  CHECK(e7.eps_total == Rat(-16));
  CHECK(e7.discrepancies.empty());
}

TEST_CASE("F4 row: total matches, two printed labels corrected") {
  auto data = affine_cartan("F4^1");
  auto seq = builtin_sequence(data);
  REQUIRE(seq.valid);
  CHECK(seq.eps_total == Rat(-7));
  // printed arrows 6 and 7 say -1; (2.12) computes -1/2
  CHECK(seq.labels[5] == Rat(-1, 2));
  CHECK(seq.labels[6] == Rat(-1, 2));
  CHECK(seq.discrepancies.size() == 2);
}

TEST_CASE("simply-laced: eps = -h+2") {
  for (std::string t : {"A2^1", "A5^1", "D4^1", "D5^1", "E6^1", "E7^1"}) {
    auto data = affine_cartan(t);
    auto seq = builtin_sequence(data);
    REQUIRE(seq.valid);
    CHECK(seq.eps_total == Rat(-(data.h - 2)));
  }
}

TEST_CASE("twisted rows") {
  auto a3 = builtin_sequence(affine_cartan("A3^2"));
  REQUIRE(a3.valid);
  CHECK(a3.indices == std::vector<int>{1, 2});
  CHECK(a3.labels == std::vector<Rat>{Rat(-2)});
  CHECK(a3.eps_total == Rat(-2));
  REQUIRE(a3.a.has_value());
  CHECK(*a3.a == Scalar(-2));

  auto d4 = builtin_sequence(affine_cartan("D4^3"));
  REQUIRE(d4.valid);
  CHECK(d4.indices == std::vector<int>{1, 2, 1});
  CHECK(d4.labels == std::vector<Rat>{Rat(-3), Rat(-1)});
  CHECK(d4.eps_total == Rat(-4));
  CHECK(*d4.a == Scalar(3));

  auto d3 = builtin_sequence(affine_cartan("D3^2"));
  REQUIRE(d3.valid);
  CHECK(d3.indices == std::vector<int>{2, 1});
  CHECK(d3.eps_total == Rat(-2));
  CHECK(*d3.a == Scalar(-8));  // (-2)^{n+1} at n = 2

  auto a4 = builtin_sequence(affine_cartan("A4^2"));
  REQUIRE(a4.valid);
  CHECK(a4.reconstructed);
  CHECK(a4.eps_total == Rat(-1));  // -2n+3 at n = 2
  CHECK(a4.theta == affine_cartan("A4^2").theta);
  REQUIRE(a4.a.has_value());
  CHECK(*a4.a == -q_int(2, Rat(1)) * q_int(2, Rat(1)));

  auto e62 = builtin_sequence(affine_cartan("E6^2"));
  REQUIRE(e62.valid);
  CHECK(e62.reconstructed);
  CHECK(!e62.a.has_value());  // table leaves a blank
}

TEST_CASE("theta of builtin equals enumerated theta root") {
  for (std::string t : {"A1^1", "A4^1", "C2^1", "C4^1", "D4^1", "D5^1",
                        "E6^1", "E7^1", "E8^1", "F4^1", "G2^1", "A3^2",
                        "A4^2", "D3^2", "D4^3", "E6^2"}) {
    auto data = affine_cartan(t);
    auto seq = builtin_sequence(data);
    REQUIRE(seq.valid);
    CHECK(seq.theta == theta_root(data));
  }
}

TEST_CASE("search finds (1,2) first for A2") {
  auto data = affine_cartan("A2^1");
  SeqConstraints cons;
  cons.cap = 10;
  auto hits = search_sequence(data, cons);
  REQUIRE(!hits.empty());
  CHECK(hits.front().indices == std::vector<int>{1, 2});
  // epsilon is sequence-independent
  for (const auto& h : hits) CHECK(h.eps_total == hits.front().eps_total);
}

TEST_CASE("epsilon independent of the sequence choice (A3, C2)") {
  for (std::string t : {"A3^1", "C2^1"}) {
    auto data = affine_cartan(t);
    SeqConstraints cons;
    cons.cap = 1000;
    cons.theta = data.theta;
    auto hits = search_sequence(data, cons);
    REQUIRE(hits.size() >= 2);
    for (const auto& h : hits) CHECK(h.eps_total == hits.front().eps_total);
  }
}

TEST_CASE("E6 search: a sequence with eps = -10 exists") {
  auto data = affine_cartan("E6^1");
  SeqConstraints cons;
  cons.eps_total = Rat(-10);
  cons.theta = data.theta;
  cons.cap = 1;
  auto hits = search_sequence(data, cons);
  REQUIRE(!hits.empty());
  CHECK(hits.front().eps_total == Rat(-10));
}

TEST_CASE("B_n row: printed row is short and the search outcome is recorded") {
  auto data = affine_cartan("B3^1");
  auto seq = builtin_sequence(data);
  CHECK(!seq.discrepancies.empty());
  // Whatever the outcome, it must be internally consistent: a valid row
  // validates, an invalid one carries the exhaustion record.
  if (seq.valid) {
    auto val = validate_sequence(seq.indices, data);
    CHECK(val.ok);
    CHECK(seq.theta == data.theta);
  } else {
    CHECK(seq.reconstructed);
  }
}

TEST_CASE("a constants") {
  auto a5 = builtin_sequence(affine_cartan("A5^1"));
  CHECK(*a5.a == Scalar(1));
  auto c3 = builtin_sequence(affine_cartan("C3^1"));
  CHECK(*c3.a == q_int(2, Rat(1, 2)));  // [2]_1 in the short normalization
  auto f4 = builtin_sequence(affine_cartan("F4^1"));
  CHECK(!f4.a.has_value());
}
