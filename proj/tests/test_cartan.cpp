#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qaff/cartan.hpp"

using namespace qaff;

TEST_CASE("d vectors exactly as listed") {
  auto g2 = affine_cartan("G2^1");
  CHECK(g2.d[0] == Rat(1));
  CHECK(g2.d[1] == Rat(1));
  CHECK(g2.d[2] == Rat(1, 3));

  for (std::string t : {"A3^1", "D4^1", "E6^1"}) {
    auto data = affine_cartan(t);
    for (int i = 0; i <= data.n; ++i) CHECK(data.d[i] == Rat(1));
  }

  auto c3 = affine_cartan("C3^1");
  CHECK(c3.d[0] == Rat(1));
  CHECK(c3.d[1] == Rat(1, 2));
  CHECK(c3.d[2] == Rat(1, 2));
  CHECK(c3.d[3] == Rat(1));

  auto b3 = affine_cartan("B3^1");
  CHECK(b3.d[0] == Rat(1));
  CHECK(b3.d[1] == Rat(1));
  CHECK(b3.d[2] == Rat(1));
  CHECK(b3.d[3] == Rat(1, 2));

  auto f4 = affine_cartan("F4^1");
  CHECK(f4.d == std::vector<Rat>{Rat(1), Rat(1), Rat(1), Rat(1, 2), Rat(1, 2)});

  // folded tuples from section 3
  auto a3_2 = affine_cartan("A3^2");
  CHECK(a3_2.d == std::vector<Rat>{Rat(1), Rat(1), Rat(2)});
  auto a4_2 = affine_cartan("A4^2");
  CHECK(a4_2.d == std::vector<Rat>{Rat(2), Rat(1), Rat(1, 2)});
  auto d3_2 = affine_cartan("D3^2");
  CHECK(d3_2.d == std::vector<Rat>{Rat(1), Rat(2), Rat(1)});
  auto d4_3 = affine_cartan("D4^3");
  CHECK(d4_3.d == std::vector<Rat>{Rat(1), Rat(1), Rat(3)});
  auto e6_2 = affine_cartan("E6^2");
  CHECK(e6_2.d == std::vector<Rat>{Rat(1), Rat(1), Rat(1), Rat(2), Rat(2)});
}

TEST_CASE("bilinear form") {
  auto a3 = affine_cartan("A3^1");
  CHECK(a3.bilinear(1, 2) == Rat(-1));
  CHECK(a3.bilinear(1, 3) == Rat(0));
  CHECK(a3.bilinear(2, 2) == Rat(2));

  auto g2 = affine_cartan("G2^1");
  CHECK(g2.bilinear(2, 2) == Rat(2, 3));
  CHECK(g2.bilinear(1, 2) == Rat(-1));

  // (delta|alpha_i) = (delta|delta) = 0
  for (std::string t : {"A2^1", "C2^1", "G2^1", "B3^1"}) {
    auto data = affine_cartan(t);
    auto dc = data.delta_coeffs();
    for (int i = 0; i <= data.n; ++i) {
      std::vector<Rat> e(data.n + 1, Rat(0));
      e[i] = 1;
      CHECK(data.bilinear_vec(dc, e) == Rat(0));
    }
    CHECK(data.bilinear_vec(dc, dc) == Rat(0));
  }
}

TEST_CASE("symmetrizability d_i a_ij = d_j a_ji on every supported type") {
  for (std::string t :
       {"A1^1", "A2^1", "A5^1", "B2^1", "B4^1", "C2^1", "C4^1", "D4^1",
        "D5^1", "E6^1", "E7^1", "E8^1", "F4^1", "G2^1", "A3^2", "A5^2",
        "A4^2", "A6^2", "D3^2", "D4^2", "D4^3", "E6^2"}) {
    auto data = affine_cartan(t);
    for (int i = 0; i <= data.n; ++i) {
      CHECK(data.cartan_entry(i, i) == Rat(2));
      for (int j = 0; j <= data.n; ++j) {
        CHECK(data.d[i] * data.cartan_entry(i, j) ==
              data.d[j] * data.cartan_entry(j, i));
        if (i != j) CHECK(data.cartan_entry(i, j) <= Rat(0));
        CHECK((data.cartan_entry(i, j) == 0) == (data.cartan_entry(j, i) == 0));
      }
    }
  }
}

TEST_CASE("finite Cartan entries are integers") {
  for (std::string t : {"A4^1", "B3^1", "C3^1", "G2^1", "A3^2", "D4^3"}) {
    auto data = affine_cartan(t);
    for (int i = 1; i <= data.n; ++i)
      for (int j = 1; j <= data.n; ++j)
        CHECK(denominator(data.cartan_entry(i, j)) == 1);
  }
}

TEST_CASE("diagram automorphisms") {
  auto dn = diagram_automorphism({Series::D, 5, 1}, 2);
  for (int i = 1; i <= 3; ++i) CHECK(dn[i] == i);
  CHECK(dn[4] == 5);
  CHECK(dn[5] == 4);

  auto e6 = diagram_automorphism({Series::E, 6, 1}, 2);
  CHECK(e6[1] == 5);
  CHECK(e6[2] == 4);
  CHECK(e6[3] == 3);
  CHECK(e6[6] == 6);

  auto d4 = diagram_automorphism({Series::D, 4, 1}, 3);
  CHECK(d4[1] == 3);
  CHECK(d4[2] == 2);
  CHECK(d4[3] == 4);
  CHECK(d4[4] == 1);

  // paper prints sigma(i) = N - i for A_N; the automorphism is N + 1 - i
  auto a3 = diagram_automorphism({Series::A, 3, 1}, 2);
  CHECK(a3[1] == 3);
  CHECK(a3[2] == 2);
  CHECK(a3[3] == 1);

  CHECK_THROWS_AS(diagram_automorphism({Series::A, 3, 1}, 3),
                  std::invalid_argument);
}

TEST_CASE("orbit count equals twisted rank") {
  for (std::string t : {"A3^2", "A5^2", "A4^2", "D3^2", "D5^2", "D4^3", "E6^2"}) {
    auto data = affine_cartan(t);
    REQUIRE(data.fold.has_value());
    CHECK(static_cast<int>(data.fold->orbits.size()) == data.n);
  }
}

TEST_CASE("highest roots") {
  auto a2 = affine_cartan("A2^1");
  CHECK(a2.theta == std::vector<int>{1, 1});

  auto g2 = affine_cartan("G2^1");
  CHECK(g2.theta == std::vector<int>{2, 3});  // short-root coefficient 3

  auto c2 = affine_cartan("C2^1");
  CHECK(c2.theta == std::vector<int>{2, 1});

  auto b3 = affine_cartan("B3^1");
  CHECK(b3.theta == std::vector<int>{1, 2, 2});

  // uniqueness of the coefficient-maximal root against full enumeration
  for (std::string t : {"A4^1", "D4^1", "E6^1", "F4^1", "G2^1", "E8^1"}) {
    auto data = affine_cartan(t);
    auto roots = positive_roots(data);
    auto hr = highest_root_max(data);
    int count = 0;
    for (const auto& r : roots) {
      bool dominated = true;
      for (size_t k = 0; k < r.size(); ++k)
        if (r[k] > hr[k]) dominated = false;
      if (!dominated) ++count;
    }
    CHECK(count == 0);
  }
}

TEST_CASE("coxeter numbers") {
  CHECK(affine_cartan("A4^1").h == 5);
  CHECK(affine_cartan("E7^1").h == 18);
  CHECK(affine_cartan("E8^1").h == 30);
  CHECK(affine_cartan("F4^1").h == 12);
  CHECK(affine_cartan("G2^1").h == 6);
  CHECK(affine_cartan("D5^1").h == 8);
  // twisted: 1 + sum of theta coefficients
  CHECK(affine_cartan("A3^2").h == 3);
  CHECK(affine_cartan("D4^3").h == 4);
}

TEST_CASE("folding normalization: scaled source form is r times standard") {
  auto d4_3 = affine_cartan("D4^3");
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      auto src = affine_cartan("D4^1");
      CHECK(source_bilinear_scaled(d4_3, i, j) == Rat(3) * src.bilinear(i, j));
    }
}

TEST_CASE("type strings") {
  CHECK(parse_type("A3^1").str() == "A3^1");
  CHECK(parse_type("D4^3").rank == 4);
  CHECK_THROWS_AS(parse_type("H2^1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_type("A3^4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_type("G2^2"), std::invalid_argument);
}
