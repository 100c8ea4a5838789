#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qaff/scalar.hpp"

namespace qaff {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

// Named by the (possibly twisted) source diagram, e.g. A3^2 folds A_3.
struct AffineType {
  Series series;
  int rank;   // rank of the named diagram (source rank for twisted types)
  int twist;  // 1, 2 or 3

  bool operator==(const AffineType& o) const {
    return series == o.series && rank == o.rank && twist == o.twist;
  }
  std::string str() const;
};

AffineType parse_type(const std::string& text);

struct FoldInfo {
  int r = 1;                         // order of sigma
  AffineType source;                 // simply-laced X_N^{(1)}
  std::vector<int> sigma;            // 1-based permutation of 1..N
  std::vector<std::vector<int>> orbits;  // orbit of each twisted node 1..n
  std::vector<int> rep;              // orbit representative per twisted node
  std::vector<int> node_of_source;   // source index -> twisted node
};

// Realization data for one affine algebra. Index 0 is the affine node,
// 1..n the finite ones. The bilinear matrix carries the whole structure:
// d_i = (a_i|a_i)/2 and a_ij = (a_i|a_j)/d_i.
struct CartanData {
  AffineType type;
  int n = 0;                          // finite rank (folded rank if twisted)
  std::vector<std::vector<Rat>> bil;  // (n+1)x(n+1), (alpha_i|alpha_j)
  std::vector<Rat> d;                 // size n+1
  std::vector<int> theta;             // attach root coefficients, 1..n at [i-1]
  int h = 0;                          // Coxeter number (sequence length + 1)
  std::optional<FoldInfo> fold;

  Rat bilinear(int i, int j) const;
  // Linear extension to coefficient vectors over alpha_0..alpha_n.
  Rat bilinear_vec(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
  // Pairing of two finite-root coefficient vectors (1..n at [i-1]).
  Rat pair_fin(const std::vector<int>& x, const std::vector<int>& y) const;
  Rat cartan_entry(int i, int j) const;  // a_ij = (a_i|a_j)/d_i
  std::vector<Rat> delta_coeffs() const;  // delta over alpha_0..alpha_n
  bool twisted() const { return type.twist > 1; }
};

CartanData affine_cartan(const AffineType& type);
CartanData affine_cartan(const std::string& type);

// sigma for the valid folding pairs, 1-based on the finite nodes of the
// simply-laced diagram. The paper prints sigma(i)=N-i for A_N, which is not
// an automorphism; sigma(i)=N+1-i is used and the difference is reported.
std::vector<int> diagram_automorphism(const AffineType& simply_laced, int r);

// All positive roots as integer coefficient vectors, rank <= 8.
std::vector<std::vector<int>> positive_roots(const CartanData& data);

// Unique root maximal in the coefficient partial order.
std::vector<int> highest_root_max(const CartanData& data);
// Coefficient-maximal root among those of minimal norm.
std::vector<int> highest_short_root(const CartanData& data);
// The root theta the builtin sequences sum to: coefficient-maximal for
// untwisted types and A_2n^{(2)}, highest short root for the other twisted
// families.
std::vector<int> theta_root(const CartanData& data);

int coxeter_number(const CartanData& data);

// Bilinear form of the simply-laced source normalized to (a'_i|a'_i) = 2r,
// i.e. r times the standard one; used by the twisted relation formulas.
Rat source_bilinear_scaled(const CartanData& twisted, int i, int j);
// (sum_s sigma^s alpha'_rep(i) | alpha'_rep(j)) in the standard source form.
Rat folded_pairing(const CartanData& twisted, int i, int j);

}  // namespace qaff
