#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "critgrass/affine_perm.hpp"

namespace critgrass {

// Sorted finite subset of ℤ with min in [1, n], or WHOLE.
struct Tube {
  std::vector<int> elems;
  bool whole = false;

  int size() const { return static_cast<int>(elems.size()); }
  bool operator<(const Tube& o) const;
  bool operator==(const Tube& o) const { return whole == o.whole && elems == o.elems; }
};

Tube whole_tube();
Tube canonical_tube(std::vector<int> elems, int n);
std::string tube_key(const Tube& t);
Tube parse_tube_key(const std::string& key, int n);

class AffinePoset {
 public:
  AffinePoset() = default;
  // Generating relations p ≺ q with p < q; p ≺ p+n is added.
  AffinePoset(int n, const std::vector<std::pair<int, int>>& relations);

  int n() const { return n_; }
  bool leq(int p, int q) const;
  bool less(int p, int q) const { return p != q && leq(p, q); }
  const std::vector<std::pair<int, int>>& generators() const { return gens_; }
  const std::vector<std::pair<int, int>>& hasse() const { return hasse_; }  // p in [1, n]
  std::vector<int> hasse_neighbors(int p) const;
  std::vector<std::pair<int, int>> hasse_within(const std::vector<int>& set) const;

 private:
  int n_ = 0;
  int depth_ = 0;
  std::vector<std::pair<int, int>> gens_;
  std::vector<std::pair<int, int>> hasse_;
  std::vector<std::vector<int>> pred_delta_;  // per residue of q: q - p over generators
  std::vector<std::vector<char>> reach_;      // [r][d]: r ⪯ r + d
};

AffinePoset total_order(int n);
AffinePoset poset_from_perm(const BAP& f);
bool is_admissible(const std::vector<double>& theta, const BAP& f);

bool is_convex(const AffinePoset& P, const std::vector<int>& set);
bool is_connected(const AffinePoset& P, const std::vector<int>& set);
bool is_tube(const AffinePoset& P, const std::vector<int>& set);

std::vector<Tube> enumerate_tubes(const AffinePoset& P);  // proper classes, then WHOLE
bool nested_or_disjoint(const Tube& a, const Tube& b, int n);
bool is_tubing(const AffinePoset& P, const std::vector<Tube>& T);

struct FaceLattice {
  std::vector<Tube> tubes;                 // proper classes
  std::vector<std::vector<int>> tubings;   // indices into tubes, sorted
  std::vector<long> fvector;               // by face dimension 0..n-1
};

FaceLattice enumerate_proper_tubings(const AffinePoset& P, int max_n = 7);

double theta_tilde(const std::vector<double>& theta, int p);
double alpha(const AffinePoset& P, const std::vector<int>& tau, const std::vector<double>& x);
std::vector<double> normalize_on_tube(const AffinePoset& P, const std::vector<int>& tau, const std::vector<double>& x);
std::vector<std::vector<int>> point_partition(const AffinePoset& P, const std::vector<int>& tau,
                                              const std::vector<double>& x, double tol = 1e-10);
std::vector<Tube> whole_partition(const AffinePoset& P, const std::vector<double>& theta, double tol = 1e-10);

struct CompPoint {
  std::vector<Tube> tubing;                                // canonical proper classes, sorted
  std::vector<double> whole;                               // θ_1..θ_n with θ_1 = 0
  std::map<std::vector<int>, std::vector<double>> data;    // canonical elems -> coordinates
};

CompPoint make_comp_point(const AffinePoset& P, std::vector<Tube> tubing, std::vector<double> whole,
                          std::map<std::vector<int>, std::vector<double>> data);
void validate_point(const AffinePoset& P, const CompPoint& x);
CompPoint interior_point(const AffinePoset& P, const std::vector<double>& theta);

// Maximal members of T̂ strictly inside the representative tau, singletons included.
std::vector<std::vector<int>> children(const CompPoint& x, const std::vector<int>& tau, int n);
std::vector<Tube> whole_children(const CompPoint& x, int n);

// θ[τ] for a member of T, or the coherent value for any other proper tube representative.
std::vector<double> derive(const AffinePoset& P, const CompPoint& x, const std::vector<int>& tau);

bool is_circular_chain(const AffinePoset& P, const std::vector<int>& chain);
std::vector<int> rotate_chain(const std::vector<int>& chain, int n);
std::vector<double> zeta(const AffinePoset& P, const CompPoint& x, const std::vector<int>& chain);

bool same_point(const CompPoint& a, const CompPoint& b, double tol = 1e-10);

}  // namespace critgrass
