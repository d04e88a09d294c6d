#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace critgrass {

// Window f(1..n) extended by f(j+n) = f(j)+n.
class BoundedAffinePermutation {
 public:
  BoundedAffinePermutation() = default;

  int n() const { return static_cast<int>(w_.size()); }
  int k() const { return k_; }
  const std::vector<int>& window() const { return w_; }

  int operator()(int j) const;
  int fbar(int j) const;  // f(j) mod n in [1, n]
  bool is_loop(int j) const;
  bool is_coloop(int j) const;
  bool loopless() const;

  bool operator==(const BoundedAffinePermutation& o) const { return w_ == o.w_; }

 private:
  friend BoundedAffinePermutation make_bap(const std::vector<int>& window);
  std::vector<int> w_;
  int k_ = 0;
};

using BAP = BoundedAffinePermutation;

int mod1(int a, int n);  // representative in [1, n]

BAP make_bap(const std::vector<int>& window);
BAP top_cell(int k, int n);
int length(const BAP& f);
BAP lift_loopless(const std::vector<int>& fbar);  // fbar[0] is f̄(1)
BAP conjugate_shift(const BAP& f, int c);         // relabel p -> p + c

std::vector<std::pair<int, int>> f_crossings(const BAP& f);
bool connected_strand_diagram(const BAP& f);

// Blocks [a, b) of integers covering one period, first block starting in [1, n].
class PeriodicPartition {
 public:
  PeriodicPartition() = default;
  PeriodicPartition(int n, std::vector<std::pair<int, int>> blocks);
  static PeriodicPartition from_cyclic(int n, const std::vector<std::vector<int>>& blocks);

  int n() const { return n_; }
  int size() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::pair<int, int>>& blocks() const { return blocks_; }
  int block_of(int p) const;  // index of the block whose shift contains p
  std::vector<int> elements(int i) const;  // residues of block i, in order
  bool generic(int k) const;
  int max_block() const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> blocks_;
};

struct Overlaps {
  int ov_l = 0, ov_r = 0;
};
Overlaps block_overlaps(int lo, int hi, int k, int n);

BAP g_from_partition(const PeriodicPartition& B, int k);

using Subset = std::vector<int>;  // sorted elements of [n]
using Necklace = std::vector<Subset>;  // I_1..I_n at indices 0..n-1

Necklace grassmann_necklace(const BAP& g);
bool gale_leq(const Subset& I, const Subset& J, int q, int n);
bool positroid_contains(const Necklace& N, const Subset& J, int n);
bool positroid_contains(const BAP& g, const Subset& J);
bool is_weakly_separated(const Subset& I, const Subset& J, int n);
bool is_right_aligned(const Subset& J, const PeriodicPartition& B);

// Closed form I_j = [j,p) ⊔ [r,q); one entry per j with the triple that produced it.
struct NecklaceTerm {
  int j = 0, p = 0, q = 0, r = 0;
  Subset set;
};
std::vector<NecklaceTerm> necklace_closed_form(const PeriodicPartition& B, int k);

bool arch_certificate(const BAP& g, int j, int t);

struct SquareCertificate {
  std::array<int, 4> t{};
  Subset I;
  bool ok = false;
};
SquareCertificate square_face_certificate(const PeriodicPartition& B, const std::array<int, 4>& blocks, int k);
SquareCertificate square_face_certificate(const PeriodicPartition& B, const std::array<int, 4>& blocks, int k,
                                          const Subset& I);

std::vector<Subset> k_subsets(int k, int n);

}  // namespace critgrass
