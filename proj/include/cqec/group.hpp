#pragma once
// Multiplication-table finite groups.  Elements are integer indices; names are
// metadata only.  Construction validates the group axioms and reports the
// violated axiom by name (associativity exhaustively up to order 64, by
// 10^4 sampled triples above).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cqec {

struct FiniteGroup {
  int64_t order = 0;
  std::vector<int> mul;  // row-major order×order
  std::vector<int> inv;
  int identity = 0;
  std::string name;

  int op(int a, int b) const { return mul[static_cast<std::size_t>(a) * order + b]; }
  int inverse(int a) const { return inv[static_cast<std::size_t>(a)]; }
  bool is_abelian() const;
};

FiniteGroup make_cyclic(int64_t n);
FiniteGroup make_symmetric(int n);  // S_n, n <= 6
FiniteGroup group_from_table(int64_t order, const std::vector<int>& mul, std::string name = {});

// Left action of a group on the finite set {0, ..., set_size-1}.
struct GroupAction {
  int64_t set_size = 0;
  std::function<int64_t(int, int64_t)> act;
};

// g acting on the group itself by left multiplication.
GroupAction self_action(const FiniteGroup& g);
// natural action of S_n (as produced by make_symmetric) on {0..n-1}
GroupAction symmetric_natural_action(const FiniteGroup& sn, int n);
// throws naming the violated axiom unless `action` is a left group action
void validate_action(const FiniteGroup& g, const GroupAction& action);

// permutation of S_n with the given element index, in lexicographic order
std::vector<int> symmetric_permutation(int n, int element);

}  // namespace cqec
