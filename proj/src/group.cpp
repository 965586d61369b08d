#include "cqec/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cqec/rng.hpp"
#include "cqec/util.hpp"

namespace cqec {

namespace {

void validate_group(FiniteGroup& g) {
  const int64_t d = g.order;
  require(d >= 1, "group: order must be positive");
  require(static_cast<int64_t>(g.mul.size()) == d * d, "group: table size mismatch");
  for (int v : g.mul)
    require(v >= 0 && v < d, "group axiom violated: closure (entry ", v, " out of range)");

  // Latin square
  for (int64_t r = 0; r < d; ++r) {
    std::vector<bool> seen_row(static_cast<std::size_t>(d), false);
    std::vector<bool> seen_col(static_cast<std::size_t>(d), false);
    for (int64_t c = 0; c < d; ++c) {
      const int rv = g.mul[static_cast<std::size_t>(r * d + c)];
      const int cv = g.mul[static_cast<std::size_t>(c * d + r)];
      require(!seen_row[static_cast<std::size_t>(rv)],
              "group axiom violated: cancellation (row ", r, " repeats ", rv, ")");
      require(!seen_col[static_cast<std::size_t>(cv)],
              "group axiom violated: cancellation (column ", r, " repeats ", cv, ")");
      seen_row[static_cast<std::size_t>(rv)] = true;
      seen_col[static_cast<std::size_t>(cv)] = true;
    }
  }

  // two-sided identity
  int id = -1;
  for (int e = 0; e < d; ++e) {
    bool ok = true;
    for (int a = 0; a < d && ok; ++a)
      ok = g.op(e, a) == a && g.op(a, e) == a;
    if (ok) {
      id = e;
      break;
    }
  }
  require(id >= 0, "group axiom violated: identity (no two-sided identity element)");
  g.identity = id;

  // inverses
  g.inv.assign(static_cast<std::size_t>(d), -1);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b)
      if (g.op(a, b) == id && g.op(b, a) == id) {
        g.inv[static_cast<std::size_t>(a)] = b;
        break;
      }
    require(g.inv[static_cast<std::size_t>(a)] >= 0,
            "group axiom violated: inverse (element ", a, " has none)");
  }

  // associativity: exhaustive up to order 64, sampled (10^4 triples) above
  auto check_triple = [&](int a, int b, int c) {
    require(g.op(g.op(a, b), c) == g.op(a, g.op(b, c)),
            "group axiom violated: associativity at (", a, ",", b, ",", c, ")");
  };
  if (d <= 64) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) check_triple(a, b, c);
  } else {
    Rng rng(0x9d5bULL ^ static_cast<std::uint64_t>(d));
    for (int t = 0; t < 10000; ++t)
      check_triple(static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(d))),
                   static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(d))),
                   static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(d))));
  }
}

}  // namespace

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order; ++a)
    for (int b = a + 1; b < order; ++b)
      if (op(a, b) != op(b, a)) return false;
  return true;
}

FiniteGroup make_cyclic(int64_t n) {
  require(n >= 1, "make_cyclic: n must be >= 1");
  FiniteGroup g;
  g.order = n;
  g.name = "Z" + std::to_string(n);
  g.mul.resize(static_cast<std::size_t>(n * n));
  for (int64_t a = 0; a < n; ++a)
    for (int64_t b = 0; b < n; ++b)
      g.mul[static_cast<std::size_t>(a * n + b)] = static_cast<int>((a + b) % n);
  validate_group(g);
  return g;
}

std::vector<int> symmetric_permutation(int n, int element) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (int i = 0; i < element; ++i) std::next_permutation(p.begin(), p.end());
  return p;
}

FiniteGroup make_symmetric(int n) {
  require(n >= 1 && n <= 6, "make_symmetric: supported for 1 <= n <= 6");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);

  const int64_t d = static_cast<int64_t>(perms.size());
  FiniteGroup g;
  g.order = d;
  g.name = "S" + std::to_string(n);
  g.mul.resize(static_cast<std::size_t>(d * d));
  std::vector<int> comp(static_cast<std::size_t>(n));
  for (int64_t a = 0; a < d; ++a)
    for (int64_t b = 0; b < d; ++b) {
      for (int x = 0; x < n; ++x)
        comp[static_cast<std::size_t>(x)] =
            perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(
                perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)])];
      g.mul[static_cast<std::size_t>(a * d + b)] = index.at(comp);
    }
  validate_group(g);
  return g;
}

FiniteGroup group_from_table(int64_t order, const std::vector<int>& mul, std::string name) {
  FiniteGroup g;
  g.order = order;
  g.mul = mul;
  g.name = name.empty() ? ("G" + std::to_string(order)) : std::move(name);
  validate_group(g);
  return g;
}

GroupAction self_action(const FiniteGroup& g) {
  GroupAction a;
  a.set_size = g.order;
  const FiniteGroup gc = g;  // captured by value; actions outlive callers' groups
  a.act = [gc](int e, int64_t x) { return static_cast<int64_t>(gc.op(e, static_cast<int>(x))); };
  return a;
}

GroupAction symmetric_natural_action(const FiniteGroup& sn, int n) {
  std::vector<std::vector<int>> perms;
  perms.reserve(static_cast<std::size_t>(sn.order));
  for (int e = 0; e < sn.order; ++e) perms.push_back(symmetric_permutation(n, e));
  GroupAction a;
  a.set_size = n;
  a.act = [perms](int e, int64_t x) {
    return static_cast<int64_t>(perms[static_cast<std::size_t>(e)][static_cast<std::size_t>(x)]);
  };
  return a;
}

void validate_action(const FiniteGroup& g, const GroupAction& action) {
  require(action.set_size >= 1, "action: empty set");
  for (int64_t x = 0; x < action.set_size; ++x)
    require(action.act(g.identity, x) == x, "action: identity does not fix ", x);
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      for (int64_t x = 0; x < action.set_size; ++x)
        require(action.act(a, action.act(b, x)) == action.act(g.op(a, b), x),
                "action: compatibility fails at g=", a, " h=", b, " x=", x);
}

}  // namespace cqec
