#pragma once
// Mode-structured Hilbert space bookkeeping.  A ModeSpace is an ordered list
// of mode dimensions; flat indices are row-major with mode 0 slowest, so
// tensor products concatenate mode lists and Kronecker-compose indices.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "cqec/util.hpp"

namespace cqec {

using std::int64_t;

struct ModeSpace {
  std::vector<int64_t> dims;
  std::vector<std::string> labels;  // empty, or one label per mode (unique)

  ModeSpace() = default;
  explicit ModeSpace(std::vector<int64_t> d, std::vector<std::string> l = {})
      : dims(std::move(d)), labels(std::move(l)) {
    validate();
  }

  static ModeSpace single(int64_t dim, std::string label = {}) {
    ModeSpace s;
    s.dims = {dim};
    if (!label.empty()) s.labels = {std::move(label)};
    s.validate();
    return s;
  }

  void validate() const {
    require(!dims.empty(), "ModeSpace: needs at least one mode");
    for (int64_t d : dims) require(d >= 1, "ModeSpace: mode dimension must be >= 1, got ", d);
    if (!labels.empty()) {
      require(labels.size() == dims.size(), "ModeSpace: labels/dims length mismatch");
      for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
          require(labels[i] != labels[j], "ModeSpace: duplicate mode label '", labels[i], "'");
    }
  }

  std::size_t num_modes() const { return dims.size(); }

  int64_t total() const {
    int64_t t = 1;
    for (int64_t d : dims) {
      require(t <= (int64_t{1} << 62) / d, "ModeSpace: total dimension overflow");
      t *= d;
    }
    return t;
  }

  // Row-major strides: stride[m] = Π_{m' > m} dims[m'].
  std::vector<int64_t> strides() const {
    std::vector<int64_t> s(dims.size(), 1);
    for (std::size_t m = dims.size(); m-- > 1;) s[m - 1] = s[m] * dims[m];
    return s;
  }

  static ModeSpace concat(const ModeSpace& a, const ModeSpace& b) {
    ModeSpace s;
    s.dims = a.dims;
    s.dims.insert(s.dims.end(), b.dims.begin(), b.dims.end());
    if (!a.labels.empty() || !b.labels.empty()) {
      s.labels.resize(s.dims.size());
      for (std::size_t i = 0; i < a.dims.size(); ++i)
        s.labels[i] = a.labels.empty() ? "" : a.labels[i];
      for (std::size_t i = 0; i < b.dims.size(); ++i)
        s.labels[a.dims.size() + i] = b.labels.empty() ? "" : b.labels[i];
    }
    return s;
  }

  ModeSpace subspace(const std::vector<std::size_t>& modes) const {
    ModeSpace s;
    for (std::size_t m : modes) {
      require(m < dims.size(), "ModeSpace: mode index ", m, " out of range");
      s.dims.push_back(dims[m]);
      if (!labels.empty()) s.labels.push_back(labels[m]);
    }
    return s;
  }

  bool same_dims(const ModeSpace& o) const { return dims == o.dims; }

  std::string to_string() const {
    std::string r = "(";
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (i) r += ",";
      r += std::to_string(dims[i]);
    }
    return r + ")";
  }
};

inline std::vector<int64_t> unflatten(int64_t flat, const std::vector<int64_t>& dims) {
  std::vector<int64_t> idx(dims.size());
  for (std::size_t m = dims.size(); m-- > 0;) {
    idx[m] = flat % dims[m];
    flat /= dims[m];
  }
  return idx;
}

inline int64_t flatten(const std::vector<int64_t>& idx, const std::vector<int64_t>& dims) {
  int64_t flat = 0;
  for (std::size_t m = 0; m < dims.size(); ++m) flat = flat * dims[m] + idx[m];
  return flat;
}

}  // namespace cqec
