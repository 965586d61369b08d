#include <algorithm>
#include <cmath>
#include <map>

#include "cqec/codes.hpp"
#include "cqec/util.hpp"

namespace cqec {

ChargeSectorChart make_charge_sector_chart(const ChargeRep& charges_in,
                                           const std::vector<ChargeRep>& charges_out) {
  require(!charges_in.charges.empty(), "charge chart: empty input");
  require(!charges_out.empty(), "charge chart: no output modes");
  ChargeSectorChart ch;
  ch.charges_in = charges_in;
  ch.charges_out = charges_out;
  ch.space_in = ModeSpace::single(static_cast<int64_t>(charges_in.charges.size()), "in");
  std::vector<int64_t> dims;
  for (const ChargeRep& r : charges_out) {
    require(!r.charges.empty(), "charge chart: empty output mode");
    dims.push_back(static_cast<int64_t>(r.charges.size()));
  }
  ch.space_out = ModeSpace(dims);

  const int64_t total = ch.space_out.total();
  std::map<int64_t, std::vector<int64_t>> by_charge;
  for (int64_t f = 0; f < total; ++f) {
    int64_t x = f, q = 0;
    for (std::size_t m = dims.size(); m-- > 0;) {
      q += charges_out[m].charges[static_cast<std::size_t>(x % dims[m])];
      x /= dims[m];
    }
    by_charge[q].push_back(f);
  }
  for (int64_t qin : charges_in.charges) {
    auto it = by_charge.find(qin);
    require(it != by_charge.end() && !it->second.empty(),
            "charge chart: empty charge sector for input charge ", qin);
    ch.sectors.push_back(it->second);
  }
  return ch;
}

int64_t ChargeSectorChart::param_count() const {
  int64_t n = 0;
  for (const auto& s : sectors) n += 2 * static_cast<int64_t>(s.size());
  return n;
}

DenseOperator u1_covariant_isometry(const ChargeSectorChart& chart,
                                    const std::vector<double>& params) {
  require(static_cast<int64_t>(params.size()) == chart.param_count(),
          "u1_covariant_isometry: expected ", chart.param_count(), " parameters, got ",
          params.size());
  const int64_t din = chart.space_in.total();
  DenseOperator v(chart.space_out, chart.space_in);

  // raw sector vectors from the chart parameters
  std::size_t off = 0;
  std::vector<std::vector<cx>> cols(static_cast<std::size_t>(din));
  for (int64_t i = 0; i < din; ++i) {
    const auto& sec = chart.sectors[static_cast<std::size_t>(i)];
    std::vector<cx> raw(sec.size());
    for (std::size_t k = 0; k < sec.size(); ++k) {
      raw[k] = cx{params[off], params[off + 1]};
      off += 2;
    }
    cols[static_cast<std::size_t>(i)] = std::move(raw);
  }

  // columns of equal input charge must be orthonormal: Gram-Schmidt in input
  // order within each charge class (sector index lists are shared objects for
  // equal charges, so comparing the representative works)
  for (int64_t i = 0; i < din; ++i) {
    const auto& sec = chart.sectors[static_cast<std::size_t>(i)];
    std::vector<cx>& raw = cols[static_cast<std::size_t>(i)];
    for (int64_t p = 0; p < i; ++p) {
      if (chart.charges_in.charges[static_cast<std::size_t>(p)] !=
          chart.charges_in.charges[static_cast<std::size_t>(i)])
        continue;
      const std::vector<cx>& prev = cols[static_cast<std::size_t>(p)];
      const cx ov = kern::dotc(prev.data(), raw.data(), prev.size());
      kern::axpy(raw.data(), prev.data(), raw.size(), -ov);
    }
    double nn = 0.0;
    for (const cx& x : raw) nn += std::norm(x);
    require(nn > 1e-24, "u1_covariant_isometry: degenerate chart point (zero sector vector ",
            "for input ", i, ")");
    kern::scal(raw.data(), raw.size(), cx{1.0 / std::sqrt(nn), 0});
    for (std::size_t k = 0; k < sec.size(); ++k) v.at(sec[k], i) = raw[k];
  }
  require(v.is_isometry(1e-10), "u1_covariant_isometry: result not an isometry");
  return v;
}

Code u1_covariant_isometry_code(const ChargeRep& charges_in,
                                const std::vector<ChargeRep>& charges_out,
                                const std::vector<double>& params) {
  ChargeSectorChart chart = make_charge_sector_chart(charges_in, charges_out);
  DenseOperator v = u1_covariant_isometry(chart, params);
  Code c;
  c.kind = "u1-sector-isometry";
  c.space_in = chart.space_in;
  c.space_out = chart.space_out;
  c.charges_in = {charges_in};
  c.charges_out = charges_out;
  c.encoder = v;
  c.encoding = isometry_channel(v);
  return c;
}

}  // namespace cqec
