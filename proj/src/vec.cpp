#include "vec.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace rulekit {

VecJet VecFn::operator()(double u) const {
  if (!domain.contains(u)) {
    std::ostringstream os;
    os << "u = " << u << " outside [" << domain.lo << ", " << domain.hi << "]";
    throw Error(ErrorCode::Domain, os.str());
  }
  return eval(u);
}

VecFn fd_vec_fn(std::function<Vec3(double)> plain, Interval domain) {
  const double margin =
      4.0 * default_fd_step(std::max(std::abs(domain.lo), std::abs(domain.hi)));
  VecFn out;
  out.domain = domain.shrunk(margin);
  out.eval = [plain = std::move(plain)](double u) {
    VecJet j;
    const double h = default_fd_step(u);
    for (int k = 0; k < 3; ++k) {
      const Jet3 c = fd_jet([&](double t) { return plain(t)[k]; }, u, h);
      for (int m = 0; m < 4; ++m) j.d[m][k] = c[m];
    }
    // fd_jet carries three derivatives; nothing is known beyond
    return j;
  };
  return out;
}

namespace {

constexpr double binom(int n, int k) {
  constexpr double table[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  return table[n][k];
}

}  // namespace

Jet3 triple(const VecJet& a, const VecJet& b, const VecJet& c) {
  double out[4] = {0, 0, 0, 0};
  // Leibniz rule for the trilinear form.
  for (int n = 0; n < 4; ++n) {
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; i + j <= n; ++j) {
        const int k = n - i - j;
        const double coeff = binom(n, i) * binom(n - i, j);
        out[n] += coeff * triple(a.d[i], b.d[j], c.d[k]);
      }
    }
  }
  return {out[0], out[1], out[2], out[3]};
}

Jet3 dot(const VecJet& a, const VecJet& b) {
  double out[4] = {0, 0, 0, 0};
  for (int n = 0; n < 4; ++n) {
    for (int i = 0; i <= n; ++i) out[n] += binom(n, i) * a.d[i].dot(b.d[n - i]);
  }
  return {out[0], out[1], out[2], out[3]};
}

VecJet shift(const VecJet& a) {
  VecJet out;
  out.d = {a.d[1], a.d[2], a.d[3], Vec3::Constant(std::numeric_limits<double>::quiet_NaN())};
  return out;
}

}  // namespace rulekit
