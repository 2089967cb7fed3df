#include "qths/expdd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qths {

cplx phi1(cplx w) {
  if (std::abs(w) < 1e-3) {
    // 1 + w/2 + w^2/6 + w^3/24 + w^4/120; truncation ~ |w|^5/720
    return 1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w / 120.0)));
  }
  return (std::exp(w) - 1.0) / w;
}

cplx kernel_M(cplx g1, cplx g2, double x) {
  const cplx w = (g2 - g1) * x;
  if (std::abs(w) < 1e-3) {
    return -x * std::exp(-g2 * x) * phi1(w);
  }
  return (std::exp(-g1 * x) - std::exp(-g2 * x)) / (g1 - g2);
}

cplx exp_dd2(cplx g1, cplx g2, cplx g3, double x) {
  const double s12 = std::abs(g1 - g2) * x;
  const double s13 = std::abs(g1 - g3) * x;
  const double s23 = std::abs(g2 - g3) * x;
  const double smax = std::max({s12, s13, s23});
  if (smax < 0.5) {
    // series around the node mean; dd2 of g^n is the complete homogeneous
    // symmetric polynomial h_{n-2} of the shifted nodes
    const cplx m = (g1 + g2 + g3) / 3.0;
    const cplx d1 = g1 - m, d2 = g2 - m, d3 = g3 - m;
    cplx sum = 0.0;
    cplx xpow = x * x / 2.0; // (-x)^2 / 2!
    // h_k by the three-variable recurrence
    std::vector<cplx> h{{1.0, 0.0}};
    for (int n = 2; n <= 24; ++n) {
      const cplx term = xpow * h.back();
      sum += term;
      if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30) && n > 4) break;
      // next h: h_k(d1,d2,d3) via DP over variables
      const int k = static_cast<int>(h.size());
      cplx hk = 0.0;
      {
        // h_k(x1..x3) = sum over partitions; iterative: two-variable first
        // h_k(d1,d2) = sum_{i=0}^{k} d1^i d2^{k-i}
        cplx h2 = 0.0;
        for (int i = 0; i <= k; ++i) h2 += std::pow(d1, i) * std::pow(d2, k - i);
        // fold in d3: h_k(d1,d2,d3) = sum_{j=0}^{k} d3^j h_{k-j}(d1,d2)
        for (int j = 0; j <= k; ++j) {
          cplx h2kj = 0.0;
          for (int i = 0; i <= k - j; ++i) h2kj += std::pow(d1, i) * std::pow(d2, k - j - i);
          hk += std::pow(d3, j) * h2kj;
        }
      }
      h.push_back(hk);
      xpow *= -x / (n + 1);
    }
    return std::exp(-m * x) * sum;
  }
  // recursive form dividing by the largest gap
  if (s13 >= std::max(s12, s23)) {
    return (kernel_M(g1, g2, x) - kernel_M(g2, g3, x)) / (g1 - g3);
  }
  if (s12 >= s23) {
    return (kernel_M(g1, g3, x) - kernel_M(g3, g2, x)) / (g1 - g2);
  }
  return (kernel_M(g2, g1, x) - kernel_M(g1, g3, x)) / (g2 - g3);
}

cplx psi_moment(int k, cplx z) {
  if (k < 0 || k > 12) throw std::invalid_argument("psi_moment: k out of range");
  if (std::abs(z) <= 2.0) {
    cplx sum = 0.0;
    cplx zn = 1.0;
    double fact = 1.0;
    for (int n = 0; n <= 40; ++n) {
      const cplx term = zn / (fact * (k + n + 1));
      sum += term;
      if (std::abs(term) < 1e-19 * std::abs(sum) && n > 3) break;
      zn *= z;
      fact *= (n + 1);
    }
    return sum;
  }
  cplx psi = phi1(z); // psi_0
  const cplx ez = std::exp(z);
  for (int j = 1; j <= k; ++j) psi = (ez - static_cast<double>(j) * psi) / z;
  return psi;
}

cplx exp_cell_moment(int k, cplx g, double h) {
  double hp = h;
  for (int i = 0; i < k; ++i) hp *= h;
  return hp * h * psi_moment(k, -g * h) / h; // h^{k+1} psi_k(-g h)
}

cplx ExpProfile::eval(double x) const {
  cplx s = 0.0;
  for (const ExpTerm& t : terms) {
    double xp = 1.0;
    for (int i = 0; i < t.p; ++i) xp *= x;
    s += t.c * xp * std::exp(-t.gamma * x);
  }
  return s;
}

ExpProfile ExpProfile::derivative() const {
  ExpProfile d;
  d.terms.reserve(2 * terms.size());
  for (const ExpTerm& t : terms) {
    if (t.p > 0) d.terms.push_back({t.p - 1, t.gamma, t.c * static_cast<double>(t.p)});
    d.terms.push_back({t.p, t.gamma, -t.c * t.gamma});
  }
  d.compress();
  return d;
}

ExpProfile ExpProfile::scaled(cplx s) const {
  ExpProfile out = *this;
  for (ExpTerm& t : out.terms) t.c *= s;
  return out;
}

ExpProfile& ExpProfile::operator+=(const ExpProfile& o) {
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  compress();
  return *this;
}

void ExpProfile::compress(double drop_tol) {
  std::vector<ExpTerm> out;
  double scale = 0.0;
  for (const ExpTerm& t : terms) scale = std::max(scale, std::abs(t.c));
  for (const ExpTerm& t : terms) {
    bool merged = false;
    for (ExpTerm& o : out) {
      if (o.p == t.p && o.gamma == t.gamma) {
        o.c += t.c;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(t);
  }
  if (drop_tol > 0.0) {
    std::erase_if(out, [&](const ExpTerm& t) { return std::abs(t.c) < drop_tol * scale; });
  }
  terms = std::move(out);
}

ExpProfile operator*(cplx s, const ExpProfile& p) { return p.scaled(s); }

ExpProfile operator+(ExpProfile a, const ExpProfile& b) {
  a += b;
  return a;
}

} // namespace qths
