#include "gl2tf/holonomy.hpp"

#include <algorithm>
#include <cmath>

#include "gl2tf/error.hpp"

namespace gl2tf {

HolonomyResult stable_holonomy(const Cocycle& a, const Point& x, const Point& y) {
  const auto s = x.stable_agreement(y);
  if (!s) throw Error(ErrorCode::NotOnStableSet, "y is not in the stable set of x");
  HolonomyResult out;
  if (*s == Point::kEverywhere) return out;
  const long n = std::max(0L, *s + a.depth());
  out.truncation_n = n;
  out.h = a.product(y, n).inverse() * a.product(x, n);
  return out;
}

HolonomyResult unstable_holonomy(const Cocycle& a, const Point& x, const Point& y) {
  const auto t = x.unstable_agreement(y);
  if (!t) throw Error(ErrorCode::NotOnUnstableSet, "y is not in the unstable set of x");
  HolonomyResult out;
  if (*t == -Point::kEverywhere) return out;
  const long m = std::max(0L, a.depth() - *t - 1);
  out.truncation_n = m;
  out.h = a.product(y.shifted(-m), m) * a.product(x.shifted(-m), m).inverse();
  return out;
}

Mat2 holonomy_loop(const Cocycle& a, const Point& p, const Point& z) {
  if (!p.is_periodic()) throw Error(ErrorCode::NotHomoclinic, "holonomy loop needs a periodic base point");
  if (z == p || !p.stable_agreement(z) || !p.unstable_agreement(z))
    throw Error(ErrorCode::NotHomoclinic, z.to_string() + " is not homoclinic to " + p.to_string());
  return stable_holonomy(a, z, p).h * unstable_holonomy(a, p, z).h;
}

Mat2 holonomy_rectangle(const Cocycle& co, const Point& a, const Point& b, const Point& c, const Point& d) {
  if (!in_local_stable_set(a, b) || !in_local_unstable_set(b, c) || !in_local_stable_set(c, d) ||
      !in_local_unstable_set(d, a))
    throw Error(ErrorCode::NotARectangle, "points do not form a holonomy rectangle");
  return unstable_holonomy(co, d, a).h * stable_holonomy(co, c, d).h * unstable_holonomy(co, b, c).h *
         stable_holonomy(co, a, b).h;
}

HolderFit holder_diagnostic(const Cocycle& a, const std::vector<std::pair<Point, Point>>& pairs) {
  std::vector<double> xs, ys;
  for (const auto& [x, y] : pairs) {
    const Mat2 h = stable_holonomy(a, x, y).h;
    const double dev = operator_norm(h - Mat2::identity());
    const double d = metric(a.shift(), x, y);
    if (dev <= 0.0 || d <= 0.0) continue;
    xs.push_back(std::log(d));
    ys.push_back(std::log(dev));
  }
  HolderFit fit;
  fit.pairs_used = xs.size();
  if (xs.size() < 2) return fit;
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.exponent = sxy / sxx;
  fit.constant = std::exp(my - fit.exponent * mx);
  return fit;
}

}  // namespace gl2tf
