#pragma once

// Canonical stable/unstable holonomies of locally constant cocycles.

#include <vector>

#include "gl2tf/cocycle.hpp"

namespace gl2tf {

struct HolonomyResult {
  Mat2 h = Mat2::identity();
  long truncation_n = 0;  // steps after which A^n(y)^-1 A^n(x) is constant
  double error_bound = 0.0;
  bool exact = true;
};

// H^s_{x,y} = lim_{n->+inf} A^n(y)^-1 A^n(x). Once sigma^n x and sigma^n y
// agree on every window the factors cancel, so the limit is reached at a
// finite n computed from the point descriptions. Throws NotOnStableSet.
HolonomyResult stable_holonomy(const Cocycle& a, const Point& x, const Point& y);

// H^u_{x,y} = lim_{n->-inf} A^n(y)^-1 A^n(x). Throws NotOnUnstableSet.
HolonomyResult unstable_holonomy(const Cocycle& a, const Point& x, const Point& y);

// psi_p^z = H^s_{z,p} H^u_{p,z}. Throws NotHomoclinic unless p is periodic,
// z != p and z lies in both invariant sets of p.
Mat2 holonomy_loop(const Cocycle& a, const Point& p, const Point& z);

// H[a,b,c,d] = H^u_{d,a} H^s_{c,d} H^u_{b,c} H^s_{a,b}. Throws NotARectangle
// unless b in W^s_loc(a), c in W^u_loc(b), d in W^s_loc(c), a in W^u_loc(d).
Mat2 holonomy_rectangle(const Cocycle& co, const Point& a, const Point& b, const Point& c, const Point& d);

struct HolderFit {
  double exponent = 0.0;   // slope of log ||H - I|| against log d(x, y)
  double constant = 0.0;   // exp(intercept)
  std::size_t pairs_used = 0;  // pairs with H != I
};

// Least-squares fit over the supplied local stable pairs; pairs whose
// holonomy is exactly I carry no information and are skipped.
HolderFit holder_diagnostic(const Cocycle& a, const std::vector<std::pair<Point, Point>>& pairs);

}  // namespace gl2tf
