#include "wirecov/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wirecov/errors.hpp"

namespace wirecov {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kNodes = 32;
constexpr std::size_t kNodesLo = 20;
constexpr double kFarRadius = 2.0;
constexpr int kMaxDepth = 40;
// |hi - lo| compares the 32- and 20-node rules, so it bounds the error of the
// coarse one; 2e-13 sits just above the roundoff floor of the sums.
constexpr double kAcceptRel = 2e-13;

/// w^e on the closed upper half-plane with arg(w) in [0, π]. The cut of the
/// principal branch is approached from above, matching limits from H.
Complex hpow(Complex w, double e) {
  const double im = w.imag() > 0.0 ? w.imag() : 0.0;
  const double r = std::hypot(w.real(), im);
  const double th = std::atan2(im, w.real());
  const double m = std::pow(r, e);
  return {m * std::cos(e * th), m * std::sin(e * th)};
}

Complex clamp_upper(Complex z) {
  if (z.imag() < 0.0 || (z.imag() == 0.0 && std::signbit(z.imag()))) {
    if (z.imag() < -1e-9 * std::max(1.0, std::abs(z))) throw ValidationError("point below the real axis");
    return {z.real(), 0.0};
  }
  return z;
}

double interior_angle(Point2 at, Point2 prev, Point2 next) {
  const Vec2 u = prev - at, v = next - at;
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

}  // namespace

SCTriangleMap::SCTriangleMap(Point2 p1, Point2 p2, Point2 apex, std::size_t grid)
    : p1_(p1), p2_(p2), apex_(apex) {
  diam_ = std::max({distance(p1, p2), distance(p2, apex), distance(apex, p1)});
  const double area2 = cross(p2 - p1, apex - p1);
  if (!(diam_ > 0.0) || !(area2 > 2e-12 * diam_ * diam_))
    throw DegenerateTriangle("triangle must be non-degenerate with apex left of p1->p2");
  alpha_[0] = interior_angle(p1, apex, p2) / kPi;
  alpha_[1] = interior_angle(p2, p1, apex) / kPi;
  alpha_[2] = 1.0 - alpha_[0] - alpha_[1];
  for (double a : alpha_)
    if (!(a > 0.0 && a < 1.0)) throw DegenerateTriangle("triangle angle out of range");

  const double e1 = alpha_[0] - 1.0, e2 = alpha_[1] - 1.0, e3 = alpha_[2] - 1.0;
  rot2_ = std::polar(1.0, -kPi * e2);
  gj_left_ = gauss_jacobi(kNodes, 0.0, e1);
  gj_left_lo_ = gauss_jacobi(kNodesLo, 0.0, e1);
  gj_right_ = gauss_jacobi(kNodes, 0.0, e2);
  gj_right_lo_ = gauss_jacobi(kNodesLo, 0.0, e2);
  gj_inf_ = gauss_jacobi(kNodes, 0.0, e3);
  gj_inf_lo_ = gauss_jacobi(kNodesLo, 0.0, e3);
  gl_ = gauss_legendre(kNodes);
  gl_lo_ = gauss_legendre(kNodesLo);

  // ∫_{-1}^{1} (1+χ)^{α1-1} (1-χ)^{α2-1} dχ: the weight alone, integrated exactly by its own rule
  const QuadratureRule base = gauss_jacobi(kNodes, e2, e1);
  I0_ = 0.0;
  for (double w : base.weights) I0_ += w;
  C_ = (to_complex(p2) - to_complex(p1)) / I0_;

  // Warm-start grid: polar grid in the disk, pushed to H by ω -> i(1+ω)/(1-ω).
  grid_z_.reserve(grid * grid);
  grid_x_.reserve(grid * grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
    const double r = 1.0 - std::pow(1.0 - t, 4);
    for (std::size_t j = 0; j < grid; ++j) {
      const double phi = 2.0 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(grid);
      const Complex w = std::polar(r, phi);
      const Complex z = Complex(0.0, 1.0) * (1.0 + w) / (1.0 - w);
      grid_z_.push_back(z);
      grid_x_.push_back(forward(z));
    }
  }
}

SCTriangleMap build_triangle_map(Point2 p1, Point2 p2, Point2 apex, std::size_t grid) {
  return SCTriangleMap(p1, p2, apex, grid);
}

// Integrand at χ = anchor + d. With a prevertex anchor the factor that
// vanishes there is formed from d directly.
Complex SCTriangleMap::integrand(int anchor, Complex d) const {
  const double e1 = alpha_[0] - 1.0, e2 = alpha_[1] - 1.0;
  if (anchor < 0) return hpow(d, e1) * hpow(d - 2.0, e2) * rot2_;
  if (anchor > 0) return hpow(d + 2.0, e1) * hpow(d, e2) * rot2_;
  return hpow(d + 1.0, e1) * hpow(d - 1.0, e2) * rot2_;
}

AnchoredPoint SCTriangleMap::normalize(const AnchoredPoint& z) const {
  AnchoredPoint a{z.anchor, clamp_upper(z.offset)};
  if (a.anchor != 0 && std::abs(a.offset) <= 1.0) return a;
  const Complex v = a.value();
  if (std::abs(v) >= kFarRadius) return {0, v};
  const int w = v.real() <= 0.0 ? -1 : 1;
  return {w, v - static_cast<double>(w)};
}

// ∫ from the anchor prevertex over offsets [0, end], singular like d^exponent at 0.
Complex SCTriangleMap::gj_panel(const QuadratureRule& rule, int anchor, Complex end, double exponent) const {
  const Complex half = 0.5 * end;
  Complex sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double s = rule.nodes[i];
    sum += rule.weights[i] * integrand(anchor, half * (1.0 + s)) * std::pow(1.0 + s, -exponent);
  }
  return half * sum;
}

Complex SCTriangleMap::gl_adaptive(int anchor, Complex a, Complex b, int depth) const {
  auto panel = [&](const QuadratureRule& rule) {
    const Complex half = 0.5 * (b - a), mid = 0.5 * (a + b);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * integrand(anchor, mid + half * rule.nodes[i]);
    return half * sum;
  };
  const Complex hi = panel(gl_), lo = panel(gl_lo_);
  const double err = std::abs(hi - lo) * std::abs(C_);
  if (err <= kAcceptRel * diam_) return hi;
  if (depth >= kMaxDepth) {
    if (err <= 1e-10 * diam_) return hi;
    throw QuadratureFailure("Gauss-Legendre refinement exhausted");
  }
  const Complex m = 0.5 * (a + b);
  return gl_adaptive(anchor, a, m, depth + 1) + gl_adaptive(anchor, m, b, depth + 1);
}

Complex SCTriangleMap::from_prevertex(int anchor, Complex offset) const {
  const bool left = anchor < 0;
  const double e = left ? alpha_[0] - 1.0 : alpha_[1] - 1.0;
  const QuadratureRule& hi_rule = left ? gj_left_ : gj_right_;
  const QuadratureRule& lo_rule = left ? gj_left_lo_ : gj_right_lo_;
  Complex end = offset;
  Complex tail = 0.0;
  for (int depth = 0;; ++depth) {
    const Complex hi = gj_panel(hi_rule, anchor, end, e);
    const Complex lo = gj_panel(lo_rule, anchor, end, e);
    const double err = std::abs(hi - lo) * std::abs(C_);
    if (err <= kAcceptRel * diam_ || depth >= kMaxDepth) {
      if (err > 1e-10 * diam_) throw QuadratureFailure("Gauss-Jacobi refinement exhausted");
      return hi + tail;
    }
    // keep the singular panel, halve it, hand the rest to Gauss–Legendre
    const Complex mid = 0.5 * end;
    tail += gl_adaptive(anchor, mid, end, depth + 1);
    end = mid;
  }
}

// ∫_z^∞ with χ = z/u, u ∈ (0, 1]: u^{α3-1} · z (z+u)^{α1-1} (z-u)^{α2-1} e^{-iπ(α2-1)}.
Complex SCTriangleMap::from_infinity(Complex z) const {
  const double e1 = alpha_[0] - 1.0, e2 = alpha_[1] - 1.0, e3 = alpha_[2] - 1.0;
  auto panel = [&](const QuadratureRule& rule) {
    Complex sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double u = 0.5 * (1.0 + rule.nodes[i]);
      sum += rule.weights[i] * hpow(z + u, e1) * hpow(z - u, e2);
    }
    return z * rot2_ * sum * std::pow(2.0, -(e3 + 1.0));
  };
  const Complex hi = panel(gj_inf_), lo = panel(gj_inf_lo_);
  if (std::abs(hi - lo) * std::abs(C_) > 1e-10 * diam_)
    throw QuadratureFailure("apex-side Gauss-Jacobi panel did not converge");
  return hi;
}

Complex SCTriangleMap::forward_at(const AnchoredPoint& z_in) const {
  const AnchoredPoint z = normalize(z_in);
  if (z.anchor == 0) return to_complex(apex_) - C_ * from_infinity(z.offset);
  const Point2 base = z.anchor < 0 ? p1_ : p2_;
  if (z.offset == Complex(0.0, 0.0)) return to_complex(base);
  return to_complex(base) + C_ * from_prevertex(z.anchor, z.offset);
}

Complex SCTriangleMap::derivative_at(const AnchoredPoint& z_in) const {
  const AnchoredPoint z = normalize(z_in);
  if (z.anchor != 0 && z.offset == Complex(0.0, 0.0)) throw SingularPoint("derivative at a prevertex");
  return C_ * integrand(z.anchor, z.offset);
}

AnchoredPoint SCTriangleMap::newton(Point2 x, AnchoredPoint z0, int max_iter, double& residual) const {
  const Complex target = to_complex(x);
  AnchoredPoint z = normalize(z0);
  Complex F = forward_at(z) - target;
  double r = std::abs(F);
  const double converged = 1e-13 * diam_;
  for (int it = 0; it < max_iter && r > converged; ++it) {
    if (z.anchor != 0 && z.offset == Complex(0.0, 0.0)) z.offset = Complex(0.0, 1e-300);
    const Complex d = derivative_at(z);
    if (!(std::abs(d) > 0.0) || !std::isfinite(std::abs(d))) break;
    const Complex step = -F / d;
    double lambda = 1.0;
    bool accepted = false;
    while (lambda > 1e-3) {
      AnchoredPoint zn{z.anchor, z.offset + lambda * step};
      if (zn.offset.imag() < 0.0) zn.offset = {zn.offset.real(), 0.0};
      zn = normalize(zn);
      const Complex Fn = forward_at(zn) - target;
      const double rn = std::abs(Fn);
      if (rn < r) {
        z = zn;
        F = Fn;
        r = rn;
        accepted = true;
        break;
      }
      if (r <= kInverseTol * diam_) break;  // at the quadrature floor already
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  residual = r;
  return z;
}

UpperHalfPoint SCTriangleMap::inverse(Point2 x, std::optional<UpperHalfPoint> hint) const {
  std::optional<AnchoredPoint> h;
  if (hint) h = AnchoredPoint{0, *hint};
  return inverse_anchored(x, h).value();
}

AnchoredPoint SCTriangleMap::inverse_anchored(Point2 x, std::optional<AnchoredPoint> hint) const {
  if (distance(x, apex_) < kApexGuard * diam_) throw ApexExcluded("point inside the apex guard");
  const Complex X = to_complex(x);

  if (hint) {
    double r;
    const AnchoredPoint z = newton(x, *hint, 100, r);
    if (r <= kInverseTol * diam_) return z;
  }

  std::vector<AnchoredPoint> starts;
  {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid_x_.size(); ++i) {
      const double d = distance(grid_x_[i], x);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    if (!grid_z_.empty()) starts.push_back({0, grid_z_[best]});
  }
  // local power-law models at the three vertices
  {
    const double a1 = alpha_[0], a2 = alpha_[1], a3 = alpha_[2];
    const Complex q1 = a1 * (X - to_complex(p1_)) / (C_ * std::pow(2.0, a2 - 1.0));
    const double th1 = std::clamp(std::arg(q1), 0.0, a1 * kPi);
    starts.push_back({-1, std::polar(std::pow(std::abs(q1), 1.0 / a1), th1 / a1)});
    const Complex q2 = a2 * (X - to_complex(p2_)) / (C_ * std::pow(2.0, a1 - 1.0) * rot2_);
    const double th2 = std::clamp(std::arg(q2), 0.0, a2 * kPi);
    starts.push_back({1, std::polar(std::pow(std::abs(q2), 1.0 / a2), th2 / a2)});
    const Complex q3 = a3 * (to_complex(apex_) - X) / (C_ * rot2_);
    const double th3 = std::clamp(std::arg(q3), -a3 * kPi, 0.0);
    starts.push_back({0, std::polar(std::pow(std::abs(q3), -1.0 / a3), -th3 / a3)});
  }

  std::vector<std::pair<double, AnchoredPoint>> ranked;
  for (const AnchoredPoint& s : starts) {
    if (!std::isfinite(s.offset.real()) || !std::isfinite(s.offset.imag())) continue;
    ranked.emplace_back(std::abs(forward_at(s) - X), s);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  const double accept = kInverseTol * diam_;
  double best_r = std::numeric_limits<double>::infinity();
  AnchoredPoint best_z = ranked.empty() ? AnchoredPoint{0, Complex(0.0, 1.0)} : ranked.front().second;
  for (const auto& [r0, z0] : ranked) {
    double r;
    const AnchoredPoint z = newton(x, z0, 100, r);
    if (r < best_r) {
      best_r = r;
      best_z = z;
    }
    if (r <= accept) return best_z;
  }

  // continuation from the best start along the straight image path
  if (!ranked.empty()) {
    AnchoredPoint z = ranked.front().second;
    const Point2 y0 = to_point(forward_at(z));
    constexpr int kStages = 32;
    double r = 0.0;
    for (int k = 1; k <= kStages; ++k) {
      const Point2 yk = y0 + (static_cast<double>(k) / kStages) * (x - y0);
      z = newton(yk, z, 30, r);
    }
    z = newton(x, z, 100, r);
    if (r < best_r) {
      best_r = r;
      best_z = z;
    }
    if (r <= accept) return best_z;
  }
  throw NoConvergence("SC inverse did not converge", best_r / diam_);
}

}  // namespace wirecov
