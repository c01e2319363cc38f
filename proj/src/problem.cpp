#include "omffm/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace omffm {

namespace {

constexpr double kPi = std::numbers::pi;

Box unit_box(int n) { return Box{DecisionVector(n, 0.0), DecisionVector(n, 1.0)}; }

Box symmetric_box(int n, double a) { return Box{DecisionVector(n, -a), DecisionVector(n, a)}; }

// Evenly spaced subsample keeping the first and last survivors.
std::vector<ObjectiveVector> subsample(std::vector<ObjectiveVector> pts, int count) {
  if (count <= 0 || pts.empty()) return {};
  if (static_cast<int>(pts.size()) <= count) return pts;
  std::vector<ObjectiveVector> out;
  out.reserve(count);
  const double stride = static_cast<double>(pts.size() - 1) / (count > 1 ? count - 1 : 1);
  std::size_t prev = static_cast<std::size_t>(-1);
  for (int i = 0; i < count; ++i) {
    auto idx = static_cast<std::size_t>(std::llround(i * stride));
    if (idx != prev) out.push_back(pts[idx]);
    prev = idx;
  }
  return out;
}

// Dense parametric curve -> non-dominated subset -> count points.
std::vector<ObjectiveVector> curve_front(int count,
                                         const std::function<ObjectiveVector(double)>& curve) {
  const int dense = std::max(4000, 8 * count);
  std::vector<ObjectiveVector> pts;
  pts.reserve(dense + 1);
  for (int i = 0; i <= dense; ++i) pts.push_back(curve(static_cast<double>(i) / dense));
  bool f1_increasing = pts.front().size() == 2;
  for (std::size_t i = 1; f1_increasing && i < pts.size(); ++i)
    f1_increasing = pts[i - 1][0] < pts[i][0];
  if (f1_increasing) {
    // With f1 strictly increasing, a point is dominated exactly when some
    // earlier point has f2 <= its f2: a running-minimum scan suffices.
    std::vector<ObjectiveVector> kept;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : pts) {
      if (f[1] < best) {
        best = f[1];
        kept.push_back(f);
      }
    }
    return subsample(std::move(kept), count);
  }
  return subsample(nondominated_filter(pts), count);
}

// --- P-family builders ------------------------------------------------------

MopProblem make_p1() {
  MopProblem p;
  p.name = "P1";
  p.n = 5;
  p.m = 2;
  p.box = symmetric_box(5, 1.0);
  p.objectives = [](const DecisionVector& y) {
    double f1 = y[0] * y[0] - y[1] * y[1] + 2.0 * y[2] * y[2] - 3.0 * y[3] * y[3];
    double f2 = 0.0;
    for (double v : y) f2 += v * v * v * v - v * v;
    return ObjectiveVector{f1, f2};
  };
  p.jacobian = [](const DecisionVector& y) {
    Jacobian J(2, std::vector<double>(5, 0.0));
    J[0] = {2.0 * y[0], -2.0 * y[1], 4.0 * y[2], -6.0 * y[3], 0.0};
    for (int i = 0; i < 5; ++i) J[1][i] = 4.0 * y[i] * y[i] * y[i] - 2.0 * y[i];
    return J;
  };
  // No closed-form front is known for P1; reference fronts come from the
  // multi-start oracle in the benchmark tooling.
  return p;
}

MopProblem make_p2() {
  const int n = 40;
  MopProblem p;
  p.name = "P2";
  p.n = n;
  p.m = 2;
  p.box = unit_box(n);
  auto gsum = [n](const DecisionVector& y) {
    double g = 0.0;
    for (int i = 1; i < n; ++i) g += (y[i] - 0.5) * (y[i] - 0.5);
    return g;
  };
  p.objectives = [gsum](const DecisionVector& y) {
    const double g = gsum(y);
    const double a = 0.5 * kPi * y[0];
    return ObjectiveVector{(1.0 + g) * std::cos(a), (1.0 + g) * std::sin(a)};
  };
  p.jacobian = [gsum, n](const DecisionVector& y) {
    const double g = gsum(y);
    const double a = 0.5 * kPi * y[0];
    const double c = std::cos(a), s = std::sin(a);
    Jacobian J(2, std::vector<double>(n, 0.0));
    J[0][0] = -(1.0 + g) * 0.5 * kPi * s;
    J[1][0] = (1.0 + g) * 0.5 * kPi * c;
    for (int i = 1; i < n; ++i) {
      J[0][i] = 2.0 * (y[i] - 0.5) * c;
      J[1][i] = 2.0 * (y[i] - 0.5) * s;
    }
    return J;
  };
  p.front_sampler = [](int count) {
    return curve_front(count, [](double t) {
      const double a = 0.5 * kPi * t;
      return ObjectiveVector{std::cos(a), std::sin(a)};
    });
  };
  return p;
}

MopProblem make_p3() {
  const int n = 7;
  MopProblem p;
  p.name = "P3";
  p.n = n;
  p.m = 2;
  p.box = unit_box(n);
  auto gsum = [n](const DecisionVector& y) {
    double g = 0.0;
    for (int i = 1; i < n; ++i) g += (y[i] - 0.5) * (y[i] - 0.5);
    return g;
  };
  auto a = [](double t) { return t * (1.0 + 0.2 * std::sin(10.0 * kPi * t)); };
  auto b = [](double t) { return (1.0 - t) * (1.0 + 0.2 * std::cos(10.0 * kPi * t)); };
  p.objectives = [gsum, a, b](const DecisionVector& y) {
    const double g = gsum(y);
    return ObjectiveVector{(1.0 + g) * a(y[0]), (1.0 + g) * b(y[0])};
  };
  p.jacobian = [gsum, a, b, n](const DecisionVector& y) {
    const double g = gsum(y);
    const double t = y[0];
    const double da = (1.0 + 0.2 * std::sin(10.0 * kPi * t)) + t * 2.0 * kPi * std::cos(10.0 * kPi * t);
    const double db = -(1.0 + 0.2 * std::cos(10.0 * kPi * t)) - (1.0 - t) * 2.0 * kPi * std::sin(10.0 * kPi * t);
    Jacobian J(2, std::vector<double>(n, 0.0));
    J[0][0] = (1.0 + g) * da;
    J[1][0] = (1.0 + g) * db;
    for (int i = 1; i < n; ++i) {
      J[0][i] = 2.0 * (y[i] - 0.5) * a(t);
      J[1][i] = 2.0 * (y[i] - 0.5) * b(t);
    }
    return J;
  };
  p.front_sampler = [a, b](int count) {
    return curve_front(count, [a, b](double t) { return ObjectiveVector{a(t), b(t)}; });
  };
  return p;
}

MopProblem make_p4(const std::string& name, int n) {
  MopProblem p;
  p.name = name;
  p.n = n;
  p.m = 2;
  p.box = unit_box(n);
  auto gval = [n](const DecisionVector& y) {
    double s = 0.0;
    for (int i = 1; i < n; ++i) s += y[i] * y[i];
    return 1.0 + 4.0 / (n - 1) * s;
  };
  p.objectives = [gval](const DecisionVector& y) {
    const double g = gval(y);
    const double t = y[0];
    const double f2 = g * (1.0 - (t / g) * (t / g) - 0.3 * t * std::sin(10.0 * kPi * t));
    return ObjectiveVector{t, f2};
  };
  p.jacobian = [gval, n](const DecisionVector& y) {
    const double g = gval(y);
    const double t = y[0];
    const double st = std::sin(10.0 * kPi * t), ct = std::cos(10.0 * kPi * t);
    Jacobian J(2, std::vector<double>(n, 0.0));
    J[0][0] = 1.0;
    J[1][0] = -2.0 * t / g - 0.3 * g * (st + 10.0 * kPi * t * ct);
    const double dfdg = 1.0 + (t / g) * (t / g) - 0.3 * t * st;
    for (int i = 1; i < n; ++i) J[1][i] = 8.0 * y[i] / (n - 1) * dfdg;
    return J;
  };
  // f2 is increasing in g, so the global front lies on the g = 1 curve
  // (all tail variables zero).
  p.front_sampler = [](int count) {
    return curve_front(count, [](double t) {
      return ObjectiveVector{t, 1.0 - t * t - 0.3 * t * std::sin(10.0 * kPi * t)};
    });
  };
  return p;
}

MopProblem make_p5(const std::string& name, int n) {
  MopProblem p;
  p.name = name;
  p.n = n;
  p.m = 2;
  p.box = unit_box(n);
  auto gval = [n](const DecisionVector& y) {
    double s = 0.0;
    for (int i = 1; i < n; ++i) s += y[i];
    return 1.0 + 3.0 / (n - 1) * s;
  };
  p.objectives = [gval](const DecisionVector& y) {
    const double g = gval(y);
    const double t = y[0];
    const double f2 = g * (1.0 - t / g - 0.4 * std::exp(-5.0 * t) * std::sin(8.0 * kPi * t));
    return ObjectiveVector{t, f2};
  };
  p.jacobian = [gval, n](const DecisionVector& y) {
    const double g = gval(y);
    const double t = y[0];
    const double e = std::exp(-5.0 * t);
    const double st = std::sin(8.0 * kPi * t), ct = std::cos(8.0 * kPi * t);
    Jacobian J(2, std::vector<double>(n, 0.0));
    J[0][0] = 1.0;
    J[1][0] = -1.0 - 0.4 * g * e * (8.0 * kPi * ct - 5.0 * st);
    for (int i = 1; i < n; ++i) J[1][i] = 3.0 / (n - 1) * (1.0 - 0.4 * e * st);
    return J;
  };
  p.front_sampler = [](int count) {
    return curve_front(count, [](double t) {
      return ObjectiveVector{t, 1.0 - t - 0.4 * std::exp(-5.0 * t) * std::sin(8.0 * kPi * t)};
    });
  };
  return p;
}

MopProblem make_p6(const std::string& name, int n) {
  MopProblem p;
  p.name = name;
  p.n = n;
  p.m = 3;
  p.box = unit_box(n);
  // 1-based even indices weigh 10, odd indices (>= 3) weigh 5; z_1 is free.
  auto weight = [](int i) { return (i % 2 == 1) ? 10.0 : 5.0; };  // i is 0-based
  auto gval = [n, weight](const DecisionVector& z) {
    double g = 1.0;
    for (int i = 1; i < n; ++i) g += weight(i) * z[i];
    return g;
  };
  p.objectives = [gval](const DecisionVector& z) {
    const double g = gval(z);
    const double t = z[0];
    const double r = t / g;
    const double f2 = g * (1.0 - r * r - r * std::sin(8.0 * kPi * t));
    const double f3 = g * (1.0 - r * r - r * std::cos(12.0 * kPi * t));
    return ObjectiveVector{t, f2, f3};
  };
  p.jacobian = [gval, weight, n](const DecisionVector& z) {
    const double g = gval(z);
    const double t = z[0];
    const double s8 = std::sin(8.0 * kPi * t), c8 = std::cos(8.0 * kPi * t);
    const double s12 = std::sin(12.0 * kPi * t), c12 = std::cos(12.0 * kPi * t);
    Jacobian J(3, std::vector<double>(n, 0.0));
    J[0][0] = 1.0;
    J[1][0] = -2.0 * t / g - (s8 + 8.0 * kPi * t * c8);
    J[2][0] = -2.0 * t / g - (c12 - 12.0 * kPi * t * s12);
    const double dfdg = 1.0 + (t / g) * (t / g);
    for (int i = 1; i < n; ++i) {
      J[1][i] = weight(i) * dfdg;
      J[2][i] = weight(i) * dfdg;
    }
    return J;
  };
  p.front_sampler = [](int count) {
    return curve_front(count, [](double t) {
      return ObjectiveVector{t, 1.0 - t * t - t * std::sin(8.0 * kPi * t),
                             1.0 - t * t - t * std::cos(12.0 * kPi * t)};
    });
  };
  return p;
}

// --- ZDT family -------------------------------------------------------------

double zdt_g(const DecisionVector& y, int n) {
  double s = 0.0;
  for (int i = 1; i < n; ++i) s += y[i];
  return 1.0 + 9.0 / (n - 1) * s;
}

MopProblem make_zdt1() {
  const int n = 30;
  MopProblem p;
  p.name = "ZDT1";
  p.n = n;
  p.m = 2;
  p.box = unit_box(n);
  p.objectives = [n](const DecisionVector& y) {
    const double g = zdt_g(y, n);
    return ObjectiveVector{y[0], g - std::sqrt(y[0] * g)};
  };
  p.jacobian = [n](const DecisionVector& y) {
    const double g = zdt_g(y, n);
    const double t = std::max(y[0], 1e-12);  // sqrt kink at the lower bound
    Jacobian J(2, std::vector<double>(n, 0.0));
    J[0][0] = 1.0;
    J[1][0] = -0.5 * std::sqrt(g / t);
    for (int i = 1; i < n; ++i) J[1][i] = 9.0 / (n - 1) * (1.0 - 0.5 * std::sqrt(t / g));
    return J;
  };
  p.front_sampler = [](int count) {
    std::vector<ObjectiveVector> out;
    for (int i = 0; i < count; ++i) {
      const double t = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
      out.push_back({t, 1.0 - std::sqrt(t)});
    }
    return out;
  };
  return p;
}

MopProblem make_zdt2() {
  const int n = 30;
  MopProblem p;
  p.name = "ZDT2";
  p.n = n;
  p.m = 2;
  p.box = unit_box(n);
  p.objectives = [n](const DecisionVector& y) {
    const double g = zdt_g(y, n);
    return ObjectiveVector{y[0], g - y[0] * y[0] / g};
  };
  p.jacobian = [n](const DecisionVector& y) {
    const double g = zdt_g(y, n);
    Jacobian J(2, std::vector<double>(n, 0.0));
    J[0][0] = 1.0;
    J[1][0] = -2.0 * y[0] / g;
    for (int i = 1; i < n; ++i) J[1][i] = 9.0 / (n - 1) * (1.0 + y[0] * y[0] / (g * g));
    return J;
  };
  p.front_sampler = [](int count) {
    std::vector<ObjectiveVector> out;
    for (int i = 0; i < count; ++i) {
      const double t = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
      out.push_back({t, 1.0 - t * t});
    }
    return out;
  };
  return p;
}

MopProblem make_zdt3() {
  const int n = 30;
  MopProblem p;
  p.name = "ZDT3";
  p.n = n;
  p.m = 2;
  p.box = unit_box(n);
  p.objectives = [n](const DecisionVector& y) {
    const double g = zdt_g(y, n);
    const double t = y[0];
    return ObjectiveVector{t, g - std::sqrt(t * g) - t * std::sin(10.0 * kPi * t)};
  };
  p.jacobian = [n](const DecisionVector& y) {
    const double g = zdt_g(y, n);
    const double t = std::max(y[0], 1e-12);
    Jacobian J(2, std::vector<double>(n, 0.0));
    J[0][0] = 1.0;
    J[1][0] = -0.5 * std::sqrt(g / t) - std::sin(10.0 * kPi * t) - 10.0 * kPi * t * std::cos(10.0 * kPi * t);
    for (int i = 1; i < n; ++i) J[1][i] = 9.0 / (n - 1) * (1.0 - 0.5 * std::sqrt(t / g));
    return J;
  };
  p.front_sampler = [](int count) {
    return curve_front(count, [](double t) {
      return ObjectiveVector{t, 1.0 - std::sqrt(t) - t * std::sin(10.0 * kPi * t)};
    });
  };
  return p;
}

// --- DTLZ family ------------------------------------------------------------

MopProblem make_dtlz1(const std::string& name, int n, int m) {
  MopProblem p;
  p.name = name;
  p.n = n;
  p.m = m;
  p.box = unit_box(n);
  auto gval = [n, m](const DecisionVector& y) {
    double s = 0.0;
    for (int i = m - 1; i < n; ++i) {
      const double d = y[i] - 0.5;
      s += d * d - std::cos(20.0 * kPi * d);
    }
    return 100.0 * ((n - m + 1) + s);
  };
  p.objectives = [gval, m](const DecisionVector& y) {
    const double G = 1.0 + gval(y);
    ObjectiveVector f(m);
    for (int j = 0; j < m; ++j) {
      double v = 0.5 * G;
      for (int i = 0; i < m - 1 - j; ++i) v *= y[i];
      if (j > 0) v *= 1.0 - y[m - 1 - j];
      f[j] = v;
    }
    return f;
  };
  p.jacobian = [gval, n, m](const DecisionVector& y) {
    const double G = 1.0 + gval(y);
    Jacobian J(m, std::vector<double>(n, 0.0));
    for (int j = 0; j < m; ++j) {
      // shape(y) = prod_{i < m-1-j} y_i * (1 - y_{m-1-j} when j > 0)
      auto shape_without = [&](int skip) {
        double v = 1.0;
        for (int i = 0; i < m - 1 - j; ++i)
          if (i != skip) v *= y[i];
        if (j > 0 && skip != m - 1 - j) v *= 1.0 - y[m - 1 - j];
        return v;
      };
      double shape = 1.0;
      for (int i = 0; i < m - 1 - j; ++i) shape *= y[i];
      if (j > 0) shape *= 1.0 - y[m - 1 - j];
      for (int i = 0; i < m - 1 - j; ++i) J[j][i] = 0.5 * G * shape_without(i);
      if (j > 0) J[j][m - 1 - j] = -0.5 * G * shape_without(m - 1 - j);
      for (int i = m - 1; i < n; ++i) {
        const double d = y[i] - 0.5;
        const double dg = 100.0 * (2.0 * d + 20.0 * kPi * std::sin(20.0 * kPi * d));
        J[j][i] = 0.5 * shape * dg;
      }
    }
    return J;
  };
  if (m == 2) {
    p.front_sampler = [](int count) {
      std::vector<ObjectiveVector> out;
      for (int i = 0; i < count; ++i) {
        const double t = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
        out.push_back({0.5 * t, 0.5 * (1.0 - t)});
      }
      return out;
    };
  } else {
    p.front_sampler = [](int count) {
      // barycentric grid on the f1+f2+f3 = 0.5 simplex
      const int side = std::max(2, static_cast<int>(std::ceil(0.5 * (std::sqrt(8.0 * count + 1.0) - 1.0))));
      std::vector<ObjectiveVector> out;
      for (int i = 0; i <= side; ++i)
        for (int j = 0; j <= side - i; ++j) {
          const double a = static_cast<double>(i) / side;
          const double b = static_cast<double>(j) / side;
          out.push_back({0.5 * a, 0.5 * b, 0.5 * (1.0 - a - b)});
        }
      return subsample(std::move(out), count);
    };
  }
  return p;
}

MopProblem make_dtlz2(const std::string& name, int n, int m) {
  MopProblem p;
  p.name = name;
  p.n = n;
  p.m = m;
  p.box = unit_box(n);
  auto gval = [n, m](const DecisionVector& y) {
    double s = 0.0;
    for (int i = m - 1; i < n; ++i) s += (y[i] - 0.5) * (y[i] - 0.5);
    return s;
  };
  p.objectives = [gval, m](const DecisionVector& y) {
    const double G = 1.0 + gval(y);
    ObjectiveVector f(m);
    for (int j = 0; j < m; ++j) {
      double v = G;
      for (int i = 0; i < m - 1 - j; ++i) v *= std::cos(0.5 * kPi * y[i]);
      if (j > 0) v *= std::sin(0.5 * kPi * y[m - 1 - j]);
      f[j] = v;
    }
    return f;
  };
  p.jacobian = [gval, n, m](const DecisionVector& y) {
    const double G = 1.0 + gval(y);
    Jacobian J(m, std::vector<double>(n, 0.0));
    for (int j = 0; j < m; ++j) {
      auto term = [&](int i) {  // angular factor for coordinate i in f_j
        if (i < m - 1 - j) return std::cos(0.5 * kPi * y[i]);
        if (j > 0 && i == m - 1 - j) return std::sin(0.5 * kPi * y[i]);
        return 1.0;
      };
      auto dterm = [&](int i) {
        if (i < m - 1 - j) return -0.5 * kPi * std::sin(0.5 * kPi * y[i]);
        if (j > 0 && i == m - 1 - j) return 0.5 * kPi * std::cos(0.5 * kPi * y[i]);
        return 0.0;
      };
      double shape = 1.0;
      for (int i = 0; i < m - 1; ++i) shape *= term(i);
      for (int i = 0; i < m - 1; ++i) {
        double v = G * dterm(i);
        for (int q = 0; q < m - 1; ++q)
          if (q != i) v *= term(q);
        J[j][i] = v;
      }
      for (int i = m - 1; i < n; ++i) J[j][i] = 2.0 * (y[i] - 0.5) * shape;
    }
    return J;
  };
  if (m == 2) {
    p.front_sampler = [](int count) {
      std::vector<ObjectiveVector> out;
      for (int i = 0; i < count; ++i) {
        const double a = 0.5 * kPi * (count > 1 ? static_cast<double>(i) / (count - 1) : 0.0);
        out.push_back({std::cos(a), std::sin(a)});
      }
      return out;
    };
  } else {
    p.front_sampler = [](int count) {
      const int side = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)))));
      std::vector<ObjectiveVector> out;
      for (int i = 0; i <= side; ++i)
        for (int j = 0; j <= side; ++j) {
          const double u = 0.5 * kPi * i / side;
          const double v = 0.5 * kPi * j / side;
          out.push_back({std::cos(u) * std::cos(v), std::cos(u) * std::sin(v), std::sin(u)});
        }
      return subsample(nondominated_filter(out), count);
    };
  }
  return p;
}

// --- convex toys ------------------------------------------------------------

MopProblem make_bk1() {
  MopProblem p;
  p.name = "BK1";
  p.n = 2;
  p.m = 2;
  p.box = Box{{-5.0, -5.0}, {10.0, 10.0}};
  p.objectives = [](const DecisionVector& y) {
    return ObjectiveVector{y[0] * y[0] + y[1] * y[1],
                           (y[0] - 5.0) * (y[0] - 5.0) + (y[1] - 5.0) * (y[1] - 5.0)};
  };
  p.jacobian = [](const DecisionVector& y) {
    return Jacobian{{2.0 * y[0], 2.0 * y[1]}, {2.0 * (y[0] - 5.0), 2.0 * (y[1] - 5.0)}};
  };
  p.front_sampler = [](int count) {
    std::vector<ObjectiveVector> out;
    for (int i = 0; i < count; ++i) {
      const double t = 5.0 * (count > 1 ? static_cast<double>(i) / (count - 1) : 0.0);
      out.push_back({2.0 * t * t, 2.0 * (t - 5.0) * (t - 5.0)});
    }
    return out;
  };
  return p;
}

MopProblem make_sp1() {
  MopProblem p;
  p.name = "SP1";
  p.n = 2;
  p.m = 2;
  p.box = Box{{-1.0, -1.0}, {5.0, 5.0}};
  p.objectives = [](const DecisionVector& y) {
    const double d = y[0] - y[1];
    return ObjectiveVector{(y[0] - 1.0) * (y[0] - 1.0) + d * d, (y[1] - 3.0) * (y[1] - 3.0) + d * d};
  };
  p.jacobian = [](const DecisionVector& y) {
    const double d = y[0] - y[1];
    return Jacobian{{2.0 * (y[0] - 1.0) + 2.0 * d, -2.0 * d}, {2.0 * d, 2.0 * (y[1] - 3.0) - 2.0 * d}};
  };
  return p;
}

const std::map<std::string, std::function<MopProblem()>>& registry() {
  static const std::map<std::string, std::function<MopProblem()>> reg = [] {
    std::map<std::string, std::function<MopProblem()>> r;
    r["P1"] = make_p1;
    r["P2"] = make_p2;
    r["P3"] = make_p3;
    r["P4a"] = [] { return make_p4("P4a", 2); };
    r["P4b"] = [] { return make_p4("P4b", 50); };
    r["P4c"] = [] { return make_p4("P4c", 100); };
    r["P4d"] = [] { return make_p4("P4d", 150); };
    r["P5a"] = [] { return make_p5("P5a", 2); };
    r["P5b"] = [] { return make_p5("P5b", 50); };
    r["P5c"] = [] { return make_p5("P5c", 100); };
    r["P5d"] = [] { return make_p5("P5d", 150); };
    r["P6a"] = [] { return make_p6("P6a", 7); };
    r["P6b"] = [] { return make_p6("P6b", 50); };
    r["P6c"] = [] { return make_p6("P6c", 100); };
    r["P6d"] = [] { return make_p6("P6d", 150); };
    r["ZDT1"] = make_zdt1;
    r["ZDT2"] = make_zdt2;
    r["ZDT3"] = make_zdt3;
    r["DTLZ1"] = [] { return make_dtlz1("DTLZ1", 7, 3); };
    r["DTLZ1n2"] = [] { return make_dtlz1("DTLZ1n2", 2, 2); };
    r["DTLZ2"] = [] { return make_dtlz2("DTLZ2", 12, 3); };
    r["DTLZ2n2"] = [] { return make_dtlz2("DTLZ2n2", 2, 2); };
    r["BK1"] = make_bk1;
    r["SP1"] = make_sp1;
    return r;
  }();
  return reg;
}

}  // namespace

ObjectiveVector MopProblem::evaluate(const DecisionVector& y) const {
  if (static_cast<int>(y.size()) != n)
    throw std::invalid_argument(name + ": point dimension " + std::to_string(y.size()) +
                                " does not match n = " + std::to_string(n));
  if (!box.contains(y))
    throw std::domain_error(name + ": point outside the feasible box");
  eval_count->fetch_add(1, std::memory_order_relaxed);
  ObjectiveVector f = objectives(y);
  if (static_cast<int>(f.size()) != m)
    throw std::logic_error(name + ": objective function returned wrong arity");
  for (double v : f)
    if (!std::isfinite(v)) throw EvalError(name + ": non-finite objective value", y);
  return f;
}

Jacobian MopProblem::jacobian_or_fd(const DecisionVector& y) const {
  if (jacobian) return jacobian(y);
  return finite_diff_jacobian(*this, y, 1e-6);
}

MopProblem get_problem(const std::string& name) {
  const auto& reg = registry();
  auto it = reg.find(name);
  if (it == reg.end()) {
    std::ostringstream msg;
    msg << "unknown problem '" << name << "'; available:";
    for (const auto& [k, v] : reg) msg << ' ' << k;
    throw UnknownProblemError(msg.str());
  }
  MopProblem p = it->second();
  p.box.validate();
  return p;
}

std::vector<std::string> problem_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

Jacobian analytic_jacobian(const MopProblem& problem, const DecisionVector& y) {
  if (!problem.has_jacobian())
    throw CapabilityError(problem.name + ": no analytic jacobian registered");
  if (!problem.box.contains(y))
    throw std::domain_error(problem.name + ": point outside the feasible box");
  return problem.jacobian(y);
}

std::vector<ObjectiveVector> sample_true_front(const MopProblem& problem, int count) {
  if (count < 1) throw std::invalid_argument("count must be positive");
  if (!problem.has_front_sampler())
    throw CapabilityError(problem.name + ": no true-front sampler registered");
  return problem.front_sampler(count);
}

Jacobian finite_diff_jacobian(const MopProblem& problem, const DecisionVector& y, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  if (!problem.box.contains(y))
    throw std::domain_error(problem.name + ": point outside the feasible box");
  const int n = problem.n;
  const int m = problem.m;
  Jacobian J(m, std::vector<double>(n, 0.0));
  ObjectiveVector f0;  // computed lazily for one-sided differences
  DecisionVector probe = y;
  for (int i = 0; i < n; ++i) {
    double hi = h * std::max(1.0, std::abs(y[i]));
    hi = std::min(hi, 0.49 * problem.box.range(i));
    const bool up_ok = y[i] + hi <= problem.box.upper[i];
    const bool dn_ok = y[i] - hi >= problem.box.lower[i];
    if (up_ok && dn_ok) {
      probe[i] = y[i] + hi;
      ObjectiveVector fu = problem.evaluate(probe);
      probe[i] = y[i] - hi;
      ObjectiveVector fd = problem.evaluate(probe);
      for (int j = 0; j < m; ++j) J[j][i] = (fu[j] - fd[j]) / (2.0 * hi);
    } else {
      if (f0.empty()) f0 = problem.evaluate(y);
      const double sign = up_ok ? 1.0 : -1.0;
      probe[i] = y[i] + sign * hi;
      ObjectiveVector f1 = problem.evaluate(probe);
      for (int j = 0; j < m; ++j) J[j][i] = sign * (f1[j] - f0[j]) / hi;
    }
    probe[i] = y[i];
  }
  return J;
}

}  // namespace omffm
