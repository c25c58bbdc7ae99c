#ifndef EPSMULT_POLYTOPE_HPP
#define EPSMULT_POLYTOPE_HPP

#include "error.hpp"
#include "lattice.hpp"
#include "rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace epsmult {

using RationalPoint = std::vector<Rational>;
using IntPoint = std::vector<BigInt>;

/// Fraction-free (Bareiss) determinant.
inline BigInt determinant(IntMatrix m) {
  const auto n = m.size();
  if (n == 0)
    return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0)
        ++p;
      if (p == n)
        return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Dimension of the affine hull of a point set (-1 for the empty set).
inline int affine_dimension(const std::vector<RationalPoint>& pts) {
  if (pts.empty())
    return -1;
  std::vector<std::vector<Rational>> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rational> d(pts[i].size());
    for (std::size_t k = 0; k < d.size(); ++k)
      d[k] = pts[i][k] - pts[0][k];
    diffs.push_back(std::move(d));
  }
  return static_cast<int>(rational_rank(std::move(diffs)));
}

/// Clears denominators: returns integer points and the common scale L so
/// that int_point = L * rational_point.
inline std::pair<std::vector<IntPoint>, BigInt> scale_to_integers(
    const std::vector<RationalPoint>& pts) {
  BigInt l = 1;
  for (const auto& p : pts)
    for (const auto& x : p)
      l = boost::multiprecision::lcm(l, denominator_of(x));
  std::vector<IntPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    IntPoint q(p.size());
    for (std::size_t k = 0; k < p.size(); ++k)
      q[k] = numerator_of(p[k] * Rational(l));
    out.push_back(std::move(q));
  }
  return {std::move(out), l};
}

/// Placing triangulation of a full-dimensional point configuration in Z^q:
/// points are inserted in order and each new point outside the current hull
/// is coned over the boundary facets it sees.
struct Triangulation {
  std::size_t dim = 0;
  std::vector<std::vector<std::size_t>> simplices;
  std::vector<std::vector<std::size_t>> boundary;
};

namespace detail {

/// Sign of det[f_2 - f_1, ..., f_q - f_1, p - f_1].
inline int orientation(const std::vector<IntPoint>& pts, const std::vector<std::size_t>& facet,
                       const IntPoint& p) {
  const auto q = p.size();
  IntMatrix m;
  m.reserve(q);
  const auto& base = pts[facet[0]];
  for (std::size_t i = 1; i < facet.size(); ++i) {
    IntRow r(q);
    for (std::size_t k = 0; k < q; ++k)
      r[k] = pts[facet[i]][k] - base[k];
    m.push_back(std::move(r));
  }
  IntRow r(q);
  for (std::size_t k = 0; k < q; ++k)
    r[k] = p[k] - base[k];
  m.push_back(std::move(r));
  auto d = determinant(std::move(m));
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

inline BigInt simplex_det(const std::vector<IntPoint>& pts, const std::vector<std::size_t>& s) {
  const auto q = pts[s[0]].size();
  IntMatrix m;
  for (std::size_t i = 1; i < s.size(); ++i) {
    IntRow r(q);
    for (std::size_t k = 0; k < q; ++k)
      r[k] = pts[s[i]][k] - pts[s[0]][k];
    m.push_back(std::move(r));
  }
  return abs(determinant(std::move(m)));
}

} // namespace detail

/// Returns nullopt when the points are not full-dimensional.
inline std::optional<Triangulation> placing_triangulation(const std::vector<IntPoint>& pts) {
  if (pts.empty())
    return std::nullopt;
  const auto q = pts.front().size();
  for (const auto& p : pts)
    if (p.size() != q)
      throw DimensionMismatch("points of mixed dimension");
  Triangulation tri;
  tri.dim = q;
  if (q == 0) {
    tri.simplices.push_back({0});
    return tri;
  }

  // Greedy affinely independent start.
  std::vector<std::size_t> start{0};
  std::vector<std::vector<Rational>> diffs;
  for (std::size_t i = 1; i < pts.size() && start.size() < q + 1; ++i) {
    std::vector<Rational> d(q);
    for (std::size_t k = 0; k < q; ++k)
      d[k] = Rational(pts[i][k] - pts[0][k]);
    auto trial = diffs;
    trial.push_back(d);
    if (rational_rank(trial) == trial.size()) {
      diffs = std::move(trial);
      start.push_back(i);
    }
  }
  if (start.size() < q + 1)
    return std::nullopt;

  // (q+1) * interior reference point, kept integral by scaling every
  // orientation test against it consistently.
  IntPoint centre(q, BigInt(0));
  for (auto i : start)
    for (std::size_t k = 0; k < q; ++k)
      centre[k] += pts[i][k];

  struct Facet {
    std::vector<std::size_t> verts;
    int inside;
  };
  auto inside_sign = [&](const std::vector<std::size_t>& facet) {
    // Orientation of the centroid: scale the facet base by q+1 as well.
    IntMatrix m;
    const auto& base = pts[facet[0]];
    for (std::size_t i = 1; i < facet.size(); ++i) {
      IntRow r(q);
      for (std::size_t k = 0; k < q; ++k)
        r[k] = pts[facet[i]][k] - base[k];
      m.push_back(std::move(r));
    }
    IntRow r(q);
    for (std::size_t k = 0; k < q; ++k)
      r[k] = centre[k] - BigInt(q + 1) * base[k];
    m.push_back(std::move(r));
    auto d = determinant(std::move(m));
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
  };

  std::vector<Facet> facets;
  tri.simplices.push_back(start);
  for (std::size_t skip = 0; skip < start.size(); ++skip) {
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < start.size(); ++i)
      if (i != skip)
        f.push_back(start[i]);
    std::sort(f.begin(), f.end());
    facets.push_back({f, inside_sign(f)});
  }

  std::vector<bool> used(pts.size(), false);
  for (auto i : start)
    used[i] = true;
  for (std::size_t pi = 0; pi < pts.size(); ++pi) {
    if (used[pi])
      continue;
    std::vector<std::size_t> visible;
    for (std::size_t fi = 0; fi < facets.size(); ++fi) {
      int o = detail::orientation(pts, facets[fi].verts, pts[pi]);
      if (o != 0 && o != facets[fi].inside)
        visible.push_back(fi);
    }
    if (visible.empty())
      continue;
    std::map<std::vector<std::size_t>, int> ridge_count;
    for (auto fi : visible) {
      const auto& v = facets[fi].verts;
      std::vector<std::size_t> s = v;
      s.push_back(pi);
      tri.simplices.push_back(std::move(s));
      for (std::size_t skip = 0; skip < v.size(); ++skip) {
        std::vector<std::size_t> ridge;
        for (std::size_t k = 0; k < v.size(); ++k)
          if (k != skip)
            ridge.push_back(v[k]);
        ++ridge_count[ridge];
      }
    }
    std::vector<Facet> next;
    std::vector<bool> is_visible(facets.size(), false);
    for (auto fi : visible)
      is_visible[fi] = true;
    for (std::size_t fi = 0; fi < facets.size(); ++fi)
      if (!is_visible[fi])
        next.push_back(std::move(facets[fi]));
    for (auto& [ridge, count] : ridge_count) {
      if (count != 1)
        continue;
      auto f = ridge;
      f.push_back(pi);
      std::sort(f.begin(), f.end());
      int s = inside_sign(f);
      next.push_back({std::move(f), s});
    }
    facets = std::move(next);
  }
  for (auto& f : facets)
    tri.boundary.push_back(std::move(f.verts));
  return tri;
}

/// Euclidean volume of conv(points) in Q^q (full-dimensional), exact; 0 when
/// the points span less than q dimensions.
inline Rational hull_volume(const std::vector<RationalPoint>& pts) {
  if (pts.empty())
    return 0;
  auto [ints, scale] = scale_to_integers(pts);
  const auto q = pts.front().size();
  if (q == 0)
    return 1;
  auto tri = placing_triangulation(ints);
  if (!tri)
    return 0;
  BigInt total = 0;
  for (const auto& s : tri->simplices)
    total += detail::simplex_det(ints, s);
  return Rational(total) / Rational(factorial(static_cast<unsigned>(q)) * int_pow(scale, static_cast<unsigned>(q)));
}

/// Indices of the vertices of conv(points). Full-dimensional input only.
inline std::vector<std::size_t> hull_vertices(const std::vector<RationalPoint>& pts) {
  if (pts.empty())
    return {};
  const auto q = pts.front().size();
  if (q == 0)
    return {0};
  if (q == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (pts[i][0] < pts[lo][0])
        lo = i;
      if (pts[i][0] > pts[hi][0])
        hi = i;
    }
    return lo == hi ? std::vector<std::size_t>{lo} : std::vector<std::size_t>{std::min(lo, hi), std::max(lo, hi)};
  }
  auto [ints, scale] = scale_to_integers(pts);
  auto tri = placing_triangulation(ints);
  if (!tri)
    throw PreconditionError("hull_vertices needs a full-dimensional configuration");
  std::vector<std::size_t> cand;
  for (const auto& f : tri->boundary)
    cand.insert(cand.end(), f.begin(), f.end());
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  // A vertex is exactly a candidate whose removal shrinks the hull.
  std::vector<RationalPoint> cpts;
  for (auto i : cand)
    cpts.push_back(pts[i]);
  const Rational full = hull_volume(cpts);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < cand.size(); ++j) {
    std::vector<RationalPoint> rest;
    for (std::size_t k = 0; k < cand.size(); ++k)
      if (k != j)
        rest.push_back(cpts[k]);
    if (hull_volume(rest) != full)
      out.push_back(cand[j]);
  }
  return out;
}

} // namespace epsmult

#endif
