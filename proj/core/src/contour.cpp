#include "bistab/contour.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>

namespace bistab {

namespace {

// Cell corners counter-clockwise from (i, j); edge k joins corner k and corner k + 1.
constexpr std::array<std::array<int, 2>, 4> kCorner = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};

Point2 crossing(const GridField& g, Point2 a, double fa, Point2 b) {
  // Bisect on the segment parameter; stops once the midpoint no longer moves.
  double lo = 0.0;
  double hi = 1.0;
  const bool a_in = fa > 0.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = g.field(a.x + mid * (b.x - a.x), a.y + mid * (b.y - a.y));
    if ((v > 0.0) == a_in) lo = mid;
    else hi = mid;
  }
  const double t = 0.5 * (lo + hi);
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

struct Cell {
  std::array<Point2, 4> p;
  std::array<double, 4> v;
  std::array<bool, 4> in;
  int mask = 0;
};

Cell load(const GridField& g, std::size_t i, std::size_t j) {
  Cell c;
  for (int k = 0; k < 4; ++k) {
    const std::size_t ii = i + kCorner[k][0];
    const std::size_t jj = j + kCorner[k][1];
    c.p[k] = {g.xs[ii], g.ys[jj]};
    c.v[k] = g.at(ii, jj);
    c.in[k] = c.v[k] > 0.0;
    if (c.in[k]) c.mask |= 1 << k;
  }
  return c;
}

bool ambiguous(int mask) { return mask == 0b0101 || mask == 0b1010; }

bool centre_inside(const GridField& g, const Cell& c) {
  return g.field(0.5 * (c.p[0].x + c.p[2].x), 0.5 * (c.p[0].y + c.p[2].y)) > 0.0;
}

/// Global id of edge k of cell (i, j), shared by the neighbouring cell.
std::uint64_t edge_id(std::size_t nx, std::size_t i, std::size_t j, int k) {
  switch (k) {
    case 0: return 2 * (j * nx + i);
    case 1: return 2 * (j * nx + i + 1) + 1;
    case 2: return 2 * ((j + 1) * nx + i);
    default: return 2 * (j * nx + i) + 1;
  }
}

}  // namespace

std::vector<Polyline> marching_squares(const GridField& g) {
  const std::size_t nx = g.xs.size();
  const std::size_t ny = g.ys.size();
  std::unordered_map<std::uint64_t, Point2> vertex;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> links;

  auto vertex_on = [&](const Cell& c, std::size_t i, std::size_t j, int k) {
    const std::uint64_t id = edge_id(nx, i, j, k);
    if (!vertex.contains(id)) {
      // Always bisect from the lower-index corner so both cells see the same point.
      const int a = (k == 2 || k == 3) ? (k + 1) % 4 : k;
      const int b = (k == 2 || k == 3) ? k : k + 1;
      vertex.emplace(id, crossing(g, c.p[a], c.v[a], c.p[b]));
    }
    return id;
  };
  auto link = [&](std::uint64_t a, std::uint64_t b) {
    links[a].push_back(b);
    links[b].push_back(a);
  };

  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const Cell c = load(g, i, j);
      if (c.mask == 0 || c.mask == 0b1111) continue;
      std::array<std::uint64_t, 4> ids{};
      std::vector<int> crossed;
      for (int k = 0; k < 4; ++k) {
        if (c.in[k] != c.in[(k + 1) % 4]) {
          ids[k] = vertex_on(c, i, j, k);
          crossed.push_back(k);
        }
      }
      if (crossed.size() == 2) {
        link(ids[crossed[0]], ids[crossed[1]]);
        continue;
      }
      // Ambiguous cell: cut off the two corners that are not connected through the centre.
      const bool centre = centre_inside(g, c);
      for (int k = 0; k < 4; ++k) {
        if (c.in[k] == centre) continue;
        link(ids[(k + 3) % 4], ids[k]);
      }
    }
  }

  std::vector<Polyline> out;
  std::unordered_map<std::uint64_t, bool> used;
  auto walk = [&](std::uint64_t start, bool closed) {
    Polyline line;
    line.closed = closed;
    std::uint64_t prev = start;
    std::uint64_t cur = start;
    used[start] = true;
    line.points.push_back(vertex.at(start));
    while (true) {
      std::uint64_t next = cur;
      for (auto n : links.at(cur)) {
        if (!used[n]) {
          next = n;
          break;
        }
      }
      if (next == cur) break;
      used[next] = true;
      line.points.push_back(vertex.at(next));
      prev = cur;
      cur = next;
    }
    (void)prev;
    if (closed && line.points.size() > 1) line.points.push_back(line.points.front());
    out.push_back(std::move(line));
  };

  // Deterministic order: sort ids before walking.
  std::vector<std::uint64_t> ids;
  ids.reserve(links.size());
  for (const auto& [id, _] : links) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  for (auto id : ids)
    if (links.at(id).size() == 1 && !used[id]) walk(id, false);
  for (auto id : ids)
    if (!used[id]) walk(id, true);
  return out;
}

std::vector<std::vector<Point2>> clip_cell(const GridField& g, std::size_t i, std::size_t j) {
  const Cell c = load(g, i, j);
  if (c.mask == 0) return {};
  if (c.mask == 0b1111) return {{c.p[0], c.p[1], c.p[2], c.p[3]}};
  auto cross = [&](int k) {
    const int a = (k == 2 || k == 3) ? (k + 1) % 4 : k;
    const int b = (k == 2 || k == 3) ? k : k + 1;
    return crossing(g, c.p[a], c.v[a], c.p[b]);
  };
  if (ambiguous(c.mask) && !centre_inside(g, c)) {
    std::vector<std::vector<Point2>> tris;
    for (int k = 0; k < 4; ++k) {
      if (!c.in[k]) continue;
      tris.push_back({cross((k + 3) % 4), c.p[k], cross(k)});
    }
    return tris;
  }
  std::vector<Point2> poly;
  for (int k = 0; k < 4; ++k) {
    if (c.in[k]) poly.push_back(c.p[k]);
    if (c.in[k] != c.in[(k + 1) % 4]) poly.push_back(cross(k));
  }
  return {poly};
}

}  // namespace bistab
