// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include "sonc/mediated.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace sonc {

LatticeSet LatticeSet::make(std::vector<Exponent> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return LatticeSet{std::move(pts)};
}

bool LatticeSet::contains(const Exponent& p) const {
  return std::binary_search(points.begin(), points.end(), p);
}

LatticeSet averages(const LatticeSet& m) {
  std::vector<Exponent> even;
  for (const Exponent& p : m.points)
    if (p.is_even()) even.push_back(p);
  std::vector<Exponent> avgs;
  for (std::size_t i = 0; i < even.size(); ++i)
    for (std::size_t j = i + 1; j < even.size(); ++j)
      avgs.push_back(*Exponent::midpoint(even[i], even[j]));  // even sums are integral
  return LatticeSet::make(std::move(avgs));
}

bool is_mediated_set(const LatticeSet& m, const Simplex& trellis) {
  if (!trellis.all_even())
    throw std::invalid_argument("is_mediated_set: trellis must be even-entried");
  for (const Exponent& a : trellis.vertices)
    if (!m.contains(a)) return false;
  const LatticeSet avg = averages(m);
  for (const Exponent& p : m.points) {
    if (std::binary_search(trellis.vertices.begin(), trellis.vertices.end(), p)) continue;
    if (!avg.contains(p)) return false;
  }
  return true;
}

namespace {

std::string cache_key(const Simplex& trellis) {
  std::string key;
  for (const Exponent& v : trellis.vertices) key += v.str();
  return key;
}

std::mutex g_cache_mutex;
std::map<std::string, MediatedSet>& cache() {
  static std::map<std::string, MediatedSet> c;
  return c;
}

// Deletion fixpoint with a witness-pair worklist. Each surviving non-trellis
// point must stay the midpoint of two distinct even survivors, so we keep a
// live witness count per point and cascade deletions when an even point
// orphans the averages it participated in.
LatticeSet fixpoint(const Simplex& trellis) {
  const LatticeSet all = LatticeSet::make(lattice_points_in_hull(trellis.vertices));
  std::set<Exponent> alive(all.points.begin(), all.points.end());
  const std::set<Exponent> anchored(trellis.vertices.begin(), trellis.vertices.end());

  std::set<Exponent> evens;
  for (const Exponent& p : alive)
    if (p.is_even()) evens.insert(p);

  std::map<Exponent, long> witnesses;
  for (auto i = evens.begin(); i != evens.end(); ++i)
    for (auto j = std::next(i); j != evens.end(); ++j) {
      const Exponent mid = *Exponent::midpoint(*i, *j);
      if (alive.count(mid)) ++witnesses[mid];
    }

  std::vector<Exponent> doomed;
  for (const Exponent& p : alive)
    if (!anchored.count(p) && witnesses[p] == 0) doomed.push_back(p);

  while (!doomed.empty()) {
    const Exponent p = doomed.back();
    doomed.pop_back();
    if (!alive.count(p)) continue;
    alive.erase(p);
    if (!p.is_even()) continue;
    evens.erase(p);
    for (const Exponent& e : evens) {
      const Exponent mid = *Exponent::midpoint(p, e);
      auto it = witnesses.find(mid);
      if (it == witnesses.end() || !alive.count(mid)) continue;
      if (--it->second == 0 && !anchored.count(mid)) doomed.push_back(mid);
    }
  }
  return LatticeSet::make(std::vector<Exponent>(alive.begin(), alive.end()));
}

}  // namespace

MediatedSet maximal_mediated_set(const Simplex& trellis) {
  if (!trellis.all_even())
    throw std::invalid_argument("maximal_mediated_set: trellis must be even-entried");
  const std::string key = cache_key(trellis);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  MediatedSet result{trellis, fixpoint(trellis)};
  for (const Exponent& a : trellis.vertices) {
    if (!result.points.contains(a))
      throw std::logic_error("maximal mediated set lost a trellis vertex");
  }
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  cache().emplace(key, result);
  return result;
}

bool is_h_trellis(const Simplex& trellis) {
  const MediatedSet ms = maximal_mediated_set(trellis);
  return ms.points.size() == lattice_points_in_hull(trellis.vertices).size();
}

}  // namespace sonc
