#include "omflow/double_circuit.hpp"

#include <algorithm>

#include "omflow/errors.hpp"

namespace omflow {

bool is_double_circuit(const Matroid& m, Mask d) {
  d &= m.full_mask();
  int p = popcount(d);
  if (p < 2) return false;
  if (m.rank(d) != p - 2) return false;
  Mask rest = d;
  while (rest) {
    int e = lowest_element(rest);
    rest &= rest - 1;
    if (m.rank(d & ~bit(e)) != p - 2) return false;
  }
  return true;
}

namespace {

void sort_classes(std::vector<Mask>& classes) {
  std::sort(classes.begin(), classes.end(),
            [](Mask a, Mask b) { return lowest_element(a) < lowest_element(b); });
}

DoubleCircuitReport report_from_classes(Mask d, std::vector<Mask> classes) {
  DoubleCircuitReport rpt;
  rpt.d = d;
  sort_classes(classes);
  rpt.classes = std::move(classes);
  rpt.degree = (int)rpt.classes.size();
  for (Mask c : rpt.classes)
    if (popcount(c) == 1) ++rpt.singular;
  rpt.multiple = rpt.degree - rpt.singular;
  rpt.positive = rpt.singular > rpt.multiple;
  return rpt;
}

}  // namespace

std::vector<Mask> circuit_partition(const Matroid& m, Mask d) {
  d &= m.full_mask();
  if (!is_double_circuit(m, d)) throw InputError("subset is not a double circuit");
  std::vector<Mask> circs = circuits_within(m, d);
  std::vector<Mask> classes;
  Mask covered = 0;
  for (Mask c : circs) {
    Mask cls = d & ~c;
    invariant((covered & cls) == 0, "double circuit classes overlap");
    covered |= cls;
    classes.push_back(cls);
  }
  invariant(covered == d, "double circuit classes do not cover D");
  sort_classes(classes);
  return classes;
}

DoubleCircuitReport double_circuit_report(const Matroid& m, Mask d) {
  return report_from_classes(d & m.full_mask(), circuit_partition(m, d));
}

namespace {

void double_circuits_dual_route(const Matroid& m,
                                const std::function<void(const DoubleCircuitReport&)>& fn) {
  if (m.size() > 32) throw ResourceError("dual-coline double circuit enumeration capped at 32 elements");
  Matroid md = dual(m);
  if (md.full_rank() < 2) return;
  Mask full = m.full_mask();
  for_each_flat_of_corank(md, 2, [&](Mask coline) {
    Mask d = full & ~coline;
    // copoint partition of the dual coline = circuit partition of D
    std::vector<std::pair<Mask, Mask>> groups;
    Mask rest = d;
    while (rest) {
      int x = lowest_element(rest);
      rest &= rest - 1;
      Mask h = closure(md, coline | bit(x));
      bool found = false;
      for (auto& [cop, cls] : groups) {
        if (cop == h) {
          cls |= bit(x);
          found = true;
          break;
        }
      }
      if (!found) groups.push_back({h, bit(x)});
    }
    std::vector<Mask> classes;
    classes.reserve(groups.size());
    for (auto& [cop, cls] : groups) classes.push_back(cls);
    DoubleCircuitReport rpt = report_from_classes(d, std::move(classes));
    invariant(m.rank(d) == popcount(d) - 2, "dual coline complement rank mismatch");
    fn(rpt);
  });
}

void double_circuits_direct_route(const Matroid& m,
                                  const std::function<void(const DoubleCircuitReport&)>& fn) {
  if (m.size() > 20) throw ResourceError("direct double circuit enumeration capped at 20 elements");
  std::vector<Mask> circs = circuits(m, 20);
  std::vector<Mask> found;
  for (size_t i = 0; i < circs.size(); ++i) {
    for (size_t j = i + 1; j < circs.size(); ++j) {
      Mask d = circs[i] | circs[j];
      if (m.rank(d) != popcount(d) - 2) continue;
      if (!is_double_circuit(m, d)) continue;
      found.push_back(d);
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  for (Mask d : found) fn(double_circuit_report(m, d));
}

}  // namespace

void for_each_double_circuit(const Matroid& m,
                             const std::function<void(const DoubleCircuitReport&)>& fn,
                             DcRoute route) {
  if (route == DcRoute::dual_coline)
    double_circuits_dual_route(m, fn);
  else
    double_circuits_direct_route(m, fn);
}

std::vector<DoubleCircuitReport> enumerate_double_circuits(const Matroid& m, DcRoute route) {
  std::vector<DoubleCircuitReport> out;
  for_each_double_circuit(m, [&](const DoubleCircuitReport& r) { out.push_back(r); }, route);
  std::sort(out.begin(), out.end(),
            [](const DoubleCircuitReport& a, const DoubleCircuitReport& b) { return a.d < b.d; });
  return out;
}

std::vector<ColineReport> positive_colines(const Matroid& m) {
  Mask full = m.full_mask();
  std::vector<ColineReport> out;
  for_each_double_circuit(dual(m), [&](const DoubleCircuitReport& r) {
    if (!r.positive) return;
    ColineReport cr;
    cr.coline = full & ~r.d;
    cr.classes = r.classes;
    cr.degree = r.degree;
    cr.singular = r.singular;
    cr.multiple = r.multiple;
    cr.positive = r.positive;
    out.push_back(cr);
  });
  std::sort(out.begin(), out.end(),
            [](const ColineReport& a, const ColineReport& b) { return a.coline < b.coline; });
  return out;
}

SeriesToUniform series_to_uniform(const Matroid& m, Mask d) {
  d &= m.full_mask();
  std::vector<Mask> classes = circuit_partition(m, d);

  // The classes must coincide with the series classes of the restriction.
  Matroid rest = restriction(m, d);
  SeriesClasses sc = series_classes(rest);
  invariant(sc.coloop_mask == 0, "double circuit restriction has a coloop");
  // Restriction ids are the set bits of d in ascending order; minor
  // collapsing means rest.minor_elements() may index a deeper base instead.
  std::vector<int> ids;
  for (Mask r = d; r; r &= r - 1) ids.push_back(lowest_element(r));
  std::vector<Mask> lifted;
  for (Mask cls : sc.classes) {
    Mask lift = 0;
    Mask r = cls;
    while (r) {
      lift |= bit(ids[lowest_element(r)]);
      r &= r - 1;
    }
    lifted.push_back(lift);
  }
  sort_classes(lifted);
  invariant(lifted == classes, "series classes differ from circuit partition");

  Mask contract = 0;
  for (Mask cls : classes) contract |= cls & ~bit(lowest_element(cls));
  Matroid u = minor(m, m.full_mask() & ~d, contract);
  int k = (int)classes.size();
  invariant(u.size() == k, "series contraction has wrong size");
  for (Mask s = 0; s < (Mask{1} << k); ++s)
    invariant(u.rank(s) == std::min(popcount(s), k - 2), "series contraction is not uniform");

  SeriesToUniform out;
  out.classes = std::move(classes);
  out.uniform_rank = k - 2;
  out.uniform_size = k;
  return out;
}

DoubleCircuitReport symdiff_pair_to_double_circuit(const Matroid& m, Mask c1, Mask c2) {
  c1 &= m.full_mask();
  c2 &= m.full_mask();
  if (!is_circuit(m, c1) || !is_circuit(m, c2)) throw InputError("inputs must be circuits");
  if (popcount(c1 ^ c2) != 2) throw InputError("circuits must have symmetric difference 2");
  DoubleCircuitReport rpt = double_circuit_report(m, c1 | c2);
  invariant(rpt.singular >= 2, "symmetric-difference pair must give two singular classes");
  return rpt;
}

std::pair<Mask, Mask> double_circuit_to_symdiff_pair(const Matroid& m,
                                                     const DoubleCircuitReport& report) {
  std::vector<Mask> singles;
  for (Mask cls : report.classes)
    if (popcount(cls) == 1) singles.push_back(cls);
  if (singles.size() < 2) throw InputError("double circuit needs two singular classes");
  Mask a = report.d & ~singles[0];
  Mask b = report.d & ~singles[1];
  invariant(is_circuit(m, a) && is_circuit(m, b), "class complements must be circuits");
  return {a, b};
}

FlowableHypothesis flowable_hypothesis(const DoubleCircuitReport& report) {
  if (report.degree % 2 == 0 && report.singular >= 1) return FlowableHypothesis::even_one_singular;
  if (report.degree % 2 == 1 && report.singular >= 2) return FlowableHypothesis::odd_two_singular;
  return FlowableHypothesis::none;
}

}  // namespace omflow
