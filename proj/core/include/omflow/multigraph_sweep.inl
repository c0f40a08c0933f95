#pragma once

#include <utility>

#include "omflow/errors.hpp"

namespace omflow {

namespace detail {

template <typename F>
class MultigraphSweep {
 public:
  MultigraphSweep(int v, int max_mult, int max_loops, int max_edges, F& fn)
      : v_(v), max_mult_(max_mult), max_loops_(max_loops), budget_(max_edges), fn_(fn) {
    pair_slots_ = v * (v - 1) / 2;
    slots_ = pair_slots_ + v;
    a_.assign(slots_, 0);
    perms_ = slot_permutations(v, pair_slots_);
    int s = 0;
    pair_of_slot_.resize(pair_slots_);
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j) pair_of_slot_[s++] = {i, j};
  }

  void run() { rec(0, 0); }

 private:
  void rec(int slot, int used) {
    if (slot == slots_) {
      emit();
      return;
    }
    int cap = slot < pair_slots_ ? max_mult_ : max_loops_;
    for (int val = 0; val <= cap && used + val <= budget_; ++val) {
      a_[slot] = val;
      rec(slot + 1, used + val);
    }
    a_[slot] = 0;
  }

  bool canonical() const {
    for (const std::vector<int>& p : perms_) {
      for (int s = 0; s < slots_; ++s) {
        int d = a_[p[s]] - a_[s];
        if (d > 0) break;           // permuted image is lex-greater: fine
        if (d < 0) return false;    // a smaller relabeling exists
      }
    }
    return true;
  }

  void emit() {
    // Skip graphs with isolated vertices: they appear at a smaller vertex
    // count instead, so each isomorphism class is seen exactly once.
    int deg[16] = {0};
    for (int s = 0; s < pair_slots_; ++s) {
      deg[pair_of_slot_[s].first] += a_[s];
      deg[pair_of_slot_[s].second] += a_[s];
    }
    for (int vtx = 0; vtx < v_; ++vtx) deg[vtx] += 2 * a_[pair_slots_ + vtx];
    for (int vtx = 0; vtx < v_; ++vtx)
      if (deg[vtx] == 0) return;
    if (!canonical()) return;
    std::vector<std::pair<int, int>> edges;
    for (int s = 0; s < pair_slots_; ++s)
      for (int k = 0; k < a_[s]; ++k) edges.push_back(pair_of_slot_[s]);
    for (int vtx = 0; vtx < v_; ++vtx)
      for (int k = 0; k < a_[pair_slots_ + vtx]; ++k) edges.emplace_back(vtx, vtx);
    fn_(MultiGraph(v_, std::move(edges)));
  }

  int v_, max_mult_, max_loops_, budget_, pair_slots_, slots_;
  std::vector<int> a_;
  std::vector<std::pair<int, int>> pair_of_slot_;
  std::vector<std::vector<int>> perms_;
  F& fn_;
};

}  // namespace detail

template <typename F>
void for_each_multigraph(int max_vertices, int max_multiplicity, int max_loops, int max_edges, F&& fn) {
  if (max_vertices > 10) throw InputError("multigraph sweep supports at most 10 vertices");
  fn(MultiGraph(0, {}));
  for (int v = 1; v <= max_vertices; ++v) {
    detail::MultigraphSweep<F> sweep(v, max_multiplicity, max_loops, max_edges, fn);
    sweep.run();
  }
}

}  // namespace omflow
