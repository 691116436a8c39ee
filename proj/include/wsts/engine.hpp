#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wsts/qo.hpp"

namespace wsts {

enum class Verdict { Reachable, Unreachable };

inline const char* verdict_str(Verdict v) {
  return v == Verdict::Reachable ? "REACHABLE" : "UNREACHABLE";
}

struct Limits {
  std::uint64_t max_constraints = 100000;
  double max_seconds = 300.0;
};

struct LimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The backend contract: a constraint type plus entailment, predecessor
// computation (with a provenance label per result), initial-state
// satisfiability, and a deterministic canonical key.
template <class S>
concept ConstraintSystem = requires(const S& sys, const typename S::Constraint& c) {
  { sys.entails(c, c) } -> std::convertible_to<bool>;
  { sys.pre(c) } -> std::convertible_to<
      std::vector<std::pair<typename S::Constraint, std::string>>>;
  { sys.init_satisfiable(c) } -> std::convertible_to<bool>;
  { sys.canonical_key(c) } -> std::convertible_to<std::string>;
};

template <class C>
struct FixpointResult {
  Verdict verdict = Verdict::Unreachable;
  std::vector<C> fixpoint;           // antichain under entailment
  std::uint64_t iterations = 0;      // worklist pops
  std::uint64_t pre_calls = 0;
  std::uint64_t constraints = 0;     // total constraints ever inserted
  std::vector<std::string> witness_trace; // labels, init side first
};

// Backward reachability: iterate Phi_{j+1} = Phi_j u Pre(Phi_j) as a
// worklist with eager minimal-set maintenance.  Terminates for well
// quasi-ordered backends; the limits guard misuse.  Deterministic: new
// constraints are enqueued FIFO in canonical-key order.
template <ConstraintSystem S>
FixpointResult<typename S::Constraint> backward_reach(
    const S& sys, std::vector<typename S::Constraint> targets,
    Limits limits = {}) {
  using C = typename S::Constraint;
  if (targets.empty())
    throw std::invalid_argument("backward_reach: no target constraints");

  auto entail = [&](const C& a, const C& b) { return sys.entails(a, b); };
  auto key = [&](const C& c) { return sys.canonical_key(c); };

  struct Node {
    C constraint;
    std::string label; // transition responsible, empty for targets
    int parent;
    bool live = true;
  };
  std::vector<Node> nodes;
  std::vector<int> active; // indices of live nodes = the minimal set S
  std::deque<int> queue;

  FixpointResult<C> res;
  auto started = std::chrono::steady_clock::now();

  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         started)
        .count();
  };

  auto collect = [&](int idx) {
    res.fixpoint.clear();
    for (int a : active) res.fixpoint.push_back(nodes[static_cast<std::size_t>(a)].constraint);
    if (idx >= 0) {
      res.verdict = Verdict::Reachable;
      for (int cur = idx; cur >= 0; cur = nodes[static_cast<std::size_t>(cur)].parent) {
        const Node& nd = nodes[static_cast<std::size_t>(cur)];
        if (!nd.label.empty()) res.witness_trace.push_back(nd.label);
      }
    }
    return res;
  };

  // Inserts a batch, maintaining minimality; returns the index of an
  // init-satisfying node, or -1.
  auto insert_batch = [&](std::vector<std::pair<C, std::string>> batch,
                          int parent) -> int {
    std::vector<std::size_t> order(batch.size());
    std::vector<std::string> keys(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      order[i] = i;
      keys[i] = key(batch[i].first);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (keys[a] != keys[b]) return keys[a] < keys[b];
      return batch[a].second < batch[b].second;
    });
    std::string prev_key;
    bool first = true;
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
      std::size_t i = order[oi];
      if (!first && keys[i] == prev_key) continue;
      first = false;
      prev_key = keys[i];
      C& c = batch[i].first;
      bool dominated = false;
      for (int a : active) {
        if (entail(nodes[static_cast<std::size_t>(a)].constraint, c)) {
          dominated = true;
          break;
        }
      }
      if (dominated) continue;
      std::erase_if(active, [&](int a) {
        Node& nd = nodes[static_cast<std::size_t>(a)];
        if (entail(c, nd.constraint)) {
          nd.live = false;
          return true;
        }
        return false;
      });
      int idx = static_cast<int>(nodes.size());
      nodes.push_back(Node{std::move(c), std::move(batch[i].second), parent});
      active.push_back(idx);
      queue.push_back(idx);
      if (++res.constraints > limits.max_constraints)
        throw LimitExceeded("constraint limit exceeded (" +
                            std::to_string(limits.max_constraints) + ")");
      if (sys.init_satisfiable(nodes.back().constraint)) return idx;
    }
    return -1;
  };

  std::vector<std::pair<C, std::string>> seed;
  seed.reserve(targets.size());
  for (C& t : targets) seed.emplace_back(std::move(t), std::string());
  if (int hit = insert_batch(std::move(seed), -1); hit >= 0)
    return collect(hit);

  while (!queue.empty()) {
    int idx = queue.front();
    queue.pop_front();
    if (!nodes[static_cast<std::size_t>(idx)].live) continue; // evicted while waiting
    if (elapsed() > limits.max_seconds)
      throw LimitExceeded("time limit exceeded");
    ++res.iterations;
    ++res.pre_calls;
    auto batch = sys.pre(nodes[static_cast<std::size_t>(idx)].constraint);
    if (int hit = insert_batch(std::move(batch), idx); hit >= 0)
      return collect(hit);
  }
  return collect(-1);
}

} // namespace wsts
