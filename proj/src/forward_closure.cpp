#include <algorithm>
#include <unordered_map>

#include "proof_schema.hpp"
#include "qlog/error.hpp"
#include "qlog/proof.hpp"

namespace qlog {

bool SequentClosure::contains(const Sequent& s) const { return index_.contains(s); }

Derivation SequentClosure::derivation(const Sequent& s) const {
  const auto it = index_.find(s);
  if (it == index_.end()) throw Error("sequent " + to_string(s) + " is not in the closure");
  return build(it->second);
}

bool SequentClosure::add(Sequent s, Origin origin) {
  const auto [it, inserted] = index_.try_emplace(s, sequents_.size());
  if (!inserted) return false;
  sequents_.push_back(std::move(s));
  origins_.push_back(std::move(origin));
  return true;
}

Derivation SequentClosure::build(std::size_t index) const {
  const Origin& o = origins_[index];
  Derivation d{sequents_[index], o.rule, {}, o.instantiation};
  for (std::size_t p : o.premises) d.premises.push_back(build(p));
  return d;
}

namespace {

using Index = std::unordered_map<Formula, std::vector<std::size_t>>;

void check_constant_free(const Formula& f) {
  if (detail::has_constants(f)) throw Error("constants are not part of the calculus: " + to_string(f));
}

}  // namespace

SequentClosure forward_closure(std::span<const Sequent> seeds, std::span<const Formula> pool, Logic logic,
                               std::size_t steps, const ClosureOptions& options) {
  if (pool.size() > options.max_pool)
    throw GuardError("formula pool of " + std::to_string(pool.size()) + " exceeds the limit of " +
                     std::to_string(options.max_pool));
  std::size_t bound = 0;
  for (const Formula& f : pool) {
    check_constant_free(f);
    bound = std::max(bound, f.size() + 1);
  }
  for (const Sequent& s : seeds) {
    check_constant_free(s.left);
    check_constant_free(s.right);
    bound = std::max({bound, s.left.size() + 1, s.right.size() + 1});
  }
  if (options.max_formula_size) bound = *options.max_formula_size;

  SequentClosure out;
  auto fits = [&](const Sequent& s) { return s.left.size() <= bound && s.right.size() <= bound; };
  auto push = [&](Sequent s, Rule rule, std::vector<std::size_t> premises, Substitution inst) {
    if (!fits(s)) return;
    if (out.add(std::move(s), {rule, std::move(premises), std::move(inst)}) && out.size() > options.max_sequents)
      throw GuardError("forward closure exceeds " + std::to_string(options.max_sequents) + " sequents");
  };

  for (const Sequent& s : seeds)
    out.add(s, {Rule::Hypothesis, {}, {{"alpha", s.left}, {"beta", s.right}}});

  for (Rule rule : detail::axioms_of(logic)) {
    const detail::Schema& schema = detail::schema(rule, options.proof);
    const std::size_t k = schema.letters.size();
    std::vector<std::size_t> slots(k, 0);
    if (pool.empty()) break;
    while (true) {
      Substitution inst;
      for (std::size_t i = 0; i < k; ++i) inst.assign(schema.letters[i], pool[slots[i]]);
      Sequent instance = detail::instantiate(schema.conclusion, inst);
      push(std::move(instance), rule, {}, std::move(inst));
      std::size_t i = k;
      while (i > 0 && ++slots[i - 1] == pool.size()) slots[--i] = 0;
      if (i == 0) break;
    }
  }

  Index by_left;
  Index by_right;
  std::size_t indexed = 0;
  std::size_t fresh = 0;  // first index produced by the previous round
  auto reindex = [&] {
    for (; indexed < out.size(); ++indexed) {
      by_left[out.sequents_[indexed].left].push_back(indexed);
      by_right[out.sequents_[indexed].right].push_back(indexed);
    }
  };
  auto lookup = [](const Index& index, const Formula& key) -> const std::vector<std::size_t>* {
    const auto it = index.find(key);
    return it == index.end() ? nullptr : &it->second;
  };

  for (std::size_t round = 0; round < steps; ++round) {
    reindex();
    const std::size_t snapshot = out.size();
    for (std::size_t i = 0; i < snapshot; ++i) {
      const Sequent a = out.sequents_[i];
      if (i >= fresh) push({~a.right, ~a.left}, Rule::R4, {i}, {{"alpha", a.left}, {"beta", a.right}});

      if (const auto* next = lookup(by_left, a.right)) {
        for (std::size_t j : *next) {
          if (i < fresh && j < fresh) continue;
          const Sequent b = out.sequents_[j];
          if (!options.proof.r1_verbatim) {
            push({a.left, b.right}, Rule::R1, {i, j}, {{"alpha", a.left}, {"beta", a.right}, {"gamma", b.right}});
          } else if (b.right == a.left) {
            for (const Formula& c : pool)
              push({a.left, c}, Rule::R1, {i, j}, {{"alpha", a.left}, {"beta", a.right}, {"gamma", c}});
          }
        }
      }
      if (const auto* same = lookup(by_left, a.left)) {
        for (std::size_t j : *same) {
          if (i < fresh && j < fresh) continue;
          const Sequent b = out.sequents_[j];
          push({a.left, a.right & b.right}, Rule::R2, {i, j},
               {{"alpha", a.left}, {"beta", a.right}, {"gamma", b.right}});
        }
      }
      if (const auto* same = lookup(by_right, a.right)) {
        for (std::size_t j : *same) {
          if (i < fresh && j < fresh) continue;
          const Sequent b = out.sequents_[j];
          push({a.left | b.left, a.right}, Rule::R3, {i, j},
               {{"alpha", a.left}, {"beta", b.left}, {"gamma", a.right}});
        }
      }
    }
    fresh = snapshot;
  }
  return out;
}

}  // namespace qlog
