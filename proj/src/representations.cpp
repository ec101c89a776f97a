#include "representations.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace kummer {

Element term_value(const AlgebraPtr& alg, const Term& t) {
  // For a = 1 the positive real N-th root of a is 1, so the radical part
  // collapses and the term is just a signed root of unity.
  Element m = Element::monomial(alg, t.i, alg->a() == 1 ? 0 : t.j);
  return t.sign < 0 ? -m : m;
}

const TermSet& term_set(const AlgebraPtr& alg) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::uint64_t>, std::unique_ptr<TermSet>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(alg->a(), alg->n());
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  auto ts = std::make_unique<TermSet>();
  ts->alg = alg;
  std::map<std::vector<Rational>, std::size_t> seen;
  for (int sign : {1, -1})
    for (unsigned i = 0; i < alg->n(); ++i)
      for (unsigned j = 0; j < alg->n(); ++j) {
        Term t{sign, i, j};
        Element v = term_value(alg, t);
        if (seen.count(v.coords())) continue;
        seen.emplace(v.coords(), ts->terms.size());
        ts->terms.push_back(t);
        std::vector<BigInt> vec(alg->dim());
        for (std::size_t c = 0; c < alg->dim(); ++c) {
          if (!is_integer(v.coords()[c]))
            fail(ErrorCode::internal, "term with non-integer coordinates");
          vec[c] = v.coords()[c].get_num();
        }
        ts->vectors.push_back(std::move(vec));
        if (alg->a() == 1) break;  // j does not matter
      }
  it = cache.emplace(key, std::move(ts)).first;
  return *it->second;
}

std::string Representation::to_json() const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [t, mult] : terms) {
    if (!first) os << ",";
    first = false;
    os << "{\"sign\":" << t.sign << ",\"i\":" << t.i << ",\"j\":" << t.j
       << ",\"mult\":" << mult << "}";
  }
  os << "]";
  return os.str();
}

namespace {

// Delta_a(N) * e as an integer vector, or nullopt when outside the term span
// (non-integer coordinates, or radical coordinates at a = 1).
std::optional<std::vector<BigInt>> span_target(const Element& e) {
  const Algebra& alg = *e.algebra();
  Rational d(alg.delta());
  std::vector<BigInt> v(alg.dim());
  for (std::size_t i = 0; i < alg.phi(); ++i)
    for (std::size_t j = 0; j < alg.n(); ++j) {
      Rational c = e.coords()[alg.index_of(i, j)] * d;
      if (!is_integer(c)) return std::nullopt;
      if (alg.a() == 1 && j > 0 && c != 0) return std::nullopt;
      v[alg.index_of(i, j)] = c.get_num();
    }
  return v;
}

template <typename Int>
struct SearchVectors {
  std::vector<std::vector<std::pair<std::size_t, Int>>> sparse;  // per-term support
  std::vector<std::vector<Int>> maxpre;  // maxpre[idx][c] = max_{t<=idx} |vec_t[c]|
  std::vector<Int> l1;
  std::vector<Int> l1pre;
  std::map<std::vector<Int>, std::size_t> lookup;  // dense term vector -> index
};

template <typename Int>
SearchVectors<Int> build_vectors(const TermSet& ts, std::size_t dim) {
  SearchVectors<Int> sv;
  const std::size_t m = ts.size();
  sv.sparse.resize(m);
  sv.maxpre.assign(m, std::vector<Int>(dim, Int(0)));
  sv.l1.assign(m, Int(0));
  sv.l1pre.assign(m, Int(0));
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t c = 0; c < dim; ++c) {
      const BigInt& b = ts.vectors[t][c];
      if (b == 0) continue;
      Int val;
      if constexpr (std::is_same_v<Int, std::int64_t>) val = static_cast<Int>(b.get_si());
      else val = b;
      sv.sparse[t].emplace_back(c, val);
      sv.l1[t] += val < 0 ? -val : val;
    }
    for (std::size_t c = 0; c < dim; ++c) {
      Int a = t > 0 ? sv.maxpre[t - 1][c] : Int(0);
      Int b;
      if constexpr (std::is_same_v<Int, std::int64_t>)
        b = static_cast<Int>(std::abs(ts.vectors[t][c].get_si()));
      else
        b = abs(ts.vectors[t][c]);
      sv.maxpre[t][c] = std::max(a, b);
    }
    sv.l1pre[t] = std::max(t > 0 ? sv.l1pre[t - 1] : Int(0), sv.l1[t]);
    std::vector<Int> dense(dim, Int(0));
    for (const auto& [c, val] : sv.sparse[t]) dense[c] = val;
    sv.lookup.emplace(std::move(dense), t);
  }
  return sv;
}

template <typename Int>
class Search {
 public:
  Search(const SearchVectors<Int>& sv, std::vector<Int> target)
      : sv_(sv), v_(std::move(target)) {
    for (const Int& x : v_) {
      if (x != 0) ++nnz_;
      l1res_ += x < 0 ? -x : x;
    }
  }

  // Minimal multiset size in [0, bound] by iterative deepening; indices of the
  // found witness land in `stack` (nonincreasing term order).
  std::optional<unsigned> run(unsigned bound, std::vector<std::size_t>* stack_out) {
    for (unsigned total = 0; total <= bound; ++total) {
      stack_.clear();
      if (dfs(total, sv_.sparse.size())) {
        *stack_out = stack_;
        return total;
      }
    }
    return std::nullopt;
  }

 private:
  bool feasible(unsigned rem, std::size_t maxidx) const {
    if (l1res_ > Int(rem) * sv_.l1pre[maxidx]) return false;
    const auto& mp = sv_.maxpre[maxidx];
    for (std::size_t c = 0; c < v_.size(); ++c) {
      Int a = v_[c] < 0 ? -v_[c] : v_[c];
      if (a > Int(rem) * mp[c]) return false;
    }
    return true;
  }

  void apply(std::size_t idx, int dir) {
    for (const auto& [c, val] : sv_.sparse[idx]) {
      Int before = v_[c];
      v_[c] -= Int(dir) * val;
      if (before != 0) {
        --nnz_;
        l1res_ -= before < 0 ? -before : before;
      }
      if (v_[c] != 0) {
        ++nnz_;
        l1res_ += v_[c] < 0 ? -v_[c] : v_[c];
      }
    }
  }

  bool dfs(unsigned rem, std::size_t max_count) {
    if (nnz_ == 0) return rem == 0;  // padding with +-pairs is never minimal
    if (rem == 0) return false;
    if (!feasible(rem, max_count - 1)) return false;
    if (rem == 1) {
      // residual must equal a single available term exactly
      auto it = sv_.lookup.find(v_);
      if (it == sv_.lookup.end() || it->second >= max_count) return false;
      stack_.push_back(it->second);
      return true;
    }
    if (rem == 2) {
      // meet in the middle: v = t_idx + t_i2 with i2 <= idx
      w_.assign(v_.begin(), v_.end());
      Int l1w = l1res_;
      for (std::size_t idx = max_count; idx-- > 0;) {
        for (const auto& [c, val] : sv_.sparse[idx]) {
          l1w -= w_[c] < 0 ? -w_[c] : w_[c];
          w_[c] -= val;
          l1w += w_[c] < 0 ? -w_[c] : w_[c];
        }
        if (l1w > 0 && l1w <= sv_.l1pre[idx]) {
          auto it = sv_.lookup.find(w_);
          if (it != sv_.lookup.end() && it->second <= idx) {
            stack_.push_back(idx);
            stack_.push_back(it->second);
            return true;
          }
        }
        for (const auto& [c, val] : sv_.sparse[idx]) {
          l1w -= w_[c] < 0 ? -w_[c] : w_[c];
          w_[c] += val;
          l1w += w_[c] < 0 ? -w_[c] : w_[c];
        }
      }
      return false;
    }
    for (std::size_t idx = max_count; idx-- > 0;) {
      apply(idx, +1);
      stack_.push_back(idx);
      if (dfs(rem - 1, idx + 1)) return true;
      stack_.pop_back();
      apply(idx, -1);
    }
    return false;
  }

  const SearchVectors<Int>& sv_;
  std::vector<Int> v_;
  std::vector<Int> w_;  // scratch for the two-terms-remaining probe
  long nnz_ = 0;
  Int l1res_ = Int(0);
  std::vector<std::size_t> stack_;
};

Representation witness_from_stack(const TermSet& ts, const std::vector<std::size_t>& stack) {
  std::map<std::size_t, unsigned> mult;
  for (std::size_t idx : stack) ++mult[idx];
  Representation rep;
  for (const auto& [idx, m] : mult) {
    rep.terms.emplace_back(ts.term(idx), m);
    rep.total += m;
  }
  return rep;
}

}  // namespace

bool verify_witness(const Element& e, const Representation& rep) {
  const AlgebraPtr& alg = e.algebra();
  auto target = span_target(e);
  if (!target) return false;
  std::vector<BigInt> sum(alg->dim(), BigInt(0));
  unsigned total = 0;
  for (const auto& [t, mult] : rep.terms) {
    Element v = term_value(alg, t);
    for (std::size_t c = 0; c < alg->dim(); ++c)
      sum[c] += v.coords()[c].get_num() * BigInt(mult);
    total += mult;
  }
  return total == rep.total && sum == *target;
}

MinRepResult min_rep_count(const Element& e, unsigned bound) {
  const AlgebraPtr& alg = e.algebra();
  const TermSet& ts = term_set(alg);
  auto target = span_target(e);
  MinRepResult res;
  if (!target) {
    res.status = MinRepStatus::not_in_span;
    return res;
  }

  bool fits64 = true;
  for (const BigInt& v : *target)
    if (!v.fits_slong_p() || v > 1'000'000'000L || v < -1'000'000'000L) fits64 = false;

  std::vector<std::size_t> stack;
  std::optional<unsigned> count;
  if (fits64) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, std::uint64_t>, SearchVectors<std::int64_t>>
        cache;
    const SearchVectors<std::int64_t>* sv;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto key = std::make_pair(alg->a(), alg->n());
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, build_vectors<std::int64_t>(ts, alg->dim())).first;
      sv = &it->second;
    }
    std::vector<std::int64_t> t64(target->size());
    for (std::size_t c = 0; c < target->size(); ++c) t64[c] = (*target)[c].get_si();
    Search<std::int64_t> s(*sv, std::move(t64));
    count = s.run(bound, &stack);
  } else {
    SearchVectors<BigInt> sv = build_vectors<BigInt>(ts, alg->dim());
    Search<BigInt> s(sv, *target);
    count = s.run(bound, &stack);
  }

  if (!count) {
    res.status = MinRepStatus::exhausted;
    return res;
  }
  res.status = MinRepStatus::found;
  res.count = *count;
  res.witness = witness_from_stack(ts, stack);
  if (!verify_witness(e, res.witness))
    fail(ErrorCode::internal, "minimal representation witness failed re-verification");
  return res;
}

MinRepResult min_rep_oracle(const Element& e, unsigned bound) {
  const AlgebraPtr& alg = e.algebra();
  const TermSet& ts = term_set(alg);
  auto target = span_target(e);
  MinRepResult res;
  if (!target) {
    res.status = MinRepStatus::not_in_span;
    return res;
  }

  // All multisets of each total <= bound, enumerated as combinations with
  // repetition and summed exactly. No pruning: this is the independent oracle.
  std::vector<std::size_t> pick;
  std::vector<BigInt> sum(alg->dim(), BigInt(0));
  std::function<bool(std::size_t, unsigned)> exact = [&](std::size_t start, unsigned left) {
    if (left == 0) return sum == *target;
    for (std::size_t idx = start; idx < ts.size(); ++idx) {
      for (std::size_t c = 0; c < alg->dim(); ++c) sum[c] += ts.vectors[idx][c];
      pick.push_back(idx);
      if (exact(idx, left - 1)) return true;
      pick.pop_back();
      for (std::size_t c = 0; c < alg->dim(); ++c) sum[c] -= ts.vectors[idx][c];
    }
    return false;
  };

  for (unsigned total = 0; total <= bound; ++total) {
    pick.clear();
    std::fill(sum.begin(), sum.end(), BigInt(0));
    if (exact(0, total)) {
      res.status = MinRepStatus::found;
      res.count = total;
      res.witness = witness_from_stack(ts, pick);
      return res;
    }
  }
  res.status = MinRepStatus::exhausted;
  return res;
}

StepDecomposition decompose_step(const Element& e, const TowerStep& step) {
  const AlgebraPtr& top = e.algebra();
  if (top->n() != step.n_top)
    fail(ErrorCode::invalid_argument, "decompose_step: element not in the step's top level");
  AlgebraPtr sub = Algebra::make(top->a(), step.n_sub);

  StepDecomposition d;
  d.step = step;
  d.top = top;
  d.sub = sub;
  d.indices = step_basis_indices(step);

  const std::uint64_t r_exp = top->n() / sub->n();
  std::uint64_t pt = 1;
  for (unsigned i = 0; i < step.t; ++i) pt *= step.p;
  const std::uint64_t dd = top->n() / pt;

  const std::size_t nb = d.indices.size();
  if (nb * sub->dim() != top->dim())
    fail(ErrorCode::internal, "step basis size does not match the relative degree");

  QMatrix m(top->dim(), top->dim());
  for (std::size_t w = 0; w < nb; ++w) {
    auto [l, k] = d.indices[w];
    for (std::size_t u = 0; u < sub->phi(); ++u)
      for (std::size_t v = 0; v < sub->n(); ++v) {
        Element col = Element::monomial(top, u * r_exp + l * dd, v * r_exp + k * dd);
        std::size_t colidx = w * sub->dim() + sub->index_of(u, v);
        for (std::size_t row = 0; row < top->dim(); ++row)
          m.at(row, colidx) = col.coords()[row];
      }
  }
  auto sol = solve_linear(m, e.coords());
  if (!sol)
    fail(ErrorCode::internal, "decompose_step: tensored step basis is not a basis here");

  Rational inv_scale(1);
  if (top->a() != 1) {
    Element disc = step_discriminant(top, step);
    Rational nm = abs(top->absolute_norm(disc));
    if (nm == 0) fail(ErrorCode::internal, "decompose_step: vanishing step discriminant");
    d.scale = 1 / nm;
    inv_scale = nm;
  } else {
    d.scale = Rational(1);
  }

  d.coefficients_integral = true;
  for (std::size_t w = 0; w < nb; ++w) {
    std::vector<Rational> c(sub->dim());
    for (std::size_t q = 0; q < sub->dim(); ++q) c[q] = (*sol)[w * sub->dim() + q] * inv_scale;
    Element alpha(sub, std::move(c));
    if (d.coefficients_integral && !sub->is_algebraic_integer(alpha))
      d.coefficients_integral = false;
    d.coefficients.push_back(std::move(alpha));
  }
  return d;
}

Element reassemble(const StepDecomposition& d) {
  Element acc = Element::zero(d.top);
  for (std::size_t w = 0; w < d.indices.size(); ++w) {
    auto [l, k] = d.indices[w];
    Element base = step_basis_element(d.top, d.step, l, k);
    Element coeff = embed_subalgebra(d.top, d.coefficients[w]).scalar_mul(d.scale);
    acc = acc + coeff * base;
  }
  return acc;
}

AdditivityReport additivity_check(const AlgebraPtr& alg, const TowerStep& step,
                                  const std::vector<std::pair<unsigned, unsigned>>& support,
                                  const std::vector<Element>& gammas, unsigned bound) {
  if (step.n_top != alg->n())
    fail(ErrorCode::invalid_argument, "additivity_check: step must end at the algebra level");
  if (step.second_case())
    fail(ErrorCode::invalid_argument, "additivity_check: first-case steps only");
  if (support.size() != gammas.size())
    fail(ErrorCode::invalid_argument, "additivity_check: support/coefficient size mismatch");
  AdditivityReport rep;
  const std::uint64_t p = step.p;
  rep.precondition_ok = 2 * support.size() <= p * (p - 1);
  if (!rep.precondition_ok) {
    rep.note = "|I| exceeds p(p-1)/2";
    return rep;
  }
  AlgebraPtr sub = Algebra::make(alg->a(), step.n_sub);
  Rational t_scale(1);
  if (alg->a() != 1) {
    Element disc = step_discriminant(alg, step);
    Rational nm = abs(alg->absolute_norm(disc));
    t_scale = 1 / nm;
  }
  const std::uint64_t dd = alg->n() / p;
  Element beta = Element::zero(alg);
  for (std::size_t w = 0; w < support.size(); ++w) {
    auto [i, j] = support[w];
    Element term = embed_subalgebra(alg, gammas[w]) *
                   Element::monomial(alg, i * dd, j * dd);
    beta = beta + term;
  }
  beta = beta.scalar_mul(t_scale);

  rep.n = min_rep_count(beta, bound);
  rep.conclusive = rep.n.conclusive();
  unsigned sum_m = 0;
  for (std::size_t w = 0; w < support.size(); ++w) {
    AdditivityEntry ent;
    ent.i = support[w].first;
    ent.j = support[w].second;
    ent.m = min_rep_count(gammas[w], bound);
    if (!ent.m.conclusive()) rep.conclusive = false;
    else sum_m += ent.m.count;
    rep.entries.push_back(std::move(ent));
  }
  if (rep.conclusive) rep.holds = (rep.n.count == sum_m);
  return rep;
}

}  // namespace kummer
