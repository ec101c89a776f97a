#include "measures.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace kummer {

namespace {

// Root-of-unity powers and radical powers for one (algebra, precision) pair.
struct EvalContext {
  std::vector<ComplexBall> zeta;  // zeta_N^t, t in [0, N)
  std::vector<RealBall> root;     // a^(j/N), j in [0, N)
};

using CtxKey = std::tuple<std::uint64_t, std::uint64_t, long>;

std::shared_ptr<const EvalContext> eval_context(const Algebra& alg, long prec) {
  static std::mutex mu;
  static std::map<CtxKey, std::shared_ptr<const EvalContext>> cache;
  CtxKey key{alg.a(), alg.n(), prec};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto ctx = std::make_shared<EvalContext>();
  const std::uint64_t n = alg.n();
  RealBall two_pi = RealBall::pi(prec) * RealBall::from_int(2, prec);
  ctx->zeta.reserve(n);
  ctx->root.reserve(n);
  for (std::uint64_t t = 0; t < n; ++t) {
    RealBall theta = two_pi.mul_rational(make_rational(BigInt(t), BigInt(n)));
    ctx->zeta.emplace_back(theta.cos(), theta.sin());
  }
  for (std::uint64_t j = 0; j < n; ++j) {
    // a^(j/N) via the N-th root of the exact integer a^j (tight endpoints)
    BigInt aj = pow_int(BigInt(alg.a()), j);
    Mpf x(static_cast<mpfr_prec_t>(prec)), lo(static_cast<mpfr_prec_t>(prec)),
        hi(static_cast<mpfr_prec_t>(prec));
    mpfr_set_z(x.get(), aj.get_mpz_t(), MPFR_RNDD);
    mpfr_rootn_ui(lo.get(), x.get(), static_cast<unsigned long>(n), MPFR_RNDD);
    mpfr_set_z(x.get(), aj.get_mpz_t(), MPFR_RNDU);
    mpfr_rootn_ui(hi.get(), x.get(), static_cast<unsigned long>(n), MPFR_RNDU);
    ctx->root.push_back(RealBall::from_endpoints(lo.get(), hi.get(), prec));
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, std::move(ctx));
  return it->second;
}

}  // namespace

ComplexBall embed_value(const Element& e, const Embedding& emb, long precision_bits) {
  if (precision_bits < 32)
    fail(ErrorCode::invalid_argument, "embed_value: precision_bits must be >= 32");
  const Algebra& alg = *e.algebra();
  auto ctx = eval_context(alg, precision_bits);
  ComplexBall acc(precision_bits);
  const std::uint64_t n = alg.n();
  for (std::size_t i = 0; i < alg.phi(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = e.coords()[alg.index_of(i, j)];
      if (v == 0) continue;
      std::uint64_t zp = (i * emb.l + j * emb.k) % n;
      ComplexBall term = ctx->zeta[zp].mul_real(ctx->root[j]).mul_rational(v);
      acc = acc + term;
    }
  return acc;
}

std::vector<ComplexBall> embed_values(const Element& e, const std::vector<Embedding>& embs,
                                      long precision_bits) {
  std::vector<ComplexBall> out;
  out.reserve(embs.size());
  for (const Embedding& emb : embs) out.push_back(embed_value(e, emb, precision_bits));
  return out;
}

namespace {

struct Interval {
  Rational low, high;
};

// Adaptive-precision loop with monotone shrinking via intersection. `eval`
// returns the enclosure at one precision.
template <typename F>
MeasureReport adaptive(const Element& e, const Rational& tol, long precision_cap, F eval) {
  if (tol <= 0) fail(ErrorCode::invalid_argument, "tolerance must be positive");
  std::optional<Interval> acc;
  for (long prec = 128; prec <= precision_cap; prec *= 2) {
    Interval cur = eval(prec);
    if (acc) {
      cur.low = std::max(cur.low, acc->low);
      cur.high = std::min(cur.high, acc->high);
      if (cur.low > cur.high)
        fail(ErrorCode::internal, "adaptive enclosures became disjoint");
    }
    acc = cur;
    if (acc->high - acc->low < tol) {
      MeasureReport r;
      r.low = acc->low;
      r.high = acc->high;
      r.precision_bits = prec;
      r.field_status = e.algebra()->field_status();
      return r;
    }
  }
  fail(ErrorCode::nonconvergence,
       "enclosure did not reach the requested tolerance below the precision cap");
}

}  // namespace

MeasureReport house(const Element& e, const Rational& tol, long precision_cap) {
  const auto& embs = e.algebra()->embeddings();
  return adaptive(e, tol, precision_cap, [&](long prec) {
    Interval iv{Rational(0), Rational(0)};
    bool first = true;
    for (const Embedding& emb : embs) {
      RealBall a = embed_value(e, emb, prec).abs();
      Rational lo = a.lower(), hi = a.upper();
      if (lo < 0) lo = 0;
      if (first) {
        iv = {lo, hi};
        first = false;
      } else {
        iv.low = std::max(iv.low, lo);  // max of lower bounds bounds the max below
        iv.high = std::max(iv.high, hi);
      }
    }
    return iv;
  });
}

namespace {

Interval mean_square_over(const Element& e, const std::vector<Embedding>& embs, long prec) {
  RealBall sum(prec);
  for (const Embedding& emb : embs) sum = sum + embed_value(e, emb, prec).abs_sq();
  RealBall mean = sum.div_ui(static_cast<unsigned long>(embs.size()));
  Rational lo = mean.lower(), hi = mean.upper();
  if (lo < 0) lo = 0;  // the mean of squares is nonnegative
  return {lo, hi};
}

}  // namespace

MeasureReport mean_square(const Element& e, const Rational& tol, long precision_cap) {
  const auto& embs = e.algebra()->embeddings();
  return adaptive(e, tol, precision_cap,
                  [&](long prec) { return mean_square_over(e, embs, prec); });
}

MeasureReport mean_square_relative(const Element& e, std::uint64_t n1, const Rational& tol,
                                   long precision_cap) {
  auto embs = e.algebra()->relative_embeddings(n1);
  return adaptive(e, tol, precision_cap,
                  [&](long prec) { return mean_square_over(e, embs, prec); });
}

std::vector<TowerStep> tower_steps(const Algebra& alg) {
  std::vector<TowerStep> steps;
  std::uint64_t level = 1;
  for (const auto& [p, e] : alg.factorization()) {
    for (unsigned t = 1; t <= e; ++t) {
      TowerStep s;
      s.p = p;
      s.t = t;
      s.n_sub = level;
      level *= p;
      s.n_top = level;
      steps.push_back(s);
    }
  }
  return steps;
}

TowerStep make_step(std::uint64_t p, std::uint64_t n_top) {
  if (p < 2 || n_top % p != 0)
    fail(ErrorCode::invalid_argument, "make_step: p must divide the top level");
  TowerStep s;
  s.p = p;
  s.n_top = n_top;
  s.n_sub = n_top / p;
  s.t = 0;
  std::uint64_t m = n_top;
  while (m % p == 0) {
    m /= p;
    ++s.t;
  }
  return s;
}

std::vector<std::pair<unsigned, unsigned>> step_basis_indices(const TowerStep& step) {
  std::vector<std::pair<unsigned, unsigned>> idx;
  const unsigned p = static_cast<unsigned>(step.p);
  const unsigned lmax = step.second_case() ? p - 1 : p - 2;
  for (unsigned l = 0; l <= lmax; ++l)
    for (unsigned k = 0; k <= p - 1; ++k) idx.emplace_back(l, k);
  return idx;
}

Element step_basis_element(const AlgebraPtr& top, const TowerStep& step, unsigned l,
                           unsigned k) {
  std::uint64_t pt = 1;
  for (unsigned i = 0; i < step.t; ++i) pt *= step.p;
  const std::uint64_t d = top->n() / pt;  // zeta_{p^t} = x^d, a^(1/p^t) = y^d
  return Element::monomial(top, l * d, k * d);
}

Element embed_subalgebra(const AlgebraPtr& big, const Element& sub_elem) {
  const Algebra& sub = *sub_elem.algebra();
  if (big->n() % sub.n() != 0 || big->a() != sub.a())
    fail(ErrorCode::invalid_argument, "embed_subalgebra: incompatible levels");
  const std::uint64_t r = big->n() / sub.n();
  Element acc = Element::zero(big);
  for (std::size_t u = 0; u < sub.phi(); ++u)
    for (std::size_t v = 0; v < sub.n(); ++v) {
      const Rational& c = sub_elem.coords()[sub.index_of(u, v)];
      if (c == 0) continue;
      acc = acc + Element::monomial(big, u * r, v * r, c);
    }
  return acc;
}

std::optional<Element> project_to_subalgebra(const AlgebraPtr& sub, const Element& e) {
  const AlgebraPtr& big = e.algebra();
  if (big->n() % sub->n() != 0 || big->a() != sub->a())
    fail(ErrorCode::invalid_argument, "project_to_subalgebra: incompatible levels");
  const std::uint64_t r = big->n() / sub->n();
  QMatrix m(big->dim(), sub->dim());
  for (std::size_t u = 0; u < sub->phi(); ++u)
    for (std::size_t v = 0; v < sub->n(); ++v) {
      Element img = Element::monomial(big, u * r, v * r);
      for (std::size_t row = 0; row < big->dim(); ++row)
        m.at(row, sub->index_of(u, v)) = img.coords()[row];
    }
  auto sol = solve_linear(m, e.coords());
  if (!sol) return std::nullopt;
  return Element(sub, std::move(*sol));
}

Element ring_det(const std::vector<std::vector<Element>>& m, const AlgebraPtr& alg) {
  const std::size_t n = m.size();
  if (n == 0) return Element::one(alg);
  for (const auto& row : m)
    if (row.size() != n) fail(ErrorCode::dimension_mismatch, "ring_det: non-square");

  // Samuelson-Berkowitz: division-free characteristic polynomial of the
  // k x k leading blocks via Toeplitz products; det = (-1)^n * constant term.
  // coeffs holds char-poly coefficients, leading (=1) first.
  std::vector<Element> coeffs{Element::one(alg), -m[0][0]};
  for (std::size_t k = 2; k <= n; ++k) {
    // first column of the (k+1) x k Toeplitz factor:
    // [1, -a_kk, -(R S), -(R M S), ..., -(R M^{k-2} S)]
    std::vector<Element> col;
    col.reserve(k + 1);
    col.push_back(Element::one(alg));
    col.push_back(-m[k - 1][k - 1]);
    std::vector<Element> w(k - 1);
    for (std::size_t i = 0; i < k - 1; ++i) w[i] = m[i][k - 1];  // S
    for (std::size_t step = 0; step + 2 <= k; ++step) {
      Element dot = Element::zero(alg);
      for (std::size_t i = 0; i < k - 1; ++i)
        if (!w[i].is_zero() && !m[k - 1][i].is_zero()) dot = dot + m[k - 1][i] * w[i];
      col.push_back(-dot);
      if (step + 3 <= k) {
        std::vector<Element> w2(k - 1, Element::zero(alg));
        for (std::size_t i = 0; i < k - 1; ++i)
          for (std::size_t j2 = 0; j2 < k - 1; ++j2)
            if (!m[i][j2].is_zero() && !w[j2].is_zero()) w2[i] = w2[i] + m[i][j2] * w[j2];
        w = std::move(w2);
      }
    }
    std::vector<Element> next(k + 1, Element::zero(alg));
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j < coeffs.size() && j <= i; ++j) {
        if (i - j >= col.size()) continue;
        if (col[i - j].is_zero() || coeffs[j].is_zero()) continue;
        next[i] = next[i] + col[i - j] * coeffs[j];
      }
    coeffs = std::move(next);
  }
  Element det = coeffs.back();
  if (n % 2 == 1) det = -det;
  return det;
}

Element step_discriminant(const AlgebraPtr& alg, const TowerStep& step) {
  if (alg->a() == 1) return Element::one(alg);  // Delta convention bypasses the bases
  if (alg->n() % step.n_top != 0)
    fail(ErrorCode::invalid_argument, "step_discriminant: step does not fit the algebra");
  AlgebraPtr top = Algebra::make(alg->a(), step.n_top);
  AlgebraPtr sub = Algebra::make(alg->a(), step.n_sub);

  auto idx = step_basis_indices(step);
  const std::size_t nb = idx.size();
  auto rel = top->relative_embeddings(step.n_sub);
  if (rel.size() != step.basis_size())
    fail(ErrorCode::internal, "step relative degree mismatch");

  // Tr(b_u b_v) depends only on the exponent sums; memoize.
  std::map<std::pair<unsigned, unsigned>, Element> trace_memo;
  auto trace_of = [&](unsigned lsum, unsigned ksum) -> const Element& {
    auto key = std::make_pair(lsum, ksum);
    auto it = trace_memo.find(key);
    if (it != trace_memo.end()) return it->second;
    std::uint64_t pt = 1;
    for (unsigned i = 0; i < step.t; ++i) pt *= step.p;
    const std::uint64_t d = top->n() / pt;
    Element mono = Element::monomial(top, static_cast<std::uint64_t>(lsum) * d,
                                     static_cast<std::uint64_t>(ksum) * d);
    Element tr = top->relative_trace(mono, step.n_sub);
    auto in_sub = project_to_subalgebra(sub, tr);
    if (!in_sub)
      fail(ErrorCode::internal, "step trace does not lie in the sub-level image");
    return trace_memo.emplace(key, std::move(*in_sub)).first->second;
  };

  std::vector<std::vector<Element>> tm(nb, std::vector<Element>(nb, Element::zero(sub)));
  for (std::size_t u = 0; u < nb; ++u)
    for (std::size_t v = 0; v < nb; ++v)
      tm[u][v] = trace_of(idx[u].first + idx[v].first, idx[u].second + idx[v].second);

  Element disc_sub = ring_det(tm, sub);
  return embed_subalgebra(alg, disc_sub);
}

BigInt delta_value(const AlgebraPtr& alg, bool reverse_steps) {
  if (alg->a() == 1) return BigInt(1);
  if (alg->n() == 1) return BigInt(1);
  auto steps = tower_steps(*alg);
  if (reverse_steps) std::reverse(steps.begin(), steps.end());
  Element prod = Element::one(alg);
  for (const TowerStep& s : steps) prod = prod * step_discriminant(alg, s);
  Rational nm = alg->absolute_norm(prod);
  Rational a = abs(nm);
  if (!is_integer(a)) fail(ErrorCode::internal, "Delta is not an integer");
  if (a == 0) fail(ErrorCode::internal, "degenerate step basis: Delta = 0");
  return a.get_num();
}

const BigInt& Algebra::delta() const {
  std::lock_guard<std::mutex> lock(delta_mu_);
  if (!delta_cache_) delta_cache_ = delta_value(shared_from_this());
  return *delta_cache_;
}

}  // namespace kummer
