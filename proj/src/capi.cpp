// extern-C surface of libkummer. All exceptions are caught at the boundary
// and mapped to status codes; messages go to a thread-local slot.

#include "kummer/kummer.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include <json.hpp>

#include "algebra.hpp"
#include "ball.hpp"
#include "bounds.hpp"
#include "measures.hpp"
#include "representations.hpp"
#include "suites.hpp"

using namespace kummer;

struct kmr_algebra {
  AlgebraPtr alg;
};

struct kmr_element {
  Element elem;
};

namespace {

thread_local std::string g_last_error;

kmr_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return KMR_ERR_INVALID_ARGUMENT;
    case ErrorCode::perfect_power_radicand: return KMR_ERR_PERFECT_POWER_RADICAND;
    case ErrorCode::mixed_algebra: return KMR_ERR_MIXED_ALGEBRA;
    case ErrorCode::dimension_mismatch: return KMR_ERR_DIMENSION_MISMATCH;
    case ErrorCode::parse_error: return KMR_ERR_PARSE;
    case ErrorCode::not_in_span: return KMR_ERR_NOT_IN_SPAN;
    case ErrorCode::exhausted: return KMR_ERR_EXHAUSTED;
    case ErrorCode::nonconvergence: return KMR_ERR_NONCONVERGENCE;
    case ErrorCode::domain_error: return KMR_ERR_DOMAIN;
    case ErrorCode::search_exhausted: return KMR_ERR_SEARCH_EXHAUSTED;
    case ErrorCode::unknown_suite: return KMR_ERR_UNKNOWN_SUITE;
    case ErrorCode::internal: return KMR_ERR_INTERNAL;
  }
  return KMR_ERR_INTERNAL;
}

template <typename F>
kmr_status guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return KMR_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return KMR_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return KMR_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// short decimal rendering of an exact enclosure, for human-facing output
std::string approx_interval(const Rational& lo, const Rational& hi) {
  Mpf mid(128), w(128), t(128);
  mpfr_set_q(mid.get(), Rational((lo + hi) / 2).get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(t.get(), Rational(hi - lo).get_mpq_t(), MPFR_RNDU);
  mpfr_swap(w.get(), t.get());
  char* s = nullptr;
  mpfr_asprintf(&s, "%.18Rg (width %.3Rg)", mid.get(), w.get());
  std::string out = s;
  mpfr_free_str(s);
  return out;
}

std::string json_escape(const std::string& s) {
  return nlohmann::json(s).dump();  // includes the quotes
}

}  // namespace

extern "C" {

const char* kmr_version(void) { return "1.0.0"; }

const char* kmr_last_error(void) { return g_last_error.c_str(); }

void kmr_string_free(char* s) { std::free(s); }

kmr_status kmr_algebra_create(uint64_t a, uint64_t n, kmr_algebra** out) {
  return guarded([&] {
    if (!out) fail(ErrorCode::invalid_argument, "null output pointer");
    *out = new kmr_algebra{Algebra::make(a, n)};
  });
}

void kmr_algebra_destroy(kmr_algebra* alg) { delete alg; }

uint64_t kmr_algebra_a(const kmr_algebra* alg) { return alg->alg->a(); }
uint64_t kmr_algebra_n(const kmr_algebra* alg) { return alg->alg->n(); }
uint64_t kmr_algebra_phi(const kmr_algebra* alg) { return alg->alg->phi(); }
uint64_t kmr_algebra_dim(const kmr_algebra* alg) { return alg->alg->dim(); }

kmr_field_status kmr_algebra_field_status(const kmr_algebra* alg) {
  switch (alg->alg->field_status()) {
    case FieldStatus::certified_field: return KMR_FIELD_CERTIFIED;
    case FieldStatus::degree_drop_detected: return KMR_FIELD_DEGREE_DROP;
    case FieldStatus::unverified: return KMR_FIELD_UNVERIFIED;
  }
  return KMR_FIELD_UNVERIFIED;
}

kmr_status kmr_algebra_info_json(const kmr_algebra* alg, char** json_out) {
  return guarded([&] {
    if (!alg || !json_out) fail(ErrorCode::invalid_argument, "null argument");
    const Algebra& A = *alg->alg;
    std::ostringstream os;
    os << "{\"a\":" << A.a() << ",\"n\":" << A.n() << ",\"phi\":" << A.phi()
       << ",\"dim\":" << A.dim() << ",\"factorization\":[";
    bool first = true;
    for (const auto& [p, e] : A.factorization()) {
      if (!first) os << ",";
      first = false;
      os << "[" << p << "," << e << "]";
    }
    os << "],\"field_status\":\"" << to_string(A.field_status()) << "\",\"cyclotomic\":"
       << json_escape(A.cyclo().to_string("X")) << "}";
    *json_out = dup_string(os.str());
  });
}

kmr_status kmr_delta(const kmr_algebra* alg, char** decimal_out) {
  return guarded([&] {
    if (!alg || !decimal_out) fail(ErrorCode::invalid_argument, "null argument");
    *decimal_out = dup_string(alg->alg->delta().get_str());
  });
}

kmr_status kmr_element_parse(const kmr_algebra* alg, const char* expr, kmr_element** out) {
  return guarded([&] {
    if (!alg || !expr || !out) fail(ErrorCode::invalid_argument, "null argument");
    *out = new kmr_element{parse_element(alg->alg, expr)};
  });
}

void kmr_element_destroy(kmr_element* e) { delete e; }

kmr_status kmr_element_to_string(const kmr_element* e, char** out) {
  return guarded([&] {
    if (!e || !out) fail(ErrorCode::invalid_argument, "null argument");
    *out = dup_string(e->elem.to_string());
  });
}

kmr_status kmr_element_eval_json(const kmr_element* e, long precision_bits, char** out) {
  return guarded([&] {
    if (!e || !out) fail(ErrorCode::invalid_argument, "null argument");
    std::ostringstream os;
    os << "{\"prec\":" << precision_bits << ",\"values\":[";
    bool first = true;
    for (const Embedding& emb : e->elem.algebra()->embeddings()) {
      ComplexBall v = embed_value(e->elem, emb, precision_bits);
      if (!first) os << ",";
      first = false;
      os << "{\"l\":" << emb.l << ",\"k\":" << emb.k << ",\"re\":"
         << json_escape(v.re.to_string(30)) << ",\"im\":" << json_escape(v.im.to_string(30))
         << ",\"radius\":\"" << v.radius().get_str() << "\"}";
    }
    os << "]}";
    *out = dup_string(os.str());
  });
}

kmr_status kmr_element_measure_json(const kmr_element* e, long tol_bits, char** out) {
  return guarded([&] {
    if (!e || !out) fail(ErrorCode::invalid_argument, "null argument");
    Rational tol(BigInt(1), BigInt(1) << (tol_bits > 0 ? tol_bits : 64));
    tol.canonicalize();
    MeasureReport h = house(e->elem, tol);
    MeasureReport m = mean_square(e->elem, tol);
    std::ostringstream os;
    os << "{\"house\":{\"low\":\"" << h.low.get_str() << "\",\"high\":\""
       << h.high.get_str() << "\",\"approx\":" << json_escape(approx_interval(h.low, h.high))
       << "},\"msq\":{\"low\":\"" << m.low.get_str() << "\",\"high\":\""
       << m.high.get_str() << "\",\"approx\":" << json_escape(approx_interval(m.low, m.high))
       << "},\"precision_bits\":" << std::max(h.precision_bits, m.precision_bits)
       << ",\"field_status\":\"" << to_string(h.field_status) << "\"}";
    *out = dup_string(os.str());
  });
}

kmr_status kmr_element_minrep_json(const kmr_element* e, unsigned bound, char** out) {
  return guarded([&] {
    if (!e || !out) fail(ErrorCode::invalid_argument, "null argument");
    MinRepResult r = min_rep_count(e->elem, bound);
    std::ostringstream os;
    switch (r.status) {
      case MinRepStatus::found:
        os << "{\"status\":\"found\",\"count\":" << r.count
           << ",\"witness\":" << r.witness.to_json() << "}";
        break;
      case MinRepStatus::not_in_span:
        os << "{\"status\":\"not_in_span\"}";
        break;
      case MinRepStatus::exhausted:
        os << "{\"status\":\"exhausted\",\"bound\":" << bound << "}";
        break;
    }
    *out = dup_string(os.str());
  });
}

kmr_status kmr_element_decompose_json(const kmr_element* e, uint64_t p, char** out) {
  return guarded([&] {
    if (!e || !out) fail(ErrorCode::invalid_argument, "null argument");
    TowerStep step = make_step(p, e->elem.algebra()->n());
    StepDecomposition d = decompose_step(e->elem, step);
    std::ostringstream os;
    os << "{\"p\":" << step.p << ",\"t\":" << step.t << ",\"n_sub\":" << step.n_sub
       << ",\"n_top\":" << step.n_top << ",\"scale\":\"" << d.scale.get_str()
       << "\",\"coefficients\":[";
    bool first = true;
    for (std::size_t w = 0; w < d.indices.size(); ++w) {
      if (!first) os << ",";
      first = false;
      os << "{\"l\":" << d.indices[w].first << ",\"k\":" << d.indices[w].second
         << ",\"value\":" << json_escape(d.coefficients[w].to_string()) << "}";
    }
    os << "],\"integral\":" << (d.coefficients_integral ? "true" : "false") << "}";
    *out = dup_string(os.str());
  });
}

kmr_status kmr_verify(const char* suite_id, const char* params_json, uint64_t trials,
                      uint64_t seed, int format, char** out) {
  return guarded([&] {
    if (!suite_id || !out) fail(ErrorCode::invalid_argument, "null argument");
    std::map<std::string, std::string> params;
    if (params_json && *params_json) {
      nlohmann::json j = nlohmann::json::parse(params_json, nullptr, false);
      if (j.is_discarded() || !j.is_object())
        fail(ErrorCode::invalid_argument, "params_json must be a flat JSON object");
      for (auto& [k, v] : j.items())
        params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    SuiteReport rep = run_suite(suite_id, params, trials, seed);
    *out = dup_string(format == 1 ? rep.to_csv() : rep.to_json());
  });
}

kmr_status kmr_report_exit_code(const char* report_json, int* out) {
  return guarded([&] {
    if (!report_json || !out) fail(ErrorCode::invalid_argument, "null argument");
    nlohmann::json j = nlohmann::json::parse(report_json, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::invalid_argument, "malformed report JSON");
    std::uint64_t trials = j.value("trials", 0ULL);
    std::uint64_t conclusive = j.value("conclusive", 0ULL);
    std::uint64_t passes = j.value("passes", 0ULL);
    if (conclusive > passes) *out = 1;
    else if (trials > 0 && conclusive == 0) *out = 3;
    else *out = 0;
  });
}

kmr_status kmr_derive_constants_json(const char* k, const char* delta, const char* cap,
                                     char** out) {
  return guarded([&] {
    Rational kq(k ? k : "1");
    kq.canonicalize();
    Rational dq(delta ? delta : "1/5");
    dq.canonicalize();
    BigInt capz(cap ? cap : "1000000");
    BoundConfig cfg = derive_constants(kq, dq, capz);
    *out = dup_string(cfg.to_json());
  });
}

}  // extern "C"
