// kummer: verification CLI for the splitting fields of X^N - a. Links the
// C API only; structured results come back as JSON and are rendered here.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kummer/kummer.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

struct Output {
  std::string format = "text";  // text | json | csv
  std::string path;             // empty = stdout
};

int emit(const Output& out, const std::string& payload) {
  if (out.path.empty() || out.path == "-") {
    std::cout << payload << "\n";
    return kExitOk;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write " << out.path << "\n";
    return kExitUsage;
  }
  f << payload;
  return kExitOk;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  kmr_string_free(s);
  return out;
}

[[noreturn]] void die(kmr_status st) {
  std::cerr << "error: " << kmr_last_error() << "\n";
  bool usage = st == KMR_ERR_INVALID_ARGUMENT || st == KMR_ERR_PARSE ||
               st == KMR_ERR_UNKNOWN_SUITE;
  std::exit(usage ? kExitUsage : kExitFailure);
}

struct AlgebraHandle {
  kmr_algebra* alg = nullptr;
  ~AlgebraHandle() { kmr_algebra_destroy(alg); }
};

struct ElementHandle {
  kmr_element* e = nullptr;
  ~ElementHandle() { kmr_element_destroy(e); }
};

void open_algebra(AlgebraHandle& h, std::uint64_t a, std::uint64_t n) {
  kmr_status st = kmr_algebra_create(a, n, &h.alg);
  if (st != KMR_OK) die(st);
}

void parse_expr(const AlgebraHandle& alg, const std::string& expr, ElementHandle& out) {
  kmr_status st = kmr_element_parse(alg.alg, expr.c_str(), &out.e);
  if (st != KMR_OK) die(st);
}

// decimal approximation of an exact "p/q" string (presentation only)
std::string approx_ratio(const std::string& s) {
  bool neg = !s.empty() && s[0] == '-';
  std::string body = neg ? s.substr(1) : s;
  auto slash = body.find('/');
  std::string num = slash == std::string::npos ? body : body.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  auto lead = [](const std::string& d) {
    return std::stod(d.substr(0, std::min<std::size_t>(15, d.size())));
  };
  double v = lead(num) / lead(den);
  long expo = static_cast<long>(num.size() > 15 ? num.size() - 15 : 0) -
              static_cast<long>(den.size() > 15 ? den.size() - 15 : 0);
  while (v >= 10.0) { v /= 10.0; ++expo; }
  while (v > 0.0 && v < 1.0) { v *= 10.0; --expo; }
  std::ostringstream os;
  os.precision(9);
  os << std::fixed << (neg ? "-" : "") << v;
  if (expo) os << "e" << (expo > 0 ? "+" : "") << expo;
  return os.str();
}

std::string interval_text(const json& iv) {
  std::string lo = iv["low"].get<std::string>(), hi = iv["high"].get<std::string>();
  if (lo.size() + hi.size() < 40) return "[" + lo + ", " + hi + "]";
  return "[" + approx_ratio(lo) + ", " + approx_ratio(hi) + "] (exact bounds in JSON)";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic and measure verification in Q(zeta_N, a^(1/N))"};
  app.set_config("--config", "", "key=value config file (flags override)");
  app.require_subcommand(1);

  std::uint64_t a = 2, n = 2, n1 = 0, p = 0;
  long prec = 128, tol_bits = 64;
  unsigned bound = 6;
  std::uint64_t trials = 100, seed = 1;
  std::string expr, suite, kstr = "1", dstr = "1/5", cap = "1000000";
  std::string mode, corpus, height, p_min;
  Output out;
  std::string json_path, csv_path;

  app.add_option("--a", a, "radicand a (>= 1; 1 or not a perfect power)")
      ->capture_default_str();
  app.add_option("--N", n, "level N (>= 1)")->capture_default_str();
  app.add_option("--prec", prec, "precision in bits")->capture_default_str();
  app.add_option("--tol-bits", tol_bits, "tolerance 2^-bits for enclosures")
      ->capture_default_str();
  app.add_option("--bound", bound, "search bound for minimal representations")
      ->capture_default_str();
  app.add_option("--seed", seed, "deterministic seed")->capture_default_str();
  app.add_option("--format", out.format, "output format: text|json|csv")
      ->capture_default_str();
  app.add_option("--output", out.path, "output path (default stdout)");

  auto* c_field = app.add_subcommand("field", "algebra dimensions, factorization, status");
  auto* c_eval = app.add_subcommand("eval", "embedding values of an expression");
  c_eval->add_option("--expr", expr, "element expression")->required();
  auto* c_measure = app.add_subcommand("measure", "house and mean-square enclosures");
  c_measure->add_option("--expr", expr, "element expression")->required();
  auto* c_delta = app.add_subcommand("delta", "exact tower discriminant Delta_a(N)");
  auto* c_minrep = app.add_subcommand("minrep", "minimal representation of Delta*e");
  c_minrep->add_option("--expr", expr, "element expression")->required();
  auto* c_decomp = app.add_subcommand("decompose", "coefficients over a tower step basis");
  c_decomp->add_option("--expr", expr, "element expression")->required();
  c_decomp->add_option("--p", p, "step prime (default: largest prime of N)");
  auto* c_verify = app.add_subcommand("verify", "run a verification suite");
  c_verify->add_option("--suite", suite, "suite id, e.g. lemma3.4")->required();
  c_verify->add_option("--trials", trials, "number of trials")->capture_default_str();
  c_verify->add_option("--n1", n1, "sub-level N1 (identity suites)");
  c_verify->add_option("--k", kstr, "k parameter (rational)")->capture_default_str();
  c_verify->add_option("--delta", dstr, "delta parameter (rational)")->capture_default_str();
  c_verify->add_option("--cap", cap, "search cap")->capture_default_str();
  std::string c1_override;
  c_verify->add_option("--c1", c1_override, "override c1 (rational, >= e^(e^2))");
  c_verify->add_option("--mode", mode, "suite mode (e.g. sparse|dense)");
  std::string hypothesis;
  c_verify->add_option("--hypothesis", hypothesis, "hypothesis mode (lemma4.2: relaxed|strict)");
  c_verify->add_option("--corpus", corpus, "corpus list a:N,a:N,... (thm1.1)");
  c_verify->add_option("--height", height, "coefficient height for random elements");
  c_verify->add_option("--p-min", p_min, "prime threshold stand-in (thm4.4)");
  c_verify->add_option("--json", json_path, "also write the JSON report to a file");
  c_verify->add_option("--csv", csv_path, "also write the CSV trial table to a file");
  auto* c_const = app.add_subcommand("constants", "derive c1..c4 with grid certification");
  c_const->add_option("--k", kstr, "k parameter (rational)")->capture_default_str();
  c_const->add_option("--delta", dstr, "delta parameter (rational)")->capture_default_str();
  c_const->add_option("--cap", cap, "search cap")->capture_default_str();

  // options like --a/--N may follow the subcommand
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_field->parsed()) {
      AlgebraHandle h;
      open_algebra(h, a, n);
      char* s = nullptr;
      kmr_status st = kmr_algebra_info_json(h.alg, &s);
      if (st != KMR_OK) die(st);
      std::string payload = take(s);
      if (out.format == "json") return emit(out, payload);
      json j = json::parse(payload);
      std::ostringstream os;
      os << "Q_" << j["a"] << "(" << j["n"] << "): dim " << j["dim"] << " = N*phi(N) = "
         << j["n"] << "*" << j["phi"] << "\n";
      os << "factorization:";
      for (auto& pe : j["factorization"]) os << " " << pe[0] << "^" << pe[1];
      os << "\nfield status: " << j["field_status"].get<std::string>() << "\n";
      os << "Phi_N = " << j["cyclotomic"].get<std::string>();
      return emit(out, os.str());
    }

    if (c_eval->parsed()) {
      AlgebraHandle h;
      open_algebra(h, a, n);
      ElementHandle e;
      parse_expr(h, expr, e);
      char* s = nullptr;
      kmr_status st = kmr_element_eval_json(e.e, prec, &s);
      if (st != KMR_OK) die(st);
      std::string payload = take(s);
      if (out.format == "json") return emit(out, payload);
      json j = json::parse(payload);
      std::ostringstream os;
      os << "embedding values at " << j["prec"] << " bits (radius = enclosure width):\n";
      for (auto& v : j["values"])
        os << "  (l=" << v["l"] << ",k=" << v["k"] << "): " << v["re"].get<std::string>()
           << " + i*(" << v["im"].get<std::string>() << ")  [radius "
           << v["radius"].get<std::string>() << "]\n";
      std::string text = os.str();
      text.pop_back();
      return emit(out, text);
    }

    if (c_measure->parsed()) {
      AlgebraHandle h;
      open_algebra(h, a, n);
      ElementHandle e;
      parse_expr(h, expr, e);
      char* s = nullptr;
      kmr_status st = kmr_element_measure_json(e.e, tol_bits, &s);
      if (st != KMR_OK) die(st);
      std::string payload = take(s);
      if (out.format == "json") return emit(out, payload);
      json j = json::parse(payload);
      std::ostringstream os;
      os << "house ~ " << j["house"]["approx"].get<std::string>() << "\n";
      os << "  in " << interval_text(j["house"]) << "\n";
      os << "mean-square ~ " << j["msq"]["approx"].get<std::string>() << "\n";
      os << "  in " << interval_text(j["msq"]) << "\n";
      os << "precision: " << j["precision_bits"] << " bits, field status: "
         << j["field_status"].get<std::string>();
      return emit(out, os.str());
    }

    if (c_delta->parsed()) {
      AlgebraHandle h;
      open_algebra(h, a, n);
      char* s = nullptr;
      kmr_status st = kmr_delta(h.alg, &s);
      if (st != KMR_OK) die(st);
      return emit(out, take(s));
    }

    if (c_minrep->parsed()) {
      AlgebraHandle h;
      open_algebra(h, a, n);
      ElementHandle e;
      parse_expr(h, expr, e);
      char* s = nullptr;
      kmr_status st = kmr_element_minrep_json(e.e, bound, &s);
      if (st != KMR_OK) die(st);
      std::string payload = take(s);
      if (out.format == "json") return emit(out, payload);
      json j = json::parse(payload);
      std::string status = j["status"];
      std::ostringstream os;
      if (status == "found") {
        os << "count " << j["count"] << "\nwitness:";
        for (auto& t : j["witness"])
          os << " " << (t["sign"].get<int>() > 0 ? "+" : "-") << t["mult"].get<unsigned>()
             << "*z^" << t["i"].get<unsigned>() << "*r^" << t["j"].get<unsigned>();
      } else if (status == "exhausted") {
        os << "exhausted: no representation with at most " << j["bound"] << " terms";
      } else {
        os << "not in span: Delta*e is outside the integer span of the term set";
      }
      return emit(out, os.str());
    }

    if (c_decomp->parsed()) {
      AlgebraHandle h;
      open_algebra(h, a, n);
      ElementHandle e;
      parse_expr(h, expr, e);
      if (p == 0) {
        char* info = nullptr;
        kmr_status st0 = kmr_algebra_info_json(h.alg, &info);
        if (st0 != KMR_OK) die(st0);
        json j = json::parse(take(info));
        p = j["factorization"].back()[0].get<std::uint64_t>();
      }
      char* s = nullptr;
      kmr_status st = kmr_element_decompose_json(e.e, p, &s);
      if (st != KMR_OK) die(st);
      std::string payload = take(s);
      if (out.format == "json") return emit(out, payload);
      json j = json::parse(payload);
      std::ostringstream os;
      os << "step p=" << j["p"] << " t=" << j["t"] << ": Q_a(" << j["n_sub"] << ") -> Q_a("
         << j["n_top"] << ")\nscale r = " << j["scale"].get<std::string>()
         << "\nintegral coefficients: " << (j["integral"].get<bool>() ? "yes" : "no")
         << "\nalpha_{l,k} (beta = sum alpha * r * zeta^l * rad^k):\n";
      for (auto& c : j["coefficients"]) {
        std::string v = c["value"].get<std::string>();
        if (v == "0") continue;
        os << "  (l=" << c["l"] << ",k=" << c["k"] << "): " << v << "\n";
      }
      std::string text = os.str();
      text.pop_back();
      return emit(out, text);
    }

    if (c_verify->parsed()) {
      json params = json::object();
      params["a"] = std::to_string(a);
      params["n"] = std::to_string(n);
      if (n1) params["n1"] = std::to_string(n1);
      params["bound"] = std::to_string(bound);
      params["tol_bits"] = std::to_string(tol_bits);
      params["k"] = kstr;
      params["delta"] = dstr;
      params["cap"] = cap;
      if (!mode.empty()) params["mode"] = mode;
      if (!hypothesis.empty()) params["hypothesis"] = hypothesis;
      if (!c1_override.empty()) params["c1"] = c1_override;
      if (!corpus.empty()) params["corpus"] = corpus;
      if (!height.empty()) params["height"] = height;
      if (!p_min.empty()) params["p_min"] = p_min;
      if (suite == "lemma3.6") params["derive"] = "full";

      char* s = nullptr;
      kmr_status st = kmr_verify(suite.c_str(), params.dump().c_str(), trials, seed, 0, &s);
      if (st != KMR_OK) die(st);
      std::string report = take(s);
      if (!json_path.empty()) {
        std::ofstream f(json_path, std::ios::binary);
        f << report;
      }
      if (!csv_path.empty()) {
        char* c = nullptr;
        st = kmr_verify(suite.c_str(), params.dump().c_str(), trials, seed, 1, &c);
        if (st != KMR_OK) die(st);
        std::ofstream f(csv_path, std::ios::binary);
        f << take(c);
      }
      int code = 0;
      kmr_report_exit_code(report.c_str(), &code);
      if (out.format == "json") {
        emit(out, report);
      } else if (out.format == "csv") {
        char* c = nullptr;
        st = kmr_verify(suite.c_str(), params.dump().c_str(), trials, seed, 1, &c);
        if (st != KMR_OK) die(st);
        emit(out, take(c));
      } else {
        json j = json::parse(report);
        std::ostringstream os;
        os << "suite " << j["suite"].get<std::string>() << ": " << j["passes"] << "/"
           << j["conclusive"] << " conclusive passes, "
           << (j["trials"].get<std::uint64_t>() - j["conclusive"].get<std::uint64_t>())
           << " inconclusive, " << j["failures"].size() << " failures (seed " << j["seed"]
           << ")";
        if (!j["note"].get<std::string>().empty())
          os << "\nnote: " << j["note"].get<std::string>();
        for (auto& f : j["failures"]) {
          os << "\nFAIL " << f["inputs"].get<std::string>();
          if (f.contains("lhs"))
            os << " lhs=" << interval_text(f["lhs"]) << " rhs=" << interval_text(f["rhs"]);
          if (f.contains("note")) os << " (" << f["note"].get<std::string>() << ")";
        }
        emit(out, os.str());
      }
      return code;
    }

    if (c_const->parsed()) {
      char* s = nullptr;
      kmr_status st = kmr_derive_constants_json(kstr.c_str(), dstr.c_str(), cap.c_str(), &s);
      if (st != KMR_OK) die(st);
      std::string payload = take(s);
      if (out.format == "json") return emit(out, payload);
      json j = json::parse(payload);
      std::ostringstream os;
      os << "k = " << j["k"].get<std::string>() << ", delta = " << j["delta"].get<std::string>()
         << "\nc1 = " << j["c1"].get<std::string>() << " (" << j["c1_note"].get<std::string>()
         << ")\nc2 = " << j["c2"].get<std::string>() << "\nc3 = "
         << (j["c3"].is_null() ? std::string("exhausted") : j["c3"].get<std::string>()) << " ("
         << j["c3_note"].get<std::string>() << ")\nc4 = "
         << (j["c4"].is_null() ? std::string("exhausted") : j["c4"].get<std::string>()) << " ("
         << j["c4_note"].get<std::string>() << ")";
      return emit(out, os.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
