#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "iwz/iwasawa.hpp"
#include "iwz/selftest.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace iwz;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  long D = 5;
  std::string f;
  long p = 0;
  int N = 4;
  int h = 3;
  int ell = 1;
  int m = 2;
  std::string chi = "trivial";
  long twist = 0;
  int workers = 0;
  bool dedekind = false;
  bool selftest = false;
  std::string out;
  std::string config;
  std::vector<int> only;
};

// key=value lines; '#' starts a comment
void load_config(const std::string& path, Config& c, const std::set<std::string>& given) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto eq = line.find('=');
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(no) + ": expected key=value");
    std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (given.count(k)) continue;  // flags win
    try {
      if (k == "D") c.D = std::stol(v);
      else if (k == "f") c.f = v;
      else if (k == "p") c.p = std::stol(v);
      else if (k == "N") c.N = std::stoi(v);
      else if (k == "h") c.h = std::stoi(v);
      else if (k == "ell") c.ell = std::stoi(v);
      else if (k == "m") c.m = std::stoi(v);
      else if (k == "chi") c.chi = v;
      else if (k == "twist") c.twist = std::stol(v);
      else if (k == "workers") c.workers = std::stoi(v);
      else throw UsageError(path + ":" + std::to_string(no) + ": unknown key " + k);
    } catch (const std::logic_error&) {
      throw UsageError(path + ":" + std::to_string(no) + ": bad value for " + k);
    }
  }
}

FieldData field_of(const Config& c) {
  if (c.D < 1) throw UsageError("D must be a positive squarefree integer (1 means Q)");
  for (long d = 2; d * d <= c.D; ++d)
    if (c.D % (d * d) == 0) throw UsageError("D must be squarefree");
  return make_field(c.D);
}

// "k", "sqrtD", "ksqrtD" or "a,b" (a + b*omega); empty gives the default
IdealHNF modulus_of(const FieldData& F, const Config& c, bool default_from_p) {
  if (c.f.empty()) {
    if (!default_from_p || c.p == 0) return unit_ideal(F);
    IdealHNF f = unit_ideal(F);
    for (const auto& P : primes_above(F, c.p)) f = ideal_mul(F, f, P.ideal);
    return f;
  }
  std::smatch mt;
  static const std::regex integer(R"(^(-?\d+)$)"), root(R"(^(\d*)sqrt(\d+)$)"), pair(R"(^(-?\d+),(-?\d+)$)");
  FieldElem g;
  if (std::regex_match(c.f, mt, integer)) {
    g = fe(Q(Z(mt[1].str())));
  } else if (std::regex_match(c.f, mt, root)) {
    if (std::stol(mt[2].str()) != F.D || F.n != 2) throw UsageError("--f " + c.f + " does not live in the field");
    Z k = mt[1].str().empty() ? Z(1) : Z(mt[1].str());
    g = scale(sqrt_d(F), Q(k));
  } else if (std::regex_match(c.f, mt, pair)) {
    if (F.n == 1 && mt[2].str() != "0") throw UsageError("--f a,b needs a quadratic field");
    g = fe(Q(Z(mt[1].str())), Q(Z(mt[2].str())));
  } else {
    throw UsageError("cannot parse modulus '" + c.f + "'");
  }
  if (norm(F, g) == 0) throw UsageError("modulus must be nonzero");
  return principal(F, g);
}

Character character_of(const RayClassData& R, const std::string& sel, int64_t max_order) {
  auto even = list_even_characters(R, max_order);
  if (sel == "trivial") return trivial_character(R);
  if (sel.rfind("quad", 0) == 0) {
    for (const auto& c : even)
      if (c.M == 2) return c;
    throw UsageError("no even quadratic character for this modulus");
  }
  try {
    size_t k = std::stoul(sel);
    if (k < even.size()) return even[k];
  } catch (const std::logic_error&) {
  }
  throw UsageError("bad character selector '" + sel + "' (" + std::to_string(even.size()) + " even characters)");
}

json elem_json(const FieldData& F, const FieldElem& x) { return to_string(F, x); }

json ideal_json(const IdealHNF& I) {
  json j;
  if (I.n == 1) {
    j["hnf"] = json::array({I.a.get_str()});
  } else {
    j["hnf"] = json::array({json::array({I.a.get_str(), "0"}), json::array({I.b.get_str(), I.c.get_str()})});
  }
  j["den"] = I.den.get_str();
  j["norm"] = to_string(ideal_norm(I));
  return j;
}

json poly_json(const IwasawaPoly& P) {
  json j;
  j["p"] = P.p;
  j["N"] = P.N;
  j["ell"] = P.ell;
  j["period"] = P.period;
  j["coeffs"] = P.coeffs;
  j["mu"] = mu_invariant(P) == kInfVal ? json("inf") : json(mu_invariant(P));
  j["witness"] = mu_witness(P);
  return j;
}

SeriesJob series_job(const Config& c, const FieldData& F) {
  if (c.p == 0) throw UsageError("--p is required");
  if (!is_prime(c.p) || c.p == 2) throw UsageError("--p must be an odd prime");
  IdealHNF f = modulus_of(F, c, true);
  for (const auto& P : primes_above(F, c.p))
    if (ideal_add(F, f, P.ideal) != P.ideal)
      throw UsageError("H1Violation: every prime above p must divide the modulus");
  SeriesOptions o;
  o.p = c.p;
  o.N = c.N;
  o.h = c.h;
  o.ell = c.ell;
  o.twist_prime = c.twist;
  o.workers = c.workers;
  std::cerr << "preparing cones and residues...\n";
  return prepare_job(F, f, o);
}

int cmd_decompose(const Config& c, json& out) {
  auto F = field_of(c);
  auto f = modulus_of(F, c, false);
  auto dec = cone_decomposition(F, f, f);
  out["D"] = F.D;
  out["disc"] = F.disc;
  out["modulus"] = ideal_json(f);
  out["unit"] = elem_json(F, dec.unit);
  out["unit_exp"] = dec.unit_exp;
  json cones = json::array();
  for (const auto& C : dec.cones) {
    json jc;
    for (const auto& v : C.basis) jc["basis"].push_back(elem_json(F, v));
    for (bool z : C.zero_ok) jc["zero_ok"].push_back(z);
    cones.push_back(jc);
  }
  out["cones"] = cones;
  bool ok = cover_test(dec, 200, 1);
  out["cover"] = ok ? "pass" : "fail";
  return ok ? 0 : 1;
}

int cmd_residues(const Config& c, json& out) {
  auto F = field_of(c);
  auto f = modulus_of(F, c, false);
  auto S = zeta_setup(F, f);
  out["D"] = F.D;
  out["modulus"] = ideal_json(f);
  out["twist_prime"] = S.tw.c;
  json classes = json::array();
  for (size_t i = 0; i < S.R.size(); ++i) {
    json jc;
    jc["rep"] = ideal_json(S.R.reps[i]);
    for (const auto& rs : S.residues[i]) {
      json jr;
      jr["cone"] = rs.cone;
      for (const auto& x : rs.xs) {
        json jx;
        for (const auto& q : x.coords) jx["coords"].push_back(to_string(q));
        jx["x"] = elem_json(F, x.x);
        jr["residues"].push_back(jx);
      }
      jc["cones"].push_back(jr);
    }
    classes.push_back(jc);
  }
  out["classes"] = classes;
  return 0;
}

int cmd_zeta(const Config& c, json& out) {
  auto F = field_of(c);
  if (c.m < 1) throw UsageError("--m must be positive");
  auto f = modulus_of(F, c, false);
  std::cerr << "computing zeta values at s = " << 1 - c.m << "\n";
  auto S = zeta_setup(F, f);
  auto tw = twisted_values(S, c.m);
  auto un = untwist(F, S.R, S.tw, tw, c.m);
  out["D"] = F.D;
  out["modulus"] = ideal_json(f);
  out["s"] = 1 - c.m;
  out["twist_prime"] = S.tw.c;
  json table = json::array();
  for (size_t i = 0; i < S.R.size(); ++i) {
    json row;
    row["rep"] = ideal_json(S.R.reps[i]);
    row["value"] = to_string(un.values[i]);
    row["twisted"] = to_string(tw[i]);
    table.push_back(row);
  }
  out["partial"] = table;
  if (c.dedekind) {
    Q s = 0;
    for (const auto& v : un.values) s += v;
    out["dedekind"] = to_string(s);
  }
  if (c.chi != "trivial" || !c.dedekind) {
    auto chi = character_of(S.R, c.chi, 100);
    out["chi_order"] = chi.M;
    out["L"] = to_string(L_value(chi, S.R, un.values));
  }
  return 0;
}

int cmd_series(const Config& c, json& out) {
  auto F = field_of(c);
  auto job = series_job(c, F);
  auto chi = character_of(job.S.R, c.chi, c.p - 1);
  std::cerr << "accumulating the series over " << job.S.R.size() << " classes\n";
  auto Zs = chi_iwasawa(job, chi);
  out["D"] = F.D;
  out["p"] = c.p;
  out["modulus"] = ideal_json(job.f);
  out["working_modulus"] = ideal_json(job.f_ell);
  out["classes"] = job.S.R.size();
  out["twist_prime"] = job.S.tw.c;
  out["chi_order"] = chi.M;
  out["series"] = poly_json(Zs);
  return 0;
}

int cmd_mu(const Config& c, json& out) {
  auto F = field_of(c);
  auto job = series_job(c, F);
  auto chi = character_of(job.S.R, c.chi, c.p - 1);
  std::cerr << "checking the norm chain over " << job.S.R.size() << " classes\n";
  auto rep = verify_norm_theorem(job, chi);
  auto fmt = [](int v) { return v == kInfVal ? json("inf") : json(v); };
  out["D"] = F.D;
  out["p"] = c.p;
  out["modulus"] = ideal_json(job.f);
  out["twist_prime"] = job.S.tw.c;
  out["chi_order"] = chi.M;
  out["mu"] = fmt(rep.mu);
  out["witness"] = rep.witness;
  out["mu_Z"] = fmt(rep.mu_Z);
  out["mu_Y"] = fmt(rep.mu_Y);
  out["mu_X"] = fmt(rep.mu_X);
  out["mu_G"] = fmt(rep.mu_G);
  bool chain = rep.mu_Z == rep.mu_Y && rep.mu_Y == rep.mu_X && rep.mu_X == rep.mu_G;
  out["chain_equal"] = chain;
  out["result"] = rep.pass && chain ? "pass" : "fail";
  return rep.pass && chain ? 0 : 1;
}

int cmd_selftest(const Config& c, json& out) {
  SelftestOptions o;
  o.workers = c.workers;
  o.only = c.only;
  auto results = run_acceptance(o, std::cerr);
  bool all = true;
  for (const auto& r : results) {
    json j;
    j["criterion"] = r.id;
    j["name"] = r.name;
    j["pass"] = r.pass;
    j["detail"] = r.detail;
    out["criteria"].push_back(j);
    all = all && r.pass;
    std::cerr << format_result(r) << "\n";
  }
  out["result"] = all ? "pass" : "fail";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shintani cones, partial zeta values and Iwasawa series of real quadratic fields"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);
  Config c;
  std::set<std::string> given;

  auto common = [&](CLI::App* s) {
    s->add_option("--D", c.D, "squarefree D; 1 means Q");
    s->add_option("--f", c.f, "modulus: k, sqrtD, ksqrtD or a,b for a+b*omega");
    s->add_option("--config", c.config, "key=value configuration file");
    s->add_option("--out", c.out, "write JSON here instead of stdout");
  };
  auto padic_opts = [&](CLI::App* s) {
    s->add_option("--p", c.p, "odd prime");
    s->add_option("--N", c.N, "coefficient precision p^N");
    s->add_option("--h", c.h, "grid level");
    s->add_option("--ell", c.ell, "layer of the Z_p-extension");
    s->add_option("--chi", c.chi, "trivial, quad, or an index into the even characters");
    s->add_option("--twist", c.twist, "force the twist prime");
    s->add_option("--workers", c.workers, "OpenMP workers; 1 runs the serial kernel");
  };

  auto* dec = app.add_subcommand("decompose", "cone decomposition and cover certificate");
  common(dec);
  auto* res = app.add_subcommand("residues", "residue sets of every ray class");
  common(res);
  auto* zeta = app.add_subcommand("zeta", "exact partial zeta values at s = 1 - m");
  common(zeta);
  zeta->add_option("--m", c.m, "evaluate at s = 1 - m");
  zeta->add_flag("--dedekind", c.dedekind, "also report the sum over all classes");
  zeta->add_option("--chi", c.chi, "character for the L value");
  auto* series = app.add_subcommand("series", "Iwasawa polynomial of a character");
  common(series);
  padic_opts(series);
  auto* mu = app.add_subcommand("mu", "mu-invariant and the norm chain");
  common(mu);
  padic_opts(mu);
  mu->add_flag("--selftest", c.selftest, "run the acceptance suite instead");
  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->add_option("--out", c.out, "write JSON here instead of stdout");
  self->add_option("--workers", c.workers, "OpenMP workers");
  self->add_option("--only", c.only, "criterion numbers to run");
  for (auto* s : {mu}) s->add_option("--only", c.only, "criterion numbers for --selftest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  for (const auto* o : sub->get_options())
    if (o->count() > 0) given.insert(o->get_name(false, true).substr(2));

  json out;
  int rc = 0;
  try {
    if (!c.config.empty()) load_config(c.config, c, given);
    std::string name = sub->get_name();
    if (name == "decompose") rc = cmd_decompose(c, out);
    else if (name == "residues") rc = cmd_residues(c, out);
    else if (name == "zeta") rc = cmd_zeta(c, out);
    else if (name == "series") rc = cmd_series(c, out);
    else if (name == "mu") rc = c.selftest ? cmd_selftest(c, out) : cmd_mu(c, out);
    else rc = cmd_selftest(c, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == "H1Violation" || e.code() == "TwistRejected" ? 2 : 1;
  }

  std::string text = out.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) {
      std::cerr << "cannot write " << c.out << "\n";
      return 2;
    }
    f << text;
  }
  return rc;
}
