// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance [criterion numbers...]

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "voa/voa.hpp"
#include "oracles.hpp"

using namespace voa;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

CheckConfig config(const std::string& voa, const std::string& c, int T, const std::string& g1) {
  CheckConfig cfg;
  cfg.session = SessionParams::make(voa, c, T, g1);
  return cfg;
}

std::string tally(const CheckResult& r) {
  std::map<std::string, std::size_t> t;
  for (const auto& c : r.cases) ++t[c.status];
  std::string s;
  for (const auto& [k, v] : t) s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
  return s.empty() ? "vacuous" : s;
}

// Runs one check, records its status and returns the result.
CheckResult run(Outcome& out, const std::string& id, const CheckConfig& cfg, const VoaContext& ctx, SpanCache& cache,
                const std::string& tag) {
  CheckResult r = run_check(id, cfg, ctx, cache);
  out.require(r.status() == "pass", tag + " " + id + " " + r.status());
  out.require(!r.cases.empty(), tag + " " + id + " has no cases");
  std::cerr << "  " << tag << " " << id << ": " << r.status() << " (" << tally(r) << ")\n";
  return r;
}

// Writes the certificates to disk and re-checks them from the file with a fresh context.
bool certify_via_file(const json& doc, const std::string& name) {
  const auto path = std::filesystem::temp_directory_path() / ("voa-acceptance-" + name + ".certs.json");
  {
    std::ofstream f(path);
    f << doc.dump(2) << "\n";
  }
  const CertifyOutcome outcome = certify_document(read_json_file(path.string()));
  std::filesystem::remove(path);
  return outcome.all_ok() && outcome.verdicts.size() == doc.at("certificates").size();
}

Outcome kernel() {
  Outcome out;
  for (auto cfg : {config("heisenberg", "1", 1, "id"), config("virasoro", "1/2", 1, "id")}) {
    cfg.weight_cap = 4;
    auto ctx = cfg.session.context();
    SpanCache cache(*ctx);
    CheckResult r = run(out, "kernel-invariants", cfg, *ctx, cache, cfg.session.voa_name());
    std::size_t checked = 0;
    for (const auto& c : r.cases) checked += c.detail.value("checked", std::size_t{0});
    out.detail << cfg.session.voa_name() << " identities=" << checked << "; ";
  }
  return out;
}

Outcome classical_zhu() {
  Outcome out;
  auto heis = VoaContext::heisenberg();
  SpanCache hc(heis);
  auto zq = zhu_quotient(heis, hc, SpanFamily::zhu(heis.integer(0)), 6, 2);
  out.require(zq.representatives.size() == 7, "heisenberg representative count");
  for (std::size_t w = 0; w < zq.representatives.size(); ++w)
    out.require(zq.representatives[w].weight == static_cast<int>(w), "one representative per weight");
  out.detail << "heisenberg reps=" << zq.representatives.size() << "; ";

  auto vir = VoaContext::virasoro(make_rational(1, 2));
  SpanCache vc(vir);
  auto vq = zhu_quotient(vir, vc, SpanFamily::zhu(vir.integer(0)), 6, 2);
  const int oracle = oracle::brute_force_quotient(vir, oracle::classical_generators(vir, 8), 6, 8);
  out.require(static_cast<int>(vq.representatives.size()) == oracle, "virasoro quotient vs elimination oracle");
  out.detail << "virasoro reps=" << vq.representatives.size() << " oracle=" << oracle;
  return out;
}

Outcome anomaly() {
  Outcome out;
  auto cfg = config("heisenberg", "1", 2, "neg");
  auto ctx = cfg.session.context();
  SpanCache cache(*ctx);
  CheckResult r = run(out, "twist-anomaly", cfg, *ctx, cache, "T=2");
  out.require(r.notes.value("anomaly", "") == "1/16", "vacuum eigenvalue");
  out.detail << "L0 on twisted vacuum = " << r.notes.value("anomaly", "?");
  return out;
}

Outcome twisted_zhu() {
  Outcome out;
  struct Setup {
    const char *voa, *c;
    int T;
    const char *g, *n;
  };
  const Setup setups[] = {{"heisenberg", "1", 1, "id", "0"},    {"heisenberg", "1", 1, "id", "1"},
                          {"heisenberg", "1", 2, "neg", "0"},   {"heisenberg", "1", 2, "neg", "1/2"},
                          {"heisenberg", "1", 2, "neg", "1"},   {"virasoro", "1/2", 1, "id", "0"},
                          {"virasoro", "1/2", 1, "id", "1"}};
  std::size_t total = 0;
  for (const auto& s : setups) {
    auto cfg = config(s.voa, s.c, s.T, s.g);
    cfg.n = s.n;
    cfg.weight_cap = 3;
    cfg.cutoff = 8;
    cfg.slack = 3;
    auto ctx = cfg.session.context();
    SpanCache cache(*ctx);
    const std::string tag = std::string(s.voa) + "/" + s.g + "/n=" + s.n;
    for (const char* id : {"zhu-assoc", "zhu-unit-center", "zhu-epimorphism", "zhu-theta"}) {
      CheckResult r = run_check(id, cfg, *ctx, cache);
      out.require(r.status() == "pass", tag + " " + id + " " + r.status());
      // the epimorphism chain is empty at level 0
      const bool vacuous_ok = std::string(id) == "zhu-epimorphism" && std::string(s.n) == "0";
      out.require(!r.cases.empty() || vacuous_ok, tag + " " + id + " has no cases");
      total += r.cases.size();
      std::cerr << "  " << tag << " " << id << ": " << r.status() << " (" << tally(r) << ")\n";
    }
  }
  out.detail << total << " cases";
  return out;
}

Outcome o_vanishing() {
  Outcome out;
  for (const char* n : {"0", "1/2"}) {
    auto cfg = config("heisenberg", "1", 2, "neg");
    cfg.n = n;
    cfg.weight_cap = 4;
    cfg.probe_cap = 5;
    auto ctx = cfg.session.context();
    SpanCache cache(*ctx);
    CheckResult r = run(out, "o-vanishing", cfg, *ctx, cache, std::string("n=") + n);
    out.require(r.stability.value("stable", false), std::string("Omega stable at n=") + n);
    out.detail << "n=" << n << " dim Omega=" << r.stability.at("dimensions").at(n) << "; ";
  }
  return out;
}

Outcome k_s_o() {
  Outcome out;
  for (auto cfg : {config("heisenberg", "1", 1, "id"), config("heisenberg", "1", 2, "neg")}) {
    cfg.weight_cap = 4;
    auto ctx = cfg.session.context();
    SpanCache cache(*ctx);
    CheckResult r = run(out, "prop-k-s-O", cfg, *ctx, cache, "T=" + std::to_string(cfg.session.T));
    out.detail << "T=" << cfg.session.T << " " << tally(r) << "; ";
  }
  return out;
}

Outcome bimodule() {
  Outcome out;
  for (auto cfg : {config("heisenberg", "1", 1, "id"), config("heisenberg", "1", 2, "id"), config("heisenberg", "1", 2, "neg")}) {
    cfg.weight_cap = 3;
    cfg.param_cap = 1;
    auto ctx = cfg.session.context();
    SpanCache cache(*ctx);
    const std::string tag = "T=" + std::to_string(cfg.session.T) + "/" + automorphism_name(cfg.session.g1);
    std::size_t n = 0;
    for (const char* id : {"thm-bimodule-1", "thm-bimodule-2", "thm-bimodule-3", "prop-two-actions-commute"})
      n += run(out, id, cfg, *ctx, cache, tag).cases.size();
    out.detail << tag << " " << n << " cases; ";
  }
  return out;
}

Outcome flagship() {
  Outcome out;
  const std::pair<const char*, const char*> grid[] = {{"0", "0"}, {"1/2", "0"}, {"1/2", "1/2"}, {"1", "1/2"}};
  for (const auto& [n, m] : grid) {
    auto cfg = config("heisenberg", "1", 2, "neg");
    cfg.n = n;
    cfg.m = m;
    cfg.param_cap = 1;
    cfg.weight_cap = 3;
    auto ctx = cfg.session.context();
    SpanCache cache(*ctx);
    const std::string tag = std::string("n=") + n + " m=" + m;
    std::size_t certs = 0;
    for (const char* id : {"dj-conjecture", "prop-two-right-actions", "congruence-relation", "lemma-O-star-a",
                           "lemma-assoc-3"}) {
      CheckResult r = run(out, id, cfg, *ctx, cache, tag);
      json doc = certificate_document(r, cfg);
      std::size_t memberships = 0;
      for (const auto& c : r.cases) memberships += c.kind == "membership";
      out.require(doc.at("certificates").size() == memberships, tag + " " + id + " certificate per membership");
      out.require(certify_via_file(doc, id), tag + " " + id + " certify");
      certs += doc.at("certificates").size();
    }
    out.detail << tag << " certs=" << certs << "; ";
  }
  return out;
}

Outcome determinism() {
  Outcome out;
  auto cfg = config("heisenberg", "1", 2, "neg");
  cfg.weight_cap = 2;
  std::string report[2], certs[2];
  for (int i = 0; i < 2; ++i) {
    CheckConfig c = cfg;
    c.jobs = i + 1;
    auto ctx = c.session.context();
    SpanCache cache(*ctx);
    CheckResult r = run_check("thm-bimodule-1", c, *ctx, cache);
    json rep = report_json(r, cfg, std::nullopt);
    rep.erase("timing");
    report[i] = rep.dump(2);
    certs[i] = certificate_document(r, cfg).dump(2);
  }
  out.require(report[0] == report[1], "report bytes differ");
  out.require(certs[0] == certs[1], "certificate bytes differ");

  json doc = json::parse(certs[0]);
  out.require(certify_document(doc).all_ok(), "original certificates verify");
  bool mutated = false;
  for (auto& cert : doc.at("certificates")) {
    if (cert.at("terms").empty()) continue;
    auto& cell = cert.at("terms")[0].at("coefficient").at("poly")[0];
    const Rational bumped = rational_from_strings(cell[0].get<std::string>(), cell[1].get<std::string>()) + 1;
    cell = json::array({bumped.get_num().get_str(), bumped.get_den().get_str()});
    mutated = true;
    break;
  }
  out.require(mutated, "no certificate to mutate");
  const CertifyOutcome verdict = certify_document(doc);
  out.require(!verdict.all_ok(), "mutated certificate accepted");
  out.detail << "reports identical, mutated certificate rejected";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* title;
    Outcome (*fn)();
  };
  const Criterion all[] = {
      {1, "kernel invariants", kernel},
      {2, "classical Zhu algebra sanity", classical_zhu},
      {3, "twist anomaly", anomaly},
      {4, "twisted Zhu algebra suite", twisted_zhu},
      {5, "o-vanishing on the twisted Fock module", o_vanishing},
      {6, "generalized circle memberships", k_s_o},
      {7, "bimodule theorems and commuting actions", bimodule},
      {8, "O'' and O''' in O' with certificates", flagship},
      {9, "determinism and certificate rejection", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool ok = true;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << "criterion " << c.id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.title << "  (" << o.detail.str()
              << " " << timing << ")" << std::endl;
    ok = ok && o.ok;
  }
  return ok ? 0 : 1;
}
