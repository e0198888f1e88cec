#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "voa/voa.hpp"

namespace {

constexpr int kUsage = 64;

struct Options {
  std::string voa = "heisenberg";
  std::string central_charge = "1/2";
  int T = 1;
  std::string g1 = "id";
  std::string n, m, p;
  int cutoff = 6, slack = 2, probe_cap = 4, param_cap = 1, weight_cap = 3;
  std::string report, cert_dir;
  unsigned long seed = 0;
  int jobs = 1;
};

voa::CheckConfig make_config(const Options& o) {
  voa::CheckConfig cfg;
  cfg.session = voa::SessionParams::make(o.voa, o.central_charge, o.T, o.g1);
  if (!o.n.empty()) cfg.n = o.n;
  if (!o.m.empty()) cfg.m = o.m;
  if (!o.p.empty()) cfg.p = o.p;
  if (o.cutoff < 0 || o.slack < 0 || o.probe_cap < 0 || o.param_cap < 0 || o.weight_cap < 0)
    throw voa::UsageError("caps must be nonnegative");
  if (o.jobs < 1) throw voa::UsageError("--jobs must be at least 1");
  cfg.cutoff = o.cutoff;
  cfg.slack = o.slack;
  cfg.probe_cap = o.probe_cap;
  cfg.param_cap = o.param_cap;
  cfg.weight_cap = o.weight_cap;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  return cfg;
}

voa::FracIndex single_index(const voa::VoaContext& ctx, const std::string& text, const char* name) {
  if (text.empty()) return ctx.integer(0);
  try {
    auto x = ctx.parse_index(text);
    if (x.numerator() < 0) throw voa::UsageError(std::string("--") + name + " must be nonnegative");
    return x;
  } catch (const voa::DomainError& e) {
    throw voa::UsageError(std::string("bad --") + name + ": " + e.what());
  }
}

void emit(const voa::json& report, const std::string& path) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw voa::UsageError("cannot write report to '" + path + "'");
  out << text;
}

voa::json quotient_report(const voa::VoaContext& ctx, const voa::ZhuQuotient& q, const voa::SpanFamily& f,
                          const Options& o) {
  std::map<int, std::vector<std::string>> by_weight;
  for (const auto& r : q.representatives) by_weight[r.weight].push_back(ctx.text(r));
  voa::json weights = voa::json::array();
  for (int w = 0; w <= o.cutoff; ++w) {
    voa::json reps = voa::json::array();
    for (const auto& s : by_weight[w]) reps.push_back(s);
    weights.push_back({{"weight", w}, {"count", reps.size()}, {"representatives", reps}});
  }
  voa::json span = f.to_json();
  span["cap"] = q.cap;
  return {{"span", span}, {"total", q.representatives.size()}, {"relation_rank", q.relation_rank}, {"weights", weights}};
}

int cmd_zhu_basis(const Options& o) {
  auto cfg = make_config(o);
  auto ctx = cfg.session.context();
  voa::SpanCache cache(*ctx);
  const auto n = single_index(*ctx, o.n, "n");
  auto f = voa::SpanFamily::zhu(n);
  auto q = voa::zhu_quotient(*ctx, cache, f, o.cutoff, o.slack);
  voa::json report = {{"command", "zhu-basis"}, {"params", cfg.params_json()}, {"caps", cfg.caps_json()}};
  report["quotient"] = quotient_report(*ctx, q, f, o);
  emit(report, o.report);
  if (!o.report.empty()) {
    for (const auto& w : report["quotient"]["weights"])
      std::cout << "weight " << w["weight"].get<int>() << ": " << w["count"].get<std::size_t>() << "\n";
  }
  return 0;
}

int cmd_bimodule_dims(const Options& o) {
  auto cfg = make_config(o);
  auto ctx = cfg.session.context();
  voa::SpanCache cache(*ctx);
  const auto m = single_index(*ctx, o.m, "m");
  const auto n = single_index(*ctx, o.n, "n");
  voa::json report = {{"command", "bimodule-dims"}, {"params", cfg.params_json()}, {"caps", cfg.caps_json()}};
  voa::json tables = voa::json::array();
  for (const auto& f : {voa::SpanFamily::odag(m, n), voa::SpanFamily::oprime(m, n)})
    tables.push_back(quotient_report(*ctx, voa::zhu_quotient(*ctx, cache, f, o.cutoff, o.slack), f, o));
  report["quotients"] = tables;
  emit(report, o.report);
  return 0;
}

int cmd_verify(const std::string& id, const Options& o) {
  auto cfg = make_config(o);
  auto ctx = cfg.session.context();
  voa::SpanCache cache(*ctx);
  voa::CheckResult res = voa::run_check(id, cfg, *ctx, cache);
  std::optional<std::string> cert_file;
  if (!o.cert_dir.empty()) {
    std::filesystem::create_directories(o.cert_dir);
    const std::string path = (std::filesystem::path(o.cert_dir) / (id + ".certs.json")).string();
    std::ofstream out(path);
    if (!out) throw voa::UsageError("cannot write certificates to '" + path + "'");
    out << voa::certificate_document(res, cfg).dump(2) << "\n";
    cert_file = path;
  }
  emit(voa::report_json(res, cfg, cert_file), o.report);
  if (!o.report.empty()) std::cout << id << ": " << res.status() << " (" << res.cases.size() << " cases)\n";
  return res.exit_code();
}

int cmd_certify(const std::string& file) {
  voa::json doc;
  voa::CertifyOutcome outcome;
  try {
    doc = voa::read_json_file(file);
    outcome = voa::certify_document(doc);
  } catch (const voa::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  for (const auto& v : outcome.verdicts) {
    std::cout << (v.ok ? "ok      " : "REJECTED") << "  " << v.label;
    if (!v.ok) {
      if (v.offending_term >= 0) std::cout << "  (offending term " << v.offending_term << ")";
      if (!v.message.empty()) std::cout << "  " << v.message;
    }
    std::cout << "\n";
  }
  std::cout << outcome.verdicts.size() << " certificates, " << (outcome.all_ok() ? "all verified" : "rejections present")
            << "\n";
  return outcome.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for twisted Zhu algebras and bimodules"};
  app.require_subcommand(1);
  Options o;
  auto add_session = [&](CLI::App* sub) {
    sub->add_option("--voa", o.voa, "heisenberg | virasoro")->capture_default_str();
    sub->add_option("--central-charge", o.central_charge, "central charge (virasoro), a/b")->capture_default_str();
    sub->add_option("--T", o.T, "order of g1")->capture_default_str();
    sub->add_option("--g1", o.g1, "id | neg")->capture_default_str();
    sub->add_option("--n", o.n, "n in (1/T)Z, a/b");
    sub->add_option("--m", o.m, "m in (1/T)Z, a/b");
    sub->add_option("--p", o.p, "p in (1/T)Z, a/b");
    sub->add_option("--cutoff", o.cutoff, "weight cutoff")->capture_default_str();
    sub->add_option("--slack", o.slack, "extra span weight above the cutoff")->capture_default_str();
    sub->add_option("--probe-cap", o.probe_cap, "probe weight cap for Omega")->capture_default_str();
    sub->add_option("--param-cap", o.param_cap, "grid bound for unset n, m, p")->capture_default_str();
    sub->add_option("--weight-cap", o.weight_cap, "weight cap for each input")->capture_default_str();
    sub->add_option("--report", o.report, "report path (default stdout)");
    sub->add_option("--cert-dir", o.cert_dir, "certificate directory");
    sub->add_option("--seed", o.seed, "seed for sampled suites")->capture_default_str();
    sub->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
  };
  auto* zb = app.add_subcommand("zhu-basis", "truncated quotient V/O_{g,n}(V)");
  auto* bd = app.add_subcommand("bimodule-dims", "truncated bimodule quotient dimensions");
  auto* vf = app.add_subcommand("verify", "run a named check");
  std::string check_id;
  vf->add_option("check-id", check_id, "check id")->required();
  auto* cf = app.add_subcommand("certify", "re-verify a certificate file");
  std::string cert_file;
  cf->add_option("file", cert_file, "certificate file")->required();
  for (auto* sub : {zb, bd, vf}) add_session(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  try {
    if (zb->parsed()) return cmd_zhu_basis(o);
    if (bd->parsed()) return cmd_bimodule_dims(o);
    if (vf->parsed()) return cmd_verify(check_id, o);
    if (cf->parsed()) return cmd_certify(cert_file);
  } catch (const voa::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const voa::DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
