// rulekit command line. Talks to the library only through the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rulekit/rulekit.h"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string config;
  std::string surface, delta, kappa, lambda, domain;
  std::string f, g;
  std::string u_range, v_range, grid;
  std::string prop;
  std::optional<double> tol, perturb;
  std::string perturb_mode;
  std::vector<double> constants;
  std::optional<int> sign;
  std::string free;
  std::string format, out;
  bool normals = false;
  bool list = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    json j = json::parse(ss.str());
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
}

// Flags override whatever the config file set.
std::string merged_config(const Flags& fl) {
  json j = fl.config.empty() ? json::object() : load_config(fl.config);
  const bool inline_inv = !fl.delta.empty() || !fl.kappa.empty() || !fl.lambda.empty();
  if (!fl.surface.empty() && inline_inv) {
    throw UsageError("--surface and --delta/--kappa/--lambda are exclusive");
  }
  if (!fl.surface.empty()) j["surface"] = fl.surface;
  if (inline_inv) {
    json s = {{"delta", fl.delta.empty() ? "1" : fl.delta},
              {"kappa", fl.kappa.empty() ? "0" : fl.kappa},
              {"lambda", fl.lambda.empty() ? "0" : fl.lambda}};
    const std::string& dom = !fl.domain.empty() ? fl.domain : fl.u_range;
    if (dom.empty()) throw UsageError("inline invariants need --domain or --u-range");
    s["domain"] = dom;
    j["surface"] = s;
  } else if (!fl.domain.empty()) {
    if (!j.contains("surface") || !j["surface"].is_object()) {
      throw UsageError("--domain applies to inline surfaces only");
    }
    j["surface"]["domain"] = fl.domain;
  }
  if (!fl.f.empty()) j["f"] = fl.f;
  if (!fl.g.empty()) j["g"] = fl.g;
  if (!fl.u_range.empty()) j["u_range"] = fl.u_range;
  if (!fl.v_range.empty()) j["v_range"] = fl.v_range;
  if (!fl.grid.empty()) j["grid"] = fl.grid;
  if (!fl.prop.empty()) j["prop"] = fl.prop;
  if (fl.tol) j["tol"] = *fl.tol;
  if (fl.perturb) j["perturb"] = *fl.perturb;
  if (!fl.perturb_mode.empty()) j["perturb_mode"] = fl.perturb_mode;
  if (!fl.constants.empty()) j["constants"] = fl.constants;
  if (fl.sign) j["sign"] = *fl.sign;
  if (!fl.free.empty()) j["free"] = fl.free;
  if (!fl.format.empty()) j["format"] = fl.format;
  if (fl.normals) j["normals"] = true;
  return j.dump();
}

std::string out_path(const Flags& fl) {
  if (!fl.out.empty()) return fl.out;
  if (fl.config.empty()) return {};
  const json j = load_config(fl.config);
  return j.contains("out") && j["out"].is_string() ? j["out"].get<std::string>() : "";
}

bool emit(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return std::fflush(stdout) == 0;
  }
  std::ofstream os(path, std::ios::binary);
  os << text;
  os.close();
  if (!os) {
    std::cerr << "rulekit: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

int report_error(rk_status st) {
  std::cerr << "rulekit: " << rk_status_name(st) << ": " << rk_last_error() << '\n';
  return kExitUsage;
}

int run(const std::string& cmd, const Flags& fl) {
  char* text = nullptr;
  rk_status st = RK_OK;
  if (cmd == "catalog") {
    if (fl.format.empty() || fl.format == "text") st = rk_catalog_text(&text);
    else if (fl.format == "json") st = rk_catalog_json(&text);
    else throw UsageError("catalog formats are text and json");
  } else if (cmd == "verify" && fl.list) {
    st = rk_proposition_ids(&text);
  } else {
    const std::string cfg = merged_config(fl);
    if (cmd == "eval") st = rk_eval(cfg.c_str(), &text);
    else if (cmd == "verify") st = rk_verify(cfg.c_str(), &text);
    else st = rk_mesh(cfg.c_str(), &text);
  }
  if (st != RK_OK && st != RK_PROPERTY_FAILED) {
    rk_string_free(text);
    return report_error(st);
  }
  const bool written = emit(out_path(fl), text);
  rk_string_free(text);
  if (!written) return kExitUsage;
  if (st == RK_PROPERTY_FAILED) {
    std::cerr << "rulekit: " << rk_last_error() << '\n';
    return kExitFail;
  }
  return kExitPass;
}

void add_common(CLI::App* sub, Flags& fl) {
  sub->add_option("--config", fl.config, "JSON run configuration; flags override it");
  sub->add_option("--surface", fl.surface, "catalog surface name");
  sub->add_option("--delta", fl.delta, "distribution parameter delta(u)");
  sub->add_option("--kappa", fl.kappa, "conical curvature kappa(u)");
  sub->add_option("--lambda", fl.lambda, "striction parameter lambda(u)");
  sub->add_option("--domain", fl.domain, "u interval a:b of an inline surface");
  sub->add_option("--u-range", fl.u_range, "sampled u interval a:b");
  sub->add_option("--v-range", fl.v_range, "sampled v interval a:b");
  sub->add_option("--grid", fl.grid, "grid size NuxNv");
  sub->add_option("--out", fl.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rulekit: ruled surfaces with right relative normalizations"};
  app.require_subcommand(1);
  Flags fl;

  CLI::App* catalog = app.add_subcommand("catalog", "list the built-in surfaces");
  catalog->add_option("--format", fl.format, "text or json");
  catalog->add_option("--out", fl.out, "output path (default stdout)");

  CLI::App* eval = app.add_subcommand("eval", "tabulate surface, normalization and field data");
  add_common(eval, fl);
  eval->add_option("--f", fl.f, "support coefficient f(u)");
  eval->add_option("--g", fl.g, "support coefficient g(u)");
  eval->add_option("--format", fl.format, "json or csv");

  CLI::App* verify = app.add_subcommand("verify", "check a proposition on a constructed support");
  add_common(verify, fl);
  verify->add_option("--prop", fl.prop, "proposition id");
  verify->add_option("--tol", fl.tol, "pass tolerance on the residual");
  verify->add_option("--perturb", fl.perturb, "relative perturbation applied to f");
  verify->add_option("--perturb-mode", fl.perturb_mode, "modulated or uniform");
  verify->add_option("--constants", fl.constants, "construction constants");
  verify->add_option("--sign", fl.sign, "branch sign, 1 or -1");
  verify->add_option("--free", fl.free, "free function of the construction");
  verify->add_flag("--list", fl.list, "print the proposition ids");

  CLI::App* mesh = app.add_subcommand("mesh", "write a Wavefront OBJ of the surface");
  add_common(mesh, fl);
  mesh->add_option("--format", fl.format, "obj");
  mesh->add_flag("--normals", fl.normals, "emit vn lines from the unit normal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }
  try {
    return run(app.get_subcommands().front()->get_name(), fl);
  } catch (const UsageError& e) {
    std::cerr << "rulekit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "rulekit: " << e.what() << '\n';
    return kExitUsage;
  }
}
