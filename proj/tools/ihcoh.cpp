// ihcoh: intersection cohomology Betti numbers from fans, divisors, weight matrices and trinomials.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ihcoh/json_io.hpp"

using namespace ihcoh;

namespace {

constexpr const char* kVersion = "ihcoh 0.1.0";

struct Output {
  json data = json::object();
  std::vector<std::string> text;

  void poly(const std::string& key, const IntPolynomial& p) {
    data[key] = to_json(p);
    text.push_back(key + " = " + p.to_string());
  }
  void line(const std::string& s) { text.push_back(s); }
};

struct Flags {
  bool poincare = false, enhance = false, lifting = false, enhanced_lifting = false;
};

json read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open input file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

std::string cone_text(const Cone& c) {
  std::string s = "Cone(";
  for (std::size_t i = 0; i < c.rays().size(); ++i) s += (i ? ", " : "") + to_string(c.rays()[i]);
  return s + ")";
}

std::string fan_text(const Fan& f) {
  std::string s = "rank " + std::to_string(f.rank()) + ", " + std::to_string(f.rays().size()) + " rays, maximal cones:";
  for (const auto& m : f.maximal()) s += " " + cone_text(m);
  return s;
}

void run_gpoly(const json& in, Output& out) {
  Cone c = cone_from_json(in);
  out.data["cone"] = to_json(c);
  out.poly("g", g_poly(c));
}

void run_hpoly(const json& in, Output& out) {
  Fan f = fan_from_json(in);
  out.data["fan"] = to_json(f);
  out.data["complete"] = f.is_complete();
  out.data["f_vector"] = f.f_vector();
  out.poly("h", h_poly(f));
}

void run_divisor(const json& in, const Flags& fl, Output& out) {
  PolyhedralDivisor d = divisor_from_json(in);
  out.data["support"] = d.support();
  auto deg = degree(d);
  out.data["degree"] = deg ? to_json(*deg) : json(nullptr);
  out.line("support: " + std::to_string(d.support().size()) + " points");
  out.poly("g_D", g_divisor(d));
  json hf = json::array();
  for (const auto& tau : hf_faces(d)) hf.push_back(to_json(tau));
  out.data["HF"] = hf;
  out.data["rational"] = is_rational(d);
  if (fl.poincare) out.poly("P_X", poincare_affine(d));
}

void run_divfan(const json& in, const Flags& fl, Output& out) {
  DivisorialFan e = divfan_from_json(in);
  DivFanReport rep = validate_divfan(e);
  if (!rep.valid || !rep.complete_variety) {
    std::string detail;
    for (const auto& v : rep.violations) {
      if (!detail.empty()) detail += "; ";
      detail += v.kind + ": " + v.detail;
      if (v.point) detail += " at " + *v.point;
      if (v.i >= 0) detail += " (divisors " + std::to_string(v.i) + (v.j >= 0 ? "," + std::to_string(v.j) : "") + ")";
    }
    throw Error(rep.valid ? ErrorKind::SigmaZNotComplete : ErrorKind::InvalidDivisorialFan, detail);
  }
  out.data["valid"] = true;
  out.data["complete_variety"] = true;
  Fan sigma = tail_fan(e);
  out.data["tail_fan"] = to_json(sigma);
  out.line("tail fan: " + fan_text(sigma));
  out.poly("h_E", h_divfan(e, true));
  json hf = json::array();
  for (const auto& entry : hf_set(e)) {
    hf.push_back({{"tau", to_json(entry.tau)}, {"star", to_json(entry.star)}, {"g_top", top_g_number(entry.tau)}});
    out.line("HF: " + cone_text(entry.tau));
  }
  out.data["HF"] = hf;
  out.data["rational"] = is_rational(e);
  out.line(std::string("rational: ") + (is_rational(e) ? "yes" : "no"));
  if (fl.poincare) out.poly("P_X", poincare_complete(e));
}

json invariants_json(const TrinomialInvariants& inv) {
  return {{"u_i", inv.u_i}, {"d", inv.d}, {"d_i", inv.d_i}, {"u", inv.u}, {"gamma", inv.gamma}, {"genus", inv.genus}};
}

void run_trinomial(const json& in, Output& out) {
  TrinomialData t = trinomial_from_json(in);
  if (t.ambient == Ambient::Affine) {
    auto r = affine_trinomial_poincare(t);
    out.data["ambient"] = "affine";
    out.data["invariants"] = invariants_json(r.inv);
    out.data["F"] = to_json(r.package.F());
    out.data["S"] = to_json(r.package.S());
    out.data["sigma_theta"] = to_json(r.sigma_theta);
    out.line("sigma_theta = " + cone_text(r.sigma_theta));
    out.poly("g_sigma_theta", g_poly(r.sigma_theta));
    json pis = json::array(), gpis = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
      pis.push_back(to_json(r.Pi[i]));
      IntPolynomial g = g_poly(r.Pi[i]);
      gpis.push_back(to_json(g));
      out.line("g_Pi" + std::to_string(i + 1) + " = " + g.to_string());
    }
    out.data["Pi"] = pis;
    out.data["g_Pi"] = gpis;
    json H = json::array();
    for (const auto& tau : r.H) H.push_back(to_json(tau));
    out.data["H"] = H;
    out.line("H: " + std::to_string(r.H.size()) + " faces");
    out.poly("P_tilde", r.P_tilde);
    out.poly("P_X", r.P_X);
  } else {
    auto r = projective_trinomial_poincare(t);
    out.data["ambient"] = "projective";
    out.data["invariants"] = invariants_json(r.inv);
    out.data["F"] = to_json(r.package.F());
    out.data["S"] = to_json(r.package.S());
    out.data["Sigma_theta"] = to_json(r.Sigma_theta);
    out.line("Sigma_theta: " + fan_text(r.Sigma_theta));
    out.poly("h_Sigma_theta", r.h_Sigma);
    json fans = json::array(), hs = json::array(), fv = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
      fans.push_back(to_json(r.Sigma_i[i]));
      hs.push_back(to_json(r.h_Sigma_i[i]));
      fv.push_back(r.Sigma_i[i].f_vector());
      out.line("h_Sigma_" + std::to_string(i + 1) + " = " + r.h_Sigma_i[i].to_string());
    }
    out.data["Sigma_i"] = fans;
    out.data["h_Sigma_i"] = hs;
    out.data["Sigma_i_f_vectors"] = fv;
    json H = json::array();
    for (const auto& tau : r.H_union) H.push_back(to_json(tau));
    out.data["H_union"] = H;
    out.line("H: " + std::to_string(r.H_union.size()) + " cones");
    out.poly("P_tilde", r.P_tilde);
    out.poly("P_X", r.P_X);
  }
}

json package_json(const WeightPackage& w) {
  return {{"F", to_json(w.F())}, {"S", to_json(w.S())}, {"P", to_json(w.P())},
          {"quotient_fan", to_json(w.quotient_fan)}, {"sigma_theta", to_json(w.sigma_theta)}};
}

void run_weights(const json& in, const Flags& fl, Output& out) {
  WeightInput wi = weights_from_json(in);
  WeightPackage w = build_weight_package(wi.F, wi.S, wi.P);
  out.data = package_json(w);
  out.line("quotient fan: " + fan_text(w.quotient_fan));
  out.line("sigma_theta = " + cone_text(w.sigma_theta));
  json coeffs = json::array();
  for (const auto& c : dtheta_coefficients(w)) {
    coeffs.push_back({{"ray", to_json(c.ray)}, {"v_rho", to_json(c.v_rho)}, {"coefficient", to_json(c.coefficient)}});
    std::string verts;
    for (const auto& v : c.coefficient.vertices()) verts += (verts.empty() ? "" : ", ") + to_string(v);
    out.line("D_theta at ray " + to_string(c.ray) + ": conv{" + verts + "} + sigma_theta");
  }
  out.data["dtheta"] = coeffs;
  if (fl.enhance) {
    json pk = json::array();
    auto charts = enhance(w);
    for (std::size_t v = 0; v < charts.size(); ++v) {
      pk.push_back(package_json(charts[v]));
      out.line("theta(" + std::to_string(v) + "): quotient fan " + fan_text(charts[v].quotient_fan));
    }
    out.data["enhanced"] = pk;
    out.data["P_hat"] = to_json(enhanced_P(w));
    out.data["S_hat"] = to_json(enhanced_S(w));
  }
  if (fl.lifting) {
    LiftingFan lf = lifting_fan(w);
    out.data["lifting_fan"] = {{"fan", to_json(lf.delta)}, {"Q", to_json(lf.Q)}};
    out.line("lifting fan: " + fan_text(lf.delta));
  }
  if (fl.enhanced_lifting) {
    Fan f = enhanced_lifting_fan(w);
    out.data["enhanced_lifting_fan"] = to_json(f);
    out.line("enhanced lifting fan: " + fan_text(f));
  }
}

int emit_error(const std::string& kind, const std::string& detail, int code) {
  json err = {{"error", {{"kind", kind}, {"detail", detail}}}};
  std::cout << err.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intersection cohomology Betti numbers of toric and complexity-one T-varieties"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string input, format = "text";
  Flags fl;
  auto sub = [&](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("-i,--input", input, "input JSON file")->required();
    s->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
    return s;
  };
  sub("gpoly", "g-polynomial of a cone");
  sub("hpoly", "h-polynomial of a complete fan");
  sub("divisor", "g-polynomial of a polyhedral divisor")->add_flag("--poincare", fl.poincare, "also compute P_X");
  sub("divfan", "h-polynomial and HF set of a divisorial fan")->add_flag("--poincare", fl.poincare, "also compute P_X");
  sub("trinomial", "Poincare polynomials of a trinomial hypersurface");
  CLI::App* w = sub("weights", "weight package data");
  w->add_flag("--enhance", fl.enhance, "enhanced packages theta(0..l)");
  w->add_flag("--lifting-fan", fl.lifting, "lifting fan and Q-matrix");
  w->add_flag("--enhanced-lifting-fan", fl.enhanced_lifting, "enhanced lifting fan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const char* cache = std::getenv("IHCOH_CACHE");
  set_g_cache_enabled(!(cache && std::string(cache) == "off"));

  Output out;
  try {
    json in = read_input(input);
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "gpoly") run_gpoly(in, out);
    else if (cmd == "hpoly") run_hpoly(in, out);
    else if (cmd == "divisor") run_divisor(in, fl, out);
    else if (cmd == "divfan") run_divfan(in, fl, out);
    else if (cmd == "trinomial") run_trinomial(in, out);
    else run_weights(in, fl, out);
  } catch (const MalformedInput& e) {
    return emit_error("MalformedInput", e.what(), 2);
  } catch (const Error& e) {
    return emit_error(kind_name(e.kind()), e.detail(), 1);
  }

  if (format == "json") {
    std::cout << out.data.dump(2) << "\n";
  } else {
    for (const auto& l : out.text) std::cout << l << "\n";
  }
  return 0;
}
