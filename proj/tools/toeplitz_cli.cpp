#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "toeplitz/autgroup.hpp"
#include "toeplitz/blockmap.hpp"
#include "toeplitz/complexity.hpp"
#include "toeplitz/endo_search.hpp"
#include "toeplitz/factor.hpp"
#include "toeplitz/lifting_group.hpp"
#include "toeplitz/substrate.hpp"
#include "toeplitz/verify.hpp"

using namespace toeplitz;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::BadInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(Err::BadInput, "cannot write '" + out_path + "'");
  out << text;
}

std::pair<i64, i64> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos)
    fail(Err::BadInput, "range must look like a:b");
  return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
}

PartialWindow read_window(const std::string& path) {
  std::string text = read_file(path);
  size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && text[i] == '{')
    return PartialWindow::from_json(text);
  return PartialWindow::from_text(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz subshift toolkit: windows, local rules, the shift "
               "algebra and its rational invariants"};
  app.require_subcommand(1);
  app.fallthrough();

  int p = 5, p_prime = 2, q = 2;
  std::string w = "1_0_0", config, format = "text", out_path;
  i64 window_budget = 0;
  int sigma_budget = 0;
  app.add_option("--p", p, "period (prime)");
  app.add_option("--p-prime", p_prime, "half period p'");
  app.add_option("--q", q, "hole count of w");
  app.add_option("--w", w, "seed word over {0,1,_}");
  app.add_option("--config", config, "JSON file with p, p_prime, q, w");
  app.add_option("--format", format, "text|json|csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", out_path, "write output to a file");
  app.add_option("--window-budget", window_budget,
                 "cell budget for windows and stabilization");
  app.add_option("--sigma-budget", sigma_budget, "highest level shift");

  auto* gen = app.add_subcommand("gen", "generate x^depth on a range");
  int gen_depth = 1;
  std::string gen_range = "0:9";
  bool gen_point = false;
  gen->add_option("--depth", gen_depth, "substitution depth (>= 1)");
  gen->add_option("--range", gen_range, "a:b (inclusive)");
  gen->add_flag("--point", gen_point, "fully resolved point window instead");

  auto* skel = app.add_subcommand("skeleton", "skeleton of level j on a range");
  int skel_level = 1;
  std::string skel_range = "0:9";
  skel->add_option("--level", skel_level, "skeleton level (0 = the point)");
  skel->add_option("--range", skel_range, "a:b (inclusive)");

  auto* per = app.add_subcommand("periods", "essential periods up to k_max");
  i64 per_kmax = 130;
  per->add_option("--kmax", per_kmax, "upper bound");

  auto* lang = app.add_subcommand("language", "factors of a given length");
  int lang_len = 1;
  bool lang_count = false;
  lang->add_option("--length", lang_len, "factor length");
  lang->add_flag("--count", lang_count, "print only the count");

  auto* ph = app.add_subcommand("phase", "phase of a window at a level");
  int ph_level = 1;
  std::string ph_in, ph_range;
  ph->add_option("--level", ph_level, "factor level (modulus p^level)");
  ph->add_option("--in", ph_in, "window file (text or JSON)");
  ph->add_option("--range", ph_range, "a:b window of the point itself");

  auto* sg = app.add_subcommand("sigma", "rule of the level-j shift");
  int sg_j = 1;
  sg->add_option("--j", sg_j, "level");

  auto* comp = app.add_subcommand("compose", "compose rule files, minimized");
  std::vector<std::string> comp_rules;
  comp->add_option("--rules", comp_rules, "rule JSON files, applied right to left")
      ->expected(-2);

  auto* dec = app.add_subcommand("decompose", "decompose a rule over the group");
  std::string dec_rule;
  int dec_sigma = -1;
  i64 dec_shift = 0;
  bool dec_have_shift = false;
  dec->add_option("--rule", dec_rule, "rule JSON file");
  dec->add_option("--sigma", dec_sigma, "decompose the level-j shift");
  dec->add_option("--shift", dec_shift, "decompose a shift power")
      ->each([&](const std::string&) { dec_have_shift = true; });

  auto* grp = app.add_subcommand("group", "exact arithmetic in the group");
  auto* grp_nf = grp->add_subcommand("nf", "balanced normal form");
  std::string nf_x;
  grp_nf->add_option("x", nf_x, "rational a/b")->required();
  auto* grp_res = grp->add_subcommand("residue", "residue of a rational");
  std::string res_x;
  i64 res_mod = 5;
  grp_res->add_option("x", res_x, "rational a/b")->required();
  grp_res->add_option("--mod", res_mod, "modulus");
  auto* grp_add = grp->add_subcommand("add", "sum of two rationals");
  std::string add_a, add_b;
  grp_add->add_option("a", add_a)->required();
  grp_add->add_option("b", add_b)->required();
  grp->require_subcommand(1);

  auto* cx = app.add_subcommand("complexity", "factor counts n(k)");
  i64 cx_from = 1, cx_to = 100;
  std::string cx_csv;
  bool cx_fit = false;
  cx->add_option("--from", cx_from, "first k");
  cx->add_option("--to", cx_to, "last k");
  cx->add_option("--csv", cx_csv, "write k,n_k rows to a file");
  cx->add_flag("--fit", cx_fit, "also report the fitted exponent");

  auto* se = app.add_subcommand("search", "enumerate small endomorphisms");
  int se_radius = 1, se_depth = 40;
  std::string se_out;
  se->add_option("--radius", se_radius, "rule radius (<= 2)");
  se->add_option("--depth", se_depth, "closure check depth");
  se->add_option("--out", se_out, "directory for survivor rule files");

  auto* vf = app.add_subcommand("verify", "run the verification battery");
  std::string vf_suite = "all";
  vf->add_option("--suite", vf_suite, "all or a criterion name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config.empty()) {
      auto j = nlohmann::json::parse(read_file(config));
      if (app.count("--p") == 0 && j.contains("p")) p = j["p"].get<int>();
      if (app.count("--p-prime") == 0 && j.contains("p_prime"))
        p_prime = j["p_prime"].get<int>();
      if (app.count("--q") == 0 && j.contains("q")) q = j["q"].get<int>();
      if (app.count("--w") == 0 && j.contains("w"))
        w = j["w"].get<std::string>();
    }
    Subshift X(Params::make(p, p_prime, q, w));
    if (window_budget > 0) X.window_budget = window_budget;
    if (sigma_budget > 0) X.sigma_budget = sigma_budget;

    auto window_out = [&](const PartialWindow& win) {
      write_output(out_path, format == "json" ? win.to_json() : win.to_text());
    };

    if (*gen) {
      auto [a, b] = parse_range(gen_range);
      window_out(gen_point ? X.point_window(a, b) : X.generate(gen_depth, a, b));
    } else if (*skel) {
      auto [a, b] = parse_range(skel_range);
      window_out(X.skeleton(skel_level, a, b));
    } else if (*per) {
      auto ks = X.essential_periods(per_kmax);
      std::string line;
      for (size_t i = 0; i < ks.size(); ++i)
        line += (i ? " " : "") + std::to_string(ks[i]);
      if (format == "json") {
        nlohmann::json j = ks;
        write_output(out_path, j.dump());
      } else {
        write_output(out_path, line);
      }
    } else if (*lang) {
      const auto& words = X.language(lang_len);
      if (lang_count) {
        write_output(out_path, std::to_string(words.size()));
      } else if (format == "json") {
        nlohmann::json j = words;
        write_output(out_path, j.dump());
      } else {
        std::string text;
        for (const auto& u : words) text += u + "\n";
        write_output(out_path, text);
      }
    } else if (*ph) {
      PartialWindow win;
      if (!ph_in.empty()) {
        win = read_window(ph_in);
      } else if (!ph_range.empty()) {
        auto [a, b] = parse_range(ph_range);
        win = X.point_window(a, b);
      } else {
        fail(Err::BadInput, "phase needs --in or --range");
      }
      Phase res = phase_of(X, win, ph_level);
      if (format == "json") {
        nlohmann::json j;
        j["value"] = res.value;
        j["modulus"] = res.modulus;
        write_output(out_path, j.dump());
      } else {
        write_output(out_path, std::to_string(res.value) + " mod " +
                                   std::to_string(res.modulus));
      }
    } else if (*sg) {
      write_output(out_path, rule_to_json(sigma_rule(X, sg_j)));
    } else if (*comp) {
      Rule acc = rule_from_json(read_file(comp_rules.back()));
      for (auto it = std::next(comp_rules.rbegin()); it != comp_rules.rend();
           ++it)
        acc = compose(X, rule_from_json(read_file(*it)), acc);
      write_output(out_path, rule_to_json(minimize(X, acc)));
    } else if (*dec) {
      Rule f;
      if (!dec_rule.empty()) f = rule_from_json(read_file(dec_rule));
      else if (dec_sigma >= 0) f = sigma_rule(X, dec_sigma);
      else if (dec_have_shift) f = shift_rule(X, dec_shift);
      else fail(Err::BadInput, "decompose needs --rule, --sigma or --shift");
      Decomposition d = decompose(X, f);
      if (format == "json") {
        write_output(out_path, decomposition_to_json(d));
      } else {
        write_output(out_path, "value = " + d.value.str() +
                                   "\nnormal_form = " + d.normal.str() + "\n");
      }
    } else if (*grp) {
      if (*grp_nf)
        write_output(out_path,
                     from_rational(X.params(), Rational::parse(nf_x)).str());
      else if (*grp_res)
        write_output(out_path, std::to_string(residue_mod(
                                   Rational::parse(res_x), res_mod)));
      else if (*grp_add)
        write_output(out_path,
                     add(Rational::parse(add_a), Rational::parse(add_b)).str());
    } else if (*cx) {
      auto profile = complexity_profile(X, cx_from, cx_to);
      std::string csv = profile_to_csv(profile);
      if (!cx_csv.empty()) write_output(cx_csv, csv);
      else if (!cx_fit || format == "csv") write_output(out_path, csv);
      if (cx_fit) {
        double slope = exponent_fit(profile, cx_from, cx_to);
        std::cout << "fitted exponent on [" << cx_from << ", " << cx_to
                  << "]: " << slope << "\n";
      }
    } else if (*se) {
      auto rules = enumerate_endomorphisms(X, se_radius, se_depth);
      auto classified = classify(X, rules);
      if (!se_out.empty()) {
        std::filesystem::create_directories(se_out);
        for (size_t i = 0; i < classified.size(); ++i) {
          char name[32];
          std::snprintf(name, sizeof name, "rule_%03zu.json", i);
          write_output(se_out + "/" + name, rule_to_json(classified[i].rule));
        }
      }
      std::cout << classified.size() << " survivors at radius " << se_radius
                << ", depth " << se_depth << "\n";
      for (const auto& c : classified)
        std::cout << "value " << c.value.str() << " (radius "
                  << c.rule.radius << ")\n";
    } else if (*vf) {
      bool all_pass = true;
      auto report = [&](const CriterionResult& r) {
        std::printf("%s %-24s %s (%.2fs)\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
      };
      if (vf_suite == "all") {
        run_all_criteria(X, report);
      } else {
        report(run_criterion(X, vf_suite));
      }
      return all_pass ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    bool usage =
        e.kind() == Err::BadInput || e.kind() == Err::AssumptionViolated;
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
