#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "strcx/serialize.hpp"
#include "strcx/verify.hpp"

using namespace strcx;
using nlohmann::json;

namespace {

struct run_config {
  algebra_params params{2, 3, 1};
  std::string field = "rational";
};

algebra_params parse_params(const std::string& text) {
  int r, n, m;
  if (std::sscanf(text.c_str(), "%d,%d,%d", &r, &n, &m) != 3)
    throw parameter_error("--algebra expects r,n,m");
  return {r, n, m};
}

/* object syntax: an AR coordinate ("X:0:1:2") or a word with an optional
 * realization offset ("(b0)(c2)@1") */
string_complex parse_object(const gentle_presentation& alg,
                            const ar_chart& ch, const std::string& text) {
  try {
    return ch.coordinate_to_complex(ar_from_text(text));
  } catch (const parameter_error&) {
  }
  size_t at = text.rfind('@');
  std::string word_text = at == std::string::npos ? text : text.substr(0, at);
  int offset = at == std::string::npos ? 0 : std::stoi(text.substr(at + 1));
  return realize(parse_word(alg, word_text), offset);
}

json coordinate_to_json(const gentle_presentation& alg, const ar_chart& ch,
                        const ar_coordinate& c) {
  json j;
  j["coordinate"] = ar_to_text(c);
  j["family"] = ar_family_name(c.family);
  j["k"] = c.k;
  string_complex sc = ch.coordinate_to_complex(c);
  j["word"] = word_to_text(alg, sc.word);
  j["offset"] = sc.offset;
  return j;
}

json object_to_json(const gentle_presentation& alg, const string_complex& sc) {
  json j = word_to_json(alg, sc.word);
  j["offset"] = sc.offset;
  return j;
}

template <class F>
json hom_to_json(const gentle_presentation& alg, hom_oracle<F>& orc,
                 const string_complex& A, const string_complex& B) {
  hom_report rep = orc.hom(A, B);
  json j;
  j["source"] = object_to_json(alg, A);
  j["target"] = object_to_json(alg, B);
  j["hom_dim"] = rep.hom_dim;
  j["dim_chain_maps"] = rep.dim_chain_maps;
  j["dim_null_homotopic"] = rep.dim_null_homotopic;
  j["window"] = {{"a_lo", rep.window.a_lo},
                 {"a_hi", rep.window.a_hi},
                 {"b_lo", rep.window.b_lo},
                 {"b_hi", rep.window.b_hi}};
  j["stabilized"] = rep.stabilized;
  return j;
}

json report_to_json(const ar_chart& ch, const derivative_report_t& rep) {
  json j;
  j["bound"] = rep.bound;
  j["cb"] = rep.cb;
  j["ok"] = rep.ok();
  json pts = json::array();
  for (const spectrum_point& p : rep.points)
    pts.push_back({{"coordinate", ar_to_text(p.coordinate)},
                   {"rank", p.rank},
                   {"compact", p.compact}});
  j["points"] = pts;
  j["stage0_isolated"] = rep.stage0.size();
  json classes = json::array();
  for (const stage1_entry& e : rep.stage1) {
    json c;
    c["key"] = ar_to_text(e.key);
    c["members"] = e.members;
    c["representative"] = {ar_to_text(e.representative.source),
                           ar_to_text(e.representative.target1),
                           ar_to_text(e.representative.target2)};
    c["ok"] = e.ok;
    classes.push_back(c);
  }
  j["stage1_classes"] = classes;
  json stage2 = json::array();
  for (const stage2_entry& e : rep.stage2) {
    json s;
    s["source"] = ar_to_text(e.source);
    json iso = json::array();
    for (const ar_coordinate& c : e.isolated) iso.push_back(ar_to_text(c));
    s["isolated"] = iso;
    s["ok"] = e.ok;
    stage2.push_back(s);
  }
  j["stage2"] = stage2;
  j["failures"] = rep.failures;
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

/* run the query part of the CLI under the selected coefficient field */
template <class F>
int run_queries(const run_config& cfg, CLI::App& hom_cmd, CLI::App& ham_cmd,
                CLI::App& strata_cmd, CLI::App& open_cmd,
                const std::string& obj_a, const std::string& obj_b,
                int bound, bool backward, const std::string& src,
                const std::vector<std::string>& targets,
                const std::vector<int>& choices, const std::string& point) {
  gentle_presentation alg = build_algebra(cfg.params);
  ar_chart ch(alg);
  hom_oracle<F> orc(alg);
  if (hom_cmd.parsed()) {
    emit(hom_to_json(alg, orc, parse_object(alg, ch, obj_a),
                     parse_object(alg, ch, obj_b)));
    return 0;
  }
  if (ham_cmd.parsed()) {
    ar_coordinate a = ar_from_text(obj_a);
    json j;
    j["source"] = ar_to_text(a);
    j["direction"] = backward ? "backward" : "forward";
    j["bound"] = bound;
    json members = json::array();
    for (const ar_coordinate& b : ch.enumerate_window(bound)) {
      bool in = backward ? ch.backward_hammock_member(orc, a, b)
                         : ch.forward_hammock_member(orc, a, b);
      if (in) members.push_back(ar_to_text(b));
    }
    j["members"] = members;
    emit(j);
    return 0;
  }
  if (strata_cmd.parsed()) {
    derivative_report_t rep = derivative_report(ch, orc, bound);
    emit(report_to_json(ch, rep));
    return rep.ok() && rep.cb == 2 ? 0 : 1;
  }
  if (open_cmd.parsed()) {
    open_set_query q;
    q.source = ar_from_text(src);
    for (const std::string& t : targets) q.targets.push_back(ar_from_text(t));
    q.choice = choices;
    if (q.choice.empty()) q.choice.assign(q.targets.size(), 0);
    json j;
    j["source"] = ar_to_text(q.source);
    json ts = json::array();
    for (const ar_coordinate& t : q.targets) ts.push_back(ar_to_text(t));
    j["targets"] = ts;
    j["point"] = point;
    j["member"] = open_set_membership(ch, orc, q, ar_from_text(point));
    emit(j);
    return 0;
  }
  return 0;
}

} /* namespace */

int main(int argc, char** argv) {
  CLI::App app{"string-complex calculus for derived-discrete algebras"};
  app.require_subcommand(1);

  run_config cfg;
  std::string algebra_text = "2,3,1";
  app.add_option("--algebra", algebra_text, "algebra parameters r,n,m")
      ->capture_default_str();
  app.add_option("--field", cfg.field, "coefficients: rational | fp32003")
      ->check(CLI::IsMember({"rational", "fp32003"}))
      ->capture_default_str();

  CLI::App* algebra_cmd = app.add_subcommand("algebra", "presentation data");
  CLI::App* algebra_info = algebra_cmd->add_subcommand("info", "print it");

  CLI::App* strings_cmd = app.add_subcommand("strings", "homotopy words");
  CLI::App* strings_enum =
      strings_cmd->add_subcommand("enumerate", "list words");
  int max_letters = 4;
  strings_enum->add_option("--max-letters", max_letters, "letter cap")
      ->capture_default_str();

  std::string obj_a, obj_b;
  CLI::App* hom_cmd = app.add_subcommand("hom", "hom-space report");
  hom_cmd->add_option("source", obj_a, "coordinate or word[@offset]")
      ->required();
  hom_cmd->add_option("target", obj_b, "coordinate or word[@offset]")
      ->required();

  int bound = 4;
  bool backward = false;
  CLI::App* ham_cmd = app.add_subcommand("hammock", "hammock membership set");
  ham_cmd->add_option("source", obj_a, "AR coordinate")->required();
  ham_cmd->add_option("--bound", bound, "window bound")->capture_default_str();
  ham_cmd->add_flag("--backward", backward, "backward hammock");

  CLI::App* ar_cmd = app.add_subcommand("ar", "AR-quiver chart");
  CLI::App* ar_window = ar_cmd->add_subcommand("window", "coordinate window");
  bool dot = false;
  std::vector<std::string> highlight;
  ar_window->add_option("--bound", bound, "window bound")
      ->capture_default_str();
  ar_window->add_flag("--dot", dot, "emit DOT instead of JSON");
  ar_window->add_option("--highlight", highlight, "coordinates to shade");
  CLI::App* ar_object = ar_cmd->add_subcommand("object", "realize a point");
  ar_object->add_option("coordinate", obj_a, "AR coordinate")->required();
  CLI::App* ar_suspend = ar_cmd->add_subcommand("suspend", "shift a point");
  ar_suspend->add_option("coordinate", obj_a, "AR coordinate")->required();
  CLI::App* ar_mesh = ar_cmd->add_subcommand("mesh", "almost-split mesh");
  ar_mesh->add_option("coordinate", obj_a, "AR coordinate")->required();
  CLI::App* ar_ray = ar_cmd->add_subcommand("ray", "extended ray");
  int length = 8;
  ar_ray->add_option("coordinate", obj_a, "AR coordinate")->required();
  ar_ray->add_option("--length", length, "entries")->capture_default_str();
  CLI::App* ar_coray = ar_cmd->add_subcommand("coray", "extended coray");
  ar_coray->add_option("coordinate", obj_a, "AR coordinate")->required();
  ar_coray->add_option("--length", length, "entries")->capture_default_str();
  CLI::App* ar_tri = ar_cmd->add_subcommand("triangles", "boundary triangles");
  int tri_k = 0, tri_a = 0;
  ar_tri->add_option("--k", tri_k, "plane index")->capture_default_str();
  ar_tri->add_option("--a", tri_a, "anchor index")->capture_default_str();

  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "Ziegler spectrum");
  CLI::App* strata_cmd =
      spectrum_cmd->add_subcommand("strata", "CB stratification report");
  strata_cmd->add_option("--bound", bound, "window bound")
      ->capture_default_str();
  CLI::App* open_cmd =
      spectrum_cmd->add_subcommand("open-set", "open-set membership");
  std::string src, point;
  std::vector<std::string> targets;
  std::vector<int> choices;
  open_cmd->add_option("--source", src, "compact source coordinate")
      ->required();
  open_cmd->add_option("--target", targets, "morphism target coordinates");
  open_cmd->add_option("--choice", choices, "basis index per target");
  open_cmd->add_option("--point", point, "spectrum point to test")->required();

  CLI::App* verify_cmd = app.add_subcommand("verify", "acceptance suite");
  CLI::App* verify_all = verify_cmd->add_subcommand("all", "run every check");
  verify_options vopt;
  int verify_bound = vopt.report_bound;
  verify_all->add_option("--bound", verify_bound, "sweep and report bound")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e); /* prints usage/error text */
    return 2;
  }

  try {
    cfg.params = parse_params(algebra_text);
    gentle_presentation alg = build_algebra(cfg.params);

    if (algebra_info->parsed()) {
      json j = algebra_to_json(alg);
      j["gldim"] =
          alg.gldim_class() == gldim_t::finite ? "finite" : "infinite";
      emit(j);
      return 0;
    }
    if (strings_enum->parsed()) {
      json j = json::array();
      for (const homotopy_word& w : enumerate_words(alg, max_letters))
        j.push_back(word_to_json(alg, w));
      emit(j);
      return 0;
    }
    if (ar_cmd->parsed()) {
      ar_chart ch(alg);
      if (ar_window->parsed()) {
        std::vector<ar_coordinate> nodes = ch.enumerate_window(bound);
        if (dot) {
          std::vector<ar_coordinate> hot;
          for (const std::string& h : highlight)
            hot.push_back(ar_from_text(h));
          std::cout << ar_dot(ch, nodes, hot);
        } else {
          json j = json::array();
          for (const ar_coordinate& c : nodes)
            j.push_back(coordinate_to_json(alg, ch, c));
          emit(j);
        }
      } else if (ar_object->parsed()) {
        emit(coordinate_to_json(alg, ch, ar_from_text(obj_a)));
      } else if (ar_suspend->parsed()) {
        emit(coordinate_to_json(alg, ch, ch.suspend(ar_from_text(obj_a))));
      } else if (ar_mesh->parsed()) {
        mesh_result m = ch.mesh_neighbors(ar_from_text(obj_a));
        json j;
        j["source"] = obj_a;
        json ts = json::array();
        for (const ar_coordinate& t : m.targets) ts.push_back(ar_to_text(t));
        j["targets"] = ts;
        if (m.third) j["third"] = ar_to_text(*m.third);
        emit(j);
      } else if (ar_ray->parsed() || ar_coray->parsed()) {
        ar_coordinate a = ar_from_text(obj_a);
        std::vector<ar_coordinate> seq = ar_ray->parsed()
                                             ? ch.extended_ray(a, length)
                                             : ch.extended_coray(a, length);
        json j = json::array();
        for (const ar_coordinate& c : seq) j.push_back(ar_to_text(c));
        emit(j);
      } else if (ar_tri->parsed()) {
        json j = json::array();
        for (const auto& tri : ch.boundary_triangles(tri_k, tri_a, tri_a))
          j.push_back({ar_to_text(tri[0]), ar_to_text(tri[1]),
                       ar_to_text(tri[2])});
        emit(j);
      }
      return 0;
    }
    if (verify_all->parsed()) {
      vopt.sweep_bound = verify_bound;
      vopt.report_bound = verify_bound;
      std::vector<verify_result> results = run_verification(cfg.params, vopt);
      for (const verify_result& r : results)
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " "
                  << r.name << " — " << r.detail << "\n";
      bool ok = all_passed(results);
      std::cout << (ok ? "all checks passed" : "checks FAILED") << "\n";
      return ok ? 0 : 1;
    }
    if (cfg.field == "fp32003")
      return run_queries<field_fp<32003>>(cfg, *hom_cmd, *ham_cmd,
                                          *strata_cmd, *open_cmd, obj_a,
                                          obj_b, bound, backward, src,
                                          targets, choices, point);
    return run_queries<field_rational>(cfg, *hom_cmd, *ham_cmd, *strata_cmd,
                                       *open_cmd, obj_a, obj_b, bound,
                                       backward, src, targets, choices, point);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const parameter_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const contract_error& e) {
    json j;
    j["contract_failure"] = e.what();
    emit(j);
    return 1;
  }
}
