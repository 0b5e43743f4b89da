// reflctl: command-line front end over the refl C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "refl/refl.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitBound = 3;

struct InputError {
  std::string what;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError{"cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int exit_code(refl_status s) {
  switch (s) {
    case REFL_OK: return kExitPass;
    case REFL_ERR_BOUND:
    case REFL_ERR_INDEX_BOUND: return kExitBound;
    default: return kExitInput;
  }
}

struct Group {
  refl_group* g = nullptr;
  ~Group() { refl_group_free(g); }
};

struct Result {
  refl_result* r = nullptr;
  ~Result() { refl_result_free(r); }
};

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(output);
  if (!out) throw InputError{"cannot write " + output};
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

int finish(refl_status s, const Result& r, const std::string& primary, const std::string& output) {
  if (r.r) emit(primary, output);
  if (s != REFL_OK) std::cerr << "reflctl: " << refl_status_name(s) << ": " << refl_last_error() << "\n";
  if (s != REFL_OK) return exit_code(s);
  return refl_result_pass(r.r) ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter polytopes, reflection subgroups and their fundamental chambers"};
  app.require_subcommand(1);
  app.fallthrough();

  refl_options opts;
  refl_options_init(&opts);
  std::string output;
  app.add_option("--tol-geo", opts.tol_geo, "Incidence tolerance")->capture_default_str();
  app.add_option("--tol-ang", opts.tol_ang, "Angle matching tolerance")->capture_default_str();
  app.add_option("--max-depth", opts.max_depth, "Word length bound")->capture_default_str();
  app.add_option("--max-chambers", opts.max_chambers, "Chamber count bound")->capture_default_str();
  app.add_option("--max-index", opts.max_index, "Subgroup index bound")->capture_default_str();
  app.add_option("--jobs", opts.jobs, "Worker threads for suites")->capture_default_str();
  app.add_option("--output", output, "Write the document here instead of stdout");

  bool json = false;
  std::string group_path, subgroup_path, polytope_path, suite = "all", model = "auto", highlight_path;
  int depth = 6;
  double chamber_stroke = 0.5, mirror_stroke = 2.0;

  auto* classify = app.add_subcommand("classify", "Diagram, signature and type of a Coxeter matrix");
  classify->add_option("group", group_path, "Coxeter matrix document")->required();
  classify->add_flag("--json", json, "Print the JSON document");

  auto* subgroup = app.add_subcommand("subgroup", "Verdict for a reflection subgroup");
  subgroup->add_option("group", group_path, "Coxeter matrix document")->required();
  subgroup->add_option("subgroup", subgroup_path, "Subgroup document")->required();

  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--suite", suite, "Suite to run")
      ->check(CLI::IsMember({"theorem", "lemma1", "lemma2", "lemma3", "remark2", "all"}))
      ->capture_default_str();
  verify->add_option("--max-rank", opts.max_rank, "Rank bound for the lemma2 suite")->capture_default_str();
  verify->add_flag("--json", json, "Print the JSON report");

  auto* render = app.add_subcommand("render", "SVG of the chamber tiling");
  render->add_option("group", group_path, "Coxeter matrix document")->required();
  render->add_option("--model", model, "poincare_disk, euclidean_plane or auto")
      ->check(CLI::IsMember({"poincare_disk", "euclidean_plane", "auto"}))
      ->capture_default_str();
  render->add_option("--depth", depth, "Word length of rendered chambers")->capture_default_str();
  render->add_option("--highlight", highlight_path, "Subgroup document whose chamber is filled");
  render->add_option("--chamber-stroke", chamber_stroke)->capture_default_str();
  render->add_option("--mirror-stroke", mirror_stroke)->capture_default_str();

  auto* enumerate = app.add_subcommand("enumerate", "Reflection subgroups within the bounds");
  enumerate->add_option("group", group_path, "Coxeter matrix document")->required();
  enumerate->add_flag("--json", json, "Print the JSON document");

  auto* polytope = app.add_subcommand("polytope", "Combinatorics and angles of a polytope document");
  polytope->add_option("polytope", polytope_path, "Halfspace or triangle document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    Group group;
    if (!group_path.empty()) {
      const std::string text = slurp(group_path);
      const refl_status s = refl_group_parse(text.c_str(), &group.g);
      if (s != REFL_OK) {
        std::cerr << "reflctl: " << group_path << ": " << refl_last_error() << "\n";
        return exit_code(s);
      }
    }
    Result r;
    if (*classify) {
      const refl_status s = refl_classify(group.g, &opts, &r.r);
      return finish(s, r, json ? refl_result_json(r.r) : refl_result_text(r.r), output);
    }
    if (*subgroup) {
      const std::string doc = slurp(subgroup_path);
      const refl_status s = refl_subgroup(group.g, doc.c_str(), &opts, &r.r);
      return finish(s, r, refl_result_json(r.r), output);
    }
    if (*verify) {
      const refl_status s = refl_verify(suite.c_str(), &opts, &r.r);
      if (r.r && !output.empty()) {
        emit(refl_result_json(r.r), output);
        std::cout << refl_result_text(r.r);
        return finish(s, r, "", "");
      }
      return finish(s, r, json ? refl_result_json(r.r) : refl_result_text(r.r), "");
    }
    if (*render) {
      nlohmann::json spec{{"model", model}, {"depth", depth}, {"chamber_stroke", chamber_stroke},
                          {"mirror_stroke", mirror_stroke}};
      if (!highlight_path.empty()) {
        try {
          spec["highlight"] = nlohmann::json::parse(slurp(highlight_path));
        } catch (const nlohmann::json::parse_error& e) {
          throw InputError{highlight_path + ": " + e.what()};
        }
      }
      const std::string text = spec.dump();
      const refl_status s = refl_render(group.g, text.c_str(), &opts, &r.r);
      return finish(s, r, refl_result_text(r.r), output);
    }
    if (*enumerate) {
      const refl_status s = refl_enumerate(group.g, &opts, &r.r);
      return finish(s, r, json ? refl_result_json(r.r) : refl_result_text(r.r), output);
    }
    if (*polytope) {
      const std::string doc = slurp(polytope_path);
      const refl_status s = refl_polytope(doc.c_str(), &opts, &r.r);
      return finish(s, r, refl_result_json(r.r), output);
    }
  } catch (const InputError& e) {
    std::cerr << "reflctl: " << e.what << "\n";
    return kExitInput;
  }
  return kExitInput;
}
