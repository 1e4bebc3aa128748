// Command-line front end.
//
// Exit codes: 0 success, 1 validation or domain error, 2 parse error,
// 3 internal invariant violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kqj2/kqj2.hpp"

using namespace kqj2;

namespace {

struct Options {
  std::string field;
  bool json = false;
  bool oracle = false;
  bool reduce_first = false;
  std::size_t truncate = 0;
  std::uint64_t seed = 0x5eed;
  std::size_t trials = 8;
  std::string output;
  std::vector<std::string> files;
};

bool color_enabled() {
  const char* v = std::getenv("KQJ2_COLOR");
  if (!v) return false;
  std::string s(v);
  return !(s.empty() || s == "0" || s == "false" || s == "no" || s == "off");
}

std::string paint(const std::string& text, const char* code) {
  if (!color_enabled()) return text;
  return std::string("\033[") + code + "m" + text + "\033[0m";
}

class Tool {
 public:
  explicit Tool(Options opt) : opt_(std::move(opt)) {}

  std::optional<FieldSpec> field_override() const {
    if (opt_.field.empty()) return std::nullopt;
    return FieldSpec::parse(opt_.field);
  }

  Document load(std::size_t i) const { return load_document(opt_.files.at(i)); }

  FieldSpec field_for(const Document& doc) const { return resolve_field(doc, field_override()); }

  /// Text goes to --output when given, otherwise stdout.
  void emit(const std::string& text) const {
    if (opt_.output.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream out(opt_.output);
    if (!out) throw DomainError(ErrorCode::InvalidArgument, "cannot write '" + opt_.output + "'");
    out << text;
  }
  void emit(const json& j) const { emit(j.dump(2)); }

  int classify() const {
    auto doc = load(0);
    detail::require_quiver(doc);
    auto verdict = classify_algebra(doc.quiver);
    if (opt_.json) {
      json comps = json::array();
      for (const auto& c : verdict.components) {
        comps.push_back({{"vertices", c.component.vertices()}, {"shape", to_string(c.shape)}, {"verdict", to_string(c.verdict)}});
      }
      emit(json{{"components", comps}});
      return 0;
    }
    std::ostringstream os;
    os << "component  vertices  shape  verdict\n";
    for (std::size_t i = 0; i < verdict.components.size(); ++i) {
      const auto& c = verdict.components[i];
      os << i + 1 << "  {";
      for (std::size_t v = 0; v < c.component.vertex_count(); ++v) os << (v ? " " : "") << c.component.vertex_name(v);
      os << "}  " << to_string(c.shape) << "  " << paint(to_string(c.verdict), "1") << '\n';
    }
    emit(os.str());
    return 0;
  }

  template <class Field>
  DiffProj<Field> module_from(const Document& doc, const Field& f) const {
    if (doc.kind() == DocumentKind::RawModule) return from_raw(raw_from_document(doc, f));
    if (doc.kind() != DocumentKind::DiffProj) {
      throw DomainError(ErrorCode::InvalidArgument, "expected a differential projective module ('top' or 'endo' data)");
    }
    return diffproj_from_document(doc, f);
  }

  template <class Field>
  Rep<Field> rep_from(const Document& doc, const Field& f) const {
    if (doc.kind() != DocumentKind::Rep) throw DomainError(ErrorCode::InvalidArgument, "expected a representation ('dims' data)");
    return rep_from_document(doc, f);
  }

  static std::string by_vertex(const Quiver& q, const std::vector<std::size_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << q.vertex_name(i) << '=' << v[i];
    return os.str();
  }

  static json by_vertex_json(const Quiver& q, const std::vector<std::size_t>& v) {
    json out = json::object();
    for (std::size_t i = 0; i < v.size(); ++i) out[q.vertex_name(i)] = v[i];
    return out;
  }

  int koszul() const {
    auto doc = load(0);
    return visit_field(field_for(doc), [&](const auto& f) {
      auto m = module_from(doc, f);
      detail::require_valid(m);
      std::optional<std::vector<std::size_t>> mults;
      if (opt_.reduce_first) {
        auto s = reduce(m);
        mults = s.contractible_mults;
        m = s.reduced;
      }
      auto x = F_module(m);
      if (opt_.json) {
        json out = to_json(x);
        if (mults) out["contractible_mults"] = by_vertex_json(m.quiver(), *mults);
        emit(out);
      } else {
        if (mults) std::cerr << "contractible multiplicities: " << by_vertex(m.quiver(), *mults) << '\n';
        emit(to_text(x));
      }
      return 0;
    });
  }

  int unkoszul() const {
    auto doc = load(0);
    return visit_field(field_for(doc), [&](const auto& f) {
      auto m = G_module(rep_from(doc, f));
      opt_.json ? emit(to_json(m)) : emit(to_text(m));
      return 0;
    });
  }

  int reduce_cmd() const {
    auto doc = load(0);
    return visit_field(field_for(doc), [&](const auto& f) {
      auto m = module_from(doc, f);
      auto s = reduce(m);
      const Quiver& q = m.quiver();
      if (opt_.json) {
        json base = json::object(), corr = json::object();
        for (std::size_t v = 0; v < q.vertex_count(); ++v) base[q.vertex_name(v)] = detail::matrix_json(s.witness.base_change[v]);
        for (std::size_t a = 0; a < q.arrow_count(); ++a) corr[q.arrow(a).name] = detail::matrix_json(s.witness.correction[a]);
        emit(json{{"reduced", to_json(s.reduced)},
                  {"contractible_mults", by_vertex_json(q, s.contractible_mults)},
                  {"witness", {{"base_change", base}, {"correction", corr}}}});
        return 0;
      }
      std::ostringstream os;
      os << "# reduced part\n" << to_text(s.reduced) << "# contractible\nmults " << by_vertex(q, s.contractible_mults) << '\n';
      os << "# witness\n";
      for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        os << "S " << q.vertex_name(v) << " = " << detail::matrix_text(s.witness.base_change[v]) << '\n';
      }
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        os << "k " << q.arrow(a).name << " = " << detail::matrix_text(s.witness.correction[a]) << '\n';
      }
      emit(os.str());
      return 0;
    });
  }

  int cohomology() const {
    auto doc = load(0);
    return visit_field(field_for(doc), [&](const auto& f) {
      auto m = module_from(doc, f);
      auto h = cohomology_dims(m);
      if (opt_.json) {
        emit(json{{"per_vertex", by_vertex_json(m.quiver(), h.per_vertex)}, {"total", h.total}, {"exact", h.total == 0}});
        return 0;
      }
      std::ostringstream os;
      for (std::size_t v = 0; v < h.per_vertex.size(); ++v) os << "vertex " << m.quiver().vertex_name(v) << "  " << h.per_vertex[v] << '\n';
      os << "total " << h.total << (h.total == 0 ? "  (exact)" : "") << '\n';
      emit(os.str());
      return 0;
    });
  }

  int homhot() const {
    auto dm = load(0), dn = load(1);
    auto spec = field_for(dm);
    if (!field_override() && field_for(dn) != spec) throw DomainError(ErrorCode::Mismatch, "inputs declare different fields");
    return visit_field(spec, [&](const auto& f) {
      auto m = module_from(dm, f);
      auto n = module_from(dn, f);
      auto r = hom_homotopy_dim_formula(m, n, opt_.oracle);
      if (opt_.json) {
        json out{{"dim_hom", r.dim_hom}, {"dim_ext_shift", r.dim_ext_shift}, {"total", r.total}};
        out["oracle_total"] = r.oracle_total ? json(*r.oracle_total) : json(nullptr);
        emit(out);
        return 0;
      }
      std::ostringstream os;
      os << "hom " << r.dim_hom << "\next_shift " << r.dim_ext_shift << "\ntotal " << r.total << '\n';
      if (r.oracle_total) os << "oracle " << *r.oracle_total << "  " << paint("agrees", "32") << '\n';
      emit(os.str());
      return 0;
    });
  }

  int ext() const {
    auto dx = load(0), dy = load(1);
    auto spec = field_for(dx);
    if (!field_override() && field_for(dy) != spec) throw DomainError(ErrorCode::Mismatch, "inputs declare different fields");
    return visit_field(spec, [&](const auto& f) {
      auto x = rep_from(dx, f);
      auto y = rep_from(dy, f);
      auto [hom, ext1] = rep_hom_ext_dims(x, y);
      auto euler = euler_pairing(x.quiver(), x.dims(), y.dims());
      const bool ok = static_cast<long long>(hom) - static_cast<long long>(ext1) == euler;
      if (!ok) throw InvariantViolation("dim Hom - dim Ext^1 differs from the Euler pairing");
      if (opt_.json) {
        emit(json{{"hom", hom}, {"ext1", ext1}, {"euler", euler}, {"euler_ok", ok}});
        return 0;
      }
      std::ostringstream os;
      os << "hom " << hom << "\next1 " << ext1 << "\neuler " << euler << "  " << paint("euler ok", "32") << '\n';
      emit(os.str());
      return 0;
    });
  }

  int iso() const {
    auto dx = load(0), dy = load(1);
    auto spec = field_for(dx);
    if (!field_override() && field_for(dy) != spec) throw DomainError(ErrorCode::Mismatch, "inputs declare different fields");
    return visit_field(spec, [&](const auto& f) {
      auto x = rep_from(dx, f);
      auto y = rep_from(dy, f);
      auto verdict = iso_probe(x, y, opt_.trials, opt_.seed);
      std::string name, reason;
      json witness = nullptr;
      if (auto* iso = std::get_if<Iso<std::decay_t<decltype(f)>>>(&verdict)) {
        name = "isomorphic";
        witness = json::object();
        for (std::size_t v = 0; v < x.quiver().vertex_count(); ++v) {
          witness[x.quiver().vertex_name(v)] = detail::matrix_json(iso->witness.blocks[v]);
        }
      } else if (auto* no = std::get_if<NotIso>(&verdict)) {
        name = "not isomorphic";
        reason = no->reason;
      } else {
        name = "inconclusive";
        reason = "no invertible map in " + std::to_string(opt_.trials) + " trials";
      }
      if (opt_.json) {
        emit(json{{"verdict", name}, {"reason", reason}, {"witness", witness}});
        return 0;
      }
      emit("verdict: " + paint(name, "1") + (reason.empty() ? "" : "  (" + reason + ")") + "\n");
      return 0;
    });
  }

  int generator() const {
    auto doc = load(0);
    detail::require_quiver(doc);
    return visit_field(field_for(doc), [&](const auto& f) {
      auto c = opt_.truncate > 0 ? truncated_generator(doc.quiver, f, opt_.truncate) : compact_generator(doc.quiver, f);
      opt_.json ? emit(to_json(c)) : emit(to_text(c));
      return 0;
    });
  }

  int check() const {
    auto doc = load(0);
    return visit_field(field_for(doc), [&](const auto& f) {
      std::string what = to_string(doc.kind());
      std::vector<Violation> violations;
      switch (doc.kind()) {
        case DocumentKind::Quiver:
          detail::require_quiver(doc);
          break;
        case DocumentKind::Rep:
          rep_from_document(doc, f);
          break;
        case DocumentKind::RawModule:
          violations = validate(from_raw(raw_from_document(doc, f)));
          break;
        case DocumentKind::DiffProj:
          violations = validate(diffproj_from_document(doc, f));
          break;
      }
      if (opt_.json) {
        json list = json::array();
        for (const auto& v : violations) list.push_back({{"location", v.location}, {"what", v.what}, {"residual", v.residual}});
        emit(json{{"kind", what}, {"ok", violations.empty()}, {"violations", list}});
      } else if (violations.empty()) {
        emit(what + ": " + paint("ok", "32") + "\n");
      } else {
        std::ostringstream os;
        os << what << ": " << paint(std::to_string(violations.size()) + " violation(s)", "31") << '\n';
        for (const auto& v : violations) os << "  " << v.location << ": " << v.what << "  residual " << v.residual << '\n';
        emit(os.str());
      }
      return violations.empty() ? 0 : 1;
    });
  }

 private:
  Options opt_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential projective modules over radical square zero path algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--field", opt.field, "Ground field: Q or Fp (overrides the input files)");
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_option("-o,--output", opt.output, "Write the result to a file");

  auto files = [&](CLI::App* sub, std::size_t n, const char* what) {
    sub->add_option("files", opt.files, what)->required()->expected(static_cast<int>(n))->check(CLI::ExistingFile);
  };
  auto* classify = app.add_subcommand("classify", "Virtually Gorenstein classification of a quiver");
  files(classify, 1, "quiver file");
  auto* koszul = app.add_subcommand("koszul", "Top of a reduced module as a representation of the opposite quiver");
  files(koszul, 1, "module file (canonical or raw)");
  koszul->add_flag("--reduce-first", opt.reduce_first, "Split off contractible summands first");
  auto* unkoszul = app.add_subcommand("unkoszul", "Reduced module of a representation of the opposite quiver");
  files(unkoszul, 1, "representation file");
  auto* reduce = app.add_subcommand("reduce", "Split into reduced and contractible parts");
  files(reduce, 1, "module file");
  auto* cohomology = app.add_subcommand("cohomology", "Dimensions of Ker d / Im d");
  files(cohomology, 1, "module file");
  auto* homhot = app.add_subcommand("homhot", "Dimension of Hom in the homotopy category");
  files(homhot, 2, "module files M N");
  homhot->add_flag("--oracle", opt.oracle, "Cross-check against the brute-force computation");
  auto* ext = app.add_subcommand("ext", "Dimensions of Hom and Ext^1 between representations");
  files(ext, 2, "representation files X Y");
  auto* iso = app.add_subcommand("iso", "Randomized isomorphism probe");
  files(iso, 2, "representation files X Y");
  iso->add_option("--seed", opt.seed, "Random seed");
  iso->add_option("--trials", opt.trials, "Number of random trials")->check(CLI::PositiveNumber);
  auto* generator = app.add_subcommand("generator", "Compact generator, or its truncation at path length N");
  files(generator, 1, "quiver file");
  generator->add_option("--truncate", opt.truncate, "Keep paths of length < N")->check(CLI::PositiveNumber);
  auto* check = app.add_subcommand("check", "Parse and validate any input file");
  files(check, 1, "input file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    Tool tool(opt);
    if (*classify) return tool.classify();
    if (*koszul) return tool.koszul();
    if (*unkoszul) return tool.unkoszul();
    if (*reduce) return tool.reduce_cmd();
    if (*cohomology) return tool.cohomology();
    if (*homhot) return tool.homhot();
    if (*ext) return tool.ext();
    if (*iso) return tool.iso();
    if (*generator) return tool.generator();
    if (*check) return tool.check();
  } catch (const ParseError& e) {
    std::cerr << paint("parse error", "31") << ": " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << paint("error", "31") << ": " << e.what() << '\n';
    return 1;
  } catch (const InvariantViolation& e) {
    std::cerr << paint("internal error", "31") << ": " << e.what() << '\n';
    return 3;
  }
  return 1;
}
