#include "ttlab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ttlab/classify.hpp"
#include "ttlab/cover.hpp"
#include "ttlab/errors.hpp"
#include "ttlab/families.hpp"
#include "ttlab/probe.hpp"
#include "ttlab/report.hpp"
#include "ttlab/torus_file.hpp"

namespace ttlab {

namespace {

struct Flags {
  std::string mode;
  uint64_t seed = 0;
  double radius = 1.0;
  int samples = 200;
  std::string times = "0";
  std::string out;

  std::string file;
  int genus = 2;
  int type = 0;
  std::string pairing, valences, lengths, heights, twists;
  std::string length = "1";
  std::string lambda, t, s;
  std::string curve;
  int threads = 1;
  long cap = 2'000'000;
  int bins = 10;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

Rational rational_arg(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, std::string("bad ") + what + " '" + text + "'");
  }
}

std::vector<Rational> rational_list(const std::string& text, int count, const char* what) {
  auto items = split(text, ',');
  std::vector<Rational> out;
  for (const auto& i : items) out.push_back(rational_arg(i, what));
  if (out.size() == 1 && count > 1) out.assign(count, out[0]);
  if (static_cast<int>(out.size()) != count)
    throw Error(ErrorCode::ParseError, std::string("expected ") + std::to_string(count) + " " + what + " values");
  return out;
}

std::vector<double> double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& i : split(text, ',')) out.push_back(to_double(rational_arg(i, "time")));
  return out;
}

// "0.0-1.0,0.1-1.1": side A then side B of each curve.
std::vector<CurveGluing> parse_pairing(const std::string& text) {
  std::vector<CurveGluing> out;
  auto ref = [&](const std::string& s) {
    auto parts = split(s, '.');
    if (parts.size() != 2) throw Error(ErrorCode::ParseError, "bad slot '" + s + "', expected PIECE.SLOT");
    try {
      return SlotRef{std::stoi(parts[0]), std::stoi(parts[1])};
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "bad slot '" + s + "'");
    }
  };
  for (const auto& item : split(text, ',')) {
    auto dash = item.find('-');
    if (dash == std::string::npos) throw Error(ErrorCode::ParseError, "bad pairing '" + item + "', expected A-B");
    out.push_back({ref(item.substr(0, dash)), ref(item.substr(dash + 1))});
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Mode effective_mode(const Flags& f, const TorusSpec& spec) { return f.mode.empty() ? spec.mode : parse_mode(f.mode); }

int pants_nabla(const TorusSpec& spec) {
  if (!is_pants_decomposition(spec.config)) return -1;
  int n = 0;
  for (const auto& g : spec.spines.spines) n += g.num_vertices() == 1;
  return n;
}

Report verdict_report(const OrbitClosureVerdict& v) {
  Report r;
  r.add("stratum", v.stratum.to_string());
  r.add("stratum.dimension", v.stratum.dimension());
  r.add("verdict", to_string(v.kind));
  r.add("certificate.rank_lb", v.certificate.rank_lb);
  r.add("certificate.rank_matrix", v.certificate.rank_matrix);
  r.add("certificate.threshold", format_rational(v.certificate.threshold));
  r.add("certificate.n_co", v.certificate.n_co);
  r.add("certificate.delta_jo", v.certificate.delta_jo);
  if (v.certificate.nabla >= 0) r.add("certificate.nabla", v.certificate.nabla);
  r.add("limit_label", v.limit_label);
  for (const auto& reason : v.reasons) r.add("reason", reason);
  if (v.hyperelliptic) r.add("hyperelliptic", *v.hyperelliptic);
  if (v.spin) r.add("spin", to_string(*v.spin));
  return r;
}

Report rank_report(const TorusSpec& spec) {
  Report r;
  auto cover = holonomy_double_cover(spec.config, spec.spines);
  const int g = spec.config.genus, b = cover.num_branch_points();
  auto genera = component_genera(cover);
  int total = 0;
  for (int x : genera) total += x;
  auto h1 = h1_anti_invariant(cover);
  bool rh = cover.connected() ? total == 2 * g + b / 2 - 1
                              : std::all_of(genera.begin(), genera.end(), [&](int x) { return x == g; });
  rh = rh && h1.dim == 2 * total - 2 * g;
  const int v = rank_lower_bound(cover), formula = relations_formula(spec.config, spec.spines);
  r.add("cover.connected", cover.connected());
  if (cover.connected()) {
    r.add("cover.genus", total);
  } else {
    std::string list;
    for (int x : genera) list += (list.empty() ? "" : ",") + std::to_string(x);
    r.add("cover.component_genera", list);
  }
  r.add("cover.branch_points", b);
  r.add("rh", rh ? "ok" : "fail");
  r.add("h1_minus.dim", h1.dim);
  r.add("V.dim", v);
  r.add("formula.dim", formula);
  r.add("agree", v == formula);
  return r;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}
  void emit(const std::string& text) {
    if (path_.empty()) {
      fallback_ << text;
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw Error(ErrorCode::ParseError, "cannot write " + path_);
    file << text;
  }

 private:
  std::string path_;
  std::ostream& fallback_;
};

int dispatch(const std::string& command, const Flags& f, std::ostream& out) {
  Output sink(f.out, out);
  if (command == "validate") {
    auto doc = parse_document(read_file(f.file));
    auto report = audit(doc);
    Report r;
    r.add("status", report.ok() ? "ok" : "invalid");
    r.add("issues", static_cast<int>(report.issues.size()));
    for (const auto& i : report.issues) r.add("issue", i.code + ": " + i.message);
    sink.emit(r.str());
    return report.ok() ? 0 : 2;
  }
  if (command == "pants" || command == "plumbing") {
    MulticurveConfig cfg;
    SpineAssignment sa;
    if (command == "pants") {
      if (!f.pairing.empty()) {
        cfg.genus = f.genus;
        cfg.pieces.assign(std::max(0, 2 * f.genus - 2), ComplementPiece{0, 3});
        cfg.gluing = parse_pairing(f.pairing);
        require_valid(cfg);
      } else {
        auto configs = enumerate_pants_configs(f.genus);
        if (f.type < 0 || f.type >= static_cast<int>(configs.size()))
          throw Error(ErrorCode::OutOfRange, "genus " + std::to_string(f.genus) + " has " +
                                                 std::to_string(configs.size()) + " pants types");
        cfg = configs[f.type];
      }
      sa = pants_assignment(cfg, rational_list(f.lengths.empty() ? "1" : f.lengths, cfg.num_curves(), "length"));
    } else {
      std::vector<int> valences;
      for (const auto& v : split(f.valences, ',')) valences.push_back(static_cast<int>(to_double(rational_arg(v, "valence"))));
      auto data = plumbing_surface(valences, parse_pairing(f.pairing), rational_arg(f.length, "length"));
      cfg = data.config;
      sa = data.spines;
    }
    const int n = cfg.num_curves();
    auto heights = rational_list(f.heights.empty() ? "1" : f.heights, n, "height");
    auto twists = rational_list(f.twists.empty() ? "0" : f.twists, n, "twist");
    TorusSpec spec = make_spec(cfg, sa, heights, twists);
    if (!f.mode.empty()) spec.mode = parse_mode(f.mode);
    sink.emit(write_torus(spec));
    return 0;
  }

  TorusSpec spec = parse_torus(read_file(f.file));
  const Mode mode = effective_mode(f, spec);
  if (command == "classify") {
    auto v = classify_orbit_closure(spec.config, spec.spines, spec.heights);
    int nabla = pants_nabla(spec);
    if (nabla >= 0) v.certificate.nabla = nabla;
    sink.emit(verdict_report(v).str());
    return 0;
  }
  if (command == "rank") {
    sink.emit(rank_report(spec).str());
    return 0;
  }
  if (command == "spin") {
    Report r;
    r.add("epsilon", jointly_orientable(spec.spines, spec.config).epsilon);
    r.add("spin", to_string(spin_parity(spec.config, spec.spines, static_cast<unsigned>(f.seed))));
    sink.emit(r.str());
    return 0;
  }
  if (command == "flow" || command == "twist") {
    int curve = -1;
    if (command == "twist") {
      auto it = std::find(spec.curve_names.begin(), spec.curve_names.end(), f.curve);
      if (it != spec.curve_names.end()) {
        curve = static_cast<int>(it - spec.curve_names.begin());
      } else {
        try {
          curve = std::stoi(f.curve);
        } catch (const std::logic_error&) {
          throw Error(ErrorCode::BadIndex, "no curve '" + f.curve + "'");
        }
      }
    }
    const std::string s_text = f.s.empty() ? "0" : f.s;
    if (mode == Mode::Exact) {
      if (!f.t.empty()) throw Error(ErrorCode::ModeMismatch, "exact mode takes --lambda = e^t, not --t");
      ExactSurface q = to_exact_surface(spec);
      Rational s = rational_arg(s_text, "shear");
      if (command == "flow") {
        q = geodesic_flow(q, rational_arg(f.lambda.empty() ? "1" : f.lambda, "lambda"));
        q = horocycle_flow(q, s);
      } else {
        q = cylinder_twist(q, curve, s);
      }
      sink.emit(write_torus(from_surface(q, spec)));
    } else {
      if (!f.lambda.empty()) throw Error(ErrorCode::ModeMismatch, "numeric mode takes --t, not --lambda");
      NumericSurface q = to_numeric_surface(spec);
      double s = to_double(rational_arg(s_text, "shear"));
      if (command == "flow") {
        q = geodesic_flow(q, f.t.empty() ? 0.0 : to_double(rational_arg(f.t, "time")));
        q = horocycle_flow(q, s);
      } else {
        q = cylinder_twist(q, curve, s);
      }
      sink.emit(write_torus(from_surface(q, spec)));
    }
    return 0;
  }
  if (command == "probe") {
    if (mode != Mode::Numeric) throw Error(ErrorCode::ModeMismatch, "probe needs numeric mode");
    ProbeOptions opt;
    opt.times = double_list(f.times);
    opt.samples = f.samples;
    opt.seed = f.seed;
    opt.radius = f.radius;
    opt.cap = f.cap;
    opt.bins = f.bins;
    opt.threads = f.threads;
    auto report = run_probe(to_numeric_surface(spec), opt);
    sink.emit(report.to_report().str());
    return report.dropped > 0 ? 3 : 0;
  }
  throw Error(ErrorCode::ParseError, "unknown command " + command);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twist torus orbit closures"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--mode", f.mode, "exact or numeric, overriding the file")->check(CLI::IsMember({"exact", "numeric"}));
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--radius", f.radius, "saddle search radius");
  app.add_option("--samples", f.samples, "probe samples per time");
  app.add_option("--times", f.times, "comma separated flow times");
  app.add_option("--out", f.out, "write the result here instead of stdout");

  auto with_file = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", f.file, "torus file")->required();
    return sub;
  };
  with_file("validate", "audit a torus file");
  with_file("classify", "orbit closure verdict");
  with_file("rank", "double cover and rank certificate");
  with_file("spin", "spin parity of an abelian square");
  auto* flow = with_file("flow", "apply g_t then u_s");
  flow->add_option("--lambda", f.lambda, "exact scale factor e^t");
  flow->add_option("--t", f.t, "numeric flow time");
  flow->add_option("--s", f.s, "horocycle parameter");
  auto* twist = with_file("twist", "twist one cylinder");
  twist->add_option("--curve", f.curve, "curve name or index")->required();
  twist->add_option("--s", f.s, "shear parameter");
  auto* probe = with_file("probe", "Monte Carlo equidistribution probe");
  probe->add_option("--threads", f.threads, "worker threads");
  probe->add_option("--cap", f.cap, "cylinder passages per sample");
  probe->add_option("--bins", f.bins, "histogram bins");
  auto* pants = app.add_subcommand("pants", "twist torus from pairs of pants");
  pants->add_option("--genus", f.genus, "genus");
  pants->add_option("--type", f.type, "index of the pants gluing type");
  pants->add_option("--pairing", f.pairing, "gluing as P.s-P.s,...");
  pants->add_option("--lengths", f.lengths, "curve lengths");
  pants->add_option("--heights", f.heights, "cylinder heights");
  pants->add_option("--twists", f.twists, "cylinder twists");
  auto* plumbing = app.add_subcommand("plumbing", "twist torus from plumbing fixtures");
  plumbing->add_option("--valences", f.valences, "fixture valences p1,p2,...")->required();
  plumbing->add_option("--pairing", f.pairing, "gluing as P.s-P.s,...")->required();
  plumbing->add_option("--length", f.length, "boundary length");
  plumbing->add_option("--heights", f.heights, "cylinder heights");
  plumbing->add_option("--twists", f.twists, "cylinder twists");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), f, out);
  } catch (const Error& e) {
    err << "error = " << e.what() << "\n";
    if (e.code() == ErrorCode::SearchBudgetExceeded || e.code() == ErrorCode::BudgetExceeded) return 3;
    return 2;
  } catch (const std::exception& e) {
    err << "error = " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ttlab
