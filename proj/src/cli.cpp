#include "dtk/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <json.hpp>
#include <optional>
#include <set>
#include <sstream>

#include "dtk/dynamics.hpp"
#include "dtk/errors.hpp"
#include "dtk/family.hpp"
#include "dtk/integrals.hpp"
#include "dtk/parser.hpp"
#include "dtk/rosenlicht.hpp"
#include "dtk/system.hpp"

namespace dtk::cli {
namespace {

using Json = nlohmann::ordered_json;

// File-system trouble, reported as an input error.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os || !(os << text) || !os.flush()) throw IoError("cannot write '" + path + "'");
}

SystemSpec load_system(const std::string& path) { return parse_system(read_file(path)); }

std::string trim(std::string s) {
  const auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), sp));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), sp).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json names_json(const std::vector<std::string>& names) { return Json(names); }

std::string error_kind(const std::exception& e) {
  // Most specific first.
#define DTK_KIND(T) \
  if (dynamic_cast<const T*>(&e)) return #T;
  DTK_KIND(SyntaxError)
  DTK_KIND(UnknownVariable)
  DTK_KIND(ZeroPolynomial)
  DTK_KIND(RingMismatch)
  DTK_KIND(ZeroDenominator)
  DTK_KIND(UnitIdeal)
  DTK_KIND(NotSquarefree)
  DTK_KIND(ZeroRoot)
  DTK_KIND(NotInvariant)
  DTK_KIND(MissingHints)
  DTK_KIND(NotGenericallyProjecting)
  DTK_KIND(BadIndices)
  DTK_KIND(MissingParameter)
  DTK_KIND(NotAnIntegral)
  DTK_KIND(NumericOverflow)
  DTK_KIND(InsufficientSamples)
  DTK_KIND(EmptyInput)
  DTK_KIND(InvalidArgument)
  DTK_KIND(ResourceLimit)
  DTK_KIND(IoError)
#undef DTK_KIND
  return "Error";
}

// Outcome of one subcommand.
struct Outcome {
  Json result = Json::object();
  int code = kOk;
};

Execution exec_of(bool serial) { return serial ? Execution::Serial : Execution::Parallel; }

// ---------------------------------------------------------------------------

Outcome check_invariant(const std::string& file, const std::string& ideal_name) {
  const SystemSpec spec = load_system(file);
  const DVariety x = to_dvariety(spec);
  const Ideal z = named_ideal(spec, ideal_name);
  const bool ok = is_invariant(x, z);
  Outcome o;
  o.result["system"] = spec.name;
  o.result["ideal"] = ideal_name;
  o.result["generators"] = names_json(spec.ideals.empty() ? std::vector<std::string>{} : [&] {
    for (const auto& i : spec.ideals)
      if (i.name == ideal_name) return i.generators;
    return std::vector<std::string>{};
  }());
  o.result["invariant"] = ok;
  o.code = ok ? kOk : kNegative;
  return o;
}

Outcome first_integral(const std::string& file, int power, int degree, bool serial) {
  const SystemSpec spec = load_system(file);
  if (!spec.params.empty()) throw InvalidArgument("first-integral: specialize the parameters first");
  const DVariety x = to_dvariety(spec);
  SearchOptions opts;
  opts.execution = exec_of(serial);
  const IntegralReport rep = property_O_bounded(x, power, degree, opts);
  Outcome o;
  o.result["system"] = spec.name;
  o.result["max_power"] = rep.max_power;
  o.result["max_degree"] = rep.max_degree;
  o.result["verdict"] = to_string(rep.verdict);
  Json ws = Json::array();
  for (const auto& w : rep.witnesses) {
    const DVariety xn = product(x, w.power);
    const std::string text = w.function.to_string();
    // Round trip through the printed form, as a consumer of the report would.
    const bool verified = is_first_integral(xn, parse_rational_function(text, xn.ring()));
    ws.push_back({{"power", w.power}, {"function", text}, {"variables", names_json(xn.ring().names())},
                  {"verified", verified}});
  }
  o.result["witnesses"] = ws;
  Json cov = Json::array();
  for (const auto& c : rep.searched)
    cov.push_back({{"power", c.power},
                   {"degree", c.degree},
                   {"complete", c.complete},
                   {"darboux_elements", c.darboux_elements},
                   {"note", c.note}});
  o.result["coverage"] = cov;
  o.code = rep.verdict == Verdict::Fails ? kNegative : kOk;
  return o;
}

// The single indeterminate of a univariate expression ("x" when constant).
std::string sole_variable(const std::string& expr) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < expr.size();) {
    const unsigned char c = expr[i];
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < expr.size() && (std::isalnum(static_cast<unsigned char>(expr[j])) || expr[j] == '_')) ++j;
      names.insert(expr.substr(i, j - i));
      i = j;
    } else if (std::isdigit(c)) {
      while (i < expr.size() && std::isalnum(static_cast<unsigned char>(expr[i]))) ++i;
    } else {
      ++i;
    }
  }
  if (names.size() > 1) throw InvalidArgument("rosenlicht: expected one variable, found " + std::to_string(names.size()));
  return names.empty() ? "x" : *names.begin();
}

Outcome rosenlicht(const std::string& expr) {
  const std::string var = sole_variable(expr);
  const Ring ring({var});
  const UniPoly p = UniPoly::from_poly(parse_poly(expr, ring), 0);
  const RosenlichtVerdict v = classify(p);
  Outcome o;
  o.result["poly"] = p.to_string(var);
  o.result["orthogonal"] = v.orthogonal;
  o.result["reason"] = to_string(v.reason);
  Json cert;
  Json factors = Json::array();
  for (const auto& f : v.certificate.factors)
    factors.push_back({{"factor", f.factor.to_string(var)}, {"multiplicity", f.multiplicity}});
  cert["factors"] = factors;
  if (v.certificate.residue.degree() >= 0) cert["residue"] = v.certificate.residue.to_string("y");
  if (v.certificate.ratio.degree() >= 0) cert["ratio"] = v.certificate.ratio.to_string("z");
  Json roots = Json::array();
  for (const auto& r : v.certificate.rational_ratios)
    roots.push_back({{"root", to_string(r.root)}, {"multiplicity", r.multiplicity}});
  cert["rational_ratios"] = roots;
  cert["rational_ratio_count"] = v.certificate.rational_ratio_count;
  if (!v.certificate.note.empty()) cert["note"] = v.certificate.note;
  o.result["certificate"] = cert;
  o.code = v.orthogonal ? kOk : kNegative;
  return o;
}

Outcome product_cmd(const std::string& file, int n, const std::string& out_path) {
  if (n < 1) throw InvalidArgument("product: --n must be at least 1");
  const SystemSpec spec = load_system(file);
  const SystemSpec prod = product_system(spec, n);
  const std::string text = serialize_system(prod);
  write_file(out_path, text);
  Outcome o;
  o.result["system"] = prod.name;
  o.result["n"] = n;
  o.result["vars"] = names_json(prod.vars);
  o.result["out"] = out_path;
  return o;
}

std::vector<Rat> parse_point(const std::string& text, std::size_t dim) {
  std::vector<Rat> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw InvalidArgument("--start: empty coordinate");
    out.push_back(parse_rational(item));
  }
  if (out.size() != dim)
    throw InvalidArgument("--start has " + std::to_string(out.size()) + " coordinates, system has " +
                          std::to_string(dim));
  return out;
}

std::pair<std::size_t, std::size_t> parse_axes(const std::string& text, std::size_t dim) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw InvalidArgument("--axes expects i,j");
  std::size_t ij[2];
  for (int k = 0; k < 2; ++k) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(parts[k], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != parts[k].size() || v < 1 || static_cast<std::size_t>(v) > dim)
      throw InvalidArgument("--axes: coordinates are numbered 1.." + std::to_string(dim));
    ij[k] = static_cast<std::size_t>(v - 1);
  }
  return {ij[0], ij[1]};
}

// Static polyline of coordinates (i, j); y grows upward.
std::string orbit_svg(const OrbitSample& s, std::size_t i, std::size_t j, const std::vector<std::string>& names) {
  constexpr double kSize = 480, kMargin = 24;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& p : s.points) {
    x0 = std::min(x0, p[i]);
    x1 = std::max(x1, p[i]);
    y0 = std::min(y0, p[j]);
    y1 = std::max(y1, p[j]);
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  const double scale = (kSize - 2 * kMargin) / span;
  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize << "\" viewBox=\"0 0 "
     << kSize << ' ' << kSize << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kMargin << "\" y=\"16\" font-size=\"12\" font-family=\"sans-serif\">" << names[i] << " vs "
     << names[j] << "</text>\n";
  os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    const double px = kMargin + (s.points[k][i] - x0) * scale;
    const double py = kSize - kMargin - (s.points[k][j] - y0) * scale;
    os << (k ? " " : "") << px << ',' << py;
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

struct OrbitArgs {
  std::string file, start, csv, svg, axes;
  double step = 1e-3;
  int steps = 1000;
  bool serial = false;
};

Outcome orbit(const OrbitArgs& a) {
  const SystemSpec spec = load_system(a.file);
  if (!spec.params.empty()) throw InvalidArgument("orbit: specialize the parameters first");
  if (a.steps < 1) throw InvalidArgument("orbit: --steps must be positive");
  const DVariety x = to_dvariety(spec);
  const std::vector<Rat> x0 = parse_point(a.start, x.dimension());
  std::pair<std::size_t, std::size_t> axes{0, x.dimension() > 1 ? 1 : 0};
  if (!a.axes.empty()) axes = parse_axes(a.axes, x.dimension());

  Outcome o;
  o.result["system"] = spec.name;
  o.result["start"] = a.start;
  o.result["step"] = a.step;
  o.result["steps"] = a.steps;
  OrbitSample s;
  try {
    s = integrate_orbit(x, x0, a.step, a.steps);
  } catch (const NumericOverflow& e) {
    o.result["overflow"] = true;
    o.result["message"] = e.what();
    o.code = kNegative;
    return o;
  }
  o.result["overflow"] = false;
  o.result["method"] = s.method;
  o.result["final_time"] = s.times.back();
  std::ofstream csv(a.csv);
  if (!csv) throw IoError("cannot write '" + a.csv + "'");
  write_orbit_csv(csv, s);
  if (!csv.flush()) throw IoError("cannot write '" + a.csv + "'");
  o.result["csv"] = a.csv;
  if (!a.svg.empty()) {
    write_file(a.svg, orbit_svg(s, axes.first, axes.second, spec.vars));
    o.result["svg"] = a.svg;
  }

  const double threshold = kDriftPerUnitTime * std::max(1.0, s.times.back());
  o.result["drift_threshold"] = threshold;
  Json drifts = Json::array();
  bool all_ok = true;
  const auto probe = [&](const std::string& name, const Ideal& z) {
    const double d = invariance_drift(s, z, exec_of(a.serial));
    const bool ok = d <= threshold;
    all_ok = all_ok && ok;
    drifts.push_back({{"ideal", name}, {"drift", d}, {"within_threshold", ok}});
  };
  if (!spec.variety_exprs.empty()) probe("variety", x.variety());
  for (const auto& i : spec.ideals) probe(i.name, named_ideal(spec, i.name));
  o.result["drift"] = drifts;
  o.code = all_ok ? kOk : kNegative;
  return o;
}

Outcome density(const std::string& path, int degree, double tolerance, bool serial) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  const OrbitSample s = read_orbit_csv(in);
  const DensityResult r = zariski_density_up_to_degree(s, degree, tolerance, exec_of(serial));
  std::vector<std::string> names;
  for (std::size_t k = 1; k <= s.points.front().size(); ++k) names.push_back("x" + std::to_string(k));
  Outcome o;
  o.result["csv"] = path;
  o.result["samples"] = s.points.size();
  o.result["degree"] = r.degree;
  o.result["tolerance"] = tolerance;
  o.result["dense"] = r.dense;
  o.result["sigma_min"] = r.sigma_min;
  if (!r.dense) {
    o.result["relation"] = r.relation_text(names);
    o.result["residual"] = r.residual;
  }
  o.code = r.dense ? kOk : kNegative;
  return o;
}

// "basis: 1, sqrt2; omega: (1,0),(0,1)". Without a basis the frequencies are
// plain rationals: "omega: 1/2, 3".
FreqVector parse_freqs(const std::string& text) {
  std::vector<std::string> basis;
  std::string omega;
  bool have_omega = false;
  for (const auto& part : split(text, ';')) {
    if (part.empty()) continue;
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw InvalidArgument("--freqs: expected 'basis: ...; omega: ...'");
    const std::string key = trim(part.substr(0, colon)), value = trim(part.substr(colon + 1));
    if (key == "basis") {
      basis = split(value, ',');
      for (const auto& b : basis)
        if (b.empty()) throw InvalidArgument("--freqs: empty basis symbol");
    } else if (key == "omega") {
      omega = value;
      have_omega = true;
    } else {
      throw InvalidArgument("--freqs: unknown key '" + key + "'");
    }
  }
  if (!have_omega) throw InvalidArgument("--freqs: omega required");
  if (basis.empty()) basis = {"1"};

  // Tuples "(a,b,...)", or bare numbers when the basis has one symbol.
  std::vector<std::vector<Rat>> cols;
  std::size_t i = 0;
  const auto skip = [&] {
    while (i < omega.size() && (std::isspace(static_cast<unsigned char>(omega[i])) || omega[i] == ',')) ++i;
  };
  for (skip(); i < omega.size(); skip()) {
    std::vector<Rat> col;
    if (omega[i] == '(') {
      const auto close = omega.find(')', i);
      if (close == std::string::npos) throw InvalidArgument("--freqs: unbalanced '('");
      for (const auto& c : split(omega.substr(i + 1, close - i - 1), ',')) col.push_back(parse_rational(c));
      i = close + 1;
    } else {
      std::size_t j = i;
      while (j < omega.size() && omega[j] != ',') ++j;
      col.push_back(parse_rational(trim(omega.substr(i, j - i))));
      i = j;
    }
    if (col.size() != basis.size())
      throw InvalidArgument("--freqs: each frequency needs " + std::to_string(basis.size()) + " coordinates");
    cols.push_back(std::move(col));
  }
  if (cols.empty()) throw InvalidArgument("--freqs: no frequencies");
  RatMatrix m(basis.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < basis.size(); ++r) m(r, c) = cols[c][r];
  return FreqVector(basis, m);
}

Outcome torus(const std::string& freqs) {
  const FreqVector w = parse_freqs(freqs);
  const TorusVerdict t = torus_is_transitive(w);
  const TorusVerdict m = torus_is_weakly_mixing(w);
  const auto rel = [](const TorusVerdict& v) {
    Json a = Json::array();
    for (const auto& z : v.relation) a.push_back(integer_json(z));
    return a;
  };
  Outcome o;
  o.result["basis"] = names_json(w.basis());
  o.result["dimension"] = w.dimension();
  o.result["transitive"] = t.holds;
  o.result["weakly_mixing"] = m.holds;
  Json cert;
  if (!t.holds) cert["transitivity_relation"] = rel(t);
  if (!m.holds) cert["weak_mixing_relation"] = rel(m);
  o.result["certificates"] = cert.is_null() ? Json::object() : cert;
  o.code = t.holds ? kOk : kNegative;
  return o;
}

std::map<std::string, Rat> parse_assignments(const std::string& text) {
  std::map<std::string, Rat> out;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--at: expected name=value, got '" + item + "'");
    const std::string name = trim(item.substr(0, eq));
    if (!out.emplace(name, parse_rational(trim(item.substr(eq + 1)))).second)
      throw InvalidArgument("--at: '" + name + "' given twice");
  }
  return out;
}

Outcome family_specialize(const std::string& file, const std::string& at, const std::string& out_path) {
  const SystemSpec spec = load_system(file);
  const auto point = parse_assignments(at);
  const DFamily fam = to_family(spec);
  const DVariety fiber = specialize(fam, point);
  SystemSpec s = system_from(fiber, spec.name);
  s.description = "specialized at " + at;
  for (const auto& i : spec.ideals) {
    NamedIdeal ni{i.name, {}};
    const Ideal z = named_ideal(spec, i.name);
    for (auto g : z.generators()) {
      for (std::size_t k = 0; k < spec.params.size(); ++k) g = g.substitute(k, point.at(spec.params[k]));
      ni.generators.push_back(g.rename_into(fiber.ring()).to_string());
    }
    s.ideals.push_back(std::move(ni));
  }
  const std::string text = serialize_system(s);
  Outcome o;
  o.result["at"] = at;
  o.result["vars"] = names_json(s.vars);
  if (out_path.empty()) {
    o.result["system"] = text;
  } else {
    write_file(out_path, text);
    o.result["out"] = out_path;
  }
  return o;
}

Outcome initial_term_cmd(const std::string& file, const std::string& g_text, const std::string& param) {
  const SystemSpec spec = load_system(file);
  const Ring ring = system_ring(spec);
  if (!ring.index_of(param)) throw InvalidArgument("--param: no variable or parameter '" + param + "'");
  const RatPoly g = parse_poly(g_text, ring);
  const InitialTerm it = initial_term(g, param);
  Outcome o;
  o.result["g"] = g.to_string();
  o.result["param"] = param;
  o.result["order"] = it.order;
  o.result["term"] = it.term.to_string();
  return o;
}

void emit(std::ostream& out, Json report) { out << report.dump(2) << '\n'; }

Json envelope(const std::vector<std::string>& args) {
  Json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = args;
  return r;
}

int fail(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const std::string& kind,
         const std::string& message, int code, const std::exception* e = nullptr) {
  err << "dtoolkit: " << message << '\n';
  Json r = envelope(args);
  Json error{{"kind", kind}, {"message", message}};
  if (const auto* s = dynamic_cast<const SyntaxError*>(e); s && s->line() > 0) {
    error["line"] = s->line();
    error["column"] = s->column();
  }
  if (const auto* u = dynamic_cast<const UnknownVariable*>(e); u && u->line() > 0) {
    error["line"] = u->line();
    error["column"] = u->column();
  }
  r["error"] = error;
  r["exit_code"] = code;
  emit(out, std::move(r));
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact toolkit for polynomial vector fields", "dtoolkit"};
  app.require_subcommand(1);
  std::function<Outcome()> action;
  bool serial = false;

  std::string file, ideal_name;
  auto* ci = app.add_subcommand("check-invariant", "Is a declared ideal invariant under the field?");
  ci->add_option("file", file, ".dsys system")->required();
  ci->add_option("--ideal", ideal_name, "name of a declared ideal")->required();
  ci->callback([&] { action = [&] { return check_invariant(file, ideal_name); }; });

  int power = 3, degree = 4;
  auto* fi = app.add_subcommand("first-integral", "Bounded search for rational first integrals on X^n");
  fi->add_option("file", file, ".dsys system")->required();
  fi->add_option("--power", power, "largest power N")->capture_default_str()->check(CLI::Range(1, 16));
  fi->add_option("--degree", degree, "Darboux degree bound D")->capture_default_str()->check(CLI::Range(1, 64));
  fi->add_flag("--serial", serial, "disable OpenMP");
  fi->callback([&] { action = [&] { return first_integral(file, power, degree, serial); }; });

  std::string poly;
  auto* ro = app.add_subcommand("rosenlicht", "Orthogonality to the constants for x' = P(x)");
  ro->add_option("--poly", poly, "univariate polynomial P")->required();
  ro->callback([&] { action = [&] { return rosenlicht(poly); }; });

  int n = 2;
  std::string out_path;
  auto* pr = app.add_subcommand("product", "Write the system X^n");
  pr->add_option("file", file, ".dsys system")->required();
  pr->add_option("--n", n, "number of copies")->required();
  pr->add_option("--out", out_path, "output .dsys")->required();
  pr->callback([&] { action = [&] { return product_cmd(file, n, out_path); }; });

  OrbitArgs oa;
  auto* ob = app.add_subcommand("orbit", "RK4 orbit, CSV/SVG output and invariance drift");
  ob->add_option("file", oa.file, ".dsys system")->required();
  ob->add_option("--start", oa.start, "starting point a,b,...")->required();
  ob->add_option("--step", oa.step, "step size")->capture_default_str();
  ob->add_option("--steps", oa.steps, "number of steps")->capture_default_str();
  ob->add_option("--csv", oa.csv, "orbit CSV output")->required();
  ob->add_option("--svg", oa.svg, "phase plot output");
  ob->add_option("--axes", oa.axes, "coordinates to plot, 1-based i,j");
  ob->add_flag("--serial", oa.serial, "disable OpenMP");
  ob->callback([&] { action = [&] { return orbit(oa); }; });

  std::string csv;
  int ddeg = 2;
  double tol = 1e-8;
  auto* de = app.add_subcommand("density", "Is a sampled orbit Zariski dense up to degree D?");
  de->add_option("--csv", csv, "orbit CSV")->required();
  de->add_option("--degree", ddeg, "degree D")->required()->check(CLI::Range(0, 32));
  de->add_option("--tolerance", tol, "singular value threshold")->capture_default_str();
  de->add_flag("--serial", serial, "disable OpenMP");
  de->callback([&] { action = [&] { return density(csv, ddeg, tol, serial); }; });

  std::string freqs;
  auto* to = app.add_subcommand("torus", "Transitivity and weak mixing of a linear torus flow");
  to->add_option("--freqs", freqs, "\"basis: 1, sqrt2; omega: (1,0),(0,1)\"")->required();
  to->callback([&] { action = [&] { return torus(freqs); }; });

  std::string at, fam_out;
  auto* fa = app.add_subcommand("family", "Operations on families");
  fa->require_subcommand(1);
  auto* sp = fa->add_subcommand("specialize", "Fix the parameters");
  sp->add_option("file", file, ".dsys family")->required();
  sp->add_option("--at", at, "s1=...,s2=...")->required();
  sp->add_option("--out", fam_out, "output .dsys (default: inline in the report)");
  sp->callback([&] { action = [&] { return family_specialize(file, at, fam_out); }; });

  std::string g_text, param;
  auto* it = app.add_subcommand("initial-term", "t-adic order and initial term of g");
  it->add_option("file", file, ".dsys system")->required();
  it->add_option("--g", g_text, "polynomial g")->required();
  it->add_option("--param", param, "the variable t")->required();
  it->callback([&] { action = [&] { return initial_term_cmd(file, g_text, param); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    return fail(args, out, err, "UsageError", e.what(), kInputError);
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = action();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    Json r = envelope(args);
    r["result"] = std::move(o.result);
    r["exit_code"] = o.code;
    r["timing"] = {{"seconds", dt.count()}};
    r["resources"] = {{"threads", serial || oa.serial ? 1 : parallel_threads()}};
    emit(out, std::move(r));
    return o.code;
  } catch (const ResourceLimit& e) {
    return fail(args, out, err, "ResourceLimit", e.what(), kResourceLimit, &e);
  } catch (const Error& e) {
    return fail(args, out, err, error_kind(e), e.what(), kInputError, &e);
  } catch (const IoError& e) {
    return fail(args, out, err, "IoError", e.what(), kInputError, &e);
  }
}

}  // namespace dtk::cli
