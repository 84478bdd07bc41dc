#include "visicut/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "visicut/error.hpp"

namespace visicut::io {

namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string scalar_text(const Json& j) {
  if (j.is_number_float()) return std::isfinite(j.get<double>()) ? format_real(j.get<double>()) : "null";
  return j.dump();
}

bool is_flat_array(const Json& j) {
  return std::all_of(j.begin(), j.end(), [](const Json& e) { return !e.is_structured(); });
}

void write(std::string& out, const Json& j, int indent, int level) {
  const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * level), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{";
    out += nl;
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) {
        out += ",";
        out += nl;
      }
      first = false;
      out += pad + Json(key).dump() + (indent > 0 ? ": " : ":");
      write(out, value, indent, level + 1);
    }
    out += nl + close_pad + "}";
  } else if (j.is_array()) {
    if (j.empty() || is_flat_array(j)) {
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += indent > 0 ? ", " : ",";
        first = false;
        out += scalar_text(e);
      }
      out += "]";
      return;
    }
    out += "[";
    out += nl;
    bool first = true;
    for (const auto& e : j) {
      if (!first) {
        out += ",";
        out += nl;
      }
      first = false;
      out += pad;
      write(out, e, indent, level + 1);
    }
    out += nl + close_pad + "]";
  } else {
    out += scalar_text(j);
  }
}

void flatten(const Json& j, const std::string& path, std::string& out) {
  if (j.is_structured()) {
    if (j.empty()) {
      out += path + ",\n";
      return;
    }
    if (j.is_object()) {
      for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
    } else {
      std::size_t k = 0;
      for (const auto& e : j) flatten(e, path + "." + std::to_string(k++), out);
    }
    return;
  }
  std::string v = j.is_string() ? j.get<std::string>() : scalar_text(j);
  if (v.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : v) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    v = quoted + "\"";
  }
  out += path + "," + v + "\n";
}

// 1-based line of the first occurrence of "key" in the text (1 if absent).
int line_of(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  if (pos == std::string_view::npos) return 1;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

std::vector<double> reals(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  if (n != 0 && j.size() != n)
    throw InputError(std::string(what) + " must have " + std::to_string(n) + " entries, got " +
                     std::to_string(j.size()));
  std::vector<double> v;
  for (const auto& e : j) {
    if (!e.is_number()) throw InputError(std::string(what) + " must contain numbers");
    v.push_back(e.get<double>());
    if (!std::isfinite(v.back())) throw InputError(std::string(what) + " must be finite");
  }
  return v;
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json halfspace_json(const Halfspace& h) { return Json{{"alpha", h.alpha}, {"beta", h.beta}}; }

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

std::string to_csv(const Json& j) {
  std::string out = "key,value\n";
  flatten(j, "", out);
  return out;
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Byte offset to line/column.
    const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(at), '\n');
    const auto last_nl = text.rfind('\n', at == 0 ? 0 : at - 1);
    const auto column = last_nl == std::string_view::npos ? at + 1 : at - last_nl;
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": invalid JSON");
  }
}

Json to_json(const MultiPoly& p) {
  Json arr = Json::array();
  for (const auto& t : p.terms()) arr.push_back(Json{{"c", t.coeff}, {"e", t.exponents}});
  return arr;
}

MultiPoly poly_from_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw InputError("polynomial must be an array of {c, e} objects");
  std::vector<Monomial> terms;
  for (const auto& t : j) {
    Monomial m;
    const Json& c = member(t, "c");
    if (!c.is_number()) throw InputError("monomial coefficient must be a number");
    m.coeff = c.get<double>();
    if (!std::isfinite(m.coeff)) throw InputError("monomial coefficient must be finite");
    const Json& e = member(t, "e");
    if (!e.is_array() || e.size() != n)
      throw InputError("monomial exponent vector must have " + std::to_string(n) + " entries");
    for (const auto& k : e) {
      if (!k.is_number_integer() || k.get<long>() < 0) throw InputError("exponents must be nonnegative integers");
      m.exponents.push_back(k.get<int>());
    }
    terms.push_back(std::move(m));
  }
  return MultiPoly(n, std::move(terms));
}

Json to_json(const UniPoly& p) { return Json(p.coeffs()); }

UniPoly unipoly_from_json(const Json& j) { return UniPoly(reals(j, 0, "coefficient list")); }

Json to_json(const IntervalVector& box) { return Json{{"lo", box.lower()}, {"hi", box.upper()}}; }

IntervalVector box_from_json(const Json& j) {
  const auto lo = reals(member(j, "lo"), 0, "box.lo");
  const auto hi = reals(member(j, "hi"), lo.size(), "box.hi");
  try {
    return IntervalVector(lo, hi);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Json to_json(const ConvexDomain& domain) {
  Json lin = Json::array();
  for (const auto& row : domain.linear())
    lin.push_back(Json{{"a", row.a}, {"sense", row.sense == Sense::LessEqual ? "<=" : ">="}, {"rhs", row.rhs}});
  return Json{{"box", to_json(domain.box())}, {"linear", lin}};
}

ProblemInstance parse_instance(std::string_view text) {
  const Json j = parse(text);
  std::string key = "n";
  auto anchored = [&](const std::string& msg) {
    return InputError("line " + std::to_string(line_of(text, key)) + ": " + msg);
  };
  try {
    if (!j.is_object()) throw InputError("instance must be a JSON object");
    const Json& nj = member(j, "n");
    if (!nj.is_number_integer() || nj.get<long>() < 1) throw InputError("n must be a positive integer");
    const auto n = nj.get<std::size_t>();
    key = "xlp";
    const Point xbar = reals(member(j, "xlp"), n, "xlp");
    key = "box";
    IntervalVector box = box_from_json(member(j, "box"));
    if (box.size() != n) throw InputError("box must have " + std::to_string(n) + " components");
    key = "linear";
    std::vector<LinearConstraint> linear;
    if (j.contains("linear")) {
      const Json& lj = j.at("linear");
      if (!lj.is_array()) throw InputError("linear must be an array");
      for (const auto& row : lj) {
        LinearConstraint c;
        c.a = reals(member(row, "a"), n, "linear.a");
        const Json& sense = member(row, "sense");
        const std::string s = sense.is_string() ? sense.get<std::string>() : "";
        if (s == "<=")
          c.sense = Sense::LessEqual;
        else if (s == ">=")
          c.sense = Sense::GreaterEqual;
        else
          throw InputError("linear.sense must be \"<=\" or \">=\"");
        const Json& rhs = member(row, "rhs");
        if (!rhs.is_number() || !std::isfinite(rhs.get<double>())) throw InputError("linear.rhs must be a finite number");
        c.rhs = rhs.get<double>();
        linear.push_back(std::move(c));
      }
    }
    key = "g";
    MultiPoly g = poly_from_json(member(member(j, "g"), "monomials"), n);
    key = "xlp";
    return ProblemInstance(std::move(g), ConvexDomain(std::move(box), std::move(linear)), xbar);
  } catch (const InputError& e) {
    throw anchored(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw anchored(e.what());
  }
}

Json to_json(const ProblemInstance& inst) {
  Json j{{"n", inst.dim()}, {"xlp", inst.xbar()}, {"box", to_json(inst.domain().box())}};
  j["linear"] = to_json(inst.domain())["linear"];
  j["g"] = Json{{"monomials", to_json(inst.g())}};
  return j;
}

PointSetFile parse_point_set(std::string_view text) {
  const Json j = parse(text);
  std::string key = "xlp";
  try {
    if (!j.is_object()) throw InputError("point set must be a JSON object");
    const Point xbar = reals(member(j, "xlp"), 0, "xlp");
    if (xbar.empty()) throw InputError("xlp must be nonempty");
    auto read_points = [&](const char* name) {
      key = name;
      const Json& pj = member(j, name);
      if (!pj.is_array()) throw InputError(std::string(name) + " must be an array of points");
      std::vector<Point> pts;
      for (const auto& p : pj) pts.push_back(reals(p, xbar.size(), name));
      return FinitePointSet(std::move(pts), xbar);
    };
    PointSetFile out{read_points("points"), std::nullopt};
    if (j.contains("subset")) out.subset = read_points("subset");
    return out;
  } catch (const InputError& e) {
    throw InputError("line " + std::to_string(line_of(text, key)) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError("line " + std::to_string(line_of(text, key)) + ": " + e.what());
  }
}

Json to_json(const FinitePointSet& ps) {
  Json pts = Json::array();
  for (const auto& p : ps.points()) pts.push_back(p);
  return Json{{"xlp", ps.xbar()}, {"points", pts}};
}

Json to_json(const Cut& cut) {
  return Json{{"alpha", cut.alpha}, {"rhs", cut.rhs}, {"frame", "xbar-centered"}, {"xbar", cut.xbar}};
}

Cut cut_from_json(const Json& j) {
  Cut c;
  c.alpha = reals(member(j, "alpha"), 0, "alpha");
  const Json& rhs = member(j, "rhs");
  if (!rhs.is_number()) throw InputError("rhs must be a number");
  c.rhs = rhs.get<double>();
  const Json& frame = member(j, "frame");
  if (!frame.is_string() || frame.get<std::string>() != "xbar-centered")
    throw InputError("cut frame must be \"xbar-centered\"");
  c.xbar = j.contains("xbar") ? reals(j.at("xbar"), c.alpha.size(), "xbar") : Point(c.alpha.size(), 0.0);
  return c;
}

Json to_json(const SosCertificate& cert) {
  return Json{{"parity", cert.parity == Parity::Even ? "even" : "odd"},
              {"d", cert.d},
              {"s1", to_json(cert.s1)},
              {"s2", to_json(cert.s2)}};
}

SosCertificate certificate_from_json(const Json& j) {
  SosCertificate c;
  const Json& parity = member(j, "parity");
  const std::string p = parity.is_string() ? parity.get<std::string>() : "";
  if (p == "even")
    c.parity = Parity::Even;
  else if (p == "odd")
    c.parity = Parity::Odd;
  else
    throw InputError("parity must be \"even\" or \"odd\"");
  const Json& d = member(j, "d");
  if (!d.is_number_integer() || d.get<long>() < 0) throw InputError("d must be a nonnegative integer");
  c.d = d.get<int>();
  c.s1 = unipoly_from_json(member(j, "s1"));
  c.s2 = unipoly_from_json(member(j, "s2"));
  return c;
}

Json to_json(const RegionDescription& region) {
  Json j{{"kind", region.kind == RegionKind::ExactQuadratic ? "exact_quadratic" : "gradient_relaxation"},
         {"surface", to_json(region.surface)}};
  if (const auto* h = std::get_if<Halfspace>(&region.extra))
    j["halfspace"] = halfspace_json(*h);
  else
    j["h"] = to_json(std::get<MultiPoly>(region.extra));
  j["domain"] = to_json(region.domain);
  return j;
}

Json to_json(const Enclosure& enc) {
  Json j{{"status", enc.status == EnclosureStatus::Nonempty ? "nonempty" : "proved_empty"}};
  if (enc.status == EnclosureStatus::Nonempty) j["box"] = to_json(enc.box);
  j["leaves_kept"] = enc.leaves_kept;
  j["depth_used"] = enc.depth_used;
  return j;
}

}  // namespace visicut::io
