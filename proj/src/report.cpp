#include "modlift/report.hpp"

#include "modlift/modforms.hpp"
#include "modlift/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace modlift {

using json = nlohmann::ordered_json;

namespace {

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json mat_json(const Mat2& m) { return json::array({json::array({int_json(m.a), int_json(m.b)}), json::array({int_json(m.c), int_json(m.d)})}); }

const char* kind_name(GenKind k) {
  switch (k) {
    case GenKind::Pair: return "pair";
    case GenKind::Bullet: return "bullet";
    case GenKind::Circle: return "circle";
  }
  return "?";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string class_name(const LiftDescriptor& l) {
  switch (l.cls) {
    case LiftClass::ContainsMinusOne: return "contains -1";
    case LiftClass::Level: return "congruence";
    case LiftClass::Noncongruence: return "noncongruence";
    case LiftClass::Unclassified: break;
  }
  return "unclassified";
}

std::string level_str(const LiftDescriptor& l) { return l.level > 0 ? std::to_string(l.level) : "-"; }

std::string regular_str(const std::vector<bool>& r) {
  std::string s;
  for (bool b : r) s += b ? 'Y' : 'n';
  return s;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

SignedFareySymbol symbol_of(const GroupSpec& spec, const ReportOptions& opt) {
  return spec.is_family() ? opt.provider(spec) : *spec.symbol;
}

Classification classify(const GroupSpec& spec, const ReportOptions& opt, bool forms) {
  ClassifyOptions co;
  co.provider = opt.provider;
  co.forms = forms;
  co.max_level = opt.max_level;
  co.log = opt.log;
  return classify_symbol(spec, symbol_of(spec, opt), co);
}

json symbol_json(const SignedFareySymbol& sym) {
  json cusps = json::array(), labels = json::array();
  for (std::size_t k = 0; k < sym.cusps.size(); ++k)
    cusps.push_back(k == 0 ? "-oo" : sym.cusps[k].str());
  for (const auto& l : sym.labels) labels.push_back(l.str());
  return {{"cusps", cusps}, {"labels", labels}};
}

std::string symbol_text(const SignedFareySymbol& sym) {
  std::string s = serialize_symbol(sym);
  return s.substr(s.find('\n') + 1);  // drop the version line
}

json cusps_json(const GroupInvariants& inv) {
  json a = json::array();
  for (const auto& c : inv.cusps) a.push_back({{"cusp", c.rep.str()}, {"width", c.width}});
  return a;
}

std::string cusps_text(const GroupInvariants& inv) {
  std::string s;
  for (const auto& c : inv.cusps) s += " " + c.rep.str() + ":" + std::to_string(c.width);
  return s;
}

std::string summary_line(const Classification& c) {
  const long N = c.inv.general_level;
  std::string s = std::to_string(c.level_n) + " level-" + std::to_string(N) + ", " + std::to_string(c.level_2n) +
                  " level-" + std::to_string(2 * N) + ", " + std::to_string(c.noncongruence) + " noncongruence";
  return s + ", 1 containing -1" + (c.minus_one_congruence ? " (congruence)" : " (noncongruence)");
}

}  // namespace

GroupSpec resolve_spec(const std::string& arg) {
  if (arg.rfind("file:", 0) == 0) {
    std::ifstream in(arg.substr(5));
    if (!in) throw UsageError("cannot read symbol file '" + arg.substr(5) + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
      SignedFareySymbol sym = parse_symbol(text);
      auto err = validate(sym);
      if (!err.empty()) throw UsageError("invalid Farey symbol: " + err.front());
      return GroupSpec::from_farey(sym);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  try {
    return parse_spec(arg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Output cmd_farey(const GroupSpec& spec, const ReportOptions& opt) {
  SignedFareySymbol sym = symbol_of(spec, opt);
  GroupInvariants inv = group_invariants(spec, sym);
  GeneratorSet gens(sym);
  bool minus_one = oracle_for(spec).contains_minus_one();
  Output out;
  if (opt.json) {
    json g = json::array();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto& x = gens.gens()[i];
      g.push_back({{"kind", kind_name(x.kind)}, {"edges", {x.edge, x.partner}}, {"matrix", mat_json(x.m)}});
    }
    if (minus_one && !sym.has_circle())
      g.push_back({{"kind", "minus_one"}, {"edges", json::array()}, {"matrix", mat_json(-Mat2::identity())}});
    json j = {{"group", spec.str()},
              {"symbol", symbol_json(sym)},
              {"index", inv.mu},
              {"generators", g},
              {"contains_minus_one", minus_one},
              {"nu2", inv.nu2},
              {"nu3", inv.nu3},
              {"cusps", cusps_json(inv)},
              {"genus", inv.genus},
              {"general_level", inv.general_level}};
    out.text = dump(j);
    return out;
  }
  std::ostringstream os;
  os << "group " << spec.str() << "\n" << symbol_text(sym);
  os << "index " << inv.mu << "\n";
  os << "generators " << gens.size() << "\n";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& x = gens.gens()[i];
    os << "  g" << i << " " << pad(kind_name(x.kind), 6) << " ";
    std::string edges = std::to_string(x.edge);
    if (x.kind == GenKind::Pair) edges += "-" + std::to_string(x.partner);
    os << pad(edges, 7) << " " << x.m.str() << "\n";
  }
  if (minus_one && !sym.has_circle()) os << "  -1 (in the group, not a side pairing)\n";
  os << "contains -1 " << yes_no(minus_one) << "\n";
  os << "nu2 " << inv.nu2 << "\nnu3 " << inv.nu3 << "\n";
  os << "cusps " << inv.nu_inf() << ":" << cusps_text(inv) << "\n";
  os << "genus " << inv.genus << "\n";
  os << "general level " << inv.general_level << "\n";
  out.text = os.str();
  return out;
}

Output cmd_lifts(const GroupSpec& spec, const ReportOptions& opt) {
  Classification c = classify(spec, opt, true);
  Output out;
  if (opt.json) {
    json lifts = json::array();
    for (const auto& l : c.lifts)
      lifts.push_back({{"signs", l.bits()},
                       {"class", class_name(l)},
                       {"level", l.level},
                       {"regular", regular_str(l.regular)},
                       {"dim_s3", l.dim_s3},
                       {"dim_s5", l.dim_s5}});
    json j = {{"group", spec.str()},
              {"general_level", c.inv.general_level},
              {"cusps", cusps_json(c.inv)},
              {"lifts", lifts},
              {"summary",
               {{"level_n", c.level_n},
                {"level_2n", c.level_2n},
                {"noncongruence", c.noncongruence},
                {"minus_one_congruence", c.minus_one_congruence}}}};
    out.text = dump(j);
    return out;
  }
  std::ostringstream os;
  os << "group " << spec.str() << "\n";
  os << "general level " << c.inv.general_level << "\n";
  os << "cusps" << cusps_text(c.inv) << "\n";
  const std::size_t w = std::max<std::size_t>(6, c.gens->size() + 2);
  os << pad("signs", w) << pad("class", 15) << pad("level", 7) << pad("regular", std::max<std::size_t>(9, c.inv.cusps.size() + 2))
     << pad("S3", 5) << "S5\n";
  for (const auto& l : c.lifts) {
    std::string line = pad(l.bits(), w) + pad(class_name(l), 15) + pad(level_str(l), 7) +
                       pad(regular_str(l.regular), std::max<std::size_t>(9, c.inv.cusps.size() + 2)) +
                       pad(std::to_string(l.dim_s3), 5) + std::to_string(l.dim_s5);
    os << line << "\n";
  }
  os << "summary: " << summary_line(c) << "\n";
  out.text = os.str();
  return out;
}

Output cmd_level(const GroupSpec& spec, const ReportOptions& opt) {
  Classification c = classify(spec, opt, false);
  const long N = c.inv.general_level;
  std::map<long, long> by_level;
  for (const auto& l : c.lifts)
    if (!l.minus_one && l.cls == LiftClass::Level) ++by_level[l.level];
  Output out;
  if (opt.json) {
    json lv = json::object();
    for (auto [k, v] : by_level) lv[std::to_string(k)] = v;
    json j = {{"group", spec.str()},
              {"general_level", N},
              {"cusps", cusps_json(c.inv)},
              {"contains_gamma_n", c.sysN->contained},
              {"levels", lv},
              {"noncongruence", c.noncongruence},
              {"minus_one_level", c.minus_one_congruence ? N : 0}};
    out.text = dump(j);
    return out;
  }
  std::ostringstream os;
  os << "group " << spec.str() << "\n";
  os << "general level " << N << "\n";
  os << "cusp widths" << cusps_text(c.inv) << "\n";
  os << "contains Gamma(" << N << ") projectively: " << yes_no(c.sysN->contained) << "\n";
  os << "lift levels\n";
  for (auto [k, v] : by_level) os << "  level " << k << ": " << v << "\n";
  os << "  noncongruence: " << c.noncongruence << "\n";
  os << "  containing -1: " << (c.minus_one_congruence ? "level " + std::to_string(N) : std::string("noncongruence"))
     << "\n";
  out.text = os.str();
  return out;
}

Output cmd_counts(const GroupSpec& spec, const ReportOptions& opt) {
  Classification c = classify(spec, opt, false);
  std::optional<CountPrediction> pred;
  try {
    pred = predicted_counts(spec);
  } catch (const std::invalid_argument&) {
  }
  Output out;
  bool cong_ok = !pred || pred->congruence < 0 || pred->congruence == c.congruence();
  bool nc_ok = !pred || pred->noncongruence < 0 || pred->noncongruence == c.noncongruence;
  out.status = cong_ok && nc_ok ? 0 : 1;
  std::string note;
  if (pred && pred->noncongruence == 0 && c.noncongruence == 0 && pred->s > 0)
    note = "formula and computation both give 0 noncongruence lifts, so the count is not positive here";
  const long delta = static_cast<long>(c.gens->size());
  if (opt.json) {
    json j = {{"group", spec.str()},
              {"index", c.inv.mu},
              {"nu2", c.inv.nu2},
              {"nu3", c.inv.nu3},
              {"cusps", c.inv.nu_inf()},
              {"genus", c.inv.genus},
              {"generators", delta},
              {"lifts_without_minus_one", c.sign_lifts()},
              {"congruence", c.congruence()},
              {"noncongruence", c.noncongruence}};
    if (pred) {
      j["predicted"] = {{"congruence", pred->congruence}, {"noncongruence", pred->noncongruence}, {"s", pred->s},
                        {"rule", pred->rule}};
      j["agrees"] = out.status == 0;
    }
    if (!note.empty()) j["note"] = note;
    out.text = dump(j);
    return out;
  }
  std::ostringstream os;
  os << "group " << spec.str() << "\n";
  os << "index " << c.inv.mu << "\nnu2 " << c.inv.nu2 << "\nnu3 " << c.inv.nu3 << "\ncusps " << c.inv.nu_inf()
     << "\ngenus " << c.inv.genus << "\ngenerators " << delta << "\n";
  os << "lifts without -1 " << c.sign_lifts() << "\n";
  os << "congruence lifts " << c.congruence() << " (with -1)\n";
  os << "noncongruence lifts " << c.noncongruence << "\n";
  if (pred) {
    os << "predicted congruence " << pred->congruence << (cong_ok ? "" : "  MISMATCH") << "\n";
    if (pred->noncongruence >= 0) {
      os << "predicted noncongruence " << pred->noncongruence;
      if (pred->s > 0) os << " (s = " << pred->s << ")";
      os << (nc_ok ? "" : "  MISMATCH") << "\n";
    }
  }
  if (!note.empty()) os << "note: " << note << "\n";
  out.text = os.str();
  return out;
}

Output cmd_dims(const GroupSpec& spec, const ReportOptions& opt) {
  const long k = opt.weight;
  if (k < 2) throw UsageError("weight " + std::to_string(k) + " is not supported; use k >= 2");
  Classification c = classify(spec, opt, false);
  struct Row {
    std::string signs, regular;
    DimensionReport d;
  };
  std::vector<Row> rows;
  for (const auto& l : c.lifts) {
    RegularityTable reg = regularity(lift_oracle(c.gens, l.x, l.minus_one), c.inv);
    rows.push_back({l.bits(), regular_str(reg.regular), dim_cusp_forms(c.inv, &reg, l.minus_one, k)});
  }
  Output out;
  if (opt.json) {
    json a = json::array();
    for (const auto& r : rows) {
      json e = {{"signs", r.signs}, {"regular", r.regular}, {"nu_plus", r.d.nu_plus}, {"nu_minus", r.d.nu_minus},
                {"dim", r.d.dim}};
      if (r.d.flagged) e["note"] = r.d.note;
      a.push_back(e);
    }
    json j = {{"group", spec.str()},
              {"weight", k},
              {"index", c.inv.mu},
              {"genus", c.inv.genus},
              {"nu2", c.inv.nu2},
              {"nu3", c.inv.nu3},
              {"cusps", c.inv.nu_inf()},
              {"lifts", a}};
    out.text = dump(j);
    return out;
  }
  std::ostringstream os;
  os << "group " << spec.str() << "\n";
  os << "weight " << k << "\n";
  os << "index " << c.inv.mu << ", genus " << c.inv.genus << ", nu2 " << c.inv.nu2 << ", nu3 " << c.inv.nu3
     << ", cusps " << c.inv.nu_inf() << "\n";
  const std::size_t w = std::max<std::size_t>(6, c.gens->size() + 2);
  const std::size_t rw = std::max<std::size_t>(9, c.inv.cusps.size() + 2);
  os << pad("signs", w) << pad("regular", rw) << pad("nu+", 5) << pad("nu-", 5) << "dim\n";
  for (const auto& r : rows) {
    os << pad(r.signs, w) << pad(r.regular, rw) << pad(std::to_string(r.d.nu_plus), 5)
       << pad(std::to_string(r.d.nu_minus), 5) << r.d.dim;
    if (r.d.flagged) os << "  (" << r.d.note << ")";
    os << "\n";
  }
  out.text = os.str();
  return out;
}

Output cmd_verify(const std::string& fixture, const ReportOptions& opt) {
  std::vector<const Criterion*> todo;
  if (fixture == "all") {
    for (const auto& c : criteria()) todo.push_back(&c);
  } else if (const Criterion* c = find_criterion(fixture)) {
    todo.push_back(c);
  } else {
    std::string names;
    for (const auto& c : criteria()) names += " " + c.fixture;
    throw UsageError("unknown fixture '" + fixture + "'; known: all" + names);
  }
  Output out;
  json a = json::array();
  std::ostringstream os;
  for (const Criterion* c : todo) {
    if (opt.log) opt.log("verifying " + c->fixture);
    CriterionResult r = run_criterion(*c, opt.provider);
    if (!r.ok) out.status = 1;
    json checks = json::array();
    os << (r.ok ? "PASS " : "FAIL ") << c->id << " " << c->fixture << ": " << c->title << "\n";
    for (const auto& l : r.lines) {
      checks.push_back({{"name", l.name}, {"ok", l.ok}, {"detail", l.detail}});
      os << "  " << (l.ok ? "ok   " : "FAIL ") << l.name << (l.detail.empty() ? "" : ": " + l.detail) << "\n";
    }
    a.push_back({{"id", c->id}, {"fixture", c->fixture}, {"title", c->title}, {"ok", r.ok}, {"checks", checks}});
  }
  out.text = opt.json ? dump(a) : os.str();
  return out;
}

}  // namespace modlift
