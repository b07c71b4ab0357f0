#include "mcrs/json_io.hpp"

namespace mcrs {

Json json_of(const Int& n) { return n.get_str(); }

Json json_of(const Real& x) {
  return Json{{"text", x.to_string()}, {"decimal", x.to_double()}};
}

Json json_of(const Complex& z) {
  return Json{{"re", json_of(z.re)}, {"im", json_of(z.im)}};
}

Json json_of(const ContinuedFraction& cf) {
  Json terms = Json::array();
  for (const auto& t : cf.terms) terms.push_back(json_of(t));
  const char* kind = cf.kind == ContinuedFraction::Kind::finite     ? "finite"
                     : cf.kind == ContinuedFraction::Kind::periodic ? "periodic"
                                                                    : "streamed";
  Json j{{"kind", kind}, {"terms", terms}};
  if (cf.kind == ContinuedFraction::Kind::periodic) j["preperiod"] = cf.preperiod;
  return j;
}

Json json_of(const Convergent& c) {
  return Json{{"num", json_of(c.m)}, {"den", json_of(c.n)}, {"index", c.index}};
}

Json json_of(const BoxApprox& b) {
  return Json{{"best", json_of(b.best)}, {"next", json_of(b.next)}, {"exact", b.exact}};
}

Json json_of(const EigenLine& l) {
  Json dir = Json::array();
  for (const auto& z : l.dir) dir.push_back(json_of(z));
  Json j{{"dir", dir}, {"rational", l.rational}};
  if (l.rational) {
    Json prim = Json::array();
    for (const auto& g : l.primitive)
      prim.push_back(Json{{"re", json_of(g.re)}, {"im", json_of(g.im)}});
    j["primitive"] = prim;
  }
  return j;
}

Json json_of(const MCRSGroup& g) {
  Json lines = Json::array();
  for (const auto& l : g.lines) lines.push_back(json_of(l));
  const char* sp = g.spectrum == Spectrum::hyperbolic     ? "hyperbolic"
                   : g.spectrum == Spectrum::complex_pair ? "complex-pair"
                                                          : "mixed";
  Json j{{"n", g.n}, {"spectrum", sp}, {"lines", lines}, {"rational", g.rational()}};
  if (g.source) j["source"] = g.source->to_string();
  return j;
}

Json json_of(const MDForm& f) {
  Json coeff = Json::array();
  for (const auto& c : f.coeff) coeff.push_back(json_of(c));
  return Json{{"n", f.n}, {"monomials", MDForm::monomials(f.n)}, {"coeff", coeff},
              {"text", f.to_string()}};
}

Json json_of(const DiscrepancyValue& d) {
  return Json{{"value", json_of(d.value)},
              {"branch", d.branch == Branch::sum ? "sum" : "difference"}};
}

Json json_of(const PruningCertificate& c) {
  return Json{{"eps2", rat_to_string(c.eps2)},
              {"rho_upper", json_of(c.rho_upper)},
              {"delta", Json::array({json_of(c.delta[0]), json_of(c.delta[1])})},
              {"phi_cap", Json::array({json_of(c.phi_cap[0]), json_of(c.phi_cap[1])})}};
}

Json json_of(const ApproxResult& r) {
  Json mins = Json::array();
  for (const auto& g : r.minimizers) mins.push_back(json_of(g));
  Json j{{"N", json_of(r.N)}, {"rho", json_of(r.rho)}, {"minimizers", mins}};
  if (r.certificate) j["certificate"] = json_of(*r.certificate);
  return j;
}

Json json_of(const LagrangeRateReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"N", json_of(row.N)},
                        {"rho", json_of(row.rho)},
                        {"scaled", json_of(row.scaled)}});
  return Json{{"rows", rows},
              {"window_min", json_of(r.window_min)},
              {"window_max", json_of(r.window_max)},
              {"degenerate", r.degenerate}};
}

Json json_of(const SimulCandidate& v) {
  return Json::array({json_of(v.a), json_of(v.b), json_of(v.c)});
}

Json json_of(const SimulSeqEntry& e) {
  return Json{{"v", json_of(e.v)},
              {"rho", json_of(e.rho)},
              {"branch", e.branch == Branch::sum ? "sum" : "difference"},
              {"size", json_of(e.size)},
              {"member", e.member}};
}

Json json_of(const SimulResult& r) {
  Json mins = Json::array();
  for (const auto& v : r.minimizers) mins.push_back(json_of(v));
  return Json{{"N", json_of(r.N)}, {"rho", json_of(r.rho)}, {"minimizers", mins}};
}

Json json_of(const TableRowVerdict& v) {
  Json j{{"claimed", json_of(v.claimed)}, {"verdict", v.verdict}};
  if (v.counterexample) j["counterexample"] = json_of(*v.counterexample);
  return j;
}

Json json_of(const TableReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back(json_of(row));
  Json extra = Json::array();
  for (const auto& v : r.extra) extra.push_back(json_of(v));
  return Json{{"rows", rows}, {"extra", extra}, {"all_confirmed", r.all_confirmed}};
}

Json json_of(const SailPolyline& p) {
  Json verts = Json::array();
  for (const auto& v : p.vertices)
    verts.push_back(Json::array({json_of(v[0]), json_of(v[1])}));
  Json j{{"vertices", verts},
         {"level", p.level},
         {"ray_start", p.ray_start},
         {"ray_end", p.ray_end},
         {"truncated_start", p.truncated_start},
         {"truncated_end", p.truncated_end}};
  if (p.periodic_shift) j["periodic_shift"] = p.periodic_shift->to_string();
  return j;
}

Json json_envelope(const std::string& command, Json payload) {
  return Json{{"schema", "mcrs-approx/1"}, {"command", command}, {"result", std::move(payload)}};
}

std::string json_print(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mcrs
