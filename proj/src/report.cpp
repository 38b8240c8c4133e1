#include "xnr/report.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "xnr/aut.hpp"
#include "xnr/curve.hpp"
#include "xnr/errors.hpp"
#include "xnr/fnid.hpp"
#include "xnr/numsg.hpp"

namespace xnr {

namespace {

constexpr std::size_t kGapListLimit = 64;

std::string_view mode_name(RunMode m) {
  switch (m) {
    case RunMode::fast: return "fast";
    case RunMode::full: return "full";
    case RunMode::symbolic: return "symbolic";
  }
  return "?";
}

Json big_list(const std::vector<BigInt>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(big_json(x));
  return out;
}

template <std::size_t N>
Json big_list(const std::array<BigInt, N>& v) {
  return big_list(std::vector<BigInt>(v.begin(), v.end()));
}

Json gap_list(const Semigroup& s) {
  Json gaps = Json::array();
  for (std::size_t i = 0; i < s.gaps().size() && i < kGapListLimit; ++i) gaps.push_back(s.gaps()[i]);
  return gaps;
}

const char* status(bool ok) { return ok ? "pass" : "fail"; }

Json skipped(const std::string& reason) {
  Json j;
  j["status"] = "skipped";
  j["reason"] = reason;
  return j;
}

// ---------------------------------------------------------------------------

Json curve_section(const CurveParams& params, const RunConfig& cfg, bool& pass) {
  const CurveStats st = stats(params);
  const FieldCtx& f = *params.field;
  Json j;
  j["degree"] = big_json(st.degree);
  j["genus"] = big_json(st.genus);
  j["n_points_formula"] = big_json(st.n_points);
  j["n_points_enumerated"] = nullptr;
  j["affine_points_enumerated"] = nullptr;

  Json terms = Json::array();
  for (const auto& t : fr_exponents(params)) terms.push_back({{"exponent", big_json(t.exponent)}, {"coeff", t.coeff}});
  j["fr_terms"] = terms;
  j["fr_vanishes"] = fr_vanishes(params);
  j["genus_below_2"] = st.genus < 2;

  bool ok = true;
  // Values of f_r: in GF(q) and equal to T_n(a^{1+q^r}), over the whole field.
  const auto fr = fr_exponents(params);
  const BigInt e = 1 + params.qpow(params.r);
  bool in_fq = true, agree = true;
  for (std::uint64_t i = 0; i < f.size(); ++i) {
    const Fe a = f.element(i);
    const Fe v = eval_terms(fr, a);
    in_fq = in_fq && in_subfield(v, 1);
    agree = agree && v == trace_n(pow(a, e));
  }
  j["fr_in_Fq"] = in_fq;
  j["fr_two_paths_agree"] = agree;
  ok = ok && in_fq && agree;

  // Trace fibres all have q^{n-1} elements.
  {
    std::vector<std::uint64_t> hist(f.size(), 0);
    for (std::uint64_t i = 0; i < f.size(); ++i) ++hist[trace_n(f.element(i)).index()];
    const std::uint64_t kernel = to_u64(params.qpow(params.n - 1));
    bool fibres = true;
    std::uint64_t values = 0;
    for (std::uint64_t c = 0; c < f.size(); ++c) {
      if (hist[c] == 0) continue;
      ++values;
      fibres = fibres && hist[c] == kernel && in_subfield(f.element(c), 1);
    }
    fibres = fibres && BigInt(values) == params.q();
    j["fiber_sizes_ok"] = fibres;
    ok = ok && fibres;
  }

  EnumOptions eo;
  eo.max_points = cfg.max_points;
  try {
    check_point_budget(params, eo);
    const PointSet pts(params);
    const BigInt affine = pts.count();
    j["affine_points_enumerated"] = big_json(affine);
    j["n_points_enumerated"] = big_json(affine + 1);
    const bool count_ok = affine + 1 == st.n_points;
    ok = ok && count_ok;
    const BigInt m2 = model2_point_count(params, eo);
    j["model2_affine_points"] = big_json(m2);
    ok = ok && m2 == affine;
    if (cfg.mode != RunMode::fast) {
      bool closed = true;
      pts.for_each([&](const AffinePoint& pt) {
        if (closed) closed = pts.index_of({frobenius(pt.x, 1), frobenius(pt.y, 1)}).has_value();
      });
      j["frobenius_closed"] = closed;
      ok = ok && closed;
    }
  } catch (const BudgetExceeded& ex) {
    j["enumeration"] = skipped(ex.what());
  } catch (const Falsification& ex) {
    j["falsification"] = ex.what();
    ok = false;
  }
  j["status"] = status(ok);
  pass = pass && ok;
  return j;
}

// ---------------------------------------------------------------------------

Json identities_section(const CurveParams& params, const RunConfig& cfg, bool& pass,
                        std::vector<IdentityReport>& out) {
  Json arr = Json::array();
  const bool symbolic = cfg.mode == RunMode::symbolic;
  const bool mandatory = symbolic_mandatory(params.p(), params.m(), params.n, params.r);
  VerifyOptions vo;
  vo.sampling.seed = cfg.seed;
  for (IdentityId id : {IdentityId::EQ3, IdentityId::ZQN, IdentityId::WQN, IdentityId::TQN}) {
    Json j;
    j["id"] = to_string(id);
    if (params.n == 2) {
      j["mode"] = nullptr;
      j["variant"] = nullptr;
      j["status"] = "skipped";
      j["reason"] = "n = 2: z0 = y - x^2 and the construction of z, w, t degenerates";
      arr.push_back(j);
      continue;
    }
    IdentityReport rep;
    try {
      rep = verify_identity(params, id, symbolic ? Mode::symbolic : Mode::sampled, vo);
    } catch (const BudgetExceeded& ex) {
      j["mode"] = to_string(Mode::sampled);
      j["variant"] = nullptr;
      j["status"] = "skipped";
      j["reason"] = ex.what();
      arr.push_back(j);
      continue;
    }
    bool ok = rep.ok();
    if (symbolic && mandatory && rep.downgraded) ok = false;
    j["mode"] = to_string(rep.used);
    j["variant"] = rep.verified ? Json(to_string(*rep.verified)) : Json(nullptr);
    j["status"] = status(ok);
    if (rep.used == Mode::sampled) j["samples"] = rep.samples;
    Json vs = Json::array();
    for (const auto& v : rep.variants) {
      Json vj;
      vj["variant"] = to_string(v.variant);
      vj["holds"] = v.holds;
      if (!v.holds) vj["witness"] = v.witness;
      vs.push_back(vj);
    }
    j["variants"] = vs;
    if (!rep.note.empty()) j["note"] = rep.note;
    pass = pass && ok;
    out.push_back(rep);
    arr.push_back(j);
  }
  return arr;
}

Json valuations_section(const CurveParams& params, const std::vector<IdentityReport>& ids, bool& pass) {
  if (params.n == 2) return skipped("n = 2");
  Variant v = Variant::printed;
  for (IdentityId want : {IdentityId::TQN, IdentityId::WQN}) {
    const auto it = std::find_if(ids.begin(), ids.end(), [&](const IdentityReport& r) { return r.id == want; });
    if (it != ids.end() && it->verified) {
      v = *it->verified;
      break;
    }
  }
  const ValuationLedger ledger = derive_pole_orders(params, v);
  Json j;
  j["variant"] = to_string(v);
  bool ok = true;
  std::vector<BigInt> poles;
  for (Fn f : {Fn::x, Fn::y, Fn::z, Fn::w, Fn::t}) {
    const PoleEntry& e = ledger.at(f);
    const BigInt expected = expected_pole(params, f);
    const bool entry_ok = e.status != PoleStatus::failed && e.pole == expected;
    Json ej;
    ej["pole"] = big_json(e.pole);
    ej["expected"] = big_json(expected);
    ej["status"] = to_string(e.status);
    if (e.source) {
      ej["identity"] = to_string(*e.source);
      ej["min_valuation"] = big_json(e.min_valuation);
      ej["dominant_term"] = e.dominant_term;
      ej["unique_min"] = e.unique_min;
    }
    if (e.naive_pole_bound) ej["naive_pole_bound"] = big_json(*e.naive_pole_bound);
    if (!entry_ok) ej["detail"] = e.detail;
    j[std::string(to_string(f))] = ej;
    ok = ok && entry_ok;
    poles.push_back(e.pole);
  }
  // {pole(x), pole(y), pole(w), pole(z), pole(t)} = (a1, ..., a5).
  const auto gens = hp_generators(params.q(), params.n, params.r);
  const std::vector<BigInt> ordered{poles[0], poles[1], poles[3], poles[2], poles[4]};
  const bool match = std::equal(ordered.begin(), ordered.end(), gens.begin());
  j["matches_generators"] = match;
  ok = ok && match;
  j["status"] = status(ok);
  pass = pass && ok;
  return j;
}

// ---------------------------------------------------------------------------

Json semigroup_section(const CurveParams& params, bool& pass) {
  const auto gens = hp_generators(params.q(), params.n, params.r);
  const std::vector<BigInt> seq(gens.begin(), gens.end());
  const CurveStats st = stats(params);
  Json j;
  j["generators"] = big_list(gens);
  bool ok = true;
  try {
    const Semigroup s = Semigroup::sieve(seq);
    const SgInvariants inv = invariants(s);
    const TelescopicTrace tr = telescopic_check(seq);
    j["minimal_generators"] = big_list(s.minimal_generators());
    j["d_chain"] = big_list(tr.d);
    if (params.n >= 3) {
      const auto expected = hp_expected_d_chain(params.q(), params.n, params.r);
      const bool d_ok = std::equal(tr.d.begin(), tr.d.end(), expected.begin());
      j["d_chain_expected"] = big_list(expected);
      j["d_chain_matches"] = d_ok;
      ok = ok && d_ok;
    } else {
      j["d_chain_expected"] = nullptr;
      j["d_chain_note"] = "n = 2: the d-chain formula needs n >= 3";
    }
    j["frobenius"] = big_json(inv.frobenius);
    j["gap_count"] = big_json(inv.gap_count);
    j["gaps"] = gap_list(s);
    j["gaps_truncated"] = s.gaps().size() > kGapListLimit;
    j["multiplicity"] = big_json(inv.multiplicity);
    j["symmetric"] = inv.symmetric;
    j["telescopic"] = tr.telescopic;
    j["literal_telescopic"] = tr.literal_telescopic;
    const bool castle = castle_check(s, params.qpow(params.n), st.n_points);
    j["castle"] = castle;
    const bool genus_ok = inv.gap_count == st.genus;
    const bool frob_ok = inv.frobenius == 2 * st.genus - 1;
    j["genus_matches_curve"] = genus_ok;
    j["frobenius_is_2g_minus_1"] = frob_ok;
    ok = ok && genus_ok && frob_ok && inv.symmetric && tr.telescopic && castle;
    if (tr.telescopic) {
      const ClosedForms cf = closed_forms(seq);
      j["closed_forms"] = {{"l_g", big_json(cf.l_g)}, {"genus", big_json(cf.genus)}, {"agrees", cf.sieve_agrees}};
      ok = ok && cf.sieve_agrees;
    }
    const bool gid = gcd_identity(params.q(), params.n, params.r);
    j["gcd_identity"] = gid;
    ok = ok && gid;
  } catch (const BudgetExceeded& ex) {
    return skipped(ex.what());
  } catch (const Falsification& ex) {
    j["falsification"] = ex.what();
    ok = false;
  }
  j["status"] = status(ok);
  pass = pass && ok;
  return j;
}

// ---------------------------------------------------------------------------

Json group_section(const CurveParams& params, const RunConfig& cfg, bool& pass) {
  GroupOptions go;
  go.seed = cfg.seed;
  go.max_order = cfg.max_group_order;
  if (cfg.mode == RunMode::fast) {
    go.exhaustive_limit = 0;
    go.samples = 1000;
  }
  GroupReport rep;
  try {
    rep = verify_group_structure(params, go);
  } catch (const BudgetExceeded& ex) {
    return skipped(ex.what());
  }
  Json j;
  j["order"] = big_json(rep.order_G);
  j["order_N"] = big_json(rep.order_N);
  j["order_H"] = big_json(rep.order_H);
  j["expected_order"] = big_json(rep.expected_order);
  j["exhaustive"] = rep.exhaustive;
  Json c;
  c["order"] = rep.order_ok;
  c["identity"] = rep.identity_ok;
  c["closure"] = rep.closure_ok;
  c["inverses"] = rep.inverses_ok;
  c["N_normal"] = rep.N_normal_ok;
  c["H_cyclic"] = rep.H_cyclic_ok;
  c["complement"] = rep.complement_ok;
  c["sylow"] = rep.sylow_ok;
  c["lambda_in_Fq"] = rep.lambda_ok;
  c["action_bijective"] = rep.action_ok;
  c["parameters_unique"] = rep.uniqueness_ok ? Json(*rep.uniqueness_ok) : Json(nullptr);
  c["compose_law"] = rep.compose_law_ok;
  j["checks"] = c;
  j["compose_law"] = {{"exhaustive", rep.compose_law_exhaustive},
                      {"pairs", rep.compose_pairs},
                      {"point_checks", rep.compose_point_checks}};
  j["precondition"] = {{"lhs", big_json(rep.precondition_lhs)},
                       {"rhs", big_json(rep.precondition_rhs)},
                       {"holds", rep.precondition_ok}};
  bool ok = rep.ok();
  if (params.n > 2) {
    const GenusMismatch& g = rep.genus;
    Json gj;
    gj["genus"] = big_json(g.genus);
    gj["field_size"] = big_json(g.field_size);
    gj["hermitian"] = g.hermitian_match;
    gj["dls"] = g.dls_applicable ? Json(g.dls_match) : Json(nullptr);
    gj["dlr"] = g.dlr_applicable ? Json(g.dlr_match) : Json(nullptr);
    gj["mismatch"] = g.mismatch();
    gj["loose_hermitian_n"] = g.loose_hermitian_n ? big_json(*g.loose_hermitian_n) : Json(nullptr);
    j["genus_mismatch"] = gj;
    ok = ok && g.mismatch();
  } else {
    j["genus_mismatch"] = skipped("n = 2");
  }
  if (stats(params).genus < 2) j["note"] = "genus < 2: the large-stabilizer theorem does not apply";
  if (!rep.counterexample.empty()) j["counterexample"] = rep.counterexample;
  j["status"] = status(ok);
  pass = pass && ok;
  return j;
}

CurveParams resolve(const RunConfig& cfg) {
  if (cfg.n < 2) throw InvalidArgument("n_at_least_2", "n must be at least 2");
  const unsigned r = cfg.r ? *cfg.r : canonical_r(cfg.n);
  return make_curve(cfg.p, cfg.m, cfg.n, r);
}

Json config_json(const CurveParams& params, const RunConfig& cfg) {
  Json j;
  j["p"] = params.p();
  j["m"] = params.m();
  j["n"] = params.n;
  j["r"] = params.r;
  j["q"] = big_json(params.q());
  j["r_canonical"] = params.r == canonical_r(params.n);
  j["mode"] = mode_name(cfg.mode);
  j["seed"] = cfg.seed;
  j["max_points"] = big_json(cfg.max_points);
  return j;
}

}  // namespace

Json big_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(UINT64_MAX)) return Json(v.convert_to<std::uint64_t>());
  if (v < 0 && v >= BigInt(INT64_MIN)) return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

bool symbolic_mandatory(std::uint32_t p, unsigned m, unsigned n, unsigned r) {
  if (n < 3) return false;
  std::vector<std::tuple<BigInt, unsigned, unsigned, unsigned>> configs;
  for (unsigned mm = 1; mm <= 2; ++mm) {
    for (unsigned nn = 3; nn <= 5; ++nn) {
      for (unsigned rr : admissible_r(nn)) {
        configs.emplace_back(ipow(BigInt(p), mm * (2 * nn - 1)), mm, nn, rr);
      }
    }
  }
  std::sort(configs.begin(), configs.end());
  for (std::size_t i = 0; i < 2 && i < configs.size(); ++i) {
    const auto& [size, mm, nn, rr] = configs[i];
    if (mm == m && nn == n && rr == r) return true;
  }
  return false;
}

ReportResult run_report(const RunConfig& cfg) {
  const CurveParams params = resolve(cfg);
  ReportResult res;
  Json& doc = res.doc;
  bool& pass = res.pass;
  doc["config"] = config_json(params, cfg);
  doc["curve"] = curve_section(params, cfg, pass);
  std::vector<IdentityReport> ids;
  doc["identities"] = identities_section(params, cfg, pass, ids);
  doc["valuations"] = valuations_section(params, ids, pass);
  doc["semigroup"] = semigroup_section(params, pass);
  doc["group"] = group_section(params, cfg, pass);
  doc["status"] = status(pass);
  return res;
}

ReportResult run_semigroup(const std::vector<BigInt>& gens) {
  ReportResult res;
  Json& j = res.doc;
  const Semigroup s = Semigroup::sieve(gens);
  const SgInvariants inv = invariants(s);
  j["generators"] = big_list(gens);
  j["minimal_generators"] = big_list(s.minimal_generators());
  j["gaps"] = gap_list(s);
  j["gaps_truncated"] = s.gaps().size() > kGapListLimit;
  j["gap_count"] = big_json(inv.gap_count);
  j["frobenius"] = big_json(inv.frobenius);
  j["multiplicity"] = big_json(inv.multiplicity);
  j["symmetric"] = inv.symmetric;
  const TelescopicTrace tr = telescopic_check(gens);
  j["d_chain"] = big_list(tr.d);
  j["telescopic"] = tr.telescopic;
  j["literal_telescopic"] = tr.literal_telescopic;
  if (tr.telescopic) {
    try {
      const ClosedForms cf = closed_forms(gens);
      j["closed_forms"] = {{"l_g", big_json(cf.l_g)}, {"genus", big_json(cf.genus)}, {"agrees", cf.sieve_agrees}};
      res.pass = cf.sieve_agrees;
    } catch (const Falsification& ex) {
      j["closed_forms"] = {{"falsification", ex.what()}};
      res.pass = false;
    }
  } else {
    j["closed_forms"] = nullptr;
  }
  j["status"] = status(res.pass);
  return res;
}

ReportResult run_sweep(const BigInt& limit, const RunConfig& base) {
  ReportResult res;
  Json rows = Json::array();
  for (std::uint32_t p = 2; ipow(BigInt(p), 3) <= limit; ++p) {
    if (!is_prime(p)) continue;
    for (unsigned m = 1; ipow(BigInt(p), 3 * m) <= limit; ++m) {
      const BigInt q = ipow(BigInt(p), m);
      for (unsigned n = 2; ipow(q, 2 * n - 1) <= limit; ++n) {
        for (unsigned r : admissible_r(n)) {
          RunConfig cfg = base;
          cfg.p = p;
          cfg.m = m;
          cfg.n = n;
          cfg.r = r;
          cfg.mode = RunMode::fast;
          const ReportResult one = run_report(cfg);
          Json row;
          row["p"] = p;
          row["m"] = m;
          row["n"] = n;
          row["r"] = r;
          row["canonical"] = r == canonical_r(n);
          row["q"] = big_json(q);
          row["genus"] = one.doc["curve"]["genus"];
          row["genus_below_2"] = one.doc["curve"]["genus_below_2"];
          row["n_points"] = one.doc["curve"]["n_points_enumerated"];
          row["curve"] = one.doc["curve"]["status"];
          Json ids = Json::object();
          for (const auto& e : one.doc["identities"]) ids[e["id"].get<std::string>()] = e["status"];
          row["identities"] = ids;
          row["valuations"] = one.doc["valuations"]["status"];
          row["semigroup"] = one.doc["semigroup"]["status"];
          row["group"] = one.doc["group"]["status"];
          row["status"] = status(one.pass);
          rows.push_back(row);
          res.pass = res.pass && one.pass;
        }
      }
    }
  }
  res.doc["limit"] = big_json(limit);
  res.doc["configs"] = rows.size();
  res.doc["rows"] = rows;
  res.doc["status"] = status(res.pass);
  return res;
}

namespace {

void render(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar = [](const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return std::string("-");
    return v.dump();
  };
  auto simple_array = [](const Json& v) {
    return std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (v.is_object()) {
      os << pad << it.key() << ":\n";
      render(os, v, indent + 1);
    } else if (v.is_array() && simple_array(v)) {
      os << pad << it.key() << ": ";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar(v[i]);
      os << "\n";
    } else if (v.is_array()) {
      os << pad << it.key() << ":\n";
      for (const auto& e : v) {
        os << pad << "  -\n";
        render(os, e, indent + 2);
      }
    } else {
      os << pad << it.key() << ": " << scalar(v) << "\n";
    }
  }
}

}  // namespace

std::string render_text(const Json& doc) {
  std::ostringstream os;
  render(os, doc, 0);
  return os.str();
}

}  // namespace xnr
