#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "posetsheaf/posetsheaf.hpp"

namespace posetsheaf::cli {

enum Exit : int { kPass = 0, kFail = 1, kInput = 2, kResource = 3 };

enum class Format { json, dot, text };

namespace detail {

inline std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

// A path, "-" for stdin, or an inline document starting with '{' or '['.
inline json load_json(const std::string& src) {
  std::string text;
  std::string where = src;
  if (src == "-") {
    text = slurp(std::cin);
    where = "<stdin>";
  } else if (!src.empty() && (src.front() == '{' || src.front() == '[')) {
    text = src;
    where = "<inline>";
  } else {
    std::ifstream f(src, std::ios::binary);
    if (!f) throw InputError("cannot open '" + src + "'");
    text = slurp(f);
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + where + " at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline json bits_labels(const FinitePreorder& P, const Bits& b) {
  json a = json::array();
  b.for_each([&](std::size_t p) { a.push_back(P.label(p)); });
  return a;
}

inline std::string list_string(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + "}";
}

}  // namespace detail

struct Options {
  Format format = Format::json;
  std::size_t max_elems = 0;
  std::size_t elems() const { return max_elems ? max_elems : default_limits().max_elems; }
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int partition(const std::string& input, bool dot, bool hasse) {
    auto C = covering_from_json(detail::load_json(input));
    auto S = partition_space(C);
    if (dot || opt.format == Format::dot) {
      out_ << to_dot(S.poset, !hasse, "partition");
      return kPass;
    }
    auto q = verify_quotient_map(C, S);
    if (opt.format == Format::text) {
      out_ << S.poset.size() << " classes\n";
      for (std::size_t c = 0; c < S.poset.size(); ++c)
        out_ << "  " << S.poset.label(c) << "  support " << detail::list_string(S.class_support[c].indices()) << "\n";
      auto rel = hasse ? hasse_edges(S.poset) : strict_relations(S.poset);
      out_ << rel.size() << (hasse ? " covering relations\n" : " strict relations\n");
      for (auto [p, q2] : rel) out_ << "  " << S.poset.label(p) << " < " << S.poset.label(q2) << "\n";
      return kPass;
    }
    auto j = to_json(C, S);
    j["strict_relations"] = strict_relations(S.poset).size();
    j["hasse_edges"] = hasse_edges(S.poset).size();
    j["quotient"] = {{"checked", q.checked}, {"monotone", q.monotone}, {"open", q.open}, {"closed", q.closed}};
    out_ << j.dump(2) << "\n";
    return kPass;
  }

  int xi(const std::string& input) {
    auto C = covering_from_json(detail::load_json(input));
    auto r = posetsheaf::xi(C);
    if (opt.format == Format::text) {
      for (std::size_t x = 0; x < C.ground.size(); ++x) out_ << C.ground[x] << " -> " << to_string(r.value[x]) << "\n";
      out_ << "order embedding: " << (r.ok() ? "yes" : "no") << "\n";
    } else {
      out_ << to_json(C, r).dump(2) << "\n";
    }
    return r.ok() ? kPass : kFail;
  }

  int lattice_gen(const std::string& input) {
    auto j = detail::load_json(input);
    DLattice L = j.contains("ground") ? covering_lattice(covering_from_json(j)) : [&] {
      auto A = lattice_from_json(j);
      if (A.generators().empty()) throw InputError("lattice document needs \"generators\" to generate from");
      return generate_sublattice(A, A.generators());
    }();
    return emit_lattice(L);
  }

  int birkhoff_cmd(const std::string& input) {
    auto L = lattice_from_json(detail::load_json(input));
    auto bp = birkhoff(L);
    bool ok = verify_birkhoff(bp, opt.elems());
    if (opt.format == Format::dot) {
      out_ << to_dot(bp.irreducible_poset, false, "irreducibles");
      return ok ? kPass : kFail;
    }
    if (opt.format == Format::text) {
      out_ << bp.irreducibles.size() << " meet-irreducibles of " << L.size() << " elements\n";
      for (auto e : bp.irreducibles) out_ << "  " << L.label(e) << "\n";
      out_ << "round trip: " << (ok ? "isomorphic" : "FAILED") << "\n";
      return ok ? kPass : kFail;
    }
    json iso = json::object();
    for (Elem a = 0; a < L.size(); ++a) iso[L.label(a)] = detail::bits_labels(bp.irreducible_poset, bp.iso[a]);
    json j = {{"elements", L.size()},
              {"irreducibles", bp.irreducible_poset.labels()},
              {"irreducible_poset", to_json(static_cast<const FinitePreorder&>(bp.irreducible_poset))},
              {"iso", iso},
              {"round_trip", ok}};
    out_ << j.dump(2) << "\n";
    return ok ? kPass : kFail;
  }

  int free_check(std::optional<std::size_t> n, const std::string& input, bool allow_large) {
    std::optional<DLattice> L;
    if (n) {
      L = free_distributive_lattice(*n, allow_large);
    } else {
      if (input.empty()) throw InputError("free-check needs --n or a lattice document");
      L = lattice_from_json(detail::load_json(input));
    }
    auto v = is_free_on(*L, L->generators());
    if (opt.format == Format::text) {
      out_ << L->size() << " elements, free: " << (v.free ? "true" : "false");
      if (!v.free) out_ << " (" << v.clause << " fails at I=" << detail::list_string(v.I) << ")";
      out_ << "\n";
    } else {
      json j = {{"elements", L->size()}, {"generators", L->generators().size()}, {"free", v.free}};
      if (!v.free) j["witness"] = {{"clause", v.clause}, {"I", v.I}, {"J", v.J}};
      out_ << j.dump(2) << "\n";
    }
    return v.free ? kPass : kFail;
  }

  int sheaf_check(const std::string& input) {
    auto j = detail::load_json(input);
    PDiagram F = j.contains("covering") ? [&] {
      auto C = covering_from_json(j.at("covering"));
      std::size_t N = j.contains("horizon") ? j.at("horizon").get<std::size_t>() : C.horizon();
      return covering_to_sheaf(IdealCoveringModel::from_zero_sets(C), N);
    }()
                                        : diagram_from_json(j);
    const auto& B = F.base();
    json rows = json::array();
    bool all = true;
    std::ostringstream table;
    for (const auto& U : alexandrov_opens(B, opt.elems())) {
      auto v = check_sheaf_condition(F, U.members, basic_cover(B, U.members));
      all = all && v.holds;
      json row = {{"open", detail::bits_labels(B, U.members)}, {"holds", v.holds}};
      if (!v.holds) row["reason"] = v.reason;
      rows.push_back(row);
      std::string name = "{";
      bool first = true;
      U.members.for_each([&](std::size_t p) {
        name += (first ? "" : " ") + B.label(p);
        first = false;
      });
      table << (v.holds ? "ok    " : "FAIL  ") << name << "}" << (v.holds ? "" : "  " + v.reason) << "\n";
    }
    const bool flabby = F.is_flabby();
    if (opt.format == Format::text) {
      out_ << table.str() << rows.size() << " opens, sheaf condition " << (all ? "holds" : "FAILS")
           << ", flabby: " << (flabby ? "yes" : "no") << "\n";
    } else {
      out_ << json({{"opens", rows}, {"all_hold", all}, {"flabby", flabby}}).dump(2) << "\n";
    }
    return all ? kPass : kFail;
  }

  int pushforward_cmd(const std::string& alpha_src, const std::string& input, std::optional<std::size_t> target) {
    TameSurjection alpha = alpha_src == "id"         ? TameSurjection::identity()
                           : alpha_src == "boundary" ? TameSurjection::boundary()
                                                     : tame_from_json(detail::load_json(alpha_src));
    auto j = detail::load_json(input);
    PDiagram F = j.contains("covering") ? [&] {
      auto C = covering_from_json(j.at("covering"));
      std::size_t N = j.contains("horizon") ? j.at("horizon").get<std::size_t>() : C.horizon();
      return covering_to_sheaf(IdealCoveringModel::from_zero_sets(C), N);
    }()
                                        : diagram_from_json(j);
    auto G = pushforward(alpha, F, target);
    out_ << to_json(G).dump(2) << "\n";
    return kPass;
  }

  int t_member(const std::string& input, toeplitz::GluingConfig cfg) {
    auto t = toeplitz::tuple_from_json(detail::load_json(input));
    auto v = toeplitz::is_member(t, cfg);
    if (opt.format == Format::text) {
      out_ << (v.member ? "member" : "not a member");
      if (!v.member) out_ << ", first failing pair (" << v.failing->first << ", " << v.failing->second << ")";
      out_ << "\n";
    } else {
      json j = {{"member", v.member}};
      if (!v.member) j["failing_pair"] = {v.failing->first, v.failing->second};
      out_ << j.dump(2) << "\n";
    }
    return v.member ? kPass : kFail;
  }

  int t_extend(const std::string& input, toeplitz::GluingConfig cfg) {
    auto [p, n] = toeplitz::partial_from_json(detail::load_json(input));
    auto t = toeplitz::extend_partial(p, n, cfg);
    if (opt.format == Format::text) {
      for (std::size_t i = 0; i < t.components.size(); ++i) out_ << "b_" << i << " = " << to_string(t.components[i]) << "\n";
    } else {
      out_ << toeplitz::to_json(t).dump(2) << "\n";
    }
    return kPass;
  }

  int t_report(const char* name, const toeplitz::CheckReport& r) {
    if (opt.format == Format::text) {
      out_ << name << ": " << (r.ok ? "ok" : "FAILED") << " (" << r.checked << " cases)";
      if (!r.ok) out_ << "\n  " << r.failure;
      out_ << "\n";
    } else {
      out_ << toeplitz::to_json(r).dump(2) << "\n";
    }
    return r.ok ? kPass : kFail;
  }

  int t_freeness(std::size_t n, std::uint64_t seed, unsigned jobs, toeplitz::GluingConfig cfg) {
    auto r = toeplitz::verify_freeness(n, cfg, seed, jobs);
    if (opt.format == Format::text) {
      out_ << "gluing: " << (r.gluing_ok ? "ok" : "FAILED") << "\n";
      for (const auto& [g, rep] : r.gluing)
        if (!rep.ok) out_ << "  " << g << ": " << rep.failure << "\n";
      if (r.freeness_tested) {
        out_ << r.join_elements << " kernel intersections, distinct and ordered: " << (r.ordered ? "yes" : "no") << "\n";
        std::size_t good = 0;
        for (const auto& p : r.probes) good += p.ok();
        out_ << good << "/" << r.probes.size() << " meet-irreducibility probes pass\n";
      }
      out_ << (r.pass() ? "free" : "NOT VERIFIED") << "\n";
    } else {
      out_ << toeplitz::to_json(r).dump(2) << "\n";
    }
    return r.pass() ? kPass : kFail;
  }

  Options opt;

 private:
  int emit_lattice(const DLattice& L) {
    if (opt.format == Format::dot) {
      out_ << to_dot(lattice_order(L), false, "lattice");
      return kPass;
    }
    if (opt.format == Format::text) {
      out_ << L.size() << " elements, distributive: " << (L.is_distributive() ? "yes" : "no") << "\n";
      for (auto g : L.generators()) out_ << "  generator " << L.label(g) << "\n";
      return kPass;
    }
    json j = {{"size", L.size()}, {"distributive", L.is_distributive()}, {"lattice", to_json(L)}};
    out_ << j.dump(2) << "\n";
    return kPass;
  }

  std::ostream& out_;
  std::ostream& err_;
};

inline int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::input:
    case ErrorKind::domain:
      return kInput;
    case ErrorKind::resource:
      return kResource;
    case ErrorKind::internal:
      return kFail;
  }
  return kFail;
}

// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite posets, distributive lattices, sheaves on P^N(Z/2) and the Toeplitz quantum projective space"};
  app.name("posetsheaf");
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  std::size_t max_elems = 0;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));
  app.add_option("--max-elems", max_elems, "Bound on carrier sizes for open-set enumeration")->check(CLI::PositiveNumber);

  std::string input;
  bool dot = false, hasse = false, allow_large = false, no_antipode = false;
  std::optional<std::size_t> n, target;
  std::size_t tn = 1;
  std::int64_t max_exp = -1;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string alpha;

  auto* partition = app.add_subcommand("partition", "Partition space of a covering");
  partition->add_option("input", input, "Covering document")->required();
  partition->add_flag("--dot", dot, "Emit DOT with every strict order relation");
  partition->add_flag("--hasse", hasse, "Restrict relations to covering pairs");

  auto* xi = app.add_subcommand("xi", "Classifying map into P^N(Z/2)");
  xi->add_option("input", input, "Covering document")->required();

  auto* lgen = app.add_subcommand("lattice-gen", "Lattice generated by a covering or by lattice generators");
  lgen->add_option("input", input, "Covering or lattice document")->required();

  auto* birk = app.add_subcommand("birkhoff", "Birkhoff transform of a finite distributive lattice");
  birk->add_option("input", input, "Lattice document")->required();

  auto* fc = app.add_subcommand("free-check", "Freeness criterion on the generators");
  fc->add_option("input", input, "Lattice document with generators");
  fc->add_option("--n", n, "Check the free distributive lattice on n generators");
  fc->add_flag("--allow-large", allow_large, "Permit n = 6");

  auto* sc = app.add_subcommand("sheaf-check", "Sheaf condition on every open with its basic cover");
  sc->add_option("input", input, "Diagram document or {\"covering\",\"horizon\"}")->required();

  auto* pf = app.add_subcommand("pushforward", "Pushforward of a diagram along a tame surjection");
  pf->add_option("--alpha", alpha, "Tame surjection: JSON, a file, 'id' or 'boundary'")->required();
  pf->add_option("--target-horizon", target, "Horizon of the result");
  pf->add_option("input", input, "Diagram document or {\"covering\",\"horizon\"}")->required();

  auto* tz = app.add_subcommand("toeplitz", "Toeplitz quantum projective space");
  tz->require_subcommand(1);
  tz->fallthrough();
  tz->add_flag("--no-antipode", no_antipode, "Glue without the antipode");
  auto* tm = tz->add_subcommand("member", "Membership of a tuple");
  tm->add_option("input", input, "Tuple document")->required();
  auto* te = tz->add_subcommand("extend", "Extend a compatible partial family");
  te->add_option("input", input, "Partial family document")->required();
  auto* tu = tz->add_subcommand("verify-unipotent", "Psi o Psi = id on basis tensors");
  tu->add_option("--n", tn, "Dimension N")->required()->check(CLI::PositiveNumber);
  tu->add_option("--max-exp", max_exp, "Exponent bound (default 3)");
  auto* tc = tz->add_subcommand("verify-cocycle", "Cocycle identity on monomial classes");
  tc->add_option("--n", tn, "Dimension N")->required()->check(CLI::Range(2, 64));
  tc->add_option("--max-exp", max_exp, "Exponent bound (default 2)");
  auto* tf = tz->add_subcommand("verify-freeness", "Freeness witnesses for the kernel lattice");
  tf->add_option("--n", tn, "Dimension N")->required()->check(CLI::PositiveNumber);
  tf->add_option("--seed", seed, "Seed for the sampled probes");
  tf->add_option("--jobs", jobs, "Parallel probes")->check(CLI::PositiveNumber);
  for (auto* s : {tm, te, tu, tc, tf}) s->add_flag("--no-antipode", no_antipode, "Glue without the antipode");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }

  Runner r(out, err);
  r.opt.format = format == "dot" ? Format::dot : format == "text" ? Format::text : Format::json;
  r.opt.max_elems = max_elems;
  toeplitz::GluingConfig cfg{!no_antipode};
  try {
    if (partition->parsed()) return r.partition(input, dot, hasse);
    if (xi->parsed()) return r.xi(input);
    if (lgen->parsed()) return r.lattice_gen(input);
    if (birk->parsed()) return r.birkhoff_cmd(input);
    if (fc->parsed()) return r.free_check(n, input, allow_large);
    if (sc->parsed()) return r.sheaf_check(input);
    if (pf->parsed()) return r.pushforward_cmd(alpha, input, target);
    if (tm->parsed()) return r.t_member(input, cfg);
    if (te->parsed()) return r.t_extend(input, cfg);
    if (tu->parsed()) return r.t_report("unipotent", toeplitz::verify_unipotent(tn, max_exp < 0 ? 3 : max_exp, cfg));
    if (tc->parsed()) return r.t_report("cocycle", toeplitz::verify_cocycle(tn, max_exp < 0 ? 2 : max_exp, cfg));
    if (tf->parsed()) return r.t_freeness(tn, seed, jobs, cfg);
  } catch (const ResourceError& e) {
    err << "resource bound " << e.bound_name << " exceeded: " << e.what() << "\n";
    return kResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  err << "error: no subcommand\n";
  return kInput;
}

}  // namespace posetsheaf::cli
