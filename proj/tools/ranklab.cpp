// Batch front end: parse form descriptors, dispatch operations, emit reports.
//
// Exit codes: 0 success (verdicts live in the report), 2 parse or input
// error, 3 cap exceeded, 4 violation of a proved statement (scaling lemma,
// certificate soundness).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ranklab/bias.hpp"
#include "ranklab/corpus.hpp"
#include "ranklab/descent.hpp"
#include "ranklab/geometry.hpp"
#include "ranklab/rank.hpp"
#include "ranklab/serialize.hpp"
#include "ranklab/universality.hpp"

namespace {

using namespace ranklab;

struct CommonOpts {
  std::string cap;           // point enumeration cap (bias, locus, box)
  std::int64_t budget = 0;   // search and enumeration budget
  int workers = 0;           // worker threads, never affects results
  std::string constants;     // JSON file overriding the constants table
  std::string ring;          // ring descriptor for files that lack one
  std::string out;           // output path (CSV report or JSON witness)
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--cap", o.cap, "point enumeration cap (bias, locus, box counts)");
  cmd->add_option("--budget", o.budget, "search and enumeration budget");
  cmd->add_option("--workers", o.workers, "worker threads for point enumeration");
  cmd->add_option("--constants", o.constants, "JSON file overriding bound constants");
  cmd->add_option("--ring", o.ring, "ring descriptor, e.g. Z, Q, or {\"p\":3}");
  cmd->add_option("--out", o.out, "output file (CSV report or JSON witness)");
}

Caps caps_from(const CommonOpts& o) {
  Caps caps;
  if (!o.cap.empty()) {
    Int c(o.cap);
    if (c < 1) throw std::invalid_argument("cap must be positive");
    caps.bias_points = c;
    caps.locus_points = c;
    caps.box_points = c;
  }
  if (o.budget != 0) {
    if (o.budget < 1) throw std::invalid_argument("budget must be positive");
    caps.search_budget = o.budget;
    caps.enumeration = o.budget;
  }
  if (o.workers != 0) {
    if (o.workers < 1) throw std::invalid_argument("workers must be positive");
    caps.workers = o.workers;
  }
  return caps;
}

ConstantValue constant_from_json(const Json& j) {
  ConstantValue v;
  v.symbolic = false;
  v.value = int_from_json(j);
  v.expr = v.value.str();
  return v;
}

// Overrides are keyed by table field name; pair entries accept
// {"coeff": ..., "exp": ...} with either part optional.
ConstantsTable table_for(int d, const CommonOpts& o) {
  ConstantsTable table = ConstantsTable::defaults(d);
  if (o.constants.empty()) return table;
  const Json j = load_json(o.constants);
  if (!j.is_object()) throw std::invalid_argument("constants override must be an object");
  const std::map<std::string, BoundPair*> pairs = {
      {"schmidt_rationals", &table.schmidt_rationals},
      {"schmidt_finite_asymptotic", &table.schmidt_finite_asymptotic},
      {"schmidt_finite_large", &table.schmidt_finite_large},
      {"schmidt_global", &table.schmidt_global},
      {"partition_rationals", &table.partition_rationals},
      {"partition_finite_asymptotic", &table.partition_finite_asymptotic},
      {"partition_finite_large", &table.partition_finite_large},
      {"partition_global", &table.partition_global},
      {"universality_rationals", &table.universality_rationals},
      {"universality_finite_asymptotic", &table.universality_finite_asymptotic},
      {"universality_finite_large", &table.universality_finite_large},
      {"universality_global", &table.universality_global},
  };
  const std::map<std::string, ConstantValue*> values = {
      {"bias_alpha", &table.bias_alpha},
      {"bias_beta", &table.bias_beta},
      {"bias_regime2", &table.bias_regime2},
  };
  for (const auto& [key, value] : j.items()) {
    if (auto it = pairs.find(key); it != pairs.end()) {
      if (!value.is_object()) {
        throw std::invalid_argument("override for " + key + " must be {coeff, exp}");
      }
      if (value.contains("coeff")) it->second->coeff = constant_from_json(value.at("coeff"));
      if (value.contains("exp")) it->second->exp = constant_from_json(value.at("exp"));
    } else if (auto vt = values.find(key); vt != values.end()) {
      *vt->second = constant_from_json(value);
    } else {
      throw std::invalid_argument("unknown constants key: " + key);
    }
  }
  return table;
}

bool same_ring_json(const Json& a, const Json& b) {
  if (ring_kind(a) != ring_kind(b)) return false;
  if (ring_kind(a) != RingKind::kFinite) return true;
  return field_from_json(a).same(field_from_json(b));
}

// Loads a form or collection file, honoring --ring for files without a ring
// field and rejecting a flag that contradicts the file.
Json load_input(const std::string& path, const std::string& ring_flag) {
  Json j = load_json(path);
  if (!j.is_object()) throw std::invalid_argument(path + ": expected a JSON object");
  if (!ring_flag.empty()) {
    const Json r = (ring_flag.front() == '{' || ring_flag.front() == '[')
                       ? Json::parse(ring_flag)
                       : Json(ring_flag);
    if (!j.contains("ring")) {
      j["ring"] = r;
    } else if (!same_ring_json(j.at("ring"), r)) {
      throw std::invalid_argument("--ring conflicts with the ring in " + path);
    }
  }
  if (!j.contains("ring")) {
    throw std::invalid_argument(path + ": no ring field; pass --ring");
  }
  return j;
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

void emit_reports(const std::vector<AuditReport>& rows, const std::string& out) {
  if (out.empty()) {
    write_reports_csv(std::cout, rows);
    return;
  }
  std::ofstream os(out);
  if (!os) throw std::invalid_argument("cannot open output file: " + out);
  write_reports_csv(os, rows);
}

std::string double_str(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

FiniteField field_of(const Json& j) { return field_from_json(j.at("ring")); }

// A single multilinear form file acts as a one-member collection.
FormCollection<FiniteField> collection_of(const FiniteField& f, const Json& j,
                                          const Caps& caps, const std::string& path) {
  if (j.at("kind") == "collection") return collection_from_json(f, j, caps);
  if (j.at("kind") == "multilinear") {
    FormCollection<FiniteField> c;
    c.members.push_back(form_from_json(f, j, caps));
    return c;
  }
  throw std::invalid_argument(path + ": expected a multilinear form or collection");
}

void require_kind(const Json& j, const std::string& want, const std::string& path) {
  if (!j.contains("kind") || j.at("kind") != want) {
    throw std::invalid_argument(path + ": expected kind \"" + want + "\"");
  }
}

// ---- rank ----------------------------------------------------------------

template <class R>
void print_rank(const RankOutcome<R>& outcome, const std::string& out) {
  const auto& b = outcome.bounds;
  std::cout << "lower " << b.lower << ' ' << lower_kind_str(b.lower_kind) << '\n'
            << "upper " << b.upper << ' ' << upper_kind_str(b.upper_kind) << '\n'
            << "exhausted " << (outcome.exhausted ? "true" : "false") << '\n'
            << "nodes " << outcome.nodes << '\n';
  if (!out.empty()) save_json(out, certificate_to_json(outcome.certificate));
}

int run_rank(const std::string& form_path, const CommonOpts& o) {
  const Json j = load_input(form_path, o.ring);
  const Caps caps = caps_from(o);
  switch (ring_kind(j.at("ring"))) {
    case RingKind::kFinite: {
      const auto f = field_of(j);
      print_rank(prk_upper_search(form_from_json(f, j), caps), o.out);
      return 0;
    }
    case RingKind::kInteger: {
      IntegerRing z;
      const auto p = rationalize(form_from_json(z, j));
      if (p.arity() != 2) {
        throw std::invalid_argument(
            "exact rank search needs a finite field beyond arity 2; "
            "use the descent command for integer forms");
      }
      print_rank(prk_exact_d2(p), o.out);
      return 0;
    }
    case RingKind::kRational: {
      RationalField qf;
      const auto p = form_from_json(qf, j);
      if (p.arity() != 2) {
        throw std::invalid_argument("exact rank search needs a finite field beyond arity 2");
      }
      print_rank(prk_exact_d2(p), o.out);
      return 0;
    }
  }
  throw std::logic_error("unhandled ring kind");
}

// ---- bias ----------------------------------------------------------------

int run_bias(const std::string& form_path, const CommonOpts& o) {
  const Json j = load_input(form_path, o.ring);
  if (ring_kind(j.at("ring")) != RingKind::kFinite) {
    throw std::invalid_argument("bias needs a finite field form");
  }
  const auto f = field_of(j);
  const auto p = form_from_json(f, j);
  const auto b = bias_exact(p, caps_from(o));
  std::cout << "bias " << rat_str(b.value) << '\n'
            << "q " << b.q << '\n'
            << "zero_prefixes " << b.zero_prefixes.str() << '\n'
            << "prefix_space " << b.prefix_space.str() << '\n'
            << "analytic_rank " << double_str(b.analytic_rank) << '\n';
  if (!o.out.empty()) {
    AuditReport row;
    row.instance_id = stem_of(form_path);
    row.inequality = "bias(P) = zero-slice fraction";
    row.lhs = b.value;
    row.rhs = b.value;
    row.constants = "q=" + std::to_string(b.q);
    row.verdict = Verdict::kHolds;
    row.witness = "zero_prefixes=" + b.zero_prefixes.str() + "/" + b.prefix_space.str();
    emit_reports({row}, o.out);
  }
  return 0;
}

// ---- geometry ------------------------------------------------------------

int run_geometry(const std::string& form_path, const std::string& coll_path,
                 const CommonOpts& o) {
  const Caps caps = caps_from(o);
  std::vector<AuditReport> rows;
  const std::string path = form_path.empty() ? coll_path : form_path;
  const Json j = load_input(path, o.ring);
  if (ring_kind(j.at("ring")) != RingKind::kFinite) {
    throw std::invalid_argument("geometry needs finite field input");
  }
  const auto f = field_of(j);
  const std::string id = stem_of(path);
  const std::string kind = j.at("kind");
  if (kind == "homogeneous") {
    rows = geometry_inequality_audit({homogeneous_from_json(f, j)}, caps, id);
  } else if (kind == "multilinear") {
    const auto p = form_from_json(f, j);
    const auto lc = singular_locus_count(p, caps);
    const auto outcome = prk_upper_search(p, caps);
    AuditReport row;
    row.instance_id = id;
    row.inequality = "codim(Z_P) <= certified prk";
    row.lhs = lc.codim_estimate;
    row.rhs = outcome.bounds.upper;
    row.constants = "q=" + std::to_string(lc.q) + " ambient=" + std::to_string(lc.ambient_dim);
    row.verdict = lc.codim_estimate <= outcome.bounds.upper ? Verdict::kHolds
                                                            : Verdict::kViolated;
    row.witness = "points=" + lc.total_points.str() +
                  (lc.low_confidence ? " low-confidence" : "");
    rows.push_back(row);
  } else if (kind == "collection") {
    const auto c = collection_from_json(f, j, caps);
    const auto lc = singular_locus_count(c, caps);
    const auto coll = collective_prk(
        c, [&](const MultilinearForm<FiniteField>& p) { return prk_upper_search(p, caps); },
        caps);
    AuditReport row;
    row.instance_id = id;
    row.inequality = "codim(Z_P) <= certified collective prk";
    row.lhs = lc.codim_estimate;
    row.rhs = coll.bounds.upper;
    row.constants = "q=" + std::to_string(lc.q) + " ambient=" + std::to_string(lc.ambient_dim);
    row.verdict = lc.codim_estimate <= coll.bounds.upper ? Verdict::kHolds
                                                         : Verdict::kViolated;
    row.witness = "points=" + lc.total_points.str() +
                  (lc.low_confidence ? " low-confidence" : "");
    rows.push_back(row);
  } else {
    throw std::invalid_argument(path + ": unsupported kind for geometry");
  }
  emit_reports(rows, o.out);
  return 0;
}

// ---- descent ---------------------------------------------------------------

int run_descent(const std::string& form_path, const std::vector<std::int64_t>& primes,
                const CommonOpts& o) {
  const Json j = load_input(form_path, o.ring);
  if (ring_kind(j.at("ring")) != RingKind::kInteger) {
    throw std::invalid_argument("descent needs an integer form");
  }
  IntegerRing z;
  const auto p = form_from_json(z, j);
  const auto report = mod_p_descent_report(p, primes, caps_from(o), stem_of(form_path));
  for (const auto& row : report.rows) {
    std::string flags;
    if (row.dropped_terms) flags += flags.empty() ? "dropped-terms" : ",dropped-terms";
    if (row.below_threshold) flags += flags.empty() ? "below-threshold" : ",below-threshold";
    if (!row.lift_sound) flags += flags.empty() ? "lift-unverified" : ",lift-unverified";
    if (flags.empty()) flags = "-";
    std::cout << "p=" << row.p << " lower=" << row.lower << " upper=" << row.upper
              << " ext=" << row.extension_degree << " bias=" << rat_str(row.bias)
              << " n_p=" << row.n_p.str() << " floor=" << row.kz17_floor.str()
              << " tail=" << row.tail_quantity.str() << "/" << row.tail_denominator.str()
              << " flags=" << flags << '\n';
  }
  std::cout << "ceiling " << report.ceiling.str() << '\n'
            << "rational " << report.rational.str() << '\n'
            << "all_below_threshold " << (report.all_below_threshold ? "true" : "false")
            << '\n'
            << "summary " << verdict_str(report.summary.verdict) << '\n';
  if (!o.out.empty()) emit_reports({report.summary}, o.out);
  return 0;
}

// ---- embed -----------------------------------------------------------------

int run_embed(const std::string& form_path, const std::string& coll_path,
              const std::string& strategy, std::uint64_t seed, std::int64_t trials,
              const CommonOpts& o) {
  const Json js = load_input(form_path, o.ring);
  const Json jt = load_input(coll_path, o.ring);
  if (ring_kind(js.at("ring")) != RingKind::kFinite ||
      ring_kind(jt.at("ring")) != RingKind::kFinite) {
    throw std::invalid_argument("embed needs finite field input");
  }
  const auto f = field_of(js);
  if (!f.same(field_of(jt))) {
    throw std::invalid_argument("source and target rings differ");
  }
  const Caps caps = caps_from(o);
  require_kind(jt, "collection", coll_path);
  const auto src = collection_of(f, js, caps, form_path);
  const auto tgt = collection_from_json(f, jt, caps);
  const auto sys = build_system(src, tgt, caps);
  const auto strat =
      strategy == "randomized" ? EmbedStrategy::kRandomized : EmbedStrategy::kExhaustive;
  const auto res = solve_embedding(sys, strat, seed, trials, caps);
  std::cout << "status " << embed_status_str(res.status) << '\n'
            << "attempts " << res.attempts << '\n';
  if (res.status == EmbedStatus::kFound && !o.out.empty()) {
    save_json(o.out, embedding_to_json(res.embedding, f));
  }
  return 0;
}

// ---- audit suites ----------------------------------------------------------

Rng seeded_rng(std::uint64_t base, int i) {
  return Rng(base * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(i) + 1);
}

// Fuzzed box count systems: s <= 4, r <= 4, l <= 3, integer and mod-p targets.
std::vector<AuditReport> audit_scaling(int seeds, std::uint64_t base, const Caps& caps) {
  static constexpr std::int64_t kModuli[] = {0, 2, 3, 5, 7};
  std::vector<AuditReport> rows;
  IntegerRing z;
  for (int i = 0; i < seeds; ++i) {
    Rng rng = seeded_rng(base, i);
    const int d = 2 + static_cast<int>(uniform_below(rng, 2));
    std::vector<int> dims(d, 1);
    int remaining = 4 - d;
    for (int slot = 0; slot < d; ++slot) {
      const int extra = static_cast<int>(
          uniform_below(rng, static_cast<std::uint64_t>(std::min(remaining, 2)) + 1));
      dims[slot] += extra;
      remaining -= extra;
    }
    FormCollection<IntegerRing> c;
    const int members = 1 + static_cast<int>(uniform_below(rng, 2));
    for (int m = 0; m < members; ++m) c.members.push_back(random_form(z, dims, rng));
    const Int r = 1 + Int(uniform_below(rng, 4));
    const Int l = 1 + Int(uniform_below(rng, 3));
    char id[32];
    std::snprintf(id, sizeof(id), "scaling-%03d", i);
    rows.push_back(scaling_lemma_audit(c, r, l, kModuli[i % 5], caps, id));
  }
  return rows;
}

// Random rank searches whose certificates are re-expanded independently; a
// certificate that fails to match its form is a proved-statement violation.
std::vector<AuditReport> audit_certificates(int seeds, std::uint64_t base,
                                            const Caps& caps) {
  static constexpr std::int64_t kPrimes[] = {2, 3, 5};
  std::vector<AuditReport> rows;
  for (int i = 0; i < seeds; ++i) {
    Rng rng = seeded_rng(base, i);
    const auto f = FiniteField::prime(kPrimes[i % 3]);
    const int d = 2 + static_cast<int>(uniform_below(rng, 2));
    std::vector<int> dims(d);
    for (auto& s : dims) s = 1 + static_cast<int>(uniform_below(rng, 2));
    const auto p = random_form(f, dims, rng);
    const auto outcome = prk_upper_search(p, caps);
    char id[32];
    std::snprintf(id, sizeof(id), "certificate-%03d", i);
    if (!outcome.certificate.matches(p)) {
      throw AuditViolation(std::string(id) + ": certificate fails to expand to its form");
    }
    AuditReport row;
    row.instance_id = id;
    row.inequality = "certificate expands to P with rank() = certified upper bound";
    row.lhs = outcome.certificate.rank();
    row.rhs = outcome.bounds.upper;
    row.constants = "q=" + std::to_string(f.size());
    row.verdict = Verdict::kHolds;
    row.witness = "nodes=" + std::to_string(outcome.nodes) +
                  (outcome.exhausted ? " exhausted" : "");
    rows.push_back(row);
  }
  return rows;
}

int run_audit(const std::string& suite, int seeds, std::uint64_t base,
              const std::string& form_path, const std::string& coll_path, int r,
              int regime, int t, std::int64_t trials, const CommonOpts& o) {
  const Caps caps = caps_from(o);
  std::vector<AuditReport> rows;
  if (suite == "scaling") {
    rows = audit_scaling(seeds, base, caps);
  } else if (suite == "certificates") {
    rows = audit_certificates(seeds, base, caps);
  } else if (suite == "bias") {
    if (form_path.empty()) throw std::invalid_argument("audit bias needs --form");
    const Json j = load_input(form_path, o.ring);
    if (ring_kind(j.at("ring")) != RingKind::kFinite) {
      throw std::invalid_argument("audit bias needs a finite field form");
    }
    const auto f = field_of(j);
    const auto p = form_from_json(f, j);
    const auto bounds = prk_upper_search(p, caps).bounds;
    rows.push_back(bias_rank_audit(p, r, regime, table_for(p.arity(), o), bounds, caps,
                                   stem_of(form_path)));
  } else if (suite == "relabel") {
    if (form_path.empty() || coll_path.empty()) {
      throw std::invalid_argument("audit relabel needs --form and --collection");
    }
    const Json js = load_input(form_path, o.ring);
    const Json jt = load_input(coll_path, o.ring);
    const auto f = field_of(js);
    if (!f.same(field_of(jt))) throw std::invalid_argument("rings differ");
    const auto sys = build_system(collection_of(f, js, caps, form_path),
                                  collection_from_json(f, jt, caps), caps);
    rows.push_back(relabel_rank_check(sys, caps, stem_of(form_path)));
  } else if (suite == "universality") {
    if (coll_path.empty()) throw std::invalid_argument("audit universality needs --collection");
    const Json j = load_input(coll_path, o.ring);
    if (ring_kind(j.at("ring")) != RingKind::kFinite) {
      throw std::invalid_argument("audit universality needs a finite field collection");
    }
    const auto f = field_of(j);
    const auto c = collection_from_json(f, j, caps);
    rows.push_back(universality_audit(c, t, table_for(c.arity(), o), caps,
                                      stem_of(coll_path), trials));
  } else {
    throw std::invalid_argument("unknown audit suite: " + suite);
  }
  emit_reports(rows, o.out);
  return 0;
}

// ---- corpus ----------------------------------------------------------------

int run_corpus(const std::string& profile, const std::string& dir, std::uint64_t seed,
               const CommonOpts& o) {
  const auto manifest =
      corpus_generate(dir, corpus_profile_from_string(profile), seed, caps_from(o));
  std::cout << "instances " << manifest.at("instances").size() << '\n'
            << "manifest " << dir << "/manifest.json" << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rank, bias, and counting reports for multilinear forms"};
  app.set_version_flag("--version", ranklab::kVersion);
  app.require_subcommand(1);

  CommonOpts rank_o, bias_o, geom_o, descent_o, embed_o, audit_o, corpus_o;
  std::string rank_form, bias_form, geom_form, geom_coll, descent_form;
  std::string embed_form, embed_coll, embed_strategy = "exhaustive";
  std::uint64_t embed_seed = 1, audit_seed = 1, corpus_seed = 1;
  std::int64_t embed_trials = 256, audit_trials = 256;
  std::vector<std::int64_t> primes = {5, 7, 11, 13};
  std::string audit_suite, audit_form, audit_coll, corpus_profile, corpus_dir;
  int audit_seeds = 100, audit_r = 1, audit_regime = 2, audit_t = 0;

  auto* rank = app.add_subcommand("rank", "certified partition rank bounds");
  rank->add_option("--form", rank_form, "form JSON file")->required();
  add_common(rank, rank_o);

  auto* bias = app.add_subcommand("bias", "exact bias of a finite field form");
  bias->add_option("--form", bias_form, "form JSON file")->required();
  add_common(bias, bias_o);

  auto* geom = app.add_subcommand("geometry", "singular locus and rank inequality reports");
  geom->add_option("--form", geom_form, "multilinear or homogeneous form JSON file");
  geom->add_option("--collection", geom_coll, "collection JSON file");
  add_common(geom, geom_o);

  auto* descent = app.add_subcommand("descent", "mod-p rank descent for integer forms");
  descent->add_option("--form", descent_form, "integer form JSON file")->required();
  descent->add_option("--primes,--prime", primes, "primes to reduce at")->delimiter(',');
  add_common(descent, descent_o);

  auto* embed = app.add_subcommand("embed", "solve for an embedding realizing targets");
  embed->add_option("--form", embed_form, "source form JSON file")->required();
  embed->add_option("--collection", embed_coll, "target collection JSON file")->required();
  embed->add_option("--strategy", embed_strategy, "exhaustive or randomized")
      ->check(CLI::IsMember({"exhaustive", "randomized"}));
  embed->add_option("--seed", embed_seed, "seed for the randomized strategy");
  embed->add_option("--trials", embed_trials, "assignments tried by the randomized strategy");
  add_common(embed, embed_o);

  auto* audit = app.add_subcommand("audit", "run an audit suite, emitting report rows");
  audit->add_option("suite", audit_suite,
                    "scaling | certificates | bias | relabel | universality")
      ->required();
  audit->add_option("--seeds", audit_seeds, "instances for fuzzed suites");
  audit->add_option("--seed", audit_seed, "base seed for fuzzed suites");
  audit->add_option("--form", audit_form, "form JSON file (bias, relabel)");
  audit->add_option("--collection", audit_coll, "collection JSON file (relabel, universality)");
  audit->add_option("--r", audit_r, "rank threshold for the bias suite");
  audit->add_option("--regime", audit_regime, "bias suite regime, 1 or 2");
  audit->add_option("--t", audit_t, "target side length for the universality suite");
  audit->add_option("--trials", audit_trials, "solver trials for the universality suite");
  add_common(audit, audit_o);

  auto* corpus = app.add_subcommand("corpus", "generate a reproducible form corpus");
  corpus->add_option("profile", corpus_profile,
                     "diagonal-ladder | random-smallfield | integer-descent")
      ->required();
  corpus->add_option("--seed", corpus_seed, "corpus seed");
  add_common(corpus, corpus_o);
  corpus->get_option("--out")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (rank->parsed()) return run_rank(rank_form, rank_o);
    if (bias->parsed()) return run_bias(bias_form, bias_o);
    if (geom->parsed()) {
      if (geom_form.empty() == geom_coll.empty()) {
        throw std::invalid_argument("geometry needs exactly one of --form, --collection");
      }
      return run_geometry(geom_form, geom_coll, geom_o);
    }
    if (descent->parsed()) return run_descent(descent_form, primes, descent_o);
    if (embed->parsed()) {
      return run_embed(embed_form, embed_coll, embed_strategy, embed_seed, embed_trials,
                       embed_o);
    }
    if (audit->parsed()) {
      return run_audit(audit_suite, audit_seeds, audit_seed, audit_form, audit_coll,
                       audit_r, audit_regime, audit_t, audit_trials, audit_o);
    }
    if (corpus->parsed()) {
      return run_corpus(corpus_profile, corpus_o.out, corpus_seed, corpus_o);
    }
    throw std::logic_error("no subcommand dispatched");
  } catch (const ranklab::AuditViolation& e) {
    std::cerr << "audit violation: " << e.what() << '\n';
    return 4;
  } catch (const ranklab::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return 3;
  } catch (const ranklab::Json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
