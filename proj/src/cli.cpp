#include "pgblock/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "pgblock/json_io.hpp"

namespace pgblock::cli {

namespace {

struct Options {
  std::string input;
  int q = 0;
  int n = -1;
  int k = -1;
  int t = 1;
  int cap = -1;
  int d = -1;
  int s = -1;
  std::string b;
  std::string kind = "construction1";
  std::string params;
  std::string mode = "branch_and_bound";
  unsigned workers = 1;
  double budget_seconds = 0;
  bool no_timing = false;
  bool random = false;
  std::uint64_t seed = 1;
  int samples = 5;
};

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); }

Json read_json(const std::string& path, std::istream& in) {
  try {
    if (path.empty() || path == "-") return Json::parse(in);
    std::ifstream f(path);
    if (!f) invalid("cannot open " + path);
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
}

std::shared_ptr<const GeometryContext> context(const Options& o) {
  if (o.q < 2) invalid("--q must be a prime power >= 2");
  if (o.n < 1) invalid("--n must be >= 1");
  if (o.k < 0 || o.k >= o.n) invalid("--k must satisfy 0 <= k < n");
  return GeometryContext::make(o.q, o.n);
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Json element_json(const GeometryContext& ctx, const ElementRef& r) {
  return Json{{"kind", r.kind == ElementKind::Point ? "point" : "hyperplane"},
              {"coords", row_to_json(ctx.point_coords(r.index))}};
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const BlockingSet b = blocking_set_from_json(read_json(o.input, in), &err);
  const BlockingCheck c = is_blocking(b);
  Json j{{"blocking", c.blocking}};
  if (c.witness) {
    j["witness"] = subspace_to_json(*c.witness);
    err << "unblocked " << b.k() << "-space: " << j["witness"].dump() << "\n";
  }
  emit(out, j);
  return c.blocking ? kOk : kPropertyFails;
}

int cmd_minimal(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const BlockingSet b = blocking_set_from_json(read_json(o.input, in), &err);
  const BlockingCheck c = is_blocking(b);
  if (!c.blocking) {
    err << "not a blocking set\n";
    emit(out, Json{{"minimal", false}, {"blocking", false}, {"witness", subspace_to_json(*c.witness)}});
    return kPropertyFails;
  }
  const MinimalityCheck m = is_minimal(b);
  Json j{{"minimal", m.minimal}};
  if (m.removable) j["removable"] = element_json(b.ctx(), *m.removable);
  emit(out, j);
  return m.minimal ? kOk : kPropertyFails;
}

int cmd_dual(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const BlockingSet b = blocking_set_from_json(read_json(o.input, in), &err);
  emit(out, blocking_set_to_json(dual_set(b)));
  return kOk;
}

int cmd_construct(Options o, std::istream& in, std::ostream& out) {
  if (o.kind == "remark") {
    if (o.n < 0) invalid("--n is required");
    o.k = o.n / 2;
  }
  if (o.k < 0) invalid("--k is required");
  if (o.kind == "construction1" && o.n < 0) o.n = 2 * o.k + 1;
  if (o.n < 0) invalid("--n is required");
  const auto ctx = context(o);

  if (o.kind == "construction1") {
    Construction1Params p;
    if (!o.params.empty()) {
      p = construction1_params_from_json(*ctx, read_json(o.params, in));
    } else if (o.random) {
      if (ctx->n() != 2 * o.k + 1) throw Error(ErrorCode::WrongAmbient, "needs n = 2k + 1");
      std::mt19937_64 rng(o.seed);
      p = random_construction1_params(*ctx, o.k, rng);
    } else {
      if (ctx->n() != 2 * o.k + 1) throw Error(ErrorCode::WrongAmbient, "needs n = 2k + 1");
      p = canonical_construction1_params(*ctx, o.k, o.t);
    }
    emit(out, blocking_set_to_json(construction1(ctx, p)));
  } else if (o.kind == "bose-burton-points") {
    const Subspace anchor = coordinate_subspace(*ctx, o.n - o.k + 1);
    emit(out, blocking_set_to_json(bose_burton(ctx, o.k, BoseBurtonVariant::Points, anchor)));
  } else if (o.kind == "bose-burton-hyperplanes") {
    const Subspace anchor = coordinate_subspace(*ctx, o.n - o.k - 1);
    emit(out, blocking_set_to_json(bose_burton(ctx, o.k, BoseBurtonVariant::Hyperplanes, anchor)));
  } else if (o.kind == "remark") {
    emit(out, blocking_set_to_json(remark_q2_construction(ctx)));
  } else {
    invalid("unknown --kind " + o.kind);
  }
  return kOk;
}

const char* case_name(MainTheoremBound::Case c) {
  switch (c) {
    case MainTheoremBound::Case::HyperplanePencil: return "hyperplane_pencil";
    case MainTheoremBound::Case::SubspacePoints: return "subspace_points";
    case MainTheoremBound::Case::Middle: return "middle";
    case MainTheoremBound::Case::Open: return "open";
  }
  return "open";
}

BigInt ceil_of(const BigRational& r) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

int cmd_bounds(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  if (o.n < 1) invalid("--n is required");
  if (o.k < 0 || o.k >= o.n) invalid("--k must satisfy 0 <= k < n");
  if (o.q < 2) invalid("--q is required");
  const MainTheoremBound mt = main_theorem_bound(o.n, o.k, o.q);
  const std::map<std::string, BigInt> nkq{{"n", o.n}, {"k", o.k}, {"q", o.q}};
  const std::string main_value = mt.value ? mt.value->get_str() : "open";

  Json reports = Json::array();
  reports.push_back(bound_report_to_json({"main_theorem", nkq, main_value, std::nullopt}));

  const BigInt k_spaces = gaussian(o.n + 1, o.k + 1, o.q);
  const CertifiedUpperBound hn = heger_nagy_upper_bound(o.n + 1, o.k + 1, o.q);
  reports.push_back(bound_report_to_json(
      {"heger_nagy",
       {{"n_", o.n + 1}, {"k_", o.k + 1}, {"q", o.q}},
       ceil_of(hn.value).get_str(),
       BoundReport::Comparison{k_spaces, BigRational(k_spaces) < hn.value}}));

  bool satisfied = true;
  if (o.d >= 0 || o.s >= 0) {
    if (o.d < 0 || o.s < 0) invalid("--d and --s go together");
    std::optional<BlockingSet> given;
    if (!o.input.empty()) given = blocking_set_from_json(read_json(o.input, in), &err);
    BigInt b_size = theta(o.d, o.q);
    if (!o.b.empty()) {
      if (b_size.set_str(o.b, 10) != 0) invalid("--b must be a decimal integer");
    } else if (given) {
      b_size = static_cast<unsigned long>(given->points().size());
    }
    const std::map<std::string, BigInt> params{
        {"n", o.n}, {"q", o.q}, {"d", o.d}, {"s", o.s}, {"b", b_size}};
    const BigInt lb = metsch_lower_bound(o.n, o.q, o.d, o.s, b_size);
    std::optional<BoundReport::Comparison> cmp;
    if (given) {
      if (given->ctx().n() != o.n || given->ctx().q() != o.q) {
        invalid("input set lives in a different space");
      }
      BlockingSet points_only(given->shared_ctx(), std::min(o.s, o.n - 1), given->points(), {});
      const BigInt actual = static_cast<unsigned long>(unblocked_count(points_only, o.s));
      cmp = BoundReport::Comparison{actual, actual >= lb};
      satisfied = satisfied && cmp->satisfied;
    }
    reports.push_back(bound_report_to_json({"metsch", params, lb.get_str(), cmp}));
    reports.push_back(bound_report_to_json(
        {"metsch_dual", params, metsch_dual_lower_bound(o.n, o.q, o.d, o.s, b_size).get_str(),
         std::nullopt}));
  }

  emit(out, Json{{"n", o.n},
                 {"k", o.k},
                 {"q", o.q},
                 {"main_theorem_bound", main_value},
                 {"case", case_name(mt.which)},
                 {"k_spaces", k_spaces.get_str()},
                 {"reports", reports}});
  return satisfied ? kOk : kPropertyFails;
}

SearchOptions search_options(const Options& o) {
  SearchOptions s;
  s.size_cap = o.cap;
  const auto mode = parse_search_mode(o.mode);
  if (!mode) invalid("unknown --mode " + o.mode);
  s.mode = *mode;
  if (o.workers < 1) invalid("--workers must be >= 1");
  s.workers = o.workers;
  if (o.budget_seconds > 0) {
    s.budget_seconds = o.budget_seconds;
  } else if (const char* env = std::getenv(kBudgetEnv); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) invalid(std::string(kBudgetEnv) + " must be a positive number");
    s.budget_seconds = v;
  }
  return s;
}

int cmd_search(const Options& o, std::ostream& out) {
  const auto ctx = context(o);
  if (o.cap < 0) invalid("--cap is required");
  try {
    emit(out, search_report_to_json(min_blocking_search(ctx, o.k, search_options(o)), !o.no_timing));
  } catch (const SearchBudgetExceeded& e) {
    Json j = search_report_to_json(e.partial(), !o.no_timing);
    j["budget_exceeded"] = true;
    j["minimum_size_found"] = nullptr;
    emit(out, j);
    throw;
  }
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const auto ctx = context(o);
  try {
    const ClassificationVerdict v = classify_minimum(ctx, o.k, search_options(o));
    emit(out, verdict_to_json(v, !o.no_timing));
    return v.all_minima_match_theorem || !v.expected_bound ? kOk : kPropertyFails;
  } catch (const SearchBudgetExceeded& e) {
    Json j = search_report_to_json(e.partial(), !o.no_timing);
    j["budget_exceeded"] = true;
    j["minimum_size_found"] = nullptr;
    emit(out, Json{{"report", j}});
    throw;
  }
}

/// Tally for one lemma across samples, keeping the first counterexample.
struct LemmaTally {
  explicit LemmaTally(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  Json counterexample;

  void record(bool ok, const std::function<Json()>& payload) {
    ++checked;
    if (ok) return;
    if (failures++ == 0) counterexample = payload();
  }

  Json to_json() const {
    Json j{{"name", name}, {"checked", checked}, {"failures", failures},
           {"skipped", skipped}, {"pass", failures == 0}};
    if (failures) j["counterexample"] = counterexample;
    return j;
  }
};

constexpr std::size_t kPerSampleLimit = 4000;

int cmd_lemma_check(Options o, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<BlockingSet> samples;
  const bool generated = o.input.empty();
  if (generated) {
    if (o.k < 1) invalid("--k >= 1 is required");
    if (o.n < 0) o.n = 2 * o.k + 1;
    const auto ctx = context(o);
    if (ctx->n() != 2 * o.k + 1) throw Error(ErrorCode::WrongAmbient, "needs n = 2k + 1");
    if (o.samples < 1) invalid("--samples must be >= 1");
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < o.samples; ++i) {
      samples.push_back(construction1(ctx, random_construction1_params(*ctx, o.k, rng)));
    }
  } else {
    samples.push_back(blocking_set_from_json(read_json(o.input, in), &err));
  }

  LemmaTally construction{"construction"};
  LemmaTally skew{"skew_space_bound"};
  LemmaTally tangent{"tangent_closure"};
  LemmaTally bp{"hyperplanes_through_point"};

  for (const auto& b : samples) {
    const GeometryContext& ctx = b.ctx();
    const int k = b.k();
    const int q = ctx.q();
    const Json doc = blocking_set_to_json(b);

    if (generated) {
      BigInt expected = q + 1;
      for (int i = 0; i < k; ++i) expected *= q;
      const bool blocking = is_blocking(b).blocking;
      const bool ok = blocking && BigInt(static_cast<unsigned long>(b.size())) == expected &&
                      is_minimal(b).minimal && !point_on_hyperplane(b) &&
                      recognize_construction1(dual_set(b)).has_value();
      construction.record(ok, [&] { return Json{{"set", doc}}; });
    } else {
      const bool blocking = is_blocking(b).blocking;
      construction.record(blocking, [&] { return Json{{"set", doc}, {"blocking", false}}; });
      if (!blocking) continue;
    }

    if (ctx.n() == 2 * k + 1 && k >= 1) {
      SubspaceEnumerator it(ctx.field(), ctx.n(), k - 1);
      std::size_t done = 0;
      while (auto rho = it.next()) {
        if (done >= kPerSampleLimit) break;
        const auto pts = point_indices(ctx, *rho);
        std::vector<std::size_t> common;
        std::set_intersection(pts.begin(), pts.end(), b.points().begin(), b.points().end(),
                              std::back_inserter(common));
        if (!common.empty()) continue;
        ++done;
        const SkewSpaceProfile p = skew_space_profile(b, *rho);
        skew.record(p.consistent(), [&] {
          return Json{{"set", doc}, {"rho", subspace_to_json(*rho)},
                      {"hyperplanes_through_rho", p.hyperplanes_through_rho}};
        });
      }
    } else {
      ++skew.skipped;
    }

    if (!b.points().empty()) {
      const TangentClosure tc = tangent_closure(ctx, b.points());
      tangent.record(tc.law_holds(), [&] {
        return Json{{"set", doc}, {"dim", tc.dim}, {"expected_dim", tc.expected_dim},
                    {"is_subspace", tc.is_subspace}};
      });
    } else {
      ++tangent.skipped;
    }

    const Subspace b0_span = span_of_points(ctx, b.points());
    if (ctx.n() == 2 * k + 1 && k >= 1 && b0_span.dim() <= k + 1) {
      std::vector<Subspace> sigmas;
      if (b0_span.dim() == k + 1) {
        sigmas.push_back(b0_span);
      } else {
        sigmas = subspaces_through(ctx, b0_span, k + 1);
      }
      std::size_t done = 0;
      for (const auto& sigma : sigmas) {
        for (std::size_t pi : point_indices(ctx, sigma)) {
          if (done >= kPerSampleLimit) break;
          if (std::binary_search(b.points().begin(), b.points().end(), pi)) continue;
          ++done;
          const Point p = point_at(ctx, pi);
          const HyperplanesThroughPoint r = bp_hyperplanes(b, sigma, p);
          bp.record(r.bound_holds, [&] {
            return Json{{"set", doc}, {"sigma", subspace_to_json(sigma)},
                        {"point", row_to_json(p.coords)}, {"members", r.members.size()},
                        {"claimed_bound", r.claimed_bound.get_str()}};
          });
        }
      }
    } else {
      ++bp.skipped;
    }
  }

  const std::vector<const LemmaTally*> all{&construction, &skew, &tangent, &bp};
  Json lemmas = Json::array();
  bool pass = true;
  for (const auto* t : all) {
    lemmas.push_back(t->to_json());
    pass = pass && t->failures == 0;
  }
  Json j{{"samples", samples.size()}, {"lemmas", lemmas}, {"pass", pass}};
  if (generated) j["seed"] = o.seed;
  emit(out, j);
  return pass ? kOk : kPropertyFails;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Blocking sets of points and hyperplanes in finite projective spaces", "pgblock"};
  app.require_subcommand(1);
  Options o;

  auto add_space = [&](CLI::App* sub, bool need_k) {
    sub->add_option("--q", o.q, "field order")->required();
    sub->add_option("--n", o.n, "projective dimension")->required();
    auto* k = sub->add_option("--k", o.k, "dimension of the blocked subspaces");
    if (need_k) k->required();
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input,input", o.input, "blocking-set JSON file (default: stdin)");
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "exhaustive | branch_and_bound");
    sub->add_option("--workers", o.workers, "worker threads");
    sub->add_option("--budget-seconds", o.budget_seconds,
                    std::string("time budget (default: $") + kBudgetEnv + ")");
    sub->add_flag("--no-timing", o.no_timing, "omit wall_time so output is reproducible");
  };

  auto* verify = app.add_subcommand("verify", "does the set block every k-space?");
  add_input(verify);
  auto* minimal = app.add_subcommand("minimal", "is the blocking set minimal?");
  add_input(minimal);
  auto* dualc = app.add_subcommand("dual", "dual blocking set");
  add_input(dualc);

  auto* construct = app.add_subcommand("construct", "build a known blocking set");
  construct->add_option("--kind", o.kind,
                        "construction1 | bose-burton-points | bose-burton-hyperplanes | remark");
  construct->add_option("--q", o.q, "field order")->required();
  construct->add_option("--n", o.n, "projective dimension (default 2k+1 for construction1)");
  construct->add_option("--k", o.k, "dimension of the blocked subspaces");
  construct->add_option("--t", o.t, "number of point members of the pencil");
  construct->add_option("--params", o.params, "explicit parameter JSON file");
  construct->add_flag("--random", o.random, "random parameters from --seed");
  construct->add_option("--seed", o.seed, "random seed");

  auto* bounds = app.add_subcommand("bounds", "closed-form bounds");
  bounds->add_option("--n", o.n)->required();
  bounds->add_option("--k", o.k)->required();
  bounds->add_option("--q", o.q)->required();
  bounds->add_option("--d", o.d, "point set bounded by theta_d");
  bounds->add_option("--s", o.s, "dimension of the counted subspaces");
  bounds->add_option("--b", o.b, "set size (default theta_d or |B0| of --input)");
  bounds->add_option("--input", o.input, "point set to compare against");

  auto* search = app.add_subcommand("search", "all smallest blocking sets up to a size cap");
  add_space(search, true);
  search->add_option("--cap", o.cap, "largest size considered")->required();
  add_search(search);

  auto* classify = app.add_subcommand("classify", "compare the smallest blocking sets with the theorem");
  add_space(classify, true);
  add_search(classify);

  auto* lemma = app.add_subcommand("lemma-check", "run the structural lemmas on sample sets");
  lemma->add_option("--q", o.q, "field order");
  lemma->add_option("--n", o.n, "projective dimension (default 2k+1)");
  lemma->add_option("--k", o.k, "dimension of the blocked subspaces");
  lemma->add_option("--samples", o.samples, "random instances to check");
  lemma->add_option("--seed", o.seed, "random seed");
  add_input(lemma);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInvalidInput;
  }

  try {
    if (verify->parsed()) return cmd_verify(o, in, out, err);
    if (minimal->parsed()) return cmd_minimal(o, in, out, err);
    if (dualc->parsed()) return cmd_dual(o, in, out, err);
    if (construct->parsed()) return cmd_construct(o, in, out);
    if (bounds->parsed()) return cmd_bounds(o, in, out, err);
    if (search->parsed()) return cmd_search(o, out);
    if (classify->parsed()) return cmd_classify(o, out);
    if (lemma->parsed()) {
      if (o.input.empty() && o.q < 2) invalid("--q is required without --input");
      return cmd_lemma_check(o, in, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::BudgetExceeded ? kBudgetExceeded : kInvalidInput;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace pgblock::cli
