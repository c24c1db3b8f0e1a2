#include "kmroots/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "kmroots/chambers.hpp"

namespace kmroots::campaign {

using io::Json;
using io::to_json;

std::string to_string(Suite s) {
  switch (s) {
    case Suite::Dictionary: return "dictionary";
    case Suite::Lemma12: return "lemma12";
    case Suite::Intersection: return "intersection";
    case Suite::Nilpotency: return "nilpotency";
    case Suite::ClosureFinite: return "closure-finite";
    case Suite::Filtration: return "filtration";
    case Suite::Levi: return "levi";
  }
  return "?";
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> v{Suite::Dictionary,    Suite::Lemma12,    Suite::Intersection,
                                    Suite::Nilpotency,    Suite::ClosureFinite,
                                    Suite::Filtration,    Suite::Levi};
  return v;
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : all_suites())
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::PreconditionViolated, "empty range");
  // Reject the lowest 2^64 mod n values so every residue is equally likely.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = eng_();
    if (x >= threshold) return x % n;
  }
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

GCM random_gcm(Rng& rng, std::size_t min_rank, std::size_t max_rank) {
  const auto n = static_cast<std::size_t>(
      rng.between(static_cast<std::int64_t>(min_rank), static_cast<std::int64_t>(max_rank)));
  IntMatrix a(n, std::vector<Coeff>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = 2;
    for (std::size_t j = i + 1; j < n; ++j) {
      a[i][j] = -rng.between(0, 4);
      a[j][i] = a[i][j] == 0 ? 0 : -rng.between(1, 4);
    }
  }
  return validate_gcm(a);
}

namespace {

enum Stream : std::uint64_t { kPoolStream = 1, kCaseStream = 2 };

struct Settings {
  Coeff max_height;
  Coeff cap;
  std::size_t radius;
  std::size_t min_rank;
  std::size_t max_rank;
  bool needs_ball;
};

Settings resolve(const CampaignConfig& c) {
  Settings s{6, 28, 8, 2, 4, false};
  switch (c.suite) {
    case Suite::Dictionary: s = {8, 40, 8, 2, 4, true}; break;
    case Suite::Lemma12: s = {8, 16, 8, 2, 3, true}; break;
    case Suite::Intersection:
    case Suite::Nilpotency: s = {6, 28, 10, 2, 3, true}; break;
    case Suite::ClosureFinite: s = {6, 60, 8, 2, 4, false}; break;
    case Suite::Filtration:
    case Suite::Levi: s = {6, 28, 8, 2, 4, false}; break;
  }
  if (c.max_height) s.max_height = *c.max_height;
  if (c.cap) s.cap = *c.cap;
  if (c.radius) s.radius = *c.radius;
  if (c.min_rank) s.min_rank = *c.min_rank;
  if (c.max_rank) s.max_rank = *c.max_rank;
  return s;
}

void validate(const CampaignConfig& c, const Settings& s) {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidInput, what); };
  if (c.cases && *c.cases < 1) bad("cases must be >= 1");
  if (!c.cases && c.suite != Suite::Lemma12) bad("cases=all is only supported by lemma12");
  if (s.cap < 1 || s.max_height < 1) bad("caps must be >= 1");
  if (s.cap < s.max_height) bad("cap must be at least the sampling height");
  if (s.min_rank < 1 || s.min_rank > s.max_rank) bad("invalid rank range");
  if (c.gcms.empty() && c.pool_size < 1) bad("pool size must be >= 1");
  if (c.threads < 1) bad("threads must be >= 1");
}

/// Everything shared by the cases drawn on one GCM. Read-only once built;
/// the lazy slice serializes its own memo.
struct Context {
  GCM gcm;
  Settings settings;
  RootSlice sample;  // eager, height max_height: where inputs are drawn from
  RootSlice deep;    // lazy, height 2 cap: every sum below the cap is decided
  std::optional<WeylBall> ball;
  std::vector<RealRoot> real;
  std::vector<RealRoot> positive;

  Context(const GCM& g, const Settings& s)
      : gcm(g),
        settings(s),
        sample(g, s.max_height),
        deep(g, 2 * s.cap, SliceMode::Lazy) {
    if (s.needs_ball) ball.emplace(g, s.radius);
    real = sample.real_roots();
    for (const auto& r : real)
      if (is_positive(r.root)) positive.push_back(r);
  }
};

void mark_fail(CaseRecord& rec, const std::string& why) {
  rec.outcome = Outcome::Fail;
  rec.data["notes"].push_back(why);
}

void mark_inconclusive(CaseRecord& rec, const std::string& why) {
  if (rec.outcome == Outcome::Pass) rec.outcome = Outcome::Inconclusive;
  rec.data["notes"].push_back(why);
}

template <class T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  return v[rng.below(v.size())];
}

Json word_json(const WeylElt& w) { return w.word(); }

WeylElt random_elt(const GCM& gcm, Rng& rng, std::size_t max_len) {
  const auto len = rng.below(max_len + 1);
  std::vector<std::size_t> word;
  for (std::uint64_t k = 0; k < len; ++k) word.push_back(rng.below(gcm.rank()));
  return WeylElt::from_word(gcm, word);
}

/// x^{-1} phi computed by applying the simple reflections of x's word one at
/// a time, without the stored matrices.
bool in_halfspace_by_word(const GCM& gcm, const Chamber& x, const RootVec& phi) {
  RootVec v = phi;
  for (std::size_t i : x.elt.word()) v = simple_reflect(gcm, i, v);
  return is_positive(v);
}

/// Inversion set N(w) = Delta_+ meet w(Delta_-), read off a reduced word:
/// the roots r_{i_1} ... r_{i_{j-1}} alpha_{i_j}. Finite, closed, asymmetric.
std::vector<RealRoot> inversion_roots(const GCM& gcm, const WeylElt& w) {
  const auto& word = w.word();
  std::vector<RealRoot> out;
  for (std::size_t j = 0; j < word.size(); ++j) {
    RealRoot r = simple_root(gcm, word[j]);
    for (std::size_t k = j; k-- > 0;) r = simple_reflect(gcm, word[k], r);
    out.push_back(std::move(r));
  }
  return out;
}

/// Some roots of N(w) for a random word of length 1..6: all of them or a
/// random nonempty part (empty when the word reduces to 1).
std::vector<RealRoot> some_inversions(const GCM& gcm, Rng& rng) {
  std::vector<std::size_t> word;
  const auto len = 1 + rng.below(6);
  for (std::uint64_t k = 0; k < len; ++k) word.push_back(rng.below(gcm.rank()));
  std::vector<RealRoot> inv = inversion_roots(gcm, WeylElt::from_word(gcm, word));
  if (inv.empty() || rng.below(2)) return inv;
  std::vector<RealRoot> out;
  for (auto& r : inv)
    if (rng.below(2)) out.push_back(std::move(r));
  if (out.empty()) out.push_back(inv[rng.below(inv.size())]);
  return out;
}

/// Applies w to the seeds and closes them below the sampling height; any
/// seed above that height is dropped.
std::optional<RootSet> close_image(const Context& ctx, const WeylElt& w,
                                   const std::vector<RealRoot>& seeds) {
  const Coeff h = ctx.settings.max_height;
  std::vector<RealRoot> img;
  for (const auto& g : seeds) {
    RealRoot r = w.act(g);
    const Coeff ht = height(r.root);
    if (ht <= h && ht >= -h) img.push_back(std::move(r));
  }
  if (img.empty()) return std::nullopt;
  ClosureResult res = closure(RootSet(std::move(img)), ctx.deep, h);
  if (res.status != ClosureResult::Status::Closed) return std::nullopt;
  return std::move(res.roots);
}

/// Closed sets with Phi meet -Phi empty: w'(part of N(w)) lies in
/// w'(Delta_+), so its closure is asymmetric. Keeps the largest of a few
/// closures that saturate below the sampling height.
std::optional<RootSet> sample_nilpotent(const Context& ctx, Rng& rng, std::size_t attempts = 60) {
  std::optional<RootSet> best;
  for (std::size_t t = 0, found = 0; t < attempts && found < 4; ++t) {
    const auto seeds = some_inversions(ctx.gcm, rng);
    auto s = close_image(ctx, random_elt(ctx.gcm, rng, 4), seeds);
    if (!s) continue;
    ++found;
    if (!best || s->size() > best->size()) best = std::move(s);
  }
  return best;
}

/// A random set J of at most three simple roots whose Cartan submatrix is of
/// finite type.
std::vector<std::size_t> finite_simple_subset(const GCM& gcm, Rng& rng) {
  const std::size_t n = gcm.rank();
  for (;;) {
    std::vector<std::size_t> j;
    const auto k = 1 + rng.below(std::min<std::size_t>(3, n));
    while (j.size() < k) {
      const auto i = rng.below(n);
      if (std::find(j.begin(), j.end(), i) == j.end()) j.push_back(i);
    }
    std::sort(j.begin(), j.end());
    IntMatrix sub(j.size(), std::vector<Coeff>(j.size()));
    for (std::size_t a = 0; a < j.size(); ++a)
      for (std::size_t b = 0; b < j.size(); ++b) sub[a][b] = gcm(j[a], j[b]);
    try {
      classify_cartan_matrix(sub);
      return j;
    } catch (const Error&) {
    }
  }
}

/// Closed sets with a symmetric part: w'(+-alpha_j for j in J, plus part of
/// some N(w)), closed below the sampling height. Keeps the candidate with
/// the most asymmetric roots among a few.
std::optional<RootSet> sample_mixed(const Context& ctx, Rng& rng, std::size_t attempts = 60) {
  std::optional<RootSet> best;
  std::size_t best_n = 0;
  for (std::size_t t = 0, found = 0; t < attempts && found < 3; ++t) {
    std::vector<RealRoot> seeds;
    for (std::size_t i : finite_simple_subset(ctx.gcm, rng)) {
      seeds.push_back(simple_root(ctx.gcm, i));
      seeds.push_back(-simple_root(ctx.gcm, i));
    }
    const auto extra = some_inversions(ctx.gcm, rng);
    seeds.insert(seeds.end(), extra.begin(), extra.end());
    auto s = close_image(ctx, random_elt(ctx.gcm, rng, 3), seeds);
    if (!s) continue;
    ++found;
    std::size_t n = 0;
    for (const auto& g : *s) n += !s->contains(-g.root);
    if (!best || n > best_n) {
      best = std::move(s);
      best_n = n;
    }
  }
  return best;
}

RootSet random_subset(const RootSet& s, Rng& rng) {
  std::vector<RealRoot> out;
  for (const auto& r : s)
    if (rng.below(2)) out.push_back(r);
  if (out.empty()) out.push_back(s[rng.below(s.size())]);
  return RootSet(std::move(out));
}

/// Naive closedness re-check: every pair, membership from the slice.
std::optional<RootVec> naive_unclosed(const RootSet& s, const RootSlice& slice) {
  for (const auto& a : s)
    for (const auto& b : s) {
      RootVec sum = a.root + b.root;
      if (sum.is_zero() || s.contains(sum)) continue;
      if (slice.contains(sum)) return sum;
    }
  return std::nullopt;
}

bool naive_asymmetric(const RootSet& s) {
  for (const auto& a : s)
    if (s.contains(-a.root)) return false;
  return true;
}

/// Independent check of a chamber certificate for Phi_{>= Psi}.
void check_certificate(const Context& ctx, const RootSet& phi, const RootSet& psi,
                       const Chamber& c, CaseRecord& rec, const std::string& label) {
  for (const auto& f : phi) {
    bool above = false;
    for (const auto& p : psi) above |= leq(p.root, f.root);
    if (above && !in_halfspace_by_word(ctx.gcm, c, f.root))
      mark_fail(rec, label + ": chamber not in H(" + to_string(f.root) + ")");
  }
}

// ---------------------------------------------------------------- suites ---

void dictionary_case(const Context& ctx, Rng& rng, CaseRecord& rec) {
  if (ctx.real.size() < 4) {
    mark_inconclusive(rec, "fewer than two root pairs in the sample slice");
    return;
  }
  const RealRoot alpha = pick(ctx.real, rng);
  RealRoot beta = pick(ctx.real, rng);
  while (beta.root == alpha.root || beta.root == -alpha.root) beta = pick(ctx.real, rng);
  auto& d = rec.data;
  d["alpha"] = to_json(alpha.root);
  d["beta"] = to_json(beta.root);

  const PairClass pc = pair_relation(alpha, beta, ctx.gcm);
  const bool by_mn = pair_prenilpotent(alpha, beta, ctx.gcm);
  d["m"] = pc.m;
  d["n"] = pc.n;
  d["relation"] = to_string(pc.kind);
  d["mn_prenilpotent"] = by_mn;
  if (by_mn != (pc.kind != PairClass::Kind::NotPrenilpotent))
    mark_fail(rec, "pair_relation and pair_prenilpotent disagree");

  const Prenilpotency pre = set_prenilpotent(RootSet({alpha, beta}), ctx.deep, ctx.settings.cap);
  d["closure"] = to_string(pre.verdict);
  if (pre.imaginary_witness) d["closure_witness"] = to_json(*pre.imaginary_witness);
  if (pre.symmetric_witness) d["closure_witness"] = to_json(pre.symmetric_witness->root);
  if (pre.verdict == Prenilpotency::Verdict::Unknown)
    mark_inconclusive(rec, "closure reached cap " + std::to_string(ctx.settings.cap));
  else if ((pre.verdict == Prenilpotency::Verdict::Yes) != by_mn)
    mark_fail(rec, "closure decider disagrees with the mn criterion");
  if (pre.imaginary_witness && ctx.deep.contains(*pre.imaginary_witness) &&
      ctx.deep.is_real(*pre.imaginary_witness))
    mark_fail(rec, "escape witness is a real root");

  // {alpha, beta} prenilpotent iff {alpha, -beta} is not nested. The ball can
  // refute nestedness (two witness chambers) but never prove it.
  NestResult nest = nestedness(alpha, -beta, *ctx.ball);
  d["nest_scan"] = to_string(nest.kind);
  // A witness outside the ball: H(alpha) - H(-beta) is H(alpha) meet H(beta),
  // so a chamber in the intersection over the nilpotent closure of
  // {alpha, beta} (or of its negative) serves, re-checked word by word.
  if (nest.kind != NestResult::Kind::NotNested && pre.verdict == Prenilpotency::Verdict::Yes) {
    // Rare misses retry once on a ball two layers deeper, built for this case only.
    std::optional<WeylBall> wider;
    auto fill = [&](std::optional<Chamber>& slot, const RootSet& phi, const char* label) {
      if (slot) return;
      IntersectionResult r = chamber_in_intersection(phi, phi, *ctx.ball, ctx.deep);
      if (r.status != IntersectionResult::Status::Found) {
        if (!wider) wider.emplace(ctx.gcm, ctx.ball->radius() + 2);
        r = chamber_in_intersection(phi, phi, *wider, ctx.deep);
        if (r.status != IntersectionResult::Status::Found) return;
        d["nest_witness_radius"] = wider->radius();
      }
      for (const auto& f : phi)
        if (!in_halfspace_by_word(ctx.gcm, *r.chamber, f.root)) {
          mark_fail(rec, std::string(label) + ": intersection chamber fails re-validation");
          return;
        }
      slot = r.chamber;
      d["nest_witness_by_intersection"].push_back(label);
    };
    fill(nest.in_alpha_not_beta, pre.closure, "alpha_only");
    fill(nest.in_beta_not_alpha, pre.closure.negated(), "minus_beta_only");
    if (nest.in_alpha_not_beta && nest.in_beta_not_alpha) nest.kind = NestResult::Kind::NotNested;
  }
  if (nest.in_alpha_not_beta) d["chamber_in_alpha_only"] = word_json(nest.in_alpha_not_beta->elt);
  if (nest.in_beta_not_alpha) d["chamber_in_minus_beta_only"] = word_json(nest.in_beta_not_alpha->elt);
  if (nest.exactly_nested == by_mn) mark_fail(rec, "exact nestedness disagrees with the mn criterion");
  if (nest.kind == NestResult::Kind::NotNested) {
    if (!by_mn) mark_fail(rec, "ball refutes nestedness of a non-prenilpotent pair");
  } else if (by_mn || nest.kind == NestResult::Kind::Undetermined) {
    mark_inconclusive(rec, "nestedness undecided within radius " + std::to_string(ctx.ball->radius()));
  }

  if (pc.kind == PairClass::Kind::FiniteDihedral) {
    Json r2;
    r2["predicted"] = to_string(*pc.type);
    const ClosureResult sys =
        closure(RootSet({alpha, -alpha, beta, -beta}), ctx.deep, ctx.settings.cap);
    r2["status"] = to_string(sys.status);
    r2["roots"] = sys.roots.size();
    if (sys.status == ClosureResult::Status::EscapedRealRoots) {
      mark_fail(rec, "closure of {+-alpha, +-beta} escaped");
    } else if (sys.status == ClosureResult::Status::ExceededCap) {
      mark_inconclusive(rec, "rank-2 closure reached the cap");
    } else {
      const FiniteType t = cartan_type(sys.roots, ctx.deep);
      const std::string ts = t.to_string();
      r2["type"] = ts;
      if (ts != "A1xA1" && ts != "A2" && ts != "B2" && ts != "G2")
        mark_fail(rec, "rank-2 closure has type " + ts);
      if (t.root_count() != sys.roots.size()) mark_fail(rec, "root count does not match the type");
      if (sys.roots.size() < root_count(*pc.type))
        mark_fail(rec, "closure smaller than the dihedral orbit");
    }
    d["rank2"] = std::move(r2);
  }
}

void lemma12_record(const Context& ctx, const Lemma12Instance& inst, CaseRecord& rec) {
  auto& d = rec.data;
  d["x"] = word_json(inst.x.elt);
  d["y"] = word_json(inst.y.elt);
  d["alpha"] = to_json(inst.alpha.root);
  d["beta"] = to_json(inst.beta.root);
  const CheckOutcome out = check_lemma12(ctx.gcm, inst, *ctx.ball);
  d["pairing"] = out.alpha_beta_pairing;
  d["x_in_reflected_alpha"] = out.x_in_reflected_alpha;
  if (!out.passed) mark_fail(rec, out.detail);
}

void lemma12_case(const Context& ctx, Rng& rng, CaseRecord& rec) {
  const WeylBall& ball = *ctx.ball;
  std::size_t inner = 0;
  for (std::size_t k = 0; k <= ball.radius() / 2; ++k) inner += ball.layer(k).size();
  for (int attempt = 0; attempt < 20; ++attempt) {
    const Chamber x{ball[rng.below(inner)]};
    std::vector<const RealRoot*> outside;
    for (const auto& a : ctx.real)
      if (!in_halfspace(x, a)) outside.push_back(&a);
    // A few roots per chamber: walls far from x have no instance in the ball.
    for (int tries = 0; tries < 8 && !outside.empty(); ++tries) {
      const auto k = rng.below(outside.size());
      const RealRoot& alpha = *outside[k];
      outside.erase(outside.begin() + static_cast<std::ptrdiff_t>(k));
      auto insts = lemma12_instances(ctx.gcm, x, alpha, ball);
      if (insts.empty()) continue;
      lemma12_record(ctx, insts[rng.below(insts.size())], rec);
      return;
    }
  }
  mark_inconclusive(rec, "no instance within radius " + std::to_string(ball.radius()));
}

void intersection_run(const Context& ctx, const RootSet& phi, const RootSet& psi,
                      CaseRecord& rec, const std::string& label) {
  const IntersectionResult r = chamber_in_intersection(phi, psi, *ctx.ball, ctx.deep);
  Json j;
  j["translations"] = r.translations;
  j["walk_steps"] = r.walk_steps;
  j["lemma12_checks"] = r.lemma12_checks;
  if (r.status == IntersectionResult::Status::Inconclusive) {
    j["cap_hit"] = r.cap_hit;
    mark_inconclusive(rec, label + ": " + r.cap_hit);
  } else {
    j["chamber"] = word_json(r.chamber->elt);
    check_certificate(ctx, phi, psi, *r.chamber, rec, label);
  }
  rec.data[label] = std::move(j);
}

void intersection_case(const Context& ctx, Rng& rng, CaseRecord& rec) {
  auto phi = sample_nilpotent(ctx, rng);
  if (!phi) {
    mark_inconclusive(rec, "no closed asymmetric set sampled");
    return;
  }
  const RootSet psi = random_subset(*phi, rng);
  rec.data["phi"] = to_json(*phi);
  rec.data["psi"] = to_json(psi);
  intersection_run(ctx, *phi, psi, rec, "search");
}

void nilpotency_case(const Context& ctx, Rng& rng, CaseRecord& rec, std::size_t index) {
  auto& d = rec.data;
  auto phi = sample_nilpotent(ctx, rng);
  if (!phi) {
    mark_inconclusive(rec, "no closed asymmetric set sampled");
    return;
  }
  if (index % 2 == 0) {
    d["kind"] = "certificate";
    d["phi"] = to_json(*phi);
    const NilpotencyCheck nc = is_nilpotent(*phi, ctx.deep);
    if (!nc.nilpotent) mark_fail(rec, "sampled nilpotent set rejected: " + to_string(nc.violated));
    intersection_run(ctx, *phi, *phi, rec, "positive_search");
    intersection_run(ctx, phi->negated(), phi->negated(), rec, "negative_search");
    return;
  }

  const NilpotencyCondition expected =
      (index / 2) % 2 == 0 ? NilpotencyCondition::NotClosed : NilpotencyCondition::NotAsymmetric;
  d["kind"] = "violation";
  d["expected"] = to_string(expected);
  RootSet bad;
  if (expected == NilpotencyCondition::NotClosed) {
    // Drop an element that is a sum of two others.
    std::optional<RootSet> found;
    for (int attempt = 0; attempt < 20 && !found; ++attempt) {
      if (attempt > 0) phi = sample_nilpotent(ctx, rng);
      if (!phi) continue;
      std::vector<RootVec> sums;
      for (const auto& g : *phi)
        for (const auto& a : *phi)
          if (a.root != g.root && phi->contains(g.root - a.root)) {
            sums.push_back(g.root);
            break;
          }
      if (sums.empty()) continue;
      const RootVec drop = sums[rng.below(sums.size())];
      std::vector<RealRoot> keep;
      for (const auto& g : *phi)
        if (g.root != drop) keep.push_back(g);
      found = RootSet(std::move(keep));
    }
    // Fallback: two positive roots whose sum is a root.
    for (int attempt = 0; attempt < 40 && !found && ctx.positive.size() >= 2; ++attempt) {
      const RealRoot& a = pick(ctx.positive, rng);
      const RealRoot& b = pick(ctx.positive, rng);
      if (a.root != b.root && ctx.deep.contains(a.root + b.root)) found = RootSet({a, b});
    }
    if (!found) {
      mark_inconclusive(rec, "no sampled set has a decomposable element");
      return;
    }
    bad = std::move(*found);
  } else {
    const RealRoot& g = (*phi)[rng.below(phi->size())];
    std::vector<RealRoot> seeds(phi->begin(), phi->end());
    seeds.push_back(-g);
    ClosureResult c = closure(RootSet(std::move(seeds)), ctx.deep, ctx.settings.max_height);
    bad = c.status == ClosureResult::Status::Closed ? std::move(c.roots) : RootSet({g, -g});
  }
  d["set"] = to_json(bad);
  const NilpotencyCheck nc = is_nilpotent(bad, ctx.deep);
  d["violated"] = to_string(nc.violated);
  Json all = Json::array();
  for (auto c : nc.all_violated) all.push_back(to_string(c));
  d["all_violated"] = all;
  if (nc.nilpotent || nc.violated != expected || nc.all_violated.size() != 1)
    mark_fail(rec, "is_nilpotent reported " + to_string(nc.violated));
  // The witness must re-validate.
  if (nc.sum_witness) {
    const auto& w = *nc.sum_witness;
    d["sum_witness"] = to_json(w);
    if (!bad.contains(w.a.root) || !bad.contains(w.b.root) || bad.contains(w.sum) ||
        w.a.root + w.b.root != w.sum || !ctx.deep.contains(w.sum))
      mark_fail(rec, "sum witness does not re-validate");
  }
  if (nc.symmetric_witness) {
    d["symmetric_witness"] = to_json(nc.symmetric_witness->root);
    if (!bad.contains(nc.symmetric_witness->root) || !bad.contains(-nc.symmetric_witness->root))
      mark_fail(rec, "symmetric witness does not re-validate");
  }
  if (naive_unclosed(bad, ctx.deep).has_value() != (expected == NilpotencyCondition::NotClosed))
    mark_fail(rec, "constructed set does not violate exactly the intended condition");
  if (naive_asymmetric(bad) != (expected == NilpotencyCondition::NotClosed))
    mark_fail(rec, "constructed set does not violate exactly the intended condition");
}

void closure_finite_case(const Context& ctx, Rng& rng, CaseRecord& rec) {
  auto phi = sample_nilpotent(ctx, rng);
  if (!phi) {
    mark_inconclusive(rec, "no closed asymmetric set sampled");
    return;
  }
  const RootSet psi = random_subset(*phi, rng);
  rec.data["phi"] = to_json(*phi);
  rec.data["psi"] = to_json(psi);
  const ClosureResult c = closure(psi, ctx.deep, ctx.settings.cap);
  rec.data["status"] = to_string(c.status);
  rec.data["closure"] = to_json(c.roots);
  if (c.status != ClosureResult::Status::Closed) {
    mark_fail(rec, "closure did not saturate: " + to_string(c.status));
    return;
  }
  if (!psi.is_subset_of(c.roots)) mark_fail(rec, "closure does not contain its input");
  if (!c.roots.is_subset_of(*phi)) mark_fail(rec, "closure leaves the closed set Phi");
  if (auto s = naive_unclosed(c.roots, ctx.deep))
    mark_fail(rec, "closure misses the root " + to_string(*s));
}

void filtration_case(const Context& ctx, Rng& rng, CaseRecord& rec) {
  auto phi = sample_nilpotent(ctx, rng);
  if (!phi) {
    mark_inconclusive(rec, "no closed asymmetric set sampled");
    return;
  }
  rec.data["phi"] = to_json(*phi);
  const Coeff n_max = phi->max_abs_height();
  const auto levels = pronilpotent_filtration(*phi, n_max, ctx.deep);
  Json sizes = Json::array();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const RootSet& lv = levels[k];
    sizes.push_back(lv.size());
    const Coeff n = static_cast<Coeff>(k + 1);
    for (const auto& f : *phi) {
      const Coeff h = height(f.root);
      if (h <= n && h >= -n && !lv.contains(f.root))
        mark_fail(rec, "level " + std::to_string(n) + " misses " + to_string(f.root));
    }
    if (!lv.is_subset_of(*phi)) mark_fail(rec, "level " + std::to_string(n) + " leaves Phi");
    if (k + 1 < levels.size() && !lv.is_subset_of(levels[k + 1]))
      mark_fail(rec, "levels not ascending at " + std::to_string(n));
    if (naive_unclosed(lv, ctx.deep) || !naive_asymmetric(lv))
      mark_fail(rec, "level " + std::to_string(n) + " is not nilpotent");
  }
  if (levels.empty() || !(levels.back() == *phi)) mark_fail(rec, "top level differs from Phi");
  rec.data["levels"] = std::move(sizes);
  rec.data["nilpotency_class"] = nilpotency_class(*phi, ctx.deep);
}

void levi_case(const Context& ctx, Rng& rng, CaseRecord& rec) {
  auto psi = sample_mixed(ctx, rng);
  if (!psi) {
    mark_inconclusive(rec, "no closed mixed set sampled");
    return;
  }
  rec.data["psi"] = to_json(*psi);
  const LeviReport lr = verify_levi(*psi, ctx.deep);
  rec.data["levi"] = to_json(lr);
  if (!lr.all_passed()) mark_fail(rec, "a Levi check failed");

  std::vector<RealRoot> s, n;
  for (const auto& g : *psi) (psi->contains(-g.root) ? s : n).push_back(g);
  if (!(RootSet(s) == lr.psi_s) || !(RootSet(n) == lr.psi_n))
    mark_fail(rec, "split differs from the direct computation");
  if (lr.type.root_count() != lr.psi_s.size()) mark_fail(rec, "|Psi_s| differs from the type");
  if (lr.type.total_rank() != lr.coroot_rank) mark_fail(rec, "coroot rank differs from the type");
  if (naive_unclosed(lr.psi_s, ctx.deep)) mark_fail(rec, "Psi_s not closed (direct check)");
  for (const auto& a : *psi)
    for (const auto& b : lr.psi_n) {
      RootVec sum = a.root + b.root;
      if (!sum.is_zero() && ctx.deep.contains(sum) && !lr.psi_n.contains(sum))
        mark_fail(rec, "Psi_n not an ideal (direct check)");
    }
}

template <class F>
void parallel_for(std::size_t n, std::size_t threads, F&& f) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(threads, n); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
    });
  for (auto& th : pool) th.join();
}

/// Runs body and turns exceptions into outcomes: a cap-type error is
/// inconclusive, anything else is a failure of the implementation.
void guarded(CaseRecord& rec, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SliceTooShallow || e.kind() == ErrorKind::Overflow)
      mark_inconclusive(rec, std::string("cap: ") + e.what());
    else
      mark_fail(rec, std::string(to_string(e.kind())) + ": " + e.what());
  } catch (const std::exception& e) {
    mark_fail(rec, std::string("internal: ") + e.what());
  }
}

CaseRecord begin_record(std::size_t index, std::size_t gcm) {
  CaseRecord rec;
  rec.data["case"] = index;
  rec.data["gcm"] = gcm;
  return rec;
}

void finish_record(CaseRecord& rec) { rec.data["outcome"] = to_string(rec.outcome); }

bool exhausts_group(const WeylBall& ball) { return ball.layer(ball.radius()).empty(); }

}  // namespace

Report run(const CampaignConfig& config) {
  const Settings s = resolve(config);
  validate(config, s);

  std::vector<GCM> pool = config.gcms;
  const bool exhaustive = !config.cases.has_value();
  if (pool.empty() && exhaustive) {
    pool = {validate_gcm({{2, -1}, {-1, 2}}), validate_gcm({{2, -2}, {-1, 2}}),
            validate_gcm({{2, -1}, {-3, 2}}), validate_gcm({{2, 0}, {0, 2}})};
  } else if (pool.empty()) {
    Rng rng(derive_seed(config.seed, kPoolStream, 0));
    for (std::size_t k = 0; k < config.pool_size; ++k)
      pool.push_back(random_gcm(rng, s.min_rank, s.max_rank));
  }

  Report report;
  auto& cfg = report.config;
  cfg["suite"] = to_string(config.suite);
  cfg["seed"] = config.seed;
  cfg["cases"] = exhaustive ? Json("all") : Json(*config.cases);
  cfg["radius"] = s.radius;
  cfg["cap"] = s.cap;
  cfg["max_height"] = s.max_height;
  if (config.gcms.empty() && !exhaustive) {
    cfg["pool_size"] = config.pool_size;
    cfg["ranks"] = Json::array({s.min_rank, s.max_rank});
  }
  cfg["gcm_sources"] = config.gcm_sources;
  report.gcms = Json::array();
  for (const auto& g : pool) report.gcms.push_back(to_json(g));

  if (!exhaustive) report.records.resize(*config.cases);

  for (std::size_t g = 0; g < pool.size(); ++g) {
    const Context ctx(pool[g], s);
    if (exhaustive) {
      if (!exhausts_group(*ctx.ball))
        throw Error(ErrorKind::InvalidInput,
                    "cases=all needs a finite Weyl group inside radius " + std::to_string(s.radius));
      const std::size_t longest = ctx.ball->layer_sizes().size() - 1;
      std::size_t top = longest;
      while (top > 0 && ctx.ball->layer(top).empty()) --top;
      if (ctx.positive.size() != top)
        throw Error(ErrorKind::InvalidInput,
                    "max height too small to hold every root of gcm " + std::to_string(g));
      std::vector<Lemma12Instance> insts;
      for (const WeylElt& w : ctx.ball->elements()) {
        const Chamber x{w};
        for (const auto& a : ctx.real) {
          if (in_halfspace(x, a)) continue;
          auto more = lemma12_instances(ctx.gcm, x, a, *ctx.ball);
          insts.insert(insts.end(), more.begin(), more.end());
        }
      }
      const std::size_t offset = report.records.size();
      std::vector<CaseRecord> out(insts.size());
      parallel_for(insts.size(), config.threads, [&](std::size_t k) {
        CaseRecord rec = begin_record(offset + k, g);
        guarded(rec, [&] { lemma12_record(ctx, insts[k], rec); });
        finish_record(rec);
        out[k] = std::move(rec);
      });
      for (auto& r : out) report.records.push_back(std::move(r));
      continue;
    }

    std::vector<std::size_t> mine;
    for (std::size_t k = g; k < *config.cases; k += pool.size()) mine.push_back(k);
    parallel_for(mine.size(), config.threads, [&](std::size_t t) {
      const std::size_t k = mine[t];
      Rng rng(derive_seed(config.seed, kCaseStream, k));
      CaseRecord rec = begin_record(k, g);
      guarded(rec, [&] {
        switch (config.suite) {
          case Suite::Dictionary: dictionary_case(ctx, rng, rec); break;
          case Suite::Lemma12: lemma12_case(ctx, rng, rec); break;
          case Suite::Intersection: intersection_case(ctx, rng, rec); break;
          case Suite::Nilpotency: nilpotency_case(ctx, rng, rec, k); break;
          case Suite::ClosureFinite: closure_finite_case(ctx, rng, rec); break;
          case Suite::Filtration: filtration_case(ctx, rng, rec); break;
          case Suite::Levi: levi_case(ctx, rng, rec); break;
        }
      });
      finish_record(rec);
      report.records[k] = std::move(rec);
    });
  }

  for (const auto& r : report.records) {
    switch (r.outcome) {
      case Outcome::Pass: ++report.counts.pass; break;
      case Outcome::Fail: ++report.counts.fail; break;
      case Outcome::Inconclusive: ++report.counts.inconclusive; break;
    }
  }
  return report;
}

Json to_json(const Report& r) {
  Json j;
  j["schema"] = 1;
  j["generator"] = {{"name", kGeneratorName},
                    {"seeding", "splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index)"},
                    {"streams", {{"gcm_pool", kPoolStream}, {"case", kCaseStream}}},
                    {"range", "rejection of the lowest 2^64 mod n draws"}};
  j["config"] = r.config;
  j["gcms"] = r.gcms;
  j["counts"] = {{"cases", r.records.size()},
                 {"pass", r.counts.pass},
                 {"fail", r.counts.fail},
                 {"inconclusive", r.counts.inconclusive}};
  Json recs = Json::array();
  for (const auto& c : r.records) recs.push_back(c.data);
  j["records"] = std::move(recs);
  return j;
}

int exit_code(const Report& r) {
  if (r.counts.fail > 0) return 1;
  if (r.counts.inconclusive > 0) return 3;
  return 0;
}

}  // namespace kmroots::campaign
