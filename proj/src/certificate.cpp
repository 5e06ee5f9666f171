#include "kslice/certificate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <memory>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kslice/log.hpp"
#include "kslice/matspace.hpp"
#include "kslice/nilpotent.hpp"
#include "kslice/sl2.hpp"

namespace kslice {

using nlohmann::json;

namespace {

json matrix_json(const RatMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_rat(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const RatVector& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(format_rat(x));
  return arr;
}

json to_json(const Certificate& c) {
  json checks = json::array();
  for (const auto& [name, ok] : c.checks) checks.push_back({{"name", name}, {"pass", ok}});
  return json{{"family", c.family},
              {"p", c.p},
              {"q", c.q},
              {"rank_theta", c.rank_theta},
              {"e", matrix_json(c.e)},
              {"nilpotency_index", c.nilpotency_index},
              {"centralizer_dim", c.centralizer_dim},
              {"triple_f", matrix_json(c.triple_f)},
              {"triple_h", matrix_json(c.triple_h)},
              {"checks", checks},
              {"roundtrip_trials", c.roundtrip_trials},
              {"roundtrip_passes", c.roundtrip_passes},
              {"seed", c.seed},
              {"tool_version", c.tool_version},
              {"passing", c.passing()}};
}

long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rat random_rat(std::mt19937_64& rng, long height) {
  Rat r(draw(rng, -height, height), draw(rng, 1, height));
  r.canonicalize();
  return r;
}

RatVector random_coords(std::mt19937_64& rng, std::size_t d, long height) {
  RatVector v(d);
  for (auto& x : v) x = random_rat(rng, height);
  return v;
}

RatMatrix random_minus(const SymmetricPair& pair, std::mt19937_64& rng) {
  RatVector c(pair.basis_minus().size());
  for (auto& x : c) x = draw(rng, -3, 3);
  return combine(c, pair.basis_minus());
}

RatMatrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long height) {
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = draw(rng, -height, height);
  return m;
}

constexpr long kCoordHeight = 10;
constexpr long kGroupHeight = 2;

}  // namespace

bool Certificate::passing() const {
  for (const auto& [name, ok] : checks)
    if (!ok) return false;
  return roundtrip_passes == roundtrip_trials;
}

std::string certificate_json(const Certificate& cert) { return to_json(cert).dump(); }

std::string error_json(const std::string& kind, const std::string& message) {
  return json{{"error", kind}, {"message", message}}.dump();
}

std::uint64_t case_seed(std::uint64_t seed, Family family, long p, long q) {
  std::uint64_t h = 1469598103934665603ull;
  std::ostringstream key;
  key << seed << '/' << family_name(family) << '/' << p << '/' << q;
  for (unsigned char c : key.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

// o(1,1) is abelian and its regular nilpotent is 0, so no sl2-triple exists;
// the slice degenerates to g(-1) itself with base point 0.
Sl2Triple slice_triple(const SymmetricPair& pair, const RatMatrix& e) {
  if (e.is_zero()) {
    const RatMatrix zero(pair.n(), pair.n());
    return Sl2Triple{zero, zero, zero};
  }
  return complete_triple(pair, e);
}

}  // namespace

KostantSlice standard_slice(Family family, long p, long q) {
  auto pair = std::make_shared<const SymmetricPair>(SymmetricPair::make(family, p, q));
  Sl2Triple t = slice_triple(*pair, regular_nilpotent(*pair));
  return KostantSlice::make(std::move(pair), std::move(t));
}

std::pair<CanonicalStatus, std::optional<Canonical>> canonicalize(const KostantSlice& slice,
                                                                  const RatMatrix& x,
                                                                  const SolverConfig& config) {
  if (!is_relatively_regular(slice.pair(), x)) return {CanonicalStatus::kNonRegular, std::nullopt};
  InvariantVector inv = invariants(slice.pair(), x);
  auto coords = invert_on_slice(slice, inv, config);
  if (!coords) return {CanonicalStatus::kNotFound, std::nullopt};
  RatMatrix rep = slice_point(slice, *coords);
  return {CanonicalStatus::kOk, Canonical{std::move(*coords), std::move(rep), std::move(inv)}};
}

Certificate run_verify(Family family, long p, long q, const VerifyOptions& opts) {
  auto pair = std::make_shared<const SymmetricPair>(SymmetricPair::make(family, p, q));
  std::mt19937_64 rng(case_seed(opts.seed, family, p, q));

  Certificate cert;
  cert.family = std::string(family_name(family));
  cert.p = p;
  cert.q = q;
  cert.seed = opts.seed;
  cert.rank_theta = pair->rank_theta();
  cert.roundtrip_trials = opts.trials;
  auto check = [&cert](const char* name, bool ok) {
    cert.checks.emplace_back(name, ok);
    if (!ok) log::info("{}({},{}): check {} failed", cert.family, cert.p, cert.q, name);
  };

  const NilpotentWitness w = make_witness(*pair);
  cert.e = w.e;
  cert.nilpotency_index = w.nilp_index;
  cert.centralizer_dim = w.centralizer_dim;
  check("e_in_g_minus", pair->in_eigenspace(w.e, -1));
  check("e_nilpotent", w.nilp_index > 0);
  check("centralizer_dim_eq_rank", w.centralizer_dim == pair->rank_theta());
  check("closed_form_match", same_span(w.centralizer_basis, closed_form_centralizer(*pair)));

  std::optional<KostantSlice> slice;
  try {
    Sl2Triple t = complete_triple(*pair, w.e);
    const CheckList tc = verify_triple(*pair, t);
    auto named = [&tc](const std::string& n) {
      for (const auto& [name, ok] : tc)
        if (name == n) return ok;
      return false;
    };
    check("triple_relations", named("nonzero") && named("[h,e]=2e") && named("[h,f]=-2f") &&
                                  named("[e,f]=h") && named("f in g(-1)"));
    check("h_in_g_plus", named("h in g(1)"));
    check("f_regular", named("f in g(-1)") && is_relatively_regular(*pair, t.f));
    cert.triple_f = t.f;
    cert.triple_h = t.h;
    slice = KostantSlice::make(pair, std::move(t));
  } catch (const NoTriple& ex) {
    log::info("{}({},{}): {}", cert.family, p, q, ex.what());
    check("triple_relations", false);
    check("h_in_g_plus", false);
    check("f_regular", false);
    if (w.e.is_zero()) slice = KostantSlice::make(pair, slice_triple(*pair, w.e));
  } catch (const SliceDimensionError& ex) {
    log::info("{}({},{}): {}", cert.family, p, q, ex.what());
    check("slice_dimension", false);
  }

  // Equivariance of the correspondence, plus rank invariance for GL.
  bool equivariant = true;
  for (int i = 0; i < opts.equivariance_trials; ++i) {
    const GroupElement g = random_group_element(*pair, rng(), kGroupHeight);
    const RatMatrix x = random_minus(*pair, rng);
    if (to_matrix_space(*pair, act(*pair, g, x)) != act_mpq(*pair, g, to_matrix_space(*pair, x))) {
      equivariant = false;
    }
    if (family == Family::GL) {
      const std::size_t r = static_cast<std::size_t>(draw(rng, 0, q));
      const RatMatrix a = random_int_matrix(rng, pair->p(), r, 3) *
                          random_int_matrix(rng, r, pair->q(), 3);
      if (rank(act_mpq(*pair, g, a)) != rank(a)) equivariant = false;
    }
  }
  check("equivariance", equivariant);

  if (!slice) {
    check("invariant_conjugation", false);
    check("roundtrip", false);
    check("separation", false);
    return cert;
  }

  bool conj_ok = true;
  for (int i = 0; i < opts.conjugation_trials; ++i) {
    const RatVector a = random_coords(rng, slice->dim(), kCoordHeight);
    const GroupElement g = random_group_element(*pair, rng(), kGroupHeight);
    const RatMatrix x = slice_point(*slice, a);
    const RatMatrix y = act(*pair, g, x);
    if (invariants(*pair, y) != invariants(*pair, x)) {
      conj_ok = false;
      continue;
    }
    const auto [status, canon] = canonicalize(*slice, y, opts.solver);
    if (status != CanonicalStatus::kOk || canon->coords != a) conj_ok = false;
  }
  check("invariant_conjugation", conj_ok);

  for (int i = 0; i < opts.trials; ++i) {
    const RatVector a = random_coords(rng, slice->dim(), kCoordHeight);
    const auto back = invert_on_slice(*slice, invariants(*pair, slice_point(*slice, a)), opts.solver);
    if (back && *back == a) {
      ++cert.roundtrip_passes;
    } else {
      log::info("{}({},{}): round trip {} failed at {}", cert.family, p, q, i,
                vector_json(a).dump());
    }
  }
  check("roundtrip", cert.roundtrip_passes == cert.roundtrip_trials);

  bool separated = true;
  for (int i = 0; i < opts.jacobian_points; ++i) {
    const RatVector a = random_coords(rng, slice->dim(), kCoordHeight);
    if (jacobian_rank_at(*slice, a) != pair->rank_theta()) separated = false;
  }
  check("separation", separated);
  return cert;
}

std::vector<CaseSpec> report_cases(long gl_max, long o_max, long sp_max) {
  std::vector<CaseSpec> out;
  for (long p = 1; p <= gl_max; ++p)
    for (long q = 1; q <= p; ++q) out.push_back({Family::GL, p, q});
  for (long p = 1; p <= o_max; ++p)
    for (long q = std::max(1L, p - 1); q <= p; ++q) out.push_back({Family::ORTH, p, q});
  for (long p = 2; p <= sp_max; p += 2)
    for (long q = 2; q <= p; q += 2) out.push_back({Family::SP, p, q});
  return out;
}

std::vector<Certificate> run_report(const std::vector<CaseSpec>& cases, const VerifyOptions& opts,
                                    unsigned jobs) {
  std::vector<Certificate> certs(cases.size());
  std::vector<std::exception_ptr> errors(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        certs[i] = run_verify(cases[i].family, cases[i].p, cases[i].q, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cases.size())));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return certs;
}

CommandResult cmd_verify(Family family, long p, long q, const VerifyOptions& opts) {
  try {
    const Certificate cert = run_verify(family, p, q, opts);
    return {cert.passing() ? kExitPass : kExitCaseFailed, to_json(cert).dump(2) + "\n", ""};
  } catch (const ConstraintViolation& ex) {
    return {kExitInputError, error_json("ConstraintViolation", ex.what()) + "\n", ex.what()};
  }
}

CommandResult cmd_report(long gl_max, long o_max, long sp_max, const VerifyOptions& opts,
                         unsigned jobs) {
  const auto cases = report_cases(gl_max, o_max, sp_max);
  const auto certs = run_report(cases, opts, jobs);

  json list = json::array();
  json failed = json::array();
  std::ostringstream table;
  table << "family   p   q  rank  cdim  roundtrip  status\n";
  std::size_t passed = 0;
  for (const auto& c : certs) {
    list.push_back(to_json(c));
    const bool ok = c.passing();
    if (ok) {
      ++passed;
    } else {
      failed.push_back(c.family + "(" + std::to_string(c.p) + "," + std::to_string(c.q) + ")");
    }
    char line[96];
    std::snprintf(line, sizeof line, "%-6s %3ld %3ld %5zu %5zu %5d/%-5d  %s\n", c.family.c_str(),
                  c.p, c.q, c.rank_theta, c.centralizer_dim, c.roundtrip_passes,
                  c.roundtrip_trials, ok ? "pass" : "FAIL");
    table << line;
  }
  table << passed << "/" << certs.size() << " cases passing\n";
  json summary{{"certificates", list},
               {"failed", failed},
               {"passed", passed},
               {"seed", opts.seed},
               {"tool_version", kToolVersion},
               {"total", certs.size()}};
  return {failed.empty() ? kExitPass : kExitCaseFailed, summary.dump(2) + "\n", table.str()};
}

CommandResult cmd_slice_rep(Family family, long p, long q, const std::string& invariants_text) {
  std::optional<KostantSlice> slice;
  InvariantVector target;
  try {
    slice = standard_slice(family, p, q);
    target = invariants_from_json(invariants_text);
  } catch (const ConstraintViolation& ex) {
    return {kExitInputError, error_json("ConstraintViolation", ex.what()) + "\n", ex.what()};
  } catch (const std::invalid_argument& ex) {
    return {kExitInputError, error_json("MalformedInput", ex.what()) + "\n", ex.what()};
  }
  if (target.values.size() != invariant_count(slice->pair())) {
    const std::string msg = "expected " + std::to_string(invariant_count(slice->pair())) +
                            " invariants, got " +
                            std::to_string(target.values.size());
    return {kExitInputError, error_json("DimensionError", msg) + "\n", msg};
  }
  const auto coords = invert_on_slice(*slice, target);
  if (!coords) {
    const std::string msg = "solver exhausted its schedule; this does not show the fiber is empty";
    return {kExitNotFound, error_json("NotFound", msg) + "\n", msg};
  }
  return {kExitPass, format_matrix(slice_point(*slice, *coords)), ""};
}

CommandResult cmd_canonicalize(Family family, long p, long q, const std::string& matrix_text) {
  std::optional<KostantSlice> slice;
  RatMatrix x;
  try {
    slice = standard_slice(family, p, q);
    x = parse_matrix(matrix_text);
    if (!slice->pair().in_eigenspace(x, -1)) throw MembershipError("input is not in g(-1)");
  } catch (const ConstraintViolation& ex) {
    return {kExitInputError, error_json("ConstraintViolation", ex.what()) + "\n", ex.what()};
  } catch (const MembershipError& ex) {
    return {kExitInputError, error_json("MembershipError", ex.what()) + "\n", ex.what()};
  } catch (const std::invalid_argument& ex) {
    return {kExitInputError, error_json("MalformedInput", ex.what()) + "\n", ex.what()};
  }
  const auto [status, canon] = canonicalize(*slice, x);
  switch (status) {
    case CanonicalStatus::kNonRegular: {
      const std::string msg = "input is not relatively regular";
      return {kExitNonRegular, error_json("NonRegular", msg) + "\n", msg};
    }
    case CanonicalStatus::kNotFound: {
      const std::string msg = "solver exhausted its schedule; this does not show the fiber is empty";
      return {kExitNotFound, error_json("NotFound", msg) + "\n", msg};
    }
    case CanonicalStatus::kOk:
      break;
  }
  const json out{{"coordinates", vector_json(canon->coords)},
                 {"invariants", vector_json(canon->invariants.values)},
                 {"representative", matrix_json(canon->representative)}};
  return {kExitPass, out.dump(2) + "\n", ""};
}

}  // namespace kslice
