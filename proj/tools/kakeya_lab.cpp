/*
 * Copyright 2026 The kakeya-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kakeya/amplify.hpp"
#include "kakeya/io.hpp"
#include "kakeya/maximal.hpp"
#include "kakeya/polymethod.hpp"
#include "kakeya/random.hpp"
#include "kakeya/rings.hpp"

using namespace kakeya;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitConfig = 1;
constexpr int kExitFinding = 2;
constexpr int kExitWitness = 3;

constexpr std::uint64_t kEnumCeiling = 1'000'000'000;
constexpr std::uint64_t kMatrixCeiling = 10'000'000'000;

struct Options {
  std::optional<std::uint32_t> p;
  std::uint32_t m = 1;
  std::optional<std::uint64_t> q;
  std::optional<std::size_t> n;
  std::size_t k = 1;
  std::optional<unsigned> D;
  unsigned mult = 1;
  std::string theorem = "exp";
  std::optional<double> pexp, qexp;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::string input;
  std::string output;
  std::uint64_t cap_enum = Caps{}.enumeration;
  std::uint64_t cap_matrix = Caps{}.matrix_entries;
  double max_ratio = 4.0;
  std::string ring = "poly";
  std::string check_embed;
  bool bound = false;
  bool certify = false;
  bool sz = false;
  std::size_t M = 1;
  std::size_t J = 1;
  std::size_t best_of = 0;
  std::optional<std::size_t> N;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Caps caps_of(const Options& o) {
  if (o.cap_enum > kEnumCeiling) throw ConfigError("--cap-enum exceeds the hard ceiling " + std::to_string(kEnumCeiling));
  if (o.cap_matrix > kMatrixCeiling)
    throw ConfigError("--cap-matrix exceeds the hard ceiling " + std::to_string(kMatrixCeiling));
  return Caps{o.cap_enum, o.cap_matrix};
}

std::optional<FieldPtr> field_of(const Options& o) {
  if (o.q) {
    if (o.p) throw ConfigError("give either --q or --p/--m, not both");
    return Field::of_order(*o.q);
  }
  if (o.p) return Field::make(*o.p, o.m);
  return std::nullopt;
}

FieldPtr require_field(const Options& o) {
  auto f = field_of(o);
  if (!f) throw ConfigError("a field is required: pass --p (and --m) or --q");
  return *f;
}

std::size_t require_n(const Options& o) {
  if (!o.n) throw ConfigError("--n is required");
  return *o.n;
}

// Flags given on the command line must agree with the field read from a file.
void check_matches(const Options& o, const AffineSpace& sp) {
  if (auto f = field_of(o); f && (*f)->q() != sp.q())
    throw ConfigError("field order in the input (" + std::to_string(sp.q()) + ") differs from the flags");
  if (o.n && *o.n != sp.dim())
    throw ConfigError("dimension in the input (" + std::to_string(sp.dim()) + ") differs from --n");
}

std::string file_digest(const std::string& path) {
  if (path.empty()) return "";
  std::ifstream in(path, std::ios::binary);
  if (!in) return "missing";
  std::ostringstream ss;
  ss << in.rdbuf();
  return hex64(fnv1a(ss.str()));
}

json config_json(const std::string& command, const Options& o) {
  json c = {{"command", command},
            {"seed", o.seed},
            {"cap_enum", o.cap_enum},
            {"cap_matrix", o.cap_matrix}};
  auto put = [&](const char* key, const auto& v) {
    if (v) c[key] = *v;
  };
  put("p", o.p);
  put("q", o.q);
  put("n", o.n);
  put("D", o.D);
  put("pexp", o.pexp);
  put("qexp", o.qexp);
  put("N", o.N);
  c["m"] = o.m;
  c["k"] = o.k;
  c["mult"] = o.mult;
  c["theorem"] = o.theorem;
  c["trials"] = o.trials;
  c["max_ratio"] = o.max_ratio;
  c["ring"] = o.ring;
  c["M"] = o.M;
  c["J"] = o.J;
  c["best_of"] = o.best_of;
  c["flags"] = {{"bound", o.bound}, {"certify", o.certify}, {"sz", o.sz}};
  if (!o.input.empty()) c["input"] = {{"path", o.input}, {"fnv1a", file_digest(o.input)}};
  if (!o.check_embed.empty()) c["check_embed"] = {{"path", o.check_embed}, {"fnv1a", file_digest(o.check_embed)}};
  return c;
}

json envelope(const std::string& command, const Options& o, json result) {
  const json config = config_json(command, o);
  return {{"version", kVersion},
          {"seed", o.seed},
          {"config_hash", hex64(fnv1a(config.dump()))},
          {"config", config},
          {"result", std::move(result)}};
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty())
    std::cout << text;
  else
    write_atomic(o.output, text);
}

void emit_json(const Options& o, const json& report) { emit(o, report.dump(2) + "\n"); }

TheoremSpec theorem_spec(const Options& o) {
  TheoremSpec spec;
  spec.tag = parse_theorem(o.theorem);
  if (spec.tag == Theorem::Kakeq || spec.tag == Theorem::RestrictedW)
    throw ConfigError("theorem '" + o.theorem + "' needs variety data and is not available from the command line");
  spec.k = o.k;
  if (spec.tag == Theorem::Shoop || spec.tag == Theorem::KPlaneConj) {
    if (!o.pexp || !o.qexp) throw ConfigError("--pexp and --qexp are required for theorem " + o.theorem);
    spec.p = *o.pexp;
    spec.q = *o.qexp;
  }
  return spec;
}

PointFunction input_function(const Options& o, const Caps& caps) {
  if (!o.input.empty()) {
    auto f = read_point_function(o.input, caps);
    check_matches(o, f.space());
    return f;
  }
  AffineSpace sp(require_field(o), require_n(o), caps.enumeration);
  Rng rng(o.seed);
  return random_point_function(sp, rng);
}

// ------------------------------------------------------------------ commands

int cmd_maximal(const Options& o) {
  const Caps caps = caps_of(o);
  const TheoremSpec spec = theorem_spec(o);
  if (o.n) check_exponent_region(spec, *o.n);
  const auto f = input_function(o, caps);
  auto r = ratio_report(f, spec);
  r.seed = o.seed;
  json res = to_json(r);
  res["max_ratio"] = o.max_ratio;
  res["finding"] = r.ratio > o.max_ratio;
  emit_json(o, envelope("maximal", o, res));
  return r.ratio > o.max_ratio ? kExitFinding : kExitPass;
}

int cmd_certify(const Options& o) {
  const Caps caps = caps_of(o);
  json res;
  VanishingCertificate cert;
  if (o.sz) {
    cert = multiplicity_sz_check(require_field(o), o.k, o.mult, caps);
    res["mode"] = "multiplicity_sz";
  } else {
    if (o.input.empty()) throw ConfigError("--input point-set file is required");
    const auto file = read_point_set(o.input, caps);
    check_matches(o, file.space);
    res["set_size"] = file.points.size();
    if (o.mult == 1 && (!o.D || *o.D + 1 == file.space.q())) {
      const auto lc = kakeya_line_check(file.space, file.points);
      res["mode"] = "dvir";
      res["kakeya"] = lc.kakeya;
      res["binomial_bound"] = binomial(file.space.q() - 1 + file.space.dim(), file.space.dim()).str();
      cert = dvir_check(file.space, file.points, caps);
    } else {
      const unsigned D = o.D ? *o.D : static_cast<unsigned>(file.space.q() - 1);
      res["mode"] = "vanishing";
      cert = find_vanishing_poly(MultiplicityFunction::on_set(file.space, file.points, o.mult), D, caps);
    }
  }
  res["certificate"] = to_json(cert);
  emit_json(o, envelope("certify", o, res));
  return cert.kind == CertificateKind::WitnessPoly ? kExitWitness : kExitPass;
}

int cmd_ensemble(const Options& o) {
  const Caps caps = caps_of(o);
  if (o.trials == 0) throw ConfigError("--trials must be at least 1");
  const TheoremSpec spec = theorem_spec(o);
  AffineSpace sp(require_field(o), require_n(o), caps.enumeration);
  const auto st = ratio_ensemble(sp, spec, o.trials, o.seed);
  const json config = config_json("ensemble", o);
  std::string out = "# version=" + std::string(kVersion) + " seed=" + std::to_string(o.seed) +
                    " config_hash=" + hex64(fnv1a(config.dump())) + "\n";
  out += "seed,theorem,ratio\n";
  for (std::size_t t = 0; t < st.ratios.size(); ++t)
    out += std::to_string(st.trial_seeds[t]) + "," + st.theorem + "," + format_double(st.ratios[t]) + "\n";
  out += "max," + st.theorem + "," + format_double(st.max_ratio) + "\n";
  out += "mean," + st.theorem + "," + format_double(st.mean_ratio) + "\n";
  emit(o, out);
  return st.max_ratio > o.max_ratio ? kExitFinding : kExitPass;
}

Ring ring_of(const Options& o, std::size_t k) {
  if (o.ring == "poly") return Ring::poly_mod_xk(require_field(o), static_cast<unsigned>(k));
  if (o.ring == "int") {
    if (o.q) throw ConfigError("Z/p^k rings take --p, not --q");
    if (!o.p) throw ConfigError("--p is required for Z/p^k");
    return Ring::int_mod_pk(*o.p, static_cast<unsigned>(k));
  }
  throw ConfigError("--ring must be 'poly' or 'int'");
}

PointSet read_ring_set(const std::string& path, const RingSpace& sp) {
  const auto table = read_table(path);
  const Ring& R = sp.ring();
  if (table.n != sp.dim()) throw ConfigError("dimension in " + path + " differs from --n");
  if (std::uint64_t(std::pow(double(table.p), double(table.m)) + 0.5) != R.residue_size())
    throw ConfigError("residue field in " + path + " differs from the ring");
  std::vector<PointIndex> pts;
  for (const auto& row : table.rows) {
    if (row.size() != sp.dim() && row.size() != sp.dim() + 1) fail(ErrorCode::ParseError, "bad row width in " + path);
    if (row.size() == sp.dim() + 1 && row.back() == 0) continue;
    std::vector<RingElem> x(sp.dim());
    for (std::size_t i = 0; i < sp.dim(); ++i) {
      if (row[i] < 0 || row[i] >= double(R.size()) || row[i] != std::floor(row[i]))
        fail(ErrorCode::ParseError, "ring element out of range in " + path);
      x[i] = static_cast<RingElem>(row[i]);
    }
    pts.push_back(sp.encode(x));
  }
  return make_point_set(pts);
}

int ring_status(const RingBoundReport& r) {
  if (!r.phi_kakeya || !r.satisfied) return kExitFinding;
  return r.certificate.kind == CertificateKind::WitnessPoly ? kExitWitness : kExitPass;
}

int cmd_ring(const Options& o) {
  const Caps caps = caps_of(o);
  const Ring R = ring_of(o, o.k);
  RingSpace sp(R, require_n(o), caps.enumeration);
  json res = {{"ring", R.describe()}, {"kind", ring_kind_name(R.kind())}, {"n", sp.dim()}};
  int status = kExitPass;
  if (!o.check_embed.empty()) {
    const auto E = read_ring_set(o.check_embed, sp);
    const auto rep = ring_bound_check(sp, E, caps);
    res["check_embed"] = to_json(rep);
    status = ring_status(rep);
  } else {
    if (o.trials == 0) throw ConfigError("--trials must be at least 1");
    json sets = json::array();
    for (std::size_t t = 0; t < o.trials; ++t) {
      const std::uint64_t s = derive_seed(o.seed, t);
      const auto E = grow_minimal_kakeya(sp, s);
      json entry = {{"seed", s}, {"size", E.size()}, {"minkowski_dim", minkowski_dim(R, E.size())}};
      if (R.kind() == RingKind::PolyModXk) {
        const auto rep = ring_bound_check(sp, E, caps);
        entry["report"] = to_json(rep);
        status = std::max(status, ring_status(rep));
      }
      entry["points"] = ring_points_json(sp, E);
      sets.push_back(std::move(entry));
    }
    res["minimal_sets"] = std::move(sets);
  }
  emit_json(o, envelope("ring", o, res));
  return status;
}

int cmd_amplify(const Options& o) {
  const Caps caps = caps_of(o);
  const auto f = input_function(o, caps);
  const std::size_t n = f.dim();
  if (n < 2) throw ConfigError("amplification needs n >= 2");
  const AffineSpace base(f.space().field(), n - 1, caps.enumeration);
  if (o.J == 0 || o.J > base.size()) throw ConfigError("--J must be between 1 and q^(n-1)");
  // J distinct anchors drawn from a sub-stream of the seed.
  Rng rng(derive_seed(o.seed, 0xA11C));
  std::vector<PointIndex> pool(base.size());
  for (PointIndex i = 0; i < base.size(); ++i) pool[i] = i;
  for (std::size_t i = 0; i < o.J; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  const PointSet anchors = make_point_set({pool.begin(), pool.begin() + o.J});

  json res;
  std::optional<AmplifiedInstance> amp;
  try {
    amp = o.best_of > 0 ? amplify(f, anchors, o.M, o.seed, AmplifyMode::BestOfR, o.best_of)
                      : amplify(f, anchors, o.M, o.seed);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InternalError) throw;
    res["finding"] = e.what();
    emit_json(o, envelope("amplify", o, res));
    return kExitFinding;
  }
  const auto& a = *amp;
  res["instance"] = to_json(a);
  res["expected_omega_size"] = expected_omega_size(double(base.size()), o.J, o.M);
  if (o.N) {
    const auto proj = random_flat_projection(f.space().field(), *o.N, n, o.seed);
    const AffineSpace source(f.space().field(), *o.N - 1, caps.enumeration);
    // Omega lives in F^{n-1}; lift it to F^{N-1} by zero padding.
    std::vector<PointIndex> lifted;
    for (PointIndex w : a.omega) {
      Point x(*o.N - 1, 0);
      const Point y = base.decode(w);
      std::copy(y.begin(), y.end(), x.begin());
      lifted.push_back(source.encode(x));
    }
    const auto cs = collision_stats(source, make_point_set(lifted), n, std::max<std::size_t>(o.trials, 1), o.seed);
    res["projection"] = {{"attempts", proj.attempts}, {"fallback", proj.fallback}};
    res["collisions"] = to_json(cs);
  }
  emit_json(o, envelope("amplify", o, res));
  return a.dominates && a.norm_relative_error <= 1e-12 ? kExitPass : kExitFinding;
}

int cmd_kplane(const Options& o) {
  const Caps caps = caps_of(o);
  const auto F = require_field(o);
  const std::size_t n = require_n(o);
  const auto b = kplane_bound(n, o.k, F->q());
  json res = {{"bound", to_json(b)}};
  if (o.bound) {
    std::cout << to_string(b.closed_form) << "\n";
    if (!o.output.empty()) write_atomic(o.output, envelope("kplane", o, res).dump(2) + "\n");
    return kExitPass;
  }
  AffineSpace sp(F, n, caps.enumeration);
  PointSet E;
  if (!o.input.empty()) {
    const auto file = read_point_set(o.input, caps);
    check_matches(o, file.space);
    E = file.points;
  } else {
    E = build_kplane_product(F, n, o.k);
  }
  const auto chk = kplane_kakeya_check(sp, E, o.k);
  res["set_size"] = E.size();
  res["kakeya"] = chk.kakeya;
  if (chk.missing) res["missing"] = *chk.missing;
  if (!chk.kakeya) fail(ErrorCode::NotKakeya, "the set misses a " + std::to_string(o.k) + "-plane direction");
  const bool meets = BigRational(E.size()) >= b.closed_form && BigRational(E.size()) >= b.binomial_form;
  res["meets_bound"] = meets;
  int status = meets ? kExitPass : kExitFinding;
  if (o.certify) {
    const auto cert = kplane_certificate(sp, E, o.k, caps);
    res["certificate"] = to_json(cert);
    if (status == kExitPass && cert.kind == CertificateKind::WitnessPoly) status = kExitWitness;
  }
  emit_json(o, envelope("kplane", o, res));
  return status;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "Field characteristic");
  sub->add_option("--m", o.m, "Extension degree");
  sub->add_option("--q", o.q, "Field order (alternative to --p/--m)");
  sub->add_option("--n", o.n, "Dimension");
  sub->add_option("--k", o.k, "Plane dimension, or ring nilpotency index for 'ring'");
  sub->add_option("--seed", o.seed, "64-bit seed");
  sub->add_option("--input", o.input, "Input file");
  sub->add_option("--output", o.output, "Report path (stdout when absent)");
  sub->add_option("--cap-enum", o.cap_enum, "Enumeration cap");
  sub->add_option("--cap-matrix", o.cap_matrix, "Matrix entry cap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-field Kakeya experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options o;

  auto* maximal = app.add_subcommand("maximal", "Ratio report for a maximal-function estimate");
  add_common(maximal, o);
  maximal->add_option("--theorem", o.theorem, "exp, shoop, nikodym, kplane_conj or mixedq");
  maximal->add_option("--pexp", o.pexp, "Source exponent");
  maximal->add_option("--qexp", o.qexp, "Target exponent");
  maximal->add_option("--max-ratio", o.max_ratio, "Ratios above this are reported as findings");

  auto* certify = app.add_subcommand("certify", "Polynomial-method certificate for a point set");
  add_common(certify, o);
  certify->add_option("--D", o.D, "Degree bound");
  certify->add_option("--mult", o.mult, "Vanishing multiplicity");
  certify->add_flag("--sz", o.sz, "Multiplicity Schwartz-Zippel check on F^k with --mult");

  auto* ensemble = app.add_subcommand("ensemble", "Seeded ratio ensemble as CSV");
  add_common(ensemble, o);
  ensemble->add_option("--theorem", o.theorem, "exp, shoop, nikodym, kplane_conj or mixedq");
  ensemble->add_option("--trials", o.trials, "Number of random functions");
  ensemble->add_option("--pexp", o.pexp, "Source exponent");
  ensemble->add_option("--qexp", o.qexp, "Target exponent");
  ensemble->add_option("--max-ratio", o.max_ratio, "Ratios above this are reported as findings");

  auto* ring = app.add_subcommand("ring", "Kakeya sets over F[x]/x^k and Z/p^k");
  add_common(ring, o);
  ring->add_option("--ring", o.ring, "poly (F[x]/x^k) or int (Z/p^k)");
  ring->add_option("--check-embed", o.check_embed, "Ring point-set file to push forward and certify");
  ring->add_option("--trials", o.trials, "Minimal sets to grow when no file is given");

  auto* amp = app.add_subcommand("amplify", "Translation amplification and flat projections");
  add_common(amp, o);
  amp->add_option("--M", o.M, "Number of translations");
  amp->add_option("--J", o.J, "Number of anchors");
  amp->add_option("--best-of", o.best_of, "Keep the best of R draws (0 draws once)");
  amp->add_option("--N", o.N, "Source dimension for collision statistics");
  amp->add_option("--trials", o.trials, "Projection draws for collision statistics");

  auto* kplane = app.add_subcommand("kplane", "k-plane Kakeya bound and product construction");
  add_common(kplane, o);
  kplane->add_flag("--bound", o.bound, "Print the closed-form bound and exit");
  kplane->add_flag("--certify", o.certify, "Also run the vanishing certificate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (maximal->parsed()) return cmd_maximal(o);
    if (certify->parsed()) return cmd_certify(o);
    if (ensemble->parsed()) return cmd_ensemble(o);
    if (ring->parsed()) return cmd_ring(o);
    if (amp->parsed()) return cmd_amplify(o);
    if (kplane->parsed()) return cmd_kplane(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
