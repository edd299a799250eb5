// Command-line front end: build Fiedler-like pencils from tuple parameters,
// derive their (extended) block Kronecker forms, enumerate partitions, and
// run the verification suite.
//
// Exit codes: 0 pass, 1 check failed, 2 invalid input, 3 derivation failed,
// 4 ineligible (singular wing factor).
#include <CLI11.hpp>

#include "fiedlerkron/derive.hpp"
#include "fiedlerkron/fixtures.hpp"
#include "fiedlerkron/json_io.hpp"
#include "fiedlerkron/verify.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

namespace {

using namespace fk;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitDerivationFailed = 3;
constexpr int kExitIneligible = 4;

struct Options {
  std::string family = "fiedler";
  std::string fixture;      // p3 | p4 | p6
  std::string input;        // polynomial or pencil JSON path
  std::string spec_file;    // GfprSpec JSON path
  std::string out;
  std::string q, z, lq, rq, lz, rz;
  int h = -1;
  Index n = 2, k = 3;
  long seed = -1;
  bool real_mode = false;
  double tol = -1.0;
  double inf_tol = kInfinityTol;
  Index pq_p = -1, pq_q = -1;  // explicit partition for generic permute
};

double resolve_tol(const Options& o) {
  if (o.tol >= 0) return o.tol;
  if (const char* env = std::getenv("FIEDLERKRON_TOL")) return std::atof(env);
  return 1e-8;
}

void emit(const Options& o, const Json& j) {
  if (o.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(o.out);
    require(f.good(), "cannot open output file " + o.out);
    f << j.dump(2) << "\n";
  }
}

Json load_json(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), "cannot open " + path);
  return Json::parse(f);
}

template <class S>
MatrixPolynomial<S> fixture_poly(const std::string& name) {
  if (name == "p3") return example_poly3<S>();
  if (name == "p4") return example_poly4<S>();
  if (name == "p6") return example_poly6<S>();
  throw std::invalid_argument("unknown fixture " + name + " (use p3, p4 or p6)");
}

template <class S>
MatrixPolynomial<S> random_poly(const Options& o) {
  require(o.seed >= 0, "--seed is required for random polynomials");
  std::mt19937_64 rng(static_cast<uint64_t>(o.seed));
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<DenseMatrix<S>> c;
  for (Index i = 0; i <= o.k; ++i) {
    DenseMatrix<S> m(o.n, o.n);
    for (Index r = 0; r < o.n; ++r)
      for (Index s = 0; s < o.n; ++s) {
        if constexpr (ScalarTraits<S>::is_complex)
          m(r, s) = Cplx(g(rng), g(rng));
        else
          m(r, s) = g(rng);
      }
    c.push_back(m);
  }
  return MatrixPolynomial<S>(std::move(c));
}

template <class S>
MatrixPolynomial<S> resolve_poly(const Options& o) {
  if (!o.fixture.empty()) return fixture_poly<S>(o.fixture);
  if (!o.input.empty()) return polynomial_from_json<S>(load_json(o.input));
  return random_poly<S>(o);
}

bool complex_requested(const Options& o) {
  if (o.real_mode) return false;
  if (!o.fixture.empty()) return false;  // fixtures are integer real matrices
  if (!o.input.empty()) {
    Json j = load_json(o.input);
    const Json& m = j.contains("coeffs") ? j["coeffs"][0] : j["B1"];
    return json_matrix_is_complex(m);
  }
  return true;  // random polynomials default to complex entries
}

template <class S>
GfprSpec<S> resolve_gfpr_spec(const Options& o) {
  GfprSpec<S> s;
  if (!o.spec_file.empty()) {
    Json j = load_json(o.spec_file);
    s.h = j.at("h").get<int>();
    s.q = parse_tuple(j.at("q").get<std::string>());
    s.z = parse_tuple(j.at("z").get<std::string>());
    if (j.contains("lq")) s.lq = parse_tuple(j["lq"].get<std::string>());
    if (j.contains("rq")) s.rq = parse_tuple(j["rq"].get<std::string>());
    if (j.contains("lz")) s.lz = parse_tuple(j["lz"].get<std::string>());
    if (j.contains("rz")) s.rz = parse_tuple(j["rz"].get<std::string>());
    auto read_assign = [&](const char* key) -> std::optional<MatrixAssignment<S>> {
      if (!j.contains(key)) return std::nullopt;
      MatrixAssignment<S> a;
      for (const auto& m : j[key]) a.push_back(matrix_from_json<S>(m));
      return a;
    };
    s.X = read_assign("X");
    s.Y = read_assign("Y");
    s.Z = read_assign("Z");
    s.W = read_assign("W");
    return s;
  }
  require(o.h >= 0, "gfpr needs --h");
  s.h = o.h;
  s.q = parse_tuple(o.q);
  s.z = parse_tuple(o.z);
  s.lq = parse_tuple(o.lq);
  s.rq = parse_tuple(o.rq);
  s.lz = parse_tuple(o.lz);
  s.rz = parse_tuple(o.rz);
  return s;
}

template <class S>
std::string classify(const Options& o) {
  if (o.family == "fiedler") return "fiedler";
  if (o.family == "gfp") {
    IndexTuple q = parse_tuple(o.q), z = parse_tuple(o.z);
    Index k = static_cast<Index>(q.size() + z.size()) - 1;
    return gfp_is_proper(q, z, k) ? "gfp (proper)" : "gfp (nonproper)";
  }
  GfprSpec<S> s = resolve_gfpr_spec<S>(o);
  const bool trivial = !s.X && !s.Y && !s.Z && !s.W;
  return trivial ? "fpr" : "gfpr";
}

template <class S>
BlockPencil<S> build_pencil(const MatrixPolynomial<S>& p, const Options& o) {
  if (o.family == "fiedler") return fiedler(p, parse_tuple(o.q));
  if (o.family == "gfp") return gfp(p, parse_tuple(o.q), parse_tuple(o.z));
  if (o.family == "gfpr") return gfpr(p, resolve_gfpr_spec<S>(o));
  throw std::invalid_argument("unknown family " + o.family);
}

template <class S>
EbkView<S> derive_view(const MatrixPolynomial<S>& p, const Options& o) {
  if (o.family == "fiedler") return fiedler_ebk(p, parse_tuple(o.q));
  if (o.family == "gfp") {
    IndexTuple q = parse_tuple(o.q), z = parse_tuple(o.z);
    if (gfp_is_proper(q, z, p.grade())) return gfp_ebk(p, q, z);
    // nonproper: derive the view of the associated proper pencil
    auto norm = nonproper_normalize(p, q, z);
    return gfp_ebk(p, norm.q_tilde, norm.z_tilde);
  }
  if (o.family == "gfpr") return gfpr_ebk(p, resolve_gfpr_spec<S>(o));
  throw std::invalid_argument("unknown family " + o.family);
}

template <class S>
Json spectrum_to_json(const SpectrumReport& rep) {
  Json j;
  Json fin = Json::array();
  for (const auto& v : rep.finite) fin.push_back(Json::array({v.real(), v.imag()}));
  j["finite"] = std::move(fin);
  j["infCount"] = rep.inf_count;
  return j;
}

template <class S>
int run_build(const Options& o) {
  auto p = resolve_poly<S>(o);
  auto l = build_pencil(p, o);
  Json j;
  j["command"] = "build";
  j["family"] = o.family;
  j["classification"] = classify<S>(o);
  j["pencil"] = pencil_to_json(l);
  emit(o, j);
  return kExitPass;
}

template <class S>
int run_permute(const Options& o) {
  auto p = resolve_poly<S>(o);
  Json j;
  j["command"] = "permute";
  EbkView<S> view = [&] {
    if (o.pq_p >= 0) {
      auto l = build_pencil(p, o);
      auto v = permute_to_ebk(l, o.pq_p, o.pq_q);
      ensure(v.has_value(), "no extended block Kronecker form at the requested (p, q)");
      return *v;
    }
    return derive_view(p, o);
  }();
  j["family"] = o.family;
  j["view"] = view_to_json(view);
  j["asVerified"] = check_as(view.body(), p);
  j["wingRowPositions"] = view.wing_row_positions();
  j["wingColPositions"] = view.wing_col_positions();
  emit(o, j);
  std::ostringstream map;
  map << "extended (" << view.p << "," << view.n() << "," << view.q << "," << view.n()
      << ")-block Kronecker form; body rows/cols from source blocks: rows [";
  for (Index i = 0; i < view.k(); ++i)
    map << (i ? "," : "") << view.row_order[i] << (i + 1 == view.q + 1 ? " |" : "");
  map << "], cols [";
  for (Index i = 0; i < view.k(); ++i)
    map << (i ? "," : "") << view.col_order[i] << (i + 1 == view.p + 1 ? " |" : "");
  map << "]";
  std::cerr << map.str() << "\n";
  return kExitPass;
}

template <class S>
int run_enumerate(const Options& o) {
  auto p = resolve_poly<S>(o);
  BlockPencil<S> l = o.input.empty() || !load_json(o.input).contains("B1")
                         ? build_pencil(p, o)
                         : pencil_from_json<S>(load_json(o.input));
  auto views = enumerate_ebk(l);
  Json j;
  j["command"] = "enumerate";
  Json parts = Json::array();
  for (const auto& v : views) {
    Json e;
    e["p"] = v.p;
    e["q"] = v.q;
    e["asVerified"] = check_as(v.body(), p);
    parts.push_back(std::move(e));
  }
  j["partitions"] = std::move(parts);
  emit(o, j);
  return kExitPass;
}

template <class S>
int run_verify(const Options& o) {
  auto p = resolve_poly<S>(o);
  const double tol = resolve_tol(o);
  Json j;
  j["command"] = "verify";
  EbkView<S> view = derive_view(p, o);
  const bool as_ok = check_as(view.body(), p);
  j["as"] = as_ok;
  bool cas_ok = true;
  const Index k = p.grade();
  for (Index s = 0; s <= 2 * k - 1 && cas_ok; ++s) {
    auto as = antidiagonal_sum(view.permuted, s, 2 * k - 1);
    cas_ok = (s < k - 1) ? as.isZero(0.0) : exactly_equal(as, DenseMatrix<S>(p.coeff(s - k + 1)));
  }
  j["cas"] = cas_ok;
  const bool wings_ok = is_wing(view.k1()) && is_wing(view.k2());
  j["wings"] = wings_ok;
  const bool mb1 = is_minimal_basis_wing(view.k1()), mb2 = is_minimal_basis_wing(view.k2());
  j["minimalBasisFlags"] = Json::array({mb1, mb2});
  if (!as_ok || !cas_ok || !wings_ok) {
    j["pass"] = false;
    j["offender"] = !as_ok ? "AS" : (!cas_ok ? "CAS" : "wing structure");
    emit(o, j);
    return kExitCheckFailed;
  }
  if (!mb1 || !mb2) {
    j["pass"] = false;
    j["eligible"] = false;
    j["offender"] = "singular wing factor";
    emit(o, j);
    return kExitIneligible;
  }
  j["eligible"] = true;
  auto cmp = strong_linearization_check(view.source, p, tol);
  Json sj;
  sj["pass"] = cmp.pass;
  sj["maxRelError"] = cmp.max_rel_error;
  sj["infCounts"] = Json::array({cmp.inf_count_lhs, cmp.inf_count_rhs});
  j["spectral"] = std::move(sj);
  j["pass"] = cmp.pass;
  if (!cmp.pass) j["offender"] = "spectral disagreement with the companion reference";
  emit(o, j);
  return cmp.pass ? kExitPass : kExitCheckFailed;
}

template <class S>
int run_eig(const Options& o) {
  auto p = resolve_poly<S>(o);
  Json j;
  j["command"] = "eig";
  if (o.family == "companion") {
    j["spectrum"] = spectrum_to_json<S>(polyeig_reference(p, o.inf_tol));
  } else {
    auto l = build_pencil(p, o);
    j["spectrum"] = spectrum_to_json<S>(pencil_eigs(l, o.inf_tol));
  }
  emit(o, j);
  return kExitPass;
}

int run_selftest(const Options& o) {
  // Quick structural sweep over all families with the integer fixtures.
  auto p6 = example_poly6<Real>();
  auto p3 = example_poly3<Real>();
  int failures = 0;
  auto report = [&](const char* name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };
  try {
    auto fv = fiedler_ebk(p6, IndexTuple{0, 2, 4, 1, 3, 5});
    report("fiedler_ebk grade 6", fv.p == 2 && fv.q == 3);
    auto gv = gfp_ebk(p6, IndexTuple{3, 4, 2, 0}, IndexTuple{-1, -6, -5});
    report("gfp_ebk grade 6", gv.p == 2 && gv.q == 3);
    for (const auto& s : dl3_specs<Real>()) {
      auto v = gfpr_ebk(p3, s);
      report("gfpr_ebk DL pencil", check_as(v.body(), p3));
    }
    auto norm = nonproper_normalize(example_poly4<Real>(), IndexTuple{3, 1},
                                    IndexTuple{kNegZero, -2, -4});
    report("nonproper normalization", gfp_is_proper(norm.q_tilde, norm.z_tilde, 4));
    report("spectral agreement",
           strong_linearization_check(fv.source, p6, resolve_tol(o)).pass);
  } catch (const std::exception& e) {
    std::cout << "FAIL exception: " << e.what() << "\n";
    ++failures;
  }
  return failures == 0 ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fiedler-like pencils as (extended) block Kronecker pencils"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd, bool with_family = true) {
    if (with_family)
      cmd->add_option("--family", o.family, "fiedler | gfp | gfpr (eig also: companion)");
    cmd->add_option("--fixture", o.fixture, "built-in integer polynomial: p3, p4 or p6");
    cmd->add_option("--input", o.input, "polynomial (or pencil) JSON file");
    cmd->add_option("--spec", o.spec_file, "GfprSpec JSON file");
    cmd->add_option("--n", o.n, "matrix size for random polynomials");
    cmd->add_option("--k", o.k, "grade for random polynomials");
    cmd->add_option("--seed", o.seed, "random seed (required for random polynomials)");
    cmd->add_flag("--real", o.real_mode, "real scalar mode for random polynomials");
    cmd->add_option("--q", o.q, "q tuple, e.g. \"0,2,4,1,3,5\"");
    cmd->add_option("--z", o.z, "z tuple, e.g. \"-1,-6,-5\" (use -0 for the inverse index)");
    cmd->add_option("--lq", o.lq, "left q-side tuple");
    cmd->add_option("--rq", o.rq, "right q-side tuple");
    cmd->add_option("--lz", o.lz, "left z-side tuple");
    cmd->add_option("--rz", o.rz, "right z-side tuple");
    cmd->add_option("--h", o.h, "gfpr partition index h");
    cmd->add_option("--tol", o.tol, "spectral tolerance (or env FIEDLERKRON_TOL)");
    cmd->add_option("--inf-tol", o.inf_tol, "infinite-eigenvalue threshold");
    cmd->add_option("--out", o.out, "output JSON path (default stdout)");
  };

  auto* cb = app.add_subcommand("build", "construct a pencil from tuple parameters");
  add_common(cb);
  auto* cp = app.add_subcommand("permute", "derive the (extended) block Kronecker form");
  add_common(cp);
  cp->add_option("--p", o.pq_p, "explicit wing-row count for the generic recognizer");
  cp->add_option("--qq", o.pq_q, "explicit wing-column count for the generic recognizer");
  auto* ce = app.add_subcommand("enumerate", "list valid identity partitions");
  add_common(ce);
  auto* cv = app.add_subcommand("verify", "run the structural and spectral checks");
  add_common(cv);
  auto* cg = app.add_subcommand("eig", "eigenvalues of the pencil (or companion form)");
  add_common(cg);
  auto* cs = app.add_subcommand("selftest", "run the built-in structural sweep");
  add_common(cs);

  CLI11_PARSE(app, argc, argv);

  try {
    const bool cplx = complex_requested(o);
    auto dispatch = [&](auto runner_real, auto runner_cplx) {
      return cplx ? runner_cplx() : runner_real();
    };
    if (cb->parsed())
      return dispatch([&] { return run_build<fk::Real>(o); },
                      [&] { return run_build<fk::Cplx>(o); });
    if (cp->parsed())
      return dispatch([&] { return run_permute<fk::Real>(o); },
                      [&] { return run_permute<fk::Cplx>(o); });
    if (ce->parsed())
      return dispatch([&] { return run_enumerate<fk::Real>(o); },
                      [&] { return run_enumerate<fk::Cplx>(o); });
    if (cv->parsed())
      return dispatch([&] { return run_verify<fk::Real>(o); },
                      [&] { return run_verify<fk::Cplx>(o); });
    if (cg->parsed())
      return dispatch([&] { return run_eig<fk::Real>(o); },
                      [&] { return run_eig<fk::Cplx>(o); });
    if (cs->parsed()) return run_selftest(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::logic_error& e) {
    std::cerr << "derivation failed: " << e.what() << "\n";
    return kExitDerivationFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
