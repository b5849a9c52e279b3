#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "liecomm/rng.hpp"
#include "liecomm/serialize.hpp"

namespace fs = std::filesystem;
using namespace liecomm;

namespace {

struct CommonOpts {
  std::string spec;
  uint64_t seed = 0;
  double tol_a = 1e-7;
  double tol_b = 1e-8;
  int max_iter = 500;
  std::string policy = "max-decrease";
  std::string out;
  std::string format = "jsonl";
};

RootPolicy parse_policy(const std::string& p) {
  if (p == "max-decrease") return RootPolicy::max_decrease;
  if (p == "first") return RootPolicy::first_nonzero;
  if (p == "random") return RootPolicy::random_nonzero;
  throw ParseError("unknown policy '" + p + "'");
}

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_spec) {
  cmd->add_option("--spec", o.spec, "algebra spec: su:N | so:N | sum:<spec>+<spec>")
      ->required(needs_spec);
  cmd->add_option("--seed", o.seed, "PRNG seed recorded in every output");
  cmd->add_option("--tol-a", o.tol_a, "orthogonality budget for A during stage 2");
  cmd->add_option("--tol-b", o.tol_b, "convergence tolerance on the CSA projection");
  cmd->add_option("--max-iter", o.max_iter, "descent iteration cap per stage");
  cmd->add_option("--policy", o.policy, "root selection: max-decrease | first | random");
  cmd->add_option("--out", o.out, "output directory")->required();
  cmd->add_option("--format", o.format, "trace format: json | jsonl | csv");
}

void ensure_out_dir(const std::string& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(ErrorCode::generic, "cannot create output directory: " + out);
}

Element load_element(AlgebraPtr g, const std::string& path) {
  return element_from_json(g, load_json_file(path));
}

int cmd_generate(const CommonOpts& o) {
  const AlgebraSpec spec = AlgebraSpec::parse(o.spec);
  ensure_out_dir(o.out);
  AlgebraPtr g = build_algebra(spec);

  Json meta;
  meta["algebra_spec"] = spec.to_string();
  meta["seed"] = o.seed;
  meta["dim"] = spec.dim();
  meta["rank"] = spec.rank();
  meta["positive_roots"] = spec.positive_root_count();
  write_text_file(o.out + "/meta.json", meta.dump(2) + "\n");

  Rng rng(o.seed);
  const Element a = make_element(g, rng.normal_vec(g->dim));
  const Element b = make_element(g, rng.normal_vec(g->dim));
  write_text_file(o.out + "/A.json", element_to_json(a).dump() + "\n");
  write_text_file(o.out + "/B.json", element_to_json(b).dump() + "\n");
  std::printf("generate %s: dim=%d rank=%d positive_roots=%d -> %s\n",
              spec.to_string().c_str(), spec.dim(), spec.rank(),
              spec.positive_root_count(), o.out.c_str());
  return 0;
}

int cmd_decompose(const CommonOpts& o) {
  const AlgebraSpec spec = AlgebraSpec::parse(o.spec);
  ensure_out_dir(o.out);
  AlgebraPtr g = build_algebra(spec);
  const Subspace h = find_csa(g, o.seed);
  const CartanFrame frame = root_decomposition(g, h, o.seed + 1);

  Json j;
  j["algebra_spec"] = spec.to_string();
  j["seed"] = o.seed;
  j["dim"] = g->dim;
  Json body = frame_to_json(frame);
  for (auto& [k, v] : body.items()) j[k] = v;
  j["identity_ok"] =
      g->dim == frame.rank() + 2 * static_cast<int>(frame.roots.size());
  write_text_file(o.out + "/frame.json", j.dump(2) + "\n");
  std::printf("decompose %s: dim=%d = rank %d + 2*%zu roots -> %s/frame.json\n",
              spec.to_string().c_str(), g->dim, frame.rank(), frame.roots.size(),
              o.out.c_str());
  return 0;
}

void write_trace(const CommonOpts& o, const std::vector<JacobiStep>& steps) {
  if (o.format == "csv")
    write_text_file(o.out + "/trace.csv", trace_to_csv(steps));
  else if (o.format == "json")
    write_text_file(o.out + "/trace.json", trace_to_json_array(steps));
  else
    write_text_file(o.out + "/trace.jsonl", trace_to_jsonl(steps));
}

int cmd_solve(const CommonOpts& o, const std::string& a_path, const std::string& b_path) {
  const AlgebraSpec spec = AlgebraSpec::parse(o.spec);
  ensure_out_dir(o.out);
  AlgebraPtr g = build_algebra(spec);
  const Element a = load_element(g, a_path);
  const Element b = load_element(g, b_path);

  SolveConfig cfg;
  cfg.tol_A = o.tol_a;
  cfg.tol_B = o.tol_b;
  cfg.max_iter = o.max_iter;
  cfg.policy = parse_policy(o.policy);
  cfg.rng_seed = o.seed;

  CommutatorCertificate cert;
  std::vector<JacobiStep> trace;
  try {
    cert = solve_commutator(g, a, b, cfg, &trace);
  } catch (const MaxIterationsExceeded& e) {
    write_trace(o, e.partial().trace);
    std::fprintf(stderr, "solve: %s (partial trace written)\n", e.what());
    return static_cast<int>(e.code());
  }

  write_text_file(o.out + "/certificate.json",
                  certificate_to_json(spec, cert, o.seed).dump(2) + "\n");
  write_trace(o, trace);

  const VerificationReport rep = verify_certificate(g, a, b, cert, o.tol_b);
  std::printf("solve %s: residual_A=%.3e residual_B=%.3e margin=%.3e steps=%zu verify=%s\n",
              spec.to_string().c_str(), cert.residual_a, cert.residual_b,
              cert.regularity_margin, trace.size(), rep.passed() ? "pass" : "FAIL");
  return rep.passed() ? 0 : static_cast<int>(ErrorCode::certificate_invalid);
}

int cmd_verify(const std::string& cert_path, const std::string& a_path,
               const std::string& b_path, double tol) {
  const Json jc = load_json_file(cert_path);
  AlgebraSpec spec;
  try {
    spec = AlgebraSpec::parse(jc.at("algebra_spec").get<std::string>());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("certificate missing algebra_spec: ") + e.what());
  }
  AlgebraPtr g = build_algebra(spec);

  Element a = zero_element(g), b = zero_element(g);
  CommutatorCertificate cert;
  try {
    a = load_element(g, a_path);
    b = load_element(g, b_path);
    cert = certificate_from_json(g, jc);
  } catch (const DimensionMismatch& e) {
    throw ParseError(e.what());  // for verify, wrong dimensions are a parse failure
  }

  const VerificationReport rep = verify_certificate(g, a, b, cert, tol);
  std::printf("check bracket_A: %s (residual %.3e, tol %.3e)\n",
              rep.residual_a_ok ? "pass" : "FAIL", rep.residual_a, tol);
  std::printf("check bracket_B: %s (residual %.3e, tol %.3e)\n",
              rep.residual_b_ok ? "pass" : "FAIL", rep.residual_b, tol);
  std::printf("check regular_X: %s (centralizer dim %d, expected rank %d, abelian residual %.3e)\n",
              rep.regular_ok ? "pass" : "FAIL", rep.centralizer_dim, rep.expected_rank,
              rep.centralizer_abelian_residual);
  std::printf("verdict: %s\n", rep.passed() ? "pass" : "FAIL");
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"commutator certificates in compact semisimple Lie algebras"};
  app.require_subcommand(1);

  CommonOpts gen_o, dec_o, sol_o;
  std::string a_path, b_path, cert_path;
  double verify_tol = 1e-8;

  CLI::App* gen = app.add_subcommand("generate", "emit algebra metadata and seeded elements");
  add_common(gen, gen_o, true);

  CLI::App* dec = app.add_subcommand("decompose", "emit a CSA + root-space frame");
  add_common(dec, dec_o, true);

  CLI::App* sol = app.add_subcommand("solve", "produce a commutator certificate and trace");
  add_common(sol, sol_o, true);
  sol->add_option("A", a_path, "element file (JSON array)")->required();
  sol->add_option("B", b_path, "element file (JSON array)")->required();

  CLI::App* ver = app.add_subcommand("verify", "frame-free certificate check");
  ver->add_option("certificate", cert_path, "certificate JSON")->required();
  ver->add_option("A", a_path, "element file (JSON array)")->required();
  ver->add_option("B", b_path, "element file (JSON array)")->required();
  ver->add_option("--tol", verify_tol, "residual tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(gen_o);
    if (dec->parsed()) return cmd_decompose(dec_o);
    if (sol->parsed()) return cmd_solve(sol_o, a_path, b_path);
    if (ver->parsed()) return cmd_verify(cert_path, a_path, b_path, verify_tol);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
