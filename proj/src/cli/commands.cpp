#include "ovkit/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ovkit/amsp.hpp"
#include "ovkit/cli/generate.hpp"
#include "ovkit/core/combinatorics.hpp"
#include "ovkit/core/dataset.hpp"
#include "ovkit/core/errors.hpp"
#include "ovkit/oracle.hpp"
#include "ovkit/orpoly.hpp"
#include "ovkit/ovdecide.hpp"
#include "ovkit/sketch.hpp"

namespace ovkit::cli {

namespace {

using nlohmann::json;

struct Common {
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  bool oracle = false;
  bool no_timing = false;
};

void add_common(CLI::App* sub, Common& c, bool with_oracle = true) {
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
  if (with_oracle) sub->add_flag("--oracle", c.oracle, "Also run the brute-force oracle");
  sub->add_flag("--no-timing", c.no_timing, "Omit wall-clock fields");
}

Rat parse_open_unit(const std::string& text, const char* name) {
  const Rat value = parse_rational(text);
  if (value <= 0 || value >= 1) throw InvalidArgument(std::string(name) + " must lie in (0, 1)");
  return value;
}

json rational_json(const Rat& value) { return {{"exact", to_string(value)}, {"decimal", to_decimal(value, 6)}}; }

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) items.push_back(item);
  if (items.empty()) throw InvalidArgument("empty list '" + text + "'");
  return items;
}

std::size_t parse_size(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty() || text[0] == '-') throw InvalidArgument("not a count: '" + text + "'");
  return static_cast<std::size_t>(value);
}

std::optional<SketchBackend> parse_backend(const std::string& text) {
  if (text == "auto") return std::nullopt;
  if (text == "dense") return SketchBackend::dense;
  if (text == "sparse") return SketchBackend::sparse;
  throw InvalidArgument("backend must be auto, dense or sparse");
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

json estimate_json(const CountEstimate& e) {
  return {{"value", rational_json(e.value)},
          {"error_bound", rational_json(e.error_bound)},
          {"eps", to_string(e.eps)},
          {"degree", e.degree},
          {"arity", e.arity},
          {"sketch_width", std::to_string(e.sketch_width)}};
}

void add_oracle_fields(json& result, const CountEstimate& e, const BigInt& exact) {
  const Rat deviation = abs_value(Rat(e.value - Rat(exact)));
  result["exact"] = to_string(exact);
  result["deviation"] = rational_json(deviation);
  result["within_bound"] = deviation <= e.error_bound;
}

// ---------------------------------------------------------------------------

struct CountOptions {
  std::string a, b;
  std::vector<std::string> inputs;
  std::string eps = "1/20";
  std::string backend = "auto";
  std::uint64_t dense_cap = kDefaultDenseCap;
};

SketchOptions sketch_options(const CountOptions& o, const Common& c) {
  SketchOptions s;
  s.backend = parse_backend(o.backend);
  s.dense_cap = o.dense_cap;
  s.threads = c.threads;
  return s;
}

json run_count_ov(const CountOptions& o, const Common& c, bool sparse) {
  const Rat eps = parse_open_unit(o.eps, "eps");
  const VectorFamily a = load_family(o.a);
  const VectorFamily b = load_family(o.b);
  const SketchOptions opts = sketch_options(o, c);
  const CountEstimate e = sparse ? count_sparse_ov_approx(a, b, eps, opts) : count_ov_approx(a, b, eps, opts);
  json config = {{"command", sparse ? "count-sparse-ov" : "count-ov"},
                 {"inputs", {o.a, o.b}},
                 {"eps", to_string(eps)},
                 {"backend", o.backend},
                 {"dense_cap", std::to_string(o.dense_cap)},
                 {"oracle", c.oracle}};
  json result = estimate_json(e);
  result["n_a"] = a.size();
  result["n_b"] = b.size();
  result["d"] = a.dim();
  if (sparse) result["sparse_bound"] = std::max(a.sparse_bound().value_or(0), b.sparse_bound().value_or(0));
  if (c.oracle) add_oracle_fields(result, e, oracle::brute_count_ov(a, b));
  return {{"config", config}, {"result", result}};
}

json run_count_kov(const CountOptions& o, const Common& c) {
  const Rat eps = parse_open_unit(o.eps, "eps");
  if (o.inputs.size() < 2) throw InvalidArgument("count-kov needs at least two --in files");
  std::vector<VectorFamily> families;
  for (const auto& path : o.inputs) families.push_back(load_family(path));
  const CountEstimate e = count_kov_approx(families, eps, sketch_options(o, c));
  json config = {{"command", "count-kov"},         {"inputs", o.inputs}, {"eps", to_string(eps)},
                 {"backend", o.backend},           {"dense_cap", std::to_string(o.dense_cap)},
                 {"oracle", c.oracle}};
  json result = estimate_json(e);
  json sizes = json::array();
  for (const auto& f : families) sizes.push_back(f.size());
  result["sizes"] = sizes;
  result["d"] = families.front().dim();
  if (c.oracle) add_oracle_fields(result, e, oracle::brute_count_kov(families));
  return {{"config", config}, {"result", result}};
}

// ---------------------------------------------------------------------------

struct DecideOptions {
  std::string a, b;
  std::optional<std::size_t> level;
  std::optional<std::size_t> group_size;
  std::optional<std::size_t> reps;
  std::string accept_fraction = "3/20";
  std::size_t rank_cap = kDefaultMonomialCap;
};

json params_json(const OvDecideParams& p) {
  return {{"level", p.eps_exponent},        {"eps", to_string(Rat(1) / Rat(mpz_class(1) << p.eps_exponent))},
          {"group_size", p.group_size},     {"group_count", p.group_count},
          {"repetitions", p.repetitions},   {"accept_fraction", to_string(p.accept_fraction)},
          {"rank_cap", p.rank_cap}};
}

json run_decide(const DecideOptions& o, const Common& c) {
  const VectorFamily a = load_family(o.a);
  const VectorFamily b = load_family(o.b);
  if (a.size() < 2) throw InvalidArgument("decide-ov needs n >= 2");
  OvDecideParams p = derive_ov_params(a.size(), a.dim());
  if (o.reps) p.repetitions = *o.reps;
  p.accept_fraction = parse_open_unit(o.accept_fraction, "accept fraction");
  p.rank_cap = o.rank_cap;
  if (o.level) {
    p.eps_exponent = *o.level;
    p.group_size = o.group_size.value_or(default_group_size(*o.level));
    p.group_count = (a.size() + p.group_size - 1) / p.group_size;
  } else {
    p = make_admissible(p, a.size());
    if (o.group_size) {
      p.group_size = *o.group_size;
      p.group_count = (a.size() + p.group_size - 1) / p.group_size;
    }
  }
  const OvDecision r = ov_decide(a, b, p, SeededRng(c.seed), c.threads);
  const auto bounds = group_pair_bounds(p.eps_exponent, p.group_size);
  json config = {{"command", "decide-ov"}, {"inputs", {o.a, o.b}}, {"seed", std::to_string(c.seed)},
                 {"oracle", c.oracle}};
  json result = {{"answer", r.answer},
                 {"max_counter", r.max_counter},
                 {"T", p.repetitions},
                 {"threshold", to_string(p.accept_fraction * Rat(static_cast<unsigned long>(p.repetitions)))},
                 {"params", params_json(p)},
                 {"false_positive_bound", to_string(bounds.false_positive)},
                 {"true_positive_bound", to_string(bounds.true_positive)},
                 {"seed", std::to_string(c.seed)}};
  if (c.oracle) {
    const bool exact = oracle::brute_count_ov(a, b) > 0;
    result["exact_answer"] = exact;
    result["agrees"] = exact == r.answer;
  }
  return {{"config", config}, {"result", result}};
}

// ---------------------------------------------------------------------------

struct MaxIpCliOptions {
  std::string a, b;
  std::string delta = "1/20";
  std::string protocol_eps = "1/2";
  std::size_t calibration_trials = 2000;
  std::size_t proof_cap = kDefaultProofCap;
};

json run_maxip(const MaxIpCliOptions& o, const Common& c) {
  const VectorFamily a = load_family(o.a);
  const VectorFamily b = load_family(o.b);
  MaxIpOptions opts;
  opts.protocol_eps = parse_open_unit(o.protocol_eps, "protocol eps");
  opts.calibration_trials = o.calibration_trials;
  opts.proof_cap = o.proof_cap;
  opts.threads = c.threads;
  const Rat delta = parse_open_unit(o.delta, "delta");
  const MaxIpResult r = max_ip_approx(a, b, delta, SeededRng(c.seed), opts);
  json probes = json::array();
  for (const auto& p : r.probes)
    probes.push_back({{"tau", p.tau}, {"answer", p.answer}, {"repetitions_run", p.repetitions_run},
                      {"max_proofs", p.max_proofs}});
  json config = {{"command", "maxip"},
                 {"inputs", {o.a, o.b}},
                 {"delta", to_string(delta)},
                 {"protocol_eps", to_string(opts.protocol_eps)},
                 {"calibration_trials", o.calibration_trials},
                 {"proof_cap", o.proof_cap},
                 {"seed", std::to_string(c.seed)},
                 {"oracle", c.oracle}};
  json result = {{"v", r.v},
                 {"bracket", {r.v, 2 * r.v}},
                 {"zero_test", r.zero_test},
                 {"k", r.k},
                 {"calls", r.probes.size()},
                 {"call_budget", r.call_budget},
                 {"per_call_eps", to_string(r.per_call_delta)},
                 {"repetitions", r.repetitions},
                 {"group_size", r.group_size},
                 {"probes", probes},
                 {"warnings", r.warnings},
                 {"seed", std::to_string(c.seed)}};
  if (c.oracle) {
    const std::size_t exact = oracle::brute_max_ip(a, b);
    result["exact_max"] = exact;
    result["bracket_holds"] = r.v <= exact && exact <= 2 * r.v;
  }
  return {{"config", config}, {"result", result}};
}

// ---------------------------------------------------------------------------

struct CalibrateOptions {
  std::string eps = "1/4,1/8,1/16";
  std::string tau = "8";
  std::size_t d = 64;
  std::size_t trials = 10000;
};

void run_calibrate(const CalibrateOptions& o, const Common& c, std::ostream& out) {
  std::vector<Rat> eps_values;
  for (const auto& e : split_list(o.eps)) eps_values.push_back(parse_open_unit(e, "eps"));
  std::vector<std::size_t> taus;
  for (const auto& t : split_list(o.tau)) taus.push_back(parse_size(t));
  out << "eps,tau,d,k,envelope,completeness_error,soundness_error,trials\n";
  for (const auto& eps : eps_values) {
    for (const std::size_t tau : taus) {
      const SeededRng rng(c.seed);
      const std::size_t k = calibrate_k(eps, tau, o.d, o.trials, rng);
      SeededRng check = rng.derive(k);
      const ProtocolErrors e = estimate_protocol_errors(o.d, tau, k, o.trials, check);
      out << to_string(eps) << ',' << tau << ',' << o.d << ',' << k << ',' << calibration_envelope(eps) << ','
          << e.completeness_error << ',' << e.soundness_error << ',' << o.trials << '\n';
    }
  }
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::optional<std::size_t> d;
  std::optional<std::string> eps;
  std::string in;
  std::string out;
};

json run_verify(const VerifyOptions& o) {
  OrPolynomial p;
  if (!o.in.empty()) {
    std::ifstream file(o.in);
    if (!file) throw InvalidArgument("cannot open '" + o.in + "'");
    json j;
    try {
      file >> j;
    } catch (const json::exception& e) {
      throw InvalidArgument("malformed polynomial JSON: " + std::string(e.what()));
    }
    p = or_polynomial_from_json(j);
  } else {
    if (!o.d || !o.eps) throw InvalidArgument("verify-poly needs --d and --eps, or --in");
    p = build_or_polynomial(*o.d, parse_open_unit(*o.eps, "eps"));
  }
  const CertificationReport report = certify(p);
  if (!report.certified)
    throw CertificationError("polynomial fails certification at t = " + std::to_string(report.worst_t),
                             report.worst_t);
  if (!o.out.empty()) {
    std::ofstream file(o.out);
    if (!file) throw InvalidArgument("cannot write '" + o.out + "'");
    file << to_json(p).dump(2) << '\n';
  }
  const std::size_t degree = sketch_degree_for(p);
  json config = {{"command", "verify-poly"}, {"in", o.in}, {"out", o.out}};
  json result = {{"d", p.dim},
                 {"eps", to_string(p.eps)},
                 {"degree", p.degree},
                 {"certified", report.certified},
                 {"value_at_zero", to_string(report.value_at_zero)},
                 {"max_deviation", rational_json(report.max_deviation)},
                 {"worst_t", report.worst_t},
                 {"sketch_width", to_string(binomial_prefix_sum(p.dim, degree))}};
  return {{"config", config}, {"result", result}};
}

// ---------------------------------------------------------------------------

struct BenchOptions {
  std::string suite = "sketch";
  std::string n = "64,256,1024";
  std::string d = "10,16";
  std::string eps = "1/10,1/100";
  std::string tau = "2,4,8";
  std::string k = "5";
  std::size_t proof_cap = kDefaultProofCap;
};

void run_bench(const BenchOptions& o, const Common& c, std::ostream& out) {
  auto ms_field = [&](double ms) {
    if (c.no_timing) return std::string("NA");
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(3);
    s << ms;
    return s.str();
  };
  if (o.suite == "sketch") {
    out << "n,d,eps,sketch_width,ms\n";
    for (const auto& n_text : split_list(o.n))
      for (const auto& d_text : split_list(o.d))
        for (const auto& eps_text : split_list(o.eps)) {
          GenerateConfig g;
          g.n = parse_size(n_text);
          g.d = parse_size(d_text);
          g.seed = c.seed;
          const auto instance = generate_instance(g);
          const Rat eps = parse_open_unit(eps_text, "eps");
          SketchOptions s;
          s.threads = c.threads;
          const auto start = std::chrono::steady_clock::now();
          const CountEstimate e = count_ov_approx(instance.families[0], instance.families[1], eps, s);
          const double ms = elapsed_ms(start);
          out << g.n << ',' << g.d << ',' << to_string(eps) << ',' << e.sketch_width << ',' << ms_field(ms) << '\n';
        }
  } else if (o.suite == "proofs") {
    out << "d,tau,k,proofs,ms\n";
    for (const auto& d_text : split_list(o.d))
      for (const auto& tau_text : split_list(o.tau))
        for (const auto& k_text : split_list(o.k)) {
          const std::size_t d = parse_size(d_text), tau = parse_size(tau_text), k = parse_size(k_text);
          SeededRng rng(c.seed);
          const auto challenge = sample_gap_ip_challenge(d, tau, k, rng);
          const auto start = std::chrono::steady_clock::now();
          std::string proofs;
          try {
            proofs = std::to_string(enumerate_min_proofs(challenge, o.proof_cap).size());
          } catch (const ProofSpaceOverflow&) {
            proofs = "overflow";
          }
          const double ms = elapsed_ms(start);
          out << d << ',' << tau << ',' << k << ',' << proofs << ',' << ms_field(ms) << '\n';
        }
  } else {
    throw InvalidArgument("bench suite must be sketch or proofs");
  }
}

// ---------------------------------------------------------------------------

json run_gen(const GenerateConfig& g, const std::string& prefix) {
  const auto instance = generate_instance(g);
  const auto paths = write_instance(prefix, g, instance);
  json files = json::array();
  for (const auto& p : paths) files.push_back(p.string());
  json config = {{"command", "gen"}, {"model", g.model}, {"n", g.n},   {"d", g.d},
                 {"p", g.p},         {"w", g.w},         {"m", g.m},   {"families", g.families},
                 {"seed", std::to_string(g.seed)},      {"out", prefix}};
  return {{"config", config}, {"result", {{"files", files}, {"witness", instance.witness}}}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ovkit: orthogonal vectors, sketches and AM-protocol tools", "ovkit"};
  app.require_subcommand(1);

  Common common;
  std::function<void()> action;
  auto json_action = [&](std::function<json()> fn) {
    return [&, fn] {
      const auto start = std::chrono::steady_clock::now();
      json j = fn();
      if (!common.no_timing) j["wall_time_ms"] = elapsed_ms(start);
      out << j.dump(2) << '\n';
    };
  };

  GenerateConfig gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a reproducible instance");
  gen_cmd->add_option("--model", gen.model, "uniform | planted-orthogonal | planted-ip | sparse")->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Vectors per family")->capture_default_str();
  gen_cmd->add_option("--d", gen.d, "Dimension (sparse: weight bound)")->capture_default_str();
  gen_cmd->add_option("--p", gen.p, "Bit density")->capture_default_str();
  gen_cmd->add_option("--w", gen.w, "Planted inner product (planted-ip)");
  gen_cmd->add_option("--m", gen.m, "Universe size (sparse)");
  gen_cmd->add_option("--families", gen.families, "Number of families")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "Output prefix")->required();
  gen_cmd->add_option("--threads", common.threads, "Worker threads (generation is sequential)")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
  gen_cmd->add_flag("--no-timing", common.no_timing, "Omit wall-clock fields");
  gen_cmd->callback([&] { action = json_action([&] { return run_gen(gen, gen_out); }); });

  CountOptions count;
  auto add_count = [&](const char* name, const char* help, bool pair) {
    auto* cmd = app.add_subcommand(name, help);
    if (pair) {
      cmd->add_option("--a", count.a, "First family file")->required();
      cmd->add_option("--b", count.b, "Second family file")->required();
    } else {
      cmd->add_option("--in", count.inputs, "Family files (two or more)")->required();
    }
    cmd->add_option("--eps", count.eps, "Additive error")->capture_default_str();
    cmd->add_option("--backend", count.backend, "auto | dense | sparse")->capture_default_str();
    cmd->add_option("--dense-cap", count.dense_cap, "Largest dense sketch width")->capture_default_str();
    add_common(cmd, common);
    return cmd;
  };
  add_count("count-ov", "Approximate #OV with additive error eps n^2", true)->callback([&] {
    action = json_action([&] { return run_count_ov(count, common, false); });
  });
  add_count("count-kov", "Approximate #k-OV with additive error eps prod n_i", false)->callback([&] {
    action = json_action([&] { return run_count_kov(count, common); });
  });
  add_count("count-sparse-ov", "Approximate #OV for sparse families", true)->callback([&] {
    action = json_action([&] { return run_count_ov(count, common, true); });
  });

  DecideOptions decide;
  auto* decide_cmd = app.add_subcommand("decide-ov", "Randomized OV decision");
  decide_cmd->add_option("--a", decide.a, "First family file")->required();
  decide_cmd->add_option("--b", decide.b, "Second family file")->required();
  decide_cmd->add_option("--level", decide.level, "Polynomial level L (eps = 2^-L); default: smallest admissible");
  decide_cmd->add_option("--group-size", decide.group_size, "Group size m");
  decide_cmd->add_option("--reps", decide.reps, "Repetitions T (default ceil(1000 ln n))");
  decide_cmd->add_option("--accept-fraction", decide.accept_fraction, "Counter threshold fraction")
      ->capture_default_str();
  decide_cmd->add_option("--rank-cap", decide.rank_cap, "Monomial cap per polynomial")->capture_default_str();
  add_common(decide_cmd, common);
  decide_cmd->callback([&] { action = json_action([&] { return run_decide(decide, common); }); });

  MaxIpCliOptions maxip;
  auto* maxip_cmd = app.add_subcommand("maxip", "2-approximate Max-IP");
  maxip_cmd->add_option("--a", maxip.a, "First family file")->required();
  maxip_cmd->add_option("--b", maxip.b, "Second family file")->required();
  maxip_cmd->add_option("--delta", maxip.delta, "Overall failure probability")->capture_default_str();
  maxip_cmd->add_option("--protocol-eps", maxip.protocol_eps, "Gap protocol error")->capture_default_str();
  maxip_cmd->add_option("--calibration-trials", maxip.calibration_trials, "Monte Carlo trials for k")
      ->capture_default_str();
  maxip_cmd->add_option("--proof-cap", maxip.proof_cap, "Proof-space cap")->capture_default_str();
  add_common(maxip_cmd, common);
  maxip_cmd->callback([&] { action = json_action([&] { return run_maxip(maxip, common); }); });

  CalibrateOptions calib;
  auto* calib_cmd = app.add_subcommand("calibrate", "Calibrate the gap protocol's k (CSV)");
  calib_cmd->add_option("--eps", calib.eps, "Comma-separated protocol errors")->capture_default_str();
  calib_cmd->add_option("--tau", calib.tau, "Comma-separated tau values")->capture_default_str();
  calib_cmd->add_option("--d", calib.d, "Dimension")->capture_default_str();
  calib_cmd->add_option("--trials", calib.trials, "Monte Carlo trials")->capture_default_str();
  add_common(calib_cmd, common, false);
  calib_cmd->callback([&] { action = [&] { run_calibrate(calib, common, out); }; });

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify-poly", "Build and certify the approximate OR polynomial");
  verify_cmd->add_option("--d", verify.d, "Dimension");
  verify_cmd->add_option("--eps", verify.eps, "Approximation error");
  verify_cmd->add_option("--in", verify.in, "Polynomial JSON to re-certify");
  verify_cmd->add_option("--out", verify.out, "Write the polynomial JSON here");
  add_common(verify_cmd, common, false);
  verify_cmd->callback([&] { action = json_action([&] { return run_verify(verify); }); });

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark grid (CSV)");
  bench_cmd->add_option("--suite", bench.suite, "sketch | proofs")->capture_default_str();
  bench_cmd->add_option("--n", bench.n, "Comma-separated n values")->capture_default_str();
  bench_cmd->add_option("--d", bench.d, "Comma-separated d values")->capture_default_str();
  bench_cmd->add_option("--eps", bench.eps, "Comma-separated eps values")->capture_default_str();
  bench_cmd->add_option("--tau", bench.tau, "Comma-separated tau values (proofs)")->capture_default_str();
  bench_cmd->add_option("--k", bench.k, "Comma-separated k values (proofs)")->capture_default_str();
  bench_cmd->add_option("--proof-cap", bench.proof_cap, "Proof-space cap")->capture_default_str();
  add_common(bench_cmd, common, false);
  bench_cmd->callback([&] { action = [&] { run_bench(bench, common, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg, help;
    const int code = app.exit(e, help, msg);
    out << help.str();
    err << msg.str();
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const CertificationError& e) {
    err << "certification failure: " << e.what() << '\n';
    return kExitCertification;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const InvalidArgument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace ovkit::cli
