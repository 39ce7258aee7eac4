#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ocsep/bounds.hpp"
#include "ocsep/conj.hpp"
#include "ocsep/io.hpp"
#include "ocsep/lr.hpp"
#include "ocsep/nullcone.hpp"
#include "ocsep/pivot.hpp"
#include "ocsep/zeta.hpp"

namespace {

using ocsep::io::json;

constexpr int kExitNegative = 0;   // equivalent / inside / evaluated
constexpr int kExitSeparated = 1;  // separated / outside
constexpr int kExitInput = 2;
constexpr int kExitEnvironment = 3;
constexpr int kExitInternal = 4;

struct CommonFlags {
  std::string field_override;
  std::string out_path;
  std::uint64_t seed = 0;
  std::size_t trials = 40;
  std::size_t threads = 1;
  bool force_charpoly = false;
};

void add_override_flag(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--field-override", f.field_override,
                  "reinterpret inputs over this field (\"rational\" or a "
                  "prime); rational literals become a*b^-1 mod p");
}

void add_out_flag(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--out", f.out_path, "also write the result JSON here");
}

std::optional<ocsep::FieldSpec> override_spec(const CommonFlags& f) {
  if (f.field_override.empty()) return std::nullopt;
  return ocsep::io::field_from_flag(f.field_override);
}

// Dispatch a two-input command over the concrete field of the loaded pair.
template <typename Fn>
int with_pair(const ocsep::io::LoadedTuple& a, const ocsep::io::LoadedTuple& b,
              Fn&& fn) {
  if (!(a.spec == b.spec))
    throw ocsep::InputError("field mismatch between the two inputs");
  if (a.spec.is_rational())
    return fn(std::get<ocsep::MatTuple<ocsep::RationalField>>(a.tuple),
              std::get<ocsep::MatTuple<ocsep::RationalField>>(b.tuple));
  return fn(std::get<ocsep::MatTuple<ocsep::PrimeField>>(a.tuple),
            std::get<ocsep::MatTuple<ocsep::PrimeField>>(b.tuple));
}

template <typename Fn>
int with_single(const ocsep::io::LoadedTuple& a, Fn&& fn) {
  if (a.spec.is_rational())
    return fn(std::get<ocsep::MatTuple<ocsep::RationalField>>(a.tuple));
  return fn(std::get<ocsep::MatTuple<ocsep::PrimeField>>(a.tuple));
}

json input_entry(const ocsep::io::LoadedTuple& t) {
  json j;
  j["path"] = t.path;
  j["sha256"] = t.sha256;
  return j;
}

// Degree-vs-catalog record for an emitted witness. The conjugation names
// are proven ceilings for the corresponding regimes; the composed left-right
// name is the reduction-form target the witnesses are audited against.
template <typename F>
json bound_check_json(const F& field, const ocsep::Witness<F>& w,
                      std::size_t n, std::size_t m) {
  const std::uint64_t p = field.spec().characteristic();
  const bool char0_regime = p == 0 || p > n;
  std::string name;
  if (std::holds_alternative<ocsep::TraceWitness>(w.v))
    name = "sep-conj-char0";
  else if (std::holds_alternative<ocsep::SigmaWitness>(w.v))
    name = "sep-conj-general";
  else if (std::holds_alternative<ocsep::LinDetWitness<F>>(w.v))
    name = char0_regime ? "sep-lr-char0" : "sep-lr-general";
  else
    name = char0_regime ? "sep-lr-reduction-char0" : "sep-lr-reduction-general";
  mpz_class bound = ocsep::bound_value(name, n, m);
  json j;
  j["degree"] = w.degree;
  j["name"] = name;
  j["bound"] = bound.get_str();
  j["ok"] = mpz_class(static_cast<unsigned long>(w.degree)) <= bound;
  return j;
}

template <typename F>
json values_json(const F& field,
                 const std::pair<typename F::Elem, typename F::Elem>& v) {
  json j = json::array();
  j.push_back(ocsep::io::scalar_to_json(field, v.first));
  j.push_back(ocsep::io::scalar_to_json(field, v.second));
  return j;
}

template <typename F>
json nullcone_json(const F& field, const ocsep::NullConeReport<F>& rep,
                   std::size_t n, std::size_t m) {
  json j;
  j["verdict"] = rep.outside ? "outside" : "probably-inside";
  j["d_used"] = rep.d_used;
  j["trials"] = rep.trials;
  if (rep.success_trial)
    j["success_trial"] = *rep.success_trial;
  else
    j["success_trial"] = nullptr;
  j["failure_bound"] = rep.failure_bound.get_str();
  j["seed"] = rep.rng_seed;
  if (rep.certificate) {
    j["certificate"] = ocsep::io::witness_to_json(field, *rep.certificate, n);
    j["bound_check"] = bound_check_json(field, *rep.certificate, n, m);
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

int emit(json& j, const Timer& timer, const CommonFlags& flags, int code) {
  j["timing_ms"] = timer.ms();
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!flags.out_path.empty()) ocsep::io::write_file(flags.out_path, text);
  return code;
}

int cmd_sep_conj(const std::string& path_a, const std::string& path_b,
                 const CommonFlags& flags) {
  Timer timer;
  auto ospec = override_spec(flags);
  auto la = ocsep::io::load_tuple(path_a, ospec);
  auto lb = ocsep::io::load_tuple(path_b, ospec);
  return with_pair(la, lb, [&](const auto& a, const auto& b) {
    const auto& field = a.field;
    ocsep::ConjOptions opts;
    opts.force_charpoly = flags.force_charpoly;
    auto res = ocsep::separate_conj(a, b, opts);

    json j;
    j["schema"] = ocsep::io::kSchemaVersion;
    j["command"] = "sep-conj";
    j["inputs"] = json::array({input_entry(la), input_entry(lb)});
    j["field"] = ocsep::io::field_to_json(field.spec());
    const bool sep = res.verdict == ocsep::Verdict::Separated;
    j["verdict"] = sep ? "separated" : "equivalent";
    if (sep) {
      j["witness"] = ocsep::io::witness_to_json(field, *res.witness, a.n);
      j["values"] = values_json(field, *res.values);
      j["bound_check"] = bound_check_json(field, *res.witness, a.n, a.size());
    } else {
      j["witness"] = nullptr;
      j["values"] = nullptr;
    }
    j["stats"] = {{"pivot_count", res.pivot_count},
                  {"max_pivot_length", res.max_pivot_length}};
    return emit(j, timer, flags, sep ? kExitSeparated : kExitNegative);
  });
}

int cmd_sep_lr(const std::string& path_a, const std::string& path_b,
               const CommonFlags& flags) {
  Timer timer;
  auto ospec = override_spec(flags);
  auto la = ocsep::io::load_tuple(path_a, ospec);
  auto lb = ocsep::io::load_tuple(path_b, ospec);
  return with_pair(la, lb, [&](const auto& a, const auto& b) {
    const auto& field = a.field;
    ocsep::LrOptions opts;
    opts.trials = flags.trials;
    opts.seed = flags.seed;
    opts.threads = flags.threads;
    opts.force_charpoly = flags.force_charpoly;
    auto res = ocsep::separate_lr(a, b, opts);

    json j;
    j["schema"] = ocsep::io::kSchemaVersion;
    j["command"] = "sep-lr";
    j["inputs"] = json::array({input_entry(la), input_entry(lb)});
    j["field"] = ocsep::io::field_to_json(field.spec());
    const bool sep = res.verdict == ocsep::Verdict::Separated;
    j["verdict"] = sep ? "separated" : "equivalent";
    if (sep) {
      j["witness"] = ocsep::io::witness_to_json(field, *res.witness, a.n);
      j["values"] = values_json(field, *res.values);
      j["bound_check"] = bound_check_json(field, *res.witness, a.n, a.size());
      j["d_used"] = *res.d_used;
    } else {
      j["witness"] = nullptr;
      j["values"] = nullptr;
    }
    j["randomized"] = res.randomized;
    j["failure_bound"] = res.failure_bound.get_str();
    j["seed"] = res.seed;
    j["trials"] = flags.trials;
    j["nullcone_reports"] = {
        {"a", nullcone_json(field, res.report_a, a.n, a.size())},
        {"b", nullcone_json(field, res.report_b, b.n, b.size())}};
    if (res.inner) {
      j["inner_stats"] = {{"pivot_count", res.inner->pivot_count},
                          {"max_pivot_length", res.inner->max_pivot_length}};
    }
    return emit(j, timer, flags, sep ? kExitSeparated : kExitNegative);
  });
}

int cmd_nullcone(const std::string& path, std::size_t d_flag,
                 const CommonFlags& flags) {
  Timer timer;
  auto lx = ocsep::io::load_tuple(path, override_spec(flags));
  return with_single(lx, [&](const auto& x) {
    const auto& field = x.field;
    const std::size_t d = d_flag ? d_flag : (x.n > 1 ? x.n - 1 : 1);
    ocsep::NullConeOptions opts;
    opts.trials = flags.trials;
    opts.seed = flags.seed;
    opts.threads = flags.threads;
    auto rep = ocsep::nullcone_test(x, d, opts);

    json j;
    j["schema"] = ocsep::io::kSchemaVersion;
    j["command"] = "nullcone";
    j["inputs"] = json::array({input_entry(lx)});
    j["field"] = ocsep::io::field_to_json(field.spec());
    j["report"] = nullcone_json(field, rep, x.n, x.size());
    return emit(j, timer, flags, rep.outside ? kExitSeparated : kExitNegative);
  });
}

int cmd_pivot(const std::string& path, const CommonFlags& flags) {
  Timer timer;
  auto lx = ocsep::io::load_tuple(path, override_spec(flags));
  return with_single(lx, [&](const auto& x) {
    auto basis = ocsep::pivot_basis(x);
    json words = json::array();
    for (const auto& [w, mat] : basis.pivots)
      words.push_back(ocsep::io::word_to_json(w));
    mpz_class bound = ocsep::pivot_length_bound(x.n);
    json j;
    j["schema"] = ocsep::io::kSchemaVersion;
    j["command"] = "pivot";
    j["inputs"] = json::array({input_entry(lx)});
    j["field"] = ocsep::io::field_to_json(x.field.spec());
    j["pivots"] = std::move(words);
    j["dim"] = basis.dim();
    j["max_length"] = basis.max_word_length();
    j["length_bound"] = bound.get_str();
    return emit(j, timer, flags, kExitNegative);
  });
}

int cmd_eval(const std::string& witness_path, const std::string& tuple_path,
             const CommonFlags& flags) {
  Timer timer;
  auto ospec = override_spec(flags);
  auto lx = ocsep::io::load_tuple(tuple_path, ospec);
  std::string wbytes = ocsep::io::read_file(witness_path);
  json wj = ocsep::io::parse_json(wbytes, witness_path);
  if (!wj.is_object() || !wj.contains("schema") ||
      wj.at("schema") != ocsep::io::kSchemaVersion)
    throw ocsep::InputError(witness_path +
                            ": missing or unsupported schema version");
  const bool lenient = ospec.has_value();
  if (!lenient && wj.contains("field")) {
    if (!(ocsep::io::field_from_json(wj.at("field")) == lx.spec))
      throw ocsep::InputError("witness and tuple declare different fields");
  }
  return with_single(lx, [&](const auto& x) {
    using FieldT = std::decay_t<decltype(x.field)>;
    auto w = ocsep::io::witness_from_json<FieldT>(x.field, wj, x.n, x.size(),
                                                  lenient);
    auto value = ocsep::eval_witness(w, x);
    json j;
    j["schema"] = ocsep::io::kSchemaVersion;
    j["command"] = "eval";
    j["inputs"] = json::array();
    json we;
    we["path"] = witness_path;
    we["sha256"] = ocsep::io::sha256_hex(wbytes);
    j["inputs"].push_back(std::move(we));
    j["inputs"].push_back(input_entry(lx));
    j["field"] = ocsep::io::field_to_json(x.field.spec());
    j["degree"] = w.degree;
    j["value"] = ocsep::io::scalar_to_json(x.field, value);
    return emit(j, timer, flags, kExitNegative);
  });
}

int cmd_bounds(const std::string& name, std::uint64_t n, std::uint64_t m,
               const CommonFlags& flags) {
  Timer timer;
  json j;
  j["schema"] = ocsep::io::kSchemaVersion;
  j["command"] = "bounds";
  j["name"] = name;
  j["n"] = n;
  j["m"] = m;
  j["value"] = ocsep::bound_value(name, n, m).get_str();
  return emit(j, timer, flags, kExitNegative);
}

int cmd_zeta_check(std::size_t n, std::size_t d, std::size_t k, std::size_t m,
                   std::size_t samples, const std::string& field_flag,
                   const CommonFlags& flags) {
  Timer timer;
  ocsep::FieldSpec spec = ocsep::io::field_from_flag(field_flag);
  ocsep::ZetaCheckReport rep;
  if (spec.is_rational()) {
    rep = ocsep::zeta_check(ocsep::RationalField{}, n, d, k, m, samples,
                            flags.seed);
  } else {
    rep = ocsep::zeta_check(ocsep::PrimeField(spec.p), n, d, k, m, samples,
                            flags.seed);
  }
  json j;
  j["schema"] = ocsep::io::kSchemaVersion;
  j["command"] = "zeta-check";
  j["field"] = ocsep::io::field_to_json(spec);
  j["n"] = n;
  j["d"] = d;
  j["k"] = k;
  j["m"] = m;
  j["samples"] = rep.samples;
  j["seed"] = flags.seed;
  j["failures"] = {{"equivariance", rep.equivariance_failures},
                   {"block_equivariance", rep.block_equivariance_failures},
                   {"det_factorization", rep.det_factor_failures},
                   {"lambda_assembly", rep.lambda_failures}};
  j["ok"] = rep.ok();
  return emit(j, timer, flags, rep.ok() ? kExitNegative : kExitInternal);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact certificates for orbit-closure intersection of matrix tuples\n"
      "under simultaneous conjugation and the left-right action"};
  app.require_subcommand(1);
  CommonFlags flags;

  std::string path_a, path_b, witness_path, bound_name, field_flag = "rational";
  std::uint64_t bn = 1, bm = 1;
  std::size_t d_flag = 0, zn = 2, zd = 2, zk = 1, zm = 2, samples = 50;

  auto* sep_conj = app.add_subcommand(
      "sep-conj", "decide conjugation orbit-closure intersection");
  sep_conj->add_option("a", path_a, "first tuple file")->required();
  sep_conj->add_option("b", path_b, "second tuple file")->required();
  sep_conj->add_flag("--force-charpoly-path", flags.force_charpoly,
                     "compare all characteristic coefficients even when "
                     "traces would do");
  add_override_flag(sep_conj, flags);
  add_out_flag(sep_conj, flags);

  auto* sep_lr = app.add_subcommand(
      "sep-lr", "decide left-right orbit-closure intersection");
  sep_lr->add_option("a", path_a, "first tuple file")->required();
  sep_lr->add_option("b", path_b, "second tuple file")->required();
  sep_lr->add_option("--seed", flags.seed, "RNG seed (default 0)");
  sep_lr->add_option("--trials", flags.trials,
                     "null-cone sampling trials (default 40)");
  sep_lr->add_option("--threads", flags.threads, "parallel trial workers");
  sep_lr->add_flag("--force-charpoly-path", flags.force_charpoly,
                   "force the characteristic-coefficient comparison inside");
  add_override_flag(sep_lr, flags);
  add_out_flag(sep_lr, flags);

  auto* nullcone = app.add_subcommand(
      "nullcone", "left-right null-cone membership with certificate");
  nullcone->add_option("x", path_a, "tuple file")->required();
  nullcone->add_option("--d", d_flag, "coefficient size (default n-1)");
  nullcone->add_option("--seed", flags.seed, "RNG seed (default 0)");
  nullcone->add_option("--trials", flags.trials, "sampling trials");
  nullcone->add_option("--threads", flags.threads, "parallel trial workers");
  add_override_flag(nullcone, flags);
  add_out_flag(nullcone, flags);

  auto* pivot = app.add_subcommand(
      "pivot", "pivot word basis of the generated algebra");
  pivot->add_option("x", path_a, "tuple file")->required();
  add_override_flag(pivot, flags);
  add_out_flag(pivot, flags);

  auto* eval = app.add_subcommand(
      "eval", "evaluate a stored witness on a tuple");
  eval->add_option("--witness", witness_path, "witness file")->required();
  eval->add_option("x", path_a, "tuple file")->required();
  add_override_flag(eval, flags);
  add_out_flag(eval, flags);

  auto* bounds = app.add_subcommand("bounds", "degree bound catalog");
  bounds->add_option("--name", bound_name, "bound name")->required();
  bounds->add_option("--n", bn, "matrix size")->required();
  bounds->add_option("--m", bm, "tuple arity (default 1)");
  add_out_flag(bounds, flags);

  auto* zeta = app.add_subcommand(
      "zeta-check", "run the blow-up equivariance property suite");
  zeta->add_option("--n", zn, "matrix size (default 2)");
  zeta->add_option("--d", zd, "coefficient size (default 2)");
  zeta->add_option("--k", zk, "multiplicity (default 1)");
  zeta->add_option("--m", zm, "tuple arity (default 2)");
  zeta->add_option("--samples", samples, "sample count (default 50)");
  zeta->add_option("--seed", flags.seed, "RNG seed");
  zeta->add_option("--field", field_flag,
                   "\"rational\" or a prime (default rational)");
  add_out_flag(zeta, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(sep_conj)) return cmd_sep_conj(path_a, path_b, flags);
    if (app.got_subcommand(sep_lr)) return cmd_sep_lr(path_a, path_b, flags);
    if (app.got_subcommand(nullcone)) return cmd_nullcone(path_a, d_flag, flags);
    if (app.got_subcommand(pivot)) return cmd_pivot(path_a, flags);
    if (app.got_subcommand(eval)) return cmd_eval(witness_path, path_a, flags);
    if (app.got_subcommand(bounds)) return cmd_bounds(bound_name, bn, bm, flags);
    if (app.got_subcommand(zeta))
      return cmd_zeta_check(zn, zd, zk, zm, samples, field_flag, flags);
  } catch (const ocsep::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ocsep::FieldError& e) {
    std::cerr << "environment error: " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const ocsep::Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
