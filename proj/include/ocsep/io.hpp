#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ocsep/common.hpp"
#include "ocsep/field.hpp"
#include "ocsep/invariants.hpp"
#include "ocsep/matrix.hpp"
#include "ocsep/words.hpp"

namespace ocsep::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// --- plumbing (io.cpp) --------------------------------------------------

std::string sha256_hex(const std::string& bytes);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);
json parse_json(const std::string& bytes, const std::string& what);

json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const json& j);
// CLI flag forms: "rational" | "q" | a prime number.
FieldSpec field_from_flag(const std::string& flag);

// Strict literal: "-a/b" or "-a" decimal strings only, canonical output.
mpq_class rational_from_literal(const std::string& s);
std::string rational_to_literal(const mpq_class& v);

// --- scalars --------------------------------------------------------------

inline json scalar_to_json(const RationalField&, const mpq_class& v) {
  return rational_to_literal(v);
}
inline json scalar_to_json(const PrimeField&, std::uint64_t v) { return v; }

// Strict mode enforces the declared field's literal form; lenient mode
// (active under --field-override) coerces the other field's form, mapping
// "a/b" to a * b^-1 mod p and reducing integers mod p.
inline mpq_class scalar_from_json(const RationalField&, const json& j,
                                  bool lenient) {
  if (j.is_string()) return rational_from_literal(j.get<std::string>());
  if (lenient && j.is_number_integer())
    return mpq_class(static_cast<long>(j.get<std::int64_t>()));
  throw InputError("rational scalars must be decimal strings like \"a/b\"");
}

inline std::uint64_t scalar_from_json(const PrimeField& f, const json& j,
                                      bool lenient) {
  if (j.is_number_integer()) {
    // Parsed documents store non-negative values as unsigned, but values
    // built in memory may carry a signed type; only the sign matters here.
    if (j.is_number_unsigned() || j.get<std::int64_t>() >= 0) {
      std::uint64_t v = j.get<std::uint64_t>();
      if (v < f.modulus()) return v;
      if (lenient) return v % f.modulus();
      throw InputError("scalar " + std::to_string(v) + " outside [0, " +
                       std::to_string(f.modulus()) + ")");
    }
    if (lenient) return f.from_int(j.get<std::int64_t>());
    throw InputError("negative scalar in a GF(p) file");
  }
  if (lenient && j.is_string()) {
    mpq_class q = rational_from_literal(j.get<std::string>());
    std::uint64_t den = f.from_mpz(q.get_den());
    if (den == 0)
      throw InputError("rational literal has denominator divisible by " +
                       std::to_string(f.modulus()));
    return f.mul(f.from_mpz(q.get_num()), f.inv(den));
  }
  throw InputError("GF(p) scalars must be integers in [0, p)");
}

// --- matrices, tuples, words ----------------------------------------------

template <typename F>
json matrix_to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(scalar_to_json(m.field(), m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename F>
Matrix<F> matrix_from_json(const F& field, const json& j, std::size_t rows,
                           std::size_t cols, bool lenient) {
  if (!j.is_array() || j.size() != rows)
    throw InputError("matrix must have " + std::to_string(rows) + " rows");
  Matrix<F> m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw InputError("matrix row must have " + std::to_string(cols) +
                       " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m.at(r, c) = scalar_from_json(field, j[r][c], lenient);
  }
  return m;
}

json word_to_json(const Word& w);
Word word_from_json(const json& j, std::size_t m);

// --- tuple files ------------------------------------------------------------

using TupleVariant = std::variant<MatTuple<RationalField>, MatTuple<PrimeField>>;

struct LoadedTuple {
  TupleVariant tuple;
  FieldSpec spec;      // effective field after any override
  std::string path;
  std::string sha256;  // of the raw file bytes
};

template <typename F>
json tuple_to_json(const MatTuple<F>& t) {
  json j;
  j["schema"] = kSchemaVersion;
  j["field"] = field_to_json(t.field.spec());
  j["n"] = t.n;
  j["m"] = t.size();
  json mats = json::array();
  for (std::size_t i = 0; i < t.size(); ++i)
    mats.push_back(matrix_to_json(t[i]));
  j["matrices"] = std::move(mats);
  return j;
}

template <typename F>
MatTuple<F> tuple_from_json(const F& field, const json& j, bool lenient) {
  if (!j.contains("n") || !j.contains("m") || !j.contains("matrices"))
    throw InputError("tuple file needs n, m and matrices");
  const std::size_t n = j.at("n").get<std::size_t>();
  const std::size_t m = j.at("m").get<std::size_t>();
  if (n < 1) throw InputError("tuple needs n >= 1");
  const json& mats = j.at("matrices");
  if (!mats.is_array() || mats.size() != m)
    throw InputError("matrices array must have m entries");
  std::vector<Matrix<F>> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    out.push_back(matrix_from_json(field, mats[i], n, n, lenient));
  return MatTuple<F>(field, n, std::move(out));
}

LoadedTuple load_tuple(const std::string& path,
                       const std::optional<FieldSpec>& override_spec);

// --- witnesses ---------------------------------------------------------------

template <typename F>
json inner_to_json(const F&, const InnerWitness& w) {
  json j;
  if (const auto* t = std::get_if<TraceWitness>(&w)) {
    j["variant"] = "trace-word";
    j["word"] = word_to_json(t->w);
  } else {
    const auto& s = std::get<SigmaWitness>(w);
    j["variant"] = "sigma-word";
    j["j"] = s.j;
    j["word"] = word_to_json(s.w);
  }
  return j;
}

template <typename F>
json witness_to_json(const F& field, const Witness<F>& w, std::size_t n) {
  json j;
  j["schema"] = kSchemaVersion;
  j["field"] = field_to_json(field.spec());
  j["n"] = n;
  if (const auto* t = std::get_if<TraceWitness>(&w.v)) {
    j["variant"] = "trace-word";
    j["word"] = word_to_json(t->w);
  } else if (const auto* s = std::get_if<SigmaWitness>(&w.v)) {
    j["variant"] = "sigma-word";
    j["j"] = s->j;
    j["word"] = word_to_json(s->w);
  } else if (const auto* l = std::get_if<LinDetWitness<F>>(&w.v)) {
    j["variant"] = "lin-det";
    j["d"] = l->t.n;
    json mats = json::array();
    for (std::size_t i = 0; i < l->t.size(); ++i)
      mats.push_back(matrix_to_json(l->t[i]));
    j["t"] = std::move(mats);
  } else {
    const auto& c = std::get<ComposedLRWitness<F>>(w.v);
    j["variant"] = "composed-lr";
    j["d"] = c.d;
    j["p"] = matrix_to_json(c.p);
    j["inner"] = inner_to_json(field, c.inner);
  }
  j["degree"] = w.degree;
  return j;
}

template <typename F>
InnerWitness inner_from_json(const F&, const json& j, std::size_t arity) {
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "trace-word")
    return TraceWitness{word_from_json(j.at("word"), arity)};
  if (variant == "sigma-word")
    return SigmaWitness{j.at("j").get<std::size_t>(),
                        word_from_json(j.at("word"), arity)};
  throw InputError("inner witness must be trace-word or sigma-word");
}

// Rebuilds the witness and recomputes its degree; a stored degree that
// disagrees is rejected, so tampered files cannot smuggle wrong bookkeeping.
template <typename F>
Witness<F> witness_from_json(const F& field, const json& j, std::size_t n,
                             std::size_t m, bool lenient) {
  const std::string variant = j.at("variant").get<std::string>();
  Witness<F> w = [&] {
    if (variant == "trace-word")
      return make_trace_witness<F>(word_from_json(j.at("word"), m));
    if (variant == "sigma-word")
      return make_sigma_witness<F>(j.at("j").get<std::size_t>(),
                                   word_from_json(j.at("word"), m));
    if (variant == "lin-det") {
      const std::size_t d = j.at("d").get<std::size_t>();
      const json& mats = j.at("t");
      if (!mats.is_array() || mats.size() != m)
        throw InputError("lin-det witness needs m coefficient matrices");
      std::vector<Matrix<F>> t;
      t.reserve(m);
      for (std::size_t i = 0; i < m; ++i)
        t.push_back(matrix_from_json(field, mats[i], d, d, lenient));
      return make_lindet_witness(MatTuple<F>(field, d, std::move(t)), n);
    }
    if (variant == "composed-lr") {
      const std::size_t d = j.at("d").get<std::size_t>();
      const std::size_t s = m * d * d;
      Matrix<F> p = matrix_from_json(field, j.at("p"), s, s, lenient);
      InnerWitness inner = inner_from_json(field, j.at("inner"), s - 1);
      return make_composed_witness(std::move(p), d, std::move(inner), n);
    }
    throw InputError("unknown witness variant: " + variant);
  }();
  if (j.contains("degree") &&
      j.at("degree").get<std::uint64_t>() != w.degree)
    throw InputError("stored witness degree does not match its variant");
  return w;
}

}  // namespace ocsep::io
