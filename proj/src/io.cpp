#include "ocsep/io.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace ocsep::io {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  internal_check(ctx != nullptr, "EVP context allocation failed");
  bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
            EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) == 1 &&
            EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  internal_check(ok, "sha256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << bytes;
  if (!out) throw InputError("write to " + path + " failed");
}

json parse_json(const std::string& bytes, const std::string& what) {
  json j = json::parse(bytes, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw InputError("malformed JSON in " + what);
  return j;
}

namespace {

// Declared moduli are input, so a bad one is an input error rather than the
// FieldError the PrimeField constructor reserves for runtime shortfalls.
FieldSpec checked_prime(std::uint64_t p) {
  if (p > fpk::kMaxModulus)
    throw InputError("modulus " + std::to_string(p) +
                     " exceeds the supported 31-bit limit");
  if (!is_prime_u64(p))
    throw InputError("modulus " + std::to_string(p) + " is not prime");
  return FieldSpec::prime(p);
}

}  // namespace

json field_to_json(const FieldSpec& spec) {
  json j;
  if (spec.is_rational()) {
    j["kind"] = "rational";
  } else {
    j["kind"] = "prime";
    j["p"] = spec.p;
  }
  return j;
}

FieldSpec field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw InputError("field spec needs a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rational") return FieldSpec::rational();
  if (kind == "prime") {
    if (!j.contains("p")) throw InputError("prime field spec needs p");
    return checked_prime(j.at("p").get<std::uint64_t>());
  }
  throw InputError("unknown field kind: " + kind);
}

FieldSpec field_from_flag(const std::string& flag) {
  if (flag == "rational" || flag == "q" || flag == "Q")
    return FieldSpec::rational();
  try {
    std::size_t pos = 0;
    unsigned long long p = std::stoull(flag, &pos);
    if (pos == flag.size()) return checked_prime(p);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
  }
  throw InputError("field must be \"rational\" or a prime number, got: " +
                   flag);
}

mpq_class rational_from_literal(const std::string& s) {
  // Accept exactly -?digits(/digits)? so stray whitespace or hex sneaking
  // through GMP's permissive parser is rejected.
  std::size_t i = 0;
  auto digits = [&]() {
    std::size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    return i > start;
  };
  if (i < s.size() && s[i] == '-') ++i;
  bool ok = digits();
  if (ok && i < s.size() && s[i] == '/') {
    ++i;
    ok = digits();
  }
  if (!ok || i != s.size())
    throw InputError("bad rational literal: \"" + s + "\"");
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw InputError("bad rational literal: \"" + s + "\"");
  if (sgn(q.get_den()) == 0)
    throw InputError("rational literal with zero denominator: \"" + s + "\"");
  q.canonicalize();
  return q;
}

std::string rational_to_literal(const mpq_class& v) { return v.get_str(); }

json word_to_json(const Word& w) {
  json j = json::array();
  for (std::uint32_t letter : w) j.push_back(letter + 1);
  return j;
}

Word word_from_json(const json& j, std::size_t m) {
  if (!j.is_array()) throw InputError("word must be an array of letters");
  Word w;
  w.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number_integer() ||
        (!e.is_number_unsigned() && e.get<std::int64_t>() < 1))
      throw InputError("word letters must be positive integers");
    std::uint64_t v = e.get<std::uint64_t>();
    if (v < 1 || v > m)
      throw InputError("word letter " + std::to_string(v) +
                       " outside 1.." + std::to_string(m));
    w.push_back(static_cast<std::uint32_t>(v - 1));
  }
  return w;
}

LoadedTuple load_tuple(const std::string& path,
                       const std::optional<FieldSpec>& override_spec) {
  std::string bytes = read_file(path);
  json j = parse_json(bytes, path);
  if (!j.is_object() || !j.contains("schema") ||
      j.at("schema") != kSchemaVersion)
    throw InputError(path + ": missing or unsupported schema version");
  if (!j.contains("field")) throw InputError(path + ": missing field spec");
  FieldSpec declared = field_from_json(j.at("field"));
  FieldSpec effective = override_spec.value_or(declared);
  const bool lenient = override_spec.has_value();

  LoadedTuple out{
      effective.is_rational()
          ? TupleVariant(tuple_from_json(RationalField{}, j, lenient))
          : TupleVariant(tuple_from_json(PrimeField(effective.p), j, lenient)),
      effective, path, sha256_hex(bytes)};
  return out;
}

}  // namespace ocsep::io
