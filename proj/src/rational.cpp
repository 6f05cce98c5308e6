#include "ncmatch/rational.hpp"

#include "ncmatch/error.hpp"

#include <cctype>

namespace ncm {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::bad_input: return "BadInput";
    case ErrorCode::invalid_instance: return "InvalidInstance";
    case ErrorCode::precondition_mismatch: return "PreconditionMismatch";
    case ErrorCode::shared_endpoint: return "SharedEndpoint";
    case ErrorCode::not_convex: return "NotConvex";
    case ErrorCode::degenerate: return "Degenerate";
    case ErrorCode::rank_out_of_range: return "RankOutOfRange";
    case ErrorCode::invalid_dyck: return "InvalidDyck";
    case ErrorCode::cap_exceeded: return "CapExceeded";
    case ErrorCode::not_231_avoiding: return "Not231Avoiding";
    case ErrorCode::truncated_code: return "TruncatedCode";
    case ErrorCode::tape_exhausted: return "TapeExhausted";
    case ErrorCode::not_perfect: return "NotPerfect";
    case ErrorCode::crossing_detected: return "CrossingDetected";
    case ErrorCode::illegal_match: return "IllegalMatch";
    case ErrorCode::duplicate_x: return "DuplicateX";
    case ErrorCode::bad_subset: return "BadSubset";
    case ErrorCode::domain_error: return "DomainError";
    case ErrorCode::internal: return "Internal";
  }
  return "Unknown";
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorCode::bad_input, "zero denominator");
  return make_rational(BigInt(num), BigInt(den));
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorCode::bad_input, "zero denominator");
  Rational r;
  mpq_set_num(r.backend().data(), num.backend().data());
  mpq_set_den(r.backend().data(), den.backend().data());
  mpq_canonicalize(r.backend().data());
  return r;
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt parse_int(std::string_view s) {
  if (!is_integer_literal(s)) fail(ErrorCode::bad_input, "malformed integer '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return make_rational(parse_int(text), BigInt(1));
  return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

constexpr long kSmall = 1L << 60;

bool small_integer(const Rational& r, long& out) {
  mpq_srcptr q = r.backend().data();
  if (mpz_cmp_ui(mpq_denref(q), 1) != 0) return false;
  if (!mpz_fits_slong_p(mpq_numref(q))) return false;
  out = mpz_get_si(mpq_numref(q));
  return out > -kSmall && out < kSmall;
}

}  // namespace

int cross_sign(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by,
               const Rational& cx, const Rational& cy) {
  long v[6];
  if (small_integer(ax, v[0]) && small_integer(ay, v[1]) && small_integer(bx, v[2]) &&
      small_integer(by, v[3]) && small_integer(cx, v[4]) && small_integer(cy, v[5])) {
    __int128 ux = v[2] - v[0], uy = v[3] - v[1];
    __int128 wx = v[4] - v[0], wy = v[5] - v[1];
    __int128 d = ux * wy - uy * wx;
    return (d > 0) - (d < 0);
  }
  Rational d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
  return d.sign();
}

std::size_t bit_length(const BigInt& v) {
  if (v <= 0) return 0;
  return mpz_sizeinbase(v.backend().data(), 2);
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.backend().data(), n, k);
  return r;
}

}  // namespace ncm
