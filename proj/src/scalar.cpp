#include "gtrans/scalar.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace gtrans {
namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("empty number: '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
    }
  }
  return BigInt(std::string(digits), 10);
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Scalar result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), whole);
    BigInt den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(whole) + "'");
    result = Scalar(num, den);
    result.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      BigInt magnitude = parse_integer(exp_text, whole);
      if (!magnitude.fits_slong_p() || magnitude > 100000) {
        throw std::invalid_argument("exponent out of range: '" + std::string(whole) + "'");
      }
      exponent = magnitude.get_si();
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string digits;
    long fraction_digits = 0;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
      fraction_digits = static_cast<long>(text.size() - dot - 1);
      if (digits.empty()) throw std::invalid_argument("empty number: '" + std::string(whole) + "'");
    } else {
      digits = std::string(text);
    }
    BigInt mantissa = parse_integer(digits, whole);
    exponent -= fraction_digits;
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0) {
      result = Scalar(mantissa * power);
    } else {
      result = Scalar(mantissa, power);
      result.canonicalize();
    }
  }
  if (negative) result = -result;
  return result;
}

std::string to_string(const Scalar& value) { return value.get_str(); }

double to_double(const Scalar& value) { return value.get_d(); }

Scalar from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  Scalar result(value);  // mpq_set_d is exact
  return result;
}

Scalar round_to_decimal(double value, int digits) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // Round half away from zero on the exact binary value.
  Scalar scaled = from_double(value) * scale;
  BigInt floor_part;
  mpz_fdiv_q(floor_part.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Scalar frac = scaled - Scalar(floor_part);
  if (frac >= Scalar(1, 2)) floor_part += 1;
  Scalar result(floor_part, scale);
  result.canonicalize();
  return result;
}

Scalar abs(const Scalar& value) { return value < 0 ? Scalar(-value) : value; }

BigInt factorial(unsigned n) {
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

}  // namespace gtrans
